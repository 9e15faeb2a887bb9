//! Finite-dimensional associative algebras given by structural constants.
//!
//! An algebra of dimension `n` is fixed by the rank-3 tensor `B` with
//! `e_k e_l = Σ_p B[k][l][p] e_p`. Elements are coordinate vectors of exact
//! rationals over the basis `e_0 … e_{n-1}`.
//!
//! Three presets are provided: the complex numbers, the quaternions (basis
//! `1, i, j, k`), and the generalized quaternion algebra `E(a, b)` with
//! `i² = a`, `j² = b`, `ij = k`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

/// Coordinates `a^i` of `a = a^i e_i`. Clones share storage.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Element {
    coords: Arc<[Scalar]>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Self { coords: coords.into() }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut coords = vec![Scalar::zero(); dim];
        coords[index] = Scalar::one();
        Self::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(scalar::to_f64).collect()
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions differ");
        Element::new(self.coords.iter().zip(rhs.coords.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions differ");
        Element::new(self.coords.iter().zip(rhs.coords.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::new(self.coords.iter().map(|c| -c).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Complex,
    Quaternion,
    /// Generalized quaternions with `i² = a`, `j² = b`.
    Efab {
        a: Scalar,
        b: Scalar,
    },
    Custom,
}

#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    name: String,
    kind: AlgebraKind,
    dim: usize,
    /// Flattened `B[k][l][p]` at `(k * dim + l) * dim + p`.
    constants: Vec<Scalar>,
    /// Nonzero entries of `e_k e_l`, indexed by `k * dim + l`.
    products: Vec<Vec<(usize, Scalar)>>,
    unit: Element,
    /// `|x|² = x Q xᵀ` for coordinate row vectors.
    norm_form: Option<Matrix>,
    /// Coordinate matrix of the conjugation, presets only.
    involution: Option<Matrix>,
    division: bool,
    labels: Vec<String>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants && self.unit == other.unit
    }
}

impl AlgebraSpec {
    /// Builds an algebra from raw structural constants `B[k][l][p]`
    /// (flattened, `dim³` entries). Associativity and the unit law are checked
    /// exactly. The result carries no conjugation and no norm.
    pub fn from_structural_constants(
        name: impl Into<String>,
        dim: usize,
        constants: Vec<Scalar>,
        unit_index: usize,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim * dim,
                found: constants.len(),
            });
        }
        if unit_index >= dim {
            return Err(Error::InvalidAlgebra(format!("unit index {unit_index} out of range")));
        }
        let alg = Self::assemble(
            name.into(),
            AlgebraKind::Custom,
            dim,
            constants,
            Element::basis(dim, unit_index),
            None,
            None,
            false,
            (0..dim).map(|i| format!("e{i}")).collect(),
        );
        alg.validate()?;
        Ok(alg)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        kind: AlgebraKind,
        dim: usize,
        constants: Vec<Scalar>,
        unit: Element,
        norm_form: Option<Matrix>,
        involution: Option<Matrix>,
        division: bool,
        labels: Vec<String>,
    ) -> Self {
        let products = (0..dim * dim)
            .map(|kl| {
                (0..dim)
                    .filter_map(|p| {
                        let c = &constants[kl * dim + p];
                        (!c.is_zero()).then(|| (p, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Self {
            name,
            kind,
            dim,
            constants,
            products,
            unit,
            norm_form,
            involution,
            division,
            labels,
        }
    }

    /// Complex numbers over the basis `1, i`.
    pub fn complex() -> Self {
        let mut b = vec![Scalar::zero(); 8];
        let mut set = |k: usize, l: usize, p: usize, v: i64| b[(k * 2 + l) * 2 + p] = scalar::int(v);
        set(0, 0, 0, 1);
        set(0, 1, 1, 1);
        set(1, 0, 1, 1);
        set(1, 1, 0, -1);
        Self::assemble(
            "complex".into(),
            AlgebraKind::Complex,
            2,
            b,
            Element::basis(2, 0),
            Some(Matrix::identity(2)),
            Some(Matrix::diagonal(&[scalar::int(1), scalar::int(-1)])),
            true,
            vec!["1".into(), "i".into()],
        )
    }

    /// Quaternions over the basis `1, i, j, k`.
    pub fn quaternion() -> Self {
        let mut alg = Self::efab(scalar::int(-1), scalar::int(-1)).expect("a = b = -1 is valid");
        alg.name = "quaternion".into();
        alg.kind = AlgebraKind::Quaternion;
        alg
    }

    /// Generalized quaternion algebra `E(a, b)`:
    ///
    /// ```text
    ///      |   i     j     k
    ///   ---+------------------
    ///    i |   a     k    aj
    ///    j |  -k     b   -bi
    ///    k | -aj    bi   -ab
    /// ```
    ///
    /// It is a division algebra exactly when `a < 0` and `b < 0`.
    pub fn efab(a: Scalar, b: Scalar) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidAlgebra("E(a, b) requires ab != 0".into()));
        }
        let one = Scalar::one();
        let ab = &a * &b;
        // (row, col) -> (basis index, coefficient)
        let table: [(usize, usize, usize, Scalar); 16] = [
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (0, 2, 2, one.clone()),
            (0, 3, 3, one.clone()),
            (1, 0, 1, one.clone()),
            (2, 0, 2, one.clone()),
            (3, 0, 3, one.clone()),
            (1, 1, 0, a.clone()),
            (1, 2, 3, one.clone()),
            (1, 3, 2, a.clone()),
            (2, 1, 3, -one.clone()),
            (2, 2, 0, b.clone()),
            (2, 3, 1, -b.clone()),
            (3, 1, 2, -a.clone()),
            (3, 2, 1, b.clone()),
            (3, 3, 0, -ab.clone()),
        ];
        let mut consts = vec![Scalar::zero(); 64];
        for (k, l, p, v) in table {
            consts[(k * 4 + l) * 4 + p] = v;
        }
        let signature = vec![one.clone(), -a.clone(), -b.clone(), ab];
        let division = a.is_negative() && b.is_negative();
        let name = format!("efab:{}/{}", scalar::display(&a), scalar::display(&b));
        let alg = Self::assemble(
            name,
            AlgebraKind::Efab { a, b },
            4,
            consts,
            Element::basis(4, 0),
            Some(Matrix::diagonal(&signature)),
            Some(Matrix::diagonal(&[
                scalar::int(1),
                scalar::int(-1),
                scalar::int(-1),
                scalar::int(-1),
            ])),
            division,
            vec!["1".into(), "i".into(), "j".into(), "k".into()],
        );
        alg.validate()?;
        Ok(alg)
    }

    /// Resolves `"complex"`, `"quaternion"`, or `"efab:a/b"`.
    ///
    /// In the `efab` form `a` and `b` are integers separated by `/`; rational
    /// parameters use a comma instead, e.g. `efab:-1/2,-3`.
    pub fn by_name(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "complex" => return Ok(Self::complex()),
            "quaternion" => return Ok(Self::quaternion()),
            _ => {}
        }
        let Some(params) = name.strip_prefix("efab:") else {
            return Err(Error::InvalidAlgebra(format!("unknown algebra {name:?}")));
        };
        let (a, b) = if let Some((a, b)) = params.split_once(',') {
            (a, b)
        } else {
            let parts: Vec<&str> = params.split('/').collect();
            match parts.as_slice() {
                [a, b] => (*a, *b),
                _ => {
                    return Err(Error::InvalidAlgebra(format!(
                        "cannot split {params:?} into two parameters; use efab:a,b"
                    )))
                }
            }
        };
        Self::efab(scalar::parse_rational(a)?, scalar::parse_rational(b)?)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for k in 0..n {
            let ek = Element::basis(n, k);
            if self.mul(&self.unit, &ek)? != ek || self.mul(&ek, &self.unit)? != ek {
                return Err(Error::InvalidAlgebra(format!("unit law fails for e{k}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(&Element::basis(n, a), &Element::basis(n, b))?;
                for c in 0..n {
                    let ec = Element::basis(n, c);
                    let left = self.mul(&ab, &ec)?;
                    let bc = self.mul(&Element::basis(n, b), &ec)?;
                    let right = self.mul(&Element::basis(n, a), &bc)?;
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("not associative on (e{a}, e{b}, e{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `B[k][l][p]`.
    pub fn structural_constant(&self, k: usize, l: usize, p: usize) -> &Scalar {
        &self.constants[(k * self.dim + l) * self.dim + p]
    }

    /// Nonzero `(p, B[k][l][p])` entries of `e_k e_l`.
    pub fn product_terms(&self, k: usize, l: usize) -> &[(usize, Scalar)] {
        &self.products[k * self.dim + l]
    }

    pub fn structural_constants(&self) -> &[Scalar] {
        &self.constants
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    /// Basis index of the identity, when the identity is a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        (0..self.dim).find(|&i| self.unit == Element::basis(self.dim, i))
    }

    /// Diagonal of the norm form, when it is diagonal.
    pub fn norm_signature(&self) -> Option<Vec<Scalar>> {
        let q = self.norm_form.as_ref()?;
        q.is_diagonal()
            .then(|| (0..self.dim).map(|i| q[(i, i)].clone()).collect())
    }

    pub fn is_division(&self) -> bool {
        self.division
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    /// Coordinate matrix of the conjugation, when one is defined.
    pub fn involution(&self) -> Option<&Matrix> {
        self.involution.as_ref()
    }

    pub fn scalar(&self, s: Scalar) -> Element {
        self.unit.scale(&s)
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim)
    }

    pub fn check_dim(&self, e: &Element) -> Result<()> {
        if e.dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: e.dim(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (k, ak) in a.coords.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            for (l, bl) in b.coords.iter().enumerate() {
                if bl.is_zero() {
                    continue;
                }
                let w = ak * bl;
                for (p, c) in self.product_terms(k, l) {
                    out[*p] += &w * c;
                }
            }
        }
        Ok(Element::new(out))
    }

    /// Left-to-right product of a sequence of elements; the empty product is
    /// the unit.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        factors
            .into_iter()
            .try_fold(self.unit.clone(), |acc, f| self.mul(&acc, f))
    }

    pub fn conj(&self, x: &Element) -> Result<Element> {
        self.check_dim(x)?;
        let inv = self
            .involution
            .as_ref()
            .ok_or_else(|| Error::UnsupportedOperation(format!("algebra {} defines no conjugation", self.name)))?;
        Ok(Element::new(inv.left_apply(x.coords())?))
    }

    pub fn abs_sq(&self, x: &Element) -> Result<Scalar> {
        self.check_dim(x)?;
        let q = self
            .norm_form
            .as_ref()
            .ok_or_else(|| Error::UnsupportedOperation(format!("algebra {} has no quadratic norm", self.name)))?;
        let qx = q.left_apply(x.coords())?;
        Ok(qx.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
    }

    /// `x⁻¹ = |x|⁻² x̄`.
    pub fn inverse(&self, x: &Element) -> Result<Element> {
        self.check_dim(x)?;
        if !self.division {
            return Err(Error::UnsupportedOperation(format!(
                "{} is not a division algebra",
                self.name
            )));
        }
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n2 = self.abs_sq(x)?;
        if n2.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj(x)?.scale(&n2.recip()))
    }

    /// Re-expresses the algebra in the basis `e'_i = A_i^j e_j`.
    ///
    /// The new constants satisfy `B'[k][l][p] = A_k^a A_l^b B[a][b][c] (A⁻¹)_c^p`.
    /// Conjugation and the norm form are carried along; the result is a
    /// `Custom` algebra since the preset tables no longer apply.
    pub fn change_basis(&self, a: &Matrix) -> Result<Self> {
        let n = self.dim;
        if a.rows() != n || a.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                found: a.rows().max(a.cols()),
            });
        }
        let a_inv = a.inverse()?;
        let mut consts = vec![Scalar::zero(); n * n * n];
        for k in 0..n {
            for l in 0..n {
                // e'_k e'_l in old coordinates
                let prod = self.mul(&Element::new(a.row(k).to_vec()), &Element::new(a.row(l).to_vec()))?;
                let new_coords = a_inv.left_apply(prod.coords())?;
                for (p, v) in new_coords.into_iter().enumerate() {
                    consts[(k * n + l) * n + p] = v;
                }
            }
        }
        let unit = Element::new(a_inv.left_apply(self.unit.coords())?);
        let norm_form = match &self.norm_form {
            Some(q) => Some(a.mul(q)?.mul(&a.transpose())?),
            None => None,
        };
        let involution = match &self.involution {
            Some(c) => Some(a.mul(c)?.mul(&a_inv)?),
            None => None,
        };
        let alg = Self::assemble(
            format!("{}'", self.name),
            AlgebraKind::Custom,
            n,
            consts,
            unit,
            norm_form,
            involution,
            self.division,
            (0..n).map(|i| format!("e{i}")).collect(),
        );
        alg.validate()?;
        Ok(alg)
    }

    /// Literal form such as `1+2i-3j+1/2k`.
    pub fn format(&self, x: &Element) -> String {
        let mut out = String::new();
        for (i, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = &self.labels[i];
            let is_unit = Some(i) == self.unit_index() && label == "1";
            let mag = c.abs();
            let body = if is_unit {
                scalar::display(&mag)
            } else if mag.is_one() {
                label.clone()
            } else {
                format!("{}{}", scalar::display(&mag), label)
            };
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn display<'a>(&'a self, x: &'a Element) -> impl fmt::Display + 'a {
        struct D<'a>(&'a AlgebraSpec, &'a Element);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, x)
    }
}
