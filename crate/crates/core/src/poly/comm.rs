//! Commutative polynomials over the rationals and the coordinate expansion of
//! noncommutative polynomials.
//!
//! Expanding every element over the basis and every product through the
//! structural constants turns an `NcPoly` into `dim` commutative polynomials in
//! the coordinates `x^0 … x^{n-1}, h1^0 …`. Commutative normal form is unique,
//! so this is the equality oracle for the maps the words induce.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::poly::{NcPoly, NcWord, Var};
use crate::scalar::{self, Scalar};

/// Coordinate `coord` of variable `var`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Indeterminate {
    pub var: Var,
    pub coord: u8,
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.var, self.coord)
    }
}

/// Sorted `(indeterminate, exponent)` pairs. Ordered by total degree, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    powers: Vec<(Indeterminate, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(Indeterminate, u32)] {
        &self.powers
    }

    fn times(&self, ind: Indeterminate) -> Self {
        let mut powers = self.powers.clone();
        match powers.binary_search_by(|(i, _)| i.cmp(&ind)) {
            Ok(pos) => powers[pos].1 += 1,
            Err(pos) => powers.insert(pos, (ind, 1)),
        }
        Self { powers }
    }

    fn product(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &(ind, e) in &other.powers {
            match out.powers.binary_search_by(|(i, _)| i.cmp(&ind)) {
                Ok(pos) => out.powers[pos].1 += e,
                Err(pos) => out.powers.insert(pos, (ind, e)),
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.powers.cmp(&other.powers))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse commutative polynomial with rational coefficients. Zero
/// coefficients never appear in `terms`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl CommPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn times_indeterminate(&self, ind: Indeterminate) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.times(ind), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, value: &impl Fn(Indeterminate) -> Option<Scalar>) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(ind, e) in &m.powers {
                let v = value(ind).ok_or(Error::UnboundVariable(ind.var))?;
                for _ in 0..e {
                    term *= &v;
                }
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = scalar::is_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || m.powers.is_empty() {
                factors.push(scalar::display(&mag));
            }
            for (ind, e) in &m.powers {
                let base = format!("{}_{}", ind.var, ind.coord);
                factors.push(if *e == 1 { base } else { format!("{base}^{e}") });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// `dim` commutative polynomials: the coordinates of the map an `NcPoly`
/// induces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoordinateForm {
    components: Vec<CommPoly>,
}

impl CoordinateForm {
    pub fn zero(dim: usize) -> Self {
        Self {
            components: vec![CommPoly::zero(); dim],
        }
    }

    pub fn from_element(e: &Element) -> Self {
        Self {
            components: e.coords().iter().cloned().map(CommPoly::constant).collect(),
        }
    }

    /// The generic element `Σ v^p e_p` of a variable.
    pub fn variable(var: Var, dim: usize) -> Self {
        Self {
            components: (0..dim)
                .map(|p| CommPoly::constant(Scalar::one()).times_indeterminate(Indeterminate { var, coord: p as u8 }))
                .collect(),
        }
    }

    pub fn components(&self) -> &[CommPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(CommPoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, &Scalar::one());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, &-Scalar::one());
        }
        out
    }

    /// Product in the algebra: `(P Q)^r = Σ P^k Q^l B[k][l][r]`.
    pub fn mul(&self, other: &Self, alg: &AlgebraSpec) -> Self {
        let mut out = Self::zero(alg.dim());
        for (k, pk) in self.components.iter().enumerate() {
            if pk.is_zero() {
                continue;
            }
            for (l, ql) in other.components.iter().enumerate() {
                if ql.is_zero() {
                    continue;
                }
                let prod = pk.mul(ql);
                for (r, c) in alg.product_terms(k, l) {
                    out.components[*r].add_scaled(&prod, c);
                }
            }
        }
        out
    }

    /// Right multiplication by the generic element of `var`.
    fn times_variable(&self, var: Var, alg: &AlgebraSpec) -> Self {
        let mut out = Self::zero(alg.dim());
        for (q, cq) in self.components.iter().enumerate() {
            if cq.is_zero() {
                continue;
            }
            for p in 0..alg.dim() {
                let shifted = cq.times_indeterminate(Indeterminate { var, coord: p as u8 });
                for (r, c) in alg.product_terms(q, p) {
                    out.components[*r].add_scaled(&shifted, c);
                }
            }
        }
        out
    }

    fn times_element(&self, e: &Element, alg: &AlgebraSpec) -> Self {
        if e == alg.unit() {
            return self.clone();
        }
        let mut out = Self::zero(alg.dim());
        for (q, cq) in self.components.iter().enumerate() {
            if cq.is_zero() {
                continue;
            }
            for (s, es) in e.coords().iter().enumerate() {
                if es.is_zero() {
                    continue;
                }
                for (r, c) in alg.product_terms(q, s) {
                    out.components[*r].add_scaled(cq, &(es * c));
                }
            }
        }
        out
    }

    /// Substitutes coordinates of bound variables.
    pub fn eval(&self, bindings: &HashMap<Var, Element>) -> Result<Element> {
        let lookup = |ind: Indeterminate| {
            bindings
                .get(&ind.var)
                .and_then(|e| e.coords().get(ind.coord as usize).cloned())
        };
        Ok(Element::new(
            self.components.iter().map(|c| c.eval(&lookup)).collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Display for CoordinateForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "[{i}] {c}")?;
        }
        Ok(())
    }
}

pub fn expand_word(w: &NcWord, alg: &AlgebraSpec) -> CoordinateForm {
    let constants = w.constants();
    let mut cur = CoordinateForm::from_element(&constants[0]);
    for (v, c) in w.vars().iter().zip(&constants[1..]) {
        cur = cur.times_variable(*v, alg).times_element(c, alg);
    }
    cur
}

pub fn expand(p: &NcPoly, alg: &AlgebraSpec) -> CoordinateForm {
    let mut out = CoordinateForm::zero(alg.dim());
    for w in p.words() {
        if w.is_zero() {
            continue;
        }
        out = out.add(&expand_word(w, alg));
    }
    out
}
