//! Linear maps of an algebra and their three representations.
//!
//! * [`PairRep`]: `f(x) = Σ_s l_s x r_s`, not canonical.
//! * [`StdComponents`]: `f(x) = Σ f^{ij} e_i x e_j`.
//! * [`CoordMatrix`]: `f(a^i e_i) = a^i m[i][j] e_j`, i.e. row `i` holds the
//!   coordinates of `f(e_i)`.
//!
//! Standard components map to coordinates through the structural constants,
//! `m[i][j] = Σ f^{kr} B[k][i][p] B[p][r][j]`. Over the quaternions the map is
//! a bijection with the explicit inverse in [`quaternion_coord_to_std`].

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::algebra::{AlgebraKind, AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::poly::{NcPoly, NcWord, Var};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRep {
    pub pairs: Vec<(Element, Element)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StdComponents(pub Matrix);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoordMatrix(pub Matrix);

/// `f(x) = Σ f_G^{kr} e_k G(x) e_r` for a coordinate-linear generator `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedMap {
    pub generator: CoordMatrix,
    pub components: StdComponents,
}

fn check_square(m: &Matrix, alg: &AlgebraSpec) -> Result<()> {
    if m.rows() != alg.dim() || m.cols() != alg.dim() {
        return Err(Error::Dimension {
            expected: alg.dim(),
            found: if m.rows() != alg.dim() { m.rows() } else { m.cols() },
        });
    }
    Ok(())
}

impl PairRep {
    pub fn new(pairs: Vec<(Element, Element)>) -> Self {
        Self { pairs }
    }

    pub fn apply(&self, x: &Element, alg: &AlgebraSpec) -> Result<Element> {
        let mut out = alg.zero();
        alg.check_dim(x)?;
        for (l, r) in &self.pairs {
            out = &out + &alg.mul(&alg.mul(l, x)?, r)?;
        }
        Ok(out)
    }

    /// `f^{ij} = Σ_s l_s^i r_s^j`.
    pub fn to_std(&self, alg: &AlgebraSpec) -> Result<StdComponents> {
        let n = alg.dim();
        let mut m = Matrix::zeros(n, n);
        for (l, r) in &self.pairs {
            alg.check_dim(l)?;
            alg.check_dim(r)?;
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += l.coord(i) * r.coord(j);
                }
            }
        }
        Ok(StdComponents(m))
    }

    /// True iff both representations induce the same map. Compared through
    /// coordinate matrices, which are unique in every algebra.
    pub fn same_map(&self, other: &Self, alg: &AlgebraSpec) -> Result<bool> {
        Ok(std_to_coord(&self.to_std(alg)?, alg)? == std_to_coord(&other.to_std(alg)?, alg)?)
    }

    pub fn to_poly(&self, v: Var) -> NcPoly {
        NcPoly::from_words(
            self.pairs
                .iter()
                .map(|(l, r)| NcWord::new(vec![l.clone(), r.clone()], vec![v]).expect("one variable"))
                .collect(),
        )
    }
}

impl StdComponents {
    pub fn zero(dim: usize) -> Self {
        Self(Matrix::zeros(dim, dim))
    }

    /// The identity map: only `f^{u u} = 1` for the unit index `u`.
    pub fn identity(alg: &AlgebraSpec) -> Result<Self> {
        let u = alg
            .unit_index()
            .ok_or_else(|| Error::UnsupportedOperation("unit is not a basis vector".into()))?;
        let mut m = Matrix::zeros(alg.dim(), alg.dim());
        m[(u, u)] = Scalar::from_integer(1.into());
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, x: &Element, alg: &AlgebraSpec) -> Result<Element> {
        check_square(&self.0, alg)?;
        alg.check_dim(x)?;
        let mut out = alg.zero();
        for i in 0..alg.dim() {
            let row = Element::new(self.0.row(i).to_vec());
            if row.is_zero() {
                continue;
            }
            out = &out + &alg.mul(&alg.mul(&alg.basis(i), x)?, &row)?;
        }
        Ok(out)
    }

    /// `Σ f^{ij} e_i v e_j` as a polynomial in `v`.
    pub fn to_poly(&self, v: Var, alg: &AlgebraSpec) -> NcPoly {
        let n = alg.dim();
        let mut words = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let f = &self.0[(i, j)];
                if f.is_zero() {
                    continue;
                }
                words.push(NcWord::new(vec![alg.basis(i).scale(f), alg.basis(j)], vec![v]).expect("one variable"));
            }
        }
        NcPoly::from_words(words)
    }
}

impl CoordMatrix {
    pub fn identity(dim: usize) -> Self {
        Self(Matrix::identity(dim))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, x: &Element, alg: &AlgebraSpec) -> Result<Element> {
        check_square(&self.0, alg)?;
        alg.check_dim(x)?;
        Ok(Element::new(self.0.left_apply(x.coords())?))
    }

    /// Matrix of `g ∘ f` when `self` is `f`: rows act first.
    pub fn then(&self, g: &CoordMatrix) -> Result<CoordMatrix> {
        Ok(CoordMatrix(self.0.mul(&g.0)?))
    }
}

impl GeneratedMap {
    pub fn apply(&self, x: &Element, alg: &AlgebraSpec) -> Result<Element> {
        let gx = self.generator.apply(x, alg)?;
        self.components.apply(&gx, alg)
    }
}

/// `m[i][j] = Σ f^{kr} B[k][i][p] B[p][r][j]`.
pub fn std_to_coord(f: &StdComponents, alg: &AlgebraSpec) -> Result<CoordMatrix> {
    generated_coords(
        &GeneratedMap {
            generator: CoordMatrix::identity(alg.dim()),
            components: f.clone(),
        },
        alg,
    )
}

/// `m[i][j] = Σ G[i][l] f_G^{kr} B[k][l][p] B[p][r][j]`.
pub fn generated_coords(gm: &GeneratedMap, alg: &AlgebraSpec) -> Result<CoordMatrix> {
    let f = &gm.components.0;
    let g = &gm.generator.0;
    check_square(f, alg)?;
    check_square(g, alg)?;
    let n = alg.dim();
    // t[l][j] = Σ f^{kr} B[k][l][p] B[p][r][j]: coordinates of the map on e_l
    let mut t = Matrix::zeros(n, n);
    for k in 0..n {
        for r in 0..n {
            let fkr = &f[(k, r)];
            if fkr.is_zero() {
                continue;
            }
            for l in 0..n {
                for (p, bklp) in alg.product_terms(k, l) {
                    let w = fkr * bklp;
                    for (j, bprj) in alg.product_terms(*p, r) {
                        t[(l, *j)] += &w * bprj;
                    }
                }
            }
        }
    }
    Ok(CoordMatrix(g.mul(&t)?))
}

/// Inverts `std_to_coord`.
///
/// Quaternions use the explicit 4×4 tables. Complex matrices must satisfy the
/// Cauchy–Riemann conditions and are solved with `f^{11} = f^{10} = 0`. Any
/// other algebra goes through exact elimination of the full `dim²` system with
/// free components set to zero.
pub fn coord_to_std(m: &CoordMatrix, alg: &AlgebraSpec) -> Result<StdComponents> {
    check_square(&m.0, alg)?;
    match alg.kind() {
        AlgebraKind::Quaternion => Ok(quaternion_coord_to_std(m)),
        AlgebraKind::Complex => {
            if let CrCheck::Violated { residuals } = cauchy_riemann_check(m)? {
                return Err(Error::NotRealizable { residuals });
            }
            solve_std(m, alg)
        }
        _ => solve_std(m, alg),
    }
}

/// Coefficient matrix of the linear system `vec(m) = S vec(f)`, with
/// `vec(f)[k * n + r] = f^{kr}` and `vec(m)[i * n + j] = m[i][j]`.
pub fn std_system(alg: &AlgebraSpec) -> Matrix {
    let n = alg.dim();
    let mut s = Matrix::zeros(n * n, n * n);
    for k in 0..n {
        for r in 0..n {
            for i in 0..n {
                for (p, bkip) in alg.product_terms(k, i) {
                    for (j, bprj) in alg.product_terms(*p, r) {
                        s[(i * n + j, k * n + r)] += bkip * bprj;
                    }
                }
            }
        }
    }
    s
}

/// Generic inverse by elimination; free unknowns are zeroed in index order.
pub fn solve_std(m: &CoordMatrix, alg: &AlgebraSpec) -> Result<StdComponents> {
    let n = alg.dim();
    let s = std_system(alg);
    let rhs: Vec<Scalar> = m.0.as_slice().to_vec();
    let sol = matrix::solve_canonical(&s, &rhs).map_err(|residuals| Error::NotRealizable { residuals })?;
    let rows = sol.chunks(n).map(<[Scalar]>::to_vec).collect();
    Ok(StdComponents(Matrix::from_rows(rows)?))
}

/// The four explicit inversions for the quaternion basis `1, i, j, k`.
pub fn quaternion_coord_to_std(m: &CoordMatrix) -> StdComponents {
    let g = |i: usize, j: usize| m.0[(i, j)].clone();
    let quarter = scalar::rat(1, 4);
    let mut f = Matrix::zeros(4, 4);
    let mut set = |i: usize, j: usize, v: Scalar| f[(i, j)] = v * &quarter;
    // diagonal block
    set(0, 0, g(0, 0) + g(1, 1) + g(2, 2) + g(3, 3));
    set(1, 1, -g(0, 0) - g(1, 1) + g(2, 2) + g(3, 3));
    set(2, 2, -g(0, 0) + g(1, 1) - g(2, 2) + g(3, 3));
    set(3, 3, -g(0, 0) + g(1, 1) + g(2, 2) - g(3, 3));
    // block {01, 10, 23, 32}
    set(1, 0, -g(1, 0) + g(0, 1) - g(3, 2) + g(2, 3));
    set(0, 1, -g(1, 0) + g(0, 1) + g(3, 2) - g(2, 3));
    set(3, 2, -g(1, 0) - g(0, 1) - g(3, 2) - g(2, 3));
    set(2, 3, g(1, 0) + g(0, 1) - g(3, 2) - g(2, 3));
    // block {02, 13, 20, 31}
    set(2, 0, -g(2, 0) + g(3, 1) + g(0, 2) - g(1, 3));
    set(3, 1, g(2, 0) - g(3, 1) + g(0, 2) - g(1, 3));
    set(0, 2, -g(2, 0) - g(3, 1) + g(0, 2) + g(1, 3));
    set(1, 3, -g(2, 0) - g(3, 1) - g(0, 2) - g(1, 3));
    // block {03, 12, 21, 30}
    set(3, 0, -g(3, 0) - g(2, 1) + g(1, 2) + g(0, 3));
    set(2, 1, -g(3, 0) - g(2, 1) - g(1, 2) - g(0, 3));
    set(1, 2, g(3, 0) - g(2, 1) - g(1, 2) + g(0, 3));
    set(0, 3, -g(3, 0) + g(2, 1) - g(1, 2) + g(0, 3));
    StdComponents(f)
}

/// Residuals `4 f^{ij} - (±m ± m ± m ± m)` of the sixteen quaternion inversion
/// identities, for standard components obtained independently of the tables.
pub fn quaternion_relations(m: &CoordMatrix, f: &StdComponents) -> Vec<((usize, usize), Scalar)> {
    let table = quaternion_coord_to_std(m);
    let four = scalar::int(4);
    let mut out = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            let r = (&f.0[(i, j)] - &table.0[(i, j)]) * &four;
            out.push(((i, j), r));
        }
    }
    out
}

/// Pairwise products: `(l_t^g l_s^f, r_s^f r_t^g)`.
pub fn compose(g: &PairRep, f: &PairRep, alg: &AlgebraSpec) -> Result<PairRep> {
    let mut pairs = Vec::with_capacity(g.pairs.len() * f.pairs.len());
    for (gl, gr) in &g.pairs {
        for (fl, fr) in &f.pairs {
            pairs.push((alg.mul(gl, fl)?, alg.mul(fr, gr)?));
        }
    }
    Ok(PairRep { pairs })
}

/// `h^{pr} = g^{ij} f^{kl} B[i][k][p] B[l][j][r]`, the components of `g ∘ f`.
pub fn compose_std(g: &StdComponents, f: &StdComponents, alg: &AlgebraSpec) -> Result<StdComponents> {
    check_square(&g.0, alg)?;
    check_square(&f.0, alg)?;
    let n = alg.dim();
    let mut h = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let gij = &g.0[(i, j)];
            if gij.is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let fkl = &f.0[(k, l)];
                    if fkl.is_zero() {
                        continue;
                    }
                    let w = gij * fkl;
                    for (p, bikp) in alg.product_terms(i, k) {
                        for (r, bljr) in alg.product_terms(l, j) {
                            h[(*p, *r)] += &w * bikp * bljr;
                        }
                    }
                }
            }
        }
    }
    Ok(StdComponents(h))
}

/// Coordinates in the basis `e'_i = A_i^j e_j`: `m' = A m A⁻¹`.
pub fn transform_coords(m: &CoordMatrix, a: &Matrix) -> Result<CoordMatrix> {
    let a_inv = a.inverse()?;
    Ok(CoordMatrix(a.mul(&m.0)?.mul(&a_inv)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrCheck {
    Satisfied,
    /// `(m00 - m11, m01 + m10)`.
    Violated {
        residuals: Vec<Scalar>,
    },
}

/// Cauchy–Riemann conditions `m00 = m11`, `m01 = -m10` for a 2×2 matrix.
pub fn cauchy_riemann_check(m: &CoordMatrix) -> Result<CrCheck> {
    let m = &m.0;
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: m.rows().max(m.cols()),
        });
    }
    let r0 = &m[(0, 0)] - &m[(1, 1)];
    let r1 = &m[(0, 1)] + &m[(1, 0)];
    if r0.is_zero() && r1.is_zero() {
        Ok(CrCheck::Satisfied)
    } else {
        Ok(CrCheck::Violated {
            residuals: vec![r0, r1],
        })
    }
}

/// Operator norm `sup |f(u)|` over the Euclidean unit sphere.
///
/// The induced map is real-linear, so this is the largest singular value of the
/// coordinate matrix: the square root of the top eigenvalue of `mᵀm`, found by
/// cyclic Jacobi rotations.
pub fn map_norm(m: &CoordMatrix, alg: &AlgebraSpec) -> Result<f64> {
    check_square(&m.0, alg)?;
    let euclidean = alg
        .norm_signature()
        .is_some_and(|s| s.iter().all(|v| v == &Scalar::from_integer(1.into())));
    if !euclidean {
        return Err(Error::UnsupportedOperation(format!(
            "{} has no Euclidean absolute value",
            alg.name()
        )));
    }
    let n = alg.dim();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| m.0.row(i).iter().map(scalar::to_f64).collect())
        .collect();
    let mut gram = vec![vec![0.0; n]; n];
    for (i, gi) in gram.iter_mut().enumerate() {
        for (j, gij) in gi.iter_mut().enumerate() {
            *gij = (0..n).map(|k| a[k][i] * a[k][j]).sum();
        }
    }
    let eig = jacobi_eigenvalues(gram, 1e-9);
    let top = eig.into_iter().fold(0.0_f64, f64::max);
    Ok(top.max(0.0).sqrt())
}

/// Eigenvalues of a symmetric matrix. Sweeps until the off-diagonal mass is
/// below `rel_tol²` times the total, then one more sweep.
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>, rel_tol: f64) -> Vec<f64> {
    let n = a.len();
    let frob = |a: &Vec<Vec<f64>>| a.iter().flatten().map(|v| v * v).sum::<f64>();
    let off = |a: &Vec<Vec<f64>>| {
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
    };
    let total = frob(&a);
    if total == 0.0 {
        return vec![0.0; n];
    }
    let mut converged_sweeps = 0;
    for _ in 0..100 {
        if off(&a) <= total * rel_tol * rel_tol * 1e-6 {
            converged_sweeps += 1;
            if converged_sweeps > 1 {
                break;
            }
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}
