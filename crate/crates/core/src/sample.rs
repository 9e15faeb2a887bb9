//! Seeded random elements, maps and monomials for property checks.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSpec, Element};
use crate::linear::StdComponents;
use crate::matrix::Matrix;
use crate::poly::{NcPoly, NcWord, Var};
use crate::scalar::{self, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with denominator in `1..=den` and absolute value at most `bound`.
pub fn rational(rng: &mut SampleRng, bound: i64, den: i64) -> Scalar {
    let d = rng.gen_range(1..=den);
    let n = rng.gen_range(-bound * d..=bound * d);
    scalar::rat(n, d)
}

pub fn element(rng: &mut SampleRng, dim: usize, bound: i64, den: i64) -> Element {
    Element::new((0..dim).map(|_| rational(rng, bound, den)).collect())
}

/// Element with Euclidean length in `[min_len, max_len]`.
pub fn element_in_shell(rng: &mut SampleRng, dim: usize, min_len: f64, max_len: f64) -> Element {
    loop {
        let e = element(rng, dim, 2, 8);
        let len = e.to_f64().iter().map(|v| v * v).sum::<f64>().sqrt();
        if (min_len..=max_len).contains(&len) {
            return e;
        }
    }
}

pub fn nonzero_rational(rng: &mut SampleRng, bound: i64, den: i64) -> Scalar {
    loop {
        let r = rational(rng, bound, den);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn std_components(rng: &mut SampleRng, dim: usize, bound: i64, den: i64) -> StdComponents {
    let rows = (0..dim)
        .map(|_| (0..dim).map(|_| rational(rng, bound, den)).collect())
        .collect();
    StdComponents(Matrix::from_rows(rows).expect("square"))
}

/// Invertible matrix with small integer entries.
pub fn invertible_matrix(rng: &mut SampleRng, dim: usize) -> Matrix {
    loop {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| scalar::int(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("square");
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// `a_0 x a_1 … x a_n` with random rational constants.
pub fn monomial(rng: &mut SampleRng, alg: &AlgebraSpec, degree: usize) -> NcPoly {
    let constants = (0..=degree)
        .map(|_| loop {
            let e = element(rng, alg.dim(), 2, 4);
            if !e.is_zero() {
                break e;
            }
        })
        .collect();
    NcPoly::monomial(constants)
}

/// Sum of up to `terms` random monomials of degree at most `max_degree`.
pub fn polynomial(rng: &mut SampleRng, alg: &AlgebraSpec, max_degree: usize, terms: usize) -> NcPoly {
    let n = rng.gen_range(1..=terms);
    (0..n).fold(NcPoly::zero(), |acc, _| {
        let d = rng.gen_range(0..=max_degree);
        acc.add(&monomial(rng, alg, d))
    })
}

/// Every monomial of degree `degree` whose constants are basis vectors, in
/// lexicographic order of the constant indices.
pub fn basis_monomials(alg: &AlgebraSpec, degree: usize) -> Vec<NcPoly> {
    let n = alg.dim();
    let count = n.pow(degree as u32 + 1);
    (0..count)
        .map(|mut code| {
            let mut constants = vec![Element::zero(n); degree + 1];
            for slot in constants.iter_mut().rev() {
                *slot = alg.basis(code % n);
                code /= n;
            }
            NcPoly::from_words(vec![
                NcWord::new(constants, vec![Var::X; degree]).expect("arity matches")
            ])
        })
        .collect()
}
