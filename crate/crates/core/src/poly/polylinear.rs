//! Coordinates of polylinear maps and symmetry under exchange of arguments.

use std::collections::HashMap;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::poly::{semantic_eq, CoordinateForm, NcPoly, Var};

/// Values `f(e_{i_1}, …, e_{i_n})` of an n-linear map, stored row-major in
/// the multi-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolylinearTensor {
    arity: usize,
    dim: usize,
    entries: Vec<Element>,
}

impl PolylinearTensor {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, index: &[usize]) -> &Element {
        assert_eq!(index.len(), self.arity);
        let flat = index.iter().fold(0, |acc, &i| {
            assert!(i < self.dim);
            acc * self.dim + i
        });
        &self.entries[flat]
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    /// All multi-indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.entries.len()).map(move |mut flat| {
            let mut idx = vec![0; self.arity];
            for slot in idx.iter_mut().rev() {
                *slot = flat % self.dim;
                flat /= self.dim;
            }
            idx
        })
    }
}

/// Evaluates a multilinear polynomial in `h1 … hn` at all basis tuples.
///
/// Every word must be free of `x` and `y` and contain each `h1 … hn` exactly
/// once.
pub fn polylinear_coords(p: &NcPoly, alg: &AlgebraSpec) -> Result<PolylinearTensor> {
    let n = p.max_increment();
    for w in p.words() {
        if w.count(Var::X) > 0 || w.count(Var::Y) > 0 {
            return Err(Error::NotMultilinear("word depends on x".into()));
        }
        for i in 1..=n {
            let c = w.count(Var::H(i as u8));
            if c != 1 {
                return Err(Error::NotMultilinear(format!("h{i} occurs {c} times in a word")));
            }
        }
    }
    let dim = alg.dim();
    let total = dim.pow(n as u32);
    let mut entries = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    for _ in 0..total {
        let bindings: HashMap<Var, Element> = idx
            .iter()
            .enumerate()
            .map(|(slot, &b)| (Var::H(slot as u8 + 1), alg.basis(b)))
            .collect();
        entries.push(p.eval(&bindings, alg)?);
        for slot in (0..n).rev() {
            idx[slot] += 1;
            if idx[slot] < dim {
                break;
            }
            idx[slot] = 0;
        }
    }
    Ok(PolylinearTensor { arity: n, dim, entries })
}

/// A transposition of two arguments that changes the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryDefect {
    pub swapped: (Var, Var),
    /// Coordinate form of `p - p∘swap`; never zero.
    pub difference: CoordinateForm,
}

/// First transposition of `vars` (in lexicographic pair order) under which
/// `p` is not invariant.
pub fn symmetry_defect(p: &NcPoly, vars: &[Var], alg: &AlgebraSpec) -> Option<SymmetryDefect> {
    let base = p.simplified();
    for (n, &a) in vars.iter().enumerate() {
        for &b in &vars[n + 1..] {
            let swapped = base.swap(a, b);
            if !semantic_eq(&base, &swapped, alg) {
                let difference = base.expand(alg).sub(&swapped.expand(alg));
                return Some(SymmetryDefect {
                    swapped: (a, b),
                    difference,
                });
            }
        }
    }
    None
}

pub fn is_symmetric(p: &NcPoly, vars: &[Var], alg: &AlgebraSpec) -> bool {
    symmetry_defect(p, vars, alg).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn h(n: u8) -> Var {
        Var::H(n)
    }

    fn word(vars: &[Var], alg: &AlgebraSpec) -> NcPoly {
        NcPoly::from_words(vec![crate::poly::NcWord::from_vars(vars.to_vec(), alg)])
    }

    #[test]
    fn product_tensor_is_structural_constants() {
        let alg = AlgebraSpec::quaternion();
        let t = polylinear_coords(&word(&[h(1), h(2)], &alg), &alg).unwrap();
        assert_eq!(t.arity(), 2);
        for k in 0..4 {
            for l in 0..4 {
                let expect = Element::new((0..4).map(|p| alg.structural_constant(k, l, p).clone()).collect());
                assert_eq!(t.get(&[k, l]), &expect);
            }
        }
    }

    #[test]
    fn symmetric_and_skew_tensors() {
        let alg = AlgebraSpec::quaternion();
        let ab = word(&[h(1), h(2)], &alg);
        let ba = word(&[h(2), h(1)], &alg);
        let sym = polylinear_coords(&ab.add(&ba), &alg).unwrap();
        let skew = polylinear_coords(&ab.sub(&ba), &alg).unwrap();
        for idx in sym.indices() {
            let rev = [idx[1], idx[0]];
            assert_eq!(sym.get(&idx), sym.get(&rev));
            assert_eq!(skew.get(&idx), &-skew.get(&rev));
        }
        // ij - ji = 2k
        assert_eq!(skew.get(&[1, 2]), &alg.basis(3).scale(&int(2)));
    }

    #[test]
    fn rejects_non_multilinear() {
        let alg = AlgebraSpec::quaternion();
        let p = word(&[h(1), h(1)], &alg);
        assert!(matches!(polylinear_coords(&p, &alg), Err(Error::NotMultilinear(_))));
        let q = word(&[Var::X, h(1)], &alg);
        assert!(matches!(polylinear_coords(&q, &alg), Err(Error::NotMultilinear(_))));
    }

    #[test]
    fn symmetry_checks() {
        let alg = AlgebraSpec::quaternion();
        let sym = word(&[Var::X, h(1), h(2)], &alg).add(&word(&[Var::X, h(2), h(1)], &alg));
        assert!(is_symmetric(&sym, &[h(1), h(2)], &alg));
        let asym = word(&[h(1), h(2), Var::X], &alg);
        let defect = symmetry_defect(&asym, &[h(1), h(2)], &alg).unwrap();
        assert_eq!(defect.swapped, (h(1), h(2)));
        assert!(!defect.difference.is_zero());
        // differs at h1 = i, h2 = j, x = 1
        let at = HashMap::from([(Var::X, alg.basis(0)), (h(1), alg.basis(1)), (h(2), alg.basis(2))]);
        assert_ne!(
            asym.eval(&at, &alg).unwrap(),
            asym.swap(h(1), h(2)).eval(&at, &alg).unwrap()
        );
        // commutative algebra: everything is symmetric
        let c = AlgebraSpec::complex();
        assert!(is_symmetric(&word(&[h(1), h(2), Var::X], &c), &[h(1), h(2)], &c));
    }

    #[test]
    fn six_term_second_derivative_is_symmetric() {
        let alg = AlgebraSpec::quaternion();
        let x = Var::X;
        let terms = [
            [h(1), h(2), x],
            [h(1), x, h(2)],
            [h(2), h(1), x],
            [x, h(1), h(2)],
            [h(2), x, h(1)],
            [x, h(2), h(1)],
        ];
        let p = terms.iter().fold(NcPoly::zero(), |acc, t| acc.add(&word(t, &alg)));
        assert!(is_symmetric(&p, &[h(1), h(2)], &alg));
    }
}
