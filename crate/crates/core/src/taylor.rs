//! Taylor polynomials, polynomial ODEs `∂y(x)(h) = F(x; h)` and the
//! exponent model `∂y(h) = ½(y h + h y)`.
//!
//! Taylor terms are stored as polynomials in the displacement, written `h1`,
//! and turned into polynomials in `x` by substituting `h1 = x - x0`.

use std::collections::HashMap;

use num_traits::One;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::gateaux::{derive, derive_all_equal};
use crate::numeric;
use crate::poly::{is_semantically_zero, semantic_eq, symmetry_defect, CoordinateForm, NcPoly, NcWord, Var};
use crate::scalar::{self, Scalar};

const D: Var = Var::H(1);

/// `Σ_n terms[n](x - center)`, with `terms[n] = (n!)⁻¹ ∂ⁿf(center)(h1; …; h1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorPoly {
    pub center: Element,
    pub terms: Vec<NcPoly>,
}

impl TaylorPoly {
    pub fn degree(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// The first `n + 1` terms.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            center: self.center.clone(),
            terms: self.terms.iter().take(n + 1).cloned().collect(),
        }
    }

    /// The polynomial in `x`.
    pub fn assemble(&self, alg: &AlgebraSpec) -> NcPoly {
        let disp = if self.center.is_zero() {
            NcPoly::var(Var::X, alg)
        } else {
            NcPoly::var(Var::X, alg).sub(&NcPoly::constant(self.center.clone()))
        };
        self.terms
            .iter()
            .fold(NcPoly::zero(), |acc, t| acc.add(&t.substitute(D, &disp, alg)))
            .simplified()
    }

    pub fn eval(&self, x: &Element, alg: &AlgebraSpec) -> Result<Element> {
        let d = x - &self.center;
        let bindings = HashMap::from([(D, d)]);
        self.terms
            .iter()
            .try_fold(alg.zero(), |acc, t| Ok(&acc + &t.eval(&bindings, alg)?))
    }

    pub fn eval_f64(&self, x: &[f64], alg: &AlgebraSpec) -> Result<Vec<f64>> {
        let d = numeric::sub(x, &self.center.to_f64());
        let bindings = HashMap::from([(D, d)]);
        let mut total = vec![0.0; alg.dim()];
        for t in &self.terms {
            total = numeric::add(&total, &t.eval_f64(&bindings, alg)?);
        }
        Ok(total)
    }
}

fn require_x_only(f: &NcPoly) -> Result<()> {
    if f.variables().iter().any(|v| *v != Var::X) {
        return Err(Error::UnsupportedOperation("expected a polynomial in x alone".into()));
    }
    Ok(())
}

/// `(n!)⁻¹ ∂ⁿp(x0)(h1; …; h1)`.
fn taylor_term(p: &NcPoly, n: usize, x0: &Element, alg: &AlgebraSpec) -> Result<NcPoly> {
    let all = derive_all_equal(p, n, D)?;
    Ok(all
        .substitute_element(Var::X, x0, alg)
        .scale(&scalar::factorial(n).recip())
        .simplified())
}

pub fn taylor_expand(f: &NcPoly, x0: &Element, alg: &AlgebraSpec) -> Result<TaylorPoly> {
    require_x_only(f)?;
    alg.check_dim(x0)?;
    let terms = (0..=f.x_degree())
        .map(|n| taylor_term(f, n, x0, alg))
        .collect::<Result<_>>()?;
    Ok(TaylorPoly {
        center: x0.clone(),
        terms,
    })
}

/// Samples of `|f(x0 + t h) - T(x0 + t h)| / tⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceProbe {
    pub order: usize,
    pub samples: Vec<(f64, f64)>,
}

impl ConvergenceProbe {
    /// Smallest ratio between consecutive samples.
    pub fn min_decrease_factor(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| w[0].1 / w[1].1)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn all_zero(&self) -> bool {
        self.samples.iter().all(|(_, r)| *r == 0.0)
    }
}

pub const PROBE_STEPS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

pub fn remainder_probe(
    f: &NcPoly,
    taylor: &TaylorPoly,
    h: &Element,
    steps: &[f64],
    alg: &AlgebraSpec,
) -> Result<ConvergenceProbe> {
    let n = taylor.degree();
    let x0 = taylor.center.to_f64();
    let hf = h.to_f64();
    let samples = steps
        .iter()
        .map(|&t| {
            let x = numeric::add(&x0, &numeric::scale(&hf, t));
            let exact = f.eval_f64(&HashMap::from([(Var::X, x.clone())]), alg)?;
            let approx = taylor.eval_f64(&x, alg)?;
            Ok((t, numeric::norm(&numeric::sub(&exact, &approx)) / t.powi(n as i32)))
        })
        .collect::<Result<_>>()?;
    Ok(ConvergenceProbe { order: n, samples })
}

/// `∂y(x)(h1) = rhs(x; h1)`, `y(x0) = y0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeProblem {
    pub rhs: NcPoly,
    pub x0: Element,
    pub y0: Element,
}

impl OdeProblem {
    pub fn new(rhs: NcPoly, x0: Element, y0: Element) -> Result<Self> {
        for w in rhs.words() {
            if w.vars().iter().any(|v| !matches!(v, Var::X | Var::H(1))) {
                return Err(Error::UnsupportedOperation(
                    "right-hand side may only use x and h1".into(),
                ));
            }
            if w.count(D) != 1 && !w.is_zero() {
                return Err(Error::NotMultilinear("h1 must occur once in every word".into()));
            }
        }
        Ok(Self { rhs, x0, y0 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unsolvable {
    /// `D^order` changes under the transposition of two increments.
    Asymmetric {
        order: usize,
        swapped: (Var, Var),
        difference: CoordinateForm,
    },
    /// The assembled candidate does not reproduce the right-hand side.
    VerificationFailed { difference: CoordinateForm },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OdeOutcome {
    Solution { taylor: TaylorPoly, y: NcPoly },
    Unsolvable(Unsolvable),
}

/// Integrates by repeated differentiation.
///
/// `D¹ = rhs` and `D^{k+1} = ∂D^k`; every `D^k` must be symmetric in its
/// increments. Once some `D^K` vanishes the candidate
/// `y0 + Σ_{k<K} (k!)⁻¹ D^k(x0)(x - x0; …)` is verified against `rhs`.
pub fn solve_ode(p: &OdeProblem, max_order: usize, alg: &AlgebraSpec) -> Result<OdeOutcome> {
    alg.check_dim(&p.x0)?;
    alg.check_dim(&p.y0)?;
    let mut derivs = vec![p.rhs.simplified()];
    loop {
        let k = derivs.len();
        let dk = &derivs[k - 1];
        if is_semantically_zero(dk, alg) {
            derivs.pop();
            break;
        }
        let hs: Vec<Var> = (1..=k).map(|i| Var::H(i as u8)).collect();
        if let Some(defect) = symmetry_defect(dk, &hs, alg) {
            return Ok(OdeOutcome::Unsolvable(Unsolvable::Asymmetric {
                order: k,
                swapped: defect.swapped,
                difference: defect.difference,
            }));
        }
        if k >= max_order {
            return Err(Error::Truncated { order: k });
        }
        let next = derive(dk)?.poly.simplified();
        derivs.push(next);
    }
    let mut terms = vec![NcPoly::constant(p.y0.clone())];
    for (i, dk) in derivs.iter().enumerate() {
        let k = i + 1;
        let equal = dk.relabel(|v| if v.increment_index().is_some() { D } else { v });
        terms.push(
            equal
                .substitute_element(Var::X, &p.x0, alg)
                .scale(&scalar::factorial(k).recip())
                .simplified(),
        );
    }
    let taylor = TaylorPoly {
        center: p.x0.clone(),
        terms,
    };
    let y = taylor.assemble(alg);
    let dy = derive(&y)?.poly;
    if !semantic_eq(&dy, &p.rhs, alg) {
        return Ok(OdeOutcome::Unsolvable(Unsolvable::VerificationFailed {
            difference: dy.expand(alg).sub(&p.rhs.expand(alg)),
        }));
    }
    Ok(OdeOutcome::Solution { taylor, y })
}

pub const MAX_EXPONENT_ORDER: usize = 20;

/// `∂ⁿy(h1; …; hn)` for `∂y(h) = ½(y h + h y)`:
/// `2⁻ⁿ Σ_S [h_i, i ∈ S ascending] y [h_i, i ∉ S descending]`.
pub fn exponent_derivative(n: usize, alg: &AlgebraSpec) -> Result<NcPoly> {
    if n > MAX_EXPONENT_ORDER {
        return Err(Error::OrderTooHigh {
            order: n,
            max: MAX_EXPONENT_ORDER,
        });
    }
    let coeff = Scalar::new(1.into(), num_bigint::BigInt::from(1u8) << n);
    let mut words = Vec::with_capacity(1 << n);
    for mask in 0u32..(1u32 << n) {
        let inside = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0);
        let outside = (1..=n).rev().filter(|i| mask & (1 << (i - 1)) == 0);
        let vars: Vec<Var> = inside
            .map(|i| Var::H(i as u8))
            .chain(std::iter::once(Var::Y))
            .chain(outside.map(|i| Var::H(i as u8)))
            .collect();
        words.push(NcWord::from_vars(vars, alg).scaled(&coeff));
    }
    Ok(NcPoly::from_words(words))
}

/// `∂y(h_{n+1}) = ½(y h_{n+1} + h_{n+1} y)`.
pub fn exponent_rule(n: usize, alg: &AlgebraSpec) -> Result<NcPoly> {
    let h = Var::h(n + 1)?;
    let y = NcPoly::var(Var::Y, alg);
    let hp = NcPoly::var(h, alg);
    Ok(y.mul(&hp, alg).add(&hp.mul(&y, alg)).scale(&scalar::rat(1, 2)))
}

/// `Σ_{n < terms} qⁿ / n!` in doubles.
pub fn exp_series(q: &[f64], terms: usize, alg: &AlgebraSpec) -> Result<Vec<f64>> {
    if terms == 0 {
        return Err(Error::Semantic("the series needs at least one term".into()));
    }
    let unit = alg.unit().to_f64();
    let mut power = unit.clone();
    let mut total = unit;
    for n in 1..terms {
        power = numeric::scale(&numeric::mul(alg, &power, q), 1.0 / n as f64);
        total = numeric::add(&total, &power);
    }
    Ok(total)
}

/// Order-3 part of `e^a e^b` minus that of `e^{a+b}`:
/// `a³/6 + a²b/2 + ab²/2 + b³/6 - (a+b)³/6`.
pub fn exp_additivity_defect(a: &Element, b: &Element, alg: &AlgebraSpec) -> Result<Element> {
    let sixth = scalar::rat(1, 6);
    let half = scalar::rat(1, 2);
    let a2 = alg.mul(a, a)?;
    let b2 = alg.mul(b, b)?;
    let product = [
        alg.mul(&a2, a)?.scale(&sixth),
        alg.mul(&a2, b)?.scale(&half),
        alg.mul(a, &b2)?.scale(&half),
        alg.mul(&b2, b)?.scale(&sixth),
    ]
    .iter()
    .fold(alg.zero(), |acc, t| &acc + t);
    let s = a + b;
    let sum_cubed = alg.mul(&alg.mul(&s, &s)?, &s)?.scale(&sixth);
    Ok(&product - &sum_cubed)
}

/// `y = Σ_n xⁿ / n!` up to degree `n`, the Taylor polynomial of the
/// exponent at `0` with `y(0) = 1`.
pub fn exponent_taylor(n: usize, alg: &AlgebraSpec) -> Result<TaylorPoly> {
    let mut terms = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let dk = exponent_derivative(k, alg)?;
        let at_zero = dk
            .relabel(|v| if v.increment_index().is_some() { D } else { v })
            .substitute_element(Var::Y, &alg.scalar(Scalar::one()), alg)
            .scale(&scalar::factorial(k).recip())
            .simplified();
        terms.push(at_zero);
    }
    Ok(TaylorPoly {
        center: alg.zero(),
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::polylinear::is_symmetric;
    use crate::sample;
    use crate::scalar::{int, rat};

    fn q() -> AlgebraSpec {
        AlgebraSpec::quaternion()
    }

    fn x(alg: &AlgebraSpec) -> NcPoly {
        NcPoly::var(Var::X, alg)
    }

    fn h(alg: &AlgebraSpec) -> NcPoly {
        NcPoly::var(D, alg)
    }

    #[test]
    fn cube_at_zero() {
        let alg = q();
        let t = taylor_expand(&x(&alg).pow(3, &alg), &alg.zero(), &alg).unwrap();
        assert_eq!(t.terms.len(), 4);
        for n in 0..3 {
            assert!(t.terms[n].is_empty(), "term {n}");
        }
        assert!(semantic_eq(&t.terms[3], &h(&alg).pow(3, &alg), &alg));
        assert_eq!(t.assemble(&alg).to_text(&alg), "x^3");
    }

    #[test]
    fn constant_and_shifted_square() {
        let alg = q();
        let b = NcPoly::constant(Element::from_i64(&[1, 2, 0, 0]));
        let t = taylor_expand(&b, &alg.basis(1), &alg).unwrap();
        assert_eq!(t.terms.len(), 1);
        assert!(semantic_eq(&t.assemble(&alg), &b, &alg));
        let sq = x(&alg).pow(2, &alg);
        let t = taylor_expand(&sq, &alg.scalar(int(1)), &alg).unwrap();
        assert_eq!(t.terms[0], NcPoly::scalar(int(1), &alg));
        assert!(semantic_eq(&t.terms[1], &h(&alg).scale(&int(2)), &alg));
        assert!(semantic_eq(&t.assemble(&alg), &sq, &alg));
    }

    #[test]
    fn reconstruction_of_random_polynomials() {
        let alg = q();
        let mut rng = sample::rng(21);
        for _ in 0..25 {
            let p = sample::polynomial(&mut rng, &alg, 4, 3);
            let x0 = sample::element(&mut rng, 4, 2, 3);
            let t = taylor_expand(&p, &x0, &alg).unwrap();
            assert!(semantic_eq(&t.assemble(&alg), &p, &alg));
            let at = sample::element(&mut rng, 4, 2, 3);
            let direct = p.eval(&HashMap::from([(Var::X, at.clone())]), &alg).unwrap();
            assert_eq!(t.eval(&at, &alg).unwrap(), direct);
        }
    }

    #[test]
    fn remainder_probes() {
        let alg = q();
        let cube = x(&alg).pow(3, &alg);
        let full = taylor_expand(&cube, &alg.zero(), &alg).unwrap();
        let exact = remainder_probe(&cube, &full, &alg.basis(1), &PROBE_STEPS, &alg).unwrap();
        assert!(exact.all_zero());
        let probe = remainder_probe(&cube, &full.truncated(2), &alg.basis(1), &PROBE_STEPS, &alg).unwrap();
        assert_eq!(probe.order, 2);
        for (t, r) in &probe.samples {
            assert!((r - t).abs() <= 1e-12, "{t} {r}");
        }
        assert!(probe.min_decrease_factor() >= 9.0);
        let sq = x(&alg).pow(2, &alg);
        let t1 = taylor_expand(&sq, &alg.scalar(int(1)), &alg).unwrap().truncated(1);
        let probe = remainder_probe(&sq, &t1, &alg.basis(2), &PROBE_STEPS, &alg).unwrap();
        assert!(probe.min_decrease_factor() >= 9.0);
    }

    fn cube_rhs(alg: &AlgebraSpec) -> NcPoly {
        let (x, h) = (x(alg), h(alg));
        h.mul(&x, alg)
            .mul(&x, alg)
            .add(&x.mul(&h, alg).mul(&x, alg))
            .add(&x.mul(&x, alg).mul(&h, alg))
    }

    #[test]
    fn cube_ode() {
        let alg = q();
        let p = OdeProblem::new(cube_rhs(&alg), alg.zero(), alg.zero()).unwrap();
        match solve_ode(&p, 10, &alg).unwrap() {
            OdeOutcome::Solution { y, .. } => assert_eq!(y.to_text(&alg), "x^3"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cube_ode_with_shifted_start() {
        let alg = q();
        let x0 = Element::from_i64(&[1, 0, 1, 0]);
        let y0 = alg.product([&x0, &x0, &x0]).unwrap();
        let p = OdeProblem::new(cube_rhs(&alg), x0, y0).unwrap();
        match solve_ode(&p, 10, &alg).unwrap() {
            OdeOutcome::Solution { y, .. } => assert!(semantic_eq(&y, &x(&alg).pow(3, &alg), &alg)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn asymmetric_ode() {
        let alg = q();
        let rhs = h(&alg).mul(&x(&alg).pow(2, &alg), &alg).scale(&int(3));
        let p = OdeProblem::new(rhs, alg.zero(), alg.zero()).unwrap();
        match solve_ode(&p, 10, &alg).unwrap() {
            OdeOutcome::Unsolvable(Unsolvable::Asymmetric { order, difference, .. }) => {
                assert_eq!(order, 2);
                assert!(!difference.is_zero());
            }
            other => panic!("{other:?}"),
        }
        // commutative: the same right-hand side integrates to x³
        let c = AlgebraSpec::complex();
        let rhs = h(&c).mul(&x(&c).pow(2, &c), &c).scale(&int(3));
        let p = OdeProblem::new(rhs, c.zero(), c.zero()).unwrap();
        assert!(matches!(solve_ode(&p, 10, &c).unwrap(), OdeOutcome::Solution { .. }));
    }

    #[test]
    fn linear_ode() {
        let alg = q();
        let mut rng = sample::rng(4);
        let mut rhs = NcPoly::zero();
        let mut expect = NcPoly::zero();
        for _ in 0..3 {
            let b = sample::element(&mut rng, 4, 2, 3);
            let c = sample::element(&mut rng, 4, 2, 3);
            rhs = rhs.add(&NcPoly::sandwich(b.clone(), D, c.clone()));
            expect = expect.add(&NcPoly::sandwich(b, Var::X, c));
        }
        let p = OdeProblem::new(rhs, alg.zero(), alg.zero()).unwrap();
        match solve_ode(&p, 10, &alg).unwrap() {
            OdeOutcome::Solution { y, .. } => assert!(semantic_eq(&y, &expect, &alg)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ode_errors() {
        let alg = q();
        let bad = x(&alg).mul(&x(&alg), &alg);
        assert!(matches!(
            OdeProblem::new(bad, alg.zero(), alg.zero()),
            Err(Error::NotMultilinear(_))
        ));
        let p = OdeProblem::new(cube_rhs(&alg), alg.zero(), alg.zero()).unwrap();
        assert_eq!(solve_ode(&p, 2, &alg), Err(Error::Truncated { order: 2 }));
    }

    #[test]
    fn exponent_derivatives() {
        let alg = q();
        let d1 = exponent_derivative(1, &alg).unwrap();
        assert!(semantic_eq(&d1, &exponent_rule(0, &alg).unwrap(), &alg));
        let d2 = exponent_derivative(2, &alg).unwrap();
        let w = |v: &[Var]| NcPoly::from_words(vec![NcWord::from_vars(v.to_vec(), &alg)]);
        let (y, h1, h2) = (Var::Y, Var::H(1), Var::H(2));
        let expect = w(&[y, h2, h1])
            .add(&w(&[h1, y, h2]))
            .add(&w(&[h2, y, h1]))
            .add(&w(&[h1, h2, y]))
            .scale(&rat(1, 4));
        assert!(semantic_eq(&d2, &expect, &alg));
        for n in 0..=10 {
            assert_eq!(exponent_derivative(n, &alg).unwrap().len(), 1 << n);
        }
        assert!(matches!(exponent_derivative(21, &alg), Err(Error::OrderTooHigh { .. })));
    }

    #[test]
    fn exponent_derivatives_chain() {
        let alg = q();
        for n in 0..=4 {
            let dn = exponent_derivative(n, &alg).unwrap();
            let rule = exponent_rule(n, &alg).unwrap();
            let next = crate::gateaux::derive_with(&dn, &[(Var::Y, rule)], &alg);
            assert!(
                semantic_eq(&next, &exponent_derivative(n + 1, &alg).unwrap(), &alg),
                "n = {n}"
            );
        }
        // unlike derivatives of polynomials, these are not symmetric
        let d2 = exponent_derivative(2, &alg).unwrap();
        assert!(!is_symmetric(&d2, &[Var::H(1), Var::H(2)], &alg));
        let c = AlgebraSpec::complex();
        assert!(is_symmetric(
            &exponent_derivative(3, &c).unwrap(),
            &[Var::H(1), Var::H(2), Var::H(3)],
            &c
        ));
    }

    #[test]
    fn exponent_taylor_is_power_series() {
        let alg = q();
        let t = exponent_taylor(4, &alg).unwrap();
        for (k, term) in t.terms.iter().enumerate() {
            let expect = h(&alg).pow(k as u32, &alg).scale(&scalar::factorial(k).recip());
            assert!(semantic_eq(term, &expect, &alg));
        }
    }

    #[test]
    fn series_values() {
        let alg = q();
        assert_eq!(exp_series(&[0.0; 4], 30, &alg).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        let e = exp_series(&[0.0, 1.0, 0.0, 0.0], 30, &alg).unwrap();
        assert!((e[0] - 1f64.cos()).abs() <= 1e-12 && (e[1] - 1f64.sin()).abs() <= 1e-12);
        let i = [0.0, 1.0, 0.0, 0.0];
        let j = [0.0, 0.0, 1.0, 0.0];
        let lhs = exp_series(&numeric::add(&i, &j), 30, &alg).unwrap();
        let rhs = numeric::mul(
            &alg,
            &exp_series(&i, 30, &alg).unwrap(),
            &exp_series(&j, 30, &alg).unwrap(),
        );
        assert!(numeric::norm(&numeric::sub(&lhs, &rhs)) > 0.1);
        let a = [0.5, 0.3, -0.6, 0.9];
        let b = [-0.2, 0.6, -1.2, 1.8];
        let lhs = exp_series(&numeric::add(&a, &b), 30, &alg).unwrap();
        let rhs = numeric::mul(
            &alg,
            &exp_series(&a, 30, &alg).unwrap(),
            &exp_series(&b, 30, &alg).unwrap(),
        );
        assert!(numeric::norm(&numeric::sub(&lhs, &rhs)) <= 1e-9);
        assert!(exp_series(&i, 0, &alg).is_err());
    }

    #[test]
    fn additivity_defect() {
        let alg = q();
        let i = alg.basis(1);
        let two_i = i.scale(&int(2));
        assert!(exp_additivity_defect(&i, &two_i, &alg).unwrap().is_zero());
        assert!(exp_additivity_defect(&alg.zero(), &alg.basis(3), &alg)
            .unwrap()
            .is_zero());
        let d = exp_additivity_defect(&i, &alg.basis(2), &alg).unwrap();
        assert!(!d.is_zero());
        // -⅔(i + j) + ⅓(i + j), since (i + j)² = -2
        assert_eq!(d, Element::new(vec![int(0), rat(-1, 3), rat(-1, 3), int(0)]));
    }
}
