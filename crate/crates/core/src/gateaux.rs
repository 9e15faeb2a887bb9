//! Gâteaux derivatives of noncommutative polynomials.
//!
//! The derivative of a word replaces one occurrence of `x` at a time by a new
//! increment `h_{m+1}` and sums the results; constants differentiate to zero.
//! [`derive_by_injections`] computes the `k`-th derivative directly as a sum
//! over injective placements of `h1 … hk`, and serves as an independent check.

use std::collections::HashMap;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::linear::{self, CoordMatrix, StdComponents};
use crate::numeric::{self, StepSchedule};
use crate::poly::{NcPoly, NcWord, Var, MAX_INCREMENTS};

/// `∂^m f(x)(h1; …; hm)` as a polynomial in `x, h1 … hm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeResult {
    pub order: usize,
    pub poly: NcPoly,
}

impl DerivativeResult {
    pub fn increments(&self) -> Vec<Var> {
        (1..=self.order).map(|i| Var::H(i as u8)).collect()
    }
}

fn next_increment(p: &NcPoly) -> Result<Var> {
    Var::h(p.max_increment() + 1)
}

/// One more derivative with respect to `x`; existing increments are constant.
pub fn derive(p: &NcPoly) -> Result<DerivativeResult> {
    let h = next_increment(p)?;
    let mut words = Vec::new();
    for w in p.words() {
        for (pos, v) in w.vars().iter().enumerate() {
            if *v == Var::X {
                let mut vars = w.vars().to_vec();
                vars[pos] = h;
                words.push(w.with_vars(vars));
            }
        }
    }
    Ok(DerivativeResult {
        order: h.increment_index().expect("increment"),
        poly: NcPoly::from_words(words),
    })
}

/// `n` successive applications of [`derive`].
pub fn derive_n(p: &NcPoly, n: usize) -> Result<DerivativeResult> {
    let mut cur = DerivativeResult {
        order: p.max_increment(),
        poly: p.clone(),
    };
    for _ in 0..n {
        cur = derive(&cur.poly)?;
    }
    Ok(cur)
}

/// Chain rule with prescribed derivatives of the variables.
///
/// Each occurrence of a variable listed in `rules` is replaced, one at a time,
/// by its rule; all other variables are treated as constants.
pub fn derive_with(p: &NcPoly, rules: &[(Var, NcPoly)], alg: &AlgebraSpec) -> NcPoly {
    let mut out = NcPoly::zero();
    for w in p.words() {
        for (pos, v) in w.vars().iter().enumerate() {
            if let Some((_, rule)) = rules.iter().find(|(r, _)| r == v) {
                out = out.add(&NcPoly::replace_occurrence(w, pos, rule, alg));
            }
        }
    }
    out
}

/// `∂^k p` as the sum over injective placements of `h1 … hk` into the
/// `x`-positions of every word.
pub fn derive_by_injections(p: &NcPoly, k: usize) -> Result<DerivativeResult> {
    if k > MAX_INCREMENTS {
        return Err(Error::OrderTooHigh {
            order: k,
            max: MAX_INCREMENTS,
        });
    }
    if p.variables().iter().any(|v| *v != Var::X) {
        return Err(Error::UnsupportedOperation(
            "placements need a polynomial in x alone".into(),
        ));
    }
    let mut words = Vec::new();
    for w in p.words() {
        let d = w.vars().len();
        if k > d {
            continue;
        }
        let mut chosen = Vec::with_capacity(k);
        place(w, k, d, &mut chosen, &mut words);
    }
    Ok(DerivativeResult {
        order: k,
        poly: NcPoly::from_words(words),
    })
}

fn place(w: &NcWord, k: usize, d: usize, chosen: &mut Vec<usize>, out: &mut Vec<NcWord>) {
    if chosen.len() == k {
        let mut vars = w.vars().to_vec();
        for (slot, &pos) in chosen.iter().enumerate() {
            vars[pos] = Var::H(slot as u8 + 1);
        }
        out.push(w.with_vars(vars));
        return;
    }
    for pos in 0..d {
        if !chosen.contains(&pos) {
            chosen.push(pos);
            place(w, k, d, chosen, out);
            chosen.pop();
        }
    }
}

/// `∂^n p(x)(h; …; h)`: the new increments all renamed to `h`.
pub fn derive_all_equal(p: &NcPoly, n: usize, h: Var) -> Result<NcPoly> {
    let start = p.max_increment();
    let d = derive_n(p, n)?;
    Ok(d.poly.relabel(|v| match v.increment_index() {
        Some(i) if i > start => h,
        _ => v,
    }))
}

fn last_increment(df: &DerivativeResult) -> Result<Var> {
    if df.order == 0 {
        return Err(Error::NotMultilinear("no increment variable".into()));
    }
    Var::h(df.order)
}

/// `∂f(x)(a)` for a first derivative.
pub fn eval_differential(df: &DerivativeResult, x: &Element, a: &Element, alg: &AlgebraSpec) -> Result<Element> {
    let h = last_increment(df)?;
    let bindings = HashMap::from([(Var::X, x.clone()), (h, a.clone())]);
    df.poly.eval(&bindings, alg)
}

/// `a⁻¹ ∂f(x)(a)`.
pub fn d_star(df: &DerivativeResult, x: &Element, a: &Element, alg: &AlgebraSpec) -> Result<Element> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let d = eval_differential(df, x, a, alg)?;
    alg.mul(&alg.inverse(a)?, &d)
}

/// `∂f(x)(a) a⁻¹`.
pub fn star_d(df: &DerivativeResult, x: &Element, a: &Element, alg: &AlgebraSpec) -> Result<Element> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let d = eval_differential(df, x, a, alg)?;
    alg.mul(&d, &alg.inverse(a)?)
}

/// Coordinate matrix of `h ↦ ∂f(x0)(h)`.
pub fn jacobian(df: &DerivativeResult, x0: &Element, alg: &AlgebraSpec) -> Result<CoordMatrix> {
    let h = last_increment(df)?;
    for w in df.poly.words() {
        if w.count(h) != 1 {
            return Err(Error::NotMultilinear(format!("{h} must occur once in every word")));
        }
    }
    alg.check_dim(x0)?;
    let rows = (0..alg.dim())
        .map(|i| eval_differential(df, x0, &alg.basis(i), alg).map(|e| e.coords().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoordMatrix(crate::matrix::Matrix::from_rows(rows)?))
}

/// Standard components of the differential at `x0`.
pub fn differential_std_components(df: &DerivativeResult, x0: &Element, alg: &AlgebraSpec) -> Result<StdComponents> {
    let m = jacobian(df, x0, alg)?;
    linear::coord_to_std(&m, alg).map_err(|e| match e {
        e @ Error::NotRealizable { .. } => Error::Internal(format!("differential of a polynomial: {e}")),
        other => other,
    })
}

/// Parameters shared by the closed-form entries. Unused ones are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormParams {
    pub a: Element,
    pub b: Element,
    pub c: Element,
}

type MapF64 = fn(&AlgebraSpec, &[f64], &[Vec<f64>; 3]) -> Result<Vec<f64>>;
type Derivative = fn(&AlgebraSpec, &Element, &Element, &ClosedFormParams) -> Result<Element>;

/// A map with a known derivative formula and a floating-point evaluator.
#[derive(Clone, Copy)]
pub struct ClosedFormEntry {
    pub name: &'static str,
    pub map_text: &'static str,
    pub derivative_text: &'static str,
    /// `f(x)` in doubles; parameters in the order `a, b, c`.
    pub map: MapF64,
    /// Exact `∂f(x)(h)`.
    pub derivative: Derivative,
    pub uses_inverse: bool,
}

impl std::fmt::Debug for ClosedFormEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClosedFormEntry").field("name", &self.name).finish()
    }
}

fn m(alg: &AlgebraSpec, a: &[f64], b: &[f64]) -> Vec<f64> {
    numeric::mul(alg, a, b)
}

fn mul3(alg: &AlgebraSpec, a: &Element, b: &Element, c: &Element) -> Result<Element> {
    alg.mul(&alg.mul(a, b)?, c)
}

fn checked_inverse(alg: &AlgebraSpec, x: &Element) -> Result<Element> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    alg.inverse(x)
}

pub fn closed_form_table() -> Vec<ClosedFormEntry> {
    vec![
        ClosedFormEntry {
            name: "constant",
            map_text: "b",
            derivative_text: "0",
            map: |_, _, p| Ok(p[1].clone()),
            derivative: |alg, _, _, _| Ok(alg.zero()),
            uses_inverse: false,
        },
        ClosedFormEntry {
            name: "wrapped square",
            map_text: "b*x^2*c",
            derivative_text: "b*(x*h + h*x)*c",
            map: |alg, x, p| Ok(m(alg, &m(alg, &p[1], &m(alg, x, x)), &p[2])),
            derivative: |alg, x, h, p| {
                let inner = &alg.mul(x, h)? + &alg.mul(h, x)?;
                mul3(alg, &p.b, &inner, &p.c)
            },
            uses_inverse: false,
        },
        ClosedFormEntry {
            name: "sandwich",
            map_text: "b*x*c",
            derivative_text: "b*h*c",
            map: |alg, x, p| Ok(m(alg, &m(alg, &p[1], x), &p[2])),
            derivative: |alg, _, h, p| mul3(alg, &p.b, h, &p.c),
            uses_inverse: false,
        },
        ClosedFormEntry {
            name: "commutator",
            map_text: "x*b - b*x",
            derivative_text: "h*b - b*h",
            map: |alg, x, p| Ok(numeric::sub(&m(alg, x, &p[1]), &m(alg, &p[1], x))),
            derivative: |alg, _, h, p| Ok(&alg.mul(h, &p.b)? - &alg.mul(&p.b, h)?),
            uses_inverse: false,
        },
        ClosedFormEntry {
            name: "square",
            map_text: "x^2",
            derivative_text: "x*h + h*x",
            map: |alg, x, _| Ok(m(alg, x, x)),
            derivative: |alg, x, h, _| Ok(&alg.mul(x, h)? + &alg.mul(h, x)?),
            uses_inverse: false,
        },
        ClosedFormEntry {
            name: "inverse",
            map_text: "x^-1",
            derivative_text: "-x^-1*h*x^-1",
            map: |alg, x, _| numeric::inverse(alg, x),
            derivative: |alg, x, h, _| {
                let xi = checked_inverse(alg, x)?;
                Ok(-&mul3(alg, &xi, h, &xi)?)
            },
            uses_inverse: true,
        },
        ClosedFormEntry {
            name: "inner automorphism",
            map_text: "x*a*x^-1",
            derivative_text: "h*a*x^-1 - x*a*x^-1*h*x^-1",
            map: |alg, x, p| {
                let xi = numeric::inverse(alg, x)?;
                Ok(m(alg, &m(alg, x, &p[0]), &xi))
            },
            derivative: |alg, x, h, p| {
                let xi = checked_inverse(alg, x)?;
                let first = mul3(alg, h, &p.a, &xi)?;
                let xaxi = mul3(alg, x, &p.a, &xi)?;
                let second = mul3(alg, &xaxi, h, &xi)?;
                Ok(&first - &second)
            },
            uses_inverse: true,
        },
    ]
}

/// Relative error between the exact derivative of `entry` at `(x, h)` and the
/// numeric limit.
pub fn check_closed_form(
    entry: &ClosedFormEntry,
    alg: &AlgebraSpec,
    x: &Element,
    h: &Element,
    params: &ClosedFormParams,
    schedule: StepSchedule,
) -> Result<f64> {
    let exact = (entry.derivative)(alg, x, h, params)?.to_f64();
    let pf = [params.a.to_f64(), params.b.to_f64(), params.c.to_f64()];
    let approx = numeric::numeric_gateaux(|y| (entry.map)(alg, y, &pf), &x.to_f64(), &h.to_f64(), schedule)?;
    Ok(numeric::relative_error(&approx, &exact))
}

/// Relative error between a symbolic first derivative and the numeric limit
/// of `p` at `(x, h)`.
pub fn check_symbolic(p: &NcPoly, x: &Element, h: &Element, alg: &AlgebraSpec, schedule: StepSchedule) -> Result<f64> {
    let df = derive(p)?;
    let exact = eval_differential(&df, x, h, alg)?.to_f64();
    let f = |y: &[f64]| p.eval_f64(&HashMap::from([(Var::X, y.to_vec())]), alg);
    let approx = numeric::numeric_gateaux(f, &x.to_f64(), &h.to_f64(), schedule)?;
    Ok(numeric::relative_error(&approx, &exact))
}
