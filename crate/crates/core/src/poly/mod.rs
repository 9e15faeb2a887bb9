//! Noncommutative polynomials with algebra-element coefficients.
//!
//! A word `c_0 v_1 c_1 v_2 … v_m c_m` interleaves constants with variables
//! drawn from `x`, `y` and the increments `h1 … h32`. A polynomial is a formal
//! sum of words. Word-level representations are syntax only: two polynomials
//! are equal as maps iff their coordinate expansions agree (see [`comm`]).

pub mod comm;
pub mod polylinear;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::numeric;
use crate::scalar::{self, Scalar};

pub use comm::{CommPoly, CoordinateForm, Indeterminate, Monomial};
pub use polylinear::{is_symmetric, polylinear_coords, symmetry_defect, PolylinearTensor, SymmetryDefect};

/// Largest increment index (`h32`).
pub const MAX_INCREMENTS: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    X,
    /// The unknown function in the exponent equation.
    Y,
    /// Increment `h_n`, `1 <= n <= 32`.
    H(u8),
}

impl Var {
    pub fn h(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_INCREMENTS {
            return Err(Error::OrderTooHigh {
                order: n,
                max: MAX_INCREMENTS,
            });
        }
        Ok(Var::H(n as u8))
    }

    pub fn increment_index(self) -> Option<usize> {
        match self {
            Var::H(n) => Some(n as usize),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("x"),
            Var::Y => f.write_str("y"),
            Var::H(n) => write!(f, "h{n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NcWord {
    constants: Vec<Element>,
    vars: Vec<Var>,
}

impl NcWord {
    pub fn new(constants: Vec<Element>, vars: Vec<Var>) -> Result<Self> {
        if constants.len() != vars.len() + 1 {
            return Err(Error::Dimension {
                expected: vars.len() + 1,
                found: constants.len(),
            });
        }
        Ok(Self { constants, vars })
    }

    /// `v_1 v_2 … v_m` with unit constants.
    pub fn from_vars(vars: Vec<Var>, alg: &AlgebraSpec) -> Self {
        Self {
            constants: vec![alg.unit().clone(); vars.len() + 1],
            vars,
        }
    }

    pub fn constants(&self) -> &[Element] {
        &self.constants
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.constants.iter().any(Element::is_zero)
    }

    pub fn count(&self, v: Var) -> usize {
        self.vars.iter().filter(|&&w| w == v).count()
    }

    pub fn with_vars(&self, vars: Vec<Var>) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        Self {
            constants: self.constants.clone(),
            vars,
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        let mut w = self.clone();
        w.constants[0] = w.constants[0].scale(s);
        w
    }

    fn concat(&self, other: &Self, alg: &AlgebraSpec) -> Self {
        let mut constants = self.constants[..self.constants.len() - 1].to_vec();
        let joint = alg
            .mul(self.constants.last().unwrap(), &other.constants[0])
            .expect("constants share the algebra dimension");
        constants.push(joint);
        constants.extend_from_slice(&other.constants[1..]);
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars);
        Self { constants, vars }
    }

    /// Splits around the variable at `pos`: the prefix ends with constant
    /// `c_pos`, the suffix starts with `c_{pos+1}`.
    fn split_at_var(&self, pos: usize) -> (Self, Self) {
        let left = Self {
            constants: self.constants[..=pos].to_vec(),
            vars: self.vars[..pos].to_vec(),
        };
        let right = Self {
            constants: self.constants[pos + 1..].to_vec(),
            vars: self.vars[pos + 1..].to_vec(),
        };
        (left, right)
    }
}

/// Formal sum of words.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NcPoly {
    words: Vec<NcWord>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_words(words: Vec<NcWord>) -> Self {
        Self { words }
    }

    pub fn constant(e: Element) -> Self {
        Self::from_words(vec![NcWord {
            constants: vec![e],
            vars: Vec::new(),
        }])
    }

    pub fn scalar(s: Scalar, alg: &AlgebraSpec) -> Self {
        Self::constant(alg.scalar(s))
    }

    pub fn var(v: Var, alg: &AlgebraSpec) -> Self {
        Self::from_words(vec![NcWord::from_vars(vec![v], alg)])
    }

    /// `b v c`.
    pub fn sandwich(b: Element, v: Var, c: Element) -> Self {
        Self::from_words(vec![NcWord {
            constants: vec![b, c],
            vars: vec![v],
        }])
    }

    /// `a_0 x a_1 x … x a_n`.
    pub fn monomial(constants: Vec<Element>) -> Self {
        let n = constants.len().saturating_sub(1);
        Self::from_words(vec![NcWord {
            constants,
            vars: vec![Var::X; n],
        }])
    }

    pub fn words(&self) -> &[NcWord] {
        &self.words
    }

    pub fn into_words(self) -> Vec<NcWord> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        words.extend_from_slice(&other.words);
        Self { words }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            words: self.words.iter().map(|w| w.scaled(s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, alg: &AlgebraSpec) -> Self {
        let mut words = Vec::with_capacity(self.words.len() * other.words.len());
        for a in &self.words {
            for b in &other.words {
                words.push(a.concat(b, alg));
            }
        }
        Self { words }
    }

    pub fn pow(&self, n: u32, alg: &AlgebraSpec) -> Self {
        (0..n).fold(Self::scalar(Scalar::one(), alg), |acc, _| acc.mul(self, alg))
    }

    /// `b · self · c`.
    pub fn wrap(&self, b: &Element, c: &Element, alg: &AlgebraSpec) -> Self {
        Self::constant(b.clone())
            .mul(self, alg)
            .mul(&Self::constant(c.clone()), alg)
    }

    /// Number of `x` occurrences in the longest word.
    pub fn degree_in(&self, v: Var) -> usize {
        self.words.iter().map(|w| w.count(v)).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> usize {
        self.degree_in(Var::X)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.words.iter().flat_map(|w| w.vars.iter().copied()).collect()
    }

    /// Largest increment index present, 0 if none.
    pub fn max_increment(&self) -> usize {
        self.words
            .iter()
            .flat_map(|w| w.vars.iter())
            .filter_map(|v| v.increment_index())
            .max()
            .unwrap_or(0)
    }

    /// Applies `f` to every variable label.
    pub fn relabel(&self, f: impl Fn(Var) -> Var) -> Self {
        Self {
            words: self
                .words
                .iter()
                .map(|w| w.with_vars(w.vars.iter().map(|&v| f(v)).collect()))
                .collect(),
        }
    }

    pub fn rename(&self, from: Var, to: Var) -> Self {
        self.relabel(|v| if v == from { to } else { v })
    }

    /// Exchanges two variable labels.
    pub fn swap(&self, a: Var, b: Var) -> Self {
        self.relabel(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }

    /// Replaces every occurrence of `v` by the polynomial `q`.
    pub fn substitute(&self, v: Var, q: &NcPoly, alg: &AlgebraSpec) -> Self {
        let mut out = Vec::new();
        for w in &self.words {
            let mut acc = NcPoly::constant(w.constants[0].clone());
            for (var, c) in w.vars.iter().zip(&w.constants[1..]) {
                let factor = if *var == v { q.clone() } else { NcPoly::var(*var, alg) };
                acc = acc.mul(&factor, alg).mul(&NcPoly::constant(c.clone()), alg);
            }
            out.extend(acc.words);
        }
        Self { words: out }
    }

    pub fn substitute_element(&self, v: Var, e: &Element, alg: &AlgebraSpec) -> Self {
        let mut words = Vec::with_capacity(self.words.len());
        'words: for w in &self.words {
            let mut constants = vec![w.constants[0].clone()];
            let mut vars = Vec::with_capacity(w.vars.len());
            for (var, c) in w.vars.iter().zip(&w.constants[1..]) {
                if *var != v {
                    vars.push(*var);
                    constants.push(c.clone());
                    continue;
                }
                if e.is_zero() {
                    continue 'words;
                }
                let last = constants.last_mut().expect("nonempty");
                *last = alg
                    .mul(&alg.mul(last, e).expect("constants share the algebra dimension"), c)
                    .expect("constants share the algebra dimension");
            }
            words.push(NcWord { constants, vars });
        }
        Self { words }
    }

    /// Replaces the variable at position `pos` of word `w` by `q`.
    pub(crate) fn replace_occurrence(w: &NcWord, pos: usize, q: &NcPoly, alg: &AlgebraSpec) -> Self {
        let (left, right) = w.split_at_var(pos);
        NcPoly::from_words(vec![left])
            .mul(q, alg)
            .mul(&NcPoly::from_words(vec![right]), alg)
    }

    /// Collects like words and drops zero words. Constant words are summed
    /// into one; elsewhere central scalar factors are pulled out of every
    /// constant, so words that differ only by rational multiples merge. The
    /// result is ordered by word length, then variables, then constants.
    pub fn simplified(&self) -> Self {
        let mut acc: BTreeMap<(usize, Vec<Var>, Vec<Element>), Scalar> = BTreeMap::new();
        let mut constant: Option<Element> = None;
        for w in &self.words {
            if w.is_zero() {
                continue;
            }
            if w.vars.is_empty() {
                constant = Some(match constant {
                    Some(c) => &c + &w.constants[0],
                    None => w.constants[0].clone(),
                });
                continue;
            }
            let mut coeff = Scalar::one();
            let constants: Vec<Element> = w
                .constants
                .iter()
                .map(|c| {
                    let lead = c
                        .coords()
                        .iter()
                        .find(|v| !v.is_zero())
                        .expect("zero constants filtered above");
                    if lead.is_one() {
                        return c.clone();
                    }
                    let normalized = c.scale(&lead.recip());
                    coeff *= lead;
                    normalized
                })
                .collect();
            match acc.entry((w.vars.len(), w.vars.clone(), constants)) {
                Entry::Vacant(slot) => {
                    slot.insert(coeff);
                }
                Entry::Occupied(mut slot) => *slot.get_mut() += coeff,
            }
        }
        let constant = constant.filter(|c| !c.is_zero()).map(|c| NcWord {
            constants: vec![c],
            vars: Vec::new(),
        });
        let words = constant
            .into_iter()
            .chain(
                acc.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((_, vars, mut constants), c)| {
                        if !c.is_one() {
                            constants[0] = constants[0].scale(&c);
                        }
                        NcWord { constants, vars }
                    }),
            )
            .collect();
        Self { words }
    }

    /// True when the polynomial simplifies to the empty sum.
    pub fn is_syntactically_zero(&self) -> bool {
        self.simplified().words.is_empty()
    }

    pub fn expand(&self, alg: &AlgebraSpec) -> CoordinateForm {
        comm::expand(self, alg)
    }

    pub fn eval(&self, bindings: &HashMap<Var, Element>, alg: &AlgebraSpec) -> Result<Element> {
        let mut total = alg.zero();
        for w in &self.words {
            let mut acc = w.constants[0].clone();
            for (v, c) in w.vars.iter().zip(&w.constants[1..]) {
                let val = bindings.get(v).ok_or(Error::UnboundVariable(*v))?;
                acc = alg.mul(&alg.mul(&acc, val)?, c)?;
            }
            total = &total + &acc;
        }
        Ok(total)
    }

    pub fn eval_f64(&self, bindings: &HashMap<Var, Vec<f64>>, alg: &AlgebraSpec) -> Result<Vec<f64>> {
        let mut total = vec![0.0; alg.dim()];
        for w in &self.words {
            let mut acc = w.constants[0].to_f64();
            for (v, c) in w.vars.iter().zip(&w.constants[1..]) {
                let val = bindings.get(v).ok_or(Error::UnboundVariable(*v))?;
                acc = numeric::mul(alg, &numeric::mul(alg, &acc, val), &c.to_f64());
            }
            for (t, a) in total.iter_mut().zip(acc) {
                *t += a;
            }
        }
        Ok(total)
    }

    /// Canonical text, e.g. `x*h1 + h1*x` or `(1+2i)*x*(j)*x`.
    pub fn to_text(&self, alg: &AlgebraSpec) -> String {
        let words = &self.words;
        if words.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, w) in words.iter().enumerate() {
            let (neg, body) = word_text(w, alg);
            match (n, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// Real multiple of the unit, if `e` is one.
fn as_real(e: &Element, alg: &AlgebraSpec) -> Option<Scalar> {
    let u = alg.unit_index()?;
    let unit_coord = e.coord(u).clone();
    (alg.scalar(unit_coord.clone()) == *e).then_some(unit_coord)
}

enum Factor<'a> {
    Const(&'a Element),
    Real(Scalar),
    Power(Var, usize),
}

fn const_factor<'a>(c: &'a Element, alg: &AlgebraSpec) -> Option<Factor<'a>> {
    if c == alg.unit() {
        return None;
    }
    Some(match as_real(c, alg) {
        Some(r) => Factor::Real(r),
        None => Factor::Const(c),
    })
}

fn word_text(w: &NcWord, alg: &AlgebraSpec) -> (bool, String) {
    let mut factors: Vec<Factor> = Vec::new();
    let mut negative = false;
    // leading scalar carries the sign
    let c0 = &w.constants[0];
    match as_real(c0, alg) {
        Some(r) if r.is_negative() => {
            negative = true;
            if !r.abs().is_one() || w.vars.is_empty() {
                factors.push(Factor::Real(r.abs()));
            }
        }
        _ if w.vars.is_empty() && c0 == alg.unit() => factors.push(Factor::Real(Scalar::one())),
        _ => factors.extend(const_factor(c0, alg)),
    }
    let mut separated = true;
    for (v, c) in w.vars.iter().zip(&w.constants[1..]) {
        match factors.last_mut() {
            Some(Factor::Power(prev, n)) if *prev == *v && !separated => *n += 1,
            _ => factors.push(Factor::Power(*v, 1)),
        }
        let f = const_factor(c, alg);
        separated = f.is_some();
        factors.extend(f);
    }
    let parts: Vec<String> = factors
        .iter()
        .map(|f| match f {
            Factor::Const(e) => format!("({})", alg.format(e)),
            Factor::Real(r) => scalar::display(r),
            Factor::Power(v, 1) => v.to_string(),
            Factor::Power(v, n) => format!("{v}^{n}"),
        })
        .collect();
    (negative, parts.join("*"))
}

/// True iff `p` and `q` induce the same map on `alg`.
///
/// Identical simplified word sums are accepted directly; otherwise the
/// coordinate expansions are compared.
pub fn semantic_eq(p: &NcPoly, q: &NcPoly, alg: &AlgebraSpec) -> bool {
    let (ps, qs) = (p.simplified(), q.simplified());
    if ps == qs {
        return true;
    }
    ps.expand(alg) == qs.expand(alg)
}

pub fn is_semantically_zero(p: &NcPoly, alg: &AlgebraSpec) -> bool {
    let s = p.simplified();
    s.is_empty() || s.expand(alg).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn h() -> AlgebraSpec {
        AlgebraSpec::quaternion()
    }

    fn x(alg: &AlgebraSpec) -> NcPoly {
        NcPoly::var(Var::X, alg)
    }

    fn h1(alg: &AlgebraSpec) -> NcPoly {
        NcPoly::var(Var::H(1), alg)
    }

    #[test]
    fn word_arity_is_checked() {
        let alg = h();
        assert!(NcWord::new(vec![alg.unit().clone()], vec![Var::X]).is_err());
    }

    #[test]
    fn identity_word_expands_to_coordinates() {
        let alg = h();
        let form = x(&alg).expand(&alg);
        assert_eq!(form, CoordinateForm::variable(Var::X, 4));
        assert_eq!(form.to_string(), "[0] x_0; [1] x_1; [2] x_2; [3] x_3");
    }

    #[test]
    fn sandwich_expansion_matches_table() {
        // i (x0 + x1 i + x2 j + x3 k) j = x0 k + x1 (-j)... computed by hand:
        // i·1·j = k, i·i·j = -j, i·j·j = -i, i·k·j = 1
        let alg = h();
        let p = NcPoly::sandwich(alg.basis(1), Var::X, alg.basis(2));
        let form = p.expand(&alg);
        let v = |c: u8| Indeterminate { var: Var::X, coord: c };
        let one = CommPoly::constant(int(1));
        let expect = [
            one.times_indeterminate(v(3)),
            {
                let mut t = CommPoly::zero();
                t.add_scaled(&one.times_indeterminate(v(2)), &int(-1));
                t
            },
            {
                let mut t = CommPoly::zero();
                t.add_scaled(&one.times_indeterminate(v(1)), &int(-1));
                t
            },
            one.times_indeterminate(v(0)),
        ];
        assert_eq!(form.components(), &expect);
    }

    #[test]
    fn commutator_at_i_j() {
        let alg = h();
        let p = x(&alg).mul(&h1(&alg), &alg).sub(&h1(&alg).mul(&x(&alg), &alg));
        let bind = HashMap::from([(Var::X, alg.basis(1)), (Var::H(1), alg.basis(2))]);
        let direct = p.eval(&bind, &alg).unwrap();
        assert_eq!(direct, alg.basis(3).scale(&int(2)));
        assert_eq!(p.expand(&alg).eval(&bind).unwrap(), direct);
    }

    #[test]
    fn semantic_equality_examples() {
        let alg = h();
        let (xx, hh) = (x(&alg), h1(&alg));
        let xh = xx.mul(&hh, &alg);
        let hx = hh.mul(&xx, &alg);
        assert!(semantic_eq(&xh.add(&hx), &hx.add(&xh), &alg));
        assert!(!semantic_eq(&xh, &hx, &alg));
        // commutative over the complex numbers
        let c = AlgebraSpec::complex();
        let (xc, hc) = (x(&c), h1(&c));
        assert!(semantic_eq(&xc.mul(&hc, &c), &hc.mul(&xc, &c), &c));
    }

    #[test]
    fn conjugation_polynomial() {
        let alg = h();
        let mut sum = x(&alg);
        for e in 1..4 {
            sum = sum.add(&NcPoly::sandwich(alg.basis(e), Var::X, alg.basis(e)));
        }
        let conj_poly = sum.scale(&rat(-1, 2));
        for coords in [[1, 2, 3, 4], [0, -1, 5, 2], [7, 0, 0, 0]] {
            let q = Element::from_i64(&coords);
            let bind = HashMap::from([(Var::X, q.clone())]);
            assert_eq!(conj_poly.eval(&bind, &alg).unwrap(), alg.conj(&q).unwrap());
        }
    }

    #[test]
    fn eval_examples() {
        let alg = h();
        let sq = x(&alg).pow(2, &alg);
        let at_i = HashMap::from([(Var::X, alg.basis(1))]);
        assert_eq!(sq.eval(&at_i, &alg).unwrap(), -&alg.basis(0));
        let b = Element::from_i64(&[1, 2, 0, -1]);
        assert_eq!(NcPoly::constant(b.clone()).eval(&HashMap::new(), &alg).unwrap(), b);
        let (xx, hh) = (x(&alg), h1(&alg));
        let p = hh
            .mul(&xx.pow(2, &alg), &alg)
            .add(&xx.mul(&hh, &alg).mul(&xx, &alg))
            .add(&xx.pow(2, &alg).mul(&hh, &alg));
        let ones = HashMap::from([(Var::X, alg.basis(0)), (Var::H(1), alg.basis(0))]);
        assert_eq!(p.eval(&ones, &alg).unwrap(), alg.scalar(int(3)));
        assert_eq!(p.eval(&at_i, &alg), Err(Error::UnboundVariable(Var::H(1))));
    }

    #[test]
    fn simplify_merges_scalar_multiples() {
        let alg = h();
        let xi = NcPoly::sandwich(alg.basis(0), Var::X, alg.basis(1));
        let p = xi.scale(&int(2)).add(&xi.scale(&int(-2)));
        assert!(p.is_syntactically_zero());
        let q = xi.add(&NcPoly::sandwich(alg.scalar(int(3)), Var::X, alg.basis(1)));
        let s = q.simplified();
        assert_eq!(s.len(), 1);
        assert!(semantic_eq(&s, &xi.scale(&int(4)), &alg));
        // zero words vanish
        let zero_word = NcPoly::sandwich(alg.zero(), Var::X, alg.basis(1));
        assert!(semantic_eq(&xi.add(&zero_word), &xi, &alg));
    }

    #[test]
    fn text_form() {
        let alg = h();
        let (xx, hh) = (x(&alg), h1(&alg));
        let d = xx.mul(&hh, &alg).add(&hh.mul(&xx, &alg)).simplified();
        assert_eq!(d.to_text(&alg), "x*h1 + h1*x");
        let w = NcWord::new(
            vec![Element::from_i64(&[1, 2, 0, 0]), alg.basis(2), alg.unit().clone()],
            vec![Var::X, Var::X],
        )
        .unwrap();
        assert_eq!(NcPoly::from_words(vec![w]).to_text(&alg), "(1+2i)*x*(j)*x");
        assert_eq!(xx.pow(3, &alg).simplified().to_text(&alg), "x^3");
        assert_eq!(xx.scale(&rat(-1, 2)).to_text(&alg), "-1/2*x");
        assert_eq!(NcPoly::zero().to_text(&alg), "0");
        assert_eq!(NcPoly::scalar(int(1), &alg).to_text(&alg), "1");
        assert_eq!(NcPoly::scalar(int(-3), &alg).to_text(&alg), "-3");
    }

    #[test]
    fn substitution() {
        let alg = h();
        let sq = x(&alg).pow(2, &alg);
        // x -> x + 1
        let shifted = sq.substitute(Var::X, &x(&alg).add(&NcPoly::scalar(int(1), &alg)), &alg);
        let expect = sq.add(&x(&alg).scale(&int(2))).add(&NcPoly::scalar(int(1), &alg));
        assert!(semantic_eq(&shifted, &expect, &alg));
        let at0 = sq.substitute_element(Var::X, &alg.zero(), &alg);
        assert!(at0.is_syntactically_zero());
    }

    #[test]
    fn f64_evaluation_agrees() {
        let alg = h();
        let p = NcPoly::sandwich(alg.basis(1), Var::X, alg.basis(2)).mul(&x(&alg), &alg);
        let q = Element::new(vec![rat(1, 2), int(-1), int(2), rat(3, 4)]);
        let exact = p.eval(&HashMap::from([(Var::X, q.clone())]), &alg).unwrap();
        let approx = p.eval_f64(&HashMap::from([(Var::X, q.to_f64())]), &alg).unwrap();
        for (a, b) in approx.iter().zip(exact.to_f64()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
