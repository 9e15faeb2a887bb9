//! Floating-point evaluation used only as an independent oracle.
//!
//! Everything here works on plain `f64` coordinate vectors. Symbolic results
//! are computed exactly elsewhere and compared against these limits.

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::scalar;

pub fn mul(alg: &AlgebraSpec, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; alg.dim()];
    for (k, ak) in a.iter().enumerate() {
        if *ak == 0.0 {
            continue;
        }
        for (l, bl) in b.iter().enumerate() {
            if *bl == 0.0 {
                continue;
            }
            for (p, c) in alg.product_terms(k, l) {
                out[*p] += ak * bl * scalar::to_f64(c);
            }
        }
    }
    out
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Euclidean length of the coordinate vector.
pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn conj(alg: &AlgebraSpec, x: &[f64]) -> Result<Vec<f64>> {
    let inv = alg
        .involution()
        .ok_or_else(|| Error::UnsupportedOperation(format!("{} defines no conjugation", alg.name())))?;
    let n = alg.dim();
    Ok((0..n)
        .map(|j| (0..n).map(|i| x[i] * scalar::to_f64(&inv[(i, j)])).sum())
        .collect())
}

/// `x⁻¹ = x̄ / (x x̄)`, valid in the preset division algebras.
pub fn inverse(alg: &AlgebraSpec, x: &[f64]) -> Result<Vec<f64>> {
    if !alg.is_division() {
        return Err(Error::UnsupportedOperation(format!(
            "{} is not a division algebra",
            alg.name()
        )));
    }
    let c = conj(alg, x)?;
    let xc = mul(alg, x, &c);
    let unit = alg
        .unit_index()
        .ok_or_else(|| Error::UnsupportedOperation("unit is not a basis vector".into()))?;
    let n2 = xc[unit];
    if n2 == 0.0 || !n2.is_finite() {
        return Err(Error::Evaluation("inverse of a zero element".into()));
    }
    Ok(scale(&c, 1.0 / n2))
}

/// Step for the central difference quotient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepSchedule {
    pub step: f64,
    /// Combine steps `t` and `t/2` as `(4 D(t/2) - D(t)) / 3`.
    pub richardson: bool,
}

impl Default for StepSchedule {
    fn default() -> Self {
        Self {
            step: 1e-4,
            richardson: true,
        }
    }
}

/// Limit `(f(x + t a) - f(x - t a)) / 2t` for real `t → 0`.
pub fn numeric_gateaux<F>(f: F, x: &[f64], a: &[f64], schedule: StepSchedule) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let central = |t: f64| -> Result<Vec<f64>> {
        let plus = f(&add(x, &scale(a, t)))?;
        let minus = f(&sub(x, &scale(a, t)))?;
        let d = scale(&sub(&plus, &minus), 0.5 / t);
        if d.iter().all(|v| v.is_finite()) {
            Ok(d)
        } else {
            Err(Error::Evaluation("non-finite difference quotient".into()))
        }
    };
    let coarse = central(schedule.step)?;
    if !schedule.richardson {
        return Ok(coarse);
    }
    let fine = central(schedule.step / 2.0)?;
    Ok(fine.iter().zip(&coarse).map(|(f2, f1)| (4.0 * f2 - f1) / 3.0).collect())
}

/// `|approx - exact| / (1 + |exact|)`.
pub fn relative_error(approx: &[f64], exact: &[f64]) -> f64 {
    norm(&sub(approx, exact)) / (1.0 + norm(exact))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        norm(&sub(a, b)) <= tol
    }

    #[test]
    fn square_derivatives() {
        let h = AlgebraSpec::quaternion();
        let sq = |x: &[f64]| Ok(mul(&h, x, x));
        // x = i, a = j: ij + ji = 0
        let d = numeric_gateaux(sq, &[0., 1., 0., 0.], &[0., 0., 1., 0.], StepSchedule::default()).unwrap();
        assert!(close(&d, &[0.0; 4], 1e-9));
        // x = 1 + i, a = j: 2j
        let d = numeric_gateaux(sq, &[1., 1., 0., 0.], &[0., 0., 1., 0.], StepSchedule::default()).unwrap();
        assert!(close(&d, &[0., 0., 2., 0.], 1e-9));
    }

    #[test]
    fn inverse_derivative_at_i() {
        let h = AlgebraSpec::quaternion();
        let inv = |x: &[f64]| inverse(&h, x);
        let d = numeric_gateaux(inv, &[0., 1., 0., 0.], &[0., 0., 1., 0.], StepSchedule::default()).unwrap();
        assert!(close(&d, &[0., 0., -1., 0.], 1e-8), "{d:?}");
    }

    #[test]
    fn singular_point_is_an_error() {
        let h = AlgebraSpec::quaternion();
        let inv = |x: &[f64]| inverse(&h, x);
        let schedule = StepSchedule {
            step: 1.0,
            richardson: false,
        };
        // x - t a hits zero exactly
        let r = numeric_gateaux(inv, &[0., 1., 0., 0.], &[0., 1., 0., 0.], schedule);
        assert!(matches!(r, Err(Error::Evaluation(_))));
    }

    #[test]
    fn complex_inverse() {
        let c = AlgebraSpec::complex();
        let z = inverse(&c, &[1.0, 1.0]).unwrap();
        assert!(close(&z, &[0.5, -0.5], 1e-15));
    }
}
