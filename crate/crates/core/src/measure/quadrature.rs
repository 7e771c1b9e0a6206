use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MeasureEstimate, Method};
use crate::error::{Error, Result};
use crate::laurent::{Evaluator, LaurentPoly};

const BATCHES: usize = 8;
const TINY: f64 = 1e-300;

/// Generator `(φ^{-1}, ..., φ^{-d})` of the `d`-dimensional golden-ratio
/// Kronecker sequence, where `φ` is the positive root of `x^{d+1} = x + 1`.
pub fn kronecker_generator(d: usize) -> Vec<f64> {
    let mut phi: f64 = 2.0;
    for _ in 0..60 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    (1..=d).map(|k| phi.powi(-(k as i32)).fract()).collect()
}

/// Randomized quasi-Monte Carlo estimate of `exp(∫ log|f|)`.
///
/// The samples are split into 8 randomly shifted copies of the Kronecker
/// sequence; the error bound is the half-range of the per-batch means,
/// mapped through `exp`. Points where `|f| < 1e-300` are skipped and
/// counted under `discarded`.
pub fn quadrature(f: &LaurentPoly, samples: usize, seed: u64) -> Result<MeasureEstimate> {
    if f.is_zero() {
        return Err(Error::InvalidArgument(
            "quadrature of the zero polynomial diverges".into(),
        ));
    }
    if samples < 1000 {
        return Err(Error::InvalidArgument(format!(
            "quadrature needs at least 1000 samples, got {samples}"
        )));
    }
    let d = f.num_vars();
    let ev = Evaluator::new(f);
    let alpha = kronecker_generator(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifts: Vec<Vec<f64>> = (0..BATCHES)
        .map(|_| (0..d).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let per_batch = samples / BATCHES;

    let batch = |shift: &Vec<f64>| -> (f64, usize, usize) {
        let mut sum = 0.0;
        let mut used = 0;
        let mut point = vec![Complex64::new(1.0, 0.0); d];
        for k in 0..per_batch {
            for j in 0..d {
                let t = (shift[j] + k as f64 * alpha[j]).fract();
                point[j] = Complex64::from_polar(1.0, TAU * t);
            }
            let v = ev.eval(&point).norm();
            if v >= TINY && v.is_finite() {
                sum += v.ln();
                used += 1;
            }
        }
        (sum, used, per_batch - used)
    };
    #[cfg(feature = "parallel")]
    let results: Vec<(f64, usize, usize)> = {
        use rayon::prelude::*;
        shifts.par_iter().map(batch).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(f64, usize, usize)> = shifts.iter().map(batch).collect();

    let discarded: usize = results.iter().map(|r| r.2).sum();
    let means: Vec<f64> = results
        .iter()
        .filter(|r| r.1 > 0)
        .map(|r| r.0 / r.1 as f64)
        .collect();
    if means.len() < 2 {
        return Err(Error::DegenerateSamples);
    }
    let log_m = means.iter().sum::<f64>() / means.len() as f64;
    let hi = means.iter().copied().fold(f64::MIN, f64::max);
    let lo = means.iter().copied().fold(f64::MAX, f64::min);
    let half = (hi - lo) / 2.0;
    let value = log_m.exp();
    let error = (value * half.exp_m1()).max(value * -(-half).exp_m1());
    let mut est = MeasureEstimate::from_log(log_m, error, Method::Quadrature);
    est.push("samples", (per_batch * BATCHES) as f64);
    est.push("discarded", discarded as f64);
    for (i, m) in means.iter().enumerate() {
        est.push(format!("batch{i}"), m.exp());
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse;

    #[test]
    fn generator_is_golden_ratio_in_one_dimension() {
        let a = kronecker_generator(1);
        assert!((a[0] - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        let a = kronecker_generator(2);
        // plastic number
        assert!((1.0 / a[0] - 1.324_717_957_244_746).abs() < 1e-12);
    }

    #[test]
    fn univariate_cross_check() {
        let m = quadrature(&parse("u1-2").unwrap(), 100_000, 1).unwrap();
        assert!((m.value - 2.0).abs() < 1e-2);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let f = parse("1+u1+u2").unwrap();
        assert_eq!(quadrature(&f, 8000, 5).unwrap(), quadrature(&f, 8000, 5).unwrap());
        assert_ne!(quadrature(&f, 8000, 5).unwrap().value, quadrature(&f, 8000, 6).unwrap().value);
    }

    #[test]
    fn rejects_small_sample_counts() {
        assert!(quadrature(&parse("1+u1").unwrap(), 10, 0).is_err());
        assert!(quadrature(&parse("0").unwrap(), 10_000, 0).is_err());
    }
}
