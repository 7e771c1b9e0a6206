//! `log M(f) = ∫ log M(f(s, ·)) ds`: Jensen in one variable, a midpoint
//! grid over the remaining ones.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{MeasureEstimate, Method};
use crate::error::{Error, Result};
use crate::laurent::{Evaluator, LaurentPoly};
use crate::unipoly::{cdiv, find_roots_complex};

/// Default number of outer grid points.
pub const DEFAULT_BUDGET: usize = 4_000_000;

struct Fibers {
    outer: usize,
    coeffs: Vec<Evaluator>,
}

impl Fibers {
    fn new(f: &LaurentPoly, var: usize) -> Self {
        let deg = f.degree_in(var) as usize;
        let n = f.num_vars();
        let mut parts: Vec<Vec<(Vec<i64>, num_bigint::BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in f.terms() {
            let mut e = e.to_vec();
            let k = e.remove(var) as usize;
            parts[k].push((e, c.clone()));
        }
        Fibers {
            outer: n - 1,
            coeffs: parts
                .into_iter()
                .map(|t| Evaluator::new(&LaurentPoly::from_terms(n - 1, t)))
                .collect(),
        }
    }

    /// `log M` of the fiber over `s`, or `None` when it vanishes identically.
    fn log_measure(&self, s: &[Complex64]) -> Option<f64> {
        let a: Vec<Complex64> = self.coeffs.iter().map(|e| e.eval(s)).collect();
        log_measure_complex(&a)
    }
}

/// `log M` of `sum a_k x^k` with complex coefficients.
pub(crate) fn log_measure_complex(a: &[Complex64]) -> Option<f64> {
    let mut hi = a.len();
    while hi > 0 && a[hi - 1].norm() == 0.0 {
        hi -= 1;
    }
    let lo = a[..hi].iter().take_while(|c| c.norm() == 0.0).count();
    if hi == 0 {
        return None;
    }
    let a = &a[lo..hi];
    let lead = a[a.len() - 1];
    let out = match a.len() {
        1 => lead.norm().ln(),
        2 => a[0].norm().max(a[1].norm()).ln(),
        3 => {
            let (c, b, q2) = (a[0], a[1], a[2]);
            let disc = (b * b - 4.0 * q2 * c).sqrt();
            let s = if (b.conj() * disc).re >= 0.0 { b + disc } else { b - disc };
            let q = -0.5 * s;
            if q.norm() == 0.0 {
                q2.norm().ln()
            } else {
                let r1 = cdiv(q, q2);
                let r2 = cdiv(c, q);
                q2.norm().ln() + r1.norm().ln().max(0.0) + r2.norm().ln().max(0.0)
            }
        }
        _ => {
            let rs = find_roots_complex(a);
            lead.norm().ln() + rs.values().map(|z| z.norm().ln().max(0.0)).sum::<f64>()
        }
    };
    Some(out)
}

fn grid_mean(fib: &Fibers, n: usize) -> (f64, usize) {
    let m = fib.outer;
    let nodes: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, TAU * (j as f64 + 0.5) / n as f64))
        .collect();
    let slice = |i0: usize| -> (f64, usize) {
        let mut s = vec![nodes[i0]; m];
        let mut idx = vec![0usize; m];
        let mut sum = 0.0;
        let mut bad = 0;
        let inner = n.pow(m as u32 - 1);
        for _ in 0..inner {
            for j in 1..m {
                s[j] = nodes[idx[j]];
            }
            match fib.log_measure(&s) {
                Some(v) if v.is_finite() => sum += v,
                _ => bad += 1,
            }
            for j in (1..m).rev() {
                idx[j] += 1;
                if idx[j] < n {
                    break;
                }
                idx[j] = 0;
            }
        }
        (sum, bad)
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<(f64, usize)> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(slice).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<(f64, usize)> = (0..n).map(slice).collect();
    let bad: usize = parts.iter().map(|p| p.1).sum();
    let total = n.pow(m as u32);
    let sum: f64 = parts.iter().map(|p| p.0).sum();
    (sum / (total - bad).max(1) as f64, bad)
}

/// The fiber variable is the one of smallest degree. With one outer
/// variable the grid doubles until two successive means agree to `1e-12`;
/// otherwise a grid of about `budget` points is compared with the grid of
/// half the resolution, and the difference is the error bound.
pub fn fibered(f: &LaurentPoly, budget: usize) -> Result<MeasureEstimate> {
    if f.is_zero() {
        return Ok(MeasureEstimate::zero(Method::Fibered));
    }
    let (g, _) = f.compress();
    let d = g.num_vars();
    if d < 2 {
        return Err(Error::InvalidArgument(
            "the fibered engine needs at least two variables".into(),
        ));
    }
    let var = (0..d).min_by_key(|&i| g.degree_in(i)).unwrap();
    let fib = Fibers::new(&g, var);
    let m = d - 1;

    let (n, log_m, prev, bad) = if m == 1 {
        let cap = budget.clamp(64, 1 << 20);
        let mut n = 32;
        let (mut prev, _) = grid_mean(&fib, n);
        loop {
            n *= 2;
            let (cur, bad) = grid_mean(&fib, n);
            if (cur - prev).abs() < 1e-12 || n * 2 > cap {
                break (n, cur, prev, bad);
            }
            prev = cur;
        }
    } else {
        let n = ((budget as f64).powf(1.0 / m as f64).floor() as usize).max(4);
        let (cur, bad) = grid_mean(&fib, n);
        let (coarse, _) = grid_mean(&fib, n / 2);
        (n, cur, coarse, bad)
    };
    let gap = (log_m - prev).abs();
    let value = log_m.exp();
    let mut est = MeasureEstimate::from_log(log_m, value * gap.exp_m1(), Method::Fibered);
    est.push("fiber_variable", (var + 1) as f64);
    est.push("grid", n as f64);
    est.push("coarse_grid_value", prev.exp());
    if bad > 0 {
        est.push("discarded", bad as f64);
    }
    Ok(est)
}
