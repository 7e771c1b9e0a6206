use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::LaurentPoly;
use crate::error::{Error, Result};

/// Floating-point evaluator for a fixed polynomial, using nested Horner
/// grouping variable by variable. Build once, evaluate at many points.
#[derive(Clone, Debug)]
pub struct Evaluator {
    num_vars: usize,
    // descending lexicographic order
    exponents: Vec<Vec<i64>>,
    coeffs: Vec<f64>,
}

impl Evaluator {
    pub fn new(f: &LaurentPoly) -> Self {
        let (exponents, coeffs) = f
            .terms()
            .rev()
            .map(|(e, c)| (e.to_vec(), c.to_f64().unwrap_or(f64::NAN)))
            .unzip();
        Evaluator {
            num_vars: f.num_vars(),
            exponents,
            coeffs,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Evaluates without checking the point; coordinates must be nonzero.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        debug_assert_eq!(point.len(), self.num_vars);
        if self.coeffs.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        self.horner(0, self.coeffs.len(), 0, point)
    }

    fn horner(&self, lo: usize, hi: usize, var: usize, point: &[Complex64]) -> Complex64 {
        if var == self.num_vars {
            return (lo..hi).map(|i| Complex64::new(self.coeffs[i], 0.0)).sum();
        }
        let z = point[var];
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev: Option<i64> = None;
        let mut i = lo;
        while i < hi {
            let e = self.exponents[i][var];
            let mut j = i + 1;
            while j < hi && self.exponents[j][var] == e {
                j += 1;
            }
            let inner = self.horner(i, j, var + 1, point);
            acc = match prev {
                None => inner,
                Some(p) => acc * zpow(z, p - e) + inner,
            };
            prev = Some(e);
            i = j;
        }
        acc * zpow(z, prev.unwrap_or(0))
    }
}

fn zpow(z: Complex64, k: i64) -> Complex64 {
    match k {
        0 => Complex64::new(1.0, 0.0),
        1 => z,
        _ => z.powi(k as i32),
    }
}

impl LaurentPoly {
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                found: point.len(),
            });
        }
        if let Some(i) = point.iter().position(|z| z.norm_sqr() == 0.0) {
            return Err(Error::ZeroCoordinate(i));
        }
        Ok(Evaluator::new(self).eval(point))
    }
}
