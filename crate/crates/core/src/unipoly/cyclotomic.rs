//! Cyclotomic polynomials and exact stripping of cyclotomic factors.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::UniPoly;

/// Euler's totient for `0..=limit`.
pub fn totients(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            for k in (p..=limit).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    phi
}

pub fn mobius(mut n: u64) -> i8 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `Φ_m`, built as `∏_{k | m} (x^k - 1)^{μ(m/k)}`.
pub fn cyclotomic(m: u64) -> UniPoly {
    assert!(m >= 1);
    let divisors: Vec<u64> = (1..=m).filter(|k| m % k == 0).collect();
    let mut num: Vec<BigInt> = vec![BigInt::one()];
    let mut dens = Vec::new();
    for &k in &divisors {
        match mobius(m / k) {
            1 => num = mul_xk_minus_one(&num, k as usize),
            -1 => dens.push(k as usize),
            _ => {}
        }
    }
    for k in dens {
        num = div_xk_minus_one(&num, k);
    }
    UniPoly::new(num)
}

fn mul_xk_minus_one(a: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + k];
    for (i, c) in a.iter().enumerate() {
        out[i + k] += c;
        out[i] -= c;
    }
    out
}

// exact by construction: b_i = b_{i-k} - a_i read from the bottom
fn div_xk_minus_one(a: &[BigInt], k: usize) -> Vec<BigInt> {
    let n = a.len() - k;
    let mut q = vec![BigInt::zero(); n];
    for i in 0..n {
        let prev = if i >= k { q[i - k].clone() } else { BigInt::zero() };
        q[i] = prev - &a[i];
    }
    q
}

/// A polynomial split as `x^monomial · ∏ Φ_m^e · rest`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicSplit {
    pub monomial: usize,
    /// `(m, multiplicity)`, ascending in `m`.
    pub factors: Vec<(u64, u32)>,
    pub rest: UniPoly,
}

/// Divides out every cyclotomic factor exactly.
///
/// A candidate `Φ_m` is only tried when `p(e^{2πi/m})` is numerically small;
/// the division itself is exact, so a false positive costs one failed
/// division and never changes the result. Any `m` with `φ(m) ≤ D` satisfies
/// `m < 7 φ(m)` for `m` far beyond machine range, which bounds the sieve.
pub fn strip_cyclotomic(p: &UniPoly) -> CyclotomicSplit {
    let (monomial, mut rest) = p.strip_monomial();
    let mut factors = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return CyclotomicSplit {
            monomial,
            factors,
            rest,
        };
    }
    let limit = 7 * rest.degree().unwrap() + 30;
    let phi = totients(limit);
    let mut m = 1;
    while m <= limit {
        let deg = rest.degree().unwrap_or(0);
        if deg == 0 {
            break;
        }
        if phi[m] as usize > deg || !near_root(&rest, m) {
            m += 1;
            continue;
        }
        let cm = cyclotomic(m as u64);
        let mut mult = 0;
        while rest.degree().unwrap_or(0) >= cm.degree().unwrap() {
            match rest.div_exact(&cm) {
                Some(q) => {
                    rest = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            factors.push((m as u64, mult));
        }
        m += 1;
    }
    CyclotomicSplit {
        monomial,
        factors,
        rest,
    }
}

fn near_root(p: &UniPoly, m: usize) -> bool {
    let z = Complex64::from_polar(1.0, TAU / m as f64);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for c in p.coeffs().iter().rev() {
        let c = c.to_f64().unwrap_or(f64::MAX);
        acc = acc * z + c;
        scale += c.abs();
    }
    acc.norm() < 1e-9 * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), UniPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), UniPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), UniPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), UniPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), UniPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), UniPoly::from_i64(&[1, 0, -1, 0, 1]));
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn totient_values() {
        let phi = totients(12);
        assert_eq!(&phi[1..], &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn degree_is_totient() {
        let phi = totients(60);
        for m in 1..=60u64 {
            assert_eq!(cyclotomic(m).degree().unwrap() as u64, phi[m as usize]);
        }
    }

    #[test]
    fn strips_products_with_multiplicity() {
        let p = &(&cyclotomic(1) * &cyclotomic(1)) * &(&cyclotomic(30) * &UniPoly::from_i64(&[0, 0, -1, -1, 0, 1]));
        let s = strip_cyclotomic(&p);
        assert_eq!(s.monomial, 2);
        assert_eq!(s.factors, vec![(1, 2), (30, 1)]);
        assert_eq!(s.rest, UniPoly::from_i64(&[-1, -1, 0, 1]));
    }
}
