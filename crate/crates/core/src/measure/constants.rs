use std::f64::consts::PI;

/// Lehmer's number, the largest real root of
/// `1 + u - u^3 - u^4 - u^5 - u^6 - u^7 + u^9 + u^10`.
pub const LEHMER: f64 = 1.176_280_818_259_917_5;

/// Partial sums of `L(2, χ)` for the character mod 3, over `pairs` pairs of
/// terms `1/(3k+1)^2 - 1/(3k+2)^2`, with the remaining tail replaced by its
/// midpoint integral when `tail` is set.
pub fn chi3_series(pairs: usize, tail: bool) -> f64 {
    let mut s = 0.0;
    for k in (0..pairs).rev() {
        let k = k as f64;
        let a = 3.0 * k + 1.0;
        let b = 3.0 * k + 2.0;
        s += 1.0 / (a * a) - 1.0 / (b * b);
    }
    if tail {
        let x = pairs as f64 - 0.5;
        s += 1.0 / (3.0 * (3.0 * x + 1.0)) - 1.0 / (3.0 * (3.0 * x + 2.0));
    }
    s
}

/// `exp(3√3/(4π) L(2, χ))`, the measure of `1 + u1 + u2`.
pub fn smyth_chi3() -> f64 {
    (3.0 * 3f64.sqrt() / (4.0 * PI) * chi3_series(1_000_000, true)).exp()
}

/// `ζ(3)` by direct summation to `10^6` plus the midpoint tail integral.
pub fn zeta3() -> f64 {
    let n = 1_000_000u32;
    let mut s = 0.0;
    for k in (1..=n).rev() {
        let k = k as f64;
        s += 1.0 / (k * k * k);
    }
    let x = n as f64 + 0.5;
    s + 1.0 / (2.0 * x * x)
}

/// `exp(7 ζ(3) / (2π^2))`, the measure of `1 + u1 + u2 + u3`.
pub fn smyth_zeta3() -> f64 {
    (7.0 * zeta3() / (2.0 * PI * PI)).exp()
}

/// The smallest Pisot number, the real root of `u^3 - u - 1`.
pub fn theta0() -> f64 {
    let r = 69f64.sqrt();
    ((9.0 + r) / 18.0).cbrt() + ((9.0 - r) / 18.0).cbrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!((smyth_chi3() - 1.381_356_444_518_498).abs() < 1e-12);
        assert!((zeta3() - 1.202_056_903_159_594_3).abs() < 1e-13);
        assert!((smyth_zeta3() - 1.531_547_096_687_458).abs() < 1e-12);
        let t = theta0();
        assert!((t * t * t - t - 1.0).abs() < 1e-14);
    }

    #[test]
    fn partial_sums_increase_to_the_limit() {
        assert_eq!(chi3_series(1, false), 1.0 - 0.25);
        let lower = (3.0 * 3f64.sqrt() / (4.0 * PI) * chi3_series(1, false)).exp();
        assert!(lower < smyth_chi3());
        assert!(chi3_series(10, false) < chi3_series(1000, false));
    }
}
