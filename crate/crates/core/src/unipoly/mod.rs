//! Dense univariate integer polynomials: roots, Jensen's formula, and the
//! Kronecker/PV/Salem structure of their roots.

mod cyclotomic;
mod roots;

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use cyclotomic::{cyclotomic, mobius, strip_cyclotomic, totients, CyclotomicSplit};
pub(crate) use roots::cdiv;
pub use roots::{find_roots_complex, Root, RootSet, CLUSTER_TOLERANCE, MAX_ITERATIONS};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::measure::{MeasureEstimate, Method};

/// `|‖z‖ - 1|` below this counts as on the unit circle.
pub const CIRCLE_TOLERANCE: f64 = 1e-8;
/// Roots whose distance to the circle lies between [`CIRCLE_TOLERANCE`] and
/// this value make a classification ambiguous.
pub const AMBIGUITY_BAND: f64 = 1e-5;

/// Coefficients from the constant term up, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UniPoly {
    #[serde(serialize_with = "ser_bigints")]
    coeffs: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// The dense form of `normalize(f)`; `f` must have one variable.
    pub fn from_laurent(f: &LaurentPoly) -> Result<Self> {
        if f.num_vars() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: f.num_vars(),
            });
        }
        let g = f.normalize();
        let deg = g.max_exponents().first().copied().unwrap_or(0).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); if g.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in g.terms() {
            coeffs[e[0] as usize] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as i64], c.clone())),
        )
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.to_complex()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `u^deg p(1/u)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(-u)`, which has the same Mahler measure.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Splits off the largest power of `u` dividing `self`.
    pub fn strip_monomial(&self) -> (usize, UniPoly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k == self.coeffs.len() {
            return (0, self.clone());
        }
        (k, UniPoly::new(self.coeffs[k..].to_vec()))
    }

    /// Exact quotient, or `None` when `d` does not divide `self` over ℤ.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let dd = d.degree()?;
        let lead = d.leading().unwrap();
        let Some(n) = self.degree() else {
            return Some(UniPoly::zero());
        };
        if n < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let (qi, r) = rem[i + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            if !qi.is_zero() {
                for (j, c) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &qi * c;
                }
            }
            q[i] = qi;
        }
        rem.iter().all(Zero::is_zero).then(|| UniPoly::new(q))
    }

    /// True when the coefficients, with leading and trailing zeros removed,
    /// read the same backwards up to an overall sign.
    pub fn is_reciprocal(&self) -> bool {
        let (_, p) = self.strip_monomial();
        let c = &p.coeffs;
        let fwd = c.iter().zip(c.iter().rev()).all(|(a, b)| a == b);
        let anti = c.iter().zip(c.iter().rev()).all(|(a, b)| *a == -b);
        fwd || anti
    }

    pub fn find_roots(&self) -> Result<RootSet> {
        match self.degree() {
            None | Some(0) => Err(Error::InvalidArgument(
                "root finding needs degree at least 1".into(),
            )),
            _ => Ok(find_roots_complex(&self.to_complex())),
        }
    }

    /// Exact test for `±u^k ∏ Φ_m^{e_m}`.
    pub fn kronecker_test(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let (_, p) = self.strip_monomial();
        if !p.leading().unwrap().abs().is_one() || !p.coeffs[0].abs().is_one() {
            return false;
        }
        strip_cyclotomic(&p).rest.degree() == Some(0)
    }

    /// `|c_n| ∏ max(|r_j|, 1)`.
    ///
    /// The error bound widens each root by its inclusion radius. When 1 lies
    /// within the error bound (or within `1e-6`) for a monic polynomial the
    /// Kronecker test decides exactly whether `M = 1`.
    pub fn mahler_jensen(&self) -> Result<MeasureEstimate> {
        let Some(_) = self.degree() else {
            return Ok(MeasureEstimate::zero(Method::Jensen));
        };
        let (_, p) = self.strip_monomial();
        let lead = p.leading().unwrap().abs();
        let log_lead = big_ln(&lead);
        if p.degree() == Some(0) {
            return Ok(MeasureEstimate::from_log(log_lead, 0.0, Method::Jensen));
        }
        let rs = p.find_roots()?;
        if !rs.converged {
            return Err(Error::NonConvergence {
                iterations: rs.iterations,
            });
        }
        let mut log_m = log_lead;
        let mut log_hi = log_lead;
        let mut log_lo = log_lead;
        let mut max_res: f64 = 0.0;
        for r in &rs.roots {
            let a = r.value.norm();
            log_m += a.ln().max(0.0);
            log_hi += (a + r.error_bound).ln().max(0.0);
            log_lo += (a - r.error_bound).ln().max(0.0);
            max_res = max_res.max(r.residual);
        }
        let value = log_m.exp();
        let error = (log_hi.exp() - value).max(value - log_lo.exp()).max(0.0);
        let mut est = MeasureEstimate::from_log(log_m, error, Method::Jensen);
        est.push("degree", p.degree().unwrap() as f64);
        est.push("iterations", rs.iterations as f64);
        est.push("max_residual", max_res);
        if lead.is_one() && (value - 1.0).abs() <= error.max(1e-6) && p.kronecker_test() {
            est.value = 1.0;
            est.log_value = 0.0;
            est.error_bound = 0.0;
            est.push("kronecker_certified", 1.0);
        }
        Ok(est)
    }

    /// Root-configuration class of the non-cyclotomic part.
    pub fn classify(&self) -> Result<AlgebraicClass> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::InvalidArgument("cannot classify the zero polynomial".into()))?;
        if !lead.abs().is_one() {
            return Err(Error::NotMonic(format!("leading coefficient is {lead}")));
        }
        let split = strip_cyclotomic(self);
        let mut out = AlgebraicClass {
            tag: ClassTag::Other,
            dominant_root: None,
            irreducibility_certified: false,
            cyclotomic_factors: split.factors.clone(),
            diagnostics: Vec::new(),
        };
        let rest = &split.rest;
        if rest.degree() == Some(0) {
            if rest.coeffs[0].abs().is_one() {
                out.tag = ClassTag::Kronecker;
            } else {
                out.diagnostics.push(format!("constant factor {} is not a unit", rest.coeffs[0]));
            }
            return Ok(out);
        }
        let rs = rest.find_roots()?;
        if !rs.converged {
            out.diagnostics.push("root finder did not converge".into());
            return Ok(out);
        }
        let (mut outside, mut on) = (Vec::new(), 0usize);
        for r in &rs.roots {
            let dist = r.value.norm() - 1.0;
            if dist.abs() < CIRCLE_TOLERANCE {
                on += 1;
            } else if dist.abs() < AMBIGUITY_BAND {
                out.diagnostics.push(format!(
                    "root {:.12}{:+.12}i lies {:.1e} from the unit circle",
                    r.value.re, r.value.im, dist
                ));
                return Ok(out);
            } else if dist > 0.0 {
                outside.push(r);
            }
        }
        if outside.len() != 1 {
            out.diagnostics.push(format!("{} roots outside the unit circle", outside.len()));
            return Ok(out);
        }
        let dom = outside[0];
        if dom.value.im.abs() > dom.error_bound.max(1e-10) || dom.value.re <= 0.0 {
            out.diagnostics.push("the root outside the unit circle is not a positive real".into());
            return Ok(out);
        }
        out.dominant_root = Some(dom.value.re);
        out.tag = if on == 0 { ClassTag::Pv } else { ClassTag::Salem };
        Ok(out)
    }

    /// Classifies the measure rather than the polynomial: when the only
    /// root outside the circle is a negative real, `p(-u)` is classified
    /// instead, so a Salem or PV measure is recognized whatever the sign
    /// convention of the variable.
    pub fn classify_measure(&self) -> Result<AlgebraicClass> {
        let direct = self.classify()?;
        if direct.tag != ClassTag::Other {
            return Ok(direct);
        }
        let mut flipped = self.reflect().classify()?;
        if matches!(flipped.tag, ClassTag::Pv | ClassTag::Salem) {
            flipped.diagnostics.push("classified p(-u)".into());
            return Ok(flipped);
        }
        Ok(direct)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_laurent().to_string().replace("u1", "u");
        f.write_str(&s)
    }
}

impl TryFrom<&LaurentPoly> for UniPoly {
    type Error = Error;

    fn try_from(f: &LaurentPoly) -> Result<Self> {
        Self::from_laurent(f)
    }
}

pub(crate) fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap().abs().ln()
    } else {
        let shift = bits - 900;
        let top: BigInt = x.abs() >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassTag {
    #[serde(rename = "PV")]
    Pv,
    Salem,
    Kronecker,
    Other,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::Pv => "PV",
            ClassTag::Salem => "Salem",
            ClassTag::Kronecker => "Kronecker",
            ClassTag::Other => "other",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraicClass {
    pub tag: ClassTag,
    pub dominant_root: Option<f64>,
    /// Irreducibility of the remaining factor is never checked.
    pub irreducibility_certified: bool,
    pub cyclotomic_factors: Vec<(u64, u32)>,
    pub diagnostics: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse;

    fn lehmer() -> UniPoly {
        UniPoly::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn reflected_salem_polynomial() {
        let p = lehmer().reflect();
        assert_eq!(p.classify().unwrap().tag, ClassTag::Other);
        let c = p.classify_measure().unwrap();
        assert_eq!(c.tag, ClassTag::Salem);
        assert!((c.dominant_root.unwrap() - 1.176_280_818_259_917).abs() < 1e-12);
        assert_eq!(p.reflect(), lehmer());
    }

    #[test]
    fn from_laurent_normalizes() {
        assert_eq!(
            UniPoly::from_laurent(&parse("u1^-1-1").unwrap()).unwrap(),
            UniPoly::from_i64(&[-1, 1])
        );
        assert!(UniPoly::from_laurent(&parse("0").unwrap()).unwrap().is_zero());
        let l = parse("1+u-u^3-u^4-u^5-u^6-u^7+u^9+u^10".replace('u', "u1").as_str()).unwrap();
        assert_eq!(UniPoly::from_laurent(&l).unwrap(), lehmer());
        assert!(UniPoly::from_laurent(&parse("u1*u2").unwrap()).is_err());
    }

    #[test]
    fn jensen_examples() {
        let m = lehmer().mahler_jensen().unwrap();
        assert!((m.value - 1.176_280_818_259_917).abs() < 1e-12, "{m:?}");
        assert!(m.error_bound < 1e-9);
        assert_eq!(UniPoly::from_i64(&[-2, 1]).mahler_jensen().unwrap().value, 2.0);
        let twist = UniPoly::from_i64(&[1, -3, 1]).mahler_jensen().unwrap();
        assert!((twist.value - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(UniPoly::zero().mahler_jensen().unwrap().value, 0.0);
    }

    #[test]
    fn kronecker_certifies_exactly_one() {
        let p = &cyclotomic(7) * &(&cyclotomic(1) * &cyclotomic(1));
        let m = p.mahler_jensen().unwrap();
        assert_eq!((m.value, m.error_bound), (1.0, 0.0));
    }

    #[test]
    fn reciprocity() {
        assert!(lehmer().is_reciprocal());
        assert!(!UniPoly::from_i64(&[-1, -1, 0, 1]).is_reciprocal());
        assert!(UniPoly::from_i64(&[5]).is_reciprocal());
        assert!(UniPoly::from_i64(&[-1, 0, 1]).is_reciprocal());
    }

    #[test]
    fn kronecker_examples() {
        assert!(UniPoly::from_i64(&[1, 1, 1]).kronecker_test());
        assert!((&UniPoly::from_i64(&[-1, 1]) * &UniPoly::from_i64(&[1, 0, 1])).kronecker_test());
        assert!(!lehmer().kronecker_test());
        assert!(!UniPoly::from_i64(&[2, 0, 2]).kronecker_test());
    }

    #[test]
    fn classify_examples() {
        let c = UniPoly::from_i64(&[-1, -1, 0, 1]).classify().unwrap();
        assert_eq!(c.tag, ClassTag::Pv);
        assert!((c.dominant_root.unwrap() - 1.324_717_957_244_746).abs() < 1e-12);
        let c = lehmer().classify().unwrap();
        assert_eq!(c.tag, ClassTag::Salem);
        assert!((c.dominant_root.unwrap() - 1.176_280_818_259_917).abs() < 1e-12);
        assert!(!c.irreducibility_certified);
        assert_eq!(UniPoly::from_i64(&[-2, 0, 1]).classify().unwrap().tag, ClassTag::Other);
        assert!(matches!(UniPoly::from_i64(&[1, 2]).classify(), Err(Error::NotMonic(_))));
        let k = (&cyclotomic(5) * &cyclotomic(9)).classify().unwrap();
        assert_eq!(k.tag, ClassTag::Kronecker);
    }

    #[test]
    fn negative_dominant_root_is_other() {
        // u^3 - u + 1 has its real root near -1.3247
        let c = UniPoly::from_i64(&[1, -1, 0, 1]).classify().unwrap();
        assert_eq!(c.tag, ClassTag::Other);
    }

    #[test]
    fn division() {
        let a = UniPoly::from_i64(&[-1, 0, 0, 1]);
        assert_eq!(a.div_exact(&UniPoly::from_i64(&[-1, 1])), Some(UniPoly::from_i64(&[1, 1, 1])));
        assert_eq!(a.div_exact(&UniPoly::from_i64(&[1, 1])), None);
        assert_eq!(UniPoly::from_i64(&[2, 4]).div_exact(&UniPoly::from_i64(&[1, 2])), Some(UniPoly::from_i64(&[2])));
        assert_eq!(UniPoly::from_i64(&[1, 1]).div_exact(&UniPoly::from_i64(&[1, 2])), None);
    }

    #[test]
    fn big_ln_handles_huge_values() {
        let x = BigInt::from(3).pow(2000);
        assert!((big_ln(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
