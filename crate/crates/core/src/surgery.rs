//! Surgery on the last component of a link, at the level of Alexander
//! polynomials.
//!
//! For a `d`-component link with Alexander polynomial `Δ` and linking numbers
//! `λ_i = Lk(l_i, l_d)`, `1/q` surgery on `l_d` produces a link whose
//! polynomial is recovered from `Δ(u_1, ..., u_{d-1}, ∏ u_i^{-q λ_i})` by
//! removing a factor of Mahler measure 1. When all `λ_i` vanish the
//! measures grow linearly in `q` and the slope is the measure of a
//! derivative of `Δ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPoly, MonomialMap};
use crate::measure::{mahler_with, MeasureConfig, MeasureEstimate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkPoly {
    delta: LaurentPoly,
    linking: Vec<i64>,
    name: Option<String>,
}

impl LinkPoly {
    /// `linking[i]` is the linking number of component `i + 1` with the last
    /// component.
    pub fn new(delta: LaurentPoly, linking: Vec<i64>) -> Result<Self> {
        let d = delta.num_vars();
        if d < 2 {
            return Err(Error::InvalidArgument(format!(
                "a link polynomial needs at least two variables, got {d}"
            )));
        }
        if linking.len() != d - 1 {
            return Err(Error::DimensionMismatch {
                expected: d - 1,
                found: linking.len(),
            });
        }
        Ok(LinkPoly {
            delta: delta.normalize(),
            linking,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn delta(&self) -> &LaurentPoly {
        &self.delta
    }

    /// Number of components.
    pub fn d(&self) -> usize {
        self.delta.num_vars()
    }

    pub fn linking(&self) -> &[i64] {
        &self.linking
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_zero_linking(&self) -> bool {
        self.linking.iter().all(|&x| x == 0)
    }

    fn last(&self) -> usize {
        self.d() - 1
    }

    /// `u_d - 1`.
    fn last_minus_one(&self) -> LaurentPoly {
        let d = self.d();
        &LaurentPoly::var(d, d - 1) - &LaurentPoly::one(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorresReport {
    pub condition1_holds: bool,
    #[serde(serialize_with = "ser_opt_poly")]
    pub condition2_lhs: Option<LaurentPoly>,
    #[serde(serialize_with = "ser_opt_poly")]
    pub condition2_rhs: Option<LaurentPoly>,
    pub condition2_holds: Option<bool>,
}

fn ser_opt_poly<S: serde::Serializer>(
    p: &Option<LaurentPoly>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// `(u^λ - 1)/(u - 1)` as an exact Laurent polynomial in one variable.
fn geometric(lambda: i64) -> LaurentPoly {
    match lambda {
        0 => LaurentPoly::zero(1),
        l if l > 0 => LaurentPoly::from_terms(1, (0..l).map(|k| (vec![k], BigInt::one()))),
        l => LaurentPoly::from_terms(1, (1..=-l).map(|k| (vec![-k], -BigInt::one()))),
    }
}

/// `u_1^{λ_1} ⋯ u_n^{λ_n} - 1`.
fn monomial_minus_one(lambda: &[i64]) -> LaurentPoly {
    let n = lambda.len();
    &LaurentPoly::monomial(n, lambda.to_vec(), 1) - &LaurentPoly::one(n)
}

/// Checks `Δ ≐ Δ(u^{-1})` and, given the polynomial of the sublink
/// obtained by deleting the last component, the evaluation at `u_d = 1`.
pub fn torres_check(l: &LinkPoly, sublink: Option<&LaurentPoly>) -> Result<TorresReport> {
    let delta = l.delta();
    let condition1_holds = delta.eq_up_to_unit(&delta.involute())?;
    let mut report = TorresReport {
        condition1_holds,
        condition2_lhs: None,
        condition2_rhs: None,
        condition2_holds: None,
    };
    if let Some(sub) = sublink {
        let d = l.d();
        if sub.num_vars() != d - 1 {
            return Err(Error::DimensionMismatch {
                expected: d - 1,
                found: sub.num_vars(),
            });
        }
        let lhs = delta.set_var_one(l.last());
        let factor = if d == 2 {
            geometric(l.linking[0])
        } else {
            monomial_minus_one(&l.linking)
        };
        let rhs = &factor * sub;
        report.condition2_holds = Some(lhs.eq_up_to_unit(&rhs)?);
        report.condition2_lhs = Some(lhs);
        report.condition2_rhs = Some(rhs);
    }
    Ok(report)
}

/// `Δ(u_1, ..., u_{d-1}, ∏ u_i^{-q λ_i})`.
pub fn specialize_q(l: &LinkPoly, q: u64) -> Result<LaurentPoly> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let n = l.d() - 1;
    let q = i64::try_from(q).map_err(|_| Error::InvalidArgument("q is too large".into()))?;
    let mut images: Vec<(i8, Vec<i64>)> = (0..n)
        .map(|i| (1, ExponentVector::unit(n, i).into_inner()))
        .collect();
    let last = l
        .linking
        .iter()
        .map(|&x| {
            x.checked_mul(-q)
                .ok_or_else(|| Error::InvalidArgument("surgery exponent overflows".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    images.push((1, last));
    l.delta.substitute(&MonomialMap::from_images(n, images)?)
}

/// The Alexander polynomial of the surgered link, up to units.
pub fn surgered_polynomial(l: &LinkPoly, q: u64) -> Result<LaurentPoly> {
    if l.is_zero_linking() {
        return Err(Error::ZeroLinking);
    }
    let specialized = specialize_q(l, q)?;
    let divisor = if l.d() == 2 {
        geometric(l.linking[0])
    } else {
        monomial_minus_one(&l.linking)
    };
    specialized.exact_divide(&divisor)?.ok_or_else(|| {
        Error::DivisionFailed(format!(
            "{divisor} does not divide the specialization at q = {q}; \
             the linking numbers do not fit this polynomial"
        ))
    })
}

/// Limit of `Δ_{l(q)} / q` for a link whose last component has zero
/// linking numbers: divide by `u_d - 1`, then set `u_d = 1`; for two
/// components multiply by `u_1 - 1`.
pub fn zero_linking_limit(l: &LinkPoly) -> Result<LaurentPoly> {
    if !l.is_zero_linking() {
        return Err(Error::NonzeroLinking);
    }
    let h = l
        .delta
        .exact_divide(&l.last_minus_one())?
        .ok_or_else(|| {
            Error::DivisionFailed(
                "u_d - 1 does not divide the polynomial; the linking numbers cannot all be zero"
                    .into(),
            )
        })?;
    Ok(close_limit(l, h.set_var_one(l.last())))
}

/// The same limit through `∂Δ/∂u_d` at `u_d = 1`.
pub fn zero_linking_limit_derivative(l: &LinkPoly) -> Result<LaurentPoly> {
    if !l.is_zero_linking() {
        return Err(Error::NonzeroLinking);
    }
    let h = l.delta.partial_derivative(l.last()).set_var_one(l.last());
    Ok(close_limit(l, h))
}

fn close_limit(l: &LinkPoly, h: LaurentPoly) -> LaurentPoly {
    if l.d() == 2 {
        let u = &LaurentPoly::var(1, 0) - &LaurentPoly::one(1);
        &h * &u
    } else {
        h
    }
}

/// Whether `(u_d - 1)^2` divides `Δ`.
pub fn has_squared_factor(l: &LinkPoly) -> Result<bool> {
    let t = l.last_minus_one();
    Ok(match l.delta.exact_divide(&t)? {
        Some(h) => h.exact_divide(&t)?.is_some(),
        None => false,
    })
}

/// `u_{d+1} f + f(u^{-1})`, which has the same Mahler measure as `f`.
pub fn boyd_lift(f: &LaurentPoly) -> Result<LaurentPoly> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot lift the zero polynomial".into()));
    }
    let d = f.num_vars();
    let g = f.embed(1);
    Ok(&(&LaurentPoly::var(d + 1, d) * &g) + &f.involute().embed(1))
}

/// An explicit family of surgered polynomials, for links where the
/// polynomial data alone does not determine them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurgeryFamily {
    /// `q · slope + offset`.
    Affine { slope: LaurentPoly, offset: LaurentPoly },
}

impl SurgeryFamily {
    pub fn at(&self, q: u64) -> LaurentPoly {
        match self {
            SurgeryFamily::Affine { slope, offset } => {
                &slope.scale(&BigInt::from(q)) + offset
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            SurgeryFamily::Affine { slope, .. } => slope.num_vars(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub q: u64,
    #[serde(serialize_with = "ser_poly")]
    pub raw_poly: LaurentPoly,
    /// `1` when some linking number is nonzero, `1/q` otherwise.
    #[serde(serialize_with = "ser_ratio")]
    pub scale: BigRational,
    pub measure: MeasureEstimate,
}

impl SweepRow {
    /// `scale · M(raw_poly)`.
    pub fn scaled_value(&self) -> f64 {
        self.measure.value * ratio_f64(&self.scale)
    }

    pub fn scaled_error(&self) -> f64 {
        self.measure.error_bound * ratio_f64(&self.scale)
    }
}

fn ratio_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn ser_poly<S: serde::Serializer>(p: &LaurentPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Measure of the zero-linking limit, when that branch applies.
    pub limit_target: Option<MeasureEstimate>,
    pub warnings: Vec<String>,
}

/// Measures for `q = 1..=q_max`.
///
/// With a nonzero linking number each row holds the measure of the
/// specialization. With all linking numbers zero the limit target is
/// always computed, and rows scaled by `1/q` are produced from `family`
/// when one is given.
pub fn sweep(
    l: &LinkPoly,
    q_max: u64,
    family: Option<&SurgeryFamily>,
    cfg: &MeasureConfig,
) -> Result<Sweep> {
    if q_max == 0 {
        return Err(Error::InvalidArgument("q_max must be at least 1".into()));
    }
    let mut out = Sweep {
        rows: Vec::new(),
        limit_target: None,
        warnings: Vec::new(),
    };
    let row = |q: u64| -> Result<SweepRow> {
        if l.is_zero_linking() {
            let raw = family.expect("checked below").at(q);
            Ok(SweepRow {
                q,
                measure: mahler_with(&raw, cfg)?,
                raw_poly: raw,
                scale: BigRational::new(BigInt::one(), BigInt::from(q)),
            })
        } else {
            let raw = specialize_q(l, q)?;
            Ok(SweepRow {
                q,
                measure: mahler_with(&raw, cfg)?,
                raw_poly: raw,
                scale: BigRational::one(),
            })
        }
    };
    if l.is_zero_linking() {
        out.limit_target = Some(mahler_with(&zero_linking_limit(l)?, cfg)?);
        match family {
            None => {
                out.warnings.push(
                    "all linking numbers are zero and no explicit family is known; \
                     only the limit target is reported"
                        .into(),
                );
                return Ok(out);
            }
            Some(f) if f.num_vars() != l.d() - 1 => {
                return Err(Error::DimensionMismatch {
                    expected: l.d() - 1,
                    found: f.num_vars(),
                });
            }
            Some(_) => {}
        }
    }
    #[cfg(feature = "parallel")]
    let rows: Vec<Result<SweepRow>> = {
        use rayon::prelude::*;
        (1..=q_max).into_par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Result<SweepRow>> = (1..=q_max).map(row).collect();
    out.rows = rows.into_iter().collect::<Result<_>>()?;
    Ok(out)
}

/// `|scale · c_raw - c_limit|` for every monomial of either polynomial,
/// after normalizing both.
pub fn coefficient_gaps(
    raw: &LaurentPoly,
    scale: &BigRational,
    limit: &LaurentPoly,
) -> Result<BTreeMap<ExponentVector, BigRational>> {
    if raw.num_vars() != limit.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: limit.num_vars(),
            found: raw.num_vars(),
        });
    }
    let raw = raw.normalize();
    let limit = limit.normalize();
    let mut gaps = BTreeMap::new();
    for (e, _) in raw.terms().chain(limit.terms()) {
        let a = scale * BigRational::from_integer(raw.coeff(e));
        let b = BigRational::from_integer(limit.coeff(e));
        gaps.insert(e.clone(), (a - b).abs());
    }
    Ok(gaps)
}
