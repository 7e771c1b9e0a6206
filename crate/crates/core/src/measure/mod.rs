//! Mahler measure of multivariate Laurent polynomials.
//!
//! Engines:
//!
//! * **Jensen** for one variable, through the roots (see [`crate::unipoly`]).
//! * **Boyd–Lawton**: measures of the one-variable specializations
//!   `f(u, u^n, ..., u^{n^{d-1}})` along a schedule of `n`.
//! * **Quadrature**: randomized quasi-Monte Carlo average of `log|f|` over
//!   the torus.
//! * **Fibered**: Jensen in one variable inside a deterministic grid
//!   integral over the others.
//!
//! Error bounds are empirical diagnostics, not certified enclosures.

mod constants;
mod fibered;
mod quadrature;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub use constants::{chi3_series, smyth_chi3, smyth_zeta3, theta0, zeta3, LEHMER};
pub use fibered::{fibered, DEFAULT_BUDGET};
pub use quadrature::{kronecker_generator, quadrature};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, MonomialMap};
use crate::unipoly::{big_ln, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Jensen,
    BoydLawton,
    Quadrature,
    Fibered,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Jensen => "jensen",
            Method::BoydLawton => "boyd-lawton",
            Method::Quadrature => "quadrature",
            Method::Fibered => "fibered",
            Method::ClosedForm => "closed-form",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureEstimate {
    pub value: f64,
    pub log_value: f64,
    pub error_bound: f64,
    pub method: Method,
    /// `(parameter, intermediate value)` pairs in the order produced.
    pub diagnostics: Vec<(String, f64)>,
}

impl MeasureEstimate {
    pub fn zero(method: Method) -> Self {
        MeasureEstimate {
            value: 0.0,
            log_value: f64::NEG_INFINITY,
            error_bound: 0.0,
            method,
            diagnostics: Vec::new(),
        }
    }

    pub fn from_log(log_value: f64, error_bound: f64, method: Method) -> Self {
        MeasureEstimate {
            value: log_value.exp(),
            log_value,
            error_bound,
            method,
            diagnostics: Vec::new(),
        }
    }

    pub fn push(&mut self, parameter: impl Into<String>, value: f64) {
        self.diagnostics.push((parameter.into(), value));
    }

    pub fn diagnostic(&self, parameter: &str) -> Option<f64> {
        self.diagnostics
            .iter()
            .find(|(p, _)| p == parameter)
            .map(|&(_, v)| v)
    }

    /// `|self - other| <= self.error + other.error + slack`.
    pub fn agrees_with(&self, other: &MeasureEstimate, slack: f64) -> bool {
        (self.value - other.value).abs() <= self.error_bound + other.error_bound + slack
    }
}

impl fmt::Display for MeasureEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.10} ± {:.1e} ({})", self.value, self.error_bound, self.method)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Pick by variable count, with a quadrature cross-check.
    #[default]
    Auto,
    Jensen,
    BoydLawton,
    Quadrature,
    Fibered,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "jensen" => Ok(Engine::Jensen),
            "boyd-lawton" | "boyd_lawton" | "bl" => Ok(Engine::BoydLawton),
            "quadrature" | "qmc" => Ok(Engine::Quadrature),
            "fibered" => Ok(Engine::Fibered),
            _ => Err(Error::InvalidArgument(format!(
                "unknown engine `{s}` (expected auto, jensen, boyd-lawton, quadrature or fibered)"
            ))),
        }
    }
}

pub const DEFAULT_SCHEDULE: [u64; 4] = [50, 100, 200, 400];
pub const DEFAULT_SAMPLES: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureConfig {
    pub engine: Engine,
    pub schedule: Vec<u64>,
    pub samples: usize,
    pub seed: u64,
    /// Grid points for the fibered engine.
    pub budget: usize,
    /// Fold a quadrature estimate into the error bound under [`Engine::Auto`].
    pub cross_check: bool,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            engine: Engine::Auto,
            schedule: DEFAULT_SCHEDULE.to_vec(),
            samples: DEFAULT_SAMPLES,
            seed: 0,
            budget: DEFAULT_BUDGET,
            cross_check: true,
        }
    }
}

/// Mahler measure with the default configuration.
pub fn mahler(f: &LaurentPoly) -> Result<MeasureEstimate> {
    mahler_with(f, &MeasureConfig::default())
}

pub fn mahler_with(f: &LaurentPoly, cfg: &MeasureConfig) -> Result<MeasureEstimate> {
    if f.is_zero() {
        let method = match cfg.engine {
            Engine::BoydLawton => Method::BoydLawton,
            Engine::Quadrature => Method::Quadrature,
            Engine::Fibered => Method::Fibered,
            _ => Method::Jensen,
        };
        return Ok(MeasureEstimate::zero(method));
    }
    match cfg.engine {
        Engine::Auto => auto(f, cfg),
        Engine::Jensen => {
            let (g, _) = f.compress();
            if g.num_vars() > 1 {
                return Err(Error::InvalidArgument(format!(
                    "the Jensen engine needs one variable, the polynomial uses {}",
                    g.num_vars()
                )));
            }
            constant_or(&g, |g| UniPoly::from_laurent(g)?.mahler_jensen())
        }
        Engine::BoydLawton => boyd_lawton(f, &cfg.schedule),
        Engine::Quadrature => quadrature(f, cfg.samples, cfg.seed),
        Engine::Fibered => fibered(f, cfg.budget),
    }
}

fn constant_or(
    g: &LaurentPoly,
    rest: impl FnOnce(&LaurentPoly) -> Result<MeasureEstimate>,
) -> Result<MeasureEstimate> {
    if g.num_vars() == 0 {
        let c = g.terms().next().map(|(_, c)| c.abs()).unwrap_or_default();
        return Ok(MeasureEstimate::from_log(big_ln(&c), 0.0, Method::Jensen));
    }
    rest(&g.embed_if_empty())
}

fn auto(f: &LaurentPoly, cfg: &MeasureConfig) -> Result<MeasureEstimate> {
    let (g, _) = f.compress();
    let (g, lifts) = lift_reduce(&g)?;
    let d = g.num_vars();
    let mut est = match d {
        0 | 1 => constant_or(&g, |g| UniPoly::from_laurent(g)?.mahler_jensen())?,
        2 => boyd_lawton(&g, &cfg.schedule)?,
        _ => fibered(&g, cfg.budget)?,
    };
    if lifts > 0 {
        est.push("lift_reductions", lifts as f64);
    }
    if d >= 2 && cfg.cross_check {
        let q = quadrature(&g, cfg.samples, cfg.seed)?;
        let gap = (est.value - q.value).abs();
        est.push("quadrature", q.value);
        est.push("quadrature_error", q.error_bound);
        est.error_bound = est.error_bound.max(gap);
    }
    Ok(est)
}

/// Repeatedly undoes Boyd lifts: when `f = A + u_k B` with `A`, `B` free of
/// `u_k` and `B ≐ involute(A)`, `M(f) = M(A)`. Returns the reduced,
/// compressed polynomial and the number of variables removed this way.
pub fn lift_reduce(f: &LaurentPoly) -> Result<(LaurentPoly, usize)> {
    let mut g = f.compress().0;
    let mut count = 0;
    'outer: loop {
        for k in 0..g.num_vars() {
            if let Some(a) = lift_base(&g, k)? {
                g = a.compress().0;
                count += 1;
                continue 'outer;
            }
        }
        return Ok((g, count));
    }
}

fn lift_base(f: &LaurentPoly, k: usize) -> Result<Option<LaurentPoly>> {
    let f = f.normalize();
    if f.degree_in(k) != 1 {
        return Ok(None);
    }
    let n = f.num_vars();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (e, c) in f.terms() {
        let mut e = e.to_vec();
        let side = if e[k] == 0 { &mut a } else { &mut b };
        e[k] = 0;
        side.push((e, c.clone()));
    }
    let a = LaurentPoly::from_terms(n, a);
    let b = LaurentPoly::from_terms(n, b);
    if a.is_zero() || b.is_zero() {
        return Ok(None);
    }
    Ok(b.eq_up_to_unit(&a.involute())?.then_some(a))
}

/// `r = (1, n, ..., n^{d-1})` with its separation `<r>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationVector {
    pub r: Vec<i64>,
    pub separation: u64,
}

/// Any nonzero integer vector orthogonal to `(1, n, ..., n^{d-1})` has an
/// entry of size at least `n`: reduce `sum m_i n^i = 0` modulo `n`
/// repeatedly. `(0, ..., n, -1, ...)` attains it.
pub fn specialization_vector(d: usize, n: u64) -> Result<SpecializationVector> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "specialization needs d >= 2 and n >= 2, got d = {d}, n = {n}"
        )));
    }
    let mut r = Vec::with_capacity(d);
    let mut p: i64 = 1;
    for i in 0..d {
        r.push(p);
        if i + 1 < d {
            p = p
                .checked_mul(n as i64)
                .ok_or(Error::DegreeOverflow { degree: u64::MAX, limit: MAX_SPECIALIZED_DEGREE })?;
        }
    }
    Ok(SpecializationVector { r, separation: n })
}

/// Largest univariate degree Boyd–Lawton will build.
pub const MAX_SPECIALIZED_DEGREE: u64 = 1_000_000;

pub fn boyd_lawton(f: &LaurentPoly, schedule: &[u64]) -> Result<MeasureEstimate> {
    let d = f.num_vars();
    if d < 2 {
        return Err(Error::InvalidArgument(
            "Boyd-Lawton needs at least two variables".into(),
        ));
    }
    if schedule.len() < 3 {
        return Err(Error::InvalidArgument(
            "the Boyd-Lawton schedule needs at least three entries".into(),
        ));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) || schedule[0] < 2 {
        return Err(Error::InvalidArgument(
            "the Boyd-Lawton schedule must be strictly increasing and start at 2 or more".into(),
        ));
    }
    if f.is_zero() {
        return Ok(MeasureEstimate::zero(Method::BoydLawton));
    }
    let f = f.normalize();
    let widths = f.max_exponents();
    for &n in schedule {
        let mut degree: u128 = 0;
        let mut p: u128 = 1;
        for &w in widths.iter() {
            degree = degree.saturating_add(p.saturating_mul(w as u128));
            p = p.saturating_mul(n as u128);
        }
        if degree > MAX_SPECIALIZED_DEGREE as u128 {
            return Err(Error::DegreeOverflow {
                degree: degree.min(u64::MAX as u128) as u64,
                limit: MAX_SPECIALIZED_DEGREE,
            });
        }
    }
    let iterate = |n: u64| -> Result<MeasureEstimate> {
        let sv = specialization_vector(d, n)?;
        let g = f.substitute(&MonomialMap::specialization(&sv.r))?;
        UniPoly::from_laurent(&g)?.mahler_jensen()
    };
    #[cfg(feature = "parallel")]
    let iterates: Vec<Result<MeasureEstimate>> = {
        use rayon::prelude::*;
        schedule.par_iter().map(|&n| iterate(n)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let iterates: Vec<Result<MeasureEstimate>> = schedule.iter().map(|&n| iterate(n)).collect();
    let iterates = iterates.into_iter().collect::<Result<Vec<_>>>()?;

    let last = iterates.last().unwrap();
    let tail = &iterates[iterates.len() - 3..];
    let hi = tail.iter().map(|e| e.value).fold(f64::MIN, f64::max);
    let lo = tail.iter().map(|e| e.value).fold(f64::MAX, f64::min);
    let mut est = MeasureEstimate::from_log(last.log_value, hi - lo + last.error_bound, Method::BoydLawton);
    if last.value == 0.0 {
        est = MeasureEstimate::zero(Method::BoydLawton);
    }
    for (n, e) in schedule.iter().zip(&iterates) {
        est.push(format!("n={n}"), e.value);
    }
    Ok(est)
}

impl LaurentPoly {
    // A zero-variable polynomial seen as a one-variable constant.
    fn embed_if_empty(&self) -> LaurentPoly {
        if self.num_vars() == 0 {
            let c = self.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero);
            LaurentPoly::constant(1, c)
        } else {
            self.clone()
        }
    }
}
