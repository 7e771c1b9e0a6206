//! Exact multivariate Laurent polynomials with integer coefficients.
//!
//! A [`LaurentPoly`] is a sparse map from exponent vectors to nonzero
//! [`BigInt`] coefficients. Exponents may be negative. Two polynomials that
//! differ by a unit `±u^e` are identified by [`LaurentPoly::normalize`], which
//! picks the representative whose minimum exponent in every variable is zero
//! and whose lexicographically largest term has a positive coefficient.

mod eval;
mod map;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use eval::Evaluator;
pub use map::{MonomialImage, MonomialMap};
pub use parse::{parse, parse_with_vars};

/// Exponents of a monomial `u1^e1 ... ud^ed`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(exponents: Vec<i64>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(num_vars: usize) -> Self {
        ExponentVector(vec![0; num_vars])
    }

    /// The exponent vector of the single variable `var` (0-based).
    pub fn unit(num_vars: usize, var: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    fn combine(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn negated(&self) -> Self {
        ExponentVector(self.0.iter().map(|e| -e).collect())
    }
}

impl Deref for ExponentVector {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

/// The unit `sign * u^shift` split off by [`LaurentPoly::split_unit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    pub sign: i8,
    pub shift: ExponentVector,
}

/// An element of `Z[u1^±1, ..., ud^±1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    num_vars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(num_vars: usize) -> Self {
        LaurentPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, 1)
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], c)
    }

    pub fn monomial(num_vars: usize, exponents: Vec<i64>, c: impl Into<BigInt>) -> Self {
        Self::from_terms(num_vars, [(exponents, c.into())])
    }

    /// The variable `u_{var+1}`.
    pub fn var(num_vars: usize, var: usize) -> Self {
        assert!(var < num_vars, "variable index {var} out of range");
        Self::from_terms(num_vars, [(ExponentVector::unit(num_vars, var).0, BigInt::one())])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    ///
    /// Panics if an exponent vector does not have length `num_vars`.
    pub fn from_terms<I, E, C>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<ExponentVector>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            let e = e.into();
            assert_eq!(e.len(), num_vars, "exponent vector length mismatch");
            *map.entry(e).or_default() += c.into();
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly {
            num_vars,
            terms: map,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[i64]) -> BigInt {
        self.terms
            .get(&ExponentVector(exponents.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Lexicographically greatest term.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.last_key_value()
    }

    /// `±u^e` for some exponent vector `e`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// The constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.num_vars]))
        } else {
            None
        }
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = LaurentPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(self.num_vars);
        }
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the unit `sign * u^shift`.
    pub fn mul_unit(&self, sign: i8, shift: &ExponentVector) -> Self {
        assert_eq!(shift.len(), self.num_vars);
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.plus(shift), if sign < 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one(self.num_vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The involution `u_i -> u_i^{-1}`.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.negated(), c.clone()))
                .collect(),
        }
    }

    /// Per-variable minimum exponents; zeros for the zero polynomial.
    pub fn min_exponents(&self) -> ExponentVector {
        self.fold_exponents(i64::min)
    }

    /// Per-variable maximum exponents; zeros for the zero polynomial.
    pub fn max_exponents(&self) -> ExponentVector {
        self.fold_exponents(i64::max)
    }

    fn fold_exponents(&self, f: impl Fn(i64, i64) -> i64) -> ExponentVector {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return ExponentVector::zeros(self.num_vars);
        };
        let mut acc = first.0.clone();
        for e in it {
            for (a, &b) in acc.iter_mut().zip(e.iter()) {
                *a = f(*a, b);
            }
        }
        ExponentVector(acc)
    }

    /// Width `max - min` of the exponents of `var`.
    pub fn degree_in(&self, var: usize) -> i64 {
        self.max_exponents()[var] - self.min_exponents()[var]
    }

    /// Splits `self = sign * u^shift * normalized`.
    pub fn split_unit(&self) -> (Unit, LaurentPoly) {
        if self.is_zero() {
            return (
                Unit {
                    sign: 1,
                    shift: ExponentVector::zeros(self.num_vars),
                },
                self.clone(),
            );
        }
        let shift = self.min_exponents();
        let sign: i8 = if self.terms.values().next_back().is_some_and(|c| c.is_negative()) {
            -1
        } else {
            1
        };
        let normalized = self.mul_unit(sign, &shift.negated());
        (Unit { sign, shift }, normalized)
    }

    /// Canonical representative of the class of `self` up to units.
    pub fn normalize(&self) -> Self {
        self.split_unit().1
    }

    pub fn eq_up_to_unit(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(self.normalize() == other.normalize())
    }

    pub fn substitute(&self, map: &MonomialMap) -> Result<Self> {
        map.apply(self)
    }

    /// Formal partial derivative in `var` (0-based).
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.num_vars, "variable index {var} out of range");
        let terms = self.terms.iter().filter_map(|(e, c)| {
            let k = e[var];
            (k != 0).then(|| {
                let mut e = e.0.clone();
                e[var] -= 1;
                (e, c * BigInt::from(k))
            })
        });
        LaurentPoly::from_terms(self.num_vars, terms)
    }

    /// Evaluates `var` (0-based) at 1, returning a polynomial in one fewer
    /// variable.
    pub fn set_var_one(&self, var: usize) -> Self {
        assert!(var < self.num_vars, "variable index {var} out of range");
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e = e.0.clone();
            e.remove(var);
            (e, c.clone())
        });
        LaurentPoly::from_terms(self.num_vars - 1, terms)
    }

    /// Appends `extra` unused variables.
    pub fn embed(&self, extra: usize) -> Self {
        let n = self.num_vars + extra;
        LaurentPoly {
            num_vars: n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.0.clone();
                    e.resize(n, 0);
                    (ExponentVector(e), c.clone())
                })
                .collect(),
        }
    }

    /// Indices of variables that actually occur with a nonzero exponent
    /// after normalization.
    pub fn used_vars(&self) -> Vec<usize> {
        let lo = self.min_exponents();
        let hi = self.max_exponents();
        (0..self.num_vars).filter(|&i| hi[i] > lo[i]).collect()
    }

    /// Normalizes and drops variables that do not occur. Returns the
    /// compressed polynomial and the kept original indices.
    pub fn compress(&self) -> (LaurentPoly, Vec<usize>) {
        let keep = self.used_vars();
        let f = self.normalize();
        let terms = f
            .terms
            .iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect::<Vec<_>>(), c.clone()));
        (LaurentPoly::from_terms(keep.len(), terms), keep)
    }

    /// Exact quotient `self / g` in the Laurent ring, or `None` when `g`
    /// does not divide `self`.
    pub fn exact_divide(&self, g: &Self) -> Result<Option<Self>> {
        self.check_dims(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let (uf, f) = self.split_unit();
        let (ug, g) = g.split_unit();
        // After normalization the quotient is an honest polynomial bounded by
        // the degree box of f minus that of g.
        let fmax = f.max_exponents();
        let gmax = g.max_exponents();
        let bound: Vec<i64> = fmax.iter().zip(gmax.iter()).map(|(a, b)| a - b).collect();
        if bound.iter().any(|&b| b < 0) {
            return Ok(None);
        }
        let (g_lead_e, g_lead_c) = g.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();

        let mut rem = f;
        let mut quot = LaurentPoly::zero(self.num_vars);
        while let Some((e, c)) = rem.leading_term() {
            let qe = e.minus(&g_lead_e);
            if qe.iter().zip(&bound).any(|(&x, &b)| x < 0 || x > b) {
                return Ok(None);
            }
            let (qc, r) = c.div_rem(&g_lead_c);
            if !r.is_zero() {
                return Ok(None);
            }
            for (ge, gc) in &g.terms {
                rem.add_term(ge.plus(&qe), -(gc * &qc));
            }
            quot.add_term(qe, qc);
        }
        let sign = uf.sign * ug.sign;
        Ok(Some(quot.mul_unit(sign, &uf.shift.minus(&ug.shift))))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("dimension mismatch in Laurent addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("dimension mismatch in Laurent subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("dimension mismatch in Laurent multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = monomial_string(e);
            let abs = c.abs();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn monomial_string(e: &ExponentVector) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("u{}", i + 1)
            } else {
                format!("u{}^{}", i + 1, k)
            }
        })
        .collect();
    parts.join("*")
}
