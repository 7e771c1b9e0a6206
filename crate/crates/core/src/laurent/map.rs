use num_bigint::BigInt;

use super::{ExponentVector, LaurentPoly};
use crate::error::{Error, Result};

/// Image `sign * u^exponents` of one source variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialImage {
    pub sign: i8,
    pub exponents: ExponentVector,
}

/// A ring homomorphism sending each source variable to a signed monomial
/// in the target variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    target_num_vars: usize,
    images: Vec<MonomialImage>,
}

impl MonomialMap {
    pub fn new(target_num_vars: usize, images: Vec<MonomialImage>) -> Result<Self> {
        for img in &images {
            if img.sign != 1 && img.sign != -1 {
                return Err(Error::InvalidArgument(format!(
                    "monomial image sign must be +1 or -1, got {}",
                    img.sign
                )));
            }
            if img.exponents.len() != target_num_vars {
                return Err(Error::DimensionMismatch {
                    expected: target_num_vars,
                    found: img.exponents.len(),
                });
            }
        }
        Ok(MonomialMap {
            target_num_vars,
            images,
        })
    }

    /// Builds a map from `(sign, exponents)` pairs.
    pub fn from_images(target_num_vars: usize, images: Vec<(i8, Vec<i64>)>) -> Result<Self> {
        Self::new(
            target_num_vars,
            images
                .into_iter()
                .map(|(sign, e)| MonomialImage {
                    sign,
                    exponents: e.into(),
                })
                .collect(),
        )
    }

    pub fn identity(num_vars: usize) -> Self {
        MonomialMap {
            target_num_vars: num_vars,
            images: (0..num_vars)
                .map(|i| MonomialImage {
                    sign: 1,
                    exponents: ExponentVector::unit(num_vars, i),
                })
                .collect(),
        }
    }

    /// `u_i -> u^{r_i}` into a single variable.
    pub fn specialization(r: &[i64]) -> Self {
        MonomialMap {
            target_num_vars: 1,
            images: r
                .iter()
                .map(|&k| MonomialImage {
                    sign: 1,
                    exponents: vec![k].into(),
                })
                .collect(),
        }
    }

    pub fn source_num_vars(&self) -> usize {
        self.images.len()
    }

    pub fn target_num_vars(&self) -> usize {
        self.target_num_vars
    }

    pub fn images(&self) -> &[MonomialImage] {
        &self.images
    }

    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if f.num_vars() != self.images.len() {
            return Err(Error::DimensionMismatch {
                expected: self.images.len(),
                found: f.num_vars(),
            });
        }
        let terms = f.terms().map(|(e, c)| {
            let mut out = vec![0i64; self.target_num_vars];
            let mut negative = false;
            for (&k, img) in e.iter().zip(&self.images) {
                if k == 0 {
                    continue;
                }
                if img.sign < 0 && k.rem_euclid(2) == 1 {
                    negative = !negative;
                }
                for (o, &m) in out.iter_mut().zip(img.exponents.iter()) {
                    *o += k * m;
                }
            }
            (out, if negative { -c } else { c.clone() })
        });
        Ok(LaurentPoly::from_terms(self.target_num_vars, terms))
    }

    /// The map `x -> next(self(x))`.
    pub fn then(&self, next: &MonomialMap) -> Result<MonomialMap> {
        if self.target_num_vars != next.source_num_vars() {
            return Err(Error::DimensionMismatch {
                expected: next.source_num_vars(),
                found: self.target_num_vars,
            });
        }
        let images = self
            .images
            .iter()
            .map(|img| {
                let mono = LaurentPoly::monomial(
                    self.target_num_vars,
                    img.exponents.to_vec(),
                    BigInt::from(img.sign),
                );
                let image = next.apply(&mono)?;
                let (e, c) = image.terms().next().expect("monomial image is nonzero");
                Ok(MonomialImage {
                    sign: if c.sign() == num_bigint::Sign::Minus { -1 } else { 1 },
                    exponents: e.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialMap {
            target_num_vars: next.target_num_vars,
            images,
        })
    }
}
