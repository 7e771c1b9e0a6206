//! Named polynomials: Alexander polynomials of small links and a few
//! polynomials with closed-form or record-small measures.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{parse_with_vars, LaurentPoly};
use crate::measure::{smyth_chi3, smyth_zeta3, theta0, LEHMER};
use crate::surgery::{LinkPoly, SurgeryFamily};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Reference {
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub aliases: &'static [&'static str],
    pub source: &'static str,
    /// The polynomial as it is usually written.
    pub text: String,
    pub poly: LaurentPoly,
    pub link: Option<LinkPoly>,
    /// Polynomial of the link with the last component deleted.
    pub sublink: Option<LaurentPoly>,
    pub reference: Option<Reference>,
    /// Measure of the zero-linking limit polynomial.
    pub limit_reference: Option<Reference>,
    pub family: Option<SurgeryFamily>,
    /// `(q, value)` for published sweeps, values truncated as printed.
    pub sweep_table: Vec<(u64, f64)>,
    /// Coefficient grid, top row = highest power of `u2`, columns by
    /// increasing power of `u1`.
    pub schematic: Option<&'static [&'static str]>,
    /// Metadata that was reconstructed rather than read off a source.
    pub inferred: Vec<&'static str>,
}

impl CatalogEntry {
    pub fn summary(&self) -> String {
        match &self.link {
            Some(l) => format!(
                "{}-component link, linking numbers {:?}: {}",
                l.d(),
                l.linking(),
                self.text
            ),
            None => format!("{}-variable polynomial: {}", self.poly.num_vars(), self.text),
        }
    }
}

fn poly(text: &str, d: usize) -> LaurentPoly {
    parse_with_vars(text, d).unwrap_or_else(|e| panic!("catalog polynomial `{text}`: {e}"))
}

struct Draft {
    key: &'static str,
    aliases: &'static [&'static str],
    source: &'static str,
    text: &'static str,
    d: usize,
    linking: Option<Vec<i64>>,
    sublink: Option<&'static str>,
    reference: Option<Reference>,
}

impl Draft {
    fn build(self) -> CatalogEntry {
        let p = poly(self.text, self.d);
        let link = self.linking.map(|lk| {
            LinkPoly::new(p.clone(), lk)
                .expect("catalog link metadata")
                .with_name(self.key)
        });
        CatalogEntry {
            key: self.key,
            aliases: self.aliases,
            source: self.source,
            text: self.text.to_string(),
            sublink: self.sublink.map(|s| poly(s, self.d - 1)),
            poly: p,
            link,
            reference: self.reference,
            limit_reference: None,
            family: None,
            sweep_table: Vec::new(),
            schematic: None,
            inferred: Vec::new(),
        }
    }
}

fn reference(value: f64, tolerance: f64) -> Option<Reference> {
    Some(Reference { value, tolerance })
}

fn pretzel_text() -> String {
    // f + v f̄ with v = -u1 u2 u3 u4 u5
    let f = "u1-u1*u3-u1*u4-u2*u3+u3*u4+u1*u2*u3";
    let fbar = "u1^-1-u1^-1*u3^-1-u1^-1*u4^-1-u2^-1*u3^-1+u3^-1*u4^-1+u1^-1*u2^-1*u3^-1";
    format!("({f}) - u1*u2*u3*u4*u5*({fbar})")
}

fn build() -> Vec<CatalogEntry> {
    let mut out = Vec::new();

    out.push(
        Draft {
            key: "lehmer",
            aliases: &["L"],
            source: "Lehmer's polynomial, the Alexander polynomial of the (-2,3,7) pretzel knot",
            text: "1+u1-u1^3-u1^4-u1^5-u1^6-u1^7+u1^9+u1^10",
            d: 1,
            linking: None,
            sublink: None,
            reference: reference(LEHMER, 1e-4),
        }
        .build(),
    );

    let mut e = Draft {
        key: "whitehead",
        aliases: &["5_1^2", "5^2_1"],
        source: "Whitehead link; 1/q surgery gives the twist knots",
        text: "(u1-1)*(u2-1)",
        d: 2,
        linking: Some(vec![0]),
        sublink: Some("1"),
        reference: reference(1.0, 1e-9),
    }
    .build();
    e.family = Some(SurgeryFamily::Affine {
        slope: poly("(u1-1)^2", 1),
        offset: poly("-u1", 1),
    });
    e.limit_reference = reference(1.0, 1e-9);
    out.push(e);

    let mut e = Draft {
        key: "9_3_8",
        aliases: &["9^3_8", "9_8^3"],
        source: "three-component link 9^3_8 with zero linking numbers on the last component",
        text: "(u2-1)*(u3-1)*(u1+2*u2-2*u1*u2-u2^2)",
        d: 3,
        linking: Some(vec![0, 0]),
        sublink: Some("1+u1*u2"),
        reference: None,
    }
    .build();
    e.family = Some(SurgeryFamily::Affine {
        slope: poly("(u2-1)*(u1+2*u2-2*u1*u2-u2^2)", 2),
        offset: poly("-(u2+u1*u2^2)", 2),
    });
    e.limit_reference = reference(2.0, 1e-3);
    e.inferred = vec![
        "linking numbers (0, 0): forced by the vanishing of the polynomial at u3 = 1",
        "sublink 1 + u1*u2: the (2,4) torus link, consistent with the Torres conditions",
        "surgery family q*A - (u2 + u1*u2^2): slope from the derivative at u3 = 1, offset from the sublink up to unit and sign",
    ];
    out.push(e);

    let mut e = Draft {
        key: "7_1^2",
        aliases: &["7^2_1"],
        source: "two-component link 7^2_1; q = 11 gives Lehmer's polynomial",
        text: "1-u1+(-1+u1-u1^2)*u2+(-u1+u1^2)*u2^2",
        d: 2,
        linking: Some(vec![-1]),
        sublink: Some("1"),
        reference: reference(1.25543, 2e-3),
    }
    .build();
    e.schematic = Some(&[". -1 +1", "-1 +1 -1", "+1 -1 ."]);
    e.inferred = vec!["linking number -1: magnitude from the Torres conditions, sign chosen so that u2 maps to u^q"];
    out.push(e);

    let mut e = Draft {
        key: "6_2^2",
        aliases: &["6^2_2"],
        source: "two-component link 6^2_2",
        text: "u1+(1-u1+u1^2)*u2+u1*u2^2",
        d: 2,
        linking: Some(vec![3]),
        sublink: Some("1"),
        reference: reference(1.28573, 2e-3),
    }
    .build();
    e.schematic = Some(&[". +1 .", "+1 -1 +1", ". +1 ."]);
    e.inferred = vec!["linking number 3: from the polynomial at u2 = 1, sign not determined"];
    out.push(e);

    let mut e = Draft {
        key: "mossinghoff",
        aliases: &[],
        source: "Mossinghoff's two-variable polynomial found by computer search",
        text: "u1^2*u2*(u2+1)+u1*(u2^4-u2^2+1)+u2^2*(u2+1)",
        d: 2,
        linking: None,
        sublink: None,
        reference: reference(1.30909, 2e-3),
    }
    .build();
    e.schematic = Some(&[". +1 .", "+1 . .", "+1 -1 +1", ". . +1", ". +1 ."]);
    out.push(e);

    let mut e = Draft {
        key: "mossinghoff_sym",
        aliases: &[],
        source: "symmetric polynomial with the same measure as Mossinghoff's; an Alexander polynomial by Levine's theorem",
        text: "u1^-2*u2^-2+u1^-1-u2^-1-1+u1-u2+u1^2*u2^2",
        d: 2,
        linking: Some(vec![1]),
        sublink: None,
        reference: reference(1.30909, 2e-3),
    }
    .build();
    e.schematic = Some(&[". . . . +1", ". . -1 . .", ". +1 -1 +1 .", ". . -1 . .", "+1 . . . ."]);
    e.inferred = vec!["linking number 1: the polynomial is 1 at u1 = u2 = 1, so the linking number is ±1"];
    out.push(e);

    let mut e = Draft {
        key: "6_1^3",
        aliases: &["6^3_1"],
        source: "three-component pretzel link l(2,2,2); same measure as 1 + u1 + u2",
        text: "u1+u2+u3-u1*u2-u1*u3-u2*u3",
        d: 3,
        linking: Some(vec![1, 1]),
        sublink: Some("1"),
        reference: reference(smyth_chi3(), 1e-3),
    }
    .build();
    e.inferred = vec!["linking numbers (1, 1): from the polynomial at u3 = 1"];
    out.push(e);

    let mut e = Draft {
        key: "8_2^4",
        aliases: &["8^4_2"],
        source: "four-component pretzel link l(2,2,2,-2); same measure as 1 + u1 + u2 + u3",
        text: "1-u1-u2+u2*u3+u1*u2*u3*u4^-1*(1-u1^-1-u2^-1+u2^-1*u3^-1)",
        d: 4,
        linking: Some(vec![1, 0, 1]),
        sublink: Some("1-u2"),
        reference: reference(smyth_zeta3(), 1e-3),
    }
    .build();
    e.inferred = vec!["linking numbers (1, 0, 1) and sublink 1 - u2: from the polynomial at u4 = 1"];
    out.push(e);

    let text = pretzel_text();
    let mut e = Draft {
        key: "pretzel_22m2",
        aliases: &["l(2,-2,2,-2,2)"],
        source: "five-component pretzel link l(2,-2,2,-2,2)",
        text: Box::leak(text.into_boxed_str()),
        d: 5,
        linking: Some(vec![1, 0, 0, -1]),
        sublink: Some("(u2-1)*(u3-1)"),
        reference: reference(1.729, 5e-3),
    }
    .build();
    e.inferred = vec!["linking numbers (1, 0, 0, -1) and sublink: from the polynomial at u5 = 1"];
    out.push(e);

    let mut e = Draft {
        key: "encircled_pretzel",
        aliases: &[],
        source: "the (5,2) torus knot with two arcs encircled; surgeries give Salem numbers",
        text: "u1^2-u1^3+u1^5+u2*(1-u1^2+u1^3)",
        d: 2,
        linking: Some(vec![2]),
        sublink: Some("1-u1+u1^2-u1^3+u1^4"),
        reference: reference(theta0(), 1e-4),
    }
    .build();
    e.sweep_table = vec![
        (1, 1.0),
        (2, 1.0),
        (3, 1.17628),
        (4, 1.26123),
        (5, 1.29348),
        (6, 1.30840),
        (7, 1.31591),
        (8, 1.31986),
        (9, 1.32201),
        (10, 1.32319),
        (11, 1.32385),
        (12, 1.32423),
    ];
    e.inferred = vec!["linking number 2: the two encircled strands pass the same way"];
    out.push(e);

    out.push(
        Draft {
            key: "smyth_2var",
            aliases: &["1+u1+u2"],
            source: "Smyth's closed form exp(3√3/(4π) L(2, χ))",
            text: "1+u1+u2",
            d: 2,
            linking: None,
            sublink: None,
            reference: reference(smyth_chi3(), 1e-4),
        }
        .build(),
    );
    out.push(
        Draft {
            key: "smyth_3var",
            aliases: &["1+u1+u2+u3"],
            source: "Smyth's closed form exp(7ζ(3)/(2π²))",
            text: "1+u1+u2+u3",
            d: 3,
            linking: None,
            sublink: None,
            reference: reference(smyth_zeta3(), 1e-4),
        }
        .build(),
    );
    out.push(
        Draft {
            key: "sum_4var",
            aliases: &["1+u1+u2+u3+u4"],
            source: "sum of four variables and 1",
            text: "1+u1+u2+u3+u4",
            d: 4,
            linking: None,
            sublink: None,
            reference: reference(1.723, 5e-3),
        }
        .build(),
    );
    out
}

fn entries() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// All entries in a fixed order.
pub fn list() -> &'static [CatalogEntry] {
    entries()
}

/// Looks up a key or alias; unknown keys come back with the closest match.
pub fn get(key: &str) -> Result<&'static CatalogEntry> {
    let all = entries();
    if let Some(e) = all.iter().find(|e| e.key == key || e.aliases.contains(&key)) {
        return Ok(e);
    }
    let suggestion = all
        .iter()
        .flat_map(|e| std::iter::once(e.key).chain(e.aliases.iter().copied()).map(move |k| (k, e.key)))
        .map(|(k, canon)| (strsim::normalized_damerau_levenshtein(key, k), canon))
        .filter(|(s, _)| *s > 0.3)
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, k)| k.to_string());
    Err(Error::UnknownKey {
        key: key.to_string(),
        suggestion,
    })
}

/// Renders the coefficients of a two-variable polynomial (normalized) as a
/// grid in the layout of [`CatalogEntry::schematic`].
pub fn schematic(f: &LaurentPoly) -> Vec<String> {
    assert_eq!(f.num_vars(), 2, "schematics need two variables");
    let g = f.normalize();
    let hi = g.max_exponents();
    (0..=hi[1])
        .rev()
        .map(|j| {
            (0..=hi[0])
                .map(|i| {
                    let c = g.coeff(&[i, j]);
                    if c == 0.into() {
                        ".".to_string()
                    } else if c > 0.into() {
                        format!("+{c}")
                    } else {
                        c.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let w = get("whitehead").unwrap();
        assert_eq!(w.poly.to_string(), "u1*u2 - u1 - u2 + 1");
        assert_eq!(w.link.as_ref().unwrap().linking(), &[0]);
        assert_eq!(
            w.family.as_ref().unwrap().at(5),
            parse_with_vars("5*u1^2-11*u1+5", 1).unwrap()
        );
        assert_eq!(get("lehmer").unwrap().poly.num_terms(), 9);
        assert_eq!(get("6_1^3").unwrap().poly, poly("u1+u2+u3-u1*u2-u1*u3-u2*u3", 3));
        assert_eq!(get("9^3_8").unwrap().key, "9_3_8");
    }

    #[test]
    fn unknown_keys_suggest() {
        match get("whitehed") {
            Err(Error::UnknownKey { suggestion, .. }) => assert_eq!(suggestion.as_deref(), Some("whitehead")),
            other => panic!("{other:?}"),
        }
        assert!(get("zzzzzzzzzzzz").is_err());
    }

    #[test]
    fn listing_is_complete_and_ordered() {
        let keys: Vec<&str> = list().iter().map(|e| e.key).collect();
        for k in ["7_1^2", "6_2^2", "8_2^4", "9_3_8", "pretzel_22m2", "mossinghoff_sym", "encircled_pretzel"] {
            assert!(keys.contains(&k), "{k}");
        }
        let again: Vec<&str> = list().iter().map(|e| e.key).collect();
        assert_eq!(keys, again);
    }

    #[test]
    fn schematics_match_polynomials() {
        for e in list() {
            if let Some(grid) = e.schematic {
                assert_eq!(schematic(&e.poly), grid, "{}", e.key);
            }
        }
    }

    #[test]
    fn links_satisfy_torres() {
        for e in list() {
            if let Some(l) = &e.link {
                let r = crate::surgery::torres_check(l, e.sublink.as_ref()).unwrap();
                assert!(r.condition1_holds, "{}", e.key);
                assert_ne!(r.condition2_holds, Some(false), "{}", e.key);
            }
        }
    }

    #[test]
    fn every_text_reparses() {
        for e in list() {
            assert_eq!(parse_with_vars(&e.text, e.poly.num_vars()).unwrap(), e.poly);
            assert!(!e.summary().is_empty());
        }
    }
}
