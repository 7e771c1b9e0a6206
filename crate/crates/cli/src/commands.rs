use std::fmt::Write as _;
use std::io::Read;

use mahler::catalog::{self, CatalogEntry};
use mahler::measure::{smyth_chi3, smyth_zeta3, theta0, zeta3, LEHMER};
use mahler::surgery::{sweep, torres_check};
use mahler::{mahler_with, parse, parse_with_vars, ClassTag, LaurentPoly, LinkPoly, UniPoly};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{CatalogAction, Cli, Command, Format, Input, LinkArgs};
use crate::record::{Outcome, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}\n  {source_line}\n  {caret}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
        source_line: String,
        caret: String,
    },
    #[error(transparent)]
    Core(#[from] mahler::Error),
    #[error("cannot read standard input: {0}")]
    Stdin(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

/// Turns a byte offset into a 1-based line and column.
pub fn locate(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[start..].chars().count() + 1)
}

fn parse_text(text: &str, vars: Option<usize>) -> Result<LaurentPoly, CliError> {
    let parsed = match vars {
        Some(d) => parse_with_vars(text, d),
        None => parse(text),
    };
    parsed.map_err(|e| match e {
        mahler::Error::Syntax { offset, message } => {
            let (line, column) = locate(text, offset);
            let source_line = text.lines().nth(line - 1).unwrap_or("").to_string();
            CliError::Parse {
                line,
                column,
                message,
                source_line,
                caret: format!("{}^", " ".repeat(column - 1)),
            }
        }
        other => other.into(),
    })
}

struct Resolved {
    poly: LaurentPoly,
    entry: Option<&'static CatalogEntry>,
}

fn resolve(input: &Input, vars: Option<usize>) -> Result<Resolved, CliError> {
    if let Some(key) = &input.key {
        let entry = catalog::get(key)?;
        let poly = match vars {
            Some(d) if d != entry.poly.num_vars() => parse_text(&entry.text, Some(d))?,
            _ => entry.poly.clone(),
        };
        return Ok(Resolved { poly, entry: Some(entry) });
    }
    let text = match input.poly.as_deref() {
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(s) => s.to_string(),
        None => return Err(CliError::Usage("give a polynomial, `-` for standard input, or --key".into())),
    };
    Ok(Resolved { poly: parse_text(&text, vars)?, entry: None })
}

fn resolve_link(input: &Input, link: &LinkArgs) -> Result<(LinkPoly, Option<&'static CatalogEntry>), CliError> {
    let vars = link.linking.as_ref().map(|l| l.len() + 1);
    let r = resolve(input, vars)?;
    let link = match (&link.linking, r.entry.and_then(|e| e.link.as_ref())) {
        (Some(lk), _) => LinkPoly::new(r.poly, lk.clone())?,
        (None, Some(l)) => l.clone(),
        (None, None) => {
            return Err(CliError::Usage(
                "linking numbers are needed: pass --linking or a catalog key of a link".into(),
            ))
        }
    };
    Ok((link, r.entry))
}

fn canonical(f: &LaurentPoly) -> String {
    f.normalize().to_string()
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<Outcome, CliError> {
    let tabular = matches!(
        cli.command,
        Command::Sweep { .. } | Command::Catalog { action: CatalogAction::List }
    );
    if cli.format == Format::Csv && !tabular {
        return Err(CliError::Usage("CSV output is only available for `sweep` and `catalog list`".into()));
    }
    match &cli.command {
        Command::Measure { input, engine, expect, tol } => {
            let r = resolve(input, None)?;
            let est = mahler_with(&r.poly, &engine.config())?;
            let reference = r.entry.and_then(|e| e.reference);
            let mut text = format!("{est}\n");
            if let Some(rf) = reference {
                let _ = writeln!(text, "reference {} (tolerance {:e})", rf.value, rf.tolerance);
            }
            let mut results = json!({ "measure": est, "reference": reference });
            let mut status = Status::Ok;
            if let Some(want) = expect {
                let pass = (est.value - want).abs() <= *tol;
                results["expect"] = json!({ "value": want, "tol": tol, "pass": pass });
                let _ = writeln!(text, "{} (expected {want} ± {tol:e})", if pass { "PASS" } else { "FAIL" });
                if !pass {
                    status = Status::Fail;
                }
            }
            let mut out = Outcome::new(argv, vec![canonical(&r.poly)], results, text);
            out.record.status = status;
            Ok(out)
        }
        Command::Sweep { input, link, q_max, engine } => {
            let (l, entry) = resolve_link(input, link)?;
            let family = entry.and_then(|e| e.family.as_ref());
            let table = entry.map(|e| e.sweep_table.as_slice()).unwrap_or(&[]);
            let s = sweep(&l, *q_max, family, &engine.config())?;
            let reference = |q: u64| table.iter().find(|t| t.0 == q).map(|t| t.1);

            let rows: Vec<Value> = s
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "q": r.q,
                        "measure": r.scaled_value(),
                        "error": r.scaled_error(),
                        "scale": r.scale.to_string(),
                        "method": r.measure.method,
                        "raw_measure": r.measure.value,
                        "raw_poly": canonical(&r.raw_poly),
                        "reference": reference(r.q),
                    })
                })
                .collect();

            let mut text = String::new();
            if let Some(t) = &s.limit_target {
                let _ = writeln!(text, "limit target {t}");
            }
            if !s.rows.is_empty() {
                let _ = writeln!(text, "{:>5}  {:>14}  {:>9}  {:>7}  {:<12}  {}", "q", "measure", "error", "scale", "method", "reference");
                for r in &s.rows {
                    let _ = writeln!(
                        text,
                        "{:>5}  {:>14.10}  {:>9.1e}  {:>7}  {:<12}  {}",
                        r.q,
                        r.scaled_value(),
                        r.scaled_error(),
                        r.scale.to_string(),
                        r.measure.method.to_string(),
                        reference(r.q).map(|v| v.to_string()).unwrap_or_default()
                    );
                }
            }
            for w in &s.warnings {
                let _ = writeln!(text, "warning: {w}");
            }

            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["q", "measure", "error", "scale", "method"]).map_err(csv_err)?;
            for r in &s.rows {
                w.write_record([
                    r.q.to_string(),
                    r.scaled_value().to_string(),
                    r.scaled_error().to_string(),
                    r.scale.to_string(),
                    r.measure.method.to_string(),
                ])
                .map_err(csv_err)?;
            }
            let csv_text = String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?)
                .expect("csv output is UTF-8");

            let results = json!({
                "linking": l.linking(),
                "limit_target": s.limit_target,
                "rows": rows,
            });
            let mut out = Outcome::new(argv, vec![canonical(l.delta())], results, text);
            out.csv = Some(csv_text);
            if !s.warnings.is_empty() {
                out.record.status = Status::Warning;
                out.record.messages = s.warnings;
            }
            Ok(out)
        }
        Command::Classify { input, up_to_sign } => {
            let r = resolve(input, None)?;
            let (g, _) = r.poly.compress();
            if g.num_vars() > 1 {
                return Err(CliError::Usage(format!(
                    "classification needs a one-variable polynomial, this one uses {}",
                    g.num_vars()
                )));
            }
            let g = if g.num_vars() == 0 { g.embed(1) } else { g };
            let p = UniPoly::from_laurent(&g)?;
            let class = if *up_to_sign { p.classify_measure()? } else { p.classify()? };
            let measure = p.mahler_jensen()?;
            let mut text = class.tag.to_string();
            if let Some(root) = class.dominant_root {
                let _ = write!(text, ", dominant root {root:.12}");
            }
            if !class.cyclotomic_factors.is_empty() {
                let factors: Vec<String> = class
                    .cyclotomic_factors
                    .iter()
                    .map(|&(m, e)| if e == 1 { format!("Φ{m}") } else { format!("Φ{m}^{e}") })
                    .collect();
                let _ = write!(text, ", cyclotomic factors {}", factors.join(" "));
            }
            if matches!(class.tag, ClassTag::Pv | ClassTag::Salem) {
                text.push_str(" (irreducibility not certified)");
            }
            let _ = writeln!(text, "\nmeasure {measure}");
            for d in &class.diagnostics {
                let _ = writeln!(text, "note: {d}");
            }
            Ok(Outcome::new(
                argv,
                vec![p.to_string()],
                json!({ "class": class, "measure": measure }),
                text,
            ))
        }
        Command::Torres { input, link, sublink } => {
            let (l, entry) = resolve_link(input, link)?;
            let sub = match sublink {
                Some(s) => Some(parse_text(s, Some(l.d() - 1))?),
                None if link.linking.is_none() => entry.and_then(|e| e.sublink.clone()),
                None => None,
            };
            let report = torres_check(&l, sub.as_ref())?;
            let mut text = format!(
                "condition 1 (reciprocity): {}\n",
                if report.condition1_holds { "holds" } else { "fails" }
            );
            match (&report.condition2_lhs, &report.condition2_rhs, report.condition2_holds) {
                (Some(lhs), Some(rhs), Some(ok)) => {
                    let _ = writeln!(text, "condition 2: {}", if ok { "holds" } else { "fails" });
                    let _ = writeln!(text, "  at u{} = 1: {lhs}", l.d());
                    let _ = writeln!(text, "  expected:  {rhs}");
                }
                _ => text.push_str("condition 2: not checked (no sublink polynomial)\n"),
            }
            let mut inputs = vec![canonical(l.delta())];
            if let Some(s) = &sub {
                inputs.push(canonical(s));
            }
            let failed = !report.condition1_holds || report.condition2_holds == Some(false);
            let mut out = Outcome::new(argv, inputs, json!(report), text);
            if failed {
                out.record.status = Status::Fail;
            }
            Ok(out)
        }
        Command::Constants => {
            let values = [
                ("smyth_chi3", smyth_chi3()),
                ("smyth_zeta3", smyth_zeta3()),
                ("theta0", theta0()),
                ("lehmer", LEHMER),
                ("zeta3", zeta3()),
            ];
            let text = values.iter().fold(String::new(), |mut t, (k, v)| {
                let _ = writeln!(t, "{k:<12} {v:.15}");
                t
            });
            let results: serde_json::Map<String, Value> =
                values.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            Ok(Outcome::new(argv, Vec::new(), Value::Object(results), text))
        }
        Command::Catalog { action: CatalogAction::List } => {
            let entries = catalog::list();
            let mut text = String::new();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "vars", "linking", "reference", "polynomial"]).map_err(csv_err)?;
            let mut rows = Vec::new();
            for e in entries {
                let linking = e
                    .link
                    .as_ref()
                    .map(|l| l.linking().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    .unwrap_or_default();
                let reference = e.reference.map(|r| r.value.to_string()).unwrap_or_default();
                let _ = writeln!(text, "{:<18} {:>2}  {:<10} {:<20} {}", e.key, e.poly.num_vars(), linking, reference, e.text);
                w.write_record([
                    e.key.to_string(),
                    e.poly.num_vars().to_string(),
                    linking.clone(),
                    reference,
                    e.text.clone(),
                ])
                .map_err(csv_err)?;
                rows.push(json!({
                    "key": e.key,
                    "vars": e.poly.num_vars(),
                    "linking": e.link.as_ref().map(|l| l.linking().to_vec()),
                    "reference": e.reference,
                    "polynomial": e.text,
                }));
            }
            let mut out = Outcome::new(argv, Vec::new(), Value::Array(rows), text);
            out.csv = Some(String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?).expect("csv output is UTF-8"));
            Ok(out)
        }
        Command::Catalog { action: CatalogAction::Show { key } } => {
            let e = catalog::get(key)?;
            let family = e.family.as_ref().map(|f| match f {
                mahler::SurgeryFamily::Affine { slope, offset } => {
                    json!({ "slope": slope.to_string(), "offset": offset.to_string() })
                }
            });
            let results = json!({
                "key": e.key,
                "aliases": e.aliases,
                "source": e.source,
                "text": e.text,
                "normalized": canonical(&e.poly),
                "vars": e.poly.num_vars(),
                "linking": e.link.as_ref().map(|l| l.linking().to_vec()),
                "sublink": e.sublink.as_ref().map(|s| s.to_string()),
                "reference": e.reference,
                "limit_reference": e.limit_reference,
                "family": family,
                "sweep_table": e.sweep_table,
                "schematic": e.schematic,
                "inferred": e.inferred,
            });
            let mut text = format!("{}\n  {}\n  {}\n", e.key, e.source, e.summary());
            let _ = writeln!(text, "  normalized: {}", canonical(&e.poly));
            if !e.aliases.is_empty() {
                let _ = writeln!(text, "  aliases: {}", e.aliases.join(", "));
            }
            if let Some(s) = &e.sublink {
                let _ = writeln!(text, "  sublink: {s}");
            }
            if let Some(r) = e.reference {
                let _ = writeln!(text, "  measure: {} (tolerance {:e})", r.value, r.tolerance);
            }
            if let Some(r) = e.limit_reference {
                let _ = writeln!(text, "  limit measure: {} (tolerance {:e})", r.value, r.tolerance);
            }
            if let Some(mahler::SurgeryFamily::Affine { slope, offset }) = &e.family {
                let _ = writeln!(text, "  family: q*({slope}) + ({offset})");
            }
            if let Some(grid) = e.schematic {
                text.push_str("  coefficients:\n");
                for row in grid {
                    let _ = writeln!(text, "    {row}");
                }
            }
            for (q, v) in &e.sweep_table {
                let _ = writeln!(text, "  q={q:<3} {v}");
            }
            for n in &e.inferred {
                let _ = writeln!(text, "  inferred: {n}");
            }
            Ok(Outcome::new(argv, vec![canonical(&e.poly)], results, text))
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Usage(format!("CSV output failed: {e}"))
}
