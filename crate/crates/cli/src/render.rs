use std::fmt::Write as _;

use crate::record::{Number, OutputRecord, Payload};
use crate::Format;

pub(crate) fn render(record: &OutputRecord, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(record)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Csv => csv(record),
        Format::Table => Ok(table(record)),
    }
}

fn opt(n: &Option<Number>) -> String {
    n.as_ref().map(Number::cell).unwrap_or_else(|| "-".into())
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Left-aligned columns separated by two spaces.
fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let mut s = String::new();
        for (cell, w) in cells.iter().zip(&width) {
            let _ = write!(s, "{cell:<w$}  ");
        }
        let _ = writeln!(out, "{}", s.trim_end());
    };
    line(header.to_vec(), &mut out);
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn table(record: &OutputRecord) -> String {
    let space = record.space.as_deref().unwrap_or("");
    let mut out = String::new();
    match &record.result {
        Payload::Spectrum(s) => {
            let _ = writeln!(out, "{space}  N_M = {}  sigma = {}", s.n_m, s.sigma.cell());
            let rows: Vec<Vec<String>> = s
                .rows
                .iter()
                .map(|r| {
                    vec![
                        join(&r.k, ","),
                        opt(&r.energy),
                        r.eigenvalue.cell(),
                        r.multiplicity_closed.clone().unwrap_or_else(|| "-".into()),
                        r.multiplicity_weyl.clone(),
                    ]
                })
                .collect();
            let header = ["k", "energy", "eigenvalue", "multiplicity (closed)", "multiplicity (Weyl)"];
            out += &columns(&header, &rows);
        }
        Payload::Splitting(s) => {
            let _ = writeln!(out, "x^2 - xy + y^2 = {}", s.q);
            if s.pairs.is_empty() {
                out += "no solutions\n";
            } else {
                let rows: Vec<Vec<String>> = s
                    .pairs
                    .iter()
                    .map(|p| vec![p.k1.to_string(), p.k2.to_string(), p.dimension.clone()])
                    .collect();
                out += &columns(&["k1", "k2", "dimension"], &rows);
            }
            let _ = writeln!(
                out,
                "{} pairs, {} real modules, total dimension {}",
                s.pairs.len(),
                s.real_modules,
                s.total_dimension
            );
        }
        Payload::Verification(v) => {
            let r = &v.report;
            let _ = writeln!(out, "{}  level {}  seed {}", r.space, join(&r.level, ","), v.seed);
            let _ = writeln!(
                out,
                "generators {}  rank {}  expected {}",
                r.generators,
                r.rank.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
                r.expected_multiplicity.as_deref().unwrap_or("-")
            );
            let rows: Vec<Vec<String>> = r
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        if c.passed { "PASS" } else { "FAIL" }.into(),
                        c.residual.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into()),
                        c.detail.clone(),
                    ]
                })
                .collect();
            out += &columns(&["check", "status", "residual", "detail"], &rows);
            for (i, f) in v.emitted.iter().enumerate() {
                let _ = writeln!(out, "f{i} = {f}");
            }
            let _ = writeln!(out, "result: {}", if v.passed { "PASS" } else { "FAIL" });
        }
        Payload::Diagram(d) => {
            let _ = writeln!(out, "{}", d.target);
            let _ = writeln!(out, "Satake diagram");
            out += &d.satake;
            let _ = writeln!(out, "painted Dynkin diagram");
            out += &d.painted;
            let _ = writeln!(out, "b2 = {}", d.b2);
        }
    }
    out
}

fn csv(record: &OutputRecord) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut put = |row: Vec<String>| w.write_record(&row).map_err(|e| e.to_string());
    match &record.result {
        Payload::Spectrum(s) => {
            put(
                [
                    "k",
                    "energy",
                    "energy_decimal",
                    "eigenvalue",
                    "eigenvalue_decimal",
                    "multiplicity_closed",
                    "multiplicity_weyl",
                ]
                .map(String::from)
                .to_vec(),
            )?;
            for r in &s.rows {
                let (e, ed) = match &r.energy {
                    Some(n) => (n.exact.clone(), n.decimal.clone()),
                    None => (String::new(), String::new()),
                };
                put(vec![
                    join(&r.k, ";"),
                    e,
                    ed,
                    r.eigenvalue.exact.clone(),
                    r.eigenvalue.decimal.clone(),
                    r.multiplicity_closed.clone().unwrap_or_default(),
                    r.multiplicity_weyl.clone(),
                ])?;
            }
        }
        Payload::Splitting(s) => {
            put(["q", "k1", "k2", "dimension"].map(String::from).to_vec())?;
            for p in &s.pairs {
                put(vec![s.q.to_string(), p.k1.to_string(), p.k2.to_string(), p.dimension.clone()])?;
            }
        }
        Payload::Verification(v) => {
            put(["check", "passed", "residual", "detail"].map(String::from).to_vec())?;
            for c in &v.report.checks {
                put(vec![
                    c.name.clone(),
                    c.passed.to_string(),
                    c.residual.map(|x| x.to_string()).unwrap_or_default(),
                    c.detail.clone(),
                ])?;
            }
        }
        Payload::Diagram(d) => {
            put(["target", "family", "rank", "white_nodes", "arrows", "b2"].map(String::from).to_vec())?;
            let arrows: Vec<String> = d.arrows.iter().map(|[i, j]| format!("{i}-{j}")).collect();
            put(vec![
                d.target.clone(),
                d.family.clone(),
                d.rank.to_string(),
                join(&d.white_nodes, ";"),
                arrows.join(";"),
                d.b2.to_string(),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}
