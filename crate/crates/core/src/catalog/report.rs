//! Deterministic JSON and text serialization of results.

use serde::Serialize;

use super::tables::{P8Report, TableReport};

pub const SCHEMA_VERSION: u32 = 1;

/// Every JSON report: schema version, command, echoed input and result.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    pub input: serde_json::Value,
    pub result: T,
}

pub fn to_json<T: Serialize>(kind: &str, input: serde_json::Value, result: &T) -> String {
    let env = Envelope { schema_version: SCHEMA_VERSION, kind, input, result };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s}{}", " ".repeat(widths[c] - s.chars().count())))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn observed(c: &super::tables::ColumnReport) -> String {
    match (&c.error, c.matches.is_empty()) {
        (Some(e), _) => format!("none ({e})"),
        (None, true) => "unmatched".to_string(),
        (None, false) => c.matches.join("="),
    }
}

pub fn table_text(t: &TableReport) -> String {
    let ncols = t.rows.iter().map(|r| r.columns.len()).max().unwrap_or(0);
    let mut header = vec!["row".to_string(), "case".to_string(), "param".to_string()];
    for i in 0..ncols {
        let title = t.rows.iter().find_map(|r| r.columns.get(i)).map(|c| c.title.clone()).unwrap_or_default();
        header.push(format!("{title} expected"));
        header.push(format!("{title} observed"));
    }
    header.push("checks".to_string());
    header.push("result".to_string());
    let mut rows = vec![header];
    for r in &t.rows {
        let mut line = vec![r.row.to_string(), r.label.clone(), r.parameter.clone()];
        for c in &r.columns {
            line.push(c.expected.clone().unwrap_or_else(|| "none".into()));
            line.push(observed(c));
        }
        for _ in r.columns.len()..ncols {
            line.push(String::new());
            line.push(String::new());
        }
        let checks: Vec<String> = r.checks.iter().map(|(n, ok)| format!("{n}:{}", if *ok { "ok" } else { "no" })).collect();
        line.push(checks.join(","));
        line.push(if r.pass { "PASS" } else { "FAIL" }.to_string());
        rows.push(line);
    }
    let mut out = format!("table {}\n", t.table);
    out.push_str(&align(&rows));
    for r in t.rows.iter().filter(|r| !r.pass) {
        for n in &r.notes {
            out.push_str(&format!("note row {} {}: {n}\n", r.row, r.parameter));
        }
    }
    out.push_str(&format!("{} passed, {} failed\n", t.passed, t.failed));
    out
}

pub fn p8_text(p: &P8Report) -> String {
    let fmt = |rows: &[super::spectrum::SpectrumRow]| {
        rows.iter().map(|r| format!("({},{})", r.0, r.1)).collect::<Vec<_>>().join(" ")
    };
    format!(
        "P_8 with the grading group\ninvariants       {}  {}\ndual invariants  {}  {}\ndiagnosis        {}\nresult           {}\n",
        fmt(&p.invariants),
        if p.invariants_match { "matches" } else { "differs" },
        fmt(&p.dual_invariants),
        if p.dual_match { "matches" } else { "differs" },
        p.diagnosis.message,
        if p.pass { "PASS" } else { "FAIL" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alignment() {
        let t = align(&[vec!["a".into(), "bb".into()], vec!["ccc".into(), "d".into()]]);
        assert_eq!(t, "a    bb\nccc  d\n");
        assert_eq!(align(&[]), "");
    }

    #[test]
    fn empty_report_is_valid_json() {
        let s = to_json("tables", serde_json::json!({}), &Vec::<u8>::new());
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["result"], serde_json::json!([]));
    }
}
