use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lgorb::arith::{fmt_rat, parse_polynomial, parse_rat, Polynomial, Rational};
use lgorb::catalog::{
    align, fold, p8_text, reproduce_p8, reproduce_table1, reproduce_table2, reproduce_table3, spectrum_of, table_text,
    to_json, Catalog, MatchMode, Spectrum, TableParams,
};
use lgorb::dual::{degenerate_structure, dualize_module, involution_check, ModuleTriple};
use lgorb::milnor::{weight_system_of, MilnorRing};
use lgorb::orbifold::{build_module, EulerClass, FrobeniusData, FrobeniusJson, GradedElement, OrbifoldModule};
use lgorb::symmetry::{DiagonalElement, DiscreteTorsion, SignChoice, SymmetryGroup};

#[derive(Parser, Debug)]
#[command(name = "lgorb", version, about = "Orbifolds and mirror duals of quasi-homogeneous singularities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest group order generated before giving up.
    #[arg(long, default_value_t = 10_000, global = true)]
    max_group_order: usize,
    /// Catalog file replacing the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weights, Milnor number, central charge, basis and pairing.
    Analyze(PolyArgs),
    /// Sector table, invariants, spectrum and catalog match.
    Orbifold(ModuleArgs),
    /// Dual module, dual invariants, (a,c) match, Euler class and involution check.
    Dualize(DualArgs),
    /// Reproduces the reference tables.
    Tables(TableArgs),
    /// Invariants of the Milnor ring under projective symmetries.
    Fold(FoldArgs),
    /// Checks the axioms on a module file written by `orbifold --frobenius-out`.
    Axioms(AxiomArgs),
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Polynomial, e.g. "x^3 + x*y^2".
    #[arg(long)]
    poly: String,
    /// Comma-separated variable names; inferred from the polynomial when omitted.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Generator phases, e.g. "[[1/4]]" or "[[1/3,0],[0,1/4]]".
    #[arg(long)]
    gens: String,
    /// Sign bits, one per generator, e.g. "1" or "1,0".
    #[arg(long)]
    sigma: Option<String>,
    /// File holding the torsion angles on generator pairs, e.g. "[[0,1/2],[1/2,0]]".
    #[arg(long)]
    eps: Option<PathBuf>,
    /// Write the reconstructed Frobenius data as JSON (cyclic groups only).
    #[arg(long)]
    frobenius_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DualArgs {
    #[command(flatten)]
    module: ModuleArgs,
    /// Also build and check the degenerate structure on the dual.
    #[arg(long)]
    degenerate: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Which table: 1, 2, 3, p8 or all.
    #[arg(long, default_value = "all")]
    which: String,
    /// Parameter range, e.g. "n=3..8".
    #[arg(long)]
    params: Option<String>,
}

#[derive(Args, Debug)]
struct FoldArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long)]
    gens: String,
}

#[derive(Args, Debug)]
struct AxiomArgs {
    #[arg(long)]
    input: PathBuf,
}

/// A finished command: JSON result, text rendering and whether all checks held.
struct Outcome {
    kind: &'static str,
    input: Value,
    result: Value,
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            let body = match cli.format {
                Format::Json => to_json(o.kind, o.input, &o.result),
                Format::Text => o.text,
            };
            let written = match &cli.out {
                Some(p) => fs::write(p, body).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                Ok(()) if o.ok => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let catalog = match &cli.catalog {
        Some(p) => Catalog::from_json(&read(p)?).map_err(|e| e.to_string())?,
        None => Catalog::builtin(),
    };
    let bound = cli.max_group_order;
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Orbifold(a) => orbifold(a, &catalog, bound),
        Command::Dualize(a) => dualize(a, &catalog, bound),
        Command::Tables(a) => tables(a, &catalog, bound),
        Command::Fold(a) => fold_cmd(a, &catalog),
        Command::Axioms(a) => axioms(a),
    }
}

fn read(p: &Path) -> Result<String, String> {
    fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))
}

/// Parses a list of rational rows such as `[[1/4],[0,1/2]]`; quotes are ignored.
fn parse_matrix(text: &str) -> Result<Vec<Vec<Rational>>, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace() && *c != '"').collect();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("expected [[...]], got {text:?}"))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let body = inner
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("expected rows in brackets, got {text:?}"))?;
    body.split("],[")
        .map(|row| {
            if row.is_empty() {
                return Ok(Vec::new());
            }
            row.split(',').map(|x| parse_rat(x).ok_or_else(|| format!("bad rational {x:?}"))).collect()
        })
        .collect()
}

/// Parses `n=3..8` (or `3..8`, or a single `n=5`).
fn parse_params(text: &str) -> Result<TableParams, String> {
    let t = text.trim();
    let t = t.strip_prefix("n=").unwrap_or(t);
    let (lo, hi) = match t.split_once("..") {
        Some((a, b)) => (a, b),
        None => (t, t),
    };
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("bad parameter range {text:?}"));
    let (n_min, n_max) = (num(lo)?, num(hi)?);
    if n_min < 2 || n_max < n_min {
        return Err(format!("parameter range {text:?} must satisfy 2 <= min <= max"));
    }
    Ok(TableParams { n_min, n_max })
}

/// Distinct identifiers in the polynomial text, sorted.
fn infer_vars(poly: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut cur = String::new();
    for c in poly.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphabetic() || c == '_' || (!cur.is_empty() && c.is_ascii_digit()) {
            cur.push(c);
        } else if !cur.is_empty() {
            if !out.contains(&cur) {
                out.push(cur.clone());
            }
            cur.clear();
        }
    }
    out.sort();
    out
}

fn polynomial(a: &PolyArgs) -> Result<(Polynomial, Vec<String>), String> {
    let vars: Vec<String> = match &a.vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => infer_vars(&a.poly),
    };
    if vars.is_empty() {
        return Err("no variables".into());
    }
    let f = parse_polynomial(&a.poly, &vars).map_err(|e| e.to_string())?;
    Ok((f, vars))
}

fn generators(text: &str, nvars: usize) -> Result<Vec<DiagonalElement>, String> {
    let rows = parse_matrix(text)?;
    if let Some(r) = rows.iter().find(|r| r.len() != nvars) {
        return Err(format!("generator has {} phases for {nvars} variables", r.len()));
    }
    Ok(rows.iter().map(|r| DiagonalElement::from_rationals(r)).collect())
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn module(a: &ModuleArgs, bound: usize) -> Result<(OrbifoldModule, Value), String> {
    let (f, vars) = polynomial(&a.poly)?;
    let gens = generators(&a.gens, vars.len())?;
    let group = SymmetryGroup::generate(vars.len(), &gens, bound).map_err(|e| e.to_string())?;
    if !group.is_symmetry_group_of(&f) {
        return Err("a generator is not a symmetry of the polynomial".into());
    }
    let k = group.generators().len();
    let bits: Vec<u8> = match &a.sigma {
        None => vec![0; k],
        Some(s) => {
            let b = s
                .split(',')
                .map(|x| x.trim().parse::<u8>().ok().filter(|b| *b <= 1).ok_or_else(|| format!("bad sign bit {x:?}")))
                .collect::<Result<Vec<_>, _>>()?;
            if b.len() == 1 && k > 1 {
                vec![b[0]; k]
            } else {
                b
            }
        }
    };
    if bits.len() != k {
        return Err(format!("{} sign bits for {k} generators", bits.len()));
    }
    let sigma = SignChoice::from_generators(&group, &bits).map_err(|e| e.to_string())?;
    let (eps, eps_echo) = match &a.eps {
        None => (DiscreteTorsion::trivial(&group), Value::Null),
        Some(p) => {
            let table = parse_matrix(&read(p)?)?;
            let echo = json!(table.iter().map(|r| rats(r)).collect::<Vec<_>>());
            (DiscreteTorsion::from_generator_pairs(&group, &table).map_err(|e| e.to_string())?, echo)
        }
    };
    let m = build_module(&f, &vars, group, sigma, eps).map_err(|e| e.to_string())?;
    let echo = json!({
        "polynomial": f.to_text(&vars),
        "vars": vars,
        "generators": gens.iter().map(|g| rats(&g.0.iter().map(|p| p.theta().clone()).collect::<Vec<_>>())).collect::<Vec<_>>(),
        "sigma": bits,
        "eps": eps_echo,
    });
    Ok((m, echo))
}

fn analyze(a: &PolyArgs) -> Result<Outcome, String> {
    let (f, vars) = polynomial(a)?;
    let ring = MilnorRing::new(&f, &vars).map_err(|e| e.to_string())?;
    let ws = weight_system_of(&ring);
    let basis = ring.describe_basis();
    let degrees = ring.describe_degrees();
    let pairing: Vec<Vec<String>> = ring.pairing().iter().map(|r| rats(r)).collect();
    let result = json!({
        "weights": rats(ring.weights()),
        "milnor_number": ring.dimension(),
        "milnor_number_formula": fmt_rat(&ws.milnor_number_formula),
        "central_charge": fmt_rat(&ws.central_charge),
        "basis": basis,
        "degrees": degrees,
        "socle": ring.socle().to_text(&vars),
        "hessian_scale": fmt_rat(ring.hessian_scale()),
        "pairing": pairing,
    });
    let mut text = align(&[
        vec!["polynomial".into(), f.to_text(&vars)],
        vec!["weights".into(), rats(ring.weights()).join(" ")],
        vec!["milnor number".into(), ring.dimension().to_string()],
        vec!["central charge".into(), fmt_rat(&ws.central_charge)],
        vec!["socle".into(), ring.socle().to_text(&vars)],
    ]);
    text.push_str("basis\n");
    let mut rows = vec![vec!["monomial".to_string(), "degree".to_string(), "paired with".to_string()]];
    for (i, b) in basis.iter().enumerate() {
        let partners: Vec<String> = ring.pairing()[i]
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != Rational::from_integer(0.into()))
            .map(|(k, v)| format!("{} ({})", basis[k], fmt_rat(v)))
            .collect();
        rows.push(vec![b.clone(), degrees[i].clone(), partners.join(", ")]);
    }
    text.push_str(&align(&rows));
    let input = json!({"polynomial": a.poly, "vars": vars});
    Ok(Outcome { kind: "analyze", input, result, text, ok: true })
}

fn elements_json(m_vars: &[String], elems: &[GradedElement], label: impl Fn(usize) -> String) -> Vec<Value> {
    elems
        .iter()
        .map(|e| {
            json!({
                "sector": e.sector,
                "element": label(e.sector),
                "monomial": e.monomial.to_text(m_vars),
                "q": fmt_rat(&e.q),
                "q_bar": fmt_rat(&e.q_bar),
            })
        })
        .collect()
}

fn elements_text(m_vars: &[String], elems: &[GradedElement], label: impl Fn(usize) -> String) -> String {
    let mut rows = vec![vec!["sector".to_string(), "element".to_string(), "bidegree".to_string()]];
    for e in elems {
        rows.push(vec![
            label(e.sector),
            e.monomial.to_text(m_vars),
            format!("({}, {})", fmt_rat(&e.q), fmt_rat(&e.q_bar)),
        ]);
    }
    align(&rows)
}

fn matches_text(mode: MatchMode, names: &[String]) -> String {
    let shown = if names.is_empty() { "none".to_string() } else { names.join(" = ") };
    format!("catalog match ({}): {shown}\n", mode.label())
}

fn spectrum_json(s: &Spectrum) -> Value {
    json!(s.rows())
}

fn orbifold(a: &ModuleArgs, catalog: &Catalog, bound: usize) -> Result<Outcome, String> {
    let (m, input) = module(a, bound)?;
    let label = |h: usize| m.group.element(h).to_string();
    let shifts = m.sector_shifts();
    let invariants = m.invariants();
    let spectrum = spectrum_of(&invariants);
    let matched = catalog.match_spectrum(&spectrum, MatchMode::Cc);
    let class = m.euler_class(bound);
    let wall = m.wall_character_check();
    let mut frobenius = Value::Null;
    if let Some(p) = &a.frobenius_out {
        let gamma = m.reconstruct_gamma().map_err(|e| e.to_string())?;
        let data = m.frobenius_data(&gamma);
        let body = serde_json::to_string_pretty(&data.to_json()).map_err(|e| e.to_string())?;
        fs::write(p, body + "\n").map_err(|e| format!("cannot write {}: {e}", p.display()))?;
        frobenius = json!({
            "file": p.display().to_string(),
            "projectively_unique": gamma.projectively_unique(),
            "gamma_support": gamma.support(),
        });
    }
    let sectors: Vec<Value> = shifts
        .iter()
        .map(|r| {
            json!({
                "element": label(r.element),
                "nu": rats(&r.nu),
                "d_g": fmt_rat(&r.d_g),
                "s_plus": fmt_rat(&r.s_plus),
                "s_minus": fmt_rat(&r.s_minus),
                "s": fmt_rat(&r.s),
                "s_bar": fmt_rat(&r.s_bar),
                "dim": r.dim,
                "parity": r.parity,
                "chi": m.chi[r.element].to_string(),
            })
        })
        .collect();
    let result = json!({
        "group_order": m.order(),
        "euler_class": class.label(),
        "sectors": sectors,
        "invariants": elements_json(&m.vars, &invariants, label),
        "spectrum": spectrum_json(&spectrum),
        "matches": matched,
        "wall": {"all_hold": wall.all_hold(), "mu_average": fmt_rat(&wall.mu_average), "reflection_group": wall.reflection_group},
        "frobenius": frobenius,
    });
    let mut text = format!("group of order {} ({})\n", m.order(), class.label());
    let mut rows = vec![["element", "d_g", "s+", "s-", "s", "s_bar", "dim", "parity"].map(String::from).to_vec()];
    for r in &shifts {
        rows.push(vec![
            label(r.element),
            fmt_rat(&r.d_g),
            fmt_rat(&r.s_plus),
            fmt_rat(&r.s_minus),
            fmt_rat(&r.s),
            fmt_rat(&r.s_bar),
            r.dim.to_string(),
            r.parity.to_string(),
        ]);
    }
    text.push_str(&align(&rows));
    text.push_str("invariants\n");
    text.push_str(&elements_text(&m.vars, &invariants, label));
    text.push_str(&matches_text(MatchMode::Cc, &matched));
    text.push_str(&format!(
        "wall identities: {}, average {}\n",
        if wall.all_hold() { "hold" } else { "fail" },
        fmt_rat(&wall.mu_average)
    ));
    if let Some(p) = &a.frobenius_out {
        text.push_str(&format!("frobenius data written to {}\n", p.display()));
    }
    Ok(Outcome { kind: "orbifold", input, result, text, ok: true })
}

fn triple_sectors(t: &ModuleTriple) -> Vec<Value> {
    (0..t.order())
        .map(|g| {
            let s = &t.sectors[g];
            json!({
                "element": t.group.element(g).to_string(),
                "source": s.source.to_string(),
                "s": fmt_rat(&s.s),
                "s_bar": fmt_rat(&s.s_bar),
                "dim": s.dim(),
                "parity": s.parity,
            })
        })
        .collect()
}

fn dualize(a: &DualArgs, catalog: &Catalog, bound: usize) -> Result<Outcome, String> {
    let (m, input) = module(&a.module, bound)?;
    let d = dualize_module(&m, bound).map_err(|e| e.to_string())?;
    let t = &d.triple;
    let label = |h: usize| t.group.element(h).to_string();
    let invariants = d.invariants();
    let spectrum = spectrum_of(&invariants);
    let matched = catalog.match_spectrum(&spectrum, MatchMode::Ac);
    let involution = match &d.class {
        EulerClass::GEuler { j } | EulerClass::Euler { j } => involution_check(&m, *j),
        _ => {
            let big = m.eulerization(bound).map_err(|e| e.to_string())?.ok_or("no Eulerization")?;
            let j = big.grading_element().ok_or("no grading element")?;
            involution_check(&big, j)
        }
    }
    .map_err(|e| e.to_string())?;
    let mut degenerate = Value::Null;
    let mut degenerate_text = String::new();
    if a.degenerate {
        let (_, r) = degenerate_structure(&d.ambient).map_err(|e| e.to_string())?;
        degenerate = json!({
            "axioms": r.axioms,
            "eta_invariant": r.eta_invariant,
            "eta_prime_invariant": r.eta_prime_invariant,
            "maximal": r.maximality.maximal(),
            "maximality_counterexample": r.maximality.counterexample,
            "nonzero_products": r.nonzero_products,
        });
        degenerate_text = format!(
            "degenerate structure: axioms {}, {} nonzero products, {}\n",
            if r.axioms.all_passed() { "hold" } else { "fail" },
            r.nonzero_products,
            if r.maximality.maximal() { "maximal" } else { "not maximal" }
        );
    }
    let result = json!({
        "euler_class": d.class.label(),
        "d": fmt_rat(&t.d),
        "j": t.j.to_string(),
        "metric_substituted": t.metric.substituted,
        "unit_invariant": d.unit_is_invariant(),
        "sectors": triple_sectors(t),
        "invariants": elements_json(&t.vars, &invariants, label),
        "spectrum": spectrum_json(&spectrum),
        "matches": matched,
        "involution": involution,
        "degenerate": degenerate,
    });
    let mut text = format!(
        "{} module, dual of central charge {}{}\n",
        d.class.label(),
        fmt_rat(&t.d),
        if t.metric.substituted { ", homogeneous metric substituted" } else { "" }
    );
    let mut rows = vec![["element", "source sector", "s", "s_bar", "dim"].map(String::from).to_vec()];
    for g in 0..t.order() {
        let s = &t.sectors[g];
        rows.push(vec![label(g), s.source.to_string(), fmt_rat(&s.s), fmt_rat(&s.s_bar), s.dim().to_string()]);
    }
    text.push_str(&align(&rows));
    text.push_str("dual invariants\n");
    text.push_str(&elements_text(&t.vars, &invariants, label));
    text.push_str(&matches_text(MatchMode::Ac, &matched));
    text.push_str(&format!("involution: {}\n", if involution { "holds" } else { "fails" }));
    text.push_str(&degenerate_text);
    Ok(Outcome { kind: "dualize", input, result, text, ok: true })
}

fn tables(a: &TableArgs, catalog: &Catalog, bound: usize) -> Result<Outcome, String> {
    let params = match &a.params {
        Some(p) => parse_params(p)?,
        None => TableParams::default(),
    };
    let which: Vec<&str> = match a.which.as_str() {
        "all" => vec!["1", "2", "3", "p8"],
        w @ ("1" | "2" | "3" | "p8") => vec![w],
        w => return Err(format!("unknown table {w:?}; expected 1, 2, 3, p8 or all")),
    };
    let mut results = serde_json::Map::new();
    let mut text = String::new();
    let mut ok = true;
    for w in which {
        let (value, body, pass) = match w {
            "p8" => {
                let r = reproduce_p8(bound)?;
                (serde_json::to_value(&r).map_err(|e| e.to_string())?, p8_text(&r), r.pass)
            }
            _ => {
                let r = match w {
                    "1" => reproduce_table1(catalog, &params, bound),
                    "2" => reproduce_table2(catalog, &params, bound),
                    _ => reproduce_table3(catalog, &params),
                };
                (serde_json::to_value(&r).map_err(|e| e.to_string())?, table_text(&r), r.all_pass())
            }
        };
        if !text.is_empty() {
            text.push('\n');
        }
        text.push_str(&body);
        ok &= pass;
        results.insert(format!("table_{w}"), value);
    }
    let input = json!({"which": a.which, "n_min": params.n_min, "n_max": params.n_max});
    Ok(Outcome { kind: "tables", input, result: Value::Object(results), text, ok })
}

fn fold_cmd(a: &FoldArgs, catalog: &Catalog) -> Result<Outcome, String> {
    let (f, vars) = polynomial(&a.poly)?;
    let gens = generators(&a.gens, vars.len())?;
    let r = fold(&f, &vars, &gens, catalog).map_err(|e| e.to_string())?;
    let factors: Vec<Vec<String>> = r.factors.iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect();
    let result = json!({
        "summands": r.summands,
        "factors": factors,
        "invariant_basis": r.invariant_basis,
        "degrees": rats(&r.degrees),
        "rank": r.rank(),
        "products_checked": r.products_checked,
        "spectrum": spectrum_json(&r.spectrum),
        "matches": r.matches,
    });
    let mut text = align(&[
        vec!["summands".into(), r.summands.join(" ; ")],
        vec!["invariant basis".into(), r.invariant_basis.join(" ")],
        vec!["degrees".into(), rats(&r.degrees).join(" ")],
        vec!["rank".into(), r.rank().to_string()],
    ]);
    text.push_str(&matches_text(MatchMode::Cc, &r.matches));
    let input = json!({
        "polynomial": f.to_text(&vars),
        "vars": vars,
        "generators": parse_matrix(&a.gens)?.iter().map(|r| rats(r)).collect::<Vec<_>>(),
    });
    Ok(Outcome { kind: "fold", input, result, text, ok: true })
}

fn axioms(a: &AxiomArgs) -> Result<Outcome, String> {
    let body = read(&a.input)?;
    let j: FrobeniusJson = serde_json::from_str(&body).map_err(|e| format!("invalid module file: {e}"))?;
    let data = FrobeniusData::from_json(&j)?;
    let report = data.check_axioms();
    let mut rows = vec![["axiom", "checked", "result", "witness"].map(String::from).to_vec()];
    for r in &report.results {
        rows.push(vec![
            r.name.to_string(),
            r.checked.to_string(),
            if r.passed { "PASS" } else { "FAIL" }.to_string(),
            r.witness.clone().unwrap_or_default(),
        ]);
    }
    let text = align(&rows);
    let ok = report.all_passed();
    let input = json!({"input": a.input.display().to_string(), "group_order": data.order()});
    let result = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    Ok(Outcome { kind: "axioms", input, result, text, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lgorb::arith::rat;

    #[test]
    fn matrices() {
        assert_eq!(parse_matrix("[[1/4]]").unwrap(), vec![vec![rat(1, 4)]]);
        assert_eq!(
            parse_matrix(" [[1/3, 0], [0,1/4]] ").unwrap(),
            vec![vec![rat(1, 3), rat(0, 1)], vec![rat(0, 1), rat(1, 4)]]
        );
        assert_eq!(parse_matrix("[[\"1/2\"]]").unwrap(), vec![vec![rat(1, 2)]]);
        assert!(parse_matrix("[]").unwrap().is_empty());
        assert!(parse_matrix("[1/4]").is_err());
        assert!(parse_matrix("[[a]]").is_err());
    }

    #[test]
    fn params() {
        let p = parse_params("n=3..8").unwrap();
        assert_eq!((p.n_min, p.n_max), (3, 8));
        let p = parse_params("5").unwrap();
        assert_eq!((p.n_min, p.n_max), (5, 5));
        assert!(parse_params("n=1..3").is_err());
        assert!(parse_params("n=6..3").is_err());
    }

    #[test]
    fn variables() {
        assert_eq!(infer_vars("x^3 + x*y^2"), vec!["x", "y"]);
        assert_eq!(infer_vars("z2^2 + 1/5*a^5"), vec!["a", "z2"]);
    }
}
