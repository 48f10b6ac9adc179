//! Drivers that rebuild the classification tables row by row.

use serde::Serialize;

use super::entries::{Catalog, TENSOR};
use super::fold::fold;
use super::spectrum::{spectrum_of, MatchMode, Spectrum, SpectrumRow};
use crate::arith::{fmt_rat, parse_polynomial, rat, Monomial, Polynomial, Rational};
use crate::dual::dualize_module;
use crate::orbifold::{build_module, OrbifoldModule};
use crate::symmetry::{DiagonalElement, DiscreteTorsion, SignChoice, SymmetryGroup};

/// A polynomial with a diagonal group given by generator phases and a sign
/// bit per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub polynomial: String,
    pub vars: Vec<String>,
    pub generators: Vec<Vec<Rational>>,
    pub sigma: Vec<u8>,
}

impl Case {
    pub fn new(polynomial: impl Into<String>, vars: &[&str], generators: Vec<Vec<Rational>>, sigma: Vec<u8>) -> Self {
        Case { polynomial: polynomial.into(), vars: vars.iter().map(|v| v.to_string()).collect(), generators, sigma }
    }

    pub fn build(&self, bound: usize) -> Result<OrbifoldModule, String> {
        let f = parse_polynomial(&self.polynomial, &self.vars).map_err(|e| e.to_string())?;
        let gens: Vec<DiagonalElement> = self.generators.iter().map(|g| DiagonalElement::from_rationals(g)).collect();
        let g = SymmetryGroup::generate(self.vars.len(), &gens, bound).map_err(|e| e.to_string())?;
        let s = SignChoice::from_generators(&g, &self.sigma).map_err(|e| e.to_string())?;
        let eps = DiscreteTorsion::trivial(&g);
        build_module(&f, &self.vars, g, s, eps).map_err(|e| e.to_string())
    }

    fn echo(&self) -> CaseEcho {
        CaseEcho {
            polynomial: self.polynomial.clone(),
            vars: self.vars.clone(),
            generators: self.generators.iter().map(|g| g.iter().map(fmt_rat).collect()).collect(),
            sigma: self.sigma.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseEcho {
    pub polynomial: String,
    pub vars: Vec<String>,
    pub generators: Vec<Vec<String>>,
    pub sigma: Vec<u8>,
}

/// One compared column: the invariants (or dual invariants) of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnReport {
    pub title: String,
    pub mode: MatchMode,
    /// `None` when the computation is expected to be unavailable.
    pub expected: Option<String>,
    pub spectrum: Option<Vec<SpectrumRow>>,
    pub matches: Vec<String>,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub row: usize,
    pub label: String,
    pub parameter: String,
    pub cases: Vec<CaseEcho>,
    pub columns: Vec<ColumnReport>,
    pub checks: Vec<(String, bool)>,
    pub notes: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table: String,
    pub rows: Vec<RowReport>,
    pub passed: usize,
    pub failed: usize,
}

impl TableReport {
    fn new(table: &str, rows: Vec<RowReport>) -> Self {
        let passed = rows.iter().filter(|r| r.pass).count();
        TableReport { table: table.to_string(), failed: rows.len() - passed, rows, passed }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Rows with the given row number.
    pub fn row(&self, row: usize) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(move |r| r.row == row)
    }
}

/// Range of the series parameter `n`. Rows restricted to one parity of `n`
/// extend the range upward until they cover at least three values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableParams {
    pub n_min: u64,
    pub n_max: u64,
}

impl Default for TableParams {
    fn default() -> Self {
        TableParams { n_min: 2, n_max: 6 }
    }
}

impl TableParams {
    fn all(&self) -> Vec<u64> {
        (self.n_min..=self.n_max).collect()
    }

    /// At least three values of the requested parity.
    fn parity(&self, odd: bool) -> Vec<u64> {
        let mut out: Vec<u64> = (self.n_min..=self.n_max).filter(|n| (n % 2 == 1) == odd).collect();
        let mut n = self.n_max + 1;
        while out.len() < 3 {
            if (n % 2 == 1) == odd {
                out.push(n);
            }
            n += 1;
        }
        out
    }

    /// The whole range, extended so that each parity has at least three values.
    fn both_parities(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.parity(true).into_iter().chain(self.parity(false)).collect();
        v.sort();
        v
    }
}

fn column(
    catalog: &Catalog,
    title: &str,
    mode: MatchMode,
    expected: Option<&str>,
    result: Result<Spectrum, String>,
) -> ColumnReport {
    match result {
        Ok(spec) => {
            let matches = catalog.match_spectrum(&spec, mode);
            let pass = match expected {
                Some(name) => catalog.matches(&spec, mode, name).unwrap_or(false),
                None => false,
            };
            ColumnReport {
                title: title.to_string(),
                mode,
                expected: expected.map(str::to_string),
                spectrum: Some(spec.rows()),
                matches,
                error: None,
                pass,
            }
        }
        Err(e) => ColumnReport {
            title: title.to_string(),
            mode,
            expected: expected.map(str::to_string),
            spectrum: None,
            matches: Vec::new(),
            pass: expected.is_none(),
            error: Some(e),
        },
    }
}

/// Orbifold and dual invariant columns of one module.
fn module_columns(
    catalog: &Catalog,
    case: &Case,
    bound: usize,
    expected: (&str, Option<&str>),
    titles: (&str, &str),
) -> Vec<ColumnReport> {
    let module = case.build(bound);
    let orb = module.as_ref().map(|m| spectrum_of(&m.invariants())).map_err(|e| e.clone());
    let dual = module.and_then(|m| {
        dualize_module(&m, bound).map(|d| spectrum_of(&d.invariants())).map_err(|e| e.to_string())
    });
    vec![
        column(catalog, titles.0, MatchMode::Cc, Some(expected.0), orb),
        column(catalog, titles.1, MatchMode::Ac, expected.1, dual),
    ]
}

fn row(
    row: usize,
    label: &str,
    parameter: String,
    cases: &[&Case],
    columns: Vec<ColumnReport>,
    checks: Vec<(String, bool)>,
    notes: Vec<String>,
) -> RowReport {
    let pass = columns.iter().all(|c| c.pass) && checks.iter().all(|c| c.1);
    RowReport {
        row,
        label: label.to_string(),
        parameter,
        cases: cases.iter().map(|c| c.echo()).collect(),
        columns,
        checks,
        notes,
        pass,
    }
}

fn r(n: u64, d: u64) -> Rational {
    rat(n as i64, d as i64)
}

/// `x^n + x y^2` and its generator `(1/n, -1/(2n))` of order `2n`.
fn d_series(n: u64) -> (String, Vec<Rational>) {
    (format!("x^{n} + x*y^2"), vec![r(1, n), r(2 * n - 1, 2 * n)])
}

fn pow(g: &[Rational], k: u64) -> Vec<Rational> {
    g.iter().map(|x| crate::arith::frac(&(x * r(k, 1)))).collect()
}

const PHAM: [&[u64]; 4] = [&[2, 3], &[3, 4], &[3, 5], &[2, 3, 5]];

fn a(n: u64) -> String {
    format!("A_{n}")
}

/// Every module of the first table with its stated invariant algebras.
/// Entries are `(parameter, case, orbifold algebra, dual algebra)`; a missing
/// dual algebra means the module is not quasi-Euler.
pub fn table1_rows(p: &TableParams) -> Vec<(usize, &'static str, String, Case, String, Option<String>)> {
    let mut out = Vec::new();
    let mut push = |row, label, param: String, case: Case, orb: String, dual: Option<String>| {
        out.push((row, label, param, case, orb, dual))
    };
    let z = ["z"];
    let xy = ["x", "y"];
    for n in p.all() {
        let c = Case::new(format!("z^{}", n + 1), &z, vec![vec![r(1, n + 1)]], vec![0]);
        push(1, "A_n, Z/(n+1), sigma=0", format!("n={n}"), c, "A_1".into(), Some(a(n)));
    }
    for n in p.all() {
        let c = Case::new(format!("z^{}", 2 * n), &z, vec![vec![r(1, 2 * n)]], vec![1]);
        push(2, "A_{2n-1}, Z/2n, sigma=1", format!("n={n}"), c, "A_1".into(), Some(format!("B_{n}")));
    }
    for n in p.all() {
        let c = Case::new(format!("z^{}", 2 * n), &z, vec![vec![r(1, 2)]], vec![0]);
        push(3, "A_{2n-1}, Z/2, sigma=0", format!("n={n}"), c, format!("B_{n}"), Some("I_2(4)".into()));
    }
    for n in p.both_parities() {
        let c = Case::new(format!("z^{}", 2 * n), &z, vec![vec![r(1, 2)]], vec![1]);
        let dual = (n % 2 == 1).then(|| "A_1".to_string());
        push(4, "A_{2n-1}, Z/2, sigma=1 (n odd for dual)", format!("n={n}"), c, format!("D_{}", n + 1), dual);
    }
    for n in p.all() {
        let c = Case::new(format!("z^{}", 2 * n), &z, vec![vec![r(1, n)]], vec![0]);
        push(5, "A_{2n-1}, Z/n, sigma=0", format!("n={n}"), c, "I_2(4)".into(), Some(format!("B_{n}")));
    }
    for n in p.all() {
        let (f, g) = d_series(n);
        let c = Case::new(f, &xy, vec![g], vec![0]);
        push(6, "D_{n+1}, Z/2n, sigma=0", format!("n={n}"), c, "A_1".into(), Some(a(2 * n - 1)));
    }
    for n in p.parity(false) {
        let (f, g) = d_series(n);
        let c = Case::new(f, &xy, vec![pow(&g, 2)], vec![0]);
        push(7, "D_{n+1}, Z/n, n even, sigma=0", format!("n={n}"), c, "I_2(4)".into(), Some(format!("B_{n}")));
    }
    for n in p.parity(true) {
        let (f, g) = d_series(n);
        let c = Case::new(f, &xy, vec![pow(&g, 2)], vec![0]);
        push(8, "D_{n+1}, Z/n, n odd, sigma=0", format!("n={n}"), c, "A_1".into(), Some(format!("D_{}", n + 1)));
    }
    for n in p.all() {
        let (f, g) = d_series(n);
        let c = Case::new(f, &xy, vec![pow(&g, n)], vec![0]);
        push(9, "D_{n+1}, Z/2, sigma=0", format!("n={n}"), c, format!("B_{n}"), Some("I_2(4)".into()));
    }
    for n in p.both_parities() {
        let (f, g) = d_series(n);
        let c = Case::new(f, &xy, vec![pow(&g, n)], vec![1]);
        let dual = (n % 2 == 1).then(|| "I_2(4)".to_string());
        push(10, "D_{n+1}, Z/2, sigma=1 (n odd for dual)", format!("n={n}"), c, a(2 * n - 1), dual);
    }
    let names = ["x", "y", "z", "w"];
    for ks in PHAM {
        let vars = &names[..ks.len()];
        let f = vars.iter().zip(ks).map(|(v, k)| format!("{v}^{k}")).collect::<Vec<_>>().join(" + ");
        let gens = (0..ks.len())
            .map(|i| (0..ks.len()).map(|k| if k == i { r(1, ks[i]) } else { r(0, 1) }).collect())
            .collect();
        let c = Case::new(f, vars, gens, vec![0; ks.len()]);
        let dual = ks.iter().map(|k| a(k - 1)).collect::<Vec<_>>().join(TENSOR);
        let param = format!("k={}", ks.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","));
        push(11, "Pham, product of Z/k_i, sigma=0", param, c, "A_1".into(), Some(dual));
    }
    let e6 = Case::new("x^3 + y^4", &xy, vec![vec![r(1, 3), r(0, 1)], vec![r(0, 1), r(1, 4)]], vec![0, 0]);
    push(12, "E_6, Z/3 x Z/4, sigma=0", String::new(), e6, "A_1".into(), Some("E_6".into()));
    let e7 = Case::new("x^3 + x*y^3", &xy, vec![vec![r(1, 3), r(2, 9)]], vec![0]);
    push(13, "E_7, Z/9, sigma=0", String::new(), e7, "A_1".into(), Some("E_7".into()));
    let e8 = Case::new("x^3 + y^5", &xy, vec![vec![r(1, 3), r(0, 1)], vec![r(0, 1), r(1, 5)]], vec![0, 0]);
    push(14, "E_8, Z/3 x Z/5, sigma=0", String::new(), e8, "A_1".into(), Some("E_8".into()));
    out
}

pub fn reproduce_table1(catalog: &Catalog, params: &TableParams, bound: usize) -> TableReport {
    let rows = table1_rows(params)
        .into_iter()
        .map(|(n, label, param, case, orb, dual)| {
            let cols = module_columns(
                catalog,
                &case,
                bound,
                (&orb, dual.as_deref()),
                ("orbifold invariants", "dual invariants"),
            );
            let mut notes = Vec::new();
            if n == 2 {
                notes.push(
                    "the dual keeps the Ramond class z^(n-1) in the sector of j^n, whose degree (n-1)/(2n) \
                     completes B_n to D_(n+1)"
                        .to_string(),
                );
            }
            if n == 10 {
                notes.push(
                    "the Eulerization has sigma(j) = 0, so the generator of Z/2 acts on the dual unit by -1; \
                     only the twisted dual class of degree (-1/2, 1/2) is invariant"
                        .to_string(),
                );
            }
            row(n, label, param, &[&case], cols, Vec::new(), notes)
        })
        .collect();
    TableReport::new("1", rows)
}

/// Two-stage data for the second table: the subgroup `H`, then the quotient
/// `K = G/H` realized by the squares of `G`.
pub struct Table2Case {
    pub row: usize,
    pub label: &'static str,
    pub parameter: String,
    pub first: Case,
    pub second: Case,
    /// Algebras `(X, Y)`; the second stage is expected to give `(Y, X)`.
    pub pair: (String, String),
}

/// When the sign on `H` is trivial the `H`-invariants form the even
/// subalgebra, on which `H` acts trivially, and the second stage orbifolds by
/// `K` alone. Otherwise `H` stays in the group and `K` carries the trivial sign.
pub fn table2_cases(p: &TableParams) -> Vec<Table2Case> {
    let z = ["z"];
    let xy = ["x", "y"];
    let mut out = Vec::new();
    for n in p.parity(true) {
        let f = format!("z^{}", 2 * n);
        out.push(Table2Case {
            row: 1,
            label: "A_{2n-1}, G=Z/2n, H=Z/2, sigma=1",
            parameter: format!("n={n}"),
            first: Case::new(f.clone(), &z, vec![vec![r(1, 2)]], vec![1]),
            second: Case::new(f, &z, vec![vec![r(1, 2)], vec![r(1, n)]], vec![1, 0]),
            pair: (format!("D_{}", n + 1), "A_1".into()),
        });
    }
    for n in p.all() {
        let f = format!("z^{}", 2 * n);
        out.push(Table2Case {
            row: 2,
            label: "A_{2n-1}, G=Z/2n, H=Z/2, sigma=0",
            parameter: format!("n={n}"),
            first: Case::new(f.clone(), &z, vec![vec![r(1, 2)]], vec![0]),
            second: Case::new(f, &z, vec![vec![r(1, n)]], vec![0]),
            pair: (format!("B_{n}"), "I_2(4)".into()),
        });
    }
    for n in p.parity(false) {
        let (f, g) = d_series(n);
        out.push(Table2Case {
            row: 3,
            label: "D_{n+1}, G=Z/2n, H=Z/2, sigma=0",
            parameter: format!("n={n}"),
            first: Case::new(f.clone(), &xy, vec![pow(&g, n)], vec![0]),
            second: Case::new(f, &xy, vec![pow(&g, 2)], vec![0]),
            pair: (format!("B_{n}"), "I_2(4)".into()),
        });
    }
    let j = vec![r(1, 3), r(1, 4)];
    out.push(Table2Case {
        row: 4,
        label: "E_6, G=Z/3 x Z/4, H=e x Z/2, sigma=0",
        parameter: String::new(),
        first: Case::new("x^3 + y^4", &xy, vec![pow(&j, 6)], vec![0]),
        second: Case::new("x^3 + y^4", &xy, vec![pow(&j, 2)], vec![0]),
        pair: ("F_4".into(), "I_2(4)".into()),
    });
    out
}

pub fn reproduce_table2(catalog: &Catalog, params: &TableParams, bound: usize) -> TableReport {
    let rows = table2_cases(params)
        .into_iter()
        .map(|c| {
            let (x, y) = (&c.pair.0, &c.pair.1);
            let mut cols = module_columns(catalog, &c.first, bound, (x, Some(y)), ("(T/H)^H", "(dual T/H)^H"));
            cols.extend(module_columns(catalog, &c.second, bound, (y, Some(x)), ("((T/H)/K)^K", "(dual (T/H)/K)^K")));
            let swap = cols[0].pass && cols[3].pass && cols[1].pass && cols[2].pass;
            let notes = vec!["parity annotations of the series are read as the parity of n".to_string()];
            row(c.row, c.label, c.parameter.clone(), &[&c.first, &c.second], cols, vec![("pair swap".into(), swap)], notes)
        })
        .collect();
    TableReport::new("2", rows)
}

/// The diagonal foldings with their expected target and rank.
pub fn table3_cases(p: &TableParams) -> Vec<(usize, &'static str, String, Case, String, usize)> {
    let z = ["z"];
    let xy = ["x", "y"];
    let mut out = Vec::new();
    for n in p.all() {
        let c = Case::new(format!("z^{}", n + 1), &z, vec![vec![crate::arith::frac(&r(1, n - 1))]], vec![0]);
        out.push((1, "A_n -> I_2(n+1), z -> exp(2 pi i/(n-1)) z", format!("n={n}"), c, format!("I_2({})", n + 1), 2));
    }
    for n in p.all() {
        let c = Case::new(format!("z^{}", 2 * n), &z, vec![vec![r(1, 2)]], vec![0]);
        out.push((2, "A_{2n-1} -> B_n, z -> -z", format!("n={n}"), c, format!("B_{n}"), n as usize));
    }
    for n in p.all() {
        let (f, _) = d_series(n);
        let c = Case::new(f, &xy, vec![vec![r(0, 1), r(1, 2)]], vec![0]);
        out.push((3, "D_{n+1} -> B_n, (x, y) -> (x, -y)", format!("n={n}"), c, format!("B_{n}"), n as usize));
    }
    let half = vec![r(1, 2), r(1, 2)];
    out.push((4, "D_4 -> G_2, (x, y) -> (-x, -y)", String::new(), Case::new("x^3 + x*y^2", &xy, vec![half.clone()], vec![0]), "G_2".into(), 2));
    out.push((5, "D_6 -> H_3, (x, y) -> (-x, -y)", String::new(), Case::new("1/5*x^5 + x*y^2", &xy, vec![half], vec![0]), "H_3".into(), 3));
    out.push((6, "E_6 -> F_4, (x, y) -> (x, -y)", String::new(), Case::new("x^3 + y^4", &xy, vec![vec![r(0, 1), r(1, 2)]], vec![0]), "F_4".into(), 4));
    out.push((7, "E_8 -> H_4, (x, y) -> (x, exp(2 pi i/3) y)", String::new(), Case::new("x^3 + y^5", &xy, vec![vec![r(0, 1), r(1, 3)]], vec![0]), "H_4".into(), 4));
    out
}

pub fn reproduce_table3(catalog: &Catalog, params: &TableParams) -> TableReport {
    let rows = table3_cases(params)
        .into_iter()
        .map(|(n, label, param, case, target, rank)| {
            let result = parse_polynomial(&case.polynomial, &case.vars).map_err(|e| e.to_string()).and_then(|f| {
                let gens: Vec<DiagonalElement> = case.generators.iter().map(|g| DiagonalElement::from_rationals(g)).collect();
                fold(&f, &case.vars, &gens, catalog).map_err(|e| e.to_string())
            });
            let rank_ok = result.as_ref().is_ok_and(|f| f.rank() == rank);
            let col = column(catalog, "folded invariants", MatchMode::Cc, Some(&target), result.map(|f| f.spectrum));
            let checks = vec![(format!("rank {rank}"), rank_ok), ("closed under multiplication".into(), col.error.is_none())];
            row(n, label, param, &[&case], vec![col], checks, Vec::new())
        })
        .collect();
    TableReport::new("3", rows)
}

/// Why the cubic with the grading group cannot sit in a mirror pair of the
/// kind the simple singularities form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorDiagnosis {
    pub middle_class_invariant: bool,
    pub untwisted_invariants: usize,
    pub orbifold_diagonal: bool,
    pub dual_antidiagonal: bool,
    pub message: String,
}

pub fn p8_case() -> Case {
    Case::new("x^3 + y^3 + z^3 - x*y*z", &["x", "y", "z"], vec![vec![r(1, 3), r(1, 3), r(1, 3)]], vec![0])
}

/// The expected invariant bidegrees `(0,0), (1,1), (1,0), (0,1)`.
pub fn p8_expected() -> Vec<(Rational, Rational)> {
    let (o, i) = (r(0, 1), r(1, 1));
    let mut v = vec![(o.clone(), o.clone()), (i.clone(), i.clone()), (i.clone(), o.clone()), (o, i)];
    v.sort();
    v
}

/// Sorted bidegrees, with `q` negated when `mirror` is set.
fn bidegrees(s: &Spectrum, mirror: bool) -> Vec<(Rational, Rational)> {
    let mut v: Vec<_> =
        s.entries().iter().map(|e| (if mirror { -e.q.clone() } else { e.q.clone() }, e.q_bar.clone())).collect();
    v.sort();
    v
}

pub fn p8_diagnosis(m: &OrbifoldModule, orb: &Spectrum, dual: &Spectrum) -> MirrorDiagnosis {
    let untwisted = m.invariants().iter().filter(|e| e.sector == 0).count();
    // the product of all variables spans the top degree of the untwisted sector
    let top = Monomial(vec![1; m.vars.len()]);
    let nonzero = !m.untwisted().normal_form(&Polynomial::monomial(top.clone())).is_zero();
    let middle = nonzero && (0..m.order()).all(|g| m.monomial_action(g, 0, &top).is_one());
    let orbifold_diagonal = orb.is_diagonal();
    let dual_antidiagonal = dual.is_antidiagonal();
    let mut reasons = Vec::new();
    if middle {
        reasons.push(format!("{} is invariant, so the invariants are not A_1", top.to_text(&m.vars)));
    }
    if !orbifold_diagonal {
        reasons.push("the invariant spectrum is not diagonal".to_string());
    }
    if !dual_antidiagonal {
        reasons.push("the dual invariant spectrum is not anti-diagonal".to_string());
    }
    let message = if reasons.is_empty() {
        "no obstruction found".to_string()
    } else {
        format!("not a mirror candidate: {}", reasons.join("; "))
    };
    MirrorDiagnosis { middle_class_invariant: middle, untwisted_invariants: untwisted, orbifold_diagonal, dual_antidiagonal, message }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P8Report {
    pub case: CaseEcho,
    pub invariants: Vec<SpectrumRow>,
    pub dual_invariants: Vec<SpectrumRow>,
    pub invariants_match: bool,
    pub dual_match: bool,
    pub diagnosis: MirrorDiagnosis,
    pub pass: bool,
}

pub fn reproduce_p8(bound: usize) -> Result<P8Report, String> {
    let case = p8_case();
    let m = case.build(bound)?;
    let orb = spectrum_of(&m.invariants());
    let d = dualize_module(&m, bound).map_err(|e| e.to_string())?;
    let dual = spectrum_of(&d.invariants());
    let want = p8_expected();
    let invariants_match = bidegrees(&orb, false) == want;
    // the dual is compared in its (a,c) realization
    let dual_match = bidegrees(&dual, true) == want;
    let diagnosis = p8_diagnosis(&m, &orb, &dual);
    let pass = invariants_match && dual_match && diagnosis.middle_class_invariant && !diagnosis.dual_antidiagonal;
    Ok(P8Report {
        case: case.echo(),
        invariants: orb.rows(),
        dual_invariants: dual.rows(),
        invariants_match,
        dual_match,
        diagnosis,
        pass,
    })
}
