//! Named Frobenius algebras and their degree multisets.
//!
//! Every degree list is `(m - 1)/h` over the exponents `m` and Coxeter number
//! `h`. The simply laced families and tensor products are built in; the
//! remaining fixed names come from a versioned JSON file.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::spectrum::{MatchMode, Spectrum};
use crate::arith::{rat, Rational};

const BUILTIN: &str = include_str!("../../data/catalog.json");

/// Separator of tensor factors in names such as `A_2⊗A_3`.
pub const TENSOR: &str = "⊗";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog file: {0}")]
    File(String),
    #[error("unknown algebra name '{0}'")]
    UnknownName(String),
    #[error("catalog entry '{0}' is invalid: {1}")]
    InvalidEntry(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyNote {
    pub family: String,
    pub rule: String,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coxeter_number: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u64>>,
    /// Explicit degrees as `p/q` strings, used when no exponents are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<String>>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub schema_version: u32,
    pub catalog_version: String,
    #[serde(default)]
    pub families: Vec<FamilyNote>,
    pub entries: Vec<FileEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub degrees: Vec<Rational>,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub version: String,
    pub families: Vec<FamilyNote>,
    fixed: Vec<CatalogEntry>,
}

fn coxeter_degrees(h: u64, exponents: &[u64]) -> Vec<Rational> {
    let mut d: Vec<Rational> = exponents.iter().map(|&m| rat(m as i64 - 1, h as i64)).collect();
    d.sort();
    d
}

/// Coxeter number and exponents of the built-in families.
fn family_exponents(family: &str, n: u64) -> Option<(u64, Vec<u64>)> {
    match family {
        "A" if n >= 1 => Some((n + 1, (1..=n).collect())),
        "B" if n >= 1 => Some((2 * n, (0..n).map(|k| 2 * k + 1).collect())),
        "D" if n >= 3 => {
            let mut e: Vec<u64> = (0..n - 1).map(|k| 2 * k + 1).collect();
            e.push(n - 1);
            Some((2 * n - 2, e))
        }
        "E" => match n {
            6 => Some((12, vec![1, 4, 5, 7, 8, 11])),
            7 => Some((18, vec![1, 5, 7, 9, 11, 13, 17])),
            8 => Some((30, vec![1, 7, 11, 13, 17, 19, 23, 29])),
            _ => None,
        },
        "I" if n >= 3 => Some((n, vec![1, n - 1])),
        _ => None,
    }
}

/// Splits `A_12` or `I_2(5)` into family and parameter.
fn parse_atom(name: &str) -> Option<(&'static str, u64)> {
    if let Some(k) = name.strip_prefix("I_2(").and_then(|r| r.strip_suffix(')')) {
        return k.parse().ok().map(|k| ("I", k));
    }
    let (fam, n) = name.split_once('_')?;
    let fam = match fam {
        "A" => "A",
        "B" => "B",
        "D" => "D",
        "E" => "E",
        _ => return None,
    };
    n.parse().ok().map(|n| (fam, n))
}

/// Degrees of a tensor product: all sums of one degree from each factor.
pub fn tensor_degrees(factors: &[Vec<Rational>]) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into())];
    for f in factors {
        out = out.iter().flat_map(|a| f.iter().map(move |b| a + b)).collect();
    }
    out.sort();
    out
}

/// A polynomial whose Milnor ring realizes a simply laced name, with its variables.
pub fn defining_polynomial(name: &str) -> Option<(String, Vec<String>)> {
    let xy = || vec!["x".to_string(), "y".to_string()];
    match parse_atom(name)? {
        ("A", n) => Some((format!("z^{}", n + 1), vec!["z".to_string()])),
        ("D", n) if n >= 3 => Some((format!("x^{} + x*y^2", n - 1), xy())),
        ("E", 6) => Some(("x^3 + y^4".into(), xy())),
        ("E", 7) => Some(("x^3 + x*y^3".into(), xy())),
        ("E", 8) => Some(("x^3 + y^5".into(), xy())),
        _ => None,
    }
}

impl Catalog {
    pub fn builtin() -> Catalog {
        Catalog::from_json(BUILTIN).expect("shipped catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Catalog, CatalogError> {
        let file: CatalogFile = serde_json::from_str(text).map_err(|e| CatalogError::File(e.to_string()))?;
        if file.schema_version != 1 {
            return Err(CatalogError::File(format!("unsupported schema_version {}", file.schema_version)));
        }
        let mut fixed = Vec::new();
        for e in &file.entries {
            let bad = |why: &str| CatalogError::InvalidEntry(e.name.clone(), why.to_string());
            let degrees = match (&e.coxeter_number, &e.exponents, &e.degrees) {
                (Some(h), Some(ex), None) if *h > 0 && ex.iter().all(|&m| m >= 1) => coxeter_degrees(*h, ex),
                (None, None, Some(d)) => {
                    let mut v = d
                        .iter()
                        .map(|s| crate::arith::parse_rat(s).ok_or_else(|| bad("degree is not a rational")))
                        .collect::<Result<Vec<_>, _>>()?;
                    v.sort();
                    v
                }
                _ => return Err(bad("give either coxeter_number with exponents or degrees")),
            };
            if e.name.contains(TENSOR) || e.name.is_empty() {
                return Err(bad("names must be nonempty and contain no tensor sign"));
            }
            fixed.push(CatalogEntry { name: e.name.clone(), degrees, provenance: e.provenance.clone() });
        }
        Ok(Catalog { version: file.catalog_version, families: file.families, fixed })
    }

    pub fn fixed_entries(&self) -> &[CatalogEntry] {
        &self.fixed
    }

    /// Sorted degrees of a name, including tensor products of names.
    pub fn degrees_of(&self, name: &str) -> Result<Vec<Rational>, CatalogError> {
        let parts: Vec<&str> = name.split(TENSOR).map(str::trim).collect();
        if parts.len() > 1 {
            let factors = parts.iter().map(|p| self.degrees_of(p)).collect::<Result<Vec<_>, _>>()?;
            return Ok(tensor_degrees(&factors));
        }
        if let Some(e) = self.fixed.iter().find(|e| e.name == name) {
            return Ok(e.degrees.clone());
        }
        let (fam, n) = parse_atom(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
        let (h, ex) = family_exponents(fam, n).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
        Ok(coxeter_degrees(h, &ex))
    }

    /// Names of dimension `size` worth comparing against, in ranking order.
    fn candidates(&self, size: usize, degrees: &[Rational]) -> Vec<String> {
        let n = size as u64;
        let mut out = Vec::new();
        if n >= 1 {
            out.push(format!("A_{n}"));
        }
        if n >= 4 {
            out.push(format!("D_{n}"));
        }
        if (6..=8).contains(&n) {
            out.push(format!("E_{n}"));
        }
        if n >= 2 {
            out.push(format!("B_{n}"));
        }
        if n == 2 {
            // {0, (k-2)/k} determines k
            let one = Rational::from_integer(1.into());
            let gap = &one - &degrees[1];
            if gap > Rational::from_integer(0.into()) {
                let k = Rational::from_integer(2.into()) / gap;
                if k.is_integer() && k >= Rational::from_integer(3.into()) {
                    out.push(format!("I_2({})", k.to_integer()));
                }
            }
        }
        out.extend(self.fixed.iter().filter(|e| e.degrees.len() == size).map(|e| e.name.clone()));
        out
    }

    /// Every catalog name whose degrees equal the spectrum in the given realization.
    pub fn match_spectrum(&self, spec: &Spectrum, mode: MatchMode) -> Vec<String> {
        let Some(d) = spec.degrees(mode) else { return Vec::new() };
        if d.is_empty() {
            return Vec::new();
        }
        self.candidates(d.len(), &d).into_iter().filter(|c| self.degrees_of(c).is_ok_and(|e| e == d)).collect()
    }

    /// Whether the spectrum realizes the named algebra in the given realization.
    pub fn matches(&self, spec: &Spectrum, mode: MatchMode, name: &str) -> Result<bool, CatalogError> {
        let want = self.degrees_of(name)?;
        Ok(spec.degrees(mode).is_some_and(|d| d == want))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::spectrum::SpectrumEntry;

    #[test]
    fn closed_forms() {
        let c = Catalog::builtin();
        assert_eq!(c.degrees_of("A_3").unwrap(), vec![rat(0, 1), rat(1, 4), rat(1, 2)]);
        assert_eq!(c.degrees_of("B_3").unwrap(), vec![rat(0, 1), rat(1, 3), rat(2, 3)]);
        assert_eq!(c.degrees_of("I_2(4)").unwrap(), vec![rat(0, 1), rat(1, 2)]);
        assert_eq!(c.degrees_of("B_2").unwrap(), c.degrees_of("I_2(4)").unwrap());
        assert_eq!(c.degrees_of("G_2").unwrap(), c.degrees_of("I_2(6)").unwrap());
        assert_eq!(c.degrees_of("F_4").unwrap(), c.degrees_of("A_2⊗I_2(4)").unwrap());
        assert_eq!(c.degrees_of("H_4").unwrap(), c.degrees_of("A_2⊗I_2(5)").unwrap());
        assert_eq!(c.degrees_of("E_6").unwrap(), c.degrees_of("A_2⊗A_3").unwrap());
        assert_eq!(c.degrees_of("E_8").unwrap(), c.degrees_of("A_2⊗A_4").unwrap());
        assert_eq!(c.degrees_of("D_4").unwrap(), vec![rat(0, 1), rat(1, 3), rat(1, 3), rat(2, 3)]);
        assert!(c.degrees_of("Q_3").is_err());
        assert_eq!(c.degrees_of("D_3").unwrap(), c.degrees_of("A_3").unwrap());
    }

    #[test]
    fn matching() {
        let c = Catalog::builtin();
        let s = Spectrum::diagonal(&[rat(0, 1), rat(1, 2)]);
        assert_eq!(c.match_spectrum(&s, MatchMode::Cc), vec!["B_2", "I_2(4)"]);
        assert!(c.match_spectrum(&s, MatchMode::Ac).is_empty());
        assert_eq!(c.match_spectrum(&Spectrum::diagonal(&[rat(0, 1)]), MatchMode::Cc), vec!["A_1"]);
        let ac = Spectrum::new(vec![
            SpectrumEntry { q: rat(0, 1), q_bar: rat(0, 1), group: Some(0) },
            SpectrumEntry { q: rat(-1, 3), q_bar: rat(1, 3), group: Some(1) },
        ]);
        assert_eq!(c.match_spectrum(&ac, MatchMode::Ac), vec!["A_2", "I_2(3)"]);
        assert!(c.matches(&ac, MatchMode::Ac, "A_2").unwrap());
        assert!(c.match_spectrum(&Spectrum::default(), MatchMode::Cc).is_empty());
    }

    #[test]
    fn file_validation() {
        assert!(Catalog::from_json("{").is_err());
        let bad = r#"{"schema_version":1,"catalog_version":"x","entries":[{"name":"Z","provenance":"p"}]}"#;
        assert!(matches!(Catalog::from_json(bad), Err(CatalogError::InvalidEntry(..))));
        let ok = r#"{"schema_version":1,"catalog_version":"x","entries":[{"name":"Z","degrees":["0","1/7"],"provenance":"p"}]}"#;
        let c = Catalog::from_json(ok).unwrap();
        assert_eq!(c.degrees_of("Z").unwrap(), vec![rat(0, 1), rat(1, 7)]);
        assert!(c.degrees_of("F_4").is_err());
    }
}
