//! Bidegree multisets of invariants.

use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rat, Rational};
use crate::orbifold::GradedElement;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectrumEntry {
    pub q: Rational,
    pub q_bar: Rational,
    pub group: Option<usize>,
}

/// A multiset of bidegrees, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
}

/// `Cc`: diagonal bidegrees `(q, q)`; `Ac`: anti-diagonal `(-q, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    Cc,
    Ac,
}

impl MatchMode {
    pub fn label(self) -> &'static str {
        match self {
            MatchMode::Cc => "cc",
            MatchMode::Ac => "ac",
        }
    }
}

impl Spectrum {
    pub fn new(mut entries: Vec<SpectrumEntry>) -> Self {
        entries.sort();
        Spectrum { entries }
    }

    /// Diagonal spectrum with no group degrees.
    pub fn diagonal(degrees: &[Rational]) -> Self {
        Spectrum::new(degrees.iter().map(|q| SpectrumEntry { q: q.clone(), q_bar: q.clone(), group: None }).collect())
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|e| e.q == e.q_bar)
    }

    pub fn is_antidiagonal(&self) -> bool {
        self.entries.iter().all(|e| e.q == -e.q_bar.clone())
    }

    /// The sorted one-variable degrees if the spectrum has the shape `mode` requires.
    pub fn degrees(&self, mode: MatchMode) -> Option<Vec<Rational>> {
        let ok = match mode {
            MatchMode::Cc => self.is_diagonal(),
            MatchMode::Ac => self.is_antidiagonal(),
        };
        if !ok {
            return None;
        }
        let mut d: Vec<Rational> = self.entries.iter().map(|e| e.q_bar.clone()).collect();
        d.sort();
        Some(d)
    }

    /// Rows `[q, qbar, group index]` with exact rational strings.
    pub fn rows(&self) -> Vec<SpectrumRow> {
        self.entries.iter().map(|e| SpectrumRow(fmt_rat(&e.q), fmt_rat(&e.q_bar), e.group)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRow(pub String, pub String, pub Option<usize>);

pub fn spectrum_of(invariants: &[GradedElement]) -> Spectrum {
    Spectrum::new(
        invariants
            .iter()
            .map(|e| SpectrumEntry { q: e.q.clone(), q_bar: e.q_bar.clone(), group: Some(e.sector) })
            .collect(),
    )
}
