//! Named target algebras, spectrum matching, table reproduction and folding.

mod entries;
mod fold;
mod report;
mod spectrum;
mod tables;

pub use entries::{
    defining_polynomial, tensor_degrees, Catalog, CatalogEntry, CatalogError, CatalogFile, FamilyNote, FileEntry, TENSOR,
};
pub use fold::{fold, summands, FoldError, FoldResult};
pub use report::{align, p8_text, table_text, to_json, Envelope, SCHEMA_VERSION};
pub use spectrum::{spectrum_of, MatchMode, Spectrum, SpectrumEntry, SpectrumRow};
pub use tables::{
    p8_case, p8_diagnosis, p8_expected, reproduce_p8, reproduce_table1, reproduce_table2, reproduce_table3,
    table1_rows, table2_cases, table3_cases, Case, CaseEcho, ColumnReport, MirrorDiagnosis, P8Report, RowReport,
    Table2Case, TableParams, TableReport,
};
