//! Exhaustive small-graph corpora: a built-in generator for `n ≤ 9` and a
//! streaming graph6 scanner for everything larger.

mod generate;
mod scan;
mod table;

pub use generate::{generate_connected_bounded, generate_connected_bounded_with, GenerateError, GENERATOR_LIMIT};
pub use scan::{
    evaluate, scan_graphs, scan_stream, HitRecord, OnError, RecordError, ScanError, ScanOptions, ScanOutcome,
    ScanReport, SkippedRecord, CHUNK_SIZE,
};
pub use table::{scan_counts_table, scan_source, CountRow, Source, SourceResolver, TableError, DATA_DIR_ENV};
