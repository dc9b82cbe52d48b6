//! Benchmark-only crate; see `benches/qseries.rs`.
