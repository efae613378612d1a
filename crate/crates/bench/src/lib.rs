//! Criterion benchmarks for `gqs-core`; see `benches/`.
