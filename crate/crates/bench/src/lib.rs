//! Criterion benchmarks for the `cftorsion` pipeline live in `benches/`.
