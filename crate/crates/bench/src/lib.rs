//! Criterion benchmarks for the Bell functionals and optimizer; see `benches/`.
