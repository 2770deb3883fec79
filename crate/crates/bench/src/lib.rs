//! Criterion benchmarks for `bigraded-core`; see `benches/`.
