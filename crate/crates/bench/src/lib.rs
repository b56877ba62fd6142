//! Criterion benchmarks for `binact-core`; see `benches/`.
