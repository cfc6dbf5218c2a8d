//! Criterion benchmarks for qubitfit; see `benches/`.
