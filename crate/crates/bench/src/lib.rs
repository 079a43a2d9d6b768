//! Criterion benchmarks for the table builder and the splitting routines live under `benches/`.
