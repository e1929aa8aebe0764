//! Criterion benchmarks for the verification suites; see `benches/verify.rs`.
