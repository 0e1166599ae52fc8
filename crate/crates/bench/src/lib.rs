//! Benchmark-only crate; see `benches/quadrature.rs`.
