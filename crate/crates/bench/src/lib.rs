//! Benchmarks for the exact and numeric layers live under `benches/`.

pub use qapery_core as core;
