//! Criterion benchmarks for the `isomub` kernels live in `benches/`.
