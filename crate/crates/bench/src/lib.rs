//! Criterion benchmarks for `mapcov`; see `benches/`.
