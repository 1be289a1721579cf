//! Criterion benchmarks for `rflight-core`; see `benches/`.
