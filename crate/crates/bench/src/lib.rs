//! Criterion benchmarks for the solver, state table, detectors and graph
//! enumeration. Run with `cargo bench -p grabbing-bench`.
