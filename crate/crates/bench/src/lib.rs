//! Benchmarks live in `benches/`; run them with `cargo bench -p rclkit-bench`.

pub use rclkit_core::samples;
