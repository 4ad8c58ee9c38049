//! Numerical quantum checks in clock and shift representations at a root of unity.
//!
//! Usage: `cargo run --release --example quantum_pentagon -- [N] [trials]`

use projcluster::quantum::{verify_quantum, QuantumOptions};

fn main() -> projcluster::Result<()> {
    let mut args = std::env::args().skip(1);
    let order = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let report = verify_quantum(&QuantumOptions { order, trials, ..Default::default() })?;
    for c in &report.checks {
        println!("{:24} N={} dim={:4} trials={:2} residual={:.2e} {}", c.name, c.order, c.dim, c.trials, c.residual, if c.passed { "ok" } else { "FAIL" });
    }
    Ok(())
}
