//! The purity envelope `g_alpha(c)`: the least Renyi-alpha entropy among
//! distributions with purity `sum p_i^2 = c`.
//!
//! The minimizer is flat on `k = floor(1/c)` weights plus one remainder, so
//! the envelope touches `-log2 c` exactly at `c = 1/k` and collapses to the
//! binary-entropy form `h((1 + sqrt(2c - 1)) / 2)` once `c >= 1/2`.

use moebounds::entropy::{binary_renyi, g_alpha, g_curve, qubit_f};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("touch points g(1/k) = log2 k:");
    for k in 1..=6 {
        let c = 1.0 / k as f64;
        let g = g_alpha(c, 1.0)?;
        println!(
            "  k = {k}: g = {:.15}  log2 k = {:.15}  gap = {:.2e}",
            g.value,
            (k as f64).log2(),
            (g.value - (k as f64).log2()).abs()
        );
    }

    let g = g_alpha(0.4, 1.0)?;
    println!("\nminimizer at c = 0.4: {:?}", g.distribution);
    println!("g_1(0.4) = {:.15}", g.value);

    println!("\nbinary form on c >= 1/2 (alpha = 1):");
    for c in [0.5, 0.62, 0.75, 0.9, 1.0] {
        let g = g_alpha(c, 1.0)?;
        let via_f = binary_renyi(qubit_f(c.sqrt())?, 1.0)?;
        println!("  c = {c:.2}: g = {:.15}  h2 form = {:.15}", g.value, via_f);
    }

    // The curve dominates -log2 c row-wise; equality only at 1/k points.
    let rows = g_curve(0.05, 1.0, 200, 2.0)?;
    let worst = rows
        .iter()
        .map(|r| r.g - r.neg_log2_c)
        .fold(f64::INFINITY, f64::min);
    println!("\nmin over 200 grid points of g - (-log2 c) at alpha = 2: {worst:.2e}");
    Ok(())
}
