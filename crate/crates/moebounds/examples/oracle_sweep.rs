//! Multistart behavior of the gradient-ascent oracle: value stabilization
//! and convergence diagnostics as the restart budget grows.
//!
//! Restarts are independent; the reduction is deterministic for a fixed
//! seed regardless of thread count (cap workers with MOE_THREADS, 0 = auto).
//! Qubit inputs additionally get an exhaustive Bloch grid, so even tiny
//! budgets are exact there.

use moebounds::channels::HermitianMap;
use moebounds::oracle::{oracle_norm_1to2, oracle_smin_alpha};
use moebounds::qubit_exact::qubit_norm12;
use moebounds::sample::{random_channel, random_unital_channel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let map = HermitianMap::Kraus(random_unital_channel(4, 3, &mut rng));

    println!("4 -> 4 unital channel, |.|_(1->2) oracle:");
    for restarts in [1, 4, 16, 64, 256] {
        let res = oracle_norm_1to2(&map, 42, restarts)?;
        println!(
            "  restarts {restarts:>3}: value = {:.15}  converged {:>5.1}%",
            res.value,
            100.0 * res.converged_fraction
        );
    }

    println!("\nsame channel, S_min,1 oracle:");
    for restarts in [4, 32, 128] {
        let res = oracle_smin_alpha(&map, 1.0, 42, restarts)?;
        println!("  restarts {restarts:>3}: value = {:.15} bits", res.value);
    }

    // Determinism: the same seed reproduces the result bit for bit.
    let a = oracle_norm_1to2(&map, 7, 32)?;
    let b = oracle_norm_1to2(&map, 7, 32)?;
    println!("\nseed 7 twice: {} (bitwise equal {})", a.value, a.value == b.value);

    let qubit = HermitianMap::Kraus(random_channel(2, 3, 3, &mut rng));
    let exact = qubit_norm12(&qubit)?;
    let res = oracle_norm_1to2(&qubit, 42, 1)?;
    println!(
        "\nqubit input, 1 restart: oracle {:.15} vs exact {:.15} (grid covers it)",
        res.value, exact.norm12
    );
    Ok(())
}
