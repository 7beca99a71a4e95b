//! Exact `1 -> 2` norm of qubit-input channels via the secular equation,
//! checked against the gradient-ascent oracle on random instances.
//!
//! For a trace-preserving qubit-input map the squared norm is
//! `(Tr Phi(I)^2 + max_r sum_j (2 b_j r_j + a_j r_j^2)) / 4` over unit Bloch
//! vectors r, a three-variable trust-region subproblem solved exactly.

use moebounds::channels::HermitianMap;
use moebounds::oracle::oracle_norm_1to2;
use moebounds::qubit_exact::{holevo_upper_bound, qubit_norm12, qubit_smin_alpha};
use moebounds::sample::random_channel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for trial in 0..8 {
        let out_dim = 2 + trial % 3;
        let map = HermitianMap::Kraus(random_channel(2, out_dim, 3, &mut rng));
        let exact = qubit_norm12(&map)?;
        let oracle = oracle_norm_1to2(&map, 42 + trial as u64, 60)?;
        let err = (exact.norm12 - oracle.value).abs();
        worst = worst.max(err);
        println!(
            "2 -> {out_dim}: exact {:.12}  oracle {:.12}  |diff| {err:.2e}  hard case {}",
            exact.norm12, oracle.value, exact.solution.hard_case
        );
    }
    println!("worst disagreement over 8 random channels: {worst:.2e}");

    // Qubit outputs additionally give the exact minimum output entropy.
    let map = HermitianMap::Kraus(random_channel(2, 2, 3, &mut rng));
    let exact = qubit_norm12(&map)?;
    println!("\nrandom 2 -> 2 channel:");
    println!("  norm^2            = {:.12}", exact.norm12 * exact.norm12);
    println!("  optimal Bloch r   = {:?}", exact.bloch);
    for alpha in [1.0, 2.0, f64::INFINITY] {
        let s = qubit_smin_alpha(&map, alpha)?;
        println!("  S_min,{alpha:<3} = {s:.12}");
    }
    println!("  Holevo bound      = {:.12} bits", holevo_upper_bound(&map)?);
    Ok(())
}
