//! Interpolated `p -> 2` norm bounds over complex inputs, `1 <= p <= 2`.
//!
//! For a unital trace-preserving factor the tensor bound generalizes to
//! `|Phi x Omega|_(p->2) <= f_p(Phi)^(1/2) |Omega|_(p->2)` with
//! `f_p = n^(2 - 2/p)/k + (1 - n^(1 - 2/p)) |A|` on the mixing branch;
//! p = 1 recovers the gamma functional exactly.

use moebounds::bases::gellmann_basis;
use moebounds::bounds::{p2_bound_complex, P2Bound};
use moebounds::channels::HermitianMap;
use moebounds::oracle::oracle_norm_p2_complex;
use moebounds::rep::{build_rep, gamma};
use moebounds::sample::random_unital_channel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let map = HermitianMap::Kraus(random_unital_channel(3, 3, &mut rng));
    let basis = gellmann_basis(3)?;
    let rep = build_rep(&map, &basis, &basis)?;
    let g = gamma(&rep)?;
    println!("3 -> 3 unital channel: gamma = {:.12}", g.gamma);

    println!("\n p     factor f_p      oracle |.|_(p->2)^2   slack");
    for p in [1.0, 1.2, 1.5, 1.8, 2.0] {
        let P2Bound { factor, .. } = p2_bound_complex(&rep, 1.0, p)?;
        let oracle = oracle_norm_p2_complex(&map, p, 42, 80)?;
        let sq = oracle.value * oracle.value;
        println!(
            "  {p:.1}   {factor:.12}  {sq:.12}   {:.2e}",
            factor - sq
        );
    }
    println!("\nf_1 - gamma = {:.2e}", (p2_bound_complex(&rep, 1.0, 1.0)?.factor - g.gamma).abs());

    // Norms grow with p on the unit p-ball (larger inputs are feasible).
    let n1 = oracle_norm_p2_complex(&map, 1.0, 42, 80)?.value;
    let n2 = oracle_norm_p2_complex(&map, 2.0, 42, 80)?.value;
    println!("|.|_(1->2) = {n1:.12} <= |.|_(2->2) = {n2:.12}");
    Ok(())
}
