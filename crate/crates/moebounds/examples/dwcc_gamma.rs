//! Discrete-Weyl-covariant channels act diagonally on the Weyl basis, so
//! their gamma functional has a closed form in the mixture weights.
//!
//! The mixture `rho -> sum p_{x,y} W_{x,y} rho W_{x,y}^dag` multiplies the
//! Weyl slot (a,b) by `c_{a,b} = sum p_{x,y} omega^{a y - x b}`; both basis
//! elements of the slot carry the diagonal entry `|c_{a,b}|^2` of `A`.

use moebounds::bases::weyl_basis;
use moebounds::channels::{family_dwcc, HermitianMap};
use moebounds::rep::{build_rep, gamma, gamma_dwcc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut weights = Vec::new();
    let mut total = 0.0;
    for (x, y) in [(0usize, 1usize), (1, 0), (2, 1), (3, 3)] {
        let w: f64 = rng.gen_range(0.1..1.0);
        weights.push((x, y, w));
        total += w;
    }
    for entry in &mut weights {
        entry.2 /= total;
    }
    println!("weights: {weights:?}");

    let closed = gamma_dwcc(n, &weights)?;
    println!(
        "closed form: gamma = {:.15}  branch = {:?}  |A| = {:.15}",
        closed.gamma.gamma, closed.gamma.branch, closed.gamma.a_norm
    );
    println!("diagonal |c_(a,b)|^2 per slot:");
    for ((a, b), c2) in &closed.coefficients {
        println!("  ({a},{b}) -> {c2:.15}");
    }

    // Dense path: build the traceless-sector matrix in the Weyl basis and
    // confirm diagonality and the same gamma.
    let map = HermitianMap::Kraus(family_dwcc(n, &weights)?);
    let basis = weyl_basis(n)?;
    let rep = build_rep(&map, &basis, &basis)?;
    let mut off = 0.0f64;
    for i in 0..rep.a.nrows() {
        for j in 0..rep.a.ncols() {
            if i != j {
                off = off.max(rep.a[(i, j)].abs());
            }
        }
    }
    let dense = gamma(&rep)?;
    println!("dense path: gamma = {:.15}  max off-diagonal of A = {off:.2e}", dense.gamma);
    println!("closed - dense = {:.2e}", (closed.gamma.gamma - dense.gamma).abs());
    Ok(())
}
