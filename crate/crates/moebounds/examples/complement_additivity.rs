//! Certifies additivity of the gamma bound for the five-dimensional
//! Weyl-covariant complement with pairs (1,2), (2,3), (1,4), (2,4).
//!
//! The complement has a diagonal traceless action whose top eigenspace
//! contains a pure state, so gamma is attained and the minimum output
//! entropy of any number of copies is exactly -log2 gamma.

use moebounds::bases::gellmann_basis;
use moebounds::bounds::c_add_test;
use moebounds::channels::{channel_to_json, family_dwcc_uniform_subset, HermitianMap};
use moebounds::oracle::{oracle_tensor, TensorObjective};
use moebounds::rep::gamma_complement;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 5;
    let pairs = [(1, 2), (2, 3), (1, 4), (2, 4)];
    let psi = family_dwcc_uniform_subset(n, &pairs)?;
    let comp = psi.complementary()?;
    println!("channel: n = {n}, pairs = {pairs:?}");
    println!("complement: {} -> {}", comp.in_dim(), comp.out_dim());

    let closed = gamma_complement(n, &pairs)?;
    println!("closed-form gamma(complement) = {}", closed.gamma.gamma);
    println!("diagonal N counts (max {}): {:?}", closed.max_n, closed.n_table);

    let map = HermitianMap::Kraus(comp.clone());
    let basis = gellmann_basis(comp.in_dim())?;
    let verdict = c_add_test(&map, &basis, 42, 200)?;
    println!("status = {}", verdict.status);
    println!("gamma = {} (oracle norm^2 = {})", verdict.gamma, verdict.oracle_norm_sq);
    println!("witness in top eigenspace: {}", verdict.top_eigenspace_state_found);

    let two = oracle_tensor(&map, &map, TensorObjective::Norm12, 42, 200)?;
    println!(
        "two copies: |comp x comp|_(1->2)^2 = {} (product {})",
        two.joint.value * two.joint.value,
        two.product_value * two.product_value
    );

    let json = serde_json::to_string(&channel_to_json(&comp))?;
    let path = std::env::temp_dir().join("complement5.json");
    std::fs::write(&path, &json)?;
    println!("wrote {} ({} bytes)", path.display(), json.len());
    Ok(())
}
