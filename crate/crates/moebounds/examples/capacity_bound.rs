//! Classical capacity bounds from gamma: `C <= log2 k + log2 gamma`, with
//! `-log2 gamma` a lower bound on the regularized minimum output entropy.
//!
//! For the Werner-Holevo family the bound is exactly
//! `log2 n - log2(n - 1)`, strictly below the log2 n ceiling.

use moebounds::bases::gellmann_basis;
use moebounds::bounds::capacity_bound;
use moebounds::channels::{family_depolarizing, family_werner_holevo, HermitianMap};
use moebounds::rep::build_rep;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("Werner-Holevo family:");
    for n in 3..=6 {
        let map = HermitianMap::Kraus(family_werner_holevo(n)?);
        let basis = gellmann_basis(n)?;
        let rep = build_rep(&map, &basis, &basis)?;
        let bound = capacity_bound(&rep)?;
        let nf = n as f64;
        println!(
            "  n = {n}: C <= {:.15}  closed form {:.15}  regularized S_min >= {:.12}",
            bound.capacity_bits,
            nf.log2() - (nf - 1.0).log2(),
            bound.regularized_smin_bits
        );
    }

    println!("\ndepolarizing family at n = 3:");
    for t in [1.0, 0.5, 0.0, -0.5] {
        let map = family_depolarizing(3, t)?;
        let basis = gellmann_basis(3)?;
        let rep = build_rep(&map, &basis, &basis)?;
        let bound = capacity_bound(&rep)?;
        println!(
            "  t = {t:>4}: gamma = {:.12}  C <= {:.12} bits",
            bound.gamma.gamma, bound.capacity_bits
        );
    }
    Ok(())
}
