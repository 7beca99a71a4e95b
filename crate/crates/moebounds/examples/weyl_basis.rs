//! Discrete Weyl traceless bases: construction, labels, and the Gram
//! identity residual for dimensions 2 through 8.
//!
//! Each basis has n^2 - 1 traceless Hermitian elements built from the shift
//! and clock operators; self-paired Weyl slots give single F elements while
//! conjugate slots pair into G (symmetric) and H (antisymmetric) combinations.

use moebounds::bases::{gellmann_basis, weyl_basis};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=8 {
        let basis = weyl_basis(n)?;
        println!(
            "n = {n}: {} elements, Gram residual {:.2e}",
            basis.len(),
            basis.gram_residual()
        );
    }

    let basis = weyl_basis(4)?;
    println!("\nn = 4 labels: {}", basis.labels().join(" "));

    // The Gell-Mann basis spans the same traceless sector; residuals match.
    let gm = gellmann_basis(4)?;
    println!(
        "Gell-Mann n = 4: {} elements, Gram residual {:.2e}",
        gm.len(),
        gm.gram_residual()
    );
    Ok(())
}
