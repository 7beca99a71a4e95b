//! Acceptance gate: one test per shipped guarantee. Each test prints a
//! single pass line with the measured margins (visible under --nocapture;
//! the harness result line mirrors it), and pins the tolerances the crate
//! promises.

use std::collections::HashMap;
use std::time::Instant;

use moebounds::bases::{gellmann_basis, weyl_basis, weyl_index_set};
use moebounds::bounds::{
    c_add_test, capacity_bound, hybrid_bound, p2_bound_complex, AdditivityStatus,
};
use moebounds::channels::{
    family_depolarizing, family_dwcc, family_dwcc_uniform_subset, family_werner_holevo,
    HermitianMap,
};
use moebounds::entropy::{binary_renyi, g_alpha, qubit_f};
use moebounds::linalg::eigvals_hermitian;
use moebounds::oracle::{
    oracle_norm_1to2, oracle_norm_p2_complex, oracle_smin_alpha, oracle_tensor, TensorObjective,
};
use moebounds::qubit_exact::{qubit_norm12, qubit_smin_alpha};
use moebounds::rep::{build_rep, gamma, gamma_complement, gamma_dwcc, n_table, ChannelRep};
use moebounds::sample::{random_channel, random_probability_vector, random_unital_channel, random_unit_vector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The four-pair Weyl subset whose complement certifies additivity.
const ADDITIVE_PAIRS: [(usize, usize); 4] = [(1, 2), (2, 3), (1, 4), (2, 4)];

fn gellmann_rep(map: &HermitianMap) -> ChannelRep {
    let in_basis = gellmann_basis(map.in_dim()).expect("basis");
    let out_basis = gellmann_basis(map.out_dim()).expect("basis");
    build_rep(map, &in_basis, &out_basis).expect("rep")
}

#[test]
fn a01_weyl_basis_validity() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 2..=8 {
        let basis = weyl_basis(n).expect("weyl basis");
        assert_eq!(basis.len(), n * n - 1, "n = {n}: element count");
        let residual = basis.gram_residual();
        assert!(residual <= 1e-12, "n = {n}: Gram residual {residual:e}");
        worst = worst.max(residual);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 2.0, "runtime {elapsed:?} exceeds 2 s");
    println!(
        "acceptance 01 weyl basis validity: pass (max Gram residual {worst:.2e}, {:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn a02_exact_qubit_norm_vs_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_001);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let out_dim = 2 + i % 3;
        let kraus = 1 + i % 4;
        let map = HermitianMap::Kraus(random_channel(2, out_dim, kraus, &mut rng));
        let exact = qubit_norm12(&map).expect("qubit formula");
        let oracle = oracle_norm_1to2(&map, 1000 + i as u64, 8).expect("oracle");
        let err = (exact.norm12 - oracle.value).abs();
        assert!(
            err <= 1e-6,
            "case {i} (2 -> {out_dim}, {kraus} Kraus): |exact - oracle| = {err:e}"
        );
        worst = worst.max(err);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "runtime {elapsed:?} exceeds 2 min");
    println!(
        "acceptance 02 exact qubit norm vs oracle: pass (200 channels, worst {worst:.2e}, {:.1} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn a03_qubit_entropy_formula_vs_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(30_001);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let kraus = 1 + i % 4;
        let map = HermitianMap::Kraus(random_channel(2, 2, kraus, &mut rng));
        for alpha in [1.0, 2.0, f64::INFINITY] {
            let exact = qubit_smin_alpha(&map, alpha).expect("qubit entropy");
            let oracle = oracle_smin_alpha(&map, alpha, 3000 + i as u64, 8).expect("oracle");
            let err = (exact - oracle.value).abs();
            assert!(err <= 1e-6, "case {i}, alpha {alpha}: |exact - oracle| = {err:e}");
            worst = worst.max(err);
        }
    }
    println!(
        "acceptance 03 qubit entropy formula vs oracle: pass (100 channels x 3 alphas, worst {worst:.2e})"
    );
}

#[test]
fn a04_envelope_curve_properties() {
    let mut prev = f64::INFINITY;
    for i in 1..=1000 {
        let c = i as f64 / 1000.0;
        let g = g_alpha(c, 1.0).expect("envelope").value;
        assert!(g >= -c.log2(), "c = {c}: g = {g} < -log2 c = {}", -c.log2());
        assert!(g <= prev, "c = {c}: g = {g} rises above {prev}");
        if c >= 0.5 {
            let h2 = binary_renyi(qubit_f(c.sqrt()).expect("f"), 1.0).expect("h2");
            assert!((g - h2).abs() <= 1e-12, "c = {c}: binary form off by {:e}", (g - h2).abs());
        }
        prev = g;
    }
    let mut worst = 0.0f64;
    for k in 1..=6 {
        let c = 1.0 / k as f64;
        let g = g_alpha(c, 1.0).expect("envelope").value;
        let gap = (g - (k as f64).log2()).abs();
        assert!(gap <= 1e-12, "k = {k}: |g(1/k) - log2 k| = {gap:e}");
        worst = worst.max(gap);
    }
    println!(
        "acceptance 04 envelope curve properties: pass (1000-point grid, worst touch-point gap {worst:.2e})"
    );
}

#[test]
fn a05_entropy_lower_bound_theorem() {
    let mut rng = ChaCha8Rng::seed_from_u64(50_001);
    let mut worst_slack = f64::INFINITY;
    let mut worst_eq = 0.0f64;
    for i in 0..100 {
        let kraus = 2 + i % 2;
        let out_dim = 2 + i % 3;
        let in_dim = 2 + (i / 3) % 2;
        let map = HermitianMap::Kraus(random_channel(in_dim, out_dim, kraus, &mut rng));
        let norm = oracle_norm_1to2(&map, 5000 + i as u64, 32).expect("norm oracle");
        let smin = oracle_smin_alpha(&map, 1.0, 6000 + i as u64, 32).expect("entropy oracle");
        let c = (norm.value * norm.value).min(1.0);
        let g = g_alpha(c, 1.0).expect("envelope").value;
        assert!(
            smin.value >= g - 1e-8,
            "case {i} ({in_dim} -> {out_dim}): S_min,1 = {} < g = {g}",
            smin.value
        );
        worst_slack = worst_slack.min(smin.value - g);
        if out_dim == 2 {
            let eq = (smin.value - g).abs();
            assert!(eq <= 1e-6, "case {i}: qubit-output equality off by {eq:e}");
            worst_eq = worst_eq.max(eq);
        }
    }
    println!(
        "acceptance 05 entropy lower bound: pass (100 channels, min slack {worst_slack:.2e}, worst qubit-output equality {worst_eq:.2e})"
    );
}

#[test]
fn a06_dwcc_diagonal_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(60_001);
    let mut worst_diag = 0.0f64;
    let mut worst_gamma = 0.0f64;
    for i in 0..50 {
        let n = 3 + i % 3;
        let slots: Vec<(usize, usize)> = (0..n * n).map(|s| (s / n, s % n)).collect();
        let count = 2 + i % 4;
        let support: Vec<(usize, usize)> =
            slots.choose_multiple(&mut rng, count).copied().collect();
        let probs = random_probability_vector(count, &mut rng);
        let weights: Vec<(usize, usize, f64)> = support
            .iter()
            .zip(&probs)
            .map(|(&(x, y), &w)| (x, y, w))
            .collect();

        let closed = gamma_dwcc(n, &weights).expect("closed form");
        let coeff: HashMap<(usize, usize), f64> = closed.coefficients.iter().copied().collect();

        let map = HermitianMap::Kraus(family_dwcc(n, &weights).expect("channel"));
        let basis = weyl_basis(n).expect("basis");
        let rep = build_rep(&map, &basis, &basis).expect("rep");
        for (j, idx) in weyl_index_set(n).iter().enumerate() {
            let expected = coeff[&(idx.x, idx.y)];
            let err = (rep.a[(j, j)] - expected).abs();
            assert!(err <= 1e-10, "case {i} (n = {n}), slot {idx:?}: diag off by {err:e}");
            worst_diag = worst_diag.max(err);
            for m in 0..rep.a.ncols() {
                if m != j {
                    let off = rep.a[(j, m)].abs();
                    assert!(off <= 1e-10, "case {i}: off-diagonal {off:e}");
                }
            }
        }
        let dense = gamma(&rep).expect("gamma");
        let gap = (closed.gamma.gamma - dense.gamma).abs();
        assert!(gap <= 1e-12, "case {i}: closed vs dense gamma gap {gap:e}");
        worst_gamma = worst_gamma.max(gap);
    }
    println!(
        "acceptance 06 weyl-covariant diagonal action: pass (50 instances, worst diag error {worst_diag:.2e}, worst gamma gap {worst_gamma:.2e})"
    );
}

#[test]
fn a07_complement_diagonal_and_gamma() {
    let n = 5;
    let basis5 = weyl_basis(n).expect("basis");
    let mut worst = 0.0f64;

    let mut check_subset = |pairs: &[(usize, usize)], tag: &str| {
        let k = pairs.len();
        let psi = family_dwcc_uniform_subset(n, pairs).expect("channel");
        let comp = HermitianMap::Kraus(psi.complementary().expect("complement"));
        let out_basis = gellmann_basis(comp.out_dim()).expect("basis");
        let rep = build_rep(&comp, &basis5, &out_basis).expect("rep");
        let table: HashMap<(usize, usize), usize> =
            n_table(n, pairs).expect("table").into_iter().collect();
        let scale = n as f64 / (2.0 * (k * k) as f64);
        let mut local = 0.0f64;
        for (j, idx) in weyl_index_set(n).iter().enumerate() {
            let expected = scale * table[&(idx.x, idx.y)] as f64;
            let err = (rep.a[(j, j)] - expected).abs();
            assert!(err <= 1e-10, "{tag}, slot {idx:?}: diag off by {err:e}");
            local = local.max(err);
            for m in 0..rep.a.ncols() {
                if m != j {
                    assert!(rep.a[(j, m)].abs() <= 1e-10, "{tag}: off-diagonal");
                }
            }
        }
        worst = worst.max(local);
        rep
    };

    let rep = check_subset(&ADDITIVE_PAIRS, "four-pair example");
    let expected_table: HashMap<(usize, usize), usize> = [
        ((1, 2), 2), ((1, 3), 0), ((1, 4), 2), ((2, 3), 0), ((2, 4), 0), ((3, 4), 0),
        ((1, 1), 2), ((2, 2), 0), ((0, 1), 2), ((0, 2), 2), ((1, 0), 2), ((2, 0), 0),
    ]
    .into_iter()
    .collect();
    let actual_table: HashMap<(usize, usize), usize> =
        n_table(n, &ADDITIVE_PAIRS).expect("table").into_iter().collect();
    assert_eq!(actual_table, expected_table, "four-pair counting table");
    let closed = gamma_complement(n, &ADDITIVE_PAIRS).expect("closed form");
    assert!((closed.gamma.gamma - 0.5).abs() <= 1e-12, "closed gamma {}", closed.gamma.gamma);
    let dense = gamma(&rep).expect("gamma");
    assert!((dense.gamma - 0.5).abs() <= 1e-12, "dense gamma {}", dense.gamma);

    let mut rng = ChaCha8Rng::seed_from_u64(70_001);
    let nonzero: Vec<(usize, usize)> = (1..n * n).map(|s| (s / n, s % n)).collect();
    for i in 0..20 {
        let k = 2 + i % 3;
        let pairs: Vec<(usize, usize)> =
            nonzero.choose_multiple(&mut rng, k).copied().collect();
        check_subset(&pairs, &format!("random subset {i}"));
    }
    println!(
        "acceptance 07 complement diagonal and gamma: pass (example table exact, gamma 1/2, worst diag error {worst:.2e})"
    );
}

#[test]
fn a08_five_dim_additivity_certificate() {
    let start = Instant::now();
    let psi = family_dwcc_uniform_subset(5, &ADDITIVE_PAIRS).expect("channel");
    let comp = HermitianMap::Kraus(psi.complementary().expect("complement"));
    let basis = gellmann_basis(comp.in_dim()).expect("basis");

    let verdict = c_add_test(&comp, &basis, 42, 500).expect("additivity test");
    assert!(
        matches!(verdict.status, AdditivityStatus::Additive),
        "status {:?}, gamma {}, oracle norm^2 {}",
        verdict.status,
        verdict.gamma,
        verdict.oracle_norm_sq
    );

    let two = oracle_tensor(&comp, &comp, TensorObjective::Norm12, 42, 500).expect("tensor oracle");
    let joint_sq = two.joint.value * two.joint.value;
    assert!(
        (joint_sq - 0.25).abs() <= 1e-6,
        "two-copy norm^2 = {joint_sq} vs 1/4"
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 600.0, "runtime {elapsed:?} exceeds 10 min");
    println!(
        "acceptance 08 five-dim additivity certificate: pass (status additive, two-copy norm^2 off by {:.2e}, {:.1} s)",
        (joint_sq - 0.25).abs(),
        elapsed.as_secs_f64()
    );
}

#[test]
fn a09_saturation_family() {
    let mut worst_norm = 0.0f64;
    let mut worst_gap = 0.0f64;
    let mut case = 0u64;
    let mut check = |map: HermitianMap, tag: String| {
        case += 1;
        let rep = gellmann_rep(&map);
        let g = gamma(&rep).expect("gamma");
        let norm = oracle_norm_1to2(&map, 9000 + case, 24).expect("norm oracle");
        let err = (g.gamma - norm.value * norm.value).abs();
        assert!(err <= 1e-8, "{tag}: |gamma - norm^2| = {err:e}");
        worst_norm = worst_norm.max(err);
        let two = oracle_tensor(&map, &map, TensorObjective::Norm12, 9500 + case, 24)
            .expect("tensor oracle");
        assert!(two.gap <= 1e-6, "{tag}: multiplicativity gap {:e}", two.gap);
        worst_gap = worst_gap.max(two.gap);
    };
    for n in 2..=4 {
        for t in [1.0, -1.0, 0.5, -0.5, 0.0] {
            check(
                family_depolarizing(n, t).expect("depolarizing"),
                format!("depolarizing n={n} t={t}"),
            );
        }
        check(
            HermitianMap::Kraus(family_werner_holevo(n).expect("channel")),
            format!("werner-holevo n={n}"),
        );
    }
    println!(
        "acceptance 09 saturation family: pass (18 instances, worst |gamma - norm^2| {worst_norm:.2e}, worst tensor gap {worst_gap:.2e})"
    );
}

#[test]
fn a10_capacity_bound_closed_form() {
    let mut worst = 0.0f64;
    for n in 3..=6 {
        let map = HermitianMap::Kraus(family_werner_holevo(n).expect("channel"));
        let bound = capacity_bound(&gellmann_rep(&map)).expect("capacity");
        let nf = n as f64;
        let err = (bound.capacity_bits - (nf.log2() - (nf - 1.0).log2())).abs();
        assert!(err <= 1e-12, "n = {n}: capacity off by {err:e}");
        worst = worst.max(err);
    }
    println!("acceptance 10 capacity bound closed form: pass (n = 3..6, worst error {worst:.2e})");
}

#[test]
fn a11_tensor_norm_bound_sandwich() {
    let mut rng = ChaCha8Rng::seed_from_u64(110_001);
    let mut min_slack = f64::INFINITY;
    for i in 0..50 {
        let n_phi = 2 + i % 2;
        let phi = HermitianMap::Kraus(random_unital_channel(n_phi, 2 + i % 2, &mut rng));
        let omega = HermitianMap::Kraus(random_channel(
            2 + (i / 2) % 2,
            2 + (i / 3) % 2,
            2 + i % 2,
            &mut rng,
        ));
        let g = gamma(&gellmann_rep(&phi)).expect("gamma");
        let omega_norm = oracle_norm_1to2(&omega, 11_000 + i as u64, 48).expect("norm oracle");
        let bound = hybrid_bound(&gellmann_rep(&phi), omega_norm.value).expect("bound");
        let joint = oracle_tensor(&phi, &omega, TensorObjective::Norm12, 11_500 + i as u64, 48)
            .expect("tensor oracle");
        let slack = bound.bound - joint.joint.value;
        assert!(
            slack >= -1e-8,
            "case {i}: joint {} > sqrt(gamma = {}) * omega norm = {}",
            joint.joint.value,
            g.gamma,
            bound.bound
        );
        min_slack = min_slack.min(slack);
    }
    println!(
        "acceptance 11 tensor norm bound sandwich: pass (50 pairs, min slack {min_slack:.2e})"
    );
}

#[test]
fn a12_p_to_two_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(120_001);
    let mut min_slack = f64::INFINITY;
    let mut worst_p1 = 0.0f64;
    for i in 0..10 {
        let phi = HermitianMap::Kraus(random_unital_channel(2 + i % 2, 2 + i % 2, &mut rng));
        let omega = HermitianMap::Kraus(random_channel(
            2 + (i / 2) % 2,
            2 + i % 2,
            2 + (i / 3) % 2,
            &mut rng,
        ));
        let rep = gellmann_rep(&phi);
        let joint_map = phi.tensor(&omega).expect("tensor map");
        for p in [1.0, 1.5, 2.0] {
            let omega_norm =
                oracle_norm_p2_complex(&omega, p, 12_000 + i as u64, 32).expect("factor oracle");
            let bound = p2_bound_complex(&rep, omega_norm.value, p).expect("bound");
            let joint =
                oracle_norm_p2_complex(&joint_map, p, 12_500 + i as u64, 48).expect("joint oracle");
            let slack = bound.bound - joint.value;
            assert!(
                slack >= -1e-8,
                "case {i}, p = {p}: joint {} > bound {}",
                joint.value,
                bound.bound
            );
            min_slack = min_slack.min(slack);
            if p == 1.0 {
                let gamma_form = hybrid_bound(&rep, omega_norm.value).expect("gamma bound");
                let err = (bound.bound - gamma_form.bound).abs();
                assert!(err <= 1e-12, "case {i}: p = 1 bound differs from gamma bound by {err:e}");
                worst_p1 = worst_p1.max(err);
            }
        }
    }
    println!(
        "acceptance 12 p-to-2 bound: pass (30 cases, min slack {min_slack:.2e}, worst p=1 mismatch {worst_p1:.2e})"
    );
}

#[test]
fn a13_complement_spectra_and_entropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(130_001);
    let mut worst_spec = 0.0f64;
    let mut worst_smin = 0.0f64;
    for i in 0..50 {
        let in_dim = 2 + i % 2;
        let out_dim = 2 + i % 3;
        let kraus = 2 + (i / 2) % 3;
        let channel = random_channel(in_dim, out_dim, kraus, &mut rng);
        let comp = channel.complementary().expect("complement");

        let psi = random_unit_vector(in_dim, &mut rng);
        let rho = &psi * psi.adjoint();
        let spec_direct = eigvals_hermitian(&channel.apply(&rho).expect("apply"));
        let spec_comp = eigvals_hermitian(&comp.apply(&rho).expect("apply"));
        let len = spec_direct.len().max(spec_comp.len());
        for j in 0..len {
            let a = spec_direct.get(j).copied().unwrap_or(0.0);
            let b = spec_comp.get(j).copied().unwrap_or(0.0);
            let err = (a - b).abs();
            assert!(err <= 1e-10, "case {i}, eigenvalue {j}: {a} vs {b}");
            worst_spec = worst_spec.max(err);
        }

        let map = HermitianMap::Kraus(channel);
        let comp_map = HermitianMap::Kraus(comp);
        let s_direct = oracle_smin_alpha(&map, 2.0, 13_000 + i as u64, 32).expect("entropy");
        let s_comp = oracle_smin_alpha(&comp_map, 2.0, 13_500 + i as u64, 32).expect("entropy");
        let err = (s_direct.value - s_comp.value).abs();
        assert!(err <= 1e-6, "case {i}: S_min,2 {} vs {}", s_direct.value, s_comp.value);
        worst_smin = worst_smin.max(err);
    }
    println!(
        "acceptance 13 complement spectra and entropy: pass (50 channels, worst spectrum gap {worst_spec:.2e}, worst S_min,2 gap {worst_smin:.2e})"
    );
}
