//! Estimator behavior past the acceptance gate: variance limits under
//! coupling sweeps, agreement between the two samplers, and invariance of
//! the enumeration oracles to the tree choice.

mod common;

use treeising::oracle::{brute_force_log_z, brute_force_log_z_dual, brute_force_log_z_primal};
use treeising::topology;
use treeising::{estimate_dual, estimate_primal, IsingModel, SamplerConfig};

/// Fixed torus partition; couplings set per edge role afterwards.
fn torus_with_role_couplings(
    branch_j: f64,
    chord_j: f64,
) -> (IsingModel, treeising::TreePartition) {
    let graph = topology::lattice_2d(3, 3, true).unwrap();
    let tie_break = treeising::maximum_spanning_tree(&graph, &[1.0; 18]);
    let couplings: Vec<f64> = (0..graph.edge_count())
        .map(|e| {
            if tie_break.is_branch(e) {
                branch_j
            } else {
                chord_j
            }
        })
        .collect();
    let model = IsingModel::new(graph, couplings).unwrap();
    (model, tie_break)
}

#[test]
fn primal_chi_square_shrinks_as_chord_couplings_weaken() {
    // fixed branch couplings and a shared seed: the drawn branch bits are
    // identical across settings, so the realized chi-square must decrease
    let config = SamplerConfig::new(50_000, 7);
    let mut previous = f64::INFINITY;
    for &chord_j in &[0.8, 0.4, 0.2, 0.1, 0.0] {
        let (model, partition) = torus_with_role_couplings(1.0, chord_j);
        let report = estimate_primal(&model, &partition, &config);
        assert!(
            report.empirical_chi_square <= previous,
            "chi2 {} at chord J {chord_j} exceeds {previous}",
            report.empirical_chi_square
        );
        previous = report.empirical_chi_square;
    }
    assert_eq!(previous, 0.0, "all weights identical at chord J = 0");
}

#[test]
fn dual_chi_square_shrinks_as_branch_couplings_strengthen() {
    let config = SamplerConfig::new(50_000, 7);
    let mut previous = f64::INFINITY;
    for &branch_j in &[0.5, 1.0, 2.0, 4.0, 8.0] {
        let (model, partition) = torus_with_role_couplings(branch_j, 0.5);
        let report = estimate_dual(&model, &partition, &config).unwrap();
        assert!(
            report.empirical_chi_square < previous,
            "chi2 {} at branch J {branch_j} does not improve on {previous}",
            report.empirical_chi_square
        );
        previous = report.empirical_chi_square;
    }
    assert!(previous < 1e-6, "tanh(8) is 1 to seven digits");
}

/// Triangle at unit coupling, both estimators, 3 standard errors.
/// Stochastic test with a fixed seed.
#[test]
fn triangle_estimates_match_enumeration_within_three_standard_errors() {
    let graph = topology::periodic_chain(3).unwrap();
    let couplings = topology::couplings_constant(&graph, 1.0);
    let model = IsingModel::new(graph, couplings).unwrap();
    let partition = common::partition_on_abs(&model);
    let exact = brute_force_log_z(&model).unwrap();
    let config = SamplerConfig::new(100_000, 7);

    let primal = estimate_primal(&model, &partition, &config);
    assert!((primal.log_estimate - exact).abs() <= 3.0 * primal.std_error_log);
    let dual = estimate_dual(&model, &partition, &config).unwrap();
    assert!((dual.log_estimate - exact).abs() <= 3.0 * dual.std_error_log);
}

/// Both estimators converge to the enumerated value. Stochastic test with
/// fixed seeds; 4 standard errors of headroom.
#[test]
fn estimators_agree_with_enumeration_within_four_standard_errors() {
    let config = SamplerConfig::new(100_000, 7);
    let cases: Vec<IsingModel> = vec![
        {
            let g = topology::periodic_chain(8).unwrap();
            let j = topology::couplings_constant(&g, 0.7);
            IsingModel::new(g, j).unwrap()
        },
        {
            let g = topology::lattice_2d(3, 3, false).unwrap();
            let j = topology::couplings_uniform(&g, 0.2, 0.8, 31);
            IsingModel::new(g, j).unwrap()
        },
        {
            let g = topology::complete_graph(5).unwrap();
            let j = topology::couplings_uniform(&g, 0.05, 0.5, 32);
            IsingModel::new(g, j).unwrap()
        },
    ];
    for model in &cases {
        let partition = common::partition_on_abs(model);
        let exact = brute_force_log_z(model).unwrap();
        let primal = estimate_primal(model, &partition, &config);
        assert!(
            (primal.log_estimate - exact).abs() <= 4.0 * primal.std_error_log,
            "primal off by {} vs 4 SE {}",
            (primal.log_estimate - exact).abs(),
            4.0 * primal.std_error_log
        );
        let dual = estimate_dual(model, &partition, &config).unwrap();
        assert!(
            (dual.log_estimate - exact).abs() <= 4.0 * dual.std_error_log,
            "dual off by {} vs 4 SE {}",
            (dual.log_estimate - exact).abs(),
            4.0 * dual.std_error_log
        );
    }
}

/// The enumerated edge-domain and dual partition functions do not depend on
/// which spanning tree the enumeration runs over.
#[test]
fn oracle_values_are_partition_invariant() {
    let mut rng = common::rng(0xbeef);
    for model in common::benchmark_models(0.05, 1.2).into_iter().step_by(4) {
        let reference = common::partition_on_abs(&model);
        let z_primal = brute_force_log_z_primal(&model, &reference).unwrap();
        let z_dual = brute_force_log_z_dual(&model, &reference).unwrap();
        for _ in 0..3 {
            let partition = common::random_partition(&mut rng, model.graph());
            let p = brute_force_log_z_primal(&model, &partition).unwrap();
            let d = brute_force_log_z_dual(&model, &partition).unwrap();
            assert!(
                (p - z_primal).abs() <= 1e-10,
                "edge-domain sum moved: {p} vs {z_primal}"
            );
            assert!(
                (d - z_dual).abs() <= 1e-10,
                "dual sum moved: {d} vs {z_dual}"
            );
        }
    }
}

/// The closed-form proposal normalizers equal the explicit sums over all
/// proposal configurations.
#[test]
fn proposal_normalizers_match_exhaustive_sums() {
    use treeising::numeric::LogSumExp;
    use treeising::{
        factor_dual_reduced, factor_primal_reduced, log_proposal_normalizer_dual,
        log_proposal_normalizer_primal,
    };

    let graph = topology::lattice_2d(3, 4, false).unwrap();
    let couplings = topology::couplings_uniform(&graph, -1.0, 1.4, 55);
    let model = IsingModel::new(graph, couplings).unwrap();
    let partition = common::partition_on_abs(&model);
    assert!(partition.branch_count() <= 16);

    let mut lse = LogSumExp::new();
    for counter in 0u64..1 << partition.branch_count() {
        let mut log_weight = 0.0;
        for (pos, &e) in partition.branch_ids().iter().enumerate() {
            log_weight += factor_primal_reduced(model.coupling(e), counter >> pos & 1 == 1).value();
        }
        lse.add(log_weight);
    }
    let explicit = lse.value();
    let closed = log_proposal_normalizer_primal(&model, &partition);
    assert!((explicit - closed).abs() <= 1e-10, "{explicit} vs {closed}");

    // dual normalizer on a ferromagnetic model with a fat cotree
    let graph = topology::complete_graph(6).unwrap();
    let couplings = topology::couplings_uniform(&graph, 0.0, 1.5, 56);
    let model = IsingModel::new(graph, couplings).unwrap();
    let partition = common::partition_on_abs(&model);
    assert!(partition.chord_count() <= 16);

    let mut lse = LogSumExp::new();
    for counter in 0u64..1 << partition.chord_count() {
        let mut log_weight = 0.0;
        for (pos, &e) in partition.chord_ids().iter().enumerate() {
            log_weight += factor_dual_reduced(model.coupling(e), counter >> pos & 1 == 1)
                .unwrap()
                .value();
        }
        lse.add(log_weight);
    }
    let explicit = lse.value();
    let closed = log_proposal_normalizer_dual(&model, &partition).unwrap();
    assert!((explicit - closed).abs() <= 1e-10, "{explicit} vs {closed}");
}
