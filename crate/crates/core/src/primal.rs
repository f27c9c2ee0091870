//! Importance sampling in the primal domain: independent bits on the
//! branches of a spanning tree, chords completed by cycle parity, weights on
//! the chords.

use std::time::Instant;

use rand_core::RngCore;

use crate::bitset::{words_for, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::TreePartition;
use crate::model::{log_prefactor_primal, log_proposal_normalizer_primal, IsingModel};
use crate::sampler::{
    accumulate_samples, draw_bits_into, finish_report, Assignment, BranchAssignment, Domain,
    EstimateReport, SamplerConfig,
};

/// Probability that a branch bit comes out 1 under the primal proposal:
/// `exp(-2J) / (1 + exp(-2J))`. Valid for couplings of any sign.
pub fn branch_probability_one(coupling: f64) -> f64 {
    if coupling >= 0.0 {
        let t = (-2.0 * coupling).exp();
        t / (1.0 + t)
    } else {
        1.0 / (1.0 + (2.0 * coupling).exp())
    }
}

/// Draws one independent bit per branch, in ascending branch-id order.
pub fn draw_branch_assignment(
    model: &IsingModel,
    partition: &TreePartition,
    rng: &mut impl RngCore,
) -> BranchAssignment {
    assert!(partition.is_partition_of(model.graph()));
    let probs: Vec<f64> = partition
        .branch_ids()
        .iter()
        .map(|&e| branch_probability_one(model.coupling(e)))
        .collect();
    let mut words = vec![0u64; words_for(probs.len())];
    draw_bits_into(&mut words, &probs, rng);
    BranchAssignment::from_words(words, probs.len())
}

/// Extends a branch configuration to all edges: each chord bit is the parity
/// of the branch bits on its fundamental cycle.
pub fn complete_chords(partition: &TreePartition, branches: &BranchAssignment) -> Assignment {
    assert_eq!(branches.len(), partition.branch_count());
    let mut bits = EdgeSet::new(partition.graph().edge_count());
    for (pos, &e) in partition.branch_ids().iter().enumerate() {
        if branches.get(pos) {
            bits.insert(e);
        }
    }
    for (cpos, &e) in partition.chord_ids().iter().enumerate() {
        if partition.chord_parity(&branches.words, cpos) {
            bits.insert(e);
        }
    }
    Assignment::new(bits, Domain::Primal)
}

/// Recovers a spin configuration from an edge configuration, anchoring the
/// root. Each edge bit is the disagreement of its endpoint spins, so the two
/// anchor choices give complementary spin vectors.
pub fn lift_to_spins(
    partition: &TreePartition,
    assignment: &Assignment,
    anchor_bit: bool,
) -> Result<Vec<bool>> {
    let graph = partition.graph();
    assert_eq!(assignment.edge_count(), graph.edge_count());
    let mut spins = vec![false; graph.vertex_count()];
    spins[partition.root()] = anchor_bit;
    for &v in partition.traversal.iter().skip(1) {
        spins[v] = spins[partition.parent_vertex[v]] ^ assignment.bit(partition.parent_edge[v]);
    }
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if spins[u] ^ spins[v] != assignment.bit(e) {
            return Err(Error::InconsistentAssignment);
        }
    }
    Ok(spins)
}

/// Importance-sampling estimate of `ln Z` from the primal domain.
///
/// Samples branch configurations from the tree proposal, weights each by the
/// reduced chord factors, and rescales by the proposal normalizer and the
/// primal prefactor. Reports are bit-identical for a fixed
/// `(model, partition, sample_count, seed)` regardless of thread count.
pub fn estimate_primal(
    model: &IsingModel,
    partition: &TreePartition,
    config: &SamplerConfig,
) -> EstimateReport {
    assert!(partition.is_partition_of(model.graph()));
    let started = Instant::now();

    let probs: Vec<f64> = partition
        .branch_ids()
        .iter()
        .map(|&e| branch_probability_one(model.coupling(e)))
        .collect();
    // log-weight contribution of each chord when its parity bit is 1
    let chord_drop: Vec<f64> = partition
        .chord_ids()
        .iter()
        .map(|&e| -2.0 * model.coupling(e))
        .collect();

    let acc = accumulate_samples(
        config.sample_count,
        config.seed,
        config.threads,
        words_for(probs.len()),
        |rng, scratch| {
            draw_bits_into(scratch, &probs, rng);
            let mut log_weight = 0.0;
            for (cpos, &drop) in chord_drop.iter().enumerate() {
                if partition.chord_parity(scratch, cpos) {
                    log_weight += drop;
                }
            }
            log_weight
        },
    );

    finish_report(
        &acc,
        log_proposal_normalizer_primal(model, partition),
        log_prefactor_primal(model),
        config,
        started,
    )
}
