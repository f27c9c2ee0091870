//! Importance sampling in the dual domain: independent bits on the chords of
//! the cospanning tree, branches completed by cutset parity, weights on the
//! branches.

use std::time::Instant;

use rand_core::RngCore;

use crate::bitset::{words_for, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::TreePartition;
use crate::model::{log_prefactor_dual, log_proposal_normalizer_dual, IsingModel};
use crate::numeric::ln_tanh;
use crate::sampler::{
    accumulate_samples, draw_bits_into, finish_report, Assignment, ChordAssignment, Domain,
    EstimateReport, SamplerConfig,
};

/// Probability that a chord bit comes out 1 under the dual proposal:
/// `tanh J / (1 + tanh J)`. Requires a non-negative coupling.
pub fn chord_probability_one(coupling: f64) -> f64 {
    assert!(
        coupling >= 0.0,
        "dual proposal needs a non-negative coupling"
    );
    let t = coupling.tanh();
    t / (1.0 + t)
}

/// Draws one independent bit per chord, in ascending chord-id order.
pub fn draw_chord_assignment(
    model: &IsingModel,
    partition: &TreePartition,
    rng: &mut impl RngCore,
) -> Result<ChordAssignment> {
    assert!(partition.is_partition_of(model.graph()));
    let mut probs = Vec::with_capacity(partition.chord_count());
    for &e in partition.chord_ids() {
        let j = model.coupling(e);
        if j < 0.0 {
            return Err(Error::NonFerromagneticDual { coupling: j });
        }
        probs.push(chord_probability_one(j));
    }
    let mut words = vec![0u64; words_for(probs.len())];
    draw_bits_into(&mut words, &probs, rng);
    Ok(ChordAssignment::from_words(words, probs.len()))
}

/// Extends a chord configuration to all edges: each branch bit is the parity
/// of the chord bits on its fundamental cutset.
pub fn complete_branches(partition: &TreePartition, chords: &ChordAssignment) -> Assignment {
    assert_eq!(chords.len(), partition.chord_count());
    let mut bits = EdgeSet::new(partition.graph().edge_count());
    for (pos, &e) in partition.chord_ids().iter().enumerate() {
        if chords.get(pos) {
            bits.insert(e);
        }
    }
    for (bpos, &e) in partition.branch_ids().iter().enumerate() {
        if partition.branch_parity(&chords.words, bpos) {
            bits.insert(e);
        }
    }
    Assignment::new(bits, Domain::Dual)
}

/// Importance-sampling estimate of `ln Z` from the dual domain.
///
/// Samples chord configurations from the cotree proposal, weights each by
/// the reduced branch factors, and rescales by the proposal normalizer and
/// the dual prefactor. Requires non-negative couplings on every edge.
/// Reports are bit-identical for a fixed `(model, partition, sample_count,
/// seed)` regardless of thread count.
pub fn estimate_dual(
    model: &IsingModel,
    partition: &TreePartition,
    config: &SamplerConfig,
) -> Result<EstimateReport> {
    assert!(partition.is_partition_of(model.graph()));
    let started = Instant::now();
    model.require_ferromagnetic()?;

    let probs: Vec<f64> = partition
        .chord_ids()
        .iter()
        .map(|&e| chord_probability_one(model.coupling(e)))
        .collect();
    // log-weight contribution of each branch when its parity bit is 1;
    // a zero coupling makes that weight zero (negative infinity)
    let branch_drop: Vec<f64> = partition
        .branch_ids()
        .iter()
        .map(|&e| ln_tanh(model.coupling(e)))
        .collect();

    let acc = accumulate_samples(
        config.sample_count,
        config.seed,
        config.threads,
        words_for(probs.len()),
        |rng, scratch| {
            draw_bits_into(scratch, &probs, rng);
            let mut log_weight = 0.0;
            for (bpos, &drop) in branch_drop.iter().enumerate() {
                if partition.branch_parity(scratch, bpos) {
                    log_weight += drop;
                }
            }
            log_weight
        },
    );

    Ok(finish_report(
        &acc,
        log_proposal_normalizer_dual(model, partition)?,
        log_prefactor_dual(model, partition)?,
        config,
        started,
    ))
}
