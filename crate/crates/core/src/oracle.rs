//! Exhaustive-enumeration references for the partition function in the spin
//! domain, the tree-constrained edge domain, and the dual domain, plus a
//! closed form for cycle graphs.
//!
//! All three enumerations use plain binary counting with a full weight
//! recompute per configuration and a streaming log-sum-exp; they are meant
//! for desk-scale verification, not production sizes.

use crate::bitset::get_bit;
use crate::error::{Error, Result};
use crate::graph::TreePartition;
use crate::model::IsingModel;
use crate::numeric::{ln_two_cosh, ln_two_sinh, LogSumExp};

/// Largest exponent accepted by the enumerators.
const MAX_BITS: usize = 26;

fn check_size(what: &'static str, bits: usize) -> Result<()> {
    if bits > MAX_BITS {
        return Err(Error::TooLarge {
            what,
            bits,
            limit: MAX_BITS,
        });
    }
    Ok(())
}

/// `ln Z` by summing the Boltzmann factor over all `2^|V|` spin
/// configurations.
pub fn brute_force_log_z(model: &IsingModel) -> Result<f64> {
    check_size("spin enumeration", model.vertex_count())?;
    let n = model.vertex_count();
    let mut lse = LogSumExp::new();
    for spins in 0u64..1 << n {
        let mut lw = 0.0;
        for (e, &(u, v)) in model.graph().edges().iter().enumerate() {
            let agree = (spins >> u ^ spins >> v) & 1 == 0;
            lw += if agree {
                model.coupling(e)
            } else {
                -model.coupling(e)
            };
        }
        lse.add(lw);
    }
    Ok(lse.value())
}

/// `ln Z_M`: sum over all `2^|T|` branch assignments, chords completed by
/// cycle parity, of the full edge-factor product. Equal to `ln Z - ln 2`.
pub fn brute_force_log_z_primal(model: &IsingModel, partition: &TreePartition) -> Result<f64> {
    assert!(partition.is_partition_of(model.graph()));
    check_size("branch enumeration", partition.branch_count())?;
    let branches = partition.branch_ids();
    let chords = partition.chord_ids();
    let word_count = crate::bitset::words_for(branches.len());
    let mut lse = LogSumExp::new();
    for assignment in 0u64..1 << branches.len() {
        let words = &[assignment][..word_count];
        let mut lw = 0.0;
        for (pos, &e) in branches.iter().enumerate() {
            let j = model.coupling(e);
            lw += if get_bit(words, pos) { -j } else { j };
        }
        for (cpos, &e) in chords.iter().enumerate() {
            let j = model.coupling(e);
            lw += if partition.chord_parity(words, cpos) {
                -j
            } else {
                j
            };
        }
        lse.add(lw);
    }
    Ok(lse.value())
}

/// `ln Z_d`: sum over all `2^|T̄|` chord assignments, branches completed by
/// cutset parity, of the dual edge-factor product. Equal to
/// `ln Z + (|E| - |V|) ln 2`. Requires non-negative couplings.
pub fn brute_force_log_z_dual(model: &IsingModel, partition: &TreePartition) -> Result<f64> {
    assert!(partition.is_partition_of(model.graph()));
    model.require_ferromagnetic()?;
    check_size("chord enumeration", partition.chord_count())?;
    let branches = partition.branch_ids();
    let chords = partition.chord_ids();
    let ln_cosh: Vec<f64> = (0..model.edge_count())
        .map(|e| ln_two_cosh(model.coupling(e)))
        .collect();
    let ln_sinh: Vec<f64> = (0..model.edge_count())
        .map(|e| ln_two_sinh(model.coupling(e)))
        .collect();
    let word_count = crate::bitset::words_for(chords.len());
    let mut lse = LogSumExp::new();
    for assignment in 0u64..1 << chords.len() {
        let words = &[assignment][..word_count];
        let mut lw = 0.0;
        for (cpos, &e) in chords.iter().enumerate() {
            lw += if get_bit(words, cpos) {
                ln_sinh[e]
            } else {
                ln_cosh[e]
            };
        }
        for (bpos, &e) in branches.iter().enumerate() {
            lw += if partition.branch_parity(words, bpos) {
                ln_sinh[e]
            } else {
                ln_cosh[e]
            };
        }
        lse.add(lw);
    }
    Ok(lse.value())
}

/// `ln Z` of a graph that is a single cycle through every vertex:
/// `ln(prod_m 2 cosh J_m + prod_m 2 sinh J_m)`. Valid for couplings of any
/// sign; the sinh product carries the sign.
pub fn closed_form_cycle_log_z(model: &IsingModel) -> Result<f64> {
    let graph = model.graph();
    if graph.edge_count() != graph.vertex_count() {
        return Err(Error::NotACycleGraph);
    }
    let mut degree = vec![0usize; graph.vertex_count()];
    for &(u, v) in graph.edges() {
        degree[u] += 1;
        degree[v] += 1;
    }
    if degree.iter().any(|&d| d != 2) {
        return Err(Error::NotACycleGraph);
    }
    // ln Z = sum ln(2 cosh J) + ln(1 + prod tanh J); the tanh product lies
    // strictly inside (-1, 1) for finite couplings.
    let log_cosh_product: f64 = model.couplings().iter().map(|&j| ln_two_cosh(j)).sum();
    let tanh_product: f64 = model.couplings().iter().map(|&j| j.tanh()).product();
    Ok(log_cosh_product + tanh_product.ln_1p())
}
