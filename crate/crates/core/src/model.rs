//! Couplings, the four local factor families, and the closed-form prefactors
//! and proposal normalizers. All products are carried as natural logarithms.

use crate::error::{Error, Result};
use crate::graph::{Graph, TreePartition};
use crate::numeric::{ln_one_plus_exp, ln_tanh, ln_two_cosh, ln_two_sinh};

/// An Ising model: a connected graph plus one real coupling per edge.
///
/// Couplings are in natural units; inverse temperature is absorbed into
/// them. There is no external field.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    graph: Graph,
    couplings: Vec<f64>,
}

impl IsingModel {
    pub fn new(graph: Graph, couplings: Vec<f64>) -> Result<Self> {
        if couplings.len() != graph.edge_count() {
            return Err(Error::CouplingCountMismatch {
                expected: graph.edge_count(),
                got: couplings.len(),
            });
        }
        if let Some(edge) = couplings.iter().position(|j| !j.is_finite()) {
            return Err(Error::InvalidCoupling { edge });
        }
        Ok(Self { graph, couplings })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn coupling(&self, edge: usize) -> f64 {
        self.couplings[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// First edge whose coupling is negative, if any. The dual domain
    /// requires all couplings to be non-negative.
    pub fn first_negative_coupling(&self) -> Option<(usize, f64)> {
        self.couplings
            .iter()
            .enumerate()
            .find(|(_, j)| **j < 0.0)
            .map(|(e, &j)| (e, j))
    }

    pub(crate) fn require_ferromagnetic(&self) -> Result<()> {
        match self.first_negative_coupling() {
            Some((_, coupling)) => Err(Error::NonFerromagneticDual { coupling }),
            None => Ok(()),
        }
    }
}

/// Natural logarithm of a non-negative weight; the zero weight is negative
/// infinity. Never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogWeight(f64);

impl LogWeight {
    pub fn new(value: f64) -> Self {
        assert!(!value.is_nan(), "log-weight must not be NaN");
        Self(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero_weight(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

/// Log of the primal edge factor: `J` when the edge variable is 0 (endpoints
/// agree), `-J` when it is 1.
pub fn factor_primal(coupling: f64, bit: bool) -> LogWeight {
    LogWeight::new(if bit { -coupling } else { coupling })
}

/// Log of the primal factor with `exp(J)` factored out: `-2 J y`.
pub fn factor_primal_reduced(coupling: f64, bit: bool) -> LogWeight {
    LogWeight::new(if bit { -2.0 * coupling } else { 0.0 })
}

/// Log of the dual edge factor, the two-point Fourier transform of the
/// primal one: `ln(2 cosh J)` at 0 and `ln(2 sinh J)` at 1.
///
/// The 1-value requires `J >= 0`; at `J = 0` it is the zero weight.
pub fn factor_dual(coupling: f64, bit: bool) -> Result<LogWeight> {
    if !bit {
        return Ok(LogWeight::new(ln_two_cosh(coupling)));
    }
    if coupling < 0.0 {
        return Err(Error::NonFerromagneticDual { coupling });
    }
    Ok(LogWeight::new(ln_two_sinh(coupling)))
}

/// Log of the dual factor with `2 cosh J` factored out: `ỹ ln(tanh J)`.
pub fn factor_dual_reduced(coupling: f64, bit: bool) -> Result<LogWeight> {
    if coupling < 0.0 {
        return Err(Error::NonFerromagneticDual { coupling });
    }
    Ok(LogWeight::new(if bit { ln_tanh(coupling) } else { 0.0 }))
}

/// `ln 2 + sum_m J_m`; adding this to the reduced primal log-sum gives
/// `ln Z`.
pub fn log_prefactor_primal(model: &IsingModel) -> f64 {
    std::f64::consts::LN_2 + model.couplings().iter().sum::<f64>()
}

/// `sum_m ln(2 cosh J_m) - (|E| - |V|) ln 2`; adding this to the reduced
/// dual log-sum gives `ln Z`. The subtracted term is the log of the duality
/// scale `2^(|E| - |V|) = 2^(|T̄| - 1)`.
pub fn log_prefactor_dual(model: &IsingModel, partition: &TreePartition) -> Result<f64> {
    model.require_ferromagnetic()?;
    let log_scale = (partition.chord_count() as f64 - 1.0) * std::f64::consts::LN_2;
    let log_b: f64 = model.couplings().iter().map(|&j| ln_two_cosh(j)).sum();
    Ok(log_b - log_scale)
}

/// Log normalizer of the primal proposal on the branches:
/// `sum_{m in T} ln(1 + exp(-2 J_m))`.
pub fn log_proposal_normalizer_primal(model: &IsingModel, partition: &TreePartition) -> f64 {
    debug_assert!(partition.is_partition_of(model.graph()));
    partition
        .branch_ids()
        .iter()
        .map(|&e| ln_one_plus_exp(-2.0 * model.coupling(e)))
        .sum()
}

/// Log normalizer of the dual proposal on the chords:
/// `sum_{m in T̄} ln(1 + tanh J_m)`.
pub fn log_proposal_normalizer_dual(model: &IsingModel, partition: &TreePartition) -> Result<f64> {
    debug_assert!(partition.is_partition_of(model.graph()));
    let mut total = 0.0;
    for &e in partition.chord_ids() {
        let j = model.coupling(e);
        if j < 0.0 {
            return Err(Error::NonFerromagneticDual { coupling: j });
        }
        total += j.tanh().ln_1p();
    }
    Ok(total)
}
