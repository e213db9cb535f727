use std::fmt;

use rayon::prelude::*;

use super::Experiment;
use crate::error::Result;
use crate::errorprop::{path_expansion, propagate, variance_bound_from_terms, ErrorGraph};
use crate::graph::{component_census, BinHasher, ComponentClass, SupportGraph};
use crate::prf::derive_seed;

pub const GRAPH_CSV_HEADER: &str = "seed,k,b,d,n_components,n_tree,n_unicyclic,n_complex,largest_signals";
pub const ERROR_CSV_HEADER: &str = "trial,node,iteration,e_i,p_i_mp,p_i_actual,var_bound";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphRow {
    pub seed: u64,
    pub k: usize,
    pub b: usize,
    pub d: usize,
    pub n_components: usize,
    pub n_tree: usize,
    pub n_unicyclic: usize,
    pub n_complex: usize,
    pub largest_signals: usize,
}

impl fmt::Display for GraphRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{},{},{},{}",
            self.seed,
            self.k,
            self.b,
            self.d,
            self.n_components,
            self.n_tree,
            self.n_unicyclic,
            self.n_complex,
            self.largest_signals
        )
    }
}

/// Component census of the support graph of `k` signals over `b` bins, for
/// seeds `0..seeds`.
pub fn analyze_graph(k: usize, b: usize, d: usize, seeds: u64) -> Vec<GraphRow> {
    (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let hasher = BinHasher::new(b, d, derive_seed(&[seed, k as u64, b as u64, d as u64]));
            let report = component_census(&SupportGraph::build(0..k as u64, &hasher));
            GraphRow {
                seed,
                k,
                b,
                d,
                n_components: report.components.len(),
                n_tree: report.count(ComponentClass::Tree),
                n_unicyclic: report.count(ComponentClass::Unicyclic),
                n_complex: report.count(ComponentClass::Complex),
                largest_signals: report.largest_signals(),
            }
        })
        .collect()
}

/// Per-node error breakdown of one decoded trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub trial: usize,
    pub node: u64,
    pub iteration: usize,
    pub e_i: f64,
    /// Error predicted by message passing.
    pub p_i_mp: f64,
    /// `x_i - x^_i` as actually decoded.
    pub p_i_actual: f64,
    /// Absent when the node's component has more than one cycle.
    pub var_bound: Option<f64>,
}

impl fmt::Display for ErrorRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{:e},{:e},{:e},{}",
            self.trial,
            self.node,
            self.iteration,
            self.e_i,
            self.p_i_mp,
            self.p_i_actual,
            self.var_bound.map(|v| format!("{v:e}")).unwrap_or_default()
        )
    }
}

/// Decodes `trials` trials at the first configured SNR and compares the
/// message-passing error of every recovered node against its actual error.
/// The true noise realization is fed to the point errors.
pub fn analyze_errors(experiment: &Experiment, trials: usize) -> Result<Vec<ErrorRow>> {
    let config = experiment.config();
    let snr = config.snr_db[0];
    let per_trial: Vec<Vec<ErrorRow>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let outcome = experiment.run_trial_detailed(t, snr, config.trial_seed(0, t))?;
            let graph = ErrorGraph::from_decode(&outcome.decoded);
            let e = graph.point_errors(&outcome.generator, &outcome.noise)?;
            let prop = propagate(&graph, &e, &outcome.generator)?;
            graph
                .nodes()
                .iter()
                .enumerate()
                .map(|(pos, node)| {
                    let estimate = outcome.decoded.estimate.get(node.index);
                    let var_bound = path_expansion(&graph, node.index, &outcome.generator)
                        .ok()
                        .map(|terms| variance_bound_from_terms(&terms, outcome.params.sigma2, outcome.generator.c()));
                    Ok(ErrorRow {
                        trial: t,
                        node: node.index,
                        iteration: node.iteration,
                        e_i: e[pos],
                        p_i_mp: prop.p[pos],
                        p_i_actual: outcome.signal.get(node.index) - estimate,
                        var_bound,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}
