// Trace how estimation errors travel along the peeling order.

use gldpc_cs::errorprop::{path_expansion, propagate, variance_bound_from_terms, ErrorGraph};
use gldpc_cs::harness::{Experiment, ExperimentConfig};

pub fn run_example() -> Result<usize, Box<dyn std::error::Error>> {
    let mut config = ExperimentConfig::recommended(1 << 30, 40);
    config.snr_db = vec![15.0];
    let experiment = Experiment::new(config)?;
    let outcome = experiment.run_trial_detailed(0, 15.0, experiment.config().trial_seed(0, 0))?;

    let graph = ErrorGraph::from_decode(&outcome.decoded);
    let e = graph.point_errors(&outcome.generator, &outcome.noise)?;
    let prop = propagate(&graph, &e, &outcome.generator)?;
    println!("{:>12} {:>4} {:>12} {:>12} {:>12} {:>10}", "index", "gen", "e_i", "p_i", "actual", "bound");
    let mut shown = 0;
    for (pos, node) in graph.nodes().iter().enumerate() {
        if graph.incoming(node.index)?.is_empty() {
            continue;
        }
        let actual = outcome.signal.get(node.index) - outcome.decoded.estimate.get(node.index);
        let bound = path_expansion(&graph, node.index, &outcome.generator)
            .map(|t| format!("{:.2e}", variance_bound_from_terms(&t, outcome.params.sigma2, outcome.generator.c())))
            .unwrap_or_else(|_| "-".into());
        println!(
            "{:>12} {:>4} {:>12.3e} {:>12.3e} {:>12.3e} {:>10}",
            node.index, node.iteration, e[pos], prop.p[pos], actual, bound
        );
        shown += 1;
    }
    println!("{shown} of {} recovered entries inherited error from earlier peels", graph.nodes().len());
    Ok(shown)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
