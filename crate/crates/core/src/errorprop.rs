//! Error propagation through the peeling process.
//!
//! With arbitrary amplitudes every estimate `x^_i` carries a residual error
//! `p_i = x_i - x^_i`. Peeling subtracts `x^_l g_l` from bin `j`, leaving
//! `p_l g_l` behind, and that leftover leaks into the next estimate drawn from
//! `j`. The [`ErrorGraph`] records exactly which recovered entries were
//! subtracted from which recovery bins, and [`propagate`] replays the
//! resulting linear recursion
//!
//! ```text
//! p_i = e_i - (1/c) g_i' q_j,   j = m(i)
//! q_j = sum_{l peeled into j} p_l g_l
//! ```
//!
//! where `e_i = -(1/c) g_i' z_{m(i)}` is the point error caused by the
//! recovery bin's own noise. [`path_expansion`] unrolls the same recursion
//! into a sum over directed paths, which is what the variance bound counts.

use std::collections::HashMap;

use crate::columns::{ColumnGenerator, NoiseModel};
use crate::decoder::DecodeResult;
use crate::error::{Error, Result};
use crate::graph::{ComponentClass, SupportGraph};

/// A recovered entry in the error graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorNode {
    pub index: u64,
    /// Peeling generation `t` with `index` in `S(t)`.
    pub iteration: usize,
    /// Bin `m(i)` the entry was recovered from.
    pub bin: usize,
}

/// Nodes in recovery order plus, for every recovery bin, the entries that
/// were subtracted from it before it was used.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorGraph {
    nodes: Vec<ErrorNode>,
    position: HashMap<u64, usize>,
    inputs: HashMap<usize, Vec<u64>>,
}

impl ErrorGraph {
    pub fn from_decode(result: &DecodeResult) -> Self {
        let nodes: Vec<ErrorNode> = result
            .trace
            .iter()
            .map(|t| ErrorNode { index: t.index, iteration: t.iteration, bin: t.bin })
            .collect();
        let recovery_bins: HashMap<usize, usize> = nodes.iter().enumerate().map(|(p, n)| (n.bin, p)).collect();
        let position: HashMap<u64, usize> = nodes.iter().enumerate().map(|(p, n)| (n.index, p)).collect();
        let mut inputs: HashMap<usize, Vec<u64>> = HashMap::new();
        for peel in &result.peels {
            // Subtractions into bins that never produced an estimate do not
            // feed any error.
            if let Some(&owner) = recovery_bins.get(&peel.bin) {
                debug_assert!(position[&peel.index] < owner);
                inputs.entry(peel.bin).or_default().push(peel.index);
            }
        }
        ErrorGraph { nodes, position, inputs }
    }

    /// Builds a graph from explicit parts. `nodes` must be in recovery order
    /// and every input of a node's bin must be an earlier node.
    pub fn from_parts(nodes: Vec<ErrorNode>, inputs: HashMap<usize, Vec<u64>>) -> Result<Self> {
        let position: HashMap<u64, usize> = nodes.iter().enumerate().map(|(p, n)| (n.index, p)).collect();
        if position.len() != nodes.len() {
            return Err(Error::InvalidParams("duplicate node in error graph".into()));
        }
        for (p, node) in nodes.iter().enumerate() {
            for l in inputs.get(&node.bin).into_iter().flatten() {
                match position.get(l) {
                    Some(&q) if q < p => {}
                    _ => {
                        return Err(Error::InvalidParams(format!(
                            "input {l} of bin {} is not recovered before node {}",
                            node.bin, node.index
                        )))
                    }
                }
            }
        }
        Ok(ErrorGraph { nodes, position, inputs })
    }

    pub fn nodes(&self) -> &[ErrorNode] {
        &self.nodes
    }

    pub fn node(&self, i: u64) -> Option<&ErrorNode> {
        self.position.get(&i).map(|&p| &self.nodes[p])
    }

    /// Entries subtracted from bin `j` before it was used, in peeling order.
    pub fn inputs(&self, bin: usize) -> &[u64] {
        self.inputs.get(&bin).map_or(&[], Vec::as_slice)
    }

    /// Incoming entries of node `i`: the inputs of its recovery bin.
    pub fn incoming(&self, i: u64) -> Result<&[u64]> {
        let node = self.node(i).ok_or(Error::UnknownNode(i))?;
        Ok(self.inputs(node.bin))
    }

    /// Undirected class of the component of `i`, counting nodes and recovery
    /// bins as vertices and subtractions and recoveries as edges.
    pub fn component_class(&self, i: u64) -> Result<ComponentClass> {
        let start = self.position.get(&i).copied().ok_or(Error::UnknownNode(i))?;
        // Vertex ids: nodes 0..len, recovery bins after them.
        let len = self.nodes.len();
        let bin_vertex: HashMap<usize, usize> =
            self.nodes.iter().enumerate().map(|(p, n)| (n.bin, len + p)).collect();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); 2 * len];
        let mut link = |a: usize, b: usize| {
            adjacency[a].push(b);
            adjacency[b].push(a);
        };
        for (p, node) in self.nodes.iter().enumerate() {
            let bv = bin_vertex[&node.bin];
            link(bv, p);
            for l in self.inputs(node.bin) {
                link(self.position[l], bv);
            }
        }
        let mut seen = vec![false; 2 * len];
        let mut stack = vec![start];
        seen[start] = true;
        let (mut vertices, mut degree_sum) = (0usize, 0usize);
        while let Some(v) = stack.pop() {
            vertices += 1;
            degree_sum += adjacency[v].len();
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let edges = degree_sum / 2;
        Ok(match edges as i64 - vertices as i64 {
            i64::MIN..=-1 => ComponentClass::Tree,
            0 => ComponentClass::Unicyclic,
            _ => ComponentClass::Complex,
        })
    }

    /// True if every recovery bin contained, among the true support, only its
    /// recovered entry and entries peeled from it beforehand. Under this
    /// condition the recursion reproduces the decoder's actual errors.
    pub fn consistent_with(&self, support: &SupportGraph) -> bool {
        self.nodes.iter().all(|node| {
            let fed = self.inputs(node.bin);
            support.signals_in(node.bin).all(|s| s == node.index || fed.contains(&s))
                && fed.iter().all(|l| support.bins_of(*l).is_some_and(|b| b.contains(&node.bin)))
        })
    }

    /// Point errors `e_i` of every node for the given noise realization,
    /// in node order.
    pub fn point_errors(&self, gen: &ColumnGenerator, noise: &NoiseModel) -> Result<Vec<f64>> {
        self.nodes
            .iter()
            .map(|node| point_error(node.index, &noise.bin_noise(node.bin, gen.c()), gen))
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `e_i = -(1/c) g_i' z`, the error the bin noise `z` alone induces on `x^_i`.
pub fn point_error(i: u64, noise: &[f64], gen: &ColumnGenerator) -> Result<f64> {
    let g = gen.column(i)?;
    Ok(-dot(&g, noise) / gen.c() as f64)
}

/// Propagated errors: `p` per node (node order) and `q` per recovery bin.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub p: Vec<f64>,
    pub q: HashMap<usize, Vec<f64>>,
}

impl Propagation {
    pub fn p_of(&self, graph: &ErrorGraph, i: u64) -> Option<f64> {
        graph.position.get(&i).map(|&pos| self.p[pos])
    }
}

/// Evaluates the message-passing rules in recovery order.
pub fn propagate(graph: &ErrorGraph, point_errors: &[f64], gen: &ColumnGenerator) -> Result<Propagation> {
    assert_eq!(point_errors.len(), graph.nodes.len());
    let c = gen.c();
    let mut p = vec![0.0; graph.nodes.len()];
    let mut q = HashMap::new();
    for (pos, node) in graph.nodes.iter().enumerate() {
        let inputs = graph.inputs(node.bin);
        let mut q_j = vec![0.0; c];
        for l in inputs {
            let g_l = gen.column(*l)?;
            let p_l = p[graph.position[l]];
            for (acc, g) in q_j.iter_mut().zip(&g_l) {
                *acc += p_l * g;
            }
        }
        let g_i = gen.column(node.index)?;
        p[pos] = point_errors[pos] - dot(&g_i, &q_j) / c as f64;
        if !inputs.is_empty() {
            q.insert(node.bin, q_j);
        }
    }
    Ok(Propagation { p, q })
}

/// All directed paths from one source to the target node.
#[derive(Debug, Clone, PartialEq)]
pub struct PathTerm {
    pub source: u64,
    /// One coefficient per path: the product of `-(1/c) g_next' g_prev`
    /// factors along it.
    pub coefficients: Vec<f64>,
}

impl PathTerm {
    pub fn path_count(&self) -> usize {
        self.coefficients.len()
    }
}

/// Unrolls `p_i` into `e_i + sum_l sum_p e_l d_{l,p}`. Refuses nodes whose
/// component has more than one cycle.
pub fn path_expansion(graph: &ErrorGraph, i: u64, gen: &ColumnGenerator) -> Result<Vec<PathTerm>> {
    if graph.component_class(i)? == ComponentClass::Complex {
        return Err(Error::ComplexComponent(i));
    }
    let c = gen.c() as f64;
    let mut columns: HashMap<u64, Vec<f64>> = HashMap::new();
    let mut column = |idx: u64| -> Result<Vec<f64>> {
        if let Some(g) = columns.get(&idx) {
            return Ok(g.clone());
        }
        let g = gen.column(idx)?;
        columns.insert(idx, g.clone());
        Ok(g)
    };

    // Depth-first walk backwards from `i`, carrying the running product.
    let mut by_source: HashMap<u64, Vec<f64>> = HashMap::new();
    let mut stack: Vec<(u64, f64)> = vec![(i, 1.0)];
    while let Some((node, coeff)) = stack.pop() {
        let g_node = column(node)?;
        for &l in graph.incoming(node)? {
            let factor = -dot(&g_node, &column(l)?) / c;
            let d = coeff * factor;
            by_source.entry(l).or_default().push(d);
            stack.push((l, d));
        }
    }

    let mut terms: Vec<PathTerm> =
        by_source.into_iter().map(|(source, coefficients)| PathTerm { source, coefficients }).collect();
    terms.sort_by_key(|t| graph.position[&t.source]);
    Ok(terms)
}

/// `e_i + sum_l e_l sum_p d_{l,p}` for the given point errors (node order).
pub fn expand_error(graph: &ErrorGraph, i: u64, terms: &[PathTerm], point_errors: &[f64]) -> Result<f64> {
    let pos = *graph.position.get(&i).ok_or(Error::UnknownNode(i))?;
    Ok(terms.iter().fold(point_errors[pos], |acc, term| {
        let e_l = point_errors[graph.position[&term.source]];
        acc + term.coefficients.iter().map(|d| e_l * d).sum::<f64>()
    }))
}

/// `(1 + sum_l P(l,i)^2) sigma^2 / c`.
pub fn variance_bound(graph: &ErrorGraph, i: u64, sigma2: f64, gen: &ColumnGenerator) -> Result<f64> {
    let terms = path_expansion(graph, i, gen)?;
    Ok(variance_bound_from_terms(&terms, sigma2, gen.c()))
}

pub fn variance_bound_from_terms(terms: &[PathTerm], sigma2: f64, c: usize) -> f64 {
    let paths: usize = terms.iter().map(|t| t.path_count().pow(2)).sum();
    (1 + paths) as f64 * sigma2 / c as f64
}
