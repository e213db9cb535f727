//! Left-d-regular hashing of signal indices into bins and component analysis
//! of the induced bipartite graph.

use std::collections::HashMap;

use rand::seq::index;

use crate::prf::{keyed_rng, Domain};

/// Implicit `b x n` hashing matrix `H` with `H[j][i] = 1` iff `j` is one of
/// the `d` bins of index `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinHasher {
    b: usize,
    d: usize,
    seed: u64,
}

impl BinHasher {
    pub fn new(b: usize, d: usize, seed: u64) -> Self {
        assert!(d >= 1 && d <= b, "degree {d} must lie in 1..={b}");
        BinHasher { b, d, seed }
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The `d` distinct bins of index `i`, sorted ascending.
    pub fn bins_of(&self, i: u64) -> Vec<usize> {
        let mut rng = keyed_rng(self.seed, Domain::Bins, i);
        let mut bins = index::sample(&mut rng, self.b, self.d).into_vec();
        bins.sort_unstable();
        bins
    }

    /// Entry `H[j][i]`.
    pub fn contains(&self, bin: usize, i: u64) -> bool {
        self.bins_of(i).binary_search(&bin).is_ok()
    }
}

/// Bipartite graph between the support of a signal and the bins.
#[derive(Debug, Clone)]
pub struct SupportGraph {
    signals: Vec<u64>,
    slot: HashMap<u64, usize>,
    signal_bins: Vec<Vec<usize>>,
    bin_signals: Vec<Vec<usize>>,
}

impl SupportGraph {
    pub fn build(support: impl IntoIterator<Item = u64>, hasher: &BinHasher) -> Self {
        let mut signals: Vec<u64> = support.into_iter().collect();
        signals.sort_unstable();
        signals.dedup();
        let slot = signals.iter().enumerate().map(|(s, &i)| (i, s)).collect();
        let signal_bins: Vec<Vec<usize>> = signals.iter().map(|&i| hasher.bins_of(i)).collect();
        let mut bin_signals = vec![Vec::new(); hasher.b()];
        for (s, bins) in signal_bins.iter().enumerate() {
            for &j in bins {
                bin_signals[j].push(s);
            }
        }
        SupportGraph { signals, slot, signal_bins, bin_signals }
    }

    pub fn signals(&self) -> &[u64] {
        &self.signals
    }

    pub fn num_bins(&self) -> usize {
        self.bin_signals.len()
    }

    pub fn edge_count(&self) -> usize {
        self.signal_bins.iter().map(Vec::len).sum()
    }

    pub fn bins_of(&self, i: u64) -> Option<&[usize]> {
        self.slot.get(&i).map(|&s| self.signal_bins[s].as_slice())
    }

    /// Support indices hashed into bin `j`.
    pub fn signals_in(&self, j: usize) -> impl Iterator<Item = u64> + '_ {
        self.bin_signals[j].iter().map(|&s| self.signals[s])
    }

    /// All `(signal, bin)` edges, signals ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.signals
            .iter()
            .zip(&self.signal_bins)
            .flat_map(|(&i, bins)| bins.iter().map(move |&j| (i, j)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentClass {
    Tree,
    Unicyclic,
    Complex,
}

impl ComponentClass {
    fn from_counts(nodes: usize, edges: usize) -> Self {
        match edges as i64 - nodes as i64 {
            i64::MIN..=-1 => ComponentClass::Tree,
            0 => ComponentClass::Unicyclic,
            _ => ComponentClass::Complex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Component {
    pub signals: usize,
    pub bins: usize,
    pub edges: usize,
    pub class: ComponentClass,
}

impl Component {
    pub fn nodes(&self) -> usize {
        self.signals + self.bins
    }
}

/// Connected components of a [`SupportGraph`]. Bins without any edge are not
/// part of the graph.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub components: Vec<Component>,
    /// Component id of every support index, in the graph's signal order.
    signal_component: Vec<usize>,
    signals: Vec<u64>,
}

impl ComponentReport {
    pub fn count(&self, class: ComponentClass) -> usize {
        self.components.iter().filter(|c| c.class == class).count()
    }

    /// True when every component is a tree or unicyclic.
    pub fn is_sparse(&self) -> bool {
        self.count(ComponentClass::Complex) == 0
    }

    pub fn largest_signals(&self) -> usize {
        self.components.iter().map(|c| c.signals).max().unwrap_or(0)
    }

    /// The component containing support index `i`.
    pub fn component_of(&self, i: u64) -> Option<&Component> {
        let s = self.signals.binary_search(&i).ok()?;
        Some(&self.components[self.signal_component[s]])
    }
}

/// Disjoint-set forest with union by size and path halving.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind { parent: (0..len).collect(), size: vec![1; len] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

pub fn component_census(g: &SupportGraph) -> ComponentReport {
    let k = g.signals.len();
    let mut uf = UnionFind::new(k + g.num_bins());
    for (s, bins) in g.signal_bins.iter().enumerate() {
        for &j in bins {
            uf.union(s, k + j);
        }
    }

    let mut id_of_root: HashMap<usize, usize> = HashMap::new();
    let mut components: Vec<Component> = Vec::new();
    let mut component_id = |root: usize, components: &mut Vec<Component>| {
        *id_of_root.entry(root).or_insert_with(|| {
            components.push(Component { signals: 0, bins: 0, edges: 0, class: ComponentClass::Tree });
            components.len() - 1
        })
    };

    let mut signal_component = Vec::with_capacity(k);
    for s in 0..k {
        let root = uf.find(s);
        let id = component_id(root, &mut components);
        components[id].signals += 1;
        components[id].edges += g.signal_bins[s].len();
        signal_component.push(id);
    }
    for j in 0..g.num_bins() {
        if g.bin_signals[j].is_empty() {
            continue;
        }
        let root = uf.find(k + j);
        let id = component_id(root, &mut components);
        components[id].bins += 1;
    }
    for c in &mut components {
        c.class = ComponentClass::from_counts(c.nodes(), c.edges);
    }

    ComponentReport { components, signal_component, signals: g.signals.clone() }
}
