//! Graphs, permutations, per-layer bipartite components and colouring checks.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::colour::{Colour, ListMapping};
use crate::error::{Error, Result};

/// Dense 0-based vertex index. Displayed 1-based, matching file labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }

    pub fn label(self) -> usize {
        self.0 + 1
    }

    pub fn from_label(label: usize) -> Option<Self> {
        label.checked_sub(1).map(VertexId)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A permutation of `1..=n`, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!("value {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Positions indexed by 0-based vertex id.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (p, &v) in self.values.iter().enumerate() {
            pos[v - 1] = p;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    pub fn inversion_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.values[i] > self.values[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Splits into the maximal blocks `perm[a..b]` whose values are exactly
    /// the labels `a+1..=b`; these are the connected components of the graph.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut blocks = Vec::new();
        let mut start = 0;
        let mut max = 0;
        for (p, &v) in self.values.iter().enumerate() {
            max = max.max(v);
            if max == p + 1 {
                blocks.push(start..p + 1);
                start = p + 1;
            }
        }
        blocks
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], rows: vec![FixedBitSet::with_capacity(n); n], edges: 0 }
    }

    /// Builds a graph from 0-based edges. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange(a + 1));
            }
            if b >= n {
                return Err(Error::VertexOutOfRange(b + 1));
            }
            if a == b {
                return Err(Error::SelfLoop(VertexId(a)));
            }
            g.add_edge(a, b);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        if self.rows[a].contains(b) {
            return;
        }
        self.rows[a].insert(b);
        self.rows[b].insert(a);
        self.adj[a].push(b);
        self.adj[b].push(a);
        self.edges += 1;
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Adjacency row of `v` as a bitset over all vertices.
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        g
    }
}

/// The permutation graph of `perm`: labels `a < b` are adjacent iff `b`
/// appears before `a`.
pub fn graph_from_permutation(perm: &Permutation) -> Graph {
    let n = perm.len();
    let pos = perm.positions();
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if pos[b] < pos[a] {
                g.add_edge(a, b);
            }
        }
    }
    for list in &mut g.adj {
        list.sort_unstable();
    }
    g
}

/// Which side of its bipartite component a vertex sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    B1,
    B2,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::B1 => Side::B2,
            Side::B2 => Side::B1,
        }
    }
}

/// A maximal connected piece of a layer's induced subgraph together with
/// its bipartition. `side_b1` holds the lowest-id vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteComponent {
    pub side_b1: Vec<usize>,
    pub side_b2: Vec<usize>,
    pub layer: usize,
}

impl BipartiteComponent {
    pub fn len(&self) -> usize {
        self.side_b1.len() + self.side_b2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn side(&self, side: Side) -> &[usize] {
        match side {
            Side::B1 => &self.side_b1,
            Side::B2 => &self.side_b2,
        }
    }

    pub fn lowest(&self) -> usize {
        self.side_b1[0]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.side_b1.iter().chain(&self.side_b2).copied()
    }
}

/// Splits `layer` into the connected components of its induced subgraph
/// and 2-colours each one. Components come out ordered by lowest vertex.
pub fn bipartite_components(g: &Graph, layer: &[usize], layer_index: usize) -> Result<Vec<BipartiteComponent>> {
    let mut sorted = layer.to_vec();
    sorted.sort_unstable();
    let mut in_layer = FixedBitSet::with_capacity(g.n());
    for &v in &sorted {
        in_layer.insert(v);
    }
    let mut side: Vec<Option<Side>> = vec![None; g.n()];
    let mut out = Vec::new();
    for &s in &sorted {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(Side::B1);
        let mut comp = BipartiteComponent { side_b1: vec![s], side_b2: Vec::new(), layer: layer_index };
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &w in g.neighbours(u) {
                if !in_layer.contains(w) {
                    continue;
                }
                match side[w] {
                    None => {
                        let sw = su.flip();
                        side[w] = Some(sw);
                        match sw {
                            Side::B1 => comp.side_b1.push(w),
                            Side::B2 => comp.side_b2.push(w),
                        }
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => {
                        return Err(Error::OddCycle { layer: layer_index, vertex: VertexId(w) });
                    }
                    Some(_) => {}
                }
            }
        }
        comp.side_b1.sort_unstable();
        comp.side_b2.sort_unstable();
        out.push(comp);
    }
    Ok(out)
}

/// A partial vertex colouring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Colouring {
    colours: Vec<Option<Colour>>,
}

impl Colouring {
    pub fn uncoloured(n: usize) -> Self {
        Colouring { colours: vec![None; n] }
    }

    pub fn from_total(colours: Vec<Colour>) -> Self {
        Colouring { colours: colours.into_iter().map(Some).collect() }
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<Colour> {
        self.colours[v]
    }

    pub fn set(&mut self, v: usize, c: Colour) {
        self.colours[v] = Some(c);
    }

    pub fn clear(&mut self, v: usize) {
        self.colours[v] = None;
    }

    pub fn first_uncoloured(&self) -> Option<VertexId> {
        self.colours.iter().position(Option::is_none).map(VertexId)
    }

    pub fn is_total(&self) -> bool {
        self.first_uncoloured().is_none()
    }

    pub fn coloured_count(&self) -> usize {
        self.colours.iter().filter(|c| c.is_some()).count()
    }

    pub fn as_slice(&self) -> &[Option<Colour>] {
        &self.colours
    }
}

/// True iff the total colouring `c` is proper and respects every list.
pub fn validate_proper_list_colouring(g: &Graph, lists: &ListMapping, c: &Colouring) -> Result<bool> {
    if c.len() != g.n() || lists.len() != g.n() {
        return Err(Error::VertexOutOfRange(g.n().min(c.len()).min(lists.len()) + 1));
    }
    if let Some(v) = c.first_uncoloured() {
        return Err(Error::PartialColouring(v));
    }
    for v in 0..g.n() {
        let cv = c.get(v).unwrap();
        if !lists.get(v).contains(cv) {
            return Ok(false);
        }
        if g.neighbours(v).iter().any(|&w| c.get(w) == Some(cv)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::ColourSet;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().map(|(a, b)| (a + 1, b + 1)).collect()
    }

    #[test]
    fn permutation_graph_examples() {
        assert_eq!(graph_from_permutation(&perm(&[1, 2, 3])).edge_count(), 0);
        assert_eq!(edge_set(&graph_from_permutation(&perm(&[3, 2, 1]))), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(edge_set(&graph_from_permutation(&perm(&[3, 1, 2]))), vec![(1, 3), (2, 3)]);
    }

    #[test]
    fn malformed_permutations_are_rejected() {
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
        assert!(Permutation::new(vec![1, 4, 2]).is_err());
        assert!(Permutation::new(vec![0]).is_err());
        assert!(Permutation::new(vec![]).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert!(graph_from_permutation(&perm(&[3, 2, 1])).is_connected());
        assert!(!graph_from_permutation(&perm(&[1, 2, 3])).is_connected());
        assert!(!graph_from_permutation(&perm(&[2, 1, 4, 3])).is_connected());
    }

    #[test]
    fn blocks_match_components() {
        let p = perm(&[2, 1, 3, 5, 6, 4]);
        assert_eq!(p.blocks(), vec![0..2, 2..3, 3..6]);
        assert_eq!(graph_from_permutation(&p).components().len(), 3);
    }

    #[test]
    fn bipartite_component_examples() {
        let k3 = graph_from_permutation(&perm(&[3, 2, 1]));
        let comps = bipartite_components(&k3, &[0, 1], 1).unwrap();
        assert_eq!(comps, vec![BipartiteComponent { side_b1: vec![0], side_b2: vec![1], layer: 1 }]);

        let edgeless = Graph::empty(2);
        let comps = bipartite_components(&edgeless, &[1, 0], 0).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.side_b2.is_empty()));
        assert_eq!(comps[0].lowest(), 0);

        let err = bipartite_components(&k3, &[0, 1, 2], 0).unwrap_err();
        assert!(matches!(err, Error::OddCycle { layer: 0, .. }));
    }

    #[test]
    fn colouring_validation_examples() {
        let k3 = graph_from_permutation(&perm(&[3, 2, 1]));
        let full = ListMapping::full(3);
        let ok = Colouring::from_total(vec![Colour::C1, Colour::C2, Colour::C3]);
        assert!(validate_proper_list_colouring(&k3, &full, &ok).unwrap());

        let edge = graph_from_permutation(&perm(&[2, 1]));
        let same = Colouring::from_total(vec![Colour::C1, Colour::C1]);
        assert!(!validate_proper_list_colouring(&edge, &ListMapping::full(2), &same).unwrap());

        let single = Graph::empty(1);
        let lists = ListMapping::new(vec![ColourSet::single(Colour::C2)]);
        let c = Colouring::from_total(vec![Colour::C1]);
        assert!(!validate_proper_list_colouring(&single, &lists, &c).unwrap());

        let partial = Colouring::uncoloured(1);
        assert!(matches!(validate_proper_list_colouring(&single, &lists, &partial), Err(Error::PartialColouring(_))));
    }
}
