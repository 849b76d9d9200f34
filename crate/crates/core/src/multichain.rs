//! Breadth-first layerings and the multi-chain property.
//!
//! A layering is multi-chain when, inside every layer, the neighbourhoods
//! towards the previous layer form an inclusion chain and so do the
//! neighbourhoods towards the next layer. Permutation graphs rooted at the
//! vertex with the largest label always have one.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{bipartite_components, BipartiteComponent, Graph, Permutation, Side, VertexId};

/// BFS distance classes `L_0 .. L_k` from a root. Not necessarily multi-chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    root: usize,
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
}

impl Layering {
    /// Wraps explicit layers, checking only that they partition `0..n`.
    pub fn from_layers(n: usize, root: usize, layers: Vec<Vec<usize>>) -> Result<Self> {
        let mut layer_of = vec![usize::MAX; n];
        let mut layers = layers;
        for (i, layer) in layers.iter_mut().enumerate() {
            if layer.is_empty() {
                return Err(Error::InvalidLayering(format!("layer {i} is empty")));
            }
            layer.sort_unstable();
            for &v in layer.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange(v + 1));
                }
                if layer_of[v] != usize::MAX {
                    return Err(Error::InvalidLayering(format!("vertex {} appears twice", VertexId(v))));
                }
                layer_of[v] = i;
            }
        }
        if let Some(v) = layer_of.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidLayering(format!("vertex {} is in no layer", VertexId(v))));
        }
        if root >= n || layers[0] != [root] {
            return Err(Error::InvalidLayering("first layer must be exactly the root".into()));
        }
        Ok(Layering { root, layers, layer_of })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Index of the last layer.
    pub fn k(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// Members of layer `i`, sorted.
    pub fn layer(&self, i: usize) -> &[usize] {
        &self.layers[i]
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    fn check_bfs(&self, g: &Graph) -> Result<()> {
        if g.n() != self.layer_of.len() {
            return Err(Error::InvalidLayering("layering and graph sizes differ".into()));
        }
        for (u, v) in g.edges() {
            if self.layer_of[u].abs_diff(self.layer_of[v]) > 1 {
                return Err(Error::InvalidLayering(format!("edge {}-{} skips a layer", VertexId(u), VertexId(v))));
            }
        }
        for i in 1..self.layers.len() {
            for &v in &self.layers[i] {
                if !g.neighbours(v).iter().any(|&w| self.layer_of[w] == i - 1) {
                    return Err(Error::InvalidLayering(format!(
                        "vertex {} has no neighbour in layer {}",
                        VertexId(v),
                        i - 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The vertex with the largest label; a sink of the label-order orientation
/// of both the edges and the non-edges.
pub fn choose_root(perm: &Permutation) -> VertexId {
    VertexId(perm.len() - 1)
}

pub fn bfs_layers(g: &Graph, root: usize) -> Result<Layering> {
    let n = g.n();
    if root >= n {
        return Err(Error::VertexOutOfRange(root + 1));
    }
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut layers: Vec<Vec<usize>> = vec![vec![root]];
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                if layers.len() <= dist[w] {
                    layers.push(Vec::new());
                }
                layers[dist[w]].push(w);
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(Error::Disconnected(VertexId(v)));
    }
    for layer in &mut layers {
        layer.sort_unstable();
    }
    Ok(Layering { root, layers, layer_of: dist })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Toward {
    Previous,
    Next,
}

/// Two vertices of one layer whose neighbourhoods in an adjacent layer are
/// incomparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainViolation {
    pub layer: usize,
    pub a: VertexId,
    pub b: VertexId,
    pub toward: Toward,
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let other = match self.toward {
            Toward::Previous => self.layer - 1,
            Toward::Next => self.layer + 1,
        };
        write!(
            f,
            "vertices {} and {} of layer {} have incomparable neighbourhoods in layer {}",
            self.a, self.b, self.layer, other
        )
    }
}

fn layer_bitset(n: usize, layer: &[usize]) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(n);
    for &v in layer {
        bits.insert(v);
    }
    bits
}

fn restricted_row(g: &Graph, v: usize, target: &FixedBitSet) -> FixedBitSet {
    let mut row = g.row(v).clone();
    row.intersect_with(target);
    row
}

/// First pair of vertices breaking the multi-chain property, if any.
pub fn multichain_violation(g: &Graph, layering: &Layering) -> Result<Option<ChainViolation>> {
    layering.check_bfs(g)?;
    let n = g.n();
    let bits: Vec<FixedBitSet> = layering.layers.iter().map(|l| layer_bitset(n, l)).collect();
    for (i, layer) in layering.layers.iter().enumerate() {
        let mut targets = Vec::new();
        if i > 0 {
            targets.push((Toward::Previous, &bits[i - 1]));
        }
        if i < layering.k() {
            targets.push((Toward::Next, &bits[i + 1]));
        }
        for (toward, target) in targets {
            let mut rows: Vec<(usize, FixedBitSet)> =
                layer.iter().map(|&v| (v, restricted_row(g, v, target))).collect();
            rows.sort_by_key(|(v, r)| (r.count_ones(..), *v));
            for pair in rows.windows(2) {
                if !pair[0].1.is_subset(&pair[1].1) {
                    return Ok(Some(ChainViolation {
                        layer: i,
                        a: VertexId(pair[0].0),
                        b: VertexId(pair[1].0),
                        toward,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_multichain(g: &Graph, layering: &Layering) -> Result<bool> {
    Ok(multichain_violation(g, layering)?.is_none())
}

/// A validated multi-chain ordering with per-layer bipartite components.
///
/// A layer holding an odd cycle is recorded rather than rejected: the
/// ordering is still multi-chain, but the layer has no bipartition, so the
/// colouring stages refuse it through [`MultiChainOrdering::require_bipartite`].
#[derive(Clone, Debug)]
pub struct MultiChainOrdering {
    layering: Layering,
    components: Vec<Vec<BipartiteComponent>>,
    membership: Vec<(usize, Side)>,
    layer_bits: Vec<FixedBitSet>,
    odd_cycle: Option<(usize, VertexId)>,
}

impl MultiChainOrdering {
    pub fn layering(&self) -> &Layering {
        &self.layering
    }

    pub fn root(&self) -> usize {
        self.layering.root
    }

    pub fn k(&self) -> usize {
        self.layering.k()
    }

    pub fn layer_count(&self) -> usize {
        self.layering.layers.len()
    }

    pub fn layer(&self, i: usize) -> &[usize] {
        self.layering.layer(i)
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layering.layer_of(v)
    }

    pub fn layer_bits(&self, i: usize) -> &FixedBitSet {
        &self.layer_bits[i]
    }

    pub fn components(&self, i: usize) -> &[BipartiteComponent] {
        &self.components[i]
    }

    /// Index of `v`'s component within its layer, and its side.
    pub fn membership(&self, v: usize) -> (usize, Side) {
        self.membership[v]
    }

    pub fn component_of(&self, v: usize) -> &BipartiteComponent {
        let (c, _) = self.membership[v];
        &self.components[self.layer_of(v)][c]
    }

    /// Lowest layer that is not bipartite, with a vertex on an odd cycle.
    pub fn odd_cycle(&self) -> Option<(usize, VertexId)> {
        self.odd_cycle
    }

    pub fn require_bipartite(&self) -> Result<()> {
        match self.odd_cycle {
            Some((layer, vertex)) => Err(Error::OddCycle { layer, vertex }),
            None => Ok(()),
        }
    }
}

/// BFS layering from `root`, validated as multi-chain, with component caches.
pub fn build_multichain_ordering(g: &Graph, root: usize) -> Result<MultiChainOrdering> {
    let layering = bfs_layers(g, root)?;
    if let Some(violation) = multichain_violation(g, &layering)? {
        return Err(Error::NotMultiChain(violation));
    }
    let n = g.n();
    let mut membership = vec![(0, Side::B1); n];
    let mut components = Vec::with_capacity(layering.layers.len());
    let mut odd_cycle = None;
    for (i, layer) in layering.layers.iter().enumerate() {
        let comps = match bipartite_components(g, layer, i) {
            Ok(comps) => comps,
            Err(Error::OddCycle { layer: odd, vertex }) => {
                odd_cycle = odd_cycle.or(Some((odd, vertex)));
                // Placeholder singletons keep lookups total; nothing reads
                // them once the odd cycle is recorded.
                layer.iter().map(|&v| BipartiteComponent { side_b1: vec![v], side_b2: Vec::new(), layer: i }).collect()
            }
            Err(e) => return Err(e),
        };
        for (ci, comp) in comps.iter().enumerate() {
            for &v in &comp.side_b1 {
                membership[v] = (ci, Side::B1);
            }
            for &v in &comp.side_b2 {
                membership[v] = (ci, Side::B2);
            }
        }
        components.push(comps);
    }
    let layer_bits = layering.layers.iter().map(|l| layer_bitset(n, l)).collect();
    Ok(MultiChainOrdering { layering, components, membership, layer_bits, odd_cycle })
}

/// Member of `side` whose neighbourhood inside `target` contains all the
/// others'. Ties go to the lowest id.
pub fn max_neighbourhood_vertex(g: &Graph, side: &[usize], target: &FixedBitSet) -> Result<usize> {
    let rows: Vec<(usize, FixedBitSet)> = side.iter().map(|&v| (v, restricted_row(g, v, target))).collect();
    let (best, best_row) = rows
        .iter()
        .max_by(|(a, ra), (b, rb)| ra.count_ones(..).cmp(&rb.count_ones(..)).then(b.cmp(a)))
        .ok_or_else(|| Error::Internal("max_neighbourhood_vertex on an empty side".into()))?;
    for (v, row) in &rows {
        if !row.is_subset(best_row) {
            return Err(Error::NotNested { a: VertexId(*best), b: VertexId(*v) });
        }
    }
    Ok(*best)
}

/// Checks the two orientation facts behind the multi-chain theorem under the
/// label-order orientation (`a -> b` whenever label `a < b`, for edges and
/// non-edges alike): every boundary's edges point the same way, and every
/// non-edge between different layers points into the lower-indexed layer.
pub fn check_orientation_lemmas(perm: &Permutation, layering: &Layering) -> bool {
    let n = perm.len();
    if layering.layer_of.len() != n {
        return false;
    }
    let pos = perm.positions();
    let adjacent = |a: usize, b: usize| (a < b) == (pos[b] < pos[a]);
    // Per boundary: None = no edge seen yet, Some(true) = toward the upper layer.
    let mut boundary_dir: Vec<Option<bool>> = vec![None; layering.layers.len()];
    for a in 0..n {
        for b in a + 1..n {
            let (la, lb) = (layering.layer_of[a], layering.layer_of[b]);
            if adjacent(a, b) {
                if la == lb {
                    continue;
                }
                let lower = la.min(lb);
                let toward_upper = lb > la;
                match boundary_dir[lower] {
                    None => boundary_dir[lower] = Some(toward_upper),
                    Some(d) if d != toward_upper => return false,
                    Some(_) => {}
                }
            } else if la != lb && lb > la {
                // head is b, the larger label; it must sit in the lower layer
                return false;
            }
        }
    }
    true
}
