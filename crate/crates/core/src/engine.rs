//! Layer colour assignments, quasi-precolouring and the conservative
//! colouring sweep.
//!
//! Given a pair of colours for every layer, a vertex is *quasi-precoloured*
//! when its colour is already determined: its list meets the layer pair in
//! one colour, it sees both sides of a bipartite component in a
//! neighbouring layer, or it shares a component with such a vertex. The
//! conservative sweep colours forced vertices first and then walks the
//! layers upwards, giving each remaining vertex the colour its layer does
//! not share with the next one unless a neighbour already holds it.

use std::fmt;
use std::ops::RangeInclusive;

use crate::colour::{Colour, ColourPair, ListMapping};
use crate::error::{Error, Result};
use crate::graph::{BipartiteComponent, Colouring, Graph, Side, VertexId};
use crate::multichain::{max_neighbourhood_vertex, MultiChainOrdering};

/// A partial map from layer index to colour pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColourAssignment {
    pairs: Vec<Option<ColourPair>>,
}

impl ColourAssignment {
    /// An assignment over `layers` layers with nothing set.
    pub fn new(layers: usize) -> Self {
        ColourAssignment { pairs: vec![None; layers] }
    }

    pub fn from_pairs(pairs: Vec<ColourPair>) -> Self {
        ColourAssignment { pairs: pairs.into_iter().map(Some).collect() }
    }

    pub fn layers(&self) -> usize {
        self.pairs.len()
    }

    pub fn get(&self, i: usize) -> Option<ColourPair> {
        self.pairs.get(i).copied().flatten()
    }

    pub fn pair(&self, i: usize) -> Result<ColourPair> {
        self.get(i).ok_or(Error::MissingPair(i))
    }

    pub fn set(&mut self, i: usize, pair: ColourPair) {
        self.pairs[i] = Some(pair);
    }

    pub fn is_total(&self) -> bool {
        self.pairs.iter().all(Option::is_some)
    }

    /// Total, adjacent layers differ, and every precoloured colour is in its
    /// layer's pair.
    pub fn is_good(&self, ord: &MultiChainOrdering, lists: &ListMapping) -> bool {
        self.first_bad_layer(ord, lists).is_none()
    }

    pub fn first_bad_layer(&self, ord: &MultiChainOrdering, lists: &ListMapping) -> Option<usize> {
        if self.pairs.len() != ord.layer_count() {
            return Some(0);
        }
        for i in 0..self.pairs.len() {
            let Some(p) = self.pairs[i] else { return Some(i) };
            if i > 0 && self.pairs[i - 1] == Some(p) {
                return Some(i);
            }
            let covered = ord.layer(i).iter().all(|&v| match lists.precoloured(v) {
                Some(c) => p.contains(c),
                None => true,
            });
            if !covered {
                return Some(i);
            }
        }
        None
    }
}

impl fmt::Display for ColourAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match p {
                Some(p) => write!(f, "{p}")?,
                None => write!(f, "--")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ColourAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{self}]")
    }
}

/// Why a quasi-precolouring is contradictory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiConflict {
    /// No colour of the layer pair is available to the vertex.
    NoColour { vertex: VertexId },
    /// The forced colour is not on the vertex's list.
    OutsideList { vertex: VertexId, colour: Colour },
    /// Two forcing rules disagree on the vertex.
    Disagreement { vertex: VertexId, first: Colour, second: Colour },
    /// Two adjacent vertices are forced to the same colour.
    AdjacentSame { a: VertexId, b: VertexId, colour: Colour },
}

impl fmt::Display for QuasiConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiConflict::NoColour { vertex } => write!(f, "vertex {vertex} has no admissible colour"),
            QuasiConflict::OutsideList { vertex, colour } => {
                write!(f, "vertex {vertex} is forced to {colour}, which is not on its list")
            }
            QuasiConflict::Disagreement { vertex, first, second } => {
                write!(f, "vertex {vertex} is forced to both {first} and {second}")
            }
            QuasiConflict::AdjacentSame { a, b, colour } => {
                write!(f, "adjacent vertices {a} and {b} are both forced to {colour}")
            }
        }
    }
}

/// Forced colours under a colour assignment, plus the first contradiction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPrecolouring {
    forced: Vec<Option<Colour>>,
    conflict: Option<QuasiConflict>,
}

impl QuasiPrecolouring {
    pub fn forced(&self, v: usize) -> Option<Colour> {
        self.forced[v]
    }

    pub fn conflict(&self) -> Option<QuasiConflict> {
        self.conflict
    }

    pub fn forced_count(&self) -> usize {
        self.forced.iter().filter(|c| c.is_some()).count()
    }

    fn note(&mut self, conflict: QuasiConflict) {
        self.conflict.get_or_insert(conflict);
    }

    fn force(&mut self, v: usize, c: Colour) {
        match self.forced[v] {
            Some(prev) if prev != c => {
                self.note(QuasiConflict::Disagreement { vertex: VertexId(v), first: prev, second: c })
            }
            _ => self.forced[v] = Some(c),
        }
    }
}

fn check_range(ord: &MultiChainOrdering, q: &ColourAssignment, range: &RangeInclusive<usize>) -> Result<()> {
    if *range.end() > ord.k() {
        return Err(Error::MissingPair(*range.end()));
    }
    for i in range.clone() {
        q.pair(i)?;
    }
    Ok(())
}

/// Forced colours of the vertices in layers `range` under `q`.
///
/// Rules: a single colour in `list ∩ q(i)`; adjacency to both sides of a
/// component in a neighbouring layer of the range forces the colour of
/// `q(i)` missing from that layer's pair; a forced vertex fixes its whole
/// component by parity.
pub fn compute_quasi_precolouring(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    q: &ColourAssignment,
    range: RangeInclusive<usize>,
) -> Result<QuasiPrecolouring> {
    ord.require_bipartite()?;
    let mut qp = QuasiPrecolouring { forced: vec![None; g.n()], conflict: None };
    if range.is_empty() {
        return Ok(qp);
    }
    check_range(ord, q, &range)?;
    let (start, end) = (*range.start(), *range.end());
    let widest = (start..=end).map(|i| ord.components(i).len()).max().unwrap_or(0);
    let mut marks = vec![0u8; widest.max(ord.components(0).len()) + 1];
    let mut touched = Vec::new();

    for i in start..=end {
        let pair = q.pair(i)?;
        for &v in ord.layer(i) {
            let avail = lists.get(v).intersect(pair.as_set());
            match avail.len() {
                0 => qp.note(QuasiConflict::NoColour { vertex: VertexId(v) }),
                1 => qp.force(v, avail.only().unwrap()),
                _ => {}
            }
        }
        let neighbours_layers = [i.checked_sub(1), Some(i + 1)];
        for j in neighbours_layers.into_iter().flatten().filter(|j| (start..=end).contains(j)) {
            let other = q.pair(j)?;
            if marks.len() < ord.components(j).len() {
                marks.resize(ord.components(j).len(), 0);
            }
            for &v in ord.layer(i) {
                let mut both_sides = false;
                for &w in g.neighbours(v) {
                    if ord.layer_of(w) != j {
                        continue;
                    }
                    let (c, side) = ord.membership(w);
                    if marks[c] == 0 {
                        touched.push(c);
                    }
                    marks[c] |= if side == Side::B1 { 1 } else { 2 };
                    both_sides |= marks[c] == 3;
                }
                for c in touched.drain(..) {
                    marks[c] = 0;
                }
                if !both_sides {
                    continue;
                }
                match pair.shared(other) {
                    None => qp.note(QuasiConflict::NoColour { vertex: VertexId(v) }),
                    Some(s) => {
                        let c = pair.other(s);
                        if lists.get(v).contains(c) {
                            qp.force(v, c);
                        } else {
                            qp.note(QuasiConflict::OutsideList { vertex: VertexId(v), colour: c });
                        }
                    }
                }
            }
        }
    }

    for i in start..=end {
        let pair = q.pair(i)?;
        for comp in ord.components(i) {
            let Some((seed, c)) = comp.vertices().find_map(|v| qp.forced[v].map(|c| (v, c))) else {
                continue;
            };
            let seed_side = ord.membership(seed).1;
            for v in comp.vertices() {
                let want = if ord.membership(v).1 == seed_side { c } else { pair.other(c) };
                if qp.forced[v].is_none() && !lists.get(v).contains(want) {
                    qp.note(QuasiConflict::OutsideList { vertex: VertexId(v), colour: want });
                }
                qp.force(v, want);
            }
        }
    }

    for i in start..=end {
        for &v in ord.layer(i) {
            let Some(c) = qp.forced[v] else { continue };
            for &w in g.neighbours(v) {
                if w > v && (start..=end).contains(&ord.layer_of(w)) && qp.forced[w] == Some(c) {
                    qp.note(QuasiConflict::AdjacentSame { a: VertexId(v), b: VertexId(w), colour: c });
                }
            }
        }
    }
    Ok(qp)
}

/// `v` (one layer above `u`) sits on a side of its layer component that
/// contains a neighbour of `u`. Direct adjacency is the special case where
/// that neighbour is `v` itself.
pub fn almost_adjacent(g: &Graph, ord: &MultiChainOrdering, u: usize, v: usize) -> Result<bool> {
    ord.require_bipartite()?;
    if ord.layer_of(v) != ord.layer_of(u) + 1 {
        return Err(Error::InvalidLayering(format!(
            "vertices {} and {} are not in consecutive layers",
            VertexId(u),
            VertexId(v)
        )));
    }
    let (_, side) = ord.membership(v);
    Ok(ord.component_of(v).side(side).iter().any(|&w| g.adjacent(u, w)))
}

/// Why a conservative sweep failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    /// The quasi-precolouring is already contradictory.
    Forced(QuasiConflict),
    /// `vertex` had to take `colour`, which `neighbour` already holds.
    Clash { vertex: VertexId, neighbour: VertexId, colour: Colour },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Forced(c) => write!(f, "{c}"),
            Failure::Clash { vertex, neighbour, colour } => {
                write!(f, "vertex {vertex} must take {colour}, already used by neighbour {neighbour}")
            }
        }
    }
}

/// Outcome of the conservative colouring sweep.
#[derive(Clone, Debug)]
pub struct ConservativeRun {
    pub success: bool,
    /// Colours given to the processed layers (partial on failure).
    pub colouring: Colouring,
    /// For each vertex that took the shared colour because a neighbour held
    /// the other one, that neighbour.
    pub blame: Vec<Option<usize>>,
    pub failure: Option<Failure>,
}

/// The colour of layer `i` not carried into the layer above, and the one
/// that is. Without a pair above, the roles are taken relative to the layer
/// below (the colour shared with it counts as shared); with neither, the
/// smaller colour of the pair comes first.
pub(crate) fn split_pair(q: &ColourAssignment, i: usize) -> Result<(Colour, Colour)> {
    let p = q.pair(i)?;
    let relative = |j: usize| -> Result<(Colour, Colour)> {
        let s = p.shared(q.pair(j)?).ok_or(Error::NotGood(i.max(j)))?;
        Ok((p.other(s), s))
    };
    if q.get(i + 1).is_some() {
        relative(i + 1)
    } else if i > 0 && q.get(i - 1).is_some() {
        relative(i - 1)
    } else {
        Ok((p.lo(), p.hi()))
    }
}

pub(crate) struct Sweep {
    pub colouring: Colouring,
    pub blame: Vec<Option<usize>>,
    pub failures: Vec<Failure>,
    pub quasi: QuasiPrecolouring,
}

struct SweepState<'a> {
    g: &'a Graph,
    colouring: Colouring,
    blame: Vec<Option<usize>>,
    failures: Vec<Failure>,
}

impl SweepState<'_> {
    fn neighbour_with(&self, v: usize, c: Colour) -> Option<usize> {
        self.g.neighbours(v).iter().copied().find(|&w| self.colouring.get(w) == Some(c))
    }

    fn side_witness(&self, side: &[usize], c: Colour) -> Option<usize> {
        side.iter().find_map(|&v| self.neighbour_with(v, c))
    }

    fn colour_component(
        &mut self,
        ord: &MultiChainOrdering,
        comp: &BipartiteComponent,
        above: Option<usize>,
        not_below: Colour,
        with_below: Colour,
    ) -> Result<()> {
        let (b1, b2) = (&comp.side_b1[..], &comp.side_b2[..]);
        // (colour of B1, blame for whichever side takes with_below)
        let (b1_colour, blame) = if let Some(w) = self.side_witness(b1, not_below) {
            (with_below, Some(w))
        } else if let Some(w) = self.side_witness(b2, not_below) {
            (not_below, Some(w))
        } else if let Some(w) = self.side_witness(b1, with_below) {
            (not_below, Some(w))
        } else if let Some(w) = self.side_witness(b2, with_below) {
            (with_below, Some(w))
        } else {
            let b1_smaller = match above {
                Some(j) => {
                    let target = ord.layer_bits(j);
                    let reach = |side: &[usize]| -> Result<fixedbitset::FixedBitSet> {
                        let top = max_neighbourhood_vertex(self.g, side, target)?;
                        let mut row = self.g.row(top).clone();
                        row.intersect_with(target);
                        Ok(row)
                    };
                    let (r1, r2) = (reach(b1)?, reach(b2)?);
                    r1.is_subset(&r2) && r1 != r2
                }
                None => false,
            };
            (if b1_smaller { with_below } else { not_below }, None)
        };
        let b2_colour = if b1_colour == with_below { not_below } else { with_below };
        for (side, c) in [(b1, b1_colour), (b2, b2_colour)] {
            for &v in side {
                self.colouring.set(v, c);
                if c == with_below {
                    self.blame[v] = blame;
                }
            }
        }
        for (side, c) in [(b1, b1_colour), (b2, b2_colour)] {
            if let Some((v, w)) = side.iter().find_map(|&v| self.neighbour_with(v, c).map(|w| (v, w))) {
                self.failures.push(Failure::Clash { vertex: VertexId(v), neighbour: VertexId(w), colour: c });
                break;
            }
        }
        Ok(())
    }

    fn colour_vertex(&mut self, v: usize, not_below: Colour, with_below: Colour) {
        match self.neighbour_with(v, not_below) {
            Some(w) => {
                self.colouring.set(v, with_below);
                self.blame[v] = Some(w);
                if let Some(x) = self.neighbour_with(v, with_below) {
                    self.failures.push(Failure::Clash {
                        vertex: VertexId(v),
                        neighbour: VertexId(x),
                        colour: with_below,
                    });
                }
            }
            None => self.colouring.set(v, not_below),
        }
    }
}

/// The sweep behind [`conservative_colouring`]. With `keep_going` it records
/// every failure instead of stopping at the first, keeping the colour the
/// vertex was pushed to.
pub(crate) fn conservative_sweep(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    q: &ColourAssignment,
    start: usize,
    end: usize,
    keep_going: bool,
) -> Result<Sweep> {
    let quasi = compute_quasi_precolouring(g, ord, lists, q, start..=end)?;
    let mut st =
        SweepState { g, colouring: Colouring::uncoloured(g.n()), blame: vec![None; g.n()], failures: Vec::new() };
    if start > end {
        return Ok(Sweep { colouring: st.colouring, blame: st.blame, failures: st.failures, quasi });
    }
    if let Some(c) = quasi.conflict() {
        st.failures.push(Failure::Forced(c));
        if !keep_going {
            return Ok(Sweep { colouring: st.colouring, blame: st.blame, failures: st.failures, quasi });
        }
    }
    for i in start..=end {
        for &v in ord.layer(i) {
            if let Some(c) = quasi.forced(v) {
                st.colouring.set(v, c);
            }
        }
    }
    'layers: for i in start..=end {
        let (not_below, with_below) = split_pair(q, i)?;
        let above = (i < end).then_some(i + 1);
        for comp in ord.components(i) {
            if comp.len() < 2 || comp.vertices().any(|v| st.colouring.get(v).is_some()) {
                continue;
            }
            st.colour_component(ord, comp, above, not_below, with_below)?;
            if !keep_going && !st.failures.is_empty() {
                break 'layers;
            }
        }
        for &v in ord.layer(i) {
            if st.colouring.get(v).is_some() {
                continue;
            }
            st.colour_vertex(v, not_below, with_below);
            if !keep_going && !st.failures.is_empty() {
                break 'layers;
            }
        }
    }
    Ok(Sweep { colouring: st.colouring, blame: st.blame, failures: st.failures, quasi })
}

/// Colours layers `start..=end` under `q`, returning `success = false` when
/// the sweep is forced into an improper colouring. An empty range succeeds.
pub fn conservative_colouring(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    q: &ColourAssignment,
    start: usize,
    end: usize,
) -> Result<ConservativeRun> {
    let sweep = conservative_sweep(g, ord, lists, q, start, end, false)?;
    Ok(ConservativeRun {
        success: sweep.failures.is_empty(),
        colouring: sweep.colouring,
        blame: sweep.blame,
        failure: sweep.failures.first().copied(),
    })
}
