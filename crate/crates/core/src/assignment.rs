//! Choosing layer pairs from the allowable array, finding the chains of
//! forced vertices that make the conservative sweep fail, and repairing
//! the assignment until no such chain is left.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::allowable::{has_empty_entry, AllowableArray};
use crate::colour::{AllowablePair, Colour, ColourPair, ListMapping};
use crate::engine::{almost_adjacent, compute_quasi_precolouring, conservative_sweep, ColourAssignment, Failure};
use crate::error::{Error, Result};
use crate::graph::{Graph, Side, VertexId};
use crate::multichain::MultiChainOrdering;

/// A sequence of vertices, one per layer from `start_layer` upwards, whose
/// forced endpoints rule out every colouring admitting the assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiBadChain {
    pub vertices: Vec<VertexId>,
    pub start_layer: usize,
    /// Forced colour of the first vertex.
    pub start_colour: Colour,
    /// Forced colour of the last vertex.
    pub end_colour: Colour,
}

impl QuasiBadChain {
    /// Layer of the first vertex.
    pub fn h(&self) -> usize {
        self.start_layer
    }

    /// Layer of the last vertex.
    pub fn l(&self) -> usize {
        self.start_layer + self.vertices.len().saturating_sub(1)
    }
}

impl fmt::Display for QuasiBadChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "layers {}..{}:", self.h(), self.l())?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        write!(f, " (ends forced {} and {})", self.start_colour, self.end_colour)
    }
}

/// The first requirement a candidate chain breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDefect {
    TooShort,
    NotConsecutive { position: usize },
    NotLinked { position: usize },
    NotTransmitting { layer: usize },
    StartNotForced,
    EndNotForced,
}

impl fmt::Display for ChainDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDefect::TooShort => write!(f, "chain spans fewer than three layers"),
            ChainDefect::NotConsecutive { position } => {
                write!(f, "member {position} is not in the layer after its predecessor")
            }
            ChainDefect::NotLinked { position } => {
                write!(f, "member {position} is neither adjacent nor almost-adjacent to its predecessor")
            }
            ChainDefect::NotTransmitting { layer } => {
                write!(f, "layer {layer} shares the same colour with both neighbouring layers")
            }
            ChainDefect::StartNotForced => write!(f, "first member is not forced to the expected colour"),
            ChainDefect::EndNotForced => write!(f, "last member is not forced to the expected colour"),
        }
    }
}

/// Checks a chain against the definition, independently of how it was found:
/// members in consecutive layers spanning at least three, each adjacent or
/// almost-adjacent to the next, every interior layer sharing different
/// colours with the layers below and above, the first member forced to the
/// colour of layer `h + 1` missing from `h + 2`, and the last forced to the
/// colour of layer `l - 1` missing from `l - 2`.
pub fn check_quasi_bad_chain(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    q: &ColourAssignment,
    chain: &QuasiBadChain,
) -> Result<Option<ChainDefect>> {
    let vs = &chain.vertices;
    if vs.len() < 3 {
        return Ok(Some(ChainDefect::TooShort));
    }
    let (h, l) = (chain.h(), chain.l());
    if l > ord.k() {
        return Ok(Some(ChainDefect::NotConsecutive { position: vs.len() - 1 }));
    }
    for (pos, v) in vs.iter().enumerate() {
        if ord.layer_of(v.index()) != h + pos {
            return Ok(Some(ChainDefect::NotConsecutive { position: pos }));
        }
    }
    for pos in 1..vs.len() {
        let (a, b) = (vs[pos - 1].index(), vs[pos].index());
        if !g.adjacent(a, b) && !almost_adjacent(g, ord, a, b)? {
            return Ok(Some(ChainDefect::NotLinked { position: pos }));
        }
    }
    for i in h + 1..l {
        let below = q.pair(i)?.shared(q.pair(i - 1)?);
        let above = q.pair(i)?.shared(q.pair(i + 1)?);
        if below.is_none() || below == above {
            return Ok(Some(ChainDefect::NotTransmitting { layer: i }));
        }
    }
    let qp = compute_quasi_precolouring(g, ord, lists, q, 0..=ord.k())?;
    let forced_between = |v: VertexId, inside: usize, outside: usize| -> Result<bool> {
        Ok(match qp.forced(v.index()) {
            Some(c) => q.pair(inside)?.contains(c) && !q.pair(outside)?.contains(c),
            None => false,
        })
    };
    if !forced_between(vs[0], h + 1, h + 2)? && !sees_both_sides(g, ord, vs[1].index(), vs[0].index()) {
        return Ok(Some(ChainDefect::StartNotForced));
    }
    let (last, before) = (vs[vs.len() - 1].index(), vs[vs.len() - 2].index());
    if !forced_between(vs[vs.len() - 1], l - 1, l - 2)? && !sees_both_sides(g, ord, before, last) {
        return Ok(Some(ChainDefect::EndNotForced));
    }
    Ok(None)
}

/// `x` is adjacent to both sides of `y`'s component, which lies in a layer
/// next to `x`'s. One of those sides must take the colour the two layers
/// share, which `x` then cannot use, so such a component can end (or start)
/// a chain just as a forced vertex would.
fn sees_both_sides(g: &Graph, ord: &MultiChainOrdering, x: usize, y: usize) -> bool {
    let comp = ord.component_of(y);
    !comp.side_b2.is_empty()
        && comp.side_b1.iter().any(|&w| g.adjacent(x, w))
        && comp.side_b2.iter().any(|&w| g.adjacent(x, w))
}

/// The assignment obtained by starting from the smallest pair of the first
/// boundary and, layer by layer, taking the smallest compatible pair.
pub fn extract_assignment(a: &AllowableArray) -> Result<ColourAssignment> {
    if a.is_empty() {
        return Err(Error::NoBoundary);
    }
    if let Some(i) = has_empty_entry(a) {
        return Err(Error::EmptyEntry(i));
    }
    let mut q = ColourAssignment::new(a.len() + 1);
    let first = a.entry(0).iter().next().unwrap();
    q.set(0, first.lower);
    q.set(1, first.upper);
    for j in 1..a.len() {
        let lower = q.pair(j)?;
        let next = a
            .with_lower(j, lower)
            .next()
            .ok_or_else(|| Error::Internal(format!("boundary {j} has no pair starting with {lower}")))?;
        q.set(j + 1, next.upper);
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

/// Sets `q(i) = pair` and rewrites layers in `direction` until the
/// assignment is consistent with the array again, always taking the
/// smallest compatible pair.
pub fn propagate_colour_change(
    a: &AllowableArray,
    q: &ColourAssignment,
    i: usize,
    pair: ColourPair,
    direction: Direction,
) -> Result<ColourAssignment> {
    let k = a.len();
    if i > k {
        return Err(Error::MissingPair(i));
    }
    let not_allowed = || Error::PairNotAllowed { layer: i, pair: pair.to_string() };
    let mut q = q.clone();
    match direction {
        Direction::Down => {
            if i < k && !AllowablePair::new(pair, q.pair(i + 1)?).is_some_and(|w| a.contains(i, w)) {
                return Err(not_allowed());
            }
            q.set(i, pair);
            for j in (0..i).rev() {
                let upper = q.pair(j + 1)?;
                if q.get(j).and_then(|p| AllowablePair::new(p, upper)).is_some_and(|w| a.contains(j, w)) {
                    break;
                }
                let w = a
                    .with_upper(j, upper)
                    .next()
                    .ok_or_else(|| Error::Internal(format!("boundary {j} has no pair ending in {upper}")))?;
                q.set(j, w.lower);
            }
        }
        Direction::Up => {
            if i > 0 && !AllowablePair::new(q.pair(i - 1)?, pair).is_some_and(|w| a.contains(i - 1, w)) {
                return Err(not_allowed());
            }
            q.set(i, pair);
            for j in i..k {
                let lower = q.pair(j)?;
                if q.get(j + 1).and_then(|p| AllowablePair::new(lower, p)).is_some_and(|w| a.contains(j, w)) {
                    break;
                }
                let w = a
                    .with_lower(j, lower)
                    .next()
                    .ok_or_else(|| Error::Internal(format!("boundary {j} has no pair starting with {lower}")))?;
                q.set(j + 1, w.upper);
            }
        }
    }
    Ok(q)
}

/// Walks blame links down from a failed vertex to a forced one. Returns the
/// chain bottom-up, or `None` if the failure does not have that shape.
fn trace_chain(
    ord: &MultiChainOrdering,
    forced: impl Fn(usize) -> Option<Colour>,
    blame: &[Option<usize>],
    failure: &Failure,
) -> Option<QuasiBadChain> {
    let Failure::Clash { vertex, neighbour, colour } = *failure else { return None };
    let (v, u) = (vertex.index(), neighbour.index());
    if ord.layer_of(u) != ord.layer_of(v) + 1 || forced(u) != Some(colour) {
        return None;
    }
    let mut path = vec![u, v];
    let mut x = v;
    while forced(x).is_none() {
        x = blame[x]?;
        if path.len() > ord.layer_count() {
            return None;
        }
        path.push(x);
    }
    path.reverse();
    Some(QuasiBadChain {
        vertices: path.iter().map(|&v| VertexId(v)).collect(),
        start_layer: ord.layer_of(path[0]),
        start_colour: forced(path[0])?,
        end_colour: colour,
    })
}

/// Every chain behind a failure of the conservative sweep over all layers,
/// found by letting the sweep continue past failures and tracing blame
/// links. The second value reports whether the sweep failed at all.
pub fn collect_quasi_bad_chains(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    q: &ColourAssignment,
) -> Result<(Vec<QuasiBadChain>, Vec<Failure>)> {
    let sweep = conservative_sweep(g, ord, lists, q, 0, ord.k(), true)?;
    let mut chains = Vec::new();
    for failure in &sweep.failures {
        if let Some(chain) = trace_chain(ord, |v| sweep.quasi.forced(v), &sweep.blame, failure) {
            if check_quasi_bad_chain(g, ord, lists, q, &chain)?.is_none() && !chains.contains(&chain) {
                chains.push(chain);
            }
        }
    }
    Ok((chains, sweep.failures))
}

/// Bit per side of each component of layer `j` that `v` has a neighbour on.
fn side_marks(g: &Graph, ord: &MultiChainOrdering, v: usize, j: usize) -> Vec<u8> {
    let mut marks = vec![0u8; ord.components(j).len()];
    for &w in g.neighbours(v) {
        if ord.layer_of(w) == j {
            let (c, side) = ord.membership(w);
            marks[c] |= side_bit(side);
        }
    }
    marks
}

fn side_bit(side: Side) -> u8 {
    match side {
        Side::B1 => 1,
        Side::B2 => 2,
    }
}

/// Every chain under `q` that ends in the highest layer any chain reaches,
/// one per possible first layer, highest first layer first. Found by a
/// layer-by-layer search over the chain definition rather than from a
/// failed sweep.
pub fn highest_quasi_bad_chains(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    q: &ColourAssignment,
) -> Result<Vec<QuasiBadChain>> {
    let k = ord.k();
    if k < 2 {
        return Ok(Vec::new());
    }
    let qp = compute_quasi_precolouring(g, ord, lists, q, 0..=k)?;
    let mut transmitting = vec![false; k + 1];
    for (i, t) in transmitting.iter_mut().enumerate().take(k).skip(1) {
        let below = q.pair(i)?.shared(q.pair(i - 1)?);
        let above = q.pair(i)?.shared(q.pair(i + 1)?);
        *t = below.is_some() && below != above;
    }
    let forced_between = |v: usize, inside: usize, outside: usize| -> bool {
        qp.forced(v).is_some_and(|c| {
            q.pair(inside).is_ok_and(|p| p.contains(c)) && !q.pair(outside).is_ok_and(|p| p.contains(c))
        })
    };
    let both = |marks: &[u8], v: usize| marks[ord.membership(v).0] == 3;
    let linked = |marks: &[u8], v: usize| {
        let (c, side) = ord.membership(v);
        marks[c] & side_bit(side) != 0
    };
    // starts[y]: first layers of chain prefixes ending at y.
    let n = g.n();
    let mut starts = vec![FixedBitSet::with_capacity(k + 1); n];
    let mut ends = vec![FixedBitSet::with_capacity(k + 1); k + 1];
    for j in 1..=k {
        let down: Vec<Vec<u8>> = ord.layer(j).iter().map(|&y| side_marks(g, ord, y, j - 1)).collect();
        for &x in ord.layer(j - 1) {
            let up = side_marks(g, ord, x, j);
            let x_starts = j < k && forced_between(x, j, j + 1);
            let through = transmitting[j - 1] && !starts[x].is_clear();
            let sx = if through { starts[x].clone() } else { FixedBitSet::new() };
            for (py, &y) in ord.layer(j).iter().enumerate() {
                if !linked(&up, y) {
                    continue;
                }
                if j < k && (x_starts || both(&down[py], x)) {
                    starts[y].insert(j - 1);
                }
                if through {
                    starts[y].union_with(&sx);
                    if (j >= 2 && forced_between(y, j - 1, j - 2)) || both(&up, y) {
                        ends[j].union_with(&sx);
                    }
                }
            }
        }
    }
    let Some(l) = (2..=k).rev().find(|&j| !ends[j].is_clear()) else { return Ok(Vec::new()) };
    let mut chains = Vec::new();
    for h in ends[l].ones().collect::<Vec<_>>().into_iter().rev() {
        // Walk down from an end vertex, keeping h reachable.
        let mut path = Vec::new();
        'ends: for &x in ord.layer(l - 1) {
            if !starts[x].contains(h) {
                continue;
            }
            let up = side_marks(g, ord, x, l);
            for &y in ord.layer(l) {
                if linked(&up, y) && (forced_between(y, l - 1, l - 2) || both(&up, y)) {
                    path = vec![y, x];
                    break 'ends;
                }
            }
        }
        let mut j = l - 1;
        while j > h {
            let cur = *path.last().unwrap();
            let down = side_marks(g, ord, cur, j - 1);
            let next = ord.layer(j - 1).iter().copied().find(|&x| {
                let up = side_marks(g, ord, x, j);
                if !linked(&up, cur) {
                    return false;
                }
                if h == j - 1 {
                    forced_between(x, j, j + 1) || both(&down, x)
                } else {
                    transmitting[j - 1] && starts[x].contains(h)
                }
            });
            let next =
                next.ok_or_else(|| Error::Internal(format!("chain from layer {h} to {l} could not be rebuilt")))?;
            path.push(next);
            j -= 1;
        }
        path.reverse();
        chains.push(QuasiBadChain {
            vertices: path.iter().map(|&v| VertexId(v)).collect(),
            start_layer: h,
            start_colour: q.pair(h)?.shared(q.pair(h + 1)?).unwrap(),
            end_colour: q.pair(l - 1)?.shared(q.pair(l)?).unwrap(),
        });
    }
    Ok(chains)
}

/// Chains worth repairing when the conservative sweep fails under `q`, or
/// `None` when it succeeds: every chain ending in the highest layer any
/// chain reaches, highest first layer first. Chains traced back from the
/// sweep's failures are preferred over searched ones with the same layers.
///
/// Fails if the sweep fails but no chain exists, or if a chain breaks the
/// colour pattern every chain must follow.
pub fn repair_candidates(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    q: &ColourAssignment,
) -> Result<Option<Vec<QuasiBadChain>>> {
    if let Some(i) = q.first_bad_layer(ord, lists) {
        return Err(Error::NotGood(i));
    }
    let (traced, failures) = collect_quasi_bad_chains(g, ord, lists, q)?;
    if failures.is_empty() {
        return Ok(None);
    }
    let mut chains = highest_quasi_bad_chains(g, ord, lists, q)?;
    if chains.is_empty() {
        return Err(Error::ChainNotFound(failures[0].to_string()));
    }
    for chain in &mut chains {
        if let Some(t) = traced.iter().find(|t| t.h() == chain.h() && t.l() == chain.l()) {
            *chain = t.clone();
        }
        for i in chain.h()..chain.l() {
            let (p, r) = (q.pair(i)?, q.pair(i + 1)?);
            if p == r {
                return Err(Error::Internal(format!("layers {i} and {} of a chain share a pair", i + 1)));
            }
            if i + 2 <= chain.l() {
                let triple = p.as_set().intersect(r.as_set()).intersect(q.pair(i + 2)?.as_set());
                if !triple.is_empty() {
                    return Err(Error::Internal(format!("layers {i}..{} of a chain share a colour", i + 2)));
                }
            }
        }
    }
    Ok(Some(chains))
}

/// The chain to repair when the conservative sweep fails under `q`, or
/// `None` when it succeeds: among chains ending highest, the one starting
/// highest, so no other chain ends above its first layer.
pub fn find_quasi_bad_chain(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    q: &ColourAssignment,
) -> Result<Option<QuasiBadChain>> {
    Ok(repair_candidates(g, ord, lists, q)?.map(|mut c| c.swap_remove(0)))
}

/// Lowest layer `i` in `h..=l-2` whose pair can be swapped for the third
/// pair while keeping the boundary to `i + 1` allowed.
pub fn adjustable_layer(a: &AllowableArray, q: &ColourAssignment, chain: &QuasiBadChain) -> Result<Option<usize>> {
    for i in chain.h()..=chain.l().saturating_sub(2) {
        let (p, r) = (q.pair(i)?, q.pair(i + 1)?);
        let swapped = ColourPair::third(p, r);
        if AllowablePair::new(swapped, r).is_some_and(|w| a.contains(i, w)) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Breaks `chain` by giving its lowest adjustable layer the third pair and
/// propagating the change downwards. Layers above that one keep their pairs.
pub fn fix_quasi_bad_chain(
    a: &AllowableArray,
    q: &ColourAssignment,
    chain: &QuasiBadChain,
) -> Result<ColourAssignment> {
    let i = adjustable_layer(a, q, chain)?
        .ok_or_else(|| Error::Internal(format!("no adjustable layer on chain {chain}")))?;
    let swapped = ColourPair::third(q.pair(i)?, q.pair(i + 1)?);
    propagate_colour_change(a, q, i, swapped, Direction::Down)
}

/// One repair step, for tracing.
#[derive(Clone, Debug)]
pub struct Repair {
    pub chain: QuasiBadChain,
    pub layer: usize,
    pub result: ColourAssignment,
}

/// Repairs chains until none is left. Each round takes the chains ending
/// highest and repairs the first, by highest first layer, that has an
/// adjustable layer. Checks that the highest chain end drops with every
/// repair and that at most `6k` repairs are needed.
pub fn eliminate_all_chains(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    a: &AllowableArray,
    q: &ColourAssignment,
) -> Result<ColourAssignment> {
    Ok(eliminate_all_chains_traced(g, ord, lists, a, q)?.0)
}

pub fn eliminate_all_chains_traced(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    a: &AllowableArray,
    q: &ColourAssignment,
) -> Result<(ColourAssignment, Vec<Repair>)> {
    if let Some(i) = has_empty_entry(a) {
        return Err(Error::EmptyEntry(i));
    }
    let bound = 6 * a.len();
    let mut q = q.clone();
    let mut repairs = Vec::new();
    let mut last_end = None;
    while let Some(candidates) = repair_candidates(g, ord, lists, &q)? {
        let l = candidates[0].l();
        if let Some(prev) = last_end {
            if l >= prev {
                return Err(Error::Internal(format!(
                    "repair did not lower the highest chain end (was {prev}, now {l})"
                )));
            }
        }
        if repairs.len() >= bound {
            return Err(Error::Internal(format!("chain repair exceeded {bound} iterations")));
        }
        let mut picked = None;
        for chain in candidates {
            if let Some(layer) = adjustable_layer(a, &q, &chain)? {
                picked = Some((chain, layer));
                break;
            }
        }
        let (chain, layer) =
            picked.ok_or_else(|| Error::Internal(format!("no adjustable layer on any chain ending at layer {l}")))?;
        q = fix_quasi_bad_chain(a, &q, &chain)?;
        last_end = Some(l);
        repairs.push(Repair { chain, layer, result: q.clone() });
    }
    Ok((q, repairs))
}
