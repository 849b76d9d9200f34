//! The allowable colour array: for every boundary between layers `L_i` and
//! `L_{i+1}`, the ordered pairs of layer colour pairs that survive pruning.
//!
//! Pruning starts from all six pairs per boundary, removes pairs ruled out
//! directly by precoloured vertices, and then repeats three checks until a
//! whole sweep removes nothing: a pair needs a compatible pair on the
//! boundary below, one on the boundary above, and must not force the
//! conservative sweep into failure.

use std::fmt;

use crate::colour::{AllowablePair, ColourPair, ListMapping, PairSet};
use crate::engine::{conservative_colouring, ColourAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::multichain::MultiChainOrdering;

/// Surviving pairs per boundary; entry `i` covers layers `i` and `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AllowableArray {
    entries: Vec<PairSet>,
}

impl AllowableArray {
    pub fn from_entries(entries: Vec<PairSet>) -> Self {
        AllowableArray { entries }
    }

    /// Number of boundaries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> PairSet {
        self.entries[i]
    }

    pub fn entries(&self) -> &[PairSet] {
        &self.entries
    }

    pub fn contains(&self, i: usize, w: AllowablePair) -> bool {
        self.entries.get(i).is_some_and(|e| e.contains(w))
    }

    pub fn remove(&mut self, i: usize, w: AllowablePair) -> bool {
        self.entries[i].remove(w)
    }

    /// Pairs of entry `i` whose upper layer pair is `upper`.
    pub fn with_upper(&self, i: usize, upper: ColourPair) -> impl Iterator<Item = AllowablePair> + '_ {
        self.entries[i].iter().filter(move |w| w.upper == upper)
    }

    /// Pairs of entry `i` whose lower layer pair is `lower`.
    pub fn with_lower(&self, i: usize, lower: ColourPair) -> impl Iterator<Item = AllowablePair> + '_ {
        self.entries[i].iter().filter(move |w| w.lower == lower)
    }

    pub fn total_pairs(&self) -> usize {
        self.entries.iter().map(|e| e.len()).sum()
    }

    /// Whether every boundary of `q` is listed.
    pub fn is_obeyed_by(&self, q: &ColourAssignment) -> bool {
        (0..self.entries.len()).all(|i| match (q.get(i), q.get(i + 1)) {
            (Some(lower), Some(upper)) => AllowablePair::new(lower, upper).is_some_and(|w| self.contains(i, w)),
            _ => false,
        })
    }
}

/// One line per boundary, e.g. `12|13,23|12`, with `-` for an empty entry.
impl fmt::Display for AllowableArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AllowableArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

/// Why a pair left the array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RemovalReason {
    /// A vertex precoloured outside the pair of its layer.
    Precoloured,
    /// Two adjacent vertices across the boundary are both left with only the
    /// shared colour.
    ForcedClash,
    /// No pair on the boundary below ends in this pair's lower layer pair.
    NoPredecessor,
    /// No pair on the boundary above starts with this pair's upper layer pair.
    NoSuccessor,
    /// The uniquely forced extension below makes the conservative sweep fail.
    QuasiBadForcing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Removal {
    pub boundary: usize,
    pub pair: AllowablePair,
    pub reason: RemovalReason,
}

/// A finished array together with how it was reached.
#[derive(Clone, Debug)]
pub struct ArrayBuild {
    pub array: AllowableArray,
    pub removals: Vec<Removal>,
    /// Fixpoint sweeps run, including the final one that changed nothing.
    pub sweeps: usize,
}

/// Every boundary holding all six pairs.
pub fn init_full_array(k: usize) -> Result<AllowableArray> {
    if k == 0 {
        return Err(Error::NoBoundary);
    }
    Ok(AllowableArray { entries: vec![PairSet::FULL; k] })
}

fn fixed_removals(g: &Graph, ord: &MultiChainOrdering, lists: &ListMapping, a: &mut AllowableArray) -> Vec<Removal> {
    let k = a.len();
    let mut removals = Vec::new();
    let mut drop = |a: &mut AllowableArray, boundary: usize, pair: AllowablePair, reason: RemovalReason| {
        if a.remove(boundary, pair) {
            removals.push(Removal { boundary, pair, reason });
        }
    };
    for layer in 0..=k {
        for &v in ord.layer(layer) {
            let Some(c) = lists.precoloured(v) else { continue };
            let banned = ColourPair::without(c);
            for w in AllowablePair::ALL {
                if layer < k && w.lower == banned {
                    drop(a, layer, w, RemovalReason::Precoloured);
                }
                if layer > 0 && w.upper == banned {
                    drop(a, layer - 1, w, RemovalReason::Precoloured);
                }
            }
        }
    }
    for (u, v) in g.edges() {
        let (lu, lv) = (ord.layer_of(u), ord.layer_of(v));
        let (low, high) = match lu.cmp(&lv) {
            std::cmp::Ordering::Less => (u, v),
            std::cmp::Ordering::Greater => (v, u),
            std::cmp::Ordering::Equal => continue,
        };
        let boundary = ord.layer_of(low);
        for w in a.entry(boundary).iter() {
            let s = w.shared();
            let only_shared = |x: usize, pair: ColourPair| lists.get(x).intersect(pair.as_set()).only() == Some(s);
            if only_shared(low, w.lower) && only_shared(high, w.upper) {
                drop(a, boundary, w, RemovalReason::ForcedClash);
            }
        }
    }
    removals
}

/// Removes pairs excluded by precoloured vertices and pairs that leave two
/// adjacent vertices across a boundary with only the shared colour.
pub fn fixed_pass(g: &Graph, ord: &MultiChainOrdering, lists: &ListMapping, a: AllowableArray) -> AllowableArray {
    let mut a = a;
    fixed_removals(g, ord, lists, &mut a);
    a
}

/// Whether `w`, placed on layers `i - 1` and `i`, forces the conservative
/// sweep to fail. The assignment is extended downwards while the boundary
/// below admits exactly one pair ending in the current bottom pair; the
/// sweep then runs from the lowest assigned layer up to `i`.
pub fn forces_quasi_bad(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    a: &AllowableArray,
    i: usize,
    w: AllowablePair,
) -> Result<bool> {
    if i == 0 || i > a.len() {
        return Err(Error::MissingPair(i));
    }
    let mut q = ColourAssignment::new(ord.layer_count());
    q.set(i - 1, w.lower);
    q.set(i, w.upper);
    let mut counter = i - 1;
    let mut below = w.lower;
    while counter > 0 {
        let mut matching = a.with_upper(counter - 1, below);
        let (Some(only), None) = (matching.next(), matching.next()) else { break };
        counter -= 1;
        below = only.lower;
        q.set(counter, below);
    }
    let run = conservative_colouring(g, ord, lists, &q, counter, i)?;
    Ok(!run.success)
}

/// Builds the allowable array, sweeping boundaries in increasing order.
pub fn generate_allowable_array(g: &Graph, ord: &MultiChainOrdering, lists: &ListMapping) -> Result<AllowableArray> {
    Ok(build_allowable_array(g, ord, lists, |_| None)?.array)
}

/// Builds the allowable array and records every removal. `order` may supply
/// the boundary visiting order for each sweep (given the sweep number);
/// `None` means increasing order.
pub fn build_allowable_array(
    g: &Graph,
    ord: &MultiChainOrdering,
    lists: &ListMapping,
    mut order: impl FnMut(usize) -> Option<Vec<usize>>,
) -> Result<ArrayBuild> {
    ord.require_bipartite()?;
    let k = ord.k();
    let mut a = init_full_array(k)?;
    let mut removals = fixed_removals(g, ord, lists, &mut a);
    let mut sweeps = 0;
    let mut changed = true;
    while changed {
        changed = false;
        sweeps += 1;
        if sweeps > 6 * k + 1 {
            return Err(Error::Internal(format!("allowable array did not settle after {} sweeps", sweeps - 1)));
        }
        let boundaries = order(sweeps).unwrap_or_else(|| (0..k).collect());
        for i in boundaries {
            for w in a.entry(i).iter() {
                let reason = if i > 0 && a.with_upper(i - 1, w.lower).next().is_none() {
                    RemovalReason::NoPredecessor
                } else if i + 1 < k && a.with_lower(i + 1, w.upper).next().is_none() {
                    RemovalReason::NoSuccessor
                } else {
                    continue;
                };
                a.remove(i, w);
                removals.push(Removal { boundary: i, pair: w, reason });
                changed = true;
            }
            for w in a.entry(i).iter() {
                if forces_quasi_bad(g, ord, lists, &a, i + 1, w)? {
                    a.remove(i, w);
                    removals.push(Removal { boundary: i, pair: w, reason: RemovalReason::QuasiBadForcing });
                    changed = true;
                }
            }
        }
    }
    Ok(ArrayBuild { array: a, removals, sweeps })
}

/// Lowest boundary with no surviving pair.
pub fn has_empty_entry(a: &AllowableArray) -> Option<usize> {
    a.entries.iter().position(|e| e.is_empty())
}
