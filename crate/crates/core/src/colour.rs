//! Colours, colour lists and the pair types used by layer assignments.
//!
//! The colour universe is fixed at three. Lists are bitmasks, pairs are
//! ordered so that `12 < 13 < 23`, which is the order every tie-break in
//! the crate uses.

use std::fmt;

use crate::graph::VertexId;

/// One of the three colours, rendered as `1`, `2` or `3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    C1,
    C2,
    C3,
}

impl Colour {
    pub const ALL: [Colour; 3] = [Colour::C1, Colour::C2, Colour::C3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn digit(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_digit(d: u8) -> Option<Colour> {
        match d {
            1 => Some(Colour::C1),
            2 => Some(Colour::C2),
            3 => Some(Colour::C3),
            _ => None,
        }
    }

    fn bit(self) -> u8 {
        1 << self.index()
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digit())
    }
}

/// A subset of the three colours.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColourSet(u8);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);
    pub const FULL: ColourSet = ColourSet(0b111);

    pub fn single(c: Colour) -> Self {
        ColourSet(c.bit())
    }

    pub fn contains(self, c: Colour) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn insert(&mut self, c: Colour) {
        self.0 |= c.bit();
    }

    pub fn intersect(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The colour of a singleton set.
    pub fn only(self) -> Option<Colour> {
        if self.len() == 1 {
            self.iter().next()
        } else {
            None
        }
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        Colour::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<Colour> for ColourSet {
    fn from_iter<I: IntoIterator<Item = Colour>>(iter: I) -> Self {
        let mut set = ColourSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Display for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.iter() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Two distinct colours, unordered. Any two different pairs share exactly
/// one colour.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColourPair {
    lo: Colour,
    hi: Colour,
}

impl ColourPair {
    pub const P12: ColourPair = ColourPair { lo: Colour::C1, hi: Colour::C2 };
    pub const P13: ColourPair = ColourPair { lo: Colour::C1, hi: Colour::C3 };
    pub const P23: ColourPair = ColourPair { lo: Colour::C2, hi: Colour::C3 };
    pub const ALL: [ColourPair; 3] = [ColourPair::P12, ColourPair::P13, ColourPair::P23];

    pub fn new(a: Colour, b: Colour) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(ColourPair { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Some(ColourPair { lo: b, hi: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// The pair made of the two colours other than `c`.
    pub fn without(c: Colour) -> Self {
        match c {
            Colour::C1 => ColourPair::P23,
            Colour::C2 => ColourPair::P13,
            Colour::C3 => ColourPair::P12,
        }
    }

    /// The pair different from both `a` and `b`. Requires `a != b`.
    pub fn third(a: ColourPair, b: ColourPair) -> Self {
        debug_assert_ne!(a, b);
        ColourPair::without(a.shared(b).expect("distinct pairs share a colour"))
    }

    pub fn lo(self) -> Colour {
        self.lo
    }

    pub fn hi(self) -> Colour {
        self.hi
    }

    pub fn index(self) -> usize {
        match (self.lo, self.hi) {
            (Colour::C1, Colour::C2) => 0,
            (Colour::C1, Colour::C3) => 1,
            _ => 2,
        }
    }

    pub fn contains(self, c: Colour) -> bool {
        self.lo == c || self.hi == c
    }

    pub fn as_set(self) -> ColourSet {
        [self.lo, self.hi].into_iter().collect()
    }

    /// The colour outside the pair.
    pub fn missing(self) -> Colour {
        Colour::ALL.into_iter().find(|c| !self.contains(*c)).unwrap()
    }

    /// The single colour shared with a different pair; `None` when equal.
    pub fn shared(self, other: ColourPair) -> Option<Colour> {
        if self == other {
            None
        } else {
            self.as_set().intersect(other.as_set()).only()
        }
    }

    /// The member of the pair that is not `c`. `c` must be in the pair.
    pub fn other(self, c: Colour) -> Colour {
        debug_assert!(self.contains(c));
        if self.lo == c {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for ColourPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lo, self.hi)
    }
}

impl fmt::Debug for ColourPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Pair assignment to two adjacent layers: `lower` for `L_i`, `upper` for
/// `L_{i+1}`. The two pairs are distinct.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AllowablePair {
    pub lower: ColourPair,
    pub upper: ColourPair,
}

impl AllowablePair {
    /// All six allowable pairs in lexicographic order.
    pub const ALL: [AllowablePair; 6] = [
        AllowablePair { lower: ColourPair::P12, upper: ColourPair::P13 },
        AllowablePair { lower: ColourPair::P12, upper: ColourPair::P23 },
        AllowablePair { lower: ColourPair::P13, upper: ColourPair::P12 },
        AllowablePair { lower: ColourPair::P13, upper: ColourPair::P23 },
        AllowablePair { lower: ColourPair::P23, upper: ColourPair::P12 },
        AllowablePair { lower: ColourPair::P23, upper: ColourPair::P13 },
    ];

    pub fn new(lower: ColourPair, upper: ColourPair) -> Option<Self> {
        (lower != upper).then_some(AllowablePair { lower, upper })
    }

    /// The colour common to both layers.
    pub fn shared(self) -> Colour {
        self.lower.shared(self.upper).unwrap()
    }

    pub fn index(self) -> usize {
        let u = self.upper.index();
        let l = self.lower.index();
        2 * l + if u > l { u - 1 } else { u }
    }
}

impl fmt::Display for AllowablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.lower, self.upper)
    }
}

impl fmt::Debug for AllowablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A subset of the six allowable pairs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PairSet(u8);

impl PairSet {
    pub const EMPTY: PairSet = PairSet(0);
    pub const FULL: PairSet = PairSet(0b11_1111);

    pub fn contains(self, w: AllowablePair) -> bool {
        self.0 & (1 << w.index()) != 0
    }

    pub fn insert(&mut self, w: AllowablePair) {
        self.0 |= 1 << w.index();
    }

    pub fn remove(&mut self, w: AllowablePair) -> bool {
        let had = self.contains(w);
        self.0 &= !(1 << w.index());
        had
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in lexicographic order.
    pub fn iter(self) -> impl Iterator<Item = AllowablePair> {
        AllowablePair::ALL.into_iter().filter(move |w| self.contains(*w))
    }
}

impl FromIterator<AllowablePair> for PairSet {
    fn from_iter<I: IntoIterator<Item = AllowablePair>>(iter: I) -> Self {
        let mut set = PairSet::EMPTY;
        for w in iter {
            set.insert(w);
        }
        set
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Per-vertex colour lists. A singleton list precolours its vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListMapping {
    lists: Vec<ColourSet>,
}

impl ListMapping {
    pub fn new(lists: Vec<ColourSet>) -> Self {
        ListMapping { lists }
    }

    pub fn full(n: usize) -> Self {
        ListMapping { lists: vec![ColourSet::FULL; n] }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: usize) -> ColourSet {
        self.lists[v]
    }

    pub fn set(&mut self, v: usize, list: ColourSet) {
        self.lists[v] = list;
    }

    pub fn precoloured(&self, v: usize) -> Option<Colour> {
        self.lists[v].only()
    }

    /// First vertex with an empty list.
    pub fn first_empty(&self) -> Option<VertexId> {
        self.lists.iter().position(|l| l.is_empty()).map(VertexId)
    }

    pub fn as_slice(&self) -> &[ColourSet] {
        &self.lists
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_order_is_lexicographic() {
        assert!(ColourPair::P12 < ColourPair::P13);
        assert!(ColourPair::P13 < ColourPair::P23);
        let mut sorted = AllowablePair::ALL;
        sorted.sort();
        assert_eq!(sorted, AllowablePair::ALL);
    }

    #[test]
    fn allowable_pair_indices_are_dense() {
        for (i, w) in AllowablePair::ALL.iter().enumerate() {
            assert_eq!(w.index(), i, "{w}");
        }
    }

    #[test]
    fn distinct_pairs_share_exactly_one_colour() {
        for a in ColourPair::ALL {
            for b in ColourPair::ALL {
                let common = a.as_set().intersect(b.as_set()).len();
                if a == b {
                    assert_eq!(common, 2);
                    assert_eq!(a.shared(b), None);
                } else {
                    assert_eq!(common, 1);
                    let s = a.shared(b).unwrap();
                    assert!(a.contains(s) && b.contains(s));
                    let t = ColourPair::third(a, b);
                    assert!(t != a && t != b && !t.contains(s));
                }
            }
        }
    }

    #[test]
    fn pair_set_renders_like_the_dump_format() {
        let set: PairSet = [AllowablePair::ALL[4], AllowablePair::ALL[1]].into_iter().collect();
        assert_eq!(set.to_string(), "12|23,23|12");
        assert_eq!(PairSet::EMPTY.to_string(), "-");
        assert_eq!(PairSet::FULL.len(), 6);
    }

    #[test]
    fn colour_set_only_and_display() {
        let s: ColourSet = [Colour::C3, Colour::C1].into_iter().collect();
        assert_eq!(s.to_string(), "13");
        assert_eq!(s.only(), None);
        assert_eq!(ColourSet::single(Colour::C2).only(), Some(Colour::C2));
        assert_eq!(ColourPair::P13.missing(), Colour::C2);
        assert_eq!(ColourPair::without(Colour::C1), ColourPair::P23);
    }
}
