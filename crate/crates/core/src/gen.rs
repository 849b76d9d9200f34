//! Seeded random instances.
//!
//! Randomness comes from ChaCha8, whose output is fixed across platforms, so
//! a seed always produces the same instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::allowable::AllowableArray;
use crate::colour::{Colour, ColourPair, ColourSet, ListMapping};
use crate::engine::ColourAssignment;
use crate::error::{Error, Result};
use crate::graph::Permutation;
use crate::solver::Instance;

/// Attempts at drawing a connected uniform permutation before giving up.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    pub seed: u64,
    /// Probability that each colour beyond the guaranteed one joins a list.
    pub list_density: f64,
    /// Probability that a vertex gets a singleton list.
    pub precolour_rate: f64,
    /// When set, each value moves at most this far from its sorted position,
    /// giving long, thin graphs with many layers instead of a uniform
    /// permutation.
    pub band: Option<usize>,
}

impl GenConfig {
    /// Full lists, no precolouring, uniform permutation.
    pub fn new(n: usize, seed: u64) -> Self {
        GenConfig { n, seed, list_density: 1.0, precolour_rate: 0.0, band: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        for (name, r) in [("list density", self.list_density), ("precolour rate", self.precolour_rate)] {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidConfig(format!("{name} {r} is outside [0, 1]")));
            }
        }
        if self.band == Some(0) {
            return Err(Error::InvalidConfig("band must be at least 1".into()));
        }
        Ok(())
    }
}

fn is_connected(values: &[usize]) -> bool {
    let mut max = 0;
    for (p, &v) in values.iter().enumerate() {
        max = max.max(v);
        if max == p + 1 && p + 1 < values.len() {
            return false;
        }
    }
    true
}

/// Uniform permutation of `1..=n` whose graph is connected, by rejection.
pub fn random_connected_permutation(rng: &mut impl Rng, n: usize) -> Result<Permutation> {
    let mut values: Vec<usize> = (1..=n).collect();
    for _ in 0..MAX_ATTEMPTS {
        values.shuffle(rng);
        if is_connected(&values) {
            return Permutation::new(values);
        }
    }
    Err(Error::GeneratorExhausted(MAX_ATTEMPTS))
}

/// Permutation where each value is swapped with a random one at most
/// `band - 1` places ahead; every prefix that would disconnect the graph then
/// has its last value swapped with the next one.
pub fn random_banded_permutation(rng: &mut impl Rng, n: usize, band: usize) -> Result<Permutation> {
    let mut values: Vec<usize> = (1..=n).collect();
    for i in 0..n {
        let j = rng.gen_range(i..(i + band).min(n));
        values.swap(i, j);
    }
    let mut max = 0;
    for p in 0..n.saturating_sub(1) {
        max = max.max(values[p]);
        if max == p + 1 {
            values.swap(p, p + 1);
            max = max.max(values[p]);
        }
    }
    Permutation::new(values)
}

/// Lists per vertex: a singleton with probability `precolour_rate`,
/// otherwise one random colour plus each other colour with probability
/// `list_density`.
pub fn random_lists(rng: &mut impl Rng, n: usize, list_density: f64, precolour_rate: f64) -> ListMapping {
    let lists = (0..n)
        .map(|_| {
            let c = Colour::ALL[rng.gen_range(0..3)];
            let mut list = ColourSet::single(c);
            if rng.gen_bool(precolour_rate) {
                return list;
            }
            for other in Colour::ALL {
                if other != c && rng.gen_bool(list_density) {
                    list.insert(other);
                }
            }
            list
        })
        .collect();
    ListMapping::new(lists)
}

pub fn gen_instance(cfg: &GenConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let perm = match cfg.band {
        Some(b) => random_banded_permutation(&mut rng, cfg.n, b)?,
        None => random_connected_permutation(&mut rng, cfg.n)?,
    };
    let lists = random_lists(&mut rng, cfg.n, cfg.list_density, cfg.precolour_rate);
    Ok(Instance::from_permutation(perm, lists))
}

/// A uniformly chosen walk through the array: every consecutive pair of
/// layer pairs is allowed at its boundary. `None` if no such walk exists.
pub fn random_obeying_assignment(rng: &mut impl Rng, a: &AllowableArray) -> Option<ColourAssignment> {
    let k = a.len();
    if k == 0 {
        return None;
    }
    // alive[i]: pairs at layer i from which a walk reaches the top layer.
    let mut alive = vec![Vec::new(); k + 1];
    alive[k] = ColourPair::ALL.to_vec();
    for i in (0..k).rev() {
        alive[i] = a.entry(i).iter().filter(|w| alive[i + 1].contains(&w.upper)).map(|w| w.lower).collect();
        alive[i].dedup();
    }
    let mut q = ColourAssignment::new(k + 1);
    let mut current = *alive[0].choose(rng)?;
    q.set(0, current);
    for i in 0..k {
        let options: Vec<_> =
            a.entry(i).iter().filter(|w| w.lower == current && alive[i + 1].contains(&w.upper)).collect();
        current = options.choose(rng)?.upper;
        q.set(i + 1, current);
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_permutation;
    use crate::solver::Source;

    fn perm_of(inst: &Instance) -> &Permutation {
        match &inst.source {
            Source::Permutation(p) => p,
            Source::Graph { .. } => unreachable!(),
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let cfg = GenConfig { list_density: 0.5, precolour_rate: 0.3, ..GenConfig::new(12, 7) };
        let (a, b) = (gen_instance(&cfg).unwrap(), gen_instance(&cfg).unwrap());
        assert_eq!(perm_of(&a), perm_of(&b));
        assert_eq!(a.lists, b.lists);
    }

    #[test]
    fn full_lists_without_precolouring() {
        let inst = gen_instance(&GenConfig::new(10, 3)).unwrap();
        assert_eq!(inst.lists, ListMapping::full(10));
        let inst = gen_instance(&GenConfig { precolour_rate: 1.0, ..GenConfig::new(10, 3) }).unwrap();
        assert!((0..10).all(|v| inst.lists.get(v).len() == 1));
    }

    #[test]
    fn generated_graphs_are_connected() {
        for seed in 0..50 {
            let inst = gen_instance(&GenConfig::new(8, seed)).unwrap();
            assert!(graph_from_permutation(perm_of(&inst)).is_connected());
            let banded = gen_instance(&GenConfig { band: Some(3), ..GenConfig::new(40, seed) }).unwrap();
            assert!(graph_from_permutation(perm_of(&banded)).is_connected());
        }
    }

    #[test]
    fn obeying_assignments_follow_the_array() {
        use crate::allowable::init_full_array;
        use crate::colour::{AllowablePair, PairSet};
        use ColourPair as P;

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let full = init_full_array(3).unwrap();
        for _ in 0..20 {
            assert!(full.is_obeyed_by(&random_obeying_assignment(&mut rng, &full).unwrap()));
        }
        let only = |l, u| -> PairSet { [AllowablePair::new(l, u).unwrap()].into_iter().collect() };
        let a = AllowableArray::from_entries(vec![PairSet::FULL, only(P::P13, P::P23)]);
        let q = random_obeying_assignment(&mut rng, &a).unwrap();
        assert_eq!((q.get(1), q.get(2)), (Some(P::P13), Some(P::P23)));
        let dead = AllowableArray::from_entries(vec![only(P::P12, P::P23), only(P::P13, P::P23)]);
        assert_eq!(random_obeying_assignment(&mut rng, &dead), None);
    }

    #[test]
    fn bad_configs() {
        assert!(gen_instance(&GenConfig::new(0, 1)).is_err());
        assert!(gen_instance(&GenConfig { list_density: 1.5, ..GenConfig::new(3, 1) }).is_err());
        assert!(gen_instance(&GenConfig { band: Some(0), ..GenConfig::new(3, 1) }).is_err());
    }
}
