//! Brute-force list colouring, used as ground truth in tests. Shares nothing
//! with the solver beyond the graph and list types.

use crate::colour::{AllowablePair, Colour, ColourPair, ListMapping, PairSet};
use crate::error::{Error, Result};
use crate::graph::{Colouring, Graph};

pub const SOLVE_CAP: usize = 20;
pub const ENUMERATE_CAP: usize = 12;

/// Some proper list colouring, or `None`, for graphs of at most
/// [`SOLVE_CAP`] vertices.
pub fn oracle_solve(g: &Graph, lists: &ListMapping) -> Result<Option<Colouring>> {
    oracle_solve_capped(g, lists, SOLVE_CAP)
}

/// Backtracking search that always branches on the uncoloured vertex with
/// the fewest colours left (lowest id on ties).
pub fn oracle_solve_capped(g: &Graph, lists: &ListMapping, cap: usize) -> Result<Option<Colouring>> {
    let n = g.n();
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    let mut colours: Vec<Option<Colour>> = vec![None; n];
    if search(g, lists, &mut colours) {
        Ok(Some(Colouring::from_total(colours.into_iter().map(Option::unwrap).collect())))
    } else {
        Ok(None)
    }
}

fn available(g: &Graph, lists: &ListMapping, colours: &[Option<Colour>], v: usize) -> Vec<Colour> {
    lists.get(v).iter().filter(|&c| g.neighbours(v).iter().all(|&w| colours[w] != Some(c))).collect()
}

fn search(g: &Graph, lists: &ListMapping, colours: &mut [Option<Colour>]) -> bool {
    let mut best: Option<(usize, Vec<Colour>)> = None;
    for v in 0..g.n() {
        if colours[v].is_some() {
            continue;
        }
        let avail = available(g, lists, colours, v);
        if best.as_ref().is_none_or(|(_, b)| avail.len() < b.len()) {
            let empty = avail.is_empty();
            best = Some((v, avail));
            if empty {
                break;
            }
        }
    }
    let Some((v, avail)) = best else { return true };
    for c in avail {
        colours[v] = Some(c);
        if search(g, lists, colours) {
            return true;
        }
    }
    colours[v] = None;
    false
}

/// Visits every proper list colouring exactly once (vertex order, colour
/// order) and returns how many there are. At most [`ENUMERATE_CAP`]
/// vertices.
pub fn oracle_enumerate(g: &Graph, lists: &ListMapping, mut visit: impl FnMut(&[Colour])) -> Result<u64> {
    let n = g.n();
    if n > ENUMERATE_CAP {
        return Err(Error::OracleCap { n, cap: ENUMERATE_CAP });
    }
    let mut colours = Vec::with_capacity(n);
    let mut count = 0;
    enumerate(g, lists, &mut colours, &mut visit, &mut count);
    Ok(count)
}

fn enumerate(
    g: &Graph,
    lists: &ListMapping,
    colours: &mut Vec<Colour>,
    visit: &mut impl FnMut(&[Colour]),
    count: &mut u64,
) {
    let v = colours.len();
    if v == g.n() {
        *count += 1;
        visit(colours);
        return;
    }
    for c in lists.get(v).iter() {
        if g.neighbours(v).iter().any(|&w| w < v && colours[w] == c) {
            continue;
        }
        colours.push(c);
        enumerate(g, lists, colours, visit, count);
        colours.pop();
    }
}

/// For each boundary between consecutive `layers`, the pairs `(Q(i), Q(i+1))`
/// that occur in some good assignment admitted by some proper list
/// colouring. A pair missing here can be dropped without losing a colouring.
/// At most [`ENUMERATE_CAP`] vertices.
pub fn oracle_boundary_pairs(g: &Graph, lists: &ListMapping, layers: &[Vec<usize>]) -> Result<Vec<PairSet>> {
    let k = layers.len().saturating_sub(1);
    let mut seen = vec![PairSet::EMPTY; k];
    oracle_enumerate(g, lists, |c| {
        let fits: Vec<Vec<ColourPair>> = layers
            .iter()
            .map(|layer| ColourPair::ALL.into_iter().filter(|p| layer.iter().all(|&v| p.contains(c[v]))).collect())
            .collect();
        // Pairs reachable from the bottom and from the top with distinct
        // neighbouring pairs.
        let mut up = vec![fits[0].clone()];
        for j in 1..=k {
            let next = fits[j].iter().copied().filter(|&p| up[j - 1].iter().any(|&x| x != p)).collect();
            up.push(next);
        }
        let mut down = vec![Vec::new(); k + 1];
        down[k] = fits[k].clone();
        for j in (0..k).rev() {
            down[j] = fits[j].iter().copied().filter(|&p| down[j + 1].iter().any(|&x| x != p)).collect();
        }
        for (i, entry) in seen.iter_mut().enumerate() {
            for &p in &up[i] {
                for &r in &down[i + 1] {
                    if let Some(w) = AllowablePair::new(p, r) {
                        entry.insert(w);
                    }
                }
            }
        }
    })?;
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::ColourSet;
    use crate::graph::{graph_from_permutation, validate_proper_list_colouring, Permutation};

    use Colour::*;

    fn perm_graph(p: &[usize]) -> Graph {
        graph_from_permutation(&Permutation::new(p.to_vec()).unwrap())
    }

    #[test]
    fn edge_with_equal_singletons() {
        let g = perm_graph(&[2, 1]);
        let lists = ListMapping::new(vec![ColourSet::single(C1); 2]);
        assert_eq!(oracle_solve(&g, &lists).unwrap(), None);
        assert_eq!(oracle_enumerate(&g, &lists, |_| {}).unwrap(), 0);
    }

    #[test]
    fn triangle_counts() {
        let g = perm_graph(&[3, 2, 1]);
        let lists = ListMapping::full(3);
        let c = oracle_solve(&g, &lists).unwrap().unwrap();
        assert!(validate_proper_list_colouring(&g, &lists, &c).unwrap());
        assert_eq!(oracle_enumerate(&g, &lists, |_| {}).unwrap(), 6);
        assert_eq!(oracle_enumerate(&perm_graph(&[2, 1]), &ListMapping::full(2), |_| {}).unwrap(), 6);
    }

    #[test]
    fn single_vertex_count() {
        let lists = ListMapping::new(vec![[C1, C2].into_iter().collect()]);
        assert_eq!(oracle_enumerate(&perm_graph(&[1]), &lists, |_| {}).unwrap(), 2);
    }

    #[test]
    fn path_alternates_within_lists() {
        // path 2-1-4-3
        let g = perm_graph(&[2, 4, 1, 3]);
        let one: ColourSet = [C1].into_iter().collect();
        let two: ColourSet = [C1, C2].into_iter().collect();
        let lists = ListMapping::new(vec![two, one, two, one]);
        let c = oracle_solve(&g, &lists).unwrap().unwrap();
        assert!(validate_proper_list_colouring(&g, &lists, &c).unwrap());
    }

    #[test]
    fn boundary_pairs_of_a_path() {
        // path 3-1-2 rooted at 3; the layers are {3}, {1}, {2}
        let g = Graph::from_edges(3, &[(2, 0), (0, 1)]).unwrap();
        let single = |c| ListMapping::new(vec![ColourSet::single(c), ColourSet::FULL, ColourSet::FULL]);
        let layers = vec![vec![2], vec![0], vec![1]];
        let seen = oracle_boundary_pairs(&g, &single(C1), &layers).unwrap();
        // Vertex 1 sits in the middle layer and is always coloured 1.
        assert!(seen[0].iter().all(|w| w.upper.contains(C1)));
        assert!(seen[1].iter().all(|w| w.lower.contains(C1)));
        assert_eq!((seen[0].len(), seen[1].len()), (4, 4));
    }

    #[test]
    fn caps_are_enforced() {
        let g = Graph::empty(21);
        assert_eq!(oracle_solve(&g, &ListMapping::full(21)).unwrap_err(), Error::OracleCap { n: 21, cap: 20 });
        let g = Graph::empty(13);
        assert!(oracle_enumerate(&g, &ListMapping::full(13), |_| {}).is_err());
    }
}
