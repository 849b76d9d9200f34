//! The full pipeline from an instance to a colouring or a reason why none
//! exists.

use std::fmt;

use crate::allowable::{build_allowable_array, has_empty_entry, AllowableArray};
use crate::assignment::{eliminate_all_chains_traced, extract_assignment, Repair};
use crate::colour::ListMapping;
use crate::engine::{conservative_colouring, ColourAssignment};
use crate::error::{Error, Result};
use crate::graph::{graph_from_permutation, validate_proper_list_colouring, Colouring, Graph, Permutation, VertexId};
use crate::multichain::{build_multichain_ordering, choose_root, MultiChainOrdering};

/// Where the graph comes from: a permutation (root chosen automatically) or
/// an explicit graph with a root whose layering must be multi-chain.
#[derive(Clone, Debug)]
pub enum Source {
    Permutation(Permutation),
    Graph { graph: Graph, root: VertexId },
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub source: Source,
    pub lists: ListMapping,
}

impl Instance {
    pub fn from_permutation(perm: Permutation, lists: ListMapping) -> Self {
        Instance { source: Source::Permutation(perm), lists }
    }

    pub fn from_graph(graph: Graph, root: VertexId, lists: ListMapping) -> Self {
        Instance { source: Source::Graph { graph, root }, lists }
    }

    pub fn n(&self) -> usize {
        match &self.source {
            Source::Permutation(p) => p.len(),
            Source::Graph { graph, .. } => graph.n(),
        }
    }

    pub fn graph(&self) -> Graph {
        match &self.source {
            Source::Permutation(p) => graph_from_permutation(p),
            Source::Graph { graph, .. } => graph.clone(),
        }
    }

    pub fn root(&self) -> VertexId {
        match &self.source {
            Source::Permutation(p) => choose_root(p),
            Source::Graph { root, .. } => *root,
        }
    }

    /// The graph and its validated multi-chain ordering.
    pub fn ordering(&self) -> Result<(Graph, MultiChainOrdering)> {
        let g = self.graph();
        let root = self.root();
        if root.index() >= g.n() {
            return Err(Error::VertexOutOfRange(root.label()));
        }
        let ord = build_multichain_ordering(&g, root.index())?;
        Ok((g, ord))
    }
}

/// Why an instance has no colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A vertex with an empty list.
    EmptyList(VertexId),
    /// A layer boundary where every pair of layer colour pairs was ruled out.
    EmptyBoundary(usize),
    /// A layer holding an odd cycle. Some vertex of the layer below sees the
    /// whole layer, so the cycle and that vertex need four colours.
    OddCycle { layer: usize, vertex: VertexId },
    /// The witness of one connected component, named by its lowest vertex.
    Component { first: VertexId, witness: Box<Witness> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::EmptyList(v) => write!(f, "list {v}"),
            Witness::EmptyBoundary(i) => write!(f, "boundary {i}"),
            Witness::OddCycle { layer, vertex } => write!(f, "oddcycle {layer} {vertex}"),
            Witness::Component { first, witness } => write!(f, "component {first} {witness}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible(Colouring),
    Infeasible(Witness),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible(_))
    }

    pub fn colouring(&self) -> Option<&Colouring> {
        match self {
            Verdict::Feasible(c) => Some(c),
            Verdict::Infeasible(_) => None,
        }
    }
}

/// What the pipeline did on the way to its verdict.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub root: Option<VertexId>,
    pub layers: Vec<Vec<VertexId>>,
    /// Set when the instance was decided without the array (empty list or a
    /// single vertex).
    pub shortcut: Option<&'static str>,
    pub array: Option<AllowableArray>,
    pub array_sweeps: usize,
    pub initial: Option<ColourAssignment>,
    pub repairs: Vec<Repair>,
    pub final_assignment: Option<ColourAssignment>,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.root {
            writeln!(f, "root {r}")?;
        }
        for (i, layer) in self.layers.iter().enumerate() {
            write!(f, "layer {i}:")?;
            for v in layer {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        if let Some(s) = self.shortcut {
            writeln!(f, "shortcut {s}")?;
        }
        if let Some(a) = &self.array {
            writeln!(f, "array after {} sweeps", self.array_sweeps)?;
            for (i, e) in a.entries().iter().enumerate() {
                writeln!(f, "boundary {i}: {e}")?;
            }
        }
        if let Some(q) = &self.initial {
            writeln!(f, "assignment {q}")?;
        }
        writeln!(f, "repairs {}", self.repairs.len())?;
        for (i, r) in self.repairs.iter().enumerate() {
            writeln!(f, "repair {i}: chain {} adjusted layer {} -> {}", r.chain, r.layer, r.result)?;
        }
        if let Some(q) = &self.final_assignment {
            writeln!(f, "final assignment {q}")?;
        }
        Ok(())
    }
}

/// Decides the instance and returns a colouring when one exists.
pub fn solve(inst: &Instance) -> Result<Verdict> {
    Ok(solve_with_trace(inst)?.0)
}

pub fn solve_with_trace(inst: &Instance) -> Result<(Verdict, Trace)> {
    let mut trace = Trace::default();
    let n = inst.n();
    if inst.lists.len() != n {
        return Err(Error::InvalidConfig(format!("{} lists for {n} vertices", inst.lists.len())));
    }
    if let Some(v) = inst.lists.first_empty() {
        trace.shortcut = Some("empty list");
        return Ok((Verdict::Infeasible(Witness::EmptyList(v)), trace));
    }
    let (g, ord) = inst.ordering()?;
    trace.root = Some(VertexId(ord.root()));
    trace.layers = (0..ord.layer_count()).map(|i| ord.layer(i).iter().map(|&v| VertexId(v)).collect()).collect();
    if let Some((layer, vertex)) = ord.odd_cycle() {
        trace.shortcut = Some("odd cycle in a layer");
        return Ok((Verdict::Infeasible(Witness::OddCycle { layer, vertex }), trace));
    }
    let lists = &inst.lists;
    if n == 1 {
        trace.shortcut = Some("single vertex");
        let c = lists.get(0).iter().next().unwrap();
        return Ok((Verdict::Feasible(Colouring::from_total(vec![c])), trace));
    }

    let build = build_allowable_array(&g, &ord, lists, |_| None)?;
    trace.array_sweeps = build.sweeps;
    let a = build.array;
    trace.array = Some(a.clone());
    if let Some(i) = has_empty_entry(&a) {
        return Ok((Verdict::Infeasible(Witness::EmptyBoundary(i)), trace));
    }
    let q = extract_assignment(&a)?;
    trace.initial = Some(q.clone());
    let (q, repairs) = eliminate_all_chains_traced(&g, &ord, lists, &a, &q)?;
    trace.repairs = repairs;
    trace.final_assignment = Some(q.clone());
    let run = conservative_colouring(&g, &ord, lists, &q, 0, ord.k())?;
    if !run.success {
        let why = run.failure.map(|f| f.to_string()).unwrap_or_default();
        return Err(Error::Internal(format!("final colouring failed under a chain-free assignment: {why}")));
    }
    if !validate_proper_list_colouring(&g, lists, &run.colouring)? {
        return Err(Error::Internal("final colouring is not a proper list colouring".into()));
    }
    Ok((Verdict::Feasible(run.colouring), trace))
}

/// Solves every connected component on its own and merges the results.
/// Permutations split into their blocks; explicit graphs keep the given
/// root for its component and use the highest vertex elsewhere.
pub fn solve_components(inst: &Instance) -> Result<Verdict> {
    let n = inst.n();
    if inst.lists.len() != n {
        return Err(Error::InvalidConfig(format!("{} lists for {n} vertices", inst.lists.len())));
    }
    let parts: Vec<(Vec<usize>, Instance)> = match &inst.source {
        Source::Permutation(p) => p
            .blocks()
            .into_iter()
            .map(|r| {
                let offset = r.start;
                let values = p.values()[r.clone()].iter().map(|&v| v - offset).collect();
                let vertices: Vec<usize> = r.collect();
                let lists = ListMapping::new(vertices.iter().map(|&v| inst.lists.get(v)).collect());
                Ok((vertices, Instance::from_permutation(Permutation::new(values)?, lists)))
            })
            .collect::<Result<_>>()?,
        Source::Graph { graph, root } => graph
            .components()
            .into_iter()
            .map(|vertices| {
                let local_root = vertices.iter().position(|&v| v == root.index()).unwrap_or(vertices.len() - 1);
                let lists = ListMapping::new(vertices.iter().map(|&v| inst.lists.get(v)).collect());
                let sub = Instance::from_graph(graph.induced(&vertices), VertexId(local_root), lists);
                (vertices, sub)
            })
            .collect(),
    };
    let mut colouring = Colouring::uncoloured(n);
    for (vertices, sub) in parts {
        match solve(&sub)? {
            Verdict::Feasible(c) => {
                for (i, &v) in vertices.iter().enumerate() {
                    colouring.set(v, c.get(i).unwrap());
                }
            }
            Verdict::Infeasible(w) => {
                let w = match w {
                    Witness::EmptyList(v) => Witness::EmptyList(VertexId(vertices[v.index()])),
                    Witness::OddCycle { layer, vertex } => Witness::Component {
                        first: VertexId(vertices[0]),
                        witness: Box::new(Witness::OddCycle { layer, vertex: VertexId(vertices[vertex.index()]) }),
                    },
                    other => Witness::Component { first: VertexId(vertices[0]), witness: Box::new(other) },
                };
                return Ok(Verdict::Infeasible(w));
            }
        }
    }
    Ok(Verdict::Feasible(colouring))
}
