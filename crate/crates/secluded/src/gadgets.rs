//! Instance generators derived from the clique hardness reductions, with
//! back-maps from gadget solutions to cliques.
//!
//! Two constructions live here: one targeting the total-secluded strongly
//! connected problem, one targeting out-secluded subgraphs avoiding a family
//! of forbidden induced subgraphs. Both are constructive and executable in
//! both directions, so tests can confirm the yes/no equivalence by double
//! brute force.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::digraph::{Digraph, NeighborhoodKind, VertexId, VertexSet};
use crate::error::{GadgetError, GraphError};
use crate::oracle::{Property, SecludedInstance};

/// Simple undirected graph: normalized edge set, no loops or duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: VertexSet,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl UndirectedGraph {
    pub fn new() -> Self {
        Self {
            vertices: VertexSet::new(),
            edges: BTreeSet::new(),
        }
    }

    pub fn with_vertices(n: u32) -> Self {
        Self {
            vertices: (0..n).collect(),
            edges: BTreeSet::new(),
        }
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if !self.vertices.contains(&a) {
            return Err(GraphError::MissingVertex(a));
        }
        if !self.vertices.contains(&b) {
            return Err(GraphError::MissingVertex(b));
        }
        self.edges.insert((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Reads a symmetric digraph as an undirected graph.
    pub fn from_symmetric_digraph(g: &Digraph) -> Result<Self, GraphError> {
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| !g.has_edge(v, u)) {
            return Err(GraphError::NotSymmetric(u, v));
        }
        let mut out = Self::new();
        for v in g.vertices() {
            out.add_vertex(v);
        }
        for (u, v) in g.edges() {
            out.add_edge(u, v)?;
        }
        Ok(out)
    }

    pub fn to_bidirected(&self) -> Digraph {
        let mut g = Digraph::new();
        for &v in &self.vertices {
            g.add_vertex(v, 1).unwrap();
        }
        for &(a, b) in &self.edges {
            g.add_edge(a, b).unwrap();
            g.add_edge(b, a).unwrap();
        }
        g
    }

    /// Smallest k-clique in lexicographic order, if any — the reference
    /// clique decision used by the gadget equivalence tests.
    pub fn find_clique(&self, k: usize) -> Option<VertexSet> {
        if k == 0 {
            return Some(VertexSet::new());
        }
        let verts: Vec<VertexId> = self.vertices.iter().copied().collect();
        if verts.len() < k {
            return None;
        }
        verts
            .iter()
            .combinations(k)
            .find(|combo| {
                combo
                    .iter()
                    .tuple_combinations()
                    .all(|(&&a, &&b)| self.has_edge(a, b))
            })
            .map(|combo| combo.into_iter().copied().collect())
    }
}

impl Default for UndirectedGraph {
    fn default() -> Self {
        Self::new()
    }
}

/// A nonempty family of forbidden directed graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenFamily {
    members: Vec<Digraph>,
}

impl ForbiddenFamily {
    pub fn new(members: Vec<Digraph>) -> Result<Self, GadgetError> {
        if members.is_empty() {
            return Err(GadgetError::EmptyFamily);
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[Digraph] {
        &self.members
    }

    /// True when no member fits inside an inward star — the regime both
    /// constructions need.
    pub fn is_inward_star_free(&self) -> bool {
        self.members.iter().all(|f| !is_inward_star_subgraph(f))
    }

    /// All directed cycles of length 2..=max_len, for acyclicity-style
    /// checks phrased as family membership.
    pub fn directed_cycles(max_len: u32) -> Result<Self, GadgetError> {
        let members = (2..=max_len).map(Digraph::directed_cycle).collect();
        Self::new(members)
    }
}

/// Whether `f` is a subgraph of an inward star: every edge points at one
/// shared center and there are no other edges. Edgeless graphs qualify.
pub fn is_inward_star_subgraph(f: &Digraph) -> bool {
    let heads: BTreeSet<VertexId> = f.edges().iter().map(|&(_, v)| v).collect();
    match heads.len() {
        0 => true,
        1 => {
            let center = *heads.iter().next().unwrap();
            f.edges().iter().all(|&(u, v)| v == center && u != center)
                && f.successors(center).unwrap().is_empty()
        }
        _ => false,
    }
}

/// A concrete forbidden-subgraph occurrence: which member embeds and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FfreeWitness {
    pub member: usize,
    /// pairs (family vertex, host vertex)
    pub embedding: Vec<(VertexId, VertexId)>,
}

/// Induced-subgraph check by enumeration: `g` is F-free iff no member of the
/// family appears as an induced subgraph. Returns an embedding witness when
/// violated.
pub fn check_ffree(g: &Digraph, fam: &ForbiddenFamily) -> (bool, Option<FfreeWitness>) {
    let host: Vec<VertexId> = g.vertices().collect();
    for (idx, f) in fam.members().iter().enumerate() {
        let pattern: Vec<VertexId> = f.vertices().collect();
        if pattern.len() > host.len() {
            continue;
        }
        for combo in host.iter().combinations(pattern.len()) {
            for perm in combo.iter().permutations(pattern.len()) {
                let embeds = pattern.iter().enumerate().all(|(i, &fu)| {
                    pattern.iter().enumerate().all(|(j, &fv)| {
                        i == j || f.has_edge(fu, fv) == g.has_edge(**perm[i], **perm[j])
                    })
                });
                if embeds {
                    let embedding = pattern
                        .iter()
                        .zip(perm.iter())
                        .map(|(&fv, &&&hv)| (fv, hv))
                        .collect();
                    return (false, Some(FfreeWitness { member: idx, embedding }));
                }
            }
        }
    }
    (true, None)
}

// ---------------------------------------------------------------------------
// Clique -> total-secluded strongly connected subgraph
// ---------------------------------------------------------------------------

/// Output of [`reduce_clique_to_tsscs`]: the instance plus the vertex maps
/// needed to move solutions back and forth.
#[derive(Debug, Clone)]
pub struct TsscsGadget {
    pub instance: SecludedInstance,
    pub edge_vertex: BTreeMap<(VertexId, VertexId), VertexId>,
    pub mirror_vertex: BTreeMap<(VertexId, VertexId), VertexId>,
}

impl TsscsGadget {
    /// Original-graph vertices incident to the chosen edge vertices.
    pub fn recover_clique(&self, solution: &VertexSet) -> VertexSet {
        let mut clique = VertexSet::new();
        for (&(a, b), &ve) in &self.edge_vertex {
            if solution.contains(&ve) {
                clique.insert(a);
                clique.insert(b);
            }
        }
        clique
    }

    /// Edge vertices of all clique-internal edges.
    pub fn clique_solution(&self, clique: &VertexSet) -> VertexSet {
        self.edge_vertex
            .iter()
            .filter(|((a, b), _)| clique.contains(a) && clique.contains(b))
            .map(|(_, &ve)| ve)
            .collect()
    }
}

/// Builds the strongly connected gadget for a clique target of size `k`:
/// a bidirected clique over one vertex per edge, a pendant mirror vertex per
/// edge, and arcs from each edge vertex to its two endpoints. Unit weights,
/// total neighborhood, budget `k + |E|`, weight target `C(k,2)`.
///
/// Requires `k >= 2`; the construction degenerates below that.
pub fn reduce_clique_to_tsscs(
    g: &UndirectedGraph,
    k: usize,
) -> Result<TsscsGadget, GadgetError> {
    if k < 2 {
        return Err(GadgetError::CliqueTargetTooSmall(k));
    }
    let mut graph = Digraph::new();
    for &v in g.vertices() {
        graph.add_vertex(v, 1)?;
    }
    let mut next = graph.next_fresh_id();
    let mut edge_vertex = BTreeMap::new();
    for &e in g.edges() {
        graph.add_vertex(next, 1)?;
        edge_vertex.insert(e, next);
        next += 1;
    }
    let mut mirror_vertex = BTreeMap::new();
    for &e in g.edges() {
        graph.add_vertex(next, 1)?;
        mirror_vertex.insert(e, next);
        next += 1;
    }
    for (&e1, &v1) in &edge_vertex {
        for (&e2, &v2) in &edge_vertex {
            if e1 != e2 {
                graph.add_edge(v1, v2)?;
            }
        }
    }
    for (&(a, b), &ve) in &edge_vertex {
        graph.add_edge(ve, mirror_vertex[&(a, b)])?;
        graph.add_edge(ve, a)?;
        graph.add_edge(ve, b)?;
    }
    let w = (k * (k - 1) / 2) as u64;
    let budget = k + g.edge_count();
    Ok(TsscsGadget {
        instance: SecludedInstance::new(
            graph,
            NeighborhoodKind::Total,
            Property::StronglyConnected,
            budget,
            w,
        ),
        edge_vertex,
        mirror_vertex,
    })
}

// ---------------------------------------------------------------------------
// Clique -> out-secluded F-free weakly connected subgraph
// ---------------------------------------------------------------------------

/// How the edge vertices are held together in the F-free gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectorMode {
    /// One shared hub vertex receiving an arc from every edge vertex.
    SharedHub,
    /// One connector per edge, chained into a directed path; used when the
    /// family contains inward stars with three or more leaves, which the
    /// shared hub would realize.
    EdgePath,
}

/// Output of [`reduce_clique_to_ffree`].
#[derive(Debug, Clone)]
pub struct FfreeGadget {
    pub instance: SecludedInstance,
    pub edge_vertex: BTreeMap<(VertexId, VertexId), VertexId>,
    pub connectors: Vec<VertexId>,
    pub copies: Vec<VertexSet>,
}

impl FfreeGadget {
    pub fn recover_clique(&self, solution: &VertexSet) -> VertexSet {
        let mut clique = VertexSet::new();
        for (&(a, b), &ve) in &self.edge_vertex {
            if solution.contains(&ve) {
                clique.insert(a);
                clique.insert(b);
            }
        }
        clique
    }

    pub fn clique_solution(&self, clique: &VertexSet) -> VertexSet {
        let mut sol: VertexSet = self.connectors.iter().copied().collect();
        sol.extend(
            self.edge_vertex
                .iter()
                .filter(|((a, b), _)| clique.contains(a) && clique.contains(b))
                .map(|(_, &ve)| ve),
        );
        sol
    }
}

/// Builds the out-secluded F-free gadget: the incidence structure of `g`
/// (edge vertices pointing at their endpoints), connector vertices keeping
/// solutions weakly connected, `k + 2` mutually bidirected copies of the
/// first family member, and arcs from every original vertex into every copy
/// vertex. Unit weights, out-neighborhood, budget `k`, weight target
/// `C(k,2) + #connectors`.
///
/// The family must be inward-star-free; members that fit in an inward star
/// make the construction unsound and are rejected.
pub fn reduce_clique_to_ffree(
    g: &UndirectedGraph,
    k: usize,
    fam: &ForbiddenFamily,
    mode: ConnectorMode,
) -> Result<FfreeGadget, GadgetError> {
    if k < 2 {
        return Err(GadgetError::CliqueTargetTooSmall(k));
    }
    if let Some(index) = fam
        .members()
        .iter()
        .position(is_inward_star_subgraph)
    {
        return Err(GadgetError::InwardStarMember { index });
    }

    let mut graph = Digraph::new();
    for &v in g.vertices() {
        graph.add_vertex(v, 1)?;
    }
    let mut next = graph.next_fresh_id();

    let mut edge_vertex = BTreeMap::new();
    for &e in g.edges() {
        graph.add_vertex(next, 1)?;
        edge_vertex.insert(e, next);
        next += 1;
    }

    let connectors: Vec<VertexId> = match mode {
        ConnectorMode::SharedHub => {
            graph.add_vertex(next, 1)?;
            next += 1;
            vec![next - 1]
        }
        ConnectorMode::EdgePath => {
            let mut path = Vec::new();
            for _ in g.edges() {
                graph.add_vertex(next, 1)?;
                path.push(next);
                next += 1;
            }
            for pair in path.windows(2) {
                graph.add_edge(pair[0], pair[1])?;
            }
            path
        }
    };

    match mode {
        ConnectorMode::SharedHub => {
            let hub = connectors[0];
            for &ve in edge_vertex.values() {
                graph.add_edge(ve, hub)?;
            }
        }
        ConnectorMode::EdgePath => {
            for (i, &ve) in edge_vertex.values().enumerate() {
                graph.add_edge(ve, connectors[i])?;
            }
        }
    }
    for (&(a, b), &ve) in &edge_vertex {
        graph.add_edge(ve, a)?;
        graph.add_edge(ve, b)?;
    }

    // k + 2 copies of the first family member, bidirected across copies
    let pattern = &fam.members()[0];
    let pattern_verts: Vec<VertexId> = pattern.vertices().collect();
    let mut copies: Vec<VertexSet> = Vec::new();
    for _ in 0..k + 2 {
        let mut copy_map = BTreeMap::new();
        for &fv in &pattern_verts {
            graph.add_vertex(next, 1)?;
            copy_map.insert(fv, next);
            next += 1;
        }
        for (fu, fv) in pattern.edges() {
            graph.add_edge(copy_map[&fu], copy_map[&fv])?;
        }
        copies.push(copy_map.values().copied().collect());
    }
    for (i, ci) in copies.iter().enumerate() {
        for (j, cj) in copies.iter().enumerate() {
            if i != j {
                for &x in ci {
                    for &y in cj {
                        graph.add_edge(x, y)?;
                    }
                }
            }
        }
    }
    for &v in g.vertices() {
        for copy in &copies {
            for &f in copy {
                graph.add_edge(v, f)?;
            }
        }
    }

    let w = (k * (k - 1) / 2) as u64 + connectors.len() as u64;
    Ok(FfreeGadget {
        instance: SecludedInstance::new(
            graph,
            NeighborhoodKind::Out,
            Property::WeaklyConnectedFFree(fam.clone()),
            k,
            w,
        ),
        edge_vertex,
        connectors,
        copies,
    })
}
