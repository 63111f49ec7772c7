//! Directed graphs with vertex weights and the neighborhood/connectivity
//! primitives used throughout the crate.
//!
//! Vertices are small integer ids. Edges are ordered pairs without self-loops
//! or duplicates; antiparallel pairs `(u,v)` and `(v,u)` are allowed and
//! distinct. Every query that returns a vertex set yields it in sorted order,
//! so downstream algorithms and tests are deterministic.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::GraphError;

/// Vertex identifier. Ids are small integers, usually (but not necessarily)
/// dense: deletions leave holes and fresh vertices are allocated past the
/// current maximum.
pub type VertexId = u32;

/// An ordered set of vertex ids. Iteration order is ascending by id.
pub type VertexSet = BTreeSet<VertexId>;

/// Which neighborhood a secluded-set constraint counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeighborhoodKind {
    In,
    Out,
    Total,
}

impl NeighborhoodKind {
    pub fn label(self) -> &'static str {
        match self {
            NeighborhoodKind::In => "in",
            NeighborhoodKind::Out => "out",
            NeighborhoodKind::Total => "total",
        }
    }
}

/// A directed graph with non-negative integer vertex weights.
///
/// Adjacency is kept in both directions so in- and out-queries are symmetric
/// in cost. The structure is freely mutable while an instance is being built
/// or rewritten; all query methods take `&self` and are safe to call from
/// multiple threads.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    out_adj: BTreeMap<VertexId, VertexSet>,
    in_adj: BTreeMap<VertexId, VertexSet>,
    weights: BTreeMap<VertexId, u64>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Digraph {{ vertices: {:?}, edges: {:?} }}",
            self.vertex_set(),
            self.edges()
        )
    }
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with vertices `0..n`, unit weights, and no edges.
    pub fn with_unit_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.add_vertex(v, 1).expect("fresh ids cannot collide");
        }
        g
    }

    /// Builds a graph from `0..n` unit-weight vertices and an edge list.
    pub fn from_edges(n: u32, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::with_unit_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId, weight: u64) -> Result<(), GraphError> {
        if self.weights.contains_key(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        self.weights.insert(v, weight);
        self.out_adj.insert(v, VertexSet::new());
        self.in_adj.insert(v, VertexSet::new());
        Ok(())
    }

    /// Adds the directed edge `(u, v)`. Returns `false` when the edge was
    /// already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.weights.contains_key(&u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.weights.contains_key(&v) {
            return Err(GraphError::MissingVertex(v));
        }
        let inserted = self.out_adj.get_mut(&u).unwrap().insert(v);
        self.in_adj.get_mut(&v).unwrap().insert(u);
        Ok(inserted)
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        if !self.weights.contains_key(&u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.weights.contains_key(&v) {
            return Err(GraphError::MissingVertex(v));
        }
        let removed = self.out_adj.get_mut(&u).unwrap().remove(&v);
        self.in_adj.get_mut(&v).unwrap().remove(&u);
        Ok(removed)
    }

    /// Removes `v` together with all incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        if !self.weights.contains_key(&v) {
            return Err(GraphError::MissingVertex(v));
        }
        let out = self.out_adj.remove(&v).unwrap();
        let inc = self.in_adj.remove(&v).unwrap();
        self.weights.remove(&v);
        for w in out {
            self.in_adj.get_mut(&w).unwrap().remove(&v);
        }
        for w in inc {
            self.out_adj.get_mut(&w).unwrap().remove(&v);
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.values().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.weights.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out_adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.weights.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.weights.keys().copied().collect()
    }

    /// First id strictly above every existing vertex id.
    pub fn next_fresh_id(&self) -> VertexId {
        self.weights.keys().next_back().map_or(0, |m| m + 1)
    }

    /// All edges as ordered pairs, sorted lexicographically.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.out_adj
            .iter()
            .flat_map(|(&u, outs)| outs.iter().map(move |&v| (u, v)))
            .collect()
    }

    pub fn weight(&self, v: VertexId) -> Result<u64, GraphError> {
        self.weights
            .get(&v)
            .copied()
            .ok_or(GraphError::MissingVertex(v))
    }

    pub fn set_weight(&mut self, v: VertexId, weight: u64) -> Result<(), GraphError> {
        match self.weights.get_mut(&v) {
            Some(w) => {
                *w = weight;
                Ok(())
            }
            None => Err(GraphError::MissingVertex(v)),
        }
    }

    /// Sum of weights over `set`, rejecting u64 overflow.
    pub fn total_weight(&self, set: &VertexSet) -> Result<u64, GraphError> {
        let mut sum: u128 = 0;
        for &v in set {
            sum += u128::from(self.weight(v)?);
        }
        u64::try_from(sum).map_err(|_| GraphError::WeightOverflow)
    }

    pub fn successors(&self, v: VertexId) -> Result<&VertexSet, GraphError> {
        self.out_adj.get(&v).ok_or(GraphError::MissingVertex(v))
    }

    pub fn predecessors(&self, v: VertexId) -> Result<&VertexSet, GraphError> {
        self.in_adj.get(&v).ok_or(GraphError::MissingVertex(v))
    }

    fn check_subset(&self, s: &VertexSet) -> Result<(), GraphError> {
        for &v in s {
            if !self.weights.contains_key(&v) {
                return Err(GraphError::NotASubset(v));
            }
        }
        Ok(())
    }

    /// Out-neighborhood of a vertex set. The open form excludes `s` itself;
    /// the closed form unions `s` back in.
    pub fn out_neighbors(&self, s: &VertexSet, closed: bool) -> Result<VertexSet, GraphError> {
        self.check_subset(s)?;
        let mut res = VertexSet::new();
        for &v in s {
            for &w in &self.out_adj[&v] {
                if !s.contains(&w) {
                    res.insert(w);
                }
            }
        }
        if closed {
            res.extend(s.iter().copied());
        }
        Ok(res)
    }

    /// In-neighborhood of a vertex set; mirror of [`Digraph::out_neighbors`]
    /// on reversed edges.
    pub fn in_neighbors(&self, s: &VertexSet, closed: bool) -> Result<VertexSet, GraphError> {
        self.check_subset(s)?;
        let mut res = VertexSet::new();
        for &v in s {
            for &w in &self.in_adj[&v] {
                if !s.contains(&w) {
                    res.insert(w);
                }
            }
        }
        if closed {
            res.extend(s.iter().copied());
        }
        Ok(res)
    }

    /// Total neighborhood: union of the open in- and out-neighborhoods.
    pub fn total_neighbors(&self, s: &VertexSet, closed: bool) -> Result<VertexSet, GraphError> {
        let mut res = self.out_neighbors(s, false)?;
        res.extend(self.in_neighbors(s, false)?);
        if closed {
            res.extend(s.iter().copied());
        }
        Ok(res)
    }

    pub fn neighbors(
        &self,
        kind: NeighborhoodKind,
        s: &VertexSet,
        closed: bool,
    ) -> Result<VertexSet, GraphError> {
        match kind {
            NeighborhoodKind::In => self.in_neighbors(s, closed),
            NeighborhoodKind::Out => self.out_neighbors(s, closed),
            NeighborhoodKind::Total => self.total_neighbors(s, closed),
        }
    }

    /// Subgraph induced by `s`: vertex set `s`, exactly the edges with both
    /// endpoints in `s`, weights restricted.
    pub fn induced(&self, s: &VertexSet) -> Result<Digraph, GraphError> {
        self.check_subset(s)?;
        let mut g = Digraph::new();
        for &v in s {
            g.add_vertex(v, self.weights[&v])?;
        }
        for &v in s {
            for &w in &self.out_adj[&v] {
                if s.contains(&w) {
                    g.add_edge(v, w)?;
                }
            }
        }
        Ok(g)
    }

    /// Copy of the graph with every vertex of `s` (and incident edges) removed.
    pub fn without_vertices(&self, s: &VertexSet) -> Result<Digraph, GraphError> {
        self.check_subset(s)?;
        let keep: VertexSet = self.vertices().filter(|v| !s.contains(v)).collect();
        self.induced(&keep)
    }

    /// Graph with all edges reversed.
    pub fn reversed(&self) -> Digraph {
        Digraph {
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            weights: self.weights.clone(),
        }
    }

    /// Adds the reverse of every edge, turning the graph into a symmetric
    /// digraph over the same vertices.
    pub fn symmetrized(&self) -> Digraph {
        let mut g = self.clone();
        for (u, v) in self.edges() {
            g.add_edge(v, u).expect("endpoints exist");
        }
        g
    }

    /// True when every edge has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.edges().iter().all(|&(u, v)| self.has_edge(v, u))
    }

    /// Neighbors of `v` in the underlying undirected graph.
    pub fn undirected_neighbors(&self, v: VertexId) -> Result<VertexSet, GraphError> {
        let mut res = self.successors(v)?.clone();
        res.extend(self.predecessors(v)?.iter().copied());
        Ok(res)
    }

    fn reach(&self, start: VertexId, forward: bool) -> VertexSet {
        let adj = if forward { &self.out_adj } else { &self.in_adj };
        let mut seen = VertexSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Strongly connected components, as a partition of the vertex set.
    ///
    /// Components are ordered by their smallest vertex id. The implementation
    /// intersects forward and backward reachability per unvisited vertex,
    /// which is quadratic but exact and deterministic at the sizes this crate
    /// targets.
    pub fn strong_components(&self) -> Vec<VertexSet> {
        let mut assigned = VertexSet::new();
        let mut comps = Vec::new();
        for v in self.vertices() {
            if assigned.contains(&v) {
                continue;
            }
            let fwd = self.reach(v, true);
            let bwd = self.reach(v, false);
            let comp: VertexSet = fwd.intersection(&bwd).copied().collect();
            assigned.extend(comp.iter().copied());
            comps.push(comp);
        }
        comps
    }

    /// Weakly connected components of the underlying undirected graph,
    /// ordered by smallest vertex id.
    pub fn weak_components(&self) -> Vec<VertexSet> {
        let mut assigned = VertexSet::new();
        let mut comps = Vec::new();
        for v in self.vertices() {
            if assigned.contains(&v) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![v];
            comp.insert(v);
            while let Some(x) = stack.pop() {
                for &w in self.out_adj[&x].iter().chain(self.in_adj[&x].iter()) {
                    if comp.insert(w) {
                        stack.push(w);
                    }
                }
            }
            assigned.extend(comp.iter().copied());
            comps.push(comp);
        }
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let v = *self.weights.keys().next().unwrap();
        self.reach(v, true).len() == self.vertex_count()
            && self.reach(v, false).len() == self.vertex_count()
    }

    pub fn is_weakly_connected(&self) -> bool {
        !self.is_empty() && self.weak_components().len() == 1
    }

    /// Underlying undirected graph is acyclic in the directed sense.
    pub fn is_acyclic(&self) -> bool {
        self.strong_components().iter().all(|c| c.len() == 1)
            && self.edges().iter().all(|&(u, v)| !self.has_edge(v, u) || u == v)
    }

    /// Condensation: one vertex per strong component (numbered in
    /// [`Digraph::strong_components`] order), an edge between two component
    /// vertices iff some original edge crosses them. Component weights are
    /// summed. Also returns the vertex-to-component map.
    pub fn condensation(&self) -> Result<(Digraph, BTreeMap<VertexId, u32>), GraphError> {
        let comps = self.strong_components();
        let mut map = BTreeMap::new();
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                map.insert(v, i as u32);
            }
        }
        let mut g = Digraph::new();
        for (i, comp) in comps.iter().enumerate() {
            g.add_vertex(i as u32, self.total_weight(comp)?)?;
        }
        for (u, v) in self.edges() {
            let (cu, cv) = (map[&u], map[&v]);
            if cu != cv {
                g.add_edge(cu, cv)?;
            }
        }
        Ok((g, map))
    }

    /// Checks whether the underlying undirected graph has no independent set
    /// of size `alpha + 1`. When it does, returns one such set as a witness.
    pub fn is_alpha_bounded(&self, alpha: u32) -> (bool, Option<VertexSet>) {
        let target = alpha as usize + 1;
        if self.vertex_count() < target {
            return (true, None);
        }
        let verts: Vec<VertexId> = self.vertices().collect();
        for combo in verts.iter().combinations(target) {
            let independent = combo.iter().tuple_combinations().all(|(&&a, &&b)| {
                !self.has_edge(a, b) && !self.has_edge(b, a)
            });
            if independent {
                return (false, Some(combo.into_iter().copied().collect()));
            }
        }
        (true, None)
    }

    /// True when the underlying undirected graph is complete.
    pub fn is_clique(&self) -> bool {
        let verts: Vec<VertexId> = self.vertices().collect();
        verts
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| self.has_edge(a, b) || self.has_edge(b, a))
    }

    /// A tournament: exactly one arc between every pair of distinct vertices.
    pub fn is_tournament(&self) -> bool {
        let verts: Vec<VertexId> = self.vertices().collect();
        verts
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| self.has_edge(a, b) != self.has_edge(b, a))
    }
}

/// Convenience constructors used across tests and the guide.
impl Digraph {
    /// Directed path `0 -> 1 -> ... -> n-1` with unit weights.
    pub fn directed_path(n: u32) -> Self {
        let mut g = Self::with_unit_vertices(n);
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0` with unit weights.
    pub fn directed_cycle(n: u32) -> Self {
        let mut g = Self::directed_path(n);
        if n > 1 {
            g.add_edge(n - 1, 0).unwrap();
        }
        g
    }

    /// Complete bidirected graph on `n` unit-weight vertices.
    pub fn complete_bidirected(n: u32) -> Self {
        let mut g = Self::with_unit_vertices(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }
}

/// Builds a `VertexSet` from anything iterable over ids.
pub fn vset<I: IntoIterator<Item = VertexId>>(ids: I) -> VertexSet {
    ids.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Digraph {
        Digraph::directed_path(3)
    }

    #[test]
    fn out_neighbors_basic() {
        let g = path3();
        assert_eq!(g.out_neighbors(&vset([0]), false).unwrap(), vset([1]));
        assert_eq!(g.out_neighbors(&vset([0, 1]), false).unwrap(), vset([2]));
        let k3 = Digraph::complete_bidirected(3);
        assert_eq!(k3.out_neighbors(&vset([0]), true).unwrap(), vset([0, 1, 2]));
    }

    #[test]
    fn in_neighbors_basic() {
        let g = path3();
        assert_eq!(g.in_neighbors(&vset([2]), false).unwrap(), vset([1]));
        assert_eq!(g.in_neighbors(&vset([0]), false).unwrap(), vset([]));
    }

    #[test]
    fn in_neighbors_match_reversed_out() {
        let g = sample_graph(0xD1);
        let rev = g.reversed();
        for s in subsets_upto(&g, 3) {
            assert_eq!(
                g.in_neighbors(&s, false).unwrap(),
                rev.out_neighbors(&s, false).unwrap()
            );
        }
    }

    #[test]
    fn total_neighbors_basic() {
        let g = path3();
        assert_eq!(g.total_neighbors(&vset([1]), false).unwrap(), vset([0, 2]));
        assert_eq!(g.total_neighbors(&g.vertex_set(), false).unwrap(), vset([]));
    }

    #[test]
    fn neighbor_of_unknown_vertex_is_an_error() {
        let g = path3();
        assert!(g.out_neighbors(&vset([9]), false).is_err());
    }

    #[test]
    fn strong_components_small() {
        let mut g = Digraph::with_unit_vertices(3);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.strong_components(), vec![vset([0, 1]), vset([2])]);

        let dag = path3();
        assert_eq!(
            dag.strong_components(),
            vec![vset([0]), vset([1]), vset([2])]
        );
    }

    /// Reachability-matrix oracle: u,v share a component iff u reaches v and
    /// v reaches u.
    fn scc_oracle(g: &Digraph) -> Vec<VertexSet> {
        let verts: Vec<VertexId> = g.vertices().collect();
        let reach: BTreeMap<VertexId, VertexSet> =
            verts.iter().map(|&v| (v, g.reach(v, true))).collect();
        let mut seen = VertexSet::new();
        let mut comps = Vec::new();
        for &v in &verts {
            if seen.contains(&v) {
                continue;
            }
            let comp: VertexSet = verts
                .iter()
                .copied()
                .filter(|&u| reach[&v].contains(&u) && reach[&u].contains(&v))
                .collect();
            seen.extend(comp.iter().copied());
            comps.push(comp);
        }
        comps
    }

    fn sample_graph(seed: u64) -> Digraph {
        // Tiny deterministic pseudo-random graph, decoupled from rand.
        let n = 3 + (seed % 8) as u32;
        let mut g = Digraph::with_unit_vertices(n);
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15) | 1;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if state >> 61 < 3 {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn subsets_upto(g: &Digraph, max_size: usize) -> Vec<VertexSet> {
        let verts: Vec<VertexId> = g.vertices().collect();
        let mut out = vec![];
        for size in 1..=max_size.min(verts.len()) {
            for combo in verts.iter().combinations(size) {
                out.push(combo.into_iter().copied().collect());
            }
        }
        out
    }

    #[test]
    fn strong_components_match_reachability_oracle() {
        for seed in 0..60 {
            let g = sample_graph(seed);
            assert_eq!(g.strong_components(), scc_oracle(&g), "seed {seed}");
        }
    }

    #[test]
    fn strong_components_parts_are_strongly_connected_and_maximal() {
        for seed in 0..40 {
            let g = sample_graph(seed);
            let comps = g.strong_components();
            let total: usize = comps.iter().map(|c| c.len()).sum();
            assert_eq!(total, g.vertex_count());
            for c in &comps {
                assert!(g.induced(c).unwrap().is_strongly_connected());
            }
            // merging two adjacent parts must break strong connectivity
            for (i, a) in comps.iter().enumerate() {
                for b in comps.iter().skip(i + 1) {
                    let crosses = g.edges().iter().any(|&(u, v)| {
                        (a.contains(&u) && b.contains(&v)) || (b.contains(&u) && a.contains(&v))
                    });
                    if crosses {
                        let merged: VertexSet = a.union(b).copied().collect();
                        assert!(!g.induced(&merged).unwrap().is_strongly_connected());
                    }
                }
            }
        }
    }

    #[test]
    fn condensation_is_acyclic() {
        for seed in 0..40 {
            let g = sample_graph(seed);
            let (cond, map) = g.condensation().unwrap();
            assert!(cond.strong_components().iter().all(|c| c.len() == 1));
            for (u, v) in g.edges() {
                if map[&u] != map[&v] {
                    assert!(cond.has_edge(map[&u], map[&v]));
                }
            }
        }
    }

    #[test]
    fn induced_on_full_vertex_set_round_trips() {
        for seed in 0..20 {
            let g = sample_graph(seed);
            assert_eq!(g.induced(&g.vertex_set()).unwrap(), g);
        }
    }

    #[test]
    fn total_is_union_of_in_and_out() {
        for seed in 0..20 {
            let g = sample_graph(seed);
            for s in subsets_upto(&g, 2) {
                let t = g.total_neighbors(&s, false).unwrap();
                let mut u = g.out_neighbors(&s, false).unwrap();
                u.extend(g.in_neighbors(&s, false).unwrap());
                assert_eq!(t, u);
                assert!(g.out_neighbors(&s, false).unwrap().is_disjoint(&s));
            }
        }
    }

    #[test]
    fn alpha_bounded_cases() {
        let g = Digraph::with_unit_vertices(3); // three isolated vertices
        let (ok, witness) = g.is_alpha_bounded(2);
        assert!(!ok);
        assert_eq!(witness.unwrap().len(), 3);

        let k4 = Digraph::complete_bidirected(4);
        assert_eq!(k4.is_alpha_bounded(1), (true, None));
    }

    #[test]
    fn alpha_bounded_matches_exhaustive_subset_check() {
        for seed in 0..40 {
            let g = sample_graph(seed);
            for alpha in 1..=2u32 {
                let expected = {
                    let verts: Vec<VertexId> = g.vertices().collect();
                    !verts
                        .iter()
                        .combinations(alpha as usize + 1)
                        .any(|c| {
                            c.iter().tuple_combinations().all(|(&&a, &&b)| {
                                !g.has_edge(a, b) && !g.has_edge(b, a)
                            })
                        })
                };
                let (got, witness) = g.is_alpha_bounded(alpha);
                assert_eq!(got, expected, "seed {seed} alpha {alpha}");
                if let Some(w) = witness {
                    assert_eq!(w.len(), alpha as usize + 1);
                    for (&a, &b) in w.iter().tuple_combinations() {
                        assert!(!g.has_edge(a, b) && !g.has_edge(b, a));
                    }
                }
            }
        }
    }

    #[test]
    fn weight_overflow_is_reported() {
        let mut g = Digraph::new();
        g.add_vertex(0, u64::MAX).unwrap();
        g.add_vertex(1, 1).unwrap();
        assert!(matches!(
            g.total_weight(&vset([0, 1])),
            Err(GraphError::WeightOverflow)
        ));
    }

    #[test]
    fn tournament_and_clique_predicates() {
        let c3 = Digraph::directed_cycle(3);
        assert!(c3.is_tournament());
        assert!(c3.is_clique());
        let k2 = Digraph::complete_bidirected(2);
        assert!(!k2.is_tournament());
        assert!(k2.is_clique());
    }
}
