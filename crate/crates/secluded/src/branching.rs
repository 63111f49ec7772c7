//! Bounded-search-tree solvers for secluded α-bounded subgraphs,
//! tournaments, and cliques.
//!
//! All four solvers share one scheme: guess a small seed of the solution
//! (an independent set, or a single vertex for cliques), restrict attention
//! to its one- or two-hop reach, and branch on vertices that must join the
//! neighborhood — deleting the vertex and decreasing the budget `k`.
//! Candidate solutions are re-validated against the original graph before
//! they are accepted; the search never trusts its own bookkeeping.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::digraph::{Digraph, NeighborhoodKind, VertexId, VertexSet};
use crate::error::GraphError;
use crate::oracle::{better, Property, SecludedInstance, Solution};

/// Counters describing one solver run, used by the tree-size and
/// branching-factor checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BranchStats {
    pub nodes_expanded: u64,
    pub max_depth: u64,
    pub guesses_tried: u64,
    pub leaves: u64,
    pub max_leaves_per_guess: u64,
    pub max_children_per_node: u64,
}

/// An independent set from which every other vertex is reachable by a
/// directed path of length at most 2.
///
/// Follows the inductive construction: pick the smallest vertex `v`; if its
/// two-hop out-reach covers the graph, `{v}` does it. Otherwise recurse on
/// the part outside `N⁺[v]` and either keep the recursive set (when it sends
/// an edge back to `v`) or add `v` to it (when `v` and the set are
/// non-adjacent; `v` cannot reach the set by construction).
pub fn two_hop_dominating_is(g: &Digraph) -> Result<VertexSet, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    fn go(g: &Digraph) -> VertexSet {
        let v = g.vertices().next().unwrap();
        let one_hop = g.out_neighbors(&VertexSet::from([v]), true).unwrap();
        let two_hop = g.out_neighbors(&one_hop, true).unwrap();
        if two_hop.len() == g.vertex_count() {
            return VertexSet::from([v]);
        }
        let rest: VertexSet = g.vertices().filter(|x| !one_hop.contains(x)).collect();
        let sub = g.induced(&rest).unwrap();
        let picked = go(&sub);
        let sends_back = picked.iter().any(|&t| g.has_edge(t, v));
        if sends_back {
            picked
        } else {
            let mut with_v = picked;
            with_v.insert(v);
            with_v
        }
    }
    Ok(go(g))
}

/// Vertices of one shortest path from `sources` to `target`, excluding the
/// starting vertex (which lies in `sources`) and including `target`.
/// Breadth-first search from the whole source set; every vertex gets the
/// smallest-id predecessor, so the path is unique. A `target` inside
/// `sources` yields an empty tail.
pub fn shortest_path_tail(
    g: &Digraph,
    sources: &VertexSet,
    target: VertexId,
    underlying: bool,
) -> Result<Vec<VertexId>, GraphError> {
    if !g.contains_vertex(target) {
        return Err(GraphError::MissingVertex(target));
    }
    if sources.is_empty() {
        return Err(GraphError::InvalidArgument("empty source set".into()));
    }
    if sources.contains(&target) {
        return Ok(Vec::new());
    }
    let mut parent: std::collections::BTreeMap<VertexId, VertexId> = Default::default();
    let mut frontier: VertexSet = sources.clone();
    let mut seen = sources.clone();
    while !frontier.is_empty() && !parent.contains_key(&target) {
        let mut next = VertexSet::new();
        for &u in &frontier {
            let step: VertexSet = if underlying {
                g.undirected_neighbors(u)?
            } else {
                g.successors(u)?.clone()
            };
            for w in step {
                if seen.insert(w) {
                    parent.insert(w, u);
                    next.insert(w);
                }
            }
        }
        frontier = next;
    }
    if !parent.contains_key(&target) {
        return Err(GraphError::InvalidArgument(format!(
            "vertex {target} is not reachable from the source set"
        )));
    }
    let mut tail = vec![target];
    let mut cur = target;
    while let Some(&p) = parent.get(&cur) {
        if sources.contains(&p) {
            break;
        }
        tail.push(p);
        cur = p;
    }
    tail.reverse();
    Ok(tail)
}

// ---------------------------------------------------------------------------
// Shared search machinery
// ---------------------------------------------------------------------------

struct Search<'a> {
    original: &'a Digraph,
    verify: SecludedInstance,
    stats: BranchStats,
    best: Option<(u128, VertexSet)>,
}

impl<'a> Search<'a> {
    fn new(original: &'a Digraph, kind: NeighborhoodKind, property: Property, k: usize) -> Self {
        let best = if property.empty_set_feasible() {
            Some((0, VertexSet::new()))
        } else {
            None
        };
        Search {
            original,
            verify: SecludedInstance::new(original.clone(), kind, property, k, 0),
            stats: BranchStats::default(),
            best,
        }
    }

    /// Candidates are always re-checked against the original instance.
    fn offer(&mut self, set: &VertexSet) {
        assert!(
            self.verify.is_feasible(set).unwrap(),
            "branching produced an infeasible candidate {set:?}"
        );
        let weight = u128::from(self.original.total_weight(set).unwrap());
        if better(weight, set, &self.best) {
            self.best = Some((weight, set.clone()));
        }
    }

    fn enter(&mut self, depth: u64) {
        self.stats.nodes_expanded += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
    }

    fn children(&mut self, count: usize) {
        self.stats.max_children_per_node = self.stats.max_children_per_node.max(count as u64);
    }

    fn finish(self, w: u64) -> Result<(Option<Solution>, BranchStats), GraphError> {
        let sol = match self.best {
            Some((_, set)) => {
                let built = self.verify.solution_for(&set)?;
                debug_assert!(built.is_some());
                built.filter(|s| s.weight >= w)
            }
            None => None,
        };
        Ok((sol, self.stats))
    }
}

fn independent_seed_sets(g: &Digraph, max_size: u32) -> Vec<VertexSet> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut seeds = Vec::new();
    for size in 1..=max_size as usize {
        for combo in verts.iter().combinations(size) {
            let independent = combo
                .iter()
                .tuple_combinations()
                .all(|(&&a, &&b)| !g.has_edge(a, b) && !g.has_edge(b, a));
            if independent {
                seeds.push(combo.into_iter().copied().collect());
            }
        }
    }
    seeds
}

// ---------------------------------------------------------------------------
// α-bounded subgraphs
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flavor {
    /// Out-neighborhood, solutions inside N⁺[N⁺[U]], branching paths of
    /// length up to 3.
    Out,
    /// Total neighborhood, solutions inside N[U], shorter branching paths.
    Total,
    /// The α = 1 out-variant that additionally forbids antiparallel pairs.
    Tournament,
}

impl Flavor {
    fn kind(self) -> NeighborhoodKind {
        match self {
            Flavor::Out | Flavor::Tournament => NeighborhoodKind::Out,
            Flavor::Total => NeighborhoodKind::Total,
        }
    }

    fn underlying_paths(self) -> bool {
        matches!(self, Flavor::Total)
    }

    /// The region the solution must live in, relative to the seed.
    fn closure(self, g: &Digraph, seed: &VertexSet) -> VertexSet {
        match self {
            Flavor::Out | Flavor::Tournament => {
                let one = g.out_neighbors(seed, true).unwrap();
                g.out_neighbors(&one, true).unwrap()
            }
            Flavor::Total => g.total_neighbors(seed, true).unwrap(),
        }
    }
}

fn alpha_family_rec(
    search: &mut Search,
    flavor: Flavor,
    alpha: u32,
    g: &Digraph,
    k: usize,
    seed: &VertexSet,
    depth: u64,
) {
    search.enter(depth);
    let closure = flavor.closure(g, seed);
    let induced = g.induced(&closure).unwrap();
    let (bounded, witness) = induced.is_alpha_bounded(alpha);
    let tournament_pair = if flavor == Flavor::Tournament && bounded {
        induced
            .edges()
            .into_iter()
            .find(|&(a, b)| a < b && induced.has_edge(b, a))
    } else {
        None
    };
    let outside = g.neighbors(flavor.kind(), &closure, false).unwrap();

    if bounded && tournament_pair.is_none() && outside.len() <= k {
        search.offer(&closure);
        search.leaf();
        return;
    }
    if k == 0 {
        search.leaf();
        return;
    }

    let tail = |w: VertexId| shortest_path_tail(g, seed, w, flavor.underlying_paths()).unwrap();
    let targets: BTreeSet<VertexId> = if let Some(iset) = witness {
        // some member of the independent set must leave, so one vertex on
        // each shortest seed path joins the neighborhood
        iset.iter().flat_map(|&w| tail(w)).collect()
    } else if let Some((a, b)) = tournament_pair {
        // at most one endpoint of an antiparallel pair can stay
        [a, b].iter().flat_map(|&w| tail(w)).collect()
    } else {
        let w = *outside.iter().next().unwrap();
        tail(w).into_iter().collect()
    };
    debug_assert!(!targets.is_empty());
    debug_assert!(targets.iter().all(|t| !seed.contains(t)));
    search.children(targets.len());
    for v in targets {
        let mut child = g.clone();
        child.remove_vertex(v).unwrap();
        alpha_family_rec(search, flavor, alpha, &child, k - 1, seed, depth + 1);
    }
}

fn solve_alpha_family(
    g: &Digraph,
    flavor: Flavor,
    property: Property,
    alpha: u32,
    w: u64,
    k: usize,
) -> Result<(Option<Solution>, BranchStats), GraphError> {
    let mut search = Search::new(g, flavor.kind(), property, k);
    search.enter(0); // root evaluation of the empty candidate
    search.leaf();
    for seed in independent_seed_sets(g, alpha) {
        search.stats.guesses_tried += 1;
        let leaves_before = search.stats.leaves;
        alpha_family_rec(&mut search, flavor, alpha, g, k, &seed, 1);
        let per_guess = search.stats.leaves - leaves_before;
        search.stats.max_leaves_per_guess = search.stats.max_leaves_per_guess.max(per_guess);
    }
    search.finish(w)
}

/// Maximum-weight k-out-secluded α-bounded set of weight at least `w`.
///
/// Seeds are all independent sets of size 1..=α; within a seed the search
/// branches on at most `2(α+1)` vertices while the two-hop region is not yet
/// α-bounded, and on at most 3 afterwards.
pub fn solve_out_alpha_bounded(
    g: &Digraph,
    w: u64,
    k: usize,
    alpha: u32,
) -> Result<(Option<Solution>, BranchStats), GraphError> {
    if alpha == 0 {
        return Err(GraphError::InvalidArgument(
            "alpha must be at least 1".into(),
        ));
    }
    solve_alpha_family(g, Flavor::Out, Property::AlphaBounded(alpha), alpha, w, k)
}

/// Total-neighborhood variant: the solution region shrinks to the closed
/// neighborhood of the seed, giving at most `α+1` branches in the first case
/// and 2 in the second.
pub fn solve_total_alpha_bounded(
    g: &Digraph,
    w: u64,
    k: usize,
    alpha: u32,
) -> Result<(Option<Solution>, BranchStats), GraphError> {
    if alpha == 0 {
        return Err(GraphError::InvalidArgument(
            "alpha must be at least 1".into(),
        ));
    }
    solve_alpha_family(
        g,
        Flavor::Total,
        Property::AlphaBounded(alpha),
        alpha,
        w,
        k,
    )
}

/// Tournament variant: α = 1 plus an extra branching rule on antiparallel
/// pairs, for at most 4 branches per node.
pub fn solve_out_tournament(
    g: &Digraph,
    w: u64,
    k: usize,
) -> Result<(Option<Solution>, BranchStats), GraphError> {
    solve_alpha_family(g, Flavor::Tournament, Property::Tournament, 1, w, k)
}

// ---------------------------------------------------------------------------
// Secluded clique
// ---------------------------------------------------------------------------

fn clique_rec(search: &mut Search, g: &Digraph, k: usize, u: VertexId, depth: u64) {
    search.enter(depth);
    let nu = g.successors(u).unwrap().clone(); // symmetric graph
    let mut closed = nu.clone();
    closed.insert(u);
    let extra = |v: VertexId| -> VertexSet {
        g.successors(v)
            .unwrap()
            .difference(&closed)
            .copied()
            .collect()
    };

    let is_clique = g.induced(&closed).unwrap().is_clique();
    if is_clique && g.total_neighbors(&closed, false).unwrap().len() <= k {
        search.offer(&closed);
        search.leaf();
        return;
    }

    let branch = |search: &mut Search, removals: Vec<VertexSet>| {
        search.children(removals.len());
        for removal in removals {
            if removal.len() > k {
                // aborted child: the removal does not fit the budget
                search.stats.nodes_expanded += 1;
                search.stats.leaves += 1;
                continue;
            }
            let mut child = g.clone();
            for &v in &removal {
                child.remove_vertex(v).unwrap();
            }
            clique_rec(search, &child, k - removal.len(), u, depth + 1);
        }
    };

    if !is_clique {
        // 1a: a vertex of N(u) missing two others
        for &v1 in &nu {
            let non: Vec<VertexId> = nu
                .iter()
                .copied()
                .filter(|&x| x != v1 && !g.has_edge(v1, x))
                .collect();
            if non.len() >= 2 {
                let (v2, v3) = (non[0], non[1]);
                branch(
                    search,
                    vec![VertexSet::from([v1]), VertexSet::from([v2, v3])],
                );
                return;
            }
        }
        // every vertex now misses at most one other; take the first
        // non-adjacent pair
        let (a, b) = nu
            .iter()
            .copied()
            .tuple_combinations()
            .find(|&(a, b)| !g.has_edge(a, b))
            .expect("closed neighborhood is not a clique");
        if extra(a).is_empty() && extra(b).is_empty() {
            // 1b: twins; dropping the lighter one is always optimal
            let (wa, wb) = (g.weight(a).unwrap(), g.weight(b).unwrap());
            let doomed = match wa.cmp(&wb) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => a.max(b),
            };
            branch(search, vec![VertexSet::from([doomed])]);
        } else {
            // 1c: keeping v1 forces v2 and all of v1's outside neighbors out
            let (v1, v2) = if !extra(a).is_empty() { (a, b) } else { (b, a) };
            let mut bulk = extra(v1);
            bulk.insert(v2);
            branch(search, vec![VertexSet::from([v1]), bulk]);
        }
        return;
    }

    // the clique still has outside neighbors
    if k == 0 {
        search.leaf();
        return;
    }
    // 2a: a clique vertex with exactly one outside neighbor; keeping the
    // vertex costs at most that neighbor, so send it into the neighborhood
    for &v1 in &nu {
        let ex = extra(v1);
        if ex.len() == 1 {
            branch(search, vec![ex]);
            return;
        }
    }
    // 2b: a clique vertex with two or more outside neighbors
    for &v in &nu {
        let ex = extra(v);
        if ex.len() >= 2 {
            branch(search, vec![VertexSet::from([v]), ex]);
            return;
        }
    }
    unreachable!("a clique with outside neighbors has a vertex with outside neighbors");
}

/// Maximum-weight k-secluded clique in a symmetric digraph (an undirected
/// graph given as a bidirected one). Guesses each vertex `u` and searches
/// for the best clique inside `N[u]`; every branching step has branching
/// vector (1, ≥2).
pub fn solve_secluded_clique(
    g: &Digraph,
    w: u64,
    k: usize,
) -> Result<(Option<Solution>, BranchStats), GraphError> {
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| !g.has_edge(v, u)) {
        return Err(GraphError::NotSymmetric(u, v));
    }
    let mut search = Search::new(g, NeighborhoodKind::Total, Property::Clique, k);
    search.enter(0);
    search.leaf();
    for u in g.vertices().collect::<Vec<_>>() {
        search.stats.guesses_tried += 1;
        let leaves_before = search.stats.leaves;
        clique_rec(&mut search, g, k, u, 1);
        let per_guess = search.stats.leaves - leaves_before;
        search.stats.max_leaves_per_guess = search.stats.max_leaves_per_guess.max(per_guess);
    }
    search.finish(w)
}
