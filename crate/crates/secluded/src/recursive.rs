//! The recursive driver for the total-secluded strongly connected problem:
//! boundary complementations, covering set families, the unbreakable base
//! case, separation search, and the top-level wrapper.
//!
//! The driver looks for a small balanced separation of the underlying
//! undirected graph. If none exists the graph is unbreakable and the base
//! case enumerates candidate solutions through covering set families. If a
//! separation exists, the smaller-terminal side is solved recursively for
//! every boundary complementation, the allowed-neighborhood set shrinks to
//! the vertices actually used by those solutions, the reduction rules shrink
//! the instance, and the driver recurses.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;

use crate::digraph::{Digraph, VertexId, VertexSet};
use crate::error::RecursiveError;
use crate::oracle::{better, MaskView, Solution};
use crate::reductions::{reduce_exhaustively, BoundariedInstance, ReduceOutcome};

// ---------------------------------------------------------------------------
// Boundary complementations
// ---------------------------------------------------------------------------

/// Identifies a boundary complementation independently of the graph it was
/// built over: the terminal partition, the relation, and the budget.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComplementationKey {
    pub in_solution: VertexSet,
    pub in_neighborhood: VertexSet,
    pub untouched: VertexSet,
    pub relation: Vec<(VertexId, VertexId)>,
    pub budget: usize,
}

/// One way a solution could interact with the rest of the graph across the
/// terminals: the partition (X, Y, Z) of `T`, a relation `R ⊆ X × X` of
/// connections provided from outside, and a reduced budget. The derived
/// instance adds one zero-weight path vertex per relation pair.
#[derive(Debug, Clone)]
pub struct BoundaryComplementation {
    /// X: terminals inside the solution.
    pub in_solution: VertexSet,
    /// Y: terminals pre-charged to the neighborhood.
    pub in_neighborhood: VertexSet,
    /// Z: terminals excluded from both.
    pub untouched: VertexSet,
    pub relation: Vec<(VertexId, VertexId)>,
    pub budget: usize,
    /// Relation pair -> its path vertex in the derived graph.
    pub path_vertex: BTreeMap<(VertexId, VertexId), VertexId>,
    /// The derived instance `(G', I', O', B, ω', k')`.
    pub instance: BoundariedInstance,
}

impl BoundaryComplementation {
    pub fn key(&self) -> ComplementationKey {
        ComplementationKey {
            in_solution: self.in_solution.clone(),
            in_neighborhood: self.in_neighborhood.clone(),
            untouched: self.untouched.clone(),
            relation: self.relation.clone(),
            budget: self.budget,
        }
    }
}

fn build_complementation(
    inst: &BoundariedInstance,
    x: &VertexSet,
    y: &VertexSet,
    z: &VertexSet,
    relation: &[(VertexId, VertexId)],
    budget: usize,
) -> BoundaryComplementation {
    let mut graph = inst.graph.clone();
    let mut path_vertex = BTreeMap::new();
    let mut fresh = graph.next_fresh_id();
    for &(a, b) in relation {
        graph.add_vertex(fresh, 0).unwrap();
        graph.add_edge(a, fresh).unwrap();
        graph.add_edge(fresh, b).unwrap();
        for &yv in y.iter() {
            graph.add_edge(fresh, yv).unwrap();
        }
        path_vertex.insert((a, b), fresh);
        fresh += 1;
    }
    let mut include = inst.include.clone();
    include.extend(x.iter().copied());
    include.extend(path_vertex.values().copied());
    let mut exclude = inst.exclude.clone();
    exclude.extend(y.iter().copied());
    exclude.extend(z.iter().copied());
    let derived = BoundariedInstance {
        graph,
        include,
        exclude,
        boundary: inst.boundary.clone(),
        k: budget,
        terminals: inst.terminals.clone(),
    };
    BoundaryComplementation {
        in_solution: x.clone(),
        in_neighborhood: y.clone(),
        untouched: z.clone(),
        relation: relation.to_vec(),
        budget,
        path_vertex,
        instance: derived,
    }
}

/// Every boundary complementation of `inst` and its terminals, in canonical
/// order: terminal assignments counted in base 3 (X, then Y, then Z per
/// terminal), relation subsets in ascending bitmask order over the sorted
/// pairs of X², budgets ascending.
pub fn enumerate_boundary_complementations(
    inst: &BoundariedInstance,
) -> Result<Vec<BoundaryComplementation>, RecursiveError> {
    let terminals: Vec<VertexId> = inst.terminals.iter().copied().collect();
    if terminals.len() > 2 * inst.k {
        return Err(RecursiveError::TooManyTerminals {
            t: terminals.len(),
            k: inst.k,
        });
    }
    let mut out = Vec::new();
    let t = terminals.len();
    let mut assignment = vec![0u8; t];
    loop {
        let mut x = VertexSet::new();
        let mut y = VertexSet::new();
        let mut z = VertexSet::new();
        for (i, &class) in assignment.iter().enumerate() {
            match class {
                0 => x.insert(terminals[i]),
                1 => y.insert(terminals[i]),
                _ => z.insert(terminals[i]),
            };
        }
        let pairs: Vec<(VertexId, VertexId)> = x
            .iter()
            .flat_map(|&a| x.iter().map(move |&b| (a, b)))
            .collect();
        for rmask in 0u64..(1 << pairs.len()) {
            let relation: Vec<(VertexId, VertexId)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| rmask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            for budget in 0..=inst.k {
                out.push(build_complementation(inst, &x, &y, &z, &relation, budget));
            }
        }
        // next base-3 assignment
        let mut i = 0;
        loop {
            if i == t {
                return Ok(out);
            }
            assignment[i] += 1;
            if assignment[i] < 3 {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Closed form for the number of complementations:
/// `(k+1) · Σ over ordered partitions (X,Y,Z) of 2^(|X|²)`.
pub fn complementation_count_closed_form(t: usize, k: usize) -> u128 {
    let mut sum: u128 = 0;
    for x_size in 0..=t {
        let choose = binomial(t, x_size);
        let yz = 1u128 << (t - x_size);
        let relations = 1u128 << (x_size * x_size);
        sum += choose * yz * relations;
    }
    sum * (k as u128 + 1)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

// ---------------------------------------------------------------------------
// Covering set families
// ---------------------------------------------------------------------------

/// How to build a covering family.
#[derive(Debug, Clone, PartialEq)]
pub enum SetFamilyMode {
    /// Deterministic and provably covering. Up to 20 elements this is every
    /// subset; above that it is every complement of a set of at most `b`
    /// elements, which covers just the same.
    Exhaustive,
    /// Monte-Carlo family: each candidate keeps each element with
    /// probability a/(a+b), repeated often enough that any fixed disjoint
    /// pair (A, B) is separated with probability at least
    /// `1 - failure_probability`.
    Randomized { seed: u64, failure_probability: f64 },
}

/// A family of subsets of `{0, .., n-1}` (as bit masks) such that for every
/// pair of disjoint sets A, B with `|A| ≤ a`, `|B| ≤ b` some member contains
/// A and avoids B.
pub fn set_family(
    n: usize,
    a: usize,
    b: usize,
    mode: &SetFamilyMode,
) -> Result<Vec<u64>, RecursiveError> {
    if n > 63 {
        return Err(RecursiveError::UniverseTooLarge(n));
    }
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    if b == 0 {
        // the full set contains every A and avoids nothing it must not
        return Ok(vec![full]);
    }
    if a == 0 {
        return Ok(vec![0]);
    }
    match mode {
        SetFamilyMode::Exhaustive => {
            if n <= 20 {
                Ok((0..=full).collect())
            } else {
                // complements of all small sets: U \ B' always works
                let mut family = Vec::new();
                let ids: Vec<usize> = (0..n).collect();
                for size in 0..=b.min(n) {
                    for combo in combinations_of(&ids, size) {
                        let mut mask = full;
                        for i in combo {
                            mask &= !(1u64 << i);
                        }
                        family.push(mask);
                    }
                }
                Ok(family)
            }
        }
        SetFamilyMode::Randomized {
            seed,
            failure_probability,
        } => {
            let eps = failure_probability.clamp(1e-12, 0.5);
            let m = a.min(b) as f64;
            let p = a as f64 / (a + b) as f64;
            let rounds = ((a + b) as f64).powf(m) * m.exp() * (1.0 / eps).ln();
            let rounds = rounds.ceil().max(1.0) as u64;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut family = Vec::with_capacity(rounds as usize);
            for _ in 0..rounds {
                let mut mask = 0u64;
                for i in 0..n {
                    if rng.gen_bool(p) {
                        mask |= 1 << i;
                    }
                }
                family.push(mask);
            }
            Ok(family)
        }
    }
}

fn combinations_of(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Exhaustively verifies the covering property of a family; test helper.
pub fn family_covers(family: &[u64], n: usize, a: usize, b: usize) -> bool {
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    fn subsets_up_to(full: u64, size: usize) -> Vec<u64> {
        let mut out = vec![0u64];
        let mut mask = full;
        let mut bits = Vec::new();
        while mask != 0 {
            bits.push(mask.trailing_zeros());
            mask &= mask - 1;
        }
        for _ in 0..size {
            let mut next = Vec::new();
            for &s in &out {
                for &bit in &bits {
                    let candidate = s | 1 << bit;
                    if candidate != s {
                        next.push(candidate);
                    }
                }
            }
            out.extend(next);
            out.sort_unstable();
            out.dedup();
        }
        out
    }
    for a_mask in subsets_up_to(full, a) {
        for b_mask in subsets_up_to(full & !a_mask, b) {
            if !family
                .iter()
                .any(|&f| a_mask & !f == 0 && b_mask & f == 0)
            {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Separations
// ---------------------------------------------------------------------------

/// A split (A, B) with `A ∪ B = V` and no edge between the private sides;
/// the order is `|A ∩ B|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl Separation {
    pub fn separator(&self) -> VertexSet {
        self.side_a.intersection(&self.side_b).copied().collect()
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    pub fn private_a(&self) -> VertexSet {
        self.side_a.difference(&self.side_b).copied().collect()
    }

    pub fn private_b(&self) -> VertexSet {
        self.side_b.difference(&self.side_a).copied().collect()
    }
}

#[derive(Debug, Clone)]
pub enum SeparationOutcome {
    Split(Separation),
    /// Exhaustive search proved there is no (q,k)-separation.
    Unbreakable { q: usize, k: usize },
}

pub const DEFAULT_SEPARATION_LIMIT: u128 = 2_000_000;

/// Searches for a separation of order at most `k` whose private sides both
/// exceed `q` vertices, by enumerating separator candidates of size at most
/// `k` in lexicographic order. When the full enumeration fits in `limit`
/// candidate sets and finds nothing, the graph is certified
/// (q,k)-unbreakable; when the enumeration would exceed the budget, the
/// bounded prefix is still scanned but a negative outcome is an error rather
/// than a certificate.
pub fn find_separation_with_limit(
    g: &Digraph,
    q: usize,
    k: usize,
    limit: u128,
) -> Result<SeparationOutcome, RecursiveError> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    let mut candidates: u128 = 0;
    for t in 0..=k.min(n) {
        candidates += binomial(n, t);
    }
    let exhaustive = candidates <= limit;
    let mut scanned: u128 = 0;
    for t in 0..=k.min(n) {
        for separator_ids in combinations_of(&(0..n).collect::<Vec<_>>(), t) {
            scanned += 1;
            if scanned > limit {
                return Err(RecursiveError::SeparationSearchCapped { candidates, limit });
            }
            let separator: VertexSet = separator_ids.iter().map(|&i| verts[i]).collect();
            let rest: VertexSet = verts
                .iter()
                .copied()
                .filter(|v| !separator.contains(v))
                .collect();
            let comps = g.induced(&rest).expect("subset").weak_components();
            let sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
            let total: usize = sizes.iter().sum();
            if total <= 2 * q {
                continue;
            }
            // subset-sum over component sizes: reachable sums per prefix
            let mut reach: Vec<u128> = Vec::with_capacity(sizes.len() + 1);
            reach.push(1); // only sum 0
            for &s in &sizes {
                let prev = *reach.last().unwrap();
                reach.push(prev | (prev << s));
            }
            let final_mask = *reach.last().unwrap();
            let target = (q + 1..=total.saturating_sub(q + 1))
                .find(|&s| final_mask >> s & 1 == 1);
            let Some(mut target) = target else { continue };
            // reconstruct one component subset achieving the target
            let mut chosen = vec![false; sizes.len()];
            for i in (0..sizes.len()).rev() {
                let without = reach[i] >> target & 1 == 1;
                if !without {
                    chosen[i] = true;
                    target -= sizes[i];
                }
            }
            debug_assert_eq!(target, 0);
            let mut side_a = separator.clone();
            let mut side_b = separator.clone();
            for (i, comp) in comps.iter().enumerate() {
                if chosen[i] {
                    side_a.extend(comp.iter().copied());
                } else {
                    side_b.extend(comp.iter().copied());
                }
            }
            let sep = Separation { side_a, side_b };
            debug_assert!(sep.private_a().len() > q && sep.private_b().len() > q);
            return Ok(SeparationOutcome::Split(sep));
        }
    }
    if exhaustive {
        Ok(SeparationOutcome::Unbreakable { q, k })
    } else {
        Err(RecursiveError::SeparationSearchCapped { candidates, limit })
    }
}

pub fn find_separation(
    g: &Digraph,
    q: usize,
    k: usize,
) -> Result<SeparationOutcome, RecursiveError> {
    find_separation_with_limit(g, q, k, DEFAULT_SEPARATION_LIMIT)
}

// ---------------------------------------------------------------------------
// Unbreakable case
// ---------------------------------------------------------------------------

struct DerivedView {
    view: MaskView,
    include: u64,
    exclude: u64,
    boundary: u64,
    budget: usize,
}

impl DerivedView {
    fn new(inst: &BoundariedInstance) -> Result<Self, RecursiveError> {
        let view = MaskView::new(&inst.graph).map_err(|_| {
            RecursiveError::UniverseTooLarge(inst.graph.vertex_count())
        })?;
        Ok(Self {
            include: view.mask_of(&inst.include),
            exclude: view.mask_of(&inst.exclude),
            boundary: view.mask_of(&inst.boundary),
            budget: inst.k,
            view,
        })
    }

    fn feasible(&self, mask: u64) -> bool {
        if mask == 0 || self.include & !mask != 0 || self.exclude & mask != 0 {
            return false;
        }
        let nei = self.view.total_nei(mask);
        nei & !self.boundary == 0
            && (nei.count_ones() as usize) <= self.budget
            && self.view.is_strongly_connected(mask)
    }
}

/// Solves one derived instance by the small/large dichotomy: solutions of
/// size at most `s = q + k + 4k²` are found through a covering family and
/// the strong components of its members; solutions missing at most `s`
/// vertices are found per strongly connected component by excising the
/// complement around an added apex vertex.
fn solve_derived(
    derived: &BoundariedInstance,
    s: usize,
    outer_k: usize,
    mode: &SetFamilyMode,
) -> Result<Option<Solution>, RecursiveError> {
    let dv = DerivedView::new(derived)?;
    let n = dv.view.n();
    let mut best: Option<(u128, VertexSet)> = None;
    let mut seen: std::collections::BTreeSet<u64> = Default::default();
    let consider = |mask: u64, best: &mut Option<(u128, VertexSet)>, seen: &mut std::collections::BTreeSet<u64>| {
        if !seen.insert(mask) || !dv.feasible(mask) {
            return;
        }
        let weight = dv.view.weight(mask);
        let set = dv.view.set_of(mask);
        if better(weight, &set, best) {
            *best = Some((weight, set));
        }
    };

    // Forced-in vertices never need to be guessed: the family can range
    // over the free vertices only. For the small search every solution S
    // splits as (S \ I') ∪ I' with N(S) disjoint from I', so unioning I'
    // back into each member preserves the covering property. For the large
    // search the excised part avoids I' altogether, so the family simply
    // ignores those vertices.
    let expand = |free_bits: &[usize], sub_mask: u64| -> u64 {
        let mut mask = 0u64;
        let mut m = sub_mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            mask |= 1u64 << free_bits[i];
            m &= m - 1;
        }
        mask
    };
    let free_of = |view_n: usize, forced: u64| -> Vec<usize> {
        (0..view_n).filter(|i| forced >> i & 1 == 0).collect()
    };

    // small solutions
    let free = free_of(n, dv.include);
    let family = set_family(free.len(), s.min(free.len()), outer_k, mode)?;
    for &f in &family {
        let member = expand(&free, f) | dv.include;
        for comp in dv.view.strong_components(member) {
            consider(comp, &mut best, &mut seen);
        }
    }

    // large solutions, per strongly connected component
    for comp in dv.view.strong_components(dv.view.full()) {
        let nbrs_mask = dv.view.total_nei(comp);
        let closed = comp | nbrs_mask;
        let closed_set = dv.view.set_of(closed);
        let nbrs_set = dv.view.set_of(nbrs_mask);
        let mut region = derived.graph.induced(&closed_set).expect("subset");
        let apex = derived.graph.next_fresh_id();
        region.add_vertex(apex, 0).expect("fresh id");
        for &v in &nbrs_set {
            region.add_edge(apex, v).expect("endpoints exist");
        }
        let rv = MaskView::new(&region).map_err(|_| {
            RecursiveError::UniverseTooLarge(region.vertex_count())
        })?;
        let apex_bit = rv.mask_of(&VertexSet::from([apex]));
        let region_forced = rv.mask_of(
            &derived
                .include
                .intersection(&closed_set)
                .copied()
                .collect(),
        );
        let region_free = free_of(rv.n(), region_forced);
        let region_family = set_family(
            region_free.len(),
            (s + 1).min(region_free.len()),
            outer_k,
            mode,
        )?;
        for &f_sub in &region_family {
            let f = expand(&region_free, f_sub);
            if f & apex_bit == 0 {
                continue;
            }
            // weak component of the apex within the member
            let mut q_mask = apex_bit;
            loop {
                let grow = rv.total_nei(q_mask) & f & !q_mask;
                if grow == 0 {
                    break;
                }
                q_mask |= grow;
            }
            let candidate_region = rv.full() & !(q_mask | rv.total_nei(q_mask));
            let candidate_set = rv.set_of(candidate_region);
            let candidate_mask = dv.view.mask_of(&candidate_set);
            consider(candidate_mask, &mut best, &mut seen);
        }
    }

    match best {
        None => Ok(None),
        Some((_, set)) => {
            let sol = derived
                .solution_for(&set)
                .map_err(RecursiveError::Graph)?
                .expect("masked feasibility check matches instance feasibility");
            Ok(Some(sol))
        }
    }
}

/// Solves every boundary complementation of an unbreakable instance.
///
/// The caller supplies the unbreakability knowledge: the split bound `s`
/// comes out as `q + k + 4k²`, covering both the small case (the solution
/// plus the added path vertices) and the large case. The results are exact
/// whenever the premise holds, and also whenever `s` reaches the graph size
/// (the small search then enumerates everything).
pub fn solve_unbreakable(
    inst: &BoundariedInstance,
    q: usize,
    mode: &SetFamilyMode,
) -> Result<Vec<(BoundaryComplementation, Option<Solution>)>, RecursiveError> {
    let s = q + inst.k + 4 * inst.k * inst.k;
    let mut out = Vec::new();
    for bc in enumerate_boundary_complementations(inst)? {
        let sol = solve_derived(&bc.instance, s, inst.k, mode)?;
        out.push((bc, sol));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The driver
// ---------------------------------------------------------------------------

/// Knobs of the recursive driver. The theoretical `q` is triply exponential
/// in k² (with an unspecified constant); the default of 3 keeps the
/// separation branch reachable at test scale, and the base case remains
/// exact whenever `q + k + 4k²` reaches the instance size.
#[derive(Debug, Clone)]
pub struct RecursiveConfig {
    pub q: usize,
    pub set_family: SetFamilyMode,
    pub separation_limit: u128,
}

impl Default for RecursiveConfig {
    fn default() -> Self {
        Self {
            q: 3,
            set_family: SetFamilyMode::Exhaustive,
            separation_limit: DEFAULT_SEPARATION_LIMIT,
        }
    }
}

/// What the driver did, for tests and reporting.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DriverStats {
    pub separations_fired: u64,
    pub unbreakable_solves: u64,
    pub reduction_applications: u64,
    pub base_case_fallbacks: u64,
    pub max_depth: u64,
}

pub struct BoundariedSolveOutput {
    pub results: Vec<(BoundaryComplementation, Option<Solution>)>,
    pub stats: DriverStats,
}

/// Re-expresses results computed on an instance with a smaller boundary as
/// results of `target` (same graph, same terminals, larger boundary).
fn rekey_onto(
    target: &BoundariedInstance,
    results: Vec<(BoundaryComplementation, Option<Solution>)>,
) -> Result<Vec<(BoundaryComplementation, Option<Solution>)>, RecursiveError> {
    let mut by_key: BTreeMap<ComplementationKey, Option<Solution>> = BTreeMap::new();
    for (bc, sol) in results {
        by_key.insert(bc.key(), sol);
    }
    let mut out = Vec::new();
    for bc in enumerate_boundary_complementations(target)? {
        let sol = by_key
            .remove(&bc.key())
            .expect("complementation keys agree across boundary changes");
        if let Some(s) = &sol {
            debug_assert!(bc.instance.is_feasible(&s.set).unwrap());
        }
        out.push((bc, sol));
    }
    Ok(out)
}

fn solve_rec(
    inst: &BoundariedInstance,
    cfg: &RecursiveConfig,
    stats: &mut DriverStats,
    depth: u64,
) -> Result<Vec<(BoundaryComplementation, Option<Solution>)>, RecursiveError> {
    stats.max_depth = stats.max_depth.max(depth);
    if inst.terminals.len() > 2 * inst.k {
        return Err(RecursiveError::TooManyTerminals {
            t: inst.terminals.len(),
            k: inst.k,
        });
    }

    let split = match find_separation_with_limit(&inst.graph, cfg.q, inst.k, cfg.separation_limit)?
    {
        SeparationOutcome::Unbreakable { .. } => {
            stats.unbreakable_solves += 1;
            return solve_unbreakable(inst, cfg.q, &cfg.set_family);
        }
        SeparationOutcome::Split(sep) => sep,
    };
    stats.separations_fired += 1;

    // W is the side holding at most k terminals outside the separator
    let count = |private: &VertexSet| inst.terminals.intersection(private).count();
    let (u_side, w_side) = if count(&split.private_b()) <= inst.k {
        (split.side_a.clone(), split.side_b.clone())
    } else {
        (split.side_b.clone(), split.side_a.clone())
    };
    let separator = split.separator();
    debug_assert!(
        inst.terminals
            .iter()
            .filter(|t| w_side.contains(t) && !separator.contains(t))
            .count()
            <= inst.k
    );

    // restriction to W
    let mut child_terminals: VertexSet = inst
        .terminals
        .intersection(&w_side)
        .copied()
        .collect();
    child_terminals.extend(separator.iter().copied());
    let mut child_boundary: VertexSet = inst
        .boundary
        .intersection(&w_side)
        .copied()
        .collect();
    // terminals must stay inside the allowed-neighborhood set
    child_boundary.extend(child_terminals.iter().copied());
    let child = BoundariedInstance {
        graph: inst.graph.induced(&w_side).map_err(RecursiveError::Graph)?,
        include: inst.include.intersection(&w_side).copied().collect(),
        exclude: inst.exclude.intersection(&w_side).copied().collect(),
        boundary: child_boundary,
        k: inst.k,
        terminals: child_terminals.clone(),
    };
    debug_assert!(child.graph.vertex_count() < inst.graph.vertex_count());
    let child_results = solve_rec(&child, cfg, stats, depth + 1)?;

    // vertices used as neighborhoods by the child's solutions
    let mut used: VertexSet = child_terminals;
    for (_, sol) in &child_results {
        if let Some(s) = sol {
            used.extend(s.neighborhood.intersection(&w_side).copied());
        }
    }
    let mut boundary_hat: VertexSet = inst
        .boundary
        .intersection(&u_side)
        .copied()
        .collect();
    boundary_hat.extend(inst.boundary.intersection(&used).copied());
    let hat = BoundariedInstance {
        boundary: boundary_hat,
        ..inst.clone()
    };

    match reduce_exhaustively(&hat) {
        ReduceOutcome::Infeasible => {
            let mut out = Vec::new();
            for bc in enumerate_boundary_complementations(inst)? {
                out.push((bc, None));
            }
            Ok(out)
        }
        ReduceOutcome::Reduced {
            instance: reduced,
            trace,
        } => {
            stats.reduction_applications += trace.steps().len() as u64;
            if reduced.graph.vertex_count() >= inst.graph.vertex_count() {
                // the configured q is below what the shrink argument needs;
                // fall back to the base case when it is provably exact
                let s = cfg.q + inst.k + 4 * inst.k * inst.k;
                if s >= hat.graph.vertex_count() {
                    stats.base_case_fallbacks += 1;
                    let results = solve_unbreakable(&hat, cfg.q, &cfg.set_family)?;
                    return rekey_onto(inst, results);
                }
                return Err(RecursiveError::NoProgress {
                    size: reduced.graph.vertex_count(),
                    q: cfg.q,
                });
            }

            let sub = solve_rec(&reduced, cfg, stats, depth + 1)?;
            // lift each solution back through the reduction trace; path
            // vertices are translated between the two derived graphs by
            // their relation pair
            type Stored = Option<(Solution, BTreeMap<(VertexId, VertexId), VertexId>)>;
            let mut by_key: BTreeMap<ComplementationKey, Stored> = BTreeMap::new();
            for (bc, sol) in sub {
                by_key.insert(bc.key(), sol.map(|s| (s, bc.path_vertex.clone())));
            }
            let mut out = Vec::new();
            for bc in enumerate_boundary_complementations(inst)? {
                let entry = by_key
                    .remove(&bc.key())
                    .expect("complementation keys agree after reduction");
                let lifted = match entry {
                    None => None,
                    Some((sol, child_paths)) => {
                        let mut core: VertexSet = sol.set.clone();
                        for u in child_paths.values() {
                            core.remove(u);
                        }
                        let mut set = trace.lift_set(&core);
                        set.extend(bc.path_vertex.values().copied());
                        let lifted = bc
                            .instance
                            .solution_for(&set)
                            .map_err(RecursiveError::Graph)?
                            .expect("lifted solutions stay feasible");
                        assert_eq!(lifted.weight, sol.weight, "lifting must not change weight");
                        Some(lifted)
                    }
                };
                out.push((bc, lifted));
            }
            Ok(out)
        }
    }
}

/// Solves a boundaried instance: one optimal solution (or none) per boundary
/// complementation, in canonical enumeration order.
pub fn solve_boundaried(
    inst: &BoundariedInstance,
    cfg: &RecursiveConfig,
) -> Result<BoundariedSolveOutput, RecursiveError> {
    let mut stats = DriverStats::default();
    let results = solve_rec(inst, cfg, &mut stats, 0)?;
    Ok(BoundariedSolveOutput { results, stats })
}

/// Total-secluded strongly connected subgraph: wraps the boundaried solver
/// with empty forced sets, the full vertex set as the allowed neighborhood,
/// and no terminals; reads off the identity complementation (full budget)
/// and applies the weight threshold.
pub fn solve_tsscs(
    g: &Digraph,
    w: u64,
    k: usize,
    cfg: &RecursiveConfig,
) -> Result<(Option<Solution>, DriverStats), RecursiveError> {
    let inst = BoundariedInstance::new(
        g.clone(),
        VertexSet::new(),
        VertexSet::new(),
        g.vertex_set(),
        k,
        VertexSet::new(),
    )
    .map_err(RecursiveError::Graph)?;
    let out = solve_boundaried(&inst, cfg)?;
    let sol = out
        .results
        .into_iter()
        .find(|(bc, _)| bc.budget == k)
        .and_then(|(_, sol)| sol)
        .filter(|s| s.weight >= w);
    Ok((sol, out.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::vset;
    use crate::oracle::{brute_force_max_tsscs, brute_force_secluded, SecludedInstance};
    use crate::oracle::Property;
    use crate::digraph::NeighborhoodKind;
    use crate::reductions::random_boundaried;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn complementation_counts_match_the_closed_form() {
        let mut g = Digraph::with_unit_vertices(5);
        g.add_edge(0, 1).unwrap();
        for t_size in 0..=3usize {
            for k in t_size.div_ceil(2)..=2 {
                let inst = BoundariedInstance::new(
                    g.clone(),
                    VertexSet::new(),
                    VertexSet::new(),
                    g.vertex_set(),
                    k,
                    (0..t_size as u32).collect(),
                )
                .unwrap();
                let enumerated = enumerate_boundary_complementations(&inst).unwrap();
                let expected = complementation_count_closed_form(t_size, k);
                assert_eq!(enumerated.len() as u128, expected, "t={t_size} k={k}");
                // the coarse upper bound
                let bound = 3u128.pow(t_size as u32)
                    * (1u128 << (t_size * t_size))
                    * (k as u128 + 1);
                assert!(expected <= bound);
                // keys are pairwise distinct
                let keys: std::collections::BTreeSet<_> =
                    enumerated.iter().map(|bc| bc.key()).collect();
                assert_eq!(keys.len(), enumerated.len());
            }
        }
    }

    #[test]
    fn empty_terminal_set_gives_budget_choices_only() {
        let g = Digraph::directed_cycle(3);
        let inst = BoundariedInstance::new(
            g.clone(),
            VertexSet::new(),
            VertexSet::new(),
            g.vertex_set(),
            2,
            VertexSet::new(),
        )
        .unwrap();
        let list = enumerate_boundary_complementations(&inst).unwrap();
        assert_eq!(list.len(), 3);
        assert_eq!(
            list.iter().map(|bc| bc.budget).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn single_terminal_zero_budget_gives_four() {
        let g = Digraph::directed_cycle(3);
        let inst = BoundariedInstance::new(
            g.clone(),
            VertexSet::new(),
            VertexSet::new(),
            g.vertex_set(),
            0,
            vset([0]),
        )
        .unwrap();
        // |T| <= 2k fails for k=0... terminals need k >= 1
        assert!(enumerate_boundary_complementations(&inst).is_err());
        let inst = BoundariedInstance { k: 1, ..inst };
        let list = enumerate_boundary_complementations(&inst).unwrap();
        // (k+1) * (2^1 for X with R over 1 pair + Y + Z) = 2 * 4
        assert_eq!(list.len() as u128, complementation_count_closed_form(1, 1));
        assert_eq!(list.len(), 8);
    }

    #[test]
    fn complementation_graphs_have_the_right_shape() {
        let mut g = Digraph::with_unit_vertices(4);
        g.add_edge(0, 1).unwrap();
        let inst = BoundariedInstance::new(
            g.clone(),
            VertexSet::new(),
            VertexSet::new(),
            g.vertex_set(),
            2,
            vset([0, 1]),
        )
        .unwrap();
        for bc in enumerate_boundary_complementations(&inst).unwrap() {
            assert_eq!(
                bc.instance.graph.vertex_count(),
                4 + bc.relation.len()
            );
            for (&(a, b), &u) in &bc.path_vertex {
                assert!(bc.instance.graph.has_edge(a, u));
                assert!(bc.instance.graph.has_edge(u, b));
                assert_eq!(bc.instance.graph.weight(u).unwrap(), 0);
                assert!(bc.instance.include.contains(&u));
                for &y in &bc.in_neighborhood {
                    assert!(bc.instance.graph.has_edge(u, y));
                }
            }
            assert!(bc.in_solution.is_subset(&bc.instance.include));
            assert!(bc.in_neighborhood.is_subset(&bc.instance.exclude));
            assert!(bc.untouched.is_subset(&bc.instance.exclude));
        }
    }

    #[test]
    fn set_family_fast_paths() {
        assert_eq!(set_family(5, 5, 0, &SetFamilyMode::Exhaustive).unwrap(), vec![31]);
        assert_eq!(set_family(5, 0, 3, &SetFamilyMode::Exhaustive).unwrap(), vec![0]);
    }

    #[test]
    fn exhaustive_family_covers() {
        let fam = set_family(6, 3, 2, &SetFamilyMode::Exhaustive).unwrap();
        assert!(family_covers(&fam, 6, 3, 2));
    }

    #[test]
    fn complement_family_covers_large_universes() {
        let fam = set_family(24, 20, 2, &SetFamilyMode::Exhaustive).unwrap();
        // spot check: every pair with |B| <= 2 is separated
        for b1 in 0..24u32 {
            for b2 in b1 + 1..24 {
                let b_mask = 1u64 << b1 | 1u64 << b2;
                let a_mask = ((1u64 << 24) - 1) & !b_mask & 0xFFFF; // some A
                assert!(fam.iter().any(|&f| a_mask & !f == 0 && b_mask & f == 0));
            }
        }
    }

    #[test]
    fn randomized_family_covers_small_cases() {
        for (n, a, b) in [(3, 1, 1), (6, 2, 2), (8, 3, 2)] {
            let fam = set_family(
                n,
                a,
                b,
                &SetFamilyMode::Randomized {
                    seed: 7,
                    failure_probability: 1e-9,
                },
            )
            .unwrap();
            assert!(family_covers(&fam, n, a, b), "n={n} a={a} b={b}");
        }
    }

    fn two_blocks_with_cut() -> Digraph {
        // bidirected K5 on {0..4} and K5 on {4..8}, sharing cut vertex 4
        let mut g = Digraph::with_unit_vertices(9);
        for u in 0..5u32 {
            for v in 0..5u32 {
                if u != v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        for u in 4..9u32 {
            for v in 4..9u32 {
                if u != v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn separation_found_at_the_cut_vertex() {
        let g = two_blocks_with_cut();
        match find_separation(&g, 3, 1).unwrap() {
            SeparationOutcome::Split(sep) => {
                assert_eq!(sep.separator(), vset([4]));
                assert!(sep.private_a().len() > 3 && sep.private_b().len() > 3);
            }
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn complete_graphs_are_unbreakable() {
        let g = Digraph::complete_bidirected(8);
        assert!(matches!(
            find_separation(&g, 2, 3).unwrap(),
            SeparationOutcome::Unbreakable { .. }
        ));
    }

    /// All separations by definition: every (A,B) with A∪B=V and no edge
    /// between the private sides.
    fn has_separation_oracle(g: &Digraph, q: usize, k: usize) -> bool {
        let verts: Vec<VertexId> = g.vertices().collect();
        let n = verts.len();
        // assign each vertex to: 0 = A only, 1 = B only, 2 = both
        fn go(
            g: &Digraph,
            verts: &[VertexId],
            idx: usize,
            assign: &mut Vec<u8>,
            q: usize,
            k: usize,
        ) -> bool {
            if idx == verts.len() {
                let mut a_only = VertexSet::new();
                let mut b_only = VertexSet::new();
                let mut both = 0usize;
                for (i, &c) in assign.iter().enumerate() {
                    match c {
                        0 => {
                            a_only.insert(verts[i]);
                        }
                        1 => {
                            b_only.insert(verts[i]);
                        }
                        _ => both += 1,
                    }
                }
                if both > k || a_only.len() <= q || b_only.len() <= q {
                    return false;
                }
                return g.edges().iter().all(|(u, v)| {
                    !(a_only.contains(u) && b_only.contains(v)
                        || b_only.contains(u) && a_only.contains(v))
                });
            }
            for c in 0..3u8 {
                assign.push(c);
                if go(g, verts, idx + 1, assign, q, k) {
                    return true;
                }
                assign.pop();
            }
            false
        }
        go(g, &verts, 0, &mut Vec::new(), q, k)
    }

    #[test]
    fn separation_verdicts_match_the_exhaustive_oracle() {
        let mut rng = StdRng::seed_from_u64(51);
        for round in 0..60 {
            let n = rng.gen_range(4..=8);
            let mut g = Digraph::with_unit_vertices(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.25) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let q = rng.gen_range(1..=2);
            let k = rng.gen_range(0..=2);
            let got = find_separation(&g, q, k).unwrap();
            let expected = has_separation_oracle(&g, q, k);
            match got {
                SeparationOutcome::Split(sep) => {
                    assert!(expected, "round {round}: split reported but none exists");
                    assert!(sep.order() <= k);
                    assert!(sep.private_a().len() > q && sep.private_b().len() > q);
                    let (pa, pb) = (sep.private_a(), sep.private_b());
                    for (u, v) in g.edges() {
                        assert!(
                            !(pa.contains(&u) && pb.contains(&v)
                                || pb.contains(&u) && pa.contains(&v)),
                            "round {round}: edge crosses the separation"
                        );
                    }
                }
                SeparationOutcome::Unbreakable { .. } => {
                    assert!(!expected, "round {round}: missed a separation");
                }
            }
        }
    }

    #[test]
    fn unbreakable_solver_handles_whole_graph_solutions() {
        let g = Digraph::directed_cycle(4);
        let inst = BoundariedInstance::new(
            g.clone(),
            VertexSet::new(),
            VertexSet::new(),
            g.vertex_set(),
            0,
            VertexSet::new(),
        )
        .unwrap();
        let results = solve_unbreakable(&inst, 3, &SetFamilyMode::Exhaustive).unwrap();
        assert_eq!(results.len(), 1);
        let sol = results[0].1.as_ref().unwrap();
        assert_eq!(sol.set, g.vertex_set());
        assert_eq!(sol.weight, 4);
    }

    #[test]
    fn unbreakable_solver_matches_oracle_per_complementation() {
        let mut rng = StdRng::seed_from_u64(52);
        let mut tested = 0;
        for _ in 0..200 {
            let inst = random_boundaried(&mut rng, 7, 2);
            if !matches!(
                find_separation(&inst.graph, 3, inst.k).unwrap(),
                SeparationOutcome::Unbreakable { .. }
            ) {
                continue;
            }
            tested += 1;
            let results = solve_unbreakable(&inst, 3, &SetFamilyMode::Exhaustive).unwrap();
            for (bc, sol) in results {
                let oracle = brute_force_max_tsscs(&bc.instance).unwrap();
                assert_eq!(
                    sol.as_ref().map(|s| s.weight),
                    oracle.map(|s| s.weight),
                    "complementation {:?}",
                    bc.key()
                );
            }
            if tested >= 25 {
                break;
            }
        }
        assert!(tested >= 10, "not enough unbreakable samples");
    }

    #[test]
    fn tsscs_on_a_cycle() {
        let g = Digraph::directed_cycle(3);
        let (sol, _) = solve_tsscs(&g, 3, 0, &RecursiveConfig::default()).unwrap();
        assert_eq!(sol.unwrap().set, vset([0, 1, 2]));
    }

    #[test]
    fn tsscs_matches_oracle_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(53);
        for round in 0..40 {
            let n = rng.gen_range(3..=7);
            let mut g = Digraph::new();
            for v in 0..n {
                g.add_vertex(v, rng.gen_range(1..=4)).unwrap();
            }
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.3) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let k = rng.gen_range(0..=2);
            let (sol, _) = solve_tsscs(&g, 0, k, &RecursiveConfig::default()).unwrap();
            let oracle = brute_force_secluded(&SecludedInstance::new(
                g.clone(),
                NeighborhoodKind::Total,
                Property::StronglyConnected,
                k,
                0,
            ))
            .unwrap();
            assert_eq!(
                sol.map(|s| s.weight),
                oracle.map(|s| s.weight),
                "round {round} k {k}"
            );
        }
    }

    #[test]
    fn tsscs_exercises_the_separation_branch_on_chained_blocks() {
        let g = two_blocks_with_cut();
        let (sol, stats) = solve_tsscs(&g, 0, 1, &RecursiveConfig::default()).unwrap();
        assert!(stats.separations_fired >= 1, "separation did not fire");
        let oracle = brute_force_secluded(&SecludedInstance::new(
            g.clone(),
            NeighborhoodKind::Total,
            Property::StronglyConnected,
            1,
            0,
        ))
        .unwrap();
        assert_eq!(sol.map(|s| s.weight), oracle.map(|s| s.weight));
    }

    #[test]
    fn boundaried_driver_matches_oracle_even_when_separations_fire() {
        let mut rng = StdRng::seed_from_u64(54);
        let cfg = RecursiveConfig {
            q: 1,
            ..RecursiveConfig::default()
        };
        for round in 0..40 {
            let mut inst = random_boundaried(&mut rng, 7, 2);
            // two terminals keep the complementation space small enough for
            // an oracle comparison per complementation
            inst.terminals = inst.terminals.iter().copied().take(2).collect();
            let out = solve_boundaried(&inst, &cfg).unwrap();
            for (bc, sol) in out.results {
                let oracle = brute_force_max_tsscs(&bc.instance).unwrap();
                assert_eq!(
                    sol.as_ref().map(|s| s.weight),
                    oracle.map(|s| s.weight),
                    "round {round} complementation {:?}",
                    bc.key()
                );
                if let Some(s) = sol {
                    assert!(bc.instance.is_feasible(&s.set).unwrap());
                }
            }
        }
    }
}
