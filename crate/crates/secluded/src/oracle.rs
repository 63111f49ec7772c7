//! Brute-force reference solvers for every problem variant.
//!
//! These are deliberately exhaustive: they enumerate candidate vertex sets,
//! check feasibility directly, and keep the best by weight (ties broken by
//! the lexicographically smallest vertex set). Every other module's tests
//! compare against them. Deliberately no performance ambitions beyond a few
//! dozen vertices.

use std::collections::BTreeSet;

use crate::digraph::{Digraph, NeighborhoodKind, VertexId, VertexSet};
use crate::error::{GraphError, OracleError};
use crate::gadgets::ForbiddenFamily;
use crate::reductions::BoundariedInstance;

/// Default enumeration budget: instances needing more than `2^20` candidate
/// sets are refused.
pub const DEFAULT_ORACLE_CAP: u32 = 20;

/// Node budget for the branch-and-bound search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// The property the induced subgraph must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    StronglyConnected,
    AlphaBounded(u32),
    Clique,
    Tournament,
    WeaklyConnectedAlphaBounded(u32),
    WeaklyConnectedFFree(ForbiddenFamily),
}

impl Property {
    /// Whether the empty set counts as satisfying the property. Connected
    /// subgraphs are nonempty by convention; the degenerate properties accept
    /// the empty set with weight zero.
    pub fn empty_set_feasible(&self) -> bool {
        match self {
            Property::StronglyConnected
            | Property::WeaklyConnectedAlphaBounded(_)
            | Property::WeaklyConnectedFFree(_) => false,
            Property::AlphaBounded(_) | Property::Clique | Property::Tournament => true,
        }
    }

    /// Direct check on an induced subgraph.
    pub fn holds_on(&self, g: &Digraph) -> bool {
        match self {
            Property::StronglyConnected => g.is_strongly_connected(),
            Property::AlphaBounded(alpha) => g.is_alpha_bounded(*alpha).0,
            Property::Clique => g.is_clique(),
            Property::Tournament => g.is_tournament(),
            Property::WeaklyConnectedAlphaBounded(alpha) => {
                g.is_weakly_connected() && g.is_alpha_bounded(*alpha).0
            }
            Property::WeaklyConnectedFFree(fam) => {
                g.is_weakly_connected() && crate::gadgets::check_ffree(g, fam).0
            }
        }
    }
}

/// One problem instance: a weighted digraph, the neighborhood kind to bound,
/// the property the solution must induce, the neighborhood budget `k`, and
/// the weight target `w`.
#[derive(Debug, Clone)]
pub struct SecludedInstance {
    pub graph: Digraph,
    pub kind: NeighborhoodKind,
    pub property: Property,
    pub k: usize,
    pub w: u64,
}

impl SecludedInstance {
    pub fn new(
        graph: Digraph,
        kind: NeighborhoodKind,
        property: Property,
        k: usize,
        w: u64,
    ) -> Self {
        Self {
            graph,
            kind,
            property,
            k,
            w,
        }
    }

    /// Checks a candidate set against the instance's constraints.
    pub fn is_feasible(&self, set: &VertexSet) -> Result<bool, GraphError> {
        if set.is_empty() {
            return Ok(self.property.empty_set_feasible());
        }
        let nbrs = self.graph.neighbors(self.kind, set, false)?;
        if nbrs.len() > self.k {
            return Ok(false);
        }
        Ok(self.property.holds_on(&self.graph.induced(set)?))
    }

    /// Validates a candidate and packages it as a [`Solution`].
    pub fn solution_for(&self, set: &VertexSet) -> Result<Option<Solution>, GraphError> {
        if !self.is_feasible(set)? {
            return Ok(None);
        }
        Ok(Some(Solution {
            weight: self.graph.total_weight(set)?,
            neighborhood: self.graph.neighbors(self.kind, set, false)?,
            set: set.clone(),
        }))
    }
}

/// A feasible solution: the chosen set, its weight, and its neighborhood
/// under the instance's neighborhood kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub set: VertexSet,
    pub weight: u64,
    pub neighborhood: VertexSet,
}

/// `(weight, set)` ordering used everywhere: higher weight wins, ties go to
/// the lexicographically smallest sorted vertex set.
pub(crate) fn better(weight: u128, set: &VertexSet, than: &Option<(u128, VertexSet)>) -> bool {
    match than {
        None => true,
        Some((bw, bs)) => weight > *bw || (weight == *bw && set < bs),
    }
}

// ---------------------------------------------------------------------------
// Bitmask view
// ---------------------------------------------------------------------------

/// Bitmask projection of a digraph over at most 63 vertices; the workhorse
/// behind subset enumeration.
pub(crate) struct MaskView {
    pub ids: Vec<VertexId>,
    pub out: Vec<u64>,
    pub inc: Vec<u64>,
    pub und: Vec<u64>,
    pub weights: Vec<u64>,
}

impl MaskView {
    pub fn new(g: &Digraph) -> Result<Self, OracleError> {
        let ids: Vec<VertexId> = g.vertices().collect();
        if ids.len() > 63 {
            return Err(OracleError::TooLarge {
                candidates: 1u128 << 63,
                cap: 63,
            });
        }
        let index = |v: VertexId| ids.binary_search(&v).unwrap();
        let n = ids.len();
        let mut out = vec![0u64; n];
        let mut inc = vec![0u64; n];
        for (u, v) in g.edges() {
            let (iu, iv) = (index(u), index(v));
            out[iu] |= 1 << iv;
            inc[iv] |= 1 << iu;
        }
        let und = out.iter().zip(&inc).map(|(o, i)| o | i).collect();
        let weights = ids.iter().map(|&v| g.weight(v).unwrap()).collect();
        Ok(Self {
            ids,
            out,
            inc,
            und,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn full(&self) -> u64 {
        if self.n() == 0 {
            0
        } else {
            (1u64 << self.n()) - 1
        }
    }

    pub fn set_of(&self, mask: u64) -> VertexSet {
        let mut s = VertexSet::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s.insert(self.ids[i]);
            m &= m - 1;
        }
        s
    }

    pub fn mask_of(&self, set: &VertexSet) -> u64 {
        let mut m = 0u64;
        for &v in set {
            m |= 1 << self.ids.binary_search(&v).unwrap();
        }
        m
    }

    pub fn weight(&self, mask: u64) -> u128 {
        let mut sum = 0u128;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            sum += u128::from(self.weights[i]);
            m &= m - 1;
        }
        sum
    }

    fn spread(&self, adj: &[u64], mask: u64) -> u64 {
        let mut res = 0u64;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            res |= adj[i];
            m &= m - 1;
        }
        res
    }

    /// Open out-neighborhood of `mask` within the whole graph.
    pub fn out_nei(&self, mask: u64) -> u64 {
        self.spread(&self.out, mask) & !mask
    }

    pub fn in_nei(&self, mask: u64) -> u64 {
        self.spread(&self.inc, mask) & !mask
    }

    pub fn total_nei(&self, mask: u64) -> u64 {
        self.spread(&self.und, mask) & !mask
    }

    pub fn nei(&self, kind: NeighborhoodKind, mask: u64) -> u64 {
        match kind {
            NeighborhoodKind::In => self.in_nei(mask),
            NeighborhoodKind::Out => self.out_nei(mask),
            NeighborhoodKind::Total => self.total_nei(mask),
        }
    }

    fn reach_within(&self, adj: &[u64], start: u64, mask: u64) -> u64 {
        let mut seen = start & mask;
        loop {
            let next = self.spread(adj, seen) & mask & !seen;
            if next == 0 {
                return seen;
            }
            seen |= next;
        }
    }

    pub fn is_strongly_connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        let seed = 1u64 << mask.trailing_zeros();
        self.reach_within(&self.out, seed, mask) == mask
            && self.reach_within(&self.inc, seed, mask) == mask
    }

    pub fn is_weakly_connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        let seed = 1u64 << mask.trailing_zeros();
        self.reach_within(&self.und, seed, mask) == mask
    }

    pub fn strong_components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut comps = Vec::new();
        while rest != 0 {
            let seed = 1u64 << rest.trailing_zeros();
            let comp = self.reach_within(&self.out, seed, mask)
                & self.reach_within(&self.inc, seed, mask);
            comps.push(comp);
            rest &= !comp;
        }
        comps
    }

    pub fn weak_components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut comps = Vec::new();
        while rest != 0 {
            let seed = 1u64 << rest.trailing_zeros();
            let comp = self.reach_within(&self.und, seed, mask);
            comps.push(comp);
            rest &= !comp;
        }
        comps
    }

    pub fn is_clique(&self, mask: u64) -> bool {
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            if self.und[i] & mask != mask & !(1 << i) {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    pub fn is_tournament(&self, mask: u64) -> bool {
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            let bit = 1u64 << i;
            if self.und[i] & mask != mask & !bit {
                return false;
            }
            if self.out[i] & self.inc[i] & mask != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    /// Looks for an independent set of `size` vertices inside `mask`.
    pub fn has_independent_set(&self, mask: u64, size: usize) -> bool {
        fn go(view: &MaskView, candidates: u64, need: usize) -> bool {
            if need == 0 {
                return true;
            }
            let mut m = candidates;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                // only extend with higher-index vertices to avoid revisits
                if go(view, m & !view.und[i], need - 1) {
                    return true;
                }
            }
            false
        }
        go(self, mask, size)
    }

    pub fn property_holds(&self, property: &Property, mask: u64) -> bool {
        match property {
            Property::StronglyConnected => self.is_strongly_connected(mask),
            Property::AlphaBounded(a) => !self.has_independent_set(mask, *a as usize + 1),
            Property::Clique => self.is_clique(mask),
            Property::Tournament => self.is_tournament(mask),
            Property::WeaklyConnectedAlphaBounded(a) => {
                self.is_weakly_connected(mask)
                    && !self.has_independent_set(mask, *a as usize + 1)
            }
            Property::WeaklyConnectedFFree(_) => unreachable!("checked via digraph"),
        }
    }
}

// ---------------------------------------------------------------------------
// Brute-force solvers
// ---------------------------------------------------------------------------

fn finish(
    inst_graph: &Digraph,
    kind: NeighborhoodKind,
    best: Option<(u128, VertexSet)>,
) -> Result<Option<Solution>, OracleError> {
    match best {
        None => Ok(None),
        Some((_, set)) => Ok(Some(Solution {
            weight: inst_graph.total_weight(&set)?,
            neighborhood: inst_graph.neighbors(kind, &set, false)?,
            set,
        })),
    }
}

/// Maximum-weight feasible set by full enumeration, or `None`.
///
/// The candidate budget is `2^cap` enumerated sets (default cap
/// [`DEFAULT_ORACLE_CAP`]); larger instances are refused. For the strongly
/// connected property the enumeration runs per strongly connected component
/// of the input — every strongly connected subgraph lies inside one — which
/// is what makes gadget-sized instances checkable.
pub fn brute_force_secluded(inst: &SecludedInstance) -> Result<Option<Solution>, OracleError> {
    brute_force_secluded_with_cap(inst, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_secluded_with_cap(
    inst: &SecludedInstance,
    cap: u32,
) -> Result<Option<Solution>, OracleError> {
    let n = inst.graph.vertex_count();
    let view = MaskView::new(&inst.graph)?;
    let mut best: Option<(u128, VertexSet)> = None;
    if inst.property.empty_set_feasible() {
        best = Some((0, VertexSet::new()));
    }

    let ffree = matches!(inst.property, Property::WeaklyConnectedFFree(_));
    let consider = |mask: u64, best: &mut Option<(u128, VertexSet)>| {
        if mask == 0 {
            return;
        }
        if (view.nei(inst.kind, mask).count_ones() as usize) > inst.k {
            return;
        }
        let ok = if ffree {
            let set = view.set_of(mask);
            inst.property.holds_on(&inst.graph.induced(&set).unwrap())
        } else {
            view.property_holds(&inst.property, mask)
        };
        if ok {
            let weight = view.weight(mask);
            let set = view.set_of(mask);
            if better(weight, &set, best) {
                *best = Some((weight, set));
            }
        }
    };

    if matches!(inst.property, Property::StronglyConnected) {
        let comps = view.strong_components(view.full());
        let candidates: u128 = comps
            .iter()
            .map(|c| 1u128 << c.count_ones())
            .sum();
        if candidates > 1u128 << cap {
            return Err(OracleError::TooLarge { candidates, cap });
        }
        for comp in comps {
            // standard submask walk, descending
            let mut sub = comp;
            loop {
                consider(sub, &mut best);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & comp;
            }
        }
    } else {
        let candidates = 1u128 << n;
        if candidates > 1u128 << cap {
            return Err(OracleError::TooLarge { candidates, cap });
        }
        for mask in 0..(1u64 << n) {
            consider(mask, &mut best);
        }
    }
    finish(&inst.graph, inst.kind, best)
}

/// Brute-force optimum for a boundaried maximum strongly connected instance:
/// maximizes weight over sets containing `I`, avoiding `O`, with total
/// neighborhood inside `B` of size at most `k`, inducing a strongly connected
/// subgraph. Terminals are irrelevant here and ignored.
pub fn brute_force_max_tsscs(
    inst: &BoundariedInstance,
) -> Result<Option<Solution>, OracleError> {
    brute_force_max_tsscs_with_cap(inst, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_max_tsscs_with_cap(
    inst: &BoundariedInstance,
    cap: u32,
) -> Result<Option<Solution>, OracleError> {
    let view = MaskView::new(&inst.graph)?;
    let include = view.mask_of(&inst.include);
    let exclude = view.mask_of(&inst.exclude);
    let boundary = view.mask_of(&inst.boundary);
    let comps = view.strong_components(view.full());

    let eligible: Vec<u64> = comps
        .into_iter()
        .filter(|c| c & include == include)
        .collect();
    let candidates: u128 = eligible
        .iter()
        .map(|c| 1u128 << (c & !include).count_ones())
        .sum();
    if candidates > 1u128 << cap {
        return Err(OracleError::TooLarge { candidates, cap });
    }

    let mut best: Option<(u128, VertexSet)> = None;
    for comp in eligible {
        let free = comp & !include;
        let mut sub = free;
        loop {
            let mask = sub | include;
            if mask != 0 && mask & exclude == 0 {
                let nei = view.total_nei(mask);
                if nei & !boundary == 0
                    && (nei.count_ones() as usize) <= inst.k
                    && view.is_strongly_connected(mask)
                {
                    let weight = view.weight(mask);
                    let set = view.set_of(mask);
                    if better(weight, &set, &best) {
                        best = Some((weight, set));
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    finish(&inst.graph, NeighborhoodKind::Total, best)
}

/// Maximum-weight k-secluded clique in a symmetric digraph.
pub fn brute_force_clique(g: &Digraph, k: usize) -> Result<Option<Solution>, OracleError> {
    brute_force_secluded(&SecludedInstance::new(
        g.clone(),
        NeighborhoodKind::Total,
        Property::Clique,
        k,
        0,
    ))
}

/// Maximum-weight k-secluded α-bounded set under the given neighborhood kind.
pub fn brute_force_alpha(
    g: &Digraph,
    alpha: u32,
    kind: NeighborhoodKind,
    k: usize,
) -> Result<Option<Solution>, OracleError> {
    brute_force_secluded(&SecludedInstance::new(
        g.clone(),
        kind,
        Property::AlphaBounded(alpha),
        k,
        0,
    ))
}

// ---------------------------------------------------------------------------
// Branch-and-bound search
// ---------------------------------------------------------------------------

/// Complete search over include/exclude decisions with two sound prunes:
/// the already-excluded part of the neighborhood exceeding `k`, and (for
/// hereditary properties) the included set already violating the property.
/// Returns exactly the brute-force optimum but copes with the larger,
/// structured instances the hardness gadgets produce. Fails once `budget`
/// search nodes are exceeded rather than running away.
pub fn branch_and_bound_secluded(
    inst: &SecludedInstance,
    budget: u64,
) -> Result<Option<Solution>, OracleError> {
    let view = MaskView::new(&inst.graph)?;
    let n = view.n();

    // High fan-out vertices first: their exclusions charge the budget early.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(view.out[i].count_ones()), i));

    struct Ctx<'a> {
        inst: &'a SecludedInstance,
        view: &'a MaskView,
        order: &'a [usize],
        nodes: u64,
        budget: u64,
        best: Option<(u128, VertexSet)>,
    }

    // Hereditary check: does including `set` already rule the property out?
    fn hereditary_violation(ctx: &Ctx, in_mask: u64) -> bool {
        match &ctx.inst.property {
            Property::AlphaBounded(a) | Property::WeaklyConnectedAlphaBounded(a) => {
                ctx.view.has_independent_set(in_mask, *a as usize + 1)
            }
            Property::Clique | Property::Tournament => {
                // any missing underlying edge can never come back
                !ctx.view.is_clique(in_mask)
            }
            Property::WeaklyConnectedFFree(fam) => {
                if in_mask.count_ones() > 20 {
                    return false; // skip the check, stay sound
                }
                let set = ctx.view.set_of(in_mask);
                let induced = ctx.inst.graph.induced(&set).unwrap();
                !crate::gadgets::check_ffree(&induced, fam).0
            }
            Property::StronglyConnected => false,
        }
    }

    fn go(ctx: &mut Ctx, depth: usize, in_mask: u64, out_mask: u64) -> Result<(), OracleError> {
        ctx.nodes += 1;
        if ctx.nodes > ctx.budget {
            return Err(OracleError::TooLarge {
                candidates: u128::from(ctx.budget),
                cap: 63,
            });
        }
        let charged = ctx.view.nei(ctx.inst.kind, in_mask) & out_mask;
        if charged.count_ones() as usize > ctx.inst.k {
            return Ok(());
        }
        if depth == ctx.order.len() {
            if in_mask == 0 {
                return Ok(());
            }
            let nei = ctx.view.nei(ctx.inst.kind, in_mask);
            if nei.count_ones() as usize > ctx.inst.k {
                return Ok(());
            }
            let set = ctx.view.set_of(in_mask);
            let ok = match &ctx.inst.property {
                Property::WeaklyConnectedFFree(_) => ctx
                    .inst
                    .property
                    .holds_on(&ctx.inst.graph.induced(&set).unwrap()),
                p => ctx.view.property_holds(p, in_mask),
            };
            if ok {
                let weight = ctx.view.weight(in_mask);
                if better(weight, &set, &ctx.best) {
                    ctx.best = Some((weight, set));
                }
            }
            return Ok(());
        }
        let bit = 1u64 << ctx.order[depth];
        let with = in_mask | bit;
        if !hereditary_violation(ctx, with) {
            go(ctx, depth + 1, with, out_mask)?;
        }
        go(ctx, depth + 1, in_mask, out_mask | bit)
    }

    let mut ctx = Ctx {
        inst,
        view: &view,
        order: &order,
        nodes: 0,
        budget,
        best: if inst.property.empty_set_feasible() {
            Some((0, VertexSet::new()))
        } else {
            None
        },
    };
    go(&mut ctx, 0, 0, 0)?;
    finish(&inst.graph, inst.kind, ctx.best)
}

/// All subsets of `items`, smallest first, each as a sorted set. Test helper
/// shared by several modules.
pub fn power_set(items: &VertexSet) -> Vec<VertexSet> {
    let ids: Vec<VertexId> = items.iter().copied().collect();
    let mut out = Vec::with_capacity(1 << ids.len());
    for mask in 0u64..(1 << ids.len()) {
        out.push(
            ids.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect::<BTreeSet<_>>(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::vset;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub(crate) fn random_digraph(rng: &mut StdRng, n: u32, p: f64) -> Digraph {
        let mut g = Digraph::with_unit_vertices(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn clique_on_k3_total_k0() {
        let g = Digraph::complete_bidirected(3);
        let inst = SecludedInstance::new(g, NeighborhoodKind::Total, Property::Clique, 0, 0);
        let sol = brute_force_secluded(&inst).unwrap().unwrap();
        assert_eq!(sol.weight, 3);
        assert_eq!(sol.set, vset([0, 1, 2]));
    }

    #[test]
    fn strongly_connected_on_a_path() {
        // On a directed path no multi-vertex subgraph is strongly connected,
        // so only singletons qualify. With k = 0 every singleton still has a
        // nonempty total neighborhood, hence no solution at all.
        let g = Digraph::directed_path(3);
        let tight = SecludedInstance::new(
            g.clone(),
            NeighborhoodKind::Total,
            Property::StronglyConnected,
            0,
            0,
        );
        assert!(brute_force_secluded(&tight).unwrap().is_none());

        // With k = 1 the endpoints fit; ties go to the lex-smallest set.
        let relaxed = SecludedInstance::new(g, NeighborhoodKind::Total, Property::StronglyConnected, 1, 0);
        let sol = brute_force_secluded(&relaxed).unwrap().unwrap();
        assert_eq!(sol.weight, 1);
        assert_eq!(sol.set, vset([0]));
        assert_eq!(sol.neighborhood, vset([1]));
    }

    #[test]
    fn cap_is_enforced() {
        let g = Digraph::complete_bidirected(8);
        let inst = SecludedInstance::new(g, NeighborhoodKind::Total, Property::Clique, 1, 0);
        assert!(matches!(
            brute_force_secluded_with_cap(&inst, 4),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn optimum_is_monotone_in_k() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..30 {
            let g = random_digraph(&mut rng, 7, 0.3);
            for kind in [
                NeighborhoodKind::In,
                NeighborhoodKind::Out,
                NeighborhoodKind::Total,
            ] {
                let mut prev = None;
                for k in 0..3 {
                    let inst = SecludedInstance::new(
                        g.clone(),
                        kind,
                        Property::StronglyConnected,
                        k,
                        0,
                    );
                    let cur = brute_force_secluded(&inst)
                        .unwrap()
                        .map(|s| s.weight);
                    if let (Some(p), Some(c)) = (prev, cur) {
                        assert!(c >= p);
                    }
                    if prev.is_some() {
                        assert!(cur.is_some());
                    }
                    prev = cur;
                }
            }
        }
    }

    #[test]
    fn weight_scaling_keeps_argmax_feasible() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..20 {
            let g = random_digraph(&mut rng, 7, 0.35);
            let mut scaled = g.clone();
            for v in g.vertices() {
                scaled.set_weight(v, g.weight(v).unwrap() * 3).unwrap();
            }
            let base = SecludedInstance::new(
                g,
                NeighborhoodKind::Total,
                Property::AlphaBounded(1),
                1,
                0,
            );
            let tripled = SecludedInstance {
                graph: scaled,
                ..base.clone()
            };
            let a = brute_force_secluded(&base).unwrap();
            let b = brute_force_secluded(&tripled).unwrap();
            match (a, b) {
                (Some(a), Some(b)) => {
                    assert_eq!(a.weight * 3, b.weight);
                    assert!(tripled.is_feasible(&a.set).unwrap());
                }
                (None, None) => {}
                _ => panic!("scaling changed feasibility"),
            }
        }
    }

    #[test]
    fn branch_and_bound_matches_brute_force() {
        let mut rng = StdRng::seed_from_u64(13);
        for round in 0..40 {
            let g = random_digraph(&mut rng, 8, 0.3);
            let k = (round % 4) as usize;
            for property in [
                Property::StronglyConnected,
                Property::AlphaBounded(1),
                Property::Clique,
                Property::WeaklyConnectedAlphaBounded(2),
            ] {
                let inst = SecludedInstance::new(
                    g.clone(),
                    NeighborhoodKind::Out,
                    property,
                    k,
                    0,
                );
                let bf = brute_force_secluded(&inst).unwrap();
                let bb = branch_and_bound_secluded(&inst, DEFAULT_SEARCH_BUDGET).unwrap();
                assert_eq!(
                    bf.as_ref().map(|s| (s.weight, s.set.clone())),
                    bb.as_ref().map(|s| (s.weight, s.set.clone())),
                    "round {round} k {k}"
                );
            }
        }
    }

    #[test]
    fn empty_set_conventions() {
        // 4-cycle, alpha = 1, k = 0: no nonempty feasible set, so the empty
        // set (weight 0) is the optimum.
        let g = Digraph::directed_cycle(4);
        let inst = SecludedInstance::new(
            g.clone(),
            NeighborhoodKind::Out,
            Property::AlphaBounded(1),
            0,
            0,
        );
        let sol = brute_force_secluded(&inst).unwrap().unwrap();
        assert_eq!(sol.weight, 0);
        assert!(sol.set.is_empty());

        // strongly connected solutions are nonempty: the whole cycle works here
        let sc = SecludedInstance::new(
            g,
            NeighborhoodKind::Total,
            Property::StronglyConnected,
            0,
            0,
        );
        let sol = brute_force_secluded(&sc).unwrap().unwrap();
        assert_eq!(sol.set, vset([0, 1, 2, 3]));
    }
}
