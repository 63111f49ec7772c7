//! Reduction rules for boundaried maximum strongly connected instances.
//!
//! An instance carries a digraph, a forced-in set `I`, a forced-out set `O`,
//! the allowed-neighborhood set `B`, the budget `k`, and terminals `T ⊆ B`.
//! Any feasible solution takes each weakly connected component of `G − B`
//! wholly or not at all, which is what every rule below exploits. Rules
//! return a rewritten instance plus a trace step; replaying the trace
//! backwards lifts a solution of the reduced instance to one of the original
//! instance with the same weight.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::digraph::{Digraph, VertexId, VertexSet};
use crate::error::GraphError;
use crate::extensions::{compress, signature, Extension, ExtensionSignature};
use crate::oracle::Solution;

/// Inputs of the boundaried maximum strongly connected problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundariedInstance {
    pub graph: Digraph,
    pub include: VertexSet,
    pub exclude: VertexSet,
    pub boundary: VertexSet,
    pub k: usize,
    pub terminals: VertexSet,
}

impl BoundariedInstance {
    pub fn new(
        graph: Digraph,
        include: VertexSet,
        exclude: VertexSet,
        boundary: VertexSet,
        k: usize,
        terminals: VertexSet,
    ) -> Result<Self, GraphError> {
        let inst = Self {
            graph,
            include,
            exclude,
            boundary,
            k,
            terminals,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        for set in [&self.include, &self.exclude, &self.boundary, &self.terminals] {
            if let Some(&v) = set.iter().find(|v| !self.graph.contains_vertex(**v)) {
                return Err(GraphError::NotASubset(v));
            }
        }
        if let Some(&t) = self.terminals.difference(&self.boundary).next() {
            return Err(GraphError::InvalidArgument(format!(
                "terminal {t} lies outside the allowed-neighborhood set"
            )));
        }
        Ok(())
    }

    /// Feasibility: nonempty, `I ⊆ S`, `O ∩ S = ∅`, total neighborhood inside
    /// `B` of size at most `k`, induced subgraph strongly connected.
    pub fn is_feasible(&self, set: &VertexSet) -> Result<bool, GraphError> {
        if set.is_empty() {
            return Ok(false);
        }
        if !self.include.is_subset(set) || !self.exclude.is_disjoint(set) {
            return Ok(false);
        }
        let nbrs = self.graph.total_neighbors(set, false)?;
        Ok(nbrs.is_subset(&self.boundary)
            && nbrs.len() <= self.k
            && self.graph.induced(set)?.is_strongly_connected())
    }

    pub fn solution_for(&self, set: &VertexSet) -> Result<Option<Solution>, GraphError> {
        if !self.is_feasible(set)? {
            return Ok(None);
        }
        Ok(Some(Solution {
            weight: self.graph.total_weight(set)?,
            neighborhood: self.graph.total_neighbors(set, false)?,
            set: set.clone(),
        }))
    }

    /// Weakly connected components of `G − B`, ordered by smallest vertex.
    pub fn outside_components(&self) -> Vec<VertexSet> {
        let rest: VertexSet = self
            .graph
            .vertices()
            .filter(|v| !self.boundary.contains(v))
            .collect();
        self.graph
            .induced(&rest)
            .expect("subset of the vertex set")
            .weak_components()
    }

    /// The component `q` viewed as an extension of its neighborhood: base
    /// `G[N(q)]`, attachment `G[q]`, cross edges the arcs between them.
    pub fn component_extension(&self, q: &VertexSet) -> Result<Extension, GraphError> {
        let nbrs = self.graph.total_neighbors(q, false)?;
        let base = self.graph.induced(&nbrs)?;
        let attachment = self.graph.induced(q)?;
        let mut cross = BTreeSet::new();
        for &(u, v) in self.graph.edges().iter() {
            if q.contains(&u) && nbrs.contains(&v) {
                cross.insert((u, v));
            } else if nbrs.contains(&u) && q.contains(&v) {
                cross.insert((u, v));
            }
        }
        Extension::new(base, attachment, cross)
    }

    pub fn component_signature(&self, q: &VertexSet) -> Result<ExtensionSignature, GraphError> {
        signature(&self.component_extension(q)?)
    }
}

/// One applied rule, with enough data to lift solutions back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    /// Rule 1: grew the forced-in or forced-out set.
    ExtendSets {
        added_include: VertexSet,
        added_exclude: VertexSet,
    },
    /// Rule 2: a component that can never join a solution went into `O`.
    ExcludeComponent { component: VertexSet },
    /// Rule 3: forced-out vertices outside `B` were deleted.
    RemoveExcluded { removed: VertexSet },
    /// Rule 4: a twin component was deleted and its weight moved onto a
    /// designated vertex of the kept component.
    MergeTwins {
        kept: VertexSet,
        removed: VertexSet,
        weight_host: VertexId,
        moved_weight: u64,
    },
    /// Rule 5: a zero-weight apex vertex was attached to the lighter of two
    /// strongly connected twins.
    ApexInserted { apex: VertexId, below: VertexSet },
    /// Rule 6: a component was replaced by its compressed extension.
    CompressComponent {
        original: VertexSet,
        replacement: VertexSet,
    },
}

/// Ordered record of the rules applied to an instance. Owns a copy of the
/// pre-reduction instance so lifted solutions can be validated.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    original: BoundariedInstance,
    steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn new(original: BoundariedInstance) -> Self {
        Self {
            original,
            steps: Vec::new(),
        }
    }

    pub fn original(&self) -> &BoundariedInstance {
        &self.original
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    /// Replays the trace backwards on a solution set of the reduced
    /// instance, producing a vertex set over the original instance.
    pub fn lift_set(&self, set: &VertexSet) -> VertexSet {
        let mut cur = set.clone();
        for step in self.steps.iter().rev() {
            match step {
                TraceStep::ExtendSets { .. } | TraceStep::ExcludeComponent { .. } => {}
                TraceStep::RemoveExcluded { removed } => {
                    debug_assert!(cur.is_disjoint(removed));
                }
                TraceStep::MergeTwins { kept, removed, .. } => {
                    if kept.is_subset(&cur) {
                        cur.extend(removed.iter().copied());
                    }
                }
                TraceStep::ApexInserted { apex, .. } => {
                    cur.remove(apex);
                }
                TraceStep::CompressComponent {
                    original,
                    replacement,
                } => {
                    if replacement.is_subset(&cur) {
                        cur.retain(|v| !replacement.contains(v));
                        cur.extend(original.iter().copied());
                    } else {
                        debug_assert!(cur.is_disjoint(replacement));
                    }
                }
            }
        }
        cur
    }

    /// Lifts a reduced-instance solution and revalidates it against the
    /// original instance; weight must be preserved.
    pub fn lift_solution(&self, sol: &Solution) -> Result<Solution, GraphError> {
        let set = self.lift_set(&sol.set);
        let lifted = self.original.solution_for(&set)?.ok_or_else(|| {
            GraphError::InvalidArgument(
                "lifted solution is infeasible in the original instance".into(),
            )
        })?;
        if lifted.weight != sol.weight {
            return Err(GraphError::InvalidArgument(format!(
                "lifting changed the weight: {} vs {}",
                lifted.weight, sol.weight
            )));
        }
        Ok(lifted)
    }
}

/// Result of applying a single rule.
#[derive(Debug, Clone)]
pub enum RuleOutcome {
    Applied {
        instance: BoundariedInstance,
        step: TraceStep,
    },
    Infeasible,
    NotApplicable,
}

impl RuleOutcome {
    pub fn is_applicable(&self) -> bool {
        !matches!(self, RuleOutcome::NotApplicable)
    }
}

/// Rule 1: a component of `G − B` touching `O` drags its closed neighborhood
/// into `O`; a component whose closed neighborhood touches `I` must be taken
/// wholly into `I`. Both at once means no solution exists.
pub fn rule1_extend_in_out(inst: &BoundariedInstance) -> RuleOutcome {
    for q in inst.outside_components() {
        let closed = inst
            .graph
            .total_neighbors(&q, true)
            .expect("component of the instance graph");
        let hits_exclude = !q.is_disjoint(&inst.exclude);
        let hits_include = !closed.is_disjoint(&inst.include);
        if hits_exclude && hits_include {
            return RuleOutcome::Infeasible;
        }
        if hits_exclude {
            let added: VertexSet = closed.difference(&inst.exclude).copied().collect();
            if !added.is_empty() {
                let mut next = inst.clone();
                next.exclude.extend(added.iter().copied());
                return RuleOutcome::Applied {
                    instance: next,
                    step: TraceStep::ExtendSets {
                        added_include: VertexSet::new(),
                        added_exclude: added,
                    },
                };
            }
        }
        if hits_include {
            let added: VertexSet = q.difference(&inst.include).copied().collect();
            if !added.is_empty() {
                let mut next = inst.clone();
                next.include.extend(added.iter().copied());
                return RuleOutcome::Applied {
                    instance: next,
                    step: TraceStep::ExtendSets {
                        added_include: added,
                        added_exclude: VertexSet::new(),
                    },
                };
            }
        }
    }
    RuleOutcome::NotApplicable
}

/// Rule 2: a component that is not strongly connected and has a source
/// component with no incoming cross edge (or a sink with no outgoing one)
/// can never be part of a solution; push it into `O`.
pub fn rule2_no_sources_or_sinks(inst: &BoundariedInstance) -> RuleOutcome {
    for q in inst.outside_components() {
        if inst
            .graph
            .induced(&q)
            .expect("component of the instance graph")
            .is_strongly_connected()
        {
            continue;
        }
        let sig = inst.component_signature(&q).expect("valid component");
        let empty = VertexSet::new();
        if sig.source.contains(&empty) || sig.sink.contains(&empty) {
            let added: VertexSet = q.difference(&inst.exclude).copied().collect();
            if !added.is_empty() {
                let mut next = inst.clone();
                next.exclude.extend(added.iter().copied());
                return RuleOutcome::Applied {
                    instance: next,
                    step: TraceStep::ExcludeComponent { component: q },
                };
            }
        }
    }
    RuleOutcome::NotApplicable
}

/// Rule 3: once rule 1 is exhausted, forced-out vertices outside `B` can be
/// deleted outright.
pub fn rule3_remove_out(inst: &BoundariedInstance) -> RuleOutcome {
    if rule1_extend_in_out(inst).is_applicable() {
        return RuleOutcome::NotApplicable;
    }
    let removed: VertexSet = inst
        .exclude
        .difference(&inst.boundary)
        .copied()
        .collect();
    if removed.is_empty() {
        return RuleOutcome::NotApplicable;
    }
    debug_assert!(inst.include.is_disjoint(&removed));
    let mut next = inst.clone();
    next.graph = inst
        .graph
        .without_vertices(&removed)
        .expect("forced-out vertices exist");
    next.exclude.retain(|v| !removed.contains(v));
    RuleOutcome::Applied {
        instance: next,
        step: TraceStep::RemoveExcluded { removed },
    }
}

fn rules_1_to_3_exhausted(inst: &BoundariedInstance) -> bool {
    !rule1_extend_in_out(inst).is_applicable()
        && !rule2_no_sources_or_sinks(inst).is_applicable()
        && !rule3_remove_out(inst).is_applicable()
}

/// Rule 4: two components that are not strongly connected but have equal
/// extension signatures play identical roles; delete the later one and move
/// its weight onto the smallest vertex of the kept one.
pub fn rule4_merge_twins(inst: &BoundariedInstance) -> RuleOutcome {
    if !rules_1_to_3_exhausted(inst) {
        return RuleOutcome::NotApplicable;
    }
    let comps = inst.outside_components();
    let mut sigs: Vec<Option<ExtensionSignature>> = Vec::with_capacity(comps.len());
    for q in &comps {
        let strongly_connected = inst
            .graph
            .induced(q)
            .expect("component of the instance graph")
            .is_strongly_connected();
        sigs.push(if strongly_connected {
            None
        } else {
            Some(inst.component_signature(q).expect("valid component"))
        });
    }
    for i in 0..comps.len() {
        let Some(sig_i) = &sigs[i] else { continue };
        for j in i + 1..comps.len() {
            let Some(sig_j) = &sigs[j] else { continue };
            if sig_i != sig_j {
                continue;
            }
            let kept = comps[i].clone();
            let removed = comps[j].clone();
            let host = *kept.iter().next().unwrap();
            let moved = inst
                .graph
                .total_weight(&removed)
                .expect("component weights");
            let mut next = inst.clone();
            let host_weight = next.graph.weight(host).unwrap();
            let new_weight = host_weight.checked_add(moved);
            let Some(new_weight) = new_weight else {
                continue; // weight overflow: leave the pair alone
            };
            next.graph = next
                .graph
                .without_vertices(&removed)
                .expect("component vertices exist");
            next.graph.set_weight(host, new_weight).unwrap();
            let removed_touches_include = !removed.is_disjoint(&inst.include);
            next.include.retain(|v| !removed.contains(v));
            if removed_touches_include {
                next.include.extend(kept.iter().copied());
            }
            return RuleOutcome::Applied {
                instance: next,
                step: TraceStep::MergeTwins {
                    kept,
                    removed,
                    weight_host: host,
                    moved_weight: moved,
                },
            };
        }
    }
    RuleOutcome::NotApplicable
}

/// Rule 5: two strongly connected twin components can each be a solution on
/// their own, so plain deletion is unsafe. Instead, attach a zero-weight
/// apex below the lighter one: every component vertex points at the apex and
/// the apex points at the component's whole neighborhood. That breaks the
/// lighter component's standalone strong connectivity while preserving the
/// roles it can play inside bigger solutions.
pub fn rule5_scc_twins(inst: &BoundariedInstance) -> RuleOutcome {
    if !rules_1_to_3_exhausted(inst) {
        return RuleOutcome::NotApplicable;
    }
    let comps = inst.outside_components();
    let mut sigs: Vec<Option<ExtensionSignature>> = Vec::with_capacity(comps.len());
    for q in &comps {
        let strongly_connected = inst
            .graph
            .induced(q)
            .expect("component of the instance graph")
            .is_strongly_connected();
        sigs.push(if strongly_connected {
            Some(inst.component_signature(q).expect("valid component"))
        } else {
            None
        });
    }
    for i in 0..comps.len() {
        let Some(sig_i) = &sigs[i] else { continue };
        for j in i + 1..comps.len() {
            let Some(sig_j) = &sigs[j] else { continue };
            if sig_i != sig_j {
                continue;
            }
            let wi = inst.graph.total_weight(&comps[i]).expect("weights");
            let wj = inst.graph.total_weight(&comps[j]).expect("weights");
            // the heavier twin stays intact; ties keep the earlier one
            let lighter = if wi >= wj { &comps[j] } else { &comps[i] };
            let nbrs = inst
                .graph
                .total_neighbors(lighter, false)
                .expect("component of the instance graph");
            let apex = inst.graph.next_fresh_id();
            let mut next = inst.clone();
            next.graph.add_vertex(apex, 0).unwrap();
            for &q2 in lighter.iter() {
                next.graph.add_edge(q2, apex).unwrap();
            }
            for &v in &nbrs {
                next.graph.add_edge(apex, v).unwrap();
            }
            return RuleOutcome::Applied {
                instance: next,
                step: TraceStep::ApexInserted {
                    apex,
                    below: lighter.clone(),
                },
            };
        }
    }
    RuleOutcome::NotApplicable
}

/// Is the component already shaped like its own compressed extension?
///
/// Strongly connected components compress to a single vertex, so they are in
/// compressed form exactly when they have one vertex. Otherwise the
/// component must be the canonical three-layer construction; vertices are
/// identified by their cross-edge pattern (which is unambiguous once rule 2
/// has removed components with unattached sources or sinks), and the
/// internal edges must match exactly.
fn is_compressed_form(ext: &Extension) -> bool {
    let d = ext.attachment();
    if d.is_empty() {
        return true;
    }
    if d.is_strongly_connected() {
        return d.vertex_count() == 1;
    }
    let canon = compress(ext).expect("compression of a valid extension");
    let canon_d = canon.attachment();
    if d.vertex_count() != canon_d.vertex_count() || d.edge_count() != canon_d.edge_count() {
        return false;
    }
    let pattern = |g: &Extension, v: VertexId| -> (VertexSet, VertexSet) {
        let cin = g
            .cross_edges()
            .iter()
            .filter(|&&(a, b)| b == v && g.base().contains_vertex(a))
            .map(|&(a, _)| a)
            .collect();
        let cout = g
            .cross_edges()
            .iter()
            .filter(|&&(a, b)| a == v && g.base().contains_vertex(b))
            .map(|&(_, b)| b)
            .collect();
        (cin, cout)
    };
    let mut by_pattern: BTreeMap<(VertexSet, VertexSet), VertexId> = BTreeMap::new();
    for v in canon_d.vertices() {
        if by_pattern.insert(pattern(&canon, v), v).is_some() {
            return false; // ambiguous pattern: only happens pre rule 2
        }
    }
    let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for v in d.vertices() {
        match by_pattern.get(&pattern(ext, v)) {
            Some(&c) => {
                rename.insert(v, c);
            }
            None => return false,
        }
    }
    if rename.values().collect::<BTreeSet<_>>().len() != canon_d.vertex_count() {
        return false;
    }
    d.edges()
        .iter()
        .all(|&(u, v)| canon_d.has_edge(rename[&u], rename[&v]))
}

/// Rule 6: replace a component by its compressed extension. The whole
/// original weight lands on the smallest replacement vertex.
pub fn rule6_compress(inst: &BoundariedInstance) -> RuleOutcome {
    if !rules_1_to_3_exhausted(inst) {
        return RuleOutcome::NotApplicable;
    }
    for q in inst.outside_components() {
        let ext = inst.component_extension(&q).expect("valid component");
        if is_compressed_form(&ext) {
            continue;
        }
        let compressed = compress(&ext).expect("compression of a valid extension");
        let weight = inst.graph.total_weight(&q).expect("component weights");

        let mut next = inst.clone();
        next.graph = next.graph.without_vertices(&q).expect("component exists");
        // relabel the compressed attachment onto fresh ids of this graph
        let mut fresh = next.graph.next_fresh_id().max(inst.graph.next_fresh_id());
        let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for v in compressed.attachment().vertices() {
            rename.insert(v, fresh);
            next.graph.add_vertex(fresh, 0).unwrap();
            fresh += 1;
        }
        for (u, v) in compressed.attachment().edges() {
            next.graph.add_edge(rename[&u], rename[&v]).unwrap();
        }
        for &(u, v) in compressed.cross_edges() {
            let (u2, v2) = (
                *rename.get(&u).unwrap_or(&u),
                *rename.get(&v).unwrap_or(&v),
            );
            next.graph.add_edge(u2, v2).unwrap();
        }
        let replacement: VertexSet = rename.values().copied().collect();
        let host = *replacement.iter().next().expect("nonempty replacement");
        next.graph.set_weight(host, weight).unwrap();
        let touches_include = !q.is_disjoint(&inst.include);
        next.include.retain(|v| !q.contains(v));
        if touches_include {
            next.include.extend(replacement.iter().copied());
        }
        return RuleOutcome::Applied {
            instance: next,
            step: TraceStep::CompressComponent {
                original: q,
                replacement,
            },
        };
    }
    RuleOutcome::NotApplicable
}

/// Result of running the rules to a fixpoint.
#[derive(Debug, Clone)]
pub enum ReduceOutcome {
    Reduced {
        instance: BoundariedInstance,
        trace: ReductionTrace,
    },
    Infeasible,
}

/// Applies the rules until none fires: rules 1–3 to a fixpoint, then the
/// strongly connected twin rule, then twin merging, repeating; compression
/// runs last, once per remaining component, since it may enlarge a component
/// and must not be revisited.
pub fn reduce_exhaustively(inst: &BoundariedInstance) -> ReduceOutcome {
    let mut trace = ReductionTrace::new(inst.clone());
    let mut cur = inst.clone();
    let budget = 30 * (inst.graph.vertex_count() + 2);
    let mut applications = 0usize;
    let bump = |applications: &mut usize| {
        *applications += 1;
        assert!(
            *applications <= budget,
            "reduction exceeded its application budget"
        );
    };

    loop {
        loop {
            let outcome = rule1_extend_in_out(&cur);
            match outcome {
                RuleOutcome::Infeasible => return ReduceOutcome::Infeasible,
                RuleOutcome::Applied { instance, step } => {
                    bump(&mut applications);
                    cur = instance;
                    trace.push(step);
                    continue;
                }
                RuleOutcome::NotApplicable => {}
            }
            match rule2_no_sources_or_sinks(&cur) {
                RuleOutcome::Applied { instance, step } => {
                    bump(&mut applications);
                    cur = instance;
                    trace.push(step);
                    continue;
                }
                RuleOutcome::Infeasible => return ReduceOutcome::Infeasible,
                RuleOutcome::NotApplicable => {}
            }
            match rule3_remove_out(&cur) {
                RuleOutcome::Applied { instance, step } => {
                    bump(&mut applications);
                    cur = instance;
                    trace.push(step);
                    continue;
                }
                RuleOutcome::Infeasible => return ReduceOutcome::Infeasible,
                RuleOutcome::NotApplicable => break,
            }
        }
        match rule5_scc_twins(&cur) {
            RuleOutcome::Applied { instance, step } => {
                bump(&mut applications);
                cur = instance;
                trace.push(step);
                continue;
            }
            RuleOutcome::Infeasible => return ReduceOutcome::Infeasible,
            RuleOutcome::NotApplicable => {}
        }
        match rule4_merge_twins(&cur) {
            RuleOutcome::Applied { instance, step } => {
                bump(&mut applications);
                cur = instance;
                trace.push(step);
                continue;
            }
            RuleOutcome::Infeasible => return ReduceOutcome::Infeasible,
            RuleOutcome::NotApplicable => {}
        }
        // rules 1-5 exhausted; compress each remaining component once
        match rule6_compress(&cur) {
            RuleOutcome::Applied { instance, step } => {
                bump(&mut applications);
                cur = instance;
                trace.push(step);
                continue;
            }
            RuleOutcome::Infeasible => return ReduceOutcome::Infeasible,
            RuleOutcome::NotApplicable => break,
        }
    }
    ReduceOutcome::Reduced {
        instance: cur,
        trace,
    }
}

/// Convenience wrapper matching the trace against a reduced-instance
/// solution; see [`ReductionTrace::lift_solution`].
pub fn lift_solution(trace: &ReductionTrace, sol: &Solution) -> Result<Solution, GraphError> {
    trace.lift_solution(sol)
}

/// Random boundaried instance for property tests: a sparse digraph, a
/// boundary of roughly half the vertices, small forced sets, terminals
/// inside the boundary.
pub fn random_boundaried<R: Rng>(rng: &mut R, n: u32, k: usize) -> BoundariedInstance {
    let mut graph = Digraph::new();
    for v in 0..n {
        graph.add_vertex(v, rng.gen_range(1..=4)).unwrap();
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(0.28) {
                graph.add_edge(u, v).unwrap();
            }
        }
    }
    let boundary: VertexSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut include = VertexSet::new();
    let mut exclude = VertexSet::new();
    for v in 0..n {
        let roll: f64 = rng.gen();
        if roll < 0.12 {
            include.insert(v);
        } else if roll < 0.24 {
            exclude.insert(v);
        }
    }
    exclude.retain(|v| !include.contains(v));
    let terminals: VertexSet = boundary
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.3))
        .take(2 * k)
        .collect();
    BoundariedInstance::new(graph, include, exclude, boundary, k, terminals)
        .expect("construction is valid")
}

/// Two isomorphic components attached identically to a two-vertex boundary;
/// `strongly_connected` picks between 2-cycles (rule 5 bait) and directed
/// paths (rule 4 bait).
pub fn twin_component_instance(strongly_connected: bool) -> BoundariedInstance {
    let mut g = Digraph::new();
    for v in 0..6 {
        g.add_vertex(v, 1).unwrap();
    }
    g.add_edge(0, 1).unwrap();
    g.add_edge(1, 0).unwrap();
    for (a, b) in [(2u32, 3u32), (4, 5)] {
        g.add_edge(a, b).unwrap();
        if strongly_connected {
            g.add_edge(b, a).unwrap();
        }
        g.add_edge(0, a).unwrap();
        g.add_edge(b, 1).unwrap();
    }
    BoundariedInstance::new(
        g,
        VertexSet::new(),
        VertexSet::new(),
        VertexSet::from([0, 1]),
        2,
        VertexSet::new(),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::vset;
    use crate::oracle::brute_force_max_tsscs;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn opt(inst: &BoundariedInstance) -> Option<u64> {
        brute_force_max_tsscs(inst).unwrap().map(|s| s.weight)
    }

    #[test]
    fn rule1_cases() {
        // boundary {0}; component {1,2} (path 1->2) attached to 0
        let mut g = Digraph::with_unit_vertices(3);
        g.add_edge(1, 2).unwrap();
        g.add_edge(0, 1).unwrap();
        let base = BoundariedInstance::new(
            g,
            VertexSet::new(),
            VertexSet::new(),
            vset([0]),
            1,
            VertexSet::new(),
        )
        .unwrap();

        // untouched component: nothing to do
        assert!(!rule1_extend_in_out(&base).is_applicable());

        // component hits O: the closed neighborhood joins O
        let mut with_o = base.clone();
        with_o.exclude = vset([2]);
        match rule1_extend_in_out(&with_o) {
            RuleOutcome::Applied { instance, .. } => {
                assert_eq!(instance.exclude, vset([0, 1, 2]));
            }
            other => panic!("expected application, got {other:?}"),
        }

        // component hits O while its neighborhood hits I: no solution
        let mut conflicted = base.clone();
        conflicted.exclude = vset([2]);
        conflicted.include = vset([1]);
        assert!(matches!(
            rule1_extend_in_out(&conflicted),
            RuleOutcome::Infeasible
        ));
    }

    #[test]
    fn rule2_excludes_components_without_attached_sources() {
        // component {1,2}: 1 -> 2, only outgoing cross edges
        let mut g = Digraph::with_unit_vertices(3);
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 0).unwrap();
        g.add_edge(1, 0).unwrap();
        let inst = BoundariedInstance::new(
            g,
            VertexSet::new(),
            VertexSet::new(),
            vset([0]),
            1,
            VertexSet::new(),
        )
        .unwrap();
        match rule2_no_sources_or_sinks(&inst) {
            RuleOutcome::Applied { instance, .. } => {
                assert_eq!(instance.exclude, vset([1, 2]));
            }
            other => panic!("expected application, got {other:?}"),
        }
    }

    #[test]
    fn rule3_deletes_outside_excluded_vertices() {
        let mut g = Digraph::with_unit_vertices(3);
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 1).unwrap();
        g.add_edge(0, 1).unwrap();
        let inst = BoundariedInstance::new(
            g,
            VertexSet::new(),
            vset([1, 2]),
            vset([0]),
            1,
            VertexSet::new(),
        )
        .unwrap();
        // rule 1 first extends O over the component's neighborhood
        let RuleOutcome::Applied { instance, .. } = rule1_extend_in_out(&inst) else {
            panic!("rule 1 should extend O");
        };
        let RuleOutcome::Applied { instance, step } = rule3_remove_out(&instance) else {
            panic!("rule 3 should fire");
        };
        assert_eq!(step, TraceStep::RemoveExcluded { removed: vset([1, 2]) });
        assert_eq!(instance.graph.vertex_count(), 1);
    }

    #[test]
    fn rule4_merges_twin_paths() {
        let inst = twin_component_instance(false);
        let before = opt(&inst);
        let RuleOutcome::Applied { instance, step } = rule4_merge_twins(&inst) else {
            panic!("twin paths should merge");
        };
        assert_eq!(opt(&instance), before);
        let TraceStep::MergeTwins {
            kept,
            removed,
            weight_host,
            moved_weight,
        } = step
        else {
            panic!("wrong step");
        };
        assert_eq!(kept, vset([2, 3]));
        assert_eq!(removed, vset([4, 5]));
        assert_eq!(weight_host, 2);
        assert_eq!(moved_weight, 2);
        assert_eq!(instance.graph.weight(2).unwrap(), 3);
    }

    #[test]
    fn rule5_attaches_apex_to_scc_twin() {
        let inst = twin_component_instance(true);
        let before = opt(&inst);
        let RuleOutcome::Applied { instance, step } = rule5_scc_twins(&inst) else {
            panic!("strongly connected twins should get an apex");
        };
        assert_eq!(opt(&instance), before);
        let TraceStep::ApexInserted { apex, below } = step else {
            panic!("wrong step");
        };
        assert_eq!(below, vset([4, 5]));
        assert_eq!(instance.graph.weight(apex).unwrap(), 0);
        // the augmented component is no longer strongly connected
        let mut comp = below.clone();
        comp.insert(apex);
        assert!(!instance.graph.induced(&comp).unwrap().is_strongly_connected());
    }

    #[test]
    fn rule6_compresses_and_preserves_weight() {
        // one component {1,2,3}: 1 -> 2 -> 3 with crosses 0 -> 1 and 3 -> 0;
        // extra vertex 2 in the middle compresses away
        let mut g = Digraph::new();
        for v in 0..4 {
            g.add_vertex(v, 2).unwrap();
        }
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 3).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(3, 0).unwrap();
        let inst = BoundariedInstance::new(
            g,
            VertexSet::new(),
            VertexSet::new(),
            vset([0]),
            2,
            VertexSet::new(),
        )
        .unwrap();
        let before = opt(&inst);
        let RuleOutcome::Applied { instance, step } = rule6_compress(&inst) else {
            panic!("the path component is not in compressed form");
        };
        let TraceStep::CompressComponent {
            original,
            replacement,
        } = &step
        else {
            panic!("wrong step");
        };
        assert_eq!(*original, vset([1, 2, 3]));
        assert_eq!(
            instance.graph.total_weight(replacement).unwrap(),
            6,
            "component weight is preserved"
        );
        assert_eq!(opt(&instance), before);
        // a second application must not fire on the replacement
        assert!(!rule6_compress(&instance).is_applicable());
    }

    #[test]
    fn identity_on_instances_with_full_boundary() {
        let g = Digraph::complete_bidirected(4);
        let all = g.vertex_set();
        let inst =
            BoundariedInstance::new(g, VertexSet::new(), VertexSet::new(), all, 1, VertexSet::new())
                .unwrap();
        match reduce_exhaustively(&inst) {
            ReduceOutcome::Reduced { instance, trace } => {
                assert_eq!(instance, inst);
                assert!(trace.steps().is_empty());
            }
            ReduceOutcome::Infeasible => panic!("feasible instance"),
        }
    }

    fn all_rules(
        inst: &BoundariedInstance,
    ) -> [(&'static str, RuleOutcome); 6] {
        [
            ("rule1", rule1_extend_in_out(inst)),
            ("rule2", rule2_no_sources_or_sinks(inst)),
            ("rule3", rule3_remove_out(inst)),
            ("rule4", rule4_merge_twins(inst)),
            ("rule5", rule5_scc_twins(inst)),
            ("rule6", rule6_compress(inst)),
        ]
    }

    #[test]
    fn every_single_rule_application_preserves_the_optimum() {
        let mut rng = StdRng::seed_from_u64(41);
        for round in 0..120 {
            let inst = random_boundaried(&mut rng, 7, 2);
            let before = opt(&inst);
            for (name, outcome) in all_rules(&inst) {
                match outcome {
                    RuleOutcome::Applied { instance, .. } => {
                        instance.validate().unwrap();
                        assert_eq!(
                            opt(&instance),
                            before,
                            "{name} changed the optimum in round {round}"
                        );
                    }
                    RuleOutcome::Infeasible => {
                        assert_eq!(before, None, "{name} wrongly reported infeasible");
                    }
                    RuleOutcome::NotApplicable => {}
                }
            }
        }
    }

    #[test]
    fn exhaustive_reduction_preserves_optimum_and_lifts_solutions() {
        let mut rng = StdRng::seed_from_u64(42);
        for round in 0..120 {
            let inst = random_boundaried(&mut rng, 7, 2);
            let before = opt(&inst);
            match reduce_exhaustively(&inst) {
                ReduceOutcome::Infeasible => {
                    assert_eq!(before, None, "round {round}");
                }
                ReduceOutcome::Reduced { instance, trace } => {
                    let after = brute_force_max_tsscs(&instance).unwrap();
                    assert_eq!(after.as_ref().map(|s| s.weight), before, "round {round}");
                    if let Some(sol) = after {
                        let lifted = trace.lift_solution(&sol).unwrap();
                        assert_eq!(lifted.weight, sol.weight);
                        assert!(inst.is_feasible(&lifted.set).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn twin_instances_reduce_to_single_components() {
        for strongly_connected in [false, true] {
            let inst = twin_component_instance(strongly_connected);
            let before = opt(&inst);
            let ReduceOutcome::Reduced { instance, trace } = reduce_exhaustively(&inst) else {
                panic!("feasible instance");
            };
            assert_eq!(opt(&instance), before);
            assert!(!trace.steps().is_empty());
        }
    }

    #[test]
    fn fixpoint_components_are_in_include_or_untouched() {
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..60 {
            let inst = random_boundaried(&mut rng, 7, 2);
            if let ReduceOutcome::Reduced { instance, .. } = reduce_exhaustively(&inst) {
                for q in instance.outside_components() {
                    let in_include = q.is_subset(&instance.include);
                    let untouched = q.is_disjoint(&instance.include)
                        && q.is_disjoint(&instance.exclude);
                    assert!(in_include || untouched, "component {q:?}");
                }
            }
        }
    }

    #[test]
    fn application_count_stays_linear() {
        let mut rng = StdRng::seed_from_u64(44);
        for _ in 0..40 {
            let n = 8;
            let inst = random_boundaried(&mut rng, n, 2);
            if let ReduceOutcome::Reduced { trace, .. } = reduce_exhaustively(&inst) {
                assert!(trace.steps().len() <= 6 * (n as usize + 2));
            }
        }
    }
}
