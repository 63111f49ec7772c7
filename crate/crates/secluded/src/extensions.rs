//! Graph extensions: attaching an auxiliary graph to a base graph through
//! cross edges, and compressing the attachment to a bounded-size equivalent.
//!
//! An extension is characterized by three pieces of data over the base graph:
//! which base vertices feed the attachment's source components, which are fed
//! by its sink components, and which ordered base-vertex pairs are connected
//! by a path through the attachment. Two extensions with the same triple are
//! interchangeable inside any strongly connected subgraph, which is what the
//! reduction rules exploit.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::digraph::{Digraph, VertexId, VertexSet};
use crate::error::GraphError;

/// A base graph together with an attachment and the cross edges joining them.
///
/// Cross edges have exactly one endpoint on each side; the vertex sets of
/// base and attachment are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    base: Digraph,
    attachment: Digraph,
    cross_edges: BTreeSet<(VertexId, VertexId)>,
}

/// The equivalence-class label of an extension: base-side neighborhoods of
/// the attachment's source and sink components, plus the base-vertex pairs
/// connected through the attachment. Stored sorted, so equality and ordering
/// are canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtensionSignature {
    pub source: BTreeSet<VertexSet>,
    pub sink: BTreeSet<VertexSet>,
    pub conn: BTreeSet<(VertexId, VertexId)>,
}

impl Extension {
    pub fn new(
        base: Digraph,
        attachment: Digraph,
        cross_edges: BTreeSet<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        for v in attachment.vertices() {
            if base.contains_vertex(v) {
                return Err(GraphError::InvalidArgument(format!(
                    "vertex {v} appears in both base and attachment"
                )));
            }
        }
        for &(x, y) in &cross_edges {
            let base_to_attach = base.contains_vertex(x) && attachment.contains_vertex(y);
            let attach_to_base = attachment.contains_vertex(x) && base.contains_vertex(y);
            if !(base_to_attach || attach_to_base) {
                return Err(GraphError::InvalidArgument(format!(
                    "cross edge ({x},{y}) must have one endpoint on each side"
                )));
            }
        }
        Ok(Self {
            base,
            attachment,
            cross_edges,
        })
    }

    pub fn base(&self) -> &Digraph {
        &self.base
    }

    pub fn attachment(&self) -> &Digraph {
        &self.attachment
    }

    pub fn cross_edges(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.cross_edges
    }

    /// Cross edges entering the attachment, as (base, attachment) pairs.
    fn cross_in(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.cross_edges
            .iter()
            .copied()
            .filter(|&(x, _)| self.base.contains_vertex(x))
    }

    /// Cross edges leaving the attachment, as (attachment, base) pairs.
    fn cross_out(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.cross_edges
            .iter()
            .copied()
            .filter(|&(x, _)| self.attachment.contains_vertex(x))
    }

    /// The graph obtained by taking base plus attachment plus cross edges.
    pub fn extended_graph(&self) -> Digraph {
        let mut g = self.base.clone();
        for v in self.attachment.vertices() {
            g.add_vertex(v, self.attachment.weight(v).unwrap())
                .expect("sides are disjoint");
        }
        for (u, v) in self.attachment.edges() {
            g.add_edge(u, v).unwrap();
        }
        for &(u, v) in &self.cross_edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    /// Restriction onto a subset `u` of the base: the base becomes `base[u]`
    /// and cross edges touching base vertices outside `u` are dropped.
    pub fn restricted_to(&self, u: &VertexSet) -> Result<Extension, GraphError> {
        let base = self.base.induced(u)?;
        let cross = self
            .cross_edges
            .iter()
            .copied()
            .filter(|&(x, y)| {
                (self.attachment.contains_vertex(x) || u.contains(&x))
                    && (self.attachment.contains_vertex(y) || u.contains(&y))
            })
            .collect();
        Extension::new(base, self.attachment.clone(), cross)
    }
}

/// Computes the (source, sink, conn) signature of an extension.
///
/// Paths through the attachment may have length zero, so a single attachment
/// vertex with a cross edge in and a cross edge out already contributes a
/// connection.
pub fn signature(ext: &Extension) -> Result<ExtensionSignature, GraphError> {
    let attach = &ext.attachment;
    let (cond, comp_of) = attach.condensation()?;
    let comp_count = cond.vertex_count() as u32;

    let reach_from = |c: u32| -> BTreeSet<u32> {
        let mut seen = BTreeSet::from([c]);
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            for &y in cond.successors(x).unwrap() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    };
    let comp_reach: Vec<BTreeSet<u32>> = (0..comp_count).map(reach_from).collect();

    let mut source = BTreeSet::new();
    let mut sink = BTreeSet::new();
    for c in 0..comp_count {
        let members: VertexSet = comp_of
            .iter()
            .filter(|(_, &cc)| cc == c)
            .map(|(&v, _)| v)
            .collect();
        if cond.predecessors(c).unwrap().is_empty() {
            let feed: VertexSet = ext
                .cross_in()
                .filter(|(_, d)| members.contains(d))
                .map(|(b, _)| b)
                .collect();
            source.insert(feed);
        }
        if cond.successors(c).unwrap().is_empty() {
            let fed: VertexSet = ext
                .cross_out()
                .filter(|(d, _)| members.contains(d))
                .map(|(_, b)| b)
                .collect();
            sink.insert(fed);
        }
    }

    let mut conn = BTreeSet::new();
    for (a, d1) in ext.cross_in() {
        for (d2, b) in ext.cross_out() {
            if comp_reach[comp_of[&d1] as usize].contains(&comp_of[&d2]) {
                conn.insert((a, b));
            }
        }
    }

    Ok(ExtensionSignature { source, sink, conn })
}

/// Signature equality over the same base graph.
pub fn are_equivalent(e1: &Extension, e2: &Extension) -> Result<bool, GraphError> {
    if e1.base != e2.base {
        return Err(GraphError::InvalidArgument(
            "equivalence is only defined over identical base graphs".into(),
        ));
    }
    Ok(signature(e1)? == signature(e2)?)
}

/// Disjoint union of two extensions over the same base. When the attachments
/// share vertex ids, the second attachment is relabeled onto fresh ids first.
pub fn union_extensions(e1: &Extension, e2: &Extension) -> Result<Extension, GraphError> {
    if e1.base != e2.base {
        return Err(GraphError::InvalidArgument(
            "union is only defined over identical base graphs".into(),
        ));
    }
    let taken: VertexSet = e1
        .base
        .vertices()
        .chain(e1.attachment.vertices())
        .collect();
    let mut fresh = taken
        .iter()
        .next_back()
        .map_or(0, |m| m + 1)
        .max(e2.attachment.next_fresh_id());

    let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for v in e2.attachment.vertices() {
        if taken.contains(&v) {
            rename.insert(v, fresh);
            fresh += 1;
        } else {
            rename.insert(v, v);
        }
    }

    let mut attachment = e1.attachment.clone();
    for v in e2.attachment.vertices() {
        attachment.add_vertex(rename[&v], e2.attachment.weight(v)?)?;
    }
    for (u, v) in e2.attachment.edges() {
        attachment.add_edge(rename[&u], rename[&v])?;
    }
    let mut cross = e1.cross_edges.clone();
    for &(x, y) in &e2.cross_edges {
        let x2 = *rename.get(&x).unwrap_or(&x);
        let y2 = *rename.get(&y).unwrap_or(&y);
        cross.insert((x2, y2));
    }
    Extension::new(e1.base.clone(), attachment, cross)
}

/// The compression routine. A strongly connected attachment contracts to a
/// single vertex carrying the deduplicated cross edges. Otherwise the
/// compressed attachment has one vertex per source-neighborhood set, one per
/// sink-neighborhood set, and one per connection pair, wired so that the
/// signature is reproduced exactly.
pub fn compress(ext: &Extension) -> Result<Extension, GraphError> {
    let base = ext.base.clone();
    let mut fresh = base.next_fresh_id().max(ext.attachment.next_fresh_id());

    if ext.attachment.is_strongly_connected() {
        let v = fresh;
        let mut attachment = Digraph::new();
        attachment.add_vertex(v, 0)?;
        let mut cross = BTreeSet::new();
        for (a, _) in ext.cross_in() {
            cross.insert((a, v));
        }
        for (_, b) in ext.cross_out() {
            cross.insert((v, b));
        }
        return Extension::new(base, attachment, cross);
    }

    let sig = signature(ext)?;
    let mut attachment = Digraph::new();
    let mut cross = BTreeSet::new();

    let mut source_vertex: BTreeMap<VertexSet, VertexId> = BTreeMap::new();
    for s in &sig.source {
        attachment.add_vertex(fresh, 0)?;
        source_vertex.insert(s.clone(), fresh);
        for &a in s {
            cross.insert((a, fresh));
        }
        fresh += 1;
    }
    let mut sink_vertex: BTreeMap<VertexSet, VertexId> = BTreeMap::new();
    for t in &sig.sink {
        attachment.add_vertex(fresh, 0)?;
        sink_vertex.insert(t.clone(), fresh);
        for &b in t {
            cross.insert((fresh, b));
        }
        fresh += 1;
    }
    let mut conn_vertex: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
    for &(a, b) in &sig.conn {
        attachment.add_vertex(fresh, 0)?;
        conn_vertex.insert((a, b), fresh);
        cross.insert((a, fresh));
        cross.insert((fresh, b));
        fresh += 1;
    }

    // Internal edges come from reachable (source component, sink component)
    // pairs of the original attachment.
    let (cond, comp_of) = ext.attachment.condensation()?;
    let comp_count = cond.vertex_count() as u32;
    let members: Vec<VertexSet> = (0..comp_count)
        .map(|c| {
            comp_of
                .iter()
                .filter(|(_, &cc)| cc == c)
                .map(|(&v, _)| v)
                .collect()
        })
        .collect();
    let reach_from = |c: u32| -> BTreeSet<u32> {
        let mut seen = BTreeSet::from([c]);
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            for &y in cond.successors(x).unwrap() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    };

    let cross_in: Vec<(VertexId, VertexId)> = ext.cross_in().collect();
    let cross_out: Vec<(VertexId, VertexId)> = ext.cross_out().collect();
    let mut set_pairs: BTreeSet<(VertexSet, VertexSet)> = BTreeSet::new();
    for cs in 0..comp_count {
        if !cond.predecessors(cs).unwrap().is_empty() {
            continue;
        }
        let reachable = reach_from(cs);
        let s_set: VertexSet = cross_in
            .iter()
            .filter(|(_, d)| members[cs as usize].contains(d))
            .map(|&(a, _)| a)
            .collect();
        for ct in 0..comp_count {
            if !cond.successors(ct).unwrap().is_empty() || !reachable.contains(&ct) {
                continue;
            }
            let t_set: VertexSet = cross_out
                .iter()
                .filter(|(d, _)| members[ct as usize].contains(d))
                .map(|&(_, b)| b)
                .collect();
            set_pairs.insert((s_set.clone(), t_set));
        }
    }

    // Edges between source and sink representatives: one per reachable
    // component pair. Such a pair always has its full cross product inside
    // conn (walk source -> attachment -> sink).
    for (s_set, t_set) in &set_pairs {
        attachment.add_edge(source_vertex[s_set], sink_vertex[t_set])?;
    }

    // Wiring a connection vertex between sources and sinks adds two-hop
    // paths v_S -> v_c -> v_T that realize all of S x T, so the attached
    // pairs must jointly stay inside conn. Pairs are taken greedily in
    // sorted order; the pair induced by a realizing path of c always
    // qualifies, so every connection vertex ends up attached.
    for (&(a, b), &v_c) in &conn_vertex {
        let mut chosen_in: Vec<&VertexSet> = Vec::new();
        let mut chosen_out: Vec<&VertexSet> = Vec::new();
        for (s_set, t_set) in &set_pairs {
            let sources_reach_b = s_set.iter().all(|&s| sig.conn.contains(&(s, b)));
            let a_reaches_sinks = t_set.iter().all(|&t| sig.conn.contains(&(a, t)));
            if !(sources_reach_b && a_reaches_sinks) {
                continue;
            }
            let product_in_conn = |xs: &VertexSet, ys: &VertexSet| {
                xs.iter()
                    .all(|&x| ys.iter().all(|&y| sig.conn.contains(&(x, y))))
            };
            let compatible = chosen_in.iter().all(|prev| product_in_conn(prev, t_set))
                && chosen_out.iter().all(|prev| product_in_conn(s_set, prev));
            if compatible {
                attachment.add_edge(source_vertex[s_set], v_c)?;
                attachment.add_edge(v_c, sink_vertex[t_set])?;
                chosen_in.push(s_set);
                chosen_out.push(t_set);
            }
        }
    }

    Extension::new(base, attachment, cross)
}

/// Test harness for the interchange property: given two equivalent
/// extensions and a nonempty base subset `u`, strong connectivity of the
/// `u`-restricted extended graph under the first extension must imply it
/// under the second.
pub fn interchange_check(
    e1: &Extension,
    e2: &Extension,
    u: &VertexSet,
) -> Result<bool, GraphError> {
    if u.is_empty() {
        return Err(GraphError::InvalidArgument(
            "interchange needs a nonempty base subset".into(),
        ));
    }
    if !are_equivalent(e1, e2)? {
        return Err(GraphError::InvalidArgument(
            "interchange is only stated for equivalent extensions".into(),
        ));
    }
    let sc1 = e1.restricted_to(u)?.extended_graph().is_strongly_connected();
    let sc2 = e2.restricted_to(u)?.extended_graph().is_strongly_connected();
    Ok(!sc1 || sc2)
}

/// Random extension over a random base, for property tests.
pub fn random_extension<R: Rng>(rng: &mut R, max_base: u32, max_attach: u32) -> Extension {
    let nb = rng.gen_range(1..=max_base);
    let na = rng.gen_range(0..=max_attach);
    let mut base = Digraph::with_unit_vertices(nb);
    for u in 0..nb {
        for v in 0..nb {
            if u != v && rng.gen_bool(0.3) {
                base.add_edge(u, v).unwrap();
            }
        }
    }
    let mut attachment = Digraph::new();
    for i in 0..na {
        attachment.add_vertex(nb + i, 1).unwrap();
    }
    for i in 0..na {
        for j in 0..na {
            if i != j && rng.gen_bool(0.3) {
                attachment.add_edge(nb + i, nb + j).unwrap();
            }
        }
    }
    let mut cross = BTreeSet::new();
    for b in 0..nb {
        for d in 0..na {
            if rng.gen_bool(0.25) {
                cross.insert((b, nb + d));
            }
            if rng.gen_bool(0.25) {
                cross.insert((nb + d, b));
            }
        }
    }
    Extension::new(base, attachment, cross).expect("construction is valid")
}
