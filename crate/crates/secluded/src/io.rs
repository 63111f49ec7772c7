//! Plain-text instance format and seeded instance generators.
//!
//! Instances are line-oriented:
//!
//! ```text
//! c free-form comment
//! p secluded <n> <m> <kind> <property> <k> <w>
//! v <id> <weight>
//! e <u> <v>
//! t <id>   i <id>   o <id>   b <id>
//! ```
//!
//! `kind` is `in`, `out`, or `total`; `property` is `scc`, `alpha:<a>`,
//! `clique`, `tournament`, or `ffree:<file>`. Vertex ids are dense in
//! `[0, n)`. Weight lines may be omitted (weights default to 1). A file is
//! boundaried exactly when it contains `t`/`i`/`o`/`b` lines. The canonical
//! serializer emits every section sorted, so serialize-parse round trips are
//! byte-identical.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::{Digraph, NeighborhoodKind, VertexId, VertexSet};
use crate::error::GraphError;
use crate::gadgets::ForbiddenFamily;
use crate::oracle::{Property, SecludedInstance};
use crate::reductions::BoundariedInstance;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `p secluded` header")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

/// Property field of an instance file. The forbidden-family variant keeps
/// the referenced file name; resolving it is the caller's business.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertySpec {
    StronglyConnected,
    Alpha(u32),
    Clique,
    Tournament,
    FFree(String),
}

impl PropertySpec {
    pub fn label(&self) -> String {
        match self {
            PropertySpec::StronglyConnected => "scc".into(),
            PropertySpec::Alpha(a) => format!("alpha:{a}"),
            PropertySpec::Clique => "clique".into(),
            PropertySpec::Tournament => "tournament".into(),
            PropertySpec::FFree(path) => format!("ffree:{path}"),
        }
    }

    fn parse(s: &str, line: usize) -> Result<Self, ParseError> {
        if s == "scc" {
            return Ok(PropertySpec::StronglyConnected);
        }
        if s == "clique" {
            return Ok(PropertySpec::Clique);
        }
        if s == "tournament" {
            return Ok(PropertySpec::Tournament);
        }
        if let Some(a) = s.strip_prefix("alpha:") {
            let a = a
                .parse()
                .map_err(|_| err(line, format!("bad alpha value `{a}`")))?;
            return Ok(PropertySpec::Alpha(a));
        }
        if let Some(path) = s.strip_prefix("ffree:") {
            if path.is_empty() {
                return Err(err(line, "ffree needs a family file name"));
            }
            return Ok(PropertySpec::FFree(path.to_string()));
        }
        Err(err(line, format!("unknown property `{s}`")))
    }
}

/// Parsed form of an instance file, one-to-one with the text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDoc {
    pub kind: NeighborhoodKind,
    pub property: PropertySpec,
    pub k: usize,
    pub w: u64,
    pub weights: Vec<u64>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub terminals: Vec<VertexId>,
    pub includes: Vec<VertexId>,
    pub excludes: Vec<VertexId>,
    pub boundary: Vec<VertexId>,
}

impl InstanceDoc {
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn is_boundaried(&self) -> bool {
        !(self.terminals.is_empty()
            && self.includes.is_empty()
            && self.excludes.is_empty()
            && self.boundary.is_empty())
    }

    pub fn graph(&self) -> Result<Digraph, GraphError> {
        let mut g = Digraph::new();
        for (v, &w) in self.weights.iter().enumerate() {
            g.add_vertex(v as VertexId, w)?;
        }
        for &(u, v) in &self.edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds the in-memory secluded instance; forbidden-family properties
    /// need the resolved family.
    pub fn to_secluded(
        &self,
        family: Option<ForbiddenFamily>,
    ) -> Result<SecludedInstance, ParseError> {
        let property = match &self.property {
            PropertySpec::StronglyConnected => Property::StronglyConnected,
            PropertySpec::Alpha(a) => Property::AlphaBounded(*a),
            PropertySpec::Clique => Property::Clique,
            PropertySpec::Tournament => Property::Tournament,
            PropertySpec::FFree(path) => {
                let fam = family.ok_or_else(|| {
                    err(0, format!("property references family file `{path}`"))
                })?;
                Property::WeaklyConnectedFFree(fam)
            }
        };
        Ok(SecludedInstance::new(
            self.graph()?,
            self.kind,
            property,
            self.k,
            self.w,
        ))
    }

    pub fn to_boundaried(&self) -> Result<BoundariedInstance, ParseError> {
        Ok(BoundariedInstance::new(
            self.graph()?,
            self.includes.iter().copied().collect(),
            self.excludes.iter().copied().collect(),
            self.boundary.iter().copied().collect(),
            self.k,
            self.terminals.iter().copied().collect(),
        )?)
    }

    /// Document for a plain instance. Vertex ids are renumbered onto `0..n`
    /// in sorted order; the returned map sends original ids to file ids.
    pub fn from_graph(
        graph: &Digraph,
        kind: NeighborhoodKind,
        property: PropertySpec,
        k: usize,
        w: u64,
    ) -> (Self, BTreeMap<VertexId, VertexId>) {
        let ids: Vec<VertexId> = graph.vertices().collect();
        let renumber: BTreeMap<VertexId, VertexId> = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as VertexId))
            .collect();
        let weights = ids.iter().map(|&v| graph.weight(v).unwrap()).collect();
        let mut edges: Vec<(VertexId, VertexId)> = graph
            .edges()
            .into_iter()
            .map(|(u, v)| (renumber[&u], renumber[&v]))
            .collect();
        edges.sort_unstable();
        (
            Self {
                kind,
                property,
                k,
                w,
                weights,
                edges,
                terminals: Vec::new(),
                includes: Vec::new(),
                excludes: Vec::new(),
                boundary: Vec::new(),
            },
            renumber,
        )
    }

    pub fn from_boundaried(inst: &BoundariedInstance) -> (Self, BTreeMap<VertexId, VertexId>) {
        let (mut doc, renumber) = Self::from_graph(
            &inst.graph,
            NeighborhoodKind::Total,
            PropertySpec::StronglyConnected,
            inst.k,
            0,
        );
        let map = |set: &VertexSet| -> Vec<VertexId> {
            set.iter().map(|v| renumber[v]).collect()
        };
        doc.terminals = map(&inst.terminals);
        doc.includes = map(&inst.include);
        doc.excludes = map(&inst.exclude);
        doc.boundary = map(&inst.boundary);
        (doc, renumber)
    }
}

/// Parses an instance file. Errors carry 1-based line numbers.
pub fn parse_instance(text: &str) -> Result<InstanceDoc, ParseError> {
    let mut doc: Option<InstanceDoc> = None;
    let mut declared_m = 0usize;
    let mut weight_lines: Vec<(usize, VertexId, u64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if doc.is_some() {
                    return Err(err(line, "duplicate header"));
                }
                if fields.len() != 8 || fields[1] != "secluded" {
                    return Err(err(line, "expected `p secluded <n> <m> <kind> <property> <k> <w>`"));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| err(line, "bad vertex count"))?;
                declared_m = fields[3]
                    .parse()
                    .map_err(|_| err(line, "bad edge count"))?;
                let kind = match fields[4] {
                    "in" => NeighborhoodKind::In,
                    "out" => NeighborhoodKind::Out,
                    "total" => NeighborhoodKind::Total,
                    other => return Err(err(line, format!("unknown kind `{other}`"))),
                };
                let property = PropertySpec::parse(fields[5], line)?;
                let k = fields[6].parse().map_err(|_| err(line, "bad k"))?;
                let w = fields[7].parse().map_err(|_| err(line, "bad w"))?;
                doc = Some(InstanceDoc {
                    kind,
                    property,
                    k,
                    w,
                    weights: vec![1; n],
                    edges: Vec::new(),
                    terminals: Vec::new(),
                    includes: Vec::new(),
                    excludes: Vec::new(),
                    boundary: Vec::new(),
                });
            }
            tag @ ("v" | "e" | "t" | "i" | "o" | "b") => {
                let doc = doc.as_mut().ok_or(ParseError::MissingHeader)?;
                let want = if tag == "v" || tag == "e" { 3 } else { 2 };
                if fields.len() != want {
                    return Err(err(line, format!("malformed `{tag}` line")));
                }
                let id: VertexId = fields[1]
                    .parse()
                    .map_err(|_| err(line, "bad vertex id"))?;
                if (id as usize) >= doc.n() {
                    return Err(err(line, format!("vertex id {id} out of range")));
                }
                match tag {
                    "v" => {
                        let w = fields[2].parse().map_err(|_| err(line, "bad weight"))?;
                        weight_lines.push((line, id, w));
                    }
                    "e" => {
                        let v: VertexId = fields[2]
                            .parse()
                            .map_err(|_| err(line, "bad vertex id"))?;
                        if (v as usize) >= doc.n() {
                            return Err(err(line, format!("vertex id {v} out of range")));
                        }
                        if id == v {
                            return Err(err(line, "self-loops are not allowed"));
                        }
                        doc.edges.push((id, v));
                    }
                    "t" => doc.terminals.push(id),
                    "i" => doc.includes.push(id),
                    "o" => doc.excludes.push(id),
                    "b" => doc.boundary.push(id),
                    _ => unreachable!(),
                }
            }
            other => return Err(err(line, format!("unknown line tag `{other}`"))),
        }
    }
    let mut doc = doc.ok_or(ParseError::MissingHeader)?;
    for (line, id, w) in weight_lines {
        let _ = line;
        doc.weights[id as usize] = w;
    }
    if doc.edges.len() != declared_m {
        return Err(err(
            0,
            format!(
                "header declares {declared_m} edges but {} were given",
                doc.edges.len()
            ),
        ));
    }
    doc.edges.sort_unstable();
    doc.edges.dedup();
    if doc.edges.len() != declared_m {
        return Err(err(0, "duplicate edges"));
    }
    for list in [
        &mut doc.terminals,
        &mut doc.includes,
        &mut doc.excludes,
        &mut doc.boundary,
    ] {
        list.sort_unstable();
        list.dedup();
    }
    Ok(doc)
}

/// Canonical text form; `parse_instance(serialize_instance(d)) == d` and a
/// second serialization is byte-identical.
pub fn serialize_instance(doc: &InstanceDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p secluded {} {} {} {} {} {}\n",
        doc.n(),
        doc.edges.len(),
        doc.kind.label(),
        doc.property.label(),
        doc.k,
        doc.w
    ));
    for (v, w) in doc.weights.iter().enumerate() {
        out.push_str(&format!("v {v} {w}\n"));
    }
    for &(u, v) in &doc.edges {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for &t in &doc.terminals {
        out.push_str(&format!("t {t}\n"));
    }
    for &i in &doc.includes {
        out.push_str(&format!("i {i}\n"));
    }
    for &o in &doc.excludes {
        out.push_str(&format!("o {o}\n"));
    }
    for &b in &doc.boundary {
        out.push_str(&format!("b {b}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// Family and solution files
// ---------------------------------------------------------------------------

/// Family files hold a list of directed graphs:
///
/// ```text
/// p family <count>
/// g <n> <m>
/// e <u> <v>
/// ```
pub fn parse_family(text: &str) -> Result<ForbiddenFamily, ParseError> {
    let mut count: Option<usize> = None;
    let mut members: Vec<Digraph> = Vec::new();
    let mut current: Option<(Digraph, usize, usize)> = None; // graph, expected, given
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if fields.len() != 3 || fields[1] != "family" {
                    return Err(err(line, "expected `p family <count>`"));
                }
                count = Some(fields[2].parse().map_err(|_| err(line, "bad count"))?);
            }
            "g" => {
                if fields.len() != 3 {
                    return Err(err(line, "expected `g <n> <m>`"));
                }
                if let Some((g, expected, given)) = current.take() {
                    if given != expected {
                        return Err(err(line, "previous member has a wrong edge count"));
                    }
                    members.push(g);
                }
                let n: u32 = fields[1].parse().map_err(|_| err(line, "bad n"))?;
                let m: usize = fields[2].parse().map_err(|_| err(line, "bad m"))?;
                current = Some((Digraph::with_unit_vertices(n), m, 0));
            }
            "e" => {
                let (g, _, given) = current
                    .as_mut()
                    .ok_or_else(|| err(line, "edge before any `g` line"))?;
                if fields.len() != 3 {
                    return Err(err(line, "expected `e <u> <v>`"));
                }
                let u: VertexId = fields[1].parse().map_err(|_| err(line, "bad id"))?;
                let v: VertexId = fields[2].parse().map_err(|_| err(line, "bad id"))?;
                g.add_edge(u, v)
                    .map_err(|e| err(line, e.to_string()))?;
                *given += 1;
            }
            other => return Err(err(line, format!("unknown line tag `{other}`"))),
        }
    }
    if let Some((g, expected, given)) = current.take() {
        if given != expected {
            return Err(err(0, "last member has a wrong edge count"));
        }
        members.push(g);
    }
    if count != Some(members.len()) {
        return Err(err(0, "member count does not match the header"));
    }
    ForbiddenFamily::new(members).map_err(|e| err(0, e.to_string()))
}

pub fn serialize_family(fam: &ForbiddenFamily) -> String {
    let mut out = format!("p family {}\n", fam.members().len());
    for g in fam.members() {
        let (doc, _) = InstanceDoc::from_graph(
            g,
            NeighborhoodKind::Total,
            PropertySpec::StronglyConnected,
            0,
            0,
        );
        out.push_str(&format!("g {} {}\n", doc.n(), doc.edges.len()));
        for (u, v) in doc.edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
    }
    out
}

/// Solution files are `s <id>` lines.
pub fn parse_solution(text: &str) -> Result<VertexSet, ParseError> {
    let mut set = VertexSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_ascii_whitespace().collect();
        if fields.len() != 2 || fields[0] != "s" {
            return Err(err(line, "expected `s <id>`"));
        }
        set.insert(fields[1].parse().map_err(|_| err(line, "bad id"))?);
    }
    Ok(set)
}

pub fn serialize_solution(set: &VertexSet) -> String {
    let mut out = String::new();
    for v in set {
        out.push_str(&format!("s {v}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Directed G(n, p): every ordered pair independently with probability `p`.
pub fn gnp(n: u32, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::with_unit_vertices(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Uniformly random tournament: one arc per unordered pair.
pub fn random_tournament(n: u32, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::with_unit_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v).unwrap();
            } else {
                g.add_edge(v, u).unwrap();
            }
        }
    }
    g
}

/// Symmetric background noise plus a planted bidirected clique, packaged as
/// a secluded-clique instance with the planted size as the weight target.
pub fn planted_clique_instance(
    n: u32,
    clique_size: u32,
    k: usize,
    seed: u64,
) -> SecludedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::with_unit_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.18) {
                g.add_edge(u, v).unwrap();
                g.add_edge(v, u).unwrap();
            }
        }
    }
    let mut members: Vec<u32> = (0..n).collect();
    for i in (1..members.len()).rev() {
        let j = rng.gen_range(0..=i);
        members.swap(i, j);
    }
    let planted: Vec<u32> = members
        .into_iter()
        .take(clique_size.min(n) as usize)
        .collect();
    for (i, &u) in planted.iter().enumerate() {
        for &v in planted.iter().skip(i + 1) {
            let _ = g.add_edge(u, v);
            let _ = g.add_edge(v, u);
        }
    }
    SecludedInstance::new(
        g,
        NeighborhoodKind::Total,
        Property::Clique,
        k,
        clique_size as u64,
    )
}

/// Two bidirected cliques of `block` vertices sharing one cut vertex: the
/// canonical shape with a small balanced separator, so the recursive
/// driver's separation branch fires. Needs `block > q + 1`.
pub fn chained_cliques(block: u32, q: usize) -> Result<Digraph, GraphError> {
    if (block as usize) < q + 2 {
        return Err(GraphError::InvalidArgument(format!(
            "block size {block} is too small for q = {q}"
        )));
    }
    let n = 2 * block - 1;
    let mut g = Digraph::with_unit_vertices(n);
    let link = |g: &mut Digraph, lo: u32, hi: u32| {
        for u in lo..hi {
            for v in lo..hi {
                if u != v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
    };
    link(&mut g, 0, block);
    link(&mut g, block - 1, n);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::vset;

    #[test]
    fn minimal_file_round_trips() {
        let text = "p secluded 1 0 total scc 0 1\nv 0 1\n";
        let doc = parse_instance(text).unwrap();
        assert_eq!(doc.n(), 1);
        assert!(!doc.is_boundaried());
        assert_eq!(serialize_instance(&doc), text);
        let inst = doc.to_secluded(None).unwrap();
        assert_eq!(inst.k, 0);
        assert_eq!(inst.w, 1);
    }

    #[test]
    fn default_weights_are_one() {
        let text = "p secluded 3 1 out alpha:2 1 0\ne 0 1\n";
        let doc = parse_instance(text).unwrap();
        assert_eq!(doc.weights, vec![1, 1, 1]);
        // canonical form spells the weights out
        let canon = serialize_instance(&doc);
        assert!(canon.contains("v 2 1\n"));
        assert_eq!(parse_instance(&canon).unwrap(), doc);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "p secluded 2 1 total scc 0 0\ne 0 5\n";
        match parse_instance(bad) {
            Err(ParseError::Line { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected line error, got {other:?}"),
        }
        assert!(parse_instance("e 0 1\n").is_err());
        assert!(parse_instance("p secluded 2 0 sideways scc 0 0\n").is_err());
    }

    #[test]
    fn boundaried_files_round_trip_through_instances() {
        let text = "p secluded 4 2 total scc 2 0\nv 0 1\nv 1 5\nv 2 1\nv 3 1\ne 0 1\ne 1 0\nt 0\ni 1\nb 0\nb 1\n";
        let doc = parse_instance(text).unwrap();
        assert!(doc.is_boundaried());
        let inst = doc.to_boundaried().unwrap();
        assert_eq!(inst.terminals, vset([0]));
        assert_eq!(inst.include, vset([1]));
        let (doc2, _) = InstanceDoc::from_boundaried(&inst);
        assert_eq!(serialize_instance(&doc2), text);
    }

    #[test]
    fn generator_output_round_trips_bytewise() {
        for seed in 0..10 {
            let g = gnp(7, 0.3, seed);
            let (doc, _) = InstanceDoc::from_graph(
                &g,
                NeighborhoodKind::Total,
                PropertySpec::StronglyConnected,
                2,
                1,
            );
            let text = serialize_instance(&doc);
            let reparsed = parse_instance(&text).unwrap();
            assert_eq!(reparsed, doc);
            assert_eq!(serialize_instance(&reparsed), text);
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        assert_eq!(gnp(8, 0.4, 7), gnp(8, 0.4, 7));
        assert_ne!(gnp(8, 0.4, 7), gnp(8, 0.4, 8));
        let t = random_tournament(9, 3);
        assert_eq!(t, random_tournament(9, 3));
        assert!(t.is_tournament());
    }

    #[test]
    fn planted_clique_instances_contain_their_clique() {
        let inst = planted_clique_instance(12, 4, 3, 5);
        assert!(inst.graph.is_symmetric());
        let sol = crate::branching::solve_secluded_clique(&inst.graph, 0, 6)
            .unwrap()
            .0
            .unwrap();
        assert!(sol.weight >= 4);
    }

    #[test]
    fn chained_cliques_have_a_cut_vertex() {
        let g = chained_cliques(5, 3).unwrap();
        assert_eq!(g.vertex_count(), 9);
        let mut without = g.clone();
        without.remove_vertex(4).unwrap();
        assert_eq!(without.weak_components().len(), 2);
        assert!(chained_cliques(3, 3).is_err());
    }

    #[test]
    fn family_files_round_trip() {
        let fam = ForbiddenFamily::new(vec![
            Digraph::directed_cycle(3),
            Digraph::directed_cycle(2),
        ])
        .unwrap();
        let text = serialize_family(&fam);
        let reparsed = parse_family(&text).unwrap();
        assert_eq!(serialize_family(&reparsed), text);
        assert_eq!(reparsed.members().len(), 2);
    }

    #[test]
    fn solution_files_round_trip() {
        let set = vset([0, 3, 7]);
        let text = serialize_solution(&set);
        assert_eq!(parse_solution(&text).unwrap(), set);
        assert!(parse_solution("x 1\n").is_err());
    }

    #[test]
    fn gadget_output_reparses_to_an_isomorphic_instance() {
        let mut clique_input = crate::gadgets::UndirectedGraph::with_vertices(3);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            clique_input.add_edge(a, b).unwrap();
        }
        let gadget = crate::gadgets::reduce_clique_to_tsscs(&clique_input, 3).unwrap();
        let (doc, renumber) = InstanceDoc::from_graph(
            &gadget.instance.graph,
            gadget.instance.kind,
            PropertySpec::StronglyConnected,
            gadget.instance.k,
            gadget.instance.w,
        );
        let reparsed = parse_instance(&serialize_instance(&doc)).unwrap();
        let g2 = reparsed.graph().unwrap();
        assert_eq!(g2.vertex_count(), gadget.instance.graph.vertex_count());
        assert_eq!(g2.edge_count(), gadget.instance.graph.edge_count());
        // renumbering is a graph isomorphism
        for (u, v) in gadget.instance.graph.edges() {
            assert!(g2.has_edge(renumber[&u], renumber[&v]));
        }
    }
}
