//! Nonvanishing certificates: the graph `Γ_K` on fully solid and fully open
//! occurrences of the perturbed diagram, and complete matchings in it.

mod bipartite;
mod labels;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use bipartite::{complete_matching, Bipartite, MatchingWitness};
pub use labels::{perturb_labels, EndLabel, LabeledOccurrence};

use crate::combinatorics::{conjugate, Arc, ArcMultiset, NodeSet, QSetPartition};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphVertex {
    pub occurrence: usize,
    #[serde(serialize_with = "labels::arc_string")]
    pub arc: Arc,
}

impl fmt::Display for GraphVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.arc, self.occurrence)
    }
}

/// `Γ_K(λ)`: solid vertices, open vertices, and edges from each solid
/// occurrence to the open occurrences strictly enclosing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingGraph {
    pub solid: Vec<GraphVertex>,
    pub open: Vec<GraphVertex>,
    pub graph: Bipartite,
}

impl MatchingGraph {
    pub fn edges(&self) -> impl Iterator<Item = (GraphVertex, GraphVertex)> + '_ {
        self.graph
            .adjacency
            .iter()
            .enumerate()
            .flat_map(move |(s, adj)| adj.iter().map(move |&o| (self.solid[s], self.open[o])))
    }

    pub fn edge_count(&self) -> usize {
        self.graph.adjacency.iter().map(Vec::len).sum()
    }

    pub fn complete_matching(&self) -> MatchingWitness {
        complete_matching(&self.graph)
    }

    /// Human-readable witness: `covered: s->o, ...` or `violator: {..} N={..}`.
    pub fn describe_witness(&self, w: &MatchingWitness) -> String {
        match w {
            MatchingWitness::Covering(assignment) => {
                let pairs: Vec<String> = assignment
                    .iter()
                    .enumerate()
                    .map(|(s, &o)| format!("{}->{}", self.solid[s], self.open[o]))
                    .collect();
                format!("covering: {}", pairs.join(" "))
            }
            MatchingWitness::HallViolator(set) => {
                let s: Vec<String> = set.iter().map(|&s| self.solid[s].to_string()).collect();
                let n: Vec<String> = self
                    .graph
                    .neighbourhood(set)
                    .iter()
                    .map(|&o| self.open[o].to_string())
                    .collect();
                format!("hall-violator: S={{{}}} N(S)={{{}}}", s.join(" "), n.join(" "))
            }
        }
    }
}

/// Three lines: `solid: ...`, `open: ...`, `edges: s--o ...`.
impl fmt::Display for MatchingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[GraphVertex]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "solid: {}", join(&self.solid))?;
        writeln!(f, "open: {}", join(&self.open))?;
        let edges: Vec<String> = self.edges().map(|(s, o)| format!("{s}--{o}")).collect();
        write!(f, "edges: {}", edges.join(" "))
    }
}

fn parse_vertex(text: &str) -> Result<GraphVertex> {
    let (arc, occ) = text
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("vertex {text:?} lacks an occurrence index")))?;
    Ok(GraphVertex {
        arc: arc.parse()?,
        occurrence: occ
            .parse()
            .map_err(|_| Error::Parse(format!("bad occurrence index in {text:?}")))?,
    })
}

fn parse_line<'a>(line: Option<&'a str>, key: &str) -> Result<Vec<&'a str>> {
    let line = line.ok_or_else(|| Error::Parse(format!("missing {key} line")))?;
    let rest = line
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::Parse(format!("expected {key:?} line, found {line:?}")))?;
    Ok(rest.split_whitespace().collect())
}

impl FromStr for MatchingGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let solid = parse_line(lines.next(), "solid")?
            .into_iter()
            .map(parse_vertex)
            .collect::<Result<Vec<_>>>()?;
        let open = parse_line(lines.next(), "open")?
            .into_iter()
            .map(parse_vertex)
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        for e in parse_line(lines.next(), "edges")? {
            let (s, o) = e
                .split_once("--")
                .ok_or_else(|| Error::Parse(format!("bad edge {e:?}")))?;
            let (s, o) = (parse_vertex(s)?, parse_vertex(o)?);
            let find = |side: &[GraphVertex], v: GraphVertex| {
                side.iter()
                    .position(|&w| w == v)
                    .ok_or_else(|| Error::Parse(format!("edge endpoint {v} is not a vertex")))
            };
            edges.push((find(&solid, s)?, find(&open, o)?));
        }
        let graph = Bipartite::new(solid.len(), open.len(), edges);
        Ok(MatchingGraph { solid, open, graph })
    }
}

pub fn gamma_graph(lambda: &ArcMultiset, k: &NodeSet) -> MatchingGraph {
    let labeled = perturb_labels(lambda, k);
    let vertex = |l: &LabeledOccurrence| GraphVertex {
        occurrence: l.occurrence,
        arc: l.arc,
    };
    let solid: Vec<GraphVertex> = labeled.iter().filter(|l| l.is_solid()).map(vertex).collect();
    let open: Vec<GraphVertex> = labeled.iter().filter(|l| l.is_open()).map(vertex).collect();
    let edges = solid.iter().enumerate().flat_map(|(s, inner)| {
        open.iter()
            .enumerate()
            .filter(move |(_, outer)| inner.arc.strictly_inside(&outer.arc))
            .map(move |(o, _)| (s, o))
    });
    let graph = Bipartite::new(solid.len(), open.len(), edges);
    MatchingGraph { solid, open, graph }
}

fn require_arcs_within(arcs: &[Arc], l: &NodeSet) -> Result<()> {
    match arcs.iter().flat_map(|a| [a.left, a.right]).find(|&n| !l.contains(n)) {
        Some(n) => Err(Error::NodeOutsideSupport(n)),
        None => Ok(()),
    }
}

/// Graph, witness, and verdict for the trivial coefficient of `Res^{U_L}_{U_K} χ^λ`.
pub fn trivial_certificate(
    lambda: &QSetPartition,
    k: &NodeSet,
    l: &NodeSet,
) -> Result<(MatchingGraph, MatchingWitness)> {
    k.require_subset_of(l)?;
    require_arcs_within(lambda.arcs(), l)?;
    let g = gamma_graph(lambda, k);
    let w = g.complete_matching();
    Ok((g, w))
}

pub fn trivial_coeff_nonzero(lambda: &QSetPartition, k: &NodeSet, l: &NodeSet) -> Result<bool> {
    Ok(trivial_certificate(lambda, k, l)?.1.is_covering())
}

/// Graph and witness for the coefficient of `χ^ν` in `χ^λ ⊗ χ^μ`.
pub fn tensor_certificate(
    lambda: &QSetPartition,
    mu: &QSetPartition,
    nu: &QSetPartition,
    k: &NodeSet,
) -> Result<(MatchingGraph, MatchingWitness)> {
    for x in [lambda, mu, nu] {
        if x.modulus() != lambda.modulus() {
            return Err(Error::ModulusMismatch(lambda.q(), x.q()));
        }
        require_arcs_within(x.arcs(), k)?;
    }
    let combined = lambda
        .as_multiset()
        .union(mu.as_multiset())?
        .union(&conjugate(nu))?
        .with_support(k.clone())?;
    let g = gamma_graph(&combined, k);
    let w = g.complete_matching();
    Ok((g, w))
}

pub fn tensor_coeff_nonzero(
    lambda: &QSetPartition,
    mu: &QSetPartition,
    nu: &QSetPartition,
    k: &NodeSet,
) -> Result<bool> {
    Ok(tensor_certificate(lambda, mu, nu, k)?.1.is_covering())
}

/// Graph and witness for the coefficient of `χ^μ` in `Res^{U_L}_{U_K} χ^λ`.
pub fn restriction_certificate(
    lambda: &QSetPartition,
    mu: &QSetPartition,
    k: &NodeSet,
    l: &NodeSet,
) -> Result<(MatchingGraph, MatchingWitness)> {
    k.require_subset_of(l)?;
    require_arcs_within(lambda.arcs(), l)?;
    require_arcs_within(mu.arcs(), k)?;
    let combined = lambda.as_multiset().union(&conjugate(mu))?.with_support(l.clone())?;
    let g = gamma_graph(&combined, k);
    let w = g.complete_matching();
    Ok((g, w))
}

pub fn restriction_coeff_nonzero(lambda: &QSetPartition, mu: &QSetPartition, k: &NodeSet, l: &NodeSet) -> Result<bool> {
    Ok(restriction_certificate(lambda, mu, k, l)?.1.is_covering())
}

/// Graph and witness for the coefficient of `χ^ν` in the expansion of the
/// multiset character `χ^λ` over `K`.
pub fn multiset_certificate(
    lambda: &ArcMultiset,
    nu: &QSetPartition,
    k: &NodeSet,
) -> Result<(MatchingGraph, MatchingWitness)> {
    require_arcs_within(lambda.arcs(), k)?;
    require_arcs_within(nu.arcs(), k)?;
    let combined = lambda.union(&conjugate(nu))?.with_support(k.clone())?;
    let g = gamma_graph(&combined, k);
    let w = g.complete_matching();
    Ok((g, w))
}

pub fn multiset_coeff_nonzero(lambda: &ArcMultiset, nu: &QSetPartition, k: &NodeSet) -> Result<bool> {
    Ok(multiset_certificate(lambda, nu, k)?.1.is_covering())
}
