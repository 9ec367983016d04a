//! `(Z/2)^k`-labeled multigraphs of actions and their labeling polynomials.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::gf2::{Gf2Vector, Subspace};
use crate::rep::{IrrRep, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: IrrRep,
}

/// An undirected multigraph on vertices `0..vertex_count` with functional
/// labels on the edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    rank: usize,
    valence: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphViolation {
    Loop {
        edge: usize,
    },
    TrivialLabel {
        edge: usize,
    },
    LabelWidth {
        edge: usize,
    },
    Valence {
        vertex: usize,
        found: usize,
        expected: usize,
    },
    /// Property (1): the labels at a vertex do not span the dual space.
    NotSpanning {
        vertex: usize,
    },
    /// Property (2): endpoint label multisets disagree mod the edge label.
    Congruence {
        edge: usize,
    },
    /// Property (3): two monochromatic components of equal valence > 1
    /// carry congruent label multisets.
    ComponentClash {
        label: IrrRep,
        x: usize,
        y: usize,
    },
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::Loop { edge } => write!(f, "edge {edge} is a loop"),
            GraphViolation::TrivialLabel { edge } => write!(f, "edge {edge} has the trivial label"),
            GraphViolation::LabelWidth { edge } => {
                write!(f, "edge {edge} label has the wrong width")
            }
            GraphViolation::Valence {
                vertex,
                found,
                expected,
            } => write!(
                f,
                "vertex {vertex} has valence {found}, expected {expected}"
            ),
            GraphViolation::NotSpanning { vertex } => {
                write!(f, "labels at vertex {vertex} do not span")
            }
            GraphViolation::Congruence { edge } => {
                write!(
                    f,
                    "endpoints of edge {edge} are not congruent mod its label"
                )
            }
            GraphViolation::ComponentClash { label, x, y } => write!(
                f,
                "{label}-components through vertices {x} and {y} are congruent mod {label}"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphReport {
    pub violations: Vec<GraphViolation>,
}

impl GraphReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `γ mod ρ`: the smaller of `γ` and `γ + ρ`.
fn reduce_mod(gamma: &IrrRep, rho: &IrrRep) -> Gf2Vector {
    let other = gamma.vector().xor(rho.vector());
    other.min(gamma.vector().clone())
}

impl LabeledGraph {
    /// Builds a graph; structural checks are left to [`validate_graph`].
    pub fn new(rank: usize, valence: usize, vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if let Some(e) = edges
            .iter()
            .find(|e| e.u >= vertex_count || e.v >= vertex_count)
        {
            return Err(Error::Shape(format!(
                "edge {}-{} refers to a vertex outside 0..{vertex_count}",
                e.u, e.v
            )));
        }
        Ok(LabeledGraph {
            rank,
            valence,
            vertex_count,
            edges,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Indices of edges incident to `x` (a loop would appear twice).
    pub fn incident(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == x {
                out.push(i);
            }
            if e.v == x {
                out.push(i);
            }
        }
        out
    }

    /// The multiset `α(E_x)`, sorted.
    pub fn labels_at(&self, x: usize) -> Vec<IrrRep> {
        let mut ls: Vec<IrrRep> = self
            .incident(x)
            .into_iter()
            .map(|i| self.edges[i].label.clone())
            .collect();
        ls.sort();
        ls
    }

    /// `α(E_x)` with one copy of edge `skip` removed, reduced mod `rho`.
    fn reduced_labels(&self, x: usize, skip: Option<usize>, rho: &IrrRep) -> Vec<Gf2Vector> {
        let mut skipped = false;
        let mut out: Vec<Gf2Vector> = self
            .incident(x)
            .into_iter()
            .filter(|&i| {
                if Some(i) == skip && !skipped {
                    skipped = true;
                    false
                } else {
                    true
                }
            })
            .map(|i| reduce_mod(&self.edges[i].label, rho))
            .collect();
        out.sort();
        out
    }

    /// Connected components of the subgraph of edges labeled `rho`, as
    /// sorted vertex lists (isolated vertices omitted).
    fn monochromatic_components(&self, rho: &IrrRep) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let mut touched = BTreeSet::new();
        for e in self.edges.iter().filter(|e| &e.label == rho) {
            touched.insert(e.u);
            touched.insert(e.v);
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            parent[a] = b;
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in touched {
            let r = find(&mut parent, x);
            comps.entry(r).or_default().push(x);
        }
        comps.into_values().collect()
    }

    /// Canonical text form: header `k n`, then `u v label` per edge sorted.
    pub fn export(&self) -> String {
        let mut lines: Vec<(usize, usize, Gf2Vector)> = self
            .edges
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v), e.label.vector().clone()))
            .collect();
        lines.sort();
        let mut out = format!("{} {}\n", self.rank, self.valence);
        for (u, v, l) in lines {
            out.push_str(&format!("{u} {v} {l}\n"));
        }
        out
    }

    /// Parses the graph file format. Vertices are the integers appearing in
    /// edge lines; the vertex count is one more than the largest.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = None;
        let mut edges = Vec::new();
        let mut max_vertex = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    let [k, n] = fields[..] else {
                        return Err(parse_err(line_no, "header must be `k n`"));
                    };
                    let k: usize = k.parse().map_err(|_| parse_err(line_no, "bad rank"))?;
                    let n: usize = n.parse().map_err(|_| parse_err(line_no, "bad valence"))?;
                    header = Some((k, n));
                }
                Some((k, _)) => {
                    let [u, v, label] = fields[..] else {
                        return Err(parse_err(line_no, "edge line must be `u v bitstring`"));
                    };
                    let u: usize = u.parse().map_err(|_| parse_err(line_no, "bad vertex"))?;
                    let v: usize = v.parse().map_err(|_| parse_err(line_no, "bad vertex"))?;
                    let label: Gf2Vector = label.parse().map_err(|e| parse_err(line_no, e))?;
                    if label.len() != k {
                        return Err(parse_err(
                            line_no,
                            format!("label width {} does not match rank {k}", label.len()),
                        ));
                    }
                    max_vertex = max_vertex.max(Some(u.max(v)));
                    edges.push(Edge {
                        u,
                        v,
                        label: IrrRep::new(label),
                    });
                }
            }
        }
        let (k, n) = header.ok_or_else(|| parse_err(1, "missing header"))?;
        LabeledGraph::new(k, n, max_vertex.map_or(0, |m| m + 1), edges)
    }
}

pub fn validate_graph(g: &LabeledGraph) -> GraphReport {
    let mut violations = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if e.u == e.v {
            violations.push(GraphViolation::Loop { edge: i });
        }
        if e.label.rank() != g.rank {
            violations.push(GraphViolation::LabelWidth { edge: i });
        } else if e.label.is_trivial() {
            violations.push(GraphViolation::TrivialLabel { edge: i });
        }
    }
    if !violations.is_empty() {
        return GraphReport { violations };
    }
    for x in 0..g.vertex_count {
        let labels = g.labels_at(x);
        if labels.len() != g.valence {
            violations.push(GraphViolation::Valence {
                vertex: x,
                found: labels.len(),
                expected: g.valence,
            });
        }
        let vecs: Vec<Gf2Vector> = labels.iter().map(|l| l.vector().clone()).collect();
        let span = Subspace::from_spanning(g.rank, &vecs).expect("widths checked");
        if span.dim() != g.rank {
            violations.push(GraphViolation::NotSpanning { vertex: x });
        }
    }
    for (i, e) in g.edges.iter().enumerate() {
        if g.reduced_labels(e.u, Some(i), &e.label) != g.reduced_labels(e.v, Some(i), &e.label) {
            violations.push(GraphViolation::Congruence { edge: i });
        }
    }
    let labels: BTreeSet<IrrRep> = g.edges.iter().map(|e| e.label.clone()).collect();
    for rho in &labels {
        let comps = g.monochromatic_components(rho);
        let valence_of = |x: usize| g.labels_at(x).iter().filter(|l| *l == rho).count();
        for (a, ca) in comps.iter().enumerate() {
            for cb in &comps[a + 1..] {
                let (x, y) = (ca[0], cb[0]);
                let (va, vb) = (valence_of(x), valence_of(y));
                if va != vb || va <= 1 {
                    continue;
                }
                if g.reduced_labels(x, None, rho) == g.reduced_labels(y, None, rho) {
                    violations.push(GraphViolation::ComponentClash {
                        label: rho.clone(),
                        x,
                        y,
                    });
                }
            }
        }
    }
    GraphReport { violations }
}

/// `sum_x prod_{e in E_x} α(e)` mod 2. The graph must be regular.
pub fn labeling_polynomial(g: &LabeledGraph) -> Result<Polynomial> {
    let mut p = Polynomial::zero(g.rank, g.valence);
    for x in 0..g.vertex_count {
        let labels = g.labels_at(x);
        if labels.len() != g.valence {
            return Err(Error::Irregular(format!(
                "vertex {x} has valence {}, expected {}",
                labels.len(),
                g.valence
            )));
        }
        p.toggle(Monomial::new(g.rank, labels)?)?;
    }
    Ok(p)
}

/// The 1-skeleton of the `n`-simplex with edge `{x_i, x_j}` labeled
/// `ρ_i + ρ_j` (and `ρ_0 = 0`): the graph of the standard action on `RP^n`.
pub fn projective_space_graph(n: usize) -> Result<LabeledGraph> {
    if n == 0 {
        return Err(Error::Shape("projective space graph needs n >= 1".into()));
    }
    let rho = |i: usize| {
        if i == 0 {
            Gf2Vector::zero(n)
        } else {
            Gf2Vector::unit(n, i - 1)
        }
    };
    let mut edges = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            edges.push(Edge {
                u: i,
                v: j,
                label: IrrRep::new(rho(i).xor(&rho(j))),
            });
        }
    }
    LabeledGraph::new(n, n, n + 1, edges)
}
