//! Small covers over products of simplices: characteristic functions,
//! tangent data at the fixed points, and restriction to subgroups.

use std::fmt;

use itertools::Itertools;

use crate::error::{parse_err, Error, Result};
use crate::gf2::{enumerate_subspaces, Gf2Matrix, Gf2Vector, Subspace};
use crate::graph::{Edge, LabeledGraph};
use crate::rep::{check_basis, restrict_unchecked, IrrRep, Monomial, Polynomial};

/// `Δ^{n_1} × ... × Δ^{n_l}`. Facet `(j, i)` is `F_i` of factor `j`; facets
/// are indexed factor by factor in printed order. Vertex `(v_1, ..., v_l)`
/// is the one missing exactly the facets `(j, v_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductOfSimplices {
    factor_dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl ProductOfSimplices {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() || factor_dims.contains(&0) {
            return Err(Error::Shape(
                "a product of simplices needs at least one factor, all of positive dimension"
                    .into(),
            ));
        }
        let offsets = factor_dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d + 1;
                Some(o)
            })
            .collect();
        Ok(ProductOfSimplices {
            factor_dims,
            offsets,
        })
    }

    /// Parses `"1x4"` style names.
    pub fn from_name(name: &str) -> Result<Self> {
        let dims = name
            .split(['x', 'X'])
            .map(|d| {
                d.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Shape(format!("bad polytope name {name:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims)
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn name(&self) -> String {
        self.factor_dims.iter().join("x")
    }

    pub fn dimension(&self) -> usize {
        self.factor_dims.iter().sum()
    }

    pub fn facet_count(&self) -> usize {
        self.factor_dims.iter().map(|d| d + 1).sum()
    }

    pub fn facet_index(&self, factor: usize, i: usize) -> usize {
        self.offsets[factor] + i
    }

    /// All vertices in lexicographic tuple order.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.factor_dims
            .iter()
            .map(|&d| 0..=d)
            .multi_cartesian_product()
            .collect()
    }

    /// Facet indices containing `v`, ascending.
    pub fn vertex_facets(&self, v: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dimension());
        for (j, &d) in self.factor_dims.iter().enumerate() {
            for i in (0..=d).filter(|&i| i != v[j]) {
                out.push(self.facet_index(j, i));
            }
        }
        out
    }

    /// Edges as `(a, b, factor)`: vertex indices `a < b` differing only in
    /// coordinate `factor`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let vs = self.vertices();
        let mut out = Vec::new();
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let diff: Vec<usize> = (0..self.factor_dims.len())
                    .filter(|&j| vs[a][j] != vs[b][j])
                    .collect();
                if let [j] = diff[..] {
                    out.push((a, b, j));
                }
            }
        }
        out
    }

    /// The `n - 1` facets containing the edge between `u` and `w`.
    pub fn edge_facets(&self, u: &[usize], w: &[usize]) -> Vec<usize> {
        let fw = self.vertex_facets(w);
        self.vertex_facets(u)
            .into_iter()
            .filter(|f| fw.contains(f))
            .collect()
    }
}

pub fn format_vertex(v: &[usize]) -> String {
    format!("({})", v.iter().join(","))
}

/// A labeling of the facets by nonzero vectors of `(Z/2)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicFunction {
    polytope: ProductOfSimplices,
    labels: Vec<Gf2Vector>,
}

impl CharacteristicFunction {
    pub fn new(polytope: ProductOfSimplices, labels: Vec<Gf2Vector>) -> Result<Self> {
        let n = polytope.dimension();
        if labels.len() != polytope.facet_count() {
            return Err(Error::Shape(format!(
                "{} labels for {} facets",
                labels.len(),
                polytope.facet_count()
            )));
        }
        if let Some(i) = labels.iter().position(|l| l.len() != n) {
            return Err(Error::Shape(format!("label {i} does not have width {n}")));
        }
        if let Some(i) = labels.iter().position(Gf2Vector::is_zero) {
            return Err(Error::InvalidCharacteristic(format!(
                "facet {i} has the zero label"
            )));
        }
        Ok(CharacteristicFunction { polytope, labels })
    }

    /// Columns of `matrix` are the facet labels in printed order.
    pub fn from_matrix(polytope: ProductOfSimplices, matrix: &Gf2Matrix) -> Result<Self> {
        if matrix.n_rows() != polytope.dimension() {
            return Err(Error::Shape(format!(
                "matrix has {} rows, polytope has dimension {}",
                matrix.n_rows(),
                polytope.dimension()
            )));
        }
        let labels = (0..matrix.n_cols()).map(|j| matrix.column(j)).collect();
        Self::new(polytope, labels)
    }

    pub fn polytope(&self) -> &ProductOfSimplices {
        &self.polytope
    }

    pub fn labels(&self) -> &[Gf2Vector] {
        &self.labels
    }

    pub fn matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_rows(self.polytope.dimension(), self.labels.clone())
            .expect("labels share a width")
            .transpose()
    }

    /// The characteristic matrix file: header `n_1 ... n_l`, then `n` rows
    /// of space-separated bits.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let dims = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| parse_err(header_line, "header must list the simplex dimensions"))?;
        let polytope =
            ProductOfSimplices::new(dims).map_err(|e| parse_err(header_line, e.to_string()))?;
        let width = polytope.facet_count();
        let mut rows = Vec::new();
        for (line_no, line) in lines {
            let bits = line
                .split_whitespace()
                .map(|t| match t {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    _ => Err(parse_err(line_no, format!("expected 0 or 1, found {t:?}"))),
                })
                .collect::<Result<Vec<bool>>>()?;
            if bits.len() != width {
                return Err(parse_err(
                    line_no,
                    format!("row has {} entries, expected {width}", bits.len()),
                ));
            }
            if rows.len() == polytope.dimension() {
                return Err(parse_err(line_no, "too many rows"));
            }
            rows.push(Gf2Vector::from_bits(&bits));
        }
        if rows.len() != polytope.dimension() {
            return Err(parse_err(
                header_line,
                format!(
                    "expected {} rows, found {}",
                    polytope.dimension(),
                    rows.len()
                ),
            ));
        }
        let m = Gf2Matrix::from_rows(width, rows)?;
        Self::from_matrix(polytope, &m).map_err(|e| parse_err(header_line, e.to_string()))
    }

    pub fn export(&self) -> String {
        let m = self.matrix();
        let mut out = self.polytope.factor_dims.iter().join(" ");
        out.push('\n');
        for row in m.rows() {
            out.push_str(
                &(0..row.len())
                    .map(|i| if row.get(i) { "1" } else { "0" })
                    .join(" "),
            );
            out.push('\n');
        }
        out
    }

    /// Columns: labels of the facets at `v`, ascending facet order.
    fn vertex_matrix(&self, v: &[usize]) -> Gf2Matrix {
        let cols: Vec<Gf2Vector> = self
            .polytope
            .vertex_facets(v)
            .into_iter()
            .map(|f| self.labels[f].clone())
            .collect();
        Gf2Matrix::from_rows(self.polytope.dimension(), cols)
            .expect("labels share a width")
            .transpose()
    }

    /// Per incident facet `F_i` (ascending), the label of the edge at `v`
    /// leaving `F_i`: row `i` of the inverse vertex matrix.
    fn edge_labels(&self, v: &[usize]) -> Result<Vec<(usize, IrrRep)>> {
        let inv = self.vertex_matrix(v).inverse().ok_or_else(|| {
            Error::InvalidCharacteristic(format!(
                "labels at vertex {} are not a basis",
                format_vertex(v)
            ))
        })?;
        Ok(self
            .polytope
            .vertex_facets(v)
            .into_iter()
            .zip(inv.rows().iter().cloned().map(IrrRep::new))
            .collect())
    }
}

pub fn validate_characteristic(cf: &CharacteristicFunction) -> bool {
    cf.polytope
        .vertices()
        .iter()
        .all(|v| cf.vertex_matrix(v).is_invertible())
}

/// Tangent representation at each vertex, in vertex order.
pub fn tangent_reps(cf: &CharacteristicFunction) -> Result<Vec<(Vec<usize>, Monomial)>> {
    let n = cf.polytope.dimension();
    cf.polytope
        .vertices()
        .into_iter()
        .map(|v| {
            let factors = cf.edge_labels(&v)?.into_iter().map(|(_, l)| l).collect();
            Ok((v, Monomial::new(n, factors)?))
        })
        .collect()
}

pub fn fixed_polynomial(cf: &CharacteristicFunction) -> Result<Polynomial> {
    let n = cf.polytope.dimension();
    Polynomial::from_monomials(n, n, tangent_reps(cf)?.into_iter().map(|(_, m)| m))
}

/// The labeled one-skeleton; vertices numbered in [`ProductOfSimplices::vertices`] order.
pub fn one_skeleton(cf: &CharacteristicFunction) -> Result<LabeledGraph> {
    let p = &cf.polytope;
    let vs = p.vertices();
    let mut edges = Vec::new();
    for (a, b, j) in p.edges() {
        let leaving = p.facet_index(j, vs[b][j]);
        let label = cf
            .edge_labels(&vs[a])?
            .into_iter()
            .find(|(f, _)| *f == leaving)
            .map(|(_, l)| l)
            .expect("edge leaves a facet at its endpoint");
        edges.push(Edge { u: a, v: b, label });
    }
    LabeledGraph::new(p.dimension(), p.dimension(), vs.len(), edges)
}

/// Whether `h` avoids every edge span, i.e. `M^H = M^{(Z/2)^n}`.
pub fn is_admissible(cf: &CharacteristicFunction, h: &Subspace) -> bool {
    let p = &cf.polytope;
    let vs = p.vertices();
    p.edges().into_iter().all(|(a, b, _)| {
        let labels: Vec<Gf2Vector> = p
            .edge_facets(&vs[a], &vs[b])
            .into_iter()
            .map(|f| cf.labels[f].clone())
            .collect();
        let w = Subspace::from_spanning(p.dimension(), &labels).expect("labels share a width");
        !h.is_subspace_of(&w)
    })
}

/// All rank-`r` subgroups fixing exactly the vertices.
pub fn admissible_subgroups(cf: &CharacteristicFunction, r: usize) -> Result<Vec<Subspace>> {
    Ok(enumerate_subspaces(cf.polytope.dimension(), r)?
        .into_iter()
        .filter(|h| is_admissible(cf, h))
        .collect())
}

/// Fixed-point data of the subgroup action of `h`, in the coordinates of
/// `h_basis`.
pub fn restricted_polynomial(
    cf: &CharacteristicFunction,
    h: &Subspace,
    h_basis: &[Gf2Vector],
) -> Result<Polynomial> {
    let n = cf.polytope.dimension();
    if h.ambient_rank() != n {
        return Err(Error::Shape(format!(
            "subgroup lives in rank {}, polytope has dimension {n}",
            h.ambient_rank()
        )));
    }
    check_basis(h, h_basis)?;
    let r = h_basis.len();
    let mut p = Polynomial::zero(r, n);
    for (v, m) in tangent_reps(cf)? {
        if let Some(f) = m
            .factors()
            .iter()
            .find(|f| h_basis.iter().all(|b| !f.eval(b)))
        {
            return Err(Error::NonIsolated {
                vertex: format_vertex(&v),
                factor: format!("ρ{}", f.index_label()),
            });
        }
        let restricted = restrict_unchecked(&m, h_basis);
        p.toggle(restricted)?;
    }
    Ok(p)
}

/// Subgroup file: one bit-string per line, an ordered basis.
pub fn parse_subgroup(text: &str, ambient: usize) -> Result<(Subspace, Vec<Gf2Vector>)> {
    let mut basis = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: Gf2Vector = line.parse().map_err(|e| parse_err(idx + 1, e))?;
        if v.len() != ambient {
            return Err(parse_err(
                idx + 1,
                format!("vector width {} does not match rank {ambient}", v.len()),
            ));
        }
        basis.push(v);
    }
    let h = Subspace::from_spanning(ambient, &basis)?;
    if h.dim() != basis.len() {
        return Err(Error::InvalidBasis(
            "subgroup vectors are linearly dependent".into(),
        ));
    }
    Ok((h, basis))
}

impl fmt::Display for ProductOfSimplices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factor_dims.iter().map(|d| format!("Δ^{d}")).collect();
        f.write_str(&parts.join("×"))
    }
}
