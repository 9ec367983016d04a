//! `GL(k, 2)` orbits and stabilizers of polynomials, and GF(2) spans of
//! polynomial collections over the monomial basis.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::gf2::{enumerate_gl, Gf2Matrix, Gf2Vector, Subspace};
use crate::membership::{build_constraint_system, check_membership};
use crate::rep::{Monomial, Polynomial};

/// Largest rank for which [`orbit`] expands over the whole group.
pub const MAX_ORBIT_RANK: usize = 4;

#[derive(Debug, Clone)]
pub struct PolynomialOrbit {
    pub seed: Polynomial,
    /// Distinct images in order of first appearance over the `GL(k, 2)` enumeration.
    pub elements: Vec<Polynomial>,
    /// Every `a` with `f_a = f`, in enumeration order.
    pub stabilizer: Vec<Gf2Matrix>,
    members: HashSet<Polynomial>,
}

impl PolynomialOrbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.members.contains(p)
    }
}

pub fn orbit(p: &Polynomial, k: usize) -> Result<PolynomialOrbit> {
    if k > MAX_ORBIT_RANK {
        return Err(Error::ResourceLimit(format!(
            "orbit expansion supports rank at most {MAX_ORBIT_RANK}"
        )));
    }
    if !p.is_zero() && p.rank() != k {
        return Err(Error::Shape(format!(
            "polynomial has rank {}, expected {k}",
            p.rank()
        )));
    }
    orbit_under(p, &enumerate_gl(k)?)
}

/// Orbit under an explicit list of group elements (used to reuse one
/// `GL(k, 2)` enumeration across several seeds).
pub fn orbit_under(p: &Polynomial, group: &[Gf2Matrix]) -> Result<PolynomialOrbit> {
    let mut elements = Vec::new();
    let mut members = HashSet::new();
    let mut stabilizer = Vec::new();
    for a in group {
        let image = p.apply_automorphism(a)?;
        if image == *p {
            stabilizer.push(a.clone());
        }
        if members.insert(image.clone()) {
            elements.push(image);
        }
    }
    Ok(PolynomialOrbit {
        seed: p.clone(),
        elements,
        stabilizer,
        members,
    })
}

/// True iff the computed stabilizer of `p` equals `{a in GL(k,2) : predicted(a)}`.
pub fn stabilizer_matches(
    p: &Polynomial,
    k: usize,
    predicted: impl Fn(&Gf2Matrix) -> bool,
) -> Result<bool> {
    let o = orbit(p, k)?;
    let computed: BTreeSet<Gf2Matrix> = o.stabilizer.into_iter().collect();
    let expected: BTreeSet<Gf2Matrix> = enumerate_gl(k)?
        .into_iter()
        .filter(|a| predicted(a))
        .collect();
    Ok(computed == expected)
}

/// Incremental GF(2) echelon basis over a growing monomial index.
#[derive(Debug, Default, Clone)]
pub struct SpanBuilder {
    shape: Option<(usize, usize)>,
    index: HashMap<Monomial, usize>,
    /// Sparse rows: sorted column sets, keyed by their pivot (smallest column).
    pivots: HashMap<usize, BTreeSet<usize>>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&self) -> usize {
        self.pivots.len()
    }

    fn columns(&mut self, p: &Polynomial) -> Result<BTreeSet<usize>> {
        if !p.is_zero() {
            match self.shape {
                None => self.shape = Some((p.rank(), p.degree())),
                Some(s) if s != (p.rank(), p.degree()) => {
                    return Err(Error::Shape(format!(
                        "polynomial of rank {} degree {} mixed with rank {} degree {}",
                        p.rank(),
                        p.degree(),
                        s.0,
                        s.1
                    )))
                }
                _ => {}
            }
        }
        let mut cols = BTreeSet::new();
        for m in p {
            let len = self.index.len();
            let c = *self.index.entry(m.clone()).or_insert(len);
            cols.insert(c);
        }
        Ok(cols)
    }

    /// Adds `p`; returns true iff it was independent of everything before.
    pub fn insert(&mut self, p: &Polynomial) -> Result<bool> {
        let mut v = self.columns(p)?;
        while let Some(&lead) = v.iter().next() {
            match self.pivots.get(&lead) {
                Some(row) => {
                    v = v.symmetric_difference(row).copied().collect();
                }
                None => {
                    self.pivots.insert(lead, v);
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// GF(2) rank of the indicator matrix of `ps`.
pub fn span_dimension<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Result<usize> {
    let mut b = SpanBuilder::new();
    for p in ps {
        b.insert(p)?;
    }
    Ok(b.dimension())
}

/// Greedy maximal independent sublist, in input order.
pub fn extract_basis<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Result<Vec<Polynomial>> {
    let mut b = SpanBuilder::new();
    let mut out = Vec::new();
    for p in ps {
        if b.insert(p)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// True iff `generators` span exactly the degree-`n` image for rank `k`.
/// A generator outside the image is an error rather than `false`.
pub fn verify_generating_set(n: usize, k: usize, generators: &[Polynomial]) -> Result<bool> {
    for (index, g) in generators.iter().enumerate() {
        let cert = check_membership(g).map_err(|e| Error::Inconsistent {
            index,
            reason: e.to_string(),
        })?;
        if let Some(v) = cert.violation {
            return Err(Error::Inconsistent {
                index,
                reason: v.to_string(),
            });
        }
    }
    let sys = build_constraint_system(n, k)?;
    let vectors = generators
        .iter()
        .enumerate()
        .map(|(index, g)| {
            sys.indicator(g).ok_or_else(|| Error::Inconsistent {
                index,
                reason: format!("not a degree-{n} polynomial over rank {k}"),
            })
        })
        .collect::<Result<Vec<Gf2Vector>>>()?;
    if let Some(index) = vectors.iter().position(|v| !sys.satisfies(v)) {
        return Err(Error::Inconsistent {
            index,
            reason: "indicator violates the constraint system".into(),
        });
    }
    let spanned = Subspace::from_spanning(sys.monomials.len(), &vectors)?;
    Ok(spanned == sys.solution_space())
}
