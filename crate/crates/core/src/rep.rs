//! Irreducible representations, monomials and GF(2) polynomials in the
//! Conner–Floyd representation algebra of `(Z/2)^k`.
//!
//! An irreducible real representation of `(Z/2)^k` is a functional
//! `(Z/2)^k -> Z/2`, stored as a [`Gf2Vector`]. A fixed point's tangent
//! representation is a [`Monomial`] (a multiset of such functionals), and the
//! fixed-point data of a manifold is a [`Polynomial`] (a set of monomials,
//! coefficients in GF(2)).

use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, Subspace};

/// An irreducible representation of `(Z/2)^k`, identified with its functional.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrRep(Gf2Vector);

impl IrrRep {
    pub fn new(vector: Gf2Vector) -> Self {
        IrrRep(vector)
    }

    pub fn trivial(rank: usize) -> Self {
        IrrRep(Gf2Vector::zero(rank))
    }

    /// `ρ_{i1 i2 ... im} = ρ_{i1} + ... + ρ_{im}`, indices 1-based.
    pub fn from_indices(rank: usize, indices: &[usize]) -> Result<Self> {
        let mut v = Gf2Vector::zero(rank);
        for &i in indices {
            if i == 0 || i > rank {
                return Err(Error::Shape(format!("index {i} out of range 1..={rank}")));
            }
            v.set(i - 1, !v.get(i - 1));
        }
        Ok(IrrRep(v))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    pub fn vector(&self) -> &Gf2Vector {
        &self.0
    }

    /// Evaluates the functional on a group element.
    pub fn eval(&self, g: &Gf2Vector) -> bool {
        self.0.dot(g)
    }

    /// Index label in the `ρ_{12}` convention, e.g. `"12"`; `"0"` for the trivial rep.
    pub fn index_label(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        self.0
            .ones()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(if self.rank() > 9 { "," } else { "" })
    }
}

impl fmt::Display for IrrRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for IrrRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ρ{}", self.index_label())
    }
}

impl From<Gf2Vector> for IrrRep {
    fn from(v: Gf2Vector) -> Self {
        IrrRep(v)
    }
}

/// A degree-`n` multiset of irreducible representations, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    rank: usize,
    factors: Vec<IrrRep>,
}

impl Monomial {
    pub fn new(rank: usize, mut factors: Vec<IrrRep>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|f| f.rank() != rank) {
            return Err(Error::Shape(format!(
                "factor {bad} has rank {}, expected {rank}",
                bad.rank()
            )));
        }
        factors.sort_unstable();
        Ok(Monomial { rank, factors })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[IrrRep] {
        &self.factors
    }

    /// Multiplicity of `rep` among the factors.
    pub fn multiplicity(&self, rep: &IrrRep) -> usize {
        let lo = self.factors.partition_point(|f| f < rep);
        let hi = self.factors.partition_point(|f| f <= rep);
        hi - lo
    }

    /// Distinct factors with their multiplicities, in sorted order.
    pub fn counts(&self) -> Vec<(&IrrRep, usize)> {
        let mut out: Vec<(&IrrRep, usize)> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some((last, c)) if *last == f => *c += 1,
                _ => out.push((f, 1)),
            }
        }
        out
    }

    /// True iff no factor is trivial and the factors span the dual of `(Z/2)^k`.
    pub fn is_faithful(&self) -> bool {
        if self.factors.iter().any(IrrRep::is_trivial) {
            return false;
        }
        let vectors: Vec<Gf2Vector> = self.factors.iter().map(|f| f.vector().clone()).collect();
        Subspace::from_spanning(self.rank, &vectors)
            .map(|s| s.dim() == self.rank)
            .unwrap_or(false)
    }

    /// Replaces every factor `ρ` by `ρ∘σ`, where `σ(g) = transpose_of_a^T g`.
    /// Callers pass the transpose of the automorphism matrix.
    fn map_factors(&self, transpose: &Gf2Matrix) -> Monomial {
        let factors = self
            .factors
            .iter()
            .map(|f| IrrRep(transpose.mul_vec(f.vector())))
            .collect();
        Monomial::new(self.rank, factors).expect("automorphism preserves width")
    }

    pub fn apply_automorphism(&self, a: &Gf2Matrix) -> Result<Monomial> {
        check_automorphism(a, self.rank)?;
        Ok(self.map_factors(&a.transpose()))
    }

    /// Renders as comma-separated bit-strings, the polynomial file line format.
    pub fn to_line(&self) -> String {
        self.factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Human-readable `ρ1^2 ρ2 ρ12` form.
    pub fn to_notation(&self) -> String {
        self.counts()
            .iter()
            .map(|(f, c)| {
                if *c == 1 {
                    format!("ρ{}", f.index_label())
                } else {
                    format!("ρ{}^{c}", f.index_label())
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_notation())
    }
}

fn check_automorphism(a: &Gf2Matrix, rank: usize) -> Result<()> {
    if a.n_rows() != rank || a.n_cols() != rank || !a.is_invertible() {
        return Err(Error::InvalidAutomorphism { expected: rank });
    }
    Ok(())
}

/// A homogeneous polynomial with GF(2) coefficients: a set of monomials of
/// one degree and one rank. The empty set is zero and is compatible with
/// every shape under addition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    rank: usize,
    degree: usize,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(rank: usize, degree: usize) -> Self {
        Polynomial {
            rank,
            degree,
            terms: BTreeSet::new(),
        }
    }

    /// Sums the given monomials mod 2; repeated monomials cancel in pairs.
    pub fn from_monomials(
        rank: usize,
        degree: usize,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(rank, degree);
        for m in monomials {
            p.toggle(m)?;
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials in the support.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Monomial> {
        self.terms.iter()
    }

    /// Adds a single monomial mod 2.
    pub fn toggle(&mut self, m: Monomial) -> Result<()> {
        if m.rank() != self.rank || m.degree() != self.degree {
            return Err(Error::Shape(format!(
                "monomial of rank {} degree {} added to polynomial of rank {} degree {}",
                m.rank(),
                m.degree(),
                self.rank,
                self.degree
            )));
        }
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.rank != other.rank || self.degree != other.degree {
            return Err(Error::Shape(format!(
                "cannot add rank {} degree {} to rank {} degree {}",
                self.rank, self.degree, other.rank, other.degree
            )));
        }
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        Ok(Polynomial {
            rank: self.rank,
            degree: self.degree,
            terms,
        })
    }

    /// `f_σ`: every factor `ρ` becomes `ρ∘σ` with `σ(g) = a g`.
    pub fn apply_automorphism(&self, a: &Gf2Matrix) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        check_automorphism(a, self.rank)?;
        let t = a.transpose();
        let terms = self.terms.iter().map(|m| m.map_factors(&t)).collect();
        Ok(Polynomial {
            rank: self.rank,
            degree: self.degree,
            terms,
        })
    }

    /// Canonical text form: one monomial per line, sorted.
    pub fn render(&self) -> String {
        render_polynomial(self)
    }

    pub fn to_notation(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(Monomial::to_notation)
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_notation())
    }
}

impl<'a> IntoIterator for &'a Polynomial {
    type Item = &'a Monomial;
    type IntoIter = btree_set::Iter<'a, Monomial>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

pub fn add(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.add(q)
}

pub fn apply_automorphism(p: &Polynomial, a: &Gf2Matrix) -> Result<Polynomial> {
    p.apply_automorphism(a)
}

pub fn is_faithful(m: &Monomial) -> bool {
    m.is_faithful()
}

/// Restricts a monomial to the subgroup `h`, expressed in the ordered basis
/// `h_basis`: each factor `ρ` becomes `(ρ(b_1), ..., ρ(b_r))`, a concrete
/// representative of the coset `ρ + H^⊥`.
pub fn restrict_monomial(m: &Monomial, h: &Subspace, h_basis: &[Gf2Vector]) -> Result<Monomial> {
    check_basis(h, h_basis)?;
    if m.rank() != h.ambient_rank() {
        return Err(Error::Shape(format!(
            "monomial rank {} does not match subgroup ambient rank {}",
            m.rank(),
            h.ambient_rank()
        )));
    }
    Ok(restrict_unchecked(m, h_basis))
}

pub(crate) fn restrict_unchecked(m: &Monomial, basis: &[Gf2Vector]) -> Monomial {
    let r = basis.len();
    let factors = m
        .factors()
        .iter()
        .map(|f| {
            let mut v = Gf2Vector::zero(r);
            for (i, b) in basis.iter().enumerate() {
                if f.eval(b) {
                    v.set(i, true);
                }
            }
            IrrRep(v)
        })
        .collect();
    Monomial::new(r, factors).expect("restricted factors have width r")
}

pub(crate) fn check_basis(h: &Subspace, basis: &[Gf2Vector]) -> Result<()> {
    if basis.len() != h.dim() {
        return Err(Error::InvalidBasis(format!(
            "{} vectors given for a subgroup of rank {}",
            basis.len(),
            h.dim()
        )));
    }
    if let Some(bad) = basis
        .iter()
        .find(|b| b.len() != h.ambient_rank() || !h.contains(b))
    {
        return Err(Error::InvalidBasis(format!("{bad} is not in the subgroup")));
    }
    let spanned = Subspace::from_spanning(h.ambient_rank(), basis)?;
    if spanned != *h {
        return Err(Error::InvalidBasis("vectors are linearly dependent".into()));
    }
    Ok(())
}

pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `I_τ(S)`: the number of ways `S` occurs as a sub-multiset of `t`,
/// `prod_γ C(mult_t(γ), mult_S(γ))`. Zero when `S` is not contained in `t`.
pub fn sub_multiset_multiplicity(t: &Monomial, s: &[IrrRep]) -> u64 {
    let mut sorted: Vec<&IrrRep> = s.iter().collect();
    sorted.sort_unstable();
    let mut product = 1u64;
    let mut i = 0;
    while i < sorted.len() {
        let gamma = sorted[i];
        let j = i + sorted[i..].iter().take_while(|g| **g == gamma).count();
        product *= binomial(t.multiplicity(gamma), j - i);
        if product == 0 {
            return 0;
        }
        i = j;
    }
    product
}

/// Result of parsing a polynomial file, with any lines that cancelled mod 2.
#[derive(Debug, Clone)]
pub struct ParsedPolynomial {
    pub polynomial: Polynomial,
    /// 1-based line numbers of monomials that repeated an earlier line.
    pub duplicate_lines: Vec<usize>,
}

/// Parses the polynomial file format: one monomial per line, factors as
/// comma-separated bit-strings of equal width, `#` comments, blank lines
/// ignored.
pub fn parse_polynomial_detailed(text: &str) -> Result<ParsedPolynomial> {
    let mut shape: Option<(usize, usize)> = None;
    let mut seen = BTreeSet::new();
    let mut duplicate_lines = Vec::new();
    let mut poly = Polynomial::zero(0, 0);
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut factors = Vec::new();
        for token in line.split(',') {
            let token = token.trim();
            let v: Gf2Vector = token.parse().map_err(|e| parse_err(line_no, e))?;
            factors.push(IrrRep(v));
        }
        let width = factors[0].rank();
        if factors.iter().any(|f| f.rank() != width) {
            return Err(parse_err(line_no, "factors have different widths"));
        }
        match shape {
            None => {
                shape = Some((width, factors.len()));
                poly = Polynomial::zero(width, factors.len());
            }
            Some((w, d)) if w != width || d != factors.len() => {
                return Err(parse_err(
                    line_no,
                    format!(
                        "monomial of width {width} degree {} differs from width {w} degree {d}",
                        factors.len()
                    ),
                ));
            }
            _ => {}
        }
        let m = Monomial::new(width, factors)?;
        if !seen.insert(m.clone()) {
            duplicate_lines.push(line_no);
        }
        poly.toggle(m)
            .map_err(|e| parse_err(line_no, e.to_string()))?;
    }
    Ok(ParsedPolynomial {
        polynomial: poly,
        duplicate_lines,
    })
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    parse_polynomial_detailed(text).map(|p| p.polynomial)
}

pub fn render_polynomial(p: &Polynomial) -> String {
    let mut out = String::new();
    for m in &p.terms {
        out.push_str(&m.to_line());
        out.push('\n');
    }
    out
}

/// Parses index notation, e.g. `"1^2 2 3 123 + 1^2 2 13 23"` for
/// `ρ1²ρ2ρ3ρ123 + ρ1²ρ2ρ13ρ23`. Each token is a string of 1-based indices
/// (single digits) with an optional `^exponent`. Terms sum mod 2.
pub fn polynomial_from_notation(rank: usize, text: &str) -> Result<Polynomial> {
    let mut monomials = Vec::new();
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() || term == "0" {
            continue;
        }
        monomials.push(monomial_from_notation(rank, term)?);
    }
    let degree = monomials.first().map_or(0, Monomial::degree);
    Polynomial::from_monomials(rank, degree, monomials)
}

/// Parses a single monomial in index notation, e.g. `"13^2 23 3 12"`.
pub fn monomial_from_notation(rank: usize, text: &str) -> Result<Monomial> {
    let mut factors = Vec::new();
    for token in text.split_whitespace() {
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<usize>()
                    .map_err(|_| Error::Shape(format!("bad exponent in {token:?}")))?,
            ),
            None => (token, 1),
        };
        let indices = base
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Shape(format!("bad index in {token:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let rep = if indices == [0] {
            IrrRep::trivial(rank)
        } else {
            IrrRep::from_indices(rank, &indices)?
        };
        factors.extend(std::iter::repeat_n(rep, exp));
    }
    Monomial::new(rank, factors)
}
