//! Fixed-point data of Milnor hypersurfaces `H_{m,n}` with actions of
//! `(Z/2)^r` pulled back along subset families.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::orbit::PolynomialOrbit;
use crate::rep::{IrrRep, Monomial, Polynomial};

/// Largest `r` and `n` accepted by [`search_orbit_hits`].
pub const MAX_SEARCH_R: usize = 3;
pub const MAX_SEARCH_N: usize = 5;

/// An ordered list `S_1, ..., S_n` of subsets of `{1..r}`, each stored as
/// its indicator vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetFamily {
    r: usize,
    sets: Vec<Gf2Vector>,
}

/// The indicator vector of `s` as a representation of `(Z/2)^r`.
pub fn rho_of_subset(r: usize, s: &BTreeSet<usize>) -> Result<IrrRep> {
    let indices: Vec<usize> = s.iter().copied().collect();
    IrrRep::from_indices(r, &indices)
}

impl SubsetFamily {
    /// Every set must be nonempty and within `{1..r}`.
    pub fn new(r: usize, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidFamily("r must be positive".into()));
        }
        let sets = sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if s.is_empty() {
                    return Err(Error::InvalidFamily(format!("set {} is empty", i + 1)));
                }
                rho_of_subset(r, s)
                    .map(|rho| rho.vector().clone())
                    .map_err(|e| Error::InvalidFamily(format!("set {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubsetFamily { r, sets })
    }

    /// Parses `"2;12;23;123"`: sets separated by `;`, elements as digits.
    pub fn parse(r: usize, text: &str) -> Result<Self> {
        let sets = text
            .split(';')
            .map(|part| {
                part.trim()
                    .chars()
                    .filter(|c| !c.is_whitespace() && *c != ',')
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::InvalidFamily(format!("bad element {c:?}")))
                    })
                    .collect::<Result<BTreeSet<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, sets)
    }

    fn from_vectors(r: usize, sets: Vec<Gf2Vector>) -> Self {
        SubsetFamily { r, sets }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `ρ_{S_i}`, 0-based `i`.
    pub fn rho(&self, i: usize) -> IrrRep {
        IrrRep::new(self.sets[i].clone())
    }

    /// `ρ_{S_i △ S_j}`.
    pub fn rho_sym_diff(&self, i: usize, j: usize) -> IrrRep {
        IrrRep::new(self.sets[i].xor(&self.sets[j]))
    }

    fn check_distinct(&self) -> Result<()> {
        for (i, j) in (0..self.sets.len()).tuple_combinations() {
            if self.sets[i] == self.sets[j] {
                return Err(Error::InvalidFamily(format!(
                    "sets {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sets
            .iter()
            .map(|s| IrrRep::new(s.clone()).index_label())
            .collect();
        f.write_str(&parts.join(";"))
    }
}

fn check_shape(m: usize, n: usize, family: &SubsetFamily) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::InvalidFamily(format!(
            "need 1 <= m <= n, got m={m} n={n}"
        )));
    }
    if family.len() != n {
        return Err(Error::InvalidFamily(format!(
            "expected {n} sets, found {}",
            family.len()
        )));
    }
    family.check_distinct()
}

/// Every term of the two-part formula, before mod-2 cancellation.
pub fn milnor_expansion(m: usize, n: usize, family: &SubsetFamily) -> Result<Vec<Monomial>> {
    check_shape(m, n, family)?;
    let r = family.r();
    let s = |i: usize| family.rho(i);
    let d = |a: usize, b: usize| family.rho_sym_diff(a, b);
    let mut terms = Vec::new();

    let head: Vec<IrrRep> = (0..m).map(s).collect();
    for j in 0..n {
        let mut fs = head.clone();
        fs.extend((0..n).filter(|&k| k != j).map(|k| d(k, j)));
        terms.push(Monomial::new(r, fs)?);
    }

    for i in 0..m {
        let mut prefix = vec![s(i)];
        prefix.extend((0..m).filter(|&k| k != i).map(|k| d(k, i)));

        let mut fs = prefix.clone();
        fs.extend((0..n).filter(|&l| l != i).map(s));
        terms.push(Monomial::new(r, fs)?);

        for j in (0..n).filter(|&j| j != i) {
            let mut fs = prefix.clone();
            fs.push(s(j));
            fs.extend((0..n).filter(|&l| l != i && l != j).map(|l| d(l, j)));
            terms.push(Monomial::new(r, fs)?);
        }
    }
    Ok(terms)
}

/// The fixed-point polynomial of `H_{m,n}` under the pulled-back action.
pub fn milnor_fixed_polynomial(m: usize, n: usize, family: &SubsetFamily) -> Result<Polynomial> {
    let terms = milnor_expansion(m, n, family)?;
    if let Some(t) = terms
        .iter()
        .find(|t| t.factors().iter().any(IrrRep::is_trivial))
    {
        return Err(Error::NonIsolated {
            vertex: family.to_string(),
            factor: t.to_notation(),
        });
    }
    Polynomial::from_monomials(family.r(), m + n - 1, terms)
}

#[derive(Debug, Clone)]
pub struct TargetHits {
    pub target: usize,
    pub families: Vec<SubsetFamily>,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub families_examined: usize,
    pub non_isolated: usize,
    /// Distinct polynomials produced, in sorted order.
    pub polynomials: BTreeSet<Polynomial>,
    /// One entry per target, in target order.
    pub hits: Vec<TargetHits>,
}

impl SearchReport {
    pub fn hit(&self, target: usize) -> bool {
        !self.hits[target].families.is_empty()
    }

    pub fn render(&self) -> String {
        let names: Vec<String> = (0..self.hits.len()).map(|i| i.to_string()).collect();
        self.render_named(&names)
    }

    /// As [`SearchReport::render`], naming target `i` by `names[i]`.
    pub fn render_named<S: AsRef<str>>(&self, names: &[S]) -> String {
        let mut out = format!(
            "m={} n={} r={} families={} non_isolated={} distinct_polynomials={}\n",
            self.m,
            self.n,
            self.r,
            self.families_examined,
            self.non_isolated,
            self.polynomials.len()
        );
        for h in &self.hits {
            match h.families.first() {
                Some(f) => out.push_str(&format!(
                    "target {}: hit by {} families, first {f}\n",
                    names[h.target].as_ref(),
                    h.families.len()
                )),
                None => out.push_str(&format!(
                    "target {}: unreachable\n",
                    names[h.target].as_ref()
                )),
            }
        }
        out
    }
}

/// Runs every ordered family of `n` distinct nonempty subsets of `{1..r}`.
pub fn search_orbit_hits(
    m: usize,
    n: usize,
    r: usize,
    targets: &[PolynomialOrbit],
) -> Result<SearchReport> {
    if r == 0 || r > MAX_SEARCH_R || n > MAX_SEARCH_N {
        return Err(Error::ResourceLimit(format!(
            "search supports r <= {MAX_SEARCH_R} and n <= {MAX_SEARCH_N}"
        )));
    }
    let subsets: Vec<Gf2Vector> = Gf2Vector::nonzero(r).collect();
    let mut report = SearchReport {
        m,
        n,
        r,
        families_examined: 0,
        non_isolated: 0,
        polynomials: BTreeSet::new(),
        hits: (0..targets.len())
            .map(|target| TargetHits {
                target,
                families: Vec::new(),
            })
            .collect(),
    };
    for sets in subsets.into_iter().permutations(n) {
        let family = SubsetFamily::from_vectors(r, sets);
        report.families_examined += 1;
        let p = match milnor_fixed_polynomial(m, n, &family) {
            Ok(p) => p,
            Err(Error::NonIsolated { .. }) => {
                report.non_isolated += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        for (t, orbit) in targets.iter().enumerate() {
            if orbit.contains(&p) {
                report.hits[t].families.push(family.clone());
            }
        }
        report.polynomials.insert(p);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_reps() {
        let s = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(rho_of_subset(3, &s(&[1])).unwrap().to_string(), "100");
        assert_eq!(rho_of_subset(3, &s(&[1, 2, 3])).unwrap().to_string(), "111");
        assert!(rho_of_subset(3, &s(&[])).unwrap().is_trivial());
    }

    #[test]
    fn family_parsing() {
        let f = SubsetFamily::parse(3, "2;12;23;123").unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.to_string(), "2;12;23;123");
        assert!(matches!(
            SubsetFamily::parse(3, "2;;3"),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(
            SubsetFamily::parse(3, "2;4"),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(
            SubsetFamily::parse(3, "2;x"),
            Err(Error::InvalidFamily(_))
        ));
    }

    #[test]
    fn duplicate_sets_rejected() {
        let f = SubsetFamily::parse(3, "1;2;1;3").unwrap();
        assert!(matches!(
            milnor_fixed_polynomial(2, 4, &f),
            Err(Error::InvalidFamily(_))
        ));
        let f = SubsetFamily::parse(3, "1;2;3").unwrap();
        assert!(matches!(
            milnor_fixed_polynomial(2, 4, &f),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(
            milnor_fixed_polynomial(4, 3, &f),
            Err(Error::InvalidFamily(_))
        ));
    }

    #[test]
    fn twelve_terms_at_two_four() {
        let f = SubsetFamily::parse(3, "1;2;3;123").unwrap();
        let terms = milnor_expansion(2, 4, &f).unwrap();
        assert_eq!(terms.len(), 12);
        assert!(terms.iter().all(|t| t.degree() == 5));
    }

    #[test]
    fn low_dimensional_hypersurfaces_bound() {
        // H_{1,1} is a circle and H_{1,2} a surface fibred over RP^1.
        let f = SubsetFamily::parse(1, "1").unwrap();
        assert!(milnor_fixed_polynomial(1, 1, &f).unwrap().is_zero());
        let f = SubsetFamily::parse(2, "1;2").unwrap();
        assert_eq!(milnor_expansion(1, 2, &f).unwrap().len(), 4);
        assert!(milnor_fixed_polynomial(1, 2, &f).unwrap().is_zero());
    }
}
