//! Deciding whether a polynomial is the fixed-point data of some action.
//!
//! For every nonzero `ρ`, the monomials divisible by `ρ` are grouped by their
//! exact `ρ`-multiplicity `n` and their restriction to `ker ρ`. A polynomial
//! is in the image iff in every group, for every multiset `S` with
//! `|S| <= n - 1`, the sum of `I_τ(S)` over the group's members is even.
//!
//! Grouping by (multiplicity, restriction class) is the finest decomposition
//! the criterion allows and it is forced: groups with equal multiplicity
//! above one must have distinct restriction classes, and for multiplicity
//! one the only constraint is an even count, which a class satisfies iff
//! it can be split into even groups. So membership is linear in the
//! coefficient vector, which is what [`build_constraint_system`] exploits.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf2::{nullspace, rank, Gf2Matrix, Gf2Vector, Subspace};
use crate::rep::{restrict_unchecked, sub_multiset_multiplicity, IrrRep, Monomial, Polynomial};

/// Desk-scale bounds for [`enumerate_faithful_monomials`].
pub const MAX_DEGREE: usize = 8;
pub const MAX_RANK: usize = 4;

/// A multiplicity function `I_τ(S)`; [`sub_multiset_multiplicity`] is the
/// one the criterion uses.
pub type MultiplicityFn = fn(&Monomial, &[IrrRep]) -> u64;

/// Canonical basis of `ker ρ` (the reduced echelon basis of the nullspace).
pub fn kernel_basis(rho: &IrrRep) -> Vec<Gf2Vector> {
    let m = Gf2Matrix::from_rows(rho.rank(), vec![rho.vector().clone()]).expect("one row");
    nullspace(&m).basis().to_vec()
}

/// The restriction of `tau` to `ker ρ`, expressed in [`kernel_basis`].
pub fn restriction_class(tau: &Monomial, kernel: &[Gf2Vector]) -> Monomial {
    restrict_unchecked(tau, kernel)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoGroup {
    pub multiplicity: usize,
    pub restriction_class: Monomial,
    pub members: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoDecomposition {
    pub rho: IrrRep,
    pub groups: Vec<RhoGroup>,
}

/// Groups the monomials of `p` divisible by `rho` by (exact multiplicity,
/// restriction class to `ker ρ`). Groups come out sorted by that key.
pub fn decompose_for_rho(p: &Polynomial, rho: &IrrRep) -> Result<RhoDecomposition> {
    if rho.is_trivial() {
        return Err(Error::TrivialRep);
    }
    if !p.is_zero() && rho.rank() != p.rank() {
        return Err(Error::Shape(format!(
            "ρ has rank {} but the polynomial has rank {}",
            rho.rank(),
            p.rank()
        )));
    }
    let kernel = kernel_basis(rho);
    let mut groups: BTreeMap<(usize, Monomial), Vec<Monomial>> = BTreeMap::new();
    for tau in p {
        let n = tau.multiplicity(rho);
        if n == 0 {
            continue;
        }
        groups
            .entry((n, restriction_class(tau, &kernel)))
            .or_default()
            .push(tau.clone());
    }
    Ok(RhoDecomposition {
        rho: rho.clone(),
        groups: groups
            .into_iter()
            .map(|((multiplicity, restriction_class), members)| RhoGroup {
                multiplicity,
                restriction_class,
                members,
            })
            .collect(),
    })
}

/// Every sub-multiset of `m` with at most `max_size` elements, each sorted.
pub fn sub_multisets(m: &Monomial, max_size: usize) -> Vec<Vec<IrrRep>> {
    let counts = m.counts();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go<'a>(
        counts: &[(&'a IrrRep, usize)],
        budget: usize,
        current: &mut Vec<&'a IrrRep>,
        out: &mut Vec<Vec<IrrRep>>,
    ) {
        let Some(((rep, c), rest)) = counts.split_first() else {
            out.push(current.iter().map(|r| (*r).clone()).collect());
            return;
        };
        for take in 0..=(*c).min(budget) {
            for _ in 0..take {
                current.push(rep);
            }
            go(rest, budget - take, current, out);
            for _ in 0..take {
                current.pop();
            }
        }
    }
    go(&counts, max_size, &mut current, &mut out);
    out
}

/// Candidate witnesses for a group: sub-multisets of its members of size at
/// most `multiplicity - 1`, ordered by size then lexicographically.
fn candidate_witnesses<'a>(
    members: impl IntoIterator<Item = &'a Monomial>,
    multiplicity: usize,
) -> Vec<Vec<IrrRep>> {
    let set: BTreeSet<(usize, Vec<IrrRep>)> = members
        .into_iter()
        .flat_map(|m| sub_multisets(m, multiplicity - 1))
        .map(|s| (s.len(), s))
        .collect();
    set.into_iter().map(|(_, s)| s).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rho: IrrRep,
    /// Index of the offending group in `decompose_for_rho(p, rho)`.
    pub group_index: usize,
    pub multiplicity: usize,
    pub restriction_class: Monomial,
    pub witness: Vec<IrrRep>,
    /// `sum I_τ(S)` over the group, which is odd.
    pub sum: u64,
}

impl Violation {
    /// Re-evaluates the parity test on `p`; true iff it still fails.
    pub fn recheck(&self, p: &Polynomial) -> bool {
        let Ok(d) = decompose_for_rho(p, &self.rho) else {
            return false;
        };
        let Some(g) = d.groups.get(self.group_index) else {
            return false;
        };
        g.multiplicity == self.multiplicity
            && g.restriction_class == self.restriction_class
            && self.witness.len() < g.multiplicity
            && g.members
                .iter()
                .map(|t| sub_multiset_multiplicity(t, &self.witness))
                .sum::<u64>()
                % 2
                == 1
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let witness = if self.witness.is_empty() {
            "∅".to_string()
        } else {
            self.witness.iter().map(|r| r.to_string()).join(",")
        };
        write!(
            f,
            "rho={} group={} multiplicity={} class={} witness={} sum={}",
            self.rho,
            self.group_index,
            self.multiplicity,
            self.restriction_class,
            witness,
            self.sum
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    /// Per-ρ decompositions, populated when accepted.
    pub decompositions: Vec<RhoDecomposition>,
    pub violation: Option<Violation>,
}

impl MembershipCertificate {
    pub fn is_accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    /// Structured text: a per-ρ group table, or the violated constraint.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match &self.violation {
            Some(v) => {
                out.push_str("rejected\n");
                out.push_str(&format!("violation {v}\n"));
            }
            None => {
                out.push_str("accepted\n");
                for d in &self.decompositions {
                    for (i, g) in d.groups.iter().enumerate() {
                        out.push_str(&format!(
                            "rho={} group={} multiplicity={} class={} members={}\n",
                            d.rho,
                            i,
                            g.multiplicity,
                            g.restriction_class,
                            g.members.len()
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Decides membership directly. Monomials must all be faithful.
pub fn check_membership(p: &Polynomial) -> Result<MembershipCertificate> {
    if let Some(bad) = p.iter().find(|m| !m.is_faithful()) {
        return Err(Error::NotFaithful(bad.to_notation()));
    }
    let mut decompositions = Vec::new();
    if p.is_zero() {
        return Ok(MembershipCertificate {
            verdict: Verdict::Accepted,
            decompositions,
            violation: None,
        });
    }
    for rho in Gf2Vector::nonzero(p.rank()).map(IrrRep::new) {
        let d = decompose_for_rho(p, &rho)?;
        for (group_index, g) in d.groups.iter().enumerate() {
            for s in candidate_witnesses(&g.members, g.multiplicity) {
                let sum: u64 = g
                    .members
                    .iter()
                    .map(|t| sub_multiset_multiplicity(t, &s))
                    .sum();
                if sum % 2 == 1 {
                    return Ok(MembershipCertificate {
                        verdict: Verdict::Rejected,
                        decompositions: Vec::new(),
                        violation: Some(Violation {
                            rho: rho.clone(),
                            group_index,
                            multiplicity: g.multiplicity,
                            restriction_class: g.restriction_class.clone(),
                            witness: s,
                            sum,
                        }),
                    });
                }
            }
        }
        if !d.groups.is_empty() {
            decompositions.push(d);
        }
    }
    Ok(MembershipCertificate {
        verdict: Verdict::Accepted,
        decompositions,
        violation: None,
    })
}

fn check_bounds(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::Shape("degree and rank must be positive".into()));
    }
    if n > MAX_DEGREE || k > MAX_RANK {
        return Err(Error::ResourceLimit(format!(
            "(n, k) = ({n}, {k}) exceeds the desk-scale bounds n <= {MAX_DEGREE}, k <= {MAX_RANK}"
        )));
    }
    Ok(())
}

/// All faithful degree-`n` monomials over rank `k`, in lexicographic order.
pub fn enumerate_faithful_monomials(n: usize, k: usize) -> Result<Vec<Monomial>> {
    check_bounds(n, k)?;
    let reps: Vec<IrrRep> = Gf2Vector::nonzero(k).map(IrrRep::new).collect();
    Ok(reps
        .iter()
        .cloned()
        .combinations_with_replacement(n)
        .map(|fs| Monomial::new(k, fs).expect("width k"))
        .filter(Monomial::is_faithful)
        .collect())
}

/// The linear parity system whose nullspace is the degree-`n` image.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub n: usize,
    pub k: usize,
    /// Column order: the faithful monomials.
    pub monomials: Vec<Monomial>,
    /// One deduplicated row per nonzero parity constraint.
    pub matrix: Gf2Matrix,
    index: HashMap<Monomial, usize>,
}

impl ConstraintSystem {
    pub fn column_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coefficient vector of `p` over the columns. `None` if `p` has a
    /// monomial outside the faithful set or the wrong shape.
    pub fn indicator(&self, p: &Polynomial) -> Option<Gf2Vector> {
        let mut v = Gf2Vector::zero(self.monomials.len());
        if p.is_zero() {
            return Some(v);
        }
        if p.rank() != self.k || p.degree() != self.n {
            return None;
        }
        for m in p {
            v.set(self.column_of(m)?, true);
        }
        Some(v)
    }

    pub fn polynomial(&self, coefficients: &Gf2Vector) -> Polynomial {
        Polynomial::from_monomials(
            self.k,
            self.n,
            coefficients.ones().map(|i| self.monomials[i].clone()),
        )
        .expect("columns share a shape")
    }

    pub fn constraint_count(&self) -> usize {
        self.matrix.n_rows()
    }

    /// True iff `v` satisfies every constraint.
    pub fn satisfies(&self, v: &Gf2Vector) -> bool {
        self.matrix.rows().iter().all(|r| !r.dot(v))
    }

    pub fn solution_space(&self) -> Subspace {
        nullspace(&self.matrix)
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len() - rank(&self.matrix)
    }
}

pub fn build_constraint_system(n: usize, k: usize) -> Result<ConstraintSystem> {
    build_constraint_system_with(n, k, sub_multiset_multiplicity)
}

/// As [`build_constraint_system`], with a caller-supplied `I_τ(S)`.
pub fn build_constraint_system_with(
    n: usize,
    k: usize,
    multiplicity: MultiplicityFn,
) -> Result<ConstraintSystem> {
    let monomials = enumerate_faithful_monomials(n, k)?;
    let index: HashMap<Monomial, usize> = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let width = monomials.len();
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    let all = Polynomial::from_monomials(k, n, monomials.iter().cloned())?;
    for rho in Gf2Vector::nonzero(k).map(IrrRep::new) {
        let d = decompose_for_rho(&all, &rho)?;
        for g in &d.groups {
            for s in candidate_witnesses(&g.members, g.multiplicity) {
                let mut row = Gf2Vector::zero(width);
                for t in &g.members {
                    if multiplicity(t, &s) % 2 == 1 {
                        row.set(index[t], true);
                    }
                }
                if !row.is_zero() && seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(ConstraintSystem {
        n,
        k,
        monomials,
        matrix: Gf2Matrix::from_rows(width, rows)?,
        index,
    })
}

/// `dim` of the degree-`n` image for rank `k`.
pub fn image_dimension(n: usize, k: usize) -> Result<usize> {
    Ok(build_constraint_system(n, k)?.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{monomial_from_notation, polynomial_from_notation};

    fn poly(k: usize, s: &str) -> Polynomial {
        polynomial_from_notation(k, s).unwrap()
    }

    fn rho(k: usize, idx: &[usize]) -> IrrRep {
        IrrRep::from_indices(k, idx).unwrap()
    }

    const F1: &str = "1^2 2 3 123 + 1^2 2 13 23 + 1^2 12 3 23 + 1^2 12 13 123";

    #[test]
    fn decompose_f1_for_rho1() {
        let d = decompose_for_rho(&poly(3, F1), &rho(3, &[1])).unwrap();
        assert_eq!(d.groups.len(), 1);
        assert_eq!(d.groups[0].multiplicity, 2);
        assert_eq!(d.groups[0].members.len(), 4);
    }

    #[test]
    fn decompose_zero_and_trivial() {
        let d = decompose_for_rho(&Polynomial::zero(3, 5), &rho(3, &[1])).unwrap();
        assert!(d.groups.is_empty());
        assert_eq!(
            decompose_for_rho(&poly(3, F1), &IrrRep::trivial(3)),
            Err(Error::TrivialRep)
        );
    }

    #[test]
    fn decompose_groups_by_kernel_restriction() {
        // Mod ρ2, ρ123 ≡ ρ13 and ρ23 ≡ ρ3, so both monomials share one class.
        let p = poly(3, "1^2 2 3 123 + 1^2 2 13 23");
        let d = decompose_for_rho(&p, &rho(3, &[2])).unwrap();
        assert_eq!(d.groups.len(), 1);
        assert_eq!(d.groups[0].multiplicity, 1);
        assert_eq!(d.groups[0].members.len(), 2);
    }

    #[test]
    fn singleton_with_cubed_factor_rejected() {
        let p = poly(3, "1^3 2 3");
        let cert = check_membership(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::Rejected);
        let v = cert.violation.as_ref().unwrap();
        // ρ3 comes first in enumeration order; its lone group has odd size.
        assert_eq!(v.rho, rho(3, &[3]));
        assert!(v.witness.is_empty());
        assert!(v.recheck(&p));
    }

    #[test]
    fn zero_is_accepted() {
        assert!(check_membership(&Polynomial::zero(3, 5))
            .unwrap()
            .is_accepted());
    }

    #[test]
    fn non_faithful_is_an_error() {
        let p = poly(3, "1^2 2 12 2");
        assert!(matches!(check_membership(&p), Err(Error::NotFaithful(_))));
    }

    #[test]
    fn faithful_enumeration_small_cases() {
        let two = enumerate_faithful_monomials(2, 2).unwrap();
        let expected: Vec<Monomial> = ["1 2", "1 12", "2 12"]
            .iter()
            .map(|s| monomial_from_notation(2, s).unwrap())
            .collect();
        let mut sorted = expected.clone();
        sorted.sort();
        assert_eq!(two, sorted);
        assert!(enumerate_faithful_monomials(1, 2).unwrap().is_empty());
        assert!(matches!(
            enumerate_faithful_monomials(9, 3),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            enumerate_faithful_monomials(4, 5),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn rp2_spans_degree_two() {
        let sys = build_constraint_system(2, 2).unwrap();
        assert_eq!(sys.dimension(), 1);
        let rp2 = poly(2, "1 2 + 1 12 + 2 12");
        let ns = sys.solution_space();
        let ind = sys.indicator(&rp2).unwrap();
        assert_eq!(ns, Subspace::from_spanning(ind.len(), &[ind]).unwrap());
    }

    #[test]
    fn sub_multiset_enumeration() {
        let m = monomial_from_notation(2, "1^2 2").unwrap();
        let subs = sub_multisets(&m, 2);
        // ∅, {1}, {1,1}, {2}, {1,2}
        assert_eq!(subs.len(), 5);
        assert_eq!(sub_multisets(&m, 0), vec![Vec::<IrrRep>::new()]);
    }

    #[test]
    fn certificate_rendering() {
        let cert = check_membership(&poly(3, F1)).unwrap();
        let text = cert.render();
        assert!(text.starts_with("accepted\n"));
        assert!(text.contains("rho=100 group=0 multiplicity=2"));
        let rej = check_membership(&poly(3, "1^3 2 3")).unwrap().render();
        assert!(rej.starts_with("rejected\nviolation rho=001"));
    }
}
