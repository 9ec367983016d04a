//! Helpers shared by the integration targets: a naive reimplementation of
//! the parity criterion and seeded generators of test polynomials.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use z2k::gf2::{Gf2Matrix, Gf2Vector};
use z2k::membership::{build_constraint_system, check_membership, enumerate_faithful_monomials};
use z2k::small_cover::{validate_characteristic, CharacteristicFunction, ProductOfSimplices};
use z2k::{Monomial, Polynomial};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

type Counts = BTreeMap<u64, usize>;

/// (ρ-multiplicity, coset multiset of the other factors).
type GroupKey = (usize, Vec<(u64, usize)>);

/// Every sub-multiset of `counts` with at most `max` elements.
fn sub_counts(counts: &Counts, max: usize) -> Vec<Counts> {
    let mut out = vec![Counts::new()];
    for (&x, &c) in counts {
        let mut next = Vec::new();
        for s in &out {
            let used: usize = s.values().sum();
            for take in 0..=c.min(max - used) {
                let mut t = s.clone();
                if take > 0 {
                    t.insert(x, take);
                }
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// The criterion evaluated from scratch. Monomials are grouped by their
/// `ρ`-multiplicity and the multiset of cosets `{σ, σ + ρ}` of their other
/// factors, which is their restriction to `ker ρ` with no kernel basis
/// involved. Witnesses are multisets of functionals on the whole group.
pub fn oracle_accepts(p: &Polynomial) -> bool {
    if p.is_zero() {
        return true;
    }
    let k = p.rank();
    for rho in 1..(1u64 << k) {
        let mut groups: BTreeMap<GroupKey, Vec<Counts>> = BTreeMap::new();
        for m in p.iter() {
            let mut full = Counts::new();
            let mut cosets = Counts::new();
            for f in m.factors() {
                let s = f.vector().to_index();
                *full.entry(s).or_default() += 1;
                if s != rho {
                    *cosets.entry(s.min(s ^ rho)).or_default() += 1;
                }
            }
            if let Some(&n) = full.get(&rho) {
                let key = (n, cosets.into_iter().collect());
                groups.entry(key).or_default().push(full);
            }
        }
        for ((n, _), members) in &groups {
            let mut witnesses: Vec<Counts> =
                members.iter().flat_map(|c| sub_counts(c, n - 1)).collect();
            witnesses.sort();
            witnesses.dedup();
            for s in &witnesses {
                let total: u64 = members
                    .iter()
                    .map(|c| {
                        s.iter()
                            .map(|(x, &t)| binomial(c.get(x).copied().unwrap_or(0), t))
                            .product::<u64>()
                    })
                    .sum();
                if total % 2 == 1 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn accepted(p: &Polynomial) -> bool {
    check_membership(p).expect("faithful input").is_accepted()
}

/// Each faithful monomial kept with probability one half.
pub fn random_subset(rng: &mut StdRng, monomials: &[Monomial], k: usize, n: usize) -> Polynomial {
    Polynomial::from_monomials(
        k,
        n,
        monomials.iter().filter(|_| rng.gen_bool(0.5)).cloned(),
    )
    .unwrap()
}

/// Seeded polynomials of degree `n` over rank `k` that the checker rejects.
pub fn random_rejects(seed: u64, n: usize, k: usize, count: usize) -> Vec<Polynomial> {
    let monomials = enumerate_faithful_monomials(n, k).unwrap();
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let p = random_subset(&mut r, &monomials, k, n);
        if !p.is_zero() && !accepted(&p) {
            out.push(p);
        }
    }
    out
}

/// Seeded nonzero elements of the degree-`n` image over rank `k`.
pub fn random_image_elements(seed: u64, n: usize, k: usize, count: usize) -> Vec<Polynomial> {
    let system = build_constraint_system(n, k).unwrap();
    let basis = system.solution_space().basis().to_vec();
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let mut v = Gf2Vector::zero(system.monomials.len());
        for b in &basis {
            if r.gen_bool(0.5) {
                v.xor_assign(b);
            }
        }
        if !v.is_zero() {
            out.push(system.polynomial(&v));
        }
    }
    out
}

pub fn random_invertible(rng: &mut StdRng, k: usize) -> Gf2Matrix {
    loop {
        let rows = (0..k)
            .map(|_| Gf2Vector::from_index(k, rng.gen_range(0..1u64 << k)))
            .collect();
        let a = Gf2Matrix::from_rows(k, rows).unwrap();
        if a.is_invertible() {
            return a;
        }
    }
}

/// Every valid characteristic function on `polytope`, or (with `pin_first`)
/// those whose labels at the first vertex are `e1..en` in facet order.
pub fn characteristic_functions(
    polytope: &ProductOfSimplices,
    pin_first: bool,
) -> Vec<CharacteristicFunction> {
    let n = polytope.dimension();
    let facets = polytope.facet_count();
    let mut fixed: Vec<Option<Gf2Vector>> = vec![None; facets];
    if pin_first {
        let first = &polytope.vertices()[0];
        for (i, f) in polytope.vertex_facets(first).into_iter().enumerate() {
            fixed[f] = Some(Gf2Vector::unit(n, i));
        }
    }
    let free: Vec<usize> = (0..facets).filter(|&f| fixed[f].is_none()).collect();
    let choices = (1u64 << n) - 1;
    let mut out = Vec::new();
    for code in 0..choices.pow(free.len() as u32) {
        let mut labels = fixed.clone();
        let mut c = code;
        for &f in &free {
            labels[f] = Some(Gf2Vector::from_index(n, c % choices + 1));
            c /= choices;
        }
        let labels = labels.into_iter().map(Option::unwrap).collect();
        let cf = CharacteristicFunction::new(polytope.clone(), labels).unwrap();
        if validate_characteristic(&cf) {
            out.push(cf);
        }
    }
    out
}
