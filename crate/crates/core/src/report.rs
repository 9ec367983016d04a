//! The end-to-end reproduction report: every reference value recomputed
//! from scratch and compared.

use std::collections::BTreeSet;
use std::fmt::Display;

use crate::data::{self, PRODUCT_1X4, PRODUCT_2X3};
use crate::error::Result;
use crate::gf2::{enumerate_gl, enumerate_subspaces, gl_order, Gf2Matrix};
use crate::membership::{
    build_constraint_system_with, check_membership, enumerate_faithful_monomials, MultiplicityFn,
};
use crate::milnor::{milnor_fixed_polynomial, search_orbit_hits};
use crate::orbit::{orbit_under, span_dimension, verify_generating_set, PolynomialOrbit};
use crate::rep::{binomial, restrict_unchecked, sub_multiset_multiplicity, Polynomial};
use crate::small_cover::{
    admissible_subgroups, is_admissible, restricted_polynomial, tangent_reps,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReproductionReport {
    pub checkpoints: Vec<Checkpoint>,
}

impl ReproductionReport {
    fn check(&mut self, name: &str, expected: impl Display, computed: impl Display) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        self.checkpoints.push(Checkpoint {
            name: name.to_string(),
            pass: expected == computed,
            expected,
            computed,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checkpoints.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Checkpoint> {
        self.checkpoints.iter().find(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Checkpoint> {
        self.checkpoints.iter().find(|c| c.name == name)
    }

    /// `name=expected:computed:PASS|FAIL`, one per line, in run order.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for c in &self.checkpoints {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{}={}:{}:{status}\n",
                c.name, c.expected, c.computed
            ));
        }
        out
    }

    pub fn render_human(&self) -> String {
        let width = self
            .checkpoints
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for c in &self.checkpoints {
            let status = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "[{status}] {:width$}  expected {}, computed {}\n",
                c.name, c.expected, c.computed
            ));
        }
        let passed = self.checkpoints.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "{passed}/{} checkpoints passed\n",
            self.checkpoints.len()
        ));
        if let Some(f) = self.first_failure() {
            out.push_str(&format!("first failure: {}\n", f.name));
        }
        out
    }
}

/// How a matrix `A` acts on a functional `ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `ρ ↦ ρ ∘ A`, i.e. `Aᵀρ`. The one the reference data uses.
    Precompose,
    /// `ρ ↦ Aρ`.
    Direct,
}

#[derive(Debug, Clone, Copy)]
pub struct ReproductionConfig {
    pub multiplicity: MultiplicityFn,
    pub convention: Convention,
}

impl Default for ReproductionConfig {
    fn default() -> Self {
        ReproductionConfig {
            multiplicity: sub_multiset_multiplicity,
            convention: Convention::Precompose,
        }
    }
}

/// Number of faithful degree-`n` monomials over rank `k`, by Möbius
/// inversion on the subspace lattice.
pub fn faithful_count_formula(n: usize, k: usize) -> i64 {
    let gaussian = |k: usize, j: usize| -> i64 {
        let mut num = 1i64;
        let mut den = 1i64;
        for i in 0..j {
            num *= (1i64 << (k - i)) - 1;
            den *= (1i64 << (i + 1)) - 1;
        }
        num / den
    };
    (0..=k)
        .map(|j| {
            let c = k - j;
            let sign = if c.is_multiple_of(2) { 1 } else { -1 };
            let mobius = sign * (1i64 << (c * c.saturating_sub(1) / 2));
            let pool = (1usize << j) - 1;
            let multisets = if pool == 0 {
                0
            } else {
                binomial(pool + n - 1, n) as i64
            };
            mobius * gaussian(k, j) * multisets
        })
        .sum()
}

/// `(-1)^n + Σ_{i<n} (-1)^{n-1-i} Π_{j<=i} (2^n - 2^j) / (i+1)!`, the
/// dimension of the degree-`n` image at rank `n`.
pub fn closed_formula_dimension(n: u32) -> i128 {
    let mut total: i128 = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut fact: i128 = 1;
    let mut prod: i128 = 1;
    for i in 0..n {
        prod *= (1i128 << n) - (1i128 << i);
        fact *= i as i128 + 1;
        let sign = if (n - 1 - i).is_multiple_of(2) { 1 } else { -1 };
        total += sign * prod / fact;
    }
    total
}

fn group_for(convention: Convention, k: usize) -> Result<Vec<Gf2Matrix>> {
    let gl = enumerate_gl(k)?;
    Ok(match convention {
        Convention::Precompose => gl,
        Convention::Direct => gl.iter().map(Gf2Matrix::transpose).collect(),
    })
}

/// The stabilizer as a set of matrices `A`, under the given convention.
fn stabilizer_of(o: &PolynomialOrbit, convention: Convention) -> BTreeSet<Gf2Matrix> {
    o.stabilizer
        .iter()
        .map(|a| match convention {
            Convention::Precompose => a.clone(),
            Convention::Direct => a.transpose(),
        })
        .collect()
}

fn verdict(p: &Polynomial) -> String {
    match check_membership(p) {
        Ok(c) if c.is_accepted() => "accepted".into(),
        Ok(_) => "rejected".into(),
        Err(e) => format!("error({e})"),
    }
}

fn sum(ps: &[&Polynomial]) -> Result<Polynomial> {
    ps.iter()
        .try_fold(Polynomial::zero(3, 5), |acc, p| acc.add(p))
}

pub fn reproduce_paper() -> Result<ReproductionReport> {
    reproduce_with(&ReproductionConfig::default())
}

pub fn reproduce_with(config: &ReproductionConfig) -> Result<ReproductionReport> {
    let mut r = ReproductionReport::default();
    let seeds = data::seeds();

    for (i, f) in seeds.iter().enumerate() {
        r.check(&format!("membership_f{}", i + 1), "accepted", verdict(f));
    }
    r.check(
        "membership_singleton",
        "rejected",
        verdict(&data::poly(3, data::SINGLETON_REJECT)),
    );

    let faithful = enumerate_faithful_monomials(5, 3)?.len();
    r.check(
        "faithful_monomials_5_3",
        faithful_count_formula(5, 3),
        faithful,
    );
    let system = build_constraint_system_with(5, 3, config.multiplicity)?;
    r.check(
        "constraint_rank_5_3",
        faithful_count_formula(5, 3) - 77,
        system.monomials.len() - system.dimension(),
    );
    r.check("dimension_5_3", 77, system.dimension());
    let dim = |n, k| build_constraint_system_with(n, k, config.multiplicity).map(|s| s.dimension());
    r.check("dimension_4_3", 32, dim(4, 3)?);
    r.check("dimension_3_3", closed_formula_dimension(3), dim(3, 3)?);
    r.check("dimension_2_2", 1, dim(2, 2)?);
    r.check("dimension_4_4", closed_formula_dimension(4), dim(4, 4)?);
    for (n, k) in [(1, 2), (1, 3), (2, 3)] {
        r.check(&format!("dimension_{n}_{k}"), 0, dim(n, k)?);
    }
    // Rank one carries nothing; rank two is generated by RP^2.
    for n in 1..=4 {
        r.check(&format!("dimension_{n}_1"), 0, dim(n, 1)?);
    }
    for n in 3..=6 {
        r.check(&format!("dimension_{n}_2"), (n + 1) % 2, dim(n, 2)?);
    }

    let group = group_for(config.convention, 3)?;
    let orbits = seeds
        .iter()
        .map(|f| orbit_under(f, &group))
        .collect::<Result<Vec<_>>>()?;
    let gl3 = enumerate_gl(3)?;
    let predicted: [fn(&Gf2Matrix) -> bool; 4] = [
        data::f1_stabilizer_shape,
        data::f2_stabilizer_shape,
        data::f3_stabilizer_shape,
        data::f4_stabilizer_shape,
    ];
    for (i, (o, (size, stab))) in orbits
        .iter()
        .zip([(7, 24), (28, 6), (42, 4), (28, 6)])
        .enumerate()
    {
        let name = format!("f{}", i + 1);
        r.check(&format!("orbit_size_{name}"), size, o.len());
        r.check(
            &format!("stabilizer_order_{name}"),
            stab,
            o.stabilizer.len(),
        );
        r.check(
            &format!("orbit_stabilizer_{name}"),
            gl_order(3),
            o.len() * o.stabilizer.len(),
        );
        let expected: BTreeSet<Gf2Matrix> =
            gl3.iter().filter(|a| predicted[i](a)).cloned().collect();
        r.check(
            &format!("stabilizer_shape_{name}"),
            true,
            stabilizer_of(o, config.convention) == expected,
        );
    }
    let explicit: BTreeSet<Gf2Matrix> = data::f4_stabilizer().into_iter().collect();
    r.check(
        "stabilizer_f4_explicit",
        true,
        stabilizer_of(&orbits[3], config.convention) == explicit,
    );

    let mut union: Vec<&Polynomial> = Vec::new();
    for (i, expected) in [7, 35, 56, 77].into_iter().enumerate() {
        union.extend(orbits[i].elements.iter());
        r.check(
            &format!("span_p1_to_p{}", i + 1),
            expected,
            span_dimension(union.iter().copied())?,
        );
    }
    let p1p2: Vec<&Polynomial> = orbits[0]
        .elements
        .iter()
        .chain(&orbits[1].elements)
        .collect();
    r.check(
        "span_p1_alone",
        7,
        span_dimension(orbits[0].elements.iter())?,
    );
    r.check("span_p1_p2_independent", p1p2.len(), span_dimension(p1p2)?);

    let f3v: Vec<Polynomial> = data::F3_VARIANTS.iter().map(|s| data::poly(3, s)).collect();
    let f4v: Vec<Polynomial> = data::F4_VARIANTS.iter().map(|s| data::poly(3, s)).collect();
    let f2v: Vec<Polynomial> = data::F2_VARIANTS.iter().map(|s| data::poly(3, s)).collect();
    let in_orbit = |ps: &[Polynomial], o: &PolynomialOrbit| ps.iter().all(|p| o.contains(p));
    r.check("variants_f2_in_orbit", true, in_orbit(&f2v, &orbits[1]));
    r.check("variants_f3_in_orbit", true, in_orbit(&f3v, &orbits[2]));
    r.check("variants_f4_in_orbit", true, in_orbit(&f4v, &orbits[3]));
    r.check(
        "identity_f34",
        true,
        f3v[3] == sum(&[&f3v[0], &f3v[1], &f3v[2]])?,
    );
    r.check("identity_f35", true, f3v[4] == sum(&[&f3v[1], &f3v[2]])?);
    r.check("identity_f36", true, f3v[5] == sum(&[&f3v[0], &f3v[1]])?);
    r.check(
        "identity_f44",
        true,
        f4v[3]
            == sum(&[
                &f4v[0], &f4v[1], &f4v[2], &f2v[0], &f2v[1], &f2v[2], &f2v[3],
            ])?,
    );

    let generators: Vec<Polynomial> = orbits
        .iter()
        .flat_map(|o| o.elements.iter().cloned())
        .collect();
    r.check(
        "generating_set_equals_image",
        true,
        verify_generating_set(5, 3, &generators)?,
    );

    for (d, seed, size) in [(&PRODUCT_1X4, 2usize, 10usize), (&PRODUCT_2X3, 3, 12)] {
        let c = d.characteristic();
        let mut computed: Vec<_> = tangent_reps(&c)?.into_iter().map(|(_, m)| m).collect();
        computed.sort();
        let printed: Vec<_> = d.tangent_polynomial().iter().cloned().collect();
        r.check(&format!("tangent_count_{}", d.name), size, computed.len());
        r.check(
            &format!("tangent_list_{}", d.name),
            true,
            computed == printed,
        );
        let h = d.subgroup_space();
        r.check(
            &format!("subgroup_perp_{}", d.name),
            true,
            h.orthogonal_complement() == d.subgroup_perp_space(),
        );
        r.check(
            &format!("subgroup_admissible_{}", d.name),
            true,
            is_admissible(&c, &h),
        );
        let basis = d.subgroup_basis();
        let restricted = restricted_polynomial(&c, &h, &basis)?;
        r.check(
            &format!("restricted_in_orbit_f{}_{}", seed + 1, d.name),
            true,
            orbits[seed].contains(&restricted),
        );
        let printed_restricted = Polynomial::from_monomials(
            3,
            5,
            d.restricted_representatives()
                .iter()
                .map(|m| restrict_unchecked(m, &basis)),
        )?;
        r.check(
            &format!("restricted_list_{}", d.name),
            true,
            printed_restricted == restricted,
        );
    }
    let simplex = data::simplex_5();
    let mut computed: Vec<_> = tangent_reps(&simplex)?
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    computed.sort();
    let printed: Vec<_> = data::poly(5, data::SIMPLEX_5_TANGENT)
        .iter()
        .cloned()
        .collect();
    r.check("tangent_list_delta5", true, computed == printed);

    let subspaces = enumerate_subspaces(5, 3)?;
    r.check("rank3_subspaces_of_rank5", 155, subspaces.len());
    let admissible = admissible_subgroups(&simplex, 3)?;
    // An edge span of the simplex is the hyperplane normal to `e_i` or
    // `e_i + e_j`, so admissibility means `H^⊥` has no element of weight <= 2.
    let heavy_planes = enumerate_subspaces(5, 2)?
        .into_iter()
        .filter(|w| w.elements().iter().all(|v| v.is_zero() || v.weight() >= 3))
        .count();
    r.check(
        "delta5_admissible_subgroups",
        heavy_planes,
        admissible.len(),
    );
    let mut isolated_nonzero = 0;
    for h in &admissible {
        match restricted_polynomial(&simplex, h, h.basis()) {
            Ok(p) if !p.is_zero() => isolated_nonzero += 1,
            _ => {}
        }
    }
    r.check("delta5_isolated_nonzero_restrictions", 0, isolated_nonzero);

    for (i, sets) in [data::MILNOR_F1_SETS, data::MILNOR_F2_SETS]
        .iter()
        .enumerate()
    {
        let p = milnor_fixed_polynomial(2, 4, &data::milnor_family(sets))?;
        r.check(&format!("milnor_family_f{}", i + 1), true, p == seeds[i]);
    }
    let search = search_orbit_hits(2, 4, 3, &orbits)?;
    for (i, expected) in [true, true, false, false].into_iter().enumerate() {
        r.check(
            &format!("milnor_search_hits_f{}", i + 1),
            expected,
            search.hit(i),
        );
    }
    Ok(r)
}
