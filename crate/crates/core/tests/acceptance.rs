//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use z2k::data::{self, PRODUCT_1X4, PRODUCT_2X3};
use z2k::gf2::{enumerate_gl, enumerate_subspaces, gl_order, Gf2Matrix, Subspace};
use z2k::membership::{build_constraint_system, enumerate_faithful_monomials};
use z2k::orbit::{orbit, span_dimension, PolynomialOrbit};
use z2k::rep::restrict_monomial;
use z2k::small_cover::{
    fixed_polynomial, is_admissible, restricted_polynomial, tangent_reps, ProductOfSimplices,
};
use z2k::{image_dimension, milnor_fixed_polynomial, search_orbit_hits, Polynomial};

use common::{accepted, oracle_accepts, random_image_elements, random_rejects, random_subset, rng};

const MEMBERSHIP_LIMIT: Duration = Duration::from_secs(1);
const DIMENSION_5_3_LIMIT: Duration = Duration::from_secs(60);
const DELTA5_LIMIT: Duration = Duration::from_secs(5);
const MILNOR_SEARCH_LIMIT: Duration = Duration::from_secs(30);
const RANDOM_SUBSETS_5_3: usize = 10_000;

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, expected: T, computed: T) {
        if expected != computed {
            self.failures.push(format!(
                "{what}: expected {expected:?}, computed {computed:?}"
            ));
        }
    }

    fn within(&mut self, what: &str, elapsed: Duration, limit: Duration) {
        self.notes.push(format!(
            "{what} {:.3}s (limit {}s)",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
        self.expect(
            &format!("{what} exceeded {}s", limit.as_secs()),
            elapsed < limit,
        );
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn seed_orbits() -> Vec<PolynomialOrbit> {
    data::seeds().iter().map(|f| orbit(f, 3).unwrap()).collect()
}

fn membership() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    for (i, f) in data::seeds().iter().enumerate() {
        o.expect(&format!("f{} accepted", i + 1), accepted(f));
    }
    o.expect(
        "singleton rejected",
        !accepted(&data::poly(3, data::SINGLETON_REJECT)),
    );
    o.within("runtime", start.elapsed(), MEMBERSHIP_LIMIT);
    o
}

fn dimensions() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    o.expect_eq("dim(5,3)", 77, image_dimension(5, 3).unwrap());
    o.within("(5,3)", start.elapsed(), DIMENSION_5_3_LIMIT);
    o.expect_eq("dim(4,3)", 32, image_dimension(4, 3).unwrap());
    o.expect_eq("dim(2,2)", 1, image_dimension(2, 2).unwrap());
    // (-1)^3 + (-1)^2 * 7 + (-1)^1 * 7*6/2 + (-1)^0 * 7*6*4/6 = -1 + 7 - 21 + 28
    o.expect_eq("dim(3,3)", 13, image_dimension(3, 3).unwrap());
    for k in 2..=4 {
        for n in 1..k {
            o.expect_eq(&format!("dim({n},{k})"), 0, image_dimension(n, k).unwrap());
        }
    }
    o
}

fn orbits_and_stabilizers() -> Outcome {
    let mut o = Outcome::new();
    let orbits = seed_orbits();
    let gl3 = enumerate_gl(3).unwrap();
    let shapes: [fn(&Gf2Matrix) -> bool; 4] = [
        data::f1_stabilizer_shape,
        data::f2_stabilizer_shape,
        data::f3_stabilizer_shape,
        data::f4_stabilizer_shape,
    ];
    for (i, size) in [7, 28, 42, 28].into_iter().enumerate() {
        o.expect_eq(&format!("|orbit(f{})|", i + 1), size, orbits[i].len());
        let expected: BTreeSet<&Gf2Matrix> = gl3.iter().filter(|a| shapes[i](a)).collect();
        let computed: BTreeSet<&Gf2Matrix> = orbits[i].stabilizer.iter().collect();
        o.expect(
            &format!("stabilizer of f{} has the predicted shape", i + 1),
            expected == computed,
        );
    }
    let explicit: BTreeSet<Gf2Matrix> = data::f4_stabilizer().into_iter().collect();
    let computed: BTreeSet<Gf2Matrix> = orbits[3].stabilizer.iter().cloned().collect();
    o.expect(
        "stabilizer of f4 is the six listed matrices",
        explicit == computed,
    );
    o
}

fn span_ladder() -> Outcome {
    let mut o = Outcome::new();
    let orbits = seed_orbits();
    let mut union: Vec<&Polynomial> = Vec::new();
    for (i, expected) in [7, 35, 56, 77].into_iter().enumerate() {
        union.extend(&orbits[i].elements);
        o.expect_eq(
            &format!("span(P1..P{})", i + 1),
            expected,
            span_dimension(union.iter().copied()).unwrap(),
        );
    }
    let f2: Vec<Polynomial> = data::F2_VARIANTS.iter().map(|s| data::poly(3, s)).collect();
    let f3: Vec<Polynomial> = data::F3_VARIANTS.iter().map(|s| data::poly(3, s)).collect();
    let f4: Vec<Polynomial> = data::F4_VARIANTS.iter().map(|s| data::poly(3, s)).collect();
    o.expect(
        "variants lie in their orbits",
        f2.iter().all(|p| orbits[1].contains(p))
            && f3.iter().all(|p| orbits[2].contains(p))
            && f4.iter().all(|p| orbits[3].contains(p)),
    );
    let sum = |ps: &[&Polynomial]| {
        ps.iter()
            .fold(Polynomial::zero(3, 5), |acc, p| acc.add(p).unwrap())
    };
    o.expect(
        "f3,4 = f3,1 + f3,2 + f3,3",
        f3[3] == sum(&[&f3[0], &f3[1], &f3[2]]),
    );
    o.expect("f3,5 = f3,2 + f3,3", f3[4] == sum(&[&f3[1], &f3[2]]));
    o.expect("f3,6 = f3,1 + f3,2", f3[5] == sum(&[&f3[0], &f3[1]]));
    o.expect(
        "f4,4 = f4,1 + f4,2 + f4,3 + f2,1 + f2,2 + f2,3 + f2,4",
        f4[3] == sum(&[&f4[0], &f4[1], &f4[2], &f2[0], &f2[1], &f2[2], &f2[3]]),
    );
    o
}

fn generating_set() -> Outcome {
    let mut o = Outcome::new();
    let system = build_constraint_system(5, 3).unwrap();
    let null = system.solution_space();
    let generators: Vec<_> = seed_orbits()
        .iter()
        .flat_map(|orb| {
            orb.elements
                .iter()
                .map(|p| system.indicator(p).unwrap())
                .collect::<Vec<_>>()
        })
        .collect();
    let span = Subspace::from_spanning(system.monomials.len(), &generators).unwrap();
    o.expect_eq("dim span", null.dim(), span.dim());
    o.expect("span inside nullspace", span.is_subspace_of(&null));
    o.expect("nullspace inside span", null.is_subspace_of(&span));
    o.expect(
        "every generator satisfies the system",
        generators.iter().all(|g| system.satisfies(g)),
    );
    o
}

fn covers_and_families() -> Outcome {
    let mut o = Outcome::new();
    let orbits = seed_orbits();
    for (d, target, count) in [(&PRODUCT_1X4, 2usize, 10usize), (&PRODUCT_2X3, 3, 12)] {
        let cf = d.characteristic();
        let mut computed: Vec<_> = tangent_reps(&cf)
            .unwrap()
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        computed.sort();
        let printed: Vec<_> = d.tangent_polynomial().iter().cloned().collect();
        o.expect_eq(&format!("{} tangent count", d.name), count, computed.len());
        o.expect(&format!("{} tangent list", d.name), computed == printed);
        let h = d.subgroup_space();
        let basis = d.subgroup_basis();
        o.expect(
            &format!("{} subgroup admissible", d.name),
            is_admissible(&cf, &h),
        );
        let r = restricted_polynomial(&cf, &h, &basis).unwrap();
        o.expect(
            &format!("{} restriction in orbit(f{})", d.name, target + 1),
            orbits[target].contains(&r),
        );
        let printed = Polynomial::from_monomials(
            3,
            5,
            d.restricted_representatives()
                .iter()
                .map(|m| restrict_monomial(m, &h, &basis).unwrap()),
        )
        .unwrap();
        o.expect(&format!("{} restricted list", d.name), printed == r);
    }
    for (i, sets) in [data::MILNOR_F1_SETS, data::MILNOR_F2_SETS]
        .into_iter()
        .enumerate()
    {
        let p = milnor_fixed_polynomial(2, 4, &data::milnor_family(sets)).unwrap();
        o.expect(
            &format!("H_2,4 family {sets} gives f{}", i + 1),
            p == data::seeds()[i],
        );
    }
    o
}

fn delta5() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let cf = data::simplex_5();
    let subspaces = enumerate_subspaces(5, 3).unwrap();
    o.expect_eq("rank-3 subspaces", 155, subspaces.len());
    let mut admissible = 0;
    let mut isolated_nonzero = Vec::new();
    for h in subspaces.iter().filter(|h| is_admissible(&cf, h)) {
        admissible += 1;
        if let Ok(p) = restricted_polynomial(&cf, h, h.basis()) {
            if !p.is_zero() {
                isolated_nonzero.push(h.clone());
            }
        }
    }
    o.notes.push(format!("{admissible} admissible"));
    o.expect_eq("isolated nonzero restrictions", 0, isolated_nonzero.len());
    o.within("runtime", start.elapsed(), DELTA5_LIMIT);
    o
}

fn milnor_search() -> Outcome {
    let mut o = Outcome::new();
    let orbits = seed_orbits();
    let start = Instant::now();
    let report = search_orbit_hits(2, 4, 3, &orbits).unwrap();
    o.within("runtime", start.elapsed(), MILNOR_SEARCH_LIMIT);
    o.expect_eq("families", 840, report.families_examined);
    for (i, expected) in [true, true, false, false].into_iter().enumerate() {
        o.expect_eq(&format!("hit f{}", i + 1), expected, report.hit(i));
    }
    o
}

fn property_suites() -> Outcome {
    let mut o = Outcome::new();
    let mut clock = Instant::now();
    let mut lap = |o: &mut Outcome, what: &str| {
        o.notes
            .push(format!("{what} {:.1}s", clock.elapsed().as_secs_f64()));
        clock = Instant::now();
    };
    let gl3 = enumerate_gl(3).unwrap();

    let mut subjects: Vec<Polynomial> = data::seeds().to_vec();
    subjects.extend(random_rejects(7, 5, 3, 20));
    let mut equivariant = true;
    for p in &subjects {
        let v = accepted(p);
        equivariant &= gl3
            .iter()
            .all(|a| accepted(&p.apply_automorphism(a).unwrap()) == v);
    }
    o.expect(
        "membership is GL(3,2)-equivariant on 24 polynomials",
        equivariant,
    );
    lap(&mut o, "equivariance");

    let system = build_constraint_system(3, 2).unwrap();
    let width = system.monomials.len();
    let mut agree = true;
    for code in 0..1u64 << width {
        let p = system.polynomial(&z2k::Gf2Vector::from_index(width, code));
        let direct = accepted(&p);
        agree &= direct == system.satisfies(&system.indicator(&p).unwrap())
            && direct == oracle_accepts(&p);
    }
    o.expect(
        &format!("checker = linear system = oracle on all 2^{width} subsets at (3,2)"),
        agree,
    );
    lap(&mut o, "exhaustive (3,2)");

    let system = build_constraint_system(5, 3).unwrap();
    let monomials = enumerate_faithful_monomials(5, 3).unwrap();
    let mut r = rng(11);
    let mut agree = true;
    let mut accepted_count = 0;
    let mut samples: Vec<Polynomial> = (0..RANDOM_SUBSETS_5_3)
        .map(|_| random_subset(&mut r, &monomials, 3, 5))
        .collect();
    samples.extend(random_image_elements(12, 5, 3, 200));
    for p in &samples {
        let direct = accepted(p);
        accepted_count += direct as usize;
        agree &= direct == system.satisfies(&system.indicator(p).unwrap());
    }
    o.expect(
        &format!(
            "checker = linear system on {} samples at (5,3)",
            samples.len()
        ),
        agree,
    );
    o.expect(
        "samples include accepted polynomials",
        accepted_count >= 200,
    );
    lap(&mut o, "random (5,3)");

    for (dims, pin) in [
        (vec![2], false),
        (vec![1, 1], false),
        (vec![1, 4], true),
        (vec![2, 3], true),
    ] {
        let polytope = ProductOfSimplices::new(dims).unwrap();
        let covers = common::characteristic_functions(&polytope, pin);
        o.notes
            .push(format!("{} covers over {}", covers.len(), polytope.name()));
        o.expect(
            &format!("covers exist over {}", polytope.name()),
            !covers.is_empty(),
        );
        o.expect(
            &format!("fixed polynomials accepted over {}", polytope.name()),
            covers
                .iter()
                .all(|cf| accepted(&fixed_polynomial(cf).unwrap())),
        );
    }
    lap(&mut o, "small covers");

    let mut subjects: Vec<Polynomial> = data::seeds().to_vec();
    subjects.extend(random_rejects(13, 5, 3, 20));
    subjects.extend(random_image_elements(14, 5, 3, 20));
    subjects.extend(random_rejects(15, 4, 3, 10));
    o.expect(
        "|orbit| * |stabilizer| = 168",
        subjects.iter().all(|p| {
            let orb = orbit(p, 3).unwrap();
            orb.len() * orb.stabilizer.len() == gl_order(3) as usize
        }),
    );
    lap(&mut o, "orbit-stabilizer");
    o
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("membership", membership),
        ("dimension", dimensions),
        ("orbits", orbits_and_stabilizers),
        ("span ladder", span_ladder),
        ("generating set", generating_set),
        ("covers and families", covers_and_families),
        ("delta5 impossibility", delta5),
        ("milnor search", milnor_search),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let mut line = format!(
            "criterion {} {name}: {status} [{:.3}s]",
            i + 1,
            start.elapsed().as_secs_f64()
        );
        if !o.notes.is_empty() {
            line.push_str(&format!(" ({})", o.notes.join(", ")));
        }
        println!("{line}");
        for f in &o.failures {
            println!("    {f}");
        }
        failed += !o.failures.is_empty() as usize;
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
