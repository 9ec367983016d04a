//! Reference data shipped with the binary, in index notation
//! (`"1^2 2 3 123"` is `ρ1²ρ2ρ3ρ123`).

use std::fs;
use std::io;
use std::path::Path;

use crate::gf2::{Gf2Matrix, Gf2Vector, Subspace};
use crate::milnor::SubsetFamily;
use crate::rep::{polynomial_from_notation, render_polynomial, Polynomial};
use crate::small_cover::{CharacteristicFunction, ProductOfSimplices};

pub const F1: &str = "1^2 2 3 123 + 1^2 2 13 23 + 1^2 12 3 23 + 1^2 12 13 123";
pub const F2: &str =
    "1^2 2^2 3 + 1^2 12^2 3 + 12^2 2^2 3 + 1 13 2 23 3 + 1 13 12 123 3 + 12 123 2 23 3";
pub const F3: &str = "1^2 2 3 23 + 1^2 2 13 123 + 1^2 12 3 23 + 1^2 12 13 123 + 1 2 3 12 23 \
    + 1 2 3 13 23 + 1 2 3 23 123 + 1 2 12 13 123 + 1 2 3 13 123 + 1 2 13 23 123";
pub const F4: &str = "1^2 2 12 3 + 1^2 2^2 3 + 1^2 2 12 13 + 1^2 12^2 13 + 2^2 1 12 3 \
    + 2^2 1 12 23 + 2^2 12^2 23 + 12^2 1 2 13 + 12^2 1 2 23 + 1 2 3 13 23 + 1 3 12 13 23 \
    + 2 3 12 13 23";

/// Images of `f2` whose support covers the four `ρ3`-type cubes.
pub const F2_VARIANTS: [&str; 4] = [
    "1^2 2^2 3 + 1^2 12^2 3 + 12^2 2^2 3 + 1 13 2 23 3 + 1 13 12 123 3 + 12 123 2 23 3",
    "1^2 2^2 13 + 1^2 12^2 13 + 12^2 2^2 13 + 1 3 2 123 13 + 1 3 12 23 13 + 12 23 2 123 13",
    "1^2 2^2 23 + 1^2 12^2 23 + 12^2 2^2 23 + 1 123 2 3 23 + 1 123 12 13 23 + 12 13 2 3 23",
    "1^2 2^2 123 + 1^2 12^2 123 + 12^2 2^2 123 + 1 23 2 13 123 + 1 23 12 3 123 + 12 3 2 13 123",
];

/// The six images of `f3` containing a `ρ1²` monomial.
pub const F3_VARIANTS: [&str; 6] = [
    "1^2 2 3 23 + 1^2 2 13 123 + 1^2 12 3 23 + 1^2 12 13 123 + 1 2 3 12 23 + 1 2 3 13 23 \
     + 1 2 3 23 123 + 1 2 12 13 123 + 1 2 3 13 123 + 1 2 13 23 123",
    "1^2 3 2 23 + 1^2 3 12 123 + 1^2 13 2 23 + 1^2 13 12 123 + 1 2 3 13 23 + 1 2 3 12 23 \
     + 1 2 3 23 123 + 1 3 12 13 123 + 1 2 3 12 123 + 1 3 12 23 123",
    "1^2 12 3 123 + 1^2 12 13 23 + 1^2 2 3 123 + 1^2 2 13 23 + 1 12 3 2 123 + 1 12 3 13 123 \
     + 1 12 3 123 23 + 1 12 2 13 23 + 1 12 3 13 23 + 1 12 13 123 23",
    "1^2 13 2 123 + 1^2 13 12 23 + 1^2 3 2 123 + 1^2 3 12 23 + 1 13 2 3 123 + 1 13 2 12 123 \
     + 1 13 2 123 23 + 1 13 3 12 23 + 1 13 2 12 23 + 1 13 12 123 23",
    "1^2 23 3 2 + 1^2 23 13 12 + 1^2 123 3 2 + 1^2 123 13 12 + 1 23 3 123 2 + 1 23 3 13 2 \
     + 1 23 3 2 12 + 1 23 123 13 12 + 1 23 3 13 12 + 1 23 13 2 12",
    "1^2 123 3 12 + 1^2 123 13 2 + 1^2 23 3 12 + 1^2 23 13 2 + 1 123 3 23 12 + 1 123 3 13 12 \
     + 1 123 3 12 2 + 1 123 23 13 2 + 1 123 3 13 2 + 1 123 13 12 2",
];

pub const F4_VARIANTS: [&str; 4] = [
    "1^2 2 12 3 + 1^2 2^2 3 + 1^2 2 12 13 + 1^2 12^2 13 + 2^2 1 12 3 + 2^2 1 12 23 \
     + 2^2 12^2 23 + 12^2 1 2 13 + 12^2 1 2 23 + 1 2 3 13 23 + 1 3 12 13 23 + 2 3 12 13 23",
    "1^2 2 12 13 + 1^2 2^2 13 + 1^2 2 12 3 + 1^2 12^2 3 + 2^2 1 12 13 + 2^2 1 12 123 \
     + 2^2 12^2 123 + 12^2 1 2 3 + 12^2 1 2 123 + 1 2 13 3 123 + 1 13 12 3 123 + 2 13 12 3 123",
    "1^2 2 12 23 + 1^2 2^2 23 + 1^2 2 12 123 + 1^2 12^2 123 + 2^2 1 12 23 + 2^2 1 12 3 \
     + 2^2 12^2 3 + 12^2 1 2 123 + 12^2 1 2 3 + 1 2 23 123 3 + 1 23 12 123 3 + 2 23 12 123 3",
    "1^2 2 12 123 + 1^2 2^2 123 + 1^2 2 12 23 + 1^2 12^2 23 + 2^2 1 12 123 + 2^2 1 12 13 \
     + 2^2 12^2 13 + 12^2 1 2 23 + 12^2 1 2 13 + 1 2 123 23 13 + 1 123 12 23 13 \
     + 2 123 12 23 13",
];

/// The singleton that no action realizes.
pub const SINGLETON_REJECT: &str = "1^3 2 3";

/// The six automorphisms fixing `f4`, row-major bit strings.
pub const F4_STABILIZER: [[&str; 3]; 6] = [
    ["100", "010", "001"],
    ["010", "100", "001"],
    ["100", "110", "101"],
    ["110", "100", "101"],
    ["010", "110", "011"],
    ["110", "010", "011"],
];

/// Shape predicates for the stabilizers of `f1`, `f2`, `f3`.
pub fn f1_stabilizer_shape(a: &Gf2Matrix) -> bool {
    a.row(0).to_string() == "100"
}

pub fn f2_stabilizer_shape(a: &Gf2Matrix) -> bool {
    a.row(2).to_string() == "001" && !a.get(0, 2) && !a.get(1, 2)
}

pub fn f3_stabilizer_shape(a: &Gf2Matrix) -> bool {
    a.row(0).to_string() == "100" && a.row(1).to_string() == "010" && a.get(2, 2)
}

pub fn f4_stabilizer_shape(a: &Gf2Matrix) -> bool {
    F4_STABILIZER.iter().any(|rows| {
        rows.iter()
            .enumerate()
            .all(|(i, r)| a.row(i).to_string() == *r)
    })
}

/// A characteristic function and a subgroup whose restricted action has
/// isolated fixed points.
pub struct CoverData {
    pub name: &'static str,
    pub factor_dims: &'static [usize],
    /// Rows of the characteristic matrix; columns are facets in printed order.
    pub lambda: &'static [&'static str],
    pub subgroup: &'static [&'static str],
    pub subgroup_perp: &'static [&'static str],
    /// Tangent representations at the fixed points, rank 5.
    pub tangent: &'static str,
    /// The restricted tangent data, each factor written as a coset
    /// representative in rank 5.
    pub restricted: &'static str,
}

pub const PRODUCT_1X4: CoverData = CoverData {
    name: "delta1x4",
    factor_dims: &[1, 4],
    lambda: &["1010001", "0110001", "0001001", "0000101", "0000011"],
    subgroup: &["01111", "11010", "11001"],
    subgroup_perp: &["11100", "10011", "01111"],
    tangent: "2 23 24 25 12 + 3 23 34 35 12 + 4 24 34 45 12 + 5 25 35 45 12 + 2 3 4 5 12 \
        + 1 13 14 15 12 + 3 13 34 35 12 + 4 14 34 45 12 + 5 15 35 45 12 + 1 3 4 5 12",
    restricted: "2 1 125 25 12 + 12^2 1 25 125 + 15 125 25 1 12 + 5 25 125 1 12 + 2 12^2 15 5 \
        + 1 2 5 15 12 + 12^2 2 25 125 + 15 5 25 1 12 + 5 15 125 1 12 + 1 12^2 15 5",
};

pub const PRODUCT_2X3: CoverData = CoverData {
    name: "delta2x3",
    factor_dims: &[2, 3],
    lambda: &["1011001", "0111001", "0001001", "0000101", "0000011"],
    subgroup: &["01111", "01010", "11100"],
    subgroup_perp: &["11010", "10101", "01111"],
    tangent: "5 23 3 4 13 + 5 23 3 4 12 + 5 13 3 4 12 + 5 23 35 45 13 + 5 23 35 45 12 \
        + 5 13 35 45 12 + 4 23 34 45 13 + 4 23 34 45 12 + 4 13 34 45 12 + 3 23 34 35 13 \
        + 3 23 34 35 12 + 3 13 34 35 12",
    restricted: "13^2 23 3 12 + 13 23 3 12^2 + 13^2 3 12^2 + 13^2 23^2 1 + 13 23^2 1 12 \
        + 13^2 1 23 12 + 12 23^2 123 13 + 12^2 23^2 123 + 12^2 13 123 23 + 3 23 123 1 13 \
        + 3 23 123 1 12 + 3 13 123 1 12",
};

pub const SIMPLEX_5_LAMBDA: [&str; 5] = ["100001", "010001", "001001", "000101", "000011"];
pub const SIMPLEX_5_TANGENT: &str =
    "1 2 3 4 5 + 1 12 13 14 15 + 2 12 23 24 25 + 3 13 23 34 35 + 4 14 24 34 45 + 5 15 25 35 45";

/// Subset families realizing `f1` and `f2` on `H_{2,4}` over rank 3.
pub const MILNOR_F1_SETS: &str = "2;12;23;123";
pub const MILNOR_F2_SETS: &str = "1;2;12;123";

pub fn poly(rank: usize, notation: &str) -> Polynomial {
    polynomial_from_notation(rank, notation).expect("embedded data is well formed")
}

pub fn f1() -> Polynomial {
    poly(3, F1)
}

pub fn f2() -> Polynomial {
    poly(3, F2)
}

pub fn f3() -> Polynomial {
    poly(3, F3)
}

pub fn f4() -> Polynomial {
    poly(3, F4)
}

pub fn seeds() -> [Polynomial; 4] {
    [f1(), f2(), f3(), f4()]
}

pub fn f4_stabilizer() -> Vec<Gf2Matrix> {
    F4_STABILIZER
        .iter()
        .map(|rows| Gf2Matrix::from_bit_rows(rows).expect("embedded data is well formed"))
        .collect()
}

fn vectors(rows: &[&str]) -> Vec<Gf2Vector> {
    rows.iter()
        .map(|r| r.parse().expect("embedded data is well formed"))
        .collect()
}

impl CoverData {
    pub fn characteristic(&self) -> CharacteristicFunction {
        let p = ProductOfSimplices::new(self.factor_dims.to_vec())
            .expect("embedded data is well formed");
        let m = Gf2Matrix::from_bit_rows(self.lambda).expect("embedded data is well formed");
        CharacteristicFunction::from_matrix(p, &m).expect("embedded data is well formed")
    }

    pub fn subgroup_basis(&self) -> Vec<Gf2Vector> {
        vectors(self.subgroup)
    }

    pub fn subgroup_space(&self) -> Subspace {
        Subspace::from_spanning(5, &self.subgroup_basis()).expect("embedded data is well formed")
    }

    pub fn subgroup_perp_space(&self) -> Subspace {
        Subspace::from_spanning(5, &vectors(self.subgroup_perp))
            .expect("embedded data is well formed")
    }

    pub fn tangent_polynomial(&self) -> Polynomial {
        poly(5, self.tangent)
    }

    /// The printed restricted list, still in rank 5.
    pub fn restricted_representatives(&self) -> Polynomial {
        poly(5, self.restricted)
    }
}

pub fn simplex_5() -> CharacteristicFunction {
    let p = ProductOfSimplices::new(vec![5]).expect("positive dimension");
    let m = Gf2Matrix::from_bit_rows(&SIMPLEX_5_LAMBDA).expect("embedded data is well formed");
    CharacteristicFunction::from_matrix(p, &m).expect("embedded data is well formed")
}

pub fn milnor_family(sets: &str) -> SubsetFamily {
    SubsetFamily::parse(3, sets).expect("embedded data is well formed")
}

/// Writes every embedded input as a file in `dir`, in the formats the CLI
/// reads. Returns the file names written.
pub fn emit_data(dir: &Path) -> io::Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut files: Vec<(String, String)> = Vec::new();
    for (i, p) in seeds().iter().enumerate() {
        files.push((format!("f{}.poly", i + 1), render_polynomial(p)));
    }
    files.push((
        "singleton.poly".into(),
        render_polynomial(&poly(3, SINGLETON_REJECT)),
    ));
    for c in [&PRODUCT_1X4, &PRODUCT_2X3] {
        files.push((format!("{}.lambda", c.name), c.characteristic().export()));
        files.push((
            format!("{}.subgroup", c.name),
            c.subgroup.iter().map(|r| format!("{r}\n")).collect(),
        ));
    }
    files.push(("delta5.lambda".into(), simplex_5().export()));
    files.push(("milnor_f1.sets".into(), format!("{MILNOR_F1_SETS}\n")));
    files.push(("milnor_f2.sets".into(), format!("{MILNOR_F2_SETS}\n")));
    for (name, body) in &files {
        fs::write(dir.join(name), body)?;
    }
    Ok(files.into_iter().map(|(n, _)| n).collect())
}
