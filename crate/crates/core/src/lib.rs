//! Exact GF(2) computations on the fixed-point data of `(Z/2)^k`-manifolds
//! with isolated fixed points: membership in the image of the Stong
//! homomorphism, image dimensions, `GL(k, 2)` orbits, labeled graphs,
//! small covers and Milnor hypersurfaces.

pub mod cli;
pub mod data;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod membership;
pub mod milnor;
pub mod orbit;
pub mod rep;
pub mod report;
pub mod small_cover;

pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector, Subspace};
pub use graph::{labeling_polynomial, projective_space_graph, validate_graph, LabeledGraph};
pub use membership::{check_membership, image_dimension, MembershipCertificate, Verdict};
pub use milnor::{milnor_fixed_polynomial, search_orbit_hits, SubsetFamily};
pub use orbit::{orbit, span_dimension, verify_generating_set, PolynomialOrbit};
pub use rep::{IrrRep, Monomial, Polynomial};
pub use small_cover::{
    admissible_subgroups, fixed_polynomial, restricted_polynomial, tangent_reps,
    validate_characteristic, CharacteristicFunction, ProductOfSimplices,
};
