// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic for genus-2 curves over Q, from the invariants of a binary sextic
//! up to the curve databases keyed by moduli point.
//!
//! Sextics are stored as a0..a6 with f(x, z) = a0 x^6 + a1 x^5 z + ... + a6 z^6.

// index loops read closer to the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod classify;
pub mod conic;
pub mod db;
pub mod error;
pub mod factor;
pub mod heights;
pub mod invariants;
pub mod poly;
pub mod reconstruct;
pub mod serde_rat;
mod tables;

pub use arith::{frac, parse_rat, rat, BinarySextic, Mobius, Rat};
pub use classify::{
    classify, classify_uv, dihedral_uv_from_key, dihedral_uv_from_standard, key_from_invariants, key_to_invariants,
    moduli_key, AutGroup, DihedralInvariants, ModuliKey,
};
pub use conic::{solve_conic, ConicSolution};
pub use db::{build_l1, build_l2, build_l3, query, stats, Database, DbEntry, StatsTable};
pub use error::{Error, Result};
pub use heights::{
    minimal_discriminant, minimal_height, moduli_height, reduce_at_prime, v4_minimal_model, HeightReport,
    MinimalHeight, ModuliHeight,
};
pub use invariants::{
    absolute_i, clebsch, igusa, j16, j30, t_invariants, AbsoluteInvariants, ClebschVector, InvariantVector, TInvariants,
};
pub use reconstruct::{
    build_conic_cubic, rationality_obstruction, reconstruct, twist_set, ConicCubic, FieldKind, FieldOfDefinition,
    Reconstruction, Route,
};
