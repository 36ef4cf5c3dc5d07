//! Exact bracket decompositions in current Lie algebras `g ⊗ k[t]` and
//! `g ⊗ k[t]/(t^N)` for classical simple `g`.
//!
//! All arithmetic is over the rationals. Rank computations are exact, and a
//! rank over Q is the same over any extension field, so the certificates
//! produced here remain valid over an algebraically closed field.

pub mod almost_commuting;
pub mod current;
pub mod error;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod random;
pub mod selftest;
pub mod width;

pub use almost_commuting::{
    group_act, sim_triangularizable, sp_square, torus_limit, ACTuple, Flavor, TorusLimit,
};
pub use current::Current;
pub use error::{Error, Result};
pub use lie::{AlgebraId, Elem, Family, LieAlg, Subspace};
pub use linalg::{Matrix, Rational, Vector};
pub use width::{
    obstruction_campaign, single_bracket_solve, spanning_pair, star_seed, two_bracket_decompose,
    CampaignConfig, ObstructionReport, SingleBracket, SpanningPair, StarSeed,
};
