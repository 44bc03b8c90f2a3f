//! Exact-arithmetic computations with binary forms: apolar ideals and their
//! two coprime generators, Waring and cactus ranks, the duality between
//! contraction and transposed multiplication, and the fiber dimensions and
//! strata of the moduli space of framed non-degenerate rank-2 affine bundles
//! over the projective line.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point and no tolerance anywhere. All values are pure functions of
//! their inputs (plus an explicit seed for the sampling helpers), so they are
//! safe to share and send between threads.

pub mod apolarity;
pub mod cli;
pub mod duality;
pub mod form;
pub mod linalg;
pub mod moduli;
pub mod parse;
pub mod rational;
pub mod sample;
pub mod verify;

pub use apolarity::{
    ann_dim, cactus_rank, catalecticant, is_power, sylvester_generators, waring_rank,
    ApolarProfile, Catalecticant,
};
pub use duality::{cokernel_dim, duality_holds, transpose_mult, DualVector};
pub use form::{apolar_apply, gcd_forms, BinaryForm, LinearSubstitution};
pub use linalg::{solve_membership, RationalMatrix};
pub use moduli::{
    act, census, describe, fiber_dim, quartic_invariants, quartic_stratum, small_l_strata,
    stratum_membership, BlockMatrix, H1Element, ModuliDescriptor, SplittingType, StratumLabel,
};
pub use parse::{parse_form, render_form};
pub use rational::Rational;
