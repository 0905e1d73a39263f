//! Braid closures, the Hecke algebra with its Markov trace, central
//! idempotents and colored HOMFLY invariants.

mod braid;
mod colored;
mod hecke;
mod idempotent;
mod perm;
mod qpoly;

pub use braid::{cable, closure_analysis, BraidWord, LinkPresentation};
pub use colored::{
    colored_framed, colored_invariant, colored_invariant_of, framed_closure, framed_power_sum, framing_factor,
    ColoredLink,
};
pub use hecke::{hecke_mul, homfly, markov_trace, represent, trace_parameter, unknot_value, HeckeElement};
pub use idempotent::{
    central_idempotent, eigenvalue, idempotents, separator, CentralIdempotent, Separator, MAX_IDEMPOTENT_LEVEL,
};
pub use perm::MAX_STRANDS;
pub use qpoly::QPoly;

/// Names the Hecke, trace and framing conventions behind every colored
/// invariant. Change it whenever any of them changes: stored values keyed
/// by it become stale.
pub const CONVENTION_TAG: &str = "hecke g^2=zg+1 z=q^1/2-q^-1/2; unknot (t^1/2-t^-1/2)/z; self-writhe framing; v1";
