//! Finite quotients of `F3 = ker φ`: the group `P = F3 / F3^{2ℓ} γ_ℓ(F3)`,
//! its `G`-invariant subgroup `M̄` generated by `x1^ℓ`, and the resulting
//! finite model of `G/M`.

mod machine;
mod pgroup;

pub use machine::{evaluation_check, verify_ball_intersection, MachineSummary, QuotientMachine};
pub use pgroup::{invariant_closure, AutoMap, PElement, PGroup};
