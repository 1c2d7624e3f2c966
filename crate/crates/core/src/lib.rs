//! Exact classification and numeric decay measurement for degenerate oscillatory
//! integral operators T_λ f(x) = ∫ e^{iλΦ(x,z)} σ(x,z) f(z) dz and their relatives.

pub mod brackets;
pub mod degeneracy;
pub mod experiments;
pub mod numerics;
pub mod symcore;
