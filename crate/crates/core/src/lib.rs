//! Exact computation with higher-dimensional continued fraction systems over
//! explicit lattices.
//!
//! A system is built from four pieces of data: an ambient space `R^d`, an
//! inversion `x -> O(x)/|x|^2` for an orthogonal involution `O`, a lattice of
//! translations, and a fundamental domain `K` (the Dirichlet cell of the
//! lattice, or a perturbed box). The continued fraction map is
//! `T x = inv(x) - [inv(x)]`, where `[.]` rounds to the nearest lattice point.
//!
//! The crate has two arithmetic regimes:
//!
//! * **Exact**: coordinates live in a real quadratic field `Q(sqrt(D))` with
//!   arbitrary-precision rational components ([`scalar::QExt`]). Everything
//!   the certification engine touches (lattice reduction, hyperplane-and-sphere
//!   calculus, boundary-orbit iteration) runs here, so that stabilization of
//!   the boundary orbit is a genuine fixed point and not a float artifact.
//! * **Numerical**: `f64` orbits and Monte-Carlo sampling for invariant
//!   density estimation ([`density`]), plus a high-precision interval backend
//!   ([`cf::interval`]) for one-dimensional orbits of non-quadratic numbers.
//!
//! The headline operation is [`serendipity::iterate_boundary`]: it pushes the
//! boundary of `K` forward through the CF map at the level of
//! hyperplane-and-sphere supports and reports whether the orbit stabilizes
//! after finitely many rounds, how the supports classify into the closed
//! type-1..5 families, and how many connected components the complement keeps.

pub mod algebra;
pub mod cf;
pub mod density;
pub mod exec;
pub mod has;
pub mod lattice;
pub mod scalar;
pub mod serendipity;

pub use algebra::{DivisionAlgebra, InversionKind, InversionSpec, Matrix, Vector};
pub use lattice::{LatticeSpec, PropertyReport};
pub use scalar::QExt;
