//! Exact-arithmetic toolkit for deciding when a hyperbolic toral automorphism
//! admits a C¹-open neighbourhood of Anosov diffeomorphisms with trivial
//! centralizer.
//!
//! Given an integer matrix `A ∈ GL(n,ℤ)` with `2 ≤ n ≤ 4`, the [`certifier`]
//! module chains exact checks — irreducibility and hyperbolicity of the
//! characteristic polynomial, unit-rank of the associated number field,
//! the structure of the matrix centralizer `C(A)`, torsion order, and
//! periodic-point counts against the `2^n` threshold — into a machine-checkable
//! [`certifier::Certificate`] with an Applicable / Inapplicable / Indeterminate
//! verdict.
//!
//! Everything that decides a verdict is computed in exact integer or rational
//! arithmetic. Floating point appears only as a search guide (root
//! approximation, lattice rounding) and every numerically guessed object is
//! verified exactly before it is used.

pub mod bigfloat;
pub mod centralizer;
pub mod certifier;
pub mod intmat;
pub mod numfield;
pub mod periodic;
pub mod polyalg;
