//! Exact-arithmetic computation of invariant polynomials, p-integral
//! K-theory generators, Adams operation matrices, and v1-periodic homotopy
//! groups for the modular reflection groups G29 and G31 at p = 5 and G34
//! at p = 7, together with a static catalog of the non-modular homotopy
//! type decompositions.
//!
//! Everything is computed over exact rationals (or the cyclotomic fields
//! Q(i), Q(omega) where the group data requires it); there is no floating
//! point anywhere. Independent computation routes cross-check each other:
//! orbit products against literal monomial expansion, closed-form
//! invariants against lattice power sums, and unit-pivot reductions
//! against integer Smith normal form.

pub mod error;
pub mod exact;
pub mod integrality;
pub mod invariants;
pub mod solve;
pub mod sympoly;

pub use error::Error;
