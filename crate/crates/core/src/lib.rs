//! Presentation ideals of symmetric, Rees and (embedded) Aluffi algebras of
//! modules over polynomial rings with exact rational coefficients, together
//! with the structural verdicts (Pfaffian Rees presentations, Gorenstein and
//! Cohen-Macaulay detection, linear-type and fiber-type criteria, dimension
//! formulas) at desk scale.

pub mod error;
pub mod ring;
pub mod parse;
pub mod matrix;
pub mod groebner;
pub mod invariants;
pub mod blowup;
pub mod aluffi;
pub mod derivations;

pub use error::{Error, Result};
pub use ring::{Coef, Mono, MonomialOrder, Poly, PolyRing};
