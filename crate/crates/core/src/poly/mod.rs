//! Sparse polynomials over `ZZ` or `GF(p)` in the skein-coefficient variables.

mod groebner;
mod monomial;
mod polynomial;
mod text;
mod var;

pub use groebner::{buchberger, is_prime, GroebnerBasis, GroebnerStats, Progress, VarLayout, MAX_VARS};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{Domain, PolyJson, Polynomial, TermJson};
pub use var::{Letter, Var, VarKind};
