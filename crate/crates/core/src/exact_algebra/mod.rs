//! Exact scalars and polynomials.

mod cyclo;
mod mpoly;
mod rat;
mod ratfunc;
mod ring;
mod upoly;

pub use cyclo::CycloNum;
pub use mpoly::MPoly;
pub use rat::{binom_general, binom_rat, factorial, Rat};
pub use ratfunc::{ratfunc_reconstruct, RatFunc};
pub use ring::Ring;
pub use upoly::{cyclotomic_poly, euler_phi, UPoly};
