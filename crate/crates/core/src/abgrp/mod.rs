//! Calculus of Z/2-graded finitely generated modules over localizations of
//! Z: canonical forms, Smith normal form, Künneth, localization at
//! supernatural numbers, colimits, coinvariants, pushouts.

mod ab;
mod homology;
mod kunneth;
mod matrix;
mod supernatural;
mod unit;

pub use ab::{Ab, GradedAb, PrimeSet};
pub use homology::{
    coinvariants, coinvariants_graded, colimit, pushout, Arrow, Diagram, PushoutSquare,
};
pub use kunneth::{kunneth, kunneth_power};
pub use matrix::{smith_normal_form, IntMatrix, IntMatrixJson, Smith};
pub use supernatural::{Exponent, Supernatural};
pub use unit::unit_power_vanishes;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
