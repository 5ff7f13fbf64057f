//! Exact arithmetic over GF(2), GF(4), GF(2)[D, D^-1] and GF(2)(D).

pub mod gf2;
pub mod gf4;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod smith;

use std::fmt;

pub use gf4::{Gf4, Gf4Matrix, Gf4Poly};
pub use matrix::{rank_ff, rank_rational, rowspace_eq, rref, PolyMatrix};
pub use poly::{poly_gcd, LaurentPoly};
pub use rational::{rational_reduce, RationalFn};
pub use smith::{smith_form, ElemOp, SmithDecomposition};

/// Commutative ring with the time-reversal involution D -> D^-1 (conjugation for GF(4)).
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn conj(&self) -> Self;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn conj(&self) -> Self {
        LaurentPoly::conj(self)
    }
}

impl Ring for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn one() -> Self {
        RationalFn::one()
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn conj(&self) -> Self {
        RationalFn::conj(self)
    }
}

impl Field for RationalFn {
    fn inv(&self) -> Option<Self> {
        RationalFn::inv(self)
    }
}
