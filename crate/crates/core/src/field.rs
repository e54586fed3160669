//! Ordered-field abstraction shared by the simplex solver.
//!
//! Arithmetic is exact. Sign determination is the only fallible operation:
//! over `Q` it always succeeds, over a real algebraic extension it may give
//! up once the refinement budget is exhausted.

use std::fmt;

use crate::rat::{Rat, Sign};

/// Returned when the sign of an element could not be certified within the
/// configured refinement budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Undecided;

impl fmt::Display for Undecided {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("sign undecided within refinement budget")
    }
}

impl std::error::Error for Undecided {}

pub trait OrderedField {
    type Elem: Clone + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rat(&self, r: &Rat) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b` for `b` known to be nonzero.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Exact zero test; never needs refinement.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sign(&self, a: &Self::Elem) -> Result<Sign, Undecided>;

    fn cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Sign, Undecided> {
        self.sign(&self.sub(a, b))
    }
}

/// The rationals themselves.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl OrderedField for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn from_rat(&self, r: &Rat) -> Rat {
        r.clone()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn div(&self, a: &Rat, b: &Rat) -> Rat {
        a / b
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn sign(&self, a: &Rat) -> Result<Sign, Undecided> {
        Ok(a.sign())
    }
}
