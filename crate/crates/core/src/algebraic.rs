//! Real algebraic numbers and exact arithmetic in `Q(alpha)`.
//!
//! A real algebraic number is a squarefree polynomial together with an open
//! rational interval holding exactly one of its roots. Field elements are
//! polynomials in `alpha` reduced modulo the defining polynomial. When the
//! defining polynomial turns out to be reducible (a gcd with some element is
//! nontrivial) it is replaced by the factor that vanishes at `alpha`, which
//! keeps every zero test exact. Sign determination bisects the interval until
//! the element has no root in it, and gives up after a fixed budget.

use std::cell::RefCell;
use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::field::{OrderedField, Undecided};
use crate::poly::Poly;
use crate::rat::{Rat, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealAlgebraic {
    poly: Poly,
    lo: Rat,
    hi: Rat,
}

impl RealAlgebraic {
    /// `poly` must be squarefree with exactly one root in `(lo, hi)` and no
    /// root at either endpoint.
    pub fn new(poly: Poly, lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo < hi);
        debug_assert!(!poly.eval(&lo).is_zero() && !poly.eval(&hi).is_zero());
        RealAlgebraic { poly, lo, hi }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    /// Halves the interval. Returns the root if the midpoint hits it.
    pub fn bisect(&mut self) -> Option<Rat> {
        let mid = Rat::midpoint(&self.lo, &self.hi);
        let sm = self.poly.sign_at(&mid);
        if sm == Sign::Zero {
            return Some(mid);
        }
        if self.poly.sign_at(&self.lo) != sm {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
        None
    }

    /// Whether `alpha` is a root of `g` (exact).
    pub fn is_root_of(&self, g: &Poly) -> bool {
        if g.is_zero() {
            return true;
        }
        let common = Poly::gcd(&self.poly, g);
        if common.is_constant() {
            return false;
        }
        let seq = common.sturm_sequence();
        Poly::count_roots(&seq, &self.lo, &self.hi) > 0
    }

    /// Compares `alpha` with a rational, refining at most `budget` times.
    /// Returns `None` if the budget runs out, or `Some(Equal)` if the number
    /// is in fact `r`.
    pub fn cmp_rat(&mut self, r: &Rat, budget: usize) -> Option<Ordering> {
        if self.poly.eval(r).is_zero() && &self.lo < r && r < &self.hi {
            return Some(Ordering::Equal);
        }
        for _ in 0..=budget {
            if r <= &self.lo {
                return Some(Ordering::Greater);
            }
            if r >= &self.hi {
                return Some(Ordering::Less);
            }
            if let Some(root) = self.bisect() {
                return Some(root.cmp(r));
            }
        }
        None
    }

    pub fn approx(&self) -> f64 {
        Rat::midpoint(&self.lo, &self.hi).to_f64()
    }
}

/// A real number known exactly: rational, or algebraic by isolating interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactReal {
    Rational(Rat),
    Algebraic {
        interval: [Rat; 2],
        minpoly: Vec<Rat>,
    },
}

impl ExactReal {
    pub fn from_algebraic(a: &RealAlgebraic) -> Self {
        if a.poly.degree() == Some(1) {
            return ExactReal::Rational(-a.poly.coeff(0) / a.poly.coeff(1));
        }
        ExactReal::Algebraic {
            interval: [a.lo.clone(), a.hi.clone()],
            minpoly: a.poly.coeffs().to_vec(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ExactReal::Rational(r) => Some(r),
            ExactReal::Algebraic { .. } => None,
        }
    }

    pub fn to_algebraic(&self) -> Option<RealAlgebraic> {
        match self {
            ExactReal::Rational(_) => None,
            ExactReal::Algebraic { interval, minpoly } => Some(RealAlgebraic::new(
                Poly::new(minpoly.clone()),
                interval[0].clone(),
                interval[1].clone(),
            )),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            ExactReal::Rational(r) => r.to_f64(),
            ExactReal::Algebraic { interval, .. } => Rat::midpoint(&interval[0], &interval[1]).to_f64(),
        }
    }
}

#[derive(Clone, Debug)]
enum RootState {
    Exact(Rat),
    Isolated(RealAlgebraic),
}

/// The ordered field `Q(alpha)` for a fixed real algebraic `alpha`.
pub struct AlgebraicField {
    state: RefCell<RootState>,
    budget: usize,
    used: RefCell<usize>,
}

impl AlgebraicField {
    pub fn new(alpha: RealAlgebraic, refine_budget: usize) -> Self {
        let f = AlgebraicField {
            state: RefCell::new(RootState::Isolated(alpha)),
            budget: refine_budget,
            used: RefCell::new(0),
        };
        f.settle();
        f
    }

    /// Current description of `alpha`; the polynomial may have shrunk to a
    /// proper factor since construction.
    pub fn alpha(&self) -> ExactReal {
        match &*self.state.borrow() {
            RootState::Exact(r) => ExactReal::Rational(r.clone()),
            RootState::Isolated(a) => ExactReal::from_algebraic(a),
        }
    }

    /// The generator `alpha` as a field element.
    pub fn generator(&self) -> Poly {
        self.reduce(&Poly::t())
    }

    pub fn bisections_used(&self) -> usize {
        *self.used.borrow()
    }

    fn settle(&self) {
        let mut st = self.state.borrow_mut();
        if let RootState::Isolated(a) = &*st {
            if a.poly.degree() == Some(1) {
                let r = -a.poly.coeff(0) / a.poly.coeff(1);
                *st = RootState::Exact(r);
            }
        }
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        match &*self.state.borrow() {
            RootState::Exact(r) => Poly::constant(a.eval(r)),
            RootState::Isolated(al) => {
                if a.degree().map_or(true, |d| d < al.poly.degree().unwrap_or(0)) {
                    a.clone()
                } else {
                    a.rem(&al.poly)
                }
            }
        }
    }

    /// Replaces the defining polynomial by the factor of `g`'s gcd split that
    /// vanishes at alpha. Returns whether alpha is a root of `g`.
    fn split_on(&self, g: &Poly) -> bool {
        let is_root = {
            let mut st = self.state.borrow_mut();
            let RootState::Isolated(a) = &mut *st else {
                unreachable!("split_on with exact root")
            };
            let common = Poly::gcd(&a.poly, g);
            if common.is_constant() {
                return false;
            }
            let seq = common.sturm_sequence();
            let is_root = Poly::count_roots(&seq, &a.lo, &a.hi) > 0;
            a.poly = if is_root {
                common
            } else {
                a.poly.exact_div(&common).monic()
            };
            is_root
        };
        self.settle();
        is_root
    }

    /// Evaluates an element at alpha, represented as an `ExactReal`-friendly
    /// coefficient list.
    pub fn coefficients(&self, a: &Poly) -> Vec<Rat> {
        self.reduce(a).coeffs().to_vec()
    }
}

impl OrderedField for AlgebraicField {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(Rat::one())
    }
    fn from_rat(&self, r: &Rat) -> Poly {
        Poly::constant(r.clone())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a + b))
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a - b))
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }

    fn div(&self, a: &Poly, b: &Poly) -> Poly {
        loop {
            let b = self.reduce(b);
            let modulus = match &*self.state.borrow() {
                RootState::Exact(_) => None,
                RootState::Isolated(al) => Some(al.poly.clone()),
            };
            let Some(m) = modulus else {
                let bv = b.coeff(0);
                assert!(!bv.is_zero(), "division by zero in Q(alpha)");
                return self.reduce(&a.scale(&bv.recip()));
            };
            let (g, s, _) = Poly::ext_gcd(&b, &m);
            if g.is_constant() {
                assert!(!g.is_zero(), "division by zero in Q(alpha)");
                return self.mul(a, &s);
            }
            assert!(!self.split_on(&g), "division by zero in Q(alpha)");
        }
    }

    fn is_zero(&self, a: &Poly) -> bool {
        let a = self.reduce(a);
        if a.is_zero() {
            return true;
        }
        if a.is_constant() {
            return false;
        }
        if matches!(&*self.state.borrow(), RootState::Exact(_)) {
            return false;
        }
        self.split_on(&a)
    }

    fn sign(&self, a: &Poly) -> Result<Sign, Undecided> {
        if self.is_zero(a) {
            return Ok(Sign::Zero);
        }
        let a = self.reduce(a);
        if a.is_constant() {
            return Ok(a.coeff(0).sign());
        }
        let seq = a.sturm_sequence();
        loop {
            let hit = {
                let mut st = self.state.borrow_mut();
                match &mut *st {
                    RootState::Exact(r) => return Ok(a.eval(r).sign()),
                    RootState::Isolated(al) => {
                        let s_lo = a.sign_at(&al.lo);
                        if s_lo != Sign::Zero
                            && a.sign_at(&al.hi) == s_lo
                            && Poly::count_roots(&seq, &al.lo, &al.hi) == 0
                        {
                            return Ok(s_lo);
                        }
                        let mut used = self.used.borrow_mut();
                        if *used >= self.budget {
                            return Err(Undecided);
                        }
                        *used += 1;
                        al.bisect()
                    }
                }
            };
            if let Some(root) = hit {
                *self.state.borrow_mut() = RootState::Exact(root);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> RealAlgebraic {
        RealAlgebraic::new(Poly::from_ints(&[-2, 0, 1]), Rat::one(), Rat::from_int(2))
    }

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let f = AlgebraicField::new(sqrt2(), 64);
        let a = f.generator();
        let sq = f.mul(&a, &a);
        assert_eq!(sq, Poly::constant(Rat::from_int(2)));
        let inv = f.div(&f.one(), &a);
        assert_eq!(f.mul(&inv, &a), f.one());
        // sqrt2 - 7/5 > 0, sqrt2 - 3/2 < 0
        assert_eq!(f.sign(&f.sub(&a, &f.from_rat(&Rat::new(7, 5)))).unwrap(), Sign::Positive);
        assert_eq!(f.sign(&f.sub(&a, &f.from_rat(&Rat::new(3, 2)))).unwrap(), Sign::Negative);
    }

    #[test]
    fn reducible_defining_polynomial_is_split() {
        // (t^2 - 2)(t - 3) with the root sqrt2 isolated in (1, 2)
        let p = &Poly::from_ints(&[-2, 0, 1]) * &Poly::from_ints(&[-3, 1]);
        let f = AlgebraicField::new(RealAlgebraic::new(p, Rat::one(), Rat::from_int(2)), 64);
        let e = f.sub(&f.generator(), &f.from_rat(&Rat::from_int(3)));
        assert!(!f.is_zero(&e));
        assert_eq!(f.alpha(), ExactReal::Algebraic {
            interval: [Rat::one(), Rat::from_int(2)],
            minpoly: crate::rat::rvec(&[-2, 0, 1]),
        });
    }

    #[test]
    fn rational_root_collapses_to_exact() {
        // (t - 1)(t^2 - 5); the root 1 isolated in (1/2, 3/2)
        let p = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-5, 0, 1]);
        let f = AlgebraicField::new(RealAlgebraic::new(p, Rat::new(1, 2), Rat::new(3, 2)), 64);
        let e = f.sub(&f.generator(), &f.one());
        assert!(f.is_zero(&e));
        assert_eq!(f.alpha(), ExactReal::Rational(Rat::one()));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f = AlgebraicField::new(sqrt2(), 2);
        // sqrt2 - 1414213/1000000 needs many bisections to separate
        let e = f.sub(&f.generator(), &f.from_rat(&Rat::new(1414213, 1000000)));
        assert_eq!(f.sign(&e), Err(Undecided));
    }

    #[test]
    fn compare_with_rationals() {
        let mut a = sqrt2();
        assert_eq!(a.cmp_rat(&Rat::new(141, 100), 64), Some(Ordering::Greater));
        assert_eq!(a.cmp_rat(&Rat::new(142, 100), 64), Some(Ordering::Less));
    }
}
