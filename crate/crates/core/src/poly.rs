//! Univariate polynomials over `Q`: Euclidean algorithms, Sturm sequences and
//! real-root isolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rat::{Rat, Sign};

/// Coefficients stored lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(crate::rat::rvec(c))
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    /// `t - r`.
    pub fn linear_root(r: &Rat) -> Self {
        Self::new(vec![-r, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> Sign {
        self.eval(x).sign()
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rat::from_int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let lead_inv = d.lead().recip();
        let n = self.coeffs.len();
        if n <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r.primitive_part();
        }
        x.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::constant(Rat::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(Rat::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.exact_div(&g).monic()
    }

    /// Scaled to coprime integer coefficients with positive leading term.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let ints = self.integer_coeffs();
        Poly::new(ints.into_iter().map(Rat::from_bigint).collect())
    }

    /// Coprime integer coefficients with positive leading term.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        let neg = ints.last().is_some_and(|c| c.is_negative());
        for c in ints.iter_mut() {
            *c = &*c / &g;
            if neg {
                *c = -&*c;
            }
        }
        ints
    }

    /// Upper bound on the absolute value of every real root (Cauchy).
    pub fn root_bound(&self) -> Rat {
        let lead = self.lead().abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let v = c.abs() / &lead;
            if v > m {
                m = v;
            }
        }
        m + Rat::one()
    }

    /// Interpolating polynomial through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Poly {
        // Newton divided differences
        let n = points.len();
        let xs: Vec<Rat> = points.iter().map(|p| p.0.clone()).collect();
        let mut dd: Vec<Rat> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Poly::linear_root(&xs[i])) + &Poly::constant(dd[i].clone());
        }
        acc
    }

    /// Rational roots by the rational-root theorem. Returns `None` when the
    /// integer coefficients are too large to enumerate candidates cheaply.
    pub fn rational_roots(&self) -> Option<Vec<Rat>> {
        if self.is_constant() {
            return Some(Vec::new());
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        while p.coeff(0).is_zero() && !p.is_zero() {
            if !roots.contains(&Rat::zero()) {
                roots.push(Rat::zero());
            }
            p = Poly::new(p.coeffs[1..].to_vec());
        }
        if p.is_constant() {
            return Some(roots);
        }
        let ints = p.integer_coeffs();
        let c0 = ints[0].abs().to_u64()?;
        let cd = ints.last().unwrap().abs().to_u64()?;
        const LIMIT: u64 = 1 << 40;
        if c0 > LIMIT || cd > LIMIT {
            return None;
        }
        let (du, dv) = (divisors(c0), divisors(cd));
        if du.len() * dv.len() > 50_000 {
            return None;
        }
        for v in &dv {
            for u in &du {
                if Integer::gcd(u, v) != 1 {
                    continue;
                }
                for s in [1i64, -1] {
                    let cand = Rat::from_big(BigInt::from(*u) * s, BigInt::from(*v));
                    if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }

    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.is_constant() {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let k = seq.len();
            let r = seq[k - 2].rem(&seq[k - 1]);
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps the sign pattern
            let r = r.primitive_part_signed();
            seq.push(-&r);
        }
        seq
    }

    /// Like `primitive_part` but keeps the sign of the leading coefficient.
    fn primitive_part_signed(&self) -> Poly {
        let p = self.primitive_part();
        if (p.lead().is_positive()) == (self.lead().is_positive()) {
            p
        } else {
            -&p
        }
    }

    pub fn variations(seq: &[Poly], x: &Rat) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for p in seq {
            let s = p.sign_at(x);
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_roots(seq: &[Poly], a: &Rat, b: &Rat) -> usize {
        Self::variations(seq, a).saturating_sub(Self::variations(seq, b))
    }

    /// Isolates the distinct real roots of `self` in the open interval
    /// `(lo, hi)`; both endpoints must not be roots.
    pub fn isolate_roots(&self, lo: &Rat, hi: &Rat) -> Vec<IsolatedRoot> {
        let p = self.squarefree();
        if p.is_constant() {
            return Vec::new();
        }
        let mut out = Vec::new();
        isolate_rec(&p, &p.sturm_sequence(), lo.clone(), hi.clone(), &mut out);
        out.sort_by(|a, b| a.lower().cmp(b.lower()));
        out
    }
}

/// A real root known either exactly or by an open isolating interval whose
/// rational endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsolatedRoot {
    Exact(Rat),
    Interval(Rat, Rat),
}

impl IsolatedRoot {
    pub fn lower(&self) -> &Rat {
        match self {
            IsolatedRoot::Exact(r) => r,
            IsolatedRoot::Interval(l, _) => l,
        }
    }

    pub fn upper(&self) -> &Rat {
        match self {
            IsolatedRoot::Exact(r) => r,
            IsolatedRoot::Interval(_, h) => h,
        }
    }
}

fn isolate_rec(p: &Poly, seq: &[Poly], lo: Rat, hi: Rat, out: &mut Vec<IsolatedRoot>) {
    let n = Poly::count_roots(seq, &lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(IsolatedRoot::Interval(lo, hi));
        return;
    }
    let mid = Rat::midpoint(&lo, &hi);
    if p.eval(&mid).is_zero() {
        out.push(IsolatedRoot::Exact(mid.clone()));
        let q = p.exact_div(&Poly::linear_root(&mid));
        let qs = q.sturm_sequence();
        isolate_rec(&q, &qs, lo, mid.clone(), out);
        isolate_rec(&q, &qs, mid, hi, out);
    } else {
        isolate_rec(p, seq, lo, mid.clone(), out);
        isolate_rec(p, seq, mid, hi, out);
    }
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
        if d > (1 << 21) {
            break;
        }
    }
    large.reverse();
    small.extend(large);
    small
}

/// Pairwise coprime, squarefree, monic, nonconstant polynomials whose roots
/// are exactly the union of the roots of the inputs.
pub fn coprime_basis(polys: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        let mut q = p.squarefree();
        let mut i = 0;
        while i < basis.len() && !q.is_constant() {
            let g = Poly::gcd(&basis[i], &q);
            if g.is_constant() {
                i += 1;
                continue;
            }
            let rest = basis[i].exact_div(&g).monic();
            q = q.exact_div(&g).monic();
            basis[i] = g;
            if !rest.is_constant() {
                basis.push(rest);
            }
            i += 1;
        }
        if !q.is_constant() {
            basis.push(q.monic());
        }
    }
    basis
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = Poly::from_ints(&[1, 1]); // t + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = Poly::gcd(&a, &Poly::from_ints(&[-1, 1]));
        assert_eq!(g, Poly::from_ints(&[-1, 1]));
        let (g, s, t) = Poly::ext_gcd(&a, &Poly::from_ints(&[2, 1]));
        assert_eq!(g, Poly::from_ints(&[1]));
        let combo = &(&s * &a) + &(&t * &Poly::from_ints(&[2, 1]));
        assert_eq!(combo, g);
    }

    #[test]
    fn squarefree_removes_repeats() {
        // (t-1)^2 (t+2)
        let p = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-1, 1])) * &Poly::from_ints(&[2, 1]);
        assert_eq!(p.squarefree(), Poly::from_ints(&[-2, 1, 1]));
    }

    #[test]
    fn isolates_sqrt_two() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let roots = p.isolate_roots(&Rat::zero(), &Rat::from_int(3));
        assert_eq!(roots.len(), 1);
        let IsolatedRoot::Interval(lo, hi) = &roots[0] else {
            panic!("expected an interval")
        };
        assert!(&(lo * lo) < &Rat::from_int(2) && &(hi * hi) > &Rat::from_int(2));
    }

    #[test]
    fn finds_exact_midpoint_roots() {
        // roots 1 and 2 inside (0, 4): first bisection lands on 2
        let p = Poly::from_ints(&[2, -3, 1]);
        let roots = p.isolate_roots(&Rat::zero(), &Rat::from_int(4));
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&IsolatedRoot::Exact(Rat::from_int(2))));
    }

    #[test]
    fn rational_root_theorem() {
        // (2t - 1)(t + 3)(t^2 - 2)
        let p = &(&Poly::from_ints(&[-1, 2]) * &Poly::from_ints(&[3, 1])) * &Poly::from_ints(&[-2, 0, 1]);
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![Rat::from_int(-3), Rat::new(1, 2)]
        );
        assert_eq!(Poly::from_ints(&[0, 0, 1]).rational_roots().unwrap(), vec![Rat::zero()]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::from_ints(&[3, -1, 0, 2]);
        let pts: Vec<(Rat, Rat)> = (0..4).map(|i| (Rat::from_int(i), p.eval(&Rat::from_int(i)))).collect();
        assert_eq!(Poly::interpolate(&pts), p);
    }

    #[test]
    fn coprime_basis_splits_common_factors() {
        let a = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-2, 1]);
        let b = &Poly::from_ints(&[-2, 1]) * &Poly::from_ints(&[-3, 1]);
        let basis = coprime_basis(&[a, b]);
        assert_eq!(basis.len(), 3);
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                assert!(Poly::gcd(&basis[i], &basis[j]).is_constant());
            }
        }
    }
}
