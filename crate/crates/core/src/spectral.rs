//! Nonnegative and positive eigenvalues of polyhedral convex processes.
//!
//! Substituting `y = λξ` into the graph constraints gives the parametric
//! system `(W_x + λ W_y) ξ <= 0` (plus equalities) whose solution set is
//! `C(λ) = {ξ : λξ ∈ H(ξ)}`. The feasibility pattern of `C(λ) ≠ {0}` can
//! only change at roots of minors of the stacked parametric matrix, so the
//! half-line splits into finitely many breakpoints and open segments. Each
//! segment is decided by one rational sample. Rational breakpoints are
//! decided directly; irrational ones are decided exactly in `Q(α)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebraic::{AlgebraicField, ExactReal, RealAlgebraic};
use crate::cone::PolyhedralCone;
use crate::error::{check_dim, Result};
use crate::field::{OrderedField, Rationals, Undecided};
use crate::lp::{solve, LinearProgram, LpOutcome, Relation};
use crate::matrix::RatMatrix;
use crate::poly::{coprime_basis, IsolatedRoot, Poly};
use crate::process::ConvexProcess;
use crate::rat::{Rat, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EigenConstraint {
    LambdaGeq0,
    LambdaGt0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EigenStatus {
    Exists,
    NotExists,
    Indeterminate,
}

/// Eigenvector entries: rationals, or polynomials in `λ` (lowest degree
/// first) when `λ` is irrational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EigenVector {
    Rational(Vec<Rat>),
    Algebraic(Vec<Vec<Rat>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub lambda: ExactReal,
    pub xi: EigenVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenOptions {
    /// Total bisections allowed per irrational breakpoint.
    pub refine_depth: usize,
    /// Decide irrational breakpoints even when a neighbouring segment already
    /// has eigenvalues.
    pub resolve_moot: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            refine_depth: 64,
            resolve_moot: false,
        }
    }
}

/// Decision for one breakpoint: `Some(nontrivial)` or `None` when skipped as
/// moot or undecided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakpoint {
    pub lambda: ExactReal,
    pub nontrivial: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenReport {
    pub constraint: EigenConstraint,
    pub status: EigenStatus,
    pub witnesses: Vec<Eigenpair>,
    /// Irrational breakpoints whose feasibility could not be certified.
    pub unresolved: Vec<ExactReal>,
    /// Result at `λ = 0` (only for `LAMBDA_GEQ_0`).
    pub at_zero: Option<bool>,
    /// Sorted positive breakpoints.
    pub breakpoints: Vec<Breakpoint>,
    /// `segments[i]` is the open segment just below `breakpoints[i]`; the
    /// last entry is the unbounded segment above every breakpoint.
    pub segments: Vec<bool>,
}

/// `{ξ : (I0 + λ I1) ξ <= 0, (E0 + λ E1) ξ = 0}`.
#[derive(Clone, Debug)]
struct ParamSystem {
    n: usize,
    ineq: Vec<(Vec<Rat>, Vec<Rat>)>,
    eq: Vec<(Vec<Rat>, Vec<Rat>)>,
}

impl ParamSystem {
    fn new(h: &ConvexProcess, restrict: Option<&PolyhedralCone>) -> Result<Self> {
        let n = h.n();
        let g = h.graph().constraints();
        let split = |w: &Vec<Rat>| (w[..n].to_vec(), w[n..].to_vec());
        let mut ineq: Vec<_> = g.ineqs.iter().map(split).collect();
        let mut eq: Vec<_> = g.eqs.iter().map(split).collect();
        if let Some(k) = restrict {
            check_dim("eigenvector restriction", n, k.ambient_dim())?;
            let c = k.any_constraints();
            let zero = vec![Rat::zero(); n];
            ineq.extend(c.ineqs.iter().map(|w| (w.clone(), zero.clone())));
            eq.extend(c.eqs.iter().map(|w| (w.clone(), zero.clone())));
        }
        Ok(ParamSystem { n, ineq, eq })
    }

    fn stacked(&self) -> Vec<&(Vec<Rat>, Vec<Rat>)> {
        self.ineq.iter().chain(&self.eq).collect()
    }

    /// Nonzero `ξ` in `C(λ)` inside the box `|ξ_i| <= 1`, if any.
    fn nontrivial_at<F: OrderedField>(&self, f: &F, lam: &F::Elem) -> std::result::Result<Option<Vec<F::Elem>>, Undecided> {
        let row = |(a, b): &(Vec<Rat>, Vec<Rat>)| -> Vec<F::Elem> {
            a.iter()
                .zip(b)
                .map(|(x, y)| {
                    let fx = f.from_rat(x);
                    if y.is_zero() {
                        fx
                    } else {
                        f.add(&fx, &f.mul(lam, &f.from_rat(y)))
                    }
                })
                .collect()
        };
        let ineq: Vec<Vec<F::Elem>> = self.ineq.iter().map(row).collect();
        let eq: Vec<Vec<F::Elem>> = self.eq.iter().map(row).collect();
        for i in 0..self.n {
            for s in [1, -1] {
                let mut obj = vec![f.zero(); self.n];
                obj[i] = f.from_rat(&Rat::from_int(s));
                let mut lp = LinearProgram::new(obj);
                for r in &ineq {
                    lp.constrain(r.clone(), Relation::Le, f.zero());
                }
                for r in &eq {
                    lp.constrain(r.clone(), Relation::Eq, f.zero());
                }
                for j in 0..self.n {
                    lp.bound(j, Some(f.from_rat(&-Rat::one())), Some(f.one()));
                }
                if let LpOutcome::Optimal { value, x } = solve(f, &lp)? {
                    if f.sign(&value)? == Sign::Positive {
                        return Ok(Some(x));
                    }
                }
            }
        }
        Ok(None)
    }

    fn rational_witness(&self, lam: &Rat) -> Option<Vec<Rat>> {
        self.nontrivial_at(&Rationals, lam).expect("rational signs are decidable")
    }

    /// Every nonzero `k x k` minor of the stacked matrix, as a polynomial in
    /// `λ`, for `k <= min(rows, n)`.
    fn minors(&self) -> Vec<Poly> {
        let rows = self.stacked();
        let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut out = Vec::new();
        for k in 1..=rows.len().min(self.n) {
            for rs in combinations(rows.len(), k) {
                for cs in combinations(self.n, k) {
                    let points: Vec<(Rat, Rat)> = (0..=k)
                        .map(|t| {
                            let t = Rat::from_int(t as i64);
                            let mut m = RatMatrix::zeros(k, k);
                            for (i, &r) in rs.iter().enumerate() {
                                let (a, b) = rows[r];
                                for (j, &c) in cs.iter().enumerate() {
                                    m.set(i, j, &a[c] + &(&t * &b[c]));
                                }
                            }
                            (t, m.det().expect("square"))
                        })
                        .collect();
                    let p = Poly::interpolate(&points);
                    if p.is_constant() {
                        continue;
                    }
                    let p = p.monic();
                    if seen.insert(p.coeffs().to_vec()) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

enum Root {
    Rational(Rat),
    Algebraic(RealAlgebraic),
}

impl Root {
    fn lo(&self) -> &Rat {
        match self {
            Root::Rational(r) => r,
            Root::Algebraic(a) => a.interval().0,
        }
    }
    fn hi(&self) -> &Rat {
        match self {
            Root::Rational(r) => r,
            Root::Algebraic(a) => a.interval().1,
        }
    }
}

/// Positive real roots of the family, sorted, with pairwise disjoint closed
/// isolating intervals whose lower ends are positive.
fn positive_breakpoints(polys: &[Poly]) -> Vec<Root> {
    let mut rationals: BTreeSet<Rat> = BTreeSet::new();
    let mut cores: Vec<Poly> = Vec::new();
    for p in polys {
        let mut q = p.squarefree();
        if let Some(rs) = q.rational_roots() {
            for r in rs {
                q = q.exact_div(&Poly::linear_root(&r));
                if r.is_positive() {
                    rationals.insert(r);
                }
            }
        }
        if !q.is_constant() {
            cores.push(q.monic());
        }
    }
    let mut roots: Vec<Root> = rationals.into_iter().map(Root::Rational).collect();
    for core in coprime_basis(&cores) {
        let hi = core.root_bound() + Rat::one();
        let q = if core.coeff(0).is_zero() {
            core.exact_div(&Poly::t())
        } else {
            core
        };
        if q.is_constant() {
            continue;
        }
        for iso in q.isolate_roots(&Rat::zero(), &hi) {
            roots.push(match iso {
                IsolatedRoot::Exact(r) => Root::Rational(r),
                IsolatedRoot::Interval(l, h) => Root::Algebraic(RealAlgebraic::new(q.clone(), l, h)),
            });
        }
    }
    separate(&mut roots);
    roots.sort_by(|a, b| a.lo().cmp(b.lo()));
    roots
}

/// Bisects isolating intervals until they are pairwise disjoint and bounded
/// away from zero.
fn separate(roots: &mut [Root]) {
    loop {
        let mut changed = false;
        for i in 0..roots.len() {
            let needs = match &roots[i] {
                Root::Rational(_) => false,
                Root::Algebraic(a) => {
                    !a.interval().0.is_positive()
                        || (0..roots.len()).any(|j| {
                            j != i && roots[j].lo() <= roots[i].hi() && roots[i].lo() <= roots[j].hi()
                        })
                }
            };
            if needs {
                if let Root::Algebraic(a) = &mut roots[i] {
                    if let Some(r) = a.bisect() {
                        roots[i] = Root::Rational(r);
                    }
                }
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Whether `C(λ) = {ξ : λξ ∈ H(ξ)}` is nontrivial, with a witness `ξ` in the
/// box `|ξ_i| <= 1`.
pub fn cone_nontrivial_at(h: &ConvexProcess, lambda: &Rat) -> Option<Vec<Rat>> {
    ParamSystem::new(h, None).expect("no restriction").rational_witness(lambda)
}

/// As [`cone_nontrivial_at`] with `ξ` additionally restricted to `k`.
pub fn cone_nontrivial_at_in(h: &ConvexProcess, lambda: &Rat, k: &PolyhedralCone) -> Result<Option<Vec<Rat>>> {
    Ok(ParamSystem::new(h, Some(k))?.rational_witness(lambda))
}

pub fn eigen_exists(h: &ConvexProcess, constraint: EigenConstraint) -> EigenReport {
    eigen_exists_with(h, constraint, None, &EigenOptions::default()).expect("no restriction")
}

/// Eigenvalue search with an optional cone restriction on the eigenvector.
pub fn eigen_exists_with(
    h: &ConvexProcess,
    constraint: EigenConstraint,
    restrict: Option<&PolyhedralCone>,
    opts: &EigenOptions,
) -> Result<EigenReport> {
    let sys = ParamSystem::new(h, restrict)?;
    let roots = positive_breakpoints(&sys.minors());

    let mut witnesses = Vec::new();
    let record = |lam: &Rat, xi: Option<Vec<Rat>>, witnesses: &mut Vec<Eigenpair>| -> bool {
        match xi {
            Some(xi) => {
                witnesses.push(Eigenpair {
                    lambda: ExactReal::Rational(lam.clone()),
                    xi: EigenVector::Rational(xi),
                });
                true
            }
            None => false,
        }
    };

    let at_zero = match constraint {
        EigenConstraint::LambdaGeq0 => {
            let z = Rat::zero();
            Some(record(&z, sys.rational_witness(&z), &mut witnesses))
        }
        EigenConstraint::LambdaGt0 => None,
    };

    // segment samples
    let mut samples = Vec::with_capacity(roots.len() + 1);
    for (i, r) in roots.iter().enumerate() {
        let below = if i == 0 { Rat::zero() } else { roots[i - 1].hi().clone() };
        samples.push(Rat::midpoint(&below, r.lo()));
    }
    samples.push(match roots.last() {
        Some(r) => r.hi() + &Rat::one(),
        None => Rat::one(),
    });

    let mut segments = Vec::with_capacity(samples.len());
    let mut seg_witness = Vec::with_capacity(samples.len());
    for s in &samples {
        let xi = sys.rational_witness(s);
        segments.push(xi.is_some());
        seg_witness.push(xi);
    }

    let mut breakpoints = Vec::with_capacity(roots.len());
    let mut unresolved = Vec::new();
    let mut bp_witness: Vec<Option<Eigenpair>> = Vec::with_capacity(roots.len());
    for (i, r) in roots.into_iter().enumerate() {
        match r {
            Root::Rational(lam) => {
                let xi = sys.rational_witness(&lam);
                breakpoints.push(Breakpoint {
                    lambda: ExactReal::Rational(lam.clone()),
                    nontrivial: Some(xi.is_some()),
                });
                bp_witness.push(xi.map(|xi| Eigenpair {
                    lambda: ExactReal::Rational(lam),
                    xi: EigenVector::Rational(xi),
                }));
            }
            Root::Algebraic(alpha) => {
                let moot = segments[i] || segments[i + 1];
                if moot && !opts.resolve_moot {
                    breakpoints.push(Breakpoint {
                        lambda: ExactReal::from_algebraic(&alpha),
                        nontrivial: None,
                    });
                    bp_witness.push(None);
                    continue;
                }
                let f = AlgebraicField::new(alpha.clone(), opts.refine_depth);
                let gen = f.generator();
                match sys.nontrivial_at(&f, &gen) {
                    Ok(xi) => {
                        let lambda = f.alpha();
                        let pair = xi.map(|xi| algebraic_pair(&f, lambda.clone(), &xi));
                        breakpoints.push(Breakpoint {
                            lambda,
                            nontrivial: Some(pair.is_some()),
                        });
                        bp_witness.push(pair);
                    }
                    Err(Undecided) => {
                        let lambda = f.alpha();
                        if !moot {
                            unresolved.push(lambda.clone());
                        }
                        breakpoints.push(Breakpoint {
                            lambda,
                            nontrivial: None,
                        });
                        bp_witness.push(None);
                    }
                }
            }
        }
    }

    // witnesses in increasing λ: segment i, breakpoint i, ..., last segment
    for i in 0..seg_witness.len() {
        let s = &samples[i];
        record(s, seg_witness[i].take(), &mut witnesses);
        if let Some(Some(p)) = bp_witness.get_mut(i).map(Option::take) {
            witnesses.push(p);
        }
    }

    let status = if !witnesses.is_empty() {
        EigenStatus::Exists
    } else if !unresolved.is_empty() {
        EigenStatus::Indeterminate
    } else {
        EigenStatus::NotExists
    };
    Ok(EigenReport {
        constraint,
        status,
        witnesses,
        unresolved,
        at_zero,
        breakpoints,
        segments,
    })
}

fn algebraic_pair(f: &AlgebraicField, lambda: ExactReal, xi: &[Poly]) -> Eigenpair {
    match lambda {
        ExactReal::Rational(r) => Eigenpair {
            xi: EigenVector::Rational(xi.iter().map(|p| p.eval(&r)).collect()),
            lambda: ExactReal::Rational(r),
        },
        lambda @ ExactReal::Algebraic { .. } => Eigenpair {
            lambda,
            xi: EigenVector::Algebraic(xi.iter().map(|p| f.coefficients(p)).collect()),
        },
    }
}

impl EigenReport {
    /// The report's prediction for whether `C(λ)` is nontrivial at a rational
    /// `λ` in the queried range. `None` at moot or undecided breakpoints and
    /// outside the range.
    pub fn classify(&self, lambda: &Rat) -> Option<bool> {
        if lambda.is_negative() {
            return None;
        }
        if lambda.is_zero() {
            return self.at_zero;
        }
        for (i, bp) in self.breakpoints.iter().enumerate() {
            let ord = match &bp.lambda {
                ExactReal::Rational(r) => lambda.cmp(r),
                alg @ ExactReal::Algebraic { .. } => {
                    let mut a = alg.to_algebraic().expect("algebraic");
                    a.cmp_rat(lambda, 4096)?.reverse()
                }
            };
            match ord {
                std::cmp::Ordering::Less => return Some(self.segments[i]),
                std::cmp::Ordering::Equal => return bp.nontrivial,
                std::cmp::Ordering::Greater => {}
            }
        }
        self.segments.last().copied()
    }
}

/// Exact check that `λξ ∈ H(ξ)` and `ξ ≠ 0` for an eigenpair of `h`.
pub fn verify_eigenpair(h: &ConvexProcess, pair: &Eigenpair) -> bool {
    let n = h.n();
    match (&pair.lambda, &pair.xi) {
        (ExactReal::Rational(lam), EigenVector::Rational(xi)) => {
            xi.len() == n
                && xi.iter().any(|x| !x.is_zero())
                && h.contains_pair(xi, &crate::rat::scale_vec(xi, lam)).unwrap_or(false)
        }
        (ExactReal::Algebraic { .. }, EigenVector::Algebraic(xi)) => {
            let alpha = pair.lambda.to_algebraic().expect("algebraic");
            let f = AlgebraicField::new(alpha, 256);
            if xi.len() != n {
                return false;
            }
            let xi: Vec<Poly> = xi.iter().map(|c| Poly::new(c.clone())).collect();
            if xi.iter().all(|p| f.is_zero(p)) {
                return false;
            }
            let lam = f.generator();
            let g = h.graph().any_constraints();
            let eval = |w: &Vec<Rat>| -> Poly {
                let mut acc = f.zero();
                for j in 0..n {
                    let c = f.add(&f.from_rat(&w[j]), &f.mul(&lam, &f.from_rat(&w[n + j])));
                    acc = f.add(&acc, &f.mul(&c, &xi[j]));
                }
                acc
            };
            g.ineqs.iter().all(|w| matches!(f.sign(&eval(w)), Ok(Sign::Negative | Sign::Zero)))
                && g.eqs.iter().all(|w| f.is_zero(&eval(w)))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::DualSign;
    use crate::rat::rvec;

    fn scalar(a: i64) -> ConvexProcess {
        ConvexProcess::from_matrix(&RatMatrix::from_ints(&[&[a]])).unwrap()
    }

    fn hbar_dual() -> ConvexProcess {
        let g = PolyhedralCone::from_generators(2, &[rvec(&[0, 1])], &[rvec(&[1, 0])]).unwrap();
        ConvexProcess::from_graph(1, g).unwrap().dual(DualSign::Minus)
    }

    #[test]
    fn scalar_linear_eigenvalue() {
        let h = scalar(2);
        assert_eq!(cone_nontrivial_at(&h, &Rat::from_int(2)), Some(rvec(&[1])));
        assert_eq!(cone_nontrivial_at(&h, &Rat::one()), None);
    }

    #[test]
    fn hbar_dual_eigenvalues() {
        let d = hbar_dual();
        assert_eq!(cone_nontrivial_at(&d, &Rat::zero()), Some(rvec(&[-1])));
        assert_eq!(cone_nontrivial_at(&d, &Rat::one()), None);
        let geq = eigen_exists(&d, EigenConstraint::LambdaGeq0);
        assert_eq!(geq.status, EigenStatus::Exists);
        assert_eq!(
            geq.witnesses[0],
            Eigenpair {
                lambda: ExactReal::Rational(Rat::zero()),
                xi: EigenVector::Rational(rvec(&[-1]))
            }
        );
        assert_eq!(eigen_exists(&d, EigenConstraint::LambdaGt0).status, EigenStatus::NotExists);
        // λ-grid oracle over [0, 10] with step 1/100
        for k in 0..=1000 {
            let lam = Rat::new(k, 100);
            assert_eq!(geq.classify(&lam), Some(cone_nontrivial_at(&d, &lam).is_some()));
        }
    }

    #[test]
    fn irrational_eigenvalue_is_isolated() {
        let a = RatMatrix::from_ints(&[&[0, 2], &[1, 0]]);
        let h = ConvexProcess::from_matrix(&a).unwrap().dual(DualSign::Minus);
        let rep = eigen_exists(&h, EigenConstraint::LambdaGeq0);
        assert_eq!(rep.status, EigenStatus::Exists);
        assert_eq!(rep.witnesses.len(), 1);
        let w = &rep.witnesses[0];
        match &w.lambda {
            ExactReal::Algebraic { interval, minpoly } => {
                assert_eq!(minpoly, &rvec(&[-2, 0, 1]));
                assert!(interval[0] < Rat::new(1415, 1000) && Rat::new(1414, 1000) < interval[1]);
            }
            other => panic!("expected algebraic eigenvalue, got {other:?}"),
        }
        assert!(verify_eigenpair(&h, w));
        assert_eq!(rep.segments, vec![false, false]);
    }

    #[test]
    fn budget_exhaustion_makes_the_report_indeterminate() {
        let a = RatMatrix::from_ints(&[&[0, 2], &[1, 0]]);
        let h = ConvexProcess::from_matrix(&a).unwrap();
        let opts = EigenOptions {
            refine_depth: 0,
            resolve_moot: false,
        };
        let rep = eigen_exists_with(&h, EigenConstraint::LambdaGt0, None, &opts).unwrap();
        assert_eq!(rep.status, EigenStatus::Indeterminate);
        assert_eq!(rep.unresolved.len(), 1);
    }

    #[test]
    fn restriction_to_a_cone() {
        // H(x) = {diag(2, 3) x}: only the eigenvector for 3 lies in K
        let h = ConvexProcess::from_matrix(&RatMatrix::from_ints(&[&[2, 0], &[0, 3]])).unwrap();
        let k = PolyhedralCone::ray(&rvec(&[0, 1]));
        let rep = eigen_exists_with(&h, EigenConstraint::LambdaGt0, Some(&k), &EigenOptions::default()).unwrap();
        assert_eq!(rep.status, EigenStatus::Exists);
        assert_eq!(rep.witnesses[0].lambda, ExactReal::Rational(Rat::from_int(3)));
        assert_eq!(cone_nontrivial_at_in(&h, &Rat::from_int(2), &k).unwrap(), None);
    }

    #[test]
    fn report_round_trips_through_json() {
        let a = RatMatrix::from_ints(&[&[0, 2], &[1, 0]]);
        let rep = eigen_exists(&ConvexProcess::from_matrix(&a).unwrap(), EigenConstraint::LambdaGeq0);
        let s = serde_json::to_string(&rep).unwrap();
        assert!(s.contains("\"minpoly\""));
        let back: EigenReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
    }
}
