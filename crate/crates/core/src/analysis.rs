//! Reachability and null-controllability deciders with certificates.

use serde::{Deserialize, Serialize};

use crate::algebraic::ExactReal;
use crate::cone::{PolarSign, PolyhedralCone};
use crate::linear_reach::{reach_subspace, ReachDir};
use crate::process::{ConvexProcess, DualSign};
use crate::rat::Rat;
use crate::spectral::{eigen_exists_with, EigenConstraint, EigenOptions, EigenReport, EigenStatus, EigenVector};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Property {
    Reachability,
    NullControllability,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictResult {
    Holds,
    Fails,
    Indeterminate,
    AssumptionsViolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub name: String,
    pub satisfied: bool,
    /// A nonzero normal vector to the deficient sum when unsatisfied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `λξ ∈ H⁻(ξ)` with `ξ ≠ 0`.
    Eigenpair { lambda: ExactReal, xi: EigenVector },
    /// `R₊` is a proper subspace; `normal` is orthogonal to it.
    DeficientSubspace { r_plus: Subspace, normal: Vec<Rat> },
    /// Data behind a HOLDS verdict: the subspaces used and the breakpoints
    /// at which the eigenvalue search was decided.
    Support {
        r_minus: Subspace,
        r_plus: Subspace,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_minus: Option<Subspace>,
        breakpoints: Vec<ExactReal>,
    },
    /// Irrational breakpoints left undecided within `refine_depth` bisections.
    Unresolved {
        intervals: Vec<ExactReal>,
        refine_depth: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub property: Property,
    pub result: VerdictResult,
    pub assumptions: Vec<Assumption>,
    #[serde(default)]
    pub certificate: Option<Certificate>,
    /// Largest stabilization index among the subspace iterations run.
    pub steps: usize,
    #[serde(default)]
    pub notes: String,
}

struct Subspaces {
    r_minus: Subspace,
    r_plus: Subspace,
    n_minus: Subspace,
    steps: usize,
}

fn subspaces(h: &ConvexProcess) -> Subspaces {
    let (lm, lp) = h.linear_bounds();
    let (r_minus, s1) = reach_subspace(&lm, ReachDir::Forward);
    let (r_plus, s2) = reach_subspace(&lp, ReachDir::Forward);
    let (n_minus, s3) = reach_subspace(&lm, ReachDir::Backward);
    Subspaces {
        r_minus,
        r_plus,
        n_minus,
        steps: s1.max(s2).max(s3),
    }
}

/// Whether `c + s` is the whole space, with a normal vector if not.
fn spans(c: &PolyhedralCone, s: &Subspace) -> (bool, Option<Vec<Rat>>) {
    let sum = c.sum(&PolyhedralCone::from_subspace(s)).expect("same dimension");
    if sum.is_full() {
        return (true, None);
    }
    let polar = sum.polar(PolarSign::Neg);
    let w = polar.rays().first().or(polar.lines().first()).cloned();
    (false, w)
}

fn subspace_is_full(name: &str, s: &Subspace) -> Assumption {
    let normal = s.orthogonal_complement().vectors().into_iter().next();
    Assumption {
        name: name.to_string(),
        satisfied: s.is_full(),
        witness: normal,
    }
}

fn assumptions_for(h: &ConvexProcess, property: Property, sub: &Subspaces) -> Vec<Assumption> {
    let (dom, im) = h.dom_im();
    let (ok, w) = spans(&dom, &sub.r_minus);
    let mut out = vec![Assumption {
        name: "dom H + R- = R^n".into(),
        satisfied: ok,
        witness: w,
    }];
    if property == Property::NullControllability {
        out.push(subspace_is_full("R+ = R^n", &sub.r_plus));
        let (ok, w) = spans(&im, &sub.n_minus);
        out.push(Assumption {
            name: "im H + N- = R^n".into(),
            satisfied: ok,
            witness: w,
        });
    }
    out
}

/// Evaluates the hypotheses of the relevant criterion exactly.
pub fn check_assumptions(h: &ConvexProcess, property: Property) -> Vec<Assumption> {
    assumptions_for(h, property, &subspaces(h))
}

pub fn check_reachability(h: &ConvexProcess) -> Verdict {
    check_reachability_with(h, &EigenOptions::default())
}

pub fn check_null_controllability(h: &ConvexProcess) -> Verdict {
    check_null_controllability_with(h, &EigenOptions::default())
}

fn breakpoint_values(rep: &EigenReport) -> Vec<ExactReal> {
    rep.breakpoints.iter().map(|b| b.lambda.clone()).collect()
}

fn spectral_verdict(
    property: Property,
    assumptions: Vec<Assumption>,
    sub: Subspaces,
    rep: EigenReport,
    opts: &EigenOptions,
) -> Verdict {
    let (result, certificate, notes) = match rep.status {
        EigenStatus::Exists => {
            let w = rep.witnesses[0].clone();
            (
                VerdictResult::Fails,
                Some(Certificate::Eigenpair {
                    lambda: w.lambda,
                    xi: w.xi,
                }),
                String::new(),
            )
        }
        EigenStatus::NotExists => (
            VerdictResult::Holds,
            Some(Certificate::Support {
                breakpoints: breakpoint_values(&rep),
                r_minus: sub.r_minus,
                r_plus: sub.r_plus,
                n_minus: (property == Property::NullControllability).then_some(sub.n_minus),
            }),
            String::new(),
        ),
        EigenStatus::Indeterminate => (
            VerdictResult::Indeterminate,
            Some(Certificate::Unresolved {
                intervals: rep.unresolved.clone(),
                refine_depth: opts.refine_depth,
            }),
            "increase the refinement depth to retry undecided breakpoints".to_string(),
        ),
    };
    Verdict {
        property,
        result,
        assumptions,
        certificate,
        steps: sub.steps,
        notes,
    }
}

fn violated(property: Property, assumptions: Vec<Assumption>, steps: usize, dual: &ConvexProcess, constraint: EigenConstraint, opts: &EigenOptions) -> Verdict {
    let rep = eigen_exists_with(dual, constraint, None, opts).expect("no restriction");
    let kind = match constraint {
        EigenConstraint::LambdaGeq0 => "nonnegative",
        EigenConstraint::LambdaGt0 => "positive",
    };
    let notes = match rep.status {
        EigenStatus::Exists => format!(
            "spectral criterion not applicable; H- has a {kind} eigenvalue {}",
            describe(&rep.witnesses[0].lambda)
        ),
        EigenStatus::NotExists => format!("spectral criterion not applicable; H- has no {kind} eigenvalues"),
        EigenStatus::Indeterminate => "spectral criterion not applicable".to_string(),
    };
    Verdict {
        property,
        result: VerdictResult::AssumptionsViolated,
        assumptions,
        certificate: None,
        steps,
        notes,
    }
}

fn describe(x: &ExactReal) -> String {
    match x {
        ExactReal::Rational(r) => r.to_string(),
        ExactReal::Algebraic { interval, .. } => format!("in ({}, {})", interval[0], interval[1]),
    }
}

pub fn check_reachability_with(h: &ConvexProcess, opts: &EigenOptions) -> Verdict {
    let property = Property::Reachability;
    let sub = subspaces(h);
    let assumptions = assumptions_for(h, property, &sub);
    let dual = h.dual(DualSign::Minus);
    if assumptions.iter().any(|a| !a.satisfied) {
        return violated(property, assumptions, sub.steps, &dual, EigenConstraint::LambdaGeq0, opts);
    }
    if !sub.r_plus.is_full() {
        let normal = sub.r_plus.orthogonal_complement().vectors().remove(0);
        return Verdict {
            property,
            result: VerdictResult::Fails,
            assumptions,
            certificate: Some(Certificate::DeficientSubspace {
                r_plus: sub.r_plus,
                normal,
            }),
            steps: sub.steps,
            notes: String::new(),
        };
    }
    let rep = eigen_exists_with(&dual, EigenConstraint::LambdaGeq0, None, opts).expect("no restriction");
    spectral_verdict(property, assumptions, sub, rep, opts)
}

pub fn check_null_controllability_with(h: &ConvexProcess, opts: &EigenOptions) -> Verdict {
    let property = Property::NullControllability;
    let sub = subspaces(h);
    let assumptions = assumptions_for(h, property, &sub);
    let dual = h.dual(DualSign::Minus);
    if assumptions.iter().any(|a| !a.satisfied) {
        return violated(property, assumptions, sub.steps, &dual, EigenConstraint::LambdaGt0, opts);
    }
    let rep = eigen_exists_with(&dual, EigenConstraint::LambdaGt0, None, opts).expect("no restriction");
    spectral_verdict(property, assumptions, sub, rep, opts)
}
