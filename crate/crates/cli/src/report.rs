//! Text and JSON rendering.

use std::fmt::Write;

use conproc::algebraic::ExactReal;
use conproc::analysis::{Certificate, Property, Verdict};
use conproc::cone::PolyhedralCone;
use conproc::linear_reach::{reach_subspace, ReachDir};
use conproc::oracle::Trajectory;
use conproc::spectral::EigenVector;
use conproc::{ConvexProcess, Rat, Subspace};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

fn to_json<T: Serialize>(v: &T) -> String {
    // Value maps are ordered, so keys come out sorted.
    let value = serde_json::to_value(v).expect("serializable");
    format!("{}\n", serde_json::to_string_pretty(&value).expect("valid json"))
}

fn vec_str(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(Rat::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn vecs_str(vs: &[Vec<Rat>]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| vec_str(v)).collect();
    format!("[{}]", parts.join(", "))
}

/// `c[0] + c[1] var + ...` with zero terms dropped.
fn poly_str(c: &[Rat], var: &str) -> String {
    let mut out = String::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = *a < Rat::zero();
        let mag = a.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() || mag != Rat::one() {
            out.push_str(&mag.to_string());
            if !mono.is_empty() {
                out.push('*');
            }
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn real_str(r: &ExactReal) -> String {
    match r {
        ExactReal::Rational(q) => q.to_string(),
        ExactReal::Algebraic { interval, minpoly } => {
            format!("root of {} in ({}, {})", poly_str(minpoly, "t"), interval[0], interval[1])
        }
    }
}

fn eigvec_str(v: &EigenVector) -> String {
    match v {
        EigenVector::Rational(x) => vec_str(x),
        EigenVector::Algebraic(cs) => {
            let parts: Vec<String> = cs.iter().map(|c| poly_str(c, "lambda")).collect();
            format!("[{}]", parts.join(", "))
        }
    }
}

fn subspace_str(s: &Subspace) -> String {
    format!("span {}", vecs_str(&s.vectors()))
}

fn property_name(p: Property) -> &'static str {
    match p {
        Property::Reachability => "REACHABILITY",
        Property::NullControllability => "NULL_CONTROLLABILITY",
    }
}

fn result_name(v: &Verdict) -> String {
    match serde_json::to_value(v.result).expect("serializable") {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn verdict_text(v: &Verdict, certificate: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {}", property_name(v.property), result_name(v));
    for a in &v.assumptions {
        let mark = if a.satisfied { '✓' } else { '✗' };
        let _ = write!(out, "  {mark} {}", a.name);
        if let Some(w) = &a.witness {
            let _ = write!(out, " (normal {})", vec_str(w));
        }
        out.push('\n');
    }
    match &v.certificate {
        Some(Certificate::Eigenpair { lambda, xi }) => {
            let _ = writeln!(out, "  obstruction: lambda={}, xi={}", real_str(lambda), eigvec_str(xi));
        }
        Some(Certificate::DeficientSubspace { r_plus, normal }) => {
            let _ = writeln!(out, "  obstruction: R+ = {} misses normal {}", subspace_str(r_plus), vec_str(normal));
        }
        Some(Certificate::Unresolved { intervals, refine_depth }) => {
            let _ = writeln!(out, "  unresolved after {refine_depth} bisections:");
            for r in intervals {
                let _ = writeln!(out, "    {}", real_str(r));
            }
        }
        Some(Certificate::Support { r_minus, r_plus, n_minus, breakpoints }) if certificate => {
            let _ = writeln!(out, "  R- = {}", subspace_str(r_minus));
            let _ = writeln!(out, "  R+ = {}", subspace_str(r_plus));
            if let Some(nm) = n_minus {
                let _ = writeln!(out, "  N- = {}", subspace_str(nm));
            }
            let bs: Vec<String> = breakpoints.iter().map(real_str).collect();
            let _ = writeln!(out, "  breakpoints: [{}]", bs.join(", "));
        }
        Some(Certificate::Support { .. }) | None => {}
    }
    if certificate {
        let _ = writeln!(out, "  steps: {}", v.steps);
    }
    if !v.notes.is_empty() {
        let _ = writeln!(out, "  note: {}", v.notes);
    }
    out
}

pub fn verdicts(vs: &[Verdict], format: Format, certificate: bool) -> String {
    match format {
        Format::Json if vs.len() == 1 => to_json(&vs[0]),
        Format::Json => to_json(&vs),
        Format::Text => vs.iter().map(|v| verdict_text(v, certificate)).collect(),
    }
}

fn cone_text(c: &PolyhedralCone) -> String {
    let g = c.generators();
    let h = c.constraints();
    format!(
        "rays {} lines {} | ineqs {} eqs {}",
        vecs_str(&g.rays),
        vecs_str(&g.lines),
        vecs_str(&h.ineqs),
        vecs_str(&h.eqs)
    )
}

pub fn chain(label: &str, cones: &[PolyhedralCone], saturated_at: Option<usize>, format: Format) -> String {
    let k = cones.len() - 1;
    match format {
        Format::Json => {
            let cs: Vec<_> = cones.iter().map(PolyhedralCone::to_json).collect();
            to_json(&json!({"dir": label, "steps": k, "cones": cs, "saturated_at": saturated_at}))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{label} k={k}");
            for (l, c) in cones.iter().enumerate() {
                let _ = writeln!(out, "  l={l}: {}", cone_text(c));
            }
            match saturated_at {
                Some(l) => {
                    let full = if cones[l].is_full() { " (whole space)" } else { "" };
                    let _ = writeln!(out, "saturated at l={l}{full}");
                }
                None => {
                    let _ = writeln!(out, "not saturated within {k} steps");
                }
            }
            out
        }
    }
}

pub fn trajectory(t: &Trajectory, format: Format) -> String {
    match (format, t) {
        (Format::Json, Trajectory::Feasible { states }) => to_json(states),
        (Format::Json, Trajectory::Infeasible { .. }) => to_json(t),
        (Format::Text, _) => {
            let (states, stuck) = match t {
                Trajectory::Feasible { states } => (states, None),
                Trajectory::Infeasible { step, states } => (states, Some(*step)),
            };
            let mut out = String::new();
            for (i, x) in states.iter().enumerate() {
                let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "x_{i} = [{}]", parts.join(", "));
            }
            if let Some(s) = stuck {
                let _ = writeln!(out, "INFEASIBLE: H(x_{s}) is empty");
            }
            out
        }
    }
}

pub fn process(h: &ConvexProcess, format: Format) -> String {
    match format {
        Format::Json => to_json(&json!({"n": h.n(), "graph": h.graph().to_json()})),
        Format::Text => format!("n={}\ngraph: {}\n", h.n(), cone_text(h.graph())),
    }
}

pub fn info(h: &ConvexProcess, format: Format) -> String {
    let (dom, im) = h.dom_im();
    let (lm, lp) = h.linear_bounds();
    let (r_minus, _) = reach_subspace(&lm, ReachDir::Forward);
    let (r_plus, _) = reach_subspace(&lp, ReachDir::Forward);
    let (n_minus, _) = reach_subspace(&lm, ReachDir::Backward);
    let h0 = h.apply(&PolyhedralCone::zero(h.n())).expect("dimensions agree");
    match format {
        Format::Json => to_json(&json!({
            "n": h.n(),
            "dom": dom.to_json(),
            "im": im.to_json(),
            "H(0)": h0.to_json(),
            "L_minus": lm.graph(),
            "L_plus": lp.graph(),
            "R_minus": r_minus,
            "R_plus": r_plus,
            "N_minus": n_minus,
        })),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "n = {}", h.n());
            let _ = writeln!(out, "dom H: {}", cone_text(&dom));
            let _ = writeln!(out, "im H: {}", cone_text(&im));
            let _ = writeln!(out, "H(0): {}", cone_text(&h0));
            let _ = writeln!(out, "graph L-: {}", subspace_str(lm.graph()));
            let _ = writeln!(out, "graph L+: {}", subspace_str(lp.graph()));
            let _ = writeln!(out, "R- = {}", subspace_str(&r_minus));
            let _ = writeln!(out, "R+ = {}", subspace_str(&r_plus));
            let _ = writeln!(out, "N- = {}", subspace_str(&n_minus));
            out
        }
    }
}
