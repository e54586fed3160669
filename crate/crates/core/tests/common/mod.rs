//! Random instances and brute-force checks shared by the integration tests.
#![allow(dead_code)]

use conproc::cone::PolyhedralCone;
use conproc::lp::{solve_rational, LinearProgram, LpOutcome, Relation};
use conproc::matrix::RatMatrix;
use conproc::{ConvexProcess, Rat};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integers, zero with probability about `zero_bias`.
pub fn entry(rng: &mut Rng8, zero_bias: f64) -> Rat {
    if rng.gen_bool(zero_bias) {
        Rat::zero()
    } else {
        let v = rng.gen_range(1..=3);
        Rat::from_int(if rng.gen_bool(0.5) { v } else { -v })
    }
}

pub fn vector(rng: &mut Rng8, d: usize, zero_bias: f64) -> Vec<Rat> {
    (0..d).map(|_| entry(rng, zero_bias)).collect()
}

pub fn matrix(rng: &mut Rng8, r: usize, c: usize, zero_bias: f64) -> RatMatrix {
    let entries = (0..r * c).map(|_| entry(rng, zero_bias)).collect();
    RatMatrix::from_vec(r, c, entries).unwrap()
}

/// A cone in `R^d` with at most `max_gens` generators, given in V- or H-form.
pub fn cone(rng: &mut Rng8, d: usize, max_gens: usize) -> PolyhedralCone {
    let k = rng.gen_range(0..=max_gens);
    let vs: Vec<Vec<Rat>> = (0..k).map(|_| vector(rng, d, 0.3)).collect();
    let split = vs.len() - rng.gen_range(0..=vs.len().min(1));
    let (a, b) = vs.split_at(split);
    if rng.gen_bool(0.5) {
        PolyhedralCone::from_generators(d, a, b).unwrap()
    } else {
        PolyhedralCone::from_constraints(d, a, b).unwrap()
    }
}

/// A process with a random graph cone in `R^{2n}`.
pub fn graph_process(rng: &mut Rng8, n: usize, max_gens: usize) -> ConvexProcess {
    ConvexProcess::from_graph(n, cone(rng, 2 * n, max_gens)).unwrap()
}

/// `H(x) = Ax + Q` with `Q` a random cone, so `dom H = R^n`.
pub fn strict_process(rng: &mut Rng8, n: usize) -> ConvexProcess {
    let a = matrix(rng, n, n, 0.4);
    let q = cone(rng, n, 3);
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    let mut lines: Vec<Vec<Rat>> = Vec::new();
    for j in 0..n {
        let mut e = vec![Rat::zero(); 2 * n];
        e[j] = Rat::one();
        for i in 0..n {
            e[n + i] = a.get(i, j).clone();
        }
        lines.push(e);
    }
    let g = q.generators();
    let lift = |v: &Vec<Rat>| -> Vec<Rat> { vec![Rat::zero(); n].into_iter().chain(v.iter().cloned()).collect() };
    rays.extend(g.rays.iter().map(lift));
    lines.extend(g.lines.iter().map(lift));
    ConvexProcess::from_graph(n, PolyhedralCone::from_generators(2 * n, &rays, &lines).unwrap()).unwrap()
}

/// `H(x) = Ax + Q` with `A >= 0` entrywise and `Q` inside the orthant, so
/// the orthant is strongly invariant.
pub fn monotone_process(rng: &mut Rng8, n: usize) -> ConvexProcess {
    let a: Vec<Vec<Rat>> = (0..n).map(|_| nonneg_vector(rng, n)).collect();
    let a = RatMatrix::from_rows(n, &a).unwrap();
    let q: Vec<Vec<Rat>> = (0..rng.gen_range(0..=2)).map(|_| nonneg_vector(rng, n)).collect();
    let mut lines: Vec<Vec<Rat>> = Vec::new();
    for j in 0..n {
        let mut e = vec![Rat::zero(); 2 * n];
        e[j] = Rat::one();
        for i in 0..n {
            e[n + i] = a.get(i, j).clone();
        }
        lines.push(e);
    }
    let rays: Vec<Vec<Rat>> = q.iter().map(|v| pad(v, n, 0)).collect();
    ConvexProcess::from_graph(n, PolyhedralCone::from_generators(2 * n, &rays, &lines).unwrap()).unwrap()
}

pub fn nonneg_vector(rng: &mut Rng8, d: usize) -> Vec<Rat> {
    (0..d).map(|_| if rng.gen_bool(0.5) { Rat::zero() } else { Rat::from_int(rng.gen_range(1..=2)) }).collect()
}

/// `x+ = Ax + Bu` with `Cx + Du ∈ Y`, `Y` an orthant-like random cone.
pub fn constrained_process(rng: &mut Rng8, n: usize) -> ConvexProcess {
    let m = rng.gen_range(1..=2);
    let p = rng.gen_range(1..=2);
    let a = matrix(rng, n, n, 0.5);
    let b = matrix(rng, n, m, 0.4);
    let c = matrix(rng, p, n, 0.6);
    let d = matrix(rng, p, m, 0.4);
    let mut ineqs = Vec::new();
    for i in 0..p {
        if rng.gen_bool(0.7) {
            let mut w = vec![Rat::zero(); p];
            w[i] = Rat::from_int(-1);
            ineqs.push(w);
        }
    }
    let y = PolyhedralCone::from_constraints(p, &ineqs, &[]).unwrap();
    ConvexProcess::from_constrained_system(&a, &b, &c, &d, &y).unwrap()
}

/// One of the three families above.
pub fn process(rng: &mut Rng8, n: usize) -> ConvexProcess {
    match rng.gen_range(0..3) {
        0 => graph_process(rng, n, 6),
        1 => strict_process(rng, n),
        _ => constrained_process(rng, n),
    }
}

pub fn pick<T: Clone>(rng: &mut Rng8, xs: &[T]) -> T {
    xs.choose(rng).unwrap().clone()
}

fn feasible(lp: &LinearProgram<Rat>) -> bool {
    !matches!(solve_rational(lp), LpOutcome::Infeasible)
}

/// `max obj.z` over a cone described by rows acting on `z`, with `obj.z <= 1`.
fn cone_max_positive(width: usize, obj: &[Rat], ineqs: &[Vec<Rat>], eqs: &[Vec<Rat>]) -> bool {
    let mut lp = LinearProgram::new(obj.to_vec());
    for a in ineqs {
        lp.constrain(a.clone(), Relation::Le, Rat::zero());
    }
    for e in eqs {
        lp.constrain(e.clone(), Relation::Eq, Rat::zero());
    }
    lp.constrain(obj.to_vec(), Relation::Le, Rat::one());
    debug_assert_eq!(obj.len(), width);
    match solve_rational(&lp) {
        LpOutcome::Optimal { value, .. } => value > Rat::zero(),
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    }
}

fn pad(v: &[Rat], before: usize, after: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); before];
    out.extend(v.iter().cloned());
    out.extend(std::iter::repeat(Rat::zero()).take(after));
    out
}

/// `H(x) ∩ C ≠ ∅` for every `x ∈ C`, checked on the generators of `C` by LP.
pub fn weakly_invariant_by_definition(h: &ConvexProcess, c: &PolyhedralCone) -> bool {
    let n = h.n();
    let gr = h.graph().constraints();
    let cc = c.constraints();
    let g = c.generators();
    let mut points: Vec<Vec<Rat>> = g.rays.clone();
    for l in &g.lines {
        points.push(l.clone());
        points.push(l.iter().map(|x| -x).collect());
    }
    points.iter().all(|x| {
        let mut lp = LinearProgram::new(vec![Rat::zero(); n]);
        for (rows, rel) in [(&gr.ineqs, Relation::Le), (&gr.eqs, Relation::Eq)] {
            for a in rows {
                let rhs: Rat = -a[..n].iter().zip(x).map(|(p, q)| p * q).sum::<Rat>();
                lp.constrain(a[n..].to_vec(), rel, rhs);
            }
        }
        for w in &cc.ineqs {
            lp.constrain(w.clone(), Relation::Le, Rat::zero());
        }
        for e in &cc.eqs {
            lp.constrain(e.clone(), Relation::Eq, Rat::zero());
        }
        feasible(&lp)
    })
}

/// `H(x) ⊆ C` for every `x ∈ C`: every facet of `C` bounds `y` over
/// `{(x, y) ∈ graph : x ∈ C}`.
pub fn strongly_invariant_by_definition(h: &ConvexProcess, c: &PolyhedralCone) -> bool {
    let n = h.n();
    let gr = h.graph().constraints();
    let cc = c.constraints();
    let mut ineqs: Vec<Vec<Rat>> = gr.ineqs.clone();
    let mut eqs: Vec<Vec<Rat>> = gr.eqs.clone();
    ineqs.extend(cc.ineqs.iter().map(|w| pad(w, 0, n)));
    eqs.extend(cc.eqs.iter().map(|e| pad(e, 0, n)));
    let mut objectives: Vec<Vec<Rat>> = cc.ineqs.iter().map(|w| pad(w, n, 0)).collect();
    for e in &cc.eqs {
        objectives.push(pad(e, n, 0));
        objectives.push(pad(&e.iter().map(|x| -x).collect::<Vec<_>>(), n, 0));
    }
    objectives.iter().all(|obj| !cone_max_positive(2 * n, obj, &ineqs, &eqs))
}

/// Iterates `S <- seed + H(S)` until it stops growing, giving a strongly
/// invariant cone, or `None` after `cap` steps.
pub fn strong_closure(h: &ConvexProcess, seed: &PolyhedralCone, cap: usize) -> Option<PolyhedralCone> {
    let mut s = seed.clone();
    for _ in 0..cap {
        let next = seed.sum(&h.apply(&s).unwrap()).unwrap().sum(&s).unwrap();
        if next == s {
            return Some(s);
        }
        s = next;
    }
    None
}

/// Iterates `W <- seed ∩ H⁻¹(W)` until it stops shrinking, giving a weakly
/// invariant cone, or `None` after `cap` steps.
pub fn weak_kernel(h: &ConvexProcess, seed: &PolyhedralCone, cap: usize) -> Option<PolyhedralCone> {
    let inv = h.inverse();
    let mut w = seed.clone();
    for _ in 0..cap {
        let next = seed.intersect(&inv.apply(&w).unwrap()).unwrap();
        if next == w {
            return Some(w);
        }
        w = next;
    }
    None
}
