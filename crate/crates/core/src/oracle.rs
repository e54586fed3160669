//! Brute-force finite-step sets and sampled trajectories.
//!
//! Trajectory sampling is the only place that produces floating-point
//! output; everything else is exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::PolyhedralCone;
use crate::error::{check_dim, Result};
use crate::process::ConvexProcess;
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OracleDir {
    Reach,
    Null,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KStepSets {
    /// `cones[ℓ]` for `ℓ = 0..=k`.
    pub cones: Vec<PolyhedralCone>,
    /// First `ℓ < k` with `C_ℓ = C_{ℓ+1}`.
    pub saturated_at: Option<usize>,
}

/// REACH: `C_ℓ = H^ℓ(0)`. NULL: the same for `H⁻¹`.
pub fn k_step_set(h: &ConvexProcess, k: usize, dir: OracleDir) -> KStepSets {
    let inv;
    let h = match dir {
        OracleDir::Reach => h,
        OracleDir::Null => {
            inv = h.inverse();
            &inv
        }
    };
    let mut cones = vec![PolyhedralCone::zero(h.n())];
    let mut saturated_at = None;
    for l in 0..k {
        if saturated_at.is_some() {
            cones.push(cones[l].clone());
            continue;
        }
        let next = h.apply(&cones[l]).expect("dimensions agree").complete_description();
        if next == cones[l] {
            saturated_at = Some(l);
        }
        cones.push(next);
    }
    KStepSets { cones, saturated_at }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleSets {
    /// `cones[ℓ] = F_ℓ` for `ℓ = 0..=k`.
    pub cones: Vec<PolyhedralCone>,
    /// First `ℓ < k` with `F_ℓ = F_{ℓ+1}`.
    pub stabilized_at: Option<usize>,
}

/// `F_0 = R^n`, `F_{ℓ+1} = H⁻¹(F_ℓ)`.
pub fn feasible_chain(h: &ConvexProcess, k: usize) -> FeasibleSets {
    let inv = h.inverse();
    let mut cones = vec![PolyhedralCone::full(h.n())];
    let mut stabilized_at = None;
    for l in 0..k {
        if stabilized_at.is_some() {
            cones.push(cones[l].clone());
            continue;
        }
        let next = inv.apply(&cones[l]).expect("dimensions agree").complete_description();
        if next == cones[l] {
            stabilized_at = Some(l);
        }
        cones.push(next);
    }
    FeasibleSets { cones, stabilized_at }
}

/// States admitting a trajectory of `k` steps.
pub fn feasible_k(h: &ConvexProcess, k: usize) -> PolyhedralCone {
    feasible_chain(h, k).cones.pop().expect("nonempty chain")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Trajectory {
    Feasible { states: Vec<Vec<f64>> },
    Infeasible { step: usize, states: Vec<Vec<f64>> },
}

/// Greedy trajectory `x_0, ..., x_k` with `x_{i+1}` an optimizer of a seeded
/// random integer objective over `H(x_i)` within a box.
pub fn sample_trajectory(h: &ConvexProcess, x0: &[Rat], k: usize, seed: u64) -> Result<Trajectory> {
    check_dim("initial state", h.n(), x0.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let to_f64 = |x: &[Rat]| x.iter().map(Rat::to_f64).collect::<Vec<f64>>();
    let mut x = x0.to_vec();
    let mut states = vec![to_f64(&x)];
    for step in 0..k {
        let section = h.section(&x)?;
        let Some(p) = section.find_point() else {
            return Ok(Trajectory::Infeasible { step, states });
        };
        let radius = x.iter().chain(&p).map(Rat::abs).max().unwrap_or_else(Rat::zero) + Rat::one();
        let objective: Vec<Rat> = (0..h.n()).map(|_| Rat::from_int(rng.gen_range(-5..=5))).collect();
        x = section
            .maximize_in_box(&objective, &radius)?
            .expect("box contains a feasible point");
        states.push(to_f64(&x));
    }
    Ok(Trajectory::Feasible { states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RatMatrix;
    use crate::rat::rvec;

    fn example_one() -> ConvexProcess {
        let y = PolyhedralCone::from_constraints(2, &[rvec(&[-1, 0])], &[]).unwrap();
        let m = RatMatrix::from_ints;
        ConvexProcess::from_constrained_system(&m(&[&[1]]), &m(&[&[1]]), &m(&[&[1], &[0]]), &m(&[&[0], &[1]]), &y)
            .unwrap()
    }

    fn hbar() -> ConvexProcess {
        let g = PolyhedralCone::from_generators(2, &[rvec(&[0, 1])], &[rvec(&[1, 0])]).unwrap();
        ConvexProcess::from_graph(1, g).unwrap()
    }

    #[test]
    fn example_one_saturates_after_one_step() {
        let r = k_step_set(&example_one(), 3, OracleDir::Reach);
        assert_eq!(r.saturated_at, Some(1));
        assert!(r.cones[1].is_full());
        assert_eq!(r.cones.len(), 4);
        assert_eq!(feasible_k(&example_one(), 1), PolyhedralCone::orthant(1));
        assert_eq!(feasible_k(&example_one(), 4), PolyhedralCone::orthant(1));
    }

    #[test]
    fn identity_never_leaves_zero() {
        let id = ConvexProcess::from_matrix(&RatMatrix::identity(2)).unwrap();
        let r = k_step_set(&id, 3, OracleDir::Reach);
        assert_eq!(r.saturated_at, Some(0));
        assert!(r.cones.iter().all(PolyhedralCone::is_zero));
    }

    #[test]
    fn hbar_chains() {
        let r = k_step_set(&hbar(), 4, OracleDir::Reach);
        assert!(r.cones[1..].iter().all(|c| c == &PolyhedralCone::orthant(1)));
        assert_eq!(r.saturated_at, Some(1));
        let n = k_step_set(&hbar(), 4, OracleDir::Null);
        assert!(n.cones[1].is_full());
        assert_eq!(n.saturated_at, Some(1));
        assert!(feasible_k(&hbar(), 5).is_full());
    }

    #[test]
    fn zero_domain_process() {
        // graph {(0, y)}: only the origin has successors
        let g = PolyhedralCone::from_generators(2, &[], &[rvec(&[0, 1])]).unwrap();
        let h = ConvexProcess::from_graph(1, g).unwrap();
        assert!(feasible_k(&h, 1).is_zero());
    }

    #[test]
    fn trajectories() {
        let id = ConvexProcess::from_matrix(&RatMatrix::identity(2)).unwrap();
        let t = sample_trajectory(&id, &rvec(&[3, -1]), 3, 7).unwrap();
        assert_eq!(t, Trajectory::Feasible { states: vec![vec![3.0, -1.0]; 4] });
        match sample_trajectory(&hbar(), &rvec(&[-2]), 4, 1).unwrap() {
            Trajectory::Feasible { states } => assert!(states[1..].iter().all(|s| s[0] >= 0.0)),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            sample_trajectory(&example_one(), &rvec(&[-1]), 3, 0).unwrap(),
            Trajectory::Infeasible { step: 0, states: vec![vec![-1.0]] }
        );
        let a = sample_trajectory(&hbar(), &rvec(&[1]), 5, 42).unwrap();
        assert_eq!(a, sample_trajectory(&hbar(), &rvec(&[1]), 5, 42).unwrap());
    }
}
