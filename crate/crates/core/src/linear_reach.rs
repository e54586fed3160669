//! Reachable and null-controllable subspaces of linear processes.

use crate::process::LinearProcess;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReachDir {
    Forward,
    Backward,
}

/// FORWARD: `R(L) = ⋃ L^ℓ(0)`. BACKWARD: the same for `L⁻¹`, giving `N(L)`.
///
/// `steps` is the first `ℓ` with `S_ℓ = S_{ℓ+1}`.
pub fn reach_subspace(l: &LinearProcess, dir: ReachDir) -> (Subspace, usize) {
    let inv;
    let l = match dir {
        ReachDir::Forward => l,
        ReachDir::Backward => {
            inv = l.inverse();
            &inv
        }
    };
    let n = l.n();
    let mut s = Subspace::zero(n);
    let mut steps = 0;
    loop {
        let next = l.apply(&s).expect("dimensions agree");
        debug_assert!(next.contains(&s).unwrap());
        if next.dim() == s.dim() {
            return (s, steps);
        }
        s = next;
        steps += 1;
        assert!(steps <= n, "subspace iteration exceeded the dimension bound");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RatMatrix;
    use crate::rat::rvec;

    #[test]
    fn input_line_reaches_everything_in_one_step() {
        let l = LinearProcess::from_subspace(1, Subspace::span(2, &[rvec(&[0, 1])])).unwrap();
        let (r, steps) = reach_subspace(&l, ReachDir::Forward);
        assert!(r.is_full());
        assert_eq!(steps, 1);
    }

    #[test]
    fn identity_reaches_nothing() {
        let l = LinearProcess::from_matrix(&RatMatrix::identity(3)).unwrap();
        assert_eq!(reach_subspace(&l, ReachDir::Forward), (Subspace::zero(3), 0));
        assert_eq!(reach_subspace(&l, ReachDir::Backward), (Subspace::zero(3), 0));
    }

    #[test]
    fn nilpotent_map_is_null_controllable() {
        // x -> Nx with N the 2x2 shift; N² = 0 so every state hits 0 in two steps
        let l = LinearProcess::from_matrix(&RatMatrix::from_ints(&[&[0, 1], &[0, 0]])).unwrap();
        let (n, steps) = reach_subspace(&l, ReachDir::Backward);
        assert!(n.is_full());
        assert_eq!(steps, 2);
    }
}
