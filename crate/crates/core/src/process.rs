//! Convex processes represented by their graph cones in `R^{2n}`.
//!
//! Graph coordinates are ordered `(x, y)` with `y ∈ H(x)`.

use crate::cone::{MapDir, PolarSign, PolyhedralCone};
use crate::error::{check_dim, Error, Result};
use crate::lp::{solve_rational, LinearProgram, LpOutcome, Relation};
use crate::matrix::RatMatrix;
use crate::rat::{self, Rat};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSign {
    Minus,
    Plus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvarianceMode {
    Weak,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexProcess {
    n: usize,
    graph: PolyhedralCone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProcess {
    n: usize,
    graph: Subspace,
}

/// Maps a cone through an invertible matrix using whichever description is
/// already available.
fn transform(c: &PolyhedralCone, m: &RatMatrix, m_inv: &RatMatrix) -> PolyhedralCone {
    if c.has_constraints() && !c.has_generators() {
        c.linear_map(m_inv, MapDir::Preimage).expect("square map")
    } else {
        c.linear_map(m, MapDir::Image).expect("square map")
    }
}

/// `(x, y) -> (y, x)`.
fn swap_matrix(n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, Rat::one());
        m.set(n + i, i, Rat::one());
    }
    m
}

/// `(a, b) -> (b, -a)` and its inverse.
fn rotation(n: usize) -> (RatMatrix, RatMatrix) {
    let mut r = RatMatrix::zeros(2 * n, 2 * n);
    let mut r_inv = RatMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        r.set(i, n + i, Rat::one());
        r.set(n + i, i, -Rat::one());
        r_inv.set(i, n + i, -Rat::one());
        r_inv.set(n + i, i, Rat::one());
    }
    (r, r_inv)
}

fn x_part(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn y_part(n: usize) -> Vec<usize> {
    (n..2 * n).collect()
}

impl ConvexProcess {
    pub fn from_graph(n: usize, graph: PolyhedralCone) -> Result<Self> {
        check_dim("process graph", 2 * n, graph.ambient_dim())?;
        Ok(ConvexProcess { n, graph })
    }

    /// `H(x) = {Ax}`.
    pub fn from_matrix(a: &RatMatrix) -> Result<Self> {
        Ok(Self::from_linear(&LinearProcess::from_matrix(a)?))
    }

    pub fn from_linear(l: &LinearProcess) -> Self {
        ConvexProcess {
            n: l.n,
            graph: PolyhedralCone::from_subspace(&l.graph),
        }
    }

    /// `H(x) = {Ax + Bu : Cx + Du ∈ Y}`. The inputs `u` are eliminated by
    /// Fourier–Motzkin, last to first.
    pub fn from_constrained_system(
        a: &RatMatrix,
        b: &RatMatrix,
        c: &RatMatrix,
        d: &RatMatrix,
        y: &PolyhedralCone,
    ) -> Result<Self> {
        let n = a.rows();
        check_dim("A columns", n, a.cols())?;
        check_dim("B rows", n, b.rows())?;
        let m = b.cols();
        let p = c.rows();
        check_dim("C columns", n, c.cols())?;
        check_dim("D rows", p, d.rows())?;
        check_dim("D columns", m, d.cols())?;
        check_dim("Y dimension", p, y.ambient_dim())?;

        // variables (x, u, z)
        let width = 2 * n + m;
        let mut eqs = Vec::new();
        for i in 0..n {
            let mut row = vec![Rat::zero(); width];
            for j in 0..n {
                row[j] = -a.get(i, j);
            }
            for j in 0..m {
                row[n + j] = -b.get(i, j);
            }
            row[n + m + i] = Rat::one();
            eqs.push(row);
        }
        let cd = c.hstack(d)?;
        let compose = |w: &Vec<Rat>| -> Vec<Rat> {
            let mut row = cd.vec_mul(w).expect("width");
            row.extend(std::iter::repeat(Rat::zero()).take(n));
            row
        };
        let yc = y.any_constraints();
        let ineqs: Vec<Vec<Rat>> = yc.ineqs.iter().map(compose).collect();
        eqs.extend(yc.eqs.iter().map(compose));
        let lifted = PolyhedralCone::from_constraints(width, &ineqs, &eqs)?;
        let keep: Vec<usize> = (0..n).chain(n + m..width).collect();
        let graph = lifted.project_fm(&keep)?;
        Ok(ConvexProcess { n, graph })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &PolyhedralCone {
        &self.graph
    }

    pub fn contains_pair(&self, x: &[Rat], y: &[Rat]) -> Result<bool> {
        check_dim("process state", self.n, x.len())?;
        check_dim("process state", self.n, y.len())?;
        let mut xy = x.to_vec();
        xy.extend_from_slice(y);
        self.graph.contains(&xy)
    }

    pub fn inverse(&self) -> ConvexProcess {
        let s = swap_matrix(self.n);
        ConvexProcess {
            n: self.n,
            graph: transform(&self.graph, &s, &s),
        }
    }

    /// MINUS: `p ∈ H⁻(q)` iff `⟨p,x⟩ >= ⟨q,y⟩` for all `y ∈ H(x)`, which is
    /// the polar of the graph rotated by `(a, b) -> (b, -a)`.
    /// PLUS: the negation of the MINUS dual.
    pub fn dual(&self, sign: DualSign) -> ConvexProcess {
        let (r, r_inv) = rotation(self.n);
        let minus = transform(&self.graph.polar(PolarSign::Neg), &r, &r_inv);
        let graph = match sign {
            DualSign::Minus => minus,
            DualSign::Plus => minus.negate(),
        };
        ConvexProcess { n: self.n, graph }
    }

    /// Graphs `lin(graph H)` and `Lin(graph H)`.
    pub fn linear_bounds(&self) -> (LinearProcess, LinearProcess) {
        let (lin, hull) = self.graph.lin_span();
        (
            LinearProcess { n: self.n, graph: lin },
            LinearProcess { n: self.n, graph: hull },
        )
    }

    /// `H(S)`: projection onto `y` of `graph ∩ (S × R^n)`.
    pub fn apply(&self, s: &PolyhedralCone) -> Result<PolyhedralCone> {
        check_dim("process apply", self.n, s.ambient_dim())?;
        let slab = s.product(&PolyhedralCone::full(self.n));
        self.graph.intersect(&slab)?.project(&y_part(self.n))
    }

    /// `(dom H, im H)`.
    pub fn dom_im(&self) -> (PolyhedralCone, PolyhedralCone) {
        let dom = self.graph.project(&x_part(self.n)).expect("indices");
        let im = self.graph.project(&y_part(self.n)).expect("indices");
        (dom, im)
    }

    pub fn is_invariant(&self, c: &PolyhedralCone, mode: InvarianceMode) -> Result<bool> {
        match mode {
            InvarianceMode::Weak => self.inverse().apply(c)?.contains_cone(c),
            InvarianceMode::Strong => c.contains_cone(&self.apply(c)?),
        }
    }

    /// The affine section `H(x0) = {y : (x0, y) ∈ graph}`.
    pub fn section(&self, x0: &[Rat]) -> Result<Section> {
        check_dim("process section", self.n, x0.len())?;
        let n = self.n;
        let g = self.graph.any_constraints();
        let split = |w: &Vec<Rat>| -> (Vec<Rat>, Rat) {
            let (wx, wy) = w.split_at(n);
            (wy.to_vec(), -rat::dot(wx, x0))
        };
        Ok(Section {
            n,
            ineqs: g.ineqs.iter().map(split).collect(),
            eqs: g.eqs.iter().map(split).collect(),
        })
    }
}

impl LinearProcess {
    pub fn from_subspace(n: usize, graph: Subspace) -> Result<Self> {
        check_dim("linear process graph", 2 * n, graph.ambient_dim())?;
        Ok(LinearProcess { n, graph })
    }

    /// Graph `{(x, Ax)}`.
    pub fn from_matrix(a: &RatMatrix) -> Result<Self> {
        let n = a.rows();
        check_dim("linear process matrix", n, a.cols())?;
        let vs: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                let mut v = vec![Rat::zero(); 2 * n];
                v[j] = Rat::one();
                for i in 0..n {
                    v[n + i] = a.get(i, j).clone();
                }
                v
            })
            .collect();
        Ok(LinearProcess {
            n,
            graph: Subspace::span(2 * n, &vs),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn inverse(&self) -> LinearProcess {
        LinearProcess {
            n: self.n,
            graph: self.graph.image(&swap_matrix(self.n)).expect("square map"),
        }
    }

    /// `L(S)`.
    pub fn apply(&self, s: &Subspace) -> Result<Subspace> {
        check_dim("linear process apply", self.n, s.ambient_dim())?;
        let n = self.n;
        let mut vs: Vec<Vec<Rat>> = s
            .vectors()
            .into_iter()
            .map(|mut v| {
                v.extend(std::iter::repeat(Rat::zero()).take(n));
                v
            })
            .collect();
        for i in 0..n {
            let mut e = vec![Rat::zero(); 2 * n];
            e[n + i] = Rat::one();
            vs.push(e);
        }
        let slab = Subspace::span(2 * n, &vs);
        let mut proj = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            proj.set(i, n + i, Rat::one());
        }
        self.graph.intersect(&slab)?.image(&proj)
    }

    pub fn to_convex(&self) -> ConvexProcess {
        ConvexProcess::from_linear(self)
    }
}

/// Affine polyhedron `{y : a.y <= b, e.y = c}`.
#[derive(Clone, Debug)]
pub struct Section {
    n: usize,
    ineqs: Vec<(Vec<Rat>, Rat)>,
    eqs: Vec<(Vec<Rat>, Rat)>,
}

impl Section {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn contains(&self, y: &[Rat]) -> Result<bool> {
        check_dim("section membership", self.n, y.len())?;
        Ok(self.ineqs.iter().all(|(a, b)| &rat::dot(a, y) <= b)
            && self.eqs.iter().all(|(e, c)| &rat::dot(e, y) == c))
    }

    fn program(&self, objective: Vec<Rat>) -> LinearProgram<Rat> {
        let mut lp = LinearProgram::new(objective);
        for (a, b) in &self.ineqs {
            lp.constrain(a.clone(), Relation::Le, b.clone());
        }
        for (e, c) in &self.eqs {
            lp.constrain(e.clone(), Relation::Eq, c.clone());
        }
        lp
    }

    /// Some point of the section, or `None` if it is empty.
    pub fn find_point(&self) -> Option<Vec<Rat>> {
        match solve_rational(&self.program(vec![Rat::zero(); self.n])) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.find_point().is_none()
    }

    /// Maximizes `objective` over the section intersected with the box
    /// `|y_i| <= radius`.
    pub fn maximize_in_box(&self, objective: &[Rat], radius: &Rat) -> Result<Option<Vec<Rat>>> {
        if objective.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "section objective",
                expected: self.n,
                found: objective.len(),
            });
        }
        let mut lp = self.program(objective.to_vec());
        for i in 0..self.n {
            lp.bound(i, Some(-radius), Some(radius.clone()));
        }
        Ok(solve_rational(&lp).optimal().map(|(_, x)| x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rvec;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_ints(rows)
    }

    /// The scalar example: z = x + u with x >= 0 and u free.
    fn example_one() -> ConvexProcess {
        let y = PolyhedralCone::from_constraints(2, &[rvec(&[-1, 0])], &[]).unwrap();
        ConvexProcess::from_constrained_system(&m(&[&[1]]), &m(&[&[1]]), &m(&[&[1], &[0]]), &m(&[&[0], &[1]]), &y)
            .unwrap()
    }

    /// Graph `R × R+`.
    fn hbar() -> ConvexProcess {
        let g = PolyhedralCone::from_generators(2, &[rvec(&[0, 1])], &[rvec(&[1, 0])]).unwrap();
        ConvexProcess::from_graph(1, g).unwrap()
    }

    #[test]
    fn example_one_graph() {
        let h = example_one();
        let expected = PolyhedralCone::from_constraints(2, &[rvec(&[-1, 0])], &[]).unwrap();
        assert_eq!(h.graph(), &expected);
        assert_eq!(h.dom_im().0, PolyhedralCone::orthant(1));
        assert_eq!(h.apply(&PolyhedralCone::zero(1)).unwrap(), PolyhedralCone::full(1));
        let (lm, _) = h.linear_bounds();
        assert_eq!(lm.graph(), &Subspace::span(2, &[rvec(&[0, 1])]));
    }

    #[test]
    fn linear_map_as_constrained_system() {
        let a = m(&[&[1, 2], &[0, 3]]);
        let z = RatMatrix::zeros(2, 1);
        let h = ConvexProcess::from_constrained_system(&a, &z, &RatMatrix::zeros(1, 2), &RatMatrix::zeros(1, 1), &PolyhedralCone::zero(1)).unwrap();
        assert_eq!(h, ConvexProcess::from_matrix(&a).unwrap());
        let (dom, im) = h.dom_im();
        assert!(dom.is_full());
        assert_eq!(im.linear_hull(), Subspace::column_space(&a));
    }

    #[test]
    fn unconstrained_inputs_by_hand() {
        // n = 2, B = (1, 1)^T: graph = {(x, Ax + t(1,1))}
        let a = m(&[&[0, 1], &[1, 0]]);
        let b = m(&[&[1], &[1]]);
        let h = ConvexProcess::from_constrained_system(&a, &b, &RatMatrix::zeros(1, 2), &m(&[&[1]]), &PolyhedralCone::full(1)).unwrap();
        // eliminating u from y1 = x2 + u, y2 = x1 + u leaves y1 - y2 = x2 - x1
        let expected = PolyhedralCone::from_constraints(4, &[], &[rvec(&[1, -1, 1, -1])]).unwrap();
        assert_eq!(h.graph(), &expected);
        assert!(h.contains_pair(&rvec(&[1, 0]), &rvec(&[5, 6])).unwrap());
    }

    #[test]
    fn inverse_of_linear_map() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let h = ConvexProcess::from_matrix(&a).unwrap();
        assert_eq!(h.inverse(), ConvexProcess::from_matrix(&a.inverse().unwrap()).unwrap());
        assert_eq!(h.inverse().inverse(), h);
        let id = ConvexProcess::from_matrix(&RatMatrix::identity(2)).unwrap();
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn duals() {
        let h = ConvexProcess::from_matrix(&m(&[&[2]])).unwrap();
        assert_eq!(h.dual(DualSign::Minus), h);
        // H̄⁻ has graph {(q, 0) : q <= 0}
        let d = hbar().dual(DualSign::Minus);
        assert_eq!(d.graph(), &PolyhedralCone::ray(&rvec(&[-1, 0])));
        // p ∈ H⁻(q) iff ⟨p,x⟩ >= ⟨q,y⟩ on the graph of H̄
        for (q, p) in [(rvec(&[-1]), rvec(&[0]))] {
            assert!(d.contains_pair(&q, &p).unwrap());
            for (x, y) in [(rvec(&[1]), rvec(&[0])), (rvec(&[-1]), rvec(&[0])), (rvec(&[0]), rvec(&[1]))] {
                assert!(rat::dot(&p, &x) >= rat::dot(&q, &y));
            }
        }
        assert_eq!(hbar().dual(DualSign::Plus).graph(), &PolyhedralCone::ray(&rvec(&[1, 0])));
    }

    #[test]
    fn hbar_bounds_and_domain() {
        let (lm, lp) = hbar().linear_bounds();
        assert_eq!(lm.graph(), &Subspace::span(2, &[rvec(&[1, 0])]));
        assert!(lp.graph().is_full());
        assert!(hbar().dom_im().0.is_full());
    }

    #[test]
    fn invariance_examples() {
        let h = example_one();
        assert!(h.is_invariant(&PolyhedralCone::zero(1), InvarianceMode::Weak).unwrap());
        assert!(h.is_invariant(&PolyhedralCone::full(1), InvarianceMode::Strong).unwrap());
        assert!(!hbar().is_invariant(&PolyhedralCone::orthant(1).negate(), InvarianceMode::Strong).unwrap());
        assert!(hbar().is_invariant(&PolyhedralCone::orthant(1), InvarianceMode::Strong).unwrap());
    }

    #[test]
    fn sections() {
        let s = example_one().section(&rvec(&[-1])).unwrap();
        assert!(s.is_empty());
        let s = hbar().section(&rvec(&[3])).unwrap();
        assert!(s.contains(&rvec(&[0])).unwrap());
        assert!(!s.contains(&rvec(&[-1])).unwrap());
        let top = s.maximize_in_box(&rvec(&[1]), &Rat::from_int(4)).unwrap().unwrap();
        assert_eq!(top, rvec(&[4]));
    }

    #[test]
    fn linear_apply() {
        let l = LinearProcess::from_matrix(&m(&[&[0, 1], &[0, 0]])).unwrap();
        let s = Subspace::span(2, &[rvec(&[0, 1])]);
        assert_eq!(l.apply(&s).unwrap(), Subspace::span(2, &[rvec(&[1, 0])]));
        assert!(l.apply(&Subspace::zero(2)).unwrap().is_zero());
    }
}
