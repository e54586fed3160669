//! Exact two-phase simplex with Bland's rule.
//!
//! Generic over [`OrderedField`], so the same solver runs over `Q` and over
//! real algebraic extensions `Q(alpha)`. No tolerances: every pivot decision
//! is an exact sign query.

use crate::field::{OrderedField, Undecided};
use crate::rat::{Rat, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint<E> {
    pub coeffs: Vec<E>,
    pub relation: Relation,
    pub rhs: E,
}

/// maximize `objective . x` subject to the constraints and variable bounds.
#[derive(Clone, Debug)]
pub struct LinearProgram<E> {
    pub num_vars: usize,
    pub objective: Vec<E>,
    pub constraints: Vec<Constraint<E>>,
    pub lower: Vec<Option<E>>,
    pub upper: Vec<Option<E>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<E> {
    Optimal { value: E, x: Vec<E> },
    Infeasible,
    Unbounded,
}

impl<E> LpOutcome<E> {
    pub fn optimal(self) -> Option<(E, Vec<E>)> {
        match self {
            LpOutcome::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

impl<E: Clone> LinearProgram<E> {
    /// All variables free, no constraints.
    pub fn new(objective: Vec<E>) -> Self {
        let n = objective.len();
        LinearProgram {
            num_vars: n,
            objective,
            constraints: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<E>, relation: Relation, rhs: E) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn bound(&mut self, var: usize, lower: Option<E>, upper: Option<E>) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }
}

/// How an original variable is expressed through nonnegative columns.
enum VarMap<E> {
    /// x = offset + y
    Shift { col: usize, offset: E },
    /// x = offset - y
    Reflect { col: usize, offset: E },
    /// x = y_pos - y_neg
    Split { pos: usize, neg: usize },
}

struct Tableau<'f, F: OrderedField> {
    f: &'f F,
    rows: Vec<Vec<F::Elem>>,
    rhs: Vec<F::Elem>,
    basis: Vec<usize>,
    /// reduced costs; entering candidates have positive entries
    obj: Vec<F::Elem>,
    obj_value: F::Elem,
}

impl<'f, F: OrderedField> Tableau<'f, F> {
    fn ncols(&self) -> usize {
        self.obj.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let f = self.f;
        let p = self.rows[r][c].clone();
        let inv = f.div(&f.one(), &p);
        for v in self.rows[r].iter_mut() {
            if !f.is_zero(v) {
                *v = f.mul(v, &inv);
            }
        }
        self.rhs[r] = f.mul(&self.rhs[r], &inv);
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][c].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (j, pv) in prow.iter().enumerate() {
                if !f.is_zero(pv) {
                    self.rows[i][j] = f.sub(&self.rows[i][j], &f.mul(&factor, pv));
                }
            }
            self.rhs[i] = f.sub(&self.rhs[i], &f.mul(&factor, &prhs));
        }
        let factor = self.obj[c].clone();
        if !f.is_zero(&factor) {
            for (j, pv) in prow.iter().enumerate() {
                if !f.is_zero(pv) {
                    self.obj[j] = f.sub(&self.obj[j], &f.mul(&factor, pv));
                }
            }
            self.obj_value = f.add(&self.obj_value, &f.mul(&factor, &prhs));
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations restricted to columns `< limit`.
    /// Returns `Ok(false)` when unbounded.
    fn optimize(&mut self, limit: usize) -> Result<bool, Undecided> {
        let f = self.f;
        loop {
            // Bland: lowest-index improving column
            let mut entering = None;
            for j in 0..limit {
                if f.sign(&self.obj[j])? == Sign::Positive {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Ok(true);
            };
            let mut best: Option<(usize, F::Elem)> = None;
            for i in 0..self.rows.len() {
                if f.sign(&self.rows[i][c])? != Sign::Positive {
                    continue;
                }
                let ratio = f.div(&self.rhs[i], &self.rows[i][c]);
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => match f.cmp(&ratio, &br)? {
                        Sign::Negative => Some((i, ratio)),
                        Sign::Zero if self.basis[i] < self.basis[bi] => Some((i, ratio)),
                        _ => Some((bi, br)),
                    },
                };
            }
            let Some((r, _)) = best else {
                return Ok(false);
            };
            self.pivot(r, c);
        }
    }

    fn set_objective(&mut self, costs: &[F::Elem]) {
        let f = self.f;
        self.obj = costs.to_vec();
        self.obj_value = f.zero();
        for i in 0..self.rows.len() {
            let cb = costs[self.basis[i]].clone();
            if f.is_zero(&cb) {
                continue;
            }
            for j in 0..self.ncols() {
                if !f.is_zero(&self.rows[i][j]) {
                    self.obj[j] = f.sub(&self.obj[j], &f.mul(&cb, &self.rows[i][j]));
                }
            }
            self.obj_value = f.add(&self.obj_value, &f.mul(&cb, &self.rhs[i]));
        }
    }
}

pub fn solve<F: OrderedField>(
    f: &F,
    lp: &LinearProgram<F::Elem>,
) -> Result<LpOutcome<F::Elem>, Undecided> {
    // 1. express every variable through nonnegative columns
    let mut maps = Vec::with_capacity(lp.num_vars);
    let mut ny = 0;
    let mut extra: Vec<(Vec<(usize, F::Elem)>, Relation, F::Elem)> = Vec::new();
    for j in 0..lp.num_vars {
        match (&lp.lower[j], &lp.upper[j]) {
            (Some(l), u) => {
                maps.push(VarMap::Shift {
                    col: ny,
                    offset: l.clone(),
                });
                if let Some(u) = u {
                    extra.push((vec![(ny, f.one())], Relation::Le, f.sub(u, l)));
                }
                ny += 1;
            }
            (None, Some(u)) => {
                maps.push(VarMap::Reflect {
                    col: ny,
                    offset: u.clone(),
                });
                ny += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split {
                    pos: ny,
                    neg: ny + 1,
                });
                ny += 2;
            }
        }
    }

    // 2. substitute into rows
    let mut rows: Vec<(Vec<F::Elem>, Relation, F::Elem)> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![f.zero(); ny];
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            match &maps[j] {
                VarMap::Shift { col, offset } => {
                    coeffs[*col] = f.add(&coeffs[*col], a);
                    rhs = f.sub(&rhs, &f.mul(a, offset));
                }
                VarMap::Reflect { col, offset } => {
                    coeffs[*col] = f.sub(&coeffs[*col], a);
                    rhs = f.sub(&rhs, &f.mul(a, offset));
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*pos] = f.add(&coeffs[*pos], a);
                    coeffs[*neg] = f.sub(&coeffs[*neg], a);
                }
            }
        }
        rows.push((coeffs, c.relation, rhs));
    }
    for (entries, rel, rhs) in extra {
        let mut coeffs = vec![f.zero(); ny];
        for (j, v) in entries {
            coeffs[j] = v;
        }
        rows.push((coeffs, rel, rhs));
    }
    let mut cost = vec![f.zero(); ny];
    for (j, c) in lp.objective.iter().enumerate() {
        match &maps[j] {
            VarMap::Shift { col, .. } => cost[*col] = f.add(&cost[*col], c),
            VarMap::Reflect { col, .. } => cost[*col] = f.sub(&cost[*col], c),
            VarMap::Split { pos, neg } => {
                cost[*pos] = f.add(&cost[*pos], c);
                cost[*neg] = f.sub(&cost[*neg], c);
            }
        }
    }

    // 3. nonnegative right-hand sides
    for (coeffs, rel, rhs) in rows.iter_mut() {
        if f.sign(rhs)? == Sign::Negative {
            for v in coeffs.iter_mut() {
                *v = f.neg(v);
            }
            *rhs = f.neg(rhs);
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    // 4. slack / surplus / artificial columns
    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let art_start = ny + n_slack;
    let ncols = art_start + n_art;
    let mut t_rows = Vec::with_capacity(m);
    let mut t_rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut s, mut a) = (ny, art_start);
    for (coeffs, rel, rhs) in rows {
        let mut row = coeffs;
        row.resize(ncols, f.zero());
        match rel {
            Relation::Le => {
                row[s] = f.one();
                basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = f.neg(&f.one());
                s += 1;
                row[a] = f.one();
                basis.push(a);
                a += 1;
            }
            Relation::Eq => {
                row[a] = f.one();
                basis.push(a);
                a += 1;
            }
        }
        t_rows.push(row);
        t_rhs.push(rhs);
    }
    let mut t = Tableau {
        f,
        rows: t_rows,
        rhs: t_rhs,
        basis,
        obj: vec![f.zero(); ncols],
        obj_value: f.zero(),
    };

    // phase 1: maximize -(sum of artificials)
    if n_art > 0 {
        let mut c1 = vec![f.zero(); ncols];
        for c in c1.iter_mut().skip(art_start) {
            *c = f.neg(&f.one());
        }
        t.set_objective(&c1);
        t.optimize(ncols)?;
        // phase-1 optimum is zero iff the original system is feasible
        if !f.is_zero(&t.obj_value) {
            return Ok(LpOutcome::Infeasible);
        }
        // drive artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                let col = (0..art_start).find(|&j| !f.is_zero(&t.rows[i][j]));
                match col {
                    Some(j) => t.pivot(i, j),
                    None => {
                        // redundant equality
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in t.rows.iter_mut() {
            row.truncate(art_start);
        }
    }
    let mut c2 = cost;
    c2.resize(art_start, f.zero());
    t.obj.truncate(art_start);
    t.set_objective(&c2);
    if !t.optimize(art_start)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut y = vec![f.zero(); art_start];
    for (i, &b) in t.basis.iter().enumerate() {
        y[b] = t.rhs[i].clone();
    }
    let x: Vec<F::Elem> = maps
        .iter()
        .map(|mp| match mp {
            VarMap::Shift { col, offset } => f.add(offset, &y[*col]),
            VarMap::Reflect { col, offset } => f.sub(offset, &y[*col]),
            VarMap::Split { pos, neg } => f.sub(&y[*pos], &y[*neg]),
        })
        .collect();
    let mut value = f.zero();
    for (c, v) in lp.objective.iter().zip(&x) {
        value = f.add(&value, &f.mul(c, v));
    }
    Ok(LpOutcome::Optimal { value, x })
}

/// Convenience wrapper over `Q`.
pub fn solve_rational(lp: &LinearProgram<Rat>) -> LpOutcome<Rat> {
    solve(&crate::field::Rationals, lp).expect("rational signs are always decidable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rvec, Rat};

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    #[test]
    fn textbook_max() {
        // max 3x + 5y; x <= 4; 2y <= 12; 3x + 2y <= 18; x,y >= 0 -> 36 at (2,6)
        let mut lp = LinearProgram::new(rvec(&[3, 5]));
        lp.constrain(rvec(&[1, 0]), Relation::Le, r(4));
        lp.constrain(rvec(&[0, 2]), Relation::Le, r(12));
        lp.constrain(rvec(&[3, 2]), Relation::Le, r(18));
        lp.bound(0, Some(r(0)), None);
        lp.bound(1, Some(r(0)), None);
        let (v, x) = solve_rational(&lp).optimal().unwrap();
        assert_eq!(v, r(36));
        assert_eq!(x, rvec(&[2, 6]));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(rvec(&[1]));
        lp.constrain(rvec(&[1]), Relation::Ge, r(2));
        lp.constrain(rvec(&[1]), Relation::Le, r(1));
        assert_eq!(solve_rational(&lp), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(rvec(&[1, 1]));
        lp.constrain(rvec(&[1, -1]), Relation::Le, r(0));
        assert_eq!(solve_rational(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn free_and_boxed_variables() {
        // max -x - y, x + y = -3, -5 <= x <= 5, y free, y >= x
        let mut lp = LinearProgram::new(rvec(&[-1, -1]));
        lp.constrain(rvec(&[1, 1]), Relation::Eq, r(-3));
        lp.constrain(rvec(&[1, -1]), Relation::Le, r(0));
        lp.bound(0, Some(r(-5)), Some(r(5)));
        let (v, x) = solve_rational(&lp).optimal().unwrap();
        assert_eq!(v, r(3));
        assert_eq!(&x[0] + &x[1], r(-3));
        assert!(x[0] <= x[1]);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(rvec(&[1, 0]));
        lp.constrain(rvec(&[1, 1]), Relation::Eq, r(2));
        lp.constrain(rvec(&[2, 2]), Relation::Eq, r(4));
        lp.bound(0, Some(r(0)), None);
        lp.bound(1, Some(r(0)), None);
        let (v, _) = solve_rational(&lp).optimal().unwrap();
        assert_eq!(v, r(2));
    }

    #[test]
    fn upper_only_bound() {
        let mut lp = LinearProgram::new(rvec(&[1]));
        lp.bound(0, None, Some(Rat::new(7, 2)));
        let (v, _) = solve_rational(&lp).optimal().unwrap();
        assert_eq!(v, Rat::new(7, 2));
    }
}
