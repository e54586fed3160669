//! Fourier–Motzkin elimination with LP redundancy pruning.

use crate::lp::{solve_rational, LinearProgram, LpOutcome, Relation};
use crate::matrix::RatMatrix;
use crate::rat::{self, Rat};

/// Eliminates the variables `vars` from `{a.x <= 0, e.x = 0}`, highest index
/// first. Returns `(ineqs, eqs)` over the remaining coordinates, in order.
pub(crate) fn eliminate(
    dim: usize,
    ineqs: &[Vec<Rat>],
    eqs: &[Vec<Rat>],
    vars: &[usize],
) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let mut vars = vars.to_vec();
    vars.sort_unstable();
    vars.dedup();
    let mut width = dim;
    let mut ineqs = ineqs.to_vec();
    let mut eqs = independent_rows(width, eqs);
    for &j in vars.iter().rev() {
        if let Some(k) = eqs.iter().position(|e| !e[j].is_zero()) {
            let e = eqs.swap_remove(k);
            let substitute = |row: &mut Vec<Rat>| {
                if !row[j].is_zero() {
                    let f = &row[j] / &e[j];
                    *row = rat::sub_vec(row, &rat::scale_vec(&e, &f));
                }
            };
            eqs.iter_mut().for_each(substitute);
            ineqs.iter_mut().for_each(substitute);
        } else {
            let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
            for r in ineqs {
                match r[j].sign() {
                    crate::rat::Sign::Positive => pos.push(r),
                    crate::rat::Sign::Negative => neg.push(r),
                    crate::rat::Sign::Zero => keep.push(r),
                }
            }
            for p in &pos {
                for q in &neg {
                    keep.push(rat::add_vec(
                        &rat::scale_vec(p, &(-&q[j])),
                        &rat::scale_vec(q, &p[j]),
                    ));
                }
            }
            ineqs = keep;
        }
        for row in ineqs.iter_mut().chain(eqs.iter_mut()) {
            row.remove(j);
        }
        width -= 1;
        eqs = independent_rows(width, &eqs);
        ineqs = prune(width, ineqs, &eqs);
    }
    (ineqs, eqs)
}

fn independent_rows(width: usize, rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = RatMatrix::from_rows(width, rows).expect("row width").rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Drops zero, duplicate and LP-redundant inequalities.
pub(crate) fn prune(width: usize, ineqs: Vec<Vec<Rat>>, eqs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for r in ineqs {
        if rat::is_zero_vec(&r) {
            continue;
        }
        let r = rat::primitive_vec(&r);
        if !rows.contains(&r) {
            rows.push(r);
        }
    }
    let mut i = 0;
    while i < rows.len() {
        if is_redundant(width, &rows, i, eqs) {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    rows
}

fn is_redundant(width: usize, rows: &[Vec<Rat>], i: usize, eqs: &[Vec<Rat>]) -> bool {
    let mut lp = LinearProgram::new(rows[i].clone());
    for (k, r) in rows.iter().enumerate() {
        if k != i {
            lp.constrain(r.clone(), Relation::Le, Rat::zero());
        }
    }
    for e in eqs {
        lp.constrain(e.clone(), Relation::Eq, Rat::zero());
    }
    lp.constrain(rows[i].clone(), Relation::Le, Rat::one());
    debug_assert_eq!(lp.num_vars, width);
    match solve_rational(&lp) {
        LpOutcome::Optimal { value, .. } => !value.is_positive(),
        _ => unreachable!("bounded feasible program"),
    }
}
