//! Double description (Motzkin) conversion from constraints to generators.

use crate::matrix::RatMatrix;
use crate::rat::{self, Rat};
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_prefix(words: usize, len: usize) -> Self {
        let mut z = ZeroSet(vec![0; words]);
        for i in 0..len {
            z.insert(i);
        }
        z
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vec<Rat>,
    zeros: ZeroSet,
}

/// Extreme rays (canonical, modulo the lineality space) and lineality space
/// of `{x : a.x <= 0 for a in ineqs, e.x = 0 for e in eqs}`.
pub(crate) fn generators_of(
    dim: usize,
    ineqs: &[Vec<Rat>],
    eqs: &[Vec<Rat>],
) -> (Vec<Vec<Rat>>, Subspace) {
    let kernel = if eqs.is_empty() {
        Subspace::full(dim)
    } else {
        Subspace::kernel(&RatMatrix::from_rows(dim, eqs).expect("row width"))
    };
    let basis = kernel.vectors();
    let kd = basis.len();
    if kd == 0 {
        return (Vec::new(), Subspace::zero(dim));
    }

    // inequalities in kernel coordinates
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for a in ineqs {
        let r: Vec<Rat> = basis.iter().map(|b| rat::dot(a, b)).collect();
        if rat::is_zero_vec(&r) {
            continue;
        }
        let r = rat::primitive_vec(&r);
        if !rows.contains(&r) {
            rows.push(r);
        }
    }

    let words = rows.len().div_ceil(64).max(1);
    let mut lines: Vec<Vec<Rat>> = (0..kd)
        .map(|i| {
            let mut e = vec![Rat::zero(); kd];
            e[i] = Rat::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, a) in rows.iter().enumerate() {
        if let Some(pos) = lines.iter().position(|l| !rat::dot(a, l).is_zero()) {
            let mut l = lines.swap_remove(pos);
            let mut al = rat::dot(a, &l);
            if al.is_positive() {
                l = rat::neg_vec(&l);
                al = -al;
            }
            for other in lines.iter_mut() {
                let c = rat::dot(a, other);
                if !c.is_zero() {
                    *other = rat::primitive_vec(&rat::sub_vec(other, &rat::scale_vec(&l, &(&c / &al))));
                }
            }
            for r in rays.iter_mut() {
                let c = rat::dot(a, &r.v);
                if !c.is_zero() {
                    r.v = rat::primitive_vec(&rat::sub_vec(&r.v, &rat::scale_vec(&l, &(&c / &al))));
                }
                r.zeros.insert(idx);
            }
            rays.push(Ray {
                v: l,
                zeros: ZeroSet::with_prefix(words, idx),
            });
            continue;
        }

        let vals: Vec<Rat> = rays.iter().map(|r| rat::dot(a, &r.v)).collect();
        if vals.iter().all(|s| !s.is_positive()) {
            for (r, s) in rays.iter_mut().zip(&vals) {
                if s.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let min_common = kd.saturating_sub(lines.len() + 2);

        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                let w = rat::add_vec(
                    &rat::scale_vec(&rays[q].v, &vals[p]),
                    &rat::scale_vec(&rays[p].v, &(-&vals[q])),
                );
                let mut zeros = common;
                zeros.insert(idx);
                next.push(Ray {
                    v: rat::primitive_vec(&w),
                    zeros,
                });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_positive() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(idx);
            }
            next.push(r);
        }
        rays = next;
    }

    let lift = |z: &[Rat]| -> Vec<Rat> {
        let mut y = vec![Rat::zero(); dim];
        for (c, b) in z.iter().zip(&basis) {
            if !c.is_zero() {
                for (yi, bi) in y.iter_mut().zip(b) {
                    *yi += &(c * bi);
                }
            }
        }
        y
    };
    let lin = Subspace::span(dim, &lines.iter().map(|l| lift(l)).collect::<Vec<_>>());
    let rays = canonical_rays(rays.iter().map(|r| lift(&r.v)).collect(), &lin);
    (rays, lin)
}

/// Reduce modulo `lin`, normalize, sort and deduplicate.
pub(crate) fn canonical_rays(rays: Vec<Vec<Rat>>, lin: &Subspace) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = rays
        .iter()
        .map(|r| lin.reduce(r))
        .filter(|r| !rat::is_zero_vec(r))
        .map(|r| rat::normalize_direction(&r))
        .collect();
    out.sort();
    out.dedup();
    out
}
