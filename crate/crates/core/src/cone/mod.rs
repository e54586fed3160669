//! Polyhedral convex cones with lazily materialized dual descriptions.
//!
//! A cone is built from generators (rays and lines) or from constraints
//! (`w.x <= 0` and `e.x = 0`). The other description is computed on demand by
//! double description and cached. Materialized descriptions are canonical:
//! lines and equalities are reduced echelon bases, and rays and inequalities
//! are reduced modulo that subspace, scaled so the first nonzero entry is
//! `+-1`, sorted and deduplicated. Two equal cones therefore have identical
//! canonical descriptions.

mod dd;
mod fm;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::matrix::RatMatrix;
use crate::rat::{self, Rat};
use crate::subspace::Subspace;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Generators {
    pub rays: Vec<Vec<Rat>>,
    pub lines: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub ineqs: Vec<Vec<Rat>>,
    pub eqs: Vec<Vec<Rat>>,
}

#[derive(Clone)]
enum Raw {
    V(Generators),
    H(Constraints),
}

#[derive(Clone)]
pub struct PolyhedralCone {
    dim: usize,
    raw: Raw,
    gens: OnceLock<Generators>,
    cons: OnceLock<Constraints>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarSign {
    Neg,
    Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Intersect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapDir {
    Image,
    Preimage,
}

#[derive(Clone, Copy, Debug)]
pub enum ConeQuery<'a> {
    Contains(&'a [Rat]),
    IsFull,
    IsZero,
    IsSubspace,
    IsPointed,
    Equals(&'a PolyhedralCone),
}

fn check_vectors(context: &'static str, dim: usize, vs: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let mut out = Vec::with_capacity(vs.len());
    for v in vs {
        check_dim(context, dim, v.len())?;
        if !rat::is_zero_vec(v) {
            out.push(v.clone());
        }
    }
    Ok(out)
}

fn negated(vs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    vs.iter().map(|v| rat::neg_vec(v)).collect()
}

fn negated_sorted(vs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut out = negated(vs);
    out.sort();
    out
}

impl PolyhedralCone {
    pub fn from_generators(dim: usize, rays: &[Vec<Rat>], lines: &[Vec<Rat>]) -> Result<Self> {
        let rays = check_vectors("cone ray", dim, rays)?;
        let lines = check_vectors("cone line", dim, lines)?;
        Ok(Self::with_raw(dim, Raw::V(Generators { rays, lines })))
    }

    pub fn from_constraints(dim: usize, ineqs: &[Vec<Rat>], eqs: &[Vec<Rat>]) -> Result<Self> {
        let ineqs = check_vectors("cone inequality", dim, ineqs)?;
        let eqs = check_vectors("cone equality", dim, eqs)?;
        Ok(Self::with_raw(dim, Raw::H(Constraints { ineqs, eqs })))
    }

    fn with_raw(dim: usize, raw: Raw) -> Self {
        PolyhedralCone {
            dim,
            raw,
            gens: OnceLock::new(),
            cons: OnceLock::new(),
        }
    }

    fn with_both(dim: usize, gens: Generators, cons: Constraints) -> Self {
        let c = Self::with_raw(dim, Raw::V(gens.clone()));
        let _ = c.gens.set(gens);
        let _ = c.cons.set(cons);
        c
    }

    /// The cone `{0}`.
    pub fn zero(dim: usize) -> Self {
        Self::from_subspace(&Subspace::zero(dim))
    }

    /// The whole space.
    pub fn full(dim: usize) -> Self {
        Self::from_subspace(&Subspace::full(dim))
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        let gens = Generators {
            rays: Vec::new(),
            lines: s.vectors(),
        };
        let cons = Constraints {
            ineqs: Vec::new(),
            eqs: s.orthogonal_complement().vectors(),
        };
        Self::with_both(s.ambient_dim(), gens, cons)
    }

    /// The nonnegative orthant.
    pub fn orthant(dim: usize) -> Self {
        let rays: Vec<Vec<Rat>> = RatMatrix::identity(dim).row_vecs();
        Self::from_generators(dim, &rays, &[]).expect("dimension")
    }

    /// `{t v : t >= 0}`.
    pub fn ray(v: &[Rat]) -> Self {
        Self::from_generators(v.len(), &[v.to_vec()], &[]).expect("dimension")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn has_generators(&self) -> bool {
        matches!(self.raw, Raw::V(_)) || self.gens.get().is_some()
    }

    pub fn has_constraints(&self) -> bool {
        matches!(self.raw, Raw::H(_)) || self.cons.get().is_some()
    }

    /// Canonical generators.
    pub fn generators(&self) -> &Generators {
        self.gens.get_or_init(|| {
            let (ineqs, eqs) = match &self.raw {
                Raw::H(c) => (&c.ineqs, &c.eqs),
                Raw::V(_) => {
                    let c = self.constraints();
                    (&c.ineqs, &c.eqs)
                }
            };
            let (rays, lin) = dd::generators_of(self.dim, ineqs, eqs);
            Generators {
                rays,
                lines: lin.vectors(),
            }
        })
    }

    /// Canonical constraints.
    pub fn constraints(&self) -> &Constraints {
        self.cons.get_or_init(|| {
            let (rays, lines) = match &self.raw {
                Raw::V(g) => (&g.rays, &g.lines),
                Raw::H(_) => {
                    let g = self.generators();
                    (&g.rays, &g.lines)
                }
            };
            let (ineqs, lin) = dd::generators_of(self.dim, rays, lines);
            Constraints {
                ineqs,
                eqs: lin.vectors(),
            }
        })
    }

    /// Generators as cheaply as possible: canonical if known, else the input.
    pub fn any_generators(&self) -> &Generators {
        if let Some(g) = self.gens.get() {
            return g;
        }
        match &self.raw {
            Raw::V(g) => g,
            Raw::H(_) => self.generators(),
        }
    }

    /// Constraints as cheaply as possible: canonical if known, else the input.
    pub fn any_constraints(&self) -> &Constraints {
        if let Some(c) = self.cons.get() {
            return c;
        }
        match &self.raw {
            Raw::H(c) => c,
            Raw::V(_) => self.constraints(),
        }
    }

    pub fn rays(&self) -> &[Vec<Rat>] {
        &self.generators().rays
    }

    pub fn lines(&self) -> &[Vec<Rat>] {
        &self.generators().lines
    }

    pub fn ineqs(&self) -> &[Vec<Rat>] {
        &self.constraints().ineqs
    }

    pub fn eqs(&self) -> &[Vec<Rat>] {
        &self.constraints().eqs
    }

    /// A set-equal cone with both canonical descriptions materialized.
    pub fn complete_description(&self) -> PolyhedralCone {
        Self::with_both(self.dim, self.generators().clone(), self.constraints().clone())
    }

    pub fn polar(&self, sign: PolarSign) -> PolyhedralCone {
        let raw = match &self.raw {
            Raw::V(g) => Raw::H(Constraints {
                ineqs: g.rays.clone(),
                eqs: g.lines.clone(),
            }),
            Raw::H(c) => Raw::V(Generators {
                rays: c.ineqs.clone(),
                lines: c.eqs.clone(),
            }),
        };
        let neg = PolyhedralCone {
            dim: self.dim,
            raw,
            gens: OnceLock::new(),
            cons: OnceLock::new(),
        };
        if let Some(c) = self.cons.get() {
            let _ = neg.gens.set(Generators {
                rays: c.ineqs.clone(),
                lines: c.eqs.clone(),
            });
        }
        if let Some(g) = self.gens.get() {
            let _ = neg.cons.set(Constraints {
                ineqs: g.rays.clone(),
                eqs: g.lines.clone(),
            });
        }
        match sign {
            PolarSign::Neg => neg,
            PolarSign::Pos => neg.negate(),
        }
    }

    /// `-C`.
    pub fn negate(&self) -> PolyhedralCone {
        let raw = match &self.raw {
            Raw::V(g) => Raw::V(Generators {
                rays: negated(&g.rays),
                lines: g.lines.clone(),
            }),
            Raw::H(c) => Raw::H(Constraints {
                ineqs: negated(&c.ineqs),
                eqs: c.eqs.clone(),
            }),
        };
        let out = Self::with_raw(self.dim, raw);
        if let Some(g) = self.gens.get() {
            let _ = out.gens.set(Generators {
                rays: negated_sorted(&g.rays),
                lines: g.lines.clone(),
            });
        }
        if let Some(c) = self.cons.get() {
            let _ = out.cons.set(Constraints {
                ineqs: negated_sorted(&c.ineqs),
                eqs: c.eqs.clone(),
            });
        }
        out
    }

    pub fn combine(&self, other: &PolyhedralCone, op: CombineOp) -> Result<PolyhedralCone> {
        check_dim("cone combine", self.dim, other.dim)?;
        Ok(match op {
            CombineOp::Sum => {
                let (a, b) = (self.any_generators(), other.any_generators());
                let rays: Vec<Vec<Rat>> = a.rays.iter().chain(&b.rays).cloned().collect();
                let lines: Vec<Vec<Rat>> = a.lines.iter().chain(&b.lines).cloned().collect();
                Self::with_raw(self.dim, Raw::V(Generators { rays, lines }))
            }
            CombineOp::Intersect => {
                let (a, b) = (self.any_constraints(), other.any_constraints());
                let ineqs: Vec<Vec<Rat>> = a.ineqs.iter().chain(&b.ineqs).cloned().collect();
                let eqs: Vec<Vec<Rat>> = a.eqs.iter().chain(&b.eqs).cloned().collect();
                Self::with_raw(self.dim, Raw::H(Constraints { ineqs, eqs }))
            }
        })
    }

    pub fn sum(&self, other: &PolyhedralCone) -> Result<PolyhedralCone> {
        self.combine(other, CombineOp::Sum)
    }

    pub fn intersect(&self, other: &PolyhedralCone) -> Result<PolyhedralCone> {
        self.combine(other, CombineOp::Intersect)
    }

    /// IMAGE: `{Mx : x in C}` for `M` of shape `m x dim`.
    /// PREIMAGE: `{x : Mx in C}` for `M` of shape `dim x n`.
    pub fn linear_map(&self, m: &RatMatrix, dir: MapDir) -> Result<PolyhedralCone> {
        match dir {
            MapDir::Image => {
                check_dim("cone image", m.cols(), self.dim)?;
                let g = self.any_generators();
                let map = |vs: &[Vec<Rat>]| -> Result<Vec<Vec<Rat>>> {
                    vs.iter().map(|v| m.mul_vec(v)).collect()
                };
                Self::from_generators(m.rows(), &map(&g.rays)?, &map(&g.lines)?)
            }
            MapDir::Preimage => {
                check_dim("cone preimage", m.rows(), self.dim)?;
                let c = self.any_constraints();
                let map = |vs: &[Vec<Rat>]| -> Result<Vec<Vec<Rat>>> {
                    vs.iter().map(|v| m.vec_mul(v)).collect()
                };
                Self::from_constraints(m.cols(), &map(&c.ineqs)?, &map(&c.eqs)?)
            }
        }
    }

    /// Coordinate projection onto `keep` (in that order), by mapping the
    /// generators. See [`Self::project_fm`] for the elimination route.
    pub fn project(&self, keep: &[usize]) -> Result<PolyhedralCone> {
        for &k in keep {
            if k >= self.dim {
                return Err(Error::DimensionMismatch {
                    context: "cone projection",
                    expected: self.dim,
                    found: k + 1,
                });
            }
        }
        let mut m = RatMatrix::zeros(keep.len(), self.dim);
        for (i, &k) in keep.iter().enumerate() {
            m.set(i, k, Rat::one());
        }
        self.linear_map(&m, MapDir::Image)
    }

    /// Projection by Fourier–Motzkin elimination regardless of which
    /// descriptions are available.
    pub fn project_fm(&self, keep: &[usize]) -> Result<PolyhedralCone> {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        let drop: Vec<usize> = (0..self.dim).filter(|i| !sorted.contains(i)).collect();
        let c = self.any_constraints();
        let (ineqs, eqs) = fm::eliminate(self.dim, &c.ineqs, &c.eqs, &drop);
        // eliminate() keeps surviving coordinates in increasing order
        let order: Vec<usize> = keep.iter().map(|k| sorted.binary_search(k).unwrap()).collect();
        let permute = |vs: Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            vs.into_iter()
                .map(|v| order.iter().map(|&o| v[o].clone()).collect())
                .collect()
        };
        Self::from_constraints(keep.len(), &permute(ineqs), &permute(eqs))
    }

    /// `C x D`.
    pub fn product(&self, other: &PolyhedralCone) -> PolyhedralCone {
        let (d1, d2) = (self.dim, other.dim);
        let pad = |v: &[Rat], left: bool| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); d1 + d2];
            let off = if left { 0 } else { d1 };
            out[off..off + v.len()].clone_from_slice(v);
            out
        };
        if self.has_constraints() || other.has_constraints() {
            let (a, b) = (self.any_constraints(), other.any_constraints());
            let ineqs: Vec<Vec<Rat>> = a
                .ineqs
                .iter()
                .map(|v| pad(v, true))
                .chain(b.ineqs.iter().map(|v| pad(v, false)))
                .collect();
            let eqs: Vec<Vec<Rat>> = a
                .eqs
                .iter()
                .map(|v| pad(v, true))
                .chain(b.eqs.iter().map(|v| pad(v, false)))
                .collect();
            Self::with_raw(d1 + d2, Raw::H(Constraints { ineqs, eqs }))
        } else {
            let (a, b) = (self.any_generators(), other.any_generators());
            let rays: Vec<Vec<Rat>> = a
                .rays
                .iter()
                .map(|v| pad(v, true))
                .chain(b.rays.iter().map(|v| pad(v, false)))
                .collect();
            let lines: Vec<Vec<Rat>> = a
                .lines
                .iter()
                .map(|v| pad(v, true))
                .chain(b.lines.iter().map(|v| pad(v, false)))
                .collect();
            Self::with_raw(d1 + d2, Raw::V(Generators { rays, lines }))
        }
    }

    /// `(lin C, Lin C)`: largest subspace inside and smallest subspace
    /// containing the cone.
    pub fn lin_span(&self) -> (Subspace, Subspace) {
        let lin = Subspace::span(self.dim, self.lines());
        let g = self.any_generators();
        let mut all = g.rays.clone();
        all.extend(g.lines.iter().cloned());
        (lin, Subspace::span(self.dim, &all))
    }

    pub fn lineality(&self) -> Subspace {
        Subspace::span(self.dim, self.lines())
    }

    pub fn linear_hull(&self) -> Subspace {
        self.lin_span().1
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        check_dim("cone membership", self.dim, x.len())?;
        Ok(self.contains_unchecked(x))
    }

    fn contains_unchecked(&self, x: &[Rat]) -> bool {
        let c = self.any_constraints();
        c.ineqs.iter().all(|w| !rat::dot(w, x).is_positive())
            && c.eqs.iter().all(|e| rat::dot(e, x).is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_cone(&self, other: &PolyhedralCone) -> Result<bool> {
        check_dim("cone containment", self.dim, other.dim)?;
        let c = self.any_constraints();
        let g = other.any_generators();
        Ok(g.rays.iter().all(|r| c.ineqs.iter().all(|w| !rat::dot(w, r).is_positive()))
            && g.rays.iter().all(|r| c.eqs.iter().all(|e| rat::dot(e, r).is_zero()))
            && g.lines.iter().all(|l| {
                c.ineqs.iter().all(|w| rat::dot(w, l).is_zero())
                    && c.eqs.iter().all(|e| rat::dot(e, l).is_zero())
            }))
    }

    pub fn set_eq(&self, other: &PolyhedralCone) -> Result<bool> {
        Ok(self.contains_cone(other)? && other.contains_cone(self)?)
    }

    pub fn is_zero(&self) -> bool {
        let g = self.any_generators();
        g.rays.is_empty() && g.lines.is_empty()
    }

    pub fn is_full(&self) -> bool {
        let c = self.constraints();
        c.ineqs.is_empty() && c.eqs.is_empty()
    }

    pub fn is_subspace(&self) -> bool {
        self.rays().is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lines().is_empty()
    }

    pub fn query(&self, what: ConeQuery<'_>) -> Result<bool> {
        match what {
            ConeQuery::Contains(x) => self.contains(x),
            ConeQuery::IsFull => Ok(self.is_full()),
            ConeQuery::IsZero => Ok(self.is_zero()),
            ConeQuery::IsSubspace => Ok(self.is_subspace()),
            ConeQuery::IsPointed => Ok(self.is_pointed()),
            ConeQuery::Equals(other) => self.set_eq(other),
        }
    }

    pub fn to_json(&self) -> ConeJson {
        let g = self.generators();
        let c = self.constraints();
        ConeJson {
            rays: Some(g.rays.clone()),
            lines: Some(g.lines.clone()),
            ineqs: Some(c.ineqs.clone()),
            eqs: Some(c.eqs.clone()),
        }
    }
}

impl PartialEq for PolyhedralCone {
    /// Set equality.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.set_eq(other).unwrap_or(false)
    }
}

impl Eq for PolyhedralCone {}

impl fmt::Debug for PolyhedralCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("PolyhedralCone");
        d.field("dim", &self.dim);
        let show = |vs: &[Vec<Rat>]| -> Vec<String> {
            vs.iter()
                .map(|v| format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .collect()
        };
        if self.has_generators() {
            let g = self.any_generators();
            d.field("rays", &show(&g.rays)).field("lines", &show(&g.lines));
        }
        if self.has_constraints() {
            let c = self.any_constraints();
            d.field("ineqs", &show(&c.ineqs)).field("eqs", &show(&c.eqs));
        }
        d.finish()
    }
}

/// Wire form of a cone. Any subset of keys may be present. Keys `rays` and
/// `lines` give a generator description, `ineqs` and `eqs` a constraint
/// description; an object with no keys is the whole space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ineqs: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eqs: Option<Vec<Vec<Rat>>>,
}

impl ConeJson {
    /// Builds the cone in dimension `dim`. `path` prefixes error messages.
    pub fn to_cone(&self, dim: usize, path: &str) -> Result<PolyhedralCone> {
        let check = |key: &str, vs: &Option<Vec<Vec<Rat>>>| -> Result<Vec<Vec<Rat>>> {
            let vs = vs.clone().unwrap_or_default();
            for (i, v) in vs.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::Shape {
                        path: format!("{path}.{key}[{i}]"),
                        message: format!("expected length {dim}, found {}", v.len()),
                    });
                }
            }
            Ok(vs)
        };
        let (rays, lines) = (check("rays", &self.rays)?, check("lines", &self.lines)?);
        let (ineqs, eqs) = (check("ineqs", &self.ineqs)?, check("eqs", &self.eqs)?);
        let has_v = self.rays.is_some() || self.lines.is_some();
        let has_h = self.ineqs.is_some() || self.eqs.is_some();
        let from_h = PolyhedralCone::from_constraints(dim, &ineqs, &eqs)?;
        if !has_v {
            return Ok(from_h);
        }
        let from_v = PolyhedralCone::from_generators(dim, &rays, &lines)?;
        if has_h && !from_v.set_eq(&from_h)? {
            return Err(Error::Inconsistent(format!(
                "{path}: generator and constraint descriptions differ"
            )));
        }
        Ok(from_v)
    }
}
