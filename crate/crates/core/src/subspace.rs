//! Linear subspaces of Q^n in a canonical form.
//!
//! The basis is kept in reduced column-echelon form (the transpose of the
//! RREF of the spanning vectors), so two subspaces are equal exactly when
//! their stored bases are entrywise equal.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result};
use crate::matrix::RatMatrix;
use crate::rat::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    Equals,
    Contains,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceOpResult {
    Subspace(Subspace),
    Bool(bool),
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Self {
        let rows: Vec<Vec<Rat>> = vectors
            .iter()
            .filter(|v| !rat::is_zero_vec(v))
            .cloned()
            .collect();
        let m = RatMatrix::from_rows(ambient_dim, &rows).expect("vector length");
        let (r, pivots) = m.rref();
        let d = pivots.len();
        let mut basis = RatMatrix::zeros(ambient_dim, d);
        for k in 0..d {
            for j in 0..ambient_dim {
                basis.set(j, k, r.get(k, j).clone());
            }
        }
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::span(n, &[])
    }

    pub fn full(n: usize) -> Self {
        Self::span(n, &RatMatrix::identity(n).row_vecs())
    }

    /// `{x : Mx = 0}`.
    pub fn kernel(m: &RatMatrix) -> Self {
        Self::span(m.cols(), &m.kernel_basis())
    }

    /// Column space of `m`.
    pub fn column_space(m: &RatMatrix) -> Self {
        Self::span(m.rows(), &m.column_vecs())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Rat>> {
        self.basis.column_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical representative of `v` modulo this subspace: the entries at
    /// pivot positions are cleared.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.basis.get(j, k);
                if !b.is_zero() {
                    *o -= &(&f * b);
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        v.len() == self.ambient_dim && rat::is_zero_vec(&self.reduce(v))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        check_dim("subspace containment", self.ambient_dim, other.ambient_dim)?;
        Ok(other.vectors().iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_dim("subspace sum", self.ambient_dim, other.ambient_dim)?;
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Ok(Subspace::span(self.ambient_dim, &vs))
    }

    /// `{y : <x, y> = 0 for all x in self}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace::kernel(&self.basis.transpose())
    }

    /// Computed as `(S^perp + T^perp)^perp`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_dim("subspace intersection", self.ambient_dim, other.ambient_dim)?;
        let mut rows = self.orthogonal_complement().vectors();
        rows.extend(other.orthogonal_complement().vectors());
        let m = RatMatrix::from_rows(self.ambient_dim, &rows)?;
        Ok(Subspace::kernel(&m))
    }

    pub fn apply(&self, other: &Subspace, op: SubspaceOp) -> Result<SubspaceOpResult> {
        check_dim("subspace op", self.ambient_dim, other.ambient_dim)?;
        Ok(match op {
            SubspaceOp::Sum => SubspaceOpResult::Subspace(self.sum(other)?),
            SubspaceOp::Intersect => SubspaceOpResult::Subspace(self.intersect(other)?),
            SubspaceOp::Equals => SubspaceOpResult::Bool(self == other),
            SubspaceOp::Contains => SubspaceOpResult::Bool(self.contains(other)?),
        })
    }

    /// `{Mx : x in self}`.
    pub fn image(&self, m: &RatMatrix) -> Result<Subspace> {
        check_dim("subspace image", m.cols(), self.ambient_dim)?;
        let vs: Vec<Vec<Rat>> = self
            .vectors()
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<_>>()?;
        Ok(Subspace::span(m.rows(), &vs))
    }

    /// `{x : Mx in self}`.
    pub fn preimage(&self, m: &RatMatrix) -> Result<Subspace> {
        check_dim("subspace preimage", m.rows(), self.ambient_dim)?;
        // Mx in S  <=>  N^T M x = 0 for a basis N of S^perp
        let normals = self.orthogonal_complement().vectors();
        let rows: Vec<Vec<Rat>> = normals
            .iter()
            .map(|w| m.vec_mul(w))
            .collect::<Result<_>>()?;
        Ok(Subspace::kernel(&RatMatrix::from_rows(m.cols(), &rows)?))
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            ambient_dim: usize,
            basis: Vec<Vec<Rat>>,
        }
        Repr {
            ambient_dim: self.ambient_dim,
            basis: self.vectors(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            ambient_dim: usize,
            basis: Vec<Vec<Rat>>,
        }
        let r = Repr::deserialize(d)?;
        if r.basis.iter().any(|v| v.len() != r.ambient_dim) {
            return Err(serde::de::Error::custom("basis vector length"));
        }
        Ok(Subspace::span(r.ambient_dim, &r.basis))
    }
}
