//! JSON system files.
//!
//! ```json
//! {
//!   "n": 1,
//!   "system": {"A": [["1"]], "B": [[1]], "C": [[1], [0]], "D": [[0], [1]],
//!              "Y": {"ineqs": [[-1, 0]]}},
//!   "options": {"max_steps": 4, "refine_depth": 64, "check": "all"}
//! }
//! ```
//!
//! Exactly one of `system` and `graph` must be present. `graph` is a cone in
//! `R^{2n}` and requires `n`. Missing `B`, `C`, `D` default to zero matrices
//! of the implied shapes and a missing `Y` is the whole space.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cone::{ConeJson, PolyhedralCone};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::process::ConvexProcess;
use crate::rat::Rat;

type Rows = Vec<Vec<Rat>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(rename = "A")]
    pub a: Rows,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Rows>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Rows>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Rows>,
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<ConeJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Reach,
    Null,
    All,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckKind>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<ConeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<FileOptions>,
}

fn shape_err(path: &str, message: String) -> Error {
    Error::Shape {
        path: path.to_string(),
        message,
    }
}

/// Converts rows to a matrix with `cols` columns (or the first row's length
/// if `cols` is `None`), reporting the offending row on mismatch.
fn matrix(path: &str, rows: &Rows, expect_rows: Option<usize>, cols: Option<usize>) -> Result<RatMatrix> {
    if let Some(r) = expect_rows {
        if rows.len() != r {
            return Err(shape_err(path, format!("expected {r} rows, found {}", rows.len())));
        }
    }
    let cols = cols.or(rows.first().map(Vec::len)).unwrap_or(0);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(shape_err(
                &format!("{path}[{i}]"),
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
    }
    RatMatrix::from_rows(cols, rows)
}

fn cone_dim(c: &ConeJson) -> Option<usize> {
    [&c.rays, &c.lines, &c.ineqs, &c.eqs]
        .into_iter()
        .flatten()
        .flat_map(|vs| vs.first())
        .map(Vec::len)
        .next()
}

impl SystemFile {
    pub fn to_process(&self) -> Result<ConvexProcess> {
        match (&self.system, &self.graph) {
            (Some(_), Some(_)) => Err(shape_err("", "exactly one of \"system\" and \"graph\" may be present".into())),
            (None, None) => Err(shape_err("", "one of \"system\" or \"graph\" is required".into())),
            (None, Some(g)) => {
                let n = self.n.ok_or_else(|| shape_err("n", "required with \"graph\"".into()))?;
                ConvexProcess::from_graph(n, g.to_cone(2 * n, "graph")?)
            }
            (Some(s), None) => {
                let n = s.a.len();
                if let Some(k) = self.n {
                    if k != n {
                        return Err(shape_err("system.A", format!("expected {k} rows to match n, found {n}")));
                    }
                }
                let a = matrix("system.A", &s.a, Some(n), Some(n))?;
                let b = match &s.b {
                    Some(b) => matrix("system.B", b, Some(n), None)?,
                    None => RatMatrix::zeros(n, 0),
                };
                let m = b.cols();
                let p = s
                    .c
                    .as_ref()
                    .map(Vec::len)
                    .or(s.d.as_ref().map(Vec::len))
                    .or(s.y.as_ref().and_then(cone_dim))
                    .unwrap_or(0);
                let c = match &s.c {
                    Some(c) => matrix("system.C", c, Some(p), Some(n))?,
                    None => RatMatrix::zeros(p, n),
                };
                let d = match &s.d {
                    Some(d) => matrix("system.D", d, Some(p), Some(m))?,
                    None => RatMatrix::zeros(p, m),
                };
                let y = match &s.y {
                    Some(y) => y.to_cone(p, "system.Y")?,
                    None => PolyhedralCone::full(p),
                };
                ConvexProcess::from_constrained_system(&a, &b, &c, &d, &y)
            }
        }
    }

    pub fn options(&self) -> FileOptions {
        self.options.clone().unwrap_or_default()
    }
}

pub fn parse_system_str(text: &str) -> Result<(ConvexProcess, FileOptions)> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((file.to_process()?, file.options()))
}

pub fn parse_system(path: &Path) -> Result<(ConvexProcess, FileOptions)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_system_str(&text)
}
