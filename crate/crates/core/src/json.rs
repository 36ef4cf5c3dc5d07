//! JSON wire formats.
//!
//! Rationals travel as strings `"p/q"` (or `"p"`); integer JSON numbers are
//! accepted on input. Matrices are row-major nested arrays. Parsing walks a
//! [`serde_json::Value`] by hand so that every error names the offending
//! field, e.g. `coeffs[1].matrix[0][2]: zero denominator`.

use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::almost_commuting::{ACTuple, Divergence, Flavor, TorusLimit};
use crate::current::Current;
use crate::error::{Error, Result};
use crate::lie::{Elem, Family, LieAlg};
use crate::linalg::{format_rational, parse_rational, Matrix, Rational, Vector};

pub fn vector_to_json(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn matrix_to_json(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| vector_to_json(m.row(r))).collect()
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(path_or_root(path), "expected an object"))?;
    obj.get(key)
        .ok_or_else(|| Error::parse(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn path_or_root(path: &str) -> String {
    if path.is_empty() {
        "<root>".to_string()
    } else {
        path.to_string()
    }
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

pub fn rational_from_value(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => {
            parse_rational(s).map_err(|e| Error::parse(path, format!("`{s}`: {e}")))
        }
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(crate::linalg::rat(i)),
            None => Err(Error::parse(
                path,
                format!("`{n}`: non-integer numbers must be written as \"p/q\" strings"),
            )),
        },
        _ => Err(Error::parse(path, "expected a rational string")),
    }
}

pub fn vector_from_value(v: &Value, path: &str) -> Result<Vector> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::parse(path, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(k, x)| rational_from_value(x, &format!("{path}[{k}]")))
        .collect()
}

pub fn matrix_from_value(v: &Value, path: &str) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::parse(path, "expected an array of rows"))?;
    if rows.is_empty() {
        return Err(Error::parse(path, "matrix has no rows"));
    }
    let parsed: Vec<Vector> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| vector_from_value(row, &format!("{path}[{r}]")))
        .collect::<Result<_>>()?;
    let width = parsed[0].len();
    if let Some(r) = parsed.iter().position(|row| row.len() != width) {
        return Err(Error::parse(
            format!("{path}[{r}]"),
            format!("row has length {}, expected {width}", parsed[r].len()),
        ));
    }
    Ok(Matrix::from_rows(parsed))
}

fn elem_in(g: &Arc<LieAlg>, v: &Value, path: &str) -> Result<Elem> {
    let m = matrix_from_value(v, path)?;
    g.elem_from_matrix(m).map_err(|e| Error::parse(path, e))
}

/// `{"family": "sl", "n": 3, "matrix": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElemJson {
    pub family: Family,
    pub n: usize,
    pub matrix: Vec<Vec<String>>,
}

impl ElemJson {
    pub fn from_elem(x: &Elem) -> ElemJson {
        let id = x.parent().id();
        ElemJson {
            family: id.family,
            n: id.n,
            matrix: matrix_to_json(x.matrix()),
        }
    }
}

pub fn elem_from_value(v: &Value, path: &str) -> Result<Elem> {
    let fpath = join(path, "family");
    let family: Family = field(v, "family", path)?
        .as_str()
        .ok_or_else(|| Error::parse(&fpath, "expected a string"))?
        .parse()
        .map_err(|e| Error::parse(&fpath, e))?;
    let npath = join(path, "n");
    let n = as_usize(field(v, "n", path)?, &npath)?;
    let g = LieAlg::build(family, n).map_err(|e| Error::parse(npath, e))?;
    elem_in(&g, field(v, "matrix", path)?, &join(path, "matrix"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffJson {
    pub deg: usize,
    pub matrix: Vec<Vec<String>>,
}

/// `{"order": N, "coeffs": [{"deg": k, "matrix": [[...]]}, ...]}`; degrees
/// that are absent are zero. Only nonzero coefficients are written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurrentJson {
    pub order: usize,
    pub coeffs: Vec<CoeffJson>,
}

impl CurrentJson {
    pub fn from_current(c: &Current) -> CurrentJson {
        CurrentJson {
            order: c.order(),
            coeffs: c
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(deg, x)| CoeffJson {
                    deg,
                    matrix: matrix_to_json(x.matrix()),
                })
                .collect(),
        }
    }
}

pub fn current_from_value(g: &Arc<LieAlg>, v: &Value, path: &str) -> Result<Current> {
    let opath = join(path, "order");
    let order = as_usize(field(v, "order", path)?, &opath)?;
    if order == 0 {
        return Err(Error::parse(opath, "order must be at least 1"));
    }
    let cpath = join(path, "coeffs");
    let entries = field(v, "coeffs", path)?
        .as_array()
        .ok_or_else(|| Error::parse(&cpath, "expected an array"))?;
    let mut coeffs = vec![g.zero(); order];
    let mut seen = vec![false; order];
    for (k, entry) in entries.iter().enumerate() {
        let epath = format!("{cpath}[{k}]");
        let dpath = join(&epath, "deg");
        let deg = as_usize(field(entry, "deg", &epath)?, &dpath)?;
        if deg >= order {
            return Err(Error::parse(
                dpath,
                format!("degree {deg} not below order {order}"),
            ));
        }
        if std::mem::replace(&mut seen[deg], true) {
            return Err(Error::parse(dpath, format!("degree {deg} given twice")));
        }
        coeffs[deg] = elem_in(g, field(entry, "matrix", &epath)?, &join(&epath, "matrix"))?;
    }
    Current::new(g, coeffs)
}

/// `{"flavor": "A", "x": [[...]], "y": [[...]], "i": [...], "j": [...]}`;
/// `j` is absent for flavor C.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ACTupleJson {
    pub flavor: Flavor,
    pub x: Vec<Vec<String>>,
    pub y: Vec<Vec<String>>,
    pub i: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<String>>,
}

impl ACTupleJson {
    pub fn from_tuple(t: &ACTuple) -> ACTupleJson {
        ACTupleJson {
            flavor: t.flavor(),
            x: matrix_to_json(t.x().matrix()),
            y: matrix_to_json(t.y().matrix()),
            i: vector_to_json(t.i()),
            j: t.j().map(vector_to_json),
        }
    }
}

pub fn ac_tuple_from_value(v: &Value, path: &str) -> Result<ACTuple> {
    let fpath = join(path, "flavor");
    let flavor = match field(v, "flavor", path)?.as_str() {
        Some("A") | Some("a") => Flavor::A,
        Some("C") | Some("c") => Flavor::C,
        _ => return Err(Error::parse(fpath, "expected \"A\" or \"C\"")),
    };
    let xpath = join(path, "x");
    let xm = matrix_from_value(field(v, "x", path)?, &xpath)?;
    let size = xm.rows();
    let g = match flavor {
        Flavor::A => LieAlg::build(Family::Sl, size),
        Flavor::C if size % 2 == 0 => LieAlg::build(Family::Sp, size / 2),
        Flavor::C => Err(Error::ParameterOutOfRange("odd matrix size".into())),
    }
    .map_err(|e| Error::parse(&xpath, e))?;
    let x = g
        .elem_from_matrix(xm)
        .map_err(|e| Error::parse(&xpath, e))?;
    let y = elem_in(&g, field(v, "y", path)?, &join(path, "y"))?;
    let ipath = join(path, "i");
    let i = vector_from_value(field(v, "i", path)?, &ipath)?;
    if i.len() != size {
        return Err(Error::parse(
            ipath,
            format!("expected length {size}, got {}", i.len()),
        ));
    }
    match flavor {
        Flavor::A => {
            let jpath = join(path, "j");
            let j = vector_from_value(field(v, "j", path)?, &jpath)?;
            if j.len() != size {
                return Err(Error::parse(
                    jpath,
                    format!("expected length {size}, got {}", j.len()),
                ));
            }
            ACTuple::type_a(x, y, i, j)
        }
        Flavor::C => {
            if v.get("j").is_some_and(|j| !j.is_null()) {
                return Err(Error::parse(join(path, "j"), "flavor C tuples carry no j"));
            }
            ACTuple::type_c(x, y, i)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusLimitJson {
    pub converges: bool,
    pub limit: Option<ACTupleJson>,
    pub divergent_positions: Vec<Divergence>,
    pub weights: Vec<i64>,
}

impl TorusLimitJson {
    pub fn from_limit(t: &TorusLimit) -> TorusLimitJson {
        TorusLimitJson {
            converges: t.converges,
            limit: t.limit.as_ref().map(ACTupleJson::from_tuple),
            divergent_positions: t.divergent_positions.clone(),
            weights: t.weights.clone(),
        }
    }
}
