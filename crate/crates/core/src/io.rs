//! JSON formats for presentations, words, period matrices and results.
//!
//! Cobordism:
//! ```json
//! {"N": 4,
//!  "bottom": {"genera": [1], "lagrangian": [[0, 1]]},
//!  "top": {"genera": [1]},
//!  "components": [{"role": "core-bottom", "graph": 0, "handle": 0},
//!                 {"role": "core-top", "graph": 0, "handle": 0},
//!                 {"role": "surgery"}],
//!  "B": [[0, 0, 1], [0, 0, -1], [1, -1, 0]],
//!  "weight": 0}
//! ```
//! `lagrangian` lists spanning vectors in total coordinates (all a's, then all b's)
//! and defaults to the standard one; closed manifolds omit `bottom` and `top`.

use crate::cobordism::{ExtendedSurface, FramedCobordism};
use crate::error::{check_level, Error, Result};
use crate::heisenberg::multi_index;
use crate::link::{AbelianLinkData, Role};
use crate::matrix::Matrix;
use crate::mcg::ExtendedMappingClass;
use crate::scalar::Scalar;
use crate::symplectic::Lagrangian;
use crate::theta::PeriodMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Format {
    Exact,
    /// Rounded to the number of decimals the tolerance resolves.
    Float { tolerance: f64 },
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::Parse(format!("{what}: expected an integer, got {v}")))
}

fn int_rows(v: &Value, what: &str) -> Result<Vec<Vec<i64>>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse(format!("{what}: expected an array of rows")))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse(format!("{what}: expected a row, got {r}")))?
                .iter()
                .map(|x| as_i64(x, what))
                .collect()
        })
        .collect()
}

/// The level from the input, overridden by `flag` when given.
pub fn level_from(v: &Value, flag: Option<i64>) -> Result<u32> {
    match flag.or_else(|| v.get("N").and_then(Value::as_i64)) {
        Some(n) => check_level(n),
        None => Err(Error::Parse("no level: pass --N or an \"N\" field".into())),
    }
}

fn parse_surface(v: Option<&Value>) -> Result<ExtendedSurface> {
    let Some(v) = v else { return Ok(ExtendedSurface::empty()) };
    let genera: Vec<usize> = field(v, "genera")?
        .as_array()
        .ok_or_else(|| Error::Parse("genera must be an array".into()))?
        .iter()
        .map(|g| g.as_u64().map(|g| g as usize).ok_or_else(|| Error::Parse(format!("bad genus {g}"))))
        .collect::<Result<_>>()?;
    match v.get("lagrangian") {
        None => Ok(ExtendedSurface::standard(&genera)),
        Some(l) => {
            let total: usize = genera.iter().sum();
            let span = Lagrangian::from_integer_span(total, &int_rows(l, "lagrangian")?)?;
            ExtendedSurface::from_total(&genera, &span)
        }
    }
}

pub fn parse_link(v: &Value) -> Result<AbelianLinkData> {
    let comps = field(v, "components")?.as_array().ok_or_else(|| Error::Parse("components must be an array".into()))?;
    let roles = comps
        .iter()
        .map(|c| {
            let role = c.get("role").and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("component without role: {c}")))?;
            let idx = |k: &str| -> Result<usize> {
                let i = as_i64(field(c, k)?, k)?;
                usize::try_from(i).map_err(|_| Error::Parse(format!("negative {k}")))
            };
            Ok(match role {
                "surgery" => Role::Surgery,
                "embedded" => Role::Embedded,
                "core-bottom" => Role::BottomCore { graph: idx("graph")?, handle: idx("handle")? },
                "core-top" => Role::TopCore { graph: idx("graph")?, handle: idx("handle")? },
                other => return Err(Error::Parse(format!("unknown role \"{other}\""))),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = int_rows(field(v, "B")?, "B")?;
    let n = roles.len();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("B must be {n}×{n}")));
    }
    let b = Matrix::from_fn(n, n, |i, j| rows[i][j]);
    let link = AbelianLinkData::new(roles, b)?;
    link.check_core_conventions()?;
    Ok(link)
}

pub fn parse_cobordism(v: &Value) -> Result<FramedCobordism> {
    let link = parse_link(v)?;
    let weight = v.get("weight").map(|w| as_i64(w, "weight")).transpose()?.unwrap_or(0);
    FramedCobordism::new(link, parse_surface(v.get("bottom"))?, parse_surface(v.get("top"))?, weight)
}

/// {"genus": g, "word": [["Ta1", 1], …], "weight": n}
pub fn parse_mapping_class(v: &Value) -> Result<ExtendedMappingClass> {
    let genus = as_i64(field(v, "genus")?, "genus")?;
    let genus = usize::try_from(genus).map_err(|_| Error::Parse("negative genus".into()))?;
    let word = ExtendedMappingClass::parse_word(genus, field(v, "word")?)?;
    let weight = v.get("weight").map(|w| as_i64(w, "weight")).transpose()?.unwrap_or(0);
    ExtendedMappingClass::new(genus, word, weight)
}

/// `Pi` lists the g² entries [re, im] row by row.
pub fn parse_period_matrix(v: &Value) -> Result<PeriodMatrix<f64>> {
    let flat = field(v, "Pi")?.as_array().ok_or_else(|| Error::Parse("Pi must be an array".into()))?;
    let entries = flat
        .iter()
        .map(|e| match e.as_array().map(|a| (a.len(), a.first().and_then(Value::as_f64), a.get(1).and_then(Value::as_f64))) {
            Some((2, Some(re), Some(im))) => Ok(Complex64::new(re, im)),
            _ => Err(Error::Parse(format!("Pi entry must be [re, im], got {e}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let g = (entries.len() as f64).sqrt().round() as usize;
    if g == 0 || g * g != entries.len() {
        return Err(Error::Shape(format!("Pi has {} entries, not a square count", entries.len())));
    }
    PeriodMatrix::new(entries.chunks(g).map(<[_]>::to_vec).collect())
}

fn round_to(x: f64, tolerance: f64) -> f64 {
    let digits = (-tolerance.log10()).ceil().clamp(0.0, 15.0) as i32;
    let scale = 10f64.powi(digits);
    let r = (x * scale).round() / scale;
    if r == 0.0 { 0.0 } else { r }
}

pub fn scalar_to_json(s: &Scalar, format: Format) -> Value {
    match format {
        Format::Exact => s.to_json(),
        Format::Float { tolerance } => {
            let z = s.to_complex();
            json!([round_to(z.re, tolerance), round_to(z.im, tolerance)])
        }
    }
}

fn basis(genus: usize, level: u32, dim: usize) -> Vec<Value> {
    (0..dim).map(|k| json!(multi_index(k, genus, level))).collect()
}

/// Rows are indexed by the output basis, columns by the input basis, both lexicographic in μ.
pub fn operator_to_json(m: &Matrix<Scalar>, genus_out: usize, genus_in: usize, level: u32, format: Format) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_json(&m[(i, j)], format)).collect())).collect();
    json!({
        "N": level,
        "rows": basis(genus_out, level, m.rows()),
        "cols": basis(genus_in, level, m.cols()),
        "entries": entries,
    })
}

/// Nonzero coefficients as [μ, value] pairs in basis order.
pub fn vector_to_json(coeffs: &[Scalar], genus: usize, level: u32, format: Format) -> Value {
    Value::Array(
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!([multi_index(k, genus, level), scalar_to_json(c, format)]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cylinder_json() -> Value {
        json!({
            "N": 4,
            "bottom": {"genera": [1]},
            "top": {"genera": [1]},
            "components": [{"role": "core-bottom", "graph": 0, "handle": 0},
                           {"role": "core-top", "graph": 0, "handle": 0},
                           {"role": "surgery"}],
            "B": [[0, 0, 1], [0, 0, -1], [1, -1, 0]],
            "weight": 1
        })
    }

    #[test]
    fn parsed_cylinder_matches_constructor() {
        let m = parse_cobordism(&cylinder_json()).unwrap();
        let level = level_from(&cylinder_json(), None).unwrap();
        let built = FramedCobordism::identity_cylinder(&[1], 1);
        assert_eq!(m.z_matrix(level).unwrap(), built.z_matrix(level).unwrap());
    }

    #[test]
    fn flag_overrides_level() {
        assert_eq!(level_from(&cylinder_json(), Some(6)).unwrap(), 6);
        assert_eq!(level_from(&json!({}), None).unwrap_err().exit_code(), 1);
        assert!(matches!(level_from(&json!({"N": 3}), None), Err(Error::OddLevel(3))));
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        let mut v = cylinder_json();
        v["B"] = json!([[0, 1], [1, 0]]);
        assert_eq!(parse_cobordism(&v).unwrap_err().exit_code(), 1);
        let mut v = cylinder_json();
        v["components"][2]["role"] = json!("handle");
        assert!(matches!(parse_cobordism(&v), Err(Error::Parse(_))));
        let mut v = cylinder_json();
        v["bottom"]["lagrangian"] = json!([[1, 1]]);
        assert!(parse_cobordism(&v).is_ok());
        v["bottom"]["lagrangian"] = json!([[0, 0]]);
        assert!(parse_cobordism(&v).is_err());
        // cores are 0-framed
        let mut v = cylinder_json();
        v["B"][0][0] = json!(2);
        assert!(parse_cobordism(&v).is_err());
    }

    #[test]
    fn period_matrix_layout() {
        let p = parse_period_matrix(&json!({"Pi": [[0.1, 1.0], [0.2, 0.3], [0.2, 0.3], [0.0, 1.5]]})).unwrap();
        assert_eq!(p.genus(), 2);
        assert!(parse_period_matrix(&json!({"Pi": [[0.0, 1.0], [0.0, 0.0]]})).is_err());
    }

    #[test]
    fn float_rounding() {
        let s = Scalar::level_pow_half(8, -1);
        assert_eq!(scalar_to_json(&s, Format::Float { tolerance: 1e-9 }), json!([0.353553391, 0.0]));
        let back = Scalar::from_json(&scalar_to_json(&s, Format::Exact)).unwrap();
        assert_eq!(back, s);
    }
}
