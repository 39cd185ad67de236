//! JSON shapes for the command-line interface.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::HwData;
use crate::coeff::{parse_rational, LaurentPoly, QValue};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{Mode, ModuleRep};
use crate::ncpoly::{Alphabet, Gen, NCPoly, Word};
use crate::oracle::PbwForm;
use crate::present::NormalForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwTerm {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub coeff: LaurentPoly,
}

pub fn pbw_to_json(p: &PbwForm) -> Vec<PbwTerm> {
    p.terms().rev().map(|(m, c)| PbwTerm { r: m.r, s: m.s, t: m.t, coeff: c.clone() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTerm {
    /// Space-separated letters, `1` for the empty word.
    pub word: String,
    pub coeff: LaurentPoly,
}

pub fn ncpoly_to_json(p: &NCPoly) -> Vec<WordTerm> {
    p.terms().rev().map(|(w, c)| WordTerm { word: w.to_string(), coeff: c.clone() }).collect()
}

pub fn normal_form_to_json(n: &NormalForm) -> Vec<WordTerm> {
    ncpoly_to_json(n.poly())
}

/// Inverse of [`ncpoly_to_json`].
pub fn ncpoly_from_json(alphabet: Alphabet, terms: &[WordTerm]) -> Result<NCPoly> {
    let mut p = NCPoly::zero(alphabet);
    for t in terms {
        let w = if t.word.trim() == "1" { Word::empty(alphabet) } else { Word::parse(alphabet, &t.word)? };
        p.add_term(w, t.coeff.clone());
    }
    Ok(p)
}

pub type MatrixJson = Vec<Vec<LaurentPoly>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub gen: Gen,
    pub dim: usize,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dim: usize,
    pub actions: BTreeMap<String, MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<QValue>,
}

pub fn action_to_json(m: &ModuleRep, g: Gen) -> Result<ActionJson> {
    Ok(ActionJson { gen: g, dim: m.dim(), matrix: m.action(g)?.to_rows() })
}

pub fn module_to_json(m: &ModuleRep) -> ModuleJson {
    ModuleJson {
        dim: m.dim(),
        actions: m.actions().iter().map(|(g, a)| (g.symbol().to_string(), a.to_rows())).collect(),
        q: match m.mode() {
            Mode::Numeric(q) => Some(q.clone()),
            Mode::Symbolic => None,
        },
    }
}

fn entry(v: &Value) -> Result<LaurentPoly> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => Ok(LaurentPoly::constant(parse_rational(&n.to_string())?)),
        other => Err(Error::Invalid(format!("matrix entry must be a string or a number, got {other}"))),
    }
}

fn matrix(v: &Value, dim: usize) -> Result<Matrix<LaurentPoly>> {
    let rows = v.as_array().ok_or_else(|| Error::Invalid("matrix must be an array of rows".into()))?;
    let rows: Vec<Vec<LaurentPoly>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Invalid("matrix row must be an array".into()))?
                .iter()
                .map(entry)
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Dimension(format!("expected a {dim}x{dim} matrix")));
    }
    if dim == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows)
}

/// `(q - q^-1) sq = (q - q^-1) - q a b + q^-1 b a`, solved for `sq`.
fn square_from(a: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>, mode: &Mode) -> Result<Matrix<LaurentPoly>> {
    let n = a.rows();
    let bracket = Matrix::identity(n)
        .scale(&(LaurentPoly::q() - LaurentPoly::q_pow(-1)))
        .sub(&a.mul(b)?.scale(&LaurentPoly::q()))?
        .add(&b.mul(a)?.scale(&LaurentPoly::q_pow(-1)))?;
    let mut d = LaurentPoly::q() - LaurentPoly::q_pow(-1);
    if let Mode::Numeric(q) = mode {
        d = d.specialize(q);
    }
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut e = bracket.get(i, j).clone();
            if let Mode::Numeric(q) = mode {
                e = e.specialize(q);
            }
            out.set(i, j, e.div_exact(&d)?);
        }
    }
    Ok(out)
}

/// Reads `{dim, actions: {gen: [[entry]]}, q?}` over `A`. Entries are
/// Laurent polynomial strings or plain numbers. `nx`, `ny` and `nz` are
/// required; missing squares are computed from them. A `q` in the file is
/// overridden by `q_override`.
pub fn module_from_json(src: &str, q_override: Option<QValue>) -> Result<ModuleRep> {
    let v: Value = serde_json::from_str(src).map_err(|e| Error::Invalid(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| Error::Invalid("expected a JSON object".into()))?;
    let dim = obj.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::Invalid("missing or invalid `dim`".into()))?
        as usize;
    let file_q = match obj.get("q") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse::<QValue>()?),
        Some(Value::Number(n)) => Some(n.to_string().parse::<QValue>()?),
        Some(other) => return Err(Error::Invalid(format!("invalid `q`: {other}"))),
    };
    let mode = match q_override.or(file_q) {
        Some(q) => Mode::Numeric(q),
        None => Mode::Symbolic,
    };
    let acts = obj
        .get("actions")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Invalid("missing `actions` object".into()))?;
    let mut actions = BTreeMap::new();
    for (name, m) in acts {
        let g = Gen::from_symbol(name).ok_or_else(|| Error::Invalid(format!("unknown generator `{name}`")))?;
        if g.alphabet() != Alphabet::A {
            return Err(Error::LetterNotInAlphabet(g, Alphabet::A));
        }
        actions.insert(g, matrix(m, dim)?);
    }
    for g in [Gen::NX, Gen::NY, Gen::NZ] {
        if !actions.contains_key(&g) {
            return Err(Error::MissingGenerator(g));
        }
    }
    for (sq, a, b) in [(Gen::X2, Gen::NY, Gen::NZ), (Gen::Y2, Gen::NZ, Gen::NX), (Gen::Z2, Gen::NX, Gen::NY)] {
        if !actions.contains_key(&sq) {
            let m = square_from(&actions[&a], &actions[&b], &mode)?;
            actions.insert(sq, m);
        }
    }
    let m = ModuleRep::new(Alphabet::A, dim, actions, Mode::Symbolic)?;
    match &mode {
        Mode::Numeric(q) => m.specialize(q),
        Mode::Symbolic => Ok(m),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HwJson {
    pub d: usize,
    pub lambda: LaurentPoly,
    pub alpha: Vec<LaurentPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<QValue>,
}

pub fn hw_to_json(h: &HwData) -> HwJson {
    HwJson {
        d: h.d,
        lambda: h.lambda.clone(),
        alpha: h.alpha.clone(),
        basis: h.basis.as_ref().map(Matrix::to_rows),
        q: h.q.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::extract_highest_weight;
    use crate::expr::parse_expr;
    use crate::module::build_l;
    use crate::oracle::normalize;
    use crate::present::reduce;

    #[test]
    fn pbw_json_shape() {
        let p = normalize(&parse_expr("y*x", Alphabet::U).unwrap());
        let v = serde_json::to_value(pbw_to_json(&p)).unwrap();
        assert_eq!(v[0]["r"], 1);
        assert_eq!(v[0]["coeff"], "q^2");
        assert_eq!(v.as_array().unwrap().len(), 2);
    }

    #[test]
    fn normal_form_round_trip() {
        let n = reduce(&parse_expr("nx*nx", Alphabet::A).unwrap()).unwrap();
        let js = serde_json::to_string(&normal_form_to_json(&n)).unwrap();
        let back: Vec<WordTerm> = serde_json::from_str(&js).unwrap();
        assert_eq!(ncpoly_from_json(Alphabet::A, &back).unwrap(), *n.poly());
        assert!(js.contains("\"word\":\"1\""));
    }

    #[test]
    fn module_round_trip() {
        let l = build_l(2);
        let js = serde_json::to_string(&module_to_json(&l)).unwrap();
        assert_eq!(module_from_json(&js, None).unwrap(), l);
    }

    #[test]
    fn squares_are_completed() {
        let l = build_l(3);
        let mut js = module_to_json(&l);
        js.actions.retain(|k, _| k.starts_with('n'));
        let src = serde_json::to_string(&js).unwrap();
        assert_eq!(module_from_json(&src, None).unwrap(), l);
        let q = QValue::from_ratio(3, 2).unwrap();
        let m = module_from_json(&src, Some(q.clone())).unwrap();
        assert_eq!(m, l.specialize(&q).unwrap());
        assert_eq!(extract_highest_weight(&m).unwrap().d, 3);
    }

    #[test]
    fn numeric_entries() {
        let src = r#"{"dim": 1, "actions": {"nx": [[0]], "ny": [[0]], "nz": [["0"]]}, "q": "2"}"#;
        let m = module_from_json(src, None).unwrap();
        assert_eq!(m.action(Gen::Z2).unwrap().get(0, 0), &LaurentPoly::one());
        assert!(module_from_json(r#"{"dim": 1, "actions": {"nx": [[0]]}}"#, None).is_err());
        assert!(module_from_json(r#"{"dim": 2, "actions": {"nx": [[0]], "ny": [[0]], "nz": [[0]]}}"#, None).is_err());
    }
}
