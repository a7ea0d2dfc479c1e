//! JSON formats for arrays, matrices, realizations, verdicts, bracket
//! tables, flags and reports.
//!
//! Scalars are strings: `"p/q"` or `"p"` over the rationals, the residue
//! over a prime field. Field headers are `{"kind":"rational"}` or
//! `{"kind":"prime","modulus":p}`. Struct fields serialize in declaration
//! order, so output is byte-for-byte reproducible.

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Matrix, Scalar, Subspace};
use crate::error::Error;
use crate::flags::{FlagLabel, Geometry};
use crate::parameter_array::{ConditionStatus, ParameterArray, QParameter, ValidityReport};
use crate::realization::{BracketTable, Realization};
use crate::recognizer::{BidiagonalPair, Verdict};
use crate::suite::{ReportEntry, TheoremReport};

/// Environment variable that replaces the field header of every input.
pub const FIELD_MODULUS_ENV: &str = "LEONARD_FIELD_MODULUS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldJson {
    Rational,
    Prime { modulus: u64 },
}

impl FieldJson {
    pub fn of(field: Field) -> FieldJson {
        match field.modulus() {
            None => FieldJson::Rational,
            Some(p) => FieldJson::Prime { modulus: p },
        }
    }

    pub fn field(self) -> Result<Field, Error> {
        match self {
            FieldJson::Rational => Ok(Field::Rational),
            FieldJson::Prime { modulus } => Field::prime(modulus),
        }
    }
}

/// Reads the override variable; unset or empty means no override.
pub fn field_override_from_env() -> Result<Option<Field>, Error> {
    match std::env::var(FIELD_MODULUS_ENV) {
        Ok(v) if !v.trim().is_empty() => {
            let p: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{FIELD_MODULUS_ENV}={v:?} is not an integer")))?;
            Field::prime(p).map(Some)
        }
        _ => Ok(None),
    }
}

fn strs(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn parse_all(field: Field, v: &[String]) -> Result<Vec<Scalar>, Error> {
    v.iter().map(|s| field.parse(s)).collect()
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayJson {
    pub field: FieldJson,
    pub d: usize,
    pub theta: Vec<String>,
    pub theta_star: Vec<String>,
    pub varphi: Vec<String>,
    pub phi: Vec<String>,
}

impl ArrayJson {
    pub fn of(arr: &ParameterArray) -> ArrayJson {
        ArrayJson {
            field: FieldJson::of(arr.field()),
            d: arr.d(),
            theta: strs(arr.theta()),
            theta_star: strs(arr.theta_star()),
            varphi: strs(arr.varphi_seq()),
            phi: strs(arr.phi_seq()),
        }
    }

    pub fn to_array(&self, field_override: Option<Field>) -> Result<ParameterArray, Error> {
        let field = match field_override {
            Some(f) => f,
            None => self.field.field()?,
        };
        if self.theta.len() != self.d + 1 {
            return Err(Error::LengthMismatch { what: "theta", expected: self.d + 1, found: self.theta.len() });
        }
        ParameterArray::new(
            field,
            parse_all(field, &self.theta)?,
            parse_all(field, &self.theta_star)?,
            parse_all(field, &self.varphi)?,
            parse_all(field, &self.phi)?,
        )
    }
}

pub fn parse_array(text: &str, field_override: Option<Field>) -> Result<ParameterArray, Error> {
    serde_json::from_str::<ArrayJson>(text).map_err(json_err)?.to_array(field_override)
}

pub fn array_json(arr: &ParameterArray) -> String {
    to_json(&ArrayJson::of(arr))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub d: usize,
    pub field: FieldJson,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn of(m: &Matrix) -> MatrixJson {
        MatrixJson {
            d: m.rows().saturating_sub(1),
            field: FieldJson::of(m.field()),
            rows: m.to_rows().iter().map(|r| strs(r)).collect(),
        }
    }

    pub fn to_matrix(&self, field_override: Option<Field>) -> Result<Matrix, Error> {
        let field = match field_override {
            Some(f) => f,
            None => self.field.field()?,
        };
        if self.rows.len() != self.d + 1 {
            return Err(Error::DimensionMismatch { expected: self.d + 1, found: self.rows.len() });
        }
        let rows = self.rows.iter().map(|r| parse_all(field, r)).collect::<Result<Vec<_>, _>>()?;
        let m = Matrix::from_rows(field, rows)?;
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        Ok(m)
    }
}

/// A subspace as its list of canonical basis vectors.
pub fn subspace_json(s: &Subspace) -> Vec<Vec<String>> {
    s.basis_vectors().iter().map(|v| strs(v)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagsJson {
    /// Keyed by flag label; each flag is its list of components.
    pub flags: Vec<(String, Vec<Vec<Vec<String>>>)>,
    /// Keyed by `zw`, all twelve ordered pairs.
    pub decompositions: Vec<(String, Vec<Vec<Vec<String>>>)>,
}

impl FlagsJson {
    pub fn of(geo: &Geometry) -> FlagsJson {
        let flags = FlagLabel::ALL
            .iter()
            .map(|z| (z.name().to_string(), geo.flag(*z).components().iter().map(subspace_json).collect()))
            .collect();
        let decompositions = Geometry::ordered_pairs()
            .into_iter()
            .map(|(z, w)| {
                let dec = geo.decomposition(z, w).expect("distinct labels");
                (format!("{z}{w}"), dec.components().iter().map(subspace_json).collect())
            })
            .collect();
        FlagsJson { flags, decompositions }
    }
}

#[derive(Clone, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct RealizationJson {
    pub field: FieldJson,
    pub d: usize,
    pub A: MatrixJson,
    pub A_star: MatrixJson,
    pub E: Vec<MatrixJson>,
    pub E_star: Vec<MatrixJson>,
    pub S: MatrixJson,
    pub S_star: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<serde_json::Value>,
}

pub fn realization_json(real: &Realization, geometry: Option<&Geometry>) -> String {
    let ms = |v: &[Matrix]| v.iter().map(MatrixJson::of).collect();
    let geometry = geometry.map(|g| {
        let f = FlagsJson::of(g);
        let obj = |v: Vec<(String, Vec<Vec<Vec<String>>>)>| {
            serde_json::Value::Object(v.into_iter().map(|(k, c)| (k, serde_json::json!(c))).collect())
        };
        serde_json::json!({ "flags": obj(f.flags), "decompositions": obj(f.decompositions) })
    });
    to_json(&RealizationJson {
        field: FieldJson::of(real.field()),
        d: real.d(),
        A: MatrixJson::of(real.a()),
        A_star: MatrixJson::of(real.a_star()),
        E: ms(real.e_all()),
        E_star: ms(real.e_star_all()),
        S: MatrixJson::of(real.s()),
        S_star: MatrixJson::of(real.s_star()),
        geometry,
    })
}

#[derive(Clone, Debug, Deserialize)]
#[allow(non_snake_case)]
struct PairJson {
    A: MatrixJson,
    A_star: MatrixJson,
}

/// Reads `{"A": matrix, "A_star": matrix}`. Extra keys (such as the rest of
/// a realization bundle) are ignored.
pub fn parse_pair(text: &str, field_override: Option<Field>) -> Result<BidiagonalPair, Error> {
    let p: PairJson = serde_json::from_str(text).map_err(json_err)?;
    BidiagonalPair::new(p.A.to_matrix(field_override)?, p.A_star.to_matrix(field_override)?)
}

#[derive(Clone, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct VerdictJson {
    pub accept: bool,
    pub array: Option<ArrayJson>,
    pub S: Option<MatrixJson>,
    pub failed: Option<String>,
}

pub fn verdict_json(v: &Verdict) -> String {
    to_json(&match v {
        Verdict::Accept { array, s } => {
            VerdictJson { accept: true, array: Some(ArrayJson::of(array)), S: Some(MatrixJson::of(s)), failed: None }
        }
        Verdict::Reject { reason } => {
            VerdictJson { accept: false, array: None, S: None, failed: Some(reason.to_string()) }
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketEntryJson {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketsJson {
    pub field: FieldJson,
    pub d: usize,
    /// `"undetermined"`, `"not_in_field"` or the scalar.
    pub q: String,
    pub entries: Vec<BracketEntryJson>,
}

pub fn brackets_json(field: Field, table: &BracketTable, q: &QParameter) -> String {
    let q = match q {
        QParameter::Undetermined => "undetermined".to_string(),
        QParameter::NotInField => "not_in_field".to_string(),
        QParameter::Value(v) => v.to_string(),
    };
    let entries = table
        .iter()
        .map(|(&(r, s, t), v)| BracketEntryJson { r, s, t, value: v.to_string() })
        .collect();
    to_json(&BracketsJson { field: FieldJson::of(field), d: table.d(), q, entries })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionJson {
    pub condition: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityJson {
    pub valid: bool,
    pub conditions: Vec<ConditionJson>,
}

impl ValidityJson {
    pub fn of(rep: &ValidityReport) -> ValidityJson {
        let conditions = rep
            .statuses
            .iter()
            .map(|(c, s)| {
                let (status, index) = match s {
                    ConditionStatus::Pass => ("pass", None),
                    ConditionStatus::FailsAt(i) => ("fail", Some(*i)),
                    ConditionStatus::Undefined => ("undefined", None),
                };
                ConditionJson { condition: c.to_string(), status, index }
            })
            .collect();
        ValidityJson { valid: rep.is_valid(), conditions }
    }
}

pub fn validity_json(rep: &ValidityReport) -> String {
    to_json(&ValidityJson::of(rep))
}

#[derive(Clone, Debug, Serialize)]
struct SummaryJson {
    valid: bool,
    total: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
}

/// One JSON object per line: the validity report, each entry, a summary.
pub fn report_json_lines(rep: &TheoremReport) -> String {
    let mut out = String::new();
    let line = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(&mut out, serde_json::json!({ "validity": ValidityJson::of(&rep.validity) }).to_string());
    for e in &rep.entries {
        line(&mut out, serde_json::to_string::<ReportEntry>(e).expect("entries serialize"));
    }
    let count = |f: fn(&ReportEntry) -> bool| rep.entries.iter().filter(|e| f(e)).count();
    let summary = SummaryJson {
        valid: rep.validity.is_valid(),
        total: rep.entries.len(),
        passed: count(|e| e.outcome.passed()),
        failed: count(|e| e.outcome.failed()),
        skipped: count(|e| matches!(e.outcome, crate::outcome::Outcome::Skipped(_))),
    };
    line(&mut out, serde_json::json!({ "summary": summary }).to_string());
    out
}
