use serde::{Deserialize, Serialize};
use serde_json::Value;
use tvar_core::{
    AHDatum, CharacterCocycle, DowngradeOptions, IntMatrix, LatticeInvolution, PolyhedralDivisor,
    SignCharacter, TorusEmbedding,
};

/// A schema violation in a problem file.
#[derive(Debug, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ParseError {
    /// Dotted field path, `.` for the document root.
    pub path: String,
    pub message: String,
    /// Zero when the error is a schema violation rather than a syntax error.
    pub line: usize,
    pub column: usize,
}

/// Divisor, involutions and optional twist given directly instead of
/// through a downgrade.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    pub divisor: PolyhedralDivisor,
    pub tau_hat_y: LatticeInvolution,
    pub tau_hat: LatticeInvolution,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_exponent: Option<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<SignCharacter>,
}

impl DatumSpec {
    pub fn build(&self) -> tvar_core::Result<AHDatum> {
        let (k, d) = (self.tau_hat_y.rank(), self.tau_hat.rank());
        AHDatum::new(
            self.divisor.clone(),
            self.tau_hat_y.clone(),
            self.tau_hat.clone(),
            self.h_exponent.clone().unwrap_or_else(|| IntMatrix::zeros(k, d)),
            self.signs.clone().unwrap_or_else(|| SignCharacter::trivial(d)),
        )
    }
}

/// Where an `AHDatum` comes from: an embedding to downgrade, or a datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Source {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<TorusEmbedding>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: DowngradeOptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumSpec>,
}

fn is_default(o: &DowngradeOptions) -> bool {
    *o == DowngradeOptions::default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyProblem {
    pub matrix: LatticeInvolution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DowngradeProblem {
    pub embedding: TorusEmbedding,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: DowngradeOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluateProblem {
    pub divisor: PolyhedralDivisor,
    /// Defaults to the grid points of the weight cone.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckPpProblem {
    pub divisor: PolyhedralDivisor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRealProblem {
    pub source: Source,
    /// Replaces the twisting exponent before checking.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_exponent: Option<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<SignCharacter>,
}

/// Either an explicit cocycle or the twist of a datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitProblem {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CharacterCocycle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionsProblem {
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<i64>>>,
    /// Half-width of the enumeration box; defaults to twice the grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCheckProblem {
    pub embedding: TorusEmbedding,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: DowngradeOptions,
    /// Defaults to the weights of all monomials within the degree bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Problem {
    Classify(ClassifyProblem),
    Downgrade(DowngradeProblem),
    Evaluate(EvaluateProblem),
    CheckPp(CheckPpProblem),
    CheckReal(CheckRealProblem),
    Split(SplitProblem),
    Sections(SectionsProblem),
    OracleCheck(OracleCheckProblem),
}

pub const KINDS: [&str; 8] = [
    "classify",
    "downgrade",
    "evaluate",
    "check-pp",
    "check-real",
    "split",
    "sections",
    "oracle-check",
];

impl Problem {
    pub fn kind(&self) -> &'static str {
        let i = match self {
            Problem::Classify(_) => 0,
            Problem::Downgrade(_) => 1,
            Problem::Evaluate(_) => 2,
            Problem::CheckPp(_) => 3,
            Problem::CheckReal(_) => 4,
            Problem::Split(_) => 5,
            Problem::Sections(_) => 6,
            Problem::OracleCheck(_) => 7,
        };
        KINDS[i]
    }
}

fn field_error(path: &str, message: impl Into<String>) -> ParseError {
    ParseError {
        path: path.into(),
        message: message.into(),
        line: 0,
        column: 0,
    }
}

fn payload<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, ParseError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        field_error(&path, e.into_inner().to_string())
    })
}

/// Parses a problem file. Syntax errors carry a line and column; schema
/// violations carry the path of the offending field.
pub fn load_problem(text: &str) -> Result<Problem, ParseError> {
    let root: Value = serde_json::from_str(text).map_err(|e| ParseError {
        path: ".".into(),
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    let Value::Object(mut map) = root else {
        return Err(field_error(".", "expected a JSON object"));
    };
    let kind = match map.remove("kind") {
        Some(Value::String(k)) => k,
        Some(_) => return Err(field_error("kind", "expected a string")),
        None => return Err(field_error("kind", "missing field `kind`")),
    };
    let body = Value::Object(map);
    Ok(match kind.as_str() {
        "classify" => Problem::Classify(payload(body)?),
        "downgrade" => Problem::Downgrade(payload(body)?),
        "evaluate" | "eval" => Problem::Evaluate(payload(body)?),
        "check-pp" => Problem::CheckPp(payload(body)?),
        "check-real" => Problem::CheckReal(payload(body)?),
        "split" => Problem::Split(payload(body)?),
        "sections" => Problem::Sections(payload(body)?),
        "oracle-check" => Problem::OracleCheck(payload(body)?),
        other => {
            return Err(field_error(
                "kind",
                format!("unknown kind {other:?}, expected one of {}", KINDS.join(", ")),
            ))
        }
    })
}
