//! The versioned JSON input document.
//!
//! Complex entries are `[re, im]` pairs of decimals, rational entries are
//! strings such as `"-3/4"`. A document is emitted with one member per line
//! so that hand edits stay readable.

use std::fmt::Write as _;

use jsr_core::ultrametric::{format_rational, parse_rational, PAdicMatrixSet, RationalMatrix};
use jsr_core::{families, ComplexMatrix, MatrixSet, C64};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// Caveat attached to every document built from a sample of the unitary group.
pub const SAMPLE_CAVEAT: &str =
    "finite seeded sample of the unitary group; computed quantities describe this sample, not the full group";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "COMPLEX")]
    Complex,
    #[serde(rename = "RATIONAL_PADIC")]
    RationalPadic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Complex([f64; 2]),
    Rational(String),
}

/// Where a generated document came from. Sampled families record their seed
/// and sample count here.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Source {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub format: u32,
    pub dim: usize,
    pub field: Field,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    pub members: Vec<Vec<Vec<Entry>>>,
}

impl InputDocument {
    pub fn from_complex(set: &MatrixSet, labels: Option<Vec<String>>, source: Option<Source>) -> Self {
        let d = set.dim();
        let members = set
            .members()
            .iter()
            .map(|m| (0..d).map(|i| m.row(i).iter().map(|z| Entry::Complex([z.re, z.im])).collect()).collect())
            .collect();
        Self { format: FORMAT_VERSION, dim: d, field: Field::Complex, prime: None, labels, source, members }
    }

    pub fn from_rational(prime: u64, members: &[RationalMatrix], labels: Option<Vec<String>>) -> Self {
        let dim = members.first().map_or(0, |m| m.dim());
        let members = members
            .iter()
            .map(|m| {
                (0..dim).map(|i| (0..dim).map(|j| Entry::Rational(format_rational(m.get(i, j)))).collect()).collect()
            })
            .collect();
        Self {
            format: FORMAT_VERSION,
            dim,
            field: Field::RationalPadic,
            prime: Some(prime),
            labels,
            source: None,
            members,
        }
    }

    /// Parses and validates. Syntax errors carry serde's line and column,
    /// shape errors name the offending member, row and column.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Parse(msg));
        if self.format != FORMAT_VERSION {
            return bad(format!("field `format`: unsupported version {}, expected {FORMAT_VERSION}", self.format));
        }
        if self.dim == 0 {
            return bad("field `dim`: must be positive".into());
        }
        if self.members.is_empty() {
            return bad("field `members`: at least one matrix is required".into());
        }
        match (self.field, self.prime) {
            (Field::RationalPadic, None) => return bad("field `prime`: required for RATIONAL_PADIC".into()),
            (Field::Complex, Some(_)) => return bad("field `prime`: only meaningful for RATIONAL_PADIC".into()),
            _ => {}
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.members.len() {
                return bad(format!("field `labels`: {} labels for {} members", labels.len(), self.members.len()));
            }
        }
        for (k, m) in self.members.iter().enumerate() {
            if m.len() != self.dim {
                return bad(format!("members[{k}]: {} rows, expected {}", m.len(), self.dim));
            }
            for (i, row) in m.iter().enumerate() {
                if row.len() != self.dim {
                    return bad(format!("members[{k}] row {i}: {} entries, expected {}", row.len(), self.dim));
                }
                for (j, e) in row.iter().enumerate() {
                    let at = format!("members[{k}] row {i} col {j}");
                    match (self.field, e) {
                        (Field::Complex, Entry::Complex(z)) if !(z[0].is_finite() && z[1].is_finite()) => {
                            return bad(format!("{at}: entry is not finite"));
                        }
                        (Field::Complex, Entry::Rational(s)) => {
                            return bad(format!("{at}: COMPLEX entries are [re, im] pairs, got string {s:?}"));
                        }
                        (Field::RationalPadic, Entry::Complex(_)) => {
                            return bad(format!("{at}: RATIONAL_PADIC entries are strings like \"-3/4\""));
                        }
                        (Field::RationalPadic, Entry::Rational(s)) => {
                            parse_rational(s).map_err(|e| CliError::Parse(format!("{at}: {e}")))?;
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_complex_set(&self) -> Result<MatrixSet, CliError> {
        if self.field != Field::Complex {
            return Err(CliError::Usage("this command needs a COMPLEX document".into()));
        }
        let members = self
            .members
            .iter()
            .map(|m| {
                let rows = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                Entry::Complex([re, im]) => C64::new(*re, *im),
                                Entry::Rational(_) => unreachable!("validated"),
                            })
                            .collect()
                    })
                    .collect();
                ComplexMatrix::from_rows(rows)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixSet::new(members)?)
    }

    /// `prime` overrides the document's prime when given.
    pub fn to_padic_set(&self, prime: Option<u64>) -> Result<PAdicMatrixSet, CliError> {
        if self.field != Field::RationalPadic {
            return Err(CliError::Usage("this command needs a RATIONAL_PADIC document".into()));
        }
        let p = prime.or(self.prime).expect("validated");
        let members = self
            .members
            .iter()
            .map(|m| {
                let strs: Vec<Vec<&str>> = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                Entry::Rational(s) => s.as_str(),
                                Entry::Complex(_) => unreachable!("validated"),
                            })
                            .collect()
                    })
                    .collect();
                let rows: Vec<&[&str]> = strs.iter().map(Vec::as_slice).collect();
                RationalMatrix::from_strs(&rows)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PAdicMatrixSet::new(p, members)?)
    }

    /// Canonical text form: header fields pretty-printed, one member per line.
    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\n");
        let mut field = |key: &str, value: String| {
            let _ = writeln!(out, "  {}: {value},", serde_json::to_string(key).unwrap());
        };
        field("format", self.format.to_string());
        field("dim", self.dim.to_string());
        field("field", serde_json::to_string(&self.field).unwrap());
        if let Some(p) = self.prime {
            field("prime", p.to_string());
        }
        if let Some(labels) = &self.labels {
            field("labels", serde_json::to_string(labels).unwrap());
        }
        if let Some(source) = &self.source {
            field("source", serde_json::to_string(source).unwrap());
        }
        out.push_str("  \"members\": [\n");
        for (k, m) in self.members.iter().enumerate() {
            let sep = if k + 1 < self.members.len() { "," } else { "" };
            let _ = writeln!(out, "    {}{sep}", serde_json::to_string(m).unwrap());
        }
        out.push_str("  ]\n}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Elementary,
    Shift,
    UnitaryMix,
    EpsIdentity,
    UnipotentPair,
}

/// Parameters for [`example`]; unused ones are ignored by the family.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub dim: usize,
    pub eps: f64,
    pub samples: usize,
    pub seed: u64,
    pub alphas: Option<Vec<f64>>,
}

fn unit_label(i: usize, j: usize) -> String {
    format!("E{}{}", i + 1, j + 1)
}

/// The document for a built-in family.
pub fn example(family: Family, p: &FamilyParams) -> Result<InputDocument, CliError> {
    let d = p.dim;
    let sampled = |name: &str, eps: Option<f64>| Source {
        family: name.into(),
        seed: Some(p.seed),
        samples: Some(p.samples),
        eps,
        caveat: Some(SAMPLE_CAVEAT.into()),
    };
    let plain = |name: &str| Source { family: name.into(), seed: None, samples: None, eps: None, caveat: None };
    let (set, labels, source) = match family {
        Family::Elementary => {
            let labels = (0..d).flat_map(|i| (0..d).map(move |j| unit_label(i, j))).collect();
            (families::elementary(d)?, labels, plain("elementary"))
        }
        Family::Shift => {
            let mut labels: Vec<String> = (0..d.saturating_sub(1)).map(|i| unit_label(i, i + 1)).collect();
            labels.push(unit_label(d.saturating_sub(1), 0));
            (families::shift(d)?, labels, plain("shift"))
        }
        Family::UnitaryMix => {
            let alphas = p.alphas.clone().unwrap_or_else(|| families::default_alphas(d));
            let set = families::unitary_mix(d, &alphas, p.samples, p.seed)?;
            let labels = core::iter::once("T".to_string()).chain((1..=p.samples).map(|k| format!("U{k}"))).collect();
            (set, labels, sampled("unitary-mix", None))
        }
        Family::EpsIdentity => {
            let set = families::eps_identity(d, p.eps, p.samples, p.seed)?;
            let labels = core::iter::once("I".to_string()).chain((1..=p.samples).map(|k| format!("eU{k}"))).collect();
            (set, labels, sampled("eps-identity", Some(p.eps)))
        }
        Family::UnipotentPair => {
            if d != 2 {
                return Err(CliError::Usage(format!("unipotent-pair is 2-dimensional, got --dim {d}")));
            }
            (families::unipotent_pair(), vec!["A".into(), "B".into()], plain("unipotent-pair"))
        }
    };
    Ok(InputDocument::from_complex(&set, Some(labels), Some(source)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(dim: usize) -> FamilyParams {
        FamilyParams { dim, eps: 0.5, samples: 8, seed: 7, alphas: None }
    }

    #[test]
    fn shift_document() {
        let doc = example(Family::Shift, &params(3)).unwrap();
        assert_eq!(doc.labels.as_deref().unwrap(), ["E12", "E23", "E31"]);
        assert_eq!(doc.members[2][2][0], Entry::Complex([1.0, 0.0]));
        let text = doc.to_json_string();
        assert!(text.starts_with("{\n  \"format\": 1,\n  \"dim\": 3,\n  \"field\": \"COMPLEX\",\n"));
        assert_eq!(InputDocument::parse(&text).unwrap(), doc);
    }

    #[test]
    fn eps_identity_counts() {
        let doc = example(Family::EpsIdentity, &params(2)).unwrap();
        assert_eq!(doc.members.len(), 9);
        assert_eq!(doc.source.as_ref().unwrap().samples, Some(8));
        assert!(doc.source.as_ref().unwrap().caveat.is_some());
    }

    #[test]
    fn rational_round_trip() {
        let m = RationalMatrix::from_strs(&[&["0", "1/2"], &["-3", "7/9"]]).unwrap();
        let doc = InputDocument::from_rational(5, std::slice::from_ref(&m), None);
        let back = InputDocument::parse(&doc.to_json_string()).unwrap();
        assert_eq!(back.to_padic_set(None).unwrap().members(), &[m]);
    }

    #[test]
    fn errors_name_the_location() {
        let short_row = r#"{"format": 1, "dim": 2, "field": "COMPLEX", "members": [[[[1, 0], [0, 0]], [[0, 0]]]]}"#;
        let e = InputDocument::parse(short_row).unwrap_err().to_string();
        assert!(e.contains("members[0] row 1"), "{e}");

        let wrong_kind = r#"{"format": 1, "dim": 1, "field": "RATIONAL_PADIC", "prime": 3, "members": [[[[1, 0]]]]}"#;
        let e = InputDocument::parse(wrong_kind).unwrap_err().to_string();
        assert!(e.contains("members[0] row 0 col 0"), "{e}");

        let syntax = "{\n  \"format\": 1,\n  \"dim\": oops\n}";
        let e = InputDocument::parse(syntax).unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");

        let version = r#"{"format": 2, "dim": 1, "field": "COMPLEX", "members": [[[[1, 0]]]]}"#;
        assert!(InputDocument::parse(version).unwrap_err().to_string().contains("format"));
    }
}
