//! On-disk set documents and export formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sets::IntervalSet;
use crate::tiling::Space;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "crate::rational::serde_str_vec")]
    pub params: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rational::serde_str_opt"
    )]
    pub tail: Option<Rational>,
}

impl Metadata {
    fn is_empty(&self) -> bool {
        *self == Metadata::default()
    }
}

/// `{"space": "L2", "intervals": [["-1","-1/2"], ["1/2","1"]], "metadata": {...}}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetDocument {
    pub space: Space,
    pub intervals: IntervalSet,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub metadata: Metadata,
}

impl SetDocument {
    pub fn new(space: Space, intervals: IntervalSet) -> Self {
        SetDocument {
            space,
            intervals,
            metadata: Metadata::default(),
        }
    }

    /// Parses a document, or a bare list of `[lo, hi]` pairs taken as an
    /// L² set.
    pub fn from_json(text: &str) -> Result<Self> {
        let err = |e| json_error(text, e);
        let value: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        if value.is_array() {
            let intervals = serde_json::from_str(text).map_err(err)?;
            return Ok(SetDocument::new(Space::L2, intervals));
        }
        serde_json::from_str(text).map_err(err)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// `lo,hi` per interval after a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lo,hi\n");
        for iv in self.intervals.intervals() {
            out.push_str(&format!("{},{}\n", iv.lo(), iv.hi()));
        }
        out
    }

    /// `lo hi tag` per interval.
    pub fn to_plotdata(&self) -> String {
        let tag = self.metadata.family.as_deref().unwrap_or("set");
        self.intervals
            .intervals()
            .iter()
            .map(|iv| format!("{} {} {tag}\n", iv.lo(), iv.hi()))
            .collect()
    }
}

fn json_error(text: &str, e: serde_json::Error) -> Error {
    let (mut line, mut column) = (e.line(), e.column());
    // Errors raised while parsing a rational carry no position; recover it
    // from the quoted token named in the message.
    if line == 0 {
        let msg = e.to_string();
        if let Some(pos) = msg.find('"').and_then(|i| text.find(&msg[i..])) {
            let before = &text[..pos];
            line = before.matches('\n').count() + 1;
            column = pos - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        }
    }
    let msg = e.to_string();
    let msg = msg.split(" at line ").next().unwrap_or(&msg);
    Error::InvalidDocument(format!("line {line} column {column}: {msg}"))
}
