//! The JSON map document.
//!
//! ```json
//! {
//!   "left": { "amplitude": 1, "anchor": "0", "period": 1 },
//!   "orientation": 1,
//!   "points": [["-1", "-1"], ["0", "0"], ["1", "1"]],
//!   "right": { "amplitude": 1, "anchor": "0", "period": 1 }
//! }
//! ```
//!
//! Dyadics travel as literals (`"3/2^2"`), never as floats. Fields are
//! declared in sorted order so serialization is byte-deterministic.

use comf::plmap::{validate, RawMap, RawTail};
use comf::{Dyadic, Orientation, PLMap, Point};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailDocument {
    pub amplitude: i64,
    pub anchor: String,
    pub period: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub left: TailDocument,
    pub orientation: i64,
    pub points: Vec<[String; 2]>,
    pub right: TailDocument,
}

impl MapDocument {
    pub fn from_map(f: &PLMap) -> Self {
        let tail = |t: &comf::TailSpec| TailDocument {
            amplitude: t.amplitude,
            anchor: t.anchor.to_string(),
            period: t.period as i64,
        };
        MapDocument {
            left: tail(f.left()),
            orientation: f.orientation().sign(),
            points: f
                .points()
                .iter()
                .map(|p| [p.x.to_string(), p.y.to_string()])
                .collect(),
            right: tail(f.right()),
        }
    }

    /// The unvalidated map data.
    pub fn to_raw(&self) -> Result<RawMap, CliError> {
        let dyadic = |s: &str| {
            s.parse::<Dyadic>()
                .map_err(|e| CliError::Parse(e.to_string()))
        };
        let tail = |t: &TailDocument| -> Result<RawTail, CliError> {
            Ok(RawTail {
                anchor: dyadic(&t.anchor)?,
                period: t.period,
                amplitude: t.amplitude,
            })
        };
        let orientation = Orientation::from_sign(self.orientation).ok_or_else(|| {
            CliError::Parse(format!(
                "orientation must be 1 or -1, got {}",
                self.orientation
            ))
        })?;
        let points = self
            .points
            .iter()
            .map(|[x, y]| Ok(Point::new(dyadic(x)?, dyadic(y)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(RawMap {
            orientation,
            points,
            left: tail(&self.left)?,
            right: tail(&self.right)?,
        })
    }
}

/// Parses JSON text without checking the map invariants.
pub fn parse_raw(text: &str) -> Result<RawMap, CliError> {
    let doc: MapDocument =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    doc.to_raw()
}

/// Parses and validates a map document.
pub fn parse_map(text: &str) -> Result<PLMap, CliError> {
    let raw = parse_raw(text)?;
    let violations = validate::validate(&raw);
    if !violations.is_empty() {
        return Err(CliError::Invalid(violations));
    }
    Ok(PLMap::from_raw(raw).expect("validated"))
}

pub fn serialize_map(f: &PLMap) -> String {
    let mut out = serde_json::to_string_pretty(&MapDocument::from_map(f))
        .expect("documents always serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use comf::fixtures;
    use comf::plmap::ViolationCode;

    #[test]
    fn identity_document() {
        let want = r#"{
  "left": {
    "amplitude": 1,
    "anchor": "0",
    "period": 1
  },
  "orientation": 1,
  "points": [
    [
      "-1",
      "-1"
    ],
    [
      "0",
      "0"
    ],
    [
      "1",
      "1"
    ]
  ],
  "right": {
    "amplitude": 1,
    "anchor": "0",
    "period": 1
  }
}
"#;
        assert_eq!(serialize_map(&PLMap::identity()), want);
    }

    #[test]
    fn round_trips() {
        for f in [
            fixtures::mk13(),
            fixtures::x1(),
            fixtures::c01(),
            PLMap::reflection(),
        ] {
            let text = serialize_map(&f);
            let back = parse_map(&text).unwrap();
            assert_eq!(back, f);
            assert_eq!(serialize_map(&back.canonicalize()), text);
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let mut doc = MapDocument::from_map(&PLMap::identity());
        doc.points[2] = ["1".into(), "3".into()];
        doc.right.amplitude = 3;
        let text = serde_json::to_string(&doc).unwrap();
        match parse_map(&text) {
            Err(CliError::Invalid(v)) => {
                assert!(v
                    .iter()
                    .any(|v| v.code == ViolationCode::SlopeNotPowerOfTwo))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_map("{"), Err(CliError::Parse(_))));
        let float = serialize_map(&PLMap::identity()).replace("\"-1\"", "-1.0");
        assert!(matches!(parse_map(&float), Err(CliError::Parse(_))));
        let literal = serialize_map(&PLMap::identity()).replace("\"-1\"", "\"-1/3\"");
        assert!(matches!(parse_map(&literal), Err(CliError::Parse(_))));
    }
}
