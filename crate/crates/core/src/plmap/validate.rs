use std::fmt;

use crate::dyadic::Dyadic;

use super::{Orientation, Point};

/// Unchecked map data, as read from a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMap {
    pub orientation: Orientation,
    pub points: Vec<Point>,
    pub left: RawTail,
    pub right: RawTail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTail {
    pub anchor: Dyadic,
    pub period: i64,
    pub amplitude: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationCode {
    NotMonotone,
    SlopeNotPowerOfTwo,
    SeamMismatch,
    BadWindowSpan,
    AmplitudeSign,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::NotMonotone => "NOT_MONOTONE",
            ViolationCode::SlopeNotPowerOfTwo => "SLOPE_NOT_POWER_OF_TWO",
            ViolationCode::SeamMismatch => "SEAM_MISMATCH",
            ViolationCode::BadWindowSpan => "BAD_WINDOW_SPAN",
            ViolationCode::AmplitudeSign => "AMPLITUDE_SIGN",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

impl Violation {
    fn new(code: ViolationCode, detail: impl Into<String>) -> Self {
        Self {
            code,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

/// Every rule the raw data breaks. Empty means the data describes a valid
/// map.
pub fn validate(raw: &RawMap) -> Vec<Violation> {
    use ViolationCode::*;
    let mut out = Vec::new();
    let eps = raw.orientation.sign();
    let pts = &raw.points;

    if pts.len() < 2 {
        out.push(Violation::new(BadWindowSpan, "fewer than two points"));
    }

    for (i, w) in pts.windows(2).enumerate() {
        let dx = &w[1].x - &w[0].x;
        let dy = &w[1].y - &w[0].y;
        if dx.signum() <= 0 {
            out.push(Violation::new(
                NotMonotone,
                format!("x does not increase between points {i} and {}", i + 1),
            ));
            continue;
        }
        if dy.signum() as i64 != eps {
            out.push(Violation::new(
                NotMonotone,
                format!(
                    "y is not strictly {} between points {i} and {}",
                    if eps > 0 { "increasing" } else { "decreasing" },
                    i + 1
                ),
            ));
            continue;
        }
        if Dyadic::power_of_two_ratio(&dy, &dx).is_none() {
            out.push(Violation::new(
                SlopeNotPowerOfTwo,
                format!("segment [{}, {}] has slope ({dy})/({dx})", w[0].x, w[1].x),
            ));
        }
    }

    for (name, tail) in [("left", &raw.left), ("right", &raw.right)] {
        if tail.period <= 0 {
            out.push(Violation::new(
                BadWindowSpan,
                format!("{name} period {} is not positive", tail.period),
            ));
        }
        if tail.amplitude == 0 || tail.amplitude.signum() != eps {
            out.push(Violation::new(
                AmplitudeSign,
                format!(
                    "{name} amplitude {} does not have the orientation's sign {eps:+}",
                    tail.amplitude
                ),
            ));
        }
    }
    if raw.left.anchor > raw.right.anchor {
        out.push(Violation::new(
            BadWindowSpan,
            format!(
                "left anchor {} exceeds right anchor {}",
                raw.left.anchor, raw.right.anchor
            ),
        ));
    }
    if pts.len() < 2 || raw.left.period <= 0 || raw.right.period <= 0 {
        return out;
    }

    let find = |x: &Dyadic| pts.iter().find(|p| &p.x == x).map(|p| &p.y);
    let first = &pts[0].x;
    let last = &pts[pts.len() - 1].x;

    let lo = &raw.left.anchor - Dyadic::from(raw.left.period);
    let hi = &raw.right.anchor + Dyadic::from(raw.right.period);
    if first != &lo {
        out.push(Violation::new(
            BadWindowSpan,
            format!("points start at {first}, left window needs {lo}"),
        ));
    }
    if last != &hi {
        out.push(Violation::new(
            BadWindowSpan,
            format!("points end at {last}, right window needs {hi}"),
        ));
    }

    let seams = [
        ("left", &lo, &raw.left.anchor, raw.left.amplitude),
        ("right", &raw.right.anchor, &hi, raw.right.amplitude),
    ];
    for (name, a, b, amplitude) in seams {
        match (find(a), find(b)) {
            (Some(ya), Some(yb)) => {
                if yb - ya != Dyadic::from(amplitude) {
                    out.push(Violation::new(
                        SeamMismatch,
                        format!(
                            "{name} window rises by {} over [{a}, {b}], amplitude is {amplitude}",
                            yb - ya
                        ),
                    ));
                }
            }
            _ => out.push(Violation::new(
                BadWindowSpan,
                format!("{name} window endpoints {a} and {b} are not both stored points"),
            )),
        }
    }
    out
}
