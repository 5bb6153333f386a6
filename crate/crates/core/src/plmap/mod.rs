//! Piecewise-linear homeomorphisms of the line that are eventually
//! integrally periodically affine.
//!
//! A [`PLMap`] stores a finite list of vertices covering
//! `[A_l - p_l, A_r + p_r]` and two tail rules. To the right of the anchor
//! `A_r` the map satisfies `f(t + p_r) = f(t) + q_r`; to the left of `A_l`
//! it satisfies `f(t - p_l) = f(t) - q_l`. The stored points on
//! `[A_r, A_r + p_r]` and `[A_l - p_l, A_l]` are the two windows, and the
//! whole map is recovered from them by unfolding.
//!
//! Amplitudes are signed: an orientation-reversing map has negative `q_l`
//! and `q_r`, which keeps both tail rules literally true.
//!
//! Every operation returns maps in canonical form (see
//! [`PLMap::canonicalize`]), so two canonical maps are equal as functions
//! exactly when they are structurally equal.

mod canonical;
pub mod compose;
pub mod support;
pub mod validate;

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

pub use support::{Component, End, Support};
pub use validate::{RawMap, RawTail, Violation, ViolationCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Preserving => 1,
            Orientation::Reversing => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Option<Self> {
        match sign {
            1 => Some(Orientation::Preserving),
            -1 => Some(Orientation::Reversing),
            _ => None,
        }
    }
}

impl Mul for Orientation {
    type Output = Orientation;
    fn mul(self, rhs: Orientation) -> Orientation {
        if self == rhs {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Preserving => "+1",
            Orientation::Reversing => "-1",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Dyadic,
    pub y: Dyadic,
}

impl Point {
    pub fn new(x: Dyadic, y: Dyadic) -> Self {
        Self { x, y }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One periodic tail: beyond `anchor` the map advances by `amplitude` every
/// `period`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailSpec {
    pub anchor: Dyadic,
    pub period: u64,
    pub amplitude: i64,
}

impl TailSpec {
    pub fn new(anchor: Dyadic, period: u64, amplitude: i64) -> Self {
        Self {
            anchor,
            period,
            amplitude,
        }
    }

    /// `(period, amplitude)`.
    pub fn rule(&self) -> (u64, i64) {
        (self.period, self.amplitude)
    }
}

/// Result of [`PLMap::equals`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    /// A dyadic point where the two maps take different values.
    Witness(Dyadic),
}

impl Equality {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal)
    }
}

/// A closed interval with dyadic endpoints, `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidArgument(format!(
                "empty interval [{lo}, {hi}]"
            )))
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn contains(&self, t: &Dyadic) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    /// Closed intervals: a shared endpoint counts as an intersection.
    pub fn intersects(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLMap {
    orientation: Orientation,
    points: Vec<Point>,
    left: TailSpec,
    right: TailSpec,
}

impl PLMap {
    /// Checks raw data and wraps it. The result is valid but not necessarily
    /// canonical.
    pub fn from_raw(raw: RawMap) -> Result<PLMap> {
        let violations = validate::validate(&raw);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(PLMap {
            orientation: raw.orientation,
            points: raw.points,
            left: TailSpec::new(raw.left.anchor, raw.left.period as u64, raw.left.amplitude),
            right: TailSpec::new(
                raw.right.anchor,
                raw.right.period as u64,
                raw.right.amplitude,
            ),
        })
    }

    pub fn to_raw(&self) -> RawMap {
        let tail = |t: &TailSpec| RawTail {
            anchor: t.anchor.clone(),
            period: t.period as i64,
            amplitude: t.amplitude,
        };
        RawMap {
            orientation: self.orientation,
            points: self.points.clone(),
            left: tail(&self.left),
            right: tail(&self.right),
        }
    }

    pub(crate) fn assemble(
        orientation: Orientation,
        points: Vec<Point>,
        left: TailSpec,
        right: TailSpec,
    ) -> PLMap {
        let map = PLMap {
            orientation,
            points,
            left,
            right,
        };
        debug_assert!(
            validate::validate(&map.to_raw()).is_empty(),
            "assembled an invalid map: {:?}",
            validate::validate(&map.to_raw())
        );
        map
    }

    /// `t -> 2^slope_log2 * t + offset`, negated first when `orientation` is
    /// reversing.
    pub fn affine(orientation: Orientation, slope_log2: i64, offset: Dyadic) -> PLMap {
        let period: u64 = 1u64
            .checked_shl(u32::try_from((-slope_log2).max(0)).expect("slope exponent too large"))
            .expect("slope exponent too large");
        let amplitude = Dyadic::from(period).shl(slope_log2);
        let amplitude = amplitude
            .to_i64()
            .expect("amplitude is an integer by construction")
            * orientation.sign();
        let f = |t: Dyadic| {
            let scaled = t.shl(slope_log2);
            let signed = if orientation == Orientation::Reversing {
                -scaled
            } else {
                scaled
            };
            signed + &offset
        };
        let p = Dyadic::from(period);
        let xs = [-&p, Dyadic::zero(), p.clone()];
        let points = xs
            .into_iter()
            .map(|x| Point::new(x.clone(), f(x)))
            .collect();
        PLMap::assemble(
            orientation,
            points,
            TailSpec::new(Dyadic::zero(), period, amplitude),
            TailSpec::new(Dyadic::zero(), period, amplitude),
        )
    }

    pub fn identity() -> PLMap {
        PLMap::affine(Orientation::Preserving, 0, Dyadic::zero())
    }

    /// `t -> t + c`.
    pub fn translation(c: i64) -> PLMap {
        PLMap::affine(Orientation::Preserving, 0, Dyadic::from(c))
    }

    /// `t -> -t`.
    pub fn reflection() -> PLMap {
        PLMap::affine(Orientation::Reversing, 0, Dyadic::zero())
    }

    /// `t -> 2^j * t`.
    pub fn dilation(j: i64) -> PLMap {
        PLMap::affine(Orientation::Preserving, j, Dyadic::zero())
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn left(&self) -> &TailSpec {
        &self.left
    }

    pub fn right(&self) -> &TailSpec {
        &self.right
    }

    /// Stored points on `[A_r, A_r + p_r]`.
    pub fn right_window(&self) -> &[Point] {
        let start = self.index_of(&self.right.anchor);
        &self.points[start..]
    }

    /// Stored points on `[A_l - p_l, A_l]`.
    pub fn left_window(&self) -> &[Point] {
        let end = self.index_of(&self.left.anchor);
        &self.points[..=end]
    }

    fn index_of(&self, x: &Dyadic) -> usize {
        self.points
            .binary_search_by(|p| p.x.cmp(x))
            .expect("anchors are stored vertices")
    }

    pub fn is_identity(&self) -> bool {
        self.canonicalize() == PLMap::identity()
    }

    /// Exact value at a dyadic point.
    pub fn evaluate(&self, t: &Dyadic) -> Dyadic {
        let r = &self.right;
        let l = &self.left;
        if t >= &r.anchor {
            let k = (t - &r.anchor).div_floor_int(r.period);
            if k.is_zero() {
                return self.eval_stored(t);
            }
            let s = t - Dyadic::from(&k * BigInt::from(r.period));
            self.eval_stored(&s) + Dyadic::from(k * BigInt::from(r.amplitude))
        } else if t <= &l.anchor {
            let k = (&l.anchor - t).div_floor_int(l.period);
            if k.is_zero() {
                return self.eval_stored(t);
            }
            let s = t + Dyadic::from(&k * BigInt::from(l.period));
            self.eval_stored(&s) - Dyadic::from(k * BigInt::from(l.amplitude))
        } else {
            self.eval_stored(t)
        }
    }

    fn eval_stored(&self, s: &Dyadic) -> Dyadic {
        let i = self.points.partition_point(|p| &p.x <= s);
        assert!(i > 0, "point {s} lies left of the stored range");
        let p0 = &self.points[i - 1];
        if &p0.x == s {
            return p0.y.clone();
        }
        let p1 = self
            .points
            .get(i)
            .unwrap_or_else(|| panic!("point {s} lies right of the stored range"));
        interpolate(p0, p1, s)
    }

    /// `(sign, log2 |slope|)` of every stored segment.
    pub fn slopes(&self) -> Vec<(i32, i64)> {
        self.points
            .windows(2)
            .map(|w| segment_slope(&w[0], &w[1]))
            .collect()
    }

    /// All vertices of the unfolded map with `lo <= x <= hi`, sorted.
    pub fn vertices_in(&self, lo: &Dyadic, hi: &Dyadic) -> Vec<Dyadic> {
        let mut out = Vec::new();
        if lo > hi {
            return out;
        }
        let (al, ar) = (&self.left.anchor, &self.right.anchor);
        for p in &self.points {
            if &p.x >= al && &p.x <= ar && &p.x >= lo && &p.x <= hi {
                out.push(p.x.clone());
            }
        }

        if hi >= ar {
            let period = Dyadic::from(self.right.period);
            let window: Vec<&Dyadic> = self
                .right_window()
                .iter()
                .map(|p| &p.x)
                .take(self.right_window().len() - 1)
                .collect();
            let k0 = if lo > ar {
                (lo - ar).div_floor_int(self.right.period)
            } else {
                BigInt::zero()
            };
            let mut base = ar + Dyadic::from(k0 * BigInt::from(self.right.period));
            while &base <= hi {
                let offset = &base - ar;
                for w in &window {
                    let x = *w + &offset;
                    if &x >= lo && &x <= hi {
                        out.push(x);
                    }
                }
                base = base + &period;
            }
        }

        if lo <= al {
            let period = Dyadic::from(self.left.period);
            let window: Vec<&Dyadic> = self.left_window().iter().skip(1).map(|p| &p.x).collect();
            let k0 = if hi < al {
                (al - hi).div_floor_int(self.left.period)
            } else {
                BigInt::zero()
            };
            let mut base = al - Dyadic::from(k0 * BigInt::from(self.left.period));
            while &base >= lo {
                let offset = al - &base;
                for w in &window {
                    let x = *w - &offset;
                    if &x >= lo && &x <= hi {
                        out.push(x);
                    }
                }
                base = base - &period;
            }
        }

        out.sort();
        out.dedup();
        out
    }

    /// Builds a map from tail rules and sample abscissae. `eval` must be a
    /// function satisfying both rules; `xs` must contain every breakpoint of
    /// it inside the stored range.
    pub(crate) fn from_samples(
        orientation: Orientation,
        left: TailSpec,
        right: TailSpec,
        xs: Vec<Dyadic>,
        eval: impl Fn(&Dyadic) -> Dyadic,
    ) -> PLMap {
        let lo = &left.anchor - Dyadic::from(left.period);
        let hi = &right.anchor + Dyadic::from(right.period);
        let mut xs: Vec<Dyadic> = xs.into_iter().filter(|x| x >= &lo && x <= &hi).collect();
        xs.extend([lo, left.anchor.clone(), right.anchor.clone(), hi]);
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = eval(&x);
                Point::new(x, y)
            })
            .collect();
        PLMap::assemble(orientation, points, left, right)
    }

    /// The same function stored with periods multiplied by `k_left` and
    /// `k_right`. The result is valid but not canonical.
    pub fn inflate_periods(&self, k_left: u64, k_right: u64) -> PLMap {
        assert!(k_left > 0 && k_right > 0, "multipliers must be positive");
        let left = TailSpec::new(
            self.left.anchor.clone(),
            self.left
                .period
                .checked_mul(k_left)
                .expect("period overflow"),
            self.left
                .amplitude
                .checked_mul(k_left as i64)
                .expect("amplitude overflow"),
        );
        let right = TailSpec::new(
            self.right.anchor.clone(),
            self.right
                .period
                .checked_mul(k_right)
                .expect("period overflow"),
            self.right
                .amplitude
                .checked_mul(k_right as i64)
                .expect("amplitude overflow"),
        );
        self.resampled(left, right)
    }

    /// The same function stored with anchors moved outward to `lo` and `hi`.
    pub fn with_anchors(&self, lo: Dyadic, hi: Dyadic) -> Result<PLMap> {
        if lo > self.left.anchor || hi < self.right.anchor {
            return Err(Error::InvalidArgument(
                "anchors can only move outward".to_string(),
            ));
        }
        let left = TailSpec::new(lo, self.left.period, self.left.amplitude);
        let right = TailSpec::new(hi, self.right.period, self.right.amplitude);
        Ok(self.resampled(left, right))
    }

    fn resampled(&self, left: TailSpec, right: TailSpec) -> PLMap {
        let lo = &left.anchor - Dyadic::from(left.period);
        let hi = &right.anchor + Dyadic::from(right.period);
        let xs = self.vertices_in(&lo, &hi);
        PLMap::from_samples(self.orientation, left, right, xs, |x| self.evaluate(x))
    }
}

pub(crate) fn segment_slope(p0: &Point, p1: &Point) -> (i32, i64) {
    Dyadic::power_of_two_ratio(&(&p1.y - &p0.y), &(&p1.x - &p0.x))
        .expect("stored segments have power-of-two slopes")
}

fn interpolate(p0: &Point, p1: &Point, s: &Dyadic) -> Dyadic {
    let (sign, exp) = segment_slope(p0, p1);
    let rise = (s - &p0.x).shl(exp);
    if sign < 0 {
        &p0.y - rise
    } else {
        &p0.y + rise
    }
}
