//! Commensurations of `F` as eventually periodically affine maps.
//!
//! A map `c` with minimal tail rules `c(t + p) = c(t) + q` (right) and
//! `c(t + p') = c(t) + q'` (left) conjugates every element of the subgroup
//! [`domain_lattice`] into `F`, landing exactly on [`image_lattice`].
//!
//! Two pair conventions meet here. Lattice slots are `(left, right)`, the
//! order of [`AbelianImage`](crate::AbelianImage). The growth-rate
//! homomorphism [`phi`] reports `(right, left)`, i.e. `(p/q, p'/q')`.

use std::fmt;
use std::ops::Mul;

use crate::dyadic::{Dyadic, PosRational};
use crate::error::{Error, Result};
use crate::plmap::compose::{compose, conjugate_by};
use crate::plmap::{Orientation, PLMap, Point, RawMap, RawTail};
use crate::thompson::Lattice;

/// A canonical map together with its minimal tail data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commensuration {
    map: PLMap,
    right: (u64, i64),
    left: (u64, i64),
}

impl Commensuration {
    pub fn map(&self) -> &PLMap {
        &self.map
    }

    pub fn into_map(self) -> PLMap {
        self.map
    }

    /// Minimal right rule `(p, q)`; `q < 0` when orientation reversing.
    pub fn right(&self) -> (u64, i64) {
        self.right
    }

    /// Minimal left rule `(p', q')`.
    pub fn left(&self) -> (u64, i64) {
        self.left
    }

    pub fn orientation(&self) -> Orientation {
        self.map.orientation()
    }

    pub fn invert(&self) -> Commensuration {
        classify(&self.map.invert())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Commensuration) -> Commensuration {
        classify(&compose(&self.map, &other.map))
    }
}

impl From<PLMap> for Commensuration {
    fn from(f: PLMap) -> Self {
        classify(&f)
    }
}

pub fn classify(f: &PLMap) -> Commensuration {
    let map = f.canonicalize();
    Commensuration {
        right: map.right().rule(),
        left: map.left().rule(),
        map,
    }
}

/// End growth rates `(p/q, p'/q')`: right end first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhiValue {
    pub right_ratio: PosRational,
    pub left_ratio: PosRational,
}

impl Mul for PhiValue {
    type Output = PhiValue;
    fn mul(self, rhs: PhiValue) -> PhiValue {
        PhiValue {
            right_ratio: self.right_ratio * rhs.right_ratio,
            left_ratio: self.left_ratio * rhs.left_ratio,
        }
    }
}

impl fmt::Display for PhiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.right_ratio, self.left_ratio)
    }
}

pub fn phi(c: &Commensuration) -> Result<PhiValue> {
    if c.orientation() == Orientation::Reversing {
        return Err(Error::OrientationReversing);
    }
    let ratio = |(p, q): (u64, i64)| PosRational::new(p, q as u64).expect("positive tail data");
    Ok(PhiValue {
        right_ratio: ratio(c.right),
        left_ratio: ratio(c.left),
    })
}

/// The subgroup `[p', p]` (slots `(left, right)`) that `c` conjugates into `F`.
///
/// The same for both orientations: the left end of `f` needs a multiple of
/// the left period `p'` of `c` and its right end a multiple of `p`, wherever
/// `c` sends those ends.
pub fn domain_lattice(c: &Commensuration) -> Lattice {
    Lattice::product(c.left.0 as i64, c.right.0 as i64).expect("periods are positive")
}

/// The image of [`domain_lattice`]: `[|q'|, |q|]`, or `[|q|, |q'|]` when `c`
/// swaps the ends.
pub fn image_lattice(c: &Commensuration) -> Lattice {
    let (q, qq) = (c.right.1.abs(), c.left.1.abs());
    match c.orientation() {
        Orientation::Preserving => Lattice::product(qq, q),
        Orientation::Reversing => Lattice::product(q, qq),
    }
    .expect("amplitudes are nonzero")
}

/// `c ∘ f ∘ c⁻¹`.
pub fn conjugate(c: &Commensuration, f: &PLMap) -> PLMap {
    conjugate_by(&c.map, f)
}

/// Vertices of a PL map `[0, a] -> [0, b]` with at most two pieces.
///
/// With `s` least such that `a * 2^s >= b`, the slope is `2^s` on `[0, d1]`
/// and `2^(s-1)` on `[d1, a]`, where `d1 = b / 2^(s-1) - a`.
pub fn staircase(a: &Dyadic, b: &Dyadic) -> Result<Vec<Point>> {
    if a.signum() <= 0 || b.signum() <= 0 {
        return Err(Error::InvalidArgument(
            "staircase needs positive endpoints".into(),
        ));
    }
    let origin = Point::new(Dyadic::zero(), Dyadic::zero());
    let end = Point::new(a.clone(), b.clone());
    if Dyadic::power_of_two_ratio(b, a).is_some() {
        return Ok(vec![origin, end]);
    }
    let mut s: i64 = b.exponent() - a.exponent();
    while &a.shl(s) < b {
        s += 1;
    }
    while &a.shl(s - 1) >= b {
        s -= 1;
    }
    let d1 = b.shl(1 - s) - a;
    let y1 = d1.shl(s);
    Ok(vec![origin, Point::new(d1, y1), end])
}

/// The standard map with right rule `(p, q)` and left rule `(p', q')`: fixes
/// 0, is `staircase(p, q)` on `[0, p]` and the odd reflection of
/// `staircase(p', q')` on `[-p', 0]`. For `Reversing` it is followed by
/// `t -> -t`.
pub fn make_commensuration(
    p: u64,
    q: u64,
    pp: u64,
    qq: u64,
    orientation: Orientation,
) -> Result<Commensuration> {
    if [p, q, pp, qq].contains(&0) {
        return Err(Error::InvalidArgument(
            "periods and amplitudes must be positive".into(),
        ));
    }
    let narrow =
        |v: u64| i64::try_from(v).map_err(|_| Error::InvalidArgument("period overflow".into()));
    let right = staircase(&Dyadic::from(p), &Dyadic::from(q))?;
    let left = staircase(&Dyadic::from(pp), &Dyadic::from(qq))?;
    let mut points: Vec<Point> = left[1..]
        .iter()
        .rev()
        .map(|pt| Point::new(-&pt.x, -&pt.y))
        .collect();
    points.extend(right);
    let raw = RawMap {
        orientation: Orientation::Preserving,
        points,
        left: RawTail {
            anchor: Dyadic::zero(),
            period: narrow(pp)?,
            amplitude: narrow(qq)?,
        },
        right: RawTail {
            anchor: Dyadic::zero(),
            period: narrow(p)?,
            amplitude: narrow(q)?,
        },
    };
    let m = PLMap::from_raw(raw)?;
    Ok(match orientation {
        Orientation::Preserving => classify(&m),
        Orientation::Reversing => classify(&compose(&PLMap::reflection(), &m)),
    })
}

/// Same commensuration class, which for these maps is equality as functions.
pub fn equivalent(c1: &Commensuration, c2: &Commensuration) -> bool {
    c1.map.equals(&c2.map).is_equal()
}
