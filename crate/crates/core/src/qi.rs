//! Displaced dyadic intervals and disjoint-support witnesses.
//!
//! Every nontrivial `tau` moves some standard dyadic interval `I` onto a
//! standard dyadic interval `J` disjoint from it. Conjugating an element `f`
//! supported in `I` by `tau` then gives `f^tau f⁻¹`, supported in `I ∪ J`
//! and nontrivial whenever `f` is.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::plmap::compose::{compose, conjugate_by};
use crate::plmap::{DyadicInterval, Orientation, PLMap, Point};

/// The interval `[k/2^j, (k+1)/2^j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitDyadicInterval {
    pub k: i64,
    pub j: u32,
}

impl UnitDyadicInterval {
    pub fn new(k: i64, j: u32) -> Self {
        Self { k, j }
    }

    pub fn lo(&self) -> Dyadic {
        Dyadic::new(self.k, -(self.j as i64))
    }

    pub fn hi(&self) -> Dyadic {
        Dyadic::new(self.k + 1, -(self.j as i64))
    }

    pub fn interval(&self) -> DyadicInterval {
        DyadicInterval::new(self.lo(), self.hi()).expect("lo < hi")
    }

    /// The unit interval `[lo, hi]` if it is one.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic) -> Option<Self> {
        let len = hi - lo;
        let (sign, e) = Dyadic::power_of_two_ratio(&len, &Dyadic::one())?;
        if sign < 0 || e > 0 {
            return None;
        }
        let j = u32::try_from(-e).ok()?;
        let k = lo.shl(j as i64).to_i64()?;
        lo.shl(j as i64).is_integer().then_some(Self::new(k, j))
    }
}

impl fmt::Display for UnitDyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo(), self.hi())
    }
}

/// Intervals `I`, `J` with `tau(I) = J` and `I ∩ J = ∅` (closed).
///
/// The choice is deterministic. Maps of slope `±1` are handled directly.
/// Otherwise the first segment of slope `±2^i`, `i > 0`, met scanning from
/// the left anchor through the right window and then the left window,
/// supplies a domain `[a, b]` and image `[c, d]`. `J` is the unit interval in
/// `[c, d]` missing `[a, b]` with least `j`, then least `|k|`, then least `k`,
/// whose preimage is again a unit interval. A map with no such segment is
/// handled through its inverse.
pub fn disjoint_intervals(tau: &PLMap) -> Result<(UnitDyadicInterval, UnitDyadicInterval)> {
    let c = tau.canonicalize();
    if c.is_identity() {
        return Err(Error::IdentityInput);
    }
    if c.slopes().iter().all(|&(_, e)| e == 0) {
        return Ok(isometry_case(&c));
    }
    if let Some(pair) = expanding_case(&c) {
        return Ok(pair);
    }
    let (i, j) = expanding_case(&c.invert()).expect("the inverse of a contraction expands");
    Ok((j, i))
}

fn isometry_case(c: &PLMap) -> (UnitDyadicInterval, UnitDyadicInterval) {
    let m = c.evaluate(&Dyadic::zero());
    let j0 = m.denominator_log2() as u32;
    match c.orientation() {
        Orientation::Preserving => {
            let mut j = j0;
            while Dyadic::pow2(-(j as i64)) >= m.abs() {
                j += 1;
            }
            let i = UnitDyadicInterval::new(0, j);
            let k = m.shl(j as i64).to_i64().expect("translation fits in i64");
            (i, UnitDyadicInterval::new(k, j))
        }
        Orientation::Reversing => {
            // t -> m - t, so J = [m - (k+1)/2^j, m - k/2^j].
            let mj = m.shl(j0 as i64).to_i64().expect("offset fits in i64");
            for n in 0i64.. {
                for k in [-n, n] {
                    let i = UnitDyadicInterval::new(k, j0);
                    let jj = UnitDyadicInterval::new(mj - k - 1, j0);
                    if i.hi() < jj.lo() || jj.hi() < i.lo() {
                        return (i, jj);
                    }
                }
            }
            unreachable!()
        }
    }
}

fn expanding_case(c: &PLMap) -> Option<(UnitDyadicInterval, UnitDyadicInterval)> {
    let pts: &[Point] = c.points();
    let slopes = c.slopes();
    let first_core = pts
        .iter()
        .position(|p| p.x == c.left().anchor)
        .expect("anchor is a vertex");
    let order = (first_core..slopes.len()).chain(0..first_core);
    order
        .filter(|&s| slopes[s].1 > 0)
        .find_map(|s| inside_segment(&pts[s], &pts[s + 1], slopes[s]))
}

/// Search one segment `[a, b] -> [c, d]` of slope `sign * 2^i`.
fn inside_segment(
    p0: &Point,
    p1: &Point,
    (sign, i): (i32, i64),
) -> Option<(UnitDyadicInterval, UnitDyadicInterval)> {
    let (a, b) = (&p0.x, &p1.x);
    let (c, d) = if sign > 0 {
        (&p0.y, &p1.y)
    } else {
        (&p1.y, &p0.y)
    };
    let width = d - c;
    let mut j: u32 = 0;
    // d - c = 2^i (b - a) > b - a, so a unit interval fits once 2^-j is small
    // against the part of [c, d] outside [a, b].
    loop {
        if Dyadic::pow2(-(j as i64)) <= width {
            let scale = j as i64;
            let k_lo = ceil(&c.shl(scale));
            let k_hi = d.shl(scale).floor() - 1;
            let mut ks: Vec<BigInt> = Vec::new();
            let mut k = k_lo.clone();
            while k <= k_hi {
                ks.push(k.clone());
                k += 1;
            }
            ks.sort_by(|x, y| {
                let (ax, ay) = (x.magnitude(), y.magnitude());
                ax.cmp(ay).then(x.cmp(y))
            });
            for k in ks {
                let Some(k) = k.to_i64() else { continue };
                let jj = UnitDyadicInterval::new(k, j);
                if !(jj.hi() < *a || jj.lo() > *b) {
                    continue;
                }
                let back = |y: &Dyadic| {
                    if sign > 0 {
                        a + &(y - c).shl(-i)
                    } else {
                        a + &(d - y).shl(-i)
                    }
                };
                let (u, v) = if sign > 0 {
                    (back(&jj.lo()), back(&jj.hi()))
                } else {
                    (back(&jj.hi()), back(&jj.lo()))
                };
                if let Some(ii) = UnitDyadicInterval::from_endpoints(&u, &v) {
                    return Some((ii, jj));
                }
            }
        }
        j += 1;
        if j > 256 + i as u32 {
            return None;
        }
    }
}

fn ceil(x: &Dyadic) -> BigInt {
    -(-x).floor()
}

/// Every support component of `f` lies in `interval`.
pub fn supported_in(f: &PLMap, interval: &DyadicInterval) -> bool {
    f.supported_in(interval)
}

/// `A ∘ f ∘ A⁻¹` with `A(t) = (t + k) / 2^j`, which carries `[0, 1]` onto `I`.
pub fn transplant(f: &PLMap, target: UnitDyadicInterval) -> Result<PLMap> {
    let unit = DyadicInterval::new(Dyadic::zero(), Dyadic::one()).expect("0 < 1");
    if !f.supported_in(&unit) {
        return Err(Error::SupportTooLarge);
    }
    let a = PLMap::affine(Orientation::Preserving, -(target.j as i64), target.lo());
    Ok(conjugate_by(&a, f))
}

/// `g = (tau f tau⁻¹) ∘ f⁻¹`, supported in `I ∪ J` where
/// `(I, J) = disjoint_intervals(tau)` and `f` is supported in `I`.
pub fn disjoint_support_witness(tau: &PLMap, f: &PLMap) -> Result<PLMap> {
    let (i, _) = disjoint_intervals(tau)?;
    if !f.supported_in(&i.interval()) {
        return Err(Error::NotSupportedIn(i.to_string()));
    }
    Ok(compose(&conjugate_by(tau, f), &f.invert()))
}
