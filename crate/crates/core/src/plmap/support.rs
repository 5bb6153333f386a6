//! Support of a map: the open set where `f(t) != t`.
//!
//! Fixed points of a segment with slope `2^a != 1` sit at
//! `x0 - d0 / (2^a - 1)`, which is rarely dyadic, so component endpoints are
//! exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::Dyadic;

use super::{DyadicInterval, Orientation, PLMap};

/// An open interval; `None` marks an infinite end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub lo: Option<BigRational>,
    pub hi: Option<BigRational>,
}

impl Component {
    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.as_ref().map_or("-inf".to_string(), format_rational);
        let hi = self.hi.as_ref().map_or("+inf".to_string(), format_rational);
        write!(f, "({lo}, {hi})")
    }
}

/// How the support behaves past the listed components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum End {
    /// The map is eventually the identity.
    Fixed,
    /// The outermost component is an unbounded ray.
    Ray,
    /// The components inside `[start, start + period]` repeat outward with
    /// every multiple of `period`.
    Periodic { start: BigRational, period: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub components: Vec<Component>,
    pub left: End,
    pub right: End,
}

impl Support {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty() && self.left == End::Fixed && self.right == End::Fixed
    }

    pub fn bounded(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.is_bounded())
    }

    /// Start of the right ray, when there is one (`None` inside means the ray
    /// is the whole line).
    pub fn right_ray(&self) -> Option<Option<&BigRational>> {
        match self.right {
            End::Ray => self.components.last().map(|c| c.lo.as_ref()),
            _ => None,
        }
    }

    pub fn left_ray(&self) -> Option<Option<&BigRational>> {
        match self.left {
            End::Ray => self.components.first().map(|c| c.hi.as_ref()),
            _ => None,
        }
    }

    /// Whether the closure of the support lies in `[lo, hi]`.
    pub fn within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        self.left == End::Fixed
            && self.right == End::Fixed
            && self.components.iter().all(|c| match (&c.lo, &c.hi) {
                (Some(a), Some(b)) => a >= lo && b <= hi,
                _ => false,
            })
    }

    pub fn within_interval(&self, interval: &DyadicInterval) -> bool {
        self.within(&interval.lo().to_rational(), &interval.hi().to_rational())
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "empty");
        }
        for c in &self.components {
            writeln!(f, "{c}")?;
        }
        for (side, end) in [("left", &self.left), ("right", &self.right)] {
            if let End::Periodic { start, period } = end {
                writeln!(
                    f,
                    "{side} periodic from {} period {period}",
                    format_rational(start)
                )?;
            }
        }
        Ok(())
    }
}

/// Dyadic literal when the denominator is a power of two, `n/d` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    let d = r.denom();
    if d.is_one() {
        return r.numer().to_string();
    }
    let tz = d.trailing_zeros().unwrap_or(0);
    if (d >> tz).is_one() {
        format!("{}/2^{}", r.numer(), tz)
    } else {
        format!("{}/{}", r.numer(), d)
    }
}

impl PLMap {
    /// Maximal open intervals where the map moves points.
    pub fn support(&self) -> Support {
        match self.orientation {
            Orientation::Reversing => {
                let x = self.reversing_fixed_point();
                Support {
                    components: vec![
                        Component {
                            lo: None,
                            hi: Some(x.clone()),
                        },
                        Component {
                            lo: Some(x),
                            hi: None,
                        },
                    ],
                    left: End::Ray,
                    right: End::Ray,
                }
            }
            Orientation::Preserving => self.preserving_support(),
        }
    }

    /// Whether every support component lies inside `interval`.
    pub fn supported_in(&self, interval: &DyadicInterval) -> bool {
        self.support().within_interval(interval)
    }

    fn displacement(&self, t: &Dyadic) -> Dyadic {
        self.evaluate(t) - t
    }

    fn reversing_fixed_point(&self) -> BigRational {
        // f(t) - t strictly decreases; each tail period lowers it by p + |q|.
        let (pr, qr) = self.right.rule();
        let (pl, ql) = self.left.rule();
        let ar = &self.right.anchor;
        let al = &self.left.anchor;
        let (lo, hi) = {
            let d_r = self.displacement(ar);
            let d_l = self.displacement(al);
            if d_r.signum() > 0 {
                let step = pr + qr.unsigned_abs();
                let k = d_r.div_floor_int(step) + BigInt::one();
                let hi = ar + Dyadic::from(k * BigInt::from(pr));
                (ar.clone(), hi)
            } else if d_l.signum() < 0 {
                let step = pl + ql.unsigned_abs();
                let k = (-d_l).div_floor_int(step) + BigInt::one();
                let lo = al - Dyadic::from(k * BigInt::from(pl));
                (lo, al.clone())
            } else {
                (al.clone(), ar.clone())
            }
        };
        let mut xs = self.vertices_in(&lo, &hi);
        xs.push(lo);
        xs.push(hi);
        xs.sort();
        xs.dedup();
        let ds: Vec<Dyadic> = xs.iter().map(|x| self.displacement(x)).collect();
        for i in 0..xs.len() {
            if ds[i].is_zero() {
                return xs[i].to_rational();
            }
            if i + 1 < xs.len() && ds[i].signum() > 0 && ds[i + 1].signum() < 0 {
                return crossing(&xs[i], &ds[i], &xs[i + 1], &ds[i + 1]);
            }
        }
        unreachable!("orientation-reversing maps have exactly one fixed point")
    }

    fn preserving_support(&self) -> Support {
        let (hi, right) = self.right_end();
        let (lo, left) = self.left_end();
        let mut xs = self.vertices_in(&lo, &hi);
        xs.push(lo);
        xs.push(hi);
        xs.sort();
        xs.dedup();
        let ds: Vec<Dyadic> = xs.iter().map(|x| self.displacement(x)).collect();

        // Zero set of the displacement on [lo, hi] as closed blocks.
        let mut blocks: Vec<(BigRational, BigRational)> = Vec::new();
        let mut push = |a: BigRational, b: BigRational| {
            if let Some(last) = blocks.last_mut() {
                if a <= last.1 {
                    if b > last.1 {
                        last.1 = b;
                    }
                    return;
                }
            }
            blocks.push((a, b));
        };
        for i in 0..xs.len() {
            if ds[i].is_zero() {
                let x = xs[i].to_rational();
                push(x.clone(), x);
            }
            if i + 1 < xs.len() {
                let (d0, d1) = (&ds[i], &ds[i + 1]);
                if d0.is_zero() && d1.is_zero() {
                    push(xs[i].to_rational(), xs[i + 1].to_rational());
                } else if d0.signum() * d1.signum() < 0 {
                    let c = crossing(&xs[i], d0, &xs[i + 1], d1);
                    push(c.clone(), c);
                }
            }
        }

        // A periodic end is described by one repetition only.
        if let End::Periodic { start, period } = &right {
            let stop = start + BigRational::from_integer(BigInt::from(*period));
            blocks.retain(|b| b.0 <= stop);
        }
        if let End::Periodic { start, .. } = &left {
            blocks.retain(|b| &b.1 >= start);
        }

        let mut components = Vec::new();
        if blocks.is_empty() {
            debug_assert!(left == End::Ray && right == End::Ray);
            components.push(Component { lo: None, hi: None });
        } else {
            if left == End::Ray {
                components.push(Component {
                    lo: None,
                    hi: Some(blocks[0].0.clone()),
                });
            }
            for w in blocks.windows(2) {
                components.push(Component {
                    lo: Some(w[0].1.clone()),
                    hi: Some(w[1].0.clone()),
                });
            }
            if right == End::Ray {
                components.push(Component {
                    lo: Some(blocks[blocks.len() - 1].1.clone()),
                    hi: None,
                });
            }
        }
        Support {
            components,
            left,
            right,
        }
    }

    /// Upper end of the scan range and the behaviour past it.
    fn right_end(&self) -> (Dyadic, End) {
        let a = &self.right.anchor;
        let (p, q) = self.right.rule();
        let end = a + Dyadic::from(p);
        let (dmin, dmax) = self.window_displacement(a, &end);
        let drift = q - p as i64;
        if drift == 0 {
            if dmin.is_zero() && dmax.is_zero() {
                (end, End::Fixed)
            } else if dmin.signum() > 0 || dmax.signum() < 0 {
                (end, End::Ray)
            } else {
                let start = self.zeros_in(a, &end).remove(0);
                let stop = &start + BigRational::from_integer(BigInt::from(p));
                let hi = Dyadic::from(stop.ceil().to_integer());
                (hi, End::Periodic { start, period: p })
            }
        } else {
            // d(t + kp) = d(t) + k * drift, so zeros stop after K periods.
            let reach = if drift > 0 { -dmin } else { dmax };
            let k = if reach.signum() > 0 {
                reach.div_floor_int(drift.unsigned_abs())
            } else {
                BigInt::zero()
            };
            let hi = a + Dyadic::from((k + BigInt::one()) * BigInt::from(p));
            (hi, End::Ray)
        }
    }

    /// Lower end of the scan range and the behaviour past it.
    fn left_end(&self) -> (Dyadic, End) {
        let a = &self.left.anchor;
        let (p, q) = self.left.rule();
        let start = a - Dyadic::from(p);
        let (dmin, dmax) = self.window_displacement(&start, a);
        let drift = q - p as i64;
        if drift == 0 {
            if dmin.is_zero() && dmax.is_zero() {
                (start, End::Fixed)
            } else if dmin.signum() > 0 || dmax.signum() < 0 {
                (start, End::Ray)
            } else {
                let last = self
                    .zeros_in(&start, a)
                    .pop()
                    .expect("displacement vanishes");
                let period_start = &last - BigRational::from_integer(BigInt::from(p));
                let lo = Dyadic::from(period_start.floor().to_integer());
                (
                    lo,
                    End::Periodic {
                        start: period_start,
                        period: p,
                    },
                )
            }
        } else {
            // Moving left, d(t - kp) = d(t) - k * drift.
            let reach = if drift > 0 { dmax } else { -dmin };
            let k = if reach.signum() > 0 {
                reach.div_floor_int(drift.unsigned_abs())
            } else {
                BigInt::zero()
            };
            let lo = a - Dyadic::from((k + BigInt::one()) * BigInt::from(p));
            (lo, End::Ray)
        }
    }

    /// Min and max displacement over `[lo, hi]`.
    fn window_displacement(&self, lo: &Dyadic, hi: &Dyadic) -> (Dyadic, Dyadic) {
        let mut xs = self.vertices_in(lo, hi);
        xs.push(lo.clone());
        xs.push(hi.clone());
        let ds: Vec<Dyadic> = xs.iter().map(|x| self.displacement(x)).collect();
        let dmin = ds.iter().min().cloned().unwrap_or_default();
        let dmax = ds.iter().max().cloned().unwrap_or_default();
        (dmin, dmax)
    }

    fn zeros_in(&self, lo: &Dyadic, hi: &Dyadic) -> Vec<BigRational> {
        let mut xs = self.vertices_in(lo, hi);
        xs.push(lo.clone());
        xs.push(hi.clone());
        xs.sort();
        xs.dedup();
        let ds: Vec<Dyadic> = xs.iter().map(|x| self.displacement(x)).collect();
        let mut out = Vec::new();
        for i in 0..xs.len() {
            if ds[i].is_zero() {
                out.push(xs[i].to_rational());
            } else if i + 1 < xs.len() && ds[i].signum() * ds[i + 1].signum() < 0 {
                out.push(crossing(&xs[i], &ds[i], &xs[i + 1], &ds[i + 1]));
            }
        }
        out
    }
}

/// Zero of the line through `(x0, d0)` and `(x1, d1)`.
fn crossing(x0: &Dyadic, d0: &Dyadic, x1: &Dyadic, d1: &Dyadic) -> BigRational {
    let x0 = x0.to_rational();
    let x1 = x1.to_rational();
    let d0 = d0.to_rational();
    let d1 = d1.to_rational();
    &x0 + &d0 * (&x1 - &x0) / (&d0 - &d1)
}
