//! Canonical form: minimal tail periods, anchors pulled in as far as the tail
//! rules allow, and no collinear interior vertices.
//!
//! The valid `(period, amplitude)` pairs of one tail are exactly the
//! positive multiples of a minimal pair (two valid pairs combine to their
//! gcd by Bezout), so the minimal period is the least divisor `d` of the
//! stored period whose shift rule holds on one stored window.
//!
//! For the anchors, let `t_r` be the infimum of the points beyond which the
//! right rule holds and `t_l` the supremum of the points below which the left
//! rule holds (`-inf`/`+inf` when a rule holds everywhere). When
//! `t_r <= t_l` both anchors go to `t_r` if it is finite, else to `t_l` if
//! it is finite, else to 0. Otherwise `A_r = t_r`, `A_l = t_l`.

use crate::dyadic::Dyadic;

use super::{PLMap, Point, TailSpec};

impl PLMap {
    /// The canonical encoding of the same function. Idempotent.
    pub fn canonicalize(&self) -> PLMap {
        let (pr, qr) = self.minimal_right_rule();
        let (pl, ql) = self.minimal_left_rule();
        let t_r = self.right_rule_start(pr, qr, pl);
        let t_l = self.left_rule_end(pl, ql, pr);
        let (al, ar) = match (t_r, t_l) {
            (Some(tr), Some(tl)) if tr <= tl => (tr.clone(), tr),
            (Some(tr), Some(tl)) => (tl, tr),
            (Some(tr), None) => (tr.clone(), tr),
            (None, Some(tl)) => (tl.clone(), tl),
            (None, None) => (Dyadic::zero(), Dyadic::zero()),
        };
        let left = TailSpec::new(al, pl, ql);
        let right = TailSpec::new(ar, pr, qr);
        let lo = &left.anchor - Dyadic::from(pl);
        let hi = &right.anchor + Dyadic::from(pr);
        let xs = self.vertices_in(&lo, &hi);
        let mut out = PLMap::from_samples(self.orientation, left, right, xs, |x| self.evaluate(x));
        out.merge_collinear();
        out
    }

    pub fn is_canonical(&self) -> bool {
        &self.canonicalize() == self
    }

    fn minimal_right_rule(&self) -> (u64, i64) {
        let (p, q) = self.right.rule();
        let from = self.right.anchor.clone();
        let upto = &from + Dyadic::from(p);
        for d in divisors(p) {
            let Some(e) = scaled_amplitude(p, q, d) else {
                continue;
            };
            if d == p || self.shift_rule_holds(&from, &upto, d, e) {
                return (d, e);
            }
        }
        unreachable!("the stored period always qualifies")
    }

    fn minimal_left_rule(&self) -> (u64, i64) {
        let (p, q) = self.left.rule();
        let upto = self.left.anchor.clone();
        for d in divisors(p) {
            let Some(e) = scaled_amplitude(p, q, d) else {
                continue;
            };
            // f(t - d) = f(t) - e for t <= A_l  <=>  f(s + d) = f(s) + e for s <= A_l - d.
            let hi = &upto - Dyadic::from(d);
            let lo = &upto - Dyadic::from(p) - Dyadic::from(d);
            if d == p || self.shift_rule_holds(&lo, &hi, d, e) {
                return (d, e);
            }
        }
        unreachable!("the stored period always qualifies")
    }

    /// Whether `f(t + d) = f(t) + e` for every `t` in `[lo, hi]`.
    fn shift_rule_holds(&self, lo: &Dyadic, hi: &Dyadic, d: u64, e: i64) -> bool {
        let shift = Dyadic::from(d);
        let rise = Dyadic::from(e);
        let mut xs = self.vertices_in(lo, hi);
        xs.extend(
            self.vertices_in(&(lo + &shift), &(hi + &shift))
                .into_iter()
                .map(|x| x - &shift),
        );
        xs.push(lo.clone());
        xs.push(hi.clone());
        xs.iter()
            .all(|t| self.evaluate(&(t + &shift)) == self.evaluate(t) + &rise)
    }

    /// Infimum of the points beyond which `f(t + p) = f(t) + q` holds, or
    /// `None` when it holds on the whole line.
    fn right_rule_start(&self, p: u64, q: i64, p_left: u64) -> Option<Dyadic> {
        let shift = Dyadic::from(p);
        let rise = Dyadic::from(q);
        let anchor = &self.right.anchor;
        // Below A_l - p the defect f(t + p) - f(t) - q repeats with period
        // p_left, so one extra period settles the global case.
        let lo = &self.left.anchor - &shift - Dyadic::from(p_left);
        let mut xs = self.vertices_in(&lo, anchor);
        xs.extend(
            self.vertices_in(&(&lo + &shift), &(anchor + &shift))
                .into_iter()
                .map(|x| x - &shift),
        );
        xs.push(lo.clone());
        xs.retain(|x| x < anchor);
        xs.sort();
        xs.dedup();
        let mut prev = anchor.clone();
        for c in xs.into_iter().rev() {
            if self.evaluate(&(&c + &shift)) != self.evaluate(&c) + &rise {
                return Some(prev);
            }
            prev = c;
        }
        None
    }

    /// Supremum of the points below which `f(t - p) = f(t) - q` holds, or
    /// `None` when it holds on the whole line.
    fn left_rule_end(&self, p: u64, q: i64, p_right: u64) -> Option<Dyadic> {
        let shift = Dyadic::from(p);
        let rise = Dyadic::from(q);
        let anchor = &self.left.anchor;
        let hi = &self.right.anchor + &shift + Dyadic::from(p_right);
        let mut xs = self.vertices_in(anchor, &hi);
        xs.extend(
            self.vertices_in(&(anchor - &shift), &(&hi - &shift))
                .into_iter()
                .map(|x| x + &shift),
        );
        xs.push(hi.clone());
        xs.retain(|x| x > anchor);
        xs.sort();
        xs.dedup();
        let mut prev = anchor.clone();
        for c in xs {
            if self.evaluate(&(&c - &shift)) != self.evaluate(&c) - &rise {
                return Some(prev);
            }
            prev = c;
        }
        None
    }

    /// Drops vertices where the slope does not change, keeping the window
    /// endpoints and anchors.
    pub(crate) fn merge_collinear(&mut self) {
        let lo = &self.left.anchor - Dyadic::from(self.left.period);
        let hi = &self.right.anchor + Dyadic::from(self.right.period);
        let keep =
            |x: &Dyadic| x == &lo || x == &hi || x == &self.left.anchor || x == &self.right.anchor;
        let mut out: Vec<Point> = Vec::with_capacity(self.points.len());
        for p in self.points.drain(..) {
            while out.len() >= 2 {
                let b = &out[out.len() - 1];
                let a = &out[out.len() - 2];
                if keep(&b.x) || !collinear(a, b, &p) {
                    break;
                }
                out.pop();
            }
            out.push(p);
        }
        self.points = out;
    }
}

fn collinear(a: &Point, b: &Point, c: &Point) -> bool {
    (&b.y - &a.y) * (&c.x - &b.x) == (&c.y - &b.y) * (&b.x - &a.x)
}

/// `q * d / p` when it is an integer.
fn scaled_amplitude(p: u64, q: i64, d: u64) -> Option<i64> {
    let num = q as i128 * d as i128;
    if num % p as i128 == 0 {
        Some((num / p as i128) as i64)
    } else {
        None
    }
}

/// Positive divisors in increasing order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
