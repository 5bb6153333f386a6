//! Composition, inversion and semantic equality.

use num_integer::Integer;

use crate::dyadic::Dyadic;

use super::{Equality, Orientation, PLMap, Point, TailSpec};

/// Tail rule of `g ∘ f` at one end of `f`, given the rule `(p_f, q_f)` of
/// that end of `f` and the rule `(p_g, q_g)` of the end of `g` that `f`
/// runs into.
///
/// With `d = gcd(|q_f|, p_g)`, advancing `p_g / d` periods of `f` moves the
/// image by `|q_f| / d` periods of `g`.
pub(crate) fn tail_through(f_rule: (u64, i64), g_rule: (u64, i64)) -> (u64, i64) {
    let (pf, qf) = f_rule;
    let (pg, qg) = g_rule;
    let a = qf.unsigned_abs();
    let d = a.gcd(&pg);
    let n = pg / d;
    let m = (a / d) as i64;
    let period = pf.checked_mul(n).expect("period overflow");
    let amplitude = qf
        .signum()
        .checked_mul(m)
        .and_then(|v| v.checked_mul(qg))
        .expect("amplitude overflow");
    (period, amplitude)
}

impl PLMap {
    /// `g ∘ self`, i.e. apply `self` first.
    pub fn then(&self, g: &PLMap) -> PLMap {
        compose(g, self)
    }

    /// The inverse map, canonical.
    pub fn invert(&self) -> PLMap {
        self.invert_raw().canonicalize()
    }

    /// Inverse with the tails read straight off this encoding.
    pub(crate) fn invert_raw(&self) -> PLMap {
        let fa_l = self.evaluate(&self.left.anchor);
        let fa_r = self.evaluate(&self.right.anchor);
        let swapped = self
            .points
            .iter()
            .map(|p| Point::new(p.y.clone(), p.x.clone()));
        let (p_l, q_l) = self.left.rule();
        let (p_r, q_r) = self.right.rule();
        match self.orientation {
            Orientation::Preserving => PLMap::assemble(
                self.orientation,
                swapped.collect(),
                TailSpec::new(fa_l, q_l as u64, p_l as i64),
                TailSpec::new(fa_r, q_r as u64, p_r as i64),
            ),
            Orientation::Reversing => PLMap::assemble(
                self.orientation,
                swapped.rev().collect(),
                TailSpec::new(fa_r, q_r.unsigned_abs(), -(p_r as i64)),
                TailSpec::new(fa_l, q_l.unsigned_abs(), -(p_l as i64)),
            ),
        }
    }

    /// Decides equality as functions. On inequality returns a dyadic point
    /// where the maps differ: the candidate of least absolute value, positive
    /// before negative.
    pub fn equals(&self, other: &PLMap) -> Equality {
        let f = self.canonicalize();
        let g = other.canonicalize();
        if f == g {
            return Equality::Equal;
        }
        // Beyond both anchors, agreement over p_f * p_g forces agreement on
        // the whole tail, and disagreement shows up at a vertex or an end.
        let span = |a: u64, b: u64| Dyadic::from(a.checked_mul(b).expect("period overflow"));
        let lo =
            f.left.anchor.clone().min(g.left.anchor.clone()) - span(f.left.period, g.left.period);
        let hi = f.right.anchor.clone().max(g.right.anchor.clone())
            + span(f.right.period, g.right.period);
        let mut xs = f.vertices_in(&lo, &hi);
        xs.extend(g.vertices_in(&lo, &hi));
        xs.extend([lo, hi, Dyadic::zero()]);
        xs.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.signum().cmp(&a.signum())));
        xs.dedup();
        let witness = xs
            .into_iter()
            .find(|t| f.evaluate(t) != g.evaluate(t))
            .expect("distinct canonical maps differ at a vertex");
        Equality::Witness(witness)
    }
}

/// `g ∘ f`: the map `t -> g(f(t))`, canonical.
pub fn compose(g: &PLMap, f: &PLMap) -> PLMap {
    let finv = f.invert_raw();
    let rising = f.orientation == Orientation::Preserving;
    // The end of g that each end of f runs into.
    let (g_for_right, g_for_left) = if rising {
        (&g.right, &g.left)
    } else {
        (&g.left, &g.right)
    };
    let (pr, qr) = tail_through(f.right.rule(), g_for_right.rule());
    let (pl, ql) = tail_through(f.left.rule(), g_for_left.rule());

    // Right rule of g ∘ f holds once t is past f's anchor and f(t) is past the
    // relevant anchor of g; likewise on the left.
    let ar = f
        .right
        .anchor
        .clone()
        .max(finv.evaluate(&g_for_right.anchor));
    let mut al = f.left.anchor.clone().min(finv.evaluate(&g_for_left.anchor));
    if al > ar {
        al = ar.clone();
    }

    let lo = &al - Dyadic::from(pl);
    let hi = &ar + Dyadic::from(pr);
    let mut xs = f.vertices_in(&lo, &hi);
    let (ylo, yhi) = {
        let (a, b) = (f.evaluate(&lo), f.evaluate(&hi));
        if rising {
            (a, b)
        } else {
            (b, a)
        }
    };
    xs.extend(g.vertices_in(&ylo, &yhi).iter().map(|y| finv.evaluate(y)));

    let h = PLMap::from_samples(
        f.orientation * g.orientation,
        TailSpec::new(al, pl, ql),
        TailSpec::new(ar, pr, qr),
        xs,
        |x| g.evaluate(&f.evaluate(x)),
    );
    h.canonicalize()
}

/// `g ∘ f ∘ g⁻¹`.
pub fn conjugate_by(g: &PLMap, f: &PLMap) -> PLMap {
    compose(g, &compose(f, &g.invert()))
}
