//! Thompson's group `F` inside the commensurator.
//!
//! `F` is the set of orientation-preserving maps that are eventually
//! integral translations: `f(t) = t + l` far left and `f(t) = t + r` far
//! right. The pair `(l, r)` is the abelianization `F -> Z x Z`, and every
//! finite-index subgroup of `F` contains `F'` (the eventually trivial maps),
//! so finite-index subgroups of `F` correspond to finite-index subgroups of
//! `Z x Z`. Those are represented by [`Lattice`].
//!
//! Slot convention: in a lattice point `(l, r)` and in the product subgroup
//! `[a, b] = aZ x bZ`, the first slot is the left end and the second the
//! right end.

use std::fmt;
use std::ops::Add;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::plmap::{Orientation, PLMap};

/// Image of an element of `F` in `Z x Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianImage {
    pub l: i64,
    pub r: i64,
}

impl AbelianImage {
    pub fn new(l: i64, r: i64) -> Self {
        Self { l, r }
    }
}

impl Add for AbelianImage {
    type Output = AbelianImage;
    fn add(self, rhs: AbelianImage) -> AbelianImage {
        AbelianImage::new(self.l + rhs.l, self.r + rhs.r)
    }
}

impl fmt::Display for AbelianImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.l, self.r)
    }
}

/// Eventually integrally affine and orientation preserving.
pub fn is_in_f(f: &PLMap) -> bool {
    let c = f.canonicalize();
    if c.orientation() != Orientation::Preserving {
        return false;
    }
    let integral_translation = |window_len: usize, rule: (u64, i64), anchor: &crate::Dyadic| {
        window_len == 2 && rule == (1, 1) && (c.evaluate(anchor) - anchor).is_integer()
    };
    integral_translation(c.left_window().len(), c.left().rule(), &c.left().anchor)
        && integral_translation(c.right_window().len(), c.right().rule(), &c.right().anchor)
}

/// Identity outside a bounded set.
pub fn is_in_f_prime(f: &PLMap) -> bool {
    matches!(abelianize(f), Ok(AbelianImage { l: 0, r: 0 }))
}

/// `(l, r)` with `f(t) = t + l` for `t << 0` and `f(t) = t + r` for `t >> 0`.
pub fn abelianize(f: &PLMap) -> Result<AbelianImage> {
    if !is_in_f(f) {
        return Err(Error::NotInF);
    }
    let c = f.canonicalize();
    let offset = |a: &crate::Dyadic| {
        (c.evaluate(a) - a)
            .to_i64()
            .expect("translation amount fits in i64")
    };
    Ok(AbelianImage::new(
        offset(&c.left().anchor),
        offset(&c.right().anchor),
    ))
}

/// `x0 = t + 1` and `x1`, whose abelianizations `(1, 1)` and `(0, 1)`
/// generate `Z x Z`.
pub fn generators() -> (PLMap, PLMap) {
    (fixtures::x0(), fixtures::x1())
}

/// A finite-index subgroup of `Z x Z`.
///
/// Stored in Hermite form: generated by the columns `(a, b)` and `(0, d)`
/// with `a > 0`, `d > 0` and `0 <= b < d`. The form is unique per subgroup,
/// so derived equality is subgroup equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    a: i64,
    b: i64,
    d: i64,
}

impl Lattice {
    /// The whole group, i.e. all of `F`.
    pub fn full() -> Self {
        Lattice { a: 1, b: 0, d: 1 }
    }

    /// `pZ x qZ`, written `[p, q]`.
    pub fn product(p: i64, q: i64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Singular);
        }
        Ok(Lattice {
            a: p.abs(),
            b: 0,
            d: q.abs(),
        })
    }

    /// Subgroup generated by the columns of a row-major 2x2 matrix.
    pub fn from_basis(rows: [[i64; 2]; 2]) -> Result<Self> {
        Lattice::from_generators(&[(rows[0][0], rows[1][0]), (rows[0][1], rows[1][1])])
    }

    /// Subgroup generated by any list of vectors `(l, r)`.
    pub fn from_generators(gens: &[(i64, i64)]) -> Result<Self> {
        let mut vs: Vec<(i128, i128)> = gens
            .iter()
            .map(|&(x, y)| (x as i128, y as i128))
            .filter(|&v| v != (0, 0))
            .collect();
        // Euclid on the first coordinates until one pivot remains.
        let pivot = loop {
            let Some(p) = vs
                .iter()
                .enumerate()
                .filter(|(_, v)| v.0 != 0)
                .min_by_key(|(_, v)| v.0.abs())
                .map(|(i, _)| i)
            else {
                return Err(Error::Singular);
            };
            let (px, py) = vs[p];
            let mut done = true;
            for (i, v) in vs.iter_mut().enumerate() {
                if i != p && v.0 != 0 {
                    let k = v.0 / px;
                    *v = (v.0 - k * px, v.1 - k * py);
                    if v.0 != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break vs.swap_remove(p);
            }
        };
        let d = vs.iter().fold(0i128, |g, v| g.gcd(&v.1));
        if d == 0 {
            return Err(Error::Singular);
        }
        let (mut a, mut b) = pivot;
        if a < 0 {
            a = -a;
            b = -b;
        }
        let b = b.rem_euclid(d);
        let narrow = |v: i128| {
            i64::try_from(v).map_err(|_| Error::InvalidArgument("lattice entry overflow".into()))
        };
        Ok(Lattice {
            a: narrow(a)?,
            b: narrow(b)?,
            d: narrow(d)?,
        })
    }

    /// Row-major Hermite basis: columns `(a, b)` and `(0, d)`.
    pub fn hermite(&self) -> [[i64; 2]; 2] {
        [[self.a, 0], [self.b, self.d]]
    }

    pub fn index(&self) -> u64 {
        (self.a as u64) * (self.d as u64)
    }

    pub fn contains(&self, v: AbelianImage) -> bool {
        if v.l % self.a != 0 {
            return false;
        }
        let m = (v.l / self.a) as i128;
        (v.r as i128 - m * self.b as i128) % self.d as i128 == 0
    }

    /// `(p, q)` when this is `pZ x qZ`.
    pub fn as_product(&self) -> Option<(u64, u64)> {
        (self.b == 0).then_some((self.a as u64, self.d as u64))
    }

    /// Some lattice point with first slot `l + m` for the least `m >= 0`;
    /// used to push abelianizations into the lattice.
    pub(crate) fn correction(&self, v: AbelianImage) -> (i64, i64) {
        let m = (-v.l).rem_euclid(self.a);
        let n = (v.l + m) / self.a;
        // Need r + m + s = n * b (mod d).
        let s = ((n as i128 * self.b as i128 - v.r as i128 - m as i128).rem_euclid(self.d as i128))
            as i64;
        (m, s)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_product() {
            Some((p, q)) => write!(f, "[{p},{q}]"),
            None => write!(f, "<({},{}),(0,{})>", self.a, self.b, self.d),
        }
    }
}

/// `f` lies in the preimage of `lattice` under abelianization.
pub fn member(f: &PLMap, lattice: &Lattice) -> bool {
    abelianize(f).is_ok_and(|v| lattice.contains(v))
}
