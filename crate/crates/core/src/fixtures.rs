//! Named maps used throughout the documentation and tests.

use crate::commensurator::make_commensuration;
use crate::dyadic::Dyadic;
use crate::plmap::{Orientation, PLMap, Point, RawMap, RawTail};

fn build(points: &[(&str, &str)], left: (&str, i64, i64), right: (&str, i64, i64)) -> PLMap {
    let dy = |s: &str| s.parse::<Dyadic>().expect("fixture literal");
    let tail = |(a, p, q): (&str, i64, i64)| RawTail {
        anchor: dy(a),
        period: p,
        amplitude: q,
    };
    let raw = RawMap {
        orientation: Orientation::Preserving,
        points: points
            .iter()
            .map(|(x, y)| Point::new(dy(x), dy(y)))
            .collect(),
        left: tail(left),
        right: tail(right),
    };
    PLMap::from_raw(raw).expect("fixture is valid")
}

/// `t -> t + 1`.
pub fn x0() -> PLMap {
    PLMap::translation(1)
}

/// Identity on `(-inf, 0]`, slope 2 on `[0, 1]`, `t -> t + 1` on `[1, inf)`.
pub fn x1() -> PLMap {
    build(
        &[("-1", "-1"), ("0", "0"), ("1", "2"), ("2", "3")],
        ("0", 1, 1),
        ("1", 1, 1),
    )
}

/// Identity outside `[0, 1]`; slopes 2, 1, 1/2 on `[0, 1/4]`, `[1/4, 1/2]`,
/// `[1/2, 1]`.
pub fn c01() -> PLMap {
    build(
        &[
            ("-1", "-1"),
            ("0", "0"),
            ("1/2^2", "1/2^1"),
            ("1/2^1", "3/2^2"),
            ("1", "1"),
            ("2", "2"),
        ],
        ("0", 1, 1),
        ("1", 1, 1),
    )
}

/// The standard commensuration with tails `(1, 3)` at both ends.
pub fn mk13() -> PLMap {
    make_commensuration(1, 3, 1, 3, Orientation::Preserving)
        .expect("positive periods")
        .into_map()
}

/// The standard commensuration with tails `(3, 1)` at both ends.
pub fn g31() -> PLMap {
    make_commensuration(3, 1, 3, 1, Orientation::Preserving)
        .expect("positive periods")
        .into_map()
}
