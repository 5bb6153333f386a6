//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Oracles here avoid the code under test where they can: tail rules are
//! checked by evaluating at every point of a dyadic grid fine enough to
//! contain all breakpoints, and compositions by evaluating the factors.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use comf::commensurator::{
    classify, conjugate, domain_lattice, image_lattice, make_commensuration, phi, PhiValue,
};
use comf::plmap::{validate, Orientation};
use comf::qi::{self, UnitDyadicInterval};
use comf::sampler::SeededGenerator;
use comf::thompson::{abelianize, is_in_f, member, AbelianImage, Lattice};
use comf::{compose, fixtures, Dyadic, PLMap, PosRational};
use comf_cli::{parse_map, run, serialize_map};
use num_integer::Integer;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Finest breakpoint denominator of `f`, as a power of two.
fn grain(f: &PLMap) -> u64 {
    f.points()
        .iter()
        .flat_map(|p| [p.x.denominator_log2(), p.y.denominator_log2()])
        .max()
        .unwrap_or(0)
        + 1
}

/// Every `k / 2^g` in `[lo, hi]`.
fn grid(lo: &Dyadic, hi: &Dyadic, g: u64) -> Vec<Dyadic> {
    let step = Dyadic::pow2(-(g as i64));
    let mut t = Dyadic::new(lo.shl(g as i64).floor(), -(g as i64));
    let mut out = Vec::new();
    while &t <= hi {
        if &t >= lo {
            out.push(t.clone());
        }
        t = &t + &step;
    }
    out
}

/// Whether `f(t + d) = f(t) + e` at every grid point of `[lo, hi]`.
fn rule_on_grid(f: &PLMap, lo: &Dyadic, hi: &Dyadic, d: u64, e: i64, g: u64) -> bool {
    let (d, e) = (Dyadic::from(d), Dyadic::from(e));
    grid(lo, hi, g)
        .iter()
        .all(|t| f.evaluate(&(t + &d)) == f.evaluate(t) + &e)
}

/// Least `(d, e)` dividing `(p, q)` that holds right of `anchor`, by testing
/// every divisor.
fn brute_minimal_right(f: &PLMap, anchor: &Dyadic, p: u64, q: i64) -> (u64, i64) {
    let g = grain(f);
    let hi = anchor + &Dyadic::from(p);
    (1..=p)
        .filter(|d| p.is_multiple_of(*d) && (q * *d as i64) % p as i64 == 0)
        .map(|d| (d, q * d as i64 / p as i64))
        .find(|&(d, e)| rule_on_grid(f, anchor, &hi, d, e, g))
        .expect("the stored rule holds")
}

/// Same on the left: `f(t - d) = f(t) - e` for `t <= anchor`.
fn brute_minimal_left(f: &PLMap, anchor: &Dyadic, p: u64, q: i64) -> (u64, i64) {
    let g = grain(f);
    (1..=p)
        .filter(|d| p.is_multiple_of(*d) && (q * *d as i64) % p as i64 == 0)
        .map(|d| (d, q * d as i64 / p as i64))
        .find(|&(d, e)| {
            let lo = anchor - &Dyadic::from(p + d);
            let hi = anchor - &Dyadic::from(d);
            rule_on_grid(f, &lo, &hi, d, e, g)
        })
        .expect("the stored rule holds")
}

fn dyadic_points(gen: &mut SeededGenerator, n: usize) -> Vec<Dyadic> {
    (0..n).map(|_| gen.random_dyadic(40, 8)).collect()
}

fn ratio(p: u64, q: u64) -> PosRational {
    PosRational::new(p, q).expect("positive")
}

fn group_laws() -> Outcome {
    let mut gen = SeededGenerator::new(0xC0FF_EE01);
    let id = PLMap::identity();
    for case in 0..500 {
        let f = gen.random_commensuration(4, 1).into_map();
        let g = gen.random_commensuration(4, 1).into_map();
        let h = gen.random_commensuration(4, 1).into_map();
        let left = compose(&compose(&h, &g), &f);
        let right = compose(&h, &compose(&g, &f));
        ensure!(
            left.equals(&right).is_equal(),
            "case {case}: associativity fails"
        );
        let finv = f.invert();
        ensure!(
            compose(&f, &finv).equals(&id).is_equal(),
            "case {case}: f f⁻¹ != id"
        );
        ensure!(
            compose(&finv, &f).equals(&id).is_equal(),
            "case {case}: f⁻¹ f != id"
        );
        ensure!(
            compose(&id, &f).equals(&f).is_equal(),
            "case {case}: id f != f"
        );
        ensure!(
            compose(&f, &id).equals(&f).is_equal(),
            "case {case}: f id != f"
        );
        for t in dyadic_points(&mut gen, 100) {
            let direct = h.evaluate(&g.evaluate(&f.evaluate(&t)));
            ensure!(left.evaluate(&t) == direct, "case {case}: (hg)f({t})");
            ensure!(right.evaluate(&t) == direct, "case {case}: h(gf)({t})");
            ensure!(
                finv.evaluate(&f.evaluate(&t)) == t,
                "case {case}: f⁻¹ f({t})"
            );
        }
    }
    Ok("500 triples: associativity, identity, inverses; 100 points each".into())
}

fn gcd_lemma() -> Outcome {
    let mut gen = SeededGenerator::new(0xC0FF_EE02);
    for case in 0..100 {
        let base = gen.random_commensuration(6, 1);
        let k_r = 1 + (case % 12) as u64;
        let k_l = 1 + ((case * 7 + 3) % 12) as u64;
        let wide = base.map().inflate_periods(k_l, k_r);
        let (pr, qr) = wide.right().rule();
        let (pl, ql) = wide.left().rule();
        ensure!(
            pr == k_r * base.right().0 && pl == k_l * base.left().0,
            "case {case}: inflation"
        );
        let c = classify(&wide);
        ensure!(
            c.right() == base.right(),
            "case {case}: right {:?} != {:?}",
            c.right(),
            base.right()
        );
        ensure!(
            c.left() == base.left(),
            "case {case}: left {:?} != {:?}",
            c.left(),
            base.left()
        );
        let oracle_r = brute_minimal_right(&wide, &wide.right().anchor, pr, qr);
        let oracle_l = brute_minimal_left(&wide, &wide.left().anchor, pl, ql);
        ensure!(
            oracle_r == c.right(),
            "case {case}: oracle right {oracle_r:?} vs {:?}",
            c.right()
        );
        ensure!(
            oracle_l == c.left(),
            "case {case}: oracle left {oracle_l:?} vs {:?}",
            c.left()
        );
    }
    Ok("100 inflated maps, k in [1, 12]; matches brute-force divisor oracle".into())
}

fn tail_law() -> Outcome {
    let h = compose(&fixtures::g31(), &PLMap::dilation(1));
    ensure!(
        h.right().rule() == (3, 2),
        "fixture gives {:?}",
        h.right().rule()
    );
    let mut gen = SeededGenerator::new(0xC0FF_EE03);
    for case in 0..200 {
        let f = gen.random_preserving_commensuration(6, 1).into_map();
        let g = gen.random_preserving_commensuration(6, 1).into_map();
        let h = compose(&g, &f);
        let (pf, qf) = f.right().rule();
        let (pg, qg) = g.right().rule();
        let d = (qf as u64).gcd(&pg);
        let (big_p, big_q) = (pf * pg / d, qf * qg / d as i64);
        let (p, q) = h.right().rule();
        ensure!(
            big_p % p == 0 && q * (big_p / p) as i64 == big_q,
            "case {case}: ({p},{q}) does not divide ({big_p},{big_q})"
        );
        let anchor = h.right().anchor.clone();
        let hi = &anchor + &Dyadic::from(4 * p);
        let g_step = grain(&f).max(grain(&g)).max(grain(&h));
        for t in grid(&anchor, &hi, g_step.min(6)) {
            let direct = g.evaluate(&f.evaluate(&t));
            ensure!(h.evaluate(&t) == direct, "case {case}: value at {t}");
            let shifted = g.evaluate(&f.evaluate(&(&t + &Dyadic::from(p))));
            ensure!(
                shifted == direct + Dyadic::from(q),
                "case {case}: rule at {t}"
            );
        }
    }
    Ok("200 pairs divide (p_f p_g / d, q_f q_g / d); dense oracle agrees; G31 after dilation(1) has (3, 2)".into())
}

fn phi_homomorphism() -> Outcome {
    let mut gen = SeededGenerator::new(0xC0FF_EE04);
    for case in 0..200 {
        let a = gen.random_preserving_commensuration(8, 1);
        let b = gen.random_preserving_commensuration(8, 1);
        let lhs = phi(&a.compose(&b)).map_err(|e| e.to_string())?;
        let rhs = phi(&a).unwrap() * phi(&b).unwrap();
        ensure!(lhs == rhs, "case {case}: {lhs} != {rhs}");
    }
    for _ in 0..100 {
        let v: Vec<u64> = (0..4).map(|_| gen.rng().gen_range(1..=20)).collect();
        let c = make_commensuration(v[0], v[1], v[2], v[3], Orientation::Preserving).unwrap();
        let want = PhiValue {
            right_ratio: ratio(v[0], v[1]),
            left_ratio: ratio(v[2], v[3]),
        };
        ensure!(
            phi(&c).unwrap() == want,
            "make{v:?} gives {}",
            phi(&c).unwrap()
        );
    }
    for case in 0..100 {
        let w = gen.random_f_element(1 + case % 10);
        let value = phi(&classify(&w)).unwrap();
        ensure!(
            value.to_string() == "1/1 1/1",
            "F-word {case} has phi {value}"
        );
    }
    Ok("200 products, 100 quadruples, 100 F-words".into())
}

fn conjugation_theorem() -> Outcome {
    let d = classify(&PLMap::dilation(1));
    ensure!(
        conjugate(&d, &fixtures::x0()) == PLMap::translation(2),
        "conjugate(dilation(1), x0)"
    );
    let mut gen = SeededGenerator::new(0xC0FF_EE06);
    let (x0, x1) = (fixtures::x0(), fixtures::x1());
    let power = |m: &PLMap, n: i64| {
        let base = if n < 0 { m.invert() } else { m.clone() };
        (0..n.abs()).fold(PLMap::identity(), |acc, _| compose(&base, &acc))
    };
    for case in 0..100 {
        let c = gen.random_commensuration(5, 1);
        let dom = domain_lattice(&c);
        let img = image_lattice(&c);
        for trial in 0..5 {
            let f = gen.random_in_lattice(&dom, 4);
            ensure!(
                member(&f, &dom),
                "case {case}.{trial}: sampler left the lattice"
            );
            let h = conjugate(&c, &f);
            ensure!(
                is_in_f(&h),
                "case {case}.{trial}: conjugate not in F (eps {})",
                c.orientation()
            );
            let ab = abelianize(&h).unwrap();
            ensure!(img.contains(ab), "case {case}.{trial}: {ab} not in {img}");
        }
        // Elements with abelianization (p', 0) and (0, p): x0^a x1^b has (a, a + b).
        let (p, pp) = (c.right().0 as i64, c.left().0 as i64);
        let gens = [compose(&power(&x1, -pp), &power(&x0, pp)), power(&x1, p)];
        let images: Vec<(i64, i64)> = gens
            .iter()
            .map(|g| {
                let v = abelianize(&conjugate(&c, g)).expect("lands in F");
                (v.l, v.r)
            })
            .collect();
        let spanned = Lattice::from_generators(&images).map_err(|e| e.to_string())?;
        ensure!(
            spanned == img,
            "case {case}: images span {spanned}, expected {img}"
        );
    }
    Ok("100 commensurations x 5 elements land in the image lattice; generators span it".into())
}

fn subgroup_corollary() -> Outcome {
    let mut gen = SeededGenerator::new(0xC0FF_EE07);
    let (x0, x1) = (fixtures::x0(), fixtures::x1());
    for case in 0..50 {
        let p: i64 = gen.rng().gen_range(1..=12);
        let q: i64 = gen.rng().gen_range(1..=12);
        // Left amplitude p, right amplitude q: F goes onto [p, q].
        let c = make_commensuration(1, q as u64, 1, p as u64, Orientation::Preserving).unwrap();
        let images: Vec<(i64, i64)> = [&x0, &x1]
            .iter()
            .map(|g| {
                let v = abelianize(&conjugate(&c, g)).expect("lands in F");
                (v.l, v.r)
            })
            .collect();
        let target = Lattice::product(p, q).unwrap();
        ensure!(
            Lattice::from_generators(&images).unwrap() == target,
            "case {case}: [{p},{q}]"
        );
        // And back: the inverse carries [p, q] onto F.
        let back = c.invert();
        ensure!(
            domain_lattice(&back) == target && image_lattice(&back) == Lattice::full(),
            "case {case}: inverse"
        );
        ensure!(
            target.as_product() == Some((p as u64, q as u64)),
            "case {case}: product round trip"
        );
    }
    for p in 1..=100 {
        let q = 101 - p;
        ensure!(
            Lattice::product(p, q).unwrap().as_product() == Some((p as u64, q as u64)),
            "round trip [{p},{q}]"
        );
    }
    Ok("50 pairs: F conjugates onto [p, q]; product round trips".into())
}

fn qi_lemma() -> Outcome {
    let fixtures_expected = [
        (PLMap::dilation(1), (3, 2), (3, 1)),
        (PLMap::translation(1), (0, 1), (2, 1)),
        (PLMap::reflection(), (1, 0), (-2, 0)),
    ];
    for (tau, (ik, ij), (jk, jj)) in &fixtures_expected {
        let (i, j) = qi::disjoint_intervals(tau).unwrap();
        ensure!(
            (i, j)
                == (
                    UnitDyadicInterval::new(*ik, *ij),
                    UnitDyadicInterval::new(*jk, *jj)
                ),
            "fixture gives I={i} J={j}"
        );
    }
    let shown: Vec<String> = fixtures_expected
        .iter()
        .map(|(tau, _, _)| {
            let (i, j) = qi::disjoint_intervals(tau).unwrap();
            format!("{i} {j}")
        })
        .collect();
    ensure!(
        shown
            == [
                "[3/2^2, 1] [3/2^1, 2]",
                "[0, 1/2^1] [1, 3/2^1]",
                "[1, 2] [-2, -1]"
            ],
        "fixture text {shown:?}"
    );

    let mut gen = SeededGenerator::new(0xC0FF_EE08);
    let mut checked = 0;
    while checked < 200 {
        let tau = if checked % 4 == 3 {
            gen.random_f_element(4)
        } else {
            gen.random_commensuration(5, 1).into_map()
        };
        if tau.is_identity() {
            continue;
        }
        let (i, j) = qi::disjoint_intervals(&tau).map_err(|e| e.to_string())?;
        for u in [i, j] {
            ensure!(
                UnitDyadicInterval::from_endpoints(&u.lo(), &u.hi()) == Some(u),
                "{u} not unit dyadic"
            );
        }
        let (a, b) = (tau.evaluate(&i.lo()), tau.evaluate(&i.hi()));
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        ensure!(
            lo == j.lo() && hi == j.hi(),
            "tau(I) = [{lo}, {hi}] != J = {j}"
        );
        let width = &i.hi() - &i.lo();
        for n in 1..=10 {
            let t = &i.lo() + &(&width * &Dyadic::new(n, -4));
            let y = tau.evaluate(&t);
            ensure!(
                y > j.lo() && y < j.hi(),
                "interior point {t} of I maps to {y}"
            );
        }
        ensure!(!i.interval().intersects(&j.interval()), "I={i} meets J={j}");
        checked += 1;
    }

    for case in 0..50 {
        let tau = loop {
            let t = gen.random_commensuration(4, 1).into_map();
            if !t.is_identity() {
                break t;
            }
        };
        let (i, j) = qi::disjoint_intervals(&tau).unwrap();
        let f0 = gen.random_f_prime_in_unit(2);
        let f = qi::transplant(&f0, i).unwrap();
        ensure!(
            f.supported_in(&i.interval()),
            "case {case}: transplant leaves I"
        );
        ensure!(
            comf::conjugate_by(&tau, &f).supported_in(&j.interval()),
            "case {case}: f^tau leaves J"
        );
        let g = qi::disjoint_support_witness(&tau, &f).unwrap();
        let support = g.support();
        let inside = |c: &comf::plmap::Component, u: &UnitDyadicInterval| match (&c.lo, &c.hi) {
            (Some(lo), Some(hi)) => lo >= &u.lo().to_rational() && hi <= &u.hi().to_rational(),
            _ => false,
        };
        ensure!(
            support.left == comf::plmap::End::Fixed && support.right == comf::plmap::End::Fixed,
            "case {case}: unbounded support"
        );
        ensure!(
            support
                .components
                .iter()
                .all(|c| inside(c, &i) || inside(c, &j)),
            "case {case}: support {support} outside I={i} and J={j}"
        );
        ensure!(
            f.is_identity() == g.is_identity(),
            "case {case}: nontriviality"
        );
    }
    Ok(
        "fixtures match; 200 maps give disjoint moved unit intervals; 50 witnesses live in I ∪ J"
            .into(),
    )
}

fn abelianization_normality() -> Outcome {
    let mut gen = SeededGenerator::new(0xC0FF_EE09);
    for case in 0..300 {
        let f = gen.random_f_element(1 + case % 8);
        let g = gen.random_f_element(1 + (case * 3) % 8);
        let lhs = abelianize(&compose(&g, &f)).unwrap();
        let rhs = abelianize(&g).unwrap() + abelianize(&f).unwrap();
        ensure!(lhs == rhs, "pair {case}: {lhs} vs {rhs}");
        // Independent check of the tail offsets by evaluation far out.
        let h = compose(&g, &f);
        let far = Dyadic::from(1000);
        let off = |t: &Dyadic| (h.evaluate(t) - t).to_i64().unwrap();
        ensure!(
            AbelianImage::new(off(&-&far), off(&far)) == lhs,
            "pair {case}: far offsets"
        );
    }
    for lat_case in 0..30 {
        let lat = gen.random_lattice(6);
        for trial in 0..20 {
            let h = gen.random_in_lattice(&lat, 3);
            let g = gen.random_f_element(3);
            let conj = compose(&g.invert(), &compose(&h, &g));
            ensure!(
                member(&conj, &lat),
                "lattice {lat} trial {lat_case}.{trial}"
            );
        }
    }
    Ok("300 word pairs; 30 lattices x 20 conjugations".into())
}

fn cli_contract() -> Outcome {
    let call = |args: &[&str], stdin: &str| {
        let mut argv = vec!["comf"];
        argv.extend_from_slice(args);
        run(argv, &mut stdin.as_bytes())
    };
    let mut gen = SeededGenerator::new(0xC0FF_EE0A);
    for case in 0..100 {
        let f = if case % 2 == 0 {
            gen.random_commensuration(6, 2).into_map()
        } else {
            gen.random_f_element(6)
        };
        let text = serialize_map(&f);
        let back = parse_map(&text).map_err(|e| e.to_string())?;
        ensure!(back == f, "case {case}: parse(serialize(f)) != f");
        let canon = call(&["canon"], &text);
        ensure!(
            canon.code == 0 && canon.stdout == text,
            "case {case}: canon changed a canonical document"
        );
        let wide = serialize_map(&f.inflate_periods(2, 3));
        let again = call(&["canon"], &wide);
        ensure!(
            again.stdout == text,
            "case {case}: canon of re-encoding differs"
        );
    }
    let phi_out = call(&["phi"], &serialize_map(&fixtures::mk13()));
    ensure!(
        phi_out.stdout == "1/3 1/3\n" && phi_out.code == 0,
        "phi fixture printed {:?}",
        phi_out.stdout
    );
    let mut bad = comf_cli::MapDocument::from_map(&PLMap::identity());
    bad.points[2] = ["1".into(), "3".into()];
    bad.right.amplitude = 3;
    let bad = serde_json::to_string(&bad).unwrap();
    let cases: [(&[&str], String, i32); 6] = [
        (&["phi"], serialize_map(&fixtures::mk13()), 0),
        (&["validate"], bad.clone(), 1),
        (&["canon"], "{\"points\": 1.5}".into(), 2),
        (
            &["eval", "--t", "0.5"],
            serialize_map(&PLMap::identity()),
            2,
        ),
        (&["phi"], serialize_map(&PLMap::reflection()), 3),
        (&["abelianize"], serialize_map(&PLMap::dilation(1)), 3),
    ];
    for (args, stdin, code) in &cases {
        let out = call(args, stdin);
        ensure!(out.code == *code, "{args:?} exited {} not {code}", out.code);
    }
    let v = call(&["validate"], &bad);
    ensure!(
        v.stderr.contains("SLOPE_NOT_POWER_OF_TWO"),
        "violation code missing"
    );
    let made = call(
        &[
            "make", "--p", "1", "--q", "2", "--pp", "1", "--qq", "2", "--eps", "+1",
        ],
        "",
    );
    ensure!(
        call(&["eval", "--t", "1/2^1"], &made.stdout).stdout == "1\n",
        "make then eval"
    );
    ensure!(
        validate::validate(&parse_map(&made.stdout).unwrap().to_raw()).is_empty(),
        "made map invalid"
    );
    Ok("100 round trips; exit codes 0/1/2/3; phi fixture prints 1/3 1/3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("group laws", group_laws),
        ("gcd lemma", gcd_lemma),
        ("tail composition law", tail_law),
        ("phi homomorphism and surjectivity", phi_homomorphism),
        ("conjugation theorem", conjugation_theorem),
        ("subgroup corollary", subgroup_corollary),
        ("qi lemma", qi_lemma),
        ("abelianization and normality", abelianization_normality),
        ("cli contract", cli_contract),
    ];
    panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let mut failed = 0;
    for (n, (name, body)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(summary) => println!("PASS {} {name}: {summary} ({secs:.1}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.1}s)", n + 1);
            }
        }
    }
    let _ = panic::take_hook();
    println!(
        "{} of 9 criteria passed in {:.1}s",
        9 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
