//! Seeded random elements for property tests.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`, so
//! a seed pins the whole output sequence on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commensurator::{classify, make_commensuration, Commensuration};
use crate::dyadic::Dyadic;
use crate::fixtures;
use crate::plmap::compose::compose;
use crate::plmap::{Orientation, PLMap};
use crate::qi::{transplant, UnitDyadicInterval};
use crate::thompson::{abelianize, Lattice};

pub struct SeededGenerator {
    seed: u64,
    rng: ChaCha8Rng,
    letters: [PLMap; 4],
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        let (x0, x1) = (fixtures::x0(), fixtures::x1());
        let letters = [x0.invert(), x1.invert(), x0, x1];
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            letters,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A product of `len` letters drawn from `x0, x0⁻¹, x1, x1⁻¹`.
    pub fn random_f_element(&mut self, len: usize) -> PLMap {
        let mut w = PLMap::identity();
        for _ in 0..len {
            let letter = self.letters.choose(&mut self.rng).expect("four letters");
            w = compose(letter, &w);
        }
        w
    }

    /// `make_commensuration` with periods in `[1, max_period]` and a random
    /// orientation, pre- and post-composed with F-words of length `perturb`.
    pub fn random_commensuration(&mut self, max_period: u64, perturb: usize) -> Commensuration {
        let orientation = if self.rng.gen_bool(0.5) {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        };
        self.commensuration_with(max_period, perturb, orientation)
    }

    /// As [`random_commensuration`](Self::random_commensuration), always
    /// orientation preserving.
    pub fn random_preserving_commensuration(
        &mut self,
        max_period: u64,
        perturb: usize,
    ) -> Commensuration {
        self.commensuration_with(max_period, perturb, Orientation::Preserving)
    }

    fn commensuration_with(
        &mut self,
        max_period: u64,
        perturb: usize,
        orientation: Orientation,
    ) -> Commensuration {
        let max_period = max_period.max(1);
        let mut draw = || self.rng.gen_range(1..=max_period);
        let (p, q, pp, qq) = (draw(), draw(), draw(), draw());
        let core = make_commensuration(p, q, pp, qq, orientation)
            .expect("positive periods")
            .into_map();
        if perturb == 0 {
            return classify(&core);
        }
        let pre = self.random_f_element(perturb);
        let post = self.random_f_element(perturb);
        classify(&compose(&post, &compose(&core, &pre)))
    }

    /// A random F-word pushed into the preimage of `lattice` by appending
    /// `x0^m x1^s`.
    pub fn random_in_lattice(&mut self, lattice: &Lattice, len: usize) -> PLMap {
        let w = self.random_f_element(len);
        let ab = abelianize(&w).expect("F-words lie in F");
        let (m, s) = lattice.correction(ab);
        let (x0, x1) = (&self.letters[2], &self.letters[3]);
        let mut out = w;
        for _ in 0..m {
            out = compose(x0, &out);
        }
        for _ in 0..s {
            out = compose(x1, &out);
        }
        out
    }

    /// A product of `len` transplanted copies of `c01` and its inverse into
    /// dyadic subintervals of `[0, 1]`: an element of `F'` supported in
    /// `[0, 1]`.
    pub fn random_f_prime_in_unit(&mut self, len: usize) -> PLMap {
        let c01 = fixtures::c01();
        let c10 = c01.invert();
        let mut out = PLMap::identity();
        for _ in 0..len {
            let j = self.rng.gen_range(0..=3u32);
            let k = self.rng.gen_range(0..(1i64 << j));
            let piece = if self.rng.gen_bool(0.5) { &c01 } else { &c10 };
            let moved =
                transplant(piece, UnitDyadicInterval::new(k, j)).expect("c01 lives in [0, 1]");
            out = compose(&moved, &out);
        }
        out
    }

    /// A dyadic `m / 2^e` with `|m / 2^e| <= range` and `e <= max_log2`.
    pub fn random_dyadic(&mut self, range: i64, max_log2: u32) -> Dyadic {
        let e = self.rng.gen_range(0..=max_log2);
        let bound = range << e;
        Dyadic::new(self.rng.gen_range(-bound..=bound), -(e as i64))
    }

    /// Finite-index lattice with Hermite entries in `[1, max_entry]`.
    pub fn random_lattice(&mut self, max_entry: i64) -> Lattice {
        let a = self.rng.gen_range(1..=max_entry);
        let d = self.rng.gen_range(1..=max_entry);
        let b = self.rng.gen_range(0..d);
        Lattice::from_generators(&[(a, b), (0, d)]).expect("full rank")
    }
}
