//! Sign sampling and the `(r, s) ↔ (s, r)` relabelling.

use rand::Rng as _;
use serde::Serialize;

use super::RationalMap;
use crate::hermitian::{sign_of_coords, PointSign, Signature};
use crate::random;
use crate::scalar::GQ;

/// Sampled sign behaviour: counts of (input sign → output sign).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignReport {
    pub trials: usize,
    pub pos_to_pos: usize,
    pub pos_to_neg: usize,
    pub pos_to_null: usize,
    pub neg_to_neg: usize,
    pub neg_to_pos: usize,
    pub neg_to_null: usize,
    pub null_to_null: usize,
    pub null_to_nonnull: usize,
    /// Points where every component vanishes.
    pub indeterminate: usize,
}

impl SignReport {
    /// Every sampled positive point landed on a positive point, and there was one.
    pub fn positive_preserved(&self) -> bool {
        self.pos_to_pos > 0 && self.pos_to_neg == 0 && self.pos_to_null == 0
    }

    pub fn negative_preserved(&self) -> bool {
        self.neg_to_neg > 0 && self.neg_to_pos == 0 && self.neg_to_null == 0
    }

    /// Some positive point stayed positive or some negative point stayed negative.
    pub fn some_sign_preserved(&self) -> bool {
        self.pos_to_pos + self.neg_to_neg > 0
    }

    pub fn sign_violations(&self) -> usize {
        self.pos_to_neg + self.pos_to_null + self.neg_to_pos + self.neg_to_null
    }

    pub fn null_preserved(&self) -> bool {
        self.null_to_nonnull == 0
    }
}

pub fn sign_sample(f: &RationalMap, trials: usize, seed: u64) -> SignReport {
    sign_sample_with(f, trials, seed, 100)
}

/// Samples `trials` points: three in four generic (numerators up to `height`,
/// denominators up to 10), one in four on the null cone when it has ordinary points.
pub fn sign_sample_with(f: &RationalMap, trials: usize, seed: u64, height: i64) -> SignReport {
    let src = f.source();
    let tgt = f.target();
    let mut rng = random::rng(seed);
    let mut rep = SignReport { trials, ..SignReport::default() };
    let has_null = src.r > 0 && src.s > 0 || src.t > 0;
    for i in 0..trials {
        let z: Vec<GQ> = if has_null && i % 4 == 3 {
            random::null_vector(&mut rng, &src, 10)
        } else {
            generic_point(&mut rng, src.n(), height)
        };
        let Ok(input) = sign_of_coords(&src, &z) else { continue };
        let w = f.eval(&z);
        let Ok(output) = sign_of_coords(&tgt, &w) else {
            rep.indeterminate += 1;
            continue;
        };
        match (input, output) {
            (PointSign::Positive, PointSign::Positive) => rep.pos_to_pos += 1,
            (PointSign::Positive, PointSign::Negative) => rep.pos_to_neg += 1,
            (PointSign::Positive, PointSign::Null { .. }) => rep.pos_to_null += 1,
            (PointSign::Negative, PointSign::Negative) => rep.neg_to_neg += 1,
            (PointSign::Negative, PointSign::Positive) => rep.neg_to_pos += 1,
            (PointSign::Negative, PointSign::Null { .. }) => rep.neg_to_null += 1,
            (PointSign::Null { .. }, PointSign::Null { .. }) => rep.null_to_null += 1,
            (PointSign::Null { .. }, _) => rep.null_to_nonnull += 1,
        }
    }
    rep
}

fn generic_point(rng: &mut random::Rng, n: usize, height: i64) -> Vec<GQ> {
    loop {
        let z: Vec<GQ> = (0..n)
            .map(|_| {
                GQ::new(
                    crate::scalar::ratio(rng.gen_range(-height..=height), rng.gen_range(1..=10)),
                    crate::scalar::ratio(rng.gen_range(-height..=height), rng.gen_range(1..=10)),
                )
            })
            .collect();
        if z.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            return z;
        }
    }
}

/// Position of old coordinate `j` after exchanging the positive and negative blocks.
fn swapped_index(sig: &Signature, j: usize) -> usize {
    if j < sig.r {
        sig.s + j
    } else if j < sig.r + sig.s {
        j - sig.r
    } else {
        j
    }
}

/// Negates both forms: source and target become `(s, r, t)` with the blocks
/// reordered so that positive coordinates still come first.
pub fn swap_signature(f: &RationalMap) -> RationalMap {
    let (src, tgt) = (f.source(), f.target());
    let perm: Vec<usize> = (0..src.n()).map(|j| swapped_index(&src, j)).collect();
    let mut comps = vec![None; tgt.n()];
    for (l, c) in f.components().iter().enumerate() {
        comps[swapped_index(&tgt, l)] = Some(c.permute_vars(&perm));
    }
    RationalMap::new(src.swapped(), tgt.swapped(), comps.into_iter().map(|c| c.expect("permutation")).collect())
        .expect("relabelling keeps a valid map")
}
