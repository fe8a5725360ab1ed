#![allow(dead_code)]

use m22_core::moduli::{Coord, ModuliPoint, COORDS};
use m22_core::rational::{int, q, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero rational.
pub fn nonzero(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let n: i64 = r.gen_range(-7..=7);
        if n != 0 {
            return q(n, r.gen_range(1..=4));
        }
    }
}

/// Nonzero with probability `1 - p_zero`.
pub fn sparse(r: &mut ChaCha8Rng, p_zero: f64) -> Rational {
    if r.gen_bool(p_zero) {
        Rational::zero()
    } else {
        nonzero(r)
    }
}

/// A point whose matrix `[[α12, α21, β12, β21], [2ε12, 2ε21, π̃1, π̃2]]` has
/// rank at most one, with random coordinates set to zero.
pub fn rank_le1_point(r: &mut ChaCha8Rng, p_zero: f64) -> ModuliPoint {
    use Coord::*;
    let mut p = ModuliPoint::zero();
    let row: Vec<Rational> = (0..4).map(|_| sparse(r, p_zero)).collect();
    let (top, bottom) = if r.gen_bool(0.15) {
        (vec![Rational::zero(); 4], row)
    } else {
        let c = sparse(r, p_zero);
        let bottom = row.iter().map(|x| x * &c).collect();
        (row, bottom)
    };
    for (k, c) in [Alpha12, Alpha21, Beta12, Beta21].into_iter().enumerate() {
        *p.get_mut(c) = top[k].clone();
    }
    *p.get_mut(Epsilon12) = &bottom[0] / int(2);
    *p.get_mut(Epsilon21) = &bottom[1] / int(2);
    *p.get_mut(PiTilde1) = bottom[2].clone();
    *p.get_mut(PiTilde2) = bottom[3].clone();
    *p.get_mut(Gamma12) = sparse(r, p_zero);
    *p.get_mut(Gamma21) = sparse(r, p_zero);
    p
}

/// A point with every coordinate nonzero; generically of rank two.
pub fn dense_point(r: &mut ChaCha8Rng) -> ModuliPoint {
    let mut p = ModuliPoint::zero();
    for c in COORDS {
        *p.get_mut(c) = nonzero(r);
    }
    p
}
