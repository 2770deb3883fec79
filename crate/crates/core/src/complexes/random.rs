//! Seeded random bicomplexes assembled from indecomposable pieces (dots,
//! squares, zigzags) and scrambled by a per-slot change of basis.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{ExactMatrix, GaussianRational};

use super::bicomplex::Bicomplex;
use super::grading::{Bidegree, BigradedSpace, Parity, Shift};
use super::operator::GradedOperator;

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub max_n: usize,
    pub max_pieces: usize,
    pub max_zigzag_len: usize,
    pub scramble: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_n: 3,
            max_pieces: 5,
            max_zigzag_len: 2,
            scramble: true,
        }
    }
}

struct Arrow {
    src: usize,
    tgt: usize,
    shift: Shift,
    coeff: GaussianRational,
}

#[derive(Default)]
struct Builder {
    elements: Vec<Bidegree>,
    arrows: Vec<Arrow>,
}

impl Builder {
    fn element(&mut self, bd: Bidegree) -> usize {
        self.elements.push(bd);
        self.elements.len() - 1
    }

    fn arrow(&mut self, src: usize, tgt: usize, shift: Shift, coeff: GaussianRational) {
        debug_assert_eq!(self.elements[src].shifted(shift), Some(self.elements[tgt]));
        self.arrows.push(Arrow { src, tgt, shift, coeff });
    }
}

fn small_nonzero<R: Rng>(rng: &mut R) -> GaussianRational {
    const CHOICES: [(i64, i64); 8] = [(1, 0), (-1, 0), (2, 0), (-3, 0), (0, 1), (0, -1), (1, 1), (2, -1)];
    let (re, im) = *CHOICES.choose(rng).expect("nonempty");
    GaussianRational::from_ints(re, im)
}

fn small_any<R: Rng>(rng: &mut R) -> GaussianRational {
    if rng.gen_bool(0.4) {
        GaussianRational::zero()
    } else {
        small_nonzero(rng)
    }
}

fn point<R: Rng>(rng: &mut R, n: usize, p_min: usize, q_min: usize, p_max: usize, q_max: usize) -> Option<Bidegree> {
    let p_hi = n.checked_sub(p_max)?;
    let q_hi = n.checked_sub(q_max)?;
    if p_min > p_hi || q_min > q_hi {
        return None;
    }
    Some(Bidegree::new(rng.gen_range(p_min..=p_hi), rng.gen_range(q_min..=q_hi)))
}

fn add_square<R: Rng>(rng: &mut R, n: usize, b: &mut Builder) -> bool {
    let Some(at) = point(rng, n, 0, 0, 1, 1) else {
        return false;
    };
    let x = b.element(at);
    let a = b.element(Bidegree::new(at.p + 1, at.q));
    let y = b.element(Bidegree::new(at.p, at.q + 1));
    let c = b.element(Bidegree::new(at.p + 1, at.q + 1));
    let (alpha, beta, gamma) = (small_nonzero(rng), small_nonzero(rng), small_nonzero(rng));
    let delta = -(&(&alpha * &gamma) / &beta);
    b.arrow(x, a, Shift::DEL, alpha);
    b.arrow(x, y, Shift::DELBAR, beta);
    b.arrow(a, c, Shift::DELBAR, gamma);
    b.arrow(y, c, Shift::DEL, delta);
    true
}

/// Zigzag through `x_j` on an antidiagonal. With `outward` the `x_j` are
/// sources, otherwise sinks.
fn add_zigzag<R: Rng>(rng: &mut R, n: usize, max_len: usize, b: &mut Builder) -> bool {
    let len = rng.gen_range(0..=max_len.min(n));
    let outward = rng.gen_bool(0.5);
    let with_start = rng.gen_bool(0.6);
    let with_end = rng.gen_bool(0.6);
    // x_j at (a - j, b + j), j = 0..=len.
    let (dp_lo, dq_lo, dp_hi, dq_hi) = if outward {
        (len, 0, usize::from(with_start), usize::from(with_end))
    } else {
        (len + usize::from(with_end), usize::from(with_start), 0, 0)
    };
    let Some(top) = point(rng, n, dp_lo, dq_lo, dp_hi, dq_hi + len) else {
        return false;
    };
    let (a0, b0) = (top.p, top.q);
    let xs: Vec<usize> = (0..=len).map(|j| b.element(Bidegree::new(a0 - j, b0 + j))).collect();
    if outward {
        for j in 0..len {
            let y = b.element(Bidegree::new(a0 - j, b0 + j + 1));
            b.arrow(xs[j], y, Shift::DELBAR, small_nonzero(rng));
            b.arrow(xs[j + 1], y, Shift::DEL, small_nonzero(rng));
        }
        if with_start {
            let y = b.element(Bidegree::new(a0 + 1, b0));
            b.arrow(xs[0], y, Shift::DEL, small_nonzero(rng));
        }
        if with_end {
            let y = b.element(Bidegree::new(a0 - len, b0 + len + 1));
            b.arrow(xs[len], y, Shift::DELBAR, small_nonzero(rng));
        }
    } else {
        for j in 0..len {
            let y = b.element(Bidegree::new(a0 - j - 1, b0 + j));
            b.arrow(y, xs[j], Shift::DEL, small_nonzero(rng));
            b.arrow(y, xs[j + 1], Shift::DELBAR, small_nonzero(rng));
        }
        if with_start {
            let y = b.element(Bidegree::new(a0, b0 - 1));
            b.arrow(y, xs[0], Shift::DELBAR, small_nonzero(rng));
        }
        if with_end {
            let y = b.element(Bidegree::new(a0 - len - 1, b0 + len));
            b.arrow(y, xs[len], Shift::DEL, small_nonzero(rng));
        }
    }
    true
}

/// Random invertible `U · L` with `U` upper triangular (nonzero diagonal)
/// and `L` unit lower triangular.
fn random_invertible<R: Rng>(rng: &mut R, k: usize) -> ExactMatrix {
    let u = ExactMatrix::from_fn(k, k, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => small_nonzero(rng),
        std::cmp::Ordering::Less => small_any(rng),
        std::cmp::Ordering::Greater => GaussianRational::zero(),
    });
    let l = ExactMatrix::from_fn(k, k, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => GaussianRational::one(),
        std::cmp::Ordering::Greater => small_any(rng),
        std::cmp::Ordering::Less => GaussianRational::zero(),
    });
    u.mul(&l)
}

/// One random valid bicomplex (with `∂`) on a grid of size at most
/// `params.max_n`.
pub fn random_bicomplex<R: Rng>(rng: &mut R, params: &RandomParams) -> Bicomplex {
    let n = rng.gen_range(1..=params.max_n.max(1));
    let mut b = Builder::default();
    let pieces = rng.gen_range(1..=params.max_pieces.max(1));
    for _ in 0..pieces {
        loop {
            let placed = match rng.gen_range(0..4) {
                0 => {
                    let at = Bidegree::new(rng.gen_range(0..=n), rng.gen_range(0..=n));
                    b.element(at);
                    true
                }
                1 => add_square(rng, n, &mut b),
                _ => add_zigzag(rng, n, params.max_zigzag_len, &mut b),
            };
            if placed {
                break;
            }
        }
    }

    let mut position = Vec::with_capacity(b.elements.len());
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for bd in &b.elements {
        let slot = dims.entry(*bd).or_default();
        position.push(*slot);
        *slot += 1;
    }
    let space = BigradedSpace::from_dims(n, &dims).expect("pieces stay inside the grid");

    let mut ops: BTreeMap<Shift, GradedOperator> = [Shift::DEL, Shift::DELBAR]
        .into_iter()
        .map(|s| (s, GradedOperator::zero(s, Parity::Odd)))
        .collect();
    let mut blocks: BTreeMap<(Shift, Bidegree), ExactMatrix> = BTreeMap::new();
    for arrow in &b.arrows {
        let src = b.elements[arrow.src];
        let tgt = b.elements[arrow.tgt];
        let m = blocks
            .entry((arrow.shift, src))
            .or_insert_with(|| ExactMatrix::zeros(dims[&tgt], dims[&src]));
        *m.entry_mut(position[arrow.tgt], position[arrow.src]) += &arrow.coeff;
    }

    if params.scramble {
        let change: BTreeMap<Bidegree, (ExactMatrix, ExactMatrix)> = dims
            .iter()
            .map(|(&bd, &k)| {
                let p = random_invertible(rng, k);
                let p_inv = p.inverse().expect("U·L is invertible");
                (bd, (p, p_inv))
            })
            .collect();
        for ((shift, src), m) in blocks.iter_mut() {
            let tgt = src.shifted(*shift).expect("arrow target");
            *m = change[&tgt].0.mul(m).mul(&change[src].1);
        }
    }

    for ((shift, src), m) in blocks {
        ops.get_mut(&shift).expect("known shift").set_block(src, m);
    }
    let delbar = ops.remove(&Shift::DELBAR).expect("delbar");
    let del = ops.remove(&Shift::DEL).expect("del");
    Bicomplex::new(space, Some(del), delbar).expect("shapes follow the slot dimensions")
}

/// `count` random bicomplexes from a fixed seed.
pub fn random_suite(seed: u64, count: usize, params: &RandomParams) -> Vec<Bicomplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_bicomplex(&mut rng, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_valid_and_reproducible() {
        let params = RandomParams::default();
        let a = random_suite(7, 40, &params);
        let b = random_suite(7, 40, &params);
        assert_eq!(a, b);
        for bc in &a {
            assert!(bc.validate().passed(), "{}", bc.validate());
        }
    }

    #[test]
    fn unscrambled_suite_is_valid() {
        let params = RandomParams {
            scramble: false,
            ..RandomParams::default()
        };
        for bc in random_suite(11, 40, &params) {
            assert!(bc.validate().passed());
        }
    }

    #[test]
    fn invertible_factor_has_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 0..5 {
            let p = random_invertible(&mut rng, k);
            assert_eq!(p.mul(&p.inverse().unwrap()), ExactMatrix::identity(k));
        }
    }
}
