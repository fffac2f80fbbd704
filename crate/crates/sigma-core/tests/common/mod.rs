#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sigma_core::characters::Character;
use sigma_core::linalg::Q;
use sigma_core::words::{Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn r_m(m: i64) -> Word {
    Word::from_syllables(&[
        (0, m + 1),
        (1, 1),
        (0, -(m + 1)),
        (1, 1),
        (0, m),
        (1, -1),
        (0, -m),
        (1, -1),
    ])
}

pub fn r3(m: i64) -> Word {
    Word::from_syllables(&[
        (0, 1),
        (1, 1),
        (0, m),
        (1, 1),
        (0, -m),
        (1, -1),
        (0, -1),
        (1, 1),
        (0, m + 1),
        (1, -1),
        (0, -m - 1),
        (1, -1),
    ])
}

pub fn r4(m: i64) -> Word {
    Word::from_syllables(&[
        (0, m + 1),
        (1, 1),
        (0, -m - 1),
        (1, 1),
        (0, -1),
        (1, -1),
        (0, m + 2),
        (1, -1),
        (0, -m - 2),
        (1, 1),
        (0, 1),
        (1, -1),
    ])
}

pub fn random_word<R: Rng>(rng: &mut R, n_gens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| {
                let g = rng.gen_range(0..n_gens);
                if rng.gen_bool(0.5) {
                    Letter::pos(g)
                } else {
                    Letter::neg(g)
                }
            })
            .collect(),
    )
}

/// Cyclically reduced word on two generators with zero exponent sums,
/// involving both generators, of length between 4 and `max_len`.
pub fn random_rank2_relator<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    loop {
        let w = random_word(rng, 2, max_len + 4);
        let (core, _) = w.reduce().cyclically_reduce();
        if core.len() >= 4
            && core.len() <= max_len
            && core.exponent_vector(2) == vec![0, 0]
            && core.support().len() == 2
        {
            return core;
        }
    }
}

pub fn random_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Q {
    Q::new(
        BigInt::from(rng.gen_range(-num..=num)),
        BigInt::from(rng.gen_range(1..=den)),
    )
}

/// Random nonzero character; each value is zero with probability `p_zero`.
pub fn random_character<R: Rng>(rng: &mut R, n: usize, p_zero: f64) -> Character {
    loop {
        let v: Vec<Q> = (0..n)
            .map(|_| {
                if rng.gen_bool(p_zero) {
                    Q::from_integer(0.into())
                } else {
                    random_rational(rng, 5, 4)
                }
            })
            .collect();
        let chi = Character::new(v);
        if !chi.is_zero() {
            return chi;
        }
    }
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Shortlex-least word among everything reachable from `w` by deleting
/// adjacent inverse pairs and swapping adjacent letters of commuting generators.
pub fn slow_raag_normal_form(g: &sigma_core::raag::SimpleGraph, w: &Word) -> Word {
    use std::collections::{BTreeSet, VecDeque};
    let start = w.letters().to_vec();
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for i in 0..v.len().saturating_sub(1) {
            let (x, y) = (v[i], v[i + 1]);
            let mut next = Vec::new();
            if x.cancels(y) {
                let mut u = v.clone();
                u.drain(i..i + 2);
                next.push(u);
            }
            if x.gen != y.gen && g.adjacent(x.gen, y.gen) {
                let mut u = v.clone();
                u.swap(i, i + 1);
                next.push(u);
            }
            for u in next {
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    let best = seen
        .into_iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .unwrap();
    Word::new(best)
}
