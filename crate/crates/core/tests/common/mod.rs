#![allow(dead_code)]

use foldbetti::exactlin::{Rational, Rationals};
use foldbetti::forms::FormCollection;
use foldbetti::matroid::every_subset_independent;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type Q = FormCollection<Rationals>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn forms(k: usize, list: &[&[i64]]) -> Q {
    FormCollection::from_int_forms(Rationals, k, list).unwrap()
}

pub fn with_mults(k: usize, list: &[(&[i64], usize)]) -> Q {
    let raw = list
        .iter()
        .map(|(v, m)| (v.iter().map(|&x| Rational::from(x)).collect(), *m))
        .collect();
    FormCollection::normalize(Rationals, raw, k).unwrap()
}

/// `(x1, x1, x2, x3, x1 - x3, x2 + x3, x1 + 2x2 + 5x3)`.
pub fn example_tutte() -> Q {
    forms(3, &[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, -1], &[0, 1, 1], &[1, 2, 5]])
}

/// `(x1 ×3, x2 ×2)`.
pub fn example_veronese() -> Q {
    with_mults(2, &[(&[1, 0], 3), (&[0, 1], 2)])
}

/// Eight lines, quadruple points at `(0:0:1)` and `(0:1:0)`, both on `V(x1)`.
pub fn example_two_pencils(last: &[i64]) -> Q {
    forms(
        3,
        &[&[1, 0, 0], &[1, 0, -1], &[1, 0, -2], &[1, 0, -3], &[0, 1, 0], &[1, -1, 0], &[1, -2, 0], last],
    )
}

fn random_vector(rng: &mut ChaCha8Rng, k: usize, lo: i64, hi: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..k).map(|_| rng.gen_range(lo..=hi)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Random collection with `k <= 3`, `n <= 8`, coefficients in `[-3, 3]`, multiplicities at most 3.
pub fn random_collection(rng: &mut ChaCha8Rng) -> Q {
    let k = rng.gen_range(1..=3);
    let n_target = rng.gen_range(1..=8);
    let mut raw: Vec<(Vec<Rational>, usize)> = Vec::new();
    let mut n = 0;
    while n < n_target {
        let m = rng.gen_range(1..=3usize).min(n_target - n);
        let v = random_vector(rng, k, -3, 3);
        raw.push((v.into_iter().map(Rational::from).collect(), m));
        n += m;
    }
    let c = FormCollection::normalize(Rationals, raw, k).unwrap();
    // proportional draws merge; cap the merged multiplicities again
    let capped: Vec<usize> = c.multiplicities().iter().map(|&m| m.min(3)).collect();
    c.with_multiplicities(&capped).unwrap()
}

/// Random simple arrangement of rank 3 with `4 <= n <= max_n` lines.
pub fn random_simple_rank3(rng: &mut ChaCha8Rng, max_n: usize, bound: i64) -> Q {
    loop {
        let n = rng.gen_range(4..=max_n);
        let vs: Vec<Vec<i64>> = (0..n).map(|_| random_vector(rng, 3, -bound, bound)).collect();
        let refs: Vec<&[i64]> = vs.iter().map(Vec::as_slice).collect();
        let c = forms(3, &refs);
        if c.is_simple() && c.n() == n && c.rank() == 3 {
            return c;
        }
    }
}

/// Random 2-generic arrangement of `n` lines in three variables.
pub fn random_generic_rank3(rng: &mut ChaCha8Rng, n: usize) -> Q {
    loop {
        let vs: Vec<Vec<i64>> = (0..n).map(|_| random_vector(rng, 3, -5, 5)).collect();
        let refs: Vec<&[i64]> = vs.iter().map(Vec::as_slice).collect();
        let c = forms(3, &refs);
        if c.n() == n && c.rank() == 3.min(n) && every_subset_independent(&c, 3.min(n)) {
            return c;
        }
    }
}

/// Multiplies the coefficients of group `g` by `scale`.
pub fn scale_group(c: &Q, g: usize, scale: &Rational) -> Q {
    let raw = c
        .groups()
        .iter()
        .enumerate()
        .map(|(h, grp)| {
            let coeffs = grp
                .form
                .coeffs()
                .iter()
                .map(|x| if h == g { x * scale } else { x.clone() })
                .collect();
            (coeffs, grp.mult)
        })
        .collect();
    FormCollection::normalize(Rationals, raw, c.k()).unwrap()
}
