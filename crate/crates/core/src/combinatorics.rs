//! Binomials and subset bookkeeping.

/// `C(n, k)`, with the convention that it is zero whenever `n < 0`, `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `C(n, k)` for unsigned arguments.
pub fn choose(n: usize, k: usize) -> u128 {
    binom(n as i64, k as i64) as u128
}

/// Position of the sorted `subset` among all `subset.len()`-subsets of `0..n`
/// listed in lexicographic order.
pub fn lex_rank(subset: &[usize], n: usize) -> usize {
    let m = subset.len();
    let mut rank: u128 = 0;
    let mut next = 0;
    for (i, &c) in subset.iter().enumerate() {
        for skipped in next..c {
            rank += choose(n - 1 - skipped, m - 1 - i);
        }
        next = c + 1;
    }
    rank as usize
}

/// Iterator over the bits set in a subset mask.
pub fn mask_members(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}
