//! Betti tables of fold-product ideals.
//!
//! Every ideal `I_a` has a linear resolution, so a table is just the vector
//! `(b_1, ..., b_k)` with `k` the effective rank of the collection. The closed
//! forms here cover the special regimes; [`BettiEngine`] dispatches between them
//! and falls back to deletion-contraction.

mod engine;

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binom;
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::forms::FormCollection;
use crate::matroid::{
    every_subset_independent, hamming_weights, height_from_weights, rank2_flats, tutte_shifted_coeffs, TutteEngine,
};

pub use engine::{betti_k3_block, betti_recursion, compute_betti, BettiEngine, Method};

/// Betti numbers `b_1..b_k` of `I_a`, with `k` the effective rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiTable {
    pub a: usize,
    pub k: usize,
    pub b: Vec<u64>,
}

impl BettiTable {
    pub fn zero(a: usize, k: usize) -> Self {
        BettiTable { a, k, b: vec![0; k] }
    }

    /// Table of a principal ideal, also used for `I_0 = R`.
    pub fn principal(a: usize, k: usize) -> Self {
        let mut b = vec![0; k.max(1)];
        b[0] = 1;
        BettiTable { a, k: b.len(), b }
    }

    fn from_signed(a: usize, k: usize, values: Vec<i128>) -> Result<Self> {
        let b = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                u64::try_from(v).map_err(|_| Error::Precondition(format!("b_{} = {v} is not a valid Betti number", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BettiTable { a, k, b })
    }

    /// `b_i` for `i >= 1`, zero outside the stored range.
    pub fn get(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.b.get(i - 1).copied().unwrap_or(0)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.b.iter().all(|&v| v == 0)
    }

    /// Index of the last nonzero entry, 0 for the zero ideal.
    pub fn pdim(&self) -> usize {
        self.b.iter().rposition(|&v| v != 0).map_or(0, |p| p + 1)
    }

    /// Whether the nonzero entries form a prefix.
    pub fn tail_vanishes(&self) -> bool {
        self.b.iter().skip_while(|&&v| v != 0).all(|&v| v == 0)
    }

    /// The same table over `k >= self.k` variables; inert variables change no `b_i`.
    pub fn padded(mut self, k: usize) -> Self {
        if k > self.b.len() {
            self.b.resize(k, 0);
        }
        self.k = self.b.len();
        self
    }

    pub fn with_fold(mut self, a: usize) -> Self {
        self.a = a;
        self
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} k={} b=({})", self.a, self.k, self.b.iter().join(", "))
    }
}

fn check_fold(a: usize, n: usize) -> Result<()> {
    if a == 0 || a > n {
        Err(Error::FoldOutOfRange { a, n })
    } else {
        Ok(())
    }
}

/// `b_i = C(k+a-1, a+i-1) C(a+i-2, a-1)`, the resolution of `m^a`.
pub fn betti_maximal_power(k: usize, a: usize) -> BettiTable {
    if a == 0 {
        return BettiTable::principal(0, k);
    }
    let (k, a) = (k as i64, a as i64);
    let b = (1..=k).map(|i| (binom(k + a - 1, a + i - 1) * binom(a + i - 2, a - 1)) as u64).collect();
    BettiTable { a: a as usize, k: k as usize, b }
}

/// Fills `b_2..b_k` from `b_1` when the height is `k - 1`:
/// `b_i = sum_{j=0}^{k-2} C(j, i-2) (b_1 - C(a+j, j))`.
pub fn betti_from_b1_height_km1(k: usize, a: usize, b1: u64) -> Result<BettiTable> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let (ki, ai, b1i) = (k as i64, a as i64, b1 as i128);
    let mut values = vec![b1i];
    for i in 2..=ki {
        values.push((0..=ki - 2).map(|j| binom(j, i - 2) * (b1i - binom(ai + j, j))).sum());
    }
    BettiTable::from_signed(a, k, values)
}

/// Rank at most 2: `(e + 1, e)`, or `(1)` in rank 1.
pub fn betti_rank2<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<BettiTable> {
    let ess = sigma.essentialize();
    check_fold(a, ess.n())?;
    match ess.k() {
        1 => Ok(BettiTable::principal(a, 1)),
        2 => {
            let e = ess.reduction_data(a)?.e as u64;
            Ok(BettiTable { a, k: 2, b: vec![e + 1, e] })
        }
        r => Err(Error::Precondition(format!("rank-2 formula needs effective rank at most 2, got {r}"))),
    }
}

/// Strips `e_i` copies of each form and lowers the fold to `e`; `b_i(a, sigma) = b_i(e, result)`.
pub fn betti_height1_reduce<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<(FormCollection<F>, usize)> {
    let n = sigma.n();
    check_fold(a, n)?;
    if a == n {
        return Err(Error::Precondition("a = n is the principal case".into()));
    }
    let ess = sigma.essentialize();
    let height = height_from_weights(&hamming_weights(&ess)?, a);
    if height != 1 {
        return Err(Error::Precondition(format!("height of I_{a} is {height}, not 1")));
    }
    let red = ess.reduction_data(a)?;
    let mults: Vec<usize> = ess.multiplicities().iter().zip(&red.e_list).map(|(m, e)| m - e).collect();
    let reduced = ess
        .with_multiplicities(&mults)
        .ok_or_else(|| Error::Precondition("reduction removed every form".into()))?;
    Ok((reduced, red.e))
}

/// `a = n - 1`: `(t, t - 1, 0, ...)`.
pub fn betti_nminus1<F: Field>(sigma: &FormCollection<F>) -> Result<BettiTable> {
    let n = sigma.n();
    if n < 2 {
        return Err(Error::Precondition("a = n - 1 needs n >= 2".into()));
    }
    let k = sigma.rank();
    let t = sigma.t() as u64;
    let mut table = BettiTable::zero(n - 1, k);
    table.b[0] = t;
    if k > 1 {
        table.b[1] = t - 1;
    }
    Ok(table)
}

/// Cohen-Macaulay case for `(n - a)`-generic collections:
/// `b_i = C(n, i+a-1) C(i+a-2, a-1)` for `i <= n - a + 1`.
pub fn betti_cm_generic<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<BettiTable> {
    let ess = sigma.essentialize();
    let (n, k) = (ess.n(), ess.k());
    check_fold(a, n)?;
    if a + k < n + 1 {
        return Err(Error::Precondition(format!("need a >= n - k + 1, got a = {a}, n = {n}, k = {k}")));
    }
    let h = (n - a + 1).min(k);
    if !every_subset_independent(&ess, h) {
        return Err(Error::Precondition("not (n-a)-generic".into()));
    }
    let (ni, ai) = (n as i64, a as i64);
    let b = (1..=k as i64)
        .map(|i| if i <= ni - ai + 1 { (binom(ni, i + ai - 1) * binom(i + ai - 2, ai - 1)) as u64 } else { 0 })
        .collect();
    Ok(BettiTable { a, k, b })
}

/// `a = n - 2` on a simple arrangement of rank at least 3, from `alpha = C(n, 2)` and
/// `beta = sum over rank-2 flats X of C(|X| - 1, 2)`.
pub fn betti_nminus2_arrangement<F: Field>(sigma: &FormCollection<F>) -> Result<BettiTable> {
    let ess = sigma.essentialize();
    let (n, k) = (ess.n(), ess.k());
    if !ess.is_simple() {
        return Err(Error::Precondition("arrangement must be simple".into()));
    }
    if k < 3 {
        return Err(Error::Precondition(format!("need effective rank at least 3, got {k}")));
    }
    let alpha = binom(n as i64, 2);
    let beta: i128 = rank2_flats(&ess)?.iter().map(|f| binom(f.size as i64 - 1, 2)).sum();
    let ni = n as i128;
    let mut values = vec![alpha - beta, 2 * alpha - ni - 2 * beta, alpha - ni - beta + 1];
    values.resize(k, 0);
    BettiTable::from_signed(n - 2, k, values)
}

/// Number of degree-`a` monomials in `k` variables with exponent of `x_i` at most `m_i`.
pub fn b1_veronese(m: &[usize], k: usize, a: usize) -> Result<u64> {
    if m.len() != k {
        return Err(Error::InvalidArgument(format!("{} caps given for {k} variables", m.len())));
    }
    let top = (a + k) as i64 - 1;
    let low = k as i64 - 1;
    let mut total: i128 = 0;
    for subset in (0..k).powerset() {
        let shift: i64 = subset.iter().map(|&i| m[i] as i64 + 1).sum();
        let sign = if subset.len() % 2 == 0 { 1 } else { -1 };
        total += sign * binom(top - shift, low);
    }
    Ok(total as u64)
}

/// First Betti number of `(x1 ×m1, x2 ×m2, x3 ×m3)` in the window left open by the Veronese count.
pub fn b1_k3_veronese(m1: usize, m2: usize, m3: usize, a: usize) -> Result<u64> {
    let ok = m1 >= m2 && m2 >= m3 && m3 >= 1 && m1 >= m3 + 2 && m3 < a && a <= m2 + m3 && a < m1;
    if !ok {
        return Err(Error::Precondition(format!("(m1, m2, m3, a) = ({m1}, {m2}, {m3}, {a}) outside the window")));
    }
    let (m1, m2, m3, a) = (m1 as i128, m2 as i128, m3 as i128, a as i128);
    let c = |n: i128| binom(n as i64, 2);
    let v = if a <= m2 {
        (m3 + 1) * (a + 1) - c(m3 + 1)
    } else {
        let n = m1 + m2 + m3;
        (a + 1) * (n - m1 - a + 1) + (a - m2) * (m2 + 1) + c(a - m2) - c(m3 + 1)
    };
    Ok(v as u64)
}

/// Simple rank-3 line arrangement whose points of maximal multiplicity `m` all lie on
/// one line of the arrangement: returns `(n - m + 1, C(n - m + 3, 2) - t)`, with `t`
/// the number of such points.
pub fn b1_singular_line_arrangement<F: Field>(sigma: &FormCollection<F>) -> Result<(usize, u64)> {
    let ess = sigma.essentialize();
    let n = ess.n();
    if !ess.is_simple() || ess.k() != 3 || n < 4 {
        return Err(Error::Precondition("need a simple rank-3 arrangement of at least 4 lines".into()));
    }
    let flats = rank2_flats(&ess)?;
    let m = flats.iter().map(|f| f.size).max().unwrap_or(0);
    if m < 3 {
        return Err(Error::Precondition("arrangement is generic".into()));
    }
    let maximal: Vec<_> = flats.iter().filter(|f| f.size == m).collect();
    let collinear = (0..ess.t()).any(|g| maximal.iter().all(|f| f.groups.contains(&g)));
    if !collinear {
        return Err(Error::Precondition("modular points not collinear".into()));
    }
    let b1 = binom((n - m + 3) as i64, 2) - maximal.len() as i128;
    Ok((n - m + 1, b1 as u64))
}

/// `b_1 = sum_{u=0}^{min(r, n-a)} c_{r-u, n-a-u}` from the shifted Tutte polynomial, `r` the rank.
pub fn b1_tutte<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<u64> {
    b1_tutte_with(&TutteEngine::new(), sigma, a)
}

pub fn b1_tutte_with<F: Field>(tutte: &TutteEngine<F>, sigma: &FormCollection<F>, a: usize) -> Result<u64> {
    let n = sigma.n();
    check_fold(a, n)?;
    let r = sigma.rank();
    let shifted = tutte_shifted_coeffs(&tutte.polynomial(sigma));
    let total: num_bigint::BigInt = (0..=r.min(n - a)).map(|u| shifted.coeff((r - u) as u32, (n - a - u) as u32)).sum();
    u64::try_from(total).map_err(|e| Error::Precondition(format!("b_1 out of range: {e}")))
}

/// Herzog-Kühl residuals: `sum (-1)^i b_i + 1` and, for `j = 1..height-1`,
/// `sum (-1)^i (a+i-1)(a+i-2)...(a+i-j) b_i`. All vanish for a correct table.
pub fn herzog_kuhl_residuals(table: &BettiTable, a: usize, height: usize) -> Vec<i128> {
    let sign = |i: usize| if i.is_multiple_of(2) { 1i128 } else { -1 };
    let mut out = Vec::with_capacity(height);
    out.push(1 + (1..=table.b.len()).map(|i| sign(i) * table.get(i) as i128).sum::<i128>());
    for j in 1..height {
        let r: i128 = (1..=table.b.len())
            .map(|i| {
                let falling: i128 = (1..=j).map(|s| (a + i) as i128 - s as i128).product();
                sign(i) * falling * table.get(i) as i128
            })
            .sum();
        out.push(r);
    }
    out
}
