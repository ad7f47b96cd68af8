use std::str::FromStr;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use super::*;
use crate::oracle::{betti_from_hilbert, OracleLimits};

/// How a Betti table is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Recursion,
    TutteHk,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Recursion => "recursion",
            Method::TutteHk => "tutte_hk",
            Method::Oracle => "oracle",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "recursion" => Ok(Method::Recursion),
            "tutte_hk" => Ok(Method::TutteHk),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Memoized Betti computations over one field.
#[derive(Debug)]
pub struct BettiEngine<F: Field> {
    memo: DashMap<(FormCollection<F>, usize), BettiTable>,
    tutte: TutteEngine<F>,
    tutte_threshold: usize,
    limits: OracleLimits,
}

impl<F: Field> Default for BettiEngine<F> {
    fn default() -> Self {
        BettiEngine {
            memo: DashMap::new(),
            tutte: TutteEngine::new(),
            tutte_threshold: Self::DEFAULT_TUTTE_THRESHOLD,
            limits: OracleLimits::default(),
        }
    }
}

impl<F: Field> BettiEngine<F> {
    pub const DEFAULT_TUTTE_THRESHOLD: usize = 16;

    pub fn new() -> Self {
        Self::default()
    }

    /// Largest `n` for which the height `k - 1` window uses the Tutte polynomial.
    pub fn with_tutte_threshold(mut self, threshold: usize) -> Self {
        self.tutte_threshold = threshold;
        self
    }

    pub fn with_oracle_limits(mut self, limits: OracleLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn tutte_threshold(&self) -> usize {
        self.tutte_threshold
    }

    pub fn oracle_limits(&self) -> &OracleLimits {
        &self.limits
    }

    pub fn tutte(&self) -> &TutteEngine<F> {
        &self.tutte
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Betti table of `I_a` by the dispatching recursion; `a > n` gives the zero table.
    pub fn betti(&self, sigma: &FormCollection<F>, a: usize) -> Result<BettiTable> {
        if a == 0 {
            return Err(Error::FoldOutOfRange { a, n: sigma.n() });
        }
        self.solve(sigma, a)
    }

    fn solve(&self, sigma: &FormCollection<F>, a: usize) -> Result<BettiTable> {
        let ess = sigma.essentialize();
        let (n, k) = (ess.n(), ess.k());
        if a == 0 {
            return Ok(BettiTable::principal(0, k));
        }
        if a > n {
            return Ok(BettiTable::zero(a, k));
        }
        let key = (ess, a);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let table = self.dispatch(&key.0, a)?;
        self.memo.insert(key, table.clone());
        Ok(table)
    }

    fn dispatch(&self, ess: &FormCollection<F>, a: usize) -> Result<BettiTable> {
        let (n, k) = (ess.n(), ess.k());
        if k <= 2 {
            return betti_rank2(ess, a);
        }
        let hw = hamming_weights(ess)?;
        if a <= hw.get(1) {
            return Ok(betti_maximal_power(k, a));
        }
        let height = height_from_weights(&hw, a);
        if height == 1 && a < n {
            let (reduced, e) = betti_height1_reduce(ess, a)?;
            return Ok(self.solve(&reduced, e)?.padded(k).with_fold(a));
        }
        if a == n {
            return Ok(BettiTable::principal(a, k));
        }
        if a + 1 == n {
            return betti_nminus1(ess);
        }
        if a + k > n && every_subset_independent(ess, n - a + 1) {
            return betti_cm_generic(ess, a);
        }
        if height + 1 == k && n <= self.tutte_threshold {
            let b1 = b1_tutte_with(&self.tutte, ess, a)?;
            return betti_from_b1_height_km1(k, a, b1);
        }
        self.delete_contract(ess, a)
    }

    /// `b_i(a, S) = b_i(a-1, S') + b_i(a, S̄) + b_{i-1}(a, S̄)` at the group of largest multiplicity.
    fn delete_contract(&self, ess: &FormCollection<F>, a: usize) -> Result<BettiTable> {
        let k = ess.k();
        let (left, right) = rayon::join(
            || match ess.delete(0) {
                Some(rest) => self.solve(&rest, a - 1),
                None if a == 1 => Ok(BettiTable::principal(0, k)),
                None => Ok(BettiTable::zero(a - 1, k)),
            },
            || match ess.contract(0).0 {
                Some(rest) => self.solve(&rest, a),
                None => Ok(BettiTable::zero(a, k)),
            },
        );
        let (left, right) = (left?.padded(k), right?.padded(k));
        let b = (1..=k).map(|i| left.get(i) + right.get(i) + right.get(i - 1)).collect();
        Ok(BettiTable { a, k, b })
    }

    /// Windows where the Tutte first Betti number and the Herzog-Kühl closure determine the table.
    pub fn tutte_hk(&self, sigma: &FormCollection<F>, a: usize) -> Result<BettiTable> {
        let ess = sigma.essentialize();
        let (n, k) = (ess.n(), ess.k());
        check_fold(a, n)?;
        if a == n {
            return Ok(BettiTable::principal(a, k));
        }
        let height = height_from_weights(&hamming_weights(&ess)?, a);
        if height == k {
            return Ok(betti_maximal_power(k, a));
        }
        let b1 = b1_tutte_with(&self.tutte, &ess, a)?;
        if height + 1 == k {
            return betti_from_b1_height_km1(k, a, b1);
        }
        if height == 1 {
            let (reduced, e) = betti_height1_reduce(&ess, a)?;
            let red = reduced.essentialize();
            if e >= 1 && red.k() == k && height_from_weights(&hamming_weights(&red)?, e) + 1 == k {
                return Ok(betti_from_b1_height_km1(k, e, b1)?.with_fold(a));
            }
        }
        Err(Error::HeightWindowUnsupported(format!("height {height} with k = {k} at a = {a}")))
    }

    /// Same table as the recursion, with each pivot group removed in one block step (rank 3 only).
    pub fn k3_block(&self, sigma: &FormCollection<F>, a: usize) -> Result<BettiTable> {
        let ess = sigma.essentialize();
        if ess.k() != 3 {
            return Err(Error::Precondition(format!("block elimination needs effective rank 3, got {}", ess.k())));
        }
        if a == 0 {
            return Err(Error::FoldOutOfRange { a, n: ess.n() });
        }
        if a > ess.n() {
            return Ok(BettiTable::zero(a, 3));
        }
        let m1 = ess.groups()[0].mult;
        let bar = ess.contract(0).0;
        let jmax = m1.min(a);
        let mut b = vec![0u64; 3];
        for j in 0..jmax {
            let fold = a - j;
            let contr = match &bar {
                Some(bar) if fold <= bar.n() => betti_rank2(bar, fold)?.padded(3),
                _ => BettiTable::zero(fold, 3),
            };
            for (i, slot) in b.iter_mut().enumerate() {
                *slot += contr.get(i + 1) + contr.get(i);
            }
        }
        let tail = if jmax == a {
            BettiTable::principal(0, 3)
        } else {
            let mut mults = ess.multiplicities();
            mults[0] = 0;
            let fold = a - m1;
            match ess.with_multiplicities(&mults) {
                Some(tilde) if tilde.rank() == 3 => self.k3_block(&tilde, fold)?,
                Some(tilde) if fold <= tilde.n() => betti_rank2(&tilde, fold)?.padded(3),
                _ => BettiTable::zero(fold, 3),
            }
        };
        for (i, slot) in b.iter_mut().enumerate() {
            *slot += tail.get(i + 1);
        }
        Ok(BettiTable { a, k: 3, b })
    }

    /// Betti table by the requested method. Only `Auto` accepts `a > n`.
    pub fn compute(&self, sigma: &FormCollection<F>, a: usize, method: Method) -> Result<BettiTable> {
        let n = sigma.n();
        match method {
            Method::Auto => self.betti(sigma, a),
            _ if a == 0 || a > n => Err(Error::FoldOutOfRange { a, n }),
            Method::Recursion => self.betti(sigma, a),
            Method::TutteHk => self.tutte_hk(sigma, a),
            Method::Oracle => betti_from_hilbert(sigma, a, &self.limits),
        }
    }
}

/// [`BettiEngine::betti`] with a fresh engine.
pub fn betti_recursion<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<BettiTable> {
    BettiEngine::new().betti(sigma, a)
}

/// [`BettiEngine::k3_block`] with a fresh engine.
pub fn betti_k3_block<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<BettiTable> {
    BettiEngine::new().k3_block(sigma, a)
}

/// [`BettiEngine::compute`] with a fresh engine.
pub fn compute_betti<F: Field>(sigma: &FormCollection<F>, a: usize, method: Method) -> Result<BettiTable> {
    BettiEngine::new().compute(sigma, a, method)
}
