use std::collections::BTreeMap;
use std::fmt;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::combinatorics::binom;
use crate::exactlin::Field;
use crate::forms::FormCollection;

use super::RankTable;

/// Bivariate integer polynomial keyed by `(x exponent, y exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TuttePoly {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl TuttePoly {
    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        let mut p = TuttePoly::default();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = TuttePoly::default();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        let entry = self.coeffs.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.coeffs
    }

    pub fn add(&self, other: &TuttePoly) -> TuttePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &TuttePoly) -> TuttePoly {
        let mut out = TuttePoly::default();
        for (&(i, j), c) in &self.coeffs {
            for (&(u, v), d) in &other.coeffs {
                out.add_term(i + u, j + v, c * d);
            }
        }
        out
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize))
            .sum()
    }
}

impl fmt::Display for TuttePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.coeffs.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let mut parts = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                parts.push(abs.to_string());
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

struct Terms<'a>(&'a BTreeMap<(u32, u32), BigInt>);

struct Term<'a>(u32, u32, &'a BigInt);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Term", 3)?;
        st.serialize_field("c", &self.2.to_string())?;
        st.serialize_field("x", &self.0)?;
        st.serialize_field("y", &self.1)?;
        st.end()
    }
}

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for (&(i, j), c) in self.0 {
            seq.serialize_element(&Term(i, j, c))?;
        }
        seq.end()
    }
}

impl Serialize for TuttePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TuttePoly", 1)?;
        st.serialize_field("terms", &Terms(&self.coeffs))?;
        st.end()
    }
}

/// `1 + y + ... + y^(m-1)`, plus `x` in place of the final `1` for coloop classes.
fn class_factor(m: usize, coloop: bool) -> TuttePoly {
    let mut p = TuttePoly::from_terms((1..m as u32).map(|j| ((0, j), BigInt::one())));
    if coloop {
        p.add_term(1, 0, BigInt::one());
    } else {
        p.add_term(0, 0, BigInt::one());
    }
    p
}

/// Memoized deletion-contraction on parallel classes.
#[derive(Debug)]
pub struct TutteEngine<F: Field> {
    cache: DashMap<FormCollection<F>, TuttePoly>,
}

impl<F: Field> Default for TutteEngine<F> {
    fn default() -> Self {
        TutteEngine { cache: DashMap::new() }
    }
}

impl<F: Field> TutteEngine<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn polynomial(&self, sigma: &FormCollection<F>) -> TuttePoly {
        if let Some(hit) = self.cache.get(sigma) {
            return hit.clone();
        }
        let result = self.compute(sigma);
        self.cache.insert(sigma.clone(), result.clone());
        result
    }

    fn compute(&self, sigma: &FormCollection<F>) -> TuttePoly {
        let m = sigma.groups()[0].mult;
        let (contracted, _) = sigma.contract(0);
        let c = contracted.map_or_else(TuttePoly::one, |rest| self.polynomial(&rest));
        let mut mults = sigma.multiplicities();
        mults[0] = 0;
        let deleted = sigma.with_multiplicities(&mults);
        let rank_after = deleted.as_ref().map_or(0, FormCollection::rank);
        if rank_after < sigma.rank() {
            class_factor(m, true).mul(&c)
        } else {
            let d = self.polynomial(deleted.as_ref().expect("nonempty when rank is kept"));
            d.add(&class_factor(m, false).mul(&c))
        }
    }
}

/// Tutte polynomial of the column matroid.
pub fn tutte_polynomial<F: Field>(sigma: &FormCollection<F>) -> TuttePoly {
    TutteEngine::new().polynomial(sigma)
}

/// The subset-sum definition `sum_I (x-1)^(r - r(I)) (y-1)^(|I| - r(I))`.
pub fn tutte_polynomial_subset_sum<F: Field>(sigma: &FormCollection<F>) -> TuttePoly {
    let n = sigma.n();
    assert!(n < 64, "subset enumeration needs n < 64");
    let r = sigma.rank();
    let table = RankTable::new(sigma);
    let mut hist: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        *hist.entry((table.rank(mask), mask.count_ones() as usize)).or_default() += 1;
    }
    let mut out = TuttePoly::default();
    for ((ri, size), count) in hist {
        let (p, q) = ((r - ri) as i64, (size - ri) as i64);
        for u in 0..=p {
            for v in 0..=q {
                let sign = if (p - u + q - v) % 2 == 0 { 1 } else { -1 };
                let c = BigInt::from(count) * binom(p, u) * binom(q, v) * sign;
                out.add_term(u as u32, v as u32, c);
            }
        }
    }
    out
}

/// Coefficients `c_{i,j}` of `T(x + 1, y)`.
pub fn tutte_shifted_coeffs(tp: &TuttePoly) -> TuttePoly {
    let mut out = TuttePoly::default();
    for (&(i, j), c) in tp.terms() {
        for u in 0..=i {
            out.add_term(u, j, c * binom(i as i64, u as i64));
        }
    }
    out
}
