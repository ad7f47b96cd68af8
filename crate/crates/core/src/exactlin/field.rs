//! Scalar fields.
//!
//! A [`Field`] is a small context object (the rationals are a unit struct, a
//! prime field carries its modulus) that performs arithmetic on plain element
//! values. Everything above this layer is generic over the field; only the
//! elimination kernels are specialized.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::rational::{common_denominator, Rational};
use crate::error::Error;

pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;
    type Reducer: RowReducer<Self::Elem>;

    /// Instance-file spelling: `rational` or `gf(p)`.
    fn name(&self) -> String;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational, or `None` when its denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;
    /// A rational representative (the residue in `0..p` for prime fields).
    fn to_rational(&self, x: &Self::Elem) -> Rational;

    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    /// Rank of `m`. Defaults to textbook Gaussian elimination.
    fn rank(&self, m: &Matrix<Self::Elem>) -> usize {
        super::elim::gauss_rank(self, m)
    }

    /// An empty incremental row basis for vectors of length `cols`.
    fn reducer(&self, cols: usize) -> Self::Reducer;

    /// A scalar multiple of `v` with the smallest convenient entries. The
    /// rationals return a primitive integer vector; other fields return `v`.
    fn integral_representative(&self, v: &[Self::Elem]) -> Vec<Self::Elem> {
        v.to_vec()
    }
}

/// Incremental row echelon basis: rows are offered one at a time and kept
/// only when independent of what is already stored.
pub trait RowReducer<E> {
    /// Returns `true` when `row` was independent (and is now part of the basis).
    fn insert(&mut self, row: &[E]) -> bool;
    fn rank(&self) -> usize;
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;
    type Reducer = FractionFreeReducer;

    fn name(&self) -> String {
        "rational".to_string()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_i64(&self, v: i64) -> Rational {
        Rational::from(v)
    }

    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }

    fn to_rational(&self, x: &Rational) -> Rational {
        x.clone()
    }

    fn is_zero(&self, x: &Rational) -> bool {
        x.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.recip()
    }

    fn rank(&self, m: &Matrix<Rational>) -> usize {
        super::elim::bareiss_rank(integer_rows(m.rows_iter()))
    }

    fn reducer(&self, cols: usize) -> FractionFreeReducer {
        FractionFreeReducer::new(cols)
    }

    fn integral_representative(&self, v: &[Rational]) -> Vec<Rational> {
        super::rational::primitive_integer_vector(v)
            .into_iter()
            .map(Rational::from)
            .collect()
    }
}

/// Clears denominators row by row.
pub(crate) fn integer_rows<'a>(rows: impl Iterator<Item = &'a [Rational]>) -> Vec<Vec<BigInt>> {
    rows.map(|row| {
        let den = common_denominator(row);
        row.iter().map(|q| q.numer() * (&den / q.denom())).collect()
    })
    .collect()
}

/// Row basis over the rationals kept as primitive integer rows in echelon form.
#[derive(Clone, Debug)]
pub struct FractionFreeReducer {
    cols: usize,
    // (pivot column, primitive row with positive pivot), sorted by pivot
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl FractionFreeReducer {
    pub fn new(cols: usize) -> Self {
        FractionFreeReducer { cols, rows: Vec::new() }
    }

    fn reduce(&self, mut row: Vec<BigInt>) -> Vec<BigInt> {
        for (pivot, basis) in &self.rows {
            if row[*pivot].is_zero() {
                continue;
            }
            let factor = row[*pivot].clone();
            let scale = &basis[*pivot];
            for (r, b) in row.iter_mut().zip(basis.iter()) {
                *r = &*r * scale - &factor * b;
            }
            make_primitive(&mut row);
        }
        row
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let mut content = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            content = content.gcd(v);
            if content.is_one() {
                return;
            }
        }
    }
    if content.is_zero() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &content;
    }
}

impl RowReducer<Rational> for FractionFreeReducer {
    fn insert(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let mut ints = integer_rows(std::iter::once(row)).pop().unwrap();
        make_primitive(&mut ints);
        let mut reduced = self.reduce(ints);
        let Some(pivot) = reduced.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        if reduced[pivot].is_negative() {
            for v in reduced.iter_mut() {
                *v = -&*v;
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, reduced));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// The prime field of integers modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Fails unless `p` is prime.
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().unwrap()
    }

    fn pow(&self, base: u64, exp: u64) -> u64 {
        powmod(base, exp, self.p)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = powmod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;
    type Reducer = ModularReducer;

    fn name(&self) -> String {
        format!("gf({})", self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let den = self.reduce_big(q.denom());
        let inv = self.inv(&den)?;
        Some(mulmod(self.reduce_big(q.numer()), inv, self.p))
    }

    fn to_rational(&self, x: &u64) -> Rational {
        Rational::from_integer(*x)
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn reducer(&self, cols: usize) -> ModularReducer {
        ModularReducer { field: *self, cols, rows: Vec::new() }
    }
}

/// Row basis over a prime field, rows scaled to pivot 1.
#[derive(Clone, Debug)]
pub struct ModularReducer {
    field: PrimeField,
    cols: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl RowReducer<u64> for ModularReducer {
    fn insert(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let f = &self.field;
        let mut row = row.to_vec();
        for (pivot, basis) in &self.rows {
            let factor = row[*pivot];
            if factor == 0 {
                continue;
            }
            for (r, b) in row.iter_mut().zip(basis.iter()) {
                *r = f.sub(r, &f.mul(&factor, b));
            }
        }
        let Some(pivot) = row.iter().position(|v| *v != 0) else {
            return false;
        };
        let inv = f.inv(&row[pivot]).unwrap();
        for v in row.iter_mut() {
            *v = f.mul(v, &inv);
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, row));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(3_215_031_751));
        assert!(PrimeField::new(91).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        let half: Rational = "1/2".parse().unwrap();
        assert_eq!(f.from_rational(&half), Some(4));
        let bad: Rational = "1/14".parse().unwrap();
        assert_eq!(f.from_rational(&bad), None);
        assert_eq!(f.name(), "gf(7)");
    }

    #[test]
    fn reducers_agree_on_small_example() {
        let q = |s: &str| s.parse::<Rational>().unwrap();
        let rows = [
            vec![q("1"), q("2"), q("3")],
            vec![q("2"), q("4"), q("6")],
            vec![q("0"), q("1/2"), q("1")],
            vec![q("1"), q("5/2"), q("4")],
        ];
        let mut red = Rationals.reducer(3);
        let kept: Vec<bool> = rows.iter().map(|r| red.insert(r)).collect();
        assert_eq!(kept, vec![true, false, true, false]);
        assert_eq!(red.rank(), 2);

        let f = PrimeField::new(101).unwrap();
        let mut red = f.reducer(3);
        for r in &rows {
            let v: Vec<u64> = r.iter().map(|x| f.from_rational(x).unwrap()).collect();
            red.insert(&v);
        }
        assert_eq!(red.rank(), 2);
    }
}
