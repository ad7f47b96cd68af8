//! Brute-force ground truth.
//!
//! Hilbert functions come from exact ranks of coefficient matrices in the
//! monomial basis; Betti numbers follow from them because the resolution is
//! linear. The first Betti number is also available through the span of the
//! relations produced by circuits of the matroid.

mod monomials;

use std::collections::{BTreeMap, HashMap};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::betti::BettiTable;
use crate::combinatorics::{binom, choose, lex_rank};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, Field, RowReducer};
use crate::forms::FormCollection;
use crate::matroid::circuits_up_to;

pub use monomials::MonomialBasis;

/// Size limits past which the oracle refuses to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest allowed `C(n, n - a)`.
    pub max_subsets: u128,
    /// Largest allowed number of matrix cells in one rank computation.
    pub max_cells: u128,
}

impl OracleLimits {
    pub const ENV_CELL_LIMIT: &'static str = "FOLDBETTI_ORACLE_CELL_LIMIT";

    /// Defaults, with the cell limit taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = OracleLimits::default();
        if let Ok(v) = std::env::var(Self::ENV_CELL_LIMIT) {
            limits.max_cells = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{} must be a nonnegative integer, got {v:?}", Self::ENV_CELL_LIMIT)))?;
        }
        Ok(limits)
    }

    fn check_subsets(&self, n: usize, a: usize) -> Result<()> {
        let count = choose(n, n - a);
        if count > self.max_subsets {
            return Err(Error::Guardrail(format!("C({n}, {}) = {count} exceeds {}", n - a, self.max_subsets)));
        }
        Ok(())
    }

    fn check_cells(&self, rows: usize, cols: usize) -> Result<()> {
        let cells = rows as u128 * cols as u128;
        if cells > self.max_cells {
            return Err(Error::Guardrail(format!("{rows}x{cols} matrix exceeds {} cells", self.max_cells)));
        }
        Ok(())
    }
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_subsets: 200_000, max_cells: 5_000_000 }
    }
}

/// The `a`-fold products: their number counted by position, and the distinct ones
/// as coefficient vectors in the degree-`a` monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldGenerators<E> {
    pub basis: MonomialBasis,
    pub total: u128,
    pub distinct: Vec<Vec<E>>,
}

/// Expands every product of `a` forms chosen by position. Products that differ only
/// in which copy of a repeated form they use are equal and kept once.
pub fn fold_generators<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<FoldGenerators<F::Elem>> {
    fold_generators_limited(sigma, a, &OracleLimits::default())
}

fn fold_generators_limited<F: Field>(
    sigma: &FormCollection<F>,
    a: usize,
    limits: &OracleLimits,
) -> Result<FoldGenerators<F::Elem>> {
    let n = sigma.n();
    if a == 0 || a > n {
        return Err(Error::FoldOutOfRange { a, n });
    }
    limits.check_subsets(n, a)?;
    let field = sigma.field();
    let k = sigma.k();
    let forms: Vec<Vec<F::Elem>> = sigma.groups().iter().map(|g| field.integral_representative(g.form.coeffs())).collect();
    let mults = sigma.multiplicities();
    let bases: Vec<MonomialBasis> = (0..a).map(|d| MonomialBasis::new(k, d)).collect();
    let mut suffix = vec![0usize; forms.len() + 1];
    for g in (0..forms.len()).rev() {
        suffix[g] = suffix[g + 1] + mults[g];
    }
    let mut distinct = Vec::new();
    let mut stack = vec![(0usize, 0usize, vec![field.one()])];
    while let Some((g, deg, poly)) = stack.pop() {
        if deg == a {
            distinct.push(poly);
            continue;
        }
        if deg + suffix[g] < a {
            continue;
        }
        stack.push((g + 1, deg, poly.clone()));
        let mut p = poly;
        for d in deg..deg + mults[g].min(a - deg) {
            p = bases[d].multiply_linear(field, &p, &forms[g]);
            stack.push((g + 1, d + 1, p.clone()));
        }
    }
    Ok(FoldGenerators { basis: MonomialBasis::new(k, a), total: choose(n, a), distinct })
}

/// Values of the Hilbert function of `I_a` at consecutive degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFReport {
    pub a: usize,
    pub values: BTreeMap<usize, usize>,
}

impl Serialize for HFReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let hf: BTreeMap<String, usize> = self.values.iter().map(|(d, v)| (d.to_string(), *v)).collect();
        let mut st = serializer.serialize_struct("HFReport", 2)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("hf", &hf)?;
        st.end()
    }
}

/// `HF(I_a, d)` for `d` in `degrees` (all at least `a`), in the ambient ring of `sigma`.
///
/// Keeps an independent spanning set of each graded piece: degree `d + 1` is spanned
/// by `x_j` times the kept rows of degree `d`.
pub fn hilbert_function_range<F: Field>(
    sigma: &FormCollection<F>,
    a: usize,
    degrees: std::ops::RangeInclusive<usize>,
    limits: &OracleLimits,
) -> Result<HFReport> {
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if lo < a {
        return Err(Error::InvalidArgument(format!("degree {lo} is below the generator degree {a}")));
    }
    let field = sigma.field();
    let k = sigma.k();
    let gens = fold_generators_limited(sigma, a, limits)?;
    let mut basis = gens.basis;
    limits.check_cells(gens.distinct.len(), basis.len())?;
    let mut reducer = field.reducer(basis.len());
    let mut rows: Vec<Vec<F::Elem>> = gens.distinct.into_iter().filter(|r| reducer.insert(r)).collect();
    let mut values = BTreeMap::new();
    for d in a..=hi {
        if d >= lo {
            values.insert(d, rows.len());
        }
        if d == hi {
            break;
        }
        let next = MonomialBasis::new(k, d + 1);
        limits.check_cells(rows.len() * k, next.len())?;
        let mut reducer = field.reducer(next.len());
        let mut kept = Vec::new();
        for row in &rows {
            for j in 0..k {
                let shifted = basis.multiply_variable(field, row, j);
                if reducer.insert(&shifted) {
                    kept.push(shifted);
                }
            }
        }
        rows = kept;
        basis = next;
    }
    Ok(HFReport { a, values })
}

/// `HF(I_a, d)` for a single degree `d >= a`.
pub fn hilbert_function<F: Field>(sigma: &FormCollection<F>, a: usize, d: usize) -> Result<usize> {
    if d < a {
        return Err(Error::InvalidArgument(format!("degree {d} is below the generator degree {a}")));
    }
    let report = hilbert_function_range(sigma, a, d..=d, &OracleLimits::from_env()?)?;
    Ok(report.values[&d])
}

/// Betti table from Hilbert function values through the linear resolution:
/// `b_i = sum_{j=1}^{i-1} (-1)^(j-1) C(k+j-1, j) b_{i-j} + (-1)^(i-1) HF(I_a, a+i-1)`.
pub fn betti_from_hilbert<F: Field>(sigma: &FormCollection<F>, a: usize, limits: &OracleLimits) -> Result<BettiTable> {
    let ess = sigma.essentialize();
    let (n, k) = (ess.n(), ess.k());
    if a == 0 || a > n {
        return Err(Error::FoldOutOfRange { a, n });
    }
    let hf = hilbert_function_range(&ess, a, a..=a + k - 1, limits)?;
    let mut b: Vec<i128> = Vec::with_capacity(k);
    for i in 1..=k {
        let sign = |e: usize| if e.is_multiple_of(2) { 1i128 } else { -1 };
        let mut v = sign(i - 1) * hf.values[&(a + i - 1)] as i128;
        for j in 1..i {
            v += sign(j - 1) * binom((k + j - 1) as i64, j as i64) * b[i - j - 1];
        }
        if v < 0 {
            return Err(Error::LinearResolutionViolated(format!("b_{i}({a}) = {v}")));
        }
        b.push(v);
    }
    let table = BettiTable { a, k, b: b.into_iter().map(|v| v as u64).collect() };
    if !table.tail_vanishes() {
        return Err(Error::LinearResolutionViolated(format!("table {table} has a gap")));
    }
    Ok(table)
}

/// Relations among the `(n-a)`-subsets induced by short circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpace<E> {
    pub a: usize,
    pub ambient_dim: usize,
    pub generators: Vec<Vec<(usize, E)>>,
    pub rank: usize,
}

/// For each circuit `J` with `|J| = s <= n - a + 1`, dependency `sum λ_i ℓ_{j_i} = 0`
/// scaled so `λ_1 = 1`, and each `D ⊆ [n] \ J` of size `n - s + 1 - a`, the vector with
/// entry `λ_i` at the `(n-a)`-subset `D ∪ (J \ {j_i})`.
pub fn relation_space<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<RelationSpace<F::Elem>> {
    relation_space_limited(sigma, a, &OracleLimits::default())
}

pub fn relation_space_limited<F: Field>(
    sigma: &FormCollection<F>,
    a: usize,
    limits: &OracleLimits,
) -> Result<RelationSpace<F::Elem>> {
    let n = sigma.n();
    if a == 0 || a >= n {
        return Err(Error::InvalidArgument(format!("relation space needs 1 <= a <= n - 1, got a = {a}, n = {n}")));
    }
    limits.check_subsets(n, a)?;
    let field = sigma.field();
    let matrix = sigma.coefficient_matrix();
    let mut generators = Vec::new();
    for circuit in circuits_up_to(sigma, n - a + 1) {
        let s = circuit.len();
        let kernel = kernel_basis(field, &matrix.select_columns(&circuit));
        debug_assert_eq!(kernel.len(), 1);
        let lead = field.inv(&kernel[0][0]).expect("circuit dependencies have full support");
        let lambda: Vec<F::Elem> = kernel[0].iter().map(|x| field.mul(x, &lead)).collect();
        let outside: Vec<usize> = (0..n).filter(|c| !circuit.contains(c)).collect();
        for d in itertools::Itertools::combinations(outside.iter().copied(), n + 1 - s - a) {
            let vector = (0..s)
                .map(|i| {
                    let mut set: Vec<usize> = d.iter().copied().chain(circuit.iter().copied().filter(|&c| c != circuit[i])).collect();
                    set.sort_unstable();
                    (lex_rank(&set, n), lambda[i].clone())
                })
                .collect();
            generators.push(vector);
        }
    }
    let rank = sparse_rank(field, &generators, limits)?;
    Ok(RelationSpace { a, ambient_dim: choose(n, n - a) as usize, generators, rank })
}

fn sparse_rank<F: Field>(field: &F, rows: &[Vec<(usize, F::Elem)>], limits: &OracleLimits) -> Result<usize> {
    let mut used: Vec<usize> = rows.iter().flatten().map(|(c, _)| *c).collect();
    used.sort_unstable();
    used.dedup();
    limits.check_cells(rows.len(), used.len())?;
    let position: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut reducer = field.reducer(used.len());
    for row in rows {
        let mut dense = vec![field.zero(); used.len()];
        for (c, v) in row {
            dense[position[c]] = field.add(&dense[position[c]], v);
        }
        reducer.insert(&dense);
    }
    Ok(reducer.rank())
}

/// `b_1 = C(n, n - a) - rank(relation space)`.
pub fn b1_via_circuits<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<u64> {
    b1_via_circuits_limited(sigma, a, &OracleLimits::default())
}

pub fn b1_via_circuits_limited<F: Field>(sigma: &FormCollection<F>, a: usize, limits: &OracleLimits) -> Result<u64> {
    let space = relation_space_limited(sigma, a, limits)?;
    Ok((space.ambient_dim - space.rank) as u64)
}
