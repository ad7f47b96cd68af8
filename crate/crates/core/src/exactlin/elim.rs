//! Elimination kernels: rank, reduced echelon form, kernels.
//!
//! Pivots are always the first nonzero entry scanning down the current column,
//! so reduced forms and kernel bases are deterministic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{Field, RowReducer};
use super::matrix::Matrix;
use crate::error::Error;

/// Rank by ordinary Gaussian elimination with field division.
pub fn gauss_rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

/// Rank of an integer matrix by single-step fraction-free (Bareiss) elimination.
/// Every intermediate entry is a minor of the input, so all divisions are exact.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = rows[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let (nrows, ncols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..ncols {
                let tmp = a.get(r, j).clone();
                a.set(r, j, a.get(p, j).clone());
                a.set(p, j, tmp);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..ncols {
            let v = field.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..nrows {
            if i == r || field.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..ncols {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right null space `{v : m v = 0}`, one vector per non-pivot column.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (reduced, pivots) = rref(field, m);
    let ncols = m.cols();
    let mut is_pivot = vec![None; ncols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    (0..ncols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(reduced.get(row, free));
            }
            v
        })
        .collect()
}

/// Rank of the matrix whose rows are `vectors`.
pub fn row_space_rank_of_stack<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Result<usize, Error> {
    let Some(len) = vectors.first().map(Vec::len) else {
        return Ok(0);
    };
    if let Some(i) = vectors.iter().position(|v| v.len() != len) {
        return Err(Error::InvalidArgument(format!(
            "vector {i} has length {}, expected {len}",
            vectors[i].len()
        )));
    }
    let mut reducer = field.reducer(len);
    for v in vectors {
        reducer.insert(v);
    }
    Ok(reducer.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rational, Rationals};
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        let g = qm(&[
            &[1, 1, 0, 0, 1, 0, 1],
            &[0, 0, 1, 0, 0, 1, 2],
            &[0, 0, 0, 1, -1, 1, 5],
        ]);
        assert_eq!(Rationals.rank(&g), 3);
        assert_eq!(Rationals.rank(&Matrix::from_rows(vec![], 0).unwrap()), 0);
        assert_eq!(Rationals.rank(&qm(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(gauss_rank(&Rationals, &qm(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        // columns x1, x3, x1 - x3
        let m = qm(&[&[1, 0, 1], &[0, 0, 0], &[0, 1, -1]]);
        let k = kernel_basis(&Rationals, &m);
        assert_eq!(k.len(), 1);
        let v: Vec<String> = k[0].iter().map(|x| x.to_string()).collect();
        // -x1 + x3 + (x1 - x3) = 0
        assert_eq!(v, vec!["-1", "1", "1"]);

        assert!(kernel_basis(&Rationals, &qm(&[&[1, 0], &[0, 1]])).is_empty());
        let k = kernel_basis(&Rationals, &qm(&[&[1, 1]]));
        assert_eq!(k, vec![vec![Rational::from(-1), Rational::from(1)]]);
    }

    #[test]
    fn stacked_rank() {
        let q = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        assert_eq!(row_space_rank_of_stack(&Rationals, &[]).unwrap(), 0);
        assert_eq!(
            row_space_rank_of_stack(&Rationals, &[q(&[1, 0]), q(&[0, 1]), q(&[1, 1])]).unwrap(),
            2
        );
        assert!(row_space_rank_of_stack(&Rationals, &[q(&[1, 0]), q(&[1])]).is_err());
    }

    #[test]
    fn prime_field_rank_can_drop() {
        // det = 5
        let m = qm(&[&[1, 2], &[3, 11]]);
        assert_eq!(Rationals.rank(&m), 2);
        let f = PrimeField::new(5).unwrap();
        let mp = Matrix::from_rows(
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(|x| f.from_rational(x).unwrap()).collect())
                .collect(),
            2,
        )
        .unwrap();
        assert_eq!(f.rank(&mp), 1);
    }

    fn int_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, n), n)
    }

    proptest! {
        #[test]
        fn bareiss_matches_naive_elimination(rows in int_matrix(8)) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = qm(&refs);
            prop_assert_eq!(Rationals.rank(&m), gauss_rank(&Rationals, &m));
        }

        #[test]
        fn rank_is_transpose_invariant(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 0..7)) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = if refs.is_empty() { Matrix::from_rows(vec![], 5).unwrap() } else { qm(&refs) };
            prop_assert_eq!(Rationals.rank(&m), Rationals.rank(&m.transpose()));
        }

        #[test]
        fn rank_nullity(rows in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 6), 1..6)) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = qm(&refs);
            let kernel = kernel_basis(&Rationals, &m);
            prop_assert_eq!(Rationals.rank(&m) + kernel.len(), m.cols());
            for v in &kernel {
                for r in m.rows_iter() {
                    let dot = r.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| &acc + &(a * b));
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
