use crate::combinatorics::choose;
use crate::exactlin::Field;

/// Monomials of one degree in `k` variables, ordered lexicographically with
/// `x1^d` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    k: usize,
    degree: usize,
    exponents: Vec<Vec<u32>>,
    /// `raise[i * k + j]` is the index of `x_j` times monomial `i` one degree up.
    raise: Vec<usize>,
}

fn count(vars: usize, degree: usize) -> usize {
    if vars == 0 {
        usize::from(degree == 0)
    } else {
        choose(degree + vars - 1, vars - 1) as usize
    }
}

fn enumerate(k: usize, degree: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::with_capacity(count(k, degree));
    for first in (0..=degree).rev() {
        for mut rest in enumerate(k - 1, degree - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

impl MonomialBasis {
    pub fn new(k: usize, degree: usize) -> Self {
        let exponents = enumerate(k, degree);
        let mut raise = Vec::with_capacity(exponents.len() * k);
        for e in &exponents {
            for j in 0..k {
                let mut up = e.clone();
                up[j] += 1;
                raise.push(Self::rank_of(&up));
            }
        }
        MonomialBasis { k, degree, exponents, raise }
    }

    /// Position of an exponent vector within its degree.
    pub fn rank_of(exps: &[u32]) -> usize {
        let k = exps.len();
        let mut remaining: usize = exps.iter().map(|&e| e as usize).sum();
        let mut rank = 0;
        for (i, &e) in exps.iter().enumerate() {
            let e = e as usize;
            for v in e + 1..=remaining {
                rank += count(k - i - 1, remaining - v);
            }
            remaining -= e;
        }
        rank
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exponents[i]
    }

    /// `x_j * p` in the basis one degree up.
    pub fn multiply_variable<F: Field>(&self, field: &F, p: &[F::Elem], j: usize) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); count(self.k, self.degree + 1)];
        for (i, c) in p.iter().enumerate() {
            if !field.is_zero(c) {
                out[self.raise[i * self.k + j]] = c.clone();
            }
        }
        out
    }

    /// `form * p` in the basis one degree up, `form` given by its coefficients.
    pub fn multiply_linear<F: Field>(&self, field: &F, p: &[F::Elem], form: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); count(self.k, self.degree + 1)];
        for (i, c) in p.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            for (j, l) in form.iter().enumerate() {
                if !field.is_zero(l) {
                    let slot = self.raise[i * self.k + j];
                    out[slot] = field.add(&out[slot], &field.mul(c, l));
                }
            }
        }
        out
    }
}
