//! Collections of linear forms with multiplicities.
//!
//! A [`FormCollection`] stores pairwise non-proportional nonzero forms, each
//! scaled so that its first nonzero coefficient is 1, together with a
//! multiplicity. Groups are sorted by multiplicity (descending) and then
//! lexicographically by coefficients, so equal collections have equal
//! representations and can be used directly as memoization keys.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{rref, Field, Matrix};

/// A nonzero linear form in canonical scale (leading coefficient 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm<E> {
    coeffs: Vec<E>,
}

impl<E> LinearForm<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group<E> {
    pub form: LinearForm<E>,
    pub mult: usize,
}

/// `e_i = max(m_i + a - n, 0)` per group and `e = max(a - sum e_i, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionData {
    pub e_list: Vec<usize>,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormCollection<F: Field> {
    field: F,
    k: usize,
    groups: Vec<Group<F::Elem>>,
}

/// Scales `v` so its first nonzero entry is 1; `None` for the zero vector.
fn canonical_scale<F: Field>(field: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let lead = v.iter().find(|x| !field.is_zero(x))?;
    let inv = field.inv(lead).expect("nonzero");
    Some(v.iter().map(|x| field.mul(x, &inv)).collect())
}

impl<F: Field> FormCollection<F> {
    /// Canonicalizes raw `(coefficients, multiplicity)` pairs over `k` variables:
    /// scales forms, merges proportional ones, drops zero forms and sorts.
    pub fn normalize(field: F, raw: Vec<(Vec<F::Elem>, usize)>, k: usize) -> Result<Self> {
        let mut merged: BTreeMap<Vec<F::Elem>, usize> = BTreeMap::new();
        for (i, (coeffs, mult)) in raw.into_iter().enumerate() {
            if coeffs.len() != k {
                return Err(Error::InvalidArgument(format!(
                    "form {i} has {} coefficients, expected {k}",
                    coeffs.len()
                )));
            }
            if mult == 0 {
                continue;
            }
            if let Some(scaled) = canonical_scale(&field, &coeffs) {
                *merged.entry(scaled).or_insert(0) += mult;
            }
        }
        if merged.is_empty() {
            return Err(Error::EmptyCollection);
        }
        let mut groups: Vec<Group<F::Elem>> = merged
            .into_iter()
            .map(|(coeffs, mult)| Group { form: LinearForm { coeffs }, mult })
            .collect();
        groups.sort_by(|a, b| b.mult.cmp(&a.mult).then_with(|| a.form.cmp(&b.form)));
        Ok(FormCollection { field, k, groups })
    }

    /// Convenience constructor from small integer coefficients, one entry per form copy.
    pub fn from_int_forms(field: F, k: usize, forms: &[&[i64]]) -> Result<Self> {
        let raw = forms
            .iter()
            .map(|f| (f.iter().map(|&v| field.from_i64(v)).collect(), 1))
            .collect();
        Self::normalize(field, raw, k)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Ambient number of variables.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of forms counted with multiplicity.
    pub fn n(&self) -> usize {
        self.groups.iter().map(|g| g.mult).sum()
    }

    /// Number of pairwise non-proportional forms.
    pub fn t(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Group<F::Elem>] {
        &self.groups
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.mult).collect()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.groups.first().map_or(0, |g| g.mult)
    }

    pub fn is_simple(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    /// Group index of each multiplicity-expanded column.
    pub fn column_groups(&self) -> Vec<usize> {
        self.groups
            .iter()
            .enumerate()
            .flat_map(|(g, grp)| std::iter::repeat_n(g, grp.mult))
            .collect()
    }

    /// Multiplicity-expanded coefficient vectors, in group order.
    pub fn columns(&self) -> Vec<&[F::Elem]> {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.form.coeffs(), g.mult))
            .collect()
    }

    /// The `k x n` matrix with one column per form copy.
    pub fn coefficient_matrix(&self) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = self.columns().into_iter().map(<[_]>::to_vec).collect();
        Matrix::from_columns(&cols, self.k).expect("columns have length k")
    }

    /// `k x t` matrix of the distinct forms.
    pub fn group_matrix(&self) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = self.groups.iter().map(|g| g.form.coeffs.clone()).collect();
        Matrix::from_columns(&cols, self.k).expect("columns have length k")
    }

    /// Dimension of the span of the forms.
    pub fn rank(&self) -> usize {
        self.field.rank(&self.group_matrix())
    }

    /// Same forms with new multiplicities (zero drops a group).
    pub fn with_multiplicities(&self, mults: &[usize]) -> Option<Self> {
        assert_eq!(mults.len(), self.groups.len());
        let raw = self
            .groups
            .iter()
            .zip(mults)
            .map(|(g, &m)| (g.form.coeffs.clone(), m))
            .collect();
        Self::normalize(self.field.clone(), raw, self.k).ok()
    }

    /// Removes one copy of the form in `group`. `None` when nothing is left.
    pub fn delete(&self, group: usize) -> Option<Self> {
        let mut mults = self.multiplicities();
        mults[group] -= 1;
        self.with_multiplicities(&mults)
    }

    /// Reduces every other form copy modulo the form `l` of `group`, eliminating
    /// the first variable where `l` is nonzero. Returns the surviving nonzero forms
    /// over `k - 1` variables and the number of copies that became zero (the
    /// remaining copies of `group` itself among them; the chosen copy is not counted).
    pub fn contract(&self, group: usize) -> (Option<Self>, usize) {
        let f = &self.field;
        let pivot_form = self.groups[group].form.coeffs();
        let j = pivot_form
            .iter()
            .position(|x| !f.is_zero(x))
            .expect("stored forms are nonzero");
        let mut zero_count = self.groups[group].mult - 1;
        let mut raw = Vec::with_capacity(self.groups.len());
        for (h, g) in self.groups.iter().enumerate() {
            if h == group {
                continue;
            }
            let c = g.form.coeffs();
            let factor = f.div(&c[j], &pivot_form[j]);
            let reduced: Vec<F::Elem> = c
                .iter()
                .zip(pivot_form)
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, (x, p))| f.sub(x, &f.mul(&factor, p)))
                .collect();
            if reduced.iter().all(|x| f.is_zero(x)) {
                zero_count += g.mult;
            } else {
                raw.push((reduced, g.mult));
            }
        }
        let rest = if raw.is_empty() {
            None
        } else {
            Self::normalize(f.clone(), raw, self.k - 1).ok()
        };
        (rest, zero_count)
    }

    /// Rewrites the forms in coordinates of their span, so that the ambient
    /// variable count equals the rank. The column matroid is unchanged.
    pub fn essentialize(&self) -> Self {
        let (reduced, pivots) = rref(&self.field, &self.group_matrix());
        let r = pivots.len();
        if r == self.k {
            return self.clone();
        }
        let raw = self
            .groups
            .iter()
            .enumerate()
            .map(|(h, g)| ((0..r).map(|row| reduced.get(row, h).clone()).collect(), g.mult))
            .collect();
        Self::normalize(self.field.clone(), raw, r).expect("nonzero forms stay nonzero")
    }

    pub fn reduction_data(&self, a: usize) -> Result<ReductionData> {
        let n = self.n();
        if a == 0 || a > n {
            return Err(Error::FoldOutOfRange { a, n });
        }
        let e_list: Vec<usize> = self
            .groups
            .iter()
            .map(|g| (g.mult + a).saturating_sub(n))
            .collect();
        let e = a.saturating_sub(e_list.iter().sum());
        Ok(ReductionData { e_list, e })
    }

    /// Each group's coefficients rendered through the field's rational representatives.
    pub fn describe(&self) -> Vec<(Vec<String>, usize)> {
        self.groups
            .iter()
            .map(|g| {
                (
                    g.form.coeffs.iter().map(|x| self.field.to_rational(x).to_string()).collect(),
                    g.mult,
                )
            })
            .collect()
    }
}
