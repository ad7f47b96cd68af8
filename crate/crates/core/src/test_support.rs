use crate::exactlin::Rationals;
use crate::forms::FormCollection;

pub fn rational_forms(k: usize, forms: &[&[i64]]) -> FormCollection<Rationals> {
    FormCollection::from_int_forms(Rationals, k, forms).unwrap()
}

/// `(x1, x1, x2, x3, x1 - x3, x2 + x3, x1 + 2x2 + 5x3)`.
pub fn example_tutte() -> FormCollection<Rationals> {
    rational_forms(
        3,
        &[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, -1], &[0, 1, 1], &[1, 2, 5]],
    )
}

/// `(x1 ×3, x2 ×2)`.
pub fn example_veronese() -> FormCollection<Rationals> {
    rational_forms(2, &[&[1, 0], &[1, 0], &[1, 0], &[0, 1], &[0, 1]])
}

pub fn group_of(c: &FormCollection<Rationals>, coeffs: &[i64]) -> usize {
    let target = rational_forms(c.k(), &[coeffs]);
    let form = &target.groups()[0].form;
    c.groups().iter().position(|g| &g.form == form).expect("form present")
}

pub fn svec(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Eight lines with two quadruple points on `V(x1)`.
pub fn example_two_pencils() -> FormCollection<Rationals> {
    rational_forms(
        3,
        &[
            &[1, 0, 0],
            &[1, 0, -1],
            &[1, 0, -2],
            &[1, 0, -3],
            &[0, 1, 0],
            &[1, -1, 0],
            &[1, -2, 0],
            &[1, 1, -2],
        ],
    )
}
