use crate::error::Error;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, entries: vec![value; rows * cols] }
    }

    /// Builds a matrix from equal-length rows. `cols` is only consulted when
    /// `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, Error> {
        let cols = rows.first().map_or(cols, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Matrix { rows: nrows, cols, entries })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Result<Self, Error> {
        let cols = columns.len();
        let mut m = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for (j, c) in columns.iter().enumerate() {
                if c.len() != rows {
                    return Err(Error::InvalidArgument(format!(
                        "column {j} has length {}, expected {rows}",
                        c.len()
                    )));
                }
                m.push(c[r].clone());
            }
        }
        Ok(Matrix { rows, cols, entries: m })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows_iter().map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, entries }
    }

    /// The submatrix formed by the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.rows, cols: cols.len(), entries }
    }
}
