use num_traits::{One, Zero};

use super::{LinAlgError, Rational, RationalMatrix};

/// Row-major sparse matrix; each row keeps `(column, value)` sorted by column
/// with no explicit zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
}

fn merge_rows(
    a: &[(usize, Rational)],
    b: &[(usize, Rational)],
    scale_b: &Rational,
) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va + scale_b * vb;
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (_, Some((cb, vb))) => {
                let v = scale_b * vb;
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    pub fn diagonal(entries: Vec<Rational>) -> Self {
        let n = entries.len();
        Self {
            rows: n,
            cols: n,
            data: entries
                .into_iter()
                .enumerate()
                .map(|(i, v)| if v.is_zero() { vec![] } else { vec![(i, v)] })
                .collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of range");
            data[r].push((c, v));
        }
        for row in &mut data {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *row = merged;
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r]
            .binary_search_by_key(&c, |(k, _)| *k)
            .map(|i| self.data[r][i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.data
            .iter()
            .enumerate()
            .all(|(r, row)| row.iter().all(|(c, _)| *c == r))
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Rational {
        self.diagonal_entries()
            .into_iter()
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v * k)).collect())
                .collect(),
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Self, k: &Rational) -> Result<Self, LinAlgError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| merge_rows(a, b, k))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.add_scaled(other, &-Rational::one())
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), LinAlgError> {
        if self.rows != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut acc: Vec<Option<Rational>> = vec![None; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    match &mut acc[*c] {
                        Some(v) => *v += a * b,
                        slot @ None => {
                            *slot = Some(a * b);
                            touched.push(*c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out_row = Vec::with_capacity(touched.len());
            for c in touched.drain(..) {
                if let Some(v) = acc[c].take() {
                    if !v.is_zero() {
                        out_row.push((c, v));
                    }
                }
            }
            data.push(out_row);
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !v[*c].is_zero())
                    .fold(Rational::zero(), |acc, (c, a)| acc + a * &v[*c])
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            m.set(r, c, v.clone());
        }
        m
    }

    pub fn from_dense(m: &RationalMatrix) -> Self {
        let mut triplets = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() {
                    triplets.push((r, c, m.get(r, c).clone()));
                }
            }
        }
        Self::from_triplets(m.rows(), m.cols(), triplets)
    }

    /// Dense submatrix made of the given columns, keeping only rows that touch them.
    pub fn column_block(&self, columns: &[usize]) -> RationalMatrix {
        let mut position = std::collections::HashMap::with_capacity(columns.len());
        for (i, c) in columns.iter().enumerate() {
            position.insert(*c, i);
        }
        let mut rows = Vec::new();
        for row in &self.data {
            let mut dense: Option<Vec<Rational>> = None;
            for (c, v) in row {
                if let Some(&i) = position.get(c) {
                    dense.get_or_insert_with(|| vec![Rational::zero(); columns.len()])[i] =
                        v.clone();
                }
            }
            if let Some(d) = dense {
                rows.push(d);
            }
        }
        RationalMatrix::from_rows(columns.len(), rows).expect("block rows have uniform width")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&RationalMatrix::from_i64_rows(rows))
    }

    #[test]
    fn product_matches_dense() {
        let a = m(&[&[1, 0, 2], &[0, -1, 0]]);
        let b = m(&[&[0, 1], &[3, 0], &[1, 1]]);
        let dense = a.to_dense().mul(&b.to_dense()).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_dense(), dense);
    }

    #[test]
    fn commutator_of_sl2_pair() {
        let e = m(&[&[0, 1], &[0, 0]]);
        let f = m(&[&[0, 0], &[1, 0]]);
        let h = e.commutator(&f).unwrap();
        assert_eq!(h, m(&[&[1, 0], &[0, -1]]));
        assert_eq!(h.trace(), int(0));
        assert!(h.is_diagonal());
    }

    #[test]
    fn triplets_merge_duplicates_and_drop_zeros() {
        let s = SparseMatrix::from_triplets(2, 2, vec![(0, 0, int(1)), (0, 0, int(-1)), (1, 0, int(2))]);
        assert_eq!(s.nnz(), 1);
        assert_eq!(s.get(1, 0), int(2));
    }

    #[test]
    fn adding_zero_multiple_keeps_canonical_form() {
        let a = SparseMatrix::zeros(2, 2);
        let b = m(&[&[1, 0], &[0, 3]]);
        assert!(a.add_scaled(&b, &int(0)).unwrap().is_zero());
    }
}
