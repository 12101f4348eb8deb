use num_traits::{One, Zero};

use super::{is_zero_vec, zero_vec, LinAlgError, Rational, RationalMatrix};

/// Basis of `{v : m v = 0}`, one vector per free column (ascending), with a 1 in
/// that column.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = m.rref();
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = zero_vec(cols);
            v[free] = Rational::one();
            for (k, &p) in pivots.iter().enumerate() {
                let e = r.get(k, free);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            v
        })
        .collect()
}

fn check_lengths(dim: usize, vs: &[Vec<Rational>]) -> Result<(), LinAlgError> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(LinAlgError::DimensionMismatch {
            expected: dim,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

fn rref_rows(dim: usize, vs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    if vs.is_empty() {
        return vec![];
    }
    let m = RationalMatrix::from_rows(dim, vs).expect("lengths checked");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|k| r.row(k).to_vec()).collect()
}

pub fn span_contains(basis: &[Vec<Rational>], v: &[Rational]) -> Result<bool, LinAlgError> {
    let dim = v.len();
    check_lengths(dim, basis)?;
    let mut eb = EchelonBasis::new(dim);
    for b in basis {
        eb.insert(b);
    }
    Ok(eb.contains(v))
}

/// Reduced-echelon basis of `span(a) + span(b)`.
pub fn sum_spans(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LinAlgError> {
    let dim = a.first().or(b.first()).map_or(0, Vec::len);
    check_lengths(dim, a)?;
    check_lengths(dim, b)?;
    Ok(rref_rows(dim, a.iter().chain(b).cloned().collect()))
}

/// Reduced-echelon basis of `span(a) ∩ span(b)`.
pub fn intersect_spans(
    a: &[Vec<Rational>],
    b: &[Vec<Rational>],
) -> Result<Vec<Vec<Rational>>, LinAlgError> {
    let dim = a.first().or(b.first()).map_or(0, Vec::len);
    check_lengths(dim, a)?;
    check_lengths(dim, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    // Columns a_1..a_p, -b_1..-b_q; a null vector (x, y) gives sum x_i a_i in both spans.
    let cols = a.len() + b.len();
    let rows = (0..dim)
        .map(|r| {
            a.iter()
                .map(|v| v[r].clone())
                .chain(b.iter().map(|v| -&v[r]))
                .collect()
        })
        .collect();
    let m = RationalMatrix::from_rows(cols, rows)?;
    let common: Vec<Vec<Rational>> = nullspace(&m)
        .into_iter()
        .map(|x| {
            let mut w = zero_vec(dim);
            for (coef, v) in x.iter().zip(a) {
                if coef.is_zero() {
                    continue;
                }
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi += coef * vi;
                }
            }
            w
        })
        .filter(|w| !is_zero_vec(w))
        .collect();
    Ok(rref_rows(dim, common))
}

#[derive(Clone, Debug)]
struct EchelonRow {
    pivot: usize,
    vector: Vec<Rational>,
    /// `vector` as a combination of the accepted (independent) inputs.
    combo: Vec<Rational>,
}

/// Outcome of offering a vector to an [`EchelonBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent and became accepted vector number `.0`.
    New(usize),
    /// The vector equals `sum c_k * accepted_k`.
    Dependent(Vec<Rational>),
}

/// Incrementally grown span that remembers which inputs were accepted and can
/// express any member in terms of them.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<EchelonRow>,
    accepted: Vec<Vec<Rational>>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            accepted: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.accepted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accepted.is_empty()
    }

    /// The accepted input vectors, in acceptance order.
    pub fn accepted(&self) -> &[Vec<Rational>] {
        &self.accepted
    }

    pub fn into_accepted(self) -> Vec<Vec<Rational>> {
        self.accepted
    }

    /// Reduced-echelon basis of the span, sorted by pivot.
    pub fn reduced_basis(&self) -> Vec<Vec<Rational>> {
        let mut rows: Vec<&EchelonRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| r.pivot);
        rows.into_iter().map(|r| r.vector.clone()).collect()
    }

    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim, "vector length does not match span");
        let mut rem = v.to_vec();
        let mut coeffs = zero_vec(self.accepted.len());
        for row in &self.rows {
            let c = rem[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (i, x) in row.vector.iter().enumerate() {
                if !x.is_zero() {
                    rem[i] -= &c * x;
                }
            }
            for (k, x) in row.combo.iter().enumerate() {
                if !x.is_zero() {
                    coeffs[k] += &c * x;
                }
            }
        }
        (rem, coeffs)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }

    /// Coordinates of `v` over the accepted vectors, if `v` lies in the span.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (rem, coeffs) = self.reduce(v);
        is_zero_vec(&rem).then_some(coeffs)
    }

    pub fn insert(&mut self, v: &[Rational]) -> Insertion {
        let (rem, coeffs) = self.reduce(v);
        let Some(pivot) = rem.iter().position(|x| !x.is_zero()) else {
            return Insertion::Dependent(coeffs);
        };
        let inv = rem[pivot].recip();
        let vector: Vec<Rational> = rem.iter().map(|x| x * &inv).collect();
        let new_index = self.accepted.len();
        let mut combo: Vec<Rational> = coeffs.iter().map(|c| -(c * &inv)).collect();
        combo.push(inv.clone());
        for row in &mut self.rows {
            row.combo.push(Rational::zero());
            let c = row.vector[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in row.vector.iter_mut().zip(&vector) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
            for (x, y) in row.combo.iter_mut().zip(&combo) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        self.rows.push(EchelonRow {
            pivot,
            vector,
            combo,
        });
        self.accepted.push(v.to_vec());
        Insertion::New(new_index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, unit_vec};

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(nullspace(&RationalMatrix::identity(4)).is_empty());
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        assert_eq!(nullspace(&RationalMatrix::zeros(2, 2)).len(), 2);
    }

    #[test]
    fn nullspace_of_row_sum() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns, vec![vec![int(-1), int(1)]]);
        assert_eq!(m.mul_vec(&ns[0]).unwrap(), vec![int(0)]);
    }

    #[test]
    fn membership() {
        let e1 = unit_vec(3, 0);
        let e2 = unit_vec(3, 1);
        let two_e1: Vec<Rational> = e1.iter().map(|x| x * int(2)).collect();
        assert!(span_contains(std::slice::from_ref(&e1), &two_e1).unwrap());
        assert!(!span_contains(std::slice::from_ref(&e1), &e2).unwrap());
        assert!(span_contains(&[e1], &unit_vec(2, 0)).is_err());
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let (e1, e2, e3) = (unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2));
        let i = intersect_spans(&[e1.clone(), e2.clone()], &[e2.clone(), e3.clone()]).unwrap();
        assert_eq!(i, vec![e2.clone()]);
        let s = sum_spans(&[e1], &[e2, e3]).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn echelon_basis_tracks_coordinates() {
        let mut eb = EchelonBasis::new(3);
        let a = vec![int(1), int(2), int(0)];
        let b = vec![int(0), int(1), int(1)];
        assert_eq!(eb.insert(&a), Insertion::New(0));
        assert_eq!(eb.insert(&b), Insertion::New(1));
        // 2a - 3b = (2, 1, -3)
        let v = vec![int(2), int(1), int(-3)];
        assert_eq!(eb.insert(&v), Insertion::Dependent(vec![int(2), int(-3)]));
        assert_eq!(eb.len(), 2);
    }
}
