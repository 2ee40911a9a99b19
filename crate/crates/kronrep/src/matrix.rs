//! Dense matrices over an exact field, with the elimination routines the
//! Hom/End machinery needs: rank, nullspace, inverse testing. Matrices may
//! have zero rows or columns; a 0 x c or r x 0 matrix is a perfectly good
//! linear map to or from the zero space.

use crate::field::Field;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + PartialEq> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .map(|(i, v)| (i / self.cols.max(1), i % self.cols.max(1), v))
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    Mat::from_fn(rows, cols, |_, _| f.zero())
}

pub fn identity<F: Field>(f: &F, size: usize) -> Mat<F::Elem> {
    Mat::from_fn(size, size, |r, c| if r == c { f.one() } else { f.zero() })
}

impl<T: Clone + PartialEq> Mat<T> {
    pub fn nonzero_count<F: Field<Elem = T>>(&self, f: &F) -> usize {
        self.data.iter().filter(|v| !f.is_zero(v)).count()
    }

    pub fn is_zero_matrix<F: Field<Elem = T>>(&self, f: &F) -> bool {
        self.data.iter().all(|v| f.is_zero(v))
    }

    pub fn is_identity_matrix<F: Field<Elem = T>>(&self, f: &F) -> bool {
        self.rows == self.cols && *self == identity(f, self.rows)
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| f.add(self.get(r, c), other.get(r, c)))
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, s: &T) -> Self {
        Mat::from_fn(self.rows, self.cols, |r, c| f.mul(s, self.get(r, c)))
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        Mat::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                acc = f.add(&acc, &f.mul(self.get(r, k), other.get(k, c)));
            }
            acc
        })
    }

    pub fn pow<F: Field<Elem = T>>(&self, f: &F, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols, "powers need a square matrix");
        let mut acc = identity(f, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Row-reduces a copy to reduced echelon form; returns it with the
    /// pivot column list. First-nonzero pivoting keeps results exact and
    /// deterministic across runs.
    fn rref<F: Field<Elem = T>>(&self, f: &F) -> (Mat<T>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            let Some(src) = (lead..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if src != lead {
                for c in 0..m.cols {
                    let tmp = m.get(src, c).clone();
                    let other = m.get(lead, c).clone();
                    m.set(src, c, other);
                    m.set(lead, c, tmp);
                }
            }
            // Every row at or below `lead` is zero in all earlier pivot and
            // skipped columns, so work right of `col` only; touching just
            // the pivot row's nonzero columns pays off on sparse systems.
            if *m.get(lead, col) != f.one() {
                let scale = f.inv(m.get(lead, col)).expect("pivot is nonzero");
                for c in col..m.cols {
                    m.set(lead, c, f.mul(&scale, m.get(lead, c)));
                }
            }
            let support: Vec<usize> =
                (col..m.cols).filter(|&c| !f.is_zero(m.get(lead, c))).collect();
            for r in 0..m.rows {
                if r != lead && !f.is_zero(m.get(r, col)) {
                    let factor = m.get(r, col).clone();
                    for &c in &support {
                        let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(lead, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = T>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    pub fn is_invertible<F: Field<Elem = T>>(&self, f: &F) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// A basis of the right nullspace, one vector per free column, ordered
    /// by free column index.
    pub fn nullspace<F: Field<Elem = T>>(&self, f: &F) -> Vec<Vec<T>> {
        let (m, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if is_pivot[fc] {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(row, fc));
            }
            basis.push(v);
        }
        basis
    }

    /// Stacks two square blocks along the diagonal.
    pub fn block_diag<F: Field<Elem = T>>(f: &F, a: &Self, b: &Self) -> Self {
        Mat::from_fn(a.rows + b.rows, a.cols + b.cols, |r, c| {
            if r < a.rows && c < a.cols {
                a.get(r, c).clone()
            } else if r >= a.rows && c >= a.cols {
                b.get(r - a.rows, c - a.cols).clone()
            } else {
                f.zero()
            }
        })
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}
