//! Exact dense linear algebra over a tower field.
//!
//! Pivoting is deterministic (first nonzero entry in the leftmost unresolved
//! column), so every derived object (kernel bases, minimal polynomials) is
//! canonical.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::tower::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
    field: Field,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
            field: field.clone(),
        })
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Matrix::diagonal(field, &vec![field.one(); n])
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zero(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Elem>]) -> Result<Self> {
        let mut m = Matrix::zero(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Matrix {
            entries,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let entries = self.entries.iter().map(|a| self.field.mul(c, a)).collect();
        Matrix {
            entries,
            ..self.clone()
        }
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &Elem) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let d = self.field.sub(self.get(i, i), c);
            m.set(i, i, d);
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes the matrix into a polynomial by Horner's rule.
    pub fn eval_poly(&self, p: &Polynomial) -> Result<Matrix> {
        if p.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let id = Matrix::identity(&self.field, self.rows);
        let mut acc = Matrix::zero(&self.field, self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&id.scale(c));
        }
        Ok(acc)
    }
}

/// Reduced row echelon form, pivot columns and rank.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>, usize) {
    let f = m.field.clone();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, col))) else {
            continue;
        };
        if pr != r {
            for j in 0..a.cols {
                a.entries.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, col)).expect("pivot is nonzero");
        for j in 0..a.cols {
            let v = f.mul(&inv, a.get(r, j));
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in 0..a.cols {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots, r)
}

/// Basis of the right kernel: one vector per free column, ascending, with a 1
/// in its own free column and zeros in the other free columns.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Elem>> {
    let f = &m.field;
    let (reduced, pivots, rank) = rref(m);
    let free = (0..m.cols).filter(|c| !pivots.contains(c));
    let basis: Vec<Vec<Elem>> = free
        .map(|fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(reduced.get(row, fc));
            }
            v
        })
        .collect();
    debug_assert_eq!(rank + basis.len(), m.cols);
    basis
}

pub fn mat_apply(m: &Matrix, v: &[Elem]) -> Result<Vec<Elem>> {
    if v.len() != m.cols {
        return Err(Error::DimensionMismatch {
            expected: m.cols,
            found: v.len(),
        });
    }
    let f = &m.field;
    Ok((0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
        .collect())
}

/// Matrix whose column `j` is the coordinate vector of `images[j]`, all
/// elements of the extension `over`.
pub fn operator_matrix(over: &Field, images: &[Elem]) -> Result<Matrix> {
    let base = over.base().ok_or(Error::FieldMismatch)?;
    let n = over.degree();
    if images.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: images.len(),
        });
    }
    if !images.iter().all(|e| over.contains(e)) {
        return Err(Error::FieldMismatch);
    }
    let columns: Vec<Vec<Elem>> = images.iter().map(|e| e.coords().to_vec()).collect();
    Matrix::from_columns(base, n, &columns)
}

/// The monic polynomial of least degree with `sum c_j v_j = 0` along a
/// sequence `v_0, v_1, ...`; `None` if the first `limit + 1` vectors stay
/// independent.
pub fn first_dependency(
    field: &Field,
    mut vectors: impl Iterator<Item = Vec<Elem>>,
    limit: usize,
) -> Option<Polynomial> {
    let mut seen: Vec<Vec<Elem>> = Vec::new();
    while seen.len() <= limit {
        let v = vectors.next()?;
        seen.push(v);
        let m = Matrix::from_columns(field, seen[0].len(), &seen).ok()?;
        // The earlier vectors are independent, so a nonempty kernel is
        // one-dimensional with its free column last; the parametrization puts
        // a 1 there, which makes the relation monic.
        if let Some(rel) = nullspace(&m).into_iter().next() {
            return Some(Polynomial::new(field.clone(), rel));
        }
    }
    None
}

/// Minimal polynomial of the Krylov sequence `v, Mv, M^2 v, ...`.
pub fn krylov_min_poly(m: &Matrix, v: &[Elem]) -> Polynomial {
    let mut current = v.to_vec();
    let seq = std::iter::from_fn(|| {
        let out = current.clone();
        current = mat_apply(m, &current).expect("square matrix");
        Some(out)
    });
    first_dependency(&m.field, seq, m.rows).expect("n+1 vectors in dimension n are dependent")
}

/// Minimal polynomial of a square matrix: lcm of the Krylov minimal
/// polynomials of the standard basis vectors, stopping once the running lcm
/// annihilates the matrix.
pub fn operator_min_poly(m: &Matrix) -> Result<Polynomial> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    let f = &m.field;
    let mut acc = Polynomial::one(f);
    for j in 0..m.cols {
        let mut e = vec![f.zero(); m.cols];
        e[j] = f.one();
        acc = acc.lcm(&krylov_min_poly(m, &e))?;
        if m.eval_poly(&acc)?.is_zero() {
            break;
        }
    }
    Ok(acc)
}
