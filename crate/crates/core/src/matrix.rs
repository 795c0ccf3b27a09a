//! Dense exact linear algebra over [`Scalar`]: Gaussian elimination, reduced
//! row echelon form, kernels, and row-space intersection. Dimensions stay at
//! desk scale, so dense storage and cubic elimination are the right tools.

use crate::scalar::{FieldSpec, Scalar};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: &FieldSpec) -> Matrix {
        Matrix {
            rows,
            cols,
            field: field.clone(),
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: &FieldSpec) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, field: &FieldSpec) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            field: field.clone(),
            data,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[Scalar]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows, &self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zero(self.rows, other.cols, &self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = out.data[i].add(&other.data[i]);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = out.data[i].sub(&other.data[i]);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.mul(c);
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.data.extend(other.data.iter().cloned());
        out.rows += other.rows;
        out
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[j] = out[j].add(&c.mul(a));
                }
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form.
    /// Returns the rank and the pivot column of each of the first `rank` rows.
    pub fn rref_in_place(&mut self) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut pivot_row = None;
            for i in r..self.rows {
                if !self.get(i, c).is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot_row else { continue };
            self.swap_rows(r, pi);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().0
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form: rank plus a matrix whose first `rank` rows are
/// the canonical basis of the row space.
pub fn rref(m: &Matrix) -> (usize, Matrix) {
    let mut out = m.clone();
    let (rank, _) = out.rref_in_place();
    out.rows = rank;
    out.data.truncate(rank * out.cols);
    (rank, out)
}

/// Basis of the right null space `{x : m x = 0}`, returned as the rows of a
/// matrix with `cols - rank` rows.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let mut red = m.clone();
    let (rank, pivots) = red.rref_in_place();
    let field = &m.field;
    let n = m.cols;
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let free: Vec<usize> = (0..n).filter(|c| !pivot_set[*c]).collect();
    let mut out = Matrix::zero(free.len(), n, field);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, field.one());
        for (ri, &pc) in pivots.iter().enumerate().take(rank) {
            out.set(k, pc, red.get(ri, fc).neg());
        }
    }
    out
}

/// A canonical basis for a row space, kept in reduced echelon form so that
/// membership and coordinates are deterministic.
#[derive(Debug, Clone)]
pub struct RowSpace {
    pub basis: Matrix,
    pub pivots: Vec<usize>,
}

impl RowSpace {
    pub fn from_rows(m: &Matrix) -> RowSpace {
        let mut red = m.clone();
        let (rank, pivots) = red.rref_in_place();
        red.rows = rank;
        let cols = red.cols;
        let mut data = std::mem::take(&mut red.data);
        data.truncate(rank * cols);
        red.data = data;
        RowSpace { basis: red, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    /// Express `v` in the canonical basis; `None` if `v` is outside the space.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut rem = v.to_vec();
        let mut coords = vec![self.basis.field.zero(); self.basis.rows];
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = rem[pc].clone();
            if c.is_zero() {
                continue;
            }
            coords[i] = c.clone();
            for j in 0..self.basis.cols {
                rem[j] = rem[j].sub(&c.mul(self.basis.get(i, j)));
            }
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }
}

/// Rows spanning `rowspace(u) ∩ rowspace(v)`.
///
/// Solves `x·u = y·v` via the left kernel of the stacked matrix: a kernel
/// vector `(x, y)` of `[u; -v]ᵀ` yields the intersection vector `x·u`.
pub fn intersect_spans(u: &Matrix, v: &Matrix) -> Matrix {
    assert_eq!(u.cols, v.cols, "ambient dimension mismatch");
    let field = &u.field;
    let stacked = u.vstack(&v.scale(&field.one().neg()));
    let left_kernel = kernel_basis(&stacked.transpose());
    let mut rows = Matrix::zero(0, u.cols, field);
    for i in 0..left_kernel.rows {
        let z = left_kernel.row(i);
        let x = &z[..u.rows];
        rows.push_row(&u.apply_row(x));
    }
    let (_, basis) = rref(&rows);
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rng;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rational_delta(3)
    }

    fn mat(rows: &[&[i64]], field: &FieldSpec) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| field.from_int(n)).collect())
                .collect(),
            cols,
            field,
        )
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(3, &q());
        let (rank, basis) = rref(&id);
        assert_eq!(rank, 3);
        assert_eq!(basis, id);
        let z = Matrix::zero(2, 2, &q());
        assert_eq!(rref(&z).0, 0);
    }

    #[test]
    fn rref_rank_one() {
        let m = mat(&[&[1, 2], &[2, 4]], &q());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_identity_empty_and_zero_full() {
        assert_eq!(kernel_basis(&Matrix::identity(4, &q())).rows, 0);
        assert_eq!(kernel_basis(&Matrix::zero(3, 3, &q())).rows, 3);
    }

    #[test]
    fn kernel_mod_five() {
        let f5 = FieldSpec::prime(5, 1).unwrap();
        let m = mat(&[&[1, 1]], &f5);
        let k = kernel_basis(&m);
        assert_eq!(k.rows, 1);
        // the kernel is the span of (1, 4): x + y = 0 mod 5
        let scale = k.get(0, 0).inv().unwrap();
        assert_eq!(k.get(0, 0).mul(&scale).to_string(), "1");
        assert_eq!(k.get(0, 1).mul(&scale).to_string(), "4");
    }

    #[test]
    fn intersect_examples() {
        let u = mat(&[&[1, 0], &[0, 1]], &q());
        let v = mat(&[&[1, 1]], &q());
        let w = intersect_spans(&u, &v);
        assert_eq!(w.rows, 1);
        assert_eq!(w.get(0, 1), &q().one());
        let same = intersect_spans(&u, &u);
        assert_eq!(same.rows, 2);
        let a = mat(&[&[1, 0]], &q());
        let b = mat(&[&[0, 1]], &q());
        assert_eq!(intersect_spans(&a, &b).rows, 0);
    }

    #[test]
    fn rowspace_coords() {
        let m = mat(&[&[1, 2, 0], &[0, 0, 1], &[1, 2, 1]], &q());
        let rs = RowSpace::from_rows(&m);
        assert_eq!(rs.dim(), 2);
        let v = [q().from_int(2), q().from_int(4), q().from_int(-1)];
        let c = rs.coords(&v).unwrap();
        let back = rs.basis.apply_row(&c);
        assert_eq!(back.to_vec(), v.to_vec());
        assert!(!rs.contains(&[q().from_int(1), q().from_int(0), q().from_int(0)]));
    }

    fn random_matrix(rng: &mut Rng, rows: usize, cols: usize, field: &FieldSpec) -> Matrix {
        let mut m = Matrix::zero(rows, cols, field);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.scalar(field));
            }
        }
        m
    }

    #[test]
    fn rank_transpose_and_kernel_dims() {
        let f5 = FieldSpec::prime(5, 1).unwrap();
        let mut rng = Rng::new(7);
        for field in [q(), f5] {
            for _ in 0..20 {
                let r = (rng.below(5) + 1) as usize;
                let c = (rng.below(5) + 1) as usize;
                let m = random_matrix(&mut rng, r, c, &field);
                assert_eq!(m.rank(), m.transpose().rank());
                assert_eq!(kernel_basis(&m).rows + m.rank(), m.cols);
            }
        }
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(seed in 0u64..50) {
            let field = FieldSpec::prime(7, 1).unwrap();
            let mut rng = Rng::new(seed);
            let m = random_matrix(&mut rng, 3, 5, &field);
            let k = kernel_basis(&m);
            for i in 0..k.rows {
                let col = Matrix::from_rows(
                    k.row(i).iter().map(|v| vec![v.clone()]).collect(),
                    1,
                    &field,
                );
                prop_assert!(m.mul(&col).is_zero());
            }
        }

        #[test]
        fn intersection_dimension_formula(seed in 0u64..50) {
            // dim(U ∩ V) = dim U + dim V - dim(U + V)
            let field = FieldSpec::prime(7, 1).unwrap();
            let mut rng = Rng::new(seed.wrapping_mul(97));
            let u = random_matrix(&mut rng, 2, 4, &field);
            let v = random_matrix(&mut rng, 3, 4, &field);
            let meet = intersect_spans(&u, &v).rows;
            let join = u.vstack(&v).rank();
            prop_assert_eq!(meet + join, u.rank() + v.rank());
        }

        #[test]
        fn intersection_inside_both(seed in 0u64..50) {
            let field = FieldSpec::prime(7, 1).unwrap();
            let mut rng = Rng::new(seed);
            let u = random_matrix(&mut rng, 2, 4, &field);
            let v = random_matrix(&mut rng, 2, 4, &field);
            let w = intersect_spans(&u, &v);
            let us = RowSpace::from_rows(&u);
            let vs = RowSpace::from_rows(&v);
            for i in 0..w.rows {
                prop_assert!(us.contains(w.row(i)));
                prop_assert!(vs.contains(w.row(i)));
            }
        }
    }
}
