use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem};

use super::SubspaceFq;

/// A dense matrix over `F_q`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
}

impl Hash for MatrixFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for MatrixFq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MatrixFq {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixFq {
    pub fn zero(field: &FieldRef, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, data: vec![FqElem::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, FqElem::ONE);
        }
        m
    }

    pub fn diag(field: &FieldRef, d: &[FqElem]) -> Self {
        let mut m = Self::zero(field, d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_elems(field: &FieldRef, rows: usize, cols: usize, data: Vec<FqElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|x| x.0 >= field.q()) {
            return Err(Error::InvalidField("entry out of range".into()));
        }
        Ok(MatrixFq { field: field.clone(), rows, cols, data })
    }

    /// Matrix from integer rows, entries reduced into the prime field.
    pub fn from_int_rows(field: &FieldRef, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| field.from_int(v)).collect();
        Ok(MatrixFq { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Matrix from rows of encoded field elements.
    pub fn from_rows(field: &FieldRef, rows: &[Vec<FqElem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_elems(field, rows.len(), cols, rows.concat())
    }

    pub fn column(field: &FieldRef, v: &[FqElem]) -> Self {
        MatrixFq { field: field.clone(), rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn row_vector(field: &FieldRef, v: &[FqElem]) -> Self {
        MatrixFq { field: field.clone(), rows: 1, cols: v.len(), data: v.to_vec() }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[FqElem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[FqElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FqElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.0).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn try_mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = &self.field;
        let mut out = Self::zero(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = k.add(out.get(i, j), k.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FqElem]) -> Vec<FqElem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let k = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(FqElem::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b))))
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FqElem]) -> Vec<FqElem> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let k = &self.field;
        let mut out = vec![FqElem::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = k.add(*o, k.mul(a, self.get(i, j)));
            }
        }
        out
    }

    fn zip_with(&self, other: &MatrixFq, f: impl Fn(FqElem, FqElem) -> FqElem) -> Result<MatrixFq> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("entrywise operation on different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(MatrixFq { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &MatrixFq) -> Result<MatrixFq> {
        let k = self.field.clone();
        self.zip_with(other, |a, b| k.add(a, b))
    }

    pub fn sub(&self, other: &MatrixFq) -> Result<MatrixFq> {
        let k = self.field.clone();
        self.zip_with(other, |a, b| k.sub(a, b))
    }

    pub fn neg(&self) -> MatrixFq {
        self.scale(self.field.neg(FqElem::ONE))
    }

    pub fn scale(&self, c: FqElem) -> MatrixFq {
        let k = &self.field;
        MatrixFq {
            field: k.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| k.mul(a, c)).collect(),
        }
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> FqElem {
        let k = &self.field;
        (0..self.rows.min(self.cols)).fold(FqElem::ZERO, |acc, i| k.add(acc, self.get(i, i)))
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &MatrixFq, b: &MatrixFq, c: &MatrixFq, d: &MatrixFq) -> Result<MatrixFq> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("incompatible blocks".into()));
        }
        let (r, s) = (a.rows + c.rows, a.cols + b.cols);
        let mut m = Self::zero(&a.field, r, s);
        for (blk, ro, co) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m.set(ro + i, co + j, blk.get(i, j));
                }
            }
        }
        Ok(m)
    }

    /// Submatrix of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> MatrixFq {
        let mut m = Self::zero(&self.field, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m.set(i - r0, j - c0, self.get(i, j));
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let k = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = k.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                m.set(r, j, k.mul(m.get(r, j), inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = k.sub(m.get(i, j), k.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
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
        self.rref().rank
    }

    pub fn det(&self) -> Result<FqElem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let k = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = FqElem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(FqElem::ZERO);
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = k.neg(det);
            }
            let piv = m.get(c, c);
            det = k.mul(det, piv);
            let inv = k.inv(piv)?;
            for i in c + 1..n {
                let f = k.mul(m.get(i, c), inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = k.sub(m.get(i, j), k.mul(f, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<MatrixFq> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = MatrixFq::block(
            self,
            &MatrixFq::identity(&self.field, n),
            &MatrixFq::zero(&self.field, 0, n),
            &MatrixFq::zero(&self.field, 0, n),
        )?;
        let r = aug.rref();
        if r.pivots.len() < n || (n > 0 && r.pivots[n - 1] != n - 1) {
            return Err(Error::Singular);
        }
        Ok(r.matrix.submatrix(0, n, n, 2 * n))
    }

    /// Right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> SubspaceFq {
        let k = &self.field;
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let vecs = free
            .iter()
            .map(|&fc| {
                let mut v = vec![FqElem::ZERO; self.cols];
                v[fc] = FqElem::ONE;
                for (i, &pc) in r.pivots.iter().enumerate() {
                    v[pc] = k.neg(r.matrix.get(i, fc));
                }
                v
            })
            .collect::<Vec<_>>();
        SubspaceFq::from_vectors(k, self.cols, &vecs)
    }

    /// Column space.
    pub fn image(&self) -> SubspaceFq {
        let cols: Vec<Vec<FqElem>> = (0..self.cols).map(|j| self.col(j)).collect();
        SubspaceFq::from_vectors(&self.field, self.rows, &cols)
    }

    /// Whether `Mᵀ G M = G` for the given gram matrix.
    pub fn preserves_form(&self, gram: &MatrixFq) -> bool {
        &(&self.transpose() * gram) * self == *gram
    }
}

impl Mul for &MatrixFq {
    type Output = MatrixFq;
    fn mul(self, rhs: &MatrixFq) -> MatrixFq {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixFq{:?}", self.to_rows())
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn rref_examples() {
        let k = Field::prime(3).unwrap();
        let id = MatrixFq::identity(&k, 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);
        let m = MatrixFq::from_int_rows(&k, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), FqElem(0));
        assert_eq!(m.rank(), 1);
        assert_eq!(MatrixFq::zero(&k, 2, 3).rank(), 0);
    }

    #[test]
    fn inverse_and_det() {
        let k = Field::prime(5).unwrap();
        let m = MatrixFq::from_int_rows(&k, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, MatrixFq::identity(&k, 2));
        assert_eq!(m.det().unwrap(), k.from_int(-2));
        let s = MatrixFq::from_int_rows(&k, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn kernel_image_rank_nullity() {
        let k = Field::from_order(9).unwrap();
        let mut m = MatrixFq::zero(&k, 3, 4);
        let vals = [1u32, 4, 0, 7, 2, 8, 0, 5, 3, 3, 0, 3];
        for (i, &v) in vals.iter().enumerate() {
            m.set(i / 4, i % 4, FqElem(v));
        }
        let ker = m.kernel();
        assert_eq!(ker.dim() + m.image().dim(), 4);
        for v in ker.basis_vectors() {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }
}
