use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem};

use super::MatrixFq;

/// A subspace of `F_q^d`, stored as the reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceFq {
    basis: MatrixFq,
    pivots: Vec<usize>,
}

impl SubspaceFq {
    pub fn zero(field: &FieldRef, ambient: usize) -> Self {
        SubspaceFq { basis: MatrixFq::zero(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &FieldRef, ambient: usize) -> Self {
        Self::from_matrix(&MatrixFq::identity(field, ambient))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &MatrixFq) -> Self {
        let r = m.rref();
        SubspaceFq { basis: r.matrix.submatrix(0, r.rank, 0, m.cols()), pivots: r.pivots }
    }

    pub fn from_vectors(field: &FieldRef, ambient: usize, vecs: &[Vec<FqElem>]) -> Self {
        if vecs.is_empty() {
            return Self::zero(field, ambient);
        }
        let rows: Vec<Vec<FqElem>> = vecs.to_vec();
        let m = MatrixFq::from_rows(field, &rows).expect("vectors of equal length");
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        Self::from_matrix(&m)
    }

    pub fn field(&self) -> &FieldRef {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// The RREF basis as a `dim x ambient` matrix.
    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FqElem>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Reduces `v` modulo the subspace: the result vanishes on every pivot.
    pub fn reduce(&self, v: &[FqElem]) -> Vec<FqElem> {
        let k = self.field();
        let mut r = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = r[pc];
            if c.is_zero() {
                continue;
            }
            for (j, x) in r.iter_mut().enumerate() {
                *x = k.sub(*x, k.mul(c, self.basis.get(i, j)));
            }
        }
        r
    }

    pub fn contains(&self, v: &[FqElem]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &SubspaceFq) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    fn check(&self, other: &SubspaceFq) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!("ambient {} vs {}", self.ambient(), other.ambient())));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceFq) -> Result<SubspaceFq> {
        self.check(other)?;
        let mut v = self.basis_vectors();
        v.extend(other.basis_vectors());
        Ok(Self::from_vectors(self.field(), self.ambient(), &v))
    }

    /// Annihilator under the standard dot product.
    pub fn annihilator(&self) -> SubspaceFq {
        if self.dim() == 0 {
            return Self::full(self.field(), self.ambient());
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &SubspaceFq) -> Result<SubspaceFq> {
        self.check(other)?;
        self.annihilator().sum(&other.annihilator()).map(|s| s.annihilator())
    }

    /// Coordinates of a member with respect to the RREF basis.
    pub fn coordinates(&self, v: &[FqElem]) -> Option<Vec<FqElem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Linear combination of basis rows.
    pub fn combine(&self, coords: &[FqElem]) -> Vec<FqElem> {
        self.basis.vec_mul(coords)
    }

    /// All `q^dim` members, in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<Vec<FqElem>> {
        let q = self.field().q() as usize;
        let d = self.dim();
        let total = q.pow(d as u32);
        (0..total)
            .map(|mut idx| {
                let mut c = vec![FqElem::ZERO; d];
                for slot in c.iter_mut().rev() {
                    *slot = FqElem((idx % q) as u32);
                    idx /= q;
                }
                self.combine(&c)
            })
            .collect()
    }
}

impl fmt::Debug for SubspaceFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceFq(dim {} in {}: {:?})", self.dim(), self.ambient(), self.basis.to_rows())
    }
}

impl fmt::Display for SubspaceFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}
