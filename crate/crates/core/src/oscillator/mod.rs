//! The oscillator representation of `Sp(V)` on `L²(Hom(X→U))`.
//!
//! A point `F ∈ Hom(X→U)` is a `t x n` matrix (rows indexed by a basis of
//! `U`, columns by `X = F_q^n`). Basis functions `δ_F` are indexed by the
//! row-major digits of `F` read as a base-`q` number, most significant first.

mod checks;
mod generator;
mod operator;
mod psi;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use checks::{
    factorize, psi_isotropic, split_columns, unitarity_check, word_consistency_check, Factorization, WordComparison,
};
pub use generator::{generating_set, linear_generators, unipotent_generators, GeneratorWord, SympGenerator};
pub use operator::{gauss_sum, gauss_sum_direct, gauss_sum_one, FourierPlan, RepOperator};
pub use psi::{AmplitudeEntry, PsiVector};

use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem, SquareClass};
use crate::linalg::MatrixFq;
use crate::quadratic::OrthogonalSpace;

/// Largest index set handled by the exact kernels.
pub const MAX_DIM: usize = 1 << 22;

/// The data fixing one representation `μ^{(m)}_{U⊗V}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Context {
    space: OrthogonalSpace,
    n: usize,
    mass: FqElem,
    dim: usize,
}

impl Context {
    pub fn new(space: OrthogonalSpace, n: usize, mass: FqElem) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("n must be at least 1".into()));
        }
        if mass.is_zero() || mass.0 >= space.field().q() {
            return Err(Error::ContextMismatch("mass must be a nonzero field element".into()));
        }
        let q = space.field().q() as usize;
        let cells = (space.dim() * n) as u32;
        let dim = q
            .checked_pow(cells)
            .filter(|&d| d <= MAX_DIM)
            .ok_or_else(|| Error::SizeGuard(format!("q^(nt) = {q}^{cells} exceeds {MAX_DIM}")))?;
        Ok(Context { space, n, mass, dim })
    }

    /// `μ_V` itself: `t = 1`, `U = F_q` with `β(u, v) = uv`.
    pub fn symplectic(field: &FieldRef, n: usize, mass: FqElem) -> Result<Self> {
        Self::new(OrthogonalSpace::standard(field, 1, SquareClass::Square), n, mass)
    }

    /// Same space and `n`, different mass.
    pub fn with_mass(&self, mass: FqElem) -> Result<Self> {
        Self::new(self.space.clone(), self.n, mass)
    }

    pub fn field(&self) -> &FieldRef {
        self.space.field()
    }

    pub fn space(&self) -> &OrthogonalSpace {
        &self.space
    }

    pub fn gram(&self) -> &MatrixFq {
        self.space.gram()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.space.dim()
    }

    pub fn mass(&self) -> FqElem {
        self.mass
    }

    pub fn q(&self) -> u32 {
        self.field().q()
    }

    pub fn p(&self) -> u32 {
        self.field().p()
    }

    /// `q^{nt}`, the dimension of `L²(Hom(X→U))`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of entries `tn` of a point.
    pub fn cells(&self) -> usize {
        self.t() * self.n
    }

    /// Stride of cell `e` in the index encoding.
    pub fn stride(&self, e: usize) -> usize {
        (self.q() as usize).pow((self.cells() - 1 - e) as u32)
    }

    pub fn digits(&self, mut idx: usize) -> Vec<FqElem> {
        let q = self.q() as usize;
        let mut d = vec![FqElem::ZERO; self.cells()];
        for slot in d.iter_mut().rev() {
            *slot = FqElem((idx % q) as u32);
            idx /= q;
        }
        d
    }

    pub fn index_of_digits(&self, d: &[FqElem]) -> usize {
        let q = self.q() as usize;
        d.iter().fold(0, |acc, x| acc * q + x.0 as usize)
    }

    pub fn point(&self, idx: usize) -> MatrixFq {
        MatrixFq::from_elems(self.field(), self.t(), self.n, self.digits(idx)).expect("shape")
    }

    pub fn index(&self, f: &MatrixFq) -> Result<usize> {
        if f.rows() != self.t() || f.cols() != self.n {
            return Err(Error::ContextMismatch(format!(
                "point is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                self.t(),
                self.n
            )));
        }
        Ok(self.index_of_digits(f.data()))
    }

    /// `Fᵀ G F'`.
    pub fn pairing_matrix(&self, f: &MatrixFq, g: &MatrixFq) -> MatrixFq {
        &(&f.transpose() * self.gram()) * g
    }

    /// The weight `B = 2⁻¹ Fᵀ G F` of `δ_F`.
    pub fn weight_matrix(&self, f: &MatrixFq) -> MatrixFq {
        self.pairing_matrix(f, f).scale(self.field().half())
    }

    /// Exponent of `ω^{(m)}(λ)` as a power of `ζ`.
    #[inline]
    pub fn omega_exp(&self, lam: FqElem) -> u32 {
        let k = self.field();
        k.trace(k.mul(self.mass, lam))
    }

    pub fn describe(&self) -> ContextInfo {
        let k = self.field();
        ContextInfo {
            q: k.q(),
            p: k.p(),
            f: k.degree(),
            modulus: k.modulus().to_vec(),
            n: self.n,
            t: self.t(),
            gram: self.gram().to_rows(),
            disc: self.space.discriminant(),
            mass: self.mass.0,
        }
    }

    pub fn from_info(info: &ContextInfo) -> Result<Self> {
        let k = crate::field::Field::with_modulus(info.p, info.modulus.clone())?;
        if k.q() != info.q {
            return Err(Error::ContextMismatch("q does not match p and modulus".into()));
        }
        let rows: Vec<Vec<FqElem>> = info.gram.iter().map(|r| r.iter().map(|&x| FqElem(x)).collect()).collect();
        let gram = if rows.is_empty() { MatrixFq::zero(&k, 0, 0) } else { MatrixFq::from_rows(&k, &rows)? };
        if gram.rows() != info.t {
            return Err(Error::ContextMismatch("gram size differs from t".into()));
        }
        Self::new(OrthogonalSpace::new(gram)?, info.n, FqElem(info.mass))
    }

    pub(crate) fn check_same(&self, other: &Context) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context(q={}, n={}, t={}, gram={}, mass={})", self.q(), self.n, self.t(), self.gram(), self.mass)
    }
}

/// Serializable description of a [`Context`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextInfo {
    pub q: u32,
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
    pub n: usize,
    pub t: usize,
    pub gram: Vec<Vec<u32>>,
    pub disc: SquareClass,
    pub mass: u32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn index_round_trip() {
        let k = Field::prime(3).unwrap();
        let ctx = Context::new(OrthogonalSpace::hyperbolic_plane(&k), 2, FqElem::ONE).unwrap();
        assert_eq!(ctx.dim(), 81);
        for idx in 0..ctx.dim() {
            assert_eq!(ctx.index(&ctx.point(idx)).unwrap(), idx);
        }
        let f = MatrixFq::from_int_rows(&k, &[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(ctx.index(&f).unwrap(), 1);
    }

    #[test]
    fn context_validation() {
        let k = Field::prime(3).unwrap();
        assert!(Context::symplectic(&k, 1, FqElem::ZERO).is_err());
        assert!(Context::symplectic(&k, 0, FqElem::ONE).is_err());
        let info = Context::symplectic(&k, 2, FqElem(2)).unwrap().describe();
        let back = Context::from_info(&info).unwrap();
        assert_eq!(back.describe(), info);
    }
}
