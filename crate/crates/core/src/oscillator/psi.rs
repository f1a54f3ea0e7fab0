use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::MatrixFq;

use super::{Context, ContextInfo, GeneratorWord, RepOperator, SympGenerator};

/// An element of `L²(Hom(X→U))` with exact sparse amplitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiVector {
    ctx: Context,
    amps: SparseVec,
}

impl PsiVector {
    pub fn zero(ctx: &Context) -> Self {
        PsiVector { ctx: ctx.clone(), amps: SparseVec::new() }
    }

    /// `δ_F`.
    pub fn delta(ctx: &Context, f: &MatrixFq) -> Result<Self> {
        let idx = ctx.index(f)?;
        Ok(Self::delta_index(ctx, idx))
    }

    pub fn delta_index(ctx: &Context, idx: usize) -> Self {
        assert!(idx < ctx.dim(), "index out of range");
        PsiVector { ctx: ctx.clone(), amps: sparse::unit(ctx.p(), idx) }
    }

    /// Wraps raw amplitudes, dropping explicit zeros.
    pub fn from_sparse(ctx: &Context, mut amps: SparseVec) -> Result<Self> {
        amps.retain(|_, v| !v.is_zero());
        if let Some(&i) = amps.keys().next_back() {
            if i >= ctx.dim() {
                return Err(Error::ContextMismatch(format!("index {i} out of range {}", ctx.dim())));
            }
        }
        if amps.values().any(|v| v.conductor() != ctx.p()) {
            return Err(Error::ConductorMismatch(amps.values().next().map_or(0, |v| v.conductor()), ctx.p()));
        }
        Ok(PsiVector { ctx: ctx.clone(), amps })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn amplitudes(&self) -> &SparseVec {
        &self.amps
    }

    pub fn into_sparse(self) -> SparseVec {
        self.amps
    }

    pub fn amplitude(&self, f: &MatrixFq) -> Result<CycloNum> {
        let idx = self.ctx.index(f)?;
        Ok(self.amps.get(&idx).cloned().unwrap_or_else(|| CycloNum::zero(self.ctx.p())))
    }

    pub fn support_size(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn add(&self, other: &PsiVector) -> Result<PsiVector> {
        self.ctx.check_same(&other.ctx)?;
        Ok(PsiVector { ctx: self.ctx.clone(), amps: sparse::add(&self.amps, &other.amps) })
    }

    pub fn sub(&self, other: &PsiVector) -> Result<PsiVector> {
        self.ctx.check_same(&other.ctx)?;
        Ok(PsiVector { ctx: self.ctx.clone(), amps: sparse::sub(&self.amps, &other.amps) })
    }

    pub fn scale(&self, c: &CycloNum) -> PsiVector {
        PsiVector { ctx: self.ctx.clone(), amps: sparse::scale(&self.amps, c) }
    }

    /// Standard Hermitian inner product `⟨self, other⟩`.
    pub fn inner(&self, other: &PsiVector) -> Result<CycloNum> {
        self.ctx.check_same(&other.ctx)?;
        Ok(sparse::hermitian(self.ctx.p(), &self.amps, &other.amps))
    }

    pub fn apply(&self, op: &RepOperator) -> PsiVector {
        PsiVector { ctx: self.ctx.clone(), amps: op.apply(&self.amps) }
    }

    pub fn apply_generator(&self, g: &SympGenerator) -> Result<PsiVector> {
        Ok(self.apply(&RepOperator::generator(&self.ctx, g)?))
    }

    pub fn apply_word(&self, w: &GeneratorWord) -> Result<PsiVector> {
        Ok(self.apply(&RepOperator::word(&self.ctx, w)?))
    }

    pub fn to_wire(&self) -> PsiWire {
        PsiWire {
            context: self.ctx.describe(),
            amplitudes: self
                .amps
                .iter()
                .map(|(&i, v)| AmplitudeEntry {
                    index: self.ctx.digits(i).iter().map(|x| x.0).collect(),
                    value: v.clone(),
                })
                .collect(),
        }
    }

    pub fn from_wire(w: &PsiWire) -> Result<Self> {
        let ctx = Context::from_info(&w.context)?;
        let mut amps = SparseVec::new();
        for e in &w.amplitudes {
            if e.index.len() != ctx.cells() || e.index.iter().any(|&x| x >= ctx.q()) {
                return Err(Error::Parse(format!("bad amplitude index {:?}", e.index)));
            }
            let d: Vec<FqElem> = e.index.iter().map(|&x| FqElem(x)).collect();
            if amps.insert(ctx.index_of_digits(&d), e.value.clone()).is_some() {
                return Err(Error::Parse("duplicate amplitude index".into()));
            }
        }
        Self::from_sparse(&ctx, amps)
    }
}

/// One stored amplitude: the flattened row-major entries of `F` and `Φ(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub index: Vec<u32>,
    pub value: CycloNum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiWire {
    pub context: ContextInfo,
    pub amplitudes: Vec<AmplitudeEntry>,
}

impl Serialize for PsiVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PsiVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PsiWire::deserialize(d)?;
        PsiVector::from_wire(&w).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quadratic::OrthogonalSpace;

    #[test]
    fn json_round_trip() {
        let k = Field::prime(5).unwrap();
        let ctx = Context::new(OrthogonalSpace::hyperbolic_plane(&k), 1, FqElem(2)).unwrap();
        let v = PsiVector::delta_index(&ctx, 7)
            .apply_generator(&SympGenerator::Fourier(MatrixFq::identity(&k, 1)))
            .unwrap();
        let s = serde_json::to_string(&v).unwrap();
        let back: PsiVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(s.contains("\"amplitudes\""));
    }

    #[test]
    fn rejects_out_of_range() {
        let k = Field::prime(3).unwrap();
        let ctx = Context::symplectic(&k, 1, FqElem::ONE).unwrap();
        let amps: SparseVec = [(5usize, CycloNum::one(3))].into_iter().collect();
        assert!(PsiVector::from_sparse(&ctx, amps).is_err());
    }
}
