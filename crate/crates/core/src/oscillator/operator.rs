use std::collections::BTreeMap;

use crate::cyclo::{CycloNum, ZetaSum};
use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{diagonalize_form, MatrixFq};

use super::{Context, GeneratorWord, SympGenerator};

/// A linear operator on `L²(Hom(X→U))`, never materialized as a dense matrix.
#[derive(Clone, Debug)]
pub enum RepOperator {
    /// `δ_i ↦ scalar · ζ^{phase[i]} · δ_{target[i]}`. An empty `target`
    /// means the identity permutation; an empty `phase` means no phases.
    Monomial { target: Vec<usize>, phase: Vec<u32>, scalar: CycloNum },
    /// A factorized Fourier transform.
    Fourier(FourierPlan),
    /// `ops[0] ∘ ops[1] ∘ ...`: the last operator acts first.
    Product(Vec<RepOperator>),
}

/// `δ_F ↦ scalar · Σ_{F̂'} Π_e ω(c_e F̂_e F̂'_e) δ_{F'}` where `F = P F̂ R`
/// and the product runs over the cells of `F̂` with `c_e ≠ 0` (other cells
/// are left unchanged).
#[derive(Clone, Debug)]
pub struct FourierPlan {
    to_hat: Vec<usize>,
    from_hat: Vec<usize>,
    coeffs: Vec<FqElem>,
    /// `exps[e][a * q + a']` = exponent of `ω(c_e a a')`, for active cells.
    exps: Vec<Option<Vec<u32>>>,
    strides: Vec<usize>,
    q: usize,
    p: u32,
    scalar: CycloNum,
}

/// `Σ_{a ∈ F_q} ω^{(m)}(-2⁻¹ c a²)`.
pub fn gauss_sum_one(field: &FieldRef, c: FqElem, mass: FqElem) -> CycloNum {
    let mut counts = vec![0i64; field.p() as usize];
    let mc = field.mul(mass, field.neg(field.mul(field.half(), c)));
    for a in field.elements() {
        counts[field.trace(field.mul(mc, field.mul(a, a))) as usize] += 1;
    }
    from_counts(field.p(), &counts)
}

fn from_counts(p: u32, counts: &[i64]) -> CycloNum {
    let mut z = CycloNum::zero(p);
    for (k, &c) in counts.iter().enumerate() {
        if c != 0 {
            z = &z + &CycloNum::zeta_pow(p, k as u32).scale_int(c);
        }
    }
    z
}

/// The Gauss sum `γ(B) = Σ_{y ∈ X*} ω^{(m)}(-2⁻¹ B(y, y))` by direct
/// summation over all `q^n` points.
pub fn gauss_sum(field: &FieldRef, b: &MatrixFq, mass: FqElem) -> Result<CycloNum> {
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if b.rank() < b.rows() {
        return Err(Error::Singular);
    }
    let ctx = Context::symplectic(field, b.rows(), mass)?;
    gauss_sum_direct(&ctx, b)
}

/// `γ_{U⊗V}(B) = Σ_F ω(-2⁻¹ tr(Fᵀ G F B))`, by direct summation.
pub fn gauss_sum_direct(ctx: &Context, b: &MatrixFq) -> Result<CycloNum> {
    let k = ctx.field();
    let mut counts = vec![0i64; ctx.p() as usize];
    let mh = k.neg(k.half());
    for idx in 0..ctx.dim() {
        let f = ctx.point(idx);
        let tr = (&ctx.pairing_matrix(&f, &f) * b).trace();
        counts[ctx.omega_exp(k.mul(mh, tr)) as usize] += 1;
    }
    Ok(from_counts(ctx.p(), &counts))
}

impl FourierPlan {
    /// Plan for `J_B` on the given context.
    pub fn full(ctx: &Context, b: &MatrixFq) -> Result<Self> {
        let fb = diagonalize_form(b)?;
        if fb.rank < b.rows() {
            return Err(Error::Singular);
        }
        let fg = diagonalize_form(ctx.gram())?;
        let k = ctx.field();
        let (t, n) = (ctx.t(), ctx.n());
        let mut coeffs = vec![FqElem::ZERO; t * n];
        for i in 0..t {
            for j in 0..n {
                coeffs[i * n + j] = k.mul(fg.diag[i], fb.diag[j]);
            }
        }
        Self::build(ctx, &fg.p, &fb.p.transpose(), coeffs)
    }

    /// Plan for `P_k`: the Fourier transform on column `k` only.
    pub fn partial(ctx: &Context, col: usize) -> Result<Self> {
        if col >= ctx.n() {
            return Err(Error::DimensionMismatch(format!("coordinate {col} out of {}", ctx.n())));
        }
        let fg = diagonalize_form(ctx.gram())?;
        let (t, n) = (ctx.t(), ctx.n());
        let mut coeffs = vec![FqElem::ZERO; t * n];
        for i in 0..t {
            coeffs[i * n + col] = fg.diag[i];
        }
        Self::build(ctx, &fg.p, &MatrixFq::identity(ctx.field(), n), coeffs)
    }

    fn build(ctx: &Context, left: &MatrixFq, right: &MatrixFq, coeffs: Vec<FqElem>) -> Result<Self> {
        let k = ctx.field();
        let q = ctx.q() as usize;
        let p = ctx.p();
        let linv = left.inverse()?;
        let rinv = right.inverse()?;
        let dim = ctx.dim();
        let mut to_hat = vec![0; dim];
        let mut from_hat = vec![0; dim];
        for (idx, slot) in to_hat.iter_mut().enumerate() {
            let f = ctx.point(idx);
            let h = &(&linv * &f) * &rinv;
            let hi = ctx.index(&h)?;
            *slot = hi;
            from_hat[hi] = idx;
        }
        let mut scalar = CycloNum::one(p);
        let mut exps = Vec::with_capacity(coeffs.len());
        for &c in &coeffs {
            if c.is_zero() {
                exps.push(None);
                continue;
            }
            scalar = &scalar * &gauss_sum_one(k, c, ctx.mass());
            let mut tab = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    let v = k.mul(c, k.mul(FqElem(a as u32), FqElem(b as u32)));
                    tab[a * q + b] = ctx.omega_exp(v);
                }
            }
            exps.push(Some(tab));
        }
        let scalar = scalar.invert()?;
        let strides = (0..ctx.cells()).map(|e| ctx.stride(e)).collect();
        Ok(FourierPlan { to_hat, from_hat, coeffs, exps, strides, q, p, scalar })
    }

    pub fn coefficients(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// The normalizing scalar `γ⁻¹`.
    pub fn scalar(&self) -> &CycloNum {
        &self.scalar
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut cur: SparseVec = v.iter().map(|(&i, x)| (self.to_hat[i], x.clone())).collect();
        for (e, tab) in self.exps.iter().enumerate() {
            if let Some(tab) = tab {
                cur = self.pass(&cur, self.strides[e], tab);
            }
        }
        cur.into_iter().map(|(i, x)| (self.from_hat[i], &x * &self.scalar)).collect()
    }

    fn pass(&self, v: &SparseVec, stride: usize, tab: &[u32]) -> SparseVec {
        let q = self.q;
        // Group the input by the index with this cell cleared.
        let mut groups: BTreeMap<usize, Vec<(usize, &CycloNum)>> = BTreeMap::new();
        for (&idx, x) in v {
            let a = (idx / stride) % q;
            groups.entry(idx - a * stride).or_default().push((a, x));
        }
        let mut out = SparseVec::new();
        for (base, items) in groups {
            for b in 0..q {
                let mut sum = ZetaSum::new(self.p);
                for &(a, x) in &items {
                    sum.add_zeta_mul(x, tab[a * q + b]);
                }
                let acc = sum.finish();
                if !acc.is_zero() {
                    out.insert(base + b * stride, acc);
                }
            }
        }
        out
    }
}

impl RepOperator {
    pub fn identity(p: u32) -> Self {
        RepOperator::Monomial { target: Vec::new(), phase: Vec::new(), scalar: CycloNum::one(p) }
    }

    /// The operator of one generator on the given context.
    pub fn generator(ctx: &Context, g: &SympGenerator) -> Result<Self> {
        if g.n() != ctx.n() {
            return Err(Error::ContextMismatch(format!("generator has n = {}, context n = {}", g.n(), ctx.n())));
        }
        let k = ctx.field();
        let p = ctx.p();
        match g {
            SympGenerator::UpperUnipotent(a) => {
                if !a.is_symmetric() {
                    return Err(Error::NotSymmetric);
                }
                let half = k.half();
                let phase = (0..ctx.dim())
                    .map(|idx| {
                        let f = ctx.point(idx);
                        let tr = (&ctx.pairing_matrix(&f, &f) * a).trace();
                        ctx.omega_exp(k.mul(half, tr))
                    })
                    .collect();
                Ok(RepOperator::Monomial { target: Vec::new(), phase, scalar: CycloNum::one(p) })
            }
            SympGenerator::Diagonal(c) => {
                let cinv = c.inverse()?;
                let l = k.legendre(c.det()?);
                let sign = if l < 0 && ctx.t() % 2 == 1 { -1 } else { 1 };
                let target = (0..ctx.dim()).map(|idx| ctx.index(&(&ctx.point(idx) * &cinv)).expect("shape")).collect();
                Ok(RepOperator::Monomial { target, phase: Vec::new(), scalar: CycloNum::from_int(p, sign) })
            }
            SympGenerator::Fourier(b) => {
                if !b.is_symmetric() {
                    return Err(Error::NotSymmetric);
                }
                Ok(RepOperator::Fourier(FourierPlan::full(ctx, b)?))
            }
            SympGenerator::PartialFourier { k: col, .. } => Ok(RepOperator::Fourier(FourierPlan::partial(ctx, *col)?)),
        }
    }

    /// The operator of a word (the last generator acts first).
    pub fn word(ctx: &Context, w: &GeneratorWord) -> Result<Self> {
        let ops = w.0.iter().map(|g| Self::generator(ctx, g)).collect::<Result<Vec<_>>>()?;
        Ok(RepOperator::Product(ops))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        match self {
            RepOperator::Monomial { target, phase, scalar } => {
                let unit = scalar.is_one();
                v.iter()
                    .map(|(&i, x)| {
                        let j = if target.is_empty() { i } else { target[i] };
                        let mut y = if phase.is_empty() { x.clone() } else { x.mul_zeta_pow(phase[i]) };
                        if !unit {
                            y = &y * scalar;
                        }
                        (j, y)
                    })
                    .collect()
            }
            RepOperator::Fourier(plan) => plan.apply(v),
            RepOperator::Product(ops) => {
                let mut cur = v.clone();
                for op in ops.iter().rev() {
                    cur = op.apply(&cur);
                }
                cur
            }
        }
    }

    /// `self - 1` applied to `v`.
    pub fn apply_minus_identity(&self, v: &SparseVec) -> SparseVec {
        sparse::sub(&self.apply(v), v)
    }

    /// Whether the operator is diagonal in the `δ_F` basis.
    pub fn is_diagonal(&self) -> bool {
        matches!(self, RepOperator::Monomial { target, .. } if target.is_empty())
    }

    /// Trace, computed from the images of all basis vectors.
    pub fn trace(&self, dim: usize, p: u32) -> CycloNum {
        let mut acc = CycloNum::zero(p);
        for i in 0..dim {
            let img = self.apply(&sparse::unit(p, i));
            if let Some(x) = img.get(&i) {
                acc = &acc + x;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, SquareClass};
    use crate::quadratic::OrthogonalSpace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(p: u32, ints: &[i64]) -> CycloNum {
        let mut out = CycloNum::zero(p);
        for (k, &c) in ints.iter().enumerate() {
            out = &out + &CycloNum::zeta_pow(p, k as u32).scale_int(c);
        }
        out
    }

    #[test]
    fn gauss_sum_examples() {
        let k = Field::prime(3).unwrap();
        let one = MatrixFq::identity(&k, 1);
        let g = gauss_sum(&k, &one, FqElem::ONE).unwrap();
        assert_eq!(g, z(3, &[1, 2]));
        assert_eq!(&g * &g.conj(), CycloNum::from_int(3, 3));
        let ns = MatrixFq::from_int_rows(&k, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(gauss_sum(&k, &ns, FqElem::ONE).unwrap_err(), Error::NotSymmetric);
        assert_eq!(gauss_sum(&k, &MatrixFq::zero(&k, 1, 1), FqElem::ONE).unwrap_err(), Error::Singular);
    }

    #[test]
    fn gauss_sum_is_multiplicative_and_has_norm_q_n() {
        for q in [3u32, 5, 9] {
            let k = Field::from_order(q).unwrap();
            for b1 in k.nonzero() {
                for b2 in k.nonzero() {
                    for m in [FqElem::ONE, k.canonical_nonsquare()] {
                        let d = MatrixFq::diag(&k, &[b1, b2]);
                        let g = gauss_sum(&k, &d, m).unwrap();
                        let prod = &gauss_sum_one(&k, b1, m) * &gauss_sum_one(&k, b2, m);
                        assert_eq!(g, prod);
                        assert_eq!(&g * &g.conj(), CycloNum::from_int(k.p(), (q * q) as i64));
                    }
                }
            }
        }
    }

    /// Direct evaluation of `J_B` from its defining double sum.
    fn fourier_direct(ctx: &Context, b: &MatrixFq, v: &SparseVec) -> SparseVec {
        let gamma = gauss_sum_direct(ctx, b).unwrap().invert().unwrap();
        let mut out = SparseVec::new();
        for (&i, x) in v {
            let f = ctx.point(i);
            for j in 0..ctx.dim() {
                let g = ctx.point(j);
                let tr = (&ctx.pairing_matrix(&f, &g) * b).trace();
                let term = &x.mul_zeta_pow(ctx.omega_exp(tr)) * &gamma;
                sparse::axpy(&mut out, &CycloNum::one(ctx.p()), &[(j, term)].into_iter().collect());
            }
        }
        out
    }

    #[test]
    fn factorized_fourier_matches_double_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (q, t, n) in [(3u32, 1, 1), (3, 1, 2), (3, 2, 1), (3, 2, 2), (5, 2, 1), (5, 1, 2), (9, 1, 1)] {
            let k = Field::from_order(q).unwrap();
            for gram in [
                OrthogonalSpace::standard(&k, t, SquareClass::Square),
                OrthogonalSpace::standard(&k, t, SquareClass::Nonsquare),
            ] {
                for m in [FqElem::ONE, k.canonical_nonsquare()] {
                    let ctx = Context::new(gram.clone(), n, m).unwrap();
                    let b = SympGenerator::random_invertible_symmetric(&k, n, &mut rng);
                    let op = RepOperator::generator(&ctx, &SympGenerator::Fourier(b.clone())).unwrap();
                    for i in [0, ctx.dim() / 2, ctx.dim() - 1] {
                        let v = sparse::unit(ctx.p(), i);
                        assert_eq!(op.apply(&v), fourier_direct(&ctx, &b, &v), "q={q} t={t} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        let k = Field::prime(3).unwrap();
        let ctx = Context::symplectic(&k, 1, FqElem::ONE).unwrap();
        let zero = RepOperator::generator(&ctx, &SympGenerator::UpperUnipotent(MatrixFq::zero(&k, 1, 1))).unwrap();
        for i in 0..3 {
            let v = sparse::unit(3, i);
            assert_eq!(zero.apply(&v), v);
        }
        let d = RepOperator::generator(&ctx, &SympGenerator::Diagonal(MatrixFq::diag(&k, &[FqElem(2)]))).unwrap();
        let img = d.apply(&sparse::unit(3, 1));
        assert_eq!(img, [(2usize, CycloNum::from_int(3, -1))].into_iter().collect());
        let j = RepOperator::generator(&ctx, &SympGenerator::Fourier(MatrixFq::identity(&k, 1))).unwrap();
        let img = j.apply(&sparse::unit(3, 0));
        let c = z(3, &[1, 2]).invert().unwrap();
        let expect: SparseVec = (0..3).map(|i| (i, c.clone())).collect();
        assert_eq!(img, expect);
    }
}
