use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{MatrixFq, SubspaceFq};
use crate::quadratic::{IsotropicSubspace, OrthogonalSpace};

use super::{Context, GeneratorWord, PsiVector, RepOperator};

/// Outcome of comparing the operators of two words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "scalar", rename_all = "kebab-case")]
pub enum WordComparison {
    Equal,
    DifferByScalar(CycloNum),
    Differ,
}

/// Compares two words: first their symplectic matrices, then, when those
/// agree, their operators on every basis vector.
pub fn word_consistency_check(ctx: &Context, w1: &GeneratorWord, w2: &GeneratorWord) -> Result<WordComparison> {
    let k = ctx.field();
    if w1.symplectic_matrix(k, ctx.n()) != w2.symplectic_matrix(k, ctx.n()) {
        return Ok(WordComparison::Differ);
    }
    let o1 = RepOperator::word(ctx, w1)?;
    let o2 = RepOperator::word(ctx, w2)?;
    let mut ratio: Option<CycloNum> = None;
    for i in 0..ctx.dim() {
        let e = sparse::unit(ctx.p(), i);
        let a = o1.apply(&e);
        let b = o2.apply(&e);
        if a.is_empty() || b.is_empty() {
            if a.len() != b.len() {
                return Ok(WordComparison::Differ);
            }
            continue;
        }
        let r = match &ratio {
            Some(r) => r.clone(),
            None => {
                let (j, x) = a.iter().next().expect("nonempty");
                let Some(y) = b.get(j) else {
                    return Ok(WordComparison::Differ);
                };
                let r = x.div_ref(y)?;
                ratio = Some(r.clone());
                r
            }
        };
        if a != sparse::scale(&b, &r) {
            return Ok(WordComparison::Differ);
        }
    }
    Ok(match ratio {
        Some(r) if !r.is_one() => WordComparison::DifferByScalar(r),
        _ => WordComparison::Equal,
    })
}

/// Checks that the images of the given basis vectors are orthonormal.
pub fn unitarity_check(ctx: &Context, op: &RepOperator, indices: &[usize]) -> bool {
    let p = ctx.p();
    let imgs: Vec<SparseVec> = indices.iter().map(|&i| op.apply(&sparse::unit(p, i))).collect();
    for (a, x) in indices.iter().zip(&imgs) {
        for (b, y) in indices.iter().zip(&imgs) {
            let ip = sparse::hermitian(p, x, y);
            let ok = if a == b { ip.is_one() } else { ip.is_zero() };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// `ψ_I = Σ_{F ∈ Hom(X→I)} δ_F`.
pub fn psi_isotropic(ctx: &Context, iso: &IsotropicSubspace) -> Result<PsiVector> {
    if iso.space() != ctx.space() {
        return Err(Error::ContextMismatch("isotropic subspace lives in another space".into()));
    }
    let cols = iso.subspace().elements();
    let mut amps = SparseVec::new();
    let n = ctx.n();
    let total = cols.len().pow(n as u32);
    for mut c in 0..total {
        let mut f = MatrixFq::zero(ctx.field(), ctx.t(), n);
        for j in (0..n).rev() {
            let col = &cols[c % cols.len()];
            c /= cols.len();
            for (i, &x) in col.iter().enumerate() {
                f.set(i, j, x);
            }
        }
        amps.insert(ctx.index(&f)?, CycloNum::one(ctx.p()));
    }
    PsiVector::from_sparse(ctx, amps)
}

/// The isomorphism `L²(Hom(X→U)) ≅ L²(Hom(X→U₁)) ⊗ L²(Hom(X→U₂))` for an
/// orthogonal decomposition `U = U₁ ⊕ U₂`, `δ_F ↦ δ_{π₁F} ⊗ δ_{π₂F}`.
///
/// Tensors are stored in the stacked context with gram `diag(G₁, G₂)`:
/// `δ_{F₁} ⊗ δ_{F₂}` is the basis vector of the `(t₁+t₂) x n` matrix with
/// `F₁` on top of `F₂`.
#[derive(Clone, Debug)]
pub struct Factorization {
    source: Context,
    first: Context,
    second: Context,
    stacked: Context,
    coords: MatrixFq,
}

pub fn factorize(ctx: &Context, u1: &SubspaceFq, u2: &SubspaceFq) -> Result<Factorization> {
    let space = ctx.space();
    let t = ctx.t();
    if u1.ambient() != t || u2.ambient() != t || u1.dim() + u2.dim() != t || u1.sum(u2)?.dim() != t {
        return Err(Error::DimensionMismatch("summands do not decompose U".into()));
    }
    for a in u1.basis_vectors() {
        for b in u2.basis_vectors() {
            if !space.beta(&a, &b).is_zero() {
                return Err(Error::NotOrthogonal);
            }
        }
    }
    let k = ctx.field();
    let mut cols = u1.basis_vectors();
    cols.extend(u2.basis_vectors());
    let basis = if t == 0 { MatrixFq::zero(k, 0, 0) } else { MatrixFq::from_rows(k, &cols)?.transpose() };
    let coords = basis.inverse()?;
    let sub_gram = |s: &SubspaceFq| {
        if s.dim() == 0 {
            MatrixFq::zero(k, 0, 0)
        } else {
            let b = s.basis().transpose();
            &(&b.transpose() * space.gram()) * &b
        }
    };
    let g1 = sub_gram(u1);
    let g2 = sub_gram(u2);
    let z12 = MatrixFq::zero(k, g1.rows(), g2.rows());
    let stacked_gram = MatrixFq::block(&g1, &z12, &z12.transpose(), &g2)?;
    let first = Context::new(OrthogonalSpace::new(g1)?, ctx.n(), ctx.mass())?;
    let second = Context::new(OrthogonalSpace::new(g2)?, ctx.n(), ctx.mass())?;
    let stacked = Context::new(OrthogonalSpace::new(stacked_gram)?, ctx.n(), ctx.mass())?;
    Ok(Factorization { source: ctx.clone(), first, second, stacked, coords })
}

impl Factorization {
    pub fn first(&self) -> &Context {
        &self.first
    }

    pub fn second(&self) -> &Context {
        &self.second
    }

    pub fn stacked(&self) -> &Context {
        &self.stacked
    }

    /// Stacked index of `δ_{π₁F} ⊗ δ_{π₂F}`.
    pub fn map_index(&self, idx: usize) -> usize {
        let f = self.source.point(idx);
        self.stacked.index(&(&self.coords * &f)).expect("shape")
    }

    /// Splits a stacked index into the pair of factor indices.
    pub fn pair(&self, idx: usize) -> (usize, usize) {
        (idx / self.second.dim(), idx % self.second.dim())
    }

    pub fn join(&self, i1: usize, i2: usize) -> usize {
        i1 * self.second.dim() + i2
    }

    pub fn apply(&self, v: &PsiVector) -> Result<PsiVector> {
        v.context().check_same(&self.source)?;
        let amps = v.amplitudes().iter().map(|(&i, x)| (self.map_index(i), x.clone())).collect();
        PsiVector::from_sparse(&self.stacked, amps)
    }

    /// `a ⊗ b` in the stacked context.
    pub fn tensor(&self, a: &PsiVector, b: &PsiVector) -> Result<PsiVector> {
        a.context().check_same(&self.first)?;
        b.context().check_same(&self.second)?;
        let mut amps = SparseVec::new();
        for (&i, x) in a.amplitudes() {
            for (&j, y) in b.amplitudes() {
                amps.insert(self.join(i, j), x * y);
            }
        }
        PsiVector::from_sparse(&self.stacked, amps)
    }
}

/// The splitting `X = X₁ ⊕ X₂` with `X₁` the first `n1` coordinates:
/// `δ_F ↦ δ_{F₁} ⊗ δ_{F₂}` where `F = [F₁ | F₂]`. Returns the two factor
/// contexts and the map from indices of `F` to pairs of factor indices.
pub fn split_columns(ctx: &Context, n1: usize) -> Result<(Context, Context, Vec<(usize, usize)>)> {
    let n = ctx.n();
    if n1 == 0 || n1 >= n {
        return Err(Error::DimensionMismatch(format!("cannot split n = {n} at {n1}")));
    }
    let c1 = Context::new(ctx.space().clone(), n1, ctx.mass())?;
    let c2 = Context::new(ctx.space().clone(), n - n1, ctx.mass())?;
    let t = ctx.t();
    let map = (0..ctx.dim())
        .map(|idx| {
            let d = ctx.digits(idx);
            let mut d1 = Vec::with_capacity(t * n1);
            let mut d2 = Vec::with_capacity(t * (n - n1));
            for i in 0..t {
                d1.extend_from_slice(&d[i * n..i * n + n1]);
                d2.extend_from_slice(&d[i * n + n1..(i + 1) * n]);
            }
            (c1.index_of_digits(&d1), c2.index_of_digits(&d2))
        })
        .collect();
    Ok((c1, c2, map))
}

/// Block-diagonal sum of two square matrices.
#[cfg(test)]
pub(crate) fn block_diag(a: &MatrixFq, b: &MatrixFq) -> MatrixFq {
    let z = MatrixFq::zero(a.field(), a.rows(), b.cols());
    MatrixFq::block(a, &z, &z.transpose(), b).expect("square blocks")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FqElem, SquareClass};
    use crate::oscillator::SympGenerator;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_psi(ctx: &Context, rng: &mut ChaCha8Rng) -> PsiVector {
        let p = ctx.p();
        let mut amps = SparseVec::new();
        for _ in 0..4 {
            let i = rng.gen_range(0..ctx.dim());
            amps.insert(i, CycloNum::zeta_pow(p, rng.gen_range(0..p)).scale_int(rng.gen_range(1..4)));
        }
        PsiVector::from_sparse(ctx, amps).unwrap()
    }

    #[test]
    fn word_consistency_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for q in [3u32, 5] {
            let k = Field::prime(q).unwrap();
            for n in 1..=2 {
                let ctx = Context::symplectic(&k, n, FqElem::ONE).unwrap();
                let g = SympGenerator::random(&k, n, &mut rng);
                let w = GeneratorWord::single(g);
                assert_eq!(word_consistency_check(&ctx, &w, &w).unwrap(), WordComparison::Equal);
                let a = SympGenerator::random_symmetric(&k, n, &mut rng);
                let a2 = SympGenerator::random_symmetric(&k, n, &mut rng);
                let w1 = GeneratorWord(vec![
                    SympGenerator::UpperUnipotent(a.clone()),
                    SympGenerator::UpperUnipotent(a2.clone()),
                ]);
                let w2 = GeneratorWord::single(SympGenerator::UpperUnipotent(a.add(&a2).unwrap()));
                assert_eq!(word_consistency_check(&ctx, &w1, &w2).unwrap(), WordComparison::Equal);
                let b = SympGenerator::random_invertible_symmetric(&k, n, &mut rng);
                let jj = GeneratorWord(vec![SympGenerator::Fourier(b.clone()), SympGenerator::Fourier(b.clone())]);
                let d = GeneratorWord::single(SympGenerator::Diagonal(MatrixFq::identity(&k, n).neg()));
                assert_eq!(word_consistency_check(&ctx, &jj, &d).unwrap(), WordComparison::Equal);
                let parts = GeneratorWord((0..n).map(|i| SympGenerator::PartialFourier { n, k: i }).collect());
                let full = GeneratorWord::single(SympGenerator::Fourier(MatrixFq::identity(&k, n)));
                assert_eq!(word_consistency_check(&ctx, &parts, &full).unwrap(), WordComparison::Equal);
                // P_k = N_E J_I N_E J_{-I} N_E with E = E_kk.
                for col in 0..n {
                    let mut e = MatrixFq::zero(&k, n, n);
                    e.set(col, col, FqElem::ONE);
                    let id = MatrixFq::identity(&k, n);
                    let nn = SympGenerator::UpperUnipotent(e);
                    let via = GeneratorWord(vec![
                        nn.clone(),
                        SympGenerator::Fourier(id.clone()),
                        nn.clone(),
                        SympGenerator::Fourier(id.neg()),
                        nn,
                    ]);
                    let pk = GeneratorWord::single(SympGenerator::PartialFourier { n, k: col });
                    assert_eq!(word_consistency_check(&ctx, &pk, &via).unwrap(), WordComparison::Equal);
                }
            }
        }
    }

    #[test]
    fn generators_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let k = Field::prime(3).unwrap();
        let ctx = Context::new(OrthogonalSpace::hyperbolic_plane(&k), 2, FqElem::ONE).unwrap();
        for _ in 0..6 {
            let g = SympGenerator::random(&k, 2, &mut rng);
            let op = RepOperator::generator(&ctx, &g).unwrap();
            let idx: Vec<usize> = (0..50)
                .map(|_| rng.gen_range(0..ctx.dim()))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            assert!(unitarity_check(&ctx, &op, &idx), "{g:?}");
        }
    }

    #[test]
    fn psi_isotropic_examples() {
        let k = Field::prime(3).unwrap();
        let h = OrthogonalSpace::hyperbolic_plane(&k);
        let ctx = Context::new(h.clone(), 1, FqElem::ONE).unwrap();
        let zero = IsotropicSubspace::zero(&h);
        assert_eq!(psi_isotropic(&ctx, &zero).unwrap(), PsiVector::delta_index(&ctx, 0));
        for iso in h.enumerate_isotropic(1) {
            let psi = psi_isotropic(&ctx, &iso).unwrap();
            assert_eq!(psi.support_size(), 3);
            assert!(psi.amplitudes().values().all(|v| v.is_one()));
        }
    }

    #[test]
    fn factorization_intertwines() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let k = Field::prime(3).unwrap();
        let u = OrthogonalSpace::standard(&k, 2, SquareClass::Nonsquare);
        let ctx = Context::new(u.clone(), 2, FqElem::ONE).unwrap();
        let e1 = SubspaceFq::from_vectors(&k, 2, &[vec![FqElem(1), FqElem(0)]]);
        let e2 = SubspaceFq::from_vectors(&k, 2, &[vec![FqElem(0), FqElem(1)]]);
        let fz = factorize(&ctx, &e1, &e2).unwrap();
        for _ in 0..10 {
            let g = SympGenerator::random(&k, 2, &mut rng);
            let v = random_psi(&ctx, &mut rng);
            let lhs = fz.apply(&v.apply_generator(&g).unwrap()).unwrap();
            let rhs = fz.apply(&v).unwrap().apply_generator(&g).unwrap();
            assert_eq!(lhs, rhs);
            let a = random_psi(fz.first(), &mut rng);
            let b = random_psi(fz.second(), &mut rng);
            let lhs = fz.tensor(&a, &b).unwrap().apply_generator(&g).unwrap();
            let rhs = fz.tensor(&a.apply_generator(&g).unwrap(), &b.apply_generator(&g).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        // Isotropic summands are rejected.
        let h = OrthogonalSpace::hyperbolic_plane(&k);
        let hctx = Context::new(h.clone(), 1, FqElem::ONE).unwrap();
        let lines = h.enumerate_isotropic(1);
        assert_eq!(factorize(&hctx, lines[0].subspace(), lines[1].subspace()).unwrap_err(), Error::NotOrthogonal);
        // Trivial second summand.
        let full = SubspaceFq::full(&k, 2);
        let fz = factorize(&ctx, &full, &SubspaceFq::zero(&k, 2)).unwrap();
        for i in 0..ctx.dim() {
            assert_eq!(fz.map_index(i), i);
        }
    }

    #[test]
    fn column_split_intertwines_block_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let k = Field::prime(3).unwrap();
        let ctx = Context::symplectic(&k, 2, FqElem::ONE).unwrap();
        let (c1, c2, map) = split_columns(&ctx, 1).unwrap();
        for _ in 0..10 {
            let g1 = SympGenerator::random(&k, 1, &mut rng);
            let g2 = match &g1 {
                SympGenerator::UpperUnipotent(_) => {
                    SympGenerator::UpperUnipotent(SympGenerator::random_symmetric(&k, 1, &mut rng))
                }
                SympGenerator::Fourier(_) => {
                    SympGenerator::Fourier(SympGenerator::random_invertible_symmetric(&k, 1, &mut rng))
                }
                _ => SympGenerator::Diagonal(SympGenerator::random_invertible(&k, 1, &mut rng)),
            };
            let (m1, m2) = match (&g1, &g2) {
                (SympGenerator::UpperUnipotent(a), SympGenerator::UpperUnipotent(b))
                | (SympGenerator::Fourier(a), SympGenerator::Fourier(b))
                | (SympGenerator::Diagonal(a), SympGenerator::Diagonal(b)) => (a.clone(), b.clone()),
                _ => unreachable!(),
            };
            let big = match &g1 {
                SympGenerator::UpperUnipotent(_) => SympGenerator::UpperUnipotent(block_diag(&m1, &m2)),
                SympGenerator::Fourier(_) => SympGenerator::Fourier(block_diag(&m1, &m2)),
                _ => SympGenerator::Diagonal(block_diag(&m1, &m2)),
            };
            let o1 = RepOperator::generator(&c1, &g1).unwrap();
            let o2 = RepOperator::generator(&c2, &g2).unwrap();
            let ob = RepOperator::generator(&ctx, &big).unwrap();
            for idx in 0..ctx.dim() {
                let (i1, i2) = map[idx];
                let lhs: SparseVec = ob
                    .apply(&sparse::unit(3, idx))
                    .into_iter()
                    .map(|(j, x)| (map[j].0 * c2.dim() + map[j].1, x))
                    .collect();
                let a = o1.apply(&sparse::unit(3, i1));
                let b = o2.apply(&sparse::unit(3, i2));
                let mut rhs = SparseVec::new();
                for (&j1, x) in &a {
                    for (&j2, y) in &b {
                        rhs.insert(j1 * c2.dim() + j2, x * y);
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}
