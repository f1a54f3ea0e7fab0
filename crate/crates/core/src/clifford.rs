//! Heisenberg and Weyl operators, the embedding `ι_u`, and the Clifford
//! (Jacobi group) representation `W(ι_u(λ, v)) μ(S)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem, SquareClass};
use crate::invariant::{generated_subspace, invariant_under, max_invariant_under};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{MatrixFq, SubspaceCyclo, SubspaceFq};
use crate::oscillator::{factorize, generating_set, Context, GeneratorWord, RepOperator};
use crate::quadratic::OrthogonalSpace;

/// `(λ, v) ∈ H(V) = F_q × V`, `v = (x; y)` with `2n` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElem {
    pub lam: FqElem,
    pub v: Vec<FqElem>,
}

impl HeisenbergElem {
    pub fn new(lam: FqElem, v: Vec<FqElem>) -> Self {
        HeisenbergElem { lam, v }
    }

    pub fn identity(n: usize) -> Self {
        HeisenbergElem { lam: FqElem::ZERO, v: vec![FqElem::ZERO; 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.v.len() / 2
    }

    /// `[x ⊕ y, x' ⊕ y'] = y'(x) - y(x')`.
    pub fn symplectic_pairing(field: &FieldRef, v: &[FqElem], w: &[FqElem]) -> FqElem {
        let n = v.len() / 2;
        let mut acc = FqElem::ZERO;
        for i in 0..n {
            acc = field.add(acc, field.mul(w[n + i], v[i]));
            acc = field.sub(acc, field.mul(v[n + i], w[i]));
        }
        acc
    }

    /// `(λ, v) ∘ (λ', v') = (λ + λ' + 2⁻¹[v, v'], v + v')`.
    pub fn compose(&self, other: &HeisenbergElem, field: &FieldRef) -> HeisenbergElem {
        let c = field.mul(field.half(), Self::symplectic_pairing(field, &self.v, &other.v));
        HeisenbergElem {
            lam: field.add(field.add(self.lam, other.lam), c),
            v: self.v.iter().zip(&other.v).map(|(&a, &b)| field.add(a, b)).collect(),
        }
    }

    /// `(λ, S v)`.
    pub fn act(&self, s: &MatrixFq) -> HeisenbergElem {
        HeisenbergElem { lam: self.lam, v: s.mul_vec(&self.v) }
    }

    pub fn random(field: &FieldRef, n: usize, rng: &mut impl Rng) -> Self {
        let q = field.q();
        HeisenbergElem {
            lam: FqElem(rng.gen_range(0..q)),
            v: (0..2 * n).map(|_| FqElem(rng.gen_range(0..q))).collect(),
        }
    }

    /// All `q^{2n+1}` elements.
    pub fn all(field: &FieldRef, n: usize) -> Vec<HeisenbergElem> {
        let q = field.q() as usize;
        let total = q.pow(2 * n as u32 + 1);
        (0..total)
            .map(|mut idx| {
                let mut d = vec![FqElem::ZERO; 2 * n + 1];
                for slot in d.iter_mut().rev() {
                    *slot = FqElem((idx % q) as u32);
                    idx /= q;
                }
                HeisenbergElem { lam: d[0], v: d[1..].to_vec() }
            })
            .collect()
    }

    /// As an element of `H(U⊗V)` for `U = F_q` with `β(u,v) = uv`.
    pub fn as_tensor(&self, field: &FieldRef) -> TensorHeisenberg {
        let n = self.n();
        TensorHeisenberg {
            lam: self.lam,
            x: MatrixFq::row_vector(field, &self.v[..n]),
            y: MatrixFq::row_vector(field, &self.v[n..]),
        }
    }
}

/// An element `(λ, X ⊕ Y)` of `H(U⊗V)`; `X ∈ U⊗X` and `Y ∈ U⊗X* = Hom(X→U)`
/// are both stored as `t x n` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorHeisenberg {
    pub lam: FqElem,
    pub x: MatrixFq,
    pub y: MatrixFq,
}

impl TensorHeisenberg {
    /// `(λ, X ⊕ Y) ↦ (λ, (1⊗S)(X ⊕ Y))`.
    pub fn act(&self, s: &MatrixFq) -> TensorHeisenberg {
        let n = self.x.cols();
        let a = s.submatrix(0, n, 0, n);
        let b = s.submatrix(0, n, n, 2 * n);
        let c = s.submatrix(n, 2 * n, 0, n);
        let d = s.submatrix(n, 2 * n, n, 2 * n);
        let x = (&self.x * &a.transpose()).add(&(&self.y * &b.transpose())).expect("shape");
        let y = (&self.x * &c.transpose()).add(&(&self.y * &d.transpose())).expect("shape");
        TensorHeisenberg { lam: self.lam, x, y }
    }

    pub fn compose(&self, other: &TensorHeisenberg, ctx: &Context) -> TensorHeisenberg {
        let k = ctx.field();
        let pair = k.sub(tensor_pairing(ctx, &other.y, &self.x), tensor_pairing(ctx, &self.y, &other.x));
        TensorHeisenberg {
            lam: k.add(k.add(self.lam, other.lam), k.mul(k.half(), pair)),
            x: self.x.add(&other.x).expect("shape"),
            y: self.y.add(&other.y).expect("shape"),
        }
    }
}

/// `⟨Z, X⟩ = tr(Zᵀ G X)`.
pub fn tensor_pairing(ctx: &Context, z: &MatrixFq, x: &MatrixFq) -> FqElem {
    ctx.pairing_matrix(z, x).trace()
}

/// `ι_u(λ, x ⊕ y) = (β(u,u) λ, u ⊗ x ⊕ u ⊗ y)`.
pub fn iota_embed(ctx: &Context, h: &HeisenbergElem, u: &[FqElem]) -> Result<TensorHeisenberg> {
    if u.len() != ctx.t() || h.n() != ctx.n() {
        return Err(Error::ContextMismatch("embedding dimensions".into()));
    }
    let k = ctx.field();
    let n = ctx.n();
    let col = MatrixFq::column(k, u);
    let x = &col * &MatrixFq::row_vector(k, &h.v[..n]);
    let y = &col * &MatrixFq::row_vector(k, &h.v[n..]);
    let lam = k.mul(ctx.space().beta(u, u), h.lam);
    Ok(TensorHeisenberg { lam, x, y })
}

/// `W(λ, X ⊕ Y) δ_Z = ω(2⁻¹⟨Y, X⟩ + ⟨Z, X⟩ + λ) δ_{Z+Y}`.
pub fn weyl_operator(ctx: &Context, h: &TensorHeisenberg) -> Result<RepOperator> {
    if h.x.rows() != ctx.t() || h.x.cols() != ctx.n() || h.y.rows() != ctx.t() || h.y.cols() != ctx.n() {
        return Err(Error::ContextMismatch("Heisenberg element has the wrong shape".into()));
    }
    let k = ctx.field();
    let base = k.add(k.mul(k.half(), tensor_pairing(ctx, &h.y, &h.x)), h.lam);
    // ⟨Z, X⟩ is linear in Z: precompute its value on each cell.
    let gx = ctx.gram() * &h.x;
    let mut target = Vec::with_capacity(ctx.dim());
    let mut phase = Vec::with_capacity(ctx.dim());
    for idx in 0..ctx.dim() {
        let z = ctx.point(idx);
        let val = z.data().iter().zip(gx.data()).fold(base, |acc, (&a, &b)| k.add(acc, k.mul(a, b)));
        phase.push(ctx.omega_exp(val));
        target.push(ctx.index(&z.add(&h.y).expect("shape")).expect("shape"));
    }
    Ok(RepOperator::Monomial { target, phase, scalar: CycloNum::one(ctx.p()) })
}

/// Weyl operator of `H(V)` on a `t = 1` context.
pub fn weyl_operator_v(ctx: &Context, h: &HeisenbergElem) -> Result<RepOperator> {
    if ctx.t() != 1 || h.n() != ctx.n() {
        return Err(Error::ContextMismatch("V-level Weyl operator needs t = 1".into()));
    }
    weyl_operator(ctx, &h.as_tensor(ctx.field()))
}

/// Checks `μ(S) W(h) μ(S)⁻¹ = W(Sh)` on every basis vector, for each `h`.
pub fn weyl_covariance_check(ctx: &Context, word: &GeneratorWord, hs: &[TensorHeisenberg]) -> Result<bool> {
    let p = ctx.p();
    let s = word.symplectic_matrix(ctx.field(), ctx.n());
    let mu = RepOperator::word(ctx, word)?;
    let images: Vec<SparseVec> = (0..ctx.dim()).map(|i| mu.apply(&sparse::unit(p, i))).collect();
    for h in hs {
        let w = weyl_operator(ctx, h)?;
        let ws = weyl_operator(ctx, &h.act(&s))?;
        let RepOperator::Monomial { target, phase, .. } = &w else { unreachable!("Weyl operators are monomial") };
        for (z, img) in images.iter().enumerate() {
            // μ(S) W(h) δ_z = ζ^{phase[z]} μ(S) δ_{target[z]}.
            let lhs = sparse::scale(&images[target[z]], &CycloNum::zeta_pow(p, phase[z]));
            if lhs != ws.apply(img) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An element `(h, S)` of the Jacobi group `H(V) ⋊ Sp(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiElem {
    pub h: HeisenbergElem,
    pub word: GeneratorWord,
}

impl JacobiElem {
    pub fn identity(n: usize) -> Self {
        JacobiElem { h: HeisenbergElem::identity(n), word: GeneratorWord::identity() }
    }

    pub fn random(field: &FieldRef, n: usize, len: usize, rng: &mut impl Rng) -> Self {
        JacobiElem { h: HeisenbergElem::random(field, n, rng), word: GeneratorWord::random(field, n, len, rng) }
    }
}

/// `Cl^{(u)}(h, S) = W(ι_u(h)) μ(S)`.
pub fn clifford_operator(ctx: &Context, j: &JacobiElem, u: &[FqElem]) -> Result<RepOperator> {
    let w = weyl_operator(ctx, &iota_embed(ctx, &j.h, u)?)?;
    let mu = RepOperator::word(ctx, &j.word)?;
    Ok(RepOperator::Product(vec![w, mu]))
}

pub fn clifford_apply(ctx: &Context, j: &JacobiElem, u: &[FqElem], v: &SparseVec) -> Result<SparseVec> {
    Ok(clifford_operator(ctx, j, u)?.apply(v))
}

/// Operators generating the Clifford group `Cl^{(u)}`: Weyl operators of
/// `ι_u(1, 0)` and `ι_u(0, α e_i)` for `α` in an `F_p`-basis, plus `μ(g)` for
/// the generators of `Sp(V)`.
pub fn clifford_generators(ctx: &Context, u: &[FqElem]) -> Result<Vec<RepOperator>> {
    let k = ctx.field();
    let n = ctx.n();
    let mut hs = vec![HeisenbergElem::new(FqElem::ONE, vec![FqElem::ZERO; 2 * n])];
    for i in 0..2 * n {
        for &a in &k.prime_basis() {
            let mut v = vec![FqElem::ZERO; 2 * n];
            v[i] = a;
            hs.push(HeisenbergElem::new(FqElem::ZERO, v));
        }
    }
    let mut ops = Vec::new();
    for h in &hs {
        ops.push(weyl_operator(ctx, &iota_embed(ctx, h, u)?)?);
    }
    for g in generating_set(k, n) {
        ops.push(RepOperator::generator(ctx, &g)?);
    }
    Ok(ops)
}

/// Even and odd functions on `X*` (`Φ(-y) = ±Φ(y)`) in a `t = 1` context.
pub fn parity_subspaces(ctx: &Context) -> (SubspaceCyclo, SubspaceCyclo) {
    reflection_subspaces(ctx, |f| f.neg())
}

/// `span{δ_F ± δ_{σF}}` for an involution `σ` on points.
fn reflection_subspaces(ctx: &Context, sigma: impl Fn(&MatrixFq) -> MatrixFq) -> (SubspaceCyclo, SubspaceCyclo) {
    let p = ctx.p();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..ctx.dim() {
        let j = ctx.index(&sigma(&ctx.point(i))).expect("shape");
        if j < i {
            continue;
        }
        let mut v = sparse::unit(p, i);
        if j == i {
            plus.push(v);
            continue;
        }
        v.insert(j, CycloNum::one(p));
        plus.push(v);
        let mut w = sparse::unit(p, i);
        w.insert(j, CycloNum::from_int(p, -1));
        minus.push(w);
    }
    (SubspaceCyclo::from_vectors(p, ctx.dim(), plus), SubspaceCyclo::from_vectors(p, ctx.dim(), minus))
}

/// Exchange of the two rows of `F` in a `t = 2` context.
fn swap_rows(f: &MatrixFq) -> MatrixFq {
    let mut g = f.clone();
    for j in 0..f.cols() {
        g.set(0, j, f.get(1, j));
        g.set(1, j, f.get(0, j));
    }
    g
}

/// Symmetric and antisymmetric subspaces of `L²(X*)^{⊗2}` (`t = 2`).
pub fn swap_subspaces(ctx: &Context) -> Result<(SubspaceCyclo, SubspaceCyclo)> {
    if ctx.t() != 2 {
        return Err(Error::ContextMismatch("swap subspaces need t = 2".into()));
    }
    Ok(reflection_subspaces(ctx, swap_rows))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoDesignReport {
    pub q: u32,
    pub n: usize,
    pub sym_dim: usize,
    pub antisym_dim: usize,
    pub expected_sym_dim: usize,
    pub expected_antisym_dim: usize,
    pub invariant_under_generators: bool,
    pub invariant_under_words: bool,
    pub swap_commutes: bool,
    /// Every sampled nonzero vector generates its whole summand.
    pub no_smaller_invariant_found: bool,
    pub holds: bool,
}

/// The symmetric and antisymmetric subspaces of `L²(X*)⊗L²(X*)` under
/// `Cl ⊗ Cl`, realized as `Cl^{(u)}` on `F_q²` with `u = (1, 1)`.
pub fn two_design_check(field: &FieldRef, n: usize, words: usize, rng: &mut impl Rng) -> Result<TwoDesignReport> {
    let space = OrthogonalSpace::standard(field, 2, SquareClass::Square);
    let ctx = Context::new(space, n, FqElem::ONE)?;
    let u = [FqElem::ONE, FqElem::ONE];
    let (sym, anti) = swap_subspaces(&ctx)?;
    let gens = clifford_generators(&ctx, &u)?;
    let invariant_under_generators = invariant_under(&sym, &gens) && invariant_under(&anti, &gens);
    let p = ctx.p();
    let swap = |v: &SparseVec| -> SparseVec {
        v.iter().map(|(&i, c)| (ctx.index(&swap_rows(&ctx.point(i))).expect("shape"), c.clone())).collect()
    };
    let mut invariant_under_words = true;
    let mut swap_commutes = true;
    for _ in 0..words {
        let j = JacobiElem::random(field, n, 4, rng);
        let op = clifford_operator(&ctx, &j, &u)?;
        invariant_under_words &=
            invariant_under(&sym, std::slice::from_ref(&op)) && invariant_under(&anti, std::slice::from_ref(&op));
        let i = rng.gen_range(0..ctx.dim());
        let e = sparse::unit(p, i);
        swap_commutes &= swap(&op.apply(&e)) == op.apply(&swap(&e));
    }
    let mut no_smaller = true;
    for part in [&sym, &anti] {
        let basis = part.basis_vec();
        let mut seeds = vec![basis[0].clone(), basis[basis.len() - 1].clone()];
        let mut mix = SparseVec::new();
        for b in &basis {
            sparse::axpy(&mut mix, &CycloNum::from_int(p, rng.gen_range(-3..=3)), b);
        }
        if !mix.is_empty() {
            seeds.push(mix);
        }
        for s in seeds {
            no_smaller &= generated_subspace(p, ctx.dim(), &[s], &gens) == *part;
        }
    }
    let qn = (field.q() as usize).pow(n as u32);
    let expected_sym_dim = qn * (qn + 1) / 2;
    let expected_antisym_dim = qn * (qn - 1) / 2;
    let holds = invariant_under_generators
        && invariant_under_words
        && swap_commutes
        && no_smaller
        && sym.dim() == expected_sym_dim
        && anti.dim() == expected_antisym_dim;
    Ok(TwoDesignReport {
        q: field.q(),
        n,
        sym_dim: sym.dim(),
        antisym_dim: anti.dim(),
        expected_sym_dim,
        expected_antisym_dim,
        invariant_under_generators,
        invariant_under_words,
        swap_commutes,
        no_smaller_invariant_found: no_smaller,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplectoCliffordReport {
    pub u: Vec<u32>,
    pub beta_uu: u32,
    /// Dimensions of the `Sp(V)`-invariant subspaces of `L²(Hom(X→u^⊥))` tested.
    pub lattice_dims: Vec<usize>,
    pub lifts_clifford_invariant: bool,
    pub lifts_are_maximal: bool,
    pub sym_matches_even: bool,
    pub antisym_matches_odd: bool,
    pub even_dim: usize,
    pub sym_dim: usize,
    pub holds: bool,
}

/// For `u` with `β(u, u) ≠ 0` in a `t = 2` context: lifts the `Sp(V)`-invariant
/// subspaces `𝒦` of `L²(Hom(X→u^⊥))` to `L²(X*) ⊗ 𝒦` through the factorization
/// `U = ⟨u⟩ ⊕ u^⊥`, checks the lifts are `Cl^{(u)}`-invariant, and matches the
/// even/odd split with the symmetric/antisymmetric split of `L²(X*)^{⊗2}`.
pub fn symplectoclifford_check(ctx: &Context, u: &[FqElem]) -> Result<SymplectoCliffordReport> {
    let k = ctx.field();
    let beta_uu = ctx.space().beta(u, u);
    if beta_uu.is_zero() {
        return Err(Error::IsotropicVector);
    }
    let line = SubspaceFq::from_vectors(k, ctx.t(), &[u.to_vec()]);
    let perp = ctx.space().perp(&line);
    let fz = factorize(ctx, &line, &perp)?;
    let second = fz.second().clone();
    // Stacked index -> source index.
    let mut back = vec![0usize; ctx.dim()];
    for i in 0..ctx.dim() {
        back[fz.map_index(i)] = i;
    }
    let lift = |kk: &SubspaceCyclo| -> SubspaceCyclo {
        let mut vecs = Vec::new();
        for i1 in 0..fz.first().dim() {
            for b in kk.basis() {
                vecs.push(b.iter().map(|(&i2, c)| (back[fz.join(i1, i2)], c.clone())).collect::<SparseVec>());
            }
        }
        SubspaceCyclo::from_vectors(ctx.p(), ctx.dim(), vecs)
    };
    let sp_gens: Vec<RepOperator> =
        generating_set(k, ctx.n()).iter().map(|g| RepOperator::generator(&second, g)).collect::<Result<_>>()?;
    let (even, odd) = if second.t() == 1 {
        parity_subspaces(&second)
    } else {
        return Err(Error::ContextMismatch("u^⊥ must be a line (t = 2)".into()));
    };
    let full = SubspaceCyclo::full(second.p(), second.dim());
    let zero = SubspaceCyclo::zero(second.p(), second.dim());
    let lattice = [zero, even.clone(), odd.clone(), full];
    let cl_gens = clifford_generators(ctx, u)?;
    let mut lifts_clifford_invariant = true;
    let mut lifts_are_maximal = true;
    for kk in &lattice {
        lifts_clifford_invariant &= invariant_under(kk, &sp_gens);
        let lifted = lift(kk);
        lifts_clifford_invariant &= lifted.dim() == fz.first().dim() * kk.dim() && invariant_under(&lifted, &cl_gens);
        lifts_are_maximal &= max_invariant_under(&lifted, &cl_gens) == lifted;
    }
    let (sym, anti) = swap_subspaces(ctx)?;
    let sym_matches_even = sym == lift(&even);
    let antisym_matches_odd = anti == lift(&odd);
    Ok(SymplectoCliffordReport {
        u: u.iter().map(|x| x.0).collect(),
        beta_uu: beta_uu.0,
        lattice_dims: lattice.iter().map(|s| s.dim()).collect(),
        lifts_clifford_invariant,
        lifts_are_maximal,
        sym_matches_even,
        antisym_matches_odd,
        even_dim: even.dim(),
        sym_dim: sym.dim(),
        holds: lifts_clifford_invariant && lifts_are_maximal && sym_matches_even && antisym_matches_odd,
    })
}

/// Dimension of the space of `M` with `M W^{(m1)}(h) = W^{(m2)}(h) M` for all
/// generators `h` of `H(V)`.
pub fn weyl_intertwiner_dim(field: &FieldRef, n: usize, m1: FqElem, m2: FqElem) -> Result<usize> {
    let c1 = Context::symplectic(field, n, m1)?;
    let c2 = Context::symplectic(field, n, m2)?;
    let d = c1.dim();
    let p = c1.p();
    let mut hs = vec![HeisenbergElem::new(FqElem::ONE, vec![FqElem::ZERO; 2 * n])];
    for i in 0..2 * n {
        for &a in &field.prime_basis() {
            let mut v = vec![FqElem::ZERO; 2 * n];
            v[i] = a;
            hs.push(HeisenbergElem::new(FqElem::ZERO, v));
        }
    }
    let mut rows = Vec::new();
    for h in &hs {
        let w1 = weyl_operator_v(&c1, h)?;
        let w2 = weyl_operator_v(&c2, h)?;
        // Column j of a monomial operator: (target, phase) of its image of δ_j.
        let col = |w: &RepOperator, j: usize| -> (usize, CycloNum) {
            let img = w.apply(&sparse::unit(p, j));
            let (&i, c) = img.iter().next().expect("monomial");
            (i, c.clone())
        };
        let inv2: Vec<(usize, CycloNum)> = {
            let mut t = vec![(0, CycloNum::zero(p)); d];
            for k2 in 0..d {
                let (i, c) = col(&w2, k2);
                t[i] = (k2, c);
            }
            t
        };
        for i in 0..d {
            for j in 0..d {
                // (M W1)_{ij} = M_{i,σ(j)} a_j ; (W2 M)_{ij} = b_k M_{k,j} with τ(k) = i.
                let (sj, aj) = col(&w1, j);
                let (kk, bk) = &inv2[i];
                let mut row = SparseVec::new();
                sparse::axpy(&mut row, &aj, &sparse::unit(p, i * d + sj));
                sparse::axpy(&mut row, &-bk, &sparse::unit(p, kk * d + j));
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    Ok(d * d - SubspaceCyclo::from_vectors(p, d * d, rows).dim())
}
