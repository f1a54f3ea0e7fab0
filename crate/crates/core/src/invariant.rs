//! Invariant subspaces of `μ_{U⊗V}`: fixed vectors, the largest invariant
//! subspace inside a coordinate span, the rank-deficient classification in
//! the stable range, commutant counts, and the `t = 3, n = 1` example.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::css::{branch_set, build_code, css_span, css_span_rank_at_most};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem, SquareClass};
use crate::linalg::sparse::{self, KernelTracker, SparseVec};
use crate::linalg::{MatrixFq, SubspaceCyclo, SubspaceFq};
use crate::oscillator::{gauss_sum, generating_set, Context, GeneratorWord, PsiVector, RepOperator, SympGenerator};
use crate::quadratic::{orthogonal_group_order_formula, IsotropicSubspace, OrthogonalSpace};
use crate::weight::spectrum_of_subspace;

fn generator_ops(ctx: &Context) -> Result<Vec<(SympGenerator, RepOperator)>> {
    generating_set(ctx.field(), ctx.n())
        .into_iter()
        .map(|g| RepOperator::generator(ctx, &g).map(|op| (g, op)))
        .collect()
}

/// Concatenates per-generator vectors into one residual, block `i` shifted by `i * dim`.
fn stack(parts: impl IntoIterator<Item = SparseVec>, dim: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, part) in parts.into_iter().enumerate() {
        out.extend(part.into_iter().map(|(j, c)| (i * dim + j, c)));
    }
    out
}

/// Span of `δ_F` with `rank 2⁻¹FᵀGF ≤ r`.
pub fn rank_span(ctx: &Context, r: usize) -> SubspaceCyclo {
    let idx = (0..ctx.dim()).filter(|&i| {
        let f = ctx.point(i);
        ctx.pairing_matrix(&f, &f).rank() <= r
    });
    SubspaceCyclo::coordinate_span(ctx.p(), ctx.dim(), idx)
}

/// Joint fixed space of the generating set. Fixed vectors are `𝒩`-fixed,
/// hence supported on weight-zero points, so the search starts there.
pub fn fixed_space(ctx: &Context) -> Result<SubspaceCyclo> {
    let start: Vec<usize> = (0..ctx.dim()).filter(|&i| ctx.weight_matrix(&ctx.point(i)).is_zero()).collect();
    let ops: Vec<RepOperator> = generator_ops(ctx)?
        .into_iter()
        .filter(|(g, _)| !matches!(g, SympGenerator::UpperUnipotent(_)))
        .map(|(_, op)| op)
        .collect();
    let mut tracker = KernelTracker::new();
    for &i in &start {
        let e = sparse::unit(ctx.p(), i);
        let res = stack(ops.iter().map(|op| op.apply_minus_identity(&e)), ctx.dim());
        tracker.push(res, e);
    }
    Ok(SubspaceCyclo::from_vectors(ctx.p(), ctx.dim(), tracker.into_kernel()))
}

/// Whether every vector of `k` is fixed by `op`.
pub fn fixed_by(k: &SubspaceCyclo, op: &RepOperator) -> bool {
    k.basis().all(|v| op.apply(v) == *v)
}

/// The largest subspace of `w` invariant under every generator, by iterating
/// `K ← {v ∈ K : g v ∈ K for all g}` to a fixpoint.
pub fn max_invariant_in(ctx: &Context, w: &SubspaceCyclo) -> Result<SubspaceCyclo> {
    if w.ambient() != ctx.dim() || w.conductor() != ctx.p() {
        return Err(Error::ContextMismatch("subspace does not live in this representation".into()));
    }
    let ops: Vec<RepOperator> = generator_ops(ctx)?.into_iter().map(|(_, op)| op).collect();
    Ok(max_invariant_under(w, &ops))
}

/// The largest subspace of `w` invariant under every operator in `ops`.
pub fn max_invariant_under(w: &SubspaceCyclo, ops: &[RepOperator]) -> SubspaceCyclo {
    let (p, dim) = (w.conductor(), w.ambient());
    let mut k = w.clone();
    loop {
        let mut tracker = KernelTracker::new();
        for b in k.basis() {
            let res = stack(ops.iter().map(|op| k.reduce(&op.apply(b))), dim);
            tracker.push(res, b.clone());
        }
        let next = SubspaceCyclo::from_vectors(p, dim, tracker.into_kernel());
        if next.dim() == k.dim() {
            return k;
        }
        k = next;
    }
}

/// The smallest subspace containing `seeds` and invariant under `ops`.
pub fn generated_subspace(p: u32, dim: usize, seeds: &[SparseVec], ops: &[RepOperator]) -> SubspaceCyclo {
    let mut k = SubspaceCyclo::zero(p, dim);
    let mut queue: Vec<SparseVec> = seeds.to_vec();
    while let Some(v) = queue.pop() {
        if k.insert(v.clone()) {
            queue.extend(ops.iter().map(|op| op.apply(&v)));
        }
    }
    k
}

/// Whether `ops` all map `k` into itself.
pub fn invariant_under(k: &SubspaceCyclo, ops: &[RepOperator]) -> bool {
    ops.iter().all(|op| k.basis().all(|v| k.contains(&op.apply(v))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub r: usize,
    /// `dim M_r`, the largest invariant subspace of the rank-`≤ r` span.
    pub invariant_dim: usize,
    /// `dim S_r`, the span of all codes of rank `≤ r`.
    pub css_dim: usize,
    pub equal: bool,
    pub grew: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainTheoremReport {
    pub rows: Vec<RankRow>,
    pub parity_ok: bool,
    pub pruning_ok: bool,
    pub holds: bool,
}

/// For each `r < t`: `M_r = S_r` exactly, `M_r` grows only at even `t - r`,
/// and the pruning transform annihilates every top-rank weight vector of `M_r`.
pub fn verify_main_theorem(ctx: &Context) -> Result<MainTheoremReport> {
    let (t, n) = (ctx.t(), ctx.n());
    if t > n {
        return Err(Error::OutsideStableRange { t, n });
    }
    let mut rows = Vec::new();
    let mut prev = 0;
    let mut pruning_ok = true;
    for r in 0..t {
        let m = max_invariant_in(ctx, &rank_span(ctx, r))?;
        let s = css_span_rank_at_most(ctx, r)?;
        let equal = m == s;
        rows.push(RankRow { r, invariant_dim: m.dim(), css_dim: s.dim(), equal, grew: m.dim() > prev });
        prev = m.dim();
        pruning_ok &= pruning_diagnostic(ctx, &m)?;
    }
    let parity_ok = rows.iter().all(|row| !row.grew || (t - row.r) % 2 == 0);
    let holds = parity_ok && pruning_ok && rows.iter().all(|row| row.equal);
    Ok(MainTheoremReport { rows, parity_ok, pruning_ok, holds })
}

/// Splits `v` by weight matrix.
fn weight_components(ctx: &Context, v: &SparseVec) -> BTreeMap<MatrixFq, SparseVec> {
    let mut out: BTreeMap<MatrixFq, SparseVec> = BTreeMap::new();
    for (&i, c) in v {
        out.entry(ctx.weight_matrix(&ctx.point(i))).or_default().insert(i, c.clone());
    }
    out
}

/// `Φ' = Φ - Σ_N Σ_{[F] ∈ B_N / Hom(X→N)} Φ(F) e_[F]` over isotropic `N` of
/// dimension `⌊(t - r)/2⌋`, for a weight vector `Φ` of rank `r`.
pub fn prune(ctx: &Context, phi: &SparseVec, r: usize) -> Result<SparseVec> {
    let k = (ctx.t() - r) / 2;
    let mut out = phi.clone();
    for n in ctx.space().enumerate_isotropic(k) {
        let code = build_code(ctx, &n)?;
        let mut seen = BTreeSet::new();
        for i in branch_set(ctx, &n, r)? {
            let Some(c) = phi.get(&i) else { continue };
            let rep = code.canonical(&ctx.point(i));
            if seen.insert(rep.clone()) {
                let state = code.coset_state(code.representatives().iter().position(|x| *x == rep).expect("canonical"));
                sparse::axpy(&mut out, &-c, state.psi.amplitudes());
            }
        }
    }
    Ok(out)
}

/// Applies [`prune`] to every top-rank weight component of a basis of `k`;
/// true when all residuals vanish (vacuous when `k` has full rank `t`).
pub fn pruning_diagnostic(ctx: &Context, k: &SubspaceCyclo) -> Result<bool> {
    if k.is_zero() {
        return Ok(true);
    }
    let r = spectrum_of_subspace(ctx, k)?.max_rank;
    if r >= ctx.t() {
        return Ok(true);
    }
    for v in k.basis() {
        for (b, comp) in weight_components(ctx, v) {
            if b.rank() == r && !prune(ctx, &comp, r)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheckReport {
    pub genesis_checked: usize,
    pub trolling_checked: usize,
    pub failures: usize,
}

/// All matrices `t x n` with columns in `s`.
fn hom_into(ctx: &Context, s: &SubspaceFq) -> Vec<MatrixFq> {
    let elems = s.elements();
    let n = ctx.n();
    (0..elems.len().pow(n as u32))
        .map(|mut code| {
            let mut m = MatrixFq::zero(ctx.field(), ctx.t(), n);
            for j in (0..n).rev() {
                for (i, &x) in elems[code % elems.len()].iter().enumerate() {
                    m.set(i, j, x);
                }
                code /= elems.len();
            }
            m
        })
        .collect()
}

/// Samples points `F` of top rank in the support of vectors of `k` and checks
/// `Φ(F) = Φ(F + Δ)` for `Δ ∈ Hom(X→N_F)` with `range F|ker Δ = range F`, and
/// `Φ(F) = Φ(F')` for `F' ∈ F + Hom(X→N_F)` inside the same branch set.
pub fn genesis_trolling_check(
    ctx: &Context,
    k: &SubspaceCyclo,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<SpotCheckReport> {
    let mut report = SpotCheckReport::default();
    if k.is_zero() {
        return Ok(report);
    }
    let r = spectrum_of_subspace(ctx, k)?.max_rank;
    if r >= ctx.t() {
        return Ok(report);
    }
    let zero = CycloNum::zero(ctx.p());
    let basis = k.basis_vec();
    for _ in 0..samples {
        let phi = &basis[rng.gen_range(0..basis.len())];
        let top: Vec<usize> = phi
            .keys()
            .copied()
            .filter(|&i| {
                let f = ctx.point(i);
                ctx.pairing_matrix(&f, &f).rank() == r
            })
            .collect();
        if top.is_empty() {
            continue;
        }
        let i = top[rng.gen_range(0..top.len())];
        let f = ctx.point(i);
        let nf = ctx.space().radical_of_range(&f)?;
        let range = f.image();
        let value = |m: &MatrixFq| phi.get(&ctx.index(m).expect("shape")).unwrap_or(&zero).clone();
        let here = value(&f);
        for delta in hom_into(ctx, &nf) {
            let g = f.add(&delta)?;
            let kernel = delta.kernel();
            let restricted = SubspaceFq::from_vectors(
                ctx.field(),
                ctx.t(),
                &kernel.basis_vectors().iter().map(|x| f.mul_vec(x)).collect::<Vec<_>>(),
            );
            if restricted == range {
                report.genesis_checked += 1;
                if value(&g) != here {
                    report.failures += 1;
                }
            }
            if ctx.pairing_matrix(&g, &g).rank() == r && ctx.space().radical_of_range(&g)? == nf {
                report.trolling_checked += 1;
                if value(&g) != here {
                    report.failures += 1;
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of [`fourier_support_dual`] for one `Φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub support_in_subspace: bool,
    pub transform_invariant: bool,
    pub holds: bool,
}

/// Whether `v` is invariant under translation by `Hom(X→s)`.
pub fn translation_invariant(ctx: &Context, v: &SparseVec, s: &SubspaceFq) -> bool {
    let (t, n) = (ctx.t(), ctx.n());
    for u in s.basis_vectors() {
        for j in 0..n {
            let mut e = MatrixFq::zero(ctx.field(), t, n);
            for (i, &x) in u.iter().enumerate() {
                e.set(i, j, x);
            }
            let shifted: SparseVec = v
                .iter()
                .map(|(&i, c)| (ctx.index(&ctx.point(i).add(&e).expect("shape")).expect("shape"), c.clone()))
                .collect();
            if shifted != *v {
                return false;
            }
        }
    }
    true
}

/// Whether every point in the support of `v` lies in `Hom(X→s)`.
pub fn supported_in(ctx: &Context, v: &SparseVec, s: &SubspaceFq) -> bool {
    v.keys().all(|&i| {
        let f = ctx.point(i);
        (0..f.cols()).all(|j| s.contains(&f.col(j)))
    })
}

/// `supp Φ ⊆ Hom(X→U')` if and only if `μ(J_B)Φ` is invariant under
/// translations by `Hom(X→U'^⊥)`; both sides evaluated on the given `Φ`.
pub fn fourier_support_dual(ctx: &Context, phi: &PsiVector, b: &MatrixFq, u1: &SubspaceFq) -> Result<DualityCheck> {
    ctx.check_same(phi.context())?;
    let transformed = phi.apply_generator(&SympGenerator::fourier(b.clone())?)?;
    let support_in_subspace = supported_in(ctx, phi.amplitudes(), u1);
    let transform_invariant = translation_invariant(ctx, transformed.amplitudes(), &ctx.space().perp(u1));
    Ok(DualityCheck { support_in_subspace, transform_invariant, holds: support_in_subspace == transform_invariant })
}

/// The indicator of `Hom(X→s)`.
pub fn indicator(ctx: &Context, s: &SubspaceFq) -> PsiVector {
    let amps = (0..ctx.dim())
        .filter(|&i| {
            let f = ctx.point(i);
            (0..f.cols()).all(|j| s.contains(&f.col(j)))
        })
        .map(|i| (i, CycloNum::one(ctx.p())))
        .collect();
    PsiVector::from_sparse(ctx, amps).expect("valid amplitudes")
}

/// `μ(J_B) 1_{Hom(X→U')} = γ(B)⁻¹ |Hom(X→U')| 1_{Hom(X→U'^⊥)}`.
pub fn fourier_indicator_check(ctx: &Context, b: &MatrixFq, u1: &SubspaceFq) -> Result<bool> {
    let ind = indicator(ctx, u1);
    let img = ind.apply_generator(&SympGenerator::fourier(b.clone())?)?;
    let gamma = gauss_sum(ctx.field(), &ctx_b_form(ctx, b), ctx.mass())?;
    let c = CycloNum::from_int(ctx.p(), ind.support_size() as i64).div_ref(&gamma)?;
    let expected = indicator(ctx, &ctx.space().perp(u1)).scale(&c);
    Ok(img == expected)
}

/// Gram matrix of `β_B(F, G) = tr(Fᵀ G_U G B)` on `Hom(X→U)` in the cell basis,
/// `G_U ⊗ B`; its Gauss sum is the normalization `γ(B, U)`.
fn ctx_b_form(ctx: &Context, b: &MatrixFq) -> MatrixFq {
    let (t, n) = (ctx.t(), ctx.n());
    let k = ctx.field();
    let g = ctx.gram();
    let mut m = MatrixFq::zero(k, t * n, t * n);
    for i in 0..t {
        for j in 0..n {
            for i2 in 0..t {
                for j2 in 0..n {
                    m.set(i * n + j, i2 * n + j2, k.mul(g.get(i, i2), b.get(j, j2)));
                }
            }
        }
    }
    m
}

/// Disjoint-set forest with path halving.
struct UnionFind {
    parent: Vec<u32>,
    roots: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), roots: n }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
            self.roots -= 1;
        }
    }
}

/// Largest `|V|^t` handled by [`commutant_dim_orbits`].
pub const ORBIT_GUARD: usize = 10_000_000;

/// Number of `Sp(V)`-orbits on `V^t`, which equals the commutant dimension of
/// `μ_V^{⊗t}` because `|χ_μ(g)|² = #Fix_V(g)`.
pub fn commutant_dim_orbits(field: &FieldRef, n: usize, t: usize, guard: usize) -> Result<usize> {
    let q = field.q() as usize;
    let vsize = q.pow(2 * n as u32);
    let total = (vsize as u128).pow(t as u32);
    if total > guard as u128 {
        return Err(Error::SizeGuard(format!("|V|^t = {total} exceeds {guard}")));
    }
    let total = total as usize;
    let decode = |mut idx: usize| {
        let mut v = vec![FqElem::ZERO; 2 * n];
        for slot in v.iter_mut().rev() {
            *slot = FqElem((idx % q) as u32);
            idx /= q;
        }
        v
    };
    let encode = |v: &[FqElem]| v.iter().fold(0usize, |acc, x| acc * q + x.0 as usize);
    // Action of each generator on single vectors, as a lookup table.
    let tables: Vec<Vec<usize>> = generating_set(field, n)
        .iter()
        .map(|g| {
            let m = g.symplectic_matrix(field);
            (0..vsize).map(|i| encode(&m.mul_vec(&decode(i)))).collect()
        })
        .collect();
    let mut uf = UnionFind::new(total);
    for point in 0..total {
        for table in &tables {
            let mut rest = point;
            let mut image = 0;
            let mut scale = 1;
            for _ in 0..t {
                image += table[rest % vsize] * scale;
                rest /= vsize;
                scale *= vsize;
            }
            uf.union(point as u32, image as u32);
        }
    }
    Ok(uf.roots)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub r: usize,
    pub k: usize,
    pub isotropic_count: usize,
    pub quotient_dim: usize,
    pub quotient_disc: SquareClass,
    pub orthogonal_order: u128,
    pub contribution: u128,
}

/// Bookkeeping of the decomposition `⊕_r ⊕_τ Ind_{O_r}^{O(U)}(τ) ⊗ η(τ)` at
/// the level of dimensions: `[O(U):O_r]` is the number of isotropic
/// `k`-spaces, and `Σ_τ (dim τ)² = |O(U_r)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionLedger {
    pub t: usize,
    pub disc: SquareClass,
    pub witt_index: usize,
    pub rows: Vec<LedgerRow>,
}

/// Largest `q^{t²}` for which `|O(U_r)|` is found by enumeration.
const BRUTE_FORCE_LIMIT: u128 = 2_000_000;

impl DecompositionLedger {
    pub fn new(u: &OrthogonalSpace) -> Result<Self> {
        let q = u.field().q() as u128;
        let mut rows = Vec::new();
        for k in 0..=u.witt_index() {
            let isos = if k == 0 { vec![IsotropicSubspace::zero(u)] } else { u.enumerate_isotropic(k) };
            let ur = isos[0].quotient()?.space().clone();
            let d = ur.dim();
            let orthogonal_order = if q.pow((d * d) as u32) <= BRUTE_FORCE_LIMIT {
                ur.orthogonal_group().len() as u128
            } else {
                orthogonal_group_order_formula(&ur)
            };
            let c = isos.len() as u128;
            rows.push(LedgerRow {
                r: u.dim() - 2 * k,
                k,
                isotropic_count: isos.len(),
                quotient_dim: d,
                quotient_disc: ur.discriminant(),
                orthogonal_order,
                contribution: c * c * orthogonal_order,
            });
        }
        Ok(DecompositionLedger { t: u.dim(), disc: u.discriminant(), witt_index: u.witt_index(), rows })
    }

    /// `R(U) = {t - 2k : 0 ≤ k ≤ witt index}`.
    pub fn ranks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.r).collect()
    }
}

pub fn predicted_commutant_dim(ledger: &DecompositionLedger) -> u128 {
    ledger.rows.iter().map(|r| r.contribution).sum()
}

/// Trace of `μ_{𝔥⊗V}(w)` against `q^{dim ker(S_w - 1)}`.
pub fn hyperbolic_trace_check(ctx: &Context, word: &GeneratorWord) -> Result<bool> {
    if !ctx.space().is_hyperbolic_plane() {
        return Err(Error::ContextMismatch("U must be a hyperbolic plane".into()));
    }
    let k = ctx.field();
    let s = word.symplectic_matrix(k, ctx.n());
    let fixed = s.sub(&MatrixFq::identity(k, 2 * ctx.n()))?.kernel().dim();
    let trace = RepOperator::word(ctx, word)?.trace(ctx.dim(), ctx.p());
    Ok(trace == CycloNum::from_int(ctx.p(), (ctx.q() as i64).pow(fixed as u32)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicReport {
    pub words_checked: usize,
    pub mismatches: usize,
}

pub fn hyperbolic_permutation_check(ctx: &Context, words: &[GeneratorWord]) -> Result<HyperbolicReport> {
    let results: Vec<bool> = words.par_iter().map(|w| hyperbolic_trace_check(ctx, w)).collect::<Result<_>>()?;
    let mismatches = results.iter().filter(|ok| !**ok).count();
    Ok(HyperbolicReport { words_checked: words.len(), mismatches })
}

/// The vector `ψ ∈ L²(U)`, `dim U = 3`, supported on isotropic vectors:
/// `ℓ(β(x₀, z))` off the line of `x₀`, `ℓ(2λ)` at `z = λx₀`, where `x₀` is
/// the first nonzero isotropic vector in enumeration order.
pub fn counterexample_psi(ctx: &Context) -> Result<(PsiVector, Vec<FqElem>)> {
    if ctx.t() != 3 || ctx.n() != 1 || ctx.field().degree() != 1 {
        return Err(Error::ContextMismatch("needs n = 1, a prime field and dim U = 3".into()));
    }
    let k = ctx.field();
    let u = ctx.space();
    let x0 = (1..ctx.dim())
        .map(|i| ctx.point(i).col(0))
        .find(|z| u.beta(z, z).is_zero())
        .expect("F_p^3 has isotropic vectors");
    let piv = x0.iter().position(|x| !x.is_zero()).expect("nonzero");
    let line = SubspaceFq::from_vectors(k, 3, std::slice::from_ref(&x0));
    let mut amps = SparseVec::new();
    for i in 1..ctx.dim() {
        let z = ctx.point(i).col(0);
        if !u.beta(&z, &z).is_zero() {
            continue;
        }
        let arg = if line.contains(&z) {
            let lam = k.div(z[piv], x0[piv])?;
            k.add(lam, lam)
        } else {
            u.beta(&x0, &z)
        };
        let l = k.legendre(arg);
        if l != 0 {
            amps.insert(i, CycloNum::from_int(ctx.p(), l as i64));
        }
    }
    Ok((PsiVector::from_sparse(ctx, amps)?, x0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub p: u32,
    pub x0: Vec<u32>,
    pub fixed_by_generators: bool,
    pub fixed_by_full_fourier: bool,
    pub support_size: usize,
    /// `(p+1)(p-1)+1`, the count stated alongside the construction.
    pub stated_support_size: usize,
    pub support_matches_statement: bool,
    pub rank: usize,
    pub parity_violated: bool,
    pub in_css_span: bool,
}

/// Builds `ψ` for `p` and checks it is fixed by the whole group, has rank 0
/// (so `t - r = 3` is odd) and is not explained by CSS codes of rank 1.
pub fn verify_counterexample(p: u32, mass: FqElem) -> Result<CounterexampleReport> {
    let k = crate::field::Field::prime(p)?;
    let ctx = Context::new(OrthogonalSpace::standard(&k, 3, SquareClass::Square), 1, mass)?;
    let (psi, x0) = counterexample_psi(&ctx)?;
    let mut fixed_by_generators = true;
    for (_, op) in generator_ops(&ctx)? {
        fixed_by_generators &= psi.apply(&op) == psi;
    }
    let full = psi.apply_generator(&SympGenerator::Fourier(MatrixFq::identity(&k, 1)))?;
    let span = SubspaceCyclo::from_vectors(ctx.p(), ctx.dim(), [psi.amplitudes().clone()]);
    let rank = spectrum_of_subspace(&ctx, &span)?.max_rank;
    let stated = ((p + 1) * (p - 1) + 1) as usize;
    Ok(CounterexampleReport {
        p,
        x0: x0.iter().map(|x| x.0).collect(),
        fixed_by_generators,
        fixed_by_full_fourier: full == psi,
        support_size: psi.support_size(),
        stated_support_size: stated,
        support_matches_statement: psi.support_size() == stated,
        rank,
        parity_violated: (ctx.t() - rank) % 2 == 1,
        in_css_span: css_span(&ctx, 1)?.contains(psi.amplitudes()),
    })
}
