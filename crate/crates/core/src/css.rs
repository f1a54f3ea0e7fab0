//! Tensor-power CSS codes `C_N ⊂ L²(Hom(X→U))` for isotropic `N ⊂ U`:
//! functions supported on `Hom(X→N^⊥)` and constant on `Hom(X→N)`-cosets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::{FqElem, SquareClass};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{MatrixFq, SubspaceCyclo, SubspaceFq};
use crate::oscillator::{generating_set, Context, PsiVector, RepOperator, SympGenerator};
use crate::quadratic::{IsotropicSubspace, QuotientSpace};

/// A coset `[F] = F + Hom(X→N)` and its state `e_[F] = Σ_{G∈[F]} δ_G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetState {
    pub rep: MatrixFq,
    pub psi: PsiVector,
}

#[derive(Clone, Debug)]
pub struct CSSCode {
    ctx: Context,
    n: IsotropicSubspace,
    quotient: QuotientSpace,
    perp: SubspaceFq,
    reps: Vec<MatrixFq>,
    /// Context index of each representative -> position in `reps`.
    rep_pos: HashMap<usize, usize>,
    offsets: Vec<MatrixFq>,
}

/// All `t x n` matrices whose columns are drawn from `cols`.
fn matrices_with_columns(ctx: &Context, cols: &[Vec<FqElem>]) -> Vec<MatrixFq> {
    let (t, n) = (ctx.t(), ctx.n());
    let total = cols.len().pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut m = MatrixFq::zero(ctx.field(), t, n);
            for j in (0..n).rev() {
                let c = &cols[code % cols.len()];
                code /= cols.len();
                for (i, &x) in c.iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            m
        })
        .collect()
}

pub fn build_code(ctx: &Context, n: &IsotropicSubspace) -> Result<CSSCode> {
    if n.space() != ctx.space() {
        return Err(Error::ContextMismatch("isotropic subspace lives in a different U".into()));
    }
    let quotient = n.quotient()?;
    let residues: BTreeSet<Vec<FqElem>> = n.perp().elements().iter().map(|v| n.subspace().reduce(v)).collect();
    let residues: Vec<Vec<FqElem>> = residues.into_iter().collect();
    let reps = matrices_with_columns(ctx, &residues);
    let rep_pos = reps.iter().enumerate().map(|(i, r)| ctx.index(r).map(|j| (j, i))).collect::<Result<_>>()?;
    let offsets = matrices_with_columns(ctx, &n.subspace().elements());
    Ok(CSSCode { ctx: ctx.clone(), n: n.clone(), quotient, perp: n.perp(), reps, rep_pos, offsets })
}

impl CSSCode {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn isotropic(&self) -> &IsotropicSubspace {
        &self.n
    }

    pub fn quotient(&self) -> &QuotientSpace {
        &self.quotient
    }

    /// `dim C_N = q^{n(t - 2 dim N)}`.
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Rank of `C_N` as a representation, `t - 2 dim N`.
    pub fn rank(&self) -> usize {
        self.ctx.t() - 2 * self.n.dim()
    }

    pub fn representatives(&self) -> &[MatrixFq] {
        &self.reps
    }

    /// Canonical representative: each column reduced modulo the RREF basis of `N`.
    pub fn canonical(&self, f: &MatrixFq) -> MatrixFq {
        let mut out = f.clone();
        for j in 0..f.cols() {
            for (i, x) in self.n.subspace().reduce(&f.col(j)).into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }

    fn state_vec(&self, rep: &MatrixFq) -> SparseVec {
        let one = CycloNum::one(self.ctx.p());
        self.offsets
            .iter()
            .map(|d| (self.ctx.index(&rep.add(d).expect("shape")).expect("shape"), one.clone()))
            .collect()
    }

    pub fn coset_state(&self, i: usize) -> CosetState {
        let rep = self.reps[i].clone();
        let psi = PsiVector::from_sparse(&self.ctx, self.state_vec(&rep)).expect("valid amplitudes");
        CosetState { rep, psi }
    }

    pub fn basis(&self) -> Vec<CosetState> {
        (0..self.dim()).map(|i| self.coset_state(i)).collect()
    }

    pub fn span(&self) -> SubspaceCyclo {
        SubspaceCyclo::from_vectors(self.ctx.p(), self.ctx.dim(), self.reps.iter().map(|r| self.state_vec(r)))
    }

    /// Nonzero coefficients of `v` in the coset-state basis, keyed by
    /// position in [`CSSCode::representatives`], or `None` when `v ∉ C_N`.
    pub fn sparse_coefficients(&self, v: &SparseVec) -> Option<BTreeMap<usize, CycloNum>> {
        let mut seen: BTreeMap<usize, (CycloNum, usize)> = BTreeMap::new();
        for (&i, c) in v {
            let f = self.ctx.point(i);
            if !(0..f.cols()).all(|j| self.perp.contains(&f.col(j))) {
                return None;
            }
            let pos = self.rep_pos[&self.ctx.index(&self.canonical(&f)).ok()?];
            let slot = seen.entry(pos).or_insert_with(|| (c.clone(), 0));
            if slot.0 != *c {
                return None;
            }
            slot.1 += 1;
        }
        let full = self.offsets.len();
        seen.into_iter().map(|(pos, (c, count))| (count == full).then_some((pos, c))).collect()
    }

    /// Coefficients of `v` in the coset-state basis, or `None` when `v ∉ C_N`.
    pub fn coefficients(&self, v: &SparseVec) -> Option<Vec<CycloNum>> {
        let sparse = self.sparse_coefficients(v)?;
        let zero = CycloNum::zero(self.ctx.p());
        Some((0..self.reps.len()).map(|i| sparse.get(&i).cloned().unwrap_or_else(|| zero.clone())).collect())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.sparse_coefficients(v).is_some()
    }

    /// First generator (from `gens`) mapping some coset state outside `C_N`.
    pub fn invariance_witness(&self, gens: &[SympGenerator]) -> Result<Option<SympGenerator>> {
        for g in gens {
            let op = RepOperator::generator(&self.ctx, g)?;
            if self.reps.iter().any(|r| !self.contains(&op.apply(&self.state_vec(r)))) {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// The `U' = N^⊥/N` context of the same mass.
    pub fn quotient_context(&self) -> Result<Context> {
        Context::new(self.quotient.space().clone(), self.ctx.n(), self.ctx.mass())
    }

    /// `π(F)`: the columns of `F ∈ Hom(X→N^⊥)` projected to `U'`.
    pub fn project(&self, f: &MatrixFq) -> Result<MatrixFq> {
        let t2 = self.quotient.space().dim();
        let mut out = MatrixFq::zero(self.ctx.field(), t2, f.cols());
        for j in 0..f.cols() {
            for (i, x) in self.quotient.project(&f.col(j))?.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }

    /// The map `e_[F] ↦ δ_{π(F)}` applied to `v ∈ C_N`.
    pub fn intertwine(&self, v: &SparseVec, target: &Context) -> Result<SparseVec> {
        let coeffs =
            self.sparse_coefficients(v).ok_or_else(|| Error::NotInvariant("vector is not in the code".into()))?;
        let mut out = SparseVec::new();
        for (pos, c) in coeffs {
            out.insert(target.index(&self.project(&self.reps[pos])?)?, c);
        }
        Ok(out)
    }

    pub fn listing(&self) -> CodeListing {
        CodeListing {
            n_basis: self.n.subspace().basis_vectors().iter().map(|v| v.iter().map(|x| x.0).collect()).collect(),
            dim: self.dim(),
            rank: self.rank(),
            disc_quotient: self.quotient.space().discriminant(),
            n_coset_states: self.reps.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeListing {
    #[serde(rename = "N_basis")]
    pub n_basis: Vec<Vec<u32>>,
    pub dim: usize,
    pub rank: usize,
    pub disc_quotient: SquareClass,
    pub n_coset_states: usize,
}

/// All codes `C_N` with `dim N = k`.
pub fn codes_of_dim(ctx: &Context, k: usize) -> Result<Vec<CSSCode>> {
    ctx.space().enumerate_isotropic(k).iter().map(|n| build_code(ctx, n)).collect()
}

/// Span of all `C_N` with `dim N = (t - r)/2`; zero when `t - r` is odd.
pub fn css_span(ctx: &Context, r: usize) -> Result<SubspaceCyclo> {
    let t = ctx.t();
    if r > t || (t - r) % 2 == 1 {
        return Ok(SubspaceCyclo::zero(ctx.p(), ctx.dim()));
    }
    let mut vecs = Vec::new();
    for code in codes_of_dim(ctx, (t - r) / 2)? {
        vecs.extend(code.reps.iter().map(|rep| code.state_vec(rep)));
    }
    Ok(SubspaceCyclo::from_vectors(ctx.p(), ctx.dim(), vecs))
}

/// Span of all `C_N` with `dim N ≥ ⌈(t - r)/2⌉`, i.e. all codes of rank at most `r`.
pub fn css_span_rank_at_most(ctx: &Context, r: usize) -> Result<SubspaceCyclo> {
    let t = ctx.t();
    let lo = t.saturating_sub(r).div_ceil(2);
    let mut acc = SubspaceCyclo::zero(ctx.p(), ctx.dim());
    for k in lo..=t / 2 {
        acc = acc.sum(&css_span(ctx, t - 2 * k)?)?;
    }
    Ok(acc)
}

/// `B_N = {F : rank FᵀGF = r, N_F = N}` as basis indices.
pub fn branch_set(ctx: &Context, n: &IsotropicSubspace, r: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..ctx.dim() {
        let f = ctx.point(i);
        if ctx.pairing_matrix(&f, &f).rank() == r && ctx.space().radical_of_range(&f)? == *n.subspace() {
            out.push(i);
        }
    }
    Ok(out)
}

/// Outcome of [`css_intertwiner_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerReport {
    pub holds: bool,
    pub generators_checked: usize,
    pub states_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Verifies that `e_[F] ↦ δ_{π(F)}` is a bijection onto the `U'` basis and
/// intertwines every generator of the fixed generating set.
pub fn css_intertwiner_check(ctx: &Context, n: &IsotropicSubspace) -> Result<IntertwinerReport> {
    let code = build_code(ctx, n)?;
    let target = code.quotient_context()?;
    let gens = generating_set(ctx.field(), ctx.n());
    let mut report = IntertwinerReport { holds: true, generators_checked: 0, states_checked: 0, witness: None };
    let images: BTreeSet<usize> =
        code.reps.iter().map(|r| code.project(r).and_then(|m| target.index(&m))).collect::<Result<_>>()?;
    if images.len() != code.dim() || images.len() != target.dim() {
        report.holds = false;
        report.witness = Some(format!("projection hits {} of {} basis vectors", images.len(), target.dim()));
        return Ok(report);
    }
    for g in &gens {
        let op = RepOperator::generator(ctx, g)?;
        let op2 = RepOperator::generator(&target, g)?;
        for r in &code.reps {
            let e = code.state_vec(r);
            let lhs = match code.intertwine(&op.apply(&e), &target) {
                Ok(v) => v,
                Err(_) => {
                    report.holds = false;
                    report.witness = Some(format!("{g:?} leaves the code at [{r}]"));
                    return Ok(report);
                }
            };
            let rhs = op2.apply(&code.intertwine(&e, &target)?);
            report.states_checked += 1;
            if lhs != rhs {
                report.holds = false;
                report.witness = Some(format!("{g:?} at [{r}]"));
                return Ok(report);
            }
        }
        report.generators_checked += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldRef};
    use crate::linalg::SubspaceFq;
    use crate::oscillator::psi_isotropic;
    use crate::quadratic::OrthogonalSpace;
    use crate::weight::spectrum_of_subspace;

    fn line(k: &FieldRef, v: &[i64]) -> SubspaceFq {
        SubspaceFq::from_vectors(k, v.len(), &[v.iter().map(|&x| k.from_int(x)).collect()])
    }

    #[test]
    fn trivial_code_is_everything() {
        let k = Field::prime(3).unwrap();
        let u = OrthogonalSpace::standard(&k, 2, SquareClass::Square);
        let ctx = Context::new(u.clone(), 1, FqElem::ONE).unwrap();
        let code = build_code(&ctx, &IsotropicSubspace::zero(&u)).unwrap();
        assert_eq!(code.dim(), 9);
        assert_eq!(code.span(), SubspaceCyclo::full(3, 9));
        assert!(css_intertwiner_check(&ctx, &IsotropicSubspace::zero(&u)).unwrap().holds);
    }

    #[test]
    fn hyperbolic_line_code() {
        let k = Field::prime(3).unwrap();
        let u = OrthogonalSpace::hyperbolic_plane(&k);
        let ctx = Context::new(u.clone(), 1, FqElem::ONE).unwrap();
        let iplus = IsotropicSubspace::new(&u, line(&k, &[1, 1])).unwrap();
        let code = build_code(&ctx, &iplus).unwrap();
        assert_eq!(code.dim(), 1);
        let psi = psi_isotropic(&ctx, &iplus).unwrap();
        assert_eq!(code.span(), SubspaceCyclo::from_vectors(3, 9, [psi.into_sparse()]));
        let l = code.listing();
        assert_eq!((l.dim, l.rank, l.n_coset_states), (1, 0, 1));
        assert!(serde_json::to_string(&l).unwrap().contains("\"N_basis\""));
    }

    #[test]
    fn spans_by_rank() {
        let k = Field::prime(3).unwrap();
        let h = OrthogonalSpace::hyperbolic_plane(&k);
        let ctx = Context::new(h.clone(), 1, FqElem::ONE).unwrap();
        assert_eq!(css_span(&ctx, 0).unwrap().dim(), 2);
        assert_eq!(css_span(&ctx, 1).unwrap().dim(), 0);
        assert_eq!(css_span(&ctx, 2).unwrap(), SubspaceCyclo::full(3, 9));
        let aniso = Context::new(OrthogonalSpace::standard(&k, 2, SquareClass::Square), 1, FqElem::ONE).unwrap();
        assert!(css_span(&aniso, 0).unwrap().is_zero());
        assert_eq!(css_span_rank_at_most(&ctx, 1).unwrap().dim(), 2);
    }

    #[test]
    fn code_dimension_formula() {
        let k = Field::prime(5).unwrap();
        let u = OrthogonalSpace::standard(&k, 4, SquareClass::Square);
        let ctx = Context::new(u.clone(), 2, FqElem::ONE).unwrap();
        let n = &u.enumerate_isotropic(1)[0];
        let code = build_code(&ctx, n).unwrap();
        assert_eq!(code.dim(), 625);
        for st in code.basis().iter().step_by(97) {
            assert_eq!(st.psi.support_size(), 25);
            assert_eq!(code.canonical(&st.rep), st.rep);
        }
    }

    #[test]
    fn codes_are_invariant_with_expected_rank() {
        for q in [3u32, 5] {
            let k = Field::prime(q).unwrap();
            for u in [OrthogonalSpace::hyperbolic_plane(&k), OrthogonalSpace::standard(&k, 3, SquareClass::Nonsquare)] {
                let ctx = Context::new(u.clone(), 1, FqElem::ONE).unwrap();
                for kdim in 0..=u.witt_index() {
                    for code in codes_of_dim(&ctx, kdim).unwrap() {
                        assert_eq!(code.invariance_witness(&generating_set(&k, 1)).unwrap(), None);
                        let rep = spectrum_of_subspace(&ctx, &code.span()).unwrap();
                        assert_eq!(rep.max_rank, code.rank().min(ctx.n()));
                        for st in code.basis() {
                            let w = ctx.weight_matrix(&st.rep);
                            assert!(st.psi.amplitudes().keys().all(|&i| ctx.weight_matrix(&ctx.point(i)) == w));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn intertwiner_examples() {
        for q in [3u32, 5] {
            let k = Field::prime(q).unwrap();
            let h = OrthogonalSpace::hyperbolic_plane(&k);
            for n in 1..=2 {
                let ctx = Context::new(h.clone(), n, FqElem::ONE).unwrap();
                for iso in h.enumerate_isotropic(1) {
                    let rep = css_intertwiner_check(&ctx, &iso).unwrap();
                    assert!(rep.holds, "{rep:?}");
                }
            }
        }
        let k = Field::prime(3).unwrap();
        let u = OrthogonalSpace::standard(&k, 3, SquareClass::Square);
        let ctx = Context::new(u.clone(), 1, FqElem(2)).unwrap();
        for iso in u.enumerate_isotropic(1) {
            let code = build_code(&ctx, &iso).unwrap();
            assert_eq!(code.quotient().space().discriminant(), SquareClass::Nonsquare);
            assert!(css_intertwiner_check(&ctx, &iso).unwrap().holds);
        }
    }

    #[test]
    fn branch_sets() {
        let k = Field::prime(3).unwrap();
        let h = OrthogonalSpace::hyperbolic_plane(&k);
        let ctx = Context::new(h.clone(), 1, FqElem::ONE).unwrap();
        let lines = h.enumerate_isotropic(1);
        let mut seen = BTreeSet::new();
        for iso in &lines {
            let b = branch_set(&ctx, iso, 0).unwrap();
            assert_eq!(b.len(), 2);
            for &i in &b {
                assert!(iso.subspace().contains(&ctx.point(i).col(0)));
                assert!(seen.insert(i));
            }
        }
        let full = branch_set(&ctx, &IsotropicSubspace::zero(&h), 1).unwrap();
        assert_eq!(full.len(), 9 - 1 - 4);
    }
}
