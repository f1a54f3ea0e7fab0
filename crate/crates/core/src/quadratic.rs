//! Orthogonal spaces `(U, β)`, the symplectic space `V = X ⊕ X*`, isotropic
//! subspaces and the quotient geometry `N^⊥ / N`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem, SquareClass};
use crate::linalg::{diagonalize_form, MatrixFq, SubspaceFq};

/// A nondegenerate quadratic space `F_q^t` with gram matrix `G`.
#[derive(Clone, PartialEq, Eq)]
pub struct OrthogonalSpace {
    gram: MatrixFq,
    disc: SquareClass,
    witt_index: usize,
}

impl OrthogonalSpace {
    pub fn new(gram: MatrixFq) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let fd = diagonalize_form(&gram)?;
        if fd.rank < gram.rows() {
            return Err(Error::Degenerate);
        }
        let witt_index = witt_index_of(gram.field(), gram.rows(), fd.disc);
        Ok(OrthogonalSpace { gram, disc: fd.disc, witt_index })
    }

    /// `diag(1, ..., 1, d)` with `d` the representative of the class.
    pub fn standard(field: &FieldRef, t: usize, d: SquareClass) -> Self {
        let mut diag = vec![FqElem::ONE; t];
        if t > 0 {
            diag[t - 1] = field.class_rep(d);
        }
        let gram = MatrixFq::diag(field, &diag);
        let disc = if t == 0 { SquareClass::Square } else { d };
        OrthogonalSpace { witt_index: witt_index_of(field, t, disc), gram, disc }
    }

    /// The hyperbolic plane in the form `diag(1, -1)`.
    pub fn hyperbolic_plane(field: &FieldRef) -> Self {
        let gram = MatrixFq::diag(field, &[FqElem::ONE, field.neg(FqElem::ONE)]);
        Self::new(gram).expect("diag(1,-1) is nondegenerate")
    }

    pub fn field(&self) -> &FieldRef {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &MatrixFq {
        &self.gram
    }

    pub fn discriminant(&self) -> SquareClass {
        self.disc
    }

    /// Maximal dimension of an isotropic subspace.
    pub fn witt_index(&self) -> usize {
        self.witt_index
    }

    /// `β(u, v) = uᵀ G v`.
    pub fn beta(&self, u: &[FqElem], v: &[FqElem]) -> FqElem {
        let k = self.field();
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).fold(FqElem::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
    }

    /// Whether `U ≅ 𝔥`, the hyperbolic plane.
    pub fn is_hyperbolic_plane(&self) -> bool {
        self.dim() == 2 && self.witt_index == 1
    }

    /// `S^⊥ = { u : β(u, s) = 0 for all s ∈ S }`.
    pub fn perp(&self, s: &SubspaceFq) -> SubspaceFq {
        if s.dim() == 0 {
            return SubspaceFq::full(self.field(), self.dim());
        }
        (s.basis() * &self.gram).kernel()
    }

    pub fn is_isotropic(&self, s: &SubspaceFq) -> bool {
        let b = s.basis_vectors();
        b.iter().enumerate().all(|(i, u)| b[i..].iter().all(|v| self.beta(u, v).is_zero()))
    }

    /// All isotropic subspaces of dimension `k`, in lexicographic order of
    /// their RREF bases.
    pub fn enumerate_isotropic(&self, k: usize) -> Vec<IsotropicSubspace> {
        let t = self.dim();
        if k > t {
            return Vec::new();
        }
        let mut out: Vec<SubspaceFq> =
            rref_grassmannian(self.field(), t, k).into_iter().filter(|s| self.is_isotropic(s)).collect();
        out.sort_by(|a, b| a.basis().cmp(b.basis()));
        out.into_iter().map(|sub| IsotropicSubspace { space: self.clone(), sub }).collect()
    }

    /// Number of nonzero isotropic vectors, by direct point count.
    pub fn isotropic_vector_count(&self) -> usize {
        let full = SubspaceFq::full(self.field(), self.dim());
        full.elements().iter().filter(|v| v.iter().any(|x| !x.is_zero()) && self.beta(v, v).is_zero()).count()
    }

    /// Radical of the range of `F: X -> U`, `N_F = range F ∩ (range F)^⊥`.
    pub fn radical_of_range(&self, f: &MatrixFq) -> Result<SubspaceFq> {
        if f.rows() != self.dim() {
            return Err(Error::DimensionMismatch(format!("F has {} rows, U has dimension {}", f.rows(), self.dim())));
        }
        let r = f.image();
        r.intersect(&self.perp(&r))
    }

    /// All elements of `O(U)`, by brute force over `t x t` matrices.
    pub fn orthogonal_group(&self) -> Vec<MatrixFq> {
        let t = self.dim();
        let k = self.field();
        let q = k.q() as usize;
        let total = q.checked_pow((t * t) as u32).expect("orthogonal group search too large");
        let mut out = Vec::new();
        let mut data = vec![FqElem::ZERO; t * t];
        for mut idx in 0..total {
            for slot in data.iter_mut().rev() {
                *slot = FqElem((idx % q) as u32);
                idx /= q;
            }
            let g = MatrixFq::from_elems(k, t, t, data.clone()).expect("shape");
            if g.preserves_form(&self.gram) {
                out.push(g);
            }
        }
        out
    }
}

impl fmt::Debug for OrthogonalSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrthogonalSpace(t={}, gram={}, disc={:?})", self.dim(), self.gram, self.disc)
    }
}

/// Witt index of a nondegenerate space of dimension `t` and discriminant `d`.
fn witt_index_of(field: &FieldRef, t: usize, d: SquareClass) -> usize {
    if t % 2 == 1 {
        return t / 2;
    }
    // Split iff d = (-1)^{t/2}.
    let minus_one = field.square_class(field.neg(FqElem::ONE)).expect("-1 != 0");
    let split = if (t / 2).is_multiple_of(2) { SquareClass::Square } else { minus_one };
    if d == split {
        t / 2
    } else {
        t / 2 - 1
    }
}

/// Order of `O(U)` from the classical formulas.
pub fn orthogonal_group_order_formula(u: &OrthogonalSpace) -> u128 {
    let q = u.field().q() as u128;
    let t = u.dim();
    if t == 0 {
        return 1;
    }
    let m = t / 2;
    if t % 2 == 1 {
        let mut o = 2 * q.pow((m * m) as u32);
        for i in 1..=m {
            o *= q.pow(2 * i as u32) - 1;
        }
        o
    } else {
        let eps_plus = u.witt_index() == m;
        let mut o = 2 * q.pow((m * (m - 1)) as u32);
        o = if eps_plus { o * (q.pow(m as u32) - 1) } else { o * (q.pow(m as u32) + 1) };
        for i in 1..m {
            o *= q.pow(2 * i as u32) - 1;
        }
        o
    }
}

/// Every `k`-dimensional subspace of `F_q^t`.
pub fn all_subspaces(field: &FieldRef, t: usize, k: usize) -> Vec<SubspaceFq> {
    rref_grassmannian(field, t, k)
}

/// Every `k`-dimensional subspace of `F_q^t`, as RREF bases.
fn rref_grassmannian(field: &FieldRef, t: usize, k: usize) -> Vec<SubspaceFq> {
    let q = field.q() as usize;
    let mut out = Vec::new();
    for pivots in combinations(t, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = pivots.clone();
                ((pv[i] + 1)..t).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for mut idx in 0..total {
            let mut m = MatrixFq::zero(field, k, t);
            for (i, &pc) in pivots.iter().enumerate() {
                m.set(i, pc, FqElem::ONE);
            }
            for &(i, c) in free.iter().rev() {
                m.set(i, c, FqElem((idx % q) as u32));
                idx /= q;
            }
            out.push(SubspaceFq::from_matrix(&m));
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The symplectic space `V = X ⊕ X*`, `X = F_q^n`, with
/// `[x ⊕ y, x' ⊕ y'] = y'(x) - y(x')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    field: FieldRef,
    n: usize,
}

impl SymplecticSpace {
    pub fn new(field: &FieldRef, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("n must be at least 1".into()));
        }
        Ok(SymplecticSpace { field: field.clone(), n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Gram matrix `Ω = [[0, I], [-I, 0]]` of the symplectic form.
    pub fn omega(&self) -> MatrixFq {
        let k = &self.field;
        let i = MatrixFq::identity(k, self.n);
        let z = MatrixFq::zero(k, self.n, self.n);
        MatrixFq::block(&z, &i, &i.neg(), &z).expect("square blocks")
    }

    pub fn pairing(&self, v: &[FqElem], w: &[FqElem]) -> FqElem {
        let k = &self.field;
        let n = self.n;
        let mut acc = FqElem::ZERO;
        for i in 0..n {
            acc = k.add(acc, k.mul(v[i], w[n + i]));
            acc = k.sub(acc, k.mul(v[n + i], w[i]));
        }
        acc
    }

    pub fn is_symplectic(&self, m: &MatrixFq) -> bool {
        m.rows() == 2 * self.n && m.cols() == 2 * self.n && m.preserves_form(&self.omega())
    }
}

/// An isotropic subspace `N ⊂ U`.
#[derive(Clone, PartialEq, Eq)]
pub struct IsotropicSubspace {
    space: OrthogonalSpace,
    sub: SubspaceFq,
}

impl IsotropicSubspace {
    pub fn new(space: &OrthogonalSpace, sub: SubspaceFq) -> Result<Self> {
        if sub.ambient() != space.dim() {
            return Err(Error::DimensionMismatch("subspace ambient differs from U".into()));
        }
        if !space.is_isotropic(&sub) {
            return Err(Error::NotIsotropic);
        }
        Ok(IsotropicSubspace { space: space.clone(), sub })
    }

    pub fn zero(space: &OrthogonalSpace) -> Self {
        IsotropicSubspace { space: space.clone(), sub: SubspaceFq::zero(space.field(), space.dim()) }
    }

    pub fn space(&self) -> &OrthogonalSpace {
        &self.space
    }

    pub fn subspace(&self) -> &SubspaceFq {
        &self.sub
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn perp(&self) -> SubspaceFq {
        self.space.perp(&self.sub)
    }

    /// The quotient `U' = N^⊥ / N`, realized on a complement of `N ⊕ N'`
    /// where `N'` is an isotropic dual partner of `N`.
    pub fn quotient(&self) -> Result<QuotientSpace> {
        let u = &self.space;
        let k = u.field().clone();
        let t = u.dim();
        let ns = self.sub.basis_vectors();
        let m = &self.sub.basis().clone() * u.gram();
        let mut dual: Vec<Vec<FqElem>> = Vec::with_capacity(ns.len());
        for j in 0..ns.len() {
            let mut rhs = vec![FqElem::ZERO; ns.len()];
            rhs[j] = FqElem::ONE;
            dual.push(solve_first(&m, &rhs).ok_or(Error::Degenerate)?);
        }
        // Make the partners mutually isotropic.
        let half = k.half();
        let raw = dual.clone();
        for (j, w) in dual.iter_mut().enumerate() {
            for (i, ui) in ns.iter().enumerate() {
                let c = k.mul(half, u.beta(&raw[i], &raw[j]));
                for (x, &y) in w.iter_mut().zip(ui) {
                    *x = k.sub(*x, k.mul(c, y));
                }
            }
        }
        let mut both = ns.clone();
        both.extend(dual.iter().cloned());
        let hyp = SubspaceFq::from_vectors(&k, t, &both);
        let complement = u.perp(&hyp);
        let b = complement.basis().transpose();
        let gram = if complement.dim() == 0 { MatrixFq::zero(&k, 0, 0) } else { &(&b.transpose() * u.gram()) * &b };
        let space = OrthogonalSpace::new(gram)?;
        Ok(QuotientSpace { parent: u.clone(), n: self.clone(), dual, complement, space })
    }
}

impl fmt::Debug for IsotropicSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IsotropicSubspace({})", self.sub)
    }
}

impl fmt::Display for IsotropicSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sub)
    }
}

/// Solution of `M x = rhs` with all free variables set to zero.
fn solve_first(m: &MatrixFq, rhs: &[FqElem]) -> Option<Vec<FqElem>> {
    let k = m.field();
    let aug = MatrixFq::block(m, &MatrixFq::column(k, rhs), &MatrixFq::zero(k, 0, m.cols()), &MatrixFq::zero(k, 0, 1))
        .ok()?;
    let r = aug.rref();
    if r.pivots.contains(&m.cols()) {
        return None;
    }
    let mut x = vec![FqElem::ZERO; m.cols()];
    for (i, &pc) in r.pivots.iter().enumerate() {
        x[pc] = r.matrix.get(i, m.cols());
    }
    Some(x)
}

/// `U' = N^⊥ / N` together with the projection from `N^⊥`.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    parent: OrthogonalSpace,
    n: IsotropicSubspace,
    dual: Vec<Vec<FqElem>>,
    complement: SubspaceFq,
    space: OrthogonalSpace,
}

impl QuotientSpace {
    pub fn space(&self) -> &OrthogonalSpace {
        &self.space
    }

    /// Isotropic partners `u'_j` with `β(u_i, u'_j) = δ_ij`.
    pub fn dual_basis(&self) -> &[Vec<FqElem>] {
        &self.dual
    }

    /// The complement of `N ⊕ N'` inside `U`, isometric to `U'`.
    pub fn complement(&self) -> &SubspaceFq {
        &self.complement
    }

    /// Coordinates in `U'` of the class of `v ∈ N^⊥`.
    pub fn project(&self, v: &[FqElem]) -> Result<Vec<FqElem>> {
        let u = &self.parent;
        let k = u.field();
        let ns = self.n.subspace().basis_vectors();
        if ns.iter().any(|x| !u.beta(x, v).is_zero()) {
            return Err(Error::NotOrthogonal);
        }
        let mut w = v.to_vec();
        for (ui, di) in ns.iter().zip(&self.dual) {
            let c = u.beta(v, di);
            for (x, &y) in w.iter_mut().zip(ui) {
                *x = k.sub(*x, k.mul(c, y));
            }
        }
        self.complement.coordinates(&w).ok_or(Error::NotOrthogonal)
    }
}
