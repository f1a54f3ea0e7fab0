//! Sparse vectors and echelonized subspaces over `Q(ζ_p)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

/// Sparse vector: coordinate index to nonzero value.
pub type SparseVec = BTreeMap<usize, CycloNum>;

/// `y += a * x`, dropping cancelled entries.
pub fn axpy(y: &mut SparseVec, a: &CycloNum, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (&i, v) in x {
        let t = a * v;
        match y.get_mut(&i) {
            Some(e) => {
                let s = &*e + &t;
                if s.is_zero() {
                    y.remove(&i);
                } else {
                    *e = s;
                }
            }
            None => {
                y.insert(i, t);
            }
        }
    }
}

pub fn scale(x: &SparseVec, a: &CycloNum) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(&i, v)| (i, a * v)).collect()
}

pub fn add(x: &SparseVec, y: &SparseVec) -> SparseVec {
    let mut out = x.clone();
    if let Some(one) = y.values().next().map(|v| CycloNum::one(v.conductor())) {
        axpy(&mut out, &one, y);
    }
    out
}

pub fn sub(x: &SparseVec, y: &SparseVec) -> SparseVec {
    let mut out = x.clone();
    if let Some(m) = y.values().next().map(|v| CycloNum::from_int(v.conductor(), -1)) {
        axpy(&mut out, &m, y);
    }
    out
}

/// Standard Hermitian pairing `Σ conj(x_i) y_i`.
pub fn hermitian(p: u32, x: &SparseVec, y: &SparseVec) -> CycloNum {
    let mut acc = CycloNum::zero(p);
    let (small, large, flip) = if x.len() <= y.len() { (x, y, false) } else { (y, x, true) };
    for (i, a) in small {
        if let Some(b) = large.get(i) {
            let term = if flip { &b.conj() * a } else { &a.conj() * b };
            acc = &acc + &term;
        }
    }
    acc
}

/// Unit vector `δ_i`.
pub fn unit(p: u32, i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, CycloNum::one(p));
    v
}

/// Incremental forward elimination that tracks, for every inserted residual,
/// a payload vector transformed by the same row operations. Residuals that
/// reduce to zero release their payload as a kernel element.
pub struct KernelTracker {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    kernel: Vec<SparseVec>,
}

impl Default for KernelTracker {
    fn default() -> Self {
        Self::new()
    }
}

impl KernelTracker {
    pub fn new() -> Self {
        KernelTracker { rows: BTreeMap::new(), kernel: Vec::new() }
    }

    /// Adds the pair `(residual, payload)`. Returns true when the residual
    /// was dependent on the earlier ones.
    pub fn push(&mut self, mut res: SparseVec, mut payload: SparseVec) -> bool {
        loop {
            let Some((&k, lead)) = res.iter().next() else {
                self.kernel.push(payload);
                return true;
            };
            match self.rows.get(&k) {
                Some((row, pay)) => {
                    let c = -lead;
                    axpy(&mut res, &c, row);
                    axpy(&mut payload, &c, pay);
                }
                None => {
                    let inv = lead.invert().expect("nonzero leading entry");
                    let res = scale(&res, &inv);
                    let payload = scale(&payload, &inv);
                    self.rows.insert(k, (res, payload));
                    return false;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn into_kernel(self) -> Vec<SparseVec> {
        self.kernel
    }
}

/// A subspace of `Q(ζ_p)^d` in reduced row-echelon form: each basis row has
/// leading entry 1 at its pivot, and every other row vanishes there.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceCyclo {
    p: u32,
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl SubspaceCyclo {
    pub fn zero(p: u32, ambient: usize) -> Self {
        SubspaceCyclo { p, ambient, rows: BTreeMap::new() }
    }

    /// Span of the unit vectors at `indices`.
    pub fn coordinate_span(p: u32, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::zero(p, ambient);
        for i in indices {
            assert!(i < ambient, "coordinate out of range");
            s.rows.insert(i, unit(p, i));
        }
        s
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self::coordinate_span(p, ambient, 0..ambient)
    }

    pub fn from_vectors(p: u32, ambient: usize, vecs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Self::zero(p, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn basis_vec(&self) -> Vec<SparseVec> {
        self.rows.values().cloned().collect()
    }

    /// Union of the supports of the basis rows.
    pub fn support(&self) -> std::collections::BTreeSet<usize> {
        self.rows.values().flat_map(|r| r.keys().copied()).collect()
    }

    /// Residual of `v` modulo the subspace; zero iff `v` is a member.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        let hits: Vec<usize> = r.keys().copied().filter(|k| self.rows.contains_key(k)).collect();
        for k in hits {
            if let Some(c) = r.get(&k).cloned() {
                axpy(&mut r, &-&c, &self.rows[&k]);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        if let Some(&k) = v.keys().next_back() {
            assert!(k < self.ambient, "coordinate out of range");
        }
        let r = self.reduce(&v);
        let Some((&piv, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.invert().expect("nonzero leading entry");
        let r = scale(&r, &inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&piv).cloned() {
                axpy(row, &-&c, &r);
            }
        }
        self.rows.insert(piv, r);
        true
    }

    fn check(&self, other: &SubspaceCyclo) -> Result<()> {
        if self.ambient != other.ambient || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q(ζ_{})^{} and Q(ζ_{})^{}",
                self.p, self.ambient, other.p, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceCyclo) -> Result<SubspaceCyclo> {
        self.check(other)?;
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(v.clone());
        }
        Ok(s)
    }

    pub fn intersect(&self, other: &SubspaceCyclo) -> Result<SubspaceCyclo> {
        self.check(other)?;
        let mut kt = KernelTracker::new();
        for b in self.basis() {
            kt.push(other.reduce(b), b.clone());
        }
        Ok(SubspaceCyclo::from_vectors(self.p, self.ambient, kt.into_kernel()))
    }

    pub fn is_subspace_of(&self, other: &SubspaceCyclo) -> bool {
        self.ambient == other.ambient && self.basis().all(|v| other.contains(v))
    }

    /// Kernel of the linear map sending `basis[i]` to `images[i]`, returned as
    /// a subspace of the span of `basis`.
    pub fn kernel_of_map(p: u32, ambient: usize, basis: &[SparseVec], images: &[SparseVec]) -> SubspaceCyclo {
        assert_eq!(basis.len(), images.len(), "one image per basis vector");
        let mut kt = KernelTracker::new();
        for (b, im) in basis.iter().zip(images) {
            kt.push(im.clone(), b.clone());
        }
        SubspaceCyclo::from_vectors(p, ambient, kt.into_kernel())
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, f: impl Fn(&SparseVec) -> SparseVec) -> SubspaceCyclo {
        SubspaceCyclo::from_vectors(self.p, self.ambient, self.basis().map(f))
    }
}

impl fmt::Debug for SubspaceCyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceCyclo(dim {} in Q(ζ_{})^{})", self.dim(), self.p, self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(p: u32, d: usize, rng: &mut ChaCha8Rng) -> SparseVec {
        let mut v = SparseVec::new();
        for i in 0..d {
            if rng.gen_bool(0.5) {
                let z = CycloNum::zeta_pow(p, rng.gen_range(0..p)).scale_int(rng.gen_range(-2..=2));
                if !z.is_zero() {
                    v.insert(i, z);
                }
            }
        }
        v
    }

    fn random_space(p: u32, d: usize, rng: &mut ChaCha8Rng) -> SubspaceCyclo {
        let m = rng.gen_range(0..=d);
        SubspaceCyclo::from_vectors(p, d, (0..m).map(|_| random_vec(p, d, rng)))
    }

    #[test]
    fn grassmann_identity_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [3u32, 5] {
            for _ in 0..500 {
                let d = rng.gen_range(1..=6);
                let a = random_space(p, d, &mut rng);
                let b = random_space(p, d, &mut rng);
                let s = a.sum(&b).unwrap();
                let i = a.intersect(&b).unwrap();
                assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
                assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
            }
        }
    }

    #[test]
    fn echelon_is_canonical_and_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let a = random_space(5, 5, &mut rng);
            let again = SubspaceCyclo::from_vectors(5, 5, a.basis_vec().into_iter().rev());
            assert_eq!(a, again);
            let mixed: Vec<SparseVec> =
                a.basis_vec().windows(2).map(|w| add(&w[0], &w[1])).chain(a.basis_vec().last().cloned()).collect();
            assert_eq!(SubspaceCyclo::from_vectors(5, 5, mixed), a);
        }
    }

    #[test]
    fn kernel_of_map_examples() {
        let p = 3;
        let basis: Vec<SparseVec> = (0..3).map(|i| unit(p, i)).collect();
        let z = CycloNum::zeta_pow(p, 1);
        let mut im0 = SparseVec::new();
        im0.insert(0, z.clone());
        let im1 = im0.clone();
        let im2 = unit(p, 1);
        let k = SubspaceCyclo::kernel_of_map(p, 3, &basis, &[im0, im1, im2]);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&sub(&unit(p, 0), &unit(p, 1))));
    }
}
