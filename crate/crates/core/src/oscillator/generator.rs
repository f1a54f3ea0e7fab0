use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem};
use crate::linalg::MatrixFq;

/// Generators of `Sp(V)`, acting on `V = X ⊕ X*` (coordinates `(x; y)`) by
///
/// * `N_A`: `(x, y) ↦ (x + A y, y)`,
/// * `J_B`: `(x, y) ↦ (B y, -B⁻¹ x)`,
/// * `D_C`: `(x, y) ↦ (C x, C⁻ᵀ y)`,
/// * `P_k`: the Fourier transform `J_1` on the `k`-th coordinate pair only.
#[derive(Clone, PartialEq, Eq)]
pub enum SympGenerator {
    UpperUnipotent(MatrixFq),
    Fourier(MatrixFq),
    Diagonal(MatrixFq),
    PartialFourier { n: usize, k: usize },
}

impl SympGenerator {
    pub fn upper_unipotent(a: MatrixFq) -> Result<Self> {
        if !a.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SympGenerator::UpperUnipotent(a))
    }

    pub fn fourier(b: MatrixFq) -> Result<Self> {
        if !b.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if b.rank() < b.rows() {
            return Err(Error::Singular);
        }
        Ok(SympGenerator::Fourier(b))
    }

    pub fn diagonal(c: MatrixFq) -> Result<Self> {
        if !c.is_square() {
            return Err(Error::DimensionMismatch("C must be square".into()));
        }
        if c.rank() < c.rows() {
            return Err(Error::Singular);
        }
        Ok(SympGenerator::Diagonal(c))
    }

    pub fn partial_fourier(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::DimensionMismatch(format!("coordinate {k} out of {n}")));
        }
        Ok(SympGenerator::PartialFourier { n, k })
    }

    /// `n = dim X`.
    pub fn n(&self) -> usize {
        match self {
            SympGenerator::UpperUnipotent(m) | SympGenerator::Fourier(m) | SympGenerator::Diagonal(m) => m.rows(),
            SympGenerator::PartialFourier { n, .. } => *n,
        }
    }

    /// The `2n x 2n` matrix acting on column vectors `(x; y)`.
    pub fn symplectic_matrix(&self, field: &FieldRef) -> MatrixFq {
        let n = self.n();
        let id = MatrixFq::identity(field, n);
        let z = MatrixFq::zero(field, n, n);
        let blk =
            |a: &MatrixFq, b: &MatrixFq, c: &MatrixFq, d: &MatrixFq| MatrixFq::block(a, b, c, d).expect("n x n blocks");
        match self {
            SympGenerator::UpperUnipotent(a) => blk(&id, a, &z, &id),
            SympGenerator::Fourier(b) => {
                let binv = b.inverse().expect("validated invertible");
                blk(&z, b, &binv.neg(), &z)
            }
            SympGenerator::Diagonal(c) => {
                let cit = c.inverse().expect("validated invertible").transpose();
                blk(c, &z, &z, &cit)
            }
            SympGenerator::PartialFourier { k, .. } => {
                let mut e = MatrixFq::zero(field, n, n);
                e.set(*k, *k, FqElem::ONE);
                let rest = id.sub(&e).expect("same shape");
                blk(&rest, &e, &e.neg(), &rest)
            }
        }
    }

    /// Inverse generator (as a generator of the same kind).
    pub fn inverse(&self, field: &FieldRef) -> GeneratorWord {
        match self {
            SympGenerator::UpperUnipotent(a) => GeneratorWord::single(SympGenerator::UpperUnipotent(a.neg())),
            SympGenerator::Fourier(b) => GeneratorWord::single(SympGenerator::Fourier(b.neg())),
            SympGenerator::Diagonal(c) => {
                GeneratorWord::single(SympGenerator::Diagonal(c.inverse().expect("validated invertible")))
            }
            SympGenerator::PartialFourier { n, k } => {
                // P_k^{-1} = P_k^3 = D_{ε} P_k with ε = diag(.., -1 at k, ..).
                let mut eps = MatrixFq::identity(field, *n);
                eps.set(*k, *k, field.neg(FqElem::ONE));
                GeneratorWord(vec![SympGenerator::Diagonal(eps), SympGenerator::PartialFourier { n: *n, k: *k }])
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SympGenerator::UpperUnipotent(_) => "N",
            SympGenerator::Fourier(_) => "J",
            SympGenerator::Diagonal(_) => "D",
            SympGenerator::PartialFourier { .. } => "P",
        }
    }

    pub fn describe(&self) -> GeneratorInfo {
        match self {
            SympGenerator::UpperUnipotent(m) | SympGenerator::Fourier(m) | SympGenerator::Diagonal(m) => {
                GeneratorInfo { kind: self.kind().into(), matrix: Some(m.to_rows()), coordinate: None }
            }
            SympGenerator::PartialFourier { k, .. } => {
                GeneratorInfo { kind: "P".into(), matrix: None, coordinate: Some(*k) }
            }
        }
    }

    pub fn random_symmetric(field: &FieldRef, n: usize, rng: &mut impl Rng) -> MatrixFq {
        let mut a = MatrixFq::zero(field, n, n);
        for i in 0..n {
            for j in i..n {
                let v = FqElem(rng.gen_range(0..field.q()));
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        a
    }

    pub fn random_invertible_symmetric(field: &FieldRef, n: usize, rng: &mut impl Rng) -> MatrixFq {
        loop {
            let b = Self::random_symmetric(field, n, rng);
            if b.rank() == n {
                return b;
            }
        }
    }

    pub fn random_invertible(field: &FieldRef, n: usize, rng: &mut impl Rng) -> MatrixFq {
        loop {
            let data = (0..n * n).map(|_| FqElem(rng.gen_range(0..field.q()))).collect();
            let c = MatrixFq::from_elems(field, n, n, data).expect("shape");
            if c.rank() == n {
                return c;
            }
        }
    }

    /// A random generator of one of the three parabolic/Fourier kinds.
    pub fn random(field: &FieldRef, n: usize, rng: &mut impl Rng) -> Self {
        match rng.gen_range(0..3) {
            0 => SympGenerator::UpperUnipotent(Self::random_symmetric(field, n, rng)),
            1 => SympGenerator::Fourier(Self::random_invertible_symmetric(field, n, rng)),
            _ => SympGenerator::Diagonal(Self::random_invertible(field, n, rng)),
        }
    }
}

/// `N_A` for `A` running over an `F_p`-basis of `Sym_n(F_q)`; these generate
/// the unipotent radical `𝒩`.
pub fn unipotent_generators(field: &FieldRef, n: usize) -> Vec<SympGenerator> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for &a in &field.prime_basis() {
                let mut m = MatrixFq::zero(field, n, n);
                m.set(i, j, a);
                m.set(j, i, a);
                out.push(SympGenerator::UpperUnipotent(m));
            }
        }
    }
    out
}

/// Generators of `GL_n(F_q)`: `diag(ε, 1, ..)` with `ε` primitive, `I + E_12`,
/// the transposition `(1 2)` and the cycle `(1 2 .. n)`.
pub fn linear_generators(field: &FieldRef, n: usize) -> Vec<MatrixFq> {
    let mut eps = MatrixFq::identity(field, n);
    eps.set(0, 0, field.primitive_element());
    let mut out = vec![eps];
    if n >= 2 {
        let mut e = MatrixFq::identity(field, n);
        e.set(0, 1, FqElem::ONE);
        out.push(e);
        let mut swap = MatrixFq::zero(field, n, n);
        let mut cycle = MatrixFq::zero(field, n, n);
        for i in 0..n {
            let s = match i {
                0 => 1,
                1 => 0,
                _ => i,
            };
            swap.set(s, i, FqElem::ONE);
            cycle.set((i + 1) % n, i, FqElem::ONE);
        }
        out.push(swap);
        if n > 2 {
            out.push(cycle);
        }
    }
    out
}

/// A generating set of `Sp(V)`: unipotent generators, `D_C` for the
/// generators of `GL_n`, and the single-coordinate Fourier transform `P_0`.
pub fn generating_set(field: &FieldRef, n: usize) -> Vec<SympGenerator> {
    let mut out = unipotent_generators(field, n);
    out.extend(linear_generators(field, n).into_iter().map(SympGenerator::Diagonal));
    out.push(SympGenerator::PartialFourier { n, k: 0 });
    out
}

impl fmt::Debug for SympGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SympGenerator::UpperUnipotent(m) => write!(f, "N{m}"),
            SympGenerator::Fourier(m) => write!(f, "J{m}"),
            SympGenerator::Diagonal(m) => write!(f, "D{m}"),
            SympGenerator::PartialFourier { k, .. } => write!(f, "P{k}"),
        }
    }
}

/// Serializable form of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinate: Option<usize>,
}

/// A product `g_1 g_2 ... g_k`; as an operator, `g_k` acts first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorWord(pub Vec<SympGenerator>);

impl GeneratorWord {
    pub fn identity() -> Self {
        GeneratorWord(Vec::new())
    }

    pub fn single(g: SympGenerator) -> Self {
        GeneratorWord(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn then(mut self, other: &GeneratorWord) -> Self {
        self.0.extend(other.0.iter().cloned());
        self
    }

    pub fn symplectic_matrix(&self, field: &FieldRef, n: usize) -> MatrixFq {
        self.0.iter().fold(MatrixFq::identity(field, 2 * n), |acc, g| &acc * &g.symplectic_matrix(field))
    }

    pub fn inverse(&self, field: &FieldRef) -> GeneratorWord {
        let mut out = Vec::new();
        for g in self.0.iter().rev() {
            out.extend(g.inverse(field).0);
        }
        GeneratorWord(out)
    }

    pub fn random(field: &FieldRef, n: usize, len: usize, rng: &mut impl Rng) -> Self {
        GeneratorWord((0..len).map(|_| SympGenerator::random(field, n, rng)).collect())
    }

    pub fn describe(&self) -> Vec<GeneratorInfo> {
        self.0.iter().map(|g| g.describe()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quadratic::SymplecticSpace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generator_matrices_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [3u32, 5, 9] {
            let k = Field::from_order(q).unwrap();
            for n in 1..=3 {
                let v = SymplecticSpace::new(&k, n).unwrap();
                for _ in 0..30 {
                    let g = SympGenerator::random(&k, n, &mut rng);
                    let m = g.symplectic_matrix(&k);
                    assert!(v.is_symplectic(&m), "{g:?}");
                    let inv = g.inverse(&k).symplectic_matrix(&k, n);
                    assert_eq!(&m * &inv, MatrixFq::identity(&k, 2 * n));
                }
                for kk in 0..n {
                    let g = SympGenerator::partial_fourier(n, kk).unwrap();
                    assert!(v.is_symplectic(&g.symplectic_matrix(&k)));
                    let inv = g.inverse(&k).symplectic_matrix(&k, n);
                    assert_eq!(&g.symplectic_matrix(&k) * &inv, MatrixFq::identity(&k, 2 * n));
                }
            }
        }
    }

    #[test]
    fn fourier_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let k = Field::prime(5).unwrap();
        let n = 2;
        for _ in 0..20 {
            let b = SympGenerator::random_invertible_symmetric(&k, n, &mut rng);
            let b2 = SympGenerator::random_invertible_symmetric(&k, n, &mut rng);
            let jj = GeneratorWord(vec![SympGenerator::Fourier(b.clone()), SympGenerator::Fourier(b2.clone())]);
            let d = (&b * &b2.inverse().unwrap()).neg();
            let dd = GeneratorWord::single(SympGenerator::Diagonal(d));
            assert_eq!(jj.symplectic_matrix(&k, n), dd.symplectic_matrix(&k, n));
        }
    }

    /// Closure of the generated group acting on `V` has the order of `Sp_2n(F_q)`.
    #[test]
    fn generating_set_generates() {
        use std::collections::HashSet;
        for (q, n, order) in [(3u32, 1usize, 24usize), (5, 1, 120), (9, 1, 720), (3, 2, 51840)] {
            let k = Field::from_order(q).unwrap();
            let gens: Vec<MatrixFq> = generating_set(&k, n).iter().map(|g| g.symplectic_matrix(&k)).collect();
            let id = MatrixFq::identity(&k, 2 * n);
            let mut seen: HashSet<MatrixFq> = HashSet::from([id.clone()]);
            let mut frontier = vec![id];
            while let Some(m) = frontier.pop() {
                for g in &gens {
                    let x = &m * g;
                    if seen.insert(x.clone()) {
                        frontier.push(x);
                    }
                }
            }
            assert_eq!(seen.len(), order, "q={q} n={n}");
        }
    }

    #[test]
    fn validation() {
        let k = Field::prime(3).unwrap();
        let ns = MatrixFq::from_int_rows(&k, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(SympGenerator::upper_unipotent(ns).unwrap_err(), Error::NotSymmetric);
        let sing = MatrixFq::from_int_rows(&k, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(SympGenerator::fourier(sing.clone()).unwrap_err(), Error::Singular);
        assert_eq!(SympGenerator::diagonal(sing).unwrap_err(), Error::Singular);
    }
}
