//! `𝒩`-weights: the characters `A ↦ ω(tr AB)` by which the unipotent radical
//! acts, their eigenspaces, and spectra of subrepresentations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SquareClass;
use crate::linalg::sparse::SparseVec;
use crate::linalg::{diagonalize_form, MatrixFq, SubspaceCyclo};
use crate::oscillator::{generating_set, unipotent_generators, Context, RepOperator, SympGenerator};

/// A weight `B = 2⁻¹ Fᵀ G F` with its rank and the discriminant of the
/// nondegenerate quotient `X / rad B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NWeight {
    pub b: MatrixFq,
    pub rank: usize,
    pub disc: SquareClass,
}

impl NWeight {
    pub fn new(b: MatrixFq) -> Result<Self> {
        let fd = diagonalize_form(&b)?;
        Ok(NWeight { b, rank: fd.rank, disc: fd.disc })
    }
}

pub fn weight_of_point(ctx: &Context, f: &MatrixFq) -> NWeight {
    NWeight::new(ctx.weight_matrix(f)).expect("FᵀGF is symmetric")
}

/// Weight matrix of every basis index, as a lookup table.
fn weight_table(ctx: &Context) -> Vec<MatrixFq> {
    (0..ctx.dim()).map(|i| ctx.weight_matrix(&ctx.point(i))).collect()
}

/// `span{δ_F : 2⁻¹FᵀGF = B}`.
pub fn weight_eigenspace(ctx: &Context, b: &MatrixFq) -> Result<SubspaceCyclo> {
    if b.rows() != ctx.n() || !b.is_symmetric() {
        return Err(Error::DimensionMismatch("weight must be a symmetric n x n matrix".into()));
    }
    let idx = (0..ctx.dim()).filter(|&i| ctx.weight_matrix(&ctx.point(i)) == *b);
    Ok(SubspaceCyclo::coordinate_span(ctx.p(), ctx.dim(), idx))
}

/// Returns a generator from `gens` that does not preserve `k`, if any.
pub fn invariance_witness(ctx: &Context, k: &SubspaceCyclo, gens: &[SympGenerator]) -> Result<Option<SympGenerator>> {
    for g in gens {
        let op = RepOperator::generator(ctx, g)?;
        if k.basis().any(|v| !k.contains(&op.apply(v))) {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    #[serde(rename = "B")]
    pub b: Vec<Vec<u32>>,
    pub rank: usize,
    pub disc: SquareClass,
    pub multiplicity: usize,
}

/// The `𝒩`-spectrum of a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub weights: Vec<(NWeight, usize)>,
    pub max_rank: usize,
    pub discs_at_max_rank: BTreeSet<SquareClass>,
}

impl SpectrumReport {
    pub fn dim(&self) -> usize {
        self.weights.iter().map(|(_, m)| m).sum()
    }

    pub fn ranks(&self) -> BTreeSet<usize> {
        self.weights.iter().map(|(w, _)| w.rank).collect()
    }

    /// The type `d` when a single discriminant occurs at the maximal rank.
    pub fn type_disc(&self) -> Option<SquareClass> {
        match self.discs_at_max_rank.len() {
            1 => self.discs_at_max_rank.iter().next().copied(),
            _ => None,
        }
    }

    pub fn entries(&self) -> Vec<WeightEntry> {
        self.weights
            .iter()
            .map(|(w, m)| WeightEntry { b: w.b.to_rows(), rank: w.rank, disc: w.disc, multiplicity: *m })
            .collect()
    }
}

impl Serialize for SpectrumReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

/// Decomposes an `𝒩`-invariant subspace into weight components by masking
/// coordinates; multiplicities are the dimensions of the projections.
pub fn spectrum_of_subspace(ctx: &Context, k: &SubspaceCyclo) -> Result<SpectrumReport> {
    if k.ambient() != ctx.dim() || k.conductor() != ctx.p() {
        return Err(Error::ContextMismatch("subspace does not live in this representation".into()));
    }
    if let Some(g) = invariance_witness(ctx, k, &unipotent_generators(ctx.field(), ctx.n()))? {
        return Err(Error::NotInvariant(format!("{g:?}")));
    }
    let table = weight_table(ctx);
    let mut parts: BTreeMap<&MatrixFq, Vec<SparseVec>> = BTreeMap::new();
    for v in k.basis() {
        let mut split: BTreeMap<&MatrixFq, SparseVec> = BTreeMap::new();
        for (&i, c) in v {
            split.entry(&table[i]).or_default().insert(i, c.clone());
        }
        for (b, piece) in split {
            parts.entry(b).or_default().push(piece);
        }
    }
    let mut weights = Vec::new();
    for (b, pieces) in parts {
        let m = SubspaceCyclo::from_vectors(ctx.p(), ctx.dim(), pieces).dim();
        weights.push((NWeight::new(b.clone())?, m));
    }
    weights.sort_by(|(a, _), (b, _)| (a.rank, &a.b).cmp(&(b.rank, &b.b)));
    let max_rank = weights.iter().map(|(w, _)| w.rank).max().unwrap_or(0);
    let discs_at_max_rank = weights.iter().filter(|(w, _)| w.rank == max_rank).map(|(w, _)| w.disc).collect();
    Ok(SpectrumReport { weights, max_rank, discs_at_max_rank })
}

/// Whether the ranks in the spectrum of an `Sp(V)`-invariant subspace form
/// an integer interval.
pub fn rank_contiguity_check(ctx: &Context, k: &SubspaceCyclo) -> Result<(bool, BTreeSet<usize>)> {
    if let Some(g) = invariance_witness(ctx, k, &generating_set(ctx.field(), ctx.n()))? {
        return Err(Error::NotInvariant(format!("{g:?}")));
    }
    let ranks = spectrum_of_subspace(ctx, k)?.ranks();
    let contiguous = match (ranks.first(), ranks.last()) {
        (Some(&lo), Some(&hi)) => hi - lo + 1 == ranks.len(),
        _ => true,
    };
    Ok((contiguous, ranks))
}
