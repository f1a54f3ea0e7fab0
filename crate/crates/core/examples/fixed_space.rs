//! Invariants and commutants: the fixed space of h⊗V, traces against the
//! permutation representation on V, and the commutant dimension of mu_V⊗mu_V
//! from Sp(V)-orbits on V² against the decomposition ledger.
//!
//! Usage: `cargo run --release --example fixed_space -- [q] [n]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weilrep::field::{Field, FqElem};
use weilrep::invariant::{
    commutant_dim_orbits, fixed_space, hyperbolic_permutation_check, predicted_commutant_dim, DecompositionLedger,
    ORBIT_GUARD,
};
use weilrep::oscillator::{Context, GeneratorWord};
use weilrep::quadratic::OrthogonalSpace;

fn main() -> weilrep::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let k = Field::from_order(q)?;
    let h = OrthogonalSpace::hyperbolic_plane(&k);
    let ctx = Context::new(h.clone(), n, FqElem::ONE)?;
    let fixed = fixed_space(&ctx)?;
    println!("fixed space of h (x) V (q = {q}, n = {n}): dim {}", fixed.dim());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let words: Vec<_> = (0..10).map(|_| GeneratorWord::random(&k, n, 3, &mut rng)).collect();
    let rep = hyperbolic_permutation_check(&ctx, &words)?;
    println!("traces = q^dim ker(S-1): {} mismatches in {} words", rep.mismatches, rep.words_checked);

    let orbits = commutant_dim_orbits(&k, n, 2, ORBIT_GUARD)?;
    let ledger = DecompositionLedger::new(&h)?;
    println!("Sp(V)-orbits on V^2: {orbits}");
    for row in &ledger.rows {
        println!(
            "  r = {} k = {}: {} isotropic subspaces, |O(U_r)| = {}, contributes {}",
            row.r, row.k, row.isotropic_count, row.orthogonal_order, row.contribution
        );
    }
    println!("predicted commutant dimension: {}", predicted_commutant_dim(&ledger));
    Ok(())
}
