//! Weyl operators, their covariance under mu(S), and the Clifford group on
//! two copies: the symmetric/antisymmetric split of L²(X*)⊗L²(X*).
//!
//! Usage: `cargo run --release --example weyl_clifford -- [q]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weilrep::clifford::{
    symplectoclifford_check, two_design_check, weyl_covariance_check, weyl_intertwiner_dim, weyl_operator_v,
    HeisenbergElem,
};
use weilrep::field::{Field, FqElem, SquareClass};
use weilrep::linalg::sparse;
use weilrep::oscillator::{Context, GeneratorWord};
use weilrep::quadratic::OrthogonalSpace;

fn main() -> weilrep::error::Result<()> {
    let q: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let k = Field::from_order(q)?;
    let ctx = Context::symplectic(&k, 1, FqElem::ONE)?;
    let h = HeisenbergElem::new(FqElem::ZERO, vec![FqElem::ONE, FqElem::ZERO]);
    let w = weyl_operator_v(&ctx, &h)?;
    for z in 0..ctx.dim() {
        let img = w.apply(&sparse::unit(ctx.p(), z));
        let (j, c) = img.iter().next().expect("monomial");
        println!("W(0, 1+0) delta_{z} = {c} delta_{j}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let hs: Vec<_> = HeisenbergElem::all(&k, 1).iter().map(|h| h.as_tensor(&k)).collect();
    let mut ok = 0;
    for _ in 0..20 {
        let word = GeneratorWord::random(&k, 1, 4, &mut rng);
        ok += weyl_covariance_check(&ctx, &word, &hs)? as usize;
    }
    println!("covariance on {} Heisenberg elements: {ok}/20 random words", hs.len());

    let m = k.canonical_nonsquare();
    println!(
        "intertwiners W(1) -> W(1): {}, W(1) -> W({m}): {}",
        weyl_intertwiner_dim(&k, 1, FqElem::ONE, FqElem::ONE)?,
        weyl_intertwiner_dim(&k, 1, FqElem::ONE, m)?
    );

    let rep = two_design_check(&k, 1, 20, &mut rng)?;
    println!(
        "Cl x Cl: symmetric {} (expected {}), antisymmetric {} (expected {}), holds {}",
        rep.sym_dim, rep.expected_sym_dim, rep.antisym_dim, rep.expected_antisym_dim, rep.holds
    );

    let two = Context::new(OrthogonalSpace::standard(&k, 2, SquareClass::Square), 1, FqElem::ONE)?;
    let sc = symplectoclifford_check(&two, &[FqElem::ONE, FqElem::ONE])?;
    println!(
        "u = (1,1): lattice dims {:?}, sym = lift(even): {}, antisym = lift(odd): {}",
        sc.lattice_dims, sc.sym_matches_even, sc.antisym_matches_odd
    );
    Ok(())
}
