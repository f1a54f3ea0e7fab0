//! N-weights B = 2⁻¹FᵀGF: the spectrum of mu_V and of a tensor context, and
//! the rank set of an invariant subspace.
//!
//! Usage: `cargo run --example weight_spectrum -- [q]`

use weilrep::field::{Field, FqElem};
use weilrep::invariant::fixed_space;
use weilrep::linalg::SubspaceCyclo;
use weilrep::oscillator::Context;
use weilrep::quadratic::OrthogonalSpace;
use weilrep::weight::{rank_contiguity_check, spectrum_of_subspace};

fn main() -> weilrep::error::Result<()> {
    let q: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let k = Field::from_order(q)?;
    let ctx = Context::symplectic(&k, 1, FqElem::ONE)?;
    let spec = spectrum_of_subspace(&ctx, &SubspaceCyclo::full(ctx.p(), ctx.dim()))?;
    println!("mu_V, q = {q}, n = 1:");
    for e in spec.entries() {
        println!("  B = {:?} rank {} disc {:?} multiplicity {}", e.b, e.rank, e.disc, e.multiplicity);
    }

    let h = Context::new(OrthogonalSpace::hyperbolic_plane(&k), 2, FqElem::ONE)?;
    let full = spectrum_of_subspace(&h, &SubspaceCyclo::full(h.p(), h.dim()))?;
    println!("h (x) V, n = 2: {} weights, ranks {:?}", full.weights.len(), full.ranks());
    let fixed = fixed_space(&h)?;
    let (contiguous, ranks) = rank_contiguity_check(&h, &fixed)?;
    println!("fixed space: dim {}, ranks {:?}, contiguous {contiguous}", fixed.dim(), ranks);
    println!("{}", serde_json::to_string(&spectrum_of_subspace(&h, &fixed)?).expect("json"));
    Ok(())
}
