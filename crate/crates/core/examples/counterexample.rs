//! Outside the stable range: an invariant vector of mu on F_p³⊗V (n = 1) that
//! is not spanned by CSS states.
//!
//! Usage: `cargo run --example counterexample -- [p]`

use weilrep::field::{Field, FqElem, SquareClass};
use weilrep::invariant::{counterexample_psi, fixed_space, verify_counterexample};
use weilrep::oscillator::Context;
use weilrep::quadratic::OrthogonalSpace;

fn main() -> weilrep::error::Result<()> {
    let p: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let rep = verify_counterexample(p, FqElem::ONE)?;
    println!("{}", serde_json::to_string_pretty(&rep).expect("json"));

    let k = Field::prime(p)?;
    let ctx = Context::new(OrthogonalSpace::standard(&k, 3, SquareClass::Square), 1, FqElem::ONE)?;
    let (psi, x0) = counterexample_psi(&ctx)?;
    println!("x0 = {:?}", x0.iter().map(|x| x.0).collect::<Vec<_>>());
    for (i, c) in psi.amplitudes() {
        println!("  psi({:?}) = {c}", ctx.point(*i).col(0).iter().map(|x| x.0).collect::<Vec<_>>());
    }
    println!("dim of all invariants: {}", fixed_space(&ctx)?.dim());
    Ok(())
}
