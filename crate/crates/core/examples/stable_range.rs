//! Rank-deficient subrepresentations in the stable range `t ≤ n`: the largest
//! invariant subspace of each rank-`≤ r` span against the span of CSS codes.
//!
//! Usage: `cargo run --release --example stable_range -- [q] [disc]`

use std::time::Instant;

use weilrep::field::{Field, FqElem, SquareClass};
use weilrep::invariant::verify_main_theorem;
use weilrep::oscillator::Context;
use weilrep::quadratic::OrthogonalSpace;

fn main() -> weilrep::error::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let q: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let disc = match args.get(2).map(String::as_str) {
        Some("nonsquare") => SquareClass::Nonsquare,
        _ => SquareClass::Square,
    };
    let k = Field::from_order(q)?;
    let u = OrthogonalSpace::standard(&k, 2, disc);
    let ctx = Context::new(u, 2, FqElem::ONE)?;
    println!("q={q} t=2 n=2 disc={disc:?} witt index {}", ctx.space().witt_index());
    let start = Instant::now();
    let report = verify_main_theorem(&ctx)?;
    for row in &report.rows {
        println!("r={}  dim M_r={}  dim S_r={}  equal={}", row.r, row.invariant_dim, row.css_dim, row.equal);
    }
    println!("parity ok: {}  pruning ok: {}", report.parity_ok, report.pruning_ok);
    println!("holds: {}  ({:.2?})", report.holds, start.elapsed());
    Ok(())
}
