//! CSS code spaces C_N in L²(Hom(X→U)) for isotropic N ⊆ U, their coset
//! states, and the intertwiner onto the oscillator representation of N^⊥/N.
//!
//! Usage: `cargo run --example css_codes -- [q] [n]`

use weilrep::css::{build_code, css_intertwiner_check, css_span};
use weilrep::field::{Field, FqElem, SquareClass};
use weilrep::oscillator::Context;
use weilrep::quadratic::OrthogonalSpace;

fn main() -> weilrep::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let k = Field::from_order(q)?;
    for (label, u) in [
        ("hyperbolic plane", OrthogonalSpace::hyperbolic_plane(&k)),
        ("F_q^3, square disc", OrthogonalSpace::standard(&k, 3, SquareClass::Square)),
    ] {
        let ctx = Context::new(u.clone(), n, FqElem::ONE)?;
        println!("{label}: t = {}, Witt index {}, dim {}", u.dim(), u.witt_index(), ctx.dim());
        for d in 0..=u.witt_index() {
            for iso in u.enumerate_isotropic(d) {
                let code = build_code(&ctx, &iso)?;
                let rep = css_intertwiner_check(&ctx, &iso)?;
                println!(
                    "  N = {iso}: dim C_N {}, rank {}, quotient disc {:?}, intertwines {}",
                    code.dim(),
                    code.rank(),
                    code.listing().disc_quotient,
                    rep.holds
                );
            }
        }
        for r in 0..=u.dim() {
            println!("  span of codes with rank {r}: dim {}", css_span(&ctx, r)?.dim());
        }
    }
    Ok(())
}
