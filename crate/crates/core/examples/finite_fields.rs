//! Arithmetic in F_q and the cyclotomic field Q(ζ_p), and the quadratic Gauss
//! sum whose square is ℓ(-1)·q.
//!
//! Usage: `cargo run --example finite_fields -- [q]`

use weilrep::cyclo::CycloNum;
use weilrep::field::{Field, FqElem};
use weilrep::oscillator::gauss_sum_one;

fn main() -> weilrep::error::Result<()> {
    let q: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(9);
    let k = Field::from_order(q)?;
    println!("F_{q}: p = {}, degree {}, modulus {:?}", k.p(), k.degree(), k.modulus());

    let g = k.primitive_element();
    let powers: Vec<String> = (0..q - 1).map(|e| k.pow(g, e as u64).to_string()).collect();
    println!("powers of the primitive element {g}: {}", powers.join(" "));
    let squares = k.nonzero().filter(|&a| k.legendre(a) == 1).count();
    println!("nonzero squares: {squares} of {}; canonical nonsquare {}", q - 1, k.canonical_nonsquare());

    let x = FqElem(q - 2);
    let inv = k.inv(x)?;
    println!("{x} * {inv} = {}", k.mul(x, inv));

    let p = k.p();
    let gamma = gauss_sum_one(&k, FqElem::ONE, FqElem::ONE);
    let sq = &gamma * &gamma;
    let expected = CycloNum::from_int(p, k.legendre(k.from_int(-1)) as i64 * q as i64);
    println!("gamma = {gamma}");
    println!("gamma^2 = {sq}  (l(-1) q = {expected}, equal: {})", sq == expected);
    println!("|gamma|^2 = {}", gamma.norm());
    Ok(())
}
