//! Running claims programmatically and reading back the certificates that the
//! `weilrep run` command writes.
//!
//! Usage: `cargo run --release --example certificates -- [out-dir]`

use weilrep::certify::{all_passed, list_claims, run, RunConfig};

fn main() -> weilrep::error::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "target/example-certificates".into());
    for (id, anchor) in list_claims() {
        println!("{id:<28} {anchor}");
    }
    let cfg = RunConfig {
        q: 3,
        n: 2,
        t: 2,
        seed: 2024,
        out: out.clone().into(),
        claims: ["main-theorem", "commutant-eq", "counterexample", "fixed-space"].map(String::from).to_vec(),
        ..RunConfig::default()
    };
    let records = run(&cfg)?;
    for r in &records {
        println!(
            "{} -> {} {:?} ({})",
            r.certificate.claim_id,
            r.certificate.verdict,
            r.certificate.dims,
            r.path.display()
        );
    }
    println!("all passed: {}", all_passed(&records));
    print!("{}", std::fs::read_to_string(format!("{out}/summary.csv"))?);
    Ok(())
}
