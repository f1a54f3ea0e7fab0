//! The oscillator representation on L²(Hom(X→U)): generator operators, words,
//! and the check that words with equal symplectic matrices give equal
//! operators.
//!
//! Usage: `cargo run --example oscillator_words -- [q] [n]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weilrep::field::{Field, FqElem};
use weilrep::linalg::MatrixFq;
use weilrep::oscillator::{word_consistency_check, Context, GeneratorWord, PsiVector, SympGenerator};

fn main() -> weilrep::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let k = Field::from_order(q)?;
    let ctx = Context::symplectic(&k, n, FqElem::ONE)?;
    println!("mu_V on L2(X*), q = {q}, n = {n}, dim {}", ctx.dim());

    let delta = PsiVector::delta_index(&ctx, 1);
    let id = MatrixFq::identity(&k, n);
    let fourier = SympGenerator::fourier(id.clone())?;
    let image = delta.apply_generator(&fourier)?;
    println!("J_1 delta_1 has support {}:", image.support_size());
    for (i, c) in image.amplitudes() {
        println!("  [{i}] {c}");
    }

    // J_B J_B has matrix -1 = D_{-1}.
    let jj = GeneratorWord(vec![fourier.clone(), fourier]);
    let minus = GeneratorWord::single(SympGenerator::diagonal(id.scale(k.from_int(-1)))?);
    println!("J J vs D(-1): {:?}", word_consistency_check(&ctx, &jj, &minus)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let w = GeneratorWord::random(&k, n, 4, &mut rng);
    let padded = w.clone().then(&w.inverse(&k)).then(&w);
    println!("random word of length {} vs w w^-1 w: {:?}", w.len(), word_consistency_check(&ctx, &w, &padded)?);
    println!("symplectic matrix of w:\n{}", w.symplectic_matrix(&k, n));
    Ok(())
}
