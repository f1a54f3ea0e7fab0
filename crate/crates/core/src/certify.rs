//! Claim registry, run configuration and certificate emission.
//!
//! Each claim is a deterministic function of a [`RunConfig`] and a seeded RNG.
//! Certificates are JSON (`"schema": 1`) and carry no timings, so a rerun
//! with the same seed reproduces them byte for byte. Runtimes go to the CSV.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::clifford::{
    parity_subspaces, symplectoclifford_check, two_design_check, weyl_covariance_check, weyl_intertwiner_dim,
    HeisenbergElem,
};
use crate::css::css_intertwiner_check;
use crate::error::{Error, Result};
use crate::field::{Field, FieldRef, FqElem, SquareClass};
use crate::invariant::{
    commutant_dim_orbits, counterexample_psi, fixed_by, fixed_space, fourier_indicator_check, fourier_support_dual,
    hyperbolic_permutation_check, indicator, invariant_under, max_invariant_in, predicted_commutant_dim, rank_span,
    verify_counterexample, verify_main_theorem, DecompositionLedger,
};
use crate::linalg::{MatrixFq, SubspaceCyclo, SubspaceFq};
use crate::oscillator::{
    generating_set, psi_isotropic, word_consistency_check, Context, GeneratorWord, PsiVector, RepOperator,
    SympGenerator, WordComparison,
};
use crate::quadratic::{all_subspaces, OrthogonalSpace};
use crate::weight::{rank_contiguity_check, spectrum_of_subspace};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub q: u32,
    pub n: usize,
    pub t: usize,
    pub disc: SquareClass,
    pub mass: i64,
    pub seed: u64,
    /// Largest state-space dimension a claim may build.
    pub guard_dim: usize,
    /// Largest `|V^t|` for orbit enumeration.
    pub guard_orbits: usize,
    pub out: PathBuf,
    pub claims: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: 3,
            n: 2,
            t: 2,
            disc: SquareClass::Square,
            mass: 1,
            seed: 0,
            guard_dim: 20_000,
            guard_orbits: crate::invariant::ORBIT_GUARD,
            out: PathBuf::from("certificates"),
            claims: Vec::new(),
        }
    }
}

pub fn parse_disc(s: &str) -> Result<SquareClass> {
    match s.trim().to_ascii_lowercase().as_str() {
        "square" | "1" | "+1" => Ok(SquareClass::Square),
        "nonsquare" | "-1" => Ok(SquareClass::Nonsquare),
        other => Err(Error::Config(format!("disc must be square or nonsquare, got {other:?}"))),
    }
}

impl RunConfig {
    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |_| Error::Config(format!("bad value for {key}: {value:?}"));
        let v = value.trim();
        match key.trim().replace('_', "-").as_str() {
            "q" => self.q = v.parse().map_err(bad)?,
            "n" => self.n = v.parse().map_err(bad)?,
            "t" => self.t = v.parse().map_err(bad)?,
            "disc" => self.disc = parse_disc(v)?,
            "mass" => self.mass = v.parse().map_err(bad)?,
            "seed" => self.seed = v.parse().map_err(bad)?,
            "guard-dim" => self.guard_dim = v.parse().map_err(bad)?,
            "guard-orbits" => self.guard_orbits = v.parse().map_err(bad)?,
            "out" => self.out = PathBuf::from(v),
            "claims" => self.claims = split_claims(v),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Reads `key=value` lines; `#` starts a comment.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key=value", no + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.field()?;
        if k.q() > 125 {
            return Err(Error::Config(format!("q = {} exceeds the supported range", self.q)));
        }
        if self.n == 0 || self.t == 0 {
            return Err(Error::Config("n and t must be positive".into()));
        }
        if k.from_int(self.mass).is_zero() {
            return Err(Error::Config("mass must be nonzero in F_q".into()));
        }
        for c in &self.claims {
            if claim(c).is_none() {
                return Err(Error::Config(format!("unknown claim {c:?}")));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Result<FieldRef> {
        Field::from_order(self.q)
    }

    fn mass_elem(&self, k: &FieldRef) -> FqElem {
        k.from_int(self.mass)
    }

    /// The standard form of dimension `t` with the configured discriminant.
    pub fn space(&self) -> Result<OrthogonalSpace> {
        Ok(OrthogonalSpace::standard(&self.field()?, self.t, self.disc))
    }

    /// `space()` tensored with `V` of rank `n`, subject to the dimension guard.
    pub fn context(&self) -> Result<Context> {
        let k = self.field()?;
        guard_dim(self, k.q(), self.n * self.t)?;
        Context::new(self.space()?, self.n, self.mass_elem(&k))
    }

    fn selected(&self) -> Vec<&'static ClaimSpec> {
        if self.claims.is_empty() || self.claims.iter().any(|c| c == "all") {
            return REGISTRY.iter().collect();
        }
        self.claims.iter().filter_map(|c| claim(c)).collect()
    }
}

pub fn split_claims(s: &str) -> Vec<String> {
    s.split(',').map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Skipped(String),
}

impl Verdict {
    pub fn label(&self) -> String {
        match self {
            Verdict::True => "true".into(),
            Verdict::False => "false".into(),
            Verdict::Skipped(why) => format!("skipped: {why}"),
        }
    }

    /// Skips count as passing: they are not failures of the claim.
    pub fn is_ok(&self) -> bool {
        !matches!(self, Verdict::False)
    }

    fn of(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub dims: Vec<usize>,
    pub witnesses: Value,
}

impl Outcome {
    fn new(ok: bool, dims: Vec<usize>, witnesses: Value) -> Self {
        Outcome { verdict: Verdict::of(ok), dims, witnesses }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertContext {
    pub q: u32,
    pub n: usize,
    pub t: usize,
    pub disc: SquareClass,
    pub mass: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub claim_id: String,
    pub anchor: String,
    pub seed: u64,
    pub context: CertContext,
    pub verdict: String,
    pub dims: Vec<usize>,
    pub witnesses: Value,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        !self.verdict.starts_with("false")
    }
}

pub struct ClaimSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    run: fn(&RunConfig, &mut ChaCha8Rng) -> Result<Outcome>,
}

pub static REGISTRY: &[ClaimSpec] = &[
    ClaimSpec {
        id: "weyl-covariance",
        anchor: "symplectic action on Weyl operators: mu(S) W(h) mu(S)^-1 = W(S h); words with equal matrices give equal operators",
        run: claim_weyl_covariance,
    },
    ClaimSpec {
        id: "n-spectrum",
        anchor: "N-weights of mu_V: weight 0 once, every nonzero weight has rank 1, discriminant l_2 and multiplicity 2",
        run: claim_n_spectrum,
    },
    ClaimSpec {
        id: "hyperbolic-permutation",
        anchor: "Lemma (hyperbolic plane): mu on h(x)V is the permutation representation of Sp(V) on V",
        run: claim_hyperbolic_permutation,
    },
    ClaimSpec {
        id: "fixed-space",
        anchor: "invariants of h(x)V are spanned by psi of the two isotropic lines I+ and I-",
        run: claim_fixed_space,
    },
    ClaimSpec {
        id: "main-theorem",
        anchor: "Main Theorem: for t <= n, rank-r invariants lie in the span of tensor power CSS codes with dim N = (t-r)/2",
        run: claim_main_theorem,
    },
    ClaimSpec {
        id: "commutant-eq",
        anchor: "commutant of mu_V^(x)2 = number of Sp(V)-orbits on V^2 = sum over ranks of (#isotropic)^2 |O(U_r)|",
        run: claim_commutant,
    },
    ClaimSpec {
        id: "css-lemma",
        anchor: "Lemma (CSS codes): C_N is isomorphic to the oscillator representation of N-perp/N, whose discriminant is (-1)^k d(U)",
        run: claim_css_lemma,
    },
    ClaimSpec {
        id: "counterexample",
        anchor: "outside the stable range: psi on F_p^3 (x) V, n = 1, is invariant but not a CSS state (t - r = 3 odd)",
        run: claim_counterexample,
    },
    ClaimSpec {
        id: "ft-support-duality",
        anchor: "Lemma (Fourier invariance): supp in Hom(X->U') iff the transform is Hom(X->U'-perp)-translation invariant",
        run: claim_support_duality,
    },
    ClaimSpec {
        id: "rank-contiguity",
        anchor: "Prop. (rank spectrum): the ranks of an invariant subspace form a contiguous range of integers",
        run: claim_rank_contiguity,
    },
    ClaimSpec {
        id: "2-design",
        anchor: "Clifford 2-design: L2(X*)^(x)2 splits into the q^n(q^n+1)/2-dimensional symmetric and the antisymmetric subspace",
        run: claim_two_design,
    },
    ClaimSpec {
        id: "symplectoclifford",
        anchor: "Prop. (symplecto-Clifford): K -> L2(X*) (x) K matches Sp(V)-invariants of u-perp with Cl(u)-invariants",
        run: claim_symplectoclifford,
    },
    ClaimSpec {
        id: "parity",
        anchor: "mu_V splits into even and odd functions of dims (q^n+1)/2 and (q^n-1)/2; Weyl representations of different mass are inequivalent",
        run: claim_parity,
    },
    ClaimSpec {
        id: "explore-noncss-discriminant",
        anchor: "exploratory: is psi still invariant when F_p^3 is replaced by a 3-dim U' of nonsquare discriminant (no assertion)",
        run: claim_explore_noncss,
    },
];

pub fn claim(id: &str) -> Option<&'static ClaimSpec> {
    REGISTRY.iter().find(|c| c.id == id)
}

/// `(id, anchor)` pairs in registry order.
pub fn list_claims() -> Vec<(&'static str, &'static str)> {
    REGISTRY.iter().map(|c| (c.id, c.anchor)).collect()
}

fn claim_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a over the id keeps per-claim streams independent of run order.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

/// Runs one claim and wraps the outcome in a certificate.
pub fn certify(spec: &ClaimSpec, cfg: &RunConfig) -> Certificate {
    let mut rng = ChaCha8Rng::seed_from_u64(claim_seed(cfg.seed, spec.id));
    let outcome = match (spec.run)(cfg, &mut rng) {
        Ok(o) => o,
        Err(Error::SizeGuard(what)) => Outcome {
            verdict: Verdict::Skipped("size guard".into()),
            dims: vec![],
            witnesses: json!({ "guard": what }),
        },
        Err(e @ Error::OutsideStableRange { .. }) => Outcome {
            verdict: Verdict::Skipped("outside stable range".into()),
            dims: vec![],
            witnesses: json!({ "reason": e.to_string() }),
        },
        Err(e) => Outcome { verdict: Verdict::False, dims: vec![], witnesses: json!({ "error": e.to_string() }) },
    };
    Certificate {
        schema: SCHEMA,
        claim_id: spec.id.into(),
        anchor: spec.anchor.into(),
        seed: cfg.seed,
        context: CertContext { q: cfg.q, n: cfg.n, t: cfg.t, disc: cfg.disc, mass: cfg.mass },
        verdict: outcome.verdict.label(),
        dims: outcome.dims,
        witnesses: outcome.witnesses,
    }
}

#[derive(Clone, Debug)]
pub struct RunRecord {
    pub certificate: Certificate,
    pub runtime_ms: u128,
    pub path: PathBuf,
}

/// Runs the selected claims in parallel and writes `<out>/<claim>.json` and
/// `<out>/summary.csv`. Returns the records in registry order.
pub fn run(cfg: &RunConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out)?;
    let records: Vec<RunRecord> = cfg
        .selected()
        .par_iter()
        .map(|spec| {
            let start = Instant::now();
            let certificate = certify(spec, cfg);
            let runtime_ms = start.elapsed().as_millis();
            let path = cfg.out.join(format!("{}.json", spec.id));
            let mut text = serde_json::to_string_pretty(&certificate).expect("certificate serializes");
            text.push('\n');
            write_atomic(&path, text.as_bytes())?;
            Ok(RunRecord { certificate, runtime_ms, path })
        })
        .collect::<Result<_>>()?;
    write_atomic(&cfg.out.join("summary.csv"), summary_csv(&records).as_bytes())?;
    Ok(records)
}

pub fn all_passed(records: &[RunRecord]) -> bool {
    records.iter().all(|r| r.certificate.passed())
}

pub fn summary_csv(records: &[RunRecord]) -> String {
    let mut s = String::from("claim,q,n,t,disc,verdict,dims,runtime_ms\n");
    for r in records {
        let c = &r.certificate;
        let dims: Vec<String> = c.dims.iter().map(|d| d.to_string()).collect();
        let disc = match c.context.disc {
            SquareClass::Square => "square",
            SquareClass::Nonsquare => "nonsquare",
        };
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.claim_id,
            c.context.q,
            c.context.n,
            c.context.t,
            disc,
            c.verdict,
            dims.join(";"),
            r.runtime_ms
        ));
    }
    s
}

/// Writes through a sibling temp file and renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path.file_name().and_then(|n| n.to_str()).ok_or_else(|| Error::Io("bad path".into()))?;
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

// ---- contexts and guards ----

fn guard_dim(cfg: &RunConfig, q: u32, exponent: usize) -> Result<()> {
    let dim = (q as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
    if dim > cfg.guard_dim as u128 {
        return Err(Error::SizeGuard(format!("state space dimension {q}^{exponent} > guard-dim {}", cfg.guard_dim)));
    }
    Ok(())
}

fn std_context(cfg: &RunConfig) -> Result<Context> {
    cfg.context()
}

fn hyperbolic_context(cfg: &RunConfig) -> Result<Context> {
    let k = cfg.field()?;
    guard_dim(cfg, k.q(), 2 * cfg.n)?;
    Context::new(OrthogonalSpace::hyperbolic_plane(&k), cfg.n, cfg.mass_elem(&k))
}

fn symplectic_context(cfg: &RunConfig) -> Result<Context> {
    let k = cfg.field()?;
    guard_dim(cfg, k.q(), cfg.n)?;
    Context::symplectic(&k, cfg.n, cfg.mass_elem(&k))
}

fn generator_ops(ctx: &Context) -> Result<Vec<RepOperator>> {
    generating_set(ctx.field(), ctx.n()).iter().map(|g| RepOperator::generator(ctx, g)).collect()
}

fn random_words(ctx: &Context, count: usize, rng: &mut ChaCha8Rng) -> Vec<GeneratorWord> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=5);
            GeneratorWord::random(ctx.field(), ctx.n(), len, rng)
        })
        .collect()
}

// ---- claims ----

fn claim_weyl_covariance(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ctx = symplectic_context(cfg)?;
    let k = ctx.field().clone();
    let n = ctx.n();
    let exhaustive = n == 1;
    let hs: Vec<HeisenbergElem> = if exhaustive {
        HeisenbergElem::all(&k, n)
    } else {
        (0..40).map(|_| HeisenbergElem::random(&k, n, rng)).collect()
    };
    let tensor: Vec<_> = hs.iter().map(|h| h.as_tensor(&k)).collect();
    let mut words = vec![GeneratorWord::identity()];
    words.extend(generating_set(&k, n).into_iter().map(GeneratorWord::single));
    words.extend(random_words(&ctx, 200, rng));
    let mut covariant = 0;
    let mut failures = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if weyl_covariance_check(&ctx, w, &tensor)? {
            covariant += 1;
        } else if failures.len() < 5 {
            failures.push(i);
        }
    }
    // Pairs of words with equal symplectic matrices.
    let mut pairs: Vec<(GeneratorWord, GeneratorWord)> = Vec::new();
    let b = SympGenerator::random_invertible_symmetric(&k, n, rng);
    let neg = MatrixFq::identity(&k, n).scale(k.from_int(-1));
    pairs.push((
        GeneratorWord(vec![SympGenerator::fourier(b.clone())?, SympGenerator::fourier(b)?]),
        GeneratorWord::single(SympGenerator::diagonal(neg)?),
    ));
    pairs.push((GeneratorWord(vec![SympGenerator::partial_fourier(n, 0)?; 4]), GeneratorWord::identity()));
    for w in words.iter().skip(1).take(60) {
        let g = SympGenerator::random(&k, n, rng);
        let padded = w.clone().then(&GeneratorWord::single(g.clone())).then(&g.inverse(&k));
        pairs.push((w.clone(), padded));
    }
    let mut scalars = Vec::new();
    let mut differ = 0;
    for (a, b) in &pairs {
        match word_consistency_check(&ctx, a, b)? {
            WordComparison::Equal => {}
            WordComparison::DifferByScalar(s) => {
                if !scalars.contains(&s) {
                    scalars.push(s);
                }
            }
            WordComparison::Differ => differ += 1,
        }
    }
    let ok = covariant == words.len() && differ == 0 && scalars.len() <= 1;
    Ok(Outcome::new(
        ok,
        vec![ctx.dim()],
        json!({
            "heisenberg_elements": hs.len(),
            "exhaustive": exhaustive,
            "words": words.len(),
            "covariant_words": covariant,
            "failing_words": failures,
            "word_pairs": pairs.len(),
            "pairs_differing": differ,
            "distinct_scalars": scalars.len(),
        }),
    ))
}

fn claim_n_spectrum(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ctx = symplectic_context(cfg)?;
    let k = ctx.field();
    let full = SubspaceCyclo::full(ctx.p(), ctx.dim());
    let spec = spectrum_of_subspace(&ctx, &full)?;
    let two = k.square_class(k.from_int(2))?;
    let mut ok = true;
    for (w, mult) in &spec.weights {
        ok &= if w.rank == 0 { *mult == 1 } else { w.rank == 1 && *mult == 2 && w.disc == two };
    }
    ok &= spec.dim() == ctx.dim();
    let entries = spec.entries();
    Ok(Outcome::new(
        ok,
        vec![ctx.dim(), spec.weights.len()],
        json!({ "l_2": two, "max_rank": spec.max_rank, "weights": entries }),
    ))
}

fn claim_hyperbolic_permutation(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ctx = hyperbolic_context(cfg)?;
    let mut words = vec![GeneratorWord::identity()];
    words.extend(random_words(&ctx, 100, rng));
    let rep = hyperbolic_permutation_check(&ctx, &words)?;
    Ok(Outcome::new(rep.mismatches == 0, vec![ctx.dim()], serde_json::to_value(&rep).expect("json")))
}

fn claim_fixed_space(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ctx = hyperbolic_context(cfg)?;
    let fixed = fixed_space(&ctx)?;
    let psis: Vec<_> = ctx
        .space()
        .enumerate_isotropic(1)
        .iter()
        .map(|iso| psi_isotropic(&ctx, iso).map(PsiVector::into_sparse))
        .collect::<Result<_>>()?;
    let expected = SubspaceCyclo::from_vectors(ctx.p(), ctx.dim(), psis);
    let mut fixed_by_words = true;
    for w in random_words(&ctx, 20, rng) {
        fixed_by_words &= fixed_by(&fixed, &RepOperator::word(&ctx, &w)?);
    }
    let equal = fixed == expected;
    Ok(Outcome::new(
        fixed.dim() == 2 && equal && fixed_by_words,
        vec![fixed.dim()],
        json!({
            "dim": fixed.dim(),
            "equals_span_psi_I": equal,
            "isotropic_lines": expected.dim(),
            "fixed_by_random_words": fixed_by_words,
        }),
    ))
}

fn claim_main_theorem(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ctx = std_context(cfg)?;
    let rep = verify_main_theorem(&ctx)?;
    let dims = rep.rows.iter().map(|r| r.invariant_dim).collect();
    let mut w = serde_json::to_value(&rep).expect("json");
    w["witt_index"] = json!(ctx.space().witt_index());
    Ok(Outcome::new(rep.holds, dims, w))
}

fn claim_commutant(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = cfg.field()?;
    let points = (k.q() as u128).checked_pow(4 * cfg.n as u32).unwrap_or(u128::MAX);
    if points > cfg.guard_orbits as u128 {
        return Err(Error::SizeGuard(format!("|V^2| = {points} > guard-orbits {}", cfg.guard_orbits)));
    }
    let orbits = commutant_dim_orbits(&k, cfg.n, 2, cfg.guard_orbits)?;
    let h = OrthogonalSpace::hyperbolic_plane(&k);
    let ledger = DecompositionLedger::new(&h)?;
    let predicted = predicted_commutant_dim(&ledger);
    let o_h = h.orthogonal_group().len();
    let q = k.q() as u128;
    let ok = orbits as u128 == predicted && predicted == 2 * q + 2 && o_h as u128 == 2 * (q - 1);
    Ok(Outcome::new(
        ok,
        vec![orbits, predicted as usize],
        json!({
            "orbits_on_V2": orbits,
            "predicted": predicted,
            "two_q_plus_two": 2 * q + 2,
            "order_O_h_bruteforce": o_h,
            "ledger": ledger,
        }),
    ))
}

fn css_spaces(k: &FieldRef, t: usize) -> Vec<(&'static str, OrthogonalSpace)> {
    let mut v = vec![
        ("standard-square", OrthogonalSpace::standard(k, t, SquareClass::Square)),
        ("standard-nonsquare", OrthogonalSpace::standard(k, t, SquareClass::Nonsquare)),
    ];
    if t == 2 {
        v.push(("hyperbolic", OrthogonalSpace::hyperbolic_plane(k)));
    }
    v
}

fn claim_css_lemma(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = cfg.field()?;
    guard_dim(cfg, k.q(), cfg.n * cfg.t)?;
    let minus_one = k.square_class(k.from_int(-1))?;
    let mut rows = Vec::new();
    let mut ok = true;
    let mut codes = 0;
    for (label, u) in css_spaces(&k, cfg.t) {
        let ctx = Context::new(u.clone(), cfg.n, cfg.mass_elem(&k))?;
        for dim_n in 0..=u.witt_index() {
            for iso in u.enumerate_isotropic(dim_n) {
                let rep = css_intertwiner_check(&ctx, &iso)?;
                let mut expected = u.discriminant();
                for _ in 0..dim_n {
                    expected = expected.mul(minus_one);
                }
                let disc = iso.quotient()?.space().discriminant();
                let good = rep.holds && disc == expected;
                ok &= good;
                codes += 1;
                if !good {
                    rows.push(json!({ "space": label, "k": dim_n, "report": rep, "disc": disc, "expected": expected }));
                }
            }
        }
    }
    Ok(Outcome::new(ok, vec![codes], json!({ "codes_checked": codes, "failures": rows })))
}

fn claim_counterexample(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = cfg.field()?;
    if k.degree() != 1 {
        return Ok(Outcome {
            verdict: Verdict::Skipped("needs a prime field".into()),
            dims: vec![],
            witnesses: json!({}),
        });
    }
    guard_dim(cfg, k.q(), 3)?;
    let rep = verify_counterexample(k.p(), cfg.mass_elem(&k))?;
    let ok = rep.fixed_by_generators && rep.fixed_by_full_fourier && rep.parity_violated && !rep.in_css_span;
    let mut w = serde_json::to_value(&rep).expect("json");
    w["note"] = json!("support_size counts nonzero values; psi(0) = l(0) = 0");
    Ok(Outcome::new(ok, vec![(k.p() as usize).pow(3), rep.support_size], w))
}

fn claim_support_duality(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ctx = std_context(cfg)?;
    let k = ctx.field().clone();
    let t = ctx.t();
    let subspaces: Vec<SubspaceFq> = (0..=t).flat_map(|d| all_subspaces(&k, t, d)).collect();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let mut indicators_ok = true;
    let exhaustive = ctx.dim() * subspaces.len() <= 20_000;
    for (si, u1) in subspaces.iter().enumerate() {
        let b = SympGenerator::random_invertible_symmetric(&k, ctx.n(), rng);
        indicators_ok &= fourier_indicator_check(&ctx, &b, u1)?;
        if exhaustive {
            for i in 0..ctx.dim() {
                let phi = PsiVector::delta_index(&ctx, i);
                checked += 1;
                if !fourier_support_dual(&ctx, &phi, &b, u1)?.holds {
                    failures.push(json!({ "subspace": si, "delta": i }));
                }
            }
        }
    }
    if !exhaustive {
        let p = ctx.p();
        for trial in 0..200 {
            let u1 = &subspaces[rng.gen_range(0..subspaces.len())];
            let b = SympGenerator::random_invertible_symmetric(&k, ctx.n(), rng);
            let inside: Vec<usize> = indicator(&ctx, u1).amplitudes().keys().copied().collect();
            let mut amps = BTreeMap::new();
            for _ in 0..3 {
                let i = inside[rng.gen_range(0..inside.len())];
                amps.insert(i, crate::cyclo::CycloNum::from_int(p, rng.gen_range(1..p as i64)));
            }
            if trial % 2 == 1 {
                let i = rng.gen_range(0..ctx.dim());
                amps.entry(i).or_insert_with(|| crate::cyclo::CycloNum::one(p));
            }
            let phi = PsiVector::from_sparse(&ctx, amps)?;
            checked += 1;
            if !fourier_support_dual(&ctx, &phi, &b, u1)?.holds {
                failures.push(json!({ "trial": trial }));
            }
        }
    }
    Ok(Outcome::new(
        failures.is_empty() && indicators_ok,
        vec![ctx.dim(), subspaces.len()],
        json!({
            "exhaustive": exhaustive,
            "vectors_checked": checked,
            "indicator_clause": indicators_ok,
            "failures": failures,
        }),
    ))
}

fn claim_rank_contiguity(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut dims = Vec::new();
    let mut audit = |label: String, ctx: &Context, sub: &SubspaceCyclo| -> Result<()> {
        if sub.is_zero() {
            return Ok(());
        }
        let (good, ranks) = rank_contiguity_check(ctx, sub)?;
        ok &= good;
        dims.push(sub.dim());
        rows.push(json!({ "subspace": label, "dim": sub.dim(), "ranks": ranks, "contiguous": good }));
        Ok(())
    };
    let h = hyperbolic_context(cfg)?;
    audit("fixed-space(h)".into(), &h, &fixed_space(&h)?)?;
    let ctx = std_context(cfg)?;
    if ctx.t() > ctx.n() {
        return Err(Error::OutsideStableRange { t: ctx.t(), n: ctx.n() });
    }
    for r in 0..ctx.t() {
        audit(format!("M_{r}"), &ctx, &max_invariant_in(&ctx, &rank_span(&ctx, r))?)?;
    }
    Ok(Outcome::new(ok, dims, json!({ "subspaces": rows })))
}

fn claim_two_design(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = cfg.field()?;
    guard_dim(cfg, k.q(), 2 * cfg.n)?;
    let rep = two_design_check(&k, cfg.n, 100, rng)?;
    Ok(Outcome::new(
        rep.holds,
        vec![rep.sym_dim, rep.antisym_dim],
        json!({ "report": rep, "irreducibility": "no invariant subspace found (sampled operators)" }),
    ))
}

fn claim_symplectoclifford(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = cfg.field()?;
    guard_dim(cfg, k.q(), 2 * cfg.n)?;
    let ctx = Context::new(OrthogonalSpace::standard(&k, 2, SquareClass::Square), cfg.n, cfg.mass_elem(&k))?;
    let rep = symplectoclifford_check(&ctx, &[FqElem::ONE, FqElem::ONE])?;
    Ok(Outcome::new(rep.holds, rep.lattice_dims.clone(), serde_json::to_value(&rep).expect("json")))
}

fn claim_parity(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ctx = symplectic_context(cfg)?;
    let k = ctx.field().clone();
    let (even, odd) = parity_subspaces(&ctx);
    let gens = generator_ops(&ctx)?;
    let qn = ctx.dim();
    let invariant = invariant_under(&even, &gens) && invariant_under(&odd, &gens);
    let dims_ok = even.dim() == qn.div_ceil(2) && odd.dim() == (qn - 1) / 2;
    guard_dim(cfg, k.q(), 2 * cfg.n)?;
    let m = cfg.mass_elem(&k);
    let other = k.mul(m, k.canonical_nonsquare());
    let same = weyl_intertwiner_dim(&k, cfg.n, m, m)?;
    let different = weyl_intertwiner_dim(&k, cfg.n, m, other)?;
    Ok(Outcome::new(
        invariant && dims_ok && same == 1 && different == 0,
        vec![even.dim(), odd.dim()],
        json!({
            "even_dim": even.dim(),
            "odd_dim": odd.dim(),
            "invariant": invariant,
            "intertwiner_dim_equal_mass": same,
            "intertwiner_dim_other_class": different,
        }),
    ))
}

fn claim_explore_noncss(cfg: &RunConfig, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = cfg.field()?;
    if k.degree() != 1 {
        return Ok(Outcome {
            verdict: Verdict::Skipped("needs a prime field".into()),
            dims: vec![],
            witnesses: json!({}),
        });
    }
    guard_dim(cfg, k.q(), 3)?;
    let ctx = Context::new(OrthogonalSpace::standard(&k, 3, SquareClass::Nonsquare), 1, cfg.mass_elem(&k))?;
    let (psi, x0) = counterexample_psi(&ctx)?;
    let gens = generator_ops(&ctx)?;
    let psi_fixed = gens.iter().all(|g| psi.apply(g) == psi);
    let fixed = fixed_space(&ctx)?;
    Ok(Outcome {
        verdict: Verdict::True,
        dims: vec![fixed.dim()],
        witnesses: json!({
            "exploratory": true,
            "disc": SquareClass::Nonsquare,
            "x0": x0.iter().map(|x| x.0).collect::<Vec<_>>(),
            "psi_fixed": psi_fixed,
            "fixed_space_dim": fixed.dim(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let ids: std::collections::BTreeSet<_> = REGISTRY.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), REGISTRY.len());
        assert!(claim("main-theorem").unwrap().anchor.contains("span of tensor power CSS codes"));
        assert!(claim("rank-contiguity").unwrap().anchor.contains("contiguous range of integers"));
        assert!(claim("2-design").unwrap().anchor.contains("q^n(q^n+1)/2-dimensional symmetric"));
    }

    #[test]
    fn config_text_and_flags() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_text("# sweep\nq = 5\nn=1\ndisc=nonsquare\nclaims=parity, 2-design\nguard_dim=99\n").unwrap();
        assert_eq!((cfg.q, cfg.n, cfg.disc, cfg.guard_dim), (5, 1, SquareClass::Nonsquare, 99));
        assert_eq!(cfg.claims, vec!["parity", "2-design"]);
        assert!(cfg.validate().is_ok());
        assert!(cfg.apply_config_text("q").is_err());
        assert!(cfg.set("colour", "red").is_err());
        cfg.set("q", "9").unwrap();
        assert!(cfg.validate().is_ok());
        cfg.set("q", "6").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn guard_skips() {
        let cfg = RunConfig { guard_dim: 10, ..RunConfig::default() };
        let cert = certify(claim("fixed-space").unwrap(), &cfg);
        assert_eq!(cert.verdict, "skipped: size guard");
        assert!(cert.passed());
    }

    #[test]
    fn small_claims_pass() {
        let cfg = RunConfig { q: 3, n: 1, t: 1, ..RunConfig::default() };
        for id in ["weyl-covariance", "n-spectrum", "parity", "counterexample", "2-design", "hyperbolic-permutation"] {
            let cert = certify(claim(id).unwrap(), &cfg);
            assert_eq!(cert.verdict, "true", "{id}: {}", cert.witnesses);
        }
        let cert = certify(claim("n-spectrum").unwrap(), &cfg);
        assert_eq!(cert.dims, vec![3, 2]);
    }

    #[test]
    fn certificates_are_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig {
            q: 3,
            n: 1,
            t: 1,
            seed: 7,
            out: dir.path().to_path_buf(),
            claims: vec!["weyl-covariance".into(), "counterexample".into()],
            ..RunConfig::default()
        };
        let first = run(&cfg).unwrap();
        assert!(all_passed(&first));
        let a = fs::read(&first[0].path).unwrap();
        run(&cfg).unwrap();
        assert_eq!(a, fs::read(&first[0].path).unwrap());
        let csv = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        assert!(csv.starts_with("claim,q,n,t,disc,verdict,dims,runtime_ms\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
