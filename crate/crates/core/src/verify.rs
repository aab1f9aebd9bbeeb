//! Property harness: randomized and exhaustive checks of the seminorm
//! embedding and the boundary combinatorics.
//!
//! Every sampled case draws from its own ChaCha stream, seeded from
//! `(seed, check name, case index)`, so a failure can be replayed by index
//! alone. Reports carry the rendered inputs of each failing case.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::apartment::{converges, glue_equal, val_sequence_converges, ApartmentPoint, BoundaryPoint, FanCone};
use crate::bigcell::{gauss_norm, torus_multiplier, CellPolynomial, Monomial, Ring, Seminorm};
use crate::error::{Error, Result};
use crate::rootsys::{ParabolicType, RootSystem, WeylElement};
use crate::valued::{PAdic, RatFn, Rescaled, TAdic, Val, ValuedField};
use crate::wonder::{
    base_point, closure_poset, closure_types, lambda_tau, one_ps_limit, one_ps_point, project_pi_tau,
    stratum_membership,
};
use crate::Q;

/// Weyl groups up to this order are enumerated and sampled uniformly; larger
/// ones are sampled by random words.
pub const WEYL_ENUM_LIMIT: usize = 2_000;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub system: String,
    pub field: String,
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub failures: Vec<Failure>,
    /// Wall-clock time, filled in only by callers that ask for timing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// A failing case: its index, the inputs drawn for it, and what went wrong.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: usize,
    pub input: String,
    pub detail: String,
}

/// Sample sizes shared by a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub samples: usize,
    pub horizon: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { samples: 200, horizon: 50, seed: 0 }
    }
}

/// Names accepted by [`run_suite`]; `all` runs every other entry.
pub const SUITES: &[&str] = &[
    "apartment",
    "continuity",
    "equivariance",
    "gauss",
    "injectivity",
    "multiplicative",
    "pi_tau",
    "strata",
    "weyl_exhaustive",
    "all",
];

/// One declared invariant and the check that exercises it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coverage {
    pub module: &'static str,
    pub invariant: &'static str,
    pub check: &'static str,
}

pub const COVERAGE: &[Coverage] = &[
    Coverage { module: "apartment", invariant: "classify interior/closed/monotone", check: "apartment" },
    Coverage { module: "apartment", invariant: "fan cones cover the apartment", check: "apartment" },
    Coverage {
        module: "apartment",
        invariant: "glue_equal is an equivalence; interior glues across charts",
        check: "apartment",
    },
    Coverage { module: "apartment", invariant: "2^|Δ| strata meet the chart", check: "apartment" },
    Coverage { module: "bigcell", invariant: "multiplicativity", check: "multiplicative" },
    Coverage { module: "bigcell", invariant: "ultrametric with equality when values differ", check: "multiplicative" },
    Coverage { module: "bigcell", invariant: "norm on interior", check: "multiplicative" },
    Coverage { module: "bigcell", invariant: "reconstruction round-trip", check: "injectivity" },
    Coverage { module: "bigcell", invariant: "torus equivariance per monomial", check: "equivariance" },
    Coverage { module: "bigcell", invariant: "Weyl covariance", check: "equivariance" },
    Coverage { module: "bigcell", invariant: "Weyl covariance, exhaustive over W", check: "weyl_exhaustive" },
    Coverage { module: "bigcell", invariant: "continuity along sequences", check: "continuity" },
    Coverage { module: "bigcell", invariant: "Gauss point evaluates to the Gauss norm", check: "gauss" },
    Coverage { module: "bigcell", invariant: "value-group rescaling", check: "equivariance" },
    Coverage { module: "wonder", invariant: "base_point classifies to its type", check: "strata" },
    Coverage { module: "wonder", invariant: "one_ps_limit of λ_τ and of regular λ", check: "strata" },
    Coverage { module: "wonder", invariant: "closure order computed two ways agrees", check: "strata" },
    Coverage { module: "wonder", invariant: "2^|Δ| strata, one closed, one open", check: "strata" },
    Coverage { module: "wonder", invariant: "π_τ constant on fibers", check: "pi_tau" },
    Coverage { module: "wonder", invariant: "π_τ injective on directions seen by the radical", check: "pi_tau" },
    Coverage { module: "wonder", invariant: "closure of a stratum meets exactly the smaller types", check: "strata" },
    Coverage { module: "wonder", invariant: "stratum membership value table", check: "strata" },
];

/// Coefficient fields the harness can sample from.
pub trait SampleField: ValuedField + Clone {
    /// A random nonzero element of moderate valuation.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// `π^k` for a uniformizer `π`.
    fn uniformizer_pow(&self, k: i64) -> Self::Elem;
}

fn small_unit<R: Rng + ?Sized>(rng: &mut R) -> Q {
    let u: i64 = rng.gen_range(1..=9);
    let v: i64 = rng.gen_range(1..=9);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Q::new((sign * u).into(), v.into())
}

impl SampleField for PAdic {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Q {
        let k = rng.gen_range(-2..=2);
        small_unit(rng) * self.uniformizer_pow(k)
    }

    fn uniformizer_pow(&self, k: i64) -> Q {
        let pk: BigInt = self.prime().pow(k.unsigned_abs() as u32);
        if k >= 0 {
            Q::from_integer(pk)
        } else {
            Q::new(BigInt::one(), pk)
        }
    }
}

impl SampleField for TAdic {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RatFn {
        let k = rng.gen_range(-2..=2);
        let a: i64 = rng.gen_range(-3..=3);
        let b: i64 = rng.gen_range(-3..=3);
        let lin = |c: i64| RatFn::constant(Q::one()) + RatFn::constant(Q::from_integer(c.into())) * RatFn::t();
        let den = lin(b).inv().expect("1 + bt is nonzero");
        RatFn::constant(small_unit(rng)) * self.uniformizer_pow(k) * lin(a) * den
    }

    fn uniformizer_pow(&self, k: i64) -> RatFn {
        let tk = RatFn::t().pow(k.unsigned_abs() as u32);
        if k >= 0 {
            tk
        } else {
            tk.inv().expect("t^k is nonzero")
        }
    }
}

impl<F: SampleField> SampleField for Rescaled<F> {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> F::Elem {
        self.inner.sample(rng)
    }

    fn uniformizer_pow(&self, k: i64) -> F::Elem {
        self.inner.uniformizer_pow(k)
    }
}

/// Fixed data shared by the cases of one check.
pub struct Ctx<'a, F> {
    pub rs: &'a RootSystem,
    pub field: &'a F,
    pub horizon: usize,
    weyl: Option<Vec<WeylElement>>,
}

impl<'a, F: SampleField> Ctx<'a, F> {
    pub fn new(rs: &'a RootSystem, field: &'a F, horizon: usize) -> Ctx<'a, F> {
        let weyl = rs.weyl_group(WEYL_ENUM_LIMIT).ok().map(|g| g.elements);
        Ctx { rs, field, horizon, weyl }
    }

    pub fn weyl_elements(&self) -> Option<&[WeylElement]> {
        self.weyl.as_deref()
    }
}

/// Random source for one case, recording what it hands out.
pub struct Sampler {
    rng: ChaCha8Rng,
    log: String,
}

impl Sampler {
    pub fn new(seed: u64, check: &str, case: usize) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(case_seed(seed, check, case)), log: String::new() }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Adds `label=value` to the case's input record.
    pub fn note(&mut self, label: &str, value: impl fmt::Display) {
        if !self.log.is_empty() {
            self.log.push_str("; ");
        }
        let _ = write!(self.log, "{label}={value}");
    }

    pub fn input(&self) -> &str {
        &self.log
    }

    /// Rational with denominator at most 8 and absolute value at most 8.
    pub fn rational(&mut self) -> Q {
        let d: i64 = self.rng.gen_range(1..=8);
        let n: i64 = self.rng.gen_range(-8 * d..=8 * d);
        Q::new(n.into(), d.into())
    }

    pub fn rationals(&mut self, n: usize) -> Vec<Q> {
        (0..n).map(|_| self.rational()).collect()
    }

    /// Rational in `(0, 2]` with denominator at most 8.
    pub fn positive_rational(&mut self) -> Q {
        let d: i64 = self.rng.gen_range(1..=8);
        let n: i64 = self.rng.gen_range(1..=2 * d);
        Q::new(n.into(), d.into())
    }

    pub fn apartment_point(&mut self, rank: usize) -> ApartmentPoint {
        ApartmentPoint::new(self.rationals(rank))
    }

    /// Point in `chart`, each coordinate `+∞` with probability 1/3.
    pub fn boundary_point(&mut self, chart: &WeylElement) -> BoundaryPoint {
        let coords = (0..chart.rank())
            .map(|_| if self.rng.gen_ratio(1, 3) { Val::Inf } else { Val::Fin(self.rational()) })
            .collect();
        BoundaryPoint::new(chart.clone(), coords).expect("coords match the chart rank")
    }

    /// Point in `chart` with finite coordinates exactly on `tau`.
    pub fn stratum_point(&mut self, chart: &WeylElement, tau: ParabolicType) -> BoundaryPoint {
        let coords =
            (0..chart.rank()).map(|i| if tau.contains(i) { Val::Fin(self.rational()) } else { Val::Inf }).collect();
        BoundaryPoint::new(chart.clone(), coords).expect("coords match the chart rank")
    }

    pub fn weyl_element<F: SampleField>(&mut self, ctx: &Ctx<'_, F>) -> WeylElement {
        match ctx.weyl_elements() {
            Some(all) => all[self.rng.gen_range(0..all.len())].clone(),
            None => {
                let n = ctx.rs.rank();
                let len = self.rng.gen_range(0..=2 * ctx.rs.num_positive());
                let word: Vec<usize> = (0..len).map(|_| self.rng.gen_range(0..n)).collect();
                WeylElement::from_word(ctx.rs, &word).expect("letters are in range")
            }
        }
    }

    /// Random element of the parabolic subgroup `W_τ`.
    pub fn weyl_in_type(&mut self, rs: &RootSystem, tau: ParabolicType) -> WeylElement {
        let letters: Vec<usize> = tau.iter().collect();
        if letters.is_empty() {
            return WeylElement::identity(rs.rank());
        }
        let len = self.rng.gen_range(0..=6);
        let word: Vec<usize> = (0..len).map(|_| letters[self.rng.gen_range(0..letters.len())]).collect();
        WeylElement::from_word(rs, &word).expect("letters are in range")
    }

    /// Monomial of `ring`: characters with entries in `[-2, 2]` (Laurent) or
    /// multiplicities `0..=2` over the chart's negative simple roots (monoid),
    /// times up to two `ξ_α^ν` with `ν ∈ {1, 2}`.
    pub fn monomial(&mut self, rs: &RootSystem, ring: &Ring) -> Monomial {
        let n = rs.rank();
        let chi = match ring {
            Ring::Laurent => (0..n).map(|_| self.rng.gen_range(-2..=2)).collect(),
            Ring::Monoid(c) => {
                let m: Vec<i64> = (0..n).map(|_| self.rng.gen_range(0..=2)).collect();
                c.apply(&m).into_iter().map(|v| -v).collect()
            }
        };
        let k = self.rng.gen_range(0..=2);
        let nu: Vec<(usize, u32)> =
            (0..k).map(|_| (self.rng.gen_range(0..rs.num_roots()), self.rng.gen_range(1..=2))).collect();
        Monomial::new(chi, nu)
    }

    /// Polynomial with one to six terms.
    pub fn polynomial<F: SampleField>(&mut self, ctx: &Ctx<'_, F>, ring: &Ring) -> CellPolynomial<F::Elem> {
        let k = self.rng.gen_range(1..=6);
        let terms: Vec<(Monomial, F::Elem)> =
            (0..k).map(|_| (self.monomial(ctx.rs, ring), ctx.field.sample(&mut self.rng))).collect();
        CellPolynomial::from_terms(ctx.rs, ring.clone(), terms).expect("sampled monomials lie in the ring")
    }

    /// `Laurent` for interior `y` half the time, otherwise the monoid ring of
    /// `y`'s chart.
    pub fn ring_for(&mut self, y: &BoundaryPoint) -> Ring {
        if y.is_interior() && self.rng.gen_bool(0.5) {
            Ring::Laurent
        } else {
            Ring::Monoid(y.chart().clone())
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-case seed from the run seed, the check name and the case index.
pub fn case_seed(seed: u64, check: &str, case: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in check.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    splitmix(seed ^ splitmix(h ^ splitmix(case as u64)))
}

type CaseResult = core::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn ok<T>(r: Result<T>, what: &str) -> core::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Runs `cases` sampled cases of `case` and collects the failures.
pub fn run_cases<F: SampleField>(
    check: &str,
    ctx: &Ctx<'_, F>,
    cases: usize,
    seed: u64,
    mut case: impl FnMut(&Ctx<'_, F>, &mut Sampler, usize) -> CaseResult,
) -> CheckReport {
    let mut failures = Vec::new();
    for i in 0..cases {
        let mut smp = Sampler::new(seed, check, i);
        if let Err(detail) = case(ctx, &mut smp, i) {
            failures.push(Failure { case: i, input: smp.log, detail });
        }
    }
    CheckReport {
        check: check.to_string(),
        system: ctx.rs.spec_string(),
        field: ctx.field.name(),
        samples: cases,
        seed,
        passed: failures.is_empty(),
        failures,
        elapsed_ms: None,
    }
}

/// Re-runs one case of a sampled check, returning its failure if any.
pub fn replay<F: SampleField>(
    check: &str,
    rs: &RootSystem,
    field: &F,
    cfg: &SuiteConfig,
    case: usize,
) -> Result<Option<Failure>> {
    let ctx = Ctx::new(rs, field, cfg.horizon);
    let mut smp = Sampler::new(cfg.seed, check, case);
    let outcome = match check {
        "gauss" => gauss_case(&ctx, &mut smp, case),
        "multiplicative" => multiplicative_case(&ctx, &mut smp, case),
        "injectivity" => injectivity_case(&ctx, &mut smp, case),
        "equivariance" => equivariance_case(&ctx, &mut smp, case),
        "continuity" => continuity_case(&ctx, &mut smp, case),
        "apartment" => apartment_case(&ctx, &mut smp, case),
        "pi_tau" => pi_tau_case(&ctx, &mut smp, case, cfg.samples),
        "weyl_exhaustive" => {
            let per = weyl_per_element(&ctx, cfg.samples);
            weyl_exhaustive_case(&ctx, &mut smp, case, per)
        }
        "strata" => return Ok(check_strata(rs).failures.into_iter().find(|f| f.case == case)),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(outcome.err().map(|detail| Failure { case, input: smp.log, detail }))
}

/// Runs a named suite; reports come back sorted by check name.
pub fn run_suite<F: SampleField>(
    rs: &RootSystem,
    field: &F,
    suite: &str,
    cfg: &SuiteConfig,
) -> Result<Vec<CheckReport>> {
    let names: Vec<&str> = match suite {
        "all" => SUITES.iter().copied().filter(|&s| s != "all").collect(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(names.into_iter().map(|name| run_check(rs, field, name, cfg)).collect())
}

/// Runs one check by name. Panics on names outside [`SUITES`].
pub fn run_check<F: SampleField>(rs: &RootSystem, field: &F, name: &str, cfg: &SuiteConfig) -> CheckReport {
    let (s, h, seed) = (cfg.samples, cfg.horizon, cfg.seed);
    match name {
        "apartment" => check_apartment(rs, field, s, seed),
        "continuity" => check_continuity(rs, field, s, h, seed),
        "equivariance" => check_equivariance(rs, field, s, seed),
        "gauss" => check_gauss(rs, field, s, seed),
        "injectivity" => check_injectivity(rs, field, s, seed),
        "multiplicative" => check_multiplicative(rs, field, s, seed),
        "pi_tau" => check_pi_tau(rs, field, s, seed),
        "strata" => check_strata(rs),
        "weyl_exhaustive" => check_weyl_exhaustive(rs, field, s, seed),
        other => panic!("unknown check {other:?}"),
    }
}

// ---------------------------------------------------------------------------
// gauss

/// `Θ(x₀, x₀)` is the Gauss norm: every monomial has value 0 at the origin.
pub fn check_gauss<F: SampleField>(rs: &RootSystem, field: &F, samples: usize, seed: u64) -> CheckReport {
    run_cases("gauss", &Ctx::new(rs, field, 0), samples, seed, gauss_case)
}

fn gauss_case<F: SampleField>(ctx: &Ctx<'_, F>, smp: &mut Sampler, _: usize) -> CaseResult {
    let rs = ctx.rs;
    let chart = smp.weyl_element(ctx);
    let x0 = ApartmentPoint::origin(rs.rank());
    let y0 = BoundaryPoint::from_interior(&x0, chart);
    let ring = smp.ring_for(&y0);
    let f = smp.polynomial(ctx, &ring);
    smp.note("y0", &y0);
    smp.note("f", &f);
    let s = ok(Seminorm::new(rs, x0, y0), "seminorm")?;
    let min_coeff = f.terms().map(|(_, c)| ctx.field.val(c)).min().unwrap_or(Val::Inf);
    let v = ok(s.eval(ctx.field, &f), "eval")?;
    ensure!(v == min_coeff, "eval {v} differs from the minimum coefficient valuation {min_coeff}");
    ensure!(v == gauss_norm(ctx.field, &f), "eval differs from gauss_norm");
    Ok(())
}

// ---------------------------------------------------------------------------
// multiplicative

/// Multiplicativity, the ultrametric inequality with its equality case, and
/// definiteness on interior points.
pub fn check_multiplicative<F: SampleField>(rs: &RootSystem, field: &F, samples: usize, seed: u64) -> CheckReport {
    run_cases("multiplicative", &Ctx::new(rs, field, 0), samples, seed, multiplicative_case)
}

fn multiplicative_case<F: SampleField>(ctx: &Ctx<'_, F>, smp: &mut Sampler, _: usize) -> CaseResult {
    let rs = ctx.rs;
    let chart = smp.weyl_element(ctx);
    let x = smp.apartment_point(rs.rank());
    let y = smp.boundary_point(&chart);
    let ring = smp.ring_for(&y);
    let f = smp.polynomial(ctx, &ring);
    let g = smp.polynomial(ctx, &ring);
    smp.note("x", &x);
    smp.note("y", &y);
    smp.note("f", &f);
    smp.note("g", &g);
    let interior = y.is_interior();
    let s = ok(Seminorm::new(rs, x, y), "seminorm")?;
    let ev = |p: &CellPolynomial<F::Elem>| ok(s.eval(ctx.field, p), "eval");
    let (vf, vg) = (ev(&f)?, ev(&g)?);

    let one = CellPolynomial::one(ring.clone(), rs.rank());
    ensure!(ev(&one)? == Val::zero(), "|1| is not 1");

    let fg = ok(f.mul(&g), "product")?;
    let vfg = ev(&fg)?;
    ensure!(vfg == vf.clone() + vg.clone(), "eval(fg) = {vfg}, eval f + eval g = {}", vf.clone() + vg.clone());

    let sum = ok(f.add(&g), "sum")?;
    let vs = ev(&sum)?;
    let m = vf.clone().min(vg.clone());
    ensure!(vs >= m, "eval(f+g) = {vs} below min {m}");
    if vf != vg {
        ensure!(vs == m, "eval(f+g) = {vs}, expected {m} since the values differ");
    }

    // forced-difference case: h = π^k g with eval h ≠ eval f
    if !vg.is_inf() {
        let k = if vf == vg { 1 } else { 0 };
        let pk = ctx.field.uniformizer_pow(k);
        let h = ok(CellPolynomial::monomial(rs, ring.clone(), Monomial::one(rs.rank()), pk.clone()), "π^k")?;
        let h = ok(g.mul(&h), "π^k g")?;
        let vh = ev(&h)?;
        ensure!(vh == vg.clone() + ctx.field.val(&pk), "eval(π^k g) = {vh} is not eval g + val π^k");
        if vh != vf {
            let vsum = ev(&ok(f.add(&h), "f + π^k g")?)?;
            let m = vf.clone().min(vh.clone());
            ensure!(vsum == m, "eval(f + π^k g) = {vsum}, expected {m}");
        }
    }

    if interior {
        for (p, vp) in [(&f, &vf), (&g, &vg)] {
            ensure!(p.is_zero() || !vp.is_inf(), "nonzero polynomial vanishes at an interior point");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// injectivity

/// Distinct pairs give distinct seminorms, detected on the coordinates
/// `χ_α` (`α ∈ cΦ⁻`) and `ξ_α`, and `reconstruct` inverts evaluation.
pub fn check_injectivity<F: SampleField>(rs: &RootSystem, field: &F, samples: usize, seed: u64) -> CheckReport {
    run_cases("injectivity", &Ctx::new(rs, field, 0), samples, seed, injectivity_case)
}

fn signature(s: &Seminorm<'_>) -> core::result::Result<Vec<Val>, String> {
    let rs = s.root_system();
    let n = rs.rank();
    let perm = rs.root_permutation(s.chart());
    let mut out = Vec::with_capacity(rs.num_positive() + rs.num_roots());
    for k in rs.negative_roots() {
        out.push(ok(s.monomial_value(&Monomial::character(rs.root(perm[k]).to_vec())), "χ")?);
    }
    for k in 0..rs.num_roots() {
        out.push(ok(s.monomial_value(&Monomial::xi(n, k)), "ξ")?);
    }
    Ok(out)
}

fn injectivity_case<F: SampleField>(ctx: &Ctx<'_, F>, smp: &mut Sampler, _: usize) -> CaseResult {
    let rs = ctx.rs;
    let n = rs.rank();
    let chart = smp.weyl_element(ctx);
    let x = smp.apartment_point(n);
    let y = smp.boundary_point(&chart);
    let (x2, y2) = match smp.rng().gen_range(0..4) {
        0 => (x.clone(), y.clone()),
        1 => {
            // change a single coordinate of one of the two points
            let i = smp.rng().gen_range(0..n);
            if smp.rng().gen_bool(0.5) {
                let mut v = x.vals().to_vec();
                v[i] += Q::one();
                (ApartmentPoint::new(v), y.clone())
            } else {
                let mut c = y.coords().to_vec();
                c[i] = match &c[i] {
                    Val::Inf => Val::zero(),
                    Val::Fin(_) => Val::Inf,
                };
                (x.clone(), BoundaryPoint::new(chart.clone(), c).expect("same rank"))
            }
        }
        _ => (smp.apartment_point(n), smp.boundary_point(&chart)),
    };
    smp.note("x", &x);
    smp.note("y", &y);
    smp.note("x'", &x2);
    smp.note("y'", &y2);
    let s = ok(Seminorm::new(rs, x.clone(), y.clone()), "seminorm")?;
    let s2 = ok(Seminorm::new(rs, x2.clone(), y2.clone()), "seminorm")?;

    let (rx, ry) = s.reconstruct();
    ensure!(rx == x && ry == y, "reconstruct gave ({rx}, {ry})");

    let (sig, sig2) = (signature(&s)?, signature(&s2)?);
    let same = x == x2 && y == y2;
    ensure!(
        (sig == sig2) == same,
        "pairs {} but signatures {}",
        if same { "equal" } else { "differ" },
        if sig == sig2 { "agree" } else { "differ" }
    );
    if y.classify_stratum() != y2.classify_stratum() {
        let pattern = |v: &[Val]| v.iter().map(Val::is_inf).collect::<Vec<_>>();
        ensure!(pattern(&sig) != pattern(&sig2), "different strata share a vanishing pattern");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// equivariance

/// Torus translation against the per-monomial multiplier, Weyl transport of
/// charts, and rescaling of the value group.
pub fn check_equivariance<F: SampleField>(rs: &RootSystem, field: &F, samples: usize, seed: u64) -> CheckReport {
    run_cases("equivariance", &Ctx::new(rs, field, 0), samples, seed, equivariance_case)
}

fn equivariance_case<F: SampleField>(ctx: &Ctx<'_, F>, smp: &mut Sampler, _: usize) -> CaseResult {
    let rs = ctx.rs;
    let n = rs.rank();
    let chart = smp.weyl_element(ctx);
    let x = smp.apartment_point(n);
    let y = smp.boundary_point(&chart);
    let ring = smp.ring_for(&y);
    let f = smp.polynomial(ctx, &ring);
    let sval = smp.rationals(n);
    let tval = smp.rationals(n);
    let w = smp.weyl_element(ctx);
    let q = smp.positive_rational();
    smp.note("x", &x);
    smp.note("y", &y);
    smp.note("f", &f);
    smp.note("sval", fmt_qs(&sval));
    smp.note("tval", fmt_qs(&tval));
    smp.note("w", &w);
    smp.note("q", &q);
    let s = ok(Seminorm::new(rs, x.clone(), y.clone()), "seminorm")?;
    let base = ok(s.eval(ctx.field, &f), "eval")?;

    let zero = vec![Q::zero(); n];
    ensure!(ok(s.translate(&zero, &zero).eval(ctx.field, &f), "eval")? == base, "identity translation changed eval");

    let moved = s.translate(&sval, &tval);
    let mut expected = Val::Inf;
    for (m, c) in f.terms() {
        let direct = ok(moved.monomial_value(m), "translated monomial")?;
        let mult = torus_multiplier(rs, &chart, m, &sval, &tval);
        let via = ok(s.monomial_value(m), "monomial")? + &mult;
        ensure!(direct == via, "monomial {m}: translated value {direct}, multiplier route {via}");
        expected = expected.min(ctx.field.val(c) + via);
    }
    let got = ok(moved.eval(ctx.field, &f), "translated eval")?;
    ensure!(got == expected, "translated eval {got}, multiplier route {expected}");

    let fw = ok(f.weyl_transport(rs, &w), "transport")?;
    if let Ring::Monoid(_) = ring {
        ensure!(*fw.ring() == Ring::Monoid(w.compose(rs, &chart)), "transported ring is not the chart w·c");
    }
    let vw = ok(s.weyl_act(&w).eval(ctx.field, &fw), "transported eval")?;
    ensure!(vw == base, "Weyl-transported eval {vw}, original {base}");

    let scaled = Rescaled { inner: ctx.field.clone(), factor: q.clone() };
    let xq = ApartmentPoint::new(x.vals().iter().map(|v| v * &q).collect());
    let yq = BoundaryPoint::new(chart.clone(), y.coords().iter().map(|v| scale(v, &q)).collect()).expect("same rank");
    let vq = ok(ok(Seminorm::new(rs, xq, yq), "seminorm")?.eval(&scaled, &f), "rescaled eval")?;
    ensure!(vq == scale(&base, &q), "rescaled eval {vq}, expected {}", scale(&base, &q));
    Ok(())
}

fn scale(v: &Val, q: &Q) -> Val {
    match v {
        Val::Fin(a) => Val::Fin(a * q),
        Val::Inf => Val::Inf,
    }
}

fn fmt_qs(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Weyl covariance for every element of `W`, `per_element` cases each.
pub fn check_weyl_exhaustive<F: SampleField>(rs: &RootSystem, field: &F, per_element: usize, seed: u64) -> CheckReport {
    let ctx = Ctx::new(rs, field, 0);
    let per = weyl_per_element(&ctx, per_element);
    let total = ctx.weyl_elements().map_or(0, |w| w.len()) * per;
    run_cases("weyl_exhaustive", &ctx, total, seed, |c, s, i| weyl_exhaustive_case(c, s, i, per))
}

fn weyl_per_element<F: SampleField>(ctx: &Ctx<'_, F>, per_element: usize) -> usize {
    if ctx.weyl_elements().is_some() {
        per_element.max(1)
    } else {
        0
    }
}

fn weyl_exhaustive_case<F: SampleField>(ctx: &Ctx<'_, F>, smp: &mut Sampler, case: usize, per: usize) -> CaseResult {
    let rs = ctx.rs;
    let all = ctx.weyl_elements().ok_or("Weyl group too large to enumerate")?;
    let w = all.get(case / per.max(1)).ok_or("case index beyond the Weyl group")?.clone();
    let chart = smp.weyl_element(ctx);
    let x = smp.apartment_point(rs.rank());
    let y = smp.boundary_point(&chart);
    let ring = smp.ring_for(&y);
    let f = smp.polynomial(ctx, &ring);
    smp.note("w", &w);
    smp.note("x", &x);
    smp.note("y", &y);
    smp.note("f", &f);
    let s = ok(Seminorm::new(rs, x, y), "seminorm")?;
    let base = ok(s.eval(ctx.field, &f), "eval")?;
    let fw = ok(f.weyl_transport(rs, &w), "transport")?;
    let moved = s.weyl_act(&w);
    let vw = ok(moved.eval(ctx.field, &fw), "transported eval")?;
    ensure!(vw == base, "transported eval {vw}, original {base}");
    let tv = ok(s.term_values(ctx.field, &f), "terms")?;
    let mut tvw = ok(moved.term_values(ctx.field, &fw), "transported terms")?;
    let mut tv_sorted = tv;
    tv_sorted.sort();
    tvw.sort();
    ensure!(tv_sorted == tvw, "term values are not permuted by the transport");
    Ok(())
}

// ---------------------------------------------------------------------------
// continuity

/// Sequences `y_n → y` built from eventually-constant finite coordinates and
/// linearly divergent infinite ones; both the points and the values of a
/// random `f` must converge within `horizon`. An oscillating sequence must be
/// rejected.
pub fn check_continuity<F: SampleField>(
    rs: &RootSystem,
    field: &F,
    samples: usize,
    horizon: usize,
    seed: u64,
) -> CheckReport {
    run_cases("continuity", &Ctx::new(rs, field, horizon), samples, seed, continuity_case)
}

fn ceil_q(q: &Q) -> BigInt {
    q.ceil().to_integer()
}

fn continuity_case<F: SampleField>(ctx: &Ctx<'_, F>, smp: &mut Sampler, _: usize) -> CaseResult {
    let rs = ctx.rs;
    let n = rs.rank();
    let horizon = ctx.horizon.max(8);
    let chart = smp.weyl_element(ctx);
    let x = smp.apartment_point(n);
    let mut target = smp.boundary_point(&chart).coords().to_vec();
    if !target.iter().any(Val::is_inf) {
        let i = smp.rng().gen_range(0..n);
        target[i] = Val::Inf;
    }
    let target = BoundaryPoint::new(chart.clone(), target).expect("same rank");
    let f = smp.polynomial(ctx, &Ring::Monoid(chart.clone()));
    let constant = smp.rng().gen_ratio(1, 5);

    // Slope large enough that every divergent term clears every finite term
    // by a quarter of the horizon.
    let flat: Vec<Val> = target.coords().iter().map(|v| if v.is_inf() { Val::zero() } else { v.clone() }).collect();
    let flat = BoundaryPoint::new(chart.clone(), flat).expect("same rank");
    let flat_terms = ok(ok(Seminorm::new(rs, x.clone(), flat), "seminorm")?.term_values(ctx.field, &f), "terms")?;
    let bound = flat_terms.iter().filter_map(|v| v.finite().map(|q| q.abs())).max().unwrap_or_else(Q::zero)
        + Q::from_integer(2.into());
    let quarter = Q::from_integer(BigInt::from(horizon / 4));
    let slope = Q::from_integer(ceil_q(&(Q::from_integer(2.into()) * &bound / &quarter)) + BigInt::one());

    let mut plan = Vec::with_capacity(n);
    for v in target.coords() {
        let start = smp.rng().gen_range(0..=(horizon / 4).min(10));
        let delta = smp.rational();
        let d: i64 = smp.rng().gen_range(1..=8);
        let offset = Q::new(smp.rng().gen_range(0..=8 * d).into(), d.into());
        plan.push((v.clone(), start, delta, offset));
    }
    let point_at = |k: usize| -> BoundaryPoint {
        let coords = plan
            .iter()
            .map(|(v, start, delta, offset)| match v {
                _ if constant => v.clone(),
                Val::Fin(t) if k < *start => Val::Fin(t + delta),
                Val::Fin(t) => Val::Fin(t.clone()),
                Val::Inf => Val::Fin(&slope * Q::from_integer(BigInt::from(k)) + offset),
            })
            .collect();
        BoundaryPoint::new(chart.clone(), coords).expect("same rank")
    };
    let seq: Vec<BoundaryPoint> = (0..horizon).map(point_at).collect();
    smp.note("x", &x);
    smp.note("y", &target);
    smp.note("f", &f);
    smp.note("constant", constant);
    smp.note("slope", &slope);

    ensure!(ok(converges(&seq, &target, horizon), "converges")?, "sequence does not converge to y");
    let limit = ok(ok(Seminorm::new(rs, x.clone(), target.clone()), "seminorm")?.eval(ctx.field, &f), "eval")?;
    let values = seq
        .iter()
        .map(|yn| ok(ok(Seminorm::new(rs, x.clone(), yn.clone()), "seminorm")?.eval(ctx.field, &f), "eval"))
        .collect::<core::result::Result<Vec<Val>, String>>()?;
    ensure!(
        val_sequence_converges(&values, &limit, horizon),
        "eval values {} do not converge to {limit}",
        tail_summary(&values)
    );

    // negative control: one coordinate oscillates
    let i = target.coords().iter().position(|v| !v.is_inf()).unwrap_or(0);
    let wobble: Vec<BoundaryPoint> = (0..horizon)
        .map(|k| {
            let mut c = point_at(k).coords().to_vec();
            c[i] = match target.coords()[i].clone() {
                Val::Fin(t) => Val::Fin(if k % 2 == 0 { t + Q::one() } else { t - Q::one() }),
                Val::Inf => Val::Fin(if k % 2 == 0 { Q::from_integer(BigInt::from(k)) } else { Q::zero() }),
            };
            BoundaryPoint::new(chart.clone(), c).expect("same rank")
        })
        .collect();
    ensure!(!ok(converges(&wobble, &target, horizon), "converges")?, "oscillating sequence accepted as convergent");
    Ok(())
}

fn tail_summary(values: &[Val]) -> String {
    let start = values.len().saturating_sub(3);
    let parts: Vec<String> = values[start..].iter().map(ToString::to_string).collect();
    format!("[..., {}]", parts.join(", "))
}

// ---------------------------------------------------------------------------
// strata

/// Exhaustive over all types: base points, one-parameter limits, the value
/// table of each stratum in every chart, closures, and the closure poset.
pub fn check_strata(rs: &RootSystem) -> CheckReport {
    let n = rs.rank();
    let mut cases: Vec<(String, CaseResult)> = Vec::new();
    let charts: Vec<WeylElement> = match rs.weyl_group(WEYL_ENUM_LIMIT) {
        Ok(g) => g.elements,
        Err(_) => vec![WeylElement::identity(n), rs.longest_element()],
    };
    let probes: Vec<ApartmentPoint> = vec![
        ApartmentPoint::origin(n),
        ApartmentPoint::new(vec![Q::one(); n]),
        ApartmentPoint::new((0..n).map(|i| Q::new(BigInt::from(2 * i as i64 - 1), BigInt::from(3))).collect()),
    ];
    let poset = rs.type_poset();

    for &tau in &poset.types {
        let label = tau.bitstring(n);
        let base = base_point(rs, tau);
        cases.push((format!("tau={label} classify"), {
            let got = base.classify_stratum();
            if got == tau {
                Ok(())
            } else {
                Err(format!("classified as {}", got.bitstring(n)))
            }
        }));
        cases.push((format!("tau={label} one_ps_limit"), strata_limit(rs, tau, &base)));
        for (ci, chart) in charts.iter().enumerate() {
            for (pi, x) in probes.iter().enumerate() {
                let name = format!("tau={label} chart={chart} x#{pi}");
                cases.push((name, strata_membership_case(rs, tau, chart, x, ci + pi)));
            }
        }
        cases.push((format!("tau={label} closure_types"), {
            let got = closure_types(rs, tau);
            let mut want: Vec<ParabolicType> = poset.types.iter().copied().filter(|t| t.is_subset(tau)).collect();
            want.sort_by_key(|t| (t.len(), t.0));
            if got == want {
                Ok(())
            } else {
                Err(format!("closure meets {} types, expected {}", got.len(), want.len()))
            }
        }));
        cases.push((format!("tau={label} opposite"), strata_opposite(rs, tau)));
    }

    cases.push(("closure poset".to_string(), {
        let cp = closure_poset(rs);
        let count = 1usize << n;
        let closed = cp.types.iter().filter(|t| t.is_empty()).count();
        let open = cp.types.iter().filter(|&&t| t == ParabolicType::full(n)).count();
        if !cp.certified() {
            Err("subset and divisor characterizations disagree".to_string())
        } else if cp.types.len() != count {
            Err(format!("{} strata, expected {count}", cp.types.len()))
        } else if closed != 1 || open != 1 {
            Err(format!("{closed} closed and {open} open strata"))
        } else if cp.divisors().len() != n || cp.covers.len() != n * (count / 2) {
            Err("wrong number of divisors or covering relations".to_string())
        } else {
            Ok(())
        }
    }));
    cases.push(("regular and non-dominant cocharacters".to_string(), {
        let regular = vec![1; n];
        let mut bad = vec![1; n];
        bad[n - 1] = -1;
        match (one_ps_limit(rs, &regular), one_ps_limit(rs, &bad)) {
            (Ok(y), Err(Error::LimitDoesNotExist(i))) if y == base_point(rs, ParabolicType::EMPTY) && i == n - 1 => {
                Ok(())
            }
            (a, b) => Err(format!("regular limit {a:?}, non-dominant limit {b:?}")),
        }
    }));

    let mut failures = Vec::new();
    let total = cases.len();
    for (i, (input, r)) in cases.into_iter().enumerate() {
        if let Err(detail) = r {
            failures.push(Failure { case: i, input, detail });
        }
    }
    CheckReport {
        check: "strata".to_string(),
        system: rs.spec_string(),
        field: "none".to_string(),
        samples: total,
        seed: 0,
        passed: failures.is_empty(),
        failures,
        elapsed_ms: None,
    }
}

fn strata_limit(rs: &RootSystem, tau: ParabolicType, base: &BoundaryPoint) -> CaseResult {
    let lambda = lambda_tau(rs, tau);
    let limit = ok(one_ps_limit(rs, &lambda), "one_ps_limit")?;
    ensure!(limit == *base, "limit {limit} differs from the base point {base}");
    let horizon = 50;
    let seq: Vec<BoundaryPoint> = (0..horizon as i64).map(|k| one_ps_point(&lambda, k)).collect();
    ensure!(ok(converges(&seq, base, horizon), "converges")?, "λ_τ(t) does not approach the base point");
    Ok(())
}

/// Checks `stratum_membership` and, independently, that `ξ_α` vanishes
/// exactly for the chart-negative roots involving a simple root outside `τ`.
fn strata_membership_case(
    rs: &RootSystem,
    tau: ParabolicType,
    chart: &WeylElement,
    x: &ApartmentPoint,
    salt: usize,
) -> CaseResult {
    let n = rs.rank();
    let coords: Vec<Val> = (0..n)
        .map(|i| {
            if !tau.contains(i) {
                Val::Inf
            } else if salt.is_multiple_of(2) {
                Val::zero()
            } else {
                Val::frac(i as i64 + 1, 2)
            }
        })
        .collect();
    let y = BoundaryPoint::new(chart.clone(), coords).expect("same rank");
    let desc = ok(stratum_membership(rs, x, &y), "stratum_membership")?;
    ensure!(desc.tau == tau, "descriptor type {}", desc.tau.bitstring(n));
    ensure!(desc.chart == rs.min_coset_rep(chart, tau), "descriptor chart is not the minimal coset representative");

    let perm = rs.root_permutation(chart);
    let mut expect: Vec<usize> = rs
        .negative_roots()
        .map(|k| perm[k])
        .filter(|&k| {
            let m = y.multiplicities(rs, rs.root(k));
            m.iter().enumerate().any(|(i, &c)| c > 0 && !tau.contains(i))
        })
        .collect();
    expect.sort_unstable();
    ensure!(
        desc.vanishing_roots(rs) == expect,
        "vanishing roots {:?}, expected {:?}",
        desc.vanishing_roots(rs),
        expect
    );

    let s = ok(Seminorm::new(rs, x.clone(), y), "seminorm")?;
    for k in 0..rs.num_roots() {
        let v = ok(s.monomial_value(&Monomial::xi(n, k)), "ξ")?;
        ensure!(v.is_inf() == expect.binary_search(&k).is_ok(), "ξ_{k} = {v} has the wrong vanishing");
    }
    let levi_count = rs.levi_and_radical_roots(tau).levi.len();
    ensure!(desc.roots.radical.len() * 2 + levi_count == rs.num_roots(), "Levi and radical do not partition the roots");
    Ok(())
}

/// `τ^opp` is an involution, preserves nondegeneracy, and is computed
/// componentwise.
fn strata_opposite(rs: &RootSystem, tau: ParabolicType) -> CaseResult {
    let opp = rs.opposite_type(tau);
    ensure!(rs.opposite_type(opp) == tau, "opposite is not an involution");
    ensure!(opp.len() == tau.len(), "opposite changes the size");
    ensure!(rs.is_nondegenerate(opp) == rs.is_nondegenerate(tau), "opposite changes nondegeneracy");
    for comp in rs.components() {
        let alone = ok(RootSystem::build(&[(comp.family, comp.rank)]), "component")?;
        let local =
            ParabolicType::from_indices(tau.iter().filter(|i| comp.range().contains(i)).map(|i| i - comp.offset));
        let want = alone.opposite_type(local);
        let got = ParabolicType::from_indices(opp.iter().filter(|i| comp.range().contains(i)).map(|i| i - comp.offset));
        ensure!(got == want, "opposite differs from the component {}{} computation", comp.family.letter(), comp.rank);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// pi_tau

/// `π_τ` in each proper type, `samples` cases per type: constant along the
/// stratum fiber, equal to `val_x` on the radical, zero at the origin, and
/// sensitive to exactly the components of `x` the radical sees.
pub fn check_pi_tau<F: SampleField>(rs: &RootSystem, field: &F, samples: usize, seed: u64) -> CheckReport {
    let ctx = Ctx::new(rs, field, 0);
    let proper = (1usize << rs.rank()) - 1;
    run_cases("pi_tau", &ctx, proper * samples, seed, |c, s, i| pi_tau_case(c, s, i, samples))
}

fn proper_types(rs: &RootSystem) -> Vec<ParabolicType> {
    let full = ParabolicType::full(rs.rank());
    rs.type_poset().types.into_iter().filter(|&t| t != full).collect()
}

fn pi_tau_case<F: SampleField>(ctx: &Ctx<'_, F>, smp: &mut Sampler, case: usize, per: usize) -> CaseResult {
    let rs = ctx.rs;
    let n = rs.rank();
    let types = proper_types(rs);
    let tau = *types.get(case / per.max(1)).ok_or("case index beyond the proper types")?;
    let chart = smp.weyl_element(ctx);
    let x = if case.is_multiple_of(per.max(1)) { ApartmentPoint::origin(n) } else { smp.apartment_point(n) };
    let y = smp.stratum_point(&chart, tau);
    let y2 = smp.stratum_point(&chart, tau);
    let active: Vec<usize> =
        rs.components().iter().filter(|c| !c.range().all(|i| tau.contains(i))).flat_map(|c| c.range()).collect();
    let x2 = if smp.rng().gen_bool(0.5) {
        smp.apartment_point(n)
    } else {
        // move x only along components the radical does not see
        let mut v = x.vals().to_vec();
        for (i, slot) in v.iter_mut().enumerate() {
            if !active.contains(&i) {
                *slot = smp.rational();
            }
        }
        ApartmentPoint::new(v)
    };
    smp.note("tau", tau.bitstring(n));
    smp.note("x", &x);
    smp.note("y", &y);
    smp.note("y'", &y2);
    smp.note("x'", &x2);

    let (desc, flag) = ok(project_pi_tau(rs, &x, &y), "project_pi_tau")?;
    let (desc2, flag2) = ok(project_pi_tau(rs, &x, &y2), "project_pi_tau")?;
    ensure!(desc == desc2 && flag == flag2, "π_τ differs along the fiber: {flag} vs {flag2}");

    let expect: Vec<(usize, Q)> = desc.roots.radical.iter().map(|&k| (k, x.pair(rs.root(k)))).collect();
    ensure!(flag.coords == expect, "flag coordinates are not val_x on the radical");
    if x == ApartmentPoint::origin(n) {
        ensure!(flag.coords.iter().all(|(_, v)| v.is_zero()), "origin does not give |ξ_α| = 1 on the radical");
    }

    let (_, flag3) = ok(project_pi_tau(rs, &x2, &y), "project_pi_tau")?;
    let seen_differs = active.iter().any(|&i| x.vals()[i] != x2.vals()[i]);
    ensure!(
        (flag3 != flag) == seen_differs,
        "π_τ {} but x and x' {} on the components the radical sees",
        if flag3 != flag { "separates" } else { "identifies" },
        if seen_differs { "differ" } else { "agree" }
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// apartment

/// Fan cover, gluing of chart representations, stratum monotonicity and the
/// stratum count of a chart.
pub fn check_apartment<F: SampleField>(rs: &RootSystem, field: &F, samples: usize, seed: u64) -> CheckReport {
    let ctx = Ctx::new(rs, field, 0);
    let cones = ctx.weyl_elements().map(|w| FanCone::all(rs, w));
    run_cases("apartment", &ctx, samples, seed, |c, s, i| apartment_case_with(c, s, i, cones.as_deref()))
}

fn apartment_case<F: SampleField>(ctx: &Ctx<'_, F>, smp: &mut Sampler, case: usize) -> CaseResult {
    let cones = ctx.weyl_elements().map(|w| FanCone::all(ctx.rs, w));
    apartment_case_with(ctx, smp, case, cones.as_deref())
}

/// Limit of a real sequence that is affine in its parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Limit {
    MinusInf,
    Fin(Q),
    PlusInf,
}

/// Limits of `val(α)`, for every root `α`, along the interior approximations
/// of `y` that replace each `+∞` coordinate by a parameter tending to `+∞`.
/// The values are affine in the parameter, so two samples determine them.
pub fn limit_profile(rs: &RootSystem, y: &BoundaryPoint) -> Vec<Limit> {
    let approx = |t: i64| {
        let coords = y.coords().iter().map(|v| if v.is_inf() { Val::int(t) } else { v.clone() }).collect();
        let z = BoundaryPoint::new(y.chart().clone(), coords).expect("same rank");
        z.to_interior(rs).expect("all coordinates finite")
    };
    let (a, b) = (approx(1_000), approx(2_000));
    (0..rs.num_roots())
        .map(|k| {
            let (u, v) = (a.pair(rs.root(k)), b.pair(rs.root(k)));
            match u.cmp(&v) {
                core::cmp::Ordering::Equal => Limit::Fin(u),
                core::cmp::Ordering::Less => Limit::PlusInf,
                core::cmp::Ordering::Greater => Limit::MinusInf,
            }
        })
        .collect()
}

fn apartment_case_with<F: SampleField>(
    ctx: &Ctx<'_, F>,
    smp: &mut Sampler,
    case: usize,
    cones: Option<&[FanCone]>,
) -> CaseResult {
    let rs = ctx.rs;
    let n = rs.rank();
    if case == 0 {
        let mut seen = BTreeSet::new();
        for bits in 0..1u64 << n {
            let coords = (0..n).map(|i| if bits >> i & 1 == 1 { Val::zero() } else { Val::Inf }).collect();
            seen.insert(BoundaryPoint::standard(coords).classify_stratum());
        }
        ensure!(seen.len() == 1 << n, "{} strata meet the chart, expected {}", seen.len(), 1u64 << n);
        let interior = BoundaryPoint::standard(vec![Val::zero(); n]);
        ensure!(interior.classify_stratum() == ParabolicType::full(n), "interior point is not in the open stratum");
        let corner = BoundaryPoint::standard(vec![Val::Inf; n]);
        ensure!(corner.classify_stratum().is_empty(), "all-infinite point is not in the closed stratum");
    }

    let chart = smp.weyl_element(ctx);
    let y = smp.boundary_point(&chart);
    let tau = y.classify_stratum();
    smp.note("y", &y);

    // the same point read in the chart c·u, u ∈ W_τ
    let u = smp.weyl_in_type(rs, tau);
    let chart2 = chart.compose(rs, &u);
    let coords2 = (0..n)
        .map(|i| {
            let neg: Vec<i64> = chart2.image_of_simple(i).iter().map(|v| -v).collect();
            ok(y.value_at(rs, &neg), "value_at")
        })
        .collect::<core::result::Result<Vec<_>, _>>()?;
    let y2 = BoundaryPoint::new(chart2, coords2).expect("same rank");
    let other_chart = smp.weyl_element(ctx);
    let y3 = smp.boundary_point(&other_chart);
    smp.note("u", &u);
    smp.note("y'", &y2);
    smp.note("y''", &y3);

    ensure!(glue_equal(rs, &y, &y), "glue_equal is not reflexive");
    ensure!(glue_equal(rs, &y, &y2) && glue_equal(rs, &y2, &y), "re-charted point not glued to the original");
    ensure!(glue_equal(rs, &y, &y3) == glue_equal(rs, &y3, &y), "glue_equal is not symmetric");
    ensure!(glue_equal(rs, &y2, &y3) == glue_equal(rs, &y, &y3), "glue_equal is not transitive");
    let (p1, p2, p3) = (limit_profile(rs, &y), limit_profile(rs, &y2), limit_profile(rs, &y3));
    ensure!(p1 == p2, "re-charted point has a different limit profile");
    ensure!(glue_equal(rs, &y, &y3) == (p1 == p3), "glue_equal disagrees with the limit profile");

    let x = smp.apartment_point(n);
    let c2 = smp.weyl_element(ctx);
    smp.note("x", &x);
    let (a, b) = (BoundaryPoint::from_interior(&x, chart.clone()), BoundaryPoint::from_interior(&x, c2));
    ensure!(glue_equal(rs, &a, &b), "interior point not glued across charts");
    ensure!(a.to_interior(rs).as_ref() == Some(&x), "interior point does not round-trip through its chart");

    if let Some(i) = tau.iter().next() {
        let mut c = y.coords().to_vec();
        c[i] = Val::Inf;
        let smaller = BoundaryPoint::new(chart.clone(), c).expect("same rank").classify_stratum();
        ensure!(smaller == tau.remove(i), "erasing coordinate {i} gave type {}", smaller.bitstring(n));
    }

    if let Some(cones) = cones {
        let probes: Vec<ApartmentPoint> = if n <= 2 { grid(n) } else { vec![x.clone()] };
        for p in probes.iter().chain(core::iter::once(&x)) {
            ensure!(cones.iter().any(|c| c.contains(rs, p)), "{p} lies in no fan cone");
        }
    }
    Ok(())
}

/// Half-integer grid `[-2, 2]^n`.
fn grid(n: usize) -> Vec<ApartmentPoint> {
    let steps: Vec<Q> = (-4..=4).map(|k: i64| Q::new(k.into(), 2.into())).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Q>| {
                steps.iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s.clone());
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(ApartmentPoint::new).collect()
}
