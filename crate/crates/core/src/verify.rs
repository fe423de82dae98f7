//! Verification driver: runs the suites for a [`RunConfig`] and collects
//! one [`CheckRecord`] per equation and setting.
//!
//! Exact checks pass only on literal zeros. Float checks pass below the
//! configured tolerance; chirality, commutator, Weyl and invariant-mass checks
//! use a tolerance one hundred times tighter. Negative controls are recorded
//! as checks that pass when the residual is large or the expected error is
//! returned. Fuzz trials run in parallel, each on its own ChaCha stream, and
//! are aggregated as the maximum residual per equation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Mat4;
use crate::error::Error;
use crate::field::{
    dirac_residual, u_spinor, u_spinor_unchecked, weyl_spinor, Chirality, FourMomentum, PlaneWaveField, Spin,
};
use crate::gamma::{intertwiner, GammaRep, RepName};
use crate::lorentz::{
    covariance_check, flipped_generator_residuals, generator_commutators, pi_commutation_check,
    projector_commutators, special_frame_residuals, transformed_dirac_residuals, transformed_projected_residuals,
    LorentzParams,
};
use crate::projector::ProjectorSet;
use crate::residual::{EquationId, ResidualReport};
use crate::scalar::{Backend, Rational, Real};
use crate::subsolution::{
    constituent_residuals, gamma5_projector_commutators, identity_residuals, majorana_build, majorana_residuals,
    massless_projected, projected_residuals, recombination_residuals, split, split_unchecked, weyl_residuals,
    weyl_residuals_unchecked, SplitResult,
};

pub const DEFAULT_SEED: u64 = 0x5eed_d12a_c000_0001;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_TRIALS: usize = 1000;

/// Residual above which an off-shell or wrong-operator control counts as fired.
pub const CONTROL_THRESHOLD: f64 = 1e-3;
/// Residual above which the wrong-sign generator control counts as fired.
pub const COVARIANCE_CONTROL_THRESHOLD: f64 = 0.1;

/// Rapidities and angles swept by the covariance suite.
pub const OMEGA_GRID: [f64; 6] = [-3.0, -1.0, -0.5, 0.5, 1.0, 3.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Clifford,
    Projectors,
    Split,
    Weyl,
    Majorana,
    Covariance,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Clifford,
        Suite::Projectors,
        Suite::Split,
        Suite::Weyl,
        Suite::Majorana,
        Suite::Covariance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Projectors => "projectors",
            Suite::Split => "split",
            Suite::Weyl => "weyl",
            Suite::Majorana => "majorana",
            Suite::Covariance => "covariance",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::EACH.to_vec(),
            s => vec![s],
        }
    }

    /// Keeps the fuzz streams of different suites apart.
    fn salt(self) -> u64 {
        (Self::EACH.iter().position(|s| *s == self).unwrap_or(0) as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendChoice {
    Exact,
    Float,
    Both,
}

impl BackendChoice {
    fn exact(self) -> bool {
        matches!(self, BackendChoice::Exact | BackendChoice::Both)
    }

    fn float(self) -> bool {
        matches!(self, BackendChoice::Float | BackendChoice::Both)
    }
}

impl FromStr for BackendChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(BackendChoice::Exact),
            "float" => Ok(BackendChoice::Float),
            "both" => Ok(BackendChoice::Both),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

/// One pinned representation, or all three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepChoice {
    Spinor,
    Standard,
    Majorana,
    All,
}

impl RepChoice {
    pub fn reps(self) -> Vec<RepName> {
        match self {
            RepChoice::Spinor => vec![RepName::Spinor],
            RepChoice::Standard => vec![RepName::Standard],
            RepChoice::Majorana => vec![RepName::Majorana],
            RepChoice::All => RepName::ALL.to_vec(),
        }
    }
}

impl FromStr for RepChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(RepChoice::All);
        }
        match s.parse::<RepName>().map_err(|e| e.to_string())? {
            RepName::Spinor => Ok(RepChoice::Spinor),
            RepName::Standard => Ok(RepChoice::Standard),
            RepName::Majorana => Ok(RepChoice::Majorana),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub rep: RepChoice,
    pub backend: BackendChoice,
    pub tol: f64,
    pub trials: usize,
    pub seed: u64,
    pub mass_range: [f64; 2],
    pub momentum_max: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            rep: RepChoice::All,
            backend: BackendChoice::Both,
            tol: DEFAULT_TOLERANCE,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            mass_range: [0.1, 10.0],
            momentum_max: 10.0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(format!("tolerance must be positive, got {}", self.tol));
        }
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        let [lo, hi] = self.mass_range;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(format!("mass range must satisfy 0 < lo <= hi, got [{lo}, {hi}]"));
        }
        if !(self.momentum_max.is_finite() && self.momentum_max >= 0.0) {
            return Err(format!("momentum bound must be non-negative, got {}", self.momentum_max));
        }
        Ok(())
    }

    fn strict_tol(&self) -> f64 {
        self.tol / 100.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub paper_eq: String,
    pub backend: Backend,
    pub residual: Option<f64>,
    pub exact_zero: bool,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub wall_ms: u64,
}

impl Report {
    pub fn new(config: RunConfig, checks: Vec<CheckRecord>, wall_ms: u64) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            passed,
            failed: checks.len() - passed,
        };
        Self {
            config,
            checks,
            summary,
            wall_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let residual = match (c.exact_zero, c.residual) {
                (true, _) => "exact 0".to_string(),
                (false, Some(r)) => format!("{r:.3e}"),
                (false, None) => "-".to_string(),
            };
            let verdict = if c.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{verdict} {:<6} {:<12} {}", c.backend.as_str(), residual, c.id);
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed ({} ms)",
            self.summary.passed, self.summary.failed, self.wall_ms
        );
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
}

/// Writes `report` in `format` to `path`, or to standard output.
pub fn emit_report(report: &Report, format: OutputFormat, path: Option<&Path>) -> std::io::Result<()> {
    let text = match format {
        OutputFormat::Human => report.to_human(),
        OutputFormat::Json => report.to_json(),
    };
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Accumulates check records in a deterministic order.
#[derive(Default)]
struct Checks {
    records: Vec<CheckRecord>,
}

impl Checks {
    /// One record per equation in `report`, each passing when every entry is
    /// an exact zero (exact backend) or below `tol(equation)` (float).
    fn zero(&mut self, prefix: &str, report: &ResidualReport, tol: impl Fn(EquationId) -> f64) {
        let mut order: Vec<EquationId> = Vec::new();
        let mut worst: BTreeMap<String, (f64, bool)> = BTreeMap::new();
        for e in report.entries() {
            let slot = worst.entry(e.equation.as_str().to_string()).or_insert_with(|| {
                order.push(e.equation);
                (0.0, true)
            });
            slot.0 = slot.0.max(e.magnitude);
            slot.1 &= e.exact_zero;
        }
        for eq in order {
            let (magnitude, exact_zero) = worst[eq.as_str()];
            let pass = match report.backend {
                Backend::Exact => exact_zero,
                Backend::Float => magnitude < tol(eq),
            };
            self.records.push(CheckRecord {
                id: format!("{prefix}/{eq}"),
                paper_eq: eq.as_str().to_string(),
                backend: report.backend,
                residual: if exact_zero { None } else { Some(magnitude) },
                exact_zero,
                pass,
            });
        }
    }

    /// A negative control that passes when `magnitude` exceeds `threshold`.
    fn large(&mut self, id: String, eq: EquationId, backend: Backend, magnitude: f64, threshold: f64) {
        self.records.push(CheckRecord {
            id,
            paper_eq: eq.as_str().to_string(),
            backend,
            residual: Some(magnitude),
            exact_zero: false,
            pass: magnitude > threshold,
        });
    }

    /// A negative control that passes when the expected error came back.
    fn error(&mut self, id: String, eq: EquationId, backend: Backend, got_expected: bool) {
        self.records.push(CheckRecord {
            id,
            paper_eq: eq.as_str().to_string(),
            backend,
            residual: None,
            exact_zero: false,
            pass: got_expected,
        });
    }

    /// An operation that should have succeeded but did not.
    fn failure(&mut self, id: String, eq: EquationId, backend: Backend, err: &Error) {
        self.error(format!("{id}/{err}"), eq, backend, false);
    }

    fn report_or_fail(
        &mut self,
        prefix: &str,
        eq: EquationId,
        backend: Backend,
        result: Result<ResidualReport, Error>,
        tol: impl Fn(EquationId) -> f64,
    ) {
        match result {
            Ok(r) => self.zero(prefix, &r, tol),
            Err(e) => self.failure(prefix.to_string(), eq, backend, &e),
        }
    }
}

/// Runs every selected suite.
pub fn run(config: &RunConfig) -> Result<Report, String> {
    config.validate()?;
    let start = Instant::now();
    let mut checks = Checks::default();
    for suite in config.suite.expand() {
        if config.backend.exact() {
            exact_suite(suite, config, &mut checks);
        }
        if config.backend.float() {
            float_suite(suite, config, &mut checks);
        }
    }
    let wall_ms = start.elapsed().as_millis() as u64;
    Ok(Report::new(config.clone(), checks.records, wall_ms))
}

fn exact_suite(suite: Suite, config: &RunConfig, checks: &mut Checks) {
    match suite {
        Suite::Clifford => clifford::<Rational>(config, checks),
        Suite::Projectors => projectors::<Rational>(config, checks),
        Suite::Split => split_exact(config, checks),
        Suite::Weyl => weyl_exact(config, checks),
        Suite::Majorana => majorana_exact(config, checks),
        Suite::Covariance => {
            for rep in config.rep.reps() {
                let r = generator_commutators(&GammaRep::<Rational>::pinned(rep));
                checks.zero(&format!("covariance/{rep}"), &r, |_| 0.0);
            }
        }
        Suite::All => unreachable!("expanded"),
    }
}

fn float_suite(suite: Suite, config: &RunConfig, checks: &mut Checks) {
    match suite {
        Suite::Clifford => clifford::<f64>(config, checks),
        Suite::Projectors => projectors::<f64>(config, checks),
        Suite::Split => split_float(config, checks),
        Suite::Weyl => weyl_float(config, checks),
        Suite::Majorana => majorana_float(config, checks),
        Suite::Covariance => covariance_float(config, checks),
        Suite::All => unreachable!("expanded"),
    }
}

fn clifford<R: Real>(config: &RunConfig, checks: &mut Checks) {
    let backend = R::BACKEND;
    let tol = config.tol;
    for rep_name in config.rep.reps() {
        let prefix = format!("clifford/{rep_name}");
        let rep = match GammaRep::<R>::build(rep_name) {
            Ok(r) => r,
            Err(e) => {
                checks.failure(prefix, EquationId::CliffordRelation, backend, &e);
                continue;
            }
        };
        let mut r = ResidualReport::for_backend::<R>();
        for c in rep.clifford_residuals() {
            r.push_matrix(EquationId::CliffordRelation, format!("{},{}", c.mu, c.nu), &c.residual);
        }
        let g5 = rep.gamma5_residuals();
        r.push_matrix(EquationId::Gamma5Square, "g5^2 - I", &g5[0]);
        for (mu, m) in g5[1..].iter().enumerate() {
            r.push_matrix(EquationId::Gamma5Anticommutator, format!("{{g5, g{mu}}}"), m);
        }
        if rep_name == RepName::Spinor {
            let proj = ProjectorSet::<R>::pinned(rep_name);
            r.push_matrix(EquationId::SpinorPinning, "P1 - diag(1,1,1,0)", &(proj.p1() - &Mat4::diag_int([1, 1, 1, 0])));
            r.push_matrix(EquationId::SpinorPinning, "P2 - diag(1,1,0,1)", &(proj.p2() - &Mat4::diag_int([1, 1, 0, 1])));
            r.push_matrix(
                EquationId::SpinorPinning,
                "Q- - diag(1,1,0,0)",
                &(proj.q_minus() - &Mat4::diag_int([1, 1, 0, 0])),
            );
        } else {
            let spinor = GammaRep::<R>::pinned(RepName::Spinor);
            match intertwiner(&spinor, &rep) {
                Ok(u) => {
                    for mu in 0..4 {
                        r.push_matrix(
                            EquationId::IntertwinerConjugation,
                            format!("U g{mu} U^+ - g{mu}'"),
                            &(&u.conjugate(spinor.gamma(mu)) - rep.gamma(mu)),
                        );
                    }
                    r.push_matrix(
                        EquationId::IntertwinerUnitarity,
                        "U U^+ - I",
                        &(&u.conjugate(&Mat4::identity()) - &Mat4::identity()),
                    );
                }
                Err(e) => checks.failure(prefix.clone(), EquationId::IntertwinerConjugation, backend, &e),
            }
        }
        checks.zero(&prefix, &r, |_| tol);
    }
}

fn projectors<R: Real>(config: &RunConfig, checks: &mut Checks) {
    let backend = R::BACKEND;
    let tol = config.tol;
    for rep_name in config.rep.reps() {
        let prefix = format!("projectors/{rep_name}");
        let set = match GammaRep::<R>::build(rep_name).and_then(|rep| ProjectorSet::build(&rep)) {
            Ok(s) => s,
            Err(e) => {
                checks.failure(prefix, EquationId::ProjectorIdempotent, backend, &e);
                continue;
            }
        };
        let mut r = set.algebra_residuals();
        r.extend(set.v_swap_check());
        checks.zero(&prefix, &r, |_| tol);

        let control = set.v_swap_check_with(&Mat4::identity());
        checks.large(
            format!("{prefix}/control/identity-as-swap"),
            EquationId::SwapP1ToP2,
            backend,
            control.max_for(EquationId::SwapP1ToP2),
            CONTROL_THRESHOLD,
        );
    }
}

fn witness() -> FourMomentum<Rational> {
    FourMomentum::from_ints([3, 2, 2, 0], 1).expect("on shell")
}

fn split_checks<R: Real>(sr: &SplitResult<R>, reps: &[RepName]) -> Result<ResidualReport, Error> {
    let mut r = recombination_residuals(sr);
    r.extend(identity_residuals(sr));
    r.extend(constituent_residuals(sr));
    for rep in reps {
        r.extend(projected_residuals(sr, *rep)?);
    }
    Ok(r)
}

fn split_exact(config: &RunConfig, checks: &mut Checks) {
    let b = Backend::Exact;
    let one = Rational::from_i64(1);
    let spinor = GammaRep::<Rational>::pinned(RepName::Spinor);
    let reps = config.rep.reps();
    for spin in Spin::BOTH {
        let prefix = format!("split/witness/{spin:?}").to_lowercase();
        let psi = PlaneWaveField::from_term(u_spinor(&witness(), &spinor, spin).expect("witness"), RepName::Spinor);
        match split(&psi, &one) {
            Ok(sr) => {
                checks.report_or_fail(&prefix, EquationId::Recomposition, b, split_checks(&sr, &reps), |_| 0.0);
                let free = massless_projected(&sr);
                checks.large(
                    format!("{prefix}/control/massless-projected-nonzero"),
                    EquationId::MasslessProjected,
                    b,
                    free.max_magnitude(),
                    CONTROL_THRESHOLD,
                );
            }
            Err(e) => checks.failure(prefix, EquationId::Recomposition, b, &e),
        }
    }
    checks.zero("split/chirality", &gamma5_projector_commutators(&spinor), |_| 0.0);

    // controls
    let off = FourMomentum::new_unchecked([3, 2, 2, 1].map(Rational::from_i64), one.clone());
    let bad = PlaneWaveField::from_term(u_spinor_unchecked(&off, &spinor, Spin::Up).expect("spinor"), RepName::Spinor);
    let dirac = dirac_residual(&bad, &one).map(|f| f.max_abs()).unwrap_or(0.0);
    checks.large("split/control/off-shell-dirac".into(), EquationId::Dirac, b, dirac, CONTROL_THRESHOLD);
    if let Ok(sr) = split_unchecked(&bad, &one) {
        let c = constituent_residuals(&sr);
        let worst = c.max_for(EquationId::Constituent1).max(c.max_for(EquationId::Constituent2));
        checks.large("split/control/off-shell-constituent".into(), EquationId::Constituent1, b, worst, CONTROL_THRESHOLD);
    }
    checks.error(
        "split/control/off-shell-rejected".into(),
        EquationId::Dirac,
        b,
        split(&bad, &one) == Err(Error::NotASolution),
    );
    let psi = PlaneWaveField::from_term(u_spinor(&witness(), &spinor, Spin::Up).expect("witness"), RepName::Spinor);
    checks.error(
        "split/control/massless-split".into(),
        EquationId::SplitRecombinationUpper1,
        b,
        split(&psi, &Rational::from_i64(0)) == Err(Error::SplitRequiresMass),
    );
}

fn exact_massless() -> Vec<FourMomentum<Rational>> {
    [[1, 0, 0, 1], [1, 0, 0, -1], [5, 3, 4, 0], [3, 1, 2, 2], [7, -2, 3, -6], [9, 4, -4, -7]]
        .into_iter()
        .map(|p| FourMomentum::from_ints(p, 0).expect("massless"))
        .collect()
}

fn weyl_exact(config: &RunConfig, checks: &mut Checks) {
    for rep_name in config.rep.reps() {
        let rep = GammaRep::<Rational>::pinned(rep_name);
        let mut r = ResidualReport::for_backend::<Rational>();
        let mut error = None;
        for p in exact_massless() {
            for c in [Chirality::Left, Chirality::Right] {
                let res = weyl_spinor(&p, &rep, c)
                    .map(|t| PlaneWaveField::from_term(t, rep_name))
                    .and_then(|f| weyl_residuals(&f));
                match res {
                    Ok(x) => r.extend(x),
                    Err(e) => error = Some(e),
                }
            }
        }
        let prefix = format!("weyl/{rep_name}");
        if let Some(e) = error {
            checks.failure(prefix.clone(), EquationId::WeylLeft, Backend::Exact, &e);
        }
        checks.zero(&prefix, &r, |_| 0.0);

        let massive = PlaneWaveField::from_term(u_spinor(&witness(), &rep, Spin::Up).expect("witness"), rep_name);
        checks.error(
            format!("{prefix}/control/massive-rejected"),
            EquationId::WeylLeft,
            Backend::Exact,
            weyl_residuals(&massive) == Err(Error::WeylRequiresMassless),
        );
        let forced = weyl_residuals_unchecked(&massive).map(|r| r.max_magnitude()).unwrap_or(0.0);
        checks.large(
            format!("{prefix}/control/massive-unchecked"),
            EquationId::WeylLeft,
            Backend::Exact,
            forced,
            CONTROL_THRESHOLD,
        );
    }
}

fn majorana_exact(config: &RunConfig, checks: &mut Checks) {
    let one = Rational::from_i64(1);
    for rep_name in config.rep.reps() {
        let rep = GammaRep::<Rational>::pinned(rep_name);
        let prefix = format!("majorana/{rep_name}");
        let mut r = ResidualReport::for_backend::<Rational>();
        for spin in Spin::BOTH {
            let psi = PlaneWaveField::from_term(u_spinor(&witness(), &rep, spin).expect("witness"), rep_name);
            let res = majorana_build(&psi).and_then(|m| {
                let mut out = majorana_residuals(&m, &one)?;
                out.push_field(EquationId::Dirac, "dirac(psi_M)", &dirac_residual(&m, &one)?);
                Ok(out)
            });
            match res {
                Ok(x) => r.extend(x),
                Err(e) => checks.failure(prefix.clone(), EquationId::MajoranaSelfConjugate, Backend::Exact, &e),
            }
            if spin == Spin::Up {
                checks.error(
                    format!("{prefix}/control/positive-frequency-only"),
                    EquationId::MajoranaSelfConjugate,
                    Backend::Exact,
                    majorana_residuals(&psi, &one) == Err(Error::NotMajorana),
                );
            }
        }
        checks.zero(&prefix, &r, |_| 0.0);
    }
}

/// Per-trial generator: ChaCha8 seeded from the run seed and suite, with the
/// trial index as stream.
fn trial_rng(config: &RunConfig, suite: Suite, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ suite.salt());
    rng.set_stream(trial as u64);
    rng
}

/// Uniform direction, magnitude uniform in `[lo, hi]`.
fn random_spatial(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> [f64; 3] {
    let r = lo + (hi - lo) * rng.random::<f64>();
    let cos_t: f64 = rng.random_range(-1.0..=1.0);
    let sin_t = (1.0 - cos_t * cos_t).sqrt();
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    [r * sin_t * phi.cos(), r * sin_t * phi.sin(), r * cos_t]
}

/// On-shell by construction: `p⁰` from the shell condition.
pub fn fuzz_momentum(rng: &mut ChaCha8Rng, config: &RunConfig) -> FourMomentum<f64> {
    let [lo, hi] = config.mass_range;
    let m = rng.random_range(lo..=hi);
    FourMomentum::on_shell(random_spatial(rng, 0.0, config.momentum_max), m)
}

/// Massless momenta keep `|p|` away from zero so `p⁰ > 0`.
pub fn fuzz_massless(rng: &mut ChaCha8Rng, config: &RunConfig) -> FourMomentum<f64> {
    let hi = config.momentum_max.max(1.0);
    FourMomentum::on_shell(random_spatial(rng, 0.01 * hi, hi), 0.0)
}

/// Runs `trial` for every index in parallel and merges the reports in
/// index order.
fn fuzz(
    trials: usize,
    trial: impl Fn(usize) -> Result<ResidualReport, Error> + Sync,
) -> (ResidualReport, Vec<Error>) {
    let results: Vec<_> = (0..trials).into_par_iter().map(&trial).collect();
    let mut merged = ResidualReport::new(Backend::Float);
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(x) => merged.extend(x),
            Err(e) => errors.push(e),
        }
    }
    (merged, errors)
}

fn record_fuzz(checks: &mut Checks, prefix: &str, eq: EquationId, merged: (ResidualReport, Vec<Error>), tol: impl Fn(EquationId) -> f64) {
    let (report, errors) = merged;
    if let Some(e) = errors.first() {
        checks.failure(format!("{prefix}/trials-failed-{}", errors.len()), eq, Backend::Float, e);
    }
    checks.zero(prefix, &report, tol);
}

fn split_float(config: &RunConfig, checks: &mut Checks) {
    let reps = config.rep.reps();
    let spinor = GammaRep::<f64>::pinned(RepName::Spinor);
    let merged = fuzz(config.trials, |i| {
        let mut rng = trial_rng(config, Suite::Split, i);
        let p = fuzz_momentum(&mut rng, config);
        let mut r = ResidualReport::new(Backend::Float);
        for spin in Spin::BOTH {
            let psi = PlaneWaveField::from_term(u_spinor(&p, &spinor, spin)?, RepName::Spinor);
            let sr = split(&psi, p.mass())?;
            r.extend(split_checks(&sr, &reps)?);
        }
        Ok(r)
    });
    record_fuzz(checks, "split/fuzz", EquationId::Recomposition, merged, |_| config.tol);

    let off = FourMomentum::new_unchecked([3.0, 2.0, 2.0, 1.0], 1.0);
    let bad = PlaneWaveField::from_term(u_spinor_unchecked(&off, &spinor, Spin::Up).expect("spinor"), RepName::Spinor);
    let dirac = dirac_residual(&bad, &1.0).map(|f| f.max_abs()).unwrap_or(0.0);
    checks.large("split/control/off-shell-dirac".into(), EquationId::Dirac, Backend::Float, dirac, CONTROL_THRESHOLD);
}

fn weyl_float(config: &RunConfig, checks: &mut Checks) {
    let strict = config.strict_tol();
    for rep_name in config.rep.reps() {
        let rep = GammaRep::<f64>::pinned(rep_name);
        let merged = fuzz((config.trials / 10).max(1), |i| {
            let mut rng = trial_rng(config, Suite::Weyl, i);
            let p = fuzz_massless(&mut rng, config);
            let mut r = ResidualReport::new(Backend::Float);
            for c in [Chirality::Left, Chirality::Right] {
                let f = PlaneWaveField::from_term(weyl_spinor(&p, &rep, c)?, rep_name);
                r.extend(weyl_residuals(&f)?);
            }
            Ok(r)
        });
        record_fuzz(checks, &format!("weyl/fuzz/{rep_name}"), EquationId::WeylLeft, merged, |_| strict);
    }
}

fn majorana_float(config: &RunConfig, checks: &mut Checks) {
    for rep_name in config.rep.reps() {
        let rep = GammaRep::<f64>::pinned(rep_name);
        let merged = fuzz(config.trials, |i| {
            let mut rng = trial_rng(config, Suite::Majorana, i);
            let p = fuzz_momentum(&mut rng, config);
            let mut r = ResidualReport::new(Backend::Float);
            for spin in Spin::BOTH {
                let psi = PlaneWaveField::from_term(u_spinor(&p, &rep, spin)?, rep_name);
                let maj = majorana_build(&psi)?;
                r.extend(majorana_residuals(&maj, p.mass())?);
            }
            Ok(r)
        });
        record_fuzz(
            checks,
            &format!("majorana/fuzz/{rep_name}"),
            EquationId::MajoranaLeft,
            merged,
            |_| config.tol,
        );
    }
}

fn covariance_float(config: &RunConfig, checks: &mut Checks) {
    let tol = config.tol;
    let strict = config.strict_tol();
    let tol_for = |eq: EquationId| match eq {
        EquationId::TransformCommutator | EquationId::GeneratorCommutator | EquationId::MetricPreservation => strict,
        EquationId::SpecialFrameMass => strict,
        _ => tol,
    };
    for rep_name in config.rep.reps() {
        let rep = GammaRep::<f64>::pinned(rep_name);
        let prefix = format!("covariance/{rep_name}");
        let mut r = ResidualReport::new(Backend::Float);
        let mut failed = None;
        for plane in [(0, 3), (1, 2)] {
            for w in OMEGA_GRID {
                match LorentzParams::new(plane.0, plane.1, w).and_then(|p| covariance_check(&p, &rep)) {
                    Ok(x) => r.extend(x),
                    Err(e) => failed = Some(e),
                }
            }
        }
        let mut grid = OMEGA_GRID.to_vec();
        grid.push(1.3);
        match pi_commutation_check(&rep, &grid) {
            Ok(x) => r.extend(x),
            Err(e) => failed = Some(e),
        }
        if let Some(e) = failed {
            checks.failure(prefix.clone(), EquationId::CovarianceCondition, Backend::Float, &e);
        }
        checks.zero(&prefix, &r, tol_for);

        let merged = fuzz(config.trials, |i| {
            let mut rng = trial_rng(config, Suite::Covariance, i);
            let p = fuzz_momentum(&mut rng, config);
            let plane = if rng.random::<bool>() { (0, 3) } else { (1, 2) };
            let w = OMEGA_GRID[rng.random_range(0..OMEGA_GRID.len())];
            let params = LorentzParams::new(plane.0, plane.1, w)?;
            let mut r = ResidualReport::new(Backend::Float);
            let spin = if rng.random::<bool>() { Spin::Up } else { Spin::Down };
            let psi = PlaneWaveField::from_term(u_spinor(&p, &rep, spin)?, rep_name);
            r.extend(transformed_dirac_residuals(&psi, *p.mass(), &params)?);
            if rep_name == RepName::Spinor {
                let sr = split(&psi, p.mass())?;
                r.extend(transformed_projected_residuals(&sr, &params)?);
                r.extend(special_frame_residuals(&sr)?);
            }
            Ok(r)
        });
        record_fuzz(checks, &format!("{prefix}/fuzz"), EquationId::TransformedDirac, merged, tol_for);

        // controls
        let boost = LorentzParams::boost(3, 1.0).expect("valid plane");
        let flipped = flipped_generator_residuals(&boost, &rep)
            .map(|r| r.max_for(EquationId::CovarianceCondition))
            .unwrap_or(0.0);
        checks.large(
            format!("{prefix}/control/flipped-generator"),
            EquationId::CovarianceCondition,
            Backend::Float,
            flipped,
            COVARIANCE_CONTROL_THRESHOLD,
        );
        let off_plane = LorentzParams::boost(1, 1.0).expect("valid plane");
        let off = projector_commutators(&off_plane, &rep).map(|r| r.max_magnitude()).unwrap_or(0.0);
        checks.large(
            format!("{prefix}/control/boost-01-commutator"),
            EquationId::TransformCommutator,
            Backend::Float,
            off,
            COVARIANCE_CONTROL_THRESHOLD,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite, backend: BackendChoice) -> RunConfig {
        RunConfig {
            suite,
            backend,
            trials: 20,
            ..RunConfig::default()
        }
    }

    #[test]
    fn every_suite_passes_quickly() {
        for suite in Suite::EACH {
            let r = run(&quick(suite, BackendChoice::Both)).unwrap();
            let bad: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
            assert!(bad.is_empty(), "{suite:?}: {bad:#?}");
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn config_validation() {
        let with = |f: fn(&mut RunConfig)| {
            let mut c = RunConfig::default();
            f(&mut c);
            c
        };
        assert!(run(&with(|c| c.trials = 0)).is_err());
        assert!(with(|c| c.tol = 0.0).validate().is_err());
        assert!(with(|c| c.tol = f64::NAN).validate().is_err());
        assert!(with(|c| c.mass_range = [0.0, 1.0]).validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn residual_null_iff_exact_zero() {
        let r = run(&quick(Suite::Split, BackendChoice::Both)).unwrap();
        for c in &r.checks {
            if c.exact_zero {
                assert!(c.residual.is_none());
                assert_eq!(c.backend, Backend::Exact);
            }
        }
        assert!(r.checks.iter().any(|c| c.exact_zero));
    }

    #[test]
    fn parsing() {
        assert_eq!("weyl".parse::<Suite>(), Ok(Suite::Weyl));
        assert!("bogus".parse::<Suite>().is_err());
        assert_eq!("both".parse::<BackendChoice>(), Ok(BackendChoice::Both));
        assert_eq!("chiral".parse::<RepChoice>(), Ok(RepChoice::Spinor));
        assert_eq!("all".parse::<RepChoice>(), Ok(RepChoice::All));
        assert!("nope".parse::<RepChoice>().is_err());
    }

    #[test]
    fn empty_report_summary() {
        let r = Report::new(RunConfig::default(), vec![], 0);
        assert_eq!(r.summary, Summary::default());
        assert!(r.passed());
    }

    #[test]
    fn one_failure_counts() {
        let bad = CheckRecord {
            id: "x".into(),
            paper_eq: "dirac".into(),
            backend: Backend::Float,
            residual: Some(1.0),
            exact_zero: false,
            pass: false,
        };
        let r = Report::new(RunConfig::default(), vec![bad], 3);
        assert_eq!(r.summary, Summary { passed: 0, failed: 1 });
        assert!(!r.passed());
    }

    #[test]
    fn json_round_trip() {
        let r = run(&quick(Suite::Majorana, BackendChoice::Both)).unwrap();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn emit_to_file() {
        let r = Report::new(RunConfig::default(), vec![], 0);
        let path = std::env::temp_dir().join(format!("verify-emit-{}.json", std::process::id()));
        emit_report(&r, OutputFormat::Json, Some(&path)).unwrap();
        let back = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(back, r);
        assert!(emit_report(&r, OutputFormat::Json, Some(Path::new("/nonexistent/dir/r.json"))).is_err());
    }
}
