use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gen_random_module, gen_random_ses, gen_test_resolution, GeneratorConfig};
use crate::category::{FunctorSpec, LambdaModule, TruncatedAlgebra};
use crate::choice::Choice;
use crate::derived::{
    compact, product_of_signs, sign_factor, DerivedEngine, LemmaAReport, LemmaBReport, SignReport,
    Verdict,
};
use crate::error::Result;
use crate::resolution::ResolutionRegistry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    Demo,
    VerifySign,
    VerifyLemmas,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignTrial {
    pub trial: usize,
    pub seed: u64,
    pub module_dim: usize,
    /// Dimension of `A` in `F = Hom(A, -)`.
    pub functor_source_dim: usize,
    pub pads: usize,
    #[serde(flatten)]
    pub report: SignReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaATrial {
    pub trial: usize,
    pub seed: u64,
    /// Dimensions of `A`, `C`, `B`.
    pub ses_dims: [usize; 3],
    pub functor_source_dim: usize,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<LemmaAReport>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaBTrial {
    pub trial: usize,
    pub seed: u64,
    pub module_dim: usize,
    pub functor_source_dim: usize,
    pub n: usize,
    pub steps: Vec<LemmaBReport>,
    pub sign_product: i8,
    pub sign: i8,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: SuiteKind,
    pub config: GeneratorConfig,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub trials: Vec<SignTrial>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lemma_a: Vec<LemmaATrial>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lemma_b: Vec<LemmaBTrial>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    fn finish(mut self, started: Instant) -> Self {
        self.pass = self.trials.iter().all(|t| t.report.passed())
            && self.lemma_a.iter().all(|t| t.pass)
            && self.lemma_b.iter().all(|t| t.pass);
        self.wall_time_ms = Some(started.elapsed().as_millis() as u64);
        self
    }

    /// The report with its timing field removed.
    pub fn without_timing(&self) -> RunReport {
        RunReport {
            wall_time_ms: None,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for t in self.trials.iter().filter(|t| !t.report.passed()) {
            let detail = match (&t.report.witness, &t.report.error) {
                (Some(w), _) => format!(
                    "entry ({}, {}): expected {}, got {}",
                    w.row, w.col, w.expected, w.actual
                ),
                (None, Some(e)) => e.clone(),
                (None, None) => "failed".into(),
            };
            out.push(format!(
                "trial {} (seed {}, n = {}): {detail}",
                t.trial, t.seed, t.report.n
            ));
        }
        for t in self.lemma_a.iter().filter(|t| !t.pass) {
            out.push(format!(
                "lemma A trial {} (seed {}): {}",
                t.trial,
                t.seed,
                t.error.clone().unwrap_or_else(|| format!("{:?}", t.report))
            ));
        }
        for t in self.lemma_b.iter().filter(|t| !t.pass) {
            out.push(format!(
                "lemma B trial {} (seed {}): {}",
                t.trial,
                t.seed,
                t.error.clone().unwrap_or_else(|| format!("{:?}", t.steps))
            ));
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let _ = writeln!(s, "# {:?} report\n", self.suite);
        let _ = writeln!(
            s,
            "seed {}, m {}, max dim {}, max padding {}, horizon {}, trials {}\n",
            c.seed, c.m, c.max_dim, c.max_padding, c.horizon, c.trials
        );
        if !self.trials.is_empty() {
            s.push_str("| trial | seed | n | sign | dim | c | d | verdict |\n");
            s.push_str("|---|---|---|---|---|---|---|---|\n");
            for t in &self.trials {
                let r = &t.report;
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {:+} | {} | {} | {} | {:?} |",
                    t.trial,
                    t.seed,
                    r.n,
                    r.sign,
                    r.dim,
                    compact(&r.c),
                    compact(&r.d),
                    r.verdict
                );
            }
            s.push('\n');
        }
        if !self.lemma_a.is_empty() {
            s.push_str("| lemma A trial | dims A, C, B | degree | commutes | choice independent | pass |\n");
            s.push_str("|---|---|---|---|---|---|\n");
            for t in &self.lemma_a {
                let (commutes, indep) = t
                    .report
                    .as_ref()
                    .map_or((false, false), |r| (r.commutes, r.choice_independent));
                let _ = writeln!(
                    s,
                    "| {} | {:?} | {} | {} | {} | {} |",
                    t.trial, t.ses_dims, t.degree, commutes, indep, t.pass
                );
            }
            s.push('\n');
        }
        if !self.lemma_b.is_empty() {
            s.push_str("| lemma B trial | n | dim | step signs | product | sign | pass |\n");
            s.push_str("|---|---|---|---|---|---|---|\n");
            for t in &self.lemma_b {
                let signs: Vec<String> = t
                    .steps
                    .iter()
                    .map(|st| {
                        st.observed_sign
                            .map_or("·".to_string(), |x| format!("{x:+}"))
                    })
                    .collect();
                let dim = t.steps.first().map_or(0, |st| st.dim);
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {:+} | {:+} | {} |",
                    t.trial,
                    t.n,
                    dim,
                    signs.join(" "),
                    t.sign_product,
                    t.sign,
                    t.pass
                );
            }
            s.push('\n');
        }
        let _ = writeln!(s, "aggregate: {}", if self.pass { "PASS" } else { "FAIL" });
        s
    }

    fn empty(suite: SuiteKind, config: &GeneratorConfig, n: Option<usize>) -> Self {
        RunReport {
            suite,
            config: config.clone(),
            n,
            trials: Vec::new(),
            lemma_a: Vec::new(),
            lemma_b: Vec::new(),
            pass: false,
            wall_time_ms: None,
        }
    }
}

/// `Hom(Λ/(x^j), -)` for a random `j < m`; `j = 1` is the socle functor.
fn random_functor(m: usize, rng: &mut impl Rng) -> FunctorSpec {
    FunctorSpec::new(LambdaModule::cyclic(m, rng.gen_range(1..m)))
}

/// The worked example: `M = k`, `F = Hom(k, -)`, the registry resolution,
/// degrees `1..=n`.
pub fn demo(m: usize, n: usize) -> Result<RunReport> {
    let started = Instant::now();
    let config = GeneratorConfig {
        m,
        trials: n,
        horizon: n + 1,
        max_padding: 0,
        max_dim: 1,
        seed: 0,
    };
    let alg = TruncatedAlgebra::new(m)?;
    let engine = DerivedEngine::new(FunctorSpec::new(alg.simple()));
    let k = alg.simple();
    let i = engine.chosen_resolution(&k, n)?;
    let mut report = RunReport::empty(SuiteKind::Demo, &config, Some(n));
    report.trials = (1..=n)
        .map(|deg| SignTrial {
            trial: deg - 1,
            seed: 0,
            module_dim: 1,
            functor_source_dim: 1,
            pads: 0,
            report: engine.verify_sign_lemma(&i, deg),
        })
        .collect();
    Ok(report.finish(started))
}

/// Randomized comparison of `d^n` with `sign_factor(n) c^n`. Degree `n`
/// cycles through `1..=horizon` unless fixed.
pub fn run_sign_suite(cfg: &GeneratorConfig, fixed_n: Option<usize>) -> Result<RunReport> {
    cfg.validate()?;
    let started = Instant::now();
    let registry = Arc::new(ResolutionRegistry::new());
    let seeds = cfg.trial_seeds();
    let trials: Vec<SignTrial> = seeds
        .par_iter()
        .enumerate()
        .map(|(t, &seed)| {
            let n = fixed_n.unwrap_or(1 + t % cfg.horizon);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let module = gen_random_module(cfg, &mut rng);
            let functor = random_functor(cfg.m, &mut rng);
            let source_dim = functor.source().dim();
            let engine = DerivedEngine::with_registry(functor, registry.clone());
            let (report, pads) = match gen_test_resolution(&module, cfg, &registry, n + 1, &mut rng)
            {
                Ok((j, pads)) => (
                    engine.verify_sign_lemma_with(&j, n, &mut Choice::seeded(seed)),
                    pads.len(),
                ),
                Err(e) => (failed_sign(n, e.to_string()), 0),
            };
            SignTrial {
                trial: t,
                seed,
                module_dim: module.dim(),
                functor_source_dim: source_dim,
                pads,
                report,
            }
        })
        .collect();
    let mut report = RunReport::empty(SuiteKind::VerifySign, cfg, fixed_n);
    report.trials = trials;
    Ok(report.finish(started))
}

fn failed_sign(n: usize, error: String) -> SignReport {
    SignReport {
        n,
        sign: sign_factor(n),
        dim: 0,
        c: crate::linalg::Matrix::zeros(0, 0),
        d: crate::linalg::Matrix::zeros(0, 0),
        c_invertible: false,
        d_invertible: false,
        verdict: Verdict::Fail,
        witness: None,
        error: Some(error),
    }
}

/// Lemma A over random short exact sequences and Lemma B over random
/// resolutions, `cfg.trials` instances each.
pub fn run_lemma_suite(cfg: &GeneratorConfig, fixed_n: Option<usize>) -> Result<RunReport> {
    cfg.validate()?;
    let started = Instant::now();
    let registry = Arc::new(ResolutionRegistry::new());
    let mut report = RunReport::empty(SuiteKind::VerifyLemmas, cfg, fixed_n);
    report.lemma_a = lemma_a_trials(cfg, &registry);
    report.lemma_b = lemma_b_trials(cfg, &registry, fixed_n.unwrap_or(cfg.horizon));
    Ok(report.finish(started))
}

/// One Lemma A instance per trial seed; the degree cycles through
/// `0..=horizon-2`.
pub fn lemma_a_trials(
    cfg: &GeneratorConfig,
    registry: &Arc<ResolutionRegistry>,
) -> Vec<LemmaATrial> {
    cfg.trial_seeds()
        .par_iter()
        .enumerate()
        .map(|(t, &seed)| lemma_a_trial(cfg, registry, t, seed))
        .collect()
}

/// One Lemma B instance per trial seed, each checking steps `0..n`.
pub fn lemma_b_trials(
    cfg: &GeneratorConfig,
    registry: &Arc<ResolutionRegistry>,
    n: usize,
) -> Vec<LemmaBTrial> {
    cfg.trial_seeds()
        .par_iter()
        .enumerate()
        .map(|(t, &seed)| lemma_b_trial(cfg, registry, n, t, seed))
        .collect()
}

fn lemma_a_trial(
    cfg: &GeneratorConfig,
    registry: &Arc<ResolutionRegistry>,
    t: usize,
    seed: u64,
) -> LemmaATrial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA);
    let degree = t % (cfg.horizon - 1);
    let mut trial = LemmaATrial {
        trial: t,
        seed,
        ses_dims: [0; 3],
        functor_source_dim: 0,
        degree,
        report: None,
        pass: false,
        error: None,
    };
    let outcome = (|| -> Result<LemmaAReport> {
        let ses = gen_random_ses(cfg, &mut rng)?;
        trial.ses_dims = [ses.sub().dim(), ses.middle().dim(), ses.quotient().dim()];
        let functor = random_functor(cfg.m, &mut rng);
        trial.functor_source_dim = functor.source().dim();
        let engine = DerivedEngine::with_registry(functor, registry.clone());
        let (ra, _) = gen_test_resolution(ses.sub(), cfg, registry, degree + 2, &mut rng)?;
        let (rb, _) = gen_test_resolution(ses.quotient(), cfg, registry, degree + 2, &mut rng)?;
        engine.verify_lemma_a(&ses, &ra, &rb, degree, &mut Choice::seeded(seed))
    })();
    match outcome {
        Ok(r) => {
            trial.pass = r.passed();
            trial.report = Some(r);
        }
        Err(e) => trial.error = Some(e.to_string()),
    }
    trial
}

fn lemma_b_trial(
    cfg: &GeneratorConfig,
    registry: &Arc<ResolutionRegistry>,
    n: usize,
    t: usize,
    seed: u64,
) -> LemmaBTrial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xB);
    let mut trial = LemmaBTrial {
        trial: t,
        seed,
        module_dim: 0,
        functor_source_dim: 0,
        n,
        steps: Vec::new(),
        sign_product: 0,
        sign: sign_factor(n),
        pass: false,
        error: None,
    };
    let outcome = (|| -> Result<Vec<LemmaBReport>> {
        let module = gen_random_module(cfg, &mut rng);
        trial.module_dim = module.dim();
        let functor = random_functor(cfg.m, &mut rng);
        trial.functor_source_dim = functor.source().dim();
        let engine = DerivedEngine::with_registry(functor, registry.clone());
        let (j, _) = gen_test_resolution(&module, cfg, registry, n + 2, &mut rng)?;
        (0..n).map(|p| engine.verify_lemma_b(&j, n, p)).collect()
    })();
    match outcome {
        Ok(steps) => {
            trial.sign_product = product_of_signs(&steps);
            trial.pass = steps.iter().all(LemmaBReport::passed) && trial.sign_product == trial.sign;
            trial.steps = steps;
        }
        Err(e) => trial.error = Some(e.to_string()),
    }
    trial
}
