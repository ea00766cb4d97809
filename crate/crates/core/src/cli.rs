//! Command-line surface: `demo`, `verify-sign`, `verify-lemmas`,
//! `sign-table`, `dump`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::{FunctorSpec, TruncatedAlgebra};
use crate::derived::{sign_factor, DerivedEngine};
use crate::error::Result;
use crate::harness::{
    demo, gen_random_module, gen_test_resolution, run_lemma_suite, run_sign_suite, GeneratorConfig,
    RunReport,
};
use crate::resolution::{lemma_b_resolution, split_resolution, ResolutionRegistry};

#[derive(Parser, Debug)]
#[command(
    name = "dimshift",
    about = "Exact checks of the dimension-shifting sign"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// M = k, F = Hom(k, -): print c^n and d^n for n = 1..N.
    Demo(Common),
    /// Randomized comparison of d^n with the predicted sign times c^n.
    VerifySign(Common),
    /// Randomized checks of the horseshoe square and the signed cylinder.
    VerifyLemmas(Common),
    /// Print the predicted sign for n = 1..N.
    SignTable(Common),
    /// Serialize a constructed object as JSON.
    Dump {
        #[arg(value_enum)]
        object: DumpObject,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DumpObject {
    /// A random module.
    Module,
    /// The registry resolution of a random module.
    Resolution,
    /// A padded, re-based resolution of a random module.
    TestResolution,
    /// F applied to the registry resolution of a random module.
    Complex,
    /// The signed cylinder resolution at index 0.
    Cylinder,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Md,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long = "max-dim", default_value_t = 8)]
    max_dim: usize,
    #[arg(long = "max-padding", default_value_t = 2)]
    max_padding: usize,
    #[arg(long, default_value_t = 4)]
    horizon: usize,
    /// Degree (or table length); `--max` is accepted as an alias.
    #[arg(long, alias = "max")]
    n: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Defaults to json when writing a file and md on stdout.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Common {
    fn config(&self) -> GeneratorConfig {
        GeneratorConfig {
            seed: self.seed,
            m: self.m,
            max_dim: self.max_dim,
            max_padding: self.max_padding,
            horizon: self.horizon,
            trials: self.trials,
        }
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(if self.output.is_some() {
            Format::Json
        } else {
            Format::Md
        })
    }

    fn emit(&self, json: &str, markdown: &str) -> Result<()> {
        let body = match self.format() {
            Format::Json => json,
            Format::Md => markdown,
        };
        match &self.output {
            Some(path) => std::fs::write(path, body)?,
            None => println!("{body}"),
        }
        Ok(())
    }

    fn emit_report(&self, report: &RunReport) -> Result<bool> {
        self.emit(&report.to_json()?, &report.to_markdown())?;
        if self.output.is_some() {
            eprintln!("aggregate: {}", if report.pass { "PASS" } else { "FAIL" });
        }
        for line in report.failures() {
            eprintln!("{line}");
        }
        Ok(report.pass)
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// process exit status: 0 iff the aggregate verdict is pass.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Demo(c) => {
            let report = demo(c.m, c.n.unwrap_or(6))?;
            c.emit_report(&report)
        }
        Command::VerifySign(c) => c.emit_report(&run_sign_suite(&c.config(), c.n)?),
        Command::VerifyLemmas(c) => c.emit_report(&run_lemma_suite(&c.config(), c.n)?),
        Command::SignTable(c) => {
            let signs: Vec<i8> = (1..=c.n.unwrap_or(8)).map(sign_factor).collect();
            let text: Vec<String> = signs.iter().map(|s| format!("{s:+}")).collect();
            let json = serde_json::to_string(&serde_json::json!({ "signs": signs }))?;
            c.emit(&json, &text.join(" "))?;
            Ok(true)
        }
        Command::Dump { object, common } => {
            let json = dump(object, &common)?;
            common.emit(&json, &json)?;
            Ok(true)
        }
    }
}

fn dump(object: DumpObject, c: &Common) -> Result<String> {
    let cfg = c.config();
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let module = gen_random_module(&cfg, &mut rng);
    let registry = ResolutionRegistry::new();
    let horizon = c.n.unwrap_or(cfg.horizon);
    let json = match object {
        DumpObject::Module => serde_json::to_string_pretty(&module)?,
        DumpObject::Resolution => {
            serde_json::to_string_pretty(&*registry.resolution(&module, horizon)?)?
        }
        DumpObject::TestResolution => {
            let (j, _) = gen_test_resolution(&module, &cfg, &registry, horizon, &mut rng)?;
            serde_json::to_string_pretty(&j)?
        }
        DumpObject::Complex => {
            let engine =
                DerivedEngine::new(FunctorSpec::new(TruncatedAlgebra::new(cfg.m)?.simple()));
            let r = registry.resolution(&module, horizon)?;
            serde_json::to_string_pretty(&engine.functor().apply_complex(r.complex())?.complex)?
        }
        DumpObject::Cylinder => {
            let j = registry.resolution(&module, horizon + 1)?;
            let s = split_resolution(&j, 1)?;
            let cyl = lemma_b_resolution(&j, &s, 0, horizon)?;
            serde_json::to_string_pretty(&cyl.resolution)?
        }
    };
    Ok(json)
}
