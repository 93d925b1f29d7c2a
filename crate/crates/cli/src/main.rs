mod checks;
mod config;

use checks::{Check, CheckReport, Status};
use clap::{Args, Parser, Subcommand};
use config::CheckConfig;
use hyperleg_core::exactcore::parse_rational;
use hyperleg_core::rug::Rational;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "hyperleg", version, about = "Verification suite for squared-Legendre generating functions and their genus-2 periods")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Working precision in bits
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Series order for truncated identities
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Numeric tolerance exponent: tolerance is 2^EXP
    #[arg(long, global = true, allow_hyphen_values = true)]
    tolerance_exp: Option<i32>,
    #[arg(long, global = true)]
    orbit_bound: Option<usize>,
    #[arg(long, global = true)]
    search_depth: Option<usize>,
    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Integer seed for sampled fibres; for braid-orbit, a tuple name
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Write the report stream here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key = value file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("expected a rational p/q, got {s:?}"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generating function against w·I₊·I₋ at a point
    VerifyTheoremMain {
        #[arg(long, value_parser = rational)]
        y: Option<Rational>,
        #[arg(long, value_parser = rational)]
        z: Option<Rational>,
        #[arg(long, default_value_t = 200)]
        terms: usize,
    },
    /// Integrality and divisibility of u_n
    VerifyTh1 {
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
    /// Squared-Legendre 2F1 identity
    VerifyWan,
    /// Appell F4 product identity
    VerifyF4 {
        #[arg(long, value_parser = rational, default_value = "1/4")]
        a: Rational,
        #[arg(long, value_parser = rational, default_value = "3/4")]
        b: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        c1: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        c2: Rational,
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Rank-4 PDE system
    VerifyPde,
    /// Parametrization identity and the Z series
    VerifyParametrization,
    /// Hadamard integral against the u_n series
    VerifyHadamardIntegral {
        #[arg(long, value_parser = rational, default_value = "1/3")]
        t: Rational,
        #[arg(long, value_parser = rational, default_value = "1/100")]
        x: Rational,
    },
    /// Humbert Δ = 8 condition on family fibres and on random sextics
    VerifyHumbert {
        #[arg(long, value_parser = rational)]
        u: Option<Rational>,
        #[arg(long, value_parser = rational)]
        x: Option<Rational>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Period matrix, τ relation and Picard–Fuchs residuals
    VerifyPeriods {
        #[arg(long, value_parser = rational, default_value = "1/2")]
        u: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        x: Rational,
    },
    /// Integer monodromy identities and the real-multiplication splitting
    VerifyMonodromyExact,
    /// Numeric continuation against the exact monodromy tuple
    VerifyMonodromyNumeric {
        #[arg(long, value_parser = rational, default_value = "1/2")]
        u: Rational,
    },
    /// Word search for the density witnesses
    VerifyDensity,
    /// Braid orbit of a named seed tuple: zeta8 (default), zeta5, heun or a-tuple
    BraidOrbit {
        /// Alias for --orbit-bound
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Heun tuple orbit exceeds the bound
    VerifyHeunGrowth {
        #[arg(long)]
        bound: Option<usize>,
    },
    /// L₅ recursion and local solution
    VerifyL5 {
        #[arg(long, default_value_t = 100)]
        n_max: usize,
    },
    /// Teichmüller locus integral and its 2F1 form
    VerifyTeich {
        #[arg(long, value_parser = rational, default_value = "3")]
        t: Rational,
    },
    /// Cube theorem at rational y
    VerifyCube {
        #[arg(long, value_parser = rational)]
        y: Vec<Rational>,
    },
    /// Every check at default parameters
    All,
}

fn build_config(g: &GlobalArgs) -> Result<CheckConfig, String> {
    let mut cfg = CheckConfig::default();
    if let Some(p) = &g.config {
        cfg.apply_file(p)?;
    }
    if let Some(v) = g.precision_bits {
        cfg.precision_bits = v;
    }
    if g.order.is_some() {
        cfg.order = g.order;
    }
    if let Some(v) = g.tolerance_exp {
        cfg.tolerance_exp = v;
    }
    if let Some(v) = g.orbit_bound {
        cfg.orbit_bound = v;
    }
    if let Some(v) = g.search_depth {
        cfg.search_depth = v;
    }
    if let Some(v) = g.jobs {
        cfg.jobs = v;
    }
    if let Some(v) = g.seed.as_deref().and_then(|s| s.parse().ok()) {
        cfg.seed = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn checks_for(cmd: Command, seed: Option<String>, cfg: &mut CheckConfig) -> Result<Vec<Check>, String> {
    let defaults = Check::all();
    let pick = |id: &str| defaults.iter().find(|c| c.id() == id).cloned().expect("registered");
    Ok(match cmd {
        Command::VerifyTheoremMain { y, z, terms } => match (y, z) {
            (Some(y), Some(z)) => vec![Check::TheoremMain { points: vec![(y, z)], terms }],
            (None, None) => match pick("verify-theorem-main") {
                Check::TheoremMain { points, .. } => vec![Check::TheoremMain { points, terms }],
                _ => unreachable!(),
            },
            _ => return Err("--y and --z must be given together".into()),
        },
        Command::VerifyTh1 { n_max } => vec![Check::Th1 { n_max }],
        Command::VerifyWan => vec![Check::Wan],
        Command::VerifyF4 { a, b, c1, c2, degree } => vec![Check::F4 { params: [a, b, c1, c2], degree }],
        Command::VerifyPde => vec![Check::Pde],
        Command::VerifyParametrization => vec![Check::Parametrization],
        Command::VerifyHadamardIntegral { t, x } => vec![Check::HadamardIntegral { t, x }],
        Command::VerifyHumbert { u, x, samples } => match (u, x) {
            (Some(u), Some(x)) => vec![Check::Humbert { fibres: vec![(u, x)], samples }],
            (None, None) => match pick("verify-humbert") {
                Check::Humbert { fibres, .. } => vec![Check::Humbert { fibres, samples }],
                _ => unreachable!(),
            },
            _ => return Err("--u and --x must be given together".into()),
        },
        Command::VerifyPeriods { u, x } => vec![Check::Periods { u, x }],
        Command::VerifyMonodromyExact => vec![Check::MonodromyExact],
        Command::VerifyMonodromyNumeric { u } => vec![Check::MonodromyNumeric { u }],
        Command::VerifyDensity => vec![Check::Density],
        Command::BraidOrbit { bound } => {
            if let Some(b) = bound {
                cfg.orbit_bound = b;
            }
            let name = seed.filter(|s| s.parse::<u64>().is_err()).unwrap_or_else(|| "zeta8".into());
            vec![Check::BraidOrbit { seed: name }]
        }
        Command::VerifyHeunGrowth { bound } => vec![Check::HeunGrowth { bound }],
        Command::VerifyL5 { n_max } => vec![Check::L5 { n_max }],
        Command::VerifyTeich { t } => vec![Check::Teich { t }],
        Command::VerifyCube { y } => {
            if y.is_empty() {
                vec![pick("verify-cube")]
            } else {
                vec![Check::Cube { ys: y }]
            }
        }
        Command::All => defaults,
    })
}

fn exit_code(reports: &[CheckReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        2
    } else {
        0
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.global.out.clone();
    let mut cfg = match build_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("hyperleg: invalid config: {e}");
            return ExitCode::from(2);
        }
    };
    let seed = cli.global.seed.clone();
    if let Some(s) = seed.as_deref().filter(|s| s.parse::<u64>().is_err() && !matches!(cli.command, Command::BraidOrbit { .. })) {
        eprintln!("hyperleg: invalid config: --seed {s:?} is not an integer");
        return ExitCode::from(2);
    }
    let checks = match checks_for(cli.command, seed, &mut cfg) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("hyperleg: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build_global() {
        eprintln!("hyperleg: thread pool: {e}");
    }
    let mut sink: Box<dyn Write> = match &out_path {
        Some(p) => match std::fs::File::create(p) {
            Ok(f) => Box::new(std::io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("hyperleg: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(std::io::stdout().lock()),
    };
    let mut reports = Vec::new();
    for c in &checks {
        let rep = c.run(&cfg);
        let line = serde_json::to_string(&rep).expect("report serializes");
        if writeln!(sink, "{line}").and_then(|_| sink.flush()).is_err() {
            eprintln!("hyperleg: cannot write report");
            return ExitCode::from(2);
        }
        reports.push(rep);
    }
    ExitCode::from(exit_code(&reports))
}
