//! Command-line driver for the `fdq` engine: file formats, workflows and
//! reports.

pub mod format;
pub mod opexpr;
pub mod report;

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fdq::deform::{self, ModuleDeformation, StarProduct};
use fdq::ring::{Rational, Series};
use fdq::suite::{self, SuiteConfig};
use fdq::{DiffOp, Space};

use format::{deserialize, serialize, Config, Document, StarSource};
use report::Outcome;

/// Overrides the directory of relative output paths.
pub const OUTPUT_DIR_ENV: &str = "FDQ_OUTPUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Library(#[from] fdq::Error),
}

#[derive(Parser, Debug)]
#[command(name = "fdq", version, about = "Order-by-order deformation quantization of V×G → V")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Also write the machine-readable report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the Moyal star product of a constant Poisson tensor.
    Moyal {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Rows separated by `;`, entries by spaces, e.g. "0 1; -1 0".
        #[arg(long)]
        pi: String,
        #[arg(long)]
        order: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Construct the module deformation of a star product.
    Build {
        #[arg(long, conflicts_with = "star", required_unless_present = "star")]
        config: Option<PathBuf>,
        #[arg(long)]
        star: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check associativity of the star product and the module axioms.
    Verify {
        module: PathBuf,
        star: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Make a module deformation fibration preserving.
    Normalize {
        module: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Where to write the equivalence to the input.
        #[arg(long)]
        equivalence: Option<PathBuf>,
        /// Check `(p*a)•b = p*(a⋆b)` against this star product.
        #[arg(long)]
        star: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Find an equivalence between two module deformations.
    Equiv {
        from: PathBuf,
        to: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Quantize a vertical operator into the commutant, or check a series file.
    Commutant {
        module: PathBuf,
        #[arg(long, conflicts_with = "check", required_unless_present = "check")]
        op: Option<String>,
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Deformed product of two vertical operators.
    StarPrime {
        module: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Deformed commutator of two vertical vector fields.
    Gauge {
        module: PathBuf,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the seeded property battery of the homotopy constructions.
    HomotopyTest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-slot and value order bound of random cochains.
        #[arg(long, default_value_t = 2)]
        order: u32,
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
        /// Random chain elements per complex degree.
        #[arg(long, default_value_t = 40)]
        cases: usize,
        /// Random cochains for the Hochschild homotopy identity.
        #[arg(long, default_value_t = 50)]
        cochain_cases: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn write(p: &Path, contents: &str) -> Result<(), CliError> {
    let path = output_path(p);
    std::fs::write(&path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn read(p: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
    deserialize(&text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
}

fn read_star(p: &Path) -> Result<StarProduct, CliError> {
    match read(p)? {
        Document::Star(s) => Ok(s),
        other => Err(CliError::Input(format!("{}: expected a star file, found kind {}", p.display(), other.kind()))),
    }
}

fn read_module(p: &Path) -> Result<ModuleDeformation, CliError> {
    match read(p)? {
        Document::Module(m) => Ok(m),
        other => Err(CliError::Input(format!("{}: expected a module file, found kind {}", p.display(), other.kind()))),
    }
}

/// Parses `"0 1; -1 0"`.
pub fn parse_matrix(src: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    src.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|e| Rational::from_str(e).map_err(|_| CliError::Input(format!("bad matrix entry {e:?}"))))
                .collect()
        })
        .collect()
}

fn star_from_config(cfg: &Config, base: &Path) -> Result<StarProduct, CliError> {
    let space = Space::new(cfg.n, cfg.k)?;
    let star = match &cfg.star {
        StarSource::Moyal(pi) => deform::moyal(&space, pi, cfg.order)?,
        StarSource::File(f) => {
            let star = read_star(&base.join(f))?;
            if star.space() != &space || star.order() != cfg.order {
                return Err(CliError::Input(format!("star file {f} does not match the configured vars and lambda")));
            }
            star
        }
    };
    Ok(star)
}

fn series_lines(out: &mut Outcome, key: &str, s: &Series<DiffOp>) {
    let values: Vec<String> = s.coeffs().iter().map(DiffOp::to_string).collect();
    for (r, v) in values.iter().enumerate() {
        out.lines.push(format!("{key} order {r}: {v}"));
    }
    out.data.insert(key.to_string(), json!(values));
}

fn execute(cmd: Command) -> Result<(Outcome, Option<PathBuf>), CliError> {
    match cmd {
        Command::Moyal { n, k, pi, order, output, common } => {
            let space = Space::new(n, k)?;
            let star = deform::moyal(&space, &parse_matrix(&pi)?, order)?;
            let mut out = Outcome::new("moyal");
            out.add_report(&deform::verify_associativity(&star));
            write(&output, &serialize(&Document::Star(star)))?;
            Ok((out, common.json))
        }
        Command::Build { config, star, output, common } => {
            let star = match (config, star) {
                (Some(c), _) => match read(&c)? {
                    Document::Config(cfg) => star_from_config(&cfg, c.parent().unwrap_or(Path::new(".")))?,
                    other => return Err(CliError::Input(format!("expected a config file, found kind {}", other.kind()))),
                },
                (None, Some(s)) => read_star(&s)?,
                (None, None) => return Err(CliError::Input("build needs --config or --star".into())),
            };
            let rho = deform::build_module_deformation(&star).map_err(|e| match e {
                fdq::Error::NotClosed { order, detail } => {
                    CliError::Input(format!("invalid star product: obstruction at order {order} is not closed ({detail})"))
                }
                e => e.into(),
            })?;
            let mut out = Outcome::new("build");
            out.add_report(&deform::verify_module(&rho, &star)?);
            write(&output, &serialize(&Document::Module(rho)))?;
            Ok((out, common.json))
        }
        Command::Verify { module, star, common } => {
            let (rho, star) = (read_module(&module)?, read_star(&star)?);
            let mut out = Outcome::new("verify");
            out.add_report(&deform::verify_associativity(&star));
            out.add_report(&deform::verify_module(&rho, &star)?);
            Ok((out, common.json))
        }
        Command::Normalize { module, output, equivalence, star, common } => {
            let rho = read_module(&module)?;
            let (normalized, t) = deform::normalize_fibration(&rho)?;
            let mut out = Outcome::new("normalize");
            out.add_report(&deform::verify_equivalence(&t, &normalized, &rho)?);
            if let Some(s) = star {
                out.add_report(&deform::verify_fibration(&normalized, &read_star(&s)?)?);
            }
            write(&output, &serialize(&Document::Module(normalized)))?;
            if let Some(e) = equivalence {
                write(&e, &serialize(&Document::Equivalence(t)))?;
            }
            Ok((out, common.json))
        }
        Command::Equiv { from, to, output, common } => {
            let (a, b) = (read_module(&from)?, read_module(&to)?);
            let mut out = Outcome::new("equiv");
            match deform::find_equivalence(&a, &b) {
                Ok(t) => {
                    out.add_report(&deform::verify_equivalence(&t, &a, &b)?);
                    if let Some(o) = output {
                        write(&o, &serialize(&Document::Equivalence(t)))?;
                    }
                }
                Err(fdq::Error::NotClosed { order, detail }) => {
                    out.add_check("equivalence", false, &format!("obstruction at order {order} not closed: {detail}"));
                }
                Err(e) => return Err(e.into()),
            }
            Ok((out, common.json))
        }
        Command::Commutant { module, op, check, output, common } => {
            let rho = read_module(&module)?;
            let mut out = Outcome::new("commutant");
            let series = match (op, check) {
                (Some(op), _) => {
                    let a = opexpr::parse_op(rho.space(), &op)?;
                    if !a.is_vertical() {
                        return Err(CliError::Input(format!("{a} is not vertical")));
                    }
                    deform::quantize_vertical(&a, &rho)?
                }
                (None, Some(f)) => match read(&f)? {
                    Document::Series(_, s) => s,
                    other => return Err(CliError::Input(format!("expected a series file, found kind {}", other.kind()))),
                },
                (None, None) => return Err(CliError::Input("commutant needs --op or --check".into())),
            };
            out.add_report(&deform::commutant_report(&series, &rho)?);
            series_lines(&mut out, "element", &series);
            if let Some(o) = output {
                write(&o, &serialize(&Document::Series(rho.space().clone(), series)))?;
            }
            Ok((out, common.json))
        }
        Command::StarPrime { module, a, b, output, common } => {
            let rho = read_module(&module)?;
            let n = rho.order();
            let parse = |s: &str| -> Result<Series<DiffOp>, CliError> {
                let d = opexpr::parse_op(rho.space(), s)?;
                if !d.is_vertical() {
                    return Err(CliError::Input(format!("{d} is not vertical")));
                }
                Ok(Series::constant(d, n))
            };
            let product = deform::star_prime(&parse(&a)?, &parse(&b)?, &rho)?;
            let mut out = Outcome::new("star-prime");
            let order0 = product.coeff(0) == &parse(&a)?.coeff(0).compose(parse(&b)?.coeff(0));
            out.add_check("order-0 is composition", order0, "");
            series_lines(&mut out, "product", &product);
            if let Some(o) = output {
                write(&o, &serialize(&Document::Series(rho.space().clone(), product)))?;
            }
            Ok((out, common.json))
        }
        Command::Gauge { module, xi, eta, output, common } => {
            let rho = read_module(&module)?;
            let (x, e) = (opexpr::parse_op(rho.space(), &xi)?, opexpr::parse_op(rho.space(), &eta)?);
            let bracket = deform::gauge_commutator(&x, &e, &rho).map_err(|err| CliError::Input(err.to_string()))?;
            let mut out = Outcome::new("gauge");
            out.add_check("order-0 is the Lie bracket", bracket.coeff(0) == &x.commutator(&e), "");
            series_lines(&mut out, "commutator", &bracket);
            if let Some(o) = output {
                write(&o, &serialize(&Document::Series(rho.space().clone(), bracket)))?;
            }
            Ok((out, common.json))
        }
        Command::HomotopyTest { seed, order, degree_bound, cases, cochain_cases, n, k, common } => {
            let space: Arc<Space> = Space::new(n, k)?;
            let cfg = SuiteConfig { seed, cases, degree_bound, order };
            let mut out = Outcome::new("homotopy-test");
            for p in suite::run_battery(&space, &cfg, cochain_cases)? {
                out.add_property(&p);
            }
            Ok((out, common.json))
        }
    }
}

/// Runs one invocation and returns the process exit code: 0 when every
/// check passed, 1 on a verification failure, 2 on input errors.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match execute(cli.command) {
        Ok((outcome, json_path)) => {
            print!("{}", outcome.human());
            eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
            if let Some(p) = json_path {
                let text = serde_json::to_string_pretty(&outcome.to_json()).expect("report serializes") + "\n";
                if let Err(e) = write(&p, &text) {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
            if outcome.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

