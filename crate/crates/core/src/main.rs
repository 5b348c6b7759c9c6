use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fcalg::atlas::Atlas;
use fcalg::description::load_description;
use fcalg::limits::Limits;
use fcalg::report::{self, Command, OmegaSet};
use fcalg::units::OmegaForm;
use fcalg::Error;

#[derive(Parser, Debug)]
#[command(
    name = "fcalg",
    version,
    about = "Exact computations in finite-dimensional algebras and their unit groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Atlas directory; giving it enables the atlas.
    #[arg(long, global = true)]
    atlas_dir: Option<PathBuf>,
    /// Store the report in the atlas (default directory ./atlas).
    #[arg(long, global = true)]
    store: bool,
    /// Recompute even when the atlas holds the report.
    #[arg(long, global = true)]
    force: bool,
    /// Largest algebra size scanned element by element.
    #[arg(long, global = true)]
    cap_enumeration: Option<u64>,
    /// Largest polynomial degree factored over Q.
    #[arg(long, global = true)]
    cap_factor_degree: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Record wall-clock time in the report (disables the atlas).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    OneMinusH,
    HMinusOne,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SetArg {
    Units,
    Center,
    Commutator,
    GroupBasis,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Load and validate a description.
    Validate { description: PathBuf },
    /// Jacobson radical.
    Radical { description: PathBuf },
    /// Center.
    Center { description: PathBuf },
    /// Local decomposition along the minimal polynomial of an element.
    Decompose { description: PathBuf, element: String },
    /// Minimal polynomial, nilpotency, unipotency and torsion of an element.
    Classify { description: PathBuf, element: String },
    /// Unit group with conjugacy classes.
    Units { description: PathBuf },
    /// FC data: centralizer indices, Delta U, nabla and torsion.
    Fc { description: PathBuf },
    /// Derived and lower central series with gated conclusions.
    Series { description: PathBuf },
    /// Count h in H with (1 - h)[x, y] = 0.
    Omega {
        description: PathBuf,
        #[arg(value_enum)]
        set: SetArg,
        x: String,
        y: String,
        #[arg(long, value_enum, default_value = "one-minus-h")]
        form: FormArg,
    },
    /// Distinct conjugates of a by shifts of g.
    Witnesses {
        description: PathBuf,
        a: String,
        g: String,
        k: usize,
        /// Comma-separated shifts used instead of the default order.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        shifts: Option<Vec<String>>,
    },
    /// Bounds on the FC-subalgebra over an infinite field.
    Sandwich {
        description: PathBuf,
        sample: Vec<String>,
    },
    /// List the atlas index.
    Atlas,
}

fn to_command(cmd: Cmd) -> Option<(PathBuf, Command)> {
    Some(match cmd {
        Cmd::Validate { description } => (description, Command::Validate),
        Cmd::Radical { description } => (description, Command::Radical),
        Cmd::Center { description } => (description, Command::Center),
        Cmd::Decompose { description, element } => (description, Command::Decompose { element }),
        Cmd::Classify { description, element } => (description, Command::Classify { element }),
        Cmd::Units { description } => (description, Command::Units),
        Cmd::Fc { description } => (description, Command::Fc),
        Cmd::Series { description } => (description, Command::Series),
        Cmd::Omega {
            description,
            set,
            x,
            y,
            form,
        } => {
            let set = match set {
                SetArg::Units => OmegaSet::Units,
                SetArg::Center => OmegaSet::Center,
                SetArg::Commutator => OmegaSet::Commutator,
                SetArg::GroupBasis => OmegaSet::GroupBasis,
            };
            let form = match form {
                FormArg::OneMinusH => OmegaForm::OneMinusH,
                FormArg::HMinusOne => OmegaForm::HMinusOne,
            };
            (description, Command::Omega { set, x, y, form })
        }
        Cmd::Witnesses {
            description,
            a,
            g,
            k,
            shifts,
        } => (
            description,
            Command::Witnesses {
                a,
                g,
                count: k,
                shifts,
            },
        ),
        Cmd::Sandwich { description, sample } => (description, Command::Sandwich { sample }),
        Cmd::Atlas => return None,
    })
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Error> {
    match out {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| Error::Storage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Storage(format!("cannot write standard output: {e}")))
        }
    }
}

fn fail(opts: &GlobalOpts, command: &str, digest: Option<&str>, err: Error) -> ExitCode {
    eprintln!("fcalg: {}: {err}", err.kind());
    let _ = emit(
        opts.out.as_deref(),
        &report::render(&report::error_envelope(command, digest, &err)),
    );
    ExitCode::from(report::exit_code(&err) as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.opts;
    if let Some(n) = opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
        {
            eprintln!("fcalg: cannot configure {n} threads: {e}");
        }
    }
    let mut limits = Limits::default();
    if let Some(c) = opts.cap_enumeration {
        limits.enumeration_cap = u128::from(c);
    }
    if let Some(c) = opts.cap_factor_degree {
        limits.factor_degree_cap = c;
    }
    let atlas_dir = opts
        .atlas_dir
        .clone()
        .or_else(|| opts.store.then(|| PathBuf::from("atlas")));

    let Some((path, cmd)) = to_command(cli.command) else {
        let dir = atlas_dir.unwrap_or_else(|| PathBuf::from("atlas"));
        let listing = Atlas::open(&dir).and_then(|a| a.index());
        return match listing {
            Ok(index) => {
                let doc = json!({
                    "$schema": report::REPORT_SCHEMA_ID,
                    "tool": report::TOOL,
                    "version": report::VERSION,
                    "command": "atlas",
                    "status": "ok",
                    "results": {
                        "entries": index.iter().map(|(k, v)| json!({ "key": k, "file": v })).collect::<Vec<_>>(),
                    },
                });
                match emit(opts.out.as_deref(), &report::render(&doc)) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => fail(&opts, "atlas", None, e),
                }
            }
            Err(e) => fail(&opts, "atlas", None, e),
        };
    };

    let start = Instant::now();
    let desc = match load_description(&path) {
        Ok(d) => d,
        Err(e) => return fail(&opts, cmd.name(), None, e),
    };
    let atlas = match atlas_dir.filter(|_| !opts.timing).map(Atlas::open).transpose() {
        Ok(a) => a,
        Err(e) => return fail(&opts, cmd.name(), Some(&desc.digest), e),
    };
    let key = Atlas::key(
        &desc.digest,
        cmd.name(),
        &cmd.args_json().to_string(),
        &report::limits_json(&limits).to_string(),
    );
    if let (Some(a), false) = (&atlas, opts.force) {
        match a.lookup(&key) {
            Ok(Some(bytes)) => {
                eprintln!("cached");
                return match emit(opts.out.as_deref(), &bytes) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => fail(&opts, cmd.name(), Some(&desc.digest), e),
                };
            }
            Ok(None) => {}
            Err(e) => return fail(&opts, cmd.name(), Some(&desc.digest), e),
        }
    }
    let outcome = match report::run_command(&desc, &cmd, &limits) {
        Ok(o) => o,
        Err(e) => return fail(&opts, cmd.name(), Some(&desc.digest), e),
    };
    let timing = opts.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
    let bytes = report::render(&report::envelope(&desc, &cmd, &limits, outcome, timing));
    if let Some(a) = &atlas {
        if let Err(e) = a.store(&key, &bytes) {
            return fail(&opts, cmd.name(), Some(&desc.digest), e);
        }
    }
    match emit(opts.out.as_deref(), &bytes) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&opts, cmd.name(), Some(&desc.digest), e),
    }
}
