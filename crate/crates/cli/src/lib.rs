//! Command-line driver: `check`, `norm`, `validate` and `emit`.
//!
//! Exit codes: 0 success, 1 diagnostics or counterexamples, 2 I/O failure,
//! 3 validation left pairs undecided but found no counterexample.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rdt_core::builder::{normalize_with, ArgOrder, Mutation};
use rdt_core::emit;
use rdt_core::hashcons::HashConsTable;
use rdt_core::oracle::{validate_family, ClosureBudget, ValidateOptions};
use rdt_core::syntax::{parse_definition, Definition, Diagnostic};
use rdt_core::theory::CtorClass;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "rdt", version, about = "Normalizing constructors for data types with equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and classify a definition file.
    Check { file: PathBuf },
    /// Print the normal form of a ground term.
    Norm {
        file: PathBuf,
        /// Term to normalize.
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// Build the result with maximal sharing and print node/edge counts.
        #[arg(long)]
        sharing: bool,
    },
    /// Check the compiled family on every term up to a size.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Step budget for each closure search.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, value_enum, hide = true)]
        mutate: Option<MutateArg>,
    },
    /// Print the construction functions.
    Emit {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Report)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Report,
    Code,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MutateArg {
    InsertSort,
    InverseDelete,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAIL } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Check { file } => cmd_check(&file, out, err),
        Command::Norm { file, expr, sharing } => cmd_norm(&file, &expr, sharing, out, err),
        Command::Validate {
            file,
            size,
            budget,
            mutate,
        } => {
            let mutation = match mutate {
                None => Mutation::None,
                Some(MutateArg::InsertSort) => Mutation::UnsortedInsert,
                Some(MutateArg::InverseDelete) => Mutation::NoInverseDelete,
            };
            cmd_validate(&file, size, budget, mutation, out, err)
        }
        Command::Emit { file, format } => cmd_emit(&file, format, out, err),
    }
}

fn report_diag(err: &mut dyn Write, origin: &str, d: &Diagnostic) {
    let _ = writeln!(err, "{origin}:{d}");
}

/// Reads and parses a definition file, or returns the exit code to use.
fn load(file: &Path, err: &mut dyn Write) -> Result<Definition, i32> {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "{}: error: {e}", file.display());
            return Err(EXIT_IO);
        }
    };
    parse_definition(&text).map_err(|d| {
        report_diag(err, &file.display().to_string(), &d);
        EXIT_FAIL
    })
}

fn cmd_check(file: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let def = match load(file, err) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let sig = &def.sig;
    let cl = &def.classification;
    let _ = writeln!(out, "type {}: {} constructors", sig.sort_name(), sig.len());
    for c in sig.ctor_ids() {
        let name = sig.ctor_name(c);
        let line = match cl.class(c) {
            CtorClass::Free => continue,
            CtorClass::Type1 => {
                let n = cl.type1_rules().iter().filter(|r| r.head() == c).count();
                format!("{name}: rules ({n})")
            }
            CtorClass::Type2(i) => format!("{name}: {}", cl.theories()[i].variant.name()),
            CtorClass::InverseOf(i) => {
                format!("{name}: inverse of {}", sig.ctor_name(cl.theories()[i].ctor))
            }
        };
        let _ = writeln!(out, "{line}");
    }
    EXIT_OK
}

fn cmd_norm(file: &Path, expr: &str, sharing: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let def = match load(file, err) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let term = match def.parse_term(expr) {
        Ok(t) => t,
        Err(d) => {
            report_diag(err, "<expr>", &d);
            return EXIT_FAIL;
        }
    };
    let fam = match def.family() {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "{}: error: {e}", file.display());
            return EXIT_FAIL;
        }
    };
    let mut table = HashConsTable::new(&def.sig);
    let result = normalize_with(&mut table, &term, &fam, ArgOrder::LeftToRight).and_then(|id| table.to_term(id));
    match result {
        Ok(nf) => {
            let _ = writeln!(out, "{}", def.sig.show(&nf));
            if sharing {
                // counts for the result alone, not for intermediate values
                let mut shared = HashConsTable::new(&def.sig);
                let _ = shared.from_term(&nf);
                let stats = shared.stats();
                let _ = writeln!(out, "sharing: {} nodes, {} edges", stats.nodes, stats.edges);
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "<expr>: error: {e}");
            EXIT_FAIL
        }
    }
}

fn cmd_validate(
    file: &Path,
    size: usize,
    budget: usize,
    mutation: Mutation,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let def = match load(file, err) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let fam = match def.family() {
        Ok(f) => f.with_mutation(mutation),
        Err(e) => {
            let _ = writeln!(err, "{}: error: {e}", file.display());
            return EXIT_FAIL;
        }
    };
    let opts = ValidateOptions {
        max_size: size,
        budget: ClosureBudget::steps(budget),
    };
    let report = match validate_family(&fam, &def.spec, opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "{}: error: {e}", file.display());
            return EXIT_FAIL;
        }
    };
    let _ = write!(out, "{}", report.summary());
    for line in report.machine_lines(&def.sig) {
        let _ = writeln!(out, "{line}");
    }
    if report.has_counterexamples() {
        EXIT_FAIL
    } else if !report.unknown.is_empty() {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    }
}

fn cmd_emit(file: &Path, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let def = match load(file, err) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let fam = match def.family() {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "{}: error: {e}", file.display());
            return EXIT_FAIL;
        }
    };
    let text = match format {
        Format::Report => emit::report(&fam),
        Format::Code => emit::rust_code(&fam),
    };
    let _ = write!(out, "{text}");
    EXIT_OK
}
