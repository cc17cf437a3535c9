//! The `abeq` command line: word arithmetic, graph analysis, instance
//! handling, bounded search and the integer-equation compilers.
//!
//! [`run_command`] parses arguments and returns the exit status with
//! everything that would be written to stdout and stderr, so the binary
//! is a thin wrapper and tests can call the library directly.
//!
//! Exit status: `0` success, `1` a definitive negative answer or a failed
//! validation, `2` no solution within the search bound, `3` usage, input
//! or parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use abeq_core::compile::{
    compile_h10_free, compile_h10_raag, decode_solution, reduce_finite_ab, show_ints, witness_h10,
    CompiledReduction, Mode,
};
use abeq_core::h10::{H10Instance, IntAssignment};
use abeq_core::ir::{abelian_shadow, flatten, parse_instance_in, Assignment, Instance};
use abeq_core::search::{search_with, SearchOptions, Verdict};
use abeq_core::{
    abelianize, block_decomposition, centralizer_generators, cyclically_reduce, exponent_sum,
    weak_modules, Error, Presentation, DEFAULT_CAP,
};
use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "abeq",
    version,
    about = "Equations with abelianisation constraints in graph products of cyclic groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; only `text` is supported.
    #[arg(long, global = true, default_value = "text", value_parser = ["text"])]
    pub format: String,
}

#[derive(Debug, Args)]
pub struct WordArgs {
    /// Graph file with `vertex <name> [order]` and `edge <u> <v>` lines.
    pub graph: PathBuf,
    /// A word such as `a b^-1 c^2`.
    pub word: String,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Largest geodesic length of a candidate value.
    #[arg(long, default_value_t = 3)]
    pub bound: usize,
    /// Largest bound accepted.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of a word.
    Normalize(WordArgs),
    /// Print the geodesic length of a word.
    Length(WordArgs),
    /// Print the abelianisation of a word, or one exponent sum.
    Absum {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Print the weak modules of a graph, one per line.
    WeakModules { graph: PathBuf },
    /// Cyclically reduce a word and print its block decomposition.
    Decompose(WordArgs),
    /// Print generators of the centralizer of a word.
    Centralizer(WordArgs),
    /// Rewrite every equation into short form.
    Flatten { instance: PathBuf },
    /// Print the abelian shadow of every disjunct and whether it is solvable.
    Shadow { instance: PathBuf },
    /// Search the Cayley ball for a solution.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compile integer polynomial equations into an instance over a free group.
    CompileH10 {
        h10: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "pure-ab", value_parser = ["pure-ab", "native-expsum"])]
        mode: String,
        /// Where to write the JSON sidecar used by `witness`, `decode` and `verify`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Compile integer polynomial equations into an instance over a right-angled Artin group.
    CompileH10Raag {
        h10: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Replace `ab` constraints by coset constraints (finite abelianisation only).
    ReduceFiniteAb { instance: PathBuf },
    /// Build a solution of a compiled instance from an integer solution.
    Witness {
        instance: PathBuf,
        sidecar: PathBuf,
        /// Integer values in the order the source declares its variables, e.g. `2,3,6`.
        #[arg(long, allow_hyphen_values = true)]
        hint: String,
    },
    /// Read the integer solution back from an assignment file (`X = word` lines).
    Decode {
        instance: PathBuf,
        sidecar: PathBuf,
        assignment: PathBuf,
    },
    /// Recompile, build the hinted witness, evaluate, search and decode, checking every step.
    Verify {
        instance: PathBuf,
        sidecar: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        hint: Option<String>,
        /// Also search at this bound and decode the result.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Input, parse or usage problem.
    Usage(String),
    /// A check that ran and came out negative.
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotASolution
            | Error::NotAnIntegerSolution(_)
            | Error::DecodeInconsistency(_) => Failure::Invalid(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stderr: text,
                    ..Output::default()
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    ..Output::default()
                }
            };
        }
    };
    let mut out = Output::default();
    match run(&cli.command, &mut out) {
        Ok(code) => out.code = code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(out.stderr, "error: {msg}");
            out.code = EXIT_USAGE;
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(out.stdout, "FAIL: {msg}");
            out.code = EXIT_NO;
        }
    }
    out
}

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Run<()> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Run<Presentation> {
    Ok(Presentation::parse(&read(path)?)?)
}

/// Reads an instance; `group` paths are relative to the instance's directory.
fn load_instance(path: &Path) -> Run<Instance> {
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(parse_instance_in(&read(path)?, base)?)
}

fn load_h10(path: &Path) -> Run<H10Instance> {
    Ok(H10Instance::parse(&read(path)?)?)
}

fn load_reduction(instance: &Path, sidecar: &Path) -> Run<CompiledReduction> {
    Ok(CompiledReduction::from_json(
        load_instance(instance)?,
        &read(sidecar)?,
    )?)
}

fn parse_hint(cr: &CompiledReduction, text: &str) -> Run<IntAssignment> {
    let values: Vec<i64> = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("bad hint `{text}`: {e}")))?;
    let vars = &cr.source.variables;
    if values.len() != vars.len() {
        return Err(Failure::Usage(format!(
            "the hint has {} values but the source has {} variables ({})",
            values.len(),
            vars.len(),
            vars.join(",")
        )));
    }
    Ok(vars.iter().cloned().zip(values).collect())
}

fn parse_assignment(inst: &Instance, text: &str) -> Run<Assignment> {
    let p = &inst.presentation;
    let mut asg = Assignment::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (x, w) = line
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("line {}: expected `X = word`", i + 1)))?;
        let x = x.trim();
        if !inst.variables.iter().any(|v| v == x) {
            return Err(Error::UnknownVariable(x.to_string()).into());
        }
        asg.insert(x.to_string(), p.parse_word(w.trim())?);
    }
    Ok(asg)
}

fn show_assignment(out: &mut String, inst: &Instance, asg: &Assignment) {
    for x in &inst.variables {
        if let Some(w) = asg.get(x) {
            let _ = writeln!(out, "{x} = {}", w.display(&inst.presentation));
        }
    }
}

fn word(args: &WordArgs) -> Run<(Presentation, abeq_core::NormalWord)> {
    let p = load_graph(&args.graph)?;
    let w = p.parse_word(&args.word)?;
    Ok((p, w))
}

fn run(command: &Command, out: &mut Output) -> Run<i32> {
    let stdout = &mut out.stdout;
    match command {
        Command::Normalize(args) => {
            let (p, w) = word(args)?;
            let _ = writeln!(stdout, "{}", w.display(&p));
        }
        Command::Length(args) => {
            let (p, w) = word(args)?;
            let _ = writeln!(stdout, "{}", p.geodesic_length(&w));
        }
        Command::Absum { word: args, vertex } => {
            let (p, w) = word(args)?;
            match vertex {
                Some(v) => {
                    let _ = writeln!(stdout, "{}", exponent_sum(&p, &w, p.vertex(v)?)?);
                }
                None => {
                    let ab = abelianize(&p, &w);
                    for v in 0..p.len() {
                        let _ = writeln!(stdout, "{} {}", p.name(v), ab.coord(v));
                    }
                }
            }
        }
        Command::WeakModules { graph } => {
            let p = load_graph(graph)?;
            for m in weak_modules(&p) {
                let _ = writeln!(stdout, "{}", m.vertices.display(&p));
            }
        }
        Command::Decompose(args) => {
            let (p, w) = word(args)?;
            let (core, h) = cyclically_reduce(&p, &w);
            let _ = writeln!(stdout, "conjugator {}", h.display(&p));
            let _ = writeln!(stdout, "core {}", core.display(&p));
            for b in block_decomposition(&p, &core)?.blocks {
                let _ = writeln!(stdout, "block ({})^{}", b.root.display(&p), b.exponent);
            }
        }
        Command::Centralizer(args) => {
            let (p, w) = word(args)?;
            for g in centralizer_generators(&p, &w)?.generators(&p) {
                let _ = writeln!(stdout, "{}", g.display(&p));
            }
        }
        Command::Flatten { instance } => {
            stdout.push_str(&flatten(&load_instance(instance)?).to_text());
        }
        Command::Shadow { instance } => {
            let inst = load_instance(instance)?;
            let mut any_sat = false;
            for (i, sys) in abelian_shadow(&inst).iter().enumerate() {
                let sat = sys.solve().is_sat();
                any_sat |= sat;
                let _ = writeln!(
                    stdout,
                    "disjunct {i}: {}",
                    if sat { "SAT" } else { "UNSAT" }
                );
                for line in sys.to_string().lines() {
                    let _ = writeln!(stdout, "  {line}");
                }
            }
            return Ok(if any_sat { EXIT_OK } else { EXIT_NO });
        }
        Command::Solve { instance, search } => {
            let inst = load_instance(instance)?;
            let opts = SearchOptions {
                cap: search.cap,
                ..SearchOptions::new(search.bound)
            };
            let report = search_with(&inst, &opts)?;
            let _ = writeln!(out.stderr, "{}", report.stats_line());
            return Ok(match &report.verdict {
                Verdict::Witness(asg) => {
                    show_assignment(&mut out.stdout, &inst, asg);
                    EXIT_OK
                }
                Verdict::UnsatByShadow => {
                    out.stdout.push_str("UNSAT (abelian shadow)\n");
                    EXIT_NO
                }
                Verdict::NoSolutionUpToBound(b) => {
                    let _ = writeln!(out.stdout, "no solution up to bound {b}");
                    EXIT_UNKNOWN
                }
            });
        }
        Command::CompileH10 {
            h10,
            graph,
            mode,
            sidecar,
        } => {
            let mode: Mode = mode.parse()?;
            let cr = compile_h10_free(&load_h10(h10)?, &load_graph(graph)?, mode)?;
            emit(stdout, &cr, sidecar.as_deref())?;
        }
        Command::CompileH10Raag {
            h10,
            graph,
            sidecar,
        } => {
            let cr = compile_h10_raag(&load_h10(h10)?, &load_graph(graph)?)?;
            emit(stdout, &cr, sidecar.as_deref())?;
        }
        Command::ReduceFiniteAb { instance } => {
            stdout.push_str(&reduce_finite_ab(&load_instance(instance)?)?.to_text());
        }
        Command::Witness {
            instance,
            sidecar,
            hint,
        } => {
            let cr = load_reduction(instance, sidecar)?;
            let asg = witness_h10(&cr, &parse_hint(&cr, hint)?)?;
            if !cr.instance.is_satisfied_by(&asg)? {
                return Err(Failure::Invalid(
                    "the constructed assignment does not satisfy the instance".into(),
                ));
            }
            show_assignment(stdout, &cr.instance, &asg);
        }
        Command::Decode {
            instance,
            sidecar,
            assignment,
        } => {
            let cr = load_reduction(instance, sidecar)?;
            let asg = parse_assignment(&cr.instance, &read(assignment)?)?;
            let ints = decode_solution(&cr, &asg)?;
            let _ = writeln!(stdout, "{}", show_ints(&cr.source.variables, &ints));
        }
        Command::Verify {
            instance,
            sidecar,
            hint,
            bound,
            cap,
        } => return verify(out, instance, sidecar, hint.as_deref(), *bound, *cap),
    }
    Ok(EXIT_OK)
}

fn emit(stdout: &mut String, cr: &CompiledReduction, sidecar: Option<&Path>) -> Run<()> {
    stdout.push_str(&cr.instance.to_text());
    if let Some(path) = sidecar {
        write_file(path, &(cr.sidecar_json() + "\n"))?;
    }
    Ok(())
}

fn recompile(cr: &CompiledReduction) -> Run<CompiledReduction> {
    let p = &cr.instance.presentation;
    let again = match cr.target.as_str() {
        "free/pure-ab" => compile_h10_free(&cr.source, p, Mode::PureAb)?,
        "free/native-expsum" => compile_h10_free(&cr.source, p, Mode::NativeExpsum)?,
        "raag" => compile_h10_raag(&cr.source, p)?,
        other => {
            return Err(Failure::Usage(format!(
                "unknown target `{other}` in the sidecar"
            )))
        }
    };
    Ok(again)
}

fn verify(
    out: &mut Output,
    instance: &Path,
    sidecar: &Path,
    hint: Option<&str>,
    bound: Option<usize>,
    cap: usize,
) -> Run<i32> {
    let cr = load_reduction(instance, sidecar)?;
    let again = recompile(&cr)?;
    if again.instance != cr.instance {
        return Err(Failure::Invalid(
            "the instance differs from a fresh compilation of its source".into(),
        ));
    }
    if again.sidecar() != cr.sidecar() {
        return Err(Failure::Invalid(
            "the sidecar differs from a fresh compilation of its source".into(),
        ));
    }
    let vars = &cr.source.variables;
    let mut code = EXIT_OK;
    if let Some(hint) = hint {
        let ints = parse_hint(&cr, hint)?;
        let asg = witness_h10(&cr, &ints)?;
        if !cr.instance.is_satisfied_by(&asg)? {
            return Err(Failure::Invalid(
                "the witness built from the hint does not satisfy the instance".into(),
            ));
        }
        let decoded = decode_solution(&cr, &asg)?;
        if decoded != ints {
            return Err(Failure::Invalid(format!(
                "the witness decodes to {} instead of {}",
                show_ints(vars, &decoded),
                show_ints(vars, &ints)
            )));
        }
        let _ = writeln!(out.stdout, "{}", show_ints(vars, &decoded));
    }
    if let Some(bound) = bound {
        let opts = SearchOptions {
            cap,
            ..SearchOptions::new(bound)
        };
        let report = search_with(&cr.instance, &opts)?;
        let _ = writeln!(out.stderr, "{}", report.stats_line());
        match &report.verdict {
            Verdict::Witness(asg) => {
                let decoded = decode_solution(&cr, asg)?;
                let _ = writeln!(out.stdout, "search {}", show_ints(vars, &decoded));
            }
            Verdict::UnsatByShadow if hint.is_some() => {
                return Err(Failure::Invalid(
                    "the abelian shadow refutes an instance with a known solution".into(),
                ));
            }
            Verdict::UnsatByShadow => {
                out.stdout.push_str("search UNSAT (abelian shadow)\n");
                code = EXIT_NO;
            }
            Verdict::NoSolutionUpToBound(b) => {
                let _ = writeln!(out.stdout, "search: no solution up to bound {b}");
                if hint.is_none() {
                    code = EXIT_UNKNOWN;
                }
            }
        }
    }
    out.stdout.push_str("OK\n");
    Ok(code)
}
