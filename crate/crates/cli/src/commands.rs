//! Command-line front end. Every command ends its standard output with one
//! `RESULT: key=value ...` line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use stairvpa::priority::stair_index;
use stairvpa::stair::{analyze, Removability, StairError, SuMove, DEFAULT_CAP};
use stairvpa::summaries::{step_graph, wm_summaries, StepEdge};
use stairvpa::{
    accepts, classify_word, parse_lasso, run_word, AcceptanceKind, Configuration, Dvpa, LassoError,
    WordClass,
};

use crate::diff::{diff, DiffError};
use crate::dot::step_graph_dot;
use crate::format::{parse, serialize, FormatError};

#[derive(Debug, Parser)]
#[command(
    name = "stairvpa",
    version,
    about = "Deterministic visibly pushdown automata on infinite words"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate an automaton file.
    Validate { file: PathBuf },
    /// Decide acceptance of the lasso `u ; v`.
    Run {
        file: PathBuf,
        #[arg(long)]
        lasso: String,
    },
    /// Classify a finite word and run it from the initial configuration.
    Classify {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Print the step graph.
    Graph {
        file: PathBuf,
        /// Graphviz output instead of a plain listing.
        #[arg(long)]
        dot: bool,
        /// Write the graph here instead of standard output.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Minimal number of priorities of a stair automaton.
    StairIndex {
        file: PathBuf,
        /// Write the relabeled stair-parity automaton here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Decide whether a stair-Büchi automaton has an equivalent parity automaton.
    CheckStairRemovable {
        file: PathBuf,
        /// Print the replayed forbidden pattern.
        #[arg(long)]
        witness: bool,
    },
    /// Build the equivalent parity automaton.
    RemoveStair {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Bound on product states and (state, top) pairs.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run the reduction from strictly unbounded words over `c`, `r`.
    ReduceSu {
        file: PathBuf,
        /// Take the pattern found by check-stair-removable.
        #[arg(long, required = true)]
        witness_from_check: bool,
        /// Moves as `c` and `r` characters; whitespace is ignored.
        #[arg(long)]
        input: String,
    },
    /// Compare two automata on seeded and exhaustive lassos.
    Diff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-len", default_value_t = 8)]
        max_len: usize,
    },
}

/// Failures, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Semantic(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) => 2,
            CliError::Semantic(_) => 3,
            CliError::Cap(_) => 4,
        }
    }

    fn key(&self) -> &'static str {
        match self {
            CliError::Syntax(_) => "syntax",
            CliError::Semantic(_) => "semantic",
            CliError::Cap(_) => "cap",
        }
    }
}

impl From<StairError> for CliError {
    fn from(e: StairError) -> Self {
        match e {
            StairError::Cap(_) => CliError::Cap(e.to_string()),
            _ => CliError::Semantic(e.to_string()),
        }
    }
}

impl From<LassoError> for CliError {
    fn from(e: LassoError) -> Self {
        match e {
            LassoError::MissingSeparator | LassoError::EmptyPeriod => {
                CliError::Syntax(e.to_string())
            }
            LassoError::UnknownSymbol(_) => CliError::Semantic(e.to_string()),
            LassoError::BoundExceeded(_) => CliError::Cap(e.to_string()),
        }
    }
}

/// Output of one command.
#[derive(Debug, Default)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs `command`; never panics on bad input.
pub fn execute(command: &Command) -> Report {
    let mut out = String::new();
    match dispatch(command, &mut out) {
        Ok(result) => {
            out.push_str("RESULT: ");
            out.push_str(&result);
            out.push('\n');
            Report {
                stdout: out,
                stderr: String::new(),
                code: 0,
            }
        }
        Err(e) => {
            let _ = writeln!(out, "RESULT: error={}", e.key());
            Report {
                stdout: out,
                stderr: format!("error: {e}\n"),
                code: e.exit_code(),
            }
        }
    }
}

fn load(path: &Path) -> Result<Dvpa, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Syntax(format!("{}: {e}", path.display())))?;
    match parse(&text) {
        Ok(v) => Ok(v.dvpa),
        Err(FormatError::Syntax(e)) => Err(CliError::Syntax(format!("{}: {e}", path.display()))),
        Err(FormatError::Semantic(e)) => {
            Err(CliError::Semantic(format!("{}: {e}", path.display())))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Semantic(format!("{}: {e}", path.display())))
}

fn require(dvpa: &Dvpa, ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Semantic(format!(
            "this command needs {what} acceptance, the automaton uses {}",
            dvpa.kind()
        )))
    }
}

fn dispatch(command: &Command, out: &mut String) -> Result<String, CliError> {
    match command {
        Command::Validate { file } => validate_cmd(file, out),
        Command::Run { file, lasso } => run_cmd(file, lasso, out),
        Command::Classify { file, word } => classify_cmd(file, word, out),
        Command::Graph { file, dot, output } => graph_cmd(file, *dot, output.as_deref(), out),
        Command::StairIndex { file, output } => stair_index_cmd(file, output.as_deref(), out),
        Command::CheckStairRemovable { file, witness } => check_cmd(file, *witness, out),
        Command::RemoveStair { file, output, cap } => remove_cmd(file, output, *cap, out),
        Command::ReduceSu { file, input, .. } => reduce_cmd(file, input, out),
        Command::Diff {
            a,
            b,
            samples,
            seed,
            max_len,
        } => diff_cmd(a, b, *samples, *seed, *max_len, out),
    }
}

fn validate_cmd(file: &Path, out: &mut String) -> Result<String, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Syntax(format!("{}: {e}", file.display())))?;
    let v = parse(&text).map_err(|e| match e {
        FormatError::Syntax(e) => CliError::Syntax(e.to_string()),
        FormatError::Semantic(e) => CliError::Semantic(e.to_string()),
    })?;
    let a = &v.dvpa;
    let _ = writeln!(
        out,
        "valid {} automaton: {} states, {} symbols, {} stack symbols",
        a.kind(),
        a.state_count(),
        a.alphabet().len(),
        a.stack_count()
    );
    for w in &v.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    Ok(format!(
        "valid=true kind={} states={} warnings={}",
        a.kind(),
        a.state_count(),
        v.warnings.len()
    ))
}

fn run_cmd(file: &Path, lasso: &str, out: &mut String) -> Result<String, CliError> {
    let a = load(file)?;
    let l = parse_lasso(a.alphabet(), lasso)?;
    let v = accepts(&a, &l)?;
    let _ = writeln!(out, "lasso: {}", l.format(a.alphabet()));
    if let Some(pos) = v.death_pos {
        let _ = writeln!(out, "run dies reading symbol {pos}");
    }
    if let Some((b1, b2)) = v.boundary_pair {
        let _ = writeln!(out, "period boundaries {b1} and {b2} coincide");
        let prios: Vec<String> = v.recurring_priorities.iter().map(u32::to_string).collect();
        let on = if a.kind().is_stair() { " on steps" } else { "" };
        let _ = writeln!(out, "recurring priorities{on}: {{{}}}", prios.join(", "));
    }
    Ok(v.to_string())
}

fn classify_cmd(file: &Path, word: &str, out: &mut String) -> Result<String, CliError> {
    let a = load(file)?;
    let w = a
        .alphabet()
        .parse_word(word)
        .map_err(|e| CliError::Semantic(format!("unknown symbol {:?}", e.0)))?;
    let class = match classify_word(a.alphabet(), &w) {
        WordClass::WellMatched => "class=well-matched".to_string(),
        WordClass::MinimallyWellMatched => "class=minimally-well-matched".to_string(),
        WordClass::Pending(k) => format!("class=pending open={k}"),
        WordClass::Illegal(pos) => format!("class=illegal at={pos}"),
    };
    let t = run_word(&a, &Configuration::empty(a.initial()), &w);
    let steps: Vec<String> = t
        .step_positions()
        .map(|i| format!("{}@{i}", a.state_name(t.state(i))))
        .collect();
    let _ = writeln!(out, "steps: {}", steps.join(" "));
    let run = match t.death() {
        Some(pos) => format!("alive=false died_at={pos}"),
        None => {
            let last = t.last();
            let stack: Vec<&str> = last.stack_top_first().map(|z| a.stack_name(z)).collect();
            let _ = writeln!(
                out,
                "final configuration: {} [{}]",
                a.state_name(last.state),
                stack.join(" ")
            );
            format!(
                "alive=true state={} height={} f_on_steps={}",
                a.state_name(last.state),
                last.height(),
                t.f_on_step_count()
            )
        }
    };
    Ok(format!("{class} {run}"))
}

fn graph_cmd(
    file: &Path,
    dot: bool,
    output: Option<&Path>,
    out: &mut String,
) -> Result<String, CliError> {
    let a = load(file)?;
    let wm = wm_summaries(&a);
    let g = step_graph(&a, &wm);
    let text = if dot {
        step_graph_dot(&a, &g)
    } else {
        let mut s = String::new();
        for &q in &g.vertices {
            let _ = writeln!(s, "vertex {} priority {}", a.state_name(q), g.priority[&q]);
        }
        for (&(q, p), &e) in &g.edges {
            let kind = match e {
                StepEdge::Internal(_) => "internal",
                StepEdge::Matched { .. } => "matched",
                StepEdge::PendingCall(_) => "pending-call",
            };
            let word = a.alphabet().format_word(&g.edge_word(e, &wm));
            let _ = writeln!(
                s,
                "edge {} -> {} {kind}: {word}",
                a.state_name(q),
                a.state_name(p)
            );
        }
        s
    };
    match output {
        Some(path) => write_file(path, &text)?,
        None => out.push_str(&text),
    }
    Ok(format!(
        "vertices={} edges={}",
        g.vertices.len(),
        g.edges.len()
    ))
}

fn stair_index_cmd(
    file: &Path,
    output: Option<&Path>,
    out: &mut String,
) -> Result<String, CliError> {
    let a = load(file)?;
    require(&a, a.kind().is_stair(), "stair-buchi or stair-parity")?;
    let idx = stair_index(&a).map_err(|e| CliError::Semantic(e.to_string()))?;
    for q in a.states() {
        let vertex = if idx.graph.vertices.contains(&q) {
            ""
        } else {
            " (not on a step)"
        };
        let _ = writeln!(
            out,
            "{}: {} -> {}{vertex}",
            a.state_name(q),
            a.priority(q),
            idx.relabeled.priority(q)
        );
    }
    if let Some(path) = output {
        write_file(path, &serialize(&idx.relabeled))?;
    }
    Ok(format!(
        "index={} vertices={}",
        idx.count,
        idx.graph.vertices.len()
    ))
}

fn check_cmd(file: &Path, witness: bool, out: &mut String) -> Result<String, CliError> {
    let a = load(file)?;
    require(&a, a.kind() == AcceptanceKind::StairBuchi, "stair-buchi")?;
    let analysis = analyze(&a)?;
    match analysis.check(&a)? {
        Removability::Removable => {
            let _ = writeln!(
                out,
                "no forbidden pattern; an equivalent parity automaton exists"
            );
            Ok("removable=true".into())
        }
        Removability::Pattern(w) => {
            let pair = format!("{},{}", a.state_name(w.q), a.state_name(w.q1));
            let _ = writeln!(
                out,
                "forbidden pattern at ({pair}); no equivalent parity automaton"
            );
            if witness {
                let _ = writeln!(out, "{}", w.display(&a));
                let _ = writeln!(out, "replay: ok");
            }
            Ok(format!("removable=false pattern={pair}"))
        }
    }
}

fn remove_cmd(
    file: &Path,
    output: &Path,
    cap: usize,
    out: &mut String,
) -> Result<String, CliError> {
    let a = load(file)?;
    require(&a, a.kind() == AcceptanceKind::StairBuchi, "stair-buchi")?;
    let analysis = analyze(&a)?;
    match analysis.remove(&a, cap) {
        Ok(p) => {
            write_file(output, &serialize(&p.dvpa))?;
            let _ = writeln!(
                out,
                "wrote parity automaton with {} states and {} stack symbols to {}",
                p.dvpa.state_count(),
                p.dvpa.stack_count(),
                output.display()
            );
            Ok(format!(
                "removed=true states={} stack={} h={} m={}",
                p.dvpa.state_count(),
                p.dvpa.stack_count(),
                p.h,
                p.m
            ))
        }
        Err(StairError::HasPattern) => {
            let _ = writeln!(out, "forbidden pattern found; nothing written");
            Ok("removed=false reason=pattern".into())
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_moves(input: &str) -> Result<Vec<SuMove>, CliError> {
    input
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'c' => Ok(SuMove::Call),
            'r' => Ok(SuMove::Return),
            other => Err(CliError::Syntax(format!(
                "input move {other:?} is neither c nor r"
            ))),
        })
        .collect()
}

fn eta_string(eta: &[u8]) -> String {
    if eta.is_empty() {
        "ε".into()
    } else {
        eta.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

fn reduce_cmd(file: &Path, input: &str, out: &mut String) -> Result<String, CliError> {
    let a = load(file)?;
    require(&a, a.kind() == AcceptanceKind::StairBuchi, "stair-buchi")?;
    let moves = parse_moves(input)?;
    let analysis = analyze(&a)?;
    let Removability::Pattern(w) = analysis.check(&a)? else {
        return Err(CliError::Semantic(
            "the automaton has no forbidden pattern, so there is no reduction".into(),
        ));
    };
    let reducer = analysis.reducer(&a, w)?;
    let t = reducer
        .transduce(&moves)
        .map_err(|e| CliError::Semantic(e.to_string()))?;
    let alpha = a.alphabet();
    let _ = writeln!(out, "access: {}", alpha.format_word(&reducer.access));
    for (i, pair) in t.states.windows(2).enumerate() {
        let emitted = alpha.format_word(&t.output[pair[0].emitted..pair[1].emitted]);
        let mv = if moves[i] == SuMove::Call { 'c' } else { 'r' };
        let _ = writeln!(out, "{mv} -> {emitted}    eta={}", eta_string(&pair[1].eta));
    }
    let last = t.states.last().expect("initial memory");
    Ok(format!(
        "moves={} emitted={} eta={} open={} k={}",
        moves.len(),
        t.output.len(),
        eta_string(&last.eta),
        last.open_calls,
        reducer.k
    ))
}

fn diff_cmd(
    a: &Path,
    b: &Path,
    samples: usize,
    seed: u64,
    max_len: usize,
    out: &mut String,
) -> Result<String, CliError> {
    let da = load(a)?;
    let db = load(b)?;
    let report = diff(&da, &db, samples, seed, max_len).map_err(|e| match e {
        DiffError::AlphabetMismatch => CliError::Semantic(e.to_string()),
        DiffError::Lasso { source, .. } => source.into(),
    })?;
    let alpha = da.alphabet();
    for m in &report.mismatches {
        let _ = writeln!(
            out,
            "mismatch: {}  a={} b={}",
            m.lasso.format(alpha),
            m.a,
            m.b
        );
    }
    let mut result = format!(
        "mismatches={} samples={} exhaustive={} seed={}",
        report.mismatches.len(),
        report.samples,
        report.exhaustive,
        report.seed
    );
    if let Some(s) = &report.first_mismatch_shrunk {
        let _ = write!(result, " shrunk=\"{}\"", s.format(alpha));
    }
    Ok(result)
}
