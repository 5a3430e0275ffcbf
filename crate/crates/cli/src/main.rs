//! `mgk`: command-line front end for marked graph diagrams.
//!
//! Exit codes: 0 success (for `validate`: valid), 1 not valid, 2 unknown,
//! 3 unreadable or malformed input, bad arguments or a failed replay.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mgk::moves::parse_kinds;
use mgk::search::search_with_stats;
use mgk::{
    cap_invariants, component_count, emit_mgd, parse_diagram, resolve, scramble, validate, Diagram, Label, MoveKind,
    MoveTrace, SearchBounds, SearchOutcome, TrivialityBudget, TrivialityVerdict, Validity,
};

const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "mgk", version, about = "Marked graph diagrams of surface links")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Node budget of the unlink search
    #[arg(long, global = true, env = "MGK_BUDGET_NODES", default_value_t = 100_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget_nodes: u64,
    /// Wall-clock limit of the unlink search; unset keeps verdicts reproducible
    #[arg(long, global = true, env = "MGK_BUDGET_SECONDS", value_parser = positive_seconds)]
    budget_seconds: Option<f64>,
    /// Ceiling on crossings plus marked vertices (default: largest input + 4)
    #[arg(long, global = true, env = "MGK_MAX_CH")]
    max_ch: Option<usize>,
    /// Longest move sequence the search may return
    #[arg(long, global = true, env = "MGK_MAX_MOVES", default_value_t = 8)]
    max_moves: usize,
    /// Node budget of the equivalence search
    #[arg(long, global = true, env = "MGK_MAX_NODES", default_value_t = 100_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: u64,
    #[arg(long, global = true, env = "MGK_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, env = "MGK_THREADS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    /// Comma-separated move kinds, or `all`, `I`, `II`
    #[arg(long, global = true, env = "MGK_KINDS", default_value = "all", value_parser = kinds)]
    kinds: Kinds,
    #[arg(long, global = true, env = "MGK_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exchange the a and b labels everywhere
    #[arg(long, global = true, env = "MGK_SWAP_AB")]
    swap_ab: bool,
}

fn positive_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a positive number of seconds")),
    }
}

/// Parsed `--kinds`; a newtype so clap keeps it a single value.
#[derive(Debug, Clone)]
struct Kinds(Vec<MoveKind>);

fn kinds(s: &str) -> Result<Kinds, String> {
    let k = parse_kinds(s)?;
    if k.is_empty() {
        return Err("no move kinds given".into());
    }
    Ok(Kinds(k))
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Records,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum LabelArg {
    A,
    B,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check that both resolutions are trivial links
    Validate { file: PathBuf },
    /// Invariants of the capped surface
    Invariants { file: PathBuf },
    /// Smooth every marked vertex and print the link diagram
    Resolve {
        file: PathBuf,
        #[arg(value_enum)]
        label: LabelArg,
    },
    /// Look for a move sequence between two diagrams
    Search {
        first: PathBuf,
        second: PathBuf,
        /// Write the certificate here
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Replay a trace and print the resulting diagram
    Apply { file: PathBuf, trace: PathBuf },
    /// Apply `k` random moves
    Scramble {
        file: PathBuf,
        k: usize,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Draw the diagram as SVG
    Render {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

impl Opts {
    fn label(&self, l: Label) -> Label {
        match (self.swap_ab, l) {
            (false, l) => l,
            (true, Label::A) => Label::B,
            (true, Label::B) => Label::A,
        }
    }

    fn budget(&self) -> TrivialityBudget {
        TrivialityBudget {
            max_nodes: self.budget_nodes as usize,
            max_seconds: self.budget_seconds,
            ..TrivialityBudget::default()
        }
    }
}

fn read(path: &Path) -> Result<Diagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_diagram(&text).with_context(|| format!("{}", path.display()))
}

fn verdict_text(v: &TrivialityVerdict) -> String {
    match v {
        TrivialityVerdict::Trivial(t) => format!("trivial ({} moves)", t.len()),
        TrivialityVerdict::Nontrivial { bracket, .. } => format!("nontrivial, bracket {bracket}"),
        TrivialityVerdict::Unknown { nodes } => format!("unknown after {nodes} nodes"),
    }
}

fn verdict_record(key: &str, v: &TrivialityVerdict) -> String {
    match v {
        TrivialityVerdict::Trivial(t) => format!("{key}=trivial {key}_moves={}", t.len()),
        TrivialityVerdict::Nontrivial { bracket, .. } => {
            format!("{key}=nontrivial {key}_bracket={}", bracket.to_string().replace(' ', ""))
        }
        TrivialityVerdict::Unknown { nodes } => format!("{key}=unknown {key}_nodes={nodes}"),
    }
}

fn cmd_validate(o: &Opts, file: &Path) -> Result<(String, u8)> {
    let d = read(file)?;
    let r = validate(&d, &o.budget());
    let (a, b) = (r.verdict(o.label(Label::A)), r.verdict(o.label(Label::B)));
    let out = match o.format {
        Format::Text => format!(
            "structure: ok\na-resolution: {}\nb-resolution: {}\noverall: {}\n",
            verdict_text(a),
            verdict_text(b),
            r.overall.name()
        ),
        Format::Records => format!(
            "validity={} {} {}\n",
            r.overall.name(),
            verdict_record("a", a),
            verdict_record("b", b)
        ),
    };
    let code = match r.overall {
        Validity::ValidMarkedGraph => 0,
        Validity::NotValid => 1,
        Validity::Unknown => 2,
    };
    Ok((out, code))
}

fn list<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    format!("[{}]", xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn cmd_invariants(o: &Opts, file: &Path) -> Result<String> {
    let d = read(file)?;
    let inv = cap_invariants(&d);
    let ca = component_count(&resolve(&d, o.label(Label::A)));
    let cb = component_count(&resolve(&d, o.label(Label::B)));
    let validity = validate(&d, &o.budget()).overall;
    let genus = list(inv.genera());
    let mut s = String::new();
    match o.format {
        Format::Text => {
            let _ = writeln!(s, "components: {}", inv.component_count);
            let _ = writeln!(s, "euler characteristic: {}", inv.euler_characteristic());
            let _ = writeln!(s, "orientable: {}", if inv.orientable() { "yes" } else { "no" });
            let _ = writeln!(s, "genus: {genus}");
            let _ = writeln!(s, "resolution components: a={ca} b={cb}");
            let _ = writeln!(s, "ch-index: {}", d.ch_index());
            let _ = writeln!(s, "triviality: {}", validity.name());
            if validity != Validity::ValidMarkedGraph {
                let _ = writeln!(s, "warning: unverified triviality, the surface may not be a surface link");
            }
        }
        Format::Records => {
            let _ = writeln!(
                s,
                "components={} chi={} genus={genus} orientable={} component_chi={} component_orientable={} c_a={ca} c_b={cb} ch={} triviality={}",
                inv.component_count,
                inv.euler_characteristic(),
                inv.orientable(),
                list(inv.per_component.iter().map(|c| c.chi)),
                list(inv.per_component.iter().map(|c| c.orientable)),
                d.ch_index(),
                validity.name()
            );
        }
    }
    Ok(s)
}

fn cmd_resolve(o: &Opts, file: &Path, label: LabelArg) -> Result<String> {
    let d = read(file)?;
    let l = match label {
        LabelArg::A => Label::A,
        LabelArg::B => Label::B,
    };
    Ok(emit_mgd(&resolve(&d, o.label(l)).to_document()))
}

fn steps(t: &MoveTrace) -> String {
    t.steps
        .iter()
        .map(|s| format!("{}{}", s.site.kind.name(), if s.site.direction.sign() > 0 { '+' } else { '-' }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_search(o: &Opts, first: &Path, second: &Path, trace_out: Option<&Path>) -> Result<String> {
    let (d1, d2) = (read(first)?, read(second)?);
    let max_ch = o.max_ch.unwrap_or(d1.ch_index().max(d2.ch_index()) + 4);
    let bounds = SearchBounds {
        kinds: o.kinds.0.clone(),
        threads: o.threads as usize,
        ..SearchBounds::new(max_ch, o.max_moves, o.max_nodes as usize)
    };
    let r = search_with_stats(&d1, &d2, &bounds)?;
    if let (SearchOutcome::Equivalent(t), Some(p)) = (&r.outcome, trace_out) {
        fs::write(p, t.to_text()).with_context(|| format!("writing {}", p.display()))?;
    }
    let mut s = String::new();
    match o.format {
        Format::Text => {
            match &r.outcome {
                SearchOutcome::Equivalent(t) => {
                    let _ = writeln!(s, "equivalent in {} moves", t.len());
                    if !t.is_empty() {
                        let _ = writeln!(s, "moves: {}", steps(t));
                    }
                }
                SearchOutcome::Distinguished(w) => {
                    let _ = writeln!(s, "distinguished by {w}");
                }
                SearchOutcome::Unknown { nodes } => {
                    let _ = writeln!(s, "unknown after {nodes} nodes");
                }
            }
            let _ = writeln!(s, "nodes: {}", r.nodes);
            if r.outside_hypothesis {
                let _ = writeln!(s, "note: some input is not a 2-link; completeness of the moves is not known there");
            }
        }
        Format::Records => {
            let _ = write!(s, "outcome={} nodes={}", r.outcome.name(), r.nodes);
            match &r.outcome {
                SearchOutcome::Equivalent(t) => {
                    let _ = write!(s, " moves={}", t.len());
                }
                SearchOutcome::Distinguished(w) => {
                    let _ = write!(
                        s,
                        " invariant={} left={} right={}",
                        w.invariant.replace(' ', "_"),
                        w.left.replace(' ', ""),
                        w.right.replace(' ', "")
                    );
                }
                SearchOutcome::Unknown { .. } => {}
            }
            let _ = writeln!(s, " hypothesis={}", if r.outside_hypothesis { "outside" } else { "inside" });
        }
    }
    Ok(s)
}

fn cmd_apply(file: &Path, trace: &Path) -> Result<String> {
    let d = read(file)?;
    let text = fs::read_to_string(trace).with_context(|| format!("reading {}", trace.display()))?;
    let t = MoveTrace::parse(&text)?;
    let e = t.replay(&d)?;
    Ok(emit_mgd(&e.to_document()))
}

fn cmd_scramble(o: &Opts, file: &Path, k: usize, trace_out: Option<&Path>) -> Result<String> {
    let d = read(file)?;
    let (e, t) = scramble(&d, k, o.seed, &o.kinds.0, o.max_ch)?;
    if let Some(p) = trace_out {
        fs::write(p, t.to_text()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(emit_mgd(&e.to_document()))
}

fn cmd_render(file: &Path, out: Option<&Path>) -> Result<String> {
    let svg = mgk::render::render_svg(&read(file)?);
    match out {
        Some(p) => {
            fs::write(p, svg).with_context(|| format!("writing {}", p.display()))?;
            Ok(String::new())
        }
        None => Ok(svg),
    }
}

fn run(cli: &Cli) -> Result<(String, u8)> {
    let o = &cli.opts;
    let out = match &cli.cmd {
        Cmd::Validate { file } => return cmd_validate(o, file),
        Cmd::Invariants { file } => cmd_invariants(o, file)?,
        Cmd::Resolve { file, label } => cmd_resolve(o, file, *label)?,
        Cmd::Search {
            first,
            second,
            trace_out,
        } => cmd_search(o, first, second, trace_out.as_deref())?,
        Cmd::Apply { file, trace } => cmd_apply(file, trace)?,
        Cmd::Scramble { file, k, trace_out } => cmd_scramble(o, file, *k, trace_out.as_deref())?,
        Cmd::Render { file, out } => cmd_render(file, out.as_deref())?,
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
