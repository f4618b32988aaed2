use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use mudt::conllu::{write_sentence, Reader};
use mudt::stats::corpus_stats;
use mudt::transform::apply_rules;
use mudt::validator::{reports_to_json, reports_to_tsv, validate_sentence_at};
use mudt::{divergence, parse_treebank, score, RuleSet, SchemaRegistry, Sentence, Severity, Treebank};

/// Sentences handed to the worker pool at a time.
const BATCH: usize = 256;

#[derive(Parser, Debug)]
#[command(name = "mudt", version, about = "Validate, convert and score MUDT treebanks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Abort on the first malformed sentence; in `validate`, warnings fail too.
    #[arg(long, global = true)]
    strict: bool,

    /// Registry overrides (`[section]` headers, `key<TAB>value` lines).
    #[arg(long, global = true, value_name = "PATH")]
    registry: Option<PathBuf>,

    /// Worker threads; output order never depends on this.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    jobs: usize,

    /// Write to PATH instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every sentence against the annotation principles.
    Validate {
        /// Input file, `-` for standard input.
        input: PathBuf,
    },
    /// Rewrite UD-style annotation into MUDT.
    Convert {
        input: PathBuf,
        /// Comma-separated rule ids to enable (default: all).
        #[arg(long, value_name = "R1,R2,...")]
        rules: Option<String>,
        /// Print a before/after arc listing instead of CoNLL-U.
        #[arg(long)]
        diff: bool,
        /// Write the rule trace (TSV) to PATH.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Score predicted against gold: UAS, LAS, MLAS, BLEX.
    Eval {
        gold: PathBuf,
        pred: PathBuf,
        /// Exit 1 when LAS F1 falls below this percentage.
        #[arg(long, value_name = "PCT")]
        min_las: Option<f64>,
        /// Append per-label scores (text format only).
        #[arg(long)]
        per_label: bool,
    },
    /// Label, POS and feature distributions, projectivity, tree depth.
    Stats { input: PathBuf },
    /// Label confusion and categorised divergences between two annotations.
    Diff { gold: PathBuf, pred: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

struct Env {
    format: Format,
    strict: bool,
    reg: SchemaRegistry,
    pool: rayon::ThreadPool,
    out: Box<dyn Write>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mudt: error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let mut reg = SchemaRegistry::default();
    if let Some(path) = &cli.registry {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        reg.apply_config(&text)
            .with_context(|| format!("loading registry {}", path.display()))?;
    }
    if cli.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
    let out: Box<dyn Write> = match &cli.output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut env = Env {
        format: cli.format,
        strict: cli.strict,
        reg,
        pool,
        out,
    };
    let code = match cli.command {
        Command::Validate { input } => validate(&mut env, &input)?,
        Command::Convert {
            input,
            rules,
            diff,
            trace,
        } => {
            let rules = match rules {
                Some(list) => RuleSet::parse(&list)?,
                None => RuleSet::all(),
            };
            convert(&mut env, &input, rules, diff, trace.as_deref())?
        }
        Command::Eval {
            gold,
            pred,
            min_las,
            per_label,
        } => eval(&mut env, &gold, &pred, min_las, per_label)?,
        Command::Stats { input } => stats(&mut env, &input)?,
        Command::Diff { gold, pred } => diff(&mut env, &gold, &pred)?,
    };
    env.out.flush()?;
    Ok(code)
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(Box::new(BufReader::new(f)))
}

/// Streams `path` in batches of `(index, sentence)`. Malformed sentences are
/// reported and skipped, or abort the run under `--strict`. Returns the
/// number skipped.
fn stream(
    path: &Path,
    strict: bool,
    mut sink: impl FnMut(Vec<(usize, Sentence)>) -> Result<()>,
) -> Result<usize> {
    let mut skipped = 0;
    let mut batch = Vec::with_capacity(BATCH);
    for (i, item) in Reader::new(open(path)?).enumerate() {
        match item {
            Ok(s) => batch.push((i, s)),
            Err(e) if strict => bail!("{}: {}", path.display(), e),
            Err(e) => {
                eprintln!("mudt: {}: {}", path.display(), e);
                skipped += 1;
            }
        }
        if batch.len() == BATCH {
            sink(std::mem::take(&mut batch))?;
        }
    }
    if !batch.is_empty() {
        sink(batch)?;
    }
    Ok(skipped)
}

fn load(path: &Path, strict: bool) -> Result<Treebank> {
    let mut text = String::new();
    open(path)?
        .read_to_string(&mut text)
        .with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_treebank(&text);
    if let Some(e) = parsed.errors.first() {
        if strict {
            bail!("{}: {}", path.display(), e);
        }
        for e in &parsed.errors {
            eprintln!("mudt: {}: {}", path.display(), e);
        }
    }
    Ok(parsed.treebank)
}

fn validate(env: &mut Env, input: &Path) -> Result<u8> {
    let (reg, pool) = (&env.reg, &env.pool);
    let mut reports = Vec::new();
    let skipped = stream(input, env.strict, |batch| {
        pool.install(|| {
            reports.par_extend(
                batch
                    .par_iter()
                    .map(|(i, s)| validate_sentence_at(s, reg, *i)),
            )
        });
        Ok(())
    })?;

    let count = |sev| reports.iter().map(|r| r.count(sev)).sum::<usize>();
    let (errors, warnings) = (count(Severity::Error) + skipped, count(Severity::Warning));
    let out = &mut env.out;
    match env.format {
        Format::Text => {
            for r in reports.iter().filter(|r| !r.diagnostics.is_empty()) {
                for d in &r.diagnostics {
                    writeln!(out, "{}: {}", r.sent_id, d)?;
                }
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            write!(
                out,
                "{} sentences, {} failed, {} errors, {} warnings",
                reports.len() + skipped,
                failed + skipped,
                errors,
                warnings
            )?;
            if skipped > 0 {
                write!(out, " ({} unparsable)", skipped)?;
            }
            writeln!(out)?;
        }
        Format::Tsv => out.write_all(reports_to_tsv(&reports).as_bytes())?,
        Format::Json => writeln!(out, "{}", reports_to_json(&reports))?,
    }
    let failing = errors > 0 || (env.strict && warnings > 0);
    Ok(u8::from(failing))
}

fn convert(env: &mut Env, input: &Path, rules: RuleSet, side_by_side: bool, trace: Option<&Path>) -> Result<u8> {
    let mut trace_out = match trace {
        Some(p) => Some(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => None,
    };
    let (reg, pool) = (&env.reg, &env.pool);
    let out = &mut env.out;
    let (mut sentences, mut changed, mut residual, mut rejected) = (0, 0, 0, 0);

    let skipped = stream(input, env.strict, |batch| {
        let converted: Vec<_> = pool.install(|| {
            batch
                .par_iter()
                .map(|(i, s)| (i, s, apply_rules(s, reg, rules)))
                .collect()
        });
        for (i, s, result) in converted {
            sentences += 1;
            let (after, tr) = match result {
                Ok(r) => r,
                Err(e) => {
                    // Not a tree: pass through untouched.
                    eprintln!("mudt: {}: not converted: {}", s.label(*i), e);
                    rejected += 1;
                    (s.clone(), Default::default())
                }
            };
            changed += usize::from(!tr.is_empty());
            residual += usize::from(!tr.residual.is_empty());
            if side_by_side {
                out.write_all(arc_listing(s, &after).as_bytes())?;
            } else {
                write_sentence(out, &after)?;
            }
            if let Some(t) = trace_out.as_mut() {
                let mut tr = tr;
                tr.sent_id = s.label(*i);
                t.write_all(tr.to_tsv().as_bytes())?;
            }
        }
        Ok(())
    })?;

    if let Some(mut t) = trace_out {
        t.flush()?;
    }
    eprintln!(
        "mudt: {} sentences, {} rewritten, {} with residual errors, {} not trees",
        sentences, changed, residual, rejected
    );
    Ok(u8::from(residual + rejected + skipped > 0))
}

/// Before/after arcs side by side; changed rows are starred.
fn arc_listing(before: &Sentence, after: &Sentence) -> String {
    let arc = |t: &mudt::Token| format!("{}:{}", t.head, t.deprel);
    let rows: Vec<_> = before
        .tokens
        .iter()
        .zip(&after.tokens)
        .map(|(b, a)| (b.id.to_string(), b.form.clone(), arc(b), arc(a)))
        .collect();
    let w = |f: fn(&(String, String, String, String)) -> usize, min: usize| {
        rows.iter().map(f).max().unwrap_or(0).max(min)
    };
    let wid = w(|r| r.0.chars().count(), 2);
    let wform = w(|r| r.1.chars().count(), 4);
    let wb = w(|r| r.2.chars().count(), 6);

    let mut out = format!("# sent_id = {}\n", before.label(0));
    if let Some(text) = &before.text {
        out.push_str(&format!("# text = {}\n", text));
    }
    out.push_str(&format!(
        "{:<wid$}  {:<wform$}  {:<wb$}  {}\n",
        "ID", "FORM", "BEFORE", "AFTER"
    ));
    for (id, form, b, a) in &rows {
        let mark = if a != b { "  *" } else { "" };
        out.push_str(&format!("{:<wid$}  {:<wform$}  {:<wb$}  {}{}\n", id, form, b, a, mark));
    }
    out.push('\n');
    out
}

fn load_pair(env: &Env, gold: &Path, pred: &Path) -> Result<(Treebank, Treebank)> {
    Ok((load(gold, env.strict)?, load(pred, env.strict)?))
}

fn eval(env: &mut Env, gold: &Path, pred: &Path, min_las: Option<f64>, per_label: bool) -> Result<u8> {
    let (g, p) = load_pair(env, gold, pred)?;
    let scores = score(&g, &p, &env.reg)?;
    let out = &mut env.out;
    match env.format {
        Format::Text => {
            writeln!(out, "{}", scores)?;
            if per_label {
                writeln!(out)?;
                out.write_all(scores.per_label_table().as_bytes())?;
            }
        }
        Format::Tsv => out.write_all(scores.to_tsv().as_bytes())?,
        Format::Json => writeln!(out, "{}", scores.to_json())?,
    }
    let Some(min) = min_las else { return Ok(0) };
    if !(0.0..=100.0).contains(&min) {
        bail!("--min-las must be between 0 and 100");
    }
    let threshold = (min * 100.0).round() as u64;
    Ok(u8::from(scores.las.f1_hundredths() < threshold))
}

fn stats(env: &mut Env, input: &Path) -> Result<u8> {
    let tb = load(input, env.strict)?;
    let st = corpus_stats(&tb);
    let out = &mut env.out;
    match env.format {
        Format::Text => write!(out, "{}", st)?,
        Format::Tsv => out.write_all(st.to_tsv().as_bytes())?,
        Format::Json => writeln!(out, "{}", st.to_json())?,
    }
    Ok(0)
}

fn diff(env: &mut Env, gold: &Path, pred: &Path) -> Result<u8> {
    let (g, p) = load_pair(env, gold, pred)?;
    let report = divergence(&g, &p, &env.reg)?;
    let out = &mut env.out;
    match env.format {
        Format::Text => write!(out, "{}", report)?,
        Format::Tsv => out.write_all(report.to_tsv().as_bytes())?,
        Format::Json => writeln!(out, "{}", report.to_json())?,
    }
    Ok(0)
}
