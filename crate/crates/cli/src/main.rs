mod config;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eduseg::eval::{
    compare_systems, corpus_agreement, corpus_report, pairs_from_segmented, parse_pairs,
    BoundaryPair, CorpusReport,
};
use eduseg::lexicon::{validate_lexicon, LoadOptions, MarkerLexicon};
use eduseg::textproc::{FallbackTagger, PosProvider};
use eduseg::{segment, Strategy};
use serde_json::json;

use config::{document_id, read_text, PosSource, RunConfig};

#[derive(Parser)]
#[command(
    name = "eduseg",
    version,
    about = "Rule-based discourse segmentation and boundary-pair evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Segment text files into `<input>.seg` files.
    Segment(SegmentArgs),
    /// Score candidate segmentations against references.
    Evaluate(EvaluateArgs),
    /// Score two annotations against each other in both directions.
    Agreement(AgreementArgs),
    /// Run all three strategies on raw texts and print the comparison table.
    Compare(CompareArgs),
    /// Inspect or expand a lexicon file.
    Lexicon(LexiconArgs),
}

#[derive(Args)]
struct SegmenterOpts {
    /// Language identifier; selects the default lexicon.
    #[arg(long, default_value = "fr")]
    language: String,
    /// Lexicon file, or `builtin:fr` / `builtin:fr-supplement`. Repeat to merge.
    #[arg(long = "lexicon", value_name = "PATH")]
    lexicons: Vec<String>,
    /// POS source: `fallback` or `pretagged:PATH`.
    #[arg(long, value_name = "SOURCE")]
    pos: Option<PosSource>,
    /// Tag map for pre-tagged input (default: French TreeTagger).
    #[arg(long, value_name = "PATH")]
    tagmap: Option<PathBuf>,
    /// Keep the bare `,` record of a lexicon as a marker.
    #[arg(long)]
    include_comma_marker: bool,
}

impl SegmenterOpts {
    fn config(&self, strategy: Strategy) -> RunConfig {
        RunConfig {
            language: self.language.clone(),
            lexicons: self.lexicons.clone(),
            strategy,
            pos_source: self.pos.clone(),
            tagmap_path: self.tagmap.clone(),
            include_comma_marker: self.include_comma_marker,
        }
    }
}

#[derive(Args)]
struct SegmentArgs {
    #[command(flatten)]
    opts: SegmenterOpts,
    #[arg(long, default_value = "mu", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Directory for the `.seg` files (default: next to each input).
    #[arg(long, value_name = "DIR")]
    output: Option<PathBuf>,
    /// Print the summary as JSON.
    #[arg(long)]
    json: bool,
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Clone, Copy)]
enum InputMode {
    Pairs,
    Segments,
}

#[derive(Args)]
#[group(id = "mode", required = true, multiple = false)]
struct ModeArgs {
    /// Inputs are `left<TAB>right` pair files.
    #[arg(long)]
    pairs: bool,
    /// Inputs are `[text]_id` segmented files.
    #[arg(long)]
    segments: bool,
}

impl ModeArgs {
    fn mode(&self) -> InputMode {
        if self.pairs {
            InputMode::Pairs
        } else {
            InputMode::Segments
        }
    }
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long = "reference", required = true, num_args = 1..)]
    references: Vec<PathBuf>,
    #[arg(long = "candidate", required = true, num_args = 1..)]
    candidates: Vec<PathBuf>,
    #[command(flatten)]
    mode: ModeArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AgreementArgs {
    #[arg(long = "a", required = true, num_args = 1..)]
    a: Vec<PathBuf>,
    #[arg(long = "b", required = true, num_args = 1..)]
    b: Vec<PathBuf>,
    #[command(flatten)]
    mode: ModeArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    opts: SegmenterOpts,
    /// Raw text files.
    #[arg(long = "text", required = true, num_args = 1..)]
    texts: Vec<PathBuf>,
    /// Reference `[text]_id` segmented files, matched to texts by document id.
    #[arg(long = "reference", required = true, num_args = 1..)]
    references: Vec<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum LexiconAction {
    Expand,
    Validate,
    Stats,
}

#[derive(Args)]
struct LexiconArgs {
    #[arg(value_enum)]
    action: LexiconAction,
    path: PathBuf,
    #[arg(long)]
    include_comma_marker: bool,
    #[arg(long)]
    json: bool,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Segment(args) => cmd_segment(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Agreement(args) => cmd_agreement(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Lexicon(args) => cmd_lexicon(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn output_path(input: &Path, dir: Option<&Path>) -> PathBuf {
    let name = format!(
        "{}.seg",
        input
            .file_name()
            .map(|n| n.to_string_lossy())
            .unwrap_or_default()
    );
    match dir {
        Some(d) => d.join(name),
        None => input.with_file_name(name),
    }
}

fn segment_file(
    config: &RunConfig,
    lexicon: &MarkerLexicon,
    input: &Path,
    n_inputs: usize,
    out: &Path,
) -> Result<usize> {
    let text = read_text(input)?;
    let provider = config.pos_provider(input, n_inputs)?;
    let doc = segment(&text, lexicon, config.strategy, provider.as_ref())
        .with_context(|| format!("segmenting `{}`", input.display()))?;
    fs::write(out, doc.render()).with_context(|| format!("cannot write `{}`", out.display()))?;
    Ok(doc.len())
}

fn cmd_segment(args: SegmentArgs) -> Result<bool> {
    let config = args.opts.config(args.strategy);
    config.validate()?;
    let lexicon = config.lexicon()?;
    if let Some(dir) = &args.output {
        fs::create_dir_all(dir).with_context(|| format!("cannot create `{}`", dir.display()))?;
    }
    let mut ok = true;
    let mut files = Vec::new();
    for input in &args.inputs {
        let out = output_path(input, args.output.as_deref());
        match segment_file(&config, &lexicon, input, args.inputs.len(), &out) {
            Ok(n) => files.push((input, out, n)),
            Err(e) => {
                eprintln!("error: {e:#}");
                ok = false;
            }
        }
    }
    if args.json {
        let files: Vec<_> = files
            .iter()
            .map(|(i, o, n)| json!({"input": i.display().to_string(), "output": o.display().to_string(), "segments": n}))
            .collect();
        let summary = json!({"strategy": config.strategy.as_str(), "lexicon_entries": lexicon.len(), "files": files});
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        for (input, out, n) in &files {
            println!("{}\t{n} segments\t{}", input.display(), out.display());
        }
    }
    Ok(ok)
}

fn load_pairs(path: &Path, mode: InputMode) -> Result<Vec<BoundaryPair>> {
    let src = read_text(path)?;
    let pairs = match mode {
        InputMode::Pairs => parse_pairs(&src),
        InputMode::Segments => pairs_from_segmented(&src),
    };
    pairs.with_context(|| format!("reading `{}`", path.display()))
}

fn load_set(paths: &[PathBuf], mode: InputMode) -> Result<BTreeMap<String, Vec<BoundaryPair>>> {
    let mut set = BTreeMap::new();
    for path in paths {
        let id = document_id(path);
        if set.insert(id.clone(), load_pairs(path, mode)?).is_some() {
            bail!("two inputs share the document id `{id}`");
        }
    }
    Ok(set)
}

fn report_table(title: &str, report: &CorpusReport) -> String {
    let width = report
        .documents
        .iter()
        .map(|d| d.document.chars().count())
        .max()
        .unwrap_or(0)
        .max(8);
    let mut out = format!("{title}\n");
    out.push_str(&format!(
        "{:<width$}  {:>7}  {:>5}  {:>5}  {:>6}  {:>6}  {:>6}\n",
        "Document", "F-score", "P", "R", "common", "cand", "ref"
    ));
    let rows = report
        .documents
        .iter()
        .map(|d| (d.document.as_str(), &d.report))
        .chain(std::iter::once(("overall", &report.overall)));
    for (name, r) in rows {
        out.push_str(&format!(
            "{:<width$}  {:>7.3}  {:>5.3}  {:>5.3}  {:>6}  {:>6}  {:>6}\n",
            name, r.f_score, r.precision, r.recall, r.n_common, r.n_candidate, r.n_reference
        ));
    }
    out
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<bool> {
    let mode = args.mode.mode();
    let refs = load_set(&args.references, mode)?;
    let cands = load_set(&args.candidates, mode)?;
    let report = corpus_report(&refs, &cands)?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report_table("Candidate vs. reference", &report));
    }
    Ok(true)
}

fn cmd_agreement(args: AgreementArgs) -> Result<bool> {
    let mode = args.mode.mode();
    let a = load_set(&args.a, mode)?;
    let b = load_set(&args.b, mode)?;
    let (a_ref, b_ref) = corpus_agreement(&a, &b)?;
    if args.json {
        let out = json!({"a_as_reference": a_ref, "b_as_reference": b_ref});
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        print!("{}", report_table("Reference: A", &a_ref));
        println!();
        print!("{}", report_table("Reference: B", &b_ref));
    }
    Ok(true)
}

fn cmd_compare(args: CompareArgs) -> Result<bool> {
    let config = args.opts.config(Strategy::Mu);
    config.validate()?;
    let lexicon = config.lexicon()?;
    let provider = match &config.pos_source {
        Some(PosSource::Fallback) | None => PosProvider::Fallback(FallbackTagger),
        Some(PosSource::Pretagged(_)) => bail!("compare only supports the fallback tagger"),
    };
    let mut texts = BTreeMap::new();
    for path in &args.texts {
        texts.insert(document_id(path), read_text(path)?);
    }
    let refs = load_set(&args.references, InputMode::Segments)?;
    let table = compare_systems(&texts, &refs, &lexicon, &provider)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&table)?);
    } else {
        print!("{}", table.render_table());
    }
    Ok(true)
}

fn cmd_lexicon(args: LexiconArgs) -> Result<bool> {
    let options = LoadOptions {
        include_comma_marker: args.include_comma_marker,
    };
    let bytes =
        fs::read(&args.path).with_context(|| format!("cannot read `{}`", args.path.display()))?;
    match args.action {
        LexiconAction::Validate => {
            let report = validate_lexicon(&bytes, options)?;
            for m in &report.malformed {
                println!("line {}: {} ({})", m.line, m.content.trim(), m.reason);
            }
            println!(
                "{} records, {} entries, {} malformed lines",
                report.records,
                report.entries,
                report.malformed.len()
            );
            if report.entries == 0 && report.malformed.is_empty() {
                eprintln!("error: lexicon has no entries");
            }
            Ok(report.is_ok())
        }
        LexiconAction::Expand => {
            let lexicon = MarkerLexicon::load(&bytes, "expand", options)?;
            for entry in lexicon.entries() {
                println!("{entry}");
            }
            Ok(true)
        }
        LexiconAction::Stats => {
            let lexicon = MarkerLexicon::load(&bytes, "stats", options)?;
            if args.json {
                let stats = json!({"entries": lexicon.len(), "max_len": lexicon.max_len(), "elided": lexicon.elided_count()});
                println!("{}", serde_json::to_string_pretty(&stats)?);
            } else {
                println!("entries\t{}", lexicon.len());
                println!("max_len\t{}", lexicon.max_len());
                println!("elided\t{}", lexicon.elided_count());
            }
            Ok(true)
        }
    }
}
