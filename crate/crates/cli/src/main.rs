use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use textworlds::harness::{
    self, build_curriculum, copy_baseline, dataset_preset, gibberish_variant, grid_dataset, grid_evaluate, grid_preset,
    invert_gibberish_variant, load_config, materialize_stage, oracle_baseline, read_dataset, read_predictions,
    read_text, score_records, to_jsonl, write_text, Axis, CurriculumManifest, DatasetManifest, GridSpec, Predictor,
    CURRICULUM_NAMES, DATASET_PRESETS, GRID_PRESETS,
};
use textworlds::render::{build_gibberish_map, GibberishMap};
use textworlds::scenariogen::{gen_dataset, GenConfig, Span, Task};
use textworlds::vocab::{Lexicon, WORDSET_NAMES};
use textworlds::{Error, Vocabulary};

#[derive(Parser)]
#[command(
    name = "textworlds",
    version,
    about = "Generate and score container and navigation reasoning datasets"
)]
struct Cli {
    /// Worker threads for generation and scoring (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Lexicon TSV to derive word sets from instead of the bundled one.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a dataset and its manifest.
    Gen(GenArgs),
    /// Score predictions against a dataset.
    Score(ScoreArgs),
    /// Evaluate a predictor over a two-axis grid of structural parameters.
    Grid(GridArgs),
    /// Rewrite a dataset's template words through a gibberish map, or back.
    Gibberish(GibberishArgs),
    /// Inspect or export derived word sets.
    Vocab(VocabArgs),
    /// Write a curriculum manifest, optionally materializing one stage.
    Curriculum(CurriculumArgs),
    /// List presets or print one as TOML.
    Presets(PresetsArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    task: Option<Task>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// TOML config or dataset manifest.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    count: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    /// Manifest path (defaults to the output path with a .toml extension).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Baseline {
    Oracle,
    Copy,
}

#[derive(Args)]
struct ScoreArgs {
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, required_unless_present = "baseline", conflicts_with = "baseline")]
    predictions: Option<PathBuf>,
    /// Score a built-in predictor instead of a predictions file.
    #[arg(long)]
    baseline: Option<Baseline>,
    /// Write the built-in predictor's output here.
    #[arg(long, requires = "baseline")]
    save_predictions: Option<PathBuf>,
    #[arg(long)]
    out_report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PredictorKind {
    Oracle,
    Copy,
    External,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Exact,
    Substring,
    Bleu,
}

impl Metric {
    fn name(self) -> &'static str {
        match self {
            Metric::Exact => "exact",
            Metric::Substring => "substring",
            Metric::Bleu => "bleu",
        }
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    task: Task,
    #[arg(long, required_unless_present_all = ["rows", "cols"])]
    grid_preset: Option<String>,
    /// Row axis and range, e.g. `n_objects=2-19`.
    #[arg(long, requires = "cols")]
    rows: Option<String>,
    /// Column axis and range, e.g. `n_containers=2-5`.
    #[arg(long, requires = "rows")]
    cols: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    instances: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "oracle")]
    predictor: PredictorKind,
    /// Predictions JSONL for the external predictor.
    #[arg(long, required_if_eq("predictor", "external"))]
    predictions: Option<PathBuf>,
    /// Also write every grid scenario as JSONL (for running an external model).
    #[arg(long)]
    emit_dataset: Option<PathBuf>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    metric: Metric,
    #[arg(long)]
    out_report: Option<PathBuf>,
}

#[derive(Args)]
struct GibberishArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Map TSV; created from --seed when the file does not exist.
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    invert: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VocabArgs {
    /// Word set to export.
    #[arg(long)]
    derive: Option<String>,
    #[arg(long, requires = "derive")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurriculumArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    out: PathBuf,
    /// Zero-based stage to materialize as a dataset.
    #[arg(long, requires = "dataset_out")]
    stage: Option<usize>,
    #[arg(long, default_value_t = 0)]
    draws: usize,
    #[arg(long)]
    dataset_out: Option<PathBuf>,
}

#[derive(Args)]
struct PresetsArgs {
    /// Print this dataset preset's config as TOML.
    #[arg(long)]
    show: Option<String>,
    #[arg(long)]
    task: Option<Task>,
}

fn main() -> ExitCode {
    let color = if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let matches = match Cli::command().color(color).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}

type Result<T> = textworlds::Result<T>;

fn vocabulary(lexicon: Option<&Path>) -> Result<Vocabulary> {
    match lexicon {
        Some(p) => Ok(Vocabulary::with_lexicon(Lexicon::load(p)?)?),
        None => Ok(Vocabulary::bundled()),
    }
}

fn run(cli: Cli) -> Result<()> {
    let lexicon = cli.lexicon.as_deref();
    match cli.command {
        Command::Gen(a) => gen(a, lexicon),
        Command::Score(a) => score(a),
        Command::Grid(a) => grid(a, lexicon),
        Command::Gibberish(a) => gibberish(a, lexicon),
        Command::Vocab(a) => vocab(a, lexicon),
        Command::Curriculum(a) => curriculum(a, lexicon),
        Command::Presets(a) => presets(a),
    }
}

fn sidecar(path: &Path) -> PathBuf {
    path.with_extension("toml")
}

fn gen(a: GenArgs, lexicon: Option<&Path>) -> Result<()> {
    let (mut cfg, name, mut lex_path) = match (&a.preset, &a.config) {
        (Some(p), _) => (dataset_preset(p, a.task)?, p.clone(), None),
        (None, Some(path)) => {
            let text = read_text(path)?;
            let lex = DatasetManifest::from_toml(&text).ok().and_then(|m| m.lexicon);
            let cfg = load_config(&text)?;
            if a.task.is_some_and(|t| t != cfg.task) {
                return Err(Error::Invalid(format!(
                    "--task disagrees with the config's task {}",
                    cfg.task
                )));
            }
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            (cfg, name, lex.map(PathBuf::from))
        }
        (None, None) => unreachable!("clap requires --preset or --config"),
    };
    if let Some(n) = a.count {
        cfg.count = n as usize;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if lexicon.is_some() {
        lex_path = lexicon.map(Path::to_path_buf);
    }
    let vocab = vocabulary(lex_path.as_deref())?;
    let data = gen_dataset(&cfg, &vocab)?;
    let text = to_jsonl(&data);
    let mut manifest = DatasetManifest::new(name, &cfg, &text);
    manifest.lexicon = lex_path.map(|p| p.display().to_string());
    let manifest_path = a.manifest.unwrap_or_else(|| sidecar(&a.out));
    let manifest_text = manifest.to_toml()?;
    write_text(&a.out, &text)?;
    write_text(&manifest_path, &manifest_text)?;
    println!("wrote {} {} scenarios to {}", data.len(), cfg.task, a.out.display());
    println!("manifest {}", manifest_path.display());
    println!("digest sha256:{}", manifest.digest);
    Ok(())
}

fn write_report(path: Option<&Path>, report: &harness::ScoreReport) -> Result<()> {
    if let Some(p) = path {
        write_text(p, &report.to_json())?;
        println!("report {}", p.display());
    }
    Ok(())
}

fn print_aggregate(a: &harness::Aggregate) {
    println!("examples {}", a.count);
    println!("exact {:.6}", a.exact);
    println!("substring {:.6}", a.substring);
    println!("bleu {:.6}", a.bleu);
}

fn score(a: ScoreArgs) -> Result<()> {
    let data = read_dataset(&a.dataset)?;
    let preds = match (a.baseline, &a.predictions) {
        (Some(Baseline::Oracle), _) => oracle_baseline(&data)?,
        (Some(Baseline::Copy), _) => copy_baseline(&data),
        (None, Some(p)) => read_predictions(p)?,
        (None, None) => unreachable!("clap requires --predictions or --baseline"),
    };
    if let Some(p) = &a.save_predictions {
        write_text(p, &to_jsonl(&preds))?;
        println!("predictions {}", p.display());
    }
    let report = score_records(&data, &preds)?;
    print_aggregate(&report.aggregate);
    write_report(a.out_report.as_deref(), &report)
}

fn parse_axis_range(s: &str) -> Result<(Axis, Span)> {
    let bad = || Error::Invalid(format!("expected AXIS=MIN-MAX, got `{s}`"));
    let (axis, range) = s.split_once('=').ok_or_else(bad)?;
    let axis: Axis = axis.parse().map_err(Error::Invalid)?;
    let (lo, hi) = range.split_once('-').unwrap_or((range, range));
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    Ok((axis, Span::new(lo, hi)))
}

fn grid(a: GridArgs, lexicon: Option<&Path>) -> Result<()> {
    let vocab = vocabulary(lexicon)?;
    let (mut spec, mut cfg) = match &a.grid_preset {
        Some(name) => grid_preset(name, a.task)?,
        None => {
            let (row, rows) = parse_axis_range(a.rows.as_deref().unwrap_or_default())?;
            let (col, cols) = parse_axis_range(a.cols.as_deref().unwrap_or_default())?;
            let cfg = dataset_preset("train-default", Some(a.task))?;
            (
                GridSpec {
                    row,
                    col,
                    rows,
                    cols,
                    instances: 100,
                },
                cfg,
            )
        }
    };
    if a.grid_preset.is_some() {
        if let (Some(r), Some(c)) = (&a.rows, &a.cols) {
            (spec.row, spec.rows) = parse_axis_range(r)?;
            (spec.col, spec.cols) = parse_axis_range(c)?;
        }
    }
    if let Some(n) = a.instances {
        spec.instances = n as usize;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    spec.validate(cfg.task)?;
    if let Some(p) = &a.emit_dataset {
        let cells = grid_dataset(&spec, &cfg, &vocab)?;
        let all: Vec<_> = cells.into_iter().filter_map(|c| c.scenarios.ok()).flatten().collect();
        write_text(p, &to_jsonl(&all))?;
        println!("grid dataset {} ({} scenarios)", p.display(), all.len());
    }
    let predictor = match a.predictor {
        PredictorKind::Oracle => Predictor::Oracle,
        PredictorKind::Copy => Predictor::Copy,
        PredictorKind::External => {
            Predictor::External(read_predictions(a.predictions.as_ref().expect("required by clap"))?)
        }
    };
    let report = grid_evaluate(&spec, &cfg, &vocab, &predictor)?;
    let g = report.grid.as_ref().expect("grid reports carry a grid");
    let infeasible = g.cells.iter().filter(|c| c.aggregate.is_none()).count();
    println!(
        "grid {} {} x {}: {}x{} cells ({} infeasible), {} per cell",
        cfg.task,
        spec.row,
        spec.col,
        g.rows.len(),
        g.cols.len(),
        infeasible,
        spec.instances
    );
    print_aggregate(&report.aggregate);
    if let Some(p) = &a.out_csv {
        write_text(p, &g.to_csv(a.metric.name())?)?;
        println!("csv {}", p.display());
    }
    write_report(a.out_report.as_deref(), &report)
}

fn load_or_build_map(path: &Path, seed: u64, vocab: &Vocabulary) -> Result<GibberishMap> {
    if path.exists() {
        return Ok(GibberishMap::parse_tsv(&read_text(path)?)?);
    }
    let mut avoid = vocab.slot_words();
    avoid.extend(vocab.lexicon().words().map(str::to_string));
    let map = build_gibberish_map(seed, &avoid);
    write_text(path, &map.to_tsv())?;
    println!("created map {}", path.display());
    Ok(map)
}

fn gibberish(a: GibberishArgs, lexicon: Option<&Path>) -> Result<()> {
    let vocab = vocabulary(lexicon)?;
    let map = load_or_build_map(&a.map, a.seed, &vocab)?;
    let data = read_dataset(&a.input)?;
    let (out_data, suffix) = if a.invert {
        (invert_gibberish_variant(&data, &map), "en")
    } else {
        (gibberish_variant(&data, &map)?, "gib")
    };
    let out = a
        .out
        .unwrap_or_else(|| a.input.with_extension(format!("{suffix}.jsonl")));
    let text = to_jsonl(&out_data);
    write_text(&out, &text)?;
    let in_manifest = sidecar(&a.input);
    if in_manifest.exists() {
        let mut m = DatasetManifest::load(&in_manifest)?;
        m.digest = harness::digest(text.as_bytes());
        m.gibberish_digest = if a.invert { None } else { Some(map.digest()) };
        write_text(sidecar(&out), &m.to_toml()?)?;
    }
    println!("wrote {} scenarios to {}", out_data.len(), out.display());
    println!("map digest sha256:{}", map.digest());
    println!("digest sha256:{}", harness::digest(text.as_bytes()));
    Ok(())
}

fn vocab(a: VocabArgs, lexicon: Option<&Path>) -> Result<()> {
    let v = vocabulary(lexicon)?;
    match &a.derive {
        None => {
            println!("lexicon {} entries", v.lexicon().len());
            for name in WORDSET_NAMES {
                println!("{}", v.wordset(name)?);
            }
        }
        Some(name) => {
            let set = v.wordset(name)?;
            match &a.out {
                Some(p) => {
                    write_text(p, &set.to_file_string())?;
                    println!("wrote {set} to {}", p.display());
                }
                None => println!("{set}"),
            }
        }
    }
    Ok(())
}

fn curriculum(a: CurriculumArgs, lexicon: Option<&Path>) -> Result<()> {
    let m = match build_curriculum(&a.name) {
        Ok(m) => m,
        Err(e @ Error::UnknownPreset { .. }) => {
            let p = Path::new(&a.name);
            if !p.exists() {
                return Err(e);
            }
            CurriculumManifest::from_toml(&read_text(p)?)?
        }
        Err(e) => return Err(e),
    };
    write_text(&a.out, &m.to_toml()?)?;
    println!(
        "curriculum {} with {} stages, {} steps",
        m.name,
        m.stages.len(),
        m.total_steps()
    );
    println!("manifest {}", a.out.display());
    if let (Some(stage), Some(out)) = (a.stage, &a.dataset_out) {
        let draws = if a.draws == 0 {
            m.stages.get(stage).map(|s| s.steps as usize).unwrap_or(0)
        } else {
            a.draws
        };
        let vocab = vocabulary(lexicon)?;
        let data = materialize_stage(&m, stage, draws, &vocab)?;
        write_text(out, &to_jsonl(&data))?;
        println!("stage {stage}: {} examples to {}", data.len(), out.display());
    }
    Ok(())
}

fn presets(a: PresetsArgs) -> Result<()> {
    match &a.show {
        Some(name) => {
            let cfg: GenConfig = dataset_preset(name, a.task)?;
            print!("{}", harness::config_to_toml(&cfg)?);
        }
        None => {
            println!("dataset: {}", DATASET_PRESETS.join(", "));
            println!("grid: {}", GRID_PRESETS.join(", "));
            println!("curriculum: {}", CURRICULUM_NAMES.join(", "));
            println!("word sets: {}", WORDSET_NAMES.join(", "));
        }
    }
    Ok(())
}
