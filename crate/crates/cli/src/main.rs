//! Command-line front end: pipeline runs, evaluation, threshold tuning,
//! gap analysis, synthetic corpora, and clickability training.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use screentree::config::HeuristicConfig;
use screentree::evaluation::{
    average_precision, confusion_matrix, gap_analysis, gap_report, grouping_metrics,
    ordering_metrics, tune_thresholds, ConfusionMatrix, EvalPair, GapReport, MatchSpec,
    StatsError, HISTOGRAM_LABELS,
};
use screentree::io::{self, CorpusManifest, IoError, ManifestEntry};
use screentree::model::Screen;
use screentree::pipeline::{process_screen, PipelineOutput};
use screentree::refinement::OcrLine;
use screentree::semantics::{train_clickability, ClickabilityModel, TrainError, TrainingConfig};
use screentree::synthgen::{
    generate_clickability_dataset, generate_corpus, GenSpec, NoiseSpec,
};

const EXIT_SCHEMA: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_ID_MISMATCH: u8 = 4;

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        let code = match &e {
            IoError::Schema { .. } => EXIT_SCHEMA,
            _ => EXIT_IO,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<screentree::config::ConfigError> for CliError {
    fn from(e: screentree::config::ConfigError) -> Self {
        let code = match &e {
            screentree::config::ConfigError::Io(..) => EXIT_IO,
            _ => EXIT_SCHEMA,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<TrainError> for CliError {
    fn from(e: TrainError) -> Self {
        let code = match &e {
            TrainError::Io(..) => EXIT_IO,
            _ => EXIT_SCHEMA,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        CliError::new(EXIT_ID_MISMATCH, e.to_string())
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "screentree",
    version,
    about = "Turn UI-element detections into accessibility trees, and measure how well that works."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Heuristic constants TOML; compiled-in defaults otherwise.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for anything stochastic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 means one per core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    /// Report format for tabular outputs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline: refinement, semantics, grouping, ordering.
    Process {
        /// Screens JSON (array of screen objects with detections).
        detections: PathBuf,
        /// Directory holding rasters referenced by `raster_path`.
        #[arg(long)]
        rasters: Option<PathBuf>,
        /// OCR lines JSON, keyed by screen id.
        #[arg(long)]
        ocr: Option<PathBuf>,
        /// Trained clickability model JSON.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Detection metrics: AP under both criteria, confusion matrix, and
    /// optional grouping/ordering quality from tree files.
    Evaluate {
        #[arg(long)]
        preds: PathBuf,
        #[arg(long)]
        gts: PathBuf,
        /// Produced trees JSON, paired with --truth-trees.
        #[arg(long)]
        trees: Option<PathBuf>,
        #[arg(long)]
        truth_trees: Option<PathBuf>,
    },
    /// Pick per-class confidence thresholds maximizing F-beta.
    Tune {
        #[arg(long)]
        preds: PathBuf,
        #[arg(long)]
        gts: PathBuf,
        /// Beta > 1 favors recall, beta < 1 favors precision.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Compare annotations against exposed accessibility elements.
    Gap {
        #[arg(long)]
        annotations: PathBuf,
        #[arg(long)]
        exposed: PathBuf,
    },
    /// Generate a synthetic ground-truth corpus.
    Synth {
        /// Generator spec JSON; flags below override its fields.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        screens: Option<usize>,
        /// Noise preset.
        #[arg(long, value_enum, default_value_t = NoisePreset::None)]
        noise: NoisePreset,
        /// Skip raster rendering and PNG output.
        #[arg(long)]
        no_rasters: bool,
        /// Size of the labeled-icon set emitted for clickability training.
        #[arg(long, default_value_t = 5000)]
        clickability_labels: usize,
    },
    /// Train and calibrate the icon clickability model.
    TrainClickability {
        /// Labeled icons JSON (as emitted by synth).
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = 0.9)]
        target_precision: f64,
        #[arg(long, default_value_t = 50)]
        tree_count: usize,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, default_value_t = 0.1)]
        learning_rate: f64,
        #[arg(long, default_value_t = 0.2)]
        validation_fraction: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NoisePreset {
    None,
    Mild,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn load_config(cli: &Cli) -> Result<HeuristicConfig, CliError> {
    match &cli.config {
        Some(path) => Ok(HeuristicConfig::load(path)?),
        None => Ok(HeuristicConfig::default()),
    }
}

fn ensure_out_dir(cli: &Cli) -> Result<(), CliError> {
    std::fs::create_dir_all(&cli.out_dir)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot create {:?}: {e}", cli.out_dir)))
}

fn run(cli: &Cli) -> CliResult {
    ensure_out_dir(cli)?;
    match &cli.command {
        Command::Process {
            detections,
            rasters,
            ocr,
            model,
        } => cmd_process(cli, detections, rasters.as_deref(), ocr.as_deref(), model.as_deref()),
        Command::Evaluate {
            preds,
            gts,
            trees,
            truth_trees,
        } => cmd_evaluate(cli, preds, gts, trees.as_deref(), truth_trees.as_deref()),
        Command::Tune { preds, gts, beta } => cmd_tune(cli, preds, gts, *beta),
        Command::Gap {
            annotations,
            exposed,
        } => cmd_gap(cli, annotations, exposed),
        Command::Synth {
            spec,
            screens,
            noise,
            no_rasters,
            clickability_labels,
        } => cmd_synth(cli, spec.as_deref(), *screens, *noise, *no_rasters, *clickability_labels),
        Command::TrainClickability {
            labels,
            target_precision,
            tree_count,
            max_depth,
            learning_rate,
            validation_fraction,
        } => cmd_train(
            cli,
            labels,
            *target_precision,
            &TrainingConfig {
                tree_count: *tree_count,
                max_depth: *max_depth,
                learning_rate: *learning_rate,
                validation_fraction: *validation_fraction,
                seed: cli.seed,
            },
        ),
    }
}

fn cmd_process(
    cli: &Cli,
    detections: &Path,
    rasters: Option<&Path>,
    ocr: Option<&Path>,
    model: Option<&Path>,
) -> CliResult {
    let config = load_config(cli)?;
    let mut screens = io::load_screens(detections)?;
    let ocr_map = match ocr {
        Some(path) => io::load_ocr(path)?,
        None => BTreeMap::new(),
    };
    let clickability = match model {
        Some(path) => Some(ClickabilityModel::load_json(path)?),
        None => None,
    };

    let raster_base = rasters
        .map(Path::to_path_buf)
        .or_else(|| detections.parent().map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from("."));
    for screen in &mut screens {
        if let Err(e) = screen.ensure_raster(&raster_base) {
            eprintln!("warning: screen {}: {e}; selection rules degrade", screen.screen_id);
        }
    }

    let empty_ocr: Vec<OcrLine> = Vec::new();
    let results: Vec<Result<PipelineOutput, String>> = screens
        .par_iter()
        .map(|screen| {
            let lines = ocr_map.get(&screen.screen_id).unwrap_or(&empty_ocr);
            process_screen(screen, lines, &config, clickability.as_ref()).map_err(|errors| {
                errors
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            })
        })
        .collect();

    let mut trees = Vec::new();
    let mut diagnostics = Vec::new();
    let mut failures = Vec::new();
    for (screen, result) in screens.iter().zip(results) {
        match result {
            Ok(output) => {
                trees.push(output.tree);
                diagnostics.push(output.diagnostics);
            }
            Err(message) => {
                eprintln!("screen {} skipped: {message}", screen.screen_id);
                failures.push((screen.screen_id.clone(), message));
            }
        }
    }

    io::save_trees(&cli.out_dir.join("trees.json"), &trees)?;
    match cli.format {
        Format::Json => {
            io::write_json(&cli.out_dir.join("diagnostics.json"), &diagnostics)?;
        }
        Format::Csv => {
            let mut csv = String::from("screen_id,stage,input,output,removed,added\n");
            for d in &diagnostics {
                for s in &d.stages {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        d.screen_id, s.stage, s.input, s.output, s.removed, s.added
                    ));
                }
            }
            write_text(&cli.out_dir.join("diagnostics.csv"), &csv)?;
        }
    }
    if !failures.is_empty() {
        io::write_json(&cli.out_dir.join("failures.json"), &failures)?;
    }
    println!(
        "processed {} screens ({} failed); trees in {:?}",
        trees.len(),
        failures.len(),
        cli.out_dir.join("trees.json")
    );
    Ok(())
}

fn write_text(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot write {path:?}: {e}")))
}

// Pairs prediction and ground-truth screens by id; any mismatch is fatal.
fn align<'a>(
    preds: &'a [Screen],
    gts: &'a [Screen],
) -> Result<Vec<EvalPair<'a>>, CliError> {
    let gt_by_id: BTreeMap<&str, &Screen> =
        gts.iter().map(|s| (s.screen_id.as_str(), s)).collect();
    if gt_by_id.len() != gts.len() {
        return Err(CliError::new(
            EXIT_ID_MISMATCH,
            "duplicate screen ids in ground truth",
        ));
    }
    let mut pairs = Vec::with_capacity(preds.len());
    for pred in preds {
        let gt = gt_by_id.get(pred.screen_id.as_str()).ok_or_else(|| {
            CliError::new(
                EXIT_ID_MISMATCH,
                format!("screen {} missing from ground truth", pred.screen_id),
            )
        })?;
        pairs.push(EvalPair {
            screen_id: &pred.screen_id,
            preds: &pred.elements,
            gts: &gt.elements,
        });
    }
    if preds.len() != gts.len() {
        return Err(CliError::new(
            EXIT_ID_MISMATCH,
            format!(
                "prediction and ground-truth corpora differ in size ({} vs {})",
                preds.len(),
                gts.len()
            ),
        ));
    }
    Ok(pairs)
}

fn cmd_evaluate(
    cli: &Cli,
    preds_path: &Path,
    gts_path: &Path,
    trees: Option<&Path>,
    truth_trees: Option<&Path>,
) -> CliResult {
    let preds = io::load_screens(preds_path)?;
    let gts = io::load_screens(gts_path)?;
    let pairs = align(&preds, &gts)?;

    let iou_report = average_precision(&pairs, &MatchSpec::iou_over_half());
    let center_report = average_precision(&pairs, &MatchSpec::center_hit());
    let confusion = confusion_matrix(&pairs);

    let mut summary = String::new();
    summary.push_str("AP by class (IoU > 0.5 | center-hit):\n");
    for (a, b) in iou_report.per_class.iter().zip(&center_report.per_class) {
        summary.push_str(&format!(
            "  {:<20} {:>8} | {:>8}   ({} gt, {} preds)\n",
            a.ui_type.to_string(),
            a.ap.map_or("n/a".into(), |v| format!("{:.4}", v)),
            b.ap.map_or("n/a".into(), |v| format!("{:.4}", v)),
            a.gt_count,
            a.pred_count,
        ));
    }
    summary.push_str(&format!(
        "mean AP:          {} | {}\n",
        iou_report.mean_ap.map_or("n/a".into(), |v| format!("{v:.4}")),
        center_report.mean_ap.map_or("n/a".into(), |v| format!("{v:.4}")),
    ));
    summary.push_str(&format!(
        "weighted mean AP: {} | {}\n",
        iou_report
            .weighted_mean_ap
            .map_or("n/a".into(), |v| format!("{v:.4}")),
        center_report
            .weighted_mean_ap
            .map_or("n/a".into(), |v| format!("{v:.4}")),
    ));

    let mut grouping = None;
    let mut ordering = None;
    if let (Some(trees_path), Some(truth_path)) = (trees, truth_trees) {
        let produced = io::load_trees(trees_path)?;
        let truth = io::load_trees(truth_path)?;
        if produced.len() != truth.len() {
            return Err(CliError::new(
                EXIT_ID_MISMATCH,
                "tree corpora differ in length",
            ));
        }
        let g = grouping_metrics(&produced, &truth)?;
        let o = ordering_metrics(&produced, &truth)?;
        summary.push_str(&format!(
            "grouping: {}/{} produced groups correct, {} should-have-grouped, reduction {:.1}% (truth {:.1}%)\n",
            g.correctly_grouped,
            g.produced_groups,
            g.should_have_grouped,
            100.0 * g.reduction_produced,
            100.0 * g.reduction_truth,
        ));
        summary.push_str(&format!(
            "ordering: {:.1}% perfect, {:.1}% under one error per ten elements, mean distance {:.3}\n",
            100.0 * o.fraction_perfect,
            100.0 * o.fraction_under_one_per_ten,
            o.mean_distance,
        ));
        grouping = Some(g);
        ordering = Some(o);
    }

    #[derive(serde::Serialize)]
    struct FullReport {
        ap_iou_over_half: screentree::evaluation::ApReport,
        ap_center_hit: screentree::evaluation::ApReport,
        confusion: ConfusionMatrix,
        grouping: Option<screentree::evaluation::GroupingStats>,
        ordering: Option<screentree::evaluation::OrderingStats>,
    }
    io::write_json(
        &cli.out_dir.join("report.json"),
        &FullReport {
            ap_iou_over_half: iou_report.clone(),
            ap_center_hit: center_report.clone(),
            confusion: confusion.clone(),
            grouping,
            ordering,
        },
    )?;
    write_text(&cli.out_dir.join("summary.txt"), &summary)?;
    if cli.format == Format::Csv {
        let mut csv = String::from("class,ap_iou,ap_center,gt_count,pred_count\n");
        for (a, b) in iou_report.per_class.iter().zip(&center_report.per_class) {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                a.ui_type,
                a.ap.map_or(String::new(), |v| v.to_string()),
                b.ap.map_or(String::new(), |v| v.to_string()),
                a.gt_count,
                a.pred_count
            ));
        }
        write_text(&cli.out_dir.join("ap.csv"), &csv)?;
        write_text(&cli.out_dir.join("confusion.csv"), &confusion_csv(&confusion))?;
    }
    print!("{summary}");
    Ok(())
}

fn confusion_csv(m: &ConfusionMatrix) -> String {
    let classes = m.classes();
    let mut csv = String::from("gt\\pred");
    for c in &classes {
        csv.push_str(&format!(",{c}"));
    }
    csv.push_str(",missed\n");
    for gt in &classes {
        csv.push_str(&gt.to_string());
        for pred in &classes {
            csv.push_str(&format!(",{}", m.cell(*gt, *pred)));
        }
        csv.push_str(&format!(",{}\n", m.missed.get(gt).copied().unwrap_or(0)));
    }
    csv.push_str("no_gt");
    for pred in &classes {
        csv.push_str(&format!(",{}", m.no_gt.get(pred).copied().unwrap_or(0)));
    }
    csv.push_str(",\nduplicate");
    for gt in &classes {
        csv.push_str(&format!(",{}", m.duplicate.get(gt).copied().unwrap_or(0)));
    }
    csv.push_str(",\n");
    csv
}

fn cmd_tune(cli: &Cli, preds_path: &Path, gts_path: &Path, beta: f64) -> CliResult {
    let preds = io::load_screens(preds_path)?;
    let gts = io::load_screens(gts_path)?;
    let pairs = align(&preds, &gts)?;
    let tuned = tune_thresholds(&pairs, &MatchSpec::iou_over_half(), beta);

    let mut overlay = String::from("[per_class_conf_threshold]\n");
    for t in &tuned {
        overlay.push_str(&format!("{} = {}\n", t.ui_type, t.threshold));
        let warning = t
            .warning
            .as_deref()
            .map(|w| format!("  ({w})"))
            .unwrap_or_default();
        println!(
            "{:<20} threshold {:.4}  F{beta}={:.4} P={:.4} R={:.4}{warning}",
            t.ui_type.to_string(),
            t.threshold,
            t.f_beta,
            t.precision,
            t.recall,
        );
    }
    write_text(&cli.out_dir.join("tuned_thresholds.toml"), &overlay)?;
    io::write_json(&cli.out_dir.join("tuned_thresholds.json"), &tuned)?;
    Ok(())
}

fn cmd_gap(cli: &Cli, annotations_path: &Path, exposed_path: &Path) -> CliResult {
    let config = load_config(cli)?;
    let annotations = io::load_screens(annotations_path)?;
    let exposed = io::load_screens(exposed_path)?;
    let exposed_by_id: BTreeMap<&str, &Screen> = exposed
        .iter()
        .map(|s| (s.screen_id.as_str(), s))
        .collect();

    let mut reports = Vec::new();
    for screen in &annotations {
        let Some(exposed_screen) = exposed_by_id.get(screen.screen_id.as_str()) else {
            return Err(CliError::new(
                EXIT_ID_MISMATCH,
                format!("screen {} missing from exposed elements", screen.screen_id),
            ));
        };
        reports.push(gap_analysis(screen, exposed_screen, &config));
    }
    let report: GapReport = gap_report(reports);

    let mut histogram_csv = String::from("bin,screens\n");
    for (label, count) in HISTOGRAM_LABELS.iter().zip(&report.histogram) {
        histogram_csv.push_str(&format!("{label},{count}\n"));
    }
    let mut unmatched_csv = String::from("ui_type,unmatched\n");
    for (ty, count) in &report.unmatched_by_type {
        unmatched_csv.push_str(&format!("{ty},{count}\n"));
    }
    io::write_json(&cli.out_dir.join("gap_report.json"), &report)?;
    write_text(&cli.out_dir.join("gap_histogram.csv"), &histogram_csv)?;
    write_text(&cli.out_dir.join("gap_unmatched_by_type.csv"), &unmatched_csv)?;
    println!(
        "gap analysis over {} screens: {:.1}% have at least one unmatched annotation",
        report.screens.len(),
        100.0 * report.screens_with_unmatched
    );
    Ok(())
}

fn cmd_synth(
    cli: &Cli,
    spec_path: Option<&Path>,
    screens: Option<usize>,
    noise: NoisePreset,
    no_rasters: bool,
    clickability_labels: usize,
) -> CliResult {
    let mut spec = match spec_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::new(EXIT_IO, format!("cannot read {path:?}: {e}")))?;
            serde_json::from_str::<GenSpec>(&text).map_err(|e| {
                CliError::new(
                    EXIT_SCHEMA,
                    format!("bad generator spec {path:?}: {e}"),
                )
            })?
        }
        None => GenSpec::default(),
    };
    spec.seed = cli.seed;
    if let Some(n) = screens {
        spec.screens = n;
    }
    if noise == NoisePreset::Mild {
        spec.noise = NoiseSpec::mild();
    }
    if no_rasters {
        spec.render_rasters = false;
    }

    let corpus = generate_corpus(&spec)
        .map_err(|e| CliError::new(EXIT_SCHEMA, e.to_string()))?;

    let raster_dir = cli.out_dir.join("rasters");
    if spec.render_rasters {
        std::fs::create_dir_all(&raster_dir)
            .map_err(|e| CliError::new(EXIT_IO, format!("cannot create {raster_dir:?}: {e}")))?;
    }
    let mut truth_screens = Vec::new();
    let mut noisy_screens = corpus.noisy.clone();
    let mut trees = Vec::new();
    let mut selection = Vec::new();
    let mut entries = Vec::new();
    for (truth, noisy) in corpus.truth.iter().zip(&mut noisy_screens) {
        let mut screen = truth.screen.clone();
        let mut raster_rel = None;
        if let Some(raster) = screen.raster.take() {
            let rel = format!("rasters/{}.png", screen.screen_id);
            raster
                .save_png(&cli.out_dir.join(&rel))
                .map_err(|e| CliError::new(EXIT_IO, e.to_string()))?;
            screen.raster_path = Some(rel.clone());
            noisy.raster_path = Some(rel.clone());
            noisy.raster = None;
            raster_rel = Some(rel);
        }
        entries.push(ManifestEntry {
            screen_id: screen.screen_id.clone(),
            raster: raster_rel,
        });
        truth_screens.push(screen);
        trees.push(truth.tree.clone());
        selection.push((
            truth.screen.screen_id.clone(),
            truth.selection.clone(),
            truth.clickable.clone(),
        ));
    }

    let labels = generate_clickability_dataset(spec.seed, clickability_labels, 0.02);

    io::save_screens(&cli.out_dir.join("screens_truth.json"), &truth_screens)?;
    io::save_screens(&cli.out_dir.join("screens_noisy.json"), &noisy_screens)?;
    io::save_trees(&cli.out_dir.join("trees_truth.json"), &trees)?;
    io::write_json(&cli.out_dir.join("selection_truth.json"), &selection)?;
    io::write_json(&cli.out_dir.join("clickability_labels.json"), &labels)?;
    io::write_json(
        &cli.out_dir.join("manifest.json"),
        &CorpusManifest {
            seed: spec.seed,
            screens: spec.screens,
            truth_screens: "screens_truth.json".into(),
            noisy_screens: "screens_noisy.json".into(),
            truth_trees: "trees_truth.json".into(),
            clickability_labels: "clickability_labels.json".into(),
            selection_truth: "selection_truth.json".into(),
            raster_dir: spec.render_rasters.then(|| "rasters".to_string()),
            entries,
        },
    )?;
    println!(
        "generated {} screens (seed {}) into {:?}",
        spec.screens, spec.seed, cli.out_dir
    );
    Ok(())
}

fn cmd_train(
    cli: &Cli,
    labels_path: &Path,
    target_precision: f64,
    config: &TrainingConfig,
) -> CliResult {
    let text = std::fs::read_to_string(labels_path)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot read {labels_path:?}: {e}")))?;
    let labels: Vec<screentree::semantics::LabeledIcon> = serde_json::from_str(&text)
        .map_err(|e| CliError::new(EXIT_SCHEMA, format!("bad labels file: {e}")))?;
    let model = train_clickability(&labels, target_precision, config)?;
    let out = cli.out_dir.join("clickability_model.json");
    model.save_json(&out)?;
    println!(
        "threshold {:.4}: validation precision {:.4}, recall {:.4}{}",
        model.threshold,
        model.achieved_precision,
        model.achieved_recall,
        model
            .precision_warning
            .as_deref()
            .map(|w| format!(" (warning: {w})"))
            .unwrap_or_default()
    );
    println!("model written to {out:?}");
    Ok(())
}
