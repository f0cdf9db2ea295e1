use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use ts22_core::bench::{fit_scaling, synthetic_corpus, time_extract, write_timing_csv};
use ts22_core::classify::{balanced_accuracy, sfs_top2, unbalanced_accuracy, DecisionTree, LabeledFeatureMatrix};
use ts22_core::features::feature_names;
use ts22_core::io::{
    load_dataset_dir, load_ucr_tsv, read_pool_table, write_feature_table, ClassifiedDataset, FeatureTable,
};
use ts22_core::select::{feature_rows, run_pipeline, PipelineConfig, SelectionTask};
use ts22_core::{extract_batch, Error, Result, TimeSeries};

use crate::{Cli, Command, Format};

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::IoFailure {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

/// Writes `bytes` to `path`, or stdout when absent.
fn emit(path: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(io_err(p)),
        None => {
            let stdout = Path::new("<stdout>");
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).map_err(io_err(stdout))?;
            out.flush().map_err(io_err(stdout))
        }
    }
}

fn json_bytes(value: &impl Serialize) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("serializable report");
    v.push(b'\n');
    v
}

/// Feature rows with special values replaced by `medians` (computed from
/// the rows themselves when not given).
fn impute(rows: &[Vec<Option<f64>>], medians: Option<&[f64]>) -> (Vec<Vec<f64>>, Vec<f64>) {
    let d = rows.first().map_or(0, Vec::len);
    let med: Vec<f64> = match medians {
        Some(m) => m.to_vec(),
        None => (0..d)
            .map(|j| {
                let mut v: Vec<f64> = rows.iter().filter_map(|r| r[j]).collect();
                v.sort_by(f64::total_cmp);
                match v.len() {
                    0 => 0.0,
                    n if n % 2 == 1 => v[n / 2],
                    n => 0.5 * (v[n / 2 - 1] + v[n / 2]),
                }
            })
            .collect(),
    };
    let filled = rows
        .iter()
        .map(|r| r.iter().zip(&med).map(|(v, m)| v.unwrap_or(*m)).collect())
        .collect();
    (filled, med)
}

pub fn run(cli: &Cli) -> Result<()> {
    eprintln!("seed: {}", cli.seed);
    match &cli.command {
        Command::Extract { input, output, format } => extract(input, output.as_ref(), *format),
        Command::Classify { train, test, output } => classify(cli.seed, train, test, output.as_ref()),
        Command::Select {
            input,
            config,
            output,
            repeats,
            alpha,
            gamma,
        } => {
            let mut cfg = match config {
                Some(p) => PipelineConfig::from_path(p)?,
                None => PipelineConfig::default(),
            };
            cfg.seed = cli.seed;
            if let Some(r) = repeats {
                cfg.repeats = *r;
            }
            if let Some(a) = alpha {
                cfg.alpha = *a;
            }
            if let Some(g) = gamma {
                cfg.gamma = *g;
            }
            select(input, &cfg, output.as_ref())
        }
        Command::Bench {
            lengths,
            reps,
            input,
            output,
            summary,
        } => bench(cli.seed, lengths, *reps, input.as_ref(), output.as_ref(), summary.as_ref()),
        Command::Project2d { input, output, format } => project2d(cli.seed, input, output.as_ref(), *format),
    }
}

fn extract(input: &Path, output: Option<&PathBuf>, format: Format) -> Result<()> {
    let data = load_ucr_tsv(input)?;
    let vectors = extract_batch(&data.series);
    let flagged = vectors.iter().filter(|v| v.values().iter().any(|x| x.is_special())).count();
    if flagged > 0 {
        eprintln!("{flagged} of {} series have special-valued features", vectors.len());
    }
    let table = FeatureTable {
        labels: Some(data.labels),
        vectors,
    };
    let mut buf = Vec::new();
    write_feature_table(&table, &mut buf, format.into())?;
    emit(output, &buf)
}

fn dataset_rows(data: &ClassifiedDataset) -> Vec<Vec<Option<f64>>> {
    feature_rows(&extract_batch(&data.series))
}

fn classify(seed: u64, train: &Path, test: &Path, output: Option<&PathBuf>) -> Result<()> {
    let tr = load_ucr_tsv(train)?;
    let te = load_ucr_tsv(test)?;
    let (x_train, medians) = impute(&dataset_rows(&tr), None);
    let (x_test, _) = impute(&dataset_rows(&te), Some(&medians));
    let m = LabeledFeatureMatrix::new(&x_train, &tr.labels)?;
    let columns: Vec<&[f64]> = (0..m.n_features()).map(|j| m.column(j)).collect();
    let tree = DecisionTree::fit(&columns, m.labels(), m.n_classes())?;
    let pred: Vec<&str> = x_test
        .iter()
        .map(|row| m.class_names()[tree.predict(row)].as_str())
        .collect();
    let truth: Vec<&str> = te.labels.iter().map(String::as_str).collect();
    let report = json!({
        "seed": seed,
        "train": train.display().to_string(),
        "test": test.display().to_string(),
        "n_train": tr.len(),
        "n_test": te.len(),
        "classes": m.class_names(),
        "tree_depth": tree.depth(),
        "unbalanced_accuracy": unbalanced_accuracy(&truth, &pred)?,
        "balanced_accuracy": balanced_accuracy(&truth, &pred)?,
    });
    emit(output, &json_bytes(&report))
}

fn is_pool(p: &Path) -> bool {
    p.file_name().is_some_and(|n| n.to_string_lossy().ends_with(".features.csv"))
}

fn load_tasks(dir: &Path) -> Result<(Vec<SelectionTask>, Vec<String>)> {
    let entries = std::fs::read_dir(dir).map_err(io_err(dir))?;
    let mut pools: Vec<PathBuf> = Vec::new();
    for e in entries {
        let p = e.map_err(io_err(dir))?.path();
        if is_pool(&p) {
            pools.push(p);
        }
    }
    pools.sort();
    if pools.is_empty() {
        let names: Vec<String> = feature_names().iter().map(|s| (*s).to_owned()).collect();
        let tasks = load_dataset_dir(dir)?
            .iter()
            .map(|d| SelectionTask::from_series(d.name.clone(), &d.series, &d.labels))
            .collect::<Result<Vec<_>>>()?;
        return Ok((tasks, names));
    }
    let mut names: Option<Vec<String>> = None;
    let mut tasks = Vec::new();
    for p in &pools {
        let t = read_pool_table(p)?;
        match &names {
            None => names = Some(t.feature_names.clone()),
            Some(n) if *n != t.feature_names => {
                return Err(Error::MalformedLine {
                    path: p.clone(),
                    line: 1,
                    reason: "feature columns differ from the first pool table".into(),
                })
            }
            Some(_) => {}
        }
        tasks.push(SelectionTask::from_feature_rows(t.name, &t.rows, &t.labels)?);
    }
    Ok((tasks, names.unwrap_or_default()))
}

fn select(dir: &Path, cfg: &PipelineConfig, output: Option<&PathBuf>) -> Result<()> {
    let (tasks, names) = load_tasks(dir)?;
    let out = run_pipeline(&tasks, &names, cfg)?;
    eprintln!(
        "{} features -> {} prefiltered -> {} significant -> {} retained -> {} clusters",
        out.provenance.counts.input,
        out.provenance.counts.prefiltered,
        out.provenance.counts.significant,
        out.provenance.counts.retained,
        out.provenance.counts.clusters
    );
    eprintln!("digest: {}", out.provenance.digest);
    emit(output, &json_bytes(&out))
}

fn bench(
    seed: u64,
    lengths: &[usize],
    reps: usize,
    input: Option<&PathBuf>,
    output: Option<&PathBuf>,
    summary: Option<&PathBuf>,
) -> Result<()> {
    if reps == 1 {
        eprintln!("warning: reps = 1 gives no protection against timer noise");
    }
    let corpus: Vec<(String, TimeSeries)> = match input {
        Some(dir) => load_dataset_dir(dir)?
            .into_iter()
            .flat_map(|d| {
                let name = d.name;
                d.series
                    .into_iter()
                    .enumerate()
                    .map(move |(k, s)| (format!("{name}_{k}"), s))
            })
            .collect(),
        None => synthetic_corpus(lengths.iter().copied().max().unwrap_or(0).max(5), seed),
    };
    let records = ts22_core::par::with_threads(1, || time_extract(&corpus, lengths, reps))?;
    let mut buf = Vec::new();
    write_timing_csv(&records, &mut buf).map_err(io_err(Path::new("<buffer>")))?;
    emit(output, &buf)?;
    let fit = fit_scaling(&records);
    let report = match &fit {
        Ok(f) => json!({
            "seed": seed,
            "reps": reps,
            "n_series": corpus.len(),
            "lengths": lengths,
            "exponent": f.exponent,
            "prefactor": f.prefactor,
            "r_squared": f.r_squared,
        }),
        Err(e) => json!({ "seed": seed, "reps": reps, "n_series": corpus.len(), "lengths": lengths, "fit_error": e.to_string() }),
    };
    let bytes = json_bytes(&report);
    match summary {
        Some(p) => std::fs::write(p, &bytes).map_err(io_err(p))?,
        None => eprint!("{}", String::from_utf8_lossy(&bytes)),
    }
    fit.map(|_| ())
}

fn project2d(seed: u64, input: &Path, output: Option<&PathBuf>, format: Format) -> Result<()> {
    let data = load_ucr_tsv(input)?;
    let (rows, _) = impute(&dataset_rows(&data), None);
    let m = LabeledFeatureMatrix::new(&rows, &data.labels)?;
    let top = sfs_top2(&m, seed)?;
    let names = feature_names();
    let (a, b) = (names[top.first], names[top.second]);
    let bytes = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let wrap = |e: csv::Error| Error::IoFailure {
                path: PathBuf::from("<buffer>"),
                message: e.to_string(),
            };
            w.write_record(["label", a, b]).map_err(wrap)?;
            for (row, label) in rows.iter().zip(&data.labels) {
                w.write_record([label.clone(), format!("{:?}", row[top.first]), format!("{:?}", row[top.second])])
                    .map_err(wrap)?;
            }
            eprintln!("features: {a}, {b} (accuracy {})", top.accuracy);
            w.into_inner().map_err(|e| wrap(e.into_error().into()))?
        }
        Format::Json => {
            let points: Vec<_> = rows
                .iter()
                .zip(&data.labels)
                .map(|(row, label)| json!({ "label": label, "x": row[top.first], "y": row[top.second] }))
                .collect();
            json_bytes(&json!({
                "seed": seed,
                "features": [a, b],
                "first_accuracy": top.first_accuracy,
                "accuracy": top.accuracy,
                "points": points,
            }))
        }
    };
    emit(output, &bytes)
}
