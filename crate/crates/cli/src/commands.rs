use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use bincover::exact::profile_states_with_budget;
use bincover::generators::{gen_partition_smalls, PartitionSmalls};
use bincover::harness::{compare_instance, run_algorithm, summarize, Algorithm, Budgets, ComparisonRow};
use bincover::io::{
    parse_instance, BatchFile, DigraphFile, GapReportFile, GeneratorFile, InstanceFile, PartitionFile,
    SolutionFile, StateProfileFile,
};
use bincover::{
    build_batch_instance, build_transition_digraph, gap_report_with_budget, gen_bounded, gen_uniform,
    longest_path, BatchInstanceSpec, Error, GeneratorConfig, Instance, Rational, Scalar,
};
use serde::Serialize;

use crate::failure::{kind_of, Failure, Kind};
use crate::{Format, GeneratorKind};

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::new(Kind::Parse, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let text = read(path)?;
    parse_instance(&text).map_err(|e| Failure::new(kind_of(&e), format!("{}: {e}", path.display())))
}

fn load_valid_instance(path: &Path) -> Result<Instance, Failure> {
    let inst = load_instance(path)?;
    inst.validate().into_result()?;
    Ok(inst)
}

fn budgets(budget: Option<u64>) -> Budgets {
    budget.map(Budgets::uniform).unwrap_or_default()
}

fn state_budget(budget: Option<u64>) -> usize {
    budgets(budget).states
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

/// Writes to `out`, or stdout when absent.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::new(Kind::Io, format!("stdout: {e}")))
        }
    }
}

#[derive(Serialize)]
struct ValidateOutput {
    valid: bool,
    items: usize,
    bin_limit: usize,
    total_size: String,
}

pub fn validate(path: &Path, out: Option<&Path>) -> CmdResult {
    let inst = load_valid_instance(path)?;
    let report = ValidateOutput {
        valid: true,
        items: inst.len(),
        bin_limit: inst.bin_limit,
        total_size: inst.total_size().to_string(),
    };
    emit(out, &to_json(&report))?;
    Ok(0)
}

pub fn solve(path: &Path, algorithm: &str, budget: Option<u64>, out: Option<&Path>) -> CmdResult {
    let algorithm: Algorithm = algorithm.parse()?;
    let inst = load_valid_instance(path)?;
    let run = run_algorithm(&inst, algorithm, budgets(budget))?;
    let mut file = SolutionFile::from_solution(&run.solution, Some(&algorithm.to_string()));
    if matches!(algorithm, Algorithm::Dp | Algorithm::Brute) {
        file.opt_value = Some(run.solution.total_profit.to_string());
    }
    emit(out, &to_json(&file))?;
    Ok(0)
}

fn parse_scalar(text: &str) -> Result<Rational, Failure> {
    Ok(Rational::parse_exact(text)?)
}

fn parse_scalars(values: &[String]) -> Result<Vec<Rational>, Failure> {
    values.iter().map(|s| parse_scalar(s)).collect()
}

/// Resolves a batch config into a spec, drawing the small items when they are
/// not given explicitly.
fn batch_spec(file: &BatchFile, seed: Option<u64>) -> Result<BatchInstanceSpec, Failure> {
    let config = |msg: &str| Failure::from(Error::InvalidConfig(msg.to_string()));
    let partition: PartitionSmalls<Rational> = match (&file.smalls, &file.sides) {
        (Some(smalls), Some(sides)) => PartitionSmalls {
            smalls: parse_scalars(smalls)?,
            sides: sides.clone(),
        },
        (None, None) => {
            let seed = seed.or(file.seed).ok_or_else(|| config("batch config needs `seed` or explicit `smalls`"))?;
            let parts = file.parts_per_side.ok_or_else(|| config("batch config needs `parts_per_side`"))?;
            let min_size = file.min_size.as_deref().ok_or_else(|| config("batch config needs `min_size`"))?;
            let grid = file.grid.ok_or_else(|| config("batch config needs `grid`"))?;
            gen_partition_smalls(seed, parts, &parse_scalar(min_size)?, grid)?
        }
        _ => return Err(config("`smalls` and `sides` must be given together")),
    };
    let spec = BatchInstanceSpec {
        n_batches: file.n_batches,
        smalls: partition.smalls,
        sides: partition.sides,
        bin_limit: file.bin_limit,
    };
    spec.validate()?;
    Ok(spec)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.partition.json"))
}

pub fn generate(
    kind: GeneratorKind,
    config: &Path,
    seed: Option<u64>,
    out: Option<&Path>,
    partition_out: Option<&Path>,
) -> CmdResult {
    let text = read(config)?;
    match kind {
        GeneratorKind::Uniform | GeneratorKind::Bounded => {
            let file: GeneratorFile = parse_json(config, &text)?;
            let cfg = GeneratorConfig {
                seed: seed.unwrap_or(file.seed),
                n: file.n,
                min_size: parse_scalar(&file.min_size)?,
                distinct_sizes: file.distinct_sizes,
                grid: file.grid,
            };
            let items = match kind {
                GeneratorKind::Uniform => gen_uniform(&cfg)?,
                _ => gen_bounded(&cfg)?,
            };
            let inst = Instance::new(items, file.bin_limit, parse_scalars(&file.profits)?)?
                .with_min_size_hint(cfg.min_size.clone())?;
            emit(out, &to_json(&InstanceFile::from_instance(&inst)))?;
        }
        GeneratorKind::Batch => {
            let file: BatchFile = parse_json(config, &text)?;
            let spec = batch_spec(&file, seed)?;
            let inst = build_batch_instance(&spec)?;
            let sidecar = to_json(&PartitionFile {
                smalls: spec.smalls.iter().map(ToString::to_string).collect(),
                sides: spec.sides.clone(),
            });
            let sidecar_target = partition_out.map(Path::to_path_buf).or_else(|| out.map(sidecar_path));
            emit(out, &to_json(&InstanceFile::from_instance(&inst)))?;
            if let Some(path) = sidecar_target {
                if let Err(e) = fs::write(&path, sidecar) {
                    if let Some(main) = out {
                        let _ = fs::remove_file(main);
                    }
                    return Err(Failure::io(&path, e));
                }
            }
        }
    }
    Ok(0)
}

const CSV_HEADER: [&str; 9] = [
    "instance",
    "algorithm",
    "profit",
    "opt_value",
    "ratio",
    "ratio_decimal",
    "wall_time_ms",
    "state_count_peak",
    "error",
];

fn expand_globs(patterns: &[String]) -> Result<Vec<PathBuf>, Failure> {
    let mut paths = Vec::new();
    for pattern in patterns {
        let entries =
            glob::glob(pattern).map_err(|e| Failure::new(Kind::Parse, format!("bad glob `{pattern}`: {e}")))?;
        for entry in entries {
            let path = entry.map_err(|e| Failure::io(e.path(), e.error()))?;
            if path.is_file() {
                paths.push(path);
            }
        }
    }
    paths.sort();
    paths.dedup();
    Ok(paths)
}

fn failed_rows(id: &str, algorithms: &[Algorithm], error: &Failure) -> Vec<ComparisonRow<Rational>> {
    algorithms
        .iter()
        .map(|&algorithm| ComparisonRow {
            instance: id.to_string(),
            algorithm,
            profit: None,
            opt_value: None,
            ratio: None,
            wall_time_ms: 0.0,
            state_count_peak: None,
            error: Some(error.message.clone()),
        })
        .collect()
}

fn opt_string(value: &Option<Rational>) -> String {
    value.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// Six-place decimal approximation, for human reading only.
fn decimal(value: &Rational) -> String {
    format!("{:.6}", value.to_f64())
}

fn csv_text(rows: &[ComparisonRow<Rational>]) -> Result<String, Failure> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::new(Kind::Io, e);
    writer.write_record(CSV_HEADER).map_err(csv_err)?;
    for row in rows {
        writer
            .write_record([
                row.instance.clone(),
                row.algorithm.to_string(),
                opt_string(&row.profit),
                opt_string(&row.opt_value),
                opt_string(&row.ratio),
                row.ratio.as_ref().map(decimal).unwrap_or_default(),
                format!("{:.3}", row.wall_time_ms),
                row.state_count_peak.map(|p| p.to_string()).unwrap_or_default(),
                row.error.clone().unwrap_or_default(),
            ])
            .map_err(csv_err)?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure::new(Kind::Io, e))?;
    Ok(String::from_utf8(bytes).expect("utf-8 csv"))
}

#[derive(Serialize)]
struct AlgorithmLine {
    rows: usize,
    rated: usize,
    min_ratio: Option<String>,
    mean_ratio: Option<String>,
    min_ratio_decimal: Option<String>,
    mean_ratio_decimal: Option<String>,
}

#[derive(Serialize)]
struct CompareSummary {
    instances: usize,
    algorithms: std::collections::BTreeMap<String, AlgorithmLine>,
    dnf_half_violated: bool,
}

pub fn compare(patterns: &[String], algorithms: &[String], budget: Option<u64>, out: Option<&Path>) -> CmdResult {
    let mut algs: Vec<Algorithm> = algorithms.iter().map(|a| a.parse()).collect::<Result<_, Error>>()?;
    algs.sort_by_key(ToString::to_string);
    algs.dedup();
    let paths = expand_globs(patterns)?;
    let budgets = budgets(budget);
    let mut rows = Vec::new();
    for path in &paths {
        let id = path.display().to_string();
        match load_valid_instance(path) {
            Ok(inst) => rows.extend(compare_instance(&id, &inst, &algs, budgets)),
            Err(failure) => rows.extend(failed_rows(&id, &algs, &failure)),
        }
    }
    rows.sort_by(|a, b| (&a.instance, a.algorithm.to_string()).cmp(&(&b.instance, b.algorithm.to_string())));

    let summary = summarize(&rows);
    let report = CompareSummary {
        instances: paths.len(),
        algorithms: summary
            .per_algorithm
            .iter()
            .map(|(alg, s)| {
                (
                    alg.to_string(),
                    AlgorithmLine {
                        rows: s.rows,
                        rated: s.rated,
                        min_ratio: s.min_ratio.as_ref().map(ToString::to_string),
                        mean_ratio: s.mean_ratio.as_ref().map(ToString::to_string),
                        min_ratio_decimal: s.min_ratio.as_ref().map(decimal),
                        mean_ratio_decimal: s.mean_ratio.as_ref().map(decimal),
                    },
                )
            })
            .collect(),
        dnf_half_violated: summary.dnf_half_violated,
    };
    emit(out, &csv_text(&rows)?)?;
    let summary_json = to_json(&report);
    if out.is_some() {
        emit(None, &summary_json)?;
    } else {
        eprint!("{summary_json}");
    }
    if summary.dnf_half_violated {
        eprintln!("WARNING: Dual Next Fit earned less than half of the optimum on at least one instance");
    }
    Ok(0)
}

pub fn profile(path: &Path, budget: Option<u64>, format: Format, out: Option<&Path>) -> CmdResult {
    let inst = load_valid_instance(path)?;
    let profile = profile_states_with_budget(&inst, state_budget(budget))?;
    let text = match format {
        Format::Json => to_json(&StateProfileFile::from(&profile)),
        Format::Csv | Format::Table => {
            let mut text = String::from("step,count\n");
            for (i, count) in profile.per_step_counts.iter().enumerate() {
                text.push_str(&format!("{},{count}\n", i + 1));
            }
            text
        }
    };
    emit(out, &text)?;
    Ok(0)
}

pub fn digraph(n: usize, out: Option<&Path>) -> CmdResult {
    let dg = build_transition_digraph::<Rational>(n)?;
    let path = longest_path(&dg);
    emit(out, &to_json(&DigraphFile::new(&dg, Some(&path))))?;
    Ok(0)
}

pub fn gap(config: &Path, seed: Option<u64>, budget: Option<u64>, format: Format, out: Option<&Path>) -> CmdResult {
    let file: BatchFile = parse_json(config, &read(config)?)?;
    let spec = batch_spec(&file, seed)?;
    let report = gap_report_with_budget(&spec, state_budget(budget))?;
    let text = match format {
        Format::Json => to_json(&GapReportFile::from(&report)),
        Format::Table => report.to_string(),
        Format::Csv => {
            let file = GapReportFile::from(&report);
            let mut text = format!("metric,value,decimal\nn_batches,{},{}\n", file.n_batches, file.n_batches);
            for (name, value) in [
                ("opt", &report.opt),
                ("known_good", &report.known_good),
                ("dnf", &report.dnf),
                ("dnf_ratio", &report.dnf_ratio),
                ("ell", &report.ell),
                ("ell_ratio", &report.ell_ratio),
            ] {
                text.push_str(&format!("{name},{value},{:.6}\n", value.to_f64()));
            }
            text
        }
    };
    emit(out, &text)?;
    Ok(0)
}
