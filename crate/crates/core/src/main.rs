use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use heptaknot::census::{
    census, embedding_seed, sample_embedding, summarize, CensusError, LinearEmbedding,
};
use heptaknot::cli_io::{
    append_records, describe_geometry_error, error_report, exit_code_for_census, point_file_string,
    points_to_json, read_point_file, repro_json, CensusRecord, ClassifyOutput, InputError,
    EXIT_DISAGREEMENT, EXIT_VALIDATION,
};
use heptaknot::geometry::GeometryError;
use heptaknot::oracle::{
    alexander_polynomial, knot_determinant, pick_generic_direction, project_to_diagram, KnotClass,
    OracleError, PolygonalKnot,
};
use heptaknot::radon::{build_table, classify_by_radon, Heptagon, Labeling, RadonVerdict};

#[derive(Parser)]
#[command(name = "heptaknot", version, about = "Heptagonal figure-8 recognition and K7 knot census")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a polygon given by a point file.
    Classify {
        path: PathBuf,
        /// Only run the projection/Alexander oracle (accepts 3..=12 points).
        #[arg(long, conflicts_with = "radon_only")]
        oracle_only: bool,
        /// Only run the Radon-table matcher (requires 7 points).
        #[arg(long)]
        radon_only: bool,
        /// Seed of the projection direction sequence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render the 7x3 penetration table of a heptagon.
    Table {
        path: PathBuf,
        /// Labeling as `base,direction`, e.g. `0,1` or `3,-1`.
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        labeling: String,
    },
    /// Classify every Hamiltonian cycle of K6/K7 embeddings.
    Census {
        /// Embedding point file (6 or 7 points). Omit when sampling.
        path: Option<PathBuf>,
        /// Sample embeddings of K_n instead of reading a file.
        #[arg(long, conflicts_with = "path")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Append one JSON record per embedding to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where repro files go when the classifiers disagree.
        #[arg(long)]
        repro_dir: Option<PathBuf>,
    },
    /// Write a sampled general-position embedding as a point file.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            kind: "validation",
            message: message.into(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::validation(e.to_string())
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::validation(describe_geometry_error(&e))
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Geometry(g) => g.into(),
            OracleError::UnexpectedDeterminant(_) => Failure {
                code: EXIT_DISAGREEMENT,
                kind: "internal",
                message: e.to_string(),
            },
            other => Failure::validation(other.to_string()),
        }
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        let code = exit_code_for_census(&e);
        let kind = match code {
            EXIT_DISAGREEMENT => "disagreement",
            EXIT_VALIDATION => "validation",
            _ => "sampling",
        };
        let message = match &e {
            CensusError::Geometry(g) => describe_geometry_error(g),
            other => other.to_string(),
        };
        Failure { code, kind, message }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", error_report(f.kind, &f.message));
            ExitCode::from(f.code as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Classify {
            path,
            oracle_only,
            radon_only,
            seed,
        } => classify(cli.format, path, *oracle_only, *radon_only, *seed),
        Command::Table { path, labeling } => table(cli.format, path, labeling),
        Command::Census {
            path,
            sample,
            seed,
            count,
            out,
            repro_dir,
        } => run_census(cli.format, path.as_deref(), *sample, *seed, *count, out.as_deref(), repro_dir.as_deref()),
        Command::Sample { n, seed, out } => {
            let e = sample_embedding(*n, *seed)?;
            let text = point_file_string(e.points());
            match out {
                Some(p) => std::fs::write(p, text)
                    .map_err(|e| Failure::validation(format!("cannot write {}: {e}", p.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}

fn table_rows(h: &Heptagon, lab: Labeling) -> Result<Vec<String>, GeometryError> {
    Ok(build_table(h, lab)?.render().lines().map(str::to_owned).collect())
}

fn classify(format: Format, path: &Path, oracle_only: bool, radon_only: bool, seed: u64) -> Result<(), Failure> {
    let points = read_point_file(path)?;
    let n = points.len();
    if radon_only && n != 7 {
        return Err(Failure::validation(format!("expected 7 points for heptagon mode, got {n}")));
    }
    if !oracle_only && !radon_only && !(6..=7).contains(&n) {
        return Err(Failure::validation(if n < 6 {
            format!("expected ≥ 6 points for heptagon/hexagon modes, got {n}")
        } else {
            format!("expected at most 7 points for heptagon/hexagon modes, got {n}; use --oracle-only")
        }));
    }
    let mut out = ClassifyOutput {
        points: n,
        input_fingerprint: heptaknot::census::fingerprint(&points),
        seed,
        knot_class: None,
        determinant: None,
        alexander: None,
        direction: None,
        rs_match: None,
        table_labeling: None,
        penetration_table: None,
    };
    if !radon_only {
        let knot = PolygonalKnot::new(points.clone())?;
        let direction = pick_generic_direction(&knot, seed)?;
        let diagram = project_to_diagram(&knot, direction)?;
        let det = knot_determinant(&diagram)?;
        out.direction = Some(direction);
        out.determinant = Some(det);
        out.alexander = Some(alexander_polynomial(&diagram)?.to_string());
        if n <= 7 {
            out.knot_class = Some(KnotClass::from_determinant(det)?);
        }
    }
    if n == 7 && !oracle_only {
        let h = Heptagon::new(points)?;
        let verdict = classify_by_radon(&h)?;
        let lab = match verdict {
            RadonVerdict::Figure8(m) => {
                out.rs_match = Some(m);
                m.labeling
            }
            RadonVerdict::NotFigure8 => Labeling::IDENTITY,
        };
        out.table_labeling = Some(lab);
        out.penetration_table = Some(table_rows(&h, lab)?);
        if let Some(class) = out.knot_class {
            if verdict.is_figure8() != (class == KnotClass::Figure8) {
                print_classify(format, &out);
                return Err(Failure {
                    code: EXIT_DISAGREEMENT,
                    kind: "disagreement",
                    message: format!(
                        "oracle says {class:?} but the Radon matcher says figure-8 = {}",
                        verdict.is_figure8()
                    ),
                });
            }
        }
    }
    print_classify(format, &out);
    Ok(())
}

fn print_classify(format: Format, out: &ClassifyOutput) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(out).expect("serializable")),
        Format::Text => {
            let class = out
                .knot_class
                .map_or_else(|| "unknown".to_owned(), |c| format!("{c:?}"));
            println!("knot class: {class}");
            if let Some(d) = out.determinant {
                println!("determinant: {d}");
            }
            if let Some(a) = &out.alexander {
                println!("alexander: {a}");
            }
            match &out.rs_match {
                Some(m) => println!("radon: {} (sign {:+}) at labeling {}", m.pattern, m.global_sign, m.labeling),
                None if out.penetration_table.is_some() => println!("radon: no RS pattern"),
                None => {}
            }
            if let Some(rows) = &out.penetration_table {
                for r in rows {
                    println!("{r}");
                }
            }
        }
    }
}

fn parse_labeling(text: &str) -> Result<Labeling, Failure> {
    let bad = || Failure::validation(format!("labeling must be `base,direction` with base 0..6 and direction ±1, got {text:?}"));
    let (b, d) = text.split_once(',').ok_or_else(bad)?;
    let base: usize = b.trim().parse().map_err(|_| bad())?;
    let dir: i8 = d.trim().trim_start_matches('+').parse().map_err(|_| bad())?;
    Labeling::new(base, dir).ok_or_else(bad)
}

fn table(format: Format, path: &Path, labeling: &str) -> Result<(), Failure> {
    let lab = parse_labeling(labeling)?;
    let points = read_point_file(path)?;
    if points.len() != 7 {
        return Err(Failure::validation(format!("expected 7 points for heptagon mode, got {}", points.len())));
    }
    let h = Heptagon::new(points)?;
    let t = build_table(&h, lab)?;
    match format {
        Format::Text => print!("{}", t.render()),
        Format::Json => {
            let rows: Vec<String> = t.render().lines().map(str::to_owned).collect();
            let m = heptaknot::radon::match_rs(&t);
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "labeling": lab,
                    "rows": rows,
                    "pattern": m.map(|(p, _)| p),
                    "global_sign": m.map(|(_, s)| s.as_i8()),
                }))
                .expect("serializable")
            );
        }
    }
    Ok(())
}

fn run_census(
    format: Format,
    path: Option<&Path>,
    sample: Option<usize>,
    seed: u64,
    count: u64,
    out: Option<&Path>,
    repro_dir: Option<&Path>,
) -> Result<(), Failure> {
    let mut jobs: Vec<(Option<u64>, Option<u64>, LinearEmbedding)> = Vec::new();
    match (path, sample) {
        (Some(p), None) => jobs.push((None, None, LinearEmbedding::new(read_point_file(p)?)?)),
        (None, Some(n)) => {
            for i in 0..count {
                let s = embedding_seed(seed, i);
                jobs.push((Some(i), Some(s), sample_embedding(n, s)?));
            }
        }
        _ => return Err(Failure::validation("census needs either a point file or --sample N")),
    }
    let n = jobs[0].2.n();
    let mut records = Vec::with_capacity(jobs.len());
    for (index, emb_seed, e) in &jobs {
        let start = Instant::now();
        let report = match census(e) {
            Ok(r) => r,
            Err(CensusError::AgreementFailure(repro)) => {
                let dir = repro_dir.map(Path::to_path_buf).unwrap_or_else(|| {
                    out.and_then(Path::parent).map(Path::to_path_buf).unwrap_or_default()
                });
                let file = dir.join(format!("repro-{}-{}.json", e.fingerprint(), repro.cycle.iter().map(usize::to_string).collect::<Vec<_>>().join("")));
                let _ = std::fs::write(&file, repro_json(&repro));
                return Err(Failure {
                    code: EXIT_DISAGREEMENT,
                    kind: "disagreement",
                    message: format!("{} (repro written to {})", CensusError::AgreementFailure(repro), file.display()),
                });
            }
            Err(other) => return Err(other.into()),
        };
        records.push(CensusRecord {
            command: "census".into(),
            n,
            seed: sample.map(|_| seed),
            index: *index,
            embedding_seed: *emb_seed,
            input_fingerprint: e.fingerprint(),
            points: points_to_json(e.points()),
            report,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    if let Some(p) = out {
        append_records(p, &records)
            .map_err(|e| Failure::validation(format!("cannot append to {}: {e}", p.display())))?;
    }
    let summary = summarize(n, records.iter().map(|r| (r.embedding_seed, &r.report)));
    let min_trefoil = records.iter().map(|r| r.report.trefoil).min().unwrap_or(0);
    let max_nontrivial = records.iter().map(|r| r.report.nontrivial()).max().unwrap_or(0);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "n": n,
                "embeddings": summary.samples,
                "best_c": summary.best_c,
                "best_fingerprint": summary.best_fingerprint,
                "best_seed": summary.best_seed,
                "histogram": summary.histogram,
                "min_trefoil": min_trefoil,
                "max_nontrivial": max_nontrivial,
                "note": "best_c is the largest c(f) among the sampled embeddings: a lower bound on the maximum over all embeddings, not its exact value",
            }))
            .expect("serializable")
        ),
        Format::Text => {
            println!("K{n} census over {} embedding(s)", summary.samples);
            println!("best c(f) = {} (empirical lower bound) at {}", summary.best_c, summary.best_fingerprint);
            println!("min trefoil count = {min_trefoil}, max nontrivial count = {max_nontrivial}");
            for (c, k) in &summary.histogram {
                println!("c(f) = {c}: {k}");
            }
        }
    }
    Ok(())
}
