use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use p2xp2::catalog::fixtures::{planes, table1_row};
use p2xp2::catalog::{cross_check_tables, load_database, report_theorem_ledgers, screen_report, Report};
use p2xp2::enumeration::{run_search_with, CandidateRecord, Outcome};
use p2xp2::unprojection::{
    ci_euler, euler_ledger, hilbert_burch_numerator, node_count, pattern_feasible, pfaffian_numerator,
    project_type_one, unprojected_series, unprojection_degree, TomJerryPattern,
};
use p2xp2::{cox_bigrading, key_series, wellform, Denominator, Half, HilbertSeries, IntPolynomial, WeightData};

#[derive(Parser)]
#[command(name = "p2xp2", version, about = "Weighted P2xP2 formats for Fano 3-folds")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Weights {
    /// Row grading, e.g. 0,1,2
    #[arg(long, value_parser = halves::<3>, allow_hyphen_values = true)]
    a: [Half; 3],
    /// Column grading, e.g. 4,6,7
    #[arg(long, value_parser = halves::<3>, allow_hyphen_values = true)]
    b: [Half; 3],
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    u: Half,
}

impl Weights {
    fn data(&self) -> anyhow::Result<WeightData> {
        Ok(WeightData::new(self.a, self.b, self.u)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert series of the key variety
    Series {
        #[command(flatten)]
        w: Weights,
        #[arg(long, default_value_t = 40)]
        terms: usize,
    },
    /// Weight matrix and canonical form
    Matrix {
        #[command(flatten)]
        w: Weights,
    },
    /// Cox bigrading and well forming moves
    Wellform {
        #[command(flatten)]
        w: Weights,
    },
    /// Search all formats up to kmax against a series database
    Enumerate {
        #[arg(long, default_value_t = 31)]
        kmax: i64,
        #[arg(long)]
        db: PathBuf,
        /// Write one JSON record per line here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        serial: bool,
    },
    /// Type I projection of a tabulated model from a point of index W
    Project {
        #[arg(long)]
        model: String,
        #[arg(long)]
        carrier: u32,
        /// Weights of the plane D, for checking the unprojection
        #[arg(long, value_delimiter = ',')]
        plane: Option<Vec<u32>>,
    },
    /// Nodes on the rank drop locus of a 3 x 4 matrix
    Nodes {
        #[arg(long, value_parser = halves::<3>, allow_hyphen_values = true)]
        rows: [Half; 3],
        #[arg(long, value_parser = halves::<4>, allow_hyphen_values = true)]
        cols: [Half; 4],
        #[arg(long, value_delimiter = ',', required = true)]
        ambient: Vec<u32>,
    },
    /// Euler characteristics
    #[command(group(ArgGroup::new("mode").required(true).args(["ci", "ledger"])))]
    Euler {
        /// Complete intersection n:d1,d2,...
        #[arg(long)]
        ci: Option<String>,
        /// e(Y_gen),N
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ledger: Option<Vec<i64>>,
    },
    /// Recompute the tabulated results
    #[command(group(ArgGroup::new("which").required(true).multiple(true).args(["theorems", "tables", "screens"])))]
    Report {
        #[arg(long)]
        theorems: bool,
        #[arg(long)]
        tables: bool,
        #[arg(long)]
        screens: bool,
    },
}

fn ints<T: FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| format!("bad integer {x:?}"))).collect()
}

fn halves<const N: usize>(s: &str) -> Result<[Half; N], String> {
    let v: Vec<Half> = s.split(',').map(|x| x.trim().parse().map_err(|e| format!("{e}"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<Half>| format!("expected {N} values, got {}", v.len()))
}

fn big(c: &BigInt) -> Value {
    i64::try_from(c).map_or_else(|_| Value::String(c.to_string()), Value::from)
}

fn coeffs(p: &IntPolynomial) -> Value {
    Value::Array(p.to_dense().iter().map(big).collect())
}

fn series_json(s: &HilbertSeries) -> Value {
    json!({ "numerator": coeffs(&s.numerator), "denominator": s.denominator.weights() })
}

/// What a command produced: text, JSON, and whether it validated.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn report_output(reports: Vec<Report>) -> Output {
    let ok = reports.iter().all(Report::all_pass);
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    Output { text, json: serde_json::to_value(&reports).expect("plain data"), ok }
}

fn run(cmd: Command) -> anyhow::Result<Output> {
    Ok(match cmd {
        Command::Series { w, terms } => {
            let w = w.data()?;
            let s: HilbertSeries = key_series(&w)?;
            let exp = s.expand(terms);
            let text = format!(
                "{w}\nk = {}\nP(t) = ({}) / {}\n{}",
                w.k(),
                s.numerator,
                s.denominator,
                exp.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            );
            let mut j = series_json(&s);
            j["weight_data"] = serde_json::to_value(w)?;
            j["k"] = w.k().into();
            j["expansion"] = exp.iter().map(big).collect();
            Output::ok(text, j)
        }
        Command::Matrix { w } => {
            let w = w.data()?;
            let m = w.weight_matrix();
            let c = w.canonical();
            let text = format!("matrix {m}\ndegrees {:?}\nk = {}\ncanonical {c}", m.degrees(), w.k());
            let j = json!({ "matrix": m.rows(), "degrees": m.degrees(), "k": w.k(), "canonical": c });
            Output::ok(text, j)
        }
        Command::Wellform { w } => {
            let w = w.data()?;
            let c = cox_bigrading(&w);
            let wf = wellform(&c);
            let row = |r: &[i64; 6]| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let mut text = format!("bigrading {} / {}\n", row(&c.rows[0]), row(&c.rows[1]));
            for mv in &wf.moves {
                text += &format!("{mv}\n");
            }
            text += &format!(
                "well formed {} / {}\nbreaks segre: {}",
                row(&wf.bigrading.rows[0]),
                row(&wf.bigrading.rows[1]),
                wf.breaks_segre
            );
            let moves: Vec<String> = wf.moves.iter().map(|m| m.to_string()).collect();
            let j = json!({
                "bigrading": c.rows,
                "moves": moves,
                "wellformed": wf.bigrading.rows,
                "breaks_segre": wf.breaks_segre,
            });
            Output::ok(text, j)
        }
        Command::Enumerate { kmax, db, out, serial } => {
            let db = load_database(&db).with_context(|| format!("reading {}", db.display()))?;
            let start = Instant::now();
            let records = run_search_with(kmax, &db, !serial);
            let secs = start.elapsed().as_secs_f64();
            if let Some(path) = &out {
                write_records(path, &records)?;
            }
            let matched: Vec<&CandidateRecord> = records.iter().filter(|r| r.verdict == Outcome::Matched).collect();
            let mut hist = vec![0usize; kmax.max(0) as usize + 1];
            for r in &matched {
                hist[r.k as usize] += 1;
            }
            let mut text = format!("{} formats, {} matches, {secs:.2}s\n", records.len(), matched.len());
            for r in &matched {
                text += &format!("k={:<3} {}  {}\n", r.k, r.weight_data, r.matched_id.as_deref().unwrap_or(""));
            }
            text += &format!("matches by k: {:?}", &hist[1..]);
            let ids: Vec<Value> = matched
                .iter()
                .map(|r| json!({ "k": r.k, "weight_data": r.weight_data, "id": r.matched_id, "ambient": r.ambient }))
                .collect();
            let j = json!({ "formats": records.len(), "matched": ids, "histogram": &hist[1..], "seconds": secs });
            Output::ok(text, j)
        }
        Command::Project { model, carrier, plane } => project(&model, carrier, plane)?,
        Command::Nodes { rows, cols, ambient } => {
            let num: IntPolynomial = hilbert_burch_numerator(rows, cols)?;
            let den = Denominator::new(ambient)?;
            let n = node_count(&num, &den)?;
            let text = format!("numerator {num}\nnodes {n}");
            Output::ok(text, json!({ "numerator": coeffs(&num), "nodes": big(&n) }))
        }
        Command::Euler { ci, ledger } => match (ci, ledger) {
            (Some(ci), _) => {
                let (n, ds) = ci.split_once(':').ok_or_else(|| ParseError(format!("expected n:d1,..., got {ci:?}")))?;
                let n: usize = n.trim().parse().map_err(|_| ParseError(format!("bad dimension {n:?}")))?;
                let ds: Vec<i64> = ints(ds).map_err(ParseError)?;
                let e = ci_euler(n, &ds)?;
                Output::ok(format!("e = {e}"), json!({ "n": n, "degrees": ds, "euler": e }))
            }
            (None, Some(l)) => {
                let [ey, nodes] = l[..] else { return Err(ParseError("expected eY,N".into()).into()) };
                let e = euler_ledger(ey, nodes);
                Output::ok(format!("e = {e}"), json!({ "e_y_gen": ey, "nodes": nodes, "euler": e }))
            }
            (None, None) => unreachable!("clap requires one of the group"),
        },
        Command::Report { theorems, tables, screens } => {
            let mut reports = Vec::new();
            if theorems {
                reports.push(report_theorem_ledgers());
            }
            if tables {
                reports.push(cross_check_tables());
            }
            if screens {
                reports.push(screen_report());
            }
            report_output(reports)
        }
    })
}

fn project(id: &str, carrier: u32, plane: Option<Vec<u32>>) -> anyhow::Result<Output> {
    let row = table1_row(id).ok_or_else(|| anyhow!("no tabulated model {id}"))?;
    let m = row.model().ok_or_else(|| anyhow!("row {id} has no P2xP2 model"))?;
    let p = project_type_one(&m, carrier)?;
    let y_num: IntPolynomial = pfaffian_numerator(&p.skew)?;
    let y = HilbertSeries::new(y_num, Denominator::new(p.skew.ambient_weights.iter().copied())?);
    let mut text = format!(
        "entry ({},{}) of degree {carrier}\nrow weights {}\ndegrees {}\nP_Y = ({}) / {}",
        p.entry.0,
        p.entry.1,
        p.skew.row_weights.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(","),
        p.skew.degree_display(),
        y.numerator,
        y.denominator
    );
    let mut j = json!({
        "model": id,
        "entry": [p.entry.0, p.entry.1],
        "skew": p.skew,
        "degrees": p.skew.degree_display(),
        "y_series": series_json(&y),
    });
    let plane = plane.or_else(|| {
        planes().iter().find(|r| row.matches_id(&r.series) && r.weight == carrier as i64).map(|r| r.plane.clone())
    });
    let mut ok = true;
    if let Some(plane) = plane {
        let b = unprojection_degree(Some(-1), &plane)?;
        let x = unprojected_series(&y, carrier, &plane)?;
        let agrees = x.same_function(&m.series());
        ok = agrees && b == carrier as i64;
        let mut ideal = p.skew.ambient_weights.clone();
        for w in &plane {
            let i = ideal.iter().position(|v| v == w).ok_or_else(|| anyhow!("plane weight {w} not in the ambient"))?;
            ideal.remove(i);
        }
        let patterns: Vec<TomJerryPattern> = (1..=5)
            .map(|i| TomJerryPattern::tom(i, ideal.clone()))
            .chain(
                (1..=5)
                    .flat_map(|i| (i + 1..=5).map(move |j| (i, j)))
                    .map(|(i, j)| TomJerryPattern::jerry(i, j, ideal.clone())),
            )
            .collect();
        let feasible: Vec<String> =
            patterns.iter().filter(|t| pattern_feasible(&p.skew, t)).map(|t| t.kind.to_string()).collect();
        text += &format!(
            "\nD = P({}) unprojects to degree {b}; series check {}\nfeasible patterns: {}",
            plane.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","),
            if agrees { "ok" } else { "FAILED" },
            if feasible.is_empty() { "none".into() } else { feasible.join(" ") }
        );
        j["plane"] = json!(plane);
        j["unprojection_degree"] = b.into();
        j["series_agrees"] = agrees.into();
        j["feasible_patterns"] = json!(feasible);
    }
    Ok(Output { text, json: j, ok })
}

fn write_records(path: &PathBuf, records: &[CandidateRecord]) -> anyhow::Result<()> {
    let mut f = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    for r in records {
        serde_json::to_writer(&mut f, r)?;
        f.write_all(b"\n")?;
    }
    f.flush()?;
    Ok(())
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct ParseError(String);

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<p2xp2::Error>() {
            return if err.is_input_error() { 2 } else { 1 };
        }
        if cause.is::<std::io::Error>() || cause.is::<ParseError>() || cause.is::<serde_json::Error>() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
