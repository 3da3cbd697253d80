mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bacon_shor::bounds::{check_bounds_with_cap, hadamard_matrix, profile, verify_feasibility, BoundReport};
use bacon_shor::codefile::{self, CodeJson};
use bacon_shor::gbs::theoretical_params;
use bacon_shor::regions::{self, Region};
use bacon_shor::search::{gv_search_with, GvQuery};
use bacon_shor::subsystem::{DistanceMode, DistanceResult};
use bacon_shor::verify::{self, SuiteReport};
use bacon_shor::{gf2, localize, pad_full, BitMatrix, GbsCode, SubsystemCode, DEFAULT_CAP};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use report::{Recorder, Report};

#[derive(Parser)]
#[command(name = "bacon-shor", version, about = "Generalized Bacon-Shor subsystem codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Oracle {
    None,
    Full,
    Bounded,
}

#[derive(Subcommand)]
enum Command {
    /// Predicted parameters of the code of a matrix, optionally checked by a distance oracle.
    Analyze {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "none")]
        oracle: Oracle,
        /// Weight limit for the bounded oracle.
        #[arg(long, default_value_t = 4)]
        w_max: usize,
        /// Largest number of group elements an enumeration may visit.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the derived code file (text, or JSON for a `.json` path).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nearest-neighbour form of the code of a matrix.
    Localize {
        #[arg(long)]
        matrix: PathBuf,
        /// Fill every free slot with a pure gauge qubit.
        #[arg(long)]
        pad: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Random search for a rank-k matrix with large row and column distances.
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the matrix found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameter bounds and profile feasibility of a matrix.
    Bounds {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Write the Hadamard matrix of order 2^k - 1.
    Hadamard {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Logical operator counts, boundary and restriction check for a region.
    Regions {
        /// Code file (text or JSON).
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        code: Option<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Qubit list "0,1,2" or cell rectangle "r0:r1,c0:c1" (half-open).
        #[arg(long)]
        region: String,
        /// Interaction range; defaults to the largest generator diameter.
        #[arg(long)]
        range: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Every nonzero matrix of every shape up to m x m.
    Theorem2Exhaustive {
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Cleaning identity for the worked example and random codes.
    Cleaning {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ancilla extension preserves k and distance.
    Lemma3 {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Restriction dichotomy on random local codes.
    Restriction {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            for v in &report.violations {
                eprintln!("violation: {v}");
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Analyze { matrix, oracle, w_max, cap, threads, out } => {
            analyze(&matrix, oracle, w_max, cap, threads, out.as_deref())
        }
        Command::Localize { matrix, pad, out } => localize_cmd(&matrix, pad, out.as_deref()),
        Command::Verify { suite } => verify_cmd(suite),
        Command::Search { m, k, beta, trials, seed, threads, out } => {
            search(GvQuery { m, k, beta, max_trials: trials, seed }, threads, out.as_deref())
        }
        Command::Bounds { matrix, cap } => bounds(&matrix, cap),
        Command::Hadamard { k, out } => hadamard(k, out.as_deref()),
        Command::Regions { code, matrix, region, range, cap } => {
            regions_cmd(code.as_deref(), matrix.as_deref(), &region, range, cap)
        }
    }
}

fn read_matrix(rec: &mut Recorder, path: &Path) -> Result<BitMatrix> {
    let text = rec.read(path)?;
    text.parse().with_context(|| format!("parsing matrix {}", path.display()))
}

fn write_code(path: &Path, code: &SubsystemCode, distance: Option<usize>) -> Result<()> {
    let text = if path.extension().is_some_and(|e| e == "json") {
        serde_json::to_string_pretty(&CodeJson::from_code(code, distance))? + "\n"
    } else {
        codefile::write_text(code)
    };
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn code_summary(code: &SubsystemCode) -> Value {
    json!({
        "n": code.num_qubits(),
        "k": code.logical_qubits(),
        "g": code.gauge_qubits(),
        "dim_s": code.stabilizer().dim(),
        "dim_g": code.gauge().dim(),
    })
}

fn distance_json(d: &DistanceResult) -> Value {
    let mode = match d.mode {
        DistanceMode::Full => json!("full"),
        DistanceMode::Bounded { w_max } => json!({ "bounded": w_max }),
    };
    json!({
        "mode": mode,
        "value": d.value,
        "certified_lower_bound": d.certified_lower_bound,
        "witness": d.witness.as_ref().map(|w| w.to_string()),
    })
}

fn analyze(path: &Path, oracle: Oracle, w_max: usize, cap: u64, threads: usize, out: Option<&Path>) -> Result<Report> {
    let mut rec = Recorder::new(
        "analyze",
        json!({ "matrix": path, "oracle": format!("{oracle:?}").to_lowercase(), "w_max": w_max, "cap": cap, "threads": threads }),
    );
    let a = read_matrix(&mut rec, path)?;
    let theory = theoretical_params(&a, cap)?;
    let gbs = GbsCode::build(&a)?;
    let code = gbs.code();
    rec.check(code.num_qubits() == theory.n && code.logical_qubits() == theory.k, || {
        format!("derived k = {} but rank(A) = {}", code.logical_qubits(), theory.k)
    });

    let distance = match oracle {
        Oracle::None => None,
        Oracle::Full => Some(code.distance_full_with(cap, threads)?),
        Oracle::Bounded => Some(code.distance_bounded(w_max)?),
    };
    if let Some(d) = &distance {
        match d.value {
            Some(v) => rec.check(v == theory.d, || format!("oracle distance {v} but min(d_row, d_col) = {}", theory.d)),
            None => rec.check(theory.d > w_max, || {
                format!("no logical of weight <= {w_max} found but min(d_row, d_col) = {}", theory.d)
            }),
        }
    }
    let bounds = if theory.k >= 1 { Some(BoundReport::from_params(&theory)?) } else { None };
    if let Some(b) = &bounds {
        rec.check(b.all_pass(), || format!("parameter bounds violated: {b:?}"));
    }
    if let Some(out) = out {
        write_code(out, code, distance.as_ref().and_then(|d| d.value))?;
    }
    eprintln!(
        "[[{}, {}, {}]] with d_row = {}, d_col = {}{}",
        theory.n,
        theory.k,
        theory.d,
        theory.d_row,
        theory.d_col,
        distance
            .as_ref()
            .map(|d| match d.value {
                Some(v) => format!("; oracle distance {v}"),
                None => format!("; no dressed logical of weight <= {}", d.certified_lower_bound),
            })
            .unwrap_or_default()
    );
    Ok(rec.finish(json!({
        "theory": theory,
        "derived": code_summary(code),
        "generators": code.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "distance": distance.as_ref().map(distance_json),
        "bounds": bounds,
    })))
}

fn localize_cmd(path: &Path, pad: bool, out: Option<&Path>) -> Result<Report> {
    let mut rec = Recorder::new("localize", json!({ "matrix": path, "pad": pad, "out": out }));
    let a = read_matrix(&mut rec, path)?;
    let gbs = GbsCode::build(&a)?;
    let local = localize(&gbs)?;
    let before = local.code().num_qubits();
    let local = if pad { pad_full(&local)? } else { local };
    let code = local.code();
    let is_local = local.is_local();
    rec.check(is_local, || "a generator is not nearest-neighbour".into());
    rec.check(code.logical_qubits() == a.rank(), || {
        format!("k = {} after localizing but rank(A) = {}", code.logical_qubits(), a.rank())
    });
    if let Some(out) = out {
        write_code(out, code, None)?;
    }
    eprintln!(
        "{} qubits + {} ancillas = {} before padding, {} after; k = {}; local = {}",
        local.original_qubits(),
        local.ancilla_count(),
        before,
        code.num_qubits(),
        code.logical_qubits(),
        is_local
    );
    Ok(rec.finish(json!({
        "original_qubits": local.original_qubits(),
        "ancillas": local.ancilla_count(),
        "chains": local.chains().len(),
        "qubits_before_padding": before,
        "padding": local.padding_count(),
        "grid": [local.layout().rows(), local.layout().cols()],
        "check_locality": is_local,
        "derived": code_summary(code),
    })))
}

fn suite_value(rec: &mut Recorder, report: SuiteReport) -> Value {
    eprintln!(
        "{}: {} instances, {} failures, {} inconclusive",
        report.suite,
        report.instances,
        report.failures.len(),
        report.inconclusive
    );
    for f in &report.failures {
        rec.violation(f.clone());
    }
    serde_json::to_value(&report).expect("suite reports serialize")
}

fn verify_cmd(suite: Suite) -> Result<Report> {
    let (name, args) = match &suite {
        Suite::Theorem2Exhaustive { m } => ("theorem2-exhaustive", json!({ "m": m })),
        Suite::Cleaning { n, trials, seed } => ("cleaning", json!({ "n": n, "trials": trials, "seed": seed })),
        Suite::Lemma3 { n, trials, seed } => ("lemma3", json!({ "n": n, "trials": trials, "seed": seed })),
        Suite::Restriction { trials, seed } => ("restriction", json!({ "trials": trials, "seed": seed })),
    };
    let mut rec = Recorder::new(&format!("verify {name}"), args);
    let report = match suite {
        Suite::Theorem2Exhaustive { m } => verify::theorem2_exhaustive(m)?,
        Suite::Cleaning { n, trials, seed } => verify::cleaning(n, trials, seed)?,
        Suite::Lemma3 { n, trials, seed } => verify::lemma3(n, trials, seed)?,
        Suite::Restriction { trials, seed } => verify::restriction(trials, seed)?,
    };
    let value = suite_value(&mut rec, report);
    Ok(rec.finish(value))
}

fn search(query: GvQuery, threads: usize, out: Option<&Path>) -> Result<Report> {
    let mut rec = Recorder::new("search", json!({ "query": query, "threads": threads, "out": out }));
    let result = gv_search_with(&query, threads)?;
    let mut value = serde_json::to_value(&result)?;
    if let Some(a) = &result.matrix {
        // Re-certify independently of the search's own bookkeeping.
        let target = query.target_distance();
        let (d_row, _) = gf2::min_weight_nonzero(&a.row_space(), DEFAULT_CAP)?;
        let (d_col, _) = gf2::min_weight_nonzero(&a.column_space(), DEFAULT_CAP)?;
        rec.check(a.rank() == query.k, || format!("matrix has rank {} not {}", a.rank(), query.k));
        rec.check(d_row >= target && d_col >= target, || {
            format!("certificate fails: d_row = {d_row}, d_col = {d_col}, target {target}")
        });
        value["target_distance"] = json!(target);
        value["matrix"] = json!(a.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>());
        if let Some(out) = out {
            std::fs::write(out, a.to_string()).with_context(|| format!("writing {}", out.display()))?;
        }
    }
    eprintln!(
        "search m={} k={} beta={}: found = {} after {} trials",
        query.m, query.k, query.beta, result.found, result.trials_used
    );
    Ok(rec.finish(value))
}

fn bounds(path: &Path, cap: u64) -> Result<Report> {
    let mut rec = Recorder::new("bounds", json!({ "matrix": path, "cap": cap }));
    let a = read_matrix(&mut rec, path)?;
    let report = check_bounds_with_cap(&a, cap)?;
    let p = profile(&a)?;
    let feasible = verify_feasibility(&p, report.n, report.d_row, report.d_col);
    rec.check(report.all_pass(), || format!("parameter bounds violated: {report:?}"));
    rec.check(feasible, || "profile constraints violated".into());
    eprintln!(
        "n = {}, k = {}, d_row = {}, d_col = {}; slacks {}, {}, {}; profile feasible = {feasible}",
        report.n, report.k, report.d_row, report.d_col, report.product_slack, report.refined_slack, report.rate_slack
    );
    Ok(rec.finish(json!({
        "bounds": report,
        "profile": {
            "row_indices": p.row_indices,
            "col_indices": p.col_indices,
            "r": p.r,
            "c": p.c,
            "m": p.m.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "feasible": feasible,
        },
    })))
}

fn hadamard(k: usize, out: Option<&Path>) -> Result<Report> {
    let rec = Recorder::new("hadamard", json!({ "k": k, "out": out }));
    let h = hadamard_matrix(k)?;
    match out {
        Some(out) => std::fs::write(out, h.to_string()).with_context(|| format!("writing {}", out.display()))?,
        None => eprint!("{h}"),
    }
    Ok(rec.finish(json!({ "size": h.num_rows(), "n": h.weight(), "rank": h.rank() })))
}

fn parse_range(s: &str) -> Result<std::ops::Range<usize>> {
    let (a, b) = s.split_once(':').context("expected lo:hi")?;
    Ok(a.trim().parse()?..b.trim().parse()?)
}

fn parse_region(code: &SubsystemCode, spec: &str) -> Result<Region> {
    let n = code.num_qubits();
    if spec.contains(':') {
        let (rows, cols) = spec.split_once(',').context("rectangle regions are r0:r1,c0:c1")?;
        let layout = code.layout().context("rectangle regions need a layout")?;
        return Ok(Region::new(n, layout.qubits_in_rect(parse_range(rows)?, parse_range(cols)?))?);
    }
    let members = spec
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad qubit index {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Region::new(n, members)?)
}

fn regions_cmd(code_path: Option<&Path>, matrix: Option<&Path>, spec: &str, range: Option<usize>, cap: u64) -> Result<Report> {
    let mut rec = Recorder::new(
        "regions",
        json!({ "code": code_path, "matrix": matrix, "region": spec, "range": range, "cap": cap }),
    );
    let code = match (code_path, matrix) {
        (Some(path), _) => {
            let text = rec.read(path)?;
            if path.extension().is_some_and(|e| e == "json") {
                serde_json::from_str::<CodeJson>(&text)?.to_code()?
            } else {
                codefile::parse_text(&text)?
            }
        }
        (None, Some(path)) => GbsCode::build(&read_matrix(&mut rec, path)?)?.into_code(),
        (None, None) => bail!("one of --code or --matrix is required"),
    };
    let m = parse_region(&code, spec)?;
    let l = regions::logical_count(&code, &m)?;
    let l_bare = regions::bare_logical_count(&code, &m)?;
    let l_complement = regions::logical_count(&code, &m.complement())?;
    let cleaning = regions::cleaning_check(&code, &m)?;
    rec.check(cleaning, || "cleaning identity violated".into());

    let mut result = json!({
        "region": m.members(),
        "k": code.logical_qubits(),
        "l": l,
        "l_bare": l_bare,
        "l_complement": l_complement,
        "cleaning_holds": cleaning,
    });
    if let (Some(layout), Some(r)) = (code.layout(), range.or(code.interaction_range())) {
        let boundary = regions::boundary(layout, &m, r)?;
        result["range"] = json!(r);
        result["boundary"] = json!(boundary.members());
        if code.logical_qubits() >= 1 {
            match regions::restriction_check(&code, &m, r, None, cap) {
                Ok(check) => {
                    rec.check(check.holds != Some(false), || format!("restriction dichotomy violated: {check:?}"));
                    result["restriction"] = json!({
                        "distance": check.distance,
                        "boundary_size": check.boundary_size,
                        "restricted_k": check.restricted_k,
                        "restricted_distance": check.restricted_distance,
                        "holds": check.holds,
                    });
                }
                Err(bacon_shor::Error::CapExceeded { .. }) => result["restriction"] = json!("inconclusive"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    eprintln!(
        "|M| = {}: l = {l}, l_bare = {l_bare}, l(complement) = {l_complement}, 2k = {}; cleaning holds = {cleaning}",
        m.len(),
        2 * code.logical_qubits()
    );
    Ok(rec.finish(result))
}
