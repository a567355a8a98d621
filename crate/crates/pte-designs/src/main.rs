//! Command-line entry point: JSON in, JSON out, exact arithmetic inside.
//!
//! Exit codes: 0 ok, 1 verification-invalid, 2 usage or input error.
//! `search` subcommands stream JSON-lines results followed by a summary
//! record; everything else emits a single report object.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use pte_designs::ellipse::{
    first_failing_degree, is_design, shell_points, DesignSet, EllipsePoint,
};
use pte_designs::equivalence::{are_equivalent, square_ratio_obstruction};
use pte_designs::families;
use pte_designs::pte::{verify, PteSolution};
use pte_designs::rat::Rat;
use pte_designs::report::{Outcome, Report};
use pte_designs::search::{search_pte, stroud_witness, DedupMode, SearchSpec};
use pte_designs::transform::{
    cyclic_lift, orbit_design, rational_rotation, tight_generator,
};
use pte_designs::Error;

#[derive(Parser)]
#[command(
    name = "pte-designs",
    about = "Exact verification and construction of ellipsoidal designs and power-sum solutions",
    version
)]
struct Cli {
    /// Seed echoed into reports; reserved for sampled auxiliary data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a design or solution file against its claimed degree.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Emit a parametric family instance with its verification report.
    Gen(GenArgs),
    /// Affine containment both ways, plus the square-ratio obstruction.
    Equiv(EquivArgs),
    /// Exhaustive searches with explicit budgets.
    Search {
        #[command(subcommand)]
        what: SearchCmd,
    },
    /// Integer points on C_D(r).
    Shell {
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        norm: String,
    },
    /// Orbit of a point under the finite-order generator for D.
    Orbit {
        #[arg(long = "D")]
        d: u64,
        /// Point as "x,y" with rational coordinates.
        #[arg(long)]
        point: String,
    },
    /// Apply the rational rotation with parameter t to a design file.
    Rotate {
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        t: String,
        #[arg(long)]
        file: PathBuf,
    },
    /// Cyclically lift a symmetric one-dimensional solution file.
    Lift {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Power-sum design check at the given degree.
    Design {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    /// Mixed power-sum check at the solution's claimed degree.
    Pte {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    /// borwein1d | borwein2d | alpers-tijdeman | at-symmetric | hexagon |
    /// hexagon1d | mlsu | chernick | bessel2
    family: String,
    /// Family parameters as name=value, e.g. --param m=2 --param n=4.
    #[arg(long = "param")]
    params: Vec<String>,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    /// Only compute the square-ratio certificate.
    #[arg(long)]
    obstruction_only: bool,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// All valid disjoint solutions inside a coordinate box.
    Pte {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value = "none")]
        dedup: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Scan a pool for sub-tight designs (none should exist).
    Stroud {
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        norm: String,
        #[arg(long)]
        degree: u32,
        /// Pool file; defaults to the integer shell of C_D(norm).
        #[arg(long)]
        pool: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn main() {
    let cli = Cli::parse();
    configure_threads();
    let command_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let code = dispatch(&cli, &command_echo);
    std::process::exit(code);
}

#[cfg(feature = "parallel")]
fn configure_threads() {
    if let Ok(value) = std::env::var("PTE_DESIGNS_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() {}

fn emit(report: &Report) -> i32 {
    println!("{}", serde_json::to_string_pretty(report).unwrap());
    report.outcome.exit_code()
}

fn fail(command: &str, message: impl Into<String>) -> i32 {
    emit(&Report::error(command, message))
}

fn parse_rat(command: &str, s: &str) -> Result<Rat, i32> {
    Rat::from_str(s).map_err(|e| fail(command, e.to_string()))
}

fn load_json<T: serde::de::DeserializeOwned>(command: &str, path: &Path) -> Result<T, i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(command, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| fail(command, format!("cannot parse {}: {e}", path.display())))
}

fn load_design(command: &str, path: &Path) -> Result<DesignSet, i32> {
    let set: DesignSet = load_json(command, path)?;
    set.validate().map_err(|e| fail(command, e.to_string()))?;
    Ok(set)
}

fn load_solution(command: &str, path: &Path) -> Result<PteSolution, i32> {
    let sol: PteSolution = load_json(command, path)?;
    sol.validate().map_err(|e| fail(command, e.to_string()))?;
    Ok(sol)
}

fn dispatch(cli: &Cli, echo: &str) -> i32 {
    match &cli.command {
        Command::Verify { what } => match what {
            VerifyCmd::Design { file, degree } => verify_design(echo, file, *degree),
            VerifyCmd::Pte { file } => verify_pte_file(echo, file),
        },
        Command::Gen(args) => gen_family(echo, args),
        Command::Equiv(args) => equiv(echo, args),
        Command::Search { what } => match what {
            SearchCmd::Pte {
                dim,
                degree,
                size,
                bound,
                dedup,
                budget,
            } => search_pte_cmd(echo, *dim, *degree, *size, *bound, dedup, *budget),
            SearchCmd::Stroud {
                d,
                norm,
                degree,
                pool,
                budget,
            } => search_stroud_cmd(echo, *d, norm, *degree, pool.as_deref(), *budget),
        },
        Command::Shell { d, norm } => shell_cmd(echo, *d, norm),
        Command::Orbit { d, point } => orbit_cmd(echo, *d, point),
        Command::Rotate { d, t, file } => rotate_cmd(echo, *d, t, file),
        Command::Lift { file } => lift_cmd(echo, file),
    }
}

fn verify_design(echo: &str, file: &Path, degree: u32) -> i32 {
    let set = match load_design(echo, file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let payload = json!({
        "D": set.d(),
        "r": set.norm(),
        "points": set.len(),
        "degree": degree,
    });
    match first_failing_degree(&set, degree) {
        None => emit(&Report::ok(echo, payload)),
        Some(k) => emit(&Report::invalid(
            echo,
            payload,
            json!({ "first_failing_power_sum": k }),
        )),
    }
}

fn verify_pte_file(echo: &str, file: &Path) -> i32 {
    let sol = match load_solution(echo, file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let outcome = match verify(&sol) {
        Ok(o) => o,
        Err(e) => return fail(echo, e.to_string()),
    };
    let payload = json!({
        "dimension": sol.dimension(),
        "degree": sol.degree(),
        "size": sol.size(),
        "valid": outcome.valid,
        "max_valid_degree": outcome.max_valid_degree,
        "disjoint": outcome.disjoint,
    });
    if outcome.valid {
        emit(&Report::ok(echo, payload))
    } else {
        emit(&Report::invalid(
            echo,
            payload,
            json!({ "first_failing_power_sum": outcome.first_failure }),
        ))
    }
}

fn gen_family(echo: &str, args: &GenArgs) -> i32 {
    let mut params = std::collections::BTreeMap::new();
    for kv in &args.params {
        let Some((key, value)) = kv.split_once('=') else {
            return fail(echo, format!("bad --param {kv:?}, expected name=value"));
        };
        let value = match parse_rat(echo, value.trim()) {
            Ok(v) => v,
            Err(code) => return code,
        };
        params.insert(key.trim().to_string(), value);
    }
    let get = |name: &str| -> Result<Rat, String> {
        params
            .get(name)
            .cloned()
            .ok_or_else(|| format!("family {:?} needs --param {name}=<rational>", args.family))
    };

    let solution_payload = |g: &families::GeneratedSolution| {
        json!({
            "solution": g.solution,
            "verification": g.report,
        })
    };

    let build = || -> Result<serde_json::Value, String> {
        match args.family.as_str() {
        "borwein1d" => Ok(solution_payload(&families::borwein1d(&get("m")?, &get("n")?))),
        "borwein2d" => Ok(solution_payload(&families::borwein2d(&get("m")?, &get("n")?))),
        "alpers-tijdeman" => Ok(solution_payload(&families::alpers_tijdeman(
            &get("a")?,
            &get("b")?,
        ))),
        "at-symmetric" => Ok(solution_payload(&families::at_symmetric_form(
            &get("a")?,
            &get("b")?,
        ))),
        "hexagon" => {
            if params.contains_key("t1") || params.contains_key("t2") {
                Ok(solution_payload(&families::hexagon_pte(&get("t1")?, &get("t2")?)))
            } else {
                let design = families::hexagon_design(&get("t")?);
                Ok(json!({
                    "design": design,
                    "verification": { "design_degree": 5, "is_design": true },
                }))
            }
        }
        "hexagon1d" => Ok(solution_payload(&families::hexagon1d(&get("t1")?, &get("t2")?))),
        "mlsu" => {
            if params.contains_key("t1") || params.contains_key("t2") {
                Ok(solution_payload(&families::mlsu1d(&get("t1")?, &get("t2")?)))
            } else {
                let inst = families::mlsu(&get("t")?);
                Ok(json!({
                    "design": inst.design,
                    "triple": inst.triple,
                    "verification": { "design_degree": 5, "is_design": true },
                }))
            }
        }
        "chernick" => Ok(solution_payload(&families::chernick(&get("m")?, &get("n")?))),
        "bessel2" => Ok(solution_payload(&families::bessel2(&get("z1")?, &get("z2")?))),
        other => Err(format!("unknown family {other:?}")),
        }
    };

    match build() {
        Ok(payload) => emit(&Report::ok(echo, payload)),
        Err(message) => fail(echo, message),
    }
}

fn equiv(echo: &str, args: &EquivArgs) -> i32 {
    let left = match load_solution(echo, &args.left) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let right = match load_solution(echo, &args.right) {
        Ok(s) => s,
        Err(code) => return code,
    };

    let obstruction = match square_ratio_obstruction(&left, &right) {
        Ok(o) => json!(o),
        Err(Error::ObstructionUnsupported(reason)) => json!({ "unavailable": reason }),
        Err(e) => return fail(echo, e.to_string()),
    };

    if args.obstruction_only {
        return emit(&Report::ok(echo, json!({ "obstruction": obstruction })));
    }

    match are_equivalent(&left, &right) {
        Ok(report) => emit(&Report::ok(
            echo,
            json!({
                "contained_lr": report.forward.is_some(),
                "contained_rl": report.backward.is_some(),
                "equivalent": report.equivalent,
                "maps": { "forward": report.forward, "backward": report.backward },
                "obstruction": obstruction,
                "search": "invertible linear parts only",
            }),
        )),
        Err(e) => fail(echo, e.to_string()),
    }
}

fn parse_dedup(echo: &str, s: &str) -> Result<DedupMode, i32> {
    match s {
        "none" => Ok(DedupMode::None),
        "canonical" => Ok(DedupMode::Canonical),
        "affine-classes" => Ok(DedupMode::AffineClasses),
        other => Err(fail(
            echo,
            format!("unknown dedup mode {other:?} (none | canonical | affine-classes)"),
        )),
    }
}

fn search_pte_cmd(
    echo: &str,
    dim: usize,
    degree: u32,
    size: usize,
    bound: i64,
    dedup: &str,
    budget: Option<u64>,
) -> i32 {
    let dedup = match parse_dedup(echo, dedup) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let spec = SearchSpec {
        dimension: dim,
        degree,
        size,
        bound,
        dedup,
        budget,
    };
    match search_pte(&spec) {
        Ok(outcome) => {
            for solution in &outcome.solutions {
                println!("{}", serde_json::to_string(solution).unwrap());
            }
            println!(
                "{}",
                serde_json::to_string(&json!({
                    "summary": {
                        "command": echo,
                        "solutions": outcome.solutions.len(),
                        "states_visited": outcome.states_visited,
                        "multisets_enumerated": outcome.multisets_enumerated,
                        "pairs_checked": outcome.pairs_checked,
                    }
                }))
                .unwrap()
            );
            Outcome::Ok.exit_code()
        }
        Err(e) => fail(echo, e.to_string()),
    }
}

fn search_stroud_cmd(
    echo: &str,
    d: u64,
    norm: &str,
    degree: u32,
    pool: Option<&Path>,
    budget: Option<u64>,
) -> i32 {
    let norm = match parse_rat(echo, norm) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let pool = match pool {
        Some(path) => match load_design(echo, path) {
            Ok(p) => p,
            Err(code) => return code,
        },
        None => match shell_points(d, &norm) {
            Ok(Some(shell)) => shell,
            Ok(None) => return fail(echo, format!("the shell of C_{d}({norm}) is empty")),
            Err(e) => return fail(echo, e.to_string()),
        },
    };
    match stroud_witness(&pool, degree, budget) {
        Ok(outcome) => {
            if let Some(ce) = &outcome.counterexample {
                println!("{}", serde_json::to_string(ce).unwrap());
            }
            println!(
                "{}",
                serde_json::to_string(&json!({
                    "summary": {
                        "command": echo,
                        "counterexample_found": outcome.counterexample.is_some(),
                        "subsets_scanned": outcome.subsets_scanned,
                    }
                }))
                .unwrap()
            );
            Outcome::Ok.exit_code()
        }
        Err(e) => fail(echo, e.to_string()),
    }
}

fn shell_cmd(echo: &str, d: u64, norm: &str) -> i32 {
    let norm = match parse_rat(echo, norm) {
        Ok(r) => r,
        Err(code) => return code,
    };
    match shell_points(d, &norm) {
        Ok(Some(shell)) => {
            let payload = json!({
                "shell": shell,
                "count": shell.len(),
            });
            emit(&Report::ok(echo, payload))
        }
        Ok(None) => emit(&Report::ok(
            echo,
            json!({ "shell": { "D": d, "r": norm, "points": [] }, "count": 0 }),
        )),
        Err(e) => fail(echo, e.to_string()),
    }
}

fn orbit_cmd(echo: &str, d: u64, point: &str) -> i32 {
    let Some((x, y)) = point.split_once(',') else {
        return fail(echo, format!("bad --point {point:?}, expected \"x,y\""));
    };
    let x = match parse_rat(echo, x) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let y = match parse_rat(echo, y) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let start = match EllipsePoint::from_coords(d, x, y) {
        Ok(p) => p,
        Err(e) => return fail(echo, e.to_string()),
    };
    let generator = match tight_generator(d) {
        Ok(g) => g,
        Err(e) => return fail(echo, e.to_string()),
    };
    match orbit_design(&start, &generator) {
        Ok(orbit) => {
            let k = orbit.len() as u32;
            let payload = json!({
                "orbit": orbit,
                "count": k,
                "is_design_below_order": k > 1 && is_design(&orbit, k - 1),
                "is_design_at_order": is_design(&orbit, k),
            });
            emit(&Report::ok(echo, payload))
        }
        Err(e) => fail(echo, e.to_string()),
    }
}

fn rotate_cmd(echo: &str, d: u64, t: &str, file: &Path) -> i32 {
    let t = match parse_rat(echo, t) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let set = match load_design(echo, file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let rotation = match rational_rotation(d, &t) {
        Ok(r) => r,
        Err(e) => return fail(echo, e.to_string()),
    };
    match rotation.apply(&set) {
        Ok(image) => emit(&Report::ok(
            echo,
            json!({
                "matrix": rotation.matrix(),
                "design": image,
            }),
        )),
        Err(e) => fail(echo, e.to_string()),
    }
}

fn lift_cmd(echo: &str, file: &Path) -> i32 {
    let sol = match load_solution(echo, file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match cyclic_lift(&sol) {
        Ok(lifted) => {
            let report = verify(&lifted).expect("lift output is well-formed");
            emit(&Report::ok(
                echo,
                json!({ "solution": lifted, "verification": report }),
            ))
        }
        Err(Error::LiftVerificationFailed { monomial }) => emit(&Report::invalid(
            echo,
            serde_json::Value::Null,
            json!({ "first_failing_power_sum": monomial }),
        )),
        Err(e) => fail(echo, e.to_string()),
    }
}
