use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ellarr::file_format::{parse_file, to_canonical_string};
use ellarr::random::random_matrix;
use ellarr::report::{self, Check, OrderInfo};
use ellarr::{ArithmeticMatroid, CurveParams, Error, FieldParams, Subset};

#[derive(Parser)]
#[command(name = "ellarr", version, about = "Arithmetic matroids of elliptic arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-subset ranks, multiplicities and torsion, plus every check and polynomial.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run axiom checks; exits 1 if any check fails.
    Verify {
        file: PathBuf,
        /// Comma-separated subset of rank,a1,a2,p,p1,p2,dual,coker-xcheck.
        #[arg(long)]
        axioms: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Arithmetic Tutte polynomial.
    Tutte {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Euler characteristic of the complement.
    Euler {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check whether the multiplicities are gcds over bases.
    GcdCheck {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Dual matroid tables and the stacked arrangement realizing them as a contraction.
    Dual {
        file: PathBuf,
        #[arg(long)]
        emit_arrangement: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Constants of the order of multipliers of the lattice <1, tau>.
    OrderInfo {
        #[arg(long)]
        m: i64,
        /// a,b,c with tau = (a + b omega) / c
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        json: bool,
    },
    /// Write a seeded random arrangement file.
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn parse_tau(text: &str) -> Result<(i64, i64, i64), Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Error::Format { context: "--tau".into(), message: format!("expected a,b,c, got `{text}`") };
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Result<Vec<i64>, _> = parts.iter().map(|p| p.parse::<i64>()).collect();
    let nums = nums.map_err(|_| bad())?;
    Ok((nums[0], nums[1], nums[2]))
}

fn curve_from_args(m: i64, tau: &str) -> Result<CurveParams, Error> {
    let (a, b, c) = parse_tau(tau)?;
    CurveParams::new(FieldParams::new(m)?, a, b, c)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
    } else {
        print!("{}", text());
    }
}

#[derive(Serialize)]
struct DualRow {
    #[serde(serialize_with = "subset_bits")]
    subset: Subset,
    rank: u32,
    multiplicity: serde_json::Number,
}

fn subset_bits<S: serde::Serializer>(s: &Subset, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_u64(s.bits())
}

#[derive(Serialize)]
struct DualOut {
    #[serde(serialize_with = "subset_bits")]
    contracted: Subset,
    dual: Vec<DualRow>,
    contraction_matches: bool,
    arrangement: String,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, json } => {
            let arr = parse_file(file)?;
            let report = report::analyze(&arr)?;
            emit(json, &report, || report.render_text());
        }
        Command::Verify { file, axioms, json } => {
            let arr = parse_file(file)?;
            let checks = match axioms {
                Some(list) => Check::parse_list(&list)?,
                None => Check::ALL.to_vec(),
            };
            let matroid = ArithmeticMatroid::from_arrangement(&arr)?;
            let results = report::run_checks(&arr, &matroid, &checks)?;
            emit(json, &results, || report::render_checks(&results));
            if results.iter().any(|r| !r.passed) {
                return Err(Failure::Verification);
            }
        }
        Command::Tutte { file, json } => {
            let arr = parse_file(file)?;
            let tutte = ArithmeticMatroid::from_arrangement(&arr)?.tutte();
            let out = report::PolyOut::from(&tutte);
            emit(json, &out, || format!("{}\n", out.text));
        }
        Command::Euler { file, json } => {
            let arr = parse_file(file)?;
            let matroid = ArithmeticMatroid::from_arrangement(&arr)?;
            let out = report::euler_out(&arr, &matroid);
            emit(json, &out, || report::render_euler(&out));
        }
        Command::GcdCheck { file, json } => {
            let arr = parse_file(file)?;
            let matroid = ArithmeticMatroid::from_arrangement(&arr)?;
            let out = report::gcd_out(&arr, &matroid);
            emit(json, &out, || report::render_gcd(&out));
        }
        Command::Dual { file, emit_arrangement, json } => {
            let arr = parse_file(file)?;
            let matroid = ArithmeticMatroid::from_arrangement(&arr)?;
            let dual = matroid.dual()?;
            let (stacked, t) = arr.dual_arrangement()?;
            let xcheck = report::check_dual(&arr, &matroid)?;
            let text = to_canonical_string(stacked.matrix());
            if let Some(path) = &emit_arrangement {
                std::fs::write(path, &text).map_err(|e| Error::Format {
                    context: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            let rows: Vec<DualRow> = Subset::full(arr.k())
                .submasks()
                .map(|s| DualRow {
                    subset: s,
                    rank: dual.rank(s),
                    multiplicity: dual.multiplicity(s).to_string().parse().expect("integer"),
                })
                .collect();
            let out = DualOut { contracted: t, dual: rows, contraction_matches: xcheck.passed, arrangement: text };
            emit(json, &out, || {
                let body: Vec<Vec<String>> = out
                    .dual
                    .iter()
                    .map(|r| vec![r.subset.to_string(), r.rank.to_string(), r.multiplicity.to_string()])
                    .collect();
                let mut s = report::table(&["subset", "rank*", "mult*"], &body);
                s.push_str(&format!(
                    "\nstacked arrangement contracted by T = {}: {}\n",
                    out.contracted,
                    if out.contraction_matches { "matches dual" } else { "MISMATCH" }
                ));
                if emit_arrangement.is_none() {
                    s.push('\n');
                    s.push_str(&out.arrangement);
                }
                s
            });
        }
        Command::OrderInfo { m, tau, json } => {
            let curve = curve_from_args(m, &tau)?;
            let info = OrderInfo::new(&curve);
            emit(json, &info, || info.render_text());
        }
        Command::Random { k, n, m, tau, bound, seed, out } => {
            let curve = curve_from_args(m, &tau)?;
            let matrix = random_matrix(&curve, k, n, bound, seed)?;
            let text = to_canonical_string(&matrix);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| Error::Format {
                    context: path.display().to_string(),
                    message: e.to_string(),
                })?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
