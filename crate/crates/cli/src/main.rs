//! `lorentz-skew`: JSON front end over the library.
//!
//! Results go to stdout as a single JSON report; failures go to stderr as
//! `{"error": {"kind": ..., "message": ...}}` with a nonzero exit status.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lorentz_skew::battery::run_battery;
use lorentz_skew::topology::{eigenvalue_continuation_with_tol, winding_with_tol};
use lorentz_skew::{
    eigenvalues, eigenvector_scale_factor, energy_momentum, eval_config, poynting, poynting_eliminating_velocity,
    psi, region_classify, transform_fields, BoostVelocity, Error, FieldConfig, LoopSpec, SkewField, SpatialVector,
};
use serde_json::{json, Value};

const TOL_ENV: &str = "LORENTZ_SKEW_TOL";
const DEFAULT_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "lorentz-skew", version, about = "Field invariants, boosts and winding degrees as JSON")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a configuration at a point: fields, ψ, eigenvalues, Poynting vector, region.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
        point: Vec<f64>,
    },
    /// Winding of ψ along a loop, with the eigenvalue-continuation parity.
    Winding {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "loop")]
        loop_path: PathBuf,
    },
    /// Run the seeded identity battery.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// Transform a field to an observer moving with velocity w.
    Boost {
        #[arg(long = "E", num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
        e: Vec<f64>,
        #[arg(long = "B", num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
        b: Vec<f64>,
        #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
        w: Vec<f64>,
    },
}

/// A failure reported to the user.
#[derive(Debug)]
struct Failure {
    kind: String,
    message: String,
    detail: Value,
}

impl Failure {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        Failure {
            kind: kind.into(),
            message: message.into(),
            detail: Value::Null,
        }
    }

    fn to_json(&self) -> Value {
        let mut e = json!({ "kind": self.kind, "message": self.message });
        if !self.detail.is_null() {
            e["detail"] = self.detail.clone();
        }
        json!({ "error": e })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let detail = match &e {
            Error::NullLocusCrossing { parameter, abs_psi } => json!({ "parameter": parameter, "abs_psi": abs_psi }),
            Error::RefinementExhausted { parameter } | Error::AmbiguousContinuation { parameter } => {
                json!({ "parameter": parameter })
            }
            Error::SingularPoint { point } => json!({ "point": point }),
            Error::SuperluminalVelocity { speed } => json!({ "speed": speed }),
            _ => Value::Null,
        };
        Failure {
            kind: e.kind().into(),
            message: e.to_string(),
            detail,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// A report plus whether the command counts as successful.
struct Outcome {
    report: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            emit_error(&Failure::new("ArgumentError", msg.trim()), false);
            return ExitCode::from(2);
        }
    };
    let outcome = global_tol().and_then(|tol| run(&cli.command, tol));
    match outcome {
        Ok(o) => {
            println!("{}", render(&o.report, cli.pretty));
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            emit_error(&f, cli.pretty);
            ExitCode::from(1)
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("JSON values always serialize")
}

fn emit_error(f: &Failure, pretty: bool) {
    eprintln!("{}", render(&f.to_json(), pretty));
}

fn global_tol() -> Result<f64, Failure> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(Failure::new(
                "InvalidArgument",
                format!("{TOL_ENV} must be a positive number, got {s:?}"),
            )),
        },
    }
}

fn run(cmd: &Command, tol: f64) -> CmdResult {
    match cmd {
        Command::Analyze { config, point } => cmd_analyze(config, vec3(point), tol),
        Command::Winding { config, loop_path } => cmd_winding(config, loop_path, tol),
        Command::Verify { seed, cases } => cmd_verify(*seed, *cases),
        Command::Boost { e, b, w } => cmd_boost(vec3(e), vec3(b), vec3(w)),
    }
}

fn vec3(v: &[f64]) -> SpatialVector {
    SpatialVector::new(v[0], v[1], v[2])
}

fn arr(v: &SpatialVector) -> [f64; 3] {
    [v.x, v.y, v.z]
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        let kind = if e.kind() == std::io::ErrorKind::NotFound {
            "NotFound"
        } else {
            "IoError"
        };
        Failure::new(kind, format!("{}: {e}", path.display()))
    })?;
    serde_json::from_str(&text).map_err(|e| Failure::new("ParseError", format!("{}: {e}", path.display())))
}

fn load_config(path: &Path) -> Result<FieldConfig, Failure> {
    let config: FieldConfig = read_json(path)?;
    config.validate()?;
    Ok(config)
}

fn report(command: &str, inputs: Value, results: Value) -> Value {
    json!({ "command": command, "inputs": inputs, "results": results })
}

fn invariants(f: &SkewField) -> Value {
    json!({ "EdotB": f.e_dot_b(), "E2mB2": f.e_squared() - f.b_squared() })
}

fn cmd_analyze(config_path: &Path, point: SpatialVector, tol: f64) -> CmdResult {
    let config = load_config(config_path)?;
    let f = eval_config(&config, &point)?;
    let z = psi(&f);
    let results = json!({
        "E": arr(f.e()),
        "B": arr(f.b()),
        "psi": [z.re, z.im],
        "eigen": eigenvalues(&f),
        "lambda_T": energy_momentum(&f).lambda_t(),
        "poynting": poynting(&f),
        "region": region_classify(&config, &point, tol),
    });
    let inputs = json!({ "config": config_path, "point": arr(&point), "tol": tol });
    Ok(Outcome {
        report: report("analyze", inputs, results),
        ok: true,
    })
}

fn cmd_winding(config_path: &Path, loop_path: &Path, tol: f64) -> CmdResult {
    let config = load_config(config_path)?;
    let path: LoopSpec = read_json(loop_path)?;
    let w = winding_with_tol(&config, &path, tol)?;
    let continuation = eigenvalue_continuation_with_tol(&config, &path, tol)?;
    let agrees = continuation == w.parity;
    let mut results = serde_json::to_value(w).expect("report serializes");
    results["continuation_parity"] = serde_json::to_value(continuation).expect("parity serializes");
    results["parity_agrees"] = json!(agrees);
    let inputs = json!({ "config": config_path, "loop": loop_path, "tol": tol });
    Ok(Outcome {
        report: report("winding", inputs, results),
        ok: agrees,
    })
}

fn cmd_verify(seed: u64, cases: usize) -> CmdResult {
    let battery = run_battery(seed, cases)?;
    let ok = battery.all_passed;
    let mut r = report(
        "verify",
        json!({ "seed": seed, "cases": cases }),
        serde_json::to_value(battery).expect("battery serializes"),
    );
    r["seed"] = json!(seed);
    Ok(Outcome { report: r, ok })
}

fn cmd_boost(e: SpatialVector, b: SpatialVector, w: SpatialVector) -> CmdResult {
    let f = SkewField::from_fields(e, b);
    let velocity = BoostVelocity::new(w)?;
    let t = transform_fields(&f, &velocity);
    let scale_factor = match eigenvector_scale_factor(&f, &velocity) {
        Ok(k) => json!(k),
        Err(Error::ZeroField) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let eliminating = poynting_eliminating_velocity(&f).ok().map(|v| arr(v.w()));
    let results = json!({
        "E_prime": t.e_prime,
        "B_prime": t.b_prime,
        "observer": t.observer,
        "scale_factor": scale_factor,
        "invariants": { "EdotB": t.e_dot_b(), "E2mB2": t.e2_minus_b2() },
        "invariants_before": invariants(&f),
        "poynting_eliminating_velocity": eliminating,
    });
    let inputs = json!({ "E": arr(&e), "B": arr(&b), "w": arr(&w) });
    Ok(Outcome {
        report: report("boost", inputs, results),
        ok: true,
    })
}
