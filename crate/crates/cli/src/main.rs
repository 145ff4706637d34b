use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewcode::bundled;
use skewcode::codes::{classify, Code};
use skewcode::config::{code_report, poly_json, Job, JobConfig};
use skewcode::display::format_ring_poly;
use skewcode::gray::gray_image_params;
use skewcode::oracle::{
    brute_dual, brute_min_distance, enumerate_code, CodewordSet, InnerProduct, Metric, OracleCode, ENUMERATION_CAP,
};
use skewcode::{Autom, Error, ErrorKind, RingElement, SkewPoly};

#[derive(Parser)]
#[command(name = "skewcode", version, about = "Skew constacyclic codes over F_q[u,v]/<f(u), g(v), uv-vu>")]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    /// Cross-check results by exhaustive enumeration
    #[arg(long, global = true, value_enum)]
    verify: Option<Verify>,
    /// Seed for randomized sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Verify {
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the generator right-divides x^n - alpha
    VerifyGenerator(Input),
    /// Build a code from its component table and report it
    Build(Input),
    /// Print the component codes
    Decompose(Input),
    /// Generator of the dual code
    Dual(Input),
    /// Idempotent generator
    Idempotent(Input),
    /// Parameters of the Gray image
    Gray(Input),
    /// Minimum Hamming and Gray distance
    Mindist(Input),
    /// Shift structure of the code
    Classify(Input),
    /// Replay the bundled worked examples
    Examples,
}

#[derive(clap::Args)]
struct Input {
    /// JSON config file; standard input when omitted or "-"
    config: Option<PathBuf>,
}

/// Failure with its exit status.
enum Failure {
    Lib(Error),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<Value, Failure>;

fn read_job(input: &Input) -> Result<Job, Failure> {
    let text = match &input.config {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Config(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    Ok(JobConfig::from_json(&text)?.resolve()?)
}

/// Whole-code enumeration, refused up front when `|C|` exceeds the cap.
fn enumerate(code: &Code, gen: Option<&SkewPoly<RingElement>>) -> Result<CodewordSet, Error> {
    let needed = (code.ring().field().order() as f64).powi(code.size_exponent() as i32);
    if needed > ENUMERATION_CAP as f64 {
        return Err(Error::OracleBound { what: "code".into(), needed, cap: ENUMERATION_CAP });
    }
    match gen {
        Some(g) => enumerate_code(&oracle_with_gen(code, g)),
        None => enumerate_code(&OracleCode::from_code(code)),
    }
}

fn oracle_with_gen(code: &Code, gen: &SkewPoly<RingElement>) -> OracleCode {
    OracleCode { gen: gen.coeffs().iter().map(|c| c.crt.clone()).collect(), ..OracleCode::from_code(code) }
}

fn verify_generator(job: &Job) -> Outcome {
    let g = job.generator()?;
    let check = Code::verify_generator(&job.ring, job.n, job.autom, &job.alpha, &g)?;
    let class = classify(job.n, job.ring.autom_order(job.autom), job.alpha == job.ring.one());
    let mut report = json!({
        "divides": check.divides,
        "gen": poly_json(&g),
        "gen_display": format_ring_poly(&job.ring, &g),
        "classification": class,
        "classification_display": class.to_string(),
    });
    if check.divides {
        report["size_exponent"] = json!(Code::from_generator(&job.ring, job.n, job.autom, &job.alpha, &g)?.size_exponent());
    } else {
        report["remainder"] = poly_json(&check.remainder);
        report["remainder_display"] = json!(format_ring_poly(&job.ring, &check.remainder));
    }
    Ok(report)
}

fn dual(job: &Job, verify: bool) -> Outcome {
    let code = job.code()?;
    if code.autom() == Autom::Psi {
        if !verify {
            return Err(Error::Inapplicable("no dual generator formula for psi-codes; rerun with --verify oracle".into()).into());
        }
        let set = enumerate(&code, None)?;
        let d = brute_dual(&set, InnerProduct::Ring)?;
        let basis: Vec<Vec<u32>> = d.basis.iter().map(|w| w.iter().map(|x| x.index()).collect()).collect();
        return Ok(json!({ "oracle_dual": { "size_exponent": d.dimension(), "basis": basis } }));
    }
    let d = code.dual()?;
    let mut report = code_report(&d);
    if verify {
        let set = enumerate(&code, None)?;
        let brute = brute_dual(&set, InnerProduct::Ring)?;
        let formula = enumerate(&d, None)?;
        if brute != formula {
            return Err(Failure::Assertion("dual generator disagrees with the enumerated dual".into()));
        }
        report["oracle"] = json!("agrees");
    }
    Ok(report)
}

fn idempotent(job: &Job, verify: bool) -> Outcome {
    let code = job.code()?;
    let e = code.idempotent_generator()?;
    let idem = code.is_idempotent(&e)?;
    if !idem {
        return Err(Failure::Assertion("computed generator is not idempotent".into()));
    }
    let mut report = json!({
        "idempotent": poly_json(&e),
        "idempotent_display": format_ring_poly(code.ring(), &e),
        "gen": poly_json(code.gen()),
        "gen_display": format_ring_poly(code.ring(), code.gen()),
    });
    if verify {
        let from_e = enumerate(&code, Some(&e))?;
        let from_g = enumerate(&code, None)?;
        if from_e != from_g {
            return Err(Failure::Assertion("<e> and <gen> enumerate to different codeword sets".into()));
        }
        report["oracle"] = json!("agrees");
    }
    Ok(report)
}

fn gray(job: &Job, verify: bool, seed: u64) -> Outcome {
    use rand::SeedableRng;
    let code = job.code()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let params = gray_image_params(&code, &mut rng, 100)?;
    let mut report = serde_json::to_value(&params).expect("plain struct");
    if verify {
        let set = enumerate(&code, None)?;
        if brute_min_distance(&set, Metric::Gray) != params.d || set.dimension() != params.k_dim {
            return Err(Failure::Assertion("Gray parameters disagree with whole-code enumeration".into()));
        }
        report["oracle"] = json!("agrees");
    }
    Ok(report)
}

fn mindist(job: &Job, seed: u64) -> Outcome {
    use rand::SeedableRng;
    let code = job.code()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let params = gray_image_params(&code, &mut rng, 0)?;
    let mut report = json!({ "gray": params.d });
    match enumerate(&code, None) {
        Ok(set) => report["hamming"] = json!(brute_min_distance(&set, Metric::Hamming)),
        Err(e @ Error::OracleBound { .. }) => {
            report["hamming"] = Value::Null;
            report["hamming_note"] = json!(e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn examples(seed: u64) -> Outcome {
    let outcomes = bundled::run_all(seed);
    let report = serde_json::to_value(&outcomes).expect("plain structs");
    if outcomes.iter().all(|o| o.pass) {
        Ok(report)
    } else {
        Err(Failure::Assertion(report.to_string()))
    }
}

fn run(cli: &Cli) -> Outcome {
    let verify = cli.verify.is_some();
    match &cli.command {
        Command::VerifyGenerator(i) => {
            let report = verify_generator(&read_job(i)?)?;
            if report["divides"] == json!(false) {
                return Err(Failure::Assertion(report.to_string()));
            }
            Ok(report)
        }
        Command::Build(i) => Ok(code_report(&read_job(i)?.code()?)),
        Command::Decompose(i) => {
            let code = read_job(i)?.code()?;
            code.decompose()?;
            Ok(json!({ "components": code_report(&code)["components"].clone() }))
        }
        Command::Dual(i) => dual(&read_job(i)?, verify),
        Command::Idempotent(i) => idempotent(&read_job(i)?, verify),
        Command::Gray(i) => gray(&read_job(i)?, verify, cli.seed),
        Command::Mindist(i) => mindist(&read_job(i)?, cli.seed),
        Command::Classify(i) => {
            let job = read_job(i)?;
            let order = job.ring.autom_order(job.autom);
            let class = classify(job.n, order, job.alpha == job.ring.one());
            Ok(json!({
                "classification": class,
                "classification_display": class.to_string(),
                "autom_order": order,
                "gcd": skewcode::codes::gcd(job.n as u64, order),
            }))
        }
        Command::Examples => examples(cli.seed),
    }
}

/// Plain-text rendering: display strings where present, otherwise `key: value` lines.
fn human(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut out = Vec::new();
            for (k, val) in map {
                if let Some(base) = k.strip_suffix("_display") {
                    out.push(format!("{base}: {}", val.as_str().unwrap_or_default()));
                } else if map.contains_key(&format!("{k}_display")) {
                    continue;
                } else if k == "components" {
                    out.push("components:".into());
                    for c in val.as_array().into_iter().flatten() {
                        out.push(format!(
                            "  C{}{}: {} (alpha = {}, dim {})",
                            c["i"],
                            c["j"],
                            c["gen_display"].as_str().unwrap_or_default(),
                            c["alpha_display"].as_str().unwrap_or_default(),
                            c["dim"]
                        ));
                    }
                } else {
                    out.push(format!("{k}: {val}"));
                }
            }
            out.join("\n")
        }
        Value::Array(items) if items.iter().all(|o| o.get("example").is_some()) => items
            .iter()
            .map(|o| {
                let mut s = format!(
                    "{} {}",
                    if o["pass"] == json!(true) { "PASS" } else { "FAIL" },
                    o["example"].as_str().unwrap_or_default()
                );
                for c in o["checks"].as_array().into_iter().flatten().filter(|c| c["pass"] != json!(true)) {
                    s.push_str(&format!(
                        "\n  failed: {} {}",
                        c["name"].as_str().unwrap_or_default(),
                        c["detail"].as_str().unwrap_or_default()
                    ));
                }
                s
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, v: &Value) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(v).expect("json"));
    } else {
        println!("{}", human(v));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&cli, &v);
            ExitCode::SUCCESS
        }
        Err(Failure::Assertion(msg)) => {
            match serde_json::from_str::<Value>(&msg) {
                Ok(v) => emit(&cli, &v),
                Err(_) => eprintln!("assertion failed: {msg}"),
            }
            ExitCode::from(5)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Config => 2,
                ErrorKind::Math => 3,
                ErrorKind::Bound => 4,
            })
        }
    }
}
