//! `rtt`: batch verification, classification and certificate generation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rtt_core::affine::{self, AffineRep, PolyCertificate};
use rtt_core::braid::{verify_isomorphism, ReflectionMap};
use rtt_core::graded::{check_rtilde, check_ybe, check_ybe_spectral};
use rtt_core::highest_weight::{build_irreducible, classify, HWeight};
use rtt_core::parity::enumerate_sequences;
use rtt_core::rtt::RttAlgebra;
use rtt_core::{ParitySeq, QScalar};

#[derive(Parser)]
#[command(name = "rtt", version, about = "Exact computations in the RTT presentation of quantum gl(m|n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded Yang–Baxter, R̃ and spectral YBE checks for every sequence in S(m|n).
    Ybe {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Straighten an element such as "t[2,1]*tb[1,2]" to PBW normal form.
    Normalize {
        #[arg(long)]
        s: ParitySeq,
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check the odd reflection at position i (or every position) as an isomorphism.
    BraidVerify {
        #[arg(long)]
        s: ParitySeq,
        #[arg(long)]
        i: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Finite-dimensionality verdict, typicality and diagram of a weight.
    Classify {
        #[arg(long)]
        s: ParitySeq,
        /// Comma-separated eigenvalues, e.g. "+q^3,+q^1,-q^(1/2)".
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Exit 1 unless the verdict matches.
        #[arg(long, value_parser = ["finite", "infinite"])]
        expect: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Build the irreducible module and dump its matrices.
    Module {
        #[arg(long)]
        s: ParitySeq,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, default_value_t = 24)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluation representation at a, with the affine relation check.
    Evalrep {
        #[arg(long)]
        s: ParitySeq,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[command(flatten)]
        out: Output,
    },
    /// Tensor product of evaluation representations listed in a JSON file
    /// `{"s": "01", "factors": [{"weights": "+q^2,+q^0", "a": "3"}, …]}`.
    Tensor {
        #[arg(long)]
        factors: PathBuf,
        /// Range "lo..hi" of exponents k; with two factors, scans a₁ = q^k₁, a₂ = q^k₂.
        #[arg(long, allow_hyphen_values = true)]
        scan_a: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

/// Usage errors exit with 2, mathematical failures with 1.
enum Failure {
    Usage(String),
    Math(Value),
}

type Outcome = Result<Value, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_weight(s: &ParitySeq, text: &str) -> Result<HWeight, Failure> {
    HWeight::parse(s, text).map_err(usage)
}

fn parse_scalar(text: &str) -> Result<QScalar, Failure> {
    text.parse::<QScalar>().map_err(|e| usage(format!("bad scalar {text:?}: {e}")))
}

fn ybe(m: usize, n: usize) -> Outcome {
    if m + n < 2 {
        return Err(usage("need m + n ≥ 2"));
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for s in enumerate_sequences(m, n) {
        let constant = check_ybe::<QScalar>(&s);
        let tilde = check_rtilde::<QScalar>(&s);
        let spectral = (s.len() <= 3).then(|| check_ybe_spectral::<QScalar>(&s));
        let pass = constant.pass && tilde.pass && spectral.as_ref().is_none_or(|r| r.pass);
        ok &= pass;
        eprintln!("{} s={s}", if pass { "PASS" } else { "FAIL" });
        rows.push(json!({"s": s, "pass": pass, "ybe": constant, "rtilde": tilde, "spectral": spectral}));
    }
    let v = json!({"m": m, "n": n, "sequences": rows});
    if ok {
        Ok(v)
    } else {
        Err(Failure::Math(v))
    }
}

fn normalize(s: &ParitySeq, expr: &str) -> Outcome {
    let alg = RttAlgebra::new(s).map_err(usage)?;
    let x = alg.parse_element(expr).map_err(usage)?;
    eprintln!("{x}");
    Ok(json!({"s": s, "input": expr, "normal_form": x.to_string(), "terms": x.dump()}))
}

fn braid_verify(s: &ParitySeq, i: Option<usize>) -> Outcome {
    let positions: Vec<usize> = match i {
        Some(i) => vec![i],
        None => (1..s.len()).collect(),
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for i in positions {
        let map = ReflectionMap::new(s, i).map_err(usage)?;
        let report = verify_isomorphism(&map).map_err(usage)?;
        eprintln!("{} {} --{i}--> {}", if report.pass() { "PASS" } else { "FAIL" }, report.source, report.target);
        ok &= report.pass();
        rows.push(json!({"pass": report.pass(), "report": report}));
    }
    let v = json!({"s": s, "reflections": rows});
    if ok {
        Ok(v)
    } else {
        Err(Failure::Math(v))
    }
}

fn classify_cmd(s: &ParitySeq, weights: &str, expect: Option<&str>) -> Outcome {
    let w = parse_weight(s, weights)?;
    let verdict = classify(&w);
    eprintln!("{w}: {}", if verdict.finite { "finite" } else { "infinite" });
    if let Some(d) = &verdict.diagram {
        eprint!("{}", d.ascii());
    }
    let v = serde_json::to_value(&verdict).map_err(usage)?;
    match expect {
        Some(e) if (e == "finite") != verdict.finite => Err(Failure::Math(v)),
        _ => Ok(v),
    }
}

fn module_cmd(s: &ParitySeq, weights: &str, cap: usize) -> Outcome {
    let w = parse_weight(s, weights)?;
    match build_irreducible(&w, cap).map_err(usage)?.module() {
        Some(m) => {
            eprintln!("{w}: dim {}", m.dim());
            Ok(m.to_json())
        }
        None => {
            eprintln!("{w}: no stabilization up to depth {cap}");
            Err(Failure::Math(json!({"weight": w, "stabilized": false, "level_cap": cap})))
        }
    }
}

fn evalrep(s: &ParitySeq, weights: &str, a: &str) -> Outcome {
    let w = parse_weight(s, weights)?;
    let a = parse_scalar(a)?;
    let rep = affine::evaluation_rep(&w, &a).map_err(|e| match e {
        affine::AffineError::Infinite(_) | affine::AffineError::DidNotStabilize => {
            Failure::Math(json!({"weight": w, "error": e.to_string()}))
        }
        other => usage(other),
    })?;
    let report = affine::verify_affine_relations(&rep);
    let series = affine::highest_weight_series(&rep);
    eprintln!("{w} at a = {a}: dim {}, affine relations {}", rep.dim(), if report.pass() { "PASS" } else { "FAIL" });
    let v = json!({"representation": rep.to_json(), "relations": report, "highest_weight": series});
    if report.pass() {
        Ok(v)
    } else {
        Err(Failure::Math(v))
    }
}

fn certificates(hw: &affine::HWSeries) -> Result<PolyCertificate, affine::CertificateError> {
    let s = &hw.seq;
    match s.len() {
        2 if s.parity(1) != s.parity(2) => affine::check_t1(hw),
        2 => affine::check_t2(hw),
        _ => affine::check_t3(hw),
    }
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<i64>, Failure> {
    let (lo, hi) = text.split_once("..").ok_or_else(|| usage("range must look like lo..hi"))?;
    let lo: i64 = lo.trim().parse().map_err(usage)?;
    let hi: i64 = hi.trim().parse().map_err(usage)?;
    if lo > hi {
        return Err(usage("empty range"));
    }
    Ok(lo..=hi)
}

fn tensor_cmd(path: &PathBuf, scan: Option<&str>) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let spec: Value = serde_json::from_str(&text).map_err(usage)?;
    let s: ParitySeq = spec["s"].as_str().ok_or_else(|| usage("missing \"s\""))?.parse().map_err(usage)?;
    let raw = spec["factors"].as_array().ok_or_else(|| usage("missing \"factors\""))?;
    if raw.is_empty() {
        return Err(usage("no factors"));
    }
    let mut weights = Vec::new();
    let mut params = Vec::new();
    for f in raw {
        weights.push(parse_weight(&s, f["weights"].as_str().ok_or_else(|| usage("factor without \"weights\""))?)?);
        params.push(parse_scalar(f["a"].as_str().ok_or_else(|| usage("factor without \"a\""))?)?);
    }
    let build = |params: &[QScalar]| -> Result<AffineRep, Failure> {
        let mut acc: Option<AffineRep> = None;
        for (w, a) in weights.iter().zip(params) {
            let r = affine::evaluation_rep(w, a).map_err(usage)?;
            acc = Some(match acc {
                None => r,
                Some(x) => affine::tensor(&x, &r).map_err(usage)?,
            });
        }
        Ok(acc.expect("nonempty"))
    };
    let rep = build(&params)?;
    let relations = affine::verify_affine_relations(&rep);
    let series = affine::highest_weight_series(&rep);
    let cert = series.series().map(certificates);
    let zeta = rep.maximal_vector.clone().expect("tensor of evaluation modules");
    let span = rep.cyclic_span(&zeta);
    eprintln!(
        "{s}: {} factors, dim {}, relations {}, span from maximal vector {span}, irreducible {}",
        weights.len(),
        rep.dim(),
        if relations.pass() { "PASS" } else { "FAIL" },
        rep.is_irreducible()
    );
    let cert_json = match &cert {
        Some(Ok(c)) => json!({"certificate": c}),
        Some(Err(e)) => json!({"refused": e.to_string()}),
        None => json!({"refused": "no joint maximal vector"}),
    };
    let mut out = json!({
        "s": s,
        "dim": rep.dim(),
        "relations": relations,
        "highest_weight": series,
        "certificates": cert_json,
        "cyclic_span_from_maximal_vector": span,
        "irreducible": rep.is_irreducible(),
    });
    if let Some(range) = scan {
        if weights.len() != 2 {
            return Err(usage("--scan-a needs exactly two factors"));
        }
        let range = parse_range(range)?;
        let mut table = Vec::new();
        for k1 in range.clone() {
            let mut row = String::new();
            for k2 in range.clone() {
                let r = build(&[QScalar::q_pow(k1), QScalar::q_pow(k2)])?;
                let z = r.maximal_vector.clone().expect("tensor of evaluation modules");
                let span = r.cyclic_span(&z);
                let irreducible = r.is_irreducible();
                row.push(if irreducible { 'I' } else { '.' });
                table.push(json!({"k1": k1, "k2": k2, "span_from_maximal_vector": span, "irreducible": irreducible}));
            }
            eprintln!("a1=q^{k1:<3} {row}");
        }
        out["scan"] = Value::Array(table);
    }
    if relations.pass() {
        Ok(out)
    } else {
        Err(Failure::Math(out))
    }
}

fn emit(v: &Value, out: &Output) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(usage)? + "\n";
    match &out.out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Ybe { m, n, out } => (ybe(*m, *n), out),
        Command::Normalize { s, expr, out } => (normalize(s, expr), out),
        Command::BraidVerify { s, i, out } => (braid_verify(s, *i), out),
        Command::Classify { s, weights, expect, out } => (classify_cmd(s, weights, expect.as_deref()), out),
        Command::Module { s, weights, cap, out } => (module_cmd(s, weights, *cap), out),
        Command::Evalrep { s, weights, a, out } => (evalrep(s, weights, a), out),
        Command::Tensor { factors, scan_a, out } => (tensor_cmd(factors, scan_a.as_deref()), out),
    };
    let (value, code) = match result {
        Ok(v) => (v, ExitCode::SUCCESS),
        Err(Failure::Math(v)) => (v, ExitCode::from(1)),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match emit(&value, out) {
        Ok(()) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(_)) => unreachable!("emit only fails on I/O"),
    }
}
