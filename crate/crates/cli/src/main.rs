//! Command-line front end: searches, pairwise field decisions,
//! certificate workflows, sequence tables, and curve reports. Every
//! subcommand renders the same data as text or JSON, deterministically.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use quartic::arith;
use quartic::certify::{self, UniquenessCertificate};
use quartic::curves;
use quartic::isotest::{self, FieldsDecision, TheoremCase};
use quartic::quadfield::QuadInt;
use quartic::sequences::{LucasParams, SquareClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "quartic", version, about = "Simplest quartic field toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Also write the report to this path.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all coincidences K_m = K_n with m < n <= the bound.
    Search {
        #[arg(long, default_value_t = 1000)]
        max_n: u64,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
    /// Decide whether K_m = K_n, with an exact square witness.
    Iso { m: u64, n: u64 },
    /// Issue a uniqueness certificate for an index n ≡ 2 (mod 4).
    Certify {
        n: u64,
        #[arg(long, default_value_t = 100_000_000)]
        prime_bound: u64,
        #[arg(long, default_value_t = 10_000)]
        index_cap: u64,
    },
    /// Verify a certificate file and print the check transcript.
    VerifyCert { path: std::path::PathBuf },
    /// Classify n against the uniqueness theorem's hypotheses.
    Hypotheses { n: u64 },
    /// Tabulate u_j, v_j and the square classification of u_j.
    Sequence {
        t: u64,
        #[arg(long, default_value_t = 30)]
        terms: u64,
    },
    /// Match square sequence terms against integral points on the
    /// quartic curves.
    Curves {
        t: u64,
        d: u64,
        #[arg(long, default_value_t = 50)]
        max_index: u64,
        #[arg(long, default_value_t = 50)]
        x_bound: u64,
    },
    /// Root numbers of E1 and E3, with the t ≡ 0 (mod 8) derivation
    /// when it applies.
    RootNumber { t: u64 },
}

fn fmt_quadint(q: &QuadInt) -> String {
    let (a, b) = q.coords();
    format!("({a} + {b}*sqrt({}))/2", q.d())
}

fn emit(cli: &Cli, text: String, value: serde_json::Value) {
    let rendered = match cli.format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
    };
    print!("{rendered}");
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &rendered) {
            eprintln!("error: cannot write {}: {e}", path.display());
            std::process::exit(2);
        }
    }
}

fn run_search(cli: &Cli, max_n: u64, workers: usize) -> ExitCode {
    let pairs = isotest::duplicate_search(max_n, workers.max(1));
    let mut text = format!("duplicate pairs with m < n <= {max_n}:\n");
    for (m, n) in &pairs {
        let _ = writeln!(text, "K_{m} = K_{n}");
    }
    let _ = writeln!(text, "total: {}", pairs.len());
    let value = json!({
        "max_n": max_n,
        "pairs": pairs,
    });
    emit(cli, text, value);
    ExitCode::SUCCESS
}

fn run_iso(cli: &Cli, m: u64, n: u64) -> ExitCode {
    let decision = match isotest::fields_equal(m, n) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut text = String::new();
    match &decision {
        FieldsDecision::Equal { alpha, witness } => {
            let _ = writeln!(text, "K_{m} = K_{n}: equal");
            let _ = writeln!(text, "alpha   = {}", fmt_quadint(alpha));
            let _ = writeln!(text, "witness = {}", fmt_quadint(witness));
            let _ = writeln!(text, "witness^2 = alpha checked exactly");
        }
        FieldsDecision::DistinctSubfields { d_m, d_n } => {
            let _ = writeln!(text, "K_{m} != K_{n}: distinct quadratic subfields");
            let _ = writeln!(text, "d({m}) = {d_m}, d({n}) = {d_n}");
        }
        FieldsDecision::AlphaNotSquare { alpha } => {
            let _ = writeln!(text, "K_{m} != K_{n}: alpha is not a square");
            let _ = writeln!(text, "alpha = {}", fmt_quadint(alpha));
        }
    }
    let equal = decision.is_equal();
    let value = json!({
        "m": m,
        "n": n,
        "result": decision,
    });
    emit(cli, text, value);
    if equal {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_certify(cli: &Cli, n: u64, prime_bound: u64, index_cap: u64) -> ExitCode {
    match certify::issue_certificate(n, prime_bound, index_cap) {
        Ok(cert) => {
            let canonical = cert.to_canonical_json();
            let text = format!(
                "issued {} certificate for n = {}\nd = {}, t = {}, r0 = {}, p = {}\n{}",
                cert.kind.as_str(),
                cert.n,
                cert.d,
                cert.t,
                cert.r0,
                cert.p,
                canonical
            );
            let value = serde_json::from_str(canonical.trim()).expect("canonical JSON");
            emit(cli, text, value);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("declined: {e}");
            ExitCode::from(1)
        }
    }
}

fn run_verify(cli: &Cli, path: &std::path::Path) -> ExitCode {
    let raw = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let cert = match UniquenessCertificate::from_json(&raw) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let transcript = certify::verify_certificate(&cert);
    let text = format!("{transcript}\n");
    let value = json!({
        "n": cert.n,
        "kind": cert.kind.as_str(),
        "transcript": transcript,
    });
    let accepted = transcript.accepted;
    emit(cli, text, value);
    if accepted {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_hypotheses(cli: &Cli, n: u64) -> ExitCode {
    let report = match isotest::theorem_hypotheses(n) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let case = match report.case {
        TheoremCase::A => "A (n ≡ 2 mod 4)",
        TheoremCase::B => "B (n ≡ 8 mod 16, odd unit trace)",
        TheoremCase::None => "none",
    };
    let text = format!(
        "n = {}: case {}\nd = {}, unit trace t = {} ({}), unit norm = {}\n",
        report.n,
        case,
        report.d,
        report.trace_t,
        if report.trace_odd { "odd" } else { "even" },
        report.unit_norm
    );
    let value = serde_json::to_value(&report).expect("serializable");
    emit(cli, text, value);
    ExitCode::SUCCESS
}

fn run_sequence(cli: &Cli, t: u64, terms: u64) -> ExitCode {
    let params = match LucasParams::new(BigInt::from(t)) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let disc = BigInt::from(t * t + 4);
    let (d, _) = arith::squarefree_part(&disc).expect("positive");
    let mut text = format!("t = {t}, d = {d} (squarefree part of t^2+4)\n");
    let mut rows = Vec::new();
    for j in 0..=terms {
        let pair = params.pair(j);
        // u_0 = 0 is outside the classifier's domain
        let class = if j == 0 {
            SquareClass::Neither
        } else {
            quartic::sequences::classify_square(&pair.u, &d)
        };
        let label = match &class {
            SquareClass::Square { root } => format!("u = {root}^2"),
            SquareClass::DSquare { root } => format!("u = {d}*{root}^2"),
            SquareClass::Neither => String::new(),
        };
        let _ = writeln!(text, "j = {:>3}  u = {:>12}  v = {:>12}  {}", j, pair.u, pair.v, label);
        rows.push(json!({
            "j": j,
            "u": pair.u.to_string(),
            "v": pair.v.to_string(),
            "class": class,
        }));
    }
    let value = json!({
        "t": t,
        "d": d.to_string(),
        "terms": rows,
    });
    emit(cli, text, value);
    ExitCode::SUCCESS
}

fn run_curves(cli: &Cli, t: u64, d: u64, max_index: u64, x_bound: u64) -> ExitCode {
    let report = match curves::square_point_bijection(
        &BigInt::from(t),
        &BigInt::from(d),
        max_index,
        x_bound,
    ) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut text = format!(
        "t = {}, d = {}, omega fundamental: {}\n",
        report.t, report.d, report.omega_fundamental
    );
    for e in &report.entries {
        let _ = writeln!(
            text,
            "j = {:>3}  u_j on C{}: (x, y) = ({}, {})",
            e.j, e.curve, e.x, e.y
        );
    }
    let _ = writeln!(text, "C1 points (x <= {x_bound}): {:?}", report.c1_points);
    let _ = writeln!(text, "C2 points (x <= {x_bound}): {:?}", report.c2_points);
    let _ = writeln!(
        text,
        "bijection: {}",
        match report.bijection_verified {
            Some(true) => "verified",
            Some(false) => "FAILED",
            None => "not claimed (omega not fundamental)",
        }
    );
    let value = serde_json::to_value(&report).expect("serializable");
    emit(cli, text, value);
    if report.bijection_verified == Some(false) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_root_number(cli: &Cli, t: u64) -> ExitCode {
    if t == 0 {
        eprintln!("error: t must be positive");
        return ExitCode::from(2);
    }
    let w1 = curves::root_number_e1(t);
    let w3 = curves::root_number_e3(t);
    let mut text = format!("t = {t}\nw(E1) = {w1:+}\nw(E3) = {w3:+}\n");
    let bs = if t % 8 == 0 {
        let report = curves::bs_derivation_check(t).expect("t ≡ 0 (mod 8)");
        let _ = writeln!(
            text,
            "derivation (t ≡ 0 mod 8): (t/2)^2+1 = {} * {}^4, r ≡ 1 (mod 16): {}, no prime ≡ 3 (mod 4): {}, global = {:+}",
            report.r,
            report.s,
            report.r_congruent_1_mod_16,
            report.no_prime_3_mod_4,
            report.global
        );
        Some(report)
    } else {
        None
    };
    let value = json!({
        "t": t,
        "w_e1": w1,
        "w_e3": w3,
        "derivation": bs,
    });
    emit(cli, text, value);
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Search { max_n, workers } => run_search(&cli, max_n, workers),
        Command::Iso { m, n } => run_iso(&cli, m, n),
        Command::Certify {
            n,
            prime_bound,
            index_cap,
        } => run_certify(&cli, n, prime_bound, index_cap),
        Command::VerifyCert { ref path } => {
            let path = path.clone();
            run_verify(&cli, &path)
        }
        Command::Hypotheses { n } => run_hypotheses(&cli, n),
        Command::Sequence { t, terms } => run_sequence(&cli, t, terms),
        Command::Curves {
            t,
            d,
            max_index,
            x_bound,
        } => run_curves(&cli, t, d, max_index, x_bound),
        Command::RootNumber { t } => run_root_number(&cli, t),
    }
}
