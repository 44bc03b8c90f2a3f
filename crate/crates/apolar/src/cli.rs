//! Command-line surface: ideal/rank queries, fiber dimensions, identity
//! suites, the census and splitting-type descriptors, all with
//! machine-readable JSON output (rationals rendered as exact `"p/q"`
//! strings, never floats).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 domain error (zero form).

use crate::apolarity::{ann_dim, sylvester_generators, ApolarityError};
use crate::duality::CokernelBranch;
use crate::form::BinaryForm;
use crate::moduli::{census, describe, fiber_dim, CensusParams, ModuliError, SplittingType};
use crate::parse::parse_form;
use crate::rational::render_rational;
use crate::verify::{run_suite, SuiteKind};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "apolar",
    version,
    about = "Exact apolar ideals, Waring/cactus ranks and moduli fiber dimensions for binary forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apolar ideal of a form: generator degrees, generators, ranks and
    /// graded dimensions.
    Ann {
        /// Form as an expression (`X0^2*X1`) or JSON (`{"degree":..,"coeffs":[..]}`).
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Also report the annihilator dimension at this single degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Fiber dimension of the framed rank-2 moduli space over the point of a
    /// form, for the splitting O(n1) ⊕ O(n2).
    FiberDim {
        #[arg(long, allow_hyphen_values = true)]
        n1: i64,
        #[arg(long, allow_hyphen_values = true)]
        n2: i64,
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Run a seeded identity suite (duality|dims|quartics|action).
    Verify {
        #[arg(long)]
        suite: String,
        /// Defaults to $APOLAR_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Sample random integer forms and tabulate (cactus rank, fiber dim).
    Census {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        samples: usize,
        /// Defaults to $APOLAR_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10)]
        bound: i64,
        /// `json` or `csv`.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Numerical data of a splitting type, e.g. --splitting "-3:1,-5:1".
    Describe {
        #[arg(long, allow_hyphen_values = true)]
        splitting: String,
    },
}

fn default_seed() -> u64 {
    std::env::var("APOLAR_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn fail(code: i32, message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    code
}

fn form_json(p: &BinaryForm) -> Value {
    json!({
        "degree": p.degree(),
        "coeffs": p.coeffs().iter().map(render_rational).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

fn emit(command: &str, inputs: Value, outputs: Value) {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
    });
    println!("{doc}");
}

/// Dispatch a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Ann { form, degree } => cmd_ann(form, *degree),
        Command::FiberDim { n1, n2, form } => cmd_fiber_dim(*n1, *n2, form),
        Command::Verify {
            suite,
            seed,
            max_degree,
        } => cmd_verify(suite, seed.unwrap_or_else(default_seed), *max_degree),
        Command::Census {
            l,
            d,
            samples,
            seed,
            bound,
            format,
        } => cmd_census(
            *l,
            *d,
            *samples,
            seed.unwrap_or_else(default_seed),
            *bound,
            format,
        ),
        Command::Describe { splitting } => cmd_describe(splitting),
    }
}

fn parse_form_arg(text: &str) -> Result<BinaryForm, i32> {
    let p = parse_form(text).map_err(|e| fail(EXIT_USAGE, e))?;
    if p.is_zero() {
        return Err(fail(EXIT_DOMAIN, "the zero form has no apolar data"));
    }
    Ok(p)
}

fn cmd_ann(form_text: &str, degree: Option<usize>) -> i32 {
    let p = match parse_form_arg(form_text) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let l = p.degree();
    if let Some(d) = degree {
        if d > l {
            return fail(
                EXIT_USAGE,
                format!("--degree {d} exceeds the form degree {l}"),
            );
        }
    }
    let profile = sylvester_generators(&p).expect("nonzero form");
    let ann_dims: Vec<usize> = (0..=l).map(|d| ann_dim(&p, d).expect("in range")).collect();
    let mut outputs = json!({
        "d1": profile.d1,
        "d2": profile.d2,
        "g1": form_json(&profile.g1),
        "g2": form_json(&profile.g2),
        "waring_rank": profile.waring_rank,
        "cactus_rank": profile.cactus_rank,
        "equal_degrees": profile.equal_degrees,
        "ann_dims": ann_dims,
    });
    if let Some(d) = degree {
        outputs["ann_dim_at"] = json!({ "degree": d, "dim": ann_dims[d] });
    }
    emit("ann", json!({ "form": form_json(&p) }), outputs);
    EXIT_OK
}

fn cmd_fiber_dim(n1: i64, n2: i64, form_text: &str) -> i32 {
    let p = match parse_form_arg(form_text) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let dim = match fiber_dim(n1, n2, &p) {
        Ok(dim) => dim,
        Err(ModuliError::Apolarity(ApolarityError::ZeroForm)) => {
            return fail(EXIT_DOMAIN, "the zero form has no fiber")
        }
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let l = p.degree();
    let d = (n1 - n2) as usize;
    let crank = crate::apolarity::cactus_rank(&p).expect("nonzero form");
    let branch = CokernelBranch::classify(l, d, crank);
    emit(
        "fiber-dim",
        json!({ "n1": n1, "n2": n2, "form": form_json(&p) }),
        json!({
            "l": l,
            "d": d,
            "crank": crank,
            "fiber_dim": dim,
            "branch": branch.as_str(),
        }),
    );
    EXIT_OK
}

fn cmd_verify(suite: &str, seed: u64, max_degree: usize) -> i32 {
    let kind: SuiteKind = match suite.parse() {
        Ok(kind) => kind,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let report = run_suite(kind, seed, max_degree);
    emit(
        "verify",
        json!({ "suite": suite, "seed": seed, "max_degree": max_degree }),
        json!({
            "checks": report.checks,
            "failures": report.failures,
            "passed": report.passed(),
            "first_counterexample": report.first_counterexample,
        }),
    );
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn cmd_census(l: usize, d: usize, samples: usize, seed: u64, bound: i64, format: &str) -> i32 {
    if format != "json" && format != "csv" {
        return fail(
            EXIT_USAGE,
            format!("unknown format '{format}' (expected json or csv)"),
        );
    }
    let params = CensusParams {
        l,
        d,
        samples,
        seed,
        coeff_bound: bound,
    };
    let table = match census(&params) {
        Ok(table) => table,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    if format == "csv" {
        println!("crank,fiber_dim,count");
        for row in &table.rows {
            println!("{},{},{}", row.cactus_rank, row.fiber_dim, row.count);
        }
        return EXIT_OK;
    }
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| json!({ "crank": r.cactus_rank, "fiber_dim": r.fiber_dim, "count": r.count }))
        .collect();
    emit(
        "census",
        json!({ "l": l, "d": d, "samples": samples, "seed": seed, "bound": bound }),
        json!({
            "rows": rows,
            "top": {
                "crank": table.top_rank,
                "count": table.top_count,
                "fraction": render_rational(&table.top_fraction()),
            },
        }),
    );
    EXIT_OK
}

fn parse_splitting(text: &str) -> Result<SplittingType, String> {
    let mut pairs = Vec::new();
    for part in text.split(',') {
        let (n, s) = part
            .split_once(':')
            .ok_or_else(|| format!("malformed component '{part}' (expected n:s)"))?;
        let n: i64 = n.trim().parse().map_err(|_| format!("bad twist '{n}'"))?;
        let s: usize = s
            .trim()
            .parse()
            .map_err(|_| format!("bad multiplicity '{s}'"))?;
        pairs.push((n, s));
    }
    SplittingType::new(pairs).map_err(|e| e.to_string())
}

fn cmd_describe(text: &str) -> i32 {
    let splitting = match parse_splitting(text) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let desc = describe(&splitting);
    let pairs: Vec<Value> = desc
        .splitting
        .pairs()
        .iter()
        .map(|&(n, s)| json!({ "n": n, "s": s }))
        .collect();
    emit(
        "describe",
        json!({ "splitting": text }),
        json!({
            "summands": pairs,
            "l": desc.l,
            "h1_dim": desc.h1_dim,
            "aut_block_degrees": desc.aut_block_degrees,
            "aut_dim": desc.aut_dim,
        }),
    );
    EXIT_OK
}
