//! Batch CLI over the exact pfaffian-relations library.
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails (the
//! offending object is printed), 2 on usage or parse errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pfshuffle::shuffle::QuadraticTermDto;
use pfshuffle::spinaction::{self, LinCombRows};
use pfshuffle::straighten::ReductionOrder;
use pfshuffle::{
    oracle, shuffling_relation, truncation_counterexample, PfaffianContext, Row, Straightener,
    Tableau,
};

#[derive(Parser)]
#[command(
    name = "pfshuffle",
    version,
    about = "Exact relations among pfaffians of principal minors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for batch verification (defaults to all cores;
    /// RAYON_NUM_THREADS is honored too). Output is deterministic either way.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args)]
struct Common {
    /// Rank: rows live over 1..=n, matrices are (n+1) x (n+1).
    #[arg(long)]
    n: u8,
    /// Machine-readable JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the polynomial pf_I for a row I.
    Pfaffian {
        #[command(flatten)]
        common: Common,
        /// Row, e.g. "23" or "2 3"; empty for the constant 1.
        #[arg(long, default_value = "")]
        row: String,
    },
    /// Print the shuffling relation of a non-standard two-row tableau.
    Theta {
        #[command(flatten)]
        common: Common,
        /// Two rows separated by ';', e.g. "23;14".
        #[arg(long)]
        tableau: String,
        /// Also substitute pfaffians and require the result to vanish.
        #[arg(long)]
        pfaffian_check: bool,
    },
    /// Rewrite a product of generators into the standard monomial basis.
    Straighten {
        #[command(flatten)]
        common: Common,
        /// Rows separated by ';', e.g. "23;14" or "23;14;2".
        #[arg(long)]
        rows: String,
        /// Re-expand through pfaffians and require exact equality.
        #[arg(long)]
        check: bool,
        /// Shuffling-relation budget before aborting.
        #[arg(long, default_value_t = 1_000_000)]
        step_budget: u64,
    },
    /// Exact kernel verification at one rank.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check that the shuffling relations span the kernel.
        #[arg(long)]
        span: bool,
        /// Check linear independence of standard monomials.
        #[arg(long)]
        basis: bool,
        /// Check that every relation vanishes under substitution.
        #[arg(long)]
        exhaustive_theta: bool,
        /// Allow ranks above the default bound of 5.
        #[arg(long)]
        allow_large: bool,
    },
    /// Apply a raising/lowering/diagonal operator to a basis vector.
    Spin {
        #[command(flatten)]
        common: Common,
        /// Operator: e<i>, f<i> or h<i>, e.g. "e1".
        #[arg(long)]
        op: String,
        /// Basis row the operator acts on, e.g. "23".
        #[arg(long, conflicts_with = "vector_json")]
        vector: Option<String>,
        /// Linear combination as JSON {"terms":[{"row":[2,3],"coeff":"1"}]}.
        #[arg(long)]
        vector_json: Option<String>,
    },
    /// Demonstrate that truncating the relation of (23/14) fails.
    Counterexample {
        /// Machine-readable JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("--threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct RunConfigDto {
    version: &'static str,
    command: &'static str,
    n: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    step_budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    allow_large: Option<bool>,
}

fn config(command: &'static str, n: Option<u8>) -> RunConfigDto {
    RunConfigDto {
        version: env!("CARGO_PKG_VERSION"),
        command,
        n,
        step_budget: None,
        allow_large: None,
    }
}

#[derive(Serialize)]
struct ThetaReport {
    config: RunConfigDto,
    tableau: Vec<Vec<u8>>,
    terms: Vec<QuadraticTermDto>,
    pfaffian_check: Option<bool>,
}

#[derive(Serialize)]
struct StraightenReport {
    config: RunConfigDto,
    rows: Vec<Vec<u8>>,
    terms: Vec<MonomialTermDto>,
    steps: u64,
    check: Option<bool>,
}

#[derive(Serialize)]
struct MonomialTermDto {
    rows: Vec<Vec<u8>>,
    coeff: String,
}

#[derive(Serialize)]
struct VerifyFullReport {
    config: RunConfigDto,
    #[serde(flatten)]
    report: oracle::VerifyReport,
}

#[derive(Serialize)]
struct SpinReport {
    config: RunConfigDto,
    op: String,
    terms: Vec<SpinTermDto>,
}

#[derive(Serialize)]
struct SpinTermDto {
    row: Vec<u8>,
    coeff: String,
}

#[derive(Serialize)]
struct CounterexampleReportDto {
    config: RunConfigDto,
    truncated_terms: Vec<QuadraticTermDto>,
    residual_terms: Vec<QuadraticTermDto>,
    residual_pf: String,
    truncated_pf_nonzero: bool,
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Pfaffian { common, row } => {
            let row = Row::parse(&row).map_err(|e| e.to_string())?;
            row.check_alphabet(common.n).map_err(|e| e.to_string())?;
            let ctx = PfaffianContext::new(common.n);
            let poly = ctx.pf_row(&row);
            if common.json {
                println!(
                    "{}",
                    serde_json::to_string(&poly.to_dto()).map_err(|e| e.to_string())?
                );
            } else {
                println!("{poly}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Theta {
            common,
            tableau,
            pfaffian_check,
        } => {
            let tableau = Tableau::parse(&tableau).map_err(|e| e.to_string())?;
            for r in tableau.rows() {
                r.check_alphabet(common.n).map_err(|e| e.to_string())?;
                if !r.is_standard() {
                    return Err(format!("row {r} is not standard"));
                }
            }
            let Some((top, bottom)) = tableau.two_rows() else {
                return Err("theta needs exactly two rows".into());
            };
            if top.leq(bottom) {
                return Err(format!("tableau {tableau} is standard; nothing to shuffle"));
            }
            let relation = shuffling_relation(top, bottom);
            let check = if pfaffian_check {
                let ctx = PfaffianContext::new(common.n);
                Some(relation.pfaffian_substitution(&ctx).is_zero())
            } else {
                None
            };
            if common.json {
                let report = ThetaReport {
                    config: config("theta", Some(common.n)),
                    tableau: tableau.rows().iter().map(|r| r.entries().to_vec()).collect(),
                    terms: relation.to_dto(),
                    pfaffian_check: check,
                };
                println!(
                    "{}",
                    serde_json::to_string(&report).map_err(|e| e.to_string())?
                );
            } else {
                println!("{relation}");
                if let Some(ok) = check {
                    println!("pfaffian substitution vanishes: {ok}");
                }
            }
            if check == Some(false) {
                eprintln!("check failed for tableau {tableau}");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Straighten {
            common,
            rows,
            check,
            step_budget,
        } => {
            let rows: Vec<Row> = rows
                .split(';')
                .map(Row::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for r in &rows {
                r.check_alphabet(common.n).map_err(|e| e.to_string())?;
                if !r.is_standard() {
                    return Err(format!("row {r} is not standard"));
                }
            }
            let mut straightener = Straightener::new(step_budget);
            let result = straightener
                .straighten_monomial_with(&rows, ReductionOrder::Leftmost)
                .map_err(|e| e.to_string())?;
            let check_result = if check {
                let ctx = PfaffianContext::new(common.n);
                let mut original = pfshuffle::SparsePoly::one();
                for r in &rows {
                    original = &original * &ctx.pf_row(r);
                }
                Some(original == result.expansion.pfaffian_substitution(&ctx))
            } else {
                None
            };
            if common.json {
                let mut cfg = config("straighten", Some(common.n));
                cfg.step_budget = Some(step_budget);
                let report = StraightenReport {
                    config: cfg,
                    rows: rows.iter().map(|r| r.entries().to_vec()).collect(),
                    terms: result
                        .expansion
                        .terms()
                        .map(|(m, c)| MonomialTermDto {
                            rows: m.rows().iter().map(|r| r.entries().to_vec()).collect(),
                            coeff: c.to_string(),
                        })
                        .collect(),
                    steps: result.steps,
                    check: check_result,
                };
                println!(
                    "{}",
                    serde_json::to_string(&report).map_err(|e| e.to_string())?
                );
            } else {
                for (m, c) in result.expansion.terms() {
                    println!("{c} * x({m})");
                }
                println!("steps: {}", result.steps);
                if let Some(ok) = check_result {
                    println!("pfaffian re-expansion matches: {ok}");
                }
            }
            if check_result == Some(false) {
                eprintln!("check failed for rows");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            common,
            span,
            basis,
            exhaustive_theta,
            allow_large,
        } => {
            let ctx = PfaffianContext::new(common.n);
            let report = oracle::verify(&ctx, allow_large).map_err(|e| e.to_string())?;
            let mut failed = Vec::new();
            if !report.all_theta_vanish {
                failed.push("a shuffling relation does not vanish");
            }
            if span && !report.span_ok {
                failed.push("relations do not span the kernel");
            }
            if basis && !(report.degree1_independent && report.degree2_independent) {
                failed.push("standard monomials are dependent");
            }
            let _ = exhaustive_theta; // vanishing is always computed
            if common.json {
                let mut cfg = config("verify", Some(common.n));
                cfg.allow_large = Some(allow_large);
                let full = VerifyFullReport {
                    config: cfg,
                    report: report.clone(),
                };
                println!(
                    "{}",
                    serde_json::to_string(&full).map_err(|e| e.to_string())?
                );
            } else {
                println!("rank n = {}", report.n);
                println!("pairs = {}", report.pairs);
                println!("standard pairs = {}", report.standard_pairs);
                println!("kernel_dim = {}", report.kernel_dim);
                println!("theta_count = {}", report.theta_count);
                println!("all_theta_vanish = {}", report.all_theta_vanish);
                println!("span_ok = {}", report.span_ok);
                println!(
                    "independent: degree1 = {}, degree2 = {}",
                    report.degree1_independent, report.degree2_independent
                );
            }
            if failed.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                for f in failed {
                    eprintln!("check failed: {f}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Spin {
            common,
            op,
            vector,
            vector_json,
        } => {
            let v = match (vector, vector_json) {
                (Some(text), None) => {
                    let row = Row::parse(&text).map_err(|e| e.to_string())?;
                    row.check_alphabet(common.n).map_err(|e| e.to_string())?;
                    if !row.is_standard() {
                        return Err(format!("row {row} is not standard"));
                    }
                    LinCombRows::one(row)
                }
                (None, Some(text)) => parse_lincomb(&text, common.n)?,
                _ => return Err("spin needs --vector or --vector-json".into()),
            };
            let (kind, index) = op.split_at(1);
            let index: u8 = index
                .parse()
                .map_err(|_| format!("bad operator index in {op:?}"))?;
            if index == 0 || index > common.n + 1 {
                return Err(format!(
                    "operator index {index} outside 1..={}",
                    common.n + 1
                ));
            }
            let image = match kind {
                "e" => spinaction::apply_e(common.n, index, &v),
                "f" => spinaction::apply_f(common.n, index, &v),
                "h" => {
                    let mut out = LinCombRows::zero();
                    for (row, c) in v.terms() {
                        let scale = spinaction::root_pairing(
                            common.n,
                            index,
                            &spinaction::weight(common.n, row),
                        );
                        out.add_term(row.clone(), c * num_bigint::BigInt::from(scale));
                    }
                    out
                }
                other => return Err(format!("unknown operator kind {other:?}")),
            };
            if common.json {
                let report = SpinReport {
                    config: config("spin", Some(common.n)),
                    op,
                    terms: image
                        .terms()
                        .map(|(r, c)| SpinTermDto {
                            row: r.entries().to_vec(),
                            coeff: c.to_string(),
                        })
                        .collect(),
                };
                println!(
                    "{}",
                    serde_json::to_string(&report).map_err(|e| e.to_string())?
                );
            } else {
                println!("{image}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Counterexample { json } => {
            let ctx = PfaffianContext::new(4);
            let report = truncation_counterexample(&ctx);
            let ok = !report.truncated_pf.is_zero() && !report.residual_pf.is_zero();
            if json {
                let dto = CounterexampleReportDto {
                    config: config("counterexample", Some(4)),
                    truncated_terms: report.truncated.to_dto(),
                    residual_terms: report.residual.to_dto(),
                    residual_pf: report.residual_pf.to_string(),
                    truncated_pf_nonzero: !report.truncated_pf.is_zero(),
                };
                println!("{}", serde_json::to_string(&dto).map_err(|e| e.to_string())?);
            } else {
                println!("relation of (23;14):   {}", report.full);
                println!("kept (K stays below):  {}", report.truncated);
                println!("residual after eliminating non-standard terms: {}", report.residual);
                println!("residual substitution: {}", report.residual_pf);
                println!(
                    "truncation is a relation: {}",
                    report.truncated_pf.is_zero()
                );
            }
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("counterexample degenerated; expected nonzero residual");
                Ok(ExitCode::from(1))
            }
        }
    }
}

#[derive(serde::Deserialize)]
struct LinCombDto {
    terms: Vec<LinCombTermDto>,
}

#[derive(serde::Deserialize)]
struct LinCombTermDto {
    row: Vec<u8>,
    coeff: String,
}

fn parse_lincomb(text: &str, n: u8) -> Result<LinCombRows, String> {
    let dto: LinCombDto = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut v = LinCombRows::zero();
    for t in dto.terms {
        let row = Row::new(t.row);
        row.check_alphabet(n).map_err(|e| e.to_string())?;
        if !row.is_standard() {
            return Err(format!("row {row} is not standard"));
        }
        let coeff: num_bigint::BigInt =
            t.coeff.parse().map_err(|_| format!("bad coefficient {:?}", t.coeff))?;
        v.add_term(row, coeff);
    }
    Ok(v)
}
