//! zeroapn: analyze 0-APN power functions over F_2^n.
//!
//! Subcommands: analyze a single exponent, scan a whole field, reproduce the
//! exponent catalogue, run the symbolic elimination suites, factor
//! polynomials, take elimination resultants, and compute CCZ classes.
//! Exit code 0 means every check the invoked command ran has passed.

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use zeroapn::ccz::{canonical_rep, coset_leader, distinct_classes};
use zeroapn::diffanalysis::{is_zero_apn, spectrum};
use zeroapn::exponents::{
    family_members, inequivalence_report, reproduction_rows, table1_report,
};
use zeroapn::gf2n::FieldCtx;
use zeroapn::gf2poly::BitPoly;
use zeroapn::multivar::{builtin_system, system_ids};
use zeroapn::resultant::{res_eliminate, BiPoly};

#[derive(Parser)]
#[command(name = "zeroapn", version, about = "0-APN power function analysis over F_2^n")]
struct Cli {
    /// Emit line-delimited JSON records instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldOpts {
    /// Custom irreducible modulus, e.g. "x^7+x^3+1" (default: lexicographically least)
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one exponent: spectrum, predicates, catalogue matches
    Analyze {
        n: u32,
        d: u64,
        #[command(flatten)]
        field: FieldOpts,
    },
    /// Sweep all exponents of F_2^n, one verdict per doubling coset
    Scan {
        n: u32,
        /// Override the time guard on large n
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        field: FieldOpts,
    },
    /// Reproduce the exponent catalogue over a range of n and diff it
    Table1 {
        n_min: u32,
        n_max: u32,
        /// Alternative catalogue manifest (JSON) to diff against
        #[arg(long)]
        manifest: Option<std::path::PathBuf>,
    },
    /// Run a builtin elimination chain (an id like 3.2, or "all") against its goldens
    Symbolic { id: String },
    /// Factor a polynomial over F_2
    Factor { poly: String },
    /// Eliminate y from two bivariate polynomials and factor the resultant
    Resultant { f: String, g: String },
    /// CCZ classes: with exponents, their distinct classes; without, the
    /// new-family inequivalence report
    Ccz {
        n: u32,
        #[arg(num_args = 0..)]
        ds: Vec<u64>,
    },
}

#[derive(Serialize)]
struct Verdict {
    n: u32,
    d_raw: u64,
    d_reduced: u64,
    d_canonical: u64,
    uniformity: u32,
    is_apn: bool,
    is_zero_apn: bool,
    matched_rows: Vec<u32>,
}

fn make_ctx(n: u32, field: &FieldOpts) -> Result<FieldCtx> {
    Ok(match &field.modulus {
        Some(text) => {
            let poly: BitPoly = text.parse().with_context(|| format!("bad modulus {text}"))?;
            FieldCtx::with_modulus(n, poly)?
        }
        None => FieldCtx::new(n)?,
    })
}

fn verdict(ctx: &FieldCtx, d: u64) -> Result<Verdict> {
    let n = ctx.n();
    let spec = spectrum(ctx, d);
    let d_reduced = spec.d;
    if d == 0 {
        // degenerate constant map x^0 = 1
        return Ok(Verdict {
            n,
            d_raw: 0,
            d_reduced: 0,
            d_canonical: 0,
            uniformity: spec.uniformity,
            is_apn: false,
            is_zero_apn: false,
            matched_rows: Vec::new(),
        });
    }
    let d_canonical = canonical_rep(n, d_reduced)?;
    let mut matched_rows = Vec::new();
    for row in reproduction_rows() {
        let members = family_members(row, n)?;
        if members
            .iter()
            .any(|&m| canonical_rep(n, m).map_or(false, |c| c == d_canonical))
        {
            matched_rows.push(row);
        }
    }
    Ok(Verdict {
        n,
        d_raw: d,
        d_reduced,
        d_canonical,
        uniformity: spec.uniformity,
        is_apn: spec.uniformity == 2,
        is_zero_apn: is_zero_apn(ctx, d_reduced),
        matched_rows,
    })
}

fn print_verdict(v: &Verdict, json: bool) {
    if json {
        println!("{}", serde_json::to_string(v).expect("serializable"));
    } else {
        println!(
            "n={} d={} (reduced {}, canonical {}) uniformity={} apn={} zero_apn={} rows={:?}",
            v.n, v.d_raw, v.d_reduced, v.d_canonical, v.uniformity, v.is_apn, v.is_zero_apn,
            v.matched_rows
        );
    }
}

fn cmd_analyze(n: u32, d: u64, field: &FieldOpts, json: bool) -> Result<bool> {
    let ctx = make_ctx(n, field)?;
    let v = verdict(&ctx, d)?;
    print_verdict(&v, json);
    Ok(true)
}

fn cmd_scan(n: u32, force: bool, field: &FieldOpts, json: bool) -> Result<bool> {
    if n > 14 && !force {
        bail!("scan of F_2^{n} exceeds the time guard (n > 14); pass --force to run anyway");
    }
    let ctx = make_ctx(n, field)?;
    let order = (1u64 << n) - 1;
    let leaders: Vec<u64> = (1..order).filter(|&d| coset_leader(n, d) == d).collect();
    let mut verdicts: Vec<Verdict> = leaders
        .par_iter()
        .map(|&d| verdict(&ctx, d))
        .collect::<Result<_>>()?;
    verdicts.sort_by_key(|v| v.d_reduced);
    let (mut apn, mut zero_only, mut neither) = (0u64, 0u64, 0u64);
    for v in &verdicts {
        match (v.is_apn, v.is_zero_apn) {
            (true, _) => apn += 1,
            (false, true) => zero_only += 1,
            (false, false) => neither += 1,
        }
        print_verdict(v, json);
    }
    if json {
        println!(
            "{}",
            serde_json::json!({"n": n, "classes": verdicts.len(), "apn": apn,
                               "zero_apn_not_apn": zero_only, "neither": neither})
        );
    } else {
        println!(
            "scan n={n}: {} classes, {apn} APN, {zero_only} 0-APN-not-APN, {neither} neither",
            verdicts.len()
        );
    }
    Ok(true)
}

fn cmd_table1(
    n_min: u32,
    n_max: u32,
    manifest: Option<&std::path::Path>,
    json: bool,
) -> Result<bool> {
    if n_max > 12 {
        bail!("table1 range is capped at n = 12");
    }
    let reports = match manifest {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let fams = zeroapn::exponents::load_families(&text)?;
            let rows: Vec<u32> = fams.iter().map(|f| f.row_id).collect();
            zeroapn::exponents::table1_report_with(&fams, &rows, n_min, n_max)?
        }
        None => table1_report(&reproduction_rows(), n_min, n_max)?,
    };
    let mut all_ok = true;
    let mut covered = false;
    for r in &reports {
        covered = true;
        all_ok &= r.ok;
        if json {
            println!(
                "{}",
                serde_json::json!({"row": r.row_id, "n": r.n, "generated": r.generated,
                                   "listed": r.listed, "missing": r.missing,
                                   "unexpected": r.unexpected,
                                   "skipped_errata": r.skipped_errata, "ok": r.ok})
            );
        } else {
            let status = if r.ok { "ok" } else { "MISMATCH" };
            print!("row {:>2} n={:>2} [{status}] listed={:?}", r.row_id, r.n, r.listed);
            if !r.missing.is_empty() {
                print!(" missing={:?}", r.missing);
            }
            if !r.unexpected.is_empty() {
                print!(" unexpected={:?}", r.unexpected);
            }
            if !r.skipped_errata.is_empty() {
                print!(" skipped-errata={:?}", r.skipped_errata);
            }
            println!();
        }
    }
    if !covered && !json {
        println!("n/a: no row has an admissible n in [{n_min}, {n_max}]");
    }
    Ok(all_ok)
}

fn cmd_symbolic(id: &str, json: bool) -> Result<bool> {
    let ids: Vec<&str> = if id == "all" { system_ids() } else { vec![id] };
    let mut all_ok = true;
    for id in ids {
        let sys = builtin_system(id)?;
        let report = sys.eliminate()?;
        all_ok &= report.matches_golden;
        if json {
            println!(
                "{}",
                serde_json::json!({"id": report.id, "steps": report.log,
                                   "cofactors": report.cofactors,
                                   "expectations_checked": report.expectations_checked,
                                   "factorization": report.factorization,
                                   "golden": report.golden,
                                   "matches_golden": report.matches_golden,
                                   "candidate_subfields": report.candidate_subfields})
            );
        } else {
            println!("system {}", report.id);
            for line in &report.log {
                println!("  {line}");
            }
            if !report.cofactors.is_empty() {
                println!("  cofactors divided out: {}", report.cofactors.join(", "));
            }
            println!("  final: {}", report.factorization);
            if report.matches_golden {
                println!("  golden: match");
            } else {
                println!("  golden: MISMATCH (want {})", report.golden);
            }
        }
    }
    Ok(all_ok)
}

fn cmd_factor(poly: &str, json: bool) -> Result<bool> {
    let p: BitPoly = poly.parse()?;
    let fac = p.factor()?;
    if json {
        let factors: Vec<_> = fac
            .factors()
            .iter()
            .map(|(q, m)| serde_json::json!({"factor": q.to_string(), "multiplicity": m}))
            .collect();
        println!("{}", serde_json::json!({"poly": p.to_string(), "factors": factors}));
    } else {
        println!("{p} = {fac}");
    }
    Ok(true)
}

fn cmd_resultant(f: &str, g: &str, json: bool) -> Result<bool> {
    let f: BiPoly = f.parse()?;
    let g: BiPoly = g.parse()?;
    let r = res_eliminate(&f, &g)?;
    let factored = if r.is_zero() { None } else { Some(r.factor()?) };
    if json {
        println!(
            "{}",
            serde_json::json!({"resultant": r.to_string(),
                               "factorization": factored.as_ref().map(|f| f.to_string())})
        );
    } else {
        match &factored {
            Some(fac) => println!("Res_y = {r} = {fac}"),
            None => println!("Res_y = 0 (inputs share a factor)"),
        }
    }
    Ok(true)
}

fn cmd_ccz(n: u32, ds: &[u64], json: bool) -> Result<bool> {
    if ds.is_empty() {
        let report = inequivalence_report(n)?;
        if json {
            println!(
                "{}",
                serde_json::json!({"n": n, "classes": report.classes,
                                   "inverse_pairs": report.inverse_pairs})
            );
        } else {
            println!(
                "n={n}: {} doubling cosets from the new families: {:?}",
                report.classes.len(),
                report.classes
            );
            if report.inverse_pairs.is_empty() {
                println!("all pairwise CCZ-inequivalent");
            } else {
                for (a, b) in &report.inverse_pairs {
                    println!("{a} ~ {b} (inverse cosets merge)");
                }
            }
        }
        return Ok(true);
    }
    for class in distinct_classes(n, ds) {
        if json {
            println!(
                "{}",
                serde_json::json!({"n": n, "canonical": class.canonical,
                                   "members": class.members})
            );
        } else {
            println!("canonical {}: members {:?}", class.canonical, class.members);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("ZEROAPN_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze { n, d, field } => cmd_analyze(*n, *d, field, cli.json),
        Command::Scan { n, force, field } => cmd_scan(*n, *force, field, cli.json),
        Command::Table1 { n_min, n_max, manifest } => {
            cmd_table1(*n_min, *n_max, manifest.as_deref(), cli.json)
        }
        Command::Symbolic { id } => cmd_symbolic(id, cli.json),
        Command::Factor { poly } => cmd_factor(poly, cli.json),
        Command::Resultant { f, g } => cmd_resultant(f, g, cli.json),
        Command::Ccz { n, ds } => cmd_ccz(*n, ds, cli.json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
