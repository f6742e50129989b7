//! Command-line front end: theory construction, lattice emission,
//! folding/decoherence/scalar computations, witness search and the
//! verification runner.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error. Outputs
//! are deterministic for a fixed argv and seed; timing diagnostics go to
//! standard error only.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use galois_cpm::cpm::{
    decohere_map, discard_map, nested_norm_formula, sum_of_norms_search,
};
use galois_cpm::error::Error;
use galois_cpm::fields::{
    cyc_context, ff_context, ff_norm_image, ff_subfield, is_totally_positive, norm_full,
    quad_context, sextic_context, ContextOps, FieldContext, FieldElement,
};
use galois_cpm::folding::{fold_complete, fold_transversal};
use galois_cpm::group::{FoldingData, GaloisGroup, Subgroup, Transversal};
use galois_cpm::matrix::Matrix;
use galois_cpm::parse::parse_element;
use galois_cpm::rational::{format_rational, parse_rational};
use galois_cpm::report::{lattice_dot, lattice_json};
use galois_cpm::verify::{run_suite, SUITE_NAMES};

#[derive(Parser)]
#[command(name = "galois-cpm", version, about = "Exact folded matrix theories over Galois field extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Field selection shared by most verbs.
#[derive(Args, Clone)]
struct FieldArgs {
    /// Cyclotomic conductor n for Q(zeta_n)
    #[arg(long)]
    conductor: Option<u64>,
    /// Finite field GF(p^m), written p,m
    #[arg(long, value_name = "P,M")]
    gf: Option<String>,
    /// Quadratic field Q(sqrt d)
    #[arg(long, value_name = "D")]
    quadratic: Option<i64>,
    /// The sextic splitting field of x^3 - 2
    #[arg(long)]
    sextic: bool,
}

impl FieldArgs {
    fn context(&self) -> Result<Arc<FieldContext>, Error> {
        match (&self.conductor, &self.gf, &self.quadratic, self.sextic) {
            (Some(n), None, None, false) => cyc_context(*n),
            (None, Some(pm), None, false) => {
                let (p, m) = pm
                    .split_once(',')
                    .ok_or_else(|| Error::Parse("expected --gf P,M".into()))?;
                let p = p.trim().parse().map_err(|_| Error::Parse("bad prime".into()))?;
                let m = m.trim().parse().map_err(|_| Error::Parse("bad degree".into()))?;
                ff_context(p, m)
            }
            (None, None, Some(d), false) => quad_context(*d),
            (None, None, None, true) => Ok(sextic_context()),
            _ => Err(Error::Parse(
                "choose exactly one of --conductor, --gf, --quadratic, --sextic".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the subgroup lattice with fixed fields and semiring tags
    Lattice {
        #[command(flatten)]
        field: FieldArgs,
        /// DOT output instead of JSON
        #[arg(long)]
        dot: bool,
        /// JSON output (the default)
        #[arg(long)]
        json: bool,
    },
    /// Fold a matrix: completely, or over a subgroup transversal
    Fold {
        #[command(flatten)]
        field: FieldArgs,
        /// Path to the matrix JSON file
        #[arg(long)]
        matrix: String,
        /// Subgroup generators (see --help for the element syntax)
        #[arg(long, value_name = "G1,G2,...")]
        subgroup: Option<String>,
        /// Transversal representatives (same element syntax)
        #[arg(long, value_name = "T1,T2,...")]
        transversal: Option<String>,
    },
    /// Print the H-decoherence projector on fld(dim)
    Decohere {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_name = "G1,G2,...")]
        subgroup: String,
        #[arg(long)]
        dim: usize,
    },
    /// Print the H-discarding effect on fld(dim)
    Discard {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_name = "G1,G2,...")]
        subgroup: String,
        #[arg(long)]
        dim: usize,
    },
    /// Discarded scalar of a state, with the nested-norm cross-check
    Scalar {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_name = "G1,G2,...")]
        subgroup: String,
        /// Path to the state JSON file (an n x 1 matrix)
        #[arg(long)]
        state: String,
    },
    /// Field norm of an element
    Norm {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        element: String,
    },
    /// Total positivity of an element
    Tp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        element: String,
    },
    /// Finite-field context report: modulus and norm-image surjectivity
    Ff {
        #[arg(long, value_name = "P,M")]
        gf: String,
    },
    /// Search for target = sum of relative norms of bounded elements
    Search {
        #[command(flatten)]
        field: FieldArgs,
        /// Target as p/q
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, value_name = "G1,G2,...")]
        subgroup: Option<String>,
        #[arg(long, default_value_t = 3)]
        bound_height: u32,
        #[arg(long, default_value_t = 8)]
        bound_terms: u32,
    },
    /// Run verification suites
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run a single suite by name
        #[arg(long)]
        suite: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Parses a comma-separated subgroup/transversal spec. Entries name group
/// elements by canonical index (i0, i1, ...) or by value: unit k for
/// cyclotomic contexts, Frobenius power j for finite fields, words e, s,
/// t^1, t^1s for the sextic field, e or c for the quadratic conjugation.
fn parse_members(group: &Arc<GaloisGroup>, spec: &str) -> Result<Vec<usize>, Error> {
    let mut out = Vec::new();
    for tok in spec.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        if let Some(rest) = tok.strip_prefix('i') {
            if let Ok(idx) = rest.parse::<usize>() {
                if idx < group.order() {
                    out.push(idx);
                    continue;
                }
            }
        }
        let found = group.elements().iter().position(|e| match e {
            galois_cpm::group::GroupElement::Unit { k, .. } => tok.parse::<u64>() == Ok(*k),
            galois_cpm::group::GroupElement::Frobenius { j, .. } => {
                tok.parse::<u32>() == Ok(*j)
            }
            galois_cpm::group::GroupElement::QuadConj { flip, .. } => {
                (tok == "c" && *flip) || (tok == "e" && !*flip)
            }
            galois_cpm::group::GroupElement::S3Word { .. } => e.to_string() == tok,
        });
        match found {
            Some(idx) => out.push(idx),
            None => {
                return Err(Error::Parse(format!(
                    "{tok:?} does not name an element of this Galois group"
                )))
            }
        }
    }
    Ok(out)
}

fn subgroup_from_spec(ctx: &Arc<FieldContext>, spec: &str) -> Result<Subgroup, Error> {
    let group = ctx.galois_group();
    let gens = parse_members(group, spec)?;
    Ok(Subgroup::generated(group, &gens))
}

fn read_matrix(path: &str) -> Result<Matrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad matrix JSON: {e}")))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Lattice { field, dot, json } => {
            let ctx = field.context()?;
            let spec = ctx.spec();
            if dot && json {
                return Err(Error::Parse("choose one of --dot, --json".into()));
            }
            if dot {
                print!("{}", lattice_dot(&spec)?);
            } else {
                println!("{}", lattice_json(&spec)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fold { field, matrix, subgroup, transversal } => {
            let ctx = field.context()?;
            let m = read_matrix(&matrix)?;
            if *m.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            let group = ctx.galois_group().clone();
            let folded = match subgroup {
                None => {
                    if transversal.is_some() {
                        return Err(Error::Parse("--transversal requires --subgroup".into()));
                    }
                    fold_complete(&m, &group)?
                }
                Some(sub) => {
                    let h = subgroup_from_spec(&ctx, &sub)?;
                    let t = match transversal {
                        None => Transversal::canonical(&h),
                        Some(ts) => Transversal::new(&h, parse_members(&group, &ts)?)?,
                    };
                    let tau = FoldingData::new(&group, &h, t)?;
                    fold_transversal(&m, &tau)?
                }
            };
            print_json(&folded);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decohere { field, subgroup, dim } => {
            let ctx = field.context()?;
            let h = subgroup_from_spec(&ctx, &subgroup)?;
            let group = ctx.galois_group().clone();
            let dec = decohere_map(&ctx, dim, &group, &h)?;
            print_json(&serde_json::json!({
                "exact": true,
                "subgroup_order": h.order(),
                "rank": dim.pow(h.index() as u32),
                "matrix": dec,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Discard { field, subgroup, dim } => {
            let ctx = field.context()?;
            let h = subgroup_from_spec(&ctx, &subgroup)?;
            let group = ctx.galois_group().clone();
            let dis = discard_map(&ctx, dim, &group, &h)?;
            print_json(&serde_json::json!({
                "exact": true,
                "subgroup_order": h.order(),
                "effect": dis.realized(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Scalar { field, subgroup, state } => {
            let ctx = field.context()?;
            let h = subgroup_from_spec(&ctx, &subgroup)?;
            let m = read_matrix(&state)?;
            if *m.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if m.cols() != 1 {
                return Err(Error::DimensionMismatch("state must be a column".into()));
            }
            let v: Vec<FieldElement> = (0..m.rows()).map(|i| m.get(i, 0).clone()).collect();
            // matrix contraction route
            let group = ctx.galois_group().clone();
            let row = discard_map(&ctx, m.rows(), &group, &h)?;
            let folded = fold_complete(&m, &group)?;
            let scalar = row
                .realized()
                .compose(&folded)?
                .as_scalar()
                .cloned()
                .expect("contraction of a state is a scalar");
            // nested-norm route must agree exactly
            let formula = nested_norm_formula(&v, &h)?;
            assert_eq!(scalar, formula, "norm-tower formula disagrees with contraction");
            print_json(&serde_json::json!({
                "exact": true,
                "value": scalar,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Norm { field, element } => {
            let ctx = field.context()?;
            let e = parse_element(&ctx, &element)?;
            let n = norm_full(&e);
            match n.to_rational() {
                Some(q) => println!("{}", format_rational(&q)),
                None => println!("{}", n.to_residue().expect("norm lies in the prime field")),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tp { field, element } => {
            let ctx = field.context()?;
            let e = parse_element(&ctx, &element)?;
            let tp = is_totally_positive(&e)?;
            print_json(&serde_json::json!({
                "exact": true,
                "element": e,
                "totally_positive": tp,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Ff { gf } => {
            let args = FieldArgs { conductor: None, gf: Some(gf), quadratic: None, sextic: false };
            let ctx = args.context()?;
            let (p, m, modulus) = match ctx.as_ref() {
                FieldContext::Finite(c) => {
                    (c.characteristic(), c.extension_degree(), c.modulus().to_vec())
                }
                _ => unreachable!(),
            };
            let image = ff_norm_image(&ctx, 1)?;
            let base = ff_subfield(&ctx, 1)?;
            print_json(&serde_json::json!({
                "exact": true,
                "p": p,
                "m": m,
                "modulus": modulus,
                "norm_image_size": image.len(),
                "norm_surjective": image == base,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { field, target, subgroup, bound_height, bound_terms } => {
            let ctx = field.context()?;
            let q = parse_rational(&target)?;
            let target_elem = ctx.from_rational(&q)?;
            let h = match subgroup {
                Some(s) => subgroup_from_spec(&ctx, &s)?,
                None => Subgroup::full(ctx.galois_group()),
            };
            let witness = sum_of_norms_search(&target_elem, &h, bound_height, bound_terms)?;
            print_json(&serde_json::json!({
                "exact": true,
                "target": format_rational(&q),
                "found": witness.is_some(),
                "witnesses": witness,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { seed, suite } => {
            let names: Vec<&str> = match &suite {
                None => SUITE_NAMES.to_vec(),
                Some(s) => {
                    if !SUITE_NAMES.contains(&s.as_str()) {
                        eprintln!(
                            "error: unknown suite {s:?}; available: {}",
                            SUITE_NAMES.join(", ")
                        );
                        return Ok(ExitCode::from(2));
                    }
                    vec![s.as_str()]
                }
            };
            let mut all_passed = true;
            for name in names {
                let report = run_suite(name, seed)?;
                eprintln!("{}: {} ms", report.suite, report.elapsed_ms);
                println!("{}", serde_json::to_string(&report).expect("serializable"));
                all_passed &= report.passed();
            }
            Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
