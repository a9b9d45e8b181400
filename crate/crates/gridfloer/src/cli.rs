//! Command-line surface. Exit codes: 0 success, 1 property failure,
//! 2 input error, 3 resource cap.

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complex::{Coeffs, Flavor, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::grid::{parse_grid, GridDiagram, MoveSpec, Side, StabVariant};

#[derive(Parser)]
#[command(
    name = "gridfloer",
    about = "Knot and link Floer homology from grid diagrams",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit machine-readable JSON instead of human text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Tilde,
    Hat,
    MinusReport,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffArg {
    F2,
    Z,
}

#[derive(Args)]
struct CapArg {
    /// Generator cap: refuse grids with n above this.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a grid file; print its summary.
    Validate { path: String },
    /// Compute bigraded homology (tilde/hat) and tau.
    Homology {
        path: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Hat)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = CoeffArg::F2)]
        coeff: CoeffArg,
        #[command(flatten)]
        cap: CapArg,
        /// Dump per-block boundary matrices (sparse triplets) to a directory.
        #[arg(long)]
        dump_boundary: Option<String>,
    },
    /// Compute the normalized multivariable Alexander polynomial.
    Alexander { path: String },
    /// Compute the tau invariant of a knot.
    Tau {
        path: String,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Apply moves to a grid, or generate a random legal move sequence.
    Move {
        path: String,
        /// Move specs, e.g. cyclic-rows:1 commute-cols:3
        /// stabilize:2:right:xu destabilize:4 (applied in order).
        #[arg(long = "apply", value_name = "SPEC", num_args = 1..)]
        apply: Vec<String>,
        /// Length of a random legal move sequence instead of --apply.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Run verification suites on a grid file or on the whole corpus.
    Verify {
        path: Option<String>,
        /// Run against every corpus grid instead of one file.
        #[arg(long)]
        corpus: bool,
        #[arg(long)]
        dsquared: bool,
        #[arg(long)]
        signs: bool,
        #[arg(long)]
        moves: bool,
        #[arg(long)]
        symmetry: bool,
        #[arg(long)]
        euler: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random move sequence length for --moves.
        #[arg(long, default_value_t = 10)]
        len: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Corpus management: list, show, verify golden files, freeze them.
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// List corpus grids with their size and component count.
    List,
    /// Print one corpus grid in the grid file format.
    Show { name: String },
    /// Recompute all corpus invariants and compare with the golden files.
    Verify {
        #[command(flatten)]
        cap: CapArg,
    },
    /// Regenerate golden files into a directory.
    Freeze {
        dir: String,
        #[command(flatten)]
        cap: CapArg,
    },
}

fn load_grid(path: &str) -> Result<GridDiagram> {
    let text = std::fs::read_to_string(path)?;
    parse_grid(&text)
}

fn parse_move_spec(spec: &str) -> Result<MoveSpec> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::IllegalMove(format!("cannot parse move spec `{spec}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match parts.as_slice() {
        ["cyclic-rows", k] => Ok(MoveSpec::CyclicRows(num(k)?)),
        ["cyclic-cols", k] => Ok(MoveSpec::CyclicCols(num(k)?)),
        ["commute-cols", i] => Ok(MoveSpec::CommuteCols(num(i)?)),
        ["commute-rows", j] => Ok(MoveSpec::CommuteRows(num(j)?)),
        ["stabilize", row, side, variant] => {
            let side = match *side {
                "left" => Side::Left,
                "right" => Side::Right,
                _ => return Err(bad()),
            };
            let variant = match *variant {
                "xu" => StabVariant::XUp,
                "xd" => StabVariant::XDown,
                "ou" => StabVariant::OUp,
                "od" => StabVariant::ODown,
                _ => return Err(bad()),
            };
            Ok(MoveSpec::Stabilize {
                row: num(row)?,
                side,
                variant,
            })
        }
        ["destabilize", col] => Ok(MoveSpec::Destabilize { col: num(col)? }),
        _ => Err(bad()),
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

/// Runs the CLI; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // A later init (e.g. in tests) is fine to fail silently.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Validate { path } => {
            let g = load_grid(path)?;
            let linking = crate::gradings::total_linking2(&g);
            if cli.json {
                print_json(&serde_json::json!({
                    "grid": g.to_json(),
                    "linking_doubled": linking,
                }));
            } else {
                println!("n={} ell={}", g.n(), g.ell());
                println!(
                    "components: {:?} sizes {:?}",
                    g.comp_labels(),
                    g.comp_sizes()
                );
                if g.ell() > 1 {
                    let lk: Vec<String> = linking.iter().map(|v| format!("{}/2", v)).collect();
                    println!("total linking numbers: {}", lk.join(" "));
                }
                print!("{g}");
            }
            Ok(0)
        }
        Cmd::Homology {
            path,
            flavor,
            coeff,
            cap,
            dump_boundary,
        } => {
            let g = load_grid(path)?;
            if *flavor == FlavorArg::MinusReport {
                let rep = crate::homology::minus_report(&g, cap.cap)?;
                if cli.json {
                    print_json(&rep);
                } else {
                    println!(
                        "minus complex: {} generators, {} differential entries, d^2=0: {}",
                        rep.generators, rep.differential_entries, rep.d_squared_zero
                    );
                    println!(
                        "total homology of the U=0 complex by Maslov: {:?}",
                        rep.total_homology_by_maslov
                    );
                    println!(
                        "matches the Z[U] profile (V factors): {}",
                        rep.total_homology_matches_v_profile
                    );
                }
                return Ok(
                    if rep.d_squared_zero && rep.total_homology_matches_v_profile {
                        0
                    } else {
                        1
                    },
                );
            }
            let flavor = match flavor {
                FlavorArg::Tilde => Flavor::Tilde,
                _ => Flavor::Hat,
            };
            let coeffs = match coeff {
                CoeffArg::F2 => Coeffs::Gf2,
                CoeffArg::Z => Coeffs::Int,
            };
            if let Some(dir) = dump_boundary {
                let c = crate::complex::build_complex(&g, Flavor::Tilde, coeffs, cap.cap)?;
                c.dump_blocks(std::path::Path::new(dir))?;
            }
            let res = crate::homology::homology_result(&g, flavor, coeffs, cap.cap)?;
            if cli.json {
                print_json(&res);
            } else {
                print_human_homology(&res);
            }
            Ok(0)
        }
        Cmd::Alexander { path } => {
            let g = load_grid(path)?;
            let delta = crate::alexander::alexander_polynomial(&g)?;
            if cli.json {
                print_json(&serde_json::json!({
                    "grid": g.to_json(),
                    "alexander_polynomial": delta.to_json(),
                    "text": delta.display(),
                }));
            } else {
                println!("{}", delta.display());
            }
            Ok(0)
        }
        Cmd::Tau { path, cap } => {
            let g = load_grid(path)?;
            let t = crate::homology::tau(&g, cap.cap)?;
            if cli.json {
                print_json(&serde_json::json!({ "tau": t }));
            } else {
                println!("tau = {t}");
            }
            Ok(0)
        }
        Cmd::Move {
            path,
            apply,
            random,
            seed,
            max_n,
        } => {
            let g = load_grid(path)?;
            if let Some(len) = random {
                let seq = crate::grid::random_move_sequence(&g, *len, *seed, *max_n);
                if cli.json {
                    let arr: Vec<_> = seq.iter().map(|h| h.to_json()).collect();
                    print_json(&arr);
                } else {
                    for (i, h) in seq.iter().enumerate() {
                        println!("# step {i} (n={})", h.n());
                        print!("{}", h.to_text());
                    }
                }
                return Ok(0);
            }
            let mut cur = g;
            for spec in apply {
                cur = cur.apply_move(&parse_move_spec(spec)?)?;
            }
            if cli.json {
                print_json(&cur.to_json());
            } else {
                print!("{}", cur.to_text());
            }
            Ok(0)
        }
        Cmd::Verify {
            path,
            corpus,
            dsquared,
            signs,
            moves,
            symmetry,
            euler,
            seed,
            len,
            max_n,
            cap,
        } => {
            let mut targets: Vec<(String, GridDiagram)> = Vec::new();
            if *corpus {
                for (name, g) in crate::corpus::grids() {
                    targets.push((name.to_string(), g));
                }
            } else {
                let p = path.clone().ok_or_else(|| {
                    Error::InvalidGrid("verify needs a grid file or --corpus".into())
                })?;
                targets.push((p.clone(), load_grid(&p)?));
            }
            let all = !(*dsquared || *signs || *moves || *symmetry || *euler);
            let mut reports = Vec::new();
            for (name, g) in &targets {
                let mut for_grid = Vec::new();
                if (*dsquared || all) && g.n() <= 6 {
                    for_grid.push(crate::verify::suite_dsquared(g, cap.cap)?);
                }
                if (*signs || all) && g.n() <= 5 {
                    for_grid.push(crate::verify::suite_signs(g, cap.cap)?);
                }
                if *moves {
                    for_grid.push(crate::verify::suite_moves(g, *seed, *len, *max_n, cap.cap)?);
                }
                if (*symmetry || all) && g.n() <= 8 {
                    for_grid.push(crate::verify::suite_symmetry(g, cap.cap)?);
                }
                if (*euler || all) && g.n() <= 8 {
                    for_grid.push(crate::verify::suite_euler(g, cap.cap)?);
                }
                if all && g.n() <= 6 {
                    for_grid.push(crate::verify::suite_coefficients(g, cap.cap)?);
                }
                reports.push((name.clone(), for_grid));
            }
            let mut failed = false;
            if cli.json {
                print_json(&serde_json::json!(reports
                    .iter()
                    .map(|(name, rs)| serde_json::json!({ "grid": name, "suites": rs }))
                    .collect::<Vec<_>>()));
                failed = reports.iter().any(|(_, rs)| rs.iter().any(|r| !r.passed));
            } else {
                for (name, rs) in &reports {
                    for r in rs {
                        let status = if r.passed { "pass" } else { "FAIL" };
                        println!(
                            "{status}  {name}: {} ({} checks, {} ms)",
                            r.suite, r.checks, r.millis
                        );
                        for f in r.failures.iter().take(5) {
                            println!("      {f}");
                        }
                        failed |= !r.passed;
                    }
                }
            }
            Ok(if failed { 1 } else { 0 })
        }
        Cmd::Corpus { action } => match action {
            CorpusCmd::List => {
                for (name, g) in crate::corpus::grids() {
                    println!("{name:<16} n={} ell={}", g.n(), g.ell());
                }
                Ok(0)
            }
            CorpusCmd::Show { name } => {
                let e = crate::corpus::ENTRIES
                    .iter()
                    .find(|e| e.name == name)
                    .ok_or_else(|| Error::InvalidGrid(format!("no corpus grid `{name}`")))?;
                print!("{}", e.text);
                Ok(0)
            }
            CorpusCmd::Verify { cap } => {
                let results = crate::corpus::verify_corpus(cap.cap)?;
                let mut failed = false;
                for (name, verdict) in &results {
                    match verdict {
                        Ok(()) => println!("pass  {name}"),
                        Err(e) => {
                            println!("FAIL  {name}: {e}");
                            failed = true;
                        }
                    }
                }
                Ok(if failed { 1 } else { 0 })
            }
            CorpusCmd::Freeze { dir, cap } => {
                crate::corpus::freeze(std::path::Path::new(dir), cap.cap)?;
                println!("golden files written to {dir}");
                Ok(0)
            }
        },
    }
}

fn print_human_homology(res: &crate::homology::HomologyResult) {
    // q tracks Maslov, t_i the Alexander gradings (halved back for display).
    let poly_line = |entries: &[crate::homology::BigradedEntry]| -> String {
        if entries.is_empty() {
            return "0".into();
        }
        entries
            .iter()
            .map(|e| {
                let ts: Vec<String> = e
                    .alexander_doubled
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, &v)| {
                        let name = if e.alexander_doubled.len() == 1 {
                            "t".to_string()
                        } else {
                            format!("t{}", i + 1)
                        };
                        if v % 2 == 0 {
                            format!("{name}^{}", v / 2)
                        } else {
                            format!("{name}^({v}/2)")
                        }
                    })
                    .collect();
                let mut term = String::new();
                if e.rank != 1 || (ts.is_empty() && e.maslov == 0) {
                    term.push_str(&e.rank.to_string());
                    term.push(' ');
                }
                if e.maslov != 0 {
                    term.push_str(&format!("q^{} ", e.maslov));
                }
                term.push_str(&ts.join(" "));
                let torsion = if e.torsion.is_empty() {
                    String::new()
                } else {
                    format!(" [torsion {}]", e.torsion.join(","))
                };
                format!("{}{}", term.trim(), torsion)
            })
            .collect::<Vec<_>>()
            .join("  +  ")
    };
    println!(
        "grid: n={} ell={} ({} generators, {} blocks, {} ms)",
        res.grid.n, res.grid.ell, res.meta.generators, res.meta.blocks, res.meta.millis
    );
    println!("tilde: {}", poly_line(&res.tilde));
    if !res.hat.is_empty() {
        println!("hat:   {}", poly_line(&res.hat));
    }
    if let Some(t) = res.tau {
        println!("tau = {t}");
    }
}
