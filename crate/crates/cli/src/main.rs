//! `xseries`: command-line front end to the X-series toolkit.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 usage error,
//! 3 size-guard rejection.

mod render;

use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use xseries::complements::{
    agemo_condition_in, find_complements, is_pure, w_condition, x_condition, ConditionCheck,
};
use xseries::series::{series_report, x_of_quotient_check, GoodVariant, SeriesKind};
use xseries::subgroups::SubgroupCache;
use xseries::verify::{default_entries, run_entries, run_suite, sweep_entries, CheckId, VerificationReport};
use xseries::{build_with, BuildOptions, Error, FiniteGroup, GroupExpr, Guards, Subgroup};

#[derive(Parser)]
#[command(name = "xseries", version, about = "Subgroups of index p^i, their intersections, and complements in finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Include element lists and every check line.
    #[arg(long, global = true)]
    verbose: bool,
    /// Largest group order a constructor may build.
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<usize>,
    /// Time budget per verified group.
    #[arg(long, global = true, value_name = "SECONDS")]
    budget: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the group, its generators and its element table.
    Show { expr: String },
    /// Orders of the requested series.
    Series {
        expr: String,
        /// X, frattini, agemo, gamma, good:omega, good:agemo or good:both; repeatable.
        #[arg(long = "kind", value_name = "KIND")]
        kinds: Vec<String>,
    },
    /// Subgroup lattice by layers, or as DOT with one node per conjugacy class.
    Lattice {
        expr: String,
        #[arg(long)]
        dot: bool,
    },
    /// All complements of the subgroup generated by GENS.
    Complements {
        expr: String,
        /// Comma-separated element indices, generator labels or element names.
        gens: String,
    },
    /// Evaluate a complement criterion for the subgroup generated by GENS.
    Condition {
        expr: String,
        gens: String,
        /// x, w:omega, w:agemo, w:both, agemo or pure.
        #[arg(long, default_value = "x")]
        which: String,
    },
    /// Compare X_i(G/N) with X_i(G)N/N for the normal subgroup N generated by GENS.
    Quotient { expr: String, gens: String },
    /// Run the verification suite on one group, a sweep, or the default sweep.
    Verify {
        expr: Option<String>,
        /// Sweep every constructible group up to this order.
        #[arg(long, value_name = "MAX_ORDER", conflicts_with = "expr")]
        sweep: Option<usize>,
        /// Restrict to these checks; repeatable.
        #[arg(long = "check", value_name = "SLUG")]
        checks: Vec<String>,
    },
    /// Named groups accepted by the expression language.
    CatalogList,
}

enum Failure {
    Usage(String),
    Guard(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuardExceeded { .. } | Error::OrderCapExceeded { .. } => Failure::Guard(e.to_string()),
            Error::Parse(p) => Failure::Usage(p.diagnostic()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Out = Result<(), Failure>;

struct Env {
    json: bool,
    verbose: bool,
    guards: Guards,
    budget: Option<Duration>,
}

impl Env {
    fn group(&self, src: &str) -> Result<(GroupExpr, FiniteGroup), Failure> {
        let expr = src
            .parse::<GroupExpr>()
            .map_err(|e| Failure::Usage(e.diagnostic()))?;
        let g = build_with(
            &expr,
            &BuildOptions {
                max_order: self.guards.build_max_order,
            },
        )?;
        Ok((expr, g))
    }

    fn emit_json(&self, v: &impl serde::Serialize) {
        println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut guards = Guards::from_env();
    if let Some(n) = cli.max_order {
        guards.build_max_order = n;
    }
    let env = Env {
        json: cli.json,
        verbose: cli.verbose,
        guards,
        budget: cli.budget.map(Duration::from_secs_f64),
    };
    match dispatch(&env, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(env: &Env, cmd: Command) -> Out {
    match cmd {
        Command::Show { expr } => show(env, &expr),
        Command::Series { expr, kinds } => series(env, &expr, &kinds),
        Command::Lattice { expr, dot } => lattice(env, &expr, dot),
        Command::Complements { expr, gens } => complements(env, &expr, &gens),
        Command::Condition { expr, gens, which } => condition(env, &expr, &gens, &which),
        Command::Quotient { expr, gens } => quotient(env, &expr, &gens),
        Command::Verify { expr, sweep, checks } => verify(env, expr.as_deref(), sweep, &checks),
        Command::CatalogList => {
            render::catalog_list(env.json);
            Ok(())
        }
    }
}

fn show(env: &Env, src: &str) -> Out {
    let (expr, g) = env.group(src)?;
    if env.json {
        env.emit_json(&render::show_json(&expr, &g));
    } else {
        print!("{}", render::show_text(&expr, &g));
    }
    Ok(())
}

fn series(env: &Env, src: &str, kinds: &[String]) -> Out {
    let (expr, g) = env.group(src)?;
    let kinds: Vec<SeriesKind> = if kinds.is_empty() {
        vec![SeriesKind::X, SeriesKind::Frattini, SeriesKind::LowerCentral]
    } else {
        kinds.iter().map(|k| k.parse().map_err(Failure::Usage)).collect::<Result<_, _>>()?
    };
    let cache = SubgroupCache::new(&g);
    let report = series_report(&cache, &expr.to_string(), &kinds, env.verbose);
    if env.json {
        env.emit_json(&report);
    } else {
        print!("{}", render::series_text(&g, &report));
    }
    Ok(())
}

fn lattice(env: &Env, src: &str, dot: bool) -> Out {
    let (_, g) = env.group(src)?;
    let cache = SubgroupCache::new(&g);
    let lat = cache.lattice(&env.guards, true)?;
    if dot {
        print!("{}", lat.to_dot(&g));
    } else if env.json {
        env.emit_json(&render::lattice_json(&g, &lat, env.verbose));
    } else {
        print!("{}", render::lattice_text(&g, &lat));
    }
    Ok(())
}

fn parse_gens(g: &FiniteGroup, list: &str) -> Result<Subgroup, Failure> {
    Ok(g.parse_generated(list)?)
}

fn complements(env: &Env, src: &str, gens: &str) -> Out {
    let (_, g) = env.group(src)?;
    let a = parse_gens(&g, gens)?;
    let cache = SubgroupCache::new(&g);
    let report = find_complements(&cache, &a).with_condition(&x_condition(&cache, &a));
    if env.json {
        env.emit_json(&report);
    } else {
        print!("{}", render::complements_text(&g, &report));
    }
    Ok(())
}

fn condition(env: &Env, src: &str, gens: &str, which: &str) -> Out {
    let (_, g) = env.group(src)?;
    let a = parse_gens(&g, gens)?;
    let cache = SubgroupCache::new(&g);
    let check: ConditionCheck = match which.to_ascii_lowercase().as_str() {
        "x" => x_condition(&cache, &a),
        "agemo" => agemo_condition_in(&cache, &g.full(), &a),
        "pure" => is_pure(&cache, &a)?,
        w => {
            let variant = match w {
                "w:omega" => GoodVariant::Omega,
                "w:agemo" => GoodVariant::AgemoShift,
                "w:both" => GoodVariant::Both,
                _ => {
                    return Err(Failure::Usage(format!(
                        "unknown condition `{which}`; expected x, w:omega, w:agemo, w:both, agemo or pure"
                    )))
                }
            };
            w_condition(&cache, &a, variant)
        }
    };
    if env.json {
        env.emit_json(&check);
    } else {
        print!("{}", render::condition_text(&g, &a, &check));
    }
    Ok(())
}

fn quotient(env: &Env, src: &str, gens: &str) -> Out {
    let (_, g) = env.group(src)?;
    let n = parse_gens(&g, gens)?;
    let cache = SubgroupCache::new(&g);
    let cmp = x_of_quotient_check(&cache, &n)?;
    if env.json {
        env.emit_json(&render::quotient_json(&cmp));
    } else {
        print!("{}", render::quotient_text(&g, &n, &cmp));
    }
    Ok(())
}

fn verify(env: &Env, src: Option<&str>, sweep: Option<usize>, checks: &[String]) -> Out {
    let ids: Vec<CheckId> = if checks.is_empty() {
        CheckId::ALL.to_vec()
    } else {
        checks.iter().map(|c| c.parse().map_err(Failure::Usage)).collect::<Result<_, _>>()?
    };
    let reports: Vec<VerificationReport> = match src {
        Some(src) => {
            let (expr, g) = env.group(src)?;
            vec![run_suite(&expr, &g, &ids, env.budget, &env.guards)]
        }
        None => {
            let mut entries = match sweep {
                Some(n) => sweep_entries(&[(2, n), (3, n), (5, n), (7, n)], &env.guards),
                None => default_entries(&env.guards),
            };
            for e in &mut entries {
                e.checks.retain(|c| ids.contains(c));
            }
            entries.retain(|e| !e.checks.is_empty());
            run_entries(&entries, env.budget, &env.guards)
        }
    };
    if env.json {
        if src.is_some() {
            env.emit_json(&reports[0]);
        } else {
            env.emit_json(&reports);
        }
    } else {
        print!("{}", render::verify_text(&reports, env.verbose || src.is_some()));
    }
    if reports.iter().all(VerificationReport::all_passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}
