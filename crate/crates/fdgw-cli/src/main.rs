//! `fdgw`: verdicts, counterexample witnesses, and exact invariants for
//! asymptotic enumerativity of fixed-domain Gromov-Witten counts.
//!
//! Exit codes: 0 = Holds, 10 = Fails, 20 = Unknown, 11 = no witness at the
//! requested parameters, 2 = input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use fdgw_core::{
    bundle_comb, bundle_verdict, chain_expected_dim, chain_induction_check, cone_threshold,
    conical_comb, fujita_cone_resolution, hypersurface_verdict, load_catalog, make_hypersurface,
    make_proj_bundle, pn_comb, section_comb, threefold_verdict, ClassVector, CombAttempt,
    ConicalAttr, GenusQuery, HypersurfaceAttrs, RationalCone, Target, Threshold, ThreefoldEntry,
    Verdict,
};
use fdgw_cli::report::{
    render, status_exit_code, GenusField, OutputFormat, Report, TargetDescription,
};

const EXIT_INPUT_ERROR: u8 = 2;
const EXIT_NO_WITNESS: u8 = 11;

#[derive(Parser)]
#[command(
    name = "fdgw",
    version,
    about = "Certificate engine for asymptotic enumerativity of fixed-domain GW counts on Fano targets"
)]
struct Cli {
    /// Output format for reports
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Catalog file overriding the bundled threefold catalog
    /// (FDGW_CATALOG is honored when this flag is absent)
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide asymptotic enumerativity for a target
    Verdict(VerdictArgs),
    /// Construct a counterexample comb at explicit parameters
    Witness(WitnessArgs),
    /// Exact Fujita-invariant thresholds from rank-2 cone data
    Fujita(FujitaArgs),
    /// Expected dimension of degree-e chains with t components
    ChainDim {
        #[arg(value_parser = clap::value_parser!(i64).range(1..=1_000_000_000))]
        n: i64,
        #[arg(value_parser = clap::value_parser!(i64).range(1..=1_000_000_000))]
        d: i64,
        #[arg(value_parser = clap::value_parser!(i64).range(0..=1_000_000_000))]
        e: i64,
        #[arg(value_parser = clap::value_parser!(i64).range(1..=1_000_000_000))]
        t: i64,
    },
    /// Audit the chain induction at (n, d, e, m)
    ChainCheck {
        #[arg(value_parser = clap::value_parser!(i64).range(1..=10_000))]
        n: i64,
        #[arg(value_parser = clap::value_parser!(i64).range(1..=10_000))]
        d: i64,
        #[arg(value_parser = clap::value_parser!(i64).range(0..=10_000))]
        e: i64,
        #[arg(value_parser = clap::value_parser!(i64).range(3..=10_000))]
        m: i64,
    },
    /// Inspect or validate threefold catalogs
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Args)]
struct TargetArgs {
    /// Hypersurface of degree D in P^N: pass N D
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    hypersurface: Option<Vec<i64>>,

    /// Assert the hypersurface is general in its linear system
    #[arg(long, requires = "hypersurface")]
    general: bool,

    /// Assert the hypersurface is Fermat (implies a conical section)
    #[arg(long, requires = "hypersurface")]
    fermat: bool,

    /// Assert a conical hyperplane section; the value is the dimension of
    /// the line family through the vertex
    #[arg(long, value_name = "T_LINE_FAMILY", requires = "hypersurface")]
    conical: Option<i64>,

    /// Projective bundle P(O + O(a_1) + ... + O(a_r)) over P^{N-R}:
    /// pass N R A1 ... AR
    #[arg(long, num_args = 3.., value_names = ["N", "R", "A1..."], allow_negative_numbers = true)]
    bundle: Option<Vec<i64>>,

    /// Catalog threefold id
    #[arg(long, value_name = "ID")]
    threefold: Option<String>,

    /// JSON file describing the target (same schema as report "target")
    #[arg(long, value_name = "PATH")]
    target_file: Option<PathBuf>,
}

#[derive(Args)]
struct VerdictArgs {
    #[command(flatten)]
    target: TargetArgs,

    /// Genus to decide for: a nonnegative integer or "all"
    #[arg(long, default_value = "all")]
    genus: String,

    /// Evaluate every catalog entry (ordered by id) instead of one target
    #[arg(long, conflicts_with_all = ["hypersurface", "bundle", "threefold", "target_file"])]
    all_catalog: bool,
}

#[derive(Args)]
struct WitnessArgs {
    /// Comb on projective space P^N
    #[arg(long, value_name = "N")]
    pn: Option<i64>,

    /// Conical comb on a degree-D hypersurface in P^N: pass N D
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    conical: Option<Vec<i64>>,

    /// Bundle comb: pass N R A1 ... AR
    #[arg(long, num_args = 3.., value_names = ["N", "R", "A1..."])]
    bundle: Option<Vec<i64>>,

    /// Section comb on P(O + O(1,1)) over P^1 x P^1
    #[arg(long)]
    section: bool,

    /// Genus of the spine
    #[arg(long, default_value_t = 0)]
    genus: i64,

    /// Number of marked points m (pn, conical, section combs)
    #[arg(long, value_name = "M")]
    points: Option<i64>,

    /// Bundle comb parameter k
    #[arg(long, value_name = "K")]
    param_k: Option<i64>,
}

#[derive(Args)]
struct FujitaArgs {
    /// Fujita invariant of the resolved cone divisor: pass N D
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    cone_resolution: Option<Vec<i64>>,

    /// General rank-2 threshold mode (requires --rays/--base/--direction)
    #[arg(long, requires_all = ["rays", "base", "direction"], conflicts_with = "cone_resolution")]
    rank2: bool,

    /// Two cone rays as "x,y;x,y"
    #[arg(long, value_name = "RAYS", allow_hyphen_values = true)]
    rays: Option<String>,

    /// Base class as "x,y"
    #[arg(long, value_name = "BASE", allow_hyphen_values = true, requires = "rays")]
    base: Option<String>,

    /// Direction class as "x,y"
    #[arg(long, value_name = "DIR", allow_hyphen_values = true, requires = "rays")]
    direction: Option<String>,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry ids and descriptions
    List,
    /// Show one entry in full
    Show { id: String },
    /// Validate a catalog file and report diagnostics
    Validate { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Verdict(args) => cmd_verdict(cli, args),
        Command::Witness(args) => cmd_witness(cli, args),
        Command::Fujita(args) => cmd_fujita(cli, args),
        Command::ChainDim { n, d, e, t } => cmd_chain_dim(cli, *n, *d, *e, *t),
        Command::ChainCheck { n, d, e, m } => cmd_chain_check(cli, *n, *d, *e, *m),
        Command::Catalog { action } => cmd_catalog(cli, action),
    }
}

fn parse_genus(text: &str) -> anyhow::Result<(GenusQuery, GenusField)> {
    if text == "all" {
        return Ok((GenusQuery::All, GenusField::All));
    }
    let g: i64 = text
        .parse()
        .with_context(|| format!("genus must be a nonnegative integer or \"all\", got {text:?}"))?;
    if g < 0 {
        bail!("genus must be nonnegative, got {g}");
    }
    Ok((GenusQuery::At(g), GenusField::Genus(g)))
}

fn catalog_entries(cli: &Cli) -> anyhow::Result<Vec<ThreefoldEntry>> {
    let from_env = std::env::var_os("FDGW_CATALOG").map(PathBuf::from);
    match cli.catalog.clone().or(from_env) {
        Some(path) => Ok(load_catalog(&path)?),
        None => Ok(fdgw_core::bundled_catalog().to_vec()),
    }
}

/// Inline target spec for --target-file; matches the report's target schema.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum TargetFile {
    Hypersurface {
        n: i64,
        d: i64,
        #[serde(default)]
        general: bool,
        #[serde(default)]
        fermat: bool,
        #[serde(default)]
        conical: Option<i64>,
    },
    ProjBundle {
        n: i64,
        r: i64,
        a: Vec<i64>,
    },
    Threefold {
        id: String,
    },
}

enum ResolvedTarget {
    Numeric(Target),
    Threefold(ThreefoldEntry),
}

fn resolve_target(cli: &Cli, args: &TargetArgs) -> anyhow::Result<ResolvedTarget> {
    let mut picks = 0;
    picks += args.hypersurface.is_some() as u8;
    picks += args.bundle.is_some() as u8;
    picks += args.threefold.is_some() as u8;
    picks += args.target_file.is_some() as u8;
    if picks != 1 {
        bail!("specify exactly one of --hypersurface, --bundle, --threefold, --target-file");
    }

    if let Some(hd) = &args.hypersurface {
        let attrs = HypersurfaceAttrs {
            general: args.general,
            fermat: args.fermat,
            conical: args.conical.map(|t| ConicalAttr { t_line_family: t }),
        };
        let target = make_hypersurface(hd[0], hd[1], attrs)?;
        return Ok(ResolvedTarget::Numeric(Target::Hypersurface(target)));
    }
    if let Some(nra) = &args.bundle {
        let target = make_proj_bundle(nra[0], nra[1], nra[2..].to_vec())?;
        return Ok(ResolvedTarget::Numeric(Target::ProjBundle(target)));
    }
    if let Some(id) = &args.threefold {
        let entries = catalog_entries(cli)?;
        let entry = entries
            .into_iter()
            .find(|e| &e.id == id)
            .ok_or_else(|| anyhow!("no catalog entry with id {id:?}"))?;
        return Ok(ResolvedTarget::Threefold(entry));
    }
    let path = args.target_file.as_ref().expect("checked above");
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading target file {}", path.display()))?;
    let spec: TargetFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing target file {}", path.display()))?;
    match spec {
        TargetFile::Hypersurface {
            n,
            d,
            general,
            fermat,
            conical,
        } => {
            let attrs = HypersurfaceAttrs {
                general,
                fermat,
                conical: conical.map(|t| ConicalAttr { t_line_family: t }),
            };
            Ok(ResolvedTarget::Numeric(Target::Hypersurface(
                make_hypersurface(n, d, attrs)?,
            )))
        }
        TargetFile::ProjBundle { n, r, a } => Ok(ResolvedTarget::Numeric(Target::ProjBundle(
            make_proj_bundle(n, r, a)?,
        ))),
        TargetFile::Threefold { id } => {
            let entries = catalog_entries(cli)?;
            let entry = entries
                .into_iter()
                .find(|e| e.id == id)
                .ok_or_else(|| anyhow!("no catalog entry with id {id:?}"))?;
            Ok(ResolvedTarget::Threefold(entry))
        }
    }
}

fn verdict_of(resolved: &ResolvedTarget, query: GenusQuery) -> anyhow::Result<Verdict> {
    Ok(match resolved {
        ResolvedTarget::Numeric(Target::Hypersurface(h)) => hypersurface_verdict(h, query)?,
        ResolvedTarget::Numeric(Target::ProjBundle(b)) => bundle_verdict(b, query)?,
        ResolvedTarget::Threefold(entry) => threefold_verdict(entry, query)?,
    })
}

fn description_of(resolved: &ResolvedTarget) -> TargetDescription {
    match resolved {
        ResolvedTarget::Numeric(t) => TargetDescription::of_target(t),
        ResolvedTarget::Threefold(e) => TargetDescription::Threefold { id: e.id.clone() },
    }
}

fn cmd_verdict(cli: &Cli, args: &VerdictArgs) -> anyhow::Result<ExitCode> {
    let (query, genus_field) = parse_genus(&args.genus)?;

    if args.all_catalog {
        let mut entries = catalog_entries(cli)?;
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let mut reports = Vec::new();
        let mut worst = 0;
        for entry in entries {
            let started = Instant::now();
            let verdict = threefold_verdict(&entry, query)?;
            let elapsed = started.elapsed().as_millis() as i64;
            worst = worst.max(status_exit_code(verdict.status));
            reports.push(Report::new(
                TargetDescription::Threefold { id: entry.id },
                genus_field,
                verdict,
                elapsed,
            ));
        }
        println!("{}", render(&reports, cli.format)?);
        return Ok(ExitCode::from(worst as u8));
    }

    let resolved = resolve_target(cli, &args.target)?;
    let started = Instant::now();
    let verdict = verdict_of(&resolved, query)?;
    let elapsed = started.elapsed().as_millis() as i64;
    let report = Report::new(description_of(&resolved), genus_field, verdict, elapsed);
    println!("{}", render(&report, cli.format)?);
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn cmd_witness(cli: &Cli, args: &WitnessArgs) -> anyhow::Result<ExitCode> {
    let g = args.genus;
    let need_points = || {
        args.points
            .ok_or_else(|| anyhow!("this construction needs --points M"))
    };
    let mut picks = 0;
    picks += args.pn.is_some() as u8;
    picks += args.conical.is_some() as u8;
    picks += args.bundle.is_some() as u8;
    picks += args.section as u8;
    if picks != 1 {
        bail!("specify exactly one of --pn, --conical, --bundle, --section");
    }

    let attempt = if let Some(n) = args.pn {
        pn_comb(n, g, need_points()?)?
    } else if let Some(nd) = &args.conical {
        let target = make_hypersurface(
            nd[0],
            nd[1],
            HypersurfaceAttrs {
                conical: Some(ConicalAttr { t_line_family: 1 }),
                ..Default::default()
            },
        )?;
        conical_comb(&target, g, need_points()?)?
    } else if let Some(nra) = &args.bundle {
        let target = make_proj_bundle(nra[0], nra[1], nra[2..].to_vec())?;
        let k = args
            .param_k
            .ok_or_else(|| anyhow!("the bundle comb needs --param-k K"))?;
        bundle_comb(&target, g, k)?
    } else {
        section_comb(g, need_points()?)?
    };

    match attempt {
        CombAttempt::Witness(w) => {
            println!("{}", render(&w, cli.format)?);
            Ok(ExitCode::SUCCESS)
        }
        CombAttempt::NoWitness { failed } => {
            #[derive(Serialize)]
            struct NoWitnessBody {
                no_witness: Vec<String>,
            }
            println!(
                "{}",
                render(&NoWitnessBody { no_witness: failed }, cli.format)?
            );
            Ok(ExitCode::from(EXIT_NO_WITNESS))
        }
    }
}

fn parse_vec2(text: &str) -> anyhow::Result<ClassVector> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("expected \"x,y\", got {text:?}"))?;
    if coords.len() != 2 {
        bail!("expected 2 coordinates, got {}", coords.len());
    }
    Ok(ClassVector::of_i64(&coords))
}

#[derive(Serialize)]
struct FujitaReport {
    threshold: Option<fdgw_core::Rational>,
    display: String,
}

fn cmd_fujita(cli: &Cli, args: &FujitaArgs) -> anyhow::Result<ExitCode> {
    let report = if let Some(nd) = &args.cone_resolution {
        let value = fujita_cone_resolution(nd[0], nd[1])?;
        FujitaReport {
            display: value.to_string(),
            threshold: Some(value),
        }
    } else if let Some(rays) = &args.rays {
        let rays: Vec<ClassVector> = rays
            .split(';')
            .map(parse_vec2)
            .collect::<anyhow::Result<_>>()?;
        let cone = RationalCone::new(rays)?;
        let base = parse_vec2(
            args.base
                .as_deref()
                .ok_or_else(|| anyhow!("--rank2 mode needs --base"))?,
        )?;
        let direction = parse_vec2(
            args.direction
                .as_deref()
                .ok_or_else(|| anyhow!("--rank2 mode needs --direction"))?,
        )?;
        match cone_threshold(&cone, &base, &direction)? {
            Threshold::Least(value) => FujitaReport {
                display: value.to_string(),
                threshold: Some(value),
            },
            Threshold::NoThreshold => FujitaReport {
                display: "no threshold".into(),
                threshold: None,
            },
        }
    } else {
        bail!("specify --cone-resolution N D or --rank2 with --rays/--base/--direction");
    };
    match cli.format {
        OutputFormat::Text => println!("{}", report.display),
        OutputFormat::Json => println!("{}", render(&report, OutputFormat::Json)?),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ChainDimReport {
    n: i64,
    d: i64,
    e: i64,
    t: i64,
    expected_dim: i64,
}

fn cmd_chain_dim(cli: &Cli, n: i64, d: i64, e: i64, t: i64) -> anyhow::Result<ExitCode> {
    let report = ChainDimReport {
        n,
        d,
        e,
        t,
        expected_dim: chain_expected_dim(n, d, e, t),
    };
    match cli.format {
        OutputFormat::Text => println!("{}", report.expected_dim),
        OutputFormat::Json => println!("{}", render(&report, OutputFormat::Json)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_chain_check(cli: &Cli, n: i64, d: i64, e: i64, m: i64) -> anyhow::Result<ExitCode> {
    let report = chain_induction_check(n, d, e, m)?;
    println!("{}", render(&report, cli.format)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(cli: &Cli, action: &CatalogAction) -> anyhow::Result<ExitCode> {
    match action {
        CatalogAction::List => {
            let entries = catalog_entries(cli)?;
            match cli.format {
                OutputFormat::Text => {
                    for entry in entries {
                        println!("{}: {}", entry.id, entry.description);
                    }
                }
                OutputFormat::Json => {
                    let ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
                    println!("{}", serde_json::to_string_pretty(&ids)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::Show { id } => {
            let entries = catalog_entries(cli)?;
            let entry = entries
                .iter()
                .find(|e| &e.id == id)
                .ok_or_else(|| anyhow!("no catalog entry with id {id:?}"))?;
            println!("{}", render(entry, cli.format)?);
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::Validate { path } => match load_catalog(path) {
            Ok(entries) => {
                println!("ok: {} entries", entries.len());
                Ok(ExitCode::SUCCESS)
            }
            Err(err) => {
                eprintln!("invalid: {err}");
                Ok(ExitCode::from(EXIT_INPUT_ERROR))
            }
        },
    }
}
