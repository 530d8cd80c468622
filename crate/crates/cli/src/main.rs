use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use weylot::io::{parse_polytope, read_cloud, write_cloud, write_polytope, write_report};
use weylot::measure::discretize;
use weylot::polytope::unimodular_equivalent;
use weylot::roots::{LatticeChoice, RootSystem, Side, TypeLabel};
use weylot::transport::{certify_with, solve_ot_with, CertifyOptions, PivotRule};
use weylot::weyl::{
    classify, is_weyl_polytope, mr_family, star_containment_check, vertex_condition, weyl_polytope_from_fundamental,
    StarContainmentReport, WeylPolytope, WeylSummary,
};
use weylot::{Error, Polytope, Rational};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "weylot", version, about = "Reflexive Weyl polytopes and exact boundary transport")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weyl polytope of a root system and a dominant weight.
    Gen(WeylArgs),
    /// A row of the table of reflexive Weyl polytopes at a given rank.
    Family {
        #[arg(long)]
        row: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Dual polytope.
    Dual { file: PathBuf },
    /// Runs one check and prints its report.
    Check {
        file: PathBuf,
        #[command(flatten)]
        which: CheckKind,
        /// Weyl structure, required by --star.
        #[command(flatten)]
        weyl: OptWeylArgs,
    },
    /// One classification record per input.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Write `<stem>.json` per input here instead of printing.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Transport certification of a reflexive Weyl polytope.
    Certify {
        file: PathBuf,
        #[command(flatten)]
        weyl: WeylArgs,
        #[arg(long, default_value_t = 0)]
        refine: usize,
        /// Longest cycle checked exhaustively.
        #[arg(long, default_value_t = 3)]
        cycles: usize,
        #[arg(long, value_enum, default_value_t = Pivot::Block)]
        pivot: Pivot,
    },
    /// Optimal plan and potentials between two point clouds.
    Ot {
        mu: PathBuf,
        nu: PathBuf,
        #[arg(long, value_enum, default_value_t = Pivot::Block)]
        pivot: Pivot,
    },
    /// Boundary point cloud of a polytope, or of its dual with --dual.
    Cloud {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        refine: usize,
        #[arg(long)]
        dual: bool,
        /// Build an invariant cloud for this Weyl structure.
        #[command(flatten)]
        weyl: OptWeylArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CheckKind {
    #[arg(long)]
    reflexive: bool,
    #[arg(long)]
    delzant: bool,
    #[arg(long)]
    weyl: bool,
    #[arg(long)]
    vertex_condition: bool,
    #[arg(long)]
    star: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lattice {
    Root,
    Weight,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pivot {
    Block,
    Bland,
}

impl From<Pivot> for PivotRule {
    fn from(p: Pivot) -> Self {
        match p {
            Pivot::Block => PivotRule::BlockSearch,
            Pivot::Bland => PivotRule::Bland,
        }
    }
}

#[derive(Args)]
struct WeylArgs {
    /// Root system type such as B3 or A1xA2.
    #[arg(long = "type")]
    ty: String,
    /// Dominant weight in fundamental weights, e.g. 0,0,2.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    #[arg(long, value_enum, default_value_t = Lattice::Root)]
    lattice: Lattice,
}

#[derive(Args)]
struct OptWeylArgs {
    #[arg(long = "type", requires = "weight")]
    ty: Option<String>,
    #[arg(long, requires = "ty", allow_hyphen_values = true)]
    weight: Option<String>,
    #[arg(long, value_enum, default_value_t = Lattice::Root)]
    lattice: Lattice,
}

impl OptWeylArgs {
    fn get(&self) -> Option<WeylArgs> {
        Some(WeylArgs { ty: self.ty.clone()?, weight: self.weight.clone()?, lattice: self.lattice })
    }
}

fn build(args: &WeylArgs) -> Result<WeylPolytope> {
    let label: TypeLabel = args.ty.parse()?;
    let lattice = match args.lattice {
        Lattice::Root => LatticeChoice::Root,
        Lattice::Weight => LatticeChoice::Weight,
    };
    let weight: Vec<i64> = args
        .weight
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad weight entry {s:?}"))))
        .collect::<std::result::Result<_, _>>()?;
    let r = RootSystem::from_label(label, lattice)?;
    Ok(weyl_polytope_from_fundamental(&r, &weight)?)
}

/// The Weyl polytope given on the command line, which must match `p` up to
/// a lattice isomorphism.
fn build_matching(args: &WeylArgs, p: &Polytope) -> Result<WeylPolytope> {
    let rec = build(args)?;
    if rec.polytope != *p && unimodular_equivalent(&rec.polytope, p).is_none() {
        return Err(Error::InvalidArgument(format!(
            "the polytope in the file is not the Weyl polytope of {} with weight {}",
            args.ty, args.weight
        ))
        .into());
    }
    Ok(rec)
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<(Vec<u8>, Polytope)> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::MalformedInput("not UTF-8".into()))?;
    let p = parse_polytope(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((bytes, p))
}

#[derive(Serialize)]
struct CheckReport {
    check: &'static str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    weyl: Option<WeylSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<(weylot::RationalVector, weylot::RationalVector)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    star_containment: Option<StarContainmentReport>,
}

#[derive(Serialize)]
struct OtReport {
    #[serde(with = "weylot::arith::serde_rational")]
    cost: Rational,
    #[serde(with = "weylot::arith::serde_rational")]
    duality_gap: Rational,
    plan: weylot::transport::TransportPlan,
    potentials: weylot::transport::KantorovichPotentials,
}

fn print(s: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Writes through a temporary file in the same directory and renames it.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(err) if err.is_resource_cap() => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen(args) => {
            let rec = build(&args)?;
            let lattice = match args.lattice {
                Lattice::Root => "root",
                Lattice::Weight => "weight",
            };
            let comment = format!("{} weight {} on the {lattice} lattice", args.ty, args.weight);
            print(&write_polytope(&rec.polytope, &[comment])?)?;
            Ok(0)
        }
        Command::Family { row, rank } => {
            let rec = mr_family(row, rank)?;
            let comment = format!("table row {row} at rank {rank}: {}", rec.system.label());
            print(&write_polytope(&rec.polytope, &[comment])?)?;
            Ok(0)
        }
        Command::Dual { file } => {
            let (_, p) = load(&file)?;
            match write_polytope(&p.dual(), &[]) {
                Ok(text) => {
                    print(&text)?;
                    Ok(0)
                }
                Err(Error::NotLattice) => {
                    eprintln!("error: the dual is not a lattice polytope, so the input is not reflexive");
                    Ok(EXIT_FAIL)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Check { file, which, weyl } => {
            let (bytes, p) = load(&file)?;
            let mut report = CheckReport { check: "", passed: false, weyl: None, witness: None, star_containment: None };
            if which.reflexive {
                report.check = "reflexive";
                report.passed = p.is_reflexive();
            } else if which.delzant {
                report.check = "delzant";
                report.passed = p.is_delzant();
            } else if which.weyl {
                report.check = "weyl";
                report.weyl = is_weyl_polytope(&p).as_ref().map(WeylSummary::from);
                report.passed = report.weyl.is_some();
            } else if which.vertex_condition {
                report.check = "vertex_condition";
                let vc = vertex_condition(&p);
                report.passed = vc.holds;
                report.witness = vc.witness;
            } else {
                report.check = "star";
                let Some(args) = weyl.get() else {
                    bail!(Error::InvalidArgument("--star needs --type and --weight".into()));
                };
                let rec = build_matching(&args, &p)?;
                let star = star_containment_check(&rec);
                report.passed = star.passed();
                report.star_containment = Some(star);
            }
            print(&write_report("check", &[&bytes], &report))?;
            Ok(if report.passed { 0 } else { EXIT_FAIL })
        }
        Command::Classify { files, out_dir } => {
            let results: Vec<Result<String>> = files
                .par_iter()
                .map(|f| {
                    let (bytes, p) = load(f)?;
                    let rec = classify(&p)?;
                    let text = write_report("classification", &[&bytes], &rec);
                    if let Some(dir) = &out_dir {
                        let stem = f.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
                        write_atomic(&dir.join(format!("{stem}.json")), &text)?;
                    }
                    Ok(text)
                })
                .collect();
            let mut code = 0;
            for (f, r) in files.iter().zip(results) {
                match r {
                    Ok(text) if out_dir.is_none() => print(&text)?,
                    Ok(_) => {}
                    Err(e) => {
                        eprintln!("error: {}: {e:#}", f.display());
                        code = code.max(exit_code(&e));
                    }
                }
            }
            Ok(code)
        }
        Command::Certify { file, weyl, refine, cycles, pivot } => {
            let (bytes, p) = load(&file)?;
            let rec = build_matching(&weyl, &p)?;
            let opts = CertifyOptions {
                refinement: refine,
                max_cycle_length: cycles,
                pivot: pivot.into(),
                ..CertifyOptions::default()
            };
            let report = certify_with(&rec, &opts)?;
            print(&write_report("certification", &[&bytes], &report))?;
            Ok(if report.passed { 0 } else { EXIT_FAIL })
        }
        Command::Ot { mu, nu, pivot } => {
            let a = read(&mu)?;
            let b = read(&nu)?;
            let mu_cloud = read_cloud(&String::from_utf8_lossy(&a)).with_context(|| format!("parsing {}", mu.display()))?;
            let nu_cloud = read_cloud(&String::from_utf8_lossy(&b)).with_context(|| format!("parsing {}", nu.display()))?;
            let (plan, potentials) = solve_ot_with(&mu_cloud, &nu_cloud, pivot.into())?;
            let duality_gap = &plan.cost - potentials.dual_value(&mu_cloud, &nu_cloud);
            let report = OtReport { cost: plan.cost.clone(), duality_gap, plan, potentials };
            print(&write_report("transport", &[&a, &b], &report))?;
            Ok(0)
        }
        Command::Cloud { file, refine, dual, weyl } => {
            let (_, p) = load(&file)?;
            let (side, target) = if dual {
                if !p.is_reflexive() {
                    return Err(Error::NotReflexive.into());
                }
                (Side::N, p.dual())
            } else {
                (Side::M, p.clone())
            };
            let cloud = match weyl.get() {
                Some(args) => {
                    let rec = build_matching(&args, &p)?;
                    let group = rec.group()?;
                    let target = if dual { rec.polytope.dual() } else { rec.polytope.clone() };
                    discretize(&target, refine, Some(&group), side)
                }
                None => discretize(&target, refine, None, side),
            };
            print(&write_cloud(&cloud))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
