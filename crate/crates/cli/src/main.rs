//! `orbifold`: command-line front end for the orbifold library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
//! error.

use std::fmt::Display;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use orbifold::covering::{
    certificate_from_quotients, enumerate_fiber_data, verify_certificate, CoveringCertificate, Report,
};
use orbifold::euler::{build_stratified_complex, euler_closed_form, euler_from_complex, euler_from_strata};
use orbifold::fundamental::{classify, group_order, presentation, GeometryClass, GroupOrder, GroupPresentation};
use orbifold::geometry::{
    poincare_hopf_check, spindle_gauss_bonnet, Profile, VectorFieldZero, DEFAULT_INTERVALS, DEFAULT_TOLERANCE,
};
use orbifold::quotient::{action_from_spec, quotient, ActionSpec, SimplicialAction, SimplicialSurface};
use orbifold::signature::double_mirrors;
use orbifold::wps::{wps_euler, wps_football, wps_strata, WeightedProjectiveSpace};
use orbifold::{Rational, Signature};

#[derive(Parser)]
#[command(name = "orbifold", version, about = "Exact computations with closed 2-orbifolds")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbifold Euler characteristic by three methods.
    Euler { signature: String },
    /// Bad, spherical, euclidean or hyperbolic.
    Classify { signature: String },
    /// Presentation and order of the orbifold fundamental group.
    Pi1 {
        signature: String,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Orientation double along the mirrors.
    Double { signature: String },
    /// Quotient of a triangulated surface by a finite group action.
    Quotient(QuotientArgs),
    /// Covering certificates.
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
    /// Weighted projective spaces.
    Wps {
        #[command(subcommand)]
        command: WpsCommand,
    },
    /// Gauss–Bonnet quadrature on a football metric.
    GaussBonnet {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        q: u32,
        #[arg(long, default_value_t = DEFAULT_INTERVALS)]
        intervals: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = ProfileKind::Smoothstep)]
        profile: ProfileKind,
        /// Bulge amplitude for `--profile bulged`.
        #[arg(long, default_value_t = 0.25)]
        amplitude: f64,
    },
    /// Poincaré–Hopf index sum against the Euler characteristic.
    PoincareHopf {
        signature: String,
        /// Zeros as `order:lift_index`, comma separated.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        zeros: String,
    },
}

#[derive(Args)]
struct QuotientArgs {
    /// Surface file; optional when the action file embeds the surface.
    #[arg(long)]
    surface: Option<PathBuf>,
    /// Action file (`-` reads stdin).
    #[arg(long)]
    action: PathBuf,
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Check a certificate file.
    Verify { file: PathBuf },
    /// List admissible fiber multisets over a cone of order n.
    Enumerate {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        r: u32,
    },
    /// Certificate of M//H → M//G for H generated by the subgroup file.
    FromQuotient {
        #[command(flatten)]
        quotient: QuotientArgs,
        /// Generators of the subgroup, in action-file format.
        #[arg(long)]
        subgroup: PathBuf,
    },
}

#[derive(Subcommand)]
enum WpsCommand {
    Strata(WeightArgs),
    Euler(WeightArgs),
    Football(WeightArgs),
}

#[derive(Args)]
struct WeightArgs {
    /// Weights, comma separated.
    #[arg(short, value_delimiter = ',', required = true)]
    w: Vec<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileKind {
    Smoothstep,
    Linear,
    Bulged,
}

enum Failure {
    Usage(String),
    Domain(String),
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl Display) -> Failure {
    Failure::Domain(e.to_string())
}

/// Whether the command's verification passed.
type Outcome = Result<bool, Failure>;

#[derive(Serialize, Deserialize)]
struct EulerOutput {
    signature: Signature,
    closed_form: Rational,
    cell_sum: Rational,
    strata_sum: Rational,
}

#[derive(Serialize, Deserialize)]
struct ClassifyOutput {
    signature: Signature,
    class: GeometryClass,
}

#[derive(Serialize, Deserialize)]
struct Pi1Output {
    presentation: GroupPresentation,
    order: GroupOrder,
}

#[derive(Serialize, Deserialize)]
struct WpsEulerOutput {
    weights: Vec<u32>,
    euler: Rational,
}

#[derive(Serialize, Deserialize)]
struct FromQuotientOutput {
    certificate: CoveringCertificate,
    report: Report,
}

fn signature(text: &str) -> Result<Signature, Failure> {
    text.parse().map_err(usage)
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(usage)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_action(args: &QuotientArgs) -> Result<SimplicialAction, Failure> {
    let spec: ActionSpec = read_json(&args.action)?;
    let surface: SimplicialSurface = match (&args.surface, spec.surface) {
        (Some(path), _) => read_json(path)?,
        (None, Some(s)) => s,
        (None, None) => return Err(usage("no surface given: pass --surface or embed it in the action file")),
    };
    action_from_spec(surface, &spec.generators).map_err(domain)
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
    } else {
        println!("{}", human());
    }
}

fn parse_zeros(text: &str) -> Result<Vec<VectorFieldZero>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (p, k) = item
                .split_once(':')
                .ok_or_else(|| usage(format!("zero `{item}` is not of the form order:index")))?;
            Ok(VectorFieldZero {
                local_order: p.trim().parse().map_err(|e| usage(format!("`{item}`: {e}")))?,
                lift_index: k.trim().parse().map_err(|e| usage(format!("`{item}`: {e}")))?,
            })
        })
        .collect()
}

fn multiset(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Euler { signature: text } => {
            let sig = signature(&text)?;
            let complex = build_stratified_complex(&sig);
            let out = EulerOutput {
                closed_form: euler_closed_form(&sig),
                cell_sum: euler_from_complex(&complex).map_err(domain)?,
                strata_sum: euler_from_strata(&complex).map_err(domain)?,
                signature: sig,
            };
            let agree = out.closed_form == out.cell_sum && out.cell_sum == out.strata_sum;
            emit(json, &out, || {
                format!(
                    "{}\nclosed form: {}\ncell sum:    {}\nstrata sum:  {}",
                    out.closed_form, out.closed_form, out.cell_sum, out.strata_sum
                )
            });
            Ok(agree)
        }
        Command::Classify { signature: text } => {
            let sig = signature(&text)?;
            let class = classify(&sig).map_err(domain)?;
            emit(json, &ClassifyOutput { signature: sig, class }, || class.to_string());
            Ok(true)
        }
        Command::Pi1 { signature: text, max_cosets } => {
            let sig = signature(&text)?;
            let pres = presentation(&sig).map_err(domain)?;
            let order = group_order(&pres, max_cosets);
            emit(json, &Pi1Output { presentation: pres.clone(), order }, || {
                format!("{pres}\norder: {order}")
            });
            Ok(true)
        }
        Command::Double { signature: text } => {
            let doubled = double_mirrors(&signature(&text)?).map_err(domain)?;
            emit(json, &doubled, || doubled.to_string());
            Ok(true)
        }
        Command::Quotient(args) => {
            let action = load_action(&args)?;
            let q = quotient(&action).map_err(domain)?;
            emit(json, &q, || {
                let sig = q
                    .signature
                    .as_ref()
                    .map_or("none (non-orientable with mirrors)".to_string(), |s| s.to_string());
                let [v, e, f] = q.complex.counts();
                format!(
                    "signature: {sig}\ngroup order: {}\nchi: {} = {} * {}\nquotient cells: {v} vertices, {e} edges, {f} faces",
                    q.group_order, q.chi_cover, q.group_order, q.chi_quotient
                )
            });
            Ok(true)
        }
        Command::Cover { command } => match command {
            CoverCommand::Verify { file } => {
                let cert: CoveringCertificate = read_json(&file)?;
                let report = verify_certificate(&cert).map_err(domain)?;
                emit(json, &report, || report.to_string());
                Ok(report.pass)
            }
            CoverCommand::Enumerate { n, r } => {
                if n < 2 || r < 1 {
                    return Err(usage("need n >= 2 and r >= 1"));
                }
                let data = enumerate_fiber_data(n, r);
                emit(json, &data, || {
                    data.iter().map(|m| multiset(m)).collect::<Vec<_>>().join("\n")
                });
                Ok(true)
            }
            CoverCommand::FromQuotient { quotient, subgroup } => {
                let action = load_action(&quotient)?;
                let spec: ActionSpec = read_json(&subgroup)?;
                let gens = spec
                    .generators
                    .iter()
                    .map(|g| g.to_perm(action.surface()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(domain)?;
                let certificate = certificate_from_quotients(&action, &gens).map_err(domain)?;
                let report = verify_certificate(&certificate).map_err(domain)?;
                let pass = report.pass;
                let out = FromQuotientOutput { certificate, report };
                emit(json, &out, || {
                    format!(
                        "{}\n{}",
                        serde_json::to_string_pretty(&out.certificate).expect("serializable"),
                        out.report
                    )
                });
                Ok(pass)
            }
        },
        Command::Wps { command } => {
            let (kind, args) = match command {
                WpsCommand::Strata(a) => ("strata", a),
                WpsCommand::Euler(a) => ("euler", a),
                WpsCommand::Football(a) => ("football", a),
            };
            let w = WeightedProjectiveSpace::new(args.w).map_err(domain)?;
            match kind {
                "strata" => {
                    let poset = wps_strata(&w);
                    emit(json, &poset, || {
                        poset
                            .strata
                            .iter()
                            .map(|s| {
                                let idx: Vec<String> = s.indices.iter().map(usize::to_string).collect();
                                let tag = if s.singular { "singular" } else { "regular" };
                                format!("{{{}}} gcd {} {} {}", idx.join(","), s.gcd, s.local_group(), tag)
                            })
                            .collect::<Vec<_>>()
                            .join("\n")
                    });
                }
                "euler" => {
                    let euler = wps_euler(&w);
                    emit(json, &WpsEulerOutput { weights: w.weights().to_vec(), euler }, || euler.to_string());
                }
                _ => {
                    let sig = wps_football(&w).map_err(domain)?;
                    emit(json, &sig, || sig.to_string());
                }
            }
            Ok(true)
        }
        Command::GaussBonnet {
            p,
            q,
            intervals,
            tolerance,
            profile,
            amplitude,
        } => {
            let profile = match profile {
                ProfileKind::Smoothstep => Profile::Smoothstep,
                ProfileKind::Linear => Profile::Linear,
                ProfileKind::Bulged => Profile::Bulged { amplitude },
            };
            let report = spindle_gauss_bonnet(p, q, intervals, profile).map_err(domain)?;
            emit(json, &report, || {
                format!(
                    "total curvature: {:.12}\narea:            {:.12}\ntarget:          {:.12}\nrelative error:  {:.3e}",
                    report.total_curvature, report.area, report.target, report.rel_error
                )
            });
            Ok(report.rel_error <= tolerance)
        }
        Command::PoincareHopf { signature: text, zeros } => {
            let sig = signature(&text)?;
            let zeros = parse_zeros(&zeros)?;
            let report = poincare_hopf_check(&sig, &zeros).map_err(domain)?;
            emit(json, &report, || {
                format!(
                    "index sum: {}\nchi^orb:   {}\n{}",
                    report.index_sum,
                    report.euler,
                    if report.pass { "PASS" } else { "FAIL" }
                )
            });
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
