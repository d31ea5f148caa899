//! Command-line front end. Every subcommand builds a JSON report; `--json`
//! prints it verbatim, otherwise it is rendered as a plain listing.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::affine::{level_k_alcove, rho_hat, AffineWeight};
use crate::dirac::{
    affine_isotypic_spectrum, class_point, cubic_dirac_matrix, dirac_kernel_finite, geo_alg_gap,
    quantize_conjugacy_class, relative_cubic_dirac_matrix, verify_kostant_square, DiracConfig,
};
use crate::error::{Error, Result};
use crate::rational::{self, q};
use crate::repthy::matrices::LieAlgebra;
use crate::repthy::{affine_weight_multiplicities, irrep_weights};
use crate::report;
use crate::rootsys::{centralizer_root_data, CentralizerData, RootSystem, Weight};
use crate::spinor::{truncated_loop_spinor, LoopIdx, Polarization, SpinorSpace, C64};

/// Environment variable naming a directory for cached reports.
pub const CACHE_ENV: &str = "LOOPDIRAC_CACHE_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;
pub const EXIT_AMBIGUOUS: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "loopdirac", version, about = "Affine weights, cubic Dirac operators and loop-group quantization")]
pub struct Cli {
    /// Emit the JSON report instead of a listing.
    #[arg(long, global = true)]
    pub json: bool,
    /// Numerical tolerance for eigenvalue and identity checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Largest operator dimension that will be assembled.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    /// Cartan family letter (A-G).
    pub family: String,
    pub rank: usize,
}

impl TypeArgs {
    fn root_system(&self) -> Result<RootSystem> {
        RootSystem::from_name(&format!("{}{}", self.family, self.rank))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots, rho, the affine simple root, the dual Coxeter number and the alcove.
    Rootdata {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Dominant weights of level at most k.
    Alcove {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, default_value_t = 1)]
        level: i64,
    },
    /// Index vector of the conjugacy class through exp(eta / k).
    Quantize {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        level: i64,
        /// Comma-separated coordinates of eta in fundamental weights.
        #[arg(long)]
        eta: String,
        #[arg(short = 'N', default_value_t = 6)]
        n: u32,
    },
    /// Checks the square of the cubic Dirac operator on every isotypic block.
    DiracSquare {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        lambda: String,
        /// Alcove point whose centralizer is h; the full operator when absent.
        #[arg(long)]
        xi: Option<String>,
        /// Write the operator as "row col real imag" lines.
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Kernel of the Dirac operator: loop version at level k, or finite with --xi.
    DiracKernel {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        level: i64,
        #[arg(long)]
        eta: Option<String>,
        #[arg(long, conflicts_with_all = ["eta"])]
        xi: Option<String>,
        #[arg(short = 'N', default_value_t = 6)]
        n: u32,
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Weight multiplicities of W_lambda, or of V_lambda at a level.
    Character {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        level: Option<i64>,
        #[arg(short = 'N', default_value_t = 6)]
        n: u32,
    },
    /// Truncated spinor module: character and the Clifford relations.
    Spinor {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        xi: Option<String>,
        #[arg(short = 'N', default_value_t = 2)]
        n: u32,
    },
    /// Norm of the difference between the algebraic and geometric operators.
    GeoAlgGap {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        xi: String,
        /// Semicolon-separated highest weights.
        #[arg(long, default_value = "0")]
        lambdas: String,
    },
}

/// Parses `"1,0"` or `"1/2, 1/3"` into a weight of the given rank.
pub fn parse_weight(s: &str, rank: usize) -> Result<Weight> {
    let coords = s
        .split(',')
        .map(rational::parse)
        .collect::<Result<Vec<_>>>()?;
    let w = Weight::new(coords);
    w.check_rank(rank)?;
    Ok(w)
}

fn integral_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let w = parse_weight(s, rs.rank)?;
    rs.require_dominant_integral(&w)?;
    Ok(w)
}

fn centralizer(rs: &RootSystem, xi: &str) -> Result<CentralizerData> {
    centralizer_root_data(rs, &parse_weight(xi, rs.rank)?)
}

/// Maps library errors onto the exit-code contract.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InsufficientTruncation { .. } => EXIT_TRUNCATION,
        Error::Ambiguous(_) => EXIT_AMBIGUOUS,
        Error::Numerical(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Outcome of one invocation: exit status, stdout and stderr text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    match execute(&cli, cache.as_deref()) {
        Ok((v, code)) => {
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&v).expect("reports serialize"))
            } else {
                report::table(&v)
            };
            let stderr = if code == EXIT_AMBIGUOUS {
                "error: eigenvalues inside the ambiguity band\n".to_string()
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr }
        }
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if let Error::InsufficientTruncation { required, .. } = e {
                stderr.push_str(&format!("required N = {required}\n"));
            }
            Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn config(cli: &Cli) -> DiracConfig {
    DiracConfig {
        cap: cli.cap,
        kernel_tol: cli.tolerance,
        ..DiracConfig::default()
    }
}

/// Reads a cached report or computes and stores it.
fn cached(dir: Option<&Path>, key: &str, f: impl FnOnce() -> Result<Value>) -> Result<Value> {
    let Some(dir) = dir else { return f() };
    let path = dir.join(format!("{key}.json"));
    if let Some(v) = fs::read_to_string(&path).ok().and_then(|s| serde_json::from_str(&s).ok()) {
        return Ok(v);
    }
    let v = f()?;
    // a cache that cannot be written behaves as if absent
    if fs::create_dir_all(dir).is_ok() {
        let tmp = dir.join(format!("{key}.json.{}", std::process::id()));
        if fs::write(&tmp, v.to_string()).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(v)
}

fn cache_key(parts: &[&str]) -> String {
    parts
        .iter()
        .map(|p| p.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect::<String>())
        .collect::<Vec<_>>()
        .join("-")
}

fn dump(path: &Option<PathBuf>, op: &crate::spinor::OperatorMatrix) -> Result<()> {
    if let Some(p) = path {
        let f = fs::File::create(p).map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display())))?;
        op.write_triplets(std::io::BufWriter::new(f))
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn execute(cli: &Cli, cache: Option<&Path>) -> Result<(Value, i32)> {
    let cfg = config(cli);
    match &cli.command {
        Command::Rootdata { ty } => Ok((rootdata(&ty.root_system()?), EXIT_OK)),
        Command::Alcove { ty, level } => {
            let rs = ty.root_system()?;
            if *level < 0 {
                return Err(Error::NonPositiveLevel(level.to_string()));
            }
            let ws = level_k_alcove(&rs, *level);
            Ok((
                json!({"type": rs.name(), "level": level, "count": ws.len(), "weights": report::weights(&ws)}),
                EXIT_OK,
            ))
        }
        Command::Quantize { ty, level, eta, n } => {
            let rs = ty.root_system()?;
            let eta = parse_weight(eta, rs.rank)?;
            let key = cache_key(&["quantize", &rs.name(), &level.to_string(), &eta.to_string(), &n.to_string()]);
            let v = cached(cache, &key, || quantize(&rs, &eta, *level, *n))?;
            Ok((v, EXIT_OK))
        }
        Command::DiracSquare { ty, lambda, xi, dump_matrix } => {
            let rs = ty.root_system()?;
            let la = LieAlgebra::new(&rs)?;
            let lam = integral_weight(&rs, lambda)?;
            let cz = xi.as_deref().map(|x| centralizer(&rs, x)).transpose()?;
            if dump_matrix.is_some() {
                let d = match &cz {
                    None => cubic_dirac_matrix(&rs, &la, &lam, &cfg)?,
                    Some(c) => relative_cubic_dirac_matrix(&rs, &la, c, &lam, &cfg)?,
                };
                dump(dump_matrix, &d.op)?;
            }
            let r = verify_kostant_square(&rs, &la, cz.as_ref(), &lam, &cfg)?;
            let pass = r.max_deviation <= cli.tolerance;
            let blocks: Vec<Value> = r
                .blocks
                .iter()
                .map(|b| {
                    json!({
                        "weight": report::weight(&b.weight),
                        "parity": b.parity,
                        "eigenvalues": report::floats(&b.eigenvalues),
                        "predicted": b.predicted.iter().map(report::rat).collect::<Vec<_>>(),
                        "deviation": report::float(b.deviation),
                    })
                })
                .collect();
            Ok((
                json!({
                    "type": rs.name(),
                    "lambda": report::weight(&lam),
                    "xi": xi.as_deref().map(|x| parse_weight(x, rs.rank)).transpose()?.as_ref().map(report::weight),
                    "dim": r.dim,
                    "max_deviation": report::float(r.max_deviation),
                    "self_adjoint_deviation": report::float(r.self_adjoint_deviation),
                    "tolerance": report::float(cli.tolerance),
                    "pass": pass,
                    "blocks": blocks,
                }),
                if pass { EXIT_OK } else { EXIT_FAILURE },
            ))
        }
        Command::DiracKernel { ty, lambda, level, eta, xi, n, dump_matrix } => {
            let rs = ty.root_system()?;
            let lam = integral_weight(&rs, lambda)?;
            match xi {
                Some(x) => {
                    let la = LieAlgebra::new(&rs)?;
                    let cz = centralizer(&rs, x)?;
                    if dump_matrix.is_some() {
                        dump(dump_matrix, &relative_cubic_dirac_matrix(&rs, &la, &cz, &lam, &cfg)?.op)?;
                    }
                    let k = dirac_kernel_finite(&rs, &la, &cz, &lam, &cfg)?;
                    let top = rs.norm2(&(&lam + &rs.rho));
                    let comps: Vec<Value> = k
                        .signed
                        .iter()
                        .map(|(nu, m)| {
                            let d2 = top - rs.norm2(&(nu + &cz.rho_sigma));
                            json!({"n": 0, "nu": report::weight(nu), "m_even": (*m).max(0), "m_odd": (-*m).max(0), "d2": report::rat(&d2)})
                        })
                        .collect();
                    let index: Vec<Value> = k.signed.iter().map(|(nu, m)| report::multiset_entry(0, nu, *m)).collect();
                    let flagged: Vec<Value> = k
                        .flagged
                        .iter()
                        .map(|f| json!({"weight": report::weight(&f.weight), "parity": f.parity, "value": report::float(f.value)}))
                        .collect();
                    let code = if flagged.is_empty() { EXIT_OK } else { EXIT_AMBIGUOUS };
                    Ok((
                        json!({
                            "type": rs.name(),
                            "xi": report::weight(&parse_weight(x, rs.rank)?),
                            "lambda": report::weight(&lam),
                            "components": comps,
                            "index": index,
                            "flagged": flagged,
                        }),
                        code,
                    ))
                }
                None => {
                    if dump_matrix.is_some() {
                        return Err(Error::Parse("--dump-matrix needs the finite operator (--xi)".into()));
                    }
                    let eta = match eta {
                        Some(e) => parse_weight(e, rs.rank)?,
                        None => Weight::zero(rs.rank),
                    };
                    let point = class_point(&rs, &eta, *level)?;
                    let cz = centralizer_root_data(&rs, &point)?;
                    let key = cache_key(&["kernel", &rs.name(), &level.to_string(), &eta.to_string(), &lam.to_string(), &n.to_string()]);
                    let v = cached(cache, &key, || {
                        let spectrum = affine_isotypic_spectrum(&rs, &cz, &lam, *level, *n)?;
                        let index: Vec<Value> = spectrum
                            .iter()
                            .filter(|c| c.d2 == q(0))
                            .map(|c| report::multiset_entry(c.n, &c.nu, c.index()))
                            .collect();
                        Ok(json!({
                            "type": rs.name(),
                            "level": level,
                            "eta": report::weight(&eta),
                            "truncation": n,
                            "lambda": report::weight(&lam),
                            "components": spectrum.iter().map(report::component).collect::<Vec<_>>(),
                            "index": index,
                        }))
                    })?;
                    Ok((v, EXIT_OK))
                }
            }
        }
        Command::Character { ty, lambda, level, n } => {
            let rs = ty.root_system()?;
            let lam = integral_weight(&rs, lambda)?;
            let v = match level {
                None => {
                    let ch = irrep_weights(&rs, &lam)?;
                    json!({
                        "type": rs.name(),
                        "lambda": report::weight(&lam),
                        "level": null,
                        "truncation": null,
                        "dim": ch.total_mass(),
                        "weights": ch.iter().map(|(w, m)| report::multiset_entry(0, w, *m)).collect::<Vec<_>>(),
                    })
                }
                Some(k) => {
                    let key = cache_key(&["character", &rs.name(), &k.to_string(), &lam.to_string(), &n.to_string()]);
                    cached(cache, &key, || {
                        let ch = affine_weight_multiplicities(&rs, &lam, *k, *n)?;
                        Ok(json!({
                            "type": rs.name(),
                            "lambda": report::weight(&lam),
                            "level": k,
                            "truncation": n,
                            "dim": ch.entries.values().sum::<i64>(),
                            "weights": ch.entries.iter().map(|((e, w), m)| report::multiset_entry(*e, w, *m)).collect::<Vec<_>>(),
                        }))
                    })?
                }
            };
            Ok((v, EXIT_OK))
        }
        Command::Spinor { ty, xi, n } => {
            let rs = ty.root_system()?;
            let cz = xi.as_deref().map(|x| centralizer(&rs, x)).transpose()?;
            let pol = match &cz {
                None => Polarization::Full,
                Some(c) => Polarization::Relative(c),
            };
            let la = LieAlgebra::new(&rs)?;
            let sp = truncated_loop_spinor(&rs, pol, *n)?;
            let dev = car_deviation(&sp, &la, 1.min(*n as i64))?;
            let pass = dev <= cli.tolerance;
            let character: Vec<Value> = sp
                .character()
                .iter()
                .map(|((e, w), [ev, od])| json!({"n": e, "mu": report::weight(w), "even": ev, "odd": od}))
                .collect();
            Ok((
                json!({
                    "type": rs.name(),
                    "xi": cz.as_ref().map(|c| report::weight(&c.xi)),
                    "truncation": n,
                    "dim": sp.dim(),
                    "vacuum": report::weight(&sp.vacuum),
                    "character": character,
                    "car_max_deviation": report::float(dev),
                    "tolerance": report::float(cli.tolerance),
                    "pass": pass,
                }),
                if pass { EXIT_OK } else { EXIT_FAILURE },
            ))
        }
        Command::GeoAlgGap { ty, xi, lambdas } => {
            let rs = ty.root_system()?;
            let la = LieAlgebra::new(&rs)?;
            let cz = centralizer(&rs, xi)?;
            let lams = lambdas
                .split(';')
                .map(|s| integral_weight(&rs, s))
                .collect::<Result<Vec<_>>>()?;
            let r = geo_alg_gap(&rs, &la, &cz, &lams, &cfg)?;
            Ok((
                json!({
                    "type": rs.name(),
                    "xi": report::weight(&cz.xi),
                    "lambdas": report::weights(&r.lambdas),
                    "difference_norms": report::floats(&r.difference_norms),
                    "constant_norm": report::float(r.constant_norm),
                    "max_spread": report::float(r.max_spread),
                    "self_adjoint_deviation": report::float(r.self_adjoint_deviation),
                }),
                EXIT_OK,
            ))
        }
    }
}

fn rootdata(rs: &RootSystem) -> Value {
    let theta = &rs.highest_root;
    let alpha0 = AffineWeight::new(q(-1), -theta, q(0));
    json!({
        "type": rs.name(),
        "rank": rs.rank,
        "dim": rs.dim(),
        "cartan_matrix": rs.cartan_matrix,
        "simple_roots": report::weights(&rs.simple_roots),
        "positive_roots": report::weights(&rs.positive_roots),
        "rho": report::weight(&rs.rho),
        "rho_hat": report::affine_weight(&rho_hat(rs)),
        "highest_root": report::weight(theta),
        "alpha_0": report::affine_weight(&alpha0),
        "dual_coxeter": rs.dual_coxeter,
        "comarks": rs.comarks().iter().map(report::rat).collect::<Vec<_>>(),
        "alcove": "xi_i >= 0 and <xi, theta> <= 1",
    })
}

fn quantize(rs: &RootSystem, eta: &Weight, k: i64, n: u32) -> Result<Value> {
    let r = quantize_conjugacy_class(rs, eta, k, n)?;
    let evidence: Vec<Value> = r
        .evidence
        .iter()
        .map(|e| {
            json!({
                "lambda": report::weight(&e.lambda),
                "n": e.n,
                "m_even": e.m_even,
                "m_odd": e.m_odd,
                "kernel": e.kernel.iter().map(report::component).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "type": rs.name(),
        "eta": report::weight(&r.eta),
        "level": r.level,
        "truncation": r.truncation,
        "target": report::weight(&r.target),
        "index": {"weights": report::weights(&r.index.weights), "entries": r.index.entries},
        "evidence": evidence,
    }))
}

/// Largest deviation of `{c(u), c(v)} = 2B(u, v)` over `p` modes with
/// `|energy| <= e_max`, on the guard band.
fn car_deviation(sp: &SpinorSpace, la: &LieAlgebra, e_max: i64) -> Result<f64> {
    let mut els = Vec::new();
    for e in -e_max..=e_max {
        for g in 0..la.dim() {
            let u = LoopIdx::new(e, g);
            if !sp.in_h(u) && (e != 0 || g < 2 * la.num_positive || sp.full) {
                els.push(u);
            }
        }
    }
    let ops = els.iter().map(|u| sp.clifford_op(la, *u)).collect::<Result<Vec<_>>>()?;
    let mut worst: f64 = 0.0;
    for i in 0..els.len() {
        for j in i..els.len() {
            let (u, v) = (els[i], els[j]);
            let b = if u.energy + v.energy == 0 { la.form(u.gen, v.gen) } else { 0.0 };
            let keep = sp.guard_band(u.energy.abs() + v.energy.abs());
            worst = worst.max(ops[i].anticommutator(&ops[j]).deviation_from_scalar(C64::new(2.0 * b, 0.0), keep));
        }
    }
    Ok(worst)
}
