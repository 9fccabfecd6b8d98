//! `bjq`: phase-space distributions, operator ordering, and the covariance
//! and uncertainty checks, driven from the command line.
//!
//! Field-valued subcommands honor `--format {csv,json,pgm}`; report
//! subcommands emit JSON; the algebra subcommands print a normal form as
//! text unless `--format json` asks for a machine-readable wrapper.
//! Orchestration is single-threaded, so every run is deterministic for a
//! fixed configuration.

mod config;
mod emit;
mod specs;

use std::io::Write;
use std::path::{Path, PathBuf};

use bjq_core::algebra::{self, format_op, GaussRat, HbarPoly, OpPoly};
use bjq_core::distributions::{self, InterferenceRegion};
use bjq_core::metaplectic::{covariance_defect, project, theta_invariance};
use bjq_core::pseudodiff::{momentum_operator, operator_for, position_operator};
use bjq_core::quadrature::{gauss_legendre, QuadratureRule};
use bjq_core::uncertainty::{
    covariance_matrix, rs_check, rs_matrix_check, MixedState, Observable,
};
use bjq_core::{Grid1D, PhaseFunction, SampledSignal};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::{OutputFormat, Settings};

/// Failure domain for exit codes: bad requests exit 2, numeric trouble and
/// I/O exit 1. Core errors are all validation except the boundary-mass
/// check, which reports a well-posed computation the window cannot hold.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Numeric(String),
}

impl From<bjq_core::Error> for Failure {
    fn from(e: bjq_core::Error) -> Self {
        match &e {
            bjq_core::Error::BoundaryMass { .. } => Failure::Numeric(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "bjq", version, about = "Phase-space quantization toolkit")]
struct Cli {
    /// Samples per axis; even.
    #[arg(long, global = true)]
    n_points: Option<usize>,

    /// Half-width of the position window.
    #[arg(long, global = true)]
    half_length: Option<f64>,

    /// Planck constant; rationals like 1/2 keep the algebra exact.
    #[arg(long, global = true)]
    hbar: Option<String>,

    /// Node count for the averaging quadrature.
    #[arg(long, global = true)]
    quad_nodes: Option<usize>,

    /// Output file; stdout when absent. PGM output requires it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Check commands exit 1 when their headline number exceeds this.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Key-value file applied between the environment and the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Renormalize generated and loaded signals to unit norm.
    #[arg(long, global = true)]
    normalize: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BjwMethod {
    Filter,
    Quadrature,
}

#[derive(Subcommand)]
enum Command {
    /// Wigner distribution of one signal.
    Wigner {
        #[arg(long)]
        signal: String,
    },
    /// τ-parametrized distribution; τ accepts p/q or a decimal.
    TauWigner {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        signal: String,
    },
    /// τ-averaged distribution, by the frequency filter or by quadrature.
    Bjw {
        #[arg(long)]
        signal: String,
        #[arg(long, value_enum, default_value_t = BjwMethod::Filter)]
        method: BjwMethod,
    },
    /// Product-formula time-frequency distribution.
    Rihaczek {
        #[arg(long)]
        signal: String,
    },
    /// Ambiguity transform.
    Ambiguity {
        #[arg(long)]
        signal: String,
    },
    /// Normal-ordered expansion of x^m p^n under a scheme.
    Quantize {
        /// weyl | bj | tau:R
        #[arg(long)]
        scheme: String,
        /// Powers as M,N for x^M p^N.
        #[arg(long)]
        monomial: String,
    },
    /// Normal-ordered commutator [X^m, P^n].
    Commutator {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Perturbed-oscillator level, exact in rational arithmetic.
    Crehan {
        #[arg(long = "N")]
        level: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        alpha: String,
    },
    /// Apply the operator with a given symbol to a signal.
    ApplyOp {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        signal: String,
        #[arg(long, default_value = "bj")]
        scheme: String,
    },
    /// Compare the operator pairing against the distributional pairing.
    PairingCheck {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        psi: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value = "bj")]
        scheme: String,
    },
    /// Conjugation defect of a scheme under one symplectic generator.
    CovarianceTest {
        #[arg(long, default_value = "bj")]
        scheme: String,
        /// j | ml:L | vp:P
        #[arg(long)]
        generator: String,
        #[arg(long, default_value = "mixed")]
        symbol: String,
    },
    /// Variance-product report for a state or an equal-weight mixture.
    Uncertainty {
        /// Repeatable; two or more states are orthonormalized first.
        #[arg(long = "state", required = true)]
        states: Vec<String>,
    },
    /// Midband interference energy, averaged distribution against Wigner.
    Ghost {
        #[arg(long, default_value = "two_tone:3,1")]
        signal: String,
        /// x_min,x_max,p_min,p_max
        #[arg(long, default_value = "-3,3,-0.5,0.5")]
        region: String,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(failure) = run(&cli) {
        let (code, msg) = match &failure {
            Failure::Validation(m) => (2, m),
            Failure::Numeric(m) => (1, m),
        };
        eprintln!("error: {msg}");
        std::process::exit(code);
    }
}

fn grid(s: &Settings) -> Result<Grid1D, Failure> {
    Ok(Grid1D::new(s.n_points, s.half_length, s.hbar)?)
}

fn rule(s: &Settings) -> Result<QuadratureRule, Failure> {
    Ok(gauss_legendre(s.quad_nodes)?)
}

fn emit_field(f: &PhaseFunction, s: &Settings, out: Option<&Path>) -> Result<(), Failure> {
    match s.format_or(OutputFormat::Csv) {
        OutputFormat::Csv => emit::write_phase_csv(f, &mut emit::out_writer(out)?),
        OutputFormat::Json => emit::write_phase_json(f, &mut emit::out_writer(out)?),
        OutputFormat::Pgm => {
            let path = out.ok_or_else(|| {
                Failure::Validation(
                    "--format pgm needs --out for the image and its sidecar".into(),
                )
            })?;
            emit::write_phase_pgm(f, path)
        }
    }
}

fn emit_signal(psi: &SampledSignal, s: &Settings, out: Option<&Path>) -> Result<(), Failure> {
    match s.format_or(OutputFormat::Csv) {
        OutputFormat::Csv => emit::write_signal_csv(psi, &mut emit::out_writer(out)?),
        OutputFormat::Json => emit::write_signal_json(psi, &mut emit::out_writer(out)?),
        OutputFormat::Pgm => {
            Err(Failure::Validation("signals have no raster form; use csv or json".into()))
        }
    }
}

fn emit_report(doc: &serde_json::Value, s: &Settings, out: Option<&Path>) -> Result<(), Failure> {
    match s.format_or(OutputFormat::Json) {
        OutputFormat::Json => emit::write_report(doc, out),
        other => Err(Failure::Validation(format!(
            "this command reports JSON; drop --format or pass json, not {other:?}"
        ))),
    }
}

/// Algebra output: plain text by default, a JSON wrapper on request.
fn emit_line(
    text: &str,
    doc: serde_json::Value,
    s: &Settings,
    out: Option<&Path>,
) -> Result<(), Failure> {
    match s.format {
        None => {
            let mut w = emit::out_writer(out)?;
            writeln!(w, "{text}").map_err(|e| Failure::Numeric(format!("write failed: {e}")))
        }
        Some(OutputFormat::Json) => emit::write_report(&doc, out),
        Some(other) => Err(Failure::Validation(format!(
            "this command prints text or JSON, not {other:?}"
        ))),
    }
}

fn enforce(name: &str, value: f64, s: &Settings) -> Result<(), Failure> {
    match s.tolerance {
        Some(tol) if value > tol => Err(Failure::Numeric(format!(
            "{name} {value:.6e} exceeds the tolerance {tol:.6e}"
        ))),
        _ => Ok(()),
    }
}

fn parse_monomial(spec: &str) -> Result<(u32, u32), Failure> {
    let bad = || {
        Failure::Validation(format!("monomial wants the powers as M,N, got {spec:?}"))
    };
    let (m, n) = spec.split_once(',').ok_or_else(bad)?;
    Ok((m.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

fn parse_region(spec: &str) -> Result<InterferenceRegion, Failure> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            Failure::Validation(format!("region wants x_min,x_max,p_min,p_max, got {spec:?}"))
        })?;
    if parts.len() != 4 || parts[0] >= parts[1] || parts[2] >= parts[3] {
        return Err(Failure::Validation(format!(
            "region wants x_min < x_max and p_min < p_max, got {spec:?}"
        )));
    }
    Ok(InterferenceRegion {
        x_min: parts[0],
        x_max: parts[1],
        p_min: parts[2],
        p_max: parts[3],
    })
}

fn complex_json(v: num_complex::Complex64) -> serde_json::Value {
    json!({ "re": v.re, "im": v.im })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let settings = config::resolve(&config::Overrides {
        config: cli.config.as_deref(),
        n_points: cli.n_points,
        half_length: cli.half_length,
        hbar: cli.hbar.as_deref(),
        quad_nodes: cli.quad_nodes,
        format: cli.format,
        tolerance: cli.tolerance,
    })?;
    let out = cli.out.as_deref();

    match &cli.command {
        Command::Wigner { signal } => {
            let g = grid(&settings)?;
            let psi = specs::parse_signal(signal, g, cli.normalize)?;
            emit_field(&distributions::wigner(&psi)?, &settings, out)
        }
        Command::TauWigner { tau, signal } => {
            let t = specs::rational_f64(&specs::parse_rational(tau)?);
            let g = grid(&settings)?;
            let psi = specs::parse_signal(signal, g, cli.normalize)?;
            emit_field(&distributions::cross_wigner_tau(&psi, &psi, t)?, &settings, out)
        }
        Command::Bjw { signal, method } => {
            let g = grid(&settings)?;
            let psi = specs::parse_signal(signal, g, cli.normalize)?;
            let f = match method {
                BjwMethod::Filter => distributions::bjw_filtered(&psi, &psi)?,
                BjwMethod::Quadrature => {
                    distributions::bjw_quadrature(&psi, &psi, &rule(&settings)?)?
                }
            };
            emit_field(&f, &settings, out)
        }
        Command::Rihaczek { signal } => {
            let g = grid(&settings)?;
            let psi = specs::parse_signal(signal, g, cli.normalize)?;
            emit_field(&distributions::rihaczek(&psi, &psi)?, &settings, out)
        }
        Command::Ambiguity { signal } => {
            let g = grid(&settings)?;
            let psi = specs::parse_signal(signal, g, cli.normalize)?;
            emit_field(&distributions::ambiguity(&psi, &psi)?, &settings, out)
        }
        Command::Quantize { scheme, monomial } => {
            let qs = specs::parse_quant_scheme(scheme)?;
            let (m, n) = parse_monomial(monomial)?;
            let text = format_op(&algebra::quantize_monomial(m, n, &qs)?);
            let doc = json!({
                "scheme": scheme,
                "x_power": m,
                "p_power": n,
                "normal_form": text,
            });
            emit_line(&text, doc, &settings, out)
        }
        Command::Commutator { m, n } => {
            let unit = HbarPoly::term(GaussRat::one(), 0);
            let xm = OpPoly::monomial(*m, 0, unit.clone());
            let pn = OpPoly::monomial(0, *n, unit);
            let text = format_op(&xm.commutator(&pn)?);
            let doc = json!({ "m": m, "n": n, "normal_form": text });
            emit_line(&text, doc, &settings, out)
        }
        Command::Crehan { level, lambda, alpha } => {
            let lambda = specs::parse_rational(lambda)?;
            let alpha = specs::parse_rational(alpha)?;
            let hbar = specs::parse_rational(&settings.hbar_text)?;
            let exact = algebra::crehan_spectrum_exact(*level, &lambda, &alpha, &hbar);
            let value = specs::rational_f64(&exact);
            let doc = json!({
                "level": level,
                "exact": exact.to_string(),
                "value": value,
            });
            emit_line(&format!("E_{level} = {exact} (≈ {value:.16e})"), doc, &settings, out)
        }
        Command::ApplyOp { symbol, signal, scheme } => {
            let g = grid(&settings)?;
            let psi = specs::parse_signal(signal, g, cli.normalize)?;
            let sym = specs::parse_symbol(symbol, g)?;
            let op = operator_for(&sym, &specs::parse_op_scheme(scheme)?, g, &rule(&settings)?)?;
            emit_signal(&op.apply(&psi)?, &settings, out)
        }
        Command::PairingCheck { symbol, psi, phi, scheme } => {
            let g = grid(&settings)?;
            let psi = specs::parse_signal(psi, g, cli.normalize)?;
            let phi = specs::parse_signal(phi, g, cli.normalize)?;
            let sym = specs::parse_symbol(symbol, g)?;
            let (lhs, rhs) = bjq_core::pseudodiff::pairing_check(
                &sym,
                &specs::parse_op_scheme(scheme)?,
                &psi,
                &phi,
                &rule(&settings)?,
            )?;
            let gap = (lhs - rhs).norm();
            let scale = lhs.norm().max(rhs.norm());
            let rel = if scale > 0.0 { gap / scale } else { 0.0 };
            let doc = json!({
                "scheme": scheme,
                "operator_pairing": complex_json(lhs),
                "distribution_pairing": complex_json(rhs),
                "absolute_gap": gap,
                "relative_gap": rel,
            });
            emit_report(&doc, &settings, out)?;
            enforce("relative gap", rel, &settings)
        }
        Command::CovarianceTest { scheme, generator, symbol } => {
            let g = grid(&settings)?;
            let gen = specs::parse_generator(generator)?;
            let sym = specs::parse_symbol(symbol, g)?;
            let defect =
                covariance_defect(&specs::parse_op_scheme(scheme)?, &sym, &gen, g, &rule(&settings)?)?;
            let drift = theta_invariance(&project(&gen), g.phase_grid());
            let doc = json!({
                "scheme": scheme,
                "generator": generator,
                "symbol": symbol,
                "defect": defect,
                "filter_drift": drift,
            });
            emit_report(&doc, &settings, out)?;
            enforce("covariance defect", defect, &settings)
        }
        Command::Uncertainty { states } => {
            let g = grid(&settings)?;
            let members: Vec<SampledSignal> = states
                .iter()
                .map(|s| specs::parse_signal(s, g, cli.normalize))
                .collect::<Result<_, _>>()?;
            let state = MixedState::orthonormalized(vec![1.0; members.len()], members)?;
            let x = Observable::hermitian(position_operator(g))?;
            let p = Observable::hermitian(momentum_operator(g))?;
            let report = rs_check(&state, &x, &p)?;
            let sigma = covariance_matrix(&state)?;
            let (min_eig, matrix_passed) = rs_matrix_check(sigma, g.hbar())?;
            let doc = json!({
                "states": states.len(),
                "variance_x": report.var_a,
                "variance_p": report.var_b,
                "sym_covariance": report.cov_sym,
                "commutator_expectation": complex_json(report.commutator_expectation),
                "product_lhs": report.lhs,
                "product_rhs": report.rhs,
                "satisfied": report.satisfied,
                "covariance_matrix": sigma,
                "matrix_min_eigenvalue": min_eig,
                "matrix_passed": matrix_passed,
            });
            emit_report(&doc, &settings, out)?;
            if report.satisfied && matrix_passed {
                Ok(())
            } else {
                Err(Failure::Numeric("uncertainty inequality violated".into()))
            }
        }
        Command::Ghost { signal, region } => {
            let g = grid(&settings)?;
            let psi = specs::parse_signal(signal, g, cli.normalize)?;
            let region = parse_region(region)?;
            let wig = distributions::wigner(&psi)?;
            let avg = distributions::bjw_filtered(&psi, &psi)?;
            let wigner_energy = distributions::interference_energy(&wig, &region);
            let bjw_energy = distributions::interference_energy(&avg, &region);
            let doc = json!({
                "region": {
                    "x_min": region.x_min,
                    "x_max": region.x_max,
                    "p_min": region.p_min,
                    "p_max": region.p_max,
                },
                "wigner_energy": wigner_energy,
                "bjw_energy": bjw_energy,
                "ratio": bjw_energy / wigner_energy,
            });
            emit_report(&doc, &settings, out)
        }
    }
}
