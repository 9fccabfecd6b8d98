//! Textual specifications accepted on the command line: signals, symbols,
//! quantization schemes, generators, and exact rationals.

use bjq_core::algebra::QuantScheme;
use bjq_core::metaplectic::MetaGenerator;
use bjq_core::pseudodiff::{OpScheme, SymbolSource};
use bjq_core::signals;
use bjq_core::{Grid1D, SampledSignal};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

use crate::emit;
use crate::Failure;

/// Exact rational from `p/q`, a plain integer, or a finite decimal. The
/// decimal is taken at face value (`0.3` is exactly 3/10), which is what
/// the exact-arithmetic consumers want.
pub fn parse_rational(src: &str) -> Result<BigRational, Failure> {
    let bad = || Failure::Validation(format!("not a rational: {src:?}"));
    let s = src.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Failure::Validation(format!("zero denominator in {src:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-BigInt::one(), rest),
        None => (BigInt::one(), s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    if all.is_empty() || !all.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numerator: BigInt = all.parse().map_err(|_| bad())?;
    let denominator = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(sign * numerator, denominator))
}

pub fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn args_of(spec: &str) -> (&str, Option<&str>) {
    match spec.split_once(':') {
        Some((kind, rest)) => (kind, Some(rest)),
        None => (spec, None),
    }
}

fn float_args(spec: &str, rest: Option<&str>, want: usize) -> Result<Vec<f64>, Failure> {
    let rest = rest.unwrap_or("");
    let parts: Vec<&str> = if rest.is_empty() { vec![] } else { rest.split(',').collect() };
    if parts.len() != want {
        return Err(Failure::Validation(format!(
            "{spec:?} wants {want} comma-separated parameters, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Validation(format!("bad number {p:?} in {spec:?}")))
        })
        .collect()
}

/// `gaussian:x0,p0,sigma | hermite:k | chirp:rate | two_tone:p0,sigma |
/// from_csv:path`.
pub fn parse_signal(
    spec: &str,
    grid: Grid1D,
    normalize: bool,
) -> Result<SampledSignal, Failure> {
    let (kind, rest) = args_of(spec);
    let psi = match kind {
        "gaussian" => {
            let a = float_args(spec, rest, 3)?;
            signals::gaussian(grid, a[0], a[1], a[2])?
        }
        "hermite" => {
            let k = rest
                .unwrap_or("")
                .trim()
                .parse::<usize>()
                .map_err(|_| Failure::Validation(format!("bad ladder index in {spec:?}")))?;
            signals::hermite(grid, k)
        }
        "chirp" => {
            let a = float_args(spec, rest, 1)?;
            signals::chirp(grid, a[0])
        }
        "two_tone" => {
            let a = float_args(spec, rest, 2)?;
            signals::two_tone(grid, a[0], a[1])?
        }
        "from_csv" => {
            let path = rest.ok_or_else(|| {
                Failure::Validation(format!("{spec:?} needs a path"))
            })?;
            emit::read_signal_csv(path.as_ref(), grid)?
        }
        other => {
            return Err(Failure::Validation(format!("unknown signal kind {other:?}")));
        }
    };
    let ratio = psi.boundary_mass_ratio();
    if ratio > 1e-6 {
        eprintln!(
            "warning: signal boundary mass ratio {ratio:.3e} exceeds 1e-6; \
             the periodic transforms may wrap"
        );
    }
    Ok(if normalize { psi.normalized() } else { psi })
}

/// Named symbols plus `from_csv:path` for sampled ones. The damped pair
/// `mixed`/`cross` are the stock covariance-test symbols.
pub fn parse_symbol(spec: &str, grid: Grid1D) -> Result<SymbolSource, Failure> {
    let (kind, rest) = args_of(spec);
    Ok(match kind {
        "x" => SymbolSource::analytic(|x, _| Complex64::new(x, 0.0)),
        "p" => SymbolSource::analytic(|_, p| Complex64::new(p, 0.0)),
        "xp" => SymbolSource::analytic(|x, p| Complex64::new(x * p, 0.0)),
        "x2" => SymbolSource::analytic(|x, _| Complex64::new(x * x, 0.0)),
        "p2" => SymbolSource::analytic(|_, p| Complex64::new(p * p, 0.0)),
        "harmonic" => SymbolSource::analytic(|x, p| Complex64::new((x * x + p * p) / 2.0, 0.0)),
        "gauss" => {
            SymbolSource::analytic(|x, p| Complex64::new((-(x * x + p * p) / 2.0).exp(), 0.0))
        }
        "mixed" => SymbolSource::analytic(|x, p| {
            Complex64::new((x + 2.0 * p + x * p) * (-(x * x + p * p) / 2.0).exp(), 0.0)
        }),
        "cross" => SymbolSource::analytic(|x, p| {
            Complex64::new(x * p * (-(x * x + p * p) / 2.0).exp(), 0.0)
        }),
        "from_csv" => {
            let path = rest.ok_or_else(|| {
                Failure::Validation(format!("{spec:?} needs a path"))
            })?;
            SymbolSource::sampled(emit::read_phase_csv(path.as_ref(), grid.phase_grid())?)
        }
        other => {
            return Err(Failure::Validation(format!("unknown symbol {other:?}")));
        }
    })
}

/// `weyl | bj | tau:R` with R rational or decimal.
pub fn parse_op_scheme(spec: &str) -> Result<OpScheme, Failure> {
    let (kind, rest) = args_of(spec);
    match (kind, rest) {
        ("weyl", None) => Ok(OpScheme::Weyl),
        ("bj", None) => Ok(OpScheme::BornJordan),
        ("tau", Some(r)) => Ok(OpScheme::Tau(rational_f64(&parse_rational(r)?))),
        _ => Err(Failure::Validation(format!("unknown scheme {spec:?}"))),
    }
}

/// Exact-arithmetic flavor of [`parse_op_scheme`].
pub fn parse_quant_scheme(spec: &str) -> Result<QuantScheme, Failure> {
    let (kind, rest) = args_of(spec);
    match (kind, rest) {
        ("weyl", None) => Ok(QuantScheme::Weyl),
        ("bj", None) => Ok(QuantScheme::BornJordan),
        ("tau", Some(r)) => {
            let t = parse_rational(r)?;
            if t.is_negative() || t > BigRational::one() {
                return Err(Failure::Validation(format!("tau must lie in [0, 1], got {t}")));
            }
            Ok(QuantScheme::Tau(t))
        }
        _ => Err(Failure::Validation(format!("unknown scheme {spec:?}"))),
    }
}

/// `j | ml:L | vp:P`.
pub fn parse_generator(spec: &str) -> Result<MetaGenerator, Failure> {
    let (kind, rest) = args_of(spec);
    match (kind, rest) {
        ("j", None) => Ok(MetaGenerator::J),
        ("ml", Some(r)) => {
            let l = r
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure::Validation(format!("bad scaling factor in {spec:?}")))?;
            Ok(MetaGenerator::ML { l, m: 0 })
        }
        ("vp", Some(r)) => {
            let p = r
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure::Validation(format!("bad chirp coefficient in {spec:?}")))?;
            Ok(MetaGenerator::VP { p })
        }
        _ => Err(Failure::Validation(format!("unknown generator {spec:?}"))),
    }
}
