//! Text parsers for bases, amplitude lists and cloner families.

use clonekit::{
    fggnp_amplitudes, universal_amplitudes, CloningAmplitudes, QubitBasis,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Amplitude lists within this distance of unit norm are renormalized.
pub const RENORMALIZE_SLACK: f64 = 1e-6;

fn finite(s: &str, what: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("{what}: cannot parse {s:?} as a number")))?;
    if !v.is_finite() {
        return Err(CliError::Input(format!("{what}: {s:?} is not finite")));
    }
    Ok(v)
}

/// `z`, `x`, `y`, `zp`, `phi:<rad>` or `bloch:<theta>,<phi>`.
pub fn parse_basis(s: &str) -> Result<QubitBasis, CliError> {
    let t = s.trim();
    let lower = t.to_ascii_lowercase();
    match lower.as_str() {
        "z" => return Ok(QubitBasis::z()),
        "x" => return Ok(QubitBasis::x()),
        "y" => return Ok(QubitBasis::y()),
        "zp" | "z'" => return Ok(QubitBasis::z_prime()),
        _ => {}
    }
    if let Some(rest) = lower.strip_prefix("phi:") {
        return Ok(QubitBasis::equatorial(finite(rest, "phi")?));
    }
    if let Some(rest) = lower.strip_prefix("bloch:") {
        let mut parts = rest.split(',');
        let (Some(theta), Some(phi), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CliError::Input(format!("bloch basis needs theta,phi: {s:?}")));
        };
        return Ok(QubitBasis::bloch(finite(theta, "theta")?, finite(phi, "phi")?));
    }
    Err(CliError::Input(format!(
        "unknown basis {s:?} (expected z, x, y, zp, phi:<rad> or bloch:<theta>,<phi>)"
    )))
}

/// Comma-separated bases. A `bloch:` entry takes the following item as its
/// azimuth.
pub fn parse_basis_list(s: &str) -> Result<Vec<QubitBasis>, CliError> {
    let items: Vec<&str> = s.split(',').collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let item = items[i].trim();
        if item.to_ascii_lowercase().starts_with("bloch:") {
            let phi = items
                .get(i + 1)
                .ok_or_else(|| CliError::Input(format!("bloch basis needs theta,phi: {item:?}")))?;
            out.push(parse_basis(&format!("{item},{phi}"))?);
            i += 2;
        } else {
            out.push(parse_basis(item)?);
            i += 1;
        }
    }
    if out.is_empty() {
        return Err(CliError::Input("empty basis list".into()));
    }
    Ok(out)
}

/// Four nonnegative reals `a00,a01,a10,a11`.
pub fn parse_amplitudes(s: &str) -> Result<CloningAmplitudes, CliError> {
    let values = s
        .split(',')
        .map(|p| finite(p, "amplitude"))
        .collect::<Result<Vec<f64>, _>>()?;
    let [a00, a01, a10, a11] = values[..] else {
        return Err(CliError::Input(format!(
            "expected 4 amplitudes a00,a01,a10,a11, got {}",
            values.len()
        )));
    };
    amplitudes_from([[a00, a01], [a10, a11]])
}

fn amplitudes_from(a: [[f64; 2]; 2]) -> Result<CloningAmplitudes, CliError> {
    let norm_sqr: f64 = a.iter().flatten().map(|v| v * v).sum();
    if (norm_sqr - 1.0).abs() > RENORMALIZE_SLACK {
        return Err(CliError::Input(format!(
            "amplitudes have squared norm {norm_sqr}, expected 1"
        )));
    }
    Ok(CloningAmplitudes::from_unnormalized(a)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Fggnp,
    Ng,
    Universal,
    Custom,
}

/// Cloner family flags as typed on the command line.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, clap::Args)]
pub struct ClonerArgs {
    /// Cloner family; defaults to custom when --a is given
    #[arg(long, value_enum)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    /// NG angle in radians
    #[arg(long, allow_negative_numbers = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Amplitudes a00,a01,a10,a11
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
}

/// A resolved cloner.
#[derive(Clone, Debug, PartialEq)]
pub enum Cloner {
    Cerf(CloningAmplitudes),
    Ng(f64),
}

fn require(value: Option<f64>, flag: &str, family: &str) -> Result<f64, CliError> {
    let v = value.ok_or_else(|| CliError::Input(format!("--family {family} needs --{flag}")))?;
    if !v.is_finite() {
        return Err(CliError::Input(format!("--{flag} is not finite")));
    }
    Ok(v)
}

fn reject(present: &[(&str, bool)], family: &str) -> Result<(), CliError> {
    for (flag, set) in present {
        if *set {
            return Err(CliError::Input(format!("--{flag} does not apply to --family {family}")));
        }
    }
    Ok(())
}

pub fn resolve_cloner(args: &ClonerArgs) -> Result<Cloner, CliError> {
    let family = match (args.family, &args.a) {
        (Some(f), _) => f,
        (None, Some(_)) => Family::Custom,
        (None, None) => return Err(CliError::Input("missing --family (fggnp, ng, universal, custom)".into())),
    };
    let set = |o: Option<f64>| o.is_some();
    match family {
        Family::Fggnp => {
            reject(&[("alpha", set(args.alpha)), ("a", args.a.is_some())], "fggnp")?;
            let (v, y, x) = (
                require(args.v, "v", "fggnp")?,
                require(args.y, "y", "fggnp")?,
                require(args.x, "x", "fggnp")?,
            );
            let norm_sqr = v * v + y * y + 2.0 * x * x;
            if (norm_sqr - 1.0).abs() > RENORMALIZE_SLACK {
                // surfaces the library's own message
                fggnp_amplitudes(v, y, x)?;
            }
            if v < 0.0 || y < 0.0 || x < 0.0 {
                return Err(CliError::Input("fggnp parameters must be nonnegative".into()));
            }
            Ok(Cloner::Cerf(CloningAmplitudes::from_unnormalized([[v, y], [x, x]])?))
        }
        Family::Ng => {
            reject(
                &[("v", set(args.v)), ("y", set(args.y)), ("x", set(args.x)), ("a", args.a.is_some())],
                "ng",
            )?;
            let alpha = require(args.alpha, "alpha", "ng")?;
            // validates the range
            clonekit::ng_state(alpha)?;
            Ok(Cloner::Ng(alpha))
        }
        Family::Universal => {
            reject(
                &[("v", set(args.v)), ("y", set(args.y)), ("alpha", set(args.alpha)), ("a", args.a.is_some())],
                "universal",
            )?;
            Ok(Cloner::Cerf(universal_amplitudes(require(args.x, "x", "universal")?)?))
        }
        Family::Custom => {
            reject(
                &[("v", set(args.v)), ("y", set(args.y)), ("x", set(args.x)), ("alpha", set(args.alpha))],
                "custom",
            )?;
            let a = args.a.as_deref().ok_or_else(|| CliError::Input("--family custom needs --a".into()))?;
            Ok(Cloner::Cerf(parse_amplitudes(a)?))
        }
    }
}
