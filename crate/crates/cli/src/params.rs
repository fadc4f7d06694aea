//! Shared parameter handling: inline flags, the JSON parameter file,
//! and the "exactly one source" rule.

use std::path::PathBuf;

use clap::Args;
use struvine::Complex64;
use struvine::operators::MsmParams;
use struvine::series::StruveParams;

use crate::CliError;

/// Parses `RE` or `RE±IMj` (also accepts a bare `IMj`).
pub fn parse_complex_arg(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if let Some(body) = t.strip_suffix(['j', 'J']) {
        let bytes = body.as_bytes();
        if bytes.is_empty() {
            return Err(format!("'{s}' has no imaginary part before 'j'"));
        }
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let Some(i) = split else {
            let im: f64 = body
                .parse()
                .map_err(|_| format!("bad imaginary part in '{s}'"))?;
            return Ok(Complex64::new(0.0, im));
        };
        let re: f64 = body[..i]
            .parse()
            .map_err(|_| format!("bad real part in '{s}'"))?;
        let sign = if bytes[i] == b'-' { -1.0 } else { 1.0 };
        let im: f64 = body[i + 1..]
            .parse()
            .map_err(|_| format!("bad imaginary part in '{s}'"))?;
        Ok(Complex64::new(re, sign * im))
    } else {
        t.parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("'{s}' is not a number (use RE or RE+IMj)"))
    }
}

/// Shortest-round-trip rendering, `RE` for real values and `RE±IMj`
/// otherwise; the output parses back bit-for-bit.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}j", z.re, -z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

/// Operator, theorem and abscissa parameters, either inline or from
/// one JSON file with the same key names.
#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    /// JSON parameter file; mutually exclusive with the inline
    /// parameter flags below
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,
    /// λ (default 0)
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub lambda: Option<Complex64>,
    /// λ′ (default 0)
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub lambda2: Option<Complex64>,
    /// ξ₁ (default 0)
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub xi1: Option<Complex64>,
    /// ξ₂ (default 0)
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub xi2: Option<Complex64>,
    /// γ, the operator order
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub gamma: Option<Complex64>,
    /// Struve weight index a (positive integer, default 1)
    #[arg(long)]
    pub a: Option<u32>,
    /// Struve order p (default 0)
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub p: Option<Complex64>,
    /// Struve offset b (default 1)
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub b: Option<Complex64>,
    /// Struve alternation parameter c (default 1)
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub c: Option<Complex64>,
    /// Struve scale ξ_s (positive real, default 1)
    #[arg(long = "xi-s", allow_hyphen_values = true)]
    pub xi_s: Option<f64>,
    /// Struve weight α (positive real, default 1)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Struve gamma offset μ (default 1.5)
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub mu: Option<Complex64>,
    /// Power exponent ρ
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    pub rho: Option<Complex64>,
    /// Abscissa x > 0
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
}

/// Fully resolved parameter set; `gamma`, `rho` and `x` keep their
/// optionality so each command can state its own requirements.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub msm_numerators: [Complex64; 4],
    pub gamma: Option<Complex64>,
    pub sp: StruveParams,
    pub rho: Option<Complex64>,
    pub x: Option<f64>,
}

impl Resolved {
    pub fn msm(&self) -> Result<MsmParams, CliError> {
        let gamma = self.require_gamma()?;
        let [lambda, lambda2, xi1, xi2] = self.msm_numerators;
        Ok(MsmParams {
            lambda,
            lambda2,
            xi1,
            xi2,
            gamma,
        })
    }

    pub fn require_gamma(&self) -> Result<Complex64, CliError> {
        self.gamma
            .ok_or_else(|| CliError::usage("missing parameter: --gamma (or 'gamma' in --params)"))
    }

    pub fn require_rho(&self) -> Result<Complex64, CliError> {
        self.rho
            .ok_or_else(|| CliError::usage("missing parameter: --rho (or 'rho' in --params)"))
    }

    pub fn require_x(&self) -> Result<f64, CliError> {
        self.x
            .ok_or_else(|| CliError::usage("missing parameter: --x (or 'x' in --params)"))
    }
}

fn json_complex(key: &str, v: &serde_json::Value) -> Result<Complex64, CliError> {
    if let Some(n) = v.as_f64() {
        return Ok(Complex64::new(n, 0.0));
    }
    if let Some(arr) = v.as_array() {
        if let [re, im] = arr.as_slice() {
            if let (Some(re), Some(im)) = (re.as_f64(), im.as_f64()) {
                return Ok(Complex64::new(re, im));
            }
        }
    }
    Err(CliError::usage(format!(
        "parameter '{key}' must be a number or a [re, im] pair, got {v}"
    )))
}

fn json_real(key: &str, v: &serde_json::Value) -> Result<f64, CliError> {
    v.as_f64()
        .ok_or_else(|| CliError::usage(format!("parameter '{key}' must be a real number, got {v}")))
}

impl ParamArgs {
    fn any_inline(&self) -> bool {
        self.lambda.is_some()
            || self.lambda2.is_some()
            || self.xi1.is_some()
            || self.xi2.is_some()
            || self.gamma.is_some()
            || self.a.is_some()
            || self.p.is_some()
            || self.b.is_some()
            || self.c.is_some()
            || self.xi_s.is_some()
            || self.alpha.is_some()
            || self.mu.is_some()
            || self.rho.is_some()
            || self.x.is_some()
    }

    /// Applies the file source (if any), then defaults.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let mut merged = self.clone();
        if let Some(path) = &self.params {
            if self.any_inline() {
                return Err(CliError::usage(
                    "exactly one parameter source: --params conflicts with inline parameter flags",
                ));
            }
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::usage(format!("cannot read --params file {}: {e}", path.display()))
            })?;
            let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
                CliError::usage(format!("--params file {}: {e}", path.display()))
            })?;
            let Some(obj) = doc.as_object() else {
                return Err(CliError::usage(format!(
                    "--params file {} must hold a JSON object",
                    path.display()
                )));
            };
            for (key, value) in obj {
                match key.as_str() {
                    "lambda" => merged.lambda = Some(json_complex(key, value)?),
                    "lambda2" => merged.lambda2 = Some(json_complex(key, value)?),
                    "xi1" => merged.xi1 = Some(json_complex(key, value)?),
                    "xi2" => merged.xi2 = Some(json_complex(key, value)?),
                    "gamma" => merged.gamma = Some(json_complex(key, value)?),
                    "a" => {
                        let n = value.as_u64().ok_or_else(|| {
                            CliError::usage(format!(
                                "parameter 'a' must be a positive integer, got {value}"
                            ))
                        })?;
                        merged.a = Some(u32::try_from(n).map_err(|_| {
                            CliError::usage(format!("parameter 'a' out of range: {n}"))
                        })?);
                    }
                    "p" => merged.p = Some(json_complex(key, value)?),
                    "b" => merged.b = Some(json_complex(key, value)?),
                    "c" => merged.c = Some(json_complex(key, value)?),
                    "xi_s" => merged.xi_s = Some(json_real(key, value)?),
                    "alpha" => merged.alpha = Some(json_real(key, value)?),
                    "mu" => merged.mu = Some(json_complex(key, value)?),
                    "rho" => merged.rho = Some(json_complex(key, value)?),
                    "x" => merged.x = Some(json_real(key, value)?),
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown parameter key '{other}' in {} (expected one of lambda, \
                             lambda2, xi1, xi2, gamma, a, p, b, c, xi_s, alpha, mu, rho, x)",
                            path.display()
                        )));
                    }
                }
            }
        }
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Ok(Resolved {
            msm_numerators: [
                merged.lambda.unwrap_or(zero),
                merged.lambda2.unwrap_or(zero),
                merged.xi1.unwrap_or(zero),
                merged.xi2.unwrap_or(zero),
            ],
            gamma: merged.gamma,
            sp: StruveParams {
                a: merged.a.unwrap_or(1),
                p: merged.p.unwrap_or(zero),
                b: merged.b.unwrap_or(one),
                c: merged.c.unwrap_or(one),
                xi_s: merged.xi_s.unwrap_or(1.0),
                alpha: merged.alpha.unwrap_or(1.0),
                mu: merged.mu.unwrap_or(Complex64::new(1.5, 0.0)),
            },
            rho: merged.rho,
            x: merged.x,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms_parse() {
        assert_eq!(parse_complex_arg("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex_arg("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(
            parse_complex_arg("1.5+0.25j").unwrap(),
            Complex64::new(1.5, 0.25)
        );
        assert_eq!(
            parse_complex_arg("-1e-3-2e-4j").unwrap(),
            Complex64::new(-1e-3, -2e-4)
        );
        assert_eq!(parse_complex_arg("0.5j").unwrap(), Complex64::new(0.0, 0.5));
        assert!(parse_complex_arg("fish").is_err());
        assert!(parse_complex_arg("1.5+j0.2").is_err());
    }

    #[test]
    fn complex_rendering_round_trips() {
        for z in [
            Complex64::new(0.9003163161571061, 0.0),
            Complex64::new(-1.5, 0.25),
            Complex64::new(0.1, -1e-30),
            Complex64::new(f64::MIN_POSITIVE, f64::MAX),
        ] {
            let text = fmt_complex(z);
            assert_eq!(parse_complex_arg(&text).unwrap(), z, "{text}");
        }
    }
}
