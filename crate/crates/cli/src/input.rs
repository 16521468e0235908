//! Command-line input parsing: complex literals, boundary-data grammar, JSON
//! spec files with field-path error reporting, and named-example resolution.

use std::path::Path;

use num_complex::Complex64;
use polyacc_core::kernel::{BoundaryData, FourierTerm};
use polyacc_core::polyharmonic::{NamedExample, PolyanalyticSpec, PolyharmonicSpec};
use serde::de::DeserializeOwned;

/// Parse "re" or "re,im" into a complex number.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    let re: f64 = re.trim().parse().map_err(|_| format!("invalid real part in `{s}`"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("invalid imaginary part in `{s}`"))?;
    Ok(Complex64::new(re, im))
}

/// Parse boundary data: `const:RE[,IM]`, `cos:K`, `sin:K`, or
/// `fourier:K:A:B[;K:A:B...]` with complex A, B.
pub fn parse_boundary(s: &str) -> Result<BoundaryData, String> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| format!("boundary `{s}` must look like const:..., cos:K, sin:K or fourier:K:A:B"))?;
    match kind {
        "const" => Ok(BoundaryData::Constant { value: parse_complex(rest)? }),
        "cos" => Ok(BoundaryData::Cos { k: parse_k(rest)? }),
        "sin" => Ok(BoundaryData::Sin { k: parse_k(rest)? }),
        "fourier" => {
            let terms = rest
                .split(';')
                .map(|term| {
                    let mut parts = term.splitn(3, ':');
                    let k = parse_k(parts.next().unwrap_or(""))?;
                    let a = parse_complex(parts.next().ok_or_else(|| format!("term `{term}` is missing a"))?)?;
                    let b = parse_complex(parts.next().ok_or_else(|| format!("term `{term}` is missing b"))?)?;
                    Ok(FourierTerm { k, a, b })
                })
                .collect::<Result<Vec<_>, String>>()?;
            Ok(BoundaryData::Fourier { terms })
        }
        other => Err(format!("unknown boundary kind `{other}`")),
    }
}

fn parse_k(s: &str) -> Result<u32, String> {
    s.trim().parse().map_err(|_| format!("invalid frequency `{s}`"))
}

/// Deserialize a JSON file, reporting the first violating field path.
pub fn from_json_file<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        format!("{}: invalid input at `{}`: {}", path.display(), e.path(), e.inner())
    })
}

/// Parameters a named example may consume; unset ones fall back per family.
#[derive(Debug, Clone, Default)]
pub struct ExampleParams {
    pub p: Option<u32>,
    pub n: Option<u32>,
    pub a: Option<Complex64>,
    pub b: Option<Complex64>,
    pub c: Option<Complex64>,
    pub mu: Option<Complex64>,
    pub lambda: Option<Complex64>,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Resolve an example name plus parameters into a map, with family defaults
/// chosen inside each family's admissible range.
pub fn resolve_example(name: &str, params: &ExampleParams) -> Result<PolyharmonicSpec, String> {
    let p = params.p.unwrap_or(2);
    let named = match name {
        "eg1" => NamedExample::Eg1 {
            p,
            a: params.a.unwrap_or(real(4.0)),
            b: params.b.unwrap_or(real(1.0)),
            c: params.c.unwrap_or(Complex64::ZERO),
        },
        "eg2" => {
            let n = params.n.unwrap_or(2);
            NamedExample::Eg2 {
                p,
                n,
                lambda: params.lambda.unwrap_or(real(1.0 / f64::from(n))),
            }
        }
        "eg3" => NamedExample::Eg3 {
            p,
            mu: params.mu.unwrap_or(real(0.25)),
        },
        "acc1" => {
            let n = params.n.unwrap_or(2);
            NamedExample::Acc1 {
                p,
                n,
                lambda: params.lambda.unwrap_or(real(1.0 / (2.0 * f64::from(n)))),
            }
        }
        "acc2" => NamedExample::Acc2 {
            p,
            lambda: params.lambda.unwrap_or(real(0.25)),
        },
        other => return Err(format!("unknown example `{other}` (expected eg1, eg2, eg3, acc1 or acc2)")),
    };
    named.build().map_err(|e| format!("example `{name}`: {e}"))
}

/// Either a spec file or a named example, resolved to a polyharmonic map.
pub fn resolve_polyharmonic(
    spec: Option<&Path>,
    example: Option<&str>,
    params: &ExampleParams,
) -> Result<PolyharmonicSpec, String> {
    match (spec, example) {
        (Some(path), None) => from_json_file(path),
        (None, Some(name)) => resolve_example(name, params),
        (Some(_), Some(_)) => Err("pass either --spec or --example, not both".into()),
        (None, None) => Err("one of --spec or --example is required".into()),
    }
}

/// Spec-file variant for polyanalytic input (named examples are polyharmonic).
pub fn resolve_polyanalytic(spec: Option<&Path>) -> Result<PolyanalyticSpec, String> {
    match spec {
        Some(path) => from_json_file(path),
        None => Err("--polyanalytic requires --spec FILE".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_accepts_single_and_pair() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-1,2e-3").unwrap(), Complex64::new(-1.0, 2e-3));
        assert!(parse_complex("nope").is_err());
    }

    #[test]
    fn boundary_grammar_round_trips() {
        assert_eq!(parse_boundary("cos:3").unwrap(), BoundaryData::Cos { k: 3 });
        assert_eq!(
            parse_boundary("const:0.7,-0.2").unwrap(),
            BoundaryData::Constant { value: Complex64::new(0.7, -0.2) }
        );
        let BoundaryData::Fourier { terms } = parse_boundary("fourier:1:1:0;2:0,0.5:1").unwrap() else {
            panic!("expected fourier");
        };
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[1].k, 2);
        assert_eq!(terms[1].a, Complex64::new(0.0, 0.5));
        assert!(parse_boundary("tanh:1").is_err());
    }

    #[test]
    fn example_defaults_build() {
        for name in ["eg1", "eg2", "eg3", "acc1", "acc2"] {
            resolve_example(name, &ExampleParams::default()).unwrap();
        }
        assert!(resolve_example("eg9", &ExampleParams::default()).is_err());
    }
}
