//! Textual model specifications such as `pareto:theta=2`,
//! `lognormal:mu=1,sigma=0.5` or `empirical:file=losses.txt`.

use std::path::PathBuf;
use std::str::FromStr;

use super::{EmpiricalSample, LossModel, Parametric};
use crate::error::{Error, Result};

/// A parsed model specification. Parsing never touches the filesystem;
/// [`resolve`](ModelSpec::resolve) does.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Parametric(Parametric),
    Values(Vec<f64>),
    File(PathBuf),
}

impl ModelSpec {
    pub fn resolve(self) -> Result<LossModel> {
        match self {
            ModelSpec::Parametric(p) => LossModel::parametric(p),
            ModelSpec::Values(v) => LossModel::empirical(v),
            ModelSpec::File(path) => Ok(EmpiricalSample::from_file(path)?.into()),
        }
    }
}

fn spec_err(input: &str, message: impl Into<String>) -> Error {
    Error::Spec {
        input: input.to_string(),
        message: message.into(),
    }
}

struct Params<'a> {
    input: &'a str,
    pairs: Vec<(&'a str, &'a str, bool)>,
}

impl<'a> Params<'a> {
    fn parse(input: &'a str, body: &'a str) -> Result<Self> {
        let mut pairs: Vec<(&str, &str, bool)> = Vec::new();
        if body.trim().is_empty() {
            return Ok(Params { input, pairs });
        }
        for item in body.split(',') {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| spec_err(input, format!("expected key=value, found `{item}`")))?;
            let k = k.trim();
            if pairs.iter().any(|(seen, _, _)| *seen == k) {
                return Err(spec_err(input, format!("duplicate parameter `{k}`")));
            }
            pairs.push((k, v.trim(), false));
        }
        Ok(Params { input, pairs })
    }

    fn raw(&mut self, key: &str) -> Option<&'a str> {
        self.pairs.iter_mut().find(|(k, _, _)| *k == key).map(|p| {
            p.2 = true;
            p.1
        })
    }

    fn num(&mut self, key: &str, default: Option<f64>) -> Result<f64> {
        match self.raw(key) {
            Some(v) => {
                let x: f64 = v
                    .parse()
                    .map_err(|_| spec_err(self.input, format!("`{key}` is not a number: `{v}`")))?;
                if !x.is_finite() {
                    return Err(spec_err(self.input, format!("`{key}` must be finite")));
                }
                Ok(x)
            }
            None => default.ok_or_else(|| spec_err(self.input, format!("missing parameter `{key}`"))),
        }
    }

    fn finish(self) -> Result<()> {
        match self.pairs.iter().find(|(_, _, used)| !used) {
            Some((k, _, _)) => Err(spec_err(self.input, format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let (name, body) = input.split_once(':').unwrap_or((input, ""));
        let name = name.trim().to_ascii_lowercase();
        let mut params = Params::parse(input, body)?;
        let spec = match name.as_str() {
            "pareto" => ModelSpec::Parametric(Parametric::Pareto {
                theta: params.num("theta", None)?,
            }),
            "exponential" | "exp" => ModelSpec::Parametric(Parametric::Exponential {
                rate: params.num("rate", Some(1.0))?,
            }),
            "normal" => ModelSpec::Parametric(Parametric::Normal {
                mu: params.num("mu", Some(0.0))?,
                sigma: params.num("sigma", Some(1.0))?,
            }),
            "student-t" | "t" => ModelSpec::Parametric(Parametric::StudentT {
                nu: params.num("nu", None)?,
                loc: params.num("loc", Some(0.0))?,
                scale: params.num("scale", Some(1.0))?,
            }),
            "lognormal" => ModelSpec::Parametric(Parametric::Lognormal {
                mu: params.num("mu", Some(0.0))?,
                sigma: params.num("sigma", Some(1.0))?,
            }),
            "weibull" => ModelSpec::Parametric(Parametric::Weibull {
                shape: params.num("shape", None)?,
                scale: params.num("scale", Some(1.0))?,
            }),
            "gamma" => ModelSpec::Parametric(Parametric::Gamma {
                shape: params.num("shape", None)?,
                rate: params.num("rate", Some(1.0))?,
            }),
            "empirical" => {
                // `values` is a `;`-separated list since `,` separates parameters
                match (params.raw("file"), params.raw("values")) {
                    (Some(path), None) if !path.is_empty() => ModelSpec::File(PathBuf::from(path)),
                    (None, Some(list)) => {
                        let mut values = Vec::new();
                        for item in list.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                            let x: f64 = item
                                .parse()
                                .map_err(|_| spec_err(input, format!("bad sample value `{item}`")))?;
                            if !x.is_finite() {
                                return Err(spec_err(input, "sample values must be finite"));
                            }
                            values.push(x);
                        }
                        if values.is_empty() {
                            return Err(spec_err(input, "empty sample"));
                        }
                        ModelSpec::Values(values)
                    }
                    _ => return Err(spec_err(input, "empirical needs exactly one of file=PATH or values=a;b;c")),
                }
            }
            other => return Err(spec_err(input, format!("unknown model family `{other}`"))),
        };
        params.finish()?;
        if let ModelSpec::Parametric(p) = &spec {
            p.validate()?;
        }
        Ok(spec)
    }
}
