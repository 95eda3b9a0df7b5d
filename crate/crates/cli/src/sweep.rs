use std::fmt;
use std::str::FromStr;

/// Sweep grids default to this many evenly spaced points.
pub const DEFAULT_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    T,
    Alpha,
    Delta,
    P,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::T => "t",
            SweepVar::Alpha => "alpha",
            SweepVar::Delta => "delta",
            SweepVar::P => "p",
        }
    }
}

/// `name:lo,hi[,points]`, e.g. `t:-2,4,51` or `delta:0,1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepError(String);

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SweepError {}

impl SweepSpec {
    /// Evenly spaced grid with exact end points.
    pub fn grid(&self) -> Vec<f64> {
        tailduality::calibration::even_grid(self.lo, self.hi, self.points)
    }
}

impl FromStr for SweepSpec {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        let err = |m: &str| SweepError(format!("bad sweep `{s}`: {m}"));
        let (name, range) = s.split_once(':').ok_or_else(|| err("expected name:lo,hi[,points]"))?;
        let var = match name.trim() {
            "t" => SweepVar::T,
            "alpha" => SweepVar::Alpha,
            "delta" => SweepVar::Delta,
            "p" => SweepVar::P,
            _ => return Err(err("variable must be t, alpha, delta or p")),
        };
        let parts: Vec<&str> = range.split(',').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(err("expected lo,hi or lo,hi,points"));
        }
        let num = |x: &str| -> Result<f64, SweepError> {
            let v: f64 = x.parse().map_err(|_| err("bounds must be numbers"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(err("bounds must be finite"))
            }
        };
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        if lo > hi {
            return Err(err("lo must not exceed hi"));
        }
        let points = match parts.get(2) {
            Some(n) => n.parse::<usize>().map_err(|_| err("points must be a positive integer"))?,
            None => DEFAULT_POINTS,
        };
        if points < 2 || points > 1_000_000 {
            return Err(err("points must lie in [2, 1000000]"));
        }
        Ok(SweepSpec { var, lo, hi, points })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        let s: SweepSpec = "t:-2,4,51".parse().unwrap();
        assert_eq!(
            s,
            SweepSpec {
                var: SweepVar::T,
                lo: -2.0,
                hi: 4.0,
                points: 51
            }
        );
        let g = s.grid();
        assert_eq!((g[0], g[50], g.len()), (-2.0, 4.0, 51));
        assert_eq!("delta:0,1".parse::<SweepSpec>().unwrap().points, 201);
        for bad in ["t", "x:0,1", "t:1,0", "t:0", "t:0,1,1", "t:0,nan", "t:0,1,2,3", "p:a,b"] {
            assert!(bad.parse::<SweepSpec>().is_err(), "{bad}");
        }
    }
}
