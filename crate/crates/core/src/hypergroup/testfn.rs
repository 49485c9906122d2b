//! Built-in W-invariant test functions, `f(t) = Π_i g(t_i)` with `g` even.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Beyond this many widths the Gaussian bump is treated as zero.
pub const GAUSS_CUTOFF_WIDTHS: f64 = 8.0;

/// A test function on the chamber, named by a short string such as
/// `gauss:1.0,0.4` (see [`TestFunction::from_str`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TestFunction {
    /// `e^{−(x−c)²/w²} + e^{−(x+c)²/w²}`.
    Gauss {
        center: f64,
        width: f64,
    },
    /// `(1 + cos(π(x−c)/w))/2` on `|x−c| < w`, symmetrized.
    Cosine {
        center: f64,
        width: f64,
    },
    /// 1 on `|x| ≤ r`, falling smoothly to 0 on `[r, r+w]`.
    Indicator {
        radius: f64,
        width: f64,
    },
    Constant {
        value: f64,
    },
}

impl TestFunction {
    pub fn gauss(center: f64, width: f64) -> Self {
        TestFunction::Gauss { center, width }
    }

    pub fn eval(&self, t: &[f64]) -> f64 {
        t.iter().map(|&x| self.profile(x)).product()
    }

    /// The one-variable even factor `g`.
    pub fn profile(&self, x: f64) -> f64 {
        match *self {
            TestFunction::Gauss { center, width } => {
                let u = (x - center) / width;
                let v = (x + center) / width;
                (-u * u).exp() + (-v * v).exp()
            }
            TestFunction::Cosine { center, width } => {
                let one = |y: f64| {
                    let u = (y - center) / width;
                    if u.abs() < 1.0 {
                        0.5 * (1.0 + (PI * u).cos())
                    } else {
                        0.0
                    }
                };
                if center == 0.0 {
                    one(x)
                } else {
                    one(x) + one(-x)
                }
            }
            TestFunction::Indicator { radius, width } => smooth_step((radius + width - x.abs()) / width),
            TestFunction::Constant { value } => value,
        }
    }

    /// Radius `R` with `g = 0` (numerically) outside `[−R, R]`; infinite for
    /// constants.
    pub fn support_radius(&self) -> f64 {
        match *self {
            TestFunction::Gauss { center, width } => center.abs() + GAUSS_CUTOFF_WIDTHS * width,
            TestFunction::Cosine { center, width } => center.abs() + width,
            TestFunction::Indicator { radius, width } => radius + width,
            TestFunction::Constant { .. } => f64::INFINITY,
        }
    }

    fn validate(self) -> Result<Self> {
        let width = match self {
            TestFunction::Gauss { width, .. }
            | TestFunction::Cosine { width, .. }
            | TestFunction::Indicator { width, .. } => width,
            TestFunction::Constant { .. } => 1.0,
        };
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::Usage(format!("test function width must be positive: {self}")));
        }
        Ok(self)
    }
}

/// C^∞ step: 0 for `x ≤ 0`, 1 for `x ≥ 1`.
fn smooth_step(x: f64) -> f64 {
    let h = |y: f64| if y > 0.0 { (-1.0 / y).exp() } else { 0.0 };
    let a = h(x);
    let b = h(1.0 - x);
    if a + b == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestFunction::Gauss { center, width } => write!(f, "gauss:{center},{width}"),
            TestFunction::Cosine { center, width } => write!(f, "cosine:{center},{width}"),
            TestFunction::Indicator { radius, width } => write!(f, "indicator:{radius},{width}"),
            TestFunction::Constant { value } => write!(f, "const:{value}"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    /// `gauss:c,w`, `cosine:c,w`, `indicator:r,w`, `const:v`, `one`, `zero`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "one" => return Ok(TestFunction::Constant { value: 1.0 }),
            "zero" => return Ok(TestFunction::Constant { value: 0.0 }),
            _ => {}
        }
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Usage(format!("test function `{s}`: expected name:args")))?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|a| a.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Usage(format!("test function `{s}`: {e}")))?;
        let two = |n: &[f64]| -> Result<(f64, f64)> {
            match n {
                [a, b] => Ok((*a, *b)),
                _ => Err(Error::Usage(format!("test function `{s}` takes two numbers"))),
            }
        };
        let f = match name {
            "gauss" => {
                let (center, width) = two(&nums)?;
                TestFunction::Gauss { center, width }
            }
            "cosine" => {
                let (center, width) = two(&nums)?;
                TestFunction::Cosine { center, width }
            }
            "indicator" => {
                let (radius, width) = two(&nums)?;
                TestFunction::Indicator { radius, width }
            }
            "const" => match nums[..] {
                [value] => TestFunction::Constant { value },
                _ => return Err(Error::Usage("const takes one number".into())),
            },
            _ => return Err(Error::Usage(format!("unknown test function `{name}`"))),
        };
        f.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["gauss:1,0.4", "cosine:0.5,0.3", "indicator:1.5,0.2", "const:2"] {
            let f: TestFunction = s.parse().unwrap();
            assert_eq!(f.to_string().parse::<TestFunction>().unwrap(), f);
        }
        assert!("gauss:1".parse::<TestFunction>().is_err());
        assert!("gauss:1,-1".parse::<TestFunction>().is_err());
        assert!("blob:1,1".parse::<TestFunction>().is_err());
    }

    #[test]
    fn profiles_are_even_and_supported() {
        for f in [
            TestFunction::gauss(0.8, 0.3),
            TestFunction::Cosine {
                center: 0.8,
                width: 0.3,
            },
            TestFunction::Indicator {
                radius: 1.0,
                width: 0.5,
            },
        ] {
            for x in [0.0, 0.3, 0.9, 1.4] {
                assert_eq!(f.profile(x), f.profile(-x));
            }
            assert!(f.profile(f.support_radius() + 1e-9) < 1e-25);
        }
        let ind = TestFunction::Indicator {
            radius: 1.0,
            width: 0.5,
        };
        assert_eq!(ind.profile(0.7), 1.0);
        assert!(ind.profile(1.25) > 0.0 && ind.profile(1.25) < 1.0);
    }
}
