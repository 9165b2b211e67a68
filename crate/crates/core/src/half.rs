//! Half-integers, stored as twice their value.
//!
//! Helicities and little-group weights are integers or half-odd-integers;
//! keeping `2h` as an `i32` makes all selection rules exact integer
//! arithmetic.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// A half-integer `n/2`, stored as the numerator `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Half(pub i32);

impl Half {
    pub const ZERO: Half = Half(0);

    /// The half-integer with value `n` (an ordinary integer).
    pub fn from_int(n: i32) -> Self {
        Half(2 * n)
    }

    /// Twice the value, always an integer.
    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn abs(self) -> Half {
        Half(self.0.abs())
    }

    /// True when the value is an ordinary integer.
    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Parses `"2"`, `"-1/2"`, `"3/2"` or `"1.5"`.
impl FromStr for Half {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: i32 = num.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
            let d: i32 = den.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
            return match d {
                1 => Ok(Half(2 * n)),
                2 => Ok(Half(n)),
                _ => Err(format!("'{s}' is not a half-integer")),
            };
        }
        if let Ok(n) = s.parse::<i32>() {
            return Ok(Half(2 * n));
        }
        if let Ok(x) = s.parse::<f64>() {
            let twice = 2.0 * x;
            if (twice - twice.round()).abs() < 1e-9 {
                return Ok(Half(twice.round() as i32));
            }
        }
        Err(format!("'{s}' is not a half-integer"))
    }
}
