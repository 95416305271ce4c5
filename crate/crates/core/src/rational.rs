//! Positive rationals for the interval parameter `H`.
//!
//! Keeping `H = p/q` exact lets every boundary test `n ≤ (√x + H)²` reduce to
//! an integer sign test.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::invalid(format!(
                "H must be a positive rational, got {num}/{den}"
            )));
        }
        let g = gcd(num, den);
        Ok(Rational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Rational::new(n, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn to_f64(&self) -> f64 {
        (Dd::from_u64(self.num) / Dd::from_u64(self.den)).to_f64()
    }

    pub fn to_dd(&self) -> Dd {
        Dd::from_u64(self.num) / Dd::from_u64(self.den)
    }

    /// `self + k/2`, used for the half-integer offsets of H grids.
    pub fn plus_half(&self) -> Result<Self> {
        let num = self
            .num
            .checked_mul(2)
            .and_then(|n| n.checked_add(self.den))
            .ok_or(Error::Overflow("Rational::plus_half"))?;
        let den = self
            .den
            .checked_mul(2)
            .ok_or(Error::Overflow("Rational::plus_half"))?;
        Rational::new(num, den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Terminating decimals print as decimals so CSV columns stay numeric.
        let mut d = self.den;
        let (mut twos, mut fives) = (0u32, 0u32);
        while d.is_multiple_of(2) {
            d /= 2;
            twos += 1;
        }
        while d.is_multiple_of(5) {
            d /= 5;
            fives += 1;
        }
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else if d == 1 && twos.max(fives) <= 18 {
            let digits = twos.max(fives);
            let scale = 10u128.pow(digits);
            let scaled = self.num as u128 * (scale / self.den as u128);
            let int = scaled / scale;
            let frac = scaled % scale;
            let frac = format!("{:0width$}", frac, width = digits as usize);
            write!(f, "{int}.{}", frac.trim_end_matches('0'))
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"32"`, `"32.5"` and `"65/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("cannot parse {s:?} as a positive rational"));
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return Rational::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let den = 10u64.pow(frac.len() as u32);
            let frac: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad())?
            };
            let num = int
                .checked_mul(den)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            return Rational::new(num, den);
        }
        Rational::new(s.parse().map_err(|_| bad())?, 1)
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}
