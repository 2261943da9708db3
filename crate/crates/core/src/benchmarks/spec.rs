use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Royal road for one-point crossover.
    #[serde(rename = "rrmo")]
    Rrmo,
    /// Royal road for uniform crossover.
    #[serde(rename = "rrmo-uni")]
    RrmoUni,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Rrmo => "rrmo",
            Family::RrmoUni => "rrmo-uni",
        }
    }
}

/// Benchmark identity plus genotype length `n` and objective count `m`.
///
/// Rendered and parsed as `rrmo:n=<n>,m=<m>` or `rrmo-uni:n=<n>,m=<m>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ProblemSpec {
    family: Family,
    n: usize,
    m: usize,
}

impl ProblemSpec {
    pub fn new(family: Family, n: usize, m: usize) -> Result<Self> {
        let bad = |why: String| Err(Error::InvalidSpec(format!("{}:n={n},m={m}: {why}", family.name())));
        if m == 0 || !m.is_multiple_of(2) {
            return bad("m must be a positive even number".into());
        }
        if n == 0 || m > n {
            return bad("need 1 <= m <= n".into());
        }
        match family {
            // n divisible by 5m/2
            Family::Rrmo if !(2 * n).is_multiple_of(5 * m) => bad("n must be divisible by 5m/2".into()),
            Family::RrmoUni if !n.is_multiple_of(8 * m) => bad("n must be divisible by 8m".into()),
            _ => Ok(ProblemSpec { family, n, m }),
        }
    }

    pub fn rrmo(n: usize, m: usize) -> Result<Self> {
        ProblemSpec::new(Family::Rrmo, n, m)
    }

    pub fn rrmo_uni(n: usize, m: usize) -> Result<Self> {
        ProblemSpec::new(Family::RrmoUni, n, m)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of blocks, `m/2`.
    pub fn blocks(&self) -> usize {
        self.m / 2
    }

    /// Block length `2n/m`.
    pub fn block_len(&self) -> usize {
        2 * self.n / self.m
    }

    /// 0-based position range of block `j` (1-based).
    pub fn block_range(&self, j: usize) -> std::ops::Range<usize> {
        debug_assert!(j >= 1 && j <= self.blocks());
        let len = self.block_len();
        (j - 1) * len..j * len
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={},m={}", self.family.name(), self.n, self.m)
    }
}

impl FromStr for ProblemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (family, params) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| parse_err("expected `<family>:n=<n>,m=<m>`"))?;
        let family = match family {
            "rrmo" => Family::Rrmo,
            "rrmo-uni" => Family::RrmoUni,
            _ => return Err(parse_err("family must be `rrmo` or `rrmo-uni`")),
        };
        let (mut n, mut m) = (None, None);
        for part in params.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| parse_err("expected key=value pairs"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| parse_err("parameter values must be positive integers"))?;
            match key.trim() {
                "n" if n.is_none() => n = Some(value),
                "m" if m.is_none() => m = Some(value),
                _ => return Err(parse_err("unknown or repeated parameter")),
            }
        }
        match (n, m) {
            (Some(n), Some(m)) => ProblemSpec::new(family, n, m),
            _ => Err(parse_err("both n and m are required")),
        }
    }
}

impl TryFrom<String> for ProblemSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ProblemSpec> for String {
    fn from(spec: ProblemSpec) -> String {
        spec.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        let s: ProblemSpec = "rrmo:n=10,m=2".parse().unwrap();
        assert_eq!(s, ProblemSpec::rrmo(10, 2).unwrap());
        assert_eq!(s.to_string(), "rrmo:n=10,m=2");
        let u: ProblemSpec = "rrmo-uni:n=16,m=2".parse().unwrap();
        assert_eq!(u.to_string(), "rrmo-uni:n=16,m=2");
        assert_eq!(u.block_len(), 16);
    }

    #[test]
    fn divisibility() {
        assert!(ProblemSpec::rrmo(10, 2).is_ok());
        assert!(ProblemSpec::rrmo(12, 2).is_err());
        assert!(ProblemSpec::rrmo(20, 4).is_ok());
        assert!(ProblemSpec::rrmo(15, 2).is_ok());
        assert!(ProblemSpec::rrmo(10, 3).is_err());
        assert!(ProblemSpec::rrmo_uni(16, 2).is_ok());
        assert!(ProblemSpec::rrmo_uni(24, 2).is_err());
        assert!(ProblemSpec::rrmo_uni(32, 4).is_ok());
        assert!(ProblemSpec::rrmo(5, 2).is_ok());
        assert!(ProblemSpec::rrmo(0, 2).is_err());
    }

    #[test]
    fn malformed() {
        for bad in ["rrmo", "foo:n=10,m=2", "rrmo:n=10", "rrmo:n=x,m=2", "rrmo:n=10,m=2,k=1"] {
            assert!(bad.parse::<ProblemSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn serde_as_string() {
        let s = ProblemSpec::rrmo_uni(16, 2).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"rrmo-uni:n=16,m=2\"");
        assert_eq!(serde_json::from_str::<ProblemSpec>(&json).unwrap(), s);
    }
}
