use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Coefficient field: the rationals or a prime field `GF(p)` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

pub const GF2: FieldSpec = FieldSpec::Prime(2);
pub const QQ: FieldSpec = FieldSpec::Rationals;

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self, Error> {
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("{p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// Canonical integer representative: the symmetric residue for `GF(p)`.
    pub fn normalize(self, x: i64) -> i64 {
        match self {
            FieldSpec::Rationals => x,
            FieldSpec::Prime(p) => {
                let p = p as i64;
                let r = x.rem_euclid(p);
                if r > p / 2 {
                    r - p
                } else {
                    r
                }
            }
        }
    }

    pub fn is_zero(self, x: i64) -> bool {
        self.normalize(x) == 0
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

/// Parses `q` or `p:<prime>`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("p:") {
            Some(p) => {
                let p: u32 = p
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad characteristic in `{s}`")))?;
                FieldSpec::prime(p)
            }
            None => Err(Error::InvalidField(format!("expected `q` or `p:<prime>`, got `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("q".parse::<FieldSpec>(), Ok(QQ));
        assert_eq!("p:2".parse::<FieldSpec>(), Ok(GF2));
        assert_eq!("p:2147483647".parse::<FieldSpec>(), Ok(FieldSpec::Prime(2147483647)));
        assert!("p:4".parse::<FieldSpec>().is_err());
        assert!("p:1".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(GF2.to_string().parse::<FieldSpec>(), Ok(GF2));
    }

    #[test]
    fn residues() {
        assert_eq!(GF2.normalize(-1), 1);
        assert_eq!(FieldSpec::Prime(5).normalize(4), -1);
        assert!(GF2.is_zero(2));
        assert!(!QQ.is_zero(2));
    }
}
