use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Value of a degree-like function: an integer or `-inf` (the degree of zero).
///
/// `NegInf` is absorbing for addition and the identity for `max`; the derived
/// ordering puts it below every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }

    /// `e * self`; `0 * -inf` stays `-inf`.
    pub fn scale(self, e: i64) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(d) => Degree::Finite(d * e),
        }
    }
}

impl From<i64> for Degree {
    fn from(d: i64) -> Self {
        Degree::Finite(d)
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

// Serialized as a JSON integer, or the string "-inf".
impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInf => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_i64(*d),
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Degree::Finite(v)),
            Raw::Str(s) if s == "-inf" => Ok(Degree::NegInf),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad degree {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_is_absorbing_and_minimal() {
        let d = Degree::Finite(3);
        assert_eq!(Degree::NegInf + d, Degree::NegInf);
        assert_eq!(d.max(Degree::NegInf), d);
        assert!(Degree::NegInf < Degree::Finite(i64::MIN));
        assert_eq!(Degree::NegInf.to_string(), "-inf");
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&Degree::NegInf).unwrap(), "\"-inf\"");
        let d: Degree = serde_json::from_str("-4").unwrap();
        assert_eq!(d, Degree::Finite(-4));
    }
}
