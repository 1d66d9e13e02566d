//! Degrees in `{-inf} ∪ N`, with the truncation caveat attached.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A degree in `{-inf} ∪ N`. `-inf` is the degree of the zero module and
/// serializes as `null`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Degree {
    #[default]
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(n: usize) -> Self {
        Degree::Finite(n as i64)
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }

    pub fn value(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(n) => Some(n),
        }
    }

    /// `-inf` absorbs: `-inf + x = -inf`.
    pub fn plus(self, k: i64) -> Self {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(n) => Degree::Finite(n + k),
        }
    }

    pub fn add(self, other: Degree) -> Self {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }

    /// `self <= n` for an integer bound.
    pub fn at_most(self, n: i64) -> bool {
        self.value().is_none_or(|v| v <= n)
    }

    /// The largest index whose flag is set.
    pub fn of_support(nonzero: impl IntoIterator<Item = bool>) -> Self {
        nonzero
            .into_iter()
            .enumerate()
            .filter(|(_, z)| *z)
            .map(|(n, _)| Degree::finite(n))
            .max()
            .unwrap_or(Degree::NegInf)
    }
}

impl From<i64> for Degree {
    fn from(n: i64) -> Self {
        Degree::Finite(n)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Option::<i64>::deserialize(d)?.map_or(Degree::NegInf, Degree::Finite))
    }
}

/// A degree computed from truncated data. `truncation_limited` is set when
/// the top represented degree is nonzero, so the true value may be larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedDegree {
    pub degree: Degree,
    pub truncation_limited: bool,
}

impl TruncatedDegree {
    /// Degree of a sequence of nonzero-flags indexed `0..=top`.
    pub fn from_flags(flags: &[bool]) -> Self {
        TruncatedDegree {
            degree: Degree::of_support(flags.iter().copied()),
            truncation_limited: flags.last().copied().unwrap_or(false),
        }
    }

    pub fn certain(self) -> Option<Degree> {
        (!self.truncation_limited).then_some(self.degree)
    }
}

impl fmt::Display for TruncatedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.truncation_limited {
            write!(f, ">={}", self.degree)
        } else {
            write!(f, "{}", self.degree)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_arithmetic() {
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(Degree::NegInf.plus(5), Degree::NegInf);
        assert_eq!(Degree::Finite(2).add(Degree::Finite(3)), Degree::Finite(5));
        assert!(Degree::NegInf.at_most(-100));
    }

    #[test]
    fn serializes_neg_inf_as_null() {
        assert_eq!(serde_json::to_string(&Degree::NegInf).unwrap(), "null");
        assert_eq!(serde_json::to_string(&Degree::Finite(3)).unwrap(), "3");
        let d: Degree = serde_json::from_str("null").unwrap();
        assert_eq!(d, Degree::NegInf);
    }

    #[test]
    fn support() {
        let t = TruncatedDegree::from_flags(&[true, true, false]);
        assert_eq!(t.degree, Degree::Finite(1));
        assert!(!t.truncation_limited);
        assert!(TruncatedDegree::from_flags(&[false, true]).truncation_limited);
        assert_eq!(TruncatedDegree::from_flags(&[]).degree, Degree::NegInf);
    }
}
