//! Supernatural numbers: formal products of prime powers with exponents in
//! N ∪ {∞}, driving localization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of one prime in a supernatural number. Serializes as the plain
/// number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(k) => s.serialize_u32(*k),
            Exponent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Exponent;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a non-negative integer or \"inf\"")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Exponent, E> {
                u32::try_from(v)
                    .map(Exponent::Finite)
                    .map_err(|_| E::custom("exponent too large"))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Exponent, E> {
                if v == "inf" {
                    Ok(Exponent::Infinite)
                } else {
                    Err(E::custom("expected \"inf\""))
                }
            }
        }
        d.deserialize_any(V)
    }
}

use super::is_prime;

/// A formal product `∏_p p^{n_p}` with finitely many nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Supernatural {
    exponents: BTreeMap<u64, Exponent>,
}

impl Supernatural {
    /// The supernatural number 1 (empty support; localizing at it is the
    /// identity).
    pub fn one() -> Self {
        Supernatural::default()
    }

    pub fn from_exponents(exponents: BTreeMap<u64, Exponent>) -> Result<Self> {
        for (&p, &e) in &exponents {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if e == Exponent::Finite(0) {
                return Err(Error::InvalidInput(
                    "zero exponents must be omitted".into(),
                ));
            }
        }
        Ok(Supernatural { exponents })
    }

    /// The supernatural number of a plain natural number: its prime
    /// factorization.
    pub fn from_natural(mut n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("0 is not a supernatural number".into()));
        }
        let mut exp = BTreeMap::new();
        let mut p = 2;
        while p * p <= n {
            let mut k = 0u32;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            if k > 0 {
                exp.insert(p, Exponent::Finite(k));
            }
            p += 1;
        }
        if n > 1 {
            exp.insert(n, Exponent::Finite(1));
        }
        Ok(Supernatural { exponents: exp })
    }

    /// Parses the CLI syntax: comma-separated `p`, `p^e` or `p^inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Supernatural::one());
        }
        let mut exp = BTreeMap::new();
        for part in s.split(',') {
            let part = part.trim();
            let (p, e) = match part.split_once('^') {
                None => (part, Exponent::Finite(1)),
                Some((p, "inf")) => (p, Exponent::Infinite),
                Some((p, e)) => (
                    p,
                    Exponent::Finite(e.parse::<u32>().map_err(|_| {
                        Error::InvalidInput(format!("bad exponent {e:?} in {part:?}"))
                    })?),
                ),
            };
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime {p:?} in {part:?}")))?;
            if exp.insert(p, e).is_some() {
                return Err(Error::InvalidInput(format!("prime {p} repeated")));
            }
        }
        Supernatural::from_exponents(exp)
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Exponent> {
        &self.exponents
    }

    /// The set of primes dividing the number; localization uses only this.
    pub fn support(&self) -> BTreeSet<u64> {
        self.exponents.keys().copied().collect()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Of infinite type: at least one prime, all exponents infinite.
    pub fn is_infinite_type(&self) -> bool {
        !self.exponents.is_empty()
            && self.exponents.values().all(|e| *e == Exponent::Infinite)
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&p, &e) in &self.exponents {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            match e {
                Exponent::Finite(1) => write!(f, "{p}")?,
                Exponent::Finite(k) => write!(f, "{p}^{k}")?,
                Exponent::Infinite => write!(f, "{p}^inf")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let n = Supernatural::parse("2^inf,3").unwrap();
        assert_eq!(n.support().into_iter().collect::<Vec<_>>(), vec![2, 3]);
        assert!(!n.is_infinite_type());
        assert_eq!(n.to_string(), "2^inf·3");
        assert!(Supernatural::parse("1").unwrap().is_one());
        assert!(Supernatural::parse("4").is_err());
        assert!(Supernatural::parse("2,2").is_err());
    }

    #[test]
    fn infinite_type_requires_all_infinite() {
        assert!(Supernatural::parse("2^inf").unwrap().is_infinite_type());
        assert!(Supernatural::parse("2^inf,3^inf").unwrap().is_infinite_type());
        assert!(!Supernatural::parse("2^inf,3^2").unwrap().is_infinite_type());
        assert!(!Supernatural::one().is_infinite_type());
    }

    #[test]
    fn factorization() {
        let n = Supernatural::from_natural(12).unwrap();
        assert_eq!(n.to_string(), "2^2·3");
        assert_eq!(Supernatural::from_natural(1).unwrap(), Supernatural::one());
    }
}
