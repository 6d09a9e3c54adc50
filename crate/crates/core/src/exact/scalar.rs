use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Exact rational number. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Commutative ring with exact division by nonzero integer constants.
///
/// Implemented by [`Rational`] and [`Poly`](super::Poly); every matrix and
/// characteristic-polynomial routine in this crate is generic over it.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(k: i64) -> Self {
        Self::from_rational(&rat(k))
    }

    /// Exact division by a nonzero integer.
    fn div_int(&self, d: i64) -> Self;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        self / BigInt::from(d)
    }
}

/// Integer as a rational.
pub fn rat(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim();
    let bad = || ParseError::BadRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical exact text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Serde adapters that read and write rationals as `"p/q"` strings.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::{format_rational, parse_rational, Rational};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    /// String-encoded rational usable inside nested containers.
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct Exact(pub Rational);

    impl serde::Serialize for Exact {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&format_rational(&self.0))
        }
    }

    impl<'de> Deserialize<'de> for Exact {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let s = String::deserialize(d)?;
            parse_rational(&s).map(Exact).map_err(serde::de::Error::custom)
        }
    }

    pub mod matrix {
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        use super::{Exact, Rational};

        pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let rows: Vec<Vec<Exact>> = m.iter().map(|r| r.iter().cloned().map(Exact).collect()).collect();
            rows.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
            let rows = Vec::<Vec<Exact>>::deserialize(d)?;
            Ok(rows.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect())
        }
    }

    pub mod tensor {
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        use super::{Exact, Rational};

        pub fn serialize<S: Serializer>(t: &[Vec<Vec<Rational>>], s: S) -> Result<S::Ok, S::Error> {
            let v: Vec<Vec<Vec<Exact>>> = t
                .iter()
                .map(|m| m.iter().map(|r| r.iter().cloned().map(Exact).collect()).collect())
                .collect();
            v.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Vec<Rational>>>, D::Error> {
            let v = Vec::<Vec<Vec<Exact>>>::deserialize(d)?;
            Ok(v.into_iter()
                .map(|m| m.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect())
                .collect())
        }
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::{format_rational, parse_rational, Rational};

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_some(&format_rational(q)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let raw = Option::<String>::deserialize(d)?;
            raw.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), rat(-4));
        assert_eq!(parse_rational("2/-4").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
    }

    #[test]
    fn always_reduced() {
        let q = frac(10, -15);
        assert_eq!(q.numer(), &BigInt::from(-2));
        assert_eq!(q.denom(), &BigInt::from(3));
    }
}
