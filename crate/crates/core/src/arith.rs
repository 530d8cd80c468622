//! Exact scalars and vectors.
//!
//! Everything geometric in this crate is computed over the rationals with
//! arbitrary-precision numerators and denominators. [`RationalVector`] is the
//! coordinate type for points of both `M_R` and `N_R`; the duality bracket is
//! the plain dot product of coordinates.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p/q` rendering used in every report (`0` renders as `0/1`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()))
}

/// A point or covector with exact rational coordinates.
///
/// Ordering is lexicographic on coordinates, which is the tie-break used for
/// every deterministic listing in the crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coords: &[BigInt]) -> Self {
        RationalVector(coords.iter().cloned().map(Rational::from_integer).collect())
    }

    /// `i`-th standard basis vector of `Q^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    /// The duality bracket (dot product of coordinates).
    pub fn dot(&self, other: &RationalVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if every coordinate is an integer.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Smallest positive integer `D` with `D * self` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        denominator_lcm(&self.0)
    }

    /// The primitive integer vector on the ray through `self` (zero stays zero).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self.denominator_lcm();
        let scaled: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        primitive(&scaled)
    }

    /// Average of a nonempty set of points.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a RationalVector>) -> RationalVector {
        let mut iter = points.into_iter();
        let first = iter.next().expect("centroid of an empty point set").clone();
        let (sum, n) = iter.fold((first, 1i64), |(s, n), p| (s.add(p), n + 1));
        sum.scale(&ratio(1, n))
    }

    /// Sign of the first nonzero coordinate (0 for the zero vector).
    pub fn leading_sign(&self) -> i32 {
        self.0
            .iter()
            .find(|c| !c.is_zero())
            .map_or(0, |c| if c.is_positive() { 1 } else { -1 })
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for RationalVector {
    fn from(v: Vec<Rational>) -> Self {
        RationalVector(v)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Integral vectors serialize as integer arrays, all others as arrays of
/// `p/q` strings. Both forms (and mixtures) are accepted when reading.
impl serde::Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        if self.is_integral() {
            for c in &self.0 {
                seq.serialize_element(&serde_json::Number::from_string_unchecked(c.numer().to_string()))?;
            }
        } else {
            for c in &self.0 {
                seq.serialize_element(&format_rational(c))?;
            }
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for RationalVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = serde::Deserialize::deserialize(d)?;
        raw.iter()
            .map(|v| {
                let text = match v {
                    serde_json::Value::String(t) => t.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    _ => return Err(serde::de::Error::custom("expected a number or a p/q string")),
                };
                parse_rational(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(RationalVector)
    }
}

/// `#[serde(with = ...)]` helper writing a [`Rational`] as a `p/q` string.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let t: String = serde::Deserialize::deserialize(d)?;
        parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))
    }
}

/// Same as [`serde_rational`] for a list of rationals.
pub mod serde_rational_vec {
    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: serde::Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let ts: Vec<String> = serde::Deserialize::deserialize(d)?;
        ts.iter()
            .map(|t| parse_rational(t).ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}"))))
            .collect()
    }
}
