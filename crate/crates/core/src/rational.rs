//! Exact rational scalars and coweight vectors.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// `{"num": n, "den": d}` form used by the JSON interfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for RationalJson {
    fn from(q: Rational) -> Self {
        RationalJson {
            num: *q.numer(),
            den: *q.denom(),
        }
    }
}

impl TryFrom<RationalJson> for Rational {
    type Error = Error;

    fn try_from(j: RationalJson) -> Result<Self, Error> {
        if j.den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::new(j.num, j.den))
    }
}

/// Serde adapter so that `Rational` fields serialize as `{"num","den"}`.
pub mod serde_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(*q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let j = RationalJson::deserialize(d)?;
        Rational::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let js: Vec<RationalJson> = v.iter().map(|&q| q.into()).collect();
        js.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RationalJson>::deserialize(d)?
            .into_iter()
            .map(|j| Rational::try_from(j).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Parse `"3"`, `"-1/2"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(int(s.parse().map_err(|_| bad())?)),
    }
}

/// `3`, `-1/2`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A rational coweight in the simple-coroot basis, stored as integer
/// numerators over one positive common denominator in lowest terms.
///
/// Integral coweights are those with `den == 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CoweightJson", into = "CoweightJson")]
pub struct Coweight {
    num: Vec<i64>,
    den: i64,
}

pub type RationalCoweight = Coweight;

#[derive(Serialize, Deserialize)]
struct CoweightJson {
    num: Vec<i64>,
    den: i64,
}

impl TryFrom<CoweightJson> for Coweight {
    type Error = Error;

    fn try_from(j: CoweightJson) -> Result<Self, Error> {
        Coweight::new(j.num, j.den)
    }
}

impl From<Coweight> for CoweightJson {
    fn from(c: Coweight) -> Self {
        CoweightJson {
            num: c.num,
            den: c.den,
        }
    }
}

impl Coweight {
    pub fn new(num: Vec<i64>, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::Parse("coweight with zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: Vec<i64>, mut den: i64) -> Self {
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num.iter().fold(den, |g, &x| g.gcd(&x));
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        Coweight { num, den }
    }

    pub fn integral(coords: Vec<i64>) -> Self {
        Coweight {
            num: coords,
            den: 1,
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self::integral(vec![0; rank])
    }

    pub fn from_rationals(coords: &[Rational]) -> Self {
        let den = coords.iter().fold(1i64, |l, q| l.lcm(q.denom()));
        let num = coords
            .iter()
            .map(|q| q.numer() * (den / q.denom()))
            .collect();
        Self::normalized(num, den)
    }

    pub fn rank(&self) -> usize {
        self.num.len()
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Integer coordinates, if integral.
    pub fn as_integral(&self) -> Option<&[i64]> {
        self.is_integral().then_some(&self.num[..])
    }

    pub fn coord(&self, i: usize) -> Rational {
        Rational::new(self.num[i], self.den)
    }

    pub fn coords(&self) -> Vec<Rational> {
        (0..self.rank()).map(|i| self.coord(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    /// Sum of simple-coroot coordinates, i.e. the pairing with ρ.
    pub fn height(&self) -> Rational {
        Rational::new(self.num.iter().sum(), self.den)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        let c: Vec<_> = self
            .coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| a + b)
            .collect();
        Coweight::from_rationals(&c)
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        let c: Vec<_> = self
            .coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| a - b)
            .collect();
        Coweight::from_rationals(&c)
    }

    pub fn scale(&self, q: Rational) -> Coweight {
        let c: Vec<_> = self.coords().iter().map(|a| a * q).collect();
        Coweight::from_rationals(&c)
    }

    /// Componentwise nonnegativity in the simple-coroot basis.
    pub fn is_nonnegative(&self) -> bool {
        self.num.iter().all(|&x| x >= 0)
    }

    /// Componentwise strict positivity in the simple-coroot basis.
    pub fn is_strictly_positive(&self) -> bool {
        self.num.iter().all(|&x| x > 0)
    }

    /// Parse a comma separated list such as `1/2,1/2` or `2,0`.
    pub fn parse(s: &str) -> Result<Coweight, Error> {
        let coords = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Coweight::from_rationals(&coords))
    }
}

impl FromStr for Coweight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Coweight::parse(s)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.coords().iter().map(fmt_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An integral weight in the fundamental-weight basis. Pairs with a
/// coweight `Σ c_i α_i∨` as `Σ n_i c_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn pair(&self, cw: &Coweight) -> Rational {
        debug_assert_eq!(self.0.len(), cw.rank());
        let s: i64 = self.0.iter().zip(cw.numerators()).map(|(a, b)| a * b).sum();
        Rational::new(s, cw.denominator())
    }
}
