//! Arbitrary-precision scalars and the small vector helpers shared by every
//! module, plus the text encodings used on the wire (integers as JSON
//! numbers, rationals as `"p/q"` strings).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + y * x)
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divides out the content of an integer vector, keeping its direction.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Positive integer multiple of a rational vector with coprime entries.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<Int> = v.iter().map(|x| (x * &l).to_integer()).collect();
    primitive(&scaled)
}

/// Common denominator form: returns `(numerators, denominator)` with
/// `v = numerators / denominator` and `denominator > 0`.
pub fn common_denominator(v: &[Rat]) -> (Vec<Int>, Int) {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    (v.iter().map(|x| (x * &l).to_integer()).collect(), l)
}

pub fn sign_of(x: &Int) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

pub fn fmt_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_rat_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(","))
}

/// Serde for [`Int`]: a JSON number when it fits in `i64`, a decimal string
/// otherwise. Both forms are accepted on input.
pub mod int_serde {
    use super::*;
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    struct IntVisitor;

    impl<'de> Visitor<'de> for IntVisitor {
        type Value = Int;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an integer or a decimal integer string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
            Ok(Int::from(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
            Ok(Int::from(v))
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
            if v.fract() == 0.0 && v.abs() < 9.0e15 {
                Ok(Int::from(v as i64))
            } else {
                Err(E::custom(format!("expected an integer, found {v}")))
            }
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
            v.trim()
                .parse()
                .map_err(|_| E::custom(format!("invalid integer {v:?}")))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// Serde for [`Rat`] as `"p/q"` text (integers may also be given as numbers).
pub mod rat_serde {
    use super::*;
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    struct RatVisitor;

    impl<'de> Visitor<'de> for RatVisitor {
        type Value = Rat;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as \"p/q\" text or an integer")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
            Ok(Rat::from_integer(Int::from(v)))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
            Ok(Rat::from_integer(Int::from(v)))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
            parse_rat(v).ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

/// Wrapper types so that vectors and nested vectors can reuse the scalar
/// encodings above through `#[serde(with = ...)]`.
pub mod wire {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    pub struct I(#[serde(with = "int_serde")] pub Int);

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    pub struct Q(#[serde(with = "rat_serde")] pub Rat);

    pub mod int_vec {
        use super::*;
        pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<I> = v.iter().cloned().map(I).collect();
            w.serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
            Ok(Vec::<I>::deserialize(d)?.into_iter().map(|x| x.0).collect())
        }
    }

    pub mod int_vecs {
        use super::*;
        pub fn serialize<S: Serializer>(v: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<Vec<I>> = v
                .iter()
                .map(|r| r.iter().cloned().map(I).collect())
                .collect();
            w.serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
            Ok(Vec::<Vec<I>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect())
        }
    }

    pub mod rat_vec {
        use super::*;
        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<Q> = v.iter().cloned().map(Q).collect();
            w.serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            Ok(Vec::<Q>::deserialize(d)?.into_iter().map(|x| x.0).collect())
        }
    }

    pub mod rat_vecs {
        use super::*;
        pub fn serialize<S: Serializer>(v: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<Vec<Q>> = v
                .iter()
                .map(|r| r.iter().cloned().map(Q).collect())
                .collect();
            w.serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
            Ok(Vec::<Vec<Q>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("4/2"), Some(rat(2, 1)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn primitive_keeps_direction() {
        assert_eq!(primitive(&ints(&[-4, 6])), ints(&[-2, 3]));
        assert_eq!(primitive(&ints(&[0, 0])), ints(&[0, 0]));
        assert_eq!(clear_denominators(&[rat(1, 2), rat(-1, 3)]), ints(&[3, -2]));
    }
}
