use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::num::{fmt_vec, wire, Int};

/// Group morphism `ε : M → {±1}`, stored as its class in `Hom(M, ℤ/2)`:
/// `ε(m) = (−1)^{Σ bits_i m_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignCharacter {
    bits: Vec<bool>,
}

fn is_odd(x: &Int) -> bool {
    x.is_odd()
}

/// Solves `A x = b` over GF(2); rows of `a` are equations.
pub(crate) fn solve_gf2(a: &[Vec<bool>], b: &[bool], cols: usize) -> Option<Vec<bool>> {
    let mut rows: Vec<(Vec<bool>, bool)> = a.iter().cloned().zip(b.iter().copied()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[c]) else {
            continue;
        };
        rows.swap(r, p);
        let (pivot_row, pivot_rhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0[c] {
                for (x, y) in row.0.iter_mut().zip(&pivot_row) {
                    *x ^= *y;
                }
                row.1 ^= pivot_rhs;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i].1;
    }
    Some(x)
}

impl SignCharacter {
    pub fn trivial(rank: usize) -> Self {
        SignCharacter {
            bits: vec![false; rank],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        SignCharacter { bits }
    }

    /// The unique morphism on `M` taking the prescribed values, if the
    /// values are consistent with the relations among the weights mod 2.
    pub fn from_values(rank: usize, values: &[(Vec<Int>, i32)]) -> Result<Self> {
        let mut a = Vec::with_capacity(values.len());
        let mut b = Vec::with_capacity(values.len());
        for (m, s) in values {
            if m.len() != rank {
                return Err(Error::RankMismatch(m.len(), rank));
            }
            if *s != 1 && *s != -1 {
                return Err(Error::InconsistentSigns(format!("sign {s} is not ±1")));
            }
            a.push(m.iter().map(is_odd).collect::<Vec<_>>());
            b.push(*s == -1);
        }
        let bits = solve_gf2(&a, &b, rank).ok_or_else(|| {
            Error::InconsistentSigns("prescribed signs violate a relation mod 2".into())
        })?;
        // Coordinates left free by the data are set to +1; they are only
        // determined when the weights span M mod 2.
        Ok(SignCharacter { bits })
    }

    pub fn rank(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_trivial(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn value(&self, m: &[Int]) -> i32 {
        let odd = self
            .bits
            .iter()
            .zip(m)
            .filter(|(b, x)| **b && is_odd(x))
            .count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        SignCharacter {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// `m ↦ ε(A m)` for a linear map `A`.
    pub fn compose(&self, a: &IntMatrix) -> Self {
        let bits = (0..a.cols())
            .map(|j| {
                let col = a.col(j);
                self.value(&col) == -1
            })
            .collect();
        SignCharacter { bits }
    }

    /// Values on the standard basis.
    pub fn basis_values(&self) -> Vec<(Vec<Int>, i32)> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![Int::from(0); self.rank()];
                e[i] = Int::from(1);
                let s = if self.bits[i] { -1 } else { 1 };
                (e, s)
            })
            .collect()
    }
}

impl fmt::Display for SignCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis_values()
            .iter()
            .map(|(m, s)| format!("{}↦{}", fmt_vec(m), if *s == 1 { "+1" } else { "-1" }))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct SignWire {
    #[serde(with = "wire::int_vec")]
    m: Vec<Int>,
    sign: i32,
}

impl Serialize for SignCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<SignWire> = self
            .basis_values()
            .into_iter()
            .map(|(m, sign)| SignWire { m, sign })
            .collect();
        v.serialize(s)
    }
}

impl SignCharacter {
    /// Reads `[{m, sign}]`; the rank is taken from the first entry.
    pub fn deserialize_with_rank<'de, D: Deserializer<'de>>(
        d: D,
        rank: Option<usize>,
    ) -> std::result::Result<Self, D::Error> {
        let v = Vec::<SignWire>::deserialize(d)?;
        let rank = rank.or_else(|| v.first().map(|w| w.m.len())).unwrap_or(0);
        let values: Vec<(Vec<Int>, i32)> = v.into_iter().map(|w| (w.m, w.sign)).collect();
        SignCharacter::from_values(rank, &values).map_err(serde::de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for SignCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::deserialize_with_rank(d, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ints;

    #[test]
    fn values_from_generators() {
        let e = SignCharacter::from_values(2, &[(ints(&[1, 0]), -1), (ints(&[1, 1]), 1)]).unwrap();
        assert_eq!(e.value(&ints(&[0, 1])), -1);
        assert_eq!(e.value(&ints(&[2, 0])), 1);
        assert_eq!(e.value(&ints(&[3, 2])), -1);
    }

    #[test]
    fn inconsistent_values_rejected() {
        // 2·m is always sent to +1.
        assert!(matches!(
            SignCharacter::from_values(1, &[(ints(&[2]), -1)]),
            Err(Error::InconsistentSigns(_))
        ));
        assert!(matches!(
            SignCharacter::from_values(
                2,
                &[(ints(&[1, 0]), -1), (ints(&[0, 1]), -1), (ints(&[1, 1]), -1)]
            ),
            Err(Error::InconsistentSigns(_))
        ));
    }

    #[test]
    fn serde_round_trip() {
        let e = SignCharacter::from_bits(vec![true, false]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"[{"m":[1,0],"sign":-1},{"m":[0,1],"sign":1}]"#);
        assert_eq!(serde_json::from_str::<SignCharacter>(&s).unwrap(), e);
    }
}
