use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::sign::{solve_gf2, SignCharacter};
use crate::error::{Error, Result};
use crate::lattice::{solve_int_canonical, IntMatrix, InvolutionType, LatticeInvolution};
use crate::num::{fmt_vec, wire, Int, Rat};

/// Character-valued cocycle `h(m) = ε(m)·χ^{E m}` for the pair of
/// involutions `τ̃` on `M` and `τ̃_Y` on `M_Y`:
/// `E + τ̃_Y E τ̃ = 0` and `ε(m)·ε(τ̃ m) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CocycleWire", into = "CocycleWire")]
pub struct CharacterCocycle {
    exponent: IntMatrix,
    sign: SignCharacter,
    tau: LatticeInvolution,
    tau_y: LatticeInvolution,
}

/// `−G + τ̃_Y G τ̃` for `G : M → M_Y`.
pub fn coboundary_exponent(
    g: &IntMatrix,
    tau: &LatticeInvolution,
    tau_y: &LatticeInvolution,
) -> IntMatrix {
    &(&(tau_y.matrix() * g) * tau.matrix()) - g
}

impl CharacterCocycle {
    pub fn new(
        exponent: IntMatrix,
        sign: SignCharacter,
        tau: LatticeInvolution,
        tau_y: LatticeInvolution,
    ) -> Result<Self> {
        let (k, d) = (tau_y.rank(), tau.rank());
        if exponent.rows() != k || exponent.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "exponent is {}x{}, expected {k}x{d}",
                exponent.rows(),
                exponent.cols()
            )));
        }
        if sign.rank() != d {
            return Err(Error::RankMismatch(sign.rank(), d));
        }
        let twisted = &(tau_y.matrix() * &exponent) * tau.matrix();
        let sum = &exponent + &twisted;
        if !sum.is_zero() {
            return Err(Error::NotACocycle(format!("E + τ̃_Y E τ̃ = {sum}")));
        }
        let c = CharacterCocycle {
            exponent,
            sign,
            tau,
            tau_y,
        };
        if let Some(m) = c.sign_defect() {
            return Err(Error::NotACocycle(format!(
                "ε(m)·ε(τ̃ m) = −1 at m = {}",
                fmt_vec(&m)
            )));
        }
        Ok(c)
    }

    /// The trivial cocycle `h = 1`.
    pub fn trivial(tau: LatticeInvolution, tau_y: LatticeInvolution) -> Self {
        let (k, d) = (tau_y.rank(), tau.rank());
        CharacterCocycle {
            exponent: IntMatrix::zeros(k, d),
            sign: SignCharacter::trivial(d),
            tau,
            tau_y,
        }
    }

    /// First basis vector where the sign part fails the cocycle identity.
    fn sign_defect(&self) -> Option<Vec<Int>> {
        let d = self.tau.rank();
        (0..d).map(|i| {
            let mut e = vec![Int::zero(); d];
            e[i] = Int::from(1);
            e
        })
        .find(|e| self.sign.value(e) * self.sign.value(&self.tau.apply(e)) != 1)
    }

    pub fn exponent(&self) -> &IntMatrix {
        &self.exponent
    }

    pub fn sign(&self) -> &SignCharacter {
        &self.sign
    }

    pub fn tau(&self) -> &LatticeInvolution {
        &self.tau
    }

    pub fn tau_y(&self) -> &LatticeInvolution {
        &self.tau_y
    }

    /// `(ε(m), E m)`.
    pub fn eval(&self, m: &[Int]) -> (i32, Vec<Int>) {
        (self.sign.value(m), self.exponent.apply(m))
    }

    /// Multiplies by the coboundary of `g(m) = (−i)^{⟨k,m⟩} χ^{G m}`; `k`
    /// must be fixed by `τ̃ᵀ`.
    pub fn twist_by(&self, g: &IntMatrix, quarter_turns: &[Int]) -> Result<Self> {
        let tt = self.tau.dual();
        if tt.apply(quarter_turns) != quarter_turns {
            return Err(Error::Invalid("quarter-turn vector is not τ̃-invariant".into()));
        }
        let exponent = &self.exponent + &coboundary_exponent(g, &self.tau, &self.tau_y);
        let bits = self
            .sign
            .bits()
            .iter()
            .zip(quarter_turns)
            .map(|(b, k)| b ^ num_integer::Integer::is_odd(k))
            .collect();
        Self::new(
            exponent,
            SignCharacter::from_bits(bits),
            self.tau.clone(),
            self.tau_y.clone(),
        )
    }
}

/// `g(m) = (−i)^{⟨k, m⟩} χ^{G m}` with `h(m) = g(m)⁻¹ σ_Y♯(g(τ̃ m))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub g_exponent: IntMatrix,
    #[serde(with = "wire::int_vec")]
    pub quarter_turns: Vec<Int>,
}

impl Splitting {
    /// Checks the splitting identity on the standard basis of `M`, which
    /// suffices by linearity.
    pub fn verify(&self, c: &CharacterCocycle) -> bool {
        if coboundary_exponent(&self.g_exponent, &c.tau, &c.tau_y) != c.exponent {
            return false;
        }
        let k = &self.quarter_turns;
        if c.tau.dual().apply(k) != *k {
            return false;
        }
        // g(m)⁻¹·conj(g(τ̃m)) = i^{⟨k,m⟩}·i^{⟨k,τ̃m⟩} = (−1)^{⟨k,m⟩}.
        (0..c.tau.rank()).all(|i| {
            let odd = num_integer::Integer::is_odd(&k[i]);
            c.sign.bits()[i] == odd
        })
    }
}

/// Why a cocycle does not split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub involution_type: InvolutionType,
    /// Set when `−G + τ̃_Y G τ̃ = E` has no integer solution; carries the
    /// rational solution `G = −E/2`.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rat_rows", default)]
    pub exponent: Option<Vec<Vec<Rat>>>,
    /// Anti-invariant weights (`τ̃ m = −m`) of a basis with `ε(m) = −1`.
    #[serde(with = "wire::int_vecs")]
    pub sign_witnesses: Vec<Vec<Int>>,
}

mod opt_rat_rows {
    use crate::num::{wire::Q, Rat};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Vec<Rat>>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|rows| {
                rows.iter()
                    .map(|r| r.iter().cloned().map(Q).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<Rat>>>, D::Error> {
        let v = Option::<Vec<Vec<Q>>>::deserialize(d)?;
        Ok(v.map(|rows| rows.into_iter().map(|r| r.into_iter().map(|q| q.0).collect()).collect()))
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.involution_type;
        write!(f, "involution type ({},{},{})", t.n0, t.n1, t.n2)?;
        if let Some(g) = &self.exponent {
            let rows: Vec<String> = g.iter().map(|r| crate::num::fmt_rat_vec(r)).collect();
            write!(
                f,
                "; exponent: no integer solution of -G + τ̃_Y G τ̃ = E (rational solution G = [{}])",
                rows.join(",")
            )?;
        }
        if !self.sign_witnesses.is_empty() {
            let ws: Vec<String> = self.sign_witnesses.iter().map(|w| fmt_vec(w)).collect();
            write!(f, "; sign: obstruction -1 at anti-invariant weights {}", ws.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SplitOutcome {
    Split(Splitting),
    Obstructed(Obstruction),
}

impl SplitOutcome {
    pub fn splitting(&self) -> Option<&Splitting> {
        match self {
            SplitOutcome::Split(s) => Some(s),
            SplitOutcome::Obstructed(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            SplitOutcome::Split(_) => None,
            SplitOutcome::Obstructed(o) => Some(o),
        }
    }
}

/// Integer system for `−G + τ̃_Y G τ̃ = E`, with `G` vectorized row-major.
fn exponent_system(tau: &LatticeInvolution, tau_y: &LatticeInvolution) -> IntMatrix {
    let (k, d) = (tau_y.rank(), tau.rank());
    let (ty, t) = (tau_y.matrix(), tau.matrix());
    let mut a = IntMatrix::zeros(k * d, k * d);
    for i in 0..k {
        for j in 0..d {
            for p in 0..k {
                for q in 0..d {
                    let mut v = &ty[(i, p)] * &t[(q, j)];
                    if i == p && j == q {
                        v -= 1;
                    }
                    a[(i * d + j, p * d + q)] = v;
                }
            }
        }
    }
    a
}

/// Decides whether `h` is a coboundary `g(m)⁻¹ σ_Y♯(g(τ̃ m))`, solving the
/// exponent part as one integer system and the constant part over
/// `Hom(M, ℤ/2)`.
pub fn split_cocycle(c: &CharacterCocycle) -> SplitOutcome {
    let (k, d) = (c.tau_y.rank(), c.tau.rank());
    let a = exponent_system(&c.tau, &c.tau_y);
    let rhs: Vec<Int> = c.exponent.entries().to_vec();
    let g = solve_int_canonical(&a, &rhs)
        .map(|x| IntMatrix::new(k, d, x).expect("k·d entries"));

    // ε must agree mod 2 with some τ̃ᵀ-fixed k.
    let fixed = c.tau.dual().fixed_lattice();
    let rows: Vec<Vec<bool>> = (0..d)
        .map(|i| fixed.iter().map(|b| num_integer::Integer::is_odd(&b[i])).collect())
        .collect();
    let coeffs = solve_gf2(&rows, c.sign.bits(), fixed.len());

    match (g, coeffs) {
        (Some(g), Some(x)) => {
            let mut turns = vec![Int::zero(); d];
            for (b, take) in fixed.iter().zip(&x) {
                if *take {
                    for (t, bi) in turns.iter_mut().zip(b) {
                        *t += bi;
                    }
                }
            }
            SplitOutcome::Split(Splitting {
                g_exponent: g,
                quarter_turns: turns,
            })
        }
        (g, coeffs) => {
            let exponent = g.is_none().then(|| {
                (0..k)
                    .map(|i| {
                        c.exponent
                            .row(i)
                            .iter()
                            .map(|e| -Rat::new(e.clone(), Int::from(2)))
                            .collect()
                    })
                    .collect()
            });
            let sign_witnesses = if coeffs.is_none() {
                c.tau
                    .anti_fixed_lattice()
                    .into_iter()
                    .filter(|m| c.sign.value(m) == -1)
                    .collect()
            } else {
                Vec::new()
            };
            SplitOutcome::Obstructed(Obstruction {
                involution_type: c.tau.classify(),
                exponent,
                sign_witnesses,
            })
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CocycleWire {
    exponent: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<SignCharacter>,
    tau_tilde: LatticeInvolution,
    tau_tilde_y: LatticeInvolution,
}

impl TryFrom<CocycleWire> for CharacterCocycle {
    type Error = Error;

    fn try_from(w: CocycleWire) -> Result<Self> {
        let d = w.tau_tilde.rank();
        let sign = match w.signs {
            Some(s) if s.rank() == d => s,
            Some(s) if s.rank() == 0 => SignCharacter::trivial(d),
            Some(s) => return Err(Error::RankMismatch(s.rank(), d)),
            None => SignCharacter::trivial(d),
        };
        CharacterCocycle::new(w.exponent, sign, w.tau_tilde, w.tau_tilde_y)
    }
}

impl From<CharacterCocycle> for CocycleWire {
    fn from(c: CharacterCocycle) -> Self {
        CocycleWire {
            exponent: c.exponent,
            signs: Some(c.sign),
            tau_tilde: c.tau,
            tau_tilde_y: c.tau_y,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{ints, rat};

    fn inv(rows: &[&[i64]]) -> LatticeInvolution {
        let n = rows.len();
        let v: Vec<Vec<Int>> = rows.iter().map(|r| ints(r)).collect();
        LatticeInvolution::new(IntMatrix::from_int_rows(v, n).unwrap()).unwrap()
    }

    #[test]
    fn real_line_twisted_by_swap_is_obstructed() {
        // exponent m ↦ m, τ̃ = id, τ̃_Y = −1: m = −2g·m has no solution.
        let c = CharacterCocycle::new(
            IntMatrix::from_rows(&[[1]]),
            SignCharacter::trivial(1),
            LatticeInvolution::identity(1),
            LatticeInvolution::negation(1),
        )
        .unwrap();
        let o = split_cocycle(&c);
        let o = o.obstruction().expect("no splitting");
        assert_eq!(o.exponent, Some(vec![vec![rat(-1, 2)]]));
        assert!(o.sign_witnesses.is_empty());
    }

    #[test]
    fn circle_signs() {
        let tau = LatticeInvolution::negation(1);
        let ty = LatticeInvolution::identity(0);
        let plus = CharacterCocycle::trivial(tau.clone(), ty.clone());
        let s = split_cocycle(&plus);
        assert_eq!(
            s.splitting().unwrap(),
            &Splitting {
                g_exponent: IntMatrix::zeros(0, 1),
                quarter_turns: ints(&[0]),
            }
        );
        let minus = CharacterCocycle::new(
            IntMatrix::zeros(0, 1),
            SignCharacter::from_bits(vec![true]),
            tau,
            ty,
        )
        .unwrap();
        let o = split_cocycle(&minus);
        let o = o.obstruction().unwrap();
        assert_eq!(o.sign_witnesses, vec![ints(&[1])]);
        assert_eq!(o.exponent, None);
    }

    #[test]
    fn regular_factor_closed_form() {
        // E(m, m′) = (m′ − m)·u₀ with τ̃_Y u₀ = u₀.
        let tau = LatticeInvolution::swap();
        let ty = LatticeInvolution::swap();
        let e = IntMatrix::from_rows(&[[-1, 1], [-1, 1]]);
        let c = CharacterCocycle::new(e.clone(), SignCharacter::trivial(2), tau.clone(), ty.clone())
            .unwrap();
        let s = split_cocycle(&c);
        let s = s.splitting().unwrap();
        assert!(s.verify(&c));
        // g(m, m′) = m·u₀, i.e. the recipe g(m) = E(−m, 0).
        let recipe = IntMatrix::from_rows(&[[1, 0], [1, 0]]);
        assert_eq!(coboundary_exponent(&recipe, &tau, &ty), e);
    }

    #[test]
    fn sign_on_split_factor_is_a_coboundary() {
        let c = CharacterCocycle::new(
            IntMatrix::zeros(0, 1),
            SignCharacter::from_bits(vec![true]),
            LatticeInvolution::identity(1),
            LatticeInvolution::identity(0),
        )
        .unwrap();
        let s = split_cocycle(&c);
        let s = s.splitting().unwrap();
        assert_eq!(s.quarter_turns, ints(&[1]));
        assert!(s.verify(&c));
    }

    #[test]
    fn non_cocycles_rejected() {
        assert!(matches!(
            CharacterCocycle::new(
                IntMatrix::from_rows(&[[1]]),
                SignCharacter::trivial(1),
                LatticeInvolution::identity(1),
                LatticeInvolution::identity(1),
            ),
            Err(Error::NotACocycle(_))
        ));
        // Swap with ε = (−1, +1): ε(e₁)ε(e₂) = −1.
        assert!(matches!(
            CharacterCocycle::new(
                IntMatrix::zeros(0, 2),
                SignCharacter::from_bits(vec![true, false]),
                inv(&[&[0, 1], &[1, 0]]),
                LatticeInvolution::identity(0),
            ),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn serde_round_trip() {
        let c = CharacterCocycle::new(
            IntMatrix::from_rows(&[[1]]),
            SignCharacter::trivial(1),
            LatticeInvolution::identity(1),
            LatticeInvolution::negation(1),
        )
        .unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CharacterCocycle>(&s).unwrap(), c);
        let o = split_cocycle(&c);
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(serde_json::from_str::<SplitOutcome>(&s).unwrap(), o);
    }
}
