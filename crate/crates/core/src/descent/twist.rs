use crate::divisor::{principal_divisor, PolyhedralDivisor, WeilQDivisor};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::num::{to_rat, Int};

/// `m ↦ 𝔇(m) − div(χ^{G m})`, kept at the level of evaluations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedDivisor {
    divisor: PolyhedralDivisor,
    g_exponent: IntMatrix,
}

impl TwistedDivisor {
    pub fn divisor(&self) -> &PolyhedralDivisor {
        &self.divisor
    }

    pub fn g_exponent(&self) -> &IntMatrix {
        &self.g_exponent
    }

    pub fn evaluate(&self, m: &[Int]) -> Result<WeilQDivisor> {
        let d = self.divisor.evaluate(m)?;
        let p = principal_divisor(self.divisor.base(), &self.g_exponent.apply(m))?;
        Ok(d.sub(&p))
    }
}

pub fn twist_divisor(d: &PolyhedralDivisor, g_exponent: &IntMatrix) -> Result<TwistedDivisor> {
    let (k, n) = (d.base().rank(), d.tail().ambient_dim());
    if g_exponent.rows() != k || g_exponent.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "twist exponent is {}x{}, expected {k}x{n}",
            g_exponent.rows(),
            g_exponent.cols()
        )));
    }
    Ok(TwistedDivisor {
        divisor: d.clone(),
        g_exponent: g_exponent.clone(),
    })
}

/// Translates every coefficient by `s₀(v)` for `s₀ : N_Y → N`, giving
/// `𝔇′(m) = 𝔇(m) + div(χ^{s₀ᵀ m})`, i.e. the twist by `G = −s₀ᵀ`.
pub fn shift_coefficients(d: &PolyhedralDivisor, s0: &IntMatrix) -> Result<PolyhedralDivisor> {
    let base = d.base();
    if s0.rows() != d.tail().ambient_dim() || s0.cols() != base.rank() {
        return Err(Error::DimensionMismatch(format!(
            "shift is {}x{}, expected {}x{}",
            s0.rows(),
            s0.cols(),
            d.tail().ambient_dim(),
            base.rank()
        )));
    }
    let terms = base
        .rays()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), d.coefficient(i).translate(&to_rat(&s0.apply(v)))))
        .collect();
    let mut out = PolyhedralDivisor::new(base.clone(), d.tail().clone(), terms)?;
    for (label, c) in d.extra_terms() {
        out = out.with_extra(label, c.clone())?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::ToricBase;
    use crate::geom::{Cone, TailedPolyhedron};
    use crate::num::{ints, rat, rats};

    /// `[1,∞) ⊗ D(−1)` on ℙ¹.
    fn half_line() -> PolyhedralDivisor {
        let tail = Cone::orthant(1);
        let c = TailedPolyhedron::new(&[rats(&[1])], &tail).unwrap();
        PolyhedralDivisor::new(ToricBase::projective_line(), tail, vec![(ints(&[-1]), c)]).unwrap()
    }

    #[test]
    fn twist_by_identity_character() {
        let d = half_line();
        let t = twist_divisor(&d, &IntMatrix::from_rows(&[[1]])).unwrap();
        // 𝔇(1) = D(−1); div(χ¹) = −D(−1) + D(1).
        let e = t.evaluate(&ints(&[1])).unwrap();
        assert_eq!(e.coefficients(), &[rat(2, 1), rat(-1, 1)]);
        let zero = twist_divisor(&d, &IntMatrix::zeros(1, 1)).unwrap();
        assert_eq!(zero.evaluate(&ints(&[3])).unwrap(), d.evaluate(&ints(&[3])).unwrap());
    }

    #[test]
    fn shift_matches_twist() {
        let d = half_line();
        let s0 = IntMatrix::from_rows(&[[2]]);
        let shifted = shift_coefficients(&d, &s0).unwrap();
        assert_eq!(shifted.coefficient(0).vertices(), &[rats(&[-1])]);
        assert_eq!(shifted.coefficient(1).vertices(), &[rats(&[2])]);
        let t = twist_divisor(&d, &(-&s0.transpose())).unwrap();
        for m in 0..6 {
            let m = ints(&[m]);
            assert_eq!(shifted.evaluate(&m).unwrap(), t.evaluate(&m).unwrap());
        }
    }
}
