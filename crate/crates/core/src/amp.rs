//! Walls in the ample cone: decompositions v = ℓv₁ + v₂ into isotropic
//! positive-rank pieces whose chamber wall ((r₂ξ₁ − r₁ξ₂)·H) = 0 meets Amp(X).

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_div, int, Int};
use crate::error::{Error, Result};
use crate::lattice::{box_points, DivisorClass, RationalClass, SurfaceDescriptor};
use crate::mukai::MukaiVector;
use crate::serde_util;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpWallWitness {
    pub v1: MukaiVector,
    pub v2: MukaiVector,
    #[serde(with = "serde_util::int")]
    pub ell: Int,
    /// δ = r₂ξ₁ − r₁ξ₂.
    pub delta: DivisorClass,
    #[serde(with = "serde_util::int")]
    pub delta_square: Int,
    /// An ample class orthogonal to δ.
    pub orthogonal_ample: RationalClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witnesses")]
pub enum AmpIrreducibility {
    /// ⟨v²⟩ ≥ 2r.
    Irreducible,
    IrreducibleWithinRadius,
    PossiblySeparated(Vec<AmpWallWitness>),
}

impl SurfaceDescriptor {
    /// All decompositions with |ξ₁| ≤ radius, sorted by v₁. For ℓ = 1 the
    /// unordered pair is reported once, with v₁ ≥ v₂.
    pub fn amp_decompositions(&self, v: &MukaiVector, radius: u64) -> Result<Vec<AmpWallWitness>> {
        self.check_vector(v)?;
        if !v.r.is_positive() {
            return Err(Error::pre("rank_positive", format!("r = {} is not positive", v.r)));
        }
        let vv = self.square(v);
        if !vv.is_positive() || !v.is_primitive() {
            return Ok(Vec::new());
        }
        let ell = self.ell_of(v)?;
        let side = radius.min(i64::MAX as u64) as i64;
        // r₂ = r − ℓr₁ > 0
        let r1_max = ((&v.r - int(1)) / &ell).to_i64().unwrap_or(i64::MAX);
        let mut out = Vec::new();
        for r1 in 1..=r1_max {
            let r1 = int(r1);
            for xi1 in box_points(self.rank(), side) {
                let s = self.dot(&xi1, &xi1);
                let Some(a1) = exact_div(&s, &(&r1 * int(2))) else {
                    continue;
                };
                let v1 = MukaiVector::new(r1.clone(), xi1, a1);
                if self.pair(v, &v1) != int(1) {
                    continue;
                }
                let v2 = v.sub(&v1.scale(&ell));
                if ell == int(1) && v1 < v2 {
                    continue;
                }
                let delta = v1.xi.scale(&v2.r).sub(&v2.xi.scale(&v1.r));
                let dd = self.dot(&delta, &delta);
                if !dd.is_negative() {
                    continue;
                }
                debug_assert!(self.square(&v2).is_zero() && self.pair(&v1, &v2) == int(1));
                let orthogonal_ample = self.orth_ample(&delta)?;
                out.push(AmpWallWitness {
                    v1,
                    v2,
                    ell: ell.clone(),
                    delta,
                    delta_square: dd,
                    orthogonal_ample,
                });
            }
        }
        out.sort_by(|x, y| x.v1.cmp(&y.v1));
        Ok(out)
    }

    pub fn amp_irreducibility_check(&self, v: &MukaiVector, radius: u64) -> Result<AmpIrreducibility> {
        self.check_vector(v)?;
        if !v.r.is_positive() {
            return Err(Error::pre("rank_positive", format!("r = {} is not positive", v.r)));
        }
        if self.square(v) >= &v.r * int(2) {
            return Ok(AmpIrreducibility::Irreducible);
        }
        let ws = self.amp_decompositions(v, radius)?;
        Ok(if ws.is_empty() {
            AmpIrreducibility::IrreducibleWithinRadius
        } else {
            AmpIrreducibility::PossiblySeparated(ws)
        })
    }
}

impl AmpWallWitness {
    pub fn is_degenerate(&self) -> bool {
        self.delta.is_zero() || self.delta_square.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces;

    fn mv(r: i64, xi: &[i64], a: i64) -> MukaiVector {
        MukaiVector::from_i64s(r, xi, a)
    }

    #[test]
    fn product_decomposition() {
        let l2 = surfaces::product_elliptic();
        let ws = l2.amp_decompositions(&mv(2, &[1, 1], 0), 5).unwrap();
        assert_eq!(ws.len(), 1);
        let w = &ws[0];
        assert_eq!((&w.v1, &w.v2), (&mv(1, &[1, 0], 0), &mv(1, &[0, 1], 0)));
        assert_eq!(w.delta, DivisorClass::from_i64s(&[1, -1]));
        assert_eq!(w.delta_square, int(-2));
        assert!(l2.is_ample_q(&w.orthogonal_ample));
        assert!(l2.intersect_q(&w.delta.to_rational(), &w.orthogonal_ample).unwrap().is_zero());
        assert!(!w.is_degenerate());
    }

    #[test]
    fn irreducibility() {
        let l2 = surfaces::product_elliptic();
        assert!(l2.amp_decompositions(&mv(1, &[1, 2], -1), 5).unwrap().is_empty());
        assert_eq!(
            l2.amp_irreducibility_check(&mv(1, &[1, 2], -1), 5).unwrap(),
            AmpIrreducibility::Irreducible
        );
        match l2.amp_irreducibility_check(&mv(2, &[1, 1], 0), 5).unwrap() {
            AmpIrreducibility::PossiblySeparated(ws) => {
                assert_eq!(ws[0].v1, mv(1, &[1, 0], 0));
                assert_eq!(ws[0].v2, mv(1, &[0, 1], 0));
            }
            other => panic!("unexpected {other:?}"),
        }
        let l1 = surfaces::rank_one();
        assert!(l1.amp_decompositions(&mv(3, &[1], 0), 6).unwrap().is_empty());
        assert_eq!(
            l1.amp_irreducibility_check(&mv(3, &[1], 0), 6).unwrap(),
            AmpIrreducibility::IrreducibleWithinRadius
        );
        assert!(l1.amp_irreducibility_check(&mv(0, &[1], 0), 6).is_err());
    }
}
