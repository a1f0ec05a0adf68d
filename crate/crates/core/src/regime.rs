//! Roles of the two pieces at a wall, the crossing class of each wall, the
//! regime thresholds t₁ ≥ t₂ along the line and their dual counterparts, and
//! the Fourier–Mukai sign tables.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat_int, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::SurfaceDescriptor;
use crate::mukai::MukaiVector;
use crate::serde_util;
use crate::walls::{Decomposition, TsqWindow, WallEnumeration, WallOnLine};

/// The pieces of a decomposition ordered so that v1 is the semi-homogeneous
/// subobject side: r₁ > 0, r·d₁ − r₁·d < 0 and a·d₁ − a₁·d < 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RolePair {
    pub v1: MukaiVector,
    #[serde(with = "serde_util::int")]
    pub ell1: Int,
    pub v2: MukaiVector,
    #[serde(with = "serde_util::int")]
    pub ell2: Int,
}

/// What crossing a wall does to a general member, by the sign of r₂.
/// Ordered from best to worst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CrossingClass {
    LocallyFree,
    Torsion,
    Complex,
}

impl fmt::Display for CrossingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingClass::LocallyFree => "LocallyFree",
            CrossingClass::Torsion => "Torsion",
            CrossingClass::Complex => "Complex",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FmSide {
    APos,
    ANeg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FmCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "2b")]
    TwoB,
    #[serde(rename = "3a")]
    ThreeA,
    #[serde(rename = "3b")]
    ThreeB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FmCaseTag {
    pub side: FmSide,
    pub case: FmCase,
    pub exceptional: bool,
}

impl FmCaseTag {
    fn new(side: FmSide, case: FmCase) -> Self {
        let exceptional = matches!(
            (side, case),
            (FmSide::APos, FmCase::TwoB) | (FmSide::ANeg, FmCase::TwoA)
        );
        FmCaseTag {
            side,
            case,
            exceptional,
        }
    }
}

impl fmt::Display for FmCaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let case = match self.case {
            FmCase::One => "1",
            FmCase::TwoA => "2a",
            FmCase::TwoB => "2b",
            FmCase::ThreeA => "3a",
            FmCase::ThreeB => "3b",
        };
        write!(f, "{:?}({case})", self.side)
    }
}

/// Analysis of one witness of a wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessAnalysis {
    pub witness: MukaiVector,
    pub decomposition: Decomposition,
    pub roles: RolePair,
    pub crossing: CrossingClass,
    /// Absent for rank-0 vectors, where the tables do not apply.
    pub fm_case: Option<FmCaseTag>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedWall {
    pub wall: WallOnLine,
    pub analyses: Vec<WitnessAnalysis>,
    /// The worst class among the witnesses.
    pub crossing: CrossingClass,
    /// State of the regime machine just below this wall.
    pub regime_below: CrossingClass,
}

impl AnnotatedWall {
    pub fn tsq(&self) -> &Rat {
        &self.wall.tsq
    }

    pub fn has_exceptional_case(&self) -> bool {
        self.analyses
            .iter()
            .any(|a| a.fm_case.is_some_and(|t| t.exceptional))
    }
}

/// How the vector of a dual report was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualTransform {
    /// v′ = (a, ξ, r) for a > 0.
    Dual,
    /// v′ = (−a, ξ, −r) for a < 0.
    Shift,
    /// v′ = (0, ξ, r) for a = 0.
    RankZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub vector: MukaiVector,
    pub transform: Option<DualTransform>,
    /// Sorted by t² descending.
    pub walls: Vec<AnnotatedWall>,
    /// `None` where t₁ is not defined (the dual side of a = 0).
    #[serde(with = "serde_util::opt_rat")]
    pub t1sq: Option<Rat>,
    #[serde(with = "serde_util::rat")]
    pub t2sq: Rat,
    pub certified: bool,
    pub radius: u64,
    #[serde(with = "serde_util::int")]
    pub required_radius: Int,
}

impl RegimeReport {
    /// The regime at t² off the walls.
    pub fn regime_at(&self, tsq: &Rat) -> CrossingClass {
        self.walls
            .iter()
            .take_while(|w| w.tsq() > tsq)
            .last()
            .map_or(CrossingClass::LocallyFree, |w| w.regime_below)
    }

    pub fn positions(&self) -> Vec<Rat> {
        self.walls.iter().map(|w| w.tsq().clone()).collect()
    }

    /// t₁² with the undefined case read as 0.
    pub fn t1sq_or_zero(&self) -> Rat {
        self.t1sq.clone().unwrap_or_else(Rat::zero)
    }
}

impl SurfaceDescriptor {
    /// r·d_p − r_p·d with the (H²) factor cleared.
    fn rank_cross(&self, v: &MukaiVector, p: &MukaiVector) -> Int {
        &v.r * self.dot_h(&p.xi) - &p.r * self.dot_h(&v.xi)
    }

    fn a_cross(&self, v: &MukaiVector, p: &MukaiVector) -> Int {
        &v.a * self.dot_h(&p.xi) - &p.a * self.dot_h(&v.xi)
    }

    pub fn assign_roles(&self, v: &MukaiVector, dec: &Decomposition) -> Result<RolePair> {
        self.check_vector(v)?;
        let qualifies =
            |p: &MukaiVector| p.r.is_positive() && self.rank_cross(v, p).is_negative() && self.a_cross(v, p).is_negative();
        let one = int(1);
        let (u, w) = (&dec.u, &dec.w);
        let pair = match (qualifies(u), qualifies(w)) {
            (true, false) => RolePair {
                v1: u.clone(),
                ell1: dec.ell.clone(),
                v2: w.clone(),
                ell2: one,
            },
            (false, true) => RolePair {
                v1: w.clone(),
                ell1: one,
                v2: u.clone(),
                ell2: dec.ell.clone(),
            },
            (true, true) => {
                return Err(Error::ContractViolation(format!(
                    "both pieces {u} and {w} satisfy the role conditions for {v}"
                )))
            }
            (false, false) => return Err(Error::NoValidRole),
        };
        debug_assert!((self.rank_cross(v, &pair.v1) * &pair.ell1
            + self.rank_cross(v, &pair.v2) * &pair.ell2)
            .is_zero());
        Ok(pair)
    }

    /// The sign tables for the second piece, keyed on sign(a) of v.
    pub fn classify_crossing_fm(&self, v: &MukaiVector, roles: &RolePair) -> Result<FmCaseTag> {
        self.check_vector(v)?;
        if !v.r.is_positive() {
            return Err(Error::pre("rank_positive", format!("r = {} is not positive", v.r)));
        }
        let (a1, r2, a2) = (&roles.v1.a, &roles.v2.r, &roles.v2.a);
        let violation = |what: &str| {
            Error::ContractViolation(format!(
                "{what} at the wall of {v} with v1 = {}, v2 = {}",
                roles.v1, roles.v2
            ))
        };
        if v.a.is_positive() {
            if !a1.is_positive() {
                return Err(violation("a > 0 but a1 <= 0"));
            }
            let case = if r2.is_negative() {
                if !a2.is_positive() {
                    return Err(violation("a > 0, r2 < 0 but a2 <= 0"));
                }
                FmCase::One
            } else if r2.is_zero() {
                if a2.is_positive() {
                    FmCase::TwoA
                } else if a2.is_zero() {
                    FmCase::TwoB
                } else {
                    return Err(violation("a > 0, r2 = 0 but a2 < 0"));
                }
            } else if a2.is_positive() {
                FmCase::ThreeA
            } else {
                FmCase::ThreeB
            };
            Ok(FmCaseTag::new(FmSide::APos, case))
        } else {
            if !a2.is_negative() {
                return Err(violation("a <= 0 but a2 >= 0"));
            }
            let case = if r2.is_negative() {
                if !a1.is_negative() {
                    return Err(violation("a <= 0, r2 < 0 but a1 >= 0"));
                }
                FmCase::One
            } else if r2.is_zero() {
                if a1.is_zero() {
                    FmCase::TwoA
                } else if a1.is_negative() {
                    FmCase::TwoB
                } else {
                    return Err(violation("a <= 0, r2 = 0 but a1 > 0"));
                }
            } else if a1.is_positive() {
                FmCase::ThreeB
            } else {
                FmCase::ThreeA
            };
            Ok(FmCaseTag::new(FmSide::ANeg, case))
        }
    }

    /// Regimes of v over the whole line.
    pub fn compute_regimes(&self, v: &MukaiVector, radius: u64) -> Result<RegimeReport> {
        self.check_vector(v)?;
        if !v.r.is_positive() {
            return Err(Error::pre("rank_positive", format!("r = {} is not positive", v.r)));
        }
        let walls = self.enumerate_tss_walls_line(v, &TsqWindow::unbounded(), radius)?;
        self.regimes_from(walls, None)
    }

    /// Regimes of the dual vector v′ on the dual line.
    pub fn dual_regimes(&self, v: &MukaiVector, radius: u64) -> Result<RegimeReport> {
        self.check_vector(v)?;
        if !v.r.is_positive() {
            return Err(Error::pre("rank_positive", format!("r = {} is not positive", v.r)));
        }
        let (dual, transform) = if v.a.is_positive() {
            (v.fm_dual(), DualTransform::Dual)
        } else if v.a.is_negative() {
            (v.fm_shift(), DualTransform::Shift)
        } else {
            (v.fm_dual(), DualTransform::RankZero)
        };
        let walls = self.enumerate_walls(&dual, &TsqWindow::unbounded(), radius)?;
        self.regimes_from(walls, Some(transform))
    }

    pub(crate) fn regimes_from(
        &self,
        en: WallEnumeration,
        transform: Option<DualTransform>,
    ) -> Result<RegimeReport> {
        let v = &en.v;
        let mut state = CrossingClass::LocallyFree;
        let mut t1sq: Option<Rat> = None;
        let mut t2sq: Option<Rat> = None;
        let mut walls = Vec::with_capacity(en.walls.len());
        for wall in en.walls {
            let mut analyses = Vec::with_capacity(wall.witnesses.len());
            for u in &wall.witnesses {
                let decomposition = self.tss_decompose(v, u)?;
                let roles = self.assign_roles(v, &decomposition)?;
                let crossing = classify_crossing(&roles);
                let fm_case = if v.r.is_positive() {
                    Some(self.classify_crossing_fm(v, &roles)?)
                } else {
                    None
                };
                analyses.push(WitnessAnalysis {
                    witness: u.clone(),
                    decomposition,
                    roles,
                    crossing,
                    fm_case,
                });
            }
            let crossing = analyses
                .iter()
                .map(|a| a.crossing)
                .max()
                .unwrap_or(CrossingClass::LocallyFree);
            if crossing >= CrossingClass::Torsion && t1sq.is_none() {
                t1sq = Some(wall.tsq.clone());
            }
            if crossing == CrossingClass::Complex && t2sq.is_none() {
                t2sq = Some(wall.tsq.clone());
            }
            state = state.max(crossing);
            walls.push(AnnotatedWall {
                wall,
                analyses,
                crossing,
                regime_below: state,
            });
        }
        let t1sq = match transform {
            Some(DualTransform::RankZero) => None,
            _ => Some(t1sq.unwrap_or_else(Rat::zero)),
        };
        Ok(RegimeReport {
            vector: v.clone(),
            transform,
            walls,
            t1sq,
            t2sq: t2sq.unwrap_or_else(Rat::zero),
            certified: en.certified,
            radius: en.radius,
            required_radius: en.required_radius,
        })
    }

    /// t² ↦ 1/(n²t²), the correspondence of walls on the line and its dual.
    pub fn dual_wall_map(&self, tsq: &Rat) -> Result<Rat> {
        if !tsq.is_positive() {
            return Err(Error::pre("tsq_positive", format!("t^2 = {tsq} is not positive")));
        }
        let n = rat_int(&self.n());
        Ok((&n * &n * tsq).recip())
    }

    /// Both sides of d₁d₂⟨u₁,u₂⟩ = −((d₂D₁ − d₁D₂)²)/2 + (d₂r₁ − d₁r₂)(d₂a₁ − d₁a₂)
    /// for isotropic u₁, u₂.
    pub fn mukai_uu_identity(&self, u1: &MukaiVector, u2: &MukaiVector) -> Result<(Rat, Rat)> {
        self.check_vector(u1)?;
        self.check_vector(u2)?;
        for u in [u1, u2] {
            if !self.is_isotropic(u) {
                return Err(Error::pre("isotropic", format!("<{u}^2> = {}", self.square(u))));
            }
        }
        let s1 = self.h_split(&u1.xi);
        let s2 = self.h_split(&u2.xi);
        let lhs = &s1.d * &s2.d * rat_int(&self.pair(u1, u2));
        let diff = s1.d_perp.scale(&s2.d).sub(&s2.d_perp.scale(&s1.d));
        let rhs = -self.dot_q(&diff, &diff) / rat_int(&int(2))
            + (&s2.d * rat_int(&u1.r) - &s1.d * rat_int(&u2.r))
                * (&s2.d * rat_int(&u1.a) - &s1.d * rat_int(&u2.a));
        Ok((lhs, rhs))
    }
}

/// r₂ < 0 → Complex, r₂ = 0 → Torsion, r₂ > 0 → LocallyFree.
pub fn classify_crossing(roles: &RolePair) -> CrossingClass {
    let r2 = &roles.v2.r;
    if r2.is_negative() {
        CrossingClass::Complex
    } else if r2.is_zero() {
        CrossingClass::Torsion
    } else {
        CrossingClass::LocallyFree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::surfaces;

    fn mv(r: i64, xi: &[i64], a: i64) -> MukaiVector {
        MukaiVector::from_i64s(r, xi, a)
    }

    fn dec(ell: i64, u: MukaiVector, w: MukaiVector) -> Decomposition {
        Decomposition { ell: int(ell), u, w }
    }

    #[test]
    fn roles() {
        let l2 = surfaces::product_elliptic();
        let p = l2
            .assign_roles(&mv(2, &[0, 5], -1), &dec(2, mv(1, &[0, 2], 0), mv(0, &[0, 1], -1)))
            .unwrap();
        assert_eq!((&p.v1, &p.ell1, &p.ell2), (&mv(1, &[0, 2], 0), &int(2), &int(1)));
        let p = l2
            .assign_roles(&mv(1, &[0, 5], -2), &dec(2, mv(0, &[0, 1], -1), mv(1, &[0, 3], 0)))
            .unwrap();
        assert_eq!((&p.v1, &p.ell1, &p.v2, &p.ell2), (&mv(1, &[0, 3], 0), &int(1), &mv(0, &[0, 1], -1), &int(2)));
        let p = l2
            .assign_roles(&mv(1, &[1, 2], 1), &dec(1, mv(0, &[0, 1], 0), mv(1, &[1, 1], 1)))
            .unwrap();
        assert_eq!(p.v1, mv(1, &[1, 1], 1));
    }

    #[test]
    fn crossing_classes() {
        let rp = |v2: MukaiVector| RolePair {
            v1: mv(1, &[0, 0], 0),
            ell1: int(1),
            v2,
            ell2: int(1),
        };
        assert_eq!(classify_crossing(&rp(mv(0, &[0, 1], -1))), CrossingClass::Torsion);
        assert_eq!(classify_crossing(&rp(mv(-3, &[0, 1], 0))), CrossingClass::Complex);
        assert_eq!(classify_crossing(&rp(mv(1, &[0, 1], 0))), CrossingClass::LocallyFree);
    }

    #[test]
    fn regimes_of_exceptional_pair() {
        let l2 = surfaces::product_elliptic();
        let rep = l2.compute_regimes(&mv(2, &[0, 5], -1), 12).unwrap();
        assert_eq!(rep.positions(), vec![rat(2, 1), rat(1, 3)]);
        assert!(rep.walls.iter().all(|w| w.crossing == CrossingClass::Torsion));
        assert_eq!((rep.t1sq.clone(), rep.t2sq.clone()), (Some(rat(2, 1)), rat(0, 1)));
        assert!(rep.certified);
        assert_eq!(rep.regime_at(&rat(3, 1)), CrossingClass::LocallyFree);
        assert_eq!(rep.regime_at(&rat(1, 1)), CrossingClass::Torsion);
        assert_eq!(rep.regime_at(&rat(1, 10)), CrossingClass::Torsion);

        let rep = l2.compute_regimes(&mv(1, &[0, 5], -2), 12).unwrap();
        assert_eq!(rep.positions(), vec![rat(3, 1), rat(1, 2)]);
        assert_eq!(rep.t1sq, Some(rat(3, 1)));
        assert_eq!(rep.t2sq, rat(0, 1));

        let dual = l2.dual_regimes(&mv(2, &[0, 5], -1), 12).unwrap();
        assert_eq!(dual.vector, mv(1, &[0, 5], -2));
        assert_eq!(dual.t1sq, Some(rat(3, 1)));
        let dual = l2.dual_regimes(&mv(1, &[0, 5], -2), 12).unwrap();
        assert_eq!(dual.vector, mv(2, &[0, 5], -1));
        assert_eq!(dual.t1sq, Some(rat(2, 1)));
    }

    #[test]
    fn rank_one_regimes() {
        let l1 = surfaces::rank_one();
        let rep = l1.compute_regimes(&mv(1, &[1], 0), 10).unwrap();
        assert!(rep.walls.is_empty());
        assert_eq!((rep.t1sq, rep.t2sq), (Some(rat(0, 1)), rat(0, 1)));
        let dual = l1.dual_regimes(&mv(1, &[1], -1), 10).unwrap();
        assert_eq!(dual.vector, mv(1, &[1], -1));
        assert_eq!(dual.t1sq, Some(rat(0, 1)));
        assert!(dual.walls.is_empty());
    }

    #[test]
    fn rank_zero_dual() {
        let l2 = surfaces::product_elliptic();
        let dual = l2.dual_regimes(&mv(1, &[1, 2], 0), 12).unwrap();
        assert_eq!(dual.transform, Some(DualTransform::RankZero));
        assert_eq!(dual.t1sq, None);
        assert!(dual.walls.iter().all(|w| w.crossing == CrossingClass::Complex));
        if let Some(top) = dual.walls.first() {
            assert_eq!(&dual.t2sq, top.tsq());
        }
    }

    #[test]
    fn fm_tables() {
        let l2 = surfaces::product_elliptic();
        let v = mv(2, &[0, 5], -1);
        let roles = l2
            .assign_roles(&v, &dec(2, mv(1, &[0, 2], 0), mv(0, &[0, 1], -1)))
            .unwrap();
        let tag = l2.classify_crossing_fm(&v, &roles).unwrap();
        assert_eq!((tag.side, tag.case, tag.exceptional), (FmSide::ANeg, FmCase::TwoA, true));

        let v = mv(1, &[1, 2], 1);
        let roles = l2
            .assign_roles(&v, &dec(1, mv(0, &[0, 1], 0), mv(1, &[1, 1], 1)))
            .unwrap();
        let tag = l2.classify_crossing_fm(&v, &roles).unwrap();
        assert_eq!((tag.side, tag.case, tag.exceptional), (FmSide::APos, FmCase::TwoB, true));
        assert_eq!(tag.to_string(), "APos(2b)");

        let synthetic = RolePair {
            v1: mv(2, &[0, 1], 1),
            ell1: int(1),
            v2: mv(-1, &[0, 1], 1),
            ell2: int(1),
        };
        let tag = l2.classify_crossing_fm(&mv(1, &[0, 2], 2), &synthetic).unwrap();
        assert_eq!((tag.side, tag.case, tag.exceptional), (FmSide::APos, FmCase::One, false));

        let bad = RolePair {
            v1: mv(2, &[0, 1], -1),
            ..synthetic
        };
        assert!(matches!(
            l2.classify_crossing_fm(&mv(1, &[0, 2], 2), &bad),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn dual_map() {
        let l2 = surfaces::product_elliptic();
        assert_eq!(l2.dual_wall_map(&rat(2, 1)).unwrap(), rat(1, 2));
        assert_eq!(l2.dual_wall_map(&rat(1, 3)).unwrap(), rat(3, 1));
        let x = rat(7, 5);
        assert_eq!(l2.dual_wall_map(&l2.dual_wall_map(&x).unwrap()).unwrap(), x);
        assert!(l2.dual_wall_map(&rat(0, 1)).is_err());
    }

    #[test]
    fn uu_identity() {
        let l2 = surfaces::product_elliptic();
        let (l, r) = l2.mukai_uu_identity(&mv(1, &[0, 1], 0), &mv(0, &[0, 3], -1)).unwrap();
        assert_eq!((l.clone(), r), (rat(3, 4), rat(3, 4)));
        let (l, r) = l2.mukai_uu_identity(&mv(1, &[1, 0], 0), &mv(1, &[1, 0], 0)).unwrap();
        assert_eq!((l, r), (rat(0, 1), rat(0, 1)));
        let (l, r) = l2.mukai_uu_identity(&mv(1, &[1, 0], 0), &mv(1, &[0, 1], 0)).unwrap();
        assert_eq!(l, rat(1, 4));
        assert_eq!(l, r);
        assert!(l2.mukai_uu_identity(&mv(1, &[1, 1], 0), &mv(1, &[0, 1], 0)).is_err());
    }
}
