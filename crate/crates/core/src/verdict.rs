//! Whether the Fourier–Mukai transform of a general stable sheaf with Mukai
//! vector v is again stable, with the evidence behind the answer.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat_int, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, PerturbedPair, RationalClass, SurfaceDescriptor};
use crate::mukai::MukaiVector;
use crate::regime::{CrossingClass, FmCase, FmSide, RegimeReport};
use crate::serde_util;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Confidence {
    /// Confirmed by an exceptional wall of a certified enumeration.
    Confirmed,
    /// Decided by the surface flag and primitivity of ξ alone.
    FlagOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ExceptionalCase {
    /// a > 0 on a product of elliptic curves with ξ primitive.
    ProductPrimitiveXi {
        /// Positions of the walls tagged APos(2b).
        #[serde(with = "serde_util::rat_vec")]
        walls: Vec<Rat>,
        confidence: Confidence,
    },
    /// v = (ℓ, kC, −1) with k ≥ ℓ + 1.
    ShapeLK1 {
        #[serde(with = "serde_util::int")]
        ell: Int,
        #[serde(with = "serde_util::int")]
        k: Int,
        c: DivisorClass,
    },
    /// v = (1, kC, −ℓ) with k ≥ ℓ + 1.
    Shape1KL {
        #[serde(with = "serde_util::int")]
        ell: Int,
        #[serde(with = "serde_util::int")]
        k: Int,
        c: DivisorClass,
    },
    /// v = e^η (r, 0, −1). Reported, but does not block preservation.
    RemarkShape {
        eta: DivisorClass,
        /// Sign of (η²).
        eta_square_sign: i8,
    },
}

impl ExceptionalCase {
    pub fn is_blocking(&self) -> bool {
        !matches!(self, ExceptionalCase::RemarkShape { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExceptionalCase::ProductPrimitiveXi { .. } => "ProductPrimitiveXi",
            ExceptionalCase::ShapeLK1 { .. } => "ShapeLK1",
            ExceptionalCase::Shape1KL { .. } => "Shape1KL",
            ExceptionalCase::RemarkShape { .. } => "RemarkShape",
        }
    }
}

/// Which object is a stable sheaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shift {
    /// Φ(E) itself.
    Plain,
    /// Φ(E)^∨.
    Dual,
    /// Φ(E)[1].
    Shift1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorollaryBranch {
    /// a > 0, ⟨v²⟩ ≥ 2r, 2a, not (product and ξ primitive).
    One,
    /// a < 0 and (ξ²) > 0.
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source")]
pub enum AmpleWitness {
    /// t₁ is the top wall: L = H itself.
    GiesekerChamber { l: RationalClass },
    /// L = H₋ of the lowest wall above t₁, which has r₂ > 0.
    PerturbedPair {
        #[serde(with = "serde_util::rat")]
        wall_tsq: Rat,
        delta: DivisorClass,
        pair: PerturbedPair,
        l: RationalClass,
    },
}

impl AmpleWitness {
    pub fn l(&self) -> &RationalClass {
        match self {
            AmpleWitness::GiesekerChamber { l } | AmpleWitness::PerturbedPair { l, .. } => l,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Status {
    PreservedWithHHat,
    PreservedWithSomeLL { witness: Option<AmpleWitness> },
    NotPreservedGenerically { case: ExceptionalCase },
    Inconclusive { reason: String },
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::PreservedWithHHat => "PreservedWithHHat",
            Status::PreservedWithSomeLL { .. } => "PreservedWithSomeLL",
            Status::NotPreservedGenerically { .. } => "NotPreservedGenerically",
            Status::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_preserved(&self) -> bool {
        matches!(self, Status::PreservedWithHHat | Status::PreservedWithSomeLL { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdvisoryKind {
    /// 1/(n²t₁′²) > t₁² for preserved vectors.
    Inequality,
    /// 1/(n²t₁′²) = t₁² for exceptional vectors; known to fail.
    ExceptionalIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Advisory {
    pub kind: AdvisoryKind,
    #[serde(with = "serde_util::rat")]
    pub t1sq: Rat,
    #[serde(with = "serde_util::rat")]
    pub t1p_sq: Rat,
    /// 1/(n²t₁′²).
    #[serde(with = "serde_util::rat")]
    pub mapped: Rat,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationVerdict {
    pub v: MukaiVector,
    #[serde(flatten)]
    pub status: Status,
    pub shift: Shift,
    pub exceptional: Vec<ExceptionalCase>,
    pub corollary: Option<CorollaryBranch>,
    pub corollary_applied: bool,
    pub regimes: RegimeReport,
    pub dual_regimes: RegimeReport,
    pub certified: bool,
    pub advisory: Option<Advisory>,
}

impl SurfaceDescriptor {
    fn is_elliptic_class(&self, c: &DivisorClass) -> bool {
        if self.has_supplied_elliptic_classes() {
            return self.elliptic_classes().contains(c);
        }
        c.is_primitive() && self.dot(c, c).is_zero() && self.dot_h(c).is_positive()
    }

    fn check_hypotheses(&self, v: &MukaiVector) -> Result<()> {
        self.check_vector(v)?;
        if !v.r.is_positive() {
            return Err(Error::pre(
                "rank_positive",
                format!("r = {} is not positive; apply the analysis to the derived dual instead", v.r),
            ));
        }
        let e = self.dot_h(&v.xi);
        if !e.is_positive() {
            return Err(Error::pre(
                "upper_half_plane",
                format!("(xi.H) = {e} is not positive; apply the analysis to the derived dual instead"),
            ));
        }
        Ok(())
    }

    /// Shape matches that need no enumeration.
    fn shape_cases(&self, v: &MukaiVector) -> Vec<ExceptionalCase> {
        let mut out = Vec::new();
        let one = int(1);
        if v.a.is_negative() && !v.xi.is_zero() {
            let k = v.xi.content();
            let c = v.xi.div_exact(&k).expect("content divides");
            if self.is_elliptic_class(&c) {
                // (ξ²) = 0, so ⟨v²⟩ = −2ra and ℓ = −ra
                let ell = -(&v.r * &v.a);
                if v.a == -&one && k >= &v.r + &one {
                    out.push(ExceptionalCase::ShapeLK1 {
                        ell: v.r.clone(),
                        k,
                        c,
                    });
                } else if v.r == one && k >= &ell + &one {
                    out.push(ExceptionalCase::Shape1KL { ell, k, c });
                }
            }
        }
        if let Some(eta) = v.xi.div_exact(&v.r) {
            let ee = self.dot(&eta, &eta);
            if v.a == -&one + &v.r * &ee / int(2) {
                out.push(ExceptionalCase::RemarkShape {
                    eta,
                    eta_square_sign: crate::arith::sign_int(&ee),
                });
            }
        }
        out
    }

    /// Every exceptional case matching v. The product case is confirmed
    /// against the walls found at the given radius.
    pub fn detect_exceptional(&self, v: &MukaiVector, radius: u64) -> Result<Vec<ExceptionalCase>> {
        self.check_hypotheses(v)?;
        if self.product_case_applies(v) {
            let regimes = self.compute_regimes(v, radius)?;
            return self.exceptional_with(v, &regimes);
        }
        Ok(self.shape_cases(v))
    }

    fn product_case_applies(&self, v: &MukaiVector) -> bool {
        v.a.is_positive() && self.is_product_of_elliptic_curves() && v.xi.is_primitive()
    }

    fn exceptional_with(&self, v: &MukaiVector, regimes: &RegimeReport) -> Result<Vec<ExceptionalCase>> {
        let mut out = Vec::new();
        if self.product_case_applies(v) {
            let walls: Vec<Rat> = regimes
                .walls
                .iter()
                .filter(|w| {
                    w.analyses.iter().any(|a| {
                        a.fm_case.is_some_and(|t| t.side == FmSide::APos && t.case == FmCase::TwoB)
                    })
                })
                .map(|w| w.tsq().clone())
                .collect();
            if !walls.is_empty() {
                out.push(ExceptionalCase::ProductPrimitiveXi {
                    walls,
                    confidence: Confidence::Confirmed,
                });
            } else if !regimes.certified {
                out.push(ExceptionalCase::ProductPrimitiveXi {
                    walls,
                    confidence: Confidence::FlagOnly,
                });
            }
        }
        out.extend(self.shape_cases(v));
        Ok(out)
    }

    pub fn corollary_check(&self, v: &MukaiVector) -> Result<Option<CorollaryBranch>> {
        self.check_hypotheses(v)?;
        let vv = self.square(v);
        let two = int(2);
        if v.a.is_positive()
            && vv >= &v.r * &two
            && vv >= &v.a * &two
            && !(self.is_product_of_elliptic_curves() && v.xi.is_primitive())
        {
            return Ok(Some(CorollaryBranch::One));
        }
        if v.a.is_negative() && self.dot(&v.xi, &v.xi).is_positive() {
            return Ok(Some(CorollaryBranch::Two));
        }
        Ok(None)
    }

    pub fn decide_preservation(&self, v: &MukaiVector, radius: u64) -> Result<PreservationVerdict> {
        self.check_hypotheses(v)?;
        let regimes = self.compute_regimes(v, radius)?;
        let dual_regimes = self.dual_regimes(v, radius)?;
        let certified = regimes.certified && dual_regimes.certified;
        let shift = if v.a.is_positive() { Shift::Dual } else { Shift::Shift1 };
        let mut verdict = PreservationVerdict {
            v: v.clone(),
            status: Status::PreservedWithHHat,
            shift,
            exceptional: Vec::new(),
            corollary: None,
            corollary_applied: false,
            regimes,
            dual_regimes,
            certified,
            advisory: None,
        };

        if !v.is_primitive() {
            verdict.shift = if v.a.is_positive() { Shift::Plain } else { Shift::Shift1 };
            return Ok(verdict);
        }

        verdict.exceptional = self.exceptional_with(v, &verdict.regimes)?;
        if let Some(case) = verdict.exceptional.iter().find(|c| c.is_blocking()) {
            verdict.status = Status::NotPreservedGenerically { case: case.clone() };
            verdict.advisory = self.advisory(&verdict, AdvisoryKind::ExceptionalIdentity);
            return Ok(verdict);
        }

        verdict.corollary = self.corollary_check(v)?;
        if verdict.corollary.is_some() {
            verdict.corollary_applied = true;
            verdict.advisory = self.advisory(&verdict, AdvisoryKind::Inequality);
            return Ok(verdict);
        }

        if !verdict.regimes.certified {
            verdict.status = Status::Inconclusive {
                reason: format!(
                    "wall enumeration at radius {} is not certified (required {})",
                    radius, verdict.regimes.required_radius
                ),
            };
            return Ok(verdict);
        }

        let t1 = verdict.regimes.t1sq_or_zero();
        if t1.is_zero() {
            verdict.advisory = self.advisory(&verdict, AdvisoryKind::Inequality);
            return Ok(verdict);
        }
        let witness = self.ample_witness(&verdict.regimes, &t1)?;
        verdict.status = Status::PreservedWithSomeLL { witness };
        verdict.advisory = self.advisory(&verdict, AdvisoryKind::Inequality);
        Ok(verdict)
    }

    /// An ample L whose Gieseker chamber meets the regime just above t₁.
    fn ample_witness(&self, regimes: &RegimeReport, t1: &Rat) -> Result<Option<AmpleWitness>> {
        let above = regimes.walls.iter().rfind(|w| w.tsq() > t1);
        let Some(wall) = above else {
            return Ok(Some(AmpleWitness::GiesekerChamber {
                l: self.ample().to_rational(),
            }));
        };
        let Some(an) = wall.analyses.iter().find(|a| a.crossing == CrossingClass::LocallyFree) else {
            return Ok(None);
        };
        let (v1, v2) = (&an.roles.v1, &an.roles.v2);
        let delta = v1.xi.scale(&v2.r).sub(&v2.xi.scale(&v1.r));
        if !self.dot(&delta, &delta).is_negative() {
            return Ok(None);
        }
        let pair = self.perturbed_pair(&delta)?;
        Ok(Some(AmpleWitness::PerturbedPair {
            wall_tsq: wall.tsq().clone(),
            delta,
            l: pair.minus.clone(),
            pair,
        }))
    }

    fn advisory(&self, verdict: &PreservationVerdict, kind: AdvisoryKind) -> Option<Advisory> {
        let t1 = verdict.regimes.t1sq.clone()?;
        let t1p = verdict.dual_regimes.t1sq.clone()?;
        if !t1.is_positive() || !t1p.is_positive() || !verdict.certified {
            return None;
        }
        let n = rat_int(&self.n());
        let mapped = (&n * &n * &t1p).recip();
        let holds = match kind {
            AdvisoryKind::Inequality => mapped > t1,
            AdvisoryKind::ExceptionalIdentity => mapped == t1,
        };
        Some(Advisory {
            kind,
            t1sq: t1,
            t1p_sq: t1p,
            mapped,
            holds,
        })
    }
}
