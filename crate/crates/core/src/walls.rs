//! I₁ membership, totally semistable decompositions, wall positions on the
//! line (0, tH) and the exhaustive wall enumerator.
//!
//! For u ∈ I₁ write X = d·r_u − d_u·r, Y = d·a_u − d_u·a and
//! N = −((d·ξ_u − d_u·ξ)²) ≥ 0. Expanding ⟨v, u⟩ = 1 in H-split coordinates
//! gives N/2 + XY = d_u(d − ℓ·d_u). A wall at t² > 0 needs XY > 0, so
//! 0 < d_u < d/ℓ and N < 2·d_u·(d − ℓ·d_u). Together these bound the
//! majorant P(ξ_u) ≤ 1/ℓ + 2P(ξ)/ℓ², so the search over ξ_u is finite. For a
//! fixed ξ_u the pair (r_u, a_u) is the solution of one quadratic equation.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_div, exact_sqrt, int, rat_int, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{box_points, DivisorClass, SurfaceDescriptor};
use crate::mukai::MukaiVector;
use crate::serde_util;

/// v = ℓ·u + w with u, w isotropic and ⟨u, w⟩ = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    #[serde(with = "serde_util::int")]
    pub ell: Int,
    pub u: MukaiVector,
    pub w: MukaiVector,
}

/// Outcome of intersecting the wall of a witness with the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinePosition {
    At(Rat),
    NoIntersection,
    /// Z(u) is proportional to Z(v) along the whole line.
    Degenerate,
}

impl LinePosition {
    pub fn tsq(&self) -> Option<&Rat> {
        match self {
            LinePosition::At(t) => Some(t),
            _ => None,
        }
    }
}

/// The half-open window lo < t² ≤ hi; `hi = None` is unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsqWindow {
    #[serde(with = "serde_util::rat")]
    pub lo: Rat,
    #[serde(with = "serde_util::opt_rat")]
    pub hi: Option<Rat>,
}

impl TsqWindow {
    pub fn new(lo: Rat, hi: Option<Rat>) -> Result<Self> {
        if lo.is_negative() {
            return Err(Error::pre("window", format!("lower bound {lo} is negative")));
        }
        if let Some(h) = &hi {
            if *h <= lo {
                return Err(Error::pre("window", format!("empty window ({lo}, {h}]")));
            }
        }
        Ok(TsqWindow { lo, hi })
    }

    pub fn unbounded() -> Self {
        TsqWindow {
            lo: Rat::zero(),
            hi: None,
        }
    }

    pub fn contains(&self, tsq: &Rat) -> bool {
        *tsq > self.lo && self.hi.as_ref().is_none_or(|h| tsq <= h)
    }
}

/// A totally semistable wall on the line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallOnLine {
    #[serde(with = "serde_util::rat")]
    pub tsq: Rat,
    /// In increasing lexicographic order.
    pub witnesses: Vec<MukaiVector>,
    pub decomposition: Decomposition,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallEnumeration {
    pub v: MukaiVector,
    /// Sorted by t² descending.
    pub walls: Vec<WallOnLine>,
    pub window: TsqWindow,
    pub radius: u64,
    /// Coordinate bound on ξ_u that makes the search complete.
    #[serde(with = "serde_util::int")]
    pub required_radius: Int,
    pub certified: bool,
    /// The parameter that prevented certification.
    pub limiting: Option<String>,
}

impl WallEnumeration {
    pub fn positions(&self) -> Vec<Rat> {
        self.walls.iter().map(|w| w.tsq.clone()).collect()
    }
}

impl SurfaceDescriptor {
    /// ⟨u²⟩ = 0 and ⟨v, u⟩ = 1.
    pub fn in_i1(&self, v: &MukaiVector, u: &MukaiVector) -> bool {
        v.rank() == self.rank()
            && u.rank() == self.rank()
            && self.square(u).is_zero()
            && self.pair(v, u) == int(1)
    }

    /// Whether v₁ defines a wall for v, in the hyperbolic orientation
    /// ⟨v₁, v⟩² > ⟨v₁²⟩⟨v²⟩.
    pub fn defines_wall(&self, v: &MukaiVector, v1: &MukaiVector) -> bool {
        if v.rank() != self.rank() || v1.rank() != self.rank() {
            return false;
        }
        let vv = self.square(v);
        if !vv.is_positive() {
            return false;
        }
        let v2 = v.sub(v1);
        let s1 = self.square(v1);
        let m = self.pair(v1, v);
        !s1.is_negative()
            && !self.square(&v2).is_negative()
            && self.pair(v1, &v2).is_positive()
            && &m * &m > &s1 * &vv
    }

    pub fn tss_decompose(&self, v: &MukaiVector, u: &MukaiVector) -> Result<Decomposition> {
        self.check_vector(v)?;
        self.check_vector(u)?;
        if !self.in_i1(v, u) {
            return Err(Error::pre(
                "in_I1",
                format!("<u^2> = {}, <v,u> = {}", self.square(u), self.pair(v, u)),
            ));
        }
        let vv = self.square(v);
        if !vv.is_positive() {
            return Err(Error::pre("square_positive", format!("<v^2> = {vv}")));
        }
        let ell = self.ell_of(v)?;
        let w = v.sub(&u.scale(&ell));
        assert!(self.square(&w).is_zero(), "<w^2> = 0 fails for v = {v}, u = {u}");
        assert_eq!(self.pair(u, &w), int(1), "<u,w> = 1 fails for v = {v}, u = {u}");
        Ok(Decomposition { ell, u: u.clone(), w })
    }

    /// t² with (a₁d − a·d₁)/(r₁d − r·d₁) = t²·n.
    pub fn wall_position_line(&self, v: &MukaiVector, u: &MukaiVector) -> Result<LinePosition> {
        self.check_vector(v)?;
        self.check_vector(u)?;
        let e = self.dot_h(&v.xi);
        if !e.is_positive() {
            return Err(Error::pre("upper_half_plane", format!("(xi.H) = {e} is not positive")));
        }
        Ok(self.position_raw(v, u))
    }

    /// Same as `wall_position_line` with the (H²) factors cleared.
    fn position_raw(&self, v: &MukaiVector, u: &MukaiVector) -> LinePosition {
        let e = self.dot_h(&v.xi);
        let eu = self.dot_h(&u.xi);
        let num = &u.a * &e - &v.a * &eu;
        let den = &u.r * &e - &v.r * &eu;
        if den.is_zero() {
            return if num.is_zero() {
                LinePosition::Degenerate
            } else {
                LinePosition::NoIntersection
            };
        }
        let tsq = Rat::new(num, den * self.n());
        if tsq.is_positive() {
            LinePosition::At(tsq)
        } else {
            LinePosition::NoIntersection
        }
    }

    /// Every totally semistable wall of v with t² in the window, found from
    /// the I₁ witnesses whose ξ-coordinates are at most `radius`.
    pub fn enumerate_tss_walls_line(
        &self,
        v: &MukaiVector,
        window: &TsqWindow,
        radius: u64,
    ) -> Result<WallEnumeration> {
        if !v.r.is_positive() {
            return Err(Error::pre("rank_positive", format!("r = {} is not positive", v.r)));
        }
        self.enumerate_walls(v, window, radius)
    }

    /// The enumerator without the rank restriction; rank-0 vectors arise as
    /// duals of vectors with a = 0.
    pub(crate) fn enumerate_walls(
        &self,
        v: &MukaiVector,
        window: &TsqWindow,
        radius: u64,
    ) -> Result<WallEnumeration> {
        self.check_vector(v)?;
        let e = self.dot_h(&v.xi);
        if !e.is_positive() {
            return Err(Error::pre("upper_half_plane", format!("(xi.H) = {e} is not positive")));
        }
        let vv = self.square(v);
        if vv.is_negative() {
            return Err(Error::pre("square_nonnegative", format!("<v^2> = {vv} < 0")));
        }
        let empty = |required: Int| WallEnumeration {
            v: v.clone(),
            walls: Vec::new(),
            window: window.clone(),
            radius,
            required_radius: required,
            certified: true,
            limiting: None,
        };
        // isotropic or non-primitive vectors have no totally semistable walls
        if vv.is_zero() || !v.is_primitive() {
            return Ok(empty(Int::zero()));
        }
        let ell = &vv / int(2);

        let ell_q = rat_int(&ell);
        let bound = Rat::from_integer(int(1)) / &ell_q
            + self.majorant(&v.xi) * int(2) / (&ell_q * &ell_q);
        let required = self.coordinate_bound(&bound);
        let certified = required <= Int::from(radius);
        let side = required
            .to_u64()
            .map_or(radius, |r| r.min(radius))
            .min(i64::MAX as u64) as i64;

        let mut found: BTreeMap<Rat, Vec<MukaiVector>> = BTreeMap::new();
        for xi1 in box_points(self.rank(), side) {
            let eu = self.dot_h(&xi1);
            if !eu.is_positive() || &ell * &eu >= e {
                continue;
            }
            let diff = xi1.scale(&e).sub(&v.xi.scale(&eu));
            let nn = -self.dot(&diff, &diff);
            if nn > &eu * (&e - &ell * &eu) * int(2) {
                continue;
            }
            for u in self.solve_i1(v, &xi1) {
                debug_assert!(self.in_i1(v, &u));
                if let LinePosition::At(tsq) = self.position_raw(v, &u) {
                    if window.contains(&tsq) {
                        found.entry(tsq).or_default().push(u);
                    }
                }
            }
        }

        let mut walls = Vec::with_capacity(found.len());
        for (tsq, mut witnesses) in found.into_iter().rev() {
            witnesses.sort();
            witnesses.dedup();
            let decomposition = self.tss_decompose(v, &witnesses[0])?;
            walls.push(WallOnLine {
                tsq,
                witnesses,
                decomposition,
                certified,
            });
        }
        Ok(WallEnumeration {
            v: v.clone(),
            walls,
            window: window.clone(),
            radius,
            required_radius: required.clone(),
            certified,
            limiting: (!certified).then(|| format!("radius {radius} < required {required}")),
        })
    }

    /// All u = (r₁, ξ₁, a₁) in I₁ with ξ_u = ξ₁ whose wall meets the line.
    ///
    /// With c = (ξ·ξ₁) − 1 and s = (ξ₁²) the conditions read
    /// r·a₁ + a·r₁ = c and r₁·a₁ = s/2. Infinite solution families only occur
    /// when X = 0 or Y = 0, and those never give a wall.
    pub(crate) fn solve_i1(&self, v: &MukaiVector, xi1: &DivisorClass) -> Vec<MukaiVector> {
        let c = self.dot(&v.xi, xi1) - int(1);
        let s = self.dot(xi1, xi1);
        let half = match exact_div(&s, &int(2)) {
            Some(h) => h,
            None => return Vec::new(),
        };
        let (r, a) = (&v.r, &v.a);
        let mut pairs: Vec<(Int, Int)> = Vec::new();
        if !r.is_zero() {
            // a·r₁² − c·r₁ + r·s/2 = 0, then a₁ = (c − a·r₁)/r
            let mut roots: Vec<Int> = Vec::new();
            if !a.is_zero() {
                let disc = &c * &c - a * r * &s * int(2);
                if let Some(sq) = exact_sqrt(&disc) {
                    for num in [&c + &sq, &c - &sq] {
                        if let Some(r1) = exact_div(&num, &(a * int(2))) {
                            roots.push(r1);
                        }
                    }
                }
            } else if !c.is_zero() {
                if let Some(r1) = exact_div(&(r * &half), &c) {
                    roots.push(r1);
                }
            }
            for r1 in roots {
                if let Some(a1) = exact_div(&(&c - a * &r1), r) {
                    pairs.push((r1, a1));
                }
            }
        } else if !a.is_zero() {
            if let Some(r1) = exact_div(&c, a) {
                if !r1.is_zero() {
                    if let Some(a1) = exact_div(&half, &r1) {
                        pairs.push((r1, a1));
                    }
                }
            }
        } else if c.is_zero() && !half.is_zero() {
            for d in divisors(&half) {
                for r1 in [d.clone(), -d] {
                    let a1 = &half / &r1;
                    pairs.push((r1, a1));
                }
            }
        }
        pairs.sort();
        pairs.dedup();
        pairs
            .into_iter()
            .map(|(r1, a1)| MukaiVector::new(r1, xi1.clone(), a1))
            .filter(|u| self.in_i1(v, u))
            .collect()
    }
}

/// Positive divisors of |n|, n ≠ 0.
fn divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut k = int(1);
    while &k * &k <= n {
        if n.is_multiple_of(&k) {
            out.push(k.clone());
            let q = &n / &k;
            if q != k {
                out.push(q);
            }
        }
        k += 1;
    }
    out.sort();
    out
}
