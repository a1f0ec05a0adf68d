//! Mukai vectors (r, ξ, a) in Z ⊕ NS(X) ⊕ Z, the Mukai pairing, and the
//! action of the Fourier–Mukai transform with Poincaré kernel on them.
//!
//! The dual surface is modelled by the same lattice: NS(X̂) is identified
//! with NS(X) so that ξ̂ ↦ ξ and Ĥ ↦ H. Under this identification the
//! cohomological transform (r, ξ, a) ↦ (a, −ξ, r) is an involution; on the
//! actual surface the composite of Φ with its inverse-direction transform is
//! (−1)^*[−2], which this model does not track.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, int, Int};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceDescriptor};
use crate::serde_util;

/// v = (r, ξ, a). Ordered lexicographically on (r, coordinates of ξ, a).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MukaiVector {
    #[serde(with = "serde_util::int")]
    pub r: Int,
    pub xi: DivisorClass,
    #[serde(with = "serde_util::int")]
    pub a: Int,
}

impl MukaiVector {
    pub fn new(r: Int, xi: DivisorClass, a: Int) -> Self {
        MukaiVector { r, xi, a }
    }

    pub fn from_i64s(r: i64, xi: &[i64], a: i64) -> Self {
        MukaiVector {
            r: int(r),
            xi: DivisorClass::from_i64s(xi),
            a: int(a),
        }
    }

    pub fn zero(rank: usize) -> Self {
        MukaiVector::new(Int::zero(), DivisorClass::zero(rank), Int::zero())
    }

    pub fn rank(&self) -> usize {
        self.xi.len()
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.a.is_zero() && self.xi.is_zero()
    }

    /// gcd of all ρ+2 coordinates equals 1.
    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn content(&self) -> Int {
        let g = gcd_all(self.xi.coords());
        g.gcd(&self.r).gcd(&self.a)
    }

    pub fn add(&self, o: &Self) -> Self {
        MukaiVector::new(&self.r + &o.r, self.xi.add(&o.xi), &self.a + &o.a)
    }

    pub fn sub(&self, o: &Self) -> Self {
        MukaiVector::new(&self.r - &o.r, self.xi.sub(&o.xi), &self.a - &o.a)
    }

    pub fn scale(&self, k: &Int) -> Self {
        MukaiVector::new(&self.r * k, self.xi.scale(k), &self.a * k)
    }

    pub fn neg(&self) -> Self {
        MukaiVector::new(-&self.r, self.xi.neg(), -&self.a)
    }

    /// Cohomological Fourier–Mukai action (r, ξ, a) ↦ (a, −ξ, r).
    pub fn fm_transform(&self) -> Self {
        MukaiVector::new(self.a.clone(), self.xi.neg(), self.r.clone())
    }

    /// Mukai vector of Φ(E)^∨: (r, ξ, a) ↦ (a, ξ, r).
    pub fn fm_dual(&self) -> Self {
        MukaiVector::new(self.a.clone(), self.xi.clone(), self.r.clone())
    }

    /// Mukai vector of Φ(E)[1]: (r, ξ, a) ↦ (−a, ξ, −r).
    pub fn fm_shift(&self) -> Self {
        MukaiVector::new(-&self.a, self.xi.clone(), -&self.r)
    }

    /// Parses the text form `r;c1,...,cρ;a`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("Mukai vector `{s}`: {why}"));
        let parts: Vec<&str> = s.trim().split(';').collect();
        if parts.len() != 3 {
            return Err(bad("expected `r;c1,...,cρ;a`"));
        }
        let r: Int = parts[0].trim().parse().map_err(|_| bad("rank is not an integer"))?;
        let a: Int = parts[2].trim().parse().map_err(|_| bad("last slot is not an integer"))?;
        let coords = parts[1]
            .split(',')
            .map(|c| c.trim().parse::<Int>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("divisor coordinates are not integers"))?;
        Ok(MukaiVector::new(r, DivisorClass::new(coords), a))
    }
}

impl FromStr for MukaiVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MukaiVector::parse(s)
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.r, self.xi, self.a)
    }
}

/// A twisting class η; (η²) is even on an abelian surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistClass {
    pub eta: DivisorClass,
}

/// Φ(E)[k] is a sheaf for a semi-homogeneous E with the given shift k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftTag(u8);

impl ShiftTag {
    pub fn new(k: u8) -> Option<Self> {
        (k <= 2).then_some(ShiftTag(k))
    }

    pub fn k(self) -> u8 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsotropicShift {
    Shift(ShiftTag),
    /// ξ = 0: the case table does not cover (r, 0, 0) or (0, 0, a).
    NotDetermined,
}

impl SurfaceDescriptor {
    /// Builds a Mukai vector of this surface, checking the length of ξ.
    pub fn mukai(&self, r: i64, xi: &[i64], a: i64) -> Result<MukaiVector> {
        let v = MukaiVector::from_i64s(r, xi, a);
        self.check_vector(&v)?;
        Ok(v)
    }

    pub fn check_vector(&self, v: &MukaiVector) -> Result<()> {
        self.check_len(v.rank())
    }

    pub fn twist_class(&self, eta: &[i64]) -> Result<TwistClass> {
        let eta = self.class(eta)?;
        debug_assert!(self.dot(&eta, &eta).is_even());
        Ok(TwistClass { eta })
    }

    /// ⟨x, y⟩ = (ξ_x·ξ_y) − r_x a_y − r_y a_x.
    pub fn pairing(&self, x: &MukaiVector, y: &MukaiVector) -> Result<Int> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.pair(x, y))
    }

    pub(crate) fn pair(&self, x: &MukaiVector, y: &MukaiVector) -> Int {
        self.dot(&x.xi, &y.xi) - &x.r * &y.a - &y.r * &x.a
    }

    /// ⟨v²⟩.
    pub fn square(&self, v: &MukaiVector) -> Int {
        self.pair(v, v)
    }

    pub fn is_isotropic(&self, v: &MukaiVector) -> bool {
        self.square(v).is_zero()
    }

    /// ℓ = ⟨v²⟩/2 for ⟨v²⟩ ≥ 0.
    pub fn ell_of(&self, v: &MukaiVector) -> Result<Int> {
        let sq = self.square(v);
        if sq.is_negative() {
            return Err(Error::pre("square_nonnegative", format!("<v^2> = {sq} < 0")));
        }
        if sq.is_odd() {
            return Err(Error::pre("square_even", format!("<v^2> = {sq} is odd")));
        }
        Ok(sq / int(2))
    }

    /// e^η · v = (r, ξ + rη, a + (ξ·η) + r(η²)/2).
    pub fn twist(&self, v: &MukaiVector, eta: &TwistClass) -> MukaiVector {
        let ee = self.dot(&eta.eta, &eta.eta);
        let a = &v.a + self.dot(&v.xi, &eta.eta) + &v.r * (ee / int(2));
        MukaiVector::new(v.r.clone(), v.xi.add(&eta.eta.scale(&v.r)), a)
    }

    /// Which shift of Φ(E) is a sheaf for a semi-homogeneous E with the
    /// isotropic Mukai vector v.
    pub fn classify_isotropic_shift(&self, v: &MukaiVector) -> Result<IsotropicShift> {
        self.check_vector(v)?;
        if !self.is_isotropic(v) {
            return Err(Error::pre("isotropic", format!("<v^2> = {} != 0", self.square(v))));
        }
        if v.xi.is_zero() {
            return Ok(IsotropicShift::NotDetermined);
        }
        let xx = self.dot(&v.xi, &v.xi);
        let xh = self.dot_h(&v.xi);
        let k = if xx.is_positive() {
            if xh.is_positive() {
                0
            } else {
                2
            }
        } else if xx.is_negative() {
            1
        } else if v.r.is_zero() {
            if v.a.is_positive() {
                0
            } else {
                1
            }
        } else if v.r.is_positive() {
            // (ξ²) = 0 with r ≠ 0 forces a = 0; ξ ≠ 0 isotropic is nef or anti-nef
            if xh.is_positive() {
                1
            } else {
                2
            }
        } else {
            return Ok(IsotropicShift::NotDetermined);
        };
        Ok(IsotropicShift::Shift(ShiftTag(k)))
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
    fn pairing_examples() {
        let l2 = surfaces::product_elliptic();
        assert_eq!(l2.pairing(&mv(1, &[0, 0], 0), &mv(0, &[0, 0], 1)).unwrap(), int(-1));
        assert_eq!(l2.pairing(&mv(2, &[0, 5], -1), &mv(1, &[0, 2], 0)).unwrap(), int(1));
        assert_eq!(l2.pairing(&mv(1, &[1, 1], 1), &mv(1, &[1, 1], 1)).unwrap(), int(0));
        assert!(l2.pairing(&mv(1, &[0], 0), &mv(1, &[0, 0], 0)).is_err());
    }

    #[test]
    fn squares_and_primitivity() {
        let l2 = surfaces::product_elliptic();
        let l1 = surfaces::rank_one();
        let v = mv(2, &[0, 5], -1);
        assert_eq!(l2.square(&v), int(4));
        assert_eq!(l2.ell_of(&v).unwrap(), int(2));
        assert_eq!(l1.square(&mv(1, &[1], 0)), int(2));
        assert_eq!(l1.ell_of(&mv(1, &[1], 0)).unwrap(), int(1));
        assert!(!mv(2, &[0, 4], -2).is_primitive());
        assert!(v.is_primitive());
        assert!(l2.ell_of(&mv(1, &[0, 0], 1)).is_err());
        assert!(l2.is_isotropic(&mv(1, &[1, 1], 1)));
    }

    #[test]
    fn fm_maps() {
        let v = mv(2, &[0, 5], -1);
        assert_eq!(v.fm_transform(), mv(-1, &[0, -5], 2));
        assert_eq!(mv(0, &[0, 0], 1).fm_transform(), mv(1, &[0, 0], 0));
        assert_eq!(v.fm_shift(), mv(1, &[0, 5], -2));
        assert_eq!(mv(1, &[1, 2], 1).fm_dual(), mv(1, &[1, 2], 1));
        let l2 = surfaces::product_elliptic();
        assert_eq!(l2.square(&v.fm_shift()), l2.square(&v));
        assert_eq!(l2.square(&v.fm_dual()), l2.square(&v));
        assert_eq!(v.fm_transform().fm_transform(), v);
    }

    #[test]
    fn twist_examples() {
        let l1 = surfaces::rank_one();
        let eta = l1.twist_class(&[1]).unwrap();
        assert_eq!(l1.twist(&mv(1, &[0], -1), &eta), mv(1, &[1], 0));
        let zero = l1.twist_class(&[0]).unwrap();
        let v = mv(3, &[2], -5);
        assert_eq!(l1.twist(&v, &zero), v);
    }

    #[test]
    fn isotropic_shift_table() {
        let l2 = surfaces::product_elliptic();
        let l1 = surfaces::rank_one();
        let k = |s: &SurfaceDescriptor, v: MukaiVector| match s.classify_isotropic_shift(&v).unwrap() {
            IsotropicShift::Shift(t) => Some(t.k()),
            IsotropicShift::NotDetermined => None,
        };
        assert_eq!(k(&l2, mv(0, &[0, 1], -1)), Some(1));
        assert_eq!(k(&l2, mv(0, &[0, 1], 2)), Some(0));
        assert_eq!(k(&l2, mv(1, &[0, 2], 0)), Some(1));
        assert_eq!(k(&l2, mv(1, &[0, -2], 0)), Some(2));
        assert_eq!(k(&l1, mv(1, &[1], 1)), Some(0));
        assert_eq!(k(&l1, mv(-1, &[1], -1)), Some(0));
        assert_eq!(k(&l1, mv(1, &[-1], 1)), Some(2));
        // (ξ²) < 0
        assert_eq!(k(&l2, mv(1, &[1, -1], -1)), Some(1));
        assert_eq!(k(&l2, mv(3, &[0, 0], 0)), None);
        assert_eq!(k(&l2, mv(0, &[0, 0], 4)), None);
        assert!(l2.classify_isotropic_shift(&mv(1, &[1, 1], 0)).is_err());
    }

    #[test]
    fn text_syntax() {
        let v: MukaiVector = "2;0,5;-1".parse().unwrap();
        assert_eq!(v, mv(2, &[0, 5], -1));
        assert_eq!(v.to_string(), "2;0,5;-1");
        assert_eq!(MukaiVector::parse("1;1;0").unwrap(), mv(1, &[1], 0));
        assert!(MukaiVector::parse("1;1").is_err());
        assert!(MukaiVector::parse("1;x;0").is_err());
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"r":2,"xi":[0,5],"a":-1}"#);
        assert_eq!(serde_json::from_str::<MukaiVector>(&json).unwrap(), v);
    }

    #[test]
    fn surface_builders_check_length() {
        let l2 = surfaces::product_elliptic();
        assert!(l2.mukai(1, &[1], 0).is_err());
        assert!(l2.twist_class(&[1, 2, 3]).is_err());
    }
}
