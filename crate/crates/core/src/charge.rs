//! Central charges Z_{(β,ω)}(v) = ⟨e^{β+iω}, v⟩, on the line (0, tH) and at
//! general rational points, and exact slope comparison along the line.
//!
//! Positions on the line are carried as t² because every wall position is
//! rational in t² while t itself is usually irrational.

use std::cmp::Ordering;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat_int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{RationalClass, SurfaceDescriptor};
use crate::mukai::MukaiVector;
use crate::serde_util;

/// Z_{(0,tH)}(v) = re + i·im_coeff·t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCharge {
    #[serde(with = "serde_util::rat")]
    pub re: Rat,
    #[serde(with = "serde_util::rat")]
    pub im_coeff: Rat,
}

/// A rational point (β, ω) of NS(X)_R × Amp(X)_R.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeParams {
    pub beta: RationalClass,
    pub omega: RationalClass,
}

impl ChargeParams {
    pub fn new(surface: &SurfaceDescriptor, beta: RationalClass, omega: RationalClass) -> Result<Self> {
        surface.check_len(beta.len())?;
        surface.check_len(omega.len())?;
        if !surface.is_ample_q(&omega) {
            return Err(Error::pre("omega_ample", format!("omega = ({omega}) is not ample")));
        }
        Ok(ChargeParams { beta, omega })
    }
}

fn check_tsq(tsq: &Rat) -> Result<()> {
    if !tsq.is_positive() {
        return Err(Error::pre("tsq_positive", format!("t^2 = {tsq} is not positive")));
    }
    Ok(())
}

impl SurfaceDescriptor {
    /// Z_{(0,tH)}(v) = (r t² n − a) + 2nd·t·i, with d = (ξ·H)/(H²).
    pub fn charge_line(&self, v: &MukaiVector, tsq: &Rat) -> Result<LineCharge> {
        self.check_vector(v)?;
        check_tsq(tsq)?;
        let n = rat_int(&self.n());
        let re = rat_int(&v.r) * tsq * &n - rat_int(&v.a);
        let im_coeff = &n * int(2) * self.h_coeff(&v.xi);
        Ok(LineCharge { re, im_coeff })
    }

    /// (Re, Im) of Z_{(β,ω)}(v):
    /// Re = (ξ·β) − a − r((β²) − (ω²))/2, Im = (ξ·ω) − r(β·ω).
    pub fn charge_general(&self, v: &MukaiVector, p: &ChargeParams) -> Result<(Rat, Rat)> {
        self.check_vector(v)?;
        self.check_len(p.beta.len())?;
        self.check_len(p.omega.len())?;
        if !self.is_ample_q(&p.omega) {
            return Err(Error::pre("omega_ample", format!("omega = ({}) is not ample", p.omega)));
        }
        let xi = v.xi.to_rational();
        let r = rat_int(&v.r);
        let bb = self.dot_q(&p.beta, &p.beta);
        let ww = self.dot_q(&p.omega, &p.omega);
        let re = self.dot_q(&xi, &p.beta) - rat_int(&v.a) - &r * (bb - ww) / rat_int(&int(2));
        let im = self.dot_q(&xi, &p.omega) - &r * self.dot_q(&p.beta, &p.omega);
        Ok((re, im))
    }

    /// Compares ν(v) = (a − r t² n)/d with ν(w) at t², both charges in the
    /// upper half plane. The common factor 1/(2nt) is dropped.
    pub fn slope_compare(&self, v: &MukaiVector, w: &MukaiVector, tsq: &Rat) -> Result<Ordering> {
        self.check_vector(v)?;
        self.check_vector(w)?;
        check_tsq(tsq)?;
        let dv = self.h_coeff(&v.xi);
        let dw = self.h_coeff(&w.xi);
        if !dv.is_positive() || !dw.is_positive() {
            return Err(Error::pre(
                "upper_half_plane",
                format!("H-coefficients {dv} and {dw} must both be positive"),
            ));
        }
        let n = rat_int(&self.n());
        let nv = rat_int(&v.a) - rat_int(&v.r) * tsq * &n;
        let nw = rat_int(&w.a) - rat_int(&w.r) * tsq * &n;
        Ok((nv * dw).cmp(&(nw * dv)))
    }
}
