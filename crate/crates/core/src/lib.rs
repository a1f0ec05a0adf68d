//! Exact lattice, wall and chamber computations for Fourier–Mukai partners of
//! abelian surfaces: Mukai pairings, totally semistable walls along the ray
//! (0, tH), the regimes those walls cut out, and the resulting preservation
//! verdicts for Gieseker stability.
//!
//! All arithmetic is exact over `BigInt` and `BigRational`.

pub mod amp;
pub mod appendix;
pub mod arith;
pub mod charge;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod mukai;
pub mod oracle;
pub mod regime;
pub mod report;
mod serde_util;
pub mod surfaces;
pub mod verdict;
pub mod walls;

pub use arith::{Int, Rat};
pub use charge::{ChargeParams, LineCharge};
pub use error::{Error, Result};
pub use lattice::{DivisorClass, HSplit, PerturbedPair, RationalClass, SurfaceDescriptor, SurfaceSpec};
pub use mukai::{IsotropicShift, MukaiVector, ShiftTag, TwistClass};
pub use walls::{Decomposition, LinePosition, TsqWindow, WallEnumeration, WallOnLine};
pub use amp::{AmpIrreducibility, AmpWallWitness};
pub use regime::{
    AnnotatedWall, CrossingClass, DualTransform, FmCase, FmCaseTag, FmSide, RegimeReport, RolePair,
    WitnessAnalysis,
};
pub use appendix::{Check, CheckReport};
pub use verdict::{
    Advisory, AdvisoryKind, AmpleWitness, Confidence, CorollaryBranch, ExceptionalCase,
    PreservationVerdict, Shift, Status,
};
pub use oracle::{Crosscheck, SearchBox, WitnessAt};
pub use report::{Payload, Report};
