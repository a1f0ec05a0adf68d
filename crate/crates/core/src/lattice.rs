//! The Néron–Severi lattice of the surface: intersection form, ampleness and
//! effectivity tests, the splitting of a class along the polarization, and
//! ample classes orthogonal to a negative class.
//!
//! Every computation is exact. Classes carry coordinates in the basis that
//! the Gram matrix is written in; a class built for one surface must not be
//! fed to another (lengths are checked at the public boundary).

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{floor_sqrt, gcd_all, int, rat_int, Int, Rat};
use crate::error::{Error, Result};
use crate::serde_util;

/// Default coordinate bound for the isotropic-class search used when a
/// surface does not list its elliptic curve classes.
pub const DEFAULT_ELLIPTIC_BOUND: i64 = 10;

/// An integral class in NS(X).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    #[serde(with = "serde_util::int_vec")]
    coords: Vec<Int>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Int>) -> Self {
        DivisorClass { coords }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        DivisorClass {
            coords: coords.iter().map(|&c| int(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coords: vec![Int::zero(); rank],
        }
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates; 1 for a primitive class, 0 for the zero class.
    pub fn content(&self) -> Int {
        gcd_all(&self.coords)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &Int) -> Self {
        DivisorClass {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        DivisorClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        DivisorClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        DivisorClass {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Exact quotient when `k` divides every coordinate.
    pub fn div_exact(&self, k: &Int) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let mut coords = Vec::with_capacity(self.len());
        for c in &self.coords {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            coords.push(q);
        }
        Some(DivisorClass { coords })
    }

    pub fn to_rational(&self) -> RationalClass {
        RationalClass {
            coords: self.coords.iter().map(rat_int).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A class in NS(X) ⊗ Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalClass {
    #[serde(with = "serde_util::rat_vec")]
    coords: Vec<Rat>,
}

impl RationalClass {
    pub fn new(coords: Vec<Rat>) -> Self {
        RationalClass { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, k: &Rat) -> Self {
        RationalClass {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Smallest positive integral multiple, divided by the content.
    pub fn primitive_integral(&self) -> DivisorClass {
        let lcm = self
            .coords
            .iter()
            .fold(Int::one(), |l, c| l.lcm(c.denom()));
        let cleared: Vec<Int> = self
            .coords
            .iter()
            .map(|c| (c * rat_int(&lcm)).to_integer())
            .collect();
        let g = gcd_all(&cleared);
        if g.is_zero() {
            return DivisorClass::new(cleared);
        }
        DivisorClass::new(cleared.into_iter().map(|c| c / &g).collect())
    }
}

impl fmt::Display for RationalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::arith::fmt_rat_short).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// ξ = d·H + D with (D·H) = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HSplit {
    #[serde(with = "serde_util::rat")]
    pub d: Rat,
    pub d_perp: RationalClass,
}

/// Output of [`SurfaceDescriptor::perturbed_pair`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbedPair {
    pub center: RationalClass,
    #[serde(with = "serde_util::rat")]
    pub epsilon: Rat,
    /// The perturbation with (δ·H₊) < 0.
    pub plus: RationalClass,
    /// The perturbation with (δ·H₋) > 0.
    pub minus: RationalClass,
}

/// Raw, unvalidated surface description as it appears in JSON files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub name: String,
    #[serde(with = "serde_util::int_matrix")]
    pub gram: Vec<Vec<Int>>,
    #[serde(with = "serde_util::int_vec")]
    pub ample: Vec<Int>,
    #[serde(default)]
    pub product_of_elliptic_curves: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elliptic_classes: Option<Vec<DivisorClass>>,
}

impl SurfaceSpec {
    pub fn validate(self) -> Result<SurfaceDescriptor> {
        SurfaceDescriptor::from_spec(self)
    }
}

/// A polarized abelian surface, seen through its Néron–Severi lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDescriptor {
    name: String,
    gram: Vec<Vec<Int>>,
    ample: DivisorClass,
    product_of_elliptic_curves: bool,
    elliptic_classes: Option<Vec<DivisorClass>>,
}

impl SurfaceDescriptor {
    pub fn new(name: &str, gram: &[Vec<i64>], ample: &[i64]) -> Result<Self> {
        SurfaceSpec {
            name: name.to_string(),
            gram: gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            ample: ample.iter().map(|&x| int(x)).collect(),
            product_of_elliptic_curves: false,
            elliptic_classes: None,
        }
        .validate()
    }

    pub fn with_product_flag(mut self, product: bool) -> Self {
        self.product_of_elliptic_curves = product;
        self
    }

    pub fn with_elliptic_classes(mut self, classes: &[Vec<i64>]) -> Result<Self> {
        let classes: Vec<DivisorClass> =
            classes.iter().map(|c| DivisorClass::from_i64s(c)).collect();
        for c in &classes {
            self.check_elliptic_class(c)?;
        }
        self.elliptic_classes = Some(classes);
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SurfaceSpec = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("surface JSON: {e}")))?;
        spec.validate()
    }

    pub fn to_spec(&self) -> SurfaceSpec {
        SurfaceSpec {
            name: self.name.clone(),
            gram: self.gram.clone(),
            ample: self.ample.coords.clone(),
            product_of_elliptic_curves: self.product_of_elliptic_curves,
            elliptic_classes: self.elliptic_classes.clone(),
        }
    }

    fn from_spec(spec: SurfaceSpec) -> Result<Self> {
        let rank = spec.gram.len();
        if rank == 0 {
            return Err(Error::surface("rank_positive", "empty Gram matrix"));
        }
        for (i, row) in spec.gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::surface(
                    "gram_square",
                    format!("row {i} has length {}, expected {rank}", row.len()),
                ));
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if spec.gram[i][j] != spec.gram[j][i] {
                    return Err(Error::surface(
                        "gram_symmetric",
                        format!("entry ({i},{j}) differs from ({j},{i})"),
                    ));
                }
            }
            if spec.gram[i][i].is_odd() {
                return Err(Error::surface(
                    "gram_even",
                    format!("diagonal entry {i} is odd; NS of an abelian surface is even"),
                ));
            }
        }
        if spec.ample.len() != rank {
            return Err(Error::surface(
                "ample_length",
                format!("ample has length {}, expected {rank}", spec.ample.len()),
            ));
        }
        let (pos, neg, zero) = signature(&spec.gram);
        if pos != 1 || neg != rank - 1 {
            return Err(Error::UnsupportedSignature {
                pos,
                neg,
                zero,
                expected_neg: rank - 1,
            });
        }
        let mut surface = SurfaceDescriptor {
            name: spec.name,
            gram: spec.gram,
            ample: DivisorClass::new(spec.ample),
            product_of_elliptic_curves: spec.product_of_elliptic_curves,
            elliptic_classes: None,
        };
        let h2 = surface.h_square();
        if !h2.is_positive() {
            return Err(Error::surface("ample_positive", format!("(H^2) = {h2} is not positive")));
        }
        if let Some(classes) = spec.elliptic_classes {
            for c in &classes {
                surface.check_elliptic_class(c)?;
            }
            surface.elliptic_classes = Some(classes);
        }
        Ok(surface)
    }

    fn check_elliptic_class(&self, c: &DivisorClass) -> Result<()> {
        if c.len() != self.rank() {
            return Err(Error::surface(
                "elliptic_class_length",
                format!("class {c} has length {}, expected {}", c.len(), self.rank()),
            ));
        }
        if !self.dot(c, c).is_zero() {
            return Err(Error::surface("elliptic_class_isotropic", format!("(C^2) != 0 for {c}")));
        }
        if !self.dot(c, &self.ample).is_positive() {
            return Err(Error::surface("elliptic_class_effective", format!("(C.H) <= 0 for {c}")));
        }
        if !c.is_primitive() {
            return Err(Error::surface("elliptic_class_primitive", format!("{c} is not primitive")));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn ample(&self) -> &DivisorClass {
        &self.ample
    }

    pub fn is_product_of_elliptic_curves(&self) -> bool {
        self.product_of_elliptic_curves
    }

    /// (H²).
    pub fn h_square(&self) -> Int {
        self.dot(&self.ample, &self.ample)
    }

    /// n = (H²)/2.
    pub fn n(&self) -> Int {
        self.h_square() / int(2)
    }

    /// Builds a class of this surface, checking its length.
    pub fn class(&self, coords: &[i64]) -> Result<DivisorClass> {
        let c = DivisorClass::from_i64s(coords);
        self.check_len(c.len())?;
        Ok(c)
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: len,
            });
        }
        Ok(())
    }

    /// Intersection number of two integral classes.
    pub fn intersect(&self, x: &DivisorClass, y: &DivisorClass) -> Result<Int> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(self.dot(x, y))
    }

    /// Intersection number of two rational classes.
    pub fn intersect_q(&self, x: &RationalClass, y: &RationalClass) -> Result<Rat> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(self.dot_q(x, y))
    }

    pub(crate) fn dot(&self, x: &DivisorClass, y: &DivisorClass) -> Int {
        assert_eq!(x.len(), self.rank(), "class length does not match surface rank");
        assert_eq!(y.len(), self.rank(), "class length does not match surface rank");
        let mut acc = Int::zero();
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += xi * &self.gram[i][j] * yj;
                }
            }
        }
        acc
    }

    pub(crate) fn dot_q(&self, x: &RationalClass, y: &RationalClass) -> Rat {
        assert_eq!(x.len(), self.rank(), "class length does not match surface rank");
        assert_eq!(y.len(), self.rank(), "class length does not match surface rank");
        let mut acc = Rat::zero();
        for (i, xi) in x.coords.iter().enumerate() {
            for (j, yj) in y.coords.iter().enumerate() {
                if !self.gram[i][j].is_zero() {
                    acc += xi * yj * rat_int(&self.gram[i][j]);
                }
            }
        }
        acc
    }

    pub(crate) fn dot_h(&self, x: &DivisorClass) -> Int {
        self.dot(x, &self.ample)
    }

    pub fn is_ample(&self, d: &DivisorClass) -> bool {
        self.dot(d, d).is_positive() && self.dot_h(d).is_positive()
    }

    /// Ampleness of a rational class, i.e. of any positive integral multiple.
    pub fn is_ample_q(&self, d: &RationalClass) -> bool {
        self.dot_q(d, d).is_positive() && self.dot_q(d, &self.ample.to_rational()).is_positive()
    }

    /// Effectivity on an abelian surface: (D²) ≥ 0 and (D·H) > 0.
    pub fn is_effective(&self, d: &DivisorClass) -> bool {
        !self.dot(d, d).is_negative() && self.dot_h(d).is_positive()
    }

    pub fn h_split(&self, xi: &DivisorClass) -> HSplit {
        let d = Rat::new(self.dot_h(xi), self.h_square());
        let d_perp = xi.to_rational().sub(&self.ample.to_rational().scale(&d));
        HSplit { d, d_perp }
    }

    /// The H-coefficient d = (ξ·H)/(H²) alone.
    pub(crate) fn h_coeff(&self, xi: &DivisorClass) -> Rat {
        Rat::new(self.dot_h(xi), self.h_square())
    }

    /// An ample class orthogonal to δ, for (δ²) < 0.
    ///
    /// Uses A = (δ·H)δ − (δ²)H, which satisfies (A·δ) = 0,
    /// (A·H) = (δ·H)² − (δ²)(H²) > 0 and (A²) = (δ²)((δ²)(H²) − (δ·H)²) > 0.
    /// The result is reduced to a primitive integral vector.
    pub fn orth_ample(&self, delta: &DivisorClass) -> Result<RationalClass> {
        self.check_len(delta.len())?;
        let dd = self.dot(delta, delta);
        if !dd.is_negative() {
            return Err(Error::pre(
                "negative_square",
                format!("(delta^2) = {dd} is not negative"),
            ));
        }
        let dh = self.dot_h(delta);
        let a = delta.scale(&dh).sub(&self.ample.scale(&dd));
        Ok(a.to_rational().primitive_integral().to_rational())
    }

    /// Ample classes H₊, H₋ near the orthogonal ample class of δ with
    /// (δ·H₊) < 0 < (δ·H₋). ε starts at 1/2 and is halved until both
    /// perturbations are ample.
    pub fn perturbed_pair(&self, delta: &DivisorClass) -> Result<PerturbedPair> {
        let center = self.orth_ample(delta)?;
        let delta_q = delta.to_rational();
        let mut epsilon = Rat::new(int(1), int(2));
        loop {
            let step = delta_q.scale(&epsilon);
            let plus = center.add(&step);
            let minus = center.sub(&step);
            if self.is_ample_q(&plus) && self.is_ample_q(&minus) {
                return Ok(PerturbedPair {
                    center,
                    epsilon,
                    plus,
                    minus,
                });
            }
            epsilon /= int(2);
        }
    }

    /// All primitive D with |coords| ≤ bound, (D²) = 0 and (D·H) > 0, in
    /// decreasing lexicographic order of coordinates.
    pub fn primitive_isotropic_effective(&self, bound: i64) -> Vec<DivisorClass> {
        let mut out: Vec<DivisorClass> = box_points(self.rank(), bound)
            .filter(|d| {
                d.is_primitive() && self.dot(d, d).is_zero() && self.dot_h(d).is_positive()
            })
            .collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// Elliptic curve classes: the supplied list, or the isotropic effective
    /// primitive classes within [`DEFAULT_ELLIPTIC_BOUND`].
    pub fn elliptic_classes(&self) -> Vec<DivisorClass> {
        match &self.elliptic_classes {
            Some(c) => c.clone(),
            None => self.primitive_isotropic_effective(DEFAULT_ELLIPTIC_BOUND),
        }
    }

    pub fn has_supplied_elliptic_classes(&self) -> bool {
        self.elliptic_classes.is_some()
    }

    /// P(x) = 2(x·H)²/(H²) − (x²), positive definite by the Hodge index theorem.
    pub(crate) fn majorant(&self, x: &DivisorClass) -> Rat {
        let xh = rat_int(&self.dot_h(x));
        &xh * &xh * int(2) / rat_int(&self.h_square()) - rat_int(&self.dot(x, x))
    }

    /// max_i (P⁻¹)_ii: a coordinate |c_i| of x is at most sqrt(P(x)·this).
    pub(crate) fn majorant_coordinate_factor(&self) -> Rat {
        let rank = self.rank();
        let gh: Vec<Rat> = (0..rank)
            .map(|i| {
                (0..rank).fold(Rat::zero(), |acc, j| {
                    acc + rat_int(&(&self.gram[i][j] * &self.ample.coords[j]))
                })
            })
            .collect();
        let h2 = rat_int(&self.h_square());
        let p: Vec<Vec<Rat>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| &gh[i] * &gh[j] * int(2) / &h2 - rat_int(&self.gram[i][j]))
                    .collect()
            })
            .collect();
        let inv = invert(&p).expect("majorant is positive definite");
        (0..rank)
            .map(|i| inv[i][i].clone())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Largest coordinate of any x with P(x) ≤ bound_sq.
    pub(crate) fn coordinate_bound(&self, majorant_bound: &Rat) -> Int {
        floor_sqrt(&(majorant_bound * self.majorant_coordinate_factor()))
    }
}

/// Signature (positive, negative, zero) of a symmetric integer matrix by
/// simultaneous row/column reduction over Q.
pub fn signature(gram: &[Vec<Int>]) -> (usize, usize, usize) {
    let diag = congruence_diagonal(gram);
    let pos = diag.iter().filter(|x| x.is_positive()).count();
    let neg = diag.iter().filter(|x| x.is_negative()).count();
    (pos, neg, diag.len() - pos - neg)
}

/// Diagonal of a matrix congruent to `gram` over Q.
pub fn congruence_diagonal(gram: &[Vec<Int>]) -> Vec<Rat> {
    let n = gram.len();
    let mut a: Vec<Vec<Rat>> = gram.iter().map(|r| r.iter().map(rat_int).collect()).collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j; new a[k][k] = 2 a[k][j] != 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        diag.push(pivot.clone());
        if pivot.is_zero() {
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in 0..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in 0..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    diag
}

fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Every integer vector in [−bound, bound]^rank.
pub(crate) fn box_points(rank: usize, bound: i64) -> impl Iterator<Item = DivisorClass> {
    let bound = bound.max(0);
    let mut cur = vec![-bound; rank];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = DivisorClass::from_i64s(&cur);
        done = true;
        for c in cur.iter_mut().rev() {
            if *c < bound {
                *c += 1;
                done = false;
                break;
            }
            *c = -bound;
        }
        Some(out)
    })
}
