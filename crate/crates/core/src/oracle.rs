//! Naive reference scans, kept independent of the enumerator: plain `i128`
//! arithmetic, a full triple loop over a coefficient box and direct
//! evaluation of the defining equations.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceDescriptor};
use crate::mukai::MukaiVector;
use crate::serde_util;
use crate::walls::TsqWindow;

/// |r|, |a| and every ξ coordinate bounded by `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub bound: u32,
}

impl SearchBox {
    pub fn new(bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::pre("box_positive", "box bound must be at least 1"));
        }
        Ok(SearchBox { bound })
    }

    pub fn contains(&self, u: &MukaiVector) -> bool {
        let b = int(self.bound as i64);
        let inside = |x: &crate::arith::Int| x <= &b && x >= &-&b;
        inside(&u.r) && inside(&u.a) && u.xi.coords().iter().all(inside)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WitnessAt {
    #[serde(with = "serde_util::rat")]
    pub tsq: Rat,
    pub witness: MukaiVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum Crosscheck {
    Agree {
        pairs: Vec<WitnessAt>,
    },
    Disagree {
        only_oracle: Vec<WitnessAt>,
        only_enumerator: Vec<WitnessAt>,
    },
}

impl Crosscheck {
    pub fn agrees(&self) -> bool {
        matches!(self, Crosscheck::Agree { .. })
    }
}

struct Small {
    gram: Vec<Vec<i128>>,
    h: Vec<i128>,
    n: i128,
}

fn ov(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow("oracle arithmetic"))
}

impl Small {
    fn of(s: &SurfaceDescriptor) -> Result<Self> {
        let conv = |x: &crate::arith::Int| x.to_i128().ok_or(Error::Overflow("oracle input"));
        let gram = s
            .gram()
            .iter()
            .map(|row| row.iter().map(conv).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let h = s.ample().coords().iter().map(conv).collect::<Result<Vec<_>>>()?;
        let n = conv(&s.n())?;
        Ok(Small { gram, h, n })
    }

    fn dot(&self, x: &[i128], y: &[i128]) -> Result<i128> {
        let mut acc: i128 = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let t = ov(ov(xi.checked_mul(self.gram[i][j]))?.checked_mul(*yj))?;
                acc = ov(acc.checked_add(t))?;
            }
        }
        Ok(acc)
    }

    /// ⟨x, y⟩ for (r, ξ, a) triples.
    fn pair(&self, x: &(i128, Vec<i128>, i128), y: &(i128, Vec<i128>, i128)) -> Result<i128> {
        let d = self.dot(&x.1, &y.1)?;
        ov(ov(d.checked_sub(ov(x.0.checked_mul(y.2))?))?.checked_sub(ov(y.0.checked_mul(x.2))?))
    }
}

fn small(v: &MukaiVector) -> Result<(i128, Vec<i128>, i128)> {
    let conv = |x: &crate::arith::Int| x.to_i128().ok_or(Error::Overflow("oracle input"));
    Ok((
        conv(&v.r)?,
        v.xi.coords().iter().map(conv).collect::<Result<Vec<_>>>()?,
        conv(&v.a)?,
    ))
}

fn big(u: &(i128, Vec<i128>, i128)) -> MukaiVector {
    let i = |x: i128| crate::arith::Int::from(x);
    MukaiVector::new(i(u.0), DivisorClass::new(u.1.iter().map(|&x| i(x)).collect()), i(u.2))
}

/// Every u in the box with ⟨u²⟩ = 0 and ⟨v, u⟩ = 1, sorted.
pub fn brute_force_i1(s: &SurfaceDescriptor, v: &MukaiVector, bx: SearchBox) -> Result<Vec<MukaiVector>> {
    s.check_vector(v)?;
    let sm = Small::of(s)?;
    let vs = small(v)?;
    let b = bx.bound as i128;
    let rank = s.rank();
    let mut out = Vec::new();
    let mut xi = vec![-b; rank];
    loop {
        for r in -b..=b {
            for a in -b..=b {
                let u = (r, xi.clone(), a);
                if sm.pair(&u, &u)? == 0 && sm.pair(&vs, &u)? == 1 {
                    out.push(big(&u));
                }
            }
        }
        let mut k = rank;
        loop {
            if k == 0 {
                out.sort();
                return Ok(out);
            }
            k -= 1;
            if xi[k] < b {
                xi[k] += 1;
                break;
            }
            xi[k] = -b;
        }
    }
}

/// t² of the wall of u for v, or None when it misses the line.
fn position(sm: &Small, v: &(i128, Vec<i128>, i128), u: &(i128, Vec<i128>, i128)) -> Result<Option<Rat>> {
    let e = sm.dot(&v.1, &sm.h)?;
    let eu = sm.dot(&u.1, &sm.h)?;
    let num = ov(ov(u.2.checked_mul(e))?.checked_sub(ov(v.2.checked_mul(eu))?))?;
    let den = ov(ov(u.0.checked_mul(e))?.checked_sub(ov(v.0.checked_mul(eu))?))?;
    if den == 0 {
        return Ok(None);
    }
    let den = ov(den.checked_mul(sm.n))?;
    if (num > 0) != (den > 0) || num == 0 {
        return Ok(None);
    }
    Ok(Some(Rat::new(num.into(), den.into())))
}

/// Compares the oracle's (t², witness) pairs with the enumerator's at
/// radius = box bound, restricted to witnesses inside the box.
pub fn crosscheck_walls(
    s: &SurfaceDescriptor,
    v: &MukaiVector,
    window: &TsqWindow,
    bx: SearchBox,
) -> Result<Crosscheck> {
    let sm = Small::of(s)?;
    let vs = small(v)?;
    let mut oracle = BTreeSet::new();
    if sm.dot(&vs.1, &sm.h)? > 0 {
        for u in brute_force_i1(s, v, bx)? {
            if let Some(tsq) = position(&sm, &vs, &small(&u)?)? {
                if window.contains(&tsq) {
                    oracle.insert(WitnessAt { tsq, witness: u });
                }
            }
        }
    }
    let en = s.enumerate_walls(v, window, bx.bound as u64)?;
    let mut enumerated = BTreeSet::new();
    for w in &en.walls {
        for u in w.witnesses.iter().filter(|u| bx.contains(u)) {
            enumerated.insert(WitnessAt {
                tsq: w.tsq.clone(),
                witness: u.clone(),
            });
        }
    }
    if oracle == enumerated {
        Ok(Crosscheck::Agree {
            pairs: oracle.into_iter().collect(),
        })
    } else {
        Ok(Crosscheck::Disagree {
            only_oracle: oracle.difference(&enumerated).cloned().collect(),
            only_enumerator: enumerated.difference(&oracle).cloned().collect(),
        })
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

    #[test]
    fn exceptional_box() {
        let l2 = surfaces::product_elliptic();
        let v = mv(2, &[0, 5], -1);
        let hits = brute_force_i1(&l2, &v, SearchBox::new(6).unwrap()).unwrap();
        for y in -6..=6 {
            assert!(hits.contains(&mv(1, &[0, y], 0)));
        }
        assert!(!hits.contains(&mv(0, &[0, 1], -1)));
        assert!(brute_force_i1(&l2, &mv(2, &[0, 4], -2), SearchBox::new(6).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rank_one_box() {
        let l1 = surfaces::rank_one();
        let hits = brute_force_i1(&l1, &mv(1, &[1], 0), SearchBox::new(8).unwrap()).unwrap();
        assert_eq!(hits, vec![mv(0, &[0], -1), mv(1, &[1], 1)]);
    }

    #[test]
    fn crosschecks() {
        let l2 = surfaces::product_elliptic();
        let w = TsqWindow::new(rat(0, 1), Some(rat(10, 1))).unwrap();
        match crosscheck_walls(&l2, &mv(2, &[0, 5], -1), &w, SearchBox::new(12).unwrap()).unwrap() {
            Crosscheck::Agree { pairs } => {
                let ts: BTreeSet<Rat> = pairs.iter().map(|p| p.tsq.clone()).collect();
                assert_eq!(ts, [rat(2, 1), rat(1, 3)].into_iter().collect());
            }
            d => panic!("{d:?}"),
        }
        let l1 = surfaces::rank_one();
        assert_eq!(
            crosscheck_walls(&l1, &mv(2, &[2], 1), &w, SearchBox::new(10).unwrap()).unwrap(),
            Crosscheck::Agree { pairs: vec![] }
        );
        let c = crosscheck_walls(&l2, &mv(1, &[0, 5], -2), &TsqWindow::unbounded(), SearchBox::new(10).unwrap())
            .unwrap();
        assert!(c.agrees());
        assert!(SearchBox::new(0).is_err());
    }
}
