//! Inequalities relating the decompositions at two adjacent totally
//! semistable walls t₀² < t₀′² of the same vector. Unprimed quantities come
//! from the lower wall, primed ones from the upper wall.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rat, rat_int, Rat};
use crate::error::{Error, Result};
use crate::lattice::SurfaceDescriptor;
use crate::mukai::MukaiVector;
use crate::regime::RolePair;
use crate::serde_util;
use crate::walls::{TsqWindow, WallOnLine};

/// One evaluated inequality or identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    /// The evaluated sides, left to right as in `statement`.
    #[serde(with = "serde_util::rat_vec")]
    pub values: Vec<Rat>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub v: MukaiVector,
    #[serde(with = "serde_util::rat")]
    pub low_tsq: Rat,
    #[serde(with = "serde_util::rat")]
    pub high_tsq: Rat,
    pub low_roles: RolePair,
    pub high_roles: RolePair,
    pub checks: Vec<Check>,
    pub all_hold: bool,
    /// Whether adjacency was established by a certified enumeration.
    pub certified: bool,
}

impl CheckReport {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// r, d and a of one piece.
struct Piece {
    r: Rat,
    d: Rat,
    a: Rat,
}

fn check(id: &str, statement: &str, values: Vec<Rat>, holds: bool) -> Check {
    Check {
        id: id.to_string(),
        statement: statement.to_string(),
        values,
        holds,
    }
}

fn chain(id: &str, statement: &str, x: Rat, y: Rat) -> Check {
    let holds = x > y && y.is_positive();
    check(id, statement, vec![x, y, Rat::zero()], holds)
}

impl SurfaceDescriptor {
    fn piece(&self, p: &MukaiVector) -> Piece {
        Piece {
            r: rat_int(&p.r),
            d: self.h_coeff(&p.xi),
            a: rat_int(&p.a),
        }
    }

    /// Verifies the inequalities between the walls `low` and `high` of v.
    /// Both must be enumerated walls of v with no enumerated wall between
    /// them at the given radius.
    pub fn appendix_verify(
        &self,
        v: &MukaiVector,
        low: &WallOnLine,
        high: &WallOnLine,
        radius: u64,
    ) -> Result<CheckReport> {
        self.check_vector(v)?;
        if low.tsq >= high.tsq {
            return Err(Error::pre(
                "wall_order",
                format!("low wall {} is not below high wall {}", low.tsq, high.tsq),
            ));
        }
        let en = self.enumerate_tss_walls_line(v, &TsqWindow::unbounded(), radius)?;
        for w in [low, high] {
            if !en.walls.iter().any(|e| e.tsq == w.tsq) {
                return Err(Error::pre(
                    "enumerated_wall",
                    format!("t^2 = {} is not a wall of {v} within radius {radius}", w.tsq),
                ));
            }
        }
        let between = en
            .walls
            .iter()
            .filter(|w| w.tsq > low.tsq && w.tsq < high.tsq)
            .count();
        if between > 0 {
            return Err(Error::NotAdjacent {
                low: fmt_rat(&low.tsq),
                high: fmt_rat(&high.tsq),
                between,
            });
        }
        let lr = self.assign_roles(v, &self.tss_decompose(v, &low.decomposition.u)?)?;
        let hr = self.assign_roles(v, &self.tss_decompose(v, &high.decomposition.u)?)?;
        Ok(self.evaluate(v, low, high, lr, hr, en.certified))
    }

    /// Runs `appendix_verify` on every adjacent pair of walls of v.
    pub fn appendix_verify_all(&self, v: &MukaiVector, radius: u64) -> Result<Vec<CheckReport>> {
        let en = self.enumerate_tss_walls_line(v, &TsqWindow::unbounded(), radius)?;
        let mut out = Vec::new();
        for pair in en.walls.windows(2) {
            let (high, low) = (&pair[0], &pair[1]);
            let lr = self.assign_roles(v, &low.decomposition)?;
            let hr = self.assign_roles(v, &high.decomposition)?;
            out.push(self.evaluate(v, low, high, lr, hr, en.certified));
        }
        Ok(out)
    }

    fn evaluate(
        &self,
        v: &MukaiVector,
        low: &WallOnLine,
        high: &WallOnLine,
        lr: RolePair,
        hr: RolePair,
        certified: bool,
    ) -> CheckReport {
        let (p1, p2) = (self.piece(&lr.v1), self.piece(&lr.v2));
        let (q1, q2) = (self.piece(&hr.v1), self.piece(&hr.v2));
        let (l1, l2) = (rat_int(&lr.ell1), rat_int(&lr.ell2));
        let (m1, m2) = (rat_int(&hr.ell1), rat_int(&hr.ell2));
        let ell = &l1 * &l2;
        let mut checks = Vec::new();

        let dd1 = &p1.r * &q1.d - &q1.r * &p1.d;
        checks.push(check("a.1", "r1 d1' - r1' d1 > 0", vec![dd1.clone(), Rat::zero()], dd1.is_positive()));
        let dd2 = &q2.r * &p2.d - &p2.r * &q2.d;
        let both_torsion = p2.r.is_zero() && q2.r.is_zero();
        let ok2 = if both_torsion { !dd2.is_negative() } else { dd2.is_positive() };
        checks.push(check(
            "a.2",
            "r2' d2 - r2 d2' >= 0, strict unless r2 = r2' = 0",
            vec![dd2.clone(), Rat::zero()],
            ok2,
        ));

        let rl = &p1.r * &p2.d - &p2.r * &p1.d;
        let rh = &q1.r * &q2.d - &q2.r * &q1.d;
        checks.push(chain("b", "r1 d2 - r2 d1 > r1' d2' - r2' d1' > 0", rl.clone(), rh.clone()));

        let lhs = &ell * (&rl - &rh);
        let rhs = &l1 * &m1 * &dd1 + &l2 * &m2 * &dd2;
        let eq = lhs == rhs;
        checks.push(check(
            "c",
            "l (r1 d2 - r2 d1) - l (r1' d2' - r2' d1') = l1 l1' (r1 d1' - r1' d1) + l2 l2' (d2 r2' - r2 d2')",
            vec![lhs, rhs],
            eq,
        ));

        let e1 = &q1.a * &p1.d - &p1.a * &q1.d;
        let e2 = &p2.a * &q2.d - &q2.a * &p2.d;
        if v.a.is_positive() {
            checks.push(check("d.1", "a > 0: a1' d1 - a1 d1' > 0", vec![e1.clone(), Rat::zero()], e1.is_positive()));
            checks.push(check("d.2", "a > 0: a2 d2' - a2' d2 >= 0", vec![e2.clone(), Rat::zero()], !e2.is_negative()));
        } else {
            checks.push(check("d.1", "a <= 0: a1' d1 - a1 d1' >= 0", vec![e1.clone(), Rat::zero()], !e1.is_negative()));
            checks.push(check("d.2", "a <= 0: a2 d2' - a2' d2 > 0", vec![e2.clone(), Rat::zero()], e2.is_positive()));
        }
        let ah = &q1.a * &q2.d - &q2.a * &q1.d;
        let al = &p1.a * &p2.d - &p2.a * &p1.d;
        checks.push(chain("d.3", "a1' d2' - a2' d1' > a1 d2 - a2 d1 > 0", ah.clone(), al.clone()));
        let lhs = &ell * (&ah - &al);
        let rhs = &l1 * &m1 * &e1 + &l2 * &m2 * &e2;
        let eq = lhs == rhs;
        checks.push(check(
            "d.4",
            "l (a1' d2' - a2' d1') - l (a1 d2 - a2 d1) = l1 l1' (a1' d1 - a1 d1') + l2 l2' (d2' a2 - a2' d2)",
            vec![lhs, rhs],
            eq,
        ));

        let named = [("v1", &lr.v1), ("v2", &lr.v2), ("v1'", &hr.v1), ("v2'", &hr.v2)];
        for i in 0..named.len() {
            for j in i + 1..named.len() {
                let (ni, x) = named[i];
                let (nj, y) = named[j];
                let (i_, j_) = (&ni[1..], &nj[1..]);
                let (l, r) = self
                    .mukai_uu_identity(x, y)
                    .expect("decomposition pieces are isotropic");
                let eq = l == r;
                checks.push(check(
                    &format!("e.{ni},{nj}"),
                    &format!(
                        "d{i_} d{j_} <{ni},{nj}> = -((d{j_} D{i_} - d{i_} D{j_})^2)/2 + (d{j_} r{i_} - d{i_} r{j_})(d{j_} a{i_} - d{i_} a{j_})"
                    ),
                    vec![l, r],
                    eq,
                ));
            }
        }

        let all_hold = checks.iter().all(|c| c.holds);
        CheckReport {
            v: v.clone(),
            low_tsq: low.tsq.clone(),
            high_tsq: high.tsq.clone(),
            low_roles: lr,
            high_roles: hr,
            checks,
            all_hold,
            certified,
        }
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
    fn exceptional_pair() {
        let l2 = surfaces::product_elliptic();
        let v = mv(2, &[0, 5], -1);
        let en = l2.enumerate_tss_walls_line(&v, &TsqWindow::unbounded(), 12).unwrap();
        let rep = l2.appendix_verify(&v, &en.walls[1], &en.walls[0], 12).unwrap();
        assert!(rep.all_hold, "{rep:?}");
        assert_eq!(rep.check("b").unwrap().values, vec![rat(3, 2), rat(1, 2), rat(0, 1)]);
        assert_eq!(rep.check("d.3").unwrap().values, vec![rat(1, 1), rat(1, 2), rat(0, 1)]);
        assert_eq!(rep.check("a.1").unwrap().values[0], rat(1, 2));
        assert_eq!(rep.check("a.2").unwrap().values[0], rat(0, 1));
        assert_eq!(rep.check("d.4").unwrap().values, vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(rep.checks.iter().filter(|c| c.id.starts_with("e.")).count(), 6);

        let all = l2.appendix_verify_all(&v, 12).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], rep);
    }

    #[test]
    fn rejects_bad_pairs() {
        let l2 = surfaces::product_elliptic();
        let v = mv(2, &[0, 5], -1);
        let en = l2.enumerate_tss_walls_line(&v, &TsqWindow::unbounded(), 12).unwrap();
        assert!(l2.appendix_verify(&v, &en.walls[0], &en.walls[1], 12).is_err());
        let mut fake = en.walls[0].clone();
        fake.tsq = rat(5, 1);
        assert!(l2.appendix_verify(&v, &en.walls[0], &fake, 12).is_err());

        let v = mv(1, &[0, 4], -1);
        let en = l2.enumerate_tss_walls_line(&v, &TsqWindow::unbounded(), 12).unwrap();
        assert_eq!(en.positions(), vec![rat(3, 1), rat(1, 1), rat(1, 3)]);
        assert_eq!(
            l2.appendix_verify(&v, &en.walls[2], &en.walls[0], 12),
            Err(Error::NotAdjacent {
                low: "1/3".into(),
                high: "3/1".into(),
                between: 1
            })
        );
        assert!(l2.appendix_verify(&v, &en.walls[2], &en.walls[1], 12).unwrap().all_hold);
    }
}
