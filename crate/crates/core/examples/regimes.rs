//! Crossing classes along the line and the thresholds t1 >= t2, for a vector
//! and for its dual.

use fmstab::arith::fmt_rat;
use fmstab::{surfaces, MukaiVector, RegimeReport};

fn show(r: &RegimeReport) {
    println!("  ({})  transform {:?}", r.vector, r.transform);
    for w in &r.walls {
        for a in &w.analyses {
            let fm = a.fm_case.map_or("-".to_string(), |t| t.to_string());
            println!(
                "    t^2 = {:<5} witness ({})  v1 = ({}) x{}  v2 = ({}) x{}  {}  FM {fm}",
                fmt_rat(w.tsq()),
                a.witness,
                a.roles.v1,
                a.roles.ell1,
                a.roles.v2,
                a.roles.ell2,
                a.crossing
            );
        }
        println!("      below: {}", w.regime_below);
    }
    let t1 = r.t1sq.as_ref().map_or("n/a".into(), fmt_rat);
    println!("    t1^2 = {t1}, t2^2 = {}", fmt_rat(&r.t2sq));
}

fn main() -> fmstab::Result<()> {
    let l2 = surfaces::product_elliptic();
    for v in [
        MukaiVector::from_i64s(2, &[0, 5], -1),
        MukaiVector::from_i64s(1, &[1, 2], 1),
        MukaiVector::from_i64s(1, &[0, 4], -1),
    ] {
        println!("v = ({v})");
        show(&l2.compute_regimes(&v, 12)?);
        println!(" dual side");
        show(&l2.dual_regimes(&v, 12)?);
    }
    Ok(())
}
