//! Totally semistable walls on the line (0, tH), with the central charge
//! checked at each wall.

use fmstab::arith::{fmt_rat, rat};
use fmstab::{surfaces, MukaiVector, TsqWindow};

fn main() -> fmstab::Result<()> {
    let l2 = surfaces::product_elliptic();
    let window = TsqWindow::new(rat(0, 1), Some(rat(10, 1)))?;
    for v in [
        MukaiVector::from_i64s(2, &[0, 5], -1),
        MukaiVector::from_i64s(1, &[0, 5], -2),
        MukaiVector::from_i64s(1, &[1, 2], 1),
    ] {
        let en = l2.enumerate_tss_walls_line(&v, &window, 12)?;
        println!(
            "v = ({v}): {} wall(s), search radius {} (required {}), certified {}",
            en.walls.len(),
            en.radius,
            en.required_radius,
            en.certified
        );
        for w in &en.walls {
            let u = &w.decomposition.u;
            let zv = l2.charge_line(&v, &w.tsq)?;
            let zu = l2.charge_line(u, &w.tsq)?;
            println!(
                "    t^2 = {:<5} u = ({u})  v = {} u + ({})  Z(v) = {} + {} i t, Z(u) = {} + {} i t",
                fmt_rat(&w.tsq),
                w.decomposition.ell,
                w.decomposition.w,
                fmt_rat(&zv.re),
                fmt_rat(&zv.im_coeff),
                fmt_rat(&zu.re),
                fmt_rat(&zu.im_coeff)
            );
        }
    }

    let l1 = surfaces::rank_one();
    let v = MukaiVector::from_i64s(1, &[1], 0);
    let en = l1.enumerate_tss_walls_line(&v, &window, 10)?;
    println!("rank one, v = ({v}): {} walls", en.walls.len());
    Ok(())
}
