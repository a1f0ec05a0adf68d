//! Inequalities between the decompositions at two adjacent walls.

use fmstab::arith::fmt_rat;
use fmstab::{surfaces, MukaiVector};

fn main() -> fmstab::Result<()> {
    let l2 = surfaces::product_elliptic();
    for v in [MukaiVector::from_i64s(2, &[0, 5], -1), MukaiVector::from_i64s(1, &[0, 5], -1)] {
        println!("v = ({v})");
        for rep in l2.appendix_verify_all(&v, 12)? {
            println!(
                "  walls {} < {}: low ({}) + ({}), high ({}) + ({})",
                fmt_rat(&rep.low_tsq),
                fmt_rat(&rep.high_tsq),
                rep.low_roles.v1,
                rep.low_roles.v2,
                rep.high_roles.v1,
                rep.high_roles.v2
            );
            for c in &rep.checks {
                let vals: Vec<String> = c.values.iter().map(fmt_rat).collect();
                println!("    {:<9} {:<5} [{}]", c.id, c.holds, vals.join(", "));
            }
        }
    }
    Ok(())
}
