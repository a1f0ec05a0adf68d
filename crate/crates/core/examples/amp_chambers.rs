//! Walls in the ample cone that could separate Gieseker chambers for v.

use fmstab::{surfaces, AmpIrreducibility, MukaiVector};

fn main() -> fmstab::Result<()> {
    let l2 = surfaces::product_elliptic();
    for v in [
        MukaiVector::from_i64s(2, &[1, 1], 0),
        MukaiVector::from_i64s(2, &[1, 3], 1),
        MukaiVector::from_i64s(2, &[2, 2], 1),
    ] {
        match l2.amp_irreducibility_check(&v, 12)? {
            AmpIrreducibility::Irreducible => println!("({v}): <v^2> >= 2r, no chamber walls"),
            AmpIrreducibility::IrreducibleWithinRadius => println!("({v}): no chamber walls within radius"),
            AmpIrreducibility::PossiblySeparated(ws) => {
                println!("({v}): {} candidate wall(s)", ws.len());
                for w in ws {
                    println!(
                        "    ({}) + ({})  delta = ({})  (delta^2) = {}  orthogonal ample ({})",
                        w.v1, w.v2, w.delta, w.delta_square, w.orthogonal_ample
                    );
                }
            }
        }
    }
    Ok(())
}
