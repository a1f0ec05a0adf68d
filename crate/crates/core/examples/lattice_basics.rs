//! Néron–Severi lattices: validation, signature, the H-splitting of a class
//! and isotropic (elliptic) classes.

use fmstab::arith::fmt_rat;
use fmstab::lattice::{congruence_diagonal, signature};
use fmstab::{surfaces, DivisorClass, SurfaceDescriptor};

fn main() -> fmstab::Result<()> {
    for s in [
        surfaces::rank_one(),
        surfaces::product_elliptic(),
        surfaces::self_product(),
        surfaces::no_elliptic_rank_two(),
    ] {
        let (pos, neg, zero) = signature(s.gram());
        let diag: Vec<String> = congruence_diagonal(s.gram()).iter().map(fmt_rat).collect();
        println!(
            "{:<13} rank {}  (H^2) = {}  signature ({pos},{neg},{zero})  diagonal [{}]",
            s.name(),
            s.rank(),
            s.h_square(),
            diag.join(", ")
        );
        let iso: Vec<String> = s.primitive_isotropic_effective(2).iter().map(|c| format!("({c})")).collect();
        println!("    primitive isotropic effective classes, |coords| <= 2: {}", iso.join(" "));
    }

    let l2 = surfaces::product_elliptic();
    let xi = l2.class(&[1, 2])?;
    let split = l2.h_split(&xi);
    println!("\nC1 + 2C2 = {} H + ({})", fmt_rat(&split.d), split.d_perp);
    println!("C1 + 2C2 ample: {}", l2.is_ample(&xi));
    println!("C1 - C2 ample: {}", l2.is_ample(&DivisorClass::from_i64s(&[1, -1])));

    let delta = DivisorClass::from_i64s(&[1, -1]);
    let pair = l2.perturbed_pair(&delta)?;
    println!(
        "around delta = ({delta}): H0 = ({}), H+ = ({}), H- = ({}), eps = {}",
        pair.center,
        pair.plus,
        pair.minus,
        fmt_rat(&pair.epsilon)
    );

    let bad = SurfaceDescriptor::new("definite", &[vec![2, 0], vec![0, 2]], &[1, 0]);
    println!("\npositive definite form: {}", bad.unwrap_err());
    let odd = SurfaceDescriptor::new("odd", &[vec![1]], &[1]);
    println!("odd form: {}", odd.unwrap_err());
    Ok(())
}
