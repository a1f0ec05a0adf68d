//! The Mukai lattice: pairing, Fourier–Mukai images, twists and the
//! isotropic decomposition identity.

use fmstab::{surfaces, MukaiVector};

fn main() -> fmstab::Result<()> {
    let l2 = surfaces::product_elliptic();
    let v = l2.mukai(2, &[0, 5], -1)?;
    let pt = l2.mukai(0, &[0, 0], 1)?;
    let o = l2.mukai(1, &[0, 0], 0)?;

    println!("<O, pt> = {}", l2.pairing(&o, &pt)?);
    println!("<v^2> = {} for v = ({v}), so l = {}", l2.square(&v), l2.ell_of(&v)?);

    let phi = v.fm_transform();
    println!("Phi(v) = ({phi}), <Phi(v)^2> = {}", l2.square(&phi));
    println!("dual = ({}), shifted = ({})", v.fm_dual(), v.fm_shift());

    let eta = l2.twist_class(&[1, 0])?;
    let tv = l2.twist(&v, &eta);
    println!("e^C1 v = ({tv}), <(e^C1 v)^2> = {}", l2.square(&tv));

    let u1 = MukaiVector::from_i64s(1, &[0, 1], 0);
    let u2 = MukaiVector::from_i64s(0, &[0, 3], -1);
    let (lhs, rhs) = l2.mukai_uu_identity(&u1, &u2)?;
    println!("isotropic pair ({u1}), ({u2}): d1 d2 <u1,u2> = {lhs}, right side = {rhs}");

    for u in [MukaiVector::from_i64s(0, &[1, 0], 0), MukaiVector::from_i64s(2, &[2, 1], 1)] {
        println!("({u}) is isotropic: {}; shift class {:?}", l2.is_isotropic(&u), l2.classify_isotropic_shift(&u)?);
    }
    Ok(())
}
