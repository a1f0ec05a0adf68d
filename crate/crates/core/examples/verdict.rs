//! Does the Fourier–Mukai transform take a general stable sheaf to a stable
//! sheaf (up to shift)?

use fmstab::{surfaces, AmpleWitness, MukaiVector, Status, SurfaceDescriptor};

fn report(s: &SurfaceDescriptor, v: MukaiVector) -> fmstab::Result<()> {
    let vd = s.decide_preservation(&v, 12)?;
    print!("{:<12} ({v}): {}", s.name(), vd.status.name());
    match &vd.status {
        Status::NotPreservedGenerically { case } => print!(" [{}]", case.name()),
        Status::PreservedWithSomeLL { witness: Some(AmpleWitness::GiesekerChamber { l }) } => print!(" L = ({l})"),
        Status::PreservedWithSomeLL { witness: Some(AmpleWitness::PerturbedPair { l, wall_tsq, .. }) } => {
            print!(" L = ({l}) from the wall at t^2 = {wall_tsq}")
        }
        Status::Inconclusive { reason } => print!(" ({reason})"),
        _ => {}
    }
    print!("  shift {:?}", vd.shift);
    if let Some(b) = vd.corollary {
        print!("  corollary {b:?}");
    }
    let notes: Vec<&str> = vd.exceptional.iter().map(|c| c.name()).collect();
    if !notes.is_empty() {
        print!("  shapes {notes:?}");
    }
    println!();
    Ok(())
}

fn main() -> fmstab::Result<()> {
    let l1 = surfaces::rank_one();
    let l2 = surfaces::product_elliptic();
    report(&l2, MukaiVector::from_i64s(2, &[0, 5], -1))?;
    report(&l2, MukaiVector::from_i64s(1, &[1, 2], 1))?;
    report(&l2, MukaiVector::from_i64s(1, &[1, 2], -1))?;
    report(&l2, MukaiVector::from_i64s(1, &[0, 4], -3))?;
    report(&l2, MukaiVector::from_i64s(3, &[2, 2], -1))?;
    report(&l1, MukaiVector::from_i64s(2, &[2], 1))?;
    report(&l1, MukaiVector::from_i64s(1, &[1], -1))?;
    report(&surfaces::no_elliptic_rank_two(), MukaiVector::from_i64s(2, &[1, 0], -1))?;
    Ok(())
}
