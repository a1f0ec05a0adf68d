//! The wall enumerator against a brute-force scan of a coefficient box.

use fmstab::oracle::{brute_force_i1, crosscheck_walls};
use fmstab::{surfaces, Crosscheck, MukaiVector, SearchBox, TsqWindow};

fn main() -> fmstab::Result<()> {
    let bx = SearchBox::new(8)?;
    let l2 = surfaces::product_elliptic();
    let v = MukaiVector::from_i64s(2, &[0, 5], -1);
    let hits = brute_force_i1(&l2, &v, bx)?;
    println!("({v}): {} isotropic u with <v,u> = 1 in the box", hits.len());

    for (s, v) in [
        (surfaces::product_elliptic(), v),
        (surfaces::product_elliptic(), MukaiVector::from_i64s(3, &[1, 4], -2)),
        (surfaces::rank_one(), MukaiVector::from_i64s(3, &[2], -1)),
        (surfaces::no_elliptic_rank_two(), MukaiVector::from_i64s(2, &[2, 1], -1)),
    ] {
        match crosscheck_walls(&s, &v, &TsqWindow::unbounded(), bx)? {
            Crosscheck::Agree { pairs } => println!("{:<12} ({v}): agree on {} pairs", s.name(), pairs.len()),
            Crosscheck::Disagree { only_oracle, only_enumerator } => println!(
                "{:<12} ({v}): DISAGREE, oracle only {only_oracle:?}, enumerator only {only_enumerator:?}",
                s.name()
            ),
        }
    }
    Ok(())
}
