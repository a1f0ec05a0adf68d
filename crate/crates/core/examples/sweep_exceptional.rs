//! Verdicts over the family (l, kC2, -1), the same loop the `sweep`
//! subcommand runs.

use fmstab::cli::{execute, Cli};
use fmstab::report::Payload;
use clap::Parser;

fn main() {
    let cli = Cli::parse_from([
        "fmstab", "sweep", "--surface", "product", "--template", "l;0,k;-1", "--var", "l=1..4", "--var", "k=2..9",
    ]);
    let rep = execute(&cli.command).expect("sweep runs");
    let Payload::Sweep(rows) = &rep.payload else { unreachable!() };
    println!("{:<12} {:<26} {:<10} {:>6} {:>6}", "v", "status", "case", "t1^2", "walls");
    for r in rows {
        let t1 = r.t1sq.as_ref().map_or("-".to_string(), |t| t.to_string());
        println!(
            "{:<12} {:<26} {:<10} {:>6} {:>6}",
            r.v.to_string(),
            r.status,
            r.case.as_deref().unwrap_or("-"),
            t1,
            r.walls
        );
    }
}
