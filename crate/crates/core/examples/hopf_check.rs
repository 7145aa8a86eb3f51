//! Verifies the Hopf axioms for a few standard groups and prints their special fibres.

use neron::groebner::Limits;
use neron::hopf::groups::{gl2, gm_level, mu2};

fn main() -> neron::Result<()> {
    let lim = Limits::default();
    for g in [gl2(), mu2(), gm_level(2)] {
        let report = g.check_hopf(&lim)?;
        println!("{g}");
        println!("hopf: {}, flat: {}", report.passed(), g.check_flat(&lim)?);
        println!("special fibre:\n{}\n", g.special_fibre(&lim)?);
    }
    Ok(())
}
