//! Automatic truncations of G_a and G_m, and the standard sequence of G_a,3 -> G_a.

use std::sync::Arc;

use neron::blowup::{automatic_member, automatic_truncation, standard_sequence};
use neron::groebner::Limits;
use neron::hopf::groups::{gm, named_ga};
use neron::hopf::GroupMorphism;
use neron::ring::parse_poly;

fn main() -> neron::Result<()> {
    let lim = Limits::default();
    let ga = Arc::new(named_ga("Ga", "x0"));
    for n in 1..=3 {
        let b = automatic_truncation(&ga, n, &lim)?;
        println!("{}\nx0 -> {}\n", b.blown, b.projection.pull(&parse_poly(ga.ring(), "x0")?)?);
    }
    for (num, m) in [("x0", 5), ("x0 + 1", 1)] {
        let f = parse_poly(ga.ring(), num)?;
        println!("({num})/pi^{m} automatic: {}", automatic_member(&ga, &f, m)?);
    }

    let b = automatic_truncation(&Arc::new(gm()), 2, &lim)?;
    println!("\n{}", b.blown);

    let ga3 = Arc::new(named_ga("Ga_3", "x3"));
    let rho = GroupMorphism::parse(&ga3, &ga, &["pi^3*x3"])?;
    let seq = standard_sequence(&rho, 3, &lim)?;
    for (i, s) in seq.stages.iter().enumerate() {
        println!("stage {i}: {} centre {}", s.group.name(), s.centre);
    }
    println!("stabilized: {}", seq.stabilized(&lim)?);
    Ok(())
}
