//! Blows up G_m at the identity of its special fibre and lifts a morphism through it.

use std::sync::Arc;

use neron::blowup::{neron_blowup, BlowupOptions};
use neron::groebner::{Ideal, Limits};
use neron::hopf::groups::{gm, gm_level};
use neron::hopf::GroupMorphism;
use neron::ring::parse_poly;

fn main() -> neron::Result<()> {
    let lim = Limits::default();
    let g = Arc::new(gm());
    let centre = Ideal::new(g.ring(), vec![parse_poly(g.ring(), "pi")?, parse_poly(g.ring(), "u - 1")?])?;

    let raw = neron_blowup(&g, &centre, &BlowupOptions::default(), &lim)?;
    println!("{}", raw.blown);
    let b = neron_blowup(&g, &centre, &BlowupOptions::normalized(), &lim)?;
    println!("{}", b.blown);
    println!("{}", b.check(&lim)?);

    // G2 -> G_m, u -> 1 + pi^2 x2, is trivial on the special fibre, so it factors.
    let h = Arc::new(gm_level(2));
    let phi = GroupMorphism::parse(&h, &g, &["pi^2*x2 + 1", "pi^2*y2 + 1"])?;
    let lift = b.lift(&phi, &lim)?;
    println!("lift: {}", lift.describe());
    Ok(())
}
