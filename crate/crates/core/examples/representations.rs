//! The blown-up representation [[u, (u - 1)/pi], [0, 1]] of G_m and its conjugation identity.

use std::sync::Arc;

use neron::blowup::{neron_blowup, BlowupOptions};
use neron::groebner::Limits;
use neron::hopf::groups::gm;
use neron::reps::{conjugation_check, identity_blowup_rep, RepMatrix};
use neron::ring::Poly;

fn main() -> neron::Result<()> {
    let lim = Limits::default();
    let g = Arc::new(gm());
    let v = RepMatrix::parse(&g, &[vec!["u"]], Some("v"), &lim)?;
    println!("V = {v}, valid: {}", v.validate(&lim)?.passed());

    let centre = g.augmentation_ideal().extend(&[Poly::pi(g.ring())])?;
    let b = neron_blowup(&g, &centre, &BlowupOptions::default(), &lim)?;
    let out = identity_blowup_rep(&v, &b, &lim)?;
    println!("{}", out.render(|p| b.fraction_string(p, &lim).unwrap_or_else(|e| e.to_string())));
    println!("over {}: {out}", b.blown.name());
    print!("{}", conjugation_check(&v, &out, &b, &lim)?);
    println!("faithful: {:?}", out.verify_faithful(&lim)?);
    Ok(())
}
