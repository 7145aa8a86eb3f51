//! The diptych and triptych of the blowup morphism G1 -> G_m.

use std::sync::Arc;

use neron::groebner::Limits;
use neron::hopf::groups::{gm, gm_level};
use neron::hopf::GroupMorphism;
use neron::images::{check_unipotent_kernel, image_hopf, triptych};

fn main() -> neron::Result<()> {
    let lim = Limits::default();
    let g1 = Arc::new(gm_level(1));
    let g = Arc::new(gm());
    let rho = GroupMorphism::parse(&g1, &g, &["pi*x1 + 1", "pi*y1 + 1"])?;

    let im = image_hopf(&rho, &lim)?;
    println!("{im:?}\n");

    let t = triptych(&rho, 4, &lim)?;
    println!("Psi'_k:\n{}", t.psi_prime_k.minimal);
    println!("Im(rho_k):\n{}", t.im_rho_k.minimal);
    println!("Psi_k:\n{}", t.psi_k.minimal);
    let (kernel, verdict) = check_unipotent_kernel(&t, 4, &lim)?;
    println!("kernel:\n{kernel}\n{verdict:?}");
    Ok(())
}
