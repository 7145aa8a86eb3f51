use std::sync::Arc;

use super::*;
use crate::blowup::{automatic_truncation, neron_blowup, BlowupOptions, BlowupResult};
use crate::hopf::groups::{ga, gm, mu2, named_ga, trivial};
use crate::ring::parse_poly;

fn lim() -> Limits {
    Limits::default()
}

fn gm_blowup() -> BlowupResult {
    let g = Arc::new(gm());
    let c = Ideal::new(g.ring(), vec![Poly::pi(g.ring()), parse_poly(g.ring(), "u - 1").unwrap()]).unwrap();
    neron_blowup(&g, &c, &BlowupOptions::default(), &lim()).unwrap()
}

#[test]
fn image_of_the_blowup_is_everything() {
    let b = gm_blowup();
    let im = image_hopf(&b.projection, &lim()).unwrap();
    assert!(im.psi.compare(&gm(), &[], &lim()).unwrap().passed());
    let id = GroupMorphism::identity(&b.original);
    assert!(image_hopf(&id, &lim()).unwrap().psi.compare(&gm(), &[], &lim()).unwrap().passed());
}

#[test]
fn image_of_the_unit_section() {
    let e = Arc::new(trivial());
    let g = Arc::new(gm());
    let rho = GroupMorphism::parse(&e, &g, &["1", "1"]).unwrap();
    let im = image_hopf(&rho, &lim()).unwrap();
    let want = Ideal::new(g.ring(), vec![parse_poly(g.ring(), "u - 1").unwrap(), parse_poly(g.ring(), "v - 1").unwrap()]).unwrap();
    assert!(im.psi.relations().equals(&want, &lim()).unwrap());
    assert!(im.psi.check_hopf(&lim()).unwrap().passed());
}

#[test]
fn diptych_of_the_blowup() {
    let b = gm_blowup();
    let d = saturated_image(&b.projection, 4, &lim()).unwrap();
    assert!(d.stabilized);
    assert_eq!(d.stages.len(), 2);
    let iso = d.to_psi_prime();
    let r = crate::blowup::check_fibre_isomorphism(iso.pullback(), iso.target().relations(), iso.source().relations(), &lim()).unwrap();
    assert!(r.passed(), "{r}");
    assert!(d.check(&lim()).unwrap().passed());
}

#[test]
fn identity_is_already_saturated() {
    let g = Arc::new(gm());
    let d = saturated_image(&GroupMorphism::identity(&g), 4, &lim()).unwrap();
    assert!(d.stabilized);
    assert_eq!(d.stages.len(), 1);
}

#[test]
fn diptych_of_a_truncation_climbs_the_levels() {
    let g = Arc::new(named_ga("Ga", "x0"));
    let t = automatic_truncation(&g, 2, &lim()).unwrap();
    let d = saturated_image(&t.projection, 5, &lim()).unwrap();
    assert!(d.stabilized);
    assert_eq!(d.stages.len(), 3);
    for (i, st) in d.stages.iter().enumerate() {
        let level = automatic_truncation(&g, i as u32, &lim()).unwrap();
        assert!(st.group.compare(&level.blown, &[], &lim()).unwrap().passed());
    }
    let short = saturated_image(&t.projection, 1, &lim()).unwrap();
    assert!(!short.stabilized);
}

#[test]
fn triptych_of_the_blowup() {
    let b = gm_blowup();
    let t = triptych(&b.projection, 4, &lim()).unwrap();
    assert!(t.report.passed(), "{}", t.report);
    let gak = ga().special_fibre(&lim()).unwrap();
    let u1 = t.psi_prime_k.minimal.vars()[0].clone();
    assert!(t.psi_prime_k.minimal.compare(&gak, &[(u1.as_str(), "x")], &lim()).unwrap().passed());
    assert!(t.im_rho_k.minimal.vars().is_empty());
    let gmk = gm().special_fibre(&lim()).unwrap();
    assert!(t.psi_k.minimal.compare(&gmk, &[], &lim()).unwrap().passed());
    let (k, verdict) = check_unipotent_kernel(&t, 4, &lim()).unwrap();
    assert_eq!(k.vars().len(), 1);
    assert!(matches!(verdict, Unipotence::Certified(ref s) if s.starts_with("additive")));
}

#[test]
fn triptych_of_the_identity() {
    let g = Arc::new(gm());
    let t = triptych(&GroupMorphism::identity(&g), 2, &lim()).unwrap();
    let gmk = gm().special_fibre(&lim()).unwrap();
    for f in [&t.psi_prime_k, &t.im_rho_k, &t.psi_k] {
        assert!(f.minimal.compare(&gmk, &[], &lim()).unwrap().passed());
    }
    assert!(t.report.passed());
    let (_, verdict) = check_unipotent_kernel(&t, 2, &lim()).unwrap();
    assert_eq!(verdict, Unipotence::Certified("trivial kernel".into()));
}

#[test]
fn triptych_of_a_closed_immersion() {
    let m = Arc::new(mu2());
    let g = Arc::new(gm());
    let rho = GroupMorphism::parse(&m, &g, &["u", "u"]).unwrap();
    let t = triptych(&rho, 2, &lim()).unwrap();
    assert!(t.report.passed(), "{}", t.report);
    // oracle: eliminate nothing, the fibre is cut out by u^2 - 1 and v - u
    let want = Ideal::new(g.ring(), ["u^2 - 1", "v - u", "pi"].iter().map(|s| parse_poly(g.ring(), s).unwrap()).collect()).unwrap();
    for f in [&t.psi_prime_k, &t.im_rho_k, &t.psi_k] {
        assert!(f.group.relations().equals(&want, &lim()).unwrap(), "{}", f.group);
    }
    assert_eq!(t.diptych.stages.len(), 1);
}

#[test]
fn kernel_of_a_deeper_truncation() {
    let g = Arc::new(gm());
    let b = automatic_truncation(&g, 2, &lim()).unwrap();
    let t = triptych(&b.projection, 4, &lim()).unwrap();
    assert_eq!(t.diptych.stages.len(), 3);
    assert!(t.im_rho_k.minimal.vars().is_empty());
    let (k, verdict) = check_unipotent_kernel(&t, 4, &lim()).unwrap();
    assert_eq!(k.vars().len(), 1);
    assert!(matches!(verdict, Unipotence::Certified(_)));
}
