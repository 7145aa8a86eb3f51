use std::sync::Arc;

use super::*;
use crate::hopf::groups::{ga, gm, gm_level, named_ga, product};
use crate::ring::parse_poly;

fn lim() -> Limits {
    Limits::default()
}

fn ideal(g: &HopfPresentation, gens: &[&str]) -> Ideal {
    let ps = gens.iter().map(|s| parse_poly(g.ring(), s).unwrap()).collect();
    Ideal::new(g.ring(), ps).unwrap()
}

fn gm_blowup(opts: &BlowupOptions) -> BlowupResult {
    let g = Arc::new(gm());
    neron_blowup(&g, &ideal(&g, &["pi", "u - 1"]), opts, &lim()).unwrap()
}

fn zero_in(g: &HopfPresentation, text: &str) -> bool {
    let f = parse_poly(g.ring(), text).unwrap();
    g.normal_form(&f, &lim()).unwrap().is_zero()
}

#[test]
fn gm_identity_blowup_adjoins_the_fraction() {
    let b = gm_blowup(&BlowupOptions::default());
    assert_eq!(b.blown.vars(), ["u1", "u", "v"]);
    assert!(zero_in(&b.blown, "pi*u1 - (u - 1)"));
    assert!(b.check(&lim()).unwrap().passed());
    let s = b.blown.antipode().image_of("u1").unwrap();
    assert!(zero_in(&b.blown, &format!("{s} + v*u1")));
    assert_eq!(b.fraction_string(&Poly::var(b.blown.ring(), "u1").unwrap(), &lim()).unwrap(), "(u - 1)/pi");
}

#[test]
fn normalized_gm_blowup_is_the_level_one_group() {
    let b = gm_blowup(&BlowupOptions::normalized());
    assert_eq!(b.blown.vars(), ["u1", "v1"]);
    let rep = b.blown.compare(&gm_level(1), &[("u1", "x1"), ("v1", "y1")], &lim()).unwrap();
    assert!(rep.passed(), "{rep}");
    assert!(b.check(&lim()).unwrap().passed());
}

#[test]
fn whole_fibre_changes_nothing() {
    let g = Arc::new(gm());
    let b = neron_blowup(&g, &ideal(&g, &["pi"]), &BlowupOptions::default(), &lim()).unwrap();
    assert!(b.adjoined.is_empty());
    assert!(b.blown.compare(&g, &[], &lim()).unwrap().passed());
}

#[test]
fn ga_at_origin_rescales() {
    let g = Arc::new(ga());
    let opts = BlowupOptions { simplify: true, ..BlowupOptions::default() };
    let b = neron_blowup(&g, &ideal(&g, &["pi", "x"]), &opts, &lim()).unwrap();
    assert_eq!(b.blown.vars(), ["x1"]);
    assert!(b.blown.relations().gens().is_empty());
    assert_eq!(b.projection.pull(&Poly::var(g.ring(), "x").unwrap()).unwrap().to_string(), "pi*x1");
    assert_eq!(b.blown.comul().images()[0].to_string(), "x1' + x1''");
}

#[test]
fn centre_must_be_a_subgroup_containing_pi() {
    let g = Arc::new(gm());
    let bad = neron_blowup(&g, &ideal(&g, &["pi", "u - 2"]), &BlowupOptions::default(), &lim());
    assert!(matches!(bad, Err(Error::NotASubgroup(_))), "{bad:?}");
    let no_pi = neron_blowup(&g, &ideal(&g, &["u - 1"]), &BlowupOptions::default(), &lim());
    assert!(matches!(no_pi, Err(Error::Precondition(_))));
}

#[test]
fn partial_blowup_level_zero_is_the_neron_blowup() {
    let g = Arc::new(gm());
    let p = partial_blowup(&g, &ideal(&g, &["u - 1", "v - 1"]), 0, &BlowupOptions::default(), &lim())
        .unwrap();
    let b = gm_blowup(&BlowupOptions::default());
    assert!(p.blown.compare(&b.blown, &[], &lim()).unwrap().passed());
}

#[test]
fn partial_blowup_is_trivial_up_to_its_level() {
    let g = Arc::new(gm());
    let p = partial_blowup(&g, &ideal(&g, &["u - 1", "v - 1"]), 2, &BlowupOptions::default(), &lim())
        .unwrap();
    assert!(zero_in(&p.blown, "pi^3*u3 - (u - 1)"));
    for m in 0..=2 {
        assert!(p.blown.reduce_mod(m, Some(&p.projection), &lim()).unwrap().trivial);
    }
    assert!(!p.blown.reduce_mod(3, Some(&p.projection), &lim()).unwrap().trivial);
}

#[test]
fn partial_blowup_rejects_bad_subgroups() {
    let g = Arc::new(gm());
    let unit = partial_blowup(&g, &ideal(&g, &["1"]), 0, &BlowupOptions::default(), &lim());
    assert!(matches!(unit, Err(Error::NotASubgroup(_))));
    let torsion = partial_blowup(&g, &ideal(&g, &["pi*(u - 1)", "pi*(v - 1)"]), 0, &BlowupOptions::default(), &lim());
    assert!(matches!(torsion, Err(Error::Precondition(_))), "{torsion:?}");
}

#[test]
fn automatic_truncation_of_ga() {
    let g = Arc::new(named_ga("Ga", "x0"));
    let b = automatic_truncation(&g, 2, &lim()).unwrap();
    assert_eq!(b.blown.vars(), ["x2"]);
    let x0 = Poly::var(g.ring(), "x0").unwrap();
    assert_eq!(b.projection.pull(&x0).unwrap().to_string(), "pi^2*x2");
    assert_eq!(b.adjoined[0].power, 2);
    let same = automatic_truncation(&g, 0, &lim()).unwrap();
    assert!(same.blown.compare(&g, &[], &lim()).unwrap().passed());
}

#[test]
fn automatic_truncation_of_gm_is_the_level_group() {
    let g = Arc::new(gm());
    let b = automatic_truncation(&g, 2, &lim()).unwrap();
    let rep = b.blown.compare(&gm_level(2), &[("u2", "x2"), ("v2", "y2")], &lim()).unwrap();
    assert!(rep.passed(), "{rep}");
    let u2 = Poly::var(b.blown.ring(), "u2").unwrap();
    assert_eq!(b.fraction_string(&u2, &lim()).unwrap(), "(u - 1)/pi^2");
    let p = partial_blowup(&g, &g.augmentation_ideal(), 1, &BlowupOptions::normalized(), &lim()).unwrap();
    assert!(p.blown.compare(&b.blown, &[], &lim()).unwrap().passed());
}

#[test]
fn automatic_membership() {
    let g = ga();
    let x = Poly::var(g.ring(), "x").unwrap();
    assert!(automatic_member(&g, &x, 5).unwrap());
    let x1 = parse_poly(g.ring(), "x + 1").unwrap();
    assert!(!automatic_member(&g, &x1, 1).unwrap());
    assert!(automatic_member(&g, &Poly::one(g.ring()), 0).unwrap());
}

fn centres(s: &StandardSequence) -> Vec<String> {
    s.stages.iter().map(|st| st.centre.to_string()).collect()
}

#[test]
fn standard_sequence_of_a_truncation() {
    let g = Arc::new(named_ga("Ga", "x0"));
    let b = automatic_truncation(&g, 3, &lim()).unwrap();
    let s = standard_sequence(&b.projection, 3, &lim()).unwrap();
    assert_eq!(centres(&s), ["(pi, x0)", "(pi, x1)", "(pi, x2)", "(pi)"]);
    for (i, st) in s.stages.iter().enumerate() {
        let t = automatic_truncation(&g, i as u32, &lim()).unwrap();
        assert!(st.group.compare(&t.blown, &[], &lim()).unwrap().passed());
    }
    assert!(s.stabilized(&lim()).unwrap());
}

#[test]
fn standard_sequence_of_the_gm_blowup() {
    let b = gm_blowup(&BlowupOptions::default());
    let s = standard_sequence(&b.projection, 2, &lim()).unwrap();
    let g = &s.stages[0].group;
    assert!(s.stages[0].centre.equals(&ideal(g, &["pi", "u - 1", "u*v - 1"]), &lim()).unwrap());
    for st in &s.stages[1..] {
        assert!(st.centre.equals(&ideal(&st.group, &["pi"]).extend(st.group.relations().gens()).unwrap(), &lim()).unwrap());
    }
    let iso = s.stages[1].morphism.clone();
    let rep = check_fibre_isomorphism(iso.pullback(), iso.target().relations(), iso.source().relations(), &lim()).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn standard_sequence_needs_a_generic_isomorphism() {
    let g = Arc::new(gm());
    let h = Arc::new(product(&gm(), &ga()).unwrap());
    let rho = GroupMorphism::parse(&g, &h, &["u", "v", "0"]).unwrap();
    let err = standard_sequence(&rho, 1, &lim());
    assert!(matches!(err, Err(Error::NotGenericIso { .. })), "{err:?}");
}

#[test]
fn strict_transforms() {
    let b = gm_blowup(&BlowupOptions::default());
    let g = &b.original;
    let t = strict_transform(&b, &ideal(g, &["u - 1", "v - 1"]), &lim()).unwrap();
    assert!(t.equals(&ideal(&b.blown, &["u1", "-v*u1"]).extend(b.blown.relations().gens()).unwrap(), &lim()).unwrap());
    let whole = strict_transform(&b, &Ideal::zero(g.ring()), &lim()).unwrap();
    assert!(whole.equals(b.blown.relations(), &lim()).unwrap());
    let t = strict_transform(&b, &ideal(g, &["u^2 - 1", "u - v"]), &lim()).unwrap();
    let f = parse_poly(b.blown.ring(), "u1*(u + 1)").unwrap();
    assert!(t.contains(&f, &lim()).unwrap());
    assert!(!t.contains(&Poly::var(b.blown.ring(), "u1").unwrap(), &lim()).unwrap());
}

#[test]
fn constancy_of_the_identity_and_of_a_factor() {
    let g = Arc::new(gm());
    let r = check_constancy(&g, &ideal(&g, &["u - 1", "v - 1"]), 3, &lim()).unwrap();
    assert_eq!(r.stages.len(), 4);
    assert!(r.constant());
    let h = Arc::new(product(&gm(), &ga()).unwrap());
    let r = check_constancy(&h, &ideal(&h, &["x"]), 2, &lim()).unwrap();
    assert!(r.constant());
    assert_eq!(r.stages[2].group.vars(), ["x2", "u", "v"]);
    let bad = check_constancy(&g, &ideal(&g, &["pi*(u - 1)"]), 1, &lim());
    assert!(bad.is_err());
}

#[test]
fn lifts_through_the_blowup() {
    let g = Arc::new(ga());
    let b = neron_blowup(&g, &ideal(&g, &["pi", "x"]), &BlowupOptions::default(), &lim()).unwrap();
    let y = Arc::new(named_ga("Gy", "y"));
    let phi = GroupMorphism::parse(&y, &g, &["pi*y"]).unwrap();
    let lifted = b.lift(&phi, &lim()).unwrap();
    assert!(lifted.check(&lim()).unwrap().passed());
    assert_eq!(lifted.describe(), "x1 -> y, x -> pi*y");
    let naive = GroupMorphism::parse(&y, &g, &["y"]).unwrap();
    assert!(matches!(b.lift(&naive, &lim()), Err(Error::LiftFailure { .. })));
}
