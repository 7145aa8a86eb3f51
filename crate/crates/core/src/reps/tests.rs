use std::sync::Arc;

use super::*;
use crate::blowup::{neron_blowup, BlowupOptions, BlowupResult};
use crate::hopf::groups::{borel, ga, gl2, gm, named_gm, product, sl2, trivial};

fn lim() -> Limits {
    Limits::default()
}

fn rep(g: &Arc<HopfPresentation>, rows: &[&[&str]]) -> RepMatrix {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    RepMatrix::parse(g, &rows, None, &lim()).unwrap()
}

fn identity_blowup(g: &Arc<HopfPresentation>) -> BlowupResult {
    let centre = g.augmentation_ideal().extend(&[Poly::pi(g.ring())]).unwrap();
    neron_blowup(g, &centre, &BlowupOptions::default(), &lim()).unwrap()
}

fn fractions(m: &RepMatrix, b: &BlowupResult) -> String {
    m.render(|p| b.fraction_string(p, &lim()).unwrap())
}

#[test]
fn validation() {
    let g = Arc::new(gm());
    assert!(rep(&g, &[&["u"]]).validate(&lim()).unwrap().passed());
    assert_eq!(rep(&g, &[&["u"]]).det_inverse().to_string(), "v");
    let a = Arc::new(ga());
    assert!(rep(&a, &[&["1", "x"], &["0", "1"]]).validate(&lim()).unwrap().passed());
    let bad = RepMatrix::parse(&g, &[vec!["u + 1"]], Some("1"), &lim()).unwrap();
    let r = bad.validate(&lim()).unwrap();
    assert!(r.failed("counit"));
}

#[test]
fn gm_identity_blowup_rep() {
    let g = Arc::new(gm());
    let b = identity_blowup(&g);
    let v = rep(&g, &[&["u"]]);
    let out = identity_blowup_rep(&v, &b, &lim()).unwrap();
    assert_eq!(fractions(&out, &b), "[[u, (u - 1)/pi], [0, 1]]");
    assert_eq!(out.to_string(), "[[u, u1], [0, 1]]");
    assert!(out.validate(&lim()).unwrap().passed());
    assert_eq!(out.verify_faithful(&lim()).unwrap(), Faithfulness::Faithful);
    assert!(conjugation_check(&v, &out, &b, &lim()).unwrap().passed());
    let pulled = v.pull(&b.projection, &lim()).unwrap();
    assert_eq!(
        pulled.verify_faithful(&lim()).unwrap(),
        Faithfulness::NotAtBound(vec!["u1".to_string()])
    );
}

#[test]
fn ga_identity_blowup_rep() {
    let g = Arc::new(ga());
    let b = identity_blowup(&g);
    let v = rep(&g, &[&["1", "x"], &["0", "1"]]);
    let out = identity_blowup_rep(&v, &b, &lim()).unwrap();
    assert_eq!(out.size(), 4);
    let nonzero: Vec<String> = (0..2)
        .flat_map(|i| (2..4).map(move |j| (i, j)))
        .filter(|&(i, j)| !out.entry(i, j).is_zero())
        .map(|(i, j)| b.fraction_string(out.entry(i, j), &lim()).unwrap())
        .collect();
    assert_eq!(nonzero, ["x/pi"]);
    assert!(conjugation_check(&v, &out, &b, &lim()).unwrap().passed());
    assert_eq!(out.verify_faithful(&lim()).unwrap(), Faithfulness::Faithful);
}

#[test]
fn trivial_group_identity_rep() {
    let g = Arc::new(trivial());
    let b = identity_blowup(&g);
    let v = RepMatrix::parse(&g, &[vec!["1"]], None, &lim()).unwrap();
    let out = identity_blowup_rep(&v, &b, &lim()).unwrap();
    assert_eq!(out.to_string(), "[[1, 0], [0, 1]]");
    assert_eq!(out.verify_faithful(&lim()).unwrap(), Faithfulness::Faithful);
}

#[test]
fn stabilizers() {
    let g = Arc::new(gl2());
    let v = RepMatrix::parse(&g, &[vec!["a11", "a12"], vec!["a21", "a22"]], Some("d"), &lim()).unwrap();
    assert_eq!(stabilizer_ideal(&v, 0).unwrap().to_string(), "(pi, a21)");
    let m = Arc::new(gm());
    let diag = RepMatrix::parse(&m, &[vec!["u", "0"], vec!["0", "1"]], Some("v"), &lim()).unwrap();
    assert_eq!(stabilizer_ideal(&diag, 0).unwrap().to_string(), "(pi)");
    let bo = Arc::new(borel());
    let t = RepMatrix::parse(&bo, &[vec!["a11", "a12"], vec!["0", "a22"]], Some("d"), &lim()).unwrap();
    assert_eq!(stabilizer_ideal(&t, 0).unwrap().to_string(), "(pi)");
}

fn gl2_line_blowup() -> (RepMatrix, BlowupResult) {
    let g = Arc::new(gl2());
    let v = RepMatrix::parse(&g, &[vec!["a11", "a12"], vec!["a21", "a22"]], Some("d"), &lim()).unwrap();
    let b = neron_blowup(&g, &stabilizer_ideal(&v, 0).unwrap(), &BlowupOptions::default(), &lim()).unwrap();
    (v, b)
}

#[test]
fn rescaled_gl2() {
    let (v, b) = gl2_line_blowup();
    let r = rescaled_rep(&v, &b, &lim()).unwrap();
    assert_eq!(fractions(&r.rep, &b), "[[a11, pi*a12], [a21/pi, a22]]");
    assert!(r.rep.validate(&lim()).unwrap().passed());
    assert_eq!(r.faithful, Faithfulness::Faithful);
}

#[test]
fn rescaled_sl2_keeps_its_relation() {
    let g = Arc::new(sl2());
    let v = RepMatrix::parse(&g, &[vec!["a11", "a12"], vec!["a21", "a22"]], None, &lim()).unwrap();
    let b = neron_blowup(&g, &stabilizer_ideal(&v, 0).unwrap(), &BlowupOptions::default(), &lim()).unwrap();
    let r = rescaled_rep(&v, &b, &lim()).unwrap();
    assert!(r.rep.validate(&lim()).unwrap().passed());
    assert!(b.blown.relations().contains(&crate::ring::parse_poly(b.blown.ring(), "a11*a22 - a12*a21 - 1").unwrap(), &lim()).unwrap());
}

#[test]
fn line_blowup_with_a_rescaled_cover() {
    let (v, b) = gl2_line_blowup();
    let e = rescaled_rep(&v, &b, &lim()).unwrap().rep;
    let out = line_blowup_rep(&v, &b, &e, &lim()).unwrap();
    assert_eq!(out.size(), 4);
    assert!(out.validate(&lim()).unwrap().passed());
    assert_eq!(out.verify_faithful(&lim()).unwrap(), Faithfulness::Faithful);
    // the determinant does not reduce to a11 on the line
    let det = RepMatrix::parse(&b.blown, &[vec!["a11*a22 - a12*a21"]], Some("d"), &lim()).unwrap();
    assert!(matches!(line_blowup_rep(&v, &b, &det, &lim()), Err(Error::ShapeMismatch(_))));
}

#[test]
fn line_blowup_with_the_trivial_character() {
    let g = Arc::new(gm());
    let v = RepMatrix::parse(&g, &[vec!["u", "0"], vec!["0", "1"]], Some("v"), &lim()).unwrap();
    // the vector e1 is fixed by the identity only; its stabilizer is cut out by u - 1
    let b = identity_blowup(&g);
    let one = RepMatrix::parse(&b.blown, &[vec!["1"]], Some("1"), &lim()).unwrap();
    let err = line_blowup_rep(&v, &b, &one, &lim());
    assert!(matches!(err, Err(Error::Precondition(_))));
    let tg = Arc::new(trivial());
    let id = RepMatrix::parse(&tg, &[vec!["1"]], None, &lim()).unwrap();
    let tb = neron_blowup(&tg, &stabilizer_ideal(&id, 0).unwrap(), &BlowupOptions::default(), &lim()).unwrap();
    let e = RepMatrix::parse(&tb.blown, &[vec!["1"]], None, &lim()).unwrap();
    assert_eq!(line_blowup_rep(&id, &tb, &e, &lim()).unwrap().to_string(), "[[1, 0], [0, 1]]");
}

#[test]
fn sum_over_a_quotient() {
    let first = named_gm("Gm1", "u", "v");
    let second = named_gm("Gm2", "s", "t");
    let g = Arc::new(product(&first, &second).unwrap());
    let a = Arc::new(second);
    let quotient = GroupMorphism::parse(&g, &a, &["s", "t"]).unwrap();
    let centre = Ideal::new(g.ring(), vec![Poly::pi(g.ring())])
        .unwrap()
        .extend(&[
            crate::ring::parse_poly(g.ring(), "s - 1").unwrap(),
            crate::ring::parse_poly(g.ring(), "t - 1").unwrap(),
        ])
        .unwrap();
    let b = neron_blowup(&g, &centre, &BlowupOptions::default(), &lim()).unwrap();
    let ab = identity_blowup(&a);
    let sigma = identity_blowup_rep(&rep(&a, &[&["s"]]), &ab, &lim()).unwrap();
    let rho = RepMatrix::parse(&g, &[vec!["u", "0"], vec!["0", "s"]], Some("v*t"), &lim()).unwrap();
    let (sum, faithful) = sum_faithful(&rho, &sigma, &b, &quotient, &ab, &lim()).unwrap();
    assert_eq!(sum.size(), 4);
    assert!(sum.validate(&lim()).unwrap().passed());
    assert_eq!(faithful, Faithfulness::Faithful);
}

#[test]
fn conormal_of_the_origin_in_ga() {
    let g = ga().special_fibre(&lim()).unwrap();
    let i = Ideal::new(g.ring(), vec![Poly::var(g.ring(), "x").unwrap()]).unwrap();
    let c = conormal_rep(&g, &i, &lim()).unwrap();
    assert_eq!(c.basis.len(), 1);
    assert_eq!(c.action.to_string(), "[[1]]");
    let whole = conormal_rep(&g, &Ideal::zero(g.ring()), &lim()).unwrap();
    assert_eq!(whole.action.size(), 0);
}

#[test]
fn conormal_of_the_torus_in_the_borel() {
    let g = borel().special_fibre(&lim()).unwrap();
    let i = Ideal::new(g.ring(), vec![Poly::var(g.ring(), "a12").unwrap()]).unwrap();
    let c = conormal_rep(&g, &i, &lim()).unwrap();
    assert_eq!(c.basis.len(), 1);
    // conjugating [[1, g12], [0, 1]] by diag(t1, t2) scales g12 by t2/t1 = d*a22^2
    let expected = crate::ring::parse_poly(c.subgroup.ring(), "d*a22^2").unwrap();
    let diff = &c.action.entry(0, 0).clone() - &expected;
    assert!(c.subgroup.normal_form(&diff, &lim()).unwrap().is_zero(), "{}", c.action);
    assert!(c.action.validate(&lim()).unwrap().passed());
}
