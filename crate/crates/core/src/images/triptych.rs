use std::collections::BTreeSet;
use std::sync::Arc;

use super::{saturated_image, Diptych};
use crate::error::Result;
use crate::groebner::{contract, Ideal, Limits};
use crate::hopf::{GroupMorphism, HopfPresentation};
use crate::report::Report;
use crate::ring::Poly;

/// A special-fibre group in the coordinates it inherits, and with determined generators
/// eliminated.
#[derive(Debug, Clone)]
pub struct Fibre {
    pub group: Arc<HopfPresentation>,
    pub minimal: HopfPresentation,
}

/// Psi'_k -> Im(rho_k) -> Psi_k.
#[derive(Debug, Clone)]
pub struct Triptych {
    pub diptych: Diptych,
    pub psi_prime_k: Fibre,
    pub im_rho_k: Fibre,
    pub psi_k: Fibre,
    pub prime_to_image: GroupMorphism,
    pub image_to_psi: GroupMorphism,
    /// The image of Psi'_k in Psi_k is Im(rho_k), and the fibre maps are morphisms.
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unipotence {
    Certified(String),
    Undecided(String),
}

fn fibre(g: HopfPresentation, lim: &Limits) -> Result<Fibre> {
    let mut order: Vec<String> = g.vars().to_vec();
    order.reverse();
    let minimal = g.simplify(&order, lim)?.group;
    Ok(Fibre {
        group: Arc::new(g),
        minimal,
    })
}

fn reduce_morphism(
    m: &GroupMorphism,
    source: &Arc<HopfPresentation>,
    target: &Arc<HopfPresentation>,
) -> Result<GroupMorphism> {
    let zero = Poly::zero(source.ring());
    let imgs = m
        .pullback()
        .images()
        .iter()
        .map(|p| p.substitute_pi(&zero))
        .collect();
    GroupMorphism::new(source, target, imgs)
}

/// Special fibres of the diptych of `rho`, and the image of the special fibre of rho.
pub fn triptych(rho: &GroupMorphism, steps: u32, lim: &Limits) -> Result<Triptych> {
    let diptych = saturated_image(rho, steps, lim)?;
    let src = rho.source();
    let psi = diptych.psi().clone();
    let pi_src = Ideal::new(src.ring(), vec![Poly::pi(src.ring())])?;
    let im_ideal = contract(diptych.image.factor.pullback(), src.relations(), &pi_src, lim)?;

    let psi_k = fibre(psi.special_fibre(lim)?, lim)?;
    let psi_prime_k = fibre(diptych.psi_prime().special_fibre(lim)?, lim)?;
    let im = (*psi_k.group)
        .clone()
        .with_relations(im_ideal.clone())
        .renamed(&format!("Im_{}_k", src.name()));
    let im_rho_k = fibre(im.canonical(lim)?, lim)?;

    let down = diptych.psi_prime_to_psi(lim)?;
    let prime_to_image = reduce_morphism(&down, &psi_prime_k.group, &im_rho_k.group)?;
    let vars = (0..psi.vars().len()).map(|i| Poly::var_index(psi.ring(), i)).collect();
    let image_to_psi = GroupMorphism::new(&im_rho_k.group, &psi_k.group, vars)?;

    let mut report = Report::new();
    let last = diptych.psi_prime();
    let pi_last = Ideal::new(last.ring(), vec![Poly::pi(last.ring())])?;
    let seen = contract(down.pullback(), last.relations(), &pi_last, lim)?;
    if seen.equals(&im_ideal, lim)? {
        report.pass("image-of-saturation", im_rho_k.group.name());
    } else {
        report.fail("image-of-saturation", im_rho_k.group.name(), format!("{seen} vs {im_ideal}"));
    }
    report.merge(prime_to_image.check(lim)?);
    report.merge(image_to_psi.check(lim)?);
    Ok(Triptych {
        diptych,
        psi_prime_k,
        im_rho_k,
        psi_k,
        prime_to_image,
        image_to_psi,
        report,
    })
}

fn occurring(p: &Poly) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for (m, _) in p.terms() {
        out.extend(m.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i));
    }
    out
}

/// Orders the generators so that Delta(y) - y' - y'' only involves earlier ones.
fn additive_filtration(k: &HopfPresentation, lim: &Limits) -> Result<Option<Vec<String>>> {
    let d = k.doubled();
    let maps = [k.copy_map(0, d), k.copy_map(1, d)];
    let rel2 = k.relations2();
    let n = k.vars().len();
    let mut placed: Vec<usize> = Vec::new();
    let mut allowed = BTreeSet::new();
    allowed.insert(d.pi_index());
    while placed.len() < n {
        let mut found = None;
        for i in (0..n).filter(|i| !placed.contains(i)) {
            let y = Poly::var_index(k.ring(), i);
            let prim = &(&k.in_copy(&y, 0, d)? + &k.in_copy(&y, 1, d)?);
            let rest = rel2.reduce(&(&k.comul().images()[i] - prim), lim)?;
            if occurring(&rest).is_subset(&allowed) {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else {
            return Ok(None);
        };
        placed.push(i);
        for m in &maps {
            allowed.insert(m[i].expect("copy of a generator"));
        }
    }
    Ok(Some(placed.iter().map(|&i| k.vars()[i].clone()).collect()))
}

/// The kernel of Psi'_k -> Im(rho_k) and a unipotence certificate for it.
pub fn check_unipotent_kernel(
    t: &Triptych,
    bound: u32,
    lim: &Limits,
) -> Result<(HopfPresentation, Unipotence)> {
    let g = &t.psi_prime_k.group;
    let mut gens = g.relations().gens().to_vec();
    for a in t.im_rho_k.group.augmentation_ideal().gens() {
        gens.push(t.prime_to_image.pull(a)?);
    }
    let kernel = (**g)
        .clone()
        .with_relations(Ideal::new(g.ring(), gens)?)
        .renamed(&format!("ker_{}", g.name()))
        .canonical(lim)?;
    let k = fibre(kernel, lim)?.minimal;
    if k.vars().is_empty() {
        return Ok((k, Unipotence::Certified("trivial kernel".into())));
    }
    let pi = Poly::pi(k.ring());
    if k.relations().gens().iter().all(|p| p.is_zero() || *p == pi) {
        if let Some(order) = additive_filtration(&k, lim)? {
            let text = format!("additive filtration {}", order.join(", "));
            return Ok((k, Unipotence::Certified(text)));
        }
    }
    let aug = k.augmentation_ideal();
    let mut power = Vec::new();
    for a in aug.gens() {
        let q = k.normal_form(a, lim)?;
        if !q.is_zero() {
            power.push(q);
        }
    }
    for n in 1..=bound {
        if power.is_empty() {
            let text = format!("augmentation ideal to the power {n} vanishes");
            return Ok((k, Unipotence::Certified(text)));
        }
        let mut next = Vec::new();
        for p in &power {
            for a in aug.gens() {
                let q = k.normal_form(&(p * a), lim)?;
                if !q.is_zero() && !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        power = next;
    }
    Ok((k, Unipotence::Undecided(format!("no certificate up to power {bound}"))))
}
