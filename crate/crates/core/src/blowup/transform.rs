use std::sync::Arc;

use super::{neron_blowup, require, require_flat_subgroup, BlowupOptions, BlowupResult};
use crate::error::Result;
use crate::groebner::{contract, saturate_pi, Ideal, Limits, Subalgebra};
use crate::hopf::HopfPresentation;
use crate::report::Report;
use crate::ring::{Poly, Substitution};

/// Saturation of I_H * R[G'] by pi, as an ideal of the blown ring containing its relations.
pub fn strict_transform(b: &BlowupResult, subgroup: &Ideal, lim: &Limits) -> Result<Ideal> {
    let ideal = require_flat_subgroup(&b.original, subgroup, lim)?;
    let mut gens = b.blown.relations().gens().to_vec();
    for g in ideal.gens() {
        gens.push(b.projection.pull(g)?);
    }
    let out = saturate_pi(&Ideal::new(b.blown.ring(), gens)?, lim)?.canonical(lim)?;
    require(b.blown.check_hopf_ideal(&out, false, lim)?, "strict transform")?;
    Ok(out)
}

/// Generators of `ideal` that are not already in `relations`.
pub fn beyond_relations(ideal: &Ideal, relations: &Ideal, lim: &Limits) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for g in ideal.groebner_basis(lim)? {
        if !relations.contains(g, lim)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// phi: A/rel_a -> B/rel_b is bijective: the kernel is rel_a and every generator of B is a
/// polynomial in the images.
pub fn check_fibre_isomorphism(
    phi: &Substitution,
    rel_a: &Ideal,
    rel_b: &Ideal,
    lim: &Limits,
) -> Result<Report> {
    let mut rep = Report::new();
    let subject = phi.source().vars().join(", ");
    let ker = contract(phi, rel_b, &Ideal::zero(rel_b.ring()), lim)?;
    match beyond_relations(&ker, rel_a, lim)?.first() {
        None => rep.pass("injective", subject.as_str()),
        Some(k) => rep.fail("injective", subject.as_str(), format!("{k} maps to 0")),
    }
    let sub = Subalgebra::new(phi.images(), rel_b)?;
    let mut missing = Vec::new();
    for v in rel_b.ring().vars() {
        if sub.member(&Poly::var(rel_b.ring(), v)?, lim)?.is_none() {
            missing.push(v.clone());
        }
    }
    if missing.is_empty() {
        rep.pass("surjective", subject.as_str());
    } else {
        rep.fail("surjective", subject.as_str(), format!("{} not in the image", missing.join(", ")));
    }
    Ok(rep)
}

#[derive(Debug, Clone)]
pub struct ConstancyStage {
    pub level: u32,
    pub group: Arc<HopfPresentation>,
    /// Ideal of H_n in G_n beyond the relations.
    pub subgroup: Vec<Poly>,
    pub report: Report,
}

#[derive(Debug, Clone)]
pub struct ConstancyReport {
    pub stages: Vec<ConstancyStage>,
}

impl ConstancyReport {
    pub fn constant(&self) -> bool {
        self.stages.iter().all(|s| s.report.passed())
    }
}

/// Blows up H_n tensor k in G_n, takes the strict transform H_(n+1), and checks that the
/// special fibre of H_(n+1) maps isomorphically onto that of H_n, `depth` times.
pub fn check_constancy(
    g: &Arc<HopfPresentation>,
    subgroup: &Ideal,
    depth: u32,
    lim: &Limits,
) -> Result<ConstancyReport> {
    let mut ideal = require_flat_subgroup(g, subgroup, lim)?.extend(g.relations().gens())?;
    let mut group = g.clone();
    let mut stages = vec![ConstancyStage {
        level: 0,
        group: group.clone(),
        subgroup: beyond_relations(&ideal, group.relations(), lim)?,
        report: Report::new(),
    }];
    for level in 1..=depth {
        let pi = Poly::pi(group.ring());
        let centre = ideal.extend(&[pi.clone()])?;
        let opts = BlowupOptions {
            simplify: true,
            name: Some(format!("{}_c{level}", g.name())),
            ..BlowupOptions::default()
        };
        let b = neron_blowup(&group, &centre, &opts, lim)?;
        let next = strict_transform(&b, &ideal, lim)?;
        let fibre_a = centre;
        let fibre_b = next.extend(&[Poly::pi(b.blown.ring())])?;
        let report = check_fibre_isomorphism(b.projection.pullback(), &fibre_a, &fibre_b, lim)?;
        group = b.blown.clone();
        stages.push(ConstancyStage {
            level,
            group: group.clone(),
            subgroup: beyond_relations(&next, group.relations(), lim)?,
            report,
        });
        ideal = next;
    }
    Ok(ConstancyReport { stages })
}
