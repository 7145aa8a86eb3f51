use std::sync::Arc;

use super::{neron_blowup, Adjoined, BlowupOptions, BlowupResult};
use crate::error::{Error, Result};
use crate::groebner::{contract, Ideal, Limits};
use crate::hopf::{GroupMorphism, HopfPresentation};
use crate::ring::{Poly, Valuation};

impl BlowupResult {
    /// G blown up along nothing.
    pub fn trivial(g: &Arc<HopfPresentation>) -> BlowupResult {
        BlowupResult {
            original: g.clone(),
            blown: g.clone(),
            projection: GroupMorphism::identity(g),
            centre: Ideal::new(g.ring(), vec![Poly::pi(g.ring())]).expect("own ring"),
            adjoined: Vec::new(),
        }
    }

    /// `next` (a blowup of `self.blown`) seen as a blowup of `self.original`.
    pub fn then(&self, next: BlowupResult, lim: &Limits) -> Result<BlowupResult> {
        let mut adjoined = Vec::new();
        for v in next.blown.vars() {
            if let Some(a) = next.adjoined_named(v) {
                let (num, k) = self.as_fraction(&a.numerator, lim)?;
                adjoined.push(Adjoined {
                    name: v.clone(),
                    numerator: num,
                    power: k + a.power,
                });
            } else if let Some(a) = self.adjoined_named(v) {
                adjoined.push(a.clone());
            }
        }
        Ok(BlowupResult {
            original: self.original.clone(),
            projection: self.projection.after(&next.projection, lim)?,
            blown: next.blown,
            centre: self.centre.clone(),
            adjoined,
        })
    }
}

/// R[G][pi^-n a] for the augmentation ideal a, built as n blowups of the identity section.
pub fn automatic_truncation(
    g: &Arc<HopfPresentation>,
    n: u32,
    lim: &Limits,
) -> Result<BlowupResult> {
    let mut acc = BlowupResult::trivial(g);
    for level in 1..=n {
        let cur = acc.blown.clone();
        let centre = cur.augmentation_ideal().extend(&[Poly::pi(cur.ring())])?;
        let opts = BlowupOptions {
            name: Some(format!("{}_{level}", g.name())),
            ..BlowupOptions::normalized()
        };
        let step = neron_blowup(&cur, &centre, &opts, lim)?;
        acc = if level == 1 { step } else { acc.then(step, lim)? };
    }
    Ok(acc)
}

/// Whether numerator / pi^m lies in the automatic blowup of G: its counit must lie in R.
pub fn automatic_member(g: &HopfPresentation, numerator: &Poly, m: u32) -> Result<bool> {
    let e = g.apply_counit(&numerator.to_ring(g.ring())?)?;
    Ok(match e.pi_valuation() {
        Valuation::Infinite => true,
        Valuation::Finite(v) => v >= m,
    })
}

#[derive(Debug, Clone)]
pub struct Stage {
    pub group: Arc<HopfPresentation>,
    /// Image of the special fibre of the source, containing pi.
    pub centre: Ideal,
    /// This stage -> the previous one (the identity at stage 0).
    pub projection: GroupMorphism,
    /// The source group -> this stage.
    pub morphism: GroupMorphism,
}

#[derive(Debug, Clone)]
pub struct StandardSequence {
    pub stages: Vec<Stage>,
    pub depth: u32,
}

impl StandardSequence {
    /// Whether the last centre is the whole special fibre.
    pub fn stabilized(&self, lim: &Limits) -> Result<bool> {
        let last = self.stages.last().expect("stage 0 always exists");
        let full = Ideal::new(last.group.ring(), vec![Poly::pi(last.group.ring())])?
            .extend(last.group.relations().gens())?;
        last.centre.is_subset(&full, lim)
    }
}

/// Elements of the target ring killed by the pullback, beyond the target's relations.
pub(crate) fn kernel_witness(rho: &GroupMorphism, lim: &Limits) -> Result<Option<Poly>> {
    let src = rho.source();
    let ker = contract(rho.pullback(), src.relations(), &Ideal::zero(src.ring()), lim)?;
    for k in ker.groebner_basis(lim)? {
        if !rho.target().relations().contains(k, lim)? {
            return Ok(Some(k.clone()));
        }
    }
    Ok(None)
}

/// The tower G_n of Neron blowups through which rho factors: each stage blows up the image
/// of the special fibre of the source.
pub fn standard_sequence(
    rho: &GroupMorphism,
    depth: u32,
    lim: &Limits,
) -> Result<StandardSequence> {
    if let Some(k) = kernel_witness(rho, lim)? {
        return Err(Error::NotGenericIso {
            witness: format!("{k} is killed by the pullback"),
        });
    }
    let stages = tower(rho, depth, false, "s", lim)?;
    Ok(StandardSequence { stages, depth })
}

/// Blows up the image of the special fibre of the source `depth` times. With `until_stable`
/// the tower stops at the first centre containing nothing beyond pi and the relations.
pub(crate) fn tower(
    rho: &GroupMorphism,
    depth: u32,
    until_stable: bool,
    tag: &str,
    lim: &Limits,
) -> Result<Vec<Stage>> {
    let src = rho.source();
    let pi_src = Ideal::new(src.ring(), vec![Poly::pi(src.ring())])?;
    let mut stages = Vec::new();
    let mut group = rho.target().clone();
    let mut morphism = rho.clone();
    let mut projection = GroupMorphism::identity(&group);
    for i in 0..=depth {
        let centre = contract(morphism.pullback(), src.relations(), &pi_src, lim)?;
        stages.push(Stage {
            group: group.clone(),
            centre: centre.clone(),
            projection: projection.clone(),
            morphism: morphism.clone(),
        });
        if i == depth {
            break;
        }
        if until_stable {
            let full = Ideal::new(group.ring(), vec![Poly::pi(group.ring())])?
                .extend(group.relations().gens())?;
            if centre.is_subset(&full, lim)? {
                break;
            }
        }
        let opts = BlowupOptions {
            simplify: true,
            name: Some(format!("{}_{tag}{}", rho.target().name(), i + 1)),
            ..BlowupOptions::default()
        };
        let b = neron_blowup(&group, &centre, &opts, lim)?;
        morphism = b.lift(&morphism, lim)?;
        projection = b.projection.clone();
        group = b.blown.clone();
    }
    Ok(stages)
}
