//! Schematic images of morphisms, their saturations, and the three special-fibre groups.

mod triptych;

use std::sync::Arc;

use crate::blowup::sequence_tower;
use crate::blowup::Stage;
use crate::error::Result;
use crate::groebner::{contract, saturate_pi, Ideal, Limits};
use crate::hopf::{Base, GroupMorphism, HopfPresentation};
use crate::report::Report;
use crate::ring::Poly;

pub use triptych::{check_unipotent_kernel, triptych, Fibre, Triptych, Unipotence};

/// Psi with Pi -> Psi -> G.
#[derive(Debug, Clone)]
pub struct Image {
    pub psi: Arc<HopfPresentation>,
    pub factor: GroupMorphism,
    pub inclusion: GroupMorphism,
}

/// The square Pi -> Psi' -> Psi -> G, with Psi' approximated by a chain of blowups of Psi.
#[derive(Debug, Clone)]
pub struct Diptych {
    pub rho: GroupMorphism,
    pub image: Image,
    /// Stage 0 is Psi; each later stage blows up the image of the special fibre of Pi.
    pub stages: Vec<Stage>,
    pub stabilized: bool,
}

/// The target modulo the pi-saturated kernel of the pullback.
pub fn image_hopf(rho: &GroupMorphism, lim: &Limits) -> Result<Image> {
    let src = rho.source();
    let g = rho.target();
    let mut ker = contract(rho.pullback(), src.relations(), &Ideal::zero(src.ring()), lim)?;
    if g.base() == Base::Dvr {
        ker = saturate_pi(&ker, lim)?;
    }
    let psi = (**g).clone().with_relations(ker).renamed(&format!("Psi_{}", src.name()));
    let mut psi = psi.canonical(lim)?;
    if g.base() == Base::Dvr {
        psi = psi.mark_flat();
    }
    let psi = Arc::new(psi);
    let factor = GroupMorphism::new(src, &psi, rho.pullback().images().to_vec())?;
    let vars = (0..g.vars().len()).map(|i| Poly::var_index(psi.ring(), i)).collect();
    let inclusion = GroupMorphism::new(&psi, g, vars)?;
    Ok(Image {
        psi,
        factor,
        inclusion,
    })
}

/// Psi followed by at most `steps` blowups at the image of the special fibre of Pi.
pub fn saturated_image(rho: &GroupMorphism, steps: u32, lim: &Limits) -> Result<Diptych> {
    let image = image_hopf(rho, lim)?;
    let stages = sequence_tower(&image.factor, steps, true, "sat", lim)?;
    let last = stages.last().expect("stage 0 always exists");
    let full = Ideal::new(last.group.ring(), vec![Poly::pi(last.group.ring())])?
        .extend(last.group.relations().gens())?;
    let stabilized = last.centre.is_subset(&full, lim)?;
    Ok(Diptych {
        rho: rho.clone(),
        image,
        stages,
        stabilized,
    })
}

impl Diptych {
    pub fn psi(&self) -> &Arc<HopfPresentation> {
        &self.image.psi
    }

    /// The last stage computed.
    pub fn psi_prime(&self) -> &Arc<HopfPresentation> {
        &self.stages.last().expect("stage 0 always exists").group
    }

    /// Pi -> Psi'.
    pub fn to_psi_prime(&self) -> &GroupMorphism {
        &self.stages.last().expect("stage 0 always exists").morphism
    }

    /// Psi' -> Psi, composed through the stages.
    pub fn psi_prime_to_psi(&self, lim: &Limits) -> Result<GroupMorphism> {
        let mut acc = GroupMorphism::identity(self.psi());
        for st in &self.stages[1..] {
            acc = acc.after(&st.projection, lim)?;
        }
        Ok(acc)
    }

    /// Stages are Hopf algebras and flat, stage maps are morphisms, and the square commutes.
    pub fn check(&self, lim: &Limits) -> Result<Report> {
        let mut rep = Report::new();
        for st in &self.stages {
            rep.merge(st.group.check_hopf_and_flat(lim)?);
            rep.merge(st.projection.check(lim)?);
            rep.merge(st.morphism.check(lim)?);
        }
        let down = self.psi_prime_to_psi(lim)?;
        let composite = self.image.inclusion.after(&down, lim)?.after(self.to_psi_prime(), lim)?;
        let src = self.rho.source();
        for (v, (a, b)) in self
            .rho
            .target()
            .vars()
            .iter()
            .zip(composite.pullback().images().iter().zip(self.rho.pullback().images()))
        {
            rep.zero("factorization", v.as_str(), &src.relations().reduce(&(a - b), lim)?);
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests;
