use std::fmt;
use std::sync::Arc;

use super::HopfPresentation;
use crate::error::{Error, Result};
use crate::groebner::Limits;
use crate::report::Report;
use crate::ring::{parse_poly, Poly, Substitution};

/// A homomorphism of group schemes source -> target, given by the pullback of the target's
/// generators into the source's coordinate ring.
#[derive(Clone)]
pub struct GroupMorphism {
    source: Arc<HopfPresentation>,
    target: Arc<HopfPresentation>,
    pullback: Substitution,
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupMorphism({} -> {}: {})",
            self.source.name(),
            self.target.name(),
            self.describe()
        )
    }
}

impl GroupMorphism {
    pub fn new(
        source: &Arc<HopfPresentation>,
        target: &Arc<HopfPresentation>,
        images: Vec<Poly>,
    ) -> Result<Self> {
        Ok(Self {
            pullback: Substitution::new(target.ring(), source.ring(), images)?,
            source: source.clone(),
            target: target.clone(),
        })
    }

    /// Pullback images as text, in the order of the target's variables.
    pub fn parse(
        source: &Arc<HopfPresentation>,
        target: &Arc<HopfPresentation>,
        images: &[&str],
    ) -> Result<Self> {
        let imgs = images
            .iter()
            .map(|s| parse_poly(source.ring(), s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, imgs)
    }

    pub fn identity(g: &Arc<HopfPresentation>) -> Self {
        Self {
            pullback: Substitution::identity(g.ring()),
            source: g.clone(),
            target: g.clone(),
        }
    }

    pub fn source(&self) -> &Arc<HopfPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<HopfPresentation> {
        &self.target
    }

    pub fn pullback(&self) -> &Substitution {
        &self.pullback
    }

    /// Pullback of an element of the target's coordinate ring.
    pub fn pull(&self, f: &Poly) -> Result<Poly> {
        self.pullback.apply(f)
    }

    /// `self` after `first`: first.source -> first.target = self.source -> self.target.
    pub fn after(&self, first: &GroupMorphism, lim: &Limits) -> Result<GroupMorphism> {
        if !first.target.ring().same_names(self.source.ring()) {
            return Err(Error::RingMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name(),
                self.target.name(),
                first.source.name(),
                first.target.name()
            )));
        }
        let imgs = self
            .pullback
            .images()
            .iter()
            .map(|p| {
                let q = first.pullback.apply(p)?;
                first.source.normal_form(&q, lim)
            })
            .collect::<Result<Vec<_>>>()?;
        GroupMorphism::new(&first.source, &self.target, imgs)
    }

    pub fn describe(&self) -> String {
        self.target
            .vars()
            .iter()
            .zip(self.pullback.images())
            .map(|(v, p)| format!("{v} -> {p}"))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Pullback images in the doubled ring: y' -> phi(y)', y'' -> phi(y)''.
    fn doubled_pullback(&self) -> Result<Substitution> {
        let s = &self.source;
        let mut imgs = Vec::new();
        for k in 0..2 {
            for p in self.pullback.images() {
                imgs.push(s.in_copy(p, k, s.doubled())?);
            }
        }
        Substitution::new(self.target.doubled(), s.doubled(), imgs)
    }

    /// Relations preserved, and compatibility with comultiplication, counit and antipode on
    /// every target generator, all modulo the source relations.
    pub fn check(&self, lim: &Limits) -> Result<Report> {
        let mut rep = Report::new();
        let s = &self.source;
        let t = &self.target;
        for g in t.relations().gens() {
            let r = s.relations().reduce(&self.pull(g)?, lim)?;
            rep.zero("relations-preserved", g.to_string(), &r);
        }
        let dd = self.doubled_pullback()?;
        for (i, y) in t.vars().iter().enumerate() {
            let img = &self.pullback.images()[i];
            let lhs = s.comul().apply(img)?;
            let rhs = dd.apply(&t.comul().images()[i])?;
            let r = s.relations2().reduce(&(&lhs - &rhs), lim)?;
            rep.zero("comul-compatible", y.as_str(), &r);

            let e = &s.apply_counit(img)? - &t.counit().images()[i].to_ring(s.counit().target())?;
            let r = s.base_relations().reduce(&e, lim)?;
            rep.zero("counit-compatible", y.as_str(), &r);

            let lhs = s.antipode().apply(img)?;
            let rhs = self.pull(&t.antipode().images()[i])?;
            let r = s.relations().reduce(&(&lhs - &rhs), lim)?;
            rep.zero("antipode-compatible", y.as_str(), &r);
        }
        Ok(rep)
    }
}
