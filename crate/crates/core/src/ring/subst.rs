use std::sync::Arc;

use super::poly::{Poly, Ring};
use crate::error::{Error, Result};

/// A ring homomorphism Q[pi][source vars] -> Q[pi][target vars] fixing pi, given by the
/// images of the source variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: Vec<Poly>,
}

impl Substitution {
    pub fn new(source: &Arc<Ring>, target: &Arc<Ring>, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.vars().len() {
            return Err(Error::Precondition(format!(
                "substitution needs {} images, got {}",
                source.vars().len(),
                images.len()
            )));
        }
        let images = images
            .into_iter()
            .map(|p| p.to_ring(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Builds a substitution from named images. Variables without an explicit image go to the
    /// target variable of the same name, if there is one.
    pub fn from_pairs(
        source: &Arc<Ring>,
        target: &Arc<Ring>,
        pairs: &[(String, Poly)],
    ) -> Result<Self> {
        for (name, _) in pairs {
            if source.index_of(name).is_none() || name == super::PI {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let images = source
            .vars()
            .iter()
            .map(|v| match pairs.iter().find(|(n, _)| n == v) {
                Some((_, p)) => p.to_ring(target),
                None => Poly::var(target, v),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        Self {
            source: ring.clone(),
            target: ring.clone(),
            images: (0..ring.vars().len())
                .map(|i| Poly::var_index(ring, i))
                .collect(),
        }
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Option<&Poly> {
        self.source
            .vars()
            .iter()
            .position(|v| v == name)
            .map(|i| &self.images[i])
    }

    /// Applies the homomorphism. `f` must live in a ring with the source's variable names.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if !f.ring().same_names(&self.source) {
            // tolerate a reordering of the same variables
            let names = f.ring().names();
            if names.len() != self.source.names().len()
                || names.iter().any(|n| self.source.index_of(n).is_none())
            {
                return Err(Error::RingMismatch(format!(
                    "substitution from {:?} applied to polynomial over {:?}",
                    self.source.vars(),
                    f.ring().vars()
                )));
            }
            return self.apply(&f.to_ring(&self.source)?);
        }
        let pi_src = self.source.pi_index();
        let pi = Poly::pi(&self.target);
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); self.source.len()];
        let mut out = Poly::zero(&self.target);
        for (e, c) in f.terms() {
            let mut term = Poly::constant(&self.target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let base = if i == pi_src { &pi } else { &self.images[i] };
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Poly::one(&self.target));
                }
                while powers.len() <= k as usize {
                    let next = &powers[powers.len() - 1] * base;
                    powers.push(next);
                }
                term = &term * &powers[k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `self` followed by `next`: source -> self.target -> next.target.
    pub fn then(&self, next: &Substitution) -> Result<Substitution> {
        let images = self
            .images
            .iter()
            .map(|p| next.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        })
    }

    pub fn map_images(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<Substitution> {
        Ok(Substitution {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.iter().map(f).collect::<Result<Vec<_>>>()?,
        })
    }
}
