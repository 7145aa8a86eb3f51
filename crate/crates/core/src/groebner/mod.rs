//! Groebner-basis kernel over Q, with pi treated as the smallest variable.

mod buchberger;
mod ops;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ring::{MonomialOrder, Poly, Ring};

pub use ops::{
    contract, eliminate, quotient, saturate, saturate_pi, subalgebra_member, Subalgebra,
    SubalgebraWitness,
};

/// Bounds on a single Groebner computation. Exceeding one is an error, never a silent answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_pairs: 100_000,
            max_degree: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub member: bool,
    /// When `member`, f = sum of cofactors[i] * generators[i].
    pub cofactors: Option<Vec<Poly>>,
}

type CofactorBasis = Vec<(Poly, Vec<Poly>)>;

/// An ideal of a polynomial ring, with its reduced Groebner basis computed on first use under
/// the ring's monomial order.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
    cofactor_gb: OnceLock<CofactorBasis>,
    with_pi: OnceLock<Box<Ideal>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", shown.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly>) -> Result<Ideal> {
        let gens = gens
            .into_iter()
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(ring, gens))
    }

    fn from_parts(ring: &Arc<Ring>, gens: Vec<Poly>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
            cofactor_gb: OnceLock::new(),
            with_pi: OnceLock::new(),
        }
    }

    /// An ideal whose generators are already known to be its reduced basis.
    pub(crate) fn from_basis(ring: &Arc<Ring>, basis: Vec<Poly>) -> Ideal {
        let ideal = Self::from_parts(ring, basis.clone());
        let _ = ideal.gb.set(basis);
        ideal
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Self::from_basis(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Self::from_basis(ring, vec![Poly::one(ring)])
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// The same ideal in a ring with the same variables under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        let ring = self.ring.with_order(order);
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(&ring).expect("same variables"))
            .collect();
        Self::from_parts(&ring, gens)
    }

    /// Moves the ideal into `ring`, which must contain every variable used by a generator.
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<Ideal> {
        Ideal::new(ring, self.gens.clone())
    }

    /// The ideal generated by `self` and `more`.
    pub fn extend(&self, more: &[Poly]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        for p in more {
            gens.push(p.to_ring(&self.ring)?);
        }
        Ok(Self::from_parts(&self.ring, gens))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.extend(&other.gens)
    }

    pub fn groebner_basis(&self, lim: &Limits) -> Result<&[Poly]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let basis: Vec<Poly> = buchberger::groebner(&self.ring, &self.gens, false, lim)?
            .into_iter()
            .map(|e| e.poly)
            .collect();
        let _ = self.gb.set(basis);
        Ok(self.gb.get().expect("just set"))
    }

    fn cofactor_basis(&self, lim: &Limits) -> Result<&CofactorBasis> {
        if let Some(cb) = self.cofactor_gb.get() {
            return Ok(cb);
        }
        let basis: CofactorBasis = buchberger::groebner(&self.ring, &self.gens, true, lim)?
            .into_iter()
            .map(|e| (e.poly, e.cofactors.expect("tracked")))
            .collect();
        let _ = self.cofactor_gb.set(basis);
        Ok(self.cofactor_gb.get().expect("just set"))
    }

    fn check_ring(&self, f: &Poly) -> Result<()> {
        if !f.ring().same_names(&self.ring) {
            return Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                f.ring().vars(),
                self.ring.vars()
            )));
        }
        if f.ring().order() != self.ring.order() {
            return Err(Error::OrderMismatch(format!(
                "polynomial under {:?}, basis under {:?}",
                f.ring().order(),
                self.ring.order()
            )));
        }
        Ok(())
    }

    /// Remainder of division by the reduced basis; zero exactly on members.
    pub fn normal_form(&self, f: &Poly, lim: &Limits) -> Result<Poly> {
        self.check_ring(f)?;
        let gb = self.groebner_basis(lim)?;
        let refs: Vec<&Poly> = gb.iter().collect();
        Ok(buchberger::reduce(f, &refs, true, None))
    }

    /// Normal form of a polynomial over the same variables, whatever order its ring carries.
    pub fn reduce(&self, f: &Poly, lim: &Limits) -> Result<Poly> {
        self.normal_form(&f.to_ring(&self.ring)?, lim)
    }

    pub fn contains(&self, f: &Poly, lim: &Limits) -> Result<bool> {
        Ok(self.reduce(f, lim)?.is_zero())
    }

    pub fn ideal_member(&self, f: &Poly, lim: &Limits) -> Result<MembershipCertificate> {
        let f = f.to_ring(&self.ring)?;
        let cb = self.cofactor_basis(lim)?;
        let polys: Vec<&Poly> = cb.iter().map(|(p, _)| p).collect();
        let mut qs = vec![Vec::new(); polys.len()];
        let r = buchberger::reduce(&f, &polys, true, Some(&mut qs));
        if !r.is_zero() {
            return Ok(MembershipCertificate {
                member: false,
                cofactors: None,
            });
        }
        let mut cof = vec![Poly::zero(&self.ring); self.gens.len()];
        for (q, (_, c)) in qs.iter().zip(cb) {
            if q.is_empty() {
                continue;
            }
            let qp = Poly::from_terms(&self.ring, q.iter().cloned());
            for (acc, ci) in cof.iter_mut().zip(c) {
                *acc = &*acc + &(&qp * ci);
            }
        }
        Ok(MembershipCertificate {
            member: true,
            cofactors: Some(cof),
        })
    }

    pub fn is_subset(&self, other: &Ideal, lim: &Limits) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g, lim)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal, lim: &Limits) -> Result<bool> {
        Ok(self.is_subset(other, lim)? && other.is_subset(self, lim)?)
    }

    pub fn is_unit(&self, lim: &Limits) -> Result<bool> {
        Ok(self
            .groebner_basis(lim)?
            .iter()
            .any(|g| g.is_constant() && !g.is_zero()))
    }

    /// The ideal with its generators replaced by its reduced basis.
    pub fn canonical(&self, lim: &Limits) -> Result<Ideal> {
        Ok(Self::from_basis(&self.ring, self.groebner_basis(lim)?.to_vec()))
    }

    /// Solves pi*g = f modulo the ideal. The ideal should be pi-saturated so that g is unique
    /// modulo it; the result is returned in normal form.
    pub fn divide_pi(&self, f: &Poly, lim: &Limits) -> Result<Poly> {
        let r = self.reduce(f, lim)?;
        if let Ok(q) = r.divide_scalar_pi(1) {
            return self.normal_form(&q, lim);
        }
        let ext = match self.with_pi.get() {
            Some(e) => e,
            None => {
                let mut gens = vec![Poly::pi(&self.ring)];
                gens.extend(self.groebner_basis(lim)?.iter().cloned());
                let _ = self.with_pi.set(Box::new(Self::from_parts(&self.ring, gens)));
                self.with_pi.get().expect("just set")
            }
        };
        let cert = ext.ideal_member(&r, lim)?;
        match cert.cofactors {
            Some(c) if cert.member => self.normal_form(&c[0], lim),
            _ => Err(Error::DivisionObstruction {
                witness: r.to_string(),
            }),
        }
    }
}
