use std::sync::{Arc, OnceLock};

use super::{copies_ring, Base, GroupMorphism, HopfPresentation};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, Ideal, Limits};
use crate::report::Report;
use crate::ring::{MonomialOrder, Poly, Ring, Substitution};

/// A presentation over R_n together with the triviality verdict.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub group: HopfPresentation,
    pub level: u32,
    pub trivial: bool,
    /// First augmentation generator that survives modulo pi^(n+1).
    pub witness: Option<String>,
}

/// A presentation with redundant generators removed, and the isomorphism in both directions.
#[derive(Debug, Clone)]
pub struct Simplified {
    pub group: HopfPresentation,
    /// Old generators expressed in the new ring.
    pub forward: Substitution,
    /// New generators expressed in the old ring.
    pub backward: Substitution,
}

impl HopfPresentation {
    /// Replaces the relation ideal, keeping its cached basis.
    pub(crate) fn with_relations(mut self, relations: Ideal) -> Self {
        self.relations = relations;
        self.rel2 = OnceLock::new();
        self.rel3 = OnceLock::new();
        self
    }

    /// The ideal of the identity section: generators x - eps(x).
    pub fn augmentation_ideal(&self) -> Ideal {
        let gens = (0..self.vars().len())
            .map(|i| &Poly::var_index(&self.ring, i) - &self.counit_of(i))
            .collect();
        Ideal::new(&self.ring, gens).expect("own ring")
    }

    /// Whether `ideal` (generators in this ring) cuts out a closed subgroup: proper, and
    /// stable under comultiplication, counit and antipode. With `modulo_pi` the conditions
    /// are imposed on the special fibre only.
    pub fn check_hopf_ideal(&self, ideal: &Ideal, modulo_pi: bool, lim: &Limits) -> Result<Report> {
        let mut rep = Report::new();
        let pi = Poly::pi(&self.ring);
        let mut extra = self.relations.gens().to_vec();
        if modulo_pi {
            extra.push(pi.clone());
        }
        let full = ideal.to_ring(&self.ring)?.extend(&extra)?;
        if full.is_unit(lim)? {
            rep.fail("proper", ideal.to_string(), "1 lies in the ideal");
            return Ok(rep);
        }
        rep.pass("proper", ideal.to_string());
        let mut gens2 = Vec::new();
        for k in 0..2 {
            for g in full.gens() {
                gens2.push(self.in_copy(g, k, &self.doubled)?);
            }
        }
        let full2 = Ideal::new(&self.doubled, gens2)?;
        let base = Ring::base();
        let base_ideal = if modulo_pi {
            self.base_relations.extend(&[Poly::pi(&base)])?
        } else {
            self.base_relations.clone()
        };
        for a in ideal.gens() {
            let subject = a.to_string();
            let r = full2.reduce(&self.comul.apply(a)?, lim)?;
            rep.zero("comul-stable", subject.as_str(), &r);
            let r = base_ideal.reduce(&self.counit.apply(a)?, lim)?;
            rep.zero("counit-vanishes", subject.as_str(), &r);
            let r = full.reduce(&self.antipode.apply(a)?, lim)?;
            rep.zero("antipode-stable", subject.as_str(), &r);
        }
        Ok(rep)
    }

    /// Relations replaced by their reduced basis and structure maps by normal forms.
    pub fn canonical(&self, lim: &Limits) -> Result<HopfPresentation> {
        let rel = self.relations.canonical(lim)?;
        let rel2 = self.relations2();
        let comul = self
            .comul
            .images()
            .iter()
            .map(|p| rel2.reduce(p, lim))
            .collect::<Result<Vec<_>>>()?;
        let counit = self
            .counit
            .images()
            .iter()
            .map(|p| self.base_relations.reduce(p, lim))
            .collect::<Result<Vec<_>>>()?;
        let antipode = self
            .antipode
            .images()
            .iter()
            .map(|p| rel.reduce(p, lim))
            .collect::<Result<Vec<_>>>()?;
        let mut out = self.clone();
        out.comul = Substitution::new(&self.ring, &self.doubled, comul)?;
        out.counit = Substitution::new(&self.ring, self.counit.target(), counit)?;
        out.antipode = Substitution::new(&self.ring, &self.ring, antipode)?;
        Ok(out.with_relations(rel))
    }

    /// Base change to the residue field: pi := 0 in relations and structure maps.
    pub fn special_fibre(&self, lim: &Limits) -> Result<HopfPresentation> {
        self.base_change(0, true, lim)
    }

    fn base_change(&self, n: u32, kill_pi: bool, lim: &Limits) -> Result<HopfPresentation> {
        if let Base::Truncated(m) = self.base {
            if m < n {
                return Err(Error::Precondition(format!(
                    "cannot lift a presentation over {} to R_{n}",
                    self.base
                )));
            }
        }
        let zero = |r: &Arc<Ring>, p: &Poly| -> Poly {
            if kill_pi {
                p.to_ring(r).expect("own ring").substitute_pi(&Poly::zero(r))
            } else {
                p.to_ring(r).expect("own ring").truncate_pi(n)
            }
        };
        let rels: Vec<Poly> = self
            .relations
            .groebner_basis(lim)?
            .iter()
            .map(|g| zero(&self.ring, g))
            .filter(|g| !g.is_zero())
            .collect();
        let base = Ring::base();
        let comul = self.comul.images().iter().map(|p| zero(&self.doubled, p)).collect();
        let counit = self.counit.images().iter().map(|p| zero(&base, p)).collect();
        let antipode = self.antipode.images().iter().map(|p| zero(&self.ring, p)).collect();
        let name = if n == 0 {
            format!("{}_k", self.name)
        } else {
            format!("{}_R{n}", self.name)
        };
        HopfPresentation::new(
            &name,
            &self.ring,
            rels,
            comul,
            counit,
            antipode,
            Base::Truncated(n),
        )
    }

    /// Base change to R_n. The group is trivial when the augmentation generators vanish
    /// modulo (relations, pi^(n+1)); with `via` the generators are those of the morphism's
    /// target pulled back, so the verdict is about the induced morphism over R_n.
    pub fn reduce_mod(
        &self,
        n: u32,
        via: Option<&GroupMorphism>,
        lim: &Limits,
    ) -> Result<Reduction> {
        let group = self.base_change(n, false, lim)?;
        let gens: Vec<Poly> = match via {
            None => self.augmentation_ideal().gens().to_vec(),
            Some(m) => {
                if !m.source().ring().same_names(&self.ring) {
                    return Err(Error::RingMismatch(format!(
                        "morphism starts at {}, not {}",
                        m.source().name(),
                        self.name
                    )));
                }
                m.target()
                    .augmentation_ideal()
                    .gens()
                    .iter()
                    .map(|g| m.pull(g))
                    .collect::<Result<_>>()?
            }
        };
        let mut witness = None;
        for g in &gens {
            let r = group.relations().reduce(g, lim)?;
            if !r.is_zero() {
                witness = Some(r.to_string());
                break;
            }
        }
        Ok(Reduction {
            trivial: witness.is_none(),
            witness,
            level: n,
            group,
        })
    }

    /// Moves the presentation along an isomorphism `sigma` onto the ring of `relations`,
    /// whose variables are a subset of the current ones.
    fn transport(&self, relations: Ideal, sigma: &Substitution, lim: &Limits) -> Result<Self> {
        let ring = relations.ring().clone();
        let doubled = copies_ring(ring.vars(), 2)?;
        let n = self.vars().len();
        let mut imgs2 = Vec::new();
        for k in 0..2 {
            for p in sigma.images() {
                let map: Vec<Option<usize>> = (0..ring.len())
                    .map(|i| {
                        Some(if i == ring.pi_index() {
                            doubled.pi_index()
                        } else {
                            k * ring.vars().len() + i
                        })
                    })
                    .collect();
                imgs2.push(p.map_vars(&doubled, &map)?);
            }
        }
        debug_assert_eq!(imgs2.len(), 2 * n);
        let sigma2 = Substitution::new(&self.doubled, &doubled, imgs2)?;
        let mut out = HopfPresentation::new(
            &self.name,
            &ring,
            vec![],
            ring.vars()
                .iter()
                .map(|v| {
                    let i = self.ring.index_of(v).expect("subset of variables");
                    sigma2.apply(&self.comul.images()[i])
                })
                .collect::<Result<Vec<_>>>()?,
            ring.vars()
                .iter()
                .map(|v| self.counit.images()[self.ring.index_of(v).unwrap()].clone())
                .collect(),
            ring.vars()
                .iter()
                .map(|v| sigma.apply(&self.antipode.images()[self.ring.index_of(v).unwrap()]))
                .collect::<Result<Vec<_>>>()?,
            self.base,
        )?
        .with_relations(relations);
        out.flat_certified = self.flat_certified;
        out.canonical(lim)
    }

    /// Removes each candidate variable that the relations express as a polynomial in the
    /// remaining ones, in the order given.
    pub fn simplify(&self, candidates: &[String], lim: &Limits) -> Result<Simplified> {
        let mut cur = self.clone();
        let mut forward = Substitution::identity(&self.ring);
        for x in candidates {
            let Some(ix) = cur.ring.index_of(x) else {
                continue;
            };
            if ix == cur.ring.pi_index() {
                continue;
            }
            let mut names = vec![x.clone()];
            names.extend(cur.vars().iter().filter(|v| *v != x).cloned());
            let block = Ring::new(names, MonomialOrder::BlockGrevLex { split: 1 })?;
            let moved = cur.relations.to_ring(&block)?;
            let gb = moved.groebner_basis(lim)?;
            let mut unit_x = vec![0; block.len()];
            unit_x[0] = 1;
            let Some(g) = gb.iter().find(|g| g.leading_monomial() == Some(&unit_x[..])) else {
                continue;
            };
            let expr = &Poly::var_index(&block, 0) - g;
            let rel = eliminate(&cur.relations, &[x.as_str()], lim)?;
            let small = rel.ring().clone();
            let pairs = vec![(x.clone(), expr.to_ring(&small)?)];
            let sigma = Substitution::from_pairs(&cur.ring, &small, &pairs)?;
            cur = cur.transport(rel, &sigma, lim)?;
            forward = forward
                .then(&sigma)?
                .map_images(|p| cur.relations.reduce(p, lim))?;
        }
        let backward = Substitution::from_pairs(&cur.ring, &self.ring, &[])?;
        Ok(Simplified {
            group: cur,
            forward,
            backward,
        })
    }

    /// Compares with `other` after renaming variables (`renaming` maps own names to other's):
    /// equal relation ideals, and structure maps equal modulo relations.
    pub fn compare(
        &self,
        other: &HopfPresentation,
        renaming: &[(&str, &str)],
        lim: &Limits,
    ) -> Result<Report> {
        let mut rep = Report::new();
        let rename = |v: &str| -> String {
            renaming
                .iter()
                .find(|(a, _)| *a == v)
                .map(|(_, b)| b.to_string())
                .unwrap_or_else(|| v.to_string())
        };
        let mut names = Vec::new();
        for v in self.vars() {
            let w = rename(v);
            if other.ring.index_of(&w).is_none() {
                return Err(Error::UnknownVariable(w));
            }
            names.push(w);
        }
        if names.len() != other.vars().len() {
            rep.fail(
                "variables",
                self.name.as_str(),
                format!("{} vs {} generators", names.len(), other.vars().len()),
            );
            return Ok(rep);
        }
        let to_other: Vec<Option<usize>> = (0..self.ring.len())
            .map(|i| {
                if i == self.ring.pi_index() {
                    Some(other.ring.pi_index())
                } else {
                    other.ring.index_of(&names[i])
                }
            })
            .collect();
        let mv = |p: &Poly| p.map_vars(&other.ring, &to_other);
        let moved: Vec<Poly> = self.relations.gens().iter().map(mv).collect::<Result<_>>()?;
        let mine = Ideal::new(&other.ring, moved)?;
        if mine.equals(other.relations(), lim)? {
            rep.pass("relations", self.name.as_str());
        } else {
            rep.fail("relations", self.name.as_str(), format!("{mine} vs {}", other.relations()));
        }
        let to_other2: Vec<Option<usize>> = (0..self.doubled.len())
            .map(|j| {
                let n = self.vars().len();
                if j == 2 * n {
                    Some(other.doubled.pi_index())
                } else {
                    other
                        .doubled
                        .index_of(&super::copy_name(&names[j % n], j / n))
                }
            })
            .collect();
        for (i, v) in self.vars().iter().enumerate() {
            let k = other.ring.index_of(&names[i]).unwrap();
            let d = self.comul.images()[i].map_vars(&other.doubled, &to_other2)?;
            let r = other.relations2().reduce(&(&d - &other.comul.images()[k]), lim)?;
            rep.zero("comul", v.as_str(), &r);
            let e = &self.counit.images()[i] - &other.counit.images()[k].to_ring(self.counit.target())?;
            rep.zero("counit", v.as_str(), &self.base_relations.reduce(&e, lim)?);
            let s = mv(&self.antipode.images()[i])?;
            let r = other.relations.reduce(&(&s - &other.antipode.images()[k]), lim)?;
            rep.zero("antipode", v.as_str(), &r);
        }
        Ok(rep)
    }
}
