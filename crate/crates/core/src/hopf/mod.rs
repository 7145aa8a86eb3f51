//! Hopf-algebra presentations of affine group schemes over Q[pi], R_n = Q[pi]/(pi^(n+1)) and
//! the residue field, with morphisms between them.

mod check;
pub mod groups;
mod morphism;
mod ops;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{Ideal, Limits};
use crate::ring::{parse_poly, Poly, Ring, Substitution};

pub use morphism::GroupMorphism;
pub use ops::{Reduction, Simplified};

/// The base ring a presentation lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    /// The discrete valuation ring, modelled by Q[pi].
    Dvr,
    /// R_n = R/(pi^(n+1)); `Truncated(0)` is the residue field.
    Truncated(u32),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Dvr => f.write_str("dvr"),
            Base::Truncated(0) => f.write_str("k"),
            Base::Truncated(n) => write!(f, "R_{n}"),
        }
    }
}

/// Name of the k-th tensor copy of a variable: `x'`, `x''`, `x'''`.
pub fn copy_name(var: &str, k: usize) -> String {
    format!("{var}{}", "'".repeat(k + 1))
}

/// Generators, relations and the structure maps on generators.
#[derive(Clone)]
pub struct HopfPresentation {
    name: String,
    base: Base,
    ring: Arc<Ring>,
    relations: Ideal,
    comul: Substitution,
    counit: Substitution,
    antipode: Substitution,
    flat_certified: bool,
    doubled: Arc<Ring>,
    tripled: Arc<Ring>,
    base_relations: Ideal,
    rel2: OnceLock<Ideal>,
    rel3: OnceLock<Ideal>,
}

impl fmt::Debug for HopfPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn copies_ring(vars: &[String], n: usize) -> Result<Arc<Ring>> {
    let mut names = Vec::new();
    for k in 0..n {
        names.extend(vars.iter().map(|v| copy_name(v, k)));
    }
    Ring::grevlex(names)
}

impl HopfPresentation {
    /// Assembles a presentation. `comul` maps into [`Self::doubled`], `counit` into the
    /// base ring Q[pi]. Relations of a truncated base get pi^(n+1) added.
    pub fn new(
        name: &str,
        ring: &Arc<Ring>,
        relations: Vec<Poly>,
        comul: Vec<Poly>,
        counit: Vec<Poly>,
        antipode: Vec<Poly>,
        base: Base,
    ) -> Result<Self> {
        for v in ring.vars() {
            if v.ends_with('\'') || v.starts_with('#') {
                return Err(Error::Precondition(format!(
                    "`{v}` cannot name a group variable"
                )));
            }
        }
        let doubled = copies_ring(ring.vars(), 2)?;
        let tripled = copies_ring(ring.vars(), 3)?;
        let base_ring = Ring::base();
        let mut rels = relations;
        let base_relations = match base {
            Base::Dvr => Ideal::zero(&base_ring),
            Base::Truncated(n) => {
                rels.push(Poly::pi_power(ring, n + 1));
                Ideal::new(&base_ring, vec![Poly::pi_power(&base_ring, n + 1)])?
            }
        };
        Ok(Self {
            name: name.to_string(),
            base,
            relations: Ideal::new(ring, rels)?,
            comul: Substitution::new(ring, &doubled, comul)?,
            counit: Substitution::new(ring, &base_ring, counit)?,
            antipode: Substitution::new(ring, ring, antipode)?,
            ring: ring.clone(),
            flat_certified: false,
            doubled,
            tripled,
            base_relations,
            rel2: OnceLock::new(),
            rel3: OnceLock::new(),
        })
    }

    /// Builds a presentation from polynomial text, one structure-map image per variable.
    pub fn parse(
        name: &str,
        vars: &[&str],
        relations: &[&str],
        comul: &[&str],
        counit: &[&str],
        antipode: &[&str],
    ) -> Result<Self> {
        let ring = Ring::grevlex(vars.iter().copied())?;
        let doubled = copies_ring(ring.vars(), 2)?;
        let base = Ring::base();
        let p = |r: &Arc<Ring>, xs: &[&str]| -> Result<Vec<Poly>> {
            xs.iter().map(|s| parse_poly(r, s)).collect()
        };
        Self::new(
            name,
            &ring,
            p(&ring, relations)?,
            p(&doubled, comul)?,
            p(&base, counit)?,
            p(&ring, antipode)?,
            Base::Dvr,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: &str) -> Self {
        let mut out = self.clone();
        out.name = name.to_string();
        out
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn comul(&self) -> &Substitution {
        &self.comul
    }

    pub fn counit(&self) -> &Substitution {
        &self.counit
    }

    pub fn antipode(&self) -> &Substitution {
        &self.antipode
    }

    pub fn flat_certified(&self) -> bool {
        self.flat_certified
    }

    pub(crate) fn mark_flat(mut self) -> Self {
        self.flat_certified = true;
        self
    }

    /// Ring of the tensor square, variables `x'` then `x''`.
    pub fn doubled(&self) -> &Arc<Ring> {
        &self.doubled
    }

    /// Ring of the tensor cube, variables `x'`, `x''`, `x'''`.
    pub fn tripled(&self) -> &Arc<Ring> {
        &self.tripled
    }

    /// Relations of the base ring: (0) over the DVR, (pi^(n+1)) over R_n.
    pub fn base_relations(&self) -> &Ideal {
        &self.base_relations
    }

    /// Index map from the presentation ring into copy `k` of a ring of tensor copies.
    pub fn copy_map(&self, k: usize, target: &Arc<Ring>) -> Vec<Option<usize>> {
        let n = self.ring.vars().len();
        (0..self.ring.len())
            .map(|i| {
                Some(if i == n {
                    target.pi_index()
                } else {
                    k * n + i
                })
            })
            .collect()
    }

    /// f placed in tensor factor `k` of `target` (the doubled or tripled ring).
    pub fn in_copy(&self, f: &Poly, k: usize, target: &Arc<Ring>) -> Result<Poly> {
        f.to_ring(&self.ring)?.map_vars(target, &self.copy_map(k, target))
    }

    /// Relations imposed in both tensor factors.
    pub fn relations2(&self) -> &Ideal {
        self.rel2.get_or_init(|| self.copies_ideal(&self.doubled, 2))
    }

    pub fn relations3(&self) -> &Ideal {
        self.rel3.get_or_init(|| self.copies_ideal(&self.tripled, 3))
    }

    fn copies_ideal(&self, target: &Arc<Ring>, n: usize) -> Ideal {
        let mut gens = Vec::new();
        for k in 0..n {
            for g in self.relations.gens() {
                gens.push(self.in_copy(g, k, target).expect("copy of own variable"));
            }
        }
        Ideal::new(target, gens).expect("own ring")
    }

    /// The counit image of a generator as a polynomial in the presentation ring.
    pub fn counit_of(&self, i: usize) -> Poly {
        self.counit.images()[i]
            .to_ring(&self.ring)
            .expect("scalars embed")
    }

    /// The counit applied to an arbitrary element, as a polynomial in pi.
    pub fn apply_counit(&self, f: &Poly) -> Result<Poly> {
        self.counit.apply(f)
    }

    pub fn normal_form(&self, f: &Poly, lim: &Limits) -> Result<Poly> {
        self.relations.reduce(f, lim)
    }
}

impl fmt::Display for HopfPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {} {{", self.name)?;
        if self.base != Base::Dvr {
            writeln!(f, "  base: {};", self.base)?;
        }
        writeln!(f, "  vars: {};", self.vars().join(", "))?;
        let rels: Vec<String> = self
            .relations
            .gens()
            .iter()
            .filter(|g| match self.base {
                Base::Dvr => true,
                Base::Truncated(n) => **g != Poly::pi_power(&self.ring, n + 1),
            })
            .map(|g| g.to_string())
            .collect();
        if !rels.is_empty() {
            writeln!(f, "  relations: {};", rels.join(", "))?;
        }
        let maps = |s: &Substitution| -> String {
            self.vars()
                .iter()
                .zip(s.images())
                .map(|(v, p)| format!("{v} -> {p}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        if !self.vars().is_empty() {
            writeln!(f, "  comul: {};", maps(&self.comul))?;
            writeln!(f, "  counit: {};", maps(&self.counit))?;
            writeln!(f, "  antipode: {};", maps(&self.antipode))?;
        }
        write!(f, "}}")
    }
}
