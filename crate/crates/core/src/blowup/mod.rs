//! Neron blowups of closed subgroups of the special fibre, partial blowups of level n,
//! truncations of the automatic blowup, standard sequences and strict transforms.

mod sequence;
mod transform;

use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::groebner::{saturate_pi, Ideal, Limits};
use crate::hopf::{Base, GroupMorphism, HopfPresentation};
use crate::report::Report;
use crate::ring::{Poly, Ring, Substitution};

pub(crate) use sequence::tower as sequence_tower;
pub use sequence::{automatic_member, automatic_truncation, standard_sequence, Stage, StandardSequence};
pub use transform::{
    beyond_relations, check_constancy, check_fibre_isomorphism, strict_transform, ConstancyReport,
    ConstancyStage,
};

/// How the centre's generators become new variables.
#[derive(Debug, Clone)]
pub struct BlowupOptions {
    /// Drop generators that lie in the ideal of the others plus pi and the relations.
    pub minimize_centre: bool,
    /// Also adjoin S(a)/pi for each generator a.
    pub close_antipode: bool,
    /// Eliminate old generators that become polynomials in the new ones.
    pub simplify: bool,
    /// Explicit names for the adjoined variables, in generator order.
    pub names: Vec<String>,
    /// Name of the blown group.
    pub name: Option<String>,
}

impl Default for BlowupOptions {
    fn default() -> Self {
        Self {
            minimize_centre: true,
            close_antipode: false,
            simplify: false,
            names: Vec::new(),
            name: None,
        }
    }
}

impl BlowupOptions {
    /// Non-minimized, antipode-closed and simplified: the shape of the level groups.
    pub fn normalized() -> Self {
        Self {
            minimize_centre: false,
            close_antipode: true,
            simplify: true,
            ..Self::default()
        }
    }
}

/// A new variable with pi^power * name = numerator.
#[derive(Debug, Clone)]
pub struct Adjoined {
    pub name: String,
    /// Element of the original coordinate ring.
    pub numerator: Poly,
    pub power: u32,
}

#[derive(Debug, Clone)]
pub struct BlowupResult {
    pub original: Arc<HopfPresentation>,
    pub blown: Arc<HopfPresentation>,
    /// blown -> original.
    pub projection: GroupMorphism,
    /// Ideal of the centre in the original ring.
    pub centre: Ideal,
    pub adjoined: Vec<Adjoined>,
}

/// Splits `x12` into (`x`, 12); a name without trailing digits has level 0.
fn split_level(name: &str) -> (&str, u32) {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let level = name[stem.len()..].parse().unwrap_or(0);
    (stem, level)
}

/// The variable x when f = x - c for a constant c.
fn shifted_var(f: &Poly) -> Option<usize> {
    let lm = f.leading_monomial()?;
    let pi = f.ring().pi_index();
    let i = lm.iter().position(|&e| e == 1)?;
    if i == pi || lm.iter().sum::<u32>() != 1 || f.leading_coefficient() != Some(&crate::ring::rat(1, 1)) {
        return None;
    }
    let rest = f - &Poly::var_index(f.ring(), i);
    rest.is_constant().then_some(i)
}

fn fresh_names(g: &HopfPresentation, gens: &[Poly], power: u32, given: &[String]) -> Result<Vec<String>> {
    let mut taken: Vec<String> = g.vars().to_vec();
    let mut out = Vec::new();
    for (j, a) in gens.iter().enumerate() {
        let name = if let Some(n) = given.get(j) {
            if taken.contains(n) {
                return Err(Error::Precondition(format!("variable `{n}` already in use")));
            }
            n.clone()
        } else {
            let mut n = match shifted_var(a) {
                Some(i) => {
                    let var = &g.vars()[i];
                    let (stem, level) = split_level(var);
                    let n = format!("{stem}{}", level + power);
                    if taken.contains(&n) {
                        format!("{var}_{power}")
                    } else {
                        n
                    }
                }
                None => format!("xi{}", j + 1),
            };
            while taken.contains(&n) {
                n.push('_');
            }
            n
        };
        taken.push(name.clone());
        out.push(name);
    }
    Ok(out)
}

/// Solves pi^k * q = f modulo a pi-saturated ideal.
pub(crate) fn divide_pi_power(ideal: &Ideal, f: &Poly, k: u32, lim: &Limits) -> Result<Poly> {
    let mut q = ideal.reduce(f, lim)?;
    for _ in 0..k {
        q = ideal.divide_pi(&q, lim)?;
    }
    Ok(q)
}

/// Generators to adjoin: those not already in (pi^power) + relations, optionally minimized.
fn centre_generators(
    g: &HopfPresentation,
    centre: &Ideal,
    power: u32,
    opts: &BlowupOptions,
    lim: &Limits,
) -> Result<Vec<Poly>> {
    let ring = g.ring();
    let mut base = g.relations().gens().to_vec();
    base.push(Poly::pi_power(ring, power));
    let trivial = Ideal::new(ring, base.clone())?;
    let mut gens = Vec::new();
    for a in centre.gens() {
        let a = g.normal_form(&a.to_ring(ring)?, lim)?;
        if !trivial.contains(&a, lim)? && !gens.contains(&a) {
            gens.push(a);
        }
    }
    if opts.close_antipode {
        for a in gens.clone() {
            let s = g.normal_form(&g.antipode().apply(&a)?, lim)?;
            if !trivial.contains(&s, lim)? && !gens.contains(&s) && !gens.contains(&-&s) {
                gens.push(s);
            }
        }
    }
    if opts.minimize_centre {
        let mut j = gens.len();
        while j > 0 {
            j -= 1;
            let mut others = base.clone();
            others.extend(gens.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, p)| p.clone()));
            if Ideal::new(ring, others)?.contains(&gens[j], lim)? {
                gens.remove(j);
            }
        }
    }
    Ok(gens)
}

/// Adjoins a_j / pi^power for the centre generators, saturates, and transports the Hopf
/// structure by division.
fn adjoin(
    g: &Arc<HopfPresentation>,
    centre: &Ideal,
    power: u32,
    default_name: String,
    opts: &BlowupOptions,
    lim: &Limits,
) -> Result<BlowupResult> {
    let gens = centre_generators(g, centre, power, opts, lim)?;
    let names = fresh_names(g, &gens, power, &opts.names)?;
    let mut all = names.clone();
    all.extend(g.vars().iter().cloned());
    let ring = Ring::grevlex(all)?;
    let pik = Poly::pi_power(&ring, power);

    let mut rels = Vec::new();
    for r in g.relations().gens() {
        rels.push(r.to_ring(&ring)?);
    }
    for (j, a) in gens.iter().enumerate() {
        rels.push(&(&pik * &Poly::var_index(&ring, j)) - &a.to_ring(&ring)?);
    }
    let rel = saturate_pi(&Ideal::new(&ring, rels)?, lim)?.canonical(lim)?;
    if rel.is_unit(lim)? {
        return Err(Error::NotASubgroup(format!("blowing up {centre} gives the empty scheme")));
    }

    // A scaffold with the right rings, used for the doubled relations.
    let n = ring.vars().len();
    let zeros = |r: &Arc<Ring>| vec![Poly::zero(r); n];
    let doubled = crate::hopf::copies_ring(ring.vars(), 2)?;
    let scaffold = HopfPresentation::new(
        "scaffold",
        &ring,
        vec![],
        zeros(&doubled),
        zeros(&Ring::base()),
        zeros(&ring),
        Base::Dvr,
    )?;
    let scaffold = scaffold.with_relations(rel.clone());
    let rel2 = scaffold.relations2();

    let mut comul = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for a in &gens {
        let d = g.comul().apply(a)?.to_ring(&doubled)?;
        comul.push(divide_pi_power(rel2, &d, power, lim)?);
        let e = g.apply_counit(a)?;
        counit.push(e.divide_scalar_pi(power).map_err(|_| Error::NotASubgroup(format!(
            "counit of {a} is {e}, not divisible by pi^{power}"
        )))?);
        let s = g.antipode().apply(a)?.to_ring(&ring)?;
        antipode.push(divide_pi_power(&rel, &s, power, lim)?);
    }
    for i in 0..g.vars().len() {
        comul.push(rel2.reduce(&g.comul().images()[i].to_ring(&doubled)?, lim)?);
        counit.push(g.counit().images()[i].clone());
        antipode.push(rel.reduce(&g.antipode().images()[i].to_ring(&ring)?, lim)?);
    }
    let name = opts.name.clone().unwrap_or(default_name);
    let pres = HopfPresentation::new(&name, &ring, vec![], comul, counit, antipode, Base::Dvr)?
        .with_relations(rel)
        .mark_flat();

    let (blown, forward) = if opts.simplify {
        let s = pres.simplify(g.vars(), lim)?;
        (s.group, s.forward)
    } else {
        (pres, Substitution::identity(&ring))
    };
    let blown = Arc::new(blown);
    let images = g
        .vars()
        .iter()
        .map(|v| forward.apply(&Poly::var(&ring, v)?))
        .collect::<Result<Vec<_>>>()?;
    let projection = GroupMorphism::new(&blown, g, images)?;
    let adjoined = names
        .into_iter()
        .zip(gens)
        .map(|(name, numerator)| Adjoined {
            name,
            numerator,
            power,
        })
        .collect();
    Ok(BlowupResult {
        original: g.clone(),
        blown,
        projection,
        centre: centre.clone(),
        adjoined,
    })
}

fn require(rep: Report, what: &str) -> Result<()> {
    match rep.failures().next() {
        None => Ok(()),
        Some(c) => Err(Error::NotASubgroup(format!(
            "{what}: {} fails for {}{}",
            c.name,
            c.subject,
            c.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default()
        ))),
    }
}

/// Blows up G along the closed subgroup of its special fibre cut out by `centre`, which
/// must contain pi.
pub fn neron_blowup(
    g: &Arc<HopfPresentation>,
    centre: &Ideal,
    opts: &BlowupOptions,
    lim: &Limits,
) -> Result<BlowupResult> {
    if g.base() != Base::Dvr {
        return Err(Error::Precondition(format!("{} is not over the DVR", g.name())));
    }
    let centre = centre.to_ring(g.ring())?;
    if !centre.extend(g.relations().gens())?.contains(&Poly::pi(g.ring()), lim)? {
        return Err(Error::Precondition(format!("centre {centre} does not contain pi")));
    }
    require(g.check_hopf_ideal(&centre, true, lim)?, "centre")?;
    adjoin(g, &centre, 1, format!("{}'", g.name()), opts, lim)
}

/// Checks that `ideal` cuts out a flat closed subgroup over the DVR.
pub(crate) fn require_flat_subgroup(
    g: &HopfPresentation,
    ideal: &Ideal,
    lim: &Limits,
) -> Result<Ideal> {
    let ideal = ideal.to_ring(g.ring())?;
    require(g.check_hopf_ideal(&ideal, false, lim)?, "subgroup")?;
    let full = ideal.extend(g.relations().gens())?;
    let sat = saturate_pi(&full, lim)?;
    for s in sat.groebner_basis(lim)? {
        if !full.contains(s, lim)? {
            return Err(Error::Precondition(format!(
                "quotient by {ideal} is not flat: pi-torsion element {s}"
            )));
        }
    }
    Ok(ideal)
}

/// Adjoins pi^-(n+1) times the ideal of a flat closed subgroup H.
pub fn partial_blowup(
    g: &Arc<HopfPresentation>,
    subgroup: &Ideal,
    level: u32,
    opts: &BlowupOptions,
    lim: &Limits,
) -> Result<BlowupResult> {
    let ideal = require_flat_subgroup(g, subgroup, lim)?;
    let centre = ideal.extend(&[Poly::pi_power(g.ring(), level + 1)])?;
    adjoin(g, &centre, level + 1, format!("{}_p{level}", g.name()), opts, lim)
}

impl BlowupResult {
    pub fn adjoined_named(&self, name: &str) -> Option<&Adjoined> {
        self.adjoined.iter().find(|a| a.name == name)
    }

    /// Invariants: Hopf axioms and flatness of the blown group, the projection is a morphism,
    /// and pi^k * xi_j = a_j holds in the blown ring.
    pub fn check(&self, lim: &Limits) -> Result<Report> {
        let mut rep = self.blown.check_hopf_and_flat(lim)?;
        rep.merge(self.projection.check(lim)?);
        let ring = self.blown.ring();
        for a in &self.adjoined {
            let x = Poly::var(ring, &a.name)?;
            let d = &(&Poly::pi_power(ring, a.power) * &x) - &self.projection.pull(&a.numerator)?;
            rep.zero("adjoined-fraction", a.name.as_str(), &self.blown.normal_form(&d, lim)?);
        }
        Ok(rep)
    }

    /// The blown ring inside K[G]: f as numerator / pi^k with the numerator in R[G], k minimal.
    pub fn as_fraction(&self, f: &Poly, lim: &Limits) -> Result<(Poly, u32)> {
        let f = f.to_ring(self.blown.ring())?;
        let orig = self.original.ring();
        let pi_slot = f.ring().pi_index();
        let mut parts = Vec::new();
        for (e, c) in f.terms() {
            let mut num = &Poly::constant(orig, c.clone()) * &Poly::pi_power(orig, e[pi_slot]);
            let mut k = 0;
            for (i, name) in f.ring().vars().iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                let base = match self.adjoined_named(name) {
                    Some(a) => {
                        k += a.power * e[i];
                        a.numerator.clone()
                    }
                    None => Poly::var(orig, name)?,
                };
                num = &num * &base.pow(e[i]);
            }
            parts.push((num, k));
        }
        let top = parts.iter().map(|(_, k)| *k).max().unwrap_or(0);
        let mut num = Poly::zero(orig);
        for (p, k) in parts {
            num = &num + &(&p * &Poly::pi_power(orig, top - k));
        }
        let mut num = self.original.normal_form(&num, lim)?;
        let mut k = top;
        while k > 0 {
            match self.original.relations().divide_pi(&num, lim) {
                Ok(q) => {
                    num = q;
                    k -= 1;
                }
                Err(Error::DivisionObstruction { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        Ok((num, k))
    }

    /// [`Self::as_fraction`] printed as `num` or `(num)/pi^k`.
    pub fn fraction_string(&self, f: &Poly, lim: &Limits) -> Result<String> {
        let (num, k) = self.as_fraction(f, lim)?;
        Ok(fraction_text(&num, k))
    }

    /// Lifts a morphism into the original group whose special fibre lands in the centre.
    pub fn lift(&self, phi: &GroupMorphism, lim: &Limits) -> Result<GroupMorphism> {
        if !Arc::ptr_eq(phi.target(), &self.original)
            && !phi.target().ring().same_names(self.original.ring())
        {
            return Err(Error::RingMismatch(format!(
                "morphism lands in {}, not {}",
                phi.target().name(),
                self.original.name()
            )));
        }
        let src = phi.source();
        let mut images = Vec::new();
        for v in self.blown.vars() {
            let img = match self.adjoined_named(v) {
                Some(a) => {
                    let num = phi.pull(&a.numerator.to_ring(phi.target().ring())?)?;
                    divide_pi_power(src.relations(), &num, a.power, lim).map_err(|e| match e {
                        Error::DivisionObstruction { witness } => Error::LiftFailure {
                            witness: format!("{v} = ({})/pi^{}: remainder {witness}", a.numerator, a.power),
                        },
                        other => other,
                    })?
                }
                None => phi.pull(&Poly::var(phi.target().ring(), v)?)?,
            };
            images.push(img);
        }
        GroupMorphism::new(src, &self.blown, images)
    }
}

pub(crate) fn fraction_text(num: &Poly, k: u32) -> String {
    if k == 0 {
        return num.to_string();
    }
    let den = if k == 1 { "pi".to_string() } else { format!("pi^{k}") };
    if num.len() > 1 || num.leading_coefficient().is_some_and(|c| c.is_negative()) {
        format!("({num})/{den}")
    } else {
        format!("{num}/{den}")
    }
}

#[cfg(test)]
mod tests;
