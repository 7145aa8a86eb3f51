use std::sync::Arc;

use super::{Ideal, Limits};
use crate::error::Result;
use crate::ring::{MonomialOrder, Poly, Ring, Substitution};

const TAG: &str = "#t";

/// Restricts a basis computed in `big` (eliminated block first) to the polynomials free of
/// the first `split` variables, re-expressed in `small`.
fn restrict(basis: &[Poly], split: usize, small: &Arc<Ring>, map: &[Option<usize>]) -> Vec<Poly> {
    basis
        .iter()
        .filter(|g| (0..split).all(|i| !g.uses_var(i)))
        .map(|g| g.map_vars(small, map).expect("variables survive elimination"))
        .collect()
}

fn into_ideal(ring: &Arc<Ring>, basis: Vec<Poly>) -> Ideal {
    if *ring.order() == MonomialOrder::GrevLex {
        Ideal::from_basis(ring, basis)
    } else {
        Ideal::from_parts(ring, basis)
    }
}

/// (I : f^infinity), by adjoining t with 1 - t*f and eliminating t.
pub fn saturate(ideal: &Ideal, f: &Poly, lim: &Limits) -> Result<Ideal> {
    let ring = ideal.ring();
    let mut names = vec![TAG.to_string()];
    names.extend(ring.vars().iter().cloned());
    let big = Ring::new(names, MonomialOrder::BlockGrevLex { split: 1 })?;
    let lift: Vec<Option<usize>> = (0..ring.len()).map(|i| Some(i + 1)).collect();
    let mut gens: Vec<Poly> = ideal
        .gens()
        .iter()
        .map(|g| g.map_vars(&big, &lift))
        .collect::<Result<_>>()?;
    let t = Poly::var_index(&big, 0);
    let fb = f.to_ring(ring)?.map_vars(&big, &lift)?;
    gens.push(&Poly::one(&big) - &(&t * &fb));
    let gb = Ideal::from_parts(&big, gens);
    let back: Vec<Option<usize>> = (0..big.len())
        .map(|i| if i == 0 { None } else { Some(i - 1) })
        .collect();
    let basis = restrict(gb.groebner_basis(lim)?, 1, ring, &back);
    Ok(into_ideal(ring, basis))
}

pub fn saturate_pi(ideal: &Ideal, lim: &Limits) -> Result<Ideal> {
    saturate(ideal, &Poly::pi(ideal.ring()), lim)
}

/// I intersected with the subring without the `drop` variables. The result lives in a
/// grevlex ring on the remaining variables, in their original order.
pub fn eliminate(ideal: &Ideal, drop: &[&str], lim: &Limits) -> Result<Ideal> {
    let ring = ideal.ring();
    let kept: Vec<String> = ring
        .vars()
        .iter()
        .filter(|v| !drop.contains(&v.as_str()))
        .cloned()
        .collect();
    let small = Ring::grevlex(kept.clone())?;
    if drop.is_empty() {
        return ideal.to_ring(&small);
    }
    let mut names: Vec<String> = Vec::new();
    for d in drop {
        if ring.index_of(d).is_none() {
            return Err(crate::Error::UnknownVariable(d.to_string()));
        }
        names.push(d.to_string());
    }
    let split = names.len();
    names.extend(kept);
    let big = Ring::new(names, MonomialOrder::BlockGrevLex { split })?;
    let moved = ideal.to_ring(&big)?;
    let back: Vec<Option<usize>> = big.names().iter().map(|n| small.index_of(n)).collect();
    let basis = restrict(moved.groebner_basis(lim)?, split, &small, &back);
    Ok(Ideal::from_basis(&small, basis))
}

fn hidden(name: &str) -> String {
    format!("#b:{name}")
}

/// phi^{-1}(I_B + J) for phi: A -> B/J, as an ideal of phi's source ring.
pub fn contract(phi: &Substitution, relations: &Ideal, ib: &Ideal, lim: &Limits) -> Result<Ideal> {
    let a = phi.source();
    let b = phi.target();
    let nb = b.vars().len();
    let mut names: Vec<String> = b.vars().iter().map(|v| hidden(v)).collect();
    names.extend(a.vars().iter().cloned());
    let big = Ring::new(names, MonomialOrder::BlockGrevLex { split: nb })?;
    let from_b: Vec<Option<usize>> = (0..b.len())
        .map(|i| Some(if i == b.pi_index() { big.pi_index() } else { i }))
        .collect();
    let mut gens = Vec::new();
    for g in relations.gens().iter().chain(ib.gens()) {
        gens.push(g.to_ring(b)?.map_vars(&big, &from_b)?);
    }
    for (i, img) in phi.images().iter().enumerate() {
        let xa = Poly::var_index(&big, nb + i);
        gens.push(&xa - &img.map_vars(&big, &from_b)?);
    }
    let gb = Ideal::from_parts(&big, gens);
    let back: Vec<Option<usize>> = (0..big.len())
        .map(|i| {
            if i == big.pi_index() {
                Some(a.pi_index())
            } else if i >= nb {
                Some(i - nb)
            } else {
                None
            }
        })
        .collect();
    let basis = restrict(gb.groebner_basis(lim)?, nb, a, &back);
    Ok(into_ideal(a, basis))
}

/// f = expr(gens) modulo the relations, with expr a polynomial over Q[pi] in `z1, z2, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubalgebraWitness {
    pub ring: Arc<Ring>,
    pub expr: Poly,
}

/// Subalgebra membership by tag variables: `None` means not decided at the degree bound.
pub struct Subalgebra {
    ring: Arc<Ring>,
    big: Ideal,
    nb: usize,
    tags: Arc<Ring>,
}

impl Subalgebra {
    pub fn new(gens: &[Poly], relations: &Ideal) -> Result<Subalgebra> {
        let b = relations.ring();
        let nb = b.vars().len();
        let mut names: Vec<String> = b.vars().iter().map(|v| hidden(v)).collect();
        let tag_names: Vec<String> = (1..=gens.len()).map(|i| format!("z{i}")).collect();
        names.extend(tag_names.iter().map(|z| format!("#{z}")));
        let big = Ring::new(names, MonomialOrder::BlockGrevLex { split: nb })?;
        let from_b: Vec<Option<usize>> = (0..b.len())
            .map(|i| Some(if i == b.pi_index() { big.pi_index() } else { i }))
            .collect();
        let mut all = Vec::new();
        for g in relations.gens() {
            all.push(g.map_vars(&big, &from_b)?);
        }
        for (i, g) in gens.iter().enumerate() {
            let z = Poly::var_index(&big, nb + i);
            all.push(&z - &g.to_ring(b)?.map_vars(&big, &from_b)?);
        }
        Ok(Subalgebra {
            ring: b.clone(),
            big: Ideal::from_parts(&big, all),
            nb,
            tags: Ring::grevlex(tag_names)?,
        })
    }

    pub fn member(&self, f: &Poly, lim: &Limits) -> Result<Option<SubalgebraWitness>> {
        let big = self.big.ring().clone();
        let from_b: Vec<Option<usize>> = (0..self.ring.len())
            .map(|i| Some(if i == self.ring.pi_index() { big.pi_index() } else { i }))
            .collect();
        let fb = f.to_ring(&self.ring)?.map_vars(&big, &from_b)?;
        let r = self.big.normal_form(&fb, lim)?;
        if (0..self.nb).any(|i| r.uses_var(i)) {
            return Ok(None);
        }
        let back: Vec<Option<usize>> = (0..big.len())
            .map(|i| {
                if i == big.pi_index() {
                    Some(self.tags.pi_index())
                } else if i >= self.nb {
                    Some(i - self.nb)
                } else {
                    None
                }
            })
            .collect();
        Ok(Some(SubalgebraWitness {
            ring: self.tags.clone(),
            expr: r.map_vars(&self.tags, &back)?,
        }))
    }
}

pub fn subalgebra_member(
    f: &Poly,
    gens: &[Poly],
    relations: &Ideal,
    lim: &Limits,
) -> Result<Option<SubalgebraWitness>> {
    Subalgebra::new(gens, relations)?.member(f, lim)
}

/// Ideal quotient (I : f), as (I intersected with (f)) / f.
pub fn quotient(ideal: &Ideal, f: &Poly, lim: &Limits) -> Result<Ideal> {
    let ring = ideal.ring();
    let f = f.to_ring(ring)?;
    let mut names = vec![TAG.to_string()];
    names.extend(ring.vars().iter().cloned());
    let big = Ring::new(names, MonomialOrder::BlockGrevLex { split: 1 })?;
    let lift: Vec<Option<usize>> = (0..ring.len()).map(|i| Some(i + 1)).collect();
    let t = Poly::var_index(&big, 0);
    let mut gens = Vec::new();
    for g in ideal.gens() {
        gens.push(&t * &g.map_vars(&big, &lift)?);
    }
    let fb = f.map_vars(&big, &lift)?;
    gens.push(&fb - &(&t * &fb));
    let gb = Ideal::from_parts(&big, gens);
    let back: Vec<Option<usize>> = (0..big.len())
        .map(|i| if i == 0 { None } else { Some(i - 1) })
        .collect();
    let meet = restrict(gb.groebner_basis(lim)?, 1, ring, &back);
    let mut out = Vec::new();
    for g in meet {
        let mut qs = vec![Vec::new()];
        let r = super::buchberger::reduce(&g, &[&f], true, Some(&mut qs));
        debug_assert!(r.is_zero(), "intersection with (f) is divisible by f");
        out.push(Poly::from_terms(ring, qs.remove(0)));
    }
    Ok(Ideal::from_parts(ring, out))
}
