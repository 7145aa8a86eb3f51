use std::sync::Arc;

use num_traits::Zero;

use super::RepMatrix;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Limits};
use crate::hopf::HopfPresentation;
use crate::ring::{Poly, Substitution};

/// I/aI for the ideal I of a closed subgroup H0, with the action of H0 by right conjugation.
#[derive(Debug, Clone)]
pub struct ConormalData {
    /// H0 as a presentation: the ambient relations plus I.
    pub subgroup: Arc<HopfPresentation>,
    /// Normal forms spanning I/aI, in reduced echelon form.
    pub basis: Vec<Poly>,
    /// gamma(e_j) = sum_i e_i (x) action[i][j].
    pub action: RepMatrix,
}

fn coefficient(p: &Poly, m: &[u32]) -> num_rational::BigRational {
    p.terms()
        .iter()
        .find(|(e, _)| e.as_slice() == m)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(num_rational::BigRational::zero)
}

/// Adds `p` to a basis kept in reduced echelon form (pivot = leading monomial).
fn echelon_insert(basis: &mut Vec<Poly>, p: Poly) {
    let mut p = p;
    for b in basis.iter() {
        let c = coefficient(&p, b.leading_monomial().expect("nonzero"));
        if !c.is_zero() {
            p = &p - &b.scale(&c);
        }
    }
    if p.is_zero() {
        return;
    }
    let p = p.monic();
    let lm = p.leading_monomial().expect("nonzero").to_vec();
    for b in basis.iter_mut() {
        let c = coefficient(b, &lm);
        if !c.is_zero() {
            *b = &*b - &p.scale(&c);
        }
    }
    basis.push(p);
    basis.sort_by(|a, b| {
        let r = a.ring();
        r.cmp_monomials(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
}

/// The conormal representation of the subgroup cut out by `ideal` in a group over a field.
pub fn conormal_rep(g: &HopfPresentation, ideal: &Ideal, lim: &Limits) -> Result<ConormalData> {
    let ring = g.ring();
    let ideal = ideal.to_ring(ring)?;
    if let Some(c) = g.check_hopf_ideal(&ideal, false, lim)?.failures().next() {
        return Err(Error::NotASubgroup(format!("{} fails for {}", c.name, c.subject)));
    }
    let full = ideal.extend(g.relations().gens())?;
    let mut j_gens = g.relations().gens().to_vec();
    for a in g.augmentation_ideal().gens() {
        for f in ideal.gens() {
            j_gens.push(a * f);
        }
    }
    let j = Ideal::new(ring, j_gens)?;
    let mut basis = Vec::new();
    for f in ideal.gens() {
        echelon_insert(&mut basis, j.reduce(f, lim)?);
    }

    let h = Arc::new(g.clone().with_relations(full.clone()).renamed("H0"));
    let d = g.doubled();
    let t = g.tripled();
    let n = g.vars().len();
    // gamma(x) = x(S(h) g h): copies (0, 1, 2) of the double comultiplication go to
    // (antipode of copy 1, copy 0, copy 1).
    let mut to_doubled = Vec::new();
    for i in 0..n {
        to_doubled.push(g.in_copy(&g.antipode().images()[i], 1, d)?);
    }
    for i in 0..n {
        to_doubled.push(g.in_copy(&Poly::var_index(ring, i), 0, d)?);
    }
    for i in 0..n {
        to_doubled.push(g.in_copy(&Poly::var_index(ring, i), 1, d)?);
    }
    let collapse = Substitution::new(t, d, to_doubled)?;
    let mut delta_id = Vec::new();
    for i in 0..n {
        delta_id.push(g.shift_into_tripled(&g.comul().images()[i], 0)?);
    }
    for i in 0..n {
        delta_id.push(g.in_copy(&Poly::var_index(ring, i), 2, t)?);
    }
    let delta_id = Substitution::new(d, t, delta_id)?;
    let mut gamma = Vec::new();
    for i in 0..n {
        gamma.push(collapse.apply(&delta_id.apply(&g.comul().images()[i])?)?);
    }
    let gamma = Substitution::new(ring, d, gamma)?;

    let mut k_gens = Vec::new();
    for f in j.gens() {
        k_gens.push(g.in_copy(f, 0, d)?);
    }
    for f in full.gens() {
        k_gens.push(g.in_copy(f, 1, d)?);
    }
    let k = Ideal::new(d, k_gens)?;
    let pi = ring.pi_index();
    let back: Vec<Option<usize>> = (0..d.len())
        .map(|i| if i < n { None } else if i < 2 * n { Some(i - n) } else { Some(pi) })
        .collect();
    let r = basis.len();
    let mut action = vec![vec![Poly::zero(ring); r]; r];
    for (jx, e) in basis.iter().enumerate() {
        let img = k.reduce(&gamma.apply(e)?, lim)?;
        let mut check = img.clone();
        for (ix, b) in basis.iter().enumerate() {
            let pivot = b.leading_monomial().expect("nonzero");
            let terms: Vec<_> = img
                .terms()
                .iter()
                .filter(|(m, _)| m[..n] == pivot[..n])
                .map(|(m, c)| {
                    let mut m2 = m.clone();
                    m2[..n].iter_mut().for_each(|x| *x = 0);
                    (m2, c.clone())
                })
                .collect();
            let coeff = Poly::from_terms(d, terms).map_vars(ring, &back)?;
            let coeff = h.normal_form(&coeff, lim)?;
            let contrib = &g.in_copy(b, 0, d)? * &g.in_copy(&coeff, 1, d)?;
            check = &check - &contrib;
            action[ix][jx] = coeff;
        }
        if !k.reduce(&check, lim)?.is_zero() {
            return Err(Error::Precondition(format!("{e} does not transform inside I/aI")));
        }
    }
    let action = RepMatrix::with_inverse(&h, action, lim)?;
    Ok(ConormalData {
        subgroup: h,
        basis,
        action,
    })
}
