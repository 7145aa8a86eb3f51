use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use super::Limits;
use crate::error::{Error, Result};
use crate::ring::{divides, lcm, quotient, Exponents, Poly, Ring};

/// Accumulated quotients of a division, one term list per reducer.
pub(crate) type Quotients = Vec<Vec<(Exponents, BigRational)>>;

/// Multivariate division of `f` by `basis`. With `full` the remainder is fully reduced,
/// otherwise only the leading term is. Quotient terms are appended to `quotients` when given.
pub(crate) fn reduce(
    f: &Poly,
    basis: &[&Poly],
    full: bool,
    mut quotients: Option<&mut Quotients>,
) -> Poly {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Exponents, BigRational)> = Vec::new();
    while let Some(lm) = p.leading_monomial() {
        let lm = lm.to_vec();
        let hit = basis
            .iter()
            .position(|g| g.leading_monomial().is_some_and(|m| divides(m, &lm)));
        match hit {
            Some(i) => {
                let g = basis[i];
                let q = quotient(&lm, g.leading_monomial().unwrap());
                let c = p.leading_coefficient().unwrap() / g.leading_coefficient().unwrap();
                p = p.sub_scaled(&q, &c, g);
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[i].push((q, c));
                }
            }
            None => {
                if !full {
                    break;
                }
                rem.push((lm, p.leading_coefficient().unwrap().clone()));
                p = p.into_tail();
            }
        }
    }
    if full {
        Poly::from_sorted(&ring, rem)
    } else if rem.is_empty() {
        p
    } else {
        unreachable!("top reduction keeps no remainder")
    }
}

/// A basis element, optionally with its expression in the input generators.
#[derive(Clone, Debug)]
pub(crate) struct Element {
    pub poly: Poly,
    pub cofactors: Option<Vec<Poly>>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
    sugar: u32,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn combine(
    ring: &Arc<Ring>,
    base: Option<Vec<Poly>>,
    quotients: &Quotients,
    reducers: &[&Element],
) -> Option<Vec<Poly>> {
    let mut cof = base?;
    for (q, el) in quotients.iter().zip(reducers) {
        if q.is_empty() {
            continue;
        }
        let qp = Poly::from_terms(ring, q.iter().cloned());
        for (c, g) in cof.iter_mut().zip(el.cofactors.as_ref().unwrap()) {
            *c = &*c - &(&qp * g);
        }
    }
    Some(cof)
}

fn scale_element(el: Element, c: &BigRational) -> Element {
    Element {
        poly: el.poly.scale(c),
        cofactors: el
            .cofactors
            .map(|cs| cs.iter().map(|p| p.scale(c)).collect()),
    }
}

/// Reduced monic Groebner basis under the ring's order. Pairs are processed by least sugar,
/// then least lcm, then index, so the output is deterministic.
pub(crate) fn groebner(
    ring: &Arc<Ring>,
    gens: &[Poly],
    track: bool,
    lim: &Limits,
) -> Result<Vec<Element>> {
    let n = gens.len();
    let mut basis: Vec<Element> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed = 0usize;

    let mut inputs: Vec<Element> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| Element {
            poly: g.clone(),
            cofactors: track.then(|| {
                (0..n)
                    .map(|i| {
                        if i == k {
                            Poly::one(ring)
                        } else {
                            Poly::zero(ring)
                        }
                    })
                    .collect()
            }),
        })
        .collect();
    // smaller leading monomials first keeps the early reductions cheap
    inputs.sort_by(|a, b| {
        ring.cmp_monomials(
            a.poly.leading_monomial().unwrap(),
            b.poly.leading_monomial().unwrap(),
        )
    });

    let mut queue: Vec<(Element, u32)> = inputs
        .into_iter()
        .map(|e| {
            let d = e.poly.total_degree();
            (e, d)
        })
        .collect();
    queue.reverse();

    loop {
        let (candidate, s) = if let Some(next) = queue.pop() {
            next
        } else {
            // choose the next pair
            let best = pairs
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    a.sugar
                        .cmp(&b.sugar)
                        .then_with(|| ring.cmp_monomials(&a.lcm, &b.lcm))
                        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
                })
                .map(|(k, _)| k);
            let Some(k) = best else { break };
            let pair = pairs.swap_remove(k);
            processed += 1;
            if processed > lim.max_pairs {
                return Err(Error::ResourceLimit(format!(
                    "more than {} S-pairs",
                    lim.max_pairs
                )));
            }
            (spoly(&basis[pair.i], &basis[pair.j]), pair.sugar)
        };

        let reducers: Vec<&Element> = (0..basis.len())
            .filter(|&k| active[k])
            .map(|k| &basis[k])
            .collect();
        let polys: Vec<&Poly> = reducers.iter().map(|e| &e.poly).collect();
        let mut qs: Quotients = vec![Vec::new(); polys.len()];
        let h = reduce(&candidate.poly, &polys, true, track.then_some(&mut qs));
        if h.is_zero() {
            continue;
        }
        let cof = if track {
            combine(ring, candidate.cofactors, &qs, &reducers)
        } else {
            None
        };
        let lc = h.leading_coefficient().unwrap().recip();
        let el = scale_element(
            Element {
                poly: h,
                cofactors: cof,
            },
            &lc,
        );
        if el.poly.total_degree() > lim.max_degree {
            return Err(Error::ResourceLimit(format!(
                "basis element of degree {} exceeds bound {}",
                el.poly.total_degree(),
                lim.max_degree
            )));
        }
        let s = s.max(el.poly.total_degree());
        update(&mut basis, &mut active, &mut sugar, &mut pairs, el, s);
    }

    Ok(finish(ring, basis, active))
}

fn spoly(a: &Element, b: &Element) -> Element {
    let la = a.poly.leading_monomial().unwrap();
    let lb = b.poly.leading_monomial().unwrap();
    let l = lcm(la, lb);
    let qa = quotient(&l, la);
    let qb = quotient(&l, lb);
    let ca = a.poly.leading_coefficient().unwrap().recip();
    let cb = b.poly.leading_coefficient().unwrap().recip();
    let poly = &a.poly.mul_term(&qa, &ca) - &b.poly.mul_term(&qb, &cb);
    let cofactors = match (&a.cofactors, &b.cofactors) {
        (Some(x), Some(y)) => Some(
            x.iter()
                .zip(y)
                .map(|(p, q)| &p.mul_term(&qa, &ca) - &q.mul_term(&qb, &cb))
                .collect(),
        ),
        _ => None,
    };
    Element { poly, cofactors }
}

/// Gebauer-Moeller installation of a new basis element.
fn update(
    basis: &mut Vec<Element>,
    active: &mut Vec<bool>,
    sugar: &mut Vec<u32>,
    pairs: &mut Vec<Pair>,
    el: Element,
    s: u32,
) {
    let h = basis.len();
    let lh = el.poly.leading_monomial().unwrap().to_vec();
    let dh = degree(&lh);
    let mut cands: Vec<(usize, Exponents, bool)> = Vec::new();
    for g in 0..h {
        if !active[g] {
            continue;
        }
        let lg = basis[g].poly.leading_monomial().unwrap();
        let l = lcm(&lh, lg);
        let coprime = degree(&l) == dh + degree(lg);
        cands.push((g, l, coprime));
    }
    let mut keep: Vec<(usize, Exponents, bool)> = Vec::new();
    for (k, (g, l, coprime)) in cands.iter().enumerate() {
        let dominated = cands[k + 1..].iter().any(|(_, l2, _)| divides(l2, l))
            || keep.iter().any(|(_, l2, _)| divides(l2, l));
        if *coprime || !dominated {
            keep.push((*g, l.clone(), *coprime));
        }
    }
    let new_pairs: Vec<Pair> = keep
        .into_iter()
        .filter(|(_, _, c)| !*c)
        .map(|(g, l, _)| {
            let lg = basis[g].poly.leading_monomial().unwrap();
            let sg = sugar[g] + degree(&l) - degree(lg);
            let sh = s + degree(&l) - dh;
            Pair {
                i: g,
                j: h,
                sugar: sg.max(sh),
                lcm: l,
            }
        })
        .collect();
    // old pairs made redundant by the new element
    pairs.retain(|p| {
        !(divides(&lh, &p.lcm)
            && lcm(&basis[p.i].poly.leading_monomial().unwrap().to_vec(), &lh) != p.lcm
            && lcm(&basis[p.j].poly.leading_monomial().unwrap().to_vec(), &lh) != p.lcm)
    });
    pairs.extend(new_pairs);
    for g in 0..h {
        if active[g] && divides(&lh, basis[g].poly.leading_monomial().unwrap()) {
            active[g] = false;
        }
    }
    basis.push(el);
    active.push(true);
    sugar.push(s);
}

/// Minimalizes and inter-reduces, returning elements sorted by increasing leading monomial.
fn finish(ring: &Arc<Ring>, basis: Vec<Element>, active: Vec<bool>) -> Vec<Element> {
    let mut kept: Vec<Element> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect();
    kept.sort_by(|a, b| {
        ring.cmp_monomials(
            a.poly.leading_monomial().unwrap(),
            b.poly.leading_monomial().unwrap(),
        )
    });
    let mut minimal: Vec<Element> = Vec::new();
    for e in kept {
        let lm = e.poly.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|m| divides(m.poly.leading_monomial().unwrap(), lm))
        {
            minimal.push(e);
        }
    }
    let track = minimal.first().is_some_and(|e| e.cofactors.is_some());
    let mut out: Vec<Element> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Element> = minimal
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .map(|(_, e)| e)
            .collect();
        let polys: Vec<&Poly> = others.iter().map(|e| &e.poly).collect();
        let mut qs: Quotients = vec![Vec::new(); polys.len()];
        let r = reduce(&minimal[k].poly, &polys, true, track.then_some(&mut qs));
        let cof = if track {
            combine(ring, minimal[k].cofactors.clone(), &qs, &others)
        } else {
            None
        };
        // leading term is irreducible, so r is still monic
        debug_assert!(r.leading_coefficient().is_some_and(|c| c.is_one()));
        out.push(Element {
            poly: r,
            cofactors: cof,
        });
    }
    // cofactors of later elements were computed against unreduced partners; still valid
    // because every partner equals its own cofactor expression.
    out
}

