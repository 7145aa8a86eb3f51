//! Gröbner bases against dense linear algebra, and the saturation, elimination and
//! contraction operations against their defining inclusions.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseResult;

use neron::groebner::{contract, eliminate, saturate, saturate_pi, Ideal, Limits};
use neron::ring::{Exponents, Poly, Ring, Substitution};

use super::{fail, ok, run};

/// Exponent vectors of total degree `d` in `n` variables.
fn monomials(n: usize, d: u32) -> Vec<Exponents> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monomials_upto(n: usize, d: u32) -> Vec<Exponents> {
    (0..=d).flat_map(|k| monomials(n, k)).collect()
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(c.into())
}

/// The polynomial with coefficient `cs[i]` on `basis[i]`, falling back to `fallback`.
fn combine(ring: &Arc<Ring>, basis: &[Exponents], cs: &[i64], fallback: &Exponents) -> Poly {
    let p = Poly::from_terms(ring, basis.iter().zip(cs).map(|(e, c)| (e.clone(), int(*c))));
    if p.is_zero() {
        Poly::monomial(ring, fallback.clone(), BigRational::one())
    } else {
        p
    }
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![2 => Just(0i64), 1 => -3i64..=3], len)
}

/// Rank of the coefficient rows of `polys` over the monomials in `cols`.
fn rank(polys: &[Poly], cols: &[Exponents]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::zero(); cols.len()];
            for (e, c) in p.terms() {
                let j = cols.iter().position(|m| m == e).expect("monomial in range");
                row[j] = c.clone();
            }
            row
        })
        .collect();
    let mut r = 0;
    for j in 0..cols.len() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][j].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][j].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][j].is_zero() {
                let f = &rows[i][j] / &pivot;
                for k in j..cols.len() {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Homogeneous generators in x, y, pi and homogeneous probe polynomials.
#[derive(Debug, Clone)]
pub struct GbCase {
    gens: Vec<(u32, Vec<i64>)>,
    probes: Vec<(u32, Vec<i64>, Option<(usize, i64)>)>,
}

pub fn gb_case() -> impl Strategy<Value = GbCase> {
    let gen = (1u32..=3).prop_flat_map(|d| (Just(d), coeffs(10)));
    let probe = (1u32..=5, coeffs(24), prop::option::of((0usize..21, 1i64..=3)));
    (prop::collection::vec(gen, 1..=3), prop::collection::vec(probe, 2)).prop_map(|(gens, probes)| GbCase { gens, probes })
}

const TOP: u32 = 6;

pub fn check_gb(c: GbCase) -> TestCaseResult {
    let lim = Limits::default();
    let ring = ok(Ring::grevlex(["x", "y"]))?;
    let gens: Vec<Poly> = c
        .gens
        .iter()
        .map(|(d, cs)| combine(&ring, &monomials(3, *d), cs, &monomials(3, *d)[0]))
        .collect();
    let ideal = ok(Ideal::new(&ring, gens.clone()))?;
    let gb = ok(ideal.groebner_basis(&lim))?.to_vec();
    let leads: Vec<Exponents> = gb.iter().map(|g| g.leading_monomial().unwrap().to_vec()).collect();
    for (i, g) in gb.iter().enumerate() {
        for (j, l) in leads.iter().enumerate() {
            if i != j && g.terms().iter().any(|(e, _)| divides(l, e)) {
                return Err(fail(format!("basis not reduced: {g} has a term divisible by {}", gb[j])));
            }
        }
    }
    // Degree-d slice of the ideal, spanned by monomial multiples of the generators.
    let slice = |d: u32| -> Vec<Poly> {
        let mut rows = Vec::new();
        for g in &gens {
            let gd = g.total_degree();
            if gd <= d {
                for m in monomials(3, d - gd) {
                    rows.push(g.mul_term(&m, &BigRational::one()));
                }
            }
        }
        rows
    };
    for d in 0..=TOP {
        let cols = monomials(3, d);
        let want = rank(&slice(d), &cols);
        let standard = cols.iter().filter(|m| !leads.iter().any(|l| divides(l, m))).count();
        if cols.len() - standard != want {
            return Err(fail(format!("degree {d}: basis gives {}, linear algebra {want}", cols.len() - standard)));
        }
    }
    for (d, cs, noise) in &c.probes {
        let cols = monomials(3, *d);
        let rows = slice(*d);
        let mut f = Poly::zero(&ring);
        for (row, k) in rows.iter().zip(cs.iter().cycle()) {
            f = &f + &row.scale(&int(*k));
        }
        if let Some((i, k)) = noise {
            f = &f + &Poly::monomial(&ring, cols[i % cols.len()].clone(), int(*k));
        }
        let mut with = rows.clone();
        with.push(f.clone());
        let member = rank(&with, &cols) == rank(&rows, &cols);
        if ok(ideal.contains(&f, &lim))? != member {
            return Err(fail(format!("membership of {f}: linear algebra says {member}")));
        }
    }
    Ok(())
}

/// Reduced Gröbner bases give the same Hilbert function and membership answers as dense
/// linear algebra on homogeneous ideals.
pub fn groebner_oracle(cases: u32) -> Result<u32, String> {
    run(cases, 5, gb_case(), check_gb)
}

/// Random ideals for the saturation, elimination and contraction checks, all in at most
/// two variables besides pi and of degree at most 2.
#[derive(Debug, Clone)]
pub struct OpsCase {
    gens: Vec<Vec<i64>>,
    torsion: bool,
    image: Vec<i64>,
    witness: Vec<i64>,
    extra: Vec<i64>,
    relation: Option<Vec<i64>>,
}

pub fn ops_case() -> impl Strategy<Value = OpsCase> {
    (
        prop::collection::vec(coeffs(10), 1..=3),
        any::<bool>(),
        coeffs(10),
        coeffs(6),
        coeffs(10),
        prop::option::of(coeffs(10)),
    )
        .prop_map(|(gens, torsion, image, witness, extra, relation)| OpsCase {
            gens,
            torsion,
            image,
            witness,
            extra,
            relation,
        })
}

/// Smallest k <= 12 with f^k * g in `ideal`.
fn power_into(ideal: &Ideal, f: &Poly, g: &Poly, lim: &Limits) -> neron::Result<Option<u32>> {
    let mut h = g.clone();
    for k in 0..=12 {
        if ideal.contains(&h, lim)? {
            return Ok(Some(k));
        }
        h = &h * f;
    }
    Ok(None)
}

fn check_saturation(ideal: &Ideal, f: &Poly, lim: &Limits) -> TestCaseResult {
    let sat = ok(saturate(ideal, f, lim))?;
    if !ok(ideal.is_subset(&sat, lim))? {
        return Err(fail(format!("{f}-saturation of {ideal:?} does not contain it")));
    }
    if !ok(ok(saturate(&sat, f, lim))?.equals(&sat, lim))? {
        return Err(fail(format!("{f}-saturation of {ideal:?} is not idempotent")));
    }
    for g in sat.gens() {
        if ok(power_into(ideal, f, g, lim))?.is_none() {
            return Err(fail(format!("{g} is in the {f}-saturation but no power of {f} moves it into the ideal")));
        }
    }
    Ok(())
}

pub fn check_ops(c: OpsCase) -> TestCaseResult {
    let lim = Limits::default();
    let b = ok(Ring::grevlex(["x", "y"]))?;
    let a = ok(Ring::grevlex(["y"]))?;
    let quad = monomials_upto(3, 2);
    let x = Poly::var_index(&b, 0);
    let pi = Poly::pi(&b);

    // Saturation by pi and by x.
    let mut gens: Vec<Poly> = c.gens.iter().map(|cs| combine(&b, &quad, cs, &quad[1])).collect();
    if c.torsion {
        gens[0] = &gens[0] * &pi;
    }
    let ideal = ok(Ideal::new(&b, gens))?;
    check_saturation(&ideal, &pi, &lim)?;
    check_saturation(&ideal, &x, &lim)?;
    if !ok(ok(saturate_pi(&ideal, &lim))?.equals(&ok(saturate(&ideal, &pi, &lim))?, &lim))? {
        return Err(fail("saturate_pi differs from saturation by pi"));
    }

    // B/(J + (x - p)) is A/J, so eliminating x gives back J.
    let in_a = monomials_upto(2, 2);
    let lift_a = |p: &Poly| p.map_vars(&b, &[Some(1), Some(2)]);
    let j: Vec<Poly> = c.gens.iter().map(|cs| combine(&a, &in_a, cs, &in_a[1])).collect();
    let p = combine(&a, &in_a, &c.witness, &in_a[0]);
    let mut big: Vec<Poly> = ok(j.iter().map(lift_a).collect::<neron::Result<_>>())?;
    big.push(&x - &ok(lift_a(&p))?);
    let e = ok(eliminate(&ok(Ideal::new(&b, big))?, &["x"], &lim))?;
    let j = ok(Ideal::new(e.ring(), ok(j.iter().map(|g| g.to_ring(e.ring())).collect::<neron::Result<_>>())?))?;
    if !ok(e.is_subset(&j, &lim))? || !ok(j.is_subset(&e, &lim))? {
        return Err(fail(format!("eliminating x from J + (x - {p}) gave {e:?}, not {j:?}")));
    }

    // The relation is linear; quadratic ones make the rational coefficients explode.
    // phi^{-1}(I_B + rel) contains a0 when I_B contains phi(a0), and maps into I_B + rel.
    let s = ok(Ring::grevlex(["s"]))?;
    let phi = ok(Substitution::new(&s, &b, vec![combine(&b, &quad, &c.image, &quad[2])]))?;
    let a0 = combine(&s, &in_a, &c.witness, &in_a[1]);
    let ib = ok(Ideal::new(&b, vec![ok(phi.apply(&a0))?, combine(&b, &quad, &c.extra, &quad[0])]))?;
    let rel = match &c.relation {
        Some(cs) => ok(Ideal::new(&b, vec![combine(&b, &quad[..4], cs, &quad[3])]))?,
        None => Ideal::zero(&b),
    };
    let con = ok(contract(&phi, &rel, &ib, &lim))?;
    if !ok(con.contains(&a0, &lim))? {
        return Err(fail(format!("contraction {con:?} misses {a0}")));
    }
    let target = ok(ib.sum(&rel))?;
    for g in con.gens() {
        if !ok(target.contains(&ok(phi.apply(g))?, &lim))? {
            return Err(fail(format!("{g} is in the contraction but its image is not in the ideal")));
        }
    }
    Ok(())
}

/// Saturations are idempotent and agree with (I : f^infinity); elimination and contraction
/// satisfy both inclusions of their definitions.
pub fn ideal_operations(cases: u32) -> Result<u32, String> {
    run(cases, 17, ops_case(), check_ops)
}
