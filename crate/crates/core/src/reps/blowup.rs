use super::{Faithfulness, RepMatrix};
use crate::blowup::BlowupResult;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Limits};
use crate::hopf::GroupMorphism;
use crate::report::Report;
use crate::ring::Poly;

fn same_group(v: &RepMatrix, b: &BlowupResult) -> Result<()> {
    if v.group().ring().same_names(b.original.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!(
            "representation of {} used with a blowup of {}",
            v.group().name(),
            b.original.name()
        )))
    }
}

/// The centre of `b` must equal `expected` modulo the relations.
fn require_centre(b: &BlowupResult, expected: &Ideal, lim: &Limits) -> Result<()> {
    let rel = b.original.relations().gens();
    let have = b.centre.extend(rel)?;
    let want = expected.to_ring(b.original.ring())?.extend(rel)?;
    if have.equals(&want, lim)? {
        Ok(())
    } else {
        Err(Error::Precondition(format!("blowup centre {} is not {}", b.centre, expected)))
    }
}

/// Entries pulled back to the blown group, in normal form.
fn pulled(v: &RepMatrix, b: &BlowupResult, lim: &Limits) -> Result<Vec<Vec<Poly>>> {
    v.entries()
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| b.blown.normal_form(&b.projection.pull(p)?, lim))
                .collect()
        })
        .collect()
}

fn divide(b: &BlowupResult, f: &Poly, lim: &Limits) -> Result<Poly> {
    b.blown.relations().divide_pi(f, lim)
}

/// [[a_ij, (a_ij - delta_ij)/pi], [0, 1]] over the blowup of the identity.
pub fn identity_blowup_rep(v: &RepMatrix, b: &BlowupResult, lim: &Limits) -> Result<RepMatrix> {
    same_group(v, b)?;
    let g = &b.original;
    require_centre(b, &g.augmentation_ideal().extend(&[Poly::pi(g.ring())])?, lim)?;
    let ring = b.blown.ring();
    let a = pulled(v, b, lim)?;
    let r = v.size();
    let mut m = vec![vec![Poly::zero(ring); 2 * r]; 2 * r];
    for i in 0..r {
        for j in 0..r {
            m[i][j] = a[i][j].clone();
            let shifted = &a[i][j] - &Poly::integer(ring, i64::from(i == j));
            m[i][r + j] = divide(b, &shifted, lim)?;
        }
        m[r + i][r + i] = Poly::one(ring);
    }
    let inv = b.blown.normal_form(&b.projection.pull(v.det_inverse())?, lim)?;
    RepMatrix::new(&b.blown, m, inv)
}

/// beta * out - (V + 1) * beta with beta = [[pi I, I], [0, I]], entrywise modulo the blown
/// relations. All zero means out = beta^-1 (V + 1) beta over the fraction field.
pub fn conjugation_check(v: &RepMatrix, out: &RepMatrix, b: &BlowupResult, lim: &Limits) -> Result<Report> {
    same_group(v, b)?;
    let r = v.size();
    if out.size() != 2 * r {
        return Err(Error::ShapeMismatch(format!("expected {} rows, found {}", 2 * r, out.size())));
    }
    let ring = b.blown.ring();
    let a = pulled(v, b, lim)?;
    let pi = Poly::pi(ring);
    let one = Poly::one(ring);
    let zero = Poly::zero(ring);
    let beta = |i: usize, j: usize| -> Poly {
        if i == j && i < r {
            pi.clone()
        } else if j == i + r || (i >= r && i == j) {
            one.clone()
        } else {
            zero.clone()
        }
    };
    let sum = |i: usize, j: usize| -> Poly {
        if i < r && j < r {
            a[i][j].clone()
        } else if i == j {
            one.clone()
        } else {
            zero.clone()
        }
    };
    let mut rep = Report::new();
    for i in 0..2 * r {
        for j in 0..2 * r {
            let mut d = Poly::zero(ring);
            for k in 0..2 * r {
                let o = out.entry(k, j).to_ring(ring)?;
                d = &d + &(&beta(i, k) * &o);
                d = &d - &(&sum(i, k) * &beta(k, j));
            }
            let subject = format!("({}, {})", i + 1, j + 1);
            rep.zero("conjugation", subject, &b.blown.normal_form(&d, lim)?);
        }
    }
    Ok(rep)
}

/// (pi, a_ic for i != c): the stabilizer in the special fibre of the line through the c-th
/// basis vector (0-based).
pub fn stabilizer_ideal(v: &RepMatrix, column: usize) -> Result<Ideal> {
    if column >= v.size() {
        return Err(Error::ShapeMismatch(format!("no column {} in a {}x{} matrix", column + 1, v.size(), v.size())));
    }
    let ring = v.group().ring();
    let mut gens = vec![Poly::pi(ring)];
    for i in 0..v.size() {
        if i != column && !v.entry(i, column).is_zero() {
            gens.push(v.entry(i, column).clone());
        }
    }
    Ideal::new(ring, gens)
}

/// The fibre product of V with a representation E of the blown group covering the line
/// through the first basis vector.
pub fn line_blowup_rep(v: &RepMatrix, b: &BlowupResult, e: &RepMatrix, lim: &Limits) -> Result<RepMatrix> {
    same_group(v, b)?;
    require_centre(b, &stabilizer_ideal(v, 0)?, lim)?;
    if !e.group().ring().same_names(b.blown.ring()) {
        return Err(Error::RingMismatch(format!(
            "covering representation lives over {}, not {}",
            e.group().name(),
            b.blown.name()
        )));
    }
    let ring = b.blown.ring();
    let a = pulled(v, b, lim)?;
    let (r, s) = (v.size(), e.size());
    let shape = |f: &Poly, what: String| -> Result<Poly> {
        divide(b, f, lim).map_err(|err| match err {
            Error::DivisionObstruction { witness } => {
                Error::ShapeMismatch(format!("{what} is not divisible by pi (remainder {witness})"))
            }
            other => other,
        })
    };
    let eb = |i: usize, j: usize| e.entry(i, j).to_ring(ring);
    let mut c = vec![shape(&(&eb(0, 0)? - &a[0][0]), "b11 - a11".into())?];
    for j in 1..s {
        c.push(shape(&eb(0, j)?, format!("b1{}", j + 1))?);
    }
    let mut m = vec![vec![Poly::zero(ring); r + s]; r + s];
    for i in 0..r {
        m[i][..r].clone_from_slice(&a[i]);
    }
    m[0][r] = -&c[0];
    for i in 1..r {
        m[i][r] = divide(b, &a[i][0], lim)?;
    }
    for j in 1..s {
        m[0][r + j] = -&c[j];
    }
    for i in 0..s {
        for j in 0..s {
            m[r + i][r + j] = eb(i, j)?;
        }
    }
    let inv = &b.projection.pull(v.det_inverse())? * &e.det_inverse().to_ring(ring)?;
    RepMatrix::new(&b.blown, m, b.blown.normal_form(&inv, lim)?)
}

/// The rescaled lattice and its sum with V.
#[derive(Debug, Clone)]
pub struct Rescaled {
    pub rep: RepMatrix,
    pub sum: RepMatrix,
    pub faithful: Faithfulness,
}

/// The lattice spanned by v1/pi, v2, ..., vr over the blowup at the stabilizer of the first
/// basis line.
pub fn rescaled_rep(v: &RepMatrix, b: &BlowupResult, lim: &Limits) -> Result<Rescaled> {
    same_group(v, b)?;
    require_centre(b, &stabilizer_ideal(v, 0)?, lim)?;
    let ring = b.blown.ring();
    let a = pulled(v, b, lim)?;
    let r = v.size();
    let pi = Poly::pi(ring);
    let mut m = a.clone();
    for j in 1..r {
        m[0][j] = &pi * &a[0][j];
    }
    for i in 1..r {
        m[i][0] = divide(b, &a[i][0], lim)?;
    }
    let inv = b.blown.normal_form(&b.projection.pull(v.det_inverse())?, lim)?;
    let rep = RepMatrix::new(&b.blown, m, inv.clone())?;
    let base = RepMatrix::new(&b.blown, a, inv)?;
    let sum = base.direct_sum(&rep)?;
    let faithful = sum.verify_faithful(lim)?;
    Ok(Rescaled { rep, sum, faithful })
}

/// rho + sigma over the blowup G' of G at the special fibre of a normal subgroup H with
/// quotient A; sigma is a representation of the identity blowup A' of A.
pub fn sum_faithful(
    rho: &RepMatrix,
    sigma: &RepMatrix,
    b: &BlowupResult,
    quotient: &GroupMorphism,
    a_blowup: &BlowupResult,
    lim: &Limits,
) -> Result<(RepMatrix, Faithfulness)> {
    same_group(rho, b)?;
    let a = &a_blowup.original;
    require_centre(a_blowup, &a.augmentation_ideal().extend(&[Poly::pi(a.ring())])?, lim)?;
    let mut cut = vec![Poly::pi(b.original.ring())];
    for g in a.augmentation_ideal().gens() {
        cut.push(quotient.pull(g)?);
    }
    require_centre(b, &Ideal::new(b.original.ring(), cut)?, lim)?;
    let to_a = quotient.after(&b.projection, lim)?;
    let lifted = a_blowup.lift(&to_a, lim)?;
    let sigma2 = sigma.pull(&lifted, lim)?;
    let rho2 = rho.pull(&b.projection, lim)?;
    let sum = rho2.direct_sum(&sigma2)?;
    let faithful = sum.verify_faithful(lim)?;
    Ok((sum, faithful))
}
