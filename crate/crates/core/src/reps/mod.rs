//! Comodule matrices, the faithful representations of Neron blowups built from them, and the
//! conormal representation.

mod blowup;
mod conormal;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{Ideal, Limits, Subalgebra};
use crate::hopf::{GroupMorphism, HopfPresentation};
use crate::report::Report;
use crate::ring::{parse_poly, Poly};

pub use blowup::{
    conjugation_check, identity_blowup_rep, line_blowup_rep, rescaled_rep, stabilizer_ideal,
    sum_faithful, Rescaled,
};
pub use conormal::{conormal_rep, ConormalData};

/// An r x r matrix over a coordinate ring with Delta(a_ij) = sum_k a_ik' a_kj''.
#[derive(Debug, Clone)]
pub struct RepMatrix {
    group: Arc<HopfPresentation>,
    entries: Vec<Vec<Poly>>,
    det_inverse: Poly,
}

/// Outcome of the generation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Faithfulness {
    Faithful,
    /// Generators not found in the subalgebra at the current limits.
    NotAtBound(Vec<String>),
    /// The matrix is not a representation.
    Fail(String),
}

pub(crate) fn determinant(m: &[Vec<Poly>], ring: &Arc<crate::ring::Ring>) -> Poly {
    match m.len() {
        0 => Poly::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Poly::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

impl RepMatrix {
    pub fn new(
        group: &Arc<HopfPresentation>,
        entries: Vec<Vec<Poly>>,
        det_inverse: Poly,
    ) -> Result<RepMatrix> {
        let r = entries.len();
        if entries.iter().any(|row| row.len() != r) {
            return Err(Error::ShapeMismatch(format!("{r} rows of unequal length")));
        }
        let ring = group.ring();
        let entries = entries
            .into_iter()
            .map(|row| row.iter().map(|p| p.to_ring(ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RepMatrix {
            group: group.clone(),
            entries,
            det_inverse: det_inverse.to_ring(ring)?,
        })
    }

    /// Parses the entries; without `det_inverse` the inverse of the determinant is found by
    /// a membership certificate for 1 in (det) + relations.
    pub fn parse(
        group: &Arc<HopfPresentation>,
        rows: &[Vec<&str>],
        det_inverse: Option<&str>,
        lim: &Limits,
    ) -> Result<RepMatrix> {
        let ring = group.ring();
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        match det_inverse {
            Some(s) => Self::new(group, entries, parse_poly(ring, s)?),
            None => Self::with_inverse(group, entries, lim),
        }
    }

    pub fn with_inverse(
        group: &Arc<HopfPresentation>,
        entries: Vec<Vec<Poly>>,
        lim: &Limits,
    ) -> Result<RepMatrix> {
        let m = Self::new(group, entries, Poly::one(group.ring()))?;
        let det = m.determinant();
        let mut gens = vec![det.clone()];
        gens.extend(group.relations().gens().iter().cloned());
        let cert = Ideal::new(group.ring(), gens)?.ideal_member(&Poly::one(group.ring()), lim)?;
        let inv = match cert.cofactors {
            Some(c) if cert.member => group.normal_form(&c[0], lim)?,
            _ => {
                return Err(Error::Precondition(format!(
                    "determinant {det} is not a unit"
                )))
            }
        };
        Ok(RepMatrix {
            det_inverse: inv,
            ..m
        })
    }

    pub fn group(&self) -> &Arc<HopfPresentation> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn det_inverse(&self) -> &Poly {
        &self.det_inverse
    }

    pub fn determinant(&self) -> Poly {
        determinant(&self.entries, self.group.ring())
    }

    /// Comodule identities on every entry, counit delta_ij, and det * det_inverse = 1.
    pub fn validate(&self, lim: &Limits) -> Result<Report> {
        let mut rep = Report::new();
        let g = &self.group;
        let d = g.doubled();
        let rel2 = g.relations2();
        let r = self.size();
        let left: Vec<Vec<Poly>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| g.in_copy(p, 0, d)).collect())
            .collect::<Result<_>>()?;
        let right: Vec<Vec<Poly>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| g.in_copy(p, 1, d)).collect())
            .collect::<Result<_>>()?;
        for i in 0..r {
            for j in 0..r {
                let subject = format!("a{}{}", i + 1, j + 1);
                let mut prod = Poly::zero(d);
                for k in 0..r {
                    prod = &prod + &(&left[i][k] * &right[k][j]);
                }
                let lhs = g.comul().apply(&self.entries[i][j])?;
                rep.zero("comodule", subject.as_str(), &rel2.reduce(&(&lhs - &prod), lim)?);
                let e = g.apply_counit(&self.entries[i][j])?;
                let delta = Poly::integer(e.ring(), i64::from(i == j));
                rep.zero("counit", subject.as_str(), &g.base_relations().reduce(&(&e - &delta), lim)?);
            }
        }
        let one = &(&self.determinant() * &self.det_inverse) - &Poly::one(g.ring());
        rep.zero("det-inverse", g.name(), &g.normal_form(&one, lim)?);
        Ok(rep)
    }

    /// Whether the entries and det_inverse generate the coordinate ring.
    pub fn verify_faithful(&self, lim: &Limits) -> Result<Faithfulness> {
        let rep = self.validate(lim)?;
        if let Some(c) = rep.failures().next() {
            return Ok(Faithfulness::Fail(format!(
                "{} fails for {}: {}",
                c.name,
                c.subject,
                c.witness.clone().unwrap_or_default()
            )));
        }
        let mut gens: Vec<Poly> = self.entries.iter().flatten().cloned().collect();
        gens.push(self.det_inverse.clone());
        let sub = Subalgebra::new(&gens, self.group.relations())?;
        let mut missing = Vec::new();
        for v in self.group.vars() {
            if sub.member(&Poly::var(self.group.ring(), v)?, lim)?.is_none() {
                missing.push(v.clone());
            }
        }
        Ok(if missing.is_empty() {
            Faithfulness::Faithful
        } else {
            Faithfulness::NotAtBound(missing)
        })
    }

    /// The representation restricted along a morphism into this group.
    pub fn pull(&self, m: &GroupMorphism, lim: &Limits) -> Result<RepMatrix> {
        let src = m.source();
        let nf = |p: &Poly| -> Result<Poly> { src.normal_form(&m.pull(&p.to_ring(m.target().ring())?)?, lim) };
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(nf).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RepMatrix::new(src, entries, nf(&self.det_inverse)?)
    }

    /// Block diagonal sum over a common group.
    pub fn direct_sum(&self, other: &RepMatrix) -> Result<RepMatrix> {
        if !self.group.ring().same_names(other.group.ring()) {
            return Err(Error::RingMismatch(format!(
                "{} and {}",
                self.group.name(),
                other.group.name()
            )));
        }
        let ring = self.group.ring();
        let (r, s) = (self.size(), other.size());
        let mut entries = vec![vec![Poly::zero(ring); r + s]; r + s];
        for i in 0..r {
            for j in 0..r {
                entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..s {
            for j in 0..s {
                entries[r + i][r + j] = other.entries[i][j].to_ring(ring)?;
            }
        }
        let inv = &self.det_inverse * &other.det_inverse.to_ring(ring)?;
        RepMatrix::new(&self.group, entries, inv)
    }

    /// Rows as text: `[[a, b], [c, d]]`, each entry printed by `show`.
    pub fn render(&self, show: impl Fn(&Poly) -> String) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| format!("[{}]", row.iter().map(&show).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|p| p.to_string()))
    }
}

#[cfg(test)]
mod tests;
