use std::sync::Arc;

use super::{Base, HopfPresentation};
use crate::error::Result;
use crate::groebner::{quotient, saturate_pi, Limits};
use crate::report::Report;
use crate::ring::{Poly, Ring, Substitution};

impl HopfPresentation {
    fn var(&self, i: usize) -> Poly {
        Poly::var_index(&self.ring, i)
    }

    /// Doubled ring -> own ring, copy 0 through `left`, copy 1 through `right`.
    fn collapse(
        &self,
        left: impl Fn(usize) -> Poly,
        right: impl Fn(usize) -> Poly,
    ) -> Result<Substitution> {
        let n = self.vars().len();
        let imgs = (0..2 * n)
            .map(|j| if j < n { left(j) } else { right(j - n) })
            .collect();
        Substitution::new(&self.doubled, &self.ring, imgs)
    }

    /// Moves a doubled-ring polynomial into the tripled ring, copy k going to copy k + shift.
    pub(crate) fn shift_into_tripled(&self, f: &Poly, shift: usize) -> Result<Poly> {
        let n = self.vars().len();
        let t: &Arc<Ring> = &self.tripled;
        let map: Vec<Option<usize>> = (0..self.doubled.len())
            .map(|j| Some(if j == 2 * n { t.pi_index() } else { j + shift * n }))
            .collect();
        f.map_vars(t, &map)
    }

    /// Counit, coassociativity, antipode and well-definedness on every generator, plus
    /// flatness when the presentation claims it.
    pub fn check_hopf(&self, lim: &Limits) -> Result<Report> {
        let mut rep = Report::new();
        let n = self.vars().len();
        let rel = &self.relations;
        let rel2 = self.relations2();
        let rel3 = self.relations3();

        let left_counit = self.collapse(|i| self.counit_of(i), |i| self.var(i))?;
        let right_counit = self.collapse(|i| self.var(i), |i| self.counit_of(i))?;
        let left_antipode = self.collapse(|i| self.antipode.images()[i].clone(), |i| self.var(i))?;
        let right_antipode =
            self.collapse(|i| self.var(i), |i| self.antipode.images()[i].clone())?;

        // x' -> Delta(x) in copies 0,1 and x'' -> x''' ; x' -> x' and x'' -> Delta(x) in 1,2
        let mut outer_left = Vec::new();
        let mut outer_right = Vec::new();
        for i in 0..n {
            outer_left.push(self.shift_into_tripled(&self.comul.images()[i], 0)?);
            outer_right.push(self.in_copy(&self.var(i), 0, &self.tripled)?);
        }
        for i in 0..n {
            outer_left.push(self.in_copy(&self.var(i), 2, &self.tripled)?);
            outer_right.push(self.shift_into_tripled(&self.comul.images()[i], 1)?);
        }
        let delta_id = Substitution::new(&self.doubled, &self.tripled, outer_left)?;
        let id_delta = Substitution::new(&self.doubled, &self.tripled, outer_right)?;

        for (i, x) in self.vars().iter().enumerate() {
            let xi = self.var(i);
            let dx = &self.comul.images()[i];
            let eps = self.counit_of(i);

            let r = rel.reduce(&(&left_counit.apply(dx)? - &xi), lim)?;
            rep.zero("counit-eps-id", x.as_str(), &r);
            let r = rel.reduce(&(&right_counit.apply(dx)? - &xi), lim)?;
            rep.zero("counit-id-eps", x.as_str(), &r);

            let r = rel3.reduce(&(&delta_id.apply(dx)? - &id_delta.apply(dx)?), lim)?;
            rep.zero("coassociativity", x.as_str(), &r);

            let r = rel.reduce(&(&left_antipode.apply(dx)? - &eps), lim)?;
            rep.zero("antipode-s-id", x.as_str(), &r);
            let r = rel.reduce(&(&right_antipode.apply(dx)? - &eps), lim)?;
            rep.zero("antipode-id-s", x.as_str(), &r);
        }

        for g in rel.gens() {
            let subject = g.to_string();
            let r = rel2.reduce(&self.comul.apply(g)?, lim)?;
            rep.zero("comul-well-defined", subject.as_str(), &r);
            let r = self.base_relations.reduce(&self.counit.apply(g)?, lim)?;
            rep.zero("counit-well-defined", subject.as_str(), &r);
            let r = rel.reduce(&self.antipode.apply(g)?, lim)?;
            rep.zero("antipode-well-defined", subject.as_str(), &r);
        }

        if self.flat_certified {
            if self.check_flat(lim)? {
                rep.pass("flat", self.name.as_str());
            } else {
                rep.fail("flat", self.name.as_str(), "relations are not pi-saturated");
            }
        }
        Ok(rep)
    }

    /// [`Self::check_hopf`] with a flatness check whether or not flatness was certified.
    pub fn check_hopf_and_flat(&self, lim: &Limits) -> Result<Report> {
        let mut rep = self.check_hopf(lim)?;
        if !self.flat_certified {
            if self.check_flat(lim)? {
                rep.pass("flat", self.name.as_str());
            } else {
                rep.fail("flat", self.name.as_str(), "relations are not pi-saturated");
            }
        }
        Ok(rep)
    }

    /// Flatness over the base: pi-saturation over the DVR; over R_n the criterion
    /// ann(pi) = pi^n, i.e. (rel : pi) contained in rel + (pi^n).
    pub fn check_flat(&self, lim: &Limits) -> Result<bool> {
        match self.base {
            Base::Dvr => saturate_pi(&self.relations, lim)?.is_subset(&self.relations, lim),
            Base::Truncated(0) => Ok(true),
            Base::Truncated(n) => {
                let q = quotient(&self.relations, &Poly::pi(&self.ring), lim)?;
                let target = self.relations.extend(&[Poly::pi_power(&self.ring, n)])?;
                q.is_subset(&target, lim)
            }
        }
    }

    /// Runs [`Self::check_flat`] and records the answer on success.
    pub fn certify_flat(self, lim: &Limits) -> Result<(Self, bool)> {
        let flat = self.check_flat(lim)?;
        Ok(if flat {
            (self.mark_flat(), true)
        } else {
            (self, false)
        })
    }
}
