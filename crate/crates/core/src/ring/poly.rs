use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{Scalar, Valuation};
use crate::error::{Error, Result};

/// Name of the uniformiser. Every ring carries it as its last, smallest variable.
pub const PI: &str = "pi";

pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: the first `split` variables form a block compared by grevlex,
    /// ties broken by grevlex on the remaining variables.
    BlockGrevLex { split: usize },
}

/// A polynomial ring Q[x_1, ..., x_n, pi] together with a monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<I, S>(vars: I, order: MonomialOrder) -> Result<Arc<Ring>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n == PI {
                return Err(Error::Precondition("`pi` is reserved".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::Precondition(format!("duplicate variable `{n}`")));
            }
        }
        names.push(PI.to_string());
        Ok(Arc::new(Ring { names, order }))
    }

    pub fn grevlex<I, S>(vars: I) -> Result<Arc<Ring>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(vars, MonomialOrder::GrevLex)
    }

    /// The ring with no variables besides pi.
    pub fn base() -> Arc<Ring> {
        Self::grevlex(Vec::<String>::new()).expect("empty ring")
    }

    /// Number of exponent slots, pi included.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.len() == 1
    }

    /// Variable names without pi.
    pub fn vars(&self) -> &[String] {
        &self.names[..self.names.len() - 1]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pi_index(&self) -> usize {
        self.names.len() - 1
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            names: self.names.clone(),
            order,
        })
    }

    pub fn same_names(&self, other: &Ring) -> bool {
        self.names == other.names
    }

    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::BlockGrevLex { split } => {
                grevlex(&a[..split], &b[..split]).then_with(|| grevlex(&a[split..], &b[split..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn quotient(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A polynomial over Q in the variables of a [`Ring`], pi included. Terms are kept sorted in
/// strictly decreasing order under the ring's monomial order with no zero coefficients.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Exponents, BigRational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_names(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: BigRational) -> Poly {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.push((vec![0; ring.len()], c));
        }
        p
    }

    pub fn integer(ring: &Arc<Ring>, n: i64) -> Poly {
        Self::constant(ring, BigRational::from_integer(n.into()))
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Self::integer(ring, 1)
    }

    pub fn var_index(ring: &Arc<Ring>, i: usize) -> Poly {
        let mut e = vec![0; ring.len()];
        e[i] = 1;
        Poly {
            ring: ring.clone(),
            terms: vec![(e, BigRational::one())],
        }
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Poly> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(ring, i))
    }

    pub fn pi(ring: &Arc<Ring>) -> Poly {
        Self::var_index(ring, ring.pi_index())
    }

    pub fn pi_power(ring: &Arc<Ring>, k: u32) -> Poly {
        let mut e = vec![0; ring.len()];
        e[ring.pi_index()] = k;
        Self::monomial(ring, e, BigRational::one())
    }

    pub fn monomial(ring: &Arc<Ring>, exps: Exponents, c: BigRational) -> Poly {
        assert_eq!(exps.len(), ring.len(), "exponent vector length");
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.push((exps, c));
        }
        p
    }

    pub fn from_scalar(ring: &Arc<Ring>, s: &Scalar) -> Poly {
        let pi = ring.pi_index();
        Self::from_terms(
            ring,
            s.iter().map(|(k, c)| {
                let mut e = vec![0; ring.len()];
                e[pi] = k;
                (e, c.clone())
            }),
        )
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (Exponents, BigRational)>,
    ) -> Poly {
        let mut map: HashMap<Exponents, BigRational> = HashMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.len(), ring.len());
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Exponents, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&[u32]> {
        self.terms.first().map(|(e, _)| e.as_slice())
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[i] > 0)
    }

    /// Indices of variables (pi included) that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.len()).filter(|&i| self.uses_var(i)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .first()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(BigRational::zero),
        )
    }

    /// The polynomial as an element of Q[pi], when no other variable occurs.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let pi = self.ring.pi_index();
        if self
            .terms
            .iter()
            .any(|(e, _)| e.iter().enumerate().any(|(i, &x)| i != pi && x > 0))
        {
            return None;
        }
        Some(Scalar::from_coeffs(
            self.terms.iter().map(|(e, c)| (e[pi], c.clone())),
        ))
    }

    /// Groups terms by their non-pi exponents, giving coefficients in Q[pi].
    pub fn scalar_coefficients(&self) -> BTreeMap<Exponents, Scalar> {
        let pi = self.ring.pi_index();
        let mut out: BTreeMap<Exponents, Vec<(u32, BigRational)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e[..pi].to_vec())
                .or_default()
                .push((e[pi], c.clone()));
        }
        out.into_iter()
            .map(|(k, v)| (k, Scalar::from_coeffs(v)))
            .collect()
    }

    pub fn pi_valuation(&self) -> Valuation {
        let pi = self.ring.pi_index();
        match self.terms.iter().map(|(e, _)| e[pi]).min() {
            Some(v) => Valuation::Finite(v),
            None => Valuation::Infinite,
        }
    }

    /// Returns g with pi^m * g = self, failing when some term has pi-valuation below m.
    pub fn divide_scalar_pi(&self, m: u32) -> Result<Poly> {
        if let Valuation::Finite(v) = self.pi_valuation() {
            if v < m {
                return Err(Error::NotDivisible {
                    poly: self.to_string(),
                    power: m,
                });
            }
        }
        let pi = self.ring.pi_index();
        Ok(Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[pi] -= m;
                    (e, c.clone())
                })
                .collect(),
        })
    }

    /// Drops every term divisible by pi^(n+1).
    pub fn truncate_pi(&self, n: u32) -> Poly {
        let pi = self.ring.pi_index();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[pi] <= n)
                .cloned()
                .collect(),
        }
    }

    /// Sets pi := 0.
    pub fn residue(&self) -> Poly {
        self.truncate_pi(0)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Multiplies by c * x^exps; monomial orders are compatible with multiplication, so no re-sort.
    pub fn mul_term(&self, exps: &[u32], c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Poly> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .ring
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        self.map_vars(target, &map)
    }

    /// Moves the polynomial into `target`, sending variable i to `map[i]`.
    pub fn map_vars(&self, target: &Arc<Ring>, map: &[Option<usize>]) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => ne[j] += x,
                    None => {
                        return Err(Error::UnknownVariable(self.ring.names()[i].clone()));
                    }
                }
            }
            terms.push((ne, c.clone()));
        }
        Ok(Poly::from_terms(target, terms))
    }

    /// Substitutes pi := value (a polynomial in the same ring).
    pub fn substitute_pi(&self, value: &Poly) -> Poly {
        let pi = self.ring.pi_index();
        let mut out = Poly::zero(&self.ring);
        let mut powers: Vec<Poly> = vec![Poly::one(&self.ring)];
        for (e, c) in &self.terms {
            let k = e[pi] as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut m = e.clone();
            m[pi] = 0;
            out = &out + &powers[k].mul_term(&m, c);
        }
        out
    }

    fn assert_same_ring(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "ring mismatch: {:?} vs {:?}",
            self.ring.names(),
            other.ring.names()
        );
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        self.assert_same_ring(other);
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ring.cmp_monomials(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), if negate_other { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(e, c)| (e.clone(), if negate_other { -c } else { c.clone() })),
        );
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Terms must already be strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Exponents, BigRational)>) -> Poly {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Drops the leading term.
    pub(crate) fn into_tail(mut self) -> Poly {
        if !self.terms.is_empty() {
            self.terms.remove(0);
        }
        self
    }

    /// self - c * x^exps * other, the inner step of polynomial division.
    pub(crate) fn sub_scaled(&self, exps: &[u32], c: &BigRational, other: &Poly) -> Poly {
        self.merge(&other.mul_term(exps, c), true)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = Poly::zero(&self.ring);
        for (e, c) in &small.terms {
            acc = &acc + &big.mul_term(e, c);
        }
        acc
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.names();
        let pi = self.ring.pi_index();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if e[pi] > 0 {
                factors.push(power(PI, e[pi]));
            }
            for (i, &x) in e.iter().enumerate() {
                if i != pi && x > 0 {
                    factors.push(power(&names[i], x));
                }
            }
            if factors.is_empty() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    f.write_str("*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn power(name: &str, k: u32) -> String {
    if k == 1 {
        name.to_string()
    } else {
        format!("{name}^{k}")
    }
}

/// Integer convenience used throughout tests and constructions.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
