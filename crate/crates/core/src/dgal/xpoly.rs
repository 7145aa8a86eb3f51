use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ring::{parse_poly_with_inverses, MonomialOrder, Ring, Scalar};

/// A Laurent polynomial in x with coefficients in Q[pi].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XPoly {
    coeffs: BTreeMap<i32, Scalar>,
}

/// Q[x, x_inv, pi], the ring Laurent entries are parsed in.
pub(crate) fn parse_ring() -> &'static Arc<Ring> {
    static RING: OnceLock<Arc<Ring>> = OnceLock::new();
    RING.get_or_init(|| {
        Ring::new(["x", "x_inv"], MonomialOrder::GrevLex).expect("two variables")
    })
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn monomial(c: Scalar, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    /// Text over `x`, `pi` and rationals; `x^-k` and `/x^k` give negative powers.
    pub fn parse(text: &str) -> Result<Self> {
        let p = parse_poly_with_inverses(parse_ring(), text, &[("x", "x_inv")])?;
        Ok(Self::from_parsed(&p))
    }

    /// Reads a polynomial in the parse ring, x_inv standing for x^-1.
    pub(crate) fn from_parsed(p: &crate::ring::Poly) -> Self {
        let pi = parse_ring().pi_index();
        let mut out = XPoly::zero();
        for (e, c) in p.terms() {
            let k = e[0] as i32 - e[1] as i32;
            let s = Scalar::from_coeffs([(e[pi], c.clone())]);
            out = &out + &XPoly::monomial(s, k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: i32) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn derivative(&self) -> Self {
        let mut out = XPoly::zero();
        for (k, c) in &self.coeffs {
            if *k != 0 {
                let s = c.scale(&BigRational::from_integer((*k).into()));
                out = &out + &XPoly::monomial(s, k - 1);
            }
        }
        out
    }

    /// Reduction modulo pi^(n+1).
    pub fn truncate_pi(&self, n: u32) -> Self {
        Self::from_map(self.coeffs.iter().map(|(k, c)| (*k, c.truncate(n))))
    }

    /// Terms of x-degree at most `n`.
    pub fn truncate_x(&self, n: i32) -> Self {
        Self::from_map(self.coeffs.range(..=n).map(|(k, c)| (*k, c.clone())))
    }

    fn from_map(it: impl Iterator<Item = (i32, Scalar)>) -> Self {
        Self {
            coeffs: it.filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_map(self.coeffs.iter().map(|(k, c)| (*k, c.scale(q))))
    }

    /// Evaluation at pi = 0, as a Laurent polynomial over Q.
    pub fn residue(&self) -> Self {
        Self::from_map(self.coeffs.iter().map(|(k, c)| (*k, Scalar::from_rational(c.residue()))))
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &rhs.coeffs {
            let e = coeffs.entry(*k).or_insert_with(Scalar::zero);
            *e = &*e + c;
        }
        XPoly::from_map(coeffs.into_iter())
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly::from_map(self.coeffs.iter().map(|(k, c)| (*k, -c)))
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        let mut coeffs: BTreeMap<i32, Scalar> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                let e = coeffs.entry(a + b).or_insert_with(Scalar::zero);
                *e = &*e + &(ca * cb);
            }
        }
        XPoly::from_map(coeffs.into_iter())
    }
}

fn x_power(k: i32) -> String {
    match k {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{k}"),
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let terms: Vec<(u32, &BigRational)> = c.iter().collect();
            let xs = x_power(*k);
            if terms.len() == 1 {
                let (p, q) = terms[0];
                let neg = q.is_negative();
                let abs = q.abs();
                if first {
                    f.write_str(if neg { "-" } else { "" })?;
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                let mut parts = Vec::new();
                if !abs.is_one() || (p == 0 && xs.is_empty()) {
                    parts.push(abs.to_string());
                }
                match p {
                    0 => {}
                    1 => parts.push("pi".into()),
                    _ => parts.push(format!("pi^{p}")),
                }
                if !xs.is_empty() {
                    parts.push(xs);
                }
                f.write_str(&parts.join("*"))?;
            } else {
                if !first {
                    f.write_str(" + ")?;
                }
                if xs.is_empty() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{xs}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Matrix product over Laurent polynomials.
pub fn mat_mul(a: &[Vec<XPoly>], b: &[Vec<XPoly>]) -> Result<Vec<Vec<XPoly>>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != b.len()) {
        return Err(Error::ShapeMismatch(format!("{n}x{} times {}x{m}", a[0].len(), b.len())));
    }
    let mut out = vec![vec![XPoly::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = XPoly::zero();
            for k in 0..b.len() {
                acc = &acc + &(&a[i][k] * &b[k][j]);
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub fn identity(r: usize) -> Vec<Vec<XPoly>> {
    (0..r)
        .map(|i| (0..r).map(|j| if i == j { XPoly::one() } else { XPoly::zero() }).collect())
        .collect()
}

pub fn render(m: &[Vec<XPoly>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}
