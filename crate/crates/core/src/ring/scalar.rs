use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// pi-adic valuation. `Infinite` is the valuation of zero and compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// An element of Q[pi], stored as exponent -> nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    coeffs: BTreeMap<u32, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    /// The uniformiser.
    pub fn pi() -> Self {
        Self::pi_power(1)
    }

    pub fn pi_power(k: u32) -> Self {
        Self::from_coeffs([(k, BigRational::one())])
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_coeffs([(0, q)])
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (u32, BigRational)>) -> Self {
        let mut map: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (k, c) in coeffs {
            *map.entry(k).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { coeffs: map }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: u32) -> BigRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn pi_valuation(&self) -> Valuation {
        match self.coeffs.keys().next() {
            Some(k) => Valuation::Finite(*k),
            None => Valuation::Infinite,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Exact division by pi^m.
    pub fn divide_pi(&self, m: u32) -> Result<Scalar> {
        if let Valuation::Finite(v) = self.pi_valuation() {
            if v < m {
                return Err(Error::NotDivisible {
                    poly: self.to_string(),
                    power: m,
                });
            }
        }
        Ok(Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (k - m, c.clone())).collect(),
        })
    }

    /// Image in R_n = Q[pi]/(pi^(n+1)).
    pub fn truncate(&self, n: u32) -> Scalar {
        Self {
            coeffs: self
                .coeffs
                .range(..=n)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Value at pi = 0.
    pub fn residue(&self) -> BigRational {
        self.coefficient(0)
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        Self::from_coeffs(self.coeffs.iter().map(|(k, c)| (*k, c * q)))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::from_coeffs(
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Vec::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.push((a + b, ca * cb));
            }
        }
        Scalar::from_coeffs(out)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            let neg = c < &BigRational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let pi = match k {
                0 => String::new(),
                1 => "pi".to_string(),
                _ => format!("pi^{k}"),
            };
            if pi.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&pi)?;
            } else {
                write!(f, "{abs}*{pi}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let s = Scalar::from_coeffs([(0, q(1, 1)), (2, q(0, 1)), (0, q(-1, 1))]);
        assert!(s.is_zero());
        assert_eq!(s.pi_valuation(), Valuation::Infinite);
    }

    #[test]
    fn valuation_is_least_exponent() {
        let s = Scalar::from_coeffs([(3, q(2, 3)), (1, q(-1, 1))]);
        assert_eq!(s.pi_valuation(), Valuation::Finite(1));
        assert_eq!(s.to_string(), "2/3*pi^3 - pi");
    }

    #[test]
    fn divide_and_truncate() {
        let s = Scalar::from_coeffs([(2, q(1, 1)), (4, q(5, 1))]);
        assert_eq!(s.divide_pi(2).unwrap(), Scalar::from_coeffs([(0, q(1, 1)), (2, q(5, 1))]));
        assert!(s.divide_pi(3).is_err());
        assert_eq!(s.truncate(3), Scalar::pi_power(2));
    }

    #[test]
    fn valuation_is_additive() {
        let a = Scalar::from_coeffs([(1, q(1, 1)), (2, q(3, 1))]);
        let b = Scalar::from_coeffs([(2, q(-1, 2))]);
        assert_eq!((&a * &b).pi_valuation(), Valuation::Finite(3));
    }
}
