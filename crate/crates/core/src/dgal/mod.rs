//! Connections of small rank on the affine and punctured line over R: formal solutions,
//! triviality modulo pi^(n+1), and what that says about blowups of the Galois group.
//!
//! Convention: the frame e satisfies d/dx e = -A e. A gauge g gives the frame g e, which is
//! horizontal exactly when g' = g A.

mod solve;
mod xpoly;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::Scalar;
use solve::Echelon;

pub use xpoly::{identity, mat_mul, render, XPoly};
pub(crate) use xpoly::parse_ring;

/// Unknowns beyond this many make the triviality search a resource failure.
const MAX_UNKNOWNS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineBase {
    Affine,
    Punctured,
}

impl fmt::Display for LineBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineBase::Affine => "affine-line",
            LineBase::Punctured => "punctured-line",
        })
    }
}

impl FromStr for LineBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "affine-line" => Ok(LineBase::Affine),
            "punctured-line" => Ok(LineBase::Punctured),
            other => Err(Error::Precondition(format!(
                "unknown base `{other}` (expected affine-line or punctured-line)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    base: LineBase,
    matrix: Vec<Vec<XPoly>>,
}

impl Connection {
    pub fn new(base: LineBase, matrix: Vec<Vec<XPoly>>) -> Result<Self> {
        let r = matrix.len();
        if r == 0 || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::ShapeMismatch("connection matrix must be square and nonempty".into()));
        }
        if base == LineBase::Affine {
            for (i, row) in matrix.iter().enumerate() {
                for (j, p) in row.iter().enumerate() {
                    if p.min_degree().is_some_and(|d| d < 0) {
                        return Err(Error::Precondition(format!(
                            "entry ({}, {}) = {p} has a pole at 0 on the affine line",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(Self { base, matrix })
    }

    pub fn parse(base: LineBase, rows: &[Vec<&str>]) -> Result<Self> {
        let matrix = rows
            .iter()
            .map(|row| row.iter().map(|s| XPoly::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, matrix)
    }

    pub fn base(&self) -> LineBase {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<XPoly>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|p| p.is_zero())
    }

    /// Largest |k| with x^k occurring in A.
    pub fn x_degree(&self) -> u32 {
        self.matrix
            .iter()
            .flatten()
            .flat_map(|p| p.terms().map(|(k, _)| k.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }

    /// 2 (n + 1) max(1, deg A).
    pub fn default_degree_bound(&self, n: u32) -> u32 {
        2 * (n + 1) * self.x_degree().max(1)
    }
}

impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.base, render(&self.matrix))
    }
}

/// Y = sum Y_k x^k with Y(0) = I and Y' = -A Y through x^(order - 1).
pub fn formal_solution(c: &Connection, order: u32) -> Result<Vec<Vec<XPoly>>> {
    if c.base != LineBase::Affine {
        return Err(Error::Precondition("formal solutions are expanded on the affine line".into()));
    }
    let r = c.rank();
    let coeff = |m: &[Vec<XPoly>], k: i32| -> Vec<Vec<Scalar>> {
        m.iter().map(|row| row.iter().map(|p| p.coefficient(k)).collect()).collect()
    };
    let mut ys: Vec<Vec<Vec<Scalar>>> = vec![coeff(&identity(r), 0)];
    for k in 0..order as i32 {
        // (k + 1) Y_(k+1) = -sum_j A_j Y_(k-j)
        let mut next = vec![vec![Scalar::zero(); r]; r];
        for j in 0..=k {
            let a = coeff(&c.matrix, j);
            let y = &ys[(k - j) as usize];
            for (row, out) in a.iter().zip(next.iter_mut()) {
                for (col, slot) in out.iter_mut().enumerate() {
                    for (l, a_il) in row.iter().enumerate() {
                        *slot = &*slot - &(a_il * &y[l][col]);
                    }
                }
            }
        }
        let inv = BigRational::new(1.into(), (k + 1).into());
        ys.push(next.iter().map(|row| row.iter().map(|s| s.scale(&inv)).collect()).collect());
    }
    let mut out = vec![vec![XPoly::zero(); r]; r];
    for (k, y) in ys.iter().enumerate() {
        for i in 0..r {
            for j in 0..r {
                out[i][j] = &out[i][j] + &XPoly::monomial(y[i][j].clone(), k as i32);
            }
        }
    }
    Ok(out)
}

/// Y' + A Y through x^(order - 1), which vanishes for the formal solution.
pub fn solution_defect(c: &Connection, y: &[Vec<XPoly>], order: u32) -> Result<Vec<Vec<XPoly>>> {
    let ay = mat_mul(&c.matrix, y)?;
    Ok(y.iter()
        .zip(ay)
        .map(|(row, arow)| {
            row.iter()
                .zip(arow)
                .map(|(p, q)| (&p.derivative() + &q).truncate_x(order as i32 - 1))
                .collect()
        })
        .collect())
}

/// Verdict on one level n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub n: u32,
    pub degree_bound: u32,
    pub trivial: bool,
    /// g with g' = g A modulo pi^(n+1), coefficients truncated below pi^(n+1).
    pub gauge: Option<Vec<Vec<XPoly>>>,
    pub obstruction: Option<String>,
}

/// g' - g A, reduced modulo pi^(n+1).
pub fn gauge_defect(c: &Connection, g: &[Vec<XPoly>], n: u32) -> Result<Vec<Vec<XPoly>>> {
    let ga = mat_mul(g, &c.matrix)?;
    Ok(g.iter()
        .zip(ga)
        .map(|(row, arow)| {
            row.iter()
                .zip(arow)
                .map(|(p, q)| (&p.derivative() - &q).truncate_pi(n))
                .collect()
        })
        .collect())
}

pub(crate) fn determinant(m: &[Vec<XPoly>]) -> XPoly {
    match m.len() {
        0 => XPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = XPoly::zero();
            for j in 0..n {
                let minor: Vec<Vec<XPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Searches for a gauge g with g' = g A modulo pi^(n+1), x-degrees within the bound, and
/// x^0 coefficient I. On the affine line this normalisation loses nothing: any invertible
/// solution times its inverse value at 0 is another one.
pub fn triviality_mod(c: &Connection, n: u32, degree_bound: Option<u32>) -> Result<Level> {
    let bound = degree_bound.unwrap_or_else(|| c.default_degree_bound(n));
    let r = c.rank();
    let (lo, hi) = match c.base {
        LineBase::Affine => (0, bound as i32),
        LineBase::Punctured => (-(bound as i32), bound as i32),
    };
    let width = (hi - lo + 1) as usize;
    let levels = n as usize + 1;
    let total = r * r * levels * width;
    if total > MAX_UNKNOWNS {
        return Err(Error::ResourceLimit(format!("{total} unknowns in the gauge search")));
    }
    let idx = |i: usize, j: usize, p: usize, m: i32| -> Option<usize> {
        (lo..=hi)
            .contains(&m)
            .then(|| ((i * r + j) * levels + p) * width + (m - lo) as usize)
    };
    let mut sys = Echelon::default();
    for i in 0..r {
        for j in 0..r {
            for p in 0..levels {
                let one = i == j && p == 0;
                let rhs = if one { BigRational::one() } else { BigRational::zero() };
                let ok = sys.insert([(idx(i, j, p, 0).expect("0 in range"), BigRational::one())].into(), rhs);
                debug_assert!(ok);
            }
        }
    }
    let (amin, amax) = c
        .matrix
        .iter()
        .flatten()
        .filter_map(|p| Some((p.min_degree()?, p.max_degree()?)))
        .fold((0, 0), |(a, b), (x, y)| (a.min(x), b.max(y)));
    for p in 0..levels {
        for i in 0..r {
            for j in 0..r {
                for e in (lo - 1).min(lo + amin)..=(hi - 1).max(hi + amax) {
                    // coefficient of pi^p x^e in (g' - g A)_ij
                    let mut row = std::collections::BTreeMap::new();
                    if let Some(u) = idx(i, j, p, e + 1) {
                        if e + 1 != 0 {
                            row.insert(u, BigRational::from_integer((e + 1).into()));
                        }
                    }
                    for k in 0..r {
                        for (m2, s) in c.matrix[k][j].terms() {
                            for (p2, q) in s.iter() {
                                let p2 = p2 as usize;
                                if p2 > p {
                                    continue;
                                }
                                if let Some(u) = idx(i, k, p - p2, e - m2) {
                                    let slot = row.entry(u).or_insert_with(BigRational::zero);
                                    *slot -= q;
                                }
                            }
                        }
                    }
                    if !sys.insert(row, BigRational::zero()) {
                        return Ok(Level {
                            n,
                            degree_bound: bound,
                            trivial: false,
                            gauge: None,
                            obstruction: Some(format!(
                                "coefficient of pi^{p} x^{e} in entry ({}, {}) of g' - g*A cannot vanish",
                                i + 1,
                                j + 1
                            )),
                        });
                    }
                }
            }
        }
    }
    let x = sys.solve(total);
    let mut g = vec![vec![XPoly::zero(); r]; r];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            for p in 0..levels {
                for m in lo..=hi {
                    let v = &x[idx(i, j, p, m).expect("in range")];
                    if !v.is_zero() {
                        let s = Scalar::from_coeffs([(p as u32, v.clone())]);
                        *slot = &*slot + &XPoly::monomial(s, m);
                    }
                }
            }
        }
    }
    debug_assert!(gauge_defect(c, &g, n)?.iter().flatten().all(|p| p.is_zero()));
    let det = determinant(&g).residue();
    let unit = match c.base {
        LineBase::Affine => det.terms().count() == 1 && det.min_degree() == Some(0),
        LineBase::Punctured => det.terms().count() == 1,
    };
    if !unit {
        return Ok(Level {
            n,
            degree_bound: bound,
            trivial: false,
            gauge: None,
            obstruction: Some(format!("the solution with x^0 coefficient I has determinant {det} modulo pi")),
        });
    }
    Ok(Level {
        n,
        degree_bound: bound,
        trivial: true,
        gauge: Some(g),
        obstruction: None,
    })
}

/// Levels 0..=max_n, each with its own default bound unless one is given.
pub fn triviality_report(c: &Connection, max_n: u32, degree_bound: Option<u32>) -> Result<Vec<Level>> {
    (0..=max_n).map(|n| triviality_mod(c, n, degree_bound)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A = 0.
    TrivialConnection,
    /// Trivial modulo pi^(n+1) for every tested n.
    AutomaticBlowup { through: u32 },
    /// Trivial exactly below `count`.
    IdentityBlowups { count: u32 },
    NotTrivial,
    /// Trivial at some level after failing at a lower one.
    NonMonotone,
}

#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub levels: Vec<Level>,
    pub verdict: Verdict,
}

impl Diagnostic {
    pub fn message(&self) -> String {
        match &self.verdict {
            Verdict::TrivialConnection => "trivial connection; Gal' = Gal = trivial group".into(),
            Verdict::AutomaticBlowup { through } => format!(
                "trivial through level {through}; evidence that Gal' is the automatic blowup of Gal"
            ),
            Verdict::IdentityBlowups { count: 1 } => {
                "trivial at level 0 only; evidence for exactly one Neron blowup of Gal at the identity".into()
            }
            Verdict::IdentityBlowups { count } => format!(
                "trivial at levels 0 to {} only; evidence for exactly {count} Neron blowups of Gal at the identity",
                count - 1
            ),
            Verdict::NotTrivial => "not trivial at level 0; no blowup evidence".into(),
            Verdict::NonMonotone => "triviality is not downward closed at the degree bound; no verdict".into(),
        }
    }
}

/// Runs the levels 0..=max_n on a rank one connection and reads off the blowup depth.
pub fn galois_diagnostic(c: &Connection, max_n: u32, degree_bound: Option<u32>) -> Result<Diagnostic> {
    if c.rank() != 1 {
        return Err(Error::ShapeMismatch(format!("galois diagnostic needs rank 1, found {}", c.rank())));
    }
    let levels = triviality_report(c, max_n, degree_bound)?;
    let verdict = if c.is_zero() {
        Verdict::TrivialConnection
    } else {
        let count = levels.iter().take_while(|l| l.trivial).count() as u32;
        if levels[count as usize..].iter().any(|l| l.trivial) {
            Verdict::NonMonotone
        } else if count == 0 {
            Verdict::NotTrivial
        } else if count == max_n + 1 {
            Verdict::AutomaticBlowup { through: max_n }
        } else {
            Verdict::IdentityBlowups { count }
        }
    };
    Ok(Diagnostic { levels, verdict })
}
