//! Standard presentations used by the examples and tests.

use std::sync::Arc;

use super::{Base, HopfPresentation};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// G_m = Spec R[u, v]/(uv - 1).
pub fn gm() -> HopfPresentation {
    named_gm("Gm", "u", "v")
}

/// G_m with coordinate `u` and inverse `v`.
pub fn named_gm(name: &str, u: &str, v: &str) -> HopfPresentation {
    HopfPresentation::parse(
        name,
        &[u, v],
        &[&format!("{u}*{v} - 1")],
        &[&format!("{u}'*{u}''"), &format!("{v}'*{v}''")],
        &["1", "1"],
        &[v, u],
    )
    .expect("Gm presentation")
}

/// G_a = Spec R[x].
pub fn ga() -> HopfPresentation {
    named_ga("Ga", "x")
}

pub fn named_ga(name: &str, var: &str) -> HopfPresentation {
    let d = format!("{var}' + {var}''");
    let s = format!("-{var}");
    HopfPresentation::parse(name, &[var], &[], &[&d], &["0"], &[&s]).expect("Ga presentation")
}

/// G_m in the coordinates x = z - 1, y = 1/z - 1 rescaled by pi^n: relation
/// x + y + pi^n*x*y.
pub fn gm_level(n: u32) -> HopfPresentation {
    let p = if n == 0 {
        String::new()
    } else {
        format!("pi^{n}*")
    };
    let x = format!("x{n}");
    let y = format!("y{n}");
    HopfPresentation::parse(
        &format!("G{n}"),
        &[&x, &y],
        &[&format!("{x} + {y} + {p}{x}*{y}")],
        &[
            &format!("{x}' + {x}'' + {p}{x}'*{x}''"),
            &format!("{y}' + {y}'' + {p}{y}'*{y}''"),
        ],
        &["0", "0"],
        &[&y, &x],
    )
    .expect("level presentation")
}

/// The trivial group Spec R.
pub fn trivial() -> HopfPresentation {
    let ring = Ring::grevlex(Vec::<String>::new()).expect("empty ring");
    HopfPresentation::new("1", &ring, vec![], vec![], vec![], vec![], Base::Dvr)
        .expect("trivial presentation")
}

/// mu_2 = Spec R[u]/(u^2 - 1).
pub fn mu2() -> HopfPresentation {
    HopfPresentation::parse("mu2", &["u"], &["u^2 - 1"], &["u'*u''"], &["1"], &["u"])
        .expect("mu2 presentation")
}

/// GL_2 with entries a11, a12, a21, a22 and d the inverse determinant.
pub fn gl2() -> HopfPresentation {
    HopfPresentation::parse(
        "GL2",
        &["a11", "a12", "a21", "a22", "d"],
        &["d*(a11*a22 - a12*a21) - 1"],
        &[
            "a11'*a11'' + a12'*a21''",
            "a11'*a12'' + a12'*a22''",
            "a21'*a11'' + a22'*a21''",
            "a21'*a12'' + a22'*a22''",
            "d'*d''",
        ],
        &["1", "0", "0", "1", "1"],
        &["a22*d", "-a12*d", "-a21*d", "a11*d", "a11*a22 - a12*a21"],
    )
    .expect("GL2 presentation")
}

/// SL_2 with entries a11, a12, a21, a22.
pub fn sl2() -> HopfPresentation {
    HopfPresentation::parse(
        "SL2",
        &["a11", "a12", "a21", "a22"],
        &["a11*a22 - a12*a21 - 1"],
        &[
            "a11'*a11'' + a12'*a21''",
            "a11'*a12'' + a12'*a22''",
            "a21'*a11'' + a22'*a21''",
            "a21'*a12'' + a22'*a22''",
        ],
        &["1", "0", "0", "1"],
        &["a22", "-a12", "-a21", "a11"],
    )
    .expect("SL2 presentation")
}

/// Upper-triangular invertible 2x2 matrices with d the inverse determinant.
pub fn borel() -> HopfPresentation {
    HopfPresentation::parse(
        "B",
        &["a11", "a12", "a22", "d"],
        &["d*a11*a22 - 1"],
        &["a11'*a11''", "a11'*a12'' + a12'*a22''", "a22'*a22''", "d'*d''"],
        &["1", "0", "1", "1"],
        &["a22*d", "-a12*d", "a11*d", "a11*a22"],
    )
    .expect("Borel presentation")
}

/// Product of two presentations with disjoint variable names.
pub fn product(g: &HopfPresentation, h: &HopfPresentation) -> Result<HopfPresentation> {
    if g.base() != h.base() {
        return Err(Error::Precondition("factors over different bases".into()));
    }
    let mut vars: Vec<String> = g.vars().to_vec();
    for v in h.vars() {
        if vars.contains(v) {
            return Err(Error::Precondition(format!("variable `{v}` in both factors")));
        }
        vars.push(v.clone());
    }
    let ring: Arc<Ring> = Ring::grevlex(vars)?;
    let doubled = super::copies_ring(ring.vars(), 2)?;
    let base = Ring::base();
    let mut rels = Vec::new();
    let mut comul = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for f in [g, h] {
        for r in f.relations().gens() {
            rels.push(r.to_ring(&ring)?);
        }
        for p in f.comul().images() {
            comul.push(p.to_ring(&doubled)?);
        }
        for p in f.counit().images() {
            counit.push(p.to_ring(&base)?);
        }
        for p in f.antipode().images() {
            antipode.push(p.to_ring(&ring)?);
        }
    }
    let name = format!("{}x{}", g.name(), h.name());
    HopfPresentation::new(&name, &ring, rels, comul, counit, antipode, g.base())
}
