use serde_json::{json, Map, Value};

use crate::blowup::BlowupResult;
use crate::groebner::Ideal;
use crate::hopf::{GroupMorphism, HopfPresentation};
use crate::report::Report;
use crate::reps::RepMatrix;
use crate::ring::{Poly, Substitution};

fn strings<'a>(it: impl IntoIterator<Item = &'a Poly>) -> Value {
    Value::Array(it.into_iter().map(|p| Value::String(p.to_string())).collect())
}

fn map(vars: &[String], s: &Substitution) -> Value {
    let mut m = Map::new();
    for (v, p) in vars.iter().zip(s.images()) {
        m.insert(v.clone(), Value::String(p.to_string()));
    }
    Value::Object(m)
}

pub fn group(g: &HopfPresentation) -> Value {
    let hidden = match g.base() {
        crate::hopf::Base::Truncated(n) => Some(Poly::pi_power(g.ring(), n + 1)),
        crate::hopf::Base::Dvr => None,
    };
    let rels = g.relations().gens().iter().filter(|p| Some(*p) != hidden.as_ref());
    json!({
        "name": g.name(),
        "base": g.base().to_string(),
        "vars": g.vars(),
        "relations": strings(rels),
        "comul": map(g.vars(), g.comul()),
        "counit": map(g.vars(), g.counit()),
        "antipode": map(g.vars(), g.antipode()),
        "text": g.to_string(),
    })
}

pub fn morphism(m: &GroupMorphism) -> Value {
    json!({
        "source": m.source().name(),
        "target": m.target().name(),
        "pullback": map(m.target().vars(), m.pullback()),
    })
}

pub fn ideal(i: &Ideal) -> Value {
    strings(i.gens())
}

pub fn report(r: &Report) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

pub fn rep(r: &RepMatrix) -> Value {
    let rows: Vec<Value> = r.entries().iter().map(|row| strings(row)).collect();
    json!({
        "group": r.group().name(),
        "matrix": rows,
        "det_inverse": r.det_inverse().to_string(),
        "text": r.to_string(),
    })
}

pub fn blowup(b: &BlowupResult) -> Value {
    let adjoined: Vec<Value> = b
        .adjoined
        .iter()
        .map(|a| json!({"name": a.name, "numerator": a.numerator.to_string(), "power": a.power}))
        .collect();
    json!({
        "original": b.original.name(),
        "centre": ideal(&b.centre),
        "adjoined": adjoined,
        "blown": group(&b.blown),
        "projection": morphism(&b.projection),
    })
}

pub fn adjoined_text(b: &BlowupResult) -> String {
    b.adjoined
        .iter()
        .map(|a| {
            let den = match a.power {
                1 => "pi".to_string(),
                n => format!("pi^{n}"),
            };
            if a.numerator.terms().len() > 1 {
                format!("{} = ({})/{den}\n", a.name, a.numerator)
            } else {
                format!("{} = {}/{den}\n", a.name, a.numerator)
            }
        })
        .collect()
}
