use std::fmt::Write;
use std::sync::Arc;

use serde_json::{json, Value};

use super::emit;
use super::{Ctx, Outcome};
use crate::blowup::{neron_blowup, BlowupOptions, BlowupResult};
use crate::dgal::{self, render, Verdict};
use crate::error::Result;
use crate::groebner::Ideal;
use crate::hopf::{Base, HopfPresentation};
use crate::images::{self, check_unipotent_kernel, Fibre, Unipotence};
use crate::reps::{
    conjugation_check, conormal_rep, identity_blowup_rep, line_blowup_rep, rescaled_rep,
    stabilizer_ideal, sum_faithful, Faithfulness, RepMatrix,
};
use crate::ring::Poly;

fn identity_blowup(g: &Arc<HopfPresentation>, ctx: &Ctx) -> Result<BlowupResult> {
    let centre = g.augmentation_ideal().extend(&[Poly::pi(g.ring())])?;
    neron_blowup(g, &centre, &BlowupOptions::default(), &ctx.lim)
}

fn line_blowup(v: &RepMatrix, ctx: &Ctx) -> Result<BlowupResult> {
    neron_blowup(v.group(), &stabilizer_ideal(v, 0)?, &BlowupOptions::default(), &ctx.lim)
}

fn faithfulness(f: &Faithfulness) -> (bool, String, Value) {
    match f {
        Faithfulness::Faithful => (true, "faithful: yes\n".into(), json!({"faithful": true})),
        Faithfulness::NotAtBound(v) => (
            false,
            format!("faithful: not certified ({} not generated)\n", v.join(", ")),
            json!({"faithful": false, "missing": v}),
        ),
        Faithfulness::Fail(w) => (
            false,
            format!("faithful: no ({w})\n"),
            json!({"faithful": false, "witness": w}),
        ),
    }
}

pub fn rep_validate(ctx: &Ctx, r: &Option<String>) -> Result<Outcome> {
    let v = ctx.rep(r)?;
    let rep = v.validate(&ctx.lim)?;
    let text = format!("{v}\n{rep}");
    Ok(Outcome::new(rep.passed(), text, json!({"rep": emit::rep(&v), "report": emit::report(&rep)})))
}

pub fn rep_blowup_identity(ctx: &Ctx, r: &Option<String>) -> Result<Outcome> {
    let v = ctx.rep(r)?;
    let b = identity_blowup(v.group(), ctx)?;
    let out = identity_blowup_rep(&v, &b, &ctx.lim)?;
    let fractions = out.render(|p| b.fraction_string(p, &ctx.lim).unwrap_or_else(|e| e.to_string()));
    let rep = conjugation_check(&v, &out, &b, &ctx.lim)?;
    let text = format!("{fractions}\nover {}:\n{out}\n{}{rep}", b.blown.name(), emit::adjoined_text(&b));
    let result = json!({
        "fractions": fractions,
        "rep": emit::rep(&out),
        "blowup": emit::blowup(&b),
        "conjugation": emit::report(&rep),
    });
    Ok(Outcome::new(rep.passed(), text, result))
}

pub fn rep_blowup_line(ctx: &Ctx, r: &Option<String>) -> Result<Outcome> {
    let v = ctx.rep(r)?;
    let b = line_blowup(&v, ctx)?;
    let e = rescaled_rep(&v, &b, &ctx.lim)?.rep;
    let out = line_blowup_rep(&v, &b, &e, &ctx.lim)?;
    let (ok, ftext, fjson) = faithfulness(&out.verify_faithful(&ctx.lim)?);
    let text = format!("{out}\n{}{ftext}", emit::adjoined_text(&b));
    let result = json!({"rep": emit::rep(&out), "blowup": emit::blowup(&b), "faithfulness": fjson});
    Ok(Outcome::new(ok, text, result))
}

pub fn rep_rescale(ctx: &Ctx, r: &Option<String>) -> Result<Outcome> {
    let v = ctx.rep(r)?;
    let b = line_blowup(&v, ctx)?;
    let s = rescaled_rep(&v, &b, &ctx.lim)?;
    let (ok, ftext, fjson) = faithfulness(&s.faithful);
    let text = format!("{}\nsum: {}\n{}{ftext}", s.rep, s.sum, emit::adjoined_text(&b));
    let result = json!({
        "rep": emit::rep(&s.rep),
        "sum": emit::rep(&s.sum),
        "blowup": emit::blowup(&b),
        "faithfulness": fjson,
    });
    Ok(Outcome::new(ok, text, result))
}

pub fn rep_sum(ctx: &Ctx, r: &Option<String>, sigma: &str, quotient: &str) -> Result<Outcome> {
    let rho = ctx.rep(r)?;
    let sigma = ctx.rep(&Some(sigma.to_string()))?;
    let q = ctx.morphism(&Some(quotient.to_string()))?;
    let g = rho.group().clone();
    let a = sigma.group().clone();
    let ab = identity_blowup(&a, ctx)?;
    let sigma2 = identity_blowup_rep(&sigma, &ab, &ctx.lim)?;
    let mut cut = vec![Poly::pi(g.ring())];
    for x in a.augmentation_ideal().gens() {
        cut.push(q.pull(x)?);
    }
    let b = neron_blowup(&g, &Ideal::new(g.ring(), cut)?, &BlowupOptions::default(), &ctx.lim)?;
    let (sum, f) = sum_faithful(&rho, &sigma2, &b, &q, &ab, &ctx.lim)?;
    let (ok, ftext, fjson) = faithfulness(&f);
    let text = format!("{sum}\n{}{ftext}", emit::adjoined_text(&b));
    let result = json!({"rep": emit::rep(&sum), "blowup": emit::blowup(&b), "faithfulness": fjson});
    Ok(Outcome::new(ok, text, result))
}

pub fn rep_faithful(ctx: &Ctx, r: &Option<String>, after_blowup: bool) -> Result<Outcome> {
    let mut v = ctx.rep(r)?;
    if after_blowup {
        let b = identity_blowup(v.group(), ctx)?;
        v = identity_blowup_rep(&v, &b, &ctx.lim)?;
    }
    let (ok, ftext, fjson) = faithfulness(&v.verify_faithful(&ctx.lim)?);
    Ok(Outcome::new(ok, format!("{v}\n{ftext}"), json!({"rep": emit::rep(&v), "faithfulness": fjson})))
}

pub fn conormal(ctx: &Ctx, g: &Option<String>, subgroup: &str) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let k = match g.base() {
        Base::Dvr => g.special_fibre(&ctx.lim)?,
        _ => (*g).clone(),
    };
    let ideal = ctx.ideal(&k, subgroup)?;
    let c = conormal_rep(&k, &ideal, &ctx.lim)?;
    let basis: Vec<String> = c.basis.iter().map(|p| p.to_string()).collect();
    let text = format!("basis: {}\naction: {}\n", basis.join(", "), c.action);
    let result = json!({"subgroup": emit::group(&c.subgroup), "basis": basis, "action": emit::rep(&c.action)});
    Ok(Outcome::new(true, text, result))
}

pub fn image(ctx: &Ctx, m: &Option<String>) -> Result<Outcome> {
    let rho = ctx.morphism(m)?;
    let im = images::image_hopf(&rho, &ctx.lim)?;
    let text = format!("{}\n", im.psi);
    let result = json!({
        "psi": emit::group(&im.psi),
        "factor": emit::morphism(&im.factor),
        "inclusion": emit::morphism(&im.inclusion),
    });
    Ok(Outcome::new(true, text, result))
}

pub fn diptych(ctx: &Ctx, m: &Option<String>) -> Result<Outcome> {
    let rho = ctx.morphism(m)?;
    let d = images::saturated_image(&rho, ctx.depth, &ctx.lim)?;
    let rep = d.check(&ctx.lim)?;
    let mut text = format!("Psi:\n{}\nPsi':\n{}\n", d.psi(), d.psi_prime());
    let _ = writeln!(text, "saturation steps: {}, stabilized: {}", d.stages.len() - 1, d.stabilized);
    text.push_str(&rep.to_string());
    let result = json!({
        "psi": emit::group(d.psi()),
        "psi_prime": emit::group(d.psi_prime()),
        "to_psi_prime": emit::morphism(d.to_psi_prime()),
        "steps": d.stages.len() - 1,
        "stabilized": d.stabilized,
        "report": emit::report(&rep),
    });
    Ok(Outcome::new(rep.passed() && d.stabilized, text, result))
}

fn fibre_json(f: &Fibre) -> Value {
    json!({"group": emit::group(&f.group), "normalized": emit::group(&f.minimal)})
}

pub fn triptych(ctx: &Ctx, m: &Option<String>, bound: u32) -> Result<Outcome> {
    let rho = ctx.morphism(m)?;
    let t = images::triptych(&rho, ctx.depth, &ctx.lim)?;
    let (kernel, uni) = check_unipotent_kernel(&t, bound, &ctx.lim)?;
    let (certified, why) = match &uni {
        Unipotence::Certified(w) => (true, w.clone()),
        Unipotence::Undecided(w) => (false, w.clone()),
    };
    let mut text = String::new();
    for (label, f) in [("Psi'_k", &t.psi_prime_k), ("Im(rho_k)", &t.im_rho_k), ("Psi_k", &t.psi_k)] {
        let _ = writeln!(text, "{label}:\n{}", f.minimal);
    }
    let _ = writeln!(
        text,
        "kernel of Psi'_k -> Im(rho_k) unipotent: {} ({why})",
        if certified { "yes" } else { "undecided" }
    );
    text.push_str(&t.report.to_string());
    let result = json!({
        "psi_prime_k": fibre_json(&t.psi_prime_k),
        "im_rho_k": fibre_json(&t.im_rho_k),
        "psi_k": fibre_json(&t.psi_k),
        "prime_to_image": emit::morphism(&t.prime_to_image),
        "image_to_psi": emit::morphism(&t.image_to_psi),
        "kernel": emit::group(&kernel),
        "unipotent": {"certified": certified, "reason": why},
        "stabilized": t.diptych.stabilized,
        "report": emit::report(&t.report),
    });
    Ok(Outcome::new(t.report.passed() && t.diptych.stabilized, text, result))
}

pub fn dgal_solve(ctx: &Ctx, c: &Option<String>, order: u32) -> Result<Outcome> {
    let c = ctx.connection(c)?;
    let y = dgal::formal_solution(&c, order)?;
    let shown = render(&y);
    let text = format!("Y = {shown} + O(x^{})\n", order + 1);
    Ok(Outcome::new(true, text, json!({"order": order, "solution": shown})))
}

fn level_json(l: &dgal::Level) -> Value {
    json!({
        "level": l.n,
        "degree_bound": l.degree_bound,
        "trivial": l.trivial,
        "gauge": l.gauge.as_ref().map(|g| render(g)),
        "obstruction": l.obstruction,
    })
}

fn level_text(l: &dgal::Level) -> String {
    match (&l.gauge, &l.obstruction) {
        (Some(g), _) => format!("level {}: trivial, g = {}\n", l.n, render(g)),
        (None, Some(o)) => format!("level {}: not trivial, {o}\n", l.n),
        (None, None) => format!("level {}: not trivial\n", l.n),
    }
}

pub fn dgal_trivial(ctx: &Ctx, c: &Option<String>, level: u32) -> Result<Outcome> {
    let c = ctx.connection(c)?;
    let l = dgal::triviality_mod(&c, level, ctx.degree_bound)?;
    Ok(Outcome::new(l.trivial, level_text(&l), level_json(&l)))
}

pub fn dgal_diagnose(ctx: &Ctx, c: &Option<String>, level: u32) -> Result<Outcome> {
    let c = ctx.connection(c)?;
    let d = dgal::galois_diagnostic(&c, level, ctx.degree_bound)?;
    let mut text: String = d.levels.iter().map(level_text).collect();
    let _ = writeln!(text, "{}", d.message());
    let verdict = match &d.verdict {
        Verdict::TrivialConnection => json!({"kind": "TrivialConnection"}),
        Verdict::AutomaticBlowup { through } => json!({"kind": "AutomaticBlowup", "through": through}),
        Verdict::IdentityBlowups { count } => json!({"kind": "IdentityBlowups", "count": count}),
        Verdict::NotTrivial => json!({"kind": "NotTrivial"}),
        Verdict::NonMonotone => json!({"kind": "NonMonotone"}),
    };
    let levels: Vec<Value> = d.levels.iter().map(level_json).collect();
    let result = json!({"levels": levels, "verdict": verdict, "message": d.message()});
    Ok(Outcome::new(true, text, result))
}
