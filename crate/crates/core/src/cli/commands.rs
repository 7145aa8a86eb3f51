use std::fmt::Write;

use serde_json::{json, Value};

use super::emit;
use super::{Ctx, Outcome};
use crate::blowup::{
    automatic_member, automatic_truncation, beyond_relations, check_constancy as constancy,
    neron_blowup, partial_blowup, standard_sequence, strict_transform as transform, BlowupOptions,
    BlowupResult,
};
use crate::error::Result;
use crate::hopf::HopfPresentation;
use crate::ring::{parse_poly, Poly};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn check_hopf(ctx: &Ctx, g: &Option<String>) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let rep = g.check_hopf(&ctx.lim)?;
    let text = format!("{rep}hopf: {}\n", yes(rep.passed()));
    Ok(Outcome::new(rep.passed(), text, json!({"group": g.name(), "report": emit::report(&rep)})))
}

pub fn check_flat(ctx: &Ctx, g: &Option<String>) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let flat = g.check_flat(&ctx.lim)?;
    let text = format!("flat: {}\n", yes(flat));
    Ok(Outcome::new(flat, text, json!({"group": g.name(), "flat": flat})))
}

pub(crate) fn minimal_fibre(g: &HopfPresentation, ctx: &Ctx) -> Result<(HopfPresentation, HopfPresentation)> {
    let k = g.special_fibre(&ctx.lim)?;
    let mut order = k.vars().to_vec();
    order.reverse();
    let minimal = k.simplify(&order, &ctx.lim)?.group;
    Ok((k, minimal))
}

pub fn fibre(ctx: &Ctx, g: &Option<String>) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let (k, minimal) = minimal_fibre(&g, ctx)?;
    let text = format!("special fibre:\n{k}\nnormalized:\n{minimal}\n");
    Ok(Outcome::new(true, text, json!({"fibre": emit::group(&k), "normalized": emit::group(&minimal)})))
}

fn reductions(b: &BlowupResult, upto: u32, ctx: &Ctx, text: &mut String) -> Result<Value> {
    let mut out = Vec::new();
    for m in 0..=upto {
        let r = b.blown.reduce_mod(m, Some(&b.projection), &ctx.lim)?;
        let _ = writeln!(
            text,
            "mod pi^{}: {}{}",
            m + 1,
            if r.trivial { "trivial" } else { "not trivial" },
            r.witness.as_ref().map(|w| format!(" ({w} survives)")).unwrap_or_default()
        );
        out.push(json!({"level": m, "trivial": r.trivial, "witness": r.witness}));
    }
    Ok(Value::Array(out))
}

pub fn reduce_mod(ctx: &Ctx, g: &Option<String>, level: u32, via: &Option<String>) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let via = match via {
        Some(_) => Some(ctx.morphism(via)?),
        None => None,
    };
    let r = g.reduce_mod(level, via.as_ref(), &ctx.lim)?;
    let mut text = format!("{}\ntrivial: {}", r.group, yes(r.trivial));
    if let Some(w) = &r.witness {
        let _ = write!(text, " ({w} survives)");
    }
    text.push('\n');
    let result = json!({
        "group": emit::group(&r.group),
        "level": level,
        "trivial": r.trivial,
        "witness": r.witness,
    });
    Ok(Outcome::new(true, text, result))
}

fn blowup_outcome(b: &BlowupResult, ctx: &Ctx, extra: Option<u32>) -> Result<Outcome> {
    let rep = b.check(&ctx.lim)?;
    let mut text = format!("{}\n{}", b.blown, emit::adjoined_text(b));
    let mut result = emit::blowup(b);
    if let Some(upto) = extra {
        result["reductions"] = reductions(b, upto, ctx, &mut text)?;
    }
    text.push_str(&rep.to_string());
    result["report"] = emit::report(&rep);
    Ok(Outcome::new(rep.passed(), text, result))
}

pub fn blowup(ctx: &Ctx, g: &Option<String>, centre: &str, plain: bool, name: &Option<String>) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let centre = ctx.ideal(&g, centre)?;
    let mut opts = if plain {
        BlowupOptions::default()
    } else {
        BlowupOptions::normalized()
    };
    opts.name = name.clone();
    let b = neron_blowup(&g, &centre, &opts, &ctx.lim)?;
    blowup_outcome(&b, ctx, None)
}

pub fn partial(ctx: &Ctx, g: &Option<String>, subgroup: &str, level: u32, plain: bool) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let h = ctx.ideal(&g, subgroup)?;
    let opts = if plain {
        BlowupOptions::default()
    } else {
        BlowupOptions::normalized()
    };
    let b = partial_blowup(&g, &h, level, &opts, &ctx.lim)?;
    blowup_outcome(&b, ctx, Some(level + 1))
}

pub fn auto_trunc(ctx: &Ctx, g: &Option<String>, level: u32) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let b = automatic_truncation(&g, level, &ctx.lim)?;
    blowup_outcome(&b, ctx, Some(level))
}

pub fn auto_member(ctx: &Ctx, g: &Option<String>, numerator: &str, power: u32) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let f = parse_poly(g.ring(), numerator)?;
    let member = automatic_member(&g, &f, power)?;
    let den = if power == 1 { "pi".to_string() } else { format!("pi^{power}") };
    let num = if f.terms().len() > 1 { format!("({f})") } else { f.to_string() };
    let text = format!("{num}/{den} in the automatic blowup: {}\n", yes(member));
    let result = json!({"numerator": f.to_string(), "power": power, "member": member});
    Ok(Outcome::new(true, text, result))
}

pub fn standard_seq(ctx: &Ctx, m: &Option<String>) -> Result<Outcome> {
    let rho = ctx.morphism(m)?;
    let seq = standard_sequence(&rho, ctx.depth, &ctx.lim)?;
    let mut text = String::new();
    let mut stages = Vec::new();
    for (i, s) in seq.stages.iter().enumerate() {
        let pi = Poly::pi(s.group.ring());
        let fibre = s.group.relations().extend(&[pi.clone()])?;
        let mut shown = vec![pi.to_string()];
        shown.extend(beyond_relations(&s.centre, &fibre, &ctx.lim)?.iter().map(|p| p.to_string()));
        let _ = writeln!(text, "stage {i}: centre ({})\n{}", shown.join(", "), s.group);
        stages.push(json!({
            "group": emit::group(&s.group),
            "centre": shown,
            "morphism": emit::morphism(&s.morphism),
        }));
    }
    let stable = seq.stabilized(&ctx.lim)?;
    let _ = writeln!(text, "stabilized: {}", yes(stable));
    Ok(Outcome::new(true, text, json!({"stages": stages, "stabilized": stable})))
}

pub fn strict_transform(ctx: &Ctx, g: &Option<String>, centre: &str, subgroup: &str) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let c = ctx.ideal(&g, centre)?;
    let h = ctx.ideal(&g, subgroup)?;
    let opts = BlowupOptions {
        simplify: true,
        ..BlowupOptions::default()
    };
    let b = neron_blowup(&g, &c, &opts, &ctx.lim)?;
    let st = transform(&b, &h, &ctx.lim)?;
    let gens: Vec<String> = beyond_relations(&st, b.blown.relations(), &ctx.lim)?
        .iter()
        .map(|p| p.to_string())
        .collect();
    let text = format!("{}\n{}strict transform: ({})\n", b.blown, emit::adjoined_text(&b), gens.join(", "));
    Ok(Outcome::new(true, text, json!({"blowup": emit::blowup(&b), "strict_transform": gens})))
}

pub fn check_constancy(ctx: &Ctx, g: &Option<String>, subgroup: &str) -> Result<Outcome> {
    let g = ctx.group(g)?;
    let h = ctx.ideal(&g, subgroup)?;
    let rep = constancy(&g, &h, ctx.depth, &ctx.lim)?;
    let mut text = String::new();
    let mut stages = Vec::new();
    for s in &rep.stages {
        let sub: Vec<String> = s.subgroup.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(text, "stage {}: {} subgroup ({})", s.level, s.group.name(), sub.join(", "));
        text.push_str(&s.report.to_string());
        stages.push(json!({
            "level": s.level,
            "group": emit::group(&s.group),
            "subgroup": sub,
            "report": emit::report(&s.report),
        }));
    }
    let _ = writeln!(text, "constant: {}", yes(rep.constant()));
    Ok(Outcome::new(rep.constant(), text, json!({"stages": stages, "constant": rep.constant()})))
}
