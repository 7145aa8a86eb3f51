//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//! The worked examples go through the command-line front end on the paper-examples
//! corpus; expected values come either from the paper or from oracles computed here.

mod suites;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::Value;

use neron::blowup::{neron_blowup, BlowupOptions};
use neron::cli::{run, PresentationFile};
use neron::groebner::Limits;
use neron::hopf::groups::{gm_level, named_ga};
use neron::hopf::HopfPresentation;
use neron::reps::identity_blowup_rep;
use neron::ring::Poly;

type Check = Result<(), String>;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("paper-examples")
}

/// Runs `neron <cmd> <corpus file> <args...> --format json` and returns the exit code and
/// the parsed report.
fn cli(cmdline: &str) -> Result<(i32, Value), String> {
    let mut args = vec!["neron".to_string()];
    for (i, a) in cmdline.split_whitespace().enumerate() {
        args.push(if i == 1 { corpus().join(a).display().to_string() } else { a.to_string() });
    }
    args.extend(["--format".into(), "json".into()]);
    let (code, out) = run(args);
    let v: Value = serde_json::from_str(&out).map_err(|e| format!("{cmdline}: bad json: {e}"))?;
    Ok((code, v))
}

/// The `result` object of a run that must exit 0.
fn ok_result(cmdline: &str) -> Result<Value, String> {
    let (code, v) = cli(cmdline)?;
    if code != 0 {
        return Err(format!("{cmdline}: exit {code}: {v}"));
    }
    Ok(v["result"].clone())
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq(got: &Value, want: Value, what: &str) -> Check {
    expect(*got == want, || format!("{what}: got {got}, expected {want}"))
}

fn lib<T>(r: neron::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Parses the printed presentation of a group back into a presentation.
fn group_of(p: &Value) -> Result<Arc<HopfPresentation>, String> {
    let text = p["text"].as_str().ok_or("presentation without text")?;
    let file = lib(PresentationFile::parse(text, &Limits::default()))?;
    let name = p["name"].as_str().ok_or("presentation without name")?;
    Ok(lib(file.group(name))?.clone())
}

fn same_group(got: &Arc<HopfPresentation>, want: &HopfPresentation, renaming: &[(&str, &str)]) -> Check {
    let rep = lib(got.compare(want, renaming, &Limits::default()))?;
    expect(rep.passed(), || format!("{} differs from {}:\n{rep}", got.name(), want.name()))
}

fn pi_power(n: u32) -> String {
    if n == 1 {
        "pi".into()
    } else {
        format!("pi^{n}")
    }
}

/// Reductions mod pi^(m+1) reported by a blowup command, as (level, trivial) pairs.
fn reductions(result: &Value) -> Vec<(u64, bool)> {
    result["reductions"]
        .as_array()
        .map(|rs| rs.iter().map(|r| (r["level"].as_u64().unwrap(), r["trivial"].as_bool().unwrap())).collect())
        .unwrap_or_default()
}

/// Automatic truncations of G_a: R[x_n] with x0 = pi^n x_n, membership of x0/pi^m, and
/// trivial reductions below the level.
fn additive_chain() -> Check {
    for n in 1..=4u32 {
        let r = ok_result(&format!("auto-trunc ga.grp --level {n}"))?;
        let xn = format!("x{n}");
        eq(&r["blown"]["vars"], serde_json::json!([xn]), "variables")?;
        eq(&r["blown"]["relations"], serde_json::json!([]), "relations")?;
        eq(&r["projection"]["pullback"]["x0"], format!("{}*{xn}", pi_power(n)).into(), "x0")?;
        same_group(&group_of(&r["blown"])?, &named_ga("Ga", &xn), &[])?;
        let red = reductions(&r);
        let want: Vec<(u64, bool)> = (0..=u64::from(n)).map(|m| (m, m < u64::from(n))).collect();
        expect(red == want, || format!("level {n}: reductions {red:?}, expected {want:?}"))?;
    }
    for m in 1..=8 {
        let r = ok_result(&format!("auto-member ga.grp --numerator x0 --power {m}"))?;
        eq(&r["member"], true.into(), &format!("x0/pi^{m}"))?;
    }
    let r = ok_result("auto-member ga.grp --numerator x0+1 --power 1")?;
    eq(&r["member"], false.into(), "(x0 + 1)/pi")
}

/// Automatic truncations of G_m against the level-n groups of the paper.
fn multiplicative_chain() -> Check {
    for n in 1..=3u32 {
        let r = ok_result(&format!("auto-trunc gm.grp --level {n}"))?;
        let (u, v) = (format!("u{n}"), format!("v{n}"));
        let (x, y) = (format!("x{n}"), format!("y{n}"));
        eq(&r["blown"]["vars"], serde_json::json!([u, v]), "variables")?;
        let got = group_of(&r["blown"])?;
        same_group(&got, &gm_level(n), &[(&u, &x), (&v, &y)])?;
        let p = pi_power(n);
        for w in [&u, &v] {
            let want = format!("{p}*{w}'*{w}'' + {w}' + {w}''");
            eq(&r["blown"]["comul"][w.as_str()], want.into(), "comultiplication")?;
        }
    }
    Ok(())
}

/// Blowing up G_m at the identity through the representation [u].
fn identity_blowup_of_gm() -> Check {
    let r = ok_result("rep-blowup-identity gm_rep.grp")?;
    eq(&r["fractions"], "[[u, (u - 1)/pi], [0, 1]]".into(), "blown representation")?;
    let f = ok_result("rep-faithful gm_rep.grp --after-identity-blowup")?;
    eq(&f["faithfulness"]["faithful"], true.into(), "faithfulness")?;

    let blown = r["blowup"]["blown"]["text"].as_str().ok_or("no blown text")?;
    let dir = std::env::temp_dir().join(format!("neron-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("blown.grp");
    std::fs::write(&path, format!("{blown}\n")).map_err(|e| e.to_string())?;
    // an absolute path replaces the corpus directory
    let fibre = cli(&format!("fibre {}", path.display()));
    let _ = std::fs::remove_dir_all(&dir);
    let (code, v) = fibre?;
    expect(code == 0, || format!("fibre: exit {code}"))?;
    let k = &v["result"]["normalized"];
    eq(&k["base"], "k".into(), "fibre base")?;
    eq(&k["relations"], serde_json::json!([]), "fibre relations")?;
    let vars = k["vars"].as_array().ok_or("fibre vars")?;
    expect(vars.len() == 1, || format!("fibre has variables {vars:?}"))?;
    let w = vars[0].as_str().unwrap();
    eq(&k["comul"][w], format!("{w}' + {w}''").into(), "fibre comultiplication")
}

fn fibre_form<'a>(r: &'a Value, key: &str) -> &'a Value {
    &r[key]["normalized"]
}

/// The triptych of the blowup morphism G1 -> G_m over k.
fn triptych_of_blowup() -> Check {
    let r = ok_result("triptych gm_blowup.mor")?;
    let psi1 = fibre_form(&r, "psi_prime_k");
    let vars = psi1["vars"].as_array().ok_or("Psi' vars")?;
    expect(vars.len() == 1, || format!("Psi'_k has variables {vars:?}"))?;
    let w = vars[0].as_str().unwrap();
    eq(&psi1["relations"], serde_json::json!([]), "Psi'_k relations")?;
    eq(&psi1["comul"][w], format!("{w}' + {w}''").into(), "Psi'_k comultiplication")?;
    eq(&psi1["antipode"][w], format!("-{w}").into(), "Psi'_k antipode")?;
    let im = fibre_form(&r, "im_rho_k");
    eq(&im["vars"], serde_json::json!([]), "Im(rho_k) variables")?;
    let psi = fibre_form(&r, "psi_k");
    eq(&psi["vars"], serde_json::json!(["u", "v"]), "Psi_k variables")?;
    eq(&psi["relations"], serde_json::json!(["u*v - 1"]), "Psi_k relations")?;
    eq(&psi["comul"], serde_json::json!({"u": "u'*u''", "v": "v'*v''"}), "Psi_k comultiplication")?;
    for f in [psi1, im, psi] {
        eq(&f["base"], "k".into(), "triptych base")?;
    }
    Ok(())
}

/// The standard sequence of G_a,3 -> G_a retraces the automatic truncations.
fn standard_sequence_of_truncation() -> Check {
    let r = ok_result("standard-seq ga_trunc3.mor --depth 3")?;
    let stages = r["stages"].as_array().ok_or("no stages")?;
    expect(stages.len() >= 3, || format!("{} stages", stages.len()))?;
    for (i, s) in stages.iter().enumerate() {
        let xi = format!("x{i}");
        if i < 3 {
            eq(&s["centre"], serde_json::json!(["pi", xi]), &format!("centre {i}"))?;
        }
        same_group(&group_of(&s["group"])?, &named_ga("Ga", &xi), &[])?;
        if i > 0 {
            let chain = ok_result(&format!("auto-trunc ga.grp --level {i}"))?;
            same_group(&group_of(&s["group"])?, &*group_of(&chain["blown"])?, &[])?;
        }
    }
    Ok(())
}

/// Partial blowups of G_m along the identity are trivial mod pi^(m+1) exactly for m <= n.
fn partial_blowups() -> Check {
    for n in 0..=2u64 {
        let r = ok_result(&format!("partial-blowup gm.grp --subgroup u-1 --level {n}"))?;
        let red = reductions(&r);
        let want: Vec<(u64, bool)> = (0..=n + 1).map(|m| (m, m <= n)).collect();
        expect(red == want, || format!("level {n}: reductions {red:?}, expected {want:?}"))?;
    }
    Ok(())
}

/// Constant centres along the sequences of strict transforms.
fn constancy() -> Check {
    for (cmd, depth) in [("check-constancy gm.grp --subgroup u-1 --depth 3", 3), ("check-constancy gm_ga.grp --subgroup x --depth 2", 2)] {
        let r = ok_result(cmd)?;
        eq(&r["constant"], true.into(), cmd)?;
        let stages = r["stages"].as_array().ok_or("no stages")?;
        expect(stages.len() == depth + 1, || format!("{cmd}: {} stages", stages.len()))?;
    }
    Ok(())
}

/// sum_{nu <= n} (pi x)^nu / nu! as the solver prints it.
fn truncated_exponential(n: u32) -> String {
    let mut terms = vec!["1".to_string()];
    let mut fact: u64 = 1;
    for nu in 1..=n {
        fact *= u64::from(nu);
        terms.push(match nu {
            1 => "pi*x".into(),
            _ => format!("1/{fact}*pi^{nu}*x^{nu}"),
        });
    }
    format!("[[{}]]", terms.join(" + "))
}

/// Gauge solutions for de = -pi e and the logarithmic obstruction for de = -(pi/x) e.
fn differential_diagnostics() -> Check {
    let r = ok_result("dgal-diagnose exp.conn --level 5")?;
    let levels = r["levels"].as_array().ok_or("no levels")?;
    expect(levels.len() == 6, || format!("{} levels", levels.len()))?;
    for (n, l) in levels.iter().enumerate() {
        eq(&l["trivial"], true.into(), &format!("exp level {n}"))?;
        eq(&l["gauge"], truncated_exponential(n as u32).into(), &format!("exp gauge {n}"))?;
    }
    let r = ok_result("dgal-diagnose log.conn --level 5")?;
    let levels = r["levels"].as_array().ok_or("no levels")?;
    expect(levels.len() == 6, || format!("{} levels", levels.len()))?;
    eq(&levels[0]["trivial"], true.into(), "log level 0")?;
    eq(&levels[0]["gauge"], "[[1]]".into(), "log gauge 0")?;
    for (n, l) in levels.iter().enumerate().skip(1) {
        eq(&l["trivial"], false.into(), &format!("log level {n}"))?;
    }
    let cert = levels[1]["obstruction"].as_str().ok_or("no obstruction at level 1")?;
    expect(cert.contains("pi^1 x^-1"), || format!("level 1 certificate: {cert}"))?;
    eq(&r["verdict"], serde_json::json!({"kind": "IdentityBlowups", "count": 1}), "log verdict")
}

/// The four randomized suites at their full sizes.
fn property_suites() -> Check {
    let runs = [
        ("blowups", suites::groups::blowups(200), 200),
        ("groebner oracle", suites::algebra::groebner_oracle(500), 500),
        ("ideal operations", suites::algebra::ideal_operations(200), 200),
        ("lifts", suites::groups::lifts(50), 50),
    ];
    for (name, got, want) in runs {
        match got {
            Ok(n) if n == want => {}
            Ok(n) => return Err(format!("{name}: ran {n} of {want} cases")),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(())
}

type Matrix = Vec<Vec<Poly>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let ring = a[0][0].ring().clone();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    let mut s = Poly::zero(&ring);
                    for (k, row) in b.iter().enumerate() {
                        s = &s + &(&a[i][k] * &row[j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Block matrix [[p, q], [r, s]] with scalar blocks times the r x r identity.
fn blocks(ring: &Arc<neron::ring::Ring>, r: usize, f: impl Fn(usize, usize) -> Poly) -> Matrix {
    (0..2 * r)
        .map(|i| {
            (0..2 * r)
                .map(|j| if i % r == j % r { f(i / r, j / r) } else { Poly::zero(ring) })
                .collect()
        })
        .collect()
}

/// pi * beta^-1 (V + 1) beta computed here with beta = [[pi, 1], [0, 1]], against pi times
/// the blown representation, modulo the relations of the blown group.
fn conjugation(file: &str) -> Check {
    let lim = Limits::default();
    let text = std::fs::read_to_string(corpus().join(file)).map_err(|e| e.to_string())?;
    let parsed = lib(PresentationFile::parse(&text, &lim))?;
    let v = lib(parsed.rep("V"))?;
    let g = v.group();
    let centre = lib(g.augmentation_ideal().extend(&[Poly::pi(g.ring())]))?;
    let b = lib(neron_blowup(g, &centre, &BlowupOptions::default(), &lim))?;
    let out = lib(identity_blowup_rep(v, &b, &lim))?;
    let ring = b.blown.ring().clone();
    let r = v.size();
    let pi = Poly::pi(&ring);
    let one = Poly::one(&ring);
    let zero = Poly::zero(&ring);
    let pi_beta_inv = blocks(&ring, r, |i, j| match (i, j) {
        (0, 0) => one.clone(),
        (0, 1) => -&one,
        (1, 1) => pi.clone(),
        _ => zero.clone(),
    });
    let beta = blocks(&ring, r, |i, j| match (i, j) {
        (0, 0) => pi.clone(),
        (1, 0) => zero.clone(),
        _ => one.clone(),
    });
    let mut sum: Matrix = vec![vec![zero.clone(); 2 * r]; 2 * r];
    for i in 0..2 * r {
        for j in 0..2 * r {
            sum[i][j] = if i < r && j < r {
                lib(b.projection.pull(v.entry(i, j)))?
            } else if i == j {
                one.clone()
            } else {
                zero.clone()
            };
        }
    }
    let want = mat_mul(&mat_mul(&pi_beta_inv, &sum), &beta);
    for i in 0..2 * r {
        for j in 0..2 * r {
            let got = &pi * &lib(out.entry(i, j).to_ring(&ring))?;
            let d = lib(b.blown.normal_form(&(&got - &want[i][j]), &lim))?;
            expect(d.is_zero(), || format!("{file}: entry ({}, {}) differs by {d}", i + 1, j + 1))?;
        }
    }
    let cli_report = ok_result(&format!("rep-blowup-identity {file}"))?;
    let checks = cli_report["conjugation"]["checks"].as_array().ok_or("no conjugation checks")?;
    expect(checks.len() == 4 * r * r && checks.iter().all(|c| c["passed"] == true), || {
        format!("{file}: conjugation report {checks:?}")
    })
}

fn conjugation_identity() -> Check {
    conjugation("gm_rep.grp")?;
    conjugation("ga_rep.grp")
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("additive automatic truncations", additive_chain),
        ("multiplicative automatic truncations", multiplicative_chain),
        ("identity blowup of G_m through [u]", identity_blowup_of_gm),
        ("triptych of the G_m blowup", triptych_of_blowup),
        ("standard sequence of G_a,3 -> G_a", standard_sequence_of_truncation),
        ("partial blowups of G_m", partial_blowups),
        ("constancy of centres", constancy),
        ("differential Galois diagnostics", differential_diagnostics),
        ("property suites", property_suites),
        ("conjugation identity", conjugation_identity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {}: {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}: {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
