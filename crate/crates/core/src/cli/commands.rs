use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{degree_range, load, Cli, Command, Format, Outcome};
use crate::bar::{coder_bracket, delta, enumerate_insertion_terms, ComapForms};
use crate::deform::{
    check_polarization, check_trivial_equivalence, cyclic_check, cyclic_subspace, gauge_act_h, h_bracket, include_cyclic,
    mc_check, tangent_space, HDgla, HElement, Polarization,
};
use crate::dgla::{gauge_exponential, DgLa};
use crate::error::{Error, Result};
use crate::fixture::Fixture;
use crate::oracle::{compose_delta_oracle, iterate_ad};
use crate::random::{random_coder, random_comap, Sampling};
use crate::samples::{dual_numbers, graded_unit};
use crate::scalars::{Field, RingSpec};

fn emit(cli: &Cli, code: i32, text: String, fixture: Option<&Fixture>, report: Value) -> Outcome {
    let stdout = match cli.format {
        Format::Text => text,
        Format::Structured => {
            let mut v = match fixture {
                Some(f) => serde_json::to_value(f.to_raw()).expect("fixture serializes"),
                None => json!({}),
            };
            v.as_object_mut().expect("object").insert("report".into(), report);
            serde_json::to_string_pretty(&v).expect("serializes") + "\n"
        }
    };
    Outcome { code, stdout }
}

/// The structure, extended to the ring of `x` when it has one.
fn polarization_for(fx: &Fixture, x: &HElement) -> Result<Polarization> {
    let p = fx.polarization()?;
    Ok(if *x.frame().ring != *p.frame().ring { p.extend(&x.frame().ring) } else { p })
}

pub(super) fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { fixture } => {
            let fx = load(cli, fixture)?;
            let r = check_polarization(fx.structure()?, fx.comap.as_ref())?;
            let report = json!({ "ainf": r.is_ainf, "inner": r.is_inner, "summary": r.to_string() });
            Ok(emit(cli, if r.holds() { 0 } else { 1 }, format!("{r}\n"), Some(&fx), report))
        }
        Command::Terms { k, l } => {
            let max = cli.weight.unwrap_or(k + l + 1);
            let terms = enumerate_insertion_terms(*k, *l, max);
            let text: String = terms.iter().map(|t| format!("{t}\n")).collect();
            let report = json!({
                "k": k, "l": l, "count": terms.len(),
                "terms": terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            });
            Ok(emit(cli, 0, text, None, report))
        }
        Command::Bracket { fixture, x, y } => {
            let fx = load(cli, fixture)?;
            let z = h_bracket(fx.element(x)?, fx.element(y)?)?;
            Ok(emit(cli, 0, z.to_string(), Some(&fx), json!({ "result": z.to_string() })))
        }
        Command::Differential { fixture, x } => {
            let fx = load(cli, fixture)?;
            let x = fx.element(x)?;
            let z = HDgla::new(&polarization_for(&fx, x)?)?.differential(x)?;
            Ok(emit(cli, 0, z.to_string(), Some(&fx), json!({ "result": z.to_string() })))
        }
        Command::Mc { fixture } => {
            let fx = load(cli, fixture)?;
            let datum = fx.datum()?;
            let r = mc_check(&datum)?;
            let order = datum.ring.nilpotency_index();
            let text = if r.is_zero() { format!("residual: 0 (order {order})\n") } else { format!("residual: nonzero (order {order})\n{r}") };
            let report = json!({ "residual_zero": r.is_zero(), "order": order, "residual": r.to_string() });
            Ok(emit(cli, if r.is_zero() { 0 } else { 1 }, text, Some(&fx), report))
        }
        Command::Gauge { fixture, output } => gauge(cli, fixture, output.as_deref()),
        Command::Tangent { fixture } => {
            let fx = load(cli, fixture)?;
            let degrees = degree_range(cli.degree.as_deref(), (0, 2))?;
            let t = tangent_space(&fx.polarization()?, &degrees)?;
            let report = json!({
                "weight": t.weight,
                "degrees": t.degrees.iter().map(|d| json!({ "degree": d.degree, "dim": d.dim, "cochains": d.cochains,
                    "representatives": d.representatives.iter().map(|x| x.to_string()).collect::<Vec<_>>() })).collect::<Vec<_>>(),
            });
            Ok(emit(cli, 0, t.to_string(), Some(&fx), report))
        }
        Command::Cyclic { fixture } => cyclic(cli, fixture),
        Command::Selftest { seed } => selftest(cli, *seed),
    }
}

fn gauge(cli: &Cli, path: &std::path::Path, output: Option<&std::path::Path>) -> Result<Outcome> {
    let fx = load(cli, path)?;
    let beta = fx.generator.clone().ok_or_else(|| Error::MissingBlock("generator".into()))?;
    let ring = fx.require_ring()?.clone();
    let p = fx.polarization()?;
    let alpha = fx.perturbation.clone().unwrap_or_else(|| HElement::zero(beta.frame(), 1));
    let mut text = String::new();
    let (gauged, holds, report) = if alpha.is_zero() {
        let (datum, w) = gauge_act_h(&p, &ring, &beta)?;
        let eq = check_trivial_equivalence(&datum, &w)?;
        let lam = w.lambda.components().entries().count();
        let rho = w.rho.entries().count();
        writeln!(text, "witness: λ = e^(-f) with {lam} components; ρ with {rho} components").ok();
        writeln!(text, "{eq}").ok();
        let report = json!({ "witness_holds": eq.holds(), "summary": eq.to_string(), "lambda_components": lam, "rho_components": rho });
        (datum.perturbation, eq.holds(), report)
    } else {
        let g = HDgla::new(&p.extend(&ring))?;
        let gauged = gauge_exponential(&g, &beta, &alpha)?;
        writeln!(text, "gauged by the exponential series; no witness for a nonzero perturbation").ok();
        (gauged, true, json!({ "witness_holds": null }))
    };
    let mut out = fx.clone();
    if !(fx.perturbation.is_none() && gauged.is_zero()) {
        out.perturbation = Some(gauged);
    }
    let mc_zero = match &out.perturbation {
        Some(_) => mc_check(&out.datum()?)?.is_zero(),
        None => true,
    };
    writeln!(text, "residual of gauged pair: {}", if mc_zero { "0" } else { "nonzero" }).ok();
    let code = if holds && mc_zero { 0 } else { 1 };
    match (output, cli.format) {
        (Some(o), _) => {
            std::fs::write(o, out.to_json() + "\n").map_err(|e| Error::Structural(format!("cannot write {}: {e}", o.display())))?;
        }
        (None, Format::Text) => text.push_str(&(out.to_json() + "\n")),
        (None, Format::Structured) => {}
    }
    Ok(emit(cli, code, text, Some(&out), report))
}

fn cyclic(cli: &Cli, path: &std::path::Path) -> Result<Outcome> {
    let fx = load(cli, path)?;
    let p = fx.polarization()?;
    let g = HDgla::new(&p)?;
    let mut text = String::new();
    let d_cyclic = cyclic_check(&p.d, &p.i)?;
    writeln!(text, "structure cyclic: {}", if d_cyclic { "yes" } else { "no" }).ok();
    let mut ok = d_cyclic;
    let mut rows = Vec::new();
    for n in degree_range(cli.degree.as_deref(), (0, 1))? {
        let basis = cyclic_subspace(&p.i, -n)?;
        let mut chain = true;
        for f in &basis {
            let dx = g.differential(&include_cyclic(f, &p.i)?)?;
            chain &= dx.i.is_zero() && dx.f == coder_bracket(&p.d, f)?;
        }
        ok &= chain;
        writeln!(text, "h^{n}: cyclic dim {}; inclusion chain map: {}", basis.len(), if chain { "ok" } else { "fails" }).ok();
        rows.push(json!({ "degree": n, "dim": basis.len(), "chain_map": chain }));
    }
    Ok(emit(cli, if ok { 0 } else { 1 }, text, Some(&fx), json!({ "structure_cyclic": d_cyclic, "degrees": rows })))
}

fn selftest(cli: &Cli, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = Field::Rationals;
    let s = Sampling::default();
    let mut compared = 0usize;
    let mut delta_ok = true;
    for p in [dual_numbers(q, 4), graded_unit(q, 4)] {
        for n in 0..10 {
            let f = random_coder(p.frame(), -1 + (n % 3) as i64, &s, &mut rng);
            let i = random_comap(p.frame(), (n % 2) as i64, &s, &mut rng);
            let a = delta(&f, &i)?;
            delta_ok &= a == compose_delta_oracle(&f, &i)?;
            compared += ComapForms::slots(p.frame().weight).len();
        }
    }
    let ring = RingSpec::t_adic(q, 3, 0)?;
    let nil = Sampling { nilpotent: true, ..Sampling::default() };
    let mut ad_ok = true;
    for p in [dual_numbers(q, 3), graded_unit(q, 3)] {
        let frame = p.frame().with_ring(&ring);
        for _ in 0..3 {
            let beta = HElement::new(random_coder(&frame, 0, &nil, &mut rng), random_comap(&frame, 1, &nil, &mut rng), 0)?;
            let (datum, _) = gauge_act_h(&p, &ring, &beta)?;
            ad_ok &= datum.deformed()?.as_element() == iterate_ad(&p.extend(&ring).as_element(), &beta, 16)?;
        }
    }
    let word = |b: bool| if b { "agree" } else { "disagree" };
    let text = format!("delta oracle: {} ({compared} components); ad oracle: {}\n", word(delta_ok), word(ad_ok));
    let report = json!({ "delta_agree": delta_ok, "components": compared, "ad_agree": ad_ok });
    Ok(emit(cli, if delta_ok && ad_ok { 0 } else { 1 }, text, None, report))
}
