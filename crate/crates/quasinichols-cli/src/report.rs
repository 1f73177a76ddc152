use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::{bail, Result};
use serde_json::{json, Value};

use quasinichols::classify::{enumerate_minimal_nondiagonal, gkdim_verdict, Finiteness, SimpleType, Step, Verdict};
use quasinichols::cohomology::{resolve_coboundary, verify_coboundary, CSeq, Cocycle3, Resolution};
use quasinichols::group::FAGroup;
use quasinichols::nichols::{compositions, Tensor, TensorAlgebra};
use quasinichols::rootsys::{dynkin_from, is_finite_type, Bichar, Caps};
use quasinichols::ydmod::{make_character_simple, Diagonality};
use quasinichols::Cyclo;

use crate::instance::Instance;

pub const DEFAULT_DEGREE_CAP: usize = 6;

pub struct Report {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, exit: 0 }
    }
}

pub fn is_abelian(inst: &Instance) -> Result<Report> {
    let whole = inst.cocycle.is_abelian()?;
    let mut text = format!("cocycle on {}: {}\n", inst.group, if whole { "abelian" } else { "nonabelian" });
    let mut json = json!({ "group": inst.group.factors(), "abelian": whole });
    if let Some(m) = &inst.module {
        let gens = m.support_generators();
        let on_support = inst.cocycle.is_abelian_on(&gens);
        let names: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(
            text,
            "restricted to support <{}>: {}",
            names.join(", "),
            if on_support { "abelian (diagonal type)" } else { "nonabelian (not diagonal)" }
        );
        json["support"] = json!(names);
        json["support_abelian"] = json!(on_support);
        if let Some((i, j, k)) = inst.cocycle.nonabelian_witness(&gens) {
            json["witness"] = json!([i, j, k]);
        }
    }
    Ok(Report::ok(text, json))
}

pub fn resolve(inst: &Instance) -> Result<Report> {
    let hat = inst.group.hat_of();
    let res = resolve_coboundary(&inst.cocycle, &hat.hat, &hat.proj);
    Ok(match res {
        Resolution::Found(j) => {
            let verified = verify_coboundary(&inst.cocycle, &j, &hat.proj);
            let text = format!(
                "pullback to {} is a coboundary: J found with values in mu_{}, pointwise check {}\n",
                hat.hat,
                j.order,
                if verified { "passed" } else { "FAILED" }
            );
            let json = json!({
                "status": "coboundary",
                "hat": hat.hat.factors(),
                "order": j.order,
                "exponents": j.table(),
                "verified": verified,
            });
            Report { text, json, exit: if verified { 0 } else { 1 } }
        }
        Resolution::NotCoboundary { equations, unknowns } => {
            let text = format!(
                "pullback to {} is not a coboundary: {equations} equations in {unknowns} unknowns are inconsistent\n",
                hat.hat
            );
            let json = json!({
                "status": "not_coboundary",
                "hat": hat.hat.factors(),
                "equations": equations,
                "unknowns": unknowns,
            });
            Report::ok(text, json)
        }
    })
}

pub fn dynkin(inst: &Instance) -> Result<Report> {
    let m = inst.module()?;
    Ok(match m.is_diagonal()? {
        Diagonality::Diagonal(d) => {
            let diagram = dynkin_from(&d.q);
            Report::ok(format!("diagonal type\n{diagram}"), json!({ "diagonal": true, "diagram": diagram }))
        }
        Diagonality::Nondiagonal { support, witness } => {
            let names: Vec<String> = support.iter().map(|g| g.to_string()).collect();
            let text = format!(
                "not of diagonal type: Phi_g is not symmetric on support generators {:?} at {:?}\n",
                names, witness
            );
            Report::ok(
                text,
                json!({ "diagonal": false, "support": names, "witness": [witness.0, witness.1, witness.2] }),
            )
        }
    })
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!("finiteness: {}\n", finiteness_str(&v.finiteness));
    for step in &v.certificate {
        let line = match step {
            Step::Resolved { hat_factors, order, .. } => {
                format!("resolved: J on {hat_factors:?} with values in mu_{order}")
            }
            other => serde_json::to_string(other).unwrap_or_default(),
        };
        let _ = writeln!(s, "  {line}");
    }
    if let Some(d) = &v.diagram {
        let _ = write!(s, "diagram:\n{d}");
    }
    if let Some(r) = &v.roots {
        let _ = writeln!(s, "positive roots: {}", r.len());
    }
    s
}

fn finiteness_str(f: &Finiteness) -> String {
    match f {
        Finiteness::FiniteGK => "finite GK-dimension".into(),
        Finiteness::InfiniteGK => "infinite GK-dimension".into(),
        Finiteness::Unresolved(r) => format!("unresolved ({r})"),
    }
}

pub fn verdict(inst: &Instance, caps: Caps) -> Result<Report> {
    let m = inst.module()?;
    let v = gkdim_verdict(m, caps);
    let exit = if matches!(v.finiteness, Finiteness::Unresolved(_)) { 2 } else { 0 };
    Ok(Report { text: verdict_text(&v), json: serde_json::to_value(&v)?, exit })
}

fn combo_text(names: &[String], elems: &[(usize, usize)], coeffs: &[Cyclo]) -> String {
    let mut parts = Vec::new();
    for (c, &(x, y)) in coeffs.iter().zip(elems) {
        if c.is_zero() {
            continue;
        }
        let term = format!("ad_{}({})", names[x], names[y]);
        parts.push(if c.is_one() { term } else { format!("({c}) {term}") });
    }
    format!("{} = 0", parts.join(" + "))
}

pub fn relations(inst: &Instance, degree: usize, degree_cap: usize) -> Result<Report> {
    if degree < 2 {
        bail!("relations start in degree 2");
    }
    if degree > degree_cap {
        bail!("degree {degree} exceeds the degree cap {degree_cap}; raise it with --degree-cap");
    }
    let m = inst.module()?;
    let t = TensorAlgebra::new(m)?;
    let names = inst.basis_names();
    let mut text = String::new();
    if degree == 2 {
        let mut out = Vec::new();
        for a in 0..m.rank() {
            for b in a..m.rank() {
                let (oa, ob) = (m.offset(a), m.offset(b));
                let pairs: Vec<(usize, usize)> = (0..m.components[a].dim)
                    .flat_map(|x| (0..m.components[b].dim).map(move |y| (oa + x, ob + y)))
                    .collect();
                let elems: Vec<Tensor> = pairs
                    .iter()
                    .map(|&(x, y)| t.ad(&Tensor::letter(x), &Tensor::letter(y)))
                    .collect::<Result<_, _>>()?;
                for rel in t.relations(&elems) {
                    let combo = rel
                        .iter()
                        .zip(&elems)
                        .fold(Tensor::zero(), |acc, (c, e)| acc.plus(&e.scaled(c)));
                    let by_symmetrizer = t.is_zero_in_nichols(&combo);
                    let by_primitivity = t.is_primitive(&combo);
                    let holds = by_symmetrizer && by_primitivity;
                    let line = combo_text(&names, &pairs, &rel);
                    let _ = writeln!(
                        text,
                        "{line}    [{}; symmetrizer {}, primitive {}]",
                        if holds { "holds" } else { "DISAGREE" },
                        by_symmetrizer,
                        by_primitivity
                    );
                    out.push(json!({
                        "components": [a, b],
                        "relation": line,
                        "symmetrizer": by_symmetrizer,
                        "primitive": by_primitivity,
                    }));
                }
            }
        }
        if out.is_empty() {
            text.push_str("no degree-2 relations among the braided commutators\n");
        }
        return Ok(Report::ok(text, json!({ "degree": 2, "relations": out })));
    }
    let mut blocks = Vec::new();
    for b in compositions(degree, m.rank()) {
        let tdim = t.block_words(&b).len();
        if tdim == 0 {
            continue;
        }
        let bdim = t.block_rank(&b);
        let _ = writeln!(text, "block {b:?}: dim T = {tdim}, dim B = {bdim}, relations = {}", tdim - bdim);
        blocks.push(json!({ "block": b, "tensor": tdim, "nichols": bdim, "relations": tdim - bdim }));
    }
    Ok(Report::ok(text, json!({ "degree": degree, "blocks": blocks })))
}

fn type_name(t: &SimpleType) -> String {
    match t {
        SimpleType::T1 => "T1".into(),
        SimpleType::T2 => "T2".into(),
        SimpleType::T3 => "T3".into(),
        SimpleType::Other { eigenvalue: Some(z), dim } => format!("other({z}, dim {dim})"),
        SimpleType::Other { eigenvalue: None, dim } => format!("other(dim {dim})"),
    }
}

pub fn enumerate(inst: &Instance, n: u64, caps: Caps) -> Result<Report> {
    let fam = enumerate_minimal_nondiagonal(&inst.group, inst.cocycle.clone(), n, caps)?;
    let mut text = format!("{} standard-form members with {n}-dimensional summands\n", fam.len());
    let mut rows = Vec::new();
    let mut exit = 0;
    for (idx, f) in fam.iter().enumerate() {
        let types: Vec<String> = f.types.iter().map(type_name).collect();
        let params: Vec<String> =
            f.params.iter().map(|p| format!("({}, {}, {})", p.alpha, p.beta, p.gamma)).collect();
        let _ = writeln!(
            text,
            "#{idx} [{}] params {} -> {}{}",
            types.join(", "),
            params.join(" "),
            finiteness_str(&f.verdict.finiteness),
            if f.gauge_uniform { "" } else { " (gauge-dependent!)" }
        );
        if matches!(f.verdict.finiteness, Finiteness::Unresolved(_)) {
            exit = 2;
        }
        rows.push(json!({
            "params": f.params,
            "types": f.types,
            "gauge_uniform": f.gauge_uniform,
            "verdict": f.verdict,
        }));
    }
    Ok(Report { text, json: json!({ "n": n, "members": rows }), exit })
}

fn check(text: &mut String, ok: &mut bool, name: &str, pass: bool) {
    let _ = writeln!(text, "{} {name}", if pass { "ok  " } else { "FAIL" });
    *ok &= pass;
}

/// Quick internal consistency checks, independent of any instance.
pub fn selftest(caps: Caps) -> Result<Report> {
    let mut text = String::new();
    let mut ok = true;
    let g = FAGroup::new(vec![2, 2, 2])?;
    let all_cocycles = CSeq::all(&g).into_iter().all(|c| Cocycle3::normal_form(&g, c).satisfies_cocycle_identity());
    check(&mut text, &mut ok, "normal-form cocycles on Z2^3 satisfy the cocycle identity", all_cocycles);

    let phi = Cocycle3::from_flat(&g, &[0, 0, 0, 0, 0, 0, 1])?;
    let hat = g.hat_of();
    let blocked = matches!(resolve_coboundary(&phi, &hat.hat, &hat.proj), Resolution::NotCoboundary { .. });
    check(&mut text, &mut ok, "nonabelian cocycle on Z2^3 does not trivialize on Z4^3", blocked);

    let z3 = Cyclo::root_of_unity(3, 1);
    let a2 = Bichar::from_diagram(&[z3.clone(), z3.clone()], &[((0, 1), z3.inv()?)]);
    let finite = matches!(is_finite_type(&a2, caps)?, quasinichols::rootsys::RootSystemVerdict::Finite { ref positive_roots, .. } if positive_roots.len() == 3);
    check(&mut text, &mut ok, "A2 at a cube root of unity has three positive roots", finite);

    let i = Cyclo::root_of_unity(4, 1);
    let bad = Bichar::from_diagram(&[i.clone(), i], &[((0, 1), Cyclo::from_int(-1))]);
    check(&mut text, &mut ok, "(i, -1, i) is of infinite type", is_finite_type(&bad, caps)?.is_infinite());

    let z2 = FAGroup::cyclic(2);
    let triv = Arc::new(Cocycle3::trivial(&z2));
    let s = make_character_simple(&z2, triv, &z2.generator(0), &[Cyclo::from_int(-1)])?;
    let line = quasinichols::ydmod::YDModule::direct_sum(vec![s])?;
    let dims = TensorAlgebra::new(&line)?.graded_dims(3);
    check(&mut text, &mut ok, "Nichols algebra of a -1 line is exterior", dims == [1, 1, 0, 0]);

    Ok(Report { text, json: json!({ "passed": ok }), exit: if ok { 0 } else { 1 } })
}
