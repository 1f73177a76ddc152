//! Finiteness verdicts for Nichols algebras in twisted YD categories.

use std::sync::Arc;

use serde::Serialize;

use crate::cohomology::{resolve_coboundary, verify_coboundary, Cochain2, Cocycle3, Resolution};
use crate::error::Error;
use crate::group::{FAGroup, Hat, Subgroup};
use crate::par;
use crate::rootsys::{check_finite_roots, dynkin_from, is_finite_type, Bichar, Caps, DynkinDiagram, RootSystemVerdict};
use crate::scalar::Cyclo;
use crate::ydmod::{make_simple_rank3, rank3_constraint_values, rank3_ratio, Diagonality, SimpleYD, YDModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Finiteness {
    FiniteGK,
    InfiniteGK,
    Unresolved(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SimpleType {
    T1,
    T2,
    T3,
    Other { eigenvalue: Option<Cyclo>, dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    SimpleType { dim: usize, eigenvalue: Option<Cyclo>, tag: SimpleType },
    Nondiagonal { support: Vec<String>, witness: [usize; 3], ratio: Cyclo },
    SupportGroup { factors: Vec<u64>, generators: Vec<String> },
    Resolved { hat_factors: Vec<u64>, order: u64, exponents: Vec<u64> },
    TrivializedCocycle { trivial: bool },
    DiagonalBasis { q: Vec<Vec<Cyclo>> },
    Diagram { diagram: DynkinDiagram },
    RootSystem { verdict: RootSystemVerdict },
}

/// Outcome of a finiteness decision with the trail that justifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub finiteness: Finiteness,
    pub certificate: Vec<Step>,
    pub diagram: Option<DynkinDiagram>,
    pub roots: Option<Vec<Vec<i64>>>,
}

impl Verdict {
    fn unresolved(reason: impl Into<String>, certificate: Vec<Step>) -> Self {
        Verdict { finiteness: Finiteness::Unresolved(reason.into()), certificate, diagram: None, roots: None }
    }
}

fn is_primitive_cube_root(z: &Cyclo) -> bool {
    z.root_order() == Some(3)
}

pub fn simple_type(v: &SimpleYD) -> (SimpleType, Option<Cyclo>) {
    let z = v.self_action();
    let tag = match &z {
        Some(x) if x.is_one() => SimpleType::T1,
        Some(x) if *x == Cyclo::from_int(-1) => SimpleType::T2,
        Some(x) if is_primitive_cube_root(x) && v.dim == 2 => SimpleType::T3,
        _ => SimpleType::Other { eigenvalue: z.clone(), dim: v.dim },
    };
    (tag, z)
}

pub fn simple_verdict(v: &SimpleYD) -> (SimpleType, Verdict) {
    let (tag, z) = simple_type(v);
    let finite = v.dim == 1 || !matches!(tag, SimpleType::Other { .. });
    let finiteness = if finite { Finiteness::FiniteGK } else { Finiteness::InfiniteGK };
    let step = Step::SimpleType { dim: v.dim, eigenvalue: z, tag: tag.clone() };
    (tag, Verdict { finiteness, certificate: vec![step], diagram: None, roots: None })
}

/// Rank three with a nonabelian cocycle on the support group.
pub fn minimal_nondiagonal(v: &YDModule) -> bool {
    v.rank() == 3 && !v.cocycle.is_abelian_on(&v.support_generators())
}

/// A diagonal module realized over the hat of its support group with trivial cocycle.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub support: Subgroup,
    pub hat: Hat,
    pub j: Cochain2,
    pub module: YDModule,
}

pub fn pre_nichols_reduction(v: &YDModule) -> Result<Reduction, Error> {
    if !v.cocycle.is_abelian_on(&v.support_generators()) {
        return Err(Error::NondiagonalInput);
    }
    let support = v.support_subgroup();
    let restricted = v.restrict(&support)?;
    let hat = support.presentation.hat_of();
    let j = match resolve_coboundary(&restricted.cocycle, &hat.hat, &hat.proj) {
        Resolution::Found(j) => j,
        Resolution::NotCoboundary { .. } => {
            return Err(Error::Unsupported("pulled-back cocycle is not a coboundary".into()))
        }
    };
    let module = restricted.change_base(&hat)?.twist(&j.inverse());
    Ok(Reduction { support, hat, j, module })
}

fn diagonal_q(v: &YDModule) -> Result<Bichar, Error> {
    match v.is_diagonal()? {
        Diagonality::Diagonal(d) => Ok(d.q),
        Diagonality::Nondiagonal { .. } => Err(Error::NondiagonalInput),
    }
}

fn nondiagonal_step(v: &YDModule) -> Option<Step> {
    let support = v.support_generators();
    let (i, j, k) = v.cocycle.nonabelian_witness(&support)?;
    let ratio = v.cocycle.phi_g_eval(&support[i], &support[j], &support[k])
        / v.cocycle.phi_g_eval(&support[i], &support[k], &support[j]);
    Some(Step::Nondiagonal { support: support.iter().map(|g| g.to_string()).collect(), witness: [i, j, k], ratio })
}

/// Decides whether B(V) has finite GK-dimension.
pub fn gkdim_verdict(v: &YDModule, caps: Caps) -> Verdict {
    if let Some(step) = nondiagonal_step(v) {
        return Verdict { finiteness: Finiteness::InfiniteGK, certificate: vec![step], diagram: None, roots: None };
    }
    let mut cert = Vec::new();
    let support = v.support_subgroup();
    let hat_order = support.presentation.order() * support.presentation.order();
    if hat_order > caps.hat_order {
        return Verdict::unresolved(format!("covering group of order {hat_order} exceeds cap {}", caps.hat_order), cert);
    }
    let red = match pre_nichols_reduction(v) {
        Ok(r) => r,
        Err(e) => return Verdict::unresolved(e.to_string(), cert),
    };
    cert.push(Step::SupportGroup {
        factors: red.support.presentation.factors().to_vec(),
        generators: red.support.generators.iter().map(|g| g.to_string()).collect(),
    });
    cert.push(Step::Resolved {
        hat_factors: red.hat.hat.factors().to_vec(),
        order: red.j.order,
        exponents: red.j.table().to_vec(),
    });
    let trivial = red.module.cocycle.is_trivial();
    cert.push(Step::TrivializedCocycle { trivial });
    if !trivial {
        return Verdict::unresolved("twisted cocycle is not trivial", cert);
    }
    let q = match diagonal_q(&red.module) {
        Ok(q) => q,
        Err(e) => return Verdict::unresolved(e.to_string(), cert),
    };
    cert.push(Step::DiagonalBasis { q: q.rows().to_vec() });
    let diagram = dynkin_from(&q);
    cert.push(Step::Diagram { diagram: diagram.clone() });
    let rs = match is_finite_type(&q, caps) {
        Ok(r) => r,
        Err(e) => return Verdict::unresolved(e.to_string(), cert),
    };
    cert.push(Step::RootSystem { verdict: rs.clone() });
    let (finiteness, roots) = match &rs {
        RootSystemVerdict::Finite { positive_roots, .. } => (Finiteness::FiniteGK, Some(positive_roots.clone())),
        RootSystemVerdict::Infinite { .. } => (Finiteness::InfiniteGK, None),
        RootSystemVerdict::ExceededCap { cap } => (Finiteness::Unresolved(format!("exceeded cap {cap}")), None),
    };
    Verdict { finiteness, certificate: cert, diagram: Some(diagram), roots }
}

/// Re-checks every step of a certificate against `v`.
pub fn replay(v: &YDModule, verdict: &Verdict, caps: Caps) -> Result<bool, Error> {
    let mut q: Option<Bichar> = None;
    let mut support: Option<Subgroup> = None;
    let mut reduced: Option<YDModule> = None;
    let mut last_rs: Option<&RootSystemVerdict> = None;
    for step in &verdict.certificate {
        let ok = match step {
            Step::SimpleType { .. } => {
                if v.rank() != 1 {
                    return Ok(false);
                }
                let (_, again) = simple_verdict(&v.components[0]);
                again.certificate[0] == *step && again.finiteness == verdict.finiteness
            }
            Step::Nondiagonal { witness, ratio, .. } => {
                let s = v.support_generators();
                let [i, j, k] = *witness;
                if i >= s.len() || j >= s.len() || k >= s.len() {
                    return Ok(false);
                }
                let r = v.cocycle.phi_g_eval(&s[i], &s[j], &s[k]) / v.cocycle.phi_g_eval(&s[i], &s[k], &s[j]);
                r == *ratio && !r.is_one() && verdict.finiteness == Finiteness::InfiniteGK
            }
            Step::SupportGroup { factors, .. } => {
                let sub = v.support_subgroup();
                let ok = sub.presentation.factors() == factors.as_slice();
                support = Some(sub);
                ok
            }
            Step::Resolved { hat_factors, order, exponents } => {
                let Some(sub) = &support else { return Ok(false) };
                let hat = sub.presentation.hat_of();
                if hat.hat.factors() != hat_factors.as_slice() {
                    return Ok(false);
                }
                let n = hat.hat.order() as usize;
                if exponents.len() != n * n {
                    return Ok(false);
                }
                let h = &hat.hat;
                let j = Cochain2::from_fn(h, *order, |a, b| exponents[h.index_of(a) * n + h.index_of(b)] as i64);
                let restricted = v.restrict(sub)?;
                let ok = verify_coboundary(&restricted.cocycle, &j, &hat.proj);
                reduced = Some(restricted.change_base(&hat)?.twist(&j.inverse()));
                ok
            }
            Step::TrivializedCocycle { trivial } => {
                let Some(m) = &reduced else { return Ok(false) };
                m.cocycle.is_trivial() == *trivial
            }
            Step::DiagonalBasis { q: rows } => {
                let Some(m) = &reduced else { return Ok(false) };
                let again = diagonal_q(m)?;
                let ok = again.rows() == rows.as_slice();
                q = Some(again);
                ok
            }
            Step::Diagram { diagram } => match &q {
                Some(b) => dynkin_from(b) == *diagram,
                None => false,
            },
            Step::RootSystem { verdict: rs } => {
                let Some(b) = &q else { return Ok(false) };
                last_rs = Some(rs);
                match rs {
                    RootSystemVerdict::Finite { positive_roots, .. } => check_finite_roots(b, positive_roots)?,
                    _ => is_finite_type(b, caps)? == *rs,
                }
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(match last_rs {
        Some(RootSystemVerdict::Finite { .. }) => verdict.finiteness == Finiteness::FiniteGK,
        Some(RootSystemVerdict::Infinite { .. }) => verdict.finiteness == Finiteness::InfiniteGK,
        Some(RootSystemVerdict::ExceededCap { .. }) => matches!(verdict.finiteness, Finiteness::Unresolved(_)),
        None => !verdict.certificate.is_empty(),
    })
}

/// Role triples for the three summands of a standard-form object: `(i, j, k)`
/// means degree `g_i`, diagonal action of `g_j`, shift action of `g_k`.
pub const STANDARD_ROLES: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 0, 2), (2, 1, 0)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank3Params {
    pub alpha: Cyclo,
    pub beta: Cyclo,
    pub gamma: Cyclo,
}

/// Parameters of the `n`-dimensional simples of degree `g_i`, one per isomorphism class.
pub fn component_parameters(
    g: &FAGroup,
    phi: &Cocycle3,
    roles: (usize, usize, usize),
    n: u64,
) -> Result<Vec<Rank3Params>, Error> {
    if g.rank() != 3 {
        return Err(Error::Unsupported("the family needs a group with three generators".into()));
    }
    let q = rank3_ratio(g, phi, roles);
    let ord = q.root_order().unwrap_or(0);
    if ord != n {
        return Err(Error::EmptyFamily(format!("ratio {q} has order {ord}, not {n}")));
    }
    let m = g.factors();
    let (i, j, k) = roles;
    if m[k] % n != 0 {
        return Err(Error::EmptyFamily(format!("{n} does not divide {}", m[k])));
    }
    let [a, b, c] = rank3_constraint_values(g, phi, roles);
    let alphas = a.nth_roots(m[i]).unwrap_or_default();
    let mut betas: Vec<Cyclo> = Vec::new();
    for beta in b.nth_roots(m[j]).unwrap_or_default() {
        if !betas.iter().any(|x| (&beta / x).pow(n as i64).is_one()) {
            betas.push(beta);
        }
    }
    let gammas = c.nth_roots(m[k] / n).unwrap_or_default();
    let mut out = Vec::new();
    for alpha in &alphas {
        for beta in &betas {
            for gamma in &gammas {
                out.push(Rank3Params { alpha: alpha.clone(), beta: beta.clone(), gamma: gamma.clone() });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub params: Vec<Rank3Params>,
    pub types: Vec<SimpleType>,
    pub module: YDModule,
    pub verdict: Verdict,
    /// Same finiteness after moving every `beta` within its gauge orbit.
    pub gauge_uniform: bool,
}

fn build(g: &FAGroup, phi: &Arc<Cocycle3>, params: &[Rank3Params]) -> Result<YDModule, Error> {
    let parts = STANDARD_ROLES
        .iter()
        .zip(params)
        .map(|(&r, p)| make_simple_rank3(g, phi.clone(), r, p.alpha.clone(), p.beta.clone(), p.gamma.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    YDModule::direct_sum(parts)
}

/// All standard-form minimal nondiagonal objects whose summands have dimension `n`, with verdicts.
pub fn enumerate_minimal_nondiagonal(
    g: &FAGroup,
    phi: Arc<Cocycle3>,
    n: u64,
    caps: Caps,
) -> Result<Vec<FamilyMember>, Error> {
    let per: Vec<Vec<Rank3Params>> = STANDARD_ROLES
        .iter()
        .map(|&r| component_parameters(g, &phi, r, n))
        .collect::<Result<_, _>>()?;
    let mut combos: Vec<Vec<Rank3Params>> = vec![vec![]];
    for opts in &per {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                opts.iter().map(move |p| {
                    let mut c = c.clone();
                    c.push(p.clone());
                    c
                })
            })
            .collect();
    }
    let qs: Vec<Cyclo> = STANDARD_ROLES.iter().map(|&r| rank3_ratio(g, &phi, r)).collect();
    let results = par::map(&combos, |params| -> Result<FamilyMember, Error> {
        let module = build(g, &phi, params)?;
        let verdict = gkdim_verdict(&module, caps);
        let shifted: Vec<Rank3Params> = params
            .iter()
            .zip(&qs)
            .map(|(p, q)| Rank3Params { beta: &p.beta * q, ..p.clone() })
            .collect();
        let other = gkdim_verdict(&build(g, &phi, &shifted)?, caps);
        let types = module.components.iter().map(|c| simple_type(c).0).collect();
        Ok(FamilyMember {
            params: params.clone(),
            types,
            gauge_uniform: other.finiteness == verdict.finiteness,
            module,
            verdict,
        })
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ydmod::make_character_simple;

    fn cube_phi() -> (FAGroup, Arc<Cocycle3>) {
        let g = FAGroup::new(vec![2, 2, 2]).unwrap();
        let phi = Arc::new(Cocycle3::from_flat(&g, &[0, 0, 0, 0, 0, 0, 1]).unwrap());
        (g, phi)
    }

    fn m1() -> Cyclo {
        Cyclo::from_int(-1)
    }

    #[test]
    fn simple_types() {
        let z4 = FAGroup::cyclic(4);
        let triv = Arc::new(Cocycle3::trivial(&z4));
        let s = make_character_simple(&z4, triv, &z4.generator(0), &[m1()]).unwrap();
        let (t, v) = simple_verdict(&s);
        assert_eq!(t, SimpleType::T2);
        assert_eq!(v.finiteness, Finiteness::FiniteGK);
        let (g, phi) = cube_phi();
        let s = make_simple_rank3(&g, phi, (0, 1, 2), Cyclo::one(), Cyclo::one(), Cyclo::one()).unwrap();
        assert_eq!(simple_verdict(&s).0, SimpleType::T1);
    }

    #[test]
    fn nondiagonal_short_circuit() {
        let (g, phi) = cube_phi();
        let v = build(
            &g,
            &phi,
            &[0, 1, 2].map(|_| Rank3Params { alpha: m1(), beta: Cyclo::one(), gamma: Cyclo::one() }),
        )
        .unwrap();
        assert!(minimal_nondiagonal(&v));
        let verdict = gkdim_verdict(&v, Caps::default());
        assert_eq!(verdict.finiteness, Finiteness::InfiniteGK);
        assert!(matches!(verdict.certificate[0], Step::Nondiagonal { .. }));
        assert!(replay(&v, &verdict, Caps::default()).unwrap());
        assert!(!minimal_nondiagonal(&v.permuted(&[0, 1])));
    }

    #[test]
    fn pair_of_t2_simples() {
        let (g, phi) = cube_phi();
        let p = Rank3Params { alpha: m1(), beta: Cyclo::one(), gamma: Cyclo::one() };
        let v = build(&g, &phi, &[p.clone(), p.clone(), p]).unwrap().permuted(&[0, 1]);
        let red = pre_nichols_reduction(&v).unwrap();
        assert!(red.module.cocycle.is_trivial());
        let verdict = gkdim_verdict(&v, Caps::default());
        assert!(replay(&v, &verdict, Caps::default()).unwrap());
        assert_ne!(verdict.finiteness, Finiteness::Unresolved(String::new()));
    }

    #[test]
    fn trivial_characters_are_symmetric() {
        let z3 = FAGroup::cyclic(3);
        let triv = Arc::new(Cocycle3::trivial(&z3));
        let s = make_character_simple(&z3, triv, &z3.generator(0), &[Cyclo::one()]).unwrap();
        let v = YDModule::direct_sum(vec![s.clone(), s.clone(), s]).unwrap();
        let verdict = gkdim_verdict(&v, Caps::default());
        assert_eq!(verdict.finiteness, Finiteness::FiniteGK);
        assert_eq!(verdict.roots.as_ref().unwrap().len(), 3);
        assert!(replay(&v, &verdict, Caps::default()).unwrap());
    }

    #[test]
    fn family_over_cube() {
        let (g, phi) = cube_phi();
        let fam = enumerate_minimal_nondiagonal(&g, phi, 2, Caps::default()).unwrap();
        assert_eq!(fam.len(), 8);
        assert!(fam.iter().all(|m| m.verdict.finiteness == Finiteness::InfiniteGK && m.gauge_uniform));
        let g = FAGroup::new(vec![2, 2, 2]).unwrap();
        let ab = Arc::new(Cocycle3::from_flat(&g, &[1, 0, 0, 0, 0, 0, 0]).unwrap());
        assert!(matches!(enumerate_minimal_nondiagonal(&g, ab, 2, Caps::default()), Err(Error::EmptyFamily(_))));
    }
}
