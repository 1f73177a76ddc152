//! Yetter-Drinfeld modules over `(kG, Phi)` for abelian `G`.
//!
//! A homogeneous component of degree `g` is a projective representation
//! for the 2-cocycle `Phi_g`; every constructor here produces monomial
//! action matrices, and the full action table over all of `G` is stored.

use std::sync::Arc;

use crate::cohomology::{Cochain2, Cocycle3};
use crate::error::Error;
use crate::group::{FAGroup, GroupElement, Hat, Hom, Subgroup};
use crate::linalg;
use crate::rootsys::Bichar;
use crate::scalar::Cyclo;

/// Matrix sending `e_j` to `coef[j] * e_{perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub coef: Vec<Cyclo>,
}

impl Monomial {
    pub fn identity(d: usize) -> Self {
        Monomial::scalar(d, Cyclo::one())
    }

    pub fn scalar(d: usize, c: Cyclo) -> Self {
        Monomial { perm: (0..d).collect(), coef: vec![c; d] }
    }

    pub fn diag(c: Vec<Cyclo>) -> Self {
        Monomial { perm: (0..c.len()).collect(), coef: c }
    }

    /// `e_l -> e_{l+1}` and `e_{d-1} -> corner * e_0`.
    pub fn shift(d: usize, corner: Cyclo) -> Self {
        let mut coef = vec![Cyclo::one(); d];
        coef[d - 1] = corner;
        Monomial { perm: (0..d).map(|l| (l + 1) % d).collect(), coef }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let coef = other.coef.iter().zip(&other.perm).map(|(c, &p)| c * &self.coef[p]).collect();
        Monomial { perm, coef }
    }

    pub fn scale(&self, c: &Cyclo) -> Monomial {
        Monomial { perm: self.perm.clone(), coef: self.coef.iter().map(|x| x * c).collect() }
    }

    pub fn apply_basis(&self, j: usize) -> (usize, &Cyclo) {
        (self.perm[j], &self.coef[j])
    }

    pub fn apply(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        let mut out = vec![Cyclo::zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[self.perm[j]] = &out[self.perm[j]] + &(x * &self.coef[j]);
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn as_scalar(&self) -> Option<Cyclo> {
        if self.is_diagonal() && self.coef.iter().all(|c| *c == self.coef[0]) {
            self.coef.first().cloned()
        } else {
            None
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Cyclo>> {
        let d = self.dim();
        let mut m = vec![vec![Cyclo::zero(); d]; d];
        for j in 0..d {
            m[self.perm[j]][j] = self.coef[j].clone();
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleKind {
    Character,
    /// Three-generator simple with roles `(i, j, k)` and parameters `alpha, beta, gamma`.
    Rank3 { roles: (usize, usize, usize), alpha: Cyclo, beta: Cyclo, gamma: Cyclo },
    Derived,
}

/// A simple YD module: a degree and a projective action of every group element.
#[derive(Clone, Debug)]
pub struct SimpleYD {
    pub group: FAGroup,
    pub cocycle: Arc<Cocycle3>,
    pub degree: GroupElement,
    pub dim: usize,
    pub kind: SimpleKind,
    action: Vec<Monomial>,
}

impl SimpleYD {
    /// Extends generator matrices to the whole group through the projective
    /// relation and checks the relation on all pairs.
    pub fn from_generators(
        group: &FAGroup,
        cocycle: Arc<Cocycle3>,
        degree: GroupElement,
        gens: Vec<Monomial>,
        kind: SimpleKind,
    ) -> Result<Self, Error> {
        group.check(&degree)?;
        if gens.len() != group.rank() {
            return Err(Error::NotProjective(format!("need {} generator matrices", group.rank())));
        }
        let dim = gens.first().map_or(1, |m| m.dim());
        if gens.iter().any(|m| m.dim() != dim) {
            return Err(Error::NotProjective("generator matrices differ in size".into()));
        }
        let els = group.elements();
        let mut action: Vec<Monomial> = Vec::with_capacity(els.len());
        for x in &els {
            let Some(l) = x.0.iter().position(|&e| e > 0) else {
                action.push(Monomial::identity(dim));
                continue;
            };
            let gl = group.generator(l);
            let rest = group.mul(x, &group.inv(&gl));
            let prev = &action[group.index_of(&rest)];
            // rho(g_l) rho(rest) = psi(g_l, rest) rho(x)
            let psi = cocycle.phi_g_eval(&degree, &gl, &rest);
            let m = gens[l].compose(prev).scale(&psi.inv()?);
            action.push(m);
        }
        let s = SimpleYD { group: group.clone(), cocycle, degree, dim, kind, action };
        s.check_projective()?;
        Ok(s)
    }

    fn from_table(
        group: &FAGroup,
        cocycle: Arc<Cocycle3>,
        degree: GroupElement,
        action: Vec<Monomial>,
    ) -> SimpleYD {
        let dim = action[0].dim();
        SimpleYD { group: group.clone(), cocycle, degree, dim, kind: SimpleKind::Derived, action }
    }

    /// Checks `rho(e) rho(f) = Phi_g(e,f) rho(ef)` for all pairs.
    pub fn check_projective(&self) -> Result<(), Error> {
        let els = self.group.elements();
        for e in &els {
            for f in &els {
                let lhs = self.rho(e).compose(self.rho(f));
                let psi = self.cocycle.phi_g_eval(&self.degree, e, f);
                let rhs = self.rho(&self.group.mul(e, f)).scale(&psi);
                if lhs != rhs {
                    return Err(Error::NotProjective(format!("relation fails at ({e}, {f})")));
                }
            }
        }
        Ok(())
    }

    pub fn rho(&self, g: &GroupElement) -> &Monomial {
        &self.action[self.group.index_of(g)]
    }

    pub fn rho_idx(&self, gi: usize) -> &Monomial {
        &self.action[gi]
    }

    pub fn generator_matrices(&self) -> Vec<Monomial> {
        self.group.generators().iter().map(|g| self.rho(g).clone()).collect()
    }

    /// The scalar by which the degree acts, when it acts by a scalar.
    pub fn self_action(&self) -> Option<Cyclo> {
        self.rho(&self.degree).as_scalar()
    }

    /// Irreducibility via a one-dimensional commutant.
    pub fn is_simple(&self) -> bool {
        let d = self.dim;
        let mut rows = Vec::new();
        for a in self.generator_matrices() {
            let a = a.to_dense();
            // X A - A X = 0 in the unknowns X[r][c] -> index r*d + c
            for r in 0..d {
                for c in 0..d {
                    let mut row = vec![Cyclo::zero(); d * d];
                    for k in 0..d {
                        row[r * d + k] = &row[r * d + k] + &a[k][c];
                        row[k * d + c] = &row[k * d + c] - &a[r][k];
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return d == 1;
        }
        d * d - linalg::rank(rows) == 1
    }
}

/// One-dimensional simple with the generator `l` acting by `chi[l]`.
pub fn make_character_simple(
    group: &FAGroup,
    cocycle: Arc<Cocycle3>,
    g: &GroupElement,
    chi: &[Cyclo],
) -> Result<SimpleYD, Error> {
    let gens: Vec<Monomial> = chi.iter().map(|c| Monomial::scalar(1, c.clone())).collect();
    if chi.iter().any(|c| c.is_zero()) {
        return Err(Error::NotProjectiveCharacter("zero character value".into()));
    }
    SimpleYD::from_generators(group, cocycle, g.clone(), gens, SimpleKind::Character).map_err(|e| match e {
        Error::NotProjective(s) => Error::NotProjectiveCharacter(s),
        other => other,
    })
}

/// `Phi_{g_i}(g_j, g_k) / Phi_{g_i}(g_k, g_j)` for standard generators.
pub fn rank3_ratio(group: &FAGroup, cocycle: &Cocycle3, roles: (usize, usize, usize)) -> Cyclo {
    let (gi, gj, gk) = (group.generator(roles.0), group.generator(roles.1), group.generator(roles.2));
    cocycle.phi_g_eval(&gi, &gj, &gk) / cocycle.phi_g_eval(&gi, &gk, &gj)
}

/// Right-hand sides `(A, B, C)` of the parameter equations
/// `alpha^{m_i} = A`, `beta^{m_j} = B`, `gamma^{m_k/n} = C`.
pub fn rank3_constraint_values(group: &FAGroup, cocycle: &Cocycle3, roles: (usize, usize, usize)) -> [Cyclo; 3] {
    let gi = group.generator(roles.0);
    let prod = |l: usize| -> Cyclo {
        let gl = group.generator(l);
        let m = group.factors()[l];
        let mut acc = Cyclo::one();
        let mut p = gl.clone();
        for _ in 1..m {
            acc = &acc * &cocycle.phi_g_eval(&gi, &gl, &p);
            p = group.mul(&p, &gl);
        }
        acc
    };
    [prod(roles.0), prod(roles.1), prod(roles.2)]
}

/// The `n`-dimensional simple of degree `g_i` with `g_i -> alpha I`,
/// `g_j -> diag(beta q^(l-1))`, `g_k -> shift with corner gamma`.
pub fn make_simple_rank3(
    group: &FAGroup,
    cocycle: Arc<Cocycle3>,
    roles: (usize, usize, usize),
    alpha: Cyclo,
    beta: Cyclo,
    gamma: Cyclo,
) -> Result<SimpleYD, Error> {
    if group.rank() != 3 {
        return Err(Error::Unsupported("rank-3 simples need a group with three generators".into()));
    }
    let (i, j, k) = roles;
    if i >= 3 || j >= 3 || k >= 3 || i == j || j == k || i == k {
        return Err(Error::ConstraintViolated(format!("roles {roles:?} are not a permutation")));
    }
    let q = rank3_ratio(group, &cocycle, roles);
    let n = q.root_order().expect("cocycle values are roots of unity");
    let m = group.factors();
    if m[k] % n != 0 {
        return Err(Error::ConstraintViolated("gamma^(m/n) constraint: n does not divide m_k".into()));
    }
    let [a, b, c] = rank3_constraint_values(group, &cocycle, roles);
    if alpha.pow(m[i] as i64) != a {
        return Err(Error::ConstraintViolated(format!("alpha^m constraint: alpha^{} must equal {a}", m[i])));
    }
    if beta.pow(m[j] as i64) != b {
        return Err(Error::ConstraintViolated(format!("beta^m constraint: beta^{} must equal {b}", m[j])));
    }
    if gamma.pow((m[k] / n) as i64) != c {
        return Err(Error::ConstraintViolated(format!(
            "gamma^(m/n) constraint: gamma^{} must equal {c}",
            m[k] / n
        )));
    }
    let d = n as usize;
    let mut gens = vec![Monomial::identity(d); 3];
    gens[i] = Monomial::scalar(d, alpha.clone());
    let mut diag = Vec::with_capacity(d);
    let mut cur = beta.clone();
    for _ in 0..d {
        diag.push(cur.clone());
        cur = &cur * &q;
    }
    gens[j] = Monomial::diag(diag);
    gens[k] = Monomial::shift(d, gamma.clone());
    let degree = group.generator(i);
    let kind = SimpleKind::Rank3 { roles, alpha, beta, gamma };
    SimpleYD::from_generators(group, cocycle, degree, gens, kind)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLabel {
    pub comp: usize,
    pub inner: usize,
    pub degree: GroupElement,
}

/// Direct sum of simple YD modules in one category.
#[derive(Clone, Debug)]
pub struct YDModule {
    pub group: FAGroup,
    pub cocycle: Arc<Cocycle3>,
    pub components: Vec<SimpleYD>,
    offsets: Vec<usize>,
}

/// Simultaneous eigenbasis for the degree operators, with the resulting braiding constants.
#[derive(Clone, Debug)]
pub struct DiagonalBasis {
    /// Coordinates of each new basis vector in the standard basis.
    pub vectors: Vec<Vec<Cyclo>>,
    pub comp: Vec<usize>,
    pub degrees: Vec<GroupElement>,
    pub q: Bichar,
}

#[derive(Clone, Debug)]
pub enum Diagonality {
    Diagonal(DiagonalBasis),
    /// Support generators and a triple of positions where `Phi_gi` is not symmetric.
    Nondiagonal { support: Vec<GroupElement>, witness: (usize, usize, usize) },
}

impl YDModule {
    pub fn direct_sum(parts: Vec<SimpleYD>) -> Result<Self, Error> {
        let first = parts.first().ok_or_else(|| Error::Unsupported("empty direct sum".into()))?;
        let group = first.group.clone();
        let cocycle = first.cocycle.clone();
        for p in &parts[1..] {
            if p.group != group || !same_cocycle(&p.cocycle, &cocycle) {
                return Err(Error::MixedCategory);
            }
        }
        let mut offsets = vec![0];
        for p in &parts {
            offsets.push(offsets.last().unwrap() + p.dim);
        }
        Ok(YDModule { group, cocycle, components: parts, offsets })
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn offset(&self, comp: usize) -> usize {
        self.offsets[comp]
    }

    pub fn comp_of(&self, b: usize) -> usize {
        self.offsets.partition_point(|&o| o <= b) - 1
    }

    pub fn basis(&self) -> Vec<BasisLabel> {
        let mut v = Vec::new();
        for (c, s) in self.components.iter().enumerate() {
            for inner in 0..s.dim {
                v.push(BasisLabel { comp: c, inner, degree: s.degree.clone() });
            }
        }
        v
    }

    pub fn degree_of(&self, b: usize) -> &GroupElement {
        &self.components[self.comp_of(b)].degree
    }

    /// `g > x_b = coef * x_{b'}`.
    pub fn act(&self, g: &GroupElement, b: usize) -> (usize, Cyclo) {
        let c = self.comp_of(b);
        let off = self.offsets[c];
        let (t, coef) = self.components[c].rho(g).apply_basis(b - off);
        (off + t, coef.clone())
    }

    pub fn act_idx(&self, gi: usize, b: usize) -> (usize, Cyclo) {
        let c = self.comp_of(b);
        let off = self.offsets[c];
        let (t, coef) = self.components[c].rho_idx(gi).apply_basis(b - off);
        (off + t, coef.clone())
    }

    /// Action of `g` on the whole module as one monomial matrix.
    pub fn action_matrix(&self, g: &GroupElement) -> Monomial {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut coef = vec![Cyclo::zero(); d];
        for b in 0..d {
            let (t, c) = self.act(g, b);
            perm[b] = t;
            coef[b] = c;
        }
        Monomial { perm, coef }
    }

    /// `x_a (x) x_b -> (deg x_a) > x_b (x) x_a` on the basis indexed `a * dim + b`.
    pub fn braiding(&self) -> Monomial {
        let d = self.dim();
        let mut perm = vec![0; d * d];
        let mut coef = vec![Cyclo::zero(); d * d];
        for a in 0..d {
            for b in 0..d {
                let (t, c) = self.act(self.degree_of(a), b);
                perm[a * d + b] = t * d + a;
                coef[a * d + b] = c;
            }
        }
        Monomial { perm, coef }
    }

    pub fn support_generators(&self) -> Vec<GroupElement> {
        self.components.iter().map(|c| c.degree.clone()).collect()
    }

    pub fn support_subgroup(&self) -> Subgroup {
        self.group.support_subgroup(&self.support_generators())
    }

    pub fn is_diagonal(&self) -> Result<Diagonality, Error> {
        let support = self.support_generators();
        if let Some(w) = self.cocycle.nonabelian_witness(&support) {
            return Ok(Diagonality::Nondiagonal { support, witness: w });
        }
        let d = self.dim();
        let mut vectors = Vec::new();
        let mut comp = Vec::new();
        let mut degrees = Vec::new();
        for (c, s) in self.components.iter().enumerate() {
            let ops: Vec<&Monomial> = support.iter().map(|g| s.rho(g)).collect();
            let local = simultaneous_eigenbasis(&ops)?;
            for v in local {
                let mut full = vec![Cyclo::zero(); d];
                for (i, x) in v.into_iter().enumerate() {
                    full[self.offsets[c] + i] = x;
                }
                vectors.push(full);
                comp.push(c);
                degrees.push(s.degree.clone());
            }
        }
        let mut q = vec![vec![Cyclo::one(); d]; d];
        for a in 0..d {
            let op = self.action_matrix(&degrees[a]);
            for b in 0..d {
                q[a][b] = eigenvalue(&op, &vectors[b]).ok_or_else(|| {
                    Error::Unsupported("basis vector is not an eigenvector of a degree operator".into())
                })?;
            }
        }
        Ok(Diagonality::Diagonal(DiagonalBasis { vectors, comp, degrees, q: Bichar::new(q)? }))
    }

    /// Twist by `J`: the new module lives over the cocycle `Phi * dJ`.
    pub fn twist(&self, j: &Cochain2) -> YDModule {
        let cocycle = Arc::new(self.cocycle.times_coboundary(j, 1));
        let els = self.group.elements();
        let components = self
            .components
            .iter()
            .map(|s| {
                let x = &s.degree;
                let table = els
                    .iter()
                    .map(|g| {
                        let r = j.eval(g, x) / j.eval(x, g);
                        s.rho(g).scale(&r)
                    })
                    .collect();
                SimpleYD::from_table(&self.group, cocycle.clone(), x.clone(), table)
            })
            .collect();
        YDModule::direct_sum(components).unwrap()
    }

    /// Pull the module back along `hom: H -> G`, lifting degrees with `lift`.
    pub fn pullback(&self, hom: &Hom, lift: impl Fn(&GroupElement) -> Option<GroupElement>) -> Result<YDModule, Error> {
        if hom.target != self.group {
            return Err(Error::MixedCategory);
        }
        let cocycle = Arc::new(self.cocycle.pullback(hom));
        let h = &hom.source;
        let els = h.elements();
        let mut components = Vec::new();
        for s in &self.components {
            let deg = lift(&s.degree)
                .filter(|d| hom.apply(d) == s.degree)
                .ok_or_else(|| Error::InvalidElement(format!("degree {} has no lift", s.degree)))?;
            let table = els.iter().map(|e| s.rho(&hom.apply(e)).clone()).collect();
            components.push(SimpleYD::from_table(h, cocycle.clone(), deg, table));
        }
        YDModule::direct_sum(components)
    }

    /// The same module over the hat group, through projection and section.
    pub fn change_base(&self, hat: &Hat) -> Result<YDModule, Error> {
        self.pullback(&hat.proj, |g| Some(hat.lift(g)))
    }

    /// The module viewed over a subgroup containing all degrees.
    pub fn restrict(&self, sub: &Subgroup) -> Result<YDModule, Error> {
        self.pullback(&sub.embed, |g| sub.preimage(g))
    }

    pub fn check_projective(&self) -> Result<(), Error> {
        self.components.iter().try_for_each(|c| c.check_projective())
    }

    pub fn permuted(&self, order: &[usize]) -> YDModule {
        YDModule::direct_sum(order.iter().map(|&i| self.components[i].clone()).collect()).unwrap()
    }
}

fn same_cocycle(a: &Arc<Cocycle3>, b: &Arc<Cocycle3>) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    if a.base() != b.base() {
        return false;
    }
    let els = a.base().elements();
    els.iter().all(|x| {
        els.iter().all(|y| els.iter().all(|z| a.eval(x, y, z) == b.eval(x, y, z)))
    })
}

fn eigenvalue(op: &Monomial, v: &[Cyclo]) -> Option<Cyclo> {
    let w = op.apply(v);
    let i = v.iter().position(|x| !x.is_zero())?;
    let lambda = &w[i] / &v[i];
    v.iter().zip(&w).all(|(x, y)| *y == x * &lambda).then_some(lambda)
}

/// Eigenbasis shared by commuting monomial operators, built from the cycles
/// of the first non-diagonal one.
fn simultaneous_eigenbasis(ops: &[&Monomial]) -> Result<Vec<Vec<Cyclo>>, Error> {
    let d = ops.first().map_or(0, |m| m.dim());
    let Some(m) = ops.iter().find(|m| !m.is_diagonal()) else {
        return Ok((0..d)
            .map(|i| {
                let mut v = vec![Cyclo::zero(); d];
                v[i] = Cyclo::one();
                v
            })
            .collect());
    };
    let mut seen = vec![false; d];
    let mut basis = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = m.perm[start];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            cur = m.perm[cur];
        }
        let prod = cycle.iter().fold(Cyclo::one(), |acc, &i| &acc * &m.coef[i]);
        let len = cycle.len() as u64;
        let lambdas = prod
            .nth_roots(len)
            .ok_or_else(|| Error::Unsupported("cycle product is not a root of unity".into()))?;
        for lambda in lambdas {
            let mut v = vec![Cyclo::zero(); d];
            let mut a = Cyclo::one();
            let linv = lambda.inv()?;
            for &i in &cycle {
                v[i] = a.clone();
                a = &(&a * &m.coef[i]) * &linv;
            }
            basis.push(v);
        }
    }
    for op in ops {
        if basis.iter().any(|v| eigenvalue(op, v).is_none()) {
            return Err(Error::Unsupported("degree operators need a common cyclic eigenbasis".into()));
        }
    }
    Ok(basis)
}
