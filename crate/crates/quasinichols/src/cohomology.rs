//! Normalized 3-cocycles on finite abelian groups, their 2-cochains
//! `Phi_g`, coboundaries, pullbacks, and a solver for `dJ = pi^* Phi`.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use crate::error::Error;
use crate::group::{FAGroup, GroupElement, Hom, ModSystem};
use crate::par;
use crate::scalar::{gcd, lcm, Cyclo};

/// Parameters `(c_l, c_st, c_rst)` of a normal-form cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CSeq {
    pub single: Vec<u64>,
    pub pair: BTreeMap<(usize, usize), u64>,
    pub triple: BTreeMap<(usize, usize, usize), u64>,
}

impl CSeq {
    pub fn zero(g: &FAGroup) -> Self {
        CSeq::from_flat(g, &vec![0; CSeq::flat_len(g)]).unwrap()
    }

    pub fn flat_len(g: &FAGroup) -> usize {
        let n = g.rank();
        n + n * n.saturating_sub(1) / 2 + n * n.saturating_sub(1) * n.saturating_sub(2) / 6
    }

    /// Upper bounds on each entry in index-lexicographic order.
    pub fn bounds(g: &FAGroup) -> Vec<u64> {
        let m = g.factors();
        let n = m.len();
        let mut b: Vec<u64> = m.to_vec();
        for s in 0..n {
            for t in s + 1..n {
                b.push(gcd(m[s], m[t]));
            }
        }
        for r in 0..n {
            for s in r + 1..n {
                for t in s + 1..n {
                    b.push(gcd(gcd(m[r], m[s]), m[t]));
                }
            }
        }
        b
    }

    pub fn from_flat(g: &FAGroup, c: &[u64]) -> Result<Self, Error> {
        let bounds = CSeq::bounds(g);
        if c.len() != bounds.len() {
            return Err(Error::ConstraintViolated(format!(
                "expected {} cocycle parameters, got {}",
                bounds.len(),
                c.len()
            )));
        }
        let names = CSeq::names(g);
        for ((x, b), name) in c.iter().zip(&bounds).zip(&names) {
            if x >= b {
                return Err(Error::ConstraintViolated(format!("c{name} = {x} must be < {b}")));
            }
        }
        let n = g.rank();
        let mut it = c.iter().copied();
        let single: Vec<u64> = (0..n).map(|_| it.next().unwrap()).collect();
        let mut pair = BTreeMap::new();
        for s in 0..n {
            for t in s + 1..n {
                pair.insert((s, t), it.next().unwrap());
            }
        }
        let mut triple = BTreeMap::new();
        for r in 0..n {
            for s in r + 1..n {
                for t in s + 1..n {
                    triple.insert((r, s, t), it.next().unwrap());
                }
            }
        }
        Ok(CSeq { single, pair, triple })
    }

    pub fn to_flat(&self) -> Vec<u64> {
        let mut v = self.single.clone();
        v.extend(self.pair.values());
        v.extend(self.triple.values());
        v
    }

    /// One-based index labels such as `1`, `12`, `123`.
    pub fn names(g: &FAGroup) -> Vec<String> {
        let n = g.rank();
        let mut v: Vec<String> = (0..n).map(|l| format!("{}", l + 1)).collect();
        for s in 0..n {
            for t in s + 1..n {
                v.push(format!("{}{}", s + 1, t + 1));
            }
        }
        for r in 0..n {
            for s in r + 1..n {
                for t in s + 1..n {
                    v.push(format!("{}{}{}", r + 1, s + 1, t + 1));
                }
            }
        }
        v
    }

    /// Every parameter sequence for `g`, in lexicographic order.
    pub fn all(g: &FAGroup) -> Vec<CSeq> {
        let bounds = CSeq::bounds(g);
        let mut out = Vec::new();
        let mut cur = vec![0u64; bounds.len()];
        loop {
            out.push(CSeq::from_flat(g, &cur).unwrap());
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum CocycleKind {
    NormalForm(CSeq),
    Pullback(Hom, Arc<Cocycle3>),
    /// `inner * (dJ)^sign`
    Product(Arc<Cocycle3>, Arc<Cochain2>, i8),
}

/// An evaluable normalized 3-cocycle whose values are `modulus`-th roots of unity.
#[derive(Clone, Debug)]
pub struct Cocycle3 {
    base: FAGroup,
    kind: CocycleKind,
    modulus: u64,
}

impl Cocycle3 {
    pub fn normal_form(g: &FAGroup, c: CSeq) -> Self {
        Cocycle3 { base: g.clone(), kind: CocycleKind::NormalForm(c), modulus: g.exponent().max(1) }
    }

    pub fn from_flat(g: &FAGroup, c: &[u64]) -> Result<Self, Error> {
        Ok(Cocycle3::normal_form(g, CSeq::from_flat(g, c)?))
    }

    pub fn trivial(g: &FAGroup) -> Self {
        Cocycle3::normal_form(g, CSeq::zero(g))
    }

    pub fn base(&self) -> &FAGroup {
        &self.base
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn cseq(&self) -> Option<&CSeq> {
        match &self.kind {
            CocycleKind::NormalForm(c) => Some(c),
            _ => None,
        }
    }

    /// Exponent `e` with `Phi(a,b,c) = zeta(modulus)^e`.
    pub fn exp(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> u64 {
        let m = self.modulus;
        match &self.kind {
            CocycleKind::NormalForm(cs) => {
                let f = self.base.factors();
                let (i, j, k) = (&a.0, &b.0, &c.0);
                let mut e: u128 = 0;
                for l in 0..f.len() {
                    if cs.single[l] != 0 {
                        let carry = (j[l] + k[l]) / f[l];
                        e += (cs.single[l] * i[l] * carry * (m / f[l])) as u128;
                    }
                }
                for (&(s, t), &cst) in &cs.pair {
                    if cst != 0 {
                        let carry = (j[s] + k[s]) / f[s];
                        e += (cst * i[t] * carry * (m / f[t])) as u128;
                    }
                }
                for (&(r, s, t), &crst) in &cs.triple {
                    if crst != 0 {
                        let d = gcd(gcd(f[r], f[s]), f[t]);
                        e += (crst as u128) * (i[r] * j[s] % d * k[t] % d) as u128 * (m / d) as u128;
                    }
                }
                (e % m as u128) as u64
            }
            CocycleKind::Pullback(h, inner) => {
                let v = inner.exp(&h.apply(a), &h.apply(b), &h.apply(c));
                v * (m / inner.modulus) % m
            }
            CocycleKind::Product(inner, j, sign) => {
                let v = inner.exp(a, b, c) * (m / inner.modulus) % m;
                let g = &self.base;
                let dj = (j.exp(b, c) + j.exp(a, &g.mul(b, c))) as i128
                    - (j.exp(&g.mul(a, b), c) + j.exp(a, b)) as i128;
                let dj = (dj.rem_euclid(j.order as i128) as u64) * (m / j.order) % m;
                if *sign >= 0 {
                    (v + dj) % m
                } else {
                    (v + m - dj) % m
                }
            }
        }
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Cyclo {
        Cyclo::root_of_unity(self.modulus, self.exp(a, b, c) as i64)
    }

    /// Exponent of `Phi_g(x,y) = Phi(g,x,y) Phi(x,y,g) / Phi(x,g,y)`.
    pub fn phi_g_exp(&self, g: &GroupElement, x: &GroupElement, y: &GroupElement) -> u64 {
        let m = self.modulus;
        (self.exp(g, x, y) + self.exp(x, y, g) + m - self.exp(x, g, y)) % m
    }

    pub fn phi_g_eval(&self, g: &GroupElement, x: &GroupElement, y: &GroupElement) -> Cyclo {
        Cyclo::root_of_unity(self.modulus, self.phi_g_exp(g, x, y) as i64)
    }

    pub fn phi_g(&self, g: &GroupElement) -> Cochain2 {
        let els = self.base.elements();
        let mut table = Vec::with_capacity(els.len() * els.len());
        for x in &els {
            for y in &els {
                table.push(self.phi_g_exp(g, x, y));
            }
        }
        Cochain2 { base: self.base.clone(), order: self.modulus, table }
    }

    pub fn is_abelian(&self) -> Result<bool, Error> {
        match &self.kind {
            CocycleKind::NormalForm(c) => Ok(c.triple.values().all(|&x| x == 0)),
            _ => Err(Error::NotNormalForm),
        }
    }

    /// Decides whether the restriction to the subgroup generated by `gens` is abelian.
    pub fn is_abelian_on(&self, gens: &[GroupElement]) -> bool {
        self.nonabelian_witness(gens).is_none()
    }

    /// A triple `(i,j,k)` of generator positions with `Phi_gi(gj,gk) != Phi_gi(gk,gj)`.
    pub fn nonabelian_witness(&self, gens: &[GroupElement]) -> Option<(usize, usize, usize)> {
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                for k in j + 1..gens.len() {
                    if self.phi_g_exp(&gens[i], &gens[j], &gens[k]) != self.phi_g_exp(&gens[i], &gens[k], &gens[j])
                    {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn pullback(&self, h: &Hom) -> Cocycle3 {
        assert_eq!(h.target, self.base, "pullback along a map into another group");
        Cocycle3 {
            base: h.source.clone(),
            kind: CocycleKind::Pullback(h.clone(), Arc::new(self.clone())),
            modulus: self.modulus,
        }
    }

    /// `self * (dJ)^sign`.
    pub fn times_coboundary(&self, j: &Cochain2, sign: i8) -> Cocycle3 {
        assert_eq!(j.base, self.base, "cochain on another group");
        Cocycle3 {
            base: self.base.clone(),
            modulus: lcm(self.modulus, j.order),
            kind: CocycleKind::Product(Arc::new(self.clone()), Arc::new(j.clone()), sign),
        }
    }

    /// Checks the 3-cocycle identity on all quadruples.
    pub fn satisfies_cocycle_identity(&self) -> bool {
        let els = self.base.elements();
        let g = &self.base;
        let m = self.modulus;
        par::all_range(els.len(), |ai| {
            let a = &els[ai];
            for b in &els {
                let ab = g.mul(a, b);
                for c in &els {
                    let bc = g.mul(b, c);
                    for d in &els {
                        let cd = g.mul(c, d);
                        let lhs = self.exp(a, b, c) + self.exp(a, &bc, d) + self.exp(b, c, d);
                        let rhs = self.exp(&ab, c, d) + self.exp(a, b, &cd);
                        if lhs % m != rhs % m {
                            return false;
                        }
                    }
                }
            }
            true
        })
    }

    pub fn is_normalized(&self) -> bool {
        let els = self.base.elements();
        let e = self.base.identity();
        els.iter().all(|f| {
            els.iter().all(|g| self.exp(&e, f, g) == 0 && self.exp(f, &e, g) == 0 && self.exp(f, g, &e) == 0)
        })
    }

    /// True when every value is 1.
    pub fn is_trivial(&self) -> bool {
        let els = self.base.elements();
        par::all_range(els.len(), |ai| {
            els.iter().all(|b| els.iter().all(|c| self.exp(&els[ai], b, c) == 0))
        })
    }
}

/// A normalized 2-cochain with values `zeta(order)^table[x][y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub base: FAGroup,
    pub order: u64,
    table: Vec<u64>,
}

impl Cochain2 {
    pub fn trivial(g: &FAGroup) -> Self {
        let n = g.order() as usize;
        Cochain2 { base: g.clone(), order: 1, table: vec![0; n * n] }
    }

    pub fn from_fn(g: &FAGroup, order: u64, f: impl Fn(&GroupElement, &GroupElement) -> i64) -> Self {
        let els = g.elements();
        let mut table = Vec::with_capacity(els.len() * els.len());
        for x in &els {
            for y in &els {
                table.push(f(x, y).rem_euclid(order as i64) as u64);
            }
        }
        Cochain2 { base: g.clone(), order, table }
    }

    pub fn exp(&self, x: &GroupElement, y: &GroupElement) -> u64 {
        let n = self.base.order() as usize;
        self.table[self.base.index_of(x) * n + self.base.index_of(y)]
    }

    pub fn exp_idx(&self, x: usize, y: usize) -> u64 {
        self.table[x * self.base.order() as usize + y]
    }

    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Cyclo {
        Cyclo::root_of_unity(self.order, self.exp(x, y) as i64)
    }

    pub fn inverse(&self) -> Cochain2 {
        Cochain2 {
            base: self.base.clone(),
            order: self.order,
            table: self.table.iter().map(|&e| (self.order - e) % self.order).collect(),
        }
    }

    pub fn product(&self, o: &Cochain2) -> Cochain2 {
        let n = lcm(self.order, o.order);
        let (sa, sb) = (n / self.order, n / o.order);
        Cochain2 {
            base: self.base.clone(),
            order: n,
            table: self.table.iter().zip(&o.table).map(|(a, b)| (a * sa + b * sb) % n).collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        let e = self.base.identity();
        self.base.elements().iter().all(|g| self.exp(&e, g) == 0 && self.exp(g, &e) == 0)
    }

    /// Checks the 2-cocycle identity `J(x,y)J(xy,z) = J(y,z)J(x,yz)`.
    pub fn is_cocycle(&self) -> bool {
        let g = &self.base;
        let els = g.elements();
        let n = self.order;
        els.iter().all(|x| {
            els.iter().all(|y| {
                els.iter().all(|z| {
                    (self.exp(x, y) + self.exp(&g.mul(x, y), z)) % n
                        == (self.exp(y, z) + self.exp(x, &g.mul(y, z))) % n
                })
            })
        })
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }
}

/// `dJ` as a cocycle.
pub fn coboundary(j: &Cochain2) -> Cocycle3 {
    Cocycle3::trivial(&j.base).times_coboundary(j, 1)
}

#[derive(Clone, Debug)]
pub enum Resolution {
    Found(Cochain2),
    NotCoboundary { equations: usize, unknowns: usize },
}

impl Resolution {
    pub fn cochain(&self) -> Option<&Cochain2> {
        match self {
            Resolution::Found(j) => Some(j),
            _ => None,
        }
    }
}

#[derive(Clone, Default)]
struct Affine {
    c: u64,
    terms: Vec<(u32, u64)>,
}

impl Affine {
    fn eval(&self, x: &[u64], n: u64) -> u64 {
        let mut acc = self.c as u128;
        for &(i, v) in &self.terms {
            acc += v as u128 * x[i as usize] as u128;
        }
        (acc % n as u128) as u64
    }

    fn add_into(&self, out: &mut BTreeMap<u32, i128>, c: &mut i128, sign: i128) {
        *c += sign * self.c as i128;
        for &(i, v) in &self.terms {
            *out.entry(i).or_insert(0) += sign * v as i128;
        }
    }
}

/// Finds `J` on `target` with `dJ = pi^* phi`, or proves that none exists.
///
/// The unknowns are the exponents `e(x, e_l)` on standard generators; all
/// other values are expressed through them along a spanning tree, and the
/// remaining equations are added lazily until a candidate passes the full
/// pointwise check.
pub fn resolve_coboundary(phi: &Cocycle3, target: &FAGroup, pi: &Hom) -> Resolution {
    assert_eq!(pi.target, *phi.base(), "projection must land in the cocycle's group");
    let h = target;
    let ord = h.order() as usize;
    let r = h.rank();
    let n = lcm(2 * h.exponent(), phi.modulus());
    let scale = n / phi.modulus();
    let els = h.elements();
    let pim: Vec<GroupElement> = els.iter().map(|x| pi.apply(x)).collect();
    let mul: Vec<u32> = (0..ord * ord)
        .map(|t| h.index_of(&h.mul(&els[t / ord], &els[t % ord])) as u32)
        .collect();
    let mul = |a: usize, b: usize| mul[a * ord + b] as usize;
    let gen_idx: Vec<usize> = (0..r).map(|l| h.index_of(&h.generator(l))).collect();
    let f = |x: usize, y: usize, z: usize| phi.exp(&pim[x], &pim[y], &pim[z]) * scale % n;

    let unknowns = ord.saturating_sub(1) * r;
    let unit = |z: usize, l: usize| -> Option<u32> {
        if z == 0 {
            None
        } else {
            Some(((z - 1) * r + l) as u32)
        }
    };

    // E[x * ord + y] expresses e(x, y) through the unknowns
    let mut e: Vec<Option<Affine>> = vec![None; ord * ord];
    let mut visited = vec![false; ord];
    visited[0] = true;
    for x in 0..ord {
        e[x * ord] = Some(Affine::default());
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for l in 0..r {
            let y2 = mul(y, gen_idx[l]);
            if visited[y2] {
                continue;
            }
            visited[y2] = true;
            queue.push_back(y2);
            for x in 0..ord {
                let prev = e[x * ord + y].as_ref().unwrap();
                let mut terms: BTreeMap<u32, i128> = BTreeMap::new();
                let mut c: i128 = f(x, y, gen_idx[l]) as i128;
                prev.add_into(&mut terms, &mut c, 1);
                if let Some(u) = unit(mul(x, y), l) {
                    *terms.entry(u).or_insert(0) += 1;
                }
                if let Some(u) = unit(y, l) {
                    *terms.entry(u).or_insert(0) -= 1;
                }
                let nn = n as i128;
                let terms = terms
                    .into_iter()
                    .filter_map(|(i, v)| {
                        let v = v.rem_euclid(nn) as u64;
                        (v != 0).then_some((i, v))
                    })
                    .collect();
                e[x * ord + y2] = Some(Affine { c: c.rem_euclid(nn) as u64, terms });
            }
        }
    }
    let e: Vec<Affine> = e.into_iter().map(|a| a.expect("generators span the group")).collect();

    let residual_row = |x: usize, y: usize, z: usize| -> (Vec<(usize, i64)>, i64) {
        let mut terms: BTreeMap<u32, i128> = BTreeMap::new();
        let mut c: i128 = 0;
        e[y * ord + z].add_into(&mut terms, &mut c, 1);
        e[x * ord + mul(y, z)].add_into(&mut terms, &mut c, 1);
        e[mul(x, y) * ord + z].add_into(&mut terms, &mut c, -1);
        e[x * ord + y].add_into(&mut terms, &mut c, -1);
        let nn = n as i128;
        let rhs = (f(x, y, z) as i128 - c).rem_euclid(nn) as i64;
        let row = terms
            .into_iter()
            .filter_map(|(i, v)| {
                let v = v.rem_euclid(nn) as i64;
                (v != 0).then_some((i as usize, v))
            })
            .collect();
        (row, rhs)
    };

    let mut sys = ModSystem::new(unknowns, n);
    let mut equations = 0usize;
    for &x in &gen_idx {
        for y in 0..ord {
            for &z in &gen_idx {
                let (row, rhs) = residual_row(x, y, z);
                sys.add_row(&row, rhs);
                equations += 1;
            }
        }
    }
    loop {
        let Some(sol) = sys.solve() else {
            return Resolution::NotCoboundary { equations, unknowns };
        };
        let table: Vec<u64> = e.iter().map(|a| a.eval(&sol, n)).collect();
        let jt = |a: usize, b: usize| table[a * ord + b];
        let bad_x = par::filter_range(ord, |x| {
            for y in 0..ord {
                let xy = mul(x, y);
                for z in 0..ord {
                    let d = (jt(y, z) + jt(x, mul(y, z)) + 2 * n - jt(xy, z) - jt(x, y)) % n;
                    if d != f(x, y, z) {
                        return true;
                    }
                }
            }
            false
        });
        if bad_x.is_empty() {
            return Resolution::Found(Cochain2 { base: h.clone(), order: n, table });
        }
        let budget = 2 * unknowns.max(8);
        let mut added = 0;
        'outer: for &x in &bad_x {
            for y in 0..ord {
                let xy = mul(x, y);
                for z in 0..ord {
                    let d = (jt(y, z) + jt(x, mul(y, z)) + 2 * n - jt(xy, z) - jt(x, y)) % n;
                    if d != f(x, y, z) {
                        let (row, rhs) = residual_row(x, y, z);
                        sys.add_row(&row, rhs);
                        equations += 1;
                        added += 1;
                        if added >= budget {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
}

/// Checks `dJ = pi^* phi` at every triple.
pub fn verify_coboundary(phi: &Cocycle3, j: &Cochain2, pi: &Hom) -> bool {
    let h = &j.base;
    let els = h.elements();
    let pim: Vec<GroupElement> = els.iter().map(|x| pi.apply(x)).collect();
    let n = lcm(j.order, phi.modulus());
    let (sj, sp) = (n / j.order, n / phi.modulus());
    par::all_range(els.len(), |xi| {
        let x = &els[xi];
        els.iter().enumerate().all(|(yi, y)| {
            els.iter().enumerate().all(|(zi, z)| {
                let d = (j.exp(y, z) + j.exp(x, &h.mul(y, z))) as i128
                    - (j.exp(&h.mul(x, y), z) + j.exp(x, y)) as i128;
                let d = (d.rem_euclid(j.order as i128) as u64) * sj % n;
                d == phi.exp(&pim[xi], &pim[yi], &pim[zi]) * sp % n
            })
        })
    })
}
