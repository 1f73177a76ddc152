//! Finite abelian groups `Z_{m_1} x ... x Z_{m_n}`, subgroups, the hat group
//! with squared factors, and integer linear algebra (Smith normal form,
//! linear systems modulo N).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::{gcd, lcm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn exps(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FAGroup {
    factors: Vec<u64>,
}

impl FAGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self, Error> {
        if factors.iter().any(|&m| m == 0) {
            return Err(Error::InvalidElement("invariant factors must be >= 1".into()));
        }
        Ok(FAGroup { factors })
    }

    pub fn cyclic(m: u64) -> Self {
        FAGroup::new(vec![m]).unwrap()
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Least common multiple of the invariant factors.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, &m| lcm(a, m))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = vec![0; self.rank()];
        e[i] = 1 % self.factors[i];
        GroupElement(e)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn element(&self, exps: &[i64]) -> Result<GroupElement, Error> {
        if exps.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "expected {} exponents, got {}",
                self.rank(),
                exps.len()
            )));
        }
        Ok(GroupElement(
            exps.iter().zip(&self.factors).map(|(&e, &m)| e.rem_euclid(m as i64) as u64).collect(),
        ))
    }

    pub fn check(&self, a: &GroupElement) -> Result<(), Error> {
        if a.0.len() != self.rank() || a.0.iter().zip(&self.factors).any(|(e, m)| e >= m) {
            return Err(Error::InvalidElement(format!("{a} is not an element of Z{:?}", self.factors)));
        }
        Ok(())
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter().zip(&b.0).zip(&self.factors).map(|((x, y), m)| (x + y) % m).collect(),
        )
    }

    pub fn try_mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.factors).map(|(x, m)| (m - x) % m).collect())
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| ((x as i128 * k as i128).rem_euclid(m as i128)) as u64)
                .collect(),
        )
    }

    pub fn elem_order(&self, a: &GroupElement) -> u64 {
        a.0.iter().zip(&self.factors).fold(1, |acc, (&x, &m)| lcm(acc, m / gcd(m, x)))
    }

    pub fn index_of(&self, a: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (x, m) in a.0.iter().zip(&self.factors) {
            idx = idx * (*m as usize) + *x as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut e = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let m = self.factors[i] as usize;
            e[i] = (idx % m) as u64;
            idx /= m;
        }
        GroupElement(e)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }

    /// Subgroup generated by `gens` with an invariant-factor presentation.
    pub fn support_subgroup(&self, gens: &[GroupElement]) -> Subgroup {
        let k = gens.len();
        let n = self.rank();
        if k == 0 || n == 0 {
            let pres = FAGroup::new(vec![]).unwrap();
            return Subgroup {
                parent: self.clone(),
                generators: vec![],
                embed: Hom { source: pres.clone(), target: self.clone(), images: vec![] },
                presentation: pres,
            };
        }
        // kernel of [A | D] on Z^(k+n), projected to the first k coordinates
        let mut m = vec![vec![0i128; k + n]; n];
        for (j, g) in gens.iter().enumerate() {
            for i in 0..n {
                m[i][j] = g.0[i] as i128;
            }
        }
        for i in 0..n {
            m[i][k + i] = self.factors[i] as i128;
        }
        let s = smith(&m);
        let r = s.rank();
        let mut rel: Vec<Vec<i128>> = vec![Vec::new(); k];
        for c in r..(k + n) {
            for (i, row) in rel.iter_mut().enumerate() {
                row.push(s.v[i][c]);
            }
        }
        let (diag, uinv) = if rel[0].is_empty() {
            (vec![0; k], identity_i128(k))
        } else {
            let s2 = smith(&rel);
            let mut d = vec![0i128; k];
            for i in 0..k.min(rel[0].len()) {
                d[i] = s2.d[i][i];
            }
            (d, s2.uinv)
        };
        let mut factors = Vec::new();
        let mut images = Vec::new();
        for i in 0..k {
            let d = diag[i];
            assert!(d != 0, "subgroup of a finite group must be finite");
            if d == 1 {
                continue;
            }
            factors.push(d as u64);
            let mut img = vec![0i64; n];
            for (j, g) in gens.iter().enumerate() {
                let c = uinv[j][i];
                for t in 0..n {
                    let mt = self.factors[t] as i128;
                    img[t] = ((img[t] as i128 + c * g.0[t] as i128).rem_euclid(mt)) as i64;
                }
            }
            images.push(self.element(&img).unwrap());
        }
        let pres = FAGroup::new(factors).unwrap();
        Subgroup {
            parent: self.clone(),
            generators: gens.to_vec(),
            embed: Hom { source: pres.clone(), target: self.clone(), images },
            presentation: pres,
        }
    }

    /// The group with squared invariant factors and its projection onto `self`.
    pub fn hat_of(&self) -> Hat {
        let hat = FAGroup::new(self.factors.iter().map(|m| m * m).collect()).unwrap();
        let images = self.generators();
        Hat { proj: Hom { source: hat.clone(), target: self.clone(), images }, hat, base: self.clone() }
    }
}

impl fmt::Display for FAGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Homomorphism given by the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hom {
    pub source: FAGroup,
    pub target: FAGroup,
    pub images: Vec<GroupElement>,
}

impl Hom {
    pub fn identity(g: &FAGroup) -> Hom {
        Hom { source: g.clone(), target: g.clone(), images: g.generators() }
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let mut acc = self.target.identity();
        for (e, img) in x.0.iter().zip(&self.images) {
            acc = self.target.mul(&acc, &self.target.pow(img, *e as i64));
        }
        acc
    }

    /// Checks that generator images respect the source relations.
    pub fn is_well_defined(&self) -> bool {
        self.images.len() == self.source.rank()
            && self
                .images
                .iter()
                .zip(self.source.factors())
                .all(|(img, &m)| self.target.pow(img, m as i64) == self.target.identity())
    }
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub parent: FAGroup,
    pub generators: Vec<GroupElement>,
    pub presentation: FAGroup,
    pub embed: Hom,
}

impl Subgroup {
    /// Preimage of a parent element lying in the subgroup.
    pub fn preimage(&self, g: &GroupElement) -> Option<GroupElement> {
        self.presentation.elements().into_iter().find(|h| &self.embed.apply(h) == g)
    }

    pub fn order(&self) -> u64 {
        self.presentation.order()
    }
}

#[derive(Clone, Debug)]
pub struct Hat {
    pub hat: FAGroup,
    pub base: FAGroup,
    pub proj: Hom,
}

impl Hat {
    pub fn project(&self, h: &GroupElement) -> GroupElement {
        self.proj.apply(h)
    }

    /// The section with least nonnegative representatives.
    pub fn lift(&self, g: &GroupElement) -> GroupElement {
        GroupElement(g.0.clone())
    }
}

/// Smith normal form `u * a * v = d` with unimodular `u`, `v`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Vec<Vec<i128>>,
    pub uinv: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub d: Vec<Vec<i128>>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        let k = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..k).filter(|&i| self.d[i][i] != 0).count()
    }
}

fn identity_i128(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

pub fn smith(a: &[Vec<i128>]) -> Smith {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d = a.to_vec();
    let mut u = identity_i128(m);
    let mut uinv = identity_i128(m);
    let mut v = identity_i128(n);

    fn row_axpy(d: &mut [Vec<i128>], u: &mut [Vec<i128>], uinv: &mut [Vec<i128>], dst: usize, src: usize, q: i128) {
        // row_dst += q row_src
        let (s_d, s_u) = (d[src].clone(), u[src].clone());
        for (x, y) in d[dst].iter_mut().zip(s_d) {
            *x += q * y;
        }
        for (x, y) in u[dst].iter_mut().zip(s_u) {
            *x += q * y;
        }
        for row in uinv.iter_mut() {
            row[src] -= q * row[dst];
        }
    }
    fn col_axpy(d: &mut [Vec<i128>], v: &mut [Vec<i128>], dst: usize, src: usize, q: i128) {
        for row in d.iter_mut() {
            row[dst] += q * row[src];
        }
        for row in v.iter_mut() {
            row[dst] += q * row[src];
        }
    }

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j] != 0 && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                d.swap(bi, t);
                u.swap(bi, t);
                for row in uinv.iter_mut() {
                    row.swap(bi, t);
                }
            }
            if bj != t {
                for row in d.iter_mut() {
                    row.swap(bj, t);
                }
                for row in v.iter_mut() {
                    row.swap(bj, t);
                }
            }
            let p = d[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[i][t] / p;
                if q != 0 {
                    row_axpy(&mut d, &mut u, &mut uinv, i, t, -q);
                }
                if d[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = d[t][j] / p;
                if q != 0 {
                    col_axpy(&mut d, &mut v, j, t, -q);
                }
                if d[t][j] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let mut fixed = false;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if d[i][j] % p != 0 {
                        row_axpy(&mut d, &mut u, &mut uinv, t, i, 1);
                        fixed = true;
                        break 'outer;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if t < m && t < n && d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
            for row in uinv.iter_mut() {
                row[t] = -row[t];
            }
        }
    }
    Smith { u, uinv, v, d }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn mod_inv(a: u64, m: u64) -> u64 {
    let (_, x, _) = egcd(a as i128, m as i128);
    x.rem_euclid(m as i128) as u64
}

/// Incrementally built linear system over `Z_N`, kept in Howell-like
/// echelon form so that back-substitution always succeeds on consistent
/// systems.
#[derive(Clone, Debug)]
pub struct ModSystem {
    ncols: usize,
    modulus: u64,
    pivots: Vec<Option<Vec<u64>>>,
    inconsistent: bool,
}

impl ModSystem {
    pub fn new(ncols: usize, modulus: u64) -> Self {
        ModSystem { ncols, modulus, pivots: vec![None; ncols], inconsistent: false }
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Adds `sum coeffs[j] x_j = rhs`. Coefficients and rhs are reduced mod N.
    pub fn add_row(&mut self, coeffs: &[(usize, i64)], rhs: i64) {
        let n = self.modulus as i128;
        let mut row = vec![0u64; self.ncols + 1];
        for &(j, c) in coeffs {
            row[j] = ((row[j] as i128 + c as i128).rem_euclid(n)) as u64;
        }
        row[self.ncols] = (rhs as i128).rem_euclid(n) as u64;
        self.insert(row);
    }

    pub fn add_dense_row(&mut self, coeffs: &[i64], rhs: i64) {
        let pairs: Vec<(usize, i64)> = coeffs.iter().copied().enumerate().collect();
        self.add_row(&pairs, rhs);
    }

    fn scale(&self, r: &[u64], s: u64) -> Vec<u64> {
        let n = self.modulus as u128;
        r.iter().map(|&x| ((x as u128 * s as u128) % n) as u64).collect()
    }

    fn combine(&self, a: &[u64], sa: u64, b: &[u64], sb: u64) -> Vec<u64> {
        let n = self.modulus as u128;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| ((x as u128 * sa as u128 + y as u128 * sb as u128) % n) as u64)
            .collect()
    }

    fn insert(&mut self, row: Vec<u64>) {
        let nmod = self.modulus;
        let mut queue = vec![row];
        while let Some(mut r) = queue.pop() {
            loop {
                let Some(c) = r.iter().position(|&x| x != 0) else { break };
                if c == self.ncols {
                    self.inconsistent = true;
                    break;
                }
                // normalize leading entry to gcd(lead, N)
                let lead = r[c];
                let g = gcd(lead, nmod);
                if lead != g {
                    let np = nmod / g;
                    let mut u = mod_inv((lead / g) % np, np);
                    if np == 1 {
                        u = 1;
                    }
                    while gcd(u, nmod) != 1 {
                        u += np;
                    }
                    r = self.scale(&r, u);
                }
                match self.pivots[c].take() {
                    None => {
                        if g != 1 {
                            let ann = self.scale(&r, nmod / g);
                            queue.push(ann);
                        }
                        self.pivots[c] = Some(r);
                        break;
                    }
                    Some(p) => {
                        let a = p[c];
                        if g % a == 0 {
                            let q = (g / a) % nmod;
                            r = self.combine(&r, 1, &p, (nmod - q) % nmod);
                            self.pivots[c] = Some(p);
                            continue;
                        }
                        let (h, s, t) = egcd(a as i128, g as i128);
                        let nn = nmod as i128;
                        let s = s.rem_euclid(nn) as u64;
                        let t = t.rem_euclid(nn) as u64;
                        let piv = self.combine(&p, s, &r, t);
                        let h = h as u64;
                        let other = self.combine(&p, g / h, &r, (nmod - (a / h) % nmod) % nmod);
                        queue.push(other);
                        if h != 1 {
                            queue.push(self.scale(&piv, nmod / h));
                        }
                        self.pivots[c] = Some(piv);
                        break;
                    }
                }
            }
        }
    }

    /// Some solution, or `None` when inconsistent.
    pub fn solve(&self) -> Option<Vec<u64>> {
        if self.inconsistent {
            return None;
        }
        let n = self.modulus as u128;
        let mut x = vec![0u64; self.ncols];
        for c in (0..self.ncols).rev() {
            let Some(p) = &self.pivots[c] else { continue };
            let mut acc = p[self.ncols] as u128;
            for j in c + 1..self.ncols {
                if p[j] != 0 && x[j] != 0 {
                    acc = (acc + n - (p[j] as u128 * x[j] as u128) % n) % n;
                }
            }
            let lead = p[c] as u128;
            if acc % lead != 0 {
                return None;
            }
            x[c] = (acc / lead) as u64;
        }
        Some(x)
    }
}

/// Solves `A x = b (mod N)`.
pub fn solve_linear_mod(a: &[Vec<i64>], b: &[i64], modulus: u64) -> Option<Vec<u64>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut sys = ModSystem::new(ncols, modulus);
    for (row, &rhs) in a.iter().zip(b) {
        sys.add_dense_row(row, rhs);
        if sys.is_inconsistent() {
            return None;
        }
    }
    sys.solve()
}
