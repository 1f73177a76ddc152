//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclo`] is a polynomial in a primitive root of unity `zeta(n)` with
//! rational coefficients, reduced modulo the `n`-th cyclotomic polynomial.
//! Values with different conductors are embedded into the least common
//! multiple before any arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::Error;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

/// `n` with the factor 2 dropped when `n ≡ 2 (mod 4)`; `Q(zeta(n))` is unchanged.
pub fn canonical_conductor(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

struct Ctx {
    deg: usize,
    // pow[k] = zeta(n)^k in the power basis, k < n
    pow: Vec<Vec<i64>>,
}

static CYCLOTOMIC: Lazy<RwLock<HashMap<u64, Vec<i64>>>> = Lazy::new(|| RwLock::new(HashMap::new()));
static CTX: Lazy<RwLock<HashMap<u64, Arc<Ctx>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    if let Some(p) = CYCLOTOMIC.read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by all proper divisor polynomials
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d);
            num = div_monic(&num, &q);
        }
    }
    CYCLOTOMIC.write().unwrap().insert(n, num.clone());
    num
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for i in (0..=da - db).rev() {
        let c = r[i + db];
        q[i] = c;
        if c != 0 {
            for j in 0..=db {
                r[i + j] -= c * b[j];
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn ctx(n: u64) -> Arc<Ctx> {
    if let Some(c) = CTX.read().unwrap().get(&n) {
        return c.clone();
    }
    let poly = cyclotomic_poly(n);
    let deg = poly.len() - 1;
    let mut pow = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..n {
        pow.push(cur.clone());
        // multiply by x, then reduce with the monic poly
        let top = cur[deg - 1];
        let mut next = vec![0i64; deg];
        for j in (1..deg).rev() {
            next[j] = cur[j - 1];
        }
        if top != 0 {
            for j in 0..deg {
                next[j] -= top * poly[j];
            }
        }
        cur = next;
    }
    let c = Arc::new(Ctx { deg, pow });
    CTX.write().unwrap().insert(n, c.clone());
    c
}

/// Element of a cyclotomic field, stored as integer numerators over a
/// common positive denominator.
#[derive(Clone)]
pub struct Cyclo {
    n: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { n: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Cyclo::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyclo { n: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self, Error> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut c = Cyclo { n: 1, num: vec![BigInt::from(p)], den: BigInt::from(q) };
        c.normalize();
        Ok(c)
    }

    /// `zeta(n)^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "root order must be positive");
        let k = k.rem_euclid(n as i64) as u64;
        let g = gcd(n, k).max(1);
        let (n, k) = if k == 0 { (1, 0) } else { (n / g, k / g) };
        if n % 4 == 2 {
            // zeta(2m) = -zeta(m)^((m+1)/2) for odd m
            let m = n / 2;
            let e = (k * ((m + 1) / 2)) % m;
            let base = Cyclo::from_ctx_power(m, e);
            if k % 2 == 1 {
                -base
            } else {
                base
            }
        } else {
            Cyclo::from_ctx_power(n, k)
        }
    }

    fn from_ctx_power(n: u64, k: u64) -> Self {
        let c = ctx(n);
        Cyclo {
            n,
            num: c.pow[k as usize].iter().map(|&x| BigInt::from(x)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|x| x.is_zero())
    }

    /// The value as a rational number, when it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for x in self.num.iter_mut() {
                *x = -x.clone();
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for x in self.num.iter_mut() {
                *x = &*x / &g;
            }
        }
    }

    /// The same value written over conductor `m` (a multiple of the current one).
    pub fn embed(&self, m: u64) -> Cyclo {
        let m = canonical_conductor(m);
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "embedding needs a multiple of the conductor");
        let c = ctx(m);
        let step = (m / self.n) as usize;
        let mut num = vec![BigInt::zero(); c.deg];
        for (k, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = &c.pow[(k * step) % m as usize];
            for (j, &r) in row.iter().enumerate() {
                if r != 0 {
                    num[j] += a * r;
                }
            }
        }
        Cyclo { n: m, num, den: self.den.clone() }
    }

    fn common(a: &Cyclo, b: &Cyclo) -> u64 {
        canonical_conductor(lcm(a.n, b.n))
    }

    fn scale(&self, num: &BigInt, den: &BigInt) -> Cyclo {
        let mut r = Cyclo {
            n: self.n,
            num: self.num.iter().map(|x| x * num).collect(),
            den: &self.den * den,
        };
        r.normalize();
        r
    }

    fn mul_ref(&self, o: &Cyclo) -> Cyclo {
        if o.n == 1 {
            return self.scale(&o.num[0], &o.den);
        }
        if self.n == 1 {
            return o.scale(&self.num[0], &self.den);
        }
        let m = Cyclo::common(self, o);
        let a = self.embed(m);
        let b = o.embed(m);
        let c = ctx(m);
        let d = c.deg;
        let mut full = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = full[..d].to_vec();
        for (k, x) in full.iter().enumerate().skip(d) {
            if x.is_zero() {
                continue;
            }
            let row = &c.pow[k % m as usize];
            for (j, &r) in row.iter().enumerate() {
                if r != 0 {
                    num[j] += x * r;
                }
            }
        }
        let mut r = Cyclo { n: m, num, den: &a.den * &b.den };
        r.normalize();
        r
    }

    fn add_ref(&self, o: &Cyclo, sign: i64) -> Cyclo {
        let m = Cyclo::common(self, o);
        let a = self.embed(m);
        let b = o.embed(m);
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if sign > 0 {
                    l + r
                } else {
                    l - r
                }
            })
            .collect();
        let mut r = Cyclo { n: m, num, den: &a.den * &b.den };
        r.normalize();
        r
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Cyclo, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut r = Cyclo { n: 1, num: vec![self.den.clone()], den: self.num[0].clone() };
            r.normalize();
            return Ok(r);
        }
        if let Some((ord, k)) = self.as_root() {
            return Ok(Cyclo::root_of_unity(ord, -(k as i64)));
        }
        let poly: Vec<BigRational> =
            cyclotomic_poly(self.n).iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        let a: Vec<BigRational> =
            self.num.iter().map(|x| BigRational::new(x.clone(), self.den.clone())).collect();
        let s = poly_inverse_mod(&a, &poly);
        let d = ctx(self.n).deg;
        let mut den = BigInt::one();
        for c in &s {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); d];
        for (i, c) in s.iter().enumerate() {
            num[i] = c.numer() * (&den / c.denom());
        }
        let mut r = Cyclo { n: self.n, num, den };
        r.normalize();
        Ok(r)
    }

    pub fn pow(&self, e: i64) -> Cyclo {
        let base = if e < 0 { self.inv().expect("inverse of zero") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclo::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// `Some((order, k))` with `self = zeta(order)^k`, `k` coprime to `order`.
    pub fn as_root(&self) -> Option<(u64, u64)> {
        if !self.den.is_one() || self.is_zero() {
            return None;
        }
        if self.num.iter().any(|x| x.abs() > BigInt::one()) {
            return None;
        }
        let c = ctx(self.n);
        let n = self.n;
        let small: Vec<i64> = self.num.iter().map(|x| x.to_i64().unwrap()).collect();
        for (j, row) in c.pow.iter().enumerate() {
            let j = j as u64;
            if *row == small {
                let g = gcd(n, j).max(1);
                return Some(if j == 0 { (1, 0) } else { (n / g, j / g) });
            }
            if n % 2 == 1 && row.iter().zip(small.iter()).all(|(a, b)| *a == -*b) {
                let l = 2 * n;
                let e = (2 * j + n) % l;
                let g = gcd(l, e).max(1);
                return Some((l / g, e / g));
            }
        }
        None
    }

    /// Multiplicative order when `self` is a root of unity.
    pub fn root_order(&self) -> Option<u64> {
        self.as_root().map(|(o, _)| o)
    }

    /// All `m`-th roots of `self`, which must be a root of unity.
    pub fn nth_roots(&self, m: u64) -> Option<Vec<Cyclo>> {
        let (ord, k) = self.as_root()?;
        let l = ord * m;
        Some((0..m).map(|t| Cyclo::root_of_unity(l, (k + t * ord) as i64)).collect())
    }

    /// Coefficients over the current conductor, for display and hashing.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num.iter().map(|x| BigRational::new(x.clone(), self.den.clone())).collect()
    }

    /// Parse `zeta(N)^k`, `zeta(N)`, `-zeta(N)^k`, integers and `p/q`.
    pub fn parse(s: &str) -> Result<Cyclo, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad scalar `{s}`"));
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(rest) = t.strip_prefix('-') {
            if rest.starts_with("zeta") {
                return Ok(-Cyclo::parse(rest)?);
            }
        }
        if let Some(rest) = t.strip_prefix("zeta(") {
            let close = rest.find(')').ok_or_else(bad)?;
            let n: u64 = rest[..close].parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            let tail = &rest[close + 1..];
            let k: i64 = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
            };
            return Ok(Cyclo::root_of_unity(n, k));
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            return Cyclo::from_ratio(p, q);
        }
        t.parse::<i64>().map(Cyclo::from_int).map_err(|_| bad())
    }
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                r[i + j] -= t;
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    poly_trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut r = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        r[i] -= x;
    }
    poly_trim(&mut r);
    r
}

fn poly_inverse_mod(a: &[BigRational], f: &[BigRational]) -> Vec<BigRational> {
    // extended Euclid keeping only the coefficient of `a`
    let mut r0 = f.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is a nonzero constant
    let c = r0[0].clone();
    let (_, mut s) = poly_divmod(&s0, f);
    for x in s.iter_mut() {
        *x = &*x / &c;
    }
    s.resize(f.len() - 1, BigRational::zero());
    s
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        let m = Cyclo::common(self, other);
        let a = self.embed(m);
        let b = other.embed(m);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclo {}

impl Hash for Cyclo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.as_root() {
            Some(r) => r.hash(state),
            None => {
                if let Some(q) = self.to_rational() {
                    q.hash(state)
                } else {
                    0u8.hash(state)
                }
            }
        }
    }
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl<'a> $tr<&'a Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $f(self, o: &'a Cyclo) -> Cyclo {
                $body(self, o)
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, o: Cyclo) -> Cyclo {
                $body(&self, &o)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, o: &'a Cyclo) -> Cyclo {
                $body(&self, o)
            }
        }
    };
}

binop!(Add, add, |a: &Cyclo, b: &Cyclo| a.add_ref(b, 1));
binop!(Sub, sub, |a: &Cyclo, b: &Cyclo| a.add_ref(b, -1));
binop!(Mul, mul, |a: &Cyclo, b: &Cyclo| a.mul_ref(b));
binop!(Div, div, |a: &Cyclo, b: &Cyclo| a.mul_ref(&b.inv().expect("division by zero")));

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, num: self.num.into_iter().map(|x| -x).collect(), den: self.den }
    }
}

impl<'a> Neg for &'a Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -(self.clone())
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((o, k)) = self.as_root() {
            return match o {
                1 => write!(f, "1"),
                2 => write!(f, "-1"),
                _ => write!(f, "zeta({o})^{k}"),
            };
        }
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*zeta({})^{i}", self.n)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclo {
        Cyclo::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(15).len(), 9);
    }

    #[test]
    fn basic_roots() {
        assert_eq!(z(4, 1) * z(4, 1), Cyclo::from_int(-1));
        assert!(z(3, 1).pow(3).is_one());
        assert_eq!(z(6, 3), Cyclo::from_int(-1));
        assert!((z(3, 1) + z(3, 2) + Cyclo::one()).is_zero());
        assert_eq!(z(8, 1).inv().unwrap(), z(8, 7));
        let one = Cyclo::one();
        assert_eq!((&one + &z(4, 1)) * (&one - &z(4, 1)), Cyclo::from_int(2));
    }

    #[test]
    fn root_orders() {
        assert_eq!(Cyclo::from_int(-1).root_order(), Some(2));
        assert_eq!(z(3, 1).root_order(), Some(3));
        assert_eq!(Cyclo::from_int(2).root_order(), None);
        assert_eq!(z(12, 8).root_order(), Some(3));
        assert_eq!(z(6, 1).root_order(), Some(6));
        assert_eq!(z(10, 3).as_root(), Some((10, 3)));
        assert_eq!((Cyclo::one() + z(4, 1)).root_order(), None);
    }

    #[test]
    fn inverse_general() {
        let a = Cyclo::from_int(2) + z(5, 1) * Cyclo::from_int(3);
        let b = a.inv().unwrap();
        assert!((a * b).is_one());
        assert!(Cyclo::zero().inv().is_err());
    }

    #[test]
    fn mixed_conductors() {
        assert_eq!(z(3, 1) * z(4, 1), z(12, 7));
        assert_eq!(z(2, 1) * z(6, 1), z(6, 4));
        assert_eq!(z(3, 1).embed(12), z(12, 4));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(Cyclo::parse("zeta(4)^3").unwrap(), z(4, 3));
        assert_eq!(Cyclo::parse("-1").unwrap(), z(2, 1));
        assert_eq!(Cyclo::parse("-zeta(3)").unwrap(), z(6, 5));
        assert_eq!(format!("{}", z(6, 5)), "zeta(6)^5");
        assert_eq!(format!("{}", Cyclo::from_int(1)), "1");
        assert_eq!(Cyclo::parse(&Cyclo::from_int(-1).to_string()).unwrap(), Cyclo::from_int(-1));
        assert!(Cyclo::parse("zeta(0)^1").is_err());
        assert_eq!(Cyclo::parse("3/6").unwrap(), Cyclo::from_ratio(1, 2).unwrap());
    }

    #[test]
    fn nth_roots_cover() {
        let r = Cyclo::from_int(-1).nth_roots(2).unwrap();
        assert!(r.contains(&z(4, 1)) && r.contains(&z(4, 3)));
        for x in z(3, 1).nth_roots(3).unwrap() {
            assert_eq!(x.pow(3), z(3, 1));
        }
    }
}
