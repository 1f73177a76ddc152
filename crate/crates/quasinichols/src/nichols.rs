//! Braided tensor algebra of a twisted YD module, its coproduct, and the
//! Nichols quotient computed through quantum symmetrizers.

use std::collections::{BTreeMap, HashMap};

use crate::error::Error;
use crate::group::GroupElement;
use crate::linalg;
use crate::par;
use crate::scalar::Cyclo;
use crate::ydmod::YDModule;

/// Left-parenthesized tensor word of basis indices.
pub type Word = Vec<u8>;

/// Element of T(V) in the word basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Word, Cyclo>,
}

impl Tensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        let mut t = Self::zero();
        t.add_term(w, Cyclo::one());
        t
    }

    pub fn letter(b: usize) -> Self {
        Self::word(vec![b as u8])
    }

    pub fn add_term(&mut self, w: Word, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Cyclo)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u8]) -> Cyclo {
        self.terms.get(w).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn scaled(&self, c: &Cyclo) -> Tensor {
        let mut t = Tensor::zero();
        for (w, x) in &self.terms {
            t.add_term(w.clone(), x * c);
        }
        t
    }

    pub fn plus(&self, o: &Tensor) -> Tensor {
        let mut t = self.clone();
        for (w, x) in &o.terms {
            t.add_term(w.clone(), x.clone());
        }
        t
    }

    pub fn minus(&self, o: &Tensor) -> Tensor {
        let mut t = self.clone();
        for (w, x) in &o.terms {
            t.add_term(w.clone(), -x);
        }
        t
    }

    /// Common word length, if homogeneous.
    pub fn length(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }
}

/// Element of T(V) (x) T(V).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor2 {
    terms: BTreeMap<(Word, Word), Cyclo>,
}

impl Tensor2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, l: Word, r: Word, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        let k = (l, r);
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Cyclo)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn simple(x: &Tensor, y: &Tensor) -> Tensor2 {
        let mut t = Tensor2::zero();
        for (a, p) in x.terms() {
            for (b, q) in y.terms() {
                t.add_term(a.clone(), b.clone(), p * q);
            }
        }
        t
    }

    pub fn plus(&self, o: &Tensor2) -> Tensor2 {
        let mut t = self.clone();
        for ((l, r), x) in &o.terms {
            t.add_term(l.clone(), r.clone(), x.clone());
        }
        t
    }

    pub fn minus(&self, o: &Tensor2) -> Tensor2 {
        let mut t = self.clone();
        for ((l, r), x) in &o.terms {
            t.add_term(l.clone(), r.clone(), -x);
        }
        t
    }
}

/// Precomputed structure constants for T(V).
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    module: YDModule,
    dim: usize,
    gord: usize,
    modulus: u64,
    deg: Vec<usize>,
    comp: Vec<usize>,
    mul: Vec<usize>,
    phi: Vec<u32>,
    roots: Vec<Cyclo>,
    act: Vec<Vec<(u8, Cyclo)>>,
}

impl TensorAlgebra {
    pub fn new(module: &YDModule) -> Result<Self, Error> {
        let dim = module.dim();
        if dim > 255 {
            return Err(Error::Unsupported(format!("module of dimension {dim} is too large")));
        }
        let g = &module.group;
        let gord = g.order() as usize;
        if gord > 256 {
            return Err(Error::Unsupported(format!("group of order {gord} is too large for a cocycle table")));
        }
        let els = g.elements();
        let phi_c = &module.cocycle;
        let modulus = phi_c.modulus().max(1);
        let mut mul = vec![0; gord * gord];
        for a in 0..gord {
            for b in 0..gord {
                mul[a * gord + b] = g.index_of(&g.mul(&els[a], &els[b]));
            }
        }
        let phi = par::map_range(gord * gord * gord, |t| {
            let (a, b, c) = (t / (gord * gord), (t / gord) % gord, t % gord);
            (phi_c.exp(&els[a], &els[b], &els[c]) % modulus) as u32
        });
        let roots = (0..modulus).map(|k| Cyclo::root_of_unity(modulus, k as i64)).collect();
        let deg = (0..dim).map(|b| g.index_of(module.degree_of(b))).collect();
        let comp = (0..dim).map(|b| module.comp_of(b)).collect();
        let act = (0..gord)
            .map(|gi| {
                (0..dim)
                    .map(|b| {
                        let (t, c) = module.act_idx(gi, b);
                        (t as u8, c)
                    })
                    .collect()
            })
            .collect();
        Ok(TensorAlgebra { module: module.clone(), dim, gord, modulus, deg, comp, mul, phi, roots, act })
    }

    pub fn module(&self) -> &YDModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    fn gmul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.gord + b]
    }

    fn phi_e(&self, a: usize, b: usize, c: usize) -> u64 {
        self.phi[(a * self.gord + b) * self.gord + c] as u64
    }

    fn phig_e(&self, g: usize, x: usize, y: usize) -> u64 {
        let m = self.modulus;
        (self.phi_e(g, x, y) + self.phi_e(x, y, g) + m - self.phi_e(x, g, y)) % m
    }

    fn root(&self, e: u64) -> &Cyclo {
        &self.roots[(e % self.modulus) as usize]
    }

    /// Group index of the degree of a word.
    pub fn word_degree(&self, w: &[u8]) -> usize {
        w.iter().fold(0, |acc, &b| self.gmul(acc, self.deg[b as usize]))
    }

    pub fn group_index(&self, g: &GroupElement) -> usize {
        self.module.group.index_of(g)
    }

    /// Multidegree in N_0^theta (letters counted per simple summand).
    pub fn grading(&self, w: &[u8]) -> Vec<usize> {
        let mut v = vec![0; self.rank()];
        for &b in w {
            v[self.comp[b as usize]] += 1;
        }
        v
    }

    /// `u * w` in T(V) for two words; returns the associator exponent.
    fn concat(&self, u: &[u8], w: &[u8]) -> (u64, Word) {
        let du = self.word_degree(u);
        let mut e = 0;
        let mut pre = if w.is_empty() { 0 } else { self.deg[w[0] as usize] };
        for &b in w.iter().skip(1) {
            let db = self.deg[b as usize];
            e += self.phi_e(du, pre, db);
            pre = self.gmul(pre, db);
        }
        let mut out = u.to_vec();
        out.extend_from_slice(w);
        (e % self.modulus, out)
    }

    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut t = Tensor::zero();
        for (u, a) in x.terms() {
            for (w, b) in y.terms() {
                let (e, uw) = self.concat(u, w);
                t.add_term(uw, &(a * b) * self.root(e));
            }
        }
        t
    }

    fn act_word(&self, g: usize, w: &[u8]) -> (Cyclo, Word) {
        let mut coef = Cyclo::one();
        let mut out = Vec::with_capacity(w.len());
        let mut e = 0;
        let mut pre = 0;
        for (t, &b) in w.iter().enumerate() {
            let db = self.deg[b as usize];
            if t > 0 {
                e += self.phig_e(g, pre, db);
            }
            pre = self.gmul(pre, db);
            let (nb, c) = &self.act[g][b as usize];
            out.push(*nb);
            coef = &coef * c;
        }
        (&coef * self.root(e), out)
    }

    /// `g > x` for a group index `g`.
    pub fn act(&self, g: usize, x: &Tensor) -> Tensor {
        let mut t = Tensor::zero();
        for (w, a) in x.terms() {
            let (c, nw) = self.act_word(g, w);
            t.add_term(nw, a * &c);
        }
        t
    }

    pub fn act_elem(&self, g: &GroupElement, x: &Tensor) -> Tensor {
        self.act(self.group_index(g), x)
    }

    /// Braiding on positions `i, i+1` of a word.
    fn braid_word(&self, i: usize, w: &[u8]) -> (Cyclo, Word) {
        let a = self.word_degree(&w[..i]);
        let (xb, yb) = (w[i] as usize, w[i + 1] as usize);
        let (x, y) = (self.deg[xb], self.deg[yb]);
        let (ny, c) = &self.act[x][yb];
        let m = self.modulus;
        let e = (self.phi_e(a, y, x) + m - self.phi_e(a, x, y)) % m;
        let mut out = w.to_vec();
        out[i] = *ny;
        out[i + 1] = xb as u8;
        (c * self.root(e), out)
    }

    /// `c_i` acting on positions `i, i+1` (0-based).
    pub fn braid(&self, i: usize, x: &Tensor) -> Tensor {
        let mut t = Tensor::zero();
        for (w, a) in x.terms() {
            if i + 1 >= w.len() {
                t.add_term(w.clone(), a.clone());
                continue;
            }
            let (c, nw) = self.braid_word(i, w);
            t.add_term(nw, a * &c);
        }
        t
    }

    /// G-degree of a homogeneous element.
    pub fn degree_of(&self, x: &Tensor) -> Result<usize, Error> {
        let mut it = x.terms().map(|(w, _)| self.word_degree(w));
        let Some(d) = it.next() else { return Ok(0) };
        if it.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Braided commutator `x y - (deg x > y) x`.
    pub fn ad(&self, x: &Tensor, y: &Tensor) -> Result<Tensor, Error> {
        let g = self.degree_of(x)?;
        Ok(self.mul(x, y).minus(&self.mul(&self.act(g, y), x)))
    }

    pub fn symmetrizer(&self) -> Symmetrizer<'_> {
        Symmetrizer { alg: self, memo: HashMap::new() }
    }

    /// Sum over all permutations of their Matsumoto lifts, applied one reduced word at a time.
    pub fn symmetrize_brute_force(&self, x: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (w, a) in x.terms() {
            let n = w.len();
            for p in permutations(n) {
                let mut t = Tensor::word(w.clone());
                for i in reduced_word(&p) {
                    t = self.braid(i, &t);
                }
                out = out.plus(&t.scaled(a));
            }
        }
        out
    }

    /// Words whose multidegree equals `counts`.
    pub fn block_words(&self, counts: &[usize]) -> Vec<Word> {
        let by_comp: Vec<Vec<u8>> = (0..self.rank())
            .map(|c| (0..self.dim).filter(|&b| self.comp[b] == c).map(|b| b as u8).collect())
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut left = counts.to_vec();
        fn rec(by: &[Vec<u8>], left: &mut [usize], cur: &mut Word, out: &mut Vec<Word>) {
            if left.iter().all(|&l| l == 0) {
                out.push(cur.clone());
                return;
            }
            for c in 0..left.len() {
                if left[c] == 0 {
                    continue;
                }
                left[c] -= 1;
                for &b in &by[c] {
                    cur.push(b);
                    rec(by, left, cur, out);
                    cur.pop();
                }
                left[c] += 1;
            }
        }
        rec(&by_comp, &mut left, &mut cur, &mut out);
        out
    }

    /// Dimension of the multidegree-`counts` piece of B(V).
    pub fn block_rank(&self, counts: &[usize]) -> usize {
        let words = self.block_words(counts);
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut sym = self.symmetrizer();
        let rows = words
            .iter()
            .map(|w| {
                let s = sym.apply_word(w);
                let mut row = vec![Cyclo::zero(); words.len()];
                for (v, c) in s.terms() {
                    row[index[v]] = c.clone();
                }
                row
            })
            .collect();
        linalg::rank(rows)
    }

    /// `dim B^n(V)` for `n = 0..=max_degree`.
    pub fn graded_dims(&self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree)
            .map(|n| {
                let blocks = compositions(n, self.rank());
                par::map(&blocks, |b| self.block_rank(b)).into_iter().sum()
            })
            .collect()
    }

    /// Rank of the images of homogeneous elements in B(V).
    pub fn rank_in_nichols(&self, elems: &[Tensor]) -> usize {
        linalg::rank(self.symmetrized_rows(elems).0)
    }

    fn symmetrized_rows(&self, elems: &[Tensor]) -> (Vec<Vec<Cyclo>>, Vec<Word>) {
        let mut sym = self.symmetrizer();
        let images: Vec<Tensor> = elems.iter().map(|e| sym.apply(e)).collect();
        let mut words: Vec<Word> = images.iter().flat_map(|t| t.terms().map(|(w, _)| w.clone())).collect();
        words.sort();
        words.dedup();
        let rows = images
            .iter()
            .map(|t| words.iter().map(|w| t.coeff(w)).collect())
            .collect();
        (rows, words)
    }

    pub fn is_zero_in_nichols(&self, x: &Tensor) -> bool {
        self.symmetrizer().apply(x).is_zero()
    }

    /// Reduced basis of the linear relations among `elems` holding in B(V).
    pub fn relations(&self, elems: &[Tensor]) -> Vec<Vec<Cyclo>> {
        let (rows, _) = self.symmetrized_rows(elems);
        let n = elems.len();
        let cols = linalg::transpose(&rows);
        let cols = if cols.is_empty() { vec![vec![Cyclo::zero(); n]] } else { cols };
        let ker = linalg::kernel(cols, n);
        if ker.is_empty() {
            return ker;
        }
        linalg::rref(ker).0
    }

    fn pair_mul_words(&self, a: &[u8], b: &[u8], c: &[u8], d: &[u8]) -> (Cyclo, Word, Word) {
        let (da, db, dc, dd) = (self.word_degree(a), self.word_degree(b), self.word_degree(c), self.word_degree(d));
        let m = self.modulus;
        let mut e = m - self.phi_e(da, db, self.gmul(dc, dd));
        e += self.phi_e(db, dc, dd);
        e += m - self.phi_e(dc, db, dd);
        e += self.phi_e(da, dc, self.gmul(db, dd));
        let (coef, nc) = self.act_word(db, c);
        let (e1, left) = self.concat(a, &nc);
        let (e2, right) = self.concat(b, d);
        (&coef * self.root(e + e1 + e2), left, right)
    }

    /// Product in the braided tensor square of T(V).
    pub fn mul2(&self, x: &Tensor2, y: &Tensor2) -> Tensor2 {
        let mut t = Tensor2::zero();
        for ((a, b), p) in x.terms() {
            for ((c, d), q) in y.terms() {
                let (s, l, r) = self.pair_mul_words(a, b, c, d);
                t.add_term(l, r, &(p * q) * &s);
            }
        }
        t
    }

    pub fn coproduct(&self, x: &Tensor) -> Tensor2 {
        let mut out = Tensor2::zero();
        let mut memo: HashMap<Word, Tensor2> = HashMap::new();
        for (w, a) in x.terms() {
            let d = self.coproduct_word(w, &mut memo);
            for ((l, r), c) in d.terms() {
                out.add_term(l.clone(), r.clone(), a * c);
            }
        }
        out
    }

    fn coproduct_word(&self, w: &[u8], memo: &mut HashMap<Word, Tensor2>) -> Tensor2 {
        if let Some(d) = memo.get(w) {
            return d.clone();
        }
        let d = match w.len() {
            0 => Tensor2::simple(&Tensor::unit(), &Tensor::unit()),
            _ => {
                let n = w.len();
                let head = self.coproduct_word(&w[..n - 1], memo);
                let l = Tensor::word(vec![w[n - 1]]);
                let prim = Tensor2::simple(&l, &Tensor::unit()).plus(&Tensor2::simple(&Tensor::unit(), &l));
                self.mul2(&head, &prim)
            }
        };
        memo.insert(w.to_vec(), d.clone());
        d
    }

    /// `Delta(x) - x (x) 1 - 1 (x) x`.
    pub fn primitive_defect(&self, x: &Tensor) -> Tensor2 {
        let one = Tensor::unit();
        self.coproduct(x).minus(&Tensor2::simple(x, &one)).minus(&Tensor2::simple(&one, x))
    }

    pub fn is_primitive(&self, x: &Tensor) -> bool {
        self.primitive_defect(x).is_zero()
    }

    /// Coassociativity up to the associator of the category.
    pub fn is_coassociative_on(&self, x: &Tensor) -> bool {
        let d = self.coproduct(x);
        let mut memo = HashMap::new();
        let mut left: BTreeMap<(Word, Word, Word), Cyclo> = BTreeMap::new();
        let mut right: BTreeMap<(Word, Word, Word), Cyclo> = BTreeMap::new();
        let add = |m: &mut BTreeMap<(Word, Word, Word), Cyclo>, k: (Word, Word, Word), c: Cyclo| {
            let e = m.entry(k).or_insert_with(Cyclo::zero);
            *e = &*e + &c;
        };
        for ((a, b), p) in d.terms() {
            for ((u, v), q) in self.coproduct_word(a, &mut memo).terms() {
                let m = self.modulus;
                let e = m - self.phi_e(self.word_degree(u), self.word_degree(v), self.word_degree(b));
                add(&mut left, (u.clone(), v.clone(), b.clone()), &(p * q) * self.root(e));
            }
            for ((u, v), q) in self.coproduct_word(b, &mut memo).terms() {
                add(&mut right, (a.clone(), u.clone(), v.clone()), p * q);
            }
        }
        left.retain(|_, c| !c.is_zero());
        right.retain(|_, c| !c.is_zero());
        left == right
    }

    /// All words of length `n`, in lexicographic order.
    pub fn words(&self, n: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w: Word| {
                    (0..self.dim).map(move |b| {
                        let mut v = w.clone();
                        v.push(b as u8);
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn dense(&self, n: usize, mut f: impl FnMut(&Word) -> Tensor) -> Vec<Vec<Cyclo>> {
        let words = self.words(n);
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = vec![vec![Cyclo::zero(); words.len()]; words.len()];
        for (col, w) in words.iter().enumerate() {
            for (v, c) in f(w).terms() {
                m[index[v]][col] = c.clone();
            }
        }
        m
    }

    /// Matrix of `c_i` on the word basis of `V^n` (columns are images).
    pub fn braid_matrix(&self, n: usize, i: usize) -> Vec<Vec<Cyclo>> {
        self.dense(n, |w| self.braid(i, &Tensor::word(w.clone())))
    }

    /// Matrix of the quantum symmetrizer `S_n` on the word basis.
    pub fn symmetrizer_matrix(&self, n: usize) -> Vec<Vec<Cyclo>> {
        let mut sym = self.symmetrizer();
        self.dense(n, |w| sym.apply_word(w))
    }

    /// The `(0, n)` and `(n, 0)` parts of the coproduct reproduce the input.
    pub fn counit_holds(&self, x: &Tensor) -> bool {
        let d = self.coproduct(x);
        let mut left = Tensor::zero();
        let mut right = Tensor::zero();
        for ((l, r), c) in d.terms() {
            if r.is_empty() {
                left.add_term(l.clone(), c.clone());
            }
            if l.is_empty() {
                right.add_term(r.clone(), c.clone());
            }
        }
        left == *x && right == *x
    }

    fn check_multihomogeneous(&self, x: &Tensor) -> Result<(), Error> {
        let mut it = x.terms().map(|(w, _)| self.grading(w));
        if let Some(first) = it.next() {
            if it.any(|g| g != first) {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(())
    }

    /// Nonzero bihomogeneous pieces of `Delta(x)` in B(V) (x) B(V), excluding `x (x) 1` and `1 (x) x`.
    pub fn standard_decomposition(&self, x: &Tensor) -> Result<Vec<(Vec<usize>, Vec<usize>)>, Error> {
        self.check_multihomogeneous(x)?;
        let d = self.coproduct(x);
        let mut sym = self.symmetrizer();
        let mut pieces: BTreeMap<(Vec<usize>, Vec<usize>), Tensor2> = BTreeMap::new();
        for ((l, r), c) in d.terms() {
            if l.is_empty() || r.is_empty() {
                continue;
            }
            let sl = sym.apply_word(l);
            let sr = sym.apply_word(r);
            let key = (self.grading(l), self.grading(r));
            let piece = pieces.entry(key).or_default();
            for (u, a) in sl.terms() {
                for (v, b) in sr.terms() {
                    piece.add_term(u.clone(), v.clone(), &(a * b) * c);
                }
            }
        }
        Ok(pieces.into_iter().filter(|(_, t)| !t.is_zero()).map(|(k, _)| k).collect())
    }

    /// The `(p, n - p)` piece of `Delta(x)` pushed to B(V) (x) B(V).
    pub fn coproduct_piece_in_nichols(&self, x: &Tensor, left: &[usize], right: &[usize]) -> Tensor2 {
        let mut sym = self.symmetrizer();
        let mut out = Tensor2::zero();
        for ((l, r), c) in self.coproduct(x).terms() {
            if self.grading(l) != left || self.grading(r) != right {
                continue;
            }
            for (u, a) in sym.apply_word(l).terms() {
                for (v, b) in sym.apply_word(r).terms() {
                    out.add_term(u.clone(), v.clone(), &(a * b) * c);
                }
            }
        }
        out
    }

    /// `x (x) y` pushed to B(V) (x) B(V).
    pub fn pair_in_nichols(&self, x: &Tensor, y: &Tensor) -> Tensor2 {
        let mut sym = self.symmetrizer();
        Tensor2::simple(&sym.apply(x), &sym.apply(y))
    }
}

/// Quantum symmetrizer `S_n = (S_{n-1} (x) id)(1 + c_{n-1} + c_{n-1}c_{n-2} + ...)`, memoized on words.
pub struct Symmetrizer<'a> {
    alg: &'a TensorAlgebra,
    memo: HashMap<Word, Tensor>,
}

impl Symmetrizer<'_> {
    pub fn apply_word(&mut self, w: &[u8]) -> Tensor {
        if w.len() <= 1 {
            return Tensor::word(w.to_vec());
        }
        if let Some(t) = self.memo.get(w) {
            return t.clone();
        }
        let n = w.len();
        let mut out = Tensor::zero();
        for j in 0..n {
            let mut coef = Cyclo::one();
            let mut cur = w.to_vec();
            for p in j..n - 1 {
                let (c, nw) = self.alg.braid_word(p, &cur);
                coef = &coef * &c;
                cur = nw;
            }
            let last = cur[n - 1];
            for (pw, pc) in self.apply_word(&cur[..n - 1]).terms() {
                let mut full = pw.clone();
                full.push(last);
                out.add_term(full, pc * &coef);
            }
        }
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    pub fn apply(&mut self, x: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (w, a) in x.terms() {
            out = out.plus(&self.apply_word(w).scaled(a));
        }
        out
    }
}

/// All vectors in N_0^k with entry sum `n`.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Adjacent transpositions, in application order, that bubble-sort `p` back to the identity.
fn reduced_word(p: &[usize]) -> Vec<usize> {
    let mut p = p.to_vec();
    let mut steps = Vec::new();
    loop {
        let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) else { break };
        p.swap(i, i + 1);
        steps.push(i);
    }
    steps
}

/// Degree sets attached to `ad_{V_i}(ad_{V_j}(V_k)) + ad_{V_j}(ad_{V_i}(V_k))`.
#[derive(Clone, Copy, Debug)]
pub struct AdCubeSets {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl AdCubeSets {
    pub fn generator(&self, theta: usize) -> Vec<usize> {
        let mut v = vec![0; theta];
        v[self.i] += 1;
        v[self.j] += 1;
        v[self.k] += 1;
        v
    }

    fn split(&self, v: &[usize]) -> Option<(i64, i64, i64, i64)> {
        let others = (0..v.len()).filter(|&t| t != self.i && t != self.j && t != self.k);
        if others.into_iter().any(|t| v[t] != 0) {
            return None;
        }
        let (vi, vj, vk) = (v[self.i] as i64, v[self.j] as i64, v[self.k] as i64);
        Some((vi, vj, vk, vi.min(vj)))
    }

    /// `k(e_i+e_j+e_k) + a e_i + b e_j` with `a + b > 0`.
    pub fn in_s(&self, v: &[usize]) -> bool {
        let Some((vi, vj, vk, _)) = self.split(v) else { return false };
        let (a, b) = (vi - vk, vj - vk);
        a >= 0 && b >= 0 && a + b > 0
    }

    /// `k(e_i+e_j+e_k) + a e_i + b e_j + c e_k` with `ab = 0`, `a + b <= c`, `c > 0`.
    pub fn in_t(&self, v: &[usize]) -> bool {
        let Some((vi, vj, vk, k)) = self.split(v) else { return false };
        let (a, b, c) = (vi - k, vj - k, vk - k);
        c > 0 && a + b <= c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdReport {
    pub cd1: bool,
    pub cd2: bool,
    pub cd3: bool,
    pub failure: Option<String>,
}

impl CdReport {
    pub fn all(&self) -> bool {
        self.cd1 && self.cd2 && self.cd3
    }
}

/// Checks the closure conditions on the box `[0, bound]^theta` and the
/// decomposition condition on the given bidegrees.
pub fn check_cd_conditions(
    theta: usize,
    gens: &[Vec<usize>],
    s: impl Fn(&[usize]) -> bool,
    t: impl Fn(&[usize]) -> bool,
    decomposition: &[(Vec<usize>, Vec<usize>)],
    bound: usize,
) -> CdReport {
    let boxv = box_vectors(theta, bound);
    let add = |u: &[usize], v: &[usize]| -> Option<Vec<usize>> {
        let w: Vec<usize> = u.iter().zip(v).map(|(a, b)| a + b).collect();
        w.iter().all(|&x| x <= bound).then_some(w)
    };
    let mut failure = None;
    let mut cd1 = true;
    for (name, set) in [("S", &s as &dyn Fn(&[usize]) -> bool), ("T", &t)] {
        let members: Vec<&Vec<usize>> = boxv.iter().filter(|v| set(v)).collect();
        for u in &members {
            for v in &members {
                if let Some(w) = add(u, v) {
                    if !set(&w) && cd1 {
                        cd1 = false;
                        failure.get_or_insert(format!("{name} not closed: {u:?} + {v:?}"));
                    }
                }
            }
        }
    }
    let mut span: Vec<Vec<usize>> = vec![vec![0; theta]];
    let mut frontier = span.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                if let Some(w) = add(f, g) {
                    if !span.contains(&w) {
                        span.push(w.clone());
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut cd2 = true;
    for (name, set) in [("S", &s as &dyn Fn(&[usize]) -> bool), ("T", &t)] {
        if let Some(w) = span.iter().find(|w| set(w)) {
            cd2 = false;
            failure.get_or_insert(format!("{name} meets N_0[I] at {w:?}"));
        }
        for u in boxv.iter().filter(|v| set(v)) {
            for w in &span {
                if let Some(x) = add(u, w) {
                    if !set(&x) && cd2 {
                        cd2 = false;
                        failure.get_or_insert(format!("{name} not stable: {u:?} + {w:?}"));
                    }
                }
            }
        }
    }
    let bad = decomposition.iter().find(|(l, r)| !(s(l) && t(r)));
    if let Some((l, r)) = bad {
        failure.get_or_insert(format!("decomposition degree ({l:?}, {r:?}) outside S x T"));
    }
    CdReport { cd1, cd2, cd3: bad.is_none(), failure }
}

fn box_vectors(theta: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..theta {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Cocycle3;
    use crate::group::FAGroup;
    use crate::ydmod::{make_character_simple, make_simple_rank3};
    use std::sync::Arc;

    fn m1() -> Cyclo {
        Cyclo::from_int(-1)
    }

    fn cube() -> YDModule {
        let g = FAGroup::new(vec![2, 2, 2]).unwrap();
        let phi = Arc::new(Cocycle3::from_flat(&g, &[0, 0, 0, 0, 0, 0, 1]).unwrap());
        let parts = [(0, 1, 2), (1, 0, 2), (2, 1, 0)]
            .iter()
            .map(|&r| make_simple_rank3(&g, phi.clone(), r, m1(), Cyclo::one(), Cyclo::one()).unwrap())
            .collect();
        YDModule::direct_sum(parts).unwrap()
    }

    fn quantum_line(q: Cyclo) -> YDModule {
        let g = FAGroup::cyclic(q.root_order().unwrap().max(2));
        let triv = Arc::new(Cocycle3::trivial(&g));
        let s = make_character_simple(&g, triv, &g.generator(0), &[q]).unwrap();
        YDModule::direct_sum(vec![s]).unwrap()
    }

    fn all_words(d: usize, n: usize) -> Vec<Word> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w: Word| {
                    (0..d).map(move |b| {
                        let mut v = w.clone();
                        v.push(b as u8);
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn braid_relation_on_cube() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        for w in all_words(6, 3).into_iter().step_by(5) {
            let x = Tensor::word(w);
            let l = t.braid(0, &t.braid(1, &t.braid(0, &x)));
            let r = t.braid(1, &t.braid(0, &t.braid(1, &x)));
            assert_eq!(l, r);
        }
    }

    #[test]
    fn s2_is_one_plus_c() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        let mut sym = t.symmetrizer();
        for w in all_words(6, 2) {
            let x = Tensor::word(w);
            assert_eq!(sym.apply(&x), x.plus(&t.braid(0, &x)));
        }
    }

    #[test]
    fn symmetrizer_matches_brute_force() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        let mut sym = t.symmetrizer();
        for w in [vec![0u8, 2, 4], vec![1, 3, 5, 0], vec![4, 4, 1]] {
            let x = Tensor::word(w);
            assert_eq!(sym.apply(&x), t.symmetrize_brute_force(&x));
        }
    }

    #[test]
    fn quantum_line_minus_one() {
        let t = TensorAlgebra::new(&quantum_line(m1())).unwrap();
        assert_eq!(t.graded_dims(3), vec![1, 1, 0, 0]);
        let w = Cyclo::root_of_unity(3, 1);
        let t = TensorAlgebra::new(&quantum_line(w)).unwrap();
        assert_eq!(t.graded_dims(4), vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn degree_two_primitives_are_symmetrizer_kernel() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        let x = Tensor::letter(0);
        let y = Tensor::letter(2);
        let r = t.ad(&x, &y).unwrap();
        assert!(t.is_zero_in_nichols(&r));
        assert!(t.is_primitive(&r));
        let z = Tensor::letter(4);
        let r = t.ad(&x, &z).unwrap();
        assert!(!t.is_zero_in_nichols(&r));
        assert!(!t.is_primitive(&r));
    }

    #[test]
    fn action_respects_products() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        let cocycle = t.module().cocycle.clone();
        let els = t.module().group.elements();
        for (gi, g) in els.iter().enumerate() {
            for u in all_words(6, 2).into_iter().step_by(7) {
                for w in all_words(6, 2).into_iter().step_by(5) {
                    let (x, y) = (Tensor::word(u.clone()), Tensor::word(w.clone()));
                    let lhs = t.act(gi, &t.mul(&x, &y));
                    let du = &els[t.word_degree(&u)];
                    let dw = &els[t.word_degree(&w)];
                    let f = cocycle.phi_g_eval(g, du, dw);
                    let rhs = t.mul(&t.act(gi, &x), &t.act(gi, &y)).scaled(&f);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn coassociative_in_degree_three() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        for w in [vec![0u8, 2, 4], vec![5, 1, 3], vec![4, 4, 0]] {
            assert!(t.is_coassociative_on(&Tensor::word(w)));
        }
    }

    #[test]
    fn distant_braidings_commute() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        for w in all_words(6, 4).into_iter().step_by(11) {
            let x = Tensor::word(w);
            assert_eq!(t.braid(0, &t.braid(2, &x)), t.braid(2, &t.braid(0, &x)));
            let l = t.braid(1, &t.braid(2, &t.braid(1, &x)));
            assert_eq!(l, t.braid(2, &t.braid(1, &t.braid(2, &x))));
        }
    }

    #[test]
    fn counit_and_homogeneity() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        let x = t.ad(&Tensor::letter(0), &t.ad(&Tensor::letter(2), &Tensor::letter(4)).unwrap()).unwrap();
        assert!(t.counit_holds(&x));
        let mixed = Tensor::letter(0).plus(&Tensor::word(vec![2, 4]));
        assert_eq!(t.standard_decomposition(&mixed), Err(Error::NotHomogeneous));
        assert!(t.standard_decomposition(&Tensor::letter(3)).unwrap().is_empty());
    }

    #[test]
    fn commutator_coproduct_closed_form() {
        let t = TensorAlgebra::new(&cube()).unwrap();
        let els = t.module().group.elements();
        for y in 0..6 {
            for z in 0..6 {
                let (yy, zz) = (Tensor::letter(y), Tensor::letter(z));
                let a = t.ad(&yy, &zz).unwrap();
                let (gj, gk) = (t.word_degree(&[y as u8]), t.word_degree(&[z as u8]));
                let one = Tensor::unit();
                let expect = Tensor2::simple(&a, &one)
                    .plus(&Tensor2::simple(&one, &a))
                    .plus(&Tensor2::simple(&yy, &zz))
                    .minus(&Tensor2::simple(&t.act(gk, &yy), &t.act(gj, &zz)));
                assert_eq!(t.coproduct(&a), expect, "{:?}", (y, z, &els[gj]));
            }
        }
    }

    #[test]
    fn triple_commutator_piece() {
        // (e_1, e_2 + e_3) piece of Delta(ad_X1 ad_Y1 Z1) is X1 (x) ad_Y1 Z1 + X2 (x) ad_Y1 Z2
        let t = TensorAlgebra::new(&cube()).unwrap();
        let l = Tensor::letter;
        let x = t.ad(&l(0), &t.ad(&l(2), &l(4)).unwrap()).unwrap();
        let got = t.coproduct_piece_in_nichols(&x, &[1, 0, 0], &[0, 1, 1]);
        let want = t
            .pair_in_nichols(&l(0), &t.ad(&l(2), &l(4)).unwrap())
            .plus(&t.pair_in_nichols(&l(1), &t.ad(&l(2), &l(5)).unwrap()));
        assert_eq!(got, want);
    }

    #[test]
    fn dense_matrices() {
        let t = TensorAlgebra::new(&quantum_line(m1())).unwrap();
        let s2 = t.symmetrizer_matrix(2);
        assert_eq!(linalg::rank(s2), 0);
        let t = TensorAlgebra::new(&cube()).unwrap();
        let c = t.braid_matrix(2, 0);
        let s = t.symmetrizer_matrix(2);
        for (i, row) in s.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let id = if i == j { Cyclo::one() } else { Cyclo::zero() };
                assert_eq!(*x, &id + &c[i][j]);
            }
        }
    }

    #[test]
    fn cube_sets() {
        let s = AdCubeSets { i: 0, j: 1, k: 2 };
        assert!(s.in_s(&[1, 0, 0]) && s.in_s(&[1, 1, 0]) && !s.in_s(&[1, 1, 1]));
        assert!(s.in_t(&[0, 0, 1]) && s.in_t(&[1, 0, 1]) && !s.in_t(&[1, 1, 1]));
        let r = check_cd_conditions(3, &[s.generator(3)], |v| s.in_s(v), |v| s.in_t(v), &[], 5);
        assert!(r.all(), "{r:?}");
    }
}
