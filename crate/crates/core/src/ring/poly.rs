use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::space::Word;

/// A word in the letters `x_0 .. x_{g-1}`.
pub type Monomial = Vec<usize>;

/// Indexing of all words of length `<= n`: by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBasis {
    g: usize,
    n: usize,
    offsets: Vec<usize>,
}

impl WordBasis {
    pub fn new(g: usize, n: usize) -> Self {
        let mut offsets = Vec::with_capacity(n + 2);
        let mut total = 0usize;
        let mut layer = 1usize;
        for _ in 0..=n {
            offsets.push(total);
            total += layer;
            layer *= g;
        }
        offsets.push(total);
        WordBasis { g, n, offsets }
    }

    pub fn len(&self) -> usize {
        self.offsets[self.n + 1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letters(&self) -> usize {
        self.g
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// First index of the words of length `k` (`k` may be `n + 1`).
    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k.min(self.n + 1)]
    }

    pub fn index(&self, w: &[usize]) -> usize {
        debug_assert!(w.len() <= self.n);
        self.offsets[w.len()] + w.iter().fold(0usize, |acc, &l| acc * self.g + l)
    }

    pub fn word(&self, index: usize) -> Monomial {
        let k = self.offsets.partition_point(|&o| o <= index) - 1;
        let mut r = index - self.offsets[k];
        let mut w = vec![0; k];
        for slot in w.iter_mut().rev() {
            *slot = r % self.g;
            r /= self.g;
        }
        w
    }

    /// All words of length exactly `k`, in basis order.
    pub fn words_of_length(&self, k: usize) -> impl Iterator<Item = Monomial> + '_ {
        (self.offset(k)..self.offset(k + 1)).map(|i| self.word(i))
    }

    /// All words of length at most `k`.
    pub fn words_up_to(&self, k: usize) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.offset(k + 1)).map(|i| self.word(i))
    }
}

/// Integer combination of words of length `<= n` in `g` letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    n: usize,
    g: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncPoly {
    pub fn zero(g: usize, n: usize) -> Self {
        TruncPoly { n, g, terms: BTreeMap::new() }
    }

    pub fn one(g: usize, n: usize) -> Self {
        Self::monomial(g, n, Vec::new(), BigInt::one())
    }

    pub fn constant(g: usize, n: usize, c: BigInt) -> Self {
        Self::monomial(g, n, Vec::new(), c)
    }

    /// `c · w`, or zero when `w` is longer than `n`.
    pub fn monomial(g: usize, n: usize, w: Monomial, c: BigInt) -> Self {
        assert!(w.iter().all(|&l| l < g), "letter out of range");
        let mut p = Self::zero(g, n);
        if w.len() <= n && !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn letter(g: usize, n: usize, i: usize) -> Self {
        Self::monomial(g, n, vec![i], BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(g: usize, n: usize, terms: I) -> Self {
        let mut p = Self::zero(g, n);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> usize {
        self.g
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, w: &[usize]) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · w`, dropping words longer than `n`.
    pub fn add_term(&mut self, w: Monomial, c: &BigInt) {
        if w.len() > self.n || c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    /// Degree-zero coefficient.
    pub fn augmentation(&self) -> BigInt {
        self.coeff(&[])
    }

    /// Lowest length of a word with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).min()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.g, self.n);
        }
        TruncPoly { n: self.n, g: self.g, terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Drops words longer than `m` and records `m` as the new degree.
    pub fn truncate(&self, m: usize) -> Self {
        TruncPoly {
            n: m,
            g: self.g,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= m).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Part made of words of length exactly `k`.
    pub fn homogeneous(&self, k: usize) -> Self {
        TruncPoly {
            n: self.n,
            g: self.g,
            terms: self.terms.iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// `self - ε(self)`.
    pub fn augmentation_free(&self) -> Self {
        let mut p = self.clone();
        p.terms.remove(&Vec::new());
        p
    }

    pub fn to_vector(&self, basis: &WordBasis) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); basis.len()];
        for (w, c) in &self.terms {
            if w.len() <= basis.degree() {
                v[basis.index(w)] = c.clone();
            }
        }
        v
    }

    pub fn from_vector(basis: &WordBasis, v: &[BigInt]) -> Self {
        let mut p = Self::zero(basis.letters(), basis.degree());
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(basis.word(i), c.clone());
            }
        }
        p
    }

    /// Word reversal, a ring anti-automorphism.
    pub fn reversed(&self) -> Self {
        TruncPoly {
            n: self.n,
            g: self.g,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.iter().rev().copied().collect(), c.clone()))
                .collect(),
        }
    }

    /// `x_i ↦ images[i]`. Images should have zero constant term so that
    /// truncation commutes with the substitution.
    pub fn substitute(&self, images: &[TruncPoly], n: usize) -> TruncPoly {
        let g2 = images.first().map_or(self.g, |p| p.g);
        let mut out = TruncPoly::zero(g2, n);
        for (w, c) in &self.terms {
            let mut m = TruncPoly::one(g2, n);
            for &l in w {
                m = &m * &images[l];
                if m.is_zero() {
                    break;
                }
            }
            out = &out + &m.scale(c);
        }
        out
    }

    fn check(&self, other: &TruncPoly) {
        assert_eq!(self.g, other.g, "polynomials over different alphabets");
    }
}

impl Add for &TruncPoly {
    type Output = TruncPoly;

    fn add(self, other: &TruncPoly) -> TruncPoly {
        self.check(other);
        let n = self.n.min(other.n);
        let mut out = self.truncate(n);
        for (w, c) in &other.terms {
            if w.len() > n {
                continue;
            }
            let e = out.terms.entry(w.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(w);
            }
        }
        out
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;

    fn neg(self) -> TruncPoly {
        TruncPoly { n: self.n, g: self.g, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;

    fn sub(self, other: &TruncPoly) -> TruncPoly {
        self + &(-other)
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;

    /// Truncated product: words longer than the smaller degree are dropped.
    fn mul(self, other: &TruncPoly) -> TruncPoly {
        self.check(other);
        let n = self.n.min(other.n);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (u, a) in &self.terms {
            if u.len() > n {
                continue;
            }
            for (v, b) in &other.terms {
                if u.len() + v.len() > n {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                *acc.entry(w).or_insert_with(BigInt::zero) += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncPoly { n, g: self.g, terms: acc }
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        entries.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        for (i, (w, c)) in entries.into_iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for &l in w.iter() {
                if self.g <= 3 {
                    write!(f, "{}", ["x", "y", "z"][l])?;
                } else {
                    write!(f, "x{l}")?;
                }
            }
        }
        Ok(())
    }
}

/// Image of a group word under `x_i ↦ 1 + x_i`, truncated at degree `n`.
pub fn magnus(w: &Word, g: usize, n: usize) -> TruncPoly {
    let mut out = TruncPoly::one(g, n);
    for l in &w.0 {
        let factor = if l.inverse {
            // (1 + x)^-1 = 1 - x + x^2 - ...
            let mut p = TruncPoly::zero(g, n);
            for k in 0..=n {
                let c = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                p.add_term(vec![l.gen; k], &c);
            }
            p
        } else {
            let mut p = TruncPoly::one(g, n);
            p.add_term(vec![l.gen], &BigInt::one());
            p
        };
        out = &out * &factor;
    }
    out
}
