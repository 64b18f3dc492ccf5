use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::lattice::{FgAbGroup, Lattice};
use crate::ring::{magnus, Monomial, TruncPoly, TruncRing};
use crate::space::Word;
use crate::{Error, Result};

/// Element of the `k`-fold tensor power of the word algebra, truncated at
/// total length `n`. A basis element is a tuple of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    k: usize,
    g: usize,
    n: usize,
    terms: BTreeMap<Vec<Monomial>, BigInt>,
}

fn total(t: &[Monomial]) -> usize {
    t.iter().map(Vec::len).sum()
}

impl MultiPoly {
    pub fn zero(k: usize, g: usize, n: usize) -> Self {
        MultiPoly { k, g, n, terms: BTreeMap::new() }
    }

    pub fn one(k: usize, g: usize, n: usize) -> Self {
        let mut p = Self::zero(k, g, n);
        p.add_term(vec![Vec::new(); k], &BigInt::one());
        p
    }

    /// `p` placed in factor `i`, with `1` elsewhere.
    pub fn embed(p: &TruncPoly, i: usize, k: usize, n: usize) -> Self {
        let mut out = Self::zero(k, p.letters(), n);
        for (w, c) in p.terms() {
            let mut t = vec![Vec::new(); k];
            t[i] = w.clone();
            out.add_term(t, c);
        }
        out
    }

    pub fn factors(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: Vec<Monomial>, c: &BigInt) {
        if total(&t) > self.n || c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
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

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.k, self.g, self.n);
        for (t, x) in &self.terms {
            out.add_term(t.clone(), &(x * c));
        }
        out
    }

    /// Replaces factor `i` by the two factors of its coproduct.
    pub fn coproduct_at(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.k + 1, self.g, self.n);
        for (t, c) in &self.terms {
            let rest = total(t) - t[i].len();
            for (u, v) in word_coproduct(&t[i], self.n - rest) {
                let mut nt = Vec::with_capacity(self.k + 1);
                nt.extend_from_slice(&t[..i]);
                nt.push(u);
                nt.push(v);
                nt.extend_from_slice(&t[i + 1..]);
                out.add_term(nt, c);
            }
        }
        out
    }

    /// Applies the augmentation to factor `i`, removing it.
    pub fn counit_at(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.k - 1, self.g, self.n);
        for (t, c) in &self.terms {
            if t[i].is_empty() {
                let mut nt = t.clone();
                nt.remove(i);
                out.add_term(nt, c);
            }
        }
        out
    }

    /// Single-factor view of a one-factor element.
    pub fn into_poly(self) -> TruncPoly {
        assert_eq!(self.k, 1);
        TruncPoly::from_terms(self.g, self.n, self.terms.into_iter().map(|(mut t, c)| (t.pop().unwrap(), c)))
    }

    /// Words of total length exactly `d`.
    pub fn homogeneous(&self, d: usize) -> MultiPoly {
        MultiPoly {
            k: self.k,
            g: self.g,
            n: self.n,
            terms: self.terms.iter().filter(|(t, _)| total(t) == d).map(|(t, c)| (t.clone(), c.clone())).collect(),
        }
    }

    fn check(&self, o: &MultiPoly) {
        assert_eq!((self.k, self.g), (o.k, o.g), "tensors of different shapes");
    }
}

/// Pairs `(u, v)` with `Δ(w) = Σ u ⊗ v` for `Δ(x) = x⊗1 + 1⊗x + x⊗x`:
/// every position of `w` goes to `u`, to `v`, or to both. Terms longer than
/// `n` in total are skipped.
pub fn word_coproduct(w: &[usize], n: usize) -> Vec<(Monomial, Monomial)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &l in w {
        let mut next = Vec::with_capacity(out.len() * 3);
        for (u, v) in out {
            if u.len() + v.len() < n {
                let mut u1 = u.clone();
                u1.push(l);
                next.push((u1, v.clone()));
                let mut v1 = v.clone();
                v1.push(l);
                next.push((u.clone(), v1));
            }
            if u.len() + v.len() + 2 <= n {
                let mut u2 = u;
                let mut v2 = v;
                u2.push(l);
                v2.push(l);
                next.push((u2, v2));
            }
        }
        out = next;
    }
    out
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.check(o);
        let mut out = MultiPoly::zero(self.k, self.g, self.n.min(o.n));
        for (t, c) in self.terms.iter().chain(o.terms.iter()) {
            out.add_term(t.clone(), c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self + &(-o)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    /// Factorwise concatenation.
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.check(o);
        let n = self.n.min(o.n);
        let mut out = MultiPoly::zero(self.k, self.g, n);
        for (s, a) in &self.terms {
            for (t, b) in &o.terms {
                if total(s) + total(t) > n {
                    continue;
                }
                let nt = s.iter().zip(t).map(|(u, v)| [u.as_slice(), v.as_slice()].concat()).collect();
                out.add_term(nt, &(a * b));
            }
        }
        out
    }
}

/// Coproduct of a single-factor element.
pub fn coproduct(p: &TruncPoly) -> MultiPoly {
    MultiPoly::embed(p, 0, 1, p.degree()).coproduct_at(0)
}

/// `(R ⊗ R) / (I ⊗ R + R ⊗ I)^{n+1}`, i.e. the truncated group ring of the
/// square of the group, on the basis of word pairs of total length `<= n`.
#[derive(Clone, Debug)]
pub struct TensorSquareRing {
    n: usize,
    g: usize,
    pairs: Vec<(Monomial, Monomial)>,
    index: HashMap<(Monomial, Monomial), usize>,
    ideal: Lattice,
}

impl TensorSquareRing {
    pub fn new(ring: &TruncRing) -> Self {
        let n = ring.degree();
        let g = ring.letters();
        let basis = ring.basis();
        let mut pairs = Vec::new();
        for t in 0..=n {
            for lu in 0..=t {
                for u in basis.words_of_length(lu) {
                    for v in basis.words_of_length(t - lu) {
                        pairs.push((u.clone(), v));
                    }
                }
            }
        }
        let index: HashMap<(Monomial, Monomial), usize> =
            pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let dim = pairs.len();
        let mut gens = Vec::new();
        // J ⊗ w and w ⊗ J, with J truncated to leave room for w
        for w_len in 0..n {
            let m = n - w_len;
            let inner = TruncRing::new(g, ring.relators().to_vec(), m);
            for j in inner.ideal().basis() {
                let jp = inner.from_vector(j);
                for w in basis.words_of_length(w_len) {
                    for side in 0..2 {
                        let mut v = vec![BigInt::zero(); dim];
                        for (u, c) in jp.terms() {
                            let key = if side == 0 { (u.clone(), w.clone()) } else { (w.clone(), u.clone()) };
                            v[index[&key]] += c;
                        }
                        gens.push(v);
                    }
                }
            }
        }
        let ideal = Lattice::from_generators(dim, gens);
        TensorSquareRing { n, g, pairs, index, ideal }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn ideal(&self) -> &Lattice {
        &self.ideal
    }

    pub fn vector(&self, t: &MultiPoly) -> Result<Vec<BigInt>> {
        if t.k != 2 || t.g != self.g || t.n < self.n {
            return Err(Error::RingMismatch);
        }
        let mut v = vec![BigInt::zero(); self.dim()];
        for (key, c) in &t.terms {
            if total(key) <= self.n {
                v[self.index[&(key[0].clone(), key[1].clone())]] += c;
            }
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &[BigInt]) -> MultiPoly {
        let mut out = MultiPoly::zero(2, self.g, self.n);
        for (i, c) in v.iter().enumerate() {
            let (u, w) = &self.pairs[i];
            out.add_term(vec![u.clone(), w.clone()], c);
        }
        out
    }

    pub fn canonical(&self, t: &MultiPoly) -> Result<MultiPoly> {
        Ok(self.from_vector(&self.ideal.remainder(&self.vector(t)?)))
    }

    pub fn is_zero(&self, t: &MultiPoly) -> Result<bool> {
        Ok(self.ideal.contains(&self.vector(t)?))
    }

    pub fn additive_group(&self) -> FgAbGroup {
        FgAbGroup::quotient(self.dim(), self.ideal.clone()).expect("ideal lies in the ambient lattice")
    }

    /// `magnus'(w) · magnus''(w)`, the image of the diagonal element `(w, w)`.
    pub fn diagonal_word(&self, w: &Word) -> MultiPoly {
        let m = magnus(w, self.g, self.n);
        &MultiPoly::embed(&m, 0, 2, self.n) * &MultiPoly::embed(&m, 1, 2, self.n)
    }
}
