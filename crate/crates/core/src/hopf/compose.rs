use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::fox::HomologyModel;
use crate::lattice::{FgAbGroup, Hom, IntMatrix, Subgroup};
use crate::ring::{PathClass, TruncPoly, TruncRing};
use crate::{Error, Result};

/// `beta ∘ alpha`: traverse `alpha`, then `beta`.
pub fn compose(ring: &TruncRing, beta: &PathClass, alpha: &PathClass) -> Result<PathClass> {
    beta.compose(ring, alpha)
}

/// `(β - ε(β))(α - ε(α))` in canonical coordinates of `I^2/I^{n+1}`.
pub fn refined_compose(ring: &TruncRing, beta: &TruncPoly, alpha: &TruncPoly) -> Result<Vec<BigInt>> {
    let target = ring.ideal_quotient(2)?;
    let p = ring.mul(&beta.augmentation_free(), &alpha.augmentation_free())?;
    target.reduce(&ring.vector(&p))
}

/// Which factor of `H^{bc}_μ ⊗ H^{ab}_ν` a lift belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The `β` factor, paths `b -> c`.
    Left,
    /// The `α` factor, paths `a -> b`.
    Right,
}

/// Element of `⊕_{μ+ν=n} H_μ ⊗ H_ν`; `comps[μ]` is a matrix over canonical
/// coordinates of `H^{bc}_μ` (rows) and `H^{ab}_{n-μ}` (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElement {
    pub n: usize,
    pub comps: Vec<Vec<Vec<BigInt>>>,
}

/// Models and truncation maps needed to build `K` and the composition on it.
#[derive(Clone, Debug)]
pub struct KContext {
    n: usize,
    left: Vec<HomologyModel>,
    right: Vec<HomologyModel>,
    target: HomologyModel,
    tau_left: Vec<Hom>,
    tau_right: Vec<Hom>,
    lifts_left: Vec<Vec<TruncPoly>>,
    lifts_right: Vec<Vec<TruncPoly>>,
}

fn gcd_modulus(d: &BigInt, e: &BigInt) -> BigInt {
    d.gcd(e)
}

fn reduce_mod(x: BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        x
    } else {
        x.mod_floor(m)
    }
}

fn model_lifts(m: &HomologyModel, n: usize) -> Result<Vec<TruncPoly>> {
    let dim = m.group().canonical_dim();
    (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            let p = m.to_ring(&e)?;
            Ok(TruncPoly::from_terms(p.letters(), n, p.terms().iter().map(|(w, c)| (w.clone(), c.clone()))))
        })
        .collect()
}

impl KContext {
    /// `left[μ]` models paths `b -> c`, `right[ν]` paths `a -> b`, both for
    /// degrees `0..=n`; `target` models paths `a -> c` in degree `n >= 2`.
    pub fn new(left: Vec<HomologyModel>, right: Vec<HomologyModel>, target: HomologyModel) -> Result<Self> {
        let n = target.degree();
        if n < 2 {
            return Err(Error::BadDegree(n));
        }
        for tower in [&left, &right] {
            if tower.len() != n + 1 || tower.iter().enumerate().any(|(k, m)| m.degree() != k) {
                return Err(Error::NonConsecutive(n, tower.len()));
            }
        }
        let (a, b) = right[0].endpoints();
        let (b2, c) = left[0].endpoints();
        if b != b2 || target.endpoints() != (a, c) {
            return Err(Error::EndpointMismatch("models do not form a composable triple".into()));
        }
        let tau = |t: &[HomologyModel]| (0..n).map(|k| t[k + 1].truncation(&t[k])).collect::<Result<Vec<_>>>();
        let tau_left = tau(&left)?;
        let tau_right = tau(&right)?;
        let lifts_left = left.iter().map(|m| model_lifts(m, n)).collect::<Result<Vec<_>>>()?;
        let lifts_right = right.iter().map(|m| model_lifts(m, n)).collect::<Result<Vec<_>>>()?;
        Ok(KContext { n, left, right, target, tau_left, tau_right, lifts_left, lifts_right })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> &HomologyModel {
        &self.target
    }

    /// Ring lifts of the canonical generators of `H_k` on one side.
    pub fn lifts(&self, side: Side, k: usize) -> &[TruncPoly] {
        match side {
            Side::Left => &self.lifts_left[k],
            Side::Right => &self.lifts_right[k],
        }
    }

    /// Replaces a lift. Any element of the same class modulo `I^{k+1}` is
    /// valid, and [`KContext::compose_homological`] must not notice.
    pub fn set_lift(&mut self, side: Side, k: usize, i: usize, p: TruncPoly) {
        match side {
            Side::Left => self.lifts_left[k][i] = p,
            Side::Right => self.lifts_right[k][i] = p,
        }
    }

    fn moduli(&self, mu: usize, nu: usize) -> Vec<Vec<BigInt>> {
        let dl = self.left[mu].group().moduli();
        let dr = self.right[nu].group().moduli();
        dl.iter().map(|d| dr.iter().map(|e| gcd_modulus(d, e)).collect()).collect()
    }

    fn normalize(&self, mu: usize, nu: usize, x: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
        let m = self.moduli(mu, nu);
        x.into_iter()
            .zip(m)
            .map(|(row, mrow)| row.into_iter().zip(&mrow).map(|(v, d)| reduce_mod(v, d)).collect())
            .collect()
    }

    pub fn zero(&self) -> KElement {
        let comps = (0..=self.n)
            .map(|mu| {
                let r = self.left[mu].group().canonical_dim();
                let c = self.right[self.n - mu].group().canonical_dim();
                vec![vec![BigInt::zero(); c]; r]
            })
            .collect();
        KElement { n: self.n, comps }
    }

    /// `(τ ⊗ 1) x` for `x` in `H_{μ+1} ⊗ H_ν`.
    fn tau_left_apply(&self, mu: usize, x: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let t = self.tau_left[mu].matrix();
        let cols = x.first().map_or(0, Vec::len);
        let xm = IntMatrix::from_rows(cols, x.to_vec());
        t.mul(&xm).to_rows()
    }

    /// `(1 ⊗ τ) x` for `x` in `H_μ ⊗ H_{ν+1}`.
    fn tau_right_apply(&self, nu: usize, x: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let s = self.tau_right[nu].matrix();
        let cols = x.first().map_or(s.cols(), Vec::len);
        let xm = IntMatrix::from_rows(cols, x.to_vec());
        xm.mul(&s.transpose()).to_rows()
    }

    /// Components in `⊕_{μ+ν=n-1} H_μ ⊗ H_ν`, indexed by `μ`.
    pub fn compatibility(&self, k: &KElement) -> Vec<Vec<Vec<BigInt>>> {
        let n = self.n;
        (0..n)
            .map(|mu| {
                let nu = n - 1 - mu;
                let a = self.tau_left_apply(mu, &k.comps[mu + 1]);
                let b = self.tau_right_apply(nu, &k.comps[mu]);
                let diff: Vec<Vec<BigInt>> =
                    a.iter().zip(&b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect();
                self.normalize(mu, nu, diff)
            })
            .collect()
    }

    pub fn contains(&self, k: &KElement) -> bool {
        self.compatibility(k).iter().flatten().flatten().all(Zero::is_zero)
    }

    fn flat_moduli(&self, total: usize) -> Vec<BigInt> {
        (0..=total).flat_map(|mu| self.moduli(mu, total - mu).into_iter().flatten()).collect()
    }

    fn flatten(k: &KElement) -> Vec<BigInt> {
        k.comps.iter().flatten().flatten().cloned().collect()
    }

    fn unflatten(&self, v: &[BigInt]) -> KElement {
        let mut out = self.zero();
        let mut it = v.iter();
        for comp in out.comps.iter_mut() {
            for row in comp.iter_mut() {
                for x in row.iter_mut() {
                    *x = it.next().expect("vector length").clone();
                }
            }
        }
        out
    }

    /// The direct sum over `μ + ν = n` and the subgroup `K` inside it.
    pub fn k_kernel(&self) -> Result<(FgAbGroup, Subgroup)> {
        let src = self.flat_moduli(self.n);
        let dst = self.flat_moduli(self.n - 1);
        let mut m = IntMatrix::zeros(dst.len(), src.len());
        for j in 0..src.len() {
            let mut e = vec![BigInt::zero(); src.len()];
            e[j] = BigInt::from(1);
            let img: Vec<BigInt> = self.compatibility(&self.unflatten(&e)).into_iter().flatten().flatten().collect();
            for (i, x) in img.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        let hom = Hom::from_moduli(src.clone(), dst, m)?;
        Ok((FgAbGroup::from_moduli(&src), hom.kernel()))
    }

    /// Canonical-coordinate vector of `k` in the direct sum.
    pub fn coordinates(&self, k: &KElement) -> Vec<BigInt> {
        Self::flatten(k)
    }

    pub fn from_coordinates(&self, v: &[BigInt]) -> KElement {
        let k = self.unflatten(v);
        KElement { n: k.n, comps: (0..=self.n).map(|mu| self.normalize(mu, self.n - mu, k.comps[mu].clone())).collect() }
    }

    /// `Σ_{μ+ν=n} κ_μ(β) ⊗ κ_ν(α)`.
    pub fn embed(&self, beta: &TruncPoly, alpha: &TruncPoly) -> Result<KElement> {
        let comps = (0..=self.n)
            .map(|mu| {
                let nu = self.n - mu;
                let kb = self.left[mu].kappa_poly(beta)?;
                let ka = self.right[nu].kappa_poly(alpha)?;
                let outer = kb.iter().map(|x| ka.iter().map(|y| x * y).collect()).collect();
                Ok(self.normalize(mu, nu, outer))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KElement { n: self.n, comps })
    }

    fn pairing(&self, mu: usize, nu: usize, x: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
        let dim = self.target.group().canonical_dim();
        let mut acc = vec![BigInt::zero(); dim];
        for (i, row) in x.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let p = &self.lifts_left[mu][i] * &self.lifts_right[nu][j];
                let v = self.target.kappa_poly(&p)?;
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += c * b;
                }
            }
        }
        Ok(acc)
    }

    /// The composition `K -> H^{ac}_n` assembled from ring lifts.
    pub fn compose_homological(&self, k: &KElement) -> Result<Vec<BigInt>> {
        if !self.contains(k) {
            return Err(Error::NotInKernel);
        }
        let n = self.n;
        let dim = self.target.group().canonical_dim();
        let mut acc = vec![BigInt::zero(); dim];
        for mu in 0..=n {
            for (a, b) in acc.iter_mut().zip(self.pairing(mu, n - mu, &k.comps[mu])?) {
                *a += b;
            }
        }
        for mu in 0..n {
            let nu = n - 1 - mu;
            let x = self.normalize(mu, nu, self.tau_left_apply(mu, &k.comps[mu + 1]));
            for (a, b) in acc.iter_mut().zip(self.pairing(mu, nu, &x)?) {
                *a -= b;
            }
        }
        Ok(self.target.group().normalize(&acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::model_tower;
    use crate::ring::build_ring;
    use crate::space::{builtin_space, fundamental_presentation, Word};

    #[test]
    fn refined_expansion() {
        let (ss, bp) = builtin_space("wedge(2)").unwrap();
        let gp = fundamental_presentation(&ss, bp);
        let ring = build_ring(&gp, 2).unwrap();
        let x = ring.magnus(&Word::generator(0));
        let y = ring.magnus(&Word::generator(1));
        let got = refined_compose(&ring, &x, &y).unwrap();
        let xy = TruncPoly::monomial(2, 2, vec![0, 1], BigInt::from(1));
        let expected = ring.ideal_quotient(2).unwrap().reduce(&ring.vector(&xy)).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn loop_composition_matches_kappa() {
        let (ss, bp) = builtin_space("wedge(2)").unwrap();
        let gp = fundamental_presentation(&ss, bp);
        let n = 2;
        let ring = build_ring(&gp, n).unwrap();
        let tower = model_tower(&gp, n).unwrap();
        let ctx = KContext::new(tower.clone(), tower.clone(), tower[n].clone()).unwrap();
        let x = ring.magnus(&Word::generator(0));
        let y = ring.magnus(&Word::generator(1));
        let k = ctx.embed(&y, &x).unwrap();
        assert!(ctx.contains(&k));
        let got = ctx.compose_homological(&k).unwrap();
        let refined = ring.mul(&y.augmentation_free(), &x.augmentation_free()).unwrap();
        assert_eq!(got, tower[n].kappa_poly(&refined).unwrap());
        assert!(ctx.compose_homological(&ctx.zero()).unwrap().iter().all(Zero::is_zero));
        let one = ring.one();
        assert!(ctx.compose_homological(&ctx.embed(&one, &one).unwrap()).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn whisker_composition_uses_degree_zero() {
        let (ss, bp) = builtin_space("interval_wedge(1)").unwrap();
        let gp_ab = fundamental_presentation(&ss, bp);
        let gp_aa = fundamental_presentation(&ss, crate::space::Basepoints::same(bp.a));
        let n = 2;
        let ring = build_ring(&gp_ab, n).unwrap();
        let loops = model_tower(&gp_aa, n).unwrap();
        let paths = model_tower(&gp_ab, n).unwrap();
        // β: a -> b, α: a -> a
        let ctx = KContext::new(paths.clone(), loops, paths[n].clone()).unwrap();
        let x = ring.magnus(&Word::generator(0));
        let beta = ring.mul(&x, &x).unwrap();
        let k = ctx.embed(&beta, &x).unwrap();
        assert!(!k.comps[0].is_empty());
        let got = ctx.compose_homological(&k).unwrap();
        let expected = ring.mul(&beta, &x.augmentation_free()).unwrap();
        assert_eq!(got, paths[n].kappa_poly(&expected).unwrap());
    }
}
