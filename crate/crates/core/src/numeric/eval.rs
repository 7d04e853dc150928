use std::sync::Arc;

use num_rational::BigRational;

use super::an::{moduli, rational_residue, AnValue};
use super::cache::{FmzvKey, ResidueCache};
use super::fmzv::PrimeContext;
use super::primes::PrimeWindow;
use crate::error::{Error, Result};
use crate::par;
use crate::poly::NCPoly;
use crate::word::Composition;

/// Evaluates compositions and `H^1` polynomials over a prime window, one task
/// per prime, optionally backed by a [`ResidueCache`].
#[derive(Debug, Clone, Default)]
pub struct Evaluator {
    cache: Option<Arc<ResidueCache>>,
    jobs: usize,
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator::default()
    }

    pub fn with_cache(mut self, cache: Arc<ResidueCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    /// `0` means all available cores, `1` is sequential.
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    pub fn cache(&self) -> Option<&Arc<ResidueCache>> {
        self.cache.as_ref()
    }

    /// Residues of every composition at one prime, consulting and filling the cache.
    fn residues_at(&self, comps: &[Composition], p: u64, depth: u32) -> Result<Vec<u128>> {
        let mut ctx: Option<PrimeContext> = None;
        let mut fresh = Vec::new();
        let mut out = Vec::with_capacity(comps.len());
        for k in comps {
            let key = FmzvKey {
                composition: k.clone(),
                prime: p,
                depth,
            };
            if let Some(r) = self.cache.as_ref().and_then(|c| c.get(&key)) {
                out.push(r);
                continue;
            }
            let ctx = match &mut ctx {
                Some(ctx) => ctx,
                slot => slot.insert(PrimeContext::new(p, depth)?),
            };
            let r = ctx.fmzv(k);
            if self.cache.is_some() {
                fresh.push((key, r));
            }
            out.push(r);
        }
        if let Some(cache) = &self.cache {
            cache.put_many(fresh)?;
        }
        Ok(out)
    }

    /// `ζ_{A_N}(k)` for several compositions at once; one [`AnValue`] per composition.
    pub fn zeta_many(
        &self,
        comps: &[Composition],
        window: &Arc<PrimeWindow>,
        depth: u32,
    ) -> Result<Vec<AnValue>> {
        let per_prime = par::try_map(self.jobs, window.primes(), |&p| {
            self.residues_at(comps, p, depth)
        })?;
        (0..comps.len())
            .map(|i| {
                let residues = per_prime.iter().map(|row| Some(row[i])).collect();
                AnValue::from_residues(window.clone(), depth, residues)
            })
            .collect()
    }

    pub fn zeta_window(
        &self,
        k: &Composition,
        window: &Arc<PrimeWindow>,
        depth: u32,
    ) -> Result<AnValue> {
        Ok(self
            .zeta_many(std::slice::from_ref(k), window, depth)?
            .pop()
            .expect("one composition in, one value out"))
    }

    /// `Z_{A_N}` on `H^1`: linear, with `Z(z_{k_1} ... z_{k_r}) = ζ_{A_N}(k_1, ..., k_r)`.
    pub fn eval_poly(
        &self,
        poly: &NCPoly,
        window: &Arc<PrimeWindow>,
        depth: u32,
    ) -> Result<AnValue> {
        Ok(self
            .eval_many(std::slice::from_ref(poly), window, depth)?
            .pop()
            .expect("one polynomial in, one value out"))
    }

    /// Evaluates several polynomials sharing one pass over the primes.
    pub fn eval_many(
        &self,
        polys: &[NCPoly],
        window: &Arc<PrimeWindow>,
        depth: u32,
    ) -> Result<Vec<AnValue>> {
        let mut comps: Vec<Composition> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut terms: Vec<Vec<(usize, BigRational)>> = Vec::with_capacity(polys.len());
        for poly in polys {
            let mut these = Vec::with_capacity(poly.len());
            for (w, c) in poly.terms() {
                let k = w.to_composition()?;
                let next = comps.len();
                let i = *index.entry(k.clone()).or_insert_with(|| {
                    comps.push(k);
                    next
                });
                these.push((i, c.clone()));
            }
            terms.push(these);
        }
        let mods = moduli(window, depth)?;
        let primes: Vec<(u64, usize)> =
            window.primes().iter().copied().zip(0..).collect();
        let per_prime = par::try_map(self.jobs, &primes, |&(p, pi)| -> Result<Vec<Option<u128>>> {
            let m = &mods[pi];
            let values = self.residues_at(&comps, p, depth)?;
            Ok(terms
                .iter()
                .map(|poly_terms| {
                    let mut acc = 0u128;
                    for (i, c) in poly_terms {
                        let c = rational_residue(c, m)?;
                        acc = m.add(acc, m.mul(c, values[*i]));
                    }
                    Some(acc)
                })
                .collect())
        })?;
        (0..polys.len())
            .map(|j| {
                let residues = per_prime.iter().map(|row| row[j]).collect();
                AnValue::from_residues(window.clone(), depth, residues)
            })
            .collect()
    }
}

/// Guards the evaluation map's domain with a readable error.
pub fn require_h1(p: &NCPoly) -> Result<()> {
    match p.terms().find(|(w, _)| !w.in_h1()) {
        Some((w, _)) => Err(Error::NotInH1(w.clone())),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::primes::primes_in;
    use crate::operators::harmonic;
    use crate::poly::rat;
    use crate::word::Word;

    fn window(lo: u64, hi: u64) -> Arc<PrimeWindow> {
        Arc::new(primes_in(lo, hi).unwrap())
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn zeta_window_examples() {
        let ev = Evaluator::new();
        let w = window(2, 50);
        let one = ev.zeta_window(&Composition::empty(), &w, 3).unwrap();
        assert!(one.residues().iter().all(|r| *r == Some(1)));
        let w = Arc::new(PrimeWindow::from_primes(vec![5, 7, 11]).unwrap());
        let h = ev.zeta_window(&comp(&[1]), &w, 1).unwrap();
        assert!(h.residues().iter().all(|r| *r == Some(0)));
    }

    #[test]
    fn depth_projection_is_consistent() {
        let ev = Evaluator::new();
        let w = window(2, 60);
        for parts in [&[1][..], &[2, 1], &[1, 1, 3]] {
            let deep = ev.zeta_window(&comp(parts), &w, 3).unwrap();
            for m in 1..=3 {
                assert_eq!(
                    deep.project_depth(m).unwrap(),
                    ev.zeta_window(&comp(parts), &w, m).unwrap()
                );
            }
        }
    }

    #[test]
    fn eval_poly_examples() {
        let ev = Evaluator::new();
        let w = window(2, 40);
        let one = ev.eval_poly(&NCPoly::one(), &w, 2).unwrap();
        assert!(one.residues().iter().all(|r| *r == Some(1)));

        let half = BigRational::new(1.into(), 2.into());
        let poly = &(&NCPoly::zk(1) * &NCPoly::zk(1)) + &NCPoly::zk(2).scale(&half);
        let v = ev.eval_poly(&poly, &w, 1).unwrap();
        assert_eq!(v.at(2), Some(None));
        assert!(v.iter().skip(1).all(|(_, r)| r.is_some()));

        let z2 = ev.eval_poly(&NCPoly::zk(2), &w, 2).unwrap();
        let two_z2 = ev.eval_poly(&NCPoly::zk(2).scale(&rat(2)), &w, 2).unwrap();
        assert_eq!(two_z2, z2.add(&z2).unwrap());

        assert!(matches!(
            ev.eval_poly(&NCPoly::x(), &w, 1),
            Err(Error::NotInH1(_))
        ));
    }

    #[test]
    fn stuffle_is_exact_at_every_prime() {
        let ev = Evaluator::new();
        let w = window(2, 97);
        let a = NCPoly::word(Word::parse("yxy").unwrap());
        let b = NCPoly::word(Word::parse("yyx").unwrap());
        let lhs = ev.eval_poly(&harmonic(&a, &b).unwrap(), &w, 2).unwrap();
        let rhs = ev
            .eval_poly(&a, &w, 2)
            .unwrap()
            .mul(&ev.eval_poly(&b, &w, 2).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sequential_parallel_and_cached_agree() {
        let comps = Composition::enumerate(5, 3);
        let w = window(2, 200);
        let seq = Evaluator::new().with_jobs(1).zeta_many(&comps, &w, 2).unwrap();
        let par = Evaluator::new().with_jobs(3).zeta_many(&comps, &w, 2).unwrap();
        assert_eq!(seq, par);
        let cache = Arc::new(ResidueCache::in_memory());
        let cached = Evaluator::new().with_cache(cache.clone());
        assert_eq!(cached.zeta_many(&comps, &w, 2).unwrap(), seq);
        assert_eq!(cache.len(), comps.len() * w.len());
        assert_eq!(cached.zeta_many(&comps, &w, 2).unwrap(), seq);
        assert_eq!(cache.stats().hits as usize, comps.len() * w.len());
    }
}
