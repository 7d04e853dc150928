//! Truncated multiple harmonic sums `sum_{0 < n_1 < ... < n_r < p} n_1^{-k_1} ... n_r^{-k_r} mod p^N`.

use super::modular::Modulus;
use crate::error::Result;
use crate::word::Composition;

/// Per-prime tables shared by every composition evaluated at that prime:
/// the inverses of `1..p` and their powers, filled in on demand.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    modulus: Modulus,
    // inv_powers[k - 1][m] = m^{-k}
    inv_powers: Vec<Vec<u128>>,
}

impl PrimeContext {
    pub fn new(p: u64, depth: u32) -> Result<Self> {
        let modulus = Modulus::new(p, depth)?;
        let inverses = modulus.batch_inverses(p - 1);
        Ok(PrimeContext {
            modulus,
            inv_powers: vec![inverses],
        })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn ensure_power(&mut self, k: u32) {
        while self.inv_powers.len() < k as usize {
            let m = &self.modulus;
            let base = &self.inv_powers[0];
            let last = self.inv_powers.last().expect("first row present");
            let next = last.iter().zip(base).map(|(&a, &b)| m.mul(a, b)).collect();
            self.inv_powers.push(next);
        }
    }

    /// The ascending DP `s_j(m) = s_j(m-1) + s_{j-1}(m-1) m^{-k_j}`, `O(p r)` products.
    pub fn fmzv(&mut self, k: &Composition) -> u128 {
        let parts = k.parts();
        let r = parts.len();
        if let Some(&max) = parts.iter().max() {
            self.ensure_power(max);
        }
        let m = self.modulus;
        let p = m.prime() as usize;
        let mut s = vec![0u128; r + 1];
        s[0] = m.reduce(1);
        for n in 1..p {
            for j in (1..=r.min(n)).rev() {
                let term = m.mul(s[j - 1], self.inv_powers[parts[j - 1] as usize - 1][n]);
                s[j] = m.add(s[j], term);
            }
        }
        s[r]
    }
}

/// `ζ_{A_N}(k)` at the prime `p`. The empty composition gives 1.
pub fn fmzv(k: &Composition, p: u64, depth: u32) -> Result<u128> {
    Ok(PrimeContext::new(p, depth)?.fmzv(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct nested-loop summation with exact rationals, reduced at the end.
    fn brute(k: &[u32], p: u64, depth: u32) -> u128 {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        fn rec(k: &[u32], lo: u64, p: u64, acc: BigRational, total: &mut BigRational) {
            if k.is_empty() {
                *total += acc;
                return;
            }
            for n in lo..p {
                let denom = BigInt::from(n).pow(k[0]);
                rec(&k[1..], n + 1, p, &acc / BigRational::from_integer(denom), total);
            }
        }
        let mut total = BigRational::from_integer(BigInt::from(0));
        rec(k, 1, p, BigRational::from_integer(BigInt::from(1)), &mut total);
        let m = Modulus::new(p, depth).unwrap();
        let num = m.reduce_signed(total.numer());
        let den = m.reduce_signed(total.denom());
        m.mul(num, m.inv(den).unwrap())
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(fmzv(&comp(&[1]), 5, 1).unwrap(), 0);
        assert_eq!(fmzv(&comp(&[1, 1]), 3, 1).unwrap(), 2);
        assert_eq!(fmzv(&Composition::empty(), 7, 3).unwrap(), 1);
        // deeper than p - 1: empty sum
        assert_eq!(fmzv(&comp(&[1, 1, 1]), 3, 2).unwrap(), 0);
    }

    #[test]
    fn pinned_value_for_1_2_at_49() {
        // Frozen from the nested-loop oracle over 1 <= a < b <= 6.
        let oracle = brute(&[1, 2], 7, 2);
        assert_eq!(oracle, 17);
        assert_eq!(fmzv(&comp(&[1, 2]), 7, 2).unwrap(), oracle);
    }

    #[test]
    fn dp_matches_brute_force_small() {
        for parts in [&[2][..], &[1, 3], &[2, 1, 1], &[3, 3]] {
            for &p in &[2u64, 3, 5, 7, 11, 13] {
                for depth in 1..=3 {
                    assert_eq!(
                        fmzv(&comp(parts), p, depth).unwrap(),
                        brute(parts, p, depth),
                        "k={parts:?} p={p} N={depth}"
                    );
                }
            }
        }
    }
}
