//! Arithmetic in `Z / p^N Z`.
//!
//! Residues are `u128` below the modulus. Products take the cheapest path the
//! modulus allows: native `u64` below `2^32`, a `u128` product below `2^64`,
//! and a big-integer product above that. Moduli must stay below `2^127` so
//! that sums of two residues never overflow.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    depth: u32,
    m: u128,
}

const MAX_MODULUS: u128 = 1 << 127;

impl Modulus {
    pub fn new(p: u64, depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Config("depth N must be >= 1".into()));
        }
        let mut m: u128 = 1;
        for _ in 0..depth {
            m = m
                .checked_mul(p as u128)
                .filter(|&m| m < MAX_MODULUS)
                .ok_or_else(|| Error::Config(format!("{p}^{depth} exceeds 2^127")))?;
        }
        Ok(Modulus { p, depth, m })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn value(&self) -> u128 {
        self.m
    }

    #[inline]
    pub fn reduce(&self, a: u128) -> u128 {
        a % self.m
    }

    /// Reduces a signed integer into `[0, m)`.
    pub fn reduce_signed(&self, a: &num_bigint::BigInt) -> u128 {
        let m = num_bigint::BigInt::from(self.m);
        let r = ((a % &m) + &m) % &m;
        r.to_u128().expect("reduced below modulus")
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        if self.m <= u32::MAX as u128 {
            ((a as u64 * b as u64) % self.m as u64) as u128
        } else if self.m <= u64::MAX as u128 {
            (a * b) % self.m
        } else {
            let prod = BigUint::from(a) * BigUint::from(b) % BigUint::from(self.m);
            prod.to_u128().expect("reduced below modulus")
        }
    }

    pub fn pow(&self, mut base: u128, mut exp: u64) -> u128 {
        let mut acc = self.reduce(1);
        base = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of `a` modulo `p^N`: Fermat inverse modulo `p`, then Newton
    /// lifting `r <- r (2 - a r)`, doubling the precision each round.
    pub fn inv(&self, a: u128) -> Result<u128> {
        let p = self.p as u128;
        if a % p == 0 {
            return Err(Error::NotInvertible {
                a: a.to_string(),
                p: self.p,
                depth: self.depth,
            });
        }
        let base = Modulus { p: self.p, depth: 1, m: p };
        let mut r = base.pow(a % p, self.p - 2);
        let mut precision = 1u32;
        while precision < self.depth {
            precision = (2 * precision).min(self.depth);
            let step = Modulus::new(self.p, precision).expect("smaller than self");
            let a_mod = step.reduce(a);
            let ar = step.mul(a_mod, r);
            r = step.mul(r, step.sub(step.reduce(2), ar));
        }
        Ok(r)
    }

    /// Inverses of `1, 2, ..., n` (each `< p`) by one inversion and prefix products.
    pub fn batch_inverses(&self, n: u64) -> Vec<u128> {
        let n = n as usize;
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(self.reduce(1));
        for i in 1..=n {
            let prev = prefix[i - 1];
            prefix.push(self.mul(prev, i as u128));
        }
        let mut inv_all = self.inv(prefix[n]).expect("product of units is a unit");
        let mut out = vec![0u128; n + 1];
        for i in (1..=n).rev() {
            out[i] = self.mul(inv_all, prefix[i - 1]);
            inv_all = self.mul(inv_all, i as u128);
        }
        out
    }
}

/// `a^{-1} mod p^N` for an integer `a`.
pub fn inv_mod_pn(a: i64, p: u64, depth: u32) -> Result<u128> {
    let m = Modulus::new(p, depth)?;
    let r = m.reduce_signed(&num_bigint::BigInt::from(a));
    m.inv(r).map_err(|_| Error::NotInvertible {
        a: a.to_string(),
        p,
        depth,
    })
}
