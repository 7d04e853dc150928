use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on window size the sieve will accept.
pub const MAX_PRIME_BOUND: u64 = 100_000_000;

/// The primes of `[lo, hi]`, ascending. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeWindow {
    lo: u64,
    hi: u64,
    primes: Vec<u64>,
}

impl PrimeWindow {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo < 2 || lo > hi {
            return Err(Error::Config(format!(
                "prime window needs 2 <= lo <= hi, got {lo}..{hi}"
            )));
        }
        if hi > MAX_PRIME_BOUND {
            return Err(Error::Config(format!(
                "prime window upper bound {hi} exceeds {MAX_PRIME_BOUND}"
            )));
        }
        let primes: Vec<u64> = sieve(hi).into_iter().filter(|&p| p >= lo).collect();
        if primes.is_empty() {
            return Err(Error::Config(format!("no primes in {lo}..{hi}")));
        }
        Ok(PrimeWindow { lo, hi, primes })
    }

    /// A window holding exactly the given primes.
    pub fn from_primes(mut primes: Vec<u64>) -> Result<Self> {
        primes.sort_unstable();
        primes.dedup();
        let (Some(&lo), Some(&hi)) = (primes.first(), primes.last()) else {
            return Err(Error::Config("empty prime list".into()));
        };
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Config(format!("{bad} is not prime")));
        }
        Ok(PrimeWindow { lo, hi, primes })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

impl fmt::Display for PrimeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

pub fn primes_in(lo: u64, hi: u64) -> Result<PrimeWindow> {
    PrimeWindow::new(lo, hi)
}

/// Sieve of Eratosthenes up to and including `n`.
pub fn sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
