//! Finite-window values modelling elements of `A_N`: one residue modulo `p^N`
//! per prime of a window, or an undefined marker.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::modular::Modulus;
use super::primes::PrimeWindow;
use crate::error::{Error, Result};
use crate::report::{Site, Status, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnValue {
    depth: u32,
    window: Arc<PrimeWindow>,
    residues: Vec<Option<u128>>,
}

impl AnValue {
    /// Builds a value from per-prime residues (reduced on the way in).
    pub fn from_residues(
        window: Arc<PrimeWindow>,
        depth: u32,
        residues: Vec<Option<u128>>,
    ) -> Result<Self> {
        if residues.len() != window.len() {
            return Err(Error::Config(format!(
                "{} residues for a window of {} primes",
                residues.len(),
                window.len()
            )));
        }
        let moduli = moduli(&window, depth)?;
        let residues = residues
            .into_iter()
            .zip(&moduli)
            .map(|(r, m)| r.map(|r| m.reduce(r)))
            .collect();
        Ok(AnValue { depth, window, residues })
    }

    /// The image of a rational constant; undefined where `p` divides the denominator.
    pub fn constant(c: &BigRational, window: Arc<PrimeWindow>, depth: u32) -> Result<Self> {
        let residues = moduli(&window, depth)?
            .iter()
            .map(|m| rational_residue(c, m))
            .collect();
        Ok(AnValue { depth, window, residues })
    }

    pub fn one(window: Arc<PrimeWindow>, depth: u32) -> Result<Self> {
        AnValue::constant(&BigRational::from_integer(BigInt::from(1)), window, depth)
    }

    pub fn zero(window: Arc<PrimeWindow>, depth: u32) -> Result<Self> {
        AnValue::constant(&BigRational::zero(), window, depth)
    }

    /// `𝒑^n`: the residue `p^n mod p^N` at each prime (zero once `n >= N`).
    pub fn pbold_pow(n: u32, window: Arc<PrimeWindow>, depth: u32) -> Result<Self> {
        let residues = moduli(&window, depth)?
            .iter()
            .map(|m| Some(m.pow(m.prime() as u128, n as u64)))
            .collect();
        Ok(AnValue { depth, window, residues })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn window(&self) -> &Arc<PrimeWindow> {
        &self.window
    }

    pub fn residues(&self) -> &[Option<u128>] {
        &self.residues
    }

    /// `(prime, residue)` pairs in prime order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, Option<u128>)> + '_ {
        self.window.primes().iter().copied().zip(self.residues.iter().copied())
    }

    pub fn at(&self, p: u64) -> Option<Option<u128>> {
        let i = self.window.primes().binary_search(&p).ok()?;
        Some(self.residues[i])
    }

    fn check_compatible(&self, other: &AnValue) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::Config(format!(
                "depth mismatch: {} vs {}",
                self.depth, other.depth
            )));
        }
        if !Arc::ptr_eq(&self.window, &other.window) && self.window != other.window {
            return Err(Error::Config(format!(
                "window mismatch: {} vs {}",
                self.window, other.window
            )));
        }
        Ok(())
    }

    fn zip_with<F>(&self, other: &AnValue, f: F) -> Result<AnValue>
    where
        F: Fn(&Modulus, u128, u128) -> u128,
    {
        self.check_compatible(other)?;
        let mods = moduli(&self.window, self.depth)?;
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(&mods)
            .map(|((a, b), m)| Some(f(m, (*a)?, (*b)?)))
            .collect();
        Ok(AnValue {
            depth: self.depth,
            window: self.window.clone(),
            residues,
        })
    }

    pub fn add(&self, other: &AnValue) -> Result<AnValue> {
        self.zip_with(other, Modulus::add)
    }

    pub fn sub(&self, other: &AnValue) -> Result<AnValue> {
        self.zip_with(other, Modulus::sub)
    }

    pub fn mul(&self, other: &AnValue) -> Result<AnValue> {
        self.zip_with(other, Modulus::mul)
    }

    pub fn neg(&self) -> AnValue {
        let mods = moduli(&self.window, self.depth).expect("validated at construction");
        AnValue {
            depth: self.depth,
            window: self.window.clone(),
            residues: self
                .residues
                .iter()
                .zip(&mods)
                .map(|(r, m)| r.map(|r| m.neg(r)))
                .collect(),
        }
    }

    /// `π_m`: reduction from depth `N` to depth `m <= N`.
    pub fn project_depth(&self, m: u32) -> Result<AnValue> {
        if m == 0 || m > self.depth {
            return Err(Error::Config(format!(
                "cannot project depth {} to {m}",
                self.depth
            )));
        }
        let mods = moduli(&self.window, m)?;
        Ok(AnValue {
            depth: m,
            window: self.window.clone(),
            residues: self
                .residues
                .iter()
                .zip(&mods)
                .map(|(r, md)| r.map(|r| md.reduce(r)))
                .collect(),
        })
    }

    pub fn is_zero_at_or_above(&self, floor: u64) -> bool {
        self.iter()
            .filter(|(p, _)| *p >= floor)
            .all(|(_, r)| r.map_or(true, |r| r == 0))
    }
}

/// Per-prime comparison. Primes below `floor` are reported as informational and
/// primes where either side is undefined are skipped.
pub fn an_eq(lhs: &AnValue, rhs: &AnValue, floor: u64) -> Result<Vec<Verdict>> {
    lhs.check_compatible(rhs)?;
    Ok(lhs
        .iter()
        .zip(rhs.residues.iter())
        .map(|((p, a), b)| {
            let site = Site::Prime(p);
            match (a, b) {
                (Some(a), Some(b)) => {
                    let held = a == *b;
                    let status = match (p >= floor, held) {
                        (true, true) => Status::Pass,
                        (true, false) => Status::Fail,
                        (false, held) => Status::BelowFloor { held },
                    };
                    let v = Verdict::new(site, status);
                    if held {
                        v
                    } else {
                        v.with_detail(format!("lhs={a} rhs={b} mod {p}^{}", lhs.depth))
                    }
                }
                _ => Verdict::new(site, Status::Undefined),
            }
        })
        .collect())
}

pub(crate) fn moduli(window: &PrimeWindow, depth: u32) -> Result<Vec<Modulus>> {
    window.primes().iter().map(|&p| Modulus::new(p, depth)).collect()
}

/// `a/b mod p^N`, or `None` when `p | b`.
pub(crate) fn rational_residue(c: &BigRational, m: &Modulus) -> Option<u128> {
    let p = BigInt::from(m.prime());
    if (c.denom() % &p).is_zero() {
        return None;
    }
    let num = m.reduce_signed(c.numer());
    let den = m.reduce_signed(c.denom());
    Some(m.mul(num, m.inv(den).ok()?))
}

impl fmt::Display for AnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, r)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match r {
                Some(r) => write!(f, "{p}:{r}")?,
                None => write!(f, "{p}:undef")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::primes::primes_in;

    fn window(lo: u64, hi: u64) -> Arc<PrimeWindow> {
        Arc::new(primes_in(lo, hi).unwrap())
    }

    #[test]
    fn pbold_examples() {
        let w = window(2, 30);
        let v = AnValue::pbold_pow(3, w.clone(), 3).unwrap();
        assert!(v.residues().iter().all(|r| *r == Some(0)));
        let five = Arc::new(PrimeWindow::from_primes(vec![5]).unwrap());
        let v = AnValue::pbold_pow(1, five, 2).unwrap();
        assert_eq!(v.residues(), &[Some(5)]);

        let vals: Vec<Option<u128>> = (0..w.len()).map(|i| Some(i as u128 * 7 + 1)).collect();
        let v = AnValue::from_residues(w.clone(), 2, vals).unwrap();
        let unit = AnValue::pbold_pow(0, w, 2).unwrap();
        assert_eq!(v.mul(&unit).unwrap(), v);
    }

    #[test]
    fn undefined_propagates() {
        let w = window(2, 7);
        let half = AnValue::constant(&BigRational::new(1.into(), 2.into()), w.clone(), 1).unwrap();
        assert_eq!(half.at(2), Some(None));
        assert_eq!(half.at(3), Some(Some(2)));
        let one = AnValue::one(w.clone(), 1).unwrap();
        let sum = half.add(&one).unwrap();
        assert_eq!(sum.at(2), Some(None));
        let verdicts = an_eq(&sum, &sum, 2).unwrap();
        assert_eq!(verdicts[0].status, Status::Undefined);
        assert!(verdicts[1..].iter().all(|v| v.status == Status::Pass));
    }

    #[test]
    fn mismatches_are_configuration_errors() {
        let a = AnValue::one(window(2, 7), 1).unwrap();
        let b = AnValue::one(window(2, 11), 1).unwrap();
        let c = AnValue::one(window(2, 7), 2).unwrap();
        assert!(a.add(&b).is_err());
        assert!(a.mul(&c).is_err());
        assert!(c.project_depth(3).is_err());
        assert_eq!(c.project_depth(1).unwrap(), a);
    }

    #[test]
    fn floor_marks_small_primes_informational() {
        let w = window(2, 13);
        let a = AnValue::from_residues(w.clone(), 1, vec![Some(1); w.len()]).unwrap();
        let b = AnValue::zero(w, 1).unwrap();
        let verdicts = an_eq(&a, &b, 7).unwrap();
        let statuses: Vec<Status> = verdicts.iter().map(|v| v.status).collect();
        assert_eq!(
            statuses,
            [
                Status::BelowFloor { held: false },
                Status::BelowFloor { held: false },
                Status::BelowFloor { held: false },
                Status::Fail,
                Status::Fail,
                Status::Fail,
            ]
        );
    }
}
