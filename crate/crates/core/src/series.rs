//! Truncated power series in commuting `u`, `v` with noncommutative polynomial coefficients.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::NCPoly;

/// Truncation caps: coefficients of `u^m v^n` are kept for `m <= max_u`, `n <= max_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeriesCaps {
    pub max_u: usize,
    pub max_v: usize,
}

impl SeriesCaps {
    pub fn new(max_u: usize, max_v: usize) -> Self {
        SeriesCaps { max_u, max_v }
    }

    fn slots(&self) -> usize {
        (self.max_u + 1) * (self.max_v + 1)
    }
}

impl fmt::Display for SeriesCaps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.max_u, self.max_v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    caps: SeriesCaps,
    // row-major in u: index = m * (max_v + 1) + n
    coeffs: Vec<NCPoly>,
}

impl BiSeries {
    pub fn zero(caps: SeriesCaps) -> Self {
        BiSeries {
            caps,
            coeffs: vec![NCPoly::zero(); caps.slots()],
        }
    }

    pub fn one(caps: SeriesCaps) -> Self {
        BiSeries::embed(NCPoly::one(), caps)
    }

    /// Places `p` at `u^0 v^0`.
    pub fn embed(p: NCPoly, caps: SeriesCaps) -> Self {
        BiSeries::monomial(p, 0, 0, caps)
    }

    /// `p u^m v^n`, or zero when the monomial is beyond the caps.
    pub fn monomial(p: NCPoly, m: usize, n: usize, caps: SeriesCaps) -> Self {
        let mut s = BiSeries::zero(caps);
        if m <= caps.max_u && n <= caps.max_v {
            let i = s.index(m, n);
            s.coeffs[i] = p;
        }
        s
    }

    pub fn caps(&self) -> SeriesCaps {
        self.caps
    }

    fn index(&self, m: usize, n: usize) -> usize {
        m * (self.caps.max_v + 1) + n
    }

    /// Nonzero coefficients in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &NCPoly)> {
        let stride = self.caps.max_v + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(i, p)| (i / stride, i % stride, p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(NCPoly::is_zero)
    }

    /// The coefficient of `u^m v^n`.
    pub fn beta(&self, m: usize, n: usize) -> Result<&NCPoly> {
        if m > self.caps.max_u || n > self.caps.max_v {
            return Err(Error::BeyondCaps {
                m,
                n,
                max_u: self.caps.max_u,
                max_v: self.caps.max_v,
            });
        }
        Ok(&self.coeffs[self.index(m, n)])
    }

    pub fn constant_term(&self) -> &NCPoly {
        &self.coeffs[0]
    }

    fn check_caps(&self, other: &BiSeries) -> Result<()> {
        if self.caps != other.caps {
            return Err(Error::CapsMismatch {
                left: self.caps.to_string(),
                right: other.caps.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_caps(other)?;
        Ok(BiSeries {
            caps: self.caps,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_caps(other)?;
        Ok(BiSeries {
            caps: self.caps,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> BiSeries {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &BigRational) -> BiSeries {
        self.map(|p| p.scale(c))
    }

    /// Cauchy product in `(u, v)`; coefficients multiply noncommutatively, left to right.
    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_caps(other)?;
        self.bilinear(other, |a, b| Ok(a * b))
    }

    /// Applies a bilinear coefficient product `(u, v)`-bilinearly.
    pub fn bilinear<F>(&self, other: &BiSeries, mut f: F) -> Result<BiSeries>
    where
        F: FnMut(&NCPoly, &NCPoly) -> Result<NCPoly>,
    {
        self.check_caps(other)?;
        let caps = self.caps;
        let mut out = BiSeries::zero(caps);
        for (m1, n1, a) in self.iter() {
            for (m2, n2, b) in other.iter() {
                let (m, n) = (m1 + m2, n1 + n2);
                if m > caps.max_u || n > caps.max_v {
                    continue;
                }
                let prod = f(a, b)?;
                let i = out.index(m, n);
                out.coeffs[i] = &out.coeffs[i] + &prod;
            }
        }
        Ok(out)
    }

    /// `sum_{i >= 0} a^i`, the inverse of `1 - a`. Requires a zero constant term.
    pub fn geometric(a: &BiSeries) -> Result<BiSeries> {
        if !a.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let caps = a.caps;
        let mut sum = BiSeries::one(caps);
        let mut power = BiSeries::one(caps);
        for _ in 0..caps.max_u + caps.max_v {
            power = power.mul(a)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        Ok(sum)
    }

    /// Multiplication by `u`; the top `u`-row falls off.
    pub fn shift_u(&self) -> BiSeries {
        let mut out = BiSeries::zero(self.caps);
        for (m, n, p) in self.iter() {
            if m < self.caps.max_u {
                let i = out.index(m + 1, n);
                out.coeffs[i] = p.clone();
            }
        }
        out
    }

    pub fn shift_v(&self) -> BiSeries {
        let mut out = BiSeries::zero(self.caps);
        for (m, n, p) in self.iter() {
            if n < self.caps.max_v {
                let i = out.index(m, n + 1);
                out.coeffs[i] = p.clone();
            }
        }
        out
    }

    /// Raises the `u`-degree by `by`, discarding what leaves the caps.
    pub fn shift_u_by(&self, by: usize) -> BiSeries {
        let mut out = BiSeries::zero(self.caps);
        for (m, n, p) in self.iter() {
            if m + by <= self.caps.max_u {
                let i = out.index(m + by, n);
                out.coeffs[i] = p.clone();
            }
        }
        out
    }

    pub fn map<F>(&self, mut f: F) -> BiSeries
    where
        F: FnMut(&NCPoly) -> NCPoly,
    {
        BiSeries {
            caps: self.caps,
            coeffs: self.coeffs.iter().map(|p| f(p)).collect(),
        }
    }

    pub fn try_map<F>(&self, mut f: F) -> Result<BiSeries>
    where
        F: FnMut(&NCPoly) -> Result<NCPoly>,
    {
        Ok(BiSeries {
            caps: self.caps,
            coeffs: self.coeffs.iter().map(|p| f(p)).collect::<Result<_>>()?,
        })
    }

    /// Multiplies every coefficient by `p` on the right.
    pub fn mul_poly_right(&self, p: &NCPoly) -> BiSeries {
        self.map(|c| c * p)
    }

    pub fn mul_poly_left(&self, p: &NCPoly) -> BiSeries {
        self.map(|c| p * c)
    }
}

impl fmt::Display for BiSeries {
    /// One `u^m v^n : poly` line per nonzero coefficient, in index order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (m, n, p) in self.iter() {
            if any {
                writeln!(f)?;
            }
            write!(f, "u^{m} v^{n} : {p}")?;
            any = true;
        }
        if !any {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::word::Word;

    fn w(s: &str) -> NCPoly {
        NCPoly::word(Word::parse(s).unwrap())
    }

    #[test]
    fn products_and_truncation() {
        let caps = SeriesCaps::new(2, 2);
        let s = BiSeries::monomial(w("yx"), 1, 0, caps)
            .add(&BiSeries::monomial(w("x"), 0, 2, caps))
            .unwrap();
        assert_eq!(BiSeries::one(caps).mul(&s).unwrap(), s);
        let yu = BiSeries::monomial(NCPoly::y(), 1, 0, caps);
        let xv = BiSeries::monomial(NCPoly::x(), 0, 1, caps);
        assert_eq!(
            yu.mul(&xv).unwrap(),
            BiSeries::monomial(w("yx"), 1, 1, caps)
        );
        let tight = SeriesCaps::new(1, 0);
        let yu1 = BiSeries::monomial(NCPoly::y(), 1, 0, tight);
        assert!(yu1.mul(&yu1).unwrap().is_zero());
        assert!(matches!(
            yu1.mul(&yu),
            Err(Error::CapsMismatch { .. })
        ));
    }

    #[test]
    fn geometric_examples() {
        let caps = SeriesCaps::new(2, 0);
        let g = BiSeries::geometric(&BiSeries::monomial(NCPoly::y(), 1, 0, caps)).unwrap();
        assert_eq!(g.beta(0, 0).unwrap(), &NCPoly::one());
        assert_eq!(g.beta(1, 0).unwrap(), &w("y"));
        assert_eq!(g.beta(2, 0).unwrap(), &w("yy"));

        let caps = SeriesCaps::new(0, 2);
        let g = BiSeries::geometric(&BiSeries::monomial(NCPoly::x(), 0, 1, caps)).unwrap();
        assert_eq!(g.beta(2, 0).err().is_some(), true);
        assert_eq!(g.beta(0, 2).unwrap(), &w("xx"));

        let caps = SeriesCaps::new(3, 2);
        let a = BiSeries::monomial(NCPoly::y(), 1, 0, caps);
        let one_minus = BiSeries::one(caps).sub(&a).unwrap();
        assert_eq!(
            one_minus.mul(&BiSeries::geometric(&a).unwrap()).unwrap(),
            BiSeries::one(caps)
        );

        assert_eq!(
            BiSeries::geometric(&BiSeries::one(caps)),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn beta_examples() {
        let caps = SeriesCaps::new(4, 1);
        let g = BiSeries::geometric(&BiSeries::monomial(NCPoly::y(), 1, 0, caps)).unwrap();
        for m in 0..=4 {
            assert_eq!(g.beta(m, 0).unwrap(), &NCPoly::y_pow(m));
        }
        let s = BiSeries::monomial(w("yx"), 1, 1, caps);
        assert_eq!(s.beta(1, 1).unwrap(), &w("yx"));
        assert!(matches!(s.beta(5, 0), Err(Error::BeyondCaps { .. })));
        let c = BiSeries::embed(w("yx"), caps);
        assert_eq!(c.beta(0, 0).unwrap(), &w("yx"));
    }

    #[test]
    fn shifts() {
        let caps = SeriesCaps::new(1, 1);
        assert_eq!(
            BiSeries::embed(NCPoly::y(), caps).shift_u(),
            BiSeries::monomial(NCPoly::y(), 1, 0, caps)
        );
        assert_eq!(
            BiSeries::one(caps).shift_u().shift_v(),
            BiSeries::monomial(NCPoly::one(), 1, 1, caps)
        );
        assert!(BiSeries::one(caps).shift_u().shift_u().is_zero());
    }

    #[test]
    fn rendering() {
        let caps = SeriesCaps::new(1, 1);
        let s = BiSeries::one(caps)
            .add(&BiSeries::monomial(w("yx").scale(&rat(-2)), 1, 1, caps))
            .unwrap();
        assert_eq!(s.to_string(), "u^0 v^0 : 1\nu^1 v^1 : -2*yx");
    }
}
