//! Exact-rational noncommutative polynomials in `x` and `y`.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::word::{Composition, Letter, Word};

/// A finite rational linear combination of words, kept canonical: no zero
/// coefficients are ever stored, so structural equality is value equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::word(Word::empty())
    }

    pub fn constant(c: BigRational) -> Self {
        NCPoly::term(c, Word::empty())
    }

    pub fn word(w: Word) -> Self {
        NCPoly::term(BigRational::one(), w)
    }

    pub fn term(c: BigRational, w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn x() -> Self {
        NCPoly::word(Word::x())
    }

    pub fn y() -> Self {
        NCPoly::word(Word::y())
    }

    /// `z = x + y`.
    pub fn z_sum() -> Self {
        &NCPoly::x() + &NCPoly::y()
    }

    /// `z_k = y x^{k-1}`.
    pub fn zk(k: u32) -> Self {
        NCPoly::word(Word::z(k))
    }

    pub fn from_composition(k: &Composition) -> Self {
        NCPoly::word(k.to_word())
    }

    /// `y^r`, the word of the all-ones composition.
    pub fn y_pow(r: usize) -> Self {
        NCPoly::word(Word::from_letters(vec![Letter::Y; r]))
    }

    pub fn x_pow(r: usize) -> Self {
        NCPoly::word(Word::from_letters(vec![Letter::X; r]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Word, BigRational> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Word::empty())
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &BigRational, other: &NCPoly) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &BigRational) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), c * d)).collect(),
        }
    }

    /// Applies a word-level map linearly.
    pub fn map_words<F, E>(&self, mut f: F) -> Result<NCPoly, E>
    where
        F: FnMut(&Word) -> Result<NCPoly, E>,
    {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_scaled(c, &f(w)?);
        }
        Ok(out)
    }

    pub fn in_h1(&self) -> bool {
        self.terms.keys().all(Word::in_h1)
    }

    pub fn in_h0(&self) -> bool {
        self.terms.keys().all(Word::in_h0)
    }

    pub fn ends_with_x(&self) -> bool {
        self.terms.keys().all(Word::ends_with_x)
    }

    /// Every word nonempty, starting with `y` and ending with `x`.
    pub fn in_y_h_x(&self) -> bool {
        self.terms
            .keys()
            .all(|w| w.first() == Some(Letter::Y) && w.last() == Some(Letter::X))
    }

    /// Every word nonempty and starting with `y`.
    pub fn in_y_h(&self) -> bool {
        self.terms.keys().all(|w| w.first() == Some(Letter::Y))
    }

    /// Right multiplication by `x`.
    pub fn rx(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let mut w = w.clone();
                    w.push(Letter::X);
                    (w, c.clone())
                })
                .collect(),
        }
    }

    /// Strips the trailing `x` of every word.
    pub fn rx_inv(&self) -> crate::Result<NCPoly> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            terms.insert(w.strip_x()?, c.clone());
        }
        Ok(NCPoly { terms })
    }
}

impl From<Word> for NCPoly {
    fn from(w: Word) -> Self {
        NCPoly::word(w)
    }
}

impl FromIterator<(Word, BigRational)> for NCPoly {
    fn from_iter<I: IntoIterator<Item = (Word, BigRational)>>(iter: I) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for NCPoly {
            type Output = NCPoly;
            fn $m(self, rhs: NCPoly) -> NCPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

/// Renders a rational as `a` or `a/b` (sign not included).
pub(crate) fn fmt_abs_rational(c: &BigRational) -> String {
    let c = c.abs();
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for NCPoly {
    /// Terms in canonical word order, e.g. `yx - 2/3*yxy`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs_one = c.abs().is_one();
            if w.is_empty() {
                f.write_str(&fmt_abs_rational(c))?;
            } else if abs_one {
                write!(f, "{w}")?;
            } else {
                write!(f, "{}*{w}", fmt_abs_rational(c))?;
            }
        }
        Ok(())
    }
}
