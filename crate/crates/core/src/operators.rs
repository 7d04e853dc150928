//! Harmonic and shuffle products, the derivations `∂_l`, the automorphism `Δ_u`,
//! right multiplication by `x`, and the kernel series of the main identity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{rat, NCPoly};
use crate::series::{BiSeries, SeriesCaps};
use crate::word::{Composition, Letter, Word};

type Counts<K> = HashMap<Vec<K>, BigInt>;

/// Suffix table: cell `(i, j)` holds the product of `a[i..]` and `b[j..]`.
struct SuffixTable<K> {
    cells: Vec<Counts<K>>,
    width: usize,
}

impl<K> SuffixTable<K> {
    fn at(&self, i: usize, j: usize) -> &Counts<K> {
        &self.cells[i * self.width + j]
    }
}

/// Bottom-up recursion shared by both products; `step` builds cell `(i, j)`
/// from already-filled neighbours when both suffixes are nonempty.
fn suffix_table<K, F>(a: &[K], b: &[K], mut step: F) -> Counts<K>
where
    K: Clone + Eq + std::hash::Hash,
    F: FnMut(usize, usize, &SuffixTable<K>) -> Counts<K>,
{
    let (la, lb) = (a.len(), b.len());
    let mut table = SuffixTable {
        cells: vec![HashMap::new(); (la + 1) * (lb + 1)],
        width: lb + 1,
    };
    for i in (0..=la).rev() {
        for j in (0..=lb).rev() {
            let cell = if i == la {
                HashMap::from([(b[j..].to_vec(), BigInt::one())])
            } else if j == lb {
                HashMap::from([(a[i..].to_vec(), BigInt::one())])
            } else {
                step(i, j, &table)
            };
            table.cells[i * table.width + j] = cell;
        }
    }
    table.cells.swap_remove(0)
}

fn prepend_into<K: Clone + Eq + std::hash::Hash>(out: &mut Counts<K>, head: K, tail: &Counts<K>) {
    for (rest, c) in tail {
        let mut key = Vec::with_capacity(rest.len() + 1);
        key.push(head.clone());
        key.extend_from_slice(rest);
        *out.entry(key).or_default() += c;
    }
}

fn harmonic_compositions(a: &[u32], b: &[u32]) -> Counts<u32> {
    suffix_table(a, b, |i, j, t| {
        let mut out = HashMap::new();
        prepend_into(&mut out, a[i], t.at(i + 1, j));
        prepend_into(&mut out, b[j], t.at(i, j + 1));
        prepend_into(&mut out, a[i] + b[j], t.at(i + 1, j + 1));
        out
    })
}

fn shuffle_letters(a: &[Letter], b: &[Letter]) -> Counts<Letter> {
    suffix_table(a, b, |i, j, t| {
        let mut out = HashMap::new();
        prepend_into(&mut out, a[i], t.at(i + 1, j));
        prepend_into(&mut out, b[j], t.at(i, j + 1));
        out
    })
}

/// The harmonic (stuffle) product of two words of `H^1`.
pub fn harmonic_words(w1: &Word, w2: &Word) -> Result<NCPoly> {
    let a = w1.to_composition()?;
    let b = w2.to_composition()?;
    Ok(harmonic_compositions(a.parts(), b.parts())
        .into_iter()
        .map(|(k, c)| {
            let word = Composition::new(k).expect("stuffle keeps parts positive").to_word();
            (word, BigRational::from_integer(c))
        })
        .collect())
}

/// The harmonic product on `H^1`, extended bilinearly.
pub fn harmonic(p1: &NCPoly, p2: &NCPoly) -> Result<NCPoly> {
    for p in [p1, p2] {
        if let Some((w, _)) = p.terms().find(|(w, _)| !w.in_h1()) {
            return Err(Error::NotInH1(w.clone()));
        }
    }
    let mut out = NCPoly::zero();
    for (w1, c1) in p1.terms() {
        for (w2, c2) in p2.terms() {
            out.add_scaled(&(c1 * c2), &harmonic_words(w1, w2)?);
        }
    }
    Ok(out)
}

pub fn shuffle_words(w1: &Word, w2: &Word) -> NCPoly {
    shuffle_letters(w1.letters(), w2.letters())
        .into_iter()
        .map(|(letters, c)| (Word::from_letters(letters), BigRational::from_integer(c)))
        .collect()
}

/// The shuffle product on all of `H`, extended bilinearly.
pub fn shuffle(p1: &NCPoly, p2: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w1, c1) in p1.terms() {
        for (w2, c2) in p2.terms() {
            out.add_scaled(&(c1 * c2), &shuffle_words(w1, w2));
        }
    }
    out
}

pub fn harmonic_series(s1: &BiSeries, s2: &BiSeries) -> Result<BiSeries> {
    s1.bilinear(s2, harmonic)
}

pub fn shuffle_series(s1: &BiSeries, s2: &BiSeries) -> Result<BiSeries> {
    s1.bilinear(s2, |a, b| Ok(shuffle(a, b)))
}

/// `∂_l(x) = y z^{l-1} x` where `z = x + y`.
fn derivation_image(l: usize) -> NCPoly {
    let z = NCPoly::z_sum();
    let mut img = NCPoly::y();
    for _ in 1..l {
        img = &img * &z;
    }
    &img * &NCPoly::x()
}

/// The derivation `∂_l` with `∂_l(x) = y z^{l-1} x` and `∂_l(y) = -y z^{l-1} x`.
pub fn derive(l: usize, p: &NCPoly) -> NCPoly {
    assert!(l >= 1, "derive: l must be >= 1");
    Deriver::new(l).apply(p)
}

struct Deriver {
    on_x: NCPoly,
    on_y: NCPoly,
}

impl Deriver {
    fn new(l: usize) -> Self {
        let on_x = derivation_image(l);
        let on_y = -&on_x;
        Deriver { on_x, on_y }
    }

    fn apply(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let letters = w.letters();
            for (i, &letter) in letters.iter().enumerate() {
                let image = match letter {
                    Letter::X => &self.on_x,
                    Letter::Y => &self.on_y,
                };
                let prefix = &letters[..i];
                let suffix = &letters[i + 1..];
                for (mid, d) in image.terms() {
                    let mut word = Vec::with_capacity(letters.len() + mid.weight());
                    word.extend_from_slice(prefix);
                    word.extend_from_slice(mid.letters());
                    word.extend_from_slice(suffix);
                    out.add_term(Word::from_letters(word), c * d);
                }
            }
        }
        out
    }
}

/// `Δ_u = exp(D)` with `D = sum_{l >= 1} (-1)^l u^l ∂_l / l`, both sums truncated at the `u`-cap.
pub fn delta_u(s: &BiSeries) -> BiSeries {
    let max_u = s.caps().max_u;
    let derivers: Vec<(Deriver, BigRational)> = (1..=max_u)
        .map(|l| {
            let sign = if l % 2 == 0 { 1 } else { -1 };
            (Deriver::new(l), BigRational::new(BigInt::from(sign), BigInt::from(l)))
        })
        .collect();
    let apply_d = |t: &BiSeries| -> BiSeries {
        let mut acc = BiSeries::zero(t.caps());
        for (l, (der, c)) in derivers.iter().enumerate() {
            let moved = t.shift_u_by(l + 1);
            if moved.is_zero() {
                break;
            }
            let term = moved.map(|p| der.apply(p).scale(c));
            acc = acc.add(&term).expect("same caps");
        }
        acc
    };
    let mut sum = s.clone();
    let mut term = s.clone();
    for j in 1..=max_u {
        term = apply_d(&term).scale(&BigRational::new(BigInt::one(), BigInt::from(j)));
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term).expect("same caps");
    }
    sum
}

pub fn rx(s: &BiSeries) -> BiSeries {
    s.map(NCPoly::rx)
}

pub fn rx_inv(s: &BiSeries) -> Result<BiSeries> {
    s.try_map(NCPoly::rx_inv)
}

/// `w - w y u (1 + x u)^{-1} x v (1 - x v)^{-1}` as a truncated series.
pub fn kernel_argument(w: &NCPoly, caps: SeriesCaps) -> Result<BiSeries> {
    let mono = |p: NCPoly, m, n| BiSeries::monomial(p, m, n, caps);
    let inv_one_plus_xu = BiSeries::geometric(&mono(NCPoly::x().scale(&rat(-1)), 1, 0))?;
    let xv = mono(NCPoly::x(), 0, 1);
    let inv_one_minus_xv = BiSeries::geometric(&xv)?;
    let correction = mono(w * &NCPoly::y(), 1, 0)
        .mul(&inv_one_plus_xu)?
        .mul(&xv)?
        .mul(&inv_one_minus_xv)?;
    BiSeries::embed(w.clone(), caps).sub(&correction)
}

/// `R_x^{-1} Δ_u R_x (w - w y u (1 + x u)^{-1} x v (1 - x v)^{-1})` for `w ∈ yH`.
pub fn theorem_kernel(w: &NCPoly, caps: SeriesCaps) -> Result<BiSeries> {
    if !w.in_y_h() {
        return Err(Error::Domain(format!("kernel needs w in yH, got {w}")));
    }
    Ok(conjugated_delta(&kernel_argument(w, caps)?))
}

/// `R_x^{-1} Δ_u R_x`. Always defined: every word of `Δ_u(s x)` ends with `x`.
pub fn conjugated_delta(s: &BiSeries) -> BiSeries {
    rx_inv(&delta_u(&rx(s)))
        .unwrap_or_else(|e| panic!("internal invariant violated: R_x^-1 Δ_u R_x undefined: {e}"))
}
