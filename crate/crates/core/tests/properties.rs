use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use fmzv_core::expr::{eval_str, Value};
use fmzv_core::operators::{delta_u, derive, harmonic, shuffle, shuffle_words};
use fmzv_core::{BiSeries, Config, Letter, NCPoly, SeriesCaps, Word};

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max_len)
        .prop_map(|bits| bits.into_iter().map(|b| if b { Letter::Y } else { Letter::X }).collect())
}

fn y_word(max_len: usize) -> impl Strategy<Value = Word> {
    word(max_len.saturating_sub(1)).prop_map(|w| {
        Word::from_letters(vec![Letter::Y]).concat(&w)
    })
}

fn coeff() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn poly_from(words: impl Strategy<Value = Word>) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((words, coeff()), 1..=3).prop_map(|terms| {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    })
}

fn poly(max_len: usize) -> impl Strategy<Value = NCPoly> {
    poly_from(word(max_len))
}

fn h1_poly(max_len: usize) -> impl Strategy<Value = NCPoly> {
    poly_from(prop_oneof![1 => Just(Word::empty()), 4 => y_word(max_len)])
}

fn series(caps: SeriesCaps) -> impl Strategy<Value = BiSeries> {
    prop::collection::vec((poly(3), 0..=caps.max_u, 0..=caps.max_v), 1..=3).prop_map(move |terms| {
        terms.into_iter().fold(BiSeries::zero(caps), |acc, (p, m, n)| {
            acc.add(&BiSeries::monomial(p, m, n, caps)).unwrap()
        })
    })
}

const CAPS: SeriesCaps = SeriesCaps { max_u: 2, max_v: 2 };

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn concatenation_is_associative_and_distributive(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn weight_is_additive(a in word(4), b in word(4)) {
        let ab = a.concat(&b);
        prop_assert_eq!(ab.weight(), a.weight() + b.weight());
        prop_assert_eq!(NCPoly::word(ab).max_weight(), a.weight() + b.weight());
    }

    #[test]
    fn h0_is_inside_h1(p in poly(4)) {
        if p.in_h0() {
            prop_assert!(p.in_h1());
        }
    }

    #[test]
    fn series_product_is_associative(a in series(CAPS), b in series(CAPS), c in series(CAPS)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn geometric_inverts_on_both_sides(p in poly(2), m in 0usize..=2, n in 0usize..=2) {
        prop_assume!(m + n > 0);
        let s = BiSeries::monomial(p, m, n, CAPS);
        let g = BiSeries::geometric(&s).unwrap();
        let one = BiSeries::one(CAPS);
        let one_minus = one.sub(&s).unwrap();
        prop_assert_eq!(one_minus.mul(&g).unwrap(), one.clone());
        prop_assert_eq!(g.mul(&one_minus).unwrap(), one);
    }

    #[test]
    fn coefficient_extraction_is_linear(a in series(CAPS), b in series(CAPS), c in coeff(), m in 0usize..=2, n in 0usize..=2) {
        let combo = a.scale(&c).add(&b).unwrap();
        prop_assert_eq!(combo.beta(m, n).unwrap().clone(), &a.beta(m, n).unwrap().scale(&c) + b.beta(m, n).unwrap());
    }

    #[test]
    fn derivations_satisfy_leibniz(a in poly(3), b in poly(3), l in 1usize..=4) {
        prop_assert_eq!(derive(l, &(&a * &b)), &(&derive(l, &a) * &b) + &(&a * &derive(l, &b)));
    }

    #[test]
    fn delta_is_multiplicative(a in series(SeriesCaps::new(3, 1)), b in series(SeriesCaps::new(3, 1))) {
        prop_assert_eq!(delta_u(&a.mul(&b).unwrap()), delta_u(&a).mul(&delta_u(&b)).unwrap());
    }

    #[test]
    fn harmonic_is_commutative_and_associative(a in h1_poly(3), b in h1_poly(3), c in h1_poly(2)) {
        prop_assert_eq!(harmonic(&a, &b).unwrap(), harmonic(&b, &a).unwrap());
        prop_assert_eq!(
            harmonic(&harmonic(&a, &b).unwrap(), &c).unwrap(),
            harmonic(&a, &harmonic(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn shuffle_is_commutative_and_associative(a in poly(3), b in poly(3), c in poly(2)) {
        prop_assert_eq!(shuffle(&a, &b), shuffle(&b, &a));
        prop_assert_eq!(shuffle(&shuffle(&a, &b), &c), shuffle(&a, &shuffle(&b, &c)));
    }

    #[test]
    fn shuffle_counts_interleavings(a in word(5), b in word(5)) {
        let total = shuffle_words(&a, &b)
            .terms()
            .fold(BigRational::zero(), |acc, (_, c)| acc + c);
        let expected = binomial(BigInt::from(a.weight() + b.weight()), BigInt::from(a.weight()));
        prop_assert_eq!(total, BigRational::from_integer(expected));
    }

    #[test]
    fn rendering_reparses(p in poly(4)) {
        let cfg = Config::default();
        match eval_str(&p.to_string(), &cfg).unwrap() {
            Value::Poly(q) => prop_assert_eq!(q, p),
            Value::Series(_) => prop_assert!(false, "polynomial rendered as a series"),
        }
    }
}

#[test]
fn delta_closed_forms() {
    let caps = SeriesCaps::new(6, 0);
    let neg = |p: NCPoly| BiSeries::monomial(p.scale(&-BigRational::one()), 1, 0, caps);
    let x = BiSeries::embed(NCPoly::x(), caps);
    let y = BiSeries::embed(NCPoly::y(), caps);
    let geom_yu = BiSeries::geometric(&neg(NCPoly::y())).unwrap();
    assert_eq!(delta_u(&x), geom_yu.mul(&x).unwrap());
    assert_eq!(delta_u(&BiSeries::embed(NCPoly::z_sum(), caps)), BiSeries::embed(NCPoly::z_sum(), caps));
    let u = BiSeries::monomial(NCPoly::one(), 1, 0, caps);
    let geom_xu = BiSeries::geometric(&neg(NCPoly::x())).unwrap();
    let arg = x.add(&y.mul(&geom_xu).unwrap().mul(&x).unwrap().mul(&u).unwrap()).unwrap();
    assert_eq!(delta_u(&arg), x);
}
