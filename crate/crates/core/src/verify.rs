//! One checker per identity. Numeric checkers compare per prime over a window
//! and never assert below the prime floor; symbolic checkers compare series
//! coefficients exactly.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numeric::{an_eq, AnValue, Evaluator, PrimeWindow};
use crate::operators::{
    conjugated_delta, delta_u, derive, harmonic_series, kernel_argument, rx_inv, shuffle,
    shuffle_series, theorem_kernel, rx,
};
use crate::par;
use crate::poly::NCPoly;
use crate::report::{Site, Status, Verdict, VerifyReport};
use crate::series::{BiSeries, SeriesCaps};
use crate::word::{Composition, Word};

/// Default floor: heaviest word involved, plus the depth, plus two.
pub fn default_floor(heaviest: usize, depth: u32) -> u64 {
    heaviest as u64 + depth as u64 + 2
}

fn max_weight<'a>(polys: impl IntoIterator<Item = &'a NCPoly>) -> usize {
    polys.into_iter().map(NCPoly::max_weight).max().unwrap_or(0)
}

fn geometric_yu(caps: SeriesCaps) -> BiSeries {
    BiSeries::geometric(&BiSeries::monomial(NCPoly::y(), 1, 0, caps)).expect("positive valuation")
}

fn compare_series(a: &BiSeries, b: &BiSeries, label: &str, report: &mut VerifyReport) {
    let caps = a.caps();
    for m in 0..=caps.max_u {
        for n in 0..=caps.max_v {
            let (x, y) = (a.beta(m, n).expect("in caps"), b.beta(m, n).expect("in caps"));
            let site = if label.is_empty() {
                Site::Coefficient { m, n }
            } else {
                Site::Check(format!("{label} u^{m}v^{n}"))
            };
            if x == y {
                report.push(Verdict::new(site, Status::Pass));
            } else {
                report.push(Verdict::new(site, Status::Fail).with_detail(format!("{x} != {y}")));
            }
        }
    }
}

fn symbolic_check(name: String, holds: bool, detail: impl FnOnce() -> String) -> Verdict {
    let v = Verdict::new(Site::Check(name), if holds { Status::Pass } else { Status::Fail });
    if holds {
        v
    } else {
        v.with_detail(detail())
    }
}

fn require(cond: bool, what: &str, w: &NCPoly) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what}, got {w}")))
    }
}

/// `Z_A(R_x^{-1} ∂_l(w)) = 0` for `w ∈ yHx`, at depth 1.
pub fn verify_derivation_a(
    ev: &Evaluator,
    l: usize,
    w: &NCPoly,
    window: &Arc<PrimeWindow>,
    floor: Option<u64>,
) -> Result<VerifyReport> {
    require(l >= 1, "l must be >= 1", w)?;
    require(w.in_y_h_x(), "w must lie in yHx", w)?;
    let target = derive(l, w).rx_inv()?;
    let floor = floor.unwrap_or_else(|| default_floor(target.max_weight(), 1));
    let lhs = ev.eval_poly(&target, window, 1)?;
    let zero = AnValue::zero(window.clone(), 1)?;
    let mut report = VerifyReport::new("derivation")
        .param("l", l)
        .param("w", w)
        .param("N", 1)
        .param("primes", window)
        .param("floor", floor);
    report.extend(an_eq(&lhs, &zero, floor)?);
    Ok(report)
}

/// `Z_A(β_{m,0} R_x^{-1} Δ_u R_x(w)) = 0` for `w ∈ yHx` and `m >= 1`. At `m = 0`
/// the coefficient is `w` itself and only that symbolic fact is checked.
pub fn verify_remark(
    ev: &Evaluator,
    m: usize,
    w: &NCPoly,
    window: &Arc<PrimeWindow>,
    floor: Option<u64>,
) -> Result<VerifyReport> {
    require(w.in_y_h_x(), "w must lie in yHx", w)?;
    let caps = SeriesCaps::new(m, 0);
    let coeff = conjugated_delta(&BiSeries::embed(w.clone(), caps)).beta(m, 0)?.clone();
    let mut report = VerifyReport::new("remark")
        .param("m", m)
        .param("w", w)
        .param("N", 1)
        .param("primes", window);
    if m == 0 {
        report = report.param("floor", "-");
        report.push(symbolic_check("beta_{0,0} = w (trivial case)".into(), &coeff == w, || {
            format!("{coeff} != {w}")
        }));
        return Ok(report);
    }
    let floor = floor.unwrap_or_else(|| default_floor(coeff.max_weight(), 1));
    report = report.param("floor", floor);
    let lhs = ev.eval_poly(&coeff, window, 1)?;
    report.extend(an_eq(&lhs, &AnValue::zero(window.clone(), 1)?, floor)?);
    Ok(report)
}

/// `sum_{n < N} Z(β_{m,n} kernel(w)) 𝒑^n = Z(w) Z(y^m)` at depth `N`.
pub fn verify_main(
    ev: &Evaluator,
    m: usize,
    w: &NCPoly,
    depth: u32,
    window: &Arc<PrimeWindow>,
    floor: Option<u64>,
) -> Result<VerifyReport> {
    require(w.in_y_h(), "w must lie in yH", w)?;
    require(depth >= 1, "depth must be >= 1", w)?;
    let caps = SeriesCaps::new(m, depth as usize - 1);
    let kernel = theorem_kernel(w, caps)?;
    let rows: Vec<NCPoly> = (0..depth as usize)
        .map(|n| kernel.beta(m, n).cloned())
        .collect::<Result<_>>()?;
    let y_m = BiSeries::geometric(&BiSeries::monomial(NCPoly::y(), 1, 0, caps))?
        .beta(m, 0)?
        .clone();
    let floor = floor.unwrap_or_else(|| {
        default_floor(max_weight(rows.iter().chain([w, &y_m])), depth)
    });

    let mut polys = rows.clone();
    polys.push(w.clone());
    polys.push(y_m.clone());
    let values = ev.eval_many(&polys, window, depth)?;
    let mut lhs = AnValue::zero(window.clone(), depth)?;
    for (n, value) in values[..rows.len()].iter().enumerate() {
        let scaled = value.mul(&AnValue::pbold_pow(n as u32, window.clone(), depth)?)?;
        lhs = lhs.add(&scaled)?;
    }
    let rhs = values[rows.len()].mul(&values[rows.len() + 1])?;

    let mut report = VerifyReport::new("main")
        .param("m", m)
        .param("w", w)
        .param("N", depth)
        .param("caps", caps)
        .param("primes", window)
        .param("floor", floor);
    report.extend(an_eq(&lhs, &rhs, floor)?);
    Ok(report)
}

/// `β_{1,n}` of the kernel: `-w y x^n` for `n >= 1` and `-R_x^{-1} ∂_1 R_x(w)` for `n = 0`.
pub fn kernel_row_checks(w: &NCPoly, max_n: usize) -> Result<Vec<Verdict>> {
    let kernel = theorem_kernel(w, SeriesCaps::new(1, max_n))?;
    let mut out = Vec::with_capacity(max_n + 1);
    let n0 = -&derive(1, &w.rx()).rx_inv()?;
    let got = kernel.beta(1, 0)?;
    out.push(symbolic_check("beta_{1,0} = -Rx^-1 d1 Rx(w)".into(), got == &n0, || {
        format!("{got} != {n0}")
    }));
    for n in 1..=max_n {
        let expected = -&(&(w * &NCPoly::y()) * &NCPoly::x_pow(n));
        let got = kernel.beta(1, n)?;
        out.push(symbolic_check(format!("beta_{{1,{n}}} = -w y x^{n}"), got == &expected, || {
            format!("{got} != {expected}")
        }));
    }
    Ok(out)
}

/// `Z(R_x^{-1} ∂_1(w x)) = -sum_{n=1}^{N-1} Z(w y x^n) 𝒑^n - Z(w) Z(y)` at depth `N`.
pub fn verify_hoffman_ahat(
    ev: &Evaluator,
    w: &NCPoly,
    depth: u32,
    window: &Arc<PrimeWindow>,
    floor: Option<u64>,
) -> Result<VerifyReport> {
    require(w.in_y_h(), "w must lie in yH", w)?;
    require(depth >= 1, "depth must be >= 1", w)?;
    let lhs_poly = derive(1, &w.rx()).rx_inv()?;
    let tails: Vec<NCPoly> = (1..depth as usize)
        .map(|n| &(w * &NCPoly::y()) * &NCPoly::x_pow(n))
        .collect();
    let floor = floor.unwrap_or_else(|| {
        default_floor(max_weight(tails.iter().chain([&lhs_poly, w])), depth)
    });

    let mut polys = vec![lhs_poly, w.clone(), NCPoly::y()];
    polys.extend(tails.iter().cloned());
    let values = ev.eval_many(&polys, window, depth)?;
    let lhs = &values[0];
    let mut rhs = values[1].mul(&values[2])?.neg();
    for (i, tail) in values[3..].iter().enumerate() {
        let scaled = tail.mul(&AnValue::pbold_pow(i as u32 + 1, window.clone(), depth)?)?;
        rhs = rhs.sub(&scaled)?;
    }

    let mut report = VerifyReport::new("hoffman")
        .param("w", w)
        .param("N", depth)
        .param("primes", window)
        .param("floor", floor);
    report.extend(kernel_row_checks(w, 4.max(depth as usize - 1))?);
    report.extend(an_eq(lhs, &rhs, floor)?);
    Ok(report)
}

/// `Z(w1 * w2) = Z(w1) Z(w2)`, asserted at every prime of the window.
pub fn verify_stuffle_hom(
    ev: &Evaluator,
    w1: &NCPoly,
    w2: &NCPoly,
    depth: u32,
    window: &Arc<PrimeWindow>,
) -> Result<VerifyReport> {
    let product = crate::operators::harmonic(w1, w2)?;
    let values = ev.eval_many(&[product, w1.clone(), w2.clone()], window, depth)?;
    let rhs = values[1].mul(&values[2])?;
    let mut report = VerifyReport::new("stuffle")
        .param("w1", w1)
        .param("w2", w2)
        .param("N", depth)
        .param("primes", window)
        .param("floor", "none");
    report.extend(an_eq(&values[0], &rhs, 0)?);
    Ok(report)
}

/// The shuffle-to-harmonic-sum formula with `𝒑`-powers:
/// `Z(w1 ⧢ z_{k_1} ... z_{k_r}) = (-1)^{|k|} sum_l prod_i C(k_i + l_i - 1, l_i)
/// Z(w1 z_{k_r + l_r} ... z_{k_1 + l_1}) 𝒑^{|l|}`, truncated at `|l| <= N - 1`.
pub fn verify_jarossay_seki(
    ev: &Evaluator,
    w1: &NCPoly,
    k: &Composition,
    depth: u32,
    window: &Arc<PrimeWindow>,
    floor: Option<u64>,
) -> Result<VerifyReport> {
    require(w1.in_h1(), "w1 must lie in H^1", w1)?;
    let lhs_poly = shuffle(w1, &NCPoly::from_composition(k));
    let by_total = jarossay_seki_rhs_terms(w1, k, depth as usize - 1);
    let floor = floor.unwrap_or_else(|| {
        default_floor(max_weight(by_total.iter().chain([&lhs_poly])), depth)
    });

    let mut polys = vec![lhs_poly];
    polys.extend(by_total.iter().cloned());
    let values = ev.eval_many(&polys, window, depth)?;
    let mut rhs = AnValue::zero(window.clone(), depth)?;
    for (total, value) in values[1..].iter().enumerate() {
        let scaled = value.mul(&AnValue::pbold_pow(total as u32, window.clone(), depth)?)?;
        rhs = rhs.add(&scaled)?;
    }
    if k.weight() % 2 == 1 {
        rhs = rhs.neg();
    }

    let mut report = VerifyReport::new("jarossay-seki")
        .param("w1", w1)
        .param("k", k)
        .param("N", depth)
        .param("primes", window)
        .param("floor", floor);
    report.extend(an_eq(&values[0], &rhs, floor)?);
    Ok(report)
}

/// Right-hand polynomials grouped by `|l| = 0..=max_total` (sign not applied):
/// entry `L` is `sum_{|l| = L} prod_i C(k_i + l_i - 1, l_i) w1 z_{k_r + l_r} ... z_{k_1 + l_1}`.
pub fn jarossay_seki_rhs_terms(w1: &NCPoly, k: &Composition, max_total: usize) -> Vec<NCPoly> {
    let parts = k.parts();
    let mut out = vec![NCPoly::zero(); max_total + 1];
    let mut shifts = vec![0usize; parts.len()];
    fn rec(
        i: usize,
        left: usize,
        parts: &[u32],
        shifts: &mut Vec<usize>,
        w1: &NCPoly,
        out: &mut [NCPoly],
    ) {
        if i == parts.len() {
            let total: usize = shifts.iter().sum();
            let mut coeff = BigInt::from(1);
            for (&k, &l) in parts.iter().zip(shifts.iter()) {
                coeff *= binomial(BigInt::from(k as usize + l - 1), BigInt::from(l));
            }
            let reversed: Vec<u32> = parts
                .iter()
                .zip(shifts.iter())
                .rev()
                .map(|(&k, &l)| k + l as u32)
                .collect();
            let tail = Composition::new(reversed).expect("parts stay positive").to_word();
            let term = w1 * &NCPoly::word(tail);
            out[total].add_scaled(&BigRational::from_integer(coeff), &term);
            return;
        }
        for l in 0..=left {
            shifts[i] = l;
            rec(i + 1, left - l, parts, shifts, w1, out);
        }
        shifts[i] = 0;
    }
    rec(0, max_total, parts, &mut shifts, w1, &mut out);
    out
}

/// `1/(1 - yu) * w = 1/(1 - yu) ⧢ Δ_u(w)` coefficientwise up to `u^{max_u}`.
pub fn verify_ikz_symbolic(w: &Word, max_u: usize) -> Result<VerifyReport> {
    if !w.in_h1() {
        return Err(Error::NotInH1(w.clone()));
    }
    let caps = SeriesCaps::new(max_u, 0);
    let g = geometric_yu(caps);
    let embedded = BiSeries::embed(NCPoly::word(w.clone()), caps);
    let lhs = harmonic_series(&g, &embedded)?;
    let rhs = shuffle_series(&g, &delta_u(&embedded))?;
    let mut report = VerifyReport::new("ikz").param("w", w).param("max_u", max_u);
    compare_series(&lhs, &rhs, "", &mut report);
    Ok(report)
}

/// The two-step series identity behind the kernel:
/// (a) `{1 + yu(1 - xv)^{-1}}^{-1} = (1 - xv) (1 - Δ_u(x) v)^{-1} (1 + yu)^{-1}`;
/// (b) the same series equals `R_x^{-1} Δ_u R_x(1 - yu (1 + xu)^{-1} xv (1 - xv)^{-1})`.
pub fn verify_series_chain(caps: SeriesCaps) -> Result<VerifyReport> {
    let mono = |p: NCPoly, m, n| BiSeries::monomial(p, m, n, caps);
    let one = BiSeries::one(caps);
    let xv = mono(NCPoly::x(), 0, 1);
    let yu = mono(NCPoly::y(), 1, 0);

    let lhs = BiSeries::geometric(&yu.mul(&BiSeries::geometric(&xv)?)?.neg())?;
    let delta_x_v = delta_u(&BiSeries::embed(NCPoly::x(), caps)).shift_v();
    let middle = one
        .sub(&xv)?
        .mul(&BiSeries::geometric(&delta_x_v)?)?
        .mul(&BiSeries::geometric(&yu.neg())?)?;
    let right = rx_inv(&delta_u(&rx(&kernel_argument(&NCPoly::one(), caps)?)))?;

    let mut report = VerifyReport::new("series-chain").param("caps", caps);
    compare_series(&lhs, &middle, "(a)", &mut report);
    compare_series(&middle, &right, "(b)", &mut report);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    Derivation,
    Remark,
    Main,
    Hoffman,
    Stuffle,
    JarossaySeki,
    Ikz,
    SeriesChain,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Derivation,
        Identity::Remark,
        Identity::Main,
        Identity::Hoffman,
        Identity::Stuffle,
        Identity::JarossaySeki,
        Identity::Ikz,
        Identity::SeriesChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Derivation => "derivation",
            Identity::Remark => "remark",
            Identity::Main => "main",
            Identity::Hoffman => "hoffman",
            Identity::Stuffle => "stuffle",
            Identity::JarossaySeki => "jarossay-seki",
            Identity::Ikz => "ikz",
            Identity::SeriesChain => "series-chain",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Identity::ALL.iter().map(|id| id.name()).collect();
                Error::Config(format!(
                    "unknown identity `{s}`; available: {}",
                    names.join(", ")
                ))
            })
    }
}

/// One fully parameterised check.
#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Derivation { l: usize, w: NCPoly },
    Remark { m: usize, w: NCPoly },
    Main { m: usize, w: NCPoly, depth: u32 },
    Hoffman { w: NCPoly, depth: u32 },
    Stuffle { w1: NCPoly, w2: NCPoly, depth: u32 },
    JarossaySeki { w1: NCPoly, k: Composition, depth: u32 },
    Ikz { w: Word, max_u: usize },
    SeriesChain { caps: SeriesCaps },
}

impl Check {
    pub fn identity(&self) -> Identity {
        match self {
            Check::Derivation { .. } => Identity::Derivation,
            Check::Remark { .. } => Identity::Remark,
            Check::Main { .. } => Identity::Main,
            Check::Hoffman { .. } => Identity::Hoffman,
            Check::Stuffle { .. } => Identity::Stuffle,
            Check::JarossaySeki { .. } => Identity::JarossaySeki,
            Check::Ikz { .. } => Identity::Ikz,
            Check::SeriesChain { .. } => Identity::SeriesChain,
        }
    }

    pub fn run(
        &self,
        ev: &Evaluator,
        window: &Arc<PrimeWindow>,
        floor: Option<u64>,
    ) -> Result<VerifyReport> {
        match self {
            Check::Derivation { l, w } => verify_derivation_a(ev, *l, w, window, floor),
            Check::Remark { m, w } => verify_remark(ev, *m, w, window, floor),
            Check::Main { m, w, depth } => verify_main(ev, *m, w, *depth, window, floor),
            Check::Hoffman { w, depth } => verify_hoffman_ahat(ev, w, *depth, window, floor),
            Check::Stuffle { w1, w2, depth } => verify_stuffle_hom(ev, w1, w2, *depth, window),
            Check::JarossaySeki { w1, k, depth } => {
                verify_jarossay_seki(ev, w1, k, *depth, window, floor)
            }
            Check::Ikz { w, max_u } => verify_ikz_symbolic(w, *max_u),
            Check::SeriesChain { caps } => verify_series_chain(*caps),
        }
    }
}

/// Words `y...` of weight `1..=max_weight` (the z-words), in canonical order.
pub fn z_words(max_weight: usize) -> Vec<Word> {
    Composition::enumerate(max_weight as u32, max_weight)
        .iter()
        .map(Composition::to_word)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// The batch-mode basket: z-words of weight <= 6, `l <= 3`, `m <= 2`, `N <= 3`.
pub fn default_basket() -> Vec<Check> {
    let words = z_words(6);
    let polys: Vec<NCPoly> = words.iter().cloned().map(NCPoly::word).collect();
    let mut checks = Vec::new();
    for w in polys.iter().filter(|w| w.in_y_h_x()) {
        for l in 1..=3 {
            checks.push(Check::Derivation { l, w: w.clone() });
        }
        for m in 0..=2 {
            checks.push(Check::Remark { m, w: w.clone() });
        }
    }
    for w in &polys {
        for depth in 1..=3 {
            for m in 0..=2 {
                checks.push(Check::Main { m, w: w.clone(), depth });
            }
            checks.push(Check::Hoffman { w: w.clone(), depth });
        }
    }
    let small: Vec<&NCPoly> = polys.iter().filter(|w| w.max_weight() <= 3).collect();
    for (i, w1) in small.iter().enumerate() {
        for w2 in &small[i..] {
            checks.push(Check::Stuffle { w1: (*w1).clone(), w2: (*w2).clone(), depth: 3 });
        }
        for k in Composition::enumerate(3, 3) {
            checks.push(Check::JarossaySeki { w1: (*w1).clone(), k, depth: 3 });
        }
    }
    for w in words.iter().filter(|w| w.weight() <= 4) {
        checks.push(Check::Ikz { w: w.clone(), max_u: 3 });
    }
    checks.push(Check::SeriesChain { caps: SeriesCaps::new(3, 3) });
    checks
}

/// Runs independent checks in parallel; reports come back in input order.
pub fn run_checks(
    ev: &Evaluator,
    checks: &[Check],
    window: &Arc<PrimeWindow>,
    floor: Option<u64>,
) -> Result<Vec<VerifyReport>> {
    par::try_map(ev.jobs(), checks, |c| c.run(ev, window, floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::primes_in;
    use crate::poly::rat;

    fn window(lo: u64, hi: u64) -> Arc<PrimeWindow> {
        Arc::new(primes_in(lo, hi).unwrap())
    }

    fn z(parts: &[u32]) -> NCPoly {
        NCPoly::from_composition(&Composition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn jarossay_seki_zero_shift_term_has_unit_coefficient() {
        let k = Composition::new(vec![2, 3]).unwrap();
        let terms = jarossay_seki_rhs_terms(&z(&[1]), &k, 1);
        // l = 0: w1 z_3 z_2
        assert_eq!(terms[0], z(&[1, 3, 2]));
        // |l| = 1: C(2,1) w1 z_3 z_3 + C(3,1) w1 z_4 z_2
        assert_eq!(terms[1], &z(&[1, 3, 3]).scale(&rat(2)) + &z(&[1, 4, 2]).scale(&rat(3)));
    }

    #[test]
    fn preconditions_are_reported() {
        let ev = Evaluator::new();
        let w = window(11, 50);
        assert!(verify_derivation_a(&ev, 1, &z(&[1]), &w, None).is_err());
        assert!(verify_remark(&ev, 1, &NCPoly::x(), &w, None).is_err());
        assert!(verify_main(&ev, 1, &NCPoly::one(), 2, &w, None).is_err());
        assert!(verify_ikz_symbolic(&Word::x(), 2).is_err());
    }

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        let err = "nope".parse::<Identity>().unwrap_err().to_string();
        assert!(err.contains("series-chain"));
    }

    #[test]
    fn remark_m0_is_trivial() {
        let r = verify_remark(&Evaluator::new(), 0, &z(&[2]), &window(11, 50), None).unwrap();
        assert!(r.passed());
        assert_eq!(r.verdicts.len(), 1);
    }

    #[test]
    fn small_instances_pass() {
        let ev = Evaluator::new();
        let w = window(2, 120);
        assert!(verify_derivation_a(&ev, 1, &z(&[2]), &w, None).unwrap().passed());
        assert!(verify_main(&ev, 1, &z(&[2]), 2, &w, None).unwrap().passed());
        assert!(verify_hoffman_ahat(&ev, &z(&[1]), 3, &w, None).unwrap().passed());
        assert!(verify_jarossay_seki(&ev, &z(&[1]), &Composition::new(vec![2]).unwrap(), 2, &w, None)
            .unwrap()
            .passed());
        assert!(verify_stuffle_hom(&ev, &z(&[1]), &z(&[1]), 2, &w).unwrap().passed());
        assert!(verify_ikz_symbolic(&Word::z(2), 3).unwrap().passed());
        assert!(verify_series_chain(SeriesCaps::new(2, 2)).unwrap().passed());
    }
}
