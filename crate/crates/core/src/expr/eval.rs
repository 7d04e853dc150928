use std::fmt;

use num_traits::{Signed, ToPrimitive};

use super::parser::{parse, Expr, ExprKind, Func};
use super::{ExprError, Location};
use crate::config::Config;
use crate::error::Error;
use crate::operators::{
    delta_u, derive, harmonic, harmonic_series, rx, rx_inv, shuffle, shuffle_series,
    theorem_kernel,
};
use crate::poly::NCPoly;
use crate::series::{BiSeries, SeriesCaps};

/// An evaluated expression: a polynomial, or a truncated series once `u`, `v`
/// or a series-valued call is involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Poly(NCPoly),
    Series(BiSeries),
}

impl Value {
    fn into_series(self, caps: SeriesCaps) -> BiSeries {
        match self {
            Value::Poly(p) => BiSeries::embed(p, caps),
            Value::Series(s) => s,
        }
    }

    pub fn as_poly(&self) -> Option<&NCPoly> {
        match self {
            Value::Poly(p) => Some(p),
            Value::Series(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Series(s) => write!(f, "{s}"),
        }
    }
}

struct Evaluator<'a> {
    src: &'a str,
    caps: SeriesCaps,
}

type EvalResult<T> = Result<T, ExprError>;

impl Evaluator<'_> {
    fn fail(&self, e: &Expr, source: Error) -> ExprError {
        ExprError::Eval {
            at: Location::of(self.src, e.offset),
            source,
        }
    }

    fn lift<T>(&self, e: &Expr, r: crate::Result<T>) -> EvalResult<T> {
        r.map_err(|err| self.fail(e, err))
    }

    fn binary<P, S>(&self, e: &Expr, a: Value, b: Value, on_poly: P, on_series: S) -> EvalResult<Value>
    where
        P: FnOnce(&NCPoly, &NCPoly) -> crate::Result<NCPoly>,
        S: FnOnce(&BiSeries, &BiSeries) -> crate::Result<BiSeries>,
    {
        match (a, b) {
            (Value::Poly(a), Value::Poly(b)) => Ok(Value::Poly(self.lift(e, on_poly(&a, &b))?)),
            (a, b) => {
                let (a, b) = (a.into_series(self.caps), b.into_series(self.caps));
                Ok(Value::Series(self.lift(e, on_series(&a, &b))?))
            }
        }
    }

    fn small_int(&self, e: &Expr) -> EvalResult<usize> {
        let v = self.eval(e)?;
        let c = match &v {
            Value::Poly(p) if p.terms().all(|(w, _)| w.is_empty()) => p.constant_term(),
            _ => {
                return Err(self.fail(e, Error::Domain(format!("expected an integer, got {v}"))))
            }
        };
        c.to_integer()
            .to_usize()
            .filter(|_| c.is_integer() && !c.is_negative())
            .ok_or_else(|| self.fail(e, Error::Domain(format!("expected a nonnegative integer, got {c}"))))
    }

    fn eval(&self, e: &Expr) -> EvalResult<Value> {
        let caps = self.caps;
        Ok(match &e.kind {
            ExprKind::Rational(c) => Value::Poly(NCPoly::constant(c.clone())),
            ExprKind::X => Value::Poly(NCPoly::x()),
            ExprKind::Y => Value::Poly(NCPoly::y()),
            ExprKind::Z(k) => Value::Poly(NCPoly::zk(*k)),
            ExprKind::U => Value::Series(BiSeries::monomial(NCPoly::one(), 1, 0, caps)),
            ExprKind::V => Value::Series(BiSeries::monomial(NCPoly::one(), 0, 1, caps)),
            ExprKind::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.binary(e, a, b, |a, b| Ok(a + b), |a, b| a.add(b))?
            }
            ExprKind::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.binary(e, a, b, |a, b| Ok(a - b), |a, b| a.sub(b))?
            }
            ExprKind::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.binary(e, a, b, |a, b| Ok(a * b), |a, b| a.mul(b))?
            }
            ExprKind::Neg(a) => match self.eval(a)? {
                Value::Poly(p) => Value::Poly(-&p),
                Value::Series(s) => Value::Series(s.neg()),
            },
            ExprKind::Call(f, args) => self.call(e, *f, args)?,
        })
    }

    fn call(&self, e: &Expr, f: Func, args: &[Expr]) -> EvalResult<Value> {
        let caps = self.caps;
        match f {
            Func::Harmonic => {
                let (a, b) = (self.eval(&args[0])?, self.eval(&args[1])?);
                self.binary(e, a, b, harmonic, harmonic_series)
            }
            Func::Shuffle => {
                let (a, b) = (self.eval(&args[0])?, self.eval(&args[1])?);
                self.binary(e, a, b, |a, b| Ok(shuffle(a, b)), shuffle_series)
            }
            Func::Derive => {
                let l = self.small_int(&args[0])?;
                if l == 0 {
                    return Err(self.fail(&args[0], Error::Domain("d(l, e) needs l >= 1".into())));
                }
                Ok(match self.eval(&args[1])? {
                    Value::Poly(p) => Value::Poly(derive(l, &p)),
                    Value::Series(s) => Value::Series(s.map(|p| derive(l, p))),
                })
            }
            Func::Delta => Ok(Value::Series(delta_u(&self.eval(&args[0])?.into_series(caps)))),
            Func::Rx => Ok(match self.eval(&args[0])? {
                Value::Poly(p) => Value::Poly(p.rx()),
                Value::Series(s) => Value::Series(rx(&s)),
            }),
            Func::RxInv => match self.eval(&args[0])? {
                Value::Poly(p) => Ok(Value::Poly(self.lift(e, p.rx_inv())?)),
                Value::Series(s) => Ok(Value::Series(self.lift(e, rx_inv(&s))?)),
            },
            Func::Beta => {
                let m = self.small_int(&args[0])?;
                let n = self.small_int(&args[1])?;
                let s = self.eval(&args[2])?.into_series(caps);
                Ok(Value::Poly(self.lift(e, s.beta(m, n).cloned())?))
            }
            Func::Geom => {
                let s = self.eval(&args[0])?.into_series(caps);
                Ok(Value::Series(self.lift(e, BiSeries::geometric(&s))?))
            }
            Func::Kernel => match self.eval(&args[0])? {
                Value::Poly(w) => Ok(Value::Series(self.lift(e, theorem_kernel(&w, caps))?)),
                Value::Series(_) => Err(self.fail(
                    &args[0],
                    Error::Domain("kernel takes a polynomial w in yH".into()),
                )),
            },
        }
    }
}

/// Evaluates a parsed expression; `src` is only used to locate errors.
pub fn eval_expr(e: &Expr, src: &str, cfg: &Config) -> Result<Value, ExprError> {
    Evaluator { src, caps: cfg.caps }.eval(e)
}

pub fn eval_str(src: &str, cfg: &Config) -> Result<Value, ExprError> {
    eval_expr(&parse(src)?, src, cfg)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use num_rational::BigRational;
    use crate::word::Word;

    fn cfg() -> Config {
        Config::default()
    }

    fn poly(src: &str) -> NCPoly {
        match eval_str(src, &cfg()).unwrap() {
            Value::Poly(p) => p,
            Value::Series(s) => panic!("expected a polynomial, got series {s}"),
        }
    }

    fn w(s: &str) -> NCPoly {
        NCPoly::word(Word::parse(s).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(poly("hp(z1, z1)"), &w("yy").scale(&rat(2)) + &w("yx"));
        let err = eval_str("RxInv(y)", &cfg()).unwrap_err();
        assert_eq!(err.location(), Location { line: 1, column: 1 });
        assert!(err.to_string().contains("does not end with x"));
        assert_eq!(poly("beta(2, 0, geom(y u))"), w("yy"));
    }

    #[test]
    fn operators_dispatch() {
        assert_eq!(poly("d(1, y x)"), &w("yxx").scale(&rat(-1)) + &w("yyx"));
        assert_eq!(poly("sh(x, y)"), &w("xy") + &w("yx"));
        assert_eq!(poly("beta(1, 0, Delta(Rx(y)))"), poly("RxInv(Rx(beta(1,0,Delta(y x))))"));
        assert_eq!(poly("beta(1, 0, Delta(y))"), w("yx"));
        assert_eq!(poly("beta(1, 2, kernel(z2))"), -&w("yxyxx"));
        assert_eq!(poly("2/3 * z2 - z{2}"), w("yx").scale(&BigRational::new((-1).into(), 3.into())));
        assert!(matches!(eval_str("u v", &cfg()).unwrap(), Value::Series(_)));
    }

    #[test]
    fn evaluation_errors_point_at_the_call() {
        let err = eval_str("x +\n  hp(x, y)", &cfg()).unwrap_err();
        assert_eq!(err.location(), Location { line: 2, column: 3 });
        assert!(eval_str("geom(1 + u)", &cfg()).is_err());
        assert!(eval_str("d(0, x)", &cfg()).is_err());
        assert!(eval_str("d(1/2, x)", &cfg()).is_err());
        assert!(eval_str("beta(9, 0, u)", &cfg()).is_err());
        assert!(eval_str("kernel(u)", &cfg()).is_err());
    }

    #[test]
    fn rendering_reparses() {
        for src in ["yx - 2/3*yxy", "hp(z2, z1 + 1/2 z1 z1)", "-3 + d(2, x y)", "0"] {
            let p = poly(src);
            assert_eq!(poly(&p.to_string()), p, "{src} -> {p}");
        }
    }
}
