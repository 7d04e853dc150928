use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ExprError, Location};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Harmonic,
    Shuffle,
    Derive,
    Delta,
    Rx,
    RxInv,
    Beta,
    Geom,
    Kernel,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "hp" => Func::Harmonic,
            "sh" => Func::Shuffle,
            "d" => Func::Derive,
            "Delta" => Func::Delta,
            "Rx" => Func::Rx,
            "RxInv" => Func::RxInv,
            "beta" => Func::Beta,
            "geom" => Func::Geom,
            "kernel" => Func::Kernel,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Harmonic => "hp",
            Func::Shuffle => "sh",
            Func::Derive => "d",
            Func::Delta => "Delta",
            Func::Rx => "Rx",
            Func::RxInv => "RxInv",
            Func::Beta => "beta",
            Func::Geom => "geom",
            Func::Kernel => "kernel",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Harmonic | Func::Shuffle | Func::Derive => 2,
            Func::Beta => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Rational(BigRational),
    X,
    Y,
    U,
    V,
    Z(u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// A node with the byte offset where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub offset: usize,
}

impl Expr {
    fn new(kind: ExprKind, offset: usize) -> Self {
        Expr { kind, offset }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Letter(char),
    Z(u32),
    Name(Func),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Letter(c) => format!("`{c}`"),
            Tok::Z(k) => format!("`z{k}`"),
            Tok::Name(f) => format!("`{}`", f.name()),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self,
            Tok::Int(_) | Tok::Letter(_) | Tok::Z(_) | Tok::Name(_) | Tok::LParen
        )
    }
}

fn syntax(src: &str, offset: usize, expected: &[&str], found: String) -> ExprError {
    ExprError::Syntax {
        at: Location::of(src, offset),
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let read_int = |i: &mut usize| -> Option<(BigInt, usize)> {
        let start = *i;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        if *i == start {
            return None;
        }
        let from = chars[start].0;
        let to = chars.get(*i).map_or(src.len(), |c| c.0);
        Some((src[from..to].parse().expect("ascii digits"), from))
    };
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let (n, from) = read_int(&mut i).expect("at a digit");
            toks.push((Tok::Int(n), from));
            continue;
        }
        if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_alphabetic() {
                i += 1;
            }
            let end = chars.get(i).map_or(src.len(), |c| c.0);
            let run = &src[off..end];
            if let Some(f) = Func::from_name(run) {
                toks.push((Tok::Name(f), off));
                continue;
            }
            for (j, &(loff, l)) in chars[start..i].iter().enumerate() {
                match l {
                    'x' | 'y' | 'u' | 'v' => toks.push((Tok::Letter(l), loff)),
                    'z' if start + j + 1 == i => {
                        let braced = chars.get(i).map(|c| c.1) == Some('{');
                        if braced {
                            i += 1;
                        }
                        let here = chars.get(i).map_or(src.len(), |c| c.0);
                        let (k, _) = read_int(&mut i).ok_or_else(|| {
                            syntax(src, here, &["an index after `z`"], describe_at(src, here))
                        })?;
                        if braced {
                            if chars.get(i).map(|c| c.1) != Some('}') {
                                let here = chars.get(i).map_or(src.len(), |c| c.0);
                                return Err(syntax(src, here, &["`}`"], describe_at(src, here)));
                            }
                            i += 1;
                        }
                        let k: u32 = u32::try_from(k)
                            .ok()
                            .filter(|&k| k >= 1)
                            .ok_or_else(|| syntax(src, loff, &["z index >= 1"], run.into()))?;
                        toks.push((Tok::Z(k), loff));
                    }
                    _ => {
                        return Err(syntax(
                            src,
                            loff,
                            &["x", "y", "u", "v", "z<k>", "a function name"],
                            format!("`{run}`"),
                        ))
                    }
                }
            }
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => {
                return Err(syntax(src, off, &["an expression"], format!("`{c}`")));
            }
        };
        toks.push((tok, off));
        i += 1;
    }
    toks.push((Tok::End, src.len()));
    Ok(toks)
}

fn describe_at(src: &str, offset: usize) -> String {
    src[offset.min(src.len())..]
        .chars()
        .next()
        .map_or("end of input".into(), |c| format!("`{c}`"))
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        syntax(self.src, self.offset(), expected, self.peek().describe())
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ExprError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            let offset = lhs.offset;
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.product()?;
                    lhs = Expr::new(ExprKind::Add(Box::new(lhs), Box::new(rhs)), offset);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.product()?;
                    lhs = Expr::new(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), offset);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !self.peek().starts_atom() {
                return Ok(lhs);
            }
            let rhs = self.unary()?;
            let offset = lhs.offset;
            lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), offset);
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Minus {
            let (_, offset) = self.bump();
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), offset));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        let kind = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den = match self.peek().clone() {
                        Tok::Int(d) if d != BigInt::from(0) => d,
                        _ => return Err(self.error(&["a nonzero integer denominator"])),
                    };
                    self.bump();
                    ExprKind::Rational(BigRational::new(n, den))
                } else {
                    ExprKind::Rational(BigRational::from_integer(n))
                }
            }
            Tok::Letter(c) => {
                self.bump();
                match c {
                    'x' => ExprKind::X,
                    'y' => ExprKind::Y,
                    'u' => ExprKind::U,
                    _ => ExprKind::V,
                }
            }
            Tok::Z(k) => {
                self.bump();
                ExprKind::Z(k)
            }
            Tok::Name(f) => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let mut args = vec![self.sum()?];
                while args.len() < f.arity() {
                    self.expect(Tok::Comma, "`,`")?;
                    args.push(self.sum()?);
                }
                if *self.peek() != Tok::RParen {
                    let what = format!("`)` ({} takes {} argument(s))", f.name(), f.arity());
                    return Err(self.error(&[&what]));
                }
                self.bump();
                ExprKind::Call(f, args)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(Expr::new(inner.kind, offset));
            }
            _ => return Err(self.error(&["an expression"])),
        };
        Ok(Expr::new(kind, offset))
    }
}

/// Parses a whole expression; trailing input is an error.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        src,
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["an operator", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(src: &str) -> ExprKind {
        parse(src).unwrap().kind
    }

    #[test]
    fn shapes() {
        match kind("z2 z3 + z5") {
            ExprKind::Add(a, b) => {
                assert!(matches!(a.kind, ExprKind::Mul(_, _)));
                assert_eq!(b.kind, ExprKind::Z(5));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(kind("d(1, y x)"), ExprKind::Call(Func::Derive, ref a) if a.len() == 2));
        match kind("beta(1, 0, Delta(Rx(y)))") {
            ExprKind::Call(Func::Beta, args) => match &args[2].kind {
                ExprKind::Call(Func::Delta, inner) => {
                    assert!(matches!(inner[0].kind, ExprKind::Call(Func::Rx, _)))
                }
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
        assert_eq!(kind("z{12}"), ExprKind::Z(12));
        assert_eq!(kind("  z2 "), ExprKind::Z(2));
        assert!(matches!(kind("yxy"), ExprKind::Mul(_, _)));
        assert!(matches!(kind("x - y"), ExprKind::Sub(_, _)));
        assert!(matches!(kind("-2/3*yx"), ExprKind::Mul(_, _)));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("hp(z1,\n  z1").unwrap_err();
        match err {
            ExprError::Syntax { at, expected, .. } => {
                assert_eq!(at, Location { line: 2, column: 5 });
                assert!(expected[0].contains("`)`"));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse("x + ").unwrap_err().location().column, 5);
        assert!(parse("q").is_err());
        assert!(parse("z0").is_err());
        assert!(parse("z").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("(x").is_err());
        assert!(parse("x)").is_err());
        assert!(parse("beta(1, 0)").is_err());
    }
}
