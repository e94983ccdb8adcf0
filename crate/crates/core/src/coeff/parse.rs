//! Parser for the canonical scalar grammar.
//!
//! Accepts integers, the variables `s`, `u`, `b` and the shorthands
//! `q = s^2`, `t = u^2`, `p = s^2/u^2`, `beta = b^2`, combined with
//! `+ - * / ^` and parentheses. Exponents are (possibly negative) integers.

use num_bigint::BigInt;

use super::ratfunc::RatFunc;
use super::CoeffError;

pub fn parse_ratfunc(src: &str) -> Result<RatFunc, CoeffError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(CoeffError::Parse(format!("unexpected token {:?}", p.toks[p.pos])));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Tok>, CoeffError> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[st..i].iter().collect();
            out.push(Tok::Int(s.parse().map_err(|_| CoeffError::Parse(s.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(CoeffError::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CoeffError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(CoeffError::Parse(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<RatFunc, CoeffError> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v = v.add(&self.term()?);
            } else if self.eat('-') {
                v = v.sub(&self.term()?);
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, CoeffError> {
        let mut v = self.unary()?;
        loop {
            if self.eat('*') {
                v = v.mul(&self.unary()?);
            } else if self.eat('/') {
                v = v.div(&self.unary()?)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, CoeffError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            let paren = self.eat('(');
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos) {
                Some(Tok::Int(n)) => {
                    let n: i32 = n.try_into().map_err(|_| CoeffError::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    n
                }
                _ => return Err(CoeffError::Parse("expected integer exponent".into())),
            };
            if paren {
                self.expect(')')?;
            }
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(CoeffError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, CoeffError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RatFunc::from_rat(&num_rational::BigRational::from_integer(n)))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "s" => Ok(RatFunc::mono(1, 0, 0)),
                    "u" => Ok(RatFunc::mono(0, 1, 0)),
                    "b" => Ok(RatFunc::mono(0, 0, 1)),
                    "q" => Ok(RatFunc::mono(2, 0, 0)),
                    "t" => Ok(RatFunc::mono(0, 2, 0)),
                    "p" => Ok(RatFunc::mono(2, -2, 0)),
                    "beta" => Ok(RatFunc::mono(0, 0, 2)),
                    _ => Err(CoeffError::Parse(format!("unknown variable '{id}'"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            t => Err(CoeffError::Parse(format!("unexpected {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for src in ["(s^2-u^2)/(s*u)", "1/2", "-3*s*u^2+b", "(s+1)/(2*u^3-s)", "0", "s^(-2)*u"] {
            let v = parse_ratfunc(src).unwrap();
            assert_eq!(parse_ratfunc(&v.to_string()).unwrap(), v, "{src}");
        }
        assert_eq!(parse_ratfunc("p").unwrap(), parse_ratfunc("q/t").unwrap());
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("x").is_err());
    }
}
