//! Recursive-descent parser for element expressions: rational coefficients
//! with the context generator written `z` (plus `a` and `w` for the sextic
//! field), supporting `+ - * ^` and parentheses, with implicit
//! multiplication as in `3z^2`.

use std::iter::Peekable;
use std::str::Chars;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fields::{ContextOps, FieldContext, FieldElement};
use crate::rational::Rational;

pub fn parse_element(ctx: &Arc<FieldContext>, input: &str) -> Result<FieldElement> {
    let mut p = Parser { ctx: Arc::clone(ctx), chars: input.chars().peekable() };
    let value = p.expr()?;
    p.skip_ws();
    match p.chars.peek() {
        None => Ok(value),
        Some(c) => Err(Error::Parse(format!("unexpected character {c:?}"))),
    }
}

struct Parser<'a> {
    ctx: Arc<FieldContext>,
    chars: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn expr(&mut self) -> Result<FieldElement> {
        self.skip_ws();
        let mut negate = false;
        if let Some(&c) = self.chars.peek() {
            if c == '-' {
                self.chars.next();
                negate = true;
            } else if c == '+' {
                self.chars.next();
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('+') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('*') => {
                    self.chars.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // implicit multiplication: a symbol or group right after
                Some(c) if c.is_ascii_alphabetic() || *c == '(' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        self.skip_ws();
        if self.chars.peek() == Some(&'^') {
            self.chars.next();
            self.skip_ws();
            let e = self.unsigned()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement> {
        self.skip_ws();
        match self.chars.peek().copied() {
            Some('(') => {
                self.chars.next();
                let inner = self.expr()?;
                self.skip_ws();
                if self.chars.next() != Some(')') {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                Ok(inner)
            }
            Some('-') => {
                self.chars.next();
                Ok(self.atom()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.unsigned()? as i64;
                self.skip_ws();
                if self.chars.peek() == Some(&'/') {
                    self.chars.next();
                    self.skip_ws();
                    let den = self.unsigned()? as i64;
                    if den == 0 {
                        return Err(Error::DivisionByZero);
                    }
                    let q = Rational::new(BigInt::from(num), BigInt::from(den));
                    self.ctx.from_rational(&q)
                } else {
                    Ok(self.ctx.from_integer(num))
                }
            }
            Some('z') => {
                self.chars.next();
                Ok(self.ctx.generator())
            }
            Some('a') if matches!(self.ctx.as_ref(), FieldContext::SexticS3(_)) => {
                self.chars.next();
                match self.ctx.as_ref() {
                    FieldContext::SexticS3(c) => {
                        crate::fields::element_from_coords(&self.ctx, c.alpha_coords())
                    }
                    _ => unreachable!(),
                }
            }
            Some('w') if matches!(self.ctx.as_ref(), FieldContext::SexticS3(_)) => {
                self.chars.next();
                match self.ctx.as_ref() {
                    FieldContext::SexticS3(c) => {
                        crate::fields::element_from_coords(&self.ctx, c.omega_coords())
                    }
                    _ => unreachable!(),
                }
            }
            Some(c) => Err(Error::Parse(format!("unexpected character {c:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }

    fn unsigned(&mut self) -> Result<u64> {
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.chars.next().unwrap());
        }
        if digits.is_empty() {
            return Err(Error::Parse("expected a number".into()));
        }
        digits.parse().map_err(|_| Error::Parse(format!("number {digits} too large")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{cyc_context, ff_context, quad_context, sextic_context};
    use crate::rational::rat;

    #[test]
    fn parses_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        let z = c5.generator();
        assert_eq!(parse_element(&c5, "1-z").unwrap(), c5.one().sub(&z));
        let e = parse_element(&c5, "1/2+3z^2").unwrap();
        let expect = c5
            .from_rational(&rat(1, 2))
            .unwrap()
            .add(&z.pow(2).mul(&c5.from_integer(3)));
        assert_eq!(e, expect);
        assert_eq!(
            parse_element(&c5, "(1-z)*(1+z)").unwrap(),
            c5.one().sub(&z).mul(&c5.one().add(&z))
        );
        assert_eq!(parse_element(&c5, "-z^3").unwrap(), z.pow(3).neg());
        assert_eq!(parse_element(&c5, " 2 * z - 1 ").unwrap(), z.mul(&c5.from_integer(2)).sub(&c5.one()));
    }

    #[test]
    fn parses_sextic_symbols() {
        let sx = sextic_context();
        let a = parse_element(&sx, "a").unwrap();
        let w = parse_element(&sx, "w").unwrap();
        assert_eq!(a.pow(3), sx.from_integer(2));
        assert!(w.pow(3).is_one());
        assert_eq!(parse_element(&sx, "a^2w+1").unwrap(), a.pow(2).mul(&w).add(&sx.one()));
        // z is alpha + omega
        assert_eq!(parse_element(&sx, "z").unwrap(), a.add(&w));
    }

    #[test]
    fn parses_finite_and_quadratic() {
        let q5 = quad_context(5).unwrap();
        assert_eq!(
            parse_element(&q5, "2+z").unwrap(),
            q5.from_integer(2).add(&q5.generator())
        );
        let gf = ff_context(2, 4).unwrap();
        let g = gf.generator();
        assert_eq!(parse_element(&gf, "z^2+z+1").unwrap(), g.pow(2).add(&g).add(&gf.one()));
    }

    #[test]
    fn rejects_garbage() {
        let c5 = cyc_context(5).unwrap();
        assert!(parse_element(&c5, "1+").is_err());
        assert!(parse_element(&c5, "q").is_err());
        assert!(parse_element(&c5, "(1").is_err());
        assert!(parse_element(&c5, "1/0").is_err());
        assert!(parse_element(&c5, "a").is_err(), "sextic symbols only there");
    }
}
