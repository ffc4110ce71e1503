//! Recursive-descent parser for the rolling-chart expression grammar.
//!
//! ```text
//! expr     := ["+"|"-"] term (("+"|"-") term)*
//! term     := factor ("*" factor | "/" factor)*
//! factor   := base ("^" uint)?
//! base     := rational | ident | trig | "(" expr ")"
//! ident    := "theta" | "phi" | "h" | "q" | "psi" | "kappa" | "c"
//! trig     := ("sin"|"cos") "(" [uint "*"] "psi" ")"
//! rational := uint ("/" uint)?
//! ```
//!
//! `kappa` and `c` are replaced by the exact rationals of the session
//! parameters at parse time. Division is legal only when the divisor reduces
//! to a rational multiple of a polynomial in `h`.

use super::{Expr, ExprError, HarmKind};
use crate::chart::AN;
use crate::{rint, Params, Rat};
use num_bigint::BigInt;

pub fn parse(text: &str, params: &Params) -> Result<Expr, ExprError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        params,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    params: &'a Params,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ExprError {
        ExprError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ExprError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            let _ = self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.div_hcoeff_expr(&f).ok_or(ExprError::BadDivisor {
                        offset: at,
                        var: "h",
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.base()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let k = self.uint()?;
            let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => self.rational(),
            Some(b) if b.is_ascii_alphabetic() => self.ident(),
            _ => Err(self.err("expected a number, identifier or '('")),
        }
    }

    fn rational(&mut self) -> Result<Expr, ExprError> {
        let n = self.uint()?;
        // A slash immediately followed by digits binds as a rational literal.
        let save = self.pos;
        if self.eat(b'/') {
            if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                let d = self.uint()?;
                if d == 0 {
                    return Err(self.err("zero denominator in rational literal"));
                }
                return Ok(Expr::constant(
                    &AN,
                    Rat::new(BigInt::from(n), BigInt::from(d)),
                ));
            }
            self.pos = save;
        }
        Ok(Expr::constant(&AN, rint(n as i64)))
    }

    fn uint(&mut self) -> Result<u64, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an unsigned integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer literal too large"))
    }

    fn ident(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match word {
            "theta" | "phi" | "h" | "q" | "psi" => Ok(Expr::var_named(&AN, word)),
            "kappa" => Ok(Expr::constant(&AN, self.params.kappa.clone())),
            "c" => Ok(Expr::constant(&AN, self.params.c.clone())),
            "sin" | "cos" => {
                let kind = if word == "sin" {
                    HarmKind::Sin
                } else {
                    HarmKind::Cos
                };
                self.expect(b'(')?;
                self.skip_ws();
                let k = if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    let k = self.uint()?;
                    self.skip_ws();
                    self.expect(b'*')?;
                    self.skip_ws();
                    k
                } else {
                    1
                };
                let arg_start = self.pos;
                let arg = self.ident_word();
                if arg != "psi" {
                    self.pos = arg_start;
                    return Err(self.err("harmonics take the fibre angle psi only"));
                }
                self.skip_ws();
                self.expect(b')')?;
                let k: u32 = k
                    .try_into()
                    .map_err(|_| self.err("harmonic index too large"))?;
                Ok(Expr::harmonic(&AN, kind, k))
            }
            _ => {
                self.pos = start;
                Err(self.err(&format!("unknown identifier '{word}'")))
            }
        }
    }

    fn ident_word(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn pythagorean_identity_normalises_to_one() {
        let params = Params::from_ints(0, 1);
        let e = parse("sin(psi)^2 + cos(psi)^2", &params).unwrap();
        assert_eq!(e.as_constant(), Some(rint(1)));
    }

    #[test]
    fn parameters_are_substituted_at_parse_time() {
        // kappa = 0, c = 1: (kappa c^2 - h^2)/(2 c^3) = -h^2/2
        let params = Params::from_ints(0, 1);
        let e = parse("(kappa*c^2 - h^2)/(2*c^3)", &params).unwrap();
        let expected = Expr::var_pow(&AN, 2, 2).scale(&rat(-1, 2));
        assert_eq!(e, expected);
        // kappa = 2, c = 1: 2 c q + kappa psi = 2q + 2psi
        let params = Params::from_ints(2, 1);
        let e = parse("2*c*q + kappa*psi", &params).unwrap();
        let expected = Expr::var(&AN, 3)
            .scale(&rint(2))
            .add(&Expr::var(&AN, 4).scale(&rint(2)));
        assert_eq!(e, expected);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let params = Params::from_ints(0, 1);
        let err = parse("theta + ", &params).unwrap_err();
        assert!(matches!(err, ExprError::Syntax { offset: 8, .. }));
        let err = parse("theta $ phi", &params).unwrap_err();
        assert!(matches!(err, ExprError::Syntax { offset: 6, .. }));
    }

    #[test]
    fn division_restricted_to_profile_polynomials() {
        let params = Params::from_ints(0, 1);
        assert!(parse("theta/(2*h)", &params).is_ok());
        assert!(parse("theta/(1 + h^2)", &params).is_ok());
        let err = parse("theta/psi", &params).unwrap_err();
        assert!(matches!(err, ExprError::BadDivisor { .. }));
        let err = parse("1/sin(psi)", &params).unwrap_err();
        assert!(matches!(err, ExprError::BadDivisor { .. }));
    }

    #[test]
    fn rational_literals_bind_tightly() {
        let params = Params::from_ints(0, 1);
        let e = parse("1/2*theta", &params).unwrap();
        let expected = Expr::var(&AN, 0).scale(&rat(1, 2));
        assert_eq!(e, expected);
    }

    #[test]
    fn unary_minus_and_nested_groups() {
        let params = Params::from_ints(0, 1);
        let e = parse("-(theta - phi)^2 + theta^2 + phi^2", &params).unwrap();
        let expected = Expr::var(&AN, 0).mul(&Expr::var(&AN, 1)).scale(&rint(2));
        assert_eq!(e, expected);
    }
}
