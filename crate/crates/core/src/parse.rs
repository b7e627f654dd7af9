//! Recursive-descent parser for the map grammar:
//!
//! ```text
//! expr := "F(" c "," c ")" | "G(" c "," c ")" | "exp(" c ")"
//!       | "iter(" expr "," int ")" | "shift(" expr "," c ")"
//!       | "comp(" expr "," expr ")" | "conj(" c "," c "," expr ")"
//! c    := real | real ("+" | "-") ureal "i"
//! ```
//!
//! Whitespace between tokens is ignored. The parsed tree is validated
//! before it is returned.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;

use num_complex::Complex64;

use crate::error::MapError;
use crate::map::MapExpr;

/// Parses and validates a map expression.
pub fn parse_map(text: &str) -> Result<MapExpr, MapError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    expr.validate()?;
    Ok(expr)
}

/// Parses a lone complex literal (`a`, `a+bi`, `a-bi`).
pub fn parse_complex(text: &str) -> Result<Complex64, MapError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let c = p.complex()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(c)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> MapError {
        MapError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), MapError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        // ASCII letters only, so this cannot split a code point.
        core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn expr(&mut self) -> Result<MapExpr, MapError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident();
        let expr = match name {
            "F" | "G" => {
                self.expect(b'(')?;
                let p = self.complex()?;
                self.expect(b',')?;
                let q = self.complex()?;
                self.expect(b')')?;
                if name == "F" {
                    MapExpr::FamilyF { lambda: p, xi: q }
                } else {
                    MapExpr::FamilyG { mu: p, zeta: q }
                }
            }
            "exp" => {
                self.expect(b'(')?;
                let lambda = self.complex()?;
                self.expect(b')')?;
                MapExpr::ScaledExp { lambda }
            }
            "iter" => {
                self.expect(b'(')?;
                let base = self.expr()?;
                self.expect(b',')?;
                let s = self.integer()?;
                self.expect(b')')?;
                MapExpr::Iterate {
                    base: Box::new(base),
                    s,
                }
            }
            "shift" => {
                self.expect(b'(')?;
                let base = self.expr()?;
                self.expect(b',')?;
                let c = self.complex()?;
                self.expect(b')')?;
                MapExpr::Shift {
                    base: Box::new(base),
                    c,
                }
            }
            "comp" => {
                self.expect(b'(')?;
                let outer = self.expr()?;
                self.expect(b',')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                MapExpr::Compose {
                    outer: Box::new(outer),
                    inner: Box::new(inner),
                }
            }
            "conj" => {
                self.expect(b'(')?;
                let a = self.complex()?;
                self.expect(b',')?;
                let b = self.complex()?;
                self.expect(b',')?;
                let base = self.expr()?;
                self.expect(b')')?;
                MapExpr::Conjugate {
                    a,
                    b,
                    base: Box::new(base),
                }
            }
            "" => return Err(self.error("expected map name")),
            other => {
                self.pos = start;
                return Err(self.error(format!("unknown map '{}'", other)));
            }
        };
        Ok(expr)
    }

    fn integer(&mut self) -> Result<u32, MapError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        digits.parse().map_err(|_| MapError::Syntax {
            offset: start,
            message: String::from("integer out of range"),
        })
    }

    /// `[sign] digits [. digits] [e [sign] digits]`; returns the slice.
    fn real_token(&mut self, allow_sign: bool) -> Result<&'a str, MapError> {
        let start = self.pos;
        if allow_sign && matches!(self.peek(), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        let mut digits = 0;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
            digits += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
                digits += 1;
            }
        }
        if digits == 0 {
            self.pos = start;
            return Err(self.error("expected number"));
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            let exp_start = self.pos;
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
            }
            if exp_start == self.pos {
                self.pos = save;
                return Err(self.error("malformed exponent"));
            }
        }
        Ok(core::str::from_utf8(&self.src[start..self.pos]).unwrap_or(""))
    }

    fn real(&mut self, allow_sign: bool) -> Result<f64, MapError> {
        let start = self.pos;
        let tok = self.real_token(allow_sign)?;
        tok.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or(MapError::Syntax {
                offset: start,
                message: format!("bad number '{}'", tok),
            })
    }

    fn complex(&mut self) -> Result<Complex64, MapError> {
        self.skip_ws();
        let re = self.real(true)?;
        self.skip_ws();
        let sign = match self.peek() {
            Some(b'i') => {
                self.pos += 1;
                return Ok(Complex64::new(0.0, re));
            }
            Some(b'+') => 1.0,
            Some(b'-') => -1.0,
            _ => return Ok(Complex64::new(re, 0.0)),
        };
        self.pos += 1;
        self.skip_ws();
        let im = self.real(false)?;
        self.skip_ws();
        if self.peek() != Some(b'i') {
            return Err(self.error("expected 'i' after imaginary part"));
        }
        self.pos += 1;
        Ok(Complex64::new(re, sign * im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ConstraintViolation;
    use alloc::string::ToString;
    use core::f64::consts::PI;

    #[test]
    fn pure_imaginary_literal() {
        assert_eq!(parse_complex("-2.5i").unwrap(), Complex64::new(0.0, -2.5));
        assert_eq!(parse_complex(" 3 i ").unwrap(), Complex64::new(0.0, 3.0));
        assert!(parse_complex("2.5ii").is_err());
    }

    #[test]
    fn parses_family_f() {
        let m = parse_map("F(-1+0i, 1)").unwrap();
        assert_eq!(
            m,
            MapExpr::family_f(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0))
        );
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn parses_period_shift_example() {
        let m = parse_map("shift(iter(exp(1), 2), 0+6.283185307i)").unwrap();
        let want = MapExpr::scaled_exp(Complex64::new(1.0, 0.0))
            .iterate(2)
            .shift(Complex64::new(0.0, 6.283185307));
        assert_eq!(m, want);
        assert!((6.283185307 - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn validation_error_surfaces() {
        let err = parse_map("F(1, 1)").unwrap_err();
        assert_eq!(
            err,
            MapError::Constraint(ConstraintViolation {
                path: "root".to_string(),
                constraint: "Re(lambda) < 0"
            })
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_map(" conj ( 2 , 1 - 0.5 i , comp( G(-1,-1) ,F(-2+1i,3-4i)) ) ").unwrap();
        let b = parse_map("conj(2,1-0.5i,comp(G(-1,-1),F(-2+1i,3-4i)))").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exponents_and_signs() {
        assert_eq!(parse_complex("-1.5e-3+2E2i").unwrap(), Complex64::new(-1.5e-3, 200.0));
        assert_eq!(parse_complex("+.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("3-0i").unwrap().im.to_bits(), (-0.0f64).to_bits());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_map("F(-1, 1").unwrap_err() {
            MapError::Syntax { offset, .. } => assert_eq!(offset, 7),
            e => panic!("unexpected {e:?}"),
        }
        match parse_map("H(1)").unwrap_err() {
            MapError::Syntax { offset, message } => {
                assert_eq!(offset, 0);
                assert!(message.contains("unknown map"));
            }
            e => panic!("unexpected {e:?}"),
        }
        match parse_map("exp(1+2j)").unwrap_err() {
            MapError::Syntax { offset, .. } => assert_eq!(offset, 7),
            e => panic!("unexpected {e:?}"),
        }
        match parse_map("iter(exp(1), -2)").unwrap_err() {
            MapError::Syntax { offset, .. } => assert_eq!(offset, 13),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(parse_map("exp(1) x"), Err(MapError::Syntax { offset: 7, .. })));
        assert!(matches!(parse_map(""), Err(MapError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn pretty_print_is_reparsed() {
        let text = "conj(2+0.25i, -1-3i, comp(iter(F(-0.5+1i, 2+0i), 3), shift(exp(0-1i), 1e-20+0i)))";
        let m = parse_map(text).unwrap();
        assert_eq!(parse_map(&m.to_string()).unwrap(), m);
    }
}
