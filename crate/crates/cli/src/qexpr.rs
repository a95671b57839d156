//! Quadratic-number expressions: `p/q`, `sqrt(d)`, `alpha`, `+ - * /` and
//! parentheses, e.g. `sqrt(5)-2`, `2*alpha`, `1/7`.

use furstenberg_core::algebra::{is_squarefree, QuadraticNumber, Rational};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq)]
struct Lin {
    u: Rational,
    v: Rational,
    d: Option<u32>,
}

impl Lin {
    fn rational(u: Rational) -> Self {
        Lin { u, v: Rational::ZERO, d: None }
    }

    fn field(a: Option<u32>, b: Option<u32>) -> CliResult<Option<u32>> {
        match (a, b) {
            (Some(x), Some(y)) if x != y => Err(CliError::input(format!("mixed fields sqrt({x}) and sqrt({y})"))),
            (x, y) => Ok(x.or(y)),
        }
    }

    fn add(self, o: Lin) -> CliResult<Lin> {
        Ok(Lin { u: self.u + o.u, v: self.v + o.v, d: Lin::field(self.d, o.d)? })
    }

    fn neg(self) -> Lin {
        Lin { u: -self.u, v: -self.v, d: self.d }
    }

    fn mul(self, o: Lin) -> CliResult<Lin> {
        let d = Lin::field(self.d, o.d)?;
        let dd = Rational::from(d.unwrap_or(0) as i64);
        Ok(Lin { u: self.u * o.u + self.v * o.v * dd, v: self.u * o.v + self.v * o.u, d })
    }

    fn div(self, o: Lin) -> CliResult<Lin> {
        if !o.v.is_zero() {
            return Err(CliError::input("division by an irrational number is not supported"));
        }
        if o.u.is_zero() {
            return Err(CliError::input("division by zero"));
        }
        let r = o.u.recip();
        Ok(Lin { u: self.u * r, v: self.v * r, d: self.d })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alpha: Option<&'a QuadraticNumber>,
}

impl Parser<'_> {
    fn fail(&self, msg: &str) -> CliError {
        CliError::input(format!("{msg} at column {} of {:?}", self.pos + 1, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> CliResult<Lin> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.add(self.term()?.neg())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> CliResult<Lin> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(self.unary()?)?;
            } else if self.eat(b'/') {
                acc = acc.div(self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> CliResult<Lin> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.atom()
    }

    fn integer(&mut self) -> CliResult<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| self.fail("expected an integer"))
    }

    fn word(&mut self, w: &str) -> bool {
        if self.src[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> CliResult<Lin> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.fail("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Lin::rational(Rational::from(self.integer()?))),
            Some(_) if self.word("sqrt") => {
                if !self.eat(b'(') {
                    return Err(self.fail("expected '(' after sqrt"));
                }
                let d = self.integer()?;
                if !self.eat(b')') {
                    return Err(self.fail("expected ')'"));
                }
                let d = u32::try_from(d).ok().filter(|&d| is_squarefree(d)).ok_or_else(|| self.fail("sqrt needs a squarefree d >= 2"))?;
                Ok(Lin { u: Rational::ZERO, v: Rational::ONE, d: Some(d) })
            }
            Some(_) if self.word("alpha") => {
                let a = self.alpha.ok_or_else(|| self.fail("alpha is not defined here"))?;
                Ok(Lin { u: a.u(), v: a.v(), d: (!a.v().is_zero()).then_some(a.d()) })
            }
            _ => Err(self.fail("unexpected input")),
        }
    }
}

/// Parses `text`, with `alpha` available as a name when given. Rational
/// results live in `Q(sqrt(default_d))`.
pub fn parse(text: &str, alpha: Option<&QuadraticNumber>, default_d: Option<u32>) -> CliResult<QuadraticNumber> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, alpha };
    let value = p.expr()?;
    if p.peek().is_some() {
        return Err(p.fail("trailing input"));
    }
    let d = Lin::field(value.d, default_d.or(alpha.map(|a| a.d())))?
        .ok_or_else(|| CliError::input(format!("{text:?} is rational and no quadratic field is in scope")))?;
    Ok(QuadraticNumber::new(value.u, value.v, d)?)
}
