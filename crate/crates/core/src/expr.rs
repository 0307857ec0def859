//! Identity expressions: grammar, expansion into magma polynomials, and the builtin catalog.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := [sign] [rational ['*']] factor ('*' factor)*
//! rational := integer ['/' positive-integer]
//! factor   := variable | generator | '(' expr ')' | '[' expr ',' expr ']'
//!           | '<' expr ',' expr ',' expr '>' | '{' expr ',' expr '}'
//! ```
//!
//! Variables are single letters `a`..`z`. A generator atom `x1`, `x2`, ... names a
//! generator of a free algebra, which is how witnesses are printed. The sign is only
//! accepted on the first term of an expression.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::magma::{generator_symbol, leaf_name, Alphabet, Monomial, Polynomial};

/// A syntax error with a 0-based byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Leaf symbol: `0..26` for letters, `25 + i` for the generator atom `x{i}`.
    Var(u32),
    Scaled(BigRational, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Commutator(Box<Expr>, Box<Expr>),
    Associator(Box<Expr>, Box<Expr>, Box<Expr>),
    Jordan(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Text that reparses to an equal tree.
    pub fn render(&self) -> String {
        match self {
            Expr::Var(s) => leaf_name(*s, Alphabet::Symbols),
            Expr::Scaled(c, e) => format!("({}*{})", render_rational(c), e.render()),
            Expr::Sum(a, b) => format!("({} + {})", a.render(), b.render()),
            Expr::Difference(a, b) => format!("({} - {})", a.render(), b.render()),
            Expr::Product(a, b) => format!("({}*{})", a.render(), b.render()),
            Expr::Commutator(a, b) => format!("[{},{}]", a.render(), b.render()),
            Expr::Associator(a, b, c) => format!("<{},{},{}>", a.render(), b.render(), c.render()),
            Expr::Jordan(a, b) => format!("{{{},{}}}", a.render(), b.render()),
        }
    }

    /// Leaf symbols occurring anywhere in the tree, ascending.
    pub fn symbols(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<u32>) {
        match self {
            Expr::Var(s) => {
                out.insert(*s);
            }
            Expr::Scaled(_, e) => e.collect_symbols(out),
            Expr::Sum(a, b)
            | Expr::Difference(a, b)
            | Expr::Product(a, b)
            | Expr::Commutator(a, b)
            | Expr::Jordan(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Associator(a, b, c) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
                c.collect_symbols(out);
            }
        }
    }
}

fn render_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_factor_start(b: u8) -> bool {
    b.is_ascii_lowercase() || matches!(b, b'(' | b'[' | b'<' | b'{')
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn unexpected<T>(&mut self, expected: &str) -> std::result::Result<T, ParseError> {
        match self.peek() {
            None => self.err(self.src.len(), format!("unexpected end of input, expected {expected}")),
            Some(b) if is_factor_start(b) && expected.contains("'*'") => {
                self.err(self.pos, "missing '*' between factors")
            }
            Some(b) if b.is_ascii_graphic() && !is_known(b) => {
                self.err(self.pos, format!("unknown character '{}'", b as char))
            }
            Some(b) if !b.is_ascii() => self.err(self.pos, "unknown character"),
            Some(b) => self.err(self.pos, format!("unexpected '{}', expected {expected}", b as char)),
        }
    }

    fn expect(&mut self, b: u8, expected: &str) -> std::result::Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(expected)
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut acc = self.term(true)?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term(false)?;
                    acc = Expr::Sum(Box::new(acc), Box::new(t));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term(false)?;
                    acc = Expr::Difference(Box::new(acc), Box::new(t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn term(&mut self, allow_sign: bool) -> std::result::Result<Expr, ParseError> {
        let mut sign: Option<bool> = None;
        if allow_sign {
            match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    sign = Some(true);
                }
                Some(b'+') => {
                    self.pos += 1;
                    sign = Some(false);
                }
                _ => {}
            }
        }
        let mut coef: Option<BigRational> = None;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            let num = self.integer().unwrap();
            let mut den = BigInt::one();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                match self.peek() {
                    Some(b'0'..=b'9') => den = self.integer().unwrap(),
                    _ => return self.unexpected("a positive integer denominator"),
                }
                if den.is_zero() {
                    return self.err(at, "zero denominator");
                }
            }
            coef = Some(BigRational::new(num, den));
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        let mut prod = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            prod = Expr::Product(Box::new(prod), Box::new(f));
        }
        let coef = match (sign, coef) {
            (Some(true), Some(c)) => Some(-c),
            (Some(true), None) => Some(-BigRational::one()),
            (_, c) => c,
        };
        Ok(match coef {
            Some(c) => Expr::Scaled(c, Box::new(prod)),
            None => prod,
        })
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        match self.peek() {
            Some(b) if b.is_ascii_lowercase() => {
                self.pos += 1;
                if b == b'x' && matches!(self.src.get(self.pos), Some(b'0'..=b'9')) {
                    let at = self.pos;
                    let i = self.integer().unwrap();
                    let i: u32 = match u32::try_from(i) {
                        Ok(i) if i >= 1 && i < 1 << 20 => i,
                        _ => return self.err(at, "generator index out of range"),
                    };
                    return Ok(Expr::Var(generator_symbol(i)));
                }
                Ok(Expr::Var((b - b'a') as u32))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')', "')' or '*'")?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',', "',' or '*'")?;
                let b = self.expr()?;
                self.expect(b']', "']' or '*'")?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }
            Some(b'<') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',', "',' or '*'")?;
                let b = self.expr()?;
                self.expect(b',', "',' or '*'")?;
                let c = self.expr()?;
                self.expect(b'>', "'>' or '*'")?;
                Ok(Expr::Associator(Box::new(a), Box::new(b), Box::new(c)))
            }
            Some(b'{') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',', "',' or '*'")?;
                let b = self.expr()?;
                self.expect(b'}', "'}' or '*'")?;
                Ok(Expr::Jordan(Box::new(a), Box::new(b)))
            }
            _ => self.unexpected("a variable or an opening bracket"),
        }
    }
}

fn is_known(b: u8) -> bool {
    b.is_ascii_lowercase()
        || b.is_ascii_digit()
        || matches!(b, b'(' | b')' | b'[' | b']' | b'<' | b'>' | b'{' | b'}' | b',' | b'+' | b'-' | b'*' | b'/')
}

/// Parses identity text.
pub fn parse(text: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(b) if matches!(b, b')' | b']' | b'>' | b'}' | b',') => {
            p.err(p.pos, format!("unbalanced '{}'", b as char))
        }
        Some(_) => p.unexpected("'+', '-', '*' or end of input"),
    }
}

/// Fully expanded terms before like terms are collected.
pub fn expand_raw(e: &Expr) -> Vec<(BigRational, Monomial)> {
    fn product(a: &[(BigRational, Monomial)], b: &[(BigRational, Monomial)]) -> Vec<(BigRational, Monomial)> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for (x, m) in a {
            for (y, n) in b {
                out.push((x * y, Monomial::join(m, n)));
            }
        }
        out
    }
    fn negated(mut v: Vec<(BigRational, Monomial)>) -> Vec<(BigRational, Monomial)> {
        for (c, _) in v.iter_mut() {
            *c = -c.clone();
        }
        v
    }
    let mut out = match e {
        Expr::Var(s) => vec![(BigRational::one(), Monomial::leaf(*s))],
        Expr::Scaled(c, e) => expand_raw(e)
            .into_iter()
            .map(|(x, m)| (c * x, m))
            .collect(),
        Expr::Sum(a, b) => {
            let mut v = expand_raw(a);
            v.extend(expand_raw(b));
            v
        }
        Expr::Difference(a, b) => {
            let mut v = expand_raw(a);
            v.extend(negated(expand_raw(b)));
            v
        }
        Expr::Product(a, b) => product(&expand_raw(a), &expand_raw(b)),
        Expr::Commutator(a, b) => {
            let (a, b) = (expand_raw(a), expand_raw(b));
            let mut v = product(&a, &b);
            v.extend(negated(product(&b, &a)));
            v
        }
        Expr::Jordan(a, b) => {
            let (a, b) = (expand_raw(a), expand_raw(b));
            let mut v = product(&a, &b);
            v.extend(product(&b, &a));
            v
        }
        Expr::Associator(a, b, c) => {
            let (a, b, c) = (expand_raw(a), expand_raw(b), expand_raw(c));
            let mut v = product(&product(&a, &b), &c);
            v.extend(negated(product(&a, &product(&b, &c))));
            v
        }
    };
    out.retain(|(c, _)| !c.is_zero());
    out
}

/// Expands to a polynomial over symbols with coefficients in `field`.
pub fn expand(e: &Expr, field: FieldSpec) -> Result<Polynomial> {
    collect(&expand_raw(e), field)
}

fn collect(raw: &[(BigRational, Monomial)], field: FieldSpec) -> Result<Polynomial> {
    let mut p = Polynomial::zero(field);
    for (c, m) in raw {
        p.add_term(m.clone(), field.from_rational(c)?);
    }
    Ok(p)
}

/// A named polynomial identity over letter variables.
#[derive(Clone, Debug)]
pub struct Identity {
    name: String,
    source: String,
    expr: Expr,
    raw: Vec<(BigRational, Monomial)>,
    variables: Vec<u32>,
    multilinear: bool,
}

impl Identity {
    pub fn from_text(name: &str, text: &str) -> Result<Self> {
        let expr = parse(text)?;
        Ok(Identity::from_expr(name, text, expr))
    }

    pub fn from_expr(name: &str, source: &str, expr: Expr) -> Self {
        let raw = expand_raw(&expr);
        let variables: Vec<u32> = expr.symbols().into_iter().collect();
        let multilinear = raw.iter().all(|(_, m)| {
            m.degree() == variables.len() && variables.iter().all(|v| m.leaves().iter().filter(|l| *l == v).count() == 1)
        });
        Identity {
            name: name.to_string(),
            source: source.to_string(),
            expr,
            raw,
            variables,
            multilinear,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// Number of terms produced by expansion before like terms are collected.
    pub fn raw_terms(&self) -> usize {
        self.raw.len()
    }

    /// Leaf symbols in ascending order; slot `i` of a substitution fills `variables()[i]`.
    pub fn variables(&self) -> &[u32] {
        &self.variables
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn is_multilinear(&self) -> bool {
        self.multilinear
    }

    pub fn template(&self, field: FieldSpec) -> Result<Polynomial> {
        collect(&self.raw, field)
    }

    /// Template with its variables renamed to slots `0..arity`.
    pub fn slotted_template(&self, field: FieldSpec) -> Result<Polynomial> {
        let t = self.template(field)?;
        let vars = &self.variables;
        t.substitute_monomials(&|l| {
            vars.binary_search(&l).ok().map(|i| Monomial::leaf(i as u32))
        })
    }
}

/// Names and texts of the builtin identities.
pub const BUILTINS: &[(&str, &str)] = &[
    ("leftcom", "x*(y*z) - y*(x*z)"),
    ("rightcom", "(x*y)*z - (x*z)*y"),
    ("leftsym", "<x,y,z> - <y,x,z>"),
    ("rightsym", "<x,y,z> - <x,z,y>"),
    ("assoc", "<x,y,z>"),
    ("jacobi", "[[x,y],z] + [[y,z],x] + [[z,x],y]"),
    ("alia_left", "[x,y]*z + [y,z]*x + [z,x]*y"),
    ("alia_right", "x*[y,z] + y*[z,x] + z*[x,y]"),
    ("eq311", "<x,y,z> + [x,y]*z - x*[y,z] - [x*z,y]"),
    ("eq312", "<[w,x],y,z> - [w,<x,y,z>] - [x,<w,y,z>]"),
    ("eq313", "[x*y,z] + [y*z,x] + [z*x,y]"),
    ("eq314", "<[x,y],z,w>"),
    ("fquad", "<w*x,y,z> - x*<w,y,z> - <x,y,z>*w"),
    (
        "teichmuller",
        "<w*x,y,z> - <w,x*y,z> + <w,x,y*z> - w*<x,y,z> - <w,x,y>*z",
    ),
    (
        "f_sym47",
        "<w*x,y,z> - x*<w,y,z> - <x,y,z>*w - (<y*z,w,x> - z*<y,w,x> - <z,w,x>*y)",
    ),
    (
        "f_sym48",
        "<w*x,y,z> - x*<w,y,z> - <x,y,z>*w - (<x*w,y,z> - w*<x,y,z> - <w,y,z>*x)",
    ),
];

/// Looks up a builtin identity by name.
pub fn builtin(name: &str) -> Result<Identity> {
    BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, t)| Identity::from_text(n, t).expect("builtin identities parse"))
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn v(c: char) -> Box<Expr> {
        Box::new(Expr::Var(c as u32 - 'a' as u32))
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("[x,y]").unwrap(), Expr::Commutator(v('x'), v('y')));
        assert_eq!(
            parse("<[x,y],z,w>").unwrap(),
            Expr::Associator(Box::new(Expr::Commutator(v('x'), v('y'))), v('z'), v('w'))
        );
        let e = parse("[x,y").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.message.contains("end of input"));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = parse("x y").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.message.contains("missing '*'"), "{}", e.message);
        let e = parse("x + #").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.message.contains("unknown character"));
        let e = parse("x)").unwrap_err();
        assert_eq!(e.offset, 1);
        assert!(e.message.contains("unbalanced"));
        let e = parse("(x*y").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(parse("x + -y").is_err());
        assert!(parse("1/0 x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn coefficients_and_generators() {
        assert_eq!(
            parse("-2/4 x*y").unwrap(),
            Expr::Scaled(
                BigRational::new((-1).into(), 2.into()),
                Box::new(Expr::Product(v('x'), v('y')))
            )
        );
        assert_eq!(parse("3*x").unwrap(), parse("3 x").unwrap());
        assert_eq!(parse("x12").unwrap(), Expr::Var(generator_symbol(12)));
        assert!(parse("y1").is_err());
    }

    #[test]
    fn expand_examples() {
        let p = expand(&parse("<x,y,z> - <y,x,z>").unwrap(), Q).unwrap();
        assert_eq!(p.len(), 4);
        let p = expand(&parse("[x,y]*z + [y,z]*x + [z,x]*y").unwrap(), Q).unwrap();
        assert_eq!(p.len(), 6);
        let p = expand(&parse("{x,y} - x*y - y*x").unwrap(), Q).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn rational_coefficients_in_prime_fields() {
        let f5 = FieldSpec::Prime(5);
        let p = expand(&parse("1/2 x").unwrap(), f5).unwrap();
        assert_eq!(p.coefficient(&Monomial::leaf(23)), Some(&f5.from_i64(3)));
        assert!(matches!(expand(&parse("1/5 x").unwrap(), f5), Err(Error::Field(_))));
    }

    #[test]
    fn builtin_examples() {
        let j = builtin("jacobi").unwrap();
        assert_eq!(j.raw_terms(), 12);
        assert_eq!(j.template(Q).unwrap().len(), 12);
        let l = builtin("leftcom").unwrap();
        assert_eq!(l.template(Q).unwrap().render(Alphabet::Symbols), "(x*(y*z)) - (y*(x*z))");
        let t = builtin("teichmuller").unwrap();
        assert_eq!(t.raw_terms(), 10);
        assert!(builtin("nope").is_err());
        for (name, _) in BUILTINS {
            let id = builtin(name).unwrap();
            assert!(id.is_multilinear(), "{name}");
        }
        assert!(!Identity::from_text("sq", "x*x").unwrap().is_multilinear());
        assert!(!Identity::from_text("mixed", "x*y - x").unwrap().is_multilinear());
    }

    #[test]
    fn slotted_template_renames_in_order() {
        let id = builtin("eq314").unwrap();
        assert_eq!(id.variables(), &[22, 23, 24, 25]);
        let t = id.slotted_template(Q).unwrap();
        let leaves: BTreeSet<u32> = t.terms().flat_map(|(m, _)| m.leaves().to_vec()).collect();
        assert_eq!(leaves.into_iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }
}
