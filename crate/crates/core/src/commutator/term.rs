use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};

/// A term over the variables `x1, x2, ...` and the operation symbols of a
/// signature. `Var(0)` is `x1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(symbol.into(), args)
    }

    /// Number of operation symbols in the term.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// One more than the largest variable index, 0 for ground terms.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::App(_, args) => args.iter().map(Term::arity).max().unwrap_or(0),
        }
    }

    /// Checks every symbol exists in `a` with the right arity.
    pub fn validate(&self, a: &FiniteAlgebra) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(name, args) => {
                let arity = a
                    .signature()
                    .arity_of(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                if arity != args.len() {
                    return Err(Error::Term(format!(
                        "`{name}` has arity {arity} but is applied to {} arguments",
                        args.len()
                    )));
                }
                args.iter().try_for_each(|t| t.validate(a))
            }
        }
    }

    /// Value of the term at `vars`.
    pub fn eval(&self, a: &FiniteAlgebra, vars: &[usize]) -> Result<usize> {
        self.validate(a)?;
        if let Some(&v) = vars.iter().find(|&&v| v >= a.size()) {
            return Err(Error::ElementOutOfRange {
                element: v,
                size: a.size(),
            });
        }
        if self.arity() > vars.len() {
            return Err(Error::Term(format!(
                "term uses x{} but only {} values were given",
                self.arity(),
                vars.len()
            )));
        }
        Ok(self.eval_unchecked(a, vars))
    }

    fn eval_unchecked(&self, a: &FiniteAlgebra, vars: &[usize]) -> usize {
        match self {
            Term::Var(i) => vars[*i],
            Term::App(name, args) => {
                let vals: Vec<usize> = args.iter().map(|t| t.eval_unchecked(a, vars)).collect();
                a.operation(name).expect("validated").apply(a.size(), &vals)
            }
        }
    }

    /// The `k`-ary term operation as a row-major table.
    pub fn table(&self, a: &FiniteAlgebra, k: usize) -> Result<Vec<usize>> {
        self.validate(a)?;
        if self.arity() > k {
            return Err(Error::Term(format!(
                "term uses x{} but k = {k}",
                self.arity()
            )));
        }
        let n = a.size();
        let mut vars = alloc::vec![0; k];
        Ok((0..crate::algebra::table_len(n, k))
            .map(|idx| {
                crate::algebra::decode_tuple(idx, n, &mut vars);
                self.eval_unchecked(a, &vars)
            })
            .collect())
    }

    /// Parses the S-expression form written by `Display`: `x1`, a bare
    /// constant `c`, or `(f t1 ... tk)`.
    pub fn parse(text: &str) -> Result<Term> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let t = parse_tokens(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Term(format!(
                "trailing input after term: `{}`",
                tokens[pos]
            )));
        }
        Ok(t)
    }
}

fn tokenize(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(&text[s..i]);
            }
            if !c.is_whitespace() {
                out.push(&text[i..i + 1]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    out
}

fn atom(tok: &str) -> Term {
    if let Some(digits) = tok.strip_prefix('x') {
        if let Ok(i) = digits.parse::<usize>() {
            if i >= 1 {
                return Term::Var(i - 1);
            }
        }
    }
    Term::App(tok.to_string(), Vec::new())
}

fn parse_tokens(tokens: &[&str], pos: &mut usize) -> Result<Term> {
    let tok = *tokens
        .get(*pos)
        .ok_or_else(|| Error::Term("unexpected end of term".into()))?;
    *pos += 1;
    match tok {
        ")" => Err(Error::Term("unexpected `)`".into())),
        "(" => {
            let head = *tokens
                .get(*pos)
                .ok_or_else(|| Error::Term("unexpected end of term".into()))?;
            if head == "(" || head == ")" {
                return Err(Error::Term("expected an operation symbol after `(`".into()));
            }
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(Error::Term("missing `)`".into())),
                    Some(&")") => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_tokens(tokens, pos)?),
                }
            }
            Ok(Term::App(head.to_string(), args))
        }
        _ => Ok(atom(tok)),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{}", i + 1),
            Term::App(name, args) if args.is_empty() => f.write_str(name),
            Term::App(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl core::str::FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        Term::parse(s)
    }
}
