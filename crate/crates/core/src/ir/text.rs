//! Reading and writing the instance text format.
//!
//! ```text
//! group gamma1.graph          # or inline `vertex` / `edge` lines
//! vars X Y
//! disjunct {
//!   eq X a Y^2 b Y^-1 = 1
//!   ab: X = 3*Y
//!   expsum: |X|_a - 2|Y|_a - |Y|_b = 0
//!   len: |X| - |Y| = 2
//!   coset: Z in a b*G'
//! }
//! ```
//!
//! Statements end at a newline or `;`. In terms, `n*t` means `t^n`.

use std::fmt::{self, Write as _};
use std::path::Path;

use crate::error::{Error, Result};
use crate::presentation::{Order, Presentation};
use crate::word::NormalWord;

use super::instance::{Constraint, Disjunct, Equation, ExpSumTerm, Instance};
use super::term::GroupTerm;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        if raw.split_whitespace().next() == Some("group") {
            // The rest of a `group` line is a file path, read verbatim by the parser.
            let col = raw.len() - raw.trim_start().len() + 1;
            out.push(Token {
                tok: Tok::Ident("group".into()),
                line,
                col,
            });
            i = chars.len();
        }
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let after_bar = i > 0 && chars[i - 1] == '|';
            if (c.is_ascii_alphabetic() || c == '_') && !(c == '_' && after_bar) {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse::<i64>()
                    .map_err(|_| Error::parse(line, col, format!("integer `{s}` out of range")))?;
                out.push(Token {
                    tok: Tok::Int(n),
                    line,
                    col,
                });
                continue;
            }
            if "{}()^*=;|:-+'_".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line,
                    col,
                });
                i += 1;
                continue;
            }
            return Err(Error::parse(
                line,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
        out.push(Token {
            tok: Tok::Newline,
            line,
            col: chars.len() + 1,
        });
    }
    let line = out.last().map_or(1, |t| t.line + 1);
    out.push(Token {
        tok: Tok::Eof,
        line,
        col: 1,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    load_graph: &'a dyn Fn(&str) -> Result<Presentation>,
    raw_lines: Vec<&'a str>,
    vertices: Vec<(String, Order)>,
    edges: Vec<(String, String)>,
    presentation: Option<Presentation>,
    variables: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, msg))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`, found {}", describe(self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected a name, found {}", describe(&t))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            t => self.err(format!("expected `{kw}`, found {}", describe(t))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            t => self.err(format!("expected an integer, found {}", describe(&t))),
        }
    }

    fn at_statement_end(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Newline | Tok::Eof | Tok::Sym(';') | Tok::Sym('}')
        )
    }

    fn end_statement(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Newline | Tok::Sym(';') => {
                self.bump();
                Ok(())
            }
            Tok::Eof | Tok::Sym('}') => Ok(()),
            t => self.err(format!("expected end of statement, found {}", describe(t))),
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Tok::Newline | Tok::Sym(';')) {
            self.bump();
        }
    }

    fn presentation(&mut self) -> Result<&Presentation> {
        if self.presentation.is_none() {
            if self.vertices.is_empty() {
                return self.err("no group declared before the first disjunct");
            }
            self.presentation = Some(Presentation::new(&self.vertices, &self.edges)?);
        }
        Ok(self.presentation.as_ref().expect("just built"))
    }

    fn parse(mut self) -> Result<Instance> {
        let mut disjuncts = Vec::new();
        loop {
            self.skip_separators();
            let (line, col) = self.here();
            let kw = match self.bump() {
                Tok::Eof => break,
                Tok::Ident(s) => s,
                t => {
                    return Err(Error::parse(
                        line,
                        col,
                        format!("expected a section keyword, found {}", describe(&t)),
                    ))
                }
            };
            match kw.as_str() {
                "group" => {
                    let raw = self.raw_lines[line - 1];
                    let rest =
                        crate::presentation::strip_comment(&raw[col - 1 + "group".len()..]).trim();
                    if rest.is_empty() {
                        return Err(Error::parse(line, col, "`group` needs a file name"));
                    }
                    let p = (self.load_graph)(rest)?;
                    for v in 0..p.len() {
                        self.vertices.push((p.name(v).to_string(), p.order(v)));
                    }
                    for (u, v) in p.edges() {
                        self.edges
                            .push((p.name(u).to_string(), p.name(v).to_string()));
                    }
                    while !matches!(self.peek(), Tok::Newline | Tok::Eof) {
                        self.bump();
                    }
                }
                "vertex" => {
                    let name = self.ident()?;
                    let order = match self.peek().clone() {
                        Tok::Ident(s) if s == "inf" => {
                            self.bump();
                            Order::Infinite
                        }
                        Tok::Int(k) => {
                            self.bump();
                            Order::Finite(
                                u32::try_from(k)
                                    .map_err(|_| Error::parse(line, col, "order too large"))?,
                            )
                        }
                        _ => Order::Infinite,
                    };
                    self.vertices.push((name, order));
                    self.end_statement()?;
                }
                "edge" => {
                    let u = self.ident()?;
                    let v = self.ident()?;
                    self.edges.push((u, v));
                    self.end_statement()?;
                }
                "vars" => {
                    while let Tok::Ident(x) = self.peek().clone() {
                        if self.variables.contains(&x) {
                            return self.err(format!("variable `{x}` declared twice"));
                        }
                        self.variables.push(x);
                        self.bump();
                    }
                    self.end_statement()?;
                }
                "disjunct" => {
                    self.presentation()?;
                    for x in &self.variables {
                        if self
                            .presentation
                            .as_ref()
                            .expect("built")
                            .try_vertex(x)
                            .is_some()
                        {
                            return Err(Error::parse(
                                line,
                                col,
                                format!("`{x}` names both a variable and a vertex"),
                            ));
                        }
                    }
                    disjuncts.push(self.disjunct()?);
                }
                other => {
                    return Err(Error::parse(
                        line,
                        col,
                        format!("unknown section `{other}`"),
                    ))
                }
            }
        }
        if disjuncts.is_empty() {
            return self.err("instance has no disjuncts");
        }
        let presentation = self
            .presentation
            .expect("a disjunct builds the presentation");
        Instance::new(presentation, self.variables, disjuncts)
    }

    fn disjunct(&mut self) -> Result<Disjunct> {
        self.skip_newlines();
        self.expect('{')?;
        let mut d = Disjunct::default();
        loop {
            self.skip_separators();
            if self.eat('}') {
                break;
            }
            let (line, col) = self.here();
            let kw = self.ident()?;
            match kw.as_str() {
                "eq" => {
                    self.eat(':');
                    let lhs = self.term()?;
                    self.expect('=')?;
                    let rhs = self.term()?;
                    d.equations.push(Equation::new(lhs, rhs));
                }
                "ab" => {
                    self.expect(':')?;
                    let lhs = self.term()?;
                    self.expect('=')?;
                    let rhs = self.term()?;
                    d.constraints.push(Constraint::AbEq(lhs, rhs));
                }
                "expsum" => {
                    self.expect(':')?;
                    let (terms, constant) = self.lincomb(true)?;
                    self.expect('=')?;
                    let rhs = self.int()? - constant;
                    let terms = terms
                        .into_iter()
                        .map(|(coef, var, vertex)| ExpSumTerm {
                            coef,
                            var,
                            vertex: vertex.expect("exponent sums carry a vertex"),
                        })
                        .collect();
                    d.constraints.push(Constraint::ExpSumEq { terms, rhs });
                }
                "len" => {
                    self.expect(':')?;
                    let (terms, constant) = self.lincomb(false)?;
                    self.expect('=')?;
                    let rhs = self.int()? - constant;
                    let terms = terms.into_iter().map(|(c, x, _)| (c, x)).collect();
                    d.constraints.push(Constraint::LengthEq { terms, rhs });
                }
                "coset" => {
                    self.expect(':')?;
                    let var = self.variable()?;
                    self.keyword("in")?;
                    let rep = self.coset_rep()?;
                    self.expect('*')?;
                    self.keyword("G")?;
                    self.expect('\'')?;
                    d.constraints.push(Constraint::Coset { var, rep });
                }
                other => {
                    return Err(Error::parse(
                        line,
                        col,
                        format!("unknown statement `{other}`"),
                    ))
                }
            }
            if !self.at_statement_end() {
                return self.err(format!("unexpected {}", describe(self.peek())));
            }
        }
        if d.is_empty() {
            return self.err("empty disjunct");
        }
        Ok(d)
    }

    /// Vertex powers (or `1`) up to the `*` before `G'`.
    fn coset_rep(&mut self) -> Result<NormalWord> {
        let mut raw = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Int(1) => {
                    self.bump();
                }
                Tok::Ident(_) => {
                    let v = self.vertex()?;
                    let e = if self.eat('^') { self.int()? } else { 1 };
                    raw.push((v, e));
                }
                Tok::Sym('*') if !raw.is_empty() || self.toks[self.pos - 1].tok == Tok::Int(1) => {
                    break
                }
                t => {
                    return self.err(format!(
                        "expected a coset representative, found {}",
                        describe(&t)
                    ))
                }
            }
        }
        Ok(self.presentation()?.normalize(&raw))
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn variable(&mut self) -> Result<String> {
        let x = self.ident()?;
        if self.variables.contains(&x) {
            Ok(x)
        } else {
            Err(Error::UnknownVariable(x))
        }
    }

    fn vertex(&mut self) -> Result<usize> {
        let v = self.ident()?;
        self.presentation()?.vertex(&v)
    }

    /// Linear combination of `|X|_v` (or `|X|`) terms and integers.
    #[allow(clippy::type_complexity)]
    fn lincomb(&mut self, with_vertex: bool) -> Result<(Vec<(i64, String, Option<usize>)>, i64)> {
        let mut terms = Vec::new();
        let mut constant = 0;
        let mut first = true;
        while !matches!(self.peek(), Tok::Sym('=')) {
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                return self.err(format!(
                    "expected `+`, `-` or `=`, found {}",
                    describe(self.peek())
                ));
            };
            first = false;
            let coef = match self.peek() {
                Tok::Int(n) => {
                    let n = *n;
                    self.bump();
                    Some(n)
                }
                _ => None,
            };
            if self.eat('|') {
                let var = self.variable()?;
                self.expect('|')?;
                let vertex = if with_vertex {
                    self.expect('_')?;
                    Some(self.vertex()?)
                } else {
                    None
                };
                terms.push((sign * coef.unwrap_or(1), var, vertex));
            } else if let Some(n) = coef {
                constant += sign * n;
            } else {
                return self.err(format!("expected a term, found {}", describe(self.peek())));
            }
        }
        if first {
            return self.err("empty linear combination");
        }
        Ok((terms, constant))
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<GroupTerm> {
        let mut t = GroupTerm::identity();
        if !self.starts_primary() {
            return self.err(format!("expected a term, found {}", describe(self.peek())));
        }
        while self.starts_primary() {
            let f = self.factor()?;
            let p = self.presentation()?;
            t = t.concat(p, &f);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<GroupTerm> {
        let base = self.primary()?;
        if self.eat('^') {
            let n = self.int()?;
            let p = self.presentation()?;
            return Ok(base.pow(p, n));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<GroupTerm> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                if self.variables.contains(&x) {
                    return Ok(GroupTerm::var(x));
                }
                let p = self.presentation()?;
                match p.try_vertex(&x) {
                    Some(v) => Ok(GroupTerm::constant(p.generator(v))),
                    None if x.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') => {
                        Err(Error::UnknownVariable(x))
                    }
                    None => Err(Error::UnknownVertex(x)),
                }
            }
            Tok::Int(n) => {
                self.bump();
                if self.eat('*') {
                    let inner = self.primary()?;
                    let p = self.presentation()?;
                    Ok(inner.pow(p, n))
                } else if n == 1 {
                    Ok(GroupTerm::identity())
                } else {
                    self.err(format!("`{n}` must be followed by `*`"))
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            t => self.err(format!("expected a term, found {}", describe(&t))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses an instance; `group <file>` lines are resolved by `load_graph`.
pub fn parse_instance_with(
    text: &str,
    load_graph: &dyn Fn(&str) -> Result<Presentation>,
) -> Result<Instance> {
    Parser {
        toks: tokenize(text)?,
        pos: 0,
        load_graph,
        raw_lines: text.lines().collect(),
        vertices: Vec::new(),
        edges: Vec::new(),
        presentation: None,
        variables: Vec::new(),
    }
    .parse()
}

/// Parses an instance, reading `group <file>` paths relative to `base`.
pub fn parse_instance_in(text: &str, base: &Path) -> Result<Instance> {
    let load = |name: &str| {
        let path = base.join(name);
        let text = std::fs::read_to_string(&path).map_err(|e| {
            Error::InvalidPresentation(format!("cannot read {}: {e}", path.display()))
        })?;
        Presentation::parse(&text)
    };
    parse_instance_with(text, &load)
}

/// Parses a self-contained instance (inline `vertex`/`edge` lines, or
/// `group` paths relative to the working directory).
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_in(text, Path::new("."))
}

fn write_lincomb(out: &mut String, terms: impl Iterator<Item = (i64, String)>) {
    for (i, (c, body)) in terms.enumerate() {
        let mag = c.unsigned_abs();
        match (i, c < 0) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        if mag != 1 {
            let _ = write!(out, "{mag}");
        }
        out.push_str(&body);
    }
}

impl Instance {
    /// The instance in the text format, with the group written inline.
    pub fn to_text(&self) -> String {
        let p = &self.presentation;
        let mut out = p.to_text();
        if !self.variables.is_empty() {
            out.push_str("vars");
            for x in &self.variables {
                out.push(' ');
                out.push_str(x);
            }
            out.push('\n');
        }
        for d in &self.disjuncts {
            out.push_str("disjunct {\n");
            for e in &d.equations {
                let _ = writeln!(out, "  eq {} = {}", e.lhs.display(p), e.rhs.display(p));
            }
            for c in &d.constraints {
                out.push_str("  ");
                match c {
                    Constraint::AbEq(l, r) => {
                        let _ = write!(out, "ab: {} = {}", l.display(p), r.display(p));
                    }
                    Constraint::ExpSumEq { terms, rhs } => {
                        out.push_str("expsum: ");
                        write_lincomb(
                            &mut out,
                            terms
                                .iter()
                                .map(|t| (t.coef, format!("|{}|_{}", t.var, p.name(t.vertex)))),
                        );
                        if terms.is_empty() {
                            out.push('0');
                        }
                        let _ = write!(out, " = {rhs}");
                    }
                    Constraint::LengthEq { terms, rhs } => {
                        out.push_str("len: ");
                        write_lincomb(&mut out, terms.iter().map(|(c, x)| (*c, format!("|{x}|"))));
                        if terms.is_empty() {
                            out.push('0');
                        }
                        let _ = write!(out, " = {rhs}");
                    }
                    Constraint::Coset { var, rep } => {
                        let _ = write!(out, "coset: {var} in {}*G'", rep.display(p));
                    }
                }
                out.push('\n');
            }
            out.push_str("}\n");
        }
        out
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses a single term such as `X a Y^-1 (a b)^2` over `p`.
pub fn parse_term(p: &Presentation, variables: &[String], text: &str) -> Result<GroupTerm> {
    let no_group = |_: &str| Err(Error::parse(1, 1, "`group` is not allowed here"));
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
        load_graph: &no_group,
        raw_lines: text.lines().collect(),
        vertices: Vec::new(),
        edges: Vec::new(),
        presentation: Some(p.clone()),
        variables: variables.to_vec(),
    };
    let t = parser.term()?;
    while *parser.peek() == Tok::Newline {
        parser.bump();
    }
    if *parser.peek() != Tok::Eof {
        return parser.err(format!("unexpected {} after term", describe(parser.peek())));
    }
    Ok(t)
}
