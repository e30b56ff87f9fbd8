//! Surface syntax for posets, dilator specs, elements, terms and ordinals.
//!
//! Posets are line based:
//!
//! ```text
//! elements: a b c
//! le: a b
//! le: b c
//! ```
//!
//! Elements are read relative to a spec and printed as `seq⟨a b⟩`,
//! `mset[a a b]` and `id(a)`. The prefixes are optional on input, `<` `>`
//! may stand for the angle brackets and labels may also be separated by
//! commas. Composite specs nest: `mset[seq⟨a⟩ seq⟨a b⟩]`. Term payloads use
//! the compact form `⟨0,1⟩`, `[0,0]`.

use std::str::FromStr;

use crate::dilator::{DilatorElement, DilatorSpec, Label};
use crate::error::{Error, Result};
use crate::kruskal::{KruskalTerm, TermSystem};
use crate::order::FinitePoset;
use crate::ordinal::Ordinal;

const RESERVED: &[char] = &[',', ';', '(', ')', '[', ']', '<', '>', '⟨', '⟩'];

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn eat_any(&mut self, options: &[char]) -> Option<char> {
        let c = self.peek()?;
        if options.contains(&c) {
            self.pos += c.len_utf8();
            Some(c)
        } else {
            None
        }
    }

    fn line(&self) -> usize {
        1 + self.text[..self.pos].matches('\n').count()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let message = message.into();
        let near: String = self.rest().chars().take(12).collect();
        if near.is_empty() {
            Error::syntax(self.line(), format!("{message} at end of input"))
        } else {
            Error::syntax(self.line(), format!("{message} near `{near}`"))
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| c.is_whitespace() || RESERVED.contains(&c))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected an identifier"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

/// Reads the line-based poset format and closes `le` reflexively and
/// transitively.
pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let mut carrier: Option<Vec<String>> = None;
    let mut pairs = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("elements:") {
            if carrier.is_some() {
                return Err(Error::syntax(line, "duplicate `elements:` line"));
            }
            carrier = Some(rest.split_whitespace().map(str::to_owned).collect());
        } else if let Some(rest) = content.strip_prefix("le:") {
            if carrier.is_none() {
                return Err(Error::syntax(line, "`le:` before the `elements:` line"));
            }
            let ids: Vec<&str> = rest.split_whitespace().collect();
            let [a, b] = ids.as_slice() else {
                return Err(Error::syntax(line, "`le:` takes exactly two identifiers"));
            };
            pairs.push((a.to_string(), b.to_string()));
        } else {
            return Err(Error::syntax(line, format!("unrecognized line `{content}`")));
        }
    }
    let carrier = carrier.ok_or_else(|| Error::syntax(1, "missing `elements:` line"))?;
    FinitePoset::with_closure(carrier, pairs)
}

pub fn parse_spec(text: &str) -> Result<DilatorSpec> {
    let mut cur = Cursor::new(text);
    let spec = spec_expr(&mut cur)?;
    cur.finish()?;
    Ok(spec)
}

fn spec_expr(cur: &mut Cursor) -> Result<DilatorSpec> {
    let name = cur.ident()?;
    match name {
        "seq" => Ok(DilatorSpec::Seq),
        "multiset" | "mset" => Ok(DilatorSpec::Multiset),
        "identity" | "id" => Ok(DilatorSpec::Identity),
        "star" => {
            cur.expect('(')?;
            let inner = spec_expr(cur)?;
            cur.expect(')')?;
            Ok(DilatorSpec::star(inner))
        }
        "compose" => {
            cur.expect('(')?;
            let outer = spec_expr(cur)?;
            cur.expect(',')?;
            let inner = spec_expr(cur)?;
            cur.expect(')')?;
            Ok(DilatorSpec::compose(outer, inner))
        }
        other => Err(Error::UnknownIdentifier(other.to_owned())),
    }
}

impl FromStr for DilatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

/// Reads an element of `spec` over `x`, naming points by identifier.
pub fn parse_element(spec: &DilatorSpec, x: &FinitePoset, text: &str) -> Result<DilatorElement> {
    let mut cur = Cursor::new(text);
    let point = |c: &mut Cursor| -> Result<Label> { Ok(Label::Point(x.require(c.ident()?)?)) };
    let element = payload(spec, &mut cur, &point)?;
    cur.finish()?;
    spec.validate(x, &element)?;
    Ok(element)
}

fn payload(spec: &DilatorSpec, cur: &mut Cursor, label: &dyn Fn(&mut Cursor) -> Result<Label>) -> Result<DilatorElement> {
    match spec {
        DilatorSpec::Star(inner) => payload(inner, cur, label),
        DilatorSpec::Compose(outer, inner) => payload(outer, cur, &|c: &mut Cursor| {
            Ok(Label::Elem(Box::new(payload(inner, c, label)?)))
        }),
        DilatorSpec::Identity => {
            if cur.eat_str("id(") {
                let l = label(cur)?;
                cur.expect(')')?;
                Ok(DilatorElement::Id(l))
            } else {
                Ok(DilatorElement::Id(label(cur)?))
            }
        }
        DilatorSpec::Seq => {
            let _ = cur.eat_str("seq");
            if cur.eat_any(&['⟨', '<']).is_none() {
                return Err(cur.error("expected `⟨`"));
            }
            Ok(DilatorElement::Seq(label_list(cur, label, &['⟩', '>'])?))
        }
        DilatorSpec::Multiset => {
            let _ = cur.eat_str("multiset") || cur.eat_str("mset");
            if !cur.eat('[') {
                return Err(cur.error("expected `[`"));
            }
            Ok(DilatorElement::multiset(label_list(cur, label, &[']'])?))
        }
    }
}

/// Labels separated by commas or whitespace, up to a closing bracket.
fn label_list(cur: &mut Cursor, label: &dyn Fn(&mut Cursor) -> Result<Label>, close: &[char]) -> Result<Vec<Label>> {
    let mut out = Vec::new();
    loop {
        if cur.eat_any(close).is_some() {
            return Ok(out);
        }
        if cur.peek().is_none() {
            return Err(cur.error(format!("expected `{}`", close[0])));
        }
        out.push(label(cur)?);
        if cur.eat(',') && cur.eat_any(close).is_some() {
            return Err(cur.error("trailing `,`"));
        }
    }
}

#[derive(Clone, Copy)]
enum Style {
    Prefixed,
    Compact,
}

fn render(s: &DilatorElement, name: &dyn Fn(usize) -> String, style: Style) -> String {
    let label = |l: &Label| match l {
        Label::Point(i) => name(*i),
        Label::Elem(e) => render(e, name, style),
    };
    let (sep, seq, mset, id) = match style {
        Style::Prefixed => (" ", "seq", "mset", true),
        Style::Compact => (",", "", "", false),
    };
    match s {
        DilatorElement::Id(l) if id => format!("id({})", label(l)),
        DilatorElement::Id(l) => label(l),
        DilatorElement::Seq(ls) => format!("{seq}⟨{}⟩", ls.iter().map(label).collect::<Vec<_>>().join(sep)),
        DilatorElement::Multiset(_) => format!("{mset}[{}]", s.labels().map(label).collect::<Vec<_>>().join(sep)),
    }
}

/// Prints an element in the prefixed form, `seq⟨a b⟩`, `mset[a a]`, `id(a)`,
/// with points named by `name`.
pub fn format_element_with(s: &DilatorElement, name: &dyn Fn(usize) -> String) -> String {
    render(s, name, Style::Prefixed)
}

/// Prints an element over `x` using its identifiers.
pub fn format_element(x: &FinitePoset, s: &DilatorElement) -> String {
    format_element_with(s, &|i| x.id(i).to_owned())
}

/// The compact payload form used inside terms: `⟨0,1⟩`, `[0,0]`.
pub fn format_payload(s: &DilatorElement) -> String {
    render(s, &|i| i.to_string(), Style::Compact)
}

/// Reads `( sub , … ; payload )`. Payload indices refer to the subterms in
/// canonical order, whatever order they are listed in.
pub fn parse_term(system: &TermSystem, text: &str) -> Result<KruskalTerm> {
    let mut cur = Cursor::new(text);
    let term = term_expr(system, &mut cur)?;
    cur.finish()?;
    Ok(term)
}

fn term_expr(system: &TermSystem, cur: &mut Cursor) -> Result<KruskalTerm> {
    cur.expect('(')?;
    let mut subterms = Vec::new();
    if !cur.eat(';') {
        loop {
            subterms.push(term_expr(system, cur)?);
            if cur.eat(',') {
                continue;
            }
            cur.expect(';')?;
            break;
        }
    }
    let k = subterms.len();
    let index = |c: &mut Cursor| -> Result<Label> {
        let token = c.ident()?;
        let i: usize = token
            .parse()
            .map_err(|_| c.error(format!("expected a subterm index, found `{token}`")))?;
        if i >= k {
            return Err(c.error(format!("index {i} out of range for {k} subterms")));
        }
        Ok(Label::Point(i))
    };
    let kernel = payload(system.spec(), cur, &index)?;
    cur.expect(')')?;
    system.mk_term(subterms, kernel)
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    let mut cur = Cursor::new(text);
    let value = ord_sum(&mut cur)?;
    cur.finish()?;
    Ok(value)
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ordinal(s)
    }
}

fn ord_sum(cur: &mut Cursor) -> Result<Ordinal> {
    let mut acc = ord_product(cur)?;
    loop {
        if cur.eat_str("(+)") {
            acc = acc.natural_sum(&ord_product(cur)?);
        } else if cur.eat('+') {
            acc = acc.add(&ord_product(cur)?);
        } else {
            return Ok(acc);
        }
    }
}

fn ord_product(cur: &mut Cursor) -> Result<Ordinal> {
    let mut acc = ord_power(cur)?;
    loop {
        if cur.eat_str("(*)") {
            acc = acc.natural_product(&ord_power(cur)?);
        } else if cur.eat('*') {
            let factor = ord_power(cur)?;
            let n = factor
                .as_nat()
                .ok_or_else(|| cur.error("the right operand of `*` must be a natural number"))?;
            acc = acc.mul_nat(n);
        } else {
            return Ok(acc);
        }
    }
}

fn ord_power(cur: &mut Cursor) -> Result<Ordinal> {
    let start = cur.pos;
    let base = ord_primary(cur)?;
    if !cur.eat('^') {
        return Ok(base);
    }
    if base != Ordinal::omega() {
        cur.pos = start;
        return Err(cur.error("only `w` may be raised to a power"));
    }
    Ok(Ordinal::omega_pow(&ord_power(cur)?))
}

fn ord_primary(cur: &mut Cursor) -> Result<Ordinal> {
    match cur.peek() {
        Some('(') => {
            cur.expect('(')?;
            let inner = ord_sum(cur)?;
            cur.expect(')')?;
            Ok(inner)
        }
        Some(c) if c.is_ascii_digit() => {
            let rest = cur.rest();
            let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let n = rest[..len].parse().map_err(|_| cur.error("natural number too large"))?;
            cur.pos += len;
            Ok(Ordinal::nat(n))
        }
        Some('w' | 'ω') if !cur.rest()[cur.rest().chars().next().map_or(0, char::len_utf8)..].starts_with(char::is_alphanumeric) => {
            cur.pos += cur.rest().chars().next().map_or(0, char::len_utf8);
            Ok(Ordinal::omega())
        }
        _ => {
            if cur.eat_str("e0") {
                return Ok(Ordinal::epsilon(&Ordinal::zero()));
            }
            if cur.eat_str("phi") {
                cur.expect('(')?;
                let a = ord_sum(cur)?;
                cur.expect(',')?;
                let b = ord_sum(cur)?;
                cur.expect(')')?;
                return Ok(Ordinal::veblen(&a, &b));
            }
            Err(cur.error("expected an ordinal expression"))
        }
    }
}
