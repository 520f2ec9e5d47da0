//! Scenario files: a small INI-style grammar describing a nerve, its charts,
//! optional `ξ` overrides, connection data, Chern numbers and a suite run.
//!
//! ```text
//! # comments run to the end of the line
//! [nerve]
//! dim = 2
//! charts = U0, U1
//! xi = glued                  # or radial
//!
//! [chart U1]                  # omitted charts are the identity
//! map = b1, b2 + b1^2         # ψ: images of the base coordinates
//! inverse = b1, b2 - b1^2
//!
//! [xi U1 U0]                  # replaces ξ on the pair (U1, U0)
//! db1 db2 = 0
//!
//! [geometry]
//! connection = generic        # or type11
//! seed = 1
//!
//! [chern]
//! d = 2
//! c1^2 = 0
//! c2 = 24
//!
//! [run]
//! suites = cech, staircase
//! seed = 0
//! trials = 10
//! order = 10
//! ```
//!
//! Expressions use `b1..bd` for holomorphic and `B1..Bd` for conjugate
//! coordinates, `i` for the imaginary unit, integer literals, `+ - * / ^` and
//! parentheses. Division and negative powers are allowed by monomials only.
//! Every diagnostic carries the line and column of the offending token.

use crate::cech::{GluingData, XiChoice};
use crate::genus::{chern_key, parse_chern_key, ChernData};
use crate::polycx::form::{anti_bit, holo_bit};
use crate::polycx::{Form, GaussRat, Poly, PolyBiholo};
use crate::suites::{ConnectionKind, Inputs, Suite, SuiteOptions};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// A chart map `ψ` together with its explicit inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartMap {
    pub forward: Vec<Poly>,
    pub inverse: Vec<Poly>,
}

/// A replacement `ξ_{βα}` for one pair of charts.
#[derive(Clone, Debug, PartialEq)]
pub struct XiOverride {
    pub target: String,
    pub source: String,
    pub form: Form,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub dim: usize,
    pub charts: Vec<String>,
    pub maps: BTreeMap<String, ChartMap>,
    pub xi_choice: XiChoice,
    pub xi_overrides: Vec<XiOverride>,
    pub connection: ConnectionKind,
    pub geometry_seed: u64,
    pub chern: Option<ChernData>,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub trials: usize,
    pub order: usize,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            dim: 2,
            charts: Vec::new(),
            maps: BTreeMap::new(),
            xi_choice: XiChoice::Glued,
            xi_overrides: Vec::new(),
            connection: ConnectionKind::Generic,
            geometry_seed: 1,
            chern: None,
            suites: Vec::new(),
            seed: 0,
            trials: 10,
            order: 10,
        }
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// A piece of source text with the position of its first character.
#[derive(Clone, Debug)]
struct Spanned {
    text: String,
    line: usize,
    col: usize,
}

impl Spanned {
    fn err(&self, msg: impl Into<String>) -> Error {
        parse_err(self.line, self.col, msg)
    }

    /// Splits on commas, keeping the column of each trimmed piece.
    fn split_commas(&self) -> Vec<Spanned> {
        let mut out = Vec::new();
        let mut start = 0;
        let chars: Vec<char> = self.text.chars().collect();
        for k in 0..=chars.len() {
            if k == chars.len() || chars[k] == ',' {
                let piece: String = chars[start..k].iter().collect();
                let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
                out.push(Spanned { text: piece.trim().to_string(), line: self.line, col: self.col + start + lead });
                start = k + 1;
            }
        }
        out
    }

    fn parse_num<T: std::str::FromStr>(&self) -> Result<T> {
        self.text.parse().map_err(|_| self.err(format!("expected a non-negative integer, found `{}`", self.text)))
    }
}

struct Entry {
    key: Spanned,
    value: Spanned,
}

struct Section {
    header: Spanned,
    kind: String,
    args: Vec<Spanned>,
    entries: Vec<Entry>,
}

impl Section {
    fn unknown_key(&self, e: &Entry) -> Error {
        e.key.err(format!("unknown key `{}` in [{}]", e.key.text, self.kind))
    }
}

fn lex(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let lead = body.chars().take_while(|c| c.is_whitespace()).count();
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = lead + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(inner) = rest.strip_suffix(']') else {
                return Err(parse_err(line, col + trimmed.chars().count(), "missing `]` after section header"));
            };
            let mut words = Vec::new();
            let mut offset = 1;
            for w in inner.split(' ') {
                if !w.is_empty() {
                    words.push(Spanned { text: w.to_string(), line, col: col + offset });
                }
                offset += w.chars().count() + 1;
            }
            let Some(first) = words.first().cloned() else {
                return Err(parse_err(line, col, "empty section header"));
            };
            sections.push(Section {
                header: Spanned { text: trimmed.to_string(), line, col },
                kind: first.text.clone(),
                args: words[1..].to_vec(),
                entries: Vec::new(),
            });
            continue;
        }
        let Some(eq) = trimmed.find('=') else {
            return Err(parse_err(line, col, format!("expected `key = value`, found `{trimmed}`")));
        };
        let Some(section) = sections.last_mut() else {
            return Err(parse_err(line, col, "entry before the first section header"));
        };
        let key_text = &trimmed[..eq];
        let value_text = &trimmed[eq + 1..];
        let value_lead = value_text.chars().take_while(|c| c.is_whitespace()).count();
        let key = Spanned { text: key_text.trim().to_string(), line, col };
        if key.text.is_empty() {
            return Err(key.err("missing key before `=`"));
        }
        let value = Spanned {
            text: value_text.trim().to_string(),
            line,
            col: col + key_text.chars().count() + 1 + value_lead,
        };
        if value.text.is_empty() {
            return Err(parse_err(line, col + key_text.chars().count() + 1, format!("missing value for `{}`", key.text)));
        }
        if section.entries.iter().any(|e| e.key.text == key.text) {
            return Err(key.err(format!("duplicate key `{}`", key.text)));
        }
        section.entries.push(Entry { key, value });
    }
    Ok(sections)
}

/// Recursive-descent parser for polynomial expressions.
struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    dim: usize,
    src: &'a Spanned,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a Spanned, dim: usize) -> Self {
        ExprParser { chars: src.text.chars().collect(), pos: 0, dim, src }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        parse_err(self.src.line, self.src.col + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly> {
        if self.peek().is_none() {
            return Err(self.err("empty expression"));
        }
        let p = self.expr()?;
        if let Some(c) = self.peek() {
            return Err(self.err(format!("unexpected `{c}`")));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.unary()?;
                    let inv = den.monomial_inverse().ok_or_else(|| {
                        parse_err(self.src.line, self.src.col + at, format!("cannot divide by `{den}`: not a monomial"))
                    })?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let neg = self.chars.get(self.pos) == Some(&'-');
        if neg {
            self.pos += 1;
        }
        let e = self.integer().ok_or_else(|| self.err("expected an integer exponent"))?;
        let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
        if !neg {
            return Ok(base.pow(e));
        }
        base.monomial_inverse().map(|inv| inv.pow(e)).ok_or_else(|| {
            parse_err(self.src.line, self.src.col + at, format!("negative power of `{base}`: not a monomial"))
        })
    }

    fn integer(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().ok_or_else(|| self.err("integer literal too large"))?;
                let n = i64::try_from(n).map_err(|_| self.err("integer literal too large"))?;
                Ok(Poly::int(n))
            }
            Some('i') => {
                self.pos += 1;
                Ok(Poly::constant(GaussRat::i()))
            }
            Some(c @ ('b' | 'B')) => {
                self.pos += 1;
                let k = self
                    .integer()
                    .ok_or_else(|| parse_err(self.src.line, self.src.col + at, format!("expected an index after `{c}`")))?;
                if k == 0 || k as usize > self.dim {
                    return Err(parse_err(
                        self.src.line,
                        self.src.col + at,
                        format!("coordinate `{c}{k}` out of range 1..={}", self.dim),
                    ));
                }
                let i = k as usize - 1;
                Ok(if c == 'b' { Poly::var(i) } else { Poly::bar_var(i) })
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn parse_expr(src: &Spanned, dim: usize) -> Result<Poly> {
    ExprParser::new(src, dim).parse()
}

fn parse_tuple(src: &Spanned, dim: usize) -> Result<Vec<Poly>> {
    let parts = src.split_commas();
    if parts.len() != dim {
        return Err(src.err(format!("expected {dim} comma-separated components, found {}", parts.len())));
    }
    parts.iter().map(|p| parse_expr(p, dim)).collect()
}

/// `db1 db2` or `db1 dB2` as a form mask.
fn parse_mask(src: &Spanned, dim: usize) -> Result<u64> {
    let mut mask = 0u64;
    let mut offset = 0;
    for w in src.text.split(' ') {
        let here = Spanned { text: w.to_string(), line: src.line, col: src.col + offset };
        offset += w.chars().count() + 1;
        if w.is_empty() {
            continue;
        }
        let (anti, digits) = if let Some(d) = w.strip_prefix("db") {
            (false, d)
        } else if let Some(d) = w.strip_prefix("dB") {
            (true, d)
        } else {
            return Err(here.err(format!("expected a differential like `db1`, found `{w}`")));
        };
        let k: usize = digits.parse().map_err(|_| here.err(format!("bad differential `{w}`")))?;
        if k == 0 || k > dim {
            return Err(here.err(format!("differential `{w}` out of range 1..={dim}")));
        }
        let bit = if anti { anti_bit(k - 1) } else { holo_bit(k - 1) };
        if mask & bit != 0 {
            return Err(here.err(format!("repeated differential `{w}`")));
        }
        mask |= bit;
    }
    if mask == 0 {
        return Err(src.err("empty differential"));
    }
    Ok(mask)
}

fn mask_words(mask: u64) -> String {
    let mut words = Vec::new();
    for b in 0..64 {
        if mask >> b & 1 == 1 {
            words.push(if b < 32 { format!("db{}", b + 1) } else { format!("dB{}", b - 31) });
        }
    }
    words.join(" ")
}

impl Scenario {
    pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Scenario::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Scenario> {
        let sections = lex(text)?;
        let mut sc = Scenario::default();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for s in &sections {
            let tag = std::iter::once(s.kind.clone()).chain(s.args.iter().map(|a| a.text.clone())).collect::<Vec<_>>().join(" ");
            if let Some(first) = seen.insert(tag.clone(), s.header.line) {
                return Err(s.header.err(format!("section [{tag}] already defined on line {first}")));
            }
        }
        // the nerve fixes the dimension, so read it first
        for s in sections.iter().filter(|s| s.kind == "nerve") {
            expect_args(s, 0)?;
            for e in &s.entries {
                match e.key.text.as_str() {
                    "dim" => {
                        sc.dim = e.value.parse_num()?;
                        if sc.dim == 0 {
                            return Err(e.value.err("dimension must be positive"));
                        }
                    }
                    "charts" => {
                        for c in e.value.split_commas() {
                            if c.text.is_empty() || !c.text.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                                return Err(c.err(format!("invalid chart name `{}`", c.text)));
                            }
                            if sc.charts.contains(&c.text) {
                                return Err(c.err(format!("chart `{}` declared twice", c.text)));
                            }
                            sc.charts.push(c.text);
                        }
                    }
                    "xi" => {
                        sc.xi_choice = match e.value.text.as_str() {
                            "glued" => XiChoice::Glued,
                            "radial" => XiChoice::Radial,
                            other => return Err(e.value.err(format!("expected glued or radial, found `{other}`"))),
                        }
                    }
                    _ => return Err(s.unknown_key(e)),
                }
            }
        }
        for s in &sections {
            match s.kind.as_str() {
                "nerve" => {}
                "chart" => sc.read_chart(s)?,
                "xi" => sc.read_xi(s)?,
                "geometry" => {
                    expect_args(s, 0)?;
                    for e in &s.entries {
                        match e.key.text.as_str() {
                            "connection" => sc.connection = e.value.text.parse().map_err(|x: Error| e.value.err(x.to_string()))?,
                            "seed" => sc.geometry_seed = e.value.parse_num()?,
                            _ => return Err(s.unknown_key(e)),
                        }
                    }
                }
                "chern" => sc.read_chern(s)?,
                "run" => {
                    expect_args(s, 0)?;
                    for e in &s.entries {
                        match e.key.text.as_str() {
                            "suites" => {
                                for p in e.value.split_commas() {
                                    let suite: Suite = p.text.parse().map_err(|x: Error| p.err(x.to_string()))?;
                                    if !sc.suites.contains(&suite) {
                                        sc.suites.push(suite);
                                    }
                                }
                            }
                            "seed" => sc.seed = e.value.parse_num()?,
                            "trials" => sc.trials = e.value.parse_num()?,
                            "order" => sc.order = e.value.parse_num()?,
                            _ => return Err(s.unknown_key(e)),
                        }
                    }
                }
                other => return Err(s.header.err(format!("unknown section [{other}]"))),
            }
        }
        // surface invalid gluing data with the position of the section that introduced it
        if !sc.charts.is_empty() {
            sc.gluing().map_err(|e| match e {
                Error::Parse { .. } => e,
                other => {
                    let at = sections.iter().find(|s| s.kind == "nerve").map(|s| &s.header);
                    at.map(|h| h.err(format!("invalid gluing data: {other}"))).unwrap_or(other)
                }
            })?;
        }
        Ok(sc)
    }

    fn chart_index(&self, name: &Spanned) -> Result<usize> {
        self.charts
            .iter()
            .position(|c| *c == name.text)
            .ok_or_else(|| name.err(format!("chart `{}` is not declared in [nerve]", name.text)))
    }

    fn read_chart(&mut self, s: &Section) -> Result<()> {
        expect_args(s, 1)?;
        let name = &s.args[0];
        self.chart_index(name)?;
        let (mut fwd, mut inv) = (None, None);
        for e in &s.entries {
            match e.key.text.as_str() {
                "map" => fwd = Some(parse_tuple(&e.value, self.dim)?),
                "inverse" => inv = Some(parse_tuple(&e.value, self.dim)?),
                _ => return Err(s.unknown_key(e)),
            }
        }
        let (Some(forward), Some(inverse)) = (fwd, inv) else {
            return Err(s.header.err(format!("[chart {}] needs both `map` and `inverse`", name.text)));
        };
        PolyBiholo::new(forward.clone(), inverse.clone()).map_err(|e| s.header.err(format!("chart `{}`: {e}", name.text)))?;
        self.maps.insert(name.text.clone(), ChartMap { forward, inverse });
        Ok(())
    }

    fn read_xi(&mut self, s: &Section) -> Result<()> {
        expect_args(s, 2)?;
        let (b, a) = (self.chart_index(&s.args[0])?, self.chart_index(&s.args[1])?);
        if b <= a {
            return Err(s.header.err("write ξ overrides as [xi TARGET SOURCE] with TARGET declared after SOURCE"));
        }
        let mut form = Form::zero();
        for e in &s.entries {
            let mask = parse_mask(&e.key, self.dim)?;
            if mask.count_ones() != 2 || mask >> 32 != 0 {
                return Err(e.key.err("ξ is a (2,0)-form: use two holomorphic differentials"));
            }
            let (i, j) = (mask.trailing_zeros() as usize, 63 - mask.leading_zeros() as usize);
            let coeff = parse_expr(&e.value, self.dim)?;
            form = &form + &Form::db(i).wedge(&Form::db(j)).scale(&coeff);
        }
        self.xi_overrides.push(XiOverride { target: s.args[0].text.clone(), source: s.args[1].text.clone(), form });
        Ok(())
    }

    fn read_chern(&mut self, s: &Section) -> Result<()> {
        expect_args(s, 0)?;
        let mut d = None;
        let mut numbers = BTreeMap::new();
        for e in &s.entries {
            if e.key.text == "d" {
                d = Some(e.value.parse_num::<u32>()?);
                continue;
            }
            let p = parse_chern_key(&e.key.text).map_err(|x| e.key.err(x.to_string()))?;
            let v: i64 = e.value.text.parse().map_err(|_| e.value.err(format!("expected an integer, found `{}`", e.value.text)))?;
            numbers.insert(p, v);
        }
        let d = d.ok_or_else(|| s.header.err("[chern] needs `d`"))?;
        self.chern = Some(ChernData::new(d, numbers).map_err(|x| s.header.err(x.to_string()))?);
        Ok(())
    }

    /// The chart maps `ψ_α`, identity where no `[chart]` section was given.
    pub fn psis(&self) -> Result<Vec<PolyBiholo>> {
        self.charts
            .iter()
            .map(|c| match self.maps.get(c) {
                Some(m) => PolyBiholo::new(m.forward.clone(), m.inverse.clone()),
                None => Ok(PolyBiholo::identity(self.dim)),
            })
            .collect()
    }

    pub fn gluing(&self) -> Result<GluingData> {
        if self.charts.is_empty() {
            return Err(Error::Input("scenario declares no charts".into()));
        }
        let mut g = GluingData::from_charts(self.charts.clone(), &self.psis()?, self.xi_choice)?;
        for o in &self.xi_overrides {
            let b = self.charts.iter().position(|c| *c == o.target).ok_or_else(|| Error::Input(format!("undeclared chart `{}`", o.target)))?;
            let a = self.charts.iter().position(|c| *c == o.source).ok_or_else(|| Error::Input(format!("undeclared chart `{}`", o.source)))?;
            g = g.with_xi(b, a, o.form.clone())?;
        }
        Ok(g)
    }

    pub fn inputs(&self) -> Result<Inputs> {
        Ok(Inputs {
            gluing: if self.charts.is_empty() { None } else { Some(self.gluing()?) },
            connection: self.connection,
            geometry_seed: self.geometry_seed,
            chern: self.chern.clone(),
        })
    }

    pub fn options(&self) -> SuiteOptions {
        SuiteOptions { dim: self.dim, seed: self.seed, trials: self.trials, order: self.order }
    }
}

fn expect_args(s: &Section, n: usize) -> Result<()> {
    if s.args.len() != n {
        return Err(s.header.err(format!("[{}] takes {n} argument(s), found {}", s.kind, s.args.len())));
    }
    Ok(())
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Canonical text; parsing it gives back an equal scenario.
impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[nerve]")?;
        writeln!(f, "dim = {}", self.dim)?;
        if !self.charts.is_empty() {
            writeln!(f, "charts = {}", self.charts.join(", "))?;
        }
        writeln!(f, "xi = {}", if self.xi_choice == XiChoice::Glued { "glued" } else { "radial" })?;
        for c in &self.charts {
            if let Some(m) = self.maps.get(c) {
                writeln!(f, "\n[chart {c}]")?;
                writeln!(f, "map = {}", join(&m.forward))?;
                writeln!(f, "inverse = {}", join(&m.inverse))?;
            }
        }
        for o in &self.xi_overrides {
            writeln!(f, "\n[xi {} {}]", o.target, o.source)?;
            for (mask, c) in o.form.terms() {
                writeln!(f, "{} = {c}", mask_words(*mask))?;
            }
        }
        writeln!(f, "\n[geometry]")?;
        writeln!(f, "connection = {}", self.connection.name())?;
        writeln!(f, "seed = {}", self.geometry_seed)?;
        if let Some(ch) = &self.chern {
            writeln!(f, "\n[chern]")?;
            writeln!(f, "d = {}", ch.dim())?;
            for (p, v) in ch.numbers() {
                writeln!(f, "{} = {v}", chern_key(p))?;
            }
        }
        writeln!(f, "\n[run]")?;
        if !self.suites.is_empty() {
            writeln!(f, "suites = {}", join(&self.suites))?;
        }
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "trials = {}", self.trials)?;
        write!(f, "order = {}", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(s: &str, dim: usize) -> Result<Poly> {
        parse_expr(&Spanned { text: s.into(), line: 1, col: 1 }, dim)
    }

    #[test]
    fn expressions() {
        let b = Poly::var;
        assert_eq!(expr("b2 + b1^2", 2).unwrap(), &b(1) + &b(0).pow(2));
        assert_eq!(expr("-b1^2", 1).unwrap(), -&b(0).pow(2));
        assert_eq!(expr("1/2*B1", 1).unwrap(), Poly::bar_var(0).scale(&GaussRat::rat(1, 2)));
        assert_eq!(expr("(1+2*i)*b1", 1).unwrap().to_string(), "(1+2*i)*b1");
        assert_eq!(expr("b2/b1", 2).unwrap(), &b(1) * &b(0).monomial_inverse().unwrap());
        assert_eq!(expr("b1^-2", 1).unwrap(), b(0).pow(2).monomial_inverse().unwrap());
        assert_eq!(expr("2 - 3 - 4", 1).unwrap(), Poly::int(-5));
    }

    #[test]
    fn expression_errors_have_positions() {
        let at = |s: &str| match expr(s, 2) {
            Err(Error::Parse { col, msg, .. }) => (col, msg),
            other => panic!("{other:?}"),
        };
        assert_eq!(at("b1 + b3").0, 6);
        assert_eq!(at("b1 +").0, 5);
        assert_eq!(at("(b1").0, 4);
        assert!(at("1/(b1 + b2)").1.contains("not a monomial"));
        assert_eq!(at("b1 $").0, 4);
    }

    #[test]
    fn printed_polynomials_reparse() {
        let mut s = crate::random::Sampler::new(3);
        for _ in 0..50 {
            let p = s.smooth(3, 3, 2);
            assert_eq!(expr(&p.to_string(), 3).unwrap(), p, "{p}");
        }
    }

    #[test]
    fn minimal_one_chart_file() {
        let sc = Scenario::parse("[nerve]\ndim = 1\ncharts = U0\n").unwrap();
        assert_eq!(sc.dim, 1);
        assert_eq!(sc.charts, vec!["U0".to_string()]);
        assert_eq!(sc.gluing().unwrap().nerve().len(), 1);
    }

    #[test]
    fn undeclared_chart_is_named() {
        let text = "[nerve]\ndim = 2\ncharts = U0, U1\n\n[chart U7]\nmap = b1, b2\ninverse = b1, b2\n";
        match Scenario::parse(text) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (5, 8));
                assert!(msg.contains("U7"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grammar_violations() {
        let pos = |t: &str| match Scenario::parse(t) {
            Err(Error::Parse { line, col, .. }) => (line, col),
            other => panic!("{other:?}"),
        };
        assert_eq!(pos("dim = 2\n"), (1, 1));
        assert_eq!(pos("[nerve]\n  dim 2\n"), (2, 3));
        assert_eq!(pos("[nerve]\ndim = two\n"), (2, 7));
        assert_eq!(pos("[nerve\n"), (1, 7));
        assert_eq!(pos("[run]\nsuites = cech, nope\n"), (2, 16));
        assert_eq!(pos("[nerve]\ndim = 2\ndim = 3\n"), (3, 1));
        assert_eq!(pos("[bogus]\n"), (1, 1));
        assert_eq!(pos("[nerve]\ncharts = U0, U1\n[chart U1]\nmap = b1, b2 + b1^2\ninverse = b1, b2\n"), (3, 1));
        assert_eq!(pos("[chern]\nd = 2\nc2 = 24\n"), (1, 1));
    }

    #[test]
    fn round_trip() {
        let text = "[nerve]\ndim = 2\ncharts = A, B\nxi = radial\n[chart B]\nmap = b1, b2 + 1/2*b1^2\ninverse = b1, b2 - 1/2*b1^2\n\
                    [xi B A]\ndb1 db2 = 0\n[chern]\nd = 2\nc1^2 = 0\nc2 = 24\n[run]\nsuites = cech, genus\ntrials = 3\n";
        let sc = Scenario::parse(text).unwrap();
        let back = Scenario::parse(&sc.to_string()).unwrap();
        assert_eq!(back, sc);
        assert_eq!(sc.suites, vec![Suite::Cech, Suite::Genus]);
        assert_eq!(sc.chern, Some(ChernData::k3()));
    }

    #[test]
    fn wrong_xi_is_rejected_at_the_nerve() {
        let text = "[nerve]\ndim = 2\ncharts = A, B\n[xi B A]\ndb1 db2 = b1\n";
        assert!(Scenario::parse(text).is_ok(), "WZ vanishes in d = 2, so any ξ with ∂ξ = 0 is valid");
        let text = "[nerve]\ndim = 3\ncharts = A, B\n[xi B A]\ndb1 db2 = b3\n";
        match Scenario::parse(text) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 1);
                assert!(msg.contains("invalid gluing data"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }
}
