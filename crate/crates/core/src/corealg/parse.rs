//! Presentation (`.alg`) and module (`.mod`) file grammar.
//!
//! ```text
//! label T34
//! field Q            # or F<p>, e.g. F101
//! gens x:1 y:1
//! order x y          # optional, largest letter first
//! rels x^2*y - y*x^2, x*y^2 - y^2*x
//! ```
//!
//! Statements end at `;` or a newline; a line that does not start with a keyword continues
//! the previous statement. `#` starts a comment. Relations may be written `lhs = rhs`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{
    AlgebraPresentation, CoreError, Field, ModulePresentation, ModuleRelation, MonomialOrder, Poly,
    Scalar, Side, Word,
};

const KEYWORDS: [&str; 6] = ["field", "gens", "rels", "order", "label", "side"];

fn statements(text: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("");
        for piece in line.split(';') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (head, rest) = match piece.find(char::is_whitespace) {
                Some(i) => (&piece[..i], piece[i..].trim()),
                None => (piece, ""),
            };
            if KEYWORDS.contains(&head) {
                out.push((head.to_string(), rest.to_string()));
            } else if let Some(last) = out.last_mut() {
                last.1.push(' ');
                last.1.push_str(piece);
            } else {
                out.push((String::new(), piece.to_string()));
            }
        }
    }
    out
}

fn parse_field(s: &str) -> Result<Field, CoreError> {
    let s = s.trim();
    if s == "Q" || s == "QQ" {
        return Ok(Field::Rationals);
    }
    if let Some(p) = s.strip_prefix('F') {
        if let Ok(p) = p.parse::<u64>() {
            if let Some(f) = Field::prime(p) {
                return Ok(f);
            }
        }
    }
    Err(CoreError::UnsupportedField(s.to_string()))
}

fn split_top_level_commas(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Parses an algebra presentation. Relations are normalized to be monic.
pub fn parse_presentation(text: &str) -> Result<AlgebraPresentation, CoreError> {
    let mut field = Field::Rationals;
    let mut gens: Vec<(String, u32)> = Vec::new();
    let mut rel_src: Vec<String> = Vec::new();
    let mut order_src: Option<Vec<String>> = None;
    let mut label = String::new();
    for (kw, rest) in statements(text) {
        match kw.as_str() {
            "field" => field = parse_field(&rest)?,
            "gens" => {
                for tok in rest.split_whitespace() {
                    let (name, deg) = tok
                        .split_once(':')
                        .ok_or_else(|| CoreError::Parse(format!("generator `{tok}` needs `name:degree`")))?;
                    if !is_ident(name) || KEYWORDS.contains(&name) {
                        return Err(CoreError::Parse(format!("bad generator name `{name}`")));
                    }
                    let deg: i64 = deg
                        .parse()
                        .map_err(|_| CoreError::Parse(format!("bad degree in `{tok}`")))?;
                    if deg < 1 {
                        return Err(CoreError::BadGeneratorDegree { name: name.to_string(), degree: deg });
                    }
                    gens.push((name.to_string(), deg as u32));
                }
            }
            "rels" => rel_src.extend(split_top_level_commas(&rest)),
            "order" => order_src = Some(rest.split_whitespace().map(str::to_string).collect()),
            "label" => label = rest,
            "" => return Err(CoreError::Parse(format!("expected a keyword before `{rest}`"))),
            other => return Err(CoreError::Parse(format!("`{other}` is not valid in a presentation"))),
        }
    }
    if gens.is_empty() {
        return Err(CoreError::Parse("no generators declared".into()));
    }
    let names: Vec<String> = gens.iter().map(|g| g.0.clone()).collect();
    let order = match order_src {
        None => MonomialOrder::deglex(names.len()),
        Some(list) => {
            let mut prec = Vec::new();
            for n in &list {
                let i = names.iter().position(|m| m == n).ok_or_else(|| CoreError::UnknownSymbol(n.clone()))?;
                prec.push(i as u16);
            }
            let mut sorted = prec.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != names.len() || prec.len() != names.len() {
                return Err(CoreError::Parse("order must list every generator exactly once".into()));
            }
            MonomialOrder::with_precedence(prec)
        }
    };
    let symbols: Vec<(String, u32)> = gens.clone();
    let mut relations = Vec::new();
    for src in &rel_src {
        let raw = parse_equation(src, &symbols, field)?;
        let poly = Poly::from_terms(field, raw).map_err(|e| match e {
            CoreError::Inhomogeneous { degrees, .. } => {
                CoreError::Inhomogeneous { relation: src.clone(), degrees }
            }
            e => e,
        })?;
        if poly.is_zero() {
            return Err(CoreError::ZeroRelation(relations.len()));
        }
        relations.push(poly);
    }
    AlgebraPresentation::new(field, gens, relations, order, label)
}

/// Parses a graded module presentation over `algebra`.
///
/// ```text
/// side left
/// gens e:0 f:1
/// rels x*e, y*f - x*y*e
/// ```
///
/// Left-module terms end in a module generator; right-module terms start with one.
pub fn parse_module(text: &str, algebra: Arc<AlgebraPresentation>) -> Result<ModulePresentation, CoreError> {
    let mut side = Side::Left;
    let mut gens: Vec<(String, i32)> = Vec::new();
    let mut rel_src = Vec::new();
    for (kw, rest) in statements(text) {
        match kw.as_str() {
            "side" => {
                side = match rest.trim() {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    s => return Err(CoreError::Parse(format!("unknown side `{s}`"))),
                }
            }
            "gens" => {
                for tok in rest.split_whitespace() {
                    let (name, deg) = tok
                        .split_once(':')
                        .ok_or_else(|| CoreError::Parse(format!("generator `{tok}` needs `name:degree`")))?;
                    if !is_ident(name) || algebra.gen_index(name).is_some() {
                        return Err(CoreError::Parse(format!("bad module generator name `{name}`")));
                    }
                    let deg: i32 = deg.parse().map_err(|_| CoreError::Parse(format!("bad degree in `{tok}`")))?;
                    gens.push((name.to_string(), deg));
                }
            }
            "rels" => rel_src.extend(split_top_level_commas(&rest)),
            "label" | "field" => {}
            _ => return Err(CoreError::Parse(format!("`{kw}` is not valid in a module file"))),
        }
    }
    let n = algebra.num_gens();
    let mut symbols: Vec<(String, u32)> =
        algebra.names().iter().cloned().zip(algebra.weights().iter().copied()).collect();
    symbols.extend(gens.iter().map(|(name, _)| (name.clone(), 0)));
    let field = algebra.field();
    let mut rows = Vec::new();
    for (idx, src) in rel_src.iter().enumerate() {
        let raw = parse_equation(src, &symbols, field)?;
        let mut entries = vec![Poly::zero(field); gens.len()];
        let mut row_degree: Option<i32> = None;
        for (w, c) in raw {
            let letters = w.letters();
            let module_pos: Vec<usize> =
                letters.iter().enumerate().filter(|(_, &g)| g as usize >= n).map(|(i, _)| i).collect();
            let ok_pos = match side {
                Side::Left => letters.len().wrapping_sub(1),
                Side::Right => 0,
            };
            if module_pos.len() != 1 || module_pos[0] != ok_pos {
                return Err(CoreError::InhomogeneousModuleRelation {
                    index: idx,
                    detail: format!("each term of `{src}` needs exactly one module generator on the {side} end"),
                });
            }
            let r = letters[ok_pos] as usize - n;
            let rest: Vec<u16> = letters.iter().enumerate().filter(|(i, _)| *i != ok_pos).map(|(_, &g)| g).collect();
            let word = Word::new(rest, algebra.weights());
            let d = word.degree() as i32 + gens[r].1;
            if *row_degree.get_or_insert(d) != d {
                return Err(CoreError::InhomogeneousModuleRelation {
                    index: idx,
                    detail: format!("terms of `{src}` have different degrees"),
                });
            }
            entries[r].add_term(word, &c);
        }
        let Some(degree) = row_degree else {
            return Err(CoreError::ZeroRelation(idx));
        };
        rows.push(ModuleRelation { degree, entries });
    }
    ModulePresentation::new(algebra, side, gens, rows)
}

/// Parses one homogeneous polynomial in the generators of `algebra`.
pub fn parse_poly(src: &str, algebra: &AlgebraPresentation) -> Result<Poly, CoreError> {
    let symbols: Vec<(String, u32)> =
        algebra.names().iter().cloned().zip(algebra.weights().iter().copied()).collect();
    let raw = parse_equation(src, &symbols, algebra.field())?;
    Poly::from_terms(algebra.field(), raw)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

type Raw = BTreeMap<Word, Scalar>;

fn parse_equation(src: &str, symbols: &[(String, u32)], field: Field) -> Result<Raw, CoreError> {
    let sides: Vec<&str> = src.split('=').collect();
    match sides.as_slice() {
        [one] => parse_expr_str(one, symbols, field),
        [lhs, rhs] => {
            let a = parse_expr_str(lhs, symbols, field)?;
            let b = parse_expr_str(rhs, symbols, field)?;
            Ok(raw_add(a, raw_scale(b, &-field.one())))
        }
        _ => Err(CoreError::Parse(format!("more than one `=` in `{src}`"))),
    }
}

fn parse_expr_str(src: &str, symbols: &[(String, u32)], field: Field) -> Result<Raw, CoreError> {
    let weights: Vec<u32> = symbols.iter().map(|s| s.1).collect();
    let mut p = ExprParser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, symbols, weights, field };
    let r = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(CoreError::Parse(format!("unexpected `{}` in `{}`", p.chars[p.pos], src.trim())));
    }
    Ok(r)
}

fn raw_add(mut a: Raw, b: Raw) -> Raw {
    for (w, c) in b {
        let s = match a.get(&w) {
            Some(v) => v + &c,
            None => c,
        };
        if s.is_zero() {
            a.remove(&w);
        } else {
            a.insert(w, s);
        }
    }
    a
}

fn raw_scale(a: Raw, c: &Scalar) -> Raw {
    a.into_iter().map(|(w, v)| (w, &v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

fn raw_mul(a: &Raw, b: &Raw) -> Raw {
    let mut r = Raw::new();
    for (u, x) in a {
        for (v, y) in b {
            r = raw_add(r, std::iter::once((u.concat(v), x * y)).collect());
        }
    }
    r
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    symbols: &'a [(String, u32)],
    weights: Vec<u32>,
    field: Field,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Raw, CoreError> {
        let mut acc = Raw::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = raw_add(acc, raw_scale(t, &self.field.from_i64(sign)));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Raw, CoreError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = raw_mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Raw, CoreError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| CoreError::Parse("exponent too large".into()))?;
            let mut r: Raw = std::iter::once((Word::empty(), self.field.one())).collect();
            for _ in 0..e {
                r = raw_mul(&r, &base);
            }
            return Ok(r);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, CoreError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(CoreError::Parse(format!("expected a number at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Raw, CoreError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(CoreError::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = BigRational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(CoreError::Parse("zero denominator".into()));
                    }
                    q /= BigRational::from_integer(den);
                }
                let c = self
                    .field
                    .from_rational(&q)
                    .ok_or_else(|| CoreError::Parse(format!("{q} is undefined in {}", self.field)))?;
                Ok(std::iter::once((Word::empty(), c)).filter(|(_, c)| !c.is_zero()).collect())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_' || c == '\'') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let g = self
                    .symbols
                    .iter()
                    .position(|s| s.0 == name)
                    .ok_or(CoreError::UnknownSymbol(name))?;
                Ok(std::iter::once((Word::letter(g as u16, &self.weights), self.field.one())).collect())
            }
            Some(c) => Err(CoreError::Parse(format!("unexpected `{c}`"))),
            None => Err(CoreError::Parse("unexpected end of expression".into())),
        }
    }
}
