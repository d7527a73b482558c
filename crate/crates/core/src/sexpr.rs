//! A small S-expression reader, plus conversions for trees and arrow literals.
//!
//! Atoms are runs of non-delimiter characters; strings are double-quoted with
//! `\"` and `\\` escapes. `;` starts a comment running to end of line.

use std::fmt;

use crate::arrow::{BasicTerm, Cylinder, PrefixArrow};
use crate::error::{Error, Result};
use crate::tree::Tree;
use crate::word::{Bits, LeafPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Atom(String, Pos),
    Str(String, Pos),
    List(Vec<Value>, Pos),
}

impl Value {
    pub fn pos(&self) -> Pos {
        match self {
            Value::Atom(_, p) | Value::Str(_, p) | Value::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Value::Atom(a, _) => Some(a),
            _ => None,
        }
    }

    /// Text of an atom or a string.
    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Atom(a, _) | Value::Str(a, _) => Some(a),
            Value::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Value]> {
        match self {
            Value::List(items, _) => Some(items),
            _ => None,
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let p = self.pos();
        Error::Syntax {
            line: p.line,
            column: p.column,
            message: message.into(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(a, _) => f.write_str(a),
            Value::Str(s, _) => write!(f, "{}", quote(s)),
            Value::List(items, _) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader {
            chars: src.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn value(&mut self) -> Result<Value> {
        self.skip_trivia();
        let start = self.pos();
        match self.chars.peek().copied() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => {
                            return Err(Error::Syntax {
                                line: start.line,
                                column: start.column,
                                message: "unclosed parenthesis".into(),
                            })
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Value::List(items, start));
                        }
                        Some(_) => items.push(self.value()?),
                    }
                }
            }
            Some(')') => Err(self.err("unexpected ')'")),
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => {
                            return Err(Error::Syntax {
                                line: start.line,
                                column: start.column,
                                message: "unterminated string".into(),
                            })
                        }
                        Some('"') => return Ok(Value::Str(s, start)),
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => s.push(c),
                            _ => return Err(self.err("bad escape in string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
            }
            Some(_) => {
                let mut a = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';') {
                        break;
                    }
                    a.push(c);
                    self.bump();
                }
                Ok(Value::Atom(a, start))
            }
        }
    }
}

/// Parses exactly one S-expression.
pub fn parse_one(src: &str) -> Result<Value> {
    let mut r = Reader::new(src);
    let v = r.value()?;
    r.skip_trivia();
    if r.chars.peek().is_some() {
        return Err(r.err("trailing input after expression"));
    }
    Ok(v)
}

/// `S | (T T)`; a string holding such a tree is also accepted.
pub fn tree_from(v: &Value) -> Result<Tree> {
    match v {
        Value::Atom(a, _) if a == "S" => Ok(Tree::Leaf),
        Value::Str(s, p) => {
            let inner = parse_one(s).map_err(|e| match e {
                Error::Syntax { message, .. } => Error::Syntax {
                    line: p.line,
                    column: p.column,
                    message: format!("in tree string: {message}"),
                },
                other => other,
            })?;
            if matches!(inner, Value::Str(..)) {
                return Err(v.error("expected a tree"));
            }
            tree_from(&inner)
        }
        Value::List(items, _) if items.len() == 2 => {
            Ok(Tree::node(tree_from(&items[0])?, tree_from(&items[1])?))
        }
        _ => Err(v.error(format!("expected a tree `S` or `(T T)`, found {v}"))),
    }
}

fn path_from(v: &Value) -> Result<LeafPath> {
    let text = v.as_text().ok_or_else(|| v.error("expected a leaf path"))?;
    text.parse()
        .map_err(|_| v.error(format!("bad leaf path {}", quote(text))))
}

fn bits_from(v: &Value) -> Result<Bits> {
    let text = v
        .as_text()
        .ok_or_else(|| v.error("expected a bit-string"))?;
    text.parse()
        .map_err(|_| v.error(format!("bad bit-string {}", quote(text))))
}

fn cylinder_from(v: &Value) -> Result<Cylinder> {
    match v.as_list() {
        Some([leaf, bits]) => Ok(Cylinder::new(path_from(leaf)?, bits_from(bits)?)),
        _ => Err(v.error("expected (leaf bits)")),
    }
}

/// Reads the keyword arguments of a form into `(keyword, value)` pairs.
pub fn keywords<'v>(form: &'v Value, args: &'v [Value]) -> Result<Vec<(&'v str, &'v Value)>> {
    if !args.len().is_multiple_of(2) {
        return Err(form.error("keyword arguments must come in pairs"));
    }
    args.chunks(2)
        .map(|kv| match kv[0].as_atom() {
            Some(k) if k.starts_with(':') => Ok((k, &kv[1])),
            _ => Err(kv[0].error("expected a keyword")),
        })
        .collect()
}

/// `(arrow :dom T :cod T :terms (((leaf u) (leaf v)) ...))`, each term being
/// target then source.
pub fn arrow_from(form: &Value) -> Result<PrefixArrow> {
    let items = form
        .as_list()
        .ok_or_else(|| form.error("expected an arrow literal"))?;
    if items.first().and_then(Value::as_atom) != Some("arrow") {
        return Err(form.error("expected (arrow ...)"));
    }
    let (mut dom, mut cod, mut terms) = (None, None, None);
    for (k, v) in keywords(form, &items[1..])? {
        let slot = match k {
            ":dom" => &mut dom,
            ":cod" => &mut cod,
            ":terms" => &mut terms,
            other => return Err(form.error(format!("unknown keyword {other}"))),
        };
        if slot.replace(v).is_some() {
            return Err(v.error(format!("duplicate keyword {k}")));
        }
    }
    let dom = tree_from(dom.ok_or_else(|| form.error("missing :dom"))?)?;
    let cod = tree_from(cod.ok_or_else(|| form.error("missing :cod"))?)?;
    let list = terms.ok_or_else(|| form.error("missing :terms"))?;
    let list = list
        .as_list()
        .ok_or_else(|| list.error("expected a list of terms"))?;
    let terms = list
        .iter()
        .map(|t| match t.as_list() {
            Some([target, source]) => Ok(BasicTerm::new(
                cylinder_from(target)?,
                cylinder_from(source)?,
            )),
            _ => Err(t.error("expected ((leaf u) (leaf v))")),
        })
        .collect::<Result<Vec<_>>>()?;
    PrefixArrow::normalize(terms, dom, cod)
}

/// Inverse of [`arrow_from`].
pub fn arrow_to_sexpr(f: &PrefixArrow) -> String {
    let terms: Vec<String> = f
        .terms()
        .iter()
        .map(|t| {
            format!(
                "((\"{}\" \"{}\") (\"{}\" \"{}\"))",
                t.target.leaf, t.target.bits, t.source.leaf, t.source.bits
            )
        })
        .collect();
    format!(
        "(arrow :dom {} :cod {} :terms ({}))",
        f.dom(),
        f.cod(),
        terms.join(" ")
    )
}
