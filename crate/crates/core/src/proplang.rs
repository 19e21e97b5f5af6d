//! Propositional formulas over a finite atom vocabulary, and their
//! interpretation as events over the space of truth assignments.
//!
//! Grammar, loosest binding first: `<->` (left-associative), `->`
//! (right-associative), `|`, `&` (both left-associative), prefix `!`.
//! Constants are `true` and `false`. The Unicode connectives `¬ ∧ ∨ → ↔`
//! and constants `⊤ ⊥` are accepted on input; printing is ASCII only.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::measure::{Event, MeasureError, WorldSpace};

/// Upper bound on the vocabulary size of an enumerated world space.
pub const MAX_ATOMS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    pub fn iff(f: Formula, g: Formula) -> Formula {
        Formula::Iff(Box::new(f), Box::new(g))
    }

    /// Atom names occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(name) => {
                out.insert(name);
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Iff(f, g) => {
                f.collect_atoms(out);
                g.collect_atoms(out);
            }
        }
    }

    /// Classical truth value under `value`, which maps atom names to truth.
    pub fn eval<F: Fn(&str) -> bool>(&self, value: &F) -> bool {
        match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(name) => value(name),
            Formula::Not(f) => !f.eval(value),
            Formula::And(f, g) => f.eval(value) && g.eval(value),
            Formula::Or(f, g) => f.eval(value) || g.eval(value),
            Formula::Implies(f, g) => !f.eval(value) || g.eval(value),
            Formula::Iff(f, g) => f.eval(value) == g.eval(value),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            Formula::Top | Formula::Bottom | Formula::Atom(_) => 6,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Top => f.write_str("true")?,
            Formula::Bottom => f.write_str("false")?,
            Formula::Atom(name) => f.write_str(name)?,
            Formula::Not(g) => {
                f.write_str("!")?;
                g.write_at(f, 5)?;
            }
            Formula::And(l, r) => binary(f, l, " & ", r, 4, 5)?,
            Formula::Or(l, r) => binary(f, l, " | ", r, 3, 4)?,
            Formula::Implies(l, r) => binary(f, l, " -> ", r, 3, 2)?,
            Formula::Iff(l, r) => binary(f, l, " <-> ", r, 1, 2)?,
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn binary(
    f: &mut fmt::Formatter<'_>,
    l: &Formula,
    op: &str,
    r: &Formula,
    left_min: u8,
    right_min: u8,
) -> fmt::Result {
    l.write_at(f, left_min)?;
    f.write_str(op)?;
    r.write_at(f, right_min)
}

/// Prints with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: found {found}, expected one of {}", .expected.join(", "))]
pub struct ParseError {
    pub offset: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProplangError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("duplicate atom {0:?}")]
    DuplicateAtom(String),
    #[error("{0:?} is not a valid atom name")]
    InvalidAtom(String),
    #[error("{0} atoms requested; at most {MAX_ATOMS} are supported")]
    TooManyAtoms(usize),
    #[error("the world space has no atom vocabulary")]
    NoVocabulary,
    #[error(transparent)]
    Space(#[from] MeasureError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("atom {name:?}"),
            Token::True => "`true`".into(),
            Token::False => "`false`".into(),
            Token::Not => "`!`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

const OPERAND: &[&str] = &["atom", "`true`", "`false`", "`!`", "`(`"];

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut end = pos;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    end = i + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let word = &text[pos..end];
            tokens.push((
                pos,
                match word {
                    "true" => Token::True,
                    "false" => Token::False,
                    _ => Token::Ident(word.to_string()),
                },
            ));
            continue;
        }
        let rest = &text[pos..];
        let (token, len) = if rest.starts_with("<->") {
            (Token::Iff, 3)
        } else if rest.starts_with("->") {
            (Token::Implies, 2)
        } else {
            let token = match ch {
                '!' | '¬' => Token::Not,
                '&' | '∧' => Token::And,
                '|' | '∨' => Token::Or,
                '→' => Token::Implies,
                '↔' => Token::Iff,
                '(' => Token::LParen,
                ')' => Token::RParen,
                '⊤' => Token::True,
                '⊥' => Token::False,
                _ => {
                    return Err(ParseError {
                        offset: pos,
                        found: format!("character {ch:?}"),
                        expected: vec!["atom", "connective", "`(`", "`)`"],
                    })
                }
            };
            (token, ch.len_utf8())
        };
        tokens.push((pos, token));
        for _ in 0..rest[..len].chars().count() {
            chars.next();
        }
    }
    tokens.push((text.len(), Token::End));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let (offset, token) = &self.tokens[self.pos];
        ParseError {
            offset: *offset,
            found: token.describe(),
            expected,
        }
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Token::Iff {
            self.bump();
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Token::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Token::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Token::True => {
                self.bump();
                Ok(Formula::Top)
            }
            Token::False => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Token::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Token::LParen => {
                self.bump();
                self.depth += 1;
                let inner = self.iff()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(vec!["`&`", "`|`", "`->`", "`<->`", "`)`"]));
                }
                self.bump();
                self.depth -= 1;
                Ok(inner)
            }
            _ => Err(self.error(OPERAND.to_vec())),
        }
    }
}

/// Parses a formula. Errors carry the byte offset of the offending token
/// and the set of tokens that would have been accepted there.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        depth: 0,
    };
    let formula = parser.iff()?;
    if *parser.peek() != Token::End {
        debug_assert_eq!(parser.depth, 0);
        return Err(parser.error(vec!["`&`", "`|`", "`->`", "`<->`", "end of input"]));
    }
    Ok(formula)
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "true"
        && name != "false"
}

/// Label of the single world of the empty vocabulary.
pub const EMPTY_ASSIGNMENT: &str = "true";

/// The space of all truth assignments to `atoms`, in binary counting order
/// with the first atom as the most significant bit. World `p!q` makes `p`
/// true and `q` false.
pub fn enumerate_worlds<S: AsRef<str>>(atoms: &[S]) -> Result<WorldSpace, ProplangError> {
    if atoms.len() > MAX_ATOMS {
        return Err(ProplangError::TooManyAtoms(atoms.len()));
    }
    let atoms: Vec<String> = atoms.iter().map(|a| a.as_ref().to_string()).collect();
    for (i, a) in atoms.iter().enumerate() {
        if !is_identifier(a) {
            return Err(ProplangError::InvalidAtom(a.clone()));
        }
        if atoms[..i].contains(a) {
            return Err(ProplangError::DuplicateAtom(a.clone()));
        }
    }
    let n = atoms.len();
    let labels = (0usize..1 << n)
        .map(|world| {
            if n == 0 {
                return EMPTY_ASSIGNMENT.to_string();
            }
            atoms
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    if truth(n, world, j) {
                        a.clone()
                    } else {
                        format!("!{a}")
                    }
                })
                .collect::<String>()
        })
        .collect();
    Ok(WorldSpace::with_atoms(labels, atoms)?)
}

/// Truth of atom `j` (of `n`) in world `world`.
pub fn truth(n: usize, world: usize, j: usize) -> bool {
    world >> (n - 1 - j) & 1 == 1
}

fn first_unknown<'a>(formula: &'a Formula, atoms: &[String]) -> Option<&'a str> {
    match formula {
        Formula::Top | Formula::Bottom => None,
        Formula::Atom(name) => (!atoms.contains(name)).then_some(name.as_str()),
        Formula::Not(f) => first_unknown(f, atoms),
        Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) | Formula::Iff(f, g) => {
            first_unknown(f, atoms).or_else(|| first_unknown(g, atoms))
        }
    }
}

/// The set of worlds of `space` satisfying `formula`.
pub fn eval_event(formula: &Formula, space: &WorldSpace) -> Result<Event, ProplangError> {
    let atoms = space.atoms().ok_or(ProplangError::NoVocabulary)?;
    if let Some(unknown) = first_unknown(formula, atoms) {
        return Err(ProplangError::UnknownAtom(unknown.to_string()));
    }
    let n = atoms.len();
    let position = |name: &str| atoms.iter().position(|a| a == name).expect("atoms checked");
    let mut event = space.empty();
    for world in 0..space.len() {
        if formula.eval(&|name: &str| truth(n, world, position(name))) {
            event.insert(world);
        }
    }
    Ok(event)
}
