//! Valuation algebras `(V, #, ∘, n, e, ≪)`: the real algebra of nonnegative
//! rationals, ranking algebras over the integer or rational group, and the
//! cumulative (rank, mass) algebras built from them.
//!
//! All arithmetic is exact. Every operation checks that its arguments belong
//! to the algebra it is invoked on.

mod laws;
mod value;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use laws::{
    check_axioms, check_axioms_with, check_magnitude_order, check_magnitude_order_with,
    check_modular, check_modular_with, classify, trichotomy_at, Principle,
};
pub use value::{format_rational, parse_rational, Cumulative, Mass, Rank, Rational, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("value {value} does not belong to the {algebra} algebra")]
    KindMismatch { algebra: Algebra, value: String },
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Group of rank numbers underlying a ranking algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RankGroup {
    #[default]
    Integer,
    Rational,
}

impl RankGroup {
    fn tag(self) -> &'static str {
        match self {
            RankGroup::Integer => "z",
            RankGroup::Rational => "q",
        }
    }
}

/// A concrete valuation algebra. `zero()` is the additive identity `n`
/// (impossibility) and `one()` the multiplicative identity `e` (certainty).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    Real,
    Ranking(RankGroup),
    Cumulative(RankGroup),
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Real => f.write_str("real"),
            Algebra::Ranking(g) => write!(f, "ranking {}", g.tag()),
            Algebra::Cumulative(g) => write!(f, "cumulative {}", g.tag()),
        }
    }
}

impl FromStr for Algebra {
    type Err = ValuationError;

    /// Accepts `real`, `ranking [z|q]`, `cumulative [z|q]`; the group may
    /// also be joined with `-` or `:` (`cumulative-q`). The group defaults to `z`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lowered = s.trim().to_ascii_lowercase();
        let mut parts = lowered.split(|c: char| c.is_whitespace() || c == '-' || c == ':');
        let parts: Vec<&str> = parts.by_ref().filter(|p| !p.is_empty()).collect();
        let group = match parts.get(1).copied() {
            None | Some("z") | Some("int") | Some("integer") => RankGroup::Integer,
            Some("q") | Some("rat") | Some("rational") => RankGroup::Rational,
            Some(other) => {
                return Err(ValuationError::Parse(format!(
                    "unknown rank group {other:?}"
                )))
            }
        };
        if parts.len() > 2 {
            return Err(ValuationError::Parse(format!("unrecognized algebra {s:?}")));
        }
        match parts.first().copied() {
            Some("real") if parts.len() == 1 => Ok(Algebra::Real),
            Some("ranking") => Ok(Algebra::Ranking(group)),
            Some("cumulative") => Ok(Algebra::Cumulative(group)),
            _ => Err(ValuationError::Parse(format!("unrecognized algebra {s:?}"))),
        }
    }
}

impl Algebra {
    /// Every algebra kind offered, in a fixed order.
    pub const ALL: [Algebra; 5] = [
        Algebra::Real,
        Algebra::Ranking(RankGroup::Integer),
        Algebra::Ranking(RankGroup::Rational),
        Algebra::Cumulative(RankGroup::Integer),
        Algebra::Cumulative(RankGroup::Rational),
    ];

    pub fn zero(&self) -> Value {
        match self {
            Algebra::Real => Value::Mass(Mass::zero()),
            Algebra::Ranking(_) => Value::Rank(Rank::Impossible),
            Algebra::Cumulative(_) => Value::Cumulative(Cumulative::impossible()),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            Algebra::Real => Value::Mass(Mass::one()),
            Algebra::Ranking(_) => Value::Rank(Rank::top()),
            Algebra::Cumulative(_) => Value::Cumulative(Cumulative::certain()),
        }
    }

    pub fn rank_group(&self) -> Option<RankGroup> {
        match self {
            Algebra::Real => None,
            Algebra::Ranking(g) | Algebra::Cumulative(g) => Some(*g),
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        *v == self.zero()
    }

    /// Whether `v` is an element of this algebra.
    pub fn contains(&self, v: &Value) -> bool {
        let integral_ok =
            |r: &Rank| self.rank_group() != Some(RankGroup::Integer) || r.is_integral();
        match (self, v) {
            (Algebra::Real, Value::Mass(_)) => true,
            (Algebra::Ranking(_), Value::Rank(r)) => integral_ok(r),
            (Algebra::Cumulative(_), Value::Cumulative(c)) => integral_ok(c.rank()),
            _ => false,
        }
    }

    pub fn check(&self, v: &Value) -> Result<(), ValuationError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(ValuationError::KindMismatch {
                algebra: *self,
                value: v.to_string(),
            })
        }
    }

    /// Additive combination `v # w`: rational sum, `max≪`, or the
    /// cumulative rule (masses add on equal ranks, otherwise the more
    /// plausible pair wins).
    pub fn add(&self, v: &Value, w: &Value) -> Result<Value, ValuationError> {
        self.check(v)?;
        self.check(w)?;
        Ok(match (v, w) {
            (Value::Mass(a), Value::Mass(b)) => Value::Mass(a.plus(b)),
            (Value::Rank(a), Value::Rank(b)) => Value::Rank(a.max(b).clone()),
            (Value::Cumulative(a), Value::Cumulative(b)) => {
                Value::Cumulative(match a.rank().cmp(b.rank()) {
                    Ordering::Equal => {
                        Cumulative::from_parts_unchecked(a.rank().clone(), a.mass().plus(b.mass()))
                    }
                    Ordering::Greater => a.clone(),
                    Ordering::Less => b.clone(),
                })
            }
            _ => unreachable!("kinds checked above"),
        })
    }

    /// Multiplicative combination `v ∘ w`: ranks add, masses multiply,
    /// `n` absorbs.
    pub fn mul(&self, v: &Value, w: &Value) -> Result<Value, ValuationError> {
        self.check(v)?;
        self.check(w)?;
        Ok(match (v, w) {
            (Value::Mass(a), Value::Mass(b)) => Value::Mass(a.times(b)),
            (Value::Rank(a), Value::Rank(b)) => Value::Rank(a.combine(b)),
            (Value::Cumulative(a), Value::Cumulative(b)) => {
                if a.is_impossible() || b.is_impossible() {
                    Value::Cumulative(Cumulative::impossible())
                } else {
                    Value::Cumulative(Cumulative::from_parts_unchecked(
                        a.rank().combine(b.rank()),
                        a.mass().times(b.mass()),
                    ))
                }
            }
            _ => unreachable!("kinds checked above"),
        })
    }

    /// The linear order `≪`; cumulative values compare lexicographically.
    pub fn cmp(&self, v: &Value, w: &Value) -> Result<Ordering, ValuationError> {
        self.check(v)?;
        self.check(w)?;
        Ok(match (v, w) {
            (Value::Mass(a), Value::Mass(b)) => a.cmp(b),
            (Value::Rank(a), Value::Rank(b)) => a.cmp(b),
            (Value::Cumulative(a), Value::Cumulative(b)) => a.cmp(b),
            _ => unreachable!("kinds checked above"),
        })
    }

    /// Returns a canonical `w` with `v # w = target`, given `v ≤ target`.
    /// `v = target` always yields `n`.
    pub fn solve_add(&self, v: &Value, target: &Value) -> Result<Value, ValuationError> {
        if self.cmp(v, target)? == Ordering::Greater {
            return Err(ValuationError::Precondition(format!(
                "solve_add needs {v} ≤ {target}"
            )));
        }
        if v == target {
            return Ok(self.zero());
        }
        Ok(match (v, target) {
            (Value::Mass(a), Value::Mass(b)) => Value::Mass(b.minus(a)),
            (Value::Rank(_), Value::Rank(_)) => target.clone(),
            (Value::Cumulative(a), Value::Cumulative(b)) => {
                if a.rank() == b.rank() {
                    Value::Cumulative(Cumulative::from_parts_unchecked(
                        b.rank().clone(),
                        b.mass().minus(a.mass()),
                    ))
                } else {
                    target.clone()
                }
            }
            _ => unreachable!("kinds checked above"),
        })
    }

    /// Returns the unique `w ∈ [n, e]` with `divisor ∘ w = target`, given
    /// `target ≤ divisor`. A divisor equal to `n` yields `n`.
    pub fn solve_mul(&self, divisor: &Value, target: &Value) -> Result<Value, ValuationError> {
        if self.cmp(target, divisor)? == Ordering::Greater {
            return Err(ValuationError::Precondition(format!(
                "solve_mul needs {target} ≤ {divisor}"
            )));
        }
        if self.is_zero(divisor) || self.is_zero(target) {
            return Ok(self.zero());
        }
        Ok(match (divisor, target) {
            (Value::Mass(d), Value::Mass(t)) => Value::Mass(t.over(d)),
            (Value::Rank(d), Value::Rank(t)) => Value::Rank(t.residual(d)),
            (Value::Cumulative(d), Value::Cumulative(t)) => {
                Value::Cumulative(Cumulative::from_parts_unchecked(
                    t.rank().residual(d.rank()),
                    t.mass().over(d.mass()),
                ))
            }
            _ => unreachable!("kinds checked above"),
        })
    }

    /// Additive magnitude order `v ≪≪ w`, i.e. `w # v = w`: `v` is
    /// negligible beside `w`.
    pub fn negligible(&self, v: &Value, w: &Value) -> Result<bool, ValuationError> {
        Ok(self.add(w, v)? == *w)
    }

    /// Folds `#` over `values`, starting from `n`.
    pub fn sum<'a, I>(&self, values: I) -> Result<Value, ValuationError>
    where
        I: IntoIterator<Item = &'a Value>,
    {
        values
            .into_iter()
            .try_fold(self.zero(), |acc, v| self.add(&acc, v))
    }

    /// Folds `∘` over `values`, starting from `e`.
    pub fn product<'a, I>(&self, values: I) -> Result<Value, ValuationError>
    where
        I: IntoIterator<Item = &'a Value>,
    {
        values
            .into_iter()
            .try_fold(self.one(), |acc, v| self.mul(&acc, v))
    }

    /// Parses the value text syntax for this algebra: `imp` for `n`,
    /// `<rank>:<mass>` (cumulative), `r<rank>` (ranking), bare `<mass>` (real).
    pub fn parse_value(&self, text: &str) -> Result<Value, ValuationError> {
        let text = text.trim();
        if text == "imp" {
            return Ok(self.zero());
        }
        let value = match self {
            Algebra::Real => Value::Mass(Mass::new(parse_rational(text)?)?),
            Algebra::Ranking(_) => {
                let rank = text.strip_prefix('r').ok_or_else(|| {
                    ValuationError::Parse(format!(
                        "ranking value must look like r<rank>, got {text:?}"
                    ))
                })?;
                Value::Rank(Rank::new(parse_rational(rank)?)?)
            }
            Algebra::Cumulative(_) => {
                let (rank, mass) = text.split_once(':').ok_or_else(|| {
                    ValuationError::Parse(format!(
                        "cumulative value must look like <rank>:<mass>, got {text:?}"
                    ))
                })?;
                let rank = Rank::new(parse_rational(rank)?)?;
                let mass = Mass::new(parse_rational(mass)?)?;
                Value::Cumulative(Cumulative::new(rank, mass)?)
            }
        };
        self.check(&value)?;
        Ok(value)
    }

    /// Parses a rank increment for this algebra's group: an integer `≥ 1`
    /// on `z`, a rational `> 0` on `q`.
    pub fn parse_rank_shift(&self, text: &str) -> Result<Rational, ValuationError> {
        let g = parse_rational(text)?;
        if self.rank_group() == Some(RankGroup::Integer) && !g.is_integer() {
            return Err(ValuationError::InvalidValue(format!(
                "rank increment {text} is not an integer"
            )));
        }
        Ok(g)
    }
}

/// The operations the law checkers need. Implemented by [`Algebra`] and by
/// deliberately broken test doubles.
pub trait ValuationOps {
    type Elem: Clone + PartialEq + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, v: &Self::Elem, w: &Self::Elem) -> Self::Elem;
    fn mul(&self, v: &Self::Elem, w: &Self::Elem) -> Self::Elem;
    fn cmp(&self, v: &Self::Elem, w: &Self::Elem) -> Ordering;
    fn solve_add(&self, v: &Self::Elem, target: &Self::Elem) -> Self::Elem;
    fn solve_mul(&self, divisor: &Self::Elem, target: &Self::Elem) -> Self::Elem;
}

/// `ValuationOps` view of an [`Algebra`]; callers guarantee every element
/// belongs to the algebra, so the inner `Result`s cannot fail.
impl ValuationOps for Algebra {
    type Elem = Value;

    fn zero(&self) -> Value {
        Algebra::zero(self)
    }
    fn one(&self) -> Value {
        Algebra::one(self)
    }
    fn add(&self, v: &Value, w: &Value) -> Value {
        Algebra::add(self, v, w).expect("elements checked against the algebra")
    }
    fn mul(&self, v: &Value, w: &Value) -> Value {
        Algebra::mul(self, v, w).expect("elements checked against the algebra")
    }
    fn cmp(&self, v: &Value, w: &Value) -> Ordering {
        Algebra::cmp(self, v, w).expect("elements checked against the algebra")
    }
    fn solve_add(&self, v: &Value, target: &Value) -> Value {
        Algebra::solve_add(self, v, target).expect("caller ensures v ≤ target")
    }
    fn solve_mul(&self, divisor: &Value, target: &Value) -> Value {
        Algebra::solve_mul(self, divisor, target).expect("caller ensures target ≤ divisor")
    }
}
