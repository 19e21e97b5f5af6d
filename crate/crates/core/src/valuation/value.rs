//! Value types of the three concrete valuation algebras and their text syntax.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ValuationError;

/// Exact rational number used for masses and rank-group elements.
pub type Rational = BigRational;

/// A nonnegative rational mass, the value type of the real algebra and the
/// local component of cumulative values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mass(Rational);

impl Mass {
    pub fn new(m: Rational) -> Result<Self, ValuationError> {
        if m.is_negative() {
            return Err(ValuationError::InvalidValue(format!(
                "mass must be nonnegative, got {}",
                format_rational(&m)
            )));
        }
        Ok(Mass(m))
    }

    /// Shorthand for `p/q`; panics on a negative ratio or a zero denominator.
    pub fn ratio(p: i64, q: i64) -> Self {
        Mass::new(Rational::new(p.into(), q.into())).expect("nonnegative mass")
    }

    pub fn zero() -> Self {
        Mass(Rational::zero())
    }

    pub fn one() -> Self {
        Mass(Rational::one())
    }

    pub fn get(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub(crate) fn plus(&self, other: &Mass) -> Mass {
        Mass(&self.0 + &other.0)
    }

    pub(crate) fn times(&self, other: &Mass) -> Mass {
        Mass(&self.0 * &other.0)
    }

    /// `self - other`, only called with `other <= self`.
    pub(crate) fn minus(&self, other: &Mass) -> Mass {
        debug_assert!(other <= self);
        Mass(&self.0 - &other.0)
    }

    /// `self / other`, only called with `other != 0`.
    pub(crate) fn over(&self, other: &Mass) -> Mass {
        Mass(&self.0 / &other.0)
    }
}

impl fmt::Display for Mass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

/// Element of a ranking algebra: the nonnegative half of an ordered group
/// (written additively, `0` is the top element `e°`) topped by the
/// absorptive `Impossible`.
///
/// The derived-looking `Ord` is the plausibility order: `Impossible` is the
/// minimum and a larger rank number is *less* plausible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Impossible,
    Finite(Rational),
}

impl Rank {
    pub fn new(g: Rational) -> Result<Self, ValuationError> {
        if g.is_negative() {
            return Err(ValuationError::InvalidValue(format!(
                "rank must be nonnegative, got {}",
                format_rational(&g)
            )));
        }
        Ok(Rank::Finite(g))
    }

    /// Integer rank shorthand; panics on a negative argument.
    pub fn int(g: i64) -> Self {
        Rank::new(Rational::from_integer(g.into())).expect("nonnegative rank")
    }

    pub fn top() -> Self {
        Rank::Finite(Rational::zero())
    }

    pub fn is_impossible(&self) -> bool {
        matches!(self, Rank::Impossible)
    }

    pub fn number(&self) -> Option<&Rational> {
        match self {
            Rank::Impossible => None,
            Rank::Finite(g) => Some(g),
        }
    }

    pub(crate) fn combine(&self, other: &Rank) -> Rank {
        match (self, other) {
            (Rank::Finite(a), Rank::Finite(b)) => Rank::Finite(a + b),
            _ => Rank::Impossible,
        }
    }

    /// Group difference `self - other` for `other` at least as plausible as
    /// `self`; `Impossible` on either side yields `Impossible`.
    pub(crate) fn residual(&self, other: &Rank) -> Rank {
        match (self, other) {
            (Rank::Finite(a), Rank::Finite(b)) => Rank::Finite(a - b),
            _ => Rank::Impossible,
        }
    }

    pub(crate) fn is_integral(&self) -> bool {
        match self {
            Rank::Impossible => true,
            Rank::Finite(g) => g.is_integer(),
        }
    }
}

impl Ord for Rank {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rank::Impossible, Rank::Impossible) => Ordering::Equal,
            (Rank::Impossible, Rank::Finite(_)) => Ordering::Less,
            (Rank::Finite(_), Rank::Impossible) => Ordering::Greater,
            (Rank::Finite(a), Rank::Finite(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for Rank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Impossible => f.write_str("imp"),
            Rank::Finite(g) => f.write_str(&format_rational(g)),
        }
    }
}

/// A rank/mass pair. Only `(Impossible, 0)` and `(Finite(_), m > 0)` exist;
/// the constructor rejects the zero-divisor pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cumulative {
    rank: Rank,
    mass: Mass,
}

impl Cumulative {
    pub fn new(rank: Rank, mass: Mass) -> Result<Self, ValuationError> {
        if rank.is_impossible() != mass.is_zero() {
            return Err(ValuationError::InvalidValue(format!(
                "cumulative value ({rank}, {mass}) mixes an impossible rank with positive mass or a finite rank with zero mass"
            )));
        }
        Ok(Cumulative { rank, mass })
    }

    pub fn impossible() -> Self {
        Cumulative {
            rank: Rank::Impossible,
            mass: Mass::zero(),
        }
    }

    pub fn certain() -> Self {
        Cumulative {
            rank: Rank::top(),
            mass: Mass::one(),
        }
    }

    pub fn rank(&self) -> &Rank {
        &self.rank
    }

    pub fn mass(&self) -> &Mass {
        &self.mass
    }

    pub fn is_impossible(&self) -> bool {
        self.rank.is_impossible()
    }

    pub(crate) fn from_parts_unchecked(rank: Rank, mass: Mass) -> Self {
        debug_assert!(rank.is_impossible() == mass.is_zero());
        Cumulative { rank, mass }
    }
}

impl Ord for Cumulative {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.mass.cmp(&other.mass))
    }
}

impl PartialOrd for Cumulative {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cumulative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_impossible() {
            f.write_str("imp")
        } else {
            write!(f, "{}:{}", self.rank, self.mass)
        }
    }
}

/// An element of one of the concrete valuation algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Mass(Mass),
    Rank(Rank),
    Cumulative(Cumulative),
}

impl Value {
    /// Cumulative value from an integer rank and a `p/q` mass. Test and
    /// example convenience; panics on invalid input.
    pub fn cumulative(rank: i64, p: i64, q: i64) -> Value {
        Value::Cumulative(Cumulative::new(Rank::int(rank), Mass::ratio(p, q)).expect("valid pair"))
    }

    pub fn rank(g: i64) -> Value {
        Value::Rank(Rank::int(g))
    }

    pub fn mass(p: i64, q: i64) -> Value {
        Value::Mass(Mass::ratio(p, q))
    }

    pub fn as_cumulative(&self) -> Option<&Cumulative> {
        match self {
            Value::Cumulative(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Mass(m) if m.is_zero() => f.write_str("imp"),
            Value::Mass(m) => m.fmt(f),
            Value::Rank(Rank::Impossible) => f.write_str("imp"),
            Value::Rank(r) => write!(f, "r{r}"),
            Value::Cumulative(c) => c.fmt(f),
        }
    }
}

/// Renders a rational as a decimal when its reduced denominator is a power
/// of ten, and as `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    let denom = x.denom();
    let mut rest = denom.clone();
    let ten = BigInt::from(10u8);
    let mut digits = 0usize;
    while (&rest % &ten).is_zero() {
        rest /= &ten;
        digits += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", x.numer(), denom);
    }
    if digits == 0 {
        return x.numer().to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let numer = x.numer().abs();
    let (int_part, frac_part) = numer.div_rem(denom);
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part,
        width = digits
    )
}

/// Parses `p/q`, a decimal such as `0.6`, or an integer, exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ValuationError> {
    let bad = || ValuationError::Parse(format!("not a rational number: {text:?}"));
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = parse_int(p).ok_or_else(bad)?;
        let q: BigInt = parse_int(q).ok_or_else(bad)?;
        if q.is_zero() {
            return Err(ValuationError::Parse(format!(
                "zero denominator in {text:?}"
            )));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let whole: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            parse_int(int_part).ok_or_else(bad)?
        };
        let frac: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10u8), frac_part.len());
        let magnitude = Rational::new(whole.abs() * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(Rational::from_integer(parse_int(text).ok_or_else(bad)?))
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}
