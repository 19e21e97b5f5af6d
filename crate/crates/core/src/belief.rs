//! Plain belief over cumulative measures: a formula is believed iff its
//! event has the top value `(0, 1)`. Disbelief in the complement is graded
//! by the complement's value, which also serves as the entrenchment of the
//! belief.
//!
//! Two deterministic revision operators are offered. Both leave every
//! event whose conditional on the evidence has rank 0 at exactly that
//! conditional value.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::measure::{Event, MeasureError, QuasiMeasure, WorldSpace};
use crate::proplang::{eval_event, Formula, ProplangError};
use crate::valuation::{Algebra, Cumulative, Mass, Rank, RankGroup, Rational, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeliefError {
    #[error(transparent)]
    Proplang(#[from] ProplangError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("epistemic states need a cumulative measure, got a {0} measure")]
    NotCumulative(Algebra),
    #[error("epistemic states need worlds built from an atom vocabulary")]
    NoVocabulary,
    #[error("{0} is not plainly believed")]
    NotBelieved(String),
    #[error("invalid rank shift: {0}")]
    BadShift(String),
}

/// Revision strength: a strictly positive element of the rank group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankShift(Rational);

impl RankShift {
    pub fn new(algebra: Algebra, delta: Rational) -> Result<Self, BeliefError> {
        if !delta.is_positive() {
            return Err(BeliefError::BadShift(format!(
                "{delta} is not strictly positive"
            )));
        }
        if algebra.rank_group() == Some(RankGroup::Integer) && !delta.is_integer() {
            return Err(BeliefError::BadShift(format!("{delta} is not an integer")));
        }
        Ok(RankShift(delta))
    }

    /// The weakest integer shift.
    pub fn one() -> Self {
        RankShift(Rational::one())
    }

    pub fn get(&self) -> &Rational {
        &self.0
    }

    fn as_value(&self) -> Value {
        Value::Cumulative(
            Cumulative::new(Rank::Finite(self.0.clone()), Mass::one()).expect("positive mass"),
        )
    }
}

/// A cumulative measure over the truth assignments of an atom vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpistemicState {
    measure: QuasiMeasure,
}

impl EpistemicState {
    pub fn new(measure: QuasiMeasure) -> Result<Self, BeliefError> {
        if !matches!(measure.algebra(), Algebra::Cumulative(_)) {
            return Err(BeliefError::NotCumulative(measure.algebra()));
        }
        if measure.space().atoms().is_none() {
            return Err(BeliefError::NoVocabulary);
        }
        Ok(EpistemicState { measure })
    }

    pub fn measure(&self) -> &QuasiMeasure {
        &self.measure
    }

    pub fn space(&self) -> &Arc<WorldSpace> {
        self.measure.space()
    }

    pub fn algebra(&self) -> Algebra {
        self.measure.algebra()
    }

    pub fn event(&self, formula: &Formula) -> Result<Event, BeliefError> {
        Ok(eval_event(formula, self.space())?)
    }

    pub fn value_of(&self, formula: &Formula) -> Result<Value, BeliefError> {
        Ok(self.measure.measure_of(&self.event(formula)?)?)
    }

    pub fn believes(&self, formula: &Formula) -> Result<bool, BeliefError> {
        Ok(self.value_of(formula)? == self.algebra().one())
    }

    /// Value of the complement of a believed formula: the lower it is, the
    /// more entrenched the belief; `n` means the complement is impossible.
    pub fn entrenchment(&self, formula: &Formula) -> Result<Value, BeliefError> {
        let event = self.event(formula)?;
        if self.measure.measure_of(&event)? != self.algebra().one() {
            return Err(BeliefError::NotBelieved(formula.to_string()));
        }
        Ok(self.measure.measure_of(&event.complement())?)
    }

    /// Full conditionalization on the formula. The complement becomes
    /// impossible, so later evidence against the formula cannot be absorbed.
    pub fn revise_full(&self, formula: &Formula) -> Result<EpistemicState, BeliefError> {
        let event = self.event(formula)?;
        EpistemicState::new(self.measure.conditionalize(&event)?)
    }

    /// Rank-shift revision: worlds inside the formula's event get their
    /// conditional value given the event, worlds outside get their
    /// conditional value given the complement lowered by `shift` ranks.
    /// Falls back to [`EpistemicState::revise_full`] when the complement is
    /// already impossible.
    ///
    /// Only the rank-0 part of the result is forced by top-conditionalization;
    /// the shifted values below it are one choice among several.
    pub fn revise_shift(
        &self,
        formula: &Formula,
        shift: &RankShift,
    ) -> Result<EpistemicState, BeliefError> {
        let alg = self.algebra();
        RankShift::new(alg, shift.0.clone())?;
        let inside = self.event(formula)?;
        let outside = inside.complement();
        let r_in = self.measure.measure_of(&inside)?;
        if alg.is_zero(&r_in) {
            return Err(MeasureError::ImpossibleEvidence.into());
        }
        let r_out = self.measure.measure_of(&outside)?;
        if alg.is_zero(&r_out) {
            return self.revise_full(formula);
        }
        let lift = shift.as_value();
        let table = self
            .measure
            .table()
            .iter()
            .enumerate()
            .map(|(w, v)| {
                if inside.contains(w) {
                    alg.solve_mul(&r_in, v)
                } else {
                    alg.mul(&alg.solve_mul(&r_out, v)?, &lift)
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(MeasureError::from)?;
        let measure = QuasiMeasure::new(alg, Arc::clone(self.space()), table)?;
        EpistemicState::new(measure)
    }

    /// The candidates that are plainly believed, in their original order.
    pub fn belief_set<'a>(
        &self,
        candidates: &'a [Formula],
    ) -> Result<Vec<&'a Formula>, BeliefError> {
        let mut out = Vec::new();
        for f in candidates {
            if self.believes(f)? {
                out.push(f);
            }
        }
        Ok(out)
    }
}

/// Whether `v` has the top-rank form `(0, r)`.
pub fn is_top_rank(v: &Value) -> bool {
    matches!(v, Value::Cumulative(c) if c.rank().number().is_some_and(|g| g.is_zero()))
}
