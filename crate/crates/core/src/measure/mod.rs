//! Quasi-measures over finite world spaces.
//!
//! A measure stores one value per world; the value of an event is the `#`-fold
//! of its worlds' values. On a finite set algebra this makes additivity on
//! disjoint events hold by construction and makes coherence automatic.

pub mod format;
mod partition;
mod space;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::report::Report;
use crate::valuation::{Algebra, ValuationError, Value};

pub use partition::PartitionMeasure;
pub use space::{Event, WorldSpace};

/// Largest number of events accepted by [`QuasiMeasure::independent`].
pub const MAX_INDEPENDENCE_EVENTS: usize = 10;

/// Spaces up to this size are validated over every pair of disjoint events.
const EXHAUSTIVE_WORLDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error("event over {event} worlds used with a space of {space} worlds")]
    SpaceMismatch { space: usize, event: usize },
    #[error("table has {table} entries but the space has {space} worlds")]
    TableSize { space: usize, table: usize },
    #[error("the conditioning event is impossible")]
    ImpossibleEvidence,
    #[error("every world is impossible; nothing to normalize")]
    AllImpossible,
    #[error("measure is not normalized: the worlds sum to {0}, not e")]
    NotNormalized(Box<Value>),
    #[error("invalid world space: {0}")]
    InvalidSpace(String),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(
        "independence of {0} events requested; at most {MAX_INDEPENDENCE_EVENTS} are supported"
    )]
    TooManyEvents(usize),
}

/// Result of an independence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    Holds,
    /// Positions (into the checked list) of the first subsequence whose
    /// conditional product condition fails.
    Fails {
        subsequence: Vec<usize>,
    },
}

impl Independence {
    pub fn holds(&self) -> bool {
        matches!(self, Independence::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiMeasure {
    algebra: Algebra,
    space: Arc<WorldSpace>,
    table: Vec<Value>,
}

impl QuasiMeasure {
    /// A measure from a per-world table that must already sum to `e`.
    pub fn new(
        algebra: Algebra,
        space: Arc<WorldSpace>,
        table: Vec<Value>,
    ) -> Result<Self, MeasureError> {
        let m = Self::from_raw(algebra, space, table)?;
        let total = m.total();
        if total != algebra.one() {
            return Err(MeasureError::NotNormalized(Box::new(total)));
        }
        Ok(m)
    }

    /// Like [`QuasiMeasure::new`] but without the normalization check, so a
    /// malformed table can still be inspected with [`QuasiMeasure::validate`].
    pub fn from_raw(
        algebra: Algebra,
        space: Arc<WorldSpace>,
        table: Vec<Value>,
    ) -> Result<Self, MeasureError> {
        if table.len() != space.len() {
            return Err(MeasureError::TableSize {
                space: space.len(),
                table: table.len(),
            });
        }
        for v in &table {
            algebra.check(v)?;
        }
        Ok(QuasiMeasure {
            algebra,
            space,
            table,
        })
    }

    /// Divides every entry of `raw` by the total, i.e. conditions on the
    /// full space.
    pub fn normalize(
        algebra: Algebra,
        space: Arc<WorldSpace>,
        raw: Vec<Value>,
    ) -> Result<Self, MeasureError> {
        let raw = Self::from_raw(algebra, space, raw)?;
        let total = raw.total();
        if algebra.is_zero(&total) {
            return Err(MeasureError::AllImpossible);
        }
        let table = raw
            .table
            .iter()
            .map(|v| algebra.solve_mul(&total, v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(algebra, raw.space, table)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn space(&self) -> &Arc<WorldSpace> {
        &self.space
    }

    pub fn table(&self) -> &[Value] {
        &self.table
    }

    pub fn value_at(&self, world: usize) -> &Value {
        &self.table[world]
    }

    fn total(&self) -> Value {
        self.algebra
            .sum(&self.table)
            .expect("table values belong to the algebra")
    }

    fn check_event(&self, event: &Event) -> Result<(), MeasureError> {
        if event.space_len() != self.space.len() {
            return Err(MeasureError::SpaceMismatch {
                space: self.space.len(),
                event: event.space_len(),
            });
        }
        Ok(())
    }

    pub fn measure_of(&self, event: &Event) -> Result<Value, MeasureError> {
        self.check_event(event)?;
        Ok(self.algebra.sum(event.worlds().map(|w| &self.table[w]))?)
    }

    /// `R(A | B)`: the unique `w ∈ [n, e]` with `R(A ∩ B) = R(B) ∘ w`, or `n`
    /// when `R(B) = n`.
    pub fn conditional(&self, a: &Event, b: &Event) -> Result<Value, MeasureError> {
        self.check_event(a)?;
        let given = self.measure_of(b)?;
        let joint = self.measure_of(&a.intersection(b))?;
        Ok(self.algebra.solve_mul(&given, &joint)?)
    }

    /// The measure `R(· | B)`, stored per world. Fails when `R(B) = n`.
    pub fn conditionalize(&self, b: &Event) -> Result<QuasiMeasure, MeasureError> {
        let given = self.measure_of(b)?;
        if self.algebra.is_zero(&given) {
            return Err(MeasureError::ImpossibleEvidence);
        }
        let table = self
            .table
            .iter()
            .enumerate()
            .map(|(w, v)| {
                if b.contains(w) {
                    self.algebra.solve_mul(&given, v)
                } else {
                    Ok(self.algebra.zero())
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        QuasiMeasure::new(self.algebra, Arc::clone(&self.space), table)
    }

    /// Conditional independence of `events` given `b`: for every nonempty
    /// subsequence, the conditional of the intersection equals the `∘`-product
    /// of the individual conditionals. Subsequences are visited in order of
    /// their index bitmask.
    pub fn independent(&self, events: &[Event], b: &Event) -> Result<Independence, MeasureError> {
        if events.len() > MAX_INDEPENDENCE_EVENTS {
            return Err(MeasureError::TooManyEvents(events.len()));
        }
        if self.algebra.is_zero(&self.measure_of(b)?) {
            return Err(MeasureError::ImpossibleEvidence);
        }
        let singles = events
            .iter()
            .map(|a| self.conditional(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        for mask in 1u32..(1u32 << events.len()) {
            let members: Vec<usize> = (0..events.len()).filter(|i| mask >> i & 1 == 1).collect();
            let meet = members
                .iter()
                .fold(self.space.full(), |acc, &i| acc.intersection(&events[i]));
            let joint = self.conditional(&meet, b)?;
            let product = self.algebra.product(members.iter().map(|&i| &singles[i]))?;
            if joint != product {
                return Ok(Independence::Fails {
                    subsequence: members,
                });
            }
        }
        Ok(Independence::Holds)
    }

    /// Values of all `2^len` events, indexed by world bitmask.
    fn all_event_values(&self) -> Vec<Value> {
        let len = self.space.len();
        let mut values = Vec::with_capacity(1 << len);
        values.push(self.algebra.zero());
        for mask in 1usize..(1 << len) {
            let low = mask.trailing_zeros() as usize;
            let rest = &values[mask & (mask - 1)];
            let v = self
                .algebra
                .add(rest, &self.table[low])
                .expect("table values");
            values.push(v);
        }
        values
    }

    fn in_bounds(&self, v: &Value) -> bool {
        let alg = self.algebra;
        alg.cmp(&alg.zero(), v).is_ok_and(|o| o.is_le())
            && alg.cmp(v, &alg.one()).is_ok_and(|o| o.is_le())
    }

    fn additivity_detail(&self, a: &Event, b: &Event) -> String {
        let r = |e: &Event| self.measure_of(e).expect("own space");
        format!(
            "R({} ∪ {}) = {} but R(A) # R(B) = {}",
            self.space.format_event(a),
            self.space.format_event(b),
            r(&a.union(b)),
            self.algebra
                .add(&r(a), &r(b))
                .expect("values of the algebra")
        )
    }

    /// Checks normalization, additivity on disjoint events, the `[n, e]`
    /// bounds, and coherence of impossible worlds.
    ///
    /// Event pairs are enumerated exhaustively on spaces of at most 8 worlds
    /// and sampled (256 pairs, fixed seed) on larger ones.
    pub fn validate(&self) -> Report {
        let alg = self.algebra;
        let mut report = Report::new();
        for (w, v) in self.table.iter().enumerate() {
            report.record("values belong to the algebra", alg.contains(v), || {
                format!("world {} has {v}", self.space.label(w))
            });
        }
        let total = self.total();
        report.record("normalization: R(1) = e", total == alg.one(), || {
            format!("worlds sum to {total}")
        });
        let empty = self.measure_of(&self.space.empty()).expect("own space");
        report.record("R(0) = n", alg.is_zero(&empty), || {
            format!("R(0) = {empty}")
        });

        let len = self.space.len();
        if len <= EXHAUSTIVE_WORLDS {
            let values = self.all_event_values();
            for code in 0..3u32.pow(len as u32) {
                let (a, b) = ternary_masks(len, code);
                let sum = alg
                    .add(&values[a], &values[b])
                    .expect("values of the algebra");
                report.record(
                    "additivity on disjoint events",
                    values[a | b] == sum,
                    || {
                        self.additivity_detail(
                            &Event::from_mask(len, a as u64),
                            &Event::from_mask(len, b as u64),
                        )
                    },
                );
            }
            for (mask, ra) in values.iter().enumerate() {
                report.record("bounds: n ≤ R(A) ≤ e", self.in_bounds(ra), || {
                    format!(
                        "R({}) = {ra}",
                        self.space.format_event(&Event::from_mask(len, mask as u64))
                    )
                });
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..256 {
                let digits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
                let a = Event::from_worlds(len, (0..len).filter(|&w| digits[w] == 1));
                let b = Event::from_worlds(len, (0..len).filter(|&w| digits[w] == 2));
                let ra = self.measure_of(&a).expect("own space");
                let rb = self.measure_of(&b).expect("own space");
                let rab = self.measure_of(&a.union(&b)).expect("own space");
                let sum = alg.add(&ra, &rb).expect("values of the algebra");
                report.record("additivity on disjoint events", rab == sum, || {
                    self.additivity_detail(&a, &b)
                });
                report.record("bounds: n ≤ R(A) ≤ e", self.in_bounds(&ra), || {
                    format!("R({}) = {ra}", self.space.format_event(&a))
                });
            }
        }

        let impossible = Event::from_worlds(len, (0..len).filter(|&w| alg.is_zero(&self.table[w])));
        let r = self.measure_of(&impossible).expect("own space");
        report.record(
            "coherence: unions of impossible worlds are impossible",
            alg.is_zero(&r),
            || format!("R({}) = {r}", self.space.format_event(&impossible)),
        );
        for w in impossible.worlds() {
            let single = Event::from_worlds(len, [w]);
            let r = self.measure_of(&single).expect("own space");
            report.record(
                "coherence: unions of impossible worlds are impossible",
                alg.is_zero(&r),
                || format!("R({{{}}}) = {r}", self.space.label(w)),
            );
        }
        report
    }
}

/// Decodes `code` in base 3 into two disjoint world masks: digit 1 puts
/// the world in the first, digit 2 in the second.
fn ternary_masks(len: usize, mut code: u32) -> (usize, usize) {
    let (mut a, mut b) = (0usize, 0usize);
    for w in 0..len {
        match code % 3 {
            1 => a |= 1 << w,
            2 => b |= 1 << w,
            _ => {}
        }
        code /= 3;
    }
    (a, b)
}
