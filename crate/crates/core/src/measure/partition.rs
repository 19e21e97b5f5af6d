use std::sync::Arc;

use super::{Event, MeasureError, QuasiMeasure, WorldSpace};
use crate::valuation::{Algebra, Value};

/// A ranking measure given on the finite subalgebra generated by a
/// partition: one value per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMeasure {
    algebra: Algebra,
    space: Arc<WorldSpace>,
    blocks: Vec<Event>,
    values: Vec<Value>,
}

impl PartitionMeasure {
    pub fn new(
        algebra: Algebra,
        space: Arc<WorldSpace>,
        blocks: Vec<Event>,
        values: Vec<Value>,
    ) -> Result<Self, MeasureError> {
        let invalid = |msg: String| Err(MeasureError::InvalidPartition(msg));
        if !matches!(algebra, Algebra::Ranking(_)) {
            return invalid(format!(
                "partition measures take a ranking algebra, not {algebra}"
            ));
        }
        if blocks.len() != values.len() {
            return invalid(format!(
                "{} blocks but {} values",
                blocks.len(),
                values.len()
            ));
        }
        let mut covered = space.empty();
        for block in &blocks {
            if block.space_len() != space.len() {
                return Err(MeasureError::SpaceMismatch {
                    space: space.len(),
                    event: block.space_len(),
                });
            }
            if block.is_empty() {
                return invalid("empty block".into());
            }
            if !block.is_disjoint(&covered) {
                return invalid(format!(
                    "block {} overlaps an earlier block",
                    space.format_event(block)
                ));
            }
            covered = covered.union(block);
        }
        if covered != space.full() {
            let missing = covered.complement();
            return invalid(format!(
                "worlds {} are in no block",
                space.format_event(&missing)
            ));
        }
        for v in &values {
            algebra.check(v)?;
        }
        let total = algebra.sum(&values)?;
        if total != algebra.one() {
            return invalid(format!("block values have maximum {total}, not e"));
        }
        Ok(PartitionMeasure {
            algebra,
            space,
            blocks,
            values,
        })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn space(&self) -> &Arc<WorldSpace> {
        &self.space
    }

    pub fn blocks(&self) -> &[Event] {
        &self.blocks
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    /// Value of the union of the selected blocks.
    pub fn value_of_union(&self, blocks: &[usize]) -> Value {
        self.algebra
            .sum(blocks.iter().map(|&i| &self.values[i]))
            .expect("validated values")
    }

    /// The canonical extension to every subset of the space.
    ///
    /// Each world takes its block's value, so an event measures the value
    /// of the union of the blocks it meets: the smallest element of the
    /// subalgebra covering it, which is the infimum over all covers.
    pub fn extend(&self) -> QuasiMeasure {
        let mut table = vec![self.algebra.zero(); self.space.len()];
        for (block, value) in self.blocks.iter().zip(&self.values) {
            for w in block.worlds() {
                table[w] = value.clone();
            }
        }
        QuasiMeasure::new(self.algebra, Arc::clone(&self.space), table)
            .expect("partition values are normalized")
    }
}
