use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::MeasureError;

/// A finite, ordered set of possible worlds.
///
/// Worlds are either opaque labels or the truth assignments of an atom
/// vocabulary (see [`crate::proplang::enumerate_worlds`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorldSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    atoms: Option<Vec<String>>,
}

impl WorldSpace {
    /// A space of opaque worlds. Labels must be nonempty, unique and free of
    /// whitespace and `#` so that they survive the measure file format.
    pub fn new<I, S>(labels: I) -> Result<Self, MeasureError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::build(labels.into_iter().map(Into::into).collect(), None)
    }

    pub(crate) fn with_atoms(
        labels: Vec<String>,
        atoms: Vec<String>,
    ) -> Result<Self, MeasureError> {
        Self::build(labels, Some(atoms))
    }

    fn build(labels: Vec<String>, atoms: Option<Vec<String>>) -> Result<Self, MeasureError> {
        if labels.is_empty() {
            return Err(MeasureError::InvalidSpace(
                "a world space needs at least one world".into(),
            ));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains(|c: char| c.is_whitespace() || c == '#') {
                return Err(MeasureError::InvalidSpace(format!(
                    "unusable world label {label:?}"
                )));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(MeasureError::InvalidSpace(format!(
                    "duplicate world {label:?}"
                )));
            }
        }
        Ok(WorldSpace {
            labels,
            index,
            atoms,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, world: usize) -> &str {
        &self.labels[world]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The atom vocabulary, when worlds are truth assignments.
    pub fn atoms(&self) -> Option<&[String]> {
        self.atoms.as_deref()
    }

    pub fn full(&self) -> Event {
        Event::full(self.len())
    }

    pub fn empty(&self) -> Event {
        Event::empty(self.len())
    }

    pub fn event<'a, I>(&self, labels: I) -> Result<Event, MeasureError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut event = self.empty();
        for label in labels {
            let i = self
                .index_of(label)
                .ok_or_else(|| MeasureError::UnknownWorld(label.to_string()))?;
            event.insert(i);
        }
        Ok(event)
    }

    /// Every event of the space, in mask order. Only sensible for small spaces.
    pub fn all_events(&self) -> impl Iterator<Item = Event> + '_ {
        assert!(
            self.len() < 32,
            "exhaustive enumeration of a {}-world space",
            self.len()
        );
        (0u64..(1u64 << self.len())).map(move |mask| Event::from_mask(self.len(), mask))
    }

    pub fn format_event(&self, event: &Event) -> String {
        let members: Vec<&str> = event.worlds().map(|w| self.label(w)).collect();
        format!("{{{}}}", members.join(", "))
    }
}

/// A set of worlds of a space of a fixed size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    bits: FixedBitSet,
}

impl Event {
    pub fn empty(len: usize) -> Self {
        Event {
            bits: FixedBitSet::with_capacity(len),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(len);
        bits.insert_range(..);
        Event { bits }
    }

    /// World `i` is a member iff bit `i` of `mask` is set.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        let mut event = Event::empty(len);
        for i in 0..len.min(64) {
            if mask >> i & 1 == 1 {
                event.insert(i);
            }
        }
        event
    }

    pub fn from_worlds(len: usize, worlds: impl IntoIterator<Item = usize>) -> Self {
        let mut event = Event::empty(len);
        for w in worlds {
            event.insert(w);
        }
        event
    }

    /// Size of the space the event lives in.
    pub fn space_len(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, world: usize) {
        self.bits.insert(world);
    }

    pub fn contains(&self, world: usize) -> bool {
        self.bits.contains(world)
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn worlds(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn union(&self, other: &Event) -> Event {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Event { bits }
    }

    pub fn intersection(&self, other: &Event) -> Event {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Event { bits }
    }

    pub fn complement(&self) -> Event {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Event { bits }
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Event) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.worlds().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", members.join(", "))
    }
}
