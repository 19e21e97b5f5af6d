//! Generalized probabilistic valuation algebras and quasi-measures.
//!
//! * [`valuation`]: the real, ranking and cumulative valuation algebras,
//!   exact arithmetic, and executable checks of their laws.
//! * [`measure`]: quasi-measures over finite world spaces with
//!   conditioning, independence, normalization and the canonical
//!   extension of ranking measures from a partition to all events.
//! * [`proplang`]: propositional formulas and their events.
//! * [`belief`]: plain belief, entrenchment and revision over cumulative
//!   measures.
//! * [`cli`]: the `qm` command-line tool.

pub mod belief;
pub mod cli;
pub mod measure;
pub mod proplang;
pub mod report;
pub mod sampling;
pub mod valuation;

pub use belief::{EpistemicState, RankShift};
pub use measure::{Event, QuasiMeasure, WorldSpace};
pub use proplang::Formula;
pub use report::Report;
pub use valuation::{Algebra, RankGroup, Value};
