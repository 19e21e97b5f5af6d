//! Line-based text formats for measures and partition measures.
//!
//! ```text
//! # running example
//! algebra cumulative z
//! atoms p q
//! pq   0:0.6
//! p!q  0:0.4
//! !pq  1:1
//! !p!q 2:1/2
//! ```
//!
//! `#` starts a comment. The `algebra` header comes first. An optional
//! `atoms` line makes the worlds the truth assignments of those atoms;
//! otherwise worlds are the labels in order of appearance. Every world is
//! listed exactly once. A final `normalize` line divides the table by its
//! total instead of requiring it to sum to `e`.
//!
//! Partition files share the headers; each remaining line is
//! `block <value> <world>...`.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use super::{Event, MeasureError, PartitionMeasure, QuasiMeasure, WorldSpace};
use crate::proplang::{enumerate_worlds, ProplangError};
use crate::valuation::{Algebra, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// A parsed measure file, before the normalization contract is applied.
#[derive(Clone, Debug)]
pub struct MeasureFile {
    pub algebra: Algebra,
    pub space: Arc<WorldSpace>,
    pub table: Vec<Value>,
    pub normalize: bool,
}

impl MeasureFile {
    /// The measure, normalized if the file asked for it and otherwise
    /// required to sum to `e` already.
    pub fn into_measure(self) -> Result<QuasiMeasure, MeasureError> {
        if self.normalize {
            QuasiMeasure::normalize(self.algebra, self.space, self.table)
        } else {
            QuasiMeasure::new(self.algebra, self.space, self.table)
        }
    }

    /// The table as written, without any normalization check.
    pub fn into_raw(self) -> Result<QuasiMeasure, MeasureError> {
        QuasiMeasure::from_raw(self.algebra, self.space, self.table)
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Iterator for Lines<'a> {
    /// 1-based line number and the whitespace-separated fields.
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let content = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            if !fields.is_empty() {
                return Some((i + 1, fields));
            }
        }
        None
    }
}

fn lines(text: &str) -> Lines<'_> {
    Lines {
        inner: text.lines().enumerate(),
    }
}

struct Header {
    algebra: Algebra,
    atoms: Option<(usize, Vec<String>)>,
}

fn read_header(lines: &mut std::iter::Peekable<Lines<'_>>) -> Result<Header, FormatError> {
    let Some((line, fields)) = lines.next() else {
        return err(1, "empty file; expected an `algebra` header");
    };
    if fields[0] != "algebra" {
        return err(
            line,
            format!("expected `algebra <kind>`, found {:?}", fields[0]),
        );
    }
    let algebra: Algebra = fields[1..]
        .join(" ")
        .parse()
        .or_else(|e| err(line, format!("{e}")))?;
    let mut atoms = None;
    if let Some((line, fields)) = lines.peek() {
        if fields[0] == "atoms" {
            atoms = Some((*line, fields[1..].iter().map(|s| s.to_string()).collect()));
            lines.next();
        }
    }
    Ok(Header { algebra, atoms })
}

fn atom_space(line: usize, atoms: &[String]) -> Result<WorldSpace, FormatError> {
    enumerate_worlds(atoms).or_else(|e: ProplangError| err(line, e.to_string()))
}

pub fn parse_measure(text: &str) -> Result<MeasureFile, FormatError> {
    let mut lines = lines(text).peekable();
    let header = read_header(&mut lines)?;
    let algebra = header.algebra;
    let mut entries: Vec<(usize, String, Value)> = Vec::new();
    let mut normalize = false;
    for (line, fields) in lines {
        if normalize {
            return err(line, "nothing may follow the `normalize` directive");
        }
        match fields.as_slice() {
            ["normalize"] => normalize = true,
            [label, value] => {
                let value = algebra
                    .parse_value(value)
                    .or_else(|e| err(line, e.to_string()))?;
                entries.push((line, label.to_string(), value));
            }
            _ => return err(line, "expected `<world> <value>`"),
        }
    }
    let last_line = entries.last().map_or(1, |e| e.0);
    let space = match &header.atoms {
        Some((line, atoms)) => atom_space(*line, atoms)?,
        None => WorldSpace::new(entries.iter().map(|e| e.1.clone()))
            .or_else(|e| err(last_line, e.to_string()))?,
    };
    let mut table: Vec<Option<Value>> = vec![None; space.len()];
    for (line, label, value) in entries {
        let Some(w) = space.index_of(&label) else {
            return err(line, format!("unknown world {label:?}"));
        };
        if table[w].replace(value).is_some() {
            return err(line, format!("world {label:?} listed twice"));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(w, v)| v.ok_or(w))
        .collect::<Result<Vec<_>, _>>()
        .or_else(|w| {
            err(
                last_line,
                format!("world {:?} has no value", space.label(w)),
            )
        })?;
    Ok(MeasureFile {
        algebra,
        space: Arc::new(space),
        table,
        normalize,
    })
}

pub fn parse_partition(text: &str) -> Result<PartitionMeasure, FormatError> {
    let mut lines = lines(text).peekable();
    let header = read_header(&mut lines)?;
    let algebra = header.algebra;
    let mut blocks: Vec<(usize, Value, Vec<String>)> = Vec::new();
    for (line, fields) in lines {
        if fields[0] != "block" || fields.len() < 3 {
            return err(line, "expected `block <value> <world>...`");
        }
        let value = algebra
            .parse_value(fields[1])
            .or_else(|e| err(line, e.to_string()))?;
        blocks.push((
            line,
            value,
            fields[2..].iter().map(|s| s.to_string()).collect(),
        ));
    }
    let last_line = blocks.last().map_or(1, |b| b.0);
    let space = match &header.atoms {
        Some((line, atoms)) => atom_space(*line, atoms)?,
        None => {
            let labels: Vec<String> = blocks.iter().flat_map(|b| b.2.iter().cloned()).collect();
            WorldSpace::new(labels).or_else(|e| err(last_line, e.to_string()))?
        }
    };
    let mut events = Vec::with_capacity(blocks.len());
    let mut values = Vec::with_capacity(blocks.len());
    for (line, value, worlds) in blocks {
        let event: Event = space
            .event(worlds.iter().map(String::as_str))
            .or_else(|e| err(line, e.to_string()))?;
        events.push(event);
        values.push(value);
    }
    PartitionMeasure::new(algebra, Arc::new(space), events, values)
        .or_else(|e| err(last_line, e.to_string()))
}

/// Serializes a measure so that [`parse_measure`] reads it back unchanged.
pub fn write_measure(m: &QuasiMeasure) -> String {
    let mut out = format!("algebra {}\n", m.algebra());
    if let Some(atoms) = m.space().atoms() {
        out.push_str("atoms");
        for a in atoms {
            out.push(' ');
            out.push_str(a);
        }
        out.push('\n');
    }
    let width = m
        .space()
        .labels()
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0);
    for (label, value) in m.space().labels().iter().zip(m.table()) {
        out.push_str(&format!("{label:<width$} {value}\n"));
    }
    out
}

/// Writes `m` to `path` via a temporary file in the same directory and a
/// rename, so readers never observe a partial file.
pub fn save_measure(path: &Path, m: &QuasiMeasure) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(write_measure(m).as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
