//! Text snapshot of a slot array: `index,state,key,age` with state `E`
//! (empty), `D` (deleted) or `O` (occupied). Key and age are blank unless
//! occupied.

use std::io::{self, BufRead, Write};

use super::{Slot, Table, TableError};

pub const SNAPSHOT_HEADER: &str = "index,state,key,age";

pub fn write_snapshot<W: Write>(table: &Table, mut out: W) -> io::Result<()> {
    writeln!(out, "{SNAPSHOT_HEADER}")?;
    for (i, slot) in table.slots().iter().enumerate() {
        match slot {
            Slot::Empty => writeln!(out, "{i},E,,")?,
            Slot::Deleted => writeln!(out, "{i},D,,")?,
            Slot::Occupied { key, age } => writeln!(out, "{i},O,{key},{age}")?,
        }
    }
    out.flush()
}

/// Parses a snapshot back into a slot array. Rows must be in index order.
pub fn read_snapshot<R: BufRead>(input: R) -> Result<Vec<Slot>, TableError> {
    let bad =
        |line: usize, what: &str| TableError::Invalid(format!("snapshot line {line}: {what}"));
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim_end() == SNAPSHOT_HEADER => {}
        _ => return Err(bad(1, "missing header")),
    }
    let mut slots = Vec::new();
    for (n, line) in lines.enumerate() {
        let lineno = n + 2;
        let line = line.map_err(|e| bad(lineno, &e.to_string()))?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(lineno, "expected 4 fields"));
        }
        let index: usize = fields[0].parse().map_err(|_| bad(lineno, "bad index"))?;
        if index != slots.len() {
            return Err(bad(lineno, "index out of order"));
        }
        let slot = match (fields[1], fields[2], fields[3]) {
            ("E", "", "") => Slot::Empty,
            ("D", "", "") => Slot::Deleted,
            ("O", key, age) => Slot::Occupied {
                key: key.parse().map_err(|_| bad(lineno, "bad key"))?,
                age: age.parse().map_err(|_| bad(lineno, "bad age"))?,
            },
            _ => return Err(bad(lineno, "bad state")),
        };
        slots.push(slot);
    }
    Ok(slots)
}
