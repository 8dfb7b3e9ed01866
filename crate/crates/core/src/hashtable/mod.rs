//! Open-addressing table with random probing.
//!
//! Keys are opaque `u64` identifiers; the table studies where keys end up,
//! not how they are hashed. Each key has an infinite probe stream
//! ([`ProbeStream`]); a key stored at its `j`-th probe has *age* `j`, which is
//! also its successful-search cost.
//!
//! Collisions during insertion are resolved by a [`Discipline`]. Deletion
//! marks the slot [`Slot::Deleted`]; marked slots never become empty again
//! but are reused by later insertions.

mod probe;
mod snapshot;

use std::collections::BTreeMap;
#[cfg(debug_assertions)]
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use probe::{mix64, ProbeStream};
pub use snapshot::{read_snapshot, write_snapshot, SNAPSHOT_HEADER};

/// Probe budget per slot before an operation is declared stuck.
pub const GUARD_FACTOR: u64 = 64;
/// Largest supported table, so that ages below the guard fit in `u32`.
pub const MAX_SLOTS: usize = (u32::MAX as u64 / GUARD_FACTOR) as usize;

const NOT_REGISTERED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TableError {
    #[error("table of {capacity} slots cannot take another key")]
    Full { capacity: usize },
    #[error("inserting key {key:#x} inspected {inspected} slots without finding room")]
    Livelock { key: u64, inspected: u64 },
    #[error("key {0:#x} not found")]
    NotFound(u64),
    #[error("cannot delete from an empty table")]
    NoKeys,
    #[error("key {0:#x} is already stored")]
    DuplicateKey(u64),
    #[error("search center {0} must be finite and >= 1")]
    InvalidCenter(f64),
    #[error("invalid table: {0}")]
    Invalid(String),
}

/// Collision resolution discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Discipline {
    /// The incumbent keeps the slot.
    #[serde(rename = "fcfs")]
    Fcfs,
    /// The incoming key takes the slot.
    #[serde(rename = "lcfs")]
    Lcfs,
    /// The older key (larger age) keeps or takes the slot; ties go to the
    /// incumbent.
    #[serde(rename = "rh")]
    RobinHood,
}

impl Discipline {
    pub const ALL: [Discipline; 3] = [Discipline::Fcfs, Discipline::Lcfs, Discipline::RobinHood];

    pub fn as_str(self) -> &'static str {
        match self {
            Discipline::Fcfs => "fcfs",
            Discipline::Lcfs => "lcfs",
            Discipline::RobinHood => "rh",
        }
    }

    /// Whether a token of `incoming_age` displaces an incumbent of
    /// `incumbent_age`.
    #[inline]
    fn incoming_wins(self, incoming_age: u32, incumbent_age: u32) -> bool {
        match self {
            Discipline::Fcfs => false,
            Discipline::Lcfs => true,
            Discipline::RobinHood => incoming_age > incumbent_age,
        }
    }
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Discipline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fcfs" => Ok(Discipline::Fcfs),
            "lcfs" => Ok(Discipline::Lcfs),
            "rh" | "robin-hood" | "robinhood" => Ok(Discipline::RobinHood),
            other => Err(format!(
                "unknown discipline '{other}' (expected fcfs, lcfs or rh)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Slot {
    #[default]
    Empty,
    Deleted,
    Occupied {
        key: u64,
        age: u32,
    },
}

impl Slot {
    pub fn is_occupied(&self) -> bool {
        matches!(self, Slot::Occupied { .. })
    }
}

/// Outcome of a successful insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InsertionReceipt {
    /// Age of the inserted key once the insertion settles.
    pub final_age: u32,
    /// Probe evaluations across every token carried during the insertion.
    pub slots_inspected: u64,
    /// Number of evictions.
    pub displacements: u32,
}

/// One contested slot during an insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision {
    pub slot: usize,
    pub incoming_key: u64,
    pub incoming_age: u32,
    pub incumbent_key: u64,
    pub incumbent_age: u32,
    pub incoming_won: bool,
}

#[derive(Debug, Clone, Copy)]
struct Token {
    key: u64,
    age: u32,
}

/// Fixed-capacity open-addressing table.
#[derive(Debug, Clone)]
pub struct Table {
    slots: Vec<Slot>,
    discipline: Discipline,
    probe: ProbeStream,
    /// Occupied slot indices, for O(1) uniform sampling.
    registry: Vec<usize>,
    /// `registry[registry_pos[s]] == s` for occupied `s`.
    registry_pos: Vec<u32>,
    deleted: usize,
    #[cfg(debug_assertions)]
    keys: HashSet<u64>,
}

impl Table {
    pub fn new(m: usize, discipline: Discipline, seed: u64) -> Self {
        assert!(
            (1..=MAX_SLOTS).contains(&m),
            "table size {m} outside 1..={MAX_SLOTS}"
        );
        Table {
            slots: vec![Slot::Empty; m],
            discipline,
            probe: ProbeStream::new(seed, m),
            registry: Vec::new(),
            registry_pos: vec![NOT_REGISTERED; m],
            deleted: 0,
            #[cfg(debug_assertions)]
            keys: HashSet::new(),
        }
    }

    /// Rebuilds a table from a slot array, checking every invariant.
    pub fn from_slots(
        slots: Vec<Slot>,
        discipline: Discipline,
        seed: u64,
    ) -> Result<Self, TableError> {
        let m = slots.len();
        if !(1..=MAX_SLOTS).contains(&m) {
            return Err(TableError::Invalid(format!(
                "table size {m} outside 1..={MAX_SLOTS}"
            )));
        }
        let mut table = Table::new(m, discipline, seed);
        for (s, slot) in slots.into_iter().enumerate() {
            match slot {
                Slot::Empty => {}
                Slot::Deleted => table.deleted += 1,
                Slot::Occupied { key, .. } => {
                    #[cfg(debug_assertions)]
                    if !table.keys.insert(key) {
                        return Err(TableError::DuplicateKey(key));
                    }
                    let _ = key;
                    table.register(s);
                }
            }
            table.slots[s] = slot;
        }
        if table.len() >= m {
            return Err(TableError::Invalid("no unoccupied slot left".into()));
        }
        table.verify()?;
        Ok(table)
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    /// Number of stored keys.
    pub fn len(&self) -> usize {
        self.registry.len()
    }

    pub fn is_empty(&self) -> bool {
        self.registry.is_empty()
    }

    pub fn deleted_count(&self) -> usize {
        self.deleted
    }

    pub fn load_factor(&self) -> f64 {
        self.len() as f64 / self.capacity() as f64
    }

    pub fn discipline(&self) -> Discipline {
        self.discipline
    }

    pub fn seed(&self) -> u64 {
        self.probe.seed()
    }

    pub fn probe_stream(&self) -> &ProbeStream {
        &self.probe
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    fn guard(&self) -> u64 {
        GUARD_FACTOR * self.capacity() as u64
    }

    /// `(slot, key, age)` for every occupied slot, in slot order.
    pub fn occupied(&self) -> impl Iterator<Item = (usize, u64, u32)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(s, slot)| match *slot {
                Slot::Occupied { key, age } => Some((s, key, age)),
                _ => None,
            })
    }

    /// `(key, age)` stored at the `i`-th registry position, `i < len()`.
    /// Registry order is arbitrary but deterministic.
    pub fn registry_entry(&self, i: usize) -> (u64, u32) {
        match self.slots[self.registry[i]] {
            Slot::Occupied { key, age } => (key, age),
            _ => unreachable!("registry points at an unoccupied slot"),
        }
    }

    fn register(&mut self, s: usize) {
        debug_assert_eq!(self.registry_pos[s], NOT_REGISTERED);
        self.registry_pos[s] = self.registry.len() as u32;
        self.registry.push(s);
    }

    fn unregister(&mut self, s: usize) {
        let pos = self.registry_pos[s] as usize;
        debug_assert_eq!(self.registry[pos], s);
        self.registry.swap_remove(pos);
        if let Some(&moved) = self.registry.get(pos) {
            self.registry_pos[moved] = pos as u32;
        }
        self.registry_pos[s] = NOT_REGISTERED;
    }

    /// Whether some probe `j < age` of `key` already landed on `slot`.
    fn revisits(&self, key: u64, age: u32, slot: usize) -> bool {
        (1..age).any(|j| self.probe.slot(key, j) == slot)
    }

    /// Inserts a key that is not already stored.
    pub fn insert(&mut self, key: u64) -> Result<InsertionReceipt, TableError> {
        self.insert_observed(key, |_| {})
    }

    /// [`Table::insert`] that also returns every collision it resolved.
    pub fn insert_traced(
        &mut self,
        key: u64,
    ) -> Result<(InsertionReceipt, Vec<Collision>), TableError> {
        let mut log = Vec::new();
        let receipt = self.insert_observed(key, |c| log.push(c))?;
        Ok((receipt, log))
    }

    /// Carries the new key, and whichever key it evicts, along their probe
    /// streams until a token reaches an empty or deleted slot.
    ///
    /// A [`TableError::Livelock`] leaves the table without the carried key;
    /// such a table should be discarded.
    fn insert_observed<F: FnMut(Collision)>(
        &mut self,
        key: u64,
        mut observe: F,
    ) -> Result<InsertionReceipt, TableError> {
        if self.len() + 1 >= self.capacity() {
            return Err(TableError::Full {
                capacity: self.capacity(),
            });
        }
        #[cfg(debug_assertions)]
        if !self.keys.insert(key) {
            return Err(TableError::DuplicateKey(key));
        }

        let guard = self.guard();
        let mut token = Token { key, age: 1 };
        let mut inspected = 0u64;
        let mut displacements = 0u32;
        let mut final_age = 0u32;
        loop {
            if inspected >= guard {
                return Err(TableError::Livelock { key, inspected });
            }
            let s = self.probe.slot(token.key, token.age);
            inspected += 1;
            // A key never settles on a slot its stream has already passed:
            // a search would stop there at the earlier probe, and after an
            // eviction the key would replay probes it has already made.
            if self.revisits(token.key, token.age, s) {
                token.age += 1;
                continue;
            }
            match self.slots[s] {
                Slot::Empty | Slot::Deleted => {
                    if self.slots[s] == Slot::Deleted {
                        self.deleted -= 1;
                    }
                    self.slots[s] = Slot::Occupied {
                        key: token.key,
                        age: token.age,
                    };
                    self.register(s);
                    if token.key == key {
                        final_age = token.age;
                    }
                    break;
                }
                Slot::Occupied {
                    key: resident,
                    age: resident_age,
                } => {
                    let won = self.discipline.incoming_wins(token.age, resident_age);
                    observe(Collision {
                        slot: s,
                        incoming_key: token.key,
                        incoming_age: token.age,
                        incumbent_key: resident,
                        incumbent_age: resident_age,
                        incoming_won: won,
                    });
                    if won {
                        self.slots[s] = Slot::Occupied {
                            key: token.key,
                            age: token.age,
                        };
                        if token.key == key {
                            final_age = token.age;
                        }
                        token = Token {
                            key: resident,
                            age: resident_age + 1,
                        };
                        displacements += 1;
                    } else {
                        token.age += 1;
                    }
                }
            }
        }
        Ok(InsertionReceipt {
            final_age,
            slots_inspected: inspected,
            displacements,
        })
    }

    /// Marks a uniformly chosen occupied slot as deleted and returns its key.
    pub fn delete_random<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<u64, TableError> {
        if self.is_empty() {
            return Err(TableError::NoKeys);
        }
        let s = self.registry[rng.random_range(0..self.registry.len())];
        Ok(self.delete_slot(s))
    }

    /// Deletes a specific key, returning the age it had.
    pub fn remove(&mut self, key: u64) -> Result<u32, TableError> {
        let (s, _) = self.locate(key)?;
        let age = match self.slots[s] {
            Slot::Occupied { age, .. } => age,
            _ => unreachable!(),
        };
        self.delete_slot(s);
        Ok(age)
    }

    fn delete_slot(&mut self, s: usize) -> u64 {
        let Slot::Occupied { key, .. } = self.slots[s] else {
            unreachable!("deleting an unoccupied slot");
        };
        self.slots[s] = Slot::Deleted;
        self.deleted += 1;
        self.unregister(s);
        #[cfg(debug_assertions)]
        self.keys.remove(&key);
        key
    }

    fn locate(&self, key: u64) -> Result<(usize, u32), TableError> {
        let guard = self.guard();
        let mut j = 1u32;
        loop {
            if u64::from(j) > guard {
                return Err(TableError::NotFound(key));
            }
            let s = self.probe.slot(key, j);
            match self.slots[s] {
                Slot::Occupied { key: k, .. } if k == key => return Ok((s, j)),
                Slot::Empty => return Err(TableError::NotFound(key)),
                _ => j += 1,
            }
        }
    }

    /// Standard successful search: probes `1, 2, ...` until the key shows
    /// up, skipping deleted slots. Returns the number of probes, which is the
    /// key's age.
    pub fn search_standard(&self, key: u64) -> Result<u32, TableError> {
        self.locate(key).map(|(_, j)| j)
    }

    /// Mean-centered search: inspects ages `j0, j0+1, j0-1, j0+2, j0-2, ...`
    /// with `j0 = max(1, round(center))`, skipping ages below 1. Returns the
    /// number of slots inspected.
    pub fn search_mean_centered(&self, key: u64, center: f64) -> Result<u64, TableError> {
        if !(center >= 1.0) || !center.is_finite() {
            return Err(TableError::InvalidCenter(center));
        }
        let cap = self.guard();
        let j0 = (center.round() as u64).max(1);
        let mut inspected = 0u64;
        let hit = |j: u64, inspected: &mut u64| -> bool {
            *inspected += 1;
            let s = self.probe.slot(key, j as u32);
            matches!(self.slots[s], Slot::Occupied { key: k, .. } if k == key)
        };
        if j0 <= cap && hit(j0, &mut inspected) {
            return Ok(inspected);
        }
        for d in 1.. {
            let up = j0 + d;
            let down = j0.checked_sub(d).filter(|&j| j >= 1);
            if up > cap && down.is_none() {
                break;
            }
            if up <= cap && hit(up, &mut inspected) {
                return Ok(inspected);
            }
            if let Some(j) = down {
                if hit(j, &mut inspected) {
                    return Ok(inspected);
                }
            }
        }
        Err(TableError::NotFound(key))
    }

    /// Count of stored keys by age.
    pub fn age_histogram(&self) -> BTreeMap<u32, u64> {
        let mut hist = BTreeMap::new();
        for (_, _, age) in self.occupied() {
            *hist.entry(age).or_insert(0) += 1;
        }
        hist
    }

    /// Checks the placement invariant and the bookkeeping.
    pub fn verify(&self) -> Result<(), TableError> {
        let mut occupied = 0usize;
        let mut deleted = 0usize;
        for (s, slot) in self.slots.iter().enumerate() {
            match *slot {
                Slot::Empty => {}
                Slot::Deleted => deleted += 1,
                Slot::Occupied { key, age } => {
                    occupied += 1;
                    if age == 0 || self.probe.slot(key, age) != s || self.revisits(key, age, s) {
                        return Err(TableError::Invalid(format!(
                            "key {key:#x} with age {age} is not at its first probe of slot {s}"
                        )));
                    }
                    let pos = self.registry_pos[s] as usize;
                    if self.registry.get(pos) != Some(&s) {
                        return Err(TableError::Invalid(format!(
                            "slot {s} missing from registry"
                        )));
                    }
                }
            }
        }
        if occupied != self.registry.len() || deleted != self.deleted {
            return Err(TableError::Invalid(format!(
                "counted {occupied} occupied / {deleted} deleted, bookkeeping says {} / {}",
                self.registry.len(),
                self.deleted
            )));
        }
        if occupied >= self.capacity() {
            return Err(TableError::Invalid("no unoccupied slot left".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Two keys whose first probes coincide under `seed`.
    fn colliding_pair(m: usize, seed: u64) -> (u64, u64) {
        let p = ProbeStream::new(seed, m);
        let mut first_seen = std::collections::HashMap::new();
        for k in 0.. {
            let s = p.slot(k, 1);
            if let Some(&other) = first_seen.get(&s) {
                // keep the fixture simple: neither key's second probe hits s
                if p.slot(other, 2) != s && p.slot(k, 2) != s {
                    return (other, k);
                }
            }
            first_seen.insert(s, k);
        }
        unreachable!()
    }

    #[test]
    fn first_insert_lands_on_first_probe() {
        let mut t = Table::new(64, Discipline::RobinHood, 3);
        let r = t.insert(42).unwrap();
        assert_eq!(
            r,
            InsertionReceipt {
                final_age: 1,
                slots_inspected: 1,
                displacements: 0
            }
        );
        assert_eq!(
            t.slots()[t.probe_stream().slot(42, 1)],
            Slot::Occupied { key: 42, age: 1 }
        );
    }

    #[test]
    fn robin_hood_tie_keeps_incumbent() {
        let (a, b) = colliding_pair(1 << 20, 11);
        let mut t = Table::new(1 << 20, Discipline::RobinHood, 11);
        t.insert(a).unwrap();
        let r = t.insert(b).unwrap();
        assert_eq!(r.final_age, 2);
        assert_eq!(r.displacements, 0);
        assert_eq!(t.search_standard(a).unwrap(), 1);
        assert_eq!(t.search_standard(b).unwrap(), 2);
    }

    #[test]
    fn lcfs_incoming_takes_the_slot() {
        let (a, b) = colliding_pair(1 << 20, 11);
        let mut t = Table::new(1 << 20, Discipline::Lcfs, 11);
        t.insert(a).unwrap();
        let contested = t.probe_stream().slot(a, 1);
        let r = t.insert(b).unwrap();
        assert_eq!(r.final_age, 1);
        assert_eq!(r.displacements, 1);
        assert_eq!(t.slots()[contested], Slot::Occupied { key: b, age: 1 });
        assert_eq!(t.search_standard(a).unwrap(), 2);
        assert_eq!(r.slots_inspected, 2);
    }

    #[test]
    fn fcfs_incoming_moves_on() {
        let (a, b) = colliding_pair(1 << 20, 11);
        let mut t = Table::new(1 << 20, Discipline::Fcfs, 11);
        t.insert(a).unwrap();
        let r = t.insert(b).unwrap();
        assert_eq!((r.final_age, r.displacements), (2, 0));
    }

    #[test]
    fn capacity_is_enforced() {
        let mut t = Table::new(4, Discipline::Fcfs, 0);
        for k in 0..3 {
            t.insert(k).unwrap();
        }
        assert_eq!(t.insert(99), Err(TableError::Full { capacity: 4 }));
        assert_eq!(t.len(), 3);
    }

    #[cfg(debug_assertions)]
    #[test]
    fn duplicate_keys_are_rejected_in_debug_builds() {
        let mut t = Table::new(16, Discipline::RobinHood, 0);
        t.insert(5).unwrap();
        assert_eq!(t.insert(5), Err(TableError::DuplicateKey(5)));
    }

    #[test]
    fn delete_single_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut t = Table::new(16, Discipline::RobinHood, 0);
        t.insert(7).unwrap();
        assert_eq!(t.delete_random(&mut rng).unwrap(), 7);
        assert_eq!(t.len(), 0);
        assert_eq!(t.deleted_count(), 1);
        assert_eq!(t.slots()[t.probe_stream().slot(7, 1)], Slot::Deleted);
        assert_eq!(t.delete_random(&mut rng), Err(TableError::NoKeys));
    }

    #[test]
    fn deleted_slot_is_reused() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut t = Table::new(1 << 16, Discipline::RobinHood, 5);
        t.insert(1).unwrap();
        let s = t.probe_stream().slot(1, 1);
        t.delete_random(&mut rng).unwrap();
        let newcomer = (2..).find(|&k| t.probe_stream().slot(k, 1) == s).unwrap();
        t.insert(newcomer).unwrap();
        assert_eq!(
            t.slots()[s],
            Slot::Occupied {
                key: newcomer,
                age: 1
            }
        );
        assert_eq!(t.deleted_count(), 0);
    }

    #[test]
    fn search_skips_deleted_slots() {
        let (a, b) = colliding_pair(1 << 20, 11);
        let mut t = Table::new(1 << 20, Discipline::Fcfs, 11);
        t.insert(a).unwrap();
        t.insert(b).unwrap();
        assert_eq!(t.remove(a).unwrap(), 1);
        // b's first probe now holds a deletion marker; search goes past it
        assert_eq!(t.search_standard(b).unwrap(), 2);
        assert_eq!(t.search_standard(a), Err(TableError::NotFound(a)));
    }

    #[test]
    fn absent_key_stops_at_empty_slot() {
        let mut t = Table::new(1024, Discipline::RobinHood, 2);
        for k in 0..100 {
            t.insert(k).unwrap();
        }
        assert_eq!(t.search_standard(10_000), Err(TableError::NotFound(10_000)));
    }

    #[test]
    fn mean_centered_order() {
        let mut t = Table::new(1 << 12, Discipline::Fcfs, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for k in 0..3500u64 {
            t.insert(rand::RngCore::next_u64(&mut rng) ^ k).unwrap();
        }
        for (_, key, age) in t.occupied().collect::<Vec<_>>() {
            // exact center: one inspection
            assert_eq!(t.search_mean_centered(key, f64::from(age)).unwrap(), 1);
            if age >= 4 {
                // age = j0 + 2 with j0 - 1 >= 1: j0, j0+1, j0-1, j0+2
                let c = f64::from(age - 2);
                assert_eq!(t.search_mean_centered(key, c).unwrap(), 4);
            }
            // center 1 is the standard order
            assert_eq!(t.search_mean_centered(key, 1.0).unwrap(), u64::from(age));
        }
        assert!(t.search_mean_centered(0, 0.5).is_err());
    }

    #[test]
    fn histogram_counts_occupied_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut t = Table::new(256, Discipline::RobinHood, 4);
        assert!(t.age_histogram().is_empty());
        for k in 0..200 {
            t.insert(k).unwrap();
        }
        for k in 200..2000 {
            t.insert(k).unwrap();
            t.delete_random(&mut rng).unwrap();
        }
        let total: u64 = t.age_histogram().values().sum();
        assert_eq!(total as usize, t.len());
        t.verify().unwrap();
    }

    #[test]
    fn histogram_of_known_ages() {
        let slots = vec![
            Slot::Empty,
            Slot::Empty,
            Slot::Deleted,
            Slot::Empty,
            Slot::Empty,
            Slot::Empty,
            Slot::Empty,
            Slot::Empty,
        ];
        let p = ProbeStream::new(0, 8);
        let mut slots = slots;
        let mut placed = 0;
        for key in 0u64.. {
            let wanted_age = [1, 1, 2][placed];
            let s = p.slot(key, wanted_age);
            if slots[s] == Slot::Empty && (1..wanted_age).all(|j| p.slot(key, j) != s) {
                slots[s] = Slot::Occupied {
                    key,
                    age: wanted_age,
                };
                placed += 1;
                if placed == 3 {
                    break;
                }
            }
        }
        let t = Table::from_slots(slots, Discipline::RobinHood, 0).unwrap();
        let hist: Vec<_> = t.age_histogram().into_iter().collect();
        assert_eq!(hist, vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn from_slots_rejects_misplaced_key() {
        let mut slots = vec![Slot::Empty; 8];
        let p = ProbeStream::new(0, 8);
        let s = p.slot(3, 1);
        slots[(s + 1) % 8] = Slot::Occupied { key: 3, age: 1 };
        assert!(matches!(
            Table::from_slots(slots, Discipline::Fcfs, 0),
            Err(TableError::Invalid(_))
        ));
    }

    #[test]
    fn discipline_parses() {
        assert_eq!("rh".parse::<Discipline>().unwrap(), Discipline::RobinHood);
        assert_eq!("FCFS".parse::<Discipline>().unwrap(), Discipline::Fcfs);
        assert!("linear".parse::<Discipline>().is_err());
    }
}
