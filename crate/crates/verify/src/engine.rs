//! Construction of the full table of per-window comparison functions.
//!
//! Building all `3^9` functions is dominated by the refinement-tree sum
//! bound `W`, which depends only on a window's four-digit backward word.
//! There are `3^4 = 81` distinct words, so the build computes each word
//! once (in parallel), consults an optional persistent store first, and
//! then assembles the 19683 functions from the shared word results.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use ffamily::{w_for_word, FFunction, FParams};
use pattern::{all_patterns, Pattern, PATTERN_COUNT};
use rayon::prelude::*;

use crate::VerifyError;

/// Number of distinct backward words.
pub const WORD_COUNT: usize = 81;

/// Index of a backward word in lexicographic order.
pub fn word_index(word: [u32; 4]) -> usize {
    word.iter().fold(0usize, |acc, &d| {
        debug_assert!((1..=3).contains(&d));
        acc * 3 + (d as usize - 1)
    })
}

fn word_from_index(mut i: usize) -> [u32; 4] {
    debug_assert!(i < WORD_COUNT);
    let mut w = [0u32; 4];
    for slot in w.iter_mut().rev() {
        *slot = (i % 3) as u32 + 1;
        i /= 3;
    }
    w
}

/// Persistent source of refinement-tree sum bounds.
///
/// Keys are full `(window, params)` pairs even though the bound only
/// depends on the backward word; a store may therefore be consulted with
/// any window and must return whatever it was given for exactly that key.
/// `put` is called once per window whose bound was computed this run, so
/// implementations should deduplicate if re-appending is costly.
pub trait WStore: Sync {
    /// Returns `(w, restarts)` if the store has an entry for this key.
    fn get(&self, window: &Pattern, params: &FParams) -> Option<(f64, u32)>;
    /// Records a freshly computed bound.
    fn put(&self, window: &Pattern, params: &FParams, w: f64, restarts: u32);
}

/// Store that never hits and discards writes; for one-shot runs.
#[derive(Debug, Default)]
pub struct NoStore;

impl WStore for NoStore {
    fn get(&self, _window: &Pattern, _params: &FParams) -> Option<(f64, u32)> {
        None
    }
    fn put(&self, _window: &Pattern, _params: &FParams, _w: f64, _restarts: u32) {}
}

/// In-memory store, mostly for tests and warm reruns within a process.
#[derive(Debug, Default)]
pub struct MemoryStore {
    map: Mutex<HashMap<(Pattern, FParams), (f64, u32)>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl WStore for MemoryStore {
    fn get(&self, window: &Pattern, params: &FParams) -> Option<(f64, u32)> {
        self.map.lock().unwrap().get(&(*window, *params)).copied()
    }
    fn put(&self, window: &Pattern, params: &FParams, w: f64, restarts: u32) {
        self.map.lock().unwrap().insert((*window, *params), (w, restarts));
    }
}

/// The complete family of per-window comparison functions at fixed
/// parameters, indexed by window.
pub struct FTable {
    params: FParams,
    ffs: Vec<FFunction>,
    /// Restart count of the refinement pass per backward word.
    word_restarts: [u32; WORD_COUNT],
}

impl FTable {
    /// Builds the family, consulting `store` for known sum bounds and
    /// persisting any it had to compute.
    pub fn build(params: FParams, store: &dyn WStore) -> Result<Self, VerifyError> {
        // Phase 1: collect per-word results from the store. Any window
        // carrying the word can supply it.
        let mut word_w: Vec<Option<(f64, u32)>> = vec![None; WORD_COUNT];
        let mut had_entry = vec![false; PATTERN_COUNT];
        for p in all_patterns() {
            if let Some(hit) = store.get(&p, &params) {
                had_entry[p.index()] = true;
                let wi = word_index(p.mirror_word());
                if word_w[wi].is_none() {
                    word_w[wi] = Some(hit);
                }
            }
        }

        // Phase 2: compute missing words in parallel. Each job is
        // independent, so scheduling order cannot affect the values.
        let missing: Vec<usize> =
            (0..WORD_COUNT).filter(|&wi| word_w[wi].is_none()).collect();
        let computed = missing
            .into_par_iter()
            .map(|wi| {
                let res = w_for_word(&word_from_index(wi), &params)?;
                Ok((wi, res.w, res.restarts))
            })
            .collect::<Result<Vec<_>, VerifyError>>()?;
        for (wi, w, restarts) in computed {
            word_w[wi] = Some((w, restarts));
        }

        let mut word_restarts = [0u32; WORD_COUNT];
        for wi in 0..WORD_COUNT {
            word_restarts[wi] = word_w[wi].unwrap().1;
        }

        // Phase 3: persist, sequentially, only for windows the store did
        // not already have.
        for p in all_patterns() {
            if !had_entry[p.index()] {
                let (w, restarts) = word_w[word_index(p.mirror_word())].unwrap();
                store.put(&p, &params, w, restarts);
            }
        }

        // Phase 4: assemble the functions, in parallel by window index.
        let ffs = (0..PATTERN_COUNT)
            .into_par_iter()
            .map(|i| {
                let p = Pattern::from_index(i);
                let (w, _) = word_w[word_index(p.mirror_word())].unwrap();
                FFunction::new(p, params, w).map_err(VerifyError::from)
            })
            .collect::<Result<Vec<_>, VerifyError>>()?;

        Ok(FTable { params, ffs, word_restarts })
    }

    pub fn params(&self) -> FParams {
        self.params
    }

    /// The comparison function of `window`.
    pub fn ff(&self, window: &Pattern) -> &FFunction {
        &self.ffs[window.index()]
    }

    /// The comparison function at a window index.
    pub fn ff_at(&self, index: usize) -> &FFunction {
        &self.ffs[index]
    }

    /// All functions in window order.
    pub fn iter(&self) -> impl Iterator<Item = &FFunction> {
        self.ffs.iter()
    }

    /// Restart count of the refinement pass for `window`'s backward word.
    pub fn restarts_for(&self, window: &Pattern) -> u32 {
        self.word_restarts[word_index(window.mirror_word())]
    }

    /// How many backward words needed how many threshold restarts:
    /// `restarts -> number of words`.
    pub fn restart_histogram(&self) -> BTreeMap<u32, u32> {
        let mut h = BTreeMap::new();
        for &r in &self.word_restarts {
            *h.entry(r).or_insert(0u32) += 1;
        }
        h
    }
}
