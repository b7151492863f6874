//! Combination-search engine behind enumeration and minimal-size search.
//!
//! Candidates are generated in lexicographic order. The search keeps, for
//! every (code, player) pair, the number of already-chosen elements on that
//! line; a prefix dies as soon as some code can no longer reach Q-1 hits on
//! any player even if every remaining line slot were taken. Once every code
//! is satisfied, all completions of the prefix are adequate (adequacy is
//! monotone under supersets) and are emitted without further checking.
//!
//! The space is partitioned by the first chosen element; partitions share
//! nothing and are merged in order, so results are independent of the
//! worker count.

use crate::error::Result;
use crate::game::{Code, GameShape, ScoreLineTable};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub(crate) struct Engine {
    m: usize,
    n: usize,
    q: usize,
    threshold: u8,
    /// Line membership lists, indexed `[(code * n + player) * q + j]`.
    members: Vec<Code>,
    /// Line bitmasks, indexed `[code * n + player]`.
    masks: Vec<u64>,
}

impl Engine {
    pub fn new(shape: &GameShape) -> Result<Self> {
        let table = ScoreLineTable::new(shape)?;
        let m = shape.num_codes() as usize;
        let n = shape.players();
        let q = shape.colors();
        let mut members = vec![0 as Code; m * n * q];
        let mut masks = vec![0u64; m * n];
        for code in 0..m as u32 {
            for player in 0..n {
                let idx = code as usize * n + player;
                masks[idx] = table.line_mask(player, code);
                members[idx * q..(idx + 1) * q].copy_from_slice(table.line_codes(player, code));
            }
        }
        Ok(Engine {
            m,
            n,
            q,
            threshold: (q - 1) as u8,
            members,
            masks,
        })
    }

    fn line_members(&self, code: Code, player: usize) -> &[Code] {
        let idx = (code as usize * self.n + player) * self.q;
        &self.members[idx..idx + self.q]
    }

    /// All size-`das` subsets passing the (weak or normative) adequacy
    /// check, in lexicographic order.
    pub fn enumerate(&self, das: usize, weak: bool, workers: usize) -> Vec<Vec<Code>> {
        if das > self.m {
            return Vec::new();
        }
        let first_elements: Vec<Code> = (0..=(self.m - das) as Code).collect();
        let per_partition = run_partitions(&first_elements, workers, |first| {
            let mut out = Vec::new();
            let mut dfs = Dfs::new(self, das, weak);
            dfs.push(first);
            dfs.search(first, &mut |codes: &[Code]| {
                out.push(codes.to_vec());
                true
            });
            out
        });
        per_partition.concat()
    }

    /// Lexicographically first adequate subset of size `das`, if any.
    ///
    /// Partitions stop early once a lower partition has reported a witness;
    /// a later partition's witness cannot be lexicographically first.
    pub fn first_witness(&self, das: usize, workers: usize) -> Option<Vec<Code>> {
        if das > self.m {
            return None;
        }
        let first_elements: Vec<Code> = (0..=(self.m - das) as Code).collect();
        let best_partition = AtomicUsize::new(usize::MAX);
        let per_partition = run_partitions(&first_elements, workers, |first| {
            let partition = first as usize;
            let mut found: Option<Vec<Code>> = None;
            let mut dfs = Dfs::new(self, das, false);
            dfs.abort_when_partition_below = Some((&best_partition, partition));
            dfs.push(first);
            dfs.search(first, &mut |codes: &[Code]| {
                found = Some(codes.to_vec());
                false
            });
            if found.is_some() {
                best_partition.fetch_min(partition, Ordering::Relaxed);
            }
            found
        });
        per_partition.into_iter().flatten().next()
    }
}

/// Runs `work` over all partitions on up to `workers` threads, returning
/// results in partition order. `workers == 0` means one thread per
/// available CPU.
fn run_partitions<T, F>(partitions: &[Code], workers: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Code) -> T + Sync,
{
    let workers = if workers == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        workers
    }
    .min(partitions.len())
    .max(1);

    if workers == 1 {
        return partitions.iter().map(|&f| work(f)).collect();
    }

    let cursor = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..partitions.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= partitions.len() {
                    break;
                }
                let result = work(partitions[i]);
                slots.lock().unwrap()[i] = Some(result);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every partition ran"))
        .collect()
}

struct Dfs<'e> {
    eng: &'e Engine,
    das: usize,
    weak: bool,
    /// Chosen elements on player i's line through code k, at `[k*n + i]`.
    hits: Vec<u8>,
    /// Players whose line through the code reached the threshold.
    sat_players: Vec<u8>,
    /// Codes still lacking a satisfied player (weak mode: and outside the
    /// prefix).
    unsat: usize,
    in_prefix: Vec<bool>,
    chosen: Vec<Code>,
    /// Cross-partition early abort for witness searches.
    abort_when_partition_below: Option<(&'e AtomicUsize, usize)>,
}

impl<'e> Dfs<'e> {
    fn new(eng: &'e Engine, das: usize, weak: bool) -> Self {
        Dfs {
            eng,
            das,
            weak,
            hits: vec![0; eng.m * eng.n],
            sat_players: vec![0; eng.m],
            unsat: eng.m,
            in_prefix: vec![false; eng.m],
            chosen: Vec::with_capacity(das),
            abort_when_partition_below: None,
        }
    }

    fn push(&mut self, c: Code) {
        if self.weak && self.sat_players[c as usize] == 0 {
            self.unsat -= 1; // c joins the prefix and stops needing cover
        }
        self.in_prefix[c as usize] = true;
        let n = self.eng.n;
        for player in 0..n {
            for &k in self.eng.line_members(c, player) {
                let h = &mut self.hits[k as usize * n + player];
                *h += 1;
                if *h == self.eng.threshold {
                    let sp = &mut self.sat_players[k as usize];
                    *sp += 1;
                    if *sp == 1 && !(self.weak && self.in_prefix[k as usize]) {
                        self.unsat -= 1;
                    }
                }
            }
        }
        self.chosen.push(c);
    }

    fn pop(&mut self, c: Code) {
        self.chosen.pop();
        let n = self.eng.n;
        for player in 0..n {
            for &k in self.eng.line_members(c, player) {
                let h = &mut self.hits[k as usize * n + player];
                if *h == self.eng.threshold {
                    let sp = &mut self.sat_players[k as usize];
                    *sp -= 1;
                    if *sp == 0 && !(self.weak && self.in_prefix[k as usize]) {
                        self.unsat += 1;
                    }
                }
                *h -= 1;
            }
        }
        self.in_prefix[c as usize] = false;
        if self.weak && self.sat_players[c as usize] == 0 {
            self.unsat += 1;
        }
    }

    /// True when some code can no longer be satisfied by any completion
    /// drawn from the pool above `last`.
    fn infeasible(&self, last: Code) -> bool {
        let n = self.eng.n;
        let pool: u64 = if last as usize >= 63 {
            0
        } else {
            !((1u64 << (last + 1)) - 1)
        };
        'codes: for k in 0..self.eng.m {
            if self.sat_players[k] != 0 {
                continue;
            }
            if self.weak {
                if self.in_prefix[k] {
                    continue;
                }
                if k as u32 > last {
                    continue; // could still be chosen and become exempt
                }
            }
            for player in 0..n {
                let future = (self.eng.masks[k * n + player] & pool).count_ones() as u8;
                if self.hits[k * n + player] + future >= self.eng.threshold {
                    continue 'codes;
                }
            }
            return true;
        }
        false
    }

    fn aborted(&self) -> bool {
        match self.abort_when_partition_below {
            Some((best, partition)) => best.load(Ordering::Relaxed) < partition,
            None => false,
        }
    }

    /// Extends the prefix whose last element is `last`; returns false when
    /// the caller should stop the whole search.
    fn search(&mut self, last: Code, visit: &mut impl FnMut(&[Code]) -> bool) -> bool {
        if self.aborted() {
            return false;
        }
        let need = self.das - self.chosen.len();
        if self.unsat == 0 {
            return self.emit_completions(last, need, visit);
        }
        if need == 0 {
            return true;
        }
        if self.infeasible(last) {
            return true;
        }
        let max_next = (self.eng.m - need) as Code;
        for next in (last + 1)..=max_next {
            self.push(next);
            let keep_going = self.search(next, visit);
            self.pop(next);
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// The prefix is already adequate: every completion is too.
    fn emit_completions(
        &mut self,
        last: Code,
        need: usize,
        visit: &mut impl FnMut(&[Code]) -> bool,
    ) -> bool {
        if need == 0 {
            return visit(&self.chosen);
        }
        let max_next = (self.eng.m - need) as Code;
        for next in (last + 1)..=max_next {
            self.chosen.push(next);
            let keep_going = self.emit_completions(next, need - 1, visit);
            self.chosen.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}
