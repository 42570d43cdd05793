//! HLT coset enumeration with union-find coincidence processing and a
//! lookahead pass before giving up on the coset budget.

use super::Presentation;
use crate::words::FreeWord;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Complete,
    Overflow,
}

/// Result of an enumeration. When complete, `rows[c][2g]` is the image of
/// coset `c` under generator `g` and `rows[c][2g+1]` under its inverse;
/// coset 0 is the subgroup itself.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub ngens: usize,
    pub status: Status,
    pub rows: Vec<Vec<u32>>,
    /// Largest number of rows allocated at once.
    pub peak_cosets: usize,
}

impl CosetTable {
    /// `[group : subgroup]` when the enumeration completed.
    pub fn index(&self) -> Option<usize> {
        (self.status == Status::Complete).then_some(self.rows.len())
    }

    pub fn trace(&self, coset: usize, w: &FreeWord) -> usize {
        w.letters().iter().fold(coset, |c, l| self.rows[c][l.code()] as usize)
    }

    /// Checks that the table is a permutation action in which every relator
    /// acts trivially and every subgroup generator fixes coset 0.
    pub fn verify(&self, p: &Presentation, subgroup: &[FreeWord]) -> bool {
        if self.status != Status::Complete {
            return false;
        }
        let n = self.rows.len();
        for col in 0..2 * self.ngens {
            let mut hit = vec![false; n];
            for c in 0..n {
                let d = self.rows[c][col] as usize;
                if d >= n || hit[d] || self.rows[d][col ^ 1] as usize != c {
                    return false;
                }
                hit[d] = true;
            }
        }
        (0..n).all(|c| p.relators.iter().all(|r| self.trace(c, r) == c))
            && subgroup.iter().all(|w| self.trace(0, w) == 0)
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    peak: usize,
    relators: Vec<Vec<usize>>,
}

struct Full;

impl Enumerator {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.ncols + x] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn new_coset(&mut self) -> Result<usize, Full> {
        if self.rows() >= self.max_cosets {
            return Err(Full);
        }
        let d = self.rows();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        self.peak = self.peak.max(self.rows());
        Ok(d)
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), Full> {
        let d = self.new_coset()?;
        self.set(c, x, d as u32);
        self.set(d, x ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut k = c;
        while self.parent[k] as usize != r {
            let next = self.parent[k] as usize;
            self.parent[k] = r as u32;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo as u32;
            self.live -= 1;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                self.set(f, x ^ 1, NONE);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex as usize, &mut queue);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != NONE {
                        self.merge(e1, fx as usize, &mut queue);
                    } else {
                        self.set(e1, x, f1 as u32);
                        self.set(f1, x ^ 1, e1 as u32);
                    }
                }
            }
        }
    }

    /// Scans `word` at coset `c`, defining new cosets when `fill` is set;
    /// otherwise only deductions and coincidences are recorded.
    fn scan(&mut self, c: usize, word: &[usize], fill: bool) -> Result<(), Full> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, word[j as usize] ^ 1) != NONE {
                b = self.get(b, word[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, word[i], b as u32);
                self.set(b, word[i] ^ 1, f as u32);
                return Ok(());
            } else if fill {
                self.define(f, word[i])?;
            } else {
                return Ok(());
            }
        }
    }

    fn lookahead(&mut self) {
        let relators = std::mem::take(&mut self.relators);
        for c in 0..self.rows() {
            for r in &relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
        }
        self.relators = relators;
    }

    /// Renumbers live cosets in order; returns the old→new map.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.rows();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *slot = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n {
            if map[c] == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let d = self.get(c, x);
                table.push(if d == NONE { NONE } else { map[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        map
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`,
/// allocating at most `max_cosets` rows.
pub fn todd_coxeter(p: &Presentation, subgroup: &[FreeWord], max_cosets: usize) -> CosetTable {
    assert!(max_cosets >= 1);
    let codes = |w: &FreeWord| w.letters().iter().map(|l| l.code()).collect::<Vec<usize>>();
    let mut en = Enumerator {
        ncols: 2 * p.rank(),
        table: Vec::new(),
        parent: Vec::new(),
        live: 0,
        max_cosets,
        peak: 0,
        relators: p.relators.iter().map(codes).collect(),
    };
    let overflow = |en: &Enumerator| CosetTable {
        ngens: p.rank(),
        status: Status::Overflow,
        rows: Vec::new(),
        peak_cosets: en.peak,
    };
    en.new_coset().ok().expect("max_cosets >= 1");
    for w in subgroup {
        let w = codes(w);
        loop {
            match en.scan(0, &w, true) {
                Ok(()) => break,
                Err(Full) => {
                    en.lookahead();
                    if en.live >= en.max_cosets {
                        return overflow(&en);
                    }
                    en.compact();
                }
            }
        }
    }

    let mut c = 0usize;
    'outer: while c < en.rows() {
        if en.is_live(c) {
            let mut k = 0;
            while k < en.relators.len() + en.ncols {
                if !en.is_live(c) {
                    break;
                }
                let step = if k < en.relators.len() {
                    let r = std::mem::take(&mut en.relators[k]);
                    let res = en.scan(c, &r, true);
                    en.relators[k] = r;
                    res
                } else {
                    let x = k - en.relators.len();
                    if en.get(c, x) == NONE { en.define(c, x) } else { Ok(()) }
                };
                match step {
                    Ok(()) => k += 1,
                    Err(Full) => {
                        en.lookahead();
                        if en.live >= en.max_cosets {
                            return overflow(&en);
                        }
                        let map = en.compact();
                        // resume at the first surviving coset at or after c
                        c = (c..map.len()).find_map(|o| (map[o] != NONE).then_some(map[o] as usize)).unwrap_or(en.rows());
                        continue 'outer;
                    }
                }
            }
        }
        c += 1;
    }

    en.compact();
    let rows: Vec<Vec<u32>> = en.table.chunks(en.ncols).map(|r| r.to_vec()).collect();
    let status = if rows.iter().all(|r| r.iter().all(|&d| d != NONE)) { Status::Complete } else { Status::Overflow };
    CosetTable { ngens: p.rank(), status, rows, peak_cosets: en.peak }
}
