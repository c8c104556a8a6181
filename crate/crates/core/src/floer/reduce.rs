//! Cancellation of grading-preserving differentials.
//!
//! Cancelling `x → y` (same grading) quotients out the acyclic subcomplex
//! spanned by `x` and `∂x`. The quotient map sends `x` to zero, `y` to
//! `∂x − y` and fixes the rest, so it respects the filtration, and so does
//! the new differential `∂'a = ∂a + ⟨∂a, y⟩ ∂x`.

use alloc::vec;
use alloc::vec::Vec;

/// Sparse complex over the two-element field with mutable adjacency.
pub struct Reducer {
    pub grading: Vec<i32>,
    pub out: Vec<Vec<u32>>,
    pub inn: Vec<Vec<u32>>,
    pub alive: Vec<bool>,
    /// A tracked chain, pushed forward through every cancellation.
    pub tracked: Vec<u32>,
}

fn toggle(v: &mut Vec<u32>, x: u32) {
    match v.binary_search(&x) {
        Ok(i) => {
            v.remove(i);
        }
        Err(i) => v.insert(i, x),
    }
}

fn remove(v: &mut Vec<u32>, x: u32) {
    if let Ok(i) = v.binary_search(&x) {
        v.remove(i);
    }
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Reducer {
    /// `out[x]` must be sorted and free of repeats.
    pub fn new(grading: Vec<i32>, out: Vec<Vec<u32>>, tracked: Vec<u32>) -> Reducer {
        let n = grading.len();
        let mut inn = vec![Vec::new(); n];
        for (x, ys) in out.iter().enumerate() {
            for &y in ys {
                inn[y as usize].push(x as u32);
            }
        }
        let mut tracked = tracked;
        tracked.sort_unstable();
        Reducer { grading, out, inn, alive: vec![true; n], tracked }
    }

    fn cancel(&mut self, x: u32, y: u32) {
        let dx = core::mem::take(&mut self.out[x as usize]);
        let sources: Vec<u32> = self.inn[y as usize].iter().copied().filter(|&a| a != x).collect();
        for &a in &sources {
            self.out[a as usize] = xor_sorted(&self.out[a as usize], &dx);
            for &b in &dx {
                toggle(&mut self.inn[b as usize], a);
            }
        }
        if self.tracked.binary_search(&y).is_ok() {
            self.tracked = xor_sorted(&self.tracked, &dx);
        }
        remove(&mut self.tracked, x);
        for &b in &dx {
            remove(&mut self.inn[b as usize], x);
        }
        for a in core::mem::take(&mut self.inn[x as usize]) {
            remove(&mut self.out[a as usize], x);
        }
        for b in core::mem::take(&mut self.out[y as usize]) {
            remove(&mut self.inn[b as usize], y);
        }
        self.inn[y as usize].clear();
        self.alive[x as usize] = false;
        self.alive[y as usize] = false;
    }

    /// Cancels every differential that preserves the grading. Afterwards
    /// each remaining edge strictly lowers it.
    pub fn reduce_graded(&mut self) {
        self.reduce_where(|gx, gy| gx == gy);
    }

    /// Cancels every remaining differential.
    pub fn reduce_all(&mut self) {
        self.reduce_where(|_, _| true);
    }

    fn reduce_where(&mut self, ok: impl Fn(i32, i32) -> bool) {
        let n = self.grading.len();
        for x in 0..n as u32 {
            while self.alive[x as usize] {
                let gx = self.grading[x as usize];
                let best = self.out[x as usize]
                    .iter()
                    .copied()
                    .filter(|&y| ok(gx, self.grading[y as usize]))
                    .min_by_key(|&y| (self.inn[y as usize].len(), y));
                match best {
                    Some(y) => self.cancel(x, y),
                    None => break,
                }
            }
        }
    }

    pub fn survivors(&self) -> Vec<u32> {
        (0..self.grading.len() as u32).filter(|&x| self.alive[x as usize]).collect()
    }
}

/// Dense matrix over the two-element field, rows as bit vectors.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> BitMatrix {
        BitMatrix { cols, rows: Vec::new() }
    }

    pub fn push_row(&mut self, ones: impl IntoIterator<Item = usize>) {
        let mut r = vec![0u64; self.cols.div_ceil(64)];
        for c in ones {
            r[c / 64] ^= 1 << (c % 64);
        }
        self.rows.push(r);
    }

    /// Rank by elimination with the lowest set column as pivot.
    pub fn rank(&self) -> usize {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for r in &self.rows {
            if let Some((row, p)) = reduce_row(r.clone(), &basis, &pivots) {
                basis.push(row);
                pivots.push(p);
            }
        }
        basis.len()
    }

    /// Whether `v` lies in the span of the rows.
    pub fn spans(&self, v: impl IntoIterator<Item = usize>) -> bool {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for r in &self.rows {
            if let Some((row, p)) = reduce_row(r.clone(), &basis, &pivots) {
                basis.push(row);
                pivots.push(p);
            }
        }
        let mut t = BitMatrix::new(self.cols);
        t.push_row(v);
        reduce_row(t.rows.pop().unwrap_or_default(), &basis, &pivots).is_none()
    }
}

fn lowest(r: &[u64]) -> Option<usize> {
    r.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn reduce_row(mut r: Vec<u64>, basis: &[Vec<u64>], pivots: &[usize]) -> Option<(Vec<u64>, usize)> {
    for (b, &p) in basis.iter().zip(pivots) {
        if r[p / 64] >> (p % 64) & 1 == 1 {
            for (x, y) in r.iter_mut().zip(b) {
                *x ^= y;
            }
        }
    }
    lowest(&r).map(|p| (r, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_span() {
        let mut m = BitMatrix::new(70);
        m.push_row([0, 69]);
        m.push_row([1, 69]);
        m.push_row([0, 1]);
        assert_eq!(m.rank(), 2);
        assert!(m.spans([0, 1]));
        assert!(!m.spans([2]));
        assert!(m.spans([]));
    }

    #[test]
    fn cancellation_keeps_homology_of_a_square() {
        // a → b, a → c, b → d, c → d, all in one grading: acyclic.
        let out = vec![vec![1, 2], vec![3], vec![3], vec![]];
        let mut r = Reducer::new(vec![0; 4], out, vec![]);
        r.reduce_graded();
        assert!(r.survivors().is_empty());
    }

    #[test]
    fn tracked_chain_follows_the_quotient_map() {
        // x → y + w, with w a separate cycle; y maps to w.
        let out = vec![vec![1, 2], vec![], vec![]];
        let mut r = Reducer::new(vec![0, 0, -1], out, vec![1]);
        r.reduce_graded();
        assert_eq!(r.survivors(), vec![2]);
        assert_eq!(r.tracked, vec![2]);
    }
}
