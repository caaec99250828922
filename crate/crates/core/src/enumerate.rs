//! Exhaustive sweeps over the `F_p`-span of a list of matrices.
//!
//! Combinations are visited in modular `p`-ary Gray order: the Gray digits of
//! `t` are `g_i = (t_i - t_{i+1}) mod p`, and going from `t` to `t + 1` adds
//! generator `v_p(t + 1)` once, so every step costs one matrix addition.
//! Work is cut into contiguous chunks of `t`; results are merged with
//! order-independent reductions, so the outcome never depends on how many
//! workers ran.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Matrices over `F_p` (row-major, `rows x cols`) whose span is swept.
pub(crate) struct Span<'a> {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub gens: &'a [Vec<u32>],
}

const CHUNK: u64 = 1 << 12;

/// `p^k`, or the guard error if it exceeds `limit`.
pub(crate) fn checked_count(p: u32, k: usize, limit: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        match acc.checked_mul(p as u64) {
            Some(v) if v <= limit => acc = v,
            _ => {
                return Err(Error::GuardExceeded { needed: BigUint::from(p).pow(k as u32), limit });
            }
        }
    }
    if acc > limit {
        return Err(Error::GuardExceeded { needed: BigUint::from(acc), limit });
    }
    Ok(acc)
}

/// Gray digits of `t`.
pub(crate) fn gray_digits(t: u64, p: u32, k: usize) -> Vec<u32> {
    let p64 = p as u64;
    let mut digits = Vec::with_capacity(k + 1);
    let mut x = t;
    for _ in 0..=k {
        digits.push((x % p64) as u32);
        x /= p64;
    }
    (0..k).map(|i| (digits[i] + p - digits[i + 1]) % p).collect()
}

fn lowest_digit_index(mut t: u64, p: u32) -> usize {
    let mut j = 0;
    while t % p as u64 == 0 {
        t /= p as u64;
        j += 1;
    }
    j
}

trait Cursor {
    fn add_gen(&mut self, j: usize);
    fn rank(&mut self) -> usize;
}

struct BitCursor<'a> {
    gens: &'a [Vec<u64>],
    x: Vec<u64>,
    scratch: Vec<u64>,
}

impl<'a> BitCursor<'a> {
    fn new(gens: &'a [Vec<u64>], rows: usize, coeffs: &[u32]) -> Self {
        let mut x = vec![0u64; rows];
        for (g, &c) in gens.iter().zip(coeffs) {
            if c & 1 == 1 {
                for (a, b) in x.iter_mut().zip(g) {
                    *a ^= b;
                }
            }
        }
        BitCursor { gens, scratch: x.clone(), x }
    }
}

pub(crate) fn rank_bits(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    let n = rows.len();
    for i in 0..n {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

impl Cursor for BitCursor<'_> {
    fn add_gen(&mut self, j: usize) {
        for (a, b) in self.x.iter_mut().zip(&self.gens[j]) {
            *a ^= b;
        }
    }

    fn rank(&mut self) -> usize {
        self.scratch.copy_from_slice(&self.x);
        rank_bits(&mut self.scratch)
    }
}

struct ModCursor<'a> {
    span: &'a Span<'a>,
    x: Vec<u32>,
    scratch: Vec<u32>,
}

impl<'a> ModCursor<'a> {
    fn new(span: &'a Span<'a>, coeffs: &[u32]) -> Self {
        let p = span.p as u64;
        let mut x = vec![0u32; span.rows * span.cols];
        for (g, &c) in span.gens.iter().zip(coeffs) {
            if c != 0 {
                for (a, &b) in x.iter_mut().zip(g) {
                    *a = ((*a as u64 + c as u64 * b as u64) % p) as u32;
                }
            }
        }
        ModCursor { span, scratch: x.clone(), x }
    }
}

pub(crate) fn rank_mod_p(p: u32, data: &mut [u32], rows: usize, cols: usize) -> usize {
    let p64 = p as u64;
    let inv = |a: u32| -> u32 {
        let (mut r, mut base, mut e) = (1u64, a as u64, p64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p64;
            }
            base = base * base % p64;
            e >>= 1;
        }
        r as u32
    };
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(sel) = (rank..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if sel != rank {
            for j in c..cols {
                data.swap(sel * cols + j, rank * cols + j);
            }
        }
        let pinv = inv(data[rank * cols + c]) as u64;
        for i in rank + 1..rows {
            let v = data[i * cols + c];
            if v == 0 {
                continue;
            }
            let factor = (p64 - v as u64 * pinv % p64) % p64;
            for j in c..cols {
                let b = data[rank * cols + j];
                if b != 0 {
                    let idx = i * cols + j;
                    data[idx] = ((data[idx] as u64 + factor * b as u64) % p64) as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl Cursor for ModCursor<'_> {
    fn add_gen(&mut self, j: usize) {
        let p = self.span.p;
        for (a, &b) in self.x.iter_mut().zip(&self.span.gens[j]) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
    }

    fn rank(&mut self) -> usize {
        self.scratch.copy_from_slice(&self.x);
        rank_mod_p(self.span.p, &mut self.scratch, self.span.rows, self.span.cols)
    }
}

fn chunks(total: u64) -> Vec<Range<u64>> {
    let mut out = Vec::new();
    let mut s = 0;
    while s < total {
        let e = (s + CHUNK).min(total);
        out.push(s..e);
        s = e;
    }
    out
}

#[cfg(feature = "parallel")]
fn map_chunks<T: Send>(ranges: Vec<Range<u64>>, f: impl Fn(Range<u64>) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    ranges.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_chunks<T>(ranges: Vec<Range<u64>>, f: impl Fn(Range<u64>) -> T) -> Vec<T> {
    ranges.into_iter().map(f).collect()
}

fn bit_gens(span: &Span) -> Option<Vec<Vec<u64>>> {
    if span.p != 2 || span.cols > 64 {
        return None;
    }
    Some(
        span.gens
            .iter()
            .map(|g| {
                g.chunks(span.cols)
                    .map(|row| row.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | ((b as u64 & 1) << j)))
                    .collect()
            })
            .collect(),
    )
}

/// Walks `range` calling `visit(t, rank)`; stops early when it returns false.
fn walk(span: &Span, bits: Option<&[Vec<u64>]>, range: Range<u64>, mut visit: impl FnMut(u64, usize) -> bool) {
    let k = span.gens.len();
    let start = gray_digits(range.start, span.p, k);
    let mut drive = |cur: &mut dyn Cursor| {
        for t in range.clone() {
            if !visit(t, cur.rank()) {
                return;
            }
            if t + 1 < range.end {
                cur.add_gen(lowest_digit_index(t + 1, span.p));
            }
        }
    };
    match bits {
        Some(b) => drive(&mut BitCursor::new(b, span.rows, &start)),
        None => drive(&mut ModCursor::new(span, &start)),
    }
}

/// Number of elements of each `F_p`-rank in the span (assumes the
/// generators are independent, so every combination is a distinct element).
pub(crate) fn rank_histogram(span: &Span, limit: u64) -> Result<Vec<u64>> {
    let total = checked_count(span.p, span.gens.len(), limit)?;
    let width = span.rows.min(span.cols) + 1;
    let bits = bit_gens(span);
    let parts = map_chunks(chunks(total), |r| {
        let mut h = vec![0u64; width];
        walk(span, bits.as_deref(), r, |_, rank| {
            h[rank] += 1;
            true
        });
        h
    });
    let mut hist = vec![0u64; width];
    for h in parts {
        for (a, b) in hist.iter_mut().zip(h) {
            *a += b;
        }
    }
    Ok(hist)
}

/// Coefficients of the first nonzero combination (in Gray order) whose rank
/// is below `bound`.
pub(crate) fn first_rank_below(span: &Span, bound: usize, limit: u64) -> Result<Option<Vec<u32>>> {
    let total = checked_count(span.p, span.gens.len(), limit)?;
    let bits = bit_gens(span);
    let parts = map_chunks(chunks(total), |r| {
        let mut found = None;
        walk(span, bits.as_deref(), r, |t, rank| {
            if t != 0 && rank < bound {
                found = Some(t);
                false
            } else {
                true
            }
        });
        found
    });
    Ok(parts.into_iter().flatten().min().map(|t| gray_digits(t, span.p, span.gens.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn gray_steps_touch_one_digit() {
        for p in [2u32, 3, 5] {
            let k = 4;
            let total = (p as u64).pow(k as u32);
            let mut seen = BTreeSet::new();
            for t in 0..total {
                let g = gray_digits(t, p, k);
                assert!(seen.insert(g.clone()));
                if t + 1 < total {
                    let h = gray_digits(t + 1, p, k);
                    let j = lowest_digit_index(t + 1, p);
                    for i in 0..k {
                        let expect = if i == j { (g[i] + 1) % p } else { g[i] };
                        assert_eq!(h[i], expect);
                    }
                }
            }
            assert_eq!(seen.len() as u64, total);
        }
    }

    #[test]
    fn bit_and_mod_paths_agree() {
        let gens: Vec<Vec<u32>> = (0..9u32).map(|i| (0..12).map(|j| ((i * 7 + j * 3 + i * j) % 5 % 2) as u32).collect()).collect();
        let span = Span { p: 2, rows: 3, cols: 4, gens: &gens };
        let fast = rank_histogram(&span, 1 << 20).unwrap();
        let total: u64 = fast.iter().sum();
        assert_eq!(total, 512);
        let mut slow = vec![0u64; 4];
        for t in 0..512u64 {
            let c = gray_digits(t, 2, 9);
            let mut x = vec![0u32; 12];
            for (g, &ci) in gens.iter().zip(&c) {
                for (a, &b) in x.iter_mut().zip(g) {
                    *a = (*a + ci * b) % 2;
                }
            }
            slow[rank_mod_p(2, &mut x, 3, 4)] += 1;
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn guard_reports_needed_count() {
        let gens = vec![vec![0u32; 4]; 30];
        let span = Span { p: 2, rows: 2, cols: 2, gens: &gens };
        match rank_histogram(&span, 1000) {
            Err(Error::GuardExceeded { needed, limit }) => {
                assert_eq!(needed, BigUint::from(1u64 << 30));
                assert_eq!(limit, 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
