//! Brute-force reference computations on plain bitstrings. Nothing here
//! touches the library's judgment encoding.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn bitstrings(m: usize) -> Vec<String> {
    (0..1u32 << m).map(|k| format!("{k:0m$b}")).collect()
}

pub fn hamming(a: &str, b: &str) -> usize {
    assert_eq!(a.len(), b.len());
    a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count()
}

/// Double loop over candidates and agents; keeps every candidate with the least score.
pub fn argmin(domain: &[String], profile: &[String], score: fn(&[usize]) -> usize) -> BTreeSet<String> {
    let mut best = usize::MAX;
    let mut out = BTreeSet::new();
    for c in domain {
        let mut ds = Vec::new();
        for a in profile {
            ds.push(hamming(c, a));
        }
        let s = score(&ds);
        if s < best {
            best = s;
            out.clear();
        }
        if s == best {
            out.insert(c.clone());
        }
    }
    out
}

pub fn max_score(ds: &[usize]) -> usize {
    *ds.iter().max().unwrap()
}

pub fn spread_score(ds: &[usize]) -> usize {
    ds.iter().max().unwrap() - ds.iter().min().unwrap()
}

/// Multisets of size `n` over `items`, as non-decreasing index sequences.
pub fn multisets(items: &[String], n: usize) -> Vec<Vec<String>> {
    fn rec(items: &[String], start: usize, left: usize, cur: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..items.len() {
            cur.push(items[k].clone());
            rec(items, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Every subset of `items` with a size in `sizes`.
pub fn subsets(items: &[String], sizes: std::ops::RangeInclusive<usize>) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << items.len() {
        if sizes.contains(&(mask.count_ones() as usize)) {
            out.push(
                (0..items.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| items[k].clone())
                    .collect(),
            );
        }
    }
    out
}
