//! Finite posets, the carrier of every finite Priestley space.
//!
//! Points are dense indices `0..n` with `n <= 64`, so a subset of points fits
//! in one machine word. The order is stored as the principal up-set and
//! down-set of every point.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 64;

/// A subset of the points `0..64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        PointSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        PointSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, o: Self) -> Self {
        PointSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        PointSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        PointSet(self.0 & !o.0)
    }

    /// Complement relative to the first `n` points.
    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & Self::full(n).0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, in increasing order of the bit pattern.
    pub fn subsets(self) -> impl Iterator<Item = PointSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(PointSet(cur))
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

/// A finite partial order on labelled points.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `up[x]` is the principal up-set of `x`.
    up: Vec<PointSet>,
    /// `down[x]` is the principal down-set of `x`.
    down: Vec<PointSet>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset{{{}; ", self.labels.join(","))?;
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "{}}}", covers.join(","))
    }
}

/// Builds a poset from labels and generating pairs `(lower, upper)`.
pub fn build_poset<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<FinitePoset> {
    let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
    let mut index = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    if labels.len() > MAX_POINTS {
        return Err(Error::TooManyPoints(labels.len()));
    }
    let lookup = |l: &str| index.get(l).copied().ok_or_else(|| Error::UnknownLabel(l.into()));
    let mut pairs = Vec::with_capacity(covers.len());
    for (a, b) in covers {
        pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
    }
    FinitePoset::from_pairs(labels, &pairs)
}

impl FinitePoset {
    /// Reflexive-transitive closure of `pairs` (lower, upper) over indices.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        let mut up: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::UnknownPoint(a));
            }
            if b >= n {
                return Err(Error::UnknownPoint(b));
            }
            up[a] = up[a].with(b);
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                let mut acc = up[x];
                for y in up[x].iter() {
                    acc = acc.union(up[y]);
                }
                if acc != up[x] {
                    up[x] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::CycleDetected(labels[x].clone(), labels[y].clone()));
                }
            }
        }
        Ok(Self::from_up_sets(labels, up))
    }

    /// Builds from a relation `leq(a, b)` that is already a partial order.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        let p = Self::from_pairs(labels, &pairs)?;
        for a in 0..n {
            for b in 0..n {
                if p.leq(a, b) != (a == b || leq(a, b)) {
                    return Err(Error::invariant(
                        "relation is transitive",
                        format!("{} <= {}", p.labels[a], p.labels[b]),
                    ));
                }
            }
        }
        Ok(p)
    }

    fn from_up_sets(labels: Vec<String>, up: Vec<PointSet>) -> Self {
        let n = labels.len();
        let mut down = vec![PointSet::EMPTY; n];
        for (x, ux) in up.iter().enumerate() {
            for y in ux.iter() {
                down[y] = down[y].with(x);
            }
        }
        FinitePoset { labels, up, down }
    }

    pub fn chain(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(labels, &pairs).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n)
            .map(|i| {
                if i < 26 {
                    char::from(b'a' + i as u8).to_string()
                } else {
                    format!("a{i}")
                }
            })
            .collect();
        Self::from_pairs(labels, &[]).expect("an antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn set_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet> {
        labels.iter().try_fold(PointSet::EMPTY, |s, l| {
            self.index_of(l.as_ref())
                .map(|i| s.with(i))
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
        })
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_of(&self, x: usize) -> PointSet {
        self.up[x]
    }

    pub fn down_of(&self, x: usize) -> PointSet {
        self.down[x]
    }

    fn check(&self, s: PointSet) -> Result<()> {
        match s.difference(self.full()).iter().next() {
            Some(i) => Err(Error::UnknownPoint(i)),
            None => Ok(()),
        }
    }

    pub fn order_closure(&self, s: PointSet, dir: Direction) -> Result<PointSet> {
        self.check(s)?;
        Ok(match dir {
            Direction::Up => self.up(s),
            Direction::Down => self.down(s),
        })
    }

    pub fn extrema(&self, s: PointSet, which: Extremum) -> Result<PointSet> {
        self.check(s)?;
        Ok(match which {
            Extremum::Min => self.minimal(s),
            Extremum::Max => self.maximal(s),
        })
    }

    /// `↑s`, for `s` already known to be in range.
    pub fn up(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |a, x| a.union(self.up[x]))
    }

    /// `↓s`, for `s` already known to be in range.
    pub fn down(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |a, x| a.union(self.down[x]))
    }

    /// Points strictly above some point of `s`.
    pub fn strict_up(&self, s: PointSet) -> PointSet {
        s.iter()
            .fold(PointSet::EMPTY, |a, x| a.union(self.up[x].without(x)))
    }

    /// Points strictly below some point of `s`.
    pub fn strict_down(&self, s: PointSet) -> PointSet {
        s.iter()
            .fold(PointSet::EMPTY, |a, x| a.union(self.down[x].without(x)))
    }

    pub fn minimal(&self, s: PointSet) -> PointSet {
        s.difference(self.strict_up(s))
    }

    pub fn maximal(&self, s: PointSet) -> PointSet {
        s.difference(self.strict_down(s))
    }

    pub fn is_upset(&self, s: PointSet) -> bool {
        self.up(s) == s
    }

    pub fn is_downset(&self, s: PointSet) -> bool {
        self.down(s) == s
    }

    /// Every upset, sorted by size and then lexicographically on indices.
    pub fn enumerate_upsets(&self) -> Vec<PointSet> {
        // Points with larger up-sets come later, so every point is decided
        // after everything above it.
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.up[x].len(), x));
        let mut out = Vec::new();
        self.upsets_rec(&order, 0, PointSet::EMPTY, &mut out);
        sort_sets(&mut out);
        out
    }

    fn upsets_rec(&self, order: &[usize], i: usize, cur: PointSet, out: &mut Vec<PointSet>) {
        if i == order.len() {
            out.push(cur);
            return;
        }
        let x = order[i];
        self.upsets_rec(order, i + 1, cur, out);
        if self.up[x].without(x).is_subset(cur) {
            self.upsets_rec(order, i + 1, cur.with(x), out);
        }
    }

    /// Every downset, in the same order convention as upsets.
    pub fn enumerate_downsets(&self) -> Vec<PointSet> {
        let full = self.full();
        let mut out: Vec<PointSet> = self
            .enumerate_upsets()
            .into_iter()
            .map(|u| u.complement(self.len()).intersection(full))
            .collect();
        sort_sets(&mut out);
        out
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let above = self.up[a].without(a);
            for b in above.iter() {
                let between = above.intersection(self.down[b].without(b));
                if between.is_empty() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Renders a point set as `{x1,x2}` or `∅`.
    pub fn format_set(&self, s: PointSet) -> String {
        if s.is_empty() {
            return "∅".into();
        }
        let items: Vec<&str> = s.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", items.join(","))
    }

    pub fn labels_of(&self, s: PointSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// The induced subposet on `s`, keeping labels; returns the index map.
    pub fn restrict(&self, s: PointSet) -> (FinitePoset, Vec<usize>) {
        let idx: Vec<usize> = s.iter().collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let sub = FinitePoset::from_relation(labels, |a, b| self.leq(idx[a], idx[b]))
            .expect("restriction of a poset is a poset");
        (sub, idx)
    }

    /// Isomorphism-invariant code: the lexicographically least order matrix
    /// over all relabellings that respect a refined degree partition.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.len();
        let base: Vec<(usize, usize)> = (0..n).map(|x| (self.down[x].len(), self.up[x].len())).collect();
        // Degrees, then the sorted degrees of everything below and above.
        type Signature = ((usize, usize), Vec<(usize, usize)>, Vec<(usize, usize)>);
        let refined: Vec<Signature> = (0..n)
            .map(|x| {
                let mut below: Vec<_> = self.down[x].iter().map(|y| base[y]).collect();
                let mut above: Vec<_> = self.up[x].iter().map(|y| base[y]).collect();
                below.sort();
                above.sort();
                (base[x], below, above)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| refined[a].cmp(&refined[b]));
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || refined[order[i]] != refined[order[start]] {
                blocks.push((start, i));
                start = i;
            }
        }
        let mut best: Option<Vec<u64>> = None;
        let mut perm = order.clone();
        self.canon_rec(&blocks, 0, &mut perm, &mut best);
        CanonicalForm {
            n,
            rows: best.unwrap_or_default(),
        }
    }

    fn canon_rec(
        &self,
        blocks: &[(usize, usize)],
        bi: usize,
        perm: &mut Vec<usize>,
        best: &mut Option<Vec<u64>>,
    ) {
        if bi == blocks.len() {
            let code = self.code_for(perm);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        let (s, e) = blocks[bi];
        permute_range(perm, s, e, &mut |p| self.canon_rec(blocks, bi + 1, p, best));
    }

    /// Row `i` of the code is the set of new positions above new position `i`.
    fn code_for(&self, perm: &[usize]) -> Vec<u64> {
        let n = perm.len();
        let mut pos = vec![0usize; n];
        for (i, &p) in perm.iter().enumerate() {
            pos[p] = i;
        }
        perm.iter()
            .map(|&x| self.up[x].iter().fold(0u64, |acc, y| acc | 1u64 << pos[y]))
            .collect()
    }

    /// The same order with labels renamed by `f`.
    pub fn relabel(&self, f: impl Fn(usize, &str) -> String) -> FinitePoset {
        let labels = self.labels.iter().enumerate().map(|(i, l)| f(i, l)).collect();
        FinitePoset {
            labels,
            up: self.up.clone(),
            down: self.down.clone(),
        }
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            points: self.labels.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        }
    }
}

/// Heap-free in-place enumeration of all orderings of `perm[s..e]`.
fn permute_range(perm: &mut Vec<usize>, s: usize, e: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
    if e - s <= 1 {
        f(perm);
        return;
    }
    for i in s..e {
        perm.swap(s, i);
        permute_range(perm, s + 1, e, f);
        perm.swap(s, i);
    }
}

/// Sorts by size, then lexicographically on the increasing index lists.
pub fn sort_sets(sets: &mut [PointSet]) {
    sets.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().cmp(b.iter()))
    });
}

/// A canonical code for a poset up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub rows: Vec<u64>,
}

impl CanonicalForm {
    /// The poset this code describes, with labels `x0, x1, ...`.
    pub fn to_poset(&self) -> FinitePoset {
        let labels = (0..self.n).map(|i| format!("x{i}")).collect();
        let up = self.rows.iter().map(|&r| PointSet::from_bits(r)).collect();
        FinitePoset::from_up_sets(labels, up)
    }
}

/// Deduplicates posets by canonical form, keeping first occurrences.
pub fn dedup_posets(posets: Vec<FinitePoset>) -> Vec<FinitePoset> {
    let mut seen = HashSet::new();
    posets
        .into_iter()
        .filter(|p| seen.insert(p.canonical_form()))
        .collect()
}

/// JSON poset format: `{"points":[...],"covers":[[lower,upper],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub points: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl PosetJson {
    pub fn build(&self) -> Result<FinitePoset> {
        build_poset(&self.points, &self.covers)
    }
}
