//! Numerical partitions, set partitions, cycle types and the join operation on
//! the lattice of set partitions.
//!
//! Set partitions are stored as restricted growth strings: element `i` carries
//! the label of its block, and blocks are labelled in order of their least
//! element. This is the canonical form used throughout the crate, so two
//! equal partitions always compare and hash equal. Elements are `0`-based in
//! the API and printed `1`-based.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest ground set accepted by [`enumerate_set_partitions`]. Bell(12) is
/// 4,213,597.
pub const DEFAULT_SET_PARTITION_CAP: usize = 12;

/// A nonincreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NumericalPartition {
    parts: Vec<usize>,
}

impl NumericalPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not nonincreasing"
            )));
        }
        Ok(NumericalPartition { parts })
    }

    /// The partition of zero.
    pub fn empty() -> Self {
        NumericalPartition { parts: Vec::new() }
    }

    /// `(s)`.
    pub fn row(s: usize) -> Self {
        if s == 0 {
            Self::empty()
        } else {
            NumericalPartition { parts: vec![s] }
        }
    }

    /// `(1^s)`.
    pub fn column(s: usize) -> Self {
        NumericalPartition { parts: vec![1; s] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (0..first)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        NumericalPartition { parts }
    }

    /// `m[k]` is the number of parts equal to `k`; index 0 is unused.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.size() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    pub fn is_row(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_column(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

impl FromStr for NumericalPartition {
    type Err = Error;

    /// Parses a comma separated nonincreasing list such as `3,1,1`. The empty
    /// string and `0` denote the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() || trimmed == "0" {
            return Ok(Self::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for NumericalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, in reverse lexicographic order: `(n)` first and
/// `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<NumericalPartition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<NumericalPartition>) {
        if n == 0 {
            out.push(NumericalPartition { parts: prefix.clone() });
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Conjugacy class label of the symmetric group: the cycle lengths of a
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub NumericalPartition);

impl CycleType {
    pub fn identity(s: usize) -> Self {
        CycleType(NumericalPartition::column(s))
    }

    pub fn partition(&self) -> &NumericalPartition {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn sign(&self) -> i8 {
        if (self.size() - self.0.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The permutation whose cycles are consecutive runs of `0..s` with the
    /// given lengths.
    pub fn representative(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.size());
        let mut start = 0;
        for &len in self.0.parts() {
            for i in 0..len {
                images.push(start + (i + 1) % len);
            }
            start += len;
        }
        Permutation { images }
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(CycleType(s.parse()?))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Cycle types of `Sy_s`, in the order of [`partitions_of`].
pub fn cycle_types(s: usize) -> Vec<CycleType> {
    partitions_of(s).into_iter().map(CycleType).collect()
}

/// Centralizer order, class size and sign of a conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    pub centralizer_order: BigUint,
    pub class_size: BigUint,
    pub sign: i8,
}

pub fn class_data(mu: &CycleType) -> ClassData {
    let m = mu.0.multiplicities();
    let mut z = BigUint::one();
    for (k, &mk) in m.iter().enumerate().skip(1) {
        z *= BigUint::from(k).pow(mk as u32) * factorial(mk);
    }
    let class_size = factorial(mu.size()) / &z;
    ClassData { centralizer_order: z, class_size, sign: mu.sign() }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// A permutation of `0..n`, stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Unsupported(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The transposition of `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(NumericalPartition { parts: lens })
    }

    pub fn sign(&self) -> i8 {
        self.cycle_type().sign()
    }
}

/// Every permutation of `0..n`, in lexicographic order of image lists.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { images: current.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// A partition of the ground set `{0, .., s-1}` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u8>,
    num_blocks: usize,
}

impl SetPartition {
    /// Builds a partition from 0-based blocks, in any order.
    pub fn from_blocks<B: AsRef<[usize]>>(s: usize, blocks: &[B]) -> Result<Self> {
        let mut raw = vec![usize::MAX; s];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in block {
                if i >= s || raw[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {i} is out of range or repeated"
                    )));
                }
                raw[i] = b;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::InvalidPartition("blocks do not cover the ground set".into()));
        }
        Ok(Self::from_raw_labels(&raw))
    }

    /// Canonicalizes an arbitrary block labelling of `0..s`.
    fn from_raw_labels(raw: &[usize]) -> Self {
        let mut relabel: Vec<(usize, u8)> = Vec::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &r in raw {
            let l = match relabel.iter().find(|(k, _)| *k == r) {
                Some(&(_, l)) => l,
                None => {
                    let l = relabel.len() as u8;
                    relabel.push((r, l));
                    l
                }
            };
            labels.push(l);
        }
        SetPartition { labels, num_blocks: relabel.len() }
    }

    pub fn finest(s: usize) -> Self {
        SetPartition { labels: (0..s as u8).collect(), num_blocks: s }
    }

    pub fn coarsest(s: usize) -> Self {
        SetPartition { labels: vec![0; s], num_blocks: usize::from(s > 0) }
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    /// Block index of element `i`; blocks are numbered by least element.
    pub fn block_of(&self, i: usize) -> usize {
        self.labels[i] as usize
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(i);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// The image partition `{σ(I) : I ∈ P}`.
    pub fn permuted(&self, sigma: &Permutation) -> SetPartition {
        let mut raw = vec![0usize; self.labels.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            raw[sigma.apply(i)] = l as usize;
        }
        Self::from_raw_labels(&raw)
    }

    /// For a permutation fixing `self`, the induced permutation of block
    /// indices. Returns `None` if `sigma` does not fix the partition.
    pub fn block_permutation(&self, sigma: &Permutation) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.num_blocks];
        for (i, &l) in self.labels.iter().enumerate() {
            let target = self.labels[sigma.apply(i)] as usize;
            let slot = &mut map[l as usize];
            if *slot == usize::MAX {
                *slot = target;
            } else if *slot != target {
                return None;
            }
        }
        Some(map)
    }

    /// True if every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        let mut image = vec![u8::MAX; self.num_blocks];
        self.labels.iter().zip(&other.labels).all(|(&a, &b)| {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
                true
            } else {
                *slot == b
            }
        })
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (k, i) in block.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the set partitions of `0..s` in restricted growth string
/// order (coarsest first, finest last).
pub struct SetPartitions {
    labels: Vec<u8>,
    prefix_max: Vec<u8>,
    done: bool,
}

impl SetPartitions {
    pub fn new(s: usize) -> Self {
        SetPartitions { labels: vec![0; s], prefix_max: vec![0; s], done: s == 0 }
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let s = self.labels.len();
        let num_blocks = self.prefix_max[s - 1] as usize + 1;
        let current = SetPartition { labels: self.labels.clone(), num_blocks };
        // advance
        match (1..s).rev().find(|&i| self.labels[i] <= self.prefix_max[i - 1]) {
            None => self.done = true,
            Some(i) => {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..s {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
            }
        }
        Some(current)
    }
}

/// All set partitions of `{0..s-1}`, capped at [`DEFAULT_SET_PARTITION_CAP`].
pub fn enumerate_set_partitions(s: usize) -> Result<Vec<SetPartition>> {
    enumerate_set_partitions_with_cap(s, DEFAULT_SET_PARTITION_CAP)
}

pub fn enumerate_set_partitions_with_cap(s: usize, cap: usize) -> Result<Vec<SetPartition>> {
    check_ground_size(s, cap)?;
    Ok(SetPartitions::new(s).collect())
}

pub(crate) fn check_ground_size(s: usize, cap: usize) -> Result<()> {
    if s == 0 || s > cap || s > u8::MAX as usize {
        return Err(Error::SizeOutOfRange { size: s, min: 1, max: cap.min(u8::MAX as usize) });
    }
    Ok(())
}

/// The finest partition coarsening both arguments.
pub fn join(p: &SetPartition, q: &SetPartition) -> Result<SetPartition> {
    let s = p.ground_size();
    if s != q.ground_size() {
        return Err(Error::GroundSizeMismatch(s, q.ground_size()));
    }
    // union-find over elements, seeded by the blocks of both partitions
    let mut parent: Vec<usize> = (0..s).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for part in [p, q] {
        let mut first = vec![usize::MAX; part.num_blocks()];
        for i in 0..s {
            let b = part.block_of(i);
            if first[b] == usize::MAX {
                first[b] = i;
            } else {
                let (a, c) = (find(&mut parent, first[b]), find(&mut parent, i));
                parent[a.max(c)] = a.min(c);
            }
        }
    }
    let raw: Vec<usize> = (0..s).map(|i| find(&mut parent, i)).collect();
    Ok(SetPartition::from_raw_labels(&raw))
}

/// Block-size counts and codimension of the diagonal of a set partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    /// `counts[i]` is the number of blocks of size `i`; index 0 is always 0.
    pub counts: Vec<usize>,
    pub codim: usize,
}

impl PartitionStats {
    pub fn l(&self, i: usize) -> usize {
        self.counts.get(i).copied().unwrap_or(0)
    }
}

pub fn partition_stats(p: &SetPartition) -> PartitionStats {
    let s = p.ground_size();
    let mut counts = vec![0; s + 1];
    for size in p.block_sizes() {
        counts[size] += 1;
    }
    PartitionStats { counts, codim: s - p.num_blocks() }
}

/// Bell numbers by the triangle recursion.
pub fn bell_number(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}
