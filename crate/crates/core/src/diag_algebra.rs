//! The diagonal algebra on generators `u_I` (one per nonempty subset `I`, of
//! degree 2) with relations `u_I u_J = u_i u_{I∪J}` for `i ∈ I ∩ J`, and its
//! exponent-restricted submodules.
//!
//! A monomial is a set partition together with one exponent per block; the
//! exponent of a non-singleton block is at least 1. Multiplication joins the
//! partitions and adds exponents blockwise. The variants `A`, `A'` and `A''`
//! are cut out by lower bounds `m(|K|)` on block exponents.
//!
//! Graded traces are computed by scanning the set partitions fixed by a class
//! representative; each orbit of length `ℓ` on blocks contributes a factor
//! `(1 − q^{2ℓ})^{-1}`. This scan over all Bell(s) partitions is the main
//! cost of everything downstream.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinat::{
    class_data, cycle_types, enumerate_set_partitions, factorial, join, partitions_of, CycleType,
    NumericalPartition, Permutation, SetPartition, SetPartitions,
};
use crate::error::{Error, Result};
use crate::series::{geometric_product, LaurentWindow, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariantTag {
    /// The full algebra generated by all `u_I`.
    ATilde,
    /// Blocks of size `k` carry exponent at least `k − 1`.
    A,
    /// As `A`, with singletons raised to exponent at least 2.
    APrime,
    /// As `A'`, with pairs raised to exponent at least 2.
    ADoublePrime,
}

impl VariantTag {
    pub const ALL: [VariantTag; 4] =
        [VariantTag::ATilde, VariantTag::A, VariantTag::APrime, VariantTag::ADoublePrime];

    /// Minimal exponent of a block of size `k >= 1`.
    pub fn min_exponent(self, k: usize) -> usize {
        match self {
            VariantTag::ATilde => usize::from(k >= 2),
            VariantTag::A => k - 1,
            VariantTag::APrime => {
                if k == 1 {
                    2
                } else {
                    k - 1
                }
            }
            VariantTag::ADoublePrime => {
                if k <= 2 {
                    2
                } else {
                    k - 1
                }
            }
        }
    }

    /// `Σ_K m(|K|)` over the blocks of `p`.
    pub fn shift(self, p: &SetPartition) -> usize {
        p.block_sizes().into_iter().map(|k| self.min_exponent(k)).sum()
    }

    pub fn name(self) -> &'static str {
        match self {
            VariantTag::ATilde => "atilde",
            VariantTag::A => "a",
            VariantTag::APrime => "aprime",
            VariantTag::ADoublePrime => "adoubleprime",
        }
    }
}

impl FromStr for VariantTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VariantTag::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown variant {s:?}")))
    }
}

impl fmt::Display for VariantTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A normal-form monomial `Π_{K ∈ P} u_K^{r_K}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionMonomial {
    partition: SetPartition,
    /// Indexed by block number of `partition`.
    exponents: Vec<usize>,
}

impl PartitionMonomial {
    pub fn new(partition: SetPartition, exponents: Vec<usize>) -> Result<Self> {
        if exponents.len() != partition.num_blocks() {
            return Err(Error::InvalidPartition(format!(
                "{} exponents for {} blocks",
                exponents.len(),
                partition.num_blocks()
            )));
        }
        for (size, &e) in partition.block_sizes().iter().zip(&exponents) {
            if *size > 1 && e == 0 {
                return Err(Error::InvalidPartition(
                    "a block with more than one element needs a positive exponent".into(),
                ));
            }
        }
        Ok(PartitionMonomial { partition, exponents })
    }

    /// The unit monomial.
    pub fn one(s: usize) -> Self {
        PartitionMonomial { partition: SetPartition::finest(s), exponents: vec![0; s] }
    }

    /// `u_i`.
    pub fn u(s: usize, i: usize) -> Result<Self> {
        Self::u_block(s, &[i])
    }

    /// `u_I` for a nonempty block `I`.
    pub fn u_block(s: usize, block: &[usize]) -> Result<Self> {
        Self::block_power(s, block, 1)
    }

    /// `a_I = u_I^{|I| − 1}`.
    pub fn a_block(s: usize, block: &[usize]) -> Result<Self> {
        Self::block_power(s, block, block.len().saturating_sub(1))
    }

    /// `a_P = Π_{I ∈ P} a_I`.
    pub fn a_partition(p: &SetPartition) -> Self {
        let exponents = p.block_sizes().into_iter().map(|k| k - 1).collect();
        PartitionMonomial { partition: p.clone(), exponents }
    }

    fn block_power(s: usize, block: &[usize], e: usize) -> Result<Self> {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        let mut blocks: Vec<Vec<usize>> = vec![block.to_vec()];
        blocks.extend((0..s).filter(|i| !block.contains(i)).map(|i| vec![i]));
        let partition = SetPartition::from_blocks(s, &blocks)?;
        let b = partition.block_of(block[0]);
        let mut exponents = vec![0; partition.num_blocks()];
        exponents[b] = e;
        Self::new(partition, exponents)
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn ground_size(&self) -> usize {
        self.partition.ground_size()
    }

    /// Exponent of the block containing element `i`.
    pub fn exponent_at(&self, i: usize) -> usize {
        self.exponents[self.partition.block_of(i)]
    }

    /// Internal degree `2 Σ r_K`.
    pub fn degree(&self) -> usize {
        2 * self.exponents.iter().sum::<usize>()
    }

    /// The image under a permutation of the points.
    pub fn permuted(&self, sigma: &Permutation) -> Self {
        let partition = self.partition.permuted(sigma);
        let mut exponents = vec![0; partition.num_blocks()];
        for block in self.partition.blocks() {
            let e = self.exponents[self.partition.block_of(block[0])];
            exponents[partition.block_of(sigma.apply(block[0]))] = e;
        }
        PartitionMonomial { partition, exponents }
    }
}

impl fmt::Display for PartitionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (b, block) in self.partition.blocks().iter().enumerate() {
            let e = self.exponents[b];
            if e == 0 {
                continue;
            }
            if wrote {
                f.write_str("·")?;
            }
            wrote = true;
            f.write_str("u_")?;
            if block.len() > 1 {
                f.write_str("{")?;
            }
            let names: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
            f.write_str(&names.join(","))?;
            if block.len() > 1 {
                f.write_str("}")?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Product of two monomials.
pub fn multiply(m1: &PartitionMonomial, m2: &PartitionMonomial) -> Result<PartitionMonomial> {
    let partition = join(&m1.partition, &m2.partition)?;
    let mut exponents = vec![0; partition.num_blocks()];
    for m in [m1, m2] {
        for (b, block) in m.partition.blocks().iter().enumerate() {
            exponents[partition.block_of(block[0])] += m.exponents[b];
        }
    }
    Ok(PartitionMonomial { partition, exponents })
}

/// True if every block exponent meets the variant's lower bound.
pub fn variant_member(m: &PartitionMonomial, v: VariantTag) -> bool {
    m.partition
        .block_sizes()
        .iter()
        .zip(&m.exponents)
        .all(|(&k, &e)| e >= v.min_exponent(k))
}

/// All monomials of variant `v` on `s` points with internal degree `degree`.
/// Fails once more than `cap` monomials would be produced.
pub fn monomials_of_degree(
    v: VariantTag,
    s: usize,
    degree: usize,
    cap: usize,
) -> Result<Vec<PartitionMonomial>> {
    let mut out = Vec::new();
    if degree % 2 == 1 {
        return Ok(out);
    }
    let total = degree / 2;
    for p in enumerate_set_partitions(s)? {
        let mins: Vec<usize> = p.block_sizes().into_iter().map(|k| v.min_exponent(k)).collect();
        let base: usize = mins.iter().sum();
        if base > total {
            continue;
        }
        let mut extra = vec![0; mins.len()];
        compositions(total - base, &mut extra, 0, &mut |ex| {
            let exponents = mins.iter().zip(ex).map(|(a, b)| a + b).collect();
            out.push(PartitionMonomial { partition: p.clone(), exponents });
            out.len() <= cap
        });
        if out.len() > cap {
            return Err(Error::ResourceCap { what: "monomial basis", needed: out.len(), cap });
        }
    }
    Ok(out)
}

/// Calls `f` on every way to write `n` as an ordered sum filling `slots[i..]`.
/// Stops early when `f` returns false.
fn compositions(n: usize, slots: &mut [usize], i: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if i + 1 == slots.len() {
        slots[i] = n;
        return f(slots);
    }
    if slots.is_empty() {
        return n != 0 || f(slots);
    }
    for k in 0..=n {
        slots[i] = k;
        if !compositions(n - k, slots, i + 1, f) {
            return false;
        }
    }
    true
}

/// Formal rational combination of monomials, bucketed by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    parts: BTreeMap<usize, BTreeMap<PartitionMonomial, BigRational>>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: PartitionMonomial) -> Self {
        Self::term(m, BigRational::one())
    }

    pub fn term(m: PartitionMonomial, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    fn add_term(&mut self, m: PartitionMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let degree = m.degree();
        let bucket = self.parts.entry(degree).or_default();
        let slot = bucket.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            bucket.remove(&m);
            if bucket.is_empty() {
                self.parts.remove(&degree);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PartitionMonomial, &BigRational)> {
        self.parts.values().flat_map(|b| b.iter())
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let mut out = Self::zero();
        if let Some(b) = self.parts.get(&degree) {
            out.parts.insert(degree, b.clone());
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(multiply(m1, m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn in_variant(&self, v: VariantTag) -> bool {
        self.terms().all(|(m, _)| variant_member(m, v))
    }
}

/// Hilbert series `Σ_P q^{2 shift(P)} (1 − q²)^{-|P|}`.
pub fn variant_hilbert_series(v: VariantTag, s: usize, window: Window) -> Result<LaurentWindow> {
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for p in SetPartitions::new(checked_s(s)?) {
        *counts.entry((v.shift(&p), p.num_blocks())).or_default() += 1;
    }
    expand(counts.into_iter().map(|((shift, b), c)| ((shift, vec![1; b]), c)), window)
}

fn checked_s(s: usize) -> Result<usize> {
    crate::combinat::check_ground_size(s, crate::combinat::DEFAULT_SET_PARTITION_CAP)?;
    Ok(s)
}

fn expand(
    groups: impl Iterator<Item = ((usize, Vec<usize>), u64)>,
    window: Window,
) -> Result<LaurentWindow> {
    let mut total = LaurentWindow::zero_on(window);
    for ((shift, orbits), count) in groups {
        let g = geometric_product(2 * shift as i64, &orbits, window)?;
        total = total.add(&g.scaled(&BigInt::from(count)));
    }
    Ok(total)
}

/// Orbit lengths of a permutation of `0..n` given by its image list, sorted.
fn orbit_lengths(images: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Fixed-partition census of a permutation: `(shift, block orbit lengths) → count`.
fn fixed_census(sigma: &Permutation, v: VariantTag) -> Result<BTreeMap<(usize, Vec<usize>), u64>> {
    let s = checked_s(sigma.degree())?;
    let mut counts = BTreeMap::new();
    for p in SetPartitions::new(s) {
        if let Some(images) = p.block_permutation(sigma) {
            *counts.entry((v.shift(&p), orbit_lengths(&images))).or_default() += 1;
        }
    }
    Ok(counts)
}

/// Graded trace of a permutation of cycle type `mu` on the variant.
pub fn graded_trace(mu: &CycleType, v: VariantTag, s: usize, window: Window) -> Result<LaurentWindow> {
    if mu.size() != s {
        return Err(Error::SizeMismatch(s, mu.size()));
    }
    let census = fixed_census(&mu.representative(), v)?;
    expand(census.into_iter(), window)
}

/// Graded traces for every class of `S_s`, in the order of [`cycle_types`].
pub fn all_graded_traces(v: VariantTag, s: usize, window: Window) -> Result<Vec<(CycleType, LaurentWindow)>> {
    checked_s(s)?;
    cycle_types(s)
        .into_par_iter()
        .map(|mu| graded_trace(&mu, v, s, window).map(|t| (mu, t)))
        .collect()
}

/// Hilbert series of the invariants, by averaging graded traces over classes.
pub fn invariant_series(v: VariantTag, s: usize, window: Window) -> Result<LaurentWindow> {
    let traces = all_graded_traces(v, s, window)?;
    let mut total = LaurentWindow::zero_on(window);
    for (mu, t) in &traces {
        let size = BigInt::from(class_data(mu).class_size);
        total = total.add(&t.scaled(&size));
    }
    let order = BigInt::from(factorial(s));
    let mut coeffs = Vec::new();
    for d in window.degrees() {
        let c = total.coeff(d).expect("window is known");
        if !(&c % &order).is_zero() {
            return Err(Error::Consistency(format!(
                "class average is not integral in degree {d}: {c} / {order}"
            )));
        }
        coeffs.push(c / &order);
    }
    LaurentWindow::from_table(window.lo, coeffs)
}

/// Hilbert series of the invariants, summed over partition types
/// `1^{l_1} 2^{l_2} …` of `s`: `Π_k q^{2 m(k) l_k} Π_{j ≤ l_k} (1 − q^{2j})^{-1}`.
pub fn invariant_series_by_type(v: VariantTag, s: usize, window: Window) -> Result<LaurentWindow> {
    checked_s(s)?;
    let mut total = LaurentWindow::zero_on(window);
    for lambda in partitions_of(s) {
        let mut shift = 0;
        let mut orbits = Vec::new();
        for (k, &l) in lambda.multiplicities().iter().enumerate().skip(1) {
            shift += v.min_exponent(k) * l;
            orbits.extend(1..=l);
        }
        total = total.add(&geometric_product(2 * shift as i64, &orbits, window)?);
    }
    Ok(total)
}

/// Number of set partitions of `0..s` of the given block-size type.
pub fn partitions_of_type(lambda: &NumericalPartition) -> BigUint {
    let s = lambda.size();
    let mut denom = BigUint::one();
    for (k, &l) in lambda.multiplicities().iter().enumerate().skip(1) {
        denom *= factorial(k).pow(l as u32) * factorial(l);
    }
    factorial(s) / denom
}
