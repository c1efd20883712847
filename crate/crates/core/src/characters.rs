//! Irreducible characters of the symmetric group.
//!
//! Labelling: `(s)` is the trivial representation and `(1^s)` the signum
//! representation. Values come from the Murnaghan–Nakayama rule, evaluated on
//! beta-sets: removing a rim hook of length `k` moves one bead of the beta-set
//! down by `k`, with sign `(-1)^(beads jumped)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::{
    class_data, cycle_types, factorial, partitions_of, CycleType, NumericalPartition,
};
use crate::error::{Error, Result};

type Memo = HashMap<(Vec<usize>, Vec<usize>), BigInt>;

fn beta_set(shape: &[usize]) -> Vec<usize> {
    let n = shape.len();
    shape.iter().enumerate().map(|(i, &p)| p + (n - 1 - i)).collect()
}

fn from_beta_set(beta: &mut [usize]) -> Vec<usize> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let n = beta.len();
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (n - 1 - i))
        .filter(|&p| p > 0)
        .collect()
}

fn mn(shape: &[usize], cycles: &[usize], memo: &mut Memo) -> BigInt {
    let Some((&k, rest)) = cycles.split_first() else {
        return if shape.is_empty() { BigInt::one() } else { BigInt::zero() };
    };
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let beta = beta_set(shape);
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > b - k && c < b).count();
        let mut next = beta.clone();
        next[idx] = b - k;
        let smaller = from_beta_set(&mut next);
        let v = mn(&smaller, rest, memo);
        if jumped % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// `χ^λ(μ)`.
pub fn irreducible_character(lambda: &NumericalPartition, mu: &CycleType) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    Ok(mn(lambda.parts(), mu.partition().parts(), &mut Memo::new()))
}

/// `f^λ = χ^λ(1^s)` by the hook length formula.
pub fn dimension(lambda: &NumericalPartition) -> BigUint {
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let hook = (row - j - 1) + (conj.parts()[j] - i - 1) + 1;
            hooks *= BigUint::from(hook);
        }
    }
    factorial(lambda.size()) / hooks
}

/// The full character table of `Sy_s`. Rows are indexed by partitions and
/// columns by cycle types, both in the order of [`partitions_of`].
#[derive(Debug, Clone)]
pub struct CharacterTable {
    s: usize,
    partitions: Vec<NumericalPartition>,
    classes: Vec<CycleType>,
    values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    pub fn new(s: usize) -> Self {
        let partitions = partitions_of(s);
        let classes = cycle_types(s);
        let mut memo = Memo::new();
        let values = partitions
            .iter()
            .map(|lambda| {
                classes
                    .iter()
                    .map(|mu| mn(lambda.parts(), mu.partition().parts(), &mut memo))
                    .collect()
            })
            .collect();
        CharacterTable { s, partitions, classes, values }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn partitions(&self) -> &[NumericalPartition] {
        &self.partitions
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn row(&self, lambda: &NumericalPartition) -> Option<&[BigInt]> {
        let i = self.partitions.iter().position(|p| p == lambda)?;
        Some(&self.values[i])
    }

    pub fn value(&self, lambda: &NumericalPartition, mu: &CycleType) -> Option<&BigInt> {
        let j = self.classes.iter().position(|c| c == mu)?;
        self.row(lambda).map(|r| &r[j])
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    /// `χ^λ` as a class function.
    pub fn character(&self, lambda: &NumericalPartition) -> Option<ClassFunction> {
        let row = self.row(lambda)?;
        let values = self
            .classes
            .iter()
            .zip(row)
            .map(|(mu, v)| (mu.clone(), BigRational::from_integer(v.clone())))
            .collect();
        Some(ClassFunction { s: self.s, values })
    }
}

/// A rational valued function on the conjugacy classes of `Sy_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    s: usize,
    values: BTreeMap<CycleType, BigRational>,
}

impl ClassFunction {
    /// Evaluates `f` on every cycle type of `s`.
    pub fn from_fn(s: usize, mut f: impl FnMut(&CycleType) -> BigRational) -> Self {
        let values = cycle_types(s).into_iter().map(|mu| {
            let v = f(&mu);
            (mu, v)
        });
        ClassFunction { s, values: values.collect() }
    }

    pub fn from_integer_fn(s: usize, mut f: impl FnMut(&CycleType) -> BigInt) -> Self {
        Self::from_fn(s, |mu| BigRational::from_integer(f(mu)))
    }

    /// Character of the regular representation.
    pub fn regular(s: usize) -> Self {
        let order = BigInt::from(factorial(s));
        Self::from_integer_fn(s, |mu| {
            if mu.partition().is_column() {
                order.clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Character of the permutation representation on `s` points.
    pub fn permutation_character(s: usize) -> Self {
        Self::from_integer_fn(s, |mu| {
            BigInt::from(mu.partition().parts().iter().filter(|&&p| p == 1).count())
        })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn value(&self, mu: &CycleType) -> Option<&BigRational> {
        self.values.get(mu)
    }

    pub fn values(&self) -> &BTreeMap<CycleType, BigRational> {
        &self.values
    }

    /// Pointwise product with the signum character.
    pub fn sign_twisted(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|(mu, v)| (mu.clone(), if mu.sign() < 0 { -v.clone() } else { v.clone() }))
            .collect();
        ClassFunction { s: self.s, values }
    }
}

/// `⟨f, χ^λ⟩ = (1/s!) Σ_μ |class(μ)| χ^λ(μ) f(μ)`.
pub fn multiplicity(f: &ClassFunction, lambda: &NumericalPartition) -> Result<BigRational> {
    if f.s != lambda.size() {
        return Err(Error::SizeMismatch(lambda.size(), f.s));
    }
    let mut memo = Memo::new();
    let mut acc = BigRational::zero();
    for (mu, v) in &f.values {
        let chi = mn(lambda.parts(), mu.partition().parts(), &mut memo);
        let size = BigInt::from(class_data(mu).class_size);
        acc += v * BigRational::from_integer(chi * size);
    }
    Ok(acc / BigRational::from_integer(BigInt::from(factorial(f.s))))
}

/// [`multiplicity`], required to be a nonnegative integer.
pub fn integral_multiplicity(f: &ClassFunction, lambda: &NumericalPartition) -> Result<BigInt> {
    let m = multiplicity(f, lambda)?;
    if !m.is_integer() || m.is_negative() {
        return Err(Error::Consistency(format!(
            "multiplicity of {lambda} is {m}, not a nonnegative integer"
        )));
    }
    Ok(m.to_integer())
}
