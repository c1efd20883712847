//! Dimension data for the symplectic group `Sp(2g)` acting on `V = Q^{2g}`:
//! irreducible dimensions from the Weyl formula, the dimension of the
//! cokernel of the form insertions `V^{⊗(s−2)} → V^{⊗s}`, and the
//! multiplicity-one decomposition of that cokernel.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::characters::dimension;
use crate::combinat::{binomial, factorial, partitions_of, NumericalPartition};
use crate::error::{Error, Result};
use crate::linalg;
use crate::series::{serialize_bigint, serialize_biguint};

/// Dimension of the irreducible `Sp(2g)`-module with highest weight `λ`,
/// zero if `λ` has more than `g` parts.
///
/// Weyl's formula with `ρ = (g, g−1, …, 1)`: the product over positive roots
/// `e_i − e_j`, `e_i + e_j` (`i < j`) and `2e_i` of `⟨λ+ρ, α⟩ / ⟨ρ, α⟩`.
pub fn sp_irrep_dimension(g: usize, lambda: &NumericalPartition) -> BigUint {
    if lambda.len() > g {
        return BigUint::zero();
    }
    let mut l: Vec<i64> = lambda.parts().iter().map(|&p| p as i64).collect();
    l.resize(g, 0);
    let rho: Vec<i64> = (0..g).map(|i| (g - i) as i64).collect();
    let shifted: Vec<i64> = l.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut value = BigRational::one();
    let ratio = |num: i64, den: i64| BigRational::new(num.into(), den.into());
    for i in 0..g {
        value *= ratio(shifted[i], rho[i]);
        for j in i + 1..g {
            value *= ratio(shifted[i] - shifted[j], rho[i] - rho[j]);
            value *= ratio(shifted[i] + shifted[j], rho[i] + rho[j]);
        }
    }
    debug_assert!(value.is_integer());
    value.to_integer().to_biguint().expect("dimension is nonnegative")
}

/// `dim V^{⊗s}` minus the span of all form insertions, for `g >= s`.
///
/// The insertions are not independent once `s >= 4`, so the count is the
/// inclusion–exclusion over matchings `Σ_k (−1)^k s!/(2^k k! (s−2k)!) (2g)^{s−2k}`.
pub fn weyl_space_dimension(g: usize, s: usize) -> Result<BigInt> {
    if g < s {
        return Err(Error::BelowStableRange { g, s });
    }
    let n = BigInt::from(2 * g);
    let mut total = BigInt::zero();
    for k in 0..=s / 2 {
        let matchings = factorial(s) / (BigUint::from(2u32).pow(k as u32) * factorial(k) * factorial(s - 2 * k));
        let term = BigInt::from(matchings) * n.pow((s - 2 * k) as u32);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `(2g)^s − C(s,2)(2g)^{s−2}`, the count obtained if the insertions were
/// independent. Agrees with [`weyl_space_dimension`] for `s <= 3`.
pub fn independent_insertion_count(g: usize, s: usize) -> BigInt {
    let n = BigInt::from(2 * g);
    let top = n.pow(s as u32);
    if s < 2 {
        return top;
    }
    top - BigInt::from(binomial(s, 2)) * n.pow((s - 2) as u32)
}

/// Cokernel dimension of the insertion map computed by exact rank.
///
/// The map preserves torus weights, so the matrix is split into weight
/// blocks before elimination. Intended for small `g` and `s`.
pub fn insertion_cokernel_by_rank(g: usize, s: usize) -> usize {
    let d = 2 * g;
    let total = d.pow(s as u32);
    if s < 2 {
        return total;
    }
    let weight = |idx: &[usize]| -> Vec<i32> {
        let mut w = vec![0i32; g];
        for &b in idx {
            if b < g {
                w[b] += 1;
            } else {
                w[b - g] -= 1;
            }
        }
        w
    };
    let encode = |idx: &[usize]| idx.iter().fold(0usize, |acc, &b| acc * d + b);
    let mut blocks: BTreeMap<Vec<i32>, Vec<BTreeMap<usize, i64>>> = BTreeMap::new();
    let mut rest = vec![0usize; s - 2];
    loop {
        for i in 0..s {
            for j in i + 1..s {
                let mut row = BTreeMap::new();
                for k in 0..g {
                    for (a, b, c) in [(k, g + k, 1i64), (g + k, k, -1)] {
                        let mut full = Vec::with_capacity(s);
                        let mut it = rest.iter();
                        for pos in 0..s {
                            full.push(if pos == i {
                                a
                            } else if pos == j {
                                b
                            } else {
                                *it.next().unwrap()
                            });
                        }
                        *row.entry(encode(&full)).or_insert(0) += c;
                    }
                }
                blocks.entry(weight(&rest)).or_default().push(row);
            }
        }
        // next tuple in 0..d of length s−2
        let mut pos = rest.len();
        loop {
            if pos == 0 {
                let rank: usize = blocks.values().map(|rows| block_rank(rows)).sum();
                return total - rank;
            }
            pos -= 1;
            rest[pos] += 1;
            if rest[pos] < d {
                break;
            }
            rest[pos] = 0;
        }
    }
}

fn block_rank(rows: &[BTreeMap<usize, i64>]) -> usize {
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
    cols.sort_unstable();
    cols.dedup();
    let dense: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).copied().unwrap_or(0)).collect())
        .collect();
    linalg::rank_i64(&dense)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurWeylRow {
    pub lambda: String,
    #[serde(serialize_with = "serialize_biguint")]
    pub f_lambda: BigUint,
    #[serde(serialize_with = "serialize_biguint")]
    pub sp_dim: BigUint,
    #[serde(serialize_with = "serialize_biguint")]
    pub product: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurWeylReport {
    pub g: usize,
    pub s: usize,
    pub table: Vec<SchurWeylRow>,
    #[serde(serialize_with = "serialize_biguint")]
    pub sum: BigUint,
    #[serde(serialize_with = "serialize_bigint")]
    pub weyl_space_dimension: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub independent_insertion_count: BigInt,
    pub pass: bool,
}

/// Checks `Σ_{λ ⊢ s} f^λ · dim S_⟨λ⟩ = dim V^⟨s⟩` and returns the table.
pub fn schur_weyl_check(g: usize, s: usize) -> Result<SchurWeylReport> {
    if s == 0 {
        return Err(Error::SizeOutOfRange { size: 0, min: 1, max: usize::MAX });
    }
    let weyl = weyl_space_dimension(g, s)?;
    let mut table = Vec::new();
    let mut sum = BigUint::zero();
    for lambda in partitions_of(s).into_iter().filter(|l| l.len() <= g) {
        let f = dimension(&lambda);
        let sp = sp_irrep_dimension(g, &lambda);
        let product = &f * &sp;
        sum += &product;
        table.push(SchurWeylRow {
            lambda: lambda.to_string(),
            f_lambda: f,
            sp_dim: sp,
            product,
        });
    }
    let pass = BigInt::from(sum.clone()) == weyl;
    Ok(SchurWeylReport {
        g,
        s,
        table,
        sum,
        weyl_space_dimension: weyl,
        independent_insertion_count: independent_insertion_count(g, s),
        pass,
    })
}

/// Summands of `∧^s V`: the primitive pieces `S_⟨1^{s−2k}⟩`, each once.
pub fn exterior_power_decomposition(s: usize) -> Vec<NumericalPartition> {
    (0..=s / 2).map(|k| NumericalPartition::column(s - 2 * k)).collect()
}

/// `dim S_⟨λ⟩` as a machine integer when it fits.
pub fn sp_dim_u64(g: usize, lambda: &NumericalPartition) -> Option<u64> {
    sp_irrep_dimension(g, lambda).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NumericalPartition {
        s.parse().unwrap()
    }

    #[test]
    fn dimension_examples() {
        for g in 1..=6 {
            assert_eq!(sp_irrep_dimension(g, &p("1")), BigUint::from(2 * g));
        }
        assert_eq!(sp_irrep_dimension(2, &p("2,1")), BigUint::from(16u32));
        assert_eq!(sp_irrep_dimension(1, &p("1,1")), BigUint::zero());
        assert_eq!(sp_irrep_dimension(3, &NumericalPartition::empty()), BigUint::one());
    }

    #[test]
    fn rows_and_columns() {
        for g in 1..=6 {
            for k in 1..=6 {
                assert_eq!(sp_irrep_dimension(g, &NumericalPartition::row(k)), binomial(2 * g + k - 1, k));
                if k <= g {
                    let expected = BigInt::from(binomial(2 * g, k))
                        - if k >= 2 { BigInt::from(binomial(2 * g, k - 2)) } else { BigInt::zero() };
                    assert_eq!(BigInt::from(sp_irrep_dimension(g, &NumericalPartition::column(k))), expected);
                }
            }
        }
    }

    #[test]
    fn monotone_in_genus() {
        for s in 1..=5 {
            for lambda in partitions_of(s) {
                for g in lambda.len()..=7 {
                    assert!(sp_irrep_dimension(g + 1, &lambda) > sp_irrep_dimension(g, &lambda));
                }
            }
        }
    }

    #[test]
    fn weyl_space_examples() {
        assert_eq!(weyl_space_dimension(2, 2), Ok(BigInt::from(15)));
        for g in 1..=5 {
            assert_eq!(weyl_space_dimension(g, 1), Ok(BigInt::from(2 * g)));
        }
        assert_eq!(weyl_space_dimension(3, 3), Ok(BigInt::from(198)));
        assert_eq!(independent_insertion_count(2, 3), BigInt::from(52));
        assert_eq!(independent_insertion_count(1, 2), BigInt::from(3));
        assert_eq!(weyl_space_dimension(2, 3), Err(Error::BelowStableRange { g: 2, s: 3 }));
    }

    #[test]
    fn weyl_space_matches_exact_rank() {
        for (g, s) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (2, 4)] {
            let by_rank = insertion_cokernel_by_rank(g, s);
            if g >= s {
                assert_eq!(BigInt::from(by_rank), weyl_space_dimension(g, s).unwrap(), "g={g} s={s}");
            }
            if s <= 3 {
                assert_eq!(BigInt::from(by_rank), independent_insertion_count(g, s));
            }
        }
        // below the range g >= s neither closed form is the cokernel
        assert_eq!(insertion_cokernel_by_rank(2, 4), 168);
        let hermite_at_4 = 256 - 6 * 16 + 3;
        assert_ne!(168, hermite_at_4);
        assert_ne!(BigInt::from(168), independent_insertion_count(2, 4));
    }

    #[test]
    fn schur_weyl_small() {
        let r = schur_weyl_check(2, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.sum, BigUint::from(15u32));
        assert_eq!(r.table.len(), 2);
        assert!(schur_weyl_check(3, 3).unwrap().pass);
        assert!(schur_weyl_check(1, 1).unwrap().pass);
        for s in 1..=5 {
            for g in s..=s + 2 {
                assert!(schur_weyl_check(g, s).unwrap().pass, "g={g} s={s}");
            }
        }
    }

    #[test]
    fn exterior_powers_decompose() {
        for g in 1..=5 {
            for s in 0..=g {
                let total: BigUint = exterior_power_decomposition(s)
                    .iter()
                    .map(|l| sp_irrep_dimension(g, l))
                    .sum();
                assert_eq!(total, binomial(2 * g, s), "g={g} s={s}");
            }
        }
    }
}
