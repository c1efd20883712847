//! Betti numbers of the symmetric power `Sym^s C` of a genus-`g` curve from
//! its presentation as a quotient of `∧V[y]`, with `V` in degree 1 and `y` in
//! degree 2.
//!
//! With a symplectic basis `e_1..e_g, f_1..f_g` and `σ_k = e_k ∧ f_k`, the
//! kernel is generated by
//!
//! `e_I · f_J · Π_{k ∈ K} (σ_k − y) · y^r`
//!
//! over pairwise disjoint `I, J, K ⊆ {1..g}` with `|I| + |J| + 2|K| + r = s + 1`.
//! Every generator has degree `> s`. Ranks are exact; the ideal is homogeneous
//! for the torus weights, so each degree splits into weight blocks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;

/// A basis monomial `ξ · y^j`, with `ξ` a square-free product of the basis
/// vectors in the bitmask (bit `i < g` is `e_{i+1}`, bit `g+i` is `f_{i+1}`).
pub type ExtMonomial = (u32, usize);

/// Sparse element of `∧V[y]` with integer coefficients.
pub type ExtElement = BTreeMap<ExtMonomial, i64>;

/// The degree-`n` part of `∧V[y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtYAlgebraPiece {
    pub g: usize,
    pub n: usize,
    pub basis: Vec<ExtMonomial>,
}

impl ExtYAlgebraPiece {
    pub fn new(g: usize, n: usize) -> Self {
        let mut basis = Vec::new();
        for j in 0..=n / 2 {
            let k = n - 2 * j;
            if k > 2 * g {
                continue;
            }
            for mask in 0u32..(1 << (2 * g)) {
                if mask.count_ones() as usize == k {
                    basis.push((mask, j));
                }
            }
        }
        ExtYAlgebraPiece { g, n, basis }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Product of two exterior monomials: the sign and the union, or `None` if
/// they share a factor.
fn wedge(a: u32, b: u32) -> Option<(i64, u32)> {
    if a & b != 0 {
        return None;
    }
    // sign of moving each factor of b past the larger factors of a
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (a >> bit).count_ones();
        rest &= rest - 1;
    }
    Some((if swaps % 2 == 0 { 1 } else { -1 }, a | b))
}

pub fn multiply(x: &ExtElement, y: &ExtElement) -> ExtElement {
    let mut out = ExtElement::new();
    for (&(ma, ja), &ca) in x {
        for (&(mb, jb), &cb) in y {
            if let Some((sign, m)) = wedge(ma, mb) {
                *out.entry((m, ja + jb)).or_insert(0) += sign * ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn monomial(mask: u32, j: usize) -> ExtElement {
    ExtElement::from([((mask, j), 1)])
}

fn degree_of(x: &ExtElement) -> Option<usize> {
    x.keys().next().map(|&(m, j)| m.count_ones() as usize + 2 * j)
}

fn check_range(g: usize, s: usize) -> Result<()> {
    if !(1..=4).contains(&g) {
        return Err(Error::SizeOutOfRange { size: g, min: 1, max: 4 });
    }
    if !(1..=6).contains(&s) {
        return Err(Error::SizeOutOfRange { size: s, min: 1, max: 6 });
    }
    Ok(())
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Generators of the kernel of `∧V[y] → H(Sym^s C)`.
pub fn kernel_generators(g: usize, s: usize) -> Vec<ExtElement> {
    let all: Vec<usize> = (0..g).collect();
    let mut gens = Vec::new();
    for a in 0..=g {
        for b in 0..=g - a {
            for c in 0..=(g - a - b) {
                let Some(r) = (s + 1).checked_sub(a + b + 2 * c) else {
                    continue;
                };
                for i_set in subsets(&all, a) {
                    let rest: Vec<usize> = all.iter().copied().filter(|k| !i_set.contains(k)).collect();
                    for j_set in subsets(&rest, b) {
                        let rest2: Vec<usize> = rest.iter().copied().filter(|k| !j_set.contains(k)).collect();
                        for k_set in subsets(&rest2, c) {
                            let mut p = monomial(0, r);
                            for &i in &i_set {
                                p = multiply(&p, &monomial(1 << i, 0));
                            }
                            for &j in &j_set {
                                p = multiply(&p, &monomial(1 << (g + j), 0));
                            }
                            for &k in &k_set {
                                let mut factor = monomial((1 << k) | (1 << (g + k)), 0);
                                factor.insert((0, 1), -1);
                                p = multiply(&p, &factor);
                            }
                            if !p.is_empty() {
                                gens.push(p);
                            }
                        }
                    }
                }
            }
        }
    }
    gens
}

/// Quadrics `v ∧ v' − (v.v') y` over all pairs of basis vectors.
pub fn quadric_generators(g: usize) -> Vec<ExtElement> {
    let mut gens = Vec::new();
    for a in 0..2 * g {
        for b in a + 1..2 * g {
            let mut p = monomial((1 << a) | (1 << b), 0);
            if b == a + g {
                p.insert((0, 1), -1);
            }
            gens.push(p);
        }
    }
    gens
}

fn torus_weight(g: usize, mask: u32) -> Vec<i32> {
    (0..g)
        .map(|i| ((mask >> i) & 1) as i32 - ((mask >> (g + i)) & 1) as i32)
        .collect()
}

/// `dim (∧V[y])_n` minus the rank of the degree-`n` part of the ideal.
fn quotient_dimension(g: usize, n: usize, gens: &[ExtElement]) -> usize {
    let piece = ExtYAlgebraPiece::new(g, n);
    let mut blocks: BTreeMap<Vec<i32>, Vec<ExtElement>> = BTreeMap::new();
    for gen in gens {
        let Some(d) = degree_of(gen) else { continue };
        if d > n {
            continue;
        }
        for &m in &ExtYAlgebraPiece::new(g, n - d).basis {
            let row = multiply(gen, &monomial(m.0, m.1));
            if let Some((&(mask, _), _)) = row.iter().next() {
                blocks.entry(torus_weight(g, mask)).or_default().push(row);
            }
        }
    }
    let mut rank = 0;
    for rows in blocks.values() {
        let mut cols: Vec<ExtMonomial> = rows.iter().flat_map(|r| r.keys().copied()).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut dense: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|c| BigInt::from(r.get(c).copied().unwrap_or(0))).collect())
            .collect();
        dense.sort();
        dense.dedup();
        dense.retain(|r| r.iter().any(|x| !x.is_zero()));
        rank += linalg::rank(dense);
    }
    piece.len() - rank
}

/// Betti numbers `b_0..b_{2s}` of `Sym^s C` for `1 <= g <= 4`, `1 <= s <= 6`.
pub fn sym_product_betti(g: usize, s: usize) -> Result<Vec<usize>> {
    check_range(g, s)?;
    let gens = kernel_generators(g, s);
    Ok((0..=2 * s)
        .map(|n| {
            if n <= s {
                ExtYAlgebraPiece::new(g, n).len()
            } else {
                quotient_dimension(g, n, &gens)
            }
        })
        .collect())
}

/// Dimensions when the kernel is taken to be the degree `> s` part of the
/// ideal generated by the quadrics alone. This does not reproduce the Betti
/// numbers (already at `g = 1, s = 2`); kept for comparison.
pub fn quadric_ideal_dimensions(g: usize, s: usize) -> Result<Vec<usize>> {
    check_range(g, s)?;
    let gens = quadric_generators(g);
    Ok((0..=2 * s)
        .map(|n| {
            if n <= s {
                ExtYAlgebraPiece::new(g, n).len()
            } else {
                quotient_dimension(g, n, &gens)
            }
        })
        .collect())
}
