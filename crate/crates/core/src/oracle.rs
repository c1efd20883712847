//! Brute-force construction of graded pieces of `B_s` and of the diagonal
//! algebras as explicit vector spaces with explicit symmetric-group actions,
//! used to cross-check the character and Molien computations.
//!
//! A piece's basis is the list of normal-form monomials of one degree. A
//! permutation acts by relabeling points; on `B_s` it also picks up its sign.
//! Isotypic multiplicities come from exact ranks of the projectors
//! `Σ_σ χ^λ(σ) ρ(σ)`. The basis splits into orbits of monomials and the
//! projector preserves each orbit's span, so ranks are taken orbit by orbit;
//! orbits with the same stabilizer give the same rank and share the work.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bmodule::BCharacters;
use crate::characters::{dimension, CharacterTable};
use crate::combinat::{all_permutations, partitions_of, CycleType, NumericalPartition, Permutation};
use crate::diag_algebra::{all_graded_traces, monomials_of_degree, PartitionMonomial, VariantTag};
use crate::error::{Error, Result};
use crate::linalg;
use crate::series::Window;

pub const BASIS_CAP: usize = 200_000;
pub const MAX_ORACLE_S: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PieceKind {
    /// `B_s`: the `A''` monomials of internal degree `n + s`, sign-twisted.
    B,
    /// A diagonal algebra variant in internal degree `n`, untwisted.
    Algebra(VariantTag),
}

/// A permutation matrix with a sign on each column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub images: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    /// `self · other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let images = other.images.iter().map(|&j| self.images[j]).collect();
        let signs = other
            .images
            .iter()
            .zip(&other.signs)
            .map(|(&j, &s)| s * self.signs[j])
            .collect();
        SignedPermutation { images, signs }
    }

    pub fn trace(&self) -> i64 {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i == j)
            .map(|(i, _)| self.signs[i] as i64)
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct ExplicitGradedPiece {
    pub s: usize,
    pub kind: PieceKind,
    /// Cohomological degree for `B`, internal degree for the algebras.
    pub n: i64,
    pub basis: Vec<PartitionMonomial>,
    index: HashMap<PartitionMonomial, usize>,
    /// Action of the transpositions `(i, i+1)`.
    pub generators: Vec<SignedPermutation>,
}

impl ExplicitGradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn twisted(&self) -> bool {
        self.kind == PieceKind::B
    }

    /// The matrix of a permutation of the points.
    pub fn action(&self, sigma: &Permutation) -> SignedPermutation {
        let sign = if self.twisted() { sigma.sign() } else { 1 };
        let images = self
            .basis
            .iter()
            .map(|m| self.index[&m.permuted(sigma)])
            .collect();
        SignedPermutation { images, signs: vec![sign; self.basis.len()] }
    }
}

fn internal_degree(s: usize, kind: PieceKind, n: i64) -> Option<usize> {
    let d = match kind {
        PieceKind::B => n + s as i64,
        PieceKind::Algebra(_) => n,
    };
    usize::try_from(d).ok()
}

/// Builds the degree-`n` piece with its generator actions.
pub fn build_piece(s: usize, kind: PieceKind, n: i64) -> Result<ExplicitGradedPiece> {
    if s == 0 || s > MAX_ORACLE_S {
        return Err(Error::SizeOutOfRange { size: s, min: 1, max: MAX_ORACLE_S });
    }
    let variant = match kind {
        PieceKind::B => VariantTag::ADoublePrime,
        PieceKind::Algebra(v) => v,
    };
    let basis = match internal_degree(s, kind, n) {
        Some(d) => monomials_of_degree(variant, s, d, BASIS_CAP)?,
        None => Vec::new(),
    };
    let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut piece = ExplicitGradedPiece { s, kind, n, basis, index, generators: Vec::new() };
    piece.generators = (0..s.saturating_sub(1))
        .map(|i| piece.action(&Permutation::transposition(s, i, i + 1)))
        .collect();
    Ok(piece)
}

/// Shared data for repeated projector ranks on pieces with the same `s`.
pub struct ProjectorContext {
    s: usize,
    perms: Vec<Permutation>,
    classes: Vec<CycleType>,
    table: CharacterTable,
    rank_cache: HashMap<(NumericalPartition, bool, Vec<usize>), usize>,
}

impl ProjectorContext {
    pub fn new(s: usize) -> Self {
        let perms = all_permutations(s);
        let classes = perms.iter().map(Permutation::cycle_type).collect();
        ProjectorContext { s, perms, classes, table: CharacterTable::new(s), rank_cache: HashMap::new() }
    }

    /// Multiplicity of `(λ)` in the piece, as exact projector rank over `f^λ`.
    pub fn isotypic_dim(&mut self, piece: &ExplicitGradedPiece, lambda: &NumericalPartition) -> Result<usize> {
        if lambda.size() != self.s || piece.s != self.s {
            return Err(Error::SizeMismatch(lambda.size(), piece.s));
        }
        let chi: Vec<BigInt> = self
            .classes
            .iter()
            .map(|mu| self.table.value(lambda, mu).cloned().expect("class in table"))
            .collect();
        let twisted = piece.twisted();
        let signs: Vec<i64> = self.perms.iter().map(|p| if twisted { p.sign() as i64 } else { 1 }).collect();
        let mut seen = vec![false; piece.dim()];
        let mut total_rank = 0usize;
        for start in 0..piece.dim() {
            if seen[start] {
                continue;
            }
            let images: Vec<usize> = self
                .perms
                .iter()
                .map(|p| piece.index[&piece.basis[start].permuted(p)])
                .collect();
            let mut orbit: Vec<usize> = images.clone();
            orbit.sort_unstable();
            orbit.dedup();
            for &i in &orbit {
                seen[i] = true;
            }
            let stabilizer: Vec<usize> = (0..self.perms.len()).filter(|&k| images[k] == start).collect();
            let key = (lambda.clone(), twisted, stabilizer);
            if let Some(&r) = self.rank_cache.get(&key) {
                total_rank += r;
                continue;
            }
            let pos: HashMap<usize, usize> = orbit.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let size = orbit.len();
            let mut matrix = vec![vec![BigInt::zero(); size]; size];
            for (col, &j) in orbit.iter().enumerate() {
                for (k, p) in self.perms.iter().enumerate() {
                    if chi[k].is_zero() {
                        continue;
                    }
                    let target = piece.index[&piece.basis[j].permuted(p)];
                    matrix[pos[&target]][col] += &chi[k] * signs[k];
                }
            }
            let r = linalg::rank(matrix);
            self.rank_cache.insert(key, r);
            total_rank += r;
        }
        let f = dimension(lambda).to_usize().expect("small dimension");
        if !total_rank.is_multiple_of(f) {
            return Err(Error::Consistency(format!(
                "projector rank {total_rank} for {lambda} is not a multiple of f = {f}"
            )));
        }
        Ok(total_rank / f)
    }
}

/// Multiplicity of `(λ)` in the piece.
pub fn isotypic_dims_explicit(piece: &ExplicitGradedPiece, lambda: &NumericalPartition) -> Result<usize> {
    ProjectorContext::new(piece.s).isotypic_dim(piece, lambda)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidationReport {
    pub s: usize,
    pub window: Window,
    pub degrees_checked: usize,
    pub isotypic_cells: usize,
    pub trace_cells: usize,
    pub pass: bool,
    pub first_failure: Option<String>,
}

/// Compares the explicit pieces of `B_s` on a cohomological window with the
/// character pipeline: per-`λ` multiplicities and per-class traces.
pub fn cross_validate(s: usize, window: Window) -> Result<CrossValidationReport> {
    let chars = BCharacters::new(s, window)?;
    let series = chars.all_isotypic_series()?;
    let mut ctx = ProjectorContext::new(s);
    let mut report = CrossValidationReport {
        s,
        window,
        degrees_checked: 0,
        isotypic_cells: 0,
        trace_cells: 0,
        pass: true,
        first_failure: None,
    };
    let fail = |report: &mut CrossValidationReport, msg: String| {
        if report.pass {
            report.pass = false;
            report.first_failure = Some(msg);
        }
    };
    for n in window.degrees() {
        let piece = build_piece(s, PieceKind::B, n)?;
        report.degrees_checked += 1;
        for (lambda, b) in &series {
            let explicit = ctx.isotypic_dim(&piece, lambda)?;
            let expected = b.coeff(n).expect("window is known");
            report.isotypic_cells += 1;
            if BigInt::from(explicit) != expected {
                fail(&mut report, format!("degree {n}, {lambda}: explicit {explicit}, characters {expected}"));
            }
        }
        for (mu, trace) in chars.traces() {
            let explicit = piece.action(&mu.representative()).trace();
            let expected = trace.coeff(n).expect("window is known");
            report.trace_cells += 1;
            if BigInt::from(explicit) != expected {
                fail(&mut report, format!("degree {n}, class {mu}: explicit trace {explicit}, Molien {expected}"));
            }
        }
    }
    Ok(report)
}

/// Explicit traces of the variant algebras against the Molien traces, on
/// internal degrees of `window`.
pub fn cross_validate_algebra(v: VariantTag, s: usize, window: Window) -> Result<bool> {
    let traces = all_graded_traces(v, s, window)?;
    for n in window.degrees() {
        let piece = build_piece(s, PieceKind::Algebra(v), n)?;
        for (mu, t) in &traces {
            if BigInt::from(piece.action(&mu.representative()).trace()) != t.coeff(n).expect("known") {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All multiplicities of one piece, in [`partitions_of`] order.
pub fn isotypic_decomposition(piece: &ExplicitGradedPiece) -> Result<Vec<(NumericalPartition, usize)>> {
    let mut ctx = ProjectorContext::new(piece.s);
    partitions_of(piece.s)
        .into_iter()
        .map(|l| ctx.isotypic_dim(piece, &l).map(|d| (l, d)))
        .collect()
}
