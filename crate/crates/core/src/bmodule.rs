//! The graded `S_s`-module `B_s`: the `A''` submodule on `s` points, shifted
//! down by `s` in degree and twisted by the sign character, and its isotypic
//! Hilbert series `B_λ = Hom((λ), B_s)`.
//!
//! Cohomological degree is `2·(u-exponent sum) − s`. Only the graded
//! character is computed; the explicit module lives in [`crate::oracle`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::characters::{irreducible_character, ClassFunction};
use crate::combinat::{class_data, factorial, partitions_of, CycleType, NumericalPartition};
use crate::diag_algebra::{all_graded_traces, VariantTag};
use crate::error::{Error, Result};
use crate::series::{geometric_product, LaurentWindow, Window};

/// Graded traces of every class on `B_s`, sign twist included, indexed by
/// cohomological degree.
#[derive(Debug, Clone)]
pub struct BCharacters {
    s: usize,
    window: Window,
    traces: Vec<(CycleType, LaurentWindow)>,
}

impl BCharacters {
    /// Traces on the cohomological window `window`.
    pub fn new(s: usize, window: Window) -> Result<Self> {
        let internal = Window::new(window.lo + s as i64, window.hi + s as i64)?;
        let raw = all_graded_traces(VariantTag::ADoublePrime, s, internal)?;
        let mut traces = Vec::with_capacity(raw.len());
        for (mu, t) in raw {
            let twisted = t.scaled(&BigInt::from(mu.sign())).shift(-(s as i64))?;
            traces.push((mu, twisted));
        }
        Ok(BCharacters { s, window, traces })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Sign-twisted graded trace of class `mu`.
    pub fn trace(&self, mu: &CycleType) -> Option<&LaurentWindow> {
        self.traces.iter().find(|(m, _)| m == mu).map(|(_, t)| t)
    }

    pub fn traces(&self) -> &[(CycleType, LaurentWindow)] {
        &self.traces
    }

    /// The character of the degree-`n` piece.
    pub fn character(&self, n: i64) -> Result<ClassFunction> {
        if n < self.window.lo || n > self.window.hi {
            return Err(Error::WindowRange(format!(
                "degree {n} outside [{}, {}]",
                self.window.lo, self.window.hi
            )));
        }
        Ok(ClassFunction::from_integer_fn(self.s, |mu| {
            self.trace(mu).and_then(|t| t.coeff(n)).unwrap_or_default()
        }))
    }

    /// The isotypic Hilbert series of `λ`, by averaging traces against `χ^λ`.
    pub fn isotypic_series(&self, lambda: &NumericalPartition) -> Result<LaurentWindow> {
        if lambda.size() != self.s {
            return Err(Error::SizeMismatch(lambda.size(), self.s));
        }
        let mut total = LaurentWindow::zero_on(self.window);
        for (mu, t) in &self.traces {
            let weight = irreducible_character(lambda, mu)? * BigInt::from(class_data(mu).class_size);
            if !weight.is_zero() {
                total = total.add(&t.scaled(&weight));
            }
        }
        let order = BigInt::from(factorial(self.s));
        let mut coeffs = Vec::new();
        for n in self.window.degrees() {
            let c = total.coeff(n).expect("window is known");
            if !(&c % &order).is_zero() || c.is_negative() {
                return Err(Error::Consistency(format!(
                    "multiplicity of {lambda} in degree {n} is {}",
                    BigRational::new(c, order)
                )));
            }
            coeffs.push(c / &order);
        }
        LaurentWindow::from_table(self.window.lo, coeffs)
    }

    /// Isotypic series for every `λ ⊢ s`, in [`partitions_of`] order.
    pub fn all_isotypic_series(&self) -> Result<Vec<(NumericalPartition, LaurentWindow)>> {
        partitions_of(self.s)
            .into_iter()
            .map(|l| self.isotypic_series(&l).map(|t| (l, t)))
            .collect()
    }
}

/// Character of the degree-`n` piece of `B_s`.
pub fn b_graded_character(s: usize, n: i64) -> Result<ClassFunction> {
    BCharacters::new(s, Window::new(n, n)?)?.character(n)
}

/// Hilbert series of `B_λ` on a cohomological window.
pub fn b_lambda_series(lambda: &NumericalPartition, window: Window) -> Result<LaurentWindow> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition("B_λ needs a nonempty partition".into()));
    }
    BCharacters::new(lambda.size(), window)?.isotypic_series(lambda)
}

/// Hodge type `(d, d)` of the degree-`n` part of `B_λ`, with `2d = n + |λ|`.
pub fn hodge_type(lambda: &NumericalPartition, n: i64) -> Result<(i64, i64)> {
    let total = n + lambda.size() as i64;
    if total.rem_euclid(2) != 0 {
        return Err(Error::Degenerate(format!(
            "degree {n} has parity opposite to |λ| = {}; the graded piece is zero",
            lambda.size()
        )));
    }
    let d = total / 2;
    Ok((d, d))
}

/// Closed forms of `B_λ` for a single row or a single column.
pub fn extreme_closed_forms(lambda: &NumericalPartition, window: Window) -> Result<LaurentWindow> {
    let s = lambda.size();
    if s == 0 {
        return Err(Error::Unsupported("the empty partition".into()));
    }
    if lambda.is_row() {
        let orbits: Vec<usize> = (1..=s).collect();
        let shift = (s * s + 2 * s) as i64;
        return geometric_product(shift, &orbits, window);
    }
    if lambda.is_column() {
        let mut total = LaurentWindow::zero_on(window);
        for ty in partitions_of(s) {
            let mut shift = -(s as i64);
            let mut orbits = Vec::new();
            for (k, &l) in ty.multiplicities().iter().enumerate().skip(1) {
                shift += 2 * (l * 2usize.max(k.saturating_sub(1))) as i64;
                orbits.extend(1..=l);
            }
            total = total.add(&geometric_product(shift, &orbits, window)?);
        }
        return Ok(total);
    }
    Err(Error::Unsupported(format!("no closed form for {lambda}")))
}

/// Lowest degree of `B_s` from the block types: `min Σ_k 2 l_k max(2, k−1) − s`.
pub fn lowest_degree_of_b(s: usize) -> i64 {
    partitions_of(s)
        .iter()
        .map(|ty| {
            ty.multiplicities()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &l)| 2 * (l * 2usize.max(k.saturating_sub(1))) as i64)
                .sum::<i64>()
        })
        .min()
        .unwrap_or(0)
        - s as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{dimension, integral_multiplicity};
    use crate::combinat::cycle_types;
    use crate::diag_algebra::{graded_trace, variant_hilbert_series};

    fn p(s: &str) -> NumericalPartition {
        s.parse().unwrap()
    }

    fn win(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    #[test]
    fn character_examples() {
        let c = b_graded_character(1, 3).unwrap();
        assert_eq!(c.value(&CycleType::identity(1)), Some(&BigRational::from_integer(1.into())));

        let c = b_graded_character(2, 2).unwrap();
        assert_eq!(c.value(&CycleType::identity(2)), Some(&BigRational::from_integer(1.into())));
        assert_eq!(c.value(&"2".parse().unwrap()), Some(&BigRational::from_integer((-1).into())));

        for s in 1..=4 {
            for n in [1 - s as i64, 0, 3, 6] {
                if (n - s as i64).rem_euclid(2) == 1 {
                    let c = b_graded_character(s, n).unwrap();
                    assert!(c.values().values().all(|v| v.is_zero()), "s={s} n={n}");
                }
            }
        }
    }

    #[test]
    fn pair_column_series() {
        let b = b_lambda_series(&p("1,1"), win(-2, 10)).unwrap();
        assert_eq!([2, 4, 6, 8, 10].map(|d| b.c(d)), [1, 1, 2, 2, 3]);
        assert_eq!(b.lowest_degree(), Some(2));
    }

    #[test]
    fn triple_column_series() {
        let b = b_lambda_series(&p("1,1,1"), win(-3, 9)).unwrap();
        assert_eq!(b.lowest_degree(), Some(1));
        assert_eq!([1, 3, 5, 7, 9].map(|d| b.c(d)), [1, 1, 2, 3, 5]);
    }

    #[test]
    fn closed_forms_agree_with_characters() {
        for s in 1..=4 {
            let window = win(-(s as i64), 24);
            for lambda in [NumericalPartition::row(s), NumericalPartition::column(s)] {
                assert_eq!(
                    b_lambda_series(&lambda, window).unwrap(),
                    extreme_closed_forms(&lambda, window).unwrap(),
                    "{lambda}"
                );
            }
        }
        let one = extreme_closed_forms(&p("1"), win(0, 9)).unwrap();
        assert_eq!(one, geometric_product(3, &[1], win(0, 9)).unwrap());
        let three = extreme_closed_forms(&p("3"), win(0, 30)).unwrap();
        assert_eq!(three, geometric_product(15, &[1, 2, 3], win(0, 30)).unwrap());
        assert!(extreme_closed_forms(&p("2,1"), win(0, 4)).is_err());
    }

    #[test]
    fn total_dimension_bookkeeping() {
        for s in 1..=5 {
            let window = win(-(s as i64), 16);
            let chars = BCharacters::new(s, window).unwrap();
            let mut total = LaurentWindow::zero_on(window);
            for (lambda, series) in chars.all_isotypic_series().unwrap() {
                total = total.add(&series.scaled(&BigInt::from(dimension(&lambda))));
            }
            let internal = win(0, 16 + s as i64);
            let dims = variant_hilbert_series(VariantTag::ADoublePrime, s, internal)
                .unwrap()
                .shift(-(s as i64))
                .unwrap();
            assert!(total.agrees_on(&dims, window), "s={s}");
        }
    }

    #[test]
    fn conjugate_matches_untwisted() {
        for s in 1..=4 {
            let window = win(-(s as i64), 12);
            let internal = win(0, 12 + s as i64);
            let chars = BCharacters::new(s, window).unwrap();
            for n in window.degrees() {
                let untwisted = ClassFunction::from_integer_fn(s, |mu| {
                    graded_trace(mu, VariantTag::ADoublePrime, s, internal)
                        .unwrap()
                        .coeff(n + s as i64)
                        .unwrap()
                });
                for lambda in partitions_of(s) {
                    let twisted = chars.isotypic_series(&lambda).unwrap().coeff(n).unwrap();
                    let plain = integral_multiplicity(&untwisted, &lambda.conjugate()).unwrap();
                    assert_eq!(twisted, plain, "s={s} n={n} {lambda}");
                }
            }
        }
    }

    #[test]
    fn degree_one_only_for_triple_column() {
        for s in 1..=5 {
            let chars = BCharacters::new(s, win(1, 1)).unwrap();
            for (lambda, series) in chars.all_isotypic_series().unwrap() {
                let expected = i64::from(lambda == p("1,1,1"));
                assert_eq!(series.c(1), expected, "{lambda}");
            }
        }
    }

    #[test]
    fn parity_and_lowest_degree() {
        for s in 1..=5 {
            let window = win(-(s as i64), 14);
            let chars = BCharacters::new(s, window).unwrap();
            let mut lowest = i64::MAX;
            for (lambda, series) in chars.all_isotypic_series().unwrap() {
                for (d, _) in series.terms() {
                    assert_eq!((d - s as i64).rem_euclid(2), 0);
                    assert!(d >= 4 - s as i64);
                }
                assert!(series.is_nonnegative(), "{lambda}");
                lowest = lowest.min(series.lowest_degree().unwrap_or(i64::MAX));
            }
            assert_eq!(lowest, lowest_degree_of_b(s));
        }
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(hodge_type(&p("1,1,1"), 1), Ok((2, 2)));
        assert_eq!(hodge_type(&p("1"), 3), Ok((2, 2)));
        for s in 1..=5usize {
            let n = (s * s + 2 * s) as i64;
            let d = ((s * s + 3 * s) / 2) as i64;
            assert_eq!(hodge_type(&NumericalPartition::row(s), n), Ok((d, d)));
        }
        assert!(matches!(hodge_type(&p("1,1"), 3), Err(Error::Degenerate(_))));
    }

    #[test]
    fn traces_are_class_functions_of_the_character() {
        let chars = BCharacters::new(3, win(-3, 9)).unwrap();
        assert_eq!(chars.traces().len(), cycle_types(3).len());
        assert!(chars.character(20).is_err());
        assert!(b_lambda_series(&NumericalPartition::empty(), win(0, 3)).is_err());
    }
}
