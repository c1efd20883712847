//! Stable-range series: a base model for the stable cohomology of the mapping
//! class group, stability bounds, and the products of the base with the
//! graded modules and invariant algebras built elsewhere in the crate.
//!
//! The default base series `Π_{i≥1} (1 − q^{2i})^{-1}` (one free generator in
//! each even degree) is an external assumption and is labelled as such in
//! every report.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bmodule::b_lambda_series;
use crate::combinat::NumericalPartition;
use crate::diag_algebra::{invariant_series, variant_hilbert_series, VariantTag};
use crate::error::{Error, Result};
use crate::series::{geometric_product, BigradedWindow, LaurentWindow, Window};

pub const FREE_POLYNOMIAL_LABEL: &str = "free-polynomial (external assumption)";
pub const USER_SUPPLIED_LABEL: &str = "user-supplied";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FreePolynomialModel,
    UserSupplied,
}

/// Stability bound `N(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum NPolicy {
    /// `⌊g/2⌋ − 1`.
    #[default]
    #[serde(rename = "ivanov")]
    Ivanov,
    /// `⌊g/3⌋`.
    #[serde(rename = "harer85")]
    Harer85,
    /// `⌊2g/3⌋`.
    #[serde(rename = "harer93-upper")]
    Harer93Upper,
}

impl NPolicy {
    pub const ALL: [NPolicy; 3] = [NPolicy::Ivanov, NPolicy::Harer85, NPolicy::Harer93Upper];

    pub fn n(self, g: usize) -> i64 {
        let g = g as i64;
        match self {
            NPolicy::Ivanov => g / 2 - 1,
            NPolicy::Harer85 => g / 3,
            NPolicy::Harer93Upper => 2 * g / 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NPolicy::Ivanov => "ivanov",
            NPolicy::Harer85 => "harer85",
            NPolicy::Harer93Upper => "harer93-upper",
        }
    }
}

impl FromStr for NPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NPolicy::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown policy {s:?}")))
    }
}

impl fmt::Display for NPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which stable identification a cutoff refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffContext<'a> {
    /// Twisted coefficients `S_⟨λ⟩`: `N(g) − |λ|`.
    Twisted(&'a NumericalPartition),
    /// Curve powers and their reduced quotients: `N(g)`.
    Curve,
    /// Symmetric powers over the Picard variety: `min(s, N(g))`.
    AbelJacobi(usize),
}

/// The degree up to which the stable identification is claimed.
pub fn stable_cutoff(policy: NPolicy, g: usize, ctx: CutoffContext<'_>) -> Result<i64> {
    if g < 2 {
        return Err(Error::Unsupported(format!("stability bounds need g >= 2, got {g}")));
    }
    let n = policy.n(g);
    Ok(match ctx {
        CutoffContext::Twisted(lambda) => n - lambda.size() as i64,
        CutoffContext::Curve => n,
        CutoffContext::AbelJacobi(s) => n.min(s as i64),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableModel {
    provenance: Provenance,
    /// Present for user-supplied models.
    base: Option<LaurentWindow>,
    pub policy: NPolicy,
}

impl Default for StableModel {
    fn default() -> Self {
        StableModel { provenance: Provenance::FreePolynomialModel, base: None, policy: NPolicy::default() }
    }
}

impl StableModel {
    /// The unit series `1`, so downstream series reduce to the bare modules.
    pub fn unit() -> Self {
        Self::user_supplied(LaurentWindow::one()).expect("the unit series is a valid base")
    }

    pub fn user_supplied(base: LaurentWindow) -> Result<Self> {
        if base.lowest_degree().is_some_and(|d| d < 0) {
            return Err(Error::InvalidBase("negative-degree terms".into()));
        }
        match base.coeff(0) {
            Some(c) if c.is_one() => {}
            other => {
                return Err(Error::InvalidBase(format!(
                    "degree-0 coefficient must be 1, found {}",
                    other.map_or("unknown".to_string(), |c| c.to_string())
                )))
            }
        }
        match base.coeff(1) {
            Some(c) if c.is_zero() => {}
            None => {}
            Some(c) => return Err(Error::InvalidBase(format!("degree-1 coefficient must be 0, found {c}"))),
        }
        Ok(StableModel { provenance: Provenance::UserSupplied, base: Some(base), policy: NPolicy::default() })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::user_supplied(LaurentWindow::from_json(text)?)
    }

    pub fn with_policy(mut self, policy: NPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn label(&self) -> &'static str {
        match self.provenance {
            Provenance::FreePolynomialModel => FREE_POLYNOMIAL_LABEL,
            Provenance::UserSupplied => USER_SUPPLIED_LABEL,
        }
    }

    /// The base series on degrees `0..=max_deg`.
    pub fn base_series(&self, max_deg: i64) -> Result<LaurentWindow> {
        let window = Window::up_to(max_deg.max(0))?;
        match &self.base {
            None => {
                let orbits: Vec<usize> = (1..=(max_deg.max(0) / 2) as usize).collect();
                geometric_product(0, &orbits, window)
            }
            Some(b) => b.on_window(window),
        }
    }

    /// `base · series`, known up to `series`' upper bound.
    pub fn times(&self, series: &LaurentWindow) -> Result<LaurentWindow> {
        let span = series.max_deg() - series.min_deg();
        let product = self.base_series(span)?.mul(series);
        Ok(product.truncate_above(series.max_deg()))
    }
}

/// A window starting at or below `lo_natural`; series here never silently drop
/// low-degree terms.
fn widen(window: Window, lo_natural: i64) -> Window {
    Window { lo: window.lo.min(lo_natural), hi: window.hi }
}

/// `base · B_λ`.
pub fn twisted_series(lambda: &NumericalPartition, model: &StableModel, window: Window) -> Result<LaurentWindow> {
    let w = widen(window, -(lambda.size() as i64));
    model.times(&b_lambda_series(lambda, w)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLabels {
    Labeled,
    Unlabeled,
}

/// Series of the decorated group with `s` marked points.
pub fn decorated_series(s: usize, labels: PointLabels, model: &StableModel, window: Window) -> Result<LaurentWindow> {
    let w = widen(window, 0);
    let orbits: Vec<usize> = match labels {
        PointLabels::Labeled => vec![1; s],
        PointLabels::Unlabeled => (1..=s).collect(),
    };
    model.times(&geometric_product(0, &orbits, w)?)
}

/// `base ·` Hilbert series of `A` or `A'` on `s` points.
pub fn curve_power_series(s: usize, variant: VariantTag, model: &StableModel, window: Window) -> Result<LaurentWindow> {
    if !matches!(variant, VariantTag::A | VariantTag::APrime) {
        return Err(Error::Unsupported(format!("curve powers use variant a or aprime, not {variant}")));
    }
    model.times(&variant_hilbert_series(variant, s, widen(window, 0))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CVariant {
    C,
    CPrime,
}

impl FromStr for CVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" => Ok(CVariant::C),
            "cprime" => Ok(CVariant::CPrime),
            _ => Err(Error::Unsupported(format!("unknown variant {s:?}"))),
        }
    }
}

/// The invariant algebra `C_∞` (or `C'_∞`, without the first-factor `c_1`)
/// bigraded by degree and point-weight.
///
/// First factor: `c_i` of degree `2i` and weight `i`. Factor `k >= 2`:
/// `1 + Σ_{l≥1} c_l^{k−1} Q[c_1..c_l]`, where the summand for `l` has weight
/// `k·l` and starts in degree `2l(k−1)`. Factors with `k > factor_cutoff`
/// are dropped; `None` keeps every factor that can reach `max_deg`.
pub fn c_infty_series(
    variant: CVariant,
    max_deg: i64,
    weight_cap: usize,
    factor_cutoff: Option<usize>,
) -> Result<BigradedWindow> {
    let mut out = BigradedWindow::one(max_deg, weight_cap)?;
    let first = match variant {
        CVariant::C => 1,
        CVariant::CPrime => 2,
    };
    for i in first..=(max_deg / 2) as usize {
        out = out.mul(&BigradedWindow::geometric(2 * i as i64, i, max_deg, weight_cap)?)?;
    }
    let natural = (max_deg / 2) as usize + 1;
    let cutoff = factor_cutoff.unwrap_or(natural).min(natural.max(1));
    let scalar_window = Window::up_to(max_deg.max(0))?;
    for k in 2..=cutoff {
        let mut factor = BigradedWindow::one(max_deg, weight_cap)?;
        let mut l = 1;
        while 2 * (l * (k - 1)) as i64 <= max_deg {
            let lowest = 2 * (l * (k - 1)) as i64;
            let poly = geometric_product(lowest, &(1..=l).collect::<Vec<_>>(), scalar_window)?;
            factor = factor.add(&BigradedWindow::at_weight(&poly, k * l, max_deg, weight_cap)?)?;
            l += 1;
        }
        out = out.mul(&factor)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub s: usize,
    pub max_deg: i64,
    /// Degrees `0..=verified_through` are compared.
    pub verified_through: i64,
    /// Largest `d <= max_deg` with agreement in all degrees `<= d`.
    pub agreement_through: i64,
    pub first_disagreement: Option<i64>,
    pub pass: bool,
}

/// Compares the weight-`<= s` part of `C_∞` with the invariants of `A` on `s`
/// points, on degrees `<= min(s, max_deg)` where every contributing monomial
/// has weight `<= s`.
pub fn c_s_agreement(s: usize, max_deg: i64) -> Result<AgreementReport> {
    let window = Window::up_to(max_deg)?;
    let c = c_infty_series(CVariant::C, max_deg, s, None)?.weight_at_most(s);
    let inv = invariant_series(VariantTag::A, s, window)?;
    let first = c.first_difference(&inv, window);
    let verified_through = (s as i64).min(max_deg);
    Ok(AgreementReport {
        s,
        max_deg,
        verified_through,
        agreement_through: first.map_or(max_deg, |d| d - 1),
        first_disagreement: first,
        pass: first.is_none_or(|d| d > verified_through),
    })
}

/// How the `t^s` grading is paired with degrees when comparing the two sides
/// of the Abel–Jacobi identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AjConvention {
    /// `t^s` shifts cohomological degree by `s`; the full `C'_∞` is compared
    /// with the sum of the `∧^j` contributions for `j <= s`, on degrees `<= s`.
    #[default]
    CohomologicalShift,
    /// `t^s` is identified with point-weight `s`: the weight-`s` part of
    /// `C'_∞`, shifted by `s`, is compared with the `∧^s` contribution alone.
    PointWeight,
}

impl FromStr for AjConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cohomological-shift" => Ok(AjConvention::CohomologicalShift),
            "point-weight" => Ok(AjConvention::PointWeight),
            _ => Err(Error::Unsupported(format!("unknown convention {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AjRow {
    pub s: usize,
    pub compared_through: i64,
    pub first_discrepancy: Option<i64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelJacobiReport {
    pub convention: AjConvention,
    pub max_deg: i64,
    pub rows: Vec<AjRow>,
    pub pass: bool,
    pub diagnosis: Option<String>,
}

/// `Σ_{k≥0, j−2k≥0} B_{(1^{j−2k})}` shifted up by `j`, on degrees `0..=max_deg`.
fn wedge_contribution(j: usize, max_deg: i64) -> Result<LaurentWindow> {
    let window = Window::up_to(max_deg)?;
    let mut total = LaurentWindow::zero_on(window);
    for m in (0..=j).rev().step_by(2) {
        let piece = if m == 0 {
            LaurentWindow::one()
        } else {
            let w = Window::new(-(m as i64), (max_deg - j as i64).max(-(m as i64)))?;
            b_lambda_series(&NumericalPartition::column(m), w)?
        };
        total = total.add(&piece.shift(j as i64)?.truncate_above(max_deg));
    }
    Ok(total)
}

/// Compares `base ⊗ C'_∞` with `⊕_s base ⊗ B(∧^s) t^s` for `s <= s_max`.
pub fn abel_jacobi_check(
    s_max: usize,
    model: &StableModel,
    max_deg: i64,
    convention: AjConvention,
) -> Result<AbelJacobiReport> {
    let window = Window::up_to(max_deg)?;
    let weight_cap = match convention {
        AjConvention::CohomologicalShift => max_deg.max(0) as usize,
        AjConvention::PointWeight => s_max,
    };
    let cprime = c_infty_series(CVariant::CPrime, max_deg, weight_cap, None)?;
    let mut rows = Vec::new();
    let mut partial = LaurentWindow::zero_on(window);
    for s in 0..=s_max {
        let contribution = wedge_contribution(s, max_deg)?;
        let (lhs, rhs, through) = match convention {
            AjConvention::CohomologicalShift => {
                partial = partial.add(&contribution);
                (model.times(&cprime.total())?, model.times(&partial)?, (s as i64).min(max_deg))
            }
            AjConvention::PointWeight => {
                let part = cprime.weight_part(s).shift(s as i64)?.truncate_above(max_deg);
                (model.times(&part)?, model.times(&contribution)?, max_deg)
            }
        };
        let compared = Window::up_to(through)?;
        let first = lhs.first_difference(&rhs, compared);
        rows.push(AjRow { s, compared_through: through, first_discrepancy: first, pass: first.is_none() });
    }
    let pass = rows.iter().all(|r| r.pass);
    let diagnosis = (!pass).then(|| {
        let bad = rows.iter().find(|r| !r.pass).expect("a failing row");
        format!(
            "convention mismatch: under {} the two sides first differ at s = {}, degree {}; \
             the weight-s part of C'_inf does not carry the t^s grading of the wedge powers",
            match convention {
                AjConvention::CohomologicalShift => "cohomological-shift",
                AjConvention::PointWeight => "point-weight",
            },
            bad.s,
            bad.first_discrepancy.expect("failing rows have a discrepancy")
        )
    });
    Ok(AbelJacobiReport { convention, max_deg, rows, pass, diagnosis })
}

/// Sum of binomial coefficients `C(s−1+j, j)` placed in degree `2j`:
/// the coefficients of `(1 − q²)^{-s}`.
pub fn labeled_point_coefficients(s: usize, max_deg: i64) -> Vec<BigInt> {
    (0..=max_deg)
        .map(|d| {
            if d % 2 == 1 {
                BigInt::zero()
            } else if s == 0 {
                BigInt::from(u8::from(d == 0))
            } else {
                let j = (d / 2) as usize;
                BigInt::from(crate::combinat::binomial(s - 1 + j, j))
            }
        })
        .collect()
}
