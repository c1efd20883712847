//! Truncated Laurent series in one degree variable `q`, with integer
//! coefficients and an explicit window of validity.
//!
//! A [`LaurentWindow`] knows its coefficients on `[min_deg, max_deg]`.
//! Coefficients below `min_deg` are zero. Above `max_deg` they are zero when
//! the series is exact and unknown when it is truncated; arithmetic never
//! reports a coefficient it cannot justify.
//!
//! [`BigradedWindow`] adds a nonnegative point-weight axis for the invariant
//! algebras, where both degree and weight are truncated.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Degrees are kept within `±MAX_ABS_DEGREE`.
pub const MAX_ABS_DEGREE: i64 = 1 << 40;

fn check_degree(d: i64) -> Result<i64> {
    if d.unsigned_abs() > MAX_ABS_DEGREE as u64 {
        Err(Error::WindowRange(format!("degree {d} exceeds ±{MAX_ABS_DEGREE}")))
    } else {
        Ok(d)
    }
}

/// An inclusive range of degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        check_degree(lo)?;
        check_degree(hi)?;
        if lo > hi {
            return Err(Error::WindowRange(format!("empty window [{lo}, {hi}]")));
        }
        Ok(Window { lo, hi })
    }

    /// `[0, hi]`.
    pub fn up_to(hi: i64) -> Result<Self> {
        Self::new(0, hi)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentWindow {
    min_deg: i64,
    max_deg: i64,
    coeffs: Vec<BigInt>,
    truncated: bool,
}

impl LaurentWindow {
    /// The zero series known on `window` (and unknown beyond it).
    pub fn zero_on(window: Window) -> Self {
        let len = (window.hi - window.lo + 1) as usize;
        LaurentWindow {
            min_deg: window.lo,
            max_deg: window.hi,
            coeffs: vec![BigInt::zero(); len],
            truncated: true,
        }
    }

    /// Exact polynomial `q^k`.
    pub fn monomial(k: i64) -> Self {
        LaurentWindow { min_deg: k, max_deg: k, coeffs: vec![BigInt::one()], truncated: false }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// A series with coefficients `coeffs[i]` at degree `min_deg + i`.
    pub fn from_coeffs(min_deg: i64, coeffs: Vec<BigInt>, truncated: bool) -> Result<Self> {
        check_degree(min_deg)?;
        if coeffs.is_empty() {
            return Err(Error::WindowRange("a series needs at least one coefficient".into()));
        }
        let max_deg = check_degree(min_deg + coeffs.len() as i64 - 1)?;
        Ok(LaurentWindow { min_deg, max_deg, coeffs, truncated })
    }

    /// Exact polynomial from `(degree, coefficient)` pairs.
    pub fn polynomial(terms: &[(i64, i64)]) -> Result<Self> {
        if terms.is_empty() {
            return Ok(LaurentWindow {
                min_deg: 0,
                max_deg: 0,
                coeffs: vec![BigInt::zero()],
                truncated: false,
            });
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut out = Self::zero_on(Window::new(lo, hi)?);
        out.truncated = false;
        for &(d, c) in terms {
            out.coeffs[(d - lo) as usize] += c;
        }
        Ok(out)
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i64 {
        self.max_deg
    }

    pub fn window(&self) -> Window {
        Window { lo: self.min_deg, hi: self.max_deg }
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Highest degree with a known coefficient, `None` if every degree is known.
    fn upper(&self) -> Option<i64> {
        self.truncated.then_some(self.max_deg)
    }

    /// The coefficient of `q^d`, or `None` if it lies beyond the truncation.
    pub fn coeff(&self, d: i64) -> Option<BigInt> {
        if d < self.min_deg {
            Some(BigInt::zero())
        } else if d <= self.max_deg {
            Some(self.coeffs[(d - self.min_deg) as usize].clone())
        } else if self.truncated {
            None
        } else {
            Some(BigInt::zero())
        }
    }

    fn coeff_ref(&self, d: i64) -> Option<&BigInt> {
        if d < self.min_deg || d > self.max_deg {
            None
        } else {
            Some(&self.coeffs[(d - self.min_deg) as usize])
        }
    }

    /// Coefficient as `i64`, panicking if unknown or too large. For tests and
    /// small tables.
    pub fn c(&self, d: i64) -> i64 {
        self.coeff(d)
            .unwrap_or_else(|| panic!("degree {d} beyond truncation at {}", self.max_deg))
            .to_i64()
            .expect("coefficient does not fit in i64")
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_deg + i as i64, c))
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<i64> {
        self.terms().next().map(|(d, _)| d)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let min_deg = check_degree(self.min_deg.checked_add(k).ok_or_else(overflow)?)?;
        let max_deg = check_degree(self.max_deg.checked_add(k).ok_or_else(overflow)?)?;
        Ok(LaurentWindow { min_deg, max_deg, coeffs: self.coeffs.clone(), truncated: self.truncated })
    }

    /// Restricts the known range to degrees `<= hi`.
    pub fn truncate_above(&self, hi: i64) -> Self {
        if hi >= self.max_deg {
            return self.clone();
        }
        if hi < self.min_deg {
            return LaurentWindow {
                min_deg: hi,
                max_deg: hi,
                coeffs: vec![BigInt::zero()],
                truncated: true,
            };
        }
        let keep = (hi - self.min_deg + 1) as usize;
        let dropped_nonzero = self.coeffs[keep..].iter().any(|c| !c.is_zero());
        LaurentWindow {
            min_deg: self.min_deg,
            max_deg: hi,
            coeffs: self.coeffs[..keep].to_vec(),
            truncated: self.truncated || dropped_nonzero,
        }
    }

    /// Re-expresses the series on exactly `window`: pads with zeros below and
    /// truncates above. Fails if a nonzero coefficient lies below the window.
    pub fn on_window(&self, window: Window) -> Result<Self> {
        if let Some(low) = self.lowest_degree() {
            if low < window.lo {
                return Err(Error::WindowRange(format!(
                    "nonzero coefficient at degree {low} below window start {}",
                    window.lo
                )));
            }
        }
        let mut out = Self::zero_on(window);
        out.truncated = self.truncated || window.hi < self.max_deg;
        for d in window.degrees() {
            match self.coeff(d) {
                Some(c) => out.coeffs[(d - window.lo) as usize] = c,
                None => {
                    return Err(Error::WindowRange(format!(
                        "coefficient of degree {d} is beyond the truncation at {}",
                        self.max_deg
                    )))
                }
            }
        }
        if !self.truncated && window.hi < self.max_deg {
            out.truncated = self.coeffs[(window.hi - self.min_deg + 1) as usize..]
                .iter()
                .any(|c| !c.is_zero());
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= k;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let min_deg = self.min_deg.min(other.min_deg);
        let (max_deg, truncated) = match (self.upper(), other.upper()) {
            (None, None) => (self.max_deg.max(other.max_deg), false),
            (Some(a), None) | (None, Some(a)) => (a, true),
            (Some(a), Some(b)) => (a.min(b), true),
        };
        let coeffs = (min_deg..=max_deg)
            .map(|d| {
                let a = self.coeff_ref(d).cloned().unwrap_or_default();
                let b = other.coeff_ref(d).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        LaurentWindow { min_deg, max_deg, coeffs, truncated }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&BigInt::from(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let min_deg = self.min_deg + other.min_deg;
        let bounds = [
            self.upper().map(|u| u + other.min_deg),
            other.upper().map(|u| u + self.min_deg),
        ];
        let (max_deg, truncated) = match bounds.iter().flatten().min() {
            Some(&m) => (m, true),
            None => (self.max_deg + other.max_deg, false),
        };
        let len = (max_deg - min_deg + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let da = self.min_deg + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let d = da + other.min_deg + j as i64;
                if d > max_deg {
                    break;
                }
                if !b.is_zero() {
                    coeffs[(d - min_deg) as usize] += a * b;
                }
            }
        }
        LaurentWindow { min_deg, max_deg, coeffs, truncated }
    }

    /// First degree in `window` where both coefficients are known and differ,
    /// or where exactly one of them is unknown.
    pub fn first_difference(&self, other: &Self, window: Window) -> Option<i64> {
        window.degrees().find(|&d| self.coeff(d) != other.coeff(d))
    }

    /// True if both series know every degree of `window` and agree there.
    pub fn agrees_on(&self, other: &Self, window: Window) -> bool {
        window
            .degrees()
            .all(|d| matches!((self.coeff(d), other.coeff(d)), (Some(a), Some(b)) if a == b))
    }

    /// Builds a series known on `[min_deg, max_deg]` from a coefficient table.
    pub fn from_table(min_deg: i64, coeffs: Vec<BigInt>) -> Result<Self> {
        Self::from_coeffs(min_deg, coeffs, true)
    }
}

fn overflow() -> Error {
    Error::WindowRange("degree arithmetic overflowed".into())
}

/// `q^shift · Π_ℓ (1 − q^{2ℓ})^{-1}` expanded up to `window.hi`. The result
/// starts at `min(window.lo, shift)` so that no nonzero term is dropped.
pub fn geometric_product(shift: i64, orbit_lengths: &[usize], window: Window) -> Result<LaurentWindow> {
    check_degree(shift)?;
    let lo = window.lo.min(shift);
    let mut out = LaurentWindow::zero_on(Window { lo, hi: window.hi });
    out.truncated = !orbit_lengths.is_empty() || shift > window.hi;
    if shift > window.hi {
        return Ok(out);
    }
    let span = (window.hi - shift) as usize;
    let mut poly = vec![BigInt::zero(); span + 1];
    poly[0] = BigInt::one();
    for &len in orbit_lengths {
        let step = 2 * len;
        if step == 0 {
            return Err(Error::Unsupported("orbit length 0".into()));
        }
        for i in step..=span {
            let prev = poly[i - step].clone();
            poly[i] += prev;
        }
    }
    for (i, c) in poly.into_iter().enumerate() {
        out.coeffs[(shift + i as i64 - lo) as usize] = c;
    }
    Ok(out)
}

/// Sum of a collection of series.
pub fn sum<'a>(items: impl IntoIterator<Item = &'a LaurentWindow>, window: Window) -> LaurentWindow {
    let mut zero = LaurentWindow::zero_on(window);
    zero.truncated = false;
    items.into_iter().fold(zero, |acc, s| acc.add(s))
}

/// Serializes an integer as a JSON number when it fits in 64 bits, else as a
/// decimal string.
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    if let Some(x) = v.to_i64() {
        s.serialize_i64(x)
    } else if let Some(x) = v.to_u64() {
        s.serialize_u64(x)
    } else {
        s.serialize_str(&v.to_string())
    }
}

pub fn serialize_biguint<S: Serializer>(v: &num_bigint::BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    serialize_bigint(&BigInt::from(v.clone()), s)
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub fn bigint_json(v: &BigInt) -> serde_json::Value {
    if let Some(x) = v.to_i64() {
        x.into()
    } else if let Some(x) = v.to_u64() {
        x.into()
    } else {
        v.to_string().into()
    }
}

struct Term<'a>(i64, &'a BigInt);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.0)?;
        seq.serialize_element(&Big(self.1))?;
        seq.end()
    }
}

struct Big<'a>(&'a BigInt);

impl Serialize for Big<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

struct Terms<'a>(&'a LaurentWindow);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(None)?;
        for (d, c) in self.0.terms() {
            seq.serialize_element(&Term(d, c))?;
        }
        seq.end()
    }
}

impl Serialize for LaurentWindow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentWindow", 4)?;
        st.serialize_field("min_deg", &self.min_deg)?;
        st.serialize_field("max_deg", &self.max_deg)?;
        st.serialize_field("truncated", &self.truncated)?;
        st.serialize_field("coefficients", &Terms(self))?;
        st.end()
    }
}

/// Wire form accepted when reading a series from a file. A missing
/// `truncated` flag means the listed terms are the whole series.
#[derive(Debug, Deserialize)]
struct SeriesFile {
    min_deg: i64,
    max_deg: i64,
    #[serde(default)]
    truncated: bool,
    coefficients: Vec<(i64, i128)>,
}

impl LaurentWindow {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SeriesFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidBase(e.to_string()))?;
        let window = Window::new(file.min_deg, file.max_deg)?;
        let mut out = Self::zero_on(window);
        out.truncated = file.truncated;
        for (d, c) in file.coefficients {
            if d < window.lo || d > window.hi {
                return Err(Error::InvalidBase(format!(
                    "term of degree {d} outside [{}, {}]",
                    window.lo, window.hi
                )));
            }
            out.coeffs[(d - window.lo) as usize] = BigInt::from(c);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}q^{d}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if self.truncated {
            write!(f, " + O(q^{})", self.max_deg + 1)?;
        }
        Ok(())
    }
}

/// A series in `q` and a point-weight `w`, known for degrees `0..=max_deg`
/// and weights `0..=weight_cap`. Only nonnegative degrees and weights occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedWindow {
    max_deg: i64,
    weight_cap: usize,
    /// `coeffs[w][d]`.
    coeffs: Vec<Vec<BigInt>>,
}

impl BigradedWindow {
    pub fn one(max_deg: i64, weight_cap: usize) -> Result<Self> {
        Self::monomial(0, 0, max_deg, weight_cap)
    }

    /// `q^deg w^weight`, or zero if it falls outside the window.
    pub fn monomial(deg: i64, weight: usize, max_deg: i64, weight_cap: usize) -> Result<Self> {
        if max_deg < 0 {
            return Err(Error::WindowRange(format!("max degree {max_deg} is negative")));
        }
        check_degree(max_deg)?;
        let mut coeffs = vec![vec![BigInt::zero(); max_deg as usize + 1]; weight_cap + 1];
        if deg >= 0 && deg <= max_deg && weight <= weight_cap {
            coeffs[weight][deg as usize] = BigInt::one();
        }
        Ok(BigradedWindow { max_deg, weight_cap, coeffs })
    }

    /// Embeds a single-graded series at a fixed weight. Only degrees
    /// `0..=max_deg` are used; the input must know all of them.
    pub fn at_weight(series: &LaurentWindow, weight: usize, max_deg: i64, weight_cap: usize) -> Result<Self> {
        let mut out = Self::monomial(-1, 0, max_deg, weight_cap)?;
        if weight > weight_cap {
            return Ok(out);
        }
        for d in 0..=max_deg {
            let c = series.coeff(d).ok_or_else(|| {
                Error::WindowRange(format!("degree {d} unknown in weight-{weight} input"))
            })?;
            out.coeffs[weight][d as usize] = c;
        }
        Ok(out)
    }

    pub fn max_deg(&self) -> i64 {
        self.max_deg
    }

    pub fn weight_cap(&self) -> usize {
        self.weight_cap
    }

    pub fn coeff(&self, deg: i64, weight: usize) -> Option<&BigInt> {
        if deg < 0 || deg > self.max_deg || weight > self.weight_cap {
            None
        } else {
            Some(&self.coeffs[weight][deg as usize])
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::monomial(-1, 0, self.max_deg, self.weight_cap)?;
        let dmax = self.max_deg as usize;
        for (w1, row1) in self.coeffs.iter().enumerate() {
            for (d1, a) in row1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (w2, row2) in other.coeffs.iter().enumerate().take(self.weight_cap - w1 + 1) {
                    for (d2, b) in row2.iter().enumerate().take(dmax - d1 + 1) {
                        if !b.is_zero() {
                            out.coeffs[w1 + w2][d1 + d2] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `1 / (1 − q^deg w^weight)`.
    pub fn geometric(deg: i64, weight: usize, max_deg: i64, weight_cap: usize) -> Result<Self> {
        if deg <= 0 {
            return Err(Error::Unsupported(format!("generator of degree {deg}")));
        }
        let mut out = Self::one(max_deg, weight_cap)?;
        let mut k = 1i64;
        while k * deg <= max_deg && (k as usize) * weight <= weight_cap {
            out.coeffs[k as usize * weight][(k * deg) as usize] = BigInt::one();
            if weight == 0 && k * deg > max_deg {
                break;
            }
            k += 1;
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.max_deg != other.max_deg || self.weight_cap != other.weight_cap {
            return Err(Error::WindowRange(format!(
                "bigraded windows differ: ({}, {}) vs ({}, {})",
                self.max_deg, self.weight_cap, other.max_deg, other.weight_cap
            )));
        }
        Ok(())
    }

    /// The part of exact weight `w`.
    pub fn weight_part(&self, w: usize) -> LaurentWindow {
        let coeffs = match self.coeffs.get(w) {
            Some(row) => row.clone(),
            None => vec![BigInt::zero(); self.max_deg as usize + 1],
        };
        LaurentWindow { min_deg: 0, max_deg: self.max_deg, coeffs, truncated: true }
    }

    /// Sum of the parts of weight `<= w`.
    pub fn weight_at_most(&self, w: usize) -> LaurentWindow {
        let mut coeffs = vec![BigInt::zero(); self.max_deg as usize + 1];
        for row in self.coeffs.iter().take(w + 1) {
            for (c, x) in coeffs.iter_mut().zip(row) {
                *c += x;
            }
        }
        LaurentWindow { min_deg: 0, max_deg: self.max_deg, coeffs, truncated: true }
    }

    /// All weights up to the cap, summed.
    pub fn total(&self) -> LaurentWindow {
        self.weight_at_most(self.weight_cap)
    }
}

struct WeightedTerms<'a>(&'a BigradedWindow);

impl Serialize for WeightedTerms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(None)?;
        for d in 0..=self.0.max_deg {
            for w in 0..=self.0.weight_cap {
                let c = &self.0.coeffs[w][d as usize];
                if !c.is_zero() {
                    seq.serialize_element(&(d, w, Big(c)))?;
                }
            }
        }
        seq.end()
    }
}

impl Serialize for BigradedWindow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let total = self.total();
        let mut st = s.serialize_struct("BigradedWindow", 6)?;
        st.serialize_field("min_deg", &0)?;
        st.serialize_field("max_deg", &self.max_deg)?;
        st.serialize_field("truncated", &true)?;
        st.serialize_field("coefficients", &Terms(&total))?;
        st.serialize_field("weight_cap", &self.weight_cap)?;
        st.serialize_field("by_weight", &WeightedTerms(self))?;
        st.end()
    }
}
