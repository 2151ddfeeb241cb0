//! Closed-form degree-threshold bounds in exact rational arithmetic.
//!
//! All ratios are relative to `C(n, t)` (equivalently `C(n - d, t)`) with
//! `t = k - d`, and are limit values: the vanishing error terms are not
//! evaluated. Comparisons against square roots are done on squared forms.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::binom::binomial;
use crate::rational::{self, from_biguint, from_int, ratio, Rational};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("t must be at least 1")]
    ZeroT,
    #[error("index i = {i} outside [0, {t}]")]
    IndexOutOfRange { i: usize, t: usize },
    #[error("x = {x} must lie strictly between 0 and 1")]
    XOutOfRange { x: String },
    #[error("window width must be at least 1")]
    ZeroWidth,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("j = {j} does not satisfy (j-1)/k < ceil(t/2)/(t+1) < (j+1)/k for k = {k}, d = {d}")]
    WindowNotSatisfied { k: usize, d: usize, j: i64 },
}

fn half_up(t: usize) -> usize {
    t.div_ceil(2)
}

fn pow(base: &Rational, e: usize) -> Rational {
    Pow::pow(base, e)
}

/// `f(t) = C(t, ⌊t/2⌋) · ⌈t/2⌉^⌈t/2⌉ · (⌊t/2⌋ + 1)^⌊t/2⌋ / (t + 1)^t`.
pub fn f_value(t: usize) -> Result<Rational, BoundsError> {
    if t == 0 {
        return Err(BoundsError::ZeroT);
    }
    let up = half_up(t);
    let down = t / 2;
    let num = binomial(t as u64, down as i64)
        * BigUint::from(up).pow(up as u32)
        * BigUint::from(down + 1).pow(down as u32);
    let den = BigUint::from(t + 1).pow(t as u32);
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// `a_i = C(t, i) · x^i · (1 - x)^(t - i)`.
pub fn a_coefficient(t: usize, i: usize, x: &Rational) -> Result<Rational, BoundsError> {
    if i > t {
        return Err(BoundsError::IndexOutOfRange { i, t });
    }
    if *x <= Rational::zero() || *x >= Rational::one() {
        return Err(BoundsError::XOutOfRange {
            x: rational::display(x),
        });
    }
    let y = Rational::one() - x;
    Ok(from_biguint(&binomial(t as u64, i as i64)) * pow(x, i) * pow(&y, t - i))
}

/// Largest sum of `width` consecutive entries of row `t` of Pascal's triangle;
/// the full row sum `2^t` once the window covers the row.
pub fn b_value(t: usize, width: usize) -> Result<BigUint, BoundsError> {
    if t == 0 {
        return Err(BoundsError::ZeroT);
    }
    if width == 0 {
        return Err(BoundsError::ZeroWidth);
    }
    if width > t {
        return Ok(BigUint::one() << t);
    }
    let row: Vec<BigUint> = (0..=t).map(|q| binomial(t as u64, q as i64)).collect();
    let best = row
        .windows(width)
        .map(|w| w.iter().sum::<BigUint>())
        .max()
        .expect("width <= t + 1");
    Ok(best)
}

/// `1 - f(t)`: the tight-cycle lower bound from the two-part construction.
pub fn thm14_lower_bound(t: usize) -> Result<Rational, BoundsError> {
    Ok(Rational::one() - f_value(t)?)
}

/// `1 - b(t, width) / 2^t`, with `width = k - ℓ`.
pub fn thm15_lower_bound(t: usize, width: usize) -> Result<Rational, BoundsError> {
    let b = b_value(t, width)?;
    Ok(Rational::one() - from_biguint(&b) / from_biguint(&(BigUint::one() << t)))
}

/// `⌈k/(k-ℓ)⌉`
pub fn a_upper(k: usize, ell: usize) -> usize {
    k.div_ceil(k - ell)
}

/// `⌊k/(k-ℓ)⌋`
pub fn a_lower(k: usize, ell: usize) -> usize {
    k / (k - ell)
}

fn check_k_ell_d(k: usize, ell: usize, d: usize) -> Result<(), BoundsError> {
    if k < 2 || ell == 0 || ell >= k || d == 0 || d >= k {
        return Err(BoundsError::OutOfRange(format!(
            "need 1 <= ell, d <= k - 1 (k = {k}, ell = {ell}, d = {d})"
        )));
    }
    Ok(())
}

/// Space-barrier bound `1 - (1 - 1/(a(k-ℓ)))^(k-d)`.
pub fn space_barrier_bound(k: usize, ell: usize, d: usize) -> Result<Rational, BoundsError> {
    check_k_ell_d(k, ell, d)?;
    let a = a_upper(k, ell);
    let base = Rational::one() - ratio(1, (a * (k - ell)) as i64);
    Ok(Rational::one() - pow(&base, k - d))
}

/// Conjectured perfect-matching ratio `max{1/2, 1 - (1 - 1/k)^(k-d)}`.
pub fn matching_conjecture_value(k: usize, d: usize) -> Result<Rational, BoundsError> {
    if k < 2 || d == 0 || d >= k {
        return Err(BoundsError::OutOfRange(format!(
            "need 1 <= d <= k - 1 (k = {k}, d = {d})"
        )));
    }
    let base = Rational::one() - ratio(1, k as i64);
    let value = Rational::one() - pow(&base, k - d);
    Ok(value.max(ratio(1, 2)))
}

/// `1/(3t/2 + 1) = 2/(3t + 2)`, the square of `1 - (1 - 1/√(3t/2+1))`.
pub fn sqrt_bound_gap_squared(t: usize) -> Rational {
    ratio(2, (3 * t + 2) as i64)
}

/// `f(t) < 1/√(3t/2 + 1)`, checked as `f(t)² (3t/2 + 1) < 1`.
pub fn sqrt_inequality_check(t: usize) -> Result<bool, BoundsError> {
    let f = f_value(t)?;
    let lhs = &f * &f * ratio((3 * t + 2) as i64, 2);
    Ok(lhs < Rational::one())
}

/// `C(2m, m) ≤ 2^(2m)/√(3m + 1)`, checked as `C(2m, m)² (3m + 1) ≤ 2^(4m)`.
pub fn central_binomial_fact_check(m: usize) -> Result<bool, BoundsError> {
    if m == 0 {
        return Err(BoundsError::OutOfRange("m must be at least 1".into()));
    }
    let c = binomial(2 * m as u64, m as i64);
    let lhs = &c * &c * BigUint::from(3 * m + 1);
    Ok(lhs <= BigUint::one() << (4 * m))
}

/// For `j` with `(j-1)/k < ⌈t/2⌉/(t+1) < (j+1)/k`, whether `j - d ≤ ⌈t/2⌉ ≤ j`.
/// A `j` outside that window is an error, not `false`.
pub fn fact_j_check(k: usize, d: usize, j: i64) -> Result<bool, BoundsError> {
    if k < 2 || d == 0 || d >= k {
        return Err(BoundsError::OutOfRange(format!(
            "need 1 <= d <= k - 1 (k = {k}, d = {d})"
        )));
    }
    let t = k - d;
    let up = half_up(t) as i64;
    let x = ratio(up, (t + 1) as i64);
    let lo = ratio(j - 1, k as i64);
    let hi = ratio(j + 1, k as i64);
    if !(lo < x && x < hi) {
        return Err(BoundsError::WindowNotSatisfied { k, d, j });
    }
    Ok(j - d as i64 <= up && up <= j)
}

/// Every `j` satisfying the strict window condition of [`fact_j_check`].
pub fn qualifying_js(k: usize, d: usize) -> Vec<i64> {
    let t = k - d;
    let x = ratio(half_up(t) as i64, (t + 1) as i64);
    // (j-1)/k < x < (j+1)/k  <=>  kx - 1 < j < kx + 1
    let kx = x * from_int(k as i64);
    let base = kx.floor().to_integer();
    let base: i64 = i64::try_from(base).expect("small");
    (base - 1..=base + 1)
        .filter(|&j| {
            let jr = from_int(j);
            kx.clone() - Rational::one() < jr && jr < kx.clone() + Rational::one()
        })
        .collect()
}

/// `f(t) < 1/2` and `f(t) < (1 - 1/k)^t` for `k ≥ 4`, `2 ≤ t ≤ k - 1`.
pub fn corollary_disproof_check(k: usize, t: usize) -> Result<bool, BoundsError> {
    if k < 4 || t < 2 || t >= k {
        return Err(BoundsError::OutOfRange(format!(
            "need k >= 4 and 2 <= t <= k - 1 (k = {k}, t = {t})"
        )));
    }
    let f = f_value(t)?;
    let base = Rational::one() - ratio(1, k as i64);
    Ok(f < ratio(1, 2) && f < pow(&base, t))
}

/// General upper bound `1 - 1/(c · k^(3k-3))` for a caller-supplied constant `c`.
/// The constant has no known value, so this is never asserted against anything.
pub fn gpw_upper_bound(k: usize, c: &Rational) -> Result<Rational, BoundsError> {
    if k < 2 || *c <= Rational::zero() {
        return Err(BoundsError::OutOfRange(
            "need k >= 2 and a positive constant c".into(),
        ));
    }
    let kpow = from_biguint(&BigUint::from(k).pow((3 * k - 3) as u32));
    Ok(Rational::one() - Rational::one() / (c * kpow))
}

/// Every bound for one `(k, ℓ, d)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: usize,
    pub ell: usize,
    pub d: usize,
    pub t: usize,
    #[serde(with = "rational::json")]
    pub f_t: Rational,
    #[serde(with = "rational::json_biguint")]
    pub b_window: BigUint,
    #[serde(with = "rational::json")]
    pub thm14_ratio: Rational,
    #[serde(with = "rational::json")]
    pub thm15_ratio: Rational,
    #[serde(with = "rational::json")]
    pub space_barrier_ratio: Rational,
    #[serde(with = "rational::json")]
    pub matching_conj_ratio: Rational,
    pub sqrt_bound: SqrtBound,
}

/// `1 - 1/√(3t/2 + 1)` is irrational; it is carried as the squared gap.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SqrtBound {
    pub irrational: bool,
    #[serde(with = "rational::json")]
    pub gap_squared: Rational,
    pub decimal: String,
}

impl BoundReport {
    pub fn new(k: usize, ell: usize, d: usize) -> Result<Self, BoundsError> {
        check_k_ell_d(k, ell, d)?;
        let t = k - d;
        let gap_squared = sqrt_bound_gap_squared(t);
        let approx = 1.0 - rational::to_f64(&gap_squared).sqrt();
        Ok(BoundReport {
            k,
            ell,
            d,
            t,
            f_t: f_value(t)?,
            b_window: b_value(t, k - ell)?,
            thm14_ratio: thm14_lower_bound(t)?,
            thm15_ratio: thm15_lower_bound(t, k - ell)?,
            space_barrier_ratio: space_barrier_bound(k, ell, d)?,
            matching_conj_ratio: matching_conjecture_value(k, d)?,
            sqrt_bound: SqrtBound {
                irrational: true,
                gap_squared,
                decimal: format!("{approx:.12}"),
            },
        })
    }

    /// The tight-cycle bound exceeds the conjectured matching threshold.
    pub fn beats_matching_conjecture(&self) -> bool {
        self.thm14_ratio > self.matching_conj_ratio
    }
}
