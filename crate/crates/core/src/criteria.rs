//! Closed-form winning criteria and box-count thresholds.
//!
//! Every threshold is computed in exact integer arithmetic; overflow is an
//! error, never a wrap. The only irrational quantity involved, `e^{k/p}`, is
//! compared through certified rational bounds on `e`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::engine::{Bias, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("{0} overflows a 64-bit integer")]
    Overflow(&'static str),
    #[error("parameters must be positive")]
    NonPositive,
    #[error("the monotone Avoider threshold needs k > p (got p={p}, k={k})")]
    KNotAboveP { p: u32, k: u32 },
    #[error("the monotone Avoider threshold needs q >= k*p (got p={p}, q={q}, k={k})")]
    QBelowKp { p: u32, q: u32, k: u32 },
    #[error("estimates exist only for p = 1 or q = 1 (got p={p}, q={q})")]
    NoEstimate { p: u32, q: u32 },
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Largest `k <= b1` with `gcd(p+q, k) > p`, if any. Such a `k` guarantees
/// Avoider a win in the strict game whenever every box has size at least `k`.
pub fn gcd_avoider_witness(p: u32, q: u32, b1: u32) -> Option<u32> {
    let s = u64::from(p) + u64::from(q);
    (1..=b1).rev().find(|&k| gcd(s, u64::from(k)) > u64::from(p))
}

/// True iff `gcd(p+q, l) <= p` for every `1 <= l <= k`.
pub fn enforcer_gcd_condition(p: u32, q: u32, k: u32) -> bool {
    let s = u64::from(p) + u64::from(q);
    (1..=k).all(|l| gcd(s, u64::from(l)) <= u64::from(p))
}

/// Potential (Erdős–Selfridge type) sufficient condition for an Avoider win.
///
/// With `w = p/(p+1)`: if Avoider makes the last move the sum of `w^|F|` must
/// stay below `w^p`, otherwise below 1. Evaluated exactly by clearing the
/// common denominator `(p+1)^M`.
pub fn potential_criterion(sizes: &[u32], p: u32, avoider_last: bool) -> bool {
    let max_size = sizes.iter().copied().max().unwrap_or(0);
    let m = max_size.max(p);
    let pb = BigUint::from(p);
    let p1 = BigUint::from(p) + 1u32;
    // sum_F p^|F| (p+1)^(M-|F|)  vs  p^p (p+1)^(M-p)  or  (p+1)^M
    let lhs: BigUint = sizes
        .iter()
        .map(|&s| pb.pow(s) * p1.pow(m - s))
        .sum();
    let rhs = if avoider_last {
        pb.pow(p) * p1.pow(m - p)
    } else {
        p1.pow(m)
    };
    lhs < rhs
}

/// Player who makes the last move of a strict game on `elements` elements.
/// Strict move sizes are forced, so this is determined by the start.
pub fn strict_last_mover(elements: u64, bias: Bias, first: Side) -> Side {
    let (a, b) = match first {
        Side::Avoider => (bias.p(), bias.q()),
        Side::Enforcer => (bias.q(), bias.p()),
    };
    let round = u64::from(a) + u64::from(b);
    let rem = elements % round;
    if elements == 0 {
        return first.other();
    }
    if rem == 0 || rem > u64::from(a) {
        first.other()
    } else {
        first
    }
}

/// Which threshold definition to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdRegime {
    StrictEnforcer,
    MonotoneAvoider,
    MonotoneEnforcer,
}

pub fn threshold(regime: ThresholdRegime, p: u32, q: u32, k: u32) -> Result<u64, CriteriaError> {
    match regime {
        ThresholdRegime::StrictEnforcer => n_strict(p, q, k),
        ThresholdRegime::MonotoneAvoider => n_mono_avoider(p, q, k),
        ThresholdRegime::MonotoneEnforcer => n_mono_enforcer(p, q, k),
    }
}

fn check_positive(p: u32, q: u32, k: u32) -> Result<(), CriteriaError> {
    if p == 0 || q == 0 || k == 0 {
        Err(CriteriaError::NonPositive)
    } else {
        Ok(())
    }
}

/// Number of boxes of size at most `k` that suffices for an Enforcer win under
/// strict rules: `(q+1)(⌈q/p⌉+3)^(k-1)` for `k <= p`, `(2(p+q+1))^k` above.
pub fn n_strict(p: u32, q: u32, k: u32) -> Result<u64, CriteriaError> {
    check_positive(p, q, k)?;
    let (p, q) = (u64::from(p), u64::from(q));
    let overflow = || CriteriaError::Overflow("strict threshold");
    if u64::from(k) <= p {
        let base = ceil_div(q, p) + 3;
        base.checked_pow(k - 1)
            .and_then(|x| x.checked_mul(q + 1))
            .ok_or_else(overflow)
    } else {
        (2 * (p + q + 1)).checked_pow(k).ok_or_else(overflow)
    }
}

/// Largest number of boxes (of size at least `k`) against which Avoider's
/// monotone strategy is guaranteed to win: `q` for `k = p+1`, otherwise
/// `⌊(q-p)(q/(kp)+1)^(k-p-1)⌋` evaluated in exact rationals.
pub fn n_mono_avoider(p: u32, q: u32, k: u32) -> Result<u64, CriteriaError> {
    check_positive(p, q, k)?;
    if k <= p {
        return Err(CriteriaError::KNotAboveP { p, k });
    }
    if u64::from(q) < u64::from(k) * u64::from(p) {
        return Err(CriteriaError::QBelowKp { p, q, k });
    }
    if k == p + 1 {
        return Ok(u64::from(q));
    }
    mono_avoider_closed_form(p, q, k)
}

/// The single closed-form bound `⌊(q-p)(q/(kp)+1)^(k-p-1)⌋` for any `k >= p+1`.
/// Equals [`n_mono_avoider`] except at `k = p+1`, where it gives `q-p`.
pub fn n_mono_avoider_statement_bound(p: u32, q: u32, k: u32) -> Result<u64, CriteriaError> {
    check_positive(p, q, k)?;
    if k <= p {
        return Err(CriteriaError::KNotAboveP { p, k });
    }
    if u64::from(q) < u64::from(k) * u64::from(p) {
        return Err(CriteriaError::QBelowKp { p, q, k });
    }
    mono_avoider_closed_form(p, q, k)
}

fn mono_avoider_closed_form(p: u32, q: u32, k: u32) -> Result<u64, CriteriaError> {
    let e = k - p - 1;
    let kp = BigUint::from(k) * p;
    let num = BigUint::from(q - p) * (BigUint::from(q) + &kp).pow(e);
    let den = kp.pow(e);
    (num / den)
        .to_u64()
        .ok_or(CriteriaError::Overflow("monotone Avoider threshold"))
}

/// Number of boxes with average size at most `k` that suffices for an
/// Enforcer win under monotone rules:
/// `q+1` for `k <= p`, `q+1+⌈q/k⌉` for `k = p+1`, and
/// `⌈N(k-1)/p⌉ (p + ⌈q/k⌉)` above.
pub fn n_mono_enforcer(p: u32, q: u32, k: u32) -> Result<u64, CriteriaError> {
    check_positive(p, q, k)?;
    let (p64, q64) = (u64::from(p), u64::from(q));
    if k <= p {
        return Ok(q64 + 1);
    }
    let mut n = q64 + 1 + ceil_div(q64, u64::from(p + 1));
    for l in (p + 2)..=k {
        n = ceil_div(n, p64)
            .checked_mul(p64 + ceil_div(q64, u64::from(l)))
            .ok_or(CriteriaError::Overflow("monotone Enforcer threshold"))?;
    }
    Ok(n)
}

/// Which closed-form estimate was compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimateKind {
    /// `(1+q)^k`, for `p = 1`.
    PowerBound(u64),
    /// `1 + e^{k/p}`, for `q = 1`.
    ExpBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateBounds {
    pub recursion_value: u64,
    /// The bound as a float, for display only. `holds` never uses it.
    pub bound_value: f64,
    pub kind: EstimateKind,
    pub holds: bool,
}

/// Compares the monotone Enforcer recursion with its closed-form estimate:
/// `N(1,q,k) <= (1+q)^k` and `N(p,1,k) <= 1 + e^{k/p}`. When both `p` and
/// `q` are 1 the power bound is used.
pub fn estimate_bounds(p: u32, q: u32, k: u32) -> Result<EstimateBounds, CriteriaError> {
    let n = n_mono_enforcer(p, q, k)?;
    if p == 1 {
        let bound = (1 + u64::from(q))
            .checked_pow(k)
            .ok_or(CriteriaError::Overflow("(1+q)^k"))?;
        Ok(EstimateBounds {
            recursion_value: n,
            bound_value: bound as f64,
            kind: EstimateKind::PowerBound(bound),
            holds: n <= bound,
        })
    } else if q == 1 {
        Ok(EstimateBounds {
            recursion_value: n,
            bound_value: 1.0 + (f64::from(k) / f64::from(p)).exp(),
            kind: EstimateKind::ExpBound,
            holds: at_most_one_plus_exp(n, k, p),
        })
    } else {
        Err(CriteriaError::NoEstimate { p, q })
    }
}

/// Rational enclosure `lo < e < hi` from the Taylor series truncated after
/// `terms` terms: `lo = Σ_{i<=terms} 1/i!`, `hi = lo + 1/(terms·terms!)`.
/// Returned as numerators over the common denominator `terms!`.
fn e_enclosure(terms: u32) -> (BigUint, BigUint, BigUint) {
    let mut factorial = BigUint::one();
    for i in 1..=terms {
        factorial *= i;
    }
    // Σ terms!/i!
    let mut lo = BigUint::zero();
    let mut tail = BigUint::one();
    for i in (0..=terms).rev() {
        lo += &tail;
        tail *= i.max(1);
    }
    // hi = lo + 1/(terms * terms!) ; over denominator terms * terms!
    let den = &factorial * terms;
    let hi_num = &lo * terms + 1u32;
    (lo * terms, hi_num, den)
}

/// Decides `n <= 1 + e^{k/p}` exactly, i.e. `(n-1)^p <= e^k`.
pub fn at_most_one_plus_exp(n: u64, k: u32, p: u32) -> bool {
    if n <= 1 {
        return true;
    }
    let lhs = BigUint::from(n - 1).pow(p);
    let mut terms = 20;
    loop {
        let (lo, hi, den) = e_enclosure(terms);
        let scale = den.pow(k);
        // lo^k/den^k < e^k < hi^k/den^k
        if &lhs * &scale <= lo.pow(k) {
            return true;
        }
        if &lhs * &scale >= hi.pow(k) {
            return false;
        }
        terms *= 2;
    }
}

/// Exact test that the mean of `sizes` is at most `k`.
pub fn mean_at_most(sizes: &[u32], k: u32) -> bool {
    let sum: u64 = sizes.iter().map(|&s| u64::from(s)).sum();
    sum <= u64::from(k) * sizes.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn witness_examples() {
        assert_eq!(gcd_avoider_witness(1, 1, 2), Some(2));
        assert_eq!(gcd_avoider_witness(1, 2, 2), None);
        assert_eq!(gcd_avoider_witness(2, 2, 4), Some(4));
        assert_eq!(gcd_avoider_witness(1, 1, 5), Some(4));
    }

    #[test]
    fn enforcer_condition_examples() {
        assert!(enforcer_gcd_condition(1, 2, 2));
        assert!(!enforcer_gcd_condition(1, 1, 2));
        assert!(enforcer_gcd_condition(2, 2, 2));
        assert!(!enforcer_gcd_condition(2, 2, 4));
    }

    #[test]
    fn potential_examples() {
        assert!(potential_criterion(&[4; 15], 1, false));
        assert!(!potential_criterion(&[4; 16], 1, false));
        assert!(potential_criterion(&[4; 7], 1, true));
        assert!(!potential_criterion(&[4; 8], 1, true));
    }

    #[test]
    fn strict_threshold_examples() {
        assert_eq!(n_strict(1, 1, 1), Ok(2));
        assert_eq!(n_strict(1, 2, 2), Ok(64));
        assert_eq!(n_strict(2, 3, 1), Ok(4));
        assert_eq!(n_strict(3, 3, 3), Ok(4 * 16));
        assert!(matches!(n_strict(5, 5, 40), Err(CriteriaError::Overflow(_))));
    }

    #[test]
    fn mono_avoider_examples() {
        assert_eq!(n_mono_avoider(1, 2, 2), Ok(2));
        assert_eq!(n_mono_avoider(1, 3, 3), Ok(4));
        assert_eq!(n_mono_avoider(1, 4, 3), Ok(7));
        assert_eq!(n_mono_avoider_statement_bound(1, 2, 2), Ok(1));
        assert_eq!(n_mono_avoider_statement_bound(1, 4, 3), Ok(7));
        assert!(matches!(n_mono_avoider(2, 5, 2), Err(CriteriaError::KNotAboveP { .. })));
        assert!(matches!(n_mono_avoider(1, 2, 3), Err(CriteriaError::QBelowKp { .. })));
    }

    #[test]
    fn mono_avoider_floors_non_integral_values() {
        // (5-1)(5/4+1)^2 = 4 * 81/16 = 20.25
        assert_eq!(n_mono_avoider(1, 5, 4), Ok(20));
    }

    #[test]
    fn mono_enforcer_examples() {
        assert_eq!(n_mono_enforcer(1, 2, 1), Ok(3));
        assert_eq!(n_mono_enforcer(1, 2, 2), Ok(4));
        assert_eq!(n_mono_enforcer(1, 2, 3), Ok(8));
        assert_eq!(n_mono_enforcer(2, 1, 4), Ok(6));
    }

    #[test]
    fn estimate_examples() {
        let e = estimate_bounds(1, 2, 3).unwrap();
        assert_eq!((e.recursion_value, e.kind, e.holds), (8, EstimateKind::PowerBound(27), true));
        let e = estimate_bounds(1, 1, 1).unwrap();
        assert_eq!((e.recursion_value, e.kind, e.holds), (2, EstimateKind::PowerBound(2), true));
        let e = estimate_bounds(2, 1, 4).unwrap();
        assert_eq!(e.recursion_value, 6);
        assert_eq!(e.kind, EstimateKind::ExpBound);
        assert!((e.bound_value - (1.0 + 2f64.exp())).abs() < 1e-12);
        assert!(e.holds);
        assert!(estimate_bounds(2, 2, 3).is_err());
    }

    #[test]
    fn exp_comparison_is_exact_near_the_boundary() {
        // 1 + e^2 = 8.389...
        assert!(at_most_one_plus_exp(8, 2, 1));
        assert!(!at_most_one_plus_exp(9, 2, 1));
        // 1 + e^{7/5} = 5.055...
        assert!(at_most_one_plus_exp(5, 7, 5));
        assert!(!at_most_one_plus_exp(6, 7, 5));
    }

    #[test]
    fn recursion_exceeds_exp_estimate_for_larger_p() {
        // The recursion for q = 1 grows like (p+1)^{k/p}/p^{...}; for p >= 3 it
        // overtakes 1 + e^{k/p} at k = 7.
        assert_eq!(n_mono_enforcer(5, 1, 7), Ok(6));
        assert!(!estimate_bounds(5, 1, 7).unwrap().holds);
        assert_eq!(n_mono_enforcer(3, 1, 7), Ok(12));
        assert!(!estimate_bounds(3, 1, 7).unwrap().holds);
    }

    #[test]
    fn strict_last_mover_matches_simulation() {
        for p in 1..=3 {
            for q in 1..=3 {
                let bias = Bias::new(p, q).unwrap();
                for first in [Side::Avoider, Side::Enforcer] {
                    for e in 1..40u64 {
                        let mut rem = e;
                        let mut side = first;
                        let last = loop {
                            let take = u64::from(bias.of(side)).min(rem);
                            rem -= take;
                            if rem == 0 {
                                break side;
                            }
                            side = side.other();
                        };
                        assert_eq!(strict_last_mover(e, bias, first), last, "p={p} q={q} e={e}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn power_estimate_always_holds(q in 1u32..=5, k in 1u32..=8) {
            prop_assert!(estimate_bounds(1, q, k).unwrap().holds);
        }

        #[test]
        fn witness_dichotomy_on_uniform_sizes(p in 1u32..=6, q in 1u32..=6, k in 1u32..=12) {
            let witness_at_most_k = gcd_avoider_witness(p, q, k).is_some();
            prop_assert_eq!(witness_at_most_k, !enforcer_gcd_condition(p, q, k));
        }

        #[test]
        fn potential_is_monotone_under_box_removal(
            sizes in proptest::collection::vec(1u32..=8, 1..12),
            p in 1u32..=4,
            avoider_last in any::<bool>(),
            drop in any::<prop::sample::Index>(),
        ) {
            let mut smaller = sizes.clone();
            smaller.remove(drop.index(sizes.len()));
            if potential_criterion(&sizes, p, avoider_last) {
                prop_assert!(potential_criterion(&smaller, p, avoider_last));
            }
        }

        #[test]
        fn potential_matches_float_away_from_ties(
            sizes in proptest::collection::vec(1u32..=8, 1..10),
            p in 1u32..=4,
            avoider_last in any::<bool>(),
        ) {
            let w = f64::from(p) / f64::from(p + 1);
            let lhs: f64 = sizes.iter().map(|&s| w.powi(s as i32)).sum();
            let rhs = if avoider_last { w.powi(p as i32) } else { 1.0 };
            prop_assume!((lhs - rhs).abs() > 1e-9);
            prop_assert_eq!(potential_criterion(&sizes, p, avoider_last), lhs < rhs);
        }

        #[test]
        fn mono_avoider_step_inequality(p in 1u32..=3, extra in 0u32..=6, k_off in 2u32..=5) {
            // p + N(k)/(q/(kp)+1) <= N(k-1), the step the strategy relies on.
            let k = p + k_off;
            let q = k * p + extra;
            let nk = n_mono_avoider(p, q, k).unwrap() as f64;
            let nk1 = n_mono_avoider(p, q, k - 1).unwrap() as f64;
            let ratio = f64::from(q) / f64::from(k * p) + 1.0;
            prop_assert!(f64::from(p) + nk / ratio <= nk1 + 1.0);
        }
    }
}
