//! Integer-order Bessel functions of the first kind, J_n(x).
//!
//! Everything downstream (sideband weights, AC-Stark coefficients, projection
//! cross-checks) leans on this module, and it has to stay accurate for orders
//! and arguments up to ~10^4 and beyond. Upward recurrence loses all digits
//! once n > x, so evaluation runs Miller's downward recurrence from a start
//! order safely above both the requested order and the turning point n ~ x,
//! and normalizes the raw row with the identity
//!
//! ```text
//! J_0(x) + 2 * sum_{k >= 1} J_{2k}(x) = 1.
//! ```
//!
//! Negative orders come from the reflection J_{-n}(x) = (-1)^n J_n(x).

use crate::error::{Error, Result};

/// Magnitudes below this are stored as exact zero. Weights this small never
/// register at any tolerance used downstream.
pub const UNDERFLOW_CUTOFF: f64 = 1e-300;

/// Largest supported |order|.
pub const MAX_ORDER: i32 = 1_000_000;

/// Rescaling keeps the raw recurrence values inside f64 range; the recurrence
/// multiplier 2n/x stays below ~2e14 for x >= TINY_ARGUMENT, so values capped
/// at 1e250 cannot overflow in a single step.
const RESCALE_THRESHOLD: f64 = 1e250;
const RESCALE: f64 = 1e-250;
const SEED: f64 = 1e-30;

/// Below this argument the recurrence multiplier grows unbounded; the leading
/// series term (x/2)^n / n! is already exact to ~1e-17 relative there.
const TINY_ARGUMENT: f64 = 1e-8;

/// A table of J_n(x) over the contiguous order range [-n_hi, n_hi].
///
/// Only non-negative orders are stored; negative orders are reconstructed by
/// reflection, so that identity holds exactly by construction.
#[derive(Debug, Clone)]
pub struct BesselTable {
    argument: f64,
    n_hi: u32,
    non_negative: Vec<f64>,
}

impl BesselTable {
    pub fn argument(&self) -> f64 {
        self.argument
    }

    /// Largest tabulated order; the table spans [-n_hi, n_hi].
    pub fn order_limit(&self) -> u32 {
        self.n_hi
    }

    /// J_n(x) from the table. Orders beyond the tabulated range are fully
    /// suppressed at this range choice and read as 0.
    pub fn value(&self, n: i32) -> f64 {
        let a = n.unsigned_abs();
        if a > self.n_hi {
            return 0.0;
        }
        let v = self.non_negative[a as usize];
        if n < 0 && (a & 1) == 1 {
            -v
        } else {
            v
        }
    }

    /// Iterate (order, value) over the full range [-n_hi, n_hi].
    pub fn orders(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        let hi = self.n_hi as i32;
        (-hi..=hi).map(move |n| (n, self.value(n)))
    }
}

/// J_n(x) for integer n and x >= 0.
///
/// Relative accuracy is ~1e-12 or better wherever |J_n| is representable;
/// magnitudes below [`UNDERFLOW_CUTOFF`] collapse to exact 0.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    check_argument(x)?;
    if n.unsigned_abs() > MAX_ORDER as u32 {
        return Err(Error::invalid(
            "n",
            format!("order magnitude {} exceeds {}", n.unsigned_abs(), MAX_ORDER),
        ));
    }
    let a = n.unsigned_abs();
    let v = j_non_negative(a, x);
    Ok(reflect(n, v))
}

/// The full table of J_n(x) for n in [-n_hi, n_hi].
pub fn bessel_row(x: f64, n_hi: u32) -> Result<BesselTable> {
    check_argument(x)?;
    if n_hi > MAX_ORDER as u32 {
        return Err(Error::invalid(
            "n_hi",
            format!("order limit {} exceeds {}", n_hi, MAX_ORDER),
        ));
    }
    let non_negative = if x == 0.0 {
        let mut v = vec![0.0; n_hi as usize + 1];
        v[0] = 1.0;
        v
    } else if x <= TINY_ARGUMENT {
        leading_terms(n_hi, x)
    } else {
        miller_row(n_hi, x)
    };
    Ok(BesselTable {
        argument: x,
        n_hi,
        non_negative,
    })
}

/// J_n(x) for a possibly negative real argument, via J_n(-x) = (-1)^n J_n(x).
/// Internal: the public contract of this module is x >= 0.
pub(crate) fn bessel_j_signed(n: i32, x: f64) -> Result<f64> {
    let v = bessel_j(n, x.abs())?;
    Ok(if x < 0.0 && (n.unsigned_abs() & 1) == 1 {
        -v
    } else {
        v
    })
}

fn check_argument(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::invalid("x", format!("argument must be finite, got {x}")));
    }
    if x < 0.0 {
        return Err(Error::invalid(
            "x",
            format!("argument must be non-negative, got {x}"),
        ));
    }
    Ok(())
}

fn reflect(n: i32, v: f64) -> f64 {
    if n < 0 && (n.unsigned_abs() & 1) == 1 {
        -v
    } else {
        v
    }
}

fn clamp_underflow(v: f64) -> f64 {
    if v.abs() < UNDERFLOW_CUTOFF {
        0.0
    } else {
        v
    }
}

/// Downward recurrence must start above both the requested order and the
/// turning point n ~ x, with a buffer in which the minimal solution decays
/// enough to wash out the arbitrary seed.
fn miller_start(n_hi: u32, x: f64) -> u32 {
    let buffer = (40.0 * x.cbrt().max(1.0)).ceil() as u32;
    n_hi.max(x.ceil() as u32) + buffer
}

/// J_n(x) ~ (x/2)^n / n! for x -> 0; the next series term is down by
/// (x/2)^2/(n+1), i.e. below 1e-17 relative for x <= TINY_ARGUMENT.
fn leading_term(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut v = 1.0;
    for k in 1..=n {
        v *= half / k as f64;
        if v == 0.0 {
            break;
        }
    }
    clamp_underflow(v)
}

fn leading_terms(n_hi: u32, x: f64) -> Vec<f64> {
    (0..=n_hi).map(|n| leading_term(n, x)).collect()
}

fn kahan_add(sum: &mut f64, comp: &mut f64, term: f64) {
    let y = term - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

fn j_non_negative(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x <= TINY_ARGUMENT {
        return leading_term(n, x);
    }

    let start = miller_start(n, x);
    let mut f_next = 0.0_f64; // f_{m+1}
    let mut f = SEED; // f_m
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut target = f64::NAN;
    let mut m = start;
    loop {
        if m == n {
            target = f;
        }
        if m == 0 {
            kahan_add(&mut sum, &mut comp, f);
            break;
        }
        if m & 1 == 0 {
            kahan_add(&mut sum, &mut comp, 2.0 * f);
        }
        let f_prev = (2.0 * m as f64 / x) * f - f_next;
        f_next = f;
        f = f_prev;
        if f.abs() >= RESCALE_THRESHOLD {
            f *= RESCALE;
            f_next *= RESCALE;
            sum *= RESCALE;
            comp *= RESCALE;
            if !target.is_nan() {
                target *= RESCALE;
            }
        }
        m -= 1;
    }
    clamp_underflow(target / sum)
}

/// One downward pass producing all orders 0..=n_hi at once.
///
/// Stored raw values lag behind later rescalings; each entry records the
/// rescale generation at store time and catches up at the end. An entry more
/// than a couple of generations behind underflows to zero, which is correct:
/// its true magnitude is then hundreds of decades below the running maximum.
fn miller_row(n_hi: u32, x: f64) -> Vec<f64> {
    let start = miller_start(n_hi, x);
    let len = n_hi as usize + 1;
    let mut stored = vec![0.0_f64; len];
    let mut stored_gen = vec![0u32; len];
    let mut generation = 0u32;

    let mut f_next = 0.0_f64;
    let mut f = SEED;
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut m = start;
    loop {
        if m <= n_hi {
            stored[m as usize] = f;
            stored_gen[m as usize] = generation;
        }
        if m == 0 {
            kahan_add(&mut sum, &mut comp, f);
            break;
        }
        if m & 1 == 0 {
            kahan_add(&mut sum, &mut comp, 2.0 * f);
        }
        let f_prev = (2.0 * m as f64 / x) * f - f_next;
        f_next = f;
        f = f_prev;
        if f.abs() >= RESCALE_THRESHOLD {
            f *= RESCALE;
            f_next *= RESCALE;
            sum *= RESCALE;
            comp *= RESCALE;
            generation += 1;
        }
        m -= 1;
    }

    for (v, gen) in stored.iter_mut().zip(stored_gen) {
        for _ in gen..generation {
            *v *= RESCALE;
            if *v == 0.0 {
                break;
            }
        }
        *v = clamp_underflow(*v / sum);
    }
    stored
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::series_bessel_j;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const SAMPLE_ARGUMENTS: [f64; 5] = [0.5, 2.0, 50.0, 1000.0, 1e4];

    fn coverage_limit(x: f64) -> u32 {
        (x + 40.0 * x.cbrt().max(1.0)).ceil() as u32
    }

    #[test]
    fn order_zero_at_origin_is_one() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn nonzero_order_at_origin_is_zero() {
        assert_eq!(bessel_j(5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn frozen_value_order_one_at_two() {
        // power-series oracle sum_k (-1)^k (x/2)^{2k+1} / (k!(k+1)!)
        assert_relative_eq!(
            bessel_j(1, 2.0).unwrap(),
            0.5767248077568734,
            max_relative = 1e-12
        );
    }

    #[test]
    fn reflection_of_order_one_at_two() {
        assert_eq!(bessel_j(-1, 2.0).unwrap(), -bessel_j(1, 2.0).unwrap());
        assert_relative_eq!(
            bessel_j(-1, 2.0).unwrap(),
            -0.5767248077568734,
            max_relative = 1e-12
        );
    }

    #[test]
    fn non_finite_argument_is_rejected() {
        assert!(bessel_j(0, f64::NAN).is_err());
        assert!(bessel_j(0, f64::INFINITY).is_err());
        assert!(bessel_row(f64::NAN, 10).is_err());
    }

    #[test]
    fn negative_argument_is_rejected() {
        assert!(bessel_j(0, -1.0).is_err());
    }

    #[test]
    fn order_beyond_limit_is_rejected() {
        assert!(bessel_j(MAX_ORDER + 1, 1.0).is_err());
    }

    #[test]
    fn row_at_zero_argument() {
        let table = bessel_row(0.0, 3).unwrap();
        for (n, v) in table.orders() {
            assert_eq!(v, if n == 0 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn row_peak_location_at_large_argument() {
        // |J_n(1000)| over the table peaks just below the turning point.
        let table = bessel_row(1000.0, 1200).unwrap();
        let (n_star, _) = table
            .orders()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap();
        assert!(
            (970..=1000).contains(&n_star.abs()),
            "peak order {n_star} outside [970, 1000]"
        );
    }

    #[test]
    fn row_matches_series_oracle() {
        let table = bessel_row(2.0, 8).unwrap();
        for (n, v) in table.orders() {
            let expect = series_bessel_j(n, 2.0);
            assert_relative_eq!(v, expect, max_relative = 1e-12, epsilon = 1e-300);
        }
    }

    #[test]
    fn pointwise_matches_series_oracle_small_arguments() {
        // the oracle is fully accurate below x ~ 2 where its terms never
        // exceed 1; larger x costs it digits through alternating-term
        // cancellation (condition ~ max_term/|J| ~ 2.8e3 at x = 10), so the
        // comparison there carries a matching absolute allowance
        for &x in &[0.1, 0.5, 2.0] {
            for n in -15..=15 {
                let got = bessel_j(n, x).unwrap();
                let expect = series_bessel_j(n, x);
                assert_relative_eq!(got, expect, max_relative = 1e-12, epsilon = 1e-250);
            }
        }
        for &x in &[5.0, 10.0] {
            for n in -15..=15 {
                let got = bessel_j(n, x).unwrap();
                let expect = series_bessel_j(n, x);
                assert!(
                    (got - expect).abs() <= 1e-12 * (1.0 + expect.abs()),
                    "J_{n}({x}): {got} vs oracle {expect}"
                );
            }
        }
    }

    #[test]
    fn row_matches_pointwise_evaluation() {
        for &x in &[0.5, 2.0, 50.0, 1000.0] {
            let n_hi = coverage_limit(x).max(20);
            let table = bessel_row(x, n_hi).unwrap();
            for n in (-(n_hi as i32)..=n_hi as i32).step_by(7) {
                let pointwise = bessel_j(n, x).unwrap();
                assert_relative_eq!(
                    table.value(n),
                    pointwise,
                    max_relative = 1e-12,
                    epsilon = 1e-280
                );
            }
        }
    }

    #[test]
    fn three_term_recurrence_residual() {
        for &x in &SAMPLE_ARGUMENTS {
            let n_hi = coverage_limit(x);
            let table = bessel_row(x, n_hi).unwrap();
            for n in 1..n_hi as i32 {
                let (jm, j0, jp) = (table.value(n - 1), table.value(n), table.value(n + 1));
                if j0.abs() <= 1e-30 {
                    continue;
                }
                let lhs = jm + jp;
                let rhs = 2.0 * n as f64 / x * j0;
                let scale = jm.abs().max(jp.abs()).max(rhs.abs());
                assert!(
                    (lhs - rhs).abs() <= 1e-9 * scale,
                    "recurrence residual at n={n}, x={x}: {} vs {}",
                    lhs,
                    rhs
                );
            }
        }
    }

    #[test]
    fn normalization_identity() {
        for &x in &SAMPLE_ARGUMENTS {
            let table = bessel_row(x, coverage_limit(x)).unwrap();
            let mut sum = table.value(0);
            let mut n = 2;
            while n <= table.order_limit() as i32 {
                sum += 2.0 * table.value(n);
                n += 2;
            }
            assert!(
                (sum - 1.0).abs() < 1e-10,
                "normalization at x={x}: sum = {sum}"
            );
        }
    }

    #[test]
    fn squared_norm_identity() {
        // J_0^2 + 2 sum J_n^2 = 1; independent of the even-order sum used for
        // the internal normalization.
        for &x in &SAMPLE_ARGUMENTS {
            let table = bessel_row(x, coverage_limit(x)).unwrap();
            let mut sum = table.value(0).powi(2);
            for n in 1..=table.order_limit() as i32 {
                sum += 2.0 * table.value(n).powi(2);
            }
            assert!((sum - 1.0).abs() < 1e-10, "squared norm at x={x}: {sum}");
        }
    }

    #[test]
    fn deep_tail_underflows_to_zero() {
        // far beyond the turning point the true value is below 1e-300
        assert_eq!(bessel_j(1000, 2.0).unwrap(), 0.0);
        assert_eq!(bessel_j(100_000, 50.0).unwrap(), 0.0);
    }

    #[test]
    fn large_order_near_turning_point() {
        // J_{n}(n) scales like n^{-1/3}; stays well clear of underflow
        let v = bessel_j(10_000, 1e4).unwrap();
        assert!(v.abs() > 1e-3, "J_10000(1e4) = {v}");
    }

    #[test]
    fn tiny_argument_leading_term() {
        let x = 1e-12;
        assert_relative_eq!(bessel_j(0, x).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(1, x).unwrap(), x / 2.0, max_relative = 1e-14);
        assert_relative_eq!(
            bessel_j(2, x).unwrap(),
            x * x / 8.0,
            max_relative = 1e-14
        );
    }

    proptest! {
        #[test]
        fn reflection_identity_everywhere(n in -300i32..300, x in 0.0f64..200.0) {
            let plus = bessel_j(n, x).unwrap();
            let minus = bessel_j(-n, x).unwrap();
            let expect = if n.unsigned_abs() & 1 == 1 { -plus } else { plus };
            prop_assert_eq!(minus, expect);
        }

        #[test]
        fn recurrence_holds_for_random_arguments(x in 0.01f64..500.0) {
            let n_hi = coverage_limit(x);
            let table = bessel_row(x, n_hi).unwrap();
            for n in 1..n_hi as i32 {
                let j0 = table.value(n);
                if j0.abs() <= 1e-30 {
                    continue;
                }
                let lhs = table.value(n - 1) + table.value(n + 1);
                let rhs = 2.0 * n as f64 / x * j0;
                let scale = table.value(n - 1).abs().max(rhs.abs()).max(1e-300);
                prop_assert!((lhs - rhs).abs() <= 1e-9 * scale);
            }
        }

        #[test]
        fn normalization_holds_for_random_arguments(x in 0.0f64..300.0) {
            let table = bessel_row(x, coverage_limit(x)).unwrap();
            let mut sum = table.value(0);
            let mut n = 2;
            while n <= table.order_limit() as i32 {
                sum += 2.0 * table.value(n);
                n += 2;
            }
            prop_assert!((sum - 1.0).abs() < 1e-10);
        }
    }
}
