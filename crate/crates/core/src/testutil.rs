//! Test-only oracles, independent of the production evaluation paths.

/// Power-series evaluation of J_n(x):
///
/// ```text
/// J_n(x) = sum_{k>=0} (-1)^k (x/2)^{n+2k} / (k! (n+k)!)
/// ```
///
/// summed to machine convergence. Handles negative order by reflection and
/// negative argument through the signed leading term. Reliable for |x| up to
/// ~30, where cancellation stays bounded.
pub fn series_bessel_j(n: i32, x: f64) -> f64 {
    let n_abs = n.unsigned_abs();
    let sign = if n < 0 && (n_abs & 1) == 1 { -1.0 } else { 1.0 };
    let half = 0.5 * x;
    let mut term = 1.0_f64;
    for k in 1..=n_abs {
        term *= half / k as f64;
    }
    let mut sum = term;
    let mut k = 1.0_f64;
    while k < 600.0 {
        term *= -(half * half) / (k * (k + n_abs as f64));
        let next = sum + term;
        if next == sum {
            break;
        }
        sum = next;
        k += 1.0;
    }
    sign * sum
}
