//! Oracles shared by the integration suites; independent of the library's
//! evaluation paths.

/// Power-series evaluation of J_n(x) summed to machine convergence:
///
///     J_n(x) = sum_{k>=0} (-1)^k (x/2)^{n+2k} / (k! (n+k)!)
///
/// Negative order by reflection; negative argument through the signed
/// leading term. Trustworthy for |x| up to ~30.
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

/// Print the per-criterion verdict line and panic on failure.
pub fn check_criterion(number: u32, description: &str, pass: bool) {
    println!(
        "{}: criterion {number} - {description}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} failed: {description}");
}

/// Runtime budget check; debug builds get a 20x allowance.
pub fn check_runtime(number: u32, elapsed: std::time::Duration, budget_s: f64) {
    let cap = if cfg!(debug_assertions) {
        20.0 * budget_s
    } else {
        budget_s
    };
    println!(
        "      criterion {number} runtime: {:.3} s (budget {budget_s} s)",
        elapsed.as_secs_f64()
    );
    assert!(
        elapsed.as_secs_f64() < cap,
        "criterion {number} exceeded its runtime budget: {:.3} s > {cap} s",
        elapsed.as_secs_f64()
    );
}
