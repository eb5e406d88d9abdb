use crate::error::{Error, Result};
use crate::solvers::Variant;

fn check_eps(epsilon: f64) -> Result<()> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("distortion must lie in [0, 1), got {epsilon}")));
    }
    Ok(())
}

/// `alpha = (1 - eps^2)^2 / (1 + eps^2)`, `beta = 0`.
pub fn damping_params(epsilon: f64) -> Result<(f64, f64)> {
    check_eps(epsilon)?;
    let e2 = epsilon * epsilon;
    Ok(((1.0 - e2) * (1.0 - e2) / (1.0 + e2), 0.0))
}

/// `alpha = (1 - eps^2)^2`, `beta = eps^2`.
pub fn momentum_params(epsilon: f64) -> Result<(f64, f64)> {
    check_eps(epsilon)?;
    let e2 = epsilon * epsilon;
    Ok(((1.0 - e2) * (1.0 - e2), e2))
}

/// Step parameters `(alpha, beta)` of a variant; basic is `(1, 0)`.
pub fn step_params(variant: Variant, epsilon: f64) -> Result<(f64, f64)> {
    match variant {
        Variant::Basic => Ok((1.0, 0.0)),
        Variant::Damped => damping_params(epsilon),
        Variant::Momentum => momentum_params(epsilon),
    }
}

/// Contraction rate of basic iterative sketching,
/// `(2 - eps) eps / (1 - eps)^2`. It reaches 1 at `eps = 1 - 1/sqrt 2`.
///
/// ```
/// use itsketch::solvers::rate_g_is;
/// assert!((rate_g_is(0.1).unwrap() - 0.19 / 0.81).abs() < 1e-15);
/// ```
pub fn rate_g_is(epsilon: f64) -> Result<f64> {
    check_eps(epsilon)?;
    Ok((2.0 - epsilon) * epsilon / ((1.0 - epsilon) * (1.0 - epsilon)))
}

/// `2 eps / (1 + eps^2)`
pub fn rate_g_damp(epsilon: f64) -> Result<f64> {
    check_eps(epsilon)?;
    Ok(2.0 * epsilon / (1.0 + epsilon * epsilon))
}

/// `eps`
pub fn rate_g_mom(epsilon: f64) -> Result<f64> {
    check_eps(epsilon)?;
    Ok(epsilon)
}

/// Damped prefactor `C = 2 (1 + eps) sqrt(eps) / (1 - eps)^2`.
pub fn prefactor_c(epsilon: f64) -> Result<f64> {
    check_eps(epsilon)?;
    Ok(2.0 * (1.0 + epsilon) * epsilon.sqrt() / ((1.0 - epsilon) * (1.0 - epsilon)))
}

/// Momentum prefactor `C' = 8 sqrt(2) (1 + eps) / ((1 - eps)^2 sqrt(eps))`.
pub fn prefactor_c_prime(epsilon: f64) -> Result<f64> {
    check_eps(epsilon)?;
    if epsilon == 0.0 {
        return Err(Error::Domain("C' is undefined at eps = 0".into()));
    }
    Ok(8.0 * 2f64.sqrt() * (1.0 + epsilon)
        / ((1.0 - epsilon) * (1.0 - epsilon) * epsilon.sqrt()))
}

/// Exact-arithmetic error bounds after `iter` iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPoint {
    pub iter: usize,
    /// Bound on `||x - x_i||`.
    pub fe: f64,
    /// Bound on `||r(x) - r(x_i)||`.
    pub re: f64,
}

/// Bound on the absolute forward and residual errors at iteration `i`.
///
/// Basic: `(8 - 2 sqrt 2) sqrt(eps) g_IS^i` times `kappa ||r|| / ||A||`
/// (forward) or `||r||` (residual), for `eps < 1 - 1/sqrt 2`.
/// Damped: prefactor `C g_damp^i`. Momentum: `C' (i - 1) g_mom^i`, `i >= 2`.
pub fn bound_at(
    variant: Variant,
    epsilon: f64,
    kappa: f64,
    norm_a: f64,
    norm_r: f64,
    i: usize,
) -> Result<BoundPoint> {
    if !(epsilon > 0.0) {
        return Err(Error::Hypothesis(format!("need eps > 0, got {epsilon}")));
    }
    let factor = match variant {
        Variant::Basic => {
            if epsilon >= 1.0 - 1.0 / 2f64.sqrt() {
                return Err(Error::Hypothesis(format!(
                    "basic bound needs eps < 1 - 1/sqrt(2), got {epsilon}"
                )));
            }
            (8.0 - 2.0 * 2f64.sqrt()) * epsilon.sqrt() * rate_g_is(epsilon)?.powi(i as i32)
        }
        Variant::Damped => {
            check_eps(epsilon).map_err(|e| Error::Hypothesis(e.to_string()))?;
            prefactor_c(epsilon)? * rate_g_damp(epsilon)?.powi(i as i32)
        }
        Variant::Momentum => {
            check_eps(epsilon).map_err(|e| Error::Hypothesis(e.to_string()))?;
            if i < 2 {
                return Err(Error::Hypothesis(format!(
                    "momentum bound holds for i >= 2, got i = {i}"
                )));
            }
            prefactor_c_prime(epsilon)? * (i - 1) as f64 * rate_g_mom(epsilon)?.powi(i as i32)
        }
    };
    Ok(BoundPoint {
        iter: i,
        fe: factor * kappa * norm_r / norm_a,
        re: factor * norm_r,
    })
}

/// Bounds for every iteration from the first valid one (0, or 2 for
/// momentum) through `iters`.
pub fn theoretical_bound_curve(
    variant: Variant,
    epsilon: f64,
    kappa: f64,
    norm_a: f64,
    norm_r: f64,
    iters: usize,
) -> Result<Vec<BoundPoint>> {
    let first = if variant == Variant::Momentum { 2 } else { 0 };
    (first..=iters)
        .map(|i| bound_at(variant, epsilon, kappa, norm_a, norm_r, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn damping_values() {
        assert_eq!(damping_params(0.0).unwrap(), (1.0, 0.0));
        let (a, b) = damping_params(0.5).unwrap();
        assert!((a - 0.45).abs() <= 1e-15 && b == 0.0);
        let mut prev = f64::INFINITY;
        for k in 0..=90 {
            let (a, _) = damping_params(k as f64 / 100.0).unwrap();
            assert!(a <= prev);
            prev = a;
        }
        assert!(damping_params(1.0).is_err());
    }

    #[test]
    fn momentum_values() {
        assert_eq!(momentum_params(0.0).unwrap(), (1.0, 0.0));
        assert_eq!(momentum_params(0.5).unwrap(), (0.5625, 0.25));
        assert!(momentum_params(0.99).unwrap().1 < 1.0);
        assert!(momentum_params(1.5).is_err());
    }

    #[test]
    fn g_is_values() {
        assert!((rate_g_is(1.0 - 1.0 / S2).unwrap() - 1.0).abs() <= 1e-14);
        assert!((rate_g_is(0.1).unwrap() - 0.19 / 0.81).abs() <= 1e-15);
        for k in 1..=1000 {
            let e = (1.0 - 1.0 / S2) * k as f64 / 1000.0;
            assert!(rate_g_is(e).unwrap() <= (2.0 + S2) * e * (1.0 + 1e-14));
        }
    }

    #[test]
    fn other_rates() {
        assert_eq!(rate_g_damp(0.0).unwrap(), 0.0);
        assert!((rate_g_damp(0.5).unwrap() - 0.8).abs() <= 1e-15);
        assert_eq!(rate_g_mom(0.3).unwrap(), 0.3);
        assert!(prefactor_c_prime(0.0).is_err());
        assert!(prefactor_c(0.25).unwrap() > 0.0);
    }

    #[test]
    fn bound_substitutions() {
        let b0 = bound_at(Variant::Basic, 0.25, 10.0, 2.0, 3.0, 0).unwrap();
        assert!((b0.re - (8.0 - 2.0 * S2) * 0.5 * 3.0).abs() <= 1e-14);
        assert!((b0.fe - b0.re * 10.0 / 2.0).abs() <= 1e-13);
        let b3 = bound_at(Variant::Basic, 0.25, 1.0, 1.0, 1.0, 3).unwrap();
        let g = rate_g_is(0.25).unwrap();
        assert!((b3.re - (8.0 - 2.0 * S2) * 0.5 * g.powi(3)).abs() <= 1e-15);
    }

    #[test]
    fn hypotheses() {
        assert!(bound_at(Variant::Basic, 0.3, 1.0, 1.0, 1.0, 0).is_err());
        assert!(bound_at(Variant::Momentum, 0.3, 1.0, 1.0, 1.0, 1).is_err());
        assert!(bound_at(Variant::Momentum, 0.3, 1.0, 1.0, 1.0, 2).is_ok());
        assert!(bound_at(Variant::Damped, 1.0, 1.0, 1.0, 1.0, 2).is_err());
        let c = theoretical_bound_curve(Variant::Momentum, 0.3, 1.0, 1.0, 1.0, 5).unwrap();
        assert_eq!(c.first().unwrap().iter, 2);
        assert_eq!(c.len(), 4);
    }
}
