use crate::linalg::vecops::{dist2, norm2};

/// `||r_next - r_curr|| <= u (gamma normest ||x_next|| + rho condest ||r_next||)`,
/// compared inclusively.
///
/// ```
/// use itsketch::solvers::should_stop;
/// let r = [1.0, 2.0];
/// assert!(should_stop(&r, &r, &[1.0], 1.0, 1.0, 1e-16, 1.0, 0.04));
/// ```
#[allow(clippy::too_many_arguments)]
pub fn should_stop(
    r_next: &[f64],
    r_curr: &[f64],
    x_next: &[f64],
    normest: f64,
    condest: f64,
    u: f64,
    gamma: f64,
    rho: f64,
) -> bool {
    dist2(r_next, r_curr) <= u * (gamma * normest * norm2(x_next) + rho * condest * norm2(r_next))
}

/// The rule with its iteration-independent quantities bound.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StopRule {
    pub normest: f64,
    pub condest: f64,
    pub u: f64,
    pub gamma: f64,
    pub rho: f64,
}

impl StopRule {
    pub fn fires(&self, r_next: &[f64], r_curr: &[f64], x_next: &[f64]) -> bool {
        should_stop(
            r_next, r_curr, x_next, self.normest, self.condest, self.u, self.gamma, self.rho,
        )
    }

    /// Whether `x0` is already exact to working accuracy: its whole residual
    /// is no larger than the change the rule tolerates.
    pub fn fires_initially(&self, r0: &[f64], x0: &[f64]) -> bool {
        norm2(r0) <= self.u * self.gamma * self.normest * norm2(x0)
    }
}
