use crate::error::{Error, Result};
use crate::linalg::lambert_w0;
use crate::solvers::Variant;

/// Embedding dimension balancing sketch cost against iteration count for
/// target accuracy `accuracy_u`, with logarithms taken as natural.
///
/// Basic: `max(ceil((6+4 sqrt 2) n exp W((6-4 sqrt 2)(m/n^2) ln(1/u))), 20n)`.
/// Damped (`a = 2`) and momentum (`a = 1`):
/// `max(ceil(a n exp W((4m/(a n^2)) ln(1/u))), 4n)`.
///
/// ```
/// use itsketch::embed::choose_dim;
/// use itsketch::solvers::Variant;
/// assert_eq!(choose_dim(100, 50, 1e-16, Variant::Basic).unwrap(), 1000);
/// ```
pub fn choose_dim(m: usize, n: usize, accuracy_u: f64, variant: Variant) -> Result<usize> {
    if n == 0 || m < n {
        return Err(Error::InvalidParameter(format!(
            "need m >= n >= 1, got m={m}, n={n}"
        )));
    }
    if !(accuracy_u > 0.0 && accuracy_u < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "accuracy must lie in (0, 1), got {accuracy_u}"
        )));
    }
    let (mf, nf) = (m as f64, n as f64);
    let log_term = (1.0 / accuracy_u).ln();
    let (lead, arg, floor) = match variant {
        Variant::Basic => {
            let s2 = 2f64.sqrt();
            (6.0 + 4.0 * s2, (6.0 - 4.0 * s2) * (mf / (nf * nf)) * log_term, 20 * n)
        }
        Variant::Damped | Variant::Momentum => {
            let a = if variant == Variant::Damped { 2.0 } else { 1.0 };
            (a, 4.0 * mf / (a * nf * nf) * log_term, 4 * n)
        }
    };
    let d = (lead * nf * lambert_w0(arg)?.exp()).ceil() as usize;
    Ok(d.max(floor))
}
