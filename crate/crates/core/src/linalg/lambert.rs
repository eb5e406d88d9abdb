use crate::error::{Error, Result};

/// Principal branch `W_0(x)` of the Lambert W function on `x >= 0`.
///
/// Newton's method on `w e^w = x` from `log(1 + x)`, written with
/// `e^{-w}` so large arguments do not overflow.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("lambert_w0 needs finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = x.ln_1p();
    for _ in 0..100 {
        let step = (w - x * (-w).exp()) / (1.0 + w);
        w -= step;
        if step.abs() <= 1e-14 {
            break;
        }
    }
    Ok(w)
}
