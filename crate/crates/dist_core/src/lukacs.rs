use crate::DistError;

/// `(x, y) -> (x + y, x / (x + y))`.
pub fn lukacs_merge(x: f64, y: f64) -> Result<(f64, f64), DistError> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(DistError::Domain(x, "lukacs_merge"));
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(DistError::Domain(y, "lukacs_merge"));
    }
    let sum = x + y;
    Ok((sum, x / sum))
}

/// `(a, b) -> (b a, (1 - b) a)`; `b` must lie strictly inside (0, 1).
pub fn lukacs_split(a: f64, b: f64) -> Result<(f64, f64), DistError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(DistError::Domain(a, "lukacs_split"));
    }
    if !(b > 0.0 && b < 1.0) {
        return Err(DistError::Domain(b, "lukacs_split"));
    }
    Ok((b * a, (1.0 - b) * a))
}
