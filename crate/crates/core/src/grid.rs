use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// `floor((max - min)/step) + 1` uniformly spaced points starting at `min`.
pub fn uniform_grid<T: Real>(min: T, max: T, step: T) -> Result<Vec<T>> {
    if !(step > T::zero()) || !min.is_finite() || !max.is_finite() {
        return Err(Error::Domain(
            "grid step must be positive and bounds finite".into(),
        ));
    }
    if max < min {
        return Err(Error::Domain(format!("empty range [{min}, {max}]")));
    }
    // tolerate representation error in (max - min)/step
    let count = ((max - min) / step + lit(1e-9))
        .floor()
        .to_usize()
        .ok_or_else(|| Error::Domain("grid too large".into()))?
        + 1;
    Ok((0..count)
        .map(|k| min + step * T::from_usize(k).unwrap())
        .collect())
}
