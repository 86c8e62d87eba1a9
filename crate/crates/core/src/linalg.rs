//! Small dense complex helpers on top of nalgebra.

use nalgebra::Cholesky;

use crate::error::{Error, Result};
use crate::{CMatrix, CVector, C64};

/// `a^H b`.
#[inline]
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    a.dotc(b)
}

/// Solves `A x = b` for Hermitian positive definite `A`.
pub fn solve_hpd(a: CMatrix, b: &CVector, context: &'static str) -> Result<CVector> {
    if a.nrows() != b.len() {
        return Err(Error::dim(context, a.nrows(), b.len()));
    }
    let chol = Cholesky::new(a).ok_or(Error::Singular(context))?;
    Ok(chol.solve(b))
}

/// Largest entry magnitude of `a - b`.
pub fn max_abs_diff(a: &CVector, b: &CVector) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Projects every entry onto the closed unit disk, keeping its phase.
pub fn clamp_unit_disk(v: &mut CVector) {
    for z in v.iter_mut() {
        let m = z.norm();
        if m > 1.0 {
            *z /= m;
        }
    }
}

pub fn all_finite(v: &CVector) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}
