use crate::error::{Error, Result};

const HALF_NORM_TOL: f64 = 1e-10;

fn dot(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

/// Two real unit vectors `(c, d)` completing `√2·v` to an orthonormal basis of ℝ³.
///
/// `v` must satisfy `|v|² = 1/2`. The reference axes `e₁, e₂, e₃` are taken in
/// order and orthogonalized against everything accepted so far; an axis is
/// accepted when at least half of its squared norm survives the projection.
/// Exactly two axes are always accepted, so the result is deterministic and
/// every accepted residual has length ≥ 1/√2.
pub fn orthonormal_complement(v: [f64; 3]) -> Result<([f64; 3], [f64; 3])> {
    let norm_sqr = dot(&v, &v);
    if !norm_sqr.is_finite() || (norm_sqr - 0.5).abs() > HALF_NORM_TOL {
        return Err(Error::NotHalfNormed(norm_sqr));
    }
    let scale = norm_sqr.sqrt().recip();
    let unit = v.map(|x| x * scale);

    let mut accepted: Vec<[f64; 3]> = Vec::with_capacity(2);
    for axis in 0..3 {
        if accepted.len() == 2 {
            break;
        }
        let mut r = [0.0; 3];
        r[axis] = 1.0;
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for q in std::iter::once(&unit).chain(&accepted) {
                let p = dot(&r, q);
                r.iter_mut().zip(q).for_each(|(ri, qi)| *ri -= p * qi);
            }
        }
        let rn = dot(&r, &r);
        if rn >= 0.5 - 1e-12 {
            let inv = rn.sqrt().recip();
            accepted.push(r.map(|x| x * inv));
        }
    }
    debug_assert_eq!(accepted.len(), 2);
    Ok((accepted[0], accepted[1]))
}
