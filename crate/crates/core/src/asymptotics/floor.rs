//! Floor conventions for sums indexed by a real bound.
//!
//! `Σ_{n ≤ x}` always means `n = 1..=natfloor(x)`; a bound below 1 gives the
//! empty sum.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `max(0, ⌊x⌋)` as a natural number. NaN maps to 0 and values beyond `u64`
/// saturate.
pub fn natfloor<F: Real>(x: F) -> u64 {
    if x.is_nan() || x < F::one() {
        return 0;
    }
    x.floor().to_u64().unwrap_or(u64::MAX)
}

/// Checks the floor Galois correspondence `(n ≤ ⌊x⌋) ⇔ (n ≤ x)` for the
/// pair `(n, x)`.
///
/// The signed floor form is checked for every pair. The clamped [`natfloor`]
/// form is checked as well whenever it is meaningful, i.e. `n ≥ 0` and
/// `x ≥ 0`. Returns `false` for non-finite `x`.
pub fn floor_galois_check<F: Real>(n: i64, x: F) -> bool {
    if !x.is_finite() {
        return false;
    }
    let n_real = F::from_i64(n).expect("i64 fits a float");
    let rhs = n_real <= x;
    let floor = x.floor().to_i64().expect("finite floor fits i64");
    let signed_ok = (n <= floor) == rhs;
    if n >= 0 && x >= F::zero() {
        let clamped_ok = ((n as u64) <= natfloor(x)) == rhs;
        signed_ok && clamped_ok
    } else {
        signed_ok
    }
}

/// `natfloor(|z − 1|) + 1 = natfloor(z)` for `z ≥ 1`.
pub fn natfloor_shift_check<F: Real>(z: F) -> Result<bool> {
    if z.is_nan() || z < F::one() {
        return Err(Error::InvalidParameter(format!(
            "shift check needs z >= 1, got {z}"
        )));
    }
    Ok(natfloor((z - F::one()).abs()) + 1 == natfloor(z))
}

/// Converts a real summation bound to a table index, rejecting any bound
/// above `limit` (including non-integers just past it).
pub(crate) fn bound_index<F: Real>(x: F, limit: u64) -> Result<u64> {
    if x.is_nan() {
        return Err(Error::InvalidParameter("summation bound is NaN".into()));
    }
    let n = natfloor(x);
    if n > limit || x > F::of_u64(limit) {
        return Err(Error::OutOfDomain {
            value: x.to_string(),
            limit,
        });
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn natfloor_examples() {
        assert_eq!(natfloor(3.7f64), 3);
        assert_eq!(natfloor(-2.3f64), 0);
        assert_eq!(natfloor(0.999f64), 0);
        assert_eq!(natfloor(5.0f32), 5);
        assert_eq!(natfloor(f64::NAN), 0);
        assert_eq!(natfloor(f64::INFINITY), u64::MAX);
    }

    #[test]
    fn shift_examples() {
        // natfloor(|2.5|) + 1 = 3 = natfloor(3.5)
        assert_eq!(natfloor(2.5f64) + 1, 3);
        assert_eq!(natfloor_shift_check(3.5f64), Ok(true));
        assert_eq!(natfloor_shift_check(1.0f64), Ok(true));
        assert!(natfloor_shift_check(0.5f64).is_err());
    }

    #[test]
    fn shift_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            let z: f64 = rng.random_range(1.0..=1e6);
            assert_eq!(natfloor_shift_check(z), Ok(true), "z = {z}");
        }
    }

    #[test]
    fn galois_grid() {
        for n in -100i64..=100 {
            for i in -100i32..=100 {
                let x = i as f64 * 0.1;
                assert!(floor_galois_check(n, x), "n = {n}, x = {x}");
                if n >= 0 && x >= 0.0 {
                    assert_eq!((n as u64) <= natfloor(x), n as f64 <= x);
                }
            }
        }
    }

    #[test]
    fn bound_index_rejects_past_limit() {
        assert_eq!(bound_index(10.5f64, 11), Ok(10));
        assert!(bound_index(10.5f64, 10).is_err());
        assert_eq!(bound_index(-1.0f64, 10), Ok(0));
        assert!(bound_index(11.0f64, 10).is_err());
        assert!(bound_index(f64::NAN, 10).is_err());
    }
}
