//! Counting constraints relating polygon size, tile count and Euler number.

use num_rational::Ratio;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("out of scope: need n >= 7 and chi < 0 (got n={n:?}, chi={chi})")]
    OutOfScope { n: Option<i64>, chi: i64 },
}

/// Open-closed interval `(lower_exclusive, upper_inclusive]` for the tile count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TileBounds {
    pub lower_exclusive: Rational,
    pub upper_inclusive: Rational,
    /// The upper bound is an attainable tile count, which happens exactly
    /// when every vertex has degree 3.
    pub max_is_all_degree_three: bool,
}

impl TileBounds {
    pub fn contains(&self, f: i64) -> bool {
        let f = Rational::from_integer(f);
        self.lower_exclusive < f && f <= self.upper_inclusive
    }
}

pub fn tile_count_bounds(n: i64, chi: i64) -> Result<TileBounds, FeasibilityError> {
    if n < 7 || chi >= 0 {
        return Err(FeasibilityError::OutOfScope { n: Some(n), chi });
    }
    let lower = Rational::new(-2 * chi, n - 2);
    let upper = Rational::new(-6 * chi, n - 6);
    let attainable = upper.is_integer() && (n % 2 == 0 || upper.to_integer() % 2 == 0);
    Ok(TileBounds {
        lower_exclusive: lower,
        upper_inclusive: upper,
        max_is_all_degree_three: attainable,
    })
}

/// Largest polygon size admitting any tiling of a surface with Euler number `chi`.
pub fn max_polygon_size(chi: i64, odd: bool) -> i64 {
    if odd {
        3 * (2 - chi)
    } else {
        6 * (1 - chi)
    }
}

/// Every `(n, f)` combination allowed by the tile-count bound and the
/// requirement that `f` be even when `n` is odd.
pub fn admissible_tilings(chi: i64) -> Result<Vec<(i64, Vec<i64>)>, FeasibilityError> {
    if chi >= 0 {
        return Err(FeasibilityError::OutOfScope { n: None, chi });
    }
    let top = max_polygon_size(chi, false).max(max_polygon_size(chi, true));
    let mut out = Vec::new();
    for n in 7..=top {
        if n > max_polygon_size(chi, n % 2 == 1) {
            continue;
        }
        let bounds = tile_count_bounds(n, chi)?;
        let fmax = bounds.upper_inclusive.floor().to_integer();
        let fs: Vec<i64> = (1..=fmax)
            .filter(|&f| bounds.contains(f))
            .filter(|&f| n % 2 == 0 || f % 2 == 0)
            .collect();
        if !fs.is_empty() {
            out.push((n, fs));
        }
    }
    Ok(out)
}

/// Even polygon sizes that admit a single-tile tiling, clamped below at 8.
pub fn single_tile_n_range(chi: i64) -> Result<(usize, usize), FeasibilityError> {
    if chi >= 0 {
        return Err(FeasibilityError::OutOfScope { n: None, chi });
    }
    let lo = (2 * (2 - chi)).max(8);
    let hi = 6 * (1 - chi);
    Ok((lo as usize, hi as usize))
}
