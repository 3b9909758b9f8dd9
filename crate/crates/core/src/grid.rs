//! Discrete half-plane strip and the spatial/conormal derivative operators.
//!
//! The domain is periodic in x and wall-bounded in y, with the wall at the
//! first row (y = 0) and the truncated far field at the last row (y = ly).
//! Fields are stored as `Array2` with shape `(ny, nx)`, row index `j` running
//! in y and column index `i` in x.

use ndarray::Array2;

use crate::error::GridError;
use crate::scalar::Scalar;

/// A 2D scalar field on the strip, shape `(ny, nx)`.
pub type Field<F> = Array2<F>;

/// Uniform collocated grid on the periodic strip `[0, lx) x [0, ly]`.
#[derive(Debug, Clone)]
pub struct Grid<F> {
    pub nx: usize,
    pub ny: usize,
    pub lx: F,
    pub ly: F,
    pub dx: F,
    pub dy: F,
    /// Wall-normal coordinates, `y_coords[0] == 0` exactly.
    pub y_coords: Vec<F>,
    /// Conormal weight phi(y) per row; `phi_y[0] == 0` exactly.
    pub phi_y: Vec<F>,
}

/// Spatial direction for the derivative operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis2 {
    X,
    Y,
}

/// Conormal multi-index alpha = (a0, a1, a2) addressing Z0^a0 Z1^a1 Z2^a2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiIndex {
    pub a0: usize,
    pub a1: usize,
    pub a2: usize,
}

impl MultiIndex {
    pub fn new(a0: usize, a1: usize, a2: usize) -> Self {
        Self { a0, a1, a2 }
    }

    pub fn order(&self) -> usize {
        self.a0 + self.a1 + self.a2
    }

    /// All multi-indices with `|alpha| <= m`, optionally restricted to a0 = 0.
    pub fn up_to(m: usize, include_time: bool) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let a0_max = if include_time { m } else { 0 };
        for a0 in 0..=a0_max {
            for a1 in 0..=(m - a0) {
                for a2 in 0..=(m - a0 - a1) {
                    out.push(MultiIndex::new(a0, a1, a2));
                }
            }
        }
        out
    }
}

/// The paper's weight phi(y) = y/(1+y): phi(0) = 0, phi'(0) = 1, bounded.
pub fn weight_phi<F: Scalar>(y: F) -> Result<F, GridError> {
    if y < F::zero() {
        return Err(GridError::NegativeY { y: y.as_f64() });
    }
    Ok(y / (F::one() + y))
}

/// Build a grid with `nx` periodic cells in x and `ny` nodes in y, the first
/// node exactly on the wall.
pub fn build_grid<F: Scalar>(nx: usize, ny: usize, lx: F, ly: F) -> Result<Grid<F>, GridError> {
    const MIN_CELLS: usize = 4;
    if nx < MIN_CELLS || ny < MIN_CELLS {
        return Err(GridError::TooFewCells {
            nx,
            ny,
            min: MIN_CELLS,
        });
    }
    if !(lx > F::zero()) || !(ly > F::zero()) || !lx.is_finite() || !ly.is_finite() {
        return Err(GridError::NonPositiveExtent {
            lx: lx.as_f64(),
            ly: ly.as_f64(),
        });
    }
    let dx = lx / F::from_count(nx);
    let dy = ly / F::from_count(ny - 1);
    let y_coords: Vec<F> = (0..ny).map(|j| dy * F::from_count(j)).collect();
    let phi_y: Vec<F> = y_coords
        .iter()
        .map(|&y| y / (F::one() + y))
        .collect();
    Ok(Grid {
        nx,
        ny,
        lx,
        ly,
        dx,
        dy,
        y_coords,
        phi_y,
    })
}

impl<F: Scalar> Grid<F> {
    pub fn shape(&self) -> (usize, usize) {
        (self.ny, self.nx)
    }

    pub fn x_coord(&self, i: usize) -> F {
        self.dx * F::from_count(i)
    }

    pub fn check_shape(&self, field: &Field<F>) -> Result<(), GridError> {
        let got = field.dim();
        if got != self.shape() {
            return Err(GridError::ShapeMismatch {
                expected: self.shape(),
                got,
            });
        }
        Ok(())
    }

    pub fn zeros(&self) -> Field<F> {
        Field::zeros(self.shape())
    }
}

/// First derivative: second-order central stencils, periodic in x, one-sided
/// second-order at the wall and top rows. With `conormal` on axis y the
/// result is multiplied pointwise by phi(y), so the wall row is exactly zero;
/// on axis x the flag has no effect (Z1 is plain d/dx).
pub fn diff<F: Scalar>(
    field: &Field<F>,
    grid: &Grid<F>,
    axis: Axis2,
    conormal: bool,
) -> Result<Field<F>, GridError> {
    grid.check_shape(field)?;
    let (ny, nx) = grid.shape();
    let mut out = grid.zeros();
    match axis {
        Axis2::X => {
            let inv2dx = F::lit(0.5) / grid.dx;
            for j in 0..ny {
                for i in 0..nx {
                    let ip = if i + 1 == nx { 0 } else { i + 1 };
                    let im = if i == 0 { nx - 1 } else { i - 1 };
                    out[[j, i]] = (field[[j, ip]] - field[[j, im]]) * inv2dx;
                }
            }
        }
        Axis2::Y => {
            let inv2dy = F::lit(0.5) / grid.dy;
            let three = F::lit(3.0);
            let four = F::lit(4.0);
            for i in 0..nx {
                out[[0, i]] =
                    (-three * field[[0, i]] + four * field[[1, i]] - field[[2, i]]) * inv2dy;
                out[[ny - 1, i]] = (three * field[[ny - 1, i]] - four * field[[ny - 2, i]]
                    + field[[ny - 3, i]])
                    * inv2dy;
            }
            for j in 1..ny - 1 {
                for i in 0..nx {
                    out[[j, i]] = (field[[j + 1, i]] - field[[j - 1, i]]) * inv2dy;
                }
            }
            if conormal {
                for j in 0..ny {
                    let w = grid.phi_y[j];
                    for i in 0..nx {
                        out[[j, i]] = out[[j, i]] * w;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Second derivative with compact 3-point interior stencils and one-sided
/// second-order closures at the y-boundaries. Used for the viscous terms and
/// the normal-derivative diagnostics; first derivatives go through [`diff`].
pub fn diff2<F: Scalar>(
    field: &Field<F>,
    grid: &Grid<F>,
    axis: Axis2,
) -> Result<Field<F>, GridError> {
    grid.check_shape(field)?;
    let (ny, nx) = grid.shape();
    let mut out = grid.zeros();
    let two = F::lit(2.0);
    match axis {
        Axis2::X => {
            let invdx2 = (F::one() / grid.dx) * (F::one() / grid.dx);
            for j in 0..ny {
                for i in 0..nx {
                    let ip = if i + 1 == nx { 0 } else { i + 1 };
                    let im = if i == 0 { nx - 1 } else { i - 1 };
                    out[[j, i]] =
                        (field[[j, ip]] - two * field[[j, i]] + field[[j, im]]) * invdx2;
                }
            }
        }
        Axis2::Y => {
            let invdy2 = (F::one() / grid.dy) * (F::one() / grid.dy);
            let five = F::lit(5.0);
            let four = F::lit(4.0);
            for i in 0..nx {
                out[[0, i]] = (two * field[[0, i]] - five * field[[1, i]] + four * field[[2, i]]
                    - field[[3, i]])
                    * invdy2;
                out[[ny - 1, i]] = (two * field[[ny - 1, i]] - five * field[[ny - 2, i]]
                    + four * field[[ny - 3, i]]
                    - field[[ny - 4, i]])
                    * invdy2;
            }
            for j in 1..ny - 1 {
                for i in 0..nx {
                    out[[j, i]] =
                        (field[[j + 1, i]] - two * field[[j, i]] + field[[j - 1, i]]) * invdy2;
                }
            }
        }
    }
    Ok(out)
}

/// Undivided fourth difference, used by the optional dissipation filter.
/// Periodic in x; in y only rows with a full centered stencil are touched,
/// the two rows nearest each boundary are left at zero.
pub fn fourth_difference<F: Scalar>(
    field: &Field<F>,
    grid: &Grid<F>,
    axis: Axis2,
) -> Result<Field<F>, GridError> {
    grid.check_shape(field)?;
    let (ny, nx) = grid.shape();
    let mut out = grid.zeros();
    let four = F::lit(4.0);
    let six = F::lit(6.0);
    match axis {
        Axis2::X => {
            for j in 0..ny {
                for i in 0..nx {
                    let ip1 = (i + 1) % nx;
                    let ip2 = (i + 2) % nx;
                    let im1 = (i + nx - 1) % nx;
                    let im2 = (i + nx - 2) % nx;
                    out[[j, i]] = field[[j, im2]] - four * field[[j, im1]] + six * field[[j, i]]
                        - four * field[[j, ip1]]
                        + field[[j, ip2]];
                }
            }
        }
        Axis2::Y => {
            if ny >= 5 {
                for j in 2..ny - 2 {
                    for i in 0..nx {
                        out[[j, i]] = field[[j - 2, i]] - four * field[[j - 1, i]]
                            + six * field[[j, i]]
                            - four * field[[j + 1, i]]
                            + field[[j + 2, i]];
                    }
                }
            }
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut c: u64 = 1;
    for x in 0..k {
        c = c * (n - x) as u64 / (x + 1) as u64;
    }
    c
}

/// Check that consecutive times in `times` are strictly increasing and
/// uniformly spaced to relative tolerance 1e-12; returns the spacing.
pub fn uniform_spacing<F: Scalar>(times: &[F]) -> Result<F, GridError> {
    debug_assert!(times.len() >= 2);
    let dt0 = times[1] - times[0];
    if !(dt0 > F::zero()) {
        return Err(GridError::NonIncreasingTimes {
            prev: times[0].as_f64(),
            next: times[1].as_f64(),
        });
    }
    let tol = F::lit(1e-12) * dt0.abs().max(F::one());
    for w in times.windows(2) {
        let dt = w[1] - w[0];
        if !(dt > F::zero()) {
            return Err(GridError::NonIncreasingTimes {
                prev: w[0].as_f64(),
                next: w[1].as_f64(),
            });
        }
        if (dt - dt0).abs() > tol {
            return Err(GridError::NonUniformSpacing {
                expected: dt0.as_f64(),
                got: dt.as_f64(),
            });
        }
    }
    Ok(dt0)
}

/// Apply Z^alpha = Z0^a0 Z1^a1 Z2^a2 to a time series of fields and return
/// the result at the newest time.
///
/// The series is `(time, field)` pairs, oldest first. Z1 and Z2 act spatially
/// on each snapshot that the time stencil needs; Z0^a0 is then the minimal
/// a0-th backward difference on the newest `a0 + 1` snapshots.
pub fn apply_conormal_multiindex<F: Scalar>(
    series: &[(F, Field<F>)],
    grid: &Grid<F>,
    alpha: MultiIndex,
) -> Result<Field<F>, GridError> {
    let needed = alpha.a0 + 1;
    if series.len() < needed {
        return Err(GridError::InsufficientHistory {
            order: alpha.a0,
            needed,
            got: series.len(),
        });
    }
    let tail = &series[series.len() - needed..];

    let spatial = |field: &Field<F>| -> Result<Field<F>, GridError> {
        grid.check_shape(field)?;
        let mut g = field.clone();
        for _ in 0..alpha.a1 {
            g = diff(&g, grid, Axis2::X, false)?;
        }
        for _ in 0..alpha.a2 {
            g = diff(&g, grid, Axis2::Y, true)?;
        }
        Ok(g)
    };

    if alpha.a0 == 0 {
        return spatial(&tail[0].1);
    }

    let times: Vec<F> = tail.iter().map(|(t, _)| *t).collect();
    let dt = uniform_spacing(&times)?;
    let inv_dt_pow = (F::one() / dt).powi(alpha.a0 as i32);
    let mut out = grid.zeros();
    // Backward difference: sum_k (-1)^k C(a0,k) f(t_newest - k dt) / dt^a0.
    for (k, entry) in tail.iter().rev().enumerate() {
        let g = spatial(&entry.1)?;
        let mut coeff = F::from_f64(binomial(alpha.a0, k) as f64).unwrap() * inv_dt_pow;
        if k % 2 == 1 {
            coeff = -coeff;
        }
        out.zip_mut_with(&g, |o, &v| *o = *o + coeff * v);
    }
    Ok(out)
}
