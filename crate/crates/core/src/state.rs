//! Prognostic fields and pointwise constitutive/constraint quantities.

use ndarray::Array2;

use crate::error::{GridError, StateError};
use crate::grid::{diff, Axis2, Field, Grid};
use crate::scalar::Scalar;

/// The seven prognostic fields at one time. The deformation tensor is stored
/// in perturbation form, F = I + (f1, f2; f3, f4), which avoids cancellation
/// near the equilibrium F = I.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSnapshot<F> {
    pub rho: Field<F>,
    pub u: Field<F>,
    pub v: Field<F>,
    pub f1: Field<F>,
    pub f2: Field<F>,
    pub f3: Field<F>,
    pub f4: Field<F>,
    pub t: F,
}

pub const FIELD_NAMES: [&str; 7] = ["rho", "u", "v", "f1", "f2", "f3", "f4"];

impl<F: Scalar> StateSnapshot<F> {
    pub fn shape(&self) -> (usize, usize) {
        self.rho.dim()
    }

    pub fn fields(&self) -> [&Field<F>; 7] {
        [
            &self.rho, &self.u, &self.v, &self.f1, &self.f2, &self.f3, &self.f4,
        ]
    }

    pub fn fields_mut(&mut self) -> [&mut Field<F>; 7] {
        [
            &mut self.rho,
            &mut self.u,
            &mut self.v,
            &mut self.f1,
            &mut self.f2,
            &mut self.f3,
            &mut self.f4,
        ]
    }

    /// Physical-regime guard: rho > 0 and 1 + f4 > 0 everywhere. A violation
    /// is diagnosed, never clamped; the small-perturbation theory does not
    /// survive leaving this regime silently.
    pub fn check_regime(&self) -> Result<(), StateError> {
        let (ny, nx) = self.shape();
        for j in 0..ny {
            for i in 0..nx {
                let r = self.rho[[j, i]];
                if !(r > F::zero()) {
                    return Err(StateError::NonPositiveDensity {
                        j,
                        i,
                        value: r.as_f64(),
                    });
                }
                let d = F::one() + self.f4[[j, i]];
                if !(d > F::zero()) {
                    return Err(StateError::DegenerateDeformation {
                        j,
                        i,
                        value: d.as_f64(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn all_finite(&self) -> Option<&'static str> {
        for (name, f) in FIELD_NAMES.iter().zip(self.fields()) {
            if f.iter().any(|v| !v.is_finite()) {
                return Some(name);
            }
        }
        None
    }
}

/// Physical parameters of the system. `eps` is the viscosity scale: the
/// viscosity coefficients entering the momentum equation are `eps * mu` and
/// `eps * (mu + lambda)`. `elastic_coupling = false` drops the elastic stress
/// divergence from the momentum equation (Navier-Stokes comparison mode).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams<F> {
    pub gamma: F,
    pub mu: F,
    pub lambda: F,
    pub eps: F,
    pub elastic_coupling: bool,
    /// Fourth-difference dissipation coefficient for ideal (eps = 0) runs;
    /// 0 disables. The filter tendency is -kappa * h^4 * d^4 q (undivided
    /// differences), recorded in run metadata.
    pub filter_kappa: F,
    /// Far-field sponge relaxation rate over the top 10% of the strip;
    /// 0 disables.
    pub sponge_sigma: F,
}

impl<F: Scalar> PhysParams<F> {
    pub fn new(gamma: F, mu: F, lambda: F, eps: F) -> Result<Self, StateError> {
        let p = Self {
            gamma,
            mu,
            lambda,
            eps,
            elastic_coupling: true,
            filter_kappa: F::lit(0.01),
            sponge_sigma: F::lit(5.0),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), StateError> {
        if !(self.gamma >= F::one()) {
            return Err(StateError::BadParams(format!(
                "gamma must be >= 1, got {}",
                self.gamma
            )));
        }
        if !(self.mu > F::zero()) {
            return Err(StateError::BadParams(format!(
                "mu must be > 0, got {}",
                self.mu
            )));
        }
        if !(self.mu + self.lambda > F::zero()) {
            return Err(StateError::BadParams(format!(
                "mu + lambda must be > 0, got {}",
                self.mu + self.lambda
            )));
        }
        if !(self.eps >= F::zero() && self.eps < F::one()) {
            return Err(StateError::BadParams(format!(
                "eps must lie in [0, 1), got {}",
                self.eps
            )));
        }
        if !(self.filter_kappa >= F::zero()) || !(self.sponge_sigma >= F::zero()) {
            return Err(StateError::BadParams(
                "filter_kappa and sponge_sigma must be >= 0".to_string(),
            ));
        }
        Ok(())
    }
}

/// The trivial equilibrium: rho = 1, u = 0, F = I, t = 0.
pub fn uniform_state<F: Scalar>(grid: &Grid<F>) -> StateSnapshot<F> {
    let zeros = grid.zeros();
    StateSnapshot {
        rho: Array2::from_elem(grid.shape(), F::one()),
        u: zeros.clone(),
        v: zeros.clone(),
        f1: zeros.clone(),
        f2: zeros.clone(),
        f3: zeros.clone(),
        f4: zeros,
        t: F::zero(),
    }
}

/// Isentropic pressure law p(rho) = rho^gamma, gamma >= 1.
pub fn pressure<F: Scalar>(rho: &Field<F>, gamma: F) -> Result<Field<F>, StateError> {
    if let Some(((j, i), &v)) = rho.indexed_iter().find(|(_, &v)| !(v > F::zero())) {
        return Err(StateError::NonPositiveDensity {
            j,
            i,
            value: v.as_f64(),
        });
    }
    Ok(rho.mapv(|r| r.powf(gamma)))
}

/// Symmetric elastic stress tau = rho F F^T at each node, returned as the
/// component fields (tau11, tau12, tau22).
pub fn elastic_stress<F: Scalar>(state: &StateSnapshot<F>) -> (Field<F>, Field<F>, Field<F>) {
    let shape = state.shape();
    let mut t11 = Field::zeros(shape);
    let mut t12 = Field::zeros(shape);
    let mut t22 = Field::zeros(shape);
    let one = F::one();
    for j in 0..shape.0 {
        for i in 0..shape.1 {
            let r = state.rho[[j, i]];
            let a = one + state.f1[[j, i]];
            let b = state.f2[[j, i]];
            let c = state.f3[[j, i]];
            let d = one + state.f4[[j, i]];
            t11[[j, i]] = r * (a * a + b * b);
            t12[[j, i]] = r * (a * c + b * d);
            t22[[j, i]] = r * (c * c + d * d);
        }
    }
    (t11, t12, t22)
}

/// Residuals of the two propagated constraints:
/// `det_residual = rho det F - 1` pointwise, and the Piola residual vector
/// `div(rho F^T) = (dx(rho(1+f1)) + dy(rho f3), dx(rho f2) + dy(rho(1+f4)))`.
pub fn constraint_residuals<F: Scalar>(
    state: &StateSnapshot<F>,
    grid: &Grid<F>,
) -> Result<(Field<F>, (Field<F>, Field<F>)), GridError> {
    grid.check_shape(&state.rho)?;
    let one = F::one();
    let shape = state.shape();

    let mut det_res = Field::zeros(shape);
    let mut rf11 = Field::zeros(shape);
    let mut rf21 = Field::zeros(shape);
    let mut rf12 = Field::zeros(shape);
    let mut rf22 = Field::zeros(shape);
    for j in 0..shape.0 {
        for i in 0..shape.1 {
            let r = state.rho[[j, i]];
            let a = one + state.f1[[j, i]];
            let b = state.f2[[j, i]];
            let c = state.f3[[j, i]];
            let d = one + state.f4[[j, i]];
            det_res[[j, i]] = r * (a * d - b * c) - one;
            rf11[[j, i]] = r * a;
            rf21[[j, i]] = r * c;
            rf12[[j, i]] = r * b;
            rf22[[j, i]] = r * d;
        }
    }
    let mut p1 = diff(&rf11, grid, Axis2::X, false)?;
    p1.zip_mut_with(&diff(&rf21, grid, Axis2::Y, false)?, |a, &b| *a = *a + b);
    let mut p2 = diff(&rf12, grid, Axis2::X, false)?;
    p2.zip_mut_with(&diff(&rf22, grid, Axis2::Y, false)?, |a, &b| *a = *a + b);
    Ok((det_res, (p1, p2)))
}

/// Vorticity omega = dy(u) - dx(v).
pub fn vorticity<F: Scalar>(
    state: &StateSnapshot<F>,
    grid: &Grid<F>,
) -> Result<Field<F>, GridError> {
    let mut w = diff(&state.u, grid, Axis2::Y, false)?;
    w.zip_mut_with(&diff(&state.v, grid, Axis2::X, false)?, |a, &b| *a = *a - b);
    Ok(w)
}
