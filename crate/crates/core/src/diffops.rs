//! Finite-difference differential operators.
//!
//! All operators use central differences with one Richardson extrapolation
//! step, giving O(h^4) truncation error. Each difference is divided by the
//! realized coordinate spacing rather than 2h, so coordinate functions and
//! constants differentiate exactly.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec3::{Axis, Vec3};

/// Scalar-valued function of position with a declared domain.
///
/// Plain closures get a blanket implementation with an unrestricted domain.
pub trait ScalarField<T: Scalar> {
    fn in_domain(&self, p: Vec3<T>) -> bool {
        let _ = p;
        true
    }

    fn eval(&self, p: Vec3<T>) -> T;
}

impl<T: Scalar, F: Fn(Vec3<T>) -> T> ScalarField<T> for F {
    fn eval(&self, p: Vec3<T>) -> T {
        self(p)
    }
}

/// Vector-valued function of position with a declared domain.
pub trait VectorField<T: Scalar> {
    fn in_domain(&self, p: Vec3<T>) -> bool {
        let _ = p;
        true
    }

    fn eval(&self, p: Vec3<T>) -> Vec3<T>;
}

impl<T: Scalar, F: Fn(Vec3<T>) -> Vec3<T>> VectorField<T> for F {
    fn eval(&self, p: Vec3<T>) -> Vec3<T> {
        self(p)
    }
}

/// Default stencil half-width: 1e-6 * max(1, |p|).
pub fn default_step<T: Scalar>(p: Vec3<T>) -> T {
    T::lit(1e-6) * T::one().max(p.norm())
}

fn check_step<T: Scalar>(h: T) -> Result<()> {
    if !h.is_finite() || h <= T::zero() {
        return Err(Error::domain("step length must be finite and positive"));
    }
    Ok(())
}

/// One central difference over the realized spacing.
fn central<T: Scalar, F: ScalarField<T>>(f: &F, p: Vec3<T>, axis: Axis, h: T) -> Result<T> {
    let offset = Vec3::basis(axis) * h;
    let plus = p + offset;
    let minus = p - offset;
    if !f.in_domain(plus) || !f.in_domain(minus) {
        return Err(Error::domain(
            "finite-difference stencil leaves the field domain",
        ));
    }
    let spacing = plus.component(axis) - minus.component(axis);
    if spacing <= T::zero() {
        return Err(Error::domain("step length underflows at this point"));
    }
    Ok((f.eval(plus) - f.eval(minus)) / spacing)
}

/// Partial derivative of a scalar field along one axis.
pub fn derivative_fd<T: Scalar, F: ScalarField<T>>(
    f: &F,
    p: Vec3<T>,
    axis: Axis,
    h: T,
) -> Result<T> {
    check_step(h)?;
    let coarse = central(f, p, axis, h)?;
    let fine = central(f, p, axis, h * T::half())?;
    let d = (T::lit(4.0) * fine - coarse) / T::lit(3.0);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::domain(
            "field evaluation produced a non-finite value inside the stencil",
        ))
    }
}

/// Gradient of a scalar field.
pub fn grad_fd<T: Scalar, F: ScalarField<T>>(f: &F, p: Vec3<T>, h: T) -> Result<Vec3<T>> {
    Ok(Vec3::new(
        derivative_fd(f, p, Axis::X, h)?,
        derivative_fd(f, p, Axis::Y, h)?,
        derivative_fd(f, p, Axis::Z, h)?,
    ))
}

/// Jacobian of a vector field: `jac[i][j] = d F_i / d x_j`.
pub fn jacobian_fd<T: Scalar, F: VectorField<T>>(f: &F, p: Vec3<T>, h: T) -> Result<[[T; 3]; 3]> {
    check_step(h)?;
    let mut jac = [[T::zero(); 3]; 3];
    for axis_j in Axis::ALL {
        let j = axis_j.index();
        let coarse = central_vec(f, p, axis_j, h)?;
        let fine = central_vec(f, p, axis_j, h * T::half())?;
        let col = (fine * T::lit(4.0) - coarse) / T::lit(3.0);
        if !col.is_finite() {
            return Err(Error::domain(
                "field evaluation produced a non-finite value inside the stencil",
            ));
        }
        for axis_i in Axis::ALL {
            jac[axis_i.index()][j] = col.component(axis_i);
        }
    }
    Ok(jac)
}

fn central_vec<T: Scalar, F: VectorField<T>>(
    f: &F,
    p: Vec3<T>,
    axis: Axis,
    h: T,
) -> Result<Vec3<T>> {
    let offset = Vec3::basis(axis) * h;
    let plus = p + offset;
    let minus = p - offset;
    if !f.in_domain(plus) || !f.in_domain(minus) {
        return Err(Error::domain(
            "finite-difference stencil leaves the field domain",
        ));
    }
    let spacing = plus.component(axis) - minus.component(axis);
    if spacing <= T::zero() {
        return Err(Error::domain("step length underflows at this point"));
    }
    Ok((f.eval(plus) - f.eval(minus)) / spacing)
}

/// Divergence of a vector field.
pub fn divergence_fd<T: Scalar, F: VectorField<T>>(f: &F, p: Vec3<T>, h: T) -> Result<T> {
    let jac = jacobian_fd(f, p, h)?;
    Ok(jac[0][0] + jac[1][1] + jac[2][2])
}

/// Curl of a vector field.
pub fn curl_fd<T: Scalar, F: VectorField<T>>(f: &F, p: Vec3<T>, h: T) -> Result<Vec3<T>> {
    let jac = jacobian_fd(f, p, h)?;
    Ok(Vec3::new(
        jac[2][1] - jac[1][2],
        jac[0][2] - jac[2][0],
        jac[1][0] - jac[0][1],
    ))
}
