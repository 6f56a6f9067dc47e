//! Noncommutative structure: the theta matrix, first-order Moyal star
//! products, the Bopp shift and the corrected kinetic momentum.
//!
//! Conventions: [x_i, x_j] = i theta_ij with theta_ij antisymmetric. A
//! single spatial plane carries the noncommutativity; for the xy plane the
//! axial form is theta_vec = theta z_hat.

use crate::constants::PhysicalConstants;
use crate::diffops::{default_step, grad_fd, ScalarField};
use crate::error::{Error, Result};
use crate::fields::SolenoidField;
use crate::scalar::Scalar;
use crate::vec3::{Axis, Vec3};

/// Oriented coordinate plane carrying the noncommutativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Plane {
    Xy,
    Yz,
    Zx,
}

impl Plane {
    /// Ordered index pair (i, j) with theta_ij = +theta.
    pub fn indices(self) -> (Axis, Axis) {
        match self {
            Plane::Xy => (Axis::X, Axis::Y),
            Plane::Yz => (Axis::Y, Axis::Z),
            Plane::Zx => (Axis::Z, Axis::X),
        }
    }

    /// Unit normal e_i x e_j.
    pub fn normal(self) -> Axis {
        match self {
            Plane::Xy => Axis::Z,
            Plane::Yz => Axis::X,
            Plane::Zx => Axis::Y,
        }
    }
}

/// Antisymmetric noncommutativity parameter: a non-negative magnitude
/// (in m^2) and the oriented plane it lives in. Reversing the orientation
/// of the plane represents the opposite sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaMatrix<T> {
    theta: T,
    plane: Plane,
}

impl<T: Scalar> ThetaMatrix<T> {
    pub fn new(theta: T, plane: Plane) -> Result<Self> {
        if !theta.is_finite() || theta < T::zero() {
            return Err(Error::invalid(
                "theta must be a finite non-negative magnitude",
            ));
        }
        Ok(Self { theta, plane })
    }

    /// Noncommutativity in the xy plane, the axial form theta * z_hat.
    pub fn xy(theta: T) -> Result<Self> {
        Self::new(theta, Plane::Xy)
    }

    pub fn zero() -> Self {
        Self {
            theta: T::zero(),
            plane: Plane::Xy,
        }
    }

    pub fn magnitude(&self) -> T {
        self.theta
    }

    pub fn plane(&self) -> Plane {
        self.plane
    }

    pub fn is_zero(&self) -> bool {
        self.theta == T::zero()
    }

    /// Matrix element theta_ij: antisymmetric by construction, zero on the
    /// diagonal and outside the carrying plane.
    pub fn component(&self, i: Axis, j: Axis) -> T {
        let (a, b) = self.plane.indices();
        if (i, j) == (a, b) {
            self.theta
        } else if (i, j) == (b, a) {
            -self.theta
        } else {
            T::zero()
        }
    }

    /// Axial vector theta_vec with theta_vec_k = (1/2) eps_kij theta_ij.
    pub fn axial_vector(&self) -> Vec3<T> {
        Vec3::basis(self.plane.normal()) * self.theta
    }

    /// Contraction theta_ij u_i v_j = theta_vec . (u x v).
    pub fn contract(&self, u: Vec3<T>, v: Vec3<T>) -> T {
        let (a, b) = self.plane.indices();
        self.theta * (u.component(a) * v.component(b) - u.component(b) * v.component(a))
    }
}

/// Real and imaginary parts of a first-order star product evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexScalar<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> ComplexScalar<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }
}

/// First-order Moyal star product at a point:
///
///   (f * g)(p) = f g + (i/2) theta_ij (d_i f)(d_j g) + O(theta^2).
///
/// Derivatives come from `grad_fd` with the default step.
pub fn star_product_first_order<T, F, G>(
    f: &F,
    g: &G,
    p: Vec3<T>,
    theta: &ThetaMatrix<T>,
) -> Result<ComplexScalar<T>>
where
    T: Scalar,
    F: ScalarField<T>,
    G: ScalarField<T>,
{
    let h = default_step(p);
    let grad_f = grad_fd(f, p, h)?;
    let grad_g = grad_fd(g, p, h)?;
    Ok(star_product_with_gradients(
        f.eval(p),
        g.eval(p),
        grad_f,
        grad_g,
        theta,
    ))
}

/// Same star product with caller-supplied values and gradients, for fields
/// with analytic derivatives.
pub fn star_product_with_gradients<T: Scalar>(
    f: T,
    g: T,
    grad_f: Vec3<T>,
    grad_g: Vec3<T>,
    theta: &ThetaMatrix<T>,
) -> ComplexScalar<T> {
    ComplexScalar::new(f * g, theta.contract(grad_f, grad_g) * T::half())
}

/// Star commutator [f, g]_* = f*g - g*f. At first order the real parts
/// cancel exactly and the imaginary part is theta_ij (d_i f)(d_j g).
pub fn star_commutator<T, F, G>(
    f: &F,
    g: &G,
    p: Vec3<T>,
    theta: &ThetaMatrix<T>,
) -> Result<ComplexScalar<T>>
where
    T: Scalar,
    F: ScalarField<T>,
    G: ScalarField<T>,
{
    let h = default_step(p);
    let grad_f = grad_fd(f, p, h)?;
    let grad_g = grad_fd(g, p, h)?;
    let fg = star_product_with_gradients(f.eval(p), g.eval(p), grad_f, grad_g, theta);
    let gf = star_product_with_gradients(g.eval(p), f.eval(p), grad_g, grad_f, theta);
    Ok(ComplexScalar::new(fg.re - gf.re, fg.im - gf.im))
}

/// Bopp shift of a position under momentum p_mom:
///
///   x_i -> x_i - theta_ij p_j / (2 hbar).
pub fn bopp_shift<T: Scalar>(
    position: Vec3<T>,
    momentum: Vec3<T>,
    theta: &ThetaMatrix<T>,
    hbar: T,
) -> Result<Vec3<T>> {
    if !hbar.is_finite() || hbar <= T::zero() {
        return Err(Error::domain("hbar must be positive"));
    }
    let mut shifted = position;
    for i in Axis::ALL {
        let mut correction = T::zero();
        for j in Axis::ALL {
            correction = correction + theta.component(i, j) * momentum.component(j);
        }
        *shifted.component_mut(i) =
            shifted.component(i) - correction / (T::two() * hbar);
    }
    Ok(shifted)
}

/// The theta term of the kinetic momentum alone:
///
///   delta pi_i = -(q/2) theta_lj p_l (d_j A_i),
///
/// with the analytic potential gradients. Kept separate from the
/// commutative part because for physical parameters it is some sixty
/// orders of magnitude smaller and would be absorbed entirely by the sum.
pub fn nc_kinetic_correction<T: Scalar>(
    field: &SolenoidField<T>,
    p: Vec3<T>,
    momentum: Vec3<T>,
    charge: T,
    theta: &ThetaMatrix<T>,
) -> Result<Vec3<T>> {
    let mut correction = Vec3::zero();
    for i in Axis::ALL {
        let grad_ai = field.grad_potential_component(i, p)?;
        // theta_lj p_l d_j A_i over the carrying plane.
        let contraction = theta.contract(momentum, grad_ai);
        *correction.component_mut(i) = -charge * T::half() * contraction;
    }
    Ok(correction)
}

/// Kinetic momentum of a charge q in the solenoid potential, corrected to
/// first order in theta:
///
///   pi_i = p_i - q A_i - (q/2) theta_lj p_l (d_j A_i).
pub fn nc_kinetic_vector<T: Scalar>(
    field: &SolenoidField<T>,
    p: Vec3<T>,
    momentum: Vec3<T>,
    charge: T,
    theta: &ThetaMatrix<T>,
) -> Result<Vec3<T>> {
    let a = field.vector_potential(p)?;
    let correction = nc_kinetic_correction(field, p, momentum, charge, theta)?;
    Ok(momentum - a * charge + correction)
}

/// Electron momentum m_e v for a speed in m/s.
pub fn electron_momentum<T: Scalar>(speed: Vec3<T>) -> Vec3<T> {
    speed * PhysicalConstants::<T>::si().m_e
}
