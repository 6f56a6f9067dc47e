//! Electromagnetic field configurations.
//!
//! The central object is the infinite solenoid of radius `a` along the z
//! axis with uniform interior field B0. Outside the bore (rho > a) the
//! magnetic field vanishes while the vector potential survives:
//!
//!   A(x, y) = B0 a^2 / (2 rho^2) * (-y, x, 0),      rho^2 = x^2 + y^2.

use crate::diffops::{ScalarField, VectorField};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec3::{Axis, Vec3};

/// Infinite solenoid along z. Exterior-only evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolenoidField<T> {
    radius: T,
    b0: T,
}

impl<T: Scalar> SolenoidField<T> {
    pub fn new(radius: T, b0: T) -> Result<Self> {
        if !radius.is_finite() || radius <= T::zero() {
            return Err(Error::invalid("radius must be positive"));
        }
        if !b0.is_finite() {
            return Err(Error::invalid("interior field B0 must be finite"));
        }
        Ok(Self { radius, b0 })
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn b0(&self) -> T {
        self.b0
    }

    /// Total flux through the bore, pi a^2 B0, in T m^2.
    pub fn flux(&self) -> T {
        T::PI() * self.radius * self.radius * self.b0
    }

    fn rho_squared(&self, p: Vec3<T>) -> T {
        p.x * p.x + p.y * p.y
    }

    /// True strictly outside the bore.
    pub fn is_exterior(&self, p: Vec3<T>) -> bool {
        self.rho_squared(p) > self.radius * self.radius
    }

    fn require_exterior(&self, p: Vec3<T>) -> Result<()> {
        if self.is_exterior(p) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "point at rho = {} lies inside the solenoid bore (radius {})",
                self.rho_squared(p).sqrt().as_f64(),
                self.radius.as_f64()
            )))
        }
    }

    /// Vector potential outside the bore, in T m.
    pub fn vector_potential(&self, p: Vec3<T>) -> Result<Vec3<T>> {
        self.require_exterior(p)?;
        let k = self.b0 * self.radius * self.radius * T::half() / self.rho_squared(p);
        Ok(Vec3::new(-p.y * k, p.x * k, T::zero()))
    }

    /// Analytic gradient of one potential component:
    ///
    ///   grad A_x = B0 a^2/2 * ( 2xy, y^2 - x^2, 0) / rho^4
    ///   grad A_y = B0 a^2/2 * (y^2 - x^2, -2xy, 0) / rho^4
    pub fn grad_potential_component(&self, component: Axis, p: Vec3<T>) -> Result<Vec3<T>> {
        self.require_exterior(p)?;
        let rho2 = self.rho_squared(p);
        let k = self.b0 * self.radius * self.radius * T::half() / (rho2 * rho2);
        let xy2 = T::two() * p.x * p.y;
        let diff = p.y * p.y - p.x * p.x;
        Ok(match component {
            Axis::X => Vec3::new(xy2 * k, diff * k, T::zero()),
            Axis::Y => Vec3::new(diff * k, -xy2 * k, T::zero()),
            Axis::Z => Vec3::zero(),
        })
    }

    /// The potential as a vector field, for quadrature and difference
    /// operators.
    pub fn potential(&self) -> SolenoidPotential<'_, T> {
        SolenoidPotential { field: self }
    }

    /// One potential component as a scalar field.
    pub fn potential_component(&self, component: Axis) -> PotentialComponent<'_, T> {
        PotentialComponent {
            field: self,
            component,
        }
    }
}

pub struct SolenoidPotential<'a, T> {
    field: &'a SolenoidField<T>,
}

impl<T: Scalar> VectorField<T> for SolenoidPotential<'_, T> {
    fn in_domain(&self, p: Vec3<T>) -> bool {
        self.field.is_exterior(p)
    }

    fn eval(&self, p: Vec3<T>) -> Vec3<T> {
        let k = self.field.b0 * self.field.radius * self.field.radius * T::half()
            / self.field.rho_squared(p);
        Vec3::new(-p.y * k, p.x * k, T::zero())
    }
}

pub struct PotentialComponent<'a, T> {
    field: &'a SolenoidField<T>,
    component: Axis,
}

impl<T: Scalar> ScalarField<T> for PotentialComponent<'_, T> {
    fn in_domain(&self, p: Vec3<T>) -> bool {
        self.field.is_exterior(p)
    }

    fn eval(&self, p: Vec3<T>) -> T {
        SolenoidPotential { field: self.field }
            .eval(p)
            .component(self.component)
    }
}

/// Homogeneous field with a fixed value everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformField<T> {
    value: Vec3<T>,
}

impl<T: Scalar> UniformField<T> {
    pub fn new(value: Vec3<T>) -> Result<Self> {
        if value.is_finite() {
            Ok(Self { value })
        } else {
            Err(Error::invalid("uniform field value must be finite"))
        }
    }

    pub fn value(&self) -> Vec3<T> {
        self.value
    }
}

impl<T: Scalar> VectorField<T> for UniformField<T> {
    fn eval(&self, _: Vec3<T>) -> Vec3<T> {
        self.value
    }
}

/// Field linear in position: F(p) = M p. Its divergence is the constant
/// trace of M.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearField<T> {
    matrix: [[T; 3]; 3],
}

impl<T: Scalar> LinearField<T> {
    pub fn new(matrix: [[T; 3]; 3]) -> Result<Self> {
        if matrix.iter().flatten().all(|m| m.is_finite()) {
            Ok(Self { matrix })
        } else {
            Err(Error::invalid("field gradient matrix must be finite"))
        }
    }

    pub fn divergence(&self) -> T {
        self.matrix[0][0] + self.matrix[1][1] + self.matrix[2][2]
    }
}

impl<T: Scalar> VectorField<T> for LinearField<T> {
    fn eval(&self, p: Vec3<T>) -> Vec3<T> {
        let r = [p.x, p.y, p.z];
        let row = |i: usize| {
            self.matrix[i][0] * r[0] + self.matrix[i][1] * r[1] + self.matrix[i][2] * r[2]
        };
        Vec3::new(row(0), row(1), row(2))
    }
}

/// Dual-wire configuration: the vector potential A_T = z A, with A the
/// solenoid exterior potential, produces the magnetic field
///
///   B = curl(z A) = z_hat x A + z curl(A) = z_hat x A        (exterior),
///
/// which at the midplane z = 0 equals -A x z_hat.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TkachukField<T> {
    solenoid: SolenoidField<T>,
}

impl<T: Scalar> TkachukField<T> {
    pub fn new(solenoid: SolenoidField<T>) -> Self {
        Self { solenoid }
    }

    pub fn solenoid(&self) -> &SolenoidField<T> {
        &self.solenoid
    }

    pub fn is_exterior(&self, p: Vec3<T>) -> bool {
        self.solenoid.is_exterior(p)
    }

    /// A_T(p) = z A(x, y), in T m.
    pub fn vector_potential(&self, p: Vec3<T>) -> Result<Vec3<T>> {
        Ok(self.solenoid.vector_potential(p)? * p.z)
    }

    /// B(p) = z_hat x A(x, y), in T. Valid at every exterior point; at z = 0
    /// this is -A x z_hat.
    pub fn b_field(&self, p: Vec3<T>) -> Result<Vec3<T>> {
        let a = self.solenoid.vector_potential(p)?;
        Ok(Vec3::new(-a.y, a.x, T::zero()))
    }

    pub fn potential(&self) -> TkachukPotential<'_, T> {
        TkachukPotential { field: self }
    }

    pub fn magnetic(&self) -> TkachukMagnetic<'_, T> {
        TkachukMagnetic { field: self }
    }
}

pub struct TkachukPotential<'a, T> {
    field: &'a TkachukField<T>,
}

impl<T: Scalar> VectorField<T> for TkachukPotential<'_, T> {
    fn in_domain(&self, p: Vec3<T>) -> bool {
        self.field.is_exterior(p)
    }

    fn eval(&self, p: Vec3<T>) -> Vec3<T> {
        SolenoidPotential {
            field: &self.field.solenoid,
        }
        .eval(p)
            * p.z
    }
}

pub struct TkachukMagnetic<'a, T> {
    field: &'a TkachukField<T>,
}

impl<T: Scalar> VectorField<T> for TkachukMagnetic<'_, T> {
    fn in_domain(&self, p: Vec3<T>) -> bool {
        self.field.is_exterior(p)
    }

    fn eval(&self, p: Vec3<T>) -> Vec3<T> {
        let a = SolenoidPotential {
            field: &self.field.solenoid,
        }
        .eval(p);
        Vec3::new(-a.y, a.x, T::zero())
    }
}
