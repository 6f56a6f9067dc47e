//! Dipole interferometry: the interaction vector of a moving dipole with
//! its driving field, and nullity checks of the first-order theta
//! corrections for the standard open-path configurations.
//!
//! The source expressions write the theta terms with an ambiguous
//! "divergence of G" acting inside a cross product. Two well-typed readings
//! exist and both are computed:
//!
//!   (a) divergence reading: the scalar div G multiplies the bracket,
//!       integrand = (div G) theta_vec . (w x dr) with w = v or G;
//!   (b) component-gradient reading: the structure of the solenoid
//!       correction with G in place of A,
//!       integrand = sum_i theta_vec . (w x grad G_i) dr_i.
//!
//! The nullity verdict keys on reading (a), which is the argument the
//! source configurations make (div G = 0); reading (b) is reported as a
//! diagnostic only.

use crate::constants::PhysicalConstants;
use crate::diffops::{divergence_fd, grad_fd, jacobian_fd, ScalarField, VectorField};
use crate::error::{Error, Result};
use crate::fields::{LinearField, SolenoidField, TkachukField, UniformField};
use crate::nc::ThetaMatrix;
use crate::paths::{PathSpec, StraightSegment};
use crate::quadrature::{piecewise, QuadOptions};
use crate::scalar::Scalar;
use crate::vec3::{Axis, Vec3};

/// Default scaled threshold below which a sample or integral counts as null.
pub const NULLITY_TOLERANCE: f64 = 1e-10;

/// Wider stencil than the differentiation default, keeping roundoff in the
/// sampled divergences well under the nullity tolerance.
fn nullity_step<T: Scalar>(p: Vec3<T>) -> T {
    T::lit(1e-4) * T::one().max(p.norm())
}

/// Which dipole species moves in which field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum DipoleKind {
    /// Magnetic dipole in an electric field.
    AharonovCasher,
    /// Electric dipole in a magnetic field.
    HeMcKellarWilkens,
    /// Electric dipole in the dual-wire field, an open-path analogue of the
    /// solenoid configuration.
    Tkachuk,
}

impl DipoleKind {
    /// Signs of the (velocity, quadratic) theta terms in the source
    /// expressions.
    fn term_signs<T: Scalar>(self) -> (T, T) {
        match self {
            DipoleKind::AharonovCasher => (T::one(), -T::one()),
            DipoleKind::HeMcKellarWilkens | DipoleKind::Tkachuk => (-T::one(), T::one()),
        }
    }
}

/// The driving field of a dipole configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldConfig<T> {
    Uniform(UniformField<T>),
    Linear(LinearField<T>),
    TkachukWires(TkachukField<T>),
}

impl<T: Scalar> FieldConfig<T> {
    pub fn in_domain(&self, p: Vec3<T>) -> bool {
        match self {
            FieldConfig::Uniform(_) | FieldConfig::Linear(_) => true,
            FieldConfig::TkachukWires(f) => f.is_exterior(p),
        }
    }

    pub fn eval(&self, p: Vec3<T>) -> Result<Vec3<T>> {
        match self {
            FieldConfig::Uniform(f) => Ok(f.eval(p)),
            FieldConfig::Linear(f) => Ok(f.eval(p)),
            FieldConfig::TkachukWires(f) => f.b_field(p),
        }
    }

    fn eval_unchecked(&self, p: Vec3<T>) -> Vec3<T> {
        match self {
            FieldConfig::Uniform(f) => f.eval(p),
            FieldConfig::Linear(f) => f.eval(p),
            FieldConfig::TkachukWires(f) => f.magnetic().eval(p),
        }
    }
}

/// A dipole beam on a path through its driving field.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleConfig<T> {
    kind: DipoleKind,
    dipole: Vec3<T>,
    field: FieldConfig<T>,
    path: PathSpec<T>,
    mass: T,
    speed: T,
}

impl<T: Scalar> DipoleConfig<T> {
    pub fn new(
        kind: DipoleKind,
        dipole: Vec3<T>,
        field: FieldConfig<T>,
        path: PathSpec<T>,
        mass: T,
        speed: T,
    ) -> Result<Self> {
        if !dipole.is_finite() || dipole == Vec3::zero() {
            return Err(Error::invalid("dipole moment must be finite and nonzero"));
        }
        if !mass.is_finite() || mass <= T::zero() {
            return Err(Error::invalid("dipole mass must be positive"));
        }
        let c = PhysicalConstants::<T>::si().c;
        if !speed.is_finite() || speed < T::zero() || speed >= c {
            return Err(Error::invalid("beam speed must lie in [0, c)"));
        }
        let wires = matches!(field, FieldConfig::TkachukWires(_));
        if wires != (kind == DipoleKind::Tkachuk) {
            return Err(Error::invalid(
                "dual-wire field pairs with the Tkachuk kind and only with it",
            ));
        }
        Ok(Self {
            kind,
            dipole,
            field,
            path,
            mass,
            speed,
        })
    }

    pub fn kind(&self) -> DipoleKind {
        self.kind
    }

    pub fn dipole(&self) -> Vec3<T> {
        self.dipole
    }

    pub fn field(&self) -> &FieldConfig<T> {
        &self.field
    }

    pub fn path(&self) -> &PathSpec<T> {
        &self.path
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn speed(&self) -> T {
        self.speed
    }

    /// G(p): m x E for a magnetic dipole, d x B for an electric one.
    pub fn interaction_vector(&self, p: Vec3<T>) -> Result<Vec3<T>> {
        Ok(self.dipole.cross(self.field.eval(p)?))
    }

    /// G as a differentiable field.
    pub fn interaction_field(&self) -> InteractionField<'_, T> {
        InteractionField { cfg: self }
    }

    fn interaction_component(&self, component: Axis) -> InteractionComponent<'_, T> {
        InteractionComponent {
            cfg: self,
            component,
        }
    }
}

pub struct InteractionField<'a, T> {
    cfg: &'a DipoleConfig<T>,
}

impl<T: Scalar> VectorField<T> for InteractionField<'_, T> {
    fn in_domain(&self, p: Vec3<T>) -> bool {
        self.cfg.field.in_domain(p)
    }

    fn eval(&self, p: Vec3<T>) -> Vec3<T> {
        self.cfg.dipole.cross(self.cfg.field.eval_unchecked(p))
    }
}

struct InteractionComponent<'a, T> {
    cfg: &'a DipoleConfig<T>,
    component: Axis,
}

impl<T: Scalar> ScalarField<T> for InteractionComponent<'_, T> {
    fn in_domain(&self, p: Vec3<T>) -> bool {
        self.cfg.field.in_domain(p)
    }

    fn eval(&self, p: Vec3<T>) -> T {
        self.cfg
            .dipole
            .cross(self.cfg.field.eval_unchecked(p))
            .component(self.component)
    }
}

/// div G at a point, by finite differences.
pub fn divergence_of_interaction<T: Scalar>(cfg: &DipoleConfig<T>, p: Vec3<T>) -> Result<T> {
    divergence_fd(&cfg.interaction_field(), p, nullity_step(p))
}

/// The two theta terms of a dipole phase under one reading.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DipoleTerms<T> {
    pub velocity_term: T,
    pub quadratic_term: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DipoleTermsBothReadings<T> {
    pub divergence_reading: DipoleTerms<T>,
    pub gradient_reading: DipoleTerms<T>,
    pub evaluations: u32,
}

/// Characteristic magnitudes sampled along the path, used to scale the
/// quadrature acceptance floors and the verdict. Without them, integrands
/// that are analytically zero but carry finite-difference noise would never
/// satisfy a purely relative tolerance.
struct PathScales<T> {
    interaction: T,
    jacobian: T,
    tangent: T,
}

const SCALE_SAMPLES: u32 = 16;

fn path_scales<T: Scalar>(cfg: &DipoleConfig<T>) -> Result<PathScales<T>> {
    let field = cfg.interaction_field();
    let mut scales = PathScales {
        interaction: T::zero(),
        jacobian: T::zero(),
        tangent: T::zero(),
    };
    for k in 0..=SCALE_SAMPLES {
        let t = T::from_u32(k).expect("small integer") / T::from_u32(SCALE_SAMPLES).unwrap();
        let p = cfg.path.point_at(t)?;
        if !field.in_domain(p) {
            return Err(Error::domain("path leaves the field domain"));
        }
        scales.interaction = scales.interaction.max(field.eval(p).norm());
        let jac = jacobian_fd(&field, p, nullity_step(p))?;
        for row in jac {
            for entry in row {
                scales.jacobian = scales.jacobian.max(entry.abs());
            }
        }
        scales.tangent = scales.tangent.max(cfg.path.tangent_at(t)?.norm());
    }
    Ok(scales)
}

/// Bare path integrals of the four integrand variants, per unit theta and
/// without mass prefactors or kind signs.
struct RawIntegrals<T> {
    a_velocity: T,
    a_quadratic: T,
    b_velocity: T,
    b_quadratic: T,
    evaluations: u32,
    scales: PathScales<T>,
}

impl<T: Scalar> RawIntegrals<T> {
    /// Natural magnitudes of the velocity and quadratic integrals if
    /// nothing cancelled. The divergence and the component gradients share
    /// the jacobian scale, so the two readings share these.
    fn reference_magnitudes(&self, speed: T) -> (T, T) {
        let s = &self.scales;
        (
            speed * s.jacobian * s.tangent,
            s.interaction * s.jacobian * s.tangent,
        )
    }
}

fn raw_nc_integrals<T: Scalar>(
    cfg: &DipoleConfig<T>,
    normal: Axis,
    opts: &QuadOptions<T>,
) -> Result<RawIntegrals<T>> {
    let scales = path_scales(cfg)?;
    let breaks = cfg.path.breakpoints();
    let field = cfg.interaction_field();

    let with_floor = |reference: T| QuadOptions {
        abs_tol: opts.abs_tol.max(opts.rel_tol * reference),
        ..*opts
    };
    let (velocity_reference, quadratic_reference) = (
        cfg.speed * scales.jacobian * scales.tangent,
        scales.interaction * scales.jacobian * scales.tangent,
    );
    let mut evaluations = 0u32;

    // Reading (a): the scalar divergence times theta_vec . (w x dr). With
    // the beam moving along the path, v x dr vanishes identically; the
    // velocity integral is kept anyway so the report states it rather than
    // assumes it.
    let a_velocity_integrand = |t: T| -> Result<T> {
        let p = cfg.path.point_at(t)?;
        let tangent = cfg.path.tangent_at(t)?;
        let v = tangent.normalized()? * cfg.speed;
        let div = divergence_fd(&field, p, nullity_step(p))?;
        Ok(div * v.cross(tangent).component(normal))
    };
    let a_quadratic_integrand = |t: T| -> Result<T> {
        let p = cfg.path.point_at(t)?;
        let tangent = cfg.path.tangent_at(t)?;
        let div = divergence_fd(&field, p, nullity_step(p))?;
        Ok(div * cfg.interaction_vector(p)?.cross(tangent).component(normal))
    };
    let a_velocity = piecewise(a_velocity_integrand, &breaks, &with_floor(velocity_reference))?;
    let a_quadratic = piecewise(
        a_quadratic_integrand,
        &breaks,
        &with_floor(quadratic_reference),
    )?;
    evaluations += a_velocity.evaluations + a_quadratic.evaluations;

    // Reading (b): sum_i theta_vec . (w x grad G_i) dr_i.
    let b_velocity_integrand = |t: T| -> Result<T> {
        let p = cfg.path.point_at(t)?;
        let tangent = cfg.path.tangent_at(t)?;
        let v = tangent.normalized()? * cfg.speed;
        let mut sum = T::zero();
        for i in Axis::ALL {
            let grad = grad_fd(&cfg.interaction_component(i), p, nullity_step(p))?;
            sum = sum + v.cross(grad).component(normal) * tangent.component(i);
        }
        Ok(sum)
    };
    let b_quadratic_integrand = |t: T| -> Result<T> {
        let p = cfg.path.point_at(t)?;
        let tangent = cfg.path.tangent_at(t)?;
        let g = cfg.interaction_vector(p)?;
        let mut sum = T::zero();
        for i in Axis::ALL {
            let grad = grad_fd(&cfg.interaction_component(i), p, nullity_step(p))?;
            sum = sum + g.cross(grad).component(normal) * tangent.component(i);
        }
        Ok(sum)
    };
    let b_velocity = piecewise(b_velocity_integrand, &breaks, &with_floor(velocity_reference))?;
    let b_quadratic = piecewise(
        b_quadratic_integrand,
        &breaks,
        &with_floor(quadratic_reference),
    )?;
    evaluations += b_velocity.evaluations + b_quadratic.evaluations;

    Ok(RawIntegrals {
        a_velocity: a_velocity.value,
        a_quadratic: a_quadratic.value,
        b_velocity: b_velocity.value,
        b_quadratic: b_quadratic.value,
        evaluations,
        scales,
    })
}

/// Both theta terms under both readings, assembled with the source
/// expressions' (1/2) m prefactor and kind-dependent signs. Theta
/// multiplies last, so the terms are bit-linear in it. The source leaves
/// its hbar bookkeeping implicit, so magnitudes are indicative; zeros are
/// exact regardless.
pub fn nc_dipole_terms<T: Scalar>(
    cfg: &DipoleConfig<T>,
    theta: &ThetaMatrix<T>,
    opts: &QuadOptions<T>,
) -> Result<DipoleTermsBothReadings<T>> {
    let raw = raw_nc_integrals(cfg, theta.plane().normal(), opts)?;
    Ok(assemble_terms(cfg, theta, &raw))
}

fn assemble_terms<T: Scalar>(
    cfg: &DipoleConfig<T>,
    theta: &ThetaMatrix<T>,
    raw: &RawIntegrals<T>,
) -> DipoleTermsBothReadings<T> {
    let (sign_v, sign_q) = cfg.kind.term_signs::<T>();
    let half_mass = cfg.mass * T::half();
    let th = theta.magnitude();
    let term = |sign: T, integral: T| th * (sign * half_mass * integral);
    DipoleTermsBothReadings {
        divergence_reading: DipoleTerms {
            velocity_term: term(sign_v, raw.a_velocity),
            quadratic_term: term(sign_q, raw.a_quadratic),
        },
        gradient_reading: DipoleTerms {
            velocity_term: term(sign_v, raw.b_velocity),
            quadratic_term: term(sign_q, raw.b_quadratic),
        },
        evaluations: raw.evaluations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Verdict {
    Null,
    NotNull,
}

/// Outcome of the nullity check for one configuration. Scaled quantities
/// are dimensionless: divergences relative to the largest sampled |G|,
/// integrals relative to their no-cancellation magnitudes.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NullityReport<T> {
    pub name: String,
    pub kind: DipoleKind,
    pub tolerance: T,
    /// Largest |G| sampled along the path.
    pub interaction_scale: T,
    pub max_scaled_divergence: T,
    pub scaled_velocity_integral: T,
    pub scaled_quadratic_integral: T,
    pub terms: DipoleTermsBothReadings<T>,
    pub verdict: Verdict,
}

const DIVERGENCE_SAMPLES: u32 = 32;

/// Samples div G along the path, integrates the theta terms, and declares
/// the configuration null when the divergence reading stays under the
/// tolerance. Independent of the magnitude of theta.
pub fn nullity_report<T: Scalar>(
    name: &str,
    cfg: &DipoleConfig<T>,
    theta: &ThetaMatrix<T>,
    tolerance: T,
    opts: &QuadOptions<T>,
) -> Result<NullityReport<T>> {
    if !tolerance.is_finite() || tolerance <= T::zero() {
        return Err(Error::invalid("nullity tolerance must be positive"));
    }
    let raw = raw_nc_integrals(cfg, theta.plane().normal(), opts)?;
    let scale = raw.scales.interaction;

    let mut max_scaled_divergence = T::zero();
    if scale > T::zero() {
        for k in 0..=DIVERGENCE_SAMPLES {
            let t = T::from_u32(k).expect("small integer")
                / T::from_u32(DIVERGENCE_SAMPLES).unwrap();
            let div = divergence_of_interaction(cfg, cfg.path.point_at(t)?)?;
            max_scaled_divergence = max_scaled_divergence.max(div.abs() / scale);
        }
    }

    let (velocity_reference, quadratic_reference) = raw.reference_magnitudes(cfg.speed);
    let scaled = |value: T, reference: T| {
        if value == T::zero() {
            T::zero()
        } else {
            value.abs() / reference
        }
    };
    let scaled_velocity_integral = scaled(raw.a_velocity, velocity_reference);
    let scaled_quadratic_integral = scaled(raw.a_quadratic, quadratic_reference);

    let verdict = if max_scaled_divergence < tolerance
        && scaled_velocity_integral < tolerance
        && scaled_quadratic_integral < tolerance
    {
        Verdict::Null
    } else {
        Verdict::NotNull
    };
    Ok(NullityReport {
        name: name.to_owned(),
        kind: cfg.kind,
        tolerance,
        interaction_scale: scale,
        max_scaled_divergence,
        scaled_velocity_integral,
        scaled_quadratic_integral,
        terms: assemble_terms(cfg, theta, &raw),
        verdict,
    })
}

pub struct NamedConfig<T> {
    pub name: &'static str,
    pub config: DipoleConfig<T>,
}

fn segment<T: Scalar>(start: [f64; 3], end: [f64; 3]) -> PathSpec<T> {
    PathSpec::from(
        StraightSegment::new(
            Vec3::new(T::lit(start[0]), T::lit(start[1]), T::lit(start[2])),
            Vec3::new(T::lit(end[0]), T::lit(end[1]), T::lit(end[2])),
        )
        .expect("distinct endpoints"),
    )
}

/// The three standard open-path configurations.
///
/// Magnitudes are representative laboratory values: a Bohr-magneton-scale
/// magnetic moment in a MV/m capacitor field, an atomic-scale electric
/// dipole in a tesla-scale transverse field, and the same dipole along the
/// dual-wire midplane. In the wire configuration the dipole points toward
/// -z so that G equals +|d| A on the midplane.
pub fn canonical_suite<T: Scalar>() -> Vec<NamedConfig<T>> {
    let magnetic_moment = 9.274e-24;
    let electric_dipole = 1.0e-29;
    let rubidium = 1.443e-25;
    let lithium = 1.153e-26;

    let sangster = DipoleConfig::new(
        DipoleKind::AharonovCasher,
        Vec3::new(T::lit(magnetic_moment), T::zero(), T::zero()),
        FieldConfig::Uniform(
            UniformField::new(Vec3::new(T::zero(), T::lit(1.0e6), T::zero())).unwrap(),
        ),
        segment([-0.25, 0.0, 0.0], [0.25, 0.0, 0.0]),
        T::lit(rubidium),
        T::lit(300.0),
    )
    .expect("valid configuration");

    let lepoutre = DipoleConfig::new(
        DipoleKind::HeMcKellarWilkens,
        Vec3::new(T::lit(electric_dipole), T::zero(), T::zero()),
        FieldConfig::Uniform(
            UniformField::new(Vec3::new(T::zero(), T::zero(), T::one())).unwrap(),
        ),
        segment([-0.25, 0.0, 0.0], [0.25, 0.0, 0.0]),
        T::lit(lithium),
        T::lit(1.0e3),
    )
    .expect("valid configuration");

    let tkachuk = DipoleConfig::new(
        DipoleKind::Tkachuk,
        Vec3::new(T::zero(), T::zero(), T::lit(-electric_dipole)),
        FieldConfig::TkachukWires(TkachukField::new(
            SolenoidField::new(T::lit(5.0), T::lit(10.0)).unwrap(),
        )),
        segment([-30.0, 8.0, 0.0], [30.0, 8.0, 0.0]),
        T::lit(lithium),
        T::lit(1.0e3),
    )
    .expect("valid configuration");

    vec![
        NamedConfig {
            name: "sangster-ac",
            config: sangster,
        },
        NamedConfig {
            name: "lepoutre-hmw",
            config: lepoutre,
        },
        NamedConfig {
            name: "tkachuk-wires",
            config: tkachuk,
        },
    ]
}

/// A deliberately non-null control: the field gradient is engineered so
/// that div G = -m k everywhere, which no open path can hide.
pub fn non_null_control<T: Scalar>() -> NamedConfig<T> {
    let magnetic_moment = 9.274e-24;
    let gradient = 1.0e6;
    let mut matrix = [[T::zero(); 3]; 3];
    matrix[1][0] = T::lit(gradient);
    let config = DipoleConfig::new(
        DipoleKind::AharonovCasher,
        Vec3::new(T::zero(), T::zero(), T::lit(magnetic_moment)),
        FieldConfig::Linear(LinearField::new(matrix).unwrap()),
        segment([-10.0, 8.0, 0.0], [50.0, 16.0, 0.0]),
        T::lit(1.443e-25),
        T::lit(300.0),
    )
    .expect("valid configuration");
    NamedConfig {
        name: "linear-electric-control",
        config,
    }
}
