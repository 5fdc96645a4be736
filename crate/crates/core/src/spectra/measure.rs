use alloc::vec::Vec;
use core::fmt;

use super::transforms::TransformOptions;
use super::{sphere_area, Kernel};
use crate::error::{Error, Result};
use crate::RealFn;

/// Shape of `G′` on one piece of a piecewise measure.
#[derive(Clone)]
pub enum PieceShape {
    /// `G′(λ)` given directly.
    Density(RealFn),
    /// Constant `G′`.
    Constant(f64),
    /// `G′(λ) = base(λ) + amplitude(λ)·cos(frequency/λ)`, for pieces that
    /// start at `λ = 0` and oscillate infinitely often there.
    ReciprocalOscillation {
        base: RealFn,
        amplitude: RealFn,
        frequency: f64,
    },
}

impl PieceShape {
    pub(crate) fn eval(&self, l: f64) -> f64 {
        match self {
            PieceShape::Density(f) => f(l),
            PieceShape::Constant(c) => *c,
            PieceShape::ReciprocalOscillation {
                base,
                amplitude,
                frequency,
            } => base(l) + amplitude(l) * libm::cos(frequency / l),
        }
    }
}

/// One piece `(lo, hi]` of a piecewise `G′`.
#[derive(Debug, Clone)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub shape: PieceShape,
}

/// Point mass of the radial spectral measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub mass: f64,
}

/// How the radial spectral distribution is stored.
#[derive(Clone)]
pub enum Representation {
    /// Nondecreasing `G(λ)`; integrals use integration by parts.
    Distribution {
        cdf: RealFn,
        support_end: Option<f64>,
        breakpoints: Vec<f64>,
    },
    /// Isotropic density `g(λ)` with `G′(λ) = ω_n λ^{n−1} g(λ)`.
    RadialDensity {
        density: RealFn,
        support_end: Option<f64>,
        breakpoints: Vec<f64>,
    },
    /// Ordered pieces of `G′`; zero outside them.
    Piecewise(Vec<Piece>),
    /// Finite sum of point masses.
    Atoms(Vec<Atom>),
}

/// Radial spectral measure `G` of an isotropic field in `ℝⁿ`.
#[derive(Debug, Clone)]
pub struct SpectralMeasure {
    pub(crate) dimension: u32,
    pub(crate) repr: Representation,
    pub(crate) total_mass: f64,
}

impl fmt::Debug for PieceShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceShape::Density(_) => f.write_str("Density(..)"),
            PieceShape::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            PieceShape::ReciprocalOscillation { frequency, .. } => f
                .debug_struct("ReciprocalOscillation")
                .field("frequency", frequency)
                .finish_non_exhaustive(),
        }
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Distribution { support_end, .. } => f
                .debug_struct("Distribution")
                .field("support_end", support_end)
                .finish_non_exhaustive(),
            Representation::RadialDensity { support_end, .. } => f
                .debug_struct("RadialDensity")
                .field("support_end", support_end)
                .finish_non_exhaustive(),
            Representation::Piecewise(p) => f.debug_tuple("Piecewise").field(p).finish(),
            Representation::Atoms(a) => f.debug_tuple("Atoms").field(a).finish(),
        }
    }
}

fn check_dimension(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::Dimension(n))
    } else {
        Ok(())
    }
}

fn check_breakpoints(bps: &[f64]) -> Result<()> {
    if bps.iter().any(|b| !b.is_finite() || *b < 0.0) {
        return Err(Error::InvalidMeasure("breakpoints must be finite and nonnegative"));
    }
    if bps.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidMeasure("breakpoints must be strictly increasing"));
    }
    Ok(())
}

fn check_mass(mass: f64) -> Result<f64> {
    if mass.is_finite() && mass > 0.0 {
        Ok(mass)
    } else {
        Err(Error::InvalidMeasure("total mass must be finite and positive"))
    }
}

impl SpectralMeasure {
    /// Measure given by its distribution function `G` with `G(∞) = total_mass`.
    ///
    /// `G` is sampled for monotonicity; `support_end`, when known, bounds the
    /// points of increase.
    pub fn from_distribution(
        dimension: u32,
        cdf: RealFn,
        total_mass: f64,
        support_end: Option<f64>,
        breakpoints: Vec<f64>,
    ) -> Result<Self> {
        check_dimension(dimension)?;
        check_breakpoints(&breakpoints)?;
        check_mass(total_mass)?;
        let top = support_end.unwrap_or(1e3);
        let mut prev = cdf(0.0);
        if !(prev >= 0.0) {
            return Err(Error::InvalidMeasure("G(0) must be nonnegative"));
        }
        for i in 1..=256 {
            let l = top * libm::pow(i as f64 / 256.0, 2.0);
            let v = cdf(l);
            if !(v >= prev - 1e-12 * total_mass) || v > total_mass * (1.0 + 1e-12) {
                return Err(Error::InvalidMeasure("G must be nondecreasing and bounded by its total mass"));
            }
            prev = v;
        }
        Ok(SpectralMeasure {
            dimension,
            repr: Representation::Distribution {
                cdf,
                support_end,
                breakpoints,
            },
            total_mass,
        })
    }

    /// Absolutely continuous measure with isotropic density `g`.
    pub fn from_radial_density(
        dimension: u32,
        density: RealFn,
        support_end: Option<f64>,
        breakpoints: Vec<f64>,
    ) -> Result<Self> {
        check_dimension(dimension)?;
        check_breakpoints(&breakpoints)?;
        let mut m = SpectralMeasure {
            dimension,
            repr: Representation::RadialDensity {
                density,
                support_end,
                breakpoints,
            },
            total_mass: 1.0,
        };
        m.total_mass = check_mass(m.mass_numeric()?)?;
        Ok(m)
    }

    /// As [`from_radial_density`](Self::from_radial_density), with a total
    /// mass known in advance (typically `B(0)`) instead of integrated.
    pub fn from_radial_density_with_mass(
        dimension: u32,
        density: RealFn,
        total_mass: f64,
        support_end: Option<f64>,
        breakpoints: Vec<f64>,
    ) -> Result<Self> {
        check_dimension(dimension)?;
        check_breakpoints(&breakpoints)?;
        Ok(SpectralMeasure {
            dimension,
            repr: Representation::RadialDensity {
                density,
                support_end,
                breakpoints,
            },
            total_mass: check_mass(total_mass)?,
        })
    }

    /// Piecewise `G′`; pieces must be ordered and non-overlapping.
    pub fn from_pieces(dimension: u32, pieces: Vec<Piece>) -> Result<Self> {
        check_dimension(dimension)?;
        if pieces.is_empty() {
            return Err(Error::InvalidMeasure("no pieces"));
        }
        for p in &pieces {
            if !(p.lo >= 0.0 && p.hi > p.lo) || p.lo.is_infinite() {
                return Err(Error::InvalidMeasure("piece bounds must satisfy 0 <= lo < hi"));
            }
            if let PieceShape::Constant(c) = p.shape {
                if !(c >= 0.0 && c.is_finite()) {
                    return Err(Error::InvalidMeasure("constant density must be nonnegative"));
                }
            }
            if matches!(p.shape, PieceShape::ReciprocalOscillation { .. }) && p.lo != 0.0 {
                return Err(Error::InvalidMeasure("reciprocal oscillation must start at 0"));
            }
        }
        if pieces.windows(2).any(|w| w[1].lo < w[0].hi) {
            return Err(Error::InvalidMeasure("pieces must be ordered and disjoint"));
        }
        let mut m = SpectralMeasure {
            dimension,
            repr: Representation::Piecewise(pieces),
            total_mass: 1.0,
        };
        m.total_mass = check_mass(m.mass_numeric()?)?;
        Ok(m)
    }

    /// Finite sum of point masses.
    pub fn from_atoms(dimension: u32, atoms: Vec<Atom>) -> Result<Self> {
        check_dimension(dimension)?;
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms"));
        }
        if atoms
            .iter()
            .any(|a| !(a.location >= 0.0 && a.location.is_finite() && a.mass > 0.0 && a.mass.is_finite()))
        {
            return Err(Error::InvalidMeasure("atoms need finite location >= 0 and mass > 0"));
        }
        let total = atoms.iter().map(|a| a.mass).sum();
        Ok(SpectralMeasure {
            dimension,
            repr: Representation::Atoms(atoms),
            total_mass: total,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// `G(∞) = B(0)`.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    /// `G(λ)`, the mass of the open ball of radius `λ`.
    pub fn distribution(&self, lambda: f64) -> Result<f64> {
        if !(lambda >= 0.0) {
            return Err(Error::Domain {
                function: "distribution",
                value: lambda,
                expected: "lambda >= 0",
            });
        }
        if lambda.is_infinite() {
            return Ok(self.total_mass);
        }
        match &self.repr {
            Representation::Distribution { cdf, .. } => Ok(cdf(lambda)),
            Representation::Atoms(atoms) => Ok(atoms.iter().filter(|a| a.location < lambda).map(|a| a.mass).sum()),
            Representation::Piecewise(pieces) if pieces.iter().all(|p| matches!(p.shape, PieceShape::Constant(_))) => {
                Ok(pieces
                    .iter()
                    .map(|p| match p.shape {
                        PieceShape::Constant(c) => c * (p.hi.min(lambda) - p.lo).max(0.0),
                        _ => 0.0,
                    })
                    .sum())
            }
            _ => self
                .integrate(Kernel::Power { p: 0.0 }, Some(lambda), &TransformOptions::precise())?
                .require(),
        }
    }

    /// `∫_{[0,λ)} μ^p dG(μ)`.
    pub fn truncated_moment(&self, p: f64, lambda: f64) -> Result<f64> {
        if !(lambda >= 0.0) {
            return Err(Error::Domain {
                function: "truncated_moment",
                value: lambda,
                expected: "lambda >= 0",
            });
        }
        self.integrate(Kernel::Power { p }, Some(lambda), &TransformOptions::precise())?
            .require()
    }

    /// `G′(λ)` for absolutely continuous representations.
    pub fn spectral_derivative(&self, lambda: f64) -> Option<f64> {
        match &self.repr {
            Representation::RadialDensity {
                density,
                support_end,
                ..
            } => Some(match support_end {
                Some(e) if lambda > *e => 0.0,
                _ => sphere_area(self.dimension) * libm::pow(lambda, self.dimension as f64 - 1.0) * density(lambda),
            }),
            Representation::Piecewise(pieces) => Some(
                pieces
                    .iter()
                    .find(|p| lambda > p.lo && lambda <= p.hi)
                    .map_or(0.0, |p| p.shape.eval(lambda)),
            ),
            _ => None,
        }
    }

    /// Isotropic density `g(λ) = G′(λ) / (ω_n λ^{n−1})`.
    pub fn density(&self, lambda: f64) -> Option<f64> {
        if let Representation::RadialDensity { density, support_end, .. } = &self.repr {
            return Some(match support_end {
                Some(e) if lambda > *e => 0.0,
                _ => density(lambda),
            });
        }
        let d = self.spectral_derivative(lambda)?;
        Some(d / (sphere_area(self.dimension) * libm::pow(lambda, self.dimension as f64 - 1.0)))
    }

    /// Upper bound of the points of increase, if bounded.
    pub fn support_end(&self) -> Option<f64> {
        match &self.repr {
            Representation::Distribution { support_end, .. } | Representation::RadialDensity { support_end, .. } => {
                *support_end
            }
            Representation::Piecewise(p) => p.last().map(|p| p.hi).filter(|h| h.is_finite()),
            Representation::Atoms(a) => a.iter().map(|a| a.location).fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x)))),
        }
    }

    fn mass_numeric(&self) -> Result<f64> {
        if let Representation::Piecewise(pieces) = &self.repr {
            if pieces.iter().all(|p| matches!(p.shape, PieceShape::Constant(_))) {
                return self.distribution(f64::MAX);
            }
        }
        self.integrate(Kernel::Power { p: 0.0 }, None, &TransformOptions::precise())?
            .require()
    }
}
