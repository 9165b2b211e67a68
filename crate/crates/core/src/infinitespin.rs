//! Continuous-spin (infinite-helicity) representations and string
//! intertwiners.
//!
//! The little group acts on L²-functions on the circle |k| = κ:
//! (D_κ(A_{z,θ})φ)(k) = e^{iz·k} φ(R_θ⁻¹k); the half-integer class carries
//! an extra factor e^{iθ/2}. The string intertwiners are the oscillatory
//! integrals u^(γ)(p,e)(k) = e^{−iγ/2} ∫d²z e^{iz·k} (B_p ξ(z)·e)^γ over
//! the null section ξ(z) = (½(|z|²+1), z₁, −z₂, ½(|z|²−1)), computed on a
//! truncated polar grid; forward-tuboid e keeps Im(B_pξ·e) > 0, so the
//! principal branch of w^γ never crosses its cut.

use crate::error::{Error, Result};
use crate::kinematics::{standard_boost, LittleGroupElement, MasslessMomentum, StringDirection, Tuboid};
use crate::minkowski::FourVector;
use crate::numeric::{fft, gauss_legendre_on, pairwise_sum};
use crate::rep::SpinorTensor;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

const ZERO: C64 = C64::new(0.0, 0.0);

/// A complex function on the circle |k| = κ, sampled at the uniform angles
/// φₙ = 2πn/N with N a power of two (so rotations can be applied by
/// trigonometric interpolation).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleFunction {
    pub kappa: f64,
    pub values: Vec<C64>,
}

impl CircleFunction {
    pub fn new(kappa: f64, values: Vec<C64>) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::Invalid("grid size must be a power of two".into()));
        }
        if kappa <= 0.0 {
            return Err(Error::Invalid("κ must be positive".into()));
        }
        Ok(CircleFunction { kappa, values })
    }

    pub fn from_fn<F: FnMut(f64) -> C64>(kappa: f64, n: usize, mut f: F) -> Result<Self> {
        let values = (0..n)
            .map(|i| f(2.0 * std::f64::consts::PI * i as f64 / n as f64))
            .collect();
        CircleFunction::new(kappa, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The grid approximation of the L²(dν_κ) norm, with measure ½ dφ.
    pub fn grid_norm(&self) -> f64 {
        let w = std::f64::consts::PI / self.len() as f64;
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * w).sqrt()
    }

    pub fn sub(&self, other: &CircleFunction) -> CircleFunction {
        CircleFunction {
            kappa: self.kappa,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: C64) -> CircleFunction {
        CircleFunction {
            kappa: self.kappa,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn rel_diff(&self, other: &CircleFunction) -> f64 {
        let scale = self.grid_norm().max(other.grid_norm()).max(1e-300);
        self.sub(other).grid_norm() / scale
    }

    /// Samples the function at angle φ − θ for every grid angle φ:
    /// an exact cyclic shift when θ is grid-aligned, trigonometric
    /// interpolation otherwise.
    pub fn rotated(&self, theta: f64) -> CircleFunction {
        let n = self.len();
        let step = 2.0 * std::f64::consts::PI / n as f64;
        let shift = theta / step;
        if (shift - shift.round()).abs() < 1e-12 {
            let s = shift.round() as i64;
            let values = (0..n)
                .map(|i| {
                    let src = (i as i64 - s).rem_euclid(n as i64) as usize;
                    self.values[src]
                })
                .collect();
            return CircleFunction {
                kappa: self.kappa,
                values,
            };
        }
        // Fourier side: value(φ−θ) = Σ_m c_m e^{i freq(m)(φ−θ)} / N.
        let mut coeffs = self.values.clone();
        fft(&mut coeffs, false);
        for (m, c) in coeffs.iter_mut().enumerate() {
            let freq = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
            *c *= C64::new(0.0, -freq * theta).exp();
        }
        fft(&mut coeffs, true);
        CircleFunction {
            kappa: self.kappa,
            values: coeffs.into_iter().map(|c| c / n as f64).collect(),
        }
    }
}

/// The integer-class little-group action (D_κ(A_{z,θ})φ)(k) = e^{iz·k}
/// φ(R_θ⁻¹k), with z read as the real pair (Re z, Im z).
pub fn rep_apply(elem: &LittleGroupElement, phi: &CircleFunction) -> CircleFunction {
    let rotated = phi.rotated(elem.theta);
    let n = rotated.len();
    let values = rotated
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            let zk = phi.kappa * (elem.z.re * angle.cos() + elem.z.im * angle.sin());
            v * C64::new(0.0, zk).exp()
        })
        .collect();
    CircleFunction {
        kappa: phi.kappa,
        values,
    }
}

/// The half-integer class: the same action with the extra prefactor
/// e^{iθ/2}; single-valued over Ẽ(2) with θ ∈ [0,4π).
pub fn rep_apply_halfinteger(elem: &LittleGroupElement, phi: &CircleFunction) -> CircleFunction {
    rep_apply(elem, phi).scale(C64::new(0.0, elem.theta / 2.0).exp())
}

/// The null section ξ(z) = (½(|z|²+1), z₁, −z₂, ½(|z|²−1)); its matrix is
/// the rank-one projector (z,1)ᵀ(z̄,1), so ξ·ξ = 0 and ξ⁰ > 0.
pub fn xi(z: C64) -> FourVector {
    let n = z.norm_sqr();
    FourVector([
        (0.5 * (n + 1.0)).into(),
        z.re.into(),
        (-z.im).into(),
        (0.5 * (n - 1.0)).into(),
    ])
}

/// Exponent parameter of the continuous-spin intertwiner. The defining
/// integral needs Re γ < 0; the plain quadrature used here requires
/// absolute convergence, Re γ ≤ −1.25 (the regime −1 < Re γ < 0 would need
/// oscillatory acceleration and is outside the default envelope).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParam {
    pub gamma: C64,
}

pub const GAMMA_QUADRATURE_LIMIT: f64 = -1.25;

impl GammaParam {
    pub fn new(gamma: C64) -> Result<Self> {
        if gamma.re >= 0.0 {
            return Err(Error::GammaOutOfRange {
                gamma: format!("{gamma}"),
                limit: 0.0,
            });
        }
        Ok(GammaParam { gamma })
    }

    pub fn quadrature_ready(&self) -> bool {
        self.gamma.re <= GAMMA_QUADRATURE_LIMIT
    }
}

/// Truncated polar grid in the z-plane: Gauss–Legendre nodes in the
/// compactifying variable u = r/(1+r) up to u(R), uniform (trapezoidal)
/// angular nodes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZGrid {
    pub radius: f64,
    pub n_radial: usize,
    pub n_angular: usize,
}

impl ZGrid {
    pub fn default_grid() -> Self {
        // The angular count must resolve the e^{iz·k} oscillation out to
        // |z| = R (≈ κR radians), which dominates the error budget.
        ZGrid {
            radius: 60.0,
            n_radial: 192,
            n_angular: 128,
        }
    }

    pub fn refined(&self) -> ZGrid {
        ZGrid {
            radius: self.radius * 2.0,
            n_radial: self.n_radial * 2,
            n_angular: self.n_angular * 2,
        }
    }

    /// Bound on the neglected |z| > R part relative to the leading scale:
    /// the absolute-convergence estimate (R²/2)^{Re γ + 1}, damped by the
    /// stationary-phase factor √(2/(πκR)) of the e^{iz·k} oscillation
    /// (κ = 1 reference). Still pessimistic by two orders against the
    /// measured truncation error; the operative accuracy gate is the
    /// self-convergence check under grid refinement.
    pub fn tail_bound(&self, gamma: &GammaParam) -> f64 {
        let crude = (0.5 * self.radius * self.radius).powf(gamma.gamma.re + 1.0);
        crude * (2.0 / (std::f64::consts::PI * self.radius)).sqrt()
    }

    fn nodes(&self) -> (Vec<f64>, Vec<f64>) {
        let u_max = self.radius / (1.0 + self.radius);
        let (us, wu) = gauss_legendre_on(self.n_radial, 0.0, u_max);
        let mut rs = Vec::with_capacity(self.n_radial);
        let mut ws = Vec::with_capacity(self.n_radial);
        for (u, w) in us.iter().zip(&wu) {
            let denom = 1.0 - u;
            let r = u / denom;
            // measure r dr = r/(1-u)² du
            rs.push(r);
            ws.push(w * r / (denom * denom));
        }
        (rs, ws)
    }
}

/// The scalar continuous-spin intertwiner
/// u^(γ)(p,e)(k) = e^{−iγ/2} ∫d²z e^{iz·k} (B_p ξ(z)·e)^γ on the k-grid.
/// The direction must lie in the forward tuboid; the sign of Im(B_pξ·e)
/// is checked at every node.
pub fn intertwiner_gamma(
    p: &MasslessMomentum,
    e: &StringDirection,
    gamma: &GammaParam,
    grid: &ZGrid,
    kappa: f64,
    n_k: usize,
) -> Result<CircleFunction> {
    if !gamma.quadrature_ready() {
        return Err(Error::GammaOutOfRange {
            gamma: format!("{}", gamma.gamma),
            limit: GAMMA_QUADRATURE_LIMIT,
        });
    }
    if e.tag() != Tuboid::Forward {
        return Err(Error::Invalid(
            "the continuous-spin intertwiner needs a forward-tuboid direction".into(),
        ));
    }
    let boost = standard_boost(p)?;
    let (rs, ws) = grid.nodes();
    let m = grid.n_angular;
    let w_ang = 2.0 * std::f64::consts::PI / m as f64;
    // Precompute base values and phases per z-node.
    let mut nodes: Vec<(C64, C64)> = Vec::with_capacity(rs.len() * m); // (z, weight·base^γ)
    for (r, wr) in rs.iter().zip(&ws) {
        for a in 0..m {
            let alpha = 2.0 * std::f64::consts::PI * a as f64 / m as f64;
            let z = C64::new(r * alpha.cos(), r * alpha.sin());
            let moved = crate::minkowski::lorentz_apply(&boost, &xi(z));
            let base = moved.dot(e.vector());
            if base.im <= 0.0 {
                return Err(Error::BranchCutCrossing);
            }
            let value = (base.ln() * gamma.gamma).exp() * (wr * w_ang);
            nodes.push((z, value));
        }
    }
    let prefactor = (C64::new(0.0, -0.5) * gamma.gamma).exp();
    let mut values = Vec::with_capacity(n_k);
    for i in 0..n_k {
        let phi = 2.0 * std::f64::consts::PI * i as f64 / n_k as f64;
        let k = (kappa * phi.cos(), kappa * phi.sin());
        let terms: Vec<C64> = nodes
            .iter()
            .map(|(z, v)| v * C64::new(0.0, z.re * k.0 + z.im * k.1).exp())
            .collect();
        values.push(pairwise_sum(&terms) * prefactor);
    }
    CircleFunction::new(kappa, values)
}

/// The half-integer-class intertwiner: the scalar one tensored with the
/// spinor factor B_p⁻¹u₋. The factor is carried in the dotted family,
/// whose little-group phase e^{iθ/2} matches the prefactor of D_{κ,−}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinorCircleFunction {
    pub scalar: CircleFunction,
    pub spinor: SpinorTensor,
}

impl SpinorCircleFunction {
    pub fn grid_norm(&self) -> f64 {
        self.scalar.grid_norm() * self.spinor.norm()
    }

    /// Flattens to two circle functions (one per spinor component) for
    /// norm and difference computations.
    fn component(&self, i: u32) -> CircleFunction {
        self.scalar.scale(self.spinor.component(0, i))
    }

    pub fn rel_diff(&self, other: &SpinorCircleFunction) -> f64 {
        let scale = self.grid_norm().max(other.grid_norm()).max(1e-300);
        let d0 = self.component(0).sub(&other.component(0)).grid_norm();
        let d1 = self.component(1).sub(&other.component(1)).grid_norm();
        (d0 * d0 + d1 * d1).sqrt() / scale
    }
}

pub fn intertwiner_halfinteger(
    p: &MasslessMomentum,
    e: &StringDirection,
    gamma: &GammaParam,
    grid: &ZGrid,
    kappa: f64,
    n_k: usize,
) -> Result<SpinorCircleFunction> {
    let scalar = intertwiner_gamma(p, e, gamma, grid, kappa, n_k)?;
    let b = standard_boost(p)?;
    let v = b.matrix().inverse().mul_vec([C64::new(1.0, 0.0), ZERO]);
    Ok(SpinorCircleFunction {
        scalar,
        spinor: SpinorTensor::dotted(v),
    })
}

/// Which of the two continuous-spin classes is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinClass {
    Integer,
    HalfInteger,
}

/// Intertwining residual at the standard momentum over random little-group
/// elements: D_κ(A_{z,θ}) u^(γ)(p̂,e) = u^(γ)(p̂, Λ(A_{z,θ})e) for the
/// integer class; for the half-integer class the extra e^{iθ/2} of D_{κ,−}
/// is matched by the conjugate-family transformation of the spinor factor.
pub fn check_intertwining_infinite(
    class: SpinClass,
    kappa: f64,
    gamma: &GammaParam,
    samples: usize,
    seed: u64,
    grid: &ZGrid,
    n_k: usize,
) -> Result<crate::intertwiner::ResidualReport> {
    let phat = crate::kinematics::standard_momentum();
    let mut residuals = Vec::with_capacity(samples);
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let s: f64 = rng.gen_range(0.3..1.0);
        let e = crate::kinematics::make_complex_string(s, &crate::minkowski::SL2CElement::identity());
        let elem = LittleGroupElement::new(
            C64::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8)),
            rng.gen_range(0.0..4.0 * std::f64::consts::PI),
        );
        let moved = e.transform(&elem.element());
        let r = match class {
            SpinClass::Integer => {
                let u = intertwiner_gamma(&phat, &e, gamma, grid, kappa, n_k)?;
                let lhs = rep_apply(&elem, &u);
                let rhs = intertwiner_gamma(&phat, &moved, gamma, grid, kappa, n_k)?;
                lhs.rel_diff(&rhs)
            }
            SpinClass::HalfInteger => {
                // D^(0,1/2)(A⁻¹) u(Λ(A)e) = D_{κ,−}(A) u(e): the e^{iθ/2}
                // of the Wigner side is matched by the dotted spinor index.
                let u = intertwiner_halfinteger(&phat, &e, gamma, grid, kappa, n_k)?;
                let moved_u = intertwiner_halfinteger(&phat, &moved, gamma, grid, kappa, n_k)?;
                let lhs = SpinorCircleFunction {
                    scalar: moved_u.scalar,
                    spinor: crate::rep::apply_rep(
                        crate::rep::RepLabel::new(0, 1),
                        &elem.element().inverse(),
                        &moved_u.spinor,
                    )?,
                };
                let rhs = SpinorCircleFunction {
                    scalar: rep_apply_halfinteger(&elem, &u.scalar),
                    spinor: u.spinor,
                };
                lhs.rel_diff(&rhs)
            }
        };
        residuals.push(r);
    }
    Ok(crate::intertwiner::ResidualReport::from_residuals(&residuals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::SL2CElement;

    #[test]
    fn xi_examples() {
        let v = xi(ZERO);
        assert!((v - FourVector::real(0.5, 0.0, 0.0, -0.5)).euclid_norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..1000 {
            let z = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let v = xi(z);
            assert!(v.minkowski_square().norm() < 1e-12);
            assert!(v.0[0].re > 0.0);
        }
        // positive imaginary pairing with forward directions
        let e = crate::kinematics::make_complex_string(0.4, &SL2CElement::identity());
        for z in [ZERO, C64::new(1.5, -0.7)] {
            assert!(xi(z).dot(e.vector()).im > 0.0);
        }
    }

    #[test]
    fn rotation_grid_aligned_is_exact_shift() {
        let phi = CircleFunction::from_fn(1.0, 64, |a| C64::new(a.sin(), (2.0 * a).cos()))
            .unwrap();
        let theta = 2.0 * std::f64::consts::PI * 5.0 / 64.0;
        let rot = phi.rotated(theta);
        for i in 0..64usize {
            let src = (i + 64 - 5) % 64;
            assert!((rot.values[i] - phi.values[src]).norm() < 1e-14);
        }
    }

    #[test]
    fn rep_identity_and_unitarity() {
        let phi =
            CircleFunction::from_fn(1.3, 128, |a| C64::new((3.0 * a).cos(), a.sin())).unwrap();
        let id = LittleGroupElement::identity();
        assert!(rep_apply(&id, &phi).rel_diff(&phi) < 1e-14);
        let g = LittleGroupElement::new(C64::new(0.4, -0.9), 1.7);
        let moved = rep_apply(&g, &phi);
        assert!((moved.grid_norm() - phi.grid_norm()).abs() < 1e-8 * phi.grid_norm());
    }

    #[test]
    fn rep_group_law() {
        let phi = CircleFunction::from_fn(1.0, 256, |a| {
            C64::new((2.0 * a).cos() + 0.3 * a.sin(), (a).cos())
        })
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let g1 = LittleGroupElement::new(
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                rng.gen_range(0.0..4.0 * std::f64::consts::PI),
            );
            let g2 = LittleGroupElement::new(
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                rng.gen_range(0.0..4.0 * std::f64::consts::PI),
            );
            let lhs = rep_apply(&g1, &rep_apply(&g2, &phi));
            let rhs = rep_apply(&g1.compose(&g2), &phi);
            assert!(lhs.rel_diff(&rhs) < 1e-8, "group law {}", lhs.rel_diff(&rhs));
            // half-integer class
            let lhs = rep_apply_halfinteger(&g1, &rep_apply_halfinteger(&g2, &phi));
            let rhs = rep_apply_halfinteger(&g1.compose(&g2), &phi);
            assert!(lhs.rel_diff(&rhs) < 1e-8);
        }
    }

    #[test]
    fn halfinteger_two_pi_flips_sign() {
        let phi = CircleFunction::from_fn(1.0, 64, |a| C64::new(a.cos(), 0.0)).unwrap();
        let g = LittleGroupElement::new(ZERO, 2.0 * std::f64::consts::PI);
        let moved = rep_apply_halfinteger(&g, &phi);
        assert!(moved.rel_diff(&phi.scale(C64::new(-1.0, 0.0))) < 1e-12);
    }

    #[test]
    fn halfinteger_spinor_factor_at_phat() {
        let phat = crate::kinematics::standard_momentum();
        let e = crate::kinematics::make_complex_string(0.5, &SL2CElement::identity());
        let gamma = GammaParam::new(C64::new(-1.5, 0.0)).unwrap();
        let grid = ZGrid {
            radius: 20.0,
            n_radial: 48,
            n_angular: 32,
        };
        let u = intertwiner_halfinteger(&phat, &e, &gamma, &grid, 1.0, 16).unwrap();
        assert!((u.spinor.component(0, 0) - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(u.spinor.component(0, 1).norm() < 1e-14);
        // the combined norm factorizes into scalar part times spinor norm
        assert!(
            (u.grid_norm() - u.scalar.grid_norm() * u.spinor.norm()).abs()
                < 1e-12 * u.grid_norm()
        );
    }

    #[test]
    fn gamma_param_gates() {
        assert!(GammaParam::new(C64::new(0.5, 0.0)).is_err());
        let g = GammaParam::new(C64::new(-0.5, 0.0)).unwrap();
        assert!(!g.quadrature_ready());
        let g = GammaParam::new(C64::new(-1.5, 0.0)).unwrap();
        assert!(g.quadrature_ready());
    }
}
