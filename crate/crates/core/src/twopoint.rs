//! Momentum-space two-point kernels of string fields, UV scaling probes,
//! smeared two-point functions over the forward cone, a commutator test of
//! string locality, and the reflection (PCT) sign factors.
//!
//! Kernel convention: the mixed two-point kernel of φ (left) against φ*
//! (right) is M(p,e,e') = u_left(p,e) ⊗ conj(u_right(p, ē')), where the
//! inner conjugation of the argument keeps the second factor holomorphic in
//! e' (its restriction to real e' is the plain entrywise conjugate). At
//! e' = ē the kernel is a Gram matrix, Hermitian and positive
//! semidefinite.

use crate::error::{Error, Result};
use crate::intertwiner::IntertwinerSpec;
use crate::kinematics::{
    decompose_string, make_complex_string, MasslessMomentum, StringDirection, Tuboid,
};
use crate::minkowski::{wedge_boost, wedge_rotation, FourVector, Matrix2C, SL2CElement};
use crate::numeric::{gauss_legendre_on, jacobi_hermitian, pairwise_sum};
use crate::potential::conjugate_direction;
use crate::rep::{rep_matrix, RepLabel};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

const ZERO: C64 = C64::new(0.0, 0.0);

// ---------------------------------------------------------------------------
// Pointwise kernels
// ---------------------------------------------------------------------------

/// A kernel matrix M_{αβ} over weighted spinor components (the weighting
/// makes Hermiticity and positivity statements about the fully expanded
/// index set).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelMatrix {
    pub rows: usize,
    pub cols: usize,
    pub m: Vec<C64>,
}

impl KernelMatrix {
    fn from_outer(left: &[C64], right: &[C64]) -> Self {
        let mut m = Vec::with_capacity(left.len() * right.len());
        for a in left {
            for b in right {
                m.push(a * b);
            }
        }
        KernelMatrix {
            rows: left.len(),
            cols: right.len(),
            m,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.m[r * self.cols + c]
    }

    /// Max |M − M†| entry over the matrix scale; only square kernels.
    pub fn hermiticity_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let scale = self.m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst / scale
    }

    /// Smallest eigenvalue of the Hermitian part, relative to the largest
    /// absolute eigenvalue.
    pub fn min_eigenvalue_relative(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut herm = vec![vec![ZERO; n]; n];
        for r in 0..n {
            for c in 0..n {
                herm[r][c] = (self.get(r, c) + self.get(c, r).conj()) * 0.5;
            }
        }
        let (vals, _) = jacobi_hermitian(&herm);
        let top = vals.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
        vals[0] / top
    }
}

/// The mixed kernel ⟨φ φ*⟩: u_left(p,e) ⊗ conj(u_right(p, ē')).
pub fn mixed_kernel(
    left: &IntertwinerSpec,
    right: &IntertwinerSpec,
    p: &MasslessMomentum,
    e: &StringDirection,
    eprime: &StringDirection,
) -> Result<KernelMatrix> {
    let l = left.evaluate(p, e)?;
    let r = right.evaluate(p, &conjugate_direction(eprime)?)?;
    let rc: Vec<C64> = r.weighted_components().iter().map(|z| z.conj()).collect();
    Ok(KernelMatrix::from_outer(&l.weighted_components(), &rc))
}

/// The unmixed kernel ⟨φ φ⟩: v_left(p,e,−h) ⊗ u_right(p,e'). For fields
/// transforming in an irreducible representation with j+k odd these vanish
/// identically (Fermi fields); only the mixed functions exist, so the
/// request is refused. A helicity mismatch (h_right ≠ −h_left) gives the
/// zero kernel.
pub fn unmixed_kernel(
    left: &IntertwinerSpec,
    right: &IntertwinerSpec,
    p: &MasslessMomentum,
    e: &StringDirection,
    eprime: &StringDirection,
) -> Result<KernelMatrix> {
    let rep = left.rep();
    if (rep.j + rep.k) % 2 == 1 {
        return Err(Error::FermiUnmixedKernel);
    }
    if right.helicity() != -left.helicity() {
        return Ok(KernelMatrix {
            rows: rep.dim(),
            cols: right.rep().dim(),
            m: vec![ZERO; rep.dim() * right.rep().dim()],
        });
    }
    let v = left.v_from_u(p, e)?;
    let u = right.evaluate(p, eprime)?;
    Ok(KernelMatrix::from_outer(
        &v.weighted_components(),
        &u.weighted_components(),
    ))
}

// ---------------------------------------------------------------------------
// UV scaling
// ---------------------------------------------------------------------------

/// Least-squares slope of log‖u(λp,e)‖ against log λ. Field strengths give
/// |h| exactly, potentials 0.
pub fn uv_scaling_slope(
    spec: &IntertwinerSpec,
    p: &MasslessMomentum,
    e: &StringDirection,
    lambdas: &[f64],
) -> Result<f64> {
    let mut xs = Vec::with_capacity(lambdas.len());
    let mut ys = Vec::with_capacity(lambdas.len());
    for &lam in lambdas {
        let norm = spec.evaluate(&p.scaled(lam), e)?.norm();
        xs.push(lam.ln());
        ys.push(norm.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// The default λ grid {1, 2, 4, …, 2¹⁰}.
pub fn default_lambda_grid() -> Vec<f64> {
    (0..=10).map(|i| 2f64.powi(i)).collect()
}

// ---------------------------------------------------------------------------
// Smearing and quadrature
// ---------------------------------------------------------------------------

/// A Gaussian test function exp(−|x−x₀|²/(2σ²)) (Euclidean in the four
/// coordinates), optionally hit with time derivatives; the Fourier
/// transform stays closed-form and Gaussian-decaying in all four momentum
/// components. Derivative orders ≥ 1 have vanishing zero mode, which is
/// what string-field kernels with a 1/(p·e) factor per side need to be
/// integrable at the tip of the cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmearingFunction {
    pub center: [f64; 4],
    pub width: f64,
    pub time_derivative_order: u32,
}

impl SmearingFunction {
    pub fn new(center: [f64; 4], width: f64) -> Self {
        assert!(width > 0.0);
        SmearingFunction {
            center,
            width,
            time_derivative_order: 0,
        }
    }

    pub fn time_derivative(center: [f64; 4], width: f64, order: u32) -> Self {
        assert!(width > 0.0);
        SmearingFunction {
            center,
            width,
            time_derivative_order: order,
        }
    }

    /// f̂(p) = ∫ f(x) e^{ip·x} d⁴x (Minkowski pairing p·x), for real p:
    /// (−ip⁰)ⁿ (2πσ²)² e^{ip·x₀} exp(−σ²(p⁰² + |p⃗|²)/2).
    pub fn fourier(&self, p: &FourVector) -> C64 {
        let s2 = self.width * self.width;
        let px = p.0[0].re * self.center[0]
            - p.0[1].re * self.center[1]
            - p.0[2].re * self.center[2]
            - p.0[3].re * self.center[3];
        let euclid: f64 = p.0.iter().map(|c| c.re * c.re).sum();
        let amp = (2.0 * std::f64::consts::PI * s2).powi(2) * (-0.5 * s2 * euclid).exp();
        let deriv = C64::new(0.0, -p.0[0].re).powu(self.time_derivative_order);
        C64::new(0.0, px).exp() * amp * deriv
    }
}

/// Product Gauss–Legendre grid on the forward cone in spherical
/// coordinates: ∫dμ(p) = ½ ∫₀^∞ r dr ∫ dΩ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub radial_cutoff: f64,
    pub n_radial: usize,
    pub n_costheta: usize,
    pub n_phi: usize,
    pub tail_target: f64,
    /// Optional split point of the cosθ grid. String kernels with small
    /// complexification have a pole tube at p·e ≈ 0; splitting the
    /// Gauss–Legendre panel there turns a mid-interval pole (slow
    /// convergence) into endpoint poles (fast convergence).
    pub split_costheta: Option<f64>,
}

impl QuadratureConfig {
    /// Chooses the radial cutoff from the smallest Gaussian width so that
    /// the estimated tail ∫_R^∞ r (1+r)^q e^{−σ²r²/2} dr stays below
    /// `tail_target` relative to the r ≤ R part's scale.
    pub fn for_widths(widths: &[f64], tail_target: f64) -> Result<Self> {
        let s2: f64 = widths.iter().map(|w| w * w).sum();
        if s2 <= 0.0 {
            return Err(Error::Invalid("need at least one positive width".into()));
        }
        let mut r = 1.0f64;
        // q = 4 bounds the polynomial growth of the kernels used here.
        while tail_estimate(r, s2, 4) > tail_target && r < 1e4 {
            r *= 1.1;
        }
        let cfg = QuadratureConfig {
            radial_cutoff: r,
            n_radial: 64,
            n_costheta: 512,
            n_phi: 96,
            tail_target,
            split_costheta: None,
        };
        cfg.validate(s2)?;
        Ok(cfg)
    }

    fn validate(&self, s2: f64) -> Result<()> {
        let achieved = tail_estimate(self.radial_cutoff, s2, 4);
        if achieved > self.tail_target {
            return Err(Error::QuadratureTail {
                achieved,
                target: self.tail_target,
            });
        }
        Ok(())
    }

    pub fn refined(&self) -> QuadratureConfig {
        QuadratureConfig {
            radial_cutoff: self.radial_cutoff * 1.25,
            n_radial: self.n_radial * 2,
            n_costheta: self.n_costheta * 2,
            n_phi: self.n_phi * 2,
            tail_target: self.tail_target,
            split_costheta: self.split_costheta,
        }
    }
}

/// Crude bound on ∫_R^∞ r (1+r)^q e^{−s² r²/2} dr / ∫_0^R (same).
fn tail_estimate(r: f64, s2: f64, q: i32) -> f64 {
    let body = (1.0 + r).powi(q);
    // ∫_R^∞ r e^{−s²r²/2} dr = e^{−s²R²/2}/s²
    let tail = body * (-0.5 * s2 * r * r).exp() / s2;
    let scale = 1.0 / s2; // ∫_0^∞ r e^{−s²r²/2} dr
    tail / scale
}

/// Deterministic quadrature of f over the forward cone with the invariant
/// measure; nodes never touch the tip or the boost-chart singularity, and
/// the reduction is a pairwise sum in fixed order.
pub fn cone_integral<F>(q: &QuadratureConfig, mut f: F) -> C64
where
    F: FnMut(&MasslessMomentum) -> C64,
{
    let (rs, wr) = gauss_legendre_on(q.n_radial, 0.0, q.radial_cutoff);
    let (cs, wc) = match q.split_costheta {
        Some(x0) if x0 > -1.0 && x0 < 1.0 => {
            let n = q.n_costheta / 2;
            let (mut c1, mut w1) = gauss_legendre_on(n, -1.0, x0);
            let (c2, w2) = gauss_legendre_on(q.n_costheta - n, x0, 1.0);
            c1.extend(c2);
            w1.extend(w2);
            (c1, w1)
        }
        _ => gauss_legendre_on(q.n_costheta, -1.0, 1.0),
    };
    let (ps, wp) = gauss_legendre_on(q.n_phi, 0.0, 2.0 * std::f64::consts::PI);
    let mut cells = Vec::with_capacity(q.n_radial * q.n_costheta * q.n_phi);
    for (r, wr) in rs.iter().zip(&wr) {
        for (c, wc) in cs.iter().zip(&wc) {
            let sin_theta = (1.0 - c * c).max(0.0).sqrt();
            for (phi, wp) in ps.iter().zip(&wp) {
                let p = MasslessMomentum::from_spatial(
                    r * sin_theta * phi.cos(),
                    r * sin_theta * phi.sin(),
                    r * c,
                )
                .expect("r > 0 on Gauss-Legendre nodes");
                let weight = 0.5 * r * wr * wc * wp;
                cells.push(f(&p) * weight);
            }
        }
    }
    pairwise_sum(&cells)
}

/// Smeared mixed two-point function of two scalar string fields:
/// ∫ dμ(p) f̂(p) conj(ĝ(p)) u_left(p,e) conj(u_right(p, ē')).
pub fn smeared_two_point(
    f: &SmearingFunction,
    g: &SmearingFunction,
    e: &StringDirection,
    eprime: &StringDirection,
    left: &IntertwinerSpec,
    right: &IntertwinerSpec,
    q: &QuadratureConfig,
) -> Result<C64> {
    if left.rep() != RepLabel::new(0, 0) || right.rep() != RepLabel::new(0, 0) {
        return Err(Error::Invalid(
            "smeared_two_point is implemented for scalar (0,0) fields".into(),
        ));
    }
    let e2 = conjugate_direction(eprime)?;
    let mut err: Option<Error> = None;
    let value = cone_integral(q, |p| {
        if err.is_some() {
            return ZERO;
        }
        let kernel = (|| -> Result<C64> {
            let l = left.evaluate(p, e)?.components()[0];
            let r = right.evaluate(p, &e2)?.components()[0].conj();
            Ok(l * r)
        })();
        match kernel {
            Ok(k) => f.fourier(p.vector()) * g.fourier(p.vector()).conj() * k,
            Err(e) => {
                err = Some(e);
                ZERO
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

// ---------------------------------------------------------------------------
// String-locality commutator probe
// ---------------------------------------------------------------------------

/// A smeared string: Gaussian test function of the given width centered at
/// x, attached to a real string direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmearedString {
    pub x: [f64; 4],
    pub e: StringDirection,
    pub width: f64,
}

/// What the probe configuration is expected to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeExpectation {
    /// The two strings must be space-like separated (verified).
    Spacelike,
    /// A deliberately causal configuration; the residual must stay O(1).
    TimelikeControl,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommutatorConfig {
    pub s1: SmearedString,
    pub s2: SmearedString,
    /// The scalar u-intertwiner of the field (h = 0).
    pub spec: IntertwinerSpec,
    /// Decreasing sequence of string-complexification parameters.
    pub eps_sequence: Vec<f64>,
    pub quad: QuadratureConfig,
    /// Time-derivative order of the Gaussian smearing; ≥ 1 is required for
    /// string coefficients with a (p·e+i0)^{-1} factor, whose kernels are
    /// otherwise logarithmically divergent at the tip of the cone.
    pub smearing_derivative: u32,
    /// How far out the rays are sampled in the geometry check.
    pub ray_radius: f64,
    /// Size of the direction neighborhood sampled around e₁.
    pub neighborhood: f64,
    pub expectation: ProbeExpectation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub eps: Vec<f64>,
    /// |W(x,x',e,e') − W(x',x,e',e)| / scale for each ε.
    pub residual: Vec<f64>,
    /// Aitken extrapolation of the last three residuals.
    pub extrapolated: f64,
    /// max over ε of max(|T1|, |T2|).
    pub scale: f64,
    pub monotone_decreasing: bool,
    pub spacelike: bool,
}

/// Checks by finite sampling that the rays x₁+ℝ⁺e₁' (e₁' in a neighborhood
/// of e₁) and x₂+ℝ⁺e₂ are pairwise space-like separated out to the given
/// radius.
pub fn strings_spacelike(
    s1: &SmearedString,
    s2: &SmearedString,
    ray_radius: f64,
    neighborhood: f64,
) -> bool {
    let perturbations = neighborhood_directions(&s1.e, neighborhood);
    let steps = 25;
    for e1 in &perturbations {
        for i in 0..=steps {
            let t1 = ray_radius * i as f64 / steps as f64;
            for j in 0..=steps {
                let t2 = ray_radius * j as f64 / steps as f64;
                let mut diff = [0.0f64; 4];
                for mu in 0..4 {
                    let a = s1.x[mu] + t1 * e1.vector().0[mu].re;
                    let b = s2.x[mu] + t2 * s2.e.vector().0[mu].re;
                    diff[mu] = a - b;
                }
                let interval =
                    diff[0] * diff[0] - diff[1] * diff[1] - diff[2] * diff[2] - diff[3] * diff[3];
                if interval >= 0.0 {
                    return false;
                }
            }
        }
    }
    true
}

fn neighborhood_directions(e: &StringDirection, delta: f64) -> Vec<StringDirection> {
    let mut out = vec![*e];
    if delta <= 0.0 {
        return out;
    }
    for axis in 1..4 {
        for sign in [-1.0, 1.0] {
            let mut v = *e.vector();
            v.0[axis] += C64::new(sign * delta, 0.0);
            // project back to e·e = −1 by rescaling the spatial part
            let spatial: f64 = (1..4).map(|i| v.0[i].re * v.0[i].re).sum();
            let needed = 1.0 + v.0[0].re * v.0[0].re;
            let factor = (needed / spatial).sqrt();
            for i in 1..4 {
                v.0[i] *= factor;
            }
            if let Ok(dir) = StringDirection::new(v, Tuboid::Real) {
                out.push(dir);
            }
        }
    }
    out
}

/// A real frame R with Λ(R)(0,0,0,1) = e, built from the string-direction
/// decomposition (a null rotation, a z-boost and, for the sign flip, a
/// rotation by π about the x-axis).
pub fn frame_of(e: &StringDirection) -> Result<SL2CElement> {
    let d = decompose_string(e)?;
    let nullrot = crate::kinematics::LittleGroupElement::new(d.z, 0.0)
        .element()
        .inverse();
    let mut frame = nullrot.compose(&wedge_boost(d.t.into()));
    if d.sign < 0.0 {
        let i = C64::new(0.0, 1.0);
        let flip = SL2CElement::new(Matrix2C::new(ZERO, -i, -i, ZERO)).expect("det 1");
        frame = frame.compose(&flip);
    }
    Ok(frame)
}

/// Complexifies a real string direction into the forward (or backward)
/// tuboid along its own frame: e(ε) = Λ(frame)(±i sin ε, 0, 0, cos ε).
pub fn complexify(e: &StringDirection, eps: f64, forward: bool) -> Result<StringDirection> {
    let frame = frame_of(e)?;
    let fwd = make_complex_string(eps, &frame);
    if forward {
        Ok(fwd)
    } else {
        conjugate_direction(&fwd)
    }
}

/// Runs the two-ordering commutator probe over the ε-sequence.
///
/// T1(ε) = ∫dμ f̂(−p)ĝ(p) v(p,e₁⁻)·conj(v(p, ē₂⁺)) and
/// T2(ε) = ∫dμ ĝ(−p)f̂(p) u(p,e₁⁺)·conj(u(p, ē₂⁻)), with v(p,e) = u(p,−e)
/// and ± the tuboid side of the regularized directions; string locality is
/// |T1 − T2| → 0 as ε ↓ 0 for space-like configurations.
pub fn commutator_probe(cfg: &CommutatorConfig) -> Result<CommutatorReport> {
    if cfg.spec.rep() != RepLabel::new(0, 0) {
        return Err(Error::Invalid(
            "the commutator probe is implemented for scalar string fields".into(),
        ));
    }
    let spacelike = strings_spacelike(&cfg.s1, &cfg.s2, cfg.ray_radius, cfg.neighborhood);
    match cfg.expectation {
        ProbeExpectation::Spacelike if !spacelike => return Err(Error::NotSpacelike),
        ProbeExpectation::TimelikeControl if spacelike => {
            return Err(Error::UnexpectedlySpacelike)
        }
        _ => {}
    }
    let f = SmearingFunction::time_derivative(cfg.s1.x, cfg.s1.width, cfg.smearing_derivative);
    let g = SmearingFunction::time_derivative(cfg.s2.x, cfg.s2.width, cfg.smearing_derivative);
    let mut t1s = Vec::new();
    let mut t2s = Vec::new();
    for &eps in &cfg.eps_sequence {
        let e1_minus = complexify(&cfg.s1.e, eps, false)?;
        let e2_plus = complexify(&cfg.s2.e, eps, true)?;
        let e1_plus = complexify(&cfg.s1.e, eps, true)?;
        let e2_minus = complexify(&cfg.s2.e, eps, false)?;

        let v1 = e1_minus.negate(); // forward argument of u for v(p,e₁⁻)
        let v2 = conjugate_direction(&e2_plus)?.negate();
        let t1 = cone_integral(&cfg.quad, |p| {
            let k = cfg.spec.evaluate(p, &v1).map(|t| t.components()[0]);
            let kc = cfg.spec.evaluate(p, &v2).map(|t| t.components()[0].conj());
            match (k, kc) {
                (Ok(a), Ok(b)) => {
                    f.fourier(&(-*p.vector())) * g.fourier(p.vector()) * a * b
                }
                _ => ZERO,
            }
        });

        let u2 = conjugate_direction(&e2_minus)?;
        let t2 = cone_integral(&cfg.quad, |p| {
            let k = cfg.spec.evaluate(p, &e1_plus).map(|t| t.components()[0]);
            let kc = cfg.spec.evaluate(p, &u2).map(|t| t.components()[0].conj());
            match (k, kc) {
                (Ok(a), Ok(b)) => {
                    g.fourier(&(-*p.vector())) * f.fourier(p.vector()) * a * b
                }
                _ => ZERO,
            }
        });
        t1s.push(t1);
        t2s.push(t2);
    }
    let scale = t1s
        .iter()
        .chain(&t2s)
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let residual: Vec<f64> = t1s
        .iter()
        .zip(&t2s)
        .map(|(a, b)| (a - b).norm() / scale)
        .collect();
    let monotone = residual.windows(2).all(|w| w[1] <= w[0]);
    let extrapolated = aitken_tail(&residual);
    Ok(CommutatorReport {
        eps: cfg.eps_sequence.clone(),
        residual,
        extrapolated,
        scale,
        monotone_decreasing: monotone,
        spacelike,
    })
}

/// Aitken Δ² extrapolation of the last three points of a sequence.
fn aitken_tail(r: &[f64]) -> f64 {
    if r.len() < 3 {
        return *r.last().unwrap_or(&f64::NAN);
    }
    let (a, b, c) = (r[r.len() - 3], r[r.len() - 2], r[r.len() - 1]);
    let denom = c - 2.0 * b + a;
    if denom.abs() < 1e-300 {
        return c;
    }
    (c - (c - b) * (c - b) / denom).max(0.0)
}

/// The default geometric ε-sequence {10^{-1}, 10^{-1.5}, 10^{-2}, 10^{-2.5}}.
pub fn default_eps_sequence() -> Vec<f64> {
    (0..4).map(|i| 10f64.powf(-1.0 - 0.5 * i as f64)).collect()
}

// ---------------------------------------------------------------------------
// Reflection (PCT) sign factors
// ---------------------------------------------------------------------------

/// Result of evaluating D^(j/2,k/2)(A_Λ(iπ)A_R(π)) by analytic
/// continuation in the boost parameter: the matrix is scalar, and the
/// scalar is (−1)^j.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PctFactor {
    pub rep: RepLabel,
    pub scalar: C64,
    /// Deviation of the matrix from scalar·identity, relative.
    pub defect: f64,
}

/// Evaluates D(A_Λ(iπ)A_R(π)) on the representation (j,k), continuing
/// t ↦ D(A_Λ(t)) before setting t = iπ. Both index families pick up the
/// continued boost diag(i,−i); only the genuinely conjugated rotation
/// factor differs between the families.
pub fn pct_factor(rep: RepLabel) -> PctFactor {
    let ipi = C64::new(0.0, std::f64::consts::PI);
    let boost = wedge_boost(ipi);
    let rot = wedge_rotation(std::f64::consts::PI.into());
    let au = *boost.compose(&rot).matrix();
    let ad = *boost.matrix() * rot.matrix().conj();
    let m = rep_matrix(rep, &au, &ad);
    scalar_of(rep, m)
}

/// D(−1) on the representation (j,k); the scalar is (−1)^{j+k}.
pub fn minus_identity_factor(rep: RepLabel) -> PctFactor {
    let minus = Matrix2C::identity().scale((-1.0).into());
    let m = rep_matrix(rep, &minus, &minus);
    scalar_of(rep, m)
}

fn scalar_of(rep: RepLabel, m: Vec<Vec<C64>>) -> PctFactor {
    let dim = rep.dim();
    let scalar = m[0][0];
    let mut defect: f64 = 0.0;
    for (r, row) in m.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let target = if r == c { scalar } else { ZERO };
            defect = defect.max((v - target).norm());
        }
    }
    let _ = dim;
    PctFactor {
        rep,
        scalar,
        defect: defect / scalar.norm().max(1e-300),
    }
}

/// Verdict of the two-representation sign check: the product of the two
/// continued reflection factors equals (−1)^{j+j'}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PctVerdict {
    pub first: PctFactor,
    pub second: PctFactor,
    pub product: C64,
    pub expected: f64,
    pub residual: f64,
}

pub fn pct_sign_check(j: u32, k: u32, j2: u32, k2: u32) -> PctVerdict {
    let first = pct_factor(RepLabel::new(j, k));
    let second = pct_factor(RepLabel::new(j2, k2));
    let product = first.scalar * second.scalar;
    let expected = if (j + j2) % 2 == 0 { 1.0 } else { -1.0 };
    let residual = (product - C64::new(expected, 0.0))
        .norm()
        .max(first.defect)
        .max(second.defect);
    PctVerdict {
        first,
        second,
        product,
        expected,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::Half;
    use crate::intertwiner::{
        potential_spec, sample_triple, CoefficientFunction, IntertwinerSpec,
    };
    use crate::numeric::I0Side;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn scalar_string_spec() -> IntertwinerSpec {
        IntertwinerSpec::single(
            crate::intertwiner::BasisElement::new(0, 0, 0, 0).unwrap(),
            CoefficientFunction::power(-1.0, I0Side::Plus),
        )
    }

    fn scalar_point_spec() -> IntertwinerSpec {
        IntertwinerSpec::single(
            crate::intertwiner::BasisElement::new(0, 0, 0, 0).unwrap(),
            CoefficientFunction::one(),
        )
    }

    #[test]
    fn scalar_point_kernel_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let (_, p, e) = sample_triple(&mut rng);
        let spec = scalar_point_spec();
        let m = mixed_kernel(&spec, &spec, &p, &e, &e).unwrap();
        assert!((m.get(0, 0) - C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn kernel_hermitian_psd_at_conjugate_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..30 {
            let (_, p, e) = sample_triple(&mut rng);
            let spec = potential_spec(Half::from_int(1)).unwrap();
            let ebar = conjugate_direction(&e).unwrap();
            let m = mixed_kernel(&spec, &spec, &p, &e, &ebar).unwrap();
            assert!(m.hermiticity_defect() < 1e-10);
            assert!(m.min_eigenvalue_relative() > -1e-10);
        }
    }

    #[test]
    fn fermi_rule() {
        let spec = crate::intertwiner::minimal_intertwiner_spec(Half(1), 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let (_, p, e) = sample_triple(&mut rng);
        assert!(matches!(
            unmixed_kernel(&spec, &spec, &p, &e, &e),
            Err(Error::FermiUnmixedKernel)
        ));
        // Bose case with mismatched helicities: zero kernel.
        let bose = potential_spec(Half::from_int(1)).unwrap();
        let m = unmixed_kernel(&bose, &bose, &p, &e, &e).unwrap();
        assert!(m.m.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn uv_slopes() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let (_, p, e) = sample_triple(&mut rng);
        let grid = default_lambda_grid();
        for habs in 1..=3 {
            let f = crate::intertwiner::field_strength_spec(Half::from_int(-habs));
            let slope = uv_scaling_slope(&f, &p, &e, &grid).unwrap();
            assert!((slope - habs as f64).abs() < 1e-8, "slope {slope}");
            let a = potential_spec(Half::from_int(habs)).unwrap();
            let slope = uv_scaling_slope(&a, &p, &e, &grid).unwrap();
            assert!(slope.abs() < 1e-8, "slope {slope}");
        }
        let scalar = scalar_point_spec();
        assert!(uv_scaling_slope(&scalar, &p, &e, &grid).unwrap().abs() < 1e-12);
    }

    #[test]
    fn smeared_scalar_self_convergence_and_translation() {
        let f = SmearingFunction::time_derivative([0.0, 0.1, 0.0, 0.4], 1.0, 1);
        let g = SmearingFunction::time_derivative([0.2, -0.3, 0.1, -0.5], 1.0, 1);
        let e = complexify(&StringDirection::real(0.0, 0.0, 0.0, 1.0).unwrap(), 0.05, true)
            .unwrap();
        let s = 1.09f64.sqrt();
        let ep = complexify(
            &StringDirection::real(0.0, 0.3 / s, 0.0, -1.0 / s).unwrap(),
            0.05,
            true,
        )
        .unwrap();
        let spec = scalar_string_spec();
        let quad = QuadratureConfig::for_widths(&[1.0, 1.0], 1e-10).unwrap();
        let coarse = smeared_two_point(&f, &g, &e, &ep, &spec, &spec, &quad).unwrap();
        let fine =
            smeared_two_point(&f, &g, &e, &ep, &spec, &spec, &quad.refined()).unwrap();
        assert!(
            (coarse - fine).norm() <= 1e-6 * fine.norm().max(1e-12),
            "self-convergence {} vs {}",
            coarse,
            fine
        );
        // the plain-Gaussian pairing of the point field is the massless
        // scalar two-point value; same self-convergence oracle
        let fp = SmearingFunction::new(f.center, 1.0);
        let gp = SmearingFunction::new(g.center, 1.0);
        let point = scalar_point_spec();
        let c0 = smeared_two_point(&fp, &gp, &e, &ep, &point, &point, &quad).unwrap();
        let f0 = smeared_two_point(&fp, &gp, &e, &ep, &point, &point, &quad.refined()).unwrap();
        assert!((c0 - f0).norm() <= 1e-6 * f0.norm());
        // translation covariance: shift both centers by the same vector
        let a = [0.7, -0.2, 0.5, 0.3];
        let f2 = SmearingFunction::time_derivative(
            [f.center[0] + a[0], f.center[1] + a[1], f.center[2] + a[2], f.center[3] + a[3]],
            1.0,
            1,
        );
        let g2 = SmearingFunction::time_derivative(
            [g.center[0] + a[0], g.center[1] + a[1], g.center[2] + a[2], g.center[3] + a[3]],
            1.0,
            1,
        );
        let shifted = smeared_two_point(&f2, &g2, &e, &ep, &spec, &spec, &quad).unwrap();
        assert!((shifted - coarse).norm() < 1e-8 * coarse.norm());
    }

    #[test]
    fn smeared_hermiticity() {
        let f = SmearingFunction::time_derivative([0.0, 0.1, -0.2, 0.4], 0.9, 1);
        let g = SmearingFunction::time_derivative([0.3, -0.3, 0.1, -0.5], 1.1, 1);
        let e = complexify(&StringDirection::real(0.0, 0.0, 0.0, 1.0).unwrap(), 0.08, true)
            .unwrap();
        let ebar = conjugate_direction(&e).unwrap();
        let spec = scalar_string_spec();
        let quad = QuadratureConfig::for_widths(&[0.9, 1.1], 1e-10).unwrap();
        let s = smeared_two_point(&f, &g, &e, &ebar, &spec, &spec, &quad).unwrap();
        let swapped = smeared_two_point(&g, &f, &ebar, &e, &spec, &spec, &quad).unwrap();
        assert!((s - swapped.conj()).norm() < 1e-9 * s.norm());
    }

    #[test]
    fn pct_factors() {
        // (0,0)+(0,0) → +1; (1,0)+(1,0) → +1; (1,0)+(0,1) → −1.
        let v = pct_sign_check(0, 0, 0, 0);
        assert!((v.product - C64::new(1.0, 0.0)).norm() < 1e-12 && v.residual < 1e-12);
        let v = pct_sign_check(1, 0, 1, 0);
        assert!((v.product - C64::new(1.0, 0.0)).norm() < 1e-12);
        let v = pct_sign_check(1, 0, 0, 1);
        assert!((v.product + C64::new(1.0, 0.0)).norm() < 1e-12);
        for j in 0..=3 {
            for k in 0..=3 {
                let f = pct_factor(RepLabel::new(j, k));
                let want = if j % 2 == 0 { 1.0 } else { -1.0 };
                assert!((f.scalar - C64::new(want, 0.0)).norm() < 1e-12);
                assert!(f.defect < 1e-12);
                let m = minus_identity_factor(RepLabel::new(j, k));
                let want = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
                assert!((m.scalar - C64::new(want, 0.0)).norm() == 0.0);
                assert!(m.defect == 0.0);
            }
        }
    }

    #[test]
    fn frame_reaches_direction() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..200 {
            let e = crate::kinematics::random_real_string(&mut rng);
            if (e.vector().0[0] - e.vector().0[3]).re.abs() < 1e-3 {
                continue;
            }
            let frame = frame_of(&e).unwrap();
            let e0 = FourVector::real(0.0, 0.0, 0.0, 1.0);
            let reached = crate::minkowski::lorentz_apply(&frame, &e0);
            assert!((reached - *e.vector()).euclid_norm() < 1e-9);
        }
    }
}
