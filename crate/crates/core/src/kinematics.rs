//! Massless kinematics: the standard momentum, standard boosts, the little
//! group Ẽ(2) of the standard momentum, Wigner elements and phases, and the
//! decomposition of string directions.

use crate::error::{Error, Result};
use crate::half::Half;
use crate::minkowski::{
    lorentz_apply, to_matrix, FourVector, Matrix2C, SL2CElement,
};
use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Default tolerance for on-cone and unit-spacelike constraints.
pub const SHELL_TOL: f64 = 1e-10;
/// Below this value of p⁰+p³ the boost chart is treated as singular.
pub const CHART_TOL: f64 = 1e-9;

/// A momentum on the positive mass-zero shell: p·p = 0, p⁰ > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MasslessMomentum(FourVector);

impl MasslessMomentum {
    pub fn new(p: FourVector) -> Result<Self> {
        let psq = p.minkowski_square();
        let p0 = p.0[0].re;
        let scale = p.euclid_norm().max(1.0);
        if !p.is_real(SHELL_TOL * scale) || psq.norm() > SHELL_TOL * scale * scale || p0 <= 0.0 {
            return Err(Error::NotOnCone {
                psq: psq.norm(),
                p0,
            });
        }
        Ok(MasslessMomentum(p))
    }

    /// Exactly on the cone by construction: p⁰ = |p⃗|.
    pub fn from_spatial(px: f64, py: f64, pz: f64) -> Result<Self> {
        let e = (px * px + py * py + pz * pz).sqrt();
        if e == 0.0 {
            return Err(Error::NotOnCone { psq: 0.0, p0: 0.0 });
        }
        Ok(MasslessMomentum(FourVector::real(e, px, py, pz)))
    }

    pub fn vector(&self) -> &FourVector {
        &self.0
    }

    pub fn scaled(&self, lambda: f64) -> MasslessMomentum {
        MasslessMomentum(self.0.scale(lambda.into()))
    }

    /// p⁰ + p³, the boost-chart coordinate.
    pub fn chart_coordinate(&self) -> f64 {
        (self.0 .0[0] + self.0 .0[3]).re
    }
}

/// Where a (possibly complex) string direction lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tuboid {
    /// Real directions on H³.
    Real,
    /// Imaginary part in the open forward cone.
    Forward,
    /// Imaginary part in the open backward cone.
    Backward,
}

/// A string direction: e·e = −1, real or complex, tagged with its tuboid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StringDirection {
    e: FourVector,
    tag: Tuboid,
}

impl StringDirection {
    pub fn new(e: FourVector, tag: Tuboid) -> Result<Self> {
        let esq = e.minkowski_square();
        if (esq + C64::new(1.0, 0.0)).norm() > SHELL_TOL * e.euclid_norm().max(1.0).powi(2) {
            return Err(Error::NotUnitSpacelike {
                esq: format!("{esq}"),
            });
        }
        let im = e.im();
        let consistent = match tag {
            Tuboid::Real => e.is_real(SHELL_TOL * e.euclid_norm().max(1.0)),
            Tuboid::Forward => im.in_open_forward_cone(),
            Tuboid::Backward => (-im).in_open_forward_cone(),
        };
        if !consistent {
            return Err(Error::TuboidTagMismatch);
        }
        Ok(StringDirection { e, tag })
    }

    pub fn real(t: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        StringDirection::new(FourVector::real(t, x, y, z), Tuboid::Real)
    }

    pub fn vector(&self) -> &FourVector {
        &self.e
    }

    pub fn tag(&self) -> Tuboid {
        self.tag
    }

    pub fn matrix(&self) -> Matrix2C {
        to_matrix(&self.e)
    }

    /// e ↦ −e; forward and backward tuboids swap.
    pub fn negate(&self) -> StringDirection {
        let tag = match self.tag {
            Tuboid::Real => Tuboid::Real,
            Tuboid::Forward => Tuboid::Backward,
            Tuboid::Backward => Tuboid::Forward,
        };
        StringDirection { e: -self.e, tag }
    }

    /// Λ(A)e for a (real-group) A; the tuboid tag is preserved.
    pub fn transform(&self, a: &SL2CElement) -> StringDirection {
        StringDirection {
            e: lorentz_apply(a, &self.e),
            tag: self.tag,
        }
    }
}

/// An element A_{z,θ} of the little group Ẽ(2) of the standard momentum,
/// the double cover of the 2D Euclidean group: z ∈ ℂ, θ ∈ [0,4π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LittleGroupElement {
    pub z: C64,
    pub theta: f64,
}

impl LittleGroupElement {
    pub fn new(z: C64, theta: f64) -> Self {
        LittleGroupElement {
            z,
            theta: theta.rem_euclid(4.0 * std::f64::consts::PI),
        }
    }

    pub fn identity() -> Self {
        LittleGroupElement::new(C64::new(0.0, 0.0), 0.0)
    }

    /// The matrix [[e^{iθ/2}, z e^{−iθ/2}], [0, e^{−iθ/2}]].
    pub fn element(&self) -> SL2CElement {
        let half = C64::new(0.0, self.theta / 2.0).exp();
        SL2CElement::new(Matrix2C::new(half, self.z / half, 0.0.into(), 1.0 / half))
            .expect("unit determinant by construction")
    }

    /// Group law of Ẽ(2): (z₁,θ₁)(z₂,θ₂) = (z₁ + e^{iθ₁} z₂, θ₁+θ₂ mod 4π).
    pub fn compose(&self, rhs: &LittleGroupElement) -> LittleGroupElement {
        let phase = C64::new(0.0, self.theta).exp();
        LittleGroupElement::new(self.z + phase * rhs.z, self.theta + rhs.theta)
    }

    /// Decomposes an upper-triangular unit-modulus-diagonal matrix into
    /// (z, θ); θ = 2·arg(M₁₁) lifted to [0, 4π) (M and −M differ by 2π).
    pub fn from_matrix(m: &SL2CElement, tol: f64) -> Result<Self> {
        let mm = m.matrix();
        let scale = mm.frobenius_norm().max(1.0);
        if mm.0[1][0].norm() > tol * scale || (mm.0[0][0].norm() - 1.0).abs() > tol {
            return Err(Error::NotLittleGroup);
        }
        let mut theta = 2.0 * mm.0[0][0].arg();
        if theta < 0.0 {
            theta += 4.0 * std::f64::consts::PI;
        }
        // z = M₁₂ · e^{iθ/2}
        let z = mm.0[0][1] * mm.0[0][0];
        Ok(LittleGroupElement { z, theta })
    }
}

/// p̂ = (1/2, 0, 0, 1/2), with p̃̂ = [[1,0],[0,0]].
pub fn standard_momentum() -> MasslessMomentum {
    MasslessMomentum(FourVector::real(0.5, 0.0, 0.0, 0.5))
}

/// The lower-triangular standard boost with Λ(B_p)p̂ = p:
/// B_p = [[√(p⁰+p³), 0], [(p¹+ip²)/√(p⁰+p³), 1/√(p⁰+p³)]].
///
/// Rejects momenta on the chart singularity p⁰+p³ ≈ 0; rotate first.
pub fn standard_boost(p: &MasslessMomentum) -> Result<SL2CElement> {
    let chart = p.chart_coordinate();
    if chart <= CHART_TOL {
        return Err(Error::ChartSingularity { value: chart });
    }
    let root = chart.sqrt();
    let v = p.vector();
    let p12 = v.0[1] + C64::new(0.0, 1.0) * v.0[2];
    SL2CElement::new(Matrix2C::new(
        root.into(),
        0.0.into(),
        p12 / root,
        (1.0 / root).into(),
    ))
}

/// W(p,A) = B_{Λ(A)p}⁻¹ A B_p, an element of the little group.
pub fn wigner_element(p: &MasslessMomentum, a: &SL2CElement) -> Result<LittleGroupElement> {
    let moved = MasslessMomentum::new(lorentz_apply(a, p.vector()).re())?;
    let w = standard_boost(&moved)?
        .inverse()
        .compose(a)
        .compose(&standard_boost(p)?);
    LittleGroupElement::from_matrix(&w, 1e-10)
}

/// The helicity phase e^{ihθ(p,A)}.
pub fn wigner_phase(p: &MasslessMomentum, a: &SL2CElement, h: Half) -> Result<C64> {
    let w = wigner_element(p, a)?;
    Ok(C64::new(0.0, h.value() * w.theta).exp())
}

/// Result of writing a real string direction as e = σ·Λ(A_{z,0})⁻¹ e_t with
/// e_t = (sinh t, 0, 0, cosh t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StringDecomposition {
    pub sign: f64,
    pub z: C64,
    pub t: f64,
}

/// The direction e_t = (sinh t, 0, 0, cosh t).
pub fn e_t(t: f64) -> StringDirection {
    StringDirection::real(t.sinh(), 0.0, 0.0, t.cosh()).expect("on H³ by construction")
}

/// Decomposes a real e ∈ H³ with e⁰−e³ ≠ 0 as e = σ Λ_z⁻¹ e_t, with
/// exp(−t) = |e⁰−e³| and z = −(e¹−ie²)/(e⁰−e³).
///
/// Vectors of the form Λ_z⁻¹ e_t all have e⁰−e³ < 0, so the sign is
/// σ = −sign(e⁰−e³); the decomposition is verified by reconstruction.
pub fn decompose_string(e: &StringDirection) -> Result<StringDecomposition> {
    if e.tag() != Tuboid::Real {
        return Err(Error::Invalid(
            "decompose_string expects a real direction".into(),
        ));
    }
    let v = e.vector();
    let w = (v.0[0] - v.0[3]).re;
    if w.abs() < 1e-12 {
        return Err(Error::StringChartSingularity { value: w });
    }
    let t = -w.abs().ln();
    let z = -(v.0[1] - C64::new(0.0, 1.0) * v.0[2]) / w;
    Ok(StringDecomposition {
        sign: -w.signum(),
        z,
        t,
    })
}

/// Rebuilds σ Λ_z⁻¹ e_t from a decomposition, through the closed form
/// A_{z,0}⁻¹ ẽ_t (A_{z,0}⁻¹)† = [[eᵗ − |z|²e⁻ᵗ, z e⁻ᵗ], [z̄ e⁻ᵗ, −e⁻ᵗ]]
/// (products only; the generic matrix path loses |z|² digits near the
/// chart boundary).
pub fn reconstruct_string(d: &StringDecomposition) -> StringDirection {
    let ep = d.t.exp();
    let em = (-d.t).exp();
    let m = Matrix2C::new(
        (ep - d.z.norm_sqr() * em).into(),
        d.z * em,
        d.z.conj() * em,
        (-em).into(),
    )
    .scale(d.sign.into());
    let rebuilt = crate::minkowski::from_matrix(&m);
    StringDirection::new(rebuilt.re(), Tuboid::Real).expect("reconstruction stays on H³")
}

/// A complex string direction Λ(frame)·(i sin s, 0, 0, cos s); lies on the
/// complex hyperboloid exactly and in the forward tuboid for s ∈ (0, π/2).
pub fn make_complex_string(s: f64, frame: &SL2CElement) -> StringDirection {
    let base = FourVector([
        C64::new(0.0, s.sin()),
        0.0.into(),
        0.0.into(),
        s.cos().into(),
    ]);
    StringDirection::new(lorentz_apply(frame, &base), Tuboid::Forward)
        .expect("forward tuboid by construction")
}

/// Deterministic sample of a momentum away from the chart singularity.
pub fn random_momentum<R: Rng>(rng: &mut R) -> MasslessMomentum {
    loop {
        let px: f64 = rng.gen_range(-1.0..1.0);
        let py: f64 = rng.gen_range(-1.0..1.0);
        let pz: f64 = rng.gen_range(-1.0..1.0);
        let r = (px * px + py * py + pz * pz).sqrt();
        if r < 1e-3 {
            continue;
        }
        let scale = rng.gen_range(0.5..2.0) / r;
        let p = MasslessMomentum::from_spatial(px * scale, py * scale, pz * scale).unwrap();
        if p.chart_coordinate() > 0.05 {
            return p;
        }
    }
}

/// Deterministic sample of a real string direction on H³.
pub fn random_real_string<R: Rng>(rng: &mut R) -> StringDirection {
    loop {
        let chi: f64 = rng.gen_range(-1.2..1.2);
        let nx: f64 = rng.gen_range(-1.0..1.0);
        let ny: f64 = rng.gen_range(-1.0..1.0);
        let nz: f64 = rng.gen_range(-1.0..1.0);
        let r = (nx * nx + ny * ny + nz * nz).sqrt();
        if r < 1e-3 {
            continue;
        }
        let ch = chi.cosh() / r;
        let e = StringDirection::real(chi.sinh(), nx * ch, ny * ch, nz * ch);
        if let Ok(e) = e {
            return e;
        }
    }
}

/// Deterministic sample of a forward-tuboid complex string direction.
pub fn random_forward_string<R: Rng>(rng: &mut R) -> StringDirection {
    let s = rng.gen_range(0.15..1.25);
    let frame = crate::minkowski::random_sl2c(rng);
    make_complex_string(s, &frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::lorentz_of;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_momentum_facts() {
        let p = standard_momentum();
        assert!(p.vector().minkowski_square().norm() < 1e-15);
        let m = to_matrix(p.vector());
        assert!((m - Matrix2C::new(1.0.into(), 0.0.into(), 0.0.into(), 0.0.into()))
            .frobenius_norm()
            < 1e-15);
    }

    #[test]
    fn little_group_stabilizes_phat() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let phat = standard_momentum();
        for _ in 0..1000 {
            let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let theta = rng.gen_range(0.0..4.0 * std::f64::consts::PI);
            let a = LittleGroupElement::new(z, theta).element();
            let moved = lorentz_apply(&a, phat.vector());
            assert!((moved - *phat.vector()).euclid_norm() < 1e-12);
        }
    }

    #[test]
    fn little_group_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let g1 = LittleGroupElement::new(
                C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                rng.gen_range(0.0..4.0 * std::f64::consts::PI),
            );
            let g2 = LittleGroupElement::new(
                C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                rng.gen_range(0.0..4.0 * std::f64::consts::PI),
            );
            let lhs = g1.element().compose(&g2.element());
            let rhs = g1.compose(&g2).element();
            assert!((*lhs.matrix() - *rhs.matrix()).frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn boost_reaches_momentum() {
        let phat = standard_momentum();
        let b = standard_boost(&phat).unwrap();
        assert!((*b.matrix() - Matrix2C::identity()).frobenius_norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let p = random_momentum(&mut rng);
            let b = standard_boost(&p).unwrap();
            let reached = lorentz_apply(&b, phat.vector());
            assert!((reached - *p.vector()).euclid_norm() < 1e-12 * p.vector().euclid_norm());
        }
    }

    #[test]
    fn boost_scaling_factorizes() {
        let p = MasslessMomentum::from_spatial(0.3, -0.4, 0.8).unwrap();
        let lambda = 2.7;
        let lhs = standard_boost(&p.scaled(lambda)).unwrap();
        let diag = SL2CElement::new(Matrix2C::new(
            lambda.sqrt().into(),
            0.0.into(),
            0.0.into(),
            (1.0 / lambda.sqrt()).into(),
        ))
        .unwrap();
        let rhs = standard_boost(&p).unwrap().compose(&diag);
        assert!((*lhs.matrix() - *rhs.matrix()).frobenius_norm() < 1e-13);
    }

    #[test]
    fn chart_singularity_rejected() {
        let p = MasslessMomentum::from_spatial(0.0, 0.0, -1.0).unwrap();
        assert!(matches!(
            standard_boost(&p),
            Err(Error::ChartSingularity { .. })
        ));
    }

    #[test]
    fn wigner_element_examples() {
        let phat = standard_momentum();
        // At p̂ a little-group element is its own Wigner element.
        let g = LittleGroupElement::new(C64::new(0.4, -0.3), 2.2);
        let w = wigner_element(&phat, &g.element()).unwrap();
        assert!((w.z - g.z).norm() < 1e-12);
        assert!((w.theta - g.theta).abs() < 1e-12);
        // The identity gives (0,0) at any momentum.
        let p = MasslessMomentum::from_spatial(0.7, 0.2, 0.4).unwrap();
        let w = wigner_element(&p, &SL2CElement::identity()).unwrap();
        assert!(w.z.norm() < 1e-12 && w.theta.abs() < 1e-12);
    }

    #[test]
    fn wigner_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut done = 0;
        while done < 300 {
            let p = random_momentum(&mut rng);
            let a = crate::minkowski::random_sl2c(&mut rng);
            let b = crate::minkowski::random_sl2c(&mut rng);
            let ab = a.compose(&b);
            let pb = MasslessMomentum::new(lorentz_apply(&b, p.vector()).re());
            let (Ok(pb), true) = (pb, lorentz_apply(&ab, p.vector()).re().0[0].re > 0.0) else {
                continue;
            };
            if pb.chart_coordinate() < 0.05
                || p.chart_coordinate() < 0.05
                || (lorentz_apply(&a, pb.vector()).re().0[0]
                    + lorentz_apply(&a, pb.vector()).re().0[3])
                    .re
                    < 0.05
            {
                continue;
            }
            let (Ok(w_ab), Ok(w_a), Ok(w_b)) = (
                wigner_element(&p, &ab),
                wigner_element(&pb, &a),
                wigner_element(&p, &b),
            ) else {
                continue;
            };
            let lhs = w_ab.element();
            let rhs = w_a.compose(&w_b).element();
            assert!((*lhs.matrix() - *rhs.matrix()).frobenius_norm() < 1e-10);
            done += 1;
        }
    }

    #[test]
    fn wigner_phase_double_cover() {
        let phat = standard_momentum();
        let theta = 1.3;
        let h = Half(1); // h = 1/2
        let p1 = wigner_phase(&phat, &LittleGroupElement::new(0.0.into(), theta).element(), h)
            .unwrap();
        // The same SL(2,C) matrix shifted by 2π in θ is the negated matrix;
        // its phase for half-integer h flips sign.
        let shifted = LittleGroupElement::new(0.0.into(), theta + 2.0 * std::f64::consts::PI);
        let p2 = wigner_phase(&phat, &shifted.element(), h).unwrap();
        assert!((p1 + p2).norm() < 1e-12);
        assert!(
            (wigner_phase(&phat, &SL2CElement::identity(), Half(5)).unwrap()
                - C64::new(1.0, 0.0))
            .norm()
                < 1e-14
        );
    }

    #[test]
    fn string_decomposition_examples() {
        // e_t is a fixed point: sign +, z = 0.
        let d = decompose_string(&e_t(1.0)).unwrap();
        assert!((d.sign - 1.0).abs() < 1e-15);
        assert!(d.z.norm() < 1e-15);
        assert!((d.t - 1.0).abs() < 1e-12);
        // e₀ = (0,0,0,1) = e_{t=0} likewise reconstructs with sign +.
        let e0 = StringDirection::real(0.0, 0.0, 0.0, 1.0).unwrap();
        let d = decompose_string(&e0).unwrap();
        assert!((d.sign - 1.0).abs() < 1e-15 && d.t.abs() < 1e-15);
        assert!(
            (*reconstruct_string(&d).vector() - *e0.vector()).euclid_norm() < 1e-12
        );
        // Random directions reconstruct to 1e-10.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let e = random_real_string(&mut rng);
            let w = (e.vector().0[0] - e.vector().0[3]).re;
            if w.abs() < 1e-3 {
                continue;
            }
            let d = decompose_string(&e).unwrap();
            let back = reconstruct_string(&d);
            assert!((*back.vector() - *e.vector()).euclid_norm() < 1e-10);
            // At moderate w the closed form agrees with the generic
            // adjoint-action path.
            if w.abs() > 0.2 {
                let a = LittleGroupElement::new(d.z, 0.0).element();
                let generic =
                    lorentz_apply(&a.inverse(), e_t(d.t).vector()).scale(d.sign.into());
                assert!((*back.vector() - generic).euclid_norm() < 1e-10);
            }
        }
    }

    #[test]
    fn complex_string_properties() {
        let id = SL2CElement::identity();
        for s in [0.05, 0.3, 1.0, 1.5] {
            let e = make_complex_string(s, &id);
            assert!((e.vector().minkowski_square() + C64::new(1.0, 0.0)).norm() < 1e-14);
            assert!(e.vector().im().in_open_forward_cone());
        }
        // s → 0 approaches the real e₀... with a backward partner under negation.
        let e = make_complex_string(1e-8, &id);
        assert!((*e.vector() - FourVector::real(0.0, 0.0, 0.0, 1.0)).euclid_norm() < 1e-7);
        assert_eq!(e.negate().tag(), Tuboid::Backward);
    }
}
