//! Field-strength intertwiners, string-localized potentials, their mutual
//! contraction and inversion identities, the tensor (four-vector index)
//! form with its gauge properties, and the photon/graviton checks.
//!
//! Contraction constants: with u₋ and ū₊ normalized as in the fundamental
//! intertwiners, one index contraction obeys
//! `(p̃ε) ū₊(p,e) = 2(p·e) u₋(p)` and `(ẽᵀε) u₋(p) = −ū₊(p,e)` exactly
//! (and their mirror images). The potential ↔ field-strength relations
//! therefore hold with the explicit constants 2^{|h|} (contraction) and
//! (−1)^{|h|} (p·e+i0)^{|h|} (inversion); both are verified to 1e-12 rather
//! than absorbed into hidden normalizations.

use crate::error::{Error, Result};
use crate::half::Half;
use crate::intertwiner::{
    half_integer_potential_spec, potential_spec, sym_power, u_minus_at, u_minus_dotted_at,
};
use crate::kinematics::{standard_boost, MasslessMomentum, StringDirection, Tuboid};
use crate::minkowski::{lorentz_apply, to_matrix, FourVector};
use crate::numeric::{powc_side, I0Side};
use crate::rep::{contract_dotted, contract_undotted, SpinorTensor};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Helicity sign label of the polarization vectors ê±(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolSign {
    Plus,
    Minus,
}

impl PolSign {
    fn imag_unit(self) -> C64 {
        match self {
            PolSign::Plus => C64::new(0.0, 1.0),
            PolSign::Minus => C64::new(0.0, -1.0),
        }
    }
}

// ---------------------------------------------------------------------------
// Spinor form
// ---------------------------------------------------------------------------

/// The e-independent field-strength intertwiner (B_p u₋)^{⊗2|h|} at
/// bidegree (2|h|,0) for h ≤ 0, its dotted mirror for h > 0.
pub fn field_strength_spinor(h: Half, p: &MasslessMomentum) -> Result<SpinorTensor> {
    let n = h.twice().unsigned_abs();
    if h.twice() <= 0 {
        Ok(sym_power(&u_minus_at(p)?, n))
    } else {
        Ok(sym_power(&u_minus_dotted_at(p)?, n))
    }
}

/// The string-localized potential intertwiner at bidegree (|h|,|h|) with
/// prefactor (p·e+i0)^{−|h|}; degree 0 in p.
pub fn potential_spinor(
    h: Half,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<SpinorTensor> {
    potential_spec(h)?.evaluate(p, e)
}

/// The half-integer potential at bidegree (|h|±1/2, |h|∓1/2) with
/// prefactor (p·e+i0)^{−(|h|−1/2)}.
pub fn half_integer_potential(
    h: Half,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<SpinorTensor> {
    half_integer_potential_spec(h)?.evaluate(p, e)
}

/// Contracts all "string" slots of the potential with p̃ε (dotted side for
/// h ≤ 0, mirrored for h > 0) and compares against 2^c times the field
/// strength, c being the number of contractions. Returns the relative
/// residual; this is the momentum-space form of ∂…∂ A(x,e) = F(x).
pub fn potential_contraction_residual(
    h: Half,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<f64> {
    let (pot, contractions) = if h.is_integer() {
        (potential_spinor(h, p, e)?, h.twice().unsigned_abs() / 2)
    } else {
        (
            half_integer_potential(h, p, e)?,
            (h.twice().unsigned_abs() - 1) / 2,
        )
    };
    let p_matrix = to_matrix(p.vector());
    let mut acc = pot;
    for _ in 0..contractions {
        acc = if h.twice() <= 0 {
            contract_dotted(&acc, &p_matrix)?
        } else {
            contract_undotted(&acc, &p_matrix.transpose())?
        };
    }
    let target = field_strength_spinor(h, p)?.scale(2f64.powi(contractions as i32).into());
    Ok(acc.rel_diff(&target))
}

/// Inversion: contracting |h| slots of the field strength with ẽᵀε
/// (h ≤ 0; mirrored with ẽε for h > 0) reproduces
/// (−1)^{|h|} (p·e+i0)^{|h|} times the potential. Returns the relative
/// residual; h = 0 is the trivial identity.
pub fn invert_potential(h: Half, p: &MasslessMomentum, e: &StringDirection) -> Result<f64> {
    if !h.is_integer() {
        return Err(Error::Invalid(
            "invert_potential expects integer helicity; see half_integer_potential".into(),
        ));
    }
    let habs = (h.twice().abs() / 2) as u32;
    if habs == 0 {
        return Ok(0.0);
    }
    let e_matrix = e.matrix();
    let mut acc = field_strength_spinor(h, p)?;
    for _ in 0..habs {
        acc = if h.twice() <= 0 {
            contract_undotted(&acc, &e_matrix.transpose())?
        } else {
            contract_dotted(&acc, &e_matrix)?
        };
    }
    let pe = p.vector().dot(e.vector());
    let factor =
        powc_side(pe, habs as f64, I0Side::Plus) * C64::new((-1.0f64).powi(habs as i32), 0.0);
    let target = potential_spinor(h, p, e)?.scale(factor);
    Ok(acc.rel_diff(&target))
}

/// conj(u^(A,+|h|)(p,e)) = u^(A,−|h|)(p,−ē): self-adjointness pairing of
/// the two potential branches. Returns the relative residual.
pub fn potential_selfadjoint_residual(
    h: Half,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<f64> {
    let plus = potential_spinor(h.abs(), p, e)?;
    let minus_e_bar = conjugate_direction(e)?.negate();
    let minus = potential_spinor(-h.abs(), p, &minus_e_bar)?;
    Ok(crate::rep::conjugate_tensor(&plus).rel_diff(&minus))
}

/// Componentwise conjugate of a string direction (forward ↔ backward).
pub fn conjugate_direction(e: &StringDirection) -> Result<StringDirection> {
    let tag = match e.tag() {
        Tuboid::Real => Tuboid::Real,
        Tuboid::Forward => Tuboid::Backward,
        Tuboid::Backward => Tuboid::Forward,
    };
    StringDirection::new(e.vector().conj(), tag)
}

// ---------------------------------------------------------------------------
// Tensor form
// ---------------------------------------------------------------------------

/// A four-index tensor intertwiner of arbitrary rank, stored densely
/// (4^rank complex components, row-major in the index tuple).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorIntertwiner {
    rank: usize,
    c: Vec<C64>,
}

impl TensorIntertwiner {
    pub fn zero(rank: usize) -> Self {
        TensorIntertwiner {
            rank,
            c: vec![ZERO; 4usize.pow(rank as u32)],
        }
    }

    pub fn scalar(value: C64) -> Self {
        TensorIntertwiner {
            rank: 0,
            c: vec![value],
        }
    }

    pub fn from_vector(v: &FourVector) -> Self {
        TensorIntertwiner {
            rank: 1,
            c: v.0.to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[C64] {
        &self.c
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.c[self.flat(idx)]
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * 4 + i)
    }

    pub fn outer(&self, other: &TensorIntertwiner) -> TensorIntertwiner {
        let rank = self.rank + other.rank;
        let mut c = Vec::with_capacity(4usize.pow(rank as u32));
        for a in &self.c {
            for b in &other.c {
                c.push(a * b);
            }
        }
        TensorIntertwiner { rank, c }
    }

    pub fn scale(&self, s: C64) -> TensorIntertwiner {
        TensorIntertwiner {
            rank: self.rank,
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &TensorIntertwiner) -> TensorIntertwiner {
        assert_eq!(self.rank, other.rank);
        TensorIntertwiner {
            rank: self.rank,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &TensorIntertwiner) -> TensorIntertwiner {
        self.add(&other.scale((-1.0).into()))
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn rel_diff(&self, other: &TensorIntertwiner) -> f64 {
        let scale = self.norm().max(other.norm()).max(1e-300);
        self.sub(other).norm() / scale
    }

    /// Swaps two index slots.
    pub fn transpose_slots(&self, s1: usize, s2: usize) -> TensorIntertwiner {
        let mut out = TensorIntertwiner::zero(self.rank);
        let mut idx = vec![0usize; self.rank];
        for (flat, v) in self.c.iter().enumerate() {
            let mut rest = flat;
            for slot in (0..self.rank).rev() {
                idx[slot] = rest % 4;
                rest /= 4;
            }
            idx.swap(s1, s2);
            let pos = out.flat(&idx);
            out.c[pos] = *v;
        }
        out
    }

    /// Contracts the first slot with v^μ (a raised vector, applied as-is).
    pub fn contract_first_with(&self, v_up: &[C64; 4]) -> TensorIntertwiner {
        assert!(self.rank >= 1);
        let block = 4usize.pow((self.rank - 1) as u32);
        let mut out = TensorIntertwiner::zero(self.rank - 1);
        for mu in 0..4 {
            for r in 0..block {
                out.c[r] += v_up[mu] * self.c[mu * block + r];
            }
        }
        out
    }

    /// Contracts the first two slots with the inverse metric η^{μν}.
    pub fn trace_first_pair(&self) -> TensorIntertwiner {
        assert!(self.rank >= 2);
        let block = 4usize.pow((self.rank - 2) as u32);
        let eta = [1.0, -1.0, -1.0, -1.0];
        let mut out = TensorIntertwiner::zero(self.rank - 2);
        for mu in 0..4 {
            for r in 0..block {
                out.c[r] += self.c[(mu * 4 + mu) * block + r] * eta[mu];
            }
        }
        out
    }

    /// Largest relative defect of total symmetry over adjacent swaps.
    pub fn symmetry_defect(&self) -> f64 {
        let scale = self.norm().max(1e-300);
        let mut worst: f64 = 0.0;
        for s in 0..self.rank.saturating_sub(1) {
            worst = worst.max(self.sub(&self.transpose_slots(s, s + 1)).norm() / scale);
        }
        worst
    }
}

/// Index raised with η: v^μ = (v⁰, −v¹, −v², −v³).
pub fn raise(v: &FourVector) -> [C64; 4] {
    [v.0[0], -v.0[1], -v.0[2], -v.0[3]]
}

/// The polarization vectors ê±(p) = Λ(B_p)(0,1,±i,0); null, orthogonal to
/// p, invariant under p ↦ λp, and of bounded norm over the cone.
pub fn polarization_vector(p: &MasslessMomentum, sign: PolSign) -> Result<FourVector> {
    let b = standard_boost(p)?;
    let base = FourVector([ZERO, C64::new(1.0, 0.0), sign.imag_unit(), ZERO]);
    Ok(lorentz_apply(&b, &base))
}

/// The antisymmetrized pair a_{[μ} b_{ν]} := a_μ b_ν − a_ν b_μ as a rank-2
/// tensor.
fn wedge(a: &FourVector, b: &FourVector) -> TensorIntertwiner {
    let ta = TensorIntertwiner::from_vector(a);
    let tb = TensorIntertwiner::from_vector(b);
    ta.outer(&tb).sub(&tb.outer(&ta))
}

/// The field-strength tensor intertwiner of integer |h|:
/// Πᵢ ê±(p)_{[μᵢ} p_{νᵢ]}, rank 2|h|, antisymmetric within each pair,
/// transversal in p, homogeneous of degree |h|.
pub fn tensor_field_strength(
    habs: u32,
    sign: PolSign,
    p: &MasslessMomentum,
) -> Result<TensorIntertwiner> {
    let pol = polarization_vector(p, sign)?;
    let pair = wedge(&pol, p.vector());
    let mut out = TensorIntertwiner::scalar(C64::new(1.0, 0.0));
    for _ in 0..habs {
        out = out.outer(&pair);
    }
    Ok(out)
}

/// The tensor potential of integer |h|:
/// u±(p,e)_{μ₁…μ_|h|} = (p·e+i0)^{−|h|} Πᵢ [ê±_{μᵢ}(p·e) − p_{μᵢ}(ê±·e)];
/// totally symmetric, transversal, axial (e-contraction zero) and
/// trace-free, homogeneous of degree 0.
pub fn tensor_potential(
    habs: u32,
    sign: PolSign,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<TensorIntertwiner> {
    let pe = p.vector().dot(e.vector());
    if e.tag() == Tuboid::Real && pe.norm() < crate::intertwiner::POLE_TOL && habs > 0 {
        return Err(Error::PoleOnRealAxis);
    }
    let pol = polarization_vector(p, sign)?;
    let pol_dot_e = pol.dot(e.vector());
    let factor = pol.scale(pe) - p.vector().scale(pol_dot_e);
    let mut out = TensorIntertwiner::scalar(powc_side(pe, -(habs as f64), I0Side::Plus));
    let tf = TensorIntertwiner::from_vector(&factor);
    for _ in 0..habs {
        out = out.outer(&tf);
    }
    Ok(out)
}

/// Gauge-property defects of a tensor potential: total symmetry, the
/// generalized Lorentz condition p^{μ₁}u = 0, the axial condition
/// e^{μ₁}u = 0, and tracelessness η^{μ₁μ₂}u = 0 (all relative).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GaugeDefects {
    pub symmetry: f64,
    pub lorentz: f64,
    pub axial: f64,
    pub trace: f64,
}

impl GaugeDefects {
    pub fn max(&self) -> f64 {
        self.symmetry.max(self.lorentz).max(self.axial).max(self.trace)
    }
}

pub fn gauge_defects(
    u: &TensorIntertwiner,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> GaugeDefects {
    let scale = u.norm().max(1e-300);
    let lorentz = if u.rank() >= 1 {
        u.contract_first_with(&raise(p.vector())).norm() / (scale * p.vector().euclid_norm())
    } else {
        0.0
    };
    let axial = if u.rank() >= 1 {
        u.contract_first_with(&raise(e.vector())).norm() / (scale * e.vector().euclid_norm())
    } else {
        0.0
    };
    let trace = if u.rank() >= 2 {
        u.trace_first_pair().norm() / scale
    } else {
        0.0
    };
    GaugeDefects {
        symmetry: u.symmetry_defect(),
        lorentz,
        axial,
        trace,
    }
}

/// Residual of the photon relation p_μ u_ν(e) − p_ν u_μ(e) = −F_{μν}(p)
/// (the constant −1 follows from the ê_{[μ}p_{ν]} ordering of the pairs);
/// in particular the left side is e-independent.
pub fn photon_potential_relation_residual(
    sign: PolSign,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<f64> {
    let u = tensor_potential(1, sign, p, e)?;
    let uv = FourVector([u.c[0], u.c[1], u.c[2], u.c[3]]);
    let curl = wedge(p.vector(), &uv);
    let f = tensor_field_strength(1, sign, p)?;
    Ok(curl.rel_diff(&f.scale((-1.0).into())))
}

/// Ratio between the |h| = 1 tensor potential and the (1,1) spinor
/// potential mapped through the vector correspondence. With the
/// conventions of this crate the two agree exactly; the constant is kept
/// explicit and regression-tested. The spinor branch of helicity ±1 pairs
/// with the polarization label ∓ (under the stabilizer rotations ê₊
/// carries the Wigner phase e^{−iθ}).
pub const PHOTON_VECTOR_SPINOR_RATIO: C64 = C64::new(1.0, 0.0);

/// Residual of the vector/spinor equivalence for |h| = 1:
/// tensor_potential(1, ∓) = ratio · vector(potential_spinor(±1)).
pub fn photon_vector_spinor_residual(
    h_sign: PolSign,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<f64> {
    let (h, pol) = match h_sign {
        PolSign::Plus => (Half::from_int(1), PolSign::Minus),
        PolSign::Minus => (Half::from_int(-1), PolSign::Plus),
    };
    let spinor = potential_spinor(h, p, e)?;
    let as_vector = crate::rep::spinor_to_vector(&spinor)?;
    let lhs = tensor_potential(1, pol, p, e)?;
    let rhs = TensorIntertwiner::from_vector(&as_vector).scale(PHOTON_VECTOR_SPINOR_RATIO);
    Ok(lhs.rel_diff(&rhs))
}

/// The linearized Riemann tensor built from the graviton potential
/// h_{νσ} = tensor_potential(2, sign):
/// R_{μνρσ} = −½[p_μ p_ρ h_{νσ} + p_ν p_σ h_{μρ} − p_ν p_ρ h_{μσ} − p_μ p_σ h_{νρ}]
/// (momentum space, ∂ ↦ ip).
pub fn graviton_riemann(
    sign: PolSign,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<TensorIntertwiner> {
    let h = tensor_potential(2, sign, p, e)?;
    let pv = p.vector();
    let mut r = TensorIntertwiner::zero(4);
    let mut idx = [0usize; 4];
    for flat in 0..r.c.len() {
        let mut rest = flat;
        for slot in (0..4).rev() {
            idx[slot] = rest % 4;
            rest /= 4;
        }
        let (mu, nu, rho, sigma) = (idx[0], idx[1], idx[2], idx[3]);
        let value = pv.0[mu] * pv.0[rho] * h.get(&[nu, sigma])
            + pv.0[nu] * pv.0[sigma] * h.get(&[mu, rho])
            - pv.0[nu] * pv.0[rho] * h.get(&[mu, sigma])
            - pv.0[mu] * pv.0[sigma] * h.get(&[nu, rho]);
        r.c[flat] = value * C64::new(-0.5, 0.0);
    }
    Ok(r)
}

/// Residual of the graviton relation R[h] = −½ F with F the rank-4 field
/// strength in its natural (μ₁ν₁μ₂ν₂) pairing.
pub fn graviton_relation_residual(
    sign: PolSign,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<f64> {
    let r = graviton_riemann(sign, p, e)?;
    let f = tensor_field_strength(2, sign, p)?;
    Ok(r.rel_diff(&f.scale(C64::new(-0.5, 0.0))))
}

/// e-independence of the Riemann side: two different string directions
/// must produce the same R.
pub fn graviton_e_independence_residual(
    sign: PolSign,
    p: &MasslessMomentum,
    e1: &StringDirection,
    e2: &StringDirection,
) -> Result<f64> {
    let r1 = graviton_riemann(sign, p, e1)?;
    let r2 = graviton_riemann(sign, p, e2)?;
    Ok(r1.rel_diff(&r2))
}
