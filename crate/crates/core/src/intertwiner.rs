//! Construction, enumeration and verification of the finite-helicity
//! intertwiners u(p,e).
//!
//! At the standard momentum every intertwiner of bidegree (j,k) and helicity
//! h is a combination of products of four elementary spinors: the constant
//! u₋ = (1,0)ᵀ in either index family, u₊(ẽ) = ẽ(0,1)ᵀ in the undotted
//! family, and its dotted partner ū₊(ẽ) = ẽᵀ(0,1)ᵀ. For real e the dotted
//! partner is the entrywise conjugate of u₊(ẽ); we use its holomorphic
//! continuation so that all intertwiners stay analytic on the complex
//! hyperboloid. A basis element is labelled by how many u₋ factors sit in
//! each family; the helicity selection rule h = (j/2−m) − (k/2−m̄) is exact
//! integer arithmetic on 2h. General momenta are reached with the standard
//! boost: u(p,e) = D(B_p) u(p̂, Λ(B_p)⁻¹e).

use crate::error::{Error, Result};
use crate::half::Half;
use crate::kinematics::{
    random_forward_string, random_momentum, standard_boost, wigner_element, MasslessMomentum,
    StringDirection, Tuboid,
};
use crate::minkowski::{lorentz_apply, random_sl2c, Matrix2C, SL2CElement};
use crate::numeric::{powc_side, I0Side};
use crate::rep::{apply_rep, sym_tensor_product, RepLabel, SpinorTensor};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Absolute floor on |p·e| below which a singular coefficient function is
/// refused for real string directions.
pub const POLE_TOL: f64 = 1e-10;

/// One basis intertwiner at the standard momentum: m (resp. m̄) of the j
/// undotted (k dotted) slots carry u₋, the rest carry u₊(ẽ) (resp. ū₊(ẽ)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub j: u32,
    pub k: u32,
    pub m: u32,
    pub mbar: u32,
}

impl BasisElement {
    pub fn new(j: u32, k: u32, m: u32, mbar: u32) -> Result<Self> {
        if m > j || mbar > k {
            return Err(Error::Invalid(format!(
                "basis element (m,m̄)=({m},{mbar}) out of range for ({j},{k})"
            )));
        }
        Ok(BasisElement { j, k, m, mbar })
    }

    /// The helicity h = (j/2 − m) − (k/2 − m̄) this element intertwines.
    pub fn helicity(&self) -> Half {
        Half((self.j as i32 - 2 * self.m as i32) - (self.k as i32 - 2 * self.mbar as i32))
    }

    pub fn rep(&self) -> RepLabel {
        RepLabel::new(self.j, self.k)
    }
}

/// All (m, m̄) with 0 ≤ m ≤ j, 0 ≤ m̄ ≤ k and h = (j/2−m) − (k/2−m̄).
/// Empty exactly when |h| > (j+k)/2 or the parity of 2h mismatches j+k.
pub fn enumerate_basis(j: u32, k: u32, h: Half) -> Vec<BasisElement> {
    let mut out = Vec::new();
    for m in 0..=j {
        // 2h = (j - 2m) - (k - 2m̄)  ⇒  2m̄ = 2h - j + 2m + k
        let twice_mbar = h.twice() - j as i32 + 2 * m as i32 + k as i32;
        if twice_mbar >= 0 && twice_mbar % 2 == 0 && (twice_mbar / 2) <= k as i32 {
            out.push(BasisElement {
                j,
                k,
                m,
                mbar: (twice_mbar / 2) as u32,
            });
        }
    }
    out
}

/// Closed-form dimension of the helicity-h intertwiner space at (j,k):
/// (j+k)/2 − |h| + 1 when that is ≤ min(j,k), otherwise min(j,k)+1;
/// zero for inadmissible h.
pub fn dimension(j: u32, k: u32, h: Half) -> usize {
    let span = j as i32 + k as i32;
    let habs = h.twice().abs();
    if habs > span || (span - habs) % 2 != 0 {
        return 0;
    }
    let b = (span - habs) / 2;
    let lo = j.min(k) as i32;
    if b <= lo {
        (b + 1) as usize
    } else {
        (lo + 1) as usize
    }
}

// ---------------------------------------------------------------------------
// Fundamental intertwiners
// ---------------------------------------------------------------------------

const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// u₋ = (1,0)ᵀ as an undotted spinor.
pub fn u_minus() -> SpinorTensor {
    SpinorTensor::undotted([ONE, ZERO])
}

/// u₋ = (1,0)ᵀ carried in the dotted family.
pub fn u_minus_dotted() -> SpinorTensor {
    SpinorTensor::dotted([ONE, ZERO])
}

/// u₊(ẽ) = ẽ (0,1)ᵀ.
pub fn u_plus(e: &StringDirection) -> SpinorTensor {
    SpinorTensor::undotted(e.matrix().mul_vec([ZERO, ONE]))
}

/// ū₊(ẽ) = ẽᵀ (0,1)ᵀ in the dotted family; equals the entrywise conjugate
/// of u₊(ẽ) for real e and is its holomorphic continuation otherwise.
pub fn u_plus_bar(e: &StringDirection) -> SpinorTensor {
    SpinorTensor::dotted(e.matrix().transpose().mul_vec([ZERO, ONE]))
}

/// u₋(p) = B_p u₋.
pub fn u_minus_at(p: &MasslessMomentum) -> Result<SpinorTensor> {
    let b = standard_boost(p)?;
    Ok(SpinorTensor::undotted(b.matrix().mul_vec([ONE, ZERO])))
}

/// The dotted u₋ factor at momentum p: conj(B_p) u₋.
pub fn u_minus_dotted_at(p: &MasslessMomentum) -> Result<SpinorTensor> {
    let b = standard_boost(p)?;
    Ok(SpinorTensor::dotted(
        b.matrix().conj().mul_vec([ONE, ZERO]),
    ))
}

/// u₊(p,e) = ẽ (B_p†)⁻¹ u₊.
pub fn u_plus_at(p: &MasslessMomentum, e: &StringDirection) -> Result<SpinorTensor> {
    let b = standard_boost(p)?;
    let v = b.matrix().dagger().inverse().mul_vec([ZERO, ONE]);
    Ok(SpinorTensor::undotted(e.matrix().mul_vec(v)))
}

/// ū₊(p,e) = ẽᵀ (B_pᵀ)⁻¹ u₊, the dotted partner of [`u_plus_at`].
pub fn u_plus_bar_at(p: &MasslessMomentum, e: &StringDirection) -> Result<SpinorTensor> {
    let b = standard_boost(p)?;
    let v = b.matrix().transpose().inverse().mul_vec([ZERO, ONE]);
    Ok(SpinorTensor::dotted(e.matrix().transpose().mul_vec(v)))
}

/// n-fold symmetric power.
pub fn sym_power(base: &SpinorTensor, n: u32) -> SpinorTensor {
    let mut acc = SpinorTensor::scalar_one();
    for _ in 0..n {
        acc = sym_tensor_product(&acc, base);
    }
    acc
}

/// The basis intertwiner built from a raw direction matrix (not
/// necessarily on the hyperboloid — the construction is polynomial in ẽ).
fn basis_from_matrix(b: &BasisElement, m: &Matrix2C) -> SpinorTensor {
    let up = SpinorTensor::undotted(m.mul_vec([ZERO, ONE]));
    let up_bar = SpinorTensor::dotted(m.transpose().mul_vec([ZERO, ONE]));
    let undotted = sym_tensor_product(&sym_power(&u_minus(), b.m), &sym_power(&up, b.j - b.m));
    let dotted = sym_tensor_product(
        &sym_power(&u_minus_dotted(), b.mbar),
        &sym_power(&up_bar, b.k - b.mbar),
    );
    sym_tensor_product(&undotted, &dotted)
}

/// The basis intertwiner at the standard momentum:
/// [u₋^{⊗m} ⊗ₛ u₊(ẽ)^{⊗(j−m)}] ⊗ [u₋^{⊗m̄} ⊗ₛ ū₊(ẽ)^{⊗(k−m̄)}].
pub fn basis_intertwiner_at_phat(b: &BasisElement, e: &StringDirection) -> SpinorTensor {
    basis_from_matrix(b, &e.matrix())
}

// ---------------------------------------------------------------------------
// Coefficient functions
// ---------------------------------------------------------------------------

/// An iε-regularized power law times a polynomial:
/// f(z) = (z ± i0)^ν · Σₙ cₙ zⁿ. Evaluated off the real axis through the
/// branch matching the chosen side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFunction {
    pub nu: f64,
    pub side: I0Side,
    pub poly: Vec<C64>,
}

impl CoefficientFunction {
    pub fn constant(c: C64) -> Self {
        CoefficientFunction {
            nu: 0.0,
            side: I0Side::Plus,
            poly: vec![c],
        }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    /// (z ± i0)^ν.
    pub fn power(nu: f64, side: I0Side) -> Self {
        CoefficientFunction {
            nu,
            side,
            poly: vec![ONE],
        }
    }

    /// True when evaluation at z = 0 on the real axis is ill-defined.
    pub fn singular_at_zero(&self) -> bool {
        self.nu < 0.0 || self.nu.fract() != 0.0
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = ZERO;
        for c in self.poly.iter().rev() {
            acc = acc * z + c;
        }
        if self.nu == 0.0 {
            acc
        } else {
            acc * powc_side(z, self.nu, self.side)
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        CoefficientFunction {
            nu: self.nu,
            side: self.side,
            poly: self.poly.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplies by (s·z)ⁿ.
    pub fn mul_monomial(&self, s: C64, n: u32) -> Self {
        let factor = s.powu(n);
        let mut poly = vec![ZERO; n as usize];
        poly.extend(self.poly.iter().map(|c| c * factor));
        CoefficientFunction {
            nu: self.nu,
            side: self.side,
            poly,
        }
    }

    /// Product of two coefficient functions. Regularization sides must
    /// agree unless one factor is an entire function of z.
    pub fn mul(&self, other: &CoefficientFunction) -> Self {
        debug_assert!(
            self.side == other.side || !self.singular_at_zero() || !other.singular_at_zero(),
            "incompatible i0 sides"
        );
        let side = if self.singular_at_zero() {
            self.side
        } else {
            other.side
        };
        let mut poly = vec![ZERO; self.poly.len() + other.poly.len() - 1];
        for (i, a) in self.poly.iter().enumerate() {
            for (j, b) in other.poly.iter().enumerate() {
                poly[i + j] += a * b;
            }
        }
        CoefficientFunction {
            nu: self.nu + other.nu,
            side,
            poly,
        }
    }
}

// ---------------------------------------------------------------------------
// Intertwiner specifications
// ---------------------------------------------------------------------------

/// A concrete intertwiner u(p,e): a non-empty combination of basis
/// elements (all of the same bidegree and helicity) with coefficient
/// functions of p·e.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertwinerSpec {
    rep: RepLabel,
    h: Half,
    terms: Vec<(BasisElement, CoefficientFunction)>,
}

impl IntertwinerSpec {
    pub fn new(terms: Vec<(BasisElement, CoefficientFunction)>) -> Result<Self> {
        let Some((first, _)) = terms.first() else {
            return Err(Error::EmptySpec);
        };
        let rep = first.rep();
        let h = first.helicity();
        for (b, _) in &terms {
            if b.rep() != rep {
                return Err(Error::RepMismatch {
                    ej: rep.j,
                    ek: rep.k,
                    fj: b.j,
                    fk: b.k,
                });
            }
            if b.helicity() != h {
                return Err(Error::Invalid(format!(
                    "mixed helicities {} and {} in one spec",
                    h,
                    b.helicity()
                )));
            }
        }
        Ok(IntertwinerSpec { rep, h, terms })
    }

    pub fn single(b: BasisElement, f: CoefficientFunction) -> Self {
        IntertwinerSpec {
            rep: b.rep(),
            h: b.helicity(),
            terms: vec![(b, f)],
        }
    }

    pub fn rep(&self) -> RepLabel {
        self.rep
    }

    pub fn helicity(&self) -> Half {
        self.h
    }

    pub fn terms(&self) -> &[(BasisElement, CoefficientFunction)] {
        &self.terms
    }

    /// Value at the standard momentum: Σᵢ fᵢ(p̂·e) uᵢ(ẽ).
    pub fn at_phat(&self, e: &StringDirection) -> Result<SpinorTensor> {
        self.evaluate(&crate::kinematics::standard_momentum(), e)
    }

    /// u(p,e) = Σᵢ fᵢ(p·e) D(B_p) uᵢ(p̂, Λ(B_p)⁻¹e).
    pub fn evaluate(&self, p: &MasslessMomentum, e: &StringDirection) -> Result<SpinorTensor> {
        self.evaluate_transported(p, e, None)
    }

    /// D(g) u(p, Λ(g)⁻¹e) for g = `post` (identity when absent, reducing
    /// to the plain evaluation). Covariance checks use g = A⁻¹, so this is
    /// D(A⁻¹)u(p, Λ(A)e) with e passed directly: g·B_p equals
    /// B_{Λ(g)p}·(little group), so applying the combined matrix — and
    /// pulling ẽ through its inverse in a single conjugation — sidesteps
    /// both the condition-number product of the two representation factors
    /// and the large intermediate vector Λ(A)e.
    pub fn evaluate_transported(
        &self,
        p: &MasslessMomentum,
        e: &StringDirection,
        post: Option<&SL2CElement>,
    ) -> Result<SpinorTensor> {
        // Coefficient argument: p·(Λ(g)⁻¹e) = (Λ(g)p)·e.
        let pe = match post {
            None => p.vector().dot(e.vector()),
            Some(g) => lorentz_apply(g, p.vector()).dot(e.vector()),
        };
        if e.tag() == Tuboid::Real && pe.norm() < POLE_TOL {
            if self.terms.iter().any(|(_, f)| f.singular_at_zero()) {
                return Err(Error::PoleOnRealAxis);
            }
        }
        if self.rep == RepLabel::new(0, 0) {
            // Scalars carry no boost factor; this also keeps them evaluable
            // arbitrarily close to the boost-chart singularity.
            let total: C64 = self.terms.iter().map(|(_, f)| f.eval(pe)).sum();
            return SpinorTensor::from_components(self.rep, vec![total]);
        }
        let boost = standard_boost(p)?;
        let transport = match post {
            Some(g) => g.compose(&boost),
            None => boost,
        };
        let inv = transport.inverse();
        let pulled = *inv.matrix() * e.matrix() * inv.matrix().dagger();
        self.assemble(pe, &pulled, &transport)
    }

    /// Σᵢ fᵢ(pe) · D(transport) uᵢ(pulled ẽ). Basis values are polynomial
    /// in ẽ, so they are evaluated at the rescaled matrix with the exact
    /// power of the scale restored per term; every intermediate tensor
    /// stays O(1) and the transport cancellation remains benign.
    fn assemble(
        &self,
        pe: C64,
        pulled: &Matrix2C,
        transport: &SL2CElement,
    ) -> Result<SpinorTensor> {
        let lambda = pulled.frobenius_norm().max(1e-300);
        let unit_matrix = pulled.scale((1.0 / lambda).into());
        let mut acc = SpinorTensor::zero(self.rep);
        for (b, f) in &self.terms {
            let tensor = basis_from_matrix(b, &unit_matrix);
            let degree = (b.j - b.m) + (b.k - b.mbar);
            let weight = f.eval(pe) * lambda.powi(degree as i32);
            acc = acc.add(&tensor.scale(weight))?;
        }
        apply_rep(self.rep, transport, &acc)
    }

    /// v(p,e,−h) = u(p,−e,h): the annihilation-part intertwiner obtained by
    /// reflecting the string; it obeys the second intertwiner relation with
    /// phase e^{−ihθ}.
    pub fn v_from_u(&self, p: &MasslessMomentum, e: &StringDirection) -> Result<SpinorTensor> {
        self.evaluate(p, &e.negate())
    }

    /// Tensor product followed by symmetrization in each index family;
    /// helicities add, bidegrees add. Tensoring with a helicity-0
    /// intertwiner preserves the helicity.
    pub fn tensor_with(&self, other: &IntertwinerSpec) -> IntertwinerSpec {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (b1, f1) in &self.terms {
            for (b2, f2) in &other.terms {
                let b = BasisElement {
                    j: b1.j + b2.j,
                    k: b1.k + b2.k,
                    m: b1.m + b2.m,
                    mbar: b1.mbar + b2.mbar,
                };
                terms.push((b, f1.mul(f2)));
            }
        }
        merge_terms(&mut terms);
        IntertwinerSpec {
            rep: RepLabel::new(self.rep.j + other.rep.j, self.rep.k + other.rep.k),
            h: self.h + other.h,
            terms,
        }
    }
}

fn merge_terms(terms: &mut Vec<(BasisElement, CoefficientFunction)>) {
    let mut merged: Vec<(BasisElement, CoefficientFunction)> = Vec::new();
    'outer: for (b, f) in terms.drain(..) {
        for (mb, mf) in merged.iter_mut() {
            if *mb == b && mf.nu == f.nu && mf.side == f.side {
                if mf.poly.len() < f.poly.len() {
                    mf.poly.resize(f.poly.len(), ZERO);
                }
                for (i, c) in f.poly.iter().enumerate() {
                    mf.poly[i] += c;
                }
                continue 'outer;
            }
        }
        merged.push((b, f));
    }
    *terms = std::mem::take(&mut merged);
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

/// The minimal intertwiner for helicity h at bidegree
/// (j,k) = (2|h|−k_index, k_index): for h ≥ 0 a product of u₊(p,e) and
/// dotted u₋(p) factors, for h < 0 of u₋(p) and ū₊(p,e) factors. k_index = 0
/// with h = −|h| is the e-independent point-field intertwiner.
pub fn minimal_intertwiner_spec(h: Half, k_index: u32) -> Result<IntertwinerSpec> {
    let habs2 = h.twice().unsigned_abs();
    if k_index > habs2 {
        return Err(Error::Invalid(format!(
            "k_index {k_index} exceeds 2|h| = {habs2}"
        )));
    }
    let j = habs2 - k_index;
    let k = k_index;
    let b = if h.twice() >= 0 {
        // all undotted slots carry u₊, all dotted slots carry u₋
        BasisElement::new(j, k, 0, k)?
    } else {
        BasisElement::new(j, k, j, 0)?
    };
    debug_assert_eq!(b.helicity(), h);
    Ok(IntertwinerSpec::single(b, CoefficientFunction::one()))
}

/// The e-independent field-strength intertwiner: (B_p u₋)^{⊗2|h|} at
/// bidegree (2|h|, 0) for h = −|h|, its dotted mirror for h = +|h|;
/// homogeneous of degree |h| in p.
pub fn field_strength_spec(h: Half) -> IntertwinerSpec {
    let habs2 = h.twice().unsigned_abs();
    let b = if h.twice() <= 0 {
        BasisElement {
            j: habs2,
            k: 0,
            m: habs2,
            mbar: 0,
        }
    } else {
        BasisElement {
            j: 0,
            k: habs2,
            m: 0,
            mbar: habs2,
        }
    };
    debug_assert_eq!(b.helicity(), h);
    IntertwinerSpec::single(b, CoefficientFunction::one())
}

/// The string-localized potential for integer helicity h ≠ 0: bidegree
/// (|h|,|h|) with prefactor (p·e + i0)^{−|h|}; homogeneous of degree 0 in p.
pub fn potential_spec(h: Half) -> Result<IntertwinerSpec> {
    if !h.is_integer() {
        return Err(Error::Invalid(format!(
            "potential_spec needs integer helicity, got {h}"
        )));
    }
    let habs = (h.twice().abs() / 2) as u32;
    let b = if h.twice() >= 0 {
        BasisElement::new(habs, habs, 0, habs)?
    } else {
        BasisElement::new(habs, habs, habs, 0)?
    };
    debug_assert_eq!(b.helicity(), h);
    Ok(IntertwinerSpec::single(
        b,
        CoefficientFunction::power(-(habs as f64), I0Side::Plus),
    ))
}

/// The half-integer analogue: bidegree (|h|+1/2, |h|−1/2) for h = −|h|
/// (mirrored for h = +|h|) with prefactor (p·e + i0)^{−(|h|−1/2)}.
pub fn half_integer_potential_spec(h: Half) -> Result<IntertwinerSpec> {
    if h.is_integer() {
        return Err(Error::Invalid(format!(
            "half_integer_potential_spec needs half-odd helicity, got {h}"
        )));
    }
    let habs2 = h.twice().unsigned_abs(); // 2|h|, odd
    let big = (habs2 + 1) / 2; // |h| + 1/2
    let small = (habs2 - 1) / 2; // |h| - 1/2
    let b = if h.twice() < 0 {
        BasisElement::new(big, small, big, 0)?
    } else {
        BasisElement::new(small, big, 0, big)?
    };
    debug_assert_eq!(b.helicity(), h);
    Ok(IntertwinerSpec::single(
        b,
        CoefficientFunction::power(-(small as f64), I0Side::Plus),
    ))
}

/// A basis of the helicity-0 intertwiner space at bidegree (b,b): the b+1
/// elements with m = m̄ = i and unit coefficient.
pub fn helicity_zero_basis(b: u32) -> Vec<IntertwinerSpec> {
    (0..=b)
        .map(|i| {
            IntertwinerSpec::single(
                BasisElement {
                    j: b,
                    k: b,
                    m: i,
                    mbar: i,
                },
                CoefficientFunction::one(),
            )
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The general construction
// ---------------------------------------------------------------------------

/// Builds the general (j,k,h)-intertwiner from elementary operations:
/// starting from the point-field intertwiner for helicity ∓|h|, tensoring
/// with the combination Σᵢ fᵢ u⁽⁰⁾ᵢ of helicity-0 intertwiners at bidegree
/// (b,b), b = (j+k)/2 − |h|, and contracting |a| indices with p̃ε (a > 0,
/// dotted) or ẽᵀε (a < 0, undotted) where a = j − (point+scalar bidegree).
/// `coefficients` must have length b+1; the output spans the full
/// d-dimensional intertwiner space as they range over a basis.
pub fn general_intertwiner(
    j: u32,
    k: u32,
    h: Half,
    coefficients: &[CoefficientFunction],
) -> Result<IntertwinerSpec> {
    let span = (j + k) as i32;
    let habs2 = h.twice().abs();
    if habs2 > span || (span - habs2) % 2 != 0 {
        return Err(Error::InadmissibleHelicity {
            j,
            k,
            h: h.to_string(),
        });
    }
    let b = ((span - habs2) / 2) as u32;
    if coefficients.len() != (b + 1) as usize {
        return Err(Error::CoefficientCount {
            expected: (b + 1) as usize,
            found: coefficients.len(),
        });
    }
    let habs = habs2 as u32; // 2|h|
    // Point part ⊗ helicity-zero part, as terms at the current bidegree.
    let (mut jj, mut kk, m0, mb0) = if h.twice() <= 0 {
        (habs + b, b, habs, 0u32)
    } else {
        (b, habs + b, 0u32, habs)
    };
    let mut terms: Vec<(u32, u32, CoefficientFunction)> = coefficients
        .iter()
        .enumerate()
        .map(|(i, f)| (m0 + i as u32, mb0 + i as u32, f.clone()))
        .collect();

    // Contractions: bring (jj,kk) to (j,k) one index at a time. The h ≤ 0
    // branch uses p̃ε on dotted and ẽᵀε on undotted slots; the h > 0 branch
    // uses the conjugate pair, ẽε on dotted and p̃ᵀε on undotted slots.
    while jj < j {
        let mut next = Vec::new();
        for (m, mbar, f) in terms.drain(..) {
            if h.twice() <= 0 {
                // p̃ε: ū₊ ↦ 2(p·e) u₋; dotted u₋ slots are annihilated.
                let live = kk - mbar;
                if live > 0 {
                    let w = live as f64 / kk as f64;
                    next.push((
                        m + 1,
                        mbar,
                        f.mul_monomial(C64::new(2.0, 0.0), 1).scale(w.into()),
                    ));
                }
            } else {
                // ẽε: dotted u₋ ↦ −u₊(ẽ); ū₊ ↦ −u₋.
                if mbar > 0 {
                    let w = -(mbar as f64) / kk as f64;
                    next.push((m, mbar - 1, f.scale(w.into())));
                }
                if kk - mbar > 0 {
                    let w = -((kk - mbar) as f64) / kk as f64;
                    next.push((m + 1, mbar, f.scale(w.into())));
                }
            }
        }
        terms = next;
        jj += 1;
        kk -= 1;
    }
    while jj > j {
        let mut next = Vec::new();
        for (m, mbar, f) in terms.drain(..) {
            if h.twice() <= 0 {
                // ẽᵀε: u₋ ↦ −ū₊(ẽ); u₊ ↦ −(dotted u₋).
                if m > 0 {
                    let w = -(m as f64) / jj as f64;
                    next.push((m - 1, mbar, f.scale(w.into())));
                }
                if jj - m > 0 {
                    let w = -((jj - m) as f64) / jj as f64;
                    next.push((m, mbar + 1, f.scale(w.into())));
                }
            } else {
                // p̃ᵀε: u₊ ↦ 2(p·e)(dotted u₋); u₋ slots are annihilated.
                let live = jj - m;
                if live > 0 {
                    let w = live as f64 / jj as f64;
                    next.push((
                        m,
                        mbar + 1,
                        f.mul_monomial(C64::new(2.0, 0.0), 1).scale(w.into()),
                    ));
                }
            }
        }
        terms = next;
        jj -= 1;
        kk += 1;
    }
    debug_assert_eq!((jj, kk), (j, k));
    let mut spec_terms: Vec<(BasisElement, CoefficientFunction)> = terms
        .into_iter()
        .map(|(m, mbar, f)| (BasisElement { j, k, m, mbar }, f))
        .collect();
    merge_terms(&mut spec_terms);
    spec_terms.retain(|(_, f)| f.poly.iter().any(|c| c.norm_sqr() > 0.0));
    if spec_terms.is_empty() {
        return Err(Error::Invalid(format!(
            "construction for ({j},{k},{h}) collapsed to zero for these coefficients"
        )));
    }
    for (b, _) in &spec_terms {
        debug_assert_eq!(b.helicity(), h);
    }
    IntertwinerSpec::new(spec_terms)
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Max/mean residual report of a sampled check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualReport {
    pub samples: usize,
    pub max: f64,
    pub mean: f64,
}

impl ResidualReport {
    pub fn from_residuals(rs: &[f64]) -> Self {
        let max = rs.iter().cloned().fold(0.0, f64::max);
        let mean = if rs.is_empty() {
            0.0
        } else {
            rs.iter().sum::<f64>() / rs.len() as f64
        };
        ResidualReport {
            samples: rs.len(),
            max,
            mean,
        }
    }
}

/// Residual of both intertwiner relations at one sample (A, p, e) for an
/// arbitrary evaluator u(p,e) of bidegree `rep` and helicity `h`:
/// the creation line D(A⁻¹)u(p, Λ(A)e) = e^{ihθ} u(Λ(A)⁻¹p, e), and the
/// annihilation line for v(p,e,−h) := u(p,−e,h), which as the intertwiner
/// of the helicity-(−h) Wigner representation carries the phase
/// e^{−i(−h)θ} = e^{ihθ}. θ is the Wigner angle of B_p⁻¹ A B_{Λ(A)⁻¹p}.
pub fn covariance_residual_with<F>(
    rep: RepLabel,
    h: Half,
    a: &SL2CElement,
    p: &MasslessMomentum,
    e: &StringDirection,
    eval: F,
) -> Result<f64>
where
    F: Fn(&MasslessMomentum, &StringDirection) -> Result<SpinorTensor>,
{
    let q = MasslessMomentum::new(lorentz_apply(&a.inverse(), p.vector()).re())?;
    let theta = wigner_element(&q, a)?.theta;
    let phase = C64::new(0.0, h.value() * theta).exp();
    let moved = e.transform(a);

    let lhs = apply_rep(rep, &a.inverse(), &eval(p, &moved)?)?;
    let rhs = eval(&q, e)?.scale(phase);
    let r_u = lhs.rel_diff(&rhs);

    let lhs_v = apply_rep(rep, &a.inverse(), &eval(p, &moved.negate())?)?;
    let rhs_v = eval(&q, &e.negate())?.scale(phase);
    let r_v = lhs_v.rel_diff(&rhs_v);

    Ok(r_u.max(r_v))
}

/// [`covariance_residual_with`] specialized to an [`IntertwinerSpec`],
/// combining D(A⁻¹)D(B_p) into one representation application on each side
/// of both relations.
pub fn covariance_residual(
    spec: &IntertwinerSpec,
    a: &SL2CElement,
    p: &MasslessMomentum,
    e: &StringDirection,
) -> Result<f64> {
    let h = spec.helicity();
    let inv = a.inverse();
    let q = MasslessMomentum::new(lorentz_apply(&inv, p.vector()).re())?;
    let theta = wigner_element(&q, a)?.theta;
    let phase = C64::new(0.0, h.value() * theta).exp();

    // D(A⁻¹)u(p, Λ(A)e) against e^{ihθ}u(Λ(A)⁻¹p, e), and the same with
    // e ↦ −e for the annihilation intertwiner v.
    let lhs = spec.evaluate_transported(p, e, Some(&inv))?;
    let rhs = spec.evaluate(&q, e)?.scale(phase);
    let r_u = lhs.rel_diff(&rhs);

    let neg = e.negate();
    let lhs_v = spec.evaluate_transported(p, &neg, Some(&inv))?;
    let rhs_v = spec.evaluate(&q, &neg)?.scale(phase);
    let r_v = lhs_v.rel_diff(&rhs_v);

    Ok(r_u.max(r_v))
}

/// Samples the intertwiner relations over random (A, p, e) with forward
/// complex string directions. Deterministic for a given seed: each sample
/// draws from its own stream, so results do not depend on evaluation order.
pub fn check_intertwining(
    spec: &IntertwinerSpec,
    samples: usize,
    seed: u64,
) -> Result<ResidualReport> {
    if spec.terms().is_empty() {
        return Err(Error::EmptySpec);
    }
    let mut residuals = Vec::with_capacity(samples);
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(
            seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        let r = loop {
            let (a, p, e) = sample_triple(&mut rng);
            match covariance_residual(spec, &a, &p, &e) {
                Ok(r) => break r,
                Err(_) => continue,
            }
        };
        residuals.push(r);
    }
    Ok(ResidualReport::from_residuals(&residuals))
}

/// Smallest singular value of the stacked, normalized basis intertwiners of
/// (j,k,h) at (p̂,e); positive iff they are linearly independent.
pub fn basis_smallest_singular_value(
    j: u32,
    k: u32,
    h: Half,
    e: &StringDirection,
) -> Result<f64> {
    let basis = enumerate_basis(j, k, h);
    if basis.is_empty() {
        return Err(Error::InadmissibleHelicity {
            j,
            k,
            h: h.to_string(),
        });
    }
    let rows: Vec<Vec<C64>> = basis
        .iter()
        .map(|b| {
            let t = basis_intertwiner_at_phat(b, e);
            let n = t.norm().max(1e-300);
            t.weighted_components().iter().map(|c| c / n).collect()
        })
        .collect();
    let d = rows.len();
    let mut gram = vec![vec![ZERO; d]; d];
    for r in 0..d {
        for c in 0..d {
            gram[r][c] = rows[r]
                .iter()
                .zip(&rows[c])
                .map(|(x, y)| x.conj() * y)
                .sum();
        }
    }
    let (vals, _) = crate::numeric::jacobi_hermitian(&gram);
    Ok(vals[0].max(0.0).sqrt())
}

/// Draws a deterministic sample (A, p, e) for covariance checks.
///
/// Draws are rejected until the configuration is well conditioned: both p
/// and Λ(A)⁻¹p sit safely inside the boost chart, the group element is of
/// moderate size, and the coefficient argument p·Λ(A)e stays away from the
/// pole. Without these bounds the relation holds but floating-point
/// residuals are dominated by the condition number of D(B_p) and D(A).
pub fn sample_triple<R: Rng>(
    rng: &mut R,
) -> (SL2CElement, MasslessMomentum, StringDirection) {
    loop {
        let a = random_sl2c(rng);
        if a.matrix().frobenius_norm() > 2.8 {
            continue;
        }
        let p = random_momentum(rng);
        let e = random_forward_string(rng);
        let back = lorentz_apply(&a.inverse(), p.vector()).re();
        let chart_q = (back.0[0] + back.0[3]).re;
        if !(0.2..=3.0).contains(&chart_q)
            || back.0[0].re <= 0.0
            || !(0.2..=3.0).contains(&p.chart_coordinate())
        {
            continue;
        }
        let moved = e.transform(&a);
        if p.vector().dot(moved.vector()).norm() < 0.05 {
            continue;
        }
        // Cap the spectral size of the two transport factors, A⁻¹B_p and
        // B_{Λ(A)⁻¹p}. Their largest singular value enters the comparison
        // as σ^{2(j+k)}, so even moderate boosts make the float residual
        // dwarf the relation being tested.
        let (Ok(bp), Ok(q)) = (standard_boost(&p), MasslessMomentum::new(back)) else {
            continue;
        };
        let Ok(bq) = standard_boost(&q) else { continue };
        let t = a.inverse().compose(&bp);
        if t.matrix().frobenius_norm() > 2.3 || bq.matrix().frobenius_norm() > 2.3 {
            continue;
        }
        return (a, p, e);
    }
}
