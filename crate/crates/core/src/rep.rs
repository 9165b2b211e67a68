//! The finite-dimensional representations D^(j/2,k/2) acting on symmetric
//! bidegree-(j,k) spinor tensors.
//!
//! A tensor symmetric in j undotted and k dotted indices is stored by its
//! distinct components, indexed by occupation counts `(a, ḃ)` with `a` the
//! number of undotted indices equal to 2 and `ḃ` likewise for dotted ones.
//! The carrier space has dimension (j+1)(k+1). Equivalently the tensor is a
//! polynomial homogeneous of degree j in (w₁,w₂) and degree k in (v₁,v₂);
//! the group acts by substitution on the variables, symmetric tensor
//! products are polynomial products, and index contractions are derivatives.
//! The inner product carries multinomial weights C(j,a)C(k,ḃ) so that it
//! reproduces the Euclidean inner product of the fully expanded tensor.

use crate::error::{Error, Result};
use crate::minkowski::{from_matrix, FourVector, Matrix2C, SL2CElement};
use crate::numeric::binomial;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Bidegree label (j,k) of the representation D^(j/2,k/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepLabel {
    pub j: u32,
    pub k: u32,
}

impl RepLabel {
    pub fn new(j: u32, k: u32) -> Self {
        RepLabel { j, k }
    }

    pub fn dim(&self) -> usize {
        ((self.j + 1) * (self.k + 1)) as usize
    }

    /// Label of the conjugate representation.
    pub fn conjugate(&self) -> RepLabel {
        RepLabel { j: self.k, k: self.j }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.k)
    }
}

/// Element of the symmetric bidegree-(j,k) spinor space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinorTensor {
    rep: RepLabel,
    /// Row-major over (a, ḃ): index `a*(k+1) + ḃ`.
    c: Vec<C64>,
}

impl SpinorTensor {
    pub fn zero(rep: RepLabel) -> Self {
        SpinorTensor {
            rep,
            c: vec![C64::new(0.0, 0.0); rep.dim()],
        }
    }

    pub fn from_components(rep: RepLabel, c: Vec<C64>) -> Result<Self> {
        if c.len() != rep.dim() {
            return Err(Error::Invalid(format!(
                "component count {} does not match dim {} of {}",
                c.len(),
                rep.dim(),
                rep
            )));
        }
        Ok(SpinorTensor { rep, c })
    }

    /// The scalar representation (0,0) with value 1.
    pub fn scalar_one() -> Self {
        SpinorTensor {
            rep: RepLabel::new(0, 0),
            c: vec![C64::new(1.0, 0.0)],
        }
    }

    /// A single undotted spinor, bidegree (1,0).
    pub fn undotted(v: [C64; 2]) -> Self {
        SpinorTensor {
            rep: RepLabel::new(1, 0),
            c: vec![v[0], v[1]],
        }
    }

    /// A single dotted spinor, bidegree (0,1).
    pub fn dotted(v: [C64; 2]) -> Self {
        SpinorTensor {
            rep: RepLabel::new(0, 1),
            c: vec![v[0], v[1]],
        }
    }

    pub fn rep(&self) -> RepLabel {
        self.rep
    }

    pub fn components(&self) -> &[C64] {
        &self.c
    }

    pub fn component(&self, a: u32, b: u32) -> C64 {
        self.c[(a * (self.rep.k + 1) + b) as usize]
    }

    pub fn set_component(&mut self, a: u32, b: u32, value: C64) {
        self.c[(a * (self.rep.k + 1) + b) as usize] = value;
    }

    /// Multinomial-weighted inner product; equals the Euclidean inner
    /// product of the expanded tensors. Antilinear in `self`.
    pub fn inner(&self, other: &SpinorTensor) -> Result<C64> {
        if self.rep != other.rep {
            return Err(Error::RepMismatch {
                ej: self.rep.j,
                ek: self.rep.k,
                fj: other.rep.j,
                fk: other.rep.k,
            });
        }
        let (j, k) = (self.rep.j, self.rep.k);
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..=j {
            for b in 0..=k {
                let w = binomial(j, a) * binomial(k, b);
                acc += self.component(a, b).conj() * other.component(a, b) * w;
            }
        }
        Ok(acc)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).expect("same rep").re.max(0.0).sqrt()
    }

    /// Components scaled by sqrt of the multinomial weights; the Euclidean
    /// norm of this vector is [`SpinorTensor::norm`].
    pub fn weighted_components(&self) -> Vec<C64> {
        let (j, k) = (self.rep.j, self.rep.k);
        let mut out = Vec::with_capacity(self.rep.dim());
        for a in 0..=j {
            for b in 0..=k {
                out.push(self.component(a, b) * (binomial(j, a) * binomial(k, b)).sqrt());
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> SpinorTensor {
        SpinorTensor {
            rep: self.rep,
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &SpinorTensor) -> Result<SpinorTensor> {
        if self.rep != other.rep {
            return Err(Error::RepMismatch {
                ej: self.rep.j,
                ek: self.rep.k,
                fj: other.rep.j,
                fk: other.rep.k,
            });
        }
        Ok(SpinorTensor {
            rep: self.rep,
            c: self.c.iter().zip(&other.c).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, other: &SpinorTensor) -> Result<SpinorTensor> {
        Ok(self.add(&other.scale((-1.0).into()))?)
    }

    /// Relative difference in the weighted norm.
    pub fn rel_diff(&self, other: &SpinorTensor) -> f64 {
        let scale = self.norm().max(other.norm()).max(1e-300);
        self.sub(other).map(|d| d.norm() / scale).unwrap_or(f64::INFINITY)
    }
}

/// One-variable substitution matrix: the action of `A` on the distinct
/// components of a degree-n symmetric spinor. `out = T · c` where
/// `T[a'][a] = C(n,a)/C(n,a') · Σ_{r+s=a'} C(n-a,r)C(a,s)
///             A₁₁^{n-a-r} A₂₁^r A₁₂^{a-s} A₂₂^s`.
fn substitution_matrix(a_mat: &Matrix2C, n: u32) -> Vec<Vec<C64>> {
    let a11 = a_mat.0[0][0];
    let a12 = a_mat.0[0][1];
    let a21 = a_mat.0[1][0];
    let a22 = a_mat.0[1][1];
    // Power tables up to n.
    let pow = |z: C64| -> Vec<C64> {
        let mut v = vec![C64::new(1.0, 0.0); (n + 1) as usize];
        for i in 1..=n as usize {
            v[i] = v[i - 1] * z;
        }
        v
    };
    let (p11, p12, p21, p22) = (pow(a11), pow(a12), pow(a21), pow(a22));
    let mut t = vec![vec![C64::new(0.0, 0.0); (n + 1) as usize]; (n + 1) as usize];
    for a in 0..=n {
        for r in 0..=(n - a) {
            for s in 0..=a {
                let ap = r + s;
                let coeff = binomial(n - a, r) * binomial(a, s) * binomial(n, a)
                    / binomial(n, ap);
                t[ap as usize][a as usize] += p11[(n - a - r) as usize]
                    * p21[r as usize]
                    * p12[(a - s) as usize]
                    * p22[s as usize]
                    * coeff;
            }
        }
    }
    t
}

/// Action of `au^{⊗ j} ⊗ ad^{⊗ k}` with *no implicit conjugation* of `ad`.
/// The standard representation is recovered with `ad = conj(au)`; the PCT
/// continuation passes an independently continued dotted factor.
pub fn apply_factors(xi: &SpinorTensor, au: &Matrix2C, ad: &Matrix2C) -> SpinorTensor {
    let rep = xi.rep();
    let (j, k) = (rep.j, rep.k);
    let tu = substitution_matrix(au, j);
    let td = substitution_matrix(ad, k);
    let mut mid = SpinorTensor::zero(rep);
    // Undotted axis.
    for b in 0..=k {
        for ap in 0..=j {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..=j {
                acc += tu[ap as usize][a as usize] * xi.component(a, b);
            }
            mid.set_component(ap, b, acc);
        }
    }
    // Dotted axis.
    let mut out = SpinorTensor::zero(rep);
    for a in 0..=j {
        for bp in 0..=k {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..=k {
                acc += td[bp as usize][b as usize] * mid.component(a, b);
            }
            out.set_component(a, bp, acc);
        }
    }
    out
}

/// D^(j/2,k/2)(A) ξ. Errors if the tensor does not carry `label`.
pub fn apply_rep(label: RepLabel, a: &SL2CElement, xi: &SpinorTensor) -> Result<SpinorTensor> {
    if xi.rep() != label {
        return Err(Error::RepMismatch {
            ej: label.j,
            ek: label.k,
            fj: xi.rep().j,
            fk: xi.rep().k,
        });
    }
    Ok(apply_factors(xi, a.matrix(), &a.matrix().conj()))
}

/// The matrix of D^(j/2,k/2)(au ⊗ ad) in the occupation basis (plain, not
/// weight-scaled), column `i` being the image of the `i`-th basis tensor.
pub fn rep_matrix(label: RepLabel, au: &Matrix2C, ad: &Matrix2C) -> Vec<Vec<C64>> {
    let dim = label.dim();
    let mut cols = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut basis = SpinorTensor::zero(label);
        basis.c[i] = C64::new(1.0, 0.0);
        cols.push(apply_factors(&basis, au, ad).c);
    }
    let mut m = vec![vec![C64::new(0.0, 0.0); dim]; dim];
    for (ci, col) in cols.iter().enumerate() {
        for (ri, v) in col.iter().enumerate() {
            m[ri][ci] = *v;
        }
    }
    m
}

/// Symmetric tensor product: polynomial product of the two tensors.
/// Bidegrees add, the result is symmetric in each family, the operation is
/// commutative and equivariant.
pub fn sym_tensor_product(xi: &SpinorTensor, eta: &SpinorTensor) -> SpinorTensor {
    let (j1, k1) = (xi.rep().j, xi.rep().k);
    let (j2, k2) = (eta.rep().j, eta.rep().k);
    let rep = RepLabel::new(j1 + j2, k1 + k2);
    let mut out = SpinorTensor::zero(rep);
    for a1 in 0..=j1 {
        for b1 in 0..=k1 {
            let x = xi.component(a1, b1);
            if x.norm_sqr() == 0.0 {
                continue;
            }
            let wx = binomial(j1, a1) * binomial(k1, b1);
            for a2 in 0..=j2 {
                for b2 in 0..=k2 {
                    let y = eta.component(a2, b2);
                    if y.norm_sqr() == 0.0 {
                        continue;
                    }
                    let w = wx * binomial(j2, a2) * binomial(k2, b2)
                        / (binomial(rep.j, a1 + a2) * binomial(rep.k, b1 + b2));
                    let prev = out.component(a1 + a2, b1 + b2);
                    out.set_component(a1 + a2, b1 + b2, prev + x * y * w);
                }
            }
        }
    }
    out
}

/// Entrywise complex conjugation with the two index families swapped;
/// carries D^(j/2,k/2) to the conjugate representation D^(k/2,j/2).
pub fn conjugate_tensor(xi: &SpinorTensor) -> SpinorTensor {
    let rep = xi.rep().conjugate();
    let mut out = SpinorTensor::zero(rep);
    for a in 0..=rep.j {
        for b in 0..=rep.k {
            out.set_component(a, b, xi.component(b, a).conj());
        }
    }
    out
}

/// Contracts one dotted index with `(Mε)`; the freed index joins the
/// undotted family and the result is re-symmetrized (averaged over the
/// positions of the new index). Bidegree (j,k) → (j+1,k−1).
///
/// Equivariance: `contract_dotted(D(A)ξ, A M A†) = D'(A) contract_dotted(ξ, M)`.
pub fn contract_dotted(xi: &SpinorTensor, m: &Matrix2C) -> Result<SpinorTensor> {
    let (j, k) = (xi.rep().j, xi.rep().k);
    if k == 0 {
        return Err(Error::NoDottedIndex);
    }
    let n = *m * Matrix2C::epsilon();
    let rep = RepLabel::new(j + 1, k - 1);
    let mut acc = vec![C64::new(0.0, 0.0); rep.dim()];
    let kf = k as f64;
    let idx = |a: u32, b: u32| (a * k + b) as usize; // (k-1)+1 = k columns
    for a in 0..=j {
        for b in 0..=k {
            let c = xi.component(a, b);
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let base = binomial(j, a) * binomial(k, b) * c;
            // σ̇ = 1 (derivative in v₁, weight (k-b)/k), freed index α:
            if b <= k - 1 {
                let t = base * ((k - b) as f64 / kf);
                acc[idx(a, b)] += n.0[0][0] * t;
                acc[idx(a + 1, b)] += n.0[1][0] * t;
            }
            // σ̇ = 2 (derivative in v₂, weight b/k):
            if b >= 1 {
                let t = base * (b as f64 / kf);
                acc[idx(a, b - 1)] += n.0[0][1] * t;
                acc[idx(a + 1, b - 1)] += n.0[1][1] * t;
            }
        }
    }
    let mut out = SpinorTensor::zero(rep);
    for a in 0..=rep.j {
        for b in 0..=rep.k {
            let wgt = binomial(rep.j, a) * binomial(rep.k, b);
            out.set_component(a, b, acc[idx(a, b)] / wgt);
        }
    }
    Ok(out)
}

/// Mirror image of [`contract_dotted`]: contracts one undotted index with
/// `(Mε)`, the freed index joining the dotted family; (j,k) → (j−1,k+1).
///
/// Equivariance: `contract_undotted(D(A)ξ, Ā M Aᵀ) = D'(A) contract_undotted(ξ, M)`
/// (the matrix slot transforms like a conjugated vector matrix ẽ̄).
pub fn contract_undotted(xi: &SpinorTensor, m: &Matrix2C) -> Result<SpinorTensor> {
    let (j, k) = (xi.rep().j, xi.rep().k);
    if j == 0 {
        return Err(Error::NoUndottedIndex);
    }
    let n = *m * Matrix2C::epsilon();
    let rep = RepLabel::new(j - 1, k + 1);
    let mut acc = vec![C64::new(0.0, 0.0); rep.dim()];
    let jf = j as f64;
    let idx = |a: u32, b: u32| (a * (k + 2) + b) as usize;
    for a in 0..=j {
        for b in 0..=k {
            let c = xi.component(a, b);
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let base = binomial(j, a) * binomial(k, b) * c;
            // ρ = 1 (derivative in w₁, weight (j-a)/j), freed dotted index β̇:
            if a <= j - 1 {
                let t = base * ((j - a) as f64 / jf);
                acc[idx(a, b)] += n.0[0][0] * t;
                acc[idx(a, b + 1)] += n.0[1][0] * t;
            }
            // ρ = 2 (derivative in w₂, weight a/j):
            if a >= 1 {
                let t = base * (a as f64 / jf);
                acc[idx(a - 1, b)] += n.0[0][1] * t;
                acc[idx(a - 1, b + 1)] += n.0[1][1] * t;
            }
        }
    }
    let mut out = SpinorTensor::zero(rep);
    for a in 0..=rep.j {
        for b in 0..=rep.k {
            let wgt = binomial(rep.j, a) * binomial(rep.k, b);
            out.set_component(a, b, acc[idx(a, b)] / wgt);
        }
    }
    Ok(out)
}

/// The linear bijection between bidegree-(1,1) tensors and four-vectors
/// under which D^(1/2,1/2) corresponds to Λ; normalized so the tensor
/// components are exactly the entries of `to_matrix`.
pub fn spinor_to_vector(xi: &SpinorTensor) -> Result<FourVector> {
    if xi.rep() != RepLabel::new(1, 1) {
        return Err(Error::WrongBidegree {
            ej: 1,
            ek: 1,
            fj: xi.rep().j,
            fk: xi.rep().k,
        });
    }
    let m = Matrix2C::new(
        xi.component(0, 0),
        xi.component(0, 1),
        xi.component(1, 0),
        xi.component(1, 1),
    );
    Ok(from_matrix(&m))
}

/// Inverse of [`spinor_to_vector`].
pub fn vector_to_spinor(x: &FourVector) -> SpinorTensor {
    let m = crate::minkowski::to_matrix(x);
    SpinorTensor {
        rep: RepLabel::new(1, 1),
        c: vec![m.0[0][0], m.0[0][1], m.0[1][0], m.0[1][1]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::to_matrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_and_minus_identity() {
        let rep = RepLabel::new(2, 3);
        let xi = SpinorTensor::from_components(
            rep,
            (0..rep.dim()).map(|i| c(i as f64, -(i as f64) * 0.5)).collect(),
        )
        .unwrap();
        let id = SL2CElement::identity();
        assert!(apply_rep(rep, &id, &xi).unwrap().rel_diff(&xi) < 1e-15);
        let minus = SL2CElement::minus_identity();
        let flipped = apply_rep(rep, &minus, &xi).unwrap();
        // D(−1) = (−1)^{j+k}, here (−1)^5 = −1, exactly.
        assert_eq!(flipped.rel_diff(&xi.scale((-1.0).into())), 0.0);
    }

    #[test]
    fn rep_mismatch_is_rejected() {
        let xi = SpinorTensor::scalar_one();
        assert!(apply_rep(RepLabel::new(1, 0), &SL2CElement::identity(), &xi).is_err());
    }

    #[test]
    fn sym_product_unit_and_weights() {
        let u_minus = SpinorTensor::undotted([c(1.0, 0.0), c(0.0, 0.0)]);
        let u_plus = SpinorTensor::undotted([c(0.0, 0.0), c(1.0, 0.0)]);
        // u₋ ⊗ₛ u₋ has a single nonzero component at a = 0.
        let sq = sym_tensor_product(&u_minus, &u_minus);
        assert_eq!(sq.rep(), RepLabel::new(2, 0));
        assert!((sq.component(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(sq.component(1, 0).norm() < 1e-15);
        assert!(sq.component(2, 0).norm() < 1e-15);
        // scalar unit
        let one = SpinorTensor::scalar_one();
        assert!(sym_tensor_product(&u_minus, &one).rel_diff(&u_minus) < 1e-15);
        // u₋ ⊗ₛ u₊: the expanded rank-2 tensor has ξ₁₂ = ξ₂₁ = 1/2.
        let mixed = sym_tensor_product(&u_minus, &u_plus);
        assert!((mixed.component(1, 0) - c(0.5, 0.0)).norm() < 1e-15);
        assert!(mixed.component(0, 0).norm() < 1e-15);
        assert!(mixed.component(2, 0).norm() < 1e-15);
        // commutative
        assert!(sym_tensor_product(&u_plus, &u_minus).rel_diff(&mixed) < 1e-15);
    }

    #[test]
    fn conjugation_involution_and_examples() {
        let u_minus = SpinorTensor::undotted([c(1.0, 0.0), c(0.0, 0.0)]);
        let conj = conjugate_tensor(&u_minus);
        assert_eq!(conj.rep(), RepLabel::new(0, 1));
        assert!((conj.component(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        let xi = SpinorTensor::from_components(
            RepLabel::new(1, 2),
            (0..6).map(|i| c(0.3 * i as f64, 1.0 - i as f64)).collect(),
        )
        .unwrap();
        assert!(conjugate_tensor(&conjugate_tensor(&xi)).rel_diff(&xi) < 1e-15);
    }

    #[test]
    fn contract_dotted_with_epsilon_is_minus_identity() {
        // (εε) = −1, so contracting a (0,1) basis vector with ε gives the
        // negated entries as a (1,0) vector.
        let xi = SpinorTensor::dotted([c(0.7, 0.1), c(-0.2, 0.4)]);
        let out = contract_dotted(&xi, &Matrix2C::epsilon()).unwrap();
        assert_eq!(out.rep(), RepLabel::new(1, 0));
        assert!((out.component(0, 0) + c(0.7, 0.1)).norm() < 1e-15);
        assert!((out.component(1, 0) + c(-0.2, 0.4)).norm() < 1e-15);
    }

    #[test]
    fn contract_errors_on_missing_indices() {
        let xi = SpinorTensor::undotted([c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(contract_dotted(&xi, &Matrix2C::epsilon()).is_err());
        let eta = SpinorTensor::dotted([c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(contract_undotted(&eta, &Matrix2C::epsilon()).is_err());
    }

    #[test]
    fn contract_undotted_example_at_e0() {
        // u₋ at bidegree (1,0), e₀ = (0,0,0,1): ẽ₀·(ε u₋) = (0,1)ᵀ.
        let u_minus = SpinorTensor::undotted([c(1.0, 0.0), c(0.0, 0.0)]);
        let e0 = to_matrix(&FourVector::real(0.0, 0.0, 0.0, 1.0));
        let out = contract_undotted(&u_minus, &e0).unwrap();
        assert_eq!(out.rep(), RepLabel::new(0, 1));
        assert!(out.component(0, 0).norm() < 1e-15);
        assert!((out.component(0, 1) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vector_conversion_round_trip_and_phat() {
        // u₋ ⊗ (dotted u₋) ↦ the standard momentum matrix [[1,0],[0,0]].
        let u = SpinorTensor::undotted([c(1.0, 0.0), c(0.0, 0.0)]);
        let ud = SpinorTensor::dotted([c(1.0, 0.0), c(0.0, 0.0)]);
        let t = sym_tensor_product(&u, &ud);
        let v = spinor_to_vector(&t).unwrap();
        assert!((v - FourVector::real(0.5, 0.0, 0.0, 0.5)).euclid_norm() < 1e-15);
        let x = FourVector([c(0.1, 0.2), c(-0.3, 0.4), c(0.5, -0.6), c(0.7, 0.8)]);
        assert!((spinor_to_vector(&vector_to_spinor(&x)).unwrap() - x).euclid_norm() < 1e-14);
        assert!(spinor_to_vector(&SpinorTensor::scalar_one()).is_err());
    }
}
