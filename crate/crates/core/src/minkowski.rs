//! Minkowski four-vectors, the vector ↔ 2×2-matrix correspondence, SL(2,ℂ)
//! elements and the covering map onto Lorentz transformations.
//!
//! Conventions: metric signature (1,−1,−1,−1), and
//! `x ↔ x̃ = [[x⁰+x³, x¹−ix²], [x¹+ix², x⁰−x³]]`, so that `det x̃ = x·x`
//! and `Λ(A)x ↔ A x̃ A†`.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Default tolerance for the unit-determinant constraint on SL(2,ℂ).
pub const DET_TOL: f64 = 1e-12;

/// A complex four-vector. Physical momenta and real string directions have
/// vanishing imaginary parts; complexified string directions do not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector(pub [C64; 4]);

impl FourVector {
    pub fn real(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t.into(), x.into(), y.into(), z.into()])
    }

    pub fn zero() -> Self {
        FourVector([C64::new(0.0, 0.0); 4])
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.0.iter().all(|c| c.im.abs() <= tol)
    }

    /// Componentwise real part.
    pub fn re(&self) -> FourVector {
        FourVector(self.0.map(|c| C64::new(c.re, 0.0)))
    }

    /// Componentwise imaginary part (as a real vector).
    pub fn im(&self) -> FourVector {
        FourVector(self.0.map(|c| C64::new(c.im, 0.0)))
    }

    /// Componentwise complex conjugate.
    pub fn conj(&self) -> FourVector {
        FourVector(self.0.map(|c| c.conj()))
    }

    /// Complex-bilinear Minkowski product with signature (1,−1,−1,−1).
    pub fn dot(&self, other: &FourVector) -> C64 {
        self.0[0] * other.0[0] - self.0[1] * other.0[1] - self.0[2] * other.0[2]
            - self.0[3] * other.0[3]
    }

    pub fn minkowski_square(&self) -> C64 {
        self.dot(self)
    }

    /// Euclidean norm of the components, used for residual scales.
    pub fn euclid_norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// True if the (real) vector lies in the open forward light cone.
    pub fn in_open_forward_cone(&self) -> bool {
        let v = self.re();
        v.0[0].re > 0.0 && v.dot(&v).re > 0.0
    }

    pub fn scale(&self, s: C64) -> FourVector {
        FourVector(self.0.map(|c| c * s))
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(self.0.map(|c| -c))
    }
}

/// Free-function form of the Minkowski product.
pub fn minkowski_dot(x: &FourVector, y: &FourVector) -> C64 {
    x.dot(y)
}

/// A complex 2×2 matrix, used both for x̃ and for group elements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2C(pub [[C64; 2]; 2]);

impl Matrix2C {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Matrix2C([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Matrix2C::new(1.0.into(), 0.0.into(), 0.0.into(), 1.0.into())
    }

    pub fn zero() -> Self {
        Matrix2C([[C64::new(0.0, 0.0); 2]; 2])
    }

    /// The antisymmetric spinor metric ε = [[0,1],[−1,0]].
    pub fn epsilon() -> Self {
        Matrix2C::new(0.0.into(), 1.0.into(), (-1.0).into(), 0.0.into())
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Matrix2C {
        Matrix2C::new(self.0[0][0], self.0[1][0], self.0[0][1], self.0[1][1])
    }

    pub fn conj(&self) -> Matrix2C {
        Matrix2C([
            [self.0[0][0].conj(), self.0[0][1].conj()],
            [self.0[1][0].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn dagger(&self) -> Matrix2C {
        self.conj().transpose()
    }

    pub fn inverse(&self) -> Matrix2C {
        let d = self.det();
        Matrix2C::new(
            self.0[1][1] / d,
            -self.0[0][1] / d,
            -self.0[1][0] / d,
            self.0[0][0] / d,
        )
    }

    pub fn mul_vec(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn scale(&self, s: C64) -> Matrix2C {
        Matrix2C([
            [self.0[0][0] * s, self.0[0][1] * s],
            [self.0[1][0] * s, self.0[1][1] * s],
        ])
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.0[0][0].im).abs() <= tol
            && (self.0[1][1].im).abs() <= tol
            && (self.0[0][1] - self.0[1][0].conj()).norm() <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Mul for Matrix2C {
    type Output = Matrix2C;
    fn mul(self, rhs: Matrix2C) -> Matrix2C {
        let mut out = Matrix2C::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

impl Add for Matrix2C {
    type Output = Matrix2C;
    fn add(self, rhs: Matrix2C) -> Matrix2C {
        let mut out = Matrix2C::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Matrix2C {
    type Output = Matrix2C;
    fn sub(self, rhs: Matrix2C) -> Matrix2C {
        let mut out = Matrix2C::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

/// `x ↦ x̃`. `det(to_matrix(x)) = x·x` for every complex x.
pub fn to_matrix(x: &FourVector) -> Matrix2C {
    let i = C64::new(0.0, 1.0);
    Matrix2C::new(
        x.0[0] + x.0[3],
        x.0[1] - i * x.0[2],
        x.0[1] + i * x.0[2],
        x.0[0] - x.0[3],
    )
}

/// Inverse of [`to_matrix`].
pub fn from_matrix(m: &Matrix2C) -> FourVector {
    let i = C64::new(0.0, 1.0);
    let half = C64::new(0.5, 0.0);
    FourVector([
        (m.0[0][0] + m.0[1][1]) * half,
        (m.0[0][1] + m.0[1][0]) * half,
        i * (m.0[0][1] - m.0[1][0]) * half,
        (m.0[0][0] - m.0[1][1]) * half,
    ])
}

/// An element of SL(2,ℂ); entries may be complex-continued group parameters
/// (e.g. the wedge boost at t = iπ), but the determinant is always 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SL2CElement(Matrix2C);

impl SL2CElement {
    pub fn new(m: Matrix2C) -> Result<Self> {
        Self::new_with_tol(m, DET_TOL)
    }

    pub fn new_with_tol(m: Matrix2C, tol: f64) -> Result<Self> {
        let det = m.det();
        if (det - C64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::NotUnitDeterminant {
                det: format!("{det}"),
            });
        }
        Ok(SL2CElement(m))
    }

    pub fn identity() -> Self {
        SL2CElement(Matrix2C::identity())
    }

    pub fn minus_identity() -> Self {
        SL2CElement(Matrix2C::identity().scale((-1.0).into()))
    }

    pub fn matrix(&self) -> &Matrix2C {
        &self.0
    }

    /// The inverse, computed in closed form: for det = 1,
    /// A⁻¹ = [[d,−b],[−c,a]].
    pub fn inverse(&self) -> SL2CElement {
        let m = self.0;
        SL2CElement(Matrix2C::new(
            m.0[1][1],
            -m.0[0][1],
            -m.0[1][0],
            m.0[0][0],
        ))
    }

    pub fn compose(&self, rhs: &SL2CElement) -> SL2CElement {
        SL2CElement(self.0 * rhs.0)
    }
}

/// Wedge boost A_Λ(t) = diag(e^{t/2}, e^{−t/2}); complex t realizes the
/// analytic continuation used in the PCT sign computation.
pub fn wedge_boost(t: C64) -> SL2CElement {
    let half = t * 0.5;
    SL2CElement(Matrix2C::new(
        half.exp(),
        0.0.into(),
        0.0.into(),
        (-half).exp(),
    ))
}

/// Wedge rotation A_R(θ) = diag(e^{iθ/2}, e^{−iθ/2}).
pub fn wedge_rotation(theta: C64) -> SL2CElement {
    wedge_boost(C64::new(0.0, 1.0) * theta)
}

/// A 4×4 Lorentz matrix (complex entries to accommodate continued group
/// parameters; real group elements give real matrices up to rounding).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(pub [[C64; 4]; 4]);

impl LorentzMatrix {
    pub fn identity() -> Self {
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = C64::new(1.0, 0.0);
        }
        LorentzMatrix(m)
    }

    pub fn apply(&self, x: &FourVector) -> FourVector {
        let mut out = [C64::new(0.0, 0.0); 4];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row[0] * x.0[0] + row[1] * x.0[1] + row[2] * x.0[2] + row[3] * x.0[3];
        }
        FourVector(out)
    }

    pub fn compose(&self, rhs: &LorentzMatrix) -> LorentzMatrix {
        let mut out = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        LorentzMatrix(out)
    }

    /// Maximal entry of ΛᵀηΛ − η; zero for genuine Lorentz matrices.
    pub fn metric_defect(&self) -> f64 {
        let eta = [1.0, -1.0, -1.0, -1.0];
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                let mut s = C64::new(0.0, 0.0);
                for m in 0..4 {
                    s += self.0[m][a] * eta[m] * self.0[m][b];
                }
                let target = if a == b { C64::new(eta[a], 0.0) } else { C64::new(0.0, 0.0) };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    pub fn max_entry_diff(&self, rhs: &LorentzMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        worst
    }
}

/// The covering map Λ(A), defined by Λ(A)x = from_matrix(A x̃ A†) on the
/// standard basis.
pub fn lorentz_of(a: &SL2CElement) -> LorentzMatrix {
    let mut out = [[C64::new(0.0, 0.0); 4]; 4];
    for mu in 0..4 {
        let mut basis = FourVector::zero();
        basis.0[mu] = C64::new(1.0, 0.0);
        let image = from_matrix(&(*a.matrix() * to_matrix(&basis) * a.matrix().dagger()));
        for (row, value) in image.0.iter().enumerate() {
            out[row][mu] = *value;
        }
    }
    LorentzMatrix(out)
}

/// Applies Λ(A) to a four-vector without forming the matrix.
pub fn lorentz_apply(a: &SL2CElement, x: &FourVector) -> FourVector {
    from_matrix(&(*a.matrix() * to_matrix(x) * a.matrix().dagger()))
}

/// Draws a Haar-ish random SL(2,ℂ) element: four complex Gaussian entries
/// rescaled by a square root of the determinant; near-singular draws are
/// rejected.
pub fn random_sl2c<R: Rng>(rng: &mut R) -> SL2CElement {
    loop {
        let mut g = || {
            // Box–Muller
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let r = (-2.0 * u1.ln()).sqrt();
            C64::new(
                r * (2.0 * std::f64::consts::PI * u2).cos(),
                r * (2.0 * std::f64::consts::PI * u2).sin(),
            ) / std::f64::consts::SQRT_2
        };
        let m = Matrix2C::new(g(), g(), g(), g());
        let det = m.det();
        if det.norm() < 1e-6 {
            continue;
        }
        let root = det.sqrt();
        return SL2CElement::new(m.scale(1.0 / root)).expect("rescaled determinant is 1");
    }
}
