//! Small numerical utilities shared across the crate: binomials, branch-aware
//! complex powers, Gauss–Legendre rules, a radix-2 FFT for circle functions,
//! pairwise summation and a Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64 as C64;

/// Which side of the real axis a regularized power `(x ± i0)^ν` is the
/// boundary value of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum I0Side {
    /// Boundary value from the upper half plane, `(x + i0)^ν`.
    Plus,
    /// Boundary value from the lower half plane, `(x − i0)^ν`.
    Minus,
}

impl I0Side {
    pub fn flip(self) -> Self {
        match self {
            I0Side::Plus => I0Side::Minus,
            I0Side::Minus => I0Side::Plus,
        }
    }
}

/// `z^ν` on the branch whose cut along the negative real axis is approached
/// from the side given by `side`. Off the cut both sides agree with the
/// principal branch.
pub fn powc_side(z: C64, nu: f64, side: I0Side) -> C64 {
    if nu == 0.0 {
        return C64::new(1.0, 0.0);
    }
    let ln = if z.im == 0.0 && z.re < 0.0 {
        let argument = match side {
            I0Side::Plus => std::f64::consts::PI,
            I0Side::Minus => -std::f64::consts::PI,
        };
        C64::new(z.re.abs().ln(), argument)
    } else {
        z.ln()
    };
    (ln * nu).exp()
}

/// Binomial coefficient as f64 (exact for the small arguments used here).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Pairwise (cascade) summation; deterministic and more accurate than naive
/// left-to-right accumulation for long quadrature sums.
pub fn pairwise_sum(values: &[C64]) -> C64 {
    match values.len() {
        0 => C64::new(0.0, 0.0),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and its derivative by upward recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|t| t * half).collect(),
    )
}

/// In-place radix-2 decimation-in-time FFT. `data.len()` must be a power of
/// two. `inverse` applies the conjugate transform without the 1/N factor.
pub fn fft(data: &mut [C64], inverse: bool) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two");
    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * std::f64::consts::PI / len as f64;
        let wlen = C64::new(ang.cos(), ang.sin());
        let mut i = 0;
        while i < n {
            let mut w = C64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = data[i + k];
                let v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
}

/// Eigen-decomposition of a Hermitian matrix by the cyclic complex Jacobi
/// method. Returns eigenvalues in ascending order and the matching
/// orthonormal eigenvectors as columns.
pub fn jacobi_hermitian(a: &[Vec<C64>]) -> (Vec<f64>, Vec<Vec<C64>>) {
    let n = a.len();
    let mut m: Vec<Vec<C64>> = a.to_vec();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect();
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[p][q].norm_sqr();
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + frobenius(&m)) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p][q];
                if apq.norm() < 1e-300 {
                    continue;
                }
                let app = m[p][p].re;
                let aqq = m[q][q].re;
                // Unitary 2x2 rotation diagonalizing the (p,q) block:
                // phase e^{iφ} = apq/|apq|, then a real Jacobi rotation.
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s;
                for r in 0..n {
                    let mrp = m[r][p];
                    let mrq = m[r][q];
                    m[r][p] = mrp * c - mrq * sp.conj();
                    m[r][q] = mrp * sp + mrq * c;
                }
                for r in 0..n {
                    let mpr = m[p][r];
                    let mqr = m[q][r];
                    m[p][r] = mpr * c - mqr * sp;
                    m[q][r] = mpr * sp.conj() + mqr * c;
                }
                for r in 0..n {
                    let vrp = v[r][p];
                    let vrq = v[r][q];
                    v[r][p] = vrp * c - vrq * sp.conj();
                    v[r][q] = vrp * sp + vrq * c;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| m[i][i].re).collect();
    order.sort_by(|&i, &j| evals[i].partial_cmp(&evals[j]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let sorted_vecs: Vec<Vec<C64>> = (0..n)
        .map(|r| order.iter().map(|&cidx| v[r][cidx]).collect())
        .collect();
    (sorted_vals, sorted_vecs)
}

fn frobenius(m: &[Vec<C64>]) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre_on(8, 0.0, 2.0);
        // ∫_0^2 t^5 dt = 64/6
        let s: f64 = x.iter().zip(&w).map(|(t, w)| t.powi(5) * w).sum();
        assert!((s - 64.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn powc_sides_differ_on_cut() {
        let plus = powc_side(C64::new(-2.0, 0.0), -1.5, I0Side::Plus);
        let minus = powc_side(C64::new(-2.0, 0.0), -1.5, I0Side::Minus);
        assert!((plus - minus.conj()).norm() < 1e-14);
        assert!((plus - minus).norm() > 0.1);
    }

    #[test]
    fn fft_roundtrip() {
        let mut data: Vec<C64> = (0..16)
            .map(|i| C64::new((i as f64).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let orig = data.clone();
        fft(&mut data, false);
        fft(&mut data, true);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a / 16.0 - b).norm() < 1e-12);
        }
    }

    #[test]
    fn jacobi_diagonalizes() {
        let i = C64::new(0.0, 1.0);
        let a = vec![
            vec![C64::new(2.0, 0.0), i * 0.5, C64::new(0.3, 0.1)],
            vec![-i * 0.5, C64::new(1.0, 0.0), C64::new(0.2, 0.0)],
            vec![C64::new(0.3, -0.1), C64::new(0.2, 0.0), C64::new(-1.0, 0.0)],
        ];
        let (vals, vecs) = jacobi_hermitian(&a);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        // A v = λ v for each pair.
        for (c, &lam) in vals.iter().enumerate().map(|(c, l)| (c, l)) {
            for r in 0..3 {
                let av: C64 = (0..3).map(|s| a[r][s] * vecs[s][c]).sum();
                assert!((av - vecs[r][c] * lam).norm() < 1e-10);
            }
        }
    }
}
