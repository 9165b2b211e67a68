//! Structural checks on the intertwiner families: §-style uniqueness via a
//! numerically solved eigenproblem of the stabilizer rotations, span and
//! rank of the general construction, the tensoring operation, and the
//! eigenvalue of ẽ_t on u₊.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stringlocal::half::Half;
use stringlocal::intertwiner::*;
use stringlocal::kinematics::{e_t, LittleGroupElement};
use stringlocal::minkowski::Matrix2C;
use stringlocal::numeric::{jacobi_hermitian, I0Side};
use stringlocal::rep::{rep_matrix, RepLabel};

/// Uniqueness of the stabilizer eigenvectors: the helicity-h eigenspace of
/// D(A_{0,θ}) at an irrational multiple of π, computed by a numerical
/// eigen-solve, must coincide with the span of the occupation basis
/// elements of that helicity.
#[test]
fn stabilizer_eigenspaces_match_basis() {
    let theta = std::f64::consts::PI / std::f64::consts::SQRT_2;
    for (j, k) in [(1u32, 1u32), (2, 1), (2, 2), (3, 2)] {
        let rep = RepLabel::new(j, k);
        let elem = LittleGroupElement::new(C64::new(0.0, 0.0), theta).element();
        // matrix of D(A_{0,θ}⁻¹) in the occupation basis
        let inv = elem.inverse();
        let m = rep_matrix(rep, inv.matrix(), &inv.matrix().conj());
        let dim = rep.dim();
        let span = (j + k) as i32;
        for twice_h in (-span..=span).step_by(2) {
            let h = Half(twice_h);
            let expected = enumerate_basis(j, k, h);
            if expected.is_empty() {
                continue;
            }
            // null space of (M − e^{ihθ}) via the Hermitian square
            let lambda = C64::new(0.0, h.value() * theta).exp();
            let mut shifted = m.clone();
            for (r, row) in shifted.iter_mut().enumerate() {
                row[r] -= lambda;
            }
            let mut gram = vec![vec![C64::new(0.0, 0.0); dim]; dim];
            for r in 0..dim {
                for c in 0..dim {
                    gram[r][c] = (0..dim).map(|s| shifted[s][r].conj() * shifted[s][c]).sum();
                }
            }
            let (vals, vecs) = jacobi_hermitian(&gram);
            let null_dim = vals.iter().filter(|v| v.abs() < 1e-12).count();
            assert_eq!(
                null_dim,
                expected.len(),
                "eigenspace dimension at ({j},{k},{h})"
            );
            // each predicted basis tensor must lie in the numerical null
            // space: its projection onto the orthogonal complement vanishes
            let e = e_t(0.7);
            for b in &expected {
                let t = basis_intertwiner_at_phat(b, &e);
                let x: Vec<C64> = t.components().to_vec();
                let norm: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                let mut residual = 0.0f64;
                for (col, val) in vals.iter().enumerate() {
                    if val.abs() < 1e-12 {
                        continue; // inside the null space
                    }
                    let overlap: C64 = (0..dim).map(|r| vecs[r][col].conj() * x[r]).sum();
                    residual += overlap.norm_sqr();
                }
                assert!(
                    residual.sqrt() / norm < 1e-8,
                    "basis tensor leaks out of the eigenspace at ({j},{k},{h})"
                );
            }
        }
    }
}

/// ẽ_t u₊ = −e^{−t} u₊: the eigenvalue driving the uniqueness argument.
#[test]
fn e_t_eigenvalue_on_u_plus() {
    for t in [-0.4, 0.0, 1.3] {
        let m = e_t(t).matrix();
        let u_plus_vec = m.mul_vec([C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        assert!((u_plus_vec[0]).norm() < 1e-15);
        assert!((u_plus_vec[1] + C64::new((-t).exp(), 0.0)).norm() < 1e-14);
    }
}

/// Span check of the general construction: for (3,1,1) the space is
/// two-dimensional and the construction must reach all of it as the
/// coefficients run over a basis.
#[test]
fn general_construction_spans() {
    for (j, k, h, expected_d) in [
        (3u32, 1u32, Half::from_int(1), 2usize),
        (2, 2, Half::ZERO, 3),
        (2, 0, Half::ZERO, 1),
        (0, 3, Half(1), 1),
        (4, 1, Half(3), 2),
    ] {
        let d = dimension(j, k, h);
        assert_eq!(d, expected_d, "dimension at ({j},{k},{h})");
        let b = ((j + k) as i32 - h.twice().abs()) / 2;
        let count = (b + 1) as usize;
        // evaluate each coefficient-basis output at a fixed generic point
        let p = stringlocal::kinematics::MasslessMomentum::from_spatial(0.3, -0.2, 0.8).unwrap();
        let e = stringlocal::kinematics::make_complex_string(
            0.8,
            &stringlocal::minkowski::SL2CElement::identity(),
        );
        let mut rows: Vec<Vec<C64>> = Vec::new();
        for i in 0..count {
            let coeffs: Vec<CoefficientFunction> = (0..count)
                .map(|n| {
                    if n == i {
                        CoefficientFunction::one()
                    } else {
                        CoefficientFunction::constant(C64::new(0.0, 0.0))
                    }
                })
                .collect();
            match general_intertwiner(j, k, h, &coeffs) {
                Ok(spec) => {
                    let v = spec.evaluate(&p, &e).unwrap();
                    let n = v.norm();
                    if n > 1e-12 {
                        rows.push(v.weighted_components().iter().map(|z| z / n).collect());
                    }
                }
                // an input basis direction may collapse entirely
                Err(stringlocal::Error::Invalid(_)) => continue,
                Err(other) => panic!("unexpected error: {other}"),
            }
        }
        // rank of the stacked rows must equal d
        let m = rows.len();
        assert!(m >= d, "construction produced too few directions");
        let mut gram = vec![vec![C64::new(0.0, 0.0); m]; m];
        for r in 0..m {
            for c in 0..m {
                gram[r][c] = rows[r].iter().zip(&rows[c]).map(|(a, b)| a.conj() * b).sum();
            }
        }
        let (vals, _) = jacobi_hermitian(&gram);
        let rank = vals.iter().filter(|v| **v > 1e-10).count();
        assert_eq!(rank, d, "span rank at ({j},{k},{h})");
    }
}

/// Tensoring with a helicity-0 intertwiner preserves the helicity and
/// raises the bidegree; the result still satisfies the intertwiner
/// relations, and the b = 0 scalar acts as the identity.
#[test]
fn tensor_with_scalar_intertwiner() {
    let base = minimal_intertwiner_spec(Half::from_int(-1), 1).unwrap();
    // b = 0: the (0,0) helicity-0 intertwiner is a constant
    let unit = IntertwinerSpec::single(
        BasisElement::new(0, 0, 0, 0).unwrap(),
        CoefficientFunction::one(),
    );
    let same = base.tensor_with(&unit);
    assert_eq!(same.rep(), base.rep());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (_, p, e) = sample_triple(&mut rng);
    assert!(same
        .evaluate(&p, &e)
        .unwrap()
        .rel_diff(&base.evaluate(&p, &e).unwrap())
        < 1e-14);
    // b = 1: the vector-type helicity-0 intertwiner f·p̃ + g·ẽ
    let f = CoefficientFunction::constant(C64::new(0.4, -0.1));
    let g = CoefficientFunction::power(-1.0, I0Side::Plus);
    let vector0 = general_intertwiner(1, 1, Half::ZERO, &[g, f]).unwrap();
    let lifted = base.tensor_with(&vector0);
    assert_eq!(lifted.rep(), RepLabel::new(2, 2));
    assert_eq!(lifted.helicity(), Half::from_int(-1));
    let report = check_intertwining(&lifted, 120, 99).unwrap();
    assert!(report.max < 1e-10, "lifted covariance {}", report.max);
    // the evaluated product equals the product of the evaluations
    let direct = stringlocal::rep::sym_tensor_product(
        &base.evaluate(&p, &e).unwrap(),
        &vector0.evaluate(&p, &e).unwrap(),
    );
    assert!(lifted.evaluate(&p, &e).unwrap().rel_diff(&direct) < 1e-12);
}

/// The helicity-0 construction at (1,1) reproduces the vector intertwiner
/// f(p·e) p + g(p·e) e after the vector conversion.
#[test]
fn vector_intertwiner_closed_form() {
    let f0 = CoefficientFunction::power(-1.0, I0Side::Plus);
    let f1 = CoefficientFunction::constant(C64::new(0.7, 0.2));
    let spec = general_intertwiner(1, 1, Half::ZERO, &[f0.clone(), f1.clone()]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let (_, p, e) = sample_triple(&mut rng);
        let value = stringlocal::rep::spinor_to_vector(&spec.evaluate(&p, &e).unwrap()).unwrap();
        let pe = p.vector().dot(e.vector());
        // u₋⊗u₋ ↦ p, u₊⊗ū₊ ↦ p + 2(p·e) e, so in the f·p + g·e form:
        // f_vec = f0 + f1, g_vec = 2(p·e) f0.
        let f_vec = f0.eval(pe) + f1.eval(pe);
        let g_vec = f0.eval(pe) * pe * 2.0;
        let expected = p.vector().scale(f_vec) + e.vector().scale(g_vec);
        assert!((value - expected).euclid_norm() < 1e-11 * expected.euclid_norm());
    }
}

/// The two §-style vector basis elements: u₋⊗u₋ is the momentum direction,
/// u₊(ẽ)⊗ū₊(ẽ) equals p̃̂ + (e⁰−e³)ẽ exactly.
#[test]
fn vector_basis_identities_at_phat() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let e = stringlocal::kinematics::random_real_string(&mut rng);
        let point = basis_intertwiner_at_phat(&BasisElement::new(1, 1, 1, 1).unwrap(), &e);
        let phat_m = stringlocal::minkowski::to_matrix(
            stringlocal::kinematics::standard_momentum().vector(),
        );
        let as_matrix = Matrix2C::new(
            point.component(0, 0),
            point.component(0, 1),
            point.component(1, 0),
            point.component(1, 1),
        );
        assert!((as_matrix - phat_m).frobenius_norm() < 1e-14);
        let string = basis_intertwiner_at_phat(&BasisElement::new(1, 1, 0, 0).unwrap(), &e);
        let w = e.vector().0[0] - e.vector().0[3];
        let expected = phat_m + e.matrix().scale(w);
        let as_matrix = Matrix2C::new(
            string.component(0, 0),
            string.component(0, 1),
            string.component(1, 0),
            string.component(1, 1),
        );
        assert!((as_matrix - expected).frobenius_norm() < 1e-12);
    }
}

/// Degree-0 homogeneity of potentials and degree-|h| of field strengths is
/// exact, including for half-integer helicities.
#[test]
fn homogeneity_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (_, p, e) = sample_triple(&mut rng);
    for twice_h in [-4i32, -3, -1, 2, 5] {
        let h = Half(twice_h);
        let spec = if h.is_integer() {
            potential_spec(h).unwrap()
        } else {
            half_integer_potential_spec(h).unwrap()
        };
        let expected_degree = if h.is_integer() { 0.0 } else { 0.5 };
        let lam = 2.9f64;
        let u1 = spec.evaluate(&p.scaled(lam), &e).unwrap();
        let u0 = spec.evaluate(&p, &e).unwrap().scale(lam.powf(expected_degree).into());
        assert!(u1.rel_diff(&u0) < 1e-12, "homogeneity at h={h}");
    }
}
