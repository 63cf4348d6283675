use opineq::kernels::{abs_op, frac_power, hermitian_eig, polar, svd, ComplexMatrix};
use opineq::order::{check_scale, loewner_leq};
use opineq::sampler::{ginibre, random_partial_isometry, random_psd, rank_deficient, SeededStream};
use opineq::{Matrix, Policy};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const EPS: f64 = f64::EPSILON;

/// Ginibre draw, rank-deficient for odd seeds.
fn draw(seed: u64, n: usize) -> Matrix {
    let mut s = SeededStream::new(seed, n as u64);
    if seed % 2 == 1 && n > 1 {
        let k = s.index(n);
        rank_deficient(n, k, &mut s).unwrap()
    } else {
        ginibre(n, &mut s).unwrap()
    }
}

fn near(x: &Matrix, y: &Matrix, bound: f64) -> Result<(), TestCaseError> {
    let d = (x - y).fro_norm();
    prop_assert!(d <= bound, "residual {d:e} > {bound:e}");
    Ok(())
}

/// Fixed seed so every run checks the same cases.
fn fixed(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(fixed(1000))]

    #[test]
    fn polar_reconstructs_and_supports(seed in any::<u64>(), n in 1usize..=8) {
        let a = draw(seed, n);
        let scale = check_scale(&[&a]);
        let bound = 64.0 * n as f64 * EPS * scale;
        let f = polar(&a).unwrap();

        near(&f.reconstruct(), &a, bound)?;
        let support = f.support_projection();
        near(&(&support * &support), &support, bound)?;
        near(&(&f.positive * &support), &f.positive, bound)?;
        near(&abs_op(&a).unwrap(), &f.positive, bound)?;
        near(&f.positive.gram(), &a.gram(), bound)?;
        prop_assert!(f.positive.asymmetry() <= bound);
    }

    #[test]
    fn abs_op_strips_partial_isometry(seed in any::<u64>(), n in 1usize..=8, k in 0usize..=8) {
        let k = k.min(n);
        let mut s = SeededStream::new(seed, 1);
        let u: Matrix = random_partial_isometry(n, k, &mut s).unwrap();
        let p = u.gram();
        let y: Matrix = random_psd(n, &mut s).unwrap();
        let x = y.congruence(&p).hermitian_part();
        let scale = check_scale(&[&x]);
        near(&abs_op(&(&u * &x)).unwrap(), &x, 1e-12 * scale)?;
    }

    #[test]
    fn power_composition(seed in any::<u64>(), n in 1usize..=8, alpha in 0.2f64..2.0, beta in 0.2f64..2.0) {
        let mut s = SeededStream::new(seed, 2);
        let g: Matrix = ginibre(n, &mut s).unwrap();
        let p = g.gram().scale(1.0 / g.fro_norm().powi(2));
        let nested = frac_power(&frac_power(&p, alpha).unwrap(), beta).unwrap();
        let direct = frac_power(&p, alpha * beta).unwrap();
        let scale = check_scale(&[&direct]);
        near(&nested, &direct, 1e-10 * scale)?;
    }

    #[test]
    fn square_root_is_operator_monotone(seed in any::<u64>(), n in 1usize..=8) {
        let mut s = SeededStream::new(seed, 3);
        let x: Matrix = random_psd(n, &mut s).unwrap();
        let d: Matrix = random_psd(n, &mut s).unwrap();
        let y = &x + &d;
        let pol = Policy::default();
        let scale = check_scale(&[&x, &y]);
        let v = loewner_leq(
            &frac_power(&x, 0.5).unwrap(),
            &frac_power(&y, 0.5).unwrap(),
            &pol,
            scale,
        )
        .unwrap();
        prop_assert!(v.holds, "gap {:e}", v.gap_min_eig);
    }

    #[test]
    fn eigen_and_singular_values_agree(seed in any::<u64>(), n in 1usize..=8) {
        let a = draw(seed, n);
        let s = svd(&a).unwrap();
        let e = hermitian_eig(&a.gram()).unwrap();
        let mut from_eig: Vec<f64> = e.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
        from_eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let top = s.sigma_max().max(1.0);
        for (x, y) in s.sigma.iter().zip(&from_eig) {
            // sqrt loses half the digits near zero.
            prop_assert!((x - y).abs() <= 1e-7 * top, "{x} vs {y}");
        }
    }
}

fn to_nalgebra(m: &Matrix) -> nalgebra::DMatrix<nalgebra::Complex<f64>> {
    nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

#[test]
fn spectra_match_nalgebra() {
    for seed in 0..200u64 {
        let n = 1 + (seed % 8) as usize;
        let a = draw(seed, n);
        let h = a.gram().hermitian_part();

        let mut ours = hermitian_eig(&h).unwrap().eigenvalues;
        let mut theirs: Vec<f64> = to_nalgebra(&h)
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ours.sort_by(|x, y| x.partial_cmp(y).unwrap());
        theirs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let tol = 1e-12 * h.fro_norm().max(1.0);
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() <= tol, "seed {seed}: eig {x} vs {y}");
        }

        let ours = svd(&a).unwrap().sigma;
        let mut theirs: Vec<f64> = to_nalgebra(&a).singular_values().iter().copied().collect();
        theirs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let tol = 1e-12 * a.fro_norm().max(1.0);
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() <= tol, "seed {seed}: sigma {x} vs {y}");
        }
    }
}

#[test]
fn single_precision_kernels() {
    let mut s = SeededStream::new(11, 0);
    for n in 1..=6 {
        let a: ComplexMatrix<f32> = ginibre(n, &mut s).unwrap();
        let f = polar(&a).unwrap();
        let scale = a.fro_norm().max(1.0).powi(2);
        assert!((&f.reconstruct() - &a).fro_norm() <= 1e-4 * scale);
        let p = a.gram();
        let root = frac_power(&p, 0.5f32).unwrap();
        assert!((&(&root * &root) - &p).fro_norm() <= 1e-4 * p.fro_norm().max(1.0));
    }
}
