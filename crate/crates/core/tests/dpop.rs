use borel_core::dpop::*;
use borel_core::liestruct::{elementary, half, Decomposition};
use borel_core::random::{self, trial_rng};
use borel_core::{RatMatrix, Rational};
use proptest::prelude::*;

/// Pfaffian by expansion along the first row.
fn pfaffian_oracle(m: &RatMatrix, idx: &[usize]) -> Rational {
    if idx.is_empty() {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for k in 1..idx.len() {
        let rest: Vec<usize> = idx.iter().enumerate().filter(|&(p, _)| p != 0 && p != k).map(|(_, &v)| v).collect();
        let term = &m[(idx[0], idx[k])] * &pfaffian_oracle(m, &rest);
        if k % 2 == 1 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

fn random_skew(k: usize, seed: u64) -> RatMatrix {
    let mut rng = trial_rng(seed, k as u64);
    let mut m = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            let v = random::rational(&mut rng);
            m[(j, i)] = -&v;
            m[(i, j)] = v;
        }
    }
    m
}

fn random_lambda(n: usize, seed: u64) -> LambdaPoint {
    let mut rng = trial_rng(seed, n as u64);
    LambdaPoint::new(n, (0..half(n)).map(|_| random::nonzero_rational(&mut rng)).collect()).unwrap()
}

#[test]
fn pfaffian_matches_expansion_and_squares_to_det() {
    for k in [0, 2, 4, 6, 8] {
        for seed in 0..3 {
            let m = random_skew(k, seed);
            let idx: Vec<usize> = (0..k).collect();
            let pf = pfaffian(&m).unwrap();
            assert_eq!(pf, pfaffian_oracle(&m, &idx), "k={k}");
            assert_eq!(&pf * &pf, m.det().unwrap());
        }
    }
    assert!(pfaffian(&random_skew(5, 0)).unwrap().is_zero());
}

#[test]
fn pfaffian_with_forced_pivoting() {
    let mut m = RatMatrix::zeros(4, 4);
    for (i, j, v) in [(0, 2, 3), (1, 3, 5), (0, 3, 1)] {
        m[(i, j)] = Rational::from(v);
        m[(j, i)] = Rational::from(-v);
    }
    assert_eq!(pfaffian(&m).unwrap(), pfaffian_oracle(&m, &[0, 1, 2, 3]));
}

#[test]
fn rho_squared_is_gram_determinant() {
    for n in 3..=6 {
        let d = Decomposition::new(n).unwrap();
        for seed in 0..10 {
            let l = random_lambda(n, seed);
            let rho = pfaffian_rho(&l);
            let det = d.b_lambda_gram(&l.lambda).unwrap().det().unwrap();
            assert_eq!(&rho * &rho, det.abs(), "n={n}");
            let pf = gram_pfaffian(&l).unwrap();
            assert!(pf == rho || pf == -&rho, "n={n}: {pf} vs {rho}");
        }
    }
}

#[test]
fn gram_pfaffian_sign_is_fixed_per_n() {
    for n in 3..=6 {
        let signs: Vec<bool> = (0..6)
            .map(|s| {
                let l = random_lambda(n, 50 + s);
                gram_pfaffian(&l).unwrap() == pfaffian_rho(&l)
            })
            .collect();
        assert!(signs.iter().all(|&s| s == signs[0]), "n={n}");
    }
}

#[test]
fn delta_agrees_with_jacobian_on_n() {
    // δ(a) = 1 / det(Ad_a |_n), with Ad_a e_ij = (a_i/a_j) e_ij.
    for n in 2..=6 {
        let mut rng = trial_rng(3, n as u64);
        let a: Vec<Rational> = (0..n).map(|_| random::positive_rational(&mut rng)).collect();
        let am = RatMatrix::diagonal(&a);
        let ainv = am.inverse().unwrap();
        let basis: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let jac = RatMatrix::from_fn(basis.len(), basis.len(), |row, col| {
            let (i, j) = basis[col];
            let img = &(&am * &elementary::<Rational>(n, i, j)) * &ainv;
            let (p, q) = basis[row];
            img[(p - 1, q - 1)].clone()
        });
        let det = jac.det().unwrap();
        let expected = if basis.is_empty() { Rational::one() } else { det.recip().unwrap() };
        assert_eq!(modular_delta(&am).unwrap(), expected, "n={n}");
    }
}

#[test]
fn beta_form_of_delta_is_reciprocal() {
    // Π (a_r / a_{n−r+1})^{d_r+1} is the reciprocal of Π a_i^{2i−n−1}.
    for n in 2..=7 {
        let mut rng = trial_rng(4, n as u64);
        let a: Vec<Rational> = (0..n).map(|_| random::positive_rational(&mut rng)).collect();
        let beta_form: Rational = (1..=half(n))
            .map(|r| (&a[r - 1] / &a[n - r]).pow((n - 2 * r + 1) as i32).unwrap())
            .product();
        let delta = modular_delta(&RatMatrix::diagonal(&a)).unwrap();
        assert_eq!(&beta_form * &delta, Rational::one(), "n={n}");
    }
}

#[test]
fn delta_is_trivial_on_a_diamond() {
    for n in 2..=7 {
        let mut rng = trial_rng(5, n as u64);
        let mut a = vec![Rational::zero(); n];
        for r in 1..=n - half(n) {
            let v = random::positive_rational(&mut rng);
            a[r - 1] = v.clone();
            a[n - r] = v;
        }
        assert_eq!(modular_delta(&RatMatrix::diagonal(&a)).unwrap(), Rational::one());
    }
}

#[test]
fn det_s_star_properties() {
    for n in 2..=7 {
        let l = random_lambda(n, 6);
        let t = Rational::new(3, 2);
        let scaled = LambdaPoint::new(n, l.lambda.iter().map(|x| x * &t).collect()).unwrap();
        assert_eq!(det_s_star(&scaled), det_s_star(&l) * t.pow(half(n) as i32).unwrap());
        let mut zeroed = l.clone();
        zeroed.lambda[0] = Rational::zero();
        assert!(det_s_star(&zeroed).is_zero());
        assert!(!zeroed.in_t_star());
    }
    let ones = LambdaPoint::new(4, vec![Rational::one(); 2]).unwrap();
    assert_eq!(det_s_star(&ones), Rational::one());
    assert_eq!(pfaffian_rho(&ones), Rational::one());
}

#[test]
fn dp_identities_through_sixteen() {
    for n in 2..=16 {
        let rep = dp_weight_check(n).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let r = half(n) as u64;
        assert_eq!(2 * rep.degree, (n * (n - 1) / 2) as u64 + r);
        let expected = if n % 2 == 1 { r * (r + 1) } else { r * r };
        assert_eq!(rep.degree, expected);
    }
    let v = serde_json::to_value(dp_weight_check(5).unwrap()).unwrap();
    assert_eq!(v["alpha"], serde_json::json!([2, 2]));
    assert_eq!(v["weight_beta"], serde_json::json!([4, 2]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_is_multiplicative(n in 1usize..=7, seed in 0u64..10_000) {
        let mut rng = trial_rng(seed, n as u64);
        let a: Vec<Rational> = (0..n).map(|_| random::positive_rational(&mut rng)).collect();
        let b: Vec<Rational> = (0..n).map(|_| random::positive_rational(&mut rng)).collect();
        let ab: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let d = |v: &[Rational]| modular_delta(&RatMatrix::diagonal(v)).unwrap();
        prop_assert_eq!(d(&ab), d(&a) * d(&b));
    }
}
