use mockjac::arith::kronecker;
use mockjac::borcherds::{enumerate_heegner, genus_char, QuadForm};
use mockjac::{exp, CycNum, Exp, QSeries};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn coeff() -> impl Strategy<Value = CycNum> {
    prop_oneof![
        (-5i64..=5).prop_map(CycNum::from_int),
        (-3i64..=3, 1i64..=4).prop_map(|(n, d)| CycNum::from_ratio(n, d)),
        (0i64..12, prop::sample::select(vec![3i64, 4, 12])).prop_map(|(k, n)| CycNum::root_of_unity(k, n)),
    ]
}

/// Sparse series over `q^{1/denom}` with an optional window.
fn series() -> impl Strategy<Value = QSeries> {
    (
        prop::sample::select(vec![1i64, 2, 4]),
        prop::collection::vec((-4i64..24, coeff()), 0..6),
        prop::option::of(4i64..30),
    )
        .prop_map(|(d, terms, order)| QSeries::from_terms(d, terms, order))
}

fn nonzero_leading() -> impl Strategy<Value = QSeries> {
    (series(), coeff(), -3i64..3)
        .prop_filter_map("nonzero constant", |(s, c, v)| {
            if c.is_zero() {
                return None;
            }
            let s = s.shift(exp(1, 1)).add(&QSeries::one()).truncate(exp(12, 1));
            let lead = QSeries::monomial(c, exp(v, 1));
            Some(s.mul(&lead))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&QSeries::one()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        // distributivity holds on the common window
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        prop_assert_eq!(lhs.first_mismatch(&rhs), None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_and_powers(a in nonzero_leading(), k in 0i64..4) {
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        prop_assert_eq!(prod.first_mismatch(&QSeries::one()), None);
        let mut acc = QSeries::one();
        for _ in 0..k {
            acc = acc.mul(&a);
        }
        prop_assert_eq!(a.pow(k).unwrap().first_mismatch(&acc), None);
        prop_assert_eq!(a.pow(-k).unwrap().first_mismatch(&inv.pow(k).unwrap()), None);
    }

    #[test]
    fn slices_and_shifts(a in series(), off in 0i64..6, m in 1i64..6, sn in -7i64..7, sd in 1i64..9) {
        let (off, m) = (exp(off, 2), exp(m, 2));
        let once = a.slice(off, m);
        prop_assert_eq!(once.shift(off).slice(off, m), once.clone());
        let s = Exp::new(sn, sd);
        prop_assert_eq!(a.half_shift(s).half_shift(-s), a.clone());
        prop_assert_eq!(a.rescale(exp(3, 2)).rescale(exp(2, 3)), a.clone());
        // slices over a full residue system sum back to the series
        let mut acc = QSeries::zero();
        for j in 0..4 {
            acc = acc.add(&a.slice(exp(j, 4), exp(1, 1)).shift(exp(j, 4)));
        }
        prop_assert_eq!(acc.first_mismatch(&a), None);
    }

    #[test]
    fn cyclotomic_vs_float(a in coeff(), b in coeff(), c in coeff()) {
        let close = |x: (f64, f64), y: (f64, f64)| (x.0 - y.0).abs() < 1e-9 && (x.1 - y.1).abs() < 1e-9;
        let (ax, bx) = (a.to_complex(), b.to_complex());
        let p = &(&a * &b) + &c;
        let cx = c.to_complex();
        prop_assert!(close(p.to_complex(), (ax.0 * bx.0 - ax.1 * bx.1 + cx.0, ax.0 * bx.1 + ax.1 * bx.0 + cx.1)));
        prop_assert!(close(a.conj().to_complex(), (ax.0, -ax.1)));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn kronecker_multiplicative_and_periodic(d in -100i64..100, b1 in -60i64..60, b2 in -60i64..60) {
        prop_assume!(d != 0 && matches!(d.rem_euclid(4), 0 | 1));
        let k = |b| kronecker(d, b).unwrap();
        prop_assert_eq!(k(b1 * b2), k(b1) * k(b2));
        if b1 > 0 {
            prop_assert_eq!(k(b1), k(b1 + d.abs()));
        }
    }

    #[test]
    fn genus_character_is_gamma0_invariant(
        t in -3i64..3, u in -3i64..3, v in -2i64..2,
    ) {
        // level-6 forms of discriminant -20·33 with B ≡ ±6 mod 12
        let f = QuadForm::new(6, 6, 29);
        let base = genus_char(&f, -20, 6).unwrap();
        // γ = [[1, t], [0, 1]]·[[1, 0], [6u, 1]]·[[1, v], [0, 1]] lies in Γ₀(6)
        let mul = |x: [i64; 4], y: [i64; 4]| [
            x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3],
        ];
        let g = mul(mul([1, t, 0, 1], [1, 0, 6 * u, 1]), [1, v, 0, 1]);
        prop_assert_eq!(genus_char(&f.act(g), -20, 6).unwrap(), base);
    }
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0)
}

#[test]
fn kronecker_matches_square_rule() {
    for d in -100i64..=100 {
        if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            continue;
        }
        for p in (2..=100).filter(|&p| is_prime(p)) {
            let expect = if d % p == 0 {
                0
            } else if (0..4 * p).any(|x| (x * x - d).rem_euclid(4 * p) == 0) {
                1
            } else {
                -1
            };
            assert_eq!(kronecker(d, p).unwrap(), expect, "({d}/{p})");
        }
    }
}

/// Brute-force count of reduced primitive forms of discriminant `d`.
fn level_one_classes(d: i64) -> usize {
    let mut n = 0;
    for a in 1..=(-d) {
        for b in -a + 1..=a {
            for c in a..=(-d) {
                if b * b - 4 * a * c != d || (c == a && b < 0) {
                    continue;
                }
                let g = [a, b.abs(), c].into_iter().fold(0, num_integer::gcd);
                if g == 1 {
                    n += 1;
                }
            }
        }
    }
    n
}

#[test]
fn heegner_levels_agree() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let mut done = 0;
    while done < 10 {
        let (m, d) = (2u64..40, 1i64..120).new_tree(&mut runner).unwrap().current();
        let d = -(4 * d + 3);
        let fundamental = (2..=(-d)).take_while(|p| p * p <= -d).all(|p| d % (p * p) != 0);
        if !fundamental || num_integer::gcd(d, 4 * m as i64) != 1 {
            continue;
        }
        let Some(r) = (0..2 * m as i64).find(|r| (d - r * r).rem_euclid(4 * m as i64) == 0) else {
            continue;
        };
        assert_eq!(enumerate_heegner(m, d, r).len(), level_one_classes(d), "m={m} D={d}");
        done += 1;
    }
}
