use hlseries::congruences::{hecke_apply, kronecker_symbol, Character, HeckeInput};
use hlseries::framework::{c_table, product_exponents, ProductForm};
use hlseries::hall_littlewood::{hl_branching_at_points, hl_direct_at_points, hl_principal, hl_principal_with_variables};
use hlseries::partitions::{enumerate_partitions, partition_count};
use hlseries::recursion::{newton_roundtrip, recurse_coefficients, recurse_coefficients_rational};
use hlseries::series::{expand_binomial_power, expand_exponent_product};
use hlseries::{IntSeries, Nu, Partition, PeriodicExponents, RRSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const T: usize = 20;

fn series(t: usize) -> impl Strategy<Value = IntSeries> {
    prop::collection::vec(-20i64..=20, t + 1).prop_map(move |v| IntSeries::from_i64s(&v, t))
}

fn unit_series(t: usize) -> impl Strategy<Value = IntSeries> {
    (prop::sample::select(vec![1i64, -1]), prop::collection::vec(-9i64..=9, t))
        .prop_map(move |(c0, rest)| {
            let mut v = vec![c0];
            v.extend(rest);
            IntSeries::from_i64s(&v, t)
        })
}

fn spec() -> impl Strategy<Value = RRSpec> {
    (prop::sample::select(Nu::ALL.to_vec()), 1u32..=4, 1u32..=4)
        .prop_filter_map("admissible", |(nu, a, b)| RRSpec::new(nu, a, b).ok())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn partition(max_size: u32) -> impl Strategy<Value = Partition> {
    (0..=max_size).prop_flat_map(|n| {
        let all = enumerate_partitions(n, n);
        prop::sample::select(all)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in series(T), b in series(T), c in series(T)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &IntSeries::one(T), a);
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series(T)) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, IntSeries::one(T));
        prop_assert_eq!(inv.inverse().unwrap(), a);
    }

    #[test]
    fn one_minus_q_pow_roundtrip(a in series(T), t in 1usize..=T) {
        let mut b = a.clone();
        b.mul_one_minus_q_pow(t);
        prop_assert_eq!(&b, &(&a * &expand_binomial_power(t, 1, T)));
        b.div_one_minus_q_pow(t);
        prop_assert_eq!(b, a);
    }

    #[test]
    fn exponent_product_is_product_of_binomials(c in prop::collection::vec(-3i64..=3, T)) {
        let direct = expand_exponent_product(|t| c[t - 1], T);
        let mut naive = IntSeries::one(T);
        for t in 1..=T {
            naive = &naive * &expand_binomial_power(t, c[t - 1], T);
        }
        prop_assert_eq!(direct, naive);
    }

    #[test]
    fn both_product_forms_agree(s in spec()) {
        prop_assert_eq!(product_exponents(&s, ProductForm::AIndexed), product_exponents(&s, ProductForm::BIndexed));
    }

    #[test]
    fn c_table_shape(s in spec()) {
        let table = c_table(&s);
        prop_assert_eq!(table.modulus(), s.kappa());
        prop_assert_eq!(table.at(0), 0);
        for t in 1..s.kappa() {
            prop_assert_eq!(table.at(t), table.at(s.kappa() - t));
        }
    }

    #[test]
    fn exponents_add_like_products(s1 in spec(), s2 in spec()) {
        prop_assume!(s1.kappa() == s2.kappa());
        let (e1, e2) = (c_table(&s1), c_table(&s2));
        let sum = e1.try_add(&e2).unwrap();
        prop_assert_eq!(sum.expand(T), &e1.expand(T) * &e2.expand(T));
        prop_assert!(sum.try_sub(&e2).unwrap() == e1);
    }

    #[test]
    fn recursion_matches_expansion(v in prop::collection::vec(-2i64..=2, 2..=7)) {
        let mut values = v.clone();
        values[0] = 0;
        let e = PeriodicExponents::from_values(values);
        let rec = recurse_coefficients(|n| e.at(n), 16).unwrap();
        prop_assert_eq!(&rec, &e.expand(16));
        prop_assert_eq!(recurse_coefficients_rational(|n| e.at(n), 16).unwrap().to_integral().unwrap(), rec);
    }

    #[test]
    fn newton_routes_agree(sigma in prop::collection::vec(rational(), 1..=7)) {
        let pair = newton_roundtrip(&sigma).unwrap();
        for n in 1..=sigma.len() {
            prop_assert!(pair.newton_residual(n).is_zero());
        }
    }

    #[test]
    fn branching_matches_direct(lambda in partition(4), pts in prop::collection::vec(rational(), 4), t in rational()) {
        let mut x: Vec<BigRational> = Vec::new();
        for p in pts {
            if !x.contains(&p) {
                x.push(p);
            }
        }
        prop_assume!(x.len() >= lambda.len().max(1));
        prop_assume!(t != BigRational::one() && t != -BigRational::one());
        prop_assert_eq!(hl_branching_at_points(&lambda, &x, &t).unwrap(), hl_direct_at_points(&lambda, &x, &t).unwrap());
    }

    #[test]
    fn principal_specialization_is_stable(lambda in partition(6), e in 1usize..=3) {
        let a = hl_principal_with_variables(&lambda, e, 24, 25);
        let b = hl_principal_with_variables(&lambda, e, 24, 29);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn principal_specialization_starts_at_n_lambda(lambda in partition(7), e in 1usize..=3) {
        let s = hl_principal(&lambda, e, 30);
        let n = lambda.n_statistic() as usize;
        prop_assume!(n <= 30);
        prop_assert!((0..n).all(|j| s.coeff(j).is_zero()));
        prop_assert_eq!(s.coeff(n), BigInt::one());
    }

    #[test]
    fn hl_is_homogeneous(lambda in partition(4), pts in prop::collection::vec(rational(), 3), t in rational(), scale in rational()) {
        let mut x: Vec<BigRational> = Vec::new();
        for p in pts {
            if !x.contains(&p) {
                x.push(p);
            }
        }
        prop_assume!(x.len() >= lambda.len().max(1) && !scale.is_zero());
        let scaled: Vec<BigRational> = x.iter().map(|v| v * &scale).collect();
        let lhs = hl_branching_at_points(&lambda, &scaled, &t).unwrap();
        let rhs = hl_branching_at_points(&lambda, &x, &t).unwrap() * num_traits::pow(scale, lambda.size() as usize);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hecke_is_linear(f in prop::collection::vec(-30i64..=30, 40), g in prop::collection::vec(-30i64..=30, 40),
                       p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..=4, s in -5i64..=5) {
        let apply = |a: Vec<BigInt>| hecke_apply(&HeckeInput { coefficients: a, prime: p, weight: k, character: Character::Kronecker(BigInt::from(-4)) }).unwrap();
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let combo: Vec<BigInt> = f.iter().zip(&g).map(|(x, y)| BigInt::from(x * s + y)).collect();
        let expect: Vec<BigInt> = apply(big(&f)).iter().zip(apply(big(&g))).map(|(x, y)| x * s + y).collect();
        prop_assert_eq!(apply(combo), expect);
    }

    #[test]
    fn hecke_with_vanishing_character_is_decimation(f in prop::collection::vec(-30i64..=30, 41), p in prop::sample::select(vec![2u64, 3, 5])) {
        let coefficients: Vec<BigInt> = f.iter().map(|&x| BigInt::from(x)).collect();
        let chi = Character::Kronecker(BigInt::from(4 * p as i64 * 3));
        let out = hecke_apply(&HeckeInput { coefficients: coefficients.clone(), prime: p, weight: 2, character: chi }).unwrap();
        let decimated: Vec<BigInt> = (0..=40 / p as usize).map(|n| coefficients[p as usize * n].clone()).collect();
        prop_assert_eq!(out, decimated);
    }

    #[test]
    fn kronecker_is_multiplicative_in_top(a in -40i64..=40, b in -40i64..=40, n in 1i64..=60) {
        let k = |x: i64| kronecker_symbol(&BigInt::from(x), &BigInt::from(n));
        prop_assert_eq!(k(a * b), k(a) * k(b));
    }

    #[test]
    fn kronecker_is_multiplicative_in_bottom(a in -40i64..=40, m in 1i64..=40, n in 1i64..=40) {
        let k = |x: i64| kronecker_symbol(&BigInt::from(a), &BigInt::from(x));
        prop_assert_eq!(k(m * n), k(m) * k(n));
    }
}

#[test]
fn partition_enumeration_counts() {
    for n in 0..=20u32 {
        assert_eq!(BigInt::from(enumerate_partitions(n, n).len()), partition_count(n as usize));
    }
}
