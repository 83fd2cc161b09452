mod common;

use ellarr::{ArithmeticMatroid, BiPoly, Subset};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<(ellarr::EllipticArrangement, ArithmeticMatroid)> {
    common::random_arrangements(40, 5, 4, 4, 301)
        .into_iter()
        .map(|a| {
            let m = ArithmeticMatroid::from_arrangement(&a).unwrap();
            (a, m)
        })
        .collect()
}

/// `sum over S of (-1)^|S| m(S) t^(r - rk S)`, evaluated directly.
fn chi_oracle(m: &ArithmeticMatroid, t: i64) -> BigInt {
    let r = m.full_rank();
    let mut total = BigInt::zero();
    for s in m.ground_set().submasks() {
        let term = m.multiplicity(s) * BigInt::from(t).pow(r - m.rank(s));
        if s.len() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn swap_vars(p: &BiPoly) -> Vec<(u32, u32, BigInt)> {
    let mut v: Vec<_> = p.terms().map(|(i, j, c)| (j, i, c.clone())).collect();
    v.sort();
    v
}

#[test]
fn corpus_satisfies_every_axiom() {
    for (arr, m) in corpus() {
        assert!(m.verify_matroid().passed(), "{:?}", m.verify_matroid().violations);
        assert!(m.verify_a1().passed());
        let pos = m.verify_positivity();
        assert!(pos.p.passed() && pos.a2.passed() && pos.p1.passed() && pos.p2.passed());
        assert!(pos.equivalence_holds);
        assert_eq!(m.full_rank() as usize == arr.n(), arr.is_essential());
    }
}

#[test]
fn molecule_sums_are_nonnegative() {
    for (_, m) in corpus() {
        m.for_each_molecule(|mol| assert!(m.rho(mol) >= BigInt::zero()));
        for s in m.ground_set().submasks() {
            let mol = m.find_molecule(s, s).unwrap().unwrap();
            assert_eq!(&m.rho(&mol), m.multiplicity(s));
        }
    }
}

#[test]
fn dual_is_an_involution_and_swaps_tutte_variables() {
    for (_, m) in corpus() {
        let d = m.dual().unwrap();
        assert_eq!(d.dual().unwrap(), m);
        let t = m.tutte();
        let mut td: Vec<_> = d.tutte().terms().map(|(i, j, c)| (i, j, c.clone())).collect();
        td.sort();
        assert_eq!(swap_vars(&t), td);
    }
}

#[test]
fn stacked_contraction_equals_dual() {
    for (arr, m) in corpus() {
        let (stacked, t) = arr.dual_arrangement().unwrap();
        let big = ArithmeticMatroid::from_arrangement(&stacked).unwrap();
        assert_eq!(big.contraction(t).unwrap(), m.dual().unwrap());
    }
}

#[test]
fn tutte_at_one_one_sums_base_multiplicities() {
    for (_, m) in corpus() {
        let r = m.full_rank();
        let bases: BigInt = m
            .ground_set()
            .submasks()
            .filter(|&s| s.len() as u32 == r && m.rank(s) == r)
            .map(|s| m.multiplicity(s).clone())
            .sum();
        assert_eq!(m.tutte().eval(&BigInt::one(), &BigInt::one()), bases);
    }
}

#[test]
fn char_poly_matches_direct_expansion() {
    for (_, m) in corpus() {
        let chi = m.char_poly();
        for t in [-3i64, -1, 0, 2, 7] {
            assert_eq!(chi.eval(&BigInt::from(t)), chi_oracle(&m, t));
        }
    }
}

#[test]
fn tutte_deletion_contraction() {
    for (_, m) in corpus() {
        for e in 0..m.size() {
            let single = Subset::singleton(e);
            let loop_ = m.rank(single) == 0;
            let coloop = m.rank(m.ground_set().difference(single)) < m.full_rank();
            if loop_ || coloop {
                continue;
            }
            let lhs = m.tutte();
            let del = m.deletion(single).unwrap().tutte();
            let con = m.contraction(single).unwrap().tutte();
            for x in -2i64..=2 {
                for y in -2i64..=2 {
                    let (x, y) = (BigInt::from(x), BigInt::from(y));
                    assert_eq!(lhs.eval(&x, &y), del.eval(&x, &y) + con.eval(&x, &y));
                }
            }
        }
    }
}

#[test]
fn multiplicity_divides_base_gcd() {
    for (_, m) in corpus() {
        for s in m.ground_set().submasks() {
            let r = m.rank(s);
            for i in s.submasks().filter(|&i| i.len() as u32 == r && m.rank(i) == r) {
                assert!((m.multiplicity(i) % m.multiplicity(s)).is_zero());
            }
        }
    }
}

#[test]
fn gcd_property_fails_over_gaussian_integers_at_a_split_prime() {
    // 17 = (4 + i)(4 - i); the two divisors meet in a single point of E.
    let a = ellarr::RingMatrix::from_coords(common::curve(1, 0, 1, 1), &[vec![(4, 1)], vec![(4, -1)]], 1)
        .unwrap();
    let arr = ellarr::EllipticArrangement::new(a).unwrap();
    assert!(arr.curve().is_maximal_order());
    let m = ArithmeticMatroid::from_arrangement(&arr).unwrap();
    let table: Vec<i64> = m.multiplicity_table().iter().map(|v| i64::try_from(v).unwrap()).collect();
    assert_eq!(table, [1, 17, 17, 1]);
    let witness = m.gcd_property().witness.unwrap();
    assert_eq!(witness.subset, Subset::from_labels([1, 2]));
    assert_eq!(witness.gcd, BigInt::from(17));
}

#[test]
fn gcd_property_over_maximal_orders_with_inert_primes() {
    // Over Z[sqrt(-2)] the primes 3, 11, 17, 19 split; entries are kept to units times 2^a 5^b.
    let c = common::curve(2, 0, 1, 1);
    let vals = [(1, 0), (2, 0), (0, 1), (5, 0), (0, 2), (10, 0), (-1, 0), (0, -5)];
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..40 {
        let mut rows = Vec::new();
        for _ in 0..3 {
            let mut row = Vec::new();
            for _ in 0..2 {
                row.push(vals[rng.gen_range(0..vals.len())]);
            }
            rows.push(row);
        }
        let a = ellarr::RingMatrix::from_coords(c.clone(), &rows, 2).unwrap();
        let m = ArithmeticMatroid::from_arrangement(&ellarr::EllipticArrangement::new(a).unwrap()).unwrap();
        assert!(m.gcd_property().holds, "{rows:?}");
    }
}

#[test]
fn column_fails_gcd_only_over_the_non_maximal_order() {
    let bad = ArithmeticMatroid::from_arrangement(&common::column_sqrt3()).unwrap();
    let witness = bad.gcd_property().witness.unwrap();
    assert_eq!(witness.subset, Subset::from_labels([1, 2]));
    assert_eq!((witness.multiplicity, witness.gcd), (BigInt::from(2), BigInt::from(4)));
    let good = ArithmeticMatroid::from_arrangement(&common::column_omega()).unwrap();
    assert!(good.gcd_property().holds);
}

/// Uniform matroid of rank `r` with arbitrary positive multiplicities.
fn arb_uniform() -> impl Strategy<Value = ArithmeticMatroid> {
    (0usize..6).prop_flat_map(|k| {
        (0..=k as u32, proptest::collection::vec(1i64..50, 1 << k)).prop_map(move |(r, m)| {
            let rk = (0..1u64 << k).map(|s| (s.count_ones()).min(r)).collect();
            ArithmeticMatroid::from_tables(k, rk, m.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn dual_involution_on_tables(m in arb_uniform()) {
        prop_assert_eq!(&m.dual().unwrap().dual().unwrap(), &m);
        prop_assert!(m.verify_matroid().passed());
        prop_assert!(m.dual().unwrap().verify_matroid().passed());
    }

    #[test]
    fn minors_commute_with_duality(m in arb_uniform(), pick in any::<u64>()) {
        let t = Subset(pick & m.ground_set().bits());
        let lhs = m.contraction(t).unwrap().dual().unwrap();
        let rhs = m.dual().unwrap().deletion(t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
