use num_bigint::BigInt;
use projcluster::cli::random_assignment;
use projcluster::cluster::Seed;
use projcluster::geom::{coords_of_polygon_pair, polygon_pair_from_coords};
use projcluster::quantum::{qmul, QLaurent, QTorusElem};
use projcluster::surface::{epsilon_of_triangulation, flip_closed_form, Triangulation};
use projcluster::RatFunc;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(terms: &[(i64, [u8; 3])]) -> RatFunc {
    let vars = ["prop_u", "prop_v", "prop_w"].map(RatFunc::named);
    terms.iter().fold(RatFunc::zero(), |acc, (c, e)| {
        let m = (0..3).fold(RatFunc::int(*c), |m, i| &m * &vars[i].pow(e[i] as i32).unwrap());
        &acc + &m
    })
}

fn small_poly() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((-3i64..=3, prop::array::uniform3(0u8..=2)), 1..=3).prop_map(|t| poly(&t))
}

fn skew(n: usize) -> impl Strategy<Value = Vec<Vec<i32>>> {
    prop::collection::vec(-2i32..=2, n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                m[i][j] = v;
                m[j][i] = -v;
            }
        }
        m
    })
}

fn quad_seed() -> Seed {
    epsilon_of_triangulation(&Triangulation::polygon(4).unwrap().without_boundary_coords()).unwrap()
}

fn torus_elem() -> impl Strategy<Value = Vec<(Vec<i32>, i64, i32)>> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, 4), -3i64..=3, -2i32..=2), 1..=3)
}

fn build(seed: &Seed, terms: &[(Vec<i32>, i64, i32)]) -> QTorusElem {
    terms.iter().fold(QTorusElem::zero(seed), |acc, (a, c, k)| {
        acc.add(&QTorusElem::monomial(seed, a.clone(), QLaurent::term(BigInt::from(*c), *k)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratfunc_distributes(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn ratfunc_division_inverts(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a / &b) * &b, a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn qmul_associative(x in torus_elem(), y in torus_elem(), z in torus_elem()) {
        let s = quad_seed();
        let (x, y, z) = (build(&s, &x), build(&s, &y), build(&s, &z));
        let left = qmul(&s, &qmul(&s, &x, &y).unwrap(), &z).unwrap();
        let right = qmul(&s, &x, &qmul(&s, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn epsilon_mutation_is_involution(m in skew(5), k in 0usize..5) {
        let names = (0..5).map(|i| format!("s{i}")).collect();
        let s = Seed::new(names, m).unwrap();
        let back = s.mutate_epsilon(k).mutate_epsilon(k);
        for i in 0..5 {
            for j in 0..5 {
                prop_assert_eq!(back.eps(i, j), s.eps(i, j));
            }
        }
    }

    #[test]
    fn polygon_round_trip(n in 3usize..=6, seed in any::<u64>()) {
        let tri = Triangulation::polygon(n).unwrap().without_boundary_coords();
        let a = random_assignment(&tri, &mut ChaCha8Rng::seed_from_u64(seed));
        let pp = polygon_pair_from_coords(&a, &tri).unwrap();
        prop_assert_eq!(coords_of_polygon_pair(&pp, &tri).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn flip_is_involution(n in 4usize..=6, pick in any::<prop::sample::Index>()) {
        let tri = Triangulation::polygon(n).unwrap();
        let edges = tri.internal_edges();
        let e = edges[pick.index(edges.len())];
        let (after, there) = flip_closed_form(&tri, e).unwrap();
        let (_, back) = flip_closed_form(&after, e).unwrap();
        prop_assert!(there.then(&back).unwrap().is_identity());
    }
}
