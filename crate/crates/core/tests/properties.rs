use proptest::prelude::*;

use wordgeom::asymptotics::{growth_series, sector_histogram, Functional};
use wordgeom::hull::build_hull;
use wordgeom::measure::{cone_measure, ConeSampler};
use wordgeom::metric::cache::{read_table, write_table};
use wordgeom::metric::{bfs_ball, MetricConfig, OracleResult, SpellingOracle};
use wordgeom::{GeneratorSet, LatticeVector};

fn planar_sets() -> impl Strategy<Value = GeneratorSet> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 2..=4)
        .prop_filter_map("must generate Z^2", |rows| {
            let vs = rows.into_iter().map(LatticeVector::new).collect();
            GeneratorSet::symmetrized(2, vs).ok()
        })
}

fn spatial_sets() -> impl Strategy<Value = GeneratorSet> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3..=4)
        .prop_filter_map("must generate Z^3", |rows| {
            let vs = rows.into_iter().map(LatticeVector::new).collect();
            GeneratorSet::symmetrized(3, vs).ok()
        })
}

fn point(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..=50, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_a_norm(g in planar_sets(), x in point(2), y in point(2), k in 0i64..6) {
        let shape = build_hull(&g).unwrap();
        let n = |v: &[i64]| shape.norm_ratio(v);
        let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        prop_assert!(n(&sum) <= n(&x) + n(&y));
        let kx: Vec<i64> = x.iter().map(|a| k * a).collect();
        prop_assert_eq!(n(&kx), n(&x) * k);
        let neg: Vec<i64> = x.iter().map(|a| -a).collect();
        prop_assert_eq!(n(&neg), n(&x));
    }

    #[test]
    fn generators_lie_in_the_unit_ball(g in planar_sets()) {
        let shape = build_hull(&g).unwrap();
        for v in g.vectors() {
            let r = shape.norm_ratio(v.coords());
            prop_assert!(r <= num::rational::Ratio::from_integer(1));
        }
        for v in shape.vertices() {
            prop_assert_eq!(shape.norm_ratio(v.coords()), num::rational::Ratio::from_integer(1));
        }
    }

    #[test]
    fn word_length_is_a_graph_metric(g in planar_sets()) {
        let t = bfs_ball(&g, 8).unwrap();
        let shape = build_hull(&g).unwrap();
        let mut y = vec![0i64; 2];
        for (x, n) in t.ball(7) {
            prop_assert!(shape.norm_ratio(x) <= num::rational::Ratio::from_integer(n as i64));
            for s in g.vectors() {
                y[0] = x[0] + s.coords()[0];
                y[1] = x[1] + s.coords()[1];
                let m = t.length(&y).unwrap();
                prop_assert!(m + 1 >= n && m <= n + 1);
            }
        }
    }

    #[test]
    fn growth_counts_are_consistent(g in spatial_sets()) {
        let t = bfs_ball(&g, 5).unwrap();
        let s = growth_series(&t);
        prop_assert_eq!(s.beta[0], 1);
        for n in 1..s.beta.len() {
            prop_assert_eq!(s.beta[n] - s.beta[n - 1], s.sigma[n]);
        }
        let shape = build_hull(&g).unwrap();
        for n in 1..=5 {
            prop_assert_eq!(sector_histogram(&t, &shape, n).unwrap().total(), s.sigma[n as usize]);
        }
    }

    #[test]
    fn bfs_agrees_with_oracle(g in planar_sets()) {
        let t = bfs_ball(&g, 4).unwrap();
        let o = SpellingOracle::new(&g).unwrap();
        for (p, n) in t.iter() {
            prop_assert_eq!(o.word_length(p, 4), OracleResult::Length(n));
        }
    }

    #[test]
    fn cone_samples_land_on_the_limit_shape(g in spatial_sets(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let shape = build_hull(&g).unwrap();
        let m = cone_measure(&shape);
        prop_assert_eq!(m.total(), wordgeom::Rational::from_integer(1.into()));
        let sampler = ConeSampler::new(&shape, &m);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let x = sampler.sample(&mut rng);
            prop_assert!((shape.norm_f64(&x) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn limit_functionals_are_homogeneous(g in planar_sets(), x in point(2), a in 1u32..20, b in 1u32..20) {
        prop_assume!(x.iter().any(|&c| c != 0));
        let shape = build_hull(&g).unwrap();
        let t = a as f64 / b as f64;
        let xf: Vec<f64> = x.iter().map(|&c| c as f64).collect();
        let tx: Vec<f64> = xf.iter().map(|c| c * t).collect();
        for f in [
            Functional::WordLengthPower(2),
            Functional::NormPower(1),
            Functional::EuclideanPower(1),
            Functional::CoordinateMonomial(vec![1, 1]),
            Functional::ConstantOne,
        ] {
            let lhs = f.limit_value(&shape, &tx).unwrap();
            let rhs = t.powi(f.order() as i32) * f.limit_value(&shape, &xf).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn cache_round_trips(g in planar_sets()) {
        let t = bfs_ball(&g, 6).unwrap();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        let back = read_table(&buf[..], &MetricConfig::default()).unwrap();
        prop_assert!(back.same_contents(&t));
    }
}
