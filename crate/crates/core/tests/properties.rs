//! Randomized invariants on sizes beyond the exhaustive unit tests.

use num_rational::BigRational;
use proptest::prelude::*;

use mapcov::coverings::{collapse_psi, in_image, reconstruct_covering, CoveringSolution};
use mapcov::partitions::{decay_rates, growth_rates, Partition};
use mapcov::ribbon::{contract_phi, valence_sum_check, Contraction};
use mapcov::spectral::{
    airy_kernel, edge_density, integrate, tridiagonal_eigenvalues, two_point_density, QuadratureSpec,
};
use mapcov::{ExponentVector, PolygonGluing};

/// Perimeters with even total and a uniformly shuffled pairing of the sides.
fn gluing() -> impl Strategy<Value = PolygonGluing> {
    prop::collection::vec(1u32..9, 1..4)
        .prop_filter("even total", |k| k.iter().sum::<u32>() % 2 == 0)
        .prop_flat_map(|k| {
            let m = k.iter().sum::<u32>() as usize;
            (Just(k), Just((0..m as u32).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(k, order)| {
            let mut pairing = vec![0u32; order.len()];
            for pair in order.chunks(2) {
                pairing[pair[0] as usize] = pair[1];
                pairing[pair[1] as usize] = pair[0];
            }
            PolygonGluing::new(ExponentVector::new(k).unwrap(), pairing).unwrap()
        })
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..12, 1..10).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_characteristic_counts_cells(m in gluing()) {
        let v = m.num_vertices() as i64;
        let e = (m.num_slots() / 2) as i64;
        let f = m.num_polygons() as i64;
        prop_assert_eq!(m.euler_characteristic(), v - e + f);
        prop_assert_eq!(m.reflect().euler_characteristic(), m.euler_characteristic());
    }

    #[test]
    fn contraction_keeps_genus_and_perimeters(m in gluing()) {
        prop_assume!(m.is_connected());
        let genus = m.genus().unwrap();
        let s = m.num_polygons();
        match contract_phi(&m).unwrap() {
            Contraction::Point => prop_assert_eq!((genus, s), (0, 1)),
            Contraction::Circle => prop_assert_eq!((genus, s), (0, 2)),
            Contraction::Graph(g, metric) => {
                prop_assert!(g.valences().iter().all(|&v| v >= 3));
                prop_assert!(valence_sum_check(&g));
                prop_assert_eq!(g.genus(), Some(genus));
                let want: Vec<u64> = m.k().as_slice().iter().map(|&x| x as u64).collect();
                prop_assert_eq!(g.perimeters(&metric), want);
            }
        }
    }

    #[test]
    fn in_image_maps_reconstruct(m in gluing()) {
        prop_assume!(m.is_connected() && in_image(&m));
        let c: CoveringSolution = reconstruct_covering(&m).unwrap();
        prop_assert_eq!(c.genus(), m.genus());
        prop_assert_eq!(collapse_psi(&c).unwrap(), m);
    }

    #[test]
    fn hook_and_product_dimensions_agree(lambda in partition()) {
        prop_assert_eq!(lambda.dim_hook(), lambda.dim_product());
        prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
        prop_assert_eq!(lambda.conjugate().dim(), lambda.dim());
    }

    #[test]
    fn corner_rates_are_probabilities(lambda in partition()) {
        let one = BigRational::from_integer(1.into());
        prop_assert_eq!(decay_rates(&lambda).unwrap().total(), one.clone());
        prop_assert_eq!(growth_rates(&lambda).total(), one);
    }

    #[test]
    fn kernel_symmetry_and_determinantal_bound(x in -12.0f64..6.0, y in -12.0f64..6.0) {
        let a = airy_kernel(x, y).unwrap();
        let b = airy_kernel(y, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a.abs().max(1e-8));
        let p2 = two_point_density(x, y).unwrap();
        prop_assert!(p2 >= -1e-12);
        prop_assert!(p2 <= edge_density(x).unwrap() * edge_density(y).unwrap() + 1e-12);
    }

    #[test]
    fn quadrature_exact_on_cubics(c in prop::array::uniform4(-5.0f64..5.0), a in -3.0f64..0.0, w in 0.1f64..4.0) {
        let b = a + w;
        let f = |x: f64| c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x;
        let anti = |x: f64| c[0] * x + c[1] * x * x / 2.0 + c[2] * x.powi(3) / 3.0 + c[3] * x.powi(4) / 4.0;
        let q = integrate(f, a, b, &QuadratureSpec::default()).unwrap();
        let want = anti(b) - anti(a);
        prop_assert!((q.value - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    #[test]
    fn ql_preserves_trace_invariants(d in prop::collection::vec(-3.0f64..3.0, 1..40), seed in 0u64..1000) {
        let n = d.len();
        let e: Vec<f64> = (0..n).map(|i| if i + 1 < n { ((seed + i as u64) % 7) as f64 / 3.0 - 1.0 } else { 0.0 }).collect();
        let tr: f64 = d.iter().sum();
        let fro: f64 = d.iter().map(|x| x * x).sum::<f64>() + 2.0 * e.iter().map(|x| x * x).sum::<f64>();
        let (mut dd, mut ee) = (d.clone(), e);
        tridiagonal_eigenvalues(&mut dd, &mut ee).unwrap();
        let s1: f64 = dd.iter().sum();
        let s2: f64 = dd.iter().map(|x| x * x).sum();
        prop_assert!((s1 - tr).abs() < 1e-10 * fro.max(1.0));
        prop_assert!((s2 - fro).abs() < 1e-10 * fro.max(1.0));
    }
}
