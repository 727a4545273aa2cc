use num_traits::{One, Signed};
use proptest::prelude::*;
use specgraph_core::constructions::{
    corona, corona_inverse_closed_form, corona_power_index, kmm_minus_e_spectrum, make_family,
    multipartitioned_expand, multipartitioned_reduced_classification, multipartitioned_spectrum,
    pinv_multipartitioned, ConstructionError, Family, PartitionSpec,
};
use specgraph_core::graph::enumerate_connected_graphs;
use specgraph_core::linalg::{det_integer, mp_pseudoinverse_exact};
use specgraph_core::signability::{classify, homothety_check, Kappa};
use specgraph_core::spectral::{graph_spectrum, spectral_indices};
use specgraph_core::{Graph, RationalMatrix, Spectrum};

fn assert_same_spectrum(a: &Spectrum, b: &Spectrum) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
        assert!((x - y).abs() < 1e-9, "{:?} vs {:?}", a.eigenvalues(), b.eigenvalues());
    }
}

fn exact_pinv(g: &Graph) -> RationalMatrix {
    mp_pseudoinverse_exact(&g.adjacency_rational()).unwrap()
}

#[test]
fn single_parameter_closed_forms() {
    for m in 1..=16 {
        let mut families = vec![Family::Path(m), Family::Complete(m)];
        if m >= 3 {
            families.push(Family::Cycle(m));
        }
        if m >= 2 {
            families.push(Family::Star(m));
        }
        if (2..=8).contains(&m) {
            families.push(Family::CompleteBipartiteMinusEdge(m));
        }
        for f in families {
            let g = f.build().unwrap();
            assert_eq!(g.order(), f.order());
            assert_eq!(f.closed_form_pinv().unwrap(), exact_pinv(&g), "{f:?}");
        }
    }
}

#[test]
fn bipartite_closed_forms() {
    for a in 1..=8 {
        for b in 1..=8 {
            let f = Family::CompleteBipartite(a, b);
            assert_eq!(f.closed_form_pinv().unwrap(), exact_pinv(&f.build().unwrap()), "{f:?}");
        }
    }
}

#[test]
fn kmm_minus_edge_spectrum() {
    for m in 2..=10 {
        let g = make_family("complete_bipartite_minus_edge", &[m]).unwrap();
        assert_same_spectrum(&kmm_minus_e_spectrum(m), &graph_spectrum(&g));
    }
}

#[test]
fn invalid_parameters() {
    assert!(matches!(make_family("cycle", &[2]), Err(ConstructionError::InvalidParameter { .. })));
    assert!(matches!(make_family("star", &[1]), Err(ConstructionError::InvalidParameter { .. })));
    assert!(matches!(make_family("complete_bipartite", &[3]), Err(ConstructionError::InvalidParameter { .. })));
    assert!(matches!(make_family("complete_multipartite", &[2, 0]), Err(ConstructionError::InvalidParameter { .. })));
    assert!(matches!(make_family("wheel", &[5]), Err(ConstructionError::UnknownFamily(_))));
    let disconnected = Graph::from_edges(3, &[(0, 1)]).unwrap();
    assert!(matches!(PartitionSpec::new(vec![1, 1, 1], Some(disconnected.clone())), Err(ConstructionError::DisconnectedBase)));
    assert!(PartitionSpec::new(vec![1, 1], Some(disconnected)).is_err());
}

#[test]
fn corona_is_integrally_invertible_signable_and_self_similar() {
    for k in 1..=5 {
        for base in enumerate_connected_graphs(k).unwrap() {
            let g = corona(&base).unwrap();
            assert_eq!(g.order(), 2 * k);
            assert!(det_integer(&g.adjacency_int()).unwrap().abs().is_one());
            let inv = exact_pinv(&g);
            assert_eq!(inv, RationalMatrix::from_int(&corona_inverse_closed_form(&base)));
            assert!(classify(&g).kind.is_signable(), "{base:?}");
            let h = homothety_check(&g).expect("corona inverse graph is a relabeling");
            assert_eq!(h.kappa, Kappa::Rational(One::one()));

            let base_spec: Vec<f64> = graph_spectrum(&base).eigenvalues().to_vec();
            let pow = spectral_indices(&graph_spectrum(&g)).unwrap().pow;
            assert!((corona_power_index(&base_spec) - pow).abs() < 1e-9);
        }
    }
}

fn base_and_parts() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (1usize..=5).prop_flat_map(|k| {
        let bases = enumerate_connected_graphs(k).unwrap();
        (prop::sample::select(bases), prop::collection::vec(1usize..=3, k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn blow_up_pseudoinverse_and_spectrum((base, parts) in base_and_parts()) {
        let spec = PartitionSpec::new(parts, Some(base.clone())).unwrap();
        let g = multipartitioned_expand(&spec).unwrap();
        prop_assert_eq!(g.order(), spec.order());
        prop_assert_eq!(pinv_multipartitioned(&spec).unwrap(), exact_pinv(&g));
        assert_same_spectrum(&multipartitioned_spectrum(&spec).unwrap(), &graph_spectrum(&g));

        // signability transfers from the reduced matrix to the blow-up
        let kind = classify(&g).kind;
        prop_assert_eq!(multipartitioned_reduced_classification(&spec).unwrap().kind, kind);
        if det_integer(&base.adjacency_int()).unwrap() != 0.into() {
            prop_assert_eq!(classify(&base).kind, kind);
        }
    }
}

#[test]
fn complete_multipartite_closed_forms() {
    let mut parts = vec![];
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            partitions(n - p, p, cur, out);
            cur.pop();
        }
    }
    for n in 1..=10 {
        partitions(n, n, &mut vec![], &mut parts);
    }
    for p in parts {
        let f = Family::CompleteMultipartite(p.clone());
        assert_eq!(f.closed_form_pinv().unwrap(), exact_pinv(&f.build().unwrap()), "{p:?}");
    }
}

#[test]
fn path_blow_up_example() {
    // P4 with the second vertex doubled
    let spec = PartitionSpec::new(vec![1, 2, 1, 1], Some(make_family("path", &[4]).unwrap())).unwrap();
    let g = multipartitioned_expand(&spec).unwrap();
    assert_eq!((g.order(), g.edge_count()), (5, 5));
    assert!(classify(&g).kind.is_signable());
    assert_eq!(classify(&g).kind, classify(&make_family("path", &[4]).unwrap()).kind);
}
