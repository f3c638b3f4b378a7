use super::oracle::{
    even_weight_vertices, max_cut_violation, oracle_project_parity_polytope,
    oracle_project_simplex,
};
use super::*;
use proptest::prelude::*;

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn interval_examples() {
    assert_eq!(project_interval(0.3, -0.5, 0.5).unwrap(), 0.3);
    assert_eq!(project_interval(1.5, -0.5, 0.5).unwrap(), 0.5);
    assert_eq!(project_interval(-0.5, -0.5, 0.5).unwrap(), -0.5);
    assert!(matches!(
        project_interval(0.0, 1.0, -1.0),
        Err(Error::InvalidInterval { .. })
    ));
}

#[test]
fn hypercube_examples() {
    assert_eq!(project_hypercube(&[0.4, -0.4, 0.3]), vec![0.4, -0.4, 0.3]);
    assert_eq!(project_hypercube(&[0.9, -1.2, 0.0]), vec![0.5, -0.5, 0.0]);
    assert_eq!(project_hypercube(&[0.5; 4]), vec![0.5; 4]);
}

#[test]
fn facet_examples() {
    assert_eq!(identify_facet(&[0.6, 0.6, 0.6]).bits(), &[true, true, true]);
    assert_eq!(identify_facet(&[0.4, -0.4, 0.3]).bits(), &[true, false, false]);
    assert_eq!(identify_facet(&[-0.1, -0.2, -0.3]).bits(), &[true, false, false]);
    // zero counts as non-negative
    assert_eq!(identify_facet(&[0.0, -1.0, -1.0]).bits(), &[true, false, false]);
    // ties pick the lowest index
    assert_eq!(identify_facet(&[0.2, -0.2, 0.7, -0.9]).bits(), &[false, false, true, false]);
}

#[test]
fn similarity_examples() {
    let f = identify_facet(&[0.6, 0.6, 0.6]);
    assert_eq!(
        similarity_transform(&[0.6, 0.6, 0.6], &f).unwrap(),
        vec![-0.6, -0.6, -0.6]
    );
    let zero = FacetIndicator::new(vec![false; 3]);
    assert_eq!(similarity_transform(&[0.1, 0.2, 0.3], &zero).unwrap(), vec![0.1, 0.2, 0.3]);
    assert!(similarity_transform(&[0.1], &zero).is_err());
}

#[test]
fn simplex_examples() {
    assert_eq!(project_centered_simplex(&[0.5, -0.5]), vec![0.5, -0.5]);
    assert_eq!(project_centered_simplex(&[1.0, 1.0]), vec![0.0, 0.0]);
    let w = project_centered_simplex(&[-0.6, -0.6, -0.6]);
    assert!(close(&w, &[-1.0 / 6.0; 3], 1e-15), "{w:?}");
}

#[test]
fn membership_examples() {
    assert!(!membership_test(&[-0.6, -0.6, -0.6]));
    assert!(membership_test(&[-0.4, -0.4, 0.3]));
    assert!(membership_test(&[0.0; 3]));
}

#[test]
fn polytope_examples() {
    assert_eq!(project_parity_polytope(&[0.0; 3]), vec![0.0; 3]);
    let w = project_parity_polytope(&[0.6, 0.6, 0.6]);
    assert!(close(&w, &[1.0 / 6.0; 3], 1e-15), "{w:?}");
    assert_eq!(project_parity_polytope(&[0.4, -0.4, 0.3]), vec![0.4, -0.4, 0.3]);
}

#[test]
fn oracle_reproduces_shell_example() {
    let w = oracle_project_parity_polytope(&[0.6, 0.6, 0.6], 100_000).unwrap();
    assert!(close(&w, &[1.0 / 6.0; 3], 1e-4));
}

#[test]
fn even_sign_flips_commute_with_projection() {
    let v = [0.9, -0.2, 0.35, 1.4, -0.05];
    let flipped = [-0.9, 0.2, 0.35, 1.4, -0.05];
    let a = project_parity_polytope(&v);
    let b = project_parity_polytope(&flipped);
    let b: Vec<f64> = b
        .iter()
        .enumerate()
        .map(|(i, &x)| if i < 2 { -x } else { x })
        .collect();
    assert!(close(&a, &b, 1e-12), "{a:?} vs {b:?}");
}

#[test]
fn degree_two_polytope_is_the_diagonal() {
    // PP_2 - 1/2 is the segment between (-1/2, -1/2) and (1/2, 1/2)
    let w = project_parity_polytope(&[0.3, -0.1]);
    assert!(close(&w, &[0.1, 0.1], 1e-15), "{w:?}");
    let w = project_parity_polytope(&[2.0, 1.0]);
    assert!(close(&w, &[0.5, 0.5], 1e-15), "{w:?}");
}

/// Projection onto the uncentered polytope PP_d written directly in
/// `[0, 1]^d` coordinates: reflect `x_i -> 1 - x_i` on the odd facet set and
/// project onto the standard simplex `{sum = 1, y >= 0}` when outside.
fn uncentered_projection(x: &[f64]) -> Vec<f64> {
    let d = x.len();
    let mut f: Vec<bool> = x.iter().map(|&c| c >= 0.5).collect();
    if f.iter().filter(|&&b| b).count() % 2 == 0 {
        let mut k = 0;
        for i in 1..d {
            if (x[i] - 0.5).abs() < (x[k] - 0.5).abs() {
                k = i;
            }
        }
        f[k] = !f[k];
    }
    let y: Vec<f64> = x.iter().zip(&f).map(|(&c, &b)| if b { 1.0 - c } else { c }).collect();
    let box_y: Vec<f64> = y.iter().map(|c| c.clamp(0.0, 1.0)).collect();
    if box_y.iter().sum::<f64>() >= 1.0 {
        return x.iter().map(|c| c.clamp(0.0, 1.0)).collect();
    }
    let mut rho = y.clone();
    rho.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    let mut theta = 0.0;
    for (i, r) in rho.iter().enumerate() {
        acc += r;
        let t = (acc - 1.0) / (i + 1) as f64;
        if r - t > 0.0 {
            theta = t;
        }
    }
    y.iter()
        .zip(&f)
        .map(|(&c, &b)| {
            let p = (c - theta).max(0.0);
            if b { 1.0 - p } else { p }
        })
        .collect()
}

fn vec_in(d: std::ops::RangeInclusive<usize>, lim: f64) -> impl Strategy<Value = Vec<f64>> {
    d.prop_flat_map(move |d| prop::collection::vec(-lim..lim, d))
}

/// Random convex combination of even-weight vertices.
fn polytope_point(d: usize, seeds: &[f64]) -> Vec<f64> {
    let verts = even_weight_vertices(d);
    let total: f64 = seeds.iter().sum();
    let mut u = vec![0.0; d];
    for (k, s) in seeds.iter().enumerate() {
        let e = &verts[k % verts.len()];
        for i in 0..d {
            u[i] += s / total * e[i];
        }
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn projection_is_feasible(v in vec_in(2..=10, 3.0)) {
        let w = project_parity_polytope(&v);
        prop_assert!(max_cut_violation(&w) <= 1e-9);
        prop_assert!(w.iter().all(|x| x.abs() <= 0.5));
    }

    #[test]
    fn projection_satisfies_variational_inequality(
        v in vec_in(3..=8, 3.0),
        seeds in prop::collection::vec(0.01f64..1.0, 1..12),
    ) {
        let w = project_parity_polytope(&v);
        let u = polytope_point(v.len(), &seeds);
        let vi: f64 = (0..v.len()).map(|i| (v[i] - w[i]) * (u[i] - w[i])).sum();
        prop_assert!(vi <= 1e-8, "{}", vi);
    }

    #[test]
    fn projections_are_idempotent(v in vec_in(2..=12, 3.0)) {
        let w = project_parity_polytope(&v);
        prop_assert!(close(&project_parity_polytope(&w), &w, 1e-9));
        let s = project_centered_simplex(&v);
        prop_assert!(close(&project_centered_simplex(&s), &s, 1e-9));
    }

    #[test]
    fn projections_are_non_expansive(
        (u, v) in (2usize..=10).prop_flat_map(|d| (
            prop::collection::vec(-3.0f64..3.0, d),
            prop::collection::vec(-3.0f64..3.0, d),
        ))
    ) {
        let dist = |a: &[f64], b: &[f64]| {
            a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
        };
        let pu = project_parity_polytope(&u);
        let pv = project_parity_polytope(&v);
        prop_assert!(dist(&pu, &pv) <= dist(&u, &v) + 1e-9);
        let su = project_centered_simplex(&u);
        let sv = project_centered_simplex(&v);
        prop_assert!(dist(&su, &sv) <= dist(&u, &v) + 1e-9);
    }

    #[test]
    fn simplex_projection_is_feasible(v in vec_in(1..=16, 5.0)) {
        let w = project_centered_simplex(&v);
        let d = v.len() as f64;
        let sum: f64 = w.iter().sum();
        prop_assert!((sum - (1.0 - d / 2.0)).abs() <= 1e-9);
        prop_assert!(w.iter().all(|&x| x >= -0.5 - 1e-12));
    }

    #[test]
    fn simplex_matches_active_set_oracle(v in vec_in(2..=10, 3.0)) {
        let w = project_centered_simplex(&v);
        let o = oracle_project_simplex(&v).unwrap();
        prop_assert!(close(&w, &o, 1e-12), "{:?} vs {:?}", w, o);
    }

    #[test]
    fn centered_and_uncentered_agree(v in vec_in(2..=10, 3.0)) {
        let x: Vec<f64> = v.iter().map(|c| c + 0.5).collect();
        let back: Vec<f64> = uncentered_projection(&x).iter().map(|c| c - 0.5).collect();
        prop_assert!(close(&back, &project_parity_polytope(&v), 1e-12));
    }

    #[test]
    fn membership_true_means_hypercube_projection(v in vec_in(2..=10, 1.0)) {
        let f = identify_facet(&v);
        let t = similarity_transform(&v, &f).unwrap();
        if membership_test(&t) {
            prop_assert_eq!(project_parity_polytope(&v), project_hypercube(&v));
        }
    }

    #[test]
    fn facet_has_odd_weight(v in vec_in(2..=16, 2.0)) {
        prop_assert_eq!(identify_facet(&v).weight() % 2, 1);
    }

    #[test]
    fn similarity_is_an_involution(v in vec_in(2..=10, 2.0), bits in prop::collection::vec(any::<bool>(), 10)) {
        let f = FacetIndicator::new(bits[..v.len()].to_vec());
        let twice = similarity_transform(&similarity_transform(&v, &f).unwrap(), &f).unwrap();
        prop_assert_eq!(twice, v);
    }

    #[test]
    fn shell_path_equals_full_algorithm(v in vec_in(2..=10, 3.0)) {
        // compute every branch, then select, as the unshortcut algorithm does
        let f = identify_facet(&v);
        let t = similarity_transform(&v, &f).unwrap();
        let shell = similarity_transform(&project_centered_simplex(&t), &f).unwrap();
        let full = if membership_test(&t) { project_hypercube(&v) } else { shell };
        prop_assert_eq!(full, project_parity_polytope(&v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_frank_wolfe_oracle(v in vec_in(3..=8, 3.0)) {
        let w = project_parity_polytope(&v);
        let o = oracle_project_parity_polytope(&v, 100_000).unwrap();
        prop_assert!(close(&w, &o, 1e-3), "{:?} vs {:?}", w, o);
    }
}
