use admm_lp::code::{girth, load_builtin_code, nullspace_basis, rank, sample_qc_ensemble};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn tanner_code() {
    let h = load_builtin_code("tanner155").unwrap();
    assert_eq!((h.m(), h.n()), (93, 155));
    assert!(h.vars().all(|c| c.len() == 3));
    assert!(h.checks().all(|r| r.len() == 5));
    assert_eq!(h.n() - rank(&h), 64);
    assert_eq!(girth(&h), Some(8));
}

#[test]
fn wigig_code() {
    let h = load_builtin_code("wigig672").unwrap();
    assert_eq!((h.m(), h.n()), (126, 672));
    assert_eq!(h.n() - rank(&h), 546);
    // the last block column only meets the last block row
    assert!((630..672).all(|i| h.var_nbrs(i).len() == 1));
    h.validate_for_decoding().unwrap();
}

#[test]
fn ensemble_example() {
    let h = load_builtin_code("ensemble1002-example").unwrap();
    assert_eq!((h.m(), h.n()), (501, 1002));
    assert!(h.vars().all(|c| c.len() == 3));
    assert!(h.checks().all(|r| r.len() == 6));
    assert!(girth(&h).unwrap() >= 6);
    assert_eq!(h.n() - rank(&h), 503);
}

#[test]
fn sampled_codewords_satisfy_every_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for name in ["tanner155", "wigig672", "ensemble1002-example"] {
        let h = load_builtin_code(name).unwrap();
        let basis = nullspace_basis(&h);
        for _ in 0..1000 {
            let cw = basis.sample_codeword(&mut rng);
            assert!(h.syndrome(&cw).unwrap().iter().all(|&s| s == 0), "{name}");
        }
    }
}

#[test]
fn ensemble_draws_meet_the_girth_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..3 {
        let s = sample_qc_ensemble(3, 6, 167, 6, &mut rng).unwrap();
        let h = s.expand();
        assert_eq!((h.m(), h.n()), (501, 1002));
        assert!(girth(&h).unwrap() >= 6);
    }
}
