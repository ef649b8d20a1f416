mod common;

use bordersub::monomials::Monomial;
use bordersub::nullcone::nullcone_feasible;
use bordersub::tensor::{apply_permutation, build_w, random_tensor_on, tight_support, unit_plus_random, CoefficientSampler};
use bordersub::tight::{find_tight_witness, TightWitness};
use bordersub::torus::{check_degeneration_certificate, w_cocharacter};
use bordersub::{Permutation, Support, Tensor3, TorusWeight, WVariant};
use rand::Rng;

#[test]
fn tightness_is_permutation_equivariant() {
    for s in common::random_supports(3, 120, 9, 21) {
        let tight = find_tight_witness(&s).unwrap().is_some();
        for p in Permutation::all(3) {
            let img = apply_permutation(&p, &s).unwrap();
            assert_eq!(find_tight_witness(&img).unwrap().is_some(), tight, "{s:?} under {p:?}");
        }
    }
}

#[test]
fn tight_and_torus_certificates_coexist() {
    for n in 1..=5 {
        let s = tight_support(n);
        assert!(find_tight_witness(&s).unwrap().is_some());
        let off = s.without_diagonal();
        assert!(off.is_subset(&build_w(n, WVariant::W)));
        let t = unit_plus_random(&off, n as u64).unwrap();
        assert!(check_degeneration_certificate(&t, &w_cocharacter(n)).unwrap().is_valid());
    }
}

#[test]
fn witnesses_are_normalized() {
    for s in common::random_supports(4, 60, 8, 5) {
        if let Some(w) = find_tight_witness(&s).unwrap() {
            assert_eq!(w.tau_c[3], 0);
            let g = w.tau_a.iter().chain(&w.tau_b).chain(&w.tau_c).fold(0i64, |a, &b| num_gcd(a, b));
            assert!(g <= 1, "{w:?}");
            assert_eq!(find_tight_witness(&s).unwrap(), Some(w));
        }
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn exhaustive_tightness_oracle_small() {
    for s in common::supports_up_to(2, 8) {
        assert_eq!(find_tight_witness(&s).unwrap().is_some(), common::tight_by_search(&s), "{s:?}");
    }
}

#[test]
fn file_formats_round_trip() {
    let mut rng = CoefficientSampler::new(3);
    for seed in 0..20u64 {
        let n = rng.rng().gen_range(1..=4);
        let s = common::random_supports(n, 1, n * n * n, seed).pop().unwrap();
        assert_eq!(Support::from_json(&s.to_json()).unwrap(), s);
        let t = random_tensor_on(&s, seed);
        assert_eq!(Tensor3::from_json(&t.to_json()).unwrap(), t);
        if let Some(tw) = nullcone_feasible(&s.without_diagonal()).unwrap().certificate {
            assert_eq!(TorusWeight::from_json(&tw.to_json()).unwrap(), tw);
        }
        if let Some(w) = find_tight_witness(&s).unwrap() {
            assert_eq!(TightWitness::from_json(&w.to_json()).unwrap(), w);
        }
        if !s.is_empty() {
            let m = Monomial::new(n, s.iter().collect()).unwrap();
            assert_eq!(Monomial::from_json(&m.to_json()).unwrap(), m);
        }
    }
}
