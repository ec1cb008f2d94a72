mod support;

use std::sync::Arc;

use parahoric_core::affweyl::{AffineElt, AffineWeylGroup};
use parahoric_core::bernstein::{self, BernsteinCoords};
use parahoric_core::hecke::HeckeAlgebra;
use parahoric_core::{Coweight, LaurentPoly, Preset, RootDatum, StandardLevi};
use proptest::prelude::*;

fn alg(f: Preset, n: usize) -> HeckeAlgebra {
    HeckeAlgebra::equal(AffineWeylGroup::new(RootDatum::preset(f, n).unwrap()))
}

fn small_algebras() -> Vec<HeckeAlgebra> {
    vec![alg(Preset::GL, 2), alg(Preset::GL, 3), alg(Preset::SL, 3), alg(Preset::Sp, 4), alg(Preset::GSp, 4)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn theta_is_multiplicative(i in 0usize..5, a in prop::collection::vec(-1i64..=1, 3), b in prop::collection::vec(-1i64..=1, 3)) {
        let algs = small_algebras();
        let alg = &algs[i];
        let r = alg.group().datum().rank();
        let (a, b) = (Coweight(a[..r].to_vec()), Coweight(b[..r].to_vec()));
        let ta = bernstein::theta(alg, &a).unwrap();
        let tb = bernstein::theta(alg, &b).unwrap();
        let tab = bernstein::theta(alg, &a.add(&b)).unwrap();
        prop_assert_eq!(alg.mul(&ta, &tb).unwrap(), tab.clone());
        prop_assert_eq!(alg.mul(&tb, &ta).unwrap(), tab);
    }

    #[test]
    fn expansion_inverts_assembly(i in 0usize..5, picks in prop::collection::vec((0usize..64, -3i64..=3, -2i32..=2), 1..=3)) {
        let algs = small_algebras();
        let alg = &algs[i];
        let rd = alg.group().datum_arc().clone();
        let pool = rd.dominant_coweights(4, 1);
        let mut coords = BernsteinCoords::for_group(rd.clone());
        for (k, c, e) in picks {
            coords.add(&pool[k % pool.len()], &LaurentPoly::from_terms([(e, c)]));
        }
        let h = bernstein::assemble(alg, &coords).unwrap();
        prop_assert!(alg.is_central(&h));
        prop_assert_eq!(bernstein::bernstein_expand(alg, &h).unwrap(), coords.clone());
        // restriction to the torus forgets nothing
        let t = bernstein::constant_term(&coords, &StandardLevi::torus()).unwrap();
        let mut back = BernsteinCoords::for_group(rd.clone());
        for (l, c) in t.iter() {
            if rd.is_dominant(l) {
                back.add(l, c);
            }
        }
        prop_assert_eq!(back, coords);
    }
}

#[test]
fn z_lambda_is_central_with_admissible_support() {
    for rd in support::sweep_presets() {
        let alg = HeckeAlgebra::equal(AffineWeylGroup::new(rd.clone()));
        let w = alg.group();
        for l in support::sweep_weights(&rd) {
            let z = bernstein::bernstein_z(&alg, &l).unwrap();
            assert!(alg.is_central(&z));
            let adm = w.admissible_set(&l);
            assert!(z.support().all(|x| adm.contains(x)), "{} {l}", rd.name());
            let top = rd.two_rho_pairing(&l) as i32;
            for t in rd.weyl_orbit(&l) {
                assert_eq!(z.coeff(&AffineElt::translation(t)), LaurentPoly::v_pow(-top));
            }
        }
    }
}

#[test]
fn constant_terms_are_transitive() {
    let cases: [(Preset, usize, Vec<usize>, Vec<usize>); 4] = [
        (Preset::GL, 3, vec![0], vec![]),
        (Preset::GL, 4, vec![0, 2], vec![0]),
        (Preset::GSp, 4, vec![1], vec![]),
        (Preset::Sp, 4, vec![0], vec![]),
    ];
    for (f, n, l, m) in cases {
        let rd = Arc::new(RootDatum::preset(f, n).unwrap());
        let (l, m) = (StandardLevi::new(l), StandardLevi::new(m));
        for mu in rd.dominant_coweights(6, 2) {
            let mut c = BernsteinCoords::for_group(rd.clone());
            c.add(&mu, &LaurentPoly::from_int(2));
            c.add(&rd.coweight(&vec![0; rd.rank()]).unwrap(), &LaurentPoly::v_pow(1));
            let direct = bernstein::constant_term(&c, &m).unwrap();
            let staged = bernstein::constant_term(&bernstein::constant_term(&c, &l).unwrap(), &m).unwrap();
            assert_eq!(direct, staged);
            let sd = bernstein::signed_constant_term(&c, &m).unwrap();
            let ss = bernstein::signed_constant_term(&bernstein::signed_constant_term(&c, &l).unwrap(), &m).unwrap();
            assert_eq!(sd, ss, "{} {mu}", rd.name());
        }
    }
}

#[test]
fn rejects_bad_input() {
    let a = alg(Preset::GL, 2);
    assert!(bernstein::bernstein_z(&a, &Coweight(vec![0, 1])).is_err());
    assert!(bernstein::theta(&a, &Coweight(vec![0, 1, 2])).is_err());
    let t = parahoric_core::HeckeElt::basis(a.group().node(1).clone());
    assert!(bernstein::bernstein_expand(&a, &t).is_err());
    let rd = Arc::new(RootDatum::preset(Preset::GL, 3).unwrap());
    let c = BernsteinCoords::new(rd, StandardLevi::new([0]));
    assert!(bernstein::constant_term(&c, &StandardLevi::new([1])).is_err());
}
