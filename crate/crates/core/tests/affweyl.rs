mod support;

use parahoric_core::affweyl::{AffineElt, AffineWeylGroup, Facet};
use parahoric_core::{Coweight, Preset, RootDatum};
use proptest::prelude::*;

fn group(f: Preset, n: usize) -> AffineWeylGroup {
    AffineWeylGroup::new(RootDatum::preset(f, n).unwrap())
}

fn small_rank_groups() -> Vec<AffineWeylGroup> {
    [
        (Preset::GL, 2),
        (Preset::GL, 3),
        (Preset::SL, 2),
        (Preset::SL, 3),
        (Preset::PGL, 2),
        (Preset::PGL, 3),
        (Preset::Sp, 4),
        (Preset::GSp, 4),
    ]
    .iter()
    .map(|&(f, n)| group(f, n))
    .collect()
}

fn word_product(w: &AffineWeylGroup, word: &[usize], omega: &AffineElt) -> AffineElt {
    let mut x = omega.clone();
    for &s in word.iter().rev() {
        x = w.left_mul_node(s, &x);
    }
    x
}

/// A reduced word built from the largest left descent at each step.
fn greatest_word(w: &AffineWeylGroup, x: &AffineElt) -> (Vec<usize>, AffineElt) {
    let mut cur = x.clone();
    let mut word = Vec::new();
    while w.length(&cur) > 0 {
        let s = (0..w.num_nodes()).rev().find(|&s| w.is_left_descent(s, &cur)).unwrap();
        word.push(s);
        cur = w.left_mul_node(s, &cur);
    }
    (word, cur)
}

#[test]
fn bruhat_matches_covering_closure() {
    for w in small_rank_groups() {
        let mut omegas = vec![w.identity()];
        omegas.extend(w.omega_generators().iter().take(1).cloned());
        for om in omegas {
            let elems = support::elements_up_to(&w, &om, 5);
            let closure = support::covering_closure(&w, &elems);
            for (i, x) in elems.iter().enumerate() {
                for (j, y) in elems.iter().enumerate() {
                    assert_eq!(
                        w.bruhat_leq(x, y),
                        closure.contains(&(i, j)),
                        "{}: {} vs {}",
                        w.datum().name(),
                        w.format_word(x),
                        w.format_word(y)
                    );
                }
            }
        }
    }
}

#[test]
fn cones_do_not_depend_on_the_word() {
    for w in small_rank_groups() {
        for x in support::elements_up_to(&w, &w.identity(), 4) {
            let (word, om) = greatest_word(&w, &x);
            assert_eq!(word_product(&w, &word, &om), x);
            assert_eq!(w.cone_from_word(&word, &om), w.lower_cone(&x));
        }
    }
}

#[test]
fn dominant_translation_lengths() {
    for rd in support::sweep_presets() {
        let w = AffineWeylGroup::new(rd.clone());
        for mu in rd.dominant_coweights(8, 2) {
            assert_eq!(w.length(&AffineElt::translation(mu.clone())) as i64, rd.two_rho_pairing(&mu));
        }
    }
}

#[test]
fn admissible_set_structure() {
    for rd in support::sweep_presets() {
        let w = AffineWeylGroup::new(rd.clone());
        for mu in support::sweep_weights(&rd) {
            let adm = w.admissible_set(&mu);
            let class = w.omega_component(&AffineElt::translation(mu.clone()));
            let top = rd.two_rho_pairing(&mu) as usize;
            let mut maximal: Vec<AffineElt> =
                adm.iter().filter(|x| !adm.iter().any(|y| *y != **x && w.bruhat_leq(x, y))).cloned().collect();
            let mut extreme: Vec<AffineElt> = rd.weyl_orbit(&mu).into_iter().map(AffineElt::translation).collect();
            maximal.sort();
            extreme.sort();
            assert_eq!(maximal, extreme, "{} {mu}", rd.name());
            for x in &adm {
                assert_eq!(w.omega_component(x), class);
                assert!(w.length(x) <= top);
            }
        }
    }
}

#[test]
fn gl4_admissible_set_brute_force() {
    let w = group(Preset::GL, 4);
    let mu = Coweight(vec![1, 1, 0, 0]);
    let om = w.reduced_word(&AffineElt::translation(mu.clone())).1;
    let extremes: Vec<AffineElt> = w.datum().weyl_orbit(&mu).into_iter().map(AffineElt::translation).collect();
    assert_eq!(extremes.len(), 6);
    let mut brute: Vec<AffineElt> = support::elements_up_to(&w, &om, 4)
        .into_iter()
        .filter(|x| extremes.iter().any(|t| w.bruhat_leq(x, t)))
        .collect();
    w.sort_elements(&mut brute);
    let adm = w.admissible_set(&mu);
    assert_eq!(adm, brute);
    // the well-known count for the Drinfeld case of GL_4, mu = (1,1,0,0)
    assert_eq!(adm.len(), 33);
}

#[test]
fn parahoric_admissible_sets_by_exhaustive_cosets() {
    let cases = [
        (Preset::GL, 2, vec![1, 0], vec![1]),
        (Preset::GL, 3, vec![1, 0, 0], vec![1]),
        (Preset::GL, 3, vec![1, 1, 0], vec![2]),
        (Preset::GL, 3, vec![1, 0, 0], vec![1, 2]),
        (Preset::Sp, 4, vec![1, 0], vec![0]),
        (Preset::GSp, 4, vec![1, 1, 1], vec![1]),
        (Preset::GSp, 4, vec![1, 1, 1], vec![0, 2]),
    ];
    for (f, n, mu, facet) in cases {
        let w = group(f, n);
        let mu = Coweight(mu);
        let facet = Facet::new(facet);
        let adm = w.admissible_set(&mu);
        let reps = w.admissible_set_parahoric(&mu, &facet).unwrap();
        assert_eq!(reps.len(), support::count_double_cosets(&w, &adm, &facet), "{} {mu}", w.datum().name());
        let wf = w.facet_elements(&facet, 1000).unwrap();
        for r in &reps {
            for u in &wf {
                for v in &wf {
                    assert!(w.length(&w.mul(&w.mul(u, r), v)) >= w.length(r));
                }
            }
        }
    }
    let gl2 = group(Preset::GL, 2);
    let reps = gl2.admissible_set_parahoric(&Coweight(vec![1, 0]), &Facet::new([1])).unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!(gl2.length(&reps[0]), 0);
}

fn elt_strategy() -> impl Strategy<Value = (usize, Vec<usize>, usize)> {
    (0usize..8, prop::collection::vec(0usize..16, 0..=6), 0usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn length_is_subadditive(a in elt_strategy(), b in elt_strategy()) {
        let groups = small_rank_groups();
        let w = &groups[a.0];
        let build = |word: &[usize], k: usize| {
            let om = if w.omega_generators().is_empty() { w.identity() } else { w.omega_generators()[k % w.omega_generators().len()].clone() };
            let word: Vec<usize> = word.iter().map(|s| s % w.num_nodes()).collect();
            word_product(w, &word, &om)
        };
        let x = build(&a.1, a.2);
        let y = build(&b.1, b.2);
        let xy = w.mul(&x, &y);
        let (lx, ly, lxy) = (w.length(&x), w.length(&y), w.length(&xy));
        prop_assert!(lxy <= lx + ly);
        prop_assert_eq!((lx + ly - lxy) % 2, 0);
        let (wx, ox) = w.reduced_word(&x);
        let (wy, oy) = w.reduced_word(&y);
        // x y = wx (ox wy ox^-1) ox oy; the concatenation is reduced iff lengths add
        let conj: Vec<usize> = wy.iter().map(|&s| w.conjugate_node(&ox, s)).collect();
        let mut concat = wx.clone();
        concat.extend(conj);
        prop_assert_eq!(word_product(w, &concat, &w.mul(&ox, &oy)), xy.clone());
        prop_assert_eq!(concat.len() == lxy, lx + ly == lxy);
        for om in w.omega_generators() {
            prop_assert_eq!(w.length(&w.mul(&w.mul(om, &x), &w.inverse(om))), lx);
        }
        let f = Facet::new([1]);
        let m = w.double_coset_min(&x, &f).unwrap();
        prop_assert!(w.length(&m) <= lx);
        prop_assert_eq!(w.inverse(&w.inverse(&x)), x);
    }
}
