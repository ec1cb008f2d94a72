mod support;

use parahoric_core::repthy::{self, WeightMultiset};
use parahoric_core::{Preset, RootDatum, StandardLevi};

fn rank_two_data() -> Vec<RootDatum> {
    [
        (Preset::SL, 2),
        (Preset::PGL, 2),
        (Preset::GL, 2),
        (Preset::SL, 3),
        (Preset::PGL, 3),
        (Preset::GL, 3),
        (Preset::Sp, 4),
        (Preset::GSp, 4),
    ]
    .iter()
    .map(|&(f, n)| RootDatum::preset(f, n).unwrap())
    .collect()
}

fn all_mults(rd: &RootDatum, mu: &parahoric_core::Coweight) -> WeightMultiset {
    repthy::freudenthal(rd, mu).unwrap()
}

#[test]
fn freudenthal_matches_kostant() {
    for rd in rank_two_data() {
        for mu in rd.dominant_coweights(6, 2) {
            let ws = all_mults(&rd, &mu);
            let kostant = support::kostant_dominant_weights(&rd, &mu);
            let ours: Vec<(_, i64)> = ws.mults.iter().map(|(k, m)| (k.clone(), *m as i64)).collect();
            let theirs: Vec<_> = kostant.into_iter().collect();
            assert_eq!(ours, theirs, "{} {mu}", rd.name());
            // Kostant also applies off the dominant chamber
            for (l, m) in ws.all_weights(&rd) {
                assert_eq!(support::kostant_multiplicity(&rd, &mu, &l), m as i64);
            }
        }
    }
}

#[test]
fn weights_are_invariant_and_sum_to_the_dimension() {
    for rd in support::sweep_presets() {
        for mu in rd.dominant_coweights(6, 2) {
            let ws = all_mults(&rd, &mu);
            let all = ws.all_weights(&rd);
            assert_eq!(all.values().sum::<u64>(), repthy::weyl_dimension(&rd, &mu));
            for (l, m) in &all {
                for i in 0..rd.semisimple_rank() {
                    let r = rd.reflect(i, l);
                    assert_eq!(all.get(&r), Some(m));
                }
                assert_eq!(rd.omega_class(l), rd.omega_class(&mu));
                assert_eq!(rd.two_rho_pairing(l).rem_euclid(2), rd.two_rho_pairing(&mu).rem_euclid(2));
                assert!(rd.dominance_leq(&rd.dominate(l).0, &mu));
            }
            assert_eq!(repthy::parity(&rd, &mu) as i64, rd.two_rho_pairing(&mu).rem_euclid(2));
        }
    }
}

#[test]
fn branching_preserves_dimension() {
    for rd in support::sweep_presets() {
        let k = rd.semisimple_rank();
        let mut levis = vec![StandardLevi::torus(), rd.full_levi()];
        levis.extend((0..k).map(|i| StandardLevi::new([i])));
        for m in levis {
            let md = rd.levi_datum(&m).unwrap();
            for mu in rd.dominant_coweights(6, 2) {
                let b = repthy::branch_to_levi(&rd, &mu, &m).unwrap();
                let total: u64 = b.iter().map(|(l, c)| c * repthy::weyl_dimension(&md, l)).sum();
                assert_eq!(total, repthy::weyl_dimension(&rd, &mu), "{} {mu} -> {}", rd.name(), md.name());
            }
        }
    }
}
