mod common;

use common::{arb_code, gauss_text};
use fourmove_core::magnus::expand_word;
use fourmove_core::milnor::{
    commutator_series, commutator_word, conjugator_of, eta_series, eta_word, longitudes,
    reduced_longitude_series,
};
use fourmove_core::obstruction::{check_link, ConditionId, Verdict};
use fourmove_core::underpass::{import_gauss, parse_link_file, to_json};
use fourmove_core::{ArcRef, Meridian, UnderpassCode, Word};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn arb_perm(m: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=m).collect::<Vec<_>>()).prop_shuffle()
}

fn code_and_perm() -> impl Strategy<Value = (UnderpassCode, Vec<usize>)> {
    arb_code(3, 6).prop_flat_map(|c| {
        let m = c.m();
        (Just(c), arb_perm(m))
    })
}

proptest! {
    #[test]
    fn linking_traversals_agree(code in arb_code(4, 10)) {
        let lk = code.linking_matrix();
        for i in 1..=code.m() {
            prop_assert_eq!(lk.get(i, i), code.writhe(i).unwrap());
            for j in 1..=code.m() {
                if i != j {
                    prop_assert_eq!(lk.get(i, j), code.linking_number(i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn json_round_trip(code in arb_code(4, 10)) {
        prop_assert_eq!(parse_link_file(&to_json(&code)).unwrap(), code);
    }

    #[test]
    fn gauss_round_trip(code in arb_code(3, 8)) {
        let text = gauss_text(&code);
        prop_assert_eq!(import_gauss("random", &text).unwrap(), code, "{}", text);
    }

    #[test]
    fn permutation_permutes_linking((code, perm) in code_and_perm()) {
        let p = code.permute(&perm).unwrap();
        let (a, b) = (code.linking_matrix(), p.linking_matrix());
        for i in 1..=code.m() {
            for j in 1..=code.m() {
                prop_assert_eq!(b.get(i, j), a.get(perm[i - 1], perm[j - 1]));
            }
        }
    }

    #[test]
    fn word_images_conjugate_meridians(code in arb_code(3, 6), q in 1usize..=4) {
        let table = eta_word(&code, q).unwrap();
        for arc in code.arcs() {
            let img = table.image(arc);
            let g = Meridian(arc.component);
            prop_assert!(conjugator_of(img, g).is_some(), "{} at {:?}", img, arc);
            if arc.arc == 1 {
                prop_assert_eq!(img, &Word::gen(g));
            }
        }
    }

    #[test]
    fn longitude_exponent_sums(code in arb_code(3, 6), q in 1usize..=4) {
        let lon = longitudes(&code);
        let table = eta_word(&code, q).unwrap();
        for i in 1..=code.m() {
            let img = table.apply(&lon.longitude(i));
            for k in 1..=code.m() {
                let expected = if k == i { code.writhe(i).unwrap() } else { code.linking_number(k, i).unwrap() };
                prop_assert_eq!(img.exponent_sum(Meridian(k)), expected);
            }
        }
    }

    #[test]
    fn series_mode_matches_word_mode(code in arb_code(3, 6), q in 1usize..=4) {
        let m = code.m();
        let words = eta_word(&code, q).unwrap();
        let series = eta_series(&code, q, 4).unwrap();
        for arc in code.arcs() {
            prop_assert_eq!(&series.image(arc).value, &expand_word(words.image(arc), m, 4).unwrap());
        }
        for i in 1..=m {
            let w = commutator_word(&code, i, q).unwrap();
            prop_assert_eq!(commutator_series(&code, i, q, 4).unwrap(), expand_word(&w, m, 4).unwrap());
        }
    }

    #[test]
    fn reduced_longitude_gives_same_commutator(code in arb_code(3, 6), q in 1usize..=5) {
        for i in 1..=code.m() {
            let red = reduced_longitude_series(&code, i, q, 4).unwrap();
            let alpha = expand_word(&Word::gen(Meridian(i)), code.m(), 4).unwrap();
            let c = alpha.inverse().unwrap()
                .mul(&red.inverse().unwrap()).unwrap()
                .mul(&alpha).unwrap()
                .mul(&red).unwrap();
            prop_assert_eq!(c, commutator_series(&code, i, q, 4).unwrap());
        }
    }

    #[test]
    fn checker_reads_only_trusted_degrees(code in arb_code(3, 6), q in 5usize..=8, d in 4usize..=8) {
        let r = check_link(&code, q, Some(d)).unwrap();
        prop_assert_eq!(r.degree_bound, (q - 1).min(d));
        prop_assert!(r.max_degree_read <= r.degree_bound);
        prop_assert_eq!(r.verdict == Verdict::Obstructed, r.witnesses().next().is_some());
    }

    #[test]
    fn verdict_is_relabeling_invariant((code, perm) in code_and_perm()) {
        let a = check_link(&code, 5, None).unwrap();
        let b = check_link(&code.permute(&perm).unwrap(), 5, None).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        for k in 1..=code.m() {
            let holds = |r: &fourmove_core::obstruction::ObstructionReport, c: usize| -> Vec<bool> {
                ConditionId::ALL.iter().map(|&id| r.component(c).condition(id).holds()).collect()
            };
            prop_assert_eq!(holds(&b, k), holds(&a, perm[k - 1]));
            // new X_v is old X_{perm[v-1]}
            let relabeled: BTreeSet<Vec<usize>> = b.component(k).series.monomials()
                .map(|mono| mono.vars().iter().map(|&v| perm[v - 1]).collect())
                .collect();
            let original: BTreeSet<Vec<usize>> =
                a.component(perm[k - 1]).series.monomials().map(|mono| mono.vars().to_vec()).collect();
            prop_assert_eq!(relabeled, original);
        }
    }

    #[test]
    fn obstruction_is_monotone_in_degree(code in arb_code(3, 6)) {
        let q = 8;
        let mut seen = false;
        for d in 4..q {
            let obstructed = check_link(&code, q, Some(d)).unwrap().verdict == Verdict::Obstructed;
            prop_assert!(!seen || obstructed, "lost obstruction at D = {}", d);
            seen |= obstructed;
        }
    }
}

#[test]
fn delete_component_merges_arcs() {
    let code = UnderpassCode::new(
        "x",
        vec![
            vec![fourmove_core::UnderpassEntry::new(2, 1, fourmove_core::Sign::Plus)],
            vec![],
        ],
    )
    .unwrap();
    let rest = code.delete_component(2).unwrap();
    assert_eq!(rest.m(), 1);
    assert_eq!(rest.total_underpasses(), 0);
    assert_eq!(rest.arcs().collect::<Vec<_>>(), vec![ArcRef::new(1, 1)]);
}
