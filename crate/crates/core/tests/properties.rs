use std::path::Path;

use proptest::prelude::*;

use vfree::alphabet::Word;
use vfree::bounds::{grammar_bounds, presentation_bounds, Value};
use vfree::files::{load_gog, load_presentation};
use vfree::fingroup::FiniteGroupTable;
use vfree::gog::build;
use vfree::slide::{apply_slide, enumerate_slides, gog_equivalent, invariants};
use vfree::vfpres::{strategy_by_name, VfPresentation};

fn pres(name: &str) -> VfPresentation {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    load_presentation(&path).unwrap()
}

fn word(p: &VfPresentation, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..p.sigma().len(), 0..=max_len)
}

fn exact(v: &Value) -> num_bigint::BigUint {
    v.exact().cloned().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_form_is_idempotent(w in word(&pres("z2z3.json"), 16)) {
        let p = pres("z2z3.json");
        let nf = p.normal_form(&w);
        prop_assert_eq!(p.normal_form(&p.nf_word(&nf)), nf);
    }

    #[test]
    fn word_times_inverse_is_trivial(w in word(&pres("z2z3.json"), 16)) {
        let p = pres("z2z3.json");
        let mut ww = w.clone();
        ww.extend(p.inverse_word(&w));
        prop_assert!(p.word_problem(&ww));
    }

    #[test]
    fn normal_form_is_multiplicative(
        u in word(&pres("dinf.json"), 10),
        v in word(&pres("dinf.json"), 10),
    ) {
        let p = pres("dinf.json");
        let mut uv = p.nf_word(&p.normal_form(&u));
        uv.extend(&v);
        let mut direct = u.clone();
        direct.extend(&v);
        prop_assert_eq!(p.normal_form(&uv), p.normal_form(&direct));
    }

    #[test]
    fn rewriting_strategies_agree(w in word(&pres("z2z3.json"), 10), seed in any::<u64>()) {
        let p = pres("z2z3.json");
        let nf = p.nf_word(&p.normal_form(&w));
        for name in ["leftmost", "rightmost", "random"] {
            let mut s = strategy_by_name(name, seed).unwrap();
            let out = p.rewrite_to_normal(&w, s.as_mut(), 100_000).unwrap();
            prop_assert_eq!(&out, &nf, "{}", name);
        }
    }

    #[test]
    fn wp_pda_matches_normal_form(w in word(&pres("z2z3.json"), 12)) {
        let p = pres("z2z3.json");
        prop_assert_eq!(p.wp_pda().run_deterministic(&w, 4096), Some(p.word_problem(&w)));
    }

    #[test]
    fn presentation_bound_relations(n in 1u64..5000) {
        let b = presentation_bounds(n, 4, 2);
        let k = exact(&b.k);
        let big_k = exact(&b.big_k);
        let r = exact(&b.r);
        // R = ⌈3kK/2⌉
        let three_k_k = &k * &big_k * 3u32;
        prop_assert!(&r * 2u32 >= three_k_k && &r * 2u32 <= &three_k_k + 1u32);
        // Λ < phi_len / 2 + 1
        prop_assert!(exact(&b.lambda) * 2u32 < exact(&b.phi_len) + 2u32);
    }

    #[test]
    fn grammar_bound_relations(p in 0usize..6, d in 1usize..4) {
        let b = grammar_bounds(p, d, 10);
        let k = exact(&b.k);
        prop_assert_eq!(&k, &(num_bigint::BigUint::from(1u32) << p));
        let three_k_k = &k * exact(&b.big_k) * 3u32;
        let r = exact(&b.r);
        prop_assert!(&r * 2u32 >= three_k_k && &r * 2u32 <= &three_k_k + 1u32);
        prop_assert!(exact(&b.lambda) * 2u32 < exact(&b.phi_len) + 2u32);
    }

    #[test]
    fn slides_preserve_invariants(orders in prop::collection::vec(1usize..=4, 2..=4), pick in any::<prop::sample::Index>()) {
        let groups: Vec<FiniteGroupTable> =
            orders.iter().map(|&n| FiniteGroupTable::cyclic(n)).collect();
        let names = ["P", "Q", "R", "S"];
        let g = build::path(&names[..orders.len()], &groups);
        let moves = enumerate_slides(&g);
        prop_assume!(!moves.is_empty());
        let m = &moves[pick.index(moves.len())];
        if let Ok(h) = apply_slide(&g, m) {
            prop_assert_eq!(invariants(&h), invariants(&g));
            prop_assert_eq!(gog_equivalent(&g, &h), gog_equivalent(&h, &g));
        }
    }
}

#[test]
fn equivalence_is_reflexive_and_symmetric() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let names = [
        "seg22.json",
        "seg23.json",
        "path235.json",
        "path253.json",
        "path222.json",
    ];
    let gs: Vec<_> = names
        .iter()
        .map(|n| load_gog(&data.join(n)).unwrap())
        .collect();
    for a in &gs {
        assert!(gog_equivalent(a, a));
        for b in &gs {
            assert_eq!(gog_equivalent(a, b), gog_equivalent(b, a));
        }
    }
}
