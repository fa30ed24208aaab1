mod common;

use common::{families, random_element, rng};
use gwa_core::gwa::rewrite::{Letter, Rewriter};
use gwa_core::gwa::Gwa;
use proptest::prelude::*;

fn family(name: &str) -> Gwa {
    families().into_iter().find(|(n, _)| *n == name).unwrap().1
}

fn product_matches_rewriting(gwa: &Gwa, seed: u64) {
    let mut r = rng(seed);
    let a = random_element(gwa, &mut r, 3, 3);
    let b = random_element(gwa, &mut r, 3, 3);
    let naive = Rewriter::new(gwa).product(&a, &b).unwrap();
    assert_eq!(&a * &b, naive, "a = {a}, b = {b}");
}

fn associative(gwa: &Gwa, seed: u64) {
    let mut r = rng(seed);
    let a = random_element(gwa, &mut r, 3, 3);
    let b = random_element(gwa, &mut r, 3, 3);
    let c = random_element(gwa, &mut r, 3, 3);
    assert_eq!(
        &(&a * &b) * &c,
        &a * &(&b * &c),
        "a = {a}, b = {b}, c = {c}"
    );
}

macro_rules! family_suite {
    ($module:ident, $name:expr) => {
        mod $module {
            use super::*;

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(200))]
                #[test]
                fn products_match_rewriting(seed in any::<u64>()) {
                    product_matches_rewriting(&family($name), seed);
                }
            }

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(100))]
                #[test]
                fn products_are_associative(seed in any::<u64>()) {
                    associative(&family($name), seed);
                }
            }
        }
    };
}

family_suite!(weyl_1, "A_1");
family_suite!(weyl_2, "A_2");
family_suite!(quantum_plane, "quantum plane");
family_suite!(quantum_weyl_generic, "A_q1 generic");
family_suite!(quantum_weyl_root3, "A_q1 l=3");
family_suite!(smith_char_0, "Smith char 0");
family_suite!(smith_char_5, "Smith char 5");
family_suite!(quantum_smith_root3, "quantum Smith l=3");

#[test]
fn ykxl_collapse_matches_iterated_relations() {
    let mut all = families();
    all.push(("shift char 3", common::shift_char_p(3)));
    for (name, gwa) in all {
        let rw = Rewriter::new(&gwa);
        for i in 0..gwa.rank() {
            for k in 0..=5u32 {
                for l in 0..=5u32 {
                    let mut word = vec![Letter::Y(i); k as usize];
                    word.extend(std::iter::repeat_n(Letter::X(i), l as usize));
                    let naive = rw.normalize_word(&word).unwrap();
                    assert_eq!(
                        gwa.ykxl_collapse(i, k, l),
                        naive,
                        "{name}: Y_{i}^{k} X_{i}^{l}"
                    );
                }
            }
        }
    }
}

#[test]
fn printed_elements_parse_back() {
    for (name, gwa) in families() {
        let mut r = rng(7);
        for _ in 0..50 {
            let a = random_element(&gwa, &mut r, 3, 3);
            let back = gwa
                .parse(&a.to_string())
                .unwrap_or_else(|e| panic!("{name}: {a}: {e}"));
            assert_eq!(back, a, "{name}");
        }
    }
}
