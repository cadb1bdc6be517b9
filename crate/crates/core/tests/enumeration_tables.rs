use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rookpart::congruence::{enumerate_quotient, verify_presentation, Options, Strategy, VerifyOptions};
use rookpart::enumeration::{all_rook_partitions, closure_of_tokens};
use rookpart::presentation::Family;
use rookpart::words::evaluate;
use rookpart::{instantiate, Alphabet, Presentation, Preset, RookPartition, Word};

#[test]
fn witnesses_and_right_action_agree_with_products() {
    for (alphabet, monoid) in [(Alphabet::Seqo, true), (Alphabet::Eto, false), (Alphabet::Sceqo, true)] {
        let n = 3;
        let table = closure_of_tokens(n, &alphabet.generators(n), monoid, usize::MAX).unwrap();
        for (i, d) in table.elements().iter().enumerate() {
            let witness = table.witness_string(i);
            let w = Word::parse(alphabet, &witness).unwrap();
            assert_eq!(evaluate(n, &w).unwrap(), *d, "{witness}");
            for (g, gen) in table.generators().iter().enumerate() {
                assert_eq!(table.elements()[table.right_action(i, g)], d.product(gen));
            }
        }
    }
}

#[test]
fn singular_part_is_an_ideal() {
    let n = 3;
    let singular = closure_of_tokens(n, &Alphabet::Eto.generators(n), false, usize::MAX).unwrap();
    let all = all_rook_partitions(n);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20_000 {
        let s = &singular.elements()[rng.gen_range(0..singular.len())];
        let x = &all[rng.gen_range(0..all.len())];
        assert!(singular.position(&s.product(x)).is_some());
        assert!(singular.position(&x.product(s)).is_some());
    }
}

#[test]
fn export_formats() {
    let table = closure_of_tokens(1, &Alphabet::Seqo.generators(1), true, 100).unwrap();
    let elements = table.export_elements();
    assert_eq!(elements.lines().count(), 5);
    assert!(elements.starts_with("0\tn=1; 1,1'\t1\n"));
    for line in table.export_cayley().lines() {
        assert_eq!(line.split('\t').count(), 3);
    }
}

#[test]
fn both_strategies_agree_on_every_preset() {
    for family in Family::ALL {
        for n in 2..=3 {
            let Ok(p) = instantiate(Preset { family, twisted: false }, n) else {
                continue;
            };
            let sizes: Vec<usize> = [Strategy::Felsch, Strategy::Hlt]
                .into_iter()
                .map(|strategy| {
                    enumerate_quotient(
                        &p,
                        &Options {
                            strategy,
                            cap: 200_000,
                            lookahead: true,
                        },
                    )
                    .unwrap()
                    .len()
                })
                .collect();
            assert_eq!(sizes[0], sizes[1], "{} n={n}", p.id);
        }
    }
}

#[test]
fn abstract_class_words_evaluate_consistently() {
    let p = instantiate("R18-43".parse().unwrap(), 2).unwrap();
    let table = enumerate_quotient(&p, &Options::default()).unwrap();
    let images = p.generator_images().unwrap();
    let mut seen: Vec<RookPartition> = Vec::new();
    for class in 0..table.len() {
        let value = table
            .class_word(class)
            .iter()
            .fold(RookPartition::identity(2), |acc, &g| acc.product(&images[g as usize]));
        assert!(!seen.contains(&value), "two classes evaluate to {value}");
        seen.push(value);
    }
    assert_eq!(seen.len(), 52);
}

#[test]
fn user_presentation_of_a_small_monoid() {
    // with only s² = 1 and e² = e the quotient is infinite
    let text = "kind=monoid; alphabet=s1,e1; n=2\nrel: s1 s1 = 1\nrel: e1 e1 = e1 # idempotent\n";
    let p = Presentation::parse_text(text, None).unwrap();
    let r = verify_presentation(
        &p,
        &VerifyOptions {
            cap: Some(10_000),
            ..VerifyOptions::default()
        },
    );
    assert!(r.is_err(), "infinite quotient should exceed the cap");
    let full = "kind=monoid; alphabet=s1,e1; n=2\nrel: s1 s1 = 1\nrel: e1 e1 = e1\nrel: e1 s1 e1 s1 = s1 e1 s1 e1\nrel: e1 s1 e1 e1 = e1 s1 e1\nrel: e1 s1 e1 s1 e1 = e1 s1 e1\n";
    let p = Presentation::parse_text(full, None).unwrap();
    let r = verify_presentation(&p, &VerifyOptions::default()).unwrap();
    assert!(r.sound);
    assert_eq!(r.concrete_size, 7);
}
