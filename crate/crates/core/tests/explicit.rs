mod common;

use common::{modulus, multisets, partitions};
use superchar::certificates::perturb_labels;
use superchar::engine::{expand, restrict};
use superchar::explicit::{explicit_trivial_coefficient, mixed_label_trivial_coefficient};
use superchar::{ArcMultiset, Error, NodeSet};

#[test]
fn half_in_formula_matches_oracle() {
    for (q, max_n) in [(2u32, 6u32), (3, 5)] {
        let mut checked = 0;
        for n in 0..=max_n {
            let l = NodeSet::interval(1, n);
            for lambda in partitions(&l, q) {
                for k in l.subsets() {
                    match explicit_trivial_coefficient(&lambda, &k, &l) {
                        Ok(v) => {
                            assert_eq!(
                                v,
                                restrict(&lambda, &k, &l).unwrap().trivial_coefficient(),
                                "λ={lambda} K={k}"
                            );
                            checked += 1;
                        }
                        Err(Error::Hypothesis(_)) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
        assert!(checked > 100);
    }
}

#[test]
fn mixed_label_formula_matches_oracle() {
    for q in [2u32, 3] {
        for n in 1..=4 {
            let k = NodeSet::interval(1, n);
            for lambda in multisets(&k, q, 4) {
                let mixed = perturb_labels(&lambda, &k)
                    .iter()
                    .all(|l| l.left_label != l.right_label);
                match mixed_label_trivial_coefficient(&lambda, &k) {
                    Ok(v) => {
                        assert!(mixed);
                        assert_eq!(v, expand(&lambda, &k).unwrap().trivial_coefficient(), "λ={lambda}");
                    }
                    Err(_) => assert!(!mixed),
                }
            }
        }
    }
}

#[test]
fn non_power_case_is_rejected() {
    for q in [3u32, 5] {
        let k = NodeSet::interval(1, 5);
        let b = q - 2;
        let lambda = ArcMultiset::parse(modulus(q), k.clone(), &format!("1-1-5,1-1-5,1-{b}-5")).unwrap();
        assert_eq!(expand(&lambda, &k).unwrap().trivial_coefficient(), 3 * q as u128 - 2);
        assert!(mixed_label_trivial_coefficient(&lambda, &k).is_err());
        assert!(superchar::QSetPartition::new(lambda).is_err());
    }
}
