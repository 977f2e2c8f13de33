use std::collections::BTreeSet;

use super::*;
use crate::isomind::{brute_force_iso, decide_isomorphic, verify_isomorphism, Verdict};

fn fields() -> Vec<Field> {
    vec![Field::Rationals, Field::prime(2), Field::prime(3), Field::of_order(4).unwrap(), Field::prime(5)]
}

/// Every admissible label of a family over a finite field.
fn labels(family: Family, f: &Field) -> Vec<ClassLabel> {
    let els = f.elements();
    let mut params: Vec<Vec<FieldElement>> = vec![vec![]];
    for _ in 0..family.param_count() {
        params = params.iter().flat_map(|p| els.iter().map(move |x| [p.clone(), vec![x.clone()]].concat())).collect();
    }
    params.into_iter().map(|p| ClassLabel::new(family, p, f)).filter(|l| l.check().is_ok()).collect()
}

#[test]
fn explicit_maps_are_isomorphisms() {
    for f in fields() {
        let maps = explicit_isomorphisms(&f);
        assert!(!maps.is_empty());
        let bad: Vec<&str> =
            maps.iter().filter(|m| !verify_isomorphism(&m.source, &m.target, &m.map)).map(|m| m.name.as_str()).collect();
        assert!(bad.is_empty(), "over {f}: {bad:?}");
    }
}

#[test]
fn label_text_roundtrip() {
    let f4 = Field::of_order(4).unwrap();
    for f in fields() {
        for fam in Family::ALL {
            for l in labels(fam, if f.is_finite() { &f } else { &f4 }).into_iter().take(5) {
                let back = ClassLabel::parse(&l.to_string(), &l.field).unwrap();
                assert_eq!(back, l);
            }
        }
    }
    assert!(ClassLabel::parse("M7(1)", &Field::Rationals).is_err());
    assert!(ClassLabel::parse("Q2", &Field::Rationals).is_err());
    assert_eq!(ClassLabel::parse("L3(-1/2)", &Field::Rationals).unwrap().to_string(), "L3(-1/2)");
}

#[test]
fn admissibility() {
    let q = Field::Rationals;
    let f2 = Field::prime(2);
    assert!(ClassLabel::parse("M9(0)", &q).is_err() || construct(&ClassLabel::parse("M9(0)", &q).unwrap()).is_err());
    assert!(construct(&ClassLabel::parse("M9(-1)", &q).unwrap()).is_ok());
    assert!(construct(&ClassLabel::parse("M10(1)", &q).unwrap()).is_err());
    assert!(construct(&ClassLabel::parse("M11(0,0)", &f2).unwrap()).is_err());
    assert!(construct(&ClassLabel::parse("M11(1,1)", &f2).unwrap()).is_err());
    assert!(construct(&ClassLabel::parse("N", &f2).unwrap()).is_err());
    assert!(construct(&ClassLabel::parse("M9(1)", &f2).unwrap()).is_ok());
}

#[test]
fn tables_are_solvable_lie_algebras() {
    for f in fields() {
        let els = if f.is_finite() { f.elements() } else { (-2..3).map(|k| f.from_i64(k)).collect() };
        for fam in Family::ALL {
            for a in &els {
                for b in &els {
                    let char2 = f.characteristic() == 2;
                    if (fam == Family::N && char2) || (fam == Family::M11 && !char2) {
                        continue;
                    }
                    let l = table(fam, &[a.clone(), b.clone()][..fam.param_count()], &f);
                    assert!(l.is_valid() && l.is_solvable(), "{fam} over {f}");
                }
            }
        }
    }
}

#[test]
fn identify_recovers_admissible_labels() {
    for f in fields().into_iter().filter(Field::is_finite) {
        for fam in Family::ALL {
            for l in labels(fam, &f) {
                let c = canonicalize(&l).unwrap();
                assert_eq!(c.field, f);
                // The canonical form is a fixed point.
                assert_eq!(canonicalize(&c).unwrap(), c, "{l} over {f}");
                if c.family == fam {
                    assert!(param_equivalent(&l, &c).unwrap(), "{l} vs {c} over {f}");
                }
            }
        }
    }
}

#[test]
fn identify_agrees_with_param_equivalence() {
    for f in [Field::prime(2), Field::prime(3), Field::of_order(4).unwrap(), Field::prime(5)] {
        for fam in Family::ALL {
            let ls = labels(fam, &f);
            for x in &ls {
                for y in &ls {
                    let same = canonicalize(x).unwrap() == canonicalize(y).unwrap();
                    assert_eq!(param_equivalent(x, y).unwrap(), same, "{x} {y} over {f}");
                }
            }
        }
    }
}

#[test]
fn canonical_labels_count_the_classes() {
    for q in [2u64, 3, 4, 5, 7] {
        let f = Field::of_order(q).unwrap();
        for dim in [3, 4] {
            let classes: BTreeSet<String> = Family::of_dim(dim)
                .into_iter()
                .flat_map(|fam| labels(fam, &f))
                .map(|l| canonicalize(&l).unwrap().to_string())
                .collect();
            assert_eq!(classes.len() as u64, count_classes(dim, q).unwrap(), "dim {dim} over F{q}: {classes:?}");
        }
    }
}

#[test]
fn class_counts() {
    assert_eq!(count_classes(3, 2).unwrap(), 6);
    assert_eq!(count_classes(3, 9).unwrap(), 14);
    assert_eq!(count_classes(4, 2).unwrap(), 21);
    assert_eq!(count_classes(4, 3).unwrap(), 30);
    assert_eq!(count_classes(4, 7).unwrap(), 84);
    assert!(count_classes(5, 2).is_err());
    assert!(count_classes(4, 6).is_err());
}

#[test]
fn distinct_canonical_labels_are_not_isomorphic_over_f2() {
    let f = Field::prime(2);
    let mut reps: Vec<ClassLabel> = Family::of_dim(3)
        .into_iter()
        .chain(Family::of_dim(4))
        .flat_map(|fam| labels(fam, &f))
        .map(|l| canonicalize(&l).unwrap())
        .collect();
    reps.sort_by_key(|l| l.to_string());
    reps.dedup();
    for (i, x) in reps.iter().enumerate() {
        for y in &reps[i + 1..] {
            if x.family.dim() != y.family.dim() {
                continue;
            }
            let (a, b) = (construct(x).unwrap(), construct(y).unwrap());
            assert_eq!(brute_force_iso(&a, &b).unwrap(), None, "{x} ~ {y}");
        }
    }
}

#[test]
fn exceptional_m11_members() {
    // M11 with a = 0 lies outside the family but is still recognised.
    let f = Field::of_order(4).unwrap();
    let z = f.zero();
    let l = table(Family::M11, &[z.clone(), z.clone()], &f);
    assert_eq!(identify(&l).unwrap(), ClassLabel::plain(Family::M12, &f));
    for b in f.elements().into_iter().skip(2) {
        let l = table(Family::M11, &[z.clone(), b.clone()], &f);
        let a = (&b + &f.one()) / (&b * &b);
        assert_eq!(identify(&l).unwrap(), ClassLabel::new(Family::M13, vec![a], &f));
    }
}

#[test]
fn rational_identification() {
    let q = Field::Rationals;
    let canon = |t: &str| canonicalize(&ClassLabel::parse(t, &q).unwrap()).unwrap().to_string();
    assert_eq!(canon("L4(8)"), "L4(2)");
    assert_eq!(canon("L4(-1/3)"), "L4(-3)");
    assert_eq!(canon("M14(9/4)"), "M14(1)");
    assert_eq!(canon("M7(16,0)"), "M7(2,0)");
    assert_eq!(canon("M7(-1/2,0)"), "M7(4,0)");
    assert_eq!(canon("M7(0,12)"), "M7(0,3)");
    assert_eq!(canon("M7(2,3)"), "M7(27/4,27/4)");
    assert_eq!(canon("M3(5)"), "M3(5)");
    // T^2 - T - a with discriminant 1 + 4a; 1 + 4(1) = 5 is not a square.
    assert_eq!(canon("M9(1)"), "M9(1)");
    assert_eq!(canon("M9(11)"), "M9(1)");
    assert_eq!(canon("N"), "M13(0)");
    assert_eq!(identify(&table(Family::M9, &[q.from_ratio(-1, 4).unwrap()], &q)).unwrap().to_string(), "M13(0)");
    let l = |t: &str| construct(&ClassLabel::parse(t, &q).unwrap()).unwrap();
    assert_eq!(decide_isomorphic(&l("M14(8)"), &l("M14(2)")).verdict, Verdict::Isomorphic);
    assert_eq!(decide_isomorphic(&l("M9(1)"), &l("M9(11)")).verdict, Verdict::Isomorphic);
}

#[test]
fn rejects_unsupported_input() {
    let q = Field::Rationals;
    assert_eq!(identify(&LieAlgebra::abelian(&q, 5)), Err(CatalogError::UnsupportedDim(5)));
    // sl2 is not solvable.
    let sl2 = LieAlgebra::abelian(&q, 3).with(3, 1, &[(1, q.from_i64(2))]).with(3, 2, &[(2, q.from_i64(-2))]).with(1, 2, &[(3, q.one())]);
    assert_eq!(identify(&sl2), Err(CatalogError::NotSolvable));
}

#[test]
fn n_is_m13_zero_in_characteristic_three() {
    let f = Field::prime(3);
    let n = construct(&ClassLabel::plain(Family::N, &f)).unwrap();
    let m = construct(&ClassLabel::new(Family::M13, vec![f.zero()], &f)).unwrap();
    let w = brute_force_iso(&m, &n).unwrap().unwrap();
    assert!(verify_isomorphism(&m, &n, &w));
}
