use std::sync::Arc;

use super::*;
use crate::field::Field;

const VARS: [&str; 11] = ["D1", "D2", "a1", "a2", "a3", "b1", "b2", "c1", "c2", "a", "b"];
const SYSTEM: [&str; 6] = [
    "b*a3*b2 - b1",
    "a3*b1 + a3*b2 - b2",
    "b*a3*c2 - a*c1",
    "a3*c1 + a3*c2 - a*c2",
    "D1*a3 - 1",
    "D2*(b1*c2 - b2*c1) - 1",
];

fn system(field: &Field) -> (Arc<PolyRing>, Vec<MultiPoly>) {
    let ring = PolyRing::new(field, &VARS);
    let gens = SYSTEM.iter().map(|s| MultiPoly::parse(&ring, s).unwrap()).collect();
    (ring, gens)
}

fn assert_s_pairs_reduce(g: &GroebnerBasis) {
    let one = g.ring.field().one();
    for (i, f) in g.basis.iter().enumerate() {
        for h in &g.basis[i + 1..] {
            let l = poly::lcm(f.leading_monomial().unwrap(), h.leading_monomial().unwrap());
            let s = f
                .mul_term(&poly::quotient(&l, f.leading_monomial().unwrap()), &one)
                .sub(&h.mul_term(&poly::quotient(&l, h.leading_monomial().unwrap()), &one));
            assert!(reduce(&s, g).unwrap().is_zero());
        }
    }
}

fn assert_reduced(g: &GroebnerBasis) {
    for (i, f) in g.basis.iter().enumerate() {
        assert!(f.leading_coeff().unwrap().is_one());
        for (j, h) in g.basis.iter().enumerate() {
            if i != j {
                let lm = f.leading_monomial().unwrap();
                assert!(h.terms().iter().all(|(m, _)| !poly::divides(lm, m)));
            }
        }
    }
}

#[test]
fn linear_triangulation() {
    let ring = PolyRing::new(&Field::Rationals, &["x", "y"]);
    let gens = vec![MultiPoly::parse(&ring, "x - 1").unwrap(), MultiPoly::parse(&ring, "y - x").unwrap()];
    let g = buchberger(&gens, false);
    let text: Vec<String> = g.basis.iter().map(ToString::to_string).collect();
    assert_eq!(text, ["x - 1", "y - 1"]);
}

#[test]
fn degenerate_inputs() {
    let ring = PolyRing::new(&Field::Rationals, &["x"]);
    let g = buchberger_in(&ring, &[], GbOptions::default()).unwrap();
    assert!(g.basis.is_empty());
    let g = buchberger(&[MultiPoly::parse(&ring, "x^2").unwrap(), MultiPoly::parse(&ring, "3").unwrap()], false);
    assert!(g.is_unit());
}

#[test]
fn iso_system_basis() {
    let (ring, gens) = system(&Field::Rationals);
    let g = buchberger(&gens, false);
    assert_reduced(&g);
    assert_s_pairs_reduce(&g);
    let target = MultiPoly::parse(&ring, "a^2*b + 2*a*b + a + b").unwrap();
    assert!(g.basis.contains(&target));
    let d1 = MultiPoly::parse(&ring, "D1 - a*b - b - 1").unwrap();
    assert!(reduce(&d1, &g).unwrap().is_zero());
    for gen in &gens {
        assert!(reduce(gen, &g).unwrap().is_zero());
    }
}

#[test]
fn specialization_gives_unit_ideal() {
    let (ring, gens) = system(&Field::Rationals);
    let a = ring.var_index("a").unwrap();
    let one = Field::Rationals.one();
    let special: Vec<MultiPoly> = gens.iter().map(|g| g.substitute(a, &one)).collect();
    let g = buchberger(&special, false);
    assert!(g.is_unit());
    assert!(reduce(&MultiPoly::one(&ring), &g).unwrap().is_zero());
}

#[test]
fn coordinate_identity_transfers() {
    let (ring, gens) = system(&Field::Rationals);
    let g = buchberger(&gens, true);
    let target = MultiPoly::parse(&ring, "a^2*b + 2*a*b + a + b").unwrap();
    let p = coordinates(&g, &target).unwrap();
    assert_eq!(expand(&p, &gens), target);
    let bad = bad_characteristics(&p);
    for q in [2, 3, 5, 7] {
        if bad.contains(&q) {
            continue;
        }
        let r = ring.with_field(&Field::prime(q));
        let pm: Vec<MultiPoly> = p.iter().map(|x| x.map_to_ring(&r).unwrap()).collect();
        let gm: Vec<MultiPoly> = gens.iter().map(|x| x.map_to_ring(&r).unwrap()).collect();
        assert_eq!(expand(&pm, &gm), target.map_to_ring(&r).unwrap());
    }
}

#[test]
fn coordinates_trivial_cases() {
    let (ring, gens) = system(&Field::Rationals);
    let g = buchberger(&gens, true);
    let p = coordinates(&g, &gens[0]).unwrap();
    assert_eq!(expand(&p, &gens), gens[0]);
    let z = coordinates(&g, &MultiPoly::zero(&ring)).unwrap();
    assert!(z.iter().all(MultiPoly::is_zero));
    assert_eq!(coordinates(&g, &MultiPoly::parse(&ring, "a").unwrap()), Err(GroebnerError::NotInIdeal));
    let untracked = buchberger(&gens, false);
    assert_eq!(coordinates(&untracked, &gens[0]), Err(GroebnerError::TrackingDisabled));
}

#[test]
fn bad_characteristic_examples() {
    let ring = PolyRing::new(&Field::Rationals, &["x"]);
    assert!(bad_characteristics(&[MultiPoly::parse(&ring, "3*x - 2").unwrap()]).is_empty());
    let q = MultiPoly::parse(&ring, "x/4").unwrap();
    assert_eq!(bad_characteristics(&[q]).into_iter().collect::<Vec<_>>(), [2]);
    let r = MultiPoly::parse(&ring, "x/6 + 3/10").unwrap();
    assert_eq!(bad_characteristics(&[r]).into_iter().collect::<Vec<_>>(), [2, 3, 5]);
}

#[test]
fn permuted_generators_same_basis() {
    let (_, mut gens) = system(&Field::Rationals);
    let g1 = buchberger(&gens, false);
    gens.reverse();
    let g2 = buchberger(&gens, false);
    assert_eq!(g1.basis, g2.basis);
}

#[test]
fn finite_field_system() {
    let (_, gens) = system(&Field::prime(5));
    let g = buchberger(&gens, false);
    assert_reduced(&g);
    assert_s_pairs_reduce(&g);
}

#[test]
fn budget_aborts() {
    let (_, gens) = system(&Field::Rationals);
    let r = buchberger_with(&gens, GbOptions { track: false, max_pairs: Some(1) });
    assert_eq!(r.err(), Some(GroebnerError::Budget));
}
