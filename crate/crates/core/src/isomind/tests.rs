use super::*;
use crate::field::{Field, FieldElement};
use crate::groebner::{buchberger, MultiPoly};

fn worked_pair() -> (SymbolicAlgebra, SymbolicAlgebra) {
    let q = Field::Rationals;
    let l1 = SymbolicAlgebra::new(&q, 3, &["a"]).with(1, 2, &[(2, "1")]).with(1, 3, &[(3, "a")]);
    let l2 = SymbolicAlgebra::new(&q, 3, &["b"]).with(3, 1, &[(2, "1")]).with(3, 2, &[(1, "b"), (2, "1")]);
    (l1, l2)
}

fn concrete(a: FieldElement, b: FieldElement) -> (LieAlgebra, LieAlgebra) {
    let (l1, l2) = worked_pair();
    (l1.specialize(&[a]), l2.specialize(&[b]))
}

#[test]
fn worked_system_generators() {
    let (l1, l2) = worked_pair();
    let sys = build_iso_system_symbolic(&l1, &l2, true).unwrap();
    assert_eq!(sys.ring.vars(), ["D1", "D2", "a1", "a2", "a3", "b1", "b2", "c1", "c2", "a", "b"]);
    let expect: Vec<MultiPoly> = [
        "b*a3*b2 - b1",
        "a3*b1 + a3*b2 - b2",
        "b*a3*c2 - a*c1",
        "a3*c1 + a3*c2 - a*c2",
        "D1*a3 - 1",
        "D2*(b1*c2 - b2*c1) - 1",
    ]
    .iter()
    .map(|s| MultiPoly::parse(&sys.ring, s).unwrap())
    .collect();
    assert_eq!(sys.generators, expect);
}

#[test]
fn abelian_system_is_only_invertibility() {
    let f = Field::prime(3);
    let l = LieAlgebra::abelian(&f, 2);
    let sys = build_iso_system(&l, &l, true).unwrap();
    assert_eq!(sys.generators.len(), 1);
    let point_vars = sys.ring.nvars();
    let mut point = vec![f.zero(); point_vars];
    point[0] = f.one();
    point[sys.entries[0][0].unwrap()] = f.one();
    point[sys.entries[1][1].unwrap()] = f.one();
    assert!(sys.generators[0].eval(&point).is_zero());
}

#[test]
fn two_dim_nonabelian_vs_abelian_is_unit() {
    let q = Field::Rationals;
    let l1 = LieAlgebra::abelian(&q, 2).with(1, 2, &[(2, q.one())]);
    let l2 = LieAlgebra::abelian(&q, 2);
    let sys = build_iso_system(&l1, &l2, false).unwrap();
    assert!(buchberger(&sys.generators, false).is_unit());
    assert_eq!(decide_isomorphic(&l1, &l2).verdict, Verdict::NotIsomorphic);
}

#[test]
fn identical_algebras() {
    let q = Field::Rationals;
    let (l1, _) = concrete(q.from_i64(3), q.zero());
    let r = decide_isomorphic(&l1, &l1);
    assert_eq!(r.verdict, Verdict::Isomorphic);
    assert!(verify_isomorphism(&l1, &l1, r.witness.as_ref().unwrap()));
}

#[test]
fn parameter_one_not_isomorphic() {
    let q = Field::Rationals;
    for b in [q.from_ratio(-1, 4).unwrap(), q.from_i64(3), q.zero()] {
        let (l1, l2) = concrete(q.one(), b);
        assert_eq!(decide_isomorphic(&l1, &l2).verdict, Verdict::NotIsomorphic);
    }
}

#[test]
fn relation_gives_isomorphism() {
    let q = Field::Rationals;
    for a in [2i64, 3, -3, 5] {
        let a = q.from_i64(a);
        let b = -(&a / &((&a + &q.one()) * (&a + &q.one())));
        let (l1, l2) = concrete(a, b);
        let r = decide_isomorphic(&l1, &l2);
        assert_eq!(r.verdict, Verdict::Isomorphic);
        assert!(verify_isomorphism(&l1, &l2, r.witness.as_ref().unwrap()));
    }
    // Off the curve there is no isomorphism.
    let (l1, l2) = concrete(q.from_i64(2), q.from_i64(1));
    assert_eq!(decide_isomorphic(&l1, &l2).verdict, Verdict::NotIsomorphic);
}

#[test]
fn published_witness() {
    let q = Field::Rationals;
    let a = q.from_i64(2);
    let b = q.from_ratio(-2, 9).unwrap();
    let (l1, l2) = concrete(a.clone(), b.clone());
    let one = q.one();
    let a3 = &a + &one;
    let b1 = &(&a * &b) + &b;
    let c1 = &b1 + &one;
    let phi = Matrix::from_rows(
        &q,
        vec![vec![q.zero(), b1.clone(), c1], vec![q.zero(), one.clone(), -&one], vec![a3, q.zero(), q.zero()]],
    );
    assert!(verify_isomorphism(&l1, &l2, &phi));
    assert!(!verify_isomorphism(&l1, &l2, &Matrix::identity(&q, 3)));
}

#[test]
fn brute_force_finds_base_change() {
    let f = Field::prime(3);
    let l = LieAlgebra::abelian(&f, 3).with(3, 1, &[(2, f.one())]).with(3, 2, &[(1, f.from_i64(2)), (2, f.one())]);
    let p = Matrix::from_i64(&f, &[&[1, 2, 0], &[0, 1, 1], &[1, 0, 2]]);
    let m = l.base_change(&p).unwrap();
    let w = brute_force_iso(&l, &m).unwrap().unwrap();
    assert!(verify_isomorphism(&l, &m, &w));
}

#[test]
fn brute_force_separates() {
    let f = Field::prime(2);
    let l2 = LieAlgebra::abelian(&f, 3).with(3, 1, &[(1, f.one())]).with(3, 2, &[(2, f.one())]);
    let l3 = LieAlgebra::abelian(&f, 3).with(3, 1, &[(2, f.one())]).with(3, 2, &[(2, f.one())]);
    assert_eq!(brute_force_iso(&l2, &l3).unwrap(), None);
    assert_eq!(decide_isomorphic(&l2, &l3).verdict, Verdict::NotIsomorphic);
    assert_eq!(brute_force_iso(&l2, &l2.clone()).unwrap().is_some(), true);
}

#[test]
fn brute_force_limits() {
    let q = Field::Rationals;
    let l = LieAlgebra::abelian(&q, 2);
    assert_eq!(brute_force_iso(&l, &l), Err(IsoError::NotFinite));
    let f = Field::prime(7);
    let l = LieAlgebra::abelian(&f, 4);
    assert_eq!(brute_force_iso(&l, &l), Err(IsoError::TooLarge));
}

#[test]
fn rational_square_classes() {
    // [x3,x1]=x2, [x3,x2]=c x1: classes are c modulo squares.
    let q = Field::Rationals;
    let l4 = |c: i64| LieAlgebra::abelian(&q, 3).with(3, 1, &[(2, q.one())]).with(3, 2, &[(1, q.from_i64(c))]);
    assert_eq!(decide_isomorphic(&l4(1), &l4(4)).verdict, Verdict::Isomorphic);
    assert_eq!(decide_isomorphic(&l4(1), &l4(2)).verdict, Verdict::NotIsomorphic);
}

#[test]
fn finite_field_agreement_small() {
    let f = Field::prime(3);
    let l4 = |c: i64| LieAlgebra::abelian(&f, 3).with(3, 1, &[(2, f.one())]).with(3, 2, &[(1, f.from_i64(c))]);
    for (a, b) in [(1, 2), (1, 1), (0, 1), (2, 2)] {
        let d = decide_isomorphic(&l4(a), &l4(b));
        let brute = brute_force_iso(&l4(a), &l4(b)).unwrap();
        assert_eq!(d.verdict == Verdict::Isomorphic, brute.is_some());
        assert_ne!(d.verdict, Verdict::Undecided);
    }
}
