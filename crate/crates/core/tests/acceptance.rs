//! End-to-end checks, one test per criterion. Each prints a PASS or FAIL
//! line (visible with `--nocapture`) before asserting.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use solvlie::catalog::{canonicalize, construct, explicit_isomorphisms, identify, ClassLabel, Family};
use solvlie::enumerate::{aut_group, census, classify_extensions, extension_isomorphism};
use solvlie::field::{artin_schreier_solvable, Field, FieldElement};
use solvlie::groebner::{bad_characteristics, buchberger, coordinates, expand, reduce, GroebnerBasis, MultiPoly};
use solvlie::isomind::{
    brute_force_iso, build_iso_system_symbolic, decide_isomorphic, verify_isomorphism, IsoSystem, SymbolicAlgebra, Verdict,
};
use solvlie::linalg::{invariant_factors, rcf};
use solvlie::{LieAlgebra, Matrix};

fn report(n: u32, what: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} criterion {n}: {what}{}", if detail.is_empty() { String::new() } else { format!(" ({detail})") });
}

fn worked_pair() -> (SymbolicAlgebra, SymbolicAlgebra) {
    let q = Field::Rationals;
    let l1 = SymbolicAlgebra::new(&q, 3, &["a"]).with(1, 2, &[(2, "1")]).with(1, 3, &[(3, "a")]);
    let l2 = SymbolicAlgebra::new(&q, 3, &["b"]).with(3, 1, &[(2, "1")]).with(3, 2, &[(1, "b"), (2, "1")]);
    (l1, l2)
}

fn worked_system(track: bool) -> (IsoSystem, GroebnerBasis) {
    let (l1, l2) = worked_pair();
    let sys = build_iso_system_symbolic(&l1, &l2, true).unwrap();
    let g = buchberger(&sys.generators, track);
    (sys, g)
}

#[test]
fn criterion_1_worked_example_basis() {
    let start = Instant::now();
    let (sys, g) = worked_system(false);
    let target = MultiPoly::parse(&sys.ring, "a^2*b + 2*a*b + a + b").unwrap();
    let d1 = MultiPoly::parse(&sys.ring, "D1 - a*b - b - 1").unwrap();
    let in_ideal = reduce(&target, &g).unwrap().is_zero();
    let listed = g.basis.contains(&target);
    let d1_zero = reduce(&d1, &g).unwrap().is_zero();
    let fast = start.elapsed() < Duration::from_secs(10);
    let ok = in_ideal && listed && d1_zero && fast;
    report(1, "worked example Groebner basis", ok, &format!("{} basis elements, {:?}", g.basis.len(), start.elapsed()));
    assert!(ok);
}

#[test]
fn criterion_2_specialisation() {
    let start = Instant::now();
    let q = Field::Rationals;
    let (sys, _) = worked_system(false);
    let a = sys.ring.var_index("a").unwrap();
    let special: Vec<MultiPoly> = sys.generators.iter().map(|p| p.substitute(a, &q.one())).collect();
    let unit = buchberger(&special, false).is_unit();

    let (l1, l2) = worked_pair();
    let (av, bv) = (q.from_i64(2), q.from_ratio(-2, 9).unwrap());
    let (m1, m2) = (l1.specialize(&[av.clone()]), l2.specialize(&[bv.clone()]));
    let verdict = decide_isomorphic(&m1, &m2).verdict;
    let one = q.one();
    let a3 = &av + &one;
    let b1 = &(&av * &bv) + &bv;
    let c1 = &b1 + &one;
    let phi = Matrix::from_rows(&q, vec![vec![q.zero(), b1, c1], vec![q.zero(), one.clone(), -&one], vec![a3, q.zero(), q.zero()]]);
    let witness_ok = verify_isomorphism(&m1, &m2, &phi);
    let ok = unit && verdict == Verdict::Isomorphic && witness_ok && start.elapsed() < Duration::from_secs(10);
    report(2, "specialisations a=1 and (a,b)=(2,-2/9)", ok, &format!("unit={unit}, verdict={verdict:?}, witness={witness_ok}"));
    assert!(ok);
}

#[test]
fn criterion_3_characteristic_transfer() {
    let start = Instant::now();
    let (sys, g) = worked_system(true);
    let target = MultiPoly::parse(&sys.ring, "a^2*b + 2*a*b + a + b").unwrap();
    let p = coordinates(&g, &target).unwrap();
    let exact = expand(&p, &sys.generators) == target;
    let bad = bad_characteristics(&p);
    let mut transfers = true;
    for prime in [2, 3, 5, 7] {
        let r = sys.ring.with_field(&Field::prime(prime));
        let (Some(pm), Some(gm), Some(tm)) = (
            p.iter().map(|x| x.map_to_ring(&r)).collect::<Option<Vec<_>>>(),
            sys.generators.iter().map(|x| x.map_to_ring(&r)).collect::<Option<Vec<_>>>(),
            target.map_to_ring(&r),
        ) else {
            transfers = false;
            continue;
        };
        transfers &= expand(&pm, &gm) == tm;
    }
    let ok = exact && bad.is_empty() && transfers && start.elapsed() < Duration::from_secs(30);
    report(3, "coordinate identity holds in every characteristic", ok, &format!("bad characteristics {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_4_census_counts() {
    let mut ok = true;
    let mut detail = Vec::new();
    for (dim, q, expected) in [(3, 2, 6), (3, 3, 8), (3, 4, 8), (3, 5, 10), (4, 2, 21)] {
        let start = Instant::now();
        let c = census(dim, q, None).unwrap();
        let limit = Duration::from_secs(if dim == 3 { 60 } else { 900 });
        let spot = c.spot_check(10).unwrap();
        let good = c.classes() == expected && c.expected().unwrap() == expected as u64 && spot.is_empty() && start.elapsed() < limit;
        detail.push(format!("({dim},{q})={} in {:.1?}", c.classes(), start.elapsed()));
        ok &= good;
    }
    report(4, "census counts", ok, &detail.join(", "));
    assert!(ok);
}

#[test]
fn criterion_5_explicit_isomorphisms() {
    let start = Instant::now();
    let mut ok = true;
    let mut failed = Vec::new();
    let mut names = BTreeSet::new();
    for (tag, f) in [("Q", Field::Rationals), ("F2", Field::prime(2)), ("F3", Field::prime(3)), ("F4", Field::of_order(4).unwrap())] {
        for m in explicit_isomorphisms(&f) {
            if !verify_isomorphism(&m.source, &m.target, &m.map) {
                failed.push(format!("{} over {f}", m.name));
            }
            names.insert(format!("{tag}: {}", m.name.split(" -> ").next().unwrap().split('(').next().unwrap()));
            names.insert(format!("{tag}: {}", m.name));
        }
    }
    ok &= failed.is_empty();
    let required = [
        "Q: M10(0) -> M9",
        "Q: M10(1) -> M9",
        "Q: M10(2) -> M9",
        "Q: M13(0) -> N",
        "Q: M7(0,0) -> M14(0)",
        "F3: M7(0,0) -> M14(0)",
        "F2: K",
        "F4: K",
        "F2: M10",
        "F4: M10",
        "F4: M11",
        "F2: M10(1) -> M13(0)",
    ];
    let missing: Vec<&str> = required.iter().copied().filter(|r| !names.contains(*r)).collect();
    let f4 = Field::of_order(4).unwrap();
    let m10_to_m13_f4 = explicit_isomorphisms(&f4).iter().filter(|m| m.name.ends_with("-> M13(0)") && m.name.starts_with("M10")).count();
    ok &= missing.is_empty() && m10_to_m13_f4 == 3 && start.elapsed() < Duration::from_secs(60);
    report(5, "explicit isomorphisms verify", ok, &format!("failed {failed:?}, missing {missing:?}"));
    assert!(ok);
}

/// Every admissible label of the given families over a finite field.
fn all_labels(families: &[Family], f: &Field) -> Vec<ClassLabel> {
    let els = f.elements();
    let mut out = Vec::new();
    for &fam in families {
        let mut params: Vec<Vec<FieldElement>> = vec![vec![]];
        for _ in 0..fam.param_count() {
            params = params.iter().flat_map(|p| els.iter().map(move |x| [p.clone(), vec![x.clone()]].concat())).collect();
        }
        out.extend(params.into_iter().map(|p| ClassLabel::new(fam, p, f)).filter(|l| l.check().is_ok()));
    }
    out
}

fn canonical_classes(dim: usize, f: &Field) -> Vec<ClassLabel> {
    let mut v: Vec<ClassLabel> = all_labels(&Family::of_dim(dim), f).iter().map(|l| canonicalize(l).unwrap()).collect();
    v.sort_by_key(|l| l.to_string());
    v.dedup();
    v
}

fn pairwise_distinct(reps: &[LieAlgebra]) -> bool {
    reps.iter().enumerate().all(|(i, a)| {
        reps[i + 1..].iter().all(|b| {
            let (pa, pb) = (a.solvability_profile(), b.solvability_profile());
            let same_invariants = pa.derived_series == pb.derived_series
                && pa.lower_central_series == pb.lower_central_series
                && a.center().len() == b.center().len();
            !same_invariants || brute_force_iso(a, b).unwrap().is_none()
        })
    })
}

#[test]
fn criterion_6_non_isomorphism() {
    let start = Instant::now();
    let f = Field::prime(2);
    let dim3 = canonical_classes(3, &f);
    let dim4 = canonical_classes(4, &f);
    let build = |ls: &[ClassLabel]| ls.iter().map(|l| construct(l).unwrap()).collect::<Vec<_>>();
    let d3 = pairwise_distinct(&build(&dim3));
    let d4 = pairwise_distinct(&build(&dim4));
    let m9 = construct(&ClassLabel::new(Family::M9, vec![f.one()], &f)).unwrap();
    let sep = [f.zero(), f.one()].iter().all(|a| {
        let m10 = construct(&ClassLabel::new(Family::M10, vec![a.clone()], &f)).unwrap();
        brute_force_iso(&m9, &m10).unwrap().is_none()
    });
    let ok = dim3.len() == 6 && dim4.len() == 21 && d3 && d4 && sep && start.elapsed() < Duration::from_secs(600);
    report(6, "canonical classes over F2 are pairwise non-isomorphic", ok, &format!("{} + {} classes, {:.1?}", dim3.len(), dim4.len(), start.elapsed()));
    assert!(ok);
}

#[test]
fn criterion_7_extension_procedure() {
    let start = Instant::now();
    let f = Field::prime(2);
    let o = f.one();
    let ext = classify_extensions(&LieAlgebra::abelian(&f, 2)).unwrap();
    let labels: BTreeSet<String> = ext.iter().map(|l| identify(l).unwrap().to_string()).collect();
    let dim3: BTreeSet<String> = canonical_classes(3, &f).iter().map(ToString::to_string).collect();
    let first = ext.len() == 6 && labels == dim3 && pairwise_distinct(&ext);

    let l3 = |a: &FieldElement| LieAlgebra::abelian(&f, 3).with(3, 1, &[(2, o.clone())]).with(3, 2, &[(1, a.clone()), (2, o.clone())]);
    let l4 = |a: &FieldElement| LieAlgebra::abelian(&f, 3).with(3, 1, &[(2, o.clone())]).with(3, 2, &[(1, a.clone())]);
    let bases = vec![
        LieAlgebra::abelian(&f, 3),
        LieAlgebra::abelian(&f, 3).with(3, 1, &[(1, o.clone())]).with(3, 2, &[(2, o.clone())]),
        l3(&f.zero()),
        l3(&o),
        l4(&f.zero()),
        l4(&o),
    ];
    let mut covered = BTreeSet::new();
    for k in &bases {
        for l in classify_extensions(k).unwrap() {
            covered.insert(identify(&l).unwrap().to_string());
        }
    }
    let dim4: BTreeSet<String> = canonical_classes(4, &f).iter().map(ToString::to_string).collect();
    let second = covered == dim4;
    let ok = first && second && start.elapsed() < Duration::from_secs(300);
    report(7, "extensions reproduce the classification over F2", ok, &format!("{} dim-3 labels, {} of {} dim-4 classes", labels.len(), covered.len(), dim4.len()));
    assert!(ok);
}

fn random_element(f: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    match f.order() {
        Some(q) => f.element(rng.gen_range(0..q)),
        None => f.from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)).unwrap(),
    }
}

fn random_matrix(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_rows(f, (0..n).map(|_| (0..n).map(|_| random_element(f, rng)).collect()).collect())
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(f, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_label(fam: Family, f: &Field, rng: &mut ChaCha8Rng) -> ClassLabel {
    loop {
        let params = (0..fam.param_count()).map(|_| random_element(f, rng)).collect();
        let l = ClassLabel::new(fam, params, f);
        if l.check().is_ok() {
            return l;
        }
    }
}

#[test]
fn criterion_8_property_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fields = [Field::Rationals, Field::prime(2), Field::prime(3), Field::prime(5), Field::of_order(4).unwrap()];

    // Rational canonical form is a conjugation invariant and is reached.
    let mut rcf_ok = 0;
    for i in 0..500 {
        let f = &fields[i % fields.len()];
        let n = 1 + i % 4;
        let a = random_matrix(f, n, &mut rng);
        let p = random_invertible(f, n, &mut rng);
        let b = p.mul(&a).unwrap().mul(&p.inverse().unwrap()).unwrap();
        let r = rcf(&a).unwrap();
        let same = invariant_factors(&b).unwrap() == r.invariant_factors;
        let reached = r.transform.mul(&a).unwrap() == r.form.mul(&r.transform).unwrap();
        rcf_ok += usize::from(same && reached);
    }

    // identify is unchanged by base change.
    let mut id_cases = 0;
    let mut id_ok = 0;
    for fam in Family::ALL.iter().copied().filter(|f| f.dim() >= 3) {
        let usable: Vec<&Field> = fields
            .iter()
            .filter(|f| match fam {
                Family::M10 | Family::M11 => f.characteristic() == 2,
                Family::N => f.characteristic() != 2,
                _ => true,
            })
            .collect();
        for i in 0..100 {
            let f = usable[i % usable.len()];
            let label = random_label(fam, f, &mut rng);
            let l = construct(&label).unwrap();
            let p = random_invertible(f, l.dim(), &mut rng);
            let moved = l.base_change(&p).unwrap();
            id_cases += 1;
            id_ok += usize::from(identify(&moved).unwrap() == identify(&l).unwrap());
        }
    }

    // Conjugate derivations up to scaling give isomorphic extensions.
    let mut lemma_ok = 0;
    for i in 0..50 {
        let f = if i % 2 == 0 { Field::prime(2) } else { Field::prime(3) };
        let o = f.one();
        let k = match i % 3 {
            0 => LieAlgebra::abelian(&f, 2),
            1 => LieAlgebra::abelian(&f, 3).with(3, 1, &[(2, o.clone())]),
            _ => LieAlgebra::abelian(&f, 3).with(3, 1, &[(1, o.clone())]).with(3, 2, &[(2, o.clone())]),
        };
        let der = k.derivations();
        let d1 = der.iter().fold(Matrix::zeros(&f, k.dim(), k.dim()), |acc, d| acc.add(&d.scale(&random_element(&f, &mut rng))).unwrap());
        let auts = aut_group(&k).unwrap();
        let s = &auts[rng.gen_range(0..auts.len())];
        let lambda = f.element(rng.gen_range(1..f.order().unwrap()));
        let d2 = s.mul(&d1).unwrap().mul(&s.inverse().unwrap()).unwrap().scale(&lambda.inv().unwrap());
        let (e1, e2) = (k.extend_by_derivation(&d1).unwrap(), k.extend_by_derivation(&d2).unwrap());
        lemma_ok += usize::from(verify_isomorphism(&e1, &e2, &extension_isomorphism(s, &lambda)));
    }

    // X^2 + X + u solvable exactly when the trace test says so.
    let mut as_ok = true;
    for q in [2u64, 4, 8, 16] {
        let f = Field::of_order(q).unwrap();
        let els = f.elements();
        for u in &els {
            let brute = els.iter().any(|x| (&(x * x) + x + u.clone()).is_zero());
            as_ok &= artin_schreier_solvable(u).unwrap() == brute;
        }
    }

    let ok = rcf_ok == 500 && id_ok == id_cases && lemma_ok == 50 && as_ok && start.elapsed() < Duration::from_secs(300);
    report(
        8,
        "property suites",
        ok,
        &format!("rcf {rcf_ok}/500, identify {id_ok}/{id_cases}, extension maps {lemma_ok}/50, trace test {as_ok}"),
    );
    assert!(ok);
}
