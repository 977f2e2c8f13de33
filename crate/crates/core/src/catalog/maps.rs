//! Explicit isomorphisms between members of the classification and
//! algebras met along the way. Each map sends `x_i` of the source to the
//! `i`-th column, written in the basis `y_j` of the target.

use crate::field::{sqrt, Field, FieldElement};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;

use super::{table, Family};

#[derive(Clone, Debug)]
pub struct ExplicitIso {
    pub name: String,
    pub source: LieAlgebra,
    pub target: LieAlgebra,
    pub map: Matrix,
}

type Image = Vec<(usize, FieldElement)>;

fn iso(name: String, source: LieAlgebra, target: LieAlgebra, images: Vec<Image>) -> ExplicitIso {
    let f = source.field().clone();
    let n = source.dim();
    let cols: Vec<Vec<FieldElement>> = images
        .into_iter()
        .map(|img| {
            let mut c = vec![f.zero(); n];
            for (j, x) in img {
                c[j - 1] = &c[j - 1] + &x;
            }
            c
        })
        .collect();
    ExplicitIso { name, source, target, map: Matrix::from_columns(&f, &cols) }
}

/// Parameter values to instantiate the maps at.
fn samples(f: &Field) -> Vec<FieldElement> {
    if f.is_finite() {
        f.elements().into_iter().take(16).collect()
    } else {
        [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (1, 2), (-3, 4), (5, 3)]
            .iter()
            .map(|&(n, d)| f.from_ratio(n, d).unwrap())
            .collect()
    }
}

fn fam(family: Family, params: &[&FieldElement], f: &Field) -> LieAlgebra {
    let p: Vec<FieldElement> = params.iter().map(|&x| x.clone()).collect();
    table(family, &p, f)
}

/// `[x4,x1] = x1 + v x2, [x4,x2] = w x1, [x3,x1] = x1, [x3,x2] = x2`.
fn k2(f: &Field, v: &FieldElement, w: &FieldElement) -> LieAlgebra {
    let o = f.one();
    LieAlgebra::abelian(f, 4)
        .with(4, 1, &[(1, o.clone()), (2, v.clone())])
        .with(4, 2, &[(1, w.clone())])
        .with(3, 1, &[(1, o.clone())])
        .with(3, 2, &[(2, o)])
}

/// `[x4,x1] = x2, [x4,x2] = x3, [x4,x3] = s x1 + t x2 + u x3`.
fn k3(f: &Field, s: &FieldElement, t: &FieldElement, u: &FieldElement) -> LieAlgebra {
    LieAlgebra::abelian(f, 4)
        .with(4, 1, &[(2, f.one())])
        .with(4, 2, &[(3, f.one())])
        .with(4, 3, &[(1, s.clone()), (2, t.clone()), (3, u.clone())])
}

fn alg(f: &Field, brackets: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
    brackets.iter().fold(LieAlgebra::abelian(f, 4), |l, (i, j, terms)| {
        let t: Vec<(usize, FieldElement)> = terms.iter().map(|&(k, c)| (k, f.from_i64(c))).collect();
        l.with(*i, *j, &t)
    })
}

/// All maps that apply over `f`, instantiated at sample parameters.
pub fn explicit_isomorphisms(f: &Field) -> Vec<ExplicitIso> {
    use Family::*;
    let mut out = Vec::new();
    let s = samples(f);
    let nonzero: Vec<FieldElement> = s.iter().filter(|x| !x.is_zero()).cloned().collect();
    let o = f.one();
    let z = f.zero();
    let n = |k: i64| f.from_i64(k);
    let char2 = f.characteristic() == 2;

    if !char2 {
        let half = f.from_ratio(1, 2).unwrap();
        let quarter = f.from_ratio(1, 4).unwrap();
        for a in &s {
            out.push(iso(
                format!("M10({a}) -> M9"),
                fam(M10, &[a], f),
                fam(M9, &[&(a - &quarter)], f),
                vec![vec![(2, n(2))], vec![(1, n(2)), (2, n(-1))], vec![(3, o.clone())], vec![(3, -&half), (4, o.clone())]],
            ));
            // [x4,x1]=x1, [x4,x2]=x2, [x3,x1]=x2, [x3,x2]=a x1
            let src = LieAlgebra::abelian(f, 4)
                .with(4, 1, &[(1, o.clone())])
                .with(4, 2, &[(2, o.clone())])
                .with(3, 1, &[(2, o.clone())])
                .with(3, 2, &[(1, a.clone())]);
            out.push(iso(
                format!("L4({a}) extension -> M9"),
                src,
                fam(M9, &[&(a - &quarter)], f),
                vec![vec![(2, n(2))], vec![(1, n(2)), (2, n(-1))], vec![(3, -&half), (4, o.clone())], vec![(3, o.clone())]],
            ));
        }
        for w in &s {
            for alpha in &nonzero {
                let v = &(alpha * alpha) * &(w + &quarter) - &quarter;
                let c = &half * &(&o - alpha);
                out.push(iso(
                    format!("K({v}) -> K({w})"),
                    k2(f, &v, &o),
                    k2(f, w, &o),
                    vec![vec![(1, alpha.clone()), (2, c.clone())], vec![(2, o.clone())], vec![(3, o.clone())], vec![(3, c), (4, alpha.clone())]],
                ));
            }
        }
        out.push(iso(
            "[x4,x2]=x1 extension -> N".into(),
            alg(f, &[(4, 2, &[(1, 1)]), (3, 1, &[(1, 1)]), (3, 2, &[(2, 1)])]),
            fam(N, &[], f),
            vec![vec![(1, n(2)), (2, n(-1))], vec![(2, o.clone())], vec![(3, o.clone())], vec![(3, n(-1)), (4, n(2))]],
        ));
    } else {
        for v in &s {
            for alpha in &s {
                let w = &(&(alpha * alpha) + alpha) + v;
                out.push(iso(
                    format!("K({v}) -> K({w})"),
                    k2(f, v, &o),
                    k2(f, &w, &o),
                    vec![vec![(1, o.clone()), (2, alpha.clone())], vec![(2, o.clone())], vec![(3, o.clone())], vec![(3, alpha.clone()), (4, o.clone())]],
                ));
            }
        }
        for a in &s {
            for alpha in &nonzero {
                for beta in &s {
                    let b = (&(beta * beta) + a) / (alpha * alpha);
                    out.push(iso(
                        format!("M10({a}) -> M10({b})"),
                        fam(M10, &[a], f),
                        fam(M10, &[&b], f),
                        vec![
                            vec![(1, o.clone())],
                            vec![(1, beta.clone()), (2, alpha.clone())],
                            vec![(3, o.clone())],
                            vec![(3, beta.clone()), (4, alpha.clone())],
                        ],
                    ));
                }
            }
            let src = LieAlgebra::abelian(f, 4)
                .with(4, 1, &[(1, o.clone())])
                .with(4, 2, &[(2, o.clone())])
                .with(3, 1, &[(2, o.clone())])
                .with(3, 2, &[(1, a.clone())]);
            out.push(iso(
                format!("L4({a}) extension -> M10"),
                src,
                fam(M10, &[a], f),
                vec![vec![(1, o.clone())], vec![(2, o.clone())], vec![(4, o.clone())], vec![(3, o.clone())]],
            ));
            // [x4,x2]=x2, [x4,x3]=x3, [x3,x1]=x2, [x3,x2]=a x1
            let src = LieAlgebra::abelian(f, 4)
                .with(4, 2, &[(2, o.clone())])
                .with(4, 3, &[(3, o.clone())])
                .with(3, 1, &[(2, o.clone())])
                .with(3, 2, &[(1, a.clone())]);
            let m = if a.is_zero() {
                iso(
                    "L4(0) twisted extension -> M10(0)".into(),
                    src,
                    fam(M10, &[&z], f),
                    vec![vec![(4, o.clone())], vec![(2, o.clone())], vec![(1, o.clone())], vec![(3, o.clone())]],
                )
            } else if a.is_one() {
                iso(
                    "L4(1) twisted extension -> M11(1,0)".into(),
                    src,
                    fam(M11, &[&o, &z], f),
                    vec![vec![(2, o.clone())], vec![(1, o.clone())], vec![(3, o.clone())], vec![(4, o.clone())]],
                )
            } else {
                let inv = (a + &o).inv().unwrap();
                iso(
                    format!("L4({a}) twisted extension -> M11"),
                    src,
                    fam(M11, &[a, a], f),
                    vec![
                        vec![(1, o.clone()), (2, a.inv().unwrap())],
                        vec![(1, o.clone()), (2, o.clone())],
                        vec![(3, o.clone())],
                        vec![(3, inv.clone()), (4, inv)],
                    ],
                )
            };
            out.push(m);
            if let (false, Some(alpha)) = (a.is_zero(), sqrt(a)) {
                out.push(iso(
                    format!("M10({a}) -> M13(0)"),
                    fam(M10, &[a], f),
                    fam(M13, &[&z], f),
                    vec![
                        vec![(1, o.clone())],
                        vec![(1, alpha.clone()), (2, alpha.clone())],
                        vec![(1, o.clone()), (2, o.clone()), (4, o.clone())],
                        vec![(3, alpha.clone()), (4, alpha.clone())],
                    ],
                ));
            }
        }
        out.extend(m11_maps(f, &s));
        out.push(iso(
            "[x4,x2]=x1 extension -> M10(0)".into(),
            alg(f, &[(4, 2, &[(1, 1)]), (3, 1, &[(1, 1)]), (3, 2, &[(2, 1)])]),
            fam(M10, &[&z], f),
            vec![vec![(2, o.clone())], vec![(1, o.clone())], vec![(3, o.clone())], vec![(4, o.clone())]],
        ));
    }

    if !char2 && f.characteristic() != 3 {
        // Degenerate in characteristic 3, where the second image vanishes.
        out.push(iso(
            "M13(0) -> N".into(),
            fam(M13, &[&z], f),
            fam(N, &[], f),
            vec![
                vec![(1, o.clone()), (2, o.clone())],
                vec![(1, n(3)), (2, f.from_ratio(-3, 2).unwrap())],
                vec![(1, o.clone()), (2, o.clone()), (3, n(-1)), (4, n(2))],
                vec![(3, o.clone())],
            ],
        ));
    }
    out.push(iso(
        "L3(0) extension -> M6(0,0)".into(),
        alg(f, &[(4, 3, &[(1, 1)]), (3, 1, &[(2, 1)]), (3, 2, &[(2, 1)])]),
        fam(M6, &[&z, &z], f),
        vec![vec![(2, o.clone())], vec![(3, o.clone())], vec![(4, o.clone())], vec![(1, n(-1))]],
    ));
    // New bases of three algebras with the table of M13(0) or M14(0).
    out.push(iso(
        "M13(0) -> [x4,x1]=x1+x3".into(),
        fam(M13, &[&z], f),
        alg(f, &[(4, 1, &[(1, 1), (3, 1)]), (4, 2, &[(2, 1)]), (3, 1, &[(2, 1)])]),
        vec![vec![(1, o.clone()), (3, o.clone())], vec![(2, n(-1))], vec![(1, o.clone())], vec![(4, o.clone())]],
    ));
    out.push(iso(
        "M13(0) -> [x4,x1]=x1".into(),
        fam(M13, &[&z], f),
        alg(f, &[(4, 1, &[(1, 1)]), (4, 2, &[(2, 1)]), (3, 1, &[(2, 1)])]),
        vec![vec![(1, o.clone())], vec![(2, o.clone())], vec![(1, o.clone()), (3, o.clone())], vec![(4, o.clone())]],
    ));
    out.push(iso(
        "M14(0) -> [x4,x1]=x3".into(),
        fam(M14, &[&z], f),
        alg(f, &[(4, 1, &[(3, 1)]), (3, 1, &[(2, 1)])]),
        vec![vec![(3, o.clone())], vec![(2, n(-1))], vec![(1, o.clone())], vec![(4, o.clone())]],
    ));
    out.push(iso(
        "M7(0,0) -> M14(0)".into(),
        fam(M7, &[&z, &z], f),
        fam(M14, &[&z], f),
        vec![vec![(4, n(-1))], vec![(1, o.clone())], vec![(2, o.clone())], vec![(3, o.clone())]],
    ));
    for v in &s {
        out.push(iso(
            format!("M8 -> K({v},0)"),
            fam(M8, &[], f),
            k2(f, v, &z),
            vec![vec![(4, o.clone())], vec![(1, o.clone()), (2, v.clone())], vec![(3, o.clone()), (4, n(-1))], vec![(2, o.clone())]],
        ));
        for w in &nonzero {
            out.push(iso(
                format!("K({},1) -> K({v},{w})", v * w),
                k2(f, &(v * w), &o),
                k2(f, v, w),
                vec![vec![(1, w.clone())], vec![(2, o.clone())], vec![(3, o.clone())], vec![(4, o.clone())]],
            ));
        }
    }
    for a in &s {
        for alpha in &nonzero {
            let a2 = &(alpha * alpha) * a;
            out.push(iso(
                format!("M14({a2}) -> M14({a})"),
                fam(M14, &[&a2], f),
                fam(M14, &[a], f),
                vec![vec![(1, alpha.clone())], vec![(2, alpha.clone())], vec![(3, o.clone())], vec![(4, alpha.clone())]],
            ));
        }
    }
    for (sv, t) in s.iter().zip(s.iter().rev()) {
        for u in [&z, &o] {
            for alpha in nonzero.iter().take(4) {
                let a2 = alpha * alpha;
                let a3 = &a2 * alpha;
                out.push(iso(
                    format!("K({sv},{t},{u}) scaled by {alpha}"),
                    k3(f, &(&a3 * sv), &(&a2 * t), &(alpha * u)),
                    k3(f, sv, t, u),
                    vec![vec![(1, o.clone())], vec![(2, alpha.clone())], vec![(3, a2.clone())], vec![(4, alpha.clone())]],
                ));
            }
        }
    }
    out
}

/// `M11(a,b) -> M11(c,d)` whenever the square conditions hold and the
/// ratio `(b+1)/(d+1)` differs from 1.
fn m11_maps(f: &Field, s: &[FieldElement]) -> Vec<ExplicitIso> {
    let o = f.one();
    let mut out = Vec::new();
    let nonzero: Vec<&FieldElement> = s.iter().filter(|x| !x.is_zero()).collect();
    let not_one: Vec<&FieldElement> = s.iter().filter(|x| !x.is_one()).collect();
    for &a in &nonzero {
        for &b in &not_one {
            for &c in &nonzero {
                for &d in &not_one {
                    let delta = (b + &o) / (d + &o);
                    if delta.is_one() {
                        continue;
                    }
                    let g2 = (&(&(&delta * &delta) + &(&(b + &o) * &delta)) + b) / c.clone();
                    let (Some(gamma), Some(eps)) = (sqrt(&g2), sqrt(&(a / c))) else { continue };
                    let beta = &delta + &o;
                    let alpha = c * &gamma;
                    out.push(iso(
                        format!("M11({a},{b}) -> M11({c},{d})"),
                        table(Family::M11, &[a.clone(), b.clone()], f),
                        table(Family::M11, &[c.clone(), d.clone()], f),
                        vec![
                            vec![(1, alpha.clone()), (2, beta.clone())],
                            vec![(1, &(c * &eps) * &beta), (2, &alpha * &eps)],
                            vec![(3, eps.clone())],
                            vec![(3, gamma), (4, delta)],
                        ],
                    ));
                }
            }
        }
    }
    out
}
