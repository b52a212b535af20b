#![allow(dead_code)]
// Randomized properties shared by the property suites and the acceptance run.

use std::path::PathBuf;
use std::sync::OnceLock;

use dquot::complexes::build_ncomplex;
use dquot::exactfield::{CycNum, Matrix, SVec, Subspace};
use dquot::mckay::{GroupInput, McKayData};
use dquot::pathalg::*;
use dquot::quotient::Presentation;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn c(i: i64) -> CycNum {
    CycNum::from_int(i, 1)
}

/// Random quiver with 1-3 vertices and 1-5 arrows, plus a seed for elements.
fn quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=3).prop_flat_map(|nv| {
        prop::collection::vec((0..nv, 0..nv), 1..=5).prop_map(move |ar| {
            let vs: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let arrows = ar
                .iter()
                .enumerate()
                .map(|(i, &(h, t))| Arrow {
                    name: format!("a{i}"),
                    head: h,
                    tail: t,
                })
                .collect();
            Quiver::from_parts(vs, arrows).unwrap()
        })
    })
}

fn element(q: &Quiver, d: usize, picks: &[(usize, i64)]) -> TensorElement {
    let idx = q.paths(d);
    let mut e = TensorElement::zero(q, d, 1);
    if idx.is_empty() {
        return e;
    }
    for &(i, k) in picks {
        let w = idx.words[i % idx.len()].clone();
        e = e
            .add(&TensorElement::from_terms(q, d, 1, [(w, c(k))]).unwrap())
            .unwrap();
    }
    e
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..1000, -3i64..=3), 1..8)
}

/// Twisted symmetrization of x for a diagonal sign twist (order 2).
fn symmetrize(x: &TensorElement, tw: &Twist) -> TensorElement {
    let n = x.degree();
    let s = if n % 2 == 1 { 1 } else { -1 };
    let mut acc = TensorElement::zero(x.quiver(), n, 1);
    let mut cur = x.clone();
    let mut sign = 1;
    for _ in 0..2 * n {
        acc = acc.axpy(&c(sign), &cur).unwrap();
        cur = cyclic_shift(&cur, tw).unwrap();
        sign *= s;
    }
    acc
}

const N: u32 = 12;

fn cyc(k: i64, pow: u32) -> CycNum {
    &CycNum::from_int(k, N) * &CycNum::root_of_unity(12, pow as i64, N).unwrap()
}

fn dense(ambient: usize, entries: &[(usize, i64, u32)]) -> SVec {
    let mut v: Vec<CycNum> = vec![CycNum::zero(N); ambient];
    for &(i, k, p) in entries {
        v[i % ambient] = &v[i % ambient] + &cyc(k, p);
    }
    v.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn combine(vs: &[SVec], coeffs: &[CycNum]) -> SVec {
    let mut acc: std::collections::BTreeMap<usize, CycNum> = Default::default();
    for (v, c) in vs.iter().zip(coeffs) {
        for (i, x) in v {
            let e = acc.entry(*i).or_insert_with(|| CycNum::zero(N));
            *e = &*e + &(c * x);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn vectors() -> impl Strategy<Value = Vec<Vec<(usize, i64, u32)>>> {
    prop::collection::vec(
        prop::collection::vec((0usize..6, -3i64..=3, 0u32..12), 1..5),
        0..5,
    )
}

fn fixture(name: &str) -> &'static (McKayData, TensorElement, Twist) {
    static CACHE: OnceLock<Vec<(String, (McKayData, TensorElement, Twist))>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["d8", "septic", "d8_double"]
            .iter()
            .map(|n| {
                let path = PathBuf::from(format!(
                    "{}/../../fixtures/{n}.json",
                    env!("CARGO_MANIFEST_DIR")
                ));
                let g: GroupInput =
                    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
                let m = g.build().unwrap();
                let (phi, tw) = m.potential(false).unwrap();
                (n.to_string(), (m, phi, tw))
            })
            .collect()
    });
    &all.iter().find(|(n, _)| n == name).unwrap().1
}

pub fn prefix_derivative_inverts_product(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(quiver(), 1usize..=2, 0usize..=2, 0usize..1000, 0usize..1000),
            |(q, dp, dq, i, j)| {
                let ip = q.paths(dp);
                prop_assume!(!ip.is_empty());
                let p = ip.words[i % ip.len()].clone();
                let tail = q.tail(*p.last().unwrap());
                let iq = q.paths(dq);
                let cands: Vec<&Vec<u32>> = iq
                    .words
                    .iter()
                    .filter(|w| q.word_head(w, dq) == tail)
                    .collect();
                prop_assume!(!cands.is_empty());
                let w = cands[j % cands.len()].clone();
                let path = Path::Arrows(p.clone());
                let pe = TensorElement::path(&q, &path, 1);
                let we = TensorElement::from_terms(&q, dq, 1, [(w.clone(), c(1))]).unwrap();
                let prod = pe.mul(&we).unwrap();
                prop_assert_eq!(derive(&path, &prod).unwrap(), we);
                // words of the same length without prefix p are killed
                for other in q.paths(dp + dq).words.iter().filter(|o| !o.starts_with(&p)) {
                    let oe =
                        TensorElement::from_terms(&q, dp + dq, 1, [(other.clone(), c(1))]).unwrap();
                    prop_assert!(derive(&path, &oe).unwrap().is_zero());
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn derivative_chain_rule(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(quiver(), picks(), 0usize..1000, 0usize..1000),
            |(q, pk, i, j)| {
                let x = element(&q, 4, &pk);
                let i1 = q.paths(1);
                let i2 = q.paths(2);
                let qp = i1.words[i % i1.len()].clone();
                prop_assume!(!i2.is_empty());
                let pp = i2.words[j % i2.len()].clone();
                let lhs = derive(
                    &Path::Arrows(pp.clone()),
                    &derive(&Path::Arrows(qp.clone()), &x).unwrap(),
                )
                .unwrap();
                let rhs = if q.is_composable(&[qp.clone(), pp.clone()].concat()) {
                    derive(&Path::Arrows([qp, pp].concat()), &x).unwrap()
                } else {
                    TensorElement::zero(&q, 1, 1)
                };
                prop_assert_eq!(lhs, rhs);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn superpotential_derivative_symmetry(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(
                quiver(),
                2usize..=4,
                picks(),
                prop::collection::vec(any::<bool>(), 5),
            ),
            |(q, n, pk, signs)| {
                let scal: Vec<CycNum> = (0..q.arrow_count())
                    .map(|a| c(if signs[a] { 1 } else { -1 }))
                    .collect();
                let tw = Twist::diagonal(&q, &scal).unwrap();
                let raw = element(&q, n, &pk);
                // keep closed paths only (weak condition for a vertex-fixing twist)
                let closed: Vec<(Vec<u32>, CycNum)> = raw
                    .terms()
                    .filter(|(w, _)| q.word_head(w, n) == q.word_tail(w, n))
                    .map(|(w, x)| (w.clone(), x.clone()))
                    .collect();
                let w = symmetrize(&TensorElement::from_terms(&q, n, 1, closed).unwrap(), &tw);
                prop_assert!(is_superpotential(&w, &tw));
                let sign = c(if n % 2 == 1 { 1 } else { -1 });
                for b in 0..q.arrow_count() as u32 {
                    let lhs = derive(&Path::Arrows(vec![b]), &w).unwrap().scale(&sign);
                    let mut rhs = TensorElement::zero(&q, n - 1, 1);
                    for a in 0..q.arrow_count() as u32 {
                        for (bb, t) in tw.image(a) {
                            if *bb as u32 == b {
                                rhs = rhs
                                    .axpy(t, &derive_right(&w, &Path::Arrows(vec![a])).unwrap())
                                    .unwrap();
                            }
                        }
                    }
                    prop_assert_eq!(lhs, rhs);
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn delta_commutes_with_idempotents(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(quiver(), picks(), 0u8..8, 0usize..=3),
            |(q, pk, mask, k)| {
                let w = element(&q, 3, &pk);
                let verts: Vec<usize> = (0..q.vertex_count())
                    .filter(|v| mask & (1 << v) != 0)
                    .collect();
                let ew = restrict_idempotent(&w, &verts);
                let idx = q.paths(k);
                for p in &idx.words {
                    let path = Path::from_word(p, k);
                    if !verts.contains(&q.path_head(&path)) || !verts.contains(&q.path_tail(&path))
                    {
                        continue;
                    }
                    prop_assert_eq!(
                        derive(&path, &ew).unwrap(),
                        restrict_idempotent(&derive(&path, &w).unwrap(), &verts)
                    );
                }
                // span version over paths inside e: d_p(eWe) spans e Delta(W) e
                let inside =
                    |p: &Path| verts.contains(&q.path_head(p)) && verts.contains(&q.path_tail(p));
                let out = q.paths(3 - k);
                let lhs: Vec<_> = derivatives(&ew, k)
                    .unwrap()
                    .iter()
                    .filter(|(p, _)| inside(p))
                    .map(|(_, d)| d.to_svec(&out))
                    .collect();
                let rhs: Vec<_> = derivatives(&w, k)
                    .unwrap()
                    .iter()
                    .filter(|(p, _)| inside(p))
                    .map(|(_, d)| restrict_idempotent(d, &verts).to_svec(&out))
                    .collect();
                prop_assert_eq!(
                    Subspace::span(out.len(), lhs.iter()),
                    Subspace::span(out.len(), rhs.iter())
                );
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn plain_shift_period_divides_degree(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(quiver(), 1usize..=5, picks()), |(q, n, pk)| {
            let x = element(&q, n, &pk);
            let closed: Vec<(Vec<u32>, CycNum)> = x
                .terms()
                .filter(|(w, _)| q.word_head(w, n) == q.word_tail(w, n))
                .map(|(w, x)| (w.clone(), x.clone()))
                .collect();
            let x = TensorElement::from_terms(&q, n, 1, closed).unwrap();
            let id = Twist::identity(&q);
            let mut y = x.clone();
            for _ in 0..n {
                y = cyclic_shift(&y, &id).unwrap();
            }
            prop_assert_eq!(y, x);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn graded_maps_compose(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(prop::collection::vec(-2i64..=2, 8), picks()),
            |(entries, pk)| {
                let q = Quiver::loops("v", &["a", "b"]);
                let g = Matrix::from_ints(&[&entries[0..2], &entries[2..4]], 1);
                let h = Matrix::from_ints(&[&entries[4..6], &entries[6..8]], 1);
                let x = element(&q, 3, &pk);
                let lhs = apply_graded_map(&g, &apply_graded_map(&h, &x).unwrap()).unwrap();
                let rhs = apply_graded_map(&g.try_mul(&h).unwrap(), &x).unwrap();
                prop_assert_eq!(lhs, rhs);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn echelon_basis_is_canonical(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(
                vectors(),
                prop::collection::vec((-3i64..=3, 0u32..12), 25),
                0usize..5,
            ),
            |(raw, mix, rot)| {
                let vs: Vec<SVec> = raw.iter().map(|e| dense(6, e)).collect();
                let s = Subspace::span(6, &vs);
                // an invertible recombination: unitriangular mix, nonzero scaling, rotation
                let mut ws = Vec::new();
                for i in 0..vs.len() {
                    let mut coeffs = vec![CycNum::zero(N); vs.len()];
                    coeffs[i] = CycNum::root_of_unity(12, mix[i].1 as i64, N).unwrap();
                    for (j, c) in coeffs.iter_mut().enumerate().skip(i + 1) {
                        *c = cyc(mix[5 * i + j].0, mix[5 * i + j].1);
                    }
                    ws.push(combine(&vs, &coeffs));
                }
                if !ws.is_empty() {
                    let k = rot % ws.len();
                    ws.rotate_left(k);
                }
                let t = Subspace::span(6, &ws);
                prop_assert_eq!(t.basis(), s.basis());
                let pivots = s.pivots();
                for (k, b) in s.basis().iter().enumerate() {
                    prop_assert_eq!(b[0].0, pivots[k]);
                    prop_assert!(b[0].1.is_one());
                    for (j, other) in s.basis().iter().enumerate() {
                        if j != k {
                            prop_assert!(other.iter().all(|(i, _)| *i != pivots[k]));
                        }
                    }
                }
                for v in &vs {
                    prop_assert!(s.contains(v));
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn join_meet_dimensions(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(vectors(), vectors()), |(a, b)| {
            let s = Subspace::span(6, &a.iter().map(|e| dense(6, e)).collect::<Vec<_>>());
            let t = Subspace::span(6, &b.iter().map(|e| dense(6, e)).collect::<Vec<_>>());
            let j = s.join(&t).unwrap();
            let m = s.meet(&t).unwrap();
            prop_assert_eq!(j.dim() + m.dim(), s.dim() + t.dim());
            prop_assert!(m.is_subspace_of(&s) && m.is_subspace_of(&t));
            prop_assert!(s.is_subspace_of(&j) && t.is_subspace_of(&j));
            prop_assert_eq!(s.annihilator(N).dim(), 6 - s.dim());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn cp_is_twisted_cyclic(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(0usize..3, 0usize..10_000), |(which, pick)| {
            let (m, phi, tw) = fixture(["d8", "septic", "d8_double"][which]);
            let q = m.quiver();
            let n = phi.degree();
            let idx = q.paths(n);
            let closed: Vec<&Vec<u32>> = idx
                .words
                .iter()
                .filter(|w| q.word_head(w, n) == q.word_tail(w, n))
                .collect();
            let w = closed[pick % closed.len()];
            let p = Path::from_word(w, n);
            // Phi weights c_p by dim S_h(p)
            let weight =
                |w: &[u32]| CycNum::from_int(m.group().irreps()[q.word_head(w, n)].dim as i64, 1);
            let cp = &m.path_scalar_cp(&p).unwrap() * &weight(w);
            prop_assert_eq!(&cp, &phi.coeff(w));
            // S = (-1)^(n-1) shift sends p to s p', and the weighted c_{p'} is s c_p
            let sign = CycNum::from_int(if n % 2 == 1 { 1 } else { -1 }, 1);
            let moved = cyclic_shift(&TensorElement::path(q, &p, m.conductor()), tw)
                .unwrap()
                .scale(&sign);
            let terms: Vec<_> = moved.terms().collect();
            if terms.is_empty() {
                // the shifted word is not a path, so p cannot occur in the potential
                prop_assert!(cp.is_zero());
                return Ok(());
            }
            prop_assert_eq!(terms.len(), 1);
            let (w2, s) = terms[0];
            let cp2 = &m.path_scalar_cp(&Path::from_word(w2, n)).unwrap() * &weight(w2);
            prop_assert_eq!(cp2, s * &cp);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

pub fn ncomplex_is_nilpotent(cases: u32) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(
                3usize..=4,
                any::<bool>(),
                prop::collection::vec((0usize..100, -3i64..=3), 1..6),
            ),
            |(deg, low, picks)| {
                // a random superpotential on two loops, and its N-complex with N = 2 or n - 1
                let q = Quiver::loops("v", &["x", "y"]);
                let tw = Twist::identity(&q);
                let idx = q.paths(deg);
                let mut x = TensorElement::zero(&q, deg, 1);
                for &(i, k) in &picks {
                    x = x
                        .add(
                            &TensorElement::from_terms(
                                &q,
                                deg,
                                1,
                                [(idx.words[i % idx.len()].clone(), CycNum::from_int(k, 1))],
                            )
                            .unwrap(),
                        )
                        .unwrap();
                }
                let sign = CycNum::from_int(if deg % 2 == 1 { 1 } else { -1 }, 1);
                let mut om = TensorElement::zero(&q, deg, 1);
                let mut cur = x;
                for _ in 0..deg {
                    om = om.add(&cur).unwrap();
                    cur = cyclic_shift(&cur, &tw).unwrap().scale(&sign);
                }
                prop_assume!(!om.is_zero());
                let big_n = if low { 2 } else { deg - 1 };
                let pres = Presentation::new(&q, big_n, delta_image(&om, deg - big_n).unwrap(), 1)
                    .unwrap();
                let c = build_ncomplex(&om, &tw, big_n, &pres, deg + 1).unwrap();
                let r = c.certify(deg + 1).unwrap();
                prop_assert!(
                    r.nilpotent,
                    "{om}: {:?}",
                    r.degrees.iter().map(|d| d.nilpotent).collect::<Vec<_>>()
                );
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

/// Every property with its case count.
pub const ALL: &[(&str, fn(u32) -> Result<u32, String>, u32)] = &[
    (
        "prefix_derivative_inverts_product",
        prefix_derivative_inverts_product,
        200,
    ),
    ("derivative_chain_rule", derivative_chain_rule, 200),
    (
        "superpotential_derivative_symmetry",
        superpotential_derivative_symmetry,
        200,
    ),
    (
        "delta_commutes_with_idempotents",
        delta_commutes_with_idempotents,
        200,
    ),
    (
        "plain_shift_period_divides_degree",
        plain_shift_period_divides_degree,
        200,
    ),
    ("graded_maps_compose", graded_maps_compose, 200),
    (
        "echelon_basis_is_canonical",
        echelon_basis_is_canonical,
        250,
    ),
    ("join_meet_dimensions", join_meet_dimensions, 250),
    ("cp_is_twisted_cyclic", cp_is_twisted_cyclic, 250),
    ("ncomplex_is_nilpotent", ncomplex_is_nilpotent, 60),
];
