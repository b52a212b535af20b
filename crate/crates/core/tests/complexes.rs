use dquot::complexes::*;
use dquot::exactfield::CycNum;
use dquot::pathalg::*;
use dquot::quotient::{dual_coalgebra_slice, koszul_dual, Presentation};
use dquot::sklyanin::*;
use dquot::Error;

fn sklyanin() -> (TensorElement, Presentation) {
    let p = SklyaninParams::from_ints((2, 1), (3, 1), (-5, 7)).unwrap();
    (sklyanin_potential(&p).unwrap(), sklyanin_presentation(&p))
}

fn polynomial_ring(vars: &[&str]) -> (TensorElement, Presentation) {
    let q = Quiver::loops("v", vars);
    let om = volume_form(&q).unwrap();
    let n = om.degree();
    let pres = Presentation::new(&q, 2, delta_image(&om, n - 2).unwrap(), 1).unwrap();
    (om, pres)
}

fn cubic_ring() -> (TensorElement, Presentation) {
    let q = Quiver::loops("v", &["x", "y", "z"]);
    let om = volume_form(&q).unwrap();
    let pres = Presentation::new(&q, 3, delta_image(&om, 0).unwrap(), 1).unwrap();
    (om, pres)
}

fn perms(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in perms(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, (n - 1) as u32);
            out.push(q);
        }
    }
    out
}

/// x0 x1 x2 x3 summed over permutations with fixed pseudo-random integer weights.
fn generic_quartic() -> TensorElement {
    let q = Quiver::loops("v", &["x0", "x1", "x2", "x3"]);
    let terms = perms(4)
        .into_iter()
        .enumerate()
        .map(|(k, p)| (p, CycNum::from_int((k as i64 * 7 + 3) % 11 - 5, 1)));
    TensorElement::from_terms(&q, 4, 1, terms).unwrap()
}

fn sign(k: i64) -> CycNum {
    CycNum::from_int(k, 1)
}

#[test]
fn epsilon_signs() {
    assert_eq!(
        (1..=4).map(|i| epsilon(4, i)).collect::<Vec<_>>(),
        vec![-1, 1, 1, 1]
    );
    assert_eq!(
        (1..=3).map(|i| epsilon(3, i)).collect::<Vec<_>>(),
        vec![1, 1, 1]
    );
    assert_eq!(
        (1..=2).map(|i| epsilon(2, i)).collect::<Vec<_>>(),
        vec![-1, 1]
    );
}

#[test]
fn sklyanin_complex_certifies() {
    let (w, pres) = sklyanin();
    let tw = Twist::identity(w.quiver());
    let c = build_selfdual_complex(&w, &tw, &pres, 6).unwrap();
    assert_eq!(c.w_dims(), &[1, 4, 6, 4, 1]);
    let r = c.certify(6).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.degrees[6].dims, vec![1716, 3168, 1980, 480, 36]);
    assert!(w_in_dual_coalgebra(&w, &pres).unwrap());
}

#[test]
fn polynomial_ring_complex_certifies() {
    let (om, pres) = polynomial_ring(&["x", "y", "z"]);
    let c = build_selfdual_complex(&om, &Twist::identity(om.quiver()), &pres, 6).unwrap();
    assert_eq!(c.w_dims(), &[1, 3, 3, 1]);
    assert!(c.certify(6).unwrap().passed());
    assert!(w_in_dual_coalgebra(&om, &pres).unwrap());
    // A^! is the exterior algebra and W_i fills (A^!_i)*
    let dual = koszul_dual(&pres).unwrap();
    for i in 0..=3 {
        let slice = dual_coalgebra_slice(&pres, i).unwrap();
        assert_eq!(slice.dim(), [1, 3, 3, 1][i]);
    }
    assert_eq!(dquot::quotient::graded_dims(&dual, 4), vec![1, 3, 3, 1, 0]);
}

#[test]
fn pairings_are_perfect_and_supersymmetric() {
    let (w, _) = sklyanin();
    let tw = Twist::identity(w.quiver());
    for (i, d) in [1, 4, 6, 4, 1].into_iter().enumerate() {
        let g = pairing_matrix(&w, i).unwrap();
        assert_eq!((g.rows(), g.cols(), g.rank()), (d, d, d));
        assert!(supersymmetry_holds(&w, &tw, i).unwrap());
    }
    assert!(!pairing_matrix(&w, 0).unwrap().get(0, 0).is_zero());
    assert!(pairing_matrix(&w, 5).is_err());
}

#[test]
fn differentials_are_self_dual() {
    // d_i is the transpose of d_{n+1-i} up to one sign per i
    let unit = |v: Vec<Option<CycNum>>| {
        v.into_iter()
            .all(|t| t.is_some_and(|t| t == sign(1) || t == sign(-1)))
    };
    let (w, _) = sklyanin();
    assert!(unit(selfduality_signs(&w, true).unwrap()));
    let (om, _) = polynomial_ring(&["x", "y", "z"]);
    assert!(unit(selfduality_signs(&om, true).unwrap()));
    let (om4, _) = polynomial_ring(&["x", "y", "z", "t"]);
    assert!(unit(selfduality_signs(&om4, true).unwrap()));
}

#[test]
fn inverse_pairing_identity_has_uniform_sign() {
    // <[xi x], y>^{-1} = s <x, [y xi]>^{-1} with s = (-1)^{n-1} for every i
    let (w, _) = sklyanin();
    assert_eq!(
        duality_signs(&w, &Twist::identity(w.quiver())).unwrap(),
        vec![Some(sign(-1)); 4]
    );
    let (om, _) = polynomial_ring(&["x", "y", "z"]);
    assert_eq!(
        duality_signs(&om, &Twist::identity(om.quiver())).unwrap(),
        vec![Some(sign(1)); 3]
    );
    let (om4, _) = polynomial_ring(&["x", "y", "z", "t"]);
    assert_eq!(
        duality_signs(&om4, &Twist::identity(om4.quiver())).unwrap(),
        vec![Some(sign(-1)); 4]
    );
}

#[test]
fn staff_duality_needs_the_twist() {
    let p = SklyaninParams::from_ints((2, 1), (3, 1), (-5, 7)).unwrap();
    let one = CycNum::one(1);
    for v in [StaffVariant::DropR1, StaffVariant::DropS1] {
        let st = staff_presentation(v, &p, &one, &one).unwrap();
        let pot = st.potential.as_ref().unwrap();
        let twisted = duality_signs(pot, &st.twist).unwrap();
        assert!(twisted.iter().all(|t| t.is_some()), "{v:?}: {twisted:?}");
        let plain = duality_signs(pot, &Twist::identity(pot.quiver())).unwrap();
        assert!(plain.iter().all(|t| t.is_none()), "{v:?}: {plain:?}");
        for i in 0..=4 {
            assert!(supersymmetry_holds(pot, &st.twist, i).unwrap());
        }
        assert!(w_in_dual_coalgebra(pot, &st.presentation).unwrap());
        let c = build_selfdual_complex(pot, &st.twist, &st.presentation, 5).unwrap();
        assert_eq!(c.w_dims(), &[1, 4, 6, 4, 1]);
        assert!(c.certify(5).unwrap().passed());
        // the untwisted check refuses the potential
        assert!(matches!(
            build_selfdual_complex(pot, &Twist::identity(pot.quiver()), &st.presentation, 2),
            Err(Error::NotSuperpotential(_))
        ));
    }
}

#[test]
fn two_contraction_matches_selfdual_up_to_epsilon() {
    for (om, pres) in [sklyanin(), polynomial_ring(&["x", "y", "z"])] {
        let tw = Twist::identity(om.quiver());
        let n = om.degree();
        let a = build_selfdual_complex(&om, &tw, &pres, 4).unwrap();
        let b = build_contracted(&om, &tw, 2, &pres, 4).unwrap();
        let nc = build_ncomplex(&om, &tw, 2, &pres, 4).unwrap();
        assert_eq!(b.positions(), (0..=n).collect::<Vec<_>>().as_slice());
        for d in 0..=4 {
            assert_eq!(a.term_dims(d), b.term_dims(d));
            for k in 1..=n {
                assert_eq!(a.map_matrix(d, k), nc.map_matrix(d, k));
                assert_eq!(
                    a.map_matrix(d, k),
                    b.map_matrix(d, k).scale(&sign(epsilon(n, k))),
                    "degree {d} map {k}"
                );
            }
        }
        assert!(b.certify(4).unwrap().passed());
    }
}

#[test]
fn cubic_ncomplex_and_contraction() {
    let (om, pres) = cubic_ring();
    let tw = Twist::identity(om.quiver());
    let nc = build_ncomplex(&om, &tw, 3, &pres, 6).unwrap();
    assert_eq!(nc.nilpotency(), 3);
    assert!(nc.certify(6).unwrap().nilpotent);
    assert_eq!(contracted_positions(3, 3), vec![0, 1, 3]);
    assert_eq!(contracted_positions(7, 3), vec![0, 1, 3, 4, 6, 7]);
    let c = build_contracted(&om, &tw, 3, &pres, 6).unwrap();
    let w: Vec<usize> = c.positions().iter().map(|&i| c.w_dims()[i]).collect();
    assert_eq!(w, vec![1, 3, 1]);
    let r = c.certify(6).unwrap();
    assert!(r.passed(), "{r:?}");
    // A (x) W_0 (x) A, A (x) W_1 (x) A, A (x) W_3 (x) A in degree 3
    assert_eq!(r.degrees[3].dims, vec![106, 81, 1]);
}

#[test]
fn ncomplex_needs_matching_relations() {
    let (om, pres) = cubic_ring();
    let tw = Twist::identity(om.quiver());
    assert!(build_ncomplex(&om, &tw, 2, &pres, 3).is_err());
    let (w, skl) = sklyanin();
    assert!(build_ncomplex(&w, &Twist::identity(w.quiver()), 3, &skl, 3).is_err());
}

#[test]
fn generic_quartic_is_not_resolved() {
    let om = generic_quartic();
    assert!(!is_superpotential(&om, &Twist::identity(om.quiver())));
    let w = w_closure(&om).unwrap();
    assert_eq!(
        w.iter().map(|x| x.dim()).collect::<Vec<_>>(),
        vec![1, 4, 12, 8, 1]
    );
    let pres = Presentation::new(om.quiver(), 2, w[2].space.clone(), 1).unwrap();
    assert!(matches!(
        build_selfdual_complex(&om, &Twist::identity(om.quiver()), &pres, 2),
        Err(Error::NotSuperpotential(_))
    ));
    let r = build_complex_unchecked(&om, &pres, 4)
        .unwrap()
        .certify(4)
        .unwrap();
    assert!(!r.passed());
    let d3 = &r.degrees[3];
    // rank deficit in the middle: 60 + 8 < 96
    assert_eq!((d3.dims[2], d3.ranks[1], d3.ranks[2]), (96, 60, 8));
    assert!(!d3.exact_at[1]);
}

#[test]
fn closure_agrees_with_derivative_spans_for_superpotentials() {
    let (w, _) = sklyanin();
    let a: Vec<_> = w_closure(&w)
        .unwrap()
        .into_iter()
        .map(|x| x.space)
        .collect();
    let b: Vec<_> = w_spaces(&w).unwrap().into_iter().map(|x| x.space).collect();
    assert_eq!(a, b);
}
