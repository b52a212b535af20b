use std::path::PathBuf;

use dquot::cli::*;
use dquot::exactfield::CycNum;
use dquot::pathalg::*;
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(format!(
        "{}/../../fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
}

fn job(command: Command) -> Outcome {
    run(&JobSpec {
        command,
        format: Format::Json,
    })
}

fn two_vertex_quiver() -> Quiver {
    Quiver::new(
        &["p", "q"],
        &[
            ("a", "p", "q"),
            ("b", "q", "p"),
            ("z", "q", "p"),
            ("i", "p", "p"),
        ],
    )
    .unwrap()
}

/// Random element of degree d over Q(z12) built from word picks.
fn element(q: &Quiver, d: usize, picks: &[(usize, i64, u32)]) -> TensorElement {
    let idx = q.paths(d);
    let mut e = TensorElement::zero(q, d, 12);
    if idx.is_empty() {
        return e;
    }
    for &(i, k, pow) in picks {
        let c = &CycNum::from_int(k, 12) * &CycNum::root_of_unity(12, pow as i64, 12).unwrap();
        let w = idx.words[i % idx.len()].clone();
        e = e
            .add(&TensorElement::from_terms(q, d, 12, [(w, c)]).unwrap())
            .unwrap();
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn full_render_round_trips(d in 0usize..5, picks in prop::collection::vec((0usize..500, -4i64..=4, 0u32..12), 0..7)) {
        let q = two_vertex_quiver();
        let x = element(&q, d, &picks);
        let text = render_potential(&x, &Twist::identity(&q), RenderMode::Full).unwrap();
        prop_assert_eq!(TensorElement::parse(&q, d, 12, &text).unwrap(), x.clone());
        prop_assert_eq!(parse_element(&q, 12, &text).unwrap().degree(), if x.is_zero() { 0 } else { d });
    }

    #[test]
    fn cyclic_render_round_trips(d in 1usize..5, picks in prop::collection::vec((0usize..500, -4i64..=4, 0u32..12), 1..5)) {
        // supersymmetrize a random element on a one-vertex quiver
        let q = Quiver::loops("v", &["x", "i", "z"]);
        let tw = Twist::identity(&q);
        let x = element(&q, d, &picks);
        let sign = CycNum::from_int(if d % 2 == 1 { 1 } else { -1 }, 1);
        let mut acc = TensorElement::zero(&q, d, 12);
        let mut cur = x;
        for _ in 0..d {
            acc = acc.add(&cur).unwrap();
            cur = cyclic_shift(&cur, &tw).unwrap().scale(&sign);
        }
        prop_assert!(is_superpotential(&acc, &tw));
        let text = render_potential(&acc, &tw, RenderMode::Cyclic).unwrap();
        prop_assert_eq!(parse_cyclic(&q, d, 12, &tw, &text).unwrap(), acc.clone());
        // one term per orbit, each a smallest rotation
        for (w, _) in cyclic_orbits(&acc, &tw).unwrap() {
            for k in 1..d {
                let mut r = w[k..].to_vec();
                r.extend_from_slice(&w[..k]);
                prop_assert!(w <= r);
            }
        }
    }
}

#[test]
fn d8_cyclic_form() {
    let g: dquot::mckay::GroupInput = read_json(&fixture("d8.json")).unwrap();
    let m = g.build().unwrap();
    let (phi, tw) = m.potential(false).unwrap();
    let half = phi.scale(&CycNum::from_rational(dquot::exactfield::q(1, 2), 1));
    let text = render_potential(&half, &tw, RenderMode::Cyclic).unwrap();
    // -(D.a)^tw + (C.b)^tw, written with smallest words as representatives
    assert_eq!(text, "-(A.d)^tw + (B.c)^tw");
    let q = m.quiver();
    let written = parse_cyclic(q, 2, m.conductor(), &tw, "-(D.a)^tw + (C.b)^tw").unwrap();
    assert_eq!(written, half);
    assert!(parse_cyclic(q, 2, m.conductor(), &tw, "-(D.a) + (C.b)").is_err());
}

#[test]
fn odd_loop_counts_n_times() {
    let q = Quiver::loops("v", &["u", "x"]);
    let tw = Twist::identity(&q);
    let c = CycNum::from_int(5, 1);
    let uuu = TensorElement::from_terms(&q, 3, 1, [(vec![0, 0, 0], c.clone())]).unwrap();
    assert_eq!(
        render_potential(&uuu, &tw, RenderMode::Cyclic).unwrap(),
        "5/3 (u.u.u)"
    );
    let five = TensorElement::from_terms(&q, 5, 1, [(vec![0; 5], c)]).unwrap();
    assert_eq!(
        render_potential(&five, &tw, RenderMode::Cyclic).unwrap(),
        "(u.u.u.u.u)"
    );
    // u.x.u.x has a period-2 orbit, so the orbit sum counts it twice
    let uxux = TensorElement::from_terms(
        &q,
        4,
        1,
        [
            (vec![0, 1, 0, 1], CycNum::one(1)),
            (vec![1, 0, 1, 0], CycNum::from_int(-1, 1)),
        ],
    )
    .unwrap();
    assert!(is_superpotential(&uxux, &tw));
    assert_eq!(
        render_potential(&uxux, &tw, RenderMode::Cyclic).unwrap(),
        "1/2 (u.x.u.x)"
    );
    assert_eq!(parse_cyclic(&q, 4, 1, &tw, "1/2 (u.x.u.x)").unwrap(), uxux);
    let uuxx = parse_cyclic(&q, 4, 1, &tw, "2 (u.u.x.x)").unwrap();
    assert_eq!(uuxx.len(), 4);
    assert_eq!(
        render_potential(&uuxx, &tw, RenderMode::Cyclic).unwrap(),
        "2 (u.u.x.x)"
    );
}

#[test]
fn zero_and_non_super_inputs() {
    let q = Quiver::loops("v", &["x", "y"]);
    let tw = Twist::identity(&q);
    assert_eq!(
        render_potential(&TensorElement::zero(&q, 3, 1), &tw, RenderMode::Cyclic).unwrap(),
        ""
    );
    assert_eq!(
        render_potential(&TensorElement::zero(&q, 3, 1), &tw, RenderMode::Full).unwrap(),
        "0"
    );
    let xy = TensorElement::parse(&q, 2, 1, "x.y").unwrap();
    assert!(matches!(
        render_potential(&xy, &tw, RenderMode::Cyclic),
        Err(dquot::Error::NotSuperpotential(_))
    ));
    assert!(parse_cyclic(&q, 2, 1, &tw, "").unwrap().is_zero());
}

#[test]
fn conductor_inference() {
    assert_eq!(infer_conductor(&["1", "z8", "z16^3"]).unwrap(), 16);
    assert_eq!(infer_conductor(&["3/4 + i"]).unwrap(), 4);
    assert_eq!(infer_conductor(&["-5/7"]).unwrap(), 1);
    assert_eq!(infer_conductor(&["z3", "z4"]).unwrap(), 12);
    assert!(infer_conductor(&["z^2"]).is_err());
}

#[test]
fn exit_codes() {
    let ok = job(Command::CheckSuperpotential {
        input: fixture("sklyanin.json"),
    });
    assert_eq!(ok.status, 0);
    assert_eq!(ok.report["superpotential"], true);
    let bad = job(Command::CheckSuperpotential {
        input: fixture("generic_quartic.json"),
    });
    assert_eq!(bad.status, 1);
    let broken = job(Command::Hilbert {
        input: fixture("malformed.json"),
        dmax: 2,
        order: None,
    });
    assert_eq!(broken.status, 2);
    let missing = job(Command::Derive {
        input: fixture("no_such_file.json"),
        order: 1,
    });
    assert_eq!(missing.status, 2);
    // order mismatch with the requested N-complex is a usage error
    let mismatch = job(Command::ComplexCheck {
        potential: fixture("polynomial3.json"),
        order: Some(1),
        dmax: 2,
        ncomplex: Some(3),
        contract: false,
    });
    assert_eq!(mismatch.status, 2);
    // same job, same report
    let again = job(Command::CheckSuperpotential {
        input: fixture("sklyanin.json"),
    });
    assert_eq!(again.report, ok.report);
}

#[test]
fn sklyanin_commands() {
    let h = job(Command::Hilbert {
        input: fixture("sklyanin_relations.json"),
        dmax: 4,
        order: None,
    });
    assert_eq!(h.status, 0);
    assert_eq!(h.text, "1 4 10 20 35\n");
    assert_eq!(
        h.report["ideal_dims"],
        serde_json::json!([0, 0, 6, 44, 221])
    );
    let d = job(Command::Derive {
        input: fixture("sklyanin.json"),
        order: 2,
    });
    assert_eq!(d.report["dim"], 6);
    assert_eq!(d.text.lines().count(), 6);
    let k = job(Command::KoszulDual {
        input: fixture("sklyanin.json"),
        dmax: 5,
        order: None,
    });
    assert_eq!(k.status, 0);
    assert_eq!(k.report["dims"], serde_json::json!([1, 4, 6, 4, 1, 0]));
    assert_eq!(k.report["w_in_dual_coalgebra"], true);
}

#[test]
fn manifest_runs_clean() {
    let out = job(Command::FixturesRunAll { dir: fixture("") });
    assert_eq!(out.status, 0, "{}", out.text);
    assert!(out.report["jobs"].as_array().unwrap().len() >= 25);
}

#[test]
fn job_specs_deserialize() {
    let spec: JobSpec = serde_json::from_str(
        r#"{"command": "complex-check", "potential": "w.json", "dmax": 3, "format": "json"}"#,
    )
    .unwrap();
    assert_eq!(spec.format, Format::Json);
    assert!(matches!(
        spec.command,
        Command::ComplexCheck {
            dmax: 3,
            ncomplex: None,
            contract: false,
            ..
        }
    ));
    assert!(serde_json::from_str::<JobSpec>(r#"{"command": "nope"}"#).is_err());
}
