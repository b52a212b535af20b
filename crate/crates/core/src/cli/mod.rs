//! Job dispatch, JSON input schema, canonical rendering and the fixture runner
//! behind the `dquot` binary. Exit status: 0 when every requested check
//! passes, 1 on a failed check, 2 on unreadable input.

mod fixtures;
mod render;
mod schema;

use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use fixtures::{run_manifest, Manifest, ManifestJob};
pub use render::{cyclic_orbits, expand_orbit, parse_cyclic, render_potential, RenderMode};
pub use schema::{
    parse_element, read_json, Algebra, AlgebraJson, ArrowJson, ElementJson, QuiverJson, TermJson,
    TwistJson,
};

use crate::complexes::{
    build_contracted, build_ncomplex, duality_signs, supersymmetry_holds, w_in_dual_coalgebra,
};
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, Matrix};
use crate::mckay::GroupInput;
use crate::pathalg::{delta_image, is_superpotential, is_weak_potential, TensorElement, Twist};
use crate::quotient::{dual_coalgebra_slice, graded_dims, koszul_dual, Presentation};
use crate::sklyanin::{
    check_potential, heisenberg_generators, is_potential_automorphism, recover_parameters,
    s3_transport, sklyanin_kappa, sklyanin_potential, sklyanin_presentation, staff_presentation,
    S3Element, SklyaninParams, StaffVariant, ThetaTuple,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SklyaninCheck {
    Potential,
    Complex,
    Heisenberg,
    Recover,
    S3,
    Staff,
}

impl std::str::FromStr for SklyaninCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.to_string()))
            .map_err(|_| Error::Parse(format!("unknown check {s}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    CheckSuperpotential {
        input: PathBuf,
    },
    Derive {
        input: PathBuf,
        order: usize,
    },
    Hilbert {
        input: PathBuf,
        dmax: usize,
        #[serde(default)]
        order: Option<usize>,
    },
    KoszulDual {
        input: PathBuf,
        dmax: usize,
        #[serde(default)]
        order: Option<usize>,
    },
    ComplexCheck {
        potential: PathBuf,
        #[serde(default)]
        order: Option<usize>,
        dmax: usize,
        #[serde(default)]
        ncomplex: Option<usize>,
        #[serde(default)]
        contract: bool,
    },
    Mckay {
        input: PathBuf,
        #[serde(default = "four")]
        degree_check: usize,
        #[serde(default)]
        normalize: bool,
    },
    Sklyanin {
        #[serde(default)]
        alpha: Option<String>,
        #[serde(default)]
        beta: Option<String>,
        #[serde(default)]
        gamma: Option<String>,
        #[serde(default)]
        theta: Option<Vec<String>>,
        #[serde(default)]
        conductor: Option<u32>,
        checks: Vec<SklyaninCheck>,
        #[serde(default = "four")]
        dmax: usize,
        #[serde(default)]
        staff: Option<String>,
        #[serde(default)]
        d1: Option<String>,
        #[serde(default)]
        d2: Option<String>,
    },
    FixturesRunAll {
        dir: PathBuf,
    },
}

fn four() -> usize {
    4
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(flatten)]
    pub command: Command,
    #[serde(default)]
    pub format: Format,
}

/// Result of one job: exit status, machine report and human text.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: i32,
    pub report: Value,
    pub text: String,
}

impl Outcome {
    fn checked(ok: bool, report: Value, text: String) -> Self {
        Outcome {
            status: if ok { 0 } else { 1 },
            report,
            text,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                serde_json::to_string_pretty(&self.report).expect("serializable report") + "\n"
            }
        }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let status = match e {
        Error::Parse(_) => 2,
        _ => 1,
    };
    Outcome {
        status,
        report: json!({ "error": e.to_string() }),
        text: format!("error: {e}\n"),
    }
}

pub fn run(job: &JobSpec) -> Outcome {
    let res = match &job.command {
        Command::CheckSuperpotential { input } => check_superpotential(input),
        Command::Derive { input, order } => derive(input, *order),
        Command::Hilbert { input, dmax, order } => hilbert(input, *dmax, *order),
        Command::KoszulDual { input, dmax, order } => koszul(input, *dmax, *order),
        Command::ComplexCheck {
            potential,
            order,
            dmax,
            ncomplex,
            contract,
        } => complex_check(potential, *order, *dmax, *ncomplex, *contract),
        Command::Mckay {
            input,
            degree_check,
            normalize,
        } => mckay(input, *degree_check, *normalize),
        Command::Sklyanin { .. } => sklyanin(&job.command),
        Command::FixturesRunAll { dir } => run_manifest(dir),
    };
    res.unwrap_or_else(|e| error_outcome(&e))
}

fn load(path: &FsPath) -> Result<Algebra> {
    read_json::<AlgebraJson>(path)?.build()
}

fn texts(xs: &[TensorElement]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn basis_elements(p: &Presentation) -> Vec<String> {
    texts(&p.relation_elements())
}

fn check_superpotential(input: &FsPath) -> Result<Outcome> {
    let a = load(input)?;
    let w = a.potential()?;
    let weak = is_weak_potential(w, &a.twist);
    let sup = is_superpotential(w, &a.twist);
    let cyclic = if sup {
        render_potential(w, &a.twist, RenderMode::Cyclic).ok()
    } else {
        None
    };
    let mut text = format!("{}: degree {}, {} terms\n", a.name, w.degree(), w.len());
    let _ = writeln!(text, "weak potential: {weak}");
    let _ = writeln!(
        text,
        "superpotential{}: {sup}",
        if a.twist.is_identity() {
            ""
        } else {
            " (twisted)"
        }
    );
    if let Some(c) = &cyclic {
        let _ = writeln!(text, "cyclic: {c}");
    }
    let report = json!({
        "name": a.name, "degree": w.degree(), "terms": w.len(), "twisted": !a.twist.is_identity(),
        "weak_potential": weak, "superpotential": sup, "cyclic": cyclic,
    });
    Ok(Outcome::checked(sup, report, text))
}

fn derive(input: &FsPath, order: usize) -> Result<Outcome> {
    let a = load(input)?;
    let w = a.potential()?;
    if order > w.degree() {
        return Err(Error::Degree(format!(
            "derivative order {order} exceeds the degree {}",
            w.degree()
        )));
    }
    let span = delta_image(w, order)?;
    let q = &a.quiver;
    let idx = q.paths(w.degree() - order);
    let rels: Vec<TensorElement> = span
        .basis()
        .iter()
        .map(|v| TensorElement::from_svec(q, &idx, a.conductor, v))
        .collect();
    let mut text = String::new();
    for r in &rels {
        let _ = writeln!(text, "{r}");
    }
    let report =
        json!({ "name": a.name, "order": order, "dim": rels.len(), "relations": texts(&rels) });
    Ok(Outcome::checked(true, report, text))
}

fn dims_line(d: &[usize]) -> String {
    d.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn hilbert(input: &FsPath, dmax: usize, order: Option<usize>) -> Result<Outcome> {
    let a = load(input)?;
    let p = a.presentation(order)?;
    let dims = graded_dims(&p, dmax);
    let ideal: Vec<usize> = dims
        .iter()
        .enumerate()
        .map(|(d, k)| a.quiver.paths(d).len() - k)
        .collect();
    let report =
        json!({ "name": a.name, "relation_degree": p.degree(), "dims": dims, "ideal_dims": ideal });
    Ok(Outcome::checked(true, report, dims_line(&dims) + "\n"))
}

fn koszul(input: &FsPath, dmax: usize, order: Option<usize>) -> Result<Outcome> {
    let a = load(input)?;
    let p = a.presentation(order)?;
    let dual = koszul_dual(&p)?;
    let dims = graded_dims(&dual, dmax);
    let mut text = format!("dims: {}\n", dims_line(&dims));
    let mut ok = true;
    let w_in = match &a.potential {
        Some(w) if p.degree() == 2 => {
            let b = w_in_dual_coalgebra(w, &p)?;
            ok &= b;
            let _ = writeln!(text, "W_i in (A^!_i)*: {b}");
            Some(b)
        }
        _ => None,
    };
    let slices = (0..=dmax)
        .map(|k| dual_coalgebra_slice(&p, k).map(|s| s.dim()))
        .collect::<Result<Vec<_>>>()?;
    let report = json!({
        "name": a.name, "dims": dims, "dual_coalgebra_dims": slices,
        "relations": basis_elements(&dual), "w_in_dual_coalgebra": w_in,
    });
    Ok(Outcome::checked(ok, report, text))
}

fn complex_check(
    input: &FsPath,
    order: Option<usize>,
    dmax: usize,
    ncomplex: Option<usize>,
    contract: bool,
) -> Result<Outcome> {
    let a = load(input)?;
    let w = a.potential()?;
    let n = w.degree();
    let big_n = ncomplex.unwrap_or(2);
    let order = order.unwrap_or(n.saturating_sub(big_n));
    if n < order + big_n || n - order != big_n {
        return Err(Error::Parse(format!(
            "derivative order {order} gives relations of degree {}, not {big_n}",
            n.saturating_sub(order)
        )));
    }
    let p = a.presentation(Some(order))?;
    let c = if contract {
        build_contracted(w, &a.twist, big_n, &p, dmax)?
    } else {
        build_ncomplex(w, &a.twist, big_n, &p, dmax)?
    };
    let r = c.certify(dmax)?;
    let ok = if big_n == 2 || contract {
        r.passed()
    } else {
        r.nilpotent
    };
    let mut text = format!(
        "W dims {:?}, positions {:?}, certified to degree {dmax}\n",
        r.w_dims, r.positions
    );
    for d in &r.degrees {
        let _ = writeln!(
            text,
            "d={}: dims {:?} ranks {:?} nilpotent {} exact {:?} h0 {}",
            d.degree, d.dims, d.ranks, d.nilpotent, d.exact_at, d.h0
        );
    }
    let mut report = serde_json::to_value(&r).expect("serializable");
    if big_n == 2 {
        let susy = (0..=n)
            .map(|i| supersymmetry_holds(w, &a.twist, i))
            .collect::<Result<Vec<_>>>()?;
        let signs: Vec<Option<String>> = duality_signs(w, &a.twist)?
            .into_iter()
            .map(|s| s.map(|c| c.to_string()))
            .collect();
        let dual_ok = susy.iter().all(|&b| b) && signs.iter().all(|s| s.is_some());
        let _ = writeln!(text, "supersymmetry {susy:?}, duality signs {signs:?}");
        report["supersymmetry"] = json!(susy);
        report["duality_signs"] = json!(signs);
        report["passed"] = json!(ok && dual_ok);
        let _ = writeln!(text, "passed: {}", ok && dual_ok);
        return Ok(Outcome::checked(ok && dual_ok, report, text));
    }
    report["passed"] = json!(ok);
    let _ = writeln!(text, "passed: {ok}");
    Ok(Outcome::checked(ok, report, text))
}

fn mckay(input: &FsPath, degree_check: usize, normalize: bool) -> Result<Outcome> {
    let g: GroupInput = read_json(input)?;
    let m = g.build()?;
    let q = m.quiver().clone();
    let names = q.vertices();
    let mut text = format!(
        "{}: |G| = {}, {} vertices, {} arrows\n",
        g.name,
        m.group().order(),
        q.vertex_count(),
        q.arrow_count()
    );
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({ "name": a.name, "tail": names[a.tail], "head": names[a.head] }))
        .collect();
    for a in q.arrows() {
        let _ = writeln!(text, "  {}: {} -> {}", a.name, names[a.tail], names[a.head]);
    }
    let tau: Vec<&str> = m.tau().iter().map(|&t| names[t].as_str()).collect();
    let _ = writeln!(text, "tau: {}", tau.join(" "));
    let (phi, tw) = m.potential(normalize)?;
    let cyclic = render_potential(&phi, &tw, RenderMode::Cyclic).ok();
    let _ = writeln!(text, "Phi = {phi}");
    if let Some(c) = &cyclic {
        let _ = writeln!(text, "Phi (cyclic) = {c}");
    }
    let order = phi.degree().saturating_sub(2);
    let pres = m.presentation(&phi)?;
    let rels = basis_elements(&pres);
    let _ = writeln!(text, "relations (order {order}): {}", rels.len());
    for r in &rels {
        let _ = writeln!(text, "  {r}");
    }
    let bad = m.molien_mismatches(&pres, degree_check)?;
    let _ = writeln!(
        text,
        "Molien check to degree {degree_check}: {}",
        if bad.is_empty() {
            "ok".to_string()
        } else {
            format!("mismatch in degrees {bad:?}")
        }
    );
    let report = json!({
        "name": g.name, "order": m.group().order(), "vertices": names, "arrows": arrows, "tau": tau,
        "twist_is_identity": tw.is_identity(), "potential": phi.to_string(), "cyclic": cyclic,
        "relations": rels, "molien_degree": degree_check, "molien_mismatches": bad,
    });
    Ok(Outcome::checked(bad.is_empty(), report, text))
}

/// The conductor needed by the given number strings: lcm of M over `zM`
/// tokens, with `i` contributing 4. A bare `z` needs an explicit conductor.
pub fn infer_conductor(values: &[&str]) -> Result<u32> {
    let mut n = 1u32;
    for s in values {
        let b = s.as_bytes();
        for (k, &c) in b.iter().enumerate() {
            let prev_alpha = k > 0 && (b[k - 1] as char).is_ascii_alphanumeric();
            if prev_alpha {
                continue;
            }
            if c == b'i' && !b.get(k + 1).is_some_and(|x| x.is_ascii_alphanumeric()) {
                n = num_integer::lcm(n, 4);
            } else if c == b'z' {
                let digits: String = s[k + 1..]
                    .chars()
                    .take_while(|x| x.is_ascii_digit())
                    .collect();
                if digits.is_empty() {
                    return Err(Error::Parse(format!("{s}: a bare z needs --conductor")));
                }
                n = num_integer::lcm(
                    n,
                    digits
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(e.to_string()))?,
                );
            }
        }
    }
    Ok(n)
}

fn sklyanin(cmd: &Command) -> Result<Outcome> {
    let Command::Sklyanin {
        alpha,
        beta,
        gamma,
        theta,
        conductor,
        checks,
        dmax,
        staff,
        d1,
        d2,
    } = cmd
    else {
        unreachable!()
    };
    let mut strs: Vec<&str> = alpha
        .iter()
        .chain(beta)
        .chain(gamma)
        .map(String::as_str)
        .collect();
    strs.extend(theta.iter().flatten().map(String::as_str));
    strs.extend(d1.iter().chain(d2).map(String::as_str));
    let n = match conductor {
        Some(n) => *n,
        None => infer_conductor(&strs)?,
    };
    let num = |s: &str| CycNum::parse(s, n).and_then(|c| c.embed(n));
    let theta = match theta {
        Some(t) => {
            let vals = t.iter().map(|s| num(s)).collect::<Result<Vec<_>>>()?;
            let t: [CycNum; 4] = vals
                .try_into()
                .map_err(|_| Error::Parse("--theta takes four values".into()))?;
            Some(ThetaTuple::new(t)?)
        }
        None => None,
    };
    let p = match (alpha, beta, gamma, &theta) {
        (Some(a), Some(b), Some(g), _) => SklyaninParams::new(num(a)?, num(b)?, num(g)?)?,
        (Some(a), Some(b), None, _) => SklyaninParams::from_alpha_beta(num(a)?, num(b)?)?,
        (None, None, None, Some(t)) => t.params()?,
        _ => {
            return Err(Error::Parse(
                "give --alpha and --beta (and optionally --gamma), or --theta alone".into(),
            ))
        }
    };
    let [a, b, c] = p.triple();
    let mut report = json!({ "alpha": a.to_string(), "beta": b.to_string(), "gamma": c.to_string(), "conductor": n });
    let mut text = format!("(alpha, beta, gamma) = ({a}, {b}, {c}) in Q(z{n})\n");
    let mut ok = true;
    let mut record =
        |name: &str, pass: bool, detail: Value, text: &mut String, report: &mut Value| {
            ok &= pass;
            let _ = writeln!(text, "{name}: {}", if pass { "pass" } else { "FAIL" });
            report[name] = detail;
            report[name]["pass"] = json!(pass);
        };
    let w = sklyanin_potential(&p)?;
    for check in checks {
        match check {
            SklyaninCheck::Potential => {
                let kappa = sklyanin_kappa(&p)?;
                let pass = check_potential(&p, &w)?;
                let dims = graded_dims(&sklyanin_presentation(&p), 4);
                let _ = writeln!(
                    text,
                    "kappa = ({}, {}, {})\nomega = {w}\nHilbert {}",
                    kappa[0],
                    kappa[1],
                    kappa[2],
                    dims_line(&dims)
                );
                let detail = json!({ "kappa": kappa.iter().map(|k| k.to_string()).collect::<Vec<_>>(), "potential": w.to_string(), "dims": dims });
                record(
                    "potential",
                    pass && dims == [1, 4, 10, 20, 35],
                    detail,
                    &mut text,
                    &mut report,
                );
            }
            SklyaninCheck::Complex => {
                let pres = sklyanin_presentation(&p);
                let tw = Twist::identity(pres.quiver());
                let cx = build_ncomplex(&w, &tw, 2, &pres, *dmax)?;
                let r = cx.certify(*dmax)?;
                let susy = (0..=4).all(|i| supersymmetry_holds(&w, &tw, i).unwrap_or(false));
                let detail = json!({ "dmax": dmax, "w_dims": r.w_dims, "nilpotent": r.nilpotent, "exact": r.exact, "h0": r.h0, "supersymmetry": susy });
                record(
                    "complex",
                    r.passed() && susy && r.w_dims == [1, 4, 6, 4, 1],
                    detail,
                    &mut text,
                    &mut report,
                );
            }
            SklyaninCheck::Heisenberg => {
                let th = theta
                    .as_ref()
                    .ok_or_else(|| Error::Parse("the heisenberg check needs --theta".into()))?;
                let tp = th.params()?;
                let wt = sklyanin_potential(&tp)?;
                let (x, y) = heisenberg_generators(th)?;
                let g = crate::mckay::group_closure(&[x.clone(), y.clone()], 10_000)?;
                let m1 = Matrix::scalar(4, &CycNum::from_int(-1, th.conductor()));
                let i = Matrix::scalar(4, &CycNum::root_of_unity(4, 1, th.conductor())?);
                let comm = x
                    .try_mul(&y)?
                    .try_mul(&x.inverse()?)?
                    .try_mul(&y.inverse()?)?;
                let orders = x.pow(4) == m1 && y.pow(4) == m1;
                let preserved = g
                    .elements()
                    .iter()
                    .filter(|e| is_potential_automorphism(e, &wt, false))
                    .count();
                let detail = json!({ "order": g.order(), "x4_y4_minus_one": orders, "commutator_is_i": comm == i, "preserving": preserved });
                let _ = writeln!(
                    text,
                    "|<X, Y>| = {}, {} elements preserve omega",
                    g.order(),
                    preserved
                );
                record(
                    "heisenberg",
                    orders && comm == i && g.order() == 64 && preserved == 64,
                    detail,
                    &mut text,
                    &mut report,
                );
            }
            SklyaninCheck::Recover => {
                let back = recover_parameters(&w)?;
                let scaled = recover_parameters(&w.scale(&CycNum::from_int(-3, 1)))?;
                record(
                    "recover",
                    back == p && scaled == p,
                    json!({}),
                    &mut text,
                    &mut report,
                );
            }
            SklyaninCheck::S3 => {
                let mut targets = Vec::new();
                let mut pass = true;
                for e in [S3Element::Cyclic, S3Element::Transposition] {
                    match s3_transport(&p, e) {
                        Ok((_, t)) => targets
                            .push(t.triple().iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                        Err(_) => pass = false,
                    }
                }
                record(
                    "s3",
                    pass,
                    json!({ "targets": targets }),
                    &mut text,
                    &mut report,
                );
            }
            SklyaninCheck::Staff => {
                let variant: StaffVariant = staff.as_deref().unwrap_or("drop_r1").parse()?;
                let d1 = num(d1.as_deref().unwrap_or("1"))?;
                let d2 = num(d2.as_deref().unwrap_or("1"))?;
                let st = staff_presentation(variant, &p, &d1, &d2)?;
                let dims = graded_dims(&st.presentation, 3);
                let twisted = st.potential.as_ref().map(|pot| {
                    is_superpotential(pot, &st.twist)
                        && delta_image(pot, 2).ok().as_ref() == Some(st.presentation.relations())
                });
                let sigma: Vec<String> = (0..4u32)
                    .map(|a| {
                        TensorElement::from_svec(
                            st.presentation.quiver(),
                            &st.presentation.quiver().paths(1),
                            n,
                            st.twist.image(a),
                        )
                        .to_string()
                    })
                    .collect();
                let detail = json!({
                    "variant": staff.as_deref().unwrap_or("drop_r1"), "dims": dims,
                    "lambda": st.lambda.as_ref().map(|l| l.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    "potential": st.potential.as_ref().map(|x| x.to_string()), "twist": sigma, "twisted_superpotential": twisted,
                });
                let _ = writeln!(text, "Staff {variant:?}: dims {}", dims_line(&dims));
                record(
                    "staff",
                    dims == [1, 4, 10, 20] && twisted != Some(false),
                    detail,
                    &mut text,
                    &mut report,
                );
            }
        }
    }
    Ok(Outcome::checked(ok, report, text))
}
