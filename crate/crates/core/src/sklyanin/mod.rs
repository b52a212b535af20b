//! The four-dimensional Sklyanin algebras, their potentials, Staff's
//! modified variants and the finite Heisenberg symmetry.

mod heisenberg;

pub use heisenberg::{heisenberg_generators, heisenberg_generators_literal, ThetaTuple};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactfield::{CycNum, Matrix};
use crate::pathalg::{apply_graded_map, is_superpotential, Quiver, TensorElement, Twist};
use crate::quotient::Presentation;

/// The one-vertex quiver with loops x0..x3.
pub fn sklyanin_quiver() -> Quiver {
    Quiver::loops("v", &["x0", "x1", "x2", "x3"])
}

fn lift(x: &CycNum, n: u32) -> CycNum {
    x.embed(n).expect("conductor divides the common conductor")
}

/// Parameters (alpha, beta, gamma) on the surface a + b + c + abc = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SklyaninParams {
    pub alpha: CycNum,
    pub beta: CycNum,
    pub gamma: CycNum,
}

impl SklyaninParams {
    pub fn new(alpha: CycNum, beta: CycNum, gamma: CycNum) -> Result<Self> {
        let n = [&alpha, &beta, &gamma]
            .iter()
            .fold(1u32, |m, x| m.lcm(&x.conductor()));
        let (alpha, beta, gamma) = (lift(&alpha, n), lift(&beta, n), lift(&gamma, n));
        let s = &(&(&alpha + &beta) + &gamma) + &(&(&alpha * &beta) * &gamma);
        if !s.is_zero() {
            return Err(Error::Degenerate(format!(
                "({alpha}, {beta}, {gamma}) is off the surface a+b+c+abc=0"
            )));
        }
        Ok(SklyaninParams { alpha, beta, gamma })
    }

    /// Solve gamma = -(alpha + beta) / (1 + alpha beta).
    pub fn from_alpha_beta(alpha: CycNum, beta: CycNum) -> Result<Self> {
        let n = alpha.conductor().lcm(&beta.conductor());
        let (a, b) = (lift(&alpha, n), lift(&beta, n));
        let den = &CycNum::one(n) + &(&a * &b);
        if den.is_zero() {
            return Err(Error::Degenerate(
                "1 + alpha beta = 0: gamma is not determined".into(),
            ));
        }
        let g = -(&(&a + &b) / &den);
        SklyaninParams::new(a, b, g)
    }

    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Result<Self> {
        SklyaninParams::new(
            CycNum::from_frac(a.0, a.1, 1),
            CycNum::from_frac(b.0, b.1, 1),
            CycNum::from_frac(c.0, c.1, 1),
        )
    }

    pub fn conductor(&self) -> u32 {
        self.alpha.conductor()
    }

    /// Outside the excluded families (a, -1, 1), (1, b, -1), (-1, 1, c).
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.conductor();
        let one = CycNum::one(n);
        let m1 = CycNum::from_int(-1, n);
        !((self.beta == m1 && self.gamma == one)
            || (self.alpha == one && self.gamma == m1)
            || (self.alpha == m1 && self.beta == one))
    }

    pub fn all_nonzero(&self) -> bool {
        !(self.alpha.is_zero() || self.beta.is_zero() || self.gamma.is_zero())
    }

    /// The params as a triple.
    pub fn triple(&self) -> [CycNum; 3] {
        [self.alpha.clone(), self.beta.clone(), self.gamma.clone()]
    }
}

/// Sum of c * x_i x_j.
fn quad(q: &Quiver, n: u32, terms: &[(CycNum, u32, u32)]) -> TensorElement {
    TensorElement::from_terms(
        q,
        2,
        n,
        terms.iter().map(|(c, i, j)| (vec![*i, *j], c.clone())),
    )
    .unwrap()
}

fn comm(q: &Quiver, n: u32, i: u32, j: u32) -> TensorElement {
    quad(
        q,
        n,
        &[(CycNum::one(n), i, j), (CycNum::from_int(-1, n), j, i)],
    )
}

fn anti(q: &Quiver, n: u32, i: u32, j: u32) -> TensorElement {
    quad(q, n, &[(CycNum::one(n), i, j), (CycNum::one(n), j, i)])
}

/// Named relations of the algebra.
#[derive(Clone, Debug)]
pub struct SklyaninRelations {
    pub r: [TensorElement; 3],
    pub s: [TensorElement; 3],
}

/// r_k = [x0, x_k] - p_k {x_i, x_j}, s_k = {x0, x_k} - [x_i, x_j] for (k, i, j) cyclic.
pub fn sklyanin_relations(p: &SklyaninParams) -> SklyaninRelations {
    let q = sklyanin_quiver();
    let n = p.conductor();
    let blocks = [(1u32, 2u32, 3u32), (2, 3, 1), (3, 1, 2)];
    let par = p.triple();
    let r = std::array::from_fn(|k| {
        let (a, i, j) = blocks[k];
        comm(&q, n, 0, a)
            .axpy(&-par[k].clone(), &anti(&q, n, i, j))
            .unwrap()
    });
    let s = std::array::from_fn(|k| {
        let (a, i, j) = blocks[k];
        anti(&q, n, 0, a).sub(&comm(&q, n, i, j)).unwrap()
    });
    SklyaninRelations { r, s }
}

pub fn sklyanin_presentation(p: &SklyaninParams) -> Presentation {
    let rel = sklyanin_relations(p);
    let all: Vec<TensorElement> = rel.r.iter().chain(rel.s.iter()).cloned().collect();
    Presentation::from_elements(&sklyanin_quiver(), 2, &all, p.conductor())
        .expect("quadratic relations")
}

fn nullspace_line(rows: &[Vec<CycNum>], what: &str) -> Result<Vec<CycNum>> {
    let m = Matrix::from_rows(rows.to_vec())?;
    let ns = m.nullspace();
    if ns.dim() != 1 {
        return Err(Error::Degenerate(format!(
            "{what}: solution space has dimension {}",
            ns.dim()
        )));
    }
    let n = m.conductor();
    let mut v = ns.to_dense_rows(n).remove(0);
    if !v[0].is_zero() {
        let inv = v[0].inv()?;
        v = v.iter().map(|x| x * &inv).collect();
    }
    Ok(v)
}

/// (kappa1, kappa2, kappa3) up to scale, kappa1 = 1 when possible.
pub fn sklyanin_kappa(p: &SklyaninParams) -> Result<[CycNum; 3]> {
    if !p.is_nondegenerate() {
        return Err(Error::Degenerate(
            "parameters lie in an excluded family".into(),
        ));
    }
    let n = p.conductor();
    let one = CycNum::one(n);
    let z = CycNum::zero(n);
    let [a, b, c] = p.triple();
    let rows = vec![
        vec![&one + &a, z.clone(), -(&one - &c)],
        vec![&one - &a, -(&one + &b), z.clone()],
        vec![z, &one - &b, -(&one + &c)],
    ];
    let v = nullspace_line(&rows, "kappa system")?;
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

/// Symmetric product xy + yx of two quadratic elements.
fn sym(x: &TensorElement, y: &TensorElement) -> TensorElement {
    x.mul(y).unwrap().add(&y.mul(x).unwrap()).unwrap()
}

/// Graded commutator xy - yx.
fn skew(x: &TensorElement, y: &TensorElement) -> TensorElement {
    x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap()
}

/// omega = sum kappa_k (r_k s_k + s_k r_k).
pub fn sklyanin_potential(p: &SklyaninParams) -> Result<TensorElement> {
    let k = sklyanin_kappa(p)?;
    Ok(potential_with_kappa(p, &k))
}

fn potential_with_kappa(p: &SklyaninParams, k: &[CycNum; 3]) -> TensorElement {
    let rel = sklyanin_relations(p);
    let mut w = TensorElement::zero(&sklyanin_quiver(), 4, p.conductor());
    for i in 0..3 {
        w = w.axpy(&k[i], &sym(&rel.r[i], &rel.s[i])).unwrap();
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StaffVariant {
    DropR1,
    DropS1,
    Infinity,
}

impl std::str::FromStr for StaffVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "drop_r1" => Ok(StaffVariant::DropR1),
            "drop_s1" => Ok(StaffVariant::DropS1),
            "infinity" => Ok(StaffVariant::Infinity),
            _ => Err(Error::Parse(format!("unknown variant {s}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StaffAlgebra {
    pub variant: StaffVariant,
    pub presentation: Presentation,
    /// The twist the returned potential is verified against.
    pub twist: Twist,
    /// Solution of the displayed lambda system (normalized lambda1 = 1).
    pub lambda: Option<[CycNum; 3]>,
    /// Coefficients actually used in `potential`.
    pub potential_lambda: Option<[CycNum; 3]>,
    pub potential: Option<TensorElement>,
}

/// Omega_1 = -x0^2 + x1^2 + x2^2 + x3^2 and
/// Omega_2 = x1^2 + (1+a)/(1-b) x2^2 + (1-a)/(1+c) x3^2.
pub fn staff_omegas(p: &SklyaninParams) -> Result<(TensorElement, TensorElement)> {
    let q = sklyanin_quiver();
    let n = p.conductor();
    let one = CycNum::one(n);
    let [a, b, c] = p.triple();
    let o1 = quad(
        &q,
        n,
        &[
            (CycNum::from_int(-1, n), 0, 0),
            (one.clone(), 1, 1),
            (one.clone(), 2, 2),
            (one.clone(), 3, 3),
        ],
    );
    let (d2, d3) = (&one - &b, &one + &c);
    if d2.is_zero() || d3.is_zero() {
        return Err(Error::Degenerate(
            "Omega_2 needs beta != 1 and gamma != -1".into(),
        ));
    }
    let o2 = quad(
        &q,
        n,
        &[
            (one.clone(), 1, 1),
            (&(&one + &a) / &d2, 2, 2),
            (&(&one - &a) / &d3, 3, 3),
        ],
    );
    Ok((o1, o2))
}

/// Staff's modified algebras: five Sklyanin relations plus q = d1 Omega_1 + d2 Omega_2
/// (drop variants), or (r2, s2, r3, s3, Omega_1, Omega_2) for the infinity variant.
pub fn staff_presentation(
    variant: StaffVariant,
    p: &SklyaninParams,
    d1: &CycNum,
    d2: &CycNum,
) -> Result<StaffAlgebra> {
    let n = p.conductor().lcm(&d1.conductor()).lcm(&d2.conductor());
    let p = SklyaninParams::new(lift(&p.alpha, n), lift(&p.beta, n), lift(&p.gamma, n))?;
    let (d1, d2) = (lift(d1, n), lift(d2, n));
    let one = CycNum::one(n);
    let m1 = CycNum::from_int(-1, n);
    for x in p.triple() {
        if x.is_zero() || x == one || x == m1 {
            return Err(Error::Degenerate(
                "Staff variants need alpha, beta, gamma outside {0, 1, -1}".into(),
            ));
        }
    }
    let q = sklyanin_quiver();
    let rel = sklyanin_relations(&p);
    let (o1, o2) = staff_omegas(&p)?;
    let qq = o1.scale(&d1).add(&o2.scale(&d2))?;
    let [a, b, c] = p.triple();
    let (rels, twist, lambda, used, potential) = match variant {
        StaffVariant::DropR1 | StaffVariant::DropS1 => {
            let sigma = [m1.clone(), m1.clone(), one.clone(), one.clone()];
            let (rows, first) = if variant == StaffVariant::DropR1 {
                let rows = vec![
                    vec![d2.clone(), -(&(&b * &c) + &one), CycNum::zero(n)],
                    vec![d1.clone(), one.clone(), m1.clone()],
                ];
                (rows, rel.s[0].clone())
            } else {
                let rows = vec![
                    vec![&a * &d1, m1.clone(), one.clone()],
                    vec![&a * &(&d1 + &d2), -b.clone(), -c.clone()],
                ];
                (rows, rel.r[0].clone())
            };
            let l = nullspace_line(&rows, "lambda system")?;
            if l.iter().any(|x| x.is_zero()) {
                return Err(Error::Degenerate("(d1, d2) lies on an excluded ray".into()));
            }
            let lam = [l[0].clone(), l[1].clone(), l[2].clone()];
            // drop_s1: the twisted superpotential has lambda2, lambda3 and the twist negated
            let (used, tw) = if variant == StaffVariant::DropR1 {
                (lam.clone(), Twist::diagonal(&q, &sigma)?)
            } else {
                let neg: Vec<CycNum> = sigma.iter().map(|x| -x.clone()).collect();
                (
                    [lam[0].clone(), -lam[1].clone(), -lam[2].clone()],
                    Twist::diagonal(&q, &neg)?,
                )
            };
            let w = staff_potential(variant, &qq, &rel, &used)?;
            let mut rels = vec![
                qq.clone(),
                rel.r[1].clone(),
                rel.r[2].clone(),
                rel.s[1].clone(),
                rel.s[2].clone(),
            ];
            rels.push(first);
            (rels, tw, Some(lam), Some(used), Some(w))
        }
        StaffVariant::Infinity => {
            let tw = Twist::diagonal(&q, &[m1.clone(), m1.clone(), m1.clone(), m1])?;
            let rels = vec![
                rel.r[1].clone(),
                rel.s[1].clone(),
                rel.r[2].clone(),
                rel.s[2].clone(),
                o1,
                o2,
            ];
            (rels, tw, None, None, None)
        }
    };
    let presentation = Presentation::from_elements(&q, 2, &rels, n)?;
    Ok(StaffAlgebra {
        variant,
        presentation,
        twist,
        lambda,
        potential_lambda: used,
        potential,
    })
}

/// lambda1 (q t + t q) + lambda2 [.,.] + lambda3 [.,.] with t = s1 (drop_r1) or r1 (drop_s1).
pub fn staff_potential(
    variant: StaffVariant,
    qq: &TensorElement,
    rel: &SklyaninRelations,
    lam: &[CycNum; 3],
) -> Result<TensorElement> {
    let (first, a, b) = match variant {
        StaffVariant::DropR1 => (
            &rel.s[0],
            skew(&rel.r[1], &rel.r[2]),
            skew(&rel.s[1], &rel.s[2]),
        ),
        StaffVariant::DropS1 => (
            &rel.r[0],
            skew(&rel.r[1], &rel.s[2]),
            skew(&rel.s[1], &rel.r[2]),
        ),
        StaffVariant::Infinity => {
            return Err(Error::Unsupported(
                "no closed formula for the infinity variant".into(),
            ))
        }
    };
    sym(qq, first)
        .scale(&lam[0])
        .add(&a.scale(&lam[1]))?
        .add(&b.scale(&lam[2]))
}

/// apply_graded_map(g, w) == w, or == c w for some scalar c when `up_to_scalar`.
pub fn is_potential_automorphism(g: &Matrix, w: &TensorElement, up_to_scalar: bool) -> bool {
    let img = match apply_graded_map(g, w) {
        Ok(x) => x,
        Err(_) => return false,
    };
    if !up_to_scalar {
        return img == *w;
    }
    match w.terms().next() {
        None => img.is_zero(),
        Some((word, c)) => {
            let s = &img.coeff(word) / c;
            !s.is_zero() && img == w.scale(&s)
        }
    }
}

/// g (x) g maps the relation span onto itself.
pub fn is_presentation_automorphism(g: &Matrix, p: &Presentation) -> bool {
    if g.rank() != g.rows() {
        return false;
    }
    let idx = p.quiver().paths(p.degree());
    p.relation_elements()
        .iter()
        .all(|r| match apply_graded_map(g, r) {
            Ok(x) => p.relations().contains(&x.to_svec(&idx)),
            Err(_) => false,
        })
}

/// Coefficient of B1(x_i, x_j) B2(x_k, x_l) where B is the commutator (`false`)
/// or anticommutator (`true`), read off with the dual basis of the bracket basis.
pub fn bracket_coefficient(
    w: &TensorElement,
    first: (u32, u32, bool),
    second: (u32, u32, bool),
) -> CycNum {
    let n = w.conductor();
    let pairs =
        |(i, j, plus): (u32, u32, bool)| [((i, j), 1i64), ((j, i), if plus { 1 } else { -1 })];
    let mut acc = CycNum::zero(n);
    for ((i, j), s1) in pairs(first) {
        for ((k, l), s2) in pairs(second) {
            let c = w.coeff(&[i, j, k, l]);
            acc = &acc + &c.scale(&crate::exactfield::q(s1 * s2, 4));
        }
    }
    acc
}

/// Recover (alpha, beta, gamma) from a potential of the family via coefficient ratios in
/// the bracket basis: {x0,x1}{x2,x3} / [x0,x1][x2,x3] and the analogous (0,2),(3,1) and
/// (0,3),(1,2) blocks.
pub fn recover_parameters(w: &TensorElement) -> Result<SklyaninParams> {
    let blocks = [((0, 1), (2, 3)), ((0, 2), (3, 1)), ((0, 3), (1, 2))];
    let mut par = Vec::new();
    for ((i, j), (k, l)) in blocks {
        let num = bracket_coefficient(w, (i, j, true), (k, l, true));
        let den = bracket_coefficient(w, (i, j, false), (k, l, false));
        if den.is_zero() {
            return Err(Error::Degenerate(format!(
                "zero coefficient of [x{i},x{j}][x{k},x{l}]"
            )));
        }
        par.push(&num / &den);
    }
    let p = SklyaninParams::new(par[0].clone(), par[1].clone(), par[2].clone())?;
    let base = sklyanin_potential(&p)?;
    let (word, c) = base
        .terms()
        .next()
        .ok_or_else(|| Error::Consistency("zero potential".into()))?;
    let s = &w.coeff(word) / c;
    if *w != base.scale(&s) {
        return Err(Error::Consistency(
            "element is not a multiple of a family potential".into(),
        ));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum S3Element {
    Identity,
    /// x1 -> x2 -> x3 -> x1
    Cyclic,
    /// x1 -> x2, x2 -> -x1
    Transposition,
}

impl std::str::FromStr for S3Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" | "id" => Ok(S3Element::Identity),
            "cyclic" => Ok(S3Element::Cyclic),
            "transposition" => Ok(S3Element::Transposition),
            _ => Err(Error::Parse(format!("unknown S3 element {s}"))),
        }
    }
}

/// The substitution realizing an S3 generator and the parameters it lands on,
/// verified on relation spans.
pub fn s3_transport(p: &SklyaninParams, e: S3Element) -> Result<(Matrix, SklyaninParams)> {
    let n = p.conductor();
    let [a, b, c] = p.triple();
    let (g, target) = match e {
        S3Element::Identity => (Matrix::identity(4, n), p.clone()),
        S3Element::Cyclic => (
            Matrix::from_ints(
                &[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]],
                n,
            ),
            SklyaninParams::new(c, a, b)?,
        ),
        S3Element::Transposition => (
            Matrix::from_ints(
                &[&[1, 0, 0, 0], &[0, 0, -1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]],
                n,
            ),
            SklyaninParams::new(-b, -a, -c)?,
        ),
    };
    let src = sklyanin_presentation(p);
    let tgt = sklyanin_presentation(&target);
    let idx = src.quiver().paths(2);
    let imgs: Vec<_> = src
        .relation_elements()
        .iter()
        .map(|r| apply_graded_map(&g, r).map(|x| x.to_svec(&idx)))
        .collect::<Result<_>>()?;
    let span = crate::exactfield::Subspace::span(idx.len(), imgs.iter());
    if span != *tgt.relations() {
        return Err(Error::Consistency(
            "substitution does not carry the relations onto the target".into(),
        ));
    }
    Ok((g, target))
}

/// True when omega is a (plain) superpotential whose second derivatives span the relations.
pub fn check_potential(p: &SklyaninParams, w: &TensorElement) -> Result<bool> {
    let pres = sklyanin_presentation(p);
    let tw = Twist::identity(pres.quiver());
    Ok(is_superpotential(w, &tw) && crate::pathalg::delta_image(w, 2)? == *pres.relations())
}
