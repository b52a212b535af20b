use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactfield::CycNum;
use crate::pathalg::{is_superpotential, Path, Quiver, TensorElement, Twist};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderMode {
    Full,
    Cyclic,
}

impl std::str::FromStr for RenderMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(RenderMode::Full),
            "cyclic" => Ok(RenderMode::Cyclic),
            _ => Err(Error::Parse(format!("unknown render mode {s}"))),
        }
    }
}

/// One step of S = (-1)^(n-1) x shift on a single word, for a monomial twist.
fn step(q: &Quiver, tw: &Twist, w: &[u32]) -> Result<(Vec<u32>, CycNum)> {
    let n = w.len();
    let img = tw.image(*w.last().unwrap());
    let [(b, s)] = img.as_slice() else {
        return Err(Error::Unsupported(
            "cyclic rendering needs a monomial twist".into(),
        ));
    };
    let b = *b as u32;
    if n > 1 && q.tail(b) != q.head(w[0]) {
        return Err(Error::NotSuperpotential(
            "shifted word is not a path".into(),
        ));
    }
    let mut out = Vec::with_capacity(n);
    out.push(b);
    out.extend_from_slice(&w[..n - 1]);
    let s = if n % 2 == 0 { -s.clone() } else { s.clone() };
    Ok((out, s))
}

/// The S-orbit of w as (word, scalar with S^k(w) = scalar word), stopping before w recurs.
fn orbit(q: &Quiver, tw: &Twist, w: &[u32]) -> Result<(Vec<(Vec<u32>, CycNum)>, CycNum)> {
    let mut out = vec![(w.to_vec(), CycNum::one(1))];
    loop {
        let (last, s) = out.last().unwrap();
        let (next, t) = step(q, tw, last)?;
        let acc = s * &t;
        if next == w {
            return Ok((out, acc));
        }
        if out.iter().any(|(v, _)| *v == next) {
            return Err(Error::Consistency(
                "shift orbit does not return to its start".into(),
            ));
        }
        out.push((next, acc));
    }
}

/// Orbit representatives (smallest word) with their compact coefficients:
/// x restricted to an orbit of length L is c (w)^tw / (lcm(L, n)/L), where
/// (w)^tw sums lcm(L, n) successive shifts of w.
pub fn cyclic_orbits(x: &TensorElement, tw: &Twist) -> Result<Vec<(Vec<u32>, CycNum)>> {
    if !is_superpotential(x, tw) {
        return Err(Error::NotSuperpotential(
            "cyclic rendering needs a (twisted) superpotential".into(),
        ));
    }
    let q = x.quiver();
    let n = x.degree();
    if n == 0 {
        return Err(Error::Degree(
            "cyclic rendering of a degree-0 element".into(),
        ));
    }
    let mut seen: BTreeMap<Vec<u32>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for (w, _) in x.terms() {
        if seen.contains_key(w) {
            continue;
        }
        let (orb, _) = orbit(q, tw, w)?;
        for (v, _) in &orb {
            seen.insert(v.clone(), ());
        }
        let rep = orb.iter().map(|(v, _)| v).min().unwrap().clone();
        let len = orb.len();
        let mult = len.lcm(&n) / len;
        let c = x.coeff(&rep).scale(&crate::exactfield::q(1, mult as i64));
        out.push((rep, c));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// c (w)^tw expanded: c times the sum of lcm(L, n) successive S-shifts of w.
pub fn expand_orbit(q: &Quiver, tw: &Twist, w: &[u32], c: &CycNum) -> Result<TensorElement> {
    let n = w.len();
    let (orb, back) = orbit(q, tw, w)?;
    if !back.is_one() {
        return Err(Error::NotSuperpotential(format!(
            "the orbit of {} returns with factor {back}",
            q.path_name(&Path::from_word(w, n))
        )));
    }
    let mult = orb.len().lcm(&n) / orb.len();
    let c = c.scale(&crate::exactfield::q(mult as i64, 1));
    let mut e = TensorElement::zero(q, n, c.conductor());
    for (v, s) in orb {
        e.add_term(v, &c * &s);
    }
    Ok(e)
}

fn term_text(c: &CycNum, body: &str, first: bool) -> String {
    let (neg, mag) = match c.as_rational() {
        Some(r) if r.is_negative() => (true, Some(-r.clone())),
        Some(r) => (false, Some(r.clone())),
        None => (false, None),
    };
    let sep = match (first, neg) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    let coef = match mag {
        Some(r) if r.is_one() => String::new(),
        Some(r) => format!("{r} "),
        None => format!("({c}) "),
    };
    format!("{sep}{coef}{body}")
}

/// Full mode is the canonical `Display` form. Cyclic mode lists one term per
/// shift orbit as `c (path)`, with `^tw` appended when the twist is not the
/// identity; the zero element renders as an empty string.
pub fn render_potential(x: &TensorElement, tw: &Twist, mode: RenderMode) -> Result<String> {
    match mode {
        RenderMode::Full => Ok(x.to_string()),
        RenderMode::Cyclic => {
            if x.is_zero() {
                return Ok(String::new());
            }
            let q = x.quiver();
            let suffix = if tw.is_identity() { "" } else { "^tw" };
            let orbits = cyclic_orbits(x, tw)?;
            Ok(orbits
                .iter()
                .enumerate()
                .map(|(k, (w, c))| {
                    term_text(
                        c,
                        &format!("({}){suffix}", q.path_name(&Path::from_word(w, x.degree()))),
                        k == 0,
                    )
                })
                .collect())
        }
    }
}

/// Inverse of cyclic rendering: expand every `c (path)` orbit term.
pub fn parse_cyclic(
    q: &Quiver,
    degree: usize,
    n: u32,
    tw: &Twist,
    s: &str,
) -> Result<TensorElement> {
    let mut out = TensorElement::zero(q, degree, n);
    if s.trim().is_empty() {
        return Ok(out);
    }
    let suffix = if tw.is_identity() { "" } else { "^tw" };
    // reuse the element parser: drop the orbit brackets, then expand term by term
    let mut flat = String::new();
    let mut rest = s;
    while let Some(pos) = rest.find('(') {
        let (head, tail) = rest.split_at(pos);
        flat.push_str(head);
        let close = tail
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
        let inner = &tail[1..close];
        let after = &tail[close + 1..];
        // a bracketed coefficient is always followed by its orbit
        let is_coeff = after.trim_start().starts_with('(');
        if !is_coeff && q.path(&inner.split('.').collect::<Vec<_>>()).is_ok() {
            flat.push_str(inner);
            rest = after.strip_prefix(suffix).unwrap_or(after);
            if !suffix.is_empty() && !after.starts_with(suffix) {
                return Err(Error::Parse(format!(
                    "orbit ({inner}) lacks the {suffix} marker"
                )));
            }
        } else {
            flat.push_str(&tail[..close + 1]);
            rest = after;
        }
    }
    flat.push_str(rest);
    let reps = TensorElement::parse(q, degree, n, &flat)?;
    for (w, c) in reps.terms() {
        out = out.add(&expand_orbit(q, tw, w, c)?)?;
    }
    Ok(out)
}
