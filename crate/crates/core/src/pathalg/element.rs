use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use super::quiver::{Path, PathIndex, Quiver};
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, SVec};

/// A homogeneous linear combination of paths of one length.
///
/// Degree-0 elements are combinations of vertices, stored under the key `[v]`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    quiver: Quiver,
    degree: usize,
    n: u32,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl TensorElement {
    pub fn zero(quiver: &Quiver, degree: usize, n: u32) -> Self {
        TensorElement {
            quiver: quiver.clone(),
            degree,
            n: n.max(1),
            terms: BTreeMap::new(),
        }
    }

    pub fn path(quiver: &Quiver, p: &Path, n: u32) -> Self {
        let mut e = Self::zero(quiver, p.len(), n);
        e.terms.insert(p.word(), CycNum::one(n));
        e
    }

    pub fn vertex(quiver: &Quiver, v: usize, n: u32) -> Self {
        Self::path(quiver, &Path::Vertex(v as u32), n)
    }

    /// Build from (arrow word, coefficient) pairs; words must be composable and of length `degree`.
    pub fn from_terms(
        quiver: &Quiver,
        degree: usize,
        n: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, CycNum)>,
    ) -> Result<Self> {
        let mut e = Self::zero(quiver, degree, n);
        for (w, c) in terms {
            if degree == 0 {
                if w.len() != 1 || w[0] as usize >= quiver.vertex_count() {
                    return Err(Error::Degree("degree-0 terms are single vertices".into()));
                }
            } else if w.len() != degree {
                return Err(Error::Degree(format!(
                    "term of length {} in degree {}",
                    w.len(),
                    degree
                )));
            } else if !quiver.is_composable(&w) {
                return Err(Error::Quiver("term is not a composable path".into()));
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    /// Build from named paths, e.g. `[(&["x0", "x1"], c)]`.
    pub fn from_named(quiver: &Quiver, n: u32, terms: &[(&[&str], CycNum)]) -> Result<Self> {
        let degree = terms
            .first()
            .map(|t| t.0.len())
            .ok_or_else(|| Error::Degree("no terms".into()))?;
        let mut ws = Vec::new();
        for (names, c) in terms {
            ws.push((quiver.path(names)?.word(), c.clone()));
        }
        Self::from_terms(quiver, degree, n, ws)
    }

    pub(crate) fn add_term(&mut self, w: Vec<u32>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u32]) -> CycNum {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| CycNum::zero(self.n))
    }

    pub fn coeff_of(&self, p: &Path) -> CycNum {
        self.coeff(&p.word())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::Quiver("elements live on different quivers".into()));
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(&CycNum::one(1), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(&CycNum::from_int(-1, 1), other)
    }

    /// self + s * other
    pub fn axpy(&self, s: &CycNum, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.n = out.n.max(other.n).max(s.conductor());
        for (w, c) in &other.terms {
            out.add_term(w.clone(), s * c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        let mut out = Self::zero(&self.quiver, self.degree, self.n.max(s.conductor()));
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect();
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&CycNum::from_int(-1, 1))
    }

    /// Product in the path algebra: non-composable concatenations vanish.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::Quiver("elements live on different quivers".into()));
        }
        let q = &self.quiver;
        let d = self.degree + other.degree;
        let mut out = Self::zero(q, d, self.n.max(other.n));
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if q.word_tail(u, self.degree) != q.word_head(v, other.degree) {
                    continue;
                }
                let w = match (self.degree, other.degree) {
                    (0, _) => v.clone(),
                    (_, 0) => u.clone(),
                    _ => [u.as_slice(), v.as_slice()].concat(),
                };
                out.add_term(w, a * b);
            }
        }
        Ok(out)
    }

    /// Coordinates in the lexicographic path basis of this degree.
    pub fn to_svec(&self, idx: &PathIndex) -> SVec {
        debug_assert_eq!(idx.degree, self.degree);
        let mut v: SVec = self
            .terms
            .iter()
            .map(|(w, c)| (idx.get(w).expect("path in index"), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn from_svec(quiver: &Quiver, idx: &PathIndex, n: u32, v: &SVec) -> Self {
        let mut e = Self::zero(quiver, idx.degree, n);
        for (i, c) in v {
            e.add_term(idx.words[*i].clone(), c.clone());
        }
        e
    }

    /// Head and tail of every support path, if they all agree.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|w| {
            (
                self.quiver.word_head(w, self.degree),
                self.quiver.word_tail(w, self.degree),
            )
        });
        let first = it.next()?;
        if it.all(|e| e == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Rescale so the first coefficient in path order is 1.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text form: terms in path order, arrows joined by '.', vertices
/// as `e[name]`, irrational coefficients in parentheses, e.g.
/// `-D.a + 3/2 a.A + (z + 1) C.b`.
impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let path = self.quiver.path_name(&Path::from_word(w, self.degree));
            let (neg, mag) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, Some(-r.clone())),
                Some(r) => (false, Some(r.clone())),
                None => (false, None),
            };
            let sep = match (k, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let coef = match mag {
                Some(r) if r.is_one() => String::new(),
                Some(r) => format!("{r} "),
                None => format!("({c}) "),
            };
            write!(f, "{sep}{coef}{path}")?;
        }
        Ok(())
    }
}

impl TensorElement {
    /// Parse the canonical text form produced by `Display`.
    pub fn parse(quiver: &Quiver, degree: usize, n: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut e = Self::zero(quiver, degree, n);
        if s == "0" {
            return Ok(e);
        }
        let bad = |m: &str| Error::Parse(format!("{m} in {s:?}"));
        // split at top-level signs
        let mut terms: Vec<(bool, String)> = Vec::new();
        let (mut depth, mut cur, mut neg) = (0i32, String::new(), false);
        let mut prev_space = true;
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') && prev_space {
                if !cur.trim().is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                } else if !terms.is_empty() {
                    return Err(bad("dangling sign"));
                }
                cur.clear();
                neg = ch == '-';
                prev_space = true;
                continue;
            }
            prev_space = ch.is_whitespace();
            cur.push(ch);
        }
        if depth != 0 {
            return Err(bad("unbalanced parentheses"));
        }
        if cur.trim().is_empty() {
            return Err(bad("missing term"));
        }
        terms.push((neg, cur));
        for (neg, body) in terms {
            let body = body.trim();
            let (coef, path) = if let Some(rest) = body.strip_prefix('(') {
                let close = matching_paren(rest).ok_or_else(|| bad("unbalanced parentheses"))?;
                (CycNum::parse(&rest[..close], n)?, rest[close + 1..].trim())
            } else if body.starts_with(|c: char| c.is_ascii_digit()) {
                let (num, rest) = body
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| bad("coefficient without a path"))?;
                (CycNum::parse(num, n)?, rest.trim())
            } else {
                (CycNum::one(n), body)
            };
            let coef = if neg { -coef } else { coef };
            let word = if let Some(v) = path.strip_prefix("e[").and_then(|r| r.strip_suffix(']')) {
                vec![quiver.vertex_id(v).ok_or_else(|| bad("unknown vertex"))? as u32]
            } else {
                let names: Vec<&str> = path.split('.').collect();
                quiver.path(&names)?.word()
            };
            let len = if word.len() == 1 && path.starts_with("e[") {
                0
            } else {
                word.len()
            };
            if len != degree {
                return Err(bad("term of the wrong length"));
            }
            e.add_term(word, coef.embed(n.max(1))?);
        }
        Ok(e)
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}
