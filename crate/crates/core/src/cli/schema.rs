use std::collections::BTreeMap;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{CycNum, SVec, Subspace};
use crate::pathalg::{Arrow, Quiver, TensorElement, Twist};
use crate::quotient::Presentation;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowJson {
    pub name: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    /// Arrow names, leftmost first.
    pub path: Vec<String>,
    pub coeff: String,
}

/// An element either as a term list or in the canonical text form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Text(String),
    Terms(Vec<TermJson>),
}

/// Arrow images as degree-1 text, e.g. `{"x0": "-x0"}`; unlisted arrows and
/// vertices are fixed.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TwistJson {
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
}

/// Quiver with an optional potential, twist and relation list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default)]
    pub name: String,
    #[serde(default = "one")]
    pub conductor: u32,
    pub quiver: QuiverJson,
    #[serde(default)]
    pub potential: Option<ElementJson>,
    #[serde(default)]
    pub twist: Option<TwistJson>,
    #[serde(default)]
    pub relations: Option<Vec<ElementJson>>,
}

fn one() -> u32 {
    1
}

/// Parsed form of `AlgebraJson`.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub name: String,
    pub conductor: u32,
    pub quiver: Quiver,
    pub potential: Option<TensorElement>,
    pub twist: Twist,
    pub relations: Option<Vec<TensorElement>>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &FsPath) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

impl QuiverJson {
    pub fn build(&self) -> Result<Quiver> {
        let vid = |v: &str| {
            self.vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Parse(format!("unknown vertex {v}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    name: a.name.clone(),
                    tail: vid(&a.tail)?,
                    head: vid(&a.head)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::from_parts(self.vertices.clone(), arrows)
    }

    pub fn from_quiver(q: &Quiver) -> Self {
        let vs = q.vertices();
        QuiverJson {
            vertices: vs.to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowJson {
                    name: a.name.clone(),
                    tail: vs[a.tail].clone(),
                    head: vs[a.head].clone(),
                })
                .collect(),
        }
    }
}

/// Text of unknown degree: the degree is the one at which it parses.
pub fn parse_element(q: &Quiver, n: u32, s: &str) -> Result<TensorElement> {
    let mut last = None;
    for d in 0..=32 {
        match TensorElement::parse(q, d, n, s) {
            Ok(e) => return Ok(e),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

impl ElementJson {
    pub fn build(&self, q: &Quiver, n: u32) -> Result<TensorElement> {
        match self {
            ElementJson::Text(s) => parse_element(q, n, s),
            ElementJson::Terms(terms) => {
                let degree = terms
                    .first()
                    .map(|t| t.path.len())
                    .ok_or_else(|| Error::Parse("empty term list".into()))?;
                let list = terms
                    .iter()
                    .map(|t| {
                        let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
                        Ok((
                            q.path(&names)?.word(),
                            CycNum::parse(&t.coeff, n)?.embed(n)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                TensorElement::from_terms(q, degree, n, list)
            }
        }
    }

    pub fn from_element(x: &TensorElement) -> Self {
        ElementJson::Text(x.to_string())
    }
}

impl TwistJson {
    pub fn build(&self, q: &Quiver, n: u32) -> Result<Twist> {
        let vid = |v: &str| {
            q.vertex_id(v)
                .ok_or_else(|| Error::Parse(format!("unknown vertex {v}")))
        };
        let mut perm: Vec<usize> = (0..q.vertex_count()).collect();
        for (a, b) in &self.vertices {
            perm[vid(a)?] = vid(b)?;
        }
        let idx = q.paths(1);
        let mut images: Vec<SVec> = (0..q.arrow_count())
            .map(|a| vec![(a, CycNum::one(n))])
            .collect();
        for (a, text) in &self.arrows {
            let id = q
                .arrow_id(a)
                .ok_or_else(|| Error::Parse(format!("unknown arrow {a}")))?;
            images[id as usize] = TensorElement::parse(q, 1, n, text)?.to_svec(&idx);
        }
        Twist::new(q, perm, images)
    }
}

impl AlgebraJson {
    pub fn build(&self) -> Result<Algebra> {
        let q = self.quiver.build()?;
        let n = self.conductor;
        let potential = self
            .potential
            .as_ref()
            .map(|p| p.build(&q, n))
            .transpose()?;
        let twist = match &self.twist {
            Some(t) => t.build(&q, n)?,
            None => Twist::identity(&q),
        };
        let relations = self
            .relations
            .as_ref()
            .map(|rs| {
                rs.iter()
                    .map(|r| r.build(&q, n))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(Algebra {
            name: self.name.clone(),
            conductor: n,
            quiver: q,
            potential,
            twist,
            relations,
        })
    }
}

impl Algebra {
    pub fn potential(&self) -> Result<&TensorElement> {
        self.potential
            .as_ref()
            .ok_or_else(|| Error::Parse(format!("{}: no potential given", self.name)))
    }

    /// The listed relations, or the order-k derivatives of the potential
    /// (k defaults to degree - 2).
    pub fn presentation(&self, order: Option<usize>) -> Result<Presentation> {
        match (&self.relations, order) {
            (Some(rels), None) => {
                let degree = rels
                    .first()
                    .map(|r| r.degree())
                    .ok_or_else(|| Error::Parse("empty relation list".into()))?;
                Presentation::from_elements(&self.quiver, degree, rels, self.conductor)
            }
            _ => {
                let w = self.potential()?;
                let n = w.degree();
                let k = order.unwrap_or(n.saturating_sub(2));
                if k > n {
                    return Err(Error::Degree(format!(
                        "derivative order {k} exceeds the degree {n}"
                    )));
                }
                let rel: Subspace = crate::pathalg::delta_image(w, k)?;
                Presentation::new(&self.quiver, n - k, rel, self.conductor)
            }
        }
    }
}
