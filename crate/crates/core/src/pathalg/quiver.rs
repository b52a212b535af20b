use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub head: usize,
    pub tail: usize,
}

/// A path: either a vertex (length 0) or a composable arrow sequence a1...ak
/// with t(a_i) = h(a_{i+1}); the product ab means "b then a".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    Vertex(u32),
    Arrows(Vec<u32>),
}

impl Path {
    pub fn len(&self) -> usize {
        match self {
            Path::Vertex(_) => 0,
            Path::Arrows(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Key used inside tensor elements: a vertex `v` is stored as `[v]`.
    pub fn word(&self) -> Vec<u32> {
        match self {
            Path::Vertex(v) => vec![*v],
            Path::Arrows(w) => w.clone(),
        }
    }

    pub fn from_word(word: &[u32], degree: usize) -> Path {
        if degree == 0 {
            Path::Vertex(word[0])
        } else {
            Path::Arrows(word.to_vec())
        }
    }
}

/// All paths of one length, in lexicographic order of arrow indices.
#[derive(Debug)]
pub struct PathIndex {
    pub degree: usize,
    pub words: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl PathIndex {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, w: &[u32]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

struct QuiverData {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
    paths: Mutex<HashMap<usize, Arc<PathIndex>>>,
}

/// A finite quiver. Cheap to clone; path enumerations are memoized.
#[derive(Clone)]
pub struct Quiver(Arc<QuiverData>);

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vertices == other.0.vertices && self.0.arrows == other.0.arrows)
    }
}

impl Eq for Quiver {}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Quiver({} vertices, {} arrows)",
            self.0.vertices.len(),
            self.0.arrows.len()
        )
    }
}

impl Quiver {
    /// Arrows are given as (name, head, tail) by vertex name.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vs.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::Quiver(format!("duplicate vertex {v}")));
            }
        }
        let mut arr = Vec::new();
        for (name, h, t) in arrows {
            let head = *vindex
                .get(*h)
                .ok_or_else(|| Error::Quiver(format!("unknown vertex {h}")))?;
            let tail = *vindex
                .get(*t)
                .ok_or_else(|| Error::Quiver(format!("unknown vertex {t}")))?;
            arr.push(Arrow {
                name: name.to_string(),
                head,
                tail,
            });
        }
        Self::from_parts(vs, arr)
    }

    pub fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::Quiver(format!("duplicate vertex {v}")));
            }
        }
        let mut aindex = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.head >= vertices.len() || a.tail >= vertices.len() {
                return Err(Error::Quiver(format!(
                    "arrow {} has an undeclared endpoint",
                    a.name
                )));
            }
            if vindex.contains_key(&a.name) || aindex.insert(a.name.clone(), i).is_some() {
                return Err(Error::Quiver(format!("duplicate name {}", a.name)));
            }
        }
        Ok(Quiver(Arc::new(QuiverData {
            vertices,
            arrows,
            vindex,
            aindex,
            paths: Mutex::new(HashMap::new()),
        })))
    }

    /// One vertex with the given loops.
    pub fn loops(vertex: &str, names: &[&str]) -> Self {
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, vertex, vertex)).collect();
        Quiver::new(&[vertex], &arrows).expect("valid loop quiver")
    }

    pub fn vertex_count(&self) -> usize {
        self.0.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.0.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.0.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.0.arrows
    }

    pub fn arrow(&self, a: u32) -> &Arrow {
        &self.0.arrows[a as usize]
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.0.vindex.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<u32> {
        self.0.aindex.get(name).map(|&i| i as u32)
    }

    pub fn head(&self, a: u32) -> usize {
        self.0.arrows[a as usize].head
    }

    pub fn tail(&self, a: u32) -> usize {
        self.0.arrows[a as usize].tail
    }

    /// Head of a stored word (`[v]` for degree 0).
    pub fn word_head(&self, w: &[u32], degree: usize) -> usize {
        if degree == 0 {
            w[0] as usize
        } else {
            self.head(w[0])
        }
    }

    pub fn word_tail(&self, w: &[u32], degree: usize) -> usize {
        if degree == 0 {
            w[0] as usize
        } else {
            self.tail(*w.last().unwrap())
        }
    }

    pub fn is_composable(&self, w: &[u32]) -> bool {
        w.iter().all(|&a| (a as usize) < self.arrow_count())
            && w.windows(2).all(|p| self.tail(p[0]) == self.head(p[1]))
    }

    pub fn path_head(&self, p: &Path) -> usize {
        match p {
            Path::Vertex(v) => *v as usize,
            Path::Arrows(w) => self.head(w[0]),
        }
    }

    pub fn path_tail(&self, p: &Path) -> usize {
        match p {
            Path::Vertex(v) => *v as usize,
            Path::Arrows(w) => self.tail(*w.last().unwrap()),
        }
    }

    /// Parse a path from arrow names; an empty list is not allowed, vertices use `Path::Vertex`.
    pub fn path(&self, names: &[&str]) -> Result<Path> {
        if names.is_empty() {
            return Err(Error::Parse("empty path".into()));
        }
        let w = names
            .iter()
            .map(|n| {
                self.arrow_id(n)
                    .ok_or_else(|| Error::Parse(format!("unknown arrow {n}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if !self.is_composable(&w) {
            return Err(Error::Quiver(format!(
                "path {} is not composable",
                names.join(" ")
            )));
        }
        Ok(Path::Arrows(w))
    }

    pub fn path_name(&self, p: &Path) -> String {
        match p {
            Path::Vertex(v) => format!("e[{}]", self.0.vertices[*v as usize]),
            Path::Arrows(w) => w
                .iter()
                .map(|&a| self.0.arrows[a as usize].name.as_str())
                .collect::<Vec<_>>()
                .join("."),
        }
    }

    /// All composable paths of length `d` (vertices when d = 0), lexicographically sorted.
    pub fn paths(&self, d: usize) -> Arc<PathIndex> {
        if let Some(p) = self.0.paths.lock().unwrap().get(&d) {
            return p.clone();
        }
        let words = if d == 0 {
            (0..self.vertex_count() as u32).map(|v| vec![v]).collect()
        } else {
            let mut out = Vec::new();
            let mut cur = Vec::with_capacity(d);
            self.extend_paths(&mut cur, d, &mut out);
            out
        };
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w): (usize, &Vec<u32>)| (w.clone(), i))
            .collect();
        let pi = Arc::new(PathIndex {
            degree: d,
            words,
            index,
        });
        self.0.paths.lock().unwrap().insert(d, pi.clone());
        pi
    }

    fn extend_paths(&self, cur: &mut Vec<u32>, d: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for a in 0..self.arrow_count() as u32 {
            if cur.last().is_none_or(|&l| self.tail(l) == self.head(a)) {
                cur.push(a);
                self.extend_paths(cur, d, out);
                cur.pop();
            }
        }
    }

    /// The opposite quiver; arrow `a` becomes `a*` (and `a*` becomes `a`).
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .0
            .arrows
            .iter()
            .map(|a| Arrow {
                name: match a.name.strip_suffix('*') {
                    Some(s) => s.to_string(),
                    None => format!("{}*", a.name),
                },
                head: a.tail,
                tail: a.head,
            })
            .collect();
        Quiver::from_parts(self.0.vertices.clone(), arrows).expect("opposite of a valid quiver")
    }
}
