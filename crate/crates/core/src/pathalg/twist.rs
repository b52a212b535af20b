use super::quiver::Quiver;
use crate::error::{Error, Result};
use crate::exactfield::{sv_from_dense, CycNum, Matrix, SVec};

/// A graded automorphism of the path algebra: a vertex permutation together
/// with an image (linear combination of arrows) for each arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct Twist {
    vertex_perm: Vec<usize>,
    images: Vec<SVec>,
    identity: bool,
}

impl Twist {
    pub fn identity(q: &Quiver) -> Self {
        Twist {
            vertex_perm: (0..q.vertex_count()).collect(),
            images: (0..q.arrow_count())
                .map(|a| vec![(a, CycNum::one(1))])
                .collect(),
            identity: true,
        }
    }

    /// `images[a]` is the image of arrow `a` as (arrow index, coefficient) pairs.
    pub fn new(q: &Quiver, vertex_perm: Vec<usize>, images: Vec<SVec>) -> Result<Self> {
        let nv = q.vertex_count();
        if vertex_perm.len() != nv || images.len() != q.arrow_count() {
            return Err(Error::Dimension(
                "twist size does not match the quiver".into(),
            ));
        }
        let mut seen = vec![false; nv];
        for &v in &vertex_perm {
            if v >= nv || seen[v] {
                return Err(Error::Quiver("vertex map is not a permutation".into()));
            }
            seen[v] = true;
        }
        for (a, img) in images.iter().enumerate() {
            let (h, t) = (vertex_perm[q.head(a as u32)], vertex_perm[q.tail(a as u32)]);
            for (b, _) in img {
                if q.head(*b as u32) != h || q.tail(*b as u32) != t {
                    return Err(Error::Quiver(format!(
                        "twist image of {} leaves the permuted arrow space",
                        q.arrow(a as u32).name
                    )));
                }
            }
        }
        let mut images = images;
        for img in images.iter_mut() {
            img.sort_by_key(|e| e.0);
            img.retain(|e| !e.1.is_zero());
        }
        let identity = vertex_perm.iter().enumerate().all(|(i, &v)| i == v)
            && images
                .iter()
                .enumerate()
                .all(|(a, img)| img.len() == 1 && img[0].0 == a && img[0].1.is_one());
        let t = Twist {
            vertex_perm,
            images,
            identity,
        };
        let n = t
            .images
            .iter()
            .flatten()
            .map(|e| e.1.conductor())
            .max()
            .unwrap_or(1);
        if t.matrix(n).rank() != q.arrow_count() {
            return Err(Error::Quiver("twist is not invertible".into()));
        }
        Ok(t)
    }

    /// Twist from a matrix on the arrow span (column j = image of arrow j).
    pub fn from_matrix(q: &Quiver, m: &Matrix) -> Result<Self> {
        if m.rows() != q.arrow_count() || m.cols() != q.arrow_count() {
            return Err(Error::Dimension("twist matrix size".into()));
        }
        let mut perm = vec![usize::MAX; q.vertex_count()];
        let images: Vec<SVec> = (0..m.cols()).map(|j| sv_from_dense(&m.column(j))).collect();
        for (a, img) in images.iter().enumerate() {
            for (b, _) in img {
                for (src, dst) in [
                    (q.head(a as u32), q.head(*b as u32)),
                    (q.tail(a as u32), q.tail(*b as u32)),
                ] {
                    if perm[src] == usize::MAX {
                        perm[src] = dst;
                    } else if perm[src] != dst {
                        return Err(Error::Quiver(
                            "twist matrix does not induce a vertex map".into(),
                        ));
                    }
                }
            }
        }
        // vertices without arrows stay put
        for (v, p) in perm.iter_mut().enumerate() {
            if *p == usize::MAX {
                *p = v;
            }
        }
        Twist::new(q, perm, images)
    }

    /// Arrow `a` goes to `scalars[a] * a`.
    pub fn diagonal(q: &Quiver, scalars: &[CycNum]) -> Result<Self> {
        let images = scalars
            .iter()
            .enumerate()
            .map(|(a, s)| vec![(a, s.clone())])
            .collect();
        Twist::new(q, (0..q.vertex_count()).collect(), images)
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertex_perm[v]
    }

    pub fn vertex_perm(&self) -> &[usize] {
        &self.vertex_perm
    }

    pub fn image(&self, a: u32) -> &SVec {
        &self.images[a as usize]
    }

    pub fn matrix(&self, n: u32) -> Matrix {
        let k = self.images.len();
        let mut m = Matrix::zeros(k, k, n);
        for (j, img) in self.images.iter().enumerate() {
            for (i, c) in img {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn inverse(&self, q: &Quiver) -> Result<Self> {
        let n = self
            .images
            .iter()
            .flatten()
            .map(|e| e.1.conductor())
            .max()
            .unwrap_or(1);
        let inv = self.matrix(n).inverse()?;
        let mut perm = vec![0; self.vertex_perm.len()];
        for (v, &w) in self.vertex_perm.iter().enumerate() {
            perm[w] = v;
        }
        let images = (0..inv.cols())
            .map(|j| sv_from_dense(&inv.column(j)))
            .collect();
        Twist::new(q, perm, images)
    }

    pub fn compose(&self, q: &Quiver, other: &Twist) -> Result<Self> {
        let n = self
            .images
            .iter()
            .chain(&other.images)
            .flatten()
            .map(|e| e.1.conductor())
            .max()
            .unwrap_or(1);
        let m = self.matrix(n).try_mul(&other.matrix(n))?;
        let perm = other
            .vertex_perm
            .iter()
            .map(|&v| self.vertex_perm[v])
            .collect();
        let images = (0..m.cols()).map(|j| sv_from_dense(&m.column(j))).collect();
        Twist::new(q, perm, images)
    }
}
