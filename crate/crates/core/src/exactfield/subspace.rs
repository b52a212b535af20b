//! Subspaces of K^d held in canonical reduced row-echelon form.

use serde::{Deserialize, Serialize};

use super::sparse::{sv_axpy, sv_get, Echelon, SVec};
use super::CycNum;
use crate::error::{Error, Result};

/// A subspace with its unique reduced row-echelon basis (rows sorted by pivot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize, n: u32) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| vec![(i, CycNum::one(n))]).collect(),
        }
    }

    pub fn span<'a>(ambient: usize, vecs: impl IntoIterator<Item = &'a SVec>) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vecs {
            debug_assert!(v.iter().all(|(i, _)| *i < ambient));
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    pub fn from_echelon(e: Echelon) -> Self {
        let ambient = e.ambient();
        Subspace {
            ambient,
            rows: e.into_sorted_rows(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for r in &self.rows {
            e.insert(r);
        }
        e
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of `v` in the echelon basis (read off at the pivots), if `v` lies here.
    pub fn coords(&self, v: &SVec) -> Option<Vec<CycNum>> {
        let n = v.first().map(|e| e.1.conductor()).unwrap_or(1);
        let mut rest = v.clone();
        let mut out = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let c = sv_get(v, r[0].0)
                .cloned()
                .unwrap_or_else(|| CycNum::zero(n));
            if !c.is_zero() {
                rest = sv_axpy(&rest, &-c.clone(), r);
            }
            out.push(c);
        }
        if rest.is_empty() {
            Some(out)
        } else {
            None
        }
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r);
        }
        Ok(Self::from_echelon(e))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // c in kernel of (u_i mod other) gives sum c_i u_i in both
        let oe = other.echelon();
        let images: Vec<SVec> = self.rows.iter().map(|u| oe.reduce(u)).collect();
        let kernel = nullspace_of_columns(&images, self.ambient, self.dim());
        let vecs: Vec<SVec> = kernel
            .iter()
            .map(|c| {
                let mut acc: SVec = Vec::new();
                for (i, x) in c {
                    acc = sv_axpy(&acc, x, &self.rows[*i]);
                }
                acc
            })
            .collect();
        Ok(Subspace::span(self.ambient, vecs.iter()))
    }

    /// Vectors pairing to zero with every basis row under the standard dot product.
    pub fn annihilator(&self, n: u32) -> Subspace {
        nullspace_rows(&self.rows, self.ambient, n)
    }

    /// Image under a linear map given column-wise (`images[j]` = image of e_j).
    pub fn map(&self, images: &[SVec], target_dim: usize) -> Subspace {
        let vecs: Vec<SVec> = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: SVec = Vec::new();
                for (j, x) in r {
                    acc = sv_axpy(&acc, x, &images[*j]);
                }
                acc
            })
            .collect();
        Subspace::span(target_dim, vecs.iter())
    }

    pub fn to_dense_rows(&self, n: u32) -> Vec<Vec<CycNum>> {
        self.rows
            .iter()
            .map(|r| super::sparse::sv_to_dense(r, self.ambient, n))
            .collect()
    }
}

/// Kernel of the map c -> sum_i c_i cols[i], as sparse coefficient vectors.
pub fn nullspace_of_columns(cols: &[SVec], _rows: usize, ncols: usize) -> Vec<SVec> {
    // transpose to rows of the matrix
    let mut t: Vec<Vec<(usize, CycNum)>> = Vec::new();
    let mut row_index = std::collections::HashMap::new();
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c {
            let k = *row_index.entry(*i).or_insert_with(|| {
                t.push(Vec::new());
                t.len() - 1
            });
            t[k].push((j, x.clone()));
        }
    }
    let n = cols
        .iter()
        .flat_map(|c| c.first())
        .map(|e| e.1.conductor())
        .next()
        .unwrap_or(1);
    nullspace_rows(&t, ncols, n).rows
}

/// Right kernel of the matrix with the given sparse rows.
pub fn nullspace_rows(rows: &[SVec], ncols: usize, n: u32) -> Subspace {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    let pivots = e.pivots();
    let is_pivot: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !is_pivot.contains(c)) {
        let mut v: SVec = Vec::new();
        for r in e.rows() {
            if let Some(x) = sv_get(r, f) {
                v.push((r[0].0, -x.clone()));
            }
        }
        v.push((f, CycNum::one(n)));
        v.sort_by_key(|e| e.0);
        basis.push(v);
    }
    Subspace::span(ncols, basis.iter())
}

/// Serializable form of a subspace: dense rows of coefficient strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub rows: Vec<Vec<String>>,
}

impl SubspaceJson {
    pub fn from_subspace(s: &Subspace, n: u32) -> Self {
        SubspaceJson {
            ambient: s.ambient(),
            rows: s
                .to_dense_rows(n)
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}
