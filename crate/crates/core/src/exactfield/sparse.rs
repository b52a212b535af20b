//! Sparse vectors and an incremental reduced row-echelon builder.

use std::collections::HashMap;

use super::CycNum;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SVec = Vec<(usize, CycNum)>;

pub fn sv_from_dense(v: &[CycNum]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sv_to_dense(v: &SVec, len: usize, n: u32) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(n); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sv_get(v: &SVec, i: usize) -> Option<&CycNum> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|k| &v[k].1)
}

pub fn sv_scale(v: &SVec, s: &CycNum) -> SVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * s)).collect()
}

/// v + s * w
pub fn sv_axpy(v: &SVec, s: &CycNum, w: &SVec) -> SVec {
    if s.is_zero() {
        return v.clone();
    }
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        if b >= w.len() || (a < v.len() && v[a].0 < w[b].0) {
            out.push(v[a].clone());
            a += 1;
        } else if a >= v.len() || w[b].0 < v[a].0 {
            out.push((w[b].0, s * &w[b].1));
            b += 1;
        } else {
            let x = &v[a].1 + &(s * &w[b].1);
            if !x.is_zero() {
                out.push((v[a].0, x));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Accumulate `(index, value)` pairs in any order.
pub fn sv_collect(entries: impl IntoIterator<Item = (usize, CycNum)>) -> SVec {
    let mut map: std::collections::BTreeMap<usize, CycNum> = std::collections::BTreeMap::new();
    for (i, x) in entries {
        match map.get_mut(&i) {
            Some(y) => *y = &*y + &x,
            None => {
                map.insert(i, x);
            }
        }
    }
    map.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Incrementally maintained reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    rows: Vec<SVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Echelon {
            ambient,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after clearing all pivot columns.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let hits: Vec<(usize, CycNum)> = v
            .iter()
            .filter_map(|(i, x)| self.pivot_row.get(i).map(|&r| (r, x.clone())))
            .collect();
        let mut out = v.clone();
        for (r, x) in hits {
            out = sv_axpy(&out, &-x, &self.rows[r]);
        }
        out
    }

    /// Adds `v` to the span; returns true when the rank grows.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (p, lead) = r[0].clone();
        let inv = lead.inv().expect("nonzero lead");
        let r = sv_scale(&r, &inv);
        for row in self.rows.iter_mut() {
            if let Some(x) = sv_get(row, p) {
                let x = x.clone();
                *row = sv_axpy(row, &-x, &r);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Coordinates of `v` in the current basis, if `v` lies in the span.
    pub fn coords(&self, v: &SVec) -> Option<Vec<(usize, CycNum)>> {
        if !self.reduce(v).is_empty() {
            return None;
        }
        Some(
            v.iter()
                .filter_map(|(i, x)| self.pivot_row.get(i).map(|&r| (r, x.clone())))
                .collect(),
        )
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Rows sorted by pivot column.
    pub fn into_sorted_rows(self) -> Vec<SVec> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        rows
    }

    pub fn rows(&self) -> &[SVec] {
        &self.rows
    }
}
