use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::Presentation;
use crate::exactfield::{sv_collect, CycNum, Echelon, SVec};
use crate::pathalg::TensorElement;

/// One graded slice A_d: its normal words and the right-multiplication table
/// A_d x V -> A_{d+1} (filled once A_{d+1} is built).
#[derive(Debug)]
struct Level {
    words: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    right: Vec<Vec<Option<SVec>>>,
}

/// Normal words of A = T_S V / <R> degree by degree, with multiplication tables.
///
/// A_d is realized as (A_{d-1} (x) V) modulo the images of A_{d-N} (x) R. The
/// leading term of a relation image is its largest candidate word, so the
/// normal words are the greedy lexicographic complement of the ideal.
#[derive(Debug)]
pub struct Tower {
    pres: Presentation,
    levels: Vec<Level>,
    left: Mutex<HashMap<(usize, u32), Arc<Vec<SVec>>>>,
}

impl Tower {
    pub fn new(pres: &Presentation) -> Self {
        let q = pres.quiver();
        let words: Vec<Vec<u32>> = (0..q.vertex_count() as u32).map(|v| vec![v]).collect();
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Tower {
            pres: pres.clone(),
            levels: vec![Level {
                words,
                index,
                right: Vec::new(),
            }],
            left: Mutex::new(HashMap::new()),
        }
    }

    /// Tower built through degree `d`.
    pub fn build(pres: &Presentation, d: usize) -> Self {
        let mut t = Tower::new(pres);
        t.ensure(d);
        t
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn ensure(&mut self, d: usize) {
        while self.top() < d {
            self.grow();
        }
    }

    fn one(&self) -> CycNum {
        CycNum::one(self.pres.conductor())
    }

    fn grow(&mut self) {
        let q = self.pres.quiver().clone();
        let d = self.levels.len();
        let nrel = self.pres.degree();
        let prev = &self.levels[d - 1];
        // candidates n.a in lexicographic word order
        let mut cands: Vec<(Vec<u32>, usize, u32)> = Vec::new();
        for (i, w) in prev.words.iter().enumerate() {
            let t = q.word_tail(w, d - 1);
            for a in 0..q.arrow_count() as u32 {
                if q.head(a) == t {
                    let word = if d == 1 {
                        vec![a]
                    } else {
                        [w.as_slice(), &[a]].concat()
                    };
                    cands.push((word, i, a));
                }
            }
        }
        cands.sort();
        let nc = cands.len();
        let cidx: HashMap<(usize, u32), usize> = cands
            .iter()
            .enumerate()
            .map(|(c, (_, i, a))| ((*i, *a), c))
            .collect();
        // rows in reversed column order so the echelon leading entry is the largest word
        let mut ech = Echelon::new(nc);
        if d >= nrel {
            let rels = self.pres.relation_elements();
            for m in 0..self.levels[d - nrel].words.len() {
                for r in &rels {
                    let mut row = Vec::new();
                    for (w, c) in r.terms() {
                        let nf = self.nf_after(d - nrel, m, &w[..nrel - 1]);
                        let last = w[nrel - 1];
                        for (j, x) in nf {
                            row.push((nc - 1 - cidx[&(j, last)], &x * c));
                        }
                    }
                    ech.insert(&sv_collect(row));
                }
            }
        }
        let pivot_rows: HashMap<usize, SVec> = ech
            .into_sorted_rows()
            .into_iter()
            .map(|r| (nc - 1 - r[0].0, r))
            .collect();
        let words: Vec<Vec<u32>> = cands
            .iter()
            .enumerate()
            .filter(|(c, _)| !pivot_rows.contains_key(c))
            .map(|(_, x)| x.0.clone())
            .collect();
        let index: HashMap<Vec<u32>, usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut right = vec![vec![None; q.arrow_count()]; self.levels[d - 1].words.len()];
        for (c, (word, i, a)) in cands.iter().enumerate() {
            let v = match pivot_rows.get(&c) {
                None => vec![(index[word], self.one())],
                Some(row) => {
                    let mut v: SVec = row[1..]
                        .iter()
                        .map(|(j, x)| (index[&cands[nc - 1 - j].0], -x.clone()))
                        .collect();
                    v.sort_by_key(|e| e.0);
                    v
                }
            };
            right[*i][*a as usize] = Some(v);
        }
        self.levels[d - 1].right = right;
        self.levels.push(Level {
            words,
            index,
            right: Vec::new(),
        });
    }

    /// NF(n_m . w) for a normal word n_m of degree k.
    fn nf_after(&self, k: usize, m: usize, w: &[u32]) -> SVec {
        let mut v: SVec = vec![(m, self.one())];
        for (s, &a) in w.iter().enumerate() {
            v = self.right_mul(k + s, &v, a);
            if v.is_empty() {
                break;
            }
        }
        v
    }

    pub fn dim(&self, d: usize) -> usize {
        self.levels[d].words.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.words.len()).collect()
    }

    /// Normal words of degree d (vertices as `[v]` in degree 0).
    pub fn words(&self, d: usize) -> &[Vec<u32>] {
        &self.levels[d].words
    }

    pub fn index_of(&self, d: usize, w: &[u32]) -> Option<usize> {
        self.levels[d].index.get(w).copied()
    }

    pub fn head(&self, d: usize, i: usize) -> usize {
        self.pres.quiver().word_head(&self.levels[d].words[i], d)
    }

    pub fn tail(&self, d: usize, i: usize) -> usize {
        self.pres.quiver().word_tail(&self.levels[d].words[i], d)
    }

    /// v . a for v in A_d.
    pub fn right_mul(&self, d: usize, v: &SVec, a: u32) -> SVec {
        let table = &self.levels[d].right;
        let mut out = Vec::new();
        for (i, x) in v {
            if let Some(img) = &table[*i][a as usize] {
                out.extend(img.iter().map(|(j, y)| (*j, x * y)));
            }
        }
        sv_collect(out)
    }

    /// Normal form of a single path (length d) in A_d.
    pub fn nf_word(&self, w: &[u32], d: usize) -> SVec {
        if d == 0 {
            return vec![(w[0] as usize, self.one())];
        }
        let h = self.pres.quiver().head(w[0]);
        self.nf_after(0, h, w)
    }

    pub fn nf(&self, x: &TensorElement) -> SVec {
        let d = x.degree();
        let mut out = Vec::new();
        for (w, c) in x.terms() {
            out.extend(self.nf_word(w, d).into_iter().map(|(j, y)| (j, &y * c)));
        }
        sv_collect(out)
    }

    /// NF(n_i . n'_j) with n_i in A_p, n'_j in A_q.
    pub fn mul(&self, p: usize, i: usize, q: usize, j: usize) -> SVec {
        if self.tail(p, i) != self.head(q, j) {
            return Vec::new();
        }
        if q == 0 {
            return vec![(i, self.one())];
        }
        self.nf_after(p, i, &self.levels[q].words[j])
    }

    /// Left multiplication by arrow x on A_k: entry j is NF(x . n_j) in A_{k+1}.
    pub fn left_table(&self, k: usize, x: u32) -> Arc<Vec<SVec>> {
        if let Some(t) = self.left.lock().unwrap().get(&(k, x)) {
            return t.clone();
        }
        let q = self.pres.quiver();
        let table: Vec<SVec> = if k == 0 {
            (0..self.dim(0))
                .map(|v| {
                    if q.tail(x) == v {
                        self.nf_word(&[x], 1)
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        } else {
            let prev = self.left_table(k - 1, x);
            self.levels[k]
                .words
                .iter()
                .map(|w| {
                    let (pre, a) = w.split_at(k - 1);
                    let m = if k == 1 {
                        q.head(a[0])
                    } else {
                        self.index_of(k - 1, pre).expect("prefix-closed")
                    };
                    self.right_mul(k, &prev[m], a[0])
                })
                .collect()
        };
        let table = Arc::new(table);
        self.left.lock().unwrap().insert((k, x), table.clone());
        table
    }

    /// dim e_h A_d e_t indexed [h][t].
    pub fn block_dims(&self, d: usize) -> Vec<Vec<usize>> {
        let nv = self.pres.quiver().vertex_count();
        let mut out = vec![vec![0; nv]; nv];
        for i in 0..self.dim(d) {
            out[self.head(d, i)][self.tail(d, i)] += 1;
        }
        out
    }
}
