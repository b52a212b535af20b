//! Graded slices of T_S V / <R>, normal bases and Koszul duals.

mod tower;

use std::collections::HashMap;

pub use tower::Tower;

use crate::error::{Error, Result};
use crate::exactfield::{nullspace_rows, CycNum, Echelon, SVec, Subspace};
use crate::pathalg::{
    cyclic_shift, derivatives, restrict_idempotent, Path, Quiver, TensorElement, Twist,
};

/// A = T_S V / <R> with R homogeneous of degree N inside the degree-N path space.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    quiver: Quiver,
    degree: usize,
    relations: Subspace,
    n: u32,
}

impl Presentation {
    pub fn new(quiver: &Quiver, degree: usize, relations: Subspace, n: u32) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Degree(
                "relations must have degree at least 2".into(),
            ));
        }
        if relations.ambient() != quiver.paths(degree).len() {
            return Err(Error::Dimension(format!(
                "relation subspace lives in dimension {}, expected {}",
                relations.ambient(),
                quiver.paths(degree).len()
            )));
        }
        Ok(Presentation {
            quiver: quiver.clone(),
            degree,
            relations,
            n: n.max(1),
        })
    }

    pub fn from_elements(
        quiver: &Quiver,
        degree: usize,
        rels: &[TensorElement],
        n: u32,
    ) -> Result<Self> {
        let idx = quiver.paths(degree);
        let mut vecs = Vec::new();
        for r in rels {
            if r.degree() != degree || r.quiver() != quiver {
                return Err(Error::Degree(format!(
                    "relation of degree {} in a degree-{degree} presentation",
                    r.degree()
                )));
            }
            vecs.push(r.to_svec(&idx));
        }
        Presentation::new(quiver, degree, Subspace::span(idx.len(), vecs.iter()), n)
    }

    /// Free algebra: no relations (a nominal relation degree of 2).
    pub fn free(quiver: &Quiver) -> Self {
        let idx = quiver.paths(2);
        Presentation {
            quiver: quiver.clone(),
            degree: 2,
            relations: Subspace::zero(idx.len()),
            n: 1,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// The canonical relation basis as path-algebra elements.
    pub fn relation_elements(&self) -> Vec<TensorElement> {
        let idx = self.quiver.paths(self.degree);
        self.relations
            .basis()
            .iter()
            .map(|v| TensorElement::from_svec(&self.quiver, &idx, self.n, v))
            .collect()
    }
}

/// Sum over l of V^l (x) R (x) V^(d-l-N) inside the degree-d path space.
pub fn ideal_degree_span(p: &Presentation, d: usize) -> Subspace {
    let q = p.quiver();
    let idx = q.paths(d);
    let nrel = p.degree();
    let mut ech = Echelon::new(idx.len());
    if d < nrel {
        return Subspace::zero(idx.len());
    }
    let rels = p.relation_elements();
    for l in 0..=d - nrel {
        let left = q.paths(l);
        let right = q.paths(d - l - nrel);
        for u in &left.words {
            let ue = TensorElement::from_terms(q, l, 1, [(u.clone(), CycNum::one(1))]).unwrap();
            for r in &rels {
                let ur = ue.mul(r).unwrap();
                if ur.is_zero() {
                    continue;
                }
                for v in &right.words {
                    let ve = TensorElement::from_terms(
                        q,
                        d - l - nrel,
                        1,
                        [(v.clone(), CycNum::one(1))],
                    )
                    .unwrap();
                    let x = ur.mul(&ve).unwrap();
                    if !x.is_zero() {
                        ech.insert(&x.to_svec(&idx));
                    }
                }
            }
        }
    }
    Subspace::from_echelon(ech)
}

/// [dim A_0, ..., dim A_dmax].
pub fn graded_dims(p: &Presentation, dmax: usize) -> Vec<usize> {
    Tower::build(p, dmax).dims()
}

/// Normal monomials of degree d: the greedy complement of the ideal in path order.
pub fn normal_basis(p: &Presentation, d: usize) -> Vec<Path> {
    Tower::build(p, d)
        .words(d)
        .iter()
        .map(|w| Path::from_word(w, d))
        .collect()
}

/// Reverse-and-star: the path of the opposite quiver paired with `w`.
fn dual_word(w: &[u32]) -> Vec<u32> {
    w.iter().rev().copied().collect()
}

/// A^! = T_S V* / <R^perp> on the opposite quiver, with <a1* ... ak*, bk ... b1> = prod delta.
pub fn koszul_dual(p: &Presentation) -> Result<Presentation> {
    if p.degree() != 2 {
        return Err(Error::Degree(format!(
            "koszul_dual needs quadratic relations, got degree {}",
            p.degree()
        )));
    }
    let q = p.quiver();
    let op = q.opposite();
    let idx = q.paths(2);
    let opidx = op.paths(2);
    let rows: Vec<SVec> = p
        .relations()
        .basis()
        .iter()
        .map(|r| {
            let mut v: SVec = r
                .iter()
                .map(|(i, c)| {
                    (
                        opidx
                            .get(&dual_word(&idx.words[*i]))
                            .expect("reversed path"),
                        c.clone(),
                    )
                })
                .collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    let perp = nullspace_rows(&rows, opidx.len(), p.conductor());
    Presentation::new(&op, 2, perp, p.conductor())
}

/// Solutions of the conditions "middle two letters at positions (l, l+1) lie in R" for all l,
/// realized in the degree-k path space. Full space for k <= 1.
pub fn dual_coalgebra_slice(p: &Presentation, k: usize) -> Result<Subspace> {
    if p.degree() != 2 {
        return Err(Error::Degree(
            "dual_coalgebra_slice needs quadratic relations".into(),
        ));
    }
    let q = p.quiver();
    let idx = q.paths(k);
    let n = p.conductor();
    if k <= 1 {
        return Ok(Subspace::full(idx.len(), n));
    }
    let ann = p.relations().annihilator(n);
    let idx2 = q.paths(2);
    let mut rows = Vec::new();
    for l in 0..=k - 2 {
        // group coordinates by (prefix, suffix) around positions l, l+1
        let mut groups: HashMap<(Vec<u32>, Vec<u32>), Vec<(usize, usize)>> = HashMap::new();
        for (i, w) in idx.words.iter().enumerate() {
            let mid = idx2.get(&w[l..l + 2]).expect("subpath");
            groups
                .entry((w[..l].to_vec(), w[l + 2..].to_vec()))
                .or_default()
                .push((mid, i));
        }
        for members in groups.values() {
            let pos: HashMap<usize, usize> = members.iter().copied().collect();
            for f in ann.basis() {
                let mut row: SVec = f
                    .iter()
                    .filter_map(|(m, c)| pos.get(m).map(|&i| (i, c.clone())))
                    .collect();
                if row.is_empty() {
                    continue;
                }
                row.sort_by_key(|e| e.0);
                rows.push(row);
            }
        }
    }
    Ok(nullspace_rows(&rows, idx.len(), n))
}

/// e I_d e for the idempotent on `verts`, from the ideal span.
pub fn restricted_ideal_dim(p: &Presentation, d: usize, verts: &[usize]) -> usize {
    let q = p.quiver();
    let idx = q.paths(d);
    let span = ideal_degree_span(p, d);
    let vecs: Vec<SVec> = span
        .basis()
        .iter()
        .map(|v| {
            restrict_idempotent(&TensorElement::from_svec(q, &idx, p.conductor(), v), verts)
                .to_svec(&idx)
        })
        .collect();
    Subspace::span(idx.len(), vecs.iter()).dim()
}

/// Basis of the space of degree-n twisted superpotentials for `tw` whose
/// order-(n-N) derivatives all lie in the relation space.
pub fn twisted_potentials(p: &Presentation, tw: &Twist, n: usize) -> Result<Vec<TensorElement>> {
    let q = p.quiver();
    if n < p.degree() {
        return Err(Error::Degree(format!(
            "potential degree {n} below relation degree {}",
            p.degree()
        )));
    }
    let nc = p.conductor();
    let idx = q.paths(n);
    let unknowns: Vec<usize> = (0..idx.len())
        .filter(|&i| {
            let w = &idx.words[i];
            q.word_head(w, n) == tw.vertex(q.word_tail(w, n))
        })
        .collect();
    let sign = CycNum::from_int(if n % 2 == 1 { 1 } else { -1 }, 1);
    let mut rows: HashMap<(u8, usize, usize), Vec<(usize, CycNum)>> = HashMap::new();
    for (k, &i) in unknowns.iter().enumerate() {
        let e = TensorElement::from_terms(q, n, nc, [(idx.words[i].clone(), CycNum::one(nc))])?;
        let s = cyclic_shift(&e, tw)?.axpy(&-sign.clone(), &e)?;
        for (w, c) in s.terms() {
            rows.entry((0, idx.get(w).unwrap(), 0))
                .or_default()
                .push((k, c.clone()));
        }
    }
    // derivative conditions: annihilator(R) kills every d_p of the potential
    let ann = p.relations().annihilator(nc);
    let nrel = p.degree();
    let ridx = q.paths(nrel);
    for (k, &i) in unknowns.iter().enumerate() {
        let w = &idx.words[i];
        let (pre, rest) = w.split_at(n - nrel);
        let pi = if n == nrel {
            q.word_head(w, n)
        } else {
            q.paths(n - nrel).get(pre).unwrap()
        };
        let ri = ridx.get(rest).unwrap();
        for (fi, f) in ann.basis().iter().enumerate() {
            if let Some((_, c)) = f.iter().find(|(j, _)| *j == ri) {
                rows.entry((1, pi, fi)).or_default().push((k, c.clone()));
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().copied().collect();
    keys.sort();
    let mat: Vec<SVec> = keys
        .iter()
        .map(|key| {
            let mut r = rows[key].clone();
            r.sort_by_key(|e| e.0);
            r
        })
        .collect();
    let sol = nullspace_rows(&mat, unknowns.len(), nc);
    Ok(sol
        .basis()
        .iter()
        .map(|v| {
            let full: SVec = v.iter().map(|(k, c)| (unknowns[*k], c.clone())).collect();
            TensorElement::from_svec(q, &idx, nc, &full)
        })
        .collect())
}

/// True when every order-(n-N) derivative of w lies in R.
pub fn derivatives_in_relations(p: &Presentation, w: &TensorElement) -> Result<bool> {
    let k = w
        .degree()
        .checked_sub(p.degree())
        .ok_or_else(|| Error::Degree("potential degree too small".into()))?;
    let idx = p.quiver().paths(p.degree());
    Ok(derivatives(w, k)?
        .values()
        .all(|d| p.relations().contains(&d.to_svec(&idx))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathalg::{delta_image, Quiver, TensorElement};

    fn c(i: i64) -> CycNum {
        CycNum::from_int(i, 1)
    }

    fn commutative(k: usize) -> Presentation {
        let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let q = Quiver::loops("v", &refs);
        let mut rels = Vec::new();
        for i in 0..k as u32 {
            for j in i + 1..k as u32 {
                rels.push(
                    TensorElement::from_terms(&q, 2, 1, [(vec![i, j], c(1)), (vec![j, i], c(-1))])
                        .unwrap(),
                );
            }
        }
        Presentation::from_elements(&q, 2, &rels, 1).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn free_and_polynomial_dims() {
        let q = Quiver::loops("v", &["a", "b", "c", "d"]);
        assert_eq!(
            graded_dims(&Presentation::free(&q), 4),
            vec![1, 4, 16, 64, 256]
        );
        for k in 1..=4 {
            let p = commutative(k);
            let dims = graded_dims(&p, 5);
            let expect: Vec<usize> = (0..=5).map(|d| binom(k + d - 1, d)).collect();
            assert_eq!(dims, expect, "k = {k}");
            let dual = koszul_dual(&p).unwrap();
            let ddims = graded_dims(&dual, k + 1);
            let dexpect: Vec<usize> = (0..=k + 1).map(|d| binom(k, d)).collect();
            assert_eq!(ddims, dexpect, "dual k = {k}");
        }
    }

    #[test]
    fn ideal_span_small_degrees() {
        let p = commutative(3);
        assert_eq!(ideal_degree_span(&p, 1).dim(), 0);
        assert_eq!(ideal_degree_span(&p, 2), *p.relations());
        for d in 0..=4 {
            assert_eq!(
                ideal_degree_span(&p, d).dim() + graded_dims(&p, d)[d],
                3usize.pow(d as u32)
            );
        }
    }

    #[test]
    fn normal_basis_low_degrees() {
        let p = commutative(3);
        assert_eq!(normal_basis(&p, 0), vec![Path::Vertex(0)]);
        assert_eq!(normal_basis(&p, 1).len(), 3);
        // greedy lex complement of commutators: sorted words x_i <= x_j
        let nb = normal_basis(&p, 2);
        let words: Vec<Vec<u32>> = nb.iter().map(|p| p.word()).collect();
        assert_eq!(
            words,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 1],
                vec![1, 2],
                vec![2, 2]
            ]
        );
    }

    #[test]
    fn double_dual_and_slices() {
        let p = commutative(3);
        let dd = koszul_dual(&koszul_dual(&p).unwrap()).unwrap();
        assert_eq!(dd.quiver(), p.quiver());
        assert_eq!(dd.relations(), p.relations());
        assert_eq!(dual_coalgebra_slice(&p, 2).unwrap(), *p.relations());
        assert_eq!(dual_coalgebra_slice(&p, 3).unwrap().dim(), 1);
        assert_eq!(dual_coalgebra_slice(&p, 1).unwrap().dim(), 3);
        let free = Presentation::free(p.quiver());
        assert_eq!(dual_coalgebra_slice(&free, 3).unwrap().dim(), 0);
        assert!(koszul_dual(&Presentation::from_elements(p.quiver(), 3, &[], 1).unwrap()).is_err());
    }

    #[test]
    fn multiplication_tables_agree_with_direct_nf() {
        let p = commutative(3);
        let t = Tower::build(&p, 4);
        // x2 . x0 x1 == x0 x1 x2 in the commutative ring
        let left = t.left_table(2, 2);
        let j = t.index_of(2, &[0, 1]).unwrap();
        let k = t.index_of(3, &[0, 1, 2]).unwrap();
        assert_eq!(left[j], vec![(k, c(1))]);
        assert_eq!(t.nf_word(&[2, 1, 0], 3), vec![(k, c(1))]);
        assert_eq!(t.mul(1, 2, 2, j), vec![(k, c(1))]);
    }

    #[test]
    fn potential_search_recovers_volume_form() {
        let p = commutative(3);
        let tw = Twist::identity(p.quiver());
        let sols = twisted_potentials(&p, &tw, 3).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(crate::pathalg::is_superpotential(&sols[0], &tw));
        assert_eq!(delta_image(&sols[0], 1).unwrap(), *p.relations());
        assert!(derivatives_in_relations(&p, &sols[0]).unwrap());
    }

    #[test]
    fn block_dims_on_two_vertices() {
        // preprojective algebra of A2: a: u->v, b: v->u, relations ab, ba
        let q = Quiver::new(&["u", "v"], &[("a", "v", "u"), ("b", "u", "v")]).unwrap();
        let ab = TensorElement::from_named(&q, 1, &[(&["a", "b"], c(1))]).unwrap();
        let ba = TensorElement::from_named(&q, 1, &[(&["b", "a"], c(1))]).unwrap();
        let p = Presentation::from_elements(&q, 2, &[ab, ba], 1).unwrap();
        assert_eq!(graded_dims(&p, 3), vec![2, 2, 0, 0]);
        let t = Tower::build(&p, 1);
        assert_eq!(t.block_dims(1), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(restricted_ideal_dim(&p, 2, &[0]), 1);
    }
}
