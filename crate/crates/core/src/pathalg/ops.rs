use std::collections::BTreeMap;

use super::element::TensorElement;
use super::quiver::{Path, Quiver};
use super::twist::Twist;
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, Echelon, Matrix, SVec, Subspace};

/// Left derivative: d_p(pr) = r, zero on paths without prefix p. For a
/// vertex e this is left multiplication by e.
pub fn derive(p: &Path, x: &TensorElement) -> Result<TensorElement> {
    let q = x.quiver();
    let k = p.len();
    if k > x.degree() {
        return Err(Error::Degree(format!(
            "cannot take a derivative of order {k} of a degree {} element",
            x.degree()
        )));
    }
    let d = x.degree() - k;
    let mut out = TensorElement::zero(q, d, x.conductor());
    match p {
        Path::Vertex(e) => {
            for (w, c) in x.terms() {
                if q.word_head(w, x.degree()) == *e as usize {
                    out.add_term(w.clone(), c.clone());
                }
            }
        }
        Path::Arrows(pw) => {
            for (w, c) in x.terms() {
                if w.starts_with(pw) {
                    let rest = if d == 0 {
                        vec![q.tail(*pw.last().unwrap()) as u32]
                    } else {
                        w[k..].to_vec()
                    };
                    out.add_term(rest, c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Right derivative: (rp)d_p = r. For a vertex e this is right multiplication by e.
pub fn derive_right(x: &TensorElement, p: &Path) -> Result<TensorElement> {
    let q = x.quiver();
    let k = p.len();
    if k > x.degree() {
        return Err(Error::Degree(format!(
            "cannot take a derivative of order {k} of a degree {} element",
            x.degree()
        )));
    }
    let d = x.degree() - k;
    let mut out = TensorElement::zero(q, d, x.conductor());
    match p {
        Path::Vertex(e) => {
            for (w, c) in x.terms() {
                if q.word_tail(w, x.degree()) == *e as usize {
                    out.add_term(w.clone(), c.clone());
                }
            }
        }
        Path::Arrows(pw) => {
            for (w, c) in x.terms() {
                if w.ends_with(pw) {
                    let rest = if d == 0 {
                        vec![q.head(pw[0]) as u32]
                    } else {
                        w[..d].to_vec()
                    };
                    out.add_term(rest, c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Twisted cyclic shift a1...an -> tw(an) a1...a(n-1).
pub fn cyclic_shift(x: &TensorElement, tw: &Twist) -> Result<TensorElement> {
    let n = x.degree();
    if n == 0 {
        return Err(Error::Degree("cyclic shift of a degree-0 element".into()));
    }
    let q = x.quiver();
    let mut out = TensorElement::zero(q, n, x.conductor());
    for (w, c) in x.terms() {
        let last = *w.last().unwrap();
        for (b, s) in tw.image(last) {
            let b = *b as u32;
            if n > 1 && q.tail(b) != q.head(w[0]) {
                continue;
            }
            let mut nw = Vec::with_capacity(n);
            nw.push(b);
            nw.extend_from_slice(&w[..n - 1]);
            out.add_term(nw, c * s);
        }
    }
    Ok(out)
}

/// Support paths p with h(p) = tw(t(p)).
pub fn is_weak_potential(x: &TensorElement, tw: &Twist) -> bool {
    let q = x.quiver();
    x.terms()
        .all(|(w, _)| q.word_head(w, x.degree()) == tw.vertex(q.word_tail(w, x.degree())))
}

/// True iff x is a weak potential for `tw` and its twisted cyclic shift is (-1)^(n-1) x.
pub fn is_superpotential(x: &TensorElement, tw: &Twist) -> bool {
    if !is_weak_potential(x, tw) {
        return false;
    }
    let n = x.degree();
    if n == 0 {
        return true;
    }
    let sign = if n % 2 == 1 {
        CycNum::one(1)
    } else {
        CycNum::from_int(-1, 1)
    };
    match cyclic_shift(x, tw) {
        Ok(s) => s == x.scale(&sign),
        Err(_) => false,
    }
}

/// Nonzero derivatives d_p x over all paths p of length k, keyed by p.
pub fn derivatives(x: &TensorElement, k: usize) -> Result<BTreeMap<Path, TensorElement>> {
    let n = x.degree();
    if k > n {
        return Err(Error::Degree(format!("order {k} exceeds degree {n}")));
    }
    let q = x.quiver();
    let mut out: BTreeMap<Path, TensorElement> = BTreeMap::new();
    for (w, c) in x.terms() {
        let (p, rest) = if k == 0 {
            (Path::Vertex(q.word_head(w, n) as u32), w.clone())
        } else if k == n {
            (Path::Arrows(w.clone()), vec![q.word_tail(w, n) as u32])
        } else {
            (Path::Arrows(w[..k].to_vec()), w[k..].to_vec())
        };
        out.entry(p)
            .or_insert_with(|| TensorElement::zero(q, n - k, x.conductor()))
            .add_term(rest, c.clone());
    }
    out.retain(|_, e| !e.is_zero());
    Ok(out)
}

/// Span of all order-k derivatives of x, inside the degree n-k path space.
pub fn delta_image(x: &TensorElement, k: usize) -> Result<Subspace> {
    let ds = derivatives(x, k)?;
    let idx = x.quiver().paths(x.degree() - k);
    let mut e = Echelon::new(idx.len());
    for d in ds.values() {
        e.insert(&d.to_svec(&idx));
    }
    Ok(Subspace::from_echelon(e))
}

/// e x e for the idempotent e = sum of the given vertices.
pub fn restrict_idempotent(x: &TensorElement, verts: &[usize]) -> TensorElement {
    let q = x.quiver();
    let keep: std::collections::HashSet<usize> = verts.iter().copied().collect();
    let mut out = TensorElement::zero(q, x.degree(), x.conductor());
    for (w, c) in x.terms() {
        if keep.contains(&q.word_head(w, x.degree())) && keep.contains(&q.word_tail(w, x.degree()))
        {
            out.add_term(w.clone(), c.clone());
        }
    }
    out
}

/// Apply arrow images letter by letter (one tensor factor at a time).
pub(crate) fn map_letters(
    x: &TensorElement,
    images: &[SVec],
    vertex_perm: &[usize],
) -> TensorElement {
    let q = x.quiver();
    let d = x.degree();
    if d == 0 {
        let mut out = TensorElement::zero(q, 0, x.conductor());
        for (w, c) in x.terms() {
            out.add_term(vec![vertex_perm[w[0] as usize] as u32], c.clone());
        }
        return out;
    }
    let mut cur: BTreeMap<Vec<u32>, CycNum> =
        x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    for pos in 0..d {
        let mut next: BTreeMap<Vec<u32>, CycNum> = BTreeMap::new();
        for (w, c) in &cur {
            for (b, s) in &images[w[pos] as usize] {
                let mut nw = w.clone();
                nw[pos] = *b as u32;
                let v = c * s;
                match next.get_mut(&nw) {
                    Some(y) => *y = &*y + &v,
                    None => {
                        next.insert(nw, v);
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let mut out = TensorElement::zero(q, d, x.conductor());
    for (w, c) in cur {
        out.add_term(w, c);
    }
    out
}

/// g^{(tensor) d} applied to x, where column j of g is the image of arrow j.
pub fn apply_graded_map(g: &Matrix, x: &TensorElement) -> Result<TensorElement> {
    let q = x.quiver();
    let k = q.arrow_count();
    if g.rows() != k || g.cols() != k {
        return Err(Error::Dimension(format!(
            "{}x{} matrix on {} arrows",
            g.rows(),
            g.cols(),
            k
        )));
    }
    let mut images = Vec::with_capacity(k);
    for j in 0..k {
        let mut col = Vec::new();
        for i in 0..k {
            let c = g.get(i, j);
            if c.is_zero() {
                continue;
            }
            if q.head(i as u32) != q.head(j as u32) || q.tail(i as u32) != q.tail(j as u32) {
                return Err(Error::Dimension(
                    "matrix mixes arrows with different endpoints".into(),
                ));
            }
            col.push((i, c.clone()));
        }
        images.push(col);
    }
    let perm: Vec<usize> = (0..q.vertex_count()).collect();
    Ok(map_letters(x, &images, &perm))
}

/// Apply the algebra automorphism `tw` to x.
pub fn apply_twist(tw: &Twist, x: &TensorElement) -> TensorElement {
    let q = x.quiver();
    let images: Vec<SVec> = (0..q.arrow_count() as u32)
        .map(|a| tw.image(a).clone())
        .collect();
    map_letters(x, &images, tw.vertex_perm())
}

/// Apply a letterwise twist to every basis vector of a subspace of the degree-d path space.
pub fn twist_subspace(tw: &Twist, q: &Quiver, s: &Subspace, d: usize, n: u32) -> Subspace {
    let idx = q.paths(d);
    let vecs: Vec<SVec> = s
        .basis()
        .iter()
        .map(|v| apply_twist(tw, &TensorElement::from_svec(q, &idx, n, v)).to_svec(&idx))
        .collect();
    Subspace::span(idx.len(), vecs.iter())
}
