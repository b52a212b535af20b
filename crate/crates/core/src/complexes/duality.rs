use std::collections::BTreeMap;

use super::{epsilon, splits, w_spaces, WSpace};
use crate::error::{Error, Result};
use crate::exactfield::{sv_collect, CycNum, Matrix, SVec};
use crate::pathalg::{apply_twist, TensorElement, Twist};

fn coords_row(w: &WSpace, v: &SVec, what: &str) -> Result<Vec<CycNum>> {
    w.space
        .coords(v)
        .ok_or_else(|| Error::Consistency(format!("{what} is not in W_{}", w.degree)))
}

/// G with omega = sum_kl G[k][l] u_k (x) v_l, u in W_{n-i}, v in W_i: the Gram
/// matrix of the pairing W_{n-i}* x W_i* -> C in the dual bases.
pub fn pairing_matrix(omega: &TensorElement, i: usize) -> Result<Matrix> {
    let w = w_spaces(omega)?;
    gram(omega, &w, i)
}

fn split_word(w: &[u32], n: usize, i: usize, omega: &TensorElement) -> (Vec<u32>, Vec<u32>) {
    let q = omega.quiver();
    if i == 0 {
        (w.to_vec(), vec![q.word_tail(w, n) as u32])
    } else if i == n {
        (vec![q.word_head(w, n) as u32], w.to_vec())
    } else {
        (w[..n - i].to_vec(), w[n - i..].to_vec())
    }
}

pub(super) fn gram(omega: &TensorElement, w: &[WSpace], i: usize) -> Result<Matrix> {
    let n = omega.degree();
    if i > n {
        return Err(Error::Degree(format!(
            "pairing index {i} exceeds degree {n}"
        )));
    }
    let conductor = omega.conductor();
    let q = omega.quiver();
    let (pre_idx, suf_idx) = (q.paths(n - i), q.paths(i));
    // columns of omega by suffix
    let mut by_suffix: BTreeMap<usize, Vec<(usize, CycNum)>> = BTreeMap::new();
    for (word, c) in omega.terms() {
        let (p, s) = split_word(word, n, i, omega);
        by_suffix
            .entry(suf_idx.get(&s).expect("suffix path"))
            .or_default()
            .push((pre_idx.get(&p).expect("prefix path"), c.clone()));
    }
    let (du, dv) = (w[n - i].dim(), w[i].dim());
    let mut rows: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); du];
    for (s, entries) in by_suffix {
        let alpha = coords_row(
            &w[n - i],
            &sv_collect(entries),
            "a prefix column of the potential",
        )?;
        for (k, a) in alpha.into_iter().enumerate() {
            if !a.is_zero() {
                rows[k].push((s, a));
            }
        }
    }
    let mut g = Matrix::zeros(du, dv, conductor);
    for (k, r) in rows.into_iter().enumerate() {
        let beta = coords_row(&w[i], &sv_collect(r), "a suffix row of the potential")?;
        for (l, b) in beta.into_iter().enumerate() {
            g.set(k, l, b);
        }
    }
    Ok(g)
}

/// Matrix of the twist acting letterwise on W_i (columns are images).
pub fn twist_on_w(omega: &TensorElement, tw: &Twist, i: usize) -> Result<Matrix> {
    let w = w_spaces(omega)?;
    twist_matrix(omega, &w[i], tw)
}

fn twist_matrix(omega: &TensorElement, wi: &WSpace, tw: &Twist) -> Result<Matrix> {
    let q = omega.quiver();
    let n = omega.conductor();
    let idx = q.paths(wi.degree);
    let mut m = Matrix::zeros(wi.dim(), wi.dim(), n);
    for (l, v) in wi.basis().iter().enumerate() {
        let img = apply_twist(tw, &TensorElement::from_svec(q, &idx, n, v)).to_svec(&idx);
        for (k, c) in coords_row(wi, &img, "the twist of a basis vector")?
            .into_iter()
            .enumerate()
        {
            m.set(k, l, c);
        }
    }
    Ok(m)
}

/// G^{(n-i)} = (-1)^{i(n-1)} S_i G^{(i)T}, where S_i is the twist on W_i.
pub fn supersymmetry_holds(omega: &TensorElement, tw: &Twist, i: usize) -> Result<bool> {
    let w = w_spaces(omega)?;
    let n = omega.degree();
    let g = gram(omega, &w, i)?;
    let g2 = gram(omega, &w, n - i)?;
    let s = twist_matrix(omega, &w[i], tw)?;
    let sign = CycNum::from_int(
        if (i * (n - 1)) % 2 == 1 { -1 } else { 1 },
        omega.conductor(),
    );
    Ok(g2 == s.try_mul(&g.transpose())?.scale(&sign))
}

fn ratio(a: &Matrix, b: &Matrix) -> Option<Option<CycNum>> {
    // Some(None): both zero; Some(Some(t)): a = t b; None: not proportional
    let mut t: Option<CycNum> = None;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let (x, y) = (a.get(i, j), b.get(i, j));
            match (x.is_zero(), y.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = x / y;
                    match &t {
                        None => t = Some(r),
                        Some(s) if *s == r => {}
                        Some(_) => return None,
                    }
                }
                _ => return None,
            }
        }
    }
    Some(t)
}

/// For each i in 1..=n, the scalar theta_i with
///   d_{n+1-i}^{L,x} eta = theta_i eta' (d_i^{R,x})^T  and  d_{n+1-i}^{R,x} eta = theta_i eta' (d_i^{L,x})^T
/// for every arrow x, where d^{L,x}, d^{R,x} are the signed coefficient maps of
/// the differentials on W and eta, eta' the pairing isomorphisms. `None` when
/// no single scalar works, i.e. d_i is not the transpose of d_{n+1-i}.
/// `signed = false` drops the eps_i factors.
pub fn selfduality_signs(omega: &TensorElement, signed: bool) -> Result<Vec<Option<CycNum>>> {
    let w = w_spaces(omega)?;
    let n = omega.degree();
    let c = omega.conductor();
    let q = omega.quiver();
    let k = q.arrow_count();
    // per i, per arrow: coefficient maps W_i -> W_{i-1}
    let coef = |i: usize, left: bool| -> Result<Vec<Matrix>> {
        let sp = splits(q, &w, i, left, c)?;
        let mut out = vec![Matrix::zeros(w[i - 1].dim(), w[i].dim(), c); k];
        let e = if signed { epsilon(n, i) } else { 1 };
        let s = if left {
            e
        } else if i % 2 == 1 {
            -e
        } else {
            e
        };
        let s = CycNum::from_int(s, c);
        for (l, list) in sp.iter().enumerate() {
            for (x, v) in list {
                for (j, y) in v {
                    out[*x as usize].set(*j, l, y * &s);
                }
            }
        }
        Ok(out)
    };
    let grams = (0..=n)
        .map(|i| gram(omega, &w, i))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let j = n + 1 - i;
        let (li, ri) = (coef(i, true)?, coef(i, false)?);
        let (lj, rj) = (coef(j, true)?, coef(j, false)?);
        // eta_j: W_{n-j}* -> W_j has matrix G^{(j)T}
        let eta_hi = grams[j].transpose();
        let eta_lo = grams[n - i].transpose();
        let mut theta: Option<CycNum> = None;
        let mut ok = true;
        for x in 0..k {
            for (a, b) in [(&lj[x], &ri[x]), (&rj[x], &li[x])] {
                let lhs = a.try_mul(&eta_hi)?;
                let rhs = eta_lo.try_mul(&b.transpose())?;
                match ratio(&lhs, &rhs) {
                    Some(None) => {}
                    Some(Some(t)) => match &theta {
                        None => theta = Some(t),
                        Some(s) if *s == t => {}
                        Some(_) => ok = false,
                    },
                    None => ok = false,
                }
            }
        }
        out.push(if ok { theta } else { None });
    }
    Ok(out)
}

/// Per-arrow coefficient maps W_i -> W_{i-1} of the unsigned left or right split.
fn split_coefficients(
    omega: &TensorElement,
    w: &[WSpace],
    i: usize,
    left: bool,
) -> Result<Vec<Matrix>> {
    let c = omega.conductor();
    let q = omega.quiver();
    let mut out = vec![Matrix::zeros(w[i - 1].dim(), w[i].dim(), c); q.arrow_count()];
    for (l, list) in splits(q, w, i, left, c)?.iter().enumerate() {
        for (x, v) in list {
            for (j, y) in v {
                out[*x as usize].set(*j, l, y.clone());
            }
        }
    }
    Ok(out)
}

/// For each i in 1..=n, the scalar s_i with
///   <[xi x], y>^{-1} = s_i <x, [y xi']>^{-1}
/// for all x in W_i, y in W_{n+1-i} and arrow duals xi, where <u, w>^{-1} is the
/// inverse pairing W_k x W_{n-k} -> C and xi' = xi o sigma for the given twist
/// (xi' = xi untwisted). `None` when no single scalar works. Self-duality of the
/// complex with the eps signs amounts to s_i = eps_i eps_{n-i}.
pub fn duality_signs(omega: &TensorElement, tw: &Twist) -> Result<Vec<Option<CycNum>>> {
    let w = w_spaces(omega)?;
    let n = omega.degree();
    let k = omega.quiver().arrow_count();
    let sigma = twist_matrix(omega, &w[1], tw)?;
    let inv = |j: usize| gram(omega, &w, j)?.inverse();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let li = split_coefficients(omega, &w, i, true)?;
        let rj = split_coefficients(omega, &w, n + 1 - i, false)?;
        let (g_hi, g_lo) = (inv(n + 1 - i)?, inv(n - i)?);
        let mut theta: Option<CycNum> = None;
        let mut ok = true;
        for x in 0..k {
            let lhs = g_hi.try_mul(&li[x])?;
            // R_{xi o sigma} = sum_b <xi, sigma(b)> R_b
            let mut r = Matrix::zeros(rj[x].rows(), rj[x].cols(), omega.conductor());
            for b in 0..k {
                let c = sigma.get(x, b);
                if !c.is_zero() {
                    r = r.add(&rj[b].scale(c))?;
                }
            }
            let rhs = r.transpose().try_mul(&g_lo)?;
            match ratio(&lhs, &rhs) {
                Some(None) => {}
                Some(Some(t)) => match &theta {
                    None => theta = Some(t),
                    Some(s) if *s == t => {}
                    Some(_) => ok = false,
                },
                None => ok = false,
            }
        }
        out.push(if ok { theta } else { None });
    }
    Ok(out)
}
