//! McKay quivers and superpotentials of finite matrix groups.
//!
//! Conventions. An arrow a: t -> h is an intertwiner psi_a: S_h -> S_t (x) V*
//! and its dual psi_{a*}: S_t -> S_h (x) V. Both are stored as matrices whose
//! row index is (s, v) -> s * dim V + v. A path a1...an (an first) gives
//! psi_{p*}: S_t -> S_h (x) V_{a1} (x) ... (x) V_{an}.

mod group;
mod input;

use std::collections::BTreeMap;

pub use group::{det, group_closure, GroupData, Irrep};
pub use input::{ArrowInput, GroupInput, IrrepInput};

use crate::error::{Error, Result};
use crate::exactfield::{nullspace_rows, q, sv_to_dense, CycNum, Matrix, SVec};
use crate::pathalg::{is_superpotential, Arrow, Path, Quiver, TensorElement, Twist};
use crate::quotient::{Presentation, Tower};

/// One arrow of the McKay quiver with its intertwiner and dual.
#[derive(Clone, Debug)]
pub struct ArrowMap {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub primal: Matrix,
    pub dual: Matrix,
}

#[derive(Clone, Debug)]
pub struct McKayData {
    group: GroupData,
    quiver: Quiver,
    tau: Vec<usize>,
    counts: Vec<Vec<usize>>,
    arrows: Vec<ArrowMap>,
    det_isos: Vec<Matrix>,
}

fn gens_of(g: &GroupData, f: impl Fn(usize) -> Matrix) -> Vec<Matrix> {
    (0..g.generators().len())
        .map(|k| f(g.generator_index(k)))
        .collect()
}

fn irrep_gens(g: &GroupData, i: usize) -> Vec<Matrix> {
    gens_of(g, |e| g.irreps()[i].mats[e].clone())
}

fn dual_v_gens(g: &GroupData) -> Vec<Matrix> {
    gens_of(g, |e| g.elements()[g.inverse(e)].transpose())
}

fn v_gens(g: &GroupData) -> Vec<Matrix> {
    gens_of(g, |e| g.elements()[e].clone())
}

/// Basis of Hom_G(A, B) for representations given on the generators, as
/// matrices dim B x dim A in echelon-canonical order.
pub fn equivariant_maps(a: &[Matrix], b: &[Matrix], n: u32) -> Vec<Matrix> {
    let (da, db) = (a[0].rows(), b[0].rows());
    let var = |r: usize, c: usize| r * da + c;
    let mut rows: Vec<SVec> = Vec::new();
    for (ga, gb) in a.iter().zip(b) {
        for i in 0..db {
            for j in 0..da {
                let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
                for k in 0..db {
                    let x = gb.get(i, k);
                    if !x.is_zero() {
                        let e = acc.entry(var(k, j)).or_insert_with(|| CycNum::zero(n));
                        *e = &*e + x;
                    }
                }
                for k in 0..da {
                    let x = ga.get(k, j);
                    if !x.is_zero() {
                        let e = acc.entry(var(i, k)).or_insert_with(|| CycNum::zero(n));
                        *e = &*e - x;
                    }
                }
                let row: SVec = acc.into_iter().filter(|e| !e.1.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let ns = nullspace_rows(&rows, da * db, n);
    ns.basis()
        .iter()
        .map(|v| {
            let d = sv_to_dense(v, da * db, n);
            Matrix::from_rows(d.chunks(da).map(|c| c.to_vec()).collect()).expect("rectangular")
        })
        .collect()
}

/// Hom_G(S_j, S_i (x) V*), the space of intertwiners for arrows i -> j.
pub fn intertwiner_space(g: &GroupData, j: usize, i: usize) -> Vec<Matrix> {
    let vd = dual_v_gens(g);
    let tgt: Vec<Matrix> = irrep_gens(g, i)
        .iter()
        .zip(&vd)
        .map(|(a, b)| a.kron(b))
        .collect();
    equivariant_maps(&irrep_gens(g, j), &tgt, g.conductor())
}

/// Hom_G(S_t, S_h (x) V), where the duals of arrows t -> h live.
pub fn dual_intertwiner_space(g: &GroupData, t: usize, h: usize) -> Vec<Matrix> {
    let v = v_gens(g);
    let tgt: Vec<Matrix> = irrep_gens(g, h)
        .iter()
        .zip(&v)
        .map(|(a, b)| a.kron(b))
        .collect();
    equivariant_maps(&irrep_gens(g, t), &tgt, g.conductor())
}

/// Trace of S_t -> S_h (x) V -> S_t (x) V* (x) V -> S_t for phi: S_h -> S_t (x) V*
/// and psi: S_t -> S_h (x) V.
pub fn pairing(phi: &Matrix, psi: &Matrix, dim_v: usize) -> CycNum {
    let dt = psi.cols();
    let dh = phi.cols();
    let mut acc = CycNum::zero(phi.conductor().max(psi.conductor()));
    for st in 0..dt {
        for sh in 0..dh {
            for v in 0..dim_v {
                let a = psi.get(sh * dim_v + v, st);
                if a.is_zero() {
                    continue;
                }
                let b = phi.get(st * dim_v + v, sh);
                if !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
        }
    }
    acc
}

fn first_nonzero(m: &Matrix) -> Option<CycNum> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j))
        .find(|x| !x.is_zero())
        .cloned()
}

fn check_equivariant(src: &[Matrix], tgt: &[Matrix], m: &Matrix) -> Result<bool> {
    for (a, b) in src.iter().zip(tgt) {
        if b.try_mul(m)? != m.try_mul(a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Arrow multiplicities [tail][head] from characters.
pub fn arrow_counts(g: &GroupData) -> Result<Vec<Vec<usize>>> {
    let chi_vd: Vec<CycNum> = g.character().iter().map(|c| c.conj()).collect();
    let chars: Vec<Vec<CycNum>> = g.irreps().iter().map(|r| r.character()).collect();
    let mut counts = vec![vec![0; chars.len()]; chars.len()];
    for (i, ci) in chars.iter().enumerate() {
        let prod: Vec<CycNum> = ci.iter().zip(&chi_vd).map(|(a, b)| a * b).collect();
        for (j, cj) in chars.iter().enumerate() {
            counts[i][j] = g.multiplicity(cj, &prod)?;
        }
    }
    Ok(counts)
}

/// tau[j] = i where S_i = S_j (x) det_V.
pub fn det_permutation(g: &GroupData) -> Result<Vec<usize>> {
    let det = g.det_character();
    let chars: Vec<Vec<CycNum>> = g.irreps().iter().map(|r| r.character()).collect();
    chars
        .iter()
        .enumerate()
        .map(|(j, cj)| {
            let twisted: Vec<CycNum> = cj.iter().zip(&det).map(|(a, b)| a * b).collect();
            chars.iter().position(|c| *c == twisted).ok_or_else(|| {
                Error::Representation(format!(
                    "{} (x) det is not among the irreps",
                    g.irreps()[j].name
                ))
            })
        })
        .collect()
}

/// Graded multiplicities <chi_j, chi_{Sym^d V*} chi_i>, indexed [i][j].
pub fn molien_multiplicities(g: &GroupData, d: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.conductor();
    let size = g.order();
    // power sums p_m(g) = chi_{V*}(g^m), then Newton: d h_d = sum_m p_m h_{d-m}
    let power: Vec<Vec<CycNum>> = (0..=d)
        .map(|m| {
            (0..size)
                .map(|e| g.elements()[g.power(e, m)].trace().conj())
                .collect()
        })
        .collect();
    let mut h: Vec<Vec<CycNum>> = vec![vec![CycNum::one(n); size]];
    for k in 1..=d {
        let mut hk = vec![CycNum::zero(n); size];
        for (e, slot) in hk.iter_mut().enumerate() {
            let mut acc = CycNum::zero(n);
            for m in 1..=k {
                acc = &acc + &(&power[m][e] * &h[k - m][e]);
            }
            *slot = acc.scale(&q(1, k as i64));
        }
        h.push(hk);
    }
    let chars: Vec<Vec<CycNum>> = g.irreps().iter().map(|r| r.character()).collect();
    let mut out = vec![vec![0; chars.len()]; chars.len()];
    for (i, ci) in chars.iter().enumerate() {
        let prod: Vec<CycNum> = ci.iter().zip(&h[d]).map(|(a, b)| a * b).collect();
        for (j, cj) in chars.iter().enumerate() {
            out[i][j] = g.multiplicity(cj, &prod)?;
        }
    }
    Ok(out)
}

/// Build the McKay quiver with default intertwiner bases. Bases along
/// tau-orbits of vertex pairs are transported from the first pair of each
/// orbit, so the arrow basis is closed under the twist.
pub fn mckay_quiver(g: &GroupData) -> Result<McKayData> {
    if g.irreps().is_empty() {
        return Err(Error::Representation("no irreps attached".into()));
    }
    g.check_complete()?;
    let counts = arrow_counts(g)?;
    let tau = det_permutation(g)?;
    let k = g.irreps().len();
    let det_isos = (0..k)
        .map(|h| default_det_iso(g, &tau, h))
        .collect::<Result<Vec<_>>>()?;
    let mut by_pair: BTreeMap<(usize, usize), Vec<Matrix>> = BTreeMap::new();
    for t in 0..k {
        for h in 0..k {
            if counts[t][h] == 0 || by_pair.contains_key(&(t, h)) {
                continue;
            }
            let basis = intertwiner_space(g, h, t);
            if basis.len() != counts[t][h] {
                return Err(Error::Consistency(format!(
                    "{} intertwiners for {} arrows {t} -> {h}",
                    basis.len(),
                    counts[t][h]
                )));
            }
            let mut cur = basis;
            let (mut ct, mut ch) = (t, h);
            loop {
                by_pair.insert((ct, ch), cur.clone());
                let (nt, nh) = (tau[ct], tau[ch]);
                if by_pair.contains_key(&(nt, nh)) {
                    break;
                }
                cur = cur
                    .iter()
                    .map(|m| transport_primal(&det_isos, g.degree(), ct, ch, m))
                    .collect::<Result<Vec<_>>>()?;
                (ct, ch) = (nt, nh);
            }
        }
    }
    let names: Vec<String> = g.irreps().iter().map(|r| r.name.clone()).collect();
    let mut arrows = Vec::new();
    for ((t, h), basis) in by_pair {
        let multi = basis.len() > 1;
        for (idx, m) in basis.into_iter().enumerate() {
            let name = if multi {
                format!("a{t}_{h}_{idx}")
            } else {
                format!("a{t}_{h}")
            };
            arrows.push(ArrowMap {
                name,
                tail: t,
                head: h,
                primal: m,
                dual: Matrix::zeros(0, 0, 1),
            });
        }
    }
    let quiver = build_quiver(&names, &arrows)?;
    let mut data = McKayData {
        group: g.clone(),
        quiver,
        tau,
        counts,
        arrows,
        det_isos,
    };
    data.recompute_duals()?;
    Ok(data)
}

fn build_quiver(names: &[String], arrows: &[ArrowMap]) -> Result<Quiver> {
    Quiver::from_parts(
        names.to_vec(),
        arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                head: a.head,
                tail: a.tail,
            })
            .collect(),
    )
}

/// u_h: S_{tau h} -> S_h (x) det, normalized so its first nonzero entry is 1.
fn default_det_iso(g: &GroupData, tau: &[usize], h: usize) -> Result<Matrix> {
    let det = g.det_character();
    let dg = gens_of(g, |e| Matrix::scalar(1, &det[e]));
    let tgt: Vec<Matrix> = irrep_gens(g, h)
        .iter()
        .zip(&dg)
        .map(|(a, b)| a.kron(b))
        .collect();
    let sols = equivariant_maps(&irrep_gens(g, tau[h]), &tgt, g.conductor());
    if sols.len() != 1 {
        return Err(Error::Consistency(format!(
            "{} det isomorphisms at vertex {h}",
            sols.len()
        )));
    }
    let u = &sols[0];
    let f = first_nonzero(u).expect("nonzero iso");
    Ok(u.scale(&f.inv()?))
}

/// (u_t^{-1} (x) I) psi u_h, moving an intertwiner for t -> h to tau t -> tau h.
fn transport_primal(
    u: &[Matrix],
    dim_v: usize,
    t: usize,
    h: usize,
    psi: &Matrix,
) -> Result<Matrix> {
    let n = psi.conductor();
    let left = u[t].inverse()?.kron(&Matrix::identity(dim_v, n));
    left.try_mul(psi)?.try_mul(&u[h])
}

/// (u_h^{-1} (x) I) psi* u_t for a dual intertwiner of t -> h.
fn transport_dual(u: &[Matrix], dim_v: usize, t: usize, h: usize, psi: &Matrix) -> Result<Matrix> {
    let n = psi.conductor();
    let left = u[h].inverse()?.kron(&Matrix::identity(dim_v, n));
    left.try_mul(psi)?.try_mul(&u[t])
}

impl McKayData {
    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// tau[j] = i where S_i = S_j (x) det.
    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn arrows(&self) -> &[ArrowMap] {
        &self.arrows
    }

    pub fn det_isos(&self) -> &[Matrix] {
        &self.det_isos
    }

    pub fn conductor(&self) -> u32 {
        self.group.conductor()
    }

    fn pair_arrows(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut m: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            m.entry((a.tail, a.head)).or_default().push(i);
        }
        m
    }

    /// Recompute duals from the primal intertwiners: <psi_a, psi_{b*}> = delta_ab.
    pub fn recompute_duals(&mut self) -> Result<()> {
        let dv = self.group.degree();
        for ((t, h), idx) in self.pair_arrows() {
            let basis = dual_intertwiner_space(&self.group, t, h);
            if basis.len() != idx.len() {
                return Err(Error::Consistency(format!(
                    "dual space {t} -> {h} has dimension {}",
                    basis.len()
                )));
            }
            let m = idx.len();
            let mut gram = Matrix::zeros(m, m, self.conductor());
            for (r, &a) in idx.iter().enumerate() {
                for (c, d) in basis.iter().enumerate() {
                    gram.set(r, c, pairing(&self.arrows[a].primal, d, dv));
                }
            }
            let x = gram.transpose().inverse().map_err(|_| {
                Error::Consistency(format!("singular pairing on arrows {t} -> {h}"))
            })?;
            for (r, &a) in idx.iter().enumerate() {
                let mut acc = Matrix::zeros(basis[0].rows(), basis[0].cols(), self.conductor());
                for (c, d) in basis.iter().enumerate() {
                    acc = acc.add(&d.scale(x.get(r, c)))?;
                }
                self.arrows[a].dual = acc;
            }
        }
        Ok(())
    }

    /// Replace the arrows by user-supplied dual intertwiners (name, tail, head, psi*).
    /// Primal intertwiners are recovered by inverting the pairing.
    pub fn with_dual_bases(mut self, arrows: Vec<(String, usize, usize, Matrix)>) -> Result<Self> {
        let g = &self.group;
        let dv = g.degree();
        let k = g.irreps().len();
        let mut seen = vec![vec![0; k]; k];
        let vg = v_gens(g);
        for (name, t, h, m) in &arrows {
            if *t >= k || *h >= k {
                return Err(Error::Representation(format!(
                    "arrow {name}: unknown vertex"
                )));
            }
            let (dt, dh) = (g.irreps()[*t].dim, g.irreps()[*h].dim);
            if m.rows() != dh * dv || m.cols() != dt {
                return Err(Error::Dimension(format!(
                    "arrow {name}: dual map must be {}x{}",
                    dh * dv,
                    dt
                )));
            }
            let tgt: Vec<Matrix> = irrep_gens(g, *h)
                .iter()
                .zip(&vg)
                .map(|(a, b)| a.kron(b))
                .collect();
            if !check_equivariant(&irrep_gens(g, *t), &tgt, m)? {
                return Err(Error::Representation(format!(
                    "arrow {name}: dual map is not equivariant"
                )));
            }
            seen[*t][*h] += 1;
        }
        if seen != self.counts {
            return Err(Error::Representation(
                "supplied arrows do not match the character counts".into(),
            ));
        }
        self.arrows = arrows
            .into_iter()
            .map(|(name, tail, head, dual)| ArrowMap {
                name,
                tail,
                head,
                primal: Matrix::zeros(0, 0, 1),
                dual,
            })
            .collect();
        for ((t, h), idx) in self.pair_arrows() {
            let basis = intertwiner_space(&self.group, h, t);
            let m = idx.len();
            let mut gram = Matrix::zeros(m, m, self.conductor());
            for (r, p) in basis.iter().enumerate() {
                for (c, &a) in idx.iter().enumerate() {
                    gram.set(r, c, pairing(p, &self.arrows[a].dual, dv));
                }
            }
            let y = gram.inverse().map_err(|_| {
                Error::Representation(format!("supplied arrows {t} -> {h} are linearly dependent"))
            })?;
            for (r, &a) in idx.iter().enumerate() {
                let mut acc = Matrix::zeros(basis[0].rows(), basis[0].cols(), self.conductor());
                for (c, p) in basis.iter().enumerate() {
                    acc = acc.add(&p.scale(y.get(r, c)))?;
                }
                self.arrows[a].primal = acc;
            }
        }
        let names: Vec<String> = self.group.irreps().iter().map(|r| r.name.clone()).collect();
        self.quiver = build_quiver(&names, &self.arrows)?;
        Ok(self)
    }

    /// Override det isomorphisms u_h: S_{tau h} -> S_h (x) det for some vertices.
    pub fn with_det_isos(mut self, isos: Vec<(usize, Matrix)>) -> Result<Self> {
        let g = &self.group;
        let det = g.det_character();
        let dg = gens_of(g, |e| Matrix::scalar(1, &det[e]));
        for (h, u) in isos {
            let th = self.tau[h];
            if u.rows() != g.irreps()[h].dim || u.cols() != g.irreps()[th].dim {
                return Err(Error::Dimension(format!(
                    "det iso at {} has the wrong shape",
                    g.irreps()[h].name
                )));
            }
            let tgt: Vec<Matrix> = irrep_gens(g, h)
                .iter()
                .zip(&dg)
                .map(|(a, b)| a.kron(b))
                .collect();
            if u.is_zero() || !check_equivariant(&irrep_gens(g, th), &tgt, &u)? {
                return Err(Error::Representation(format!(
                    "det iso at {} is not an equivariant isomorphism",
                    g.irreps()[h].name
                )));
            }
            self.det_isos[h] = u;
        }
        Ok(self)
    }

    /// The twist sigma on arrows with vertex map tau^{-1}: sigma(a) = sum_b <psi_a, T(psi_{b*})> b,
    /// where T tensors with det.
    pub fn transport_twist(&self) -> Result<Twist> {
        let dv = self.group.degree();
        let k = self.arrows.len();
        let n = self.conductor();
        let mut m = Matrix::zeros(k, k, n);
        let pairs = self.pair_arrows();
        for (b, ab) in self.arrows.iter().enumerate() {
            let moved = transport_dual(&self.det_isos, dv, ab.tail, ab.head, &ab.dual)?;
            let target = (self.tau[ab.tail], self.tau[ab.head]);
            for &a in pairs.get(&target).map(|v| v.as_slice()).unwrap_or(&[]) {
                m.set(b, a, pairing(&self.arrows[a].primal, &moved, dv));
            }
        }
        let mut inv = vec![0; self.tau.len()];
        for (j, &i) in self.tau.iter().enumerate() {
            inv[i] = j;
        }
        let images = (0..k)
            .map(|a| crate::exactfield::sv_from_dense(&m.column(a)))
            .collect();
        Twist::new(&self.quiver, inv, images)
    }

    /// c_p for a path of length dim V.
    pub fn path_scalar_cp(&self, p: &Path) -> Result<CycNum> {
        let dv = self.group.degree();
        let n = self.conductor();
        let w = match p {
            Path::Arrows(w) if w.len() == dv => w.clone(),
            _ => return Err(Error::Degree(format!("c_p needs a path of length {dv}"))),
        };
        let h = self.quiver.head(w[0]);
        let t = self.quiver.tail(*w.last().unwrap());
        if self.tau[h] != t {
            return Ok(CycNum::zero(n));
        }
        // tensor[s][vv][c], vv the V factors so far with the newest most significant
        let last = &self.arrows[*w.last().unwrap() as usize];
        let dt = self.group.irreps()[t].dim;
        let mut cur_dim = self.group.irreps()[last.head].dim;
        let mut vlen = dv;
        let mut tensor: Vec<CycNum> = vec![CycNum::zero(n); cur_dim * vlen * dt];
        for s in 0..cur_dim {
            for v in 0..dv {
                for c in 0..dt {
                    tensor[(s * vlen + v) * dt + c] = last.dual.get(s * dv + v, c).clone();
                }
            }
        }
        for &a in w[..dv - 1].iter().rev() {
            let arr = &self.arrows[a as usize];
            let nd = self.group.irreps()[arr.head].dim;
            let nvlen = vlen * dv;
            let mut next = vec![CycNum::zero(n); nd * nvlen * dt];
            for s2 in 0..nd {
                for v2 in 0..dv {
                    for s in 0..cur_dim {
                        let coef = arr.dual.get(s2 * dv + v2, s);
                        if coef.is_zero() {
                            continue;
                        }
                        for vv in 0..vlen {
                            for c in 0..dt {
                                let x = &tensor[(s * vlen + vv) * dt + c];
                                if !x.is_zero() {
                                    let slot = &mut next[(s2 * nvlen + v2 * vlen + vv) * dt + c];
                                    *slot = &*slot + &(coef * x);
                                }
                            }
                        }
                    }
                }
            }
            tensor = next;
            cur_dim = nd;
            vlen = nvlen;
        }
        // antisymmetrize
        let perms = signed_permutations(dv);
        let mut r = Matrix::zeros(cur_dim, dt, n);
        for s in 0..cur_dim {
            for c in 0..dt {
                let mut acc = CycNum::zero(n);
                for (idx, sign) in &perms {
                    let x = &tensor[(s * vlen + idx) * dt + c];
                    if !x.is_zero() {
                        acc = if *sign > 0 { &acc + x } else { &acc - x };
                    }
                }
                r.set(s, c, acc);
            }
        }
        let u = &self.det_isos[h];
        let (mut ratio, mut found) = (CycNum::zero(n), false);
        for i in 0..u.rows() {
            for j in 0..u.cols() {
                if !u.get(i, j).is_zero() {
                    ratio = r.get(i, j) / u.get(i, j);
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        if r != u.scale(&ratio) {
            return Err(Error::Consistency(format!(
                "composite along {} is not proportional to the det isomorphism",
                self.quiver.path_name(p)
            )));
        }
        Ok(ratio)
    }

    /// Phi = sum_{|p| = n} c_p dim S_{h(p)} p, with the twist it is supercyclic for.
    /// With `normalize`, Phi is scaled so its first coefficient is 1.
    pub fn potential(&self, normalize: bool) -> Result<(TensorElement, Twist)> {
        let dv = self.group.degree();
        let n = self.conductor();
        let mut terms = Vec::new();
        for w in &self.quiver.paths(dv).words {
            let h = self.quiver.head(w[0]);
            let t = self.quiver.tail(*w.last().unwrap());
            if self.tau[h] != t {
                continue;
            }
            let c = self.path_scalar_cp(&Path::Arrows(w.clone()))?;
            if !c.is_zero() {
                terms.push((w.clone(), c.scale(&q(self.group.irreps()[h].dim as i64, 1))));
            }
        }
        let mut phi = TensorElement::from_terms(&self.quiver, dv, n, terms)?;
        if normalize {
            phi = phi.normalized();
        }
        let tw = self.transport_twist()?;
        if !is_superpotential(&phi, &tw) {
            return Err(Error::NotSuperpotential("McKay potential fails the twisted symmetry; the arrow basis may not be closed under the twist".into()));
        }
        Ok((phi, tw))
    }

    /// The quotient by the order-(n-2) derivatives of Phi.
    pub fn presentation(&self, phi: &TensorElement) -> Result<Presentation> {
        let dv = self.group.degree();
        if dv < 2 {
            return Err(Error::Degree("dim V must be at least 2".into()));
        }
        let rel = crate::pathalg::delta_image(phi, dv - 2)?;
        Presentation::new(&self.quiver, 2, rel, self.conductor())
    }

    /// Compare per-vertex-pair Hilbert data of the quotient with Molien multiplicities.
    /// Returns the degrees where they disagree.
    pub fn molien_mismatches(&self, pres: &Presentation, dmax: usize) -> Result<Vec<usize>> {
        let tower = Tower::build(pres, dmax);
        let mut bad = Vec::new();
        for d in 0..=dmax {
            let mol = molien_multiplicities(&self.group, d)?;
            let blocks = tower.block_dims(d);
            let k = mol.len();
            if (0..k).any(|i| (0..k).any(|j| mol[i][j] != blocks[j][i])) {
                bad.push(d);
            }
        }
        Ok(bad)
    }
}

/// All permutations of 0..n as (base-n index with the first factor most significant, sign).
fn signed_permutations(n: usize) -> Vec<(usize, i32)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, sign: i32, out: &mut Vec<(usize, i32)>) {
        let n = perm.len();
        if k == n {
            out.push((perm.iter().fold(0, |acc, &p| acc * n + p), sign));
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            rec(k + 1, perm, if i == k { sign } else { -sign }, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, 1, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathalg::delta_image;

    fn fixture(name: &str) -> GroupInput {
        let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn span(q: &Quiver, d: usize, n: u32, rels: &[&str]) -> crate::exactfield::Subspace {
        let idx = q.paths(d);
        let vs: Vec<SVec> = rels
            .iter()
            .map(|r| TensorElement::parse(q, d, n, r).unwrap().to_svec(&idx))
            .collect();
        crate::exactfield::Subspace::span(idx.len(), &vs)
    }

    #[test]
    fn closure_orders() {
        let d8 = fixture("d8").group().unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.irreps().len(), 5);
        let triv = group_closure(&[Matrix::identity(3, 1)], 10).unwrap();
        assert_eq!(triv.order(), 1);
        let shear = Matrix::from_ints(&[&[1, 1], &[0, 1]], 1);
        assert!(matches!(group_closure(&[shear], 50), Err(Error::Group(_))));
    }

    #[test]
    fn bad_irreps_rejected() {
        let g = group_closure(fixture("d8").group().unwrap().generators(), 100).unwrap();
        // g -> diag(i, 1), h -> 1 breaks h g h = g^-1
        let m = Matrix::from_rows(vec![
            vec![CycNum::root_pow(4, 1), CycNum::zero(4)],
            vec![CycNum::zero(4), CycNum::one(4)],
        ])
        .unwrap();
        assert!(g
            .clone()
            .with_irreps(vec![("bad".into(), vec![m, Matrix::identity(2, 4)])])
            .is_err());
        let g = g
            .with_irreps(vec![(
                "V0".into(),
                vec![Matrix::identity(1, 4), Matrix::identity(1, 4)],
            )])
            .unwrap();
        assert!(g.check_complete().is_err());
        assert!(mckay_quiver(&g).is_err());
    }

    #[test]
    fn d8_supplied_basis() {
        let m = fixture("d8").build().unwrap();
        let q = m.quiver().clone();
        assert_eq!((q.vertex_count(), q.arrow_count()), (5, 8));
        assert_eq!(m.tau(), &[1, 0, 3, 2, 4]);
        let n = m.conductor();
        assert_eq!(
            m.path_scalar_cp(&q.path(&["A", "d"]).unwrap()).unwrap(),
            CycNum::from_int(-2, n)
        );
        // tau(h) != t
        assert!(m
            .path_scalar_cp(&q.path(&["A", "a"]).unwrap())
            .unwrap()
            .is_zero());
        assert!(m.path_scalar_cp(&q.path(&["A"]).unwrap()).is_err());
        let (phi, tw) = m.potential(false).unwrap();
        let expect =
            TensorElement::parse(&q, 2, n, "-D.a + a.A - A.d + d.D + C.b - b.B + B.c - c.C")
                .unwrap();
        assert_eq!(phi.scale(&CycNum::from_frac(1, 2, n)), expect);
        assert!(!tw.is_identity());
        let rel = delta_image(&phi, 0).unwrap();
        assert_eq!(
            rel,
            span(
                &q,
                2,
                n,
                &["D.a", "C.b", "A.d", "B.c", "a.A + d.D - b.B - c.C"]
            )
        );
    }

    #[test]
    fn d8_duals_round_trip() {
        let m = fixture("d8").build().unwrap();
        let mut again = m.clone();
        again.recompute_duals().unwrap();
        let dv = m.group().degree();
        for (a, b) in m.arrows().iter().zip(again.arrows()) {
            assert_eq!(a.dual, b.dual, "{}", a.name);
        }
        for a in m.arrows() {
            for b in m.arrows() {
                if (a.tail, a.head) == (b.tail, b.head) {
                    let p = pairing(&a.primal, &b.dual, dv);
                    assert_eq!(p.is_one(), a.name == b.name);
                }
            }
        }
        // the dual of the arrow a: V0 -> V is e1(x)e2 + e2(x)e1
        let a = &m.arrows()[m.quiver().arrow_id("a").unwrap() as usize];
        assert_eq!(a.dual, Matrix::from_ints(&[&[0], &[1], &[1], &[0]], 4));
    }

    #[test]
    fn d8_default_basis_and_intertwiners() {
        let g = fixture("d8").group().unwrap();
        assert_eq!(intertwiner_space(&g, 0, 4).len(), 1);
        assert_eq!(intertwiner_space(&g, 4, 4).len(), 0);
        let m = mckay_quiver(&g).unwrap();
        assert_eq!(
            m.arrows()
                .iter()
                .map(|a| a.name.as_str())
                .collect::<Vec<_>>()[..2],
            ["a0_4", "a1_4"]
        );
        let (phi, tw) = m.potential(true).unwrap();
        assert_eq!(phi.len(), 8);
        let pres = m.presentation(&phi).unwrap();
        assert!(m.molien_mismatches(&pres, 4).unwrap().is_empty());
        assert_eq!(tw.vertex_perm(), &[1, 0, 3, 2, 4]);
    }

    #[test]
    fn d8_molien_invariants() {
        let g = fixture("d8").group().unwrap();
        let diag: Vec<usize> = (0..=4)
            .map(|d| molien_multiplicities(&g, d).unwrap()[0][0])
            .collect();
        assert_eq!(diag, [1, 0, 1, 0, 2]);
        let id = molien_multiplicities(&g, 0).unwrap();
        for (i, row) in id.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, usize::from(i == j));
            }
        }
    }

    #[test]
    fn trivial_group() {
        let g = group_closure(&[Matrix::identity(3, 1)], 1)
            .unwrap()
            .with_abelian_irreps()
            .unwrap();
        assert_eq!(intertwiner_space(&g, 0, 0).len(), 3);
        let m = mckay_quiver(&g).unwrap();
        assert_eq!(
            (m.quiver().vertex_count(), m.quiver().arrow_count()),
            (1, 3)
        );
        assert_eq!(m.tau(), &[0]);
        for d in 0..5 {
            let c = [1, 3, 6, 10, 15][d];
            assert_eq!(molien_multiplicities(&g, d).unwrap(), vec![vec![c]]);
        }
        let (phi, tw) = m.potential(true).unwrap();
        assert!(tw.is_identity());
        // the antisymmetrizer: all six permutations, with signs
        assert_eq!(phi.len(), 6);
        let q = m.quiver();
        let c = |w: &[&str]| phi.coeff_of(&q.path(w).unwrap());
        assert_eq!(
            c(&["a0_0_0", "a0_0_1", "a0_0_2"]),
            -c(&["a0_0_1", "a0_0_0", "a0_0_2"])
        );
        assert!(c(&["a0_0_0", "a0_0_0", "a0_0_1"]).is_zero());
    }

    #[test]
    fn abelian_arrows_follow_weights() {
        let g = fixture("septic_abelian").group().unwrap();
        assert_eq!(g.irreps().len(), 7);
        let m = mckay_quiver(&g).unwrap();
        // one arrow rho_i rho -> rho per weight of V
        for v in 0..7 {
            let into: usize = (0..7).map(|t| m.counts()[t][v]).sum();
            assert_eq!(into, 3);
        }
        let (phi, tw) = m.potential(true).unwrap();
        assert!(tw.is_identity());
        assert_eq!(phi.len(), 42);
        let pres = m.presentation(&phi).unwrap();
        assert!(m.molien_mismatches(&pres, 4).unwrap().is_empty());
    }

    #[test]
    fn septic_supplied_basis() {
        let m = fixture("septic").build().unwrap();
        let q = m.quiver().clone();
        let n = m.conductor();
        let (phi, tw) = m.potential(false).unwrap();
        assert!(tw.is_identity());
        let cyc = [
            "a.x.A - a.y.A + b.x.B - (z^7) b.y.B + c.x.C - (z^14) c.y.C - z.u.x + v.z.y",
            "x.A.a - y.A.a + x.B.b - (z^7) y.B.b + x.C.c - (z^14) y.C.c - u.x.z + z.y.v",
            "A.a.x - A.a.y + B.b.x - (z^7) B.b.y + C.c.x - (z^14) C.c.y - x.z.u + y.v.z",
        ];
        let mut expect = TensorElement::parse(&q, 3, n, "u.u.u - v.v.v").unwrap();
        for s in cyc {
            expect = expect
                .add(&TensorElement::parse(&q, 3, n, s).unwrap())
                .unwrap();
        }
        assert_eq!(phi, expect.scale(&CycNum::from_int(3, n)));
        let listed_rels = [
            "a.x - a.y",
            "b.x - (z^7) b.y",
            "c.x - (z^14) c.y",
            "x.A - y.A",
            "x.B - (z^7) y.B",
            "x.C - (z^14) y.C",
            "A.a + B.b + C.c - z.u",
            "A.a + (z^7) B.b + (z^14) C.c - v.z",
            "x.z - u.u",
            "z.y - v.v",
        ];
        let rel = delta_image(&phi, 1).unwrap();
        let listed = span(&q, 2, n, &listed_rels);
        assert_eq!(listed.dim(), 10);
        assert!(listed.is_subspace_of(&rel));
        assert_eq!(rel.dim(), 11);
        let mut all = listed_rels.to_vec();
        all.push("u.x - y.v");
        assert_eq!(rel, span(&q, 2, n, &all));
    }

    #[test]
    fn d52_mesh() {
        let m = fixture("d52").build().unwrap();
        assert_eq!(m.group().order(), 24);
        assert_eq!(m.quiver().vertex_count(), 15);
        let tau = m.tau();
        assert!((0..15).all(|v| tau[tau[tau[v]]] == v) && (0..15).any(|v| tau[v] != v));
        let (phi, _) = m.potential(true).unwrap();
        let rel = delta_image(&phi, 0).unwrap();
        assert_eq!(rel.dim(), 15);
        let mut sizes: Vec<usize> = rel.basis().iter().map(|v| v.len()).collect();
        sizes.sort();
        assert_eq!(sizes, [vec![1; 12], vec![4; 3]].concat());
    }

    #[test]
    fn d8_double_is_sl() {
        let g = fixture("d8_double").group().unwrap();
        assert!(g.det_character().iter().all(|d| d.is_one()));
        let m = mckay_quiver(&g).unwrap();
        assert!(m.tau().iter().enumerate().all(|(i, &t)| i == t));
        assert_eq!(m.quiver().arrow_count(), 16);
        let (phi, tw) = m.potential(true).unwrap();
        assert!(tw.is_identity());
        assert!(is_superpotential(&phi, &Twist::identity(m.quiver())));
    }

    #[test]
    fn tau_trivial_iff_sl() {
        for name in ["d8", "septic", "d52", "d8_double", "septic_abelian"] {
            let g = fixture(name).group().unwrap();
            let sl = g.det_character().iter().all(|d| d.is_one());
            let tau = det_permutation(&g).unwrap();
            assert_eq!(sl, tau.iter().enumerate().all(|(i, &t)| i == t), "{name}");
        }
    }

    #[test]
    fn supplied_bases_validated() {
        let mut inp = fixture("d8");
        inp.arrows.as_mut().unwrap()[0].images[0][0][0] = "2".into();
        assert!(matches!(inp.build(), Err(Error::Representation(_))));
        let mut inp = fixture("d8");
        inp.arrows.as_mut().unwrap().pop();
        assert!(inp.build().is_err());
        let mut inp = fixture("d8");
        inp.det_isos = Some(
            [(
                "V".to_string(),
                vec![
                    vec!["1".to_string(), "0".into()],
                    vec!["0".into(), "0".into()],
                ],
            )]
            .into(),
        );
        assert!(inp.build().is_err());
    }

    #[test]
    fn signed_permutations_small() {
        let p = signed_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|x| x.1).sum::<i32>(), 0);
        assert!(p.contains(&(5, 1)) && p.contains(&(7, -1)));
    }
}
