use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactfield::{CycNum, Matrix};

/// An irreducible representation, given on every group element.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
    /// `mats[g]` for every element index g.
    pub mats: Vec<Matrix>,
}

impl Irrep {
    pub fn character(&self) -> Vec<CycNum> {
        self.mats.iter().map(|m| m.trace()).collect()
    }
}

/// A finite matrix group acting on V, with its elements enumerated.
#[derive(Clone, Debug)]
pub struct GroupData {
    n: u32,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    table: Vec<Vec<usize>>,
    identity: usize,
    /// elements[g] = generators[word[g].0] * elements[word[g].1], except for the identity.
    word: Vec<(usize, usize)>,
    gen_index: Vec<usize>,
    inverse: Vec<usize>,
    pub(crate) irreps: Vec<Irrep>,
}

/// Enumerate the group generated by `generators`, failing once more than `cap` elements appear.
pub fn group_closure(generators: &[Matrix], cap: usize) -> Result<GroupData> {
    let dim = generators.first().map(|g| g.rows()).unwrap_or(0);
    if generators
        .iter()
        .any(|g| g.rows() != dim || g.cols() != dim)
    {
        return Err(Error::Dimension(
            "generators must be square of equal size".into(),
        ));
    }
    let n = generators
        .iter()
        .map(|g| g.conductor())
        .fold(1, num_integer::lcm);
    let generators: Vec<Matrix> = generators
        .iter()
        .map(|g| g.map(|x| x.embed(n).expect("lcm conductor")))
        .collect();
    let id = Matrix::identity(dim, n);
    let mut elements = vec![id.clone()];
    let mut index: HashMap<Matrix, usize> = HashMap::from([(id, 0)]);
    let mut word = vec![(usize::MAX, usize::MAX)];
    let mut frontier = 0;
    while frontier < elements.len() {
        for (k, g) in generators.iter().enumerate() {
            let prod = g.try_mul(&elements[frontier])?;
            if !index.contains_key(&prod) {
                if elements.len() == cap {
                    return Err(Error::Group(format!(
                        "more than {cap} elements; the group may be infinite"
                    )));
                }
                index.insert(prod.clone(), elements.len());
                elements.push(prod);
                word.push((k, frontier));
            }
        }
        frontier += 1;
    }
    let size = elements.len();
    let mut table = vec![vec![0; size]; size];
    for i in 0..size {
        for j in 0..size {
            let p = elements[i].try_mul(&elements[j])?;
            table[i][j] = *index
                .get(&p)
                .ok_or_else(|| Error::Group("product left the enumerated set".into()))?;
        }
    }
    let gen_index = generators.iter().map(|g| index[g]).collect();
    let inverse = (0..size)
        .map(|i| table[i].iter().position(|&k| k == 0).expect("finite group"))
        .collect();
    Ok(GroupData {
        n,
        generators,
        elements,
        table,
        identity: 0,
        word,
        gen_index,
        inverse,
        irreps: Vec::new(),
    })
}

impl GroupData {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// dim V.
    pub fn degree(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    /// Index of the k-th generator among the elements.
    pub fn generator_index(&self, k: usize) -> usize {
        self.gen_index[k]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[a][x];
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, m: usize) -> usize {
        (0..m).fold(self.identity, |acc, _| self.table[a][acc])
    }

    /// Character of V.
    pub fn character(&self) -> Vec<CycNum> {
        self.elements.iter().map(|m| m.trace()).collect()
    }

    /// det of the action on V, per element.
    pub fn det_character(&self) -> Vec<CycNum> {
        self.elements.iter().map(det).collect()
    }

    /// Attach irreps given by the images of the generators; they are extended
    /// to all elements and checked to be homomorphisms.
    pub fn with_irreps(mut self, irreps: Vec<(String, Vec<Matrix>)>) -> Result<Self> {
        let mut out = Vec::with_capacity(irreps.len());
        for (name, gens) in irreps {
            if gens.len() != self.generators.len() {
                return Err(Error::Representation(format!(
                    "irrep {name}: {} generator images for {} generators",
                    gens.len(),
                    self.generators.len()
                )));
            }
            let d = gens.first().map(|g| g.rows()).unwrap_or(0);
            if d == 0 || gens.iter().any(|g| g.rows() != d || g.cols() != d) {
                return Err(Error::Representation(format!(
                    "irrep {name}: images must be square of equal size"
                )));
            }
            let gens: Vec<Matrix> = gens
                .iter()
                .map(|g| g.map(|x| x.embed(self.n).unwrap_or_else(|_| x.clone())))
                .collect();
            if gens
                .iter()
                .flat_map(|g| {
                    (0..d).flat_map(move |i| (0..d).map(move |j| g.get(i, j).conductor()))
                })
                .any(|c| c != 1 && c != self.n)
            {
                return Err(Error::Conductor(format!(
                    "irrep {name} needs a larger field than Q(z{})",
                    self.n
                )));
            }
            let mut mats = vec![Matrix::identity(d, self.n); self.order()];
            for g in 1..self.order() {
                let (k, p) = self.word[g];
                mats[g] = gens[k].try_mul(&mats[p])?;
            }
            for (k, gm) in gens.iter().enumerate() {
                let gi = self.generator_index(k);
                for h in 0..self.order() {
                    if mats[self.table[gi][h]] != gm.try_mul(&mats[h])? {
                        return Err(Error::Representation(format!(
                            "irrep {name} is not a homomorphism"
                        )));
                    }
                }
            }
            out.push(Irrep { name, dim: d, mats });
        }
        self.irreps = out;
        Ok(self)
    }

    /// Characters of an abelian group, found by trying all assignments of
    /// roots of unity to the generators. The field is enlarged to contain the
    /// values when needed.
    pub fn with_abelian_irreps(self) -> Result<Self> {
        let size = self.order();
        for a in 0..size {
            for b in 0..a {
                if self.table[a][b] != self.table[b][a] {
                    return Err(Error::Group("group is not abelian".into()));
                }
            }
        }
        let orders: Vec<usize> = (0..self.generators.len())
            .map(|k| self.element_order(self.generator_index(k)))
            .collect();
        let exp = orders.iter().fold(1usize, |a, &b| num_integer::lcm(a, b)) as u32;
        let m = num_integer::lcm(self.n, exp);
        let g = if m == self.n {
            self
        } else {
            group_closure(
                &self
                    .generators
                    .iter()
                    .map(|x| x.map(|c| c.embed(m).unwrap()))
                    .collect::<Vec<_>>(),
                size,
            )?
        };
        let mut chars: Vec<Vec<CycNum>> = Vec::new();
        let mut irreps = Vec::new();
        let total: usize = orders.iter().product();
        for code in 0..total {
            let mut rest = code;
            let vals: Vec<CycNum> = orders
                .iter()
                .map(|&o| {
                    let k = rest % o;
                    rest /= o;
                    CycNum::root_of_unity(o as u32, k as i64, m).expect("root in field")
                })
                .collect();
            let gens: Vec<Matrix> = vals.iter().map(|v| Matrix::scalar(1, v)).collect();
            let Ok(h) = g.clone().with_irreps(vec![(String::new(), gens)]) else {
                continue;
            };
            let ch = h.irreps[0].character();
            if chars.contains(&ch) {
                continue;
            }
            chars.push(ch);
            let name = format!("chi{}", irreps.len());
            let mut ir = h.irreps.into_iter().next().unwrap();
            ir.name = name;
            irreps.push(ir);
        }
        let mut g = g;
        g.irreps = irreps;
        g.check_complete()?;
        Ok(g)
    }

    /// (1/|G|) sum_g a(g) conj(b(g)).
    pub fn inner_product(&self, a: &[CycNum], b: &[CycNum]) -> CycNum {
        let mut acc = CycNum::zero(self.n);
        for (x, y) in a.iter().zip(b) {
            acc = &acc + &(x * &y.conj());
        }
        acc.scale(&crate::exactfield::q(1, self.order() as i64))
    }

    /// Multiplicity <a, b> as a non-negative integer.
    pub fn multiplicity(&self, a: &[CycNum], b: &[CycNum]) -> Result<usize> {
        let ip = self.inner_product(a, b);
        match ip.as_rational() {
            Some(q) if q.is_integer() && !num_traits::Signed::is_negative(q) => {
                Ok(num_traits::ToPrimitive::to_usize(&q.to_integer()).unwrap())
            }
            _ => Err(Error::Representation(format!(
                "character inner product {ip} is not a non-negative integer"
            ))),
        }
    }

    /// Irreps are pairwise distinct, irreducible, and exhaust the group.
    pub fn check_complete(&self) -> Result<()> {
        let chars: Vec<Vec<CycNum>> = self.irreps.iter().map(|r| r.character()).collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let m = self.multiplicity(a, b)?;
                if m != usize::from(i == j) {
                    return Err(Error::Representation(format!(
                        "irreps {} and {} fail orthonormality",
                        self.irreps[i].name, self.irreps[j].name
                    )));
                }
            }
        }
        let total: usize = self.irreps.iter().map(|r| r.dim * r.dim).sum();
        if total != self.order() {
            return Err(Error::Representation(format!(
                "sum of squared dimensions is {total}, group order {}",
                self.order()
            )));
        }
        Ok(())
    }
}

/// Determinant by cofactor-free elimination.
pub fn det(m: &Matrix) -> CycNum {
    let k = m.rows();
    let n = m.conductor();
    let mut a: Vec<Vec<CycNum>> = (0..k).map(|i| m.row(i).to_vec()).collect();
    let mut acc = CycNum::one(n);
    for col in 0..k {
        let Some(p) = (col..k).find(|&i| !a[i][col].is_zero()) else {
            return CycNum::zero(n);
        };
        if p != col {
            a.swap(p, col);
            acc = -acc;
        }
        let inv = a[col][col].inv().expect("nonzero pivot");
        acc = &acc * &a[col][col];
        for i in col + 1..k {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            for j in col..k {
                let v = &a[i][j] - &(&f * &a[col][j]);
                a[i][j] = v;
            }
        }
    }
    acc
}
