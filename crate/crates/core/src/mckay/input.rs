use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{group_closure, mckay_quiver, GroupData, McKayData};
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, Matrix};

/// Group description as read from JSON. Numbers are strings in Q(z_N).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupInput {
    #[serde(default)]
    pub name: String,
    pub conductor: u32,
    pub generators: Vec<Vec<Vec<String>>>,
    /// Without irreps the group must be abelian and characters are enumerated.
    #[serde(default)]
    pub irreps: Option<Vec<IrrepInput>>,
    /// Dual intertwiners psi_{a*} for every arrow, replacing the default basis.
    #[serde(default)]
    pub arrows: Option<Vec<ArrowInput>>,
    /// u_h: S_{tau h} -> S_h (x) det, keyed by vertex name.
    #[serde(default)]
    pub det_isos: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default)]
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepInput {
    pub name: String,
    pub generators: Vec<Vec<Vec<String>>>,
}

/// psi_{a*}: S_tail -> S_head (x) V. `images[k]` is the image of the k-th basis
/// vector of S_tail as a dim S_head x dim V array of coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowInput {
    pub name: String,
    pub tail: String,
    pub head: String,
    pub images: Vec<Vec<Vec<String>>>,
}

const DEFAULT_CAP: usize = 100_000;

impl GroupInput {
    pub fn group(&self) -> Result<GroupData> {
        let n = self.conductor;
        let gens = self
            .generators
            .iter()
            .map(|m| Matrix::parse(m, n))
            .collect::<Result<Vec<_>>>()?;
        let g = group_closure(&gens, self.cap.unwrap_or(DEFAULT_CAP))?;
        match &self.irreps {
            Some(list) => {
                let irreps = list
                    .iter()
                    .map(|r| {
                        Ok((
                            r.name.clone(),
                            r.generators
                                .iter()
                                .map(|m| Matrix::parse(m, n))
                                .collect::<Result<Vec<_>>>()?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                g.with_irreps(irreps)
            }
            None => g.with_abelian_irreps(),
        }
    }

    /// The McKay data with any supplied det isomorphisms and arrow bases applied.
    pub fn build(&self) -> Result<McKayData> {
        let g = self.group()?;
        let n = g.conductor();
        let mut m = mckay_quiver(&g)?;
        let vid = |name: &str| {
            g.irreps()
                .iter()
                .position(|r| r.name == name)
                .ok_or_else(|| Error::Representation(format!("unknown vertex {name}")))
        };
        if let Some(isos) = &self.det_isos {
            let list = isos
                .iter()
                .map(|(v, rows)| Ok((vid(v)?, Matrix::parse(rows, n)?)))
                .collect::<Result<Vec<_>>>()?;
            m = m.with_det_isos(list)?;
        }
        if let Some(arrows) = &self.arrows {
            let dv = g.degree();
            let mut list = Vec::new();
            for a in arrows {
                let (t, h) = (vid(&a.tail)?, vid(&a.head)?);
                let dh = g.irreps()[h].dim;
                if a.images.len() != g.irreps()[t].dim
                    || a.images
                        .iter()
                        .any(|im| im.len() != dh || im.iter().any(|r| r.len() != dv))
                {
                    return Err(Error::Dimension(format!(
                        "arrow {}: images must be {} arrays of {dh}x{dv}",
                        a.name,
                        g.irreps()[t].dim
                    )));
                }
                let mut mat = Matrix::zeros(dh * dv, a.images.len(), n);
                for (st, im) in a.images.iter().enumerate() {
                    for (sh, row) in im.iter().enumerate() {
                        for (v, s) in row.iter().enumerate() {
                            mat.set(sh * dv + v, st, CycNum::parse(s, n)?.embed(n)?);
                        }
                    }
                }
                list.push((a.name.clone(), t, h, mat));
            }
            m = m.with_dual_bases(list)?;
        }
        Ok(m)
    }
}
