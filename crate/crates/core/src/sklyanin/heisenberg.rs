use crate::error::{Error, Result};
use crate::exactfield::{CycNum, Matrix};

use super::SklyaninParams;

/// Four nonzero theta values.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaTuple(pub [CycNum; 4]);

impl ThetaTuple {
    pub fn new(t: [CycNum; 4]) -> Result<Self> {
        if t.iter().any(|x| x.is_zero()) {
            return Err(Error::Degenerate("theta values must be nonzero".into()));
        }
        let n = t.iter().map(|x| x.conductor()).max().unwrap();
        let t = t
            .map(|x| x.embed(n))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(ThetaTuple([
            t[0].clone(),
            t[1].clone(),
            t[2].clone(),
            t[3].clone(),
        ]))
    }

    pub fn conductor(&self) -> u32 {
        self.0[0].conductor()
    }

    /// alpha = (t0 t1 / t2 t3)^2, beta = -(t0 t2 / t1 t3)^2, gamma = -(t0 t3 / t1 t2)^2.
    pub fn params(&self) -> Result<SklyaninParams> {
        let [t0, t1, t2, t3] = &self.0;
        let a = (&(t0 * t1) / &(t2 * t3)).pow(2);
        let b = -(&(t0 * t2) / &(t1 * t3)).pow(2);
        let c = -(&(t0 * t3) / &(t1 * t2)).pow(2);
        SklyaninParams::new(a, b, c)
    }
}

/// Unnormalized generators, with Y(3,1) = t1/t2.
pub fn heisenberg_generators_literal(t: &ThetaTuple) -> Result<(Matrix, Matrix)> {
    let n = t.conductor();
    if n % 4 != 0 {
        return Err(Error::Conductor(format!("i is not in Q(z{n})")));
    }
    let i = CycNum::root_of_unity(4, 1, n)?;
    let [t0, t1, t2, t3] = &t.0;
    let mut x = Matrix::zeros(4, 4, n);
    x.set(0, 3, &i * &(t3 / t0));
    x.set(1, 2, -(&i * &(t2 / t1)));
    x.set(2, 1, &i * &(t1 / t2));
    x.set(3, 0, &i * &(t0 / t3));
    let mut y = Matrix::zeros(4, 4, n);
    y.set(0, 2, -(&i * &(t2 / t0)));
    y.set(1, 3, -(t3 / t1));
    y.set(2, 0, &i * &(t0 / t2));
    y.set(3, 1, t1 / t2);
    Ok((x, y))
}

/// Heisenberg generators with Y(3,1) = t1/t3, scaled by z8 so that
/// X^4 = Y^4 = -1 and [X, Y] = i. Needs 8 | conductor.
pub fn heisenberg_generators(t: &ThetaTuple) -> Result<(Matrix, Matrix)> {
    let n = t.conductor();
    if n % 8 != 0 {
        return Err(Error::Conductor(format!("z8 is not in Q(z{n})")));
    }
    let (x, mut y) = heisenberg_generators_literal(t)?;
    y.set(3, 1, &t.0[1] / &t.0[3]);
    let z8 = CycNum::root_of_unity(8, 1, n)?;
    Ok((x.scale(&z8), y.scale(&z8)))
}
