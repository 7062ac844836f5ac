//! Line bundles on a model act on the restricted lattice by
//! `v ↦ v + (Σ d_i c_i(v)) δ_𝔍`, where `c_i(v)` is the β_i-coefficient of v
//! in the basis {δ_𝔍, β_i} and β_i are the wall roots of the model chamber.

use crate::arrangement::{Arrangement, Chamber, Sector};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::rootlat::{self, Functional, RootVector};

/// Degrees of a line bundle on the model `ν X` along its curves, in ascending
/// order of curve label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeTuple {
    pub model: Vec<usize>,
    pub degrees: Vec<i64>,
}

impl DegreeTuple {
    pub fn new(model: Vec<usize>, degrees: Vec<i64>) -> Self {
        DegreeTuple { model, degrees }
    }

    pub fn is_nef(&self) -> bool {
        self.degrees.iter().all(|&d| d >= 0)
    }

    pub fn add(&self, other: &DegreeTuple) -> Result<DegreeTuple> {
        if self.model != other.model || self.degrees.len() != other.degrees.len() {
            return Err(Error::LatticeMismatch);
        }
        let degrees = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(DegreeTuple { model: self.model.clone(), degrees })
    }

    pub fn scaled(&self, k: i64) -> Result<DegreeTuple> {
        let degrees = self.degrees.iter().map(|d| d.checked_mul(k).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(DegreeTuple { model: self.model.clone(), degrees })
    }
}

/// The Picard action of one model, with the coordinate change to {δ_𝔍, β_i}.
#[derive(Clone, Debug)]
pub struct PicAction {
    pub model: Vec<usize>,
    pub chamber: Chamber,
    pub curves: Vec<usize>,
    pub beta: Vec<RootVector>,
    /// Rows give the coefficients of δ_𝔍, β_1, …, β_k.
    coeffs: IntMatrix,
}

impl PicAction {
    pub fn new(arr: &Arrangement, model: &[usize]) -> Result<Self> {
        let c0 = arr.principal_chamber(Sector::Zero);
        let chamber = arr.walk(&c0, model)?;
        let curves = chamber.labels().to_vec();
        let beta: Vec<RootVector> =
            chamber.walls().iter().map(|w| RootVector::new(arr.lattice(), w.root.clone())).collect();
        let n = arr.dim();
        let mut basis = IntMatrix::zeros(n, n);
        for (k, &x) in arr.delta_coords().iter().enumerate() {
            basis.set(k, 0, x);
        }
        for (c, b) in beta.iter().enumerate() {
            for (k, &x) in b.coords.iter().enumerate() {
                basis.set(k, c + 1, x);
            }
        }
        let coeffs = linalg::unimodular_inverse(&basis)?;
        Ok(PicAction { model: model.to_vec(), chamber, curves, beta, coeffs })
    }

    fn check(&self, d: &DegreeTuple) -> Result<()> {
        if d.model != self.model || d.degrees.len() != self.curves.len() {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    /// Coordinates of v in the basis {δ_𝔍, β_i}.
    pub fn coordinates(&self, v: &RootVector) -> Result<Vec<i64>> {
        self.coeffs.mul_vec(&v.coords)
    }

    /// The functional θ_d with θ_d(β_i) = d_i and θ_d(δ_𝔍) = 0.
    pub fn degree_functional(&self, d: &DegreeTuple) -> Result<Vec<i64>> {
        self.check(d)?;
        let mut f = vec![0i64; self.coeffs.cols];
        for (i, &di) in d.degrees.iter().enumerate() {
            for (x, &c) in f.iter_mut().zip(self.coeffs.row(i + 1)) {
                *x = x.checked_add(di.checked_mul(c).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
        }
        Ok(f)
    }

    pub fn act(&self, arr: &Arrangement, d: &DegreeTuple, v: &RootVector) -> Result<RootVector> {
        if v.lattice != arr.lattice() {
            return Err(Error::LatticeMismatch);
        }
        let f = self.degree_functional(d)?;
        let k = linalg::dot(&f, &v.coords)?;
        let shift = linalg::scale(arr.delta_coords(), k)?;
        Ok(RootVector::new(v.lattice, linalg::add(&v.coords, &shift)?))
    }

    /// The image of σ under the transposed action, located in the arrangement.
    pub fn translate(&self, arr: &Arrangement, d: &DegreeTuple, sigma: &Chamber) -> Result<Chamber> {
        let f = self.degree_functional(d)?;
        let p = sigma.interior_point();
        let dp = arr.delta_of(&p)?;
        let q = linalg::add(&p, &linalg::scale(&f, dp)?)?;
        let cone = arr.locate_int(&q)?;
        if !cone.is_chamber() {
            return Err(Error::Internal("translated interior point lies on a wall".into()));
        }
        if sigma.sector() == Sector::Zero {
            // the action is trivial on δ_𝔍 = 0; roots only move by multiples of δ_𝔍
            if cone.chamber != *sigma {
                return Err(Error::Internal("sector-0 chamber moved under translation".into()));
            }
            return Ok(cone.chamber);
        }
        let neg = d.scaled(-1)?;
        let mut walls = Vec::with_capacity(sigma.walls().len());
        for w in sigma.walls() {
            walls.push(self.act(arr, &neg, &RootVector::new(arr.lattice(), w.root.clone()))?.coords);
        }
        walls.sort();
        if walls != cone.chamber.key() {
            return Err(Error::Internal("translated walls do not match a chamber".into()));
        }
        Ok(cone.chamber)
    }

    /// δ* with δ*(δ_𝔍) = 1 and δ*(β_i) = 0.
    pub fn delta_star(&self, arr: &Arrangement) -> Result<Functional> {
        rootlat::delta_star(arr.data(), &self.beta)
    }

    /// δ* in integer coordinates: the δ_𝔍-coefficient row of the basis change.
    pub fn delta_star_coords(&self) -> Vec<i64> {
        self.coeffs.row(0).to_vec()
    }
}

impl Arrangement {
    pub fn pic_action(&self, model: &[usize]) -> Result<PicAction> {
        PicAction::new(self, model)
    }

    pub fn pic_action_on_class(&self, d: &DegreeTuple, v: &RootVector) -> Result<RootVector> {
        self.pic_action(&d.model)?.act(self, d, v)
    }

    pub fn pic_translate_chamber(&self, d: &DegreeTuple, sigma: &Chamber) -> Result<Chamber> {
        self.pic_action(&d.model)?.translate(self, d, sigma)
    }
}
