//! Reduced linking-number skein modules.
//!
//! The handlebody module is ℂ[Z_N^g] with basis a^μ (shared with [`ThetaVector`]);
//! the cylinder algebra has basis a^p b^q and acts through
//! a^p b^q ↦ exp(πi p·q/N) O_pq.  In this basis the product is
//! a^p b^q · a^{p'} b^{q'} = t^{−2 p'·q} a^{p+p'} b^{q+q'}.

use crate::error::{Error, Result};
use crate::heisenberg::{self, o_pq, MonomialOperator, ThetaVector};
use crate::link::AbelianLinkData;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

pub type HandlebodySkein = ThetaVector;

type Monomial = (Vec<i64>, Vec<i64>);

/// An element of the reduced skein algebra of Σ_g × [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct CylSkein {
    genus: usize,
    level: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl CylSkein {
    pub fn zero(genus: usize, level: u32) -> Self {
        CylSkein { genus, level, terms: BTreeMap::new() }
    }

    /// The empty skein, the unit of the algebra.
    pub fn unit(genus: usize, level: u32) -> Self {
        Self::monomial(&vec![0; genus], &vec![0; genus], level).expect("valid")
    }

    pub fn monomial(p: &[i64], q: &[i64], level: u32) -> Result<Self> {
        Self::term(p, q, Scalar::one_at(level), level)
    }

    pub fn term(p: &[i64], q: &[i64], coeff: Scalar, level: u32) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::Shape("p and q must have equal length".into()));
        }
        let mut s = Self::zero(p.len(), level);
        s.add_term(p, q, coeff)?;
        Ok(s)
    }

    fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().map(|x| x.rem_euclid(self.level as i64)).collect()
    }

    fn add_term(&mut self, p: &[i64], q: &[i64], coeff: Scalar) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        let key = (self.reduce(p), self.reduce(q));
        let new = match self.terms.get(&key) {
            Some(c) => c.try_add(&coeff)?,
            None => coeff,
        };
        if new.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, new);
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn level(&self) -> u32 {
        self.level
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }
    pub fn coefficient(&self, p: &[i64], q: &[i64]) -> Scalar {
        self.terms.get(&(self.reduce(p), self.reduce(q))).cloned().unwrap_or_else(|| Scalar::zero_at(self.level))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::Shape("genus mismatch".into()));
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((p, q), c) in &other.terms {
            out.add_term(p, q, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        let mut out = Self::zero(self.genus, self.level);
        for ((p, q), c) in &self.terms {
            out.add_term(p, q, c.try_mul(s)?)?;
        }
        Ok(out)
    }

    /// Stacking product: `self` on top of `other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.genus, self.level);
        for ((p, q), c) in &self.terms {
            for ((p2, q2), c2) in &other.terms {
                let e: i64 = p2.iter().zip(q).map(|(a, b)| a * b).sum();
                let coeff = c.try_mul(c2)?.try_mul(&Scalar::t_pow(self.level, -2 * e))?;
                let pp: Vec<i64> = p.iter().zip(p2).map(|(a, b)| a + b).collect();
                let qq: Vec<i64> = q.iter().zip(q2).map(|(a, b)| a + b).collect();
                out.add_term(&pp, &qq, coeff)?;
            }
        }
        Ok(out)
    }

    /// The operator exp(πi p·q/N) O_pq of a single monomial.
    pub fn monomial_operator(p: &[i64], q: &[i64], level: u32) -> Result<MonomialOperator> {
        let pq: i64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
        Ok(o_pq(p, q, level)?.twist_phase(4 * pq))
    }

    /// Image in End(ℂ[Z_N^g]).
    pub fn to_operator(&self) -> Result<Matrix<Scalar>> {
        let d = heisenberg::dimension(self.genus, self.level)?;
        let mut m = Matrix::from_fn(d, d, |_, _| Scalar::zero_at(self.level));
        for ((p, q), c) in &self.terms {
            let op = Self::monomial_operator(p, q, self.level)?;
            for mu in 0..d {
                let r = op.target()[mu];
                m[(r, mu)] = m[(r, mu)].try_add(&c.try_mul(&Scalar::zeta(self.level, op.phases()[mu]))?)?;
            }
        }
        Ok(m)
    }

    /// Inverse of [`CylSkein::to_operator`], using tr(M_pq† M_p'q') = N^g δ.
    pub fn from_operator(genus: usize, level: u32, m: &Matrix<Scalar>) -> Result<Self> {
        let d = heisenberg::dimension(genus, level)?;
        if m.rows() != d || m.cols() != d {
            return Err(Error::Shape("operator does not act on ℂ[Z_N^g]".into()));
        }
        let inv_dim = Scalar::level_pow_half(level, -2 * genus as i64);
        let mut out = Self::zero(genus, level);
        for pi in 0..d {
            let p = heisenberg::multi_index(pi, genus, level);
            for qi in 0..d {
                let q = heisenberg::multi_index(qi, genus, level);
                let op = Self::monomial_operator(&p, &q, level)?;
                let mut tr = Scalar::zero_at(level);
                for mu in 0..d {
                    let e = &m[(op.target()[mu], mu)];
                    if !e.is_zero() {
                        tr = tr.try_add(&e.try_mul(&Scalar::zeta(level, -op.phases()[mu]))?)?;
                    }
                }
                out.add_term(&p, &q, tr.try_mul(&inv_dim)?)?;
            }
        }
        Ok(out)
    }

    /// Module action on the handlebody skein module.
    pub fn act(&self, v: &HandlebodySkein) -> Result<HandlebodySkein> {
        if v.genus() != self.genus || v.level() != self.level {
            return Err(Error::Shape("skein and vector do not match".into()));
        }
        let mut out = ThetaVector::zero(self.genus, self.level)?;
        for ((p, q), c) in &self.terms {
            out = out.add(&Self::monomial_operator(p, q, self.level)?.apply(v)?.scale(c)?)?;
        }
        Ok(out)
    }
}

/// The bilinear pairing ⟨a^μ, a^ν⟩ = N^{g/2} δ_{μν}.
pub fn pairing(x: &HandlebodySkein, y: &HandlebodySkein) -> Result<Scalar> {
    if x.genus() != y.genus() || x.level() != y.level() {
        return Err(Error::Shape("pairing of different spaces".into()));
    }
    let mut acc = Scalar::zero_at(x.level());
    for (a, b) in x.coeffs().iter().zip(y.coeffs()) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc.try_add(&a.try_mul(b)?)?;
        }
    }
    acc.try_mul(&Scalar::level_pow_half(x.level(), x.genus() as i64))
}

/// Evaluation of a framed link in S³: t^{xᵀBx}.
pub fn evaluate_s3(cfg: &AbelianLinkData, multiplicities: &[i64], level: u32) -> Result<Scalar> {
    if cfg.has_cores() {
        return Err(Error::Invalid("evaluate_s3 needs a link without ribbon-graph cores".into()));
    }
    if multiplicities.len() != cfg.len() {
        return Err(Error::Shape("one multiplicity per component".into()));
    }
    let b = cfg.linking();
    let mut e = 0i64;
    for i in 0..cfg.len() {
        for j in 0..cfg.len() {
            e += b[(i, j)] * multiplicities[i] * multiplicities[j];
        }
    }
    Ok(Scalar::t_pow(level, e.rem_euclid(2 * level as i64)))
}

/// A link whose surgery components carry the Ω skein N^{-1/2} Σ_j (j parallels).
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaSkein {
    link: AbelianLinkData,
}

/// Decorate the surgery components of `cfg` with Ω; `targets` must be exactly those.
pub fn omega_decorate(cfg: &AbelianLinkData, targets: &[usize]) -> Result<OmegaSkein> {
    let mut t = targets.to_vec();
    t.sort_unstable();
    t.dedup();
    if t != cfg.surgery() {
        return Err(Error::Invalid("Ω decorates exactly the surgery components".into()));
    }
    Ok(OmegaSkein { link: cfg.clone() })
}

impl OmegaSkein {
    pub fn link(&self) -> &AbelianLinkData {
        &self.link
    }

    /// N^{-m/2} Σ_{j ∈ Z_N^m} t^{xᵀBx}, the other components at the given multiplicities.
    pub fn evaluate(&self, level: u32, fixed: &[i64]) -> Result<Scalar> {
        let m = self.link.surgery().len() as i64;
        self.link.surgery_sum(level, fixed)?.to_scalar().try_mul(&Scalar::level_pow_half(level, -m))
    }
}
