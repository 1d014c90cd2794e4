//! The finite Heisenberg group H(Z_N^g) and its Schrödinger representation on ℂ[Z_N^g].

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use serde_json::{Map, Value};

/// Lexicographic position of μ ∈ Z_N^g (μ_1 most significant).
pub fn index_of(mu: &[i64], level: u32) -> usize {
    let n = level as i64;
    mu.iter().fold(0usize, |acc, &m| acc * level as usize + m.rem_euclid(n) as usize)
}

/// Inverse of [`index_of`].
pub fn multi_index(mut idx: usize, genus: usize, level: u32) -> Vec<i64> {
    let n = level as usize;
    let mut mu = vec![0i64; genus];
    for k in (0..genus).rev() {
        mu[k] = (idx % n) as i64;
        idx /= n;
    }
    mu
}

pub fn dimension(genus: usize, level: u32) -> Result<usize> {
    (level as usize)
        .checked_pow(genus as u32)
        .filter(|&d| d <= 1 << 16)
        .ok_or_else(|| Error::Guard(format!("dimension {level}^{genus} too large")))
}

/// Element (p, q, k) of the Heisenberg group; multiplication
/// (p,q,k)(p',q',k') = (p+p', q+q', k+k'+p·q' − p'·q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeisElement {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub k: i64,
}

impl HeisElement {
    pub fn new(p: Vec<i64>, q: Vec<i64>, k: i64) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::Shape("p and q must have equal length".into()));
        }
        Ok(HeisElement { p, q, k })
    }

    pub fn identity(genus: usize) -> Self {
        HeisElement { p: vec![0; genus], q: vec![0; genus], k: 0 }
    }

    pub fn central(genus: usize, k: i64) -> Self {
        HeisElement { p: vec![0; genus], q: vec![0; genus], k }
    }

    pub fn genus(&self) -> usize {
        self.p.len()
    }

    /// Product in the infinite group.
    pub fn mul_raw(&self, other: &Self) -> Result<Self> {
        if self.genus() != other.genus() {
            return Err(Error::Shape("genus mismatch".into()));
        }
        let cross: i64 = (0..self.genus()).map(|j| self.p[j] * other.q[j] - other.p[j] * self.q[j]).sum();
        Ok(HeisElement {
            p: self.p.iter().zip(&other.p).map(|(a, b)| a + b).collect(),
            q: self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect(),
            k: self.k + other.k + cross,
        })
    }

    pub fn inverse(&self) -> Self {
        HeisElement { p: self.p.iter().map(|x| -x).collect(), q: self.q.iter().map(|x| -x).collect(), k: -self.k }
    }

    /// Representative in the quotient by the normal subgroup {(Np, Nq, 2Nk)}:
    /// p, q reduced to [0, N) and k to [0, 2N).
    ///
    /// Writing p = p₀ + N p₁, q = q₀ + N q₁ gives
    /// (p, q, k) = (p₀, q₀, k − N(p₀·q₁ − p₁·q₀)) · (Np₁, Nq₁, 2N·…).
    pub fn normalize(&self, level: u32) -> Self {
        let n = level as i64;
        let (p0, p1): (Vec<i64>, Vec<i64>) = self.p.iter().map(|&x| (x.rem_euclid(n), x.div_euclid(n))).unzip();
        let (q0, q1): (Vec<i64>, Vec<i64>) = self.q.iter().map(|&x| (x.rem_euclid(n), x.div_euclid(n))).unzip();
        let corr: i64 = (0..self.genus()).map(|j| p0[j] * q1[j] - p1[j] * q0[j]).sum();
        HeisElement { p: p0, q: q0, k: (self.k - n * corr).rem_euclid(2 * n) }
    }

    /// Product in the finite quotient, normalized.
    pub fn mul(&self, other: &Self, level: u32) -> Result<Self> {
        Ok(self.mul_raw(other)?.normalize(level))
    }
}

/// Generalized permutation operator: e_μ ↦ ζ^{phase[μ]} e_{target[μ]}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOperator {
    level: u32,
    target: Vec<usize>,
    phase: Vec<i64>,
}

impl MonomialOperator {
    pub fn identity(genus: usize, level: u32) -> Result<Self> {
        let d = dimension(genus, level)?;
        Ok(MonomialOperator { level, target: (0..d).collect(), phase: vec![0; d] })
    }

    pub fn level(&self) -> u32 {
        self.level
    }
    pub fn dim(&self) -> usize {
        self.target.len()
    }
    pub fn target(&self) -> &[usize] {
        &self.target
    }
    /// ζ-exponents of the nonzero entries, column by column.
    pub fn phases(&self) -> &[i64] {
        &self.phase
    }

    fn order(&self) -> i64 {
        8 * self.level as i64
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() || self.level != other.level {
            return Err(Error::Shape("operators act on different spaces".into()));
        }
        let target = other.target.iter().map(|&t| self.target[t]).collect();
        let phase = other.target.iter().zip(&other.phase).map(|(&t, &ph)| (ph + self.phase[t]).rem_euclid(self.order())).collect();
        Ok(MonomialOperator { level: self.level, target, phase })
    }

    /// Multiply by ζ^k.
    pub fn twist_phase(&self, k: i64) -> Self {
        let o = self.order();
        MonomialOperator { level: self.level, target: self.target.clone(), phase: self.phase.iter().map(|p| (p + k).rem_euclid(o)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let mut target = vec![0; d];
        let mut phase = vec![0; d];
        for mu in 0..d {
            target[self.target[mu]] = mu;
            phase[self.target[mu]] = (-self.phase[mu]).rem_euclid(self.order());
        }
        MonomialOperator { level: self.level, target, phase }
    }

    pub fn is_identity(&self) -> bool {
        self.target.iter().enumerate().all(|(i, &t)| i == t) && self.phase.iter().all(|&p| p == 0)
    }

    pub fn to_dense(&self) -> Matrix<Scalar> {
        let d = self.dim();
        let mut m = Matrix::from_fn(d, d, |_, _| Scalar::zero_at(self.level));
        for mu in 0..d {
            m[(self.target[mu], mu)] = Scalar::zeta(self.level, self.phase[mu]);
        }
        m
    }

    /// self ∘ m for a dense operator m.
    pub fn left_mul(&self, m: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
        if m.rows() != self.dim() {
            return Err(Error::Shape("dimension mismatch".into()));
        }
        let zetas: Vec<Scalar> = self.phase.iter().map(|&p| Scalar::zeta(self.level, p)).collect();
        let mut src = vec![0; self.dim()];
        for (mu, &t) in self.target.iter().enumerate() {
            src[t] = mu;
        }
        Ok(Matrix::par_from_fn(m.rows(), m.cols(), |r, c| &zetas[src[r]] * &m[(src[r], c)]))
    }

    /// m ∘ self for a dense operator m.
    pub fn right_mul(&self, m: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
        if m.cols() != self.dim() {
            return Err(Error::Shape("dimension mismatch".into()));
        }
        let zetas: Vec<Scalar> = self.phase.iter().map(|&p| Scalar::zeta(self.level, p)).collect();
        Ok(Matrix::par_from_fn(m.rows(), m.cols(), |r, c| &m[(r, self.target[c])] * &zetas[c]))
    }

    pub fn apply(&self, v: &ThetaVector) -> Result<ThetaVector> {
        if v.dim() != self.dim() || v.level() != self.level {
            return Err(Error::Shape("vector does not match operator".into()));
        }
        let mut out = ThetaVector::zero(v.genus(), self.level)?;
        for mu in 0..self.dim() {
            if !v.coeffs[mu].is_zero() {
                out.coeffs[self.target[mu]] = &v.coeffs[mu] * &Scalar::zeta(self.level, self.phase[mu]);
            }
        }
        Ok(out)
    }
}

/// O_pq: θ_μ ↦ exp(−πi p·q/N − 2πi μ·q/N) θ_{μ+p}, for arbitrary integer p, q.
pub fn o_pq(p: &[i64], q: &[i64], level: u32) -> Result<MonomialOperator> {
    if p.len() != q.len() {
        return Err(Error::Shape("p and q must have equal length".into()));
    }
    let g = p.len();
    let d = dimension(g, level)?;
    let o = 8 * level as i64;
    let pq: i64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
    let mut target = Vec::with_capacity(d);
    let mut phase = Vec::with_capacity(d);
    for idx in 0..d {
        let mu = multi_index(idx, g, level);
        let shifted: Vec<i64> = mu.iter().zip(p).map(|(m, a)| m + a).collect();
        target.push(index_of(&shifted, level));
        let muq: i64 = mu.iter().zip(q).map(|(m, b)| m * b).sum();
        // exp(πi/N) = ζ⁴
        phase.push((-4 * pq - 8 * muq).rem_euclid(o));
    }
    Ok(MonomialOperator { level, target, phase })
}

/// The Schrödinger representation (p,q,k) ↦ exp(kπi/N)·O_pq.
pub fn schrodinger(x: &HeisElement, level: u32) -> Result<MonomialOperator> {
    Ok(o_pq(&x.p, &x.q, level)?.twist_phase(4 * x.k))
}

/// Dimension of the commutant of {O_pq}, i.e. 1 iff the representation is irreducible.
///
/// Commuting with a generalized permutation gives two-term relations
/// X_u = ζ^e X_v between matrix entries; these are solved with a union-find
/// that tracks phases, and a class whose phases are inconsistent is forced to zero.
pub fn commutant_dimension(genus: usize, level: u32) -> Result<usize> {
    let d = dimension(genus, level)?;
    if d * d > 10_000 {
        return Err(Error::Guard(format!("N^(2g) = {} exceeds 10^4", d * d)));
    }
    let order = 8 * level as i64;
    let mut uf = PhaseUnionFind::new(d * d, order);
    let mut gens = Vec::new();
    for i in 0..genus {
        let mut e = vec![0i64; genus];
        e[i] = 1;
        let z = vec![0i64; genus];
        gens.push(o_pq(&e, &z, level)?);
        gens.push(o_pq(&z, &e, level)?);
    }
    for o in &gens {
        let mut inv = vec![0usize; d];
        for (mu, &t) in o.target.iter().enumerate() {
            inv[t] = mu;
        }
        // (OX)_{r,c} = ω_{σ⁻¹r} X_{σ⁻¹r, c} and (XO)_{r,c} = ω_c X_{r, σc}
        for r in 0..d {
            for c in 0..d {
                let u = inv[r] * d + c;
                let v = r * d + o.target[c];
                uf.relate(u, v, o.phase[c] - o.phase[inv[r]]);
            }
        }
    }
    Ok(uf.free_classes())
}

struct PhaseUnionFind {
    parent: Vec<usize>,
    /// X_i = ζ^{offset[i]} X_{parent[i]}
    offset: Vec<i64>,
    dead: Vec<bool>,
    order: i64,
}

impl PhaseUnionFind {
    fn new(n: usize, order: i64) -> Self {
        PhaseUnionFind { parent: (0..n).collect(), offset: vec![0; n], dead: vec![false; n], order }
    }

    fn find(&mut self, i: usize) -> (usize, i64) {
        if self.parent[i] == i {
            return (i, 0);
        }
        let (root, off) = self.find(self.parent[i]);
        self.offset[i] = (self.offset[i] + off).rem_euclid(self.order);
        self.parent[i] = root;
        (root, self.offset[i])
    }

    /// Impose X_u = ζ^e X_v.
    fn relate(&mut self, u: usize, v: usize, e: i64) {
        let (ru, a) = self.find(u);
        let (rv, b) = self.find(v);
        if ru == rv {
            if (a - e - b).rem_euclid(self.order) != 0 {
                self.dead[ru] = true;
            }
            return;
        }
        self.parent[ru] = rv;
        self.offset[ru] = (e + b - a).rem_euclid(self.order);
        self.dead[rv] |= self.dead[ru];
    }

    fn free_classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.parent[i] == i && !self.dead[i]).count()
    }
}

/// A vector in ℂ[Z_N^g] = span{θ_μ} ≅ span{a^μ}.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaVector {
    genus: usize,
    level: u32,
    coeffs: Vec<Scalar>,
}

impl ThetaVector {
    pub fn zero(genus: usize, level: u32) -> Result<Self> {
        let d = dimension(genus, level)?;
        Ok(ThetaVector { genus, level, coeffs: vec![Scalar::zero_at(level); d] })
    }

    /// The basis vector θ_μ = a^μ.
    pub fn basis(mu: &[i64], level: u32) -> Result<Self> {
        let mut v = Self::zero(mu.len(), level)?;
        v.coeffs[index_of(mu, level)] = Scalar::one_at(level);
        Ok(v)
    }

    pub fn from_coeffs(genus: usize, level: u32, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != dimension(genus, level)? {
            return Err(Error::Shape("wrong number of coefficients".into()));
        }
        if let Some(l) = coeffs.iter().find_map(|c| c.level().filter(|&l| l != level)) {
            return Err(Error::LevelMismatch(level, l));
        }
        Ok(ThetaVector { genus, level, coeffs })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn level(&self) -> u32 {
        self.level
    }
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }
    pub fn get(&self, mu: &[i64]) -> &Scalar {
        &self.coeffs[index_of(mu, self.level)]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Shape("dimension mismatch".into()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(ThetaVector { genus: self.genus, level: self.level, coeffs })
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.try_mul(s)).collect::<Result<_>>()?;
        Ok(ThetaVector { genus: self.genus, level: self.level, coeffs })
    }

    pub fn apply(m: &Matrix<Scalar>, v: &ThetaVector, out_genus: usize) -> Result<ThetaVector> {
        ThetaVector::from_coeffs(out_genus, v.level, m.apply(&v.coeffs)?)
    }

    /// {"μ₁,…,μ_g": Scalar} over the nonzero coefficients, in basis order.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mu = multi_index(i, self.genus, self.level);
                let key = mu.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                map.insert(key, c.to_json());
            }
        }
        Value::Object(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn e(p: &[i64], q: &[i64], k: i64) -> HeisElement {
        HeisElement::new(p.to_vec(), q.to_vec(), k).unwrap()
    }

    #[test]
    fn group_law_examples() {
        assert_eq!(e(&[0], &[0], 1).mul(&e(&[0], &[0], 1), 4).unwrap(), e(&[0], &[0], 2));
        assert_eq!(e(&[1], &[0], 0).mul_raw(&e(&[0], &[1], 0)).unwrap(), e(&[1], &[1], 1));
        // (2,0,0)(0,2,0) = (2,2,4) = (N·1, N·1, 2N·1) lies in the relation subgroup
        assert_eq!(e(&[2], &[0], 0).mul(&e(&[0], &[2], 0), 2).unwrap(), e(&[0], &[0], 0));
    }

    #[test]
    fn normal_form_against_coset_enumeration() {
        // g = 1, N = 2: the normal form must be constant on cosets of the relation
        // subgroup, compatible with products, and take exactly 2N·N² values.
        let n = 2u32;
        let ni = n as i64;
        let box_elems: Vec<HeisElement> = (-3..=3)
            .flat_map(|p| (-3..=3).flat_map(move |q| (-5..=5).map(move |k| e(&[p], &[q], k))))
            .collect();
        let rels: Vec<HeisElement> = (-1..=1)
            .flat_map(|a| (-1..=1).flat_map(move |b| (-1..=1).map(move |c| e(&[ni * a], &[ni * b], 2 * ni * c))))
            .collect();
        let mut forms = HashSet::new();
        for x in &box_elems {
            let nx = x.normalize(n);
            forms.insert(nx.clone());
            for r in &rels {
                assert_eq!(x.mul_raw(r).unwrap().normalize(n), nx);
                assert_eq!(r.mul_raw(x).unwrap().normalize(n), nx);
            }
        }
        assert_eq!(forms.len(), 2 * 2 * 4);
        for x in box_elems.iter().step_by(7) {
            for y in box_elems.iter().step_by(5) {
                let direct = x.mul_raw(y).unwrap().normalize(n);
                let via = x.normalize(n).mul_raw(&y.normalize(n)).unwrap().normalize(n);
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn o_pq_examples() {
        let n = 4;
        let shift = o_pq(&[1], &[0], n).unwrap();
        assert_eq!(shift.target(), &[1, 2, 3, 0]);
        assert!(shift.phases().iter().all(|&p| p == 0));
        let clock = o_pq(&[0], &[1], n).unwrap();
        // θ_μ ↦ exp(−2πiμ/N) θ_μ, i.e. ζ^{−8μ}
        assert_eq!(clock.phases(), &[0, 24, 16, 8]);
        assert!(schrodinger(&HeisElement::identity(2), n).unwrap().is_identity());
        let c = schrodinger(&HeisElement::central(1, 1), n).unwrap();
        assert_eq!(c.to_dense(), Matrix::identity(4).map(|x: &Scalar| x * &Scalar::t_pow(n, 1)));
    }

    #[test]
    fn commutant_is_one_dimensional() {
        for (g, n) in [(1, 2), (1, 4), (1, 6), (2, 2)] {
            assert_eq!(commutant_dimension(g, n).unwrap(), 1);
        }
        assert!(commutant_dimension(3, 6).is_err());
    }

    #[test]
    fn commutant_matches_float_rank() {
        // independent oracle: nullity of the stacked linear system [O⊗I − I⊗Oᵀ] by SVD
        use nalgebra::DMatrix;
        use num_complex::Complex64;
        for (g, n) in [(1usize, 2u32), (1, 4), (2, 2)] {
            let d = dimension(g, n).unwrap();
            let mut blocks = Vec::new();
            for i in 0..g {
                let mut ei = vec![0i64; g];
                ei[i] = 1;
                let z = vec![0i64; g];
                for o in [o_pq(&ei, &z, n).unwrap(), o_pq(&z, &ei, n).unwrap()] {
                    let m = o.to_dense().map(|s| s.to_complex());
                    let om = DMatrix::from_fn(d, d, |r, c| m[(r, c)]);
                    let id = DMatrix::<Complex64>::identity(d, d);
                    // vec(OX − XO) = (I ⊗ O − Oᵀ ⊗ I) vec(X)
                    blocks.push(id.kronecker(&om) - om.transpose().kronecker(&id));
                }
            }
            let rows = blocks.len() * d * d;
            let mut big = DMatrix::<Complex64>::zeros(rows, d * d);
            for (b, m) in blocks.iter().enumerate() {
                big.rows_mut(b * d * d, d * d).copy_from(m);
            }
            let sv = big.svd(false, false).singular_values;
            let nullity = sv.iter().filter(|&&s| s < 1e-8).count();
            assert_eq!(nullity, commutant_dimension(g, n).unwrap(), "g={g} N={n}");
        }
    }

    fn arb_elem(g: usize) -> impl Strategy<Value = HeisElement> {
        (prop::collection::vec(-9i64..10, g), prop::collection::vec(-9i64..10, g), -20i64..20).prop_map(|(p, q, k)| HeisElement { p, q, k })
    }

    proptest! {
        #[test]
        fn schrodinger_is_a_homomorphism(
            n in prop::sample::select(vec![2u32, 4, 6]),
            (x, y) in (1usize..3).prop_flat_map(|g| (arb_elem(g), arb_elem(g))),
        ) {
            let lhs = schrodinger(&x.mul(&y, n).unwrap(), n).unwrap();
            let rhs = schrodinger(&x, n).unwrap().compose(&schrodinger(&y, n).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            // the raw (unreduced) element acts the same way as its normal form
            prop_assert_eq!(schrodinger(&x.normalize(n), n).unwrap(), schrodinger(&x, n).unwrap());
            // unitarity
            let u = schrodinger(&x, n).unwrap();
            prop_assert!(u.adjoint().compose(&u).unwrap().is_identity());
            // inverse
            prop_assert!(x.mul(&x.inverse(), n).unwrap() == HeisElement::identity(x.genus()));
        }

        #[test]
        fn relations_act_trivially(p in -3i64..4, q in -3i64..4, k in -3i64..4, n in prop::sample::select(vec![2u32, 4, 6])) {
            let ni = n as i64;
            let r = HeisElement::new(vec![ni * p], vec![ni * q], 2 * ni * k).unwrap();
            prop_assert!(schrodinger(&r, n).unwrap().is_identity());
        }
    }
}
