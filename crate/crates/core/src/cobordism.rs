//! Framed 3-cobordisms given by abelian surgery presentations, and the TQFT map Z.
//!
//! For a connected presentation with k₊ top boundary components of total
//! genus G₊ and m surgery components, the matrix entry from a^μ (bottom) to
//! a^ν (top) of the unweighted map is
//!
//!   N^{(k₊ − 1 − m − G₊)/2} · e^{−πiσ(L_surg)/4} · Σ_{j ∈ Z_N^m} t^{xᵀBx},
//!
//! with x = (μ on bottom cores, ν on top cores, 1 on embedded components,
//! j on surgery components). The weighted map multiplies this by
//! e^{−πin′/4}, where n′ corrects n by the Maslov indices comparing the
//! boundary markings with the standard ones.

use crate::error::{Error, Result};
use crate::heisenberg;
use crate::linalg::{self, rat, RatMatrix};
use crate::link::{AbelianLinkData, Role, MERIDIAN_SIGN};
use crate::matrix::Matrix;
use crate::mcg::ExtendedMappingClass;
use crate::scalar::Scalar;
use crate::symplectic::{direct_sum_sp, maslov, Lagrangian, SpMatrix};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;

/// τ, extended by 0 to the genus-0 symplectic space.
pub(crate) fn tau(l1: &Lagrangian, l2: &Lagrangian, l3: &Lagrangian) -> Result<i64> {
    if l1.genus() == 0 {
        return Ok(0);
    }
    maslov(l1, l2, l3)
}

/// A closed oriented surface with one Lagrangian marking per component.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedSurface {
    genera: Vec<usize>,
    lagrangians: Vec<Lagrangian>,
}

impl ExtendedSurface {
    pub fn standard(genera: &[usize]) -> Self {
        ExtendedSurface { genera: genera.to_vec(), lagrangians: genera.iter().map(|&g| Lagrangian::standard(g)).collect() }
    }

    pub fn empty() -> Self {
        Self::standard(&[])
    }

    pub fn new(lagrangians: Vec<Lagrangian>) -> Self {
        ExtendedSurface { genera: lagrangians.iter().map(Lagrangian::genus).collect(), lagrangians }
    }

    /// Marking given by one Lagrangian of the total H₁; it must split along components.
    pub fn from_total(genera: &[usize], total: &Lagrangian) -> Result<Self> {
        Ok(ExtendedSurface { genera: genera.to_vec(), lagrangians: total.split(genera)? })
    }

    pub fn genera(&self) -> &[usize] {
        &self.genera
    }
    pub fn lagrangians(&self) -> &[Lagrangian] {
        &self.lagrangians
    }
    pub fn components(&self) -> usize {
        self.genera.len()
    }
    pub fn total_genus(&self) -> usize {
        self.genera.iter().sum()
    }
    pub fn total_lagrangian(&self) -> Lagrangian {
        Lagrangian::direct_sum(&self.lagrangians)
    }
    pub fn is_standard(&self) -> bool {
        self.lagrangians.iter().all(|l| *l == Lagrangian::standard(l.genus()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// From the bottom boundary to the top: N_M.
    Forward,
    /// From the top boundary to the bottom: N^M.
    Backward,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FramedCobordism {
    link: AbelianLinkData,
    bottom: ExtendedSurface,
    top: ExtendedSurface,
    weight: i64,
}

impl FramedCobordism {
    pub fn new(link: AbelianLinkData, bottom: ExtendedSurface, top: ExtendedSurface, weight: i64) -> Result<Self> {
        link.check_boundary(bottom.genera(), top.genera())?;
        Ok(FramedCobordism { link, bottom, top, weight })
    }

    /// A closed manifold (surgery on a link with embedded components).
    pub fn closed(link: AbelianLinkData, weight: i64) -> Result<Self> {
        Self::new(link, ExtendedSurface::empty(), ExtendedSurface::empty(), weight)
    }

    /// Σ × [0, 1] with standard markings: per handle a bottom core, a top core and a 0-framed annulus.
    ///
    /// With k > 1 components a single presentation is connected, so this is the
    /// connected sum of the k cylinders and its Z is N^{(k−1)/2}·a^n·id.
    pub fn identity_cylinder(genera: &[usize], weight: i64) -> Self {
        let handles: Vec<(usize, usize)> = genera.iter().enumerate().flat_map(|(gr, &g)| (0..g).map(move |h| (gr, h))).collect();
        let n = handles.len();
        let mut roles: Vec<Role> = handles.iter().map(|&(graph, handle)| Role::BottomCore { graph, handle }).collect();
        roles.extend(handles.iter().map(|&(graph, handle)| Role::TopCore { graph, handle }));
        roles.extend(std::iter::repeat_n(Role::Surgery, n));
        let b = Matrix::from_fn(3 * n, 3 * n, |i, j| {
            let (lo, hi) = (i.min(j), i.max(j));
            match (lo / n, hi / n) {
                (0, 2) if hi - 2 * n == lo => 1,
                (1, 2) if hi - 2 * n == lo - n => -1,
                _ => 0,
            }
        });
        let link = AbelianLinkData::new(roles, b).expect("valid cylinder");
        let s = ExtendedSurface::standard(genera);
        FramedCobordism { link, bottom: s.clone(), top: s, weight }
    }

    /// The handlebody H_g bounding the top surface, containing a^μ (or nothing).
    pub fn handlebody(genus: usize, mu: Option<&[i64]>) -> Result<Self> {
        let mut roles: Vec<Role> = (0..genus).map(|handle| Role::TopCore { graph: 0, handle }).collect();
        roles.extend(std::iter::repeat_n(Role::Surgery, genus));
        let extra = mu.is_some() as usize;
        if let Some(m) = mu {
            if m.len() != genus {
                return Err(Error::Shape("skein multi-index must have length g".into()));
            }
            roles.push(Role::Embedded);
        }
        let n = 2 * genus + extra;
        let b = Matrix::from_fn(n, n, |i, j| {
            let (lo, hi) = (i.min(j), i.max(j));
            if lo < genus && hi == lo + genus {
                -1
            } else if let (Some(m), true) = (mu, hi == 2 * genus && lo >= genus && lo < 2 * genus) {
                m[lo - genus]
            } else {
                0
            }
        });
        Self::new(AbelianLinkData::new(roles, b)?, ExtendedSurface::empty(), ExtendedSurface::standard(&[genus]), 0)
    }

    pub fn link(&self) -> &AbelianLinkData {
        &self.link
    }
    pub fn bottom(&self) -> &ExtendedSurface {
        &self.bottom
    }
    pub fn top(&self) -> &ExtendedSurface {
        &self.top
    }
    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn with_weight(&self, weight: i64) -> Self {
        FramedCobordism { weight, ..self.clone() }
    }

    pub fn with_markings(&self, bottom: ExtendedSurface, top: ExtendedSurface) -> Result<Self> {
        Self::new(self.link.clone(), bottom, top, self.weight)
    }

    pub fn set_link(&mut self, link: AbelianLinkData) -> Result<()> {
        link.check_boundary(self.bottom.genera(), self.top.genera())?;
        self.link = link;
        Ok(())
    }

    /// The unweighted map for standard markings, entries (ν, μ).
    pub fn z_param(&self, level: u32) -> Result<Matrix<Scalar>> {
        let gm = self.bottom.total_genus();
        let gp = self.top.total_genus();
        let (rows, cols) = (heisenberg::dimension(gp, level)?, heisenberg::dimension(gm, level)?);
        let m = self.link.surgery().len() as i64;
        let kp = self.top.components() as i64;
        let pref = Scalar::level_pow_half(level, kp - 1 - m - gp as i64).try_mul(&Scalar::anomaly_pow(level, self.link.surgery_signature()))?;

        let bpos: HashMap<usize, usize> = self.link.bottom_cores().into_iter().enumerate().map(|(k, i)| (i, k)).collect();
        let tpos: HashMap<usize, usize> = self.link.top_cores().into_iter().enumerate().map(|(k, i)| (i, k)).collect();
        let rest: Vec<usize> = (0..self.link.len()).filter(|&i| self.link.roles()[i] != Role::Surgery).collect();

        let entries: Vec<Result<Scalar>> = {
            use rayon::prelude::*;
            (0..rows * cols)
                .into_par_iter()
                .map(|idx| {
                    let (r, c) = (idx / cols, idx % cols);
                    let nu = heisenberg::multi_index(r, gp, level);
                    let mu = heisenberg::multi_index(c, gm, level);
                    let fixed: Vec<i64> = rest
                        .iter()
                        .map(|i| match self.link.roles()[*i] {
                            Role::BottomCore { .. } => mu[bpos[i]],
                            Role::TopCore { .. } => nu[tpos[i]],
                            _ => 1,
                        })
                        .collect();
                    pref.try_mul(&self.link.surgery_sum(level, &fixed)?.to_scalar())
                })
                .collect()
        };
        let data = entries.into_iter().collect::<Result<Vec<_>>>()?;
        Matrix::from_vec(rows, cols, data)
    }

    /// Weight correction for non-standard markings:
    /// n′ = n + τ(L_std, L₋, N^M(L_std)) + τ(N_M(L_std), L₊, L_std).
    pub fn effective_weight(&self) -> Result<i64> {
        let (gm, gp) = (self.bottom.total_genus(), self.top.total_genus());
        let (sm, sp) = (Lagrangian::standard(gm), Lagrangian::standard(gp));
        let back = self.boundary_image_lagrangian(Side::Backward, &self.top.total_lagrangian())?;
        let fwd = self.boundary_image_lagrangian(Side::Forward, &sm)?;
        Ok(self.weight + tau(&sm, &self.bottom.total_lagrangian(), &back)? + tau(&fwd, &self.top.total_lagrangian(), &sp)?)
    }

    /// Z(M) including the weight and the marking corrections.
    pub fn z_matrix(&self, level: u32) -> Result<Matrix<Scalar>> {
        let n = self.effective_weight()?;
        Ok(self.z_param(level)?.scale(&Scalar::anomaly_pow(level, n)))
    }

    /// Boundary inclusions into H₁(M; Q) and the relation columns.
    ///
    /// H₁ is generated by meridians of the cores and surgery components and
    /// related by the surgery rows of B.  On the bottom, aⱼ ↦ row of Cⱼ and
    /// bⱼ ↦ s·(meridian of Cⱼ); on the reflected top, aⱼ ↦ −(row of Cⱼ).
    fn homology_maps(&self) -> (RatMatrix, RatMatrix, RatMatrix) {
        let roles = self.link.roles();
        let b = self.link.linking();
        let gens: Vec<usize> = (0..self.link.len()).filter(|&i| roles[i] != Role::Embedded).collect();
        let pos: HashMap<usize, usize> = gens.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let boundary = |cores: Vec<usize>, sign: i64| {
            let g = cores.len();
            Matrix::from_fn(gens.len(), 2 * g, |r, c| {
                if c < g {
                    rat(sign * b[(cores[c], gens[r])])
                } else if pos[&cores[c - g]] == r {
                    rat(MERIDIAN_SIGN)
                } else {
                    BigRational::zero()
                }
            })
        };
        let surg = self.link.surgery();
        let rel = Matrix::from_fn(gens.len(), surg.len(), |r, c| rat(b[(surg[c], gens[r])]));
        (boundary(self.link.bottom_cores(), 1), boundary(self.link.top_cores(), -1), rel)
    }

    /// N_M(L) ⊂ H₁(∂₊M) (forward) or N^M(L) ⊂ H₁(∂₋M) (backward):
    /// classes homologous in M to an element of L on the other side.
    pub fn boundary_image_lagrangian(&self, side: Side, l: &Lagrangian) -> Result<Lagrangian> {
        let (im, ip, rel) = self.homology_maps();
        let (from, to) = match side {
            Side::Forward => (&im, &ip),
            Side::Backward => (&ip, &im),
        };
        let g_to = to.cols() / 2;
        if l.genus() * 2 != from.cols() {
            return Err(Error::Shape("Lagrangian lives on the wrong boundary".into()));
        }
        if g_to == 0 {
            return Ok(Lagrangian::standard(0));
        }
        let fl = from.mul(l.basis())?;
        let n = to.rows();
        let (c1, c2, c3) = (to.cols(), fl.cols(), rel.cols());
        let a = Matrix::from_fn(n, c1 + c2 + c3, |r, c| {
            if c < c1 {
                to[(r, c)].clone()
            } else if c < c1 + c2 {
                -fl[(r, c - c1)].clone()
            } else {
                -rel[(r, c - c1 - c2)].clone()
            }
        });
        let ys: Vec<Vec<BigRational>> = linalg::kernel(&a).into_iter().map(|k| k[..c1].to_vec()).collect();
        Lagrangian::from_rational_span(g_to, &ys)
    }

    /// Glue `upper` on top of `self`, reparameterizing the interface by h (one class per component).
    pub fn glue(&self, upper: &FramedCobordism, h: Option<&[ExtendedMappingClass]>) -> Result<FramedCobordism> {
        let interface = self.top.genera();
        if interface != upper.bottom.genera() {
            return Err(Error::Shape(format!("cannot glue: top genera {interface:?} vs bottom genera {:?}", upper.bottom.genera())));
        }
        let hs = interface_classes(interface, h)?;
        let mut twisted = upper.link.clone();
        for (graph, x) in hs.iter().enumerate() {
            twisted.insert_bottom_collar(graph, &x.collar_curves()?)?;
        }

        let lower = &self.link;
        let top = lower.top_cores();
        let bot = twisted.bottom_cores();
        let keep_lo: Vec<usize> = (0..lower.len()).filter(|i| !top.contains(i)).collect();
        let keep_up: Vec<usize> = (0..twisted.len()).filter(|i| !bot.contains(i)).collect();
        let (n1, k) = (keep_lo.len(), top.len());
        let n = n1 + k + keep_up.len();
        let mut map_lo = vec![0; lower.len()];
        let mut map_up = vec![0; twisted.len()];
        for (ii, &i) in keep_lo.iter().enumerate() {
            map_lo[i] = ii;
        }
        for (j, (&t, &b)) in top.iter().zip(&bot).enumerate() {
            map_lo[t] = n1 + j;
            map_up[b] = n1 + j;
        }
        for (ii, &i) in keep_up.iter().enumerate() {
            map_up[i] = n1 + k + ii;
        }
        let mut roles = vec![Role::Surgery; n];
        for &i in &keep_lo {
            roles[map_lo[i]] = lower.roles()[i];
        }
        for &i in &keep_up {
            roles[map_up[i]] = twisted.roles()[i];
        }
        let mut b = Matrix::<i64>::zeros(n, n);
        for (link, map) in [(lower, &map_lo), (&twisted, &map_up)] {
            for i in 0..link.len() {
                for j in 0..link.len() {
                    b[(map[i], map[j])] += link.linking()[(i, j)];
                }
            }
        }
        let mut glued = AbelianLinkData::new(roles, b)?;
        // horizontal circles around all interface components but the first
        for _ in 1..interface.len() {
            let len = glued.len();
            glued.push(Role::Surgery, &vec![0; len], 0)?;
        }

        let hsp = direct_sum_sp(&hs.iter().map(|x| x.sp().clone()).collect::<Vec<_>>());
        let n_h: i64 = hs.iter().map(ExtendedMappingClass::weight).sum();
        let nm = self.boundary_image_lagrangian(Side::Forward, &self.bottom.total_lagrangian())?.image(&hsp);
        let lp = self.top.total_lagrangian().image(&hsp);
        let lm2 = upper.bottom.total_lagrangian();
        let nm2 = upper.boundary_image_lagrangian(Side::Backward, &upper.top.total_lagrangian())?;
        let weight = self.weight + upper.weight + n_h + tau(&nm, &lp, &nm2)? + tau(&lp, &lm2, &nm2)?;
        FramedCobordism::new(glued, self.bottom.clone(), upper.top.clone(), weight)
    }

    /// One presentation of both pieces side by side: as a manifold this is the
    /// connected sum M # M′, so its Z is N^{1/2}·Z(M)⊗Z(M′).
    pub fn juxtapose(&self, other: &FramedCobordism) -> Result<FramedCobordism> {
        let link = self.link.disjoint_union(&other.link, self.bottom.components(), self.top.components());
        let cat = |a: &ExtendedSurface, b: &ExtendedSurface| ExtendedSurface::new(a.lagrangians.iter().chain(&b.lagrangians).cloned().collect());
        FramedCobordism::new(link, cat(&self.bottom, &other.bottom), cat(&self.top, &other.top), self.weight + other.weight)
    }
}

fn interface_classes(interface: &[usize], h: Option<&[ExtendedMappingClass]>) -> Result<Vec<ExtendedMappingClass>> {
    match h {
        None => Ok(interface.iter().map(|&g| ExtendedMappingClass::identity(g, 0)).collect()),
        Some(hs) => {
            if hs.len() != interface.len() || hs.iter().zip(interface).any(|(x, &g)| x.genus() != g) {
                return Err(Error::Shape("one mapping class per interface component, of matching genus".into()));
            }
            Ok(hs.to_vec())
        }
    }
}

/// Z of a disjoint union: the tensor product, first factor most significant.
pub fn tensor(parts: &[Matrix<Scalar>]) -> Matrix<Scalar> {
    parts.iter().fold(Matrix::from_fn(1, 1, |_, _| <Scalar as num_traits::One>::one()), |acc, m| acc.kron(m))
}

/// The operator V(h) inserted by gluing along h, from the top marking of the
/// lower piece to the bottom marking of the upper one.
pub fn interface_operator(h: &[ExtendedMappingClass], lower_top: &ExtendedSurface, upper_bottom: &ExtendedSurface, level: u32) -> Result<Matrix<Scalar>> {
    let hs = interface_classes(lower_top.genera(), Some(h))?;
    if lower_top.genera() != upper_bottom.genera() {
        return Err(Error::Shape("interface genera differ".into()));
    }
    let hsp: SpMatrix = direct_sum_sp(&hs.iter().map(|x| x.sp().clone()).collect::<Vec<_>>());
    let ls = Lagrangian::standard(lower_top.total_genus());
    let hls = ls.image(&hsp);
    let lp = lower_top.total_lagrangian().image(&hsp);
    let lm2 = upper_bottom.total_lagrangian();
    let n_h: i64 = hs.iter().map(ExtendedMappingClass::weight).sum();
    let n_g = n_h + tau(&hls, &lp, &lm2)? - tau(&hls, &ls, &lm2)?;
    let parts = hs.iter().map(|x| x.mapping_cylinder()?.z_param(level)).collect::<Result<Vec<_>>>()?;
    Ok(tensor(&parts).scale(&Scalar::anomaly_pow(level, n_g)))
}

/// The closed invariant N^{−1/2}·e^{−πi(n+σ)/4}·N^{−m/2}·Σ_j t^{(j,1)ᵀB(j,1)}.
pub fn closed_invariant(link: &AbelianLinkData, weight: i64, level: u32) -> Result<Scalar> {
    if link.has_cores() {
        return Err(Error::Invalid("closed invariant of a presentation with boundary".into()));
    }
    let m = link.surgery().len() as i64;
    let sum = link.surgery_sum(level, &vec![1; link.embedded().len()])?.to_scalar();
    Scalar::level_pow_half(level, -1 - m)
        .try_mul(&Scalar::anomaly_pow(level, weight + link.surgery_signature()))?
        .try_mul(&sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::ThetaVector;
    use crate::skein::pairing;

    fn ident(d: usize, level: u32) -> Matrix<Scalar> {
        Matrix::from_fn(d, d, |i, j| if i == j { Scalar::one_at(level) } else { Scalar::zero_at(level) })
    }

    #[test]
    fn cylinders_are_identity_up_to_anomaly() {
        for g in 1..=2usize {
            for level in [2u32, 4] {
                for n in -2..=2 {
                    let z = FramedCobordism::identity_cylinder(&[g], n).z_matrix(level).unwrap();
                    let d = level.pow(g as u32) as usize;
                    assert_eq!(z, ident(d, level).scale(&Scalar::anomaly_pow(level, n)));
                }
            }
        }
    }

    #[test]
    fn handlebody_gives_its_skein() {
        for level in [2u32, 4] {
            for mu in 0..level as i64 {
                let z = FramedCobordism::handlebody(1, Some(&[mu])).unwrap().z_matrix(level).unwrap();
                let v = ThetaVector::from_coeffs(1, level, z.column(0)).unwrap();
                assert_eq!(v, ThetaVector::basis(&[mu], level).unwrap());
            }
            let z = FramedCobordism::handlebody(2, None).unwrap().z_matrix(level).unwrap();
            let v = ThetaVector::from_coeffs(2, level, z.column(0)).unwrap();
            assert_eq!(v, ThetaVector::basis(&[0, 0], level).unwrap());
        }
    }

    #[test]
    fn closed_examples() {
        for level in [2u32, 4, 6] {
            let s3 = closed_invariant(&AbelianLinkData::empty(), 0, level).unwrap();
            assert_eq!(s3, Scalar::level_pow_half(level, -1));
            let s2s1 = AbelianLinkData::closed(1, Matrix::from_rows(vec![vec![0]]).unwrap()).unwrap();
            assert_eq!(closed_invariant(&s2s1, 0, level).unwrap(), Scalar::one_at(level));
        }
        let l41 = AbelianLinkData::closed(1, Matrix::from_rows(vec![vec![4]]).unwrap()).unwrap();
        assert_eq!(closed_invariant(&l41, 0, 2).unwrap(), Scalar::anomaly_pow(2, 1));
        // with the closed cobordism path
        let m = FramedCobordism::closed(l41, 0).unwrap();
        assert_eq!(m.z_matrix(2).unwrap()[(0, 0)], Scalar::anomaly_pow(2, 1));
    }

    #[test]
    fn lagrangian_images() {
        let cyl = FramedCobordism::identity_cylinder(&[2], 0);
        let l = Lagrangian::standard(2);
        assert_eq!(cyl.boundary_image_lagrangian(Side::Forward, &l).unwrap(), l);
        assert_eq!(cyl.boundary_image_lagrangian(Side::Backward, &l).unwrap(), l);
        // the kernel of H₁(∂H) → H₁(H) is spanned by the meridian disk boundaries b
        let h = FramedCobordism::handlebody(1, None).unwrap();
        let k = h.boundary_image_lagrangian(Side::Forward, &Lagrangian::standard(0)).unwrap();
        assert_eq!(k, Lagrangian::standard(1));
        let x = ExtendedMappingClass::new(1, vec![crate::mcg::Letter::phi(0, 1)], 0).unwrap();
        let c = x.mapping_cylinder().unwrap();
        let l1 = Lagrangian::standard(1);
        assert_eq!(c.boundary_image_lagrangian(Side::Forward, &l1).unwrap(), l1.image(x.sp()));
    }

    #[test]
    fn pairing_through_cylinder() {
        // ⟨a^μ, a^ν⟩ recomputed as the Ω-decorated cylinder link in S³
        for level in [2u32, 4, 6] {
            for g in 1..=2usize {
                let cyl = FramedCobordism::identity_cylinder(&[g], 0);
                let d = level.pow(g as u32) as usize;
                let z = cyl.z_param(level).unwrap();
                let scale = Scalar::level_pow_half(level, g as i64);
                for mu in 0..d {
                    for nu in 0..d {
                        let via = z[(nu, mu)].try_mul(&scale).unwrap();
                        let x = ThetaVector::basis(&heisenberg::multi_index(mu, g, level), level).unwrap();
                        let y = ThetaVector::basis(&heisenberg::multi_index(nu, g, level), level).unwrap();
                        assert_eq!(via, pairing(&x, &y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn glue_errors() {
        let a = FramedCobordism::identity_cylinder(&[1], 0);
        let b = FramedCobordism::identity_cylinder(&[2], 0);
        assert!(a.glue(&b, None).is_err());
        let wrong = [ExtendedMappingClass::identity(2, 0)];
        assert!(a.glue(&a, Some(&wrong)).is_err());
    }

    #[test]
    fn cylinder_composition() {
        let a = FramedCobordism::identity_cylinder(&[1, 1], 1);
        let b = FramedCobordism::identity_cylinder(&[1, 1], -3);
        let c = a.glue(&b, None).unwrap();
        assert_eq!(c.weight(), -2);
        // each factor is a connected sum of two cylinders, carrying N^{1/2}
        let expect = ident(4, 2).scale(&Scalar::anomaly_pow(2, -2)).scale(&Scalar::from_integer(2));
        assert_eq!(c.z_matrix(2).unwrap(), expect);
        assert_eq!(a.z_matrix(2).unwrap().mul(&b.z_matrix(2).unwrap()).unwrap(), expect);
    }
}
