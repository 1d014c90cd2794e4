//! The extended mapping class group and its representation F(h, n).
//!
//! Classes are words in Dehn twists. A word x₁x₂…x_k denotes x₁∘x₂∘…∘x_k, so
//! its symplectic matrix is the left-to-right product of transvections, and
//! in the mapping cylinder the twist curve of x_k sits closest to the bottom.

use crate::cobordism::FramedCobordism;
use crate::error::{Error, Result};
use crate::heisenberg::o_pq;
use crate::link::AbelianLinkData;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::symplectic::{is_symplectic, maslov, sp_inverse, transvection, Lagrangian, SpMatrix};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Dehn twist along a primitive class (p | q) ∈ Z^{2g}.
    Twist(Vec<i64>),
    /// The quarter rotation of handle i: a ↦ −b, b ↦ a.
    Phi(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

impl Letter {
    pub fn twist(class: Vec<i64>, exponent: i64) -> Self {
        Letter { generator: Generator::Twist(class), exponent }
    }
    pub fn phi(handle: usize, exponent: i64) -> Self {
        Letter { generator: Generator::Phi(handle), exponent }
    }
}

pub fn class_a(g: usize, i: usize) -> Vec<i64> {
    (0..2 * g).map(|k| (k == i) as i64).collect()
}
pub fn class_b(g: usize, i: usize) -> Vec<i64> {
    (0..2 * g).map(|k| (k == g + i) as i64).collect()
}
/// a_i + a_{i+1}
pub fn class_c(g: usize, i: usize) -> Vec<i64> {
    (0..2 * g).map(|k| (k == i || k == i + 1) as i64).collect()
}

/// Element (h, n) of the ℤ-extension of the mapping class group.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedMappingClass {
    genus: usize,
    word: Vec<Letter>,
    sp: SpMatrix,
    weight: i64,
}

impl ExtendedMappingClass {
    pub fn new(genus: usize, word: Vec<Letter>, weight: i64) -> Result<Self> {
        let mut x = ExtendedMappingClass { genus, word, sp: Matrix::identity(2 * genus), weight };
        let mut sp = Matrix::identity(2 * genus);
        for (c, eps) in x.twists()? {
            sp = sp.mul(&transvection(&c, eps)?)?;
        }
        x.sp = sp;
        Ok(x)
    }

    pub fn identity(genus: usize, weight: i64) -> Self {
        ExtendedMappingClass { genus, word: vec![], sp: Matrix::identity(2 * genus), weight }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn word(&self) -> &[Letter] {
        &self.word
    }
    pub fn sp(&self) -> &SpMatrix {
        &self.sp
    }
    pub fn weight(&self) -> i64 {
        self.weight
    }
    pub fn with_weight(&self, weight: i64) -> Self {
        ExtendedMappingClass { weight, ..self.clone() }
    }

    /// The word expanded into single twists (class, ±1), in word order.
    pub fn twists(&self) -> Result<Vec<(Vec<i64>, i64)>> {
        let g = self.genus;
        let mut out = Vec::new();
        for l in &self.word {
            let sign = l.exponent.signum();
            let unit: Vec<(Vec<i64>, i64)> = match &l.generator {
                Generator::Twist(c) => {
                    if c.len() != 2 * g {
                        return Err(Error::Shape(format!("twist class {c:?} in genus {g}")));
                    }
                    vec![(c.clone(), sign)]
                }
                Generator::Phi(i) => {
                    if *i >= g {
                        return Err(Error::Invalid(format!("phi on handle {} in genus {g}", i + 1)));
                    }
                    // φ = T_a⁻ T_b⁻ T_a⁻ and φ⁻¹ = T_a⁺ T_b⁺ T_a⁺
                    let (a, b) = (class_a(g, *i), class_b(g, *i));
                    vec![(a.clone(), -sign), (b, -sign), (a, -sign)]
                }
            };
            for _ in 0..l.exponent.abs() {
                out.extend(unit.iter().cloned());
            }
        }
        Ok(out)
    }

    /// Collar curves for the mapping cylinder, listed from the bottom upward.
    pub fn collar_curves(&self) -> Result<Vec<(Vec<i64>, i64)>> {
        let mut t = self.twists()?;
        t.reverse();
        Ok(t)
    }

    /// (h′, n′)∘(h, n) = (h′h, n + n′ + τ(h′h L, h′ L, L)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::Shape("composition of classes of different genus".into()));
        }
        let sp = self.sp.mul(&other.sp)?;
        let l = Lagrangian::standard(self.genus);
        let tau = if self.genus == 0 { 0 } else { maslov(&l.image(&sp), &l.image(&self.sp), &l)? };
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Ok(ExtendedMappingClass { genus: self.genus, word, sp, weight: self.weight + other.weight + tau })
    }

    pub fn inverse(&self) -> Self {
        let word = self.word.iter().rev().map(|l| Letter { generator: l.generator.clone(), exponent: -l.exponent }).collect();
        ExtendedMappingClass { genus: self.genus, word, sp: sp_inverse(&self.sp), weight: -self.weight }
    }

    /// The cylinder Σ_g × [0,1] with the twist curves in its collar, weight 0.
    pub fn mapping_cylinder(&self) -> Result<FramedCobordism> {
        let mut cyl = FramedCobordism::identity_cylinder(&[self.genus], 0);
        let mut link = cyl.link().clone();
        link.insert_bottom_collar(0, &self.collar_curves()?)?;
        cyl.set_link(link)?;
        Ok(cyl)
    }

    /// σ*: signature of the twist curves together with the 0-framed annuli.
    pub fn sigma_star(&self) -> Result<i64> {
        Ok(self.mapping_cylinder()?.link().surgery_signature())
    }

    /// F(h, n) = e^{−πi(n+σ*)/4} Ω(L), as a matrix on ℂ[Z_N^g].
    pub fn rep_f(&self, level: u32) -> Result<Matrix<Scalar>> {
        let z = self.mapping_cylinder()?.z_param(level)?;
        Ok(z.scale(&Scalar::anomaly_pow(level, self.weight)))
    }

    /// Exact check of O_{h(p,q)} ∘ F = F ∘ O_{pq}.
    pub fn egorov_check(&self, p: &[i64], q: &[i64], level: u32) -> Result<bool> {
        let f = self.rep_f(level)?;
        self.egorov_with(&f, p, q, level)
    }

    pub fn egorov_with(&self, f: &Matrix<Scalar>, p: &[i64], q: &[i64], level: u32) -> Result<bool> {
        let g = self.genus;
        if p.len() != g || q.len() != g {
            return Err(Error::Shape("(p, q) must have length g".into()));
        }
        let pq: Vec<i64> = p.iter().chain(q).copied().collect();
        let img = self.sp.apply(&pq)?;
        let lhs = o_pq(&img[..g], &img[g..], level)?.left_mul(f)?;
        let rhs = o_pq(p, q, level)?.right_mul(f)?;
        Ok(lhs == rhs)
    }

    /// Parse a word such as [["Ta1", 1], ["Tb1", -1], ["phi", 1], [[1,0,1,0], -1]].
    pub fn parse_word(genus: usize, v: &Value) -> Result<Vec<Letter>> {
        let items = v.as_array().ok_or_else(|| Error::Parse("word must be a JSON array".into()))?;
        items
            .iter()
            .map(|item| {
                let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse(format!("bad letter {item}")))?;
                let exponent = pair[1].as_i64().ok_or_else(|| Error::Parse(format!("bad exponent in {item}")))?;
                let generator = match &pair[0] {
                    Value::String(s) => parse_generator(genus, s)?,
                    Value::Array(c) => Generator::Twist(
                        c.iter().map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("bad class {item}")))).collect::<Result<_>>()?,
                    ),
                    other => return Err(Error::Parse(format!("bad generator {other}"))),
                };
                Ok(Letter { generator, exponent })
            })
            .collect()
    }
}

fn parse_generator(genus: usize, s: &str) -> Result<Generator> {
    let handle = |rest: &str| -> Result<usize> {
        let i: usize = if rest.is_empty() { 1 } else { rest.parse().map_err(|_| Error::Parse(format!("bad generator {s}")))? };
        if i == 0 || i > genus {
            return Err(Error::Parse(format!("generator {s} out of range for genus {genus}")));
        }
        Ok(i - 1)
    };
    if let Some(rest) = s.strip_prefix("phi") {
        return Ok(Generator::Phi(handle(rest)?));
    }
    if s.len() >= 2 && s.starts_with('T') {
        let i = handle(&s[2..])?;
        return match &s[1..2] {
            "a" => Ok(Generator::Twist(class_a(genus, i))),
            "b" => Ok(Generator::Twist(class_b(genus, i))),
            "c" if i + 1 < genus => Ok(Generator::Twist(class_c(genus, i))),
            _ => Err(Error::Parse(format!("unknown generator {s}"))),
        };
    }
    Err(Error::Parse(format!("unknown generator {s}")))
}

/// A single twist presented by surgery on one extra curve in the cylinder.
#[derive(Clone, Debug)]
pub struct TwistSurgeryData {
    class: Vec<i64>,
    sign: i64,
    link: AbelianLinkData,
}

impl TwistSurgeryData {
    pub fn new(class: Vec<i64>, sign: i64) -> Result<Self> {
        if sign.abs() != 1 || !class.len().is_multiple_of(2) {
            return Err(Error::Invalid("twist needs an even-length class and sign ±1".into()));
        }
        let g = class.len() / 2;
        let x = ExtendedMappingClass::new(g, vec![Letter::twist(class.clone(), sign)], 0)?;
        let link = x.mapping_cylinder()?.link().clone();
        if cfg!(debug_assertions) && g <= 2 {
            let f = x.rep_f(2)?;
            for k in 0..1usize << (2 * g) {
                let v: Vec<i64> = (0..2 * g).map(|i| ((k >> i) & 1) as i64).collect();
                if !x.egorov_with(&f, &v[..g], &v[g..], 2)? {
                    return Err(Error::Consistency(format!("twist convention pin failed for {class:?}")));
                }
            }
        }
        Ok(TwistSurgeryData { class, sign, link })
    }

    pub fn class(&self) -> &[i64] {
        &self.class
    }
    pub fn sign(&self) -> i64 {
        self.sign
    }
    pub fn link(&self) -> &AbelianLinkData {
        &self.link
    }
    pub fn sigma_star(&self) -> i64 {
        self.link.surgery_signature()
    }
}

/// Write a genus-1 matrix in SL(2, Z) as a word in T_a, T_b and φ.
pub fn factor_sl2(m: &SpMatrix) -> Result<Vec<Letter>> {
    if m.rows() != 2 || m.cols() != 2 || !is_symplectic(m) {
        return Err(Error::Invalid("factor_sl2 needs a matrix in SL(2, Z)".into()));
    }
    let (a_cls, b_cls) = (class_a(1, 0), class_b(1, 0));
    let (mut a, mut b, mut c, mut d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    // left multiplications applied so far: U^k = [[1,k],[0,1]], L^k = [[1,0],[k,1]]
    // 0 marks a left multiplication by φ = [[0,1],[−1,0]]
    let mut ops: Vec<(u8, i64)> = Vec::new();
    while c != 0 {
        if a == 0 {
            ops.push((0, 1));
            (a, b, c, d) = (c, d, 0, -b);
        } else if a.abs() >= c.abs() {
            let k = a / c;
            ops.push((1, -k));
            a -= k * c;
            b -= k * d;
        } else {
            let k = c / a;
            ops.push((2, -k));
            c -= k * a;
            d -= k * b;
        }
    }
    // now the matrix is a·U^{ab} with a = ±1
    let mut word = Vec::new();
    for &(kind, k) in &ops {
        // inverse of each operation, in order: M = O₁⁻¹ ⋯ O_k⁻¹ · R
        word.push(match kind {
            0 => Letter::phi(0, -1),
            1 => Letter::twist(a_cls.clone(), k), // U^{-k} = T_a^{k}
            _ => Letter::twist(b_cls.clone(), -k), // L^{-k} = T_b^{-k}
        });
    }
    if a == -1 {
        word.push(Letter::phi(0, 2));
    }
    let x = a * b;
    if x != 0 {
        word.push(Letter::twist(a_cls, -x));
    }
    word.retain(|l| l.exponent != 0);
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{multi_index, ThetaVector};
    use proptest::prelude::*;

    fn word(g: usize, letters: &[(&str, i64)]) -> ExtendedMappingClass {
        let v: Value = serde_json::to_value(letters.iter().map(|(s, e)| (s.to_string(), *e)).collect::<Vec<_>>()).unwrap();
        ExtendedMappingClass::new(g, ExtendedMappingClass::parse_word(g, &v).unwrap(), 0).unwrap()
    }

    #[test]
    fn phi_matrix_and_fourier_vector() {
        let phi = word(1, &[("phi", 1)]);
        assert_eq!(phi.sp().to_rows(), vec![vec![0, 1], vec![-1, 0]]);
        for level in [2u32, 4, 6] {
            let f = phi.rep_f(level).unwrap();
            let empty = ThetaVector::basis(&[0], level).unwrap();
            let v = ThetaVector::apply(&f, &empty, 1).unwrap();
            let c = Scalar::level_pow_half(level, -1);
            for j in 0..level as i64 {
                assert_eq!(v.get(&[j]), &c);
            }
            for e in f.entries() {
                assert!((e.to_complex().norm() - (level as f64).powf(-0.5)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn anomaly_on_identity() {
        let x = ExtendedMappingClass::identity(1, 1);
        let f = x.rep_f(4).unwrap();
        let a = Scalar::anomaly_pow(4, 1);
        assert_eq!(f, Matrix::from_fn(4, 4, |i, j| if i == j { a.clone() } else { Scalar::zero_at(4) }));
    }

    #[test]
    fn compose_examples() {
        let phi = word(1, &[("phi", 1)]);
        let id = ExtendedMappingClass::identity(1, 0);
        assert_eq!(id.compose(&phi).unwrap().weight(), 0);
        let back = phi.with_weight(3).compose(&phi.with_weight(3).inverse()).unwrap();
        assert_eq!(back.weight(), 0);
        assert_eq!(back.sp(), &Matrix::identity(2));
        // φ∘φ = −I; τ(−L, φL, L) with −L = L vanishes
        assert_eq!(phi.compose(&phi).unwrap().weight(), 0);
        let ta = word(1, &[("Ta1", 1)]);
        let tb = word(1, &[("Tb1", 1)]);
        // T_a T_b: τ(T_a T_b L, T_a L, L)
        let l = Lagrangian::standard(1);
        let t = maslov(&l.image(&ta.sp().mul(tb.sp()).unwrap()), &l.image(ta.sp()), &l).unwrap();
        assert_eq!(ta.compose(&tb).unwrap().weight(), t);
    }

    #[test]
    fn parse_errors() {
        let bad = serde_json::json!([["Tz1", 1]]);
        assert!(ExtendedMappingClass::parse_word(1, &bad).is_err());
        let bad = serde_json::json!([["Tc1", 1]]);
        assert!(ExtendedMappingClass::parse_word(1, &bad).is_err());
        let ok = serde_json::json!([["Tc1", 1], [[0, 1, 1, 0], -1], ["phi2", 1]]);
        assert_eq!(ExtendedMappingClass::parse_word(2, &ok).unwrap().len(), 3);
    }

    #[test]
    fn sigma_star_examples() {
        assert_eq!(ExtendedMappingClass::identity(2, 0).sigma_star().unwrap(), 0);
        let tb = TwistSurgeryData::new(class_b(1, 0), 1).unwrap();
        // a b-curve is unlinked from the annulus: framing w + ε = 1
        assert_eq!(tb.sigma_star(), 1);
    }

    #[test]
    fn egorov_all_generators() {
        for g in [1usize, 2] {
            let mut gens = vec![];
            for i in 0..g {
                gens.push(Letter::twist(class_a(g, i), 1));
                gens.push(Letter::twist(class_b(g, i), 1));
                gens.push(Letter::phi(i, 1));
            }
            if g == 2 {
                gens.push(Letter::twist(class_c(g, 0), 1));
            }
            for level in [2u32, 4] {
                for l in &gens {
                    for sign in [1, -1] {
                        let x = ExtendedMappingClass::new(g, vec![Letter { exponent: sign, ..l.clone() }], 0).unwrap();
                        let f = x.rep_f(level).unwrap();
                        let d = (level as usize).pow(2 * g as u32);
                        for k in 0..d {
                            let v = multi_index(k, 2 * g, level);
                            assert!(x.egorov_with(&f, &v[..g], &v[g..], level).unwrap(), "{l:?} {sign} N={level}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn braid_relation_words_agree() {
        // T_a T_b T_a = T_b T_a T_b in genus 1 (same matrix and, by the cocycle, same weight)
        let x = word(1, &[("Ta1", 1), ("Tb1", 1), ("Ta1", 1)]);
        let y = word(1, &[("Tb1", 1), ("Ta1", 1), ("Tb1", 1)]);
        assert_eq!(x.sp(), y.sp());
        assert_eq!(x.rep_f(4).unwrap(), y.rep_f(4).unwrap());
    }

    #[test]
    fn factorizer_round_trip() {
        let mats = [[[2, 1], [1, 1]], [[-1, 0], [0, -1]], [[0, -1], [1, 0]], [[5, 3], [3, 2]], [[1, 7], [0, 1]], [[-3, 2], [-5, 3]]];
        for m in mats {
            let sp = Matrix::from_rows(m.iter().map(|r| r.to_vec()).collect()).unwrap();
            let w = factor_sl2(&sp).unwrap();
            assert_eq!(ExtendedMappingClass::new(1, w, 0).unwrap().sp(), &sp, "{m:?}");
        }
        assert!(factor_sl2(&Matrix::from_rows(vec![vec![2, 0], vec![0, 1]]).unwrap()).is_err());
    }

    fn arb_word(g: usize) -> impl Strategy<Value = Vec<Letter>> {
        let n = if g == 1 { 2 } else { 5 };
        prop::collection::vec((0..n, prop_oneof![Just(1i64), Just(-1i64)]), 1..=4).prop_map(move |v| {
            v.into_iter()
                .map(|(k, e)| match k {
                    0 => Letter::twist(class_a(g, 0), e),
                    1 => Letter::twist(class_b(g, 0), e),
                    2 => Letter::twist(class_a(g, 1), e),
                    3 => Letter::twist(class_b(g, 1), e),
                    _ => Letter::twist(class_c(g, 0), e),
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn multiplicative(g in 1usize..=2, wx in arb_word(2), wy in arb_word(2), nx in -2i64..=2, ny in -2i64..=2, li in 0usize..3) {
            let level = [2u32, 4, 6][li];
            let restrict = |w: Vec<Letter>| -> Vec<Letter> {
                if g == 2 { w } else {
                    w.into_iter().filter_map(|l| match l.generator {
                        Generator::Twist(c) if c[1] == 0 && c[3] == 0 => Some(Letter::twist(vec![c[0], c[2]], l.exponent)),
                        _ => None,
                    }).collect()
                }
            };
            let x = ExtendedMappingClass::new(g, restrict(wx), nx).unwrap();
            let y = ExtendedMappingClass::new(g, restrict(wy), ny).unwrap();
            let xy = x.compose(&y).unwrap();
            prop_assert_eq!(xy.rep_f(level).unwrap(), x.rep_f(level).unwrap().mul(&y.rep_f(level).unwrap()).unwrap());
            // Wall bookkeeping
            let l = Lagrangian::standard(g);
            let tau = maslov(&l.image(xy.sp()), &l.image(x.sp()), &l).unwrap();
            prop_assert_eq!(xy.sigma_star().unwrap(), x.sigma_star().unwrap() + y.sigma_star().unwrap() - tau);
        }

        #[test]
        fn unitary(w in arb_word(2), li in 0usize..2) {
            let level = [2u32, 4][li];
            let x = ExtendedMappingClass::new(2, w, 1).unwrap();
            let f = x.rep_f(level).unwrap();
            let id = Matrix::identity(f.rows());
            prop_assert_eq!(f.adjoint().mul(&f).unwrap(), id);
        }
    }
}
