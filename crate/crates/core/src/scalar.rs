//! Exact scalars: elements of Q(ζ), ζ = exp(πi/4N), with a formal factor N^{h/2}.
//!
//! Every scalar carries the level N it was built at.  Values are stored in the
//! power basis of Q(ζ) = Q[x]/Φ_{8N}(x) with a single positive common
//! denominator, normalized so that the representation is canonical.  Since N
//! is even, √N itself lies in Q(ζ) (it is a rotated quadratic Gauss sum), so
//! scalars with different formal half-powers can always be added and compared
//! exactly; the half-power is kept only to make printed values readable.

use crate::error::{Error, Result};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Arithmetic tables for Q(ζ_{8N}).
#[derive(Debug)]
pub struct Cyclotomic {
    level: u32,
    order: usize,
    degree: usize,
    /// `powers[k]` is x^k reduced modulo Φ_{8N}, for 0 ≤ k < 8N.
    powers: Vec<Vec<i64>>,
    /// √N in the power basis.
    sqrt_level: Vec<i64>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic; returns the quotient of an exact division
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(n: usize, memo: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d, memo);
            p = poly_div_exact(&p, &phi_d);
        }
    }
    memo.insert(n, p.clone());
    p
}

impl Cyclotomic {
    fn build(level: u32) -> Self {
        let order = 8 * level as usize;
        let phi = cyclotomic_poly(order, &mut HashMap::new());
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow x^degree = -Σ phi_i x^i
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * phi[i];
                }
            }
        }
        let mut field = Cyclotomic { level, order, degree, powers, sqrt_level: Vec::new() };
        // √N = ζ^{-N} Σ_{j mod N} ζ^{4 j²}
        let mut acc = vec![0i64; degree];
        let n = level as usize;
        for j in 0..n {
            let e = (4 * j * j + order - n) % order;
            for (a, b) in acc.iter_mut().zip(&field.powers[e]) {
                *a += b;
            }
        }
        field.sqrt_level = acc;
        field
    }

    /// Shared tables for level N (N even, positive).
    pub fn get(level: u32) -> Arc<Cyclotomic> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Cyclotomic>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry(level).or_insert_with(|| Arc::new(Cyclotomic::build(level))).clone()
    }

    pub fn level(&self) -> u32 {
        self.level
    }
    /// Multiplicative order of ζ, i.e. 8N.
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Exact scalar N^{h/2}·(Σ_k num_k ζ^k)/den.
///
/// A scalar without a field is a plain rational constant; it adopts the level
/// of whatever it is combined with.
#[derive(Clone)]
pub struct Scalar {
    field: Option<Arc<Cyclotomic>>,
    half: bool,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scalar {
    fn raw(field: Option<Arc<Cyclotomic>>, half: bool, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut s = Scalar { field, half, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.half = false;
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Scalar::raw(None, false, vec![r.numer().clone()], r.denom().clone())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::raw(None, false, vec![BigInt::from(n)], BigInt::one())
    }

    pub fn zero_at(level: u32) -> Self {
        let f = Cyclotomic::get(level);
        let d = f.degree;
        Scalar { field: Some(f), half: false, num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn one_at(level: u32) -> Self {
        Scalar::zeta(level, 0)
    }

    /// ζ^k with ζ = exp(πi/4N).
    pub fn zeta(level: u32, k: i64) -> Self {
        let f = Cyclotomic::get(level);
        let e = k.rem_euclid(f.order as i64) as usize;
        let num = f.powers[e].iter().map(|&c| BigInt::from(c)).collect();
        Scalar { field: Some(f), half: false, num, den: BigInt::one() }
    }

    /// t^k with t = exp(πi/N) = ζ^4.
    pub fn t_pow(level: u32, k: i64) -> Self {
        Scalar::zeta(level, 4 * k)
    }

    /// exp(-kπi/4) = ζ^{-kN}, the framing-anomaly phase raised to k.
    pub fn anomaly_pow(level: u32, k: i64) -> Self {
        Scalar::zeta(level, -(level as i64) * k)
    }

    /// N^{e/2}.
    pub fn level_pow_half(level: u32, e: i64) -> Self {
        let f = Cyclotomic::get(level);
        let nn = BigInt::from(level);
        let half = e.rem_euclid(2) == 1;
        let whole = (e - half as i64) / 2;
        let (num, den) = if whole >= 0 {
            (num_traits::pow(nn, whole as usize), BigInt::one())
        } else {
            (BigInt::one(), num_traits::pow(nn, (-whole) as usize))
        };
        let mut v = vec![BigInt::zero(); f.degree];
        v[0] = num;
        Scalar::raw(Some(f), half, v, den)
    }

    /// Σ_k counts[k]·t^k for a histogram over Z_{2N}.
    pub fn from_t_counts(level: u32, counts: &[i128]) -> Self {
        let f = Cyclotomic::get(level);
        let mut acc = vec![0i128; f.degree];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                let e = (4 * k) % f.order;
                for (a, &b) in acc.iter_mut().zip(&f.powers[e]) {
                    *a += c * b as i128;
                }
            }
        }
        let num = acc.into_iter().map(BigInt::from).collect();
        Scalar::raw(Some(f), false, num, BigInt::one())
    }

    pub fn level(&self) -> Option<u32> {
        self.field.as_ref().map(|f| f.level)
    }

    /// The formal exponent h in N^{h/2}.
    pub fn half_power(&self) -> u8 {
        self.half as u8
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// Rational coefficients in the power basis (after absorbing the √N factor).
    pub fn coefficients(&self) -> Vec<BigRational> {
        let flat = self.without_half();
        flat.num.iter().map(|c| BigRational::new(c.clone(), flat.den.clone())).collect()
    }

    /// Power-basis coefficients of the part multiplying N^{h/2}.
    pub fn formal_coefficients(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    fn lift(&self, f: &Arc<Cyclotomic>) -> Scalar {
        match &self.field {
            Some(_) => self.clone(),
            None => {
                let mut num = vec![BigInt::zero(); f.degree];
                num[0] = self.num[0].clone();
                Scalar { field: Some(f.clone()), half: false, num, den: self.den.clone() }
            }
        }
    }

    fn common_field(&self, other: &Scalar) -> Result<Option<Arc<Cyclotomic>>> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if a.level != b.level => Err(Error::LevelMismatch(a.level, b.level)),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, Some(b)) => Ok(Some(b.clone())),
            (None, None) => Ok(None),
        }
    }

    fn poly_mul(f: &Cyclotomic, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = f.degree;
        let mut full = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = full.drain(..d).collect();
        for (k, c) in full.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[d + k]) {
                if p != 0 {
                    *o += &c * p;
                }
            }
        }
        out
    }

    /// Same value with the √N factor multiplied into the coefficients.
    fn without_half(&self) -> Scalar {
        if !self.half {
            return self.clone();
        }
        let f = self.field.as_ref().expect("half power requires a level");
        let s: Vec<BigInt> = f.sqrt_level.iter().map(|&c| BigInt::from(c)).collect();
        Scalar::raw(Some(f.clone()), false, Scalar::poly_mul(f, &self.num, &s), self.den.clone())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        let field = self.common_field(other)?;
        let (a, b) = match &field {
            Some(f) => (self.lift(f), other.lift(f)),
            None => (self.clone(), other.clone()),
        };
        let (a, b) = if a.half == b.half { (a, b) } else { (a.without_half(), b.without_half()) };
        if a.is_zero() {
            return Ok(b);
        }
        if b.is_zero() {
            return Ok(a);
        }
        let g = a.den.gcd(&b.den);
        let fa = &b.den / &g;
        let fb = &a.den / &g;
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &fa + y * &fb).collect();
        Ok(Scalar::raw(field, a.half, num, &a.den * &fa))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        let field = self.common_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(match &field {
                Some(f) => Scalar::zero_at(f.level),
                None => Scalar::from_integer(0),
            });
        }
        let den = &self.den * &other.den;
        let Some(f) = field else {
            return Ok(Scalar::raw(None, false, vec![&self.num[0] * &other.num[0]], den));
        };
        let mut num = match (self.field.is_some(), other.field.is_some()) {
            (true, true) => Scalar::poly_mul(&f, &self.num, &other.num),
            (true, false) => self.num.iter().map(|c| c * &other.num[0]).collect(),
            _ => other.num.iter().map(|c| c * &self.num[0]).collect(),
        };
        let half = self.half ^ other.half;
        if self.half && other.half {
            let n = BigInt::from(f.level);
            for c in &mut num {
                *c *= &n;
            }
        }
        Ok(Scalar::raw(Some(f), half, num, den))
    }

    pub fn neg(&self) -> Scalar {
        Scalar { field: self.field.clone(), half: self.half, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    /// Complex conjugate (ζ ↦ ζ^{-1}; √N is real).
    pub fn conj(&self) -> Scalar {
        let Some(f) = &self.field else { return self.clone() };
        let mut out = vec![BigInt::zero(); f.degree];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (f.order - k) % f.order;
            for (o, &p) in out.iter_mut().zip(&f.powers[e]) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        Scalar::raw(Some(f.clone()), self.half, out, self.den.clone())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Scalar {
        self.try_mul(&Scalar::from_rational(r)).expect("rational constants carry no level")
    }

    /// Integer power, exponent ≥ 0.
    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = match &self.field {
            Some(f) => Scalar::one_at(f.level),
            None => Scalar::from_integer(1),
        };
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same level");
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        let Some(f) = &self.field else {
            return Complex64::new(BigRational::new(self.num[0].clone(), self.den.clone()).to_f64().unwrap_or(f64::NAN), 0.0);
        };
        let w = std::f64::consts::PI / (4.0 * f.level as f64);
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let r = BigRational::new(c.clone(), self.den.clone()).to_f64().unwrap_or(f64::NAN);
                z += Complex64::from_polar(r, w * k as f64);
            }
        }
        if self.half {
            z *= (f.level as f64).sqrt();
        }
        z
    }

    /// Exact equality, cross-checked against floating-point evaluation.
    ///
    /// Returns an error if the exact verdict and the float verdict (relative
    /// tolerance 1e-9) disagree, which would indicate an arithmetic bug.
    pub fn checked_eq(&self, other: &Scalar) -> Result<bool> {
        self.common_field(other)?;
        let exact = self == other;
        let (x, y) = (self.to_complex(), other.to_complex());
        let scale = 1f64.max(x.norm()).max(y.norm());
        let close = (x - y).norm() <= 1e-9 * scale;
        if exact != close {
            return Err(Error::Consistency(format!("exact verdict {exact} but |x-y| = {:e}", (x - y).norm())));
        }
        Ok(exact)
    }

    pub fn to_json(&self) -> Value {
        let flat_level = self.level().unwrap_or(0);
        let order = self.field.as_ref().map_or(1, |f| f.order);
        let z = self.to_complex();
        let coeffs: Vec<Value> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let r = BigRational::new(c.clone(), self.den.clone());
                json!([k % order, big_to_json(r.numer()), big_to_json(r.denom())])
            })
            .collect();
        json!({
            "level": flat_level,
            "halfN": self.half_power(),
            "coeffs": coeffs,
            "float": [z.re, z.im],
        })
    }

    pub fn from_json(v: &Value) -> Result<Scalar> {
        let level = v.get("level").and_then(Value::as_i64).ok_or_else(|| Error::Parse("scalar: missing level".into()))?;
        let half = v.get("halfN").and_then(Value::as_u64).unwrap_or(0);
        if half > 1 {
            return Err(Error::Parse("scalar: halfN must be 0 or 1".into()));
        }
        let coeffs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| Error::Parse("scalar: missing coeffs".into()))?;
        let mut acc = if level == 0 { Scalar::from_integer(0) } else { Scalar::zero_at(crate::error::check_level(level)?) };
        for c in coeffs {
            let triple = c.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Parse("scalar: coefficient must be [k, num, den]".into()))?;
            let k = triple[0].as_i64().ok_or_else(|| Error::Parse("scalar: bad exponent".into()))?;
            let num = big_from_json(&triple[1])?;
            let den = big_from_json(&triple[2])?;
            if den.is_zero() {
                return Err(Error::Parse("scalar: zero denominator".into()));
            }
            let r = BigRational::new(num, den);
            let term = if level == 0 {
                if k != 0 {
                    return Err(Error::Parse("scalar: level-free constants only have exponent 0".into()));
                }
                Scalar::from_rational(&r)
            } else {
                Scalar::zeta(level as u32, k).scale_rational(&r)
            };
            acc = acc.try_add(&term)?;
        }
        if half == 1 {
            if level == 0 {
                return Err(Error::Parse("scalar: halfN needs a level".into()));
            }
            acc = acc.try_mul(&Scalar::level_pow_half(level as u32, 1))?;
        }
        if let Some(fl) = v.get("float").and_then(Value::as_array) {
            let re = fl.first().and_then(Value::as_f64).unwrap_or(f64::NAN);
            let im = fl.get(1).and_then(Value::as_f64).unwrap_or(f64::NAN);
            let z = acc.to_complex();
            if (z - Complex64::new(re, im)).norm() > 1e-6 * 1f64.max(z.norm()) {
                return Err(Error::Parse("scalar: float field disagrees with exact coefficients".into()));
            }
        }
        Ok(acc)
    }
}

fn big_to_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => json!(v),
        None => json!(b.to_string()),
    }
}

fn big_from_json(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("scalar: bad integer {v}")))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.common_field(other).is_err() {
            return false;
        }
        match self.try_add(&other.neg()) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            terms.push(match k {
                0 => format!("{r}"),
                _ if r.is_one() => format!("z^{k}"),
                _ => format!("{r}*z^{k}"),
            });
        }
        let body = terms.join(" + ");
        match (&self.field, self.half) {
            (Some(fl), true) => write!(f, "sqrt({})*({body})", fl.level),
            (Some(fl), false) => write!(f, "[N={}] {body}", fl.level),
            (None, _) => write!(f, "{body}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Result<Scalar> = $body;
                f(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}
binop!(Add, add, |a, b| a.try_add(b));
binop!(Sub, sub, |a, b| a.try_add(&b.neg()));
binop!(Mul, mul, |a, b| a.try_mul(b));

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::from_integer(0)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_integer(1)
    }
}

impl Ring for Scalar {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        Scalar::neg(self)
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Scalar::from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9 * 1f64.max(a.norm())
    }

    #[test]
    fn degrees() {
        assert_eq!(Cyclotomic::get(2).degree(), 8);
        assert_eq!(Cyclotomic::get(4).degree(), 16);
        assert_eq!(Cyclotomic::get(6).degree(), 16);
    }

    #[test]
    fn zeta_has_order_8n() {
        for n in [2u32, 4, 6, 8] {
            let z = Scalar::zeta(n, 1);
            assert_eq!(z.pow(8 * n), Scalar::one_at(n));
            assert_ne!(z.pow(4 * n), Scalar::one_at(n));
        }
    }

    #[test]
    fn sqrt_level_squares_to_level() {
        for n in [2u32, 4, 6, 10] {
            let s = Scalar::level_pow_half(n, 1);
            assert_eq!(s.half_power(), 1);
            assert_eq!(&s * &s, Scalar::from_integer(n as i64));
            // the formal factor and its embedding agree
            let embedded = Scalar::level_pow_half(n, 1).without_half();
            assert_eq!(embedded.half_power(), 0);
            assert_eq!(embedded, s);
            assert!(close(embedded.to_complex(), Complex64::new((n as f64).sqrt(), 0.0)));
        }
    }

    #[test]
    fn kappa_squared() {
        let k = Scalar::level_pow_half(4, -1);
        assert_eq!(&k * &k, Scalar::from_rational(&BigRational::new(1.into(), 4.into())));
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let a = Scalar::zeta(2, 1);
        let b = Scalar::zeta(4, 1);
        assert!(matches!(a.try_mul(&b), Err(Error::LevelMismatch(2, 4))));
        assert!(a.checked_eq(&b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = (Scalar::zeta(6, 5) + Scalar::from_integer(3)) * Scalar::level_pow_half(6, -3);
        let v = s.to_json();
        assert_eq!(Scalar::from_json(&v).unwrap(), s);
        let text = serde_json::to_string(&s).unwrap();
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn gauss_sum_phase() {
        // Σ_{j mod N} t^{j²} = √N e^{πi/4}
        for n in [2u32, 4, 6] {
            let mut s = Scalar::zero_at(n);
            for j in 0..n as i64 {
                s = s + Scalar::t_pow(n, j * j);
            }
            assert_eq!(s, Scalar::level_pow_half(n, 1) * Scalar::zeta(n, n as i64));
        }
    }

    fn arb_scalar(level: u32) -> impl Strategy<Value = Scalar> {
        (prop::collection::vec((0i64..(8 * level as i64), -5i64..6, 1i64..4), 0..5), 0u8..2).prop_map(move |(terms, h)| {
            let mut s = Scalar::zero_at(level);
            for (k, a, b) in terms {
                s = s + Scalar::zeta(level, k).scale_rational(&BigRational::new(a.into(), b.into()));
            }
            if h == 1 {
                s = s * Scalar::level_pow_half(level, 1);
            }
            s
        })
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        prop::sample::select(vec![2u32, 4, 6]).prop_flat_map(|l| (arb_scalar(l), arb_scalar(l), arb_scalar(l)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
            prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
            prop_assert!(close(a.conj().to_complex(), a.to_complex().conj()));
            prop_assert!(a.checked_eq(&a.clone()).unwrap());
            prop_assert!((&a - &a).is_zero());
        }
    }
}
