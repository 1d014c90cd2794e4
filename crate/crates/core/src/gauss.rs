//! Quadratic Gauss sums Σ_{j ∈ Z_N^m} t^{jᵀQj + 2ℓᵀj + c}, t = exp(πi/N), N even.
//!
//! Every skein evaluation in this crate reduces to such a sum.  Instead of
//! enumerating Z_N^m the engine eliminates variables one at a time:
//!
//! * a variable whose row vanishes (diagonal ≡ 0 mod 2N, off-diagonal ≡ 0 mod N)
//!   contributes N or 0 depending on its linear term;
//! * a variable with unit diagonal a is removed by completing the square,
//!   contributing the one-variable sum G(a);
//! * a variable with zero diagonal but a unit coupling u to another variable
//!   forces that variable to an affine function of the rest (factor N);
//! * otherwise one variable is enumerated.
//!
//! All manipulations are valid because N is even: each exponent is then a
//! well-defined function of j mod N.  Results are exact histograms over Z_{2N}.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// An element Σ_k c_k t^k of Z[t]/(t^{2N} − 1); compare values via [`TSum::to_scalar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSum {
    level: u32,
    counts: Vec<i128>,
}

impl TSum {
    pub fn zero(level: u32) -> Self {
        TSum { level, counts: vec![0; 2 * level as usize] }
    }

    /// t^k.
    pub fn monomial(level: u32, k: i64) -> Self {
        let mut s = TSum::zero(level);
        s.counts[k.rem_euclid(2 * level as i64) as usize] = 1;
        s
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn counts(&self) -> &[i128] {
        &self.counts
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn add_assign(&mut self, other: &TSum) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn mul(&self, other: &TSum) -> TSum {
        let m = self.counts.len();
        let mut out = vec![0i128; m];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                if b != 0 {
                    out[(i + j) % m] += a * b;
                }
            }
        }
        TSum { level: self.level, counts: out }
    }

    pub fn scale(&self, f: i128) -> TSum {
        TSum { level: self.level, counts: self.counts.iter().map(|c| c * f).collect() }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> TSum {
        let m = self.counts.len();
        let k = k.rem_euclid(m as i64) as usize;
        let mut out = vec![0i128; m];
        for (i, &c) in self.counts.iter().enumerate() {
            out[(i + k) % m] = c;
        }
        TSum { level: self.level, counts: out }
    }

    pub fn to_scalar(&self) -> Scalar {
        Scalar::from_t_counts(self.level, &self.counts)
    }
}

fn modp(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (modp(a, m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| modp(s0, m))
}

/// One-variable sum G(a) = Σ_{j mod N} t^{a j²}.
fn one_variable(level: u32, a: i64) -> TSum {
    let n = level as i64;
    let mut s = TSum::zero(level);
    for j in 0..n {
        s.counts[modp(a * j * j, 2 * n) as usize] += 1;
    }
    s
}

#[derive(Clone)]
struct Form {
    q: Vec<Vec<i64>>,
    l: Vec<i64>,
    c: i64,
}

impl Form {
    fn len(&self) -> usize {
        self.l.len()
    }

    fn reduce(&mut self, n: i64) {
        let m = self.len();
        for i in 0..m {
            for j in 0..m {
                self.q[i][j] = if i == j { modp(self.q[i][j], 2 * n) } else { modp(self.q[i][j], n) };
            }
            self.l[i] = modp(self.l[i], n);
        }
        self.c = modp(self.c, 2 * n);
    }

    fn remove(&mut self, drop: &[usize]) {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !drop.contains(i)).collect();
        self.q = keep.iter().map(|&i| keep.iter().map(|&j| self.q[i][j]).collect()).collect();
        self.l = keep.iter().map(|&i| self.l[i]).collect();
    }

    /// Fix variable v to the value x.
    fn fix(&self, v: usize, x: i64, n: i64) -> Form {
        let mut f = self.clone();
        f.c = modp(f.c + f.q[v][v] * x * x + 2 * f.l[v] * x, 2 * n);
        for i in 0..f.len() {
            if i != v {
                f.l[i] = modp(f.l[i] + f.q[v][i] * x, n);
            }
        }
        f.remove(&[v]);
        f
    }
}

fn eliminate(level: u32, mut f: Form) -> TSum {
    let n = level as i64;
    let mut acc = TSum::monomial(level, 0);
    loop {
        f.reduce(n);
        let m = f.len();
        if m == 0 {
            return acc.shift(f.c);
        }
        let offdiag_zero = |f: &Form, s: usize| (0..m).all(|k| k == s || f.q[s][k] == 0);
        if let Some(s) = (0..m).find(|&s| f.q[s][s] == 0 && offdiag_zero(&f, s)) {
            if f.l[s] != 0 {
                return TSum::zero(level);
            }
            acc = acc.scale(n as i128);
            f.remove(&[s]);
            continue;
        }
        if let Some(s) = (0..m).find(|&s| gcd(f.q[s][s], 2 * n) == 1) {
            let a = f.q[s][s];
            let ai = inverse_mod(a, 2 * n).expect("unit");
            acc = acc.mul(&one_variable(level, a));
            let (qs, ls) = (f.q[s].clone(), f.l[s]);
            for i in 0..m {
                for j in 0..m {
                    f.q[i][j] -= ai * qs[i] % (2 * n) * qs[j];
                }
                f.l[i] -= ai * ls % (2 * n) * qs[i];
            }
            f.c -= ai * ls % (2 * n) * ls;
            f.remove(&[s]);
            continue;
        }
        let pivot = (0..m)
            .filter(|&s| f.q[s][s] == 0)
            .find_map(|s| (0..m).find(|&k| k != s && gcd(f.q[s][k], n) == 1).map(|k| (s, k)));
        if let Some((s, k)) = pivot {
            // Σ_{j_s} forces Σ_i q_si j_i + l_s ≡ 0 (mod N); solve for j_k
            let ui = inverse_mod(f.q[s][k], n).expect("unit");
            let rest: Vec<usize> = (0..m).filter(|&i| i != s && i != k).collect();
            let r: Vec<i64> = rest.iter().map(|&i| modp(-ui * f.q[s][i], n)).collect();
            let r0 = modp(-ui * f.l[s], n);
            let qk = &f.q[k];
            let qkk = qk[k];
            let mut g = Form {
                q: vec![vec![0; rest.len()]; rest.len()],
                l: vec![0; rest.len()],
                c: f.c + qkk * r0 * r0 + 2 * f.l[k] * r0,
            };
            for (a, &ia) in rest.iter().enumerate() {
                for (b, &ib) in rest.iter().enumerate() {
                    g.q[a][b] = f.q[ia][ib] + r[a] * qk[ib] + qk[ia] * r[b] + qkk * r[a] * r[b];
                }
                g.l[a] = f.l[ia] + r0 * qk[ia] + qkk * r0 * r[a] + f.l[k] * r[a];
            }
            acc = acc.scale(n as i128);
            f = g;
            continue;
        }
        // enumerate the most connected variable
        let v = (0..m).max_by_key(|&s| (0..m).filter(|&k| k != s && f.q[s][k] != 0).count()).expect("m > 0");
        let mut total = TSum::zero(level);
        for x in 0..n {
            total.add_assign(&eliminate(level, f.fix(v, x, n)));
        }
        return acc.mul(&total);
    }
}

fn check_input(level: u32, q: &Matrix<i64>, l: &[i64]) -> Result<()> {
    if level == 0 || !level.is_multiple_of(2) {
        return Err(Error::OddLevel(level as i64));
    }
    if !q.is_square() || q.rows() != l.len() {
        return Err(Error::Shape("quadratic form and linear term sizes differ".into()));
    }
    if !q.is_symmetric() {
        return Err(Error::Invalid("quadratic form must be symmetric".into()));
    }
    // coefficient magnitudes are bounded by N^m; keep them inside i128
    if (l.len() as f64) * (level as f64).log2() > 120.0 {
        return Err(Error::Guard(format!("{} summation variables at level {level}", l.len())));
    }
    Ok(())
}

/// Σ_{j ∈ Z_N^m} t^{jᵀQj + 2ℓᵀj + c} by variable elimination.
pub fn quadratic_sum(level: u32, q: &Matrix<i64>, l: &[i64], c: i64) -> Result<TSum> {
    check_input(level, q, l)?;
    let form = Form { q: q.to_rows(), l: l.to_vec(), c };
    Ok(eliminate(level, form))
}

/// The same sum by direct enumeration; exponential, for cross-checks.
pub fn quadratic_sum_naive(level: u32, q: &Matrix<i64>, l: &[i64], c: i64) -> Result<TSum> {
    check_input(level, q, l)?;
    let m = l.len();
    let n = level as i64;
    if (m as f64) * (level as f64).log2() > 24.0 {
        return Err(Error::Guard("naive enumeration too large".into()));
    }
    let mut out = TSum::zero(level);
    let mut j = vec![0i64; m];
    loop {
        let mut e = c;
        for a in 0..m {
            e += 2 * l[a] * j[a];
            for b in 0..m {
                e += q[(a, b)] * j[a] * j[b];
            }
        }
        out.counts[modp(e, 2 * n) as usize] += 1;
        let mut a = 0;
        loop {
            if a == m {
                return Ok(out);
            }
            j[a] += 1;
            if j[a] < n {
                break;
            }
            j[a] = 0;
            a += 1;
        }
    }
}

/// N^{-1/2} Σ_{j ∈ Z_N} t^{b j² + 2cj}.
pub fn gauss_sum(b: i64, c: i64, level: u32) -> Result<Scalar> {
    let q = Matrix::from_rows(vec![vec![b]])?;
    let s = quadratic_sum(level, &q, &[c], 0)?;
    Ok(s.to_scalar() * Scalar::level_pow_half(level, -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gauss_sum_values() {
        assert_eq!(gauss_sum(0, 0, 6).unwrap(), Scalar::level_pow_half(6, 1));
        // (1 + i)/√2 = e^{πi/4}
        assert_eq!(gauss_sum(1, 0, 2).unwrap(), Scalar::zeta(2, 2));
        assert!(gauss_sum(0, 1, 4).unwrap().is_zero());
        for n in (2..=20).step_by(2) {
            assert_eq!(gauss_sum(1, 0, n).unwrap(), Scalar::anomaly_pow(n, -1));
            assert_eq!(gauss_sum(-1, 0, n).unwrap(), Scalar::anomaly_pow(n, 1));
        }
    }

    #[test]
    fn t_has_order_2n() {
        // t · t^{2N-1} = 1
        assert_eq!(Scalar::t_pow(2, 1) * Scalar::t_pow(2, 3), Scalar::one_at(2));
        assert_eq!(TSum::monomial(2, 1).mul(&TSum::monomial(2, 3)), TSum::monomial(2, 0));
    }

    #[test]
    fn guards() {
        let q = Matrix::<i64>::zeros(2, 2);
        assert!(quadratic_sum(3, &q, &[0, 0], 0).is_err());
        assert!(quadratic_sum(2, &q, &[0], 0).is_err());
    }

    fn arb_form() -> impl Strategy<Value = (u32, Matrix<i64>, Vec<i64>, i64)> {
        (prop::sample::select(vec![2u32, 4, 6, 8]), 0usize..5).prop_flat_map(|(n, m)| {
            (
                Just(n),
                prop::collection::vec(-7i64..8, m * m),
                prop::collection::vec(-7i64..8, m),
                -10i64..10,
            )
                .prop_map(move |(n, e, l, c)| {
                    let q = Matrix::from_fn(m, m, |i, j| if i <= j { e[i * m + j] } else { e[j * m + i] });
                    (n, q, l, c)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn elimination_matches_enumeration((n, q, l, c) in arb_form()) {
            prop_assert_eq!(quadratic_sum(n, &q, &l, c).unwrap().to_scalar(), quadratic_sum_naive(n, &q, &l, c).unwrap().to_scalar());
        }

        #[test]
        fn shift_invariance(b in -9i64..10, c in -9i64..10, n in prop::sample::select(vec![2u32, 4, 6])) {
            // replacing j by j + N leaves every term unchanged
            let direct: Scalar = (0..n as i64).map(|j| {
                let j = j + n as i64;
                Scalar::t_pow(n, b * j * j + 2 * c * j)
            }).fold(Scalar::zero_at(n), |a, x| a + x) * Scalar::level_pow_half(n, -1);
            prop_assert_eq!(gauss_sum(b, c, n).unwrap(), direct);
        }
    }
}
