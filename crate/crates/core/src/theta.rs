//! Floating-point theta series, their quasi-periodicity and their Gram matrix.
//!
//! θ_μ^Π(z) = Σ_{n∈Z^g} exp 2πiN[½(μ/N+n)ᵀΠ(μ/N+n) + (μ/N+n)ᵀz], with real
//! coordinates z = x + Πy, so that the period lattice is spanned by the unit
//! vectors λ_j and the columns λ_{g+j} of Π.

use crate::error::{Error, Result};
use crate::heisenberg::{self, HeisElement};
use crate::matrix::Matrix;
use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rayon::prelude::*;

pub trait Real: Float + FloatConst + Send + Sync + std::fmt::Debug + 'static {}
impl<T: Float + FloatConst + Send + Sync + std::fmt::Debug + 'static> Real for T {}

fn c<F: Real>(x: f64) -> F {
    F::from(x).expect("representable")
}

#[derive(Clone, Debug)]
pub struct PeriodMatrix<F: Real> {
    pi: Vec<Vec<Complex<F>>>,
    /// Lower Cholesky factor of Im Π.
    chol: Vec<Vec<F>>,
}

impl<F: Real> PeriodMatrix<F> {
    /// Π must be symmetric with positive definite imaginary part.
    pub fn new(pi: Vec<Vec<Complex<F>>>) -> Result<Self> {
        let g = pi.len();
        if g == 0 || pi.iter().any(|r| r.len() != g) {
            return Err(Error::Shape("period matrix must be square and nonempty".into()));
        }
        let tol = c::<F>(1e-12);
        for i in 0..g {
            for j in 0..g {
                if (pi[i][j] - pi[j][i]).norm() > tol {
                    return Err(Error::Invalid("period matrix must be symmetric".into()));
                }
            }
        }
        let mut l = vec![vec![F::zero(); g]; g];
        for i in 0..g {
            for j in 0..=i {
                let s = (0..j).fold(pi[i][j].im, |acc, k| acc - l[i][k] * l[j][k]);
                if i == j {
                    if s <= F::zero() {
                        return Err(Error::Invalid("imaginary part of the period matrix is not positive definite".into()));
                    }
                    l[i][i] = s.sqrt();
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        Ok(PeriodMatrix { pi, chol: l })
    }

    /// Π = s·i·I_g.
    pub fn scaled_identity(g: usize, s: F) -> Result<Self> {
        Self::new((0..g).map(|i| (0..g).map(|j| if i == j { Complex::new(F::zero(), s) } else { Complex::new(F::zero(), F::zero()) }).collect()).collect())
    }

    pub fn genus(&self) -> usize {
        self.pi.len()
    }
    pub fn entry(&self, i: usize, j: usize) -> Complex<F> {
        self.pi[i][j]
    }

    pub fn det_imag(&self) -> F {
        self.chol.iter().enumerate().fold(F::one(), |acc, (i, r)| acc * r[i] * r[i])
    }

    /// A lower bound for the smallest eigenvalue of Im Π: 1/‖L⁻¹‖_F².
    pub fn min_eigen_bound(&self) -> F {
        let g = self.genus();
        let mut inv = vec![vec![F::zero(); g]; g];
        for col in 0..g {
            for i in 0..g {
                let rhs = if i == col { F::one() } else { F::zero() };
                let s = (0..i).fold(rhs, |acc, k| acc - self.chol[i][k] * inv[k][col]);
                inv[i][col] = s / self.chol[i][i];
            }
        }
        let fro: F = inv.iter().flatten().fold(F::zero(), |acc, &x| acc + x * x);
        F::one() / fro
    }

    /// z = x + Πy.
    pub fn point(&self, x: &[F], y: &[F]) -> Vec<Complex<F>> {
        (0..self.genus())
            .map(|i| (0..self.genus()).fold(Complex::new(x[i], F::zero()), |acc, j| acc + self.pi[i][j] * y[j]))
            .collect()
    }

    /// Lattice vector λ_k: a unit vector for k < g, column k − g of Π otherwise.
    pub fn lattice_vector(&self, k: usize) -> Vec<Complex<F>> {
        let g = self.genus();
        (0..g)
            .map(|i| if k < g { Complex::new(if i == k { F::one() } else { F::zero() }, F::zero()) } else { self.pi[i][k - g] })
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ThetaValue<F: Real> {
    pub value: Complex<F>,
    /// Upper bound for the omitted terms ‖n‖_∞ > R.
    pub tail_bound: F,
}

fn lattice_points(g: usize, r: usize) -> Result<Vec<Vec<i64>>> {
    let side = 2 * r + 1;
    let count = side.checked_pow(g as u32).filter(|&n| n <= 10_000_000).ok_or_else(|| Error::Guard(format!("(2R+1)^g with R={r}, g={g}")))?;
    Ok((0..count)
        .map(|mut k| {
            (0..g)
                .map(|_| {
                    let d = (k % side) as i64 - r as i64;
                    k /= side;
                    d
                })
                .collect()
        })
        .collect())
}

fn theta_single<F: Real>(mu: &[i64], level: u32, p: &PeriodMatrix<F>, z: &[Complex<F>], points: &[Vec<i64>]) -> Complex<F> {
    let g = p.genus();
    let nf = c::<F>(level as f64);
    let two_pi_i_n = Complex::new(F::zero(), c::<F>(2.0) * F::PI() * nf);
    let mut acc = Complex::new(F::zero(), F::zero());
    for n in points {
        let v: Vec<F> = (0..g).map(|i| c::<F>(mu[i].rem_euclid(level as i64) as f64) / nf + c::<F>(n[i] as f64)).collect();
        let mut quad = Complex::new(F::zero(), F::zero());
        for i in 0..g {
            for j in 0..g {
                quad = quad + p.pi[i][j] * (v[i] * v[j]);
            }
        }
        let lin = (0..g).fold(Complex::new(F::zero(), F::zero()), |a, i| a + z[i] * v[i]);
        acc = acc + ((quad * c::<F>(0.5) + lin) * two_pi_i_n).exp();
    }
    acc
}

/// Every θ_μ, μ ∈ Z_N^g in lexicographic order, at z.
fn theta_all<F: Real>(level: u32, p: &PeriodMatrix<F>, z: &[Complex<F>], points: &[Vec<i64>]) -> Vec<Complex<F>> {
    let g = p.genus();
    (0..(level as usize).pow(g as u32)).map(|idx| theta_single(&heisenberg::multi_index(idx, g, level), level, p, z, points)).collect()
}

fn tail_bound<F: Real>(level: u32, p: &PeriodMatrix<F>, z: &[Complex<F>], r: usize) -> F {
    // |term| ≤ exp(−πNλ|v|² + 2πN|v||Im z|), summed shell by shell with |v| ≥ k − 1
    let g = p.genus();
    let nf = c::<F>(level as f64);
    let lam = p.min_eigen_bound();
    let imz = z.iter().fold(F::zero(), |a, w| a + w.im * w.im).sqrt();
    let mut total = F::zero();
    for k in r + 1..r + 400 {
        let rad = c::<F>(k as f64 - 1.0);
        let count = c::<F>(((2 * k + 1).pow(g as u32) - (2 * k - 1).pow(g as u32)) as f64);
        let expo = -F::PI() * nf * lam * rad * rad + c::<F>(2.0) * F::PI() * nf * rad * imz;
        let term = count * expo.exp();
        total = total + term;
        if expo < c::<F>(-60.0) && rad * lam > imz {
            break;
        }
    }
    total
}

/// Partial sum of θ_μ^Π(z) over ‖n‖_∞ ≤ R, with a bound on the omitted tail.
pub fn theta_eval<F: Real>(mu: &[i64], level: u32, p: &PeriodMatrix<F>, z: &[Complex<F>], r: usize) -> Result<ThetaValue<F>> {
    let g = p.genus();
    if mu.len() != g || z.len() != g {
        return Err(Error::Shape("μ and z must have length g".into()));
    }
    if r < 1 {
        return Err(Error::Invalid("truncation radius must be at least 1".into()));
    }
    let pts = lattice_points(g, r)?;
    let acc = theta_single(mu, level, p, z, &pts);
    Ok(ThetaValue { value: acc, tail_bound: tail_bound(level, p, z, r) })
}

/// Largest relative residual of the periodicity conditions over all μ and all 2g periods.
pub fn quasi_periodicity_residual<F: Real>(level: u32, p: &PeriodMatrix<F>, z: &[Complex<F>], r: usize) -> Result<F> {
    let g = p.genus();
    let pts = lattice_points(g, r)?;
    let base = theta_all(level, p, z, &pts);
    let nf = c::<F>(level as f64);
    let i = Complex::new(F::zero(), F::one());
    let mut worst = F::zero();
    for k in 0..2 * g {
        let lam = p.lattice_vector(k);
        let shifted: Vec<Complex<F>> = z.iter().zip(&lam).map(|(a, b)| a + b).collect();
        let vals = theta_all(level, p, &shifted, &pts);
        let factor = if k < g {
            Complex::new(F::one(), F::zero())
        } else {
            let j = k - g;
            (-i * c::<F>(2.0) * F::PI() * nf * z[j] - i * F::PI() * nf * p.pi[j][j]).exp()
        };
        for (v, b) in vals.iter().zip(&base) {
            let expect = factor * b;
            let res = (v - expect).norm() / expect.norm().max(F::one());
            worst = worst.max(res);
        }
    }
    Ok(worst)
}

/// ⟨⟨θ_μ, θ_ν⟩⟩ by the periodic trapezoid rule on a grid^{2g} mesh of [0,1]^{2g}.
pub fn theta_gram<F: Real>(level: u32, p: &PeriodMatrix<F>, grid: usize, r: usize) -> Result<Matrix<Complex<F>>> {
    let g = p.genus();
    if g > 2 {
        return Err(Error::Guard("theta Gram matrix is limited to genus ≤ 2".into()));
    }
    if grid == 0 || grid.checked_pow(2 * g as u32).is_none_or(|n| n > 50_000_000) {
        return Err(Error::Guard(format!("quadrature grid {grid}^{}", 2 * g)));
    }
    let d = heisenberg::dimension(g, level)?;
    let pts = lattice_points(g, r)?;
    let nodes = grid.pow(2 * g as u32);
    let h = F::one() / c::<F>(grid as f64);
    let nf = c::<F>(level as f64);
    let partial: Vec<Vec<Complex<F>>> = (0..nodes)
        .into_par_iter()
        .fold(
            || vec![Complex::new(F::zero(), F::zero()); d * d],
            |mut acc, node| {
                let mut k = node;
                let mut coords = vec![F::zero(); 2 * g];
                for c_ in coords.iter_mut() {
                    *c_ = c::<F>((k % grid) as f64) * h;
                    k /= grid;
                }
                let (x, y) = coords.split_at(g);
                let z = p.point(x, y);
                let th = theta_all(level, p, &z, &pts);
                let mut q = F::zero();
                for i in 0..g {
                    for j in 0..g {
                        q = q + y[i] * p.pi[i][j].im * y[j];
                    }
                }
                let w = (-c::<F>(2.0) * F::PI() * nf * q).exp();
                for a in 0..d {
                    for b in 0..d {
                        acc[a * d + b] = acc[a * d + b] + th[a] * th[b].conj() * w;
                    }
                }
                acc
            },
        )
        .collect();
    let norm = (c::<F>(2.0) * nf).powf(c::<F>(g as f64 / 2.0)) * p.det_imag().sqrt() / c::<F>(nodes as f64);
    let mut out = Matrix::zeros(d, d);
    for part in partial {
        for a in 0..d {
            for b in 0..d {
                out[(a, b)] = out[(a, b)] + part[a * d + b] * norm;
            }
        }
    }
    Ok(out)
}

/// Apply e^{kπi/N} O_pq to a function given by its coefficients in the theta basis.
fn act<F: Real>(x: &HeisElement, level: u32, coeffs: &[Complex<F>]) -> Result<Vec<Complex<F>>> {
    let g = x.genus();
    let nf = c::<F>(level as f64);
    let i = Complex::new(F::zero(), F::one());
    let mut out = vec![Complex::new(F::zero(), F::zero()); coeffs.len()];
    for (idx, cf) in coeffs.iter().enumerate() {
        let mu = heisenberg::multi_index(idx, g, level);
        let pq: i64 = x.p.iter().zip(&x.q).map(|(a, b)| a * b).sum();
        let muq: i64 = mu.iter().zip(&x.q).map(|(a, b)| a * b).sum();
        let phase = F::PI() / nf * c::<F>((x.k - pq - 2 * muq) as f64);
        let target: Vec<i64> = mu.iter().zip(&x.p).map(|(a, b)| a + b).collect();
        let t = heisenberg::index_of(&target, level);
        out[t] = out[t] + cf * (i * phase).exp();
    }
    Ok(out)
}

/// |(ρ(x)ρ(y)f)(z) − (ρ(xy)f)(z)| for f = Σ_μ θ_μ, evaluated through theta values.
pub fn group_law_residual<F: Real>(level: u32, p: &PeriodMatrix<F>, z: &[Complex<F>], r: usize, x: &HeisElement, y: &HeisElement) -> Result<F> {
    let g = p.genus();
    let d = heisenberg::dimension(g, level)?;
    let f: Vec<Complex<F>> = (0..d).map(|k| Complex::new(c::<F>(1.0 + k as f64), c::<F>(0.5 * k as f64))).collect();
    let two = act(x, level, &act(y, level, &f)?)?;
    let one = act(&x.mul_raw(y)?, level, &f)?;
    let pts = lattice_points(g, r)?;
    let th = theta_all(level, p, z, &pts);
    let eval = |cf: &[Complex<F>]| cf.iter().zip(&th).fold(Complex::new(F::zero(), F::zero()), |a, (u, v)| a + u * v);
    Ok((eval(&two) - eval(&one)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn theta_value_at_origin() {
        let p = PeriodMatrix::<f64>::scaled_identity(1, 1.0).unwrap();
        let v = theta_eval(&[0], 2, &p, &[Complex64::new(0.0, 0.0)], 5).unwrap();
        // oracle: Σ e^{−2πn²} summed directly to |n| ≤ 50
        let oracle: f64 = (-50..=50).map(|n: i64| (-2.0 * std::f64::consts::PI * (n * n) as f64).exp()).sum();
        assert!((v.value.re - oracle).abs() < 1e-15 && v.value.im.abs() < 1e-15);
        assert!((oracle - 1.003_734_9).abs() < 1e-7);
        assert!(v.tail_bound < 1e-30);
    }

    #[test]
    fn reindexing_symmetry() {
        // θ_μ(−z) = θ_{−μ}(z)
        let p = PeriodMatrix::new(vec![vec![Complex64::new(0.3, 1.1), Complex64::new(0.1, 0.2)], vec![Complex64::new(0.1, 0.2), Complex64::new(-0.2, 0.9)]]).unwrap();
        let z = vec![Complex64::new(0.2, 0.1), Complex64::new(-0.4, 0.3)];
        let mz: Vec<Complex64> = z.iter().map(|w| -w).collect();
        for mu in [[1i64, 2], [0, 3], [2, 2]] {
            let a = theta_eval(&mu, 4, &p, &mz, 12).unwrap().value;
            let b = theta_eval(&[-mu[0], -mu[1]], 4, &p, &z, 12).unwrap().value;
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_period_matrices() {
        assert!(PeriodMatrix::new(vec![vec![Complex64::new(0.0, -1.0)]]).is_err());
        assert!(PeriodMatrix::new(vec![vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.1)], vec![Complex64::new(0.0, 0.2), Complex64::new(0.0, 1.0)]]).is_err());
        let p = PeriodMatrix::<f64>::scaled_identity(3, 1.0).unwrap();
        assert!(matches!(theta_gram(2, &p, 4, 2), Err(Error::Guard(_))));
    }

    #[test]
    fn quasi_periodic() {
        let p = PeriodMatrix::new(vec![vec![Complex64::new(0.1, 1.2), Complex64::new(0.3, 0.25)], vec![Complex64::new(0.3, 0.25), Complex64::new(-0.2, 0.8)]]).unwrap();
        let z = p.point(&[0.3, 0.7], &[0.2, 0.9]);
        assert!(quasi_periodicity_residual(2, &p, &z, 12).unwrap() < 1e-10);
    }

    #[test]
    fn gram_is_identity_and_hermitian() {
        let p = PeriodMatrix::<f64>::scaled_identity(1, 1.0).unwrap();
        let gm = theta_gram(2, &p, 64, 12).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let e = if a == b { 1.0 } else { 0.0 };
                assert!((gm[(a, b)] - Complex64::new(e, 0.0)).norm() < 1e-6);
                assert!((gm[(a, b)] - gm[(b, a)].conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn single_precision_works() {
        let p = PeriodMatrix::<f32>::scaled_identity(1, 1.0).unwrap();
        let v = theta_eval(&[0], 2, &p, &[Complex::new(0.0f32, 0.0)], 4).unwrap();
        assert!((v.value.re - 1.003_735_f32).abs() < 1e-5);
    }

    #[test]
    fn group_law_coherent() {
        let p = PeriodMatrix::<f64>::scaled_identity(1, 1.3).unwrap();
        let z = p.point(&[0.4], &[0.3]);
        let x = HeisElement::new(vec![1], vec![3], 2).unwrap();
        let y = HeisElement::new(vec![2], vec![1], -1).unwrap();
        assert!(group_law_residual(4, &p, &z, 10, &x, &y).unwrap() < 1e-9);
    }
}
