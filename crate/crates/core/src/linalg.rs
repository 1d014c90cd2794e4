//! Exact linear algebra over ordered fields (in practice Q) and over Z.

use crate::matrix::Matrix;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// A field with a compatible total order; the exact counterpart of a float type.
pub trait OrderedField: Ring + Num + Signed + PartialOrd {}
impl<T: Ring + Num + Signed + PartialOrd> OrderedField for T {}

pub type RatMatrix = Matrix<BigRational>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn to_rational(m: &Matrix<i64>) -> RatMatrix {
    m.map(|&x| rat(x))
}

/// Reduced row echelon form and pivot columns.
pub fn rref<T: OrderedField>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = T::one() / a[(r, c)].clone();
        for j in 0..cols {
            a[(r, j)] = a[(r, j)].mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in 0..cols {
                    let v = a[(r, j)].mul_ref(&f);
                    a[(i, j)] = a[(i, j)].sub_ref(&v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<T: OrderedField>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel {x : m x = 0}.
pub fn kernel<T: OrderedField>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r[(i, f)].neg_ref();
            }
            v
        })
        .collect()
}

/// Matrix whose columns are the given vectors.
pub fn from_columns<T: Ring>(rows: usize, cols: &[Vec<T>]) -> Matrix<T> {
    Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
}

/// Indices of a maximal linearly independent subset of the columns, greedily from the left.
pub fn independent_columns<T: OrderedField>(m: &Matrix<T>) -> Vec<usize> {
    rref(m).1
}

/// A basis (as columns) of the column space.
pub fn column_space<T: OrderedField>(m: &Matrix<T>) -> Matrix<T> {
    let idx = independent_columns(m);
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.submatrix(&rows, &idx)
}

/// Signature of a symmetric matrix by symmetric Gaussian elimination.
pub fn signature<T: OrderedField>(m: &Matrix<T>) -> i64 {
    assert!(m.is_symmetric(), "signature of a non-symmetric matrix");
    let mut a = m.clone();
    let n = a.rows();
    let mut sig = 0i64;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all diagonal entries vanish: make one nonzero with e_i ← e_i + e_j
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                let Some((i, j)) = pair else { break };
                for k in 0..n {
                    let v = a[(j, k)].clone();
                    a[(i, k)] = a[(i, k)].add_ref(&v);
                }
                for k in 0..n {
                    let v = a[(k, j)].clone();
                    a[(k, i)] = a[(k, i)].add_ref(&v);
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        active.retain(|&i| i != p);
        for &i in &active {
            if a[(i, p)].is_zero() {
                continue;
            }
            let f = a[(i, p)].clone() / d.clone();
            for &j in &active {
                let v = f.mul_ref(&a[(p, j)]);
                a[(i, j)] = a[(i, j)].sub_ref(&v);
            }
        }
        for &i in &active {
            a[(i, p)] = T::zero();
            a[(p, i)] = T::zero();
        }
    }
    sig
}

pub fn int_signature(m: &Matrix<i64>) -> i64 {
    signature(&to_rational(m))
}

/// Determinant of an integer matrix (fraction-free Bareiss elimination).
pub fn det_int(m: &Matrix<BigInt>) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else { return BigInt::zero() };
            for j in 0..n {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(k, j)].clone();
                a[(k, j)] = tmp;
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// gcd of all r×r minors of an integer matrix.
///
/// For a rank-r lattice spanned by the columns of `m`, this is the index of the
/// lattice in its saturation; it equals 1 exactly when the lattice is a direct summand.
pub fn maximal_minor_gcd(m: &Matrix<i64>, r: usize) -> BigInt {
    let rows: Vec<usize> = (0..m.rows()).collect();
    let cols: Vec<usize> = (0..m.cols()).collect();
    let mut g = BigInt::zero();
    for rs in combinations(&rows, r) {
        for cs in combinations(&cols, r) {
            let sub = m.submatrix(&rs, &cs).map(|&x| BigInt::from(x));
            g = g.gcd(&det_int(&sub));
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Scale a rational vector to a primitive integer vector.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
