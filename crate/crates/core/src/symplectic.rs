//! H_1 of a genus-g surface with its intersection form, Lagrangians, and the Maslov index.
//!
//! Coordinates: x = Σ p_i a_i + q_i b_i is stored as (p_1..p_g, q_1..q_g), and
//! ω(a_i, b_j) = δ_ij.

use crate::error::{Error, Result};
use crate::linalg::{self, rat, RatMatrix};
use crate::matrix::Matrix;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SpMatrix = Matrix<i64>;

pub fn omega(x: &[i64], y: &[i64]) -> i64 {
    let g = x.len() / 2;
    (0..g).map(|i| x[i] * y[g + i] - x[g + i] * y[i]).sum()
}

pub fn omega_rat(x: &[BigRational], y: &[BigRational]) -> BigRational {
    let g = x.len() / 2;
    let mut acc = BigRational::zero();
    for i in 0..g {
        acc += &x[i] * &y[g + i] - &x[g + i] * &y[i];
    }
    acc
}

/// The Gram matrix J of ω in the standard basis.
pub fn standard_form(g: usize) -> SpMatrix {
    Matrix::from_fn(2 * g, 2 * g, |i, j| {
        if j == i + g && i < g {
            1
        } else if i == j + g && j < g {
            -1
        } else {
            0
        }
    })
}

pub fn is_symplectic(m: &SpMatrix) -> bool {
    if !m.is_square() || !m.rows().is_multiple_of(2) {
        return false;
    }
    let j = standard_form(m.rows() / 2);
    m.transpose().mul(&j).and_then(|x| x.mul(m)).map(|x| x == j).unwrap_or(false)
}

/// Inverse of a symplectic matrix, -J Mᵀ J.
pub fn sp_inverse(m: &SpMatrix) -> SpMatrix {
    let j = standard_form(m.rows() / 2);
    j.mul(&m.transpose()).and_then(|x| x.mul(&j)).expect("square").map(|x| -x)
}

pub fn is_primitive(c: &[i64]) -> bool {
    c.iter().fold(0i64, |acc, &x| acc.gcd(&x)) == 1
}

/// Symplectic transvection x ↦ x + ε ω(x, c) c, the action of a Dehn twist along c.
pub fn transvection(c: &[i64], eps: i64) -> Result<SpMatrix> {
    if !c.len().is_multiple_of(2) || c.is_empty() {
        return Err(Error::Shape("class must have even length 2g".into()));
    }
    if !is_primitive(c) {
        return Err(Error::Invalid(format!("class {c:?} is not primitive")));
    }
    if eps.abs() != 1 {
        return Err(Error::Invalid("twist sign must be ±1".into()));
    }
    let n = c.len();
    Ok(Matrix::from_fn(n, n, |i, k| {
        let mut e = vec![0; n];
        e[k] = 1;
        (i == k) as i64 + eps * omega(&e, c) * c[i]
    }))
}

/// Block sum of symplectic matrices in total coordinates (all a's, then all b's).
pub fn direct_sum_sp(parts: &[SpMatrix]) -> SpMatrix {
    let genera: Vec<usize> = parts.iter().map(|m| m.rows() / 2).collect();
    let total: usize = genera.iter().sum();
    let mut out = Matrix::zeros(2 * total, 2 * total);
    let mut offset = 0;
    for (m, &g) in parts.iter().zip(&genera) {
        let place = |i: usize| if i < g { offset + i } else { total + offset + i - g };
        for i in 0..2 * g {
            for j in 0..2 * g {
                out[(place(i), place(j))] = m[(i, j)];
            }
        }
        offset += g;
    }
    out
}

/// A Lagrangian subspace of H_1(Σ_g; Q), stored by its canonical reduced basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Lagrangian {
    genus: usize,
    /// 2g × g, columns in reduced echelon form (as rows of the transpose).
    basis: RatMatrix,
}

impl Lagrangian {
    /// Span of arbitrary rational vectors; must be isotropic of dimension g.
    pub fn from_rational_span(genus: usize, vectors: &[Vec<BigRational>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != 2 * genus) {
            return Err(Error::Shape(format!("Lagrangian vectors must have length {}", 2 * genus)));
        }
        for x in vectors {
            for y in vectors {
                if !omega_rat(x, y).is_zero() {
                    return Err(Error::NotLagrangian("span is not isotropic".into()));
                }
            }
        }
        // rows = vectors; rref gives a canonical basis of the span
        let rows = Matrix::from_fn(vectors.len(), 2 * genus, |i, j| vectors[i][j].clone());
        let (r, piv) = linalg::rref(&rows);
        if piv.len() != genus {
            return Err(Error::NotLagrangian(format!("span has dimension {} instead of {genus}", piv.len())));
        }
        let basis = Matrix::from_fn(2 * genus, genus, |i, j| r[(j, i)].clone());
        Ok(Lagrangian { genus, basis })
    }

    pub fn from_integer_span(genus: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let v: Vec<Vec<BigRational>> = vectors.iter().map(|x| x.iter().map(|&c| rat(c)).collect()).collect();
        Self::from_rational_span(genus, &v)
    }

    /// A Lagrangian subgroup of H_1(Σ_g; Z): the span must also be a direct summand.
    pub fn subgroup(genus: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let l = Self::from_integer_span(genus, vectors)?;
        let m = Matrix::from_fn(2 * genus, vectors.len(), |i, j| vectors[j][i]);
        if genus > 0 && !linalg::maximal_minor_gcd(&m, genus).is_one() {
            return Err(Error::NotLagrangian("span is not a direct summand of Z^{2g}".into()));
        }
        Ok(l)
    }

    /// span(b_1, …, b_g).
    pub fn standard(genus: usize) -> Self {
        let basis = Matrix::from_fn(2 * genus, genus, |i, j| if i == genus + j { rat(1) } else { rat(0) });
        Lagrangian { genus, basis }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigRational>> {
        (0..self.genus).map(|j| self.basis.column(j)).collect()
    }

    /// Primitive integer spanning vectors.
    pub fn integer_basis(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.basis_vectors()
            .iter()
            .map(|v| linalg::primitive_integer(v).iter().map(|x| x.to_i64().expect("small entries")).collect())
            .collect()
    }

    pub fn image(&self, m: &SpMatrix) -> Self {
        let mr = linalg::to_rational(m);
        let vs: Vec<Vec<BigRational>> = self.basis_vectors().iter().map(|v| mr.apply(v).expect("shape")).collect();
        Self::from_rational_span(self.genus, &vs).expect("symplectic images of Lagrangians are Lagrangian")
    }

    /// Direct sum in H_1 of a disjoint union, components in order.
    pub fn direct_sum(parts: &[Lagrangian]) -> Self {
        let total: usize = parts.iter().map(|l| l.genus).sum();
        let mut vecs = Vec::new();
        let mut offset = 0;
        for l in parts {
            for v in l.basis_vectors() {
                let mut w = vec![rat(0); 2 * total];
                for i in 0..l.genus {
                    w[offset + i] = v[i].clone();
                    w[total + offset + i] = v[l.genus + i].clone();
                }
                vecs.push(w);
            }
            offset += l.genus;
        }
        Self::from_rational_span(total, &vecs).expect("direct sum of Lagrangians")
    }

    /// Split a Lagrangian of the total space into components of the given genera,
    /// failing when it is not a direct sum.
    pub fn split(&self, genera: &[usize]) -> Result<Vec<Lagrangian>> {
        let total: usize = genera.iter().sum();
        if total != self.genus {
            return Err(Error::Shape("genera do not add up".into()));
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for &g in genera {
            // L ∩ V_i: vectors of L supported on component i
            let outside: Vec<usize> = (0..total)
                .filter(|&k| k < offset || k >= offset + g)
                .flat_map(|k| [k, total + k])
                .collect();
            let cols: Vec<usize> = (0..self.genus).collect();
            let restricted = self.basis.submatrix(&outside, &cols);
            let ker = linalg::kernel(&restricted);
            let vecs: Vec<Vec<BigRational>> = ker
                .iter()
                .map(|c| {
                    let v = self.basis.apply(c).expect("shape");
                    (0..g).map(|i| v[offset + i].clone()).chain((0..g).map(|i| v[total + offset + i].clone())).collect()
                })
                .collect();
            if vecs.len() != g {
                return Err(Error::NotLagrangian("Lagrangian does not split along the boundary components".into()));
            }
            out.push(Lagrangian::from_rational_span(g, &vecs)?);
            offset += g;
        }
        Ok(out)
    }
}

fn check_same_genus(ls: &[&Lagrangian]) -> Result<usize> {
    let g = ls[0].genus;
    if ls.iter().any(|l| l.genus != g) {
        return Err(Error::Shape("Lagrangians of different genus".into()));
    }
    Ok(g)
}

/// Decompose a basis of W = (L1 + L2) ∩ L3 as w = x1 + x2, returning (x1, x2, w) triples.
fn maslov_decomposition(l1: &Lagrangian, l2: &Lagrangian, l3: &Lagrangian) -> Vec<(Vec<BigRational>, Vec<BigRational>, Vec<BigRational>)> {
    let g = l1.genus;
    let n = 2 * g;
    // kernel of [L1 | L2 | -L3]
    let m = Matrix::from_fn(n, 3 * g, |i, j| match j / g {
        0 => l1.basis[(i, j)].clone(),
        1 => l2.basis[(i, j - g)].clone(),
        _ => -l3.basis[(i, j - 2 * g)].clone(),
    });
    let mut triples = Vec::new();
    for k in linalg::kernel(&m) {
        let part = |which: usize, basis: &RatMatrix| -> Vec<BigRational> {
            (0..n).map(|i| (0..g).fold(rat(0), |acc, j| acc + &basis[(i, j)] * &k[which * g + j])).collect()
        };
        triples.push((part(0, &l1.basis), part(1, &l2.basis), part(2, &l3.basis)));
    }
    // keep a basis of W
    let ws: Vec<Vec<BigRational>> = triples.iter().map(|t| t.2.clone()).collect();
    let idx = linalg::independent_columns(&linalg::from_columns(n, &ws));
    idx.into_iter().map(|i| triples[i].clone()).collect()
}

/// Maslov index τ(L1, L2, L3): signature of (x, y) ↦ ω(x_2, y) on (L1 + L2) ∩ L3,
/// where x = x_1 + x_2 with x_i ∈ L_i.
pub fn maslov(l1: &Lagrangian, l2: &Lagrangian, l3: &Lagrangian) -> Result<i64> {
    check_same_genus(&[l1, l2, l3])?;
    let trip = maslov_decomposition(l1, l2, l3);
    let k = trip.len();
    let gram = Matrix::from_fn(k, k, |a, b| omega_rat(&trip[a].1, &trip[b].2));
    if !gram.is_symmetric() {
        return Err(Error::Consistency("Maslov form is not symmetric".into()));
    }
    Ok(linalg::signature(&gram))
}

/// The same index computed from the L1 components: ω(x_2, y) = -ω(x_1, y) on L3.
pub fn maslov_from_first(l1: &Lagrangian, l2: &Lagrangian, l3: &Lagrangian) -> Result<i64> {
    check_same_genus(&[l1, l2, l3])?;
    let trip = maslov_decomposition(l1, l2, l3);
    let k = trip.len();
    let gram = Matrix::from_fn(k, k, |a, b| -omega_rat(&trip[a].0, &trip[b].2));
    if !gram.is_symmetric() {
        return Err(Error::Consistency("Maslov form is not symmetric".into()));
    }
    Ok(linalg::signature(&gram))
}
