//! Abelian surgery presentations: a component table plus a symmetric linking matrix.
//!
//! Conventions (identity cylinder over Σ_g, one handle i at a time):
//! the bottom core C₋ⁱ and top core C₊ⁱ are 0-framed and mutually unlinked,
//! the 0-framed surgery annulus Sᵢ has lk(C₋ⁱ, Sᵢ) = +1 and lk(C₊ⁱ, Sᵢ) = −1.
//! A curve of class Σ pⱼaⱼ + qⱼbⱼ pushed into the collar of the bottom boundary
//! links a component X by Σⱼ pⱼ·B[Cⱼ, X] + s·qⱼ·[X = Cⱼ] with s = −1; the
//! a-curves run parallel to the cores and the b-curves are their meridians.
//! These choices are pinned by tests: the identity cylinder gives the
//! identity matrix, the pairing recomputed through it is N^{g/2}·δ, and every
//! twist curve satisfies the exact Egorov identity.

use crate::error::{Error, Result};
use crate::gauss::{quadratic_sum, TSum};
use crate::linalg;
use crate::matrix::Matrix;
use serde::{Deserialize, Serialize};

/// Orientation sign of a b-curve against the core it encircles.
pub const MERIDIAN_SIGN: i64 = -1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    BottomCore { graph: usize, handle: usize },
    TopCore { graph: usize, handle: usize },
    Surgery,
    Embedded,
}

impl Role {
    pub fn is_core(&self) -> bool {
        matches!(self, Role::BottomCore { .. } | Role::TopCore { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbelianLinkData {
    roles: Vec<Role>,
    linking: Matrix<i64>,
}

impl AbelianLinkData {
    pub fn new(roles: Vec<Role>, linking: Matrix<i64>) -> Result<Self> {
        if !linking.is_square() || linking.rows() != roles.len() {
            return Err(Error::Shape(format!(
                "{} components but a {}x{} linking matrix",
                roles.len(),
                linking.rows(),
                linking.cols()
            )));
        }
        if !linking.is_symmetric() {
            return Err(Error::Invalid("linking matrix must be symmetric".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for r in &roles {
            if r.is_core() && !seen.insert(*r) {
                return Err(Error::Invalid(format!("duplicate core {r:?}")));
            }
        }
        Ok(AbelianLinkData { roles, linking })
    }

    pub fn empty() -> Self {
        AbelianLinkData { roles: vec![], linking: Matrix::zeros(0, 0) }
    }

    /// A link in S³ or a closed surgery presentation: surgery rows first.
    pub fn closed(surgery: usize, linking: Matrix<i64>) -> Result<Self> {
        let roles = (0..linking.rows()).map(|i| if i < surgery { Role::Surgery } else { Role::Embedded }).collect();
        Self::new(roles, linking)
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }
    pub fn linking(&self) -> &Matrix<i64> {
        &self.linking
    }
    pub fn len(&self) -> usize {
        self.roles.len()
    }
    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    fn indices(&self, pred: impl Fn(&Role) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| pred(&self.roles[i])).collect()
    }

    pub fn surgery(&self) -> Vec<usize> {
        self.indices(|r| *r == Role::Surgery)
    }
    pub fn embedded(&self) -> Vec<usize> {
        self.indices(|r| *r == Role::Embedded)
    }
    pub fn has_cores(&self) -> bool {
        self.roles.iter().any(Role::is_core)
    }

    /// Bottom cores ordered by (graph, handle).
    pub fn bottom_cores(&self) -> Vec<usize> {
        let mut v = self.indices(|r| matches!(r, Role::BottomCore { .. }));
        v.sort_by_key(|&i| self.roles[i]);
        v
    }

    /// Top cores ordered by (graph, handle).
    pub fn top_cores(&self) -> Vec<usize> {
        let mut v = self.indices(|r| matches!(r, Role::TopCore { .. }));
        v.sort_by_key(|&i| self.roles[i]);
        v
    }

    pub fn bottom_cores_of(&self, graph: usize) -> Vec<usize> {
        let mut v = self.indices(|r| matches!(r, Role::BottomCore { graph: g, .. } if *g == graph));
        v.sort_by_key(|&i| self.roles[i]);
        v
    }

    /// Check that the cores match the boundary genera exactly.
    pub fn check_boundary(&self, bottom: &[usize], top: &[usize]) -> Result<()> {
        let expect = |genera: &[usize], top: bool| -> Vec<Role> {
            genera
                .iter()
                .enumerate()
                .flat_map(|(graph, &g)| {
                    (0..g).map(move |handle| if top { Role::TopCore { graph, handle } } else { Role::BottomCore { graph, handle } })
                })
                .collect()
        };
        let have_b: Vec<Role> = self.bottom_cores().iter().map(|&i| self.roles[i]).collect();
        let have_t: Vec<Role> = self.top_cores().iter().map(|&i| self.roles[i]).collect();
        if have_b != expect(bottom, false) || have_t != expect(top, true) {
            return Err(Error::Shape(format!("core components do not match boundary genera {bottom:?} → {top:?}")));
        }
        Ok(())
    }

    /// Core framings and linkings among cores of one graph must vanish.
    pub fn check_core_conventions(&self) -> Result<()> {
        let graph_of = |r: &Role| match r {
            Role::BottomCore { graph, .. } => Some((0, *graph)),
            Role::TopCore { graph, .. } => Some((1, *graph)),
            _ => None,
        };
        for i in 0..self.len() {
            let Some(gi) = graph_of(&self.roles[i]) else { continue };
            for j in 0..self.len() {
                if graph_of(&self.roles[j]) == Some(gi) && self.linking[(i, j)] != 0 {
                    return Err(Error::Invalid(format!("core components {i} and {j} of one graph must have zero linking/framing")));
                }
            }
        }
        Ok(())
    }

    pub fn surgery_matrix(&self) -> Matrix<i64> {
        let s = self.surgery();
        self.linking.submatrix(&s, &s)
    }

    pub fn surgery_signature(&self) -> i64 {
        linalg::int_signature(&self.surgery_matrix())
    }

    /// Append a component with the given linking row (its own framing last).
    pub fn push(&mut self, role: Role, row: &[i64], framing: i64) -> Result<usize> {
        let n = self.len();
        if row.len() != n {
            return Err(Error::Shape("linking row length".into()));
        }
        let old = &self.linking;
        self.linking = Matrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
            (true, true) => old[(i, j)],
            (true, false) => row[i],
            (false, true) => row[j],
            (false, false) => framing,
        });
        self.roles.push(role);
        Ok(n)
    }

    pub fn remove(&self, drop: &[usize]) -> AbelianLinkData {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !drop.contains(i)).collect();
        AbelianLinkData { roles: keep.iter().map(|&i| self.roles[i]).collect(), linking: self.linking.submatrix(&keep, &keep) }
    }

    pub fn with_roles(&self, roles: Vec<Role>) -> Result<AbelianLinkData> {
        AbelianLinkData::new(roles, self.linking.clone())
    }

    /// Disjoint union; the second presentation's graphs are renumbered after the first's.
    pub fn disjoint_union(&self, other: &AbelianLinkData, bottom_offset: usize, top_offset: usize) -> AbelianLinkData {
        let roles = self
            .roles
            .iter()
            .copied()
            .chain(other.roles.iter().map(|r| match *r {
                Role::BottomCore { graph, handle } => Role::BottomCore { graph: graph + bottom_offset, handle },
                Role::TopCore { graph, handle } => Role::TopCore { graph: graph + top_offset, handle },
                r => r,
            }))
            .collect();
        AbelianLinkData { roles, linking: self.linking.block_diag(&other.linking) }
    }

    /// Push surgery curves into the collar of bottom boundary component `graph`.
    ///
    /// `curves` lists (class, framing offset ε) from the boundary upward; each
    /// curve is a parallel copy of the class on a level surface, framed by
    /// the surface plus ε, which realizes the twist T_c^ε when composed below.
    pub fn insert_bottom_collar(&mut self, graph: usize, curves: &[(Vec<i64>, i64)]) -> Result<()> {
        let cores = self.bottom_cores_of(graph);
        let g = cores.len();
        if curves.iter().any(|(c, _)| c.len() != 2 * g) {
            return Err(Error::Shape(format!("collar curve classes must have length {}", 2 * g)));
        }
        let s = MERIDIAN_SIGN;
        let core_block = self.linking.submatrix(&cores, &cores);
        let base = self.len();
        for (k, (c, eps)) in curves.iter().enumerate() {
            let (p, q) = c.split_at(g);
            let n = self.len();
            let mut row = vec![0i64; n];
            for x in 0..base {
                row[x] = (0..g).map(|j| p[j] * self.linking[(cores[j], x)]).sum();
            }
            for j in 0..g {
                row[cores[j]] += s * q[j];
            }
            for (k2, (c2, _)) in curves[..k].iter().enumerate() {
                // the lower curve sees this one through its a-part only
                let (p2, _) = c2.split_at(g);
                row[base + k2] = (0..g)
                    .map(|j| p2[j] * ((0..g).map(|l| p[l] * core_block[(l, j)]).sum::<i64>() + s * q[j]))
                    .sum();
            }
            let pbp: i64 = (0..g).flat_map(|j| (0..g).map(move |l| (j, l))).map(|(j, l)| p[j] * p[l] * core_block[(j, l)]).sum();
            let pq: i64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
            self.push(Role::Surgery, &row, pbp + s * pq + eps)?;
        }
        Ok(())
    }

    /// Σ over surgery multiplicities of t^{xᵀBx}, with cores and embedded components fixed.
    ///
    /// `fixed` assigns a multiplicity to every non-surgery component (in index order).
    pub fn surgery_sum(&self, level: u32, fixed: &[i64]) -> Result<TSum> {
        let surg = self.surgery();
        let rest: Vec<usize> = (0..self.len()).filter(|i| !surg.contains(i)).collect();
        if fixed.len() != rest.len() {
            return Err(Error::Shape("multiplicity vector length".into()));
        }
        let b = &self.linking;
        let q = b.submatrix(&surg, &surg);
        let l: Vec<i64> = surg.iter().map(|&s| rest.iter().zip(fixed).map(|(&f, &x)| b[(s, f)] * x).sum()).collect();
        let mut c = 0i64;
        for (a, &fa) in rest.iter().enumerate() {
            for (bb, &fb) in rest.iter().enumerate() {
                c += b[(fa, fb)] * fixed[a] * fixed[bb];
            }
        }
        quadratic_sum(level, &q, &l, c.rem_euclid(2 * level as i64))
    }

    // ---- Kirby calculus -------------------------------------------------

    /// Blow up: add an isolated ±1-framed surgery unknot.
    pub fn kirby_k1(&self, sign: i64) -> Result<AbelianLinkData> {
        if sign.abs() != 1 {
            return Err(Error::Invalid("k1 framing must be ±1".into()));
        }
        let mut d = self.clone();
        d.push(Role::Surgery, &vec![0; self.len()], sign)?;
        Ok(d)
    }

    /// Blow down an isolated ±1-framed surgery unknot.
    pub fn kirby_k1_inverse(&self, index: usize) -> Result<AbelianLinkData> {
        self.check_index(index)?;
        let isolated = (0..self.len()).all(|j| j == index || self.linking[(index, j)] == 0);
        if self.roles[index] != Role::Surgery || !isolated || self.linking[(index, index)].abs() != 1 {
            return Err(Error::Invalid("component is not an isolated ±1-framed surgery unknot".into()));
        }
        Ok(self.remove(&[index]))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::Invalid(format!("component index {i} out of range")));
        }
        Ok(())
    }

    /// Slide component `i` over component `over` (a surgery component): B ↦ EᵀBE,
    /// where the band sum adds ±(class of `over`) to component i.
    fn slide(&self, i: usize, over: usize, sign: i64) -> Result<AbelianLinkData> {
        self.check_index(i)?;
        self.check_index(over)?;
        if i == over {
            return Err(Error::Invalid("cannot slide a component over itself".into()));
        }
        if sign.abs() != 1 {
            return Err(Error::Invalid("slide sign must be ±1".into()));
        }
        if self.roles[over] != Role::Surgery {
            return Err(Error::Invalid("slides must go over a surgery component".into()));
        }
        let n = self.len();
        let e = Matrix::from_fn(n, n, |r, c| (r == c) as i64 + if r == over && c == i { sign } else { 0 });
        let linking = e.transpose().mul(&self.linking)?.mul(&e)?;
        Ok(AbelianLinkData { roles: self.roles.clone(), linking })
    }

    /// Handle slide of surgery component `i` over surgery component `over`.
    pub fn kirby_k2(&self, i: usize, over: usize, sign: i64) -> Result<AbelianLinkData> {
        self.check_index(i)?;
        if self.roles[i] != Role::Surgery {
            return Err(Error::Invalid("k2 slides a surgery component".into()));
        }
        self.slide(i, over, sign)
    }

    /// Slide a ribbon-graph edge (core) or embedded component over a surgery component.
    pub fn slide_edge(&self, i: usize, over: usize, sign: i64) -> Result<AbelianLinkData> {
        self.check_index(i)?;
        if self.roles[i] == Role::Surgery {
            return Err(Error::Invalid("slide_edge moves a core or embedded component".into()));
        }
        self.slide(i, over, sign)
    }

    /// Reverse the orientation of one component.
    pub fn reverse(&self, i: usize) -> Result<AbelianLinkData> {
        self.check_index(i)?;
        let n = self.len();
        let d = Matrix::from_fn(n, n, |r, c| if r != c { 0 } else if r == i { -1 } else { 1 });
        Ok(AbelianLinkData { roles: self.roles.clone(), linking: d.mul(&self.linking)?.mul(&d)? })
    }
}
