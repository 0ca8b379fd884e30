//! Lattice specifications, nearest-point reduction, shell enumeration, and
//! the built-in catalog.
//!
//! A [`LatticeSpec`] is a full-rank discrete additive subgroup of `R^d` given
//! by exact generators, together with the inversion the CF system will use.
//! The Dirichlet cell `K` of the lattice is the set of points at least as
//! close to `0` as to any other lattice point; `[x]` (see [`LatticeSpec::nearest_point`])
//! reduces a point into `K`, breaking boundary ties toward the
//! lexicographically smallest remainder.

mod polytope;
mod properties;

pub use polytope::DirichletCell;
pub(crate) use polytope::int_det as polytope_int_det;
pub use properties::{check_properties, PropertyReport, Verdict};

/// Errors from [`check_properties`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PropertyReportError {
    #[error("norm bound {0} too small (need >= 3)")]
    BoundTooSmall(i64),
}

use crate::algebra::{DivisionAlgebra, InversionSpec, Matrix, Vector};
use crate::scalar::QExt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

/// Errors from lattice construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("generators do not span R^d")]
    NotFullRank,
    #[error("lattice is not unit-generated (witness in basis coords: {0:?})")]
    NotUnitGenerated(Vec<i64>),
    #[error("unknown lattice {0:?}")]
    UnknownLattice(String),
    #[error("catalog parse failure: {0}")]
    Catalog(String),
}

/// A lattice plus the inversion of its CF system.
#[derive(Debug)]
pub struct LatticeSpec {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<Vector>,
    /// Declared field discriminant (0 = rational coordinates).
    pub disc: u64,
    pub inversion: InversionSpec,
    /// Division algebra realizing `1/z`, when one exists for this lattice.
    pub algebra: Option<DivisionAlgebra>,
    basis: Matrix,
    basis_inv: Matrix,
    units: OnceLock<Vec<Vector>>,
    cell: OnceLock<DirichletCell>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CatalogEntry {
    name: String,
    dim: usize,
    disc: u64,
    inversion: String,
    algebra: Option<String>,
    generators: Vec<Vec<String>>,
}

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

/// Parse the built-in catalog (ships as `data/catalog.json`).
pub fn catalog() -> Vec<LatticeSpec> {
    parse_catalog(CATALOG_JSON).expect("built-in catalog must parse")
}

/// Look a lattice up by name.
pub fn by_name(name: &str) -> Result<LatticeSpec, LatticeError> {
    catalog()
        .into_iter()
        .find(|l| l.name == name)
        .ok_or_else(|| LatticeError::UnknownLattice(name.to_string()))
}

/// Parse a catalog from its JSON rendering.
pub fn parse_catalog(json: &str) -> Result<Vec<LatticeSpec>, LatticeError> {
    let entries: Vec<CatalogEntry> =
        serde_json::from_str(json).map_err(|e| LatticeError::Catalog(e.to_string()))?;
    entries
        .into_iter()
        .map(|e| {
            let generators = e
                .generators
                .iter()
                .map(|coords| {
                    let parsed: Result<Vec<QExt>, _> = coords.iter().map(|c| c.parse()).collect();
                    parsed.map(Vector)
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|err| LatticeError::Catalog(err.to_string()))?;
            let inversion = match e.inversion.as_str() {
                "euclidean" => InversionSpec::euclidean(e.dim),
                "conjugate_reciprocal" => InversionSpec::conjugate_reciprocal(e.dim),
                "negated_reciprocal" => InversionSpec::negated_reciprocal(e.dim),
                other => return Err(LatticeError::Catalog(format!("inversion {other:?}"))),
            };
            let algebra = match e.algebra.as_deref() {
                None => None,
                Some("C") => Some(DivisionAlgebra::C),
                Some("H") => Some(DivisionAlgebra::H),
                Some("O") => Some(DivisionAlgebra::O),
                Some(other) => return Err(LatticeError::Catalog(format!("algebra {other:?}"))),
            };
            LatticeSpec::new(&e.name, generators, e.disc, inversion, algebra)
        })
        .collect()
}

impl LatticeSpec {
    pub fn new(
        name: &str,
        generators: Vec<Vector>,
        disc: u64,
        inversion: InversionSpec,
        algebra: Option<DivisionAlgebra>,
    ) -> Result<Self, LatticeError> {
        let dim = generators.len();
        assert!(generators.iter().all(|g| g.dim() == dim));
        // basis matrix with generators as columns: x = B c
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| generators[j][i].clone()).collect())
            .collect();
        let basis = Matrix { rows };
        let basis_inv = invert_matrix(&basis).ok_or(LatticeError::NotFullRank)?;
        Ok(LatticeSpec {
            name: name.to_string(),
            dim,
            generators,
            disc,
            inversion,
            algebra,
            basis,
            basis_inv,
            units: OnceLock::new(),
            cell: OnceLock::new(),
        })
    }

    /// Exact basis coordinates of an ambient point.
    pub fn coords(&self, x: &Vector) -> Vector {
        self.basis_inv.apply(x)
    }

    /// The ambient point with the given integer basis coordinates.
    pub fn point(&self, coords: &[i64]) -> Vector {
        let mut acc = Vector::zeros(self.dim);
        for (c, g) in coords.iter().zip(&self.generators) {
            acc = &acc + &g.scale(&QExt::from_int(*c));
        }
        acc
    }

    /// Integer basis coordinates of a lattice point (panics if `x` is not in
    /// the lattice; use [`LatticeSpec::try_coords_int`] to test membership).
    pub fn coords_int(&self, x: &Vector) -> Vec<i64> {
        self.try_coords_int(x).expect("not a lattice point")
    }

    /// Integer basis coordinates if `x` lies in the lattice.
    pub fn try_coords_int(&self, x: &Vector) -> Option<Vec<i64>> {
        let c = self.coords(x);
        c.0.iter()
            .map(|q| {
                let r = q.as_rational()?;
                if r.is_integer() {
                    r.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.try_coords_int(x).is_some()
    }

    /// Exact rational Gram matrix of the generators (entries of an integral
    /// lattice lie in (1/2)Z).
    pub fn gram(&self) -> Vec<Vec<BigRational>> {
        self.generators
            .iter()
            .map(|gi| {
                self.generators
                    .iter()
                    .map(|gj| {
                        gi.dot(gj)
                            .as_rational()
                            .expect("integral-lattice Gram entries are rational")
                            .clone()
                    })
                    .collect()
            })
            .collect()
    }

    /// The norm-1 lattice points (shell 1), cached.
    pub fn units(&self) -> &[Vector] {
        self.units.get_or_init(|| self.enumerate_shell(1))
    }

    /// The Dirichlet cell (facet normals, vertices, circumradius), cached.
    /// Vertex enumeration is exact; see [`DirichletCell`].
    pub fn dirichlet_cell(&self) -> &DirichletCell {
        self.cell.get_or_init(|| DirichletCell::build(self))
    }

    /// Gram matrix scaled to integers: `(M, s)` with `M = s * Gram`.
    pub(crate) fn gram_scaled(&self) -> (Vec<Vec<i64>>, i64) {
        let gram = self.gram();
        let mut scale: i64 = 1;
        for row in &gram {
            for e in row {
                let den = e.denom().to_i64().expect("small Gram denominators");
                scale = num_integer::lcm(scale, den.abs().max(1));
            }
        }
        let m = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let v = e * BigRational::from_integer(scale.into());
                        v.to_integer().to_i64().expect("small Gram entries")
                    })
                    .collect()
            })
            .collect();
        (m, scale)
    }

    /// Integer basis coordinates of all nonzero points with
    /// `|z|^2 <= num/den`, decided exactly in integer arithmetic.
    pub(crate) fn coords_norm_le(&self, num: i64, den: i64) -> Vec<Vec<i64>> {
        let (m, s) = self.gram_scaled();
        let bound_f = num as f64 / den as f64;
        let chol = self.cholesky_f64();
        let mut out = Vec::new();
        let mut coords = vec![0i64; self.dim];
        self.shell_rec(&chol, bound_f + 1e-9, self.dim, &mut coords, &mut |c| {
            if c.iter().all(|&x| x == 0) {
                return;
            }
            // c^T M c * den <= s * num  <=>  |z|^2 <= num/den
            if quad_form(&m, c) * (den as i128) <= (s as i128) * (num as i128) {
                out.push(c.to_vec());
            }
        });
        out
    }

    /// Integer basis coordinates of all points with `z . z = n` exactly.
    pub fn shell_coords(&self, n: i64) -> Vec<Vec<i64>> {
        if n < 0 {
            return Vec::new();
        }
        if n == 0 {
            return vec![vec![0; self.dim]];
        }
        let (m, s) = self.gram_scaled();
        let chol = self.cholesky_f64();
        let mut out = Vec::new();
        let mut coords = vec![0i64; self.dim];
        self.shell_rec(&chol, n as f64 + 1e-9, self.dim, &mut coords, &mut |c| {
            if quad_form(&m, c) == (s as i128) * (n as i128) {
                out.push(c.to_vec());
            }
        });
        out
    }

    /// All lattice points `z` with `z . z = n`, exactly.
    ///
    /// Bounded coordinate enumeration through an f64 Cholesky factorization
    /// of the Gram matrix with widened bounds, followed by an exact integer
    /// filter, so the result is both complete and sound.
    pub fn enumerate_shell(&self, n: i64) -> Vec<Vector> {
        self.shell_coords(n).iter().map(|c| self.point(c)).collect()
    }

    /// All nonzero lattice points with `|z|^2 <= bound` (exact filter).
    pub(crate) fn enumerate_norm_le(&self, bound: &BigRational) -> Vec<Vector> {
        let num = bound.numer().to_i64().expect("small bound");
        let den = bound.denom().to_i64().expect("small bound");
        self.coords_norm_le(num, den)
            .iter()
            .map(|c| self.point(c))
            .collect()
    }

    fn cholesky_f64(&self) -> Vec<Vec<f64>> {
        let gram_f: Vec<Vec<f64>> = self
            .gram()
            .iter()
            .map(|row| row.iter().map(|e| e.to_f64().unwrap()).collect())
            .collect();
        cholesky(&gram_f).expect("Gram matrix must be positive definite")
    }

    // Enumerate integer vectors with quadratic form value <= bound, using the
    // upper-triangular Cholesky factor R (form = |R c|^2). Margins of one
    // whole unit on each coordinate bound absorb float error.
    fn shell_rec(
        &self,
        chol: &[Vec<f64>],
        bound: f64,
        level: usize,
        coords: &mut [i64],
        visit: &mut dyn FnMut(&[i64]),
    ) {
        if level == 0 {
            visit(coords);
            return;
        }
        let i = level - 1;
        // residual after fixing coords[level..]: center and radius for c_i
        let mut offset = 0.0;
        for j in level..self.dim {
            offset += chol[i][j] * coords[j] as f64;
        }
        let mut used = 0.0;
        for k in level..self.dim {
            let mut s = 0.0;
            for j in k..self.dim {
                s += chol[k][j] * coords[j] as f64;
            }
            used += s * s;
        }
        let remaining = bound - used;
        if remaining < -1e-6 {
            return;
        }
        let radius = remaining.max(0.0).sqrt();
        let center = -offset / chol[i][i];
        let half = radius / chol[i][i];
        let lo = (center - half).floor() as i64 - 1;
        let hi = (center + half).ceil() as i64 + 1;
        for c in lo..=hi {
            coords[i] = c;
            self.shell_rec(chol, bound, level - 1, coords, visit);
        }
        coords[i] = 0;
    }

    /// Nearest lattice point `[x]` with the boundary rule: among all nearest
    /// points, pick the one whose remainder `x - z` is lexicographically
    /// smallest.
    ///
    /// Correctness leans on the Dirichlet cell's facet normals: a candidate
    /// is optimal iff no facet constraint is violated, and each violated
    /// constraint yields a strictly closer candidate.
    pub fn nearest_point(&self, x: &Vector) -> Vector {
        let normals = &self.dirichlet_cell().normals;
        let c = self.coords(x);
        let mut z_coords: Vec<i64> = c
            .0
            .iter()
            .map(|q| round_qext_to_int(q))
            .collect();
        let mut z = self.point(&z_coords);
        // greedy descent: translate by any facet vector that certifies a
        // closer representative
        loop {
            let r = x - &z;
            let mut best: Option<(QExt, &Vector)> = None;
            for (v, rhs) in normals {
                let dot = v.dot(&r);
                let excess = &dot - rhs;
                if excess.sign() > 0 {
                    let better = match &best {
                        None => true,
                        Some((e, _)) => excess.cmp_exact(e) == std::cmp::Ordering::Greater,
                    };
                    if better {
                        best = Some((excess, v));
                    }
                }
            }
            match best {
                Some((_, v)) => {
                    let vc = self.coords_int(v);
                    for (zc, d) in z_coords.iter_mut().zip(&vc) {
                        *zc += d;
                    }
                    z = self.point(&z_coords);
                }
                None => break,
            }
        }
        // boundary ties: walk the equal-distance representatives reachable by
        // active facet moves and keep the lexicographically smallest remainder
        let r = x - &z;
        let active: Vec<&Vector> = normals
            .iter()
            .filter(|(v, rhs)| v.dot(&r) == *rhs)
            .map(|(v, _)| v)
            .collect();
        if !active.is_empty() {
            let mut best_r = r.clone();
            let mut best_z = z.clone();
            let mut seen = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(format!("{r}"));
            queue.push_back((r, z));
            while let Some((cur_r, cur_z)) = queue.pop_front() {
                if cur_r.lex_cmp(&best_r) == std::cmp::Ordering::Less {
                    best_r = cur_r.clone();
                    best_z = cur_z.clone();
                }
                for (v, rhs) in normals {
                    if v.dot(&cur_r) == *rhs {
                        let next_r = &cur_r - v;
                        let key = format!("{next_r}");
                        if seen.insert(key) {
                            queue.push_back((next_r, &cur_z + v));
                        }
                    }
                }
            }
            return best_z;
        }
        z
    }

    /// Remainder `x - [x]`, the representative of `x` in `K`.
    pub fn reduce(&self, x: &Vector) -> Vector {
        x - &self.nearest_point(x)
    }

    /// Membership in the closed cell: every facet inequality holds.
    pub fn in_closed_cell(&self, x: &Vector) -> bool {
        self.dirichlet_cell()
            .normals
            .iter()
            .all(|(v, rhs)| (&v.dot(x) - rhs).sign() <= 0)
    }

    /// Float data for the numerical backend: basis, inverse basis, twist,
    /// and unit facet data.
    pub fn f64_data(&self) -> LatticeF64 {
        let to_f = |m: &Matrix| {
            m.rows
                .iter()
                .map(|r| r.iter().map(|e| e.to_f64()).collect())
                .collect::<Vec<Vec<f64>>>()
        };
        LatticeF64 {
            dim: self.dim,
            basis: to_f(&self.basis),
            basis_inv: to_f(&self.basis_inv),
            twist: to_f(&self.inversion.twist),
            normals: self
                .dirichlet_cell()
                .normals
                .iter()
                .map(|(v, rhs)| (v.to_f64(), rhs.to_f64()))
                .collect(),
            generators: self.generators.iter().map(|g| g.to_f64()).collect(),
        }
    }
}

/// Float mirror of the lattice data used by sampling backends.
#[derive(Debug, Clone)]
pub struct LatticeF64 {
    pub dim: usize,
    pub basis: Vec<Vec<f64>>,
    pub basis_inv: Vec<Vec<f64>>,
    pub twist: Vec<Vec<f64>>,
    pub normals: Vec<(Vec<f64>, f64)>,
    pub generators: Vec<Vec<f64>>,
}

impl LatticeF64 {
    pub fn mat_apply(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
        m.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Float nearest point (basis rounding plus greedy facet descent).
    pub fn nearest_point(&self, x: &[f64]) -> Vec<f64> {
        let c = Self::mat_apply(&self.basis_inv, x);
        let rounded: Vec<f64> = c.iter().map(|v| v.round()).collect();
        let mut z = Self::mat_apply(&self.basis, &rounded);
        loop {
            let r: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a - b).collect();
            let mut best_excess = 1e-12;
            let mut best_v: Option<&Vec<f64>> = None;
            for (v, rhs) in &self.normals {
                let dot: f64 = v.iter().zip(&r).map(|(a, b)| a * b).sum();
                if dot - rhs > best_excess {
                    best_excess = dot - rhs;
                    best_v = Some(v);
                }
            }
            match best_v {
                Some(v) => {
                    for (zi, vi) in z.iter_mut().zip(v) {
                        *zi += vi;
                    }
                }
                None => break,
            }
        }
        z
    }
}

fn invert_matrix(m: &Matrix) -> Option<Matrix> {
    let d = m.dim();
    let mut cols = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = Vector::zeros(d);
        e.0[j] = QExt::one();
        cols.push(m.solve(&e)?);
    }
    let rows = (0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect();
    Some(Matrix { rows })
}

/// Round an exact scalar to the nearest integer (half away from zero is fine
/// here; exact ties are repaired by the caller's descent loop).
fn round_qext_to_int(q: &QExt) -> i64 {
    let approx = q.to_f64();
    let mut best = approx.round() as i64;
    // fix up against exact comparisons in a +-2 window
    let mut best_d: Option<QExt> = None;
    for cand in (best - 2)..=(best + 2) {
        let diff = q - &QExt::from_int(cand);
        let dd = &diff * &diff;
        let better = match &best_d {
            None => true,
            Some(cur) => dd.cmp_exact(cur) == std::cmp::Ordering::Less,
        };
        if better {
            best_d = Some(dd);
            best = cand;
        }
    }
    best
}

fn quad_form(m: &[Vec<i64>], c: &[i64]) -> i128 {
    let mut acc: i128 = 0;
    for (i, &ci) in c.iter().enumerate() {
        if ci == 0 {
            continue;
        }
        for (j, &cj) in c.iter().enumerate() {
            if cj != 0 {
                acc += m[i][j] as i128 * ci as i128 * cj as i128;
            }
        }
    }
    acc
}

fn cholesky(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    // upper-triangular R with R^T R = G
    let d = g.len();
    let mut r = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in i..d {
            let mut s = g[i][j];
            for k in 0..i {
                s -= r[k][i] * r[k][j];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                r[i][j] = s.sqrt();
            } else {
                r[i][j] = s / r[i][i];
            }
        }
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_parses_with_ten_entries() {
        let cat = catalog();
        assert_eq!(cat.len(), 10);
        let names: Vec<&str> = cat.iter().map(|l| l.name.as_str()).collect();
        assert!(names.contains(&"hurwitz"));
        assert!(names.contains(&"cayley"));
        assert!(names.contains(&"truncated-octahedron"));
    }

    #[test]
    fn shell_counts() {
        let zi = by_name("hurwitz").unwrap();
        assert_eq!(zi.enumerate_shell(1).len(), 4);

        let gaus = by_name("gausenstein").unwrap();
        assert_eq!(gaus.enumerate_shell(3).len(), 12);

        // brute-force oracle for Z^3, n = 2: integer points in [-2, 2]^3
        let mut count = 0;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    if a * a + b * b + c * c == 2 {
                        count += 1;
                    }
                }
            }
        }
        let z3 = by_name("z3").unwrap();
        assert_eq!(z3.enumerate_shell(2).len(), count);
        assert_eq!(count, 12);
    }

    #[test]
    fn unit_counts() {
        for (name, expect) in [
            ("z", 2),
            ("hurwitz", 4),
            ("eisenstein", 6),
            ("hurwitz-quaternion", 24),
            ("gausenstein", 12),
            ("cayley", 240),
            ("fcc", 12),
            ("hex-prism", 8),
            ("z3", 6),
        ] {
            let l = by_name(name).unwrap();
            assert_eq!(l.units().len(), expect, "units of {name}");
        }
    }

    #[test]
    fn nearest_point_square_lattice() {
        let zi = by_name("hurwitz").unwrap();
        let x = Vector::from_ratios(&[(12, 10), (-16, 10)]);
        assert_eq!(zi.nearest_point(&x), Vector::from_ints(&[1, -2]));
    }

    #[test]
    fn nearest_point_hurwitz_quaternion_half_point() {
        let h = by_name("hurwitz-quaternion").unwrap();
        let x = Vector::from_ratios(&[(2, 5), (2, 5), (2, 5), (2, 5)]);
        let expected = Vector::from_ratios(&[(1, 2), (1, 2), (1, 2), (1, 2)]);
        assert_eq!(h.nearest_point(&x), expected);
    }

    #[test]
    fn nearest_point_fcc_brute_force_oracle() {
        let fcc = by_name("fcc").unwrap();
        // x = (0.9/sqrt(2), 0.9/sqrt(2), 0)
        let x = Vector(vec![
            QExt::sqrt_term(9, 20, 2),
            QExt::sqrt_term(9, 20, 2),
            QExt::zero(),
        ]);
        let got = fcc.nearest_point(&x);
        // oracle: brute force over basis coordinates in a box
        let mut best: Option<(QExt, Vector)> = None;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    let z = fcc.point(&[a, b, c]);
                    let d = x.dist_sq(&z);
                    let better = match &best {
                        None => true,
                        Some((cur, _)) => d.cmp_exact(cur) == std::cmp::Ordering::Less,
                    };
                    if better {
                        best = Some((d, z));
                    }
                }
            }
        }
        let (_, oracle) = best.unwrap();
        assert_eq!(got, oracle);
        let expected = Vector(vec![
            QExt::sqrt_term(1, 2, 2),
            QExt::sqrt_term(1, 2, 2),
            QExt::zero(),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn nearest_point_tie_takes_lex_smallest_remainder() {
        // 1D: x = 5/2 sits between 2 and 3; remainder -1/2 beats +1/2.
        let z = by_name("z").unwrap();
        let x = Vector::from_ratios(&[(5, 2)]);
        assert_eq!(z.nearest_point(&x), Vector::from_ints(&[3]));
    }

    #[test]
    fn equivariance_under_lattice_translation() {
        let eis = by_name("eisenstein").unwrap();
        let x = Vector::from_ratios(&[(3, 7), (2, 9)]);
        let g = eis.point(&[2, -1]);
        let lhs = eis.nearest_point(&(&x + &g));
        let rhs = &eis.nearest_point(&x) + &g;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduced_point_is_in_cell() {
        let fcc = by_name("fcc").unwrap();
        let x = Vector::from_ratios(&[(17, 13), (-5, 11), (3, 7)]);
        let r = fcc.reduce(&x);
        assert!(fcc.in_closed_cell(&r));
    }

    #[test]
    fn gram_is_half_integral_for_integral_lattices() {
        // 2 z.w is an integer on integral lattices; the truncated
        // octahedron entry is deliberately non-integral and is skipped.
        for l in catalog() {
            if l.name == "truncated-octahedron" {
                continue;
            }
            for row in l.gram() {
                for e in row {
                    let doubled = e * BigRational::from_integer(2.into());
                    assert!(doubled.is_integer(), "lattice {} Gram", l.name);
                }
            }
        }
    }
}
