//! Exact geometry of the Dirichlet cell: facet constraints, vertex
//! enumeration, circumradius, and point-to-cell distance.
//!
//! Vertices are intersections of `d` independent active constraints that
//! satisfy every other constraint. Enumeration is a depth-first search over
//! ordered constraint subsets, pruned by the exact squared norm of the
//! minimum-norm point of the current affine subspace (a vertex inside a cell
//! of circumradius `r` forces that minimum below `r^2`).
//!
//! For the octonion lattice (240 facets in dimension 8) plain enumeration is
//! hopeless, so the search prunes branches up to lattice symmetry: unit
//! multiplications give exactly verified orthogonal automorphisms of the
//! lattice, and at each node only one representative per orbit of the
//! remaining candidates is explored (orbital branching). Every discarded
//! branch is mapped into a kept branch by a verified isometry, so the maximum
//! vertex norm is preserved; for small dimensions the same search runs
//! without symmetry and doubles as the oracle in tests.

use super::LatticeSpec;
use crate::algebra::{mul_da, Matrix, Vector};
use crate::scalar::QExt;
use num_rational::BigRational;
use std::collections::HashMap;

/// Facet data and derived geometry of the Dirichlet cell.
#[derive(Debug, Clone)]
pub struct DirichletCell {
    /// Constraints `v . x <= rhs` cutting out the closed cell.
    pub normals: Vec<(Vector, QExt)>,
    /// Exact vertices (left empty in dimension 8, where only the radius is
    /// computed).
    pub vertices: Vec<Vector>,
    /// Squared circumradius `rad(K)^2`.
    pub rad_sq: QExt,
}

impl DirichletCell {
    pub fn build(lat: &LatticeSpec) -> Self {
        let normals = facet_constraints(lat);
        if lat.dim <= 4 {
            let rad_ub_sq = parallelepiped_radius_sq_upper(lat);
            let mut vertices = enumerate_vertices(&normals, lat.dim, &rad_ub_sq, None);
            vertices.sort_by(|a, b| a.lex_cmp(b));
            vertices.dedup();
            let rad_sq = vertices
                .iter()
                .map(Vector::norm_sq)
                .max_by(|a, b| a.cmp_exact(b))
                .expect("cell must have vertices");
            DirichletCell {
                normals,
                vertices,
                rad_sq,
            }
        } else {
            let rad_sq = max_vertex_norm_symmetric(lat, &normals);
            DirichletCell {
                normals,
                vertices: Vec::new(),
                rad_sq,
            }
        }
    }

    /// Exact squared distance from a point to the closed cell (0 inside).
    pub fn dist_sq(&self, z: &Vector) -> QExt {
        point_to_cell_dist_sq(z, &self.normals, z.dim())
    }

    /// Exact max of `|x - c|^2` over the cell (attained at a vertex).
    pub fn max_dist_sq(&self, c: &Vector) -> QExt {
        self.vertices
            .iter()
            .map(|v| v.dist_sq(c))
            .max_by(|a, b| a.cmp_exact(b))
            .expect("vertex set required (dimension <= 4)")
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.normals
            .iter()
            .all(|(v, rhs)| (&v.dot(x) - rhs).sign() <= 0)
    }
}

/// Facet constraint candidates. For an integral lattice whose generators are
/// units, the cell is cut exactly by the hyperplanes `x . u = 1/2` over
/// norm-1 points `u`. Otherwise every lattice point with `|z| <= 2 rad(K)`
/// can carry a facet `x . z = |z|^2 / 2`; a crude parallelepiped bound on
/// `rad(K)` makes that candidate set finite. Redundant constraints are
/// harmless to the search.
fn facet_constraints(lat: &LatticeSpec) -> Vec<(Vector, QExt)> {
    let half = QExt::from_ratio(1, 2);
    let generators_are_units = lat
        .generators
        .iter()
        .all(|g| g.norm_sq() == QExt::one());
    if generators_are_units && gram_is_integral(lat) {
        return lat
            .units()
            .iter()
            .map(|u| (u.clone(), half.clone()))
            .collect();
    }
    let rad_ub_sq = parallelepiped_radius_sq_upper(lat);
    let bound = (&QExt::from_int(4) * &rad_ub_sq)
        .as_rational()
        .expect("lattice norms are rational")
        .clone();
    let mut out = Vec::new();
    for z in lat.enumerate_norm_le(&bound) {
        if z.is_zero() {
            continue;
        }
        let rhs = &z.norm_sq() * &half;
        out.push((z, rhs));
    }
    out.sort_by(|a, b| a.0.lex_cmp(&b.0));
    out
}

fn gram_is_integral(lat: &LatticeSpec) -> bool {
    let gram = lat.gram();
    let two = BigRational::from_integer(2.into());
    for (i, row) in gram.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if i == j && !e.is_integer() {
                return false;
            }
            if !(e * &two).is_integer() {
                return false;
            }
        }
    }
    true
}

/// `rad(K)^2 <= (1/4) max_signs |sum_i ± g_i|^2`: every point of space is
/// within half a parallelepiped diagonal of a lattice point.
fn parallelepiped_radius_sq_upper(lat: &LatticeSpec) -> QExt {
    let d = lat.dim;
    let mut best: Option<QExt> = None;
    for mask in 0..(1u32 << d) {
        let mut acc = Vector::zeros(d);
        for (i, g) in lat.generators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = &acc - g;
            } else {
                acc = &acc + g;
            }
        }
        let n = acc.norm_sq();
        let better = match &best {
            None => true,
            Some(cur) => n.cmp_exact(cur) == std::cmp::Ordering::Greater,
        };
        if better {
            best = Some(n);
        }
    }
    best.unwrap() * QExt::from_ratio(1, 4)
}

/// Solve `Gram(basis) lambda = rhs` where `basis` indexes into `normals`;
/// returns `(lambda, min_norm_sq)` of the affine subspace point, or `None`
/// if the chosen normals are linearly dependent.
fn subspace_min_norm(
    normals: &[(Vector, QExt)],
    chosen: &[usize],
) -> Option<(Vec<QExt>, QExt)> {
    let k = chosen.len();
    let rows: Vec<Vec<QExt>> = chosen
        .iter()
        .map(|&i| {
            chosen
                .iter()
                .map(|&j| normals[i].0.dot(&normals[j].0))
                .collect()
        })
        .collect();
    let rhs = Vector(chosen.iter().map(|&i| normals[i].1.clone()).collect());
    let gram = Matrix { rows };
    let lambda = gram.solve(&rhs)?;
    let mut min_norm = QExt::zero();
    for i in 0..k {
        min_norm = min_norm + &lambda[i] * &rhs[i];
    }
    Some((lambda.0, min_norm))
}

fn point_from_multipliers(
    normals: &[(Vector, QExt)],
    chosen: &[usize],
    lambda: &[QExt],
    dim: usize,
) -> Vector {
    let mut p = Vector::zeros(dim);
    for (idx, &i) in chosen.iter().enumerate() {
        p = &p + &normals[i].0.scale(&lambda[idx]);
    }
    p
}

/// Orbit-pruning state: verified automorphism permutations of the constraint
/// index set.
struct SymmetryPool {
    perms: Vec<Vec<usize>>,
}

impl SymmetryPool {
    /// Orbits of `candidates` under the subgroup generated by the pool
    /// elements fixing every index in `fixed` pointwise. Returns the minimal
    /// representative of each orbit.
    fn orbit_representatives(&self, fixed: &[usize], candidates: &[usize]) -> Vec<usize> {
        let stab: Vec<&Vec<usize>> = self
            .perms
            .iter()
            .filter(|p| fixed.iter().all(|&i| p[i] == i))
            .collect();
        if stab.is_empty() {
            return candidates.to_vec();
        }
        let cand_set: std::collections::HashSet<usize> = candidates.iter().copied().collect();
        let mut seen: std::collections::HashSet<usize> = Default::default();
        let mut reps = Vec::new();
        for &c in candidates {
            if seen.contains(&c) {
                continue;
            }
            // BFS closure of {c} under the stabilizer generators
            let mut orbit = vec![c];
            let mut frontier = vec![c];
            let mut in_orbit: std::collections::HashSet<usize> = [c].into_iter().collect();
            while let Some(x) = frontier.pop() {
                for p in &stab {
                    let y = p[x];
                    if in_orbit.insert(y) {
                        orbit.push(y);
                        frontier.push(y);
                    }
                }
            }
            let rep = orbit
                .iter()
                .copied()
                .filter(|i| cand_set.contains(i))
                .min()
                .unwrap_or(c);
            for i in orbit {
                if cand_set.contains(&i) {
                    seen.insert(i);
                }
            }
            if rep == c {
                reps.push(c);
            } else if !reps.contains(&rep) {
                // representative appeared later in candidate order
                reps.push(rep);
            }
        }
        reps.sort_unstable();
        reps.dedup();
        reps
    }
}

/// Depth-first vertex enumeration. With `symmetry`, only the maximum vertex
/// norm matters and orbit representatives are explored; the returned vector
/// then holds witnesses for the maximum rather than the full vertex set.
fn enumerate_vertices(
    normals: &[(Vector, QExt)],
    dim: usize,
    rad_ub_sq: &QExt,
    symmetry: Option<&SymmetryPool>,
) -> Vec<Vector> {
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    dfs_vertices(normals, dim, rad_ub_sq, symmetry, &mut chosen, &mut out);
    out
}

fn dfs_vertices(
    normals: &[(Vector, QExt)],
    dim: usize,
    rad_ub_sq: &QExt,
    symmetry: Option<&SymmetryPool>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vector>,
) {
    if chosen.len() == dim {
        let (lambda, _) = match subspace_min_norm(normals, chosen) {
            Some(x) => x,
            None => return,
        };
        let p = point_from_multipliers(normals, chosen, &lambda, dim);
        let feasible = normals
            .iter()
            .all(|(v, rhs)| (&v.dot(&p) - rhs).sign() <= 0);
        if feasible {
            out.push(p);
        }
        return;
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    let candidates: Vec<usize> = (start..normals.len()).collect();
    let explore: Vec<usize> = match symmetry {
        Some(pool) => pool.orbit_representatives(chosen, &candidates),
        None => candidates,
    };
    for i in explore {
        chosen.push(i);
        if let Some((_, min_norm)) = subspace_min_norm(normals, chosen) {
            if (&min_norm - rad_ub_sq).sign() <= 0 {
                dfs_vertices(normals, dim, rad_ub_sq, symmetry, chosen, out);
            }
        }
        chosen.pop();
    }
}

/// Maximum vertex norm for dimension-8 cells, with orbital branching backed
/// by exactly verified unit-multiplication automorphisms.
fn max_vertex_norm_symmetric(lat: &LatticeSpec, normals: &[(Vector, QExt)]) -> QExt {
    let algebra = lat
        .algebra
        .expect("dimension-8 radius needs a division algebra structure");
    let index_of: HashMap<&Vector, usize> = normals
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (v, i))
        .collect();
    let mut perms = Vec::new();
    let units: Vec<&Vector> = normals.iter().map(|(v, _)| v).collect();
    // candidate maps: left/right multiplication by each unit, plus the
    // bimultiplications x -> u (x conj(u)) that fix the identity
    for u in &units {
        let candidates = [
            unit_mult_matrix(lat, u, algebra, Side::Left),
            unit_mult_matrix(lat, u, algebra, Side::Right),
            unit_mult_matrix(lat, u, algebra, Side::Bi),
        ];
        for m in candidates {
            if let Some(perm) = verified_permutation(lat, &m, &units, &index_of) {
                perms.push(perm);
            }
        }
    }
    perms.sort_unstable();
    perms.dedup();
    let pool = SymmetryPool { perms };
    let rad_ub_sq = parallelepiped_radius_sq_upper(lat);
    let witnesses = enumerate_vertices(normals, lat.dim, &rad_ub_sq, Some(&pool));
    witnesses
        .iter()
        .map(Vector::norm_sq)
        .max_by(|a, b| a.cmp_exact(b))
        .expect("symmetric vertex search found no vertex")
}

enum Side {
    Left,
    Right,
    Bi,
}

fn unit_mult_matrix(
    lat: &LatticeSpec,
    u: &Vector,
    algebra: crate::algebra::DivisionAlgebra,
    side: Side,
) -> Matrix {
    let d = lat.dim;
    let conj_u = crate::algebra::conj_da(u);
    let cols: Vec<Vector> = (0..d)
        .map(|j| {
            let mut e = Vector::zeros(d);
            e.0[j] = QExt::one();
            match side {
                Side::Left => mul_da(u, &e, algebra).unwrap(),
                Side::Right => mul_da(&e, u, algebra).unwrap(),
                Side::Bi => {
                    let inner = mul_da(&e, &conj_u, algebra).unwrap();
                    mul_da(u, &inner, algebra).unwrap()
                }
            }
        })
        .collect();
    let rows = (0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect();
    Matrix { rows }
}

/// A map enters the pool only with full certificates: exact orthogonality,
/// exact lattice preservation (integer unimodular action on the basis), and
/// closure on the constraint normals.
fn verified_permutation(
    lat: &LatticeSpec,
    m: &Matrix,
    units: &[&Vector],
    index_of: &HashMap<&Vector, usize>,
) -> Option<Vec<usize>> {
    if !m.is_orthogonal() {
        return None;
    }
    let mut det_rows = Vec::new();
    for g in &lat.generators {
        let img = m.apply(g);
        let coords = lat.try_coords_int(&img)?;
        det_rows.push(coords);
    }
    if int_det(&det_rows).abs() != 1 {
        return None;
    }
    let mut perm = Vec::with_capacity(units.len());
    for u in units {
        let img = m.apply(u);
        perm.push(*index_of.get(&img)?);
    }
    Some(perm)
}

pub(crate) fn int_det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut det = BigRational::from_integer(1.into());
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !num_traits::Zero::is_zero(&m[r][col])) {
            Some(p) => p,
            None => return 0,
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if !num_traits::Zero::is_zero(&m[r][col]) {
                let f = &m[r][col] / &p;
                for c in col..n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    let i = det.to_integer();
    i128::try_from(&i).unwrap_or(i128::MAX)
}

/// Exact squared distance from `z` to the cell via KKT subset enumeration:
/// the nearest point's active facets give independent normals with
/// non-negative multipliers, so scanning independent subsets up to size `d`
/// and keeping feasible projections with non-negative multipliers finds the
/// distance exactly.
fn point_to_cell_dist_sq(z: &Vector, normals: &[(Vector, QExt)], dim: usize) -> QExt {
    let violated: Vec<usize> = normals
        .iter()
        .enumerate()
        .filter(|(_, (v, rhs))| (&v.dot(z) - rhs).sign() > 0)
        .map(|(i, _)| i)
        .collect();
    if violated.is_empty() {
        return QExt::zero();
    }
    // only constraints active at the projection matter; the projection's
    // active set can include non-violated constraints, so search over all,
    // seeded by a cheap single-constraint lower bound for early pruning
    let mut best: Option<QExt> = None;
    let mut chosen = Vec::new();
    dist_dfs(z, normals, dim, &mut chosen, 0, &mut best);
    best.expect("at least one violated constraint must project feasibly")
}

fn dist_dfs(
    z: &Vector,
    normals: &[(Vector, QExt)],
    dim: usize,
    chosen: &mut Vec<usize>,
    start: usize,
    best: &mut Option<QExt>,
) {
    if !chosen.is_empty() {
        if let Some((lambda, dist_sq)) = projection_candidate(z, normals, chosen) {
            let nonneg = lambda.iter().all(|l| l.sign() >= 0);
            if nonneg {
                let p = {
                    let mut p = z.clone();
                    for (idx, &i) in chosen.iter().enumerate() {
                        p = &p - &normals[i].0.scale(&lambda[idx]);
                    }
                    p
                };
                let feasible = normals
                    .iter()
                    .all(|(v, rhs)| (&v.dot(&p) - rhs).sign() <= 0);
                if feasible {
                    let better = match best {
                        None => true,
                        Some(cur) => dist_sq.cmp_exact(cur) == std::cmp::Ordering::Less,
                    };
                    if better {
                        *best = Some(dist_sq);
                    }
                }
            }
        }
    }
    if chosen.len() == dim {
        return;
    }
    for i in start..normals.len() {
        chosen.push(i);
        dist_dfs(z, normals, dim, chosen, i + 1, best);
        chosen.pop();
    }
}

/// Multipliers and squared distance for projecting `z` onto the affine
/// subspace of the chosen constraints; `None` if dependent.
fn projection_candidate(
    z: &Vector,
    normals: &[(Vector, QExt)],
    chosen: &[usize],
) -> Option<(Vec<QExt>, QExt)> {
    let rows: Vec<Vec<QExt>> = chosen
        .iter()
        .map(|&i| {
            chosen
                .iter()
                .map(|&j| normals[i].0.dot(&normals[j].0))
                .collect()
        })
        .collect();
    let rhs = Vector(
        chosen
            .iter()
            .map(|&i| &normals[i].0.dot(z) - &normals[i].1)
            .collect(),
    );
    let gram = Matrix { rows };
    let lambda = gram.solve(&rhs)?;
    let mut dist_sq = QExt::zero();
    for i in 0..chosen.len() {
        dist_sq = dist_sq + &lambda[i] * &rhs[i];
    }
    Some((lambda.0, dist_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::by_name;

    #[test]
    fn square_cell_vertices() {
        let zi = by_name("hurwitz").unwrap();
        let cell = zi.dirichlet_cell();
        assert_eq!(cell.normals.len(), 4);
        assert_eq!(cell.vertices.len(), 4);
        assert_eq!(cell.rad_sq, QExt::from_ratio(1, 2));
    }

    #[test]
    fn hexagon_cell() {
        let eis = by_name("eisenstein").unwrap();
        let cell = eis.dirichlet_cell();
        assert_eq!(cell.normals.len(), 6);
        assert_eq!(cell.vertices.len(), 6);
        assert_eq!(cell.rad_sq, QExt::from_ratio(1, 3));
    }

    #[test]
    fn rhombic_dodecahedron_cell() {
        let fcc = by_name("fcc").unwrap();
        let cell = fcc.dirichlet_cell();
        assert_eq!(cell.normals.len(), 12);
        // 8 cube corners + 6 pyramid apexes
        assert_eq!(cell.vertices.len(), 14);
        assert_eq!(cell.rad_sq, QExt::from_ratio(1, 2));
    }

    #[test]
    fn cube_distance_to_outer_point() {
        let z3 = by_name("z3").unwrap();
        let cell = z3.dirichlet_cell();
        let z = Vector::from_ints(&[1, 1, 1]);
        // nearest cube point is (1/2, 1/2, 1/2)
        assert_eq!(cell.dist_sq(&z), QExt::from_ratio(3, 4));
        assert_eq!(cell.dist_sq(&Vector::from_ratios(&[(1, 4), (0, 1), (0, 1)])), QExt::zero());
    }
}
