//! Exact checkers for the lattice properties the certification engine
//! depends on: integrality, unit-generation, nice invertibility,
//! norm-Euclideanness (through the cell radius), and 3-/7-remoteness.
//!
//! Integrality and nice invertibility are decided exactly from the
//! generators (finite certificates for the whole lattice). Unit-generation
//! is verified shell by shell up to a norm bound: for an integral lattice, a
//! point `z` of norm-square `r` is a sum of at most `r` units iff it can be
//! walked down to `0` through lattice points of strictly decreasing
//! norm-square, each step subtracting a unit, so the certificate is a
//! norm-descending search (complete within the ball, since any
//! representation can be reordered to keep partial sums inside it).
//! Remoteness reduces to exact point-to-cell distances, with a global radius
//! shortcut when `rad(K)` is small enough to separate the whole shell.

use super::{LatticeSpec, PropertyReportError};
use crate::scalar::QExt;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::HashSet;

/// A yes/no answer with the verification bound (when the check is a bounded
/// certificate rather than a full proof) and a witness for failures.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Norm bound up to which the property was verified, if bounded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    /// Basis coordinates of a counterexample, when `holds` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
}

impl Verdict {
    fn proven(holds: bool) -> Self {
        Verdict {
            holds,
            bound: None,
            witness: None,
        }
    }

    fn bounded(holds: bool, bound: i64) -> Self {
        Verdict {
            holds,
            bound: Some(bound),
            witness: None,
        }
    }

    fn refuted(witness: Vec<i64>) -> Self {
        Verdict {
            holds: false,
            bound: None,
            witness: Some(witness),
        }
    }
}

/// The six lattice properties plus the cell radius.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub lattice: String,
    pub integral: Verdict,
    pub unit_generated: Verdict,
    pub nicely_invertible: Verdict,
    /// `rad(K)^2` rendered exactly, plus a float for reading.
    pub rad_sq: String,
    pub rad_sq_f64: f64,
    pub norm_euclidean: bool,
    pub three_remote: Verdict,
    pub seven_remote: Verdict,
}

/// Run every property check. `norm_bound` controls the shells visited by the
/// unit-generation certificate (`>= 3` required so the remoteness shells are
/// covered).
pub fn check_properties(
    lat: &LatticeSpec,
    norm_bound: i64,
) -> Result<PropertyReport, PropertyReportError> {
    if norm_bound < 3 {
        return Err(PropertyReportError::BoundTooSmall(norm_bound));
    }
    let integral = check_integral(lat);
    let unit_generated = check_unit_generated(lat, norm_bound);
    let nicely_invertible = check_nicely_invertible(lat);
    let rad_sq = lat.dirichlet_cell().rad_sq.clone();
    let norm_euclidean = (&rad_sq - &QExt::one()).sign() < 0;
    let three_remote = check_remote(lat, &rad_sq, 3);
    let seven_remote = check_remote(lat, &rad_sq, 7);
    Ok(PropertyReport {
        lattice: lat.name.clone(),
        integral,
        unit_generated,
        nicely_invertible,
        rad_sq: rad_sq.to_string(),
        rad_sq_f64: rad_sq.to_f64(),
        norm_euclidean,
        three_remote,
        seven_remote,
    })
}

/// `z . z` is an integer for every lattice point iff the Gram diagonal is
/// integral and off-diagonal entries are half-integral. This is a full
/// certificate, not a bounded one.
fn check_integral(lat: &LatticeSpec) -> Verdict {
    let gram = lat.gram();
    let two = BigRational::from_integer(2.into());
    for (i, row) in gram.iter().enumerate() {
        if !row[i].is_integer() {
            let mut witness = vec![0i64; lat.dim];
            witness[i] = 1;
            return Verdict::refuted(witness);
        }
        for (j, e) in row.iter().enumerate() {
            if !(e * &two).is_integer() {
                let mut witness = vec![0i64; lat.dim];
                witness[i] += 1;
                witness[j] += 1;
                return Verdict::refuted(witness);
            }
        }
    }
    Verdict::proven(true)
}

/// Norm-descending decomposition into units for every lattice point with
/// `|z|^2 <= norm_bound`. Runs in integer basis coordinates against the
/// scaled Gram matrix.
fn check_unit_generated(lat: &LatticeSpec, norm_bound: i64) -> Verdict {
    let unit_coords: Vec<Vec<i64>> = lat.shell_coords(1);
    if unit_coords.is_empty() {
        return Verdict::refuted(lat.coords_int(&lat.generators[0]));
    }
    let (m, s) = lat.gram_scaled();
    // precompute M * c_u for each unit so dots are O(d)
    let unit_rows: Vec<Vec<i128>> = unit_coords
        .iter()
        .map(|u| {
            (0..lat.dim)
                .map(|i| {
                    u.iter()
                        .enumerate()
                        .map(|(j, &uj)| m[i][j] as i128 * uj as i128)
                        .sum()
                })
                .collect()
        })
        .collect();
    for c in lat.coords_norm_le(norm_bound, 1) {
        if !descends_to_zero(&c, &unit_coords, &unit_rows, s) {
            return Verdict {
                holds: false,
                bound: Some(norm_bound),
                witness: Some(c),
            };
        }
    }
    Verdict::bounded(true, norm_bound)
}

/// Search for a path `z -> z - u -> ... -> 0` with strictly decreasing
/// norm-squares (each step subtracts a unit). Greedy descent almost always
/// succeeds; dead ends backtrack over every norm-decreasing step.
fn descends_to_zero(
    z: &[i64],
    unit_coords: &[Vec<i64>],
    unit_rows: &[Vec<i128>],
    scale: i64,
) -> bool {
    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    let mut stack = vec![z.to_vec()];
    while let Some(cur) = stack.pop() {
        if cur.iter().all(|&x| x == 0) {
            return true;
        }
        if !visited.insert(cur.clone()) {
            continue;
        }
        for (u, mu) in unit_coords.iter().zip(unit_rows) {
            // |z - u|^2 < |z|^2  <=>  2 z.u > |u|^2 = 1  <=>  2 c^T M c_u > s
            let dot2: i128 = cur
                .iter()
                .zip(mu)
                .map(|(&ci, &mui)| 2 * ci as i128 * mui)
                .sum();
            if dot2 > scale as i128 {
                stack.push(cur.iter().zip(u).map(|(a, b)| a - b).collect());
            }
        }
    }
    false
}

/// `O(Z) = Z`: the twist maps every generator to a lattice point and the
/// integer matrix of images is unimodular. Exact for the full lattice.
fn check_nicely_invertible(lat: &LatticeSpec) -> Verdict {
    let mut rows = Vec::new();
    for (i, g) in lat.generators.iter().enumerate() {
        let img = lat.inversion.twist_apply(g);
        match lat.try_coords_int(&img) {
            Some(coords) => rows.push(coords),
            None => {
                let mut witness = vec![0i64; lat.dim];
                witness[i] = 1;
                return Verdict::refuted(witness);
            }
        }
    }
    let det = super::polytope_int_det(&rows);
    if det.abs() == 1 {
        Verdict::proven(true)
    } else {
        Verdict::proven(false)
    }
}

/// `m`-remoteness: every lattice point `z` with `|z|^2 = m` keeps distance
/// `>= 1` from the cell (for `m = 3`), or `z/2` keeps distance `>= 1/2` (for
/// `m = 7`). Vacuously true when the shell is empty. A rational-radius ball
/// bound certifies whole shells at once; otherwise each shell point gets an
/// exact point-to-cell distance.
fn check_remote(lat: &LatticeSpec, rad_sq: &QExt, m: i64) -> Verdict {
    let shell = lat.enumerate_shell(m);
    if shell.is_empty() {
        return Verdict::proven(true);
    }
    // Global shortcut: sqrt(m)*s - rad >= t  (with s = 1, t = 1 for m = 3;
    // s = 1/2, t = 1/2 for m = 7) follows from rational comparisons when
    // rad^2 is rational.
    if let Some(q) = rad_sq.as_rational() {
        let ok = match m {
            // sqrt(3) >= 1 + rad  <=>  (2 - q)^2 >= 4q  (with 2 - q >= 0)
            3 => {
                let two = BigRational::from_integer(2.into());
                let lhs = (&two - q) * (&two - q);
                let rhs = BigRational::from_integer(4.into()) * q;
                (&two - q) >= BigRational::from_integer(0.into()) && lhs >= rhs
            }
            // sqrt(7)/2 >= 1/2 + rad  <=>  (3/2 - q... reduce:
            // (sqrt(7)-1)/2 >= sqrt(q)  <=>  2 - sqrt(7)/2 >= q
            // <=>  (2 - q) >= sqrt(7)/2  <=>  (2 - q)^2 >= 7/4
            7 => {
                let two = BigRational::from_integer(2.into());
                let lhs = (&two - q) * (&two - q);
                let rhs = BigRational::new(7.into(), 4.into());
                (&two - q) >= BigRational::from_integer(0.into()) && lhs >= rhs
            }
            _ => false,
        };
        if ok {
            return Verdict::proven(true);
        }
    }
    let cell = lat.dirichlet_cell();
    let threshold = match m {
        3 => QExt::one(),
        7 => QExt::from_ratio(1, 4),
        _ => QExt::one(),
    };
    for z in &shell {
        let probe = if m == 7 {
            z.scale(&QExt::from_ratio(1, 2))
        } else {
            z.clone()
        };
        let d2 = cell.dist_sq(&probe);
        if (&d2 - &threshold).sign() < 0 {
            return Verdict::refuted(lat.coords_int(z));
        }
    }
    Verdict::proven(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::by_name;

    #[test]
    fn square_lattice_radius() {
        let report = check_properties(&by_name("hurwitz").unwrap(), 3).unwrap();
        assert_eq!(report.rad_sq, "1/2");
        assert!(report.integral.holds);
        assert!(report.unit_generated.holds);
        assert!(report.nicely_invertible.holds);
        assert!(report.three_remote.holds);
    }

    #[test]
    fn hex_prism_radius() {
        let report = check_properties(&by_name("hex-prism").unwrap(), 3).unwrap();
        assert_eq!(report.rad_sq, "7/12"); // 21/36 reduced
        assert!(report.three_remote.holds);
    }

    #[test]
    fn z3_fails_three_remote_with_witness() {
        let report = check_properties(&by_name("z3").unwrap(), 3).unwrap();
        assert!(!report.three_remote.holds);
        let witness = report.three_remote.witness.unwrap();
        let mut sorted = witness.clone();
        sorted.sort_unstable();
        assert_eq!(sorted.iter().map(|w| w * w).sum::<i64>(), 3);
        assert!(report.seven_remote.holds); // vacuous: no norm-7 points
        assert!(by_name("z3").unwrap().enumerate_shell(7).is_empty());
    }

    #[test]
    fn truncated_octahedron_not_unit_generated() {
        let report = check_properties(&by_name("truncated-octahedron").unwrap(), 4).unwrap();
        assert!(!report.unit_generated.holds);
        assert!(report.unit_generated.witness.is_some());
        // its Gram has a non-integer diagonal entry, so not integral either
        assert!(!report.integral.holds);
    }

    #[test]
    fn bound_too_small_rejected() {
        assert!(check_properties(&by_name("z").unwrap(), 2).is_err());
    }
}
