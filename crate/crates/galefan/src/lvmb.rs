//! LVMB data: virtual chambers over point configurations, Bosio's two
//! conditions, chamber detection by a single strict LP, complement
//! duality with triangulations, and the manifold dimension report.

use std::collections::BTreeSet;

use crate::config::{
    gale_dual_inverse, leaf_type, rationality_invariants, LeafType, PointConfiguration,
};
use crate::error::Error;
use crate::fan::Triangulation;
use crate::lp::{lp_feasible, Certificate, LinearSystem, Relation};
use crate::scalar::Scalar;

/// A family of bases (2m+1-subsets of {1..n}), 1-based. Indices present
/// in every basis are the indispensable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualChamber {
    ground_size: usize,
    m: usize,
    bases: Vec<BTreeSet<usize>>,
}

impl VirtualChamber {
    pub fn new(ground_size: usize, m: usize, bases: Vec<BTreeSet<usize>>) -> Result<Self, Error> {
        if bases.is_empty() {
            return Err(Error::InvalidInput("no bases".into()));
        }
        for b in &bases {
            if b.len() != 2 * m + 1 {
                return Err(Error::WrongCardinality {
                    expected: 2 * m + 1,
                    got: b.len(),
                });
            }
            if b.iter().any(|&i| i == 0 || i > ground_size) {
                return Err(Error::InvalidInput("basis index out of range".into()));
            }
        }
        Ok(VirtualChamber {
            ground_size,
            m,
            bases,
        })
    }

    pub fn from_slices(ground_size: usize, m: usize, bases: &[Vec<usize>]) -> Result<Self, Error> {
        VirtualChamber::new(
            ground_size,
            m,
            bases.iter().map(|b| b.iter().copied().collect()).collect(),
        )
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bases(&self) -> &[BTreeSet<usize>] {
        &self.bases
    }

    pub fn contains(&self, basis: &BTreeSet<usize>) -> bool {
        self.bases.iter().any(|b| b == basis)
    }

    pub fn indispensable_indices(&self) -> BTreeSet<usize> {
        (1..=self.ground_size)
            .filter(|i| self.bases.iter().all(|b| b.contains(i)))
            .collect()
    }
}

/// Points plus a family of bases over them.
#[derive(Clone, Debug, PartialEq)]
pub struct LVMBDatum {
    pub points: PointConfiguration,
    pub chamber: VirtualChamber,
}

impl LVMBDatum {
    pub fn new(points: PointConfiguration, chamber: VirtualChamber) -> Result<Self, Error> {
        if chamber.ground_size() != points.len() || chamber.m() != points.m() {
            return Err(Error::CardinalityMismatch("n - d must be odd".into()));
        }
        for b in chamber.bases() {
            let idx: Vec<usize> = b.iter().copied().collect();
            if !is_basis(&idx, &points)? {
                return Err(Error::DegenerateConfiguration(format!(
                    "family member {:?} is not a basis",
                    idx
                )));
            }
        }
        Ok(LVMBDatum { points, chamber })
    }
}

/// True iff the 2m+1 points are affinely independent, i.e. their convex
/// hull has nonempty interior in R^{2m}.
pub fn is_basis(tau: &[usize], points: &PointConfiguration) -> Result<bool, Error> {
    let m = points.m();
    if tau.len() != 2 * m + 1 {
        return Err(Error::WrongCardinality {
            expected: 2 * m + 1,
            got: tau.len(),
        });
    }
    let lift: Vec<Vec<Scalar>> = tau
        .iter()
        .map(|&i| {
            let mut row = vec![Scalar::one()];
            row.extend(points.point(i - 1).iter().cloned());
            row
        })
        .collect();
    Ok(crate::matrix::Matrix::from_rows(lift).rank() == 2 * m + 1)
}

/// Strict LP for a point interior to both simplices at once:
/// barycentric weights lambda, mu > 0 with equal weighted sums.
fn open_intersection_lp(
    points: &PointConfiguration,
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
) -> Certificate {
    let k = a.len();
    let dim = 2 * points.m();
    let mut sys = LinearSystem::new(2 * k);
    let ones_a: Vec<Scalar> = (0..2 * k)
        .map(|i| if i < k { Scalar::one() } else { Scalar::zero() })
        .collect();
    let ones_b: Vec<Scalar> = (0..2 * k)
        .map(|i| if i < k { Scalar::zero() } else { Scalar::one() })
        .collect();
    sys.push(ones_a, Relation::Eq, Scalar::one());
    sys.push(ones_b, Relation::Eq, Scalar::one());
    for r in 0..dim {
        let mut coeffs = Vec::with_capacity(2 * k);
        for &i in a {
            coeffs.push(points.point(i - 1)[r].clone());
        }
        for &j in b {
            coeffs.push(-points.point(j - 1)[r].clone());
        }
        sys.push(coeffs, Relation::Eq, Scalar::zero());
    }
    for v in 0..2 * k {
        let mut coeffs = vec![Scalar::zero(); 2 * k];
        coeffs[v] = Scalar::one();
        sys.push(coeffs, Relation::Gt, Scalar::zero());
    }
    lp_feasible(&sys)
}

/// First pair of bases whose open simplices miss each other, with the
/// infeasibility certificate; None when every pair meets.
#[derive(Clone, Debug)]
pub struct PairwiseViolation {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub certificate: Certificate,
}

/// Bosio's condition (i): pairwise nonempty open intersections, checked
/// in lexicographic pair order.
pub fn bosio_i(datum: &LVMBDatum) -> Option<PairwiseViolation> {
    let bases = datum.chamber.bases();
    for (ai, a) in bases.iter().enumerate() {
        for b in bases.iter().skip(ai + 1) {
            let cert = open_intersection_lp(&datum.points, a, b);
            if !cert.is_feasible() {
                return Some(PairwiseViolation {
                    first: a.iter().copied().collect(),
                    second: b.iter().copied().collect(),
                    certificate: cert,
                });
            }
        }
    }
    None
}

/// Bosio's condition (ii), purely combinatorial: for every basis tau and
/// every i outside it, some j in tau with (tau \ {j}) u {i} in the
/// family. Returns the first violating (tau, i).
pub fn bosio_ii(chamber: &VirtualChamber) -> Option<(Vec<usize>, usize)> {
    for tau in chamber.bases() {
        for i in 1..=chamber.ground_size() {
            if tau.contains(&i) {
                continue;
            }
            let found = tau.iter().any(|&j| {
                let mut swapped = tau.clone();
                swapped.remove(&j);
                swapped.insert(i);
                chamber.contains(&swapped)
            });
            if !found {
                return Some((tau.iter().copied().collect(), i));
            }
        }
    }
    None
}

pub fn is_virtual_chamber(datum: &LVMBDatum) -> bool {
    bosio_ii(&datum.chamber).is_none() && bosio_i(datum).is_none()
}

/// Single strict LP for one point nu interior to every basis simplex at
/// once. Variables: nu (2m), then barycentric weights per basis.
pub fn is_chamber(datum: &LVMBDatum) -> Certificate {
    let dim = 2 * datum.points.m();
    let k = 2 * datum.points.m() + 1;
    let bases = datum.chamber.bases();
    let num_vars = dim + k * bases.len();
    let mut sys = LinearSystem::new(num_vars);
    for (bi, b) in bases.iter().enumerate() {
        let off = dim + bi * k;
        let mut ones = vec![Scalar::zero(); num_vars];
        for v in 0..k {
            ones[off + v] = Scalar::one();
        }
        sys.push(ones, Relation::Eq, Scalar::one());
        for r in 0..dim {
            let mut coeffs = vec![Scalar::zero(); num_vars];
            coeffs[r] = Scalar::from_int(-1);
            for (v, &i) in b.iter().enumerate() {
                coeffs[off + v] = datum.points.point(i - 1)[r].clone();
            }
            sys.push(coeffs, Relation::Eq, Scalar::zero());
        }
        for v in 0..k {
            let mut coeffs = vec![Scalar::zero(); num_vars];
            coeffs[off + v] = Scalar::one();
            sys.push(coeffs, Relation::Gt, Scalar::zero());
        }
    }
    lp_feasible(&sys)
}

/// The common interior point from a feasible is_chamber certificate.
pub fn chamber_witness_point(datum: &LVMBDatum, cert: &Certificate) -> Option<Vec<Scalar>> {
    cert.witness()
        .map(|w| w[..2 * datum.points.m()].to_vec())
}

/// Complement family of a triangulation: T* = { {1..n} \ sigma }.
pub fn complements(t: &Triangulation) -> Result<VirtualChamber, Error> {
    let n = t.ground_size();
    let k = n - t.dim();
    if k % 2 == 0 {
        return Err(Error::CardinalityMismatch("points and chamber sizes disagree".into()));
    }
    let m = (k - 1) / 2;
    let bases = t
        .simplices()
        .iter()
        .map(|s| (1..=n).filter(|i| !s.contains(i)).collect())
        .collect();
    VirtualChamber::new(n, m, bases)
}

/// Inverse complement: back to a triangulation of dimension
/// n - (2m+1); the torus case d = 0 has no fan and is rejected.
pub fn complements_inv(chamber: &VirtualChamber) -> Result<Triangulation, Error> {
    let n = chamber.ground_size();
    let d = n - (2 * chamber.m() + 1);
    if d == 0 {
        return Err(Error::TorusCase);
    }
    let simplices = chamber
        .bases()
        .iter()
        .map(|b| (1..=n).filter(|i| !b.contains(i)).collect())
        .collect();
    Triangulation::new(n, d, simplices)
}

/// Permutation pushing the indispensable indices to the end, as the
/// paper's normal form assumes. Returns (reordered points, reordered
/// chamber, permutation) with perm[new - 1] = old index.
pub fn reindex_trailing_indispensables(
    datum: &LVMBDatum,
) -> Result<(LVMBDatum, Vec<usize>), Error> {
    let n = datum.chamber.ground_size();
    let indispensable = datum.chamber.indispensable_indices();
    let mut perm: Vec<usize> = (1..=n).filter(|i| !indispensable.contains(i)).collect();
    perm.extend(indispensable.iter().copied());
    // old index -> new index
    let mut to_new = vec![0usize; n + 1];
    for (new0, &old) in perm.iter().enumerate() {
        to_new[old] = new0 + 1;
    }
    let points = PointConfiguration::new(
        datum.points.m(),
        perm.iter().map(|&old| datum.points.point(old - 1).to_vec()).collect(),
    )?;
    let bases = datum
        .chamber
        .bases()
        .iter()
        .map(|b| b.iter().map(|&old| to_new[old]).collect())
        .collect();
    let chamber = VirtualChamber::new(n, datum.chamber.m(), bases)?;
    Ok((LVMBDatum::new(points, chamber)?, perm))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kaehler {
    /// n > 2m+1: never Kaehler.
    No,
    /// n = 2m+1: compact complex torus.
    TorusCase,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldReport {
    pub n: usize,
    pub m: usize,
    pub complex_dim: usize,
    pub is_torus_case: bool,
    pub kaehler: Kaehler,
    /// None in the torus case (no Gale-dual vector configuration).
    pub leaf_type: Option<LeafType>,
    pub rationality: Option<(usize, usize)>,
}

/// Dimension and structure data of the manifold N attached to the datum.
pub fn manifold_report(datum: &LVMBDatum) -> Result<ManifoldReport, Error> {
    if !is_virtual_chamber(datum) {
        return Err(Error::NotAVirtualChamber("bosio conditions fail".into()));
    }
    let n = datum.points.len();
    let m = datum.points.m();
    let torus = n == 2 * m + 1;
    let (lt, rat) = if torus {
        (None, None)
    } else {
        let v = gale_dual_inverse(&datum.points)?;
        (
            Some(leaf_type(&v)?),
            Some(rationality_invariants(&v)?),
        )
    };
    Ok(ManifoldReport {
        n,
        m,
        complex_dim: n - 1 - m,
        is_torus_case: torus,
        kaehler: if torus { Kaehler::TorusCase } else { Kaehler::No },
        leaf_type: lt,
        rationality: rat,
    })
}
