//! Triangulations of vector configurations and certified validation of
//! the induced complete simplicial fan, plus face/h-vector/Betti counts
//! and a backtracking shellability search.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::VectorConfiguration;
use crate::error::Error;
use crate::lp::{lp_feasible, LinearSystem, Relation};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Maximal simplices of a triangulation of {1..n}, 1-based, each of
/// cardinality d. Indices in no simplex are the ghost indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    ground_size: usize,
    dim: usize,
    maximal_simplices: Vec<BTreeSet<usize>>,
}

impl Triangulation {
    pub fn new(
        ground_size: usize,
        dim: usize,
        simplices: Vec<BTreeSet<usize>>,
    ) -> Result<Self, Error> {
        if simplices.is_empty() {
            return Err(Error::InvalidInput("no maximal simplices".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &simplices {
            if s.len() != dim {
                return Err(Error::WrongCardinality {
                    expected: dim,
                    got: s.len(),
                });
            }
            if s.iter().any(|&i| i == 0 || i > ground_size) {
                return Err(Error::InvalidInput("simplex index out of range".into()));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidInput("duplicate simplex".into()));
            }
        }
        Ok(Triangulation {
            ground_size,
            dim,
            maximal_simplices: simplices,
        })
    }

    pub fn from_slices(ground_size: usize, dim: usize, simplices: &[Vec<usize>]) -> Result<Self, Error> {
        Triangulation::new(
            ground_size,
            dim,
            simplices
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
        )
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simplices(&self) -> &[BTreeSet<usize>] {
        &self.maximal_simplices
    }

    pub fn ghost_indices(&self) -> BTreeSet<usize> {
        let used: BTreeSet<usize> = self
            .maximal_simplices
            .iter()
            .flatten()
            .copied()
            .collect();
        (1..=self.ground_size).filter(|i| !used.contains(i)).collect()
    }

    /// All faces of every cardinality 1..=d (the empty face is counted
    /// separately by fvector).
    pub fn faces(&self) -> Vec<BTreeSet<BTreeSet<usize>>> {
        let mut by_size: Vec<BTreeSet<BTreeSet<usize>>> = vec![BTreeSet::new(); self.dim];
        for s in &self.maximal_simplices {
            let elems: Vec<usize> = s.iter().copied().collect();
            for mask in 1u32..(1 << elems.len()) {
                let face: BTreeSet<usize> = elems
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                by_size[face.len() - 1].insert(face);
            }
        }
        by_size
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FanFailure {
    /// Simplex whose generators do not have full rank.
    DependentSimplex(Vec<usize>),
    /// A (d-1)-face with a number of cofaces different from two, or whose
    /// two opposite vertices do not lie strictly on opposite sides.
    BadWall {
        wall: Vec<usize>,
        cofaces: Vec<Vec<usize>>,
    },
    /// Two maximal cones meeting outside the cone on their common face;
    /// the witness point lies in both and has positive weight outside
    /// the intersection.
    ImproperIntersection {
        first: Vec<usize>,
        second: Vec<usize>,
        witness: Vec<Scalar>,
    },
    /// A declared ray generator (index <= facet_count) in no simplex.
    UncoveredRay(usize),
    /// Probe direction lying in no cone, or in more than one open cone.
    BadProbeDirection(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum FanStatus {
    CompleteSimplicialFan,
    Failure(FanFailure),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FanCertificate {
    pub status: FanStatus,
}

impl FanCertificate {
    pub fn is_valid(&self) -> bool {
        self.status == FanStatus::CompleteSimplicialFan
    }
}

fn simplex_matrix(v: &VectorConfiguration, s: &BTreeSet<usize>) -> Matrix {
    let mut m = Matrix::zero(v.dim(), s.len());
    for (c, &i) in s.iter().enumerate() {
        for r in 0..v.dim() {
            *m.at_mut(r, c) = v.vector(i - 1)[r].clone();
        }
    }
    m
}

/// Coordinates of u in the simplex basis, or None if the solve fails.
fn cone_coords(v: &VectorConfiguration, s: &BTreeSet<usize>, u: &[Scalar]) -> Option<Vec<Scalar>> {
    simplex_matrix(v, s).solve(u)
}

/// Checks (in order): simplex independence, the wall condition, pairwise
/// proper intersection by exact LP, ray coverage of indices 1..=h; then a
/// seeded randomized covering probe over 100 rational directions.
pub fn validate_fan(v: &VectorConfiguration, t: &Triangulation, seed: u64) -> Result<FanCertificate, Error> {
    if t.ground_size() != v.len() {
        return Err(Error::Dimension("triangulation ground size != n".into()));
    }
    if t.dim() != v.dim() {
        return Err(Error::Dimension("triangulation dim != d".into()));
    }
    let d = v.dim();
    let fail = |f: FanFailure| {
        Ok(FanCertificate {
            status: FanStatus::Failure(f),
        })
    };

    // (1) independence
    for s in t.simplices() {
        if simplex_matrix(v, s).rank() != d {
            return fail(FanFailure::DependentSimplex(s.iter().copied().collect()));
        }
    }

    // (2) wall condition
    let mut walls: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
    for (si, s) in t.simplices().iter().enumerate() {
        for &i in s {
            let mut w = s.clone();
            w.remove(&i);
            walls.entry(w).or_default().push(si);
        }
    }
    for (w, cofaces) in &walls {
        let as_vecs = |idx: &[usize]| {
            idx.iter()
                .map(|&si| t.simplices()[si].iter().copied().collect())
                .collect::<Vec<Vec<usize>>>()
        };
        if cofaces.len() != 2 {
            return fail(FanFailure::BadWall {
                wall: w.iter().copied().collect(),
                cofaces: as_vecs(cofaces),
            });
        }
        // Normal of the wall hyperplane: kernel of the (d-1) x d matrix
        // of wall vectors (for d = 1 the wall is empty and the kernel is
        // all of R^1).
        let rows: Vec<Vec<Scalar>> = w.iter().map(|&i| v.vector(i - 1).to_vec()).collect();
        let kernel = if rows.is_empty() {
            Matrix::identity(1)
        } else {
            Matrix::from_rows(rows).kernel_basis()
        };
        debug_assert_eq!(kernel.rows(), 1);
        let normal = kernel.row(0);
        let mut signs = Vec::new();
        for &si in cofaces {
            let opposite = *t.simplices()[si].difference(w).next().unwrap();
            let val = crate::matrix::dot(normal, v.vector(opposite - 1));
            signs.push(val.sign());
        }
        if signs[0] == 0 || signs[1] == 0 || signs[0] == signs[1] {
            return fail(FanFailure::BadWall {
                wall: w.iter().copied().collect(),
                cofaces: as_vecs(cofaces),
            });
        }
    }

    // (3) pairwise proper intersection: search for a common point whose
    // sigma-weights are positive outside sigma∩tau. Simplicial coordinates
    // are unique, so infeasibility of the one-sided LP already forces
    // cone(s) ∩ cone(t) ⊆ cone(s∩t).
    for (ai, a) in t.simplices().iter().enumerate() {
        for b in t.simplices().iter().skip(ai + 1) {
            let avec: Vec<usize> = a.iter().copied().collect();
            let bvec: Vec<usize> = b.iter().copied().collect();
            let outside: Vec<usize> = (0..d).filter(|&k| !b.contains(&avec[k])).collect();
            if outside.is_empty() {
                continue;
            }
            // variables: lambda (d for a) then mu (d for b)
            let mut sys = LinearSystem::new(2 * d);
            for r in 0..d {
                let mut coeffs = Vec::with_capacity(2 * d);
                for &i in &avec {
                    coeffs.push(v.vector(i - 1)[r].clone());
                }
                for &j in &bvec {
                    coeffs.push(-v.vector(j - 1)[r].clone());
                }
                sys.push(coeffs, Relation::Eq, Scalar::zero());
            }
            for k in 0..2 * d {
                let mut coeffs = vec![Scalar::zero(); 2 * d];
                coeffs[k] = Scalar::one();
                sys.push(coeffs, Relation::Ge, Scalar::zero());
            }
            let mut strict = vec![Scalar::zero(); 2 * d];
            for &k in &outside {
                strict[k] = Scalar::one();
            }
            sys.push(strict, Relation::Gt, Scalar::zero());
            let cert = lp_feasible(&sys);
            if let Some(point) = cert.witness() {
                let mut p = vec![Scalar::zero(); d];
                for (k, &i) in avec.iter().enumerate() {
                    for r in 0..d {
                        p[r] += point[k].clone() * v.vector(i - 1)[r].clone();
                    }
                }
                return fail(FanFailure::ImproperIntersection {
                    first: avec,
                    second: bvec,
                    witness: p,
                });
            }
        }
    }

    // (4) ray coverage of the declared non-ghost range
    let ghosts = t.ghost_indices();
    for i in 1..=v.facet_count() {
        if ghosts.contains(&i) {
            return fail(FanFailure::UncoveredRay(i));
        }
    }

    // Randomized covering probe, independent of the structural proof.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probes = 0;
    while probes < 100 {
        let u: Vec<Scalar> = (0..d)
            .map(|_| Scalar::from_int(rng.gen_range(-1000..=1000)))
            .collect();
        if u.iter().all(|x| x.is_zero()) {
            continue;
        }
        probes += 1;
        let mut closed = 0usize;
        let mut open = 0usize;
        for s in t.simplices() {
            if let Some(coords) = cone_coords(v, s, &u) {
                if coords.iter().all(|c| !c.is_negative()) {
                    closed += 1;
                    if coords.iter().all(|c| c.is_positive()) {
                        open += 1;
                    }
                }
            }
        }
        if closed == 0 || open > 1 {
            return fail(FanFailure::BadProbeDirection(u));
        }
    }

    Ok(FanCertificate {
        status: FanStatus::CompleteSimplicialFan,
    })
}

/// f-vector (f_{-1}, f_0, ..., f_{d-1}); f_{-1} = 1 for the empty face.
pub fn fvector(t: &Triangulation) -> Vec<u64> {
    let mut f = vec![1u64];
    for faces in t.faces() {
        f.push(faces.len() as u64);
    }
    f
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// h_k = sum_{i=0}^{k} (-1)^{k-i} C(d-i, k-i) f_{i-1}, k = 0..=d.
pub fn hvector(t: &Triangulation) -> Vec<u64> {
    let d = t.dim();
    let f = fvector(t);
    (0..=d)
        .map(|k| {
            let mut h = 0i64;
            for i in 0..=k {
                let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                h += sign * binomial(d - i, k - i) * f[i] as i64;
            }
            debug_assert!(h >= 0);
            h as u64
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HVectorValidity {
    /// A shelling order (or a regularity certificate) backs the formula.
    Certified,
    /// Shelling search failed or was capped; numbers reported anyway.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiReport {
    pub betti: Vec<u64>,
    pub h_vector_valid: HVectorValidity,
}

/// Betti numbers b_{2i} = h_i, odd ones zero, length 2d+1. Requires a
/// passing fan certificate; the validity flag is certified when a
/// shelling order is found within the cap.
pub fn betti_numbers(
    t: &Triangulation,
    cert: &FanCertificate,
    shelling_cap: usize,
) -> Result<BettiReport, Error> {
    if !cert.is_valid() {
        return Err(Error::NotValidated);
    }
    let h = hvector(t);
    let mut betti = vec![0u64; 2 * t.dim() + 1];
    for (i, hk) in h.iter().enumerate() {
        betti[2 * i] = *hk;
    }
    let validity = match shelling_order(t, shelling_cap) {
        Ok(Some(_)) => HVectorValidity::Certified,
        _ => HVectorValidity::Assumed,
    };
    Ok(BettiReport {
        betti,
        h_vector_valid: validity,
    })
}

fn is_shelling_step(prefix: &[&BTreeSet<usize>], next: &BTreeSet<usize>) -> bool {
    if prefix.is_empty() {
        return true;
    }
    // Facets of `next` already present in the prior complex.
    let facets: Vec<BTreeSet<usize>> = next
        .iter()
        .map(|i| {
            let mut f = next.clone();
            f.remove(i);
            f
        })
        .collect();
    let present: Vec<&BTreeSet<usize>> = facets
        .iter()
        .filter(|f| prefix.iter().any(|p| f.is_subset(p)))
        .collect();
    if present.is_empty() {
        return false;
    }
    // The intersection with each earlier simplex must sit inside one of
    // those facets (purity of the attachment locus).
    for p in prefix {
        let inter: BTreeSet<usize> = next.intersection(p).copied().collect();
        if !present.iter().any(|f| inter.is_subset(f)) {
            return false;
        }
    }
    true
}

fn shelling_backtrack<'a>(
    remaining: &mut Vec<&'a BTreeSet<usize>>,
    prefix: &mut Vec<&'a BTreeSet<usize>>,
    order: &mut Vec<usize>,
    indices: &mut Vec<usize>,
) -> bool {
    if remaining.is_empty() {
        return true;
    }
    for k in 0..remaining.len() {
        if is_shelling_step(prefix, remaining[k]) {
            let s = remaining.remove(k);
            let idx = indices.remove(k);
            prefix.push(s);
            order.push(idx);
            if shelling_backtrack(remaining, prefix, order, indices) {
                return true;
            }
            prefix.pop();
            order.pop();
            remaining.insert(k, s);
            indices.insert(k, idx);
        }
    }
    false
}

/// Backtracking search for a shelling order (0-based positions into
/// `t.simplices()`); None when the complex is not shellable. Guarded by
/// a simplex-count cap against the exponential worst case.
pub fn shelling_order(t: &Triangulation, cap: usize) -> Result<Option<Vec<usize>>, Error> {
    let k = t.simplices().len();
    if k > cap {
        return Err(Error::CapExceeded(cap));
    }
    let mut remaining: Vec<&BTreeSet<usize>> = t.simplices().iter().collect();
    let mut indices: Vec<usize> = (0..k).collect();
    let mut prefix = Vec::new();
    let mut order = Vec::new();
    if shelling_backtrack(&mut remaining, &mut prefix, &mut order, &mut indices) {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}
