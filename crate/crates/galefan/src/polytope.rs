//! Polytope presentations with inward normals <mu, v_j> >= l_j, the
//! three polytopality oracles (heights LP, chamber LP, nu biconditional),
//! the variant Delzant check over a lattice, and the squared-modulus
//! (rho) reformulation of the moment-map identities.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::config::{
    gale_dual, steered_relation_basis, Quasilattice, VectorConfiguration,
};
use crate::error::Error;
use crate::fan::{FanCertificate, Triangulation};
use crate::lp::{lp_feasible, Certificate, LinearSystem, Relation};
use crate::lvmb::{complements, is_basis, is_chamber, LVMBDatum};
use crate::matrix::{dot, Matrix};
use crate::scalar::Scalar;

/// Bounded full-dimensional intersection of half-spaces; the first h
/// are the designated facet normals, the rest are candidate ghosts.
#[derive(Clone, Debug)]
pub struct PolytopePresentation {
    dim: usize,
    facet_count: usize,
    normals: Vec<Vec<Scalar>>,
    levels: Vec<Scalar>,
    quasilattice: Option<Quasilattice>,
}

impl PolytopePresentation {
    pub fn new(
        dim: usize,
        facet_count: usize,
        normals: Vec<Vec<Scalar>>,
        levels: Vec<Scalar>,
        quasilattice: Option<Quasilattice>,
    ) -> Result<Self, Error> {
        if normals.len() != levels.len() || facet_count > normals.len() {
            return Err(Error::CardinalityMismatch(
                "normals/levels/facet count disagree".into(),
            ));
        }
        for v in &normals {
            if v.len() != dim {
                return Err(Error::Dimension("normal of wrong arity".into()));
            }
        }
        let n = normals.len();
        // Full-dimensional: a point strictly inside every half-space.
        let mut interior = LinearSystem::new(dim);
        for j in 0..n {
            interior.push(normals[j].clone(), Relation::Gt, levels[j].clone());
        }
        if !lp_feasible(&interior).is_feasible() {
            return Err(Error::NotFullDimensional);
        }
        // Bounded: the recession cone {u : <u, v_j> >= 0} is {0}; probe
        // each signed coordinate direction with a strict LP.
        for k in 0..dim {
            for sign in [1i64, -1] {
                let mut sys = LinearSystem::new(dim);
                for v in &normals {
                    sys.push(v.clone(), Relation::Ge, Scalar::zero());
                }
                let mut coeffs = vec![Scalar::zero(); dim];
                coeffs[k] = Scalar::from_int(sign);
                sys.push(coeffs, Relation::Gt, Scalar::zero());
                if lp_feasible(&sys).is_feasible() {
                    return Err(Error::Unbounded("nontrivial recession direction".into()));
                }
            }
        }
        Ok(PolytopePresentation {
            dim,
            facet_count,
            normals,
            levels,
            quasilattice,
        })
    }

    pub fn from_i64(
        dim: usize,
        facet_count: usize,
        normals: &[Vec<i64>],
        levels: &[i64],
    ) -> Result<Self, Error> {
        PolytopePresentation::new(
            dim,
            facet_count,
            normals
                .iter()
                .map(|v| v.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
            levels.iter().map(|&x| Scalar::from_int(x)).collect(),
            None,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    pub fn normal(&self, j: usize) -> &[Scalar] {
        &self.normals[j]
    }

    pub fn normals(&self) -> &[Vec<Scalar>] {
        &self.normals
    }

    pub fn level(&self, j: usize) -> &Scalar {
        &self.levels[j]
    }

    pub fn levels(&self) -> &[Scalar] {
        &self.levels
    }

    pub fn quasilattice(&self) -> Option<&Quasilattice> {
        self.quasilattice.as_ref()
    }

    /// The normals as a vector configuration (boundedness forces them to
    /// positively span, hence span).
    pub fn normal_configuration(&self) -> Result<VectorConfiguration, Error> {
        VectorConfiguration::new(self.dim, self.facet_count, self.normals.clone())
    }

    pub fn slack(&self, mu: &[Scalar], j: usize) -> Scalar {
        dot(mu, &self.normals[j]) - self.levels[j].clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub point: Vec<Scalar>,
    /// 1-based indices of all half-spaces active (slack zero) here.
    pub active: Vec<usize>,
}

/// Vertex enumeration by d-subset solves, filtered by feasibility and
/// deduplicated; active sets recomputed against every half-space.
pub fn vertices(p: &PolytopePresentation) -> Vec<Vertex> {
    let d = p.dim();
    let n = p.len();
    let mut out: Vec<Vertex> = Vec::new();
    for subset in (0..n).combinations(d) {
        let rows: Vec<Vec<Scalar>> = subset.iter().map(|&j| p.normal(j).to_vec()).collect();
        let m = Matrix::from_rows(rows);
        if m.rank() != d {
            continue;
        }
        let rhs: Vec<Scalar> = subset.iter().map(|&j| p.level(j).clone()).collect();
        let mu = match m.solve(&rhs) {
            Some(mu) => mu,
            None => continue,
        };
        if (0..n).any(|j| p.slack(&mu, j).is_negative()) {
            continue;
        }
        if out.iter().any(|v| v.point == mu) {
            continue;
        }
        let active = (0..n).filter(|&j| p.slack(&mu, j).is_zero()).map(|j| j + 1).collect();
        out.push(Vertex { point: mu, active });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexClass {
    /// Supports P in a (d-1)-dimensional face.
    Facet,
    /// Slack strictly positive everywhere on P.
    StrictlyRedundant,
    /// Slack reaches zero but the contact locus is not a facet.
    Degenerate,
}

#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub classes: Vec<IndexClass>,
    /// Primitivity of the first h normals, when the quasilattice is an
    /// honest lattice.
    pub primitive: Option<Vec<bool>>,
    pub vertices: Vec<Vertex>,
}

impl PresentationReport {
    /// First h indices facet-defining, the rest strictly redundant.
    pub fn is_clean(&self, facet_count: usize) -> bool {
        self.classes.iter().enumerate().all(|(j, c)| {
            if j < facet_count {
                *c == IndexClass::Facet
            } else {
                *c == IndexClass::StrictlyRedundant
            }
        })
    }

    pub fn degenerate_indices(&self) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == IndexClass::Degenerate)
            .map(|(j, _)| j + 1)
            .collect()
    }
}

fn affine_rank(points: &[&Vec<Scalar>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let rows: Vec<Vec<Scalar>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(base.iter())
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).rank()
}

/// Classify every half-space by its minimum slack over the (finitely
/// many) vertices: positive -> strictly redundant; zero on a
/// (d-1)-dimensional contact set -> facet; zero otherwise -> degenerate.
pub fn validate_presentation(p: &PolytopePresentation) -> Result<PresentationReport, Error> {
    let verts = vertices(p);
    if verts.is_empty() {
        return Err(Error::NotFullDimensional);
    }
    let mut classes = Vec::with_capacity(p.len());
    for j in 0..p.len() {
        let touching: Vec<&Vec<Scalar>> = verts
            .iter()
            .filter(|v| p.slack(&v.point, j).is_zero())
            .map(|v| &v.point)
            .collect();
        if touching.is_empty() {
            classes.push(IndexClass::StrictlyRedundant);
        } else if affine_rank(&touching) == p.dim() - 1 {
            classes.push(IndexClass::Facet);
        } else {
            classes.push(IndexClass::Degenerate);
        }
    }
    let primitive = match p.quasilattice() {
        Some(q) if q.is_lattice() => {
            let mut flags = Vec::new();
            for j in 0..p.facet_count() {
                flags.push(crate::config::is_primitive(p.normal(j), q).unwrap_or(false));
            }
            Some(flags)
        }
        _ => None,
    };
    Ok(PresentationReport {
        classes,
        primitive,
        vertices: verts,
    })
}

/// Normal fan: ray generators are the (inward) normals, maximal cones
/// are the active sets at the vertices. Requires a simple polytope.
pub fn normal_fan(p: &PolytopePresentation) -> Result<(VectorConfiguration, Triangulation), Error> {
    let verts = vertices(p);
    let mut simplices = Vec::new();
    for v in &verts {
        if v.active.len() != p.dim() {
            return Err(Error::NotSimple(format!(
                "vertex with active set {:?}",
                v.active
            )));
        }
        simplices.push(v.active.clone());
    }
    let vc = p.normal_configuration()?;
    let t = Triangulation::from_slices(p.len(), p.dim(), &simplices)?;
    Ok((vc, t))
}

#[derive(Clone, Debug)]
pub struct HeightCertificate {
    pub heights: Option<Vec<Scalar>>,
    pub certificate: Certificate,
}

/// Regularity of a validated triangulation: one strict LP in heights
/// omega, demanding the affine lift induced on each maximal simplex
/// stays strictly below omega_i at every outside vector (ghosts
/// included; a zero ghost contributes 0 < omega_ghost).
pub fn regularity_certificate(
    v: &VectorConfiguration,
    t: &Triangulation,
    cert: &FanCertificate,
) -> Result<HeightCertificate, Error> {
    if !cert.is_valid() {
        return Err(Error::NotValidated);
    }
    Ok(heights_lp(v, t))
}

/// The heights LP itself, usable on raw (V, T) pairs for oracle
/// cross-checks.
pub fn heights_lp(v: &VectorConfiguration, t: &Triangulation) -> HeightCertificate {
    let n = v.len();
    let d = v.dim();
    let mut sys = LinearSystem::new(n);
    for s in t.simplices() {
        let idx: Vec<usize> = s.iter().copied().collect();
        let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| v.vector(i - 1).to_vec()).collect();
        let basis = Matrix::from_rows(rows).transpose();
        for i in 1..=n {
            if s.contains(&i) {
                continue;
            }
            // ell_tau(v_i) expressed in the omega's of tau by the exact
            // simplicial-coordinate solve.
            let coords = basis
                .solve(v.vector(i - 1))
                .expect("validated simplices are bases");
            let mut coeffs = vec![Scalar::zero(); n];
            coeffs[i - 1] = Scalar::one();
            for (k, &j) in idx.iter().enumerate() {
                coeffs[j - 1] = coeffs[j - 1].clone() - coords[k].clone();
            }
            let _ = d;
            sys.push(coeffs, Relation::Gt, Scalar::zero());
        }
    }
    let cert = lp_feasible(&sys);
    HeightCertificate {
        heights: cert.witness().map(|w| w.to_vec()),
        certificate: cert,
    }
}

/// Chamber oracle, re-exported from `lvmb` for the polytopality suite.
pub fn chamber_point(datum: &LVMBDatum) -> Certificate {
    is_chamber(datum)
}

/// Strict barycentric membership of nu in the open simplex on sigma.
fn strictly_inside(datum: &LVMBDatum, sigma: &[usize], nu: &[Scalar]) -> bool {
    let m = datum.points.m();
    let rows: Vec<Vec<Scalar>> = sigma
        .iter()
        .map(|&i| {
            let mut row = vec![Scalar::one()];
            row.extend(datum.points.point(i - 1).iter().cloned());
            row
        })
        .collect();
    let mut rhs = vec![Scalar::one()];
    rhs.extend(nu.iter().cloned());
    match Matrix::from_rows(rows).transpose().solve(&rhs) {
        Some(lambda) => lambda.iter().all(|l| l.is_positive()),
        None => false,
    }
    .then_some(())
    .is_some()
        && sigma.len() == 2 * m + 1
}

/// Item 6 of the polytopality suite: a candidate nu from the chamber LP,
/// then the full biconditional over every basis-sized subset.
pub fn nu_characterization(
    datum: &LVMBDatum,
    t: &Triangulation,
) -> Result<Option<Vec<Scalar>>, Error> {
    let dual = complements(t)?;
    let mut ours: Vec<_> = datum.chamber.bases().to_vec();
    let mut theirs: Vec<_> = dual.bases().to_vec();
    ours.sort();
    theirs.sort();
    if ours != theirs {
        return Err(Error::CardinalityMismatch(
            "datum and triangulation are not complement-dual".into(),
        ));
    }
    let cert = is_chamber(datum);
    let nu = match crate::lvmb::chamber_witness_point(datum, &cert) {
        Some(nu) => nu,
        None => return Ok(None),
    };
    let n = datum.points.len();
    let k = 2 * datum.points.m() + 1;
    for sigma in (1..=n).combinations(k) {
        if !is_basis(&sigma, &datum.points)? {
            continue;
        }
        let inside = strictly_inside(datum, &sigma, &nu);
        let member = datum
            .chamber
            .contains(&sigma.iter().copied().collect());
        if inside != member {
            return Ok(None);
        }
    }
    Ok(Some(nu))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldClass {
    Lvm,
    LvmbNotLvm,
}

#[derive(Clone, Debug)]
pub struct PolytopalityReport {
    pub polytopal: bool,
    pub transversely_kaehler: bool,
    pub class: ManifoldClass,
    pub heights: Option<Vec<Scalar>>,
    pub nu: Option<Vec<Scalar>>,
}

/// Runs the three oracles independently and insists they agree:
/// heights LP, chamber LP on the Gale-dual datum, nu biconditional.
pub fn polytopality_report(
    v: &VectorConfiguration,
    t: &Triangulation,
    cert: &FanCertificate,
) -> Result<PolytopalityReport, Error> {
    let heights = regularity_certificate(v, t, cert)?;

    // Gale-dual datum over the balanced-odd extension; the appended
    // ghost indices join every complement basis.
    let vb = v.balance_and_oddify();
    let tb = Triangulation::from_slices(
        vb.len(),
        v.dim(),
        &t.simplices()
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect::<Vec<Vec<usize>>>(),
    )?;
    let points = gale_dual(&vb)?;
    let datum = LVMBDatum::new(points, complements(&tb)?)?;
    let chamber = chamber_point(&datum);
    let nu = nu_characterization(&datum, &tb)?;

    let flags = [
        heights.heights.is_some(),
        chamber.is_feasible(),
        nu.is_some(),
    ];
    if flags[1] != flags[0] || flags[2] != flags[0] {
        return Err(Error::OracleDisagreement(format!(
            "heights {} / chamber {} / nu {}",
            flags[0], flags[1], flags[2]
        )));
    }
    let polytopal = flags[0];
    Ok(PolytopalityReport {
        polytopal,
        transversely_kaehler: polytopal,
        class: if polytopal {
            ManifoldClass::Lvm
        } else {
            ManifoldClass::LvmbNotLvm
        },
        heights: heights.heights,
        nu,
    })
}

#[derive(Clone, Debug)]
pub struct DelzantReport {
    pub simple: bool,
    pub rational: bool,
    pub delzant: bool,
    /// Lerman-Tolman labels of the first h normals (v_j = m_j u_j with
    /// u_j primitive); meaningful when `lerman_tolman_valid`.
    pub labels: Vec<BigInt>,
    pub lerman_tolman_valid: bool,
}

/// The variant Delzant condition at each vertex: the primitive
/// generators of its maximal normal cone form a Z-basis of L, and the
/// prefix normals are themselves primitive.
pub fn delzant_check(p: &PolytopePresentation, lattice: &Quasilattice) -> Result<DelzantReport, Error> {
    if !lattice.is_lattice() {
        return Err(Error::NotALattice);
    }
    let verts = vertices(p);
    let simple = verts.iter().all(|v| v.active.len() == p.dim());

    let mut rational = true;
    let mut labels = Vec::with_capacity(p.facet_count());
    // Primitive coordinates of each prefix normal in the HNF basis of L.
    let mut prim_coords: Vec<Option<Vec<BigInt>>> = Vec::new();
    for j in 0..p.facet_count() {
        match lattice.coords(p.normal(j))? {
            Some(coords) => {
                let mut g = BigInt::zero();
                for c in &coords {
                    g = g.gcd(c);
                }
                labels.push(g.clone());
                prim_coords.push(Some(coords.iter().map(|c| c / &g).collect()));
            }
            None => {
                rational = false;
                labels.push(BigInt::zero());
                prim_coords.push(None);
            }
        }
    }

    let mut bases_ok = simple && rational;
    if bases_ok {
        for v in &verts {
            let rows: Vec<Vec<BigInt>> = v
                .active
                .iter()
                .map(|&j| {
                    if j <= p.facet_count() {
                        prim_coords[j - 1].clone()
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<_>>>()
                .unwrap_or_default();
            if rows.len() != p.dim() {
                bases_ok = false;
                break;
            }
            let k = rows[0].len();
            let m = crate::hnf::IntMatrix::new(
                rows.len(),
                k,
                rows.into_iter().flatten().collect(),
            );
            let det = crate::hnf::det(&m);
            if det != BigInt::one() && det != -BigInt::one() {
                bases_ok = false;
                break;
            }
        }
    }
    let delzant = bases_ok && labels.iter().all(|m| m.is_one());
    Ok(DelzantReport {
        simple,
        rational,
        delzant,
        labels,
        lerman_tolman_valid: bases_ok,
    })
}

#[derive(Clone, Debug)]
pub struct MomentData {
    /// n x (n-d); columns form a canonical basis of Rel(V), the first
    /// being all-ones when V is balanced.
    pub m: Matrix,
    pub levels: Vec<Scalar>,
    /// Sphere radius -sum(l_j), defined when V is balanced.
    pub r: Option<Scalar>,
}

pub fn moment_data(p: &PolytopePresentation) -> Result<MomentData, Error> {
    let v = p.normal_configuration()?;
    let m = steered_relation_basis(&v).transpose();
    let r = if v.is_balanced() {
        let mut s = Scalar::zero();
        for l in p.levels() {
            s += l.clone();
        }
        Some(-s)
    } else {
        None
    };
    Ok(MomentData {
        m,
        levels: p.levels().to_vec(),
        r,
    })
}

#[derive(Clone, Debug)]
pub struct ReducedReport {
    pub slice_dim: usize,
    pub vertex_count: usize,
    pub pullback_bijection: bool,
    pub sphere_radius: Option<Scalar>,
    /// Some redundant half-space touches rho_j = 0: the level set is
    /// singular there, the reduced space unaffected.
    pub singular_level_set: bool,
}

/// Verifies, in squared-modulus coordinates rho_j = <mu, v_j> - l_j >= 0,
/// that the affine slice {rho >= 0 : (rho + l) M = 0} is exactly the
/// image of P: vertex images satisfy the relations, the slice has
/// dimension d, and every slice vertex (enumerated independently in a
/// chart of the slice) pulls back to a vertex of P.
pub fn reduced_polytope_check(p: &PolytopePresentation) -> Result<ReducedReport, Error> {
    let md = moment_data(p)?;
    let n = p.len();
    let d = p.dim();
    let verts = vertices(p);
    let rho_of = |mu: &[Scalar]| -> Vec<Scalar> {
        (0..n).map(|j| p.slack(mu, j)).collect()
    };
    // Vertex images satisfy the slice equations.
    for v in &verts {
        let rho = rho_of(&v.point);
        for c in 0..md.m.cols() {
            let mut acc = Scalar::zero();
            for j in 0..n {
                acc += (rho[j].clone() + md.levels[j].clone()) * md.m.at(j, c).clone();
            }
            if !acc.is_zero() {
                return Err(Error::OracleDisagreement(
                    "vertex image violates a relation".into(),
                ));
            }
        }
    }
    // Slice dimension: n - rank(M) = d.
    let slice_dim = n - md.m.rank();
    if slice_dim != d {
        return Err(Error::OracleDisagreement("slice dimension mismatch".into()));
    }
    // Chart of the slice: rho = rho0 + y B with B a basis of the
    // solution space of x M = 0, rho0 the image of the first vertex.
    let b = md.m.transpose().kernel_basis();
    debug_assert_eq!(b.rows(), d);
    let rho0 = rho_of(&verts[0].point);
    // Slice as a presentation in y-space: sum_k y_k B[k][j] >= -rho0[j].
    let slice = PolytopePresentation::new(
        d,
        n,
        (0..n).map(|j| b.col_vec(j)).collect(),
        (0..n).map(|j| -rho0[j].clone()).collect(),
        None,
    )?;
    let slice_verts = vertices(&slice);
    // Pull each slice vertex back through the normals and match it with
    // a vertex of P.
    let normal_rows = Matrix::from_rows(p.normals().to_vec());
    let mut matched = vec![false; verts.len()];
    let mut bijection = slice_verts.len() == verts.len();
    for sv in &slice_verts {
        let rho: Vec<Scalar> = (0..n)
            .map(|j| rho0[j].clone() + dot(&sv.point, &b.col_vec(j)))
            .collect();
        let rhs: Vec<Scalar> = (0..n).map(|j| rho[j].clone() + p.level(j).clone()).collect();
        let mu = match normal_rows.solve(&rhs) {
            Some(mu) => mu,
            None => {
                bijection = false;
                continue;
            }
        };
        match verts.iter().position(|v| v.point == mu) {
            Some(i) if !matched[i] => matched[i] = true,
            _ => bijection = false,
        }
    }
    bijection = bijection && matched.iter().all(|&m| m);
    // Sphere identity on the slice when balanced.
    let mut sphere_radius = None;
    if let Some(r) = &md.r {
        for v in &verts {
            let rho = rho_of(&v.point);
            let mut acc = Scalar::zero();
            for j in 0..n {
                acc += rho[j].clone() + md.levels[j].clone();
            }
            if !acc.is_zero() {
                return Err(Error::OracleDisagreement(
                    "sphere identity fails at a vertex".into(),
                ));
            }
        }
        sphere_radius = Some(r.clone());
    }
    // Redundant half-space touching rho_j = 0.
    let singular = (p.facet_count()..n).any(|j| {
        verts.iter().any(|v| p.slack(&v.point, j).is_zero())
    });
    Ok(ReducedReport {
        slice_dim,
        vertex_count: slice_verts.len(),
        pullback_bijection: bijection,
        sphere_radius,
        singular_level_set: singular,
    })
}

/// True iff Span_Z{v_1..v_n} equals the quasilattice Q (defaulting to
/// that very span, so presentations without an explicit Q are trivially
/// connected). Ghost half-spaces count: appending normals carrying
/// missing generators is exactly how a disconnected N is repaired.
pub fn n_group_connected(
    v: &VectorConfiguration,
    q: Option<&Quasilattice>,
) -> Result<bool, Error> {
    let span = crate::config::quasilattice_info(v)?;
    let full = match q {
        Some(q) => q.clone(),
        None => return Ok(true),
    };
    Ok(span.same_as(&full))
}
