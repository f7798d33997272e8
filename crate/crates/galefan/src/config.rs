//! Vector and point configurations, the Gale duality dictionary,
//! balancing/oddification, quasilattices and the rationality invariants
//! a(V), b(V).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::hnf::{self, HnfResult, IntMatrix};
use crate::matrix::Matrix;
use crate::scalar::{common_field_of, Scalar};

/// Ordered list of n vectors spanning R^d; repetitions and zero vectors
/// allowed. The first `facet_count` vectors are the designated ray
/// generators, indices beyond are the candidate ghost range.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorConfiguration {
    dim: usize,
    facet_count: usize,
    vectors: Vec<Vec<Scalar>>,
}

impl VectorConfiguration {
    pub fn new(
        dim: usize,
        facet_count: usize,
        vectors: Vec<Vec<Scalar>>,
    ) -> Result<Self, Error> {
        if vectors.is_empty() {
            return Err(Error::InvalidInput("empty configuration".into()));
        }
        if facet_count > vectors.len() {
            return Err(Error::InvalidInput(
                "facet count exceeds number of vectors".into(),
            ));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::Dimension(format!(
                    "vector of length {} in dimension {}",
                    v.len(),
                    dim
                )));
            }
        }
        let flat: Vec<Scalar> = vectors.iter().flatten().cloned().collect();
        common_field_of(&flat)?;
        let cfg = VectorConfiguration {
            dim,
            facet_count,
            vectors,
        };
        if dim > 0 && cfg.matrix().rank() != dim {
            return Err(Error::DegenerateConfiguration(
                "vectors do not span the ambient space".into(),
            ));
        }
        Ok(cfg)
    }

    pub fn from_i64(dim: usize, facet_count: usize, rows: &[Vec<i64>]) -> Result<Self, Error> {
        VectorConfiguration::new(
            dim,
            facet_count,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    pub fn vector(&self, i: usize) -> &[Scalar] {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    /// d x n matrix with the vectors as columns.
    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.len());
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                *m.at_mut(i, j) = x.clone();
            }
        }
        m
    }

    pub fn is_balanced(&self) -> bool {
        (0..self.dim).all(|i| {
            let mut acc = Scalar::zero();
            for v in &self.vectors {
                acc += v[i].clone();
            }
            acc.is_zero()
        })
    }

    pub fn is_odd(&self) -> bool {
        (self.len() - self.dim) % 2 == 1
    }

    /// Basis of Rel(V) = right kernel of the d x n matrix, one relation
    /// per row, in canonical echelon-derived form.
    pub fn relation_basis(&self) -> Matrix {
        self.matrix().kernel_basis()
    }

    /// Append -sum(v) if unbalanced, then a zero vector if n - d is even.
    /// Idempotent; preserves the Z-span, the first h vectors, and ends
    /// balanced and odd. Appended indices are ghosts.
    pub fn balance_and_oddify(&self) -> VectorConfiguration {
        let mut vectors = self.vectors.clone();
        if !self.is_balanced() {
            let mut s = vec![Scalar::zero(); self.dim];
            for v in &vectors {
                for (i, x) in v.iter().enumerate() {
                    s[i] += x.clone();
                }
            }
            vectors.push(s.into_iter().map(|x| -x).collect());
        }
        if (vectors.len() - self.dim) % 2 == 0 {
            vectors.push(vec![Scalar::zero(); self.dim]);
        }
        VectorConfiguration {
            dim: self.dim,
            facet_count: self.facet_count,
            vectors,
        }
    }
}

/// n points in R^{2m}, the real rows [Re | Im] of a complex configuration,
/// not contained in a proper affine subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfiguration {
    m: usize,
    points: Vec<Vec<Scalar>>,
}

impl PointConfiguration {
    pub fn new(m: usize, points: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        if points.len() < 2 * m + 1 {
            return Err(Error::InvalidInput(format!(
                "need at least {} points in R^{}",
                2 * m + 1,
                2 * m
            )));
        }
        for p in &points {
            if p.len() != 2 * m {
                return Err(Error::Dimension(format!(
                    "point of length {} in R^{}",
                    p.len(),
                    2 * m
                )));
            }
        }
        let cfg = PointConfiguration { m, points };
        if cfg.graded_lift().rank() != 2 * m + 1 {
            return Err(Error::DegenerateConfiguration(
                "points lie in a proper affine subspace".into(),
            ));
        }
        Ok(cfg)
    }

    pub fn from_i64(m: usize, rows: &[Vec<i64>]) -> Result<Self, Error> {
        PointConfiguration::new(
            m,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, j: usize) -> &[Scalar] {
        &self.points[j]
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    /// (2m+1) x n matrix whose column j is (1, point_j): the graded lift
    /// of the points into the affine chart {x0 = 1}.
    pub fn graded_lift(&self) -> Matrix {
        let n = self.points.len();
        let mut m = Matrix::zero(2 * self.m + 1, n);
        for (j, p) in self.points.iter().enumerate() {
            *m.at_mut(0, j) = Scalar::one();
            for (i, x) in p.iter().enumerate() {
                *m.at_mut(i + 1, j) = x.clone();
            }
        }
        m
    }
}

/// A graded configuration: some affine functional takes value 1 on every
/// vector (exists iff the vectors lie on a common hyperplane off 0).
pub fn is_graded(vectors: &[Vec<Scalar>], dim: usize) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let rows = Matrix::from_rows(vectors.to_vec());
    let ones = vec![Scalar::one(); vectors.len()];
    let _ = dim;
    rows.solve(&ones).is_some()
}

/// Relation basis steered so the first row is the all-ones relation
/// (exists exactly when V is balanced).
pub fn steered_relation_basis(v: &VectorConfiguration) -> Matrix {
    let kernel = v.relation_basis();
    if !v.is_balanced() {
        return kernel;
    }
    let n = v.len();
    let ones = vec![Scalar::one(); n];
    debug_assert!(kernel.row_space_contains(&ones));
    let mut rows = vec![ones];
    for r in 0..kernel.rows() {
        if rows.len() == kernel.rows() {
            break;
        }
        let mut cand = rows.clone();
        cand.push(kernel.row(r).to_vec());
        if Matrix::from_rows(cand.clone()).rank() == rows.len() + 1 {
            rows = cand;
        }
    }
    debug_assert_eq!(rows.len(), kernel.rows());
    Matrix::from_rows(rows)
}

/// Gale dual of a balanced odd configuration: the point configuration
/// read off a canonical relation basis whose first row is normalized to
/// all-ones (the graded lift in the chart {x0 = 1}).
pub fn gale_dual(v: &VectorConfiguration) -> Result<PointConfiguration, Error> {
    if !v.is_balanced() {
        return Err(Error::NotBalancedOdd(
            "vector sum is nonzero".into(),
        ));
    }
    if !v.is_odd() {
        return Err(Error::NotBalancedOdd(format!(
            "n - d = {} is even",
            v.len() - v.dim()
        )));
    }
    let n = v.len();
    let m = (n - v.dim() - 1) / 2;
    let rows = steered_relation_basis(v);
    debug_assert_eq!(rows.rows(), 2 * m + 1);
    let points = (0..n)
        .map(|j| (1..=2 * m).map(|r| rows.at(r, j).clone()).collect())
        .collect();
    PointConfiguration::new(m, points)
}

/// Inverse direction: kernel of the graded lift, columns as vectors in
/// R^{n-2m-1}. The result is balanced and odd; the limiting case
/// n = 2m+1 (compact complex torus) is rejected with `TorusCase`.
pub fn gale_dual_inverse(points: &PointConfiguration) -> Result<VectorConfiguration, Error> {
    let n = points.len();
    let d = n - (2 * points.m() + 1);
    if d == 0 {
        return Err(Error::TorusCase);
    }
    let kernel = points.graded_lift().kernel_basis();
    debug_assert_eq!(kernel.rows(), d);
    let vectors = (0..n).map(|j| kernel.col_vec(j)).collect();
    VectorConfiguration::new(d, n, vectors)
}

/// Rationality invariants of Rel(V): a = largest rational subspace inside,
/// b = smallest rational subspace containing.
pub fn rationality_invariants(v: &VectorConfiguration) -> Result<(usize, usize), Error> {
    let flat: Vec<Scalar> = v.vectors().iter().flatten().cloned().collect();
    let field = common_field_of(&flat)?;
    let degree = field.as_ref().map_or(1, |f| f.degree());
    let n = v.len();
    let d = v.dim();

    // a(V): rational kernel of the stacked theta-coefficient matrices.
    let mut stacked = Vec::new();
    for k in 0..degree {
        for i in 0..d {
            let row: Vec<Scalar> = (0..n)
                .map(|j| Scalar::from_rational(v.vector(j)[i].coeff_vector(degree)[k].clone()))
                .collect();
            stacked.push(row);
        }
    }
    let a = Matrix::from_rows(stacked).kernel_basis().rows();

    // b(V): Q-span of the theta-coefficient components of a relation basis.
    let kernel = v.relation_basis();
    let mut comps = Vec::new();
    for r in 0..kernel.rows() {
        for k in 0..degree {
            let row: Vec<Scalar> = (0..n)
                .map(|j| Scalar::from_rational(kernel.at(r, j).coeff_vector(degree)[k].clone()))
                .collect();
            comps.push(row);
        }
    }
    let b = if comps.is_empty() {
        0
    } else {
        Matrix::from_rows(comps).rank()
    };

    debug_assert!(a <= n - d && n - d <= b);
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeafType {
    pub torus_rank: usize,
    pub euclidean_rank: usize,
    pub all_leaves_closed: bool,
}

/// Topology of the generic foliation leaf: (S^1)^(a-1) x R^(2m-a+1),
/// closed leaves exactly in the rational case.
pub fn leaf_type(v: &VectorConfiguration) -> Result<LeafType, Error> {
    if !v.is_balanced() || !v.is_odd() {
        return Err(Error::NotBalancedOdd("leaf type needs a balanced odd configuration".into()));
    }
    let (a, b) = rationality_invariants(v)?;
    let m = (v.len() - v.dim() - 1) / 2;
    Ok(LeafType {
        torus_rank: a - 1,
        euclidean_rank: 2 * m + 1 - a,
        all_leaves_closed: a == v.len() - v.dim() && b == v.len() - v.dim(),
    })
}

/// Z-span of a configuration, represented through the Q-coefficient
/// flattening so dense (nonrational) spans are still comparable.
#[derive(Clone, Debug)]
pub struct Quasilattice {
    dim: usize,
    degree: usize,
    zmodule_rank: usize,
    is_lattice: bool,
    /// Flattened generators clear to integers: span = rowspan(flat)/denom.
    denom: BigInt,
    flat: IntMatrix,
    hnf: HnfResult,
    generators: Vec<Vec<Scalar>>,
}

fn flatten_vector(v: &[Scalar], degree: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(v.len() * degree);
    for x in v {
        out.extend(x.coeff_vector(degree));
    }
    out
}

impl Quasilattice {
    pub fn from_generators(dim: usize, generators: &[Vec<Scalar>]) -> Result<Self, Error> {
        let flat_scalars: Vec<Scalar> = generators.iter().flatten().cloned().collect();
        let field = common_field_of(&flat_scalars)?;
        let degree = field.as_ref().map_or(1, |f| f.degree());
        let real_rank = if generators.is_empty() {
            0
        } else {
            Matrix::from_rows(generators.to_vec()).rank()
        };

        let flat_rows: Vec<Vec<BigRational>> = generators
            .iter()
            .map(|g| flatten_vector(g, degree))
            .collect();
        // Q-rank of the flattened generators.
        let rank_rows: Vec<Vec<Scalar>> = flat_rows
            .iter()
            .map(|r| r.iter().cloned().map(Scalar::from_rational).collect())
            .collect();
        let zmodule_rank = if rank_rows.is_empty() {
            0
        } else {
            Matrix::from_rows(rank_rows).rank()
        };

        let mut denom = BigInt::one();
        for row in &flat_rows {
            for x in row {
                denom = denom.lcm(x.denom());
            }
        }
        let data: Vec<BigInt> = flat_rows
            .iter()
            .flat_map(|row| {
                row.iter()
                    .map(|x| (x * BigRational::from(denom.clone())).to_integer())
            })
            .collect();
        let flat = IntMatrix::new(generators.len(), dim * degree, data);
        let hnf = hnf::hnf(&flat);
        Ok(Quasilattice {
            dim,
            degree,
            zmodule_rank,
            // The Z-span is discrete iff no rational dependence collapses
            // under the embedding, i.e. Q-rank of the flattening equals
            // the rank of the generators over R.
            is_lattice: zmodule_rank == real_rank,
            denom,
            flat,
            hnf,
            generators: generators.to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub fn zmodule_rank(&self) -> usize {
        self.zmodule_rank
    }

    pub fn is_lattice(&self) -> bool {
        self.is_lattice
    }

    /// Integer coordinates of v in the HNF basis of the span, or None.
    pub fn coords(&self, v: &[Scalar]) -> Result<Option<Vec<BigInt>>, Error> {
        if v.len() != self.dim {
            return Err(Error::Dimension("member test arity".into()));
        }
        let flat = flatten_vector(v, self.degree);
        // Scale into the cleared-integer representation; membership fails
        // outright if the scaled entries are not integral.
        let mut scaled = Vec::with_capacity(flat.len());
        for x in &flat {
            let y = x * BigRational::from(self.denom.clone());
            if !y.is_integer() {
                return Ok(None);
            }
            scaled.push(y.to_integer());
        }
        Ok(hnf::lattice_coords(&self.hnf, &scaled))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, Error> {
        Ok(self.coords(v)?.is_some())
    }

    /// Same Z-module?
    pub fn same_as(&self, other: &Quasilattice) -> bool {
        if self.dim != other.dim || self.degree != other.degree {
            return false;
        }
        // Clear to a common denominator before comparing integer spans.
        let scale_self = &other.denom / self.denom.gcd(&other.denom);
        let scale_other = &self.denom / self.denom.gcd(&other.denom);
        let a = IntMatrix::new(
            self.flat.rows,
            self.flat.cols,
            self.flat.data.iter().map(|x| x * &scale_self).collect(),
        );
        let b = IntMatrix::new(
            other.flat.rows,
            other.flat.cols,
            other.flat.data.iter().map(|x| x * &scale_other).collect(),
        );
        hnf::same_lattice(&a, &b)
    }
}

/// Quasilattice generated by the vectors of V.
pub fn quasilattice_info(v: &VectorConfiguration) -> Result<Quasilattice, Error> {
    Quasilattice::from_generators(v.dim(), v.vectors())
}

/// Primitivity of v in an honest lattice: gcd of its HNF-basis
/// coordinates is 1. Undefined (error) for dense quasilattices.
pub fn is_primitive(v: &[Scalar], q: &Quasilattice) -> Result<bool, Error> {
    if !q.is_lattice() {
        return Err(Error::NotALattice);
    }
    let coords = q.coords(v)?.ok_or(Error::NotAMember)?;
    let mut g = BigInt::zero();
    for c in &coords {
        g = g.gcd(c);
    }
    Ok(g.is_one())
}
