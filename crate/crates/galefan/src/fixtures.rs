//! Shared regression fixtures. Rational ones use integer literals; the
//! algebraic ones fix a minimal polynomial and isolating interval once.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::config::{PointConfiguration, VectorConfiguration};
use crate::error::Error;
use crate::scalar::{AlgebraicField, Scalar};

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Fan of CP^1 x CP^1 blown up at one point: five rays in Z^2.
pub fn blowup_five() -> Result<VectorConfiguration, Error> {
    VectorConfiguration::from_i64(
        2,
        5,
        &[vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1]],
    )
}

/// The previous configuration made balanced and odd by hand: the two
/// appended vectors (1,-1) and (0,0) are ghosts.
pub fn blowup_seven() -> Result<VectorConfiguration, Error> {
    VectorConfiguration::from_i64(
        2,
        5,
        &[
            vec![1, 0],
            vec![0, 1],
            vec![-1, 1],
            vec![-1, 0],
            vec![0, -1],
            vec![1, -1],
            vec![0, 0],
        ],
    )
}

/// Maximal cones of the blowup fan, 1-based index pairs.
pub fn blowup_simplices() -> Vec<Vec<usize>> {
    vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 1]]
}

/// Q(theta) with theta = sin(72 degrees), the positive root of
/// x^4 - (5/4)x^2 + 5/16 in (9/10, 1).
pub fn sin72_field() -> Arc<AlgebraicField> {
    let minpoly = vec![frac(5, 16), frac(0, 1), frac(-5, 4), frac(0, 1), frac(1, 1)];
    AlgebraicField::new(minpoly, frac(9, 10), BigRational::one())
        .expect("sin 72 field")
}

/// Unit vectors at angles 2*pi*k/5: the regular pentagon's rays. With
/// s = sin 72, cos 72 = 2s^2 - 3/2, cos 144 = -2s^2 + 1, sin 144 = 4s^3 - 3s.
pub fn pentagon() -> Result<VectorConfiguration, Error> {
    let field = sin72_field();
    let s = |coeffs: Vec<BigRational>| Scalar::algebraic(field.clone(), coeffs);
    let zero = frac(0, 1);
    let cos72 = s(vec![frac(-3, 2), zero.clone(), frac(2, 1)]);
    let sin72 = Scalar::theta(field.clone());
    let cos144 = s(vec![frac(1, 1), zero.clone(), frac(-2, 1)]);
    let sin144 = s(vec![zero.clone(), frac(-3, 1), zero.clone(), frac(4, 1)]);
    VectorConfiguration::new(
        2,
        5,
        vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![cos72.clone(), sin72.clone()],
            vec![cos144.clone(), sin144.clone()],
            vec![cos144, -sin144],
            vec![cos72, -sin72],
        ],
    )
}

/// Consecutive-pair cones of the pentagon fan.
pub fn pentagon_simplices() -> Vec<Vec<usize>> {
    vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 1]]
}

/// Q(sqrt 2): x^2 - 2 on (1, 2).
pub fn sqrt2_field() -> Arc<AlgebraicField> {
    let minpoly = vec![frac(-2, 1), frac(0, 1), frac(1, 1)];
    AlgebraicField::new(minpoly, frac(1, 1), frac(2, 1)).expect("sqrt 2 field")
}

/// Balanced odd configuration with irrational entries but rational
/// relation space Rel = span{(1,1,1)}.
pub fn sqrt2_triple() -> Result<VectorConfiguration, Error> {
    let field = sqrt2_field();
    let t = Scalar::theta(field);
    VectorConfiguration::new(
        2,
        3,
        vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![t.clone(), Scalar::one()],
            vec![-(Scalar::one() + t), Scalar::from_int(-1)],
        ],
    )
}

/// Six points at the vertices of a regular hexagon (scaled to stay in
/// Z^2), labeled counterclockwise from the top.
pub fn hexagon_points() -> Result<PointConfiguration, Error> {
    PointConfiguration::from_i64(
        1,
        &[
            vec![0, 2],
            vec![2, 1],
            vec![2, -1],
            vec![0, -2],
            vec![-2, -1],
            vec![-2, 1],
        ],
    )
}

/// Virtual chamber on the hexagon that is not a chamber: the open
/// triangles meet pairwise but have empty total intersection.
pub fn hexagon_family_one() -> Vec<Vec<usize>> {
    vec![
        vec![1, 3, 5],
        vec![2, 4, 6],
        vec![1, 3, 6],
        vec![2, 3, 5],
        vec![1, 4, 5],
        vec![1, 4, 6],
        vec![2, 3, 6],
        vec![2, 4, 5],
    ]
}

/// Honest chamber on the hexagon: exactly the triples whose open
/// triangle contains the point (1, 0).
pub fn hexagon_family_two() -> Vec<Vec<usize>> {
    vec![
        vec![1, 2, 4],
        vec![1, 3, 4],
        vec![1, 3, 5],
        vec![1, 3, 6],
        vec![2, 3, 5],
        vec![2, 3, 6],
        vec![2, 4, 5],
        vec![2, 4, 6],
    ]
}

/// The distinguished interior point for the second hexagon family.
pub fn hexagon_nu() -> Vec<Scalar> {
    vec![Scalar::one(), Scalar::zero()]
}

/// Two nested homothetic triangles with a cyclic twist, lifted to
/// height 1 in R^3: the classic non-regular triangulation. The six
/// graded vectors alone span only the upper cone, so a seventh
/// downward vector (-1,-1,-1) completes the fan; non-regularity survives because
/// the heights LP already fails on the lifted sub-triangulation.
pub fn nonregular_complete() -> Result<(VectorConfiguration, crate::fan::Triangulation), Error> {
    let v = VectorConfiguration::from_i64(
        3,
        7,
        &[
            vec![4, 0, 1],
            vec![0, 4, 1],
            vec![0, 0, 1],
            vec![2, 1, 1],
            vec![1, 2, 1],
            vec![1, 1, 1],
            vec![-1, -1, -1],
        ],
    )?;
    let t = crate::fan::Triangulation::from_slices(
        7,
        3,
        &[
            vec![1, 2, 4],
            vec![2, 4, 5],
            vec![2, 3, 5],
            vec![3, 5, 6],
            vec![1, 3, 6],
            vec![1, 4, 6],
            vec![4, 5, 6],
            vec![1, 2, 7],
            vec![2, 3, 7],
            vec![1, 3, 7],
        ],
    )?;
    Ok((v, t))
}

/// Gale-dual point configuration of the extended blowup fixture,
/// recomputed rather than frozen so the duality tests stay honest.
pub fn blowup_points() -> Result<PointConfiguration, Error> {
    crate::config::gale_dual(&blowup_seven()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_vectors_are_unit_and_balanced() {
        let v = pentagon().unwrap();
        for j in 0..5 {
            let norm = v.vector(j)[0].clone() * v.vector(j)[0].clone()
                + v.vector(j)[1].clone() * v.vector(j)[1].clone();
            assert!(norm.is_rational() && norm == Scalar::one(), "vector {}", j);
        }
        assert!(v.is_balanced());
    }

    #[test]
    fn pentagon_angles_are_sorted() {
        let v = pentagon().unwrap();
        let angles: Vec<f64> = (0..5)
            .map(|j| {
                v.vector(j)[1]
                    .approx_f64()
                    .atan2(v.vector(j)[0].approx_f64())
            })
            .collect();
        let expected = [0.0, 1.2566, 2.5133, -2.5133, -1.2566];
        for (a, e) in angles.iter().zip(expected) {
            assert!((a - e).abs() < 1e-3, "{} vs {}", a, e);
        }
    }

    #[test]
    fn sqrt2_triple_is_balanced_odd() {
        let v = sqrt2_triple().unwrap();
        assert!(v.is_balanced() && v.is_odd());
    }
}
