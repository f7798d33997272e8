//! End-to-end acceptance gate. One test per criterion, each ending in a
//! single pass line; the oracles here (Gaussian elimination over Q,
//! Fourier-Motzkin elimination) are written independently of the library
//! internals they cross-check.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galefan::config::{
    gale_dual, gale_dual_inverse, quasilattice_info, rationality_invariants, Quasilattice,
    VectorConfiguration,
};
use galefan::fan::{betti_numbers, fvector, hvector, validate_fan, Triangulation};
use galefan::fixtures;
use galefan::lp::{lp_feasible, verify, LinearSystem, Relation};
use galefan::lvmb::{complements, complements_inv, is_virtual_chamber, manifold_report, LVMBDatum};
use galefan::polytope::{
    heights_lp, moment_data, n_group_connected, polytopality_report, reduced_polytope_check,
    vertices, PolytopePresentation,
};
use galefan::{Scalar, DEFAULT_SEED};

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ salt)
}

// ---- independent rational elimination --------------------------------

/// Row rank over Q by plain fraction-free-less Gaussian elimination;
/// deliberately separate from the library's matrix code.
fn q_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = &rows[r][c] / &pivot;
                for k in c..cols {
                    let sub = &factor * &rows[rank][k];
                    rows[r][k] = &rows[r][k] - &sub;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Kernel basis of the d x n scalar matrix, again by its own
/// elimination (only the scalar arithmetic is shared).
fn scalar_kernel(rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().unwrap();
        for k in 0..ncols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let sub = &f * &m[r][k];
                    m[i][k] = &m[i][k] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(); ncols];
            v[fc] = Scalar::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[ri][fc].clone();
            }
            v
        })
        .collect()
}

/// Brute-force (a, b): a = dim of the rational vectors inside Rel(V),
/// b = Q-dimension of the coefficient components of a Rel basis.
fn rationality_oracle(v: &VectorConfiguration) -> (usize, usize) {
    let n = v.len();
    let degree = v
        .vectors()
        .iter()
        .flatten()
        .find_map(Scalar::field)
        .map_or(1, |f| f.degree());
    // Rational solutions of Vx = 0: stack one Q-row per (row of V, power).
    let mut stacked: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..v.dim() {
        for k in 0..degree {
            stacked.push(
                (0..n)
                    .map(|j| v.vectors()[j][i].coeff_vector(degree)[k].clone())
                    .collect(),
            );
        }
    }
    let a = n - q_rank(stacked);
    // Components of an actual Rel basis.
    let kernel = scalar_kernel(
        &(0..v.dim())
            .map(|i| (0..n).map(|j| v.vectors()[j][i].clone()).collect())
            .collect::<Vec<Vec<Scalar>>>(),
    );
    let mut comps: Vec<Vec<BigRational>> = Vec::new();
    for x in &kernel {
        for k in 0..degree {
            comps.push(x.iter().map(|s| s.coeff_vector(degree)[k].clone()).collect());
        }
    }
    let b = q_rank(comps);
    (a, b)
}

// ---- Fourier-Motzkin feasibility oracle -------------------------------

/// A row `coeffs . x >= rhs` (strict when `strict`).
type FmRow = (Vec<BigRational>, BigRational, bool);

fn fm_feasible(mut rows: Vec<FmRow>, num_vars: usize) -> bool {
    for k in (0..num_vars).rev() {
        let mut lower: Vec<FmRow> = Vec::new();
        let mut upper: Vec<FmRow> = Vec::new();
        let mut rest: Vec<FmRow> = Vec::new();
        for (c, rhs, strict) in rows {
            if c[k].is_zero() {
                rest.push((c, rhs, strict));
            } else if c[k].is_positive() {
                lower.push((c, rhs, strict));
            } else {
                upper.push((c, rhs, strict));
            }
        }
        for (lc, lr, ls) in &lower {
            for (uc, ur, us) in &upper {
                // Scale so the x_k coefficients cancel.
                let lscale = lc[k].recip();
                let uscale = -uc[k].clone().recip();
                let mut c: Vec<BigRational> = (0..k)
                    .map(|j| &lc[j] * &lscale + &uc[j] * &uscale)
                    .collect();
                c.resize(k, BigRational::zero());
                let rhs = lr * &lscale + ur * &uscale;
                rest.push((c, rhs, *ls || *us));
            }
        }
        for row in &mut rest {
            row.0.truncate(k);
        }
        rows = rest;
    }
    rows.iter().all(|(_, rhs, strict)| {
        if *strict {
            rhs.is_negative()
        } else {
            !rhs.is_positive()
        }
    })
}

// ---- randomized generators --------------------------------------------

fn random_config(r: &mut ChaCha8Rng, n: usize, d: usize) -> VectorConfiguration {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..d).map(|_| r.gen_range(-4..=4)).collect())
            .collect();
        if let Ok(v) = VectorConfiguration::from_i64(d, 0, &rows) {
            return v;
        }
    }
}

/// A complete planar fan: distinct rational directions in angular order
/// with every consecutive gap strictly below pi.
fn random_planar_fan(r: &mut ChaCha8Rng, kmax: usize) -> (VectorConfiguration, Triangulation) {
    'outer: loop {
        let k = r.gen_range(3..=kmax);
        let mut dirs: Vec<(i64, i64)> = Vec::new();
        while dirs.len() < k {
            let x: i64 = r.gen_range(-5..=5);
            let y: i64 = r.gen_range(-5..=5);
            if x == 0 && y == 0 {
                continue;
            }
            // Reject repeated directions (collinear, same side).
            if dirs.iter().any(|&(a, b)| a * y == b * x && a * x + b * y > 0) {
                continue;
            }
            dirs.push((x, y));
        }
        dirs.sort_by(|a, b| {
            let ta = (a.1 as f64).atan2(a.0 as f64);
            let tb = (b.1 as f64).atan2(b.0 as f64);
            ta.partial_cmp(&tb).unwrap()
        });
        for i in 0..k {
            let (ax, ay) = dirs[i];
            let (bx, by) = dirs[(i + 1) % k];
            if ax * by - ay * bx <= 0 {
                continue 'outer;
            }
        }
        let rows: Vec<Vec<i64>> = dirs.iter().map(|&(x, y)| vec![x, y]).collect();
        let v = VectorConfiguration::from_i64(2, k, &rows).unwrap();
        let simplices: Vec<Vec<usize>> = (0..k).map(|i| vec![i + 1, (i + 1) % k + 1]).collect();
        let t = Triangulation::from_slices(k, 2, &simplices).unwrap();
        return (v, t);
    }
}

/// Gale-dual datum over the balanced-odd extension, or None when the
/// construction itself fails (a complement fails to be a basis).
fn dual_datum(v: &VectorConfiguration, t: &Triangulation) -> Option<LVMBDatum> {
    let vb = v.balance_and_oddify();
    let sets: Vec<Vec<usize>> = t
        .simplices()
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    let tb = Triangulation::from_slices(vb.len(), v.dim(), &sets).ok()?;
    let points = gale_dual(&vb).ok()?;
    let chamber = complements(&tb).ok()?;
    LVMBDatum::new(points, chamber).ok()
}

fn pentagon_fan() -> (VectorConfiguration, Triangulation) {
    let v = fixtures::pentagon().unwrap();
    let t = Triangulation::from_slices(5, 2, &fixtures::pentagon_simplices()).unwrap();
    (v, t)
}

fn blowup_fan() -> (VectorConfiguration, Triangulation) {
    let v = fixtures::blowup_seven().unwrap();
    let t = Triangulation::from_slices(7, 2, &fixtures::blowup_simplices()).unwrap();
    (v, t)
}

fn hexagon_fan(family: &[Vec<usize>]) -> (VectorConfiguration, Triangulation) {
    let points = fixtures::hexagon_points().unwrap();
    let chamber = galefan::lvmb::VirtualChamber::from_slices(6, 1, family).unwrap();
    let v = gale_dual_inverse(&points).unwrap();
    let t = complements_inv(&chamber).unwrap();
    (v, t)
}

// ---- criteria ----------------------------------------------------------

#[test]
fn criterion_1_paper_fixture_regression() {
    let start = Instant::now();
    let five = fixtures::blowup_five().unwrap();
    let seven = fixtures::blowup_seven().unwrap();
    let extended = five.balance_and_oddify();
    assert_eq!(extended.vectors(), seven.vectors());
    assert_eq!(extended.vectors()[5], vec![Scalar::from_int(1), Scalar::from_int(-1)]);
    assert_eq!(extended.vectors()[6], vec![Scalar::zero(), Scalar::zero()]);

    let q = quasilattice_info(&seven).unwrap();
    let z2 = Quasilattice::from_generators(
        2,
        &[
            vec![Scalar::from_int(1), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_int(1)],
        ],
    )
    .unwrap();
    assert!(q.is_lattice());
    assert!(q.same_as(&z2));

    let (bv, bt) = blowup_fan();
    let report = manifold_report(&dual_datum(&bv, &bt).unwrap()).unwrap();
    assert_eq!(report.complex_dim, 4);

    let (pv, pt) = pentagon_fan();
    let report = manifold_report(&dual_datum(&pv, &pt).unwrap()).unwrap();
    assert_eq!(report.complex_dim, 3);

    assert!(start.elapsed().as_secs() < 1, "criterion 1 must finish in < 1 s");
    println!("criterion 1 (paper-fixture regression): pass");
}

#[test]
fn criterion_2_prop_2_1_equivalence() {
    let start = Instant::now();
    let mut r = rng(2);
    let mut checked = 0;
    let mut positives = 0;

    let check = |v: &VectorConfiguration, t: &Triangulation, checked: &mut usize, positives: &mut usize| {
        let fan_ok = validate_fan(v, t, DEFAULT_SEED).unwrap().is_valid();
        let dual_ok = dual_datum(v, t).is_some_and(|d| is_virtual_chamber(&d));
        assert_eq!(
            fan_ok, dual_ok,
            "Prop 2.1 disagreement on {:?} / {:?}",
            v.vectors(),
            t.simplices()
        );
        *checked += 1;
        if fan_ok {
            *positives += 1;
        }
    };

    // Valid-by-construction planar fans (and the randomized probe seed
    // exercised through validate_fan).
    for _ in 0..80 {
        let (v, t) = random_planar_fan(&mut r, 7);
        check(&v, &t, &mut checked, &mut positives);
    }
    // Arbitrary candidate families, mostly invalid.
    for _ in 0..130 {
        let d = r.gen_range(1..=3usize);
        let n = r.gen_range((d + 1).max(3)..=8usize);
        let v = random_config(&mut r, n, d);
        let family_size = r.gen_range(1..=8usize);
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for _ in 0..family_size {
            let mut s: Vec<usize> = Vec::new();
            while s.len() < d {
                let i = r.gen_range(1..=n);
                if !s.contains(&i) {
                    s.push(i);
                }
            }
            s.sort_unstable();
            if !sets.contains(&s) {
                sets.push(s);
            }
        }
        let Ok(t) = Triangulation::from_slices(n, d, &sets) else {
            continue;
        };
        check(&v, &t, &mut checked, &mut positives);
    }

    assert!(checked >= 200, "only {} instances", checked);
    assert!(positives >= 80, "want genuine fans among the sample");
    assert!(positives < checked, "want failing candidates among the sample");
    assert!(start.elapsed().as_secs() < 300);
    println!(
        "criterion 2 (Prop 2.1 equivalence, {} instances, {} fans): pass",
        checked, positives
    );
}

#[test]
fn criterion_3_polytopality_oracle_agreement() {
    let start = Instant::now();
    // polytopality_report errors out unless all three oracles agree, so
    // Ok(_) certifies pairwise agreement on each instance.
    let fixtures_list: Vec<(VectorConfiguration, Triangulation, bool)> = vec![
        {
            let (v, t) = pentagon_fan();
            (v, t, true)
        },
        {
            let (v, t) = blowup_fan();
            (v, t, true)
        },
        {
            let (v, t) = hexagon_fan(&fixtures::hexagon_family_two());
            (v, t, true)
        },
        {
            let (v, t) = hexagon_fan(&fixtures::hexagon_family_one());
            (v, t, false)
        },
    ];
    for (v, t, expect) in &fixtures_list {
        let cert = validate_fan(v, t, DEFAULT_SEED).unwrap();
        assert!(cert.is_valid());
        let report = polytopality_report(v, t, &cert).unwrap();
        assert_eq!(report.polytopal, *expect);
    }

    // The non-regular fixture: all three oracles reject.
    let (nv, nt) = fixtures::nonregular_complete().unwrap();
    let cert = validate_fan(&nv, &nt, DEFAULT_SEED).unwrap();
    assert!(cert.is_valid());
    let report = polytopality_report(&nv, &nt, &cert).unwrap();
    assert!(!report.polytopal);
    assert!(report.heights.is_none());
    assert!(report.nu.is_none());
    assert!(!heights_lp(&nv, &nt).certificate.is_feasible());
    let datum = dual_datum(&nv, &nt).unwrap();
    assert!(!galefan::lvmb::is_chamber(&datum).is_feasible());

    let mut r = rng(3);
    for _ in 0..50 {
        let (v, t) = random_planar_fan(&mut r, 5);
        let cert = validate_fan(&v, &t, DEFAULT_SEED).unwrap();
        assert!(cert.is_valid());
        // Planar complete fans are always regular; the report must agree
        // with itself and with that fact.
        let report = polytopality_report(&v, &t, &cert).unwrap();
        assert!(report.polytopal);
    }
    let _ = start;
    println!("criterion 3 (polytopality oracle agreement): pass");
}

#[test]
fn criterion_4_rationality_invariants() {
    let start = Instant::now();
    let pentagon = fixtures::pentagon().unwrap();
    assert_eq!(rationality_invariants(&pentagon).unwrap(), (1, 5));
    assert_eq!(rationality_oracle(&pentagon), (1, 5));

    // Rational fixtures: a = b = n - d.
    for v in [
        fixtures::blowup_seven().unwrap(),
        fixtures::blowup_five().unwrap().balance_and_oddify(),
        hexagon_fan(&fixtures::hexagon_family_two()).0,
    ] {
        let nd = v.len() - v.dim();
        assert_eq!(rationality_invariants(&v).unwrap(), (nd, nd));
        assert_eq!(rationality_oracle(&v), (nd, nd));
    }

    // Nonrational Rel spaces: 2 + a <= b, and the oracle agrees.
    let (a, b) = rationality_invariants(&pentagon).unwrap();
    assert!(2 + a <= b);
    let sqrt2 = fixtures::sqrt2_triple().unwrap();
    assert_eq!(
        rationality_invariants(&sqrt2).unwrap(),
        rationality_oracle(&sqrt2)
    );
    assert!(start.elapsed().as_secs() < 60);
    println!("criterion 4 (rationality invariants vs oracle): pass");
}

#[test]
fn criterion_5_betti_and_dehn_sommerville() {
    let fans = [pentagon_fan(), blowup_fan()];
    for (v, t) in &fans {
        let cert = validate_fan(v, t, DEFAULT_SEED).unwrap();
        let betti = betti_numbers(t, &cert, 12).unwrap();
        assert_eq!(betti.betti, vec![1, 0, 3, 0, 1]);
        let euler: u64 = betti.betti.iter().sum();
        assert_eq!(euler, 5);
    }

    // Dehn-Sommerville and the simplex count on polytopal fixtures.
    let mut polytopal: Vec<(VectorConfiguration, Triangulation)> = vec![
        pentagon_fan(),
        blowup_fan(),
        hexagon_fan(&fixtures::hexagon_family_two()),
    ];
    let mut r = rng(5);
    for _ in 0..10 {
        polytopal.push(random_planar_fan(&mut r, 6));
    }
    for (v, t) in &polytopal {
        let cert = validate_fan(v, t, DEFAULT_SEED).unwrap();
        assert!(cert.is_valid());
        let h = hvector(t);
        let d = t.dim();
        for k in 0..=d {
            assert_eq!(h[k], h[d - k], "Dehn-Sommerville fails at {}", k);
        }
        let total: u64 = h.iter().sum();
        assert_eq!(total, t.simplices().len() as u64);
        let f = fvector(t);
        assert_eq!(f[d] as usize, t.simplices().len());
    }
    println!("criterion 5 (Betti / h-vector identities): pass");
}

#[test]
fn criterion_6_gale_round_trip() {
    let start = Instant::now();
    let mut r = rng(6);
    let mut done = 0;
    while done < 200 {
        let d = r.gen_range(1..=3usize);
        let n = r.gen_range((d + 1)..=7usize);
        let vb = random_config(&mut r, n, d).balance_and_oddify();
        if vb.len() - d < 3 {
            continue; // torus case has no dual configuration
        }
        let points = gale_dual(&vb).unwrap();
        let back = gale_dual_inverse(&points).unwrap();
        assert!(vb.matrix().same_row_space(&back.matrix()));
        assert!(vb
            .relation_basis()
            .same_row_space(&back.relation_basis()));
        done += 1;
    }
    assert!(start.elapsed().as_secs() < 120);
    println!("criterion 6 (Gale round trip, {} instances): pass", done);
}

#[test]
fn criterion_7_delzant_variant() {
    // Model simplex: the reduced slice is {rho >= 0 : sum rho = r}.
    let simplex = PolytopePresentation::from_i64(
        2,
        3,
        &[vec![1, 0], vec![0, 1], vec![-1, -1]],
        &[0, 0, -3],
    )
    .unwrap();
    let md = moment_data(&simplex).unwrap();
    assert_eq!(md.m.cols(), 1);
    for j in 0..3 {
        assert_eq!(md.m.at(j, 0), &Scalar::one());
    }
    assert_eq!(md.r, Some(Scalar::from_int(3)));
    let red = reduced_polytope_check(&simplex).unwrap();
    assert!(red.pullback_bijection);
    assert_eq!(red.sphere_radius, Some(Scalar::from_int(3)));

    // Square plus a strictly redundant half-space: the slice pullback
    // still hits exactly the 4 vertices.
    let square_ghost = PolytopePresentation::from_i64(
        2,
        4,
        &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1], vec![1, 1]],
        &[0, 0, -1, -1, -1],
    )
    .unwrap();
    assert_eq!(vertices(&square_ghost).len(), 4);
    let red = reduced_polytope_check(&square_ghost).unwrap();
    assert!(red.pullback_bijection);
    assert_eq!(red.vertex_count, 4);

    // 2Z^2 prefix normals against Q = Z^2: disconnected until the ghost
    // half-spaces with primitive normals join the span.
    let z2 = Quasilattice::from_generators(
        2,
        &[
            vec![Scalar::from_int(1), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_int(1)],
        ],
    )
    .unwrap();
    let coarse = VectorConfiguration::from_i64(
        2,
        4,
        &[vec![2, 0], vec![0, 2], vec![-2, 0], vec![0, -2]],
    )
    .unwrap();
    assert!(!n_group_connected(&coarse, Some(&z2)).unwrap());
    let with_ghosts = VectorConfiguration::from_i64(
        2,
        4,
        &[
            vec![2, 0],
            vec![0, 2],
            vec![-2, 0],
            vec![0, -2],
            vec![1, 0],
            vec![0, 1],
        ],
    )
    .unwrap();
    assert!(n_group_connected(&with_ghosts, Some(&z2)).unwrap());
    println!("criterion 7 (Delzant-variant checks): pass");
}

#[test]
fn criterion_8_certificate_self_verification() {
    // Every lp_feasible call in the library debug-asserts its own
    // certificate; this test re-verifies a randomized batch explicitly
    // and cross-checks feasibility against Fourier-Motzkin elimination.
    let mut r = rng(8);
    let mut verified = 0;
    for _ in 0..300 {
        let vars = r.gen_range(1..=3usize);
        let rows = r.gen_range(1..=6usize);
        let mut sys = LinearSystem::new(vars);
        let mut fm_rows: Vec<FmRow> = Vec::new();
        for _ in 0..rows {
            let coeffs: Vec<i64> = (0..vars).map(|_| r.gen_range(-3..=3)).collect();
            let rhs: i64 = r.gen_range(-3..=3);
            let rel = match r.gen_range(0..3) {
                0 => Relation::Ge,
                1 => Relation::Gt,
                _ => Relation::Eq,
            };
            sys.push(
                coeffs.iter().map(|&c| Scalar::from_int(c)).collect(),
                rel,
                Scalar::from_int(rhs),
            );
            let qc: Vec<BigRational> =
                coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
            let qr = BigRational::from(BigInt::from(rhs));
            match rel {
                Relation::Ge => fm_rows.push((qc, qr, false)),
                Relation::Gt => fm_rows.push((qc, qr, true)),
                Relation::Eq => {
                    fm_rows.push((qc.clone(), qr.clone(), false));
                    fm_rows.push((qc.iter().map(|x| -x).collect(), -qr, false));
                }
            }
        }
        let cert = lp_feasible(&sys);
        assert!(verify(&sys, &cert), "certificate failed re-verification");
        assert_eq!(
            cert.is_feasible(),
            fm_feasible(fm_rows, vars),
            "simplex vs Fourier-Motzkin disagreement"
        );
        verified += 1;
    }

    // Fixture-level certificates re-verify too.
    let (v, t) = pentagon_fan();
    let hc = heights_lp(&v, &t);
    assert!(hc.certificate.is_feasible());
    let (nv, nt) = fixtures::nonregular_complete().unwrap();
    assert!(!heights_lp(&nv, &nt).certificate.is_feasible());

    println!(
        "criterion 8 (certificate self-verification, {} LPs): pass",
        verified
    );
}
