//! Exact LP feasibility over `Scalar` with strict inequalities.
//!
//! Strict constraints are handled by one shared slack: maximize epsilon
//! subject to `a.x >= b + epsilon` for every strict row and a cap
//! `epsilon <= 1`; the system is strictly feasible iff the optimum is
//! positive. The solver is a dense two-phase simplex with Bland's rule,
//! so it terminates on degenerate inputs. Answers carry certificates
//! that re-verify by direct substitution (`verify`).

use crate::matrix::dot;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Gt,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub rel: Relation,
    pub rhs: Scalar,
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Scalar>, rel: Relation, rhs: Scalar) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint arity");
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn has_strict(&self) -> bool {
        self.constraints.iter().any(|c| c.rel == Relation::Gt)
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Feasible {
        witness: Vec<Scalar>,
        /// Margin achieved on strict constraints, when any were present.
        epsilon: Option<Scalar>,
    },
    Infeasible {
        /// One multiplier per constraint: nonnegative on inequalities,
        /// free on equalities; combines the rows into a contradiction.
        farkas: Vec<Scalar>,
    },
}

impl Certificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Certificate::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&[Scalar]> {
        match self {
            Certificate::Feasible { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Exact re-verification of a certificate against the system it answers.
pub fn verify(sys: &LinearSystem, cert: &Certificate) -> bool {
    match cert {
        Certificate::Feasible { witness, .. } => {
            if witness.len() != sys.num_vars {
                return false;
            }
            sys.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, witness);
                let d = &lhs - &c.rhs;
                match c.rel {
                    Relation::Ge => d.sign() >= 0,
                    Relation::Gt => d.sign() > 0,
                    Relation::Eq => d.sign() == 0,
                }
            })
        }
        Certificate::Infeasible { farkas } => {
            if farkas.len() != sys.constraints.len() {
                return false;
            }
            // Nonnegative on inequality rows.
            for (z, c) in farkas.iter().zip(&sys.constraints) {
                if c.rel != Relation::Eq && z.sign() < 0 {
                    return false;
                }
            }
            // The combination of the left-hand sides must vanish.
            for j in 0..sys.num_vars {
                let mut acc = Scalar::zero();
                for (z, c) in farkas.iter().zip(&sys.constraints) {
                    acc += z * &c.coeffs[j];
                }
                if !acc.is_zero() {
                    return false;
                }
            }
            let mut rhs_sum = Scalar::zero();
            let mut strict_mass = Scalar::zero();
            for (z, c) in farkas.iter().zip(&sys.constraints) {
                rhs_sum += z * &c.rhs;
                if c.rel == Relation::Gt {
                    strict_mass += z.clone();
                }
            }
            // Either 0 >= positive, or 0 > 0 through strict rows.
            rhs_sum.sign() > 0 || (rhs_sum.is_zero() && strict_mass.sign() > 0)
        }
    }
}

/// Strict-feasibility oracle. The returned certificate always passes
/// `verify` (debug-asserted).
pub fn lp_feasible(sys: &LinearSystem) -> Certificate {
    let cert = solve(sys);
    debug_assert!(verify(sys, &cert), "LP certificate failed self-check");
    cert
}

// ---------------------------------------------------------------------
// Simplex internals
// ---------------------------------------------------------------------

struct Tableau {
    /// rows x (num_cols + 1); last entry of each row is the rhs.
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    num_cols: usize,
    art_start: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Scalar {
        &self.rows[r][self.num_cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].inverse().expect("pivot nonzero");
        for v in self.rows[row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = self.rows[row].clone();
        for (r, rvec) in self.rows.iter_mut().enumerate() {
            if r == row || rvec[col].is_zero() {
                continue;
            }
            let f = rvec[col].clone();
            for (v, p) in rvec.iter_mut().zip(&pivot_row) {
                *v = &*v - &(&f * p);
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule simplex: minimize c.x from the current basic feasible
    /// point. `allow` filters columns that may enter.
    fn run<F: Fn(usize) -> bool>(&mut self, cost: &[Scalar], allow: F) {
        loop {
            let basic_cost: Vec<Scalar> =
                self.basis.iter().map(|&j| cost[j].clone()).collect();
            // Entering column: smallest index with negative reduced cost.
            let mut entering = None;
            for j in 0..self.num_cols {
                if !allow(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (r, cb) in basic_cost.iter().enumerate() {
                    if !cb.is_zero() {
                        red -= cb * &self.rows[r][j];
                    }
                }
                if red.sign() < 0 {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else { return };
            // Leaving row: min ratio, ties broken by smallest basic index.
            let mut leave: Option<(usize, Scalar)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][col].sign() <= 0 {
                    continue;
                }
                let ratio = self.rhs(r) / &self.rows[r][col];
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, bratio)) => {
                        let c = (&ratio - &bratio).sign();
                        if c < 0 || (c == 0 && self.basis[r] < self.basis[br]) {
                            Some((r, ratio))
                        } else {
                            Some((br, bratio))
                        }
                    }
                };
            }
            let (row, _) = leave.expect("LP unbounded: missing cap constraint");
            self.pivot(row, col);
        }
    }

    fn objective(&self, cost: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (r, &j) in self.basis.iter().enumerate() {
            if !cost[j].is_zero() {
                acc += &cost[j] * self.rhs(r);
            }
        }
        acc
    }

    fn var_value(&self, j: usize) -> Scalar {
        match self.basis.iter().position(|&b| b == j) {
            Some(r) => self.rhs(r).clone(),
            None => Scalar::zero(),
        }
    }

    /// Dual value of structural row r: c_B . (B^-1 e_r), read off the
    /// artificial column of that row.
    fn dual(&self, cost: &[Scalar], r: usize) -> Scalar {
        let col = self.art_start + r;
        let mut acc = Scalar::zero();
        for (k, &j) in self.basis.iter().enumerate() {
            if !cost[j].is_zero() {
                acc += &cost[j] * &self.rows[k][col];
            }
        }
        acc
    }
}

fn solve(sys: &LinearSystem) -> Certificate {
    let n = sys.num_vars;
    let m = sys.constraints.len();
    let has_strict = sys.has_strict();
    // Columns: p (n) | q (n) | eps (0/1) | slacks | cap slack | artificials.
    let eps_col = if has_strict { Some(2 * n) } else { None };
    let mut col = 2 * n + usize::from(has_strict);
    let mut slack_col = Vec::with_capacity(m);
    for c in &sys.constraints {
        if c.rel == Relation::Eq {
            slack_col.push(None);
        } else {
            slack_col.push(Some(col));
            col += 1;
        }
    }
    let cap_slack = if has_strict {
        let c = col;
        col += 1;
        Some(c)
    } else {
        None
    };
    let num_rows = m + usize::from(has_strict);
    let art_start = col;
    let num_cols = col + num_rows;

    let mut rows = Vec::with_capacity(num_rows);
    let mut flipped = Vec::with_capacity(m);
    for (i, c) in sys.constraints.iter().enumerate() {
        let mut row = vec![Scalar::zero(); num_cols + 1];
        for j in 0..n {
            row[j] = c.coeffs[j].clone();
            row[n + j] = -c.coeffs[j].clone();
        }
        if c.rel == Relation::Gt {
            row[eps_col.unwrap()] = Scalar::from_int(-1);
        }
        if let Some(s) = slack_col[i] {
            row[s] = Scalar::from_int(-1);
        }
        row[num_cols] = c.rhs.clone();
        let flip = row[num_cols].sign() < 0;
        if flip {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        flipped.push(flip);
        row[art_start + i] = Scalar::one();
        rows.push(row);
    }
    if has_strict {
        let mut row = vec![Scalar::zero(); num_cols + 1];
        row[eps_col.unwrap()] = Scalar::one();
        row[cap_slack.unwrap()] = Scalar::one();
        row[num_cols] = Scalar::one();
        row[art_start + m] = Scalar::one();
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        basis: (art_start..art_start + num_rows).collect(),
        num_cols,
        art_start,
    };

    // Phase 1: drive the artificials to zero.
    let mut phase1_cost = vec![Scalar::zero(); num_cols];
    for j in art_start..num_cols {
        phase1_cost[j] = Scalar::one();
    }
    t.run(&phase1_cost, |j| j < art_start);
    if t.objective(&phase1_cost).sign() > 0 {
        let farkas = extract_farkas(&t, &phase1_cost, &flipped, m);
        return Certificate::Infeasible { farkas };
    }

    if !has_strict {
        return Certificate::Feasible {
            witness: witness_of(&t, n),
            epsilon: None,
        };
    }

    // Pivot residual basic artificials out where possible; rows that stay
    // have all-zero structural entries and remain inert.
    for r in 0..t.rows.len() {
        if t.basis[r] >= art_start {
            if let Some(j) = (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    // Phase 2: maximize epsilon (minimize -epsilon).
    let mut phase2_cost = vec![Scalar::zero(); num_cols];
    phase2_cost[eps_col.unwrap()] = Scalar::from_int(-1);
    t.run(&phase2_cost, |j| j < art_start);
    let eps = t.var_value(eps_col.unwrap());
    if eps.sign() > 0 {
        Certificate::Feasible {
            witness: witness_of(&t, n),
            epsilon: Some(eps),
        }
    } else {
        let farkas = extract_farkas(&t, &phase2_cost, &flipped, m);
        Certificate::Infeasible { farkas }
    }
}

fn witness_of(t: &Tableau, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|j| t.var_value(j) - t.var_value(n + j))
        .collect()
}

fn extract_farkas(t: &Tableau, cost: &[Scalar], flipped: &[bool], m: usize) -> Vec<Scalar> {
    (0..m)
        .map(|i| {
            let y = t.dual(cost, i);
            if flipped[i] {
                -y
            } else {
                y
            }
        })
        .collect()
}
