//! Dense univariate polynomials over `BigRational`, little-endian
//! coefficient order. Only what the algebraic scalar layer needs: ring
//! arithmetic, euclidean division, (extended) gcd, Sturm chains and
//! interval evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Poly = Vec<BigRational>;

pub fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn deg(p: &[BigRational]) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

pub fn is_zero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn neg(a: &[BigRational]) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    add(a, &neg(b))
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if is_zero(a) || is_zero(b) {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[BigRational], s: &BigRational) -> Poly {
    trim(a.iter().map(|c| c * s).collect())
}

/// Euclidean division: returns (quotient, remainder).
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    assert!(!is_zero(b), "division by zero polynomial");
    let db = deg(b);
    let lead = b[db].clone();
    let mut rem: Poly = a.to_vec();
    let mut quo = vec![BigRational::zero(); a.len()];
    loop {
        let dr = deg(&rem);
        if is_zero(&rem) || dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        quo[dr - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[dr - db + i] -= t;
        }
        rem[dr] = BigRational::zero();
    }
    (trim(quo), trim(rem))
}

pub fn rem(a: &[BigRational], b: &[BigRational]) -> Poly {
    divrem(a, b).1
}

fn make_monic(p: Poly) -> Poly {
    let d = deg(&p);
    let lead = p[d].clone();
    if lead.is_one() || is_zero(&p) {
        return p;
    }
    scale(&p, &lead.recip())
}

/// Monic gcd.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !is_zero(&y) {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if is_zero(&x) {
        x
    } else {
        make_monic(x)
    }
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
pub fn egcd(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly, Poly) {
    let zero = || vec![BigRational::zero()];
    let one = || vec![BigRational::one()];
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (one(), zero());
    let (mut t0, mut t1) = (zero(), one());
    while !is_zero(&r1) {
        let (q, r) = divrem(&r0, &r1);
        let ns = sub(&s0, &mul(&q, &s1));
        let nt = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if is_zero(&r0) {
        return (r0, s0, t0);
    }
    let d = deg(&r0);
    let lead = r0[d].clone();
    let inv = lead.recip();
    (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
}

pub fn derivative(p: &[BigRational]) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c * BigRational::from(BigInt::from(i)));
    }
    trim(out)
}

pub fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Horner evaluation over an interval [lo, hi] using rational interval
/// arithmetic. Returns the enclosing interval of the value.
pub fn interval_eval(
    p: &[BigRational],
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let mut alo = BigRational::zero();
    let mut ahi = BigRational::zero();
    for c in p.iter().rev() {
        // (alo,ahi) * (lo,hi)
        let cands = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
        let mut nlo = cands[0].clone();
        let mut nhi = cands[0].clone();
        for c2 in &cands[1..] {
            if *c2 < nlo {
                nlo = c2.clone();
            }
            if *c2 > nhi {
                nhi = c2.clone();
            }
        }
        alo = nlo + c;
        ahi = nhi + c;
    }
    (alo, ahi)
}

fn sign_i8(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of p (assumed squarefree for exact counting).
pub fn sturm_chain(p: &[BigRational]) -> Vec<Poly> {
    let mut chain = vec![trim(p.to_vec()), derivative(p)];
    loop {
        let n = chain.len();
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if is_zero(&r) {
            break;
        }
        chain.push(neg(&r));
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let s = sign_i8(&eval(p, x));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of squarefree `p` in the open interval
/// (lo, hi). Requires p(lo) != 0 and p(hi) != 0.
pub fn count_roots(p: &[BigRational], lo: &BigRational, hi: &BigRational) -> usize {
    let chain = sturm_chain(p);
    sign_variations(&chain, lo) - sign_variations(&chain, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn p(coeffs: &[i64]) -> Poly {
        coeffs.iter().map(|&c| q(c)).collect()
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[1, 0, -3, 2]); // 2x^3 - 3x^2 + 1
        let b = p(&[-1, 1]); // x - 1
        let (quo, r) = divrem(&a, &b);
        assert_eq!(add(&mul(&quo, &b), &r), trim(a));
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = p(&[-1, 1]); // x - 1
        let a = mul(&f, &p(&[1, 1]));
        let b = mul(&f, &p(&[2, 1]));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn egcd_bezout() {
        let a = p(&[-5, 0, 1]); // x^2 - 5
        let b = p(&[1, 1]); // x + 1
        let (g, s, t) = egcd(&a, &b);
        assert_eq!(deg(&g), 0);
        let lhs = add(&mul(&s, &a), &mul(&t, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn sturm_counts_sqrt5() {
        let f = p(&[-5, 0, 1]);
        assert_eq!(count_roots(&f, &q(2), &q(3)), 1);
        assert_eq!(count_roots(&f, &q(-3), &q(3)), 2);
        assert_eq!(count_roots(&f, &q(3), &q(4)), 0);
    }
}
