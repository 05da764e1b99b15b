//! Exact determinant and rank over the rationals by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Scales every row by the lcm of its denominators. Returns the integer rows
/// and the product of the scale factors.
fn clear_denominators(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let ints = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    (ints, scale)
}

/// Bareiss elimination in place with row and column pivoting. Returns the
/// rank and, when the matrix is square and nonsingular, the determinant.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> (usize, BigInt) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut rank = 0;
    let mut col_order: Vec<usize> = (0..cols).collect();
    for k in 0..rows.min(cols) {
        // find a nonzero pivot in the remaining block
        let pivot = (k..cols).find_map(|c| (k..rows).find(|&r| !m[r][col_order[c]].is_zero()).map(|r| (r, c)));
        let Some((pr, pc)) = pivot else { break };
        if pr != k {
            m.swap(pr, k);
            sign = -sign;
        }
        if pc != k {
            col_order.swap(pc, k);
            sign = -sign;
        }
        rank += 1;
        let ck = col_order[k];
        for i in k + 1..rows {
            for jj in k + 1..cols {
                let j = col_order[jj];
                let v = (&m[i][j] * &m[k][ck] - &m[i][ck] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][ck] = BigInt::zero();
        }
        prev = m[k][ck].clone();
    }
    let det = if rows == cols && rank == rows {
        if rows == 0 {
            BigInt::one()
        } else {
            prev * sign
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

/// Determinant of a square matrix; the empty matrix has determinant 1.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix is not square");
    if n == 0 {
        return Rational::one();
    }
    let (mut ints, scale) = clear_denominators(rows);
    let (_, det) = bareiss(&mut ints, n);
    Rational::new(det, scale)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let (mut ints, _) = clear_denominators(rows);
    bareiss(&mut ints, cols).0
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let w: BigInt = if whole_abs.is_empty() {
            BigInt::zero()
        } else {
            whole_abs.parse().ok()?
        };
        let f: BigInt = frac.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(w * &den + f, den);
        return Some(if negative { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
