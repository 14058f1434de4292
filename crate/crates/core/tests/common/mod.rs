//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. Everything here works on small `i64` matrices with determinants
//! and exhaustive search, independently of the library's elimination code.
#![allow(dead_code)]

use dimalg::{parse_problem, DimensionalMatrix, Invariant, Problem};
use itertools::Itertools;
use num_traits::ToPrimitive;
use rand::Rng;

/// Row-major small integer matrix.
pub type Mat = Vec<Vec<i64>>;

pub const PIPE: &str = include_str!("../fixtures/pipe.dim");
pub const LAMINAR: &str = include_str!("../fixtures/laminar.dim");
pub const FALLING: &str = include_str!("../fixtures/falling.dim");
pub const TWOBODY: &str = include_str!("../fixtures/twobody.dim");

pub fn fixture(text: &str) -> Problem {
    parse_problem(text).expect("fixture parses")
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}.dim", env!("CARGO_MANIFEST_DIR"))
}

pub fn to_matrix(a: &Mat) -> DimensionalMatrix {
    let m = a.len();
    let n = a[0].len();
    let dims: Vec<String> = (0..m).map(|i| format!("D{i}")).collect();
    let dim_refs: Vec<&str> = dims.iter().map(String::as_str).collect();
    let names: Vec<String> = (0..n).map(|j| format!("q{j}")).collect();
    let cols: Vec<Vec<i64>> = (0..n).map(|j| (0..m).map(|i| a[i][j]).collect()).collect();
    let columns: Vec<(&str, &[i64])> = names
        .iter()
        .zip(&cols)
        .map(|(n, c)| (n.as_str(), c.as_slice()))
        .collect();
    DimensionalMatrix::from_columns(&dim_refs, &columns).expect("valid matrix")
}

pub fn columns_of(d: &DimensionalMatrix) -> Mat {
    d.quantities().iter().map(|q| q.dims.clone()).collect()
}

pub fn rows_of(d: &DimensionalMatrix) -> Mat {
    let cols = columns_of(d);
    (0..d.m())
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_m: usize, max_n: usize, lo: i64, hi: i64) -> Mat {
    let m = rng.random_range(1..=max_m);
    let n = rng.random_range(1..=max_n);
    (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(lo..=hi)).collect())
        .collect()
}

/// Determinant by cofactor expansion.
pub fn det(a: &[Vec<i128>]) -> i128 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        k => (0..k)
            .map(|c| {
                let minor: Vec<Vec<i128>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * a[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn submatrix(a: &Mat, rows: &[usize], cols: &[usize]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect())
        .collect()
}

/// Rank of the selected columns: the largest order of a nonzero minor.
pub fn rank_of(a: &Mat, cols: &[usize]) -> usize {
    let m = a.len();
    for k in (1..=cols.len().min(m)).rev() {
        for rs in (0..m).combinations(k) {
            for cs in cols.iter().copied().combinations(k) {
                if det(&submatrix(a, &rs, &cs)) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

pub fn rank(a: &Mat) -> usize {
    let n = a[0].len();
    rank_of(a, &(0..n).collect::<Vec<_>>())
}

fn independent(a: &Mat, s: &[usize]) -> bool {
    rank_of(a, s) == s.len()
}

/// Basis sets by definition: every `r`-subset with independent columns.
pub fn brute_basis_sets(a: &Mat) -> Vec<Vec<usize>> {
    let n = a[0].len();
    let r = rank(a);
    (0..n)
        .combinations(r)
        .filter(|s| independent(a, s))
        .collect()
}

/// Circuit sets by definition: dependent subsets all of whose proper subsets
/// are independent. Checks every subset size, not just up to `r + 1`.
pub fn brute_circuit_sets(a: &Mat) -> Vec<Vec<usize>> {
    let n = a[0].len();
    let mut out = Vec::new();
    for k in 1..=n {
        for s in (0..n).combinations(k) {
            if independent(a, &s) {
                continue;
            }
            let minimal = (0..k).all(|drop| {
                let sub: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, x)| *x)
                    .collect();
                independent(a, &sub)
            });
            if minimal {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Divides by the content and makes the first nonzero entry positive.
pub fn primitive(v: &[i128]) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    assert!(g != 0, "zero vector");
    let sign = if v.iter().find(|x| **x != 0).copied().unwrap() < 0 {
        -1
    } else {
        1
    };
    v.iter().map(|x| (sign * x / g) as i64).collect()
}

/// Kernel vector of a circuit set from signed maximal minors.
pub fn circuit_vector(a: &Mat, s: &[usize]) -> Vec<i64> {
    let n = a[0].len();
    let k = s.len();
    let mut v = vec![0i128; n];
    if k == 1 {
        v[s[0]] = 1;
        return primitive(&v);
    }
    let rows = (0..a.len())
        .combinations(k - 1)
        .find(|rs| {
            s.iter()
                .copied()
                .combinations(k - 1)
                .any(|cs| det(&submatrix(a, rs, &cs)) != 0)
        })
        .expect("circuit has rank k-1");
    for (i, &j) in s.iter().enumerate() {
        let others: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
        let sign = if i % 2 == 0 { 1 } else { -1 };
        v[j] = sign * det(&submatrix(a, &rows, &others));
    }
    primitive(&v)
}

/// The reduced invariant of basis `b` for the non-basis quantity `j`,
/// oriented so that its `j` exponent is positive (Cramer's rule).
pub fn fundamental_invariant(a: &Mat, b: &[usize], j: usize) -> Vec<i64> {
    let n = a[0].len();
    let r = b.len();
    let mut v = vec![0i128; n];
    if r == 0 {
        v[j] = 1;
        return primitive(&v);
    }
    let rows = (0..a.len())
        .combinations(r)
        .find(|rs| det(&submatrix(a, rs, b)) != 0)
        .expect("basis columns are independent");
    let base = submatrix(a, &rows, b);
    let dd = det(&base);
    for (i, &bi) in b.iter().enumerate() {
        let mut m = base.clone();
        for (row, &ri) in rows.iter().enumerate() {
            m[row][i] = a[ri][j] as i128;
        }
        v[bi] = -det(&m);
    }
    v[j] = dd;
    let mut p = primitive(&v);
    if p[j] < 0 {
        p.iter_mut().for_each(|x| *x = -*x);
    }
    p
}

fn sign_le(x: &[i64], y: &[i64]) -> bool {
    x.iter()
        .zip(y)
        .all(|(a, b)| a * b >= 0 && a.abs() <= b.abs())
}

/// Graver basis by exhaustive search of the box `|x_i| <= bound`: the
/// sign-order minimal nonzero kernel vectors, one per pair.
pub fn brute_graver(a: &Mat, bound: i64) -> Vec<Vec<i64>> {
    let n = a[0].len();
    let mut kernel: Vec<Vec<i64>> = (0..n)
        .map(|_| -bound..=bound)
        .multi_cartesian_product()
        .filter(|x| x.iter().any(|v| *v != 0))
        .filter(|x| {
            a.iter()
                .all(|row| row.iter().zip(x).map(|(r, v)| r * v).sum::<i64>() == 0)
        })
        .collect();
    kernel.sort_by_key(|x| x.iter().map(|v| v.abs()).sum::<i64>());
    let mut minimal: Vec<Vec<i64>> = Vec::new();
    for x in kernel {
        if !minimal.iter().any(|g| sign_le(g, &x)) {
            minimal.push(x);
        }
    }
    let mut pairs: Vec<Vec<i64>> = minimal
        .into_iter()
        .filter(|x| x.iter().find(|v| **v != 0).copied().unwrap() > 0)
        .collect();
    pairs.sort();
    pairs
}

pub fn to_i64(v: &[num_bigint::BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("fits in i64")).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Evaluates the invariant at random positive values, then again after
/// rescaling every dimension's unit, and returns the worst relative change.
pub fn rescaling_error<R: Rng>(
    d: &DimensionalMatrix,
    inv: &Invariant,
    rng: &mut R,
    trials: usize,
) -> f64 {
    let cols = columns_of(d);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let values: Vec<f64> = (0..d.n()).map(|_| rng.random_range(0.5..2.0)).collect();
        let lambda: Vec<f64> = (0..d.m()).map(|_| rng.random_range(0.5..2.0)).collect();
        let scaled: Vec<f64> = values
            .iter()
            .zip(&cols)
            .map(|(v, c)| {
                v * c
                    .iter()
                    .zip(&lambda)
                    .map(|(e, l)| l.powi(*e as i32))
                    .product::<f64>()
            })
            .collect();
        let before = inv.evaluate(&values).expect("positive values");
        let after = inv.evaluate(&scaled).expect("positive values");
        let rel = ((after - before) / before).abs();
        worst = if rel.is_finite() {
            worst.max(rel)
        } else {
            f64::INFINITY
        };
    }
    worst
}
