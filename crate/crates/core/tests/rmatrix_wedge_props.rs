//! R-matrix and one-mode algebra checks against dense rational oracles.

use braided_fock::rmatrix::{admissible_samples, baxterise, sln_r, HeckeData, Triangle};
use braided_fock::tensor::{decode, encode, TensorOp};
use braided_fock::wedge::Wedge;
use braided_fock::LaurentPoly;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Dense = Vec<Vec<BigRational>>;

fn rat(x: i64, y: i64) -> BigRational {
    BigRational::new(x.into(), y.into())
}

fn dense_laurent(op: &TensorOp<LaurentPoly>, q0: &BigRational) -> Dense {
    let d = op.dim();
    let mut m = vec![vec![BigRational::zero(); d]; d];
    for (r, c, v) in op.entries() {
        m[r][c] = v.eval(q0);
    }
    m
}

fn dense_rational(op: &TensorOp<BigRational>) -> Dense {
    let d = op.dim();
    let mut m = vec![vec![BigRational::zero(); d]; d];
    for (r, c, v) in op.entries() {
        m[r][c] = v.clone();
    }
    m
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn inverse(a: &Dense) -> Dense {
    let d = a.len();
    let mut m: Dense = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..d {
        let p = (col..d).find(|&r| !m[r][col].is_zero()).expect("invertible");
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[d..].to_vec()).collect()
}

/// `X_21[(a,b)][(c,d)] = X[(b,a)][(d,c)]`.
fn swap21(a: &Dense, n: usize) -> Dense {
    let d = a.len();
    let sw = |k: usize| {
        let ab = decode(n, 2, k);
        encode(n, &[ab[1], ab[0]])
    };
    (0..d).map(|i| (0..d).map(|j| a[sw(i)][sw(j)].clone()).collect()).collect()
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &lead;
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim T^m / (ideal generated by the image of PR + q^{-1})` at `q0`.
fn quotient_dimension(data: &HeckeData, m: usize, q0: &BigRational) -> usize {
    let n = data.n;
    let dim = n.pow(m as u32);
    if m < 2 {
        return dim;
    }
    let killer = data
        .pr()
        .add(&TensorOp::scalar(n, 2, LaurentPoly::q_pow(-1)))
        .unwrap();
    let k = dense_laurent(&killer, q0);
    let mut rows = Vec::new();
    for pos in 0..m - 1 {
        for outer in 0..n.pow(m as u32 - 2) {
            let rest = decode(n, m - 2, outer);
            for j in 0..n * n {
                let mut row = vec![BigRational::zero(); dim];
                for (kk, v) in k.iter().map(|r| &r[j]).enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let pair = decode(n, 2, kk);
                    let mut idx = rest[..pos].to_vec();
                    idx.extend_from_slice(&pair);
                    idx.extend_from_slice(&rest[pos..]);
                    row[encode(n, &idx)] += v;
                }
                rows.push(row);
            }
        }
    }
    dim - rank(rows)
}

#[test]
fn wedge_dimensions_match_the_quotient_oracle() {
    let q0 = rat(5, 3);
    for n in 1..=3 {
        for tri in [Triangle::Lower, Triangle::Upper] {
            let data = sln_r(n, tri);
            let w = Wedge::new(&data).unwrap();
            for m in 0..=n + 1 {
                assert_eq!(
                    w.degree_dimension(m, &q0),
                    quotient_dimension(&data, m, &q0),
                    "n={n} m={m} {tri:?}"
                );
            }
        }
    }
}

#[test]
fn spectral_r_matches_the_dense_construction_and_is_unitary() {
    for n in 2..=3 {
        let data = sln_r(n, Triangle::Lower);
        let spectral = baxterise(&data).unwrap();
        for (q0, z0) in admissible_samples(7, 5) {
            let r = dense_laurent(&data.r, &q0);
            let r21_inv = inverse(&swap21(&r, n));
            let oracle = |z: &BigRational| -> Dense {
                r.iter()
                    .zip(&r21_inv)
                    .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - z * y).collect())
                    .collect()
            };
            let lib = dense_rational(&spectral.evaluate(&q0, &z0).unwrap());
            let raw = oracle(&z0);
            let scale = &lib[0][0] / &raw[0][0];
            for (lr, rr) in lib.iter().zip(&raw) {
                for (x, y) in lr.iter().zip(rr) {
                    assert_eq!(x, &(&scale * y), "n={n} q={q0} z={z0}");
                }
            }
            let other = swap21(&oracle(&z0.recip()), n);
            let prod = mul(&raw, &other);
            let c = prod[0][0].clone();
            assert!(!c.is_zero());
            for (i, row) in prod.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let want = if i == j { c.clone() } else { BigRational::zero() };
                    assert_eq!(x, &want, "n={n} q={q0} z={z0}");
                }
            }
        }
    }
}

#[test]
fn hecke_relation_holds_densely() {
    let q0 = rat(-4, 3);
    for n in 2..=3 {
        let data = sln_r(n, Triangle::Upper);
        let pr = dense_laurent(&data.pr(), &q0);
        let d = pr.len();
        let shift = |c: BigRational| -> Dense {
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| if i == j { &pr[i][j] + &c } else { pr[i][j].clone() })
                        .collect()
                })
                .collect()
        };
        let prod = mul(&shift(-q0.clone()), &shift(q0.recip()));
        assert!(prod.iter().flatten().all(Zero::is_zero));
    }
}
