//! Sparse linear operators on `V^{⊗m}`, `dim V = n`.
//!
//! Vectors are rows and operators act from the right, so `a.compose(&b)` is
//! the matrix product `AB` and applies `A` first. This matches the way the
//! exchange relations are written (`θθ PR`, `(PR)_{12}(PR)_{23}`).
//!
//! A multi-index `(i_1, ..., i_m)` (0-based) is stored as the flat index
//! `i_1 + i_2 n + ... + i_m n^{m-1}`, i.e. little-endian by leg.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeff::{poly_from_json, poly_to_json, LaurentPoly, Scalar};
use crate::error::Error;

#[derive(Clone, PartialEq)]
pub struct TensorOp<C> {
    n: usize,
    legs: usize,
    rows: BTreeMap<usize, BTreeMap<usize, C>>,
}

impl<C: Scalar> std::fmt::Debug for TensorOp<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TensorOp")
            .field("n", &self.n)
            .field("legs", &self.legs)
            .field("nnz", &self.nnz())
            .finish()
    }
}

/// Flat index of a multi-index.
pub fn encode(n: usize, idx: &[usize]) -> usize {
    idx.iter().rev().fold(0, |acc, &a| acc * n + a)
}

/// Multi-index of a flat index.
pub fn decode(n: usize, legs: usize, mut flat: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(legs);
    for _ in 0..legs {
        out.push(flat % n);
        flat /= n;
    }
    out
}

impl<C: Scalar> TensorOp<C> {
    pub fn zero(n: usize, legs: usize) -> Self {
        Self {
            n,
            legs,
            rows: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, legs: usize, c: C) -> Self {
        let mut op = Self::zero(n, legs);
        for i in 0..op.dim() {
            op.set(i, i, c.clone());
        }
        op
    }

    pub fn identity(n: usize, legs: usize) -> Self {
        Self::scalar(n, legs, C::one())
    }

    /// Two-leg flip `e_a ⊗ e_b -> e_b ⊗ e_a`.
    pub fn permutation(n: usize) -> Self {
        let mut op = Self::zero(n, 2);
        for a in 0..n {
            for b in 0..n {
                op.set(encode(n, &[a, b]), encode(n, &[b, a]), C::one());
            }
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.legs as u32)
    }

    pub fn nnz(&self) -> usize {
        self.rows.values().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&C> {
        self.rows.get(&row).and_then(|r| r.get(&col))
    }

    pub fn get_multi(&self, row: &[usize], col: &[usize]) -> Option<&C> {
        self.get(encode(self.n, row), encode(self.n, col))
    }

    pub fn set(&mut self, row: usize, col: usize, c: C) {
        if c.is_zero() {
            if let Some(r) = self.rows.get_mut(&row) {
                r.remove(&col);
                if r.is_empty() {
                    self.rows.remove(&row);
                }
            }
        } else {
            self.rows.entry(row).or_default().insert(col, c);
        }
    }

    pub fn add_entry(&mut self, row: usize, col: usize, c: C) {
        let cur = self.get(row, col).cloned().unwrap_or_else(C::zero);
        self.set(row, col, cur + c);
    }

    /// Nonzero entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.rows
            .iter()
            .flat_map(|(&r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, &C)> {
        self.rows
            .get(&row)
            .into_iter()
            .flat_map(|r| r.iter().map(|(&c, v)| (c, v)))
    }

    /// Entries grouped by column: `col -> [(row, value)]`.
    pub fn columns(&self) -> BTreeMap<usize, Vec<(usize, C)>> {
        let mut cols: BTreeMap<usize, Vec<(usize, C)>> = BTreeMap::new();
        for (r, c, v) in self.entries() {
            cols.entry(c).or_default().push((r, v.clone()));
        }
        cols
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), Error> {
        if self.n != other.n || self.legs != other.legs {
            return Err(Error::Shape(format!(
                "(n={}, legs={}) vs (n={}, legs={})",
                self.n, self.legs, other.n, other.legs
            )));
        }
        Ok(())
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_shape(other)?;
        let mut out = Self::zero(self.n, self.legs);
        for (&r, row) in &self.rows {
            let mut acc: BTreeMap<usize, C> = BTreeMap::new();
            for (k, a) in row {
                if let Some(krow) = other.rows.get(k) {
                    for (&c, b) in krow {
                        acc.entry(c).or_insert_with(C::zero).add_mul(a, b);
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            if !acc.is_empty() {
                out.rows.insert(r, acc);
            }
        }
        Ok(out)
    }

    /// Product of a non-empty chain, left to right.
    pub fn chain(ops: &[&Self]) -> Result<Self, Error> {
        let (first, rest) = ops
            .split_first()
            .ok_or_else(|| Error::Shape("empty operator chain".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, op| acc.compose(op))
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.n, self.legs);
        for (r, c, v) in self.entries() {
            out.set(r, c, v.mul_ref(s));
        }
        out
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> TensorOp<D> {
        let mut out = TensorOp::zero(self.n, self.legs);
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }

    /// Places `self` on the 1-based `positions` of a `total`-leg space, acting
    /// as the identity on the remaining legs.
    pub fn embed(&self, positions: &[usize], total: usize) -> Result<Self, Error> {
        if positions.len() != self.legs {
            return Err(Error::Legs(format!(
                "{} positions for a {}-leg operator",
                positions.len(),
                self.legs
            )));
        }
        let mut seen = vec![false; total];
        for &p in positions {
            if p == 0 || p > total {
                return Err(Error::Legs(format!("leg {p} outside 1..={total}")));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Legs(format!("leg {p} repeated")));
            }
        }
        let others: Vec<usize> = (0..total).filter(|l| !seen[*l]).collect();
        let n = self.n;
        let spectator_count = n.pow(others.len() as u32);
        let mut out = Self::zero(n, total);
        let mut row_idx = vec![0usize; total];
        let mut col_idx = vec![0usize; total];
        for (r, c, v) in self.entries() {
            let rd = decode(n, self.legs, r);
            let cd = decode(n, self.legs, c);
            for (k, &p) in positions.iter().enumerate() {
                row_idx[p - 1] = rd[k];
                col_idx[p - 1] = cd[k];
            }
            for s in 0..spectator_count {
                let sd = decode(n, others.len(), s);
                for (k, &l) in others.iter().enumerate() {
                    row_idx[l] = sd[k];
                    col_idx[l] = sd[k];
                }
                out.set(encode(n, &row_idx), encode(n, &col_idx), v.clone());
            }
        }
        Ok(out)
    }

    /// `A_{21} = P A P` for a two-leg operator.
    pub fn swap_legs(&self) -> Result<Self, Error> {
        if self.legs != 2 {
            return Err(Error::Legs(format!("swap_legs on {} legs", self.legs)));
        }
        let n = self.n;
        let mut out = Self::zero(n, 2);
        for (r, c, v) in self.entries() {
            let rd = decode(n, 2, r);
            let cd = decode(n, 2, c);
            out.set(encode(n, &[rd[1], rd[0]]), encode(n, &[cd[1], cd[0]]), v.clone());
        }
        Ok(out)
    }

    /// First nonzero entry as (row multi-index, col multi-index, value).
    pub fn first_entry(&self) -> Option<(Vec<usize>, Vec<usize>, &C)> {
        self.entries()
            .next()
            .map(|(r, c, v)| (decode(self.n, self.legs, r), decode(self.n, self.legs, c), v))
    }
}

impl TensorOp<LaurentPoly> {
    /// Exact inverse by fraction-free Gauss–Jordan elimination on `[A | I]`.
    ///
    /// Every intermediate entry is a minor of the augmented matrix, so each
    /// division is exact in `Z[q, q^-1]`. At the end the left block is
    /// `d·I` and the right block is `d·A^{-1}`; dividing by `d` must stay
    /// Laurent or the determinant is reported as the obstruction.
    pub fn invert(&self) -> Result<Self, Error> {
        let dim = self.dim();
        let mut rows: Vec<BTreeMap<usize, LaurentPoly>> = (0..dim)
            .map(|r| {
                let mut row: BTreeMap<usize, LaurentPoly> =
                    self.row(r).map(|(c, v)| (c, v.clone())).collect();
                row.insert(dim + r, LaurentPoly::one());
                row
            })
            .collect();
        let mut prev = LaurentPoly::one();
        for k in 0..dim {
            let pivot_row = (k..dim)
                .filter(|&r| rows[r].contains_key(&k))
                .min_by_key(|&r| (rows[r].len(), rows[r][&k].len()))
                .ok_or(Error::Singular)?;
            rows.swap(k, pivot_row);
            let pivot = rows[k][&k].clone();
            let pivot_line = rows[k].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let factor = row.remove(&k);
                let mut next = BTreeMap::new();
                let cols: std::collections::BTreeSet<usize> = row
                    .keys()
                    .copied()
                    .chain(if factor.is_some() {
                        pivot_line.keys().copied().collect::<Vec<_>>()
                    } else {
                        Vec::new()
                    })
                    .collect();
                for c in cols {
                    if c == k {
                        continue;
                    }
                    let mut v = row.get(&c).map(|x| x.mul_ref(&pivot)).unwrap_or_default();
                    if let (Some(f), Some(p)) = (&factor, pivot_line.get(&c)) {
                        v -= f.mul_ref(p);
                    }
                    if v.is_zero() {
                        continue;
                    }
                    let v = v.div_exact(&prev).ok_or_else(|| {
                        Error::NonLaurentInverse {
                            det: format!("(inexact elimination step by {prev})"),
                        }
                    })?;
                    next.insert(c, v);
                }
                *row = next;
            }
            prev = pivot;
        }
        let det = prev;
        let mut out = Self::zero(self.n, self.legs);
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row.range(dim..) {
                let q = v.div_exact(&det).ok_or_else(|| Error::NonLaurentInverse {
                    det: det.to_string(),
                })?;
                out.set(r, c - dim, q);
            }
        }
        Ok(out)
    }

    /// `{"n": .., "legs": .., "entries": [[row, col, poly], ..]}` with 1-based
    /// leg indices and entries in lexicographic order.
    pub fn to_json(&self) -> Value {
        let mut entries: Vec<(Vec<usize>, Vec<usize>, &LaurentPoly)> = self
            .entries()
            .map(|(r, c, v)| {
                (
                    decode(self.n, self.legs, r).iter().map(|x| x + 1).collect(),
                    decode(self.n, self.legs, c).iter().map(|x| x + 1).collect(),
                    v,
                )
            })
            .collect();
        entries.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let list: Vec<Value> = entries
            .into_iter()
            .map(|(r, c, v)| json!([r, c, poly_to_json(v)]))
            .collect();
        json!({ "n": self.n, "legs": self.legs, "entries": list })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let field = |name: &str| {
            v.get(name)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Format(format!("missing integer field {name:?}")))
        };
        let n = field("n")?;
        let legs = field("legs")?;
        if n == 0 || legs == 0 {
            return Err(Error::Format("n and legs must be positive".into()));
        }
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("missing array field \"entries\"".into()))?;
        let mut op = Self::zero(n, legs);
        for e in entries {
            let triple = e
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| Error::Format("entry must be [row, col, poly]".into()))?;
            let row = parse_multi(&triple[0], n, legs)?;
            let col = parse_multi(&triple[1], n, legs)?;
            let p = poly_from_json::<i64>(&triple[2])?;
            op.add_entry(encode(n, &row), encode(n, &col), p);
        }
        Ok(op)
    }
}

fn parse_multi(v: &Value, n: usize, legs: usize) -> Result<Vec<usize>, Error> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == legs)
        .ok_or_else(|| Error::Format(format!("multi-index must list {legs} legs")))?;
    arr.iter()
        .map(|x| {
            let i = x
                .as_u64()
                .ok_or_else(|| Error::Format("index must be a positive integer".into()))?
                as usize;
            if i == 0 || i > n {
                return Err(Error::Index { index: i, n });
            }
            Ok(i - 1)
        })
        .collect()
}
