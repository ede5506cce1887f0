//! The single-mode fermionic quantum plane `Λ(R)`: `θθ(PR + q^{-1}) = 0`.
//!
//! For monomially triangular Hecke `R` the degree-two relations are swap
//! rules `θ_b θ_a -> c(b,a) θ_a θ_b` (`b > a`) and `θ_a θ_a -> 0`, and the
//! strictly increasing monomials form a basis. Indices are 0-based.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::LaurentPoly;
use crate::error::Error;
use crate::linalg::rank_at;
use crate::rmatrix::{braided_integer, braided_integer_bar, HeckeData, Op};
use crate::tensor::{decode, encode, TensorOp};

/// Strictly increasing list of indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WedgeMonomial(Vec<usize>);

impl WedgeMonomial {
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        indices
            .windows(2)
            .all(|w| w[0] < w[1])
            .then_some(Self(indices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|a| format!("t{}", a + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WedgeElement {
    terms: BTreeMap<WedgeMonomial, LaurentPoly>,
}

impl WedgeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(WedgeMonomial::empty(), LaurentPoly::one())
    }

    pub fn monomial(m: WedgeMonomial, c: LaurentPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: WedgeMonomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeMonomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &WedgeMonomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c}) {m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree-two rewriting data for one mode.
#[derive(Clone, Debug, PartialEq)]
pub struct SwapRuleTable {
    n: usize,
    /// `(b, a)` with `b > a` to `c(b, a)`.
    swaps: BTreeMap<(usize, usize), LaurentPoly>,
}

impl SwapRuleTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `c(b, a)` in `θ_b θ_a -> c(b,a) θ_a θ_b`; requires `b > a`.
    pub fn swap_coeff(&self, b: usize, a: usize) -> &LaurentPoly {
        &self.swaps[&(b, a)]
    }

    pub fn swaps(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.swaps.iter()
    }

    /// Leftmost-first bubble reduction of a word to the increasing basis.
    pub fn normal_form(&self, word: &[usize]) -> WedgeElement {
        let mut out = WedgeElement::zero();
        let mut pending: BTreeMap<Vec<usize>, LaurentPoly> = BTreeMap::new();
        pending.insert(word.to_vec(), LaurentPoly::one());
        while let Some((w, c)) = pending.pop_first() {
            match w.windows(2).position(|p| p[0] >= p[1]) {
                None => out.add_term(WedgeMonomial(w), c),
                Some(k) if w[k] == w[k + 1] => {}
                Some(k) => {
                    let coeff = &c * self.swap_coeff(w[k], w[k + 1]);
                    let mut next = w;
                    next.swap(k, k + 1);
                    let slot = pending.entry(next.clone()).or_default();
                    *slot += &coeff;
                    if slot.is_zero() {
                        pending.remove(&next);
                    }
                }
            }
        }
        out
    }

    /// Normal form of a linear combination of words.
    pub fn reduce<'a>(
        &self,
        words: impl IntoIterator<Item = (&'a [usize], &'a LaurentPoly)>,
    ) -> WedgeElement {
        let mut out = WedgeElement::zero();
        for (w, c) in words {
            out.add_scaled(&self.normal_form(w), c);
        }
        out
    }

    /// Relation vectors implied by the rules, keyed by two-leg flat index.
    pub fn relation_vectors(&self) -> Vec<BTreeMap<usize, LaurentPoly>> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            out.push(BTreeMap::from([(encode(n, &[a, a]), LaurentPoly::one())]));
        }
        for (&(b, a), c) in &self.swaps {
            out.push(BTreeMap::from([
                (encode(n, &[b, a]), LaurentPoly::one()),
                (encode(n, &[a, b]), -c.clone()),
            ]));
        }
        out
    }
}

/// Reads the swap rules off the relation space `θθ(PR + q^{-1}) = 0`.
pub fn derive_wedge_rules(data: &HeckeData) -> Result<SwapRuleTable, Error> {
    let n = data.n;
    let rel = data
        .pr()
        .add(&Op::scalar(n, 2, LaurentPoly::q_pow(-1)))?;
    // Each relation column must live on a single index pair {a, b}.
    let mut by_pair: BTreeMap<(usize, usize), Vec<(LaurentPoly, LaurentPoly)>> = BTreeMap::new();
    for (col, entries) in rel.columns() {
        let pairs: BTreeSet<(usize, usize)> = entries
            .iter()
            .map(|(row, _)| {
                let d = decode(n, 2, *row);
                (d[0].min(d[1]), d[0].max(d[1]))
            })
            .collect();
        if pairs.len() != 1 {
            let d = decode(n, 2, col);
            return Err(Error::NonPbw(format!(
                "relation column ({}, {}) mixes index pairs {:?}",
                d[0] + 1,
                d[1] + 1,
                pairs.iter().map(|(a, b)| (a + 1, b + 1)).collect::<Vec<_>>()
            )));
        }
        let (a, b) = *pairs.iter().next().expect("one pair");
        let get = |x: usize, y: usize| {
            entries
                .iter()
                .find(|(row, _)| *row == encode(n, &[x, y]))
                .map(|(_, v)| v.clone())
                .unwrap_or_default()
        };
        // (coefficient of θ_a θ_b, coefficient of θ_b θ_a)
        by_pair.entry((a, b)).or_default().push((get(a, b), get(b, a)));
    }
    let mut swaps = BTreeMap::new();
    for a in 0..n {
        if !by_pair.contains_key(&(a, a)) {
            return Err(Error::NonPbw(format!("θ_{0} θ_{0} is not killed", a + 1)));
        }
        for b in a + 1..n {
            let rows = by_pair.get(&(a, b)).ok_or_else(|| {
                Error::NonPbw(format!("no relation between θ_{} and θ_{}", a + 1, b + 1))
            })?;
            let (alpha, beta) = rows
                .iter()
                .find(|(_, beta)| !beta.is_zero())
                .cloned()
                .ok_or_else(|| {
                    Error::NonPbw(format!("θ_{} θ_{} cannot be reordered", b + 1, a + 1))
                })?;
            for (x, y) in rows {
                if &alpha * y != &beta * x {
                    return Err(Error::NonPbw(format!(
                        "degree-2 quotient too small: θ_{} θ_{} vanishes",
                        a + 1,
                        b + 1
                    )));
                }
            }
            let c = (-alpha).div_exact(&beta).ok_or_else(|| {
                Error::NonPbw(format!(
                    "swap coefficient for (θ_{}, θ_{}) is not Laurent",
                    b + 1,
                    a + 1
                ))
            })?;
            swaps.insert((b, a), c);
        }
    }
    Ok(SwapRuleTable { n, swaps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `Λ(R)` with its braided derivatives.
#[derive(Debug)]
pub struct Wedge {
    rules: SwapRuleTable,
    bold_r: Op,
    integers: RefCell<BTreeMap<(usize, Side), Op>>,
}

impl Wedge {
    pub fn new(data: &HeckeData) -> Result<Self, Error> {
        Ok(Self {
            rules: derive_wedge_rules(data)?,
            bold_r: data.bold_r(),
            integers: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.rules.n
    }

    pub fn rules(&self) -> &SwapRuleTable {
        &self.rules
    }

    pub fn normal_form(&self, word: &[usize]) -> WedgeElement {
        self.rules.normal_form(word)
    }

    /// `θ_1 ... θ_n`.
    pub fn top_form(&self) -> WedgeElement {
        WedgeElement::monomial(WedgeMonomial((0..self.n()).collect()), LaurentPoly::one())
    }

    pub fn multiply(&self, x: &WedgeElement, y: &WedgeElement) -> WedgeElement {
        let mut out = WedgeElement::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                let word: Vec<usize> = mx.0.iter().chain(&my.0).copied().collect();
                out.add_scaled(&self.normal_form(&word), &(cx * cy));
            }
        }
        out
    }

    /// `[m; 𝐑]` (left) or `bar[m; 𝐑]` (right), cached per degree.
    pub fn braided_integer(&self, m: usize, side: Side) -> Op {
        if let Some(op) = self.integers.borrow().get(&(m, side)) {
            return op.clone();
        }
        let op = match side {
            Side::Left => braided_integer(m, &self.bold_r),
            Side::Right => braided_integer_bar(m, &self.bold_r),
        }
        .expect("m >= 1");
        self.integers.borrow_mut().insert((m, side), op.clone());
        op
    }

    /// Braided derivative of the raw word `θ_{j_1} ... θ_{j_m}`:
    /// left `∂^i = e^i_1 θ_2..θ_m [m; 𝐑]`, right `θ_1..θ_{m-1} e^i_m bar[m; 𝐑]`.
    pub fn partial_word(&self, i: usize, word: &[usize], side: Side) -> WedgeElement {
        let m = word.len();
        let n = self.n();
        if m == 0 {
            return WedgeElement::zero();
        }
        let op = self.braided_integer(m, side);
        let col = encode(n, word);
        let mut out = WedgeElement::zero();
        for rest in 0..n.pow((m - 1) as u32) {
            let rest_idx = decode(n, m - 1, rest);
            let row_idx: Vec<usize> = match side {
                Side::Left => std::iter::once(i).chain(rest_idx.iter().copied()).collect(),
                Side::Right => rest_idx.iter().copied().chain(std::iter::once(i)).collect(),
            };
            if let Some(c) = op.get(encode(n, &row_idx), col) {
                out.add_scaled(&self.normal_form(&rest_idx), c);
            }
        }
        out
    }

    /// Braided derivative of an element given in the increasing basis.
    pub fn braided_partial(&self, i: usize, x: &WedgeElement, side: Side) -> WedgeElement {
        let mut out = WedgeElement::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.partial_word(i, &m.0, side), c);
        }
        out
    }

    /// Rank of the span of all reduced degree-`m` words at `q = q0`.
    pub fn degree_dimension(&self, m: usize, q0: &BigRational) -> usize {
        let n = self.n();
        let mut vectors = Vec::new();
        for w in 0..n.pow(m as u32) {
            let word = decode(n, m, w);
            let nf = self.normal_form(&word);
            vectors.push(nf.terms.into_iter().collect::<BTreeMap<_, _>>());
        }
        rank_at(&vectors, q0)
    }
}

/// Convenience: the `n`-leg operator `[m; 𝐑]` composed against reduction,
/// i.e. the reduced image of `Σ_K θ_K X[K][J]` for a fixed column `J`.
pub fn reduce_operator_column(
    rules: &SwapRuleTable,
    op: &TensorOp<LaurentPoly>,
    col: &[usize],
) -> WedgeElement {
    let n = rules.n;
    let legs = col.len();
    let c = encode(n, col);
    let mut out = WedgeElement::zero();
    for (r, cc, v) in op.entries() {
        if cc == c {
            out.add_scaled(&rules.normal_form(&decode(n, legs, r)), v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::{sln_r, standard_sln_r, Triangle};

    fn q0() -> BigRational {
        BigRational::new(3.into(), 2.into())
    }

    #[test]
    fn n1_only_kills_square() {
        let t = derive_wedge_rules(&standard_sln_r(1)).unwrap();
        assert_eq!(t.swaps().count(), 0);
        assert!(t.normal_form(&[0, 0]).is_zero());
        assert_eq!(t.normal_form(&[0]), WedgeElement::monomial(WedgeMonomial(vec![0]), LaurentPoly::one()));
    }

    #[test]
    fn n2_swap_coefficient_follows_triangle() {
        let lower = derive_wedge_rules(&sln_r(2, Triangle::Lower)).unwrap();
        assert_eq!(lower.swap_coeff(1, 0), &-LaurentPoly::q());
        let upper = derive_wedge_rules(&sln_r(2, Triangle::Upper)).unwrap();
        assert_eq!(upper.swap_coeff(1, 0), &-LaurentPoly::q_pow(-1));
        let w = Wedge::new(&standard_sln_r(2)).unwrap();
        assert_eq!(w.degree_dimension(2, &q0()), 1);
    }

    #[test]
    fn identity_input_is_rejected() {
        let id = HeckeData::new(Op::identity(2, 2)).unwrap();
        assert!(matches!(derive_wedge_rules(&id), Err(Error::NonPbw(_))));
    }

    #[test]
    fn dense_mixing_input_is_rejected() {
        let mut r = standard_sln_r(2).r;
        r.set(encode(2, &[0, 0]), encode(2, &[0, 1]), LaurentPoly::one());
        let data = HeckeData::new(r).unwrap();
        assert!(matches!(derive_wedge_rules(&data), Err(Error::NonPbw(_))));
    }

    #[test]
    fn rules_span_the_relation_space() {
        for n in 1..=4 {
            let data = standard_sln_r(n);
            let rules = derive_wedge_rules(&data).unwrap();
            let rel = data.pr().add(&Op::scalar(n, 2, LaurentPoly::q_pow(-1))).unwrap();
            let rel_vectors: Vec<BTreeMap<usize, LaurentPoly>> = rel
                .columns()
                .into_values()
                .map(|col| col.into_iter().collect())
                .collect();
            let rule_vectors = rules.relation_vectors();
            let r_rel = rank_at(&rel_vectors, &q0());
            let r_rules = rank_at(&rule_vectors, &q0());
            let both: Vec<_> = rel_vectors.iter().chain(&rule_vectors).cloned().collect();
            assert_eq!(r_rel, n * (n + 1) / 2);
            assert_eq!(r_rules, r_rel);
            assert_eq!(rank_at(&both, &q0()), r_rel);
        }
    }

    #[test]
    fn normal_form_small_words() {
        let w = Wedge::new(&standard_sln_r(2)).unwrap();
        assert_eq!(w.normal_form(&[]), WedgeElement::one());
        assert!(w.normal_form(&[1, 1]).is_zero());
        let c = w.rules().swap_coeff(1, 0).clone();
        assert_eq!(w.normal_form(&[1, 0]), WedgeElement::monomial(WedgeMonomial(vec![0, 1]), c));
    }

    #[test]
    fn left_partial_of_generators() {
        let w = Wedge::new(&standard_sln_r(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let d = w.partial_word(i, &[j], Side::Left);
                if i == j {
                    assert_eq!(d, WedgeElement::one());
                } else {
                    assert!(d.is_zero());
                }
            }
            assert!(w.braided_partial(i, &WedgeElement::one(), Side::Left).is_zero());
        }
    }

    #[test]
    fn top_form_is_killed_by_generators() {
        for n in 1..=4 {
            let w = Wedge::new(&standard_sln_r(n)).unwrap();
            let top = w.top_form();
            for a in 0..n {
                let g = WedgeElement::monomial(WedgeMonomial(vec![a]), LaurentPoly::one());
                assert!(w.multiply(&g, &top).is_zero());
                assert!(w.multiply(&top, &g).is_zero());
            }
        }
    }
}
