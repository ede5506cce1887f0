//! States near the semi-infinite vacuum `ω = ω^0 ω^1 ⋯` and the shift
//! derivations `b_i(θ^j) = θ^{j+i}`.
//!
//! A state is a finite combination of deviations from a vacuum. Every term
//! shares a `tail_start` `T`: all columns `k >= T` are the full top form
//! `ω^k`, and columns below `T` are listed explicitly (empty columns are
//! omitted). The representation is canonical: `T` is as small as possible
//! and explicit full columns directly below `T` are absorbed into the tail.

mod engine;
mod json;
mod telescoping;

pub use engine::{
    heis_cleared, heis_prediction, lemma33_closed_form, second_term_closed_form, Applied,
    ApplyOptions, Commutator, FockEngine, PrunedTerm, TailWindow,
};
pub use telescoping::check_telescoping;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::LaurentPoly;
use crate::modealg::{format_word, ModeGen, ModeWord};
use crate::wedge::WedgeMonomial;

/// Explicit column contents below the tail, keyed by mode.
pub type Deviation = BTreeMap<i64, WedgeMonomial>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    n: usize,
    tail_start: i64,
    terms: BTreeMap<Deviation, LaurentPoly>,
}

fn full_column(n: usize) -> WedgeMonomial {
    WedgeMonomial::new((0..n).collect()).expect("increasing")
}

impl FockState {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            tail_start: 0,
            terms: BTreeMap::new(),
        }
    }

    /// `ω^base ω^{base+1} ⋯`.
    pub fn vacuum(n: usize, base: i64) -> Self {
        Self {
            n,
            tail_start: base,
            terms: BTreeMap::from([(Deviation::new(), LaurentPoly::one())]),
        }
    }

    /// Builds a canonical state from raw terms sharing `tail_start`.
    pub fn from_terms(
        n: usize,
        tail_start: i64,
        terms: impl IntoIterator<Item = (Deviation, LaurentPoly)>,
    ) -> Self {
        let mut raw = BTreeMap::new();
        for (dev, c) in terms {
            let dev: Deviation = dev.into_iter().filter(|(_, m)| m.degree() > 0).collect();
            add_into(&mut raw, dev, c);
        }
        let mut s = Self {
            n,
            tail_start,
            terms: raw,
        };
        s.canonicalize();
        s
    }

    /// The state represented by normal words whose modes are all below
    /// `tail_start`, followed by the vacuum tail.
    pub fn from_words(
        n: usize,
        tail_start: i64,
        words: impl IntoIterator<Item = (ModeWord, LaurentPoly)>,
    ) -> Self {
        let terms = words.into_iter().map(|(w, c)| {
            let mut cols: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for g in w {
                debug_assert!(g.mode < tail_start);
                cols.entry(g.mode).or_default().push(g.index);
            }
            let dev = cols
                .into_iter()
                .map(|(k, v)| (k, WedgeMonomial::new(v).expect("normal word")))
                .collect();
            (dev, c)
        });
        Self::from_terms(n, tail_start, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tail_start(&self) -> i64 {
        self.tail_start
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Deviation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leftmost explicit mode over all terms, if any.
    pub fn base(&self) -> Option<i64> {
        self.terms
            .keys()
            .filter_map(|d| d.keys().next().copied())
            .min()
    }

    fn is_full(&self, m: &WedgeMonomial) -> bool {
        m.degree() == self.n
    }

    fn canonicalize(&mut self) {
        if self.terms.is_empty() {
            self.tail_start = 0;
            return;
        }
        let tail = self
            .terms
            .keys()
            .map(|dev| {
                let mut t = self.tail_start;
                while dev.get(&(t - 1)).is_some_and(|m| self.is_full(m)) {
                    t -= 1;
                }
                t
            })
            .max()
            .expect("nonempty");
        if tail != self.tail_start {
            let old = std::mem::take(&mut self.terms);
            for (mut dev, c) in old {
                dev.retain(|&k, _| k < tail);
                add_into(&mut self.terms, dev, c);
            }
            self.tail_start = tail;
        }
    }

    /// The same state with columns up to `to - 1` made explicit.
    fn materialized_terms(&self, to: i64) -> Vec<(Deviation, LaurentPoly)> {
        let full = full_column(self.n);
        self.terms
            .iter()
            .map(|(dev, c)| {
                let mut d = dev.clone();
                for k in self.tail_start..to {
                    d.insert(k, full.clone());
                }
                (d, c.clone())
            })
            .collect()
    }

    pub fn add_scaled(&self, other: &Self, c: &LaurentPoly) -> Self {
        assert_eq!(self.n, other.n, "states over different n");
        let Some(tail) = [self, other]
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| s.tail_start)
            .max()
        else {
            return Self::zero(self.n);
        };
        let mut terms = self.materialized_terms(tail);
        terms.extend(
            other
                .materialized_terms(tail)
                .into_iter()
                .map(|(d, v)| (d, &v * c)),
        );
        Self::from_terms(self.n, tail, terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &LaurentPoly::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-LaurentPoly::one())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(
            self.n,
            self.tail_start,
            self.terms.iter().map(|(d, v)| (d.clone(), v * c)),
        )
    }

    /// Shifts every mode, the tail included, by `by`.
    pub fn translate(&self, by: i64) -> Self {
        Self::from_terms(
            self.n,
            self.tail_start + by,
            self.terms.iter().map(|(d, c)| {
                let d = d.iter().map(|(k, m)| (k + by, m.clone())).collect();
                (d, c.clone())
            }),
        )
    }

    /// `Some(c)` when the state is `c · ω^base ω^{base+1} ⋯`.
    pub fn scalar_multiple_of_vacuum(&self, base: i64) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        match self.terms.iter().next() {
            Some((dev, c)) if self.terms.len() == 1 && dev.is_empty() && self.tail_start == base => {
                Some(c.clone())
            }
            _ => None,
        }
    }

    /// Coefficient of `ω^base ω^{base+1} ⋯` in the state.
    pub fn vacuum_coefficient(&self, base: i64) -> LaurentPoly {
        if self.tail_start < base {
            return LaurentPoly::zero();
        }
        let full = full_column(self.n);
        let target: Deviation = (base..self.tail_start).map(|k| (k, full.clone())).collect();
        self.terms.get(&target).cloned().unwrap_or_default()
    }

    /// Words of each term with columns up to `to - 1` spelled out.
    pub fn words(&self, to: i64) -> Vec<(ModeWord, LaurentPoly)> {
        self.materialized_terms(to.max(self.tail_start))
            .into_iter()
            .map(|(dev, c)| (deviation_word(&dev), c))
            .collect()
    }
}

fn add_into(terms: &mut BTreeMap<Deviation, LaurentPoly>, dev: Deviation, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match terms.entry(dev) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn deviation_word(dev: &Deviation) -> ModeWord {
    dev.iter()
        .flat_map(|(&k, m)| m.indices().iter().map(move |&a| ModeGen::new(k, a)))
        .collect()
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let tail = format!("ω[{}..]", self.tail_start);
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(dev, c)| {
                let w = deviation_word(dev);
                if w.is_empty() {
                    format!("({c}) {tail}")
                } else {
                    format!("({c}) {} {tail}", format_word(&w))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
