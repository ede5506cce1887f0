use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{deviation_word, full_column, Deviation, FockState};
use crate::coeff::LaurentPoly;
use crate::error::Error;
use crate::modealg::{ExchangeRules, ModeElement, ModeGen, ModeWord, NormalOrderer, DEFAULT_BUDGET};

/// Which tail columns `b_i` visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailWindow {
    /// `|i|` columns for `i < 0`, none for `i > 0`; exact when pruning is on.
    Minimal,
    /// The first `w` tail columns.
    Width(usize),
    /// Every tail column up to and including this mode.
    Through(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApplyOptions {
    /// Drop Leibniz terms whose shifted generator meets only full columns on
    /// its way to its own mode.
    pub prune: bool,
    pub window: TailWindow,
    pub log_pruned: bool,
}

impl Default for ApplyOptions {
    fn default() -> Self {
        Self {
            prune: true,
            window: TailWindow::Minimal,
            log_pruned: false,
        }
    }
}

impl ApplyOptions {
    /// No pruning, every tail column through `last` visited.
    pub fn oracle(last: i64) -> Self {
        Self {
            prune: false,
            window: TailWindow::Through(last),
            log_pruned: false,
        }
    }
}

/// A Leibniz term dropped by the pruning test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedTerm {
    pub shift: i64,
    pub column: i64,
    pub index: usize,
    pub inserted_mode: i64,
    pub coeff: LaurentPoly,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub state: FockState,
    pub pruned: Vec<PrunedTerm>,
}

/// `[b_i, b_{-j}] ω` with its scalar when the result is a multiple of `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commutator {
    pub i: i64,
    pub j: i64,
    pub state: FockState,
    pub scalar: Option<LaurentPoly>,
    pub pruned: Vec<PrunedTerm>,
}

/// Normal ordering against semi-infinite states.
#[derive(Clone, Debug)]
pub struct FockEngine {
    n: usize,
    orderer: NormalOrderer,
}

impl FockEngine {
    pub fn new(rules: &ExchangeRules) -> Self {
        Self::with_budget(rules, DEFAULT_BUDGET)
    }

    pub fn with_budget(rules: &ExchangeRules, budget: u64) -> Self {
        Self {
            n: rules.n(),
            orderer: NormalOrderer::with_budget(rules, budget),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orderer(&mut self) -> &mut NormalOrderer {
        &mut self.orderer
    }

    pub fn vacuum(&self, base: i64) -> FockState {
        FockState::vacuum(self.n, base)
    }

    fn reduce_words(
        &mut self,
        tail: i64,
        words: impl IntoIterator<Item = (ModeWord, LaurentPoly)>,
    ) -> Result<FockState, Error> {
        let mut acc = ModeElement::zero();
        for (w, c) in words {
            let nf = self.orderer.normal_form_word(&w)?;
            acc.add_scaled(&nf, &c);
        }
        Ok(FockState::from_words(
            self.n,
            tail,
            acc.terms().map(|(w, c)| (w.clone(), c.clone())),
        ))
    }

    /// `x · s`, with the tail columns `x` can reach made explicit.
    pub fn multiply_left(&mut self, x: &ModeElement, s: &FockState) -> Result<FockState, Error> {
        if s.is_zero() || x.is_zero() {
            return Ok(FockState::zero(self.n));
        }
        let top = x
            .terms()
            .flat_map(|(w, _)| w.iter().map(|g| g.mode))
            .max()
            .unwrap_or(i64::MIN)
            .max(s.tail_start() - 1);
        let to = top + 1;
        let state_words = s.words(to);
        let mut words = Vec::new();
        for (wx, cx) in x.terms() {
            for (ws, cs) in &state_words {
                let w: ModeWord = wx.iter().chain(ws).copied().collect();
                words.push((w, cx * cs));
            }
        }
        self.reduce_words(to, words)
    }

    /// The derivation `b_i(θ^j_a) = θ^{j+i}_a` applied to `s`.
    pub fn apply_b(&mut self, i: i64, s: &FockState, opts: &ApplyOptions) -> Result<Applied, Error> {
        if i == 0 {
            return Err(Error::ZeroShift);
        }
        let tail = s.tail_start();
        let last = match opts.window {
            TailWindow::Minimal if i < 0 => tail - i - 1,
            TailWindow::Minimal => tail - 1,
            TailWindow::Width(w) => tail + w as i64 - 1,
            TailWindow::Through(m) => m.max(tail - 1),
        };
        let full = full_column(self.n);
        let mut by_tail: BTreeMap<i64, Vec<(ModeWord, LaurentPoly)>> = BTreeMap::new();
        let mut pruned = Vec::new();
        for (dev, c) in s.terms() {
            let is_full = |m: i64| m >= tail || dev.get(&m).is_some_and(|col| col.degree() == self.n);
            let mut columns: Deviation = dev.clone();
            for k in tail..=last {
                columns.insert(k, full.clone());
            }
            let word = deviation_word(&columns);
            for (slot, g) in word.iter().enumerate() {
                let k = g.mode + i;
                if opts.prune {
                    let blocked = if i < 0 {
                        (k..g.mode).all(is_full)
                    } else {
                        (g.mode + 1..=k).all(is_full)
                    };
                    if blocked {
                        if opts.log_pruned {
                            let mut w = word.clone();
                            w[slot] = ModeGen::new(k, g.index);
                            pruned.push(PrunedTerm {
                                shift: i,
                                column: g.mode,
                                index: g.index,
                                inserted_mode: k,
                                coeff: c.clone(),
                                word: crate::modealg::format_word(&w),
                            });
                        }
                        continue;
                    }
                }
                let to = (last + 1).max(tail).max(k + 1);
                let mut w = word.clone();
                w[slot] = ModeGen::new(k, g.index);
                for m in (last + 1).max(tail)..to {
                    w.extend((0..self.n).map(|a| ModeGen::new(m, a)));
                }
                by_tail.entry(to).or_default().push((w, c.clone()));
            }
        }
        let mut state = FockState::zero(self.n);
        for (to, words) in by_tail {
            let part = self.reduce_words(to, words)?;
            state = state.add(&part);
        }
        Ok(Applied { state, pruned })
    }

    /// `(b_i b_{-j} - b_{-j} b_i) ω^0 ω^1 ⋯` for `i, j > 0`.
    pub fn commutator_on_vacuum(
        &mut self,
        i: i64,
        j: i64,
        opts: &ApplyOptions,
    ) -> Result<Commutator, Error> {
        let vac = self.vacuum(0);
        let lowered = self.apply_b(-j, &vac, opts)?;
        let first = self.apply_b(i, &lowered.state, opts)?;
        let raised = self.apply_b(i, &vac, opts)?;
        let second = self.apply_b(-j, &raised.state, opts)?;
        let state = first.state.sub(&second.state);
        let scalar = state.scalar_multiple_of_vacuum(0);
        let pruned = [lowered.pruned, first.pruned, raised.pruned, second.pruned].concat();
        Ok(Commutator {
            i,
            j,
            state,
            scalar,
            pruned,
        })
    }

    fn column_word(&self, mode: i64) -> ModeWord {
        (0..self.n).map(|a| ModeGen::new(mode, a)).collect()
    }

    /// `b_2(b_{-2}(ω^0)) ω^1 ω^2 ⋯`.
    pub fn lemma33_state(&mut self) -> Result<FockState, Error> {
        let lowered = ModeElement::word(self.column_word(0)).shift_derivation(-2);
        let lowered = self.orderer.normal_form(&lowered)?;
        let raised = lowered.shift_derivation(2);
        let tail = self.vacuum(1);
        self.multiply_left(&raised, &tail)
    }

    /// Coefficient of `ω` in [`Self::lemma33_state`].
    pub fn lemma33_coefficient(&mut self) -> Result<LaurentPoly, Error> {
        Ok(self.lemma33_state()?.vacuum_coefficient(0))
    }

    /// `b_2(ω^0 b_{-2}(ω^1)) ω^2 ω^3 ⋯`.
    pub fn second_term_state(&mut self) -> Result<FockState, Error> {
        let lowered = ModeElement::word(self.column_word(1)).shift_derivation(-2);
        let lowered = self.orderer.normal_form(&lowered)?;
        let product = ModeElement::word(self.column_word(0)).mul(&lowered);
        let raised = product.shift_derivation(2);
        let tail = self.vacuum(2);
        self.multiply_left(&raised, &tail)
    }

    pub fn second_term_coefficient(&mut self) -> Result<LaurentPoly, Error> {
        Ok(self.second_term_state()?.vacuum_coefficient(0))
    }
}

fn qint(m: i64, step: i64) -> LaurentPoly {
    LaurentPoly::braided_int(m, step).expect("m >= 0")
}

/// `[n;q^-2] + (1 - q^-2)([n-1;q^-4] - q^{-2(n-1)}[n-1;q^-2])`.
pub fn lemma33_closed_form(n: usize) -> LaurentPoly {
    let n = n as i64;
    let inner = &qint(n - 1, -4) - &(&LaurentPoly::q_pow(-2 * (n - 1)) * &qint(n - 1, -2));
    &qint(n, -2) + &(&(&LaurentPoly::one() - &LaurentPoly::q_pow(-2)) * &inner)
}

/// `q^{-2(n-1)} [n;q^-2]`.
pub fn second_term_closed_form(n: usize) -> LaurentPoly {
    let n = n as i64;
    &LaurentPoly::q_pow(-2 * (n - 1)) * &qint(n, -2)
}

/// `δ_{ij} i (1 - q^{-2ni}) / (1 - q^{-2i}) = δ_{ij} i [n;q^{-2i}]`.
pub fn heis_prediction(i: i64, j: i64, n: usize) -> LaurentPoly {
    if i != j {
        return LaurentPoly::zero();
    }
    qint(n as i64, -2 * i).scale(&i.into())
}

/// Both sides of `value · (1 - q^{-2i}) = δ_{ij} i (1 - q^{-2ni})`.
pub fn heis_cleared(i: i64, j: i64, n: usize, value: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let lhs = value * &(&LaurentPoly::one() - &LaurentPoly::q_pow(-2 * i));
    let rhs = if i == j {
        (&LaurentPoly::one() - &LaurentPoly::q_pow(-2 * n as i64 * i)).scale(&i.into())
    } else {
        LaurentPoly::zero()
    };
    (lhs, rhs)
}
