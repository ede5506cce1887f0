use std::collections::HashMap;
use std::rc::Rc;

use num_traits::One;

use super::rules::{ExchangeRules, Template};
use super::{format_word, ModeElement, ModeGen, ModeWord};
use crate::coeff::LaurentPoly;
use crate::error::Error;

/// Default number of pair rewrites allowed for one normal-ordering job.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

type Expansion = Rc<Vec<(ModeWord, LaurentPoly)>>;

/// Memoised normal ordering by insertion.
///
/// `NF(g w) = insert(g, NF(w))`, and inserting `g` in front of a normal word
/// `h v` with `g > h` rewrites the pair `g h` and inserts the two resulting
/// generators into `v`. Results of `insert` are cached, so repeated
/// sub-problems are solved once per orderer.
#[derive(Clone, Debug)]
pub struct NormalOrderer {
    rules: ExchangeRules,
    budget: u64,
    steps: u64,
    inserts: HashMap<(ModeGen, ModeWord), Expansion>,
    templates: HashMap<(i64, usize, usize), Rc<Vec<Template>>>,
}

impl NormalOrderer {
    pub fn new(rules: &ExchangeRules) -> Self {
        Self::with_budget(rules, DEFAULT_BUDGET)
    }

    pub fn with_budget(rules: &ExchangeRules, budget: u64) -> Self {
        Self {
            rules: rules.clone(),
            budget,
            steps: 0,
            inserts: HashMap::new(),
            templates: HashMap::new(),
        }
    }

    pub fn rules(&self) -> &ExchangeRules {
        &self.rules
    }

    /// Pair rewrites performed so far (cache hits are free).
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Starts a fresh step count with a new budget; cached results are kept.
    pub fn reset_budget(&mut self, budget: u64) {
        self.budget = budget;
        self.steps = 0;
    }

    pub fn normal_form(&mut self, x: &ModeElement) -> Result<ModeElement, Error> {
        let mut out = ModeElement::zero();
        for (w, c) in x.terms() {
            let nf = self.normal_form_word(w)?;
            out.add_scaled(&nf, c);
        }
        Ok(out)
    }

    pub fn normal_form_word(&mut self, word: &[ModeGen]) -> Result<ModeElement, Error> {
        let mut current: Vec<(ModeWord, LaurentPoly)> = vec![(Vec::new(), LaurentPoly::one())];
        for &g in word.iter().rev() {
            let mut next = ModeElement::zero();
            for (w, c) in &current {
                for (v, d) in self.insert(g, w)?.iter() {
                    next.add_term(v.clone(), c * d);
                }
            }
            current = next.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
            if current.is_empty() {
                break;
            }
        }
        let mut out = ModeElement::zero();
        for (w, c) in current {
            out.add_term(w, c);
        }
        Ok(out)
    }

    fn template(&mut self, gap: i64, a: usize, b: usize) -> Rc<Vec<Template>> {
        let rules = &self.rules;
        self.templates
            .entry((gap, a, b))
            .or_insert_with(|| Rc::new(rules.templates(gap, a, b)))
            .clone()
    }

    fn rewrite(&mut self, hi: ModeGen, lo: ModeGen) -> Vec<(LaurentPoly, ModeGen, ModeGen)> {
        if hi.mode == lo.mode {
            return self.rules.rewrite_pair(hi, lo);
        }
        let j = lo.mode;
        self.template(hi.mode - j, hi.index, lo.index)
            .iter()
            .map(|t| {
                (
                    t.coeff.clone(),
                    ModeGen::new(j + t.du, t.c),
                    ModeGen::new(j + t.dv, t.d),
                )
            })
            .collect()
    }

    /// Normal form of `g · w` for a normal word `w`.
    fn insert(&mut self, g: ModeGen, w: &[ModeGen]) -> Result<Expansion, Error> {
        match w.first() {
            None => return Ok(Rc::new(vec![(vec![g], LaurentPoly::one())])),
            Some(&h) if g < h => {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(g);
                v.extend_from_slice(w);
                return Ok(Rc::new(vec![(v, LaurentPoly::one())]));
            }
            Some(&h) if g == h => return Ok(Rc::new(Vec::new())),
            Some(_) => {}
        }
        let key = (g, w.to_vec());
        if let Some(hit) = self.inserts.get(&key) {
            return Ok(hit.clone());
        }
        self.steps += 1;
        if self.steps > self.budget {
            let mut word = vec![g];
            word.extend_from_slice(w);
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                word: format_word(&word),
            });
        }
        let rest = &w[1..];
        let mut acc = ModeElement::zero();
        for (c, u, v) in self.rewrite(g, w[0]) {
            let inner = self.insert(v, rest)?;
            for (w2, c2) in inner.iter() {
                let c_uv = &c * c2;
                let outer = self.insert(u, w2)?;
                for (w3, c3) in outer.iter() {
                    acc.add_term(w3.clone(), &c_uv * c3);
                }
            }
        }
        let result: Expansion = Rc::new(
            acc.terms()
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        );
        self.inserts.insert(key, result.clone());
        Ok(result)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// `Σ (mode_k - mode_l + 1)` over positions `k < l` with `w_k >= w_l`.
pub fn termination_measure(word: &[ModeGen]) -> u64 {
    let mut m = 0;
    for k in 0..word.len() {
        for l in k + 1..word.len() {
            if word[k] >= word[l] {
                m += (word[k].mode - word[l].mode + 1) as u64;
            }
        }
    }
    m
}

/// Plain rewriting: every round rewrites one adjacent pair out of order in
/// each term, chosen by `strategy`. Returns the normal form and the number of
/// rounds used; fails once `budget` rounds are exceeded.
pub fn normal_form_stepwise(
    rules: &ExchangeRules,
    x: &ModeElement,
    strategy: Strategy,
    budget: u64,
) -> Result<(ModeElement, u64), Error> {
    let mut current = x.clone();
    let mut rounds = 0;
    loop {
        let mut next = ModeElement::zero();
        let mut changed = false;
        for (w, c) in current.terms() {
            let positions = (0..w.len().saturating_sub(1)).filter(|&k| w[k] >= w[k + 1]);
            let pos = match strategy {
                Strategy::Leftmost => positions.min(),
                Strategy::Rightmost => positions.max(),
            };
            let Some(k) = pos else {
                next.add_term(w.clone(), c.clone());
                continue;
            };
            changed = true;
            for (d, u, v) in rules.rewrite_pair(w[k], w[k + 1]) {
                let mut out = Vec::with_capacity(w.len());
                out.extend_from_slice(&w[..k]);
                out.push(u);
                out.push(v);
                out.extend_from_slice(&w[k + 2..]);
                next.add_term(out, c * &d);
            }
        }
        if !changed {
            return Ok((current, rounds));
        }
        rounds += 1;
        if rounds > budget {
            let word = current
                .terms()
                .next()
                .map(|(w, _)| format_word(w))
                .unwrap_or_default();
            return Err(Error::BudgetExceeded { budget, word });
        }
        current = next;
    }
}
