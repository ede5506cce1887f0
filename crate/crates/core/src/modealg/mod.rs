//! The multi-mode exchange algebra generated by `θ^{(k)}_a`, `k ∈ Z`.
//!
//! Each mode is a copy of `Λ(R)`. Between modes `i > j` the exchange rule is
//! `{θ^i, θ^j}_R = D(i, j)` where `{θ, ψ}_R = θψ + q^{-1} ψθ PR` and the
//! descendant part `D` involves only modes strictly between `j` and `i`:
//!
//! ```text
//! D(i, j) = (q^-2 - 1) ( Σ_{1 <= s < (i-j)/2} q^{-2(s-1)} θ^{j+s} θ^{i-s} (1 + P𝐑)
//!                        + [i-j even] q^{-2((i-j)/2 - 1)} θ^m θ^m ),   m = (i+j)/2
//! ```
//!
//! with `𝐑 = -q^{-1}R`. `D` vanishes for `i - j = 1`, and in the braided
//! tensor product variant it vanishes for every gap. Normal order puts
//! smaller modes to the left and increasing indices within a mode, which is
//! the same as strictly increasing `(mode, index)`.

mod checks;
mod reduce;
mod rules;

pub use checks::{
    anticommutator, check_modeanticom, check_modeind, check_moderel, r_anticommutator,
    PairVector,
};
pub use reduce::{
    normal_form_stepwise, termination_measure, NormalOrderer, Strategy, DEFAULT_BUDGET,
};
pub use rules::{geometric_weight, ExchangeRules, RuleVariant};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::LaurentPoly;
use crate::error::Error;

/// `θ^{(mode)}_{index}` with a 0-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeGen {
    pub mode: i64,
    pub index: usize,
}

impl ModeGen {
    pub const fn new(mode: i64, index: usize) -> Self {
        Self { mode, index }
    }

    pub fn shifted(self, by: i64) -> Self {
        Self::new(self.mode + by, self.index)
    }
}

impl fmt::Display for ModeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{}]_{}", self.mode, self.index + 1)
    }
}

pub type ModeWord = Vec<ModeGen>;

pub fn is_normal(word: &[ModeGen]) -> bool {
    word.windows(2).all(|p| p[0] < p[1])
}

pub fn format_word(word: &[ModeGen]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Linear combination of words in the mode generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModeElement {
    terms: BTreeMap<ModeWord, LaurentPoly>,
}

impl ModeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: ModeWord) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn term(w: ModeWord, c: LaurentPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn gen(mode: i64, index: usize) -> Self {
        Self::word(vec![ModeGen::new(mode, index)])
    }

    pub fn add_term(&mut self, w: ModeWord, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-LaurentPoly::one());
        out
    }

    /// Concatenation product (no reduction).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let w: ModeWord = wa.iter().chain(wb).copied().collect();
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModeWord, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[ModeGen]) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| is_normal(w))
    }

    /// Shifts every mode by `by`.
    pub fn translate(&self, by: i64) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.iter().map(|g| g.shifted(by)).collect(), c.clone());
        }
        out
    }

    /// Leibniz rule for the shift derivation `θ^j -> θ^{j+by}`, unreduced.
    pub fn shift_derivation(&self, by: i64) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for slot in 0..w.len() {
                let mut v = w.clone();
                v[slot] = v[slot].shifted(by);
                out.add_term(v, c.clone());
            }
        }
        out
    }

    /// Parses `"t[2]_1 t[0]_2"`; `"t2"` abbreviates `t[0]_2` and `""` is 1.
    pub fn parse(text: &str, n: usize) -> Result<Self, Error> {
        Ok(Self::word(parse_word(text, n)?))
    }
}

impl fmt::Display for ModeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    format_word(w)
                } else {
                    format!("({c}) {}", format_word(w))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn parse_word(text: &str, n: usize) -> Result<ModeWord, Error> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    let number = |pos: &mut usize, signed: bool| -> Result<i64, Error> {
        let start = *pos;
        if signed && *pos < bytes.len() && (bytes[*pos] == b'-' || bytes[*pos] == b'+') {
            *pos += 1;
        }
        let digits = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == digits {
            return Err(err(start, "expected a number"));
        }
        text[start..*pos]
            .parse()
            .map_err(|_| err(start, "number out of range"))
    };
    loop {
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b'*') {
            pos += 1;
        }
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b't' {
            return Err(err(pos, "expected 't'"));
        }
        let gen_start = pos;
        pos += 1;
        let mode = if pos < bytes.len() && bytes[pos] == b'[' {
            pos += 1;
            let m = number(&mut pos, true)?;
            if pos >= bytes.len() || bytes[pos] != b']' {
                return Err(err(pos, "expected ']'"));
            }
            pos += 1;
            if pos >= bytes.len() || bytes[pos] != b'_' {
                return Err(err(pos, "expected '_'"));
            }
            pos += 1;
            m
        } else {
            0
        };
        let idx = number(&mut pos, false)?;
        if idx < 1 || idx as usize > n {
            return Err(err(gen_start, &format!("index {idx} outside 1..={n}")));
        }
        out.push(ModeGen::new(mode, idx as usize - 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = parse_word("t[2]_1 t[-1]_2 t3", 3).unwrap();
        assert_eq!(
            w,
            vec![ModeGen::new(2, 0), ModeGen::new(-1, 1), ModeGen::new(0, 2)]
        );
        assert_eq!(format_word(&w), "t[2]_1 t[-1]_2 t[0]_3");
        assert_eq!(parse_word("", 2).unwrap(), Vec::new());
        assert_eq!(ModeElement::parse("  ", 2).unwrap(), ModeElement::one());
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            parse_word("t1 x2", 2),
            Err(Error::Parse {
                pos: 3,
                msg: "expected 't'".into()
            })
        );
        assert!(matches!(parse_word("t[1_2", 2), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_word("t3", 2), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_word("t[1]_", 2), Err(Error::Parse { pos: 5, .. })));
    }

    #[test]
    fn normal_order_is_lexicographic() {
        assert!(is_normal(&[ModeGen::new(0, 0), ModeGen::new(0, 1), ModeGen::new(1, 0)]));
        assert!(!is_normal(&[ModeGen::new(0, 1), ModeGen::new(0, 1)]));
        assert!(!is_normal(&[ModeGen::new(1, 0), ModeGen::new(0, 1)]));
    }

    #[test]
    fn shift_derivation_is_leibniz() {
        let x = ModeElement::word(vec![ModeGen::new(0, 0), ModeGen::new(1, 1)]);
        let d = x.shift_derivation(-1);
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&[ModeGen::new(-1, 0), ModeGen::new(1, 1)]), LaurentPoly::one());
        assert_eq!(d.coeff(&[ModeGen::new(0, 0), ModeGen::new(0, 1)]), LaurentPoly::one());
    }
}
