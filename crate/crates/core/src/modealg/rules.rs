use num_traits::One;

use super::ModeGen;
use crate::coeff::LaurentPoly;
use crate::error::Error;
use crate::rmatrix::{HeckeData, Op};
use crate::tensor::{decode, encode};
use crate::wedge::{derive_wedge_rules, SwapRuleTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleVariant {
    /// Exchange relations of the Baxterised field, with descendants.
    Full,
    /// Braided tensor product of the modes: `{θ^i, θ^j}_R = 0` for `i > j`.
    BraidedTensor,
}

/// `q^{-2(s-1)}`, the weight of the `s`-th descendant pair.
pub fn geometric_weight(s: usize) -> LaurentPoly {
    LaurentPoly::q_pow(-2 * (s as i64 - 1))
}

/// One term `coeff · θ^{j+du}_c θ^{j+dv}_d` of a rewrite, with modes given
/// relative to the lower mode `j` of the pair being reordered.
#[derive(Clone, Debug)]
pub(crate) struct Template {
    pub coeff: LaurentPoly,
    pub du: i64,
    pub c: usize,
    pub dv: i64,
    pub d: usize,
}

/// Rewriting rules for pairs of generators out of normal order.
#[derive(Clone, Debug)]
pub struct ExchangeRules {
    n: usize,
    variant: RuleVariant,
    wedge: SwapRuleTable,
    data: HeckeData,
    /// Column `(a, b)` of `-q^{-1} PR`: `[(c, d, value)]`.
    cross: Vec<Vec<(usize, usize, LaurentPoly)>>,
    /// Column `(a, b)` of `1 + P𝐑 = 1 - q^{-1} PR`.
    one_plus_pbr: Vec<Vec<(usize, usize, LaurentPoly)>>,
    weight: fn(usize) -> LaurentPoly,
}

fn op_columns(op: &Op) -> Vec<Vec<(usize, usize, LaurentPoly)>> {
    let n = op.n();
    let mut out = vec![Vec::new(); n * n];
    for (col, entries) in op.columns() {
        for (row, v) in entries {
            let rd = decode(n, 2, row);
            out[col].push((rd[0], rd[1], v));
        }
    }
    out
}

impl ExchangeRules {
    pub fn new(data: &HeckeData, variant: RuleVariant) -> Result<Self, Error> {
        let n = data.n;
        let wedge = derive_wedge_rules(data)?;
        let pr = data.pr();
        let minus_q_inv = -LaurentPoly::q_pow(-1);
        let cross = op_columns(&pr.scale(&minus_q_inv));
        let one_plus_pbr = op_columns(&Op::identity(n, 2).add(&pr.scale(&minus_q_inv))?);
        Ok(Self {
            n,
            variant,
            wedge,
            data: data.clone(),
            cross,
            one_plus_pbr,
            weight: geometric_weight,
        })
    }

    /// Replaces the per-descendant weight; used to probe alternative closed
    /// forms against the defining exchange relation.
    pub fn with_descendant_weight(mut self, weight: fn(usize) -> LaurentPoly) -> Self {
        self.weight = weight;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> RuleVariant {
        self.variant
    }

    pub fn hecke(&self) -> &HeckeData {
        &self.data
    }

    pub fn wedge(&self) -> &SwapRuleTable {
        &self.wedge
    }

    pub(crate) fn templates(&self, gap: i64, a: usize, b: usize) -> Vec<Template> {
        debug_assert!(gap > 0);
        let col = encode(self.n, &[a, b]);
        let mut out: Vec<Template> = self.cross[col]
            .iter()
            .map(|(c, d, v)| Template {
                coeff: v.clone(),
                du: 0,
                c: *c,
                dv: gap,
                d: *d,
            })
            .collect();
        if self.variant == RuleVariant::BraidedTensor {
            return out;
        }
        let prefactor = &LaurentPoly::q_pow(-2) - &LaurentPoly::one();
        let mut s = 1;
        while 2 * s < gap {
            let w = &prefactor * &(self.weight)(s as usize);
            for (c, d, v) in &self.one_plus_pbr[col] {
                out.push(Template {
                    coeff: &w * v,
                    du: s,
                    c: *c,
                    dv: gap - s,
                    d: *d,
                });
            }
            s += 1;
        }
        if gap % 2 == 0 {
            let half = gap / 2;
            out.push(Template {
                coeff: &prefactor * &LaurentPoly::q_pow(-2 * (half - 1)),
                du: half,
                c: a,
                dv: half,
                d: b,
            });
        }
        out
    }

    /// Rewrites `hi · lo` with `hi >= lo` into a combination of pairs.
    /// Equal generators give the empty combination.
    pub fn rewrite_pair(&self, hi: ModeGen, lo: ModeGen) -> Vec<(LaurentPoly, ModeGen, ModeGen)> {
        debug_assert!(hi >= lo);
        if hi == lo {
            return Vec::new();
        }
        if hi.mode == lo.mode {
            let c = self.wedge.swap_coeff(hi.index, lo.index).clone();
            return vec![(c, lo, hi)];
        }
        let j = lo.mode;
        self.templates(hi.mode - j, hi.index, lo.index)
            .into_iter()
            .map(|t| {
                (
                    t.coeff,
                    ModeGen::new(j + t.du, t.c),
                    ModeGen::new(j + t.dv, t.d),
                )
            })
            .collect()
    }
}
