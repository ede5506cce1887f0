use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::LaurentPoly;
use crate::error::Error;
use crate::rmatrix::{interval_product, interval_product_bar, CheckReport, HeckeData, Witness};
use crate::tensor::{decode, encode};
use crate::wedge::{derive_wedge_rules, WedgeMonomial};

/// `θ^0 ⋯ θ^0 θ^1 bar[1,n+1;𝐑] [1,n+1;𝐑] = q^{-2(n-1)} θ^0 ⋯ θ^0 θ^1`
/// (`n` copies of `θ^0`), reduced by the one-mode relations among the
/// `θ^0`, checked column by column.
pub fn check_telescoping(data: &HeckeData) -> Result<CheckReport, Error> {
    let n = data.n;
    let legs = n + 1;
    let rules = derive_wedge_rules(data)?;
    let bold = data.bold_r();
    let op = interval_product_bar(&bold, 1, legs, legs)?
        .compose(&interval_product(&bold, 1, legs, legs)?)?;
    let factor = LaurentPoly::q_pow(-2 * (n as i64 - 1));
    let columns = op.columns();
    let reduce = |k: &[usize]| -> BTreeMap<(WedgeMonomial, usize), LaurentPoly> {
        rules
            .normal_form(&k[..n])
            .terms()
            .map(|(m, c)| ((m.clone(), k[n]), c.clone()))
            .collect()
    };
    for col in 0..n.pow(legs as u32) {
        let j = decode(n, legs, col);
        let mut diff: BTreeMap<(WedgeMonomial, usize), LaurentPoly> = BTreeMap::new();
        for (row, v) in columns.get(&col).into_iter().flatten() {
            for (key, c) in reduce(&decode(n, legs, *row)) {
                *diff.entry(key).or_default() += &(&c * v);
            }
        }
        for (key, c) in reduce(&j) {
            *diff.entry(key).or_default() -= &(&c * &factor);
        }
        if let Some(((m, last), value)) = diff.into_iter().find(|(_, c)| !c.is_zero()) {
            let mut row: Vec<usize> = m.indices().iter().map(|a| a + 1).collect();
            row.push(last + 1);
            return Ok(CheckReport {
                check: "telescoping".into(),
                n,
                pass: false,
                witness: Some(Witness {
                    row,
                    col: j.iter().map(|a| a + 1).collect(),
                    value: value.to_string(),
                }),
                degrees: BTreeMap::new(),
            });
        }
        debug_assert_eq!(encode(n, &j), col);
    }
    Ok(CheckReport {
        check: "telescoping".into(),
        n,
        pass: true,
        witness: None,
        degrees: BTreeMap::new(),
    })
}
