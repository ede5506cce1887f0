//! Rank of Laurent-coefficient vectors at an exact rational specialisation.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::LaurentPoly;

/// Rank over `Q` of the given sparse vectors after substituting `q = q0`.
///
/// For generic `q0` this equals the rank over the fraction field `Q(q)`;
/// a specialisation can only lower it.
pub fn rank_at<K: Ord + Clone>(vectors: &[BTreeMap<K, LaurentPoly>], q0: &BigRational) -> usize {
    let mut rows: Vec<BTreeMap<K, BigRational>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|(k, p)| (k.clone(), p.eval(q0)))
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
        .filter(|r: &BTreeMap<K, BigRational>| !r.is_empty())
        .collect();
    let mut rank = 0;
    while let Some(pivot_row) = rows.pop() {
        let Some((key, lead)) = pivot_row.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            continue;
        };
        rank += 1;
        for row in rows.iter_mut() {
            if let Some(f) = row.get(&key).cloned() {
                let ratio = f / &lead;
                for (k, v) in &pivot_row {
                    let e = row.entry(k.clone()).or_insert_with(BigRational::zero);
                    *e -= &ratio * v;
                }
                row.retain(|_, v| !v.is_zero());
            }
        }
        rows.retain(|r| !r.is_empty());
    }
    rank
}
