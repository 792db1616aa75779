#![allow(dead_code)]

pub mod props;

use proptest::prelude::*;
use tilecensus::model::{PlanarDiagram, Sign};

/// Every signed (or all-`+`) perfect matching of `n` edges, built without
/// any of the library's search code.
pub fn all_matchings(n: usize, signed: bool) -> Vec<PlanarDiagram> {
    fn rec(
        free: &mut Vec<usize>,
        acc: &mut Vec<(usize, usize, Sign)>,
        n: usize,
        signed: bool,
        out: &mut Vec<PlanarDiagram>,
    ) {
        if free.is_empty() {
            out.push(PlanarDiagram::new(n, acc).unwrap());
            return;
        }
        let a = free.remove(0);
        for k in 0..free.len() {
            let b = free.remove(k);
            for s in [Sign::Plus, Sign::Minus] {
                if s == Sign::Minus && !signed {
                    continue;
                }
                acc.push((a, b, s));
                rec(free, acc, n, signed, out);
                acc.pop();
            }
            free.insert(k, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), n, signed, &mut out);
    out
}

/// Builds a diagram by pairing edges in the order given by `keys`.
pub fn diagram_from_keys(keys: &[u32], signs: &[bool]) -> PlanarDiagram {
    let n = keys.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (keys[i], i));
    let pairs: Vec<_> = order
        .chunks(2)
        .zip(signs)
        .map(|(p, &minus)| (p[0], p[1], if minus { Sign::Minus } else { Sign::Plus }))
        .collect();
    PlanarDiagram::new(n, &pairs).unwrap()
}

/// Random diagrams with `min_e..=max_e` edge pairs; `signed` allows twists.
pub fn diagrams(min_e: usize, max_e: usize, signed: bool) -> impl Strategy<Value = PlanarDiagram> {
    (min_e..=max_e).prop_flat_map(move |e| {
        (
            proptest::collection::vec(any::<u32>(), 2 * e),
            proptest::collection::vec(any::<bool>().prop_map(move |b| b && signed), e),
        )
            .prop_map(|(k, s)| diagram_from_keys(&k, &s))
    })
}
