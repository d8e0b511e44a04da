//! Matching three-segment sets against the extremal families.

use serde::{Deserialize, Serialize};

use crate::conjecture::Family;
use crate::dimension::dim_konyagin_lev;
use crate::error::Result;
use crate::grid::{doubling_of, AnySet};
use crate::model::f2_isomorphic;
use crate::segments::decompose_segments;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub family: Option<Family>,
    pub k: usize,
    pub doubling: u64,
    pub dim: usize,
    /// Hypotheses of the structure theorem that the input does not meet. The
    /// classification is still attempted; extremality itself is not checked.
    pub unmet_hypotheses: Vec<String>,
}

impl Classification {
    /// `family=ii i=1 b=3`, or `family=none`.
    pub fn tag(&self) -> String {
        match &self.family {
            Some(f) => f.to_string(),
            None => "family=none".into(),
        }
    }
}

/// Finds the family member isomorphic to `a`, scanning every admissible
/// member with the same `(k, |2A|, dim)`.
pub fn classify_3segment_extremal(a: &AnySet) -> Result<Classification> {
    let k = crate::grid::AdditiveSet::cardinality(a);
    let doubling = doubling_of(a) as u64;
    let dim = dim_konyagin_lev(a)?;
    let mut unmet = Vec::new();
    if k <= 7 {
        unmet.push(format!("k={k} ≤ 7"));
    }
    if doubling <= 3 * k as u64 - 4 {
        unmet.push(format!("|2A|={doubling} ≤ 3k-4"));
    }
    if let AnySet::Int(set) = a {
        let s = decompose_segments(set)?.s();
        if s != 3 {
            unmet.push(format!("s={s} ≠ 3"));
        }
    }
    let canon = match a {
        AnySet::Int(set) if dim == 1 => Some(set.canonical_1d()?),
        _ => None,
    };
    let mut family = None;
    for f in Family::three_segment_members(k as u32) {
        let e = f.expected();
        if e.doubling != doubling || e.dim != dim as u64 {
            continue;
        }
        let g = f.generate()?;
        let hit = match (&canon, &g) {
            (Some(c), AnySet::Int(gi)) => *c == gi.canonical_1d()?,
            _ => f2_isomorphic(a, &g),
        };
        if hit {
            family = Some(f);
            break;
        }
    }
    Ok(Classification {
        family,
        k,
        doubling,
        dim,
        unmet_hypotheses: unmet,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(s: &str) -> String {
        classify_3segment_extremal(&s.parse().unwrap()).unwrap().tag()
    }

    #[test]
    fn figure_sets() {
        assert_eq!(tag("0,4,5,6,7,8,9,10,11,12,24"), "family=i b=3");
        assert_eq!(tag("0,1,2,3,4,5,6,7,8,12,24"), "family=ii i=1 b=3");
        assert_eq!(tag("0,1,2,3,4,5,6,12,13,14,24"), "family=ii i=3 b=3");
    }

    #[test]
    fn reflections_and_embeddings() {
        // Reflection of family i, and a 1-dimensional copy of family iii.
        assert_eq!(tag("0,12,13,14,15,16,17,18,19,20,24"), "family=i b=3");
        assert_eq!(tag("0,3,4,5,6,7,8,9,10,11,100"), "family=iii b=2");
        let iv = Family::IV { k1: 3, k2: 3, k3: 2 }.generate().unwrap();
        let c = classify_3segment_extremal(&iv).unwrap();
        assert_eq!(c.family, Some(Family::IV { k1: 3, k2: 3, k3: 2 }));
    }

    #[test]
    fn non_members() {
        let c = classify_3segment_extremal(&"0,1,2,4,5".parse().unwrap()).unwrap();
        assert_eq!(c.tag(), "family=none");
        assert!(!c.unmet_hypotheses.is_empty());
    }
}
