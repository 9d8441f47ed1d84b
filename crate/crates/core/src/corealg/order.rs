use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Word;

/// Weighted degree, then left-to-right lexicographic comparison by generator precedence.
///
/// `precedence` lists generator indices from largest to smallest; the default is the
/// declaration order, so the first declared generator is the largest letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    precedence: Vec<u16>,
    rank: Vec<u16>,
}

impl MonomialOrder {
    pub fn deglex(num_gens: usize) -> MonomialOrder {
        MonomialOrder::with_precedence((0..num_gens as u16).collect())
    }

    /// Panics unless `precedence` is a permutation of `0..n`.
    pub fn with_precedence(precedence: Vec<u16>) -> MonomialOrder {
        let n = precedence.len();
        let mut rank = vec![u16::MAX; n];
        for (pos, &g) in precedence.iter().enumerate() {
            assert!((g as usize) < n && rank[g as usize] == u16::MAX, "not a permutation");
            rank[g as usize] = (n - 1 - pos) as u16;
        }
        MonomialOrder { precedence, rank }
    }

    pub fn precedence(&self) -> &[u16] {
        &self.precedence
    }

    pub fn num_gens(&self) -> usize {
        self.precedence.len()
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            for (x, y) in a.letters().iter().zip(b.letters()) {
                let o = self.rank[*x as usize].cmp(&self.rank[*y as usize]);
                if o != Ordering::Equal {
                    return o;
                }
            }
            a.len().cmp(&b.len())
        })
    }

    /// Order on the disjoint union of two generator sets; letters of `self` outrank
    /// letters of `other`.
    pub fn extend(&self, other: &MonomialOrder) -> MonomialOrder {
        let shift = self.num_gens() as u16;
        let mut prec = self.precedence.clone();
        prec.extend(other.precedence.iter().map(|g| g + shift));
        MonomialOrder::with_precedence(prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const WTS: [u32; 3] = [1, 1, 2];

    fn word() -> impl Strategy<Value = Word> {
        prop::collection::vec(0u16..3, 0..6).prop_map(|l| Word::new(l, &WTS))
    }

    #[test]
    fn first_declared_is_largest() {
        let o = MonomialOrder::deglex(2);
        let xy = Word::new(vec![0, 1], &[1, 1]);
        let yx = Word::new(vec![1, 0], &[1, 1]);
        assert_eq!(o.cmp(&xy, &yx), Ordering::Greater);
        let o2 = MonomialOrder::with_precedence(vec![1, 0]);
        assert_eq!(o2.cmp(&xy, &yx), Ordering::Less);
    }

    proptest! {
        #[test]
        fn total_degree_compatible_multiplicative(
            u in word(), v in word(), w in word(), z in word(), perm in Just(vec![2u16, 0, 1])
        ) {
            for o in [MonomialOrder::deglex(3), MonomialOrder::with_precedence(perm.clone())] {
                let c = o.cmp(&u, &v);
                prop_assert_eq!(c == Ordering::Equal, u == v);
                prop_assert_eq!(o.cmp(&v, &u), c.reverse());
                if u.degree() < v.degree() {
                    prop_assert_eq!(c, Ordering::Less);
                }
                prop_assert_eq!(o.cmp(&u.sandwich(&w, &z), &v.sandwich(&w, &z)), c);
                if c == Ordering::Less && o.cmp(&v, &w) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&u, &w), Ordering::Less);
                }
            }
        }
    }
}
