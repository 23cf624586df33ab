//! Partition refinement over one side of an incidence structure.

pub(crate) const NONE: usize = usize::MAX;

/// Classes produced by [`refine`]. Class ids are contiguous and numbered by
/// the first (smallest) item that lands in them, so `reps` is ascending and
/// `reps[i]` is the smallest item of class `i`.
#[derive(Debug, Clone)]
pub(crate) struct Classes {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
}

/// Splits `items` into classes of equal pivot membership.
///
/// Two items end up in the same class iff exactly the same pivots contain
/// them. `items` must be ascending and `is_item` must mark exactly `items`;
/// pivot entries outside `items` are ignored. Runs in
/// `O(universe + Σ|pivot|)`.
pub(crate) fn refine<'a, I>(universe: usize, items: &[usize], is_item: &[bool], pivots: I) -> Classes
where
    I: IntoIterator<Item = &'a [usize]>,
{
    debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
    let mut class_of = vec![NONE; universe];
    for &x in items {
        class_of[x] = 0;
    }
    // split_into[c] is the fresh class receiving the part of c hit by the
    // current pivot; stamp[c] says which pivot created that entry.
    let mut split_into: Vec<usize> = vec![NONE];
    let mut stamp: Vec<usize> = vec![0];
    let mut round = 0usize;
    for pivot in pivots {
        round += 1;
        for &x in pivot {
            if !is_item[x] {
                continue;
            }
            let c = class_of[x];
            if stamp[c] != round {
                stamp[c] = round;
                split_into[c] = split_into.len();
                split_into.push(NONE);
                stamp.push(round);
            }
            class_of[x] = split_into[c];
        }
    }

    let mut renumber = vec![NONE; split_into.len()];
    let mut reps = Vec::new();
    for &x in items {
        let c = class_of[x];
        if renumber[c] == NONE {
            renumber[c] = reps.len();
            reps.push(x);
        }
        class_of[x] = renumber[c];
    }
    Classes { class_of, reps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(n: usize, items: &[usize]) -> Vec<bool> {
        let mut m = vec![false; n];
        for &i in items {
            m[i] = true;
        }
        m
    }

    #[test]
    fn no_pivots_single_class() {
        let items = [1, 3, 4];
        let c = refine(5, &items, &mask(5, &items), std::iter::empty());
        assert_eq!(c.reps, vec![1]);
        assert_eq!(c.class_of[3], 0);
        assert_eq!(c.class_of[0], NONE);
    }

    #[test]
    fn splits_by_membership() {
        let items = [0, 1, 2, 3];
        let p1: &[usize] = &[1, 2];
        let p2: &[usize] = &[2, 3, 7];
        let m = mask(8, &items);
        let c = refine(8, &items, &m, [p1, p2]);
        // signatures: 0:{} 1:{p1} 2:{p1,p2} 3:{p2}
        assert_eq!(c.reps, vec![0, 1, 2, 3]);
        let p3: &[usize] = &[0, 3];
        let c = refine(8, &items, &m, [p3]);
        assert_eq!(c.reps, vec![0, 1]);
        assert_eq!(c.class_of[3], 0);
        assert_eq!(c.class_of[2], 1);
    }
}
