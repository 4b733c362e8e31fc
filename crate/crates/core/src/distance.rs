//! Transposition (Cayley) distance.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::factoradic::Permutation;
use crate::num::SeedInt;
use crate::unranker::{minimal_width, unrank_permutation};

/// Largest width accepted by [`bfs_distance`].
pub const BFS_LIMIT: usize = 8;

/// Pair of seeds to compare, optionally at a fixed width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceQuery<T> {
    pub left: T,
    pub right: T,
    pub width: Option<usize>,
}

impl<T: SeedInt> DistanceQuery<T> {
    pub fn new(left: T, right: T) -> Self {
        Self { left, right, width: None }
    }

    pub fn with_width(mut self, width: usize) -> Self {
        self.width = Some(width);
        self
    }

    /// Explicit width, or the larger of the two minimal widths.
    pub fn resolved_width(&self) -> usize {
        self.width
            .unwrap_or_else(|| minimal_width(&self.left).max(minimal_width(&self.right)))
    }
}

fn check_same_width(p: &Permutation, q: &Permutation) -> Result<()> {
    if p.width() != q.width() {
        return Err(Error::IncompatibleWidths { left: p.width(), right: q.width() });
    }
    Ok(())
}

/// `n` minus the number of cycles of the permutation carrying `p` to `q`.
pub fn cayley_distance(p: &Permutation, q: &Permutation) -> Result<usize> {
    check_same_width(p, q)?;
    let n = p.width();
    let pos_in_p = p.positions();
    // relative[i] = position in p of the value q holds at i
    let relative: Vec<usize> = q.entries().iter().map(|&v| pos_in_p[v]).collect();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = relative[i];
        }
    }
    Ok(n - cycles)
}

/// Shortest path from `p` to `q` in the graph whose edges are single
/// transpositions. Exponential; limited to `n <= BFS_LIMIT`.
pub fn bfs_distance(p: &Permutation, q: &Permutation) -> Result<usize> {
    check_same_width(p, q)?;
    let n = p.width();
    if n > BFS_LIMIT {
        return Err(Error::OracleSizeExceeded { width: n, limit: BFS_LIMIT });
    }
    if p == q {
        return Ok(0);
    }
    // states are fixed-size arrays so the search never allocates per vertex
    let pack = |perm: &Permutation| {
        let mut state = [0u8; BFS_LIMIT];
        for (slot, &v) in state.iter_mut().zip(perm.entries()) {
            *slot = v as u8;
        }
        state
    };
    let target = pack(q);
    let start = pack(p);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((current, d)) = queue.pop_front() {
        for i in 0..n {
            for j in i + 1..n {
                let mut next = current;
                next.swap(i, j);
                if next == target {
                    return Ok(d + 1);
                }
                if seen.insert(next) {
                    queue.push_back((next, d + 1));
                }
            }
        }
    }
    unreachable!("transpositions generate the symmetric group")
}

/// Distance between the permutations of two seeds.
pub fn seed_distance<T: SeedInt>(query: &DistanceQuery<T>) -> Result<usize> {
    let n = query.resolved_width();
    let p = unrank_permutation(&query.left, n)?;
    let q = unrank_permutation(&query.right, n)?;
    cayley_distance(&p, &q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(entries: &[usize]) -> Permutation {
        Permutation::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn cayley_examples() {
        let p4 = perm(&[1, 4, 2, 3]);
        assert_eq!(cayley_distance(&p4, &perm(&[1, 4, 3, 2])).unwrap(), 1);
        assert_eq!(cayley_distance(&p4, &p4).unwrap(), 0);
        assert_eq!(cayley_distance(&p4, &perm(&[2, 4, 3, 1])).unwrap(), 2);
        assert_eq!(
            cayley_distance(&perm(&[3, 2, 5, 6, 1, 4]), &Permutation::identity(6).unwrap()).unwrap(),
            3
        );
    }

    #[test]
    fn bfs_examples_and_guard() {
        let p4 = perm(&[1, 4, 2, 3]);
        assert_eq!(bfs_distance(&p4, &p4).unwrap(), 0);
        assert_eq!(bfs_distance(&p4, &perm(&[1, 4, 3, 2])).unwrap(), 1);
        let id9 = Permutation::identity(9).unwrap();
        assert_eq!(bfs_distance(&id9, &id9), Err(Error::OracleSizeExceeded { width: 9, limit: 8 }));
    }

    #[test]
    fn width_mismatch() {
        let a = Permutation::identity(3).unwrap();
        let b = Permutation::identity(4).unwrap();
        assert_eq!(cayley_distance(&a, &b), Err(Error::IncompatibleWidths { left: 3, right: 4 }));
    }

    #[test]
    fn seed_distance_examples() {
        assert_eq!(seed_distance(&DistanceQuery::new(319u64, 5).with_width(6)).unwrap(), 2);
        assert_eq!(seed_distance(&DistanceQuery::new(319u64, 5)).unwrap(), 2);
        assert_eq!(seed_distance(&DistanceQuery::new(77u64, 77)).unwrap(), 0);
        assert_eq!(seed_distance(&DistanceQuery::new(0u64, 5)).unwrap(), 1);
        assert!(matches!(
            seed_distance(&DistanceQuery::new(319u64, 5).with_width(5)),
            Err(Error::SeedOutOfRange { .. })
        ));
    }
}
