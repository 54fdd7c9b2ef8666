//! Materialized permutation groups.

use std::collections::{HashMap, HashSet, VecDeque};

/// A permutation of `0..n`, stored as its image list.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn inverse(p: &[u32]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

pub fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&j| {
        let j = j as usize;
        j < seen.len() && !std::mem::replace(&mut seen[j], true)
    })
}

/// Breadth-first closure of `generators` under composition. The identity
/// comes first and the order is deterministic. Returns `None` once more than
/// `bound` elements appear.
pub fn closure(n: usize, generators: &[Perm], bound: usize) -> Option<Vec<Perm>> {
    let id = identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let next = compose(g, &out[i]);
            if seen.insert(next.clone()) {
                if out.len() >= bound {
                    return None;
                }
                out.push(next);
                queue.push_back(out.len() - 1);
            }
        }
    }
    Some(out)
}

/// Multiplication table over a materialized group: `mul[a][b]` is the index
/// of `elements[a] ∘ elements[b]`.
pub struct CayleyTable {
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
}

impl CayleyTable {
    pub fn new(elements: &[Perm]) -> Self {
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mul = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| index[&compose(a, b)])
                    .collect()
            })
            .collect();
        let n = elements.first().map_or(0, |p| p.len());
        let identity = index[&identity(n)];
        CayleyTable { mul, identity }
    }

    /// Smallest subgroup containing `seeds`, as a sorted index list.
    fn generated(&self, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.mul.len()];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &s in seeds {
                let c = self.mul[a][s];
                if !inside[c] {
                    inside[c] = true;
                    members.push(c);
                    queue.push_back(c);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Every subgroup, each as a sorted list of element indices, ordered by
    /// size and then lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.mul.len();
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            let h = self.generated(&[g]);
            if found.insert(h.clone()) {
                frontier.push(h);
            }
        }
        let cyclic = frontier.clone();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                if c.iter().all(|x| h.binary_search(x).is_ok()) {
                    continue;
                }
                let mut seeds = h.clone();
                seeds.extend(c.iter().copied());
                let joined = self.generated(&seeds);
                if found.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        (0..n as u32).map(|i| (i + 1) % n as u32).collect()
    }

    #[test]
    fn compose_and_inverse() {
        let r = cycle(5);
        let r2 = compose(&r, &r);
        assert_eq!(r2, vec![2, 3, 4, 0, 1]);
        assert_eq!(compose(&r, &inverse(&r)), identity(5));
        assert!(is_permutation(&r));
        assert!(!is_permutation(&[0, 0, 1]));
        assert!(!is_permutation(&[0, 3, 1]));
    }

    #[test]
    fn closure_of_dihedral_group() {
        let flip: Perm = vec![0, 5, 4, 3, 2, 1];
        let g = closure(6, &[cycle(6), flip.clone()], 100).unwrap();
        assert_eq!(g.len(), 12);
        assert_eq!(g[0], identity(6));
        assert!(closure(6, &[cycle(6), flip], 11).is_none());
    }

    #[test]
    fn subgroup_counts() {
        // S3 has 6 subgroups, D4 has 10, S4 has 30
        let s3 = closure(3, &[vec![1, 0, 2], vec![1, 2, 0]], 100).unwrap();
        assert_eq!(CayleyTable::new(&s3).subgroups().len(), 6);
        let d4 = closure(4, &[cycle(4), vec![0, 3, 2, 1]], 100).unwrap();
        assert_eq!(CayleyTable::new(&d4).subgroups().len(), 10);
        let s4 = closure(4, &[vec![1, 0, 2, 3], cycle(4)], 100).unwrap();
        let subs = CayleyTable::new(&s4).subgroups();
        assert_eq!(subs.len(), 30);
        assert_eq!(subs.first().unwrap().len(), 1);
        assert_eq!(subs.last().unwrap().len(), 24);
        for h in &subs {
            assert_eq!(24 % h.len(), 0);
        }
    }
}
