//! Todd–Coxeter coset enumeration over the trivial subgroup, HLT strategy.
//!
//! Cosets are numbered in definition order and coincidences always keep the
//! smaller number, so a run is fully deterministic.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::presentation::{GroupPresentation, Letter, Word};

const UNDEF: u32 = u32::MAX;

/// Total definitions allowed per permitted live coset. HLT may define many
/// more cosets than survive; this bounds the run on infinite groups.
const DEFINITION_FACTOR: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(u64),
    /// Enumeration did not close within the coset limit.
    InfiniteOrExceeded,
}

impl GroupOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::InfiniteOrExceeded => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::InfiniteOrExceeded => f.write_str("infinite-or-exceeded"),
        }
    }
}

impl Serialize for GroupOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GroupOrder::Finite(n) => s.serialize_u64(*n),
            GroupOrder::InfiniteOrExceeded => s.serialize_str("infinite-or-exceeded"),
        }
    }
}

impl<'de> Deserialize<'de> for GroupOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(n) => Ok(GroupOrder::Finite(n)),
            Repr::S(s) if s == "infinite-or-exceeded" => Ok(GroupOrder::InfiniteOrExceeded),
            Repr::S(s) => Err(serde::de::Error::custom(format!("invalid group order `{s}`"))),
        }
    }
}

struct Exceeded;

struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_live: usize,
    max_defined: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(gens: usize, max_live: usize) -> Self {
        let cols = 2 * gens;
        CosetTable {
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            live: 1,
            max_live,
            max_defined: max_live.saturating_mul(DEFINITION_FACTOR),
            queue: Vec::new(),
        }
    }

    fn defined(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, coset: u32, col: usize) -> u32 {
        self.table[coset as usize * self.cols + col]
    }

    fn set(&mut self, coset: u32, col: usize, value: u32) {
        self.table[coset as usize * self.cols + col] = value;
    }

    fn is_live(&self, coset: u32) -> bool {
        self.parent[coset as usize] == coset
    }

    fn define(&mut self, coset: u32, col: usize) -> Result<(), Exceeded> {
        if self.live >= self.max_live || self.defined() >= self.max_defined {
            return Err(Exceeded);
        }
        let new = self.defined() as u32;
        self.parent.push(new);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.live += 1;
        self.set(coset, col, new);
        self.set(new, col ^ 1, coset);
        Ok(())
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, kill) = (ra.min(rb), ra.max(rb));
            self.parent[kill as usize] = keep;
            self.live -= 1;
            self.queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let target = self.get(dead, col);
                if target == UNDEF {
                    continue;
                }
                if self.get(target, col ^ 1) == dead {
                    self.set(target, col ^ 1, UNDEF);
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                let mu_img = self.get(mu, col);
                let nu_img = self.get(nu, col ^ 1);
                if mu_img != UNDEF {
                    self.merge(nu, mu_img);
                } else if nu_img != UNDEF {
                    self.merge(mu, nu_img);
                } else {
                    self.set(mu, col, nu);
                    self.set(nu, col ^ 1, mu);
                }
            }
        }
    }

    /// Scans `word` from `coset`, defining new cosets until the scan
    /// completes, and records the resulting deduction or coincidence.
    fn scan_and_fill(&mut self, coset: u32, word: &[usize]) -> Result<(), Exceeded> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = coset;
        let mut b = coset;
        let mut i = 0usize;
        let mut j = word.len() - 1;
        loop {
            while i <= j && self.get(f, word[i]) != UNDEF {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, word[j] ^ 1) != UNDEF {
                b = self.get(b, word[j] ^ 1);
                if j == 0 {
                    // every letter consumed from the back
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Order of the group presented by `pres`, by coset enumeration over the
/// trivial subgroup with at most `max_cosets` live cosets.
pub fn group_order(pres: &GroupPresentation, max_cosets: usize) -> GroupOrder {
    let pres = pres.simplified();
    let gens = pres.generators().len();
    if gens == 0 {
        return GroupOrder::Finite(1);
    }
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|w: &Word| w.iter().map(|l: &Letter| l.column()).collect())
        .collect();
    let mut t = CosetTable::new(gens, max_cosets.max(1));
    let mut alpha = 0u32;
    while (alpha as usize) < t.defined() {
        if t.is_live(alpha) {
            for r in &relators {
                if t.scan_and_fill(alpha, r).is_err() {
                    return GroupOrder::InfiniteOrExceeded;
                }
                if !t.is_live(alpha) {
                    break;
                }
            }
            for col in 0..t.cols {
                if !t.is_live(alpha) {
                    break;
                }
                if t.get(alpha, col) == UNDEF && t.define(alpha, col).is_err() {
                    return GroupOrder::InfiniteOrExceeded;
                }
            }
        }
        alpha += 1;
    }
    GroupOrder::Finite(t.live as u64)
}

#[cfg(test)]
mod tests {
    use super::super::presentation::{commutator, power};
    use super::*;

    fn pres(gens: &[&str], rels: Vec<Word>) -> GroupPresentation {
        GroupPresentation::new(gens.iter().map(|s| s.to_string()).collect(), rels)
    }

    fn abw(word: &str) -> Word {
        word.chars()
            .map(|c| match c {
                'a' => Letter::gen(0),
                'b' => Letter::gen(1),
                'A' => Letter::inv(0),
                'B' => Letter::inv(1),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn cyclic_groups() {
        for n in 1..=12 {
            let p = pres(&["a"], vec![power(Letter::gen(0), n)]);
            assert_eq!(group_order(&p, 1000), GroupOrder::Finite(u64::from(n)));
        }
    }

    #[test]
    fn small_classical_groups() {
        // S3, D4, A4, S4, A5 through standard Coxeter/von Dyck presentations
        let cases = [
            (vec!["aa", "bb", "ababab"], 6),
            (vec!["aa", "bb", "abababab"], 8),
            (vec!["aa", "bbb", "ababab"], 12),
            (vec!["aa", "bbb", "abababab"], 24),
            (vec!["aa", "bbb", "ababababab"], 60),
        ];
        for (rels, n) in cases {
            let p = pres(&["a", "b"], rels.iter().map(|w| abw(w)).collect());
            assert_eq!(group_order(&p, 10_000), GroupOrder::Finite(n), "{rels:?}");
        }
    }

    #[test]
    fn quaternion_group() {
        let p = pres(&["a", "b"], vec![abw("aaaa"), abw("aaBB"), abw("abaB")]);
        assert_eq!(group_order(&p, 1000), GroupOrder::Finite(8));
    }

    #[test]
    fn infinite_groups_hit_the_limit() {
        let free = pres(&["a"], vec![]);
        assert_eq!(group_order(&free, 500), GroupOrder::InfiniteOrExceeded);
        let z2 = pres(&["a", "b"], vec![commutator(0, 1)]);
        assert_eq!(group_order(&z2, 2000), GroupOrder::InfiniteOrExceeded);
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(group_order(&pres(&[], vec![]), 1), GroupOrder::Finite(1));
        let p = pres(&["a", "b"], vec![abw("a"), abw("b")]);
        assert_eq!(group_order(&p, 1), GroupOrder::Finite(1));
    }

    #[test]
    fn deterministic() {
        let p = pres(&["a", "b"], vec![abw("aa"), abw("bbb"), abw("ababababab")]);
        let runs: Vec<GroupOrder> = (0..3).map(|_| group_order(&p, 300)).collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn order_json() {
        assert_eq!(serde_json::to_string(&GroupOrder::Finite(60)).unwrap(), "60");
        assert_eq!(
            serde_json::to_string(&GroupOrder::InfiniteOrExceeded).unwrap(),
            "\"infinite-or-exceeded\""
        );
        let back: GroupOrder = serde_json::from_str("\"infinite-or-exceeded\"").unwrap();
        assert_eq!(back, GroupOrder::InfiniteOrExceeded);
    }
}
