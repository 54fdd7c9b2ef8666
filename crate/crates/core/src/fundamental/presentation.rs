//! Finite group presentations over named generators.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("relator symbol `{0}` does not name a generator")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// Column index in a coset table: `2·generator + inverse`.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

pub type Word = Vec<Letter>;

/// `letter^n` for `n ≥ 0`.
pub fn power(letter: Letter, n: u32) -> Word {
    vec![letter; n as usize]
}

/// `[a, b] = a b a⁻¹ b⁻¹`.
pub fn commutator(a: usize, b: usize) -> Word {
    vec![Letter::gen(a), Letter::gen(b), Letter::inv(a), Letter::inv(b)]
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancelling inverse pairs across the ends.
pub fn cyclic_reduce(word: &[Letter]) -> Word {
    let w = free_reduce(word);
    let (mut lo, mut hi) = (0, w.len());
    while hi - lo >= 2 && w[lo] == w[hi - 1].inverted() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr", into = "PresentationRepr")]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    /// Panics if a relator letter is out of range; use the JSON or
    /// [`GroupPresentation::parse_relators`] path for untrusted input.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        assert!(relators
            .iter()
            .flatten()
            .all(|l| l.generator < generators.len()));
        GroupPresentation {
            generators,
            relators,
        }
    }

    /// Builds a presentation from symbolic relators such as `["x", "y^-1"]`.
    pub fn parse_relators(
        generators: Vec<String>,
        relators: &[Vec<String>],
    ) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let lookup = |sym: &str| -> Result<Letter, PresentationError> {
            let (name, inverse) = match sym.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (sym, false),
            };
            generators
                .iter()
                .position(|g| g == name)
                .map(|generator| Letter { generator, inverse })
                .ok_or_else(|| PresentationError::UnknownGenerator(sym.to_string()))
        };
        let relators = relators
            .iter()
            .map(|w| w.iter().map(|s| lookup(s)).collect::<Result<Word, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn symbol(&self, l: Letter) -> String {
        let name = &self.generators[l.generator];
        if l.inverse {
            format!("{name}^-1")
        } else {
            name.clone()
        }
    }

    /// Cyclically reduced relators with empty words removed.
    pub fn simplified(&self) -> GroupPresentation {
        let relators = self
            .relators
            .iter()
            .map(|w| cyclic_reduce(w))
            .filter(|w| !w.is_empty())
            .collect();
        GroupPresentation {
            generators: self.generators.clone(),
            relators,
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generators.join(", "))?;
        for (i, w) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            if w.is_empty() {
                f.write_str("1")?;
                continue;
            }
            // compress runs: x x x -> x^3
            let mut k = 0;
            let mut first = true;
            while k < w.len() {
                let mut run = 1;
                while k + run < w.len() && w[k + run] == w[k] {
                    run += 1;
                }
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                let name = &self.generators[w[k].generator];
                match (w[k].inverse, run) {
                    (false, 1) => write!(f, "{name}")?,
                    (false, n) => write!(f, "{name}^{n}")?,
                    (true, n) => write!(f, "{name}^-{n}")?,
                }
                k += run;
            }
        }
        f.write_str(" >")
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    generators: Vec<String>,
    relators: Vec<Vec<String>>,
}

impl TryFrom<PresentationRepr> for GroupPresentation {
    type Error = PresentationError;

    fn try_from(r: PresentationRepr) -> Result<Self, Self::Error> {
        GroupPresentation::parse_relators(r.generators, &r.relators)
    }
}

impl From<GroupPresentation> for PresentationRepr {
    fn from(p: GroupPresentation) -> Self {
        let relators = p
            .relators
            .iter()
            .map(|w| w.iter().map(|&l| p.symbol(l)).collect())
            .collect();
        PresentationRepr {
            generators: p.generators,
            relators,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        let (x, y) = (Letter::gen(0), Letter::gen(1));
        assert_eq!(free_reduce(&[x, y, y.inverted(), x]), vec![x, x]);
        assert_eq!(cyclic_reduce(&[y, x, x, y.inverted()]), vec![x, x]);
        assert_eq!(cyclic_reduce(&[y, x, x.inverted(), y.inverted()]), vec![]);
        assert_eq!(cyclic_reduce(&[x, y, x.inverted()]), vec![y]);
    }

    #[test]
    fn json_symbols() {
        let p: GroupPresentation = serde_json::from_str(
            r#"{"generators": ["a", "b"], "relators": [["a", "b", "a^-1", "b^-1"]]}"#,
        )
        .unwrap();
        assert_eq!(p.relators()[0], commutator(0, 1));
        let back = serde_json::to_value(&p).unwrap();
        assert_eq!(back["relators"][0][2], "a^-1");
        let bad = r#"{"generators": ["a"], "relators": [["c"]]}"#;
        assert!(serde_json::from_str::<GroupPresentation>(bad).is_err());
    }

    #[test]
    fn display() {
        let p = GroupPresentation::new(
            vec!["x".into(), "y".into()],
            vec![power(Letter::gen(0), 3), vec![Letter::gen(0), Letter::inv(1)]],
        );
        assert_eq!(p.to_string(), "< x, y | x^3, x y^-1 >");
    }
}
