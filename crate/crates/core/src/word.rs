//! Words in the arrows of a quiver.
//!
//! Letters are stored in composition order: the first letter applied is the
//! *last* element, so the path `a2 a1 a0` (apply `a0`, then `a1`, then `a2`)
//! is stored as `[a2, a1, a0]`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: String,
    /// `true` for the exponent -1 (traverse the arrow backwards).
    pub inverse: bool,
}

impl Letter {
    pub fn fwd(arrow: impl Into<String>) -> Self {
        Letter {
            arrow: arrow.into(),
            inverse: false,
        }
    }

    pub fn inv(arrow: impl Into<String>) -> Self {
        Letter {
            arrow: arrow.into(),
            inverse: true,
        }
    }

    pub fn exponent(&self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    pub letters: Vec<Letter>,
}

/// Start and end vertex of a composable, non-empty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endpoints {
    pub start: String,
    pub end: String,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// A positive word from arrow ids in composition order.
    pub fn path<S: AsRef<str>>(arrows: &[S]) -> Self {
        Word {
            letters: arrows.iter().map(|a| Letter::fwd(a.as_ref())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    /// Formal inverse: reversed order, flipped exponents.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    arrow: l.arrow.clone(),
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    /// `self` after `other`: `other` is applied first.
    pub fn compose(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    /// Checks composability against `q`. Returns `None` for the empty word.
    ///
    /// Error indices refer to positions in `letters`.
    pub fn endpoints(&self, q: &Quiver) -> Result<Option<Endpoints>> {
        let mut current: Option<(&str, &str)> = None;
        for (index, letter) in self.letters.iter().enumerate().rev() {
            let arrow = q.require_arrow(&letter.arrow)?;
            let (from, to) = if letter.inverse {
                (arrow.head.as_str(), arrow.tail.as_str())
            } else {
                (arrow.tail.as_str(), arrow.head.as_str())
            };
            current = match current {
                None => Some((from, to)),
                Some((start, end)) => {
                    if end != from {
                        return Err(Error::NotComposable { index });
                    }
                    Some((start, to))
                }
            };
        }
        Ok(current.map(|(s, e)| Endpoints {
            start: s.into(),
            end: e.into(),
        }))
    }

    /// Base vertex of a closed word; `None` for the empty word.
    pub fn closed_at(&self, q: &Quiver) -> Result<Option<String>> {
        match self.endpoints(q)? {
            None => Ok(None),
            Some(ep) if ep.start == ep.end => Ok(Some(ep.start)),
            Some(_) => Err(Error::OpenWord),
        }
    }

    /// Removes every letter on `arrow`.
    pub fn delete_arrow(&self, arrow: &str) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .filter(|l| l.arrow != arrow)
                .cloned()
                .collect(),
        }
    }
}

impl core::fmt::Display for Word {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&l.arrow)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Relations: positively oriented cycles required to evaluate to the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationSet {
    pub relations: Vec<Word>,
}

/// A relation that is not an oriented cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: usize,
    /// Failing letter index; `None` when the word is composable but open or
    /// the failure is not tied to a letter.
    pub letter: Option<usize>,
    pub reason: ViolationKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    UnknownArrow,
    NotComposable,
    NotClosed,
    NotPositive,
    Empty,
}

impl RelationSet {
    pub fn new(relations: Vec<Word>) -> Self {
        RelationSet { relations }
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Every relation must be a non-empty positive cycle in `q`.
    pub fn validate(&self, q: &Quiver) -> core::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for (relation, w) in self.relations.iter().enumerate() {
            if w.is_empty() {
                out.push(Violation {
                    relation,
                    letter: None,
                    reason: ViolationKind::Empty,
                });
                continue;
            }
            if let Some(letter) = w.letters.iter().position(|l| l.inverse) {
                out.push(Violation {
                    relation,
                    letter: Some(letter),
                    reason: ViolationKind::NotPositive,
                });
                continue;
            }
            match w.endpoints(q) {
                Ok(Some(ep)) if ep.start == ep.end => {}
                Ok(_) => out.push(Violation {
                    relation,
                    letter: None,
                    reason: ViolationKind::NotClosed,
                }),
                Err(Error::NotComposable { index }) => out.push(Violation {
                    relation,
                    letter: Some(index),
                    reason: ViolationKind::NotComposable,
                }),
                Err(_) => {
                    let letter = w.letters.iter().position(|l| q.arrow(&l.arrow).is_none());
                    out.push(Violation {
                        relation,
                        letter,
                        reason: ViolationKind::UnknownArrow,
                    })
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Deletes every occurrence of `arrow`. Empty results are dropped: they
    /// evaluate to the identity and carry no information.
    pub fn delete_arrow(&self, arrow: &str) -> RelationSet {
        RelationSet {
            relations: self
                .relations
                .iter()
                .map(|w| w.delete_arrow(arrow))
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }
}
