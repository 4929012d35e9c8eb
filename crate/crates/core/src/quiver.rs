use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: String,
    pub head: String,
}

impl Arrow {
    pub fn new(id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>) -> Self {
        Arrow {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.head == self.tail
    }
}

/// A finite directed multigraph. Loops and parallel arrows are allowed.
///
/// Vertices and arrows are kept sorted by id, so two quivers built from the
/// same data in a different order compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<V, S>(vertices: V, arrows: Vec<Arrow>) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vertices.sort();
        if vertices.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].clone()));
            }
        }
        let mut arrows = arrows;
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        for w in arrows.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateArrow(w[0].id.clone()));
            }
        }
        for a in &arrows {
            for end in [&a.tail, &a.head] {
                if vertices.binary_search(end).is_err() {
                    return Err(Error::UnknownVertex(end.clone()));
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds a quiver from `(id, tail, head)` triples.
    pub fn from_triples(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let arrows = arrows
            .iter()
            .map(|&(id, t, h)| Arrow::new(id, t, h))
            .collect();
        Quiver::new(vertices.iter().map(|v| v.to_string()), arrows)
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(arrows.windows(2).all(|w| w[0].id < w[1].id));
        Quiver { vertices, arrows }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertex_index(v).is_some()
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows
            .binary_search_by(|a| a.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.arrows[i])
    }

    pub fn require_vertex(&self, v: &str) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn require_arrow(&self, id: &str) -> Result<&Arrow> {
        self.arrow(id).ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    /// Arrows incident to `v` (loops included once).
    pub fn incident<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.iter().filter(move |a| a.tail == v || a.head == v)
    }

    /// Arrow ids as a sorted list.
    pub fn arrow_ids(&self) -> impl Iterator<Item = &str> {
        self.arrows.iter().map(|a| a.id.as_str())
    }
}
