//! Structural rewrites: pinching, clipping, collapsing and reversing arrows.
//!
//! A merged vertex always keeps the lexicographically smaller id.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::{Arrow, Quiver};
use crate::topology::{is_connected, SpanningForest};
use crate::word::{RelationSet, Word};

/// Total, surjective map from the vertices of a source quiver onto those of
/// a rewritten quiver.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexMap(pub BTreeMap<String, String>);

impl VertexMap {
    pub fn identity(q: &Quiver) -> Self {
        VertexMap(q.vertices().iter().map(|v| (v.clone(), v.clone())).collect())
    }

    pub fn get(&self, v: &str) -> Option<&str> {
        self.0.get(v).map(String::as_str)
    }

    /// `other` after `self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap(
            self.0
                .iter()
                .map(|(k, v)| (k.clone(), other.0[v].clone()))
                .collect(),
        )
    }
}

/// Identifies `v1` and `v2`. Arrows are untouched apart from their incidences.
pub fn pinch(q: &Quiver, v1: &str, v2: &str) -> Result<(Quiver, VertexMap)> {
    q.require_vertex(v1)?;
    q.require_vertex(v2)?;
    if v1 == v2 {
        return Err(Error::SameVertex(v1.to_string()));
    }
    let (keep, drop) = if v1 < v2 { (v1, v2) } else { (v2, v1) };
    let rename = |v: &str| -> String {
        if v == drop {
            keep.to_string()
        } else {
            v.to_string()
        }
    };
    let vertices = q
        .vertices()
        .iter()
        .filter(|v| v.as_str() != drop)
        .cloned()
        .collect();
    let arrows = q
        .arrows()
        .iter()
        .map(|a| Arrow::new(a.id.clone(), rename(&a.tail), rename(&a.head)))
        .collect();
    let map = VertexMap(q.vertices().iter().map(|v| (v.clone(), rename(v))).collect());
    Ok((Quiver::from_sorted_unchecked(vertices, arrows), map))
}

/// Removes arrow `a`.
pub fn clip(q: &Quiver, a: &str) -> Result<Quiver> {
    q.require_arrow(a)?;
    let arrows = q.arrows().iter().filter(|x| x.id != a).cloned().collect();
    Ok(Quiver::from_sorted_unchecked(q.vertices().to_vec(), arrows))
}

/// One collapse, recorded for replay and for pushing representations
/// forward. The pushforward conjugates by the marking of `arrow` at `tail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseStep {
    pub arrow: String,
    pub tail: String,
    pub head: String,
    /// Surviving id of the merged vertex.
    pub merged: String,
    pub vertex_map: VertexMap,
}

impl CollapseStep {
    /// The vertex carrying the step conjugator, `t_{a0}`.
    pub fn basepoint(&self) -> &str {
        &self.tail
    }
}

/// Merges the endpoints of the non-loop arrow `a0` and removes it. Relation
/// words lose every `a0` letter.
pub fn collapse(q: &Quiver, r: &RelationSet, a0: &str) -> Result<(Quiver, RelationSet, CollapseStep)> {
    let arrow = q.require_arrow(a0)?.clone();
    if arrow.is_loop() {
        return Err(Error::LoopCollapse(a0.to_string()));
    }
    let (pinched, vertex_map) = pinch(q, &arrow.tail, &arrow.head)?;
    let collapsed = clip(&pinched, a0)?;
    let relations = r.delete_arrow(a0);
    let merged = core::cmp::min(&arrow.tail, &arrow.head).clone();
    let step = CollapseStep {
        arrow: arrow.id,
        tail: arrow.tail,
        head: arrow.head,
        merged,
        vertex_map,
    };
    Ok((collapsed, relations, step))
}

/// Swaps head and tail of every listed arrow.
pub fn reverse_arrows<S: AsRef<str>>(q: &Quiver, subset: &[S]) -> Result<Quiver> {
    let mut set = BTreeSet::new();
    for s in subset {
        q.require_arrow(s.as_ref())?;
        set.insert(s.as_ref());
    }
    let arrows = q
        .arrows()
        .iter()
        .map(|a| {
            if set.contains(a.id.as_str()) {
                Arrow::new(a.id.clone(), a.head.clone(), a.tail.clone())
            } else {
                a.clone()
            }
        })
        .collect();
    Ok(Quiver::from_sorted_unchecked(q.vertices().to_vec(), arrows))
}

/// Arrow-equivalence under the identity bijection on arrow ids.
pub fn arrows_equivalent(q1: &Quiver, q2: &Quiver) -> bool {
    q1.arrow_ids().eq(q2.arrow_ids())
}

/// Replayable record of a sequence of collapses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub source: Quiver,
    pub source_relations: RelationSet,
    pub steps: Vec<CollapseStep>,
    pub target: Quiver,
    pub relations: RelationSet,
}

impl ReductionTrace {
    /// Re-runs every step on the source quiver.
    pub fn replay(&self) -> Result<(Quiver, RelationSet)> {
        let mut q = self.source.clone();
        let mut r = self.source_relations.clone();
        for step in &self.steps {
            let (nq, nr, s) = collapse(&q, &r, &step.arrow)?;
            if s != *step {
                return Err(Error::QuiverMismatch);
            }
            q = nq;
            r = nr;
        }
        Ok((q, r))
    }

    /// Composite map from source vertices to target vertices.
    pub fn vertex_map(&self) -> VertexMap {
        self.steps
            .iter()
            .fold(VertexMap::identity(&self.source), |acc, s| acc.then(&s.vertex_map))
    }

    /// A source word read on the target: collapsed arrows are dropped.
    pub fn translate(&self, w: &Word) -> Word {
        self.steps.iter().fold(w.clone(), |acc, s| acc.delete_arrow(&s.arrow))
    }

    /// Single-step trace.
    pub fn single(q: &Quiver, r: &RelationSet, arrow: &str) -> Result<Self> {
        let (target, relations, step) = collapse(q, r, arrow)?;
        Ok(ReductionTrace {
            source: q.clone(),
            source_relations: r.clone(),
            steps: alloc::vec![step],
            target,
            relations,
        })
    }
}

/// Collapses the BFS spanning tree of a connected quiver, leaving one vertex
/// with `b1(Q)` loops. The surviving relations present the fundamental group
/// of the quiver with relations.
pub fn reduce_to_rose(q: &Quiver, r: &RelationSet) -> Result<(Quiver, RelationSet, ReductionTrace)> {
    if !is_connected(q) {
        return Err(Error::Disconnected);
    }
    let forest = SpanningForest::new(q);
    let mut cur = q.clone();
    let mut rel = r.clone();
    let mut steps = Vec::with_capacity(forest.tree_arrows.len());
    for a in &forest.tree_arrows {
        let (nq, nr, step) = collapse(&cur, &rel, a)?;
        cur = nq;
        rel = nr;
        steps.push(step);
    }
    let trace = ReductionTrace {
        source: q.clone(),
        source_relations: r.clone(),
        steps,
        target: cur.clone(),
        relations: rel.clone(),
    };
    Ok((cur, rel, trace))
}
