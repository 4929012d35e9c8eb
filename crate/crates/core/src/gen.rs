//! Seeded random quivers for property tests and the CLI.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::quiver::{Arrow, Quiver};
use crate::topology::ends;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn build(vertices: Vec<String>, triples: Vec<(usize, usize)>) -> Quiver {
    let arrows = triples
        .into_iter()
        .enumerate()
        .map(|(i, (t, h))| Arrow::new(format!("a{i}"), vertices[t].clone(), vertices[h].clone()))
        .collect();
    Quiver::new(vertices, arrows).expect("generated quiver is well formed")
}

fn tree_edges<R: Rng + ?Sized>(rng: &mut R, nv: usize) -> Vec<(usize, usize)> {
    (1..nv)
        .map(|i| {
            let j = rng.random_range(0..i);
            if rng.random_bool(0.5) {
                (i, j)
            } else {
                (j, i)
            }
        })
        .collect()
}

/// Random tree on exactly `nv` vertices, arrows randomly oriented.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, nv: usize) -> Quiver {
    let edges = tree_edges(rng, nv.max(1));
    build(names("v", nv.max(1)), edges)
}

/// Connected quiver with at most `max_v` vertices and `max_a` arrows
/// (`max_a >= max_v - 1`). Loops and parallel arrows occur.
pub fn random_connected<R: Rng + ?Sized>(rng: &mut R, max_v: usize, max_a: usize) -> Quiver {
    let nv = rng.random_range(1..=max_v.max(1));
    let mut edges = tree_edges(rng, nv);
    let na = rng.random_range(edges.len()..=max_a.max(edges.len()));
    while edges.len() < na {
        edges.push((rng.random_range(0..nv), rng.random_range(0..nv)));
    }
    edges.shuffle(rng);
    build(names("v", nv), edges)
}

/// Strongly connected: a random Hamiltonian cycle plus extra arrows.
pub fn random_strongly_connected<R: Rng + ?Sized>(rng: &mut R, max_v: usize, max_a: usize) -> Quiver {
    let nv = rng.random_range(1..=max_v.max(1));
    let mut order: Vec<usize> = (0..nv).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (0..nv).map(|i| (order[i], order[(i + 1) % nv])).collect();
    let na = rng.random_range(edges.len()..=max_a.max(edges.len()));
    while edges.len() < na {
        edges.push((rng.random_range(0..nv), rng.random_range(0..nv)));
    }
    edges.shuffle(rng);
    build(names("v", nv), edges)
}

/// Connected quiver with at least one source or sink.
pub fn random_with_ends<R: Rng + ?Sized>(rng: &mut R, max_v: usize, max_a: usize) -> Quiver {
    for _ in 0..64 {
        let q = random_connected(rng, max_v.max(2), max_a.max(1));
        if !ends(&q).is_empty() {
            return q;
        }
    }
    // pendant vertex: attach a fresh source or sink to a random quiver
    let core = random_connected(rng, max_v.max(2) - 1, max_a.max(1));
    let nv = core.num_vertices();
    let mut edges: Vec<(usize, usize)> = core
        .arrows()
        .iter()
        .map(|a| (core.vertex_index(&a.tail).unwrap(), core.vertex_index(&a.head).unwrap()))
        .collect();
    let anchor = rng.random_range(0..nv);
    edges.push(if rng.random_bool(0.5) { (nv, anchor) } else { (anchor, nv) });
    build(names("v", nv + 1), edges)
}

/// A loop at `v0` with a path tail `v0 <- v1 <- ... <- v_len`.
pub fn comet(tail_len: usize) -> Quiver {
    let mut edges = Vec::from([(0, 0)]);
    edges.extend((1..=tail_len).map(|i| (i, i - 1)));
    build(names("v", tail_len + 1), edges)
}

/// `k` leaves all pointing at the centre `v0`.
pub fn star(k: usize) -> Quiver {
    build(names("v", k + 1), (1..=k).map(|i| (i, 0)).collect())
}

/// Every local configuration relative to collapsing `c: t -> h`: loops at
/// both ends, both parallels, arrows between each endpoint and a third
/// vertex `o` in both directions, and an arrow away from both.
pub fn nine_class_quiver() -> Quiver {
    Quiver::from_triples(
        &["h", "o", "p", "t"],
        &[
            ("c", "t", "h"),
            ("lt", "t", "t"),
            ("lh", "h", "h"),
            ("par", "t", "h"),
            ("anti", "h", "t"),
            ("to", "t", "o"),
            ("ot", "o", "t"),
            ("ho", "h", "o"),
            ("oh", "o", "h"),
            ("op", "o", "p"),
        ],
    )
    .expect("fixed quiver")
}
