//! Small named graphs used throughout the tests and examples.

use crate::multigraph::Multigraph;

fn build(n: usize, pairs: &[(usize, usize)]) -> Multigraph {
    Multigraph::new(n, pairs.iter().copied()).expect("named graph is well formed")
}

pub fn k2() -> Multigraph {
    build(2, &[(0, 1)])
}

pub fn k3() -> Multigraph {
    build(3, &[(0, 1), (1, 2), (0, 2)])
}

/// Edges `01 02 03 12 13 23`.
pub fn k4() -> Multigraph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Star with centre 0.
pub fn k13() -> Multigraph {
    build(4, &[(0, 1), (0, 2), (0, 3)])
}

/// Sides `{0,1,2}` and `{3,4,5}`.
pub fn k33() -> Multigraph {
    let pairs: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    build(6, &pairs)
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Multigraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        pairs.push((i, i + 5));
    }
    for i in 0..5 {
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &pairs)
}

/// Triangles `{0,1,2}`, `{3,4,5}` and rungs `03 14 25` (edge ids 6, 7, 8).
pub fn prism() -> Multigraph {
    build(
        6,
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
}

pub fn path(n: usize) -> Multigraph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &pairs)
}

pub fn cycle(n: usize) -> Multigraph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &pairs)
}

/// Two triangles `{0,1,2}` and `{3,4,5}` joined by the edge `2 -- 3`.
pub fn triangles_with_bridge() -> Multigraph {
    build(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
}

/// Smallest connected cubic graph with a bridge: two copies of K4 with one
/// edge subdivided, the subdivision vertices (4 and 9) joined by the bridge.
pub fn bridged_cubic() -> Multigraph {
    let block = |o: usize| {
        vec![
            (o, o + 1),
            (o, o + 2),
            (o, o + 3),
            (o + 1, o + 2),
            (o + 1, o + 4),
            (o + 3, o + 4),
            (o + 2, o + 3),
        ]
    };
    // block edges: 0-1 0-2 0-3 1-2 2-3 plus 1-4-3 replacing 1-3
    let mut pairs = block(0);
    pairs.extend(block(5));
    pairs.push((4, 9));
    build(10, &pairs)
}
