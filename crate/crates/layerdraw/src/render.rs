//! SVG output for one layer: outer face on a regular polygon, the rest by
//! barycentric (Tutte) placement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::doc::{DecompositionDocument, LayerRecord};
use crate::error::{Error, Result};
use crate::graph::{seg, EdgeId, Seg, VertexId};
use crate::verify::connection_paths;

pub type Point = (f64, f64);

const SIZE: f64 = 600.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// The rim, or the longest face (smallest id on ties).
fn outer_face(layer: &LayerRecord) -> Vec<VertexId> {
    let face = match &layer.rim {
        Some(r) => r,
        None => layer
            .cycles
            .iter()
            .max_by(|a, b| a.arcs.len().cmp(&b.arcs.len()).then(b.id.cmp(&a.id)))
            .expect("layer has faces"),
    };
    face.arcs.iter().map(|a| a[0]).collect()
}

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<Point>) -> Vec<Point> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / d;
            if f == 0.0 {
                continue;
            }
            let (top, rest) = a.split_at_mut(row);
            for (x, p) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * p;
            }
            b[row].0 -= f * b[col].0;
            b[row].1 -= f * b[col].1;
        }
    }
    let mut x = vec![(0.0, 0.0); n];
    for row in (0..n).rev() {
        let (mut sx, mut sy) = b[row];
        for k in row + 1..n {
            sx -= a[row][k] * x[k].0;
            sy -= a[row][k] * x[k].1;
        }
        x[row] = (sx / a[row][row], sy / a[row][row]);
    }
    x
}

/// Vertex positions in a `SIZE` square.
pub fn layout(layer: &LayerRecord) -> BTreeMap<VertexId, Point> {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for c in layer.faces() {
        for &[a, b] in &c.arcs {
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
    }
    let outer = outer_face(layer);
    let mut pos: BTreeMap<VertexId, Point> = BTreeMap::new();
    let (c, r) = (SIZE / 2.0, SIZE / 2.0 - 30.0);
    for (i, &v) in outer.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / outer.len() as f64 - std::f64::consts::FRAC_PI_2;
        pos.insert(v, (c + r * t.cos(), c + r * t.sin()));
    }
    let free: Vec<VertexId> = adj
        .keys()
        .copied()
        .filter(|v| !pos.contains_key(v))
        .collect();
    let index: BTreeMap<VertexId, usize> = free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = free.len();
    let mut a = vec![vec![0.0; k]; k];
    let mut b = vec![(0.0, 0.0); k];
    for (i, v) in free.iter().enumerate() {
        let nb = &adj[v];
        a[i][i] = nb.len() as f64;
        for u in nb {
            match index.get(u) {
                Some(&j) => a[i][j] -= 1.0,
                None => {
                    let p = pos[u];
                    b[i].0 += p.0;
                    b[i].1 += p.1;
                }
            }
        }
    }
    for (v, p) in free.iter().zip(solve(a, b)) {
        pos.insert(*v, p);
    }
    pos
}

/// Graph edge owning each drawn segment, with that edge's layer.
fn owners(doc: &DecompositionDocument, layer: usize) -> Result<BTreeMap<Seg, (EdgeId, usize)>> {
    let paths = connection_paths(doc, layer).map_err(Error::BadRoute)?;
    let edge_layer: BTreeMap<EdgeId, usize> = doc
        .layers
        .iter()
        .flat_map(|l| l.realized.iter().map(move |&e| (e, l.index)))
        .collect();
    Ok(paths
        .iter()
        .flat_map(|(&e, p)| {
            let el = edge_layer[&e];
            p.windows(2)
                .map(move |w| (seg(w[0], w[1]), (e, el)))
                .collect::<Vec<_>>()
        })
        .collect())
}

/// Number of proper intersections between drawn segments of different edges.
pub fn count_crossings(
    pos: &BTreeMap<VertexId, Point>,
    owner: &BTreeMap<Seg, (EdgeId, usize)>,
) -> usize {
    fn orient(a: Point, b: Point, c: Point) -> f64 {
        (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
    }
    let segs: Vec<(Seg, EdgeId)> = owner.iter().map(|(&s, &(e, _))| (s, e)).collect();
    let eps = 1e-9;
    let mut count = 0;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let ((a, b), e) = segs[i];
            let ((c, d), f) = segs[j];
            if e == f || a == c || a == d || b == c || b == d {
                continue;
            }
            let (pa, pb, pc, pd) = (pos[&a], pos[&b], pos[&c], pos[&d]);
            let d1 = orient(pc, pd, pa);
            let d2 = orient(pc, pd, pb);
            let d3 = orient(pa, pb, pc);
            let d4 = orient(pa, pb, pd);
            if d1 * d2 < -eps && d3 * d4 < -eps {
                count += 1;
            }
        }
    }
    count
}

pub fn render_svg(doc: &DecompositionDocument, index: usize) -> Result<String> {
    let layer = doc
        .layer(index)
        .ok_or_else(|| Error::Fixture(format!("no layer {index}")))?;
    let pos = layout(layer);
    let owner = owners(doc, index)?;
    let n = doc.graph.n;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (&(a, b), &(e, l)) in &owner {
        let (p, q) = (pos[&a], pos[&b]);
        let colour = PALETTE[(l - 1) % PALETTE.len()];
        writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="2" data-edge="{e}" data-layer="{l}"/>"#,
            p.0, p.1, q.0, q.1
        )
        .unwrap();
    }
    for (&v, &(x, y)) in &pos {
        if v <= n {
            writeln!(
                out,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="11" fill="white" stroke="black"/>"#
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle" font-family="sans-serif">{v}</text>"#,
                y + 4.0
            )
            .unwrap();
        } else {
            writeln!(
                out,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"><title>v{v}</title></circle>"#
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::layering::{decompose, DecomposeOptions};

    #[test]
    fn planar_layer_draws_without_crossings() {
        let d = decompose(&Graph::complete(7), DecomposeOptions::default()).unwrap();
        let doc = DecompositionDocument::of(&d);
        let pos = layout(&doc.layers[0]);
        assert_eq!(pos.len(), 7);
        let owner = owners(&doc, 1).unwrap();
        assert_eq!(owner.len(), 15);
        assert_eq!(count_crossings(&pos, &owner), 0);
        let svg = render_svg(&doc, 1).unwrap();
        assert_eq!(svg.matches("<line").count(), 15);
        assert!(render_svg(&doc, 99).is_err());
    }

    #[test]
    fn crossing_oracle_sees_an_x() {
        let pos: BTreeMap<VertexId, Point> = [
            (1, (0.0, 0.0)),
            (2, (1.0, 1.0)),
            (3, (0.0, 1.0)),
            (4, (1.0, 0.0)),
        ]
        .into_iter()
        .collect();
        let owner: BTreeMap<Seg, (EdgeId, usize)> =
            [((1, 2), (1, 1)), ((3, 4), (2, 1))].into_iter().collect();
        assert_eq!(count_crossings(&pos, &owner), 1);
    }

    #[test]
    fn elimination_solves_small_system() {
        let x = solve(
            vec![vec![2.0, -1.0], vec![-1.0, 2.0]],
            vec![(1.0, 0.0), (1.0, 3.0)],
        );
        assert!((x[0].0 - 1.0).abs() < 1e-12 && (x[1].0 - 1.0).abs() < 1e-12);
        assert!((x[0].1 - 1.0).abs() < 1e-12 && (x[1].1 - 2.0).abs() < 1e-12);
    }
}
