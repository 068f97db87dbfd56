//! Flash decomposition of variant-B modules.
//!
//! Pick a complement `T` of the socle `S` in every degree. Both actions
//! send `T` into `S` and kill `S`, so the module is the same thing as the
//! pair of graded maps `e1, e2 : T -> S`. Bottoms in degree `r + i·gap`
//! and tops in degree `r + i·gap + |e2|` form one line
//!
//! ```text
//! S_{i-1} <-e1- T_i -e2-> S_i <-e1- T_{i+1} -e2-> ...
//! ```
//!
//! and distinct residues `r` never interact. Each line is a zigzag whose
//! indecomposable pieces are intervals; an interval containing `b` bottoms
//! is exactly the flash with `b` bottoms and end tops where the interval
//! ends on an `S` vertex.
//!
//! Intervals are found left to right. Every live interval owns one vector
//! per vertex it covers, and the live vectors at the current vertex form a
//! basis there. Crossing an edge may require replacing an interval `J` by
//! `J + c·I`; that keeps a valid decomposition when `I` is at most as old
//! as `J` and `J` was born across a forward edge, or when `I` is younger
//! and was itself born across a backward edge. Both cases are captured by
//! the ordering in [`Chain::key`], and elimination only ever adds
//! lower-keyed intervals into higher-keyed ones.

use std::collections::BTreeMap;

use super::Summand;
use crate::field::{Elem, Field};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::module::{FlashShape, Generator, Module};
use crate::operators::socle;

struct Vertex {
    degree: i64,
    is_top: bool,
    /// Columns: the vertex basis written in the module's degree-`degree` coordinates.
    embed: Matrix,
}

impl Vertex {
    fn dim(&self) -> usize {
        self.embed.cols()
    }
}

enum Edge {
    /// Map from vertex `k - 1` to vertex `k`.
    Forward(Matrix),
    /// Map from vertex `k` to vertex `k - 1`.
    Backward(Matrix),
}

struct Chain {
    birth: usize,
    backward_born: bool,
    vecs: Vec<Vec<Elem>>,
    end: Option<usize>,
}

impl Chain {
    fn key(&self) -> (u8, i64) {
        if self.backward_born {
            (0, -(self.birth as i64))
        } else {
            (1, self.birth as i64)
        }
    }

    fn at(&self, vertex: usize) -> &Vec<Elem> {
        &self.vecs[vertex - self.birth]
    }
}

fn leading(f: Field, v: &[Elem]) -> Option<usize> {
    v.iter().position(|e| !f.is_zero(e))
}

fn axpy(f: Field, y: &mut [Elem], c: &Elem, x: &[Elem]) {
    for (a, b) in y.iter_mut().zip(x) {
        *a = f.add(a, &f.mul(c, b));
    }
}

/// `chains[j] += c · chains[i]` on the vertices both cover, up to `upto`.
fn absorb(f: Field, chains: &mut [Chain], j: usize, i: usize, c: &Elem, upto: usize) {
    let from = chains[i].birth.max(chains[j].birth);
    let src: Vec<Vec<Elem>> = (from..=upto).map(|v| chains[i].at(v).clone()).collect();
    let bj = chains[j].birth;
    for (off, x) in src.iter().enumerate() {
        axpy(f, &mut chains[j].vecs[from + off - bj], c, x);
    }
}

/// Reduces `u` against the pivot table, mirroring every step on the chains.
/// Returns `true` when `u` reduces to zero; otherwise registers it as a new pivot.
fn eliminate(
    f: Field,
    chains: &mut [Chain],
    j: usize,
    mut u: Vec<Elem>,
    pivots: &mut BTreeMap<usize, (Vec<Elem>, usize)>,
    upto: usize,
) -> (bool, Vec<Elem>) {
    while let Some(p) = leading(f, &u) {
        match pivots.get(&p) {
            Some((ui, i)) => {
                let c = f.neg(&f.div(&u[p], &ui[p]).expect("pivot entry is nonzero"));
                axpy(f, &mut u, &c, ui);
                let i = *i;
                absorb(f, chains, j, i, &c, upto);
            }
            None => {
                pivots.insert(p, (u.clone(), j));
                return (false, u);
            }
        }
    }
    (true, u)
}

fn unit(f: Field, n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// Interval decomposition of one zigzag line; every returned chain is closed.
fn decompose_line(f: Field, vertices: &[Vertex], edges: &[Edge]) -> Vec<Chain> {
    let mut chains: Vec<Chain> = (0..vertices[0].dim())
        .map(|i| Chain { birth: 0, backward_born: false, vecs: vec![unit(f, vertices[0].dim(), i)], end: None })
        .collect();
    for k in 1..vertices.len() {
        let mut alive: Vec<usize> = (0..chains.len()).filter(|&c| chains[c].end.is_none()).collect();
        alive.sort_by_key(|&c| (chains[c].key(), c));
        let mut pivots = BTreeMap::new();
        match &edges[k - 1] {
            Edge::Forward(map) => {
                let mut continuing = Vec::new();
                for &j in &alive {
                    let u = map.mul_vec(chains[j].at(k - 1));
                    let (dies, reduced) = eliminate(f, &mut chains, j, u, &mut pivots, k - 1);
                    if dies {
                        chains[j].end = Some(k - 1);
                    } else {
                        continuing.push((j, reduced));
                    }
                }
                for (j, image) in continuing {
                    chains[j].vecs.push(image);
                }
                let taken = Subspace::span(f, vertices[k].dim(), &pivots.values().map(|(u, _)| u.clone()).collect::<Vec<_>>());
                for i in taken.complement_indices() {
                    chains.push(Chain { birth: k, backward_born: false, vecs: vec![unit(f, vertices[k].dim(), i)], end: None });
                }
            }
            Edge::Backward(map) => {
                let quotient = Subspace::column_span(map).annihilator();
                for &j in &alive {
                    let q = quotient.mul_vec(chains[j].at(k - 1));
                    let (lands_in_image, _) = eliminate(f, &mut chains, j, q, &mut pivots, k - 1);
                    if !lands_in_image {
                        chains[j].end = Some(k - 1);
                    }
                }
                for &j in &alive {
                    if chains[j].end.is_none() {
                        let x = map.solve(chains[j].at(k - 1)).expect("vector lies in the image");
                        chains[j].vecs.push(x);
                    }
                }
                for v in kernel(map).vectors() {
                    chains.push(Chain { birth: k, backward_born: true, vecs: vec![v], end: None });
                }
            }
        }
    }
    let last = vertices.len() - 1;
    for c in chains.iter_mut().filter(|c| c.end.is_none()) {
        c.end = Some(last);
    }
    chains
}

fn to_summand(vertices: &[Vertex], chain: &Chain) -> Summand {
    let end = chain.end.expect("closed chain");
    let span = chain.birth..=end;
    let embedded = |v: usize| (vertices[v].degree, vertices[v].embed.mul_vec(chain.at(v)));
    let bottoms: Vec<usize> = span.clone().filter(|&v| !vertices[v].is_top).collect();
    let tops: Vec<usize> = span.clone().filter(|&v| vertices[v].is_top).collect();
    if bottoms.is_empty() {
        let (d, v) = embedded(chain.birth);
        return Summand { shape: FlashShape::simple(d), vectors: vec![(d, v)] };
    }
    let shape = FlashShape::finite(
        bottoms.len(),
        vertices[chain.birth].is_top,
        vertices[end].is_top,
        vertices[bottoms[0]].degree,
    );
    let vectors = bottoms.iter().chain(tops.iter()).map(|&v| embedded(v)).collect();
    Summand { shape, vectors }
}

/// Decomposes a valid variant-B module into flashes with explicit bases.
pub(crate) fn decompose_b(m: &Module) -> Vec<Summand> {
    let p = m.params();
    let f = p.field();
    let (d1, d2, gap) = (p.deg_e1(), p.deg_e2(), p.gap());
    let soc = socle(m);
    let soc_part = |d: i64| soc.part(d);
    let top_embed = |d: i64| {
        let n = m.dim(d);
        let cols: Vec<Vec<Elem>> = soc_part(d).complement_indices().into_iter().map(|i| unit(f, n, i)).collect();
        Matrix::from_columns(f, n, &cols)
    };
    let soc_embed = |d: i64| {
        let s = soc_part(d);
        if s.ambient() == m.dim(d) { s.basis().clone() } else { Matrix::zeros(f, m.dim(d), 0) }
    };

    // line residue -> (min index, max index)
    let mut lines: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
    let mut note = |r: i64, i: i64| {
        let e = lines.entry(r).or_insert((i, i));
        e.0 = e.0.min(i);
        e.1 = e.1.max(i);
    };
    for (d, n) in m.dims().iter() {
        let s = soc_part(d).dim();
        if s < n {
            note(d.rem_euclid(gap), d.div_euclid(gap));
        }
        if s > 0 {
            note((d - d2).rem_euclid(gap), (d - d2).div_euclid(gap));
        }
    }

    let mut out = Vec::new();
    for (r, (lo, hi)) in lines {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let top_degree = |i: i64| r + i * gap + d2;
        vertices.push(Vertex { degree: top_degree(lo - 1), is_top: true, embed: soc_embed(top_degree(lo - 1)) });
        for i in lo..=hi {
            let bd = r + i * gap;
            let bottom = Vertex { degree: bd, is_top: false, embed: top_embed(bd) };
            let right = Vertex { degree: top_degree(i), is_top: true, embed: soc_embed(top_degree(i)) };
            let left_dim = vertices.last().map_or(0, Vertex::dim);
            let coords = |g: Generator, target: &Subspace, target_dim: usize| {
                let images = m.action_or_zero(g, bd).mul(&bottom.embed);
                let cols: Vec<Vec<Elem>> = images
                    .columns()
                    .iter()
                    .map(|v| if target_dim == 0 { Vec::new() } else { target.coordinates(v).expect("actions land in the socle") })
                    .collect();
                Matrix::from_columns(f, target_dim, &cols)
            };
            debug_assert_eq!(bd + d1, top_degree(i - 1));
            edges.push(Edge::Backward(coords(Generator::E1, &soc_part(bd + d1), left_dim)));
            edges.push(Edge::Forward(coords(Generator::E2, &soc_part(bd + d2), right.dim())));
            vertices.push(bottom);
            vertices.push(right);
        }
        for chain in decompose_line(f, &vertices, &edges) {
            out.push(to_summand(&vertices, &chain));
        }
    }
    out.sort_by_key(|s| (s.shape.shift, s.shape.kind));
    out
}
