//! Zero-level curves of the secular residual in the `(s, t)` plane.
//!
//! Marching squares on a regular grid gives the topology; every vertex is
//! then refined by bisection along its grid edge, so vertices lie on the
//! curve to working precision and only the chords between them are linear.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::reduced_residual;
use crate::roots::bisect;
use crate::well::WellConfig;

/// A curve vertex in both plane coordinates: `(s, t)` and the hyperbolic
/// pair `(u, k) = (ts, sqrt(t² - s²))`, in which `2st = g` is the line `u = g/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OvalPoint {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub k: f64,
}

impl OvalPoint {
    pub fn new(s: f64, t: f64) -> Self {
        Self {
            s,
            t,
            u: t * s,
            k: ((t - s) * (t + s)).max(0.0).sqrt(),
        }
    }

    pub fn energy(&self) -> f64 {
        self.k * self.k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OvalOptions {
    pub s_cells: usize,
    pub t_cells: usize,
}

impl Default for OvalOptions {
    fn default() -> Self {
        Self {
            s_cells: 600,
            t_cells: 600,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    /// `(i, j) – (i+1, j)`
    AlongS(usize, usize),
    /// `(i, j) – (i, j+1)`
    AlongT(usize, usize),
}

struct Grid<'a> {
    cfg: &'a WellConfig,
    ds: f64,
    dt: f64,
    ns: usize,
    nt: usize,
    values: Vec<f64>,
}

impl Grid<'_> {
    fn s(&self, i: usize) -> f64 {
        self.ds * i as f64
    }

    fn t(&self, j: usize) -> f64 {
        self.dt * (j + 1) as f64
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.ns + 1) + i]
    }

    fn endpoints(&self, e: Edge) -> ((f64, f64), (f64, f64)) {
        match e {
            Edge::AlongS(i, j) => ((self.s(i), self.t(j)), (self.s(i + 1), self.t(j))),
            Edge::AlongT(i, j) => ((self.s(i), self.t(j)), (self.s(i), self.t(j + 1))),
        }
    }

    fn crossing(&self, e: Edge) -> (f64, f64) {
        let ((s0, t0), (s1, t1)) = self.endpoints(e);
        let f = |lambda: f64| {
            let s = s0 + lambda * (s1 - s0);
            let t = t0 + lambda * (t1 - t0);
            field(self.cfg, s, t)
        };
        let lambda = bisect(f, 0.0, 1.0, 1e-13, 80).unwrap_or(0.5);
        (s0 + lambda * (s1 - s0), t0 + lambda * (t1 - t0))
    }
}

fn field(cfg: &WellConfig, s: f64, t: f64) -> f64 {
    let mut t = t;
    let mut q = (t - s) * (t + s);
    if q.abs() < 1e-12 * (s * s + t * t) {
        t *= 1.0 + 1e-7;
        q = (t - s) * (t + s);
    }
    reduced_residual(cfg, s, t, q)
}

fn positive(v: f64) -> bool {
    v >= 0.0
}

/// Zero curves of the secular residual on `0 <= s <= s_max`, `0 < t <= t_max`,
/// restricted to `t >= s`, as ordered polylines.
///
/// Each polyline starts at its endpoint of smaller `t`; the list is sorted by
/// that starting vertex. Only `L` and `l` of `cfg` are used.
pub fn trace_semi_ovals(cfg: &WellConfig, s_max: f64, t_max: f64, opts: &OvalOptions) -> Vec<Vec<OvalPoint>> {
    if !(s_max > 0.0 && t_max > 0.0) || opts.s_cells == 0 || opts.t_cells < 2 {
        return Vec::new();
    }
    let ns = opts.s_cells;
    let nt = opts.t_cells - 1;
    let ds = s_max / ns as f64;
    let dt = t_max / opts.t_cells as f64;
    let values: Vec<f64> = (0..=nt)
        .into_par_iter()
        .flat_map_iter(|j| {
            let t = dt * (j + 1) as f64;
            (0..=ns).map(move |i| field(cfg, ds * i as f64, t))
        })
        .collect();
    let grid = Grid {
        cfg,
        ds,
        dt,
        ns,
        nt,
        values,
    };

    let mut links: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    let mut connect = |a: Edge, b: Edge| {
        links.entry(a).or_default().push(b);
        links.entry(b).or_default().push(a);
    };
    for j in 0..grid.nt {
        for i in 0..grid.ns {
            let c = [
                grid.value(i, j),
                grid.value(i + 1, j),
                grid.value(i + 1, j + 1),
                grid.value(i, j + 1),
            ];
            let edges = [
                Edge::AlongS(i, j),
                Edge::AlongT(i + 1, j),
                Edge::AlongS(i, j + 1),
                Edge::AlongT(i, j),
            ];
            let cut: Vec<usize> = (0..4).filter(|&e| positive(c[e]) != positive(c[(e + 1) % 4])).collect();
            match cut.len() {
                2 => connect(edges[cut[0]], edges[cut[1]]),
                4 => {
                    let center = 0.25 * (c[0] + c[1] + c[2] + c[3]);
                    if positive(center) == positive(c[0]) {
                        connect(edges[0], edges[1]);
                        connect(edges[2], edges[3]);
                    } else {
                        connect(edges[3], edges[0]);
                        connect(edges[1], edges[2]);
                    }
                }
                _ => {}
            }
        }
    }

    let chains = link_chains(&links);
    let mut polylines = Vec::new();
    for chain in chains {
        let mut current: Vec<OvalPoint> = Vec::new();
        for e in chain {
            let (s, t) = grid.crossing(e);
            if t >= s {
                current.push(OvalPoint::new(s, t));
            } else if current.len() >= 2 {
                polylines.push(std::mem::take(&mut current));
            } else {
                current.clear();
            }
        }
        if current.len() >= 2 {
            polylines.push(current);
        }
    }
    for p in &mut polylines {
        if p.first().map(|v| v.t) > p.last().map(|v| v.t) {
            p.reverse();
        }
    }
    polylines.sort_by(|a, b| a[0].t.total_cmp(&b[0].t).then(a[0].s.total_cmp(&b[0].s)));
    polylines
}

/// Walk the edge adjacency graph into chains: open chains first (starting
/// at degree-one edges), then closed loops with the first edge repeated.
fn link_chains(links: &BTreeMap<Edge, Vec<Edge>>) -> Vec<Vec<Edge>> {
    let mut visited: BTreeSet<Edge> = BTreeSet::new();
    let mut chains = Vec::new();
    let walk = |start: Edge, visited: &mut BTreeSet<Edge>| {
        let mut chain = vec![start];
        visited.insert(start);
        let mut cur = start;
        loop {
            let next = links[&cur].iter().copied().find(|n| !visited.contains(n));
            match next {
                Some(n) => {
                    visited.insert(n);
                    chain.push(n);
                    cur = n;
                }
                None => break,
            }
        }
        chain
    };
    for (&e, nb) in links {
        if nb.len() == 1 && !visited.contains(&e) {
            chains.push(walk(e, &mut visited));
        }
    }
    for &e in links.keys() {
        if !visited.contains(&e) {
            let mut chain = walk(e, &mut visited);
            chain.push(e);
            chains.push(chain);
        }
    }
    chains
}

/// Points where the polylines cross the hyperbola `2st = g`, by linear
/// interpolation along each chord, ascending in `k`.
pub fn hyperbola_intersections(polylines: &[Vec<OvalPoint>], coupling: f64) -> Vec<OvalPoint> {
    let mut out = Vec::new();
    for line in polylines {
        for w in line.windows(2) {
            let ha = 2.0 * w[0].u - coupling;
            let hb = 2.0 * w[1].u - coupling;
            if ha == 0.0 {
                out.push(w[0]);
            } else if ha * hb < 0.0 {
                let lambda = ha / (ha - hb);
                let s = w[0].s + lambda * (w[1].s - w[0].s);
                let t = w[0].t + lambda * (w[1].t - w[0].t);
                out.push(OvalPoint::new(s, t));
            }
        }
        if let Some(last) = line.last() {
            if 2.0 * last.u - coupling == 0.0 {
                out.push(*last);
            }
        }
    }
    out.sort_by(|a, b| a.k.total_cmp(&b.k));
    out
}
