//! The GKM graph of the `T^d × S^1` action: fixed points are arrangement
//! vertices, compact edges are bounded segments of the arrangement's lines,
//! and rays are the unbounded ends. Every tangent direction at a vertex
//! carries a weight in `Z^d ⊕ Z`.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arrangement::{format_index_set, format_rational, subsets_of_size, Arrangement, Vertex};
use crate::error::{Error, Result};
use crate::exactla::{self, dot_int, int_to_rat, pair, Int, Rat, RatMatrix};

/// A `T^d × S^1` weight `(α, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub td: Vec<Int>,
    pub s1: Int,
}

impl Weight {
    /// The weight as a vector in `Z^{d+1}`, S^1 component last.
    pub fn to_vec(&self) -> Vec<Int> {
        let mut v = self.td.clone();
        v.push(self.s1.clone());
        v
    }

    pub fn pairing(&self, xi: &[Int]) -> Int {
        dot_int(&self.to_vec(), xi)
    }

    pub fn mod2(&self) -> Vec<bool> {
        self.to_vec().iter().map(|x| x.is_odd()).collect()
    }
}

impl std::ops::Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            td: self.td.iter().map(|x| -x).collect(),
            s1: -&self.s1,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let td: Vec<String> = self.td.iter().map(ToString::to_string).collect();
        write!(f, "({}; {})", td.join(","), self.s1)
    }
}

/// An outgoing tangent direction at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    /// The hyperplane of the vertex that the direction leaves.
    pub line_index: usize,
    pub weight: Weight,
    /// The adjacent vertex, or `None` for a ray.
    pub target: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub p: usize,
    pub q: usize,
    /// The hyperplane through `p` but not `q`.
    pub line_index: usize,
    /// Weight on the tangent line at `p` pointing toward `q`.
    pub weight_at_p: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub vertex: usize,
    pub line_index: usize,
    pub weight: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    pub d: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub rays: Vec<Ray>,
    /// Outgoing directions per vertex, 2d each.
    pub directions: Vec<Vec<Direction>>,
}

/// S^1 weight of the direction `td` leaving vertex `v` along the line that
/// drops hyperplane `i0`: `<td, -Σ_{K_v} a_i>`, with `a_{i0}` also
/// subtracted when the direction enters `G_{i0}`.
pub fn s1_weight(a: &Arrangement, v: &Vertex, i0: usize, td: &[Int]) -> Int {
    let mut w = vec![Int::zero(); a.d()];
    for &i in &v.negative {
        for (wj, aj) in w.iter_mut().zip(a.normal(i)) {
            *wj -= aj;
        }
    }
    if dot_int(td, a.normal(i0)).is_negative() {
        for (wj, aj) in w.iter_mut().zip(a.normal(i0)) {
            *wj -= aj;
        }
    }
    dot_int(td, &w)
}

/// Primitive direction along `∩_{j∈I∖{i0}} H_j`, oriented into `F_{i0}`.
fn line_direction(a: &Arrangement, v: &Vertex, i0: usize) -> Result<Vec<Int>> {
    let rows: Vec<Vec<Rat>> = v
        .index_set
        .iter()
        .filter(|&&j| j != i0)
        .map(|&j| int_to_rat(a.normal(j)))
        .collect();
    let m = RatMatrix::from_rows(rows, a.d())?;
    let kernel = exactla::nullspace_basis(&m);
    if kernel.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "line through vertex {} dropping hyperplane {} has dimension {}",
            format_index_set(&v.index_set),
            i0 + 1,
            kernel.len()
        )));
    }
    let mut u = exactla::primitive_from_rat(&kernel[0])?;
    let s = dot_int(&u, a.normal(i0));
    if s.is_zero() {
        return Err(Error::Inconsistent("line direction lies in its own hyperplane".into()));
    }
    if s.is_negative() {
        u.iter_mut().for_each(|x| *x = -x.clone());
    }
    Ok(u)
}

/// Checks the hypotheses every graph construction relies on.
pub fn require_buildable(a: &Arrangement) -> Result<()> {
    let simple = a.validate_simple();
    if let Some(w) = simple.witness {
        return Err(Error::Precondition(format!(
            "arrangement is not simple (witness {})",
            format_index_set(&w)
        )));
    }
    if let Some(w) = a.validate_smooth()?.witness {
        return Err(Error::Precondition(format!(
            "arrangement is not smooth (witness {})",
            format_index_set(&w)
        )));
    }
    if !a.delta_status().nonempty {
        return Err(Error::Precondition("the polytope ∩F_i is empty".into()));
    }
    if a.n() < a.d() || a.d() == 0 {
        return Err(Error::Precondition("the arrangement has no vertices".into()));
    }
    Ok(())
}

pub fn build_graph(a: &Arrangement) -> Result<GkmGraph> {
    require_buildable(a)?;
    let vertices = a.vertices();
    let by_index: HashMap<Vec<usize>, usize> = vertices
        .iter()
        .enumerate()
        .map(|(id, v)| (v.index_set.clone(), id))
        .collect();

    let mut directions = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let mut out = Vec::with_capacity(2 * a.d());
        for &i0 in &v.index_set {
            let u = line_direction(a, v, i0)?;
            for sign in [1i64, -1] {
                let td: Vec<Int> = u.iter().map(|x| x * sign).collect();
                let rtd = int_to_rat(&td);
                // nearest hyperplane crossing in direction td
                let mut best: Option<(Rat, usize)> = None;
                for j in (0..a.n()).filter(|j| !v.index_set.contains(j)) {
                    let slope = dot_int(&td, a.normal(j));
                    if slope.is_zero() {
                        continue;
                    }
                    let t = (a.offset(j) - pair(&v.point, a.normal(j))) / Rat::from_integer(slope);
                    if !t.is_positive() {
                        continue;
                    }
                    match &best {
                        Some((bt, _)) if *bt < t => {}
                        Some((bt, _)) if *bt == t => {
                            return Err(Error::Inconsistent(format!(
                                "two hyperplanes cross the line at the same point (near vertex {})",
                                format_index_set(&v.index_set)
                            )))
                        }
                        _ => best = Some((t, j)),
                    }
                }
                let target = match best {
                    None => None,
                    Some((t, j)) => {
                        let mut idx: Vec<usize> =
                            v.index_set.iter().copied().filter(|&k| k != i0).collect();
                        idx.push(j);
                        idx.sort_unstable();
                        let q = *by_index.get(&idx).ok_or_else(|| {
                            Error::Inconsistent(format!(
                                "segment end {} is not a vertex",
                                format_index_set(&idx)
                            ))
                        })?;
                        let expected: Vec<Rat> = v
                            .point
                            .iter()
                            .zip(&rtd)
                            .map(|(p, u)| p + &t * u)
                            .collect();
                        if vertices[q].point != expected {
                            return Err(Error::Inconsistent("segment endpoint mismatch".into()));
                        }
                        Some(q)
                    }
                };
                let s1 = s1_weight(a, v, i0, &td);
                out.push(Direction {
                    line_index: i0,
                    weight: Weight { td, s1 },
                    target,
                });
            }
        }
        directions.push(out);
    }

    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for (p, dirs) in directions.iter().enumerate() {
        for dir in dirs {
            match dir.target {
                None => rays.push(Ray {
                    vertex: p,
                    line_index: dir.line_index,
                    weight: dir.weight.clone(),
                }),
                Some(q) if q > p => {
                    let back = directions[q]
                        .iter()
                        .find(|d| d.target == Some(p))
                        .ok_or_else(|| {
                            Error::Inconsistent(format!(
                                "edge {}-{} is not seen from its far end",
                                p + 1,
                                q + 1
                            ))
                        })?;
                    if back.weight != -&dir.weight {
                        return Err(Error::Inconsistent(format!(
                            "edge {}-{}: weight {} at p but {} at q",
                            p + 1,
                            q + 1,
                            dir.weight,
                            back.weight
                        )));
                    }
                    edges.push(Edge {
                        p,
                        q,
                        line_index: dir.line_index,
                        weight_at_p: dir.weight.clone(),
                    });
                }
                Some(_) => {}
            }
        }
    }
    edges.sort_by(|x, y| (x.p, x.q).cmp(&(y.p, y.q)));

    Ok(GkmGraph {
        d: a.d(),
        vertices,
        edges,
        rays,
        directions,
    })
}

impl GkmGraph {
    /// Weights of all 2d tangent directions at a vertex.
    pub fn incident_weights(&self, v: usize) -> Vec<Weight> {
        self.directions[v].iter().map(|d| d.weight.clone()).collect()
    }

    pub fn ray_count(&self, v: usize) -> usize {
        self.directions[v].iter().filter(|d| d.target.is_none()).count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.p == v || e.q == v).count()
    }

    /// The weight of the edge read from its `q` end, recomputed with the
    /// region rule at `q` rather than negated.
    pub fn weight_at_q(&self, a: &Arrangement, e: &Edge) -> Result<Weight> {
        let q = &self.vertices[e.q];
        let i0 = q
            .index_set
            .iter()
            .copied()
            .find(|i| !self.vertices[e.p].index_set.contains(i))
            .ok_or_else(|| Error::Inconsistent("edge endpoints share all hyperplanes".into()))?;
        let td: Vec<Int> = e.weight_at_p.td.iter().map(|x| -x).collect();
        let s1 = s1_weight(a, q, i0, &td);
        Ok(Weight { td, s1 })
    }
}

/// Result of comparing the S^1 weight over every region containing an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S1Consistency {
    pub ok: bool,
    /// `(edge position, distinct pairings found)` for each disagreeing edge.
    pub failures: Vec<(usize, Vec<Int>)>,
    /// Number of regions that contain each edge.
    pub regions_per_edge: Vec<usize>,
}

/// For every edge and every region `Δ_A` containing it, evaluates
/// `<α_e, -Σ_{i∈A} a_i>` and checks that all of them agree with the stored
/// S^1 weight.
pub fn s1_weight_well_defined(a: &Arrangement, g: &GkmGraph) -> S1Consistency {
    let n = a.n();
    let all_regions: Vec<Vec<usize>> = (0..=n).flat_map(|k| subsets_of_size(n, k)).collect();
    let mut failures = Vec::new();
    let mut regions_per_edge = Vec::new();
    for (pos, e) in g.edges.iter().enumerate() {
        let p = &g.vertices[e.p].point;
        let q = &g.vertices[e.q].point;
        let two = Rat::from_integer(Int::from(2));
        let mid: Vec<Rat> = p.iter().zip(q).map(|(x, y)| (x + y) / &two).collect();
        let mut seen: Vec<Int> = Vec::new();
        let mut count = 0;
        for region in &all_regions {
            let sys = a.region_system(region);
            if !(sys.contains(p) && sys.contains(q) && sys.contains(&mid)) {
                continue;
            }
            count += 1;
            let mut w = vec![Int::zero(); a.d()];
            for &i in region {
                for (wj, aj) in w.iter_mut().zip(a.normal(i)) {
                    *wj -= aj;
                }
            }
            let s = dot_int(&e.weight_at_p.td, &w);
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        regions_per_edge.push(count);
        if seen.len() != 1 || seen[0] != e.weight_at_p.s1 {
            failures.push((pos, seen));
        }
    }
    S1Consistency {
        ok: failures.is_empty(),
        failures,
        regions_per_edge,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub vertex: usize,
    pub first: Weight,
    pub second: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmReport {
    pub failures: Vec<PairFailure>,
}

impl GkmReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Two weights are relatively prime when the gcd of the 2×2 minors of the
/// matrix with rows `w`, `w'` is one.
pub fn relatively_prime(w: &[Int], w2: &[Int]) -> bool {
    let mut g = Int::zero();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            g = g.gcd(&(&w[i] * &w2[j] - &w[j] * &w2[i]));
        }
    }
    g.is_one()
}

pub fn check_gkm(g: &GkmGraph) -> GkmReport {
    let mut failures = Vec::new();
    for v in 0..g.vertices.len() {
        let ws = g.incident_weights(v);
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                if !relatively_prime(&ws[i].to_vec(), &ws[j].to_vec()) {
                    failures.push(PairFailure {
                        vertex: v,
                        first: ws[i].clone(),
                        second: ws[j].clone(),
                    });
                }
            }
        }
    }
    GkmReport { failures }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mod2Failure {
    Zero { vertex: usize, weight: Weight },
    Coincide { vertex: usize, first: Weight, second: Weight },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod2Report {
    pub failures: Vec<Mod2Failure>,
}

impl Mod2Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Reduced weights at every vertex must be nonzero and pairwise distinct.
pub fn check_mod2_weights(per_vertex: &[Vec<Weight>]) -> Mod2Report {
    let mut failures = Vec::new();
    for (v, ws) in per_vertex.iter().enumerate() {
        let reduced: Vec<Vec<bool>> = ws.iter().map(Weight::mod2).collect();
        for (w, r) in ws.iter().zip(&reduced) {
            if r.iter().all(|b| !b) {
                failures.push(Mod2Failure::Zero {
                    vertex: v,
                    weight: w.clone(),
                });
            }
        }
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                if reduced[i] == reduced[j] {
                    failures.push(Mod2Failure::Coincide {
                        vertex: v,
                        first: ws[i].clone(),
                        second: ws[j].clone(),
                    });
                }
            }
        }
    }
    Mod2Report { failures }
}

pub fn check_mod2_gkm(g: &GkmGraph) -> Mod2Report {
    let per_vertex: Vec<Vec<Weight>> = (0..g.vertices.len()).map(|v| g.incident_weights(v)).collect();
    check_mod2_weights(&per_vertex)
}

/// Checks that `xi` is a generic, ψ-dominant covector: last coordinate
/// positive, nonzero on every tangent weight, with the sign of the S^1
/// component wherever that component is nonzero, and positive on every
/// ray so that the function grows along unbounded directions.
pub fn check_admissible(g: &GkmGraph, xi: &[Int]) -> Result<()> {
    if xi.len() != g.d + 1 {
        return Err(Error::Dimension(format!(
            "xi has {} entries, expected d + 1 = {}",
            xi.len(),
            g.d + 1
        )));
    }
    if !xi[g.d].is_positive() {
        return Err(Error::Precondition("xi: last coordinate must be positive".into()));
    }
    for (v, dirs) in g.directions.iter().enumerate() {
        for d in dirs {
            let p = d.weight.pairing(xi);
            let bad = p.is_zero()
                || (!d.weight.s1.is_zero() && p.signum() != d.weight.s1.signum())
                || (d.target.is_none() && p.is_negative());
            if bad {
                return Err(Error::Precondition(format!(
                    "xi is not admissible: pairing with weight {} at vertex {} is {p}",
                    d.weight,
                    v + 1
                )));
            }
        }
    }
    Ok(())
}

/// Morse index of each fixed point: twice the number of tangent weights
/// pairing negatively with `xi`.
pub fn morse_indices(g: &GkmGraph, xi: &[Int]) -> Result<Vec<usize>> {
    check_admissible(g, xi)?;
    Ok(g.directions
        .iter()
        .map(|dirs| 2 * dirs.iter().filter(|d| d.weight.pairing(xi).is_negative()).count())
        .collect())
}

/// Completes a small perturbation `eta` to an admissible `(eta, N)`, with
/// `N` one more than the largest `|<td, eta>|`. `None` when `eta` vanishes
/// on a weight with zero S^1 component or is negative on such a ray.
pub fn complete_xi(g: &GkmGraph, eta: &[Int]) -> Option<Vec<Int>> {
    let mut big = Int::zero();
    for d in g.directions.iter().flatten() {
        let p = dot_int(&d.weight.td, eta);
        if d.weight.s1.is_zero() && (p.is_zero() || (d.target.is_none() && p.is_negative())) {
            return None;
        }
        big = big.max(p.abs());
    }
    let mut xi = eta.to_vec();
    xi.push(big + Int::one());
    Some(xi)
}

/// `count` distinct admissible covectors, deterministic.
pub fn xi_samples(g: &GkmGraph, count: usize) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = Vec::new();
    let d = g.d;
    for base in 2i64.. {
        for signs in 0u32..(1 << d) {
            let eta: Vec<Int> = (0..d)
                .map(|j| {
                    let m = Int::from(base).pow(j as u32) + Int::from(j as i64 + base - 2);
                    if signs >> j & 1 == 1 {
                        -m
                    } else {
                        m
                    }
                })
                .collect();
            if let Some(xi) = complete_xi(g, &eta) {
                if !out.contains(&xi) {
                    out.push(xi);
                }
            }
            if out.len() == count {
                return out;
            }
        }
        if base > 64 {
            break;
        }
    }
    out
}

pub fn default_xi(g: &GkmGraph) -> Result<Vec<Int>> {
    xi_samples(g, 1)
        .pop()
        .ok_or_else(|| Error::Inconsistent("no admissible xi found".into()))
}

// ---------------------------------------------------------------------------
// export

#[derive(Serialize)]
pub struct WeightJson {
    pub td: Vec<String>,
    pub s1: String,
}

impl From<&Weight> for WeightJson {
    fn from(w: &Weight) -> Self {
        Self {
            td: w.td.iter().map(ToString::to_string).collect(),
            s1: w.s1.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct VertexJson {
    pub id: usize,
    pub index_set: Vec<usize>,
    pub point: Vec<String>,
    #[serde(rename = "I")]
    pub on: Vec<usize>,
    #[serde(rename = "J")]
    pub positive: Vec<usize>,
    #[serde(rename = "K")]
    pub negative: Vec<usize>,
}

#[derive(Serialize)]
pub struct EdgeJson {
    pub p: usize,
    pub q: usize,
    pub line_index: usize,
    pub weight_at_p: WeightJson,
}

#[derive(Serialize)]
pub struct RayJson {
    pub vertex: usize,
    pub line_index: usize,
    pub weight: WeightJson,
}

#[derive(Serialize)]
pub struct GraphJson {
    pub d: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub rays: Vec<RayJson>,
    pub ray_counts: Vec<usize>,
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

impl GkmGraph {
    /// JSON view with 1-based vertex and hyperplane indices.
    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            d: self.d,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexJson {
                    id: id + 1,
                    index_set: one_based(&v.index_set),
                    point: v.point.iter().map(format_rational).collect(),
                    on: one_based(&v.on),
                    positive: one_based(&v.positive),
                    negative: one_based(&v.negative),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    p: e.p + 1,
                    q: e.q + 1,
                    line_index: e.line_index + 1,
                    weight_at_p: (&e.weight_at_p).into(),
                })
                .collect(),
            rays: self
                .rays
                .iter()
                .map(|r| RayJson {
                    vertex: r.vertex + 1,
                    line_index: r.line_index + 1,
                    weight: (&r.weight).into(),
                })
                .collect(),
            ray_counts: (0..self.vertices.len()).map(|v| self.ray_count(v)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("graph serializes")
    }

    pub fn vertex_label(&self, v: usize) -> String {
        let vx = &self.vertices[v];
        let pt: Vec<String> = vx.point.iter().map(format_rational).collect();
        format!("{} ({})", format_index_set(&vx.index_set), pt.join(","))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph gkm {\n");
        for v in 0..self.vertices.len() {
            s.push_str(&format!(
                "  v{} [label=\"{}\\nrays: {}\"];\n",
                v + 1,
                self.vertex_label(v),
                self.ray_count(v)
            ));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "  v{} -- v{} [label=\"{}\"];\n",
                e.p + 1,
                e.q + 1,
                e.weight_at_p
            ));
        }
        s.push_str("}\n");
        s
    }
}
