//! Cooriented rational affine hyperplane arrangements.
//!
//! Hyperplane `i` is `H_i = {x : <x, a_i> = c_i}` with positive half-space
//! `F_i = {<x, a_i> >= c_i}` and negative half-space `G_i = {<x, a_i> <= c_i}`.
//! In terms of a lift `λ` of the level, `c_i = -λ_i`.
//!
//! Indices are 0-based in this module; reports add one.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{
    self, content, int_rank, int_to_rat, pair, Int, IneqSystem, Rat, RatMatrix, Sense,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    d: usize,
    hyperplanes: Vec<Hyperplane>,
    warnings: Vec<String>,
}

/// A vertex of the arrangement together with the position of every
/// hyperplane relative to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// The d-subset whose hyperplanes cut out the vertex.
    pub index_set: Vec<usize>,
    pub point: Vec<Rat>,
    /// Hyperplanes through the point.
    pub on: Vec<usize>,
    /// Hyperplanes whose open positive side contains the point.
    pub positive: Vec<usize>,
    /// Hyperplanes whose open negative side contains the point.
    pub negative: Vec<usize>,
}

impl Vertex {
    pub fn side_of(&self, i: usize) -> Side {
        if self.on.contains(&i) {
            Side::On
        } else if self.positive.contains(&i) {
            Side::Positive
        } else {
            Side::Negative
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    On,
    Positive,
    Negative,
}

/// An inclusion-minimal set of hyperplanes with empty intersection, split
/// so that `(∩_{g_part} G_i) ∩ (∩_{f_part} F_j)` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub support: Vec<usize>,
    /// Indices contributing a factor `u_i`.
    pub g_part: Vec<usize>,
    /// Indices contributing a factor `x - u_j`.
    pub f_part: Vec<usize>,
}

/// Outcome of a combinatorial validation: `witness` is a violating index
/// subset when `ok` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub ok: bool,
    pub witness: Option<Vec<usize>>,
}

impl CheckOutcome {
    fn pass() -> Self {
        Self {
            ok: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<usize>) -> Self {
        Self {
            ok: false,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaStatus {
    pub nonempty: bool,
    /// `None` when the polytope is empty.
    pub bounded: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrangement {
    d: usize,
    hyperplanes: Vec<RawHyperplane>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHyperplane {
    normal: Vec<serde_json::Number>,
    offset: serde_json::Value,
}

#[derive(Serialize)]
struct OutArrangement {
    d: usize,
    hyperplanes: Vec<OutHyperplane>,
}

#[derive(Serialize)]
struct OutHyperplane {
    normal: Vec<serde_json::Value>,
    offset: serde_json::Value,
}

/// Parses `[+-]digits[/digits]`.
pub fn parse_rational(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['+', '-']).unwrap_or(num);
    if !digits(unsigned) {
        return None;
    }
    let n: Int = num.parse().ok()?;
    let d: Int = match den {
        Some(d) if digits(d) => d.parse().ok()?,
        Some(_) => return None,
        None => Int::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn format_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn json_rational(r: &Rat) -> serde_json::Value {
    if r.is_integer() {
        if let Ok(n) = i64::try_from(r.numer()) {
            return serde_json::Value::from(n);
        }
    }
    serde_json::Value::from(format_rational(r))
}

/// 1-based, brace-delimited rendering of an index set, e.g. `{1,2,3}`.
pub fn format_index_set(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Lexicographic k-subsets of `0..n`.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl Arrangement {
    /// Builds an arrangement, replacing each normal by its primitive
    /// representative and rescaling the offset so `H_i` is unchanged.
    pub fn new(d: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if hyperplanes.is_empty() {
            return Err(Error::Parse("arrangement has no hyperplanes".into()));
        }
        let mut warnings = Vec::new();
        let mut normalized = Vec::with_capacity(hyperplanes.len());
        for (i, h) in hyperplanes.into_iter().enumerate() {
            if h.normal.len() != d {
                return Err(Error::Dimension(format!(
                    "hyperplanes[{i}].normal has length {}, expected d = {d}",
                    h.normal.len()
                )));
            }
            let g = content(&h.normal);
            if g.is_zero() {
                return Err(Error::Parse(format!("hyperplanes[{i}].normal is zero")));
            }
            if g.is_one() {
                normalized.push(h);
            } else {
                warnings.push(format!(
                    "hyperplane {}: normal divided by {g} to make it primitive",
                    i + 1
                ));
                normalized.push(Hyperplane {
                    normal: h.normal.iter().map(|x| x / &g).collect(),
                    offset: h.offset / Rat::from_integer(g),
                });
            }
        }
        if normalized.len() < d {
            warnings.push(format!(
                "n = {} < d = {d}: the arrangement has no vertices",
                normalized.len()
            ));
        }
        Ok(Self {
            d,
            hyperplanes: normalized,
            warnings,
        })
    }

    /// Convenience constructor for integer data.
    pub fn from_i64(d: usize, data: &[(&[i64], i64)]) -> Result<Self> {
        Self::new(
            d,
            data.iter()
                .map(|(normal, offset)| Hyperplane {
                    normal: normal.iter().map(|&x| Int::from(x)).collect(),
                    offset: Rat::from_integer(Int::from(*offset)),
                })
                .collect(),
        )
    }

    /// Parses the JSON arrangement format
    /// `{"d": int, "hyperplanes": [{"normal": [int, ...], "offset": "p/q" | int}, ...]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawArrangement = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        let mut hyperplanes = Vec::with_capacity(raw.hyperplanes.len());
        for (i, h) in raw.hyperplanes.into_iter().enumerate() {
            let normal = h
                .normal
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    x.to_string().parse::<Int>().map_err(|_| {
                        Error::Parse(format!(
                            "hyperplanes[{i}].normal[{j}]: expected an integer, found {x}"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let offset = match &h.offset {
                serde_json::Value::Number(x) => parse_rational(&x.to_string()),
                serde_json::Value::String(s) => parse_rational(s.trim()),
                _ => None,
            }
            .ok_or_else(|| {
                Error::Parse(format!(
                    "hyperplanes[{i}].offset: expected an integer or a \"p/q\" string, found {}",
                    h.offset
                ))
            })?;
            hyperplanes.push(Hyperplane { normal, offset });
        }
        Self::new(raw.d, hyperplanes)
    }

    pub fn to_json(&self) -> String {
        let out = OutArrangement {
            d: self.d,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| OutHyperplane {
                    normal: h
                        .normal
                        .iter()
                        .map(|x| json_rational(&Rat::from_integer(x.clone())))
                        .collect(),
                    offset: json_rational(&h.offset),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&out).expect("arrangement serializes")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn normal(&self, i: usize) -> &[Int] {
        &self.hyperplanes[i].normal
    }

    pub fn offset(&self, i: usize) -> &Rat {
        &self.hyperplanes[i].offset
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Replaces the offset of hyperplane `i`.
    pub fn with_offset(&self, i: usize, offset: Rat) -> Self {
        let mut out = self.clone();
        out.hyperplanes[i].offset = offset;
        out
    }

    fn normals_of(&self, subset: &[usize]) -> Vec<Vec<Int>> {
        subset.iter().map(|&i| self.normal(i).to_vec()).collect()
    }

    /// A point of `∩_{i∈subset} H_i`, if the intersection is nonempty.
    pub fn intersection_point(&self, subset: &[usize]) -> Option<Vec<Rat>> {
        if subset.is_empty() {
            return Some(vec![Rat::zero(); self.d]);
        }
        let m = RatMatrix::from_int_rows(&self.normals_of(subset), self.d)
            .expect("normals have length d");
        let b: Vec<Rat> = subset.iter().map(|&i| self.offset(i).clone()).collect();
        exactla::solve(&m, &b)
    }

    pub fn side(&self, i: usize, x: &[Rat]) -> Side {
        let v = pair(x, self.normal(i));
        match v.cmp(self.offset(i)) {
            std::cmp::Ordering::Equal => Side::On,
            std::cmp::Ordering::Greater => Side::Positive,
            std::cmp::Ordering::Less => Side::Negative,
        }
    }

    /// `Δ_A = (∩_{i∉A} F_i) ∩ (∩_{i∈A} G_i)`.
    pub fn region_system(&self, negative: &[usize]) -> IneqSystem {
        let mut sys = IneqSystem::new(self.d);
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let sense = if negative.contains(&i) {
                Sense::Le
            } else {
                Sense::Ge
            };
            sys.push(int_to_rat(&h.normal), sense, h.offset.clone())
                .expect("normals have length d");
        }
        sys
    }

    /// `(∩_{i∈g_part} G_i) ∩ (∩_{j∈f_part} F_j)`.
    pub fn mixed_system(&self, g_part: &[usize], f_part: &[usize]) -> IneqSystem {
        let mut sys = IneqSystem::new(self.d);
        for (&i, sense) in g_part
            .iter()
            .map(|i| (i, Sense::Le))
            .chain(f_part.iter().map(|i| (i, Sense::Ge)))
        {
            sys.push(int_to_rat(self.normal(i)), sense, self.offset(i).clone())
                .expect("normals have length d");
        }
        sys
    }

    /// Every m hyperplanes that meet do so in codimension m.
    pub fn validate_simple(&self) -> CheckOutcome {
        for size in 2..=self.n() {
            for subset in subsets_of_size(self.n(), size) {
                if self.intersection_point(&subset).is_some()
                    && int_rank(&self.normals_of(&subset), self.d) != subset.len()
                {
                    return CheckOutcome::fail(subset);
                }
            }
        }
        CheckOutcome::pass()
    }

    /// Normals at every vertex form a lattice basis. Requires simplicity.
    pub fn validate_smooth(&self) -> Result<CheckOutcome> {
        self.require_simple()?;
        for subset in subsets_of_size(self.n(), self.d) {
            if self.intersection_point(&subset).is_none() {
                continue;
            }
            let rows = self.normals_of(&subset);
            if int_rank(&rows, self.d) == self.d && !exactla::is_unimodular(&rows) {
                return Ok(CheckOutcome::fail(subset));
            }
        }
        Ok(CheckOutcome::pass())
    }

    fn require_simple(&self) -> Result<()> {
        let s = self.validate_simple();
        match s.witness {
            None => Ok(()),
            Some(w) => Err(Error::Precondition(format!(
                "arrangement is not simple (witness {})",
                format_index_set(&w)
            ))),
        }
    }

    pub fn delta_system(&self) -> IneqSystem {
        self.region_system(&[])
    }

    pub fn delta_status(&self) -> DeltaStatus {
        let sys = self.delta_system();
        if !exactla::feasible(&sys) {
            return DeltaStatus {
                nonempty: false,
                bounded: None,
            };
        }
        DeltaStatus {
            nonempty: true,
            bounded: Some(exactla::bounded(&sys).expect("feasible")),
        }
    }

    /// One vertex per d-subset whose hyperplanes meet in a single point,
    /// in lexicographic order of the subset.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        if self.d == 0 {
            return out;
        }
        for subset in subsets_of_size(self.n(), self.d) {
            if int_rank(&self.normals_of(&subset), self.d) != self.d {
                continue;
            }
            let Some(point) = self.intersection_point(&subset) else {
                continue;
            };
            let (mut on, mut positive, mut negative) = (Vec::new(), Vec::new(), Vec::new());
            for j in 0..self.n() {
                match self.side(j, &point) {
                    Side::On => on.push(j),
                    Side::Positive => positive.push(j),
                    Side::Negative => negative.push(j),
                }
            }
            out.push(Vertex {
                index_set: subset,
                point,
                on,
                positive,
                negative,
            });
        }
        out
    }

    /// All circuits with their splittings, ordered by size and then
    /// lexicographically. The splitting found by exhaustive feasibility is
    /// cross-checked against the sign pattern of the linear dependency.
    pub fn circuits(&self) -> Result<Vec<Circuit>> {
        self.require_simple()?;
        let mut nonempty: HashMap<Vec<usize>, bool> = HashMap::new();
        let mut meets = |s: &[usize]| -> bool {
            *nonempty
                .entry(s.to_vec())
                .or_insert_with(|| self.intersection_point(s).is_some())
        };
        let mut out = Vec::new();
        for size in 2..=self.n() {
            for subset in subsets_of_size(self.n(), size) {
                if meets(&subset) {
                    continue;
                }
                let minimal = (0..size).all(|skip| {
                    let smaller: Vec<usize> = subset
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &i)| i)
                        .collect();
                    meets(&smaller)
                });
                if !minimal {
                    continue;
                }
                let (g_part, f_part) = self.splitting_by_feasibility(&subset)?;
                let (g_dep, f_dep) = self.splitting_by_dependency(&subset)?;
                if g_part != g_dep || f_part != f_dep {
                    return Err(Error::Inconsistent(format!(
                        "circuit {}: feasibility splitting ({}, {}) disagrees with dependency splitting ({}, {})",
                        format_index_set(&subset),
                        format_index_set(&g_part),
                        format_index_set(&f_part),
                        format_index_set(&g_dep),
                        format_index_set(&f_dep)
                    )));
                }
                out.push(Circuit {
                    support: subset,
                    g_part,
                    f_part,
                });
            }
        }
        Ok(out)
    }

    /// Tries all `2^|S|` ways of assigning `G` or `F` to the members of the
    /// circuit and insists that exactly one gives an empty intersection.
    pub fn splitting_by_feasibility(&self, support: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut empties = Vec::new();
        for mask in 0u64..(1u64 << support.len()) {
            let (g, f): (Vec<usize>, Vec<usize>) = {
                let mut g = Vec::new();
                let mut f = Vec::new();
                for (k, &i) in support.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        g.push(i);
                    } else {
                        f.push(i);
                    }
                }
                (g, f)
            };
            if !exactla::feasible(&self.mixed_system(&g, &f)) {
                empties.push((g, f));
            }
        }
        if empties.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "circuit {} has {} empty splittings, expected exactly one",
                format_index_set(support),
                empties.len()
            )));
        }
        Ok(empties.pop().expect("one element"))
    }

    /// Reads the splitting off the dependency `Σ κ_i a_i = 0`, signed so
    /// that `Σ κ_i c_i < 0`: then `κ_i > 0` marks `G_i` and `κ_i < 0`
    /// marks `F_i`.
    pub fn splitting_by_dependency(&self, support: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let cols: Vec<Vec<Int>> = self.normals_of(support);
        let beta = RatMatrix::from_rows(
            (0..self.d)
                .map(|r| cols.iter().map(|c| Rat::from_integer(c[r].clone())).collect())
                .collect(),
            support.len(),
        )?;
        let kernel = exactla::nullspace_basis(&beta);
        if kernel.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "circuit {} has a {}-dimensional dependency space",
                format_index_set(support),
                kernel.len()
            )));
        }
        let mut kappa = kernel.into_iter().next().expect("one vector");
        let level: Rat = kappa
            .iter()
            .zip(support)
            .fold(Rat::zero(), |acc, (k, &i)| acc + k * self.offset(i));
        if level.is_zero() {
            return Err(Error::Inconsistent(format!(
                "hyperplanes {} meet although they were classified as a circuit",
                format_index_set(support)
            )));
        }
        if level.is_positive() {
            kappa.iter_mut().for_each(|k| *k = -k.clone());
        }
        let mut g = Vec::new();
        let mut f = Vec::new();
        for (k, &i) in kappa.iter().zip(support) {
            if k.is_positive() {
                g.push(i);
            } else if k.is_negative() {
                f.push(i);
            } else {
                return Err(Error::Inconsistent(format!(
                    "dependency of circuit {} vanishes on hyperplane {}",
                    format_index_set(support),
                    i + 1
                )));
            }
        }
        Ok((g, f))
    }

    /// Basis of `ker β` where `β(ε_i) = a_i`.
    pub fn beta_kernel(&self) -> Result<Vec<Vec<Rat>>> {
        let beta = RatMatrix::from_rows(
            (0..self.d)
                .map(|r| {
                    self.hyperplanes
                        .iter()
                        .map(|h| Rat::from_integer(h.normal[r].clone()))
                        .collect()
                })
                .collect(),
            self.n(),
        )?;
        if exactla::rank(&beta) != self.d {
            return Err(Error::Precondition(
                "the normals do not span Q^d, so β is not surjective".into(),
            ));
        }
        Ok(exactla::nullspace_basis(&beta))
    }
}
