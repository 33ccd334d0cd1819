//! Degree-by-degree comparison of graph cohomology with the circuit-ideal
//! quotient, plus the mod-2 and Morse-index cross-checks.

use std::fmt;

use serde::Serialize;

use crate::arrangement::{format_index_set, Arrangement};
use crate::error::Result;
use crate::exactla::{rank_over, Field, Gf2, Int, Rat, Ring};
use crate::gkmgraph::{self, GkmGraph, Weight};

use super::classes::{
    evaluate_at_rho, is_gkm_class, is_mod2_gkm_class, mod2_classes, point_ring_names, rho_generators,
    weight_form, GkmClass,
};
use super::graph_cohomology::{class_vector, constraint_rows, graph_cohomology_dim, Coefficients};
use super::ideal::{presentation_ideal, quotient_hilbert, quotient_hilbert_mod2, IdealPresentation};
use super::poly::{monomials, MultiPoly};

/// Sign of the circle component of `ρ_i` at vertices on `H_i`. With `-1`
/// the value of `ρ_i` there is the weight of the edge leaving `H_i`
/// into its positive side.
pub const RHO_SIGN: i64 = -1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub k: u32,
    pub dim_graph: usize,
    pub dim_quotient: usize,
    pub dim_image: usize,
    pub relations_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub sign: i64,
    pub degrees: Vec<DegreeRow>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Counterexample {
    NotGkmClass {
        generator: usize,
        p: usize,
        q: usize,
        weight: Weight,
        difference: String,
    },
    RelationFails {
        generator: String,
        support: Vec<usize>,
        vertex: Vec<usize>,
        value: String,
    },
    ImageOutsideGraph {
        k: u32,
        monomial: String,
    },
    DimensionMismatch {
        k: u32,
        dim_graph: usize,
        dim_quotient: usize,
        dim_image: usize,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::NotGkmClass {
                generator,
                p,
                q,
                weight,
                difference,
            } => write!(
                f,
                "rho_{} violates the congruence on edge {}-{} (weight {}): difference {}",
                generator + 1,
                p + 1,
                q + 1,
                weight,
                difference
            ),
            Counterexample::RelationFails {
                generator,
                support,
                vertex,
                value,
            } => write!(
                f,
                "relation {} (circuit {}) does not vanish at vertex {}: value {}",
                generator,
                format_index_set(support),
                format_index_set(vertex),
                value
            ),
            Counterexample::ImageOutsideGraph { k, monomial } => {
                write!(f, "degree {k}: image of {monomial} is not a graph class")
            }
            Counterexample::DimensionMismatch {
                k,
                dim_graph,
                dim_quotient,
                dim_image,
            } => write!(
                f,
                "degree {k}: graph {dim_graph}, quotient {dim_quotient}, image {dim_image}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsomorphismCheck {
    pub certificate: Certificate,
    pub counterexamples: Vec<Counterexample>,
}

fn gkm_violations(rhos: &[GkmClass<Int>], g: &GkmGraph) -> Vec<Counterexample> {
    rhos.iter()
        .enumerate()
        .filter_map(|(i, r)| {
            is_gkm_class(r, g).err().map(|v| Counterexample::NotGkmClass {
                generator: i,
                p: v.p,
                q: v.q,
                weight: v.weight,
                difference: v.difference,
            })
        })
        .collect()
}

/// Relations that fail, with the first vertex where each is nonzero.
fn relation_failures<R: Ring>(
    ideal: &IdealPresentation,
    rhos: &[GkmClass<R>],
    g: &GkmGraph,
) -> Vec<(usize, Counterexample)> {
    let names = point_ring_names(g.d);
    let mut out = Vec::new();
    for (gi, gen) in ideal.generators.iter().enumerate() {
        let poly: MultiPoly<R> = gen.poly.map_coeffs(R::from_int);
        let value = evaluate_at_rho(&poly, rhos, g);
        if let Some(v) = value.values.iter().position(|p| !p.is_zero()) {
            out.push((
                gi,
                Counterexample::RelationFails {
                    generator: gen.factored(),
                    support: gen.circuit.support.clone(),
                    vertex: g.vertices[v].index_set.clone(),
                    value: value.values[v].display_with(&names),
                },
            ));
        }
    }
    out
}

/// Rank of the span of all degree-`k` monomials in `u, x` evaluated at
/// the generators, and the first monomial whose image breaks a congruence.
fn image_rank<F: Field>(
    rhos: &[GkmClass<F>],
    g: &GkmGraph,
    k: u32,
    form: impl Fn(&Weight) -> MultiPoly<F>,
) -> (usize, Option<String>) {
    let nv = rhos.len() + 1;
    let basis = monomials(g.d + 1, k);
    let cols = g.vertices.len() * basis.len();
    let constraints = constraint_rows(g, k, form);
    let names = super::ideal::presentation_names(rhos.len());
    let mut vectors = Vec::new();
    let mut outside = None;
    for m in monomials(nv, k) {
        let p = MultiPoly::from_terms(nv, [(m, F::one())]);
        let v = class_vector(&evaluate_at_rho(&p, rhos, g), &basis).expect("homogeneous image");
        if outside.is_none() {
            let broken = constraints.iter().any(|row| {
                !row.iter()
                    .zip(&v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                    .is_zero()
            });
            if broken {
                outside = Some(p.display_with(&names));
            }
        }
        vectors.push(v);
    }
    (rank_over(vectors, cols), outside)
}

/// Compares, for every `k ≤ kmax`, the graph cohomology dimension, the
/// quotient Hilbert function and the rank of the evaluation map, and
/// checks that every relation and congruence holds.
pub fn check_isomorphism(a: &Arrangement, g: &GkmGraph, kmax: u32, sign: i64) -> Result<IsomorphismCheck> {
    let ideal = presentation_ideal(a)?;
    let rhos = rho_generators(a, g, sign)?;
    Ok(certify(&ideal, &rhos, g, kmax, sign))
}

/// [`check_isomorphism`] for explicitly supplied generator classes.
pub fn certify(
    ideal: &IdealPresentation,
    rhos: &[GkmClass<Int>],
    g: &GkmGraph,
    kmax: u32,
    sign: i64,
) -> IsomorphismCheck {
    let mut counterexamples = gkm_violations(rhos, g);
    let failures = relation_failures(ideal, rhos, g);
    let failed_degrees: Vec<u32> = failures
        .iter()
        .map(|(gi, _)| ideal.generators[*gi].degree())
        .collect();
    counterexamples.extend(failures.into_iter().map(|(_, c)| c));

    let qrhos: Vec<GkmClass<Rat>> = rhos.iter().map(|r| r.map_coeffs(Rat::from_int)).collect();
    let mut degrees = Vec::new();
    for k in 0..=kmax {
        let dim_graph = graph_cohomology_dim(g, k, Coefficients::Rational);
        let dim_quotient = quotient_hilbert(ideal, k);
        let (dim_image, outside) = image_rank(&qrhos, g, k, weight_form::<Rat>);
        if let Some(monomial) = outside {
            counterexamples.push(Counterexample::ImageOutsideGraph { k, monomial });
        }
        if dim_graph != dim_quotient || dim_graph != dim_image {
            counterexamples.push(Counterexample::DimensionMismatch {
                k,
                dim_graph,
                dim_quotient,
                dim_image,
            });
        }
        degrees.push(DegreeRow {
            k,
            dim_graph,
            dim_quotient,
            dim_image,
            relations_ok: failed_degrees.iter().all(|&d| d > k),
        });
    }
    let pass = counterexamples.is_empty();
    IsomorphismCheck {
        certificate: Certificate { sign, degrees, pass },
        counterexamples,
    }
}

/// Whether the generators built with `sign` are graph classes and satisfy
/// every circuit relation.
pub fn sign_is_consistent(a: &Arrangement, g: &GkmGraph, sign: i64) -> Result<bool> {
    let ideal = presentation_ideal(a)?;
    let rhos = rho_generators(a, g, sign)?;
    Ok(gkm_violations(&rhos, g).is_empty() && relation_failures(&ideal, &rhos, g).is_empty())
}

/// The signs among `±1` that pass [`sign_is_consistent`].
pub fn consistent_signs(a: &Arrangement, g: &GkmGraph) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for s in [-1, 1] {
        if sign_is_consistent(a, g, s)? {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mod2Row {
    pub k: u32,
    /// Rational graph cohomology in polynomial degree `k`.
    pub dim_rational: usize,
    /// GF(2) graph cohomology of the reduced graph in halved degree `k`.
    pub dim_mod2: usize,
    pub dim_mod2_quotient: usize,
    pub dim_mod2_image: usize,
    pub relations_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mod2Comparison {
    pub gkm_ok: bool,
    pub classes_ok: bool,
    pub rows: Vec<Mod2Row>,
    pub pass: bool,
}

/// Reduced generators against reduced weights: degree-halved dimensions,
/// relations, and the GF(2) evaluation rank.
pub fn mod2_comparison(a: &Arrangement, g: &GkmGraph, kmax: u32, sign: i64) -> Result<Mod2Comparison> {
    let gkm_ok = gkmgraph::check_mod2_gkm(g).ok();
    let ideal = presentation_ideal(a)?;
    let kappa = mod2_classes(&rho_generators(a, g, sign)?);
    let classes_ok = kappa.iter().all(|c| is_mod2_gkm_class(c, g).is_ok());
    let failed_degrees: Vec<u32> = relation_failures(&ideal, &kappa, g)
        .iter()
        .map(|(gi, _)| ideal.generators[*gi].degree())
        .collect();
    let mut rows = Vec::new();
    for k in 0..=kmax {
        let (dim_mod2_image, _) = image_rank::<Gf2>(&kappa, g, k, weight_form::<Gf2>);
        rows.push(Mod2Row {
            k,
            dim_rational: graph_cohomology_dim(g, k, Coefficients::Rational),
            dim_mod2: graph_cohomology_dim(g, k, Coefficients::Mod2),
            dim_mod2_quotient: quotient_hilbert_mod2(&ideal, k),
            dim_mod2_image,
            relations_ok: failed_degrees.iter().all(|&d| d > k),
        });
    }
    let pass = gkm_ok
        && classes_ok
        && rows.iter().all(|r| {
            r.relations_ok
                && r.dim_rational == r.dim_mod2
                && r.dim_mod2 == r.dim_mod2_quotient
                && r.dim_mod2 == r.dim_mod2_image
        });
    Ok(Mod2Comparison {
        gkm_ok,
        classes_ok,
        rows,
        pass,
    })
}

/// Coefficients of `Σ_p s^{h_p} / (1-s)^{d+1}` up to `s^kmax`, where
/// `h_p` is half the Morse index of `p`.
pub fn formality_series(indices: &[usize], d: usize, kmax: u32) -> Vec<usize> {
    let binom = |n: usize, r: usize| -> usize {
        let mut c: u128 = 1;
        for i in 0..r {
            c = c * (n - i) as u128 / (i as u128 + 1);
        }
        c as usize
    };
    (0..=kmax as usize)
        .map(|k| {
            indices
                .iter()
                .map(|&i| i / 2)
                .filter(|&h| h <= k)
                .map(|h| binom(k - h + d, d))
                .sum()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseCheck {
    pub samples: Vec<Vec<String>>,
    /// Sorted index multiset per sample.
    pub multisets: Vec<Vec<usize>>,
    pub constant: bool,
    pub series: Vec<usize>,
    pub graph_dims: Vec<usize>,
    pub pass: bool,
}

/// Morse indices for each covector, and the Poincaré series they predict
/// compared with the graph cohomology column.
pub fn morse_check(g: &GkmGraph, samples: &[Vec<Int>], kmax: u32) -> Result<MorseCheck> {
    let mut multisets = Vec::new();
    for xi in samples {
        let mut idx = gkmgraph::morse_indices(g, xi)?;
        idx.sort_unstable();
        multisets.push(idx);
    }
    let constant = multisets.windows(2).all(|w| w[0] == w[1]);
    let series = multisets
        .first()
        .map(|m| formality_series(m, g.d, kmax))
        .unwrap_or_default();
    let graph_dims: Vec<usize> = (0..=kmax)
        .map(|k| graph_cohomology_dim(g, k, Coefficients::Rational))
        .collect();
    let pass = constant && !multisets.is_empty() && series == graph_dims;
    Ok(MorseCheck {
        samples: samples
            .iter()
            .map(|x| x.iter().map(ToString::to_string).collect())
            .collect(),
        multisets,
        constant,
        series,
        graph_dims,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkmgraph::build_graph;

    #[test]
    fn series_coefficients() {
        // T*CP1: indices {0, 2}, d = 1 -> (1 + s) / (1 - s)^2
        assert_eq!(formality_series(&[0, 2], 1, 4), vec![1, 3, 5, 7, 9]);
        assert_eq!(formality_series(&[0], 2, 3), vec![1, 3, 6, 10]);
        assert_eq!(formality_series(&[], 2, 1), vec![0, 0]);
    }

    #[test]
    fn t_star_cp1_certificate() {
        let a = Arrangement::from_i64(1, &[(&[1], 0), (&[-1], -1)]).unwrap();
        let g = build_graph(&a).unwrap();
        let c = check_isomorphism(&a, &g, 3, RHO_SIGN).unwrap();
        assert!(c.certificate.pass, "{:?}", c.counterexamples);
        let dims: Vec<usize> = c.certificate.degrees.iter().map(|r| r.dim_graph).collect();
        assert_eq!(dims, vec![1, 3, 5, 7]);
        let json = serde_json::to_string(&c.certificate).unwrap();
        assert!(json.starts_with("{\"sign\":-1,\"degrees\":[{\"k\":0,\"dim_graph\":1,"));

        let m = mod2_comparison(&a, &g, 3, RHO_SIGN).unwrap();
        assert!(m.pass, "{m:?}");
        let mc = morse_check(&g, &gkmgraph::xi_samples(&g, 5), 4).unwrap();
        assert!(mc.pass);
        assert_eq!(mc.multisets[0], vec![0, 2]);
    }

    #[test]
    fn kmax_zero_is_trivial() {
        let a = Arrangement::from_i64(1, &[(&[1], 0), (&[-1], -1)]).unwrap();
        let g = build_graph(&a).unwrap();
        let c = check_isomorphism(&a, &g, 0, RHO_SIGN).unwrap();
        assert!(c.certificate.pass);
        assert_eq!(c.certificate.degrees.len(), 1);
        assert_eq!(c.certificate.degrees[0].dim_graph, 1);
        assert_eq!(c.certificate.degrees[0].dim_quotient, 1);
    }
}
