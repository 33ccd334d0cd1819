//! Vertex-wise polynomial assignments on a GKM graph and the generator
//! classes attached to the hyperplanes.

use num_traits::Zero;

use crate::arrangement::{format_index_set, Arrangement, Side, Vertex};
use crate::error::{Error, Result};
use crate::exactla::{dot_int, unimodular_inverse, Field, Gf2, Int, Rat, Ring};
use crate::gkmgraph::{GkmGraph, Weight};

use super::poly::MultiPoly;

/// Variable names of the fixed-point polynomial ring: `y1..yd, x`.
pub fn point_ring_names(d: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=d).map(|i| format!("y{i}")).collect();
    v.push("x".into());
    v
}

/// The edge weight as a linear form `Σ td_j y_j + s1 x`.
pub fn weight_form<R: Ring>(w: &Weight) -> MultiPoly<R> {
    let coeffs: Vec<R> = w.to_vec().iter().map(R::from_int).collect();
    MultiPoly::linear(&coeffs)
}

/// An assignment of a polynomial in `y1..yd, x` to each vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct GkmClass<R: Ring> {
    pub values: Vec<MultiPoly<R>>,
}

impl<R: Ring> GkmClass<R> {
    pub fn constant(g: &GkmGraph, p: MultiPoly<R>) -> Self {
        Self {
            values: vec![p; g.vertices.len()],
        }
    }

    /// The class `v ↦ x`.
    pub fn x(g: &GkmGraph) -> Self {
        Self::constant(g, MultiPoly::var(g.d + 1, g.d))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(MultiPoly::is_zero)
    }

    /// Common degree of the nonzero values, `Some(None)` for the zero
    /// class and `None` if the values are not homogeneous of one degree.
    pub fn degree(&self) -> Option<Option<u32>> {
        let mut deg = None;
        for v in &self.values {
            if !v.is_homogeneous() {
                return None;
            }
            match (deg, v.degree()) {
                (_, None) => {}
                (None, Some(e)) => deg = Some(e),
                (Some(a), Some(b)) if a != b => return None,
                _ => {}
            }
        }
        Some(deg)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> GkmClass<S> {
        GkmClass {
            values: self.values.iter().map(|p| p.map_coeffs(f)).collect(),
        }
    }
}

/// First edge at which a class fails the congruence condition.
#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceViolation {
    pub edge: usize,
    pub p: usize,
    pub q: usize,
    pub weight: Weight,
    pub difference: String,
}

/// Checks `f(p) - f(q) ≡ 0 mod α_e` on every compact edge, with edge forms
/// given over the field `F`.
fn congruence_check<F: Field>(
    c: &GkmClass<F>,
    g: &GkmGraph,
    form: impl Fn(&Weight) -> MultiPoly<F>,
) -> std::result::Result<(), CongruenceViolation> {
    let names = point_ring_names(g.d);
    for (i, e) in g.edges.iter().enumerate() {
        let diff = c.values[e.p].sub(&c.values[e.q]);
        let alpha = form(&e.weight_at_p);
        if alpha.is_zero() || diff.divide_exact(&alpha).is_none() {
            return Err(CongruenceViolation {
                edge: i,
                p: e.p,
                q: e.q,
                weight: e.weight_at_p.clone(),
                difference: diff.display_with(&names),
            });
        }
    }
    Ok(())
}

/// Edge congruences for an integral class. Edge forms are primitive, so
/// divisibility over the rationals is divisibility over the integers.
pub fn is_gkm_class(c: &GkmClass<Int>, g: &GkmGraph) -> std::result::Result<(), CongruenceViolation> {
    let q: GkmClass<Rat> = c.map_coeffs(Rat::from_int);
    congruence_check(&q, g, weight_form::<Rat>)
}

/// Edge congruences modulo the reduced edge weights.
pub fn is_mod2_gkm_class(c: &GkmClass<Gf2>, g: &GkmGraph) -> std::result::Result<(), CongruenceViolation> {
    congruence_check(c, g, weight_form::<Gf2>)
}

/// The integer covector dual to `a_i` among the normals of `v`:
/// `<η, a_i> = 1` and `<η, a_j> = 0` for the other `j ∈ I_v`.
pub fn eta(a: &Arrangement, v: &Vertex, i: usize) -> Result<Vec<Int>> {
    let pos = v.index_set.iter().position(|&j| j == i).ok_or_else(|| {
        Error::Precondition(format!(
            "hyperplane {} does not pass through vertex {}",
            i + 1,
            format_index_set(&v.index_set)
        ))
    })?;
    let rows: Vec<Vec<Int>> = v.index_set.iter().map(|&j| a.normal(j).to_vec()).collect();
    let inv = unimodular_inverse(&rows)?;
    Ok(inv.iter().map(|row| row[pos].clone()).collect())
}

/// The degree-one classes `ρ_1..ρ_n`. At a vertex `v`, `ρ_i` is zero when
/// `v` lies strictly on the positive side of `H_i`, `x` when strictly on
/// the negative side, and `η_{v,i} + sign·<η_{v,i}, Σ_{K_v} a_j>·x` when
/// `H_i` passes through `v`.
pub fn rho_generators(a: &Arrangement, g: &GkmGraph, sign: i64) -> Result<Vec<GkmClass<Int>>> {
    let d = g.d;
    let mut out = Vec::with_capacity(a.n());
    for i in 0..a.n() {
        let mut values = Vec::with_capacity(g.vertices.len());
        for v in &g.vertices {
            let value = match v.side_of(i) {
                Side::Positive => MultiPoly::zero(d + 1),
                Side::Negative => MultiPoly::var(d + 1, d),
                Side::On => {
                    let e = eta(a, v, i)?;
                    let mut ksum = vec![Int::zero(); d];
                    for &j in &v.negative {
                        for (s, aj) in ksum.iter_mut().zip(a.normal(j)) {
                            *s += aj;
                        }
                    }
                    let mut coeffs = e.clone();
                    coeffs.push(dot_int(&e, &ksum) * sign);
                    MultiPoly::linear(&coeffs)
                }
            };
            values.push(value);
        }
        out.push(GkmClass { values });
    }
    Ok(out)
}

/// Substitutes `u_i ↦ ρ_i`, `x ↦ x` vertex by vertex. The polynomial has
/// `n + 1` variables, `x` last.
pub fn evaluate_at_rho<R: Ring>(p: &MultiPoly<R>, rhos: &[GkmClass<R>], g: &GkmGraph) -> GkmClass<R> {
    let d = g.d;
    let values = (0..g.vertices.len())
        .map(|v| {
            let mut images: Vec<MultiPoly<R>> = rhos.iter().map(|r| r.values[v].clone()).collect();
            images.push(MultiPoly::var(d + 1, d));
            p.substitute(&images, d + 1)
        })
        .collect();
    GkmClass { values }
}

/// Forgets the circle factor by setting `x = 0`.
pub fn restrict_to_td<R: Ring>(c: &GkmClass<R>) -> GkmClass<R> {
    GkmClass {
        values: c
            .values
            .iter()
            .map(|p| p.kill_var(p.nvars() - 1))
            .collect(),
    }
}

pub fn reduce_mod2(c: &GkmClass<Int>) -> GkmClass<Gf2> {
    c.map_coeffs(Gf2::from_int)
}

/// Reductions of the generator classes, read in the halved grading.
pub fn mod2_classes(rhos: &[GkmClass<Int>]) -> Vec<GkmClass<Gf2>> {
    rhos.iter().map(reduce_mod2).collect()
}

/// The constant class with value one.
pub fn unit_class<R: Ring>(g: &GkmGraph) -> GkmClass<R> {
    GkmClass::constant(g, MultiPoly::constant(g.d + 1, R::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;
    use crate::gkmgraph::build_graph;

    fn t_star_cp1() -> (Arrangement, GkmGraph) {
        let a = Arrangement::from_i64(1, &[(&[1], 0), (&[-1], -1)]).unwrap();
        let g = build_graph(&a).unwrap();
        (a, g)
    }

    fn lin(c: &[i64]) -> MultiPoly<Int> {
        MultiPoly::linear(&c.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn eta_examples() {
        let a = Arrangement::from_i64(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1)]).unwrap();
        let v = a.vertices().into_iter().find(|v| v.index_set == [0, 1]).unwrap();
        assert_eq!(eta(&a, &v, 0).unwrap(), vec![int(1), int(0)]);
        assert!(eta(&a, &v, 2).is_err());

        let b = Arrangement::from_i64(2, &[(&[1, 0], 0), (&[1, 1], 0), (&[0, 1], 5)]).unwrap();
        let w = b.vertices().into_iter().find(|v| v.index_set == [0, 1]).unwrap();
        assert_eq!(eta(&b, &w, 1).unwrap(), vec![int(0), int(1)]);
        assert_eq!(eta(&b, &w, 0).unwrap(), vec![int(1), int(-1)]);

        let (a, g) = t_star_cp1();
        assert_eq!(eta(&a, &g.vertices[1], 1).unwrap(), vec![int(-1)]);
    }

    #[test]
    fn t_star_cp1_generators() {
        let (a, g) = t_star_cp1();
        for sign in [1, -1] {
            let rho = rho_generators(&a, &g, sign).unwrap();
            assert_eq!(rho[0].values, vec![lin(&[1, 0]), lin(&[0, 0])]);
            assert_eq!(rho[1].values, vec![lin(&[0, 0]), lin(&[-1, 0])]);
            for r in &rho {
                assert!(is_gkm_class(r, &g).is_ok());
                assert_eq!(restrict_to_td(r), *r);
            }
        }
    }

    #[test]
    fn congruence_examples() {
        let (_, g) = t_star_cp1();
        assert!(is_gkm_class(&unit_class(&g), &g).is_ok());
        let bad = GkmClass {
            values: vec![lin(&[0, 1]), lin(&[0, 0])],
        };
        let err = is_gkm_class(&bad, &g).unwrap_err();
        assert_eq!(err.difference, "x");
        assert!(is_gkm_class(&GkmClass::x(&g), &g).is_ok());
        assert!(restrict_to_td(&GkmClass::<Int>::x(&g)).is_zero());
    }

    #[test]
    fn evaluation() {
        let (a, g) = t_star_cp1();
        let rho = rho_generators(&a, &g, -1).unwrap();
        let u1 = MultiPoly::<Int>::var(3, 0);
        let u2 = MultiPoly::var(3, 1);
        let x = MultiPoly::var(3, 2);
        assert!(evaluate_at_rho(&u1.mul(&u2), &rho, &g).is_zero());
        assert_eq!(evaluate_at_rho(&x, &rho, &g), GkmClass::x(&g));
        let s = evaluate_at_rho(&u1.add(&u2), &rho, &g);
        assert_eq!(s.values, vec![lin(&[1, 0]), lin(&[-1, 0])]);
        assert_eq!(s.degree(), Some(Some(1)));
    }

    #[test]
    fn mod2_reduction() {
        let (a, g) = t_star_cp1();
        let rho = rho_generators(&a, &g, -1).unwrap();
        let kappa = mod2_classes(&rho);
        assert_eq!(kappa[1].values[1], MultiPoly::var(2, 0));
        for k in &kappa {
            assert!(is_mod2_gkm_class(k, &g).is_ok());
        }
    }
}
