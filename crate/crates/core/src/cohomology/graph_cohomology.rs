//! Dimensions of graded pieces of graph cohomology: assignments of
//! degree-`k` polynomials to vertices whose differences along each compact
//! edge are divisible by the edge form.

use crate::exactla::{nullspace_over, rank_over, Field, Gf2, Rat, Ring};
use crate::gkmgraph::{GkmGraph, Weight};

use super::classes::{weight_form, GkmClass};
use super::poly::{monomials, MultiPoly, Monomial};

/// Coefficient field for a graph cohomology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Rational coefficients, integral weights.
    Rational,
    /// GF(2) coefficients with the weights reduced mod 2.
    Mod2,
}

/// Row vectors spanning the annihilator of `α · Sym^{k-1}` inside the dual
/// of `Sym^k`. A degree-`k` polynomial is divisible by `α` iff every row
/// pairs to zero with its coefficient vector.
pub fn divisibility_functionals<F: Field>(alpha: &MultiPoly<F>, k: u32) -> Vec<Vec<F>> {
    let nvars = alpha.nvars();
    let basis = monomials(nvars, k);
    if k == 0 {
        return vec![vec![F::one()]];
    }
    // transpose of the multiplication map Sym^{k-1} -> Sym^k
    let rows: Vec<Vec<F>> = monomials(nvars, k - 1)
        .into_iter()
        .map(|m| {
            let prod = alpha.mul(&MultiPoly::from_terms(nvars, [(m, F::one())]));
            prod.coefficients_in(&basis).expect("degree k product")
        })
        .collect();
    nullspace_over(rows, basis.len())
}

/// The stacked edge constraints on `V · dim Sym^k` unknowns (vertex-major).
pub fn constraint_rows<F: Field>(
    g: &GkmGraph,
    k: u32,
    form: impl Fn(&Weight) -> MultiPoly<F>,
) -> Vec<Vec<F>> {
    let b = monomials(g.d + 1, k).len();
    let cols = g.vertices.len() * b;
    let mut rows = Vec::new();
    for e in &g.edges {
        for l in divisibility_functionals(&form(&e.weight_at_p), k) {
            let mut row = vec![F::zero(); cols];
            for (j, c) in l.iter().enumerate() {
                row[e.p * b + j] = c.clone();
                row[e.q * b + j] = -c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

fn dim_over<F: Field>(g: &GkmGraph, k: u32, form: impl Fn(&Weight) -> MultiPoly<F>) -> usize {
    let b = monomials(g.d + 1, k).len();
    let cols = g.vertices.len() * b;
    cols - rank_over(constraint_rows(g, k, form), cols)
}

/// `dim H^{2k}(Γ)` in polynomial degree `k`.
pub fn graph_cohomology_dim(g: &GkmGraph, k: u32, coeffs: Coefficients) -> usize {
    match coeffs {
        Coefficients::Rational => dim_over::<Rat>(g, k, weight_form),
        Coefficients::Mod2 => dim_over::<Gf2>(g, k, weight_form),
    }
}

/// Flattens a class of degree `k` into the vertex-major coefficient vector.
pub fn class_vector<R: Ring>(c: &GkmClass<R>, basis: &[Monomial]) -> Option<Vec<R>> {
    let mut v = Vec::with_capacity(c.values.len() * basis.len());
    for p in &c.values {
        v.extend(p.coefficients_in(basis)?);
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::rat;
    use crate::gkmgraph::build_graph;

    #[test]
    fn functionals_detect_divisibility() {
        let alpha: MultiPoly<Rat> = MultiPoly::linear(&[rat(1), rat(-1), rat(2)]);
        for k in 0..4 {
            let ls = divisibility_functionals(&alpha, k);
            let expected = monomials(3, k).len() - if k == 0 { 0 } else { monomials(3, k - 1).len() };
            assert_eq!(ls.len(), expected);
        }
        let basis = monomials(3, 2);
        let f = alpha.mul(&MultiPoly::var(3, 1));
        let v = f.coefficients_in(&basis).unwrap();
        for l in divisibility_functionals(&alpha, 2) {
            let s = l.iter().zip(&v).fold(rat(0), |acc, (a, b)| acc + a * b);
            assert_eq!(s, rat(0));
        }
    }

    #[test]
    fn t_star_cp1_dims() {
        let a = Arrangement::from_i64(1, &[(&[1], 0), (&[-1], -1)]).unwrap();
        let g = build_graph(&a).unwrap();
        for k in 0..5 {
            assert_eq!(graph_cohomology_dim(&g, k, Coefficients::Rational), 2 * k as usize + 1);
            assert_eq!(graph_cohomology_dim(&g, k, Coefficients::Mod2), 2 * k as usize + 1);
        }
    }

    #[test]
    fn single_vertex_is_free() {
        let a = Arrangement::from_i64(1, &[(&[1], 0)]).unwrap();
        let g = build_graph(&a).unwrap();
        for k in 0..5 {
            assert_eq!(graph_cohomology_dim(&g, k, Coefficients::Rational), k as usize + 1);
        }
    }
}
