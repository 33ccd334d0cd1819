//! The circuit ideal in `Z[u_1..u_n, x]` and Hilbert functions of its
//! quotient ring.

use num_traits::One;

use crate::arrangement::{Arrangement, Circuit};
use crate::error::Result;
use crate::exactla::{rank_over, Field, Gf2, Int, Rat};

use super::poly::{monomials, IntPoly, MultiPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub circuit: Circuit,
    pub poly: IntPoly,
}

/// One generator `∏_{G-part} u_i · ∏_{F-part} (x − u_j)` per circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealPresentation {
    /// Number of hyperplanes; the ring has `n + 1` variables.
    pub n: usize,
    pub generators: Vec<Generator>,
}

/// Names `u1..un, x`.
pub fn presentation_names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    v.push("x".into());
    v
}

pub fn circuit_generator(n: usize, c: &Circuit) -> IntPoly {
    let nv = n + 1;
    let x = IntPoly::var(nv, n);
    let mut p = IntPoly::constant(nv, Int::one());
    for &i in &c.g_part {
        p = p.mul(&IntPoly::var(nv, i));
    }
    for &j in &c.f_part {
        p = p.mul(&x.sub(&IntPoly::var(nv, j)));
    }
    p
}

pub fn presentation_ideal(a: &Arrangement) -> Result<IdealPresentation> {
    let n = a.n();
    let generators = a
        .circuits()?
        .into_iter()
        .map(|circuit| Generator {
            poly: circuit_generator(n, &circuit),
            circuit,
        })
        .collect();
    Ok(IdealPresentation { n, generators })
}

impl Generator {
    /// Product form with factors in index order, e.g. `u1(x-u2)u4`.
    pub fn factored(&self) -> String {
        let mut s = String::new();
        for &i in &self.circuit.support {
            if self.circuit.g_part.contains(&i) {
                s.push_str(&format!("u{}", i + 1));
            } else {
                s.push_str(&format!("(x-u{})", i + 1));
            }
        }
        s
    }

    pub fn degree(&self) -> u32 {
        self.circuit.support.len() as u32
    }
}

impl IdealPresentation {
    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn expanded(&self, i: usize) -> String {
        self.generators[i].poly.display_with(&presentation_names(self.n))
    }
}

fn quotient_dim_over<F: Field>(ideal: &IdealPresentation, k: u32) -> usize {
    let nv = ideal.nvars();
    let basis = monomials(nv, k);
    let mut rows = Vec::new();
    for gen in &ideal.generators {
        let deg = gen.degree();
        if deg > k {
            continue;
        }
        let g: MultiPoly<F> = gen.poly.map_coeffs(F::from_int);
        for m in monomials(nv, k - deg) {
            let prod = g.mul(&MultiPoly::from_terms(nv, [(m, F::one())]));
            rows.push(prod.coefficients_in(&basis).expect("degree k product"));
        }
    }
    basis.len() - rank_over(rows, basis.len())
}

/// Dimension of the degree-`k` part of `Q[u, x] / I`.
pub fn quotient_hilbert(ideal: &IdealPresentation, k: u32) -> usize {
    quotient_dim_over::<Rat>(ideal, k)
}

/// Dimension of the degree-`k` part of `GF(2)[u, x] / I`.
pub fn quotient_hilbert_mod2(ideal: &IdealPresentation, k: u32) -> usize {
    quotient_dim_over::<Gf2>(ideal, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_star_cp1_ideal() {
        let a = Arrangement::from_i64(1, &[(&[1], 0), (&[-1], -1)]).unwrap();
        let ideal = presentation_ideal(&a).unwrap();
        assert_eq!(ideal.generators.len(), 1);
        assert_eq!(ideal.generators[0].factored(), "u1u2");
        assert_eq!(ideal.expanded(0), "u1*u2");
        let dims: Vec<usize> = (0..4).map(|k| quotient_hilbert(&ideal, k)).collect();
        assert_eq!(dims, vec![1, 3, 5, 7]);
    }

    #[test]
    fn zero_ideal_is_polynomial_ring() {
        let ideal = IdealPresentation {
            n: 2,
            generators: Vec::new(),
        };
        let dims: Vec<usize> = (0..4).map(|k| quotient_hilbert(&ideal, k)).collect();
        assert_eq!(dims, vec![1, 3, 6, 10]);
        assert_eq!(quotient_hilbert_mod2(&ideal, 3), 10);
    }

    #[test]
    fn mixed_generator_expansion() {
        let c = Circuit {
            support: vec![0, 1, 3],
            g_part: vec![0, 3],
            f_part: vec![1],
        };
        let g = Generator {
            poly: circuit_generator(4, &c),
            circuit: c,
        };
        assert_eq!(g.factored(), "u1(x-u2)u4");
        assert_eq!(g.poly.display_with(&presentation_names(4)), "u1*u4*x - u1*u2*u4");
    }
}
