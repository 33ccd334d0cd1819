mod common;

use common::*;
use hypertoric_gkm::arrangement::Arrangement;
use hypertoric_gkm::cohomology::certificate::{formality_series, morse_check};
use hypertoric_gkm::cohomology::classes::{evaluate_at_rho, rho_generators, GkmClass};
use hypertoric_gkm::cohomology::graph_cohomology::{graph_cohomology_dim, Coefficients};
use hypertoric_gkm::cohomology::poly::{monomials, IntPoly, MultiPoly};
use hypertoric_gkm::cohomology::RHO_SIGN;
use hypertoric_gkm::exactla::{
    self, feasible, int_rank, make_primitive, nullspace_basis, rank, solve, Int, IneqSystem, Rat, RatMatrix,
    Sense,
};
use hypertoric_gkm::gkmgraph::{build_graph, check_gkm, check_mod2_gkm, s1_weight_well_defined, xi_samples, GkmGraph};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
}

fn to_rat(m: &[Vec<i64>]) -> RatMatrix {
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    RatMatrix::from_i64(&rows)
}

/// Random arrangement data: `n` lines in the plane with small entries.
fn planar_data() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    (3usize..=5).prop_flat_map(|n| {
        proptest::collection::vec((proptest::collection::vec(-2i64..=2, 2), -3i64..=3), n)
    })
}

fn planar_buildable() -> impl Strategy<Value = Arrangement> {
    planar_data().prop_filter_map("not buildable", |data| {
        arrangement(2, &data).filter(buildable)
    })
}

fn line_buildable() -> impl Strategy<Value = Arrangement> {
    proptest::collection::vec((prop_oneof![Just(1i64), Just(-1i64)], -4i64..=4), 2..=4).prop_filter_map(
        "not buildable",
        |data| {
            let data: Vec<(Vec<i64>, i64)> = data.into_iter().map(|(a, c)| (vec![a], c)).collect();
            arrangement(1, &data).filter(buildable)
        },
    )
}

/// Dimension of graph cohomology from `f_p - f_q = α_e g_e`, solved for
/// `(f, g)` jointly. Multiplication by `α_e ≠ 0` is injective, so the
/// kernel dimension equals the dimension of the space of valid `f`.
fn graph_dim_by_auxiliary_unknowns(g: &GkmGraph, k: u32, mod2: bool) -> usize {
    let nv = g.d + 1;
    let basis = monomials(nv, k);
    let lower = if k == 0 { Vec::new() } else { monomials(nv, k - 1) };
    let (b, bl) = (basis.len(), lower.len());
    let v = g.vertices.len();
    let cols = v * b + g.edges.len() * bl;
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for (ei, e) in g.edges.iter().enumerate() {
        let w: Vec<i128> = e.weight_at_p.to_vec().iter().map(|x| x.to_i128().unwrap()).collect();
        for (r, m) in basis.iter().enumerate() {
            let mut row = vec![0i128; cols];
            row[e.p * b + r] += 1;
            row[e.q * b + r] -= 1;
            // coefficient of m in α_e · (lower monomial l) is w_j when m = l · v_j
            for (li, l) in lower.iter().enumerate() {
                for (j, wj) in w.iter().enumerate() {
                    let mut lm = l.0.clone();
                    lm[j] += 1;
                    if lm == m.0 {
                        row[v * b + ei * bl + li] -= wj;
                    }
                }
            }
            rows.push(row);
        }
    }
    let r = if mod2 {
        let bits: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(2) == 1).collect()).collect();
        rank_gf2(&bits)
    } else {
        let big: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        int_rank(&big, cols)
    };
    cols - r
}

fn random_poly(nvars: usize) -> impl Strategy<Value = IntPoly> {
    proptest::collection::vec((proptest::collection::vec(0u32..=2, nvars), -3i64..=3), 1..=4).prop_map(move |terms| {
        // homogenize by padding the last variable up to degree 2
        MultiPoly::from_terms(
            nvars,
            terms.into_iter().filter_map(|(mut e, c)| {
                let deg: u32 = e.iter().sum();
                if deg > 2 {
                    return None;
                }
                e[nvars - 1] += 2 - deg;
                Some((hypertoric_gkm::cohomology::Monomial(e), Int::from(c)))
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, max_global_rejects: 200_000, ..ProptestConfig::default() })]

    #[test]
    fn solve_is_verified_or_inconsistent(m in small_matrix(4, 4), b in proptest::collection::vec(-3i64..=3, 4)) {
        let a = to_rat(&m);
        let rhs: Vec<Rat> = b[..a.rows()].iter().map(|&x| exactla::rat(x)).collect();
        match solve(&a, &rhs) {
            Some(x) => prop_assert_eq!(a.mul_vec(&x), rhs),
            None => {
                let aug: Vec<Vec<i64>> = m.iter().zip(&b).map(|(r, &c)| { let mut r = r.clone(); r.push(c); r }).collect();
                let aug128: Vec<Vec<i128>> = aug.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
                let m128: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
                prop_assert!(rank_i128(aug128) > rank_i128(m128));
            }
        }
    }

    #[test]
    fn nullspace_is_kernel_of_full_size(m in small_matrix(4, 5)) {
        let a = to_rat(&m);
        let ns = nullspace_basis(&a);
        let m128: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        prop_assert_eq!(rank(&a), rank_i128(m128));
        prop_assert_eq!(ns.len(), a.cols() - rank(&a));
        for v in &ns {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn primitive_is_idempotent(v in proptest::collection::vec(-20i64..=20, 1..=4)) {
        let v: Vec<Int> = v.into_iter().map(Int::from).collect();
        match make_primitive(&v) {
            Err(_) => prop_assert!(v.iter().all(Zero::is_zero)),
            Ok(p) => {
                prop_assert_eq!(make_primitive(&p).unwrap(), p.clone());
                let g = p.iter().fold(Int::zero(), |a, b| a.gcd(b));
                prop_assert_eq!(g, Int::from(1));
                // same ray
                let s = v.iter().zip(&p).find(|(x, _)| !x.is_zero()).map(|(x, y)| x.signum() == y.signum()).unwrap();
                prop_assert!(s);
                for i in 0..v.len() { for j in 0..v.len() {
                    prop_assert_eq!(&v[i] * &p[j], &v[j] * &p[i]);
                }}
            }
        }
    }

    #[test]
    fn fourier_motzkin_matches_vertex_enumeration(
        dim in 1usize..=3,
        raw in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 3), -4i64..=4, any::<bool>()), 1..=5),
    ) {
        let ineqs: Vec<Ineq> = raw.iter().map(|(a, b, ge)| Ineq { a: a[..dim].iter().map(|&x| x as i128).collect(), b: *b as i128, ge: *ge }).collect();
        let mut sys = IneqSystem::new(dim);
        for q in &ineqs {
            sys.push(
                q.a.iter().map(|&x| exactla::rat(x as i64)).collect(),
                if q.ge { Sense::Ge } else { Sense::Le },
                exactla::rat(q.b as i64),
            ).unwrap();
        }
        prop_assert_eq!(feasible(&sys), feasible_by_vertices(dim, &ineqs));
    }

    #[test]
    fn circuits_match_brute_force(data in planar_data()) {
        let Some(a) = arrangement(2, &data) else { return Ok(()) };
        prop_assume!(a.validate_simple().ok);
        let n = a.n();
        // a subset's hyperplanes meet iff [A | c] has the rank of A
        let meets = |s: &[usize]| {
            let m: Vec<Vec<i128>> = s.iter().map(|&i| normal_i128(&a, i)).collect();
            let aug: Vec<Vec<i128>> = s.iter().map(|&i| { let mut r = normal_i128(&a, i); r.push(offset_i128(&a, i)); r }).collect();
            rank_i128(m) == rank_i128(aug)
        };
        let mut expected = Vec::new();
        for mask in 1u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if s.len() < 2 || meets(&s) { continue; }
            if !s.iter().all(|&skip| meets(&s.iter().copied().filter(|&i| i != skip).collect::<Vec<_>>())) { continue; }
            // the unique sign pattern with empty intersection
            let mut empty = Vec::new();
            for gm in 0u32..(1 << s.len()) {
                let ineqs: Vec<Ineq> = s.iter().enumerate().map(|(k, &i)| Ineq { a: normal_i128(&a, i), b: offset_i128(&a, i), ge: gm >> k & 1 == 0 }).collect();
                if !feasible_by_vertices(2, &ineqs) {
                    let g: Vec<usize> = s.iter().enumerate().filter(|(k, _)| gm >> k & 1 == 1).map(|(_, &i)| i).collect();
                    let f: Vec<usize> = s.iter().copied().filter(|i| !g.contains(i)).collect();
                    empty.push((g, f));
                }
            }
            prop_assert_eq!(empty.len(), 1);
            expected.push((s, empty.pop().unwrap()));
        }
        expected.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
        let got: Vec<(Vec<usize>, (Vec<usize>, Vec<usize>))> = a.circuits().unwrap().into_iter().map(|c| (c.support, (c.g_part, c.f_part))).collect();
        prop_assert_eq!(got, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, max_global_rejects: 200_000, ..ProptestConfig::default() })]

    #[test]
    fn graph_invariants_on_random_planar_arrangements(a in planar_buildable()) {
        let g = build_graph(&a).unwrap();
        for v in 0..g.vertices.len() {
            prop_assert_eq!(g.degree(v) + g.ray_count(v), 2 * g.d);
        }
        for e in &g.edges {
            prop_assert_eq!(g.weight_at_q(&a, e).unwrap(), -&e.weight_at_p);
            let common: Vec<usize> = g.vertices[e.p].index_set.iter().copied().filter(|i| g.vertices[e.q].index_set.contains(i)).collect();
            prop_assert_eq!(common.len(), g.d - 1);
            for j in common {
                prop_assert!(exactla::dot_int(&e.weight_at_p.td, a.normal(j)).is_zero());
            }
        }
        prop_assert!(s1_weight_well_defined(&a, &g).ok);
        prop_assert!(check_gkm(&g).ok());
        prop_assert!(check_mod2_gkm(&g).ok());
        let m = morse_check(&g, &xi_samples(&g, 5), 3).unwrap();
        prop_assert!(m.constant);
        prop_assert_eq!(&m.series, &m.graph_dims);
    }

    #[test]
    fn graph_dim_matches_auxiliary_formulation(a in planar_buildable(), k in 0u32..=3) {
        let g = build_graph(&a).unwrap();
        prop_assume!(g.vertices.len() <= 6);
        prop_assert_eq!(graph_cohomology_dim(&g, k, Coefficients::Rational), graph_dim_by_auxiliary_unknowns(&g, k, false));
        prop_assert_eq!(graph_cohomology_dim(&g, k, Coefficients::Mod2), graph_dim_by_auxiliary_unknowns(&g, k, true));
    }

    #[test]
    fn graph_dim_matches_auxiliary_formulation_on_lines(a in line_buildable(), k in 0u32..=3) {
        let g = build_graph(&a).unwrap();
        prop_assert_eq!(graph_cohomology_dim(&g, k, Coefficients::Rational), graph_dim_by_auxiliary_unknowns(&g, k, false));
        // points on a line: one minimum and V - 1 index-2 points, so the
        // series is (1 + (V - 1) s) / (1 - s)^2
        let idx: Vec<usize> = (0..g.vertices.len()).map(|i| if i == 0 { 0 } else { 2 }).collect();
        prop_assert_eq!(formality_series(&idx, 1, k)[k as usize], graph_cohomology_dim(&g, k, Coefficients::Rational));
    }

    #[test]
    fn evaluation_is_multiplicative(p in random_poly(5), q in random_poly(5)) {
        let b = hypertoric_gkm::bundled::by_name("ma").unwrap();
        let a = b.arrangement();
        let g = build_graph(&a).unwrap();
        let rho: Vec<GkmClass<Int>> = rho_generators(&a, &g, RHO_SIGN).unwrap();
        let lhs = evaluate_at_rho(&p.mul(&q), &rho, &g);
        let rhs = evaluate_at_rho(&p, &rho, &g).mul(&evaluate_at_rho(&q, &rho, &g));
        prop_assert_eq!(lhs, rhs);
        let sum = evaluate_at_rho(&p.add(&q), &rho, &g);
        prop_assert_eq!(sum, evaluate_at_rho(&p, &rho, &g).add(&evaluate_at_rho(&q, &rho, &g)));
    }
}

#[test]
fn bundled_graph_dims_match_auxiliary_formulation() {
    for (name, a) in bundled_smooth() {
        let g = build_graph(&a).unwrap();
        assert!(g.vertices.len() <= 6, "{name}");
        for k in 0..=3 {
            assert_eq!(
                graph_cohomology_dim(&g, k, Coefficients::Rational),
                graph_dim_by_auxiliary_unknowns(&g, k, false),
                "{name} k={k}"
            );
            assert_eq!(
                graph_cohomology_dim(&g, k, Coefficients::Mod2),
                graph_dim_by_auxiliary_unknowns(&g, k, true),
                "{name} k={k} mod 2"
            );
        }
    }
}
