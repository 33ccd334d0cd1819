//! Sparse multivariate polynomials over a [`Ring`], with graded
//! lexicographic order `v_0 < v_1 < … < v_{m-1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;


use crate::exactla::{Field, Int, Ring};

/// An exponent vector, ordered by total degree and then lexicographically
/// starting from the last (largest) variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `k` in `nvars` variables, ascending.
pub fn monomials(nvars: usize, k: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(k);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=k {
            prefix.push(e);
            rec(nvars, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, k, &mut Vec::with_capacity(nvars), &mut out);
    out.sort();
    out
}

/// `C(m + k - 1, k)`, the number of degree-`k` monomials in `m` variables.
pub fn monomial_count(nvars: usize, k: u32) -> usize {
    if nvars == 0 {
        return usize::from(k == 0);
    }
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = c * (nvars as u128 - 1 + i) / i;
    }
    c as usize
}

#[derive(Clone, PartialEq)]
pub struct MultiPoly<R: Ring> {
    nvars: usize,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::var(nvars, i), R::one())])
    }

    /// `Σ coeffs[i] · v_i`.
    pub fn linear(coeffs: &[R]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &R)> {
        self.terms.iter().next_back()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut p = Self::constant(self.nvars, R::one());
        for _ in 0..e {
            p = p.mul(self);
        }
        p
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Substitutes `images[i]` for variable `i`; images live in a common
    /// ring of `target_nvars` variables.
    pub fn substitute(&self, images: &[MultiPoly<R>], target_nvars: usize) -> MultiPoly<R> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = MultiPoly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target_nvars, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Sets variable `i` to zero.
    pub fn kill_var(&self, i: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.0[i] == 0)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Coefficients in the given monomial basis; `None` if a term falls
    /// outside it.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Option<Vec<R>> {
        let mut v = vec![R::zero(); basis.len()];
        let mut seen = 0;
        for (i, m) in basis.iter().enumerate() {
            if let Some(c) = self.terms.get(m) {
                v[i] = c.clone();
                seen += 1;
            }
        }
        (seen == self.terms.len()).then_some(v)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut body: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => body.push(names[i].clone()),
                    _ => body.push(format!("{}^{}", names[i], e)),
                }
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if pos == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if body.is_empty() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                s.push_str(&body.join("*"));
            }
        }
        s
    }
}

impl<F: Field> MultiPoly<F> {
    /// Exact quotient by `divisor`, or `None` when it does not divide.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading()?;
        let (lm, inv) = (lm.clone(), lc.inv());
        let mut rem = self.clone();
        let mut quo = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c.clone() * inv.clone();
            let t = Self::from_terms(self.nvars, [(qm, qc)]);
            rem = rem.sub(&t.mul(divisor));
            quo = quo.add(&t);
        }
        Some(quo)
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

pub type IntPoly = MultiPoly<Int>;
