//! Closed polyhedra given by non-strict linear inequalities, with
//! feasibility and boundedness decided by exact Fourier-Motzkin elimination.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::{dot_rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Ge,
    Le,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub covector: Vec<Rat>,
    pub sense: Sense,
    pub bound: Rat,
}

impl Constraint {
    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let v = dot_rat(&self.covector, x);
        match self.sense {
            Sense::Ge => v >= self.bound,
            Sense::Le => v <= self.bound,
        }
    }
}

/// `{x in Q^dim : <covector, x> (>= | <=) bound for every constraint}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IneqSystem {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl IneqSystem {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, covector: Vec<Rat>, sense: Sense, bound: Rat) -> Result<()> {
        if covector.len() != self.dim {
            return Err(Error::Dimension(format!(
                "covector of length {} in a system of dimension {}",
                covector.len(),
                self.dim
            )));
        }
        self.constraints.push(Constraint {
            covector,
            sense,
            bound,
        });
        Ok(())
    }

    /// Adds `<covector, x> = bound` as a pair of inequalities.
    pub fn push_eq(&mut self, covector: Vec<Rat>, bound: Rat) -> Result<()> {
        self.push(covector.clone(), Sense::Ge, bound.clone())?;
        self.push(covector, Sense::Le, bound)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.holds_at(x))
    }

    /// All constraints as `<coeffs, x> <= b`.
    fn as_le_rows(&self) -> Vec<(Vec<Rat>, Rat)> {
        self.constraints
            .iter()
            .map(|c| match c.sense {
                Sense::Le => (c.covector.clone(), c.bound.clone()),
                Sense::Ge => (
                    c.covector.iter().map(|x| -x).collect(),
                    -c.bound.clone(),
                ),
            })
            .collect()
    }
}

/// Scales a row so its first nonzero coefficient has absolute value one.
fn normalize(row: (Vec<Rat>, Rat)) -> (Vec<Rat>, Rat) {
    let (coeffs, b) = row;
    match coeffs.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let s = lead.abs().recip();
            (coeffs.iter().map(|c| c * &s).collect(), b * s)
        }
        None => (coeffs, b),
    }
}

/// Drops trivially true rows, keeps the tightest bound per direction.
/// Returns `None` if some row reads `0 <= b` with `b < 0`.
fn tidy(rows: Vec<(Vec<Rat>, Rat)>) -> Option<Vec<(Vec<Rat>, Rat)>> {
    let mut best: HashMap<Vec<Rat>, Rat> = HashMap::new();
    let mut order = Vec::new();
    for row in rows {
        let (coeffs, b) = normalize(row);
        if coeffs.iter().all(Zero::is_zero) {
            if b.is_negative() {
                return None;
            }
            continue;
        }
        match best.get_mut(&coeffs) {
            Some(old) => {
                if b < *old {
                    *old = b;
                }
            }
            None => {
                order.push(coeffs.clone());
                best.insert(coeffs, b);
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|c| {
                let b = best.remove(&c).expect("key recorded above");
                (c, b)
            })
            .collect(),
    )
}

/// True iff the closed polyhedron is nonempty.
pub fn feasible(sys: &IneqSystem) -> bool {
    let Some(mut rows) = tidy(sys.as_le_rows()) else {
        return false;
    };
    let mut remaining: Vec<usize> = (0..sys.dim()).collect();
    while !remaining.is_empty() {
        // eliminate the variable producing the fewest new rows
        let (pos_in_remaining, var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| {
                let p = rows.iter().filter(|(c, _)| c[v].is_positive()).count();
                let n = rows.iter().filter(|(c, _)| c[v].is_negative()).count();
                p * n
            })
            .map(|(i, &v)| (i, v))
            .expect("nonempty");
        remaining.swap_remove(pos_in_remaining);

        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for (c, b) in rows {
            if c[var].is_positive() {
                pos.push((c, b));
            } else if c[var].is_negative() {
                neg.push((c, b));
            } else {
                next.push((c, b));
            }
        }
        for (pc, pb) in &pos {
            for (nc, nb) in &neg {
                let sp = pc[var].recip();
                let sn = -nc[var].recip();
                let coeffs: Vec<Rat> = pc
                    .iter()
                    .zip(nc)
                    .map(|(x, y)| x * &sp + y * &sn)
                    .collect();
                next.push((coeffs, pb * &sp + nb * &sn));
            }
        }
        match tidy(next) {
            Some(r) => rows = r,
            None => return false,
        }
    }
    rows.is_empty()
}

/// True iff the (feasible) polyhedron is bounded, i.e. its recession cone
/// is `{0}`. Errors on an infeasible system.
pub fn bounded(sys: &IneqSystem) -> Result<bool> {
    if !feasible(sys) {
        return Err(Error::Infeasible);
    }
    // recession cone: same covectors, zero bounds
    let mut cone = IneqSystem::new(sys.dim());
    for c in sys.constraints() {
        cone.push(c.covector.clone(), c.sense, Rat::zero())?;
    }
    for j in 0..sys.dim() {
        for sign in [Rat::one(), -Rat::one()] {
            let mut probe = cone.clone();
            let mut e = vec![Rat::zero(); sys.dim()];
            e[j] = sign;
            probe.push(e, Sense::Ge, Rat::one())?;
            if feasible(&probe) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn sys(dim: usize, rows: &[(&[i64], Sense, i64)]) -> IneqSystem {
        let mut s = IneqSystem::new(dim);
        for (c, sense, b) in rows {
            s.push(c.iter().map(|&x| rat(x)).collect(), *sense, rat(*b))
                .unwrap();
        }
        s
    }

    #[test]
    fn feasibility_examples() {
        use Sense::*;
        assert!(feasible(&sys(1, &[(&[1], Ge, 0), (&[1], Le, 1)])));
        assert!(!feasible(&sys(1, &[(&[1], Le, 0), (&[1], Ge, 1)])));
        let s = sys(2, &[(&[1, 0], Le, 0), (&[0, 1], Ge, 0), (&[1, 1], Ge, 2)]);
        assert!(s.contains(&[rat(-1), rat(3)]));
        assert!(feasible(&s));
    }

    #[test]
    fn boundedness_examples() {
        use Sense::*;
        let square = sys(
            2,
            &[(&[1, 0], Ge, 0), (&[1, 0], Le, 1), (&[0, 1], Ge, 0), (&[0, 1], Le, 1)],
        );
        assert!(bounded(&square).unwrap());
        assert!(!bounded(&sys(1, &[(&[1], Ge, 0)])).unwrap());
        // trapezoid x >= 0, y >= 0, y <= 1, x + y <= 2
        let trap = sys(
            2,
            &[(&[1, 0], Ge, 0), (&[0, 1], Ge, 0), (&[0, -1], Ge, -1), (&[-1, -1], Ge, -2)],
        );
        assert!(bounded(&trap).unwrap());
        assert!(matches!(
            bounded(&sys(1, &[(&[1], Le, 0), (&[1], Ge, 1)])),
            Err(Error::Infeasible)
        ));
    }

    #[test]
    fn empty_system_is_feasible_and_unbounded() {
        let s = IneqSystem::new(2);
        assert!(feasible(&s));
        assert!(!bounded(&s).unwrap());
        assert!(bounded(&IneqSystem::new(0)).unwrap());
    }

    #[test]
    fn dimension_checked() {
        let mut s = IneqSystem::new(2);
        assert!(s.push(vec![rat(1)], Sense::Ge, rat(0)).is_err());
    }
}
