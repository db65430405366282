//! Coefficient modules for cohomology.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Rational, Subspace};

/// A representation of `algebra` on `Q^dim`: one action matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: LieAlgebra,
    dim: usize,
    actions: Vec<Matrix>,
}

impl Representation {
    /// Wraps raw action matrices. Call [`verify_rep`] before trusting the result.
    pub fn from_actions(algebra: LieAlgebra, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        if actions.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "number of action matrices".into(),
                expected: algebra.dim(),
                found: actions.len(),
            });
        }
        for a in &actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch {
                    context: "action matrix shape".into(),
                    expected: dim,
                    found: a.rows().max(a.cols()),
                });
            }
        }
        Ok(Self {
            algebra,
            dim,
            actions,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub fn is_trivial(&self) -> bool {
        self.actions.iter().all(Matrix::is_zero)
    }

    /// Action of an arbitrary algebra element.
    pub fn action_of(&self, x: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (c, a) in x.iter().zip(&self.actions) {
            if !c.is_zero() {
                m = m.add(&a.scale(c)).expect("shapes agree");
            }
        }
        m
    }
}

pub fn trivial_rep(l: &LieAlgebra, m: usize) -> Representation {
    Representation {
        algebra: l.clone(),
        dim: m,
        actions: vec![Matrix::zeros(m, m); l.dim()],
    }
}

/// `ad(e_i)`, with column `j` holding `[e_i, e_j]`.
pub fn adjoint_rep(l: &LieAlgebra) -> Representation {
    let n = l.dim();
    let actions = (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(n, n);
            for j in 0..n {
                for (k, c) in l.bracket_basis(i, j).into_iter().enumerate() {
                    m[(k, j)] = c;
                }
            }
            m
        })
        .collect();
    Representation {
        algebra: l.clone(),
        dim: n,
        actions,
    }
}

/// `g/[g,g]` with its induced action, which is checked to vanish.
/// Also returns the projection `g -> g/[g,g]`.
pub fn abelianization_rep(l: &LieAlgebra) -> Result<(Representation, Matrix)> {
    let derived = l.derived_algebra();
    let comp = derived.complement_indices();
    let proj = crate::lie::projection_onto_complement(&derived, &comp);
    let m = comp.len();
    for i in 0..l.dim() {
        for (s, &c) in comp.iter().enumerate() {
            let image = proj.mul_vec(&l.bracket_basis(i, c))?;
            if image.iter().any(|x| !x.is_zero()) {
                return Err(Error::NotRepresentation { pairs: vec![(i, s)] });
            }
        }
    }
    Ok((trivial_rep(l, m), proj))
}

/// Restriction of `v` to the subalgebra spanned by `h`, re-expressed on the
/// echelon basis of `h`.
pub fn restrict_rep(l: &LieAlgebra, h: &Subspace, v: &Representation) -> Result<Representation> {
    let sub = l.subalgebra(h)?;
    let actions = h.vectors().iter().map(|x| v.action_of(x)).collect();
    Ok(Representation {
        algebra: sub,
        dim: v.dim,
        actions,
    })
}

/// Basis pairs `(i, j)`, `i < j`, where `rho([e_i,e_j]) != [rho(e_i), rho(e_j)]`.
pub fn verify_rep(v: &Representation) -> Vec<(usize, usize)> {
    let n = v.algebra.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = v.action_of(&v.algebra.bracket_basis(i, j));
            let (a, b) = (&v.actions[i], &v.actions[j]);
            let rhs = a
                .mul(b)
                .and_then(|ab| ab.sub(&b.mul(a)?))
                .expect("square matrices of equal size");
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// The coefficient choices exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Trivial(usize),
    Adjoint,
    Abelianization,
}

impl Coefficients {
    pub fn build(self, l: &LieAlgebra) -> Result<Representation> {
        Ok(match self {
            Coefficients::Trivial(m) => trivial_rep(l, m),
            Coefficients::Adjoint => adjoint_rep(l),
            Coefficients::Abelianization => abelianization_rep(l)?.0,
        })
    }
}

impl FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "adjoint" => Ok(Self::Adjoint),
            "abelianization" => Ok(Self::Abelianization),
            "trivial" => Ok(Self::Trivial(1)),
            _ => s
                .strip_prefix("trivial:")
                .and_then(|m| m.trim().parse().ok())
                .map(Self::Trivial)
                .ok_or_else(|| Error::UnknownCoefficients(s.to_string())),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Trivial(m) => write!(f, "trivial:{m}"),
            Coefficients::Adjoint => write!(f, "adjoint"),
            Coefficients::Abelianization => write!(f, "abelianization"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_algebra, heisenberg};
    use crate::linalg::int;

    #[test]
    fn trivial_modules() {
        let h3 = heisenberg(1).unwrap();
        let v = trivial_rep(&h3, 2);
        assert_eq!(v.actions().len(), 3);
        assert!(v.actions().iter().all(|a| a.is_zero() && a.rows() == 2));
        assert_eq!(trivial_rep(&h3, 0).dim(), 0);
        assert!(verify_rep(&trivial_rep(&builtin_algebra("n4").unwrap(), 1)).is_empty());
    }

    #[test]
    fn adjoint_modules() {
        assert!(adjoint_rep(&LieAlgebra::abelian(3)).is_trivial());
        let h3 = heisenberg(1).unwrap();
        let ad_x = adjoint_rep(&h3).action(0).clone();
        assert_eq!(ad_x, Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]));
        let n4 = builtin_algebra("n4").unwrap();
        let ad1 = adjoint_rep(&n4).action(0).clone();
        assert_eq!(ad1[(2, 1)], int(1));
        assert_eq!(ad1[(3, 2)], int(1));
        assert_eq!(ad1.transpose().row_vectors().iter().filter(|r| r.iter().any(|x| !x.is_zero())).count(), 2);
        assert!(verify_rep(&adjoint_rep(&heisenberg(2).unwrap())).is_empty());
    }

    #[test]
    fn abelianization_modules() {
        let (v, p) = abelianization_rep(&heisenberg(1).unwrap()).unwrap();
        assert_eq!(v.dim(), 2);
        assert!(v.is_trivial());
        assert_eq!(p, Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(abelianization_rep(&LieAlgebra::abelian(4)).unwrap().0.dim(), 4);
        assert_eq!(abelianization_rep(&heisenberg(2).unwrap()).unwrap().0.dim(), 4);
    }

    #[test]
    fn restriction() {
        let h3 = heisenberg(1).unwrap();
        let ad = adjoint_rep(&h3);
        let full = restrict_rep(&h3, &h3.full(), &ad).unwrap();
        assert_eq!(full.actions(), ad.actions());
        let z = restrict_rep(&h3, &h3.center(), &ad).unwrap();
        assert!(z.is_trivial());
        let triv = restrict_rep(&h3, &h3.center(), &trivial_rep(&h3, 3)).unwrap();
        assert!(triv.is_trivial());
        let not_sub = Subspace::coordinate(3, &[0, 1]).unwrap();
        assert!(matches!(restrict_rep(&h3, &not_sub, &ad), Err(Error::NotSubalgebra(0, 1))));
    }

    #[test]
    fn corrupted_adjoint_detected() {
        let h3 = heisenberg(1).unwrap();
        let mut actions = adjoint_rep(&h3).actions().to_vec();
        actions[0][(0, 0)] = int(1);
        let bad = Representation::from_actions(h3, 3, actions).unwrap();
        assert!(!verify_rep(&bad).is_empty());
    }

    #[test]
    fn parse_coefficients() {
        assert_eq!("trivial:3".parse::<Coefficients>().unwrap(), Coefficients::Trivial(3));
        assert_eq!("adjoint".parse::<Coefficients>().unwrap(), Coefficients::Adjoint);
        assert!("weird".parse::<Coefficients>().is_err());
        assert_eq!(Coefficients::Abelianization.to_string(), "abelianization");
    }
}
