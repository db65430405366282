//! Lie algebras given by structure constants on a fixed basis.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit, Matrix, Rational, Subspace};

/// A finite-dimensional Lie algebra over `Q`.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; antisymmetry supplies the
/// rest and missing pairs are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    sc: BTreeMap<(usize, usize), Vec<Rational>>,
}

impl LieAlgebra {
    /// Builds and validates an algebra. Fails with [`Error::Jacobi`] listing
    /// the offending basis triples.
    pub fn new(names: Vec<String>, brackets: BTreeMap<(usize, usize), Vec<Rational>>) -> Result<Self> {
        let l = Self::new_unchecked(names, brackets)?;
        let defects = l.jacobi_defects();
        if !defects.is_empty() {
            return Err(Error::Jacobi {
                triples: defects.into_iter().map(|d| d.0).collect(),
            });
        }
        Ok(l)
    }

    /// Builds without the Jacobi check, so that diagnostics can report defects.
    /// Index and length checks still apply.
    pub fn new_unchecked(
        names: Vec<String>,
        brackets: BTreeMap<(usize, usize), Vec<Rational>>,
    ) -> Result<Self> {
        let n = names.len();
        let mut sc = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= j || j >= n {
                return Err(Error::DimensionMismatch {
                    context: format!("bracket index pair ({i},{j})"),
                    expected: n,
                    found: j.max(i),
                });
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    context: format!("bracket [e{},e{}]", i + 1, j + 1),
                    expected: n,
                    found: v.len(),
                });
            }
            if !is_zero_vec(&v) {
                sc.insert((i, j), v);
            }
        }
        Ok(Self { names, sc })
    }

    /// Builds from integer relations `[e_i, e_j] = sum c * e_k`, 0-based indices.
    pub fn from_relations(names: &[&str], relations: &[(usize, usize, &[(i64, usize)])]) -> Result<Self> {
        let n = names.len();
        let mut brackets = BTreeMap::new();
        for &(i, j, terms) in relations {
            let mut v = vec![Rational::zero(); n];
            for &(c, k) in terms {
                v[k] += crate::linalg::int(c);
            }
            brackets.insert((i, j), v);
        }
        Self::new(names.iter().map(|s| s.to_string()).collect(), brackets)
    }

    pub fn abelian(n: usize) -> Self {
        Self {
            names: default_names(n),
            sc: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        self.names = names;
        self
    }

    /// Nonzero structure vectors `[e_i, e_j]`, `i < j`.
    pub fn relations(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.sc
    }

    /// Same dimension and identical relation table, ignoring basis names.
    pub fn same_relations(&self, other: &LieAlgebra) -> bool {
        self.dim() == other.dim() && self.sc == other.sc
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.is_empty()
    }

    /// `[e_i, e_j]` for any pair of basis indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let n = self.dim();
        if i == j {
            return vec![Rational::zero(); n];
        }
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.sc.get(&(a, b)) {
            Some(v) if neg => v.iter().map(|x| -x).collect(),
            Some(v) => v.clone(),
            None => vec![Rational::zero(); n],
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim();
        for w in [u, v] {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "bracket argument".into(),
                    expected: n,
                    found: w.len(),
                });
            }
        }
        let mut out = vec![Rational::zero(); n];
        for ((i, j), c) in &self.sc {
            let coef = &u[*i] * &v[*j] - &u[*j] * &v[*i];
            if coef.is_zero() {
                continue;
            }
            for (o, ck) in out.iter_mut().zip(c) {
                if !ck.is_zero() {
                    *o += &coef * ck;
                }
            }
        }
        Ok(out)
    }

    /// Basis triples `i < j < k` whose cyclic Jacobi sum is nonzero, with the sum.
    pub fn jacobi_defects(&self) -> Vec<((usize, usize, usize), Vec<Rational>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let d = self.jacobi_sum(i, j, k);
                    if !is_zero_vec(&d) {
                        out.push(((i, j, k), d));
                    }
                }
            }
        }
        out
    }

    fn jacobi_sum(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let n = self.dim();
        let e = |a| unit(n, a);
        let term = |a: usize, b: usize, c: usize| {
            self.bracket(&e(a), &self.bracket_basis(b, c))
                .expect("dimensions agree")
        };
        let (a, b, c) = (term(i, j, k), term(j, k, i), term(k, i, j));
        a.into_iter()
            .zip(b)
            .zip(c)
            .map(|((x, y), z)| x + y + z)
            .collect()
    }

    /// Span of `[a, b]` over basis vectors `a` of `A` and `b` of `B`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for u in a.vectors() {
            for v in b.vectors() {
                vecs.push(self.bracket(&u, &v).expect("ambient dimension matches"));
            }
        }
        Subspace::span(self.dim(), vecs).expect("ambient dimension matches")
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// `[g, g]`.
    pub fn derived_algebra(&self) -> Subspace {
        self.product_space(&self.full(), &self.full())
    }

    pub fn lower_central_series(&self) -> SeriesResult {
        let full = self.full();
        self.series(SeriesKind::LowerCentral, |prev| self.product_space(&full, prev))
    }

    pub fn derived_series(&self) -> SeriesResult {
        self.series(SeriesKind::Derived, |prev| self.product_space(prev, prev))
    }

    fn series(&self, kind: SeriesKind, next: impl Fn(&Subspace) -> Subspace) -> SeriesResult {
        let mut terms = vec![self.full()];
        loop {
            let last = terms.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            let nxt = next(last);
            let repeated = nxt == *last;
            terms.push(nxt);
            if repeated {
                break;
            }
        }
        SeriesResult { kind, terms }
    }

    /// `{v : [v, e_i] = 0 for all i}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // rows indexed by (i, k): coefficient of e_k in [v, e_i] is sum_j v_j c_{j i}^k
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                let b = self.bracket_basis(j, i);
                for k in 0..n {
                    if !b[k].is_zero() {
                        m[(i * n + k, j)] = b[k].clone();
                    }
                }
            }
        }
        crate::linalg::kernel_basis(&m)
    }

    /// Least `s` with `g^s = 0`, or `None` when the algebra is not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        self.lower_central_series().vanishing_index()
    }

    /// Least `r` with `g^(r) = 0`, or `None` when the algebra is not solvable.
    pub fn derived_length(&self) -> Option<usize> {
        self.derived_series().vanishing_index()
    }

    /// Block sum with zero cross brackets. Colliding basis names on the right
    /// are primed.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        let mut names = self.names.clone();
        for name in &other.names {
            let mut nm = name.clone();
            while names.contains(&nm) {
                nm.push('\'');
            }
            names.push(nm);
        }
        let mut sc = BTreeMap::new();
        for ((i, j), v) in &self.sc {
            let mut w = v.clone();
            w.resize(n, Rational::zero());
            sc.insert((*i, *j), w);
        }
        for ((i, j), v) in &other.sc {
            let mut w = vec![Rational::zero(); n1];
            w.extend(v.iter().cloned());
            sc.insert((i + n1, j + n1), w);
        }
        LieAlgebra { names, sc }
    }

    /// Quotient by an ideal, on the standard basis vectors outside the ideal's
    /// pivot columns. Returns the quotient and the projection matrix.
    pub fn quotient_algebra(&self, ideal: &Subspace) -> Result<(LieAlgebra, Matrix)> {
        let n = self.dim();
        if ideal.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                context: "ideal".into(),
                expected: n,
                found: ideal.ambient_dim(),
            });
        }
        for i in 0..n {
            for (r, b) in ideal.vectors().iter().enumerate() {
                if !ideal.contains(&self.bracket(&unit(n, i), b)?) {
                    return Err(Error::NotIdeal(i, r));
                }
            }
        }
        let comp = ideal.complement_indices();
        let projection = projection_onto_complement(ideal, &comp);
        let mut sc = BTreeMap::new();
        for (a, &ca) in comp.iter().enumerate() {
            for (b, &cb) in comp.iter().enumerate().skip(a + 1) {
                let v = projection.mul_vec(&self.bracket_basis(ca, cb))?;
                if !is_zero_vec(&v) {
                    sc.insert((a, b), v);
                }
            }
        }
        let names = comp.iter().map(|&c| self.names[c].clone()).collect();
        Ok((LieAlgebra { names, sc }, projection))
    }

    /// The bracket-closed subspace `h` as an algebra on its echelon basis.
    pub fn subalgebra(&self, h: &Subspace) -> Result<LieAlgebra> {
        let n = self.dim();
        if h.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                context: "subalgebra".into(),
                expected: n,
                found: h.ambient_dim(),
            });
        }
        let basis = h.vectors();
        let mut sc = BTreeMap::new();
        for s in 0..basis.len() {
            for t in s + 1..basis.len() {
                let b = self.bracket(&basis[s], &basis[t])?;
                let coords = h.coordinates(&b).ok_or(Error::NotSubalgebra(s, t))?;
                if !is_zero_vec(&coords) {
                    sc.insert((s, t), coords);
                }
            }
        }
        let names = basis
            .iter()
            .enumerate()
            .map(|(s, v)| {
                let support: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
                match support.as_slice() {
                    [i] if v[*i] == num_traits::One::one() => self.names[*i].clone(),
                    _ => format!("h{}", s + 1),
                }
            })
            .collect();
        Ok(LieAlgebra { names, sc })
    }

    /// Structure constants after `e_i -> s_i e_i`.
    pub fn rescaled(&self, scales: &[Rational]) -> LieAlgebra {
        assert_eq!(scales.len(), self.dim());
        let sc = self
            .sc
            .iter()
            .map(|((i, j), v)| {
                let f = &scales[*i] * &scales[*j];
                let w = v.iter().zip(scales).map(|(c, s)| c * &f / s).collect();
                ((*i, *j), w)
            })
            .collect();
        LieAlgebra {
            names: self.names.clone(),
            sc,
        }
    }
}

/// Matrix of `Q^n -> Q^n / I` in the basis `comp` of standard vectors.
pub(crate) fn projection_onto_complement(ideal: &Subspace, comp: &[usize]) -> Matrix {
    let n = ideal.ambient_dim();
    let mut p = Matrix::zeros(comp.len(), n);
    for (s, &c) in comp.iter().enumerate() {
        p[(s, c)] = num_traits::One::one();
    }
    let basis = ideal.basis();
    for (r, &piv) in ideal.pivots().iter().enumerate() {
        // e_piv = row_r - sum_{j != piv} row_r[j] e_j, and row_r vanishes in the quotient
        for (s, &c) in comp.iter().enumerate() {
            let x = &basis[(r, c)];
            if !x.is_zero() {
                p[(s, piv)] = -x.clone();
            }
        }
    }
    p
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Terms of a characteristic series, starting with the whole algebra.
///
/// The sequence ends either at the zero subspace or with a repeated nonzero
/// term that witnesses stabilization.
#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
}

impl SeriesResult {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    /// Always true: iteration stops only at zero or on repetition.
    pub fn stabilized(&self) -> bool {
        true
    }

    /// Index of the zero term, if the series reaches zero.
    pub fn vanishing_index(&self) -> Option<usize> {
        self.terms.iter().position(|t| t.dim() == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_algebra, heisenberg, r4};
    use crate::linalg::int;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        unit(n, i)
    }

    fn n4() -> LieAlgebra {
        builtin_algebra("n4").unwrap()
    }

    #[test]
    fn heisenberg_bracket() {
        let h3 = heisenberg(1).unwrap();
        assert_eq!(h3.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        assert_eq!(h3.bracket(&e(3, 1), &e(3, 0)).unwrap(), vec![int(0), int(0), int(-1)]);
        let v = vec![int(2), int(-3), int(5)];
        assert!(is_zero_vec(&h3.bracket(&v, &v).unwrap()));
        assert!(h3.bracket(&v, &[int(1)]).is_err());
    }

    #[test]
    fn bracket_is_linear() {
        let l = n4();
        let e2_plus_e3: Vec<Rational> = vec![int(0), int(1), int(1), int(0)];
        let got = l.bracket(&e(4, 0), &e2_plus_e3).unwrap();
        assert_eq!(got, vec![int(0), int(0), int(1), int(1)]);
    }

    #[test]
    fn jacobi_on_examples() {
        assert!(heisenberg(2).unwrap().jacobi_defects().is_empty());
        assert!(builtin_algebra("n6_2").unwrap().jacobi_defects().is_empty());
        let two = LieAlgebra::from_relations(&["a", "b"], &[(0, 1, &[(1, 0)])]).unwrap();
        assert!(two.jacobi_defects().is_empty());
    }

    #[test]
    fn jacobi_failure_reported() {
        // [e1,e2]=e1, [e2,e3]=e2, [e1,e3]=e3 violates Jacobi
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![int(1), int(0), int(0)]);
        b.insert((1, 2), vec![int(0), int(1), int(0)]);
        b.insert((0, 2), vec![int(0), int(0), int(1)]);
        let bad = LieAlgebra::new_unchecked(default_names(3), b.clone()).unwrap();
        assert_eq!(bad.jacobi_defects().len(), 1);
        assert!(matches!(LieAlgebra::new(default_names(3), b), Err(Error::Jacobi { .. })));
    }

    #[test]
    fn product_spaces() {
        let h3 = heisenberg(1).unwrap();
        assert_eq!(h3.derived_algebra(), Subspace::coordinate(3, &[2]).unwrap());
        assert_eq!(h3.product_space(&h3.full(), &Subspace::zero(3)).dim(), 0);
        let l = n4();
        let s = Subspace::coordinate(4, &[2, 3]).unwrap();
        assert_eq!(l.product_space(&l.full(), &s), Subspace::coordinate(4, &[3]).unwrap());
    }

    #[test]
    fn series_examples() {
        assert_eq!(heisenberg(1).unwrap().lower_central_series().dims(), vec![3, 1, 0]);
        assert_eq!(LieAlgebra::abelian(5).lower_central_series().dims(), vec![5, 0]);
        assert_eq!(n4().lower_central_series().dims(), vec![4, 2, 1, 0]);
        assert_eq!(builtin_algebra("n6_2").unwrap().derived_series().dims(), vec![6, 4, 0]);
        assert_eq!(LieAlgebra::abelian(3).derived_series().dims(), vec![3, 0]);
        assert_eq!(r4().derived_series().dims(), vec![4, 2, 0]);
        assert_eq!(r4().lower_central_series().dims(), vec![4, 2, 2]);
    }

    #[test]
    fn centers() {
        assert_eq!(heisenberg(2).unwrap().center(), Subspace::coordinate(5, &[4]).unwrap());
        assert_eq!(LieAlgebra::abelian(3).center().dim(), 3);
        assert_eq!(n4().center(), Subspace::coordinate(4, &[3]).unwrap());
    }

    #[test]
    fn indices() {
        for k in 1..=3 {
            assert_eq!(heisenberg(k).unwrap().nilpotency_class(), Some(2));
        }
        assert_eq!(LieAlgebra::abelian(2).nilpotency_class(), Some(1));
        assert_eq!(r4().nilpotency_class(), None);
        assert_eq!(heisenberg(1).unwrap().derived_length(), Some(2));
        assert_eq!(LieAlgebra::abelian(4).derived_length(), Some(1));
        assert_eq!(builtin_algebra("n5_2").unwrap().derived_length(), Some(2));
        assert_eq!(r4().derived_length(), Some(2));
    }

    #[test]
    fn direct_sums() {
        let h3 = heisenberg(1).unwrap();
        let s = h3.direct_sum(&LieAlgebra::abelian(1));
        assert_eq!(s.dim(), 4);
        assert_eq!(s.center().dim(), 2);
        assert!(LieAlgebra::abelian(2).direct_sum(&LieAlgebra::abelian(3)).is_abelian());
        let hh = h3.direct_sum(&h3);
        assert_eq!(hh.dim(), 6);
        assert_eq!(hh.derived_algebra().dim(), 2);
        assert_eq!(hh.names()[3], "X'");
    }

    #[test]
    fn quotients() {
        let h3 = heisenberg(1).unwrap();
        let (q, p) = h3.quotient_algebra(&h3.center()).unwrap();
        assert!(q.is_abelian());
        assert_eq!((q.dim(), p.rows(), p.cols()), (2, 2, 3));

        let (q, _) = h3.quotient_algebra(&h3.full()).unwrap();
        assert_eq!(q.dim(), 0);

        let l = n4();
        let (q, _) = l.quotient_algebra(&Subspace::coordinate(4, &[3]).unwrap()).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.relations().len(), 1);
        assert_eq!(q.bracket_basis(0, 1), e(3, 2));
        assert!(q.jacobi_defects().is_empty());
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let l = n4();
        let err = l.quotient_algebra(&Subspace::coordinate(4, &[1]).unwrap());
        assert!(matches!(err, Err(Error::NotIdeal(..))));
    }

    #[test]
    fn projection_with_non_coordinate_ideal() {
        // ideal spanned by e3 + e4 in an abelian algebra
        let l = LieAlgebra::abelian(4);
        let i = Subspace::span(4, [vec![int(0), int(0), int(1), int(1)]]).unwrap();
        let (_, p) = l.quotient_algebra(&i).unwrap();
        let v = vec![int(0), int(0), int(1), int(1)];
        assert!(is_zero_vec(&p.mul_vec(&v).unwrap()));
        assert_eq!(crate::linalg::rank(&p), 3);
    }
}
