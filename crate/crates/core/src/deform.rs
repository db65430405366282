//! One-parameter families of brackets `[e_i, e_j]_t` with polynomial
//! structure constants, and what can be decided about them exactly.
//!
//! The Jacobi identity is checked symbolically in `t`, so a passing family is
//! a Lie algebra for every value of the parameter. Nilpotency and solvability
//! are only decided at sampled parameter values.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::complex::{cocycle_check, wedge_basis};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{fmt_rational, Rational};
use crate::poly::Poly;
use crate::rep::adjoint_rep;

/// Jacobi defect of a family on one basis triple, one polynomial per coordinate.
pub type FamilyDefect = ((usize, usize, usize), Vec<Poly>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationFamily {
    names: Vec<String>,
    sc_t: BTreeMap<(usize, usize), Vec<Poly>>,
}

impl DeformationFamily {
    /// Builds a family; the base point `t = 0` must satisfy Jacobi.
    pub fn new(names: Vec<String>, brackets: BTreeMap<(usize, usize), Vec<Poly>>) -> Result<Self> {
        let n = names.len();
        let mut sc_t = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= j || j >= n || v.len() != n {
                return Err(Error::DimensionMismatch {
                    context: format!("family bracket ({},{})", i + 1, j + 1),
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|p| !p.is_zero()) {
                sc_t.insert((i, j), v);
            }
        }
        let fam = Self { names, sc_t };
        fam.evaluate(&Rational::zero())?;
        Ok(fam)
    }

    /// The family that does not depend on `t`.
    pub fn constant(l: &LieAlgebra) -> Self {
        let sc_t = l
            .relations()
            .iter()
            .map(|(k, v)| (*k, v.iter().cloned().map(Poly::constant).collect()))
            .collect();
        Self {
            names: l.names().to_vec(),
            sc_t,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &BTreeMap<(usize, usize), Vec<Poly>> {
        &self.sc_t
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Vec<Poly> {
        let n = self.dim();
        if i == j {
            return vec![Poly::zero(); n];
        }
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.sc_t.get(&(a, b)) {
            Some(v) if neg => v.iter().map(|p| -p).collect(),
            Some(v) => v.clone(),
            None => vec![Poly::zero(); n],
        }
    }

    /// `[e_i, v]` for a vector of polynomials.
    fn bracket_with_basis(&self, i: usize, v: &[Poly]) -> Vec<Poly> {
        let n = self.dim();
        let mut out = vec![Poly::zero(); n];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.bracket_basis(i, k)) {
                if !b.is_zero() {
                    *o = &*o + &(c * &b);
                }
            }
        }
        out
    }

    /// Symbolic Jacobi defects. Empty iff the family is a Lie algebra for all `t`.
    pub fn family_jacobi(&self) -> Vec<FamilyDefect> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let terms = [
                        self.bracket_with_basis(i, &self.bracket_basis(j, k)),
                        self.bracket_with_basis(j, &self.bracket_basis(k, i)),
                        self.bracket_with_basis(k, &self.bracket_basis(i, j)),
                    ];
                    let sum: Vec<Poly> = (0..n)
                        .map(|c| terms.iter().fold(Poly::zero(), |acc, t| &acc + &t[c]))
                        .collect();
                    if sum.iter().any(|p| !p.is_zero()) {
                        out.push(((i, j, k), sum));
                    }
                }
            }
        }
        out
    }

    /// Exact substitution `t = t0`, validated against Jacobi.
    pub fn evaluate(&self, t0: &Rational) -> Result<LieAlgebra> {
        let sc = self
            .sc_t
            .iter()
            .map(|(k, v)| (*k, v.iter().map(|p| p.eval(t0)).collect()))
            .collect();
        LieAlgebra::new(self.names.clone(), sc).map_err(|e| match e {
            Error::Jacobi { .. } => Error::FamilyJacobiAt(fmt_rational(t0)),
            other => other,
        })
    }

    /// Lie-algebra classification at `t = t0`.
    pub fn classify_sample(&self, t0: &Rational) -> Result<SampleVerdict> {
        let l = self.evaluate(t0)?;
        Ok(SampleVerdict::of(t0.clone(), &l))
    }

    /// `α(e_i, e_j) = d/dt|_0 [e_i, e_j]_t` as a 2-cochain with adjoint
    /// coefficients, in the standard cochain layout.
    pub fn first_order_term(&self) -> Vec<Rational> {
        let n = self.dim();
        if n < 2 {
            return Vec::new();
        }
        let pairs = wedge_basis(n, 2).expect("n >= 2");
        let mut out = vec![Rational::zero(); pairs.len() * n];
        for ((i, j), v) in &self.sc_t {
            let r = pairs.rank_of(&[*i, *j]).expect("i < j");
            for (k, p) in v.iter().enumerate() {
                out[r * n + k] = p.derivative_at_zero();
            }
        }
        out
    }

    /// Cocycle defects of the first-order term in `C^2(g_0, g_0)`.
    pub fn check_infinitesimal(&self) -> Result<Vec<(Vec<usize>, Vec<Rational>)>> {
        let base = self.evaluate(&Rational::zero())?;
        if base.dim() < 2 {
            return Ok(Vec::new());
        }
        cocycle_check(&self.first_order_term(), &base, &adjoint_rep(&base), 2)
    }

    /// Per-sample verdicts compared against a claimed classification.
    pub fn audit(&self, samples: &[Rational], claim: Option<&Claim>) -> Result<FamilyAudit> {
        let defects = self.family_jacobi();
        let identically_lie = defects.is_empty();
        let infinitesimal = if identically_lie {
            Some(self.check_infinitesimal()?.is_empty())
        } else {
            None
        };
        let samples = samples
            .iter()
            .map(|t0| {
                let verdict = match self.evaluate(t0) {
                    Ok(l) => SampleVerdict::of(t0.clone(), &l),
                    Err(_) => SampleVerdict::invalid(t0.clone()),
                };
                let agrees = claim.map(|c| verdict.jacobi_ok && c.matches(&verdict.classification));
                SampleAudit { verdict, agrees }
            })
            .collect();
        Ok(FamilyAudit {
            jacobi_identically_zero: identically_lie,
            jacobi_defects: defects
                .iter()
                .map(|((i, j, k), v)| DefectRecord {
                    triple: [i + 1, j + 1, k + 1],
                    defect: v.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            first_order_term: fmt_cochain(&self.first_order_term(), self.dim()),
            first_order_is_cocycle: infinitesimal,
            claim: claim.map(ToString::to_string),
            samples,
        })
    }
}

/// Human form of an adjoint 2-cochain: `e2*∧e3* ⊗ (e4)` style entries.
fn fmt_cochain(alpha: &[Rational], n: usize) -> Vec<String> {
    if n < 2 {
        return Vec::new();
    }
    let pairs = wedge_basis(n, 2).expect("n >= 2");
    let mut out = Vec::new();
    for (r, t) in pairs.tuples().iter().enumerate() {
        let v = &alpha[r * n..(r + 1) * n];
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let value: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{}*e{}", fmt_rational(c), k + 1))
            .collect();
        out.push(format!("e{}*^e{}* (x) {}", t[0] + 1, t[1] + 1, value.join(" + ")));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification {
    Nilpotent { index: usize },
    SolvableNonNilpotent { derived_length: usize },
    NonSolvable,
}

impl Classification {
    pub fn of(l: &LieAlgebra) -> Self {
        match (l.nilpotency_class(), l.derived_length()) {
            (Some(index), _) => Classification::Nilpotent { index },
            (None, Some(derived_length)) => Classification::SolvableNonNilpotent { derived_length },
            (None, None) => Classification::NonSolvable,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Nilpotent { index } => write!(f, "nilpotent of index {index}"),
            Classification::SolvableNonNilpotent { derived_length } => {
                write!(f, "solvable, non-nilpotent (derived length {derived_length})")
            }
            Classification::NonSolvable => write!(f, "non-solvable"),
        }
    }
}

/// A claimed classification; a nilpotency index may be left open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Nilpotent(Option<usize>),
    SolvableNonNilpotent,
    NonSolvable,
}

impl Claim {
    pub fn matches(&self, c: &Classification) -> bool {
        match (self, c) {
            (Claim::Nilpotent(None), Classification::Nilpotent { .. }) => true,
            (Claim::Nilpotent(Some(s)), Classification::Nilpotent { index }) => s == index,
            (Claim::SolvableNonNilpotent, Classification::SolvableNonNilpotent { .. }) => true,
            (Claim::NonSolvable, Classification::NonSolvable) => true,
            _ => false,
        }
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "nilpotent" => return Ok(Claim::Nilpotent(None)),
            "solvable-non-nilpotent" => return Ok(Claim::SolvableNonNilpotent),
            "non-solvable" => return Ok(Claim::NonSolvable),
            _ => {}
        }
        t.strip_prefix("nilpotent(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|k| k.trim().parse().ok())
            .map(|k| Claim::Nilpotent(Some(k)))
            .ok_or_else(|| Error::UnknownClassification(s.to_string()))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Nilpotent(None) => write!(f, "nilpotent"),
            Claim::Nilpotent(Some(k)) => write!(f, "nilpotent({k})"),
            Claim::SolvableNonNilpotent => write!(f, "solvable-non-nilpotent"),
            Claim::NonSolvable => write!(f, "non-solvable"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleVerdict {
    #[serde(serialize_with = "ser_rational")]
    pub t0: Rational,
    pub jacobi_ok: bool,
    pub classification: Classification,
    pub lower_central_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
}

impl SampleVerdict {
    pub fn of(t0: Rational, l: &LieAlgebra) -> Self {
        Self {
            t0,
            jacobi_ok: true,
            classification: Classification::of(l),
            lower_central_dims: l.lower_central_series().dims(),
            derived_dims: l.derived_series().dims(),
        }
    }

    fn invalid(t0: Rational) -> Self {
        Self {
            t0,
            jacobi_ok: false,
            classification: Classification::NonSolvable,
            lower_central_dims: Vec::new(),
            derived_dims: Vec::new(),
        }
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectRecord {
    pub triple: [usize; 3],
    pub defect: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleAudit {
    pub verdict: SampleVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyAudit {
    pub jacobi_identically_zero: bool,
    pub jacobi_defects: Vec<DefectRecord>,
    pub first_order_term: Vec<String>,
    /// `None` when the family fails Jacobi and no first-order statement is meaningful.
    pub first_order_is_cocycle: Option<bool>,
    pub claim: Option<String>,
    pub samples: Vec<SampleAudit>,
}

impl FamilyAudit {
    /// True when every sample agrees with the claim (or no claim was made).
    pub fn agrees(&self) -> Option<bool> {
        self.claim.as_ref()?;
        Some(self.samples.iter().all(|s| s.agrees == Some(true)))
    }
}

/// Default parameter samples.
pub fn default_samples() -> Vec<Rational> {
    use crate::linalg::{int, ratio};
    vec![int(1), ratio(1, 2), int(-1), int(2)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_algebra, heisenberg, n4_family, r4};
    use crate::complex::koszul_eval;
    use crate::linalg::{int, ratio};

    #[test]
    fn n4_family_is_lie_for_all_t() {
        assert!(n4_family().family_jacobi().is_empty());
        let c = DeformationFamily::constant(&heisenberg(2).unwrap());
        assert!(c.family_jacobi().is_empty());
    }

    #[test]
    fn corrupted_family_detected() {
        let h3 = heisenberg(1).unwrap();
        let mut sc: BTreeMap<_, _> = DeformationFamily::constant(&h3).relations().clone();
        sc.insert((0, 2), vec![Poly::t(), Poly::zero(), Poly::zero()]);
        let fam = DeformationFamily::new(h3.names().to_vec(), sc).unwrap();
        let defects = fam.family_jacobi();
        assert_eq!(defects.len(), 1);
        assert_eq!(defects[0].0, (0, 1, 2));
        assert!(fam.evaluate(&int(1)).is_err());
        assert!(fam.evaluate(&int(0)).is_ok());
    }

    #[test]
    fn evaluation() {
        let f = n4_family();
        assert!(f.evaluate(&int(0)).unwrap().same_relations(&builtin_algebra("n4").unwrap()));
        let at1 = f.evaluate(&int(1)).unwrap();
        assert_eq!(at1.bracket_basis(1, 2), crate::linalg::unit(4, 3));
        let h3 = heisenberg(1).unwrap();
        let c = DeformationFamily::constant(&h3);
        assert_eq!(c.evaluate(&ratio(7, 3)).unwrap(), h3);
    }

    #[test]
    fn sample_classification() {
        let f = n4_family();
        let v0 = f.classify_sample(&int(0)).unwrap();
        assert_eq!(v0.classification, Classification::Nilpotent { index: 3 });
        assert_eq!(v0.lower_central_dims, vec![4, 2, 1, 0]);
        let v1 = f.classify_sample(&int(1)).unwrap();
        assert_eq!(v1.classification, Classification::Nilpotent { index: 3 });
        let r = DeformationFamily::constant(&r4());
        assert_eq!(
            r.classify_sample(&int(5)).unwrap().classification,
            Classification::SolvableNonNilpotent { derived_length: 2 }
        );
    }

    #[test]
    fn first_order_terms() {
        let alpha = n4_family().first_order_term();
        // pair (2,3) has lex rank 3 among the six pairs of a 4-dim basis
        let mut expected = vec![int(0); 24];
        expected[3 * 4 + 3] = int(1);
        assert_eq!(alpha, expected);
        let c = DeformationFamily::constant(&heisenberg(1).unwrap());
        assert!(c.first_order_term().iter().all(Zero::is_zero));
    }

    #[test]
    fn infinitesimal_checks() {
        assert!(n4_family().check_infinitesimal().unwrap().is_empty());
        let c = DeformationFamily::constant(&heisenberg(2).unwrap());
        assert!(c.check_infinitesimal().unwrap().is_empty());
    }

    #[test]
    fn first_order_coefficient_of_jacobi_is_coboundary_of_alpha() {
        let f = n4_family();
        let base = f.evaluate(&int(0)).unwrap();
        let ad = adjoint_rep(&base);
        let d_alpha = koszul_eval(&f.first_order_term(), &base, &ad, 2).unwrap();
        let triples = wedge_basis(4, 3).unwrap();
        // defects vanish identically, so their t-coefficients are zero too
        assert!(f.family_jacobi().is_empty());
        assert!(d_alpha.iter().all(Zero::is_zero));
        assert_eq!(d_alpha.len(), triples.len() * 4);
    }

    #[test]
    fn audits() {
        let f = n4_family();
        let claim = Claim::SolvableNonNilpotent;
        let a = f.audit(&[int(1), ratio(1, 2), int(-1)], Some(&claim)).unwrap();
        assert_eq!(a.samples.len(), 3);
        assert!(a.samples.iter().all(|s| s.agrees == Some(false)));
        assert_eq!(a.agrees(), Some(false));

        let h3 = DeformationFamily::constant(&heisenberg(1).unwrap());
        let a = h3.audit(&[int(0)], Some(&Claim::Nilpotent(Some(2)))).unwrap();
        assert_eq!(a.agrees(), Some(true));

        let r = DeformationFamily::constant(&r4());
        let a = r.audit(&[int(0)], Some(&Claim::SolvableNonNilpotent)).unwrap();
        assert_eq!(a.agrees(), Some(true));
    }

    #[test]
    fn claim_parsing() {
        assert_eq!("nilpotent(3)".parse::<Claim>().unwrap(), Claim::Nilpotent(Some(3)));
        assert_eq!("Solvable-Non-Nilpotent".parse::<Claim>().unwrap(), Claim::SolvableNonNilpotent);
        assert!("abelian-ish".parse::<Claim>().is_err());
        assert_eq!(Claim::Nilpotent(Some(2)).to_string(), "nilpotent(2)");
    }

    #[test]
    fn verdict_invariant_under_rescaling() {
        let f = n4_family();
        let scales = [int(2), ratio(-1, 3), int(5), ratio(7, 2)];
        for t0 in default_samples() {
            let l = f.evaluate(&t0).unwrap();
            let scaled = l.rescaled(&scales);
            assert!(scaled.jacobi_defects().is_empty());
            assert_eq!(Classification::of(&l), Classification::of(&scaled));
        }
        let r = r4();
        assert_eq!(Classification::of(&r), Classification::of(&r.rescaled(&scales)));
    }
}
