//! The Chevalley–Eilenberg complex `C^p(g, V) = Hom(Λ^p g, V)` and its cohomology.
//!
//! A cochain of degree `p` is a vector of length `C(n, p) * dim V`; the entry
//! at `rank(I) * dim V + a` is the `a`-th coordinate of `f(e_I)`, where `I`
//! runs over increasing index tuples in lexicographic order.
//!
//! The differential is the Koszul formula
//!
//! ```text
//! (δf)(x_0..x_p) = Σ_i (-1)^i x_i · f(.. x̂_i ..)
//!                + Σ_{i<j} (-1)^{i+j} f([x_i, x_j], .. x̂_i .. x̂_j ..)
//! ```
//!
//! In degree one with trivial coefficients this reduces to `(δf)(x, y) = -f([x, y])`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{image_basis, kernel_basis, rank, sign, Echelon, Matrix, Rational, Subspace};
use crate::rep::{trivial_rep, verify_rep, Representation};

/// Increasing `p`-tuples from `0..n` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    n: usize,
    p: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if p > n {
            return Err(Error::DegreeOutOfRange { degree: p, max: n });
        }
        let mut tuples = Vec::new();
        let mut cur = Vec::with_capacity(p);
        fill(n, p, 0, &mut cur, &mut tuples);
        let index = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Ok(Self { n, p, tuples, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn rank_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }
}

fn fill(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == p {
        out.push(cur.clone());
        return;
    }
    let remaining = p - cur.len();
    for i in start..=n - remaining {
        cur.push(i);
        fill(n, p, i + 1, cur, out);
        cur.pop();
    }
}

pub fn wedge_basis(n: usize, p: usize) -> Result<WedgeBasis> {
    WedgeBasis::new(n, p)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Matrix of `δ: C^p(g, V) -> C^{p+1}(g, V)`. For `p = n` this is the map to
/// the zero space.
pub fn differential(l: &LieAlgebra, v: &Representation, p: usize) -> Result<Matrix> {
    check_module(l, v)?;
    if p > l.dim() {
        return Err(Error::DegreeOutOfRange { degree: p, max: l.dim() });
    }
    Ok(assemble(l, v, p))
}

fn check_module(l: &LieAlgebra, v: &Representation) -> Result<()> {
    if v.algebra().dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            context: "module over a different algebra".into(),
            expected: l.dim(),
            found: v.algebra().dim(),
        });
    }
    let bad = verify_rep(v);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::NotRepresentation { pairs: bad })
    }
}

fn assemble(l: &LieAlgebra, v: &Representation, p: usize) -> Matrix {
    let n = l.dim();
    let m = v.dim();
    let src = WedgeBasis::new(n, p).expect("p <= n");
    if p == n {
        return Matrix::zeros(0, src.len() * m);
    }
    let dst = WedgeBasis::new(n, p + 1).expect("p + 1 <= n");
    let mut d = Matrix::zeros(dst.len() * m, src.len() * m);
    for (row, tuple) in dst.tuples().iter().enumerate() {
        // action terms
        for i in 0..=p {
            let rest: Vec<usize> = omit(tuple, &[i]);
            let col = src.rank_of(&rest).expect("sub-tuple is increasing");
            let act = v.action(tuple[i]);
            let s = sign(i);
            for b in 0..m {
                for a in 0..m {
                    let x = &act[(b, a)];
                    if !x.is_zero() {
                        d[(row * m + b, col * m + a)] += &s * x;
                    }
                }
            }
        }
        // bracket-insertion terms
        for i in 0..=p {
            for j in i + 1..=p {
                let br = l.bracket_basis(tuple[i], tuple[j]);
                let rest = omit(tuple, &[i, j]);
                let s = sign(i + j);
                for (k, c) in br.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let Some((sorted, pos)) = insert_sorted(&rest, k) else {
                        continue;
                    };
                    let col = src.rank_of(&sorted).expect("increasing");
                    let coef = &s * sign(pos) * c;
                    for a in 0..m {
                        d[(row * m + a, col * m + a)] += &coef;
                    }
                }
            }
        }
    }
    d
}

fn omit(tuple: &[usize], positions: &[usize]) -> Vec<usize> {
    tuple
        .iter()
        .enumerate()
        .filter(|(i, _)| !positions.contains(i))
        .map(|(_, &x)| x)
        .collect()
}

/// Inserts `k` into an increasing tuple; returns the tuple and the position
/// `k` landed at, or `None` if `k` is already present.
fn insert_sorted(tuple: &[usize], k: usize) -> Option<(Vec<usize>, usize)> {
    match tuple.binary_search(&k) {
        Ok(_) => None,
        Err(pos) => {
            let mut t = tuple.to_vec();
            t.insert(pos, k);
            Some((t, pos))
        }
    }
}

/// A finite cochain complex given by its differentials `D_p: C^p -> C^{p+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if differentials.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                context: "number of differentials".into(),
                expected: dims.len(),
                found: differentials.len(),
            });
        }
        for (p, d) in differentials.iter().enumerate() {
            let next = dims.get(p + 1).copied().unwrap_or(0);
            if d.cols() != dims[p] || d.rows() != next {
                return Err(Error::DimensionMismatch {
                    context: format!("differential in degree {p}"),
                    expected: dims[p],
                    found: d.cols(),
                });
            }
        }
        Ok(Self { dims, differentials })
    }

    /// Top degree.
    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, p: usize) -> &Matrix {
        &self.differentials[p]
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }
}

/// The full complex `C^*(g, V)`, degrees `0..=dim g`.
pub fn ce_complex(l: &LieAlgebra, v: &Representation) -> Result<CochainComplex> {
    check_module(l, v)?;
    let n = l.dim();
    let dims = (0..=n).map(|p| binomial(n, p) * v.dim()).collect();
    let diffs = (0..=n).map(|p| assemble(l, v, p)).collect();
    CochainComplex::new(dims, diffs)
}

/// True iff `D_{p+1} D_p = 0` for every `p`.
pub fn verify_chain(c: &CochainComplex) -> bool {
    c.differentials
        .windows(2)
        .all(|w| w[1].mul(&w[0]).map(|m| m.is_zero()).unwrap_or(false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub degree: usize,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representatives {
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    /// Cocycles reduced modulo the coboundary echelon basis, one per class.
    pub classes: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeDims>,
    pub representatives: Option<Vec<Representatives>>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.cohomology).collect()
    }

    pub fn degree(&self, p: usize) -> &DegreeDims {
        &self.degrees[p]
    }
}

/// Cohomology dimensions of any finite complex by rank–nullity.
pub fn cohomology_of(c: &CochainComplex, with_representatives: bool) -> CohomologyReport {
    let ranks: Vec<usize> = c.differentials.iter().map(rank).collect();
    let degrees = (0..c.dims.len())
        .map(|p| degree_dims(p, c.dims[p], ranks[p], if p == 0 { 0 } else { ranks[p - 1] }))
        .collect();
    let representatives = with_representatives.then(|| {
        (0..c.dims.len())
            .map(|p| {
                let prev = (p > 0).then(|| &c.differentials[p - 1]);
                representatives(&c.differentials[p], prev, c.dims[p])
            })
            .collect()
    });
    CohomologyReport {
        degrees,
        representatives,
    }
}

fn degree_dims(p: usize, cochains: usize, rank_out: usize, rank_in: usize) -> DegreeDims {
    let cocycles = cochains - rank_out;
    DegreeDims {
        degree: p,
        cochains,
        cocycles,
        coboundaries: rank_in,
        cohomology: cocycles - rank_in,
    }
}

pub(crate) fn representatives(d_out: &Matrix, d_in: Option<&Matrix>, dim: usize) -> Representatives {
    let cocycles = kernel_basis(d_out);
    let coboundaries = d_in.map_or_else(|| Subspace::zero(dim), image_basis);
    let mut ech: Echelon = coboundaries.echelon();
    let mut classes = Vec::new();
    for z in cocycles.vectors() {
        let r = ech.residue(&z);
        if ech.push(&r) {
            classes.push(r);
        }
    }
    Representatives {
        cocycles,
        coboundaries,
        classes,
    }
}

/// `H^*(g, V)` for all degrees.
pub fn cohomology(l: &LieAlgebra, v: &Representation, with_representatives: bool) -> Result<CohomologyReport> {
    Ok(cohomology_of(&ce_complex(l, v)?, with_representatives))
}

/// Dimensions in a single degree, assembling only `D_{p-1}` and `D_p`.
pub fn cohomology_in_degree(l: &LieAlgebra, v: &Representation, p: usize) -> Result<DegreeDims> {
    let d_out = differential(l, v, p)?;
    let rank_in = if p == 0 { 0 } else { rank(&assemble(l, v, p - 1)) };
    Ok(degree_dims(p, d_out.cols(), rank(&d_out), rank_in))
}

/// `dim H^p(g, Q)` for `p = 0..=dim g`.
pub fn betti(l: &LieAlgebra) -> Vec<usize> {
    cohomology(l, &trivial_rep(l, 1), false)
        .expect("trivial module is a representation")
        .dims()
}

/// `Σ (-1)^p dim C^p == Σ (-1)^p dim H^p`.
pub fn euler_check(c: &CochainComplex) -> bool {
    let report = cohomology_of(c, false);
    let alt = |xs: &mut dyn Iterator<Item = usize>| {
        xs.enumerate()
            .map(|(p, d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum::<i64>()
    };
    alt(&mut c.dims.iter().copied()) == alt(&mut report.degrees.iter().map(|d| d.cohomology))
}

/// Value of a `p`-cochain on arbitrary arguments, by multilinear expansion
/// and antisymmetry.
pub fn eval_cochain(
    f: &[Rational],
    n: usize,
    m: usize,
    args: &[Vec<Rational>],
) -> Vec<Rational> {
    let basis = WedgeBasis::new(n, args.len()).expect("degree within range");
    let mut out = vec![Rational::zero(); m];
    let supports: Vec<Vec<usize>> = args
        .iter()
        .map(|a| (0..n).filter(|&i| !a[i].is_zero()).collect())
        .collect();
    let mut idx = vec![0usize; args.len()];
    expand(f, m, args, &supports, &basis, 0, &mut idx, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn expand(
    f: &[Rational],
    m: usize,
    args: &[Vec<Rational>],
    supports: &[Vec<usize>],
    basis: &WedgeBasis,
    depth: usize,
    idx: &mut Vec<usize>,
    out: &mut [Rational],
) {
    if depth == args.len() {
        let Some((sorted, parity)) = sort_with_parity(idx) else {
            return;
        };
        let coef = idx
            .iter()
            .zip(args)
            .fold(sign(parity), |acc, (&i, a)| acc * &a[i]);
        let col = basis.rank_of(&sorted).expect("increasing");
        for a in 0..m {
            let x = &f[col * m + a];
            if !x.is_zero() {
                out[a] += &coef * x;
            }
        }
        return;
    }
    for &i in &supports[depth] {
        idx[depth] = i;
        expand(f, m, args, supports, basis, depth + 1, idx, out);
    }
}

/// Sorts indices, returning the number of transpositions used, or `None` on a repeat.
fn sort_with_parity(idx: &[usize]) -> Option<(Vec<usize>, usize)> {
    let mut v = idx.to_vec();
    let mut swaps = 0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, swaps))
}

/// `δf` evaluated term by term from the Koszul formula on every basis
/// `(p+1)`-tuple, without assembling a differential matrix.
pub fn koszul_eval(f: &[Rational], l: &LieAlgebra, v: &Representation, p: usize) -> Result<Vec<Rational>> {
    let n = l.dim();
    let m = v.dim();
    let expected = binomial(n, p) * m;
    if f.len() != expected || p > n {
        return Err(Error::DimensionMismatch {
            context: format!("cochain of degree {p}"),
            expected,
            found: f.len(),
        });
    }
    if p == n {
        return Ok(Vec::new());
    }
    let e = |i: usize| crate::linalg::unit(n, i);
    let dst = WedgeBasis::new(n, p + 1)?;
    let mut out = Vec::with_capacity(dst.len() * m);
    for tuple in dst.tuples() {
        let xs: Vec<Vec<Rational>> = tuple.iter().map(|&i| e(i)).collect();
        let mut val = vec![Rational::zero(); m];
        for i in 0..=p {
            let rest: Vec<Vec<Rational>> = omit_vecs(&xs, &[i]);
            let fx = eval_cochain(f, n, m, &rest);
            let acted = v.action_of(&xs[i]).mul_vec(&fx)?;
            for (o, a) in val.iter_mut().zip(acted) {
                *o += sign(i) * a;
            }
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let mut args = vec![l.bracket(&xs[i], &xs[j])?];
                args.extend(omit_vecs(&xs, &[i, j]));
                let fx = eval_cochain(f, n, m, &args);
                for (o, a) in val.iter_mut().zip(fx) {
                    *o += sign(i + j) * a;
                }
            }
        }
        out.extend(val);
    }
    Ok(out)
}

fn omit_vecs(xs: &[Vec<Rational>], positions: &[usize]) -> Vec<Vec<Rational>> {
    xs.iter()
        .enumerate()
        .filter(|(i, _)| !positions.contains(i))
        .map(|(_, x)| x.clone())
        .collect()
}

/// Basis `(p+1)`-tuples where `δf` is nonzero, with the value there.
pub fn cocycle_check(
    f: &[Rational],
    l: &LieAlgebra,
    v: &Representation,
    p: usize,
) -> Result<Vec<(Vec<usize>, Vec<Rational>)>> {
    let df = koszul_eval(f, l, v, p)?;
    if p == l.dim() {
        return Ok(Vec::new());
    }
    let dst = WedgeBasis::new(l.dim(), p + 1)?;
    Ok(dst
        .tuples()
        .iter()
        .enumerate()
        .filter_map(|(r, t)| {
            let vals = df.get(r * v.dim()..(r + 1) * v.dim())?.to_vec();
            vals.iter().any(|x| !x.is_zero()).then(|| (t.clone(), vals))
        })
        .collect())
}

/// The sign `s` such that `(δf)(x, y) = s · f([x, y])` for 1-cochains with
/// trivial coefficients, read off the assembled differential of `h_3`.
pub fn degree_one_bracket_sign() -> Rational {
    let h3 = crate::catalog::heisenberg(1).expect("k = 1");
    let d = assemble(&h3, &trivial_rep(&h3, 1), 1);
    // column of Z*, row of X∧Y
    let s = d[(0, 2)].clone();
    debug_assert!(s == Rational::one() || s == -Rational::one());
    s
}
