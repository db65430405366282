//! The short exact sequence `0 -> C^*(g, h; V) -> C^*(g, V) -> C^*(h, V) -> 0`
//! of a Lie algebra with a subalgebra, and its long exact cohomology sequence.
//!
//! The relative complex is realized as the kernel of restriction, which makes
//! the sequence exact in every degree. The connecting map is the snake-lemma
//! map: lift a cocycle on `h` to `g` by extending it by zero on a complement,
//! apply the differential, and read the result as a relative cocycle.

use serde::Serialize;

use crate::complex::{ce_complex, representatives, CochainComplex, Representatives, WedgeBasis};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{inverse, kernel_basis, solve, unit, Echelon, Matrix, Rational, Subspace};
use crate::rep::{restrict_rep, verify_rep, Representation};

#[derive(Clone, Debug)]
pub struct PairSetup {
    algebra: LieAlgebra,
    sub: Subspace,
    module: Representation,
    sub_algebra: LieAlgebra,
    restricted: Representation,
}

impl PairSetup {
    pub fn new(algebra: &LieAlgebra, sub: &Subspace, module: &Representation) -> Result<Self> {
        let bad = verify_rep(module);
        if !bad.is_empty() {
            return Err(Error::NotRepresentation { pairs: bad });
        }
        let restricted = restrict_rep(algebra, sub, module)?;
        let bad = verify_rep(&restricted);
        if !bad.is_empty() {
            return Err(Error::NotRepresentation { pairs: bad });
        }
        Ok(Self {
            algebra: algebra.clone(),
            sub: sub.clone(),
            module: module.clone(),
            sub_algebra: restricted.algebra().clone(),
            restricted,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn subalgebra(&self) -> &Subspace {
        &self.sub
    }

    pub fn sub_algebra(&self) -> &LieAlgebra {
        &self.sub_algebra
    }

    pub fn restricted_module(&self) -> &Representation {
        &self.restricted
    }

    fn n(&self) -> usize {
        self.algebra.dim()
    }

    fn r(&self) -> usize {
        self.sub.dim()
    }

    fn m(&self) -> usize {
        self.module.dim()
    }

    /// Matrix of the pullback `C^p(g, V) -> C^p(h, V)`. Degrees above `dim h`
    /// map to the zero space.
    pub fn restriction_matrix(&self, p: usize) -> Result<Matrix> {
        let (n, r, m) = (self.n(), self.r(), self.m());
        let src = WedgeBasis::new(n, p)?;
        if p > r {
            return Ok(Matrix::zeros(0, src.len() * m));
        }
        let dst = WedgeBasis::new(r, p)?;
        let hb = self.sub.basis();
        let mut out = Matrix::zeros(dst.len() * m, src.len() * m);
        for (row, s) in dst.tuples().iter().enumerate() {
            for (col, i) in src.tuples().iter().enumerate() {
                let mut minor = Matrix::zeros(p, p);
                for (a, &sa) in s.iter().enumerate() {
                    for (b, &ib) in i.iter().enumerate() {
                        minor[(a, b)] = hb[(sa, ib)].clone();
                    }
                }
                let d = minor.det();
                if num_traits::Zero::is_zero(&d) {
                    continue;
                }
                for a in 0..m {
                    out[(row * m + a, col * m + a)] = d.clone();
                }
            }
        }
        Ok(out)
    }

    fn full_complex(&self) -> Result<CochainComplex> {
        ce_complex(&self.algebra, &self.module)
    }

    fn sub_complex(&self) -> Result<CochainComplex> {
        ce_complex(&self.sub_algebra, &self.restricted)
    }

    /// The kernel of restriction with its induced differential.
    pub fn relative_complex(&self) -> Result<RelativeComplex> {
        let full = self.full_complex()?;
        let n = self.n();
        let kernels: Vec<Subspace> = (0..=n)
            .map(|p| self.restriction_matrix(p).map(|r| kernel_basis(&r)))
            .collect::<Result<_>>()?;
        let mut diffs = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let d = full.differential(p);
            let target = kernels.get(p + 1);
            let rows = target.map_or(0, Subspace::dim);
            let mut induced = Matrix::zeros(rows, kernels[p].dim());
            for (c, k) in kernels[p].vectors().iter().enumerate() {
                let image = d.mul_vec(k)?;
                let Some(target) = target else { continue };
                let coords = target.coordinates(&image).ok_or(Error::RelativeClosure(p))?;
                for (r, x) in coords.into_iter().enumerate() {
                    induced[(r, c)] = x;
                }
            }
            diffs.push(induced);
        }
        let dims = kernels.iter().map(Subspace::dim).collect();
        Ok(RelativeComplex {
            kernels,
            complex: CochainComplex::new(dims, diffs)?,
        })
    }

    /// Complement of `h` spanned by the standard vectors outside its pivots.
    pub fn default_complement(&self) -> Vec<Vec<Rational>> {
        self.sub
            .complement_indices()
            .into_iter()
            .map(|i| unit(self.n(), i))
            .collect()
    }

    /// Extends a `p`-cochain on `h` to `g` by zero on `complement`.
    pub fn lift(&self, beta: &[Rational], p: usize, complement: &[Vec<Rational>]) -> Result<Vec<Rational>> {
        let (n, r, m) = (self.n(), self.r(), self.m());
        let mut adapted = self.sub.vectors();
        adapted.extend(complement.iter().cloned());
        let a = Matrix::from_rows(n, adapted)?;
        let b = inverse(&a).ok_or_else(|| Error::DimensionMismatch {
            context: "complement does not span a complement of the subalgebra".into(),
            expected: n,
            found: crate::linalg::rank(&a),
        })?;
        let src = WedgeBasis::new(n, p)?;
        let sub = WedgeBasis::new(r, p)?;
        let mut out = vec![num_traits::Zero::zero(); src.len() * m];
        for (row, i) in src.tuples().iter().enumerate() {
            for (col, s) in sub.tuples().iter().enumerate() {
                let mut minor = Matrix::zeros(p, p);
                for (x, &ix) in i.iter().enumerate() {
                    for (y, &sy) in s.iter().enumerate() {
                        minor[(x, y)] = b[(ix, sy)].clone();
                    }
                }
                let d = minor.det();
                if num_traits::Zero::is_zero(&d) {
                    continue;
                }
                for k in 0..m {
                    out[row * m + k] += &d * &beta[col * m + k];
                }
            }
        }
        Ok(out)
    }

    /// `δ(lift β)` in the coordinates of the relative cochains of degree `p + 1`.
    pub fn boundary_image(
        &self,
        rel: &RelativeComplex,
        beta: &[Rational],
        p: usize,
        complement: &[Vec<Rational>],
    ) -> Result<Vec<Rational>> {
        let n = self.n();
        if p >= n {
            return Ok(Vec::new());
        }
        let b = self.lift(beta, p, complement)?;
        let full = self.full_complex()?;
        let db = full.differential(p).mul_vec(&b)?;
        rel.kernels[p + 1]
            .coordinates(&db)
            .ok_or(Error::RelativeClosure(p))
    }

    /// Matrix of `∂: H^p(h, V) -> H^{p+1}(g, h; V)` in the class bases chosen by
    /// [`representatives`](crate::complex::representatives).
    pub fn connecting_map(&self, p: usize) -> Result<Matrix> {
        let rel = self.relative_complex()?;
        let sub = self.sub_complex()?;
        let src = sub_representatives(&sub, p);
        let n = self.n();
        if p >= n {
            return Ok(Matrix::zeros(0, src.classes.len()));
        }
        let tgt = rel.representatives(p + 1);
        let comp = self.default_complement();
        let mut cols = Vec::with_capacity(src.classes.len());
        for beta in &src.classes {
            let img = self.boundary_image(&rel, beta, p, &comp)?;
            cols.push(class_coordinates(&tgt, &img)?);
        }
        let mut out = Matrix::zeros(tgt.classes.len(), cols.len());
        for (c, col) in cols.into_iter().enumerate() {
            for (r, x) in col.into_iter().enumerate() {
                out[(r, c)] = x;
            }
        }
        Ok(out)
    }

    /// Whether the class of a cocycle `β` on `h` is the restriction of a
    /// cocycle on `g`, i.e. `i^* a - β` is a coboundary on `h` for some cocycle `a`.
    pub fn extends_to_cocycle(&self, beta: &[Rational], p: usize) -> Result<bool> {
        let full = self.full_complex()?;
        let sub = self.sub_complex()?;
        let z = kernel_basis(full.differential(p));
        let res = self.restriction_matrix(p)?;
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        for a in z.vectors() {
            columns.push(res.mul_vec(&a)?);
        }
        if p > 0 && p - 1 <= sub.top() {
            let d = sub.differential(p - 1);
            for c in 0..d.cols() {
                columns.push(d.column(c));
            }
        }
        let rows = beta.len();
        let mut a = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                a[(r, c)] = x.clone();
            }
        }
        Ok(solve(&a, beta).is_some())
    }

    /// Dimensions, induced-map ranks, and exactness at every node of the
    /// long exact sequence.
    pub fn les_table(&self) -> Result<LesTable> {
        let n = self.n();
        let full = self.full_complex()?;
        let sub = self.sub_complex()?;
        let rel = self.relative_complex()?;
        let comp = self.default_complement();

        let reps_g: Vec<Representatives> = (0..=n).map(|p| full_representatives(&full, p)).collect();
        let reps_h: Vec<Representatives> = (0..=n).map(|p| sub_representatives(&sub, p)).collect();
        let reps_rel: Vec<Representatives> = (0..=n).map(|p| rel.representatives(p)).collect();

        let mut rows = Vec::with_capacity(n + 1);
        let mut boundary_ranks = Vec::with_capacity(n + 1);
        for p in 0..=n {
            // j: H^p(rel) -> H^p(g)
            let j_images: Vec<Vec<Rational>> = reps_rel[p]
                .cocycles
                .vectors()
                .iter()
                .map(|k| rel.kernels[p].combine(k))
                .collect();
            let j_rank = induced_rank(&reps_g[p], &j_images);
            // i: H^p(g) -> H^p(h)
            let res = self.restriction_matrix(p)?;
            let i_images: Vec<Vec<Rational>> = reps_g[p]
                .cocycles
                .vectors()
                .iter()
                .map(|a| res.mul_vec(a))
                .collect::<Result<_>>()?;
            let i_rank = if p <= sub.top() {
                induced_rank(&reps_h[p], &i_images)
            } else {
                0
            };
            // ∂: H^p(h) -> H^{p+1}(rel)
            let d_rank = if p < n && p <= sub.top() {
                let images: Vec<Vec<Rational>> = reps_h[p]
                    .cocycles
                    .vectors()
                    .iter()
                    .map(|b| self.boundary_image(&rel, b, p, &comp))
                    .collect::<Result<_>>()?;
                induced_rank(&reps_rel[p + 1], &images)
            } else {
                0
            };
            boundary_ranks.push(d_rank);
            let c_g = full.dims()[p];
            let c_h = if p <= sub.top() { sub.dims()[p] } else { 0 };
            rows.push(LesRow {
                degree: p,
                cochains_rel: rel.complex.dims()[p],
                cochains_g: c_g,
                cochains_h: c_h,
                h_rel: reps_rel[p].classes.len(),
                h_g: reps_g[p].classes.len(),
                h_h: if p <= sub.top() { reps_h[p].classes.len() } else { 0 },
                restriction_rank: i_rank,
                inclusion_rank: j_rank,
                boundary_rank: d_rank,
                exact_at_rel: false,
                exact_at_g: false,
                exact_at_h: false,
            });
        }
        for p in 0..=n {
            let incoming = if p == 0 { 0 } else { boundary_ranks[p - 1] };
            let r = &mut rows[p];
            r.exact_at_rel = incoming + r.inclusion_rank == r.h_rel;
            r.exact_at_g = r.inclusion_rank + r.restriction_rank == r.h_g;
            r.exact_at_h = r.restriction_rank + r.boundary_rank == r.h_h;
        }
        Ok(LesTable { rows })
    }
}

fn full_representatives(c: &CochainComplex, p: usize) -> Representatives {
    let prev = (p > 0).then(|| c.differential(p - 1));
    representatives(c.differential(p), prev, c.dims()[p])
}

fn sub_representatives(c: &CochainComplex, p: usize) -> Representatives {
    if p > c.top() {
        return representatives(&Matrix::zeros(0, 0), None, 0);
    }
    full_representatives(c, p)
}

/// Rank of the map on cohomology induced by sending cocycles to `images`
/// (already cocycles of the target).
fn induced_rank(target: &Representatives, images: &[Vec<Rational>]) -> usize {
    let mut ech: Echelon = target.coboundaries.echelon();
    let base = ech.rank();
    for v in images {
        ech.push(v);
    }
    ech.rank() - base
}

/// Coordinates of the class of `z` in the chosen class basis.
fn class_coordinates(reps: &Representatives, z: &[Rational]) -> Result<Vec<Rational>> {
    let k = reps.classes.len();
    let mut cols: Vec<Vec<Rational>> = reps.classes.clone();
    cols.extend(reps.coboundaries.vectors());
    let mut a = Matrix::zeros(z.len(), cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            a[(r, c)] = x.clone();
        }
    }
    let x = solve(&a, z).ok_or(Error::RelativeClosure(0))?;
    Ok(x[..k].to_vec())
}

/// Relative cochains as kernels of restriction, with the induced differential
/// in kernel-basis coordinates.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    pub kernels: Vec<Subspace>,
    pub complex: CochainComplex,
}

impl RelativeComplex {
    pub fn representatives(&self, p: usize) -> Representatives {
        full_representatives(&self.complex, p)
    }

    /// `B^p` of the relative complex, in kernel coordinates.
    pub fn coboundaries(&self, p: usize) -> Subspace {
        self.representatives(p).coboundaries
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesRow {
    pub degree: usize,
    pub cochains_rel: usize,
    pub cochains_g: usize,
    pub cochains_h: usize,
    pub h_rel: usize,
    pub h_g: usize,
    pub h_h: usize,
    /// `H^p(g) -> H^p(h)`.
    pub restriction_rank: usize,
    /// `H^p(rel) -> H^p(g)`.
    pub inclusion_rank: usize,
    /// `H^p(h) -> H^{p+1}(rel)`.
    pub boundary_rank: usize,
    pub exact_at_rel: bool,
    pub exact_at_g: bool,
    pub exact_at_h: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesTable {
    pub rows: Vec<LesRow>,
}

impl LesTable {
    pub fn exact_everywhere(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.exact_at_rel && r.exact_at_g && r.exact_at_h)
    }

    /// `dim C^p(rel) + dim C^p(h) = dim C^p(g)` in every degree.
    pub fn short_exact_dims(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.cochains_rel + r.cochains_h == r.cochains_g)
    }
}
