//! Built-in algebras and families, the rigidity classifier, and the audit of
//! the published obstruction table.
//!
//! Claimed values are stored next to each entry exactly as published; the
//! audit recomputes everything and reports both numbers.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::cohomology_in_degree;
use crate::deform::DeformationFamily;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::int;
use crate::poly::Poly;
use crate::rep::abelianization_rep;

/// The thirteen keys of the catalog; `abelian(n)` accepts any `n`.
pub const CATALOG_KEYS: [&str; 13] = [
    "abelian(3)",
    "h3",
    "n4",
    "h3+R",
    "h5",
    "n5_1",
    "n5_2",
    "h3+h3",
    "h5+R",
    "n6_1",
    "n6_2",
    "r4",
    "family:n4_t",
];

/// Keys of the ten tabulated nilpotent algebras, in table order.
pub const TABLE1_KEYS: [&str; 10] = [
    "h3", "n4", "h3+R", "h5", "n5_1", "n5_2", "h3+h3", "h5+R", "n6_1", "n6_2",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RigidityClass {
    /// Admits a non-nilpotent solvable deformation.
    I,
    /// Rigid.
    II,
}

impl fmt::Display for RigidityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidityClass::I => write!(f, "Class I"),
            RigidityClass::II => write!(f, "Class II"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CatalogObject {
    Algebra(LieAlgebra),
    Family(DeformationFamily),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub object: CatalogObject,
    /// The table's relations column, verbatim, when the entry is a table row.
    pub table_relations: Option<&'static str>,
    pub paper_claimed_h2: Option<usize>,
    pub paper_claimed_class: Option<RigidityClass>,
    pub note: Option<&'static str>,
}

impl CatalogEntry {
    pub fn algebra(&self) -> Option<&LieAlgebra> {
        match &self.object {
            CatalogObject::Algebra(l) => Some(l),
            CatalogObject::Family(_) => None,
        }
    }

    pub fn family(&self) -> Option<&DeformationFamily> {
        match &self.object {
            CatalogObject::Family(f) => Some(f),
            CatalogObject::Algebra(_) => None,
        }
    }
}

/// `h_{2k+1}` on the basis `X_1..X_k, Y_1..Y_k, Z` with `[X_i, Y_i] = Z`.
pub fn heisenberg(k: usize) -> Result<LieAlgebra> {
    if k == 0 {
        return Err(Error::HeisenbergIndex);
    }
    let n = 2 * k + 1;
    let mut names: Vec<String> = Vec::with_capacity(n);
    if k == 1 {
        names.extend(["X", "Y", "Z"].map(String::from));
    } else {
        names.extend((1..=k).map(|i| format!("X{i}")));
        names.extend((1..=k).map(|i| format!("Y{i}")));
        names.push("Z".into());
    }
    let mut sc = BTreeMap::new();
    for i in 0..k {
        let mut z = vec![int(0); n];
        z[n - 1] = int(1);
        sc.insert((i, k + i), z);
    }
    LieAlgebra::new(names, sc)
}

/// Similarity algebra of the plane: dilation `d`, rotation `r`, translations
/// `p1, p2`.
pub fn r4() -> LieAlgebra {
    LieAlgebra::from_relations(
        &["d", "r", "p1", "p2"],
        &[
            (0, 2, &[(1, 2)]),
            (0, 3, &[(1, 3)]),
            (1, 2, &[(1, 3)]),
            (1, 3, &[(-1, 2)]),
        ],
    )
    .expect("similarity algebra satisfies Jacobi")
}

fn filiform(n: usize) -> LieAlgebra {
    let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let mut sc = BTreeMap::new();
    for j in 1..n - 1 {
        let mut v = vec![int(0); n];
        v[j + 1] = int(1);
        sc.insert((0, j), v);
    }
    LieAlgebra::new(names, sc).expect("model filiform algebra")
}

fn relations(n: usize, rel: &[(usize, usize, usize)]) -> LieAlgebra {
    let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let mut sc = BTreeMap::new();
    for &(i, j, k) in rel {
        let mut v = vec![int(0); n];
        v[k - 1] = int(1);
        sc.insert((i - 1, j - 1), v);
    }
    LieAlgebra::new(names, sc).expect("catalog relations satisfy Jacobi")
}

/// `n4` plus `[e2, e3] = t e4`.
pub fn n4_family() -> DeformationFamily {
    let base = filiform(4);
    let mut sc: BTreeMap<_, _> = DeformationFamily::constant(&base).relations().clone();
    let mut v = vec![Poly::default(); 4];
    v[3] = Poly::t();
    sc.insert((1, 2), v);
    DeformationFamily::new(base.names().to_vec(), sc).expect("base point is n4")
}

fn parse_abelian(key: &str) -> Option<usize> {
    key.strip_prefix("abelian(")?.strip_suffix(')')?.trim().parse().ok()
}

fn parse_heisenberg(key: &str) -> Option<usize> {
    key.strip_prefix("heisenberg(")?.strip_suffix(')')?.trim().parse().ok()
}

/// Algebra-valued catalog keys (everything except families).
pub fn builtin_algebra(key: &str) -> Result<LieAlgebra> {
    builtin(key)?
        .algebra()
        .cloned()
        .ok_or_else(|| Error::UnknownKey(key.to_string()))
}

pub fn builtin(key: &str) -> Result<CatalogEntry> {
    let plain = |key: &str, object| CatalogEntry {
        key: key.to_string(),
        object,
        table_relations: None,
        paper_claimed_h2: None,
        paper_claimed_class: None,
        note: None,
    };
    let row = |l: LieAlgebra, rel: &'static str, h2: usize, class: RigidityClass| CatalogEntry {
        key: key.to_string(),
        object: CatalogObject::Algebra(l),
        table_relations: Some(rel),
        paper_claimed_h2: Some(h2),
        paper_claimed_class: Some(class),
        note: None,
    };
    use RigidityClass::{I, II};
    let h3 = || heisenberg(1).expect("k = 1");
    let h5 = || heisenberg(2).expect("k = 2");
    let entry = match key {
        "h3" => row(h3(), "[X,Y]=Z", 1, II),
        "n4" => row(filiform(4), "[e1,e2]=e3, [e1,e3]=e4", 0, I),
        "h3+R" => row(h3().direct_sum(&LieAlgebra::abelian(1).with_names(vec!["T".into()])), "[X,Y]=Z", 1, II),
        "h5" => row(h5(), "[X_i,Y_j]=delta_ij Z (i,j <= 2)", 6, II),
        "n5_1" => row(relations(5, &[(1, 2, 4), (1, 3, 5)]), "[e1,e2]=e4, [e1,e3]=e5", 2, II),
        "n5_2" => row(filiform(5), "[e1,e2]=e3, [e1,e3]=e4, [e1,e4]=e5", 0, I),
        "h3+h3" => row(h3().direct_sum(&h3()), "[X,Y]=Z, [X',Y']=Z'", 2, II),
        "h5+R" => row(h5().direct_sum(&LieAlgebra::abelian(1).with_names(vec!["T".into()])), "[X_i,Y_j]=delta_ij Z", 6, II),
        "n6_1" => row(relations(6, &[(1, 2, 5), (3, 4, 6)]), "[e1,e2]=e5, [e3,e4]=e6", 2, II),
        "n6_2" => row(filiform(6), "[e1,e_j]=e_(j+1) (2 <= j <= 5)", 0, I),
        "r4" => CatalogEntry {
            note: Some("no brackets are published for r4; the similarity algebra of the plane is used"),
            ..plain(key, CatalogObject::Algebra(r4()))
        },
        "family:n4_t" => CatalogEntry {
            note: Some("n4 with the added relation [e2,e3] = t e4"),
            ..plain(key, CatalogObject::Family(n4_family()))
        },
        _ => {
            if let Some(n) = parse_abelian(key) {
                plain(key, CatalogObject::Algebra(LieAlgebra::abelian(n)))
            } else if let Some(k) = parse_heisenberg(key) {
                plain(key, CatalogObject::Algebra(heisenberg(k)?))
            } else {
                return Err(Error::UnknownKey(key.to_string()));
            }
        }
    };
    Ok(entry)
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityVerdict {
    pub class: RigidityClass,
    pub h2_dim: usize,
    pub warnings: Vec<String>,
}

/// Class II iff `dim H^2(g, g/[g,g]) != 0`. Hypothesis violations (abelian or
/// non-nilpotent input) are reported as warnings and the computation proceeds.
pub fn rigidity_class(l: &LieAlgebra) -> Result<RigidityVerdict> {
    let mut warnings = Vec::new();
    if l.is_abelian() {
        warnings.push("hypothesis violated: the algebra is abelian (criterion stated for non-abelian algebras)".into());
    }
    if l.nilpotency_class().is_none() {
        warnings.push("hypothesis violated: the algebra is not nilpotent".into());
    }
    let h2_dim = obstruction_dims(l)?.cohomology;
    let class = if h2_dim != 0 {
        RigidityClass::II
    } else {
        RigidityClass::I
    };
    Ok(RigidityVerdict {
        class,
        h2_dim,
        warnings,
    })
}

/// Degree-two dimensions of `C^*(g, g/[g,g])`.
pub fn obstruction_dims(l: &LieAlgebra) -> Result<crate::complex::DegreeDims> {
    let (v, _) = abelianization_rep(l)?;
    if l.dim() < 2 {
        return Ok(crate::complex::DegreeDims {
            degree: 2,
            cochains: 0,
            cocycles: 0,
            coboundaries: 0,
            cohomology: 0,
        });
    }
    cohomology_in_degree(l, &v, 2)
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditRow {
    pub label: String,
    pub dim: usize,
    pub computed_c2: usize,
    pub computed_z2: usize,
    pub computed_b2: usize,
    pub computed_h2: usize,
    pub computed_class: RigidityClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_h2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_class: Option<RigidityClass>,
    /// `k(2k-1)` for Heisenberg rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_h2: Option<usize>,
    /// `k(2k-1) + 2k` for Heisenberg rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_z2: Option<usize>,
    /// `2k` for Heisenberg rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_b2: Option<usize>,
    /// Every claimed number in the row equals the computed one.
    pub agrees: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Audit {
    pub rows: Vec<AuditRow>,
    /// Sign `s` in `(δf)(x,y) = s f([x,y])` produced by the general differential.
    pub degree_one_bracket_sign: i64,
    pub notes: Vec<String>,
}

/// Recomputes the obstruction column for the ten tabulated algebras and for
/// `h_{2k+1}`, `k = 1..=4`.
pub fn table1_audit() -> Result<Table1Audit> {
    let mut rows = Vec::new();
    for key in TABLE1_KEYS {
        let entry = builtin(key)?;
        let l = entry.algebra().expect("table rows are algebras");
        let d = obstruction_dims(l)?;
        let class = if d.cohomology != 0 {
            RigidityClass::II
        } else {
            RigidityClass::I
        };
        let mut notes = Vec::new();
        let h2_ok = entry.paper_claimed_h2 == Some(d.cohomology);
        let class_ok = entry.paper_claimed_class == Some(class);
        if let Some(p) = entry.paper_claimed_h2 {
            if !h2_ok {
                notes.push(format!("claimed H^2 dimension {p}, computed {}", d.cohomology));
            }
        }
        if let Some(c) = entry.paper_claimed_class {
            if !class_ok {
                notes.push(format!("claimed {c}, criterion gives {class}"));
            }
        }
        rows.push(AuditRow {
            label: key.to_string(),
            dim: l.dim(),
            computed_c2: d.cochains,
            computed_z2: d.cocycles,
            computed_b2: d.coboundaries,
            computed_h2: d.cohomology,
            computed_class: class,
            paper_h2: entry.paper_claimed_h2,
            paper_class: entry.paper_claimed_class,
            formula_h2: None,
            formula_z2: None,
            formula_b2: None,
            agrees: h2_ok && class_ok,
            notes,
        });
    }
    for k in 1..=4usize {
        let l = heisenberg(k)?;
        let d = obstruction_dims(&l)?;
        let (fh, fz, fb) = (k * (2 * k - 1), k * (2 * k - 1) + 2 * k, 2 * k);
        let mut notes = Vec::new();
        for (what, claimed, got) in [("H^2", fh, d.cohomology), ("Z^2", fz, d.cocycles), ("B^2", fb, d.coboundaries)] {
            if claimed != got {
                notes.push(format!("claimed dim {what} = {claimed}, computed {got}"));
            }
        }
        rows.push(AuditRow {
            label: format!("heisenberg({k})"),
            dim: l.dim(),
            computed_c2: d.cochains,
            computed_z2: d.cocycles,
            computed_b2: d.coboundaries,
            computed_h2: d.cohomology,
            computed_class: if d.cohomology != 0 {
                RigidityClass::II
            } else {
                RigidityClass::I
            },
            paper_h2: None,
            paper_class: None,
            formula_h2: Some(fh),
            formula_z2: Some(fz),
            formula_b2: Some(fb),
            agrees: notes.is_empty(),
            notes,
        });
    }
    let sign = crate::complex::degree_one_bracket_sign();
    Ok(Table1Audit {
        rows,
        degree_one_bracket_sign: if sign == int(1) { 1 } else { -1 },
        notes: vec![
            "Rigidity column mapping: Yes = Class II, No = Class I".into(),
            "computations are exact over Q; the claimed values are reported, not assumed".into(),
        ],
    })
}
