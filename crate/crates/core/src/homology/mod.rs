//! Integer simplicial homology and the certificates built on it.
//!
//! Homology is unreduced and computed in degrees 0 through the dimension of
//! the complex. Betti numbers come from boundary ranks, torsion from the
//! invariant factors of the next boundary matrix up. Everything is exact.

mod snf;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::complex::{Complex, Simplex};

pub use snf::{smith_normal_form, Snf};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("operation requires a nonempty complex of dimension >= 0")]
    EmptyComplex,
    #[error("operation requires a pure complex")]
    NotPure,
}

/// Unreduced homology: `betti[k]` and `torsion[k]` describe degree `k`,
/// with torsion coefficients in divisibility order.
#[derive(Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub betti: Vec<u64>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    /// The profile of the sphere of dimension `dim` (unreduced); `dim = -1`
    /// gives the profile of the empty-simplex-only complex and `dim = 0`
    /// the two-point space.
    pub fn sphere(dim: i32) -> HomologyProfile {
        let betti = match dim {
            d if d < 0 => Vec::new(),
            0 => vec![2],
            d => {
                let mut b = vec![0u64; (d + 1) as usize];
                b[0] = 1;
                b[d as usize] = 1;
                b
            }
        };
        let torsion = vec![Vec::new(); betti.len()];
        HomologyProfile { betti, torsion }
    }

    /// The profile of a point (or anything with the homology of one) in
    /// top dimension `dim`.
    pub fn ball(dim: i32) -> HomologyProfile {
        let len = (dim.max(0) + 1) as usize;
        let mut betti = vec![0u64; len];
        if len > 0 {
            betti[0] = 1;
        }
        HomologyProfile {
            betti,
            torsion: vec![Vec::new(); len],
        }
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b=(")?;
        for (i, b) in self.betti.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")?;
        for (k, t) in self.torsion.iter().enumerate() {
            if !t.is_empty() {
                let parts: Vec<String> = t.iter().map(|d| d.to_string()).collect();
                write!(f, " torsion@{k}=[{}]", parts.join(","))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The boundary matrix from degree `d` to `d-1` as sparse triplets, with
/// rows and columns indexed by the sorted face lists of the complex.
pub fn boundary_matrix(k: &Complex, d: i32) -> (usize, usize, Vec<(usize, usize, BigInt)>) {
    let rows_faces = k.faces(d - 1);
    let cols_faces = k.faces(d);
    if d <= 0 {
        // Unreduced: the degree-0 boundary map is zero (and we never index
        // by the empty simplex).
        return (0, cols_faces.len(), Vec::new());
    }
    let row_index: HashMap<&Simplex, usize> =
        rows_faces.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut entries = Vec::with_capacity(cols_faces.len() * (d as usize + 1));
    for (j, s) in cols_faces.iter().enumerate() {
        for (pos, facet) in s.facets().enumerate() {
            let i = row_index[&facet];
            let sign = if pos % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            entries.push((i, j, sign));
        }
    }
    (rows_faces.len(), cols_faces.len(), entries)
}

/// Computes the homology profile of a complex. The void complex and the
/// empty-simplex-only complex have the empty profile.
pub fn homology(k: &Complex) -> HomologyProfile {
    let n = k.dim();
    if n < 0 {
        return HomologyProfile {
            betti: Vec::new(),
            torsion: Vec::new(),
        };
    }
    let n = n as usize;
    // ranks[d] = rank of the boundary map leaving degree d; snfs[d] holds
    // its invariant factors (torsion of degree d-1).
    let mut ranks = vec![0usize; n + 2];
    let mut snfs: Vec<Option<Snf>> = (0..n + 2).map(|_| None).collect();
    for d in 1..=n {
        let (r, c, entries) = boundary_matrix(k, d as i32);
        let snf = smith_normal_form(r, c, entries);
        ranks[d] = snf.rank;
        snfs[d] = Some(snf);
    }
    let mut betti = Vec::with_capacity(n + 1);
    let mut torsion = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let f_d = k.faces(d as i32).len() as u64;
        betti.push(f_d - ranks[d] as u64 - ranks[d + 1] as u64);
        torsion.push(
            snfs[d + 1]
                .as_ref()
                .map(|s| s.torsion())
                .unwrap_or_default(),
        );
    }
    HomologyProfile { betti, torsion }
}

#[derive(Debug, Clone)]
pub struct ManifoldReport {
    pub is_manifold: bool,
    /// A face whose link has the wrong homology, when not a manifold.
    pub witness: Option<Simplex>,
}

/// Checks whether every face link has the homology of a sphere of the
/// complementary dimension, which certifies a closed homology manifold.
/// Codimension-one and codimension-two links are handled by direct
/// combinatorial tests; deeper links get full homology computations.
pub fn is_homology_manifold(k: &Complex) -> Result<ManifoldReport, HomologyError> {
    link_certificate(k, false)
}

/// The with-boundary variant: every link must have the homology of either
/// a sphere or a ball of the complementary dimension.
pub fn is_homology_manifold_with_boundary(k: &Complex) -> Result<ManifoldReport, HomologyError> {
    link_certificate(k, true)
}

fn link_certificate(k: &Complex, allow_boundary: bool) -> Result<ManifoldReport, HomologyError> {
    if k.dim() < 0 {
        return Err(HomologyError::EmptyComplex);
    }
    if !k.is_pure() {
        return Err(HomologyError::NotPure);
    }
    let n = k.dim();
    for d in (0..n).rev() {
        for s in k.faces(d) {
            let ok = if d == n - 1 {
                let cofacets = k.maximal_cofaces(s).len();
                cofacets == 2 || (allow_boundary && cofacets == 1)
            } else if d == n - 2 {
                let lk = k.link(s).expect("face of the complex");
                circle_or_arc(&lk, allow_boundary)
            } else {
                let lk = k.link(s).expect("face of the complex");
                let profile = homology(&lk);
                profile == HomologyProfile::sphere(n - d - 1)
                    || (allow_boundary && profile == HomologyProfile::ball(n - d - 1))
            };
            if !ok {
                return Ok(ManifoldReport {
                    is_manifold: false,
                    witness: Some(s.clone()),
                });
            }
        }
    }
    Ok(ManifoldReport {
        is_manifold: true,
        witness: None,
    })
}

/// True when the graph is a single circle (or, if arcs are allowed, a
/// single path).
fn circle_or_arc(g: &Complex, allow_arc: bool) -> bool {
    if g.dim() != 1 || !g.is_pure() || !g.is_connected() {
        // A single cycle or path is pure 1-dimensional, except the
        // degenerate one-point path.
        return allow_arc && g.dim() == 0 && g.vertex_count() == 1;
    }
    let v = g.vertex_count() as u64;
    let e = g.faces(1).len() as u64;
    let degrees_ok = g.vertices().iter().all(|&u| {
        let deg = g.maximal_cofaces(&Simplex::vertex(u)).len();
        deg == 2 || (allow_arc && deg == 1)
    });
    degrees_ok && (e == v || (allow_arc && e + 1 == v))
}

/// Certifies a generalized homology sphere: a closed homology manifold of
/// dimension `n - 1` with the homology profile of the sphere. For `n = 0`
/// only the empty-simplex-only complex qualifies.
pub fn is_generalized_homology_sphere(k: &Complex, n: u32) -> bool {
    if n == 0 {
        return !k.is_void() && k.dim() == -1;
    }
    if k.dim() != n as i32 - 1 || !k.is_pure() {
        return false;
    }
    let report = match is_homology_manifold(k) {
        Ok(r) => r,
        Err(_) => return false,
    };
    report.is_manifold && homology(k) == HomologyProfile::sphere(n as i32 - 1)
}
