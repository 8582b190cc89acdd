//! Small parametric families of complexes.
//!
//! Vertex numbering conventions are part of each generator's contract; the
//! pattern and surgery layers rely on them to name subcomplexes (grid
//! columns, boundary rings) without searching.

use super::{Complex, ComplexError, Simplex, Vertex};

/// The `p`-cycle on vertices `0..p` with edges `{i, i+1 mod p}`.
pub fn cycle(p: u32) -> Result<Complex, ComplexError> {
    if p < 3 {
        return Err(ComplexError::ParameterTooSmall {
            param: "cycle length",
            min: 3,
            got: p,
        });
    }
    Ok(Complex::from_maximal(
        (0..p).map(|i| Simplex::new([i, (i + 1) % p])),
    ))
}

/// The boundary of the `n`-simplex on vertices `0..=n`.
pub fn simplex_boundary(n: u32) -> Result<Complex, ComplexError> {
    if n < 1 {
        return Err(ComplexError::ParameterTooSmall {
            param: "simplex dimension",
            min: 1,
            got: n,
        });
    }
    let all = Simplex::new(0..=n);
    Ok(Complex::from_maximal(all.facets()))
}

/// The boundary of the `n`-dimensional cross-polytope: vertices `0..2n` with
/// antipodal pairs `{2i, 2i+1}`, one maximal simplex per choice of one
/// vertex from each pair. This is the `n`-fold join of `n` copies of the
/// two-point sphere.
pub fn cross_polytope_boundary(n: u32) -> Result<Complex, ComplexError> {
    if n < 1 {
        return Err(ComplexError::ParameterTooSmall {
            param: "cross-polytope dimension",
            min: 1,
            got: n,
        });
    }
    let mut gens = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        gens.push(Simplex::new((0..n).map(|i| 2 * i + ((mask >> i) & 1))));
    }
    Ok(Complex::from_maximal(gens))
}

/// Vertex `v(i, j)` of an `m x k` grid, row-major.
pub fn grid_vertex(k: u32, i: u32, j: u32) -> Vertex {
    i * k + j
}

/// The `m x k` grid torus: vertices `v(i,j) = i*k + j` for `i < m`,
/// `j < k`, each grid cell split along the main diagonal
/// `v(i,j) -- v(i+1,j+1)` (indices wrap). Needs `m, k >= 3` to stay
/// simplicial.
pub fn grid_torus(m: u32, k: u32) -> Result<Complex, ComplexError> {
    if m < 3 {
        return Err(ComplexError::ParameterTooSmall {
            param: "grid rows",
            min: 3,
            got: m,
        });
    }
    if k < 3 {
        return Err(ComplexError::ParameterTooSmall {
            param: "grid columns",
            min: 3,
            got: k,
        });
    }
    let v = |i: u32, j: u32| grid_vertex(k, i % m, j % k);
    let mut gens = Vec::with_capacity((2 * m * k) as usize);
    for i in 0..m {
        for j in 0..k {
            gens.push(Simplex::new([v(i, j), v(i + 1, j), v(i + 1, j + 1)]));
            gens.push(Simplex::new([v(i, j), v(i, j + 1), v(i + 1, j + 1)]));
        }
    }
    Ok(Complex::from_maximal(gens))
}

/// A 16-vertex Klein bottle: the 4 x 4 grid torus construction with the row
/// seam glued by the flip `(4, j) ~ (0, -j mod 4)`. The column `{v(i, 0)}`
/// closes up to a one-sided 4-cycle.
pub fn klein_bottle() -> Complex {
    let (m, k) = (4u32, 4u32);
    let v = |i: u32, j: u32| -> Vertex {
        let j = j % k;
        if i.is_multiple_of(m) && i > 0 {
            // Crossing the seam reverses the fiber direction.
            grid_vertex(k, 0, (k - j) % k)
        } else {
            grid_vertex(k, i % m, j)
        }
    };
    let mut gens = Vec::with_capacity((2 * m * k) as usize);
    for i in 0..m {
        for j in 0..k {
            gens.push(Simplex::new([v(i, j), v(i + 1, j), v(i + 1, j + 1)]));
            gens.push(Simplex::new([v(i, j), v(i, j + 1), v(i + 1, j + 1)]));
        }
    }
    Complex::from_maximal(gens)
}

/// A triangulated annulus: inner ring `0..m`, outer ring `m..2m`, `2m`
/// triangles. Both boundary circles are full subcomplexes.
pub fn annulus(m: u32) -> Result<Complex, ComplexError> {
    if m < 3 {
        return Err(ComplexError::ParameterTooSmall {
            param: "annulus ring length",
            min: 3,
            got: m,
        });
    }
    let mut gens = Vec::with_capacity(2 * m as usize);
    for i in 0..m {
        let j = (i + 1) % m;
        gens.push(Simplex::new([i, j, m + j]));
        gens.push(Simplex::new([i, m + i, m + j]));
    }
    Ok(Complex::from_maximal(gens))
}

/// The 5-vertex Moebius strip: triangles `{i, i+1, i+2}` mod 5. Its
/// boundary is the 5-cycle of the `{i, i+2}` edges.
pub fn mobius_strip() -> Complex {
    Complex::from_maximal((0..5u32).map(|i| Simplex::new([i, (i + 1) % 5, (i + 2) % 5])))
}

/// The 6-vertex triangulation of the projective plane (the icosahedron's
/// antipodal quotient).
pub fn projective_plane_6() -> Complex {
    Complex::from_maximal_vertices(vec![
        vec![0, 1, 4],
        vec![0, 1, 5],
        vec![0, 2, 3],
        vec![0, 2, 5],
        vec![0, 3, 4],
        vec![1, 2, 3],
        vec![1, 2, 4],
        vec![1, 3, 5],
        vec![2, 4, 5],
        vec![3, 4, 5],
    ])
}

/// A `p`-gon disk: rim `0..p` coned to the hub vertex `p`.
pub fn disk_polygon(p: u32) -> Result<Complex, ComplexError> {
    if p < 3 {
        return Err(ComplexError::ParameterTooSmall {
            param: "polygon sides",
            min: 3,
            got: p,
        });
    }
    Ok(Complex::from_maximal(
        (0..p).map(|i| Simplex::new([i, (i + 1) % p, p])),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::are_isomorphic;

    #[test]
    fn cycle_counts() {
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.f_vector(), &[1, 5, 5]);
        assert_eq!(c5.euler_characteristic(), 0);
        assert!(c5.is_closed_pseudomanifold());
        assert!(cycle(2).is_err());
    }

    #[test]
    fn simplex_boundary_counts() {
        let k = simplex_boundary(3).unwrap();
        assert_eq!(k.f_vector(), &[1, 4, 6, 4]);
        assert_eq!(k.euler_characteristic(), 2);
        assert!(simplex_boundary(0).is_err());
        let s0 = simplex_boundary(1).unwrap();
        assert_eq!(s0.f_vector(), &[1, 2]);
    }

    #[test]
    fn cross_polytope_is_join_of_zero_spheres() {
        let oct = cross_polytope_boundary(3).unwrap();
        assert_eq!(oct.f_vector(), &[1, 6, 12, 8]);
        assert_eq!(oct.euler_characteristic(), 2);
        let s0 = cross_polytope_boundary(1).unwrap();
        let join3 = s0.join(&s0).join(&s0);
        assert!(are_isomorphic(&oct, &join3));
        // The square is both cycle(4) and cross(2).
        assert!(are_isomorphic(
            &cross_polytope_boundary(2).unwrap(),
            &cycle(4).unwrap()
        ));
    }

    #[test]
    fn grid_torus_counts() {
        let t = grid_torus(3, 3).unwrap();
        assert_eq!(t.f_vector(), &[1, 9, 27, 18]);
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.is_closed_pseudomanifold());
        let t45 = grid_torus(4, 5).unwrap();
        assert_eq!(t45.euler_characteristic(), 0);
        assert!(t45.is_closed_pseudomanifold());
        assert!(grid_torus(2, 5).is_err());
    }

    #[test]
    fn klein_bottle_counts() {
        let k = klein_bottle();
        assert_eq!(k.f_vector(), &[1, 16, 48, 32]);
        assert_eq!(k.euler_characteristic(), 0);
        assert!(k.is_closed_pseudomanifold());
    }

    #[test]
    fn klein_bottle_column_is_full_cycle() {
        let k = klein_bottle();
        let column: std::collections::HashSet<Vertex> =
            (0..4).map(|i| grid_vertex(4, i, 0)).collect();
        let c = k.full_subcomplex(&column);
        assert!(are_isomorphic(&c, &cycle(4).unwrap()));
    }

    #[test]
    fn annulus_counts_and_boundary() {
        let a = annulus(4).unwrap();
        assert_eq!(a.f_vector(), &[1, 8, 16, 8]);
        assert_eq!(a.euler_characteristic(), 0);
        let b = a.boundary_subcomplex().unwrap();
        let comps = b.connected_components();
        assert_eq!(comps.len(), 2);
        for c in comps {
            assert!(are_isomorphic(&c, &cycle(4).unwrap()));
        }
    }

    #[test]
    fn mobius_strip_counts_and_boundary() {
        let m = mobius_strip();
        assert_eq!(m.f_vector(), &[1, 5, 10, 5]);
        assert_eq!(m.euler_characteristic(), 0);
        let b = m.boundary_subcomplex().unwrap();
        assert!(are_isomorphic(&b, &cycle(5).unwrap()));
    }

    #[test]
    fn projective_plane_counts() {
        let p = projective_plane_6();
        assert_eq!(p.f_vector(), &[1, 6, 15, 10]);
        assert_eq!(p.euler_characteristic(), 1);
        assert!(p.is_closed_pseudomanifold());
        // Every edge of the 1-skeleton is present: the complete graph K6.
        assert_eq!(p.faces(1).len(), 15);
    }

    #[test]
    fn disk_polygon_counts() {
        let d = disk_polygon(6).unwrap();
        assert_eq!(d.f_vector(), &[1, 7, 12, 6]);
        assert_eq!(d.euler_characteristic(), 1);
        assert!(are_isomorphic(
            &d.boundary_subcomplex().unwrap(),
            &cycle(6).unwrap()
        ));
    }
}
