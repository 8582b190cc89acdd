//! Reflection doubles of patterned complexes.
//!
//! Doubling a patterned complex across a set of mirror facets glues
//! 2^m copies of the carrier, one per element of the group (Z/2)^m,
//! identifying the copies of a vertex across every mirror containing it.
//! With all facets of a complete pattern mirrored this produces the closed
//! manifold double; the quotient formula chi(double) = 2^m chi_orb ties
//! the doubles back to the orbifold Euler characteristic and is verified
//! here with exact arithmetic.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::complex::{Complex, Simplex, Vertex};
use crate::dyadic::Dyadic;
use crate::pattern::{PatternError, PatternedComplex};

pub const DEFAULT_MIRROR_LIMIT: u32 = 12;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("{0:?} is not a facet of the pattern")]
    UnknownFacet(String),
    #[error("mirror facet {0:?} listed twice")]
    DuplicateMirror(String),
    #[error("{count} mirrors exceed the limit of {limit} (2^m copies are materialized)")]
    TooManyMirrors { count: u32, limit: u32 },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// The double of a patterned complex across a set of mirror facets.
pub struct DoubledComplex {
    pub complex: Complex,
    /// Mirror facet names in bit order: bit i of a coset representative
    /// refers to `mirrors[i]`.
    pub mirrors: Vec<String>,
    /// Each vertex of the double is a pair (coset representative, original
    /// vertex); representatives are the minimal bitmasks in their coset.
    pub vertex_origin: Vec<(u32, Vertex)>,
    /// For each mirror, the involutive simplicial action it induces.
    pub actions: Vec<HashMap<Vertex, Vertex>>,
    /// For a complete pattern with every facet mirrored: whether every
    /// codimension-one face of the double lies in exactly two maximal
    /// simplices. `None` when the check does not apply.
    pub closed_check: Option<bool>,
}

fn mirror_masks(
    p: &PatternedComplex,
    mirrors: &[String],
) -> Result<Vec<String>, ConstructionError> {
    let mut sorted: Vec<String> = Vec::new();
    let mut seen: BTreeSet<&String> = BTreeSet::new();
    for name in mirrors {
        if !p.facets().contains_key(name) {
            return Err(ConstructionError::UnknownFacet(name.clone()));
        }
        if !seen.insert(name) {
            return Err(ConstructionError::DuplicateMirror(name.clone()));
        }
    }
    sorted.extend(seen.into_iter().cloned());
    Ok(sorted)
}

/// The facet names containing a vertex of the carrier.
pub fn vertex_stabilizer_set(p: &PatternedComplex, v: Vertex) -> Vec<String> {
    p.facets()
        .iter()
        .filter(|(_, f)| f.has_vertex(v))
        .map(|(name, _)| name.clone())
        .collect()
}

/// Builds the double of `p` across `mirrors` with the default size limit.
pub fn double(
    p: &PatternedComplex,
    mirrors: &[String],
) -> Result<DoubledComplex, ConstructionError> {
    double_with_limit(p, mirrors, DEFAULT_MIRROR_LIMIT)
}

pub fn double_with_limit(
    p: &PatternedComplex,
    mirrors: &[String],
    limit: u32,
) -> Result<DoubledComplex, ConstructionError> {
    let mirrors = mirror_masks(p, mirrors)?;
    let m = mirrors.len() as u32;
    if m > limit {
        return Err(ConstructionError::TooManyMirrors { count: m, limit });
    }

    // stab[v] = bitmask of mirrors containing v.
    let mut stab: HashMap<Vertex, u32> =
        p.carrier().vertices().iter().map(|&v| (v, 0u32)).collect();
    for (i, name) in mirrors.iter().enumerate() {
        for &v in p.facets()[name].vertices() {
            *stab.get_mut(&v).expect("facet vertex lies in the carrier") |= 1 << i;
        }
    }

    // Vertices of the double: (g, v) with g a minimal coset representative,
    // labeled in lexicographic (g, v) order.
    let mut vertex_origin: Vec<(u32, Vertex)> = Vec::new();
    for g in 0..(1u32 << m) {
        for &v in p.carrier().vertices() {
            if g & stab[&v] == 0 {
                vertex_origin.push((g, v));
            }
        }
    }
    vertex_origin.sort_unstable();
    let index: HashMap<(u32, Vertex), Vertex> = vertex_origin
        .iter()
        .enumerate()
        .map(|(i, &gv)| (gv, i as Vertex))
        .collect();

    // One copy of each maximal simplex per coset of its own stabilizer.
    let mask = ((1u64 << m) - 1) as u32;
    let mut gens: Vec<Simplex> = Vec::new();
    for s in p.carrier().maximal_simplices() {
        let stab_s = s.vertices().iter().fold(mask, |acc, v| acc & stab[v]);
        // Walk the subsets of the complement of stab_s: the minimal coset
        // representatives of the simplex stabilizer.
        let comp = mask & !stab_s;
        let mut g = comp;
        loop {
            gens.push(Simplex::new(
                s.vertices().iter().map(|&v| index[&(g & !stab[&v], v)]),
            ));
            if g == 0 {
                break;
            }
            g = (g - 1) & comp;
        }
    }
    let complex = Complex::from_maximal(gens);

    // Generator actions: s_i sends (g, v) to the representative of
    // (g xor e_i) G_{S(v)}.
    let mut actions: Vec<HashMap<Vertex, Vertex>> = Vec::new();
    for i in 0..m {
        let map: HashMap<Vertex, Vertex> = vertex_origin
            .iter()
            .enumerate()
            .map(|(idx, &(g, v))| (idx as Vertex, index[&((g ^ (1 << i)) & !stab[&v], v)]))
            .collect();
        actions.push(map);
    }

    let closed_check = if p.is_complete() && m as usize == p.facets().len() {
        Some(p.dim() == 0 || complex.codim1_counts().iter().all(|&(_, c)| c == 2))
    } else {
        None
    };

    Ok(DoubledComplex {
        complex,
        mirrors,
        vertex_origin,
        actions,
        closed_check,
    })
}

/// The boundary pattern induced on a double: each facet of `p` that was
/// not mirrored lifts to its preimage in the double, split into connected
/// components. A facet lifting to one component keeps its name; one
/// lifting to several gets `.0`, `.1`, ... suffixes in order of minimal
/// vertex.
pub fn lifted_pattern(
    p: &PatternedComplex,
    d: &DoubledComplex,
) -> Result<PatternedComplex, ConstructionError> {
    let index: HashMap<(u32, Vertex), Vertex> = d
        .vertex_origin
        .iter()
        .enumerate()
        .map(|(i, &gv)| (gv, i as Vertex))
        .collect();
    let mut stab: HashMap<Vertex, u32> =
        p.carrier().vertices().iter().map(|&v| (v, 0u32)).collect();
    for (i, name) in d.mirrors.iter().enumerate() {
        for &v in p.facets()[name].vertices() {
            *stab.get_mut(&v).expect("facet vertex lies in the carrier") |= 1 << i;
        }
    }
    let mask = ((1u64 << d.mirrors.len()) - 1) as u32;

    let mut facets: Vec<(String, Complex)> = Vec::new();
    for (name, f) in p.facets() {
        if d.mirrors.contains(name) {
            continue;
        }
        let mut gens: Vec<Simplex> = Vec::new();
        for s in f.maximal_simplices() {
            let stab_s = s.vertices().iter().fold(mask, |acc, v| acc & stab[v]);
            let comp = mask & !stab_s;
            let mut g = comp;
            loop {
                gens.push(Simplex::new(
                    s.vertices().iter().map(|&v| index[&(g & !stab[&v], v)]),
                ));
                if g == 0 {
                    break;
                }
                g = (g - 1) & comp;
            }
        }
        let preimage = Complex::from_maximal(gens);
        let components = preimage.connected_components();
        if components.len() == 1 {
            facets.push((name.clone(), preimage));
        } else {
            for (i, c) in components.into_iter().enumerate() {
                facets.push((format!("{name}.{i}"), c));
            }
        }
    }
    Ok(PatternedComplex::new(d.complex.clone(), facets)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientReport {
    pub chi_double: i64,
    /// Number of facets, all mirrored.
    pub l: u32,
    pub chi_orb: Dyadic,
    /// chi(double) = 2^l chi_orb, exactly.
    pub equal: bool,
}

/// Builds the full double (every facet mirrored) and checks the quotient
/// formula chi(double) = 2^l chi_orb(p) exactly.
pub fn verify_quotient_formula(p: &PatternedComplex) -> Result<QuotientReport, ConstructionError> {
    let names: Vec<String> = p.facets().keys().cloned().collect();
    let d = double(p, &names)?;
    let chi_double = d.complex.euler_characteristic();
    let chi_orb = p.orbifold_euler_strata()?;
    let l = names.len() as u32;
    let equal = Dyadic::from_int(chi_double) == chi_orb.shift_up(u64::from(l));
    Ok(QuotientReport {
        chi_double,
        l,
        chi_orb,
        equal,
    })
}

/// chi(double(p, mirrors)) / 2^m as an exact dyadic. Within the mirror
/// limit this builds the double; beyond it the same value is computed
/// without materializing anything, as the face sum
/// `sum over nonempty faces s of (-1)^dim(s) (1/2)^(number of mirrors containing s)`.
pub fn partial_quotient_chi(
    p: &PatternedComplex,
    mirrors: &[String],
) -> Result<Dyadic, ConstructionError> {
    let m = mirror_masks(p, mirrors)?.len() as u32;
    match double(p, mirrors) {
        Ok(d) => Ok(Dyadic::from_int(d.complex.euler_characteristic()).shift_down(m as u64)),
        Err(ConstructionError::TooManyMirrors { .. }) => Ok(face_sum_quotient_chi(p, mirrors)?),
        Err(e) => Err(e),
    }
}

fn face_sum_quotient_chi(
    p: &PatternedComplex,
    mirrors: &[String],
) -> Result<Dyadic, ConstructionError> {
    let mirrors = mirror_masks(p, mirrors)?;
    let sets: Vec<&Complex> = mirrors.iter().map(|name| &p.facets()[name]).collect();
    let mut sum = Dyadic::zero();
    for s in p.carrier().all_faces() {
        if s.is_empty() {
            continue;
        }
        let k = sets
            .iter()
            .filter(|f| s.vertices().iter().all(|&v| f.has_vertex(v)))
            .count() as u64;
        let term = Dyadic::half_pow(k);
        if s.len() % 2 == 0 {
            sum = &sum - &term;
        } else {
            sum += &term;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{are_isomorphic, generators};
    use crate::homology::{homology, is_homology_manifold, HomologyProfile};

    fn named(pairs: Vec<(&str, Complex)>) -> Vec<(String, Complex)> {
        pairs.into_iter().map(|(n, c)| (n.to_string(), c)).collect()
    }

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn triangle_cell() -> PatternedComplex {
        PatternedComplex::new(
            Complex::simplex([0, 1, 2]),
            named(vec![
                ("a", Complex::simplex([0, 1])),
                ("b", Complex::simplex([1, 2])),
                ("c", Complex::simplex([0, 2])),
            ]),
        )
        .unwrap()
    }

    fn square_cell() -> PatternedComplex {
        PatternedComplex::new(
            generators::disk_polygon(4).unwrap(),
            named(vec![
                ("s0", Complex::simplex([0, 1])),
                ("s1", Complex::simplex([1, 2])),
                ("s2", Complex::simplex([2, 3])),
                ("s3", Complex::simplex([0, 3])),
            ]),
        )
        .unwrap()
    }

    #[test]
    fn stabilizer_sets() {
        let p = square_cell();
        assert_eq!(
            vertex_stabilizer_set(&p, 0),
            vec!["s0".to_string(), "s3".to_string()]
        );
        assert_eq!(vertex_stabilizer_set(&p, 4), Vec::<String>::new());
    }

    #[test]
    fn interval_doubles_to_a_circle_of_four_intervals() {
        let p = PatternedComplex::new(
            Complex::simplex([0, 1]),
            named(vec![("l", Complex::point(0)), ("r", Complex::point(1))]),
        )
        .unwrap();
        let d = double(&p, &names(&["l", "r"])).unwrap();
        assert_eq!(d.complex.f_vector(), &[1, 4, 4]);
        assert!(are_isomorphic(&d.complex, &generators::cycle(4).unwrap()));
        assert_eq!(d.closed_check, Some(true));
        assert_eq!(d.complex.euler_characteristic(), 0);
    }

    #[test]
    fn triangle_doubles_to_a_sphere_of_eight_triangles() {
        let d = double(&triangle_cell(), &names(&["a", "b", "c"])).unwrap();
        assert_eq!(d.complex.f_vector(), &[1, 6, 12, 8]);
        assert_eq!(d.complex.euler_characteristic(), 2);
        assert_eq!(d.closed_check, Some(true));
        assert!(is_homology_manifold(&d.complex).unwrap().is_manifold);
        assert_eq!(homology(&d.complex), HomologyProfile::sphere(2));
        // The 8-triangle sphere is the octahedron boundary.
        assert!(are_isomorphic(
            &d.complex,
            &generators::cross_polytope_boundary(3).unwrap()
        ));
    }

    #[test]
    fn square_doubles_to_a_torus() {
        let d = double(&square_cell(), &names(&["s0", "s1", "s2", "s3"])).unwrap();
        assert_eq!(d.complex.euler_characteristic(), 0);
        assert_eq!(d.complex.f_vector()[3], 64);
        assert_eq!(d.closed_check, Some(true));
        assert_eq!(homology(&d.complex).betti, vec![1, 2, 1]);
    }

    #[test]
    fn closed_carrier_with_no_mirrors_is_unchanged() {
        let torus = generators::grid_torus(3, 3).unwrap();
        let p = PatternedComplex::new(torus.clone(), vec![]).unwrap();
        let d = double(&p, &[]).unwrap();
        assert_eq!(d.complex, torus);
        assert_eq!(d.closed_check, Some(true));
    }

    #[test]
    fn hemisphere_doubles_to_a_sphere() {
        // A disk with its whole rim as the single facet.
        let disk = generators::disk_polygon(5).unwrap();
        let rim = disk.boundary_subcomplex().unwrap();
        let p = PatternedComplex::new(disk, named(vec![("rim", rim)])).unwrap();
        let report = verify_quotient_formula(&p).unwrap();
        assert_eq!(report.chi_double, 2);
        assert_eq!(report.l, 1);
        assert_eq!(report.chi_orb, Dyadic::one());
        assert!(report.equal);
        let d = double(&p, &names(&["rim"])).unwrap();
        assert_eq!(homology(&d.complex), HomologyProfile::sphere(2));
    }

    #[test]
    fn quotient_formula_on_small_cells() {
        let r = verify_quotient_formula(&triangle_cell()).unwrap();
        assert_eq!(r.chi_double, 2);
        assert_eq!(r.chi_orb, Dyadic::new(1, 2));
        assert!(r.equal);

        let r = verify_quotient_formula(&square_cell()).unwrap();
        assert_eq!(r.chi_double, 0);
        assert_eq!(r.chi_orb, Dyadic::zero());
        assert!(r.equal);
    }

    #[test]
    fn partial_quotients() {
        let p = square_cell();
        // Two opposite sides: the double is an annulus.
        let d = double(&p, &names(&["s0", "s2"])).unwrap();
        assert_eq!(d.complex.euler_characteristic(), 0);
        assert_eq!(d.closed_check, None);
        assert_eq!(
            partial_quotient_chi(&p, &names(&["s0", "s2"])).unwrap(),
            Dyadic::zero()
        );
        // One side of a triangle: two triangles glued along one edge.
        assert_eq!(
            partial_quotient_chi(&triangle_cell(), &names(&["a"])).unwrap(),
            Dyadic::new(1, 1)
        );
        // No mirrors: the carrier itself.
        assert_eq!(partial_quotient_chi(&p, &[]).unwrap(), Dyadic::one());
    }

    #[test]
    fn face_sum_matches_explicit_doubles() {
        let p = square_cell();
        for mirrors in [
            vec![],
            names(&["s0"]),
            names(&["s0", "s1"]),
            names(&["s0", "s2"]),
            names(&["s0", "s1", "s2"]),
            names(&["s0", "s1", "s2", "s3"]),
        ] {
            assert_eq!(
                face_sum_quotient_chi(&p, &mirrors).unwrap(),
                partial_quotient_chi(&p, &mirrors).unwrap(),
                "{mirrors:?}"
            );
        }
    }

    #[test]
    fn orbit_counting() {
        let p = square_cell();
        for mirrors in [
            names(&["s0"]),
            names(&["s0", "s1"]),
            names(&["s0", "s1", "s2", "s3"]),
        ] {
            let d = double(&p, &mirrors).unwrap();
            let m = mirrors.len() as u32;
            let expected: u64 = p
                .carrier()
                .vertices()
                .iter()
                .map(|&v| {
                    let s = vertex_stabilizer_set(&p, v)
                        .into_iter()
                        .filter(|n| mirrors.contains(n))
                        .count() as u32;
                    1u64 << (m - s)
                })
                .sum();
            assert_eq!(d.complex.vertex_count() as u64, expected, "{mirrors:?}");
        }
    }

    #[test]
    fn generator_actions_are_simplicial_involutions() {
        let p = square_cell();
        let d = double(&p, &names(&["s0", "s1"])).unwrap();
        for action in &d.actions {
            for (&v, &w) in action {
                assert_eq!(action[&w], v, "involution");
            }
            for s in d.complex.maximal_simplices() {
                let image = Simplex::new(s.vertices().iter().map(|v| action[v]));
                assert!(d.complex.contains(&image), "simplicial action");
            }
        }
    }

    #[test]
    fn lifted_pattern_of_opposite_mirrors_is_an_annulus_pattern() {
        let p = square_cell();
        let d = double(&p, &names(&["s0", "s2"])).unwrap();
        let lifted = lifted_pattern(&p, &d).unwrap();
        assert_eq!(lifted.facets().len(), 2);
        assert!(lifted.is_complete());
        // Each unmirrored side lifts to a single circle.
        for f in lifted.facets().values() {
            assert!(f.is_closed_pseudomanifold());
            assert_eq!(f.dim(), 1);
        }
        // chi_orb of the lift is 2^m times chi_orb of the base.
        let base = p.orbifold_euler_strata().unwrap();
        let lift = lifted.orbifold_euler_strata().unwrap();
        assert_eq!(lift, base.shift_up(2));
    }

    #[test]
    fn facet_disjoint_from_mirrors_splits_in_the_lift() {
        // An annulus patterned by its two rims, mirrored across one.
        let a4 = generators::annulus(4).unwrap();
        let inner = a4.full_subcomplex(&(0..4).collect());
        let outer = a4.full_subcomplex(&(4..8).collect());
        let p = PatternedComplex::new(a4, named(vec![("in", inner), ("out", outer)])).unwrap();
        let d = double(&p, &names(&["in"])).unwrap();
        let lifted = lifted_pattern(&p, &d).unwrap();
        let keys: Vec<&String> = lifted.facets().keys().collect();
        assert_eq!(keys, vec!["out.0", "out.1"]);
        assert_eq!(
            lifted.orbifold_euler_strata().unwrap(),
            p.orbifold_euler_strata().unwrap().shift_up(1)
        );
    }

    #[test]
    fn lift_chi_orb_scaling_across_all_subsets() {
        let p = triangle_cell();
        let base = p.orbifold_euler_strata().unwrap();
        let all = names(&["a", "b", "c"]);
        for mask in 0u32..8 {
            let mirrors: Vec<String> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, n)| n.clone())
                .collect();
            let d = double(&p, &mirrors).unwrap();
            let lifted = lifted_pattern(&p, &d).unwrap();
            let lift = lifted.orbifold_euler_strata().unwrap();
            assert_eq!(lift, base.shift_up(mirrors.len() as u64), "mask {mask}");
            for chi in lifted.orbifold_euler_all().unwrap() {
                assert_eq!(chi, lift);
            }
        }
    }

    #[test]
    fn mirror_validation() {
        let p = triangle_cell();
        assert!(matches!(
            double(&p, &names(&["nope"])),
            Err(ConstructionError::UnknownFacet(_))
        ));
        assert!(matches!(
            double(&p, &names(&["a", "a"])),
            Err(ConstructionError::DuplicateMirror(_))
        ));
        assert!(matches!(
            double_with_limit(&p, &names(&["a", "b", "c"]), 2),
            Err(ConstructionError::TooManyMirrors { count: 3, limit: 2 })
        ));
    }
}
