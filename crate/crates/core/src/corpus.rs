//! A reference corpus of complexes, patterned cells, sphere inventories,
//! and replayable hierarchy ledgers.
//!
//! Everything here is deterministic: repeated calls build identical
//! objects, so the shipped ledger files replay byte for byte and the
//! seed-parameterized generator families emit stable output.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{generators, Complex, ComplexError, Simplex, Subdivision, Vertex};
use crate::construction::double;
use crate::flag::flag_report;
use crate::homology::is_generalized_homology_sphere;
use crate::pattern::{PatternError, PatternedComplex};
use crate::surgery::{cut_open_carrying, cut_open_with_rounds, spanning_arc};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown corpus family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// The seven-vertex torus whose one-skeleton is the complete graph: the
/// triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` modulo seven.
pub fn moebius_kantor_torus() -> Complex {
    let mut gens: Vec<Vec<Vertex>> = Vec::new();
    for i in 0..7u32 {
        gens.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        gens.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    Complex::from_maximal_vertices(gens)
}

/// The 3-torus on an `a` by `b` by `c` vertex grid, each unit cube split
/// into six tetrahedra along the main diagonal (one chain of axis steps
/// per axis ordering). Vertex `(x, y, z)` gets label `(x*b + y)*c + z`.
pub fn grid_torus_3d(a: u32, b: u32, c: u32) -> Result<Complex, ComplexError> {
    for (param, got) in [("a", a), ("b", b), ("c", c)] {
        if got < 3 {
            return Err(ComplexError::ParameterTooSmall { param, min: 3, got });
        }
    }
    let v = |x: u32, y: u32, z: u32| ((x % a) * b + (y % b)) * c + (z % c);
    const ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut gens: Vec<Vec<Vertex>> = Vec::new();
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                for order in &ORDERS {
                    let mut p = [x, y, z];
                    let mut tet = vec![v(p[0], p[1], p[2])];
                    for &axis in order {
                        p[axis] += 1;
                        tet.push(v(p[0], p[1], p[2]));
                    }
                    gens.push(tet);
                }
            }
        }
    }
    Ok(Complex::from_maximal_vertices(gens))
}

/// A closed orientable genus-2 surface: two 3x3 grid tori, each with the
/// triangle `{0, 1, 4}` removed, glued along the resulting rim. Labels
/// are compacted to `0..15` so barycentric subdivision keeps original
/// vertices at their own labels.
pub fn genus2_surface() -> Complex {
    let t = generators::grid_torus(3, 3).expect("a 3x3 grid is large enough");
    let hole = Simplex::new([0, 1, 4]);
    let kept: Vec<&Simplex> = t
        .maximal_simplices()
        .iter()
        .filter(|s| **s != hole)
        .collect();
    let shift = |v: Vertex| if v == 0 || v == 1 || v == 4 { v } else { v + 9 };
    let mut gens: Vec<Vec<Vertex>> = kept.iter().map(|s| s.vertices().to_vec()).collect();
    gens.extend(
        kept.iter()
            .map(|s| s.vertices().iter().map(|&v| shift(v)).collect::<Vec<_>>()),
    );
    let glued = Complex::from_maximal_vertices(gens);
    let dense: HashMap<Vertex, Vertex> = glued
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Vertex))
        .collect();
    glued
        .relabel(&dense)
        .expect("compaction is injective and total")
}

fn full_on(k: &Complex, verts: impl IntoIterator<Item = Vertex>) -> Complex {
    let set: HashSet<Vertex> = verts.into_iter().collect();
    k.full_subcomplex(&set)
}

/// An edge with its two endpoints as facets `l` and `r`.
pub fn interval_cell() -> PatternedComplex {
    let carrier = Complex::simplex([0, 1]);
    let facets = [
        ("l".to_string(), Complex::point(0)),
        ("r".to_string(), Complex::point(1)),
    ];
    PatternedComplex::new(carrier, facets).expect("endpoints are full boundary facets")
}

/// An edge with only its left endpoint as a facet; the pattern is
/// deliberately incomplete.
pub fn half_interval_cell() -> PatternedComplex {
    let carrier = Complex::simplex([0, 1]);
    let facets = [("l".to_string(), Complex::point(0))];
    PatternedComplex::new(carrier, facets).expect("one endpoint is a full boundary facet")
}

/// The `p`-gon disk with each rim edge as its own facet `s0 .. s{p-1}`.
pub fn polygon_cell(p: u32) -> Result<PatternedComplex, PatternError> {
    let carrier = generators::disk_polygon(p)?;
    let facets = (0..p).map(|i| {
        (
            format!("s{i}"),
            Complex::from_maximal_vertices([vec![i, (i + 1) % p]]),
        )
    });
    PatternedComplex::new(carrier, facets)
}

/// The `m`-gon disk with the whole rim as a single facet.
pub fn hemisphere_cell(m: u32) -> Result<PatternedComplex, PatternError> {
    let carrier = generators::disk_polygon(m)?;
    let rim = generators::cycle(m)?;
    PatternedComplex::new(carrier, [("rim".to_string(), rim)])
}

/// The triangulated annulus with its two rims as facets `in` and `out`.
pub fn annulus_pattern(m: u32) -> Result<PatternedComplex, PatternError> {
    let carrier = generators::annulus(m)?;
    let inner = full_on(&carrier, 0..m);
    let outer = full_on(&carrier, m..2 * m);
    PatternedComplex::new(
        carrier,
        [("in".to_string(), inner), ("out".to_string(), outer)],
    )
}

fn moebius_pattern_parts() -> (PatternedComplex, Subdivision) {
    let m = generators::mobius_strip();
    let rim = m
        .boundary_subcomplex()
        .expect("the strip is two-dimensional");
    let sd = Subdivision::of(&m);
    let lifted = sd.lift(&rim).expect("the rim is a subcomplex of the strip");
    let p = PatternedComplex::new(sd.complex().clone(), [("rim".to_string(), lifted)])
        .expect("the lifted rim is a full boundary facet");
    (p, sd)
}

/// The subdivided five-vertex Moebius strip with its rim as a facet. One
/// subdivision gives the strip interior vertices, so the rim is full and
/// the core circle exists as a genuine subcomplex.
pub fn moebius_pattern() -> PatternedComplex {
    moebius_pattern_parts().0
}

/// The core circle of the subdivided Moebius strip: it alternates between
/// interior-edge barycenters and triangle barycenters.
fn subdivided_moebius_core(sd: &Subdivision) -> Complex {
    let b = |vs: &[Vertex]| {
        sd.barycenter(&Simplex::new(vs.iter().copied()))
            .expect("a face of the strip")
    };
    let mut gens: Vec<Vec<Vertex>> = Vec::new();
    for i in 0..5u32 {
        let e = [i, (i + 1) % 5];
        let t = [i, (i + 1) % 5, (i + 2) % 5];
        let next = [(i + 1) % 5, (i + 2) % 5];
        gens.push(vec![b(&e), b(&t)]);
        gens.push(vec![b(&t), b(&next)]);
    }
    Complex::from_maximal_vertices(gens)
}

/// A disk whose rim is split into two arcs `u` and `v` meeting at two
/// corner vertices. Its nerve is a single edge, not a sphere, so this is
/// the standard example of a patterned cell that is not a Haken cell.
pub fn bigon_cell() -> PatternedComplex {
    let carrier = generators::disk_polygon(4).expect("a square disk");
    let u = Complex::from_maximal_vertices([vec![0, 1], vec![1, 2]]);
    let v = Complex::from_maximal_vertices([vec![2, 3], vec![3, 0]]);
    PatternedComplex::new(carrier, [("u".to_string(), u), ("v".to_string(), v)])
        .expect("the two rim arcs are full boundary facets")
}

/// The unit cube split into six tetrahedra, with its six square faces as
/// facets `x0, x1, y0, y1, z0, z1`. Vertex `(x, y, z)` has label
/// `4x + 2y + z`, so faces are the label sets with one bit fixed.
pub fn cube_cell() -> PatternedComplex {
    const ORDERS: [[Vertex; 3]; 6] = [
        [4, 2, 1],
        [4, 1, 2],
        [2, 4, 1],
        [2, 1, 4],
        [1, 4, 2],
        [1, 2, 4],
    ];
    let gens: Vec<Vec<Vertex>> = ORDERS
        .iter()
        .map(|bits| {
            let mut acc = 0;
            let mut tet = vec![0];
            for &b in bits {
                acc += b;
                tet.push(acc);
            }
            tet
        })
        .collect();
    let carrier = Complex::from_maximal_vertices(gens);
    let faces: [(&str, [Vertex; 4]); 6] = [
        ("x0", [0, 1, 2, 3]),
        ("x1", [4, 5, 6, 7]),
        ("y0", [0, 1, 4, 5]),
        ("y1", [2, 3, 6, 7]),
        ("z0", [0, 2, 4, 6]),
        ("z1", [1, 3, 5, 7]),
    ];
    let facets: Vec<(String, Complex)> = faces
        .iter()
        .map(|(name, vs)| (name.to_string(), full_on(&carrier, vs.iter().copied())))
        .collect();
    PatternedComplex::new(carrier, facets).expect("cube faces are full boundary facets")
}

fn closed_pattern(k: Complex) -> PatternedComplex {
    PatternedComplex::new(k, []).expect("a closed carrier patterns trivially")
}

/// The standing inventory of boundary patterns: cells of several shapes,
/// patterns with and without boundary, and closed manifolds in dimensions
/// one through three. Names are unique; the list is sorted by name.
pub fn corpus_patterns() -> Vec<(String, PatternedComplex)> {
    let mut items: Vec<(String, PatternedComplex)> = vec![
        ("interval".to_string(), interval_cell()),
        ("half-interval".to_string(), half_interval_cell()),
        ("bigon".to_string(), bigon_cell()),
        ("cube".to_string(), cube_cell()),
        ("moebius".to_string(), moebius_pattern()),
        (
            "circle-5".to_string(),
            closed_pattern(generators::cycle(5).expect("five is enough")),
        ),
        (
            "sphere-2".to_string(),
            closed_pattern(generators::simplex_boundary(3).expect("a tetrahedron boundary")),
        ),
        (
            "cross-3".to_string(),
            closed_pattern(generators::cross_polytope_boundary(3).expect("an octahedron")),
        ),
        (
            "torus-3x3".to_string(),
            closed_pattern(generators::grid_torus(3, 3).expect("a 3x3 grid")),
        ),
        (
            "torus-3x4".to_string(),
            closed_pattern(generators::grid_torus(3, 4).expect("a 3x4 grid")),
        ),
        (
            "klein".to_string(),
            closed_pattern(generators::klein_bottle()),
        ),
        (
            "projective-plane".to_string(),
            closed_pattern(generators::projective_plane_6()),
        ),
        (
            "moebius-kantor".to_string(),
            closed_pattern(moebius_kantor_torus()),
        ),
        ("genus2".to_string(), closed_pattern(genus2_surface())),
        (
            "torus-3d".to_string(),
            closed_pattern(grid_torus_3d(3, 3, 3).expect("a 3x3x3 grid")),
        ),
    ];
    for p in 3..=12 {
        items.push((
            format!("polygon-{p:02}"),
            polygon_cell(p).expect("polygons down to the triangle"),
        ));
    }
    for m in [5, 6] {
        items.push((
            format!("hemisphere-{m}"),
            hemisphere_cell(m).expect("pentagon and hexagon disks"),
        ));
    }
    for m in [4, 6] {
        items.push((
            format!("annulus-{m}"),
            annulus_pattern(m).expect("rims of length four and six"),
        ));
    }
    items.sort_by(|a, b| a.0.cmp(&b.0));
    items
}

/// Generalized homology spheres used as nerves and certification inputs,
/// from circles up to three-spheres. Sorted by name.
pub fn corpus_ghs() -> Vec<(String, Complex)> {
    let cyc = |p: u32| generators::cycle(p).expect("cycles down to the square");
    let mut items: Vec<(String, Complex)> = vec![
        (
            "tetrahedron-boundary".to_string(),
            generators::simplex_boundary(3).expect("the two-sphere"),
        ),
        (
            "4-simplex-boundary".to_string(),
            generators::simplex_boundary(4).expect("the three-sphere"),
        ),
        (
            "octahedron".to_string(),
            generators::cross_polytope_boundary(3).expect("the flag two-sphere"),
        ),
        (
            "cross-4".to_string(),
            generators::cross_polytope_boundary(4).expect("the flag three-sphere"),
        ),
        ("join-4-4".to_string(), cyc(4).join(&cyc(4))),
        ("join-4-5".to_string(), cyc(4).join(&cyc(5))),
        ("join-5-5".to_string(), cyc(5).join(&cyc(5))),
    ];
    for p in 4..=8 {
        items.push((format!("cycle-{p}"), cyc(p)));
    }
    items.sort_by(|a, b| a.0.cmp(&b.0));
    items
}

/// Flag three-spheres: joins of cycles, subdivided joins, the subdivided
/// four-simplex boundary, and the four-dimensional cross-polytope. At
/// least twenty-five entries, sorted by name.
pub fn corpus_flag_3_spheres() -> Vec<(String, Complex)> {
    let cyc = |p: u32| generators::cycle(p).expect("cycles down to the square");
    let mut items: Vec<(String, Complex)> = Vec::new();
    for m in 4..=9 {
        for n in m..=9 {
            items.push((format!("join-{m}-{n}"), cyc(m).join(&cyc(n))));
        }
    }
    items.push((
        "cross-4".to_string(),
        generators::cross_polytope_boundary(4).expect("the flag three-sphere"),
    ));
    for (m, n) in [(4, 4), (4, 5), (5, 5)] {
        items.push((
            format!("sd-join-{m}-{n}"),
            Subdivision::of(&cyc(m).join(&cyc(n))).into_complex(),
        ));
    }
    items.push((
        "sd-4-simplex-boundary".to_string(),
        Subdivision::of(&generators::simplex_boundary(4).expect("the three-sphere")).into_complex(),
    ));
    items.sort_by(|a, b| a.0.cmp(&b.0));
    items
}

/// A replayable sequence of cut loci: the initial pattern, one locus per
/// step in that step's carrier coordinates, and the neighborhood rounds
/// shared by every step.
#[derive(Debug, Clone)]
pub struct ShippedLedger {
    pub name: String,
    pub pattern: PatternedComplex,
    pub cuts: Vec<Complex>,
    pub rounds: u32,
}

/// The torus ledger: one essential circle, then a spanning arc across the
/// resulting annulus, ending in a single square cell.
pub fn torus_ledger() -> ShippedLedger {
    let t = generators::grid_torus(3, 3).expect("a 3x3 grid");
    let circle = full_on(&t, [0, 1, 2]);
    let p = closed_pattern(t);
    let m1 = cut_open_with_rounds(&p, &circle, 2)
        .expect("a grid row is a valid locus")
        .pattern;
    let arc = spanning_arc(&m1, "cut.0", "cut.1").expect("the annulus connects its rims");
    ShippedLedger {
        name: "torus".to_string(),
        pattern: p,
        cuts: vec![circle, arc],
        rounds: 2,
    }
}

/// The Klein bottle ledger. The bottle is built as the double of the
/// Moebius strip across its rim; the two strip cores are one-sided
/// circles, and cutting along them in turn leaves an annulus that a
/// spanning arc reduces to a square cell.
pub fn klein_ledger() -> ShippedLedger {
    let (mp, sd) = moebius_pattern_parts();
    let core = subdivided_moebius_core(&sd);
    let d = double(&mp, &["rim".to_string()]).expect("one mirror is within the limit");
    let label: HashMap<(u32, Vertex), Vertex> = d
        .vertex_origin
        .iter()
        .enumerate()
        .map(|(i, &(g, v))| ((g, v), i as Vertex))
        .collect();
    let copy = |g: u32| {
        Complex::from_maximal_vertices(core.maximal_simplices().iter().map(|e| {
            e.vertices()
                .iter()
                .map(|&v| label[&(g, v)])
                .collect::<Vec<_>>()
        }))
    };
    let k = closed_pattern(d.complex.clone());
    let (r1, carried) =
        cut_open_carrying(&k, &copy(0), 1, &[copy(1)]).expect("the first core is a valid locus");
    let core1 = carried.into_iter().next().expect("one carried subcomplex");
    let r2 = cut_open_with_rounds(&r1.pattern, &core1, 1)
        .expect("the second core survives the first cut");
    let arc = spanning_arc(&r2.pattern, "cut.0", "cut1.0").expect("the annulus connects its rims");
    ShippedLedger {
        name: "klein".to_string(),
        pattern: k,
        cuts: vec![copy(0), core1, arc],
        rounds: 1,
    }
}

/// The genus-2 ledger: both handle circles in one step, then three
/// spanning arcs, ending in a single twelve-sided disk cell.
pub fn genus2_ledger() -> ShippedLedger {
    let g2 = genus2_surface();
    let circles = full_on(&g2, [6, 7, 8, 12, 13, 14]);
    let p = closed_pattern(g2);
    let m1 = cut_open_with_rounds(&p, &circles, 1)
        .expect("the two handle circles are a valid locus")
        .pattern;
    let arc1 = spanning_arc(&m1, "cut.0", "cut.1").expect("the holed surface is connected");
    let m2 = cut_open_with_rounds(&m1, &arc1, 1)
        .expect("the first arc is a valid locus")
        .pattern;
    let arc2 = spanning_arc(&m2, "cut.2", "cut.3").expect("two holes remain");
    let m3 = cut_open_with_rounds(&m2, &arc2, 1)
        .expect("the second arc is a valid locus")
        .pattern;
    let arc3 = spanning_arc(&m3, "cut.0", "cut.2").expect("the annulus connects its rims");
    ShippedLedger {
        name: "genus2".to_string(),
        pattern: p,
        cuts: vec![circles, arc1, arc2, arc3],
        rounds: 1,
    }
}

/// The 3-torus ledger: a coordinate torus, then a carried annulus, then a
/// carried meridian disk, ending in a single cube cell. The loci are full
/// coordinate subcomplexes whose plain simplicial neighborhoods are
/// already regular, so the ledger runs with zero subdivision rounds and
/// the audits confirm the usual invariants step by step.
pub fn t3_ledger() -> ShippedLedger {
    let t3 = grid_torus_3d(3, 3, 3).expect("a 3x3x3 grid");
    let v = |x: u32, y: u32, z: u32| 9 * x + 3 * y + z;
    let plane = full_on(&t3, (0..3).flat_map(|x| (0..3).map(move |y| v(x, y, 0))));
    let annulus = full_on(&t3, (0..3).flat_map(|x| [v(x, 0, 1), v(x, 0, 2)]));
    let disk = full_on(&t3, [v(0, 1, 1), v(0, 1, 2), v(0, 2, 1), v(0, 2, 2)]);
    let p = closed_pattern(t3);
    let (r1, carried1) = cut_open_carrying(&p, &plane, 0, &[annulus, disk])
        .expect("the coordinate torus is a valid locus");
    let mut carried1 = carried1.into_iter();
    let annulus1 = carried1.next().expect("the carried annulus");
    let disk1 = carried1.next().expect("the carried disk");
    let (_, carried2) = cut_open_carrying(&r1.pattern, &annulus1, 0, &[disk1])
        .expect("the carried annulus is a valid locus");
    let disk2 = carried2.into_iter().next().expect("the carried disk");
    ShippedLedger {
        name: "3-torus".to_string(),
        pattern: p,
        cuts: vec![plane, annulus1, disk2],
        rounds: 0,
    }
}

/// All shipped ledgers, sorted by name.
pub fn shipped_ledgers() -> Vec<ShippedLedger> {
    let mut all = vec![torus_ledger(), klein_ledger(), genus2_ledger(), t3_ledger()];
    all.sort_by(|a, b| a.name.cmp(&b.name));
    all
}

/// One emitted corpus item: either a bare complex or a boundary pattern.
#[derive(Debug, Clone)]
pub enum CorpusItem {
    Complex(Complex),
    Pattern(PatternedComplex),
}

pub const CORPUS_FAMILIES: &[&str] = &["barycentric-spheres", "join-spheres", "polygon-cells"];

fn shuffled_labels(k: &Complex, rng: &mut ChaCha8Rng) -> Complex {
    let verts = k.vertices().to_vec();
    let mut images = verts.clone();
    images.shuffle(rng);
    let map: HashMap<Vertex, Vertex> = verts.into_iter().zip(images).collect();
    k.relabel(&map).expect("a permutation relabels cleanly")
}

/// Emits one deterministic family of corpus inputs. Seed zero keeps
/// canonical labels; any other seed applies a label permutation drawn
/// from a stream cipher seeded with it, so equal seeds give equal output.
/// Every emitted complex is checked against its family's sanity
/// certificate before it is returned.
pub fn corpus_generate(family: &str, seed: u64) -> Result<Vec<(String, CorpusItem)>, CorpusError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let emit = |k: Complex, rng: &mut ChaCha8Rng| {
        if seed == 0 {
            k
        } else {
            shuffled_labels(&k, rng)
        }
    };
    match family {
        "join-spheres" => {
            let cyc = |p: u32| generators::cycle(p).expect("cycles down to the square");
            let mut items = Vec::new();
            for m in 4..=8u32 {
                for n in m..=8u32 {
                    let k = emit(cyc(m).join(&cyc(n)), &mut rng);
                    assert!(
                        is_generalized_homology_sphere(&k, 4) && flag_report(&k).is_flag,
                        "a join of cycles is a flag three-sphere"
                    );
                    items.push((format!("join-{m}-{n}"), CorpusItem::Complex(k)));
                }
            }
            Ok(items)
        }
        "barycentric-spheres" => {
            let mut items = Vec::new();
            let mut bases: Vec<(String, Complex, u32)> = vec![
                (
                    "sd-tetrahedron-boundary".to_string(),
                    generators::simplex_boundary(3).expect("the two-sphere"),
                    3,
                ),
                (
                    "sd-4-simplex-boundary".to_string(),
                    generators::simplex_boundary(4).expect("the three-sphere"),
                    4,
                ),
                (
                    "sd-octahedron".to_string(),
                    generators::cross_polytope_boundary(3).expect("the flag two-sphere"),
                    3,
                ),
            ];
            let cyc = |p: u32| generators::cycle(p).expect("cycles down to the square");
            for (m, n) in [(4, 4), (4, 5), (5, 5)] {
                bases.push((format!("sd-join-{m}-{n}"), cyc(m).join(&cyc(n)), 4));
            }
            bases.sort_by(|a, b| a.0.cmp(&b.0));
            for (name, base, n) in bases {
                let k = emit(Subdivision::of(&base).into_complex(), &mut rng);
                assert!(
                    is_generalized_homology_sphere(&k, n) && flag_report(&k).is_flag,
                    "a subdivided sphere is a flag sphere"
                );
                items.push((name, CorpusItem::Complex(k)));
            }
            Ok(items)
        }
        "polygon-cells" => {
            let mut items = Vec::new();
            for p in 3..=12u32 {
                let cell = polygon_cell(p)?;
                assert!(cell.is_complete(), "polygon cells are complete");
                let chi = cell.orbifold_euler_all()?;
                assert!(
                    chi[0] == chi[1] && chi[1] == chi[2],
                    "the three orbifold Euler formulas agree on a polygon cell"
                );
                items.push((format!("polygon-{p:02}"), CorpusItem::Pattern(cell)));
            }
            Ok(items)
        }
        other => Err(CorpusError::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::are_isomorphic;
    use crate::dyadic::Dyadic;
    use crate::flag::charney_davis;
    use crate::homology::{homology, is_homology_manifold};
    use crate::surgery::{certify_hierarchy, run_prehierarchy, write_ledger};

    #[test]
    fn moebius_kantor_is_a_neighborly_torus() {
        let t = moebius_kantor_torus();
        assert_eq!(t.f_vector(), &[1, 7, 21, 14]);
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.is_closed_pseudomanifold());
        assert!(is_homology_manifold(&t).unwrap().is_manifold);
        let h = homology(&t);
        assert_eq!(h.betti, vec![1, 2, 1]);
        assert!(h.torsion.iter().all(|t| t.is_empty()));
    }

    #[test]
    fn grid_torus_3d_is_a_closed_3_torus() {
        let t = grid_torus_3d(3, 3, 3).unwrap();
        assert_eq!(t.f_vector(), &[1, 27, 189, 324, 162]);
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.is_closed_pseudomanifold());
        let h = homology(&t);
        assert_eq!(h.betti, vec![1, 3, 3, 1]);
        assert!(h.torsion.iter().all(|t| t.is_empty()));

        let plane = full_on(
            &t,
            (0..3u32).flat_map(|x| (0..3).map(move |y| 9 * x + 3 * y)),
        );
        assert!(t.is_full_subcomplex(&plane));
        assert!(are_isomorphic(
            &plane,
            &generators::grid_torus(3, 3).unwrap()
        ));
        assert!(grid_torus_3d(2, 3, 3).is_err());
    }

    #[test]
    fn genus2_surface_has_genus_two() {
        let g = genus2_surface();
        assert_eq!(g.vertex_count(), 15);
        assert_eq!(g.euler_characteristic(), -2);
        assert!(g.is_connected());
        assert!(g.is_closed_pseudomanifold());
        assert!(is_homology_manifold(&g).unwrap().is_manifold);
        let h = homology(&g);
        assert_eq!(h.betti, vec![1, 4, 1]);
        assert!(h.torsion.iter().all(|t| t.is_empty()));
        let max = *g.vertices().last().unwrap();
        assert_eq!(max as usize, g.vertex_count() - 1, "labels are compact");
    }

    #[test]
    fn cube_cell_is_a_cube() {
        let c = cube_cell();
        assert!(c.is_complete());
        assert_eq!(c.facets().len(), 6);
        assert_eq!(c.carrier().f_vector(), &[1, 8, 19, 18, 6]);
        let nerve = c.nerve().unwrap().nerve;
        let octa = generators::cross_polytope_boundary(3).unwrap();
        assert!(are_isomorphic(&nerve, &octa));
        let chi = c.orbifold_euler_all().unwrap();
        assert_eq!(chi, [Dyadic::zero(), Dyadic::zero(), Dyadic::zero()]);
    }

    #[test]
    fn polygon_cells_have_cycle_nerves() {
        for p in 3..=12u32 {
            let cell = polygon_cell(p).unwrap();
            assert!(cell.is_complete());
            let nerve = cell.nerve().unwrap().nerve;
            assert!(are_isomorphic(&nerve, &generators::cycle(p).unwrap()));
            let chi = cell.orbifold_euler_all().unwrap();
            let expect = charney_davis(&generators::cycle(p).unwrap());
            assert_eq!(chi[0], expect, "p = {p}");
            assert_eq!(chi[1], expect);
            assert_eq!(chi[2], expect);
        }
    }

    #[test]
    fn bigon_cell_is_no_haken_cell() {
        let b = bigon_cell();
        assert!(b.is_complete());
        let chi = b.orbifold_euler_all().unwrap();
        let half = Dyadic::new(1, 1);
        assert_eq!(chi, [half.clone(), half.clone(), half.clone()]);
        // The nerve is a bare edge: contractible, so no sphere and no
        // orbifold Euler identity against its Charney-Davis quantity.
        let nerve = b.nerve().unwrap().nerve;
        assert_eq!(nerve.f_vector(), &[1, 2, 1]);
        assert!(!is_generalized_homology_sphere(&nerve, 2));
        assert_eq!(charney_davis(&nerve), Dyadic::new(1, 2));
    }

    #[test]
    fn small_cells_have_expected_orbifold_euler() {
        let cases: Vec<(PatternedComplex, Dyadic)> = vec![
            (interval_cell(), Dyadic::zero()),
            (half_interval_cell(), Dyadic::new(-1, 1)),
            (hemisphere_cell(5).unwrap(), Dyadic::one()),
            (annulus_pattern(4).unwrap(), Dyadic::zero()),
            (moebius_pattern(), Dyadic::zero()),
        ];
        for (p, expect) in cases {
            let chi = p.orbifold_euler_all().unwrap();
            assert_eq!(chi, [expect.clone(), expect.clone(), expect.clone()]);
        }
    }

    #[test]
    fn corpus_patterns_agree_on_all_three_formulas() {
        let items = corpus_patterns();
        assert!(items.len() >= 25);
        let mut names: Vec<&str> = items.iter().map(|(n, _)| n.as_str()).collect();
        names.dedup();
        assert_eq!(names.len(), items.len(), "names are unique");
        for (name, p) in &items {
            let chi = p.orbifold_euler_all().unwrap();
            assert!(chi[0] == chi[1] && chi[1] == chi[2], "{name}");
        }
    }

    #[test]
    fn sphere_inventories_are_what_they_claim() {
        for (name, k) in corpus_ghs() {
            assert!(k.is_closed_pseudomanifold(), "{name}");
            assert!(k.is_connected(), "{name}");
        }
        let threes = corpus_flag_3_spheres();
        assert!(threes.len() >= 25);
        for (name, k) in &threes {
            assert_eq!(k.dim(), 3, "{name}");
            assert!(k.is_closed_pseudomanifold(), "{name}");
            assert!(flag_report(k).is_flag, "{name}");
        }
    }

    #[test]
    fn torus_ledger_replays_to_a_square_cell() {
        let led = torus_ledger();
        let ledger = run_prehierarchy(&led.pattern, &led.cuts, led.rounds).unwrap();
        assert!(ledger.chi_orb_constant && ledger.sum_matches_initial);
        assert_eq!(ledger.terminal.len(), 1);
        assert_eq!(ledger.terminal[0].facets().len(), 4);
        let cert = certify_hierarchy(&ledger).unwrap();
        assert!(cert.all_certified);
        assert_eq!(cert.sum_lambda, Dyadic::zero());
        assert_eq!(cert.euler_identity, Some(true));
    }

    #[test]
    fn klein_ledger_replays_to_a_square_cell() {
        let led = klein_ledger();
        let h = homology(led.pattern.carrier());
        assert_eq!(
            h.betti,
            vec![1, 1, 0],
            "the double of the strip is a Klein bottle"
        );
        assert_eq!(h.torsion[1], vec![num_bigint::BigInt::from(2)]);

        let ledger = run_prehierarchy(&led.pattern, &led.cuts, led.rounds).unwrap();
        assert_eq!(
            ledger.steps[0].sides,
            vec![1],
            "the first core is one-sided"
        );
        assert_eq!(
            ledger.steps[1].sides,
            vec![1],
            "the second core is one-sided"
        );
        assert_eq!(ledger.steps[2].sides, vec![2]);
        assert_eq!(
            homology(ledger.steps[0].result.carrier()).betti,
            vec![1, 1, 0],
            "cutting one core leaves a Moebius band"
        );
        assert_eq!(
            homology(ledger.steps[1].result.carrier()).betti,
            vec![1, 1, 0],
            "cutting the second core leaves an annulus"
        );
        assert_eq!(ledger.terminal.len(), 1);
        assert_eq!(ledger.terminal[0].facets().len(), 4);
        let cert = certify_hierarchy(&ledger).unwrap();
        assert!(cert.all_certified);
        assert_eq!(cert.sum_lambda, Dyadic::zero());
        assert_eq!(cert.euler_identity, Some(true));
    }

    #[test]
    fn genus2_ledger_replays_to_a_twelve_gon() {
        let led = genus2_ledger();
        let ledger = run_prehierarchy(&led.pattern, &led.cuts, led.rounds).unwrap();
        assert!(ledger.chi_orb_constant && ledger.sum_matches_initial);
        assert_eq!(ledger.steps[0].sides, vec![2, 2]);
        assert_eq!(ledger.terminal.len(), 1);
        assert_eq!(ledger.terminal[0].facets().len(), 12);
        let nerve = ledger.terminal[0].nerve().unwrap().nerve;
        assert!(are_isomorphic(&nerve, &generators::cycle(12).unwrap()));
        let cert = certify_hierarchy(&ledger).unwrap();
        assert!(cert.all_certified);
        assert_eq!(cert.sum_lambda, Dyadic::from_int(-2));
        assert_eq!(cert.euler_identity, Some(true));
    }

    #[test]
    fn t3_ledger_replays_to_a_cube_cell() {
        let led = t3_ledger();
        let ledger = run_prehierarchy(&led.pattern, &led.cuts, led.rounds).unwrap();
        assert!(ledger.chi_orb_constant && ledger.sum_matches_initial);
        assert_eq!(
            homology(ledger.steps[0].result.carrier()).betti,
            vec![1, 2, 1, 0],
            "cutting a coordinate torus leaves a thickened torus"
        );
        assert_eq!(
            homology(ledger.steps[1].result.carrier()).betti,
            vec![1, 1, 0, 0],
            "cutting the annulus leaves a solid torus"
        );
        assert_eq!(
            homology(ledger.steps[2].result.carrier()).betti,
            vec![1, 0, 0, 0],
            "cutting the meridian disk leaves a ball"
        );
        assert_eq!(ledger.terminal.len(), 1);
        let cell = &ledger.terminal[0];
        assert_eq!(cell.facets().len(), 6);
        let nerve = cell.nerve().unwrap().nerve;
        let octa = generators::cross_polytope_boundary(3).unwrap();
        assert!(are_isomorphic(&nerve, &octa));
        let cert = certify_hierarchy(&ledger).unwrap();
        assert!(cert.all_certified);
        assert_eq!(cert.sum_lambda, Dyadic::zero());
        assert_eq!(
            cert.euler_identity, None,
            "no Euler identity in odd dimension"
        );
        assert_eq!(ledger.terminal_chi_orb, vec![Dyadic::zero()]);
    }

    #[test]
    fn ledger_files_replay_from_text() {
        for led in shipped_ledgers() {
            let text = write_ledger(&led.cuts, led.rounds).unwrap();
            let (cuts, rounds, warnings) = crate::surgery::parse_ledger(&text).unwrap();
            assert!(warnings.is_empty(), "{}", led.name);
            assert_eq!(cuts, led.cuts, "{}", led.name);
            assert_eq!(rounds, led.rounds, "{}", led.name);
        }
    }

    #[test]
    fn corpus_generation_is_deterministic_per_seed() {
        for family in CORPUS_FAMILIES {
            let a = corpus_generate(family, 7).unwrap();
            let b = corpus_generate(family, 7).unwrap();
            assert_eq!(a.len(), b.len());
            for ((na, ia), (nb, ib)) in a.iter().zip(&b) {
                assert_eq!(na, nb);
                match (ia, ib) {
                    (CorpusItem::Complex(x), CorpusItem::Complex(y)) => assert_eq!(x, y),
                    (CorpusItem::Pattern(x), CorpusItem::Pattern(y)) => assert_eq!(x, y),
                    _ => panic!("mismatched item kinds"),
                }
            }
        }
        let canonical = corpus_generate("join-spheres", 0).unwrap();
        let shuffled = corpus_generate("join-spheres", 7).unwrap();
        let (CorpusItem::Complex(a), CorpusItem::Complex(b)) = (&canonical[0].1, &shuffled[0].1)
        else {
            panic!("join spheres are complexes");
        };
        assert_ne!(a, b, "a nonzero seed permutes labels");
        assert!(are_isomorphic(a, b));
        assert!(matches!(
            corpus_generate("no-such-family", 0),
            Err(CorpusError::UnknownFamily(_))
        ));
    }
}
