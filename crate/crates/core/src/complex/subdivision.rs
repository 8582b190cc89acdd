//! Barycentric subdivision and dual cones.
//!
//! The subdivision keeps its face-to-vertex dictionary so that subcomplexes
//! can be lifted through it: the lift of a subcomplex `S` of `K` is the
//! subdivision of `S` written in the vertex labels of `K'`, which is always
//! a full subcomplex of `K'`.

use std::collections::HashMap;

use itertools::Itertools;

use super::{Complex, ComplexError, Simplex, Vertex};

/// A barycentric subdivision together with its labeling data.
///
/// Vertices of the subdivision are the nonempty faces of the base complex,
/// numbered 0.. in order of (dimension, lexicographic), so original
/// vertices come first, in label order.
pub struct Subdivision {
    complex: Complex,
    faces: Vec<Simplex>,
    index: HashMap<Simplex, Vertex>,
}

impl Subdivision {
    pub fn of(base: &Complex) -> Subdivision {
        let mut faces: Vec<Simplex> = Vec::new();
        for d in 0..=base.dim() {
            faces.extend(base.faces(d).iter().cloned());
        }
        let index: HashMap<Simplex, Vertex> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i as Vertex))
            .collect();

        let complex = Complex::from_maximal(chains_of(base.maximal_simplices(), &index));
        Subdivision {
            complex,
            faces,
            index,
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn into_complex(self) -> Complex {
        self.complex
    }

    /// The subdivision vertex sitting at the barycenter of `face`.
    pub fn barycenter(&self, face: &Simplex) -> Option<Vertex> {
        self.index.get(face).copied()
    }

    /// The base face whose barycenter is `v`.
    pub fn face_of(&self, v: Vertex) -> &Simplex {
        &self.faces[v as usize]
    }

    /// Subdivides a subcomplex of the base complex in place, producing a
    /// full subcomplex of the subdivision written in its labels.
    pub fn lift(&self, sub: &Complex) -> Result<Complex, ComplexError> {
        for m in sub.maximal_simplices() {
            if !m.is_empty() && !self.index.contains_key(m) {
                return Err(ComplexError::MissingSimplex(m.clone()));
            }
        }
        Ok(Complex::from_maximal(chains_of(
            sub.maximal_simplices(),
            &self.index,
        )))
    }
}

/// The maximal chains of faces inside each listed simplex, as simplices on
/// the barycenter labels. One chain per permutation of each simplex's
/// vertices, built from its prefixes.
fn chains_of(maximal: &[Simplex], index: &HashMap<Simplex, Vertex>) -> Vec<Simplex> {
    let mut gens: Vec<Simplex> = Vec::new();
    for m in maximal {
        if m.is_empty() {
            gens.push(Simplex::empty());
            continue;
        }
        for perm in m.vertices().iter().copied().permutations(m.len()) {
            let mut prefix = Simplex::empty();
            let mut chain: Vec<Vertex> = Vec::with_capacity(m.len());
            for v in perm {
                prefix = prefix.insert(v);
                chain.push(index[&prefix]);
            }
            gens.push(Simplex::new(chain));
        }
    }
    gens
}

/// Barycentric subdivision, discarding the labeling data.
pub fn barycentric_subdivision(k: &Complex) -> Complex {
    Subdivision::of(k).into_complex()
}

/// The dual cone of a nonempty face `s`: the subcomplex of the barycentric
/// subdivision spanned by the chains whose minimum contains `s`. Its vertex
/// labels live in the subdivision of the ambient complex. Combinatorially
/// it is the cone, with apex the barycenter of `s`, on the subdivided link
/// of `s`.
pub fn dual_cone(k: &Complex, s: &Simplex) -> Result<Complex, ComplexError> {
    if s.is_empty() {
        return Err(ComplexError::EmptySimplex);
    }
    if !k.contains(s) {
        return Err(ComplexError::MissingSimplex(s.clone()));
    }
    let sd = Subdivision::of(k);
    let mut gens: Vec<Simplex> = Vec::new();
    for i in k.maximal_cofaces(s) {
        let m = &k.maximal_simplices()[i as usize];
        let rest = m.difference(s);
        for perm in rest.vertices().iter().copied().permutations(rest.len()) {
            let mut prefix = s.clone();
            let mut chain: Vec<Vertex> = Vec::with_capacity(rest.len() + 1);
            chain.push(sd.index[s]);
            for v in perm {
                prefix = prefix.insert(v);
                chain.push(sd.index[&prefix]);
            }
            gens.push(Simplex::new(chain));
        }
    }
    Ok(Complex::from_maximal(gens))
}

#[cfg(test)]
mod tests {
    use super::super::{are_isomorphic, generators};
    use super::*;

    #[test]
    fn subdivision_of_edge_is_path() {
        let edge = Complex::simplex([0, 1]);
        let sd = barycentric_subdivision(&edge);
        assert_eq!(sd.f_vector(), &[1, 3, 2]);
        assert_eq!(sd.euler_characteristic(), 1);
    }

    #[test]
    fn subdivision_of_triangle_boundary_is_hexagon() {
        let k = generators::simplex_boundary(2).unwrap();
        let sd = barycentric_subdivision(&k);
        assert!(are_isomorphic(&sd, &generators::cycle(6).unwrap()));
    }

    #[test]
    fn subdivision_preserves_euler_characteristic() {
        for k in [
            generators::grid_torus(3, 4).unwrap(),
            generators::projective_plane_6(),
            generators::simplex_boundary(3).unwrap(),
            generators::mobius_strip(),
            Complex::simplex([0, 1, 2, 3]),
        ] {
            let sd = barycentric_subdivision(&k);
            assert_eq!(sd.euler_characteristic(), k.euler_characteristic());
            assert_eq!(sd.dim(), k.dim());
            // Total face count of the subdivision in each dimension equals
            // the number of chains of that length, an independent count.
            let chains = count_chains(&k);
            for (d, &expect) in chains.iter().enumerate() {
                assert_eq!(sd.f_vector()[d + 1], expect, "dim {d} of {k:?}");
            }
        }
    }

    /// Counts chains of nonempty faces by length, the f-vector oracle for
    /// the order complex.
    fn count_chains(k: &Complex) -> Vec<u64> {
        // chains_by_top[i] = number of chains ending at face i, by length.
        let mut faces: Vec<Simplex> = Vec::new();
        for d in 0..=k.dim() {
            faces.extend(k.faces(d).iter().cloned());
        }
        let mut by_len: Vec<u64> = vec![0; (k.dim() + 2) as usize];
        let mut memo: HashMap<Simplex, Vec<u64>> = HashMap::new();
        for f in &faces {
            // counts[l] = chains of length l+1 ending at f.
            let mut counts = vec![0u64; f.len()];
            counts[0] = 1;
            let mut subs: Vec<Simplex> = Vec::new();
            for size in 1..f.len() {
                f.for_each_subset(size, |s| subs.push(Simplex::from_sorted(s)));
            }
            for s in &subs {
                if let Some(sub_counts) = memo.get(s) {
                    for (l, &c) in sub_counts.iter().enumerate() {
                        counts[l + 1] += c;
                    }
                }
            }
            for (l, &c) in counts.iter().enumerate() {
                by_len[l] += c;
            }
            memo.insert(f.clone(), counts);
        }
        by_len.pop();
        by_len
    }

    #[test]
    fn subdivision_lift_is_full() {
        let torus = generators::grid_torus(3, 3).unwrap();
        let sd = Subdivision::of(&torus);
        let column = Complex::from_maximal((0..3u32).map(|i| {
            Simplex::new([
                generators::grid_vertex(3, i, 0),
                generators::grid_vertex(3, (i + 1) % 3, 0),
            ])
        }));
        let lifted = sd.lift(&column).unwrap();
        assert!(are_isomorphic(&lifted, &generators::cycle(6).unwrap()));
        assert!(sd.complex().is_full_subcomplex(&lifted));
        // Lifting something that is not a subcomplex fails.
        assert!(sd.lift(&Complex::simplex([0, 99])).is_err());
    }

    #[test]
    fn degenerate_subdivisions() {
        assert!(barycentric_subdivision(&Complex::void()).is_void());
        assert_eq!(
            barycentric_subdivision(&Complex::empty_simplex_only()),
            Complex::empty_simplex_only()
        );
        let pt = Complex::point(3);
        assert_eq!(barycentric_subdivision(&pt).f_vector(), &[1, 1]);
    }

    #[test]
    fn dual_cone_of_top_face_is_a_point() {
        let k = generators::simplex_boundary(3).unwrap();
        let d = dual_cone(&k, &Simplex::new([0, 1, 2])).unwrap();
        assert_eq!(d.f_vector(), &[1, 1]);
    }

    #[test]
    fn dual_cone_of_vertex_in_tetra_boundary() {
        let k = generators::simplex_boundary(3).unwrap();
        let d = dual_cone(&k, &Simplex::vertex(0)).unwrap();
        // Oracle by direct chain enumeration: maximal chains starting at
        // {0} inside the three triangles containing it, two per triangle.
        assert_eq!(d.f_vector()[3], 6);
        assert_eq!(d.euler_characteristic(), 1);
        // The dual cone is the cone on the subdivided link.
        let link_sd = barycentric_subdivision(&k.link(&Simplex::vertex(0)).unwrap());
        assert!(are_isomorphic(&d, &link_sd.cone()));
    }

    #[test]
    fn dual_cone_euler_characteristic_is_one() {
        let k = generators::grid_torus(3, 3).unwrap();
        for s in [
            Simplex::vertex(4),
            Simplex::new([0, 1]),
            Simplex::new([0, 1, 4]),
        ] {
            let s = if k.contains(&s) { s } else { continue };
            let d = dual_cone(&k, &s).unwrap();
            assert_eq!(d.euler_characteristic(), 1, "dual cone of {s}");
        }
        assert!(dual_cone(&k, &Simplex::empty()).is_err());
        assert!(dual_cone(&k, &Simplex::new([0, 99])).is_err());
    }
}
