//! Manifolds carrying boundary patterns.
//!
//! A boundary pattern decomposes the boundary of a combinatorial manifold
//! into named facets. Intersections of facets stratify the boundary; the
//! nerve of the facet family records which facets meet; and the orbifold
//! Euler characteristic weights each stratum by `(1/2)^codimension`, the
//! index of its reflection-group stabilizer in the associated orbifold.
//!
//! Three independent evaluations of the orbifold Euler characteristic are
//! provided (stratum-relative, Poincare dual, and nerve form). Their
//! agreement on a given input is a nontrivial consistency check and is
//! asserted throughout the test corpus.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::complex::{
    complex_with_warnings, dual_cone, simplex_of_line, write_complex, Complex, ComplexError,
    FormatError, Simplex, Subdivision, Vertex,
};
use crate::dyadic::Dyadic;
use crate::homology::{homology, is_generalized_homology_sphere};

#[derive(Debug, Error)]
pub enum PatternError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("the carrier must be a nonempty pure complex")]
    CarrierNotPure,
    #[error("facet {0:?} has no simplices")]
    FacetEmpty(String),
    #[error("facet {0:?} is not connected")]
    FacetNotConnected(String),
    #[error("facet {name:?} must be pure of dimension {expected}, found {got}")]
    FacetWrongDimension {
        name: String,
        expected: i32,
        got: i32,
    },
    #[error("facet {name:?} contains {simplex} which is not in the boundary of the carrier")]
    FacetNotInBoundary { name: String, simplex: Simplex },
    #[error("facet {0:?} is not a full subcomplex even after one subdivision")]
    FacetNotFull(String),
    #[error("facet name {0:?} is invalid (use letters, digits, '.', '_', '-')")]
    BadFacetName(String),
    #[error("duplicate facet name {0:?}")]
    DuplicateFacet(String),
    #[error("facets {facet_set:?} intersect in dimension {got} where {expected} is required")]
    StratumDimension {
        facet_set: Vec<String>,
        expected: i32,
        got: i32,
    },
    #[error("the input is not a generalized homology sphere for n = {n}")]
    NotSphere { n: u32 },
}

fn valid_facet_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_' || c == '-')
}

/// A pure n-dimensional carrier together with named facets decomposing
/// (part of) its boundary.
///
/// Construction enforces that every facet is a nonempty connected pure
/// (n-1)-dimensional full subcomplex of the boundary. When fullness fails,
/// the carrier is barycentrically subdivided once and the facets are
/// lifted, which always restores fullness. Completeness (the facets cover
/// the whole boundary) is recorded but not required.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternedComplex {
    carrier: Complex,
    n: u32,
    facets: BTreeMap<String, Complex>,
    boundary: Complex,
    complete: bool,
    subdivided_on_load: bool,
}

impl PatternedComplex {
    pub fn new(
        carrier: Complex,
        facets: impl IntoIterator<Item = (String, Complex)>,
    ) -> Result<PatternedComplex, PatternError> {
        Self::build(carrier, facets.into_iter().collect(), false)
    }

    fn build(
        carrier: Complex,
        facets: Vec<(String, Complex)>,
        subdivided: bool,
    ) -> Result<PatternedComplex, PatternError> {
        if carrier.is_void() || carrier.dim() < 0 || !carrier.is_pure() {
            return Err(PatternError::CarrierNotPure);
        }
        let n = carrier.dim() as u32;
        let boundary = carrier.boundary_subcomplex()?;

        let mut map: BTreeMap<String, Complex> = BTreeMap::new();
        for (name, facet) in &facets {
            if !valid_facet_name(name) {
                return Err(PatternError::BadFacetName(name.clone()));
            }
            if map.insert(name.clone(), facet.clone()).is_some() {
                return Err(PatternError::DuplicateFacet(name.clone()));
            }
            if facet.is_void() || facet.dim() < 0 {
                return Err(PatternError::FacetEmpty(name.clone()));
            }
            if !(facet.is_pure() && facet.dim() == n as i32 - 1) {
                return Err(PatternError::FacetWrongDimension {
                    name: name.clone(),
                    expected: n as i32 - 1,
                    got: facet.dim(),
                });
            }
            if let Some(m) = facet
                .maximal_simplices()
                .iter()
                .find(|m| !boundary.contains(m))
            {
                return Err(PatternError::FacetNotInBoundary {
                    name: name.clone(),
                    simplex: (*m).clone(),
                });
            }
            if !facet.is_connected() {
                return Err(PatternError::FacetNotConnected(name.clone()));
            }
        }

        if let Some((name, _)) = map.iter().find(|(_, f)| !carrier.is_full_subcomplex(f)) {
            if subdivided {
                return Err(PatternError::FacetNotFull(name.clone()));
            }
            // One barycentric subdivision makes every subcomplex full.
            let sd = Subdivision::of(&carrier);
            let lifted: Result<Vec<(String, Complex)>, ComplexError> = facets
                .into_iter()
                .map(|(name, f)| Ok((name, sd.lift(&f)?)))
                .collect();
            return Self::build(sd.into_complex(), lifted?, true);
        }

        let complete = boundary
            .maximal_simplices()
            .iter()
            .all(|m| map.values().any(|f| f.contains(m)));

        Ok(PatternedComplex {
            carrier,
            n,
            facets: map,
            boundary,
            complete,
            subdivided_on_load: subdivided,
        })
    }

    pub fn carrier(&self) -> &Complex {
        &self.carrier
    }

    /// The carrier dimension n.
    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn facets(&self) -> &BTreeMap<String, Complex> {
        &self.facets
    }

    pub fn facet(&self, name: &str) -> Option<&Complex> {
        self.facets.get(name)
    }

    pub fn boundary(&self) -> &Complex {
        &self.boundary
    }

    /// True when the facets cover the whole boundary.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// True when construction had to subdivide the carrier to make the
    /// facets full.
    pub fn was_subdivided_on_load(&self) -> bool {
        self.subdivided_on_load
    }

    /// Barycentrically subdivides the carrier, lifting every facet. The
    /// returned subdivision maps subcomplexes of the old carrier into the
    /// new one.
    pub fn subdivided_once(&self) -> (PatternedComplex, Subdivision) {
        let sd = Subdivision::of(&self.carrier);
        let facets: Vec<(String, Complex)> = self
            .facets
            .iter()
            .map(|(name, f)| (name.clone(), sd.lift(f).expect("facet lies in the carrier")))
            .collect();
        let pattern = Self::build(sd.complex().clone(), facets, false)
            .expect("subdivision preserves pattern validity");
        (pattern, sd)
    }

    /// Every nonempty intersection of a nonempty facet subset, as
    /// `(sorted facet indices, intersection)`, in depth-first order.
    /// Every connected component is audited to have dimension n - k for a
    /// k-fold intersection.
    fn audited_intersections(&self) -> Result<Vec<(Vec<usize>, Complex)>, PatternError> {
        let names: Vec<&String> = self.facets.keys().collect();
        let vsets: Vec<HashSet<Vertex>> = self
            .facets
            .values()
            .map(|f| f.vertices().iter().copied().collect())
            .collect();
        let mut out: Vec<(Vec<usize>, Complex)> = Vec::new();
        let mut current = Vec::new();
        self.intersection_dfs(&vsets, &mut current, None, &mut out)?;
        for (idx, sub) in &out {
            let expected = self.n as i32 - idx.len() as i32;
            for comp in sub.connected_components() {
                if !(comp.is_pure() && comp.dim() == expected) {
                    return Err(PatternError::StratumDimension {
                        facet_set: idx.iter().map(|&i| names[i].clone()).collect(),
                        expected,
                        got: comp.dim(),
                    });
                }
            }
        }
        Ok(out)
    }

    fn intersection_dfs(
        &self,
        vsets: &[HashSet<Vertex>],
        current: &mut Vec<usize>,
        verts: Option<&HashSet<Vertex>>,
        out: &mut Vec<(Vec<usize>, Complex)>,
    ) -> Result<(), PatternError> {
        let start = current.last().map_or(0, |&l| l + 1);
        for j in start..vsets.len() {
            let inter: HashSet<Vertex> = match verts {
                None => vsets[j].clone(),
                Some(vs) => vs.intersection(&vsets[j]).copied().collect(),
            };
            if inter.is_empty() {
                continue;
            }
            let sub = self.carrier.full_subcomplex(&inter);
            current.push(j);
            out.push((current.clone(), sub));
            self.intersection_dfs(vsets, current, Some(&inter), out)?;
            current.pop();
        }
        Ok(())
    }

    /// All strata: components of the carrier (codimension 0, frontier =
    /// their boundary) and components of every nonempty facet intersection
    /// (codimension = number of facets, frontier = union of the strictly
    /// deeper strata they contain).
    pub fn strata(&self) -> Result<Vec<Stratum>, PatternError> {
        let names: Vec<&String> = self.facets.keys().collect();
        let mut out: Vec<Stratum> = Vec::new();
        for comp in self.carrier.connected_components() {
            let frontier = comp.boundary_subcomplex()?;
            out.push(Stratum {
                facet_set: BTreeSet::new(),
                carrier: comp,
                frontier,
                codimension: 0,
            });
        }
        let mut deeper: Vec<Stratum> = Vec::new();
        for (idx, sub) in self.audited_intersections()? {
            let facet_set: BTreeSet<String> = idx.iter().map(|&i| names[i].clone()).collect();
            for comp in sub.connected_components() {
                deeper.push(Stratum {
                    facet_set: facet_set.clone(),
                    carrier: comp,
                    frontier: Complex::void(),
                    codimension: idx.len() as u32,
                });
            }
        }
        // Strata are full subcomplexes, so containment is containment of
        // vertex sets.
        let vsets: Vec<HashSet<Vertex>> = deeper
            .iter()
            .map(|s| s.carrier.vertices().iter().copied().collect())
            .collect();
        for i in 0..deeper.len() {
            let mut gens: Vec<Simplex> = Vec::new();
            for j in 0..deeper.len() {
                if deeper[j].codimension > deeper[i].codimension && vsets[j].is_subset(&vsets[i]) {
                    gens.extend(deeper[j].carrier.maximal_simplices().iter().cloned());
                }
            }
            if !gens.is_empty() {
                deeper[i].frontier = Complex::from_maximal(gens);
            }
        }
        out.extend(deeper);
        Ok(out)
    }

    /// The nerve of the facet family, together with the intersection
    /// subcomplex backing each of its faces.
    pub fn nerve(&self) -> Result<NerveData, PatternError> {
        let inter = self.audited_intersections()?;
        let facet_names: Vec<String> = self.facets.keys().cloned().collect();
        let mut sections: Vec<(Simplex, Complex)> = vec![(Simplex::empty(), self.carrier.clone())];
        let mut gens: Vec<Simplex> = Vec::new();
        for (idx, sub) in inter {
            let s = Simplex::new(idx.iter().map(|&i| i as Vertex));
            gens.push(s.clone());
            sections.push((s, sub));
        }
        Ok(NerveData {
            nerve: Complex::from_maximal(gens),
            facet_names,
            sections,
        })
    }

    /// The orbifold Euler characteristic as a weighted sum of relative
    /// stratum characteristics: `sum of (1/2)^k (chi(S) - chi(frontier S))`
    /// over strata S of codimension k.
    pub fn orbifold_euler_strata(&self) -> Result<Dyadic, PatternError> {
        let mut sum = Dyadic::zero();
        for s in self.strata()? {
            let chi = s.carrier.euler_characteristic() - s.frontier.euler_characteristic();
            sum += &Dyadic::half_pow(s.codimension as u64).scale(chi);
        }
        Ok(sum)
    }

    /// The Poincare dual form: `(-1)^n sum of (-1/2)^k chi(S)` over strata.
    /// Equality with [`orbifold_euler_strata`] exercises Poincare-Lefschetz
    /// duality on every stratum.
    pub fn orbifold_euler_poincare(&self) -> Result<Dyadic, PatternError> {
        let mut sum = Dyadic::zero();
        for s in self.strata()? {
            sum +=
                &Dyadic::neg_half_pow(s.codimension as u64).scale(s.carrier.euler_characteristic());
        }
        Ok(self.signed(sum))
    }

    /// The nerve form: `(-1)^n sum over faces s of the nerve (the empty
    /// face included) of (-1/2)^(dim s + 1) chi(S_s)` where `S_s` is the
    /// intersection of the facets in `s` (the whole carrier for the empty
    /// face).
    pub fn orbifold_euler_nerve(&self) -> Result<Dyadic, PatternError> {
        let data = self.nerve()?;
        let mut sum = Dyadic::zero();
        for (s, sub) in &data.sections {
            sum += &Dyadic::neg_half_pow(s.len() as u64).scale(sub.euler_characteristic());
        }
        Ok(self.signed(sum))
    }

    fn signed(&self, d: Dyadic) -> Dyadic {
        if self.n % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// All three evaluations, in the order strata, Poincare, nerve.
    pub fn orbifold_euler_all(&self) -> Result<[Dyadic; 3], PatternError> {
        Ok([
            self.orbifold_euler_strata()?,
            self.orbifold_euler_poincare()?,
            self.orbifold_euler_nerve()?,
        ])
    }

    /// Homology-level usefulness checks for the pattern.
    pub fn usefulness_report(&self) -> UsefulnessReport {
        let h1_trivial = |k: &Complex| {
            let p = homology(k);
            p.betti.get(1).copied().unwrap_or(0) == 0
                && p.torsion.get(1).is_none_or(|t| t.is_empty())
        };
        let facet_h1_trivial = self.facets.values().all(h1_trivial);

        let vsets: Vec<HashSet<Vertex>> = self
            .facets
            .values()
            .map(|f| f.vertices().iter().copied().collect())
            .collect();
        let f = vsets.len();
        let mut pairwise_connected = true;
        let mut meets = vec![vec![false; f]; f];
        for i in 0..f {
            for j in i + 1..f {
                let inter: HashSet<Vertex> = vsets[i].intersection(&vsets[j]).copied().collect();
                if inter.is_empty() {
                    continue;
                }
                meets[i][j] = true;
                if !self.carrier.full_subcomplex(&inter).is_connected() {
                    pairwise_connected = false;
                }
            }
        }
        let mut triple_condition = true;
        for i in 0..f {
            for j in i + 1..f {
                if !meets[i][j] {
                    continue;
                }
                for l in j + 1..f {
                    if meets[i][l]
                        && meets[j][l]
                        && !vsets[i]
                            .iter()
                            .any(|v| vsets[j].contains(v) && vsets[l].contains(v))
                    {
                        triple_condition = false;
                    }
                }
            }
        }
        UsefulnessReport {
            facet_h1_trivial,
            pairwise_connected,
            triple_condition,
            homology_useful: facet_h1_trivial && pairwise_connected && triple_condition,
            carrier_h1_trivial: h1_trivial(&self.carrier),
        }
    }
}

/// One stratum of a boundary pattern: a connected component of the
/// intersection of `facet_set` (or of the carrier itself when the set is
/// empty), together with its frontier.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub facet_set: BTreeSet<String>,
    pub carrier: Complex,
    pub frontier: Complex,
    pub codimension: u32,
}

/// The nerve of a pattern: one vertex per facet (in `facet_names` order),
/// one simplex per nonempty facet intersection. `sections` pairs every
/// face of the nerve, the empty face included, with the intersection
/// subcomplex it records; the empty face is paired with the carrier.
#[derive(Debug, Clone)]
pub struct NerveData {
    pub nerve: Complex,
    pub facet_names: Vec<String>,
    pub sections: Vec<(Simplex, Complex)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UsefulnessReport {
    /// Every facet has trivial first homology (a computable stand-in for
    /// simple connectivity).
    pub facet_h1_trivial: bool,
    /// Every nonempty pairwise intersection of facets is connected.
    pub pairwise_connected: bool,
    /// Every three pairwise-intersecting facets have a common point;
    /// equivalently the nerve has no empty triangle.
    pub triple_condition: bool,
    /// Conjunction of the three checks above.
    pub homology_useful: bool,
    /// Trivial first homology of the carrier itself. When this fails the
    /// homology checks cannot settle usefulness and the report should be
    /// read as undecided.
    pub carrier_h1_trivial: bool,
}

/// The dual cell of a generalized homology (n-1)-sphere `l`: the cone on
/// the barycentric subdivision of `l`, with one facet per vertex `v` of
/// `l`, namely the dual cone of `v` (the closed star of `v` in the
/// subdivision). The nerve of the result is isomorphic to `l`.
pub fn cell_from_flag_sphere(l: &Complex, n: u32) -> Result<PatternedComplex, PatternError> {
    if !is_generalized_homology_sphere(l, n) {
        return Err(PatternError::NotSphere { n });
    }
    let carrier = barycentric_carrier(l);
    let mut facets = Vec::new();
    for &v in l.vertices() {
        let facet = dual_cone(l, &Simplex::vertex(v))?;
        facets.push((v.to_string(), facet));
    }
    PatternedComplex::new(carrier, facets)
}

fn barycentric_carrier(l: &Complex) -> Complex {
    Subdivision::of(l).into_complex().cone()
}

/// Parses the pattern text format: a `[carrier]` section of maximal
/// simplices followed by one `[facet <name>]` section per facet. Returns
/// the pattern and human-readable warnings (skipped simplices, an
/// incomplete pattern, a carrier subdivided to restore fullness).
pub fn parse_pattern(text: &str) -> Result<(PatternedComplex, Vec<String>), PatternError> {
    enum Target {
        None,
        Carrier,
        Facet(usize),
    }
    let mut carrier: Option<Vec<(usize, Simplex)>> = None;
    let mut facets: Vec<(String, Vec<(usize, Simplex)>)> = Vec::new();
    let mut target = Target::None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if body.starts_with('[') {
            if !body.ends_with(']') {
                return Err(FormatError::Unexpected {
                    line: line_no,
                    expected: "a closed section header".to_string(),
                }
                .into());
            }
            let inner = body[1..body.len() - 1].trim();
            if inner == "carrier" {
                if carrier.is_some() {
                    return Err(FormatError::DuplicateSection("carrier".to_string()).into());
                }
                carrier = Some(Vec::new());
                target = Target::Carrier;
            } else if let Some(name) = inner.strip_prefix("facet ") {
                let name = name.trim();
                if !valid_facet_name(name) {
                    return Err(FormatError::BadToken {
                        line: line_no,
                        token: name.to_string(),
                    }
                    .into());
                }
                if facets.iter().any(|(n, _)| n == name) {
                    return Err(FormatError::DuplicateSection(format!("facet {name}")).into());
                }
                facets.push((name.to_string(), Vec::new()));
                target = Target::Facet(facets.len() - 1);
            } else {
                return Err(FormatError::Unexpected {
                    line: line_no,
                    expected: "[carrier] or [facet <name>]".to_string(),
                }
                .into());
            }
        } else {
            let s = simplex_of_line(body, line_no)?.expect("nonblank line");
            match target {
                Target::None => {
                    return Err(FormatError::Unexpected {
                        line: line_no,
                        expected: "a section header before any simplex".to_string(),
                    }
                    .into())
                }
                Target::Carrier => carrier.as_mut().expect("in carrier").push((line_no, s)),
                Target::Facet(i) => facets[i].1.push((line_no, s)),
            }
        }
    }

    let carrier = carrier.ok_or_else(|| FormatError::MissingSection("carrier".to_string()))?;
    let mut warnings = Vec::new();
    let (carrier, mut w) = complex_with_warnings(&carrier);
    warnings.append(&mut w);
    let mut built: Vec<(String, Complex)> = Vec::new();
    for (name, listed) in facets {
        let (f, w) = complex_with_warnings(&listed);
        warnings.extend(w.into_iter().map(|msg| format!("facet {name}: {msg}")));
        built.push((name, f));
    }
    let pattern = PatternedComplex::new(carrier, built)?;
    if pattern.was_subdivided_on_load() {
        warnings.push("carrier subdivided once to make every facet a full subcomplex".to_string());
    }
    if !pattern.is_complete() {
        warnings.push("pattern is incomplete: the facets do not cover the boundary".to_string());
    }
    Ok((pattern, warnings))
}

/// Canonical text form: the carrier section, then facet sections sorted by
/// name, simplices in lexicographic order. Parsing the output reproduces
/// the pattern byte for byte.
pub fn write_pattern(p: &PatternedComplex) -> Result<String, FormatError> {
    let mut out = String::from("[carrier]\n");
    out.push_str(&write_complex(p.carrier())?);
    for (name, f) in p.facets() {
        out.push_str(&format!("\n[facet {name}]\n"));
        out.push_str(&write_complex(f)?);
    }
    Ok(out)
}
