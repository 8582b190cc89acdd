//! Cutting a patterned manifold open along a hypersurface.
//!
//! The cut locus is a full, pure, properly embedded codimension-one
//! subcomplex meeting every stratum transversely. Cutting removes a
//! regular neighborhood of the locus (the simplicial neighborhood after
//! two barycentric subdivisions) and keeps the closed complement; the
//! frontier of the neighborhood becomes one new facet per side of the
//! locus, so a two-sided component contributes two facets and a
//! one-sided component contributes one. The orbifold Euler
//! characteristic is invariant under this operation, which is what
//! hierarchy ledgers replay and verify step by step.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::complex::{complex_with_warnings, simplex_of_line, write_complex};
use crate::complex::{Complex, ComplexError, FormatError, Simplex, Vertex};
use crate::dyadic::Dyadic;
use crate::flag::{certify_haken_cell_dual, charney_davis, CellCertificate};
use crate::pattern::{PatternError, PatternedComplex};

pub const DEFAULT_CUT_ROUNDS: u32 = 2;

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error("the cut locus contains {0}, which is not a face of the carrier")]
    LocusNotInCarrier(Simplex),
    #[error("the cut locus is not a full subcomplex of the carrier")]
    LocusNotFull,
    #[error(
        "the cut locus must be nonempty and pure of dimension {expected}, got dimension {got}"
    )]
    LocusWrongDimension { expected: i32, got: i32 },
    #[error("the cut locus is not proper: its boundary differs from its intersection with the carrier boundary")]
    LocusNotProper,
    #[error(
        "the cut locus meets the stratum of {stratum:?} in dimension {got}, expected {expected}"
    )]
    NotTransversal {
        stratum: Vec<String>,
        expected: i32,
        got: i32,
    },
    #[error("the neighborhood of the cut locus covers the whole carrier")]
    NeighborhoodCoversCarrier,
    #[error("no spanning arc from {from:?} to {to:?} avoids the rest of the boundary")]
    NoSpanningArc { from: String, to: String },
    #[error("{0:?} is not a facet of the pattern")]
    UnknownFacet(String),
    #[error("step {index}: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<SurgeryError>,
    },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// A validated cut locus: full, pure of codimension one, proper, and
/// transversal to every stratum.
#[derive(Debug, Clone)]
pub struct CutLocus {
    pub subcomplex: Complex,
    /// The boundary of the locus equals locus intersect carrier boundary.
    pub proper: bool,
    /// Strata the locus meets, by facet set, with the intersection
    /// dimension (always one less than the stratum dimension).
    pub met_strata: Vec<(BTreeSet<String>, i32)>,
}

/// Checks every cut-locus invariant of `f` against the pattern `p`.
pub fn validate_locus(p: &PatternedComplex, f: &Complex) -> Result<CutLocus, SurgeryError> {
    let carrier = p.carrier();
    for s in f.maximal_simplices() {
        if !carrier.contains(s) {
            return Err(SurgeryError::LocusNotInCarrier(s.clone()));
        }
    }
    let expected = p.dim() as i32 - 1;
    if f.is_void() || !f.is_pure() || f.dim() != expected {
        return Err(SurgeryError::LocusWrongDimension {
            expected,
            got: f.dim(),
        });
    }
    if !carrier.is_full_subcomplex(f) {
        return Err(SurgeryError::LocusNotFull);
    }

    let locus_boundary = f.boundary_subcomplex()?;
    if locus_boundary != intersection_complex(f, p.boundary()) {
        return Err(SurgeryError::LocusNotProper);
    }

    let fverts: HashSet<Vertex> = f.vertices().iter().copied().collect();
    let mut met_strata: Vec<(BTreeSet<String>, i32)> = Vec::new();
    for stratum in p.strata()? {
        // Both the locus and every stratum are full subcomplexes, so their
        // intersection is the full subcomplex on the shared vertices.
        let shared: HashSet<Vertex> = stratum
            .carrier
            .vertices()
            .iter()
            .copied()
            .filter(|v| fverts.contains(v))
            .collect();
        if shared.is_empty() {
            continue;
        }
        let meet = carrier.full_subcomplex(&shared);
        let expected = stratum.carrier.dim() - 1;
        if !(meet.is_pure() && meet.dim() == expected) {
            return Err(SurgeryError::NotTransversal {
                stratum: stratum.facet_set.iter().cloned().collect(),
                expected,
                got: meet.dim(),
            });
        }
        met_strata.push((stratum.facet_set, expected));
    }
    Ok(CutLocus {
        subcomplex: f.clone(),
        proper: true,
        met_strata,
    })
}

/// The subcomplex of simplices lying in both `a` and `b` (subcomplexes of
/// a common carrier).
fn intersection_complex(a: &Complex, b: &Complex) -> Complex {
    let mut gens: Vec<Simplex> = Vec::new();
    for s in a.maximal_simplices() {
        for t in b.maximal_simplices() {
            let meet = intersect(s, t);
            if !meet.is_empty() {
                gens.push(meet);
            }
        }
    }
    Complex::from_maximal(gens)
}

fn intersect(a: &Simplex, b: &Simplex) -> Simplex {
    let (mut i, mut j) = (0, 0);
    let (av, bv) = (a.vertices(), b.vertices());
    let mut out: Vec<Vertex> = Vec::new();
    while i < av.len() && j < bv.len() {
        match av[i].cmp(&bv[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(av[i]);
                i += 1;
                j += 1;
            }
        }
    }
    Simplex::from_sorted(out)
}

/// The outcome of one cut.
#[derive(Debug, Clone)]
pub struct CutReport {
    /// The cut-open manifold with its induced pattern, on a dense
    /// deterministic vertex labeling.
    pub pattern: PatternedComplex,
    /// Names of the facets covering the normal sphere bundle of the locus.
    pub new_facets: Vec<String>,
    pub locus_components: usize,
    /// Frontier components hugging each locus component, in component
    /// order: 2 for a two-sided component, 1 for a one-sided one.
    pub sides: Vec<u32>,
    pub rounds: u32,
}

pub fn cut_open(p: &PatternedComplex, f: &Complex) -> Result<CutReport, SurgeryError> {
    Ok(cut_open_carrying(p, f, DEFAULT_CUT_ROUNDS, &[])?.0)
}

pub fn cut_open_with_rounds(
    p: &PatternedComplex,
    f: &Complex,
    rounds: u32,
) -> Result<CutReport, SurgeryError> {
    Ok(cut_open_carrying(p, f, rounds, &[])?.0)
}

/// Cuts like `cut_open_with_rounds`, additionally carrying subcomplexes of
/// the original carrier into the coordinates of the result: each carried
/// subcomplex is subdivided along with the carrier and intersected with
/// the kept complement (as the full subcomplex on its surviving
/// vertices). A carried subcomplex disjoint from the locus neighborhood
/// comes through whole; one the cut swallows comes back void.
pub fn cut_open_carrying(
    p: &PatternedComplex,
    f: &Complex,
    rounds: u32,
    carry: &[Complex],
) -> Result<(CutReport, Vec<Complex>), SurgeryError> {
    let locus = validate_locus(p, f)?;

    let mut pat = p.clone();
    let mut locus_complex = locus.subcomplex;
    let mut carried: Vec<Complex> = carry.to_vec();
    for _ in 0..rounds {
        let (next, sd) = pat.subdivided_once();
        locus_complex = sd.lift(&locus_complex)?;
        for c in &mut carried {
            *c = sd.lift(c)?;
        }
        pat = next;
    }

    let fverts: HashSet<Vertex> = locus_complex.vertices().iter().copied().collect();
    let mut meeting: Vec<&Simplex> = Vec::new();
    let mut avoiding: Vec<&Simplex> = Vec::new();
    for s in pat.carrier().maximal_simplices() {
        if s.vertices().iter().any(|v| fverts.contains(v)) {
            meeting.push(s);
        } else {
            avoiding.push(s);
        }
    }
    if avoiding.is_empty() {
        return Err(SurgeryError::NeighborhoodCoversCarrier);
    }
    let complement = Complex::from_maximal(avoiding.iter().map(|s| (*s).clone()));

    // The frontier of the neighborhood: maximal simplices of the frontier
    // are intersections of an avoiding maximal simplex with a meeting one.
    let mut touch: HashMap<Vertex, Vec<u32>> = HashMap::new();
    for (i, s) in meeting.iter().enumerate() {
        for &v in s.vertices() {
            if !fverts.contains(&v) {
                touch.entry(v).or_default().push(i as u32);
            }
        }
    }
    let mut gens: Vec<Simplex> = Vec::new();
    let mut seen: HashSet<u32> = HashSet::new();
    for c in &avoiding {
        seen.clear();
        for &v in c.vertices() {
            if let Some(list) = touch.get(&v) {
                for &mi in list {
                    if seen.insert(mi) {
                        gens.push(intersect(c, meeting[mi as usize]));
                    }
                }
            }
        }
    }
    let frontier = Complex::from_maximal(gens);
    let fronts = frontier.connected_components();

    // Sidedness bookkeeping: which locus component each frontier component
    // hugs, read off the meeting simplices.
    let locus_parts = locus_complex.connected_components();
    let comp_of: HashMap<Vertex, usize> = locus_parts
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.vertices().iter().map(move |&v| (v, i)))
        .collect();
    let mut adjacent: HashMap<Vertex, BTreeSet<usize>> = HashMap::new();
    for s in &meeting {
        let cid = s
            .vertices()
            .iter()
            .find_map(|v| comp_of.get(v))
            .copied()
            .expect("a meeting simplex has a locus vertex");
        for &v in s.vertices() {
            if !fverts.contains(&v) {
                adjacent.entry(v).or_default().insert(cid);
            }
        }
    }
    let mut sides: Vec<u32> = vec![0; locus_parts.len()];
    for x in &fronts {
        let mut hugged: BTreeSet<usize> = BTreeSet::new();
        for v in x.vertices() {
            if let Some(cs) = adjacent.get(v) {
                hugged.extend(cs.iter().copied());
            }
        }
        for c in hugged {
            sides[c] += 1;
        }
    }

    // Old facets survive as their intersection with the complement,
    // splitting into suffixed components where the cut severed them.
    let mut survivors: Vec<(String, Complex)> = Vec::new();
    for (name, g) in pat.facets() {
        let keep: HashSet<Vertex> = g
            .vertices()
            .iter()
            .copied()
            .filter(|v| !fverts.contains(v))
            .collect();
        let piece = complement.full_subcomplex(&keep);
        if piece.is_void() {
            continue;
        }
        let comps = piece.connected_components();
        if comps.len() == 1 {
            survivors.push((name.clone(), piece));
        } else {
            for (i, c) in comps.into_iter().enumerate() {
                survivors.push((format!("{name}.{i}"), c));
            }
        }
    }

    // Fresh base name for the frontier facets.
    let base = {
        let mut base = "cut".to_string();
        let mut i = 0u32;
        while survivors
            .iter()
            .any(|(n, _)| n.strip_prefix(&base).is_some_and(|r| r.starts_with('.')))
        {
            i += 1;
            base = format!("cut{i}");
        }
        base
    };
    let new_facets: Vec<String> = (0..fronts.len()).map(|i| format!("{base}.{i}")).collect();

    // Deterministic dense relabeling for replayable output.
    let dense: HashMap<Vertex, Vertex> = complement
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Vertex))
        .collect();
    let carrier = complement.relabel(&dense)?;
    let mut facets: Vec<(String, Complex)> = Vec::new();
    for (name, x) in new_facets.iter().zip(&fronts) {
        facets.push((name.clone(), x.relabel(&dense)?));
    }
    for (name, piece) in survivors {
        facets.push((name, piece.relabel(&dense)?));
    }
    let pattern = PatternedComplex::new(carrier, facets)?;

    let mut images: Vec<Complex> = Vec::new();
    for c in &carried {
        let keep: HashSet<Vertex> = c
            .vertices()
            .iter()
            .copied()
            .filter(|v| !fverts.contains(v))
            .collect();
        let piece = complement.full_subcomplex(&keep);
        images.push(if piece.is_void() {
            piece
        } else {
            piece.relabel(&dense)?
        });
    }

    Ok((
        CutReport {
            pattern,
            new_facets,
            locus_components: locus_parts.len(),
            sides,
            rounds,
        },
        images,
    ))
}

/// One patterned complex per connected component of the carrier, facets
/// distributed to the component containing them.
pub fn split_components(p: &PatternedComplex) -> Result<Vec<PatternedComplex>, PatternError> {
    let comps = p.carrier().connected_components();
    if comps.len() <= 1 {
        return Ok(vec![p.clone()]);
    }
    let mut buckets: Vec<Vec<(String, Complex)>> = vec![Vec::new(); comps.len()];
    for (name, f) in p.facets() {
        let v = f.vertices()[0];
        let i = comps
            .iter()
            .position(|c| c.has_vertex(v))
            .expect("facet vertex lies in the carrier");
        buckets[i].push((name.clone(), f.clone()));
    }
    comps
        .into_iter()
        .zip(buckets)
        .map(|(c, fs)| PatternedComplex::new(c, fs))
        .collect()
}

/// Both sides of the cut-invariance identity, each computed by all three
/// orbifold Euler characteristic methods.
#[derive(Debug, Clone)]
pub struct CutInvariance {
    pub before: [Dyadic; 3],
    pub after: [Dyadic; 3],
    /// All six values agree.
    pub equal: bool,
    pub report: CutReport,
}

pub fn verify_cut_invariance(
    p: &PatternedComplex,
    f: &Complex,
) -> Result<CutInvariance, SurgeryError> {
    verify_cut_invariance_with_rounds(p, f, DEFAULT_CUT_ROUNDS)
}

pub fn verify_cut_invariance_with_rounds(
    p: &PatternedComplex,
    f: &Complex,
    rounds: u32,
) -> Result<CutInvariance, SurgeryError> {
    let report = cut_open_with_rounds(p, f, rounds)?;
    let before = p.orbifold_euler_all()?;
    let after = report.pattern.orbifold_euler_all()?;
    let equal = before.iter().chain(after.iter()).all(|d| *d == before[0]);
    Ok(CutInvariance {
        before,
        after,
        equal,
        report,
    })
}

/// A replayed sequence of cuts with its audit results.
#[derive(Debug, Clone)]
pub struct HierarchyLedger {
    pub initial: PatternedComplex,
    pub initial_chi_orb: Dyadic,
    pub steps: Vec<LedgerStep>,
    /// Connected components of the final manifold.
    pub terminal: Vec<PatternedComplex>,
    pub terminal_chi_orb: Vec<Dyadic>,
    /// Every step's chi^orb equals the initial one.
    pub chi_orb_constant: bool,
    /// chi^orb is additive over components after every step.
    pub additive_each_step: bool,
    /// The terminal chi^orb values sum to the initial one.
    pub sum_matches_initial: bool,
    /// pi_1-injectivity of the cut loci is assumed, never checked.
    pub essentialness_assumed: bool,
    pub rounds: u32,
}

#[derive(Debug, Clone)]
pub struct LedgerStep {
    /// The cut locus, in the coordinates of the pattern before this step.
    pub cut: Complex,
    /// The cut-open result.
    pub result: PatternedComplex,
    pub chi_orb: Dyadic,
    pub new_facets: Vec<String>,
    pub sides: Vec<u32>,
}

pub fn run_prehierarchy(
    initial: &PatternedComplex,
    cuts: &[Complex],
    rounds: u32,
) -> Result<HierarchyLedger, SurgeryError> {
    let initial_chi = initial.orbifold_euler_strata()?;
    let mut current = initial.clone();
    let mut steps: Vec<LedgerStep> = Vec::new();
    let mut chi_constant = true;
    let mut additive = true;
    for (index, cut) in cuts.iter().enumerate() {
        let boxed = |e: SurgeryError| SurgeryError::Step {
            index,
            source: Box::new(e),
        };
        let report = cut_open_with_rounds(&current, cut, rounds).map_err(boxed)?;
        let next = report.pattern;
        let chi = next.orbifold_euler_strata().map_err(|e| boxed(e.into()))?;
        if chi != initial_chi {
            chi_constant = false;
        }
        let mut part_sum = Dyadic::zero();
        for comp in split_components(&next).map_err(|e| boxed(e.into()))? {
            part_sum += &comp.orbifold_euler_strata().map_err(|e| boxed(e.into()))?;
        }
        if part_sum != chi {
            additive = false;
        }
        steps.push(LedgerStep {
            cut: cut.clone(),
            result: next.clone(),
            chi_orb: chi,
            new_facets: report.new_facets,
            sides: report.sides,
        });
        current = next;
    }
    let terminal = split_components(&current)?;
    let terminal_chi_orb: Vec<Dyadic> = terminal
        .iter()
        .map(|c| c.orbifold_euler_strata())
        .collect::<Result<_, _>>()?;
    let mut sum = Dyadic::zero();
    for chi in &terminal_chi_orb {
        sum += chi;
    }
    let sum_matches_initial = sum == initial_chi;
    Ok(HierarchyLedger {
        initial: initial.clone(),
        initial_chi_orb: initial_chi,
        steps,
        terminal,
        terminal_chi_orb,
        chi_orb_constant: chi_constant,
        additive_each_step: additive,
        sum_matches_initial,
        essentialness_assumed: true,
        rounds,
    })
}

/// One terminal cell's certificate.
#[derive(Debug, Clone)]
pub struct TerminalReport {
    pub index: usize,
    pub certificate: CellCertificate,
    pub lambda: Dyadic,
    pub nerve_dim: i32,
}

#[derive(Debug, Clone)]
pub struct HierarchyCertificate {
    pub terminals: Vec<TerminalReport>,
    /// Every terminal nerve is a generalized homology sphere and flag.
    pub all_certified: bool,
    pub sum_lambda: Dyadic,
    /// For a closed even-dimensional initial manifold: chi equals the
    /// lambda sum. None when the identity does not apply.
    pub euler_identity: Option<bool>,
}

pub fn certify_hierarchy(ledger: &HierarchyLedger) -> Result<HierarchyCertificate, SurgeryError> {
    let n = ledger.initial.dim();
    let mut terminals: Vec<TerminalReport> = Vec::new();
    let mut sum_lambda = Dyadic::zero();
    let mut all_certified = true;
    for (index, cell) in ledger.terminal.iter().enumerate() {
        let nerve = cell.nerve()?.nerve;
        let certificate = certify_haken_cell_dual(&nerve, n);
        let lambda = charney_davis(&nerve);
        sum_lambda += &lambda;
        if !certificate.haken {
            all_certified = false;
        }
        terminals.push(TerminalReport {
            index,
            certificate,
            lambda,
            nerve_dim: nerve.dim(),
        });
    }
    let closed = ledger.initial.boundary().is_void();
    let euler_identity = if closed && n > 0 && n.is_multiple_of(2) {
        let chi = ledger.initial.carrier().euler_characteristic();
        Some(Dyadic::from_int(chi) == sum_lambda)
    } else {
        None
    };
    Ok(HierarchyCertificate {
        terminals,
        all_certified,
        sum_lambda,
        euler_identity,
    })
}

/// A shortest edge path from the relative interior of one facet to the
/// relative interior of another, through interior vertices. Such a path
/// is automatically a full, proper, transversal arc.
pub fn spanning_arc(p: &PatternedComplex, from: &str, to: &str) -> Result<Complex, SurgeryError> {
    let from_facet = p
        .facet(from)
        .ok_or_else(|| SurgeryError::UnknownFacet(from.to_string()))?;
    let to_facet = p
        .facet(to)
        .ok_or_else(|| SurgeryError::UnknownFacet(to.to_string()))?;

    // Vertices on exactly one facet sit in the relative interior of a
    // codimension-one stratum; arcs must start and end at such vertices.
    let mut facet_count: HashMap<Vertex, u32> = HashMap::new();
    for f in p.facets().values() {
        for &v in f.vertices() {
            *facet_count.entry(v).or_insert(0) += 1;
        }
    }
    let single = |v: Vertex| facet_count.get(&v) == Some(&1);
    let sources: Vec<Vertex> = from_facet
        .vertices()
        .iter()
        .copied()
        .filter(|&v| single(v))
        .collect();
    let targets: HashSet<Vertex> = to_facet
        .vertices()
        .iter()
        .copied()
        .filter(|&v| single(v))
        .collect();
    let boundary: HashSet<Vertex> = p.boundary().vertices().iter().copied().collect();
    let same_facet = from == to;

    let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in p.carrier().faces(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    for ns in adjacency.values_mut() {
        ns.sort_unstable();
    }

    // Layered BFS in ascending label order for a deterministic shortest
    // path; expansion passes only through interior vertices.
    let mut dist: HashMap<Vertex, u32> = HashMap::new();
    let mut parent: HashMap<Vertex, Vertex> = HashMap::new();
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    for &s in &sources {
        dist.insert(s, 0);
        queue.push_back(s);
    }
    let mut best: Option<(u32, Vertex)> = None;
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        if let Some((bd, _)) = best {
            if du + 1 > bd {
                break;
            }
        }
        for &w in adjacency.get(&u).into_iter().flatten() {
            if dist.contains_key(&w) {
                continue;
            }
            let is_target = targets.contains(&w)
                && !(same_facet && sources.contains(&w))
                && (!same_facet || du + 1 >= 2);
            if is_target {
                dist.insert(w, du + 1);
                parent.insert(w, u);
                let cand = (du + 1, w);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            } else if !boundary.contains(&w) {
                dist.insert(w, du + 1);
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    let Some((_, end)) = best else {
        return Err(SurgeryError::NoSpanningArc {
            from: from.to_string(),
            to: to.to_string(),
        });
    };
    let mut gens: Vec<Simplex> = Vec::new();
    let mut v = end;
    while let Some(&u) = parent.get(&v) {
        gens.push(Simplex::new([u, v]));
        v = u;
    }
    Ok(Complex::from_maximal(gens))
}

/// Parses a ledger file: an optional `rounds N` line, then `[step k]`
/// sections in order, each holding one `[cut]` listing of maximal
/// simplices in the coordinates of that step's carrier.
pub fn parse_ledger(text: &str) -> Result<(Vec<Complex>, u32, Vec<String>), SurgeryError> {
    let mut rounds: Option<u32> = None;
    let mut cuts: Vec<Vec<(usize, Simplex)>> = Vec::new();
    let mut in_cut = false;
    let mut warnings: Vec<String> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("rounds ") {
            if rounds.is_some() || !cuts.is_empty() {
                return Err(FormatError::DuplicateSection("rounds".to_string()).into());
            }
            let n: u32 = rest.trim().parse().map_err(|_| FormatError::BadToken {
                line: line_no,
                token: rest.trim().to_string(),
            })?;
            rounds = Some(n);
        } else if let Some(inner) = body.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return Err(FormatError::Unexpected {
                    line: line_no,
                    expected: "a closed section header".to_string(),
                }
                .into());
            };
            let inner = inner.trim();
            if let Some(k) = inner.strip_prefix("step ") {
                if cuts.last().is_some_and(|c| c.is_empty()) {
                    return Err(FormatError::MissingSection(format!(
                        "cut listing for step {}",
                        cuts.len() - 1
                    ))
                    .into());
                }
                let k: usize = k.trim().parse().map_err(|_| FormatError::BadToken {
                    line: line_no,
                    token: k.trim().to_string(),
                })?;
                if k != cuts.len() {
                    return Err(FormatError::Unexpected {
                        line: line_no,
                        expected: format!("[step {}]", cuts.len()),
                    }
                    .into());
                }
                cuts.push(Vec::new());
                in_cut = false;
            } else if inner == "cut" {
                if cuts.is_empty() || in_cut {
                    return Err(FormatError::Unexpected {
                        line: line_no,
                        expected: "[cut] once inside a [step k] section".to_string(),
                    }
                    .into());
                }
                in_cut = true;
            } else {
                return Err(FormatError::Unexpected {
                    line: line_no,
                    expected: "[step k] or [cut]".to_string(),
                }
                .into());
            }
        } else {
            if !in_cut {
                return Err(FormatError::Unexpected {
                    line: line_no,
                    expected: "a [cut] section before simplex lines".to_string(),
                }
                .into());
            }
            let s = simplex_of_line(body, line_no)?.expect("nonblank line");
            cuts.last_mut().unwrap().push((line_no, s));
        }
    }
    if cuts.is_empty() {
        return Err(FormatError::MissingSection("step 0".to_string()).into());
    }
    if let Some(last) = cuts.last() {
        if last.is_empty() {
            return Err(FormatError::MissingSection(format!(
                "cut listing for step {}",
                cuts.len() - 1
            ))
            .into());
        }
    }
    let mut out: Vec<Complex> = Vec::new();
    for listed in &cuts {
        let (c, w) = complex_with_warnings(listed);
        warnings.extend(w);
        out.push(c);
    }
    Ok((out, rounds.unwrap_or(DEFAULT_CUT_ROUNDS), warnings))
}

/// Canonical ledger text; `parse_ledger` of the output round-trips.
pub fn write_ledger(cuts: &[Complex], rounds: u32) -> Result<String, SurgeryError> {
    let mut out = format!("rounds {rounds}\n");
    for (k, cut) in cuts.iter().enumerate() {
        out.push_str(&format!("[step {k}]\n[cut]\n"));
        if cut.is_void() {
            return Err(FormatError::Unrepresentable.into());
        }
        out.push_str(&write_complex(cut)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{are_isomorphic, generators, Subdivision};
    use crate::homology::{homology, is_homology_manifold_with_boundary};

    fn named(pairs: Vec<(&str, Complex)>) -> Vec<(String, Complex)> {
        pairs.into_iter().map(|(n, c)| (n.to_string(), c)).collect()
    }

    fn torus_pattern() -> PatternedComplex {
        PatternedComplex::new(generators::grid_torus(3, 3).unwrap(), vec![]).unwrap()
    }

    fn row_circle() -> Complex {
        Complex::from_maximal_vertices(vec![vec![0, 1], vec![1, 2], vec![0, 2]])
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
    fn locus_validation_rejects_bad_input() {
        let p = triangle_cell();
        assert!(matches!(
            validate_locus(&p, &Complex::simplex([0, 7])),
            Err(SurgeryError::LocusNotInCarrier(_))
        ));
        assert!(matches!(
            validate_locus(&p, &Complex::point(0)),
            Err(SurgeryError::LocusWrongDimension {
                expected: 1,
                got: 0
            })
        ));
        // The rim of the solid triangle spans the triangle: not full.
        assert!(matches!(
            validate_locus(&p, &row_circle()),
            Err(SurgeryError::LocusNotFull)
        ));
        // A facet is not proper as a locus: its boundary is two points but
        // it lies entirely in the carrier boundary.
        assert!(matches!(
            validate_locus(&p, &Complex::simplex([0, 1])),
            Err(SurgeryError::LocusNotProper)
        ));
    }

    #[test]
    fn locus_validation_rejects_corner_touching_arcs() {
        let (p, sd) = square_cell().subdivided_once();
        let b = |vs: &[Vertex]| sd.barycenter(&Simplex::new(vs.iter().copied())).unwrap();
        // A path from corner 0 to the midpoint of side s2 through the
        // interior: full and proper, but it meets the corner stratum.
        let path = Complex::from_maximal_vertices(vec![
            vec![0, b(&[0, 1, 4])],
            vec![b(&[0, 1, 4]), b(&[1, 4])],
            vec![b(&[1, 4]), b(&[1, 2, 4])],
            vec![b(&[1, 2, 4]), b(&[2, 4])],
            vec![b(&[2, 4]), b(&[2, 3, 4])],
            vec![b(&[2, 3, 4]), b(&[2, 3])],
        ]);
        match validate_locus(&p, &path) {
            Err(SurgeryError::NotTransversal {
                stratum,
                expected: -1,
                got: 0,
            }) => {
                assert_eq!(stratum, vec!["s0".to_string(), "s3".to_string()]);
            }
            other => panic!("expected a corner transversality failure, got {other:?}"),
        }
    }

    #[test]
    fn torus_cut_along_essential_circle_is_an_annulus() {
        let p = torus_pattern();
        let circle = row_circle();
        let locus = validate_locus(&p, &circle).unwrap();
        assert!(locus.proper);
        assert_eq!(locus.met_strata, vec![(BTreeSet::new(), 1)]);

        let inv = verify_cut_invariance(&p, &circle).unwrap();
        assert!(inv.equal);
        assert_eq!(inv.before[0], Dyadic::zero());
        let report = inv.report;
        assert_eq!(report.locus_components, 1);
        assert_eq!(report.sides, vec![2]);
        assert_eq!(report.new_facets, vec!["cut.0", "cut.1"]);
        let annulus = &report.pattern;
        assert!(annulus.is_complete());
        assert_eq!(annulus.facets().len(), 2);
        assert_eq!(homology(annulus.carrier()).betti, vec![1, 1, 0]);
        assert!(
            is_homology_manifold_with_boundary(annulus.carrier())
                .unwrap()
                .is_manifold
        );
        for f in annulus.facets().values() {
            assert!(f.is_closed_pseudomanifold());
            assert_eq!(f.dim(), 1);
        }
    }

    #[test]
    fn octahedron_cut_along_equator_splits_into_two_disks() {
        let p =
            PatternedComplex::new(generators::cross_polytope_boundary(3).unwrap(), vec![]).unwrap();
        let equator =
            Complex::from_maximal_vertices(vec![vec![2, 4], vec![3, 4], vec![3, 5], vec![2, 5]]);
        let inv = verify_cut_invariance(&p, &equator).unwrap();
        assert!(inv.equal);
        assert_eq!(inv.before[0], Dyadic::from_int(2));
        assert_eq!(inv.report.sides, vec![2]);

        let halves = split_components(&inv.report.pattern).unwrap();
        assert_eq!(halves.len(), 2);
        for half in &halves {
            assert_eq!(half.facets().len(), 1);
            assert_eq!(half.orbifold_euler_strata().unwrap(), Dyadic::one());
            assert_eq!(half.carrier().euler_characteristic(), 1);
        }
    }

    #[test]
    fn klein_bottle_cut_along_one_sided_circle_is_a_moebius_band() {
        let p = PatternedComplex::new(generators::klein_bottle(), vec![]).unwrap();
        let column =
            Complex::from_maximal_vertices(vec![vec![0, 4], vec![4, 8], vec![8, 12], vec![0, 12]]);
        assert!(p.carrier().is_full_subcomplex(&column));
        let inv = verify_cut_invariance(&p, &column).unwrap();
        assert!(inv.equal);
        assert_eq!(inv.before[0], Dyadic::zero());
        let report = inv.report;
        assert_eq!(report.locus_components, 1);
        assert_eq!(report.sides, vec![1], "one-sided circle");
        assert_eq!(report.new_facets, vec!["cut.0"]);
        assert_eq!(homology(report.pattern.carrier()).betti, vec![1, 1, 0]);
    }

    #[test]
    fn torus_prehierarchy_terminates_in_a_square_cell() {
        let p = torus_pattern();
        let circle = row_circle();
        let annulus = cut_open(&p, &circle).unwrap().pattern;
        let arc = spanning_arc(&annulus, "cut.0", "cut.1").unwrap();

        let ledger = run_prehierarchy(&p, &[circle, arc], DEFAULT_CUT_ROUNDS).unwrap();
        assert!(ledger.chi_orb_constant);
        assert!(ledger.additive_each_step);
        assert!(ledger.sum_matches_initial);
        assert!(ledger.essentialness_assumed);
        assert_eq!(ledger.initial_chi_orb, Dyadic::zero());
        assert_eq!(ledger.terminal.len(), 1);

        let cell = &ledger.terminal[0];
        assert_eq!(cell.facets().len(), 4);
        let nerve = cell.nerve().unwrap().nerve;
        assert!(are_isomorphic(&nerve, &generators::cycle(4).unwrap()));

        let cert = certify_hierarchy(&ledger).unwrap();
        assert!(cert.all_certified);
        assert_eq!(cert.sum_lambda, Dyadic::zero());
        assert_eq!(cert.euler_identity, Some(true));
        assert_eq!(cert.terminals.len(), 1);
        assert!(cert.terminals[0].certificate.ghs);
        assert!(cert.terminals[0].certificate.flag);
        assert_eq!(cert.terminals[0].nerve_dim, 1);
    }

    #[test]
    fn square_cell_arc_cut_yields_two_quadrilateral_cells() {
        let (p, _) = square_cell().subdivided_once();
        let arc = spanning_arc(&p, "s0", "s2").unwrap();
        let inv = verify_cut_invariance(&p, &arc).unwrap();
        assert!(inv.equal);
        assert_eq!(inv.before[0], Dyadic::zero());

        let ledger = run_prehierarchy(&p, &[arc], DEFAULT_CUT_ROUNDS).unwrap();
        assert_eq!(ledger.terminal.len(), 2);
        for cell in &ledger.terminal {
            assert_eq!(cell.facets().len(), 4);
            let nerve = cell.nerve().unwrap().nerve;
            assert!(are_isomorphic(&nerve, &generators::cycle(4).unwrap()));
        }
        let cert = certify_hierarchy(&ledger).unwrap();
        assert!(cert.all_certified);
        assert_eq!(cert.sum_lambda, Dyadic::zero());
        assert_eq!(cert.euler_identity, None, "the square cell has boundary");
    }

    #[test]
    fn trivial_ledger_on_a_triangle_cell_fails_certification() {
        let ledger = run_prehierarchy(&triangle_cell(), &[], DEFAULT_CUT_ROUNDS).unwrap();
        assert_eq!(ledger.terminal.len(), 1);
        let cert = certify_hierarchy(&ledger).unwrap();
        assert!(
            !cert.all_certified,
            "the triangle nerve has an empty triangle"
        );
        assert!(cert.terminals[0].certificate.ghs);
        assert!(!cert.terminals[0].certificate.flag);
        assert_eq!(cert.sum_lambda, Dyadic::new(1, 2));
        assert_eq!(cert.euler_identity, None);
    }

    #[test]
    fn new_facet_base_dodges_surviving_names() {
        // Cutting the annulus from the torus cut again: the survivors are
        // named cut.0 and cut.1, so the fresh facets move to cut1.*.
        let p = torus_pattern();
        let annulus = cut_open(&p, &row_circle()).unwrap().pattern;
        let arc = spanning_arc(&annulus, "cut.0", "cut.1").unwrap();
        let report = cut_open(&annulus, &arc).unwrap();
        assert_eq!(report.new_facets, vec!["cut1.0", "cut1.1"]);
        let names: Vec<&String> = report.pattern.facets().keys().collect();
        assert_eq!(names, vec!["cut.0", "cut.1", "cut1.0", "cut1.1"]);
    }

    #[test]
    fn moebius_core_cut_is_one_sided() {
        // The interior core of the 5-vertex Moebius strip only exists after
        // one subdivision: it alternates between interior-edge barycenters
        // and triangle barycenters.
        let m = generators::mobius_strip();
        let sd = Subdivision::of(&m);
        let b = |vs: &[Vertex]| sd.barycenter(&Simplex::new(vs.iter().copied())).unwrap();
        let mut gens = Vec::new();
        for i in 0..5u32 {
            let e = [i, (i + 1) % 5];
            let t = [i, (i + 1) % 5, (i + 2) % 5];
            let e_next = [(i + 1) % 5, (i + 2) % 5];
            gens.push(vec![b(&e), b(&t)]);
            gens.push(vec![b(&t), b(&e_next)]);
        }
        let core = Complex::from_maximal_vertices(gens.into_iter().map(|mut e| {
            e.sort_unstable();
            e
        }));
        let rim = m.boundary_subcomplex().unwrap();
        let p = PatternedComplex::new(
            sd.complex().clone(),
            named(vec![("rim", sd.lift(&rim).unwrap())]),
        )
        .unwrap();
        assert!(p.carrier().is_full_subcomplex(&core));
        assert!(core.is_closed_pseudomanifold());

        let inv = verify_cut_invariance(&p, &core).unwrap();
        assert!(inv.equal);
        assert_eq!(inv.before[0], Dyadic::zero());
        assert_eq!(inv.report.sides, vec![1], "the core is one-sided");
        assert_eq!(inv.report.new_facets, vec!["cut.0"]);
        // Cutting the Moebius band along its core leaves an annulus with
        // the old rim on one side and the doubled core on the other.
        assert_eq!(homology(inv.report.pattern.carrier()).betti, vec![1, 1, 0]);
        assert_eq!(inv.report.pattern.facets().len(), 2);
    }

    #[test]
    fn ledger_files_round_trip() {
        let cuts = vec![
            row_circle(),
            Complex::from_maximal_vertices(vec![vec![3, 17], vec![17, 20]]),
        ];
        let text = write_ledger(&cuts, 2).unwrap();
        let (parsed, rounds, warnings) = parse_ledger(&text).unwrap();
        assert_eq!(parsed, cuts);
        assert_eq!(rounds, 2);
        assert!(warnings.is_empty());
        assert_eq!(write_ledger(&parsed, rounds).unwrap(), text);

        let (_, default_rounds, _) = parse_ledger("[step 0]\n[cut]\n0 1\n").unwrap();
        assert_eq!(default_rounds, DEFAULT_CUT_ROUNDS);
    }

    #[test]
    fn ledger_parse_errors() {
        assert!(matches!(
            parse_ledger(""),
            Err(SurgeryError::Format(FormatError::MissingSection(_)))
        ));
        assert!(matches!(
            parse_ledger("[step 1]\n[cut]\n0 1\n"),
            Err(SurgeryError::Format(FormatError::Unexpected { .. }))
        ));
        assert!(matches!(
            parse_ledger("[step 0]\n0 1\n"),
            Err(SurgeryError::Format(FormatError::Unexpected { .. }))
        ));
        assert!(matches!(
            parse_ledger("[step 0]\n[cut]\n"),
            Err(SurgeryError::Format(FormatError::MissingSection(_)))
        ));
        assert!(matches!(
            parse_ledger("[step 0]\n[step 1]\n[cut]\n0 1\n"),
            Err(SurgeryError::Format(FormatError::MissingSection(_)))
        ));
        assert!(matches!(
            parse_ledger("rounds 2\nrounds 3\n[step 0]\n[cut]\n0 1\n"),
            Err(SurgeryError::Format(FormatError::DuplicateSection(_)))
        ));
    }
}
