//! Knot census over the Hamiltonian cycles of linear K6 and K7 embeddings.
//!
//! For K7 every cycle is classified twice, once by the knot oracle and once by
//! the Radon-table matcher; any disagreement aborts the census with a repro
//! case. Maxima found by sampling are empirical lower bounds on the true
//! maximum over all embeddings, nothing more.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exact::Lattice;
use crate::geometry::{Chirotope, GeometryError, Point3};
use crate::oracle::{classify_knot, KnotClass, OracleError, PolygonalKnot};
use crate::radon::{classify_by_radon, Heptagon, RadonVerdict, RsMatch};

pub const LATTICE_SIDE: i64 = 1 << 20;
pub const MAX_SAMPLING_ATTEMPTS: usize = 1_000_000;

/// Everything needed to replay a classifier disagreement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Repro {
    pub points: Vec<[String; 3]>,
    pub cycle: Vec<usize>,
    pub oracle: KnotClass,
    pub radon_figure8: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("only K6 and K7 are supported, got n = {0}")]
    UnsupportedN(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("classifiers disagree on cycle {:?}: oracle says {:?}, radon figure-8 = {}", .0.cycle, .0.oracle, .0.radon_figure8)]
    AgreementFailure(Box<Repro>),
    #[error("no general-position sample after {0} attempts")]
    SamplingFailure(usize),
    #[error("at least one embedding is required")]
    EmptySearch,
}

fn check_n(n: usize) -> Result<(), CensusError> {
    if n == 6 || n == 7 {
        Ok(())
    } else {
        Err(CensusError::UnsupportedN(n))
    }
}

/// Hex SHA-256 prefix of the canonical text of a point list.
pub fn fingerprint(points: &[Point3]) -> String {
    let mut h = Sha256::new();
    for p in points {
        h.update(format!("{},{},{}\n", p.x, p.y, p.z).as_bytes());
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Straight-line drawing of K_n fixed by `n` points in general position.
#[derive(Clone, Debug)]
pub struct LinearEmbedding {
    points: Vec<Point3>,
    lattice: Lattice,
    chirotope: Chirotope,
}

impl LinearEmbedding {
    pub fn new(points: Vec<Point3>) -> Result<Self, CensusError> {
        check_n(points.len())?;
        let lattice = Lattice::from_points(&points);
        let chirotope = Chirotope::from_lattice(&lattice);
        if let Some(q) = chirotope.first_zero() {
            return Err(GeometryError::NotInGeneralPosition(q).into());
        }
        Ok(LinearEmbedding {
            points,
            lattice,
            chirotope,
        })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(&self.points)
    }

    /// The same embedding with vertex `i` moved to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, CensusError> {
        let mut pts = self.points.clone();
        for (i, &j) in perm.iter().enumerate() {
            pts[j] = self.points[i].clone();
        }
        LinearEmbedding::new(pts)
    }
}

/// An undirected Hamiltonian cycle, starting at vertex 0 and walked in the
/// direction whose second vertex is smaller than its last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleId(Vec<usize>);

impl CycleId {
    /// Canonical form of any cyclic vertex sequence (either direction, any start).
    pub fn canonical(seq: &[usize]) -> CycleId {
        let n = seq.len();
        let min_pos = (0..n).min_by_key(|&i| seq[i]).unwrap_or(0);
        let fwd: Vec<usize> = (0..n).map(|k| seq[(min_pos + k) % n]).collect();
        let bwd: Vec<usize> = (0..n).map(|k| seq[(min_pos + n - k) % n]).collect();
        CycleId(fwd.min(bwd))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All `(n-1)!/2` Hamiltonian cycles of K_n in lexicographic canonical order.
pub fn enumerate_cycles(n: usize) -> Result<Vec<CycleId>, CensusError> {
    check_n(n)?;
    let mut rest: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    loop {
        if rest[0] < rest[rest.len() - 1] {
            let mut c = vec![0];
            c.extend_from_slice(&rest);
            out.push(CycleId(c));
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleResult {
    pub cycle: CycleId,
    pub class: KnotClass,
    /// Witness from the Radon matcher (K7 only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rs_match: Option<RsMatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub fingerprint: String,
    pub unknot: usize,
    pub trefoil: usize,
    pub figure8: usize,
    /// Cycles with stick number n: figure-8s for K7, nontrivial hexagons for K6.
    pub c_f: usize,
    pub cycles: Vec<CycleResult>,
}

impl CensusReport {
    pub fn nontrivial(&self) -> usize {
        self.trefoil + self.figure8
    }
}

fn classify_cycle(e: &LinearEmbedding, cycle: &CycleId) -> Result<CycleResult, CensusError> {
    let order = cycle.vertices();
    let class = classify_knot(&PolygonalKnot::from_lattice(e.lattice.select(order)))?;
    let mut rs_match = None;
    if e.n() == 7 {
        let verdict = classify_by_radon(&Heptagon::from_chirotope(&e.chirotope, order))?;
        if verdict.is_figure8() != (class == KnotClass::Figure8) {
            return Err(CensusError::AgreementFailure(Box::new(Repro {
                points: e
                    .points
                    .iter()
                    .map(|p| [p.x.to_string(), p.y.to_string(), p.z.to_string()])
                    .collect(),
                cycle: order.to_vec(),
                oracle: class,
                radon_figure8: verdict.is_figure8(),
            })));
        }
        if let RadonVerdict::Figure8(m) = verdict {
            rs_match = Some(m);
        }
    }
    Ok(CycleResult {
        cycle: cycle.clone(),
        class,
        rs_match,
    })
}

/// Classifies every Hamiltonian cycle of the embedding.
pub fn census(e: &LinearEmbedding) -> Result<CensusReport, CensusError> {
    let cycles = enumerate_cycles(e.n())?;
    let results: Vec<CycleResult> = cycles
        .par_iter()
        .map(|c| classify_cycle(e, c))
        .collect::<Result<_, _>>()?;
    let count = |k: KnotClass| results.iter().filter(|r| r.class == k).count();
    let (unknot, trefoil, figure8) = (
        count(KnotClass::Unknot),
        count(KnotClass::Trefoil),
        count(KnotClass::Figure8),
    );
    Ok(CensusReport {
        n: e.n(),
        fingerprint: e.fingerprint(),
        unknot,
        trefoil,
        figure8,
        c_f: if e.n() == 7 { figure8 } else { trefoil + figure8 },
        cycles: results,
    })
}

/// Seed of the `index`-th embedding in a run started from `seed` (splitmix64).
pub fn embedding_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `n` points from the integer cube `[0, 2^20)^3`, redrawing points until no
/// four are coplanar.
pub fn sample_embedding(n: usize, seed: u64) -> Result<LinearEmbedding, CensusError> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        Point3::from_ints(
            rng.gen_range(0..LATTICE_SIDE),
            rng.gen_range(0..LATTICE_SIDE),
            rng.gen_range(0..LATTICE_SIDE),
        )
    };
    let mut points: Vec<Point3> = (0..n).map(|_| draw(&mut rng)).collect();
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        match LinearEmbedding::new(points.clone()) {
            Ok(e) => return Ok(e),
            Err(CensusError::Geometry(GeometryError::NotInGeneralPosition(q))) => {
                points[q[3]] = draw(&mut rng);
            }
            Err(other) => return Err(other),
        }
    }
    Err(CensusError::SamplingFailure(MAX_SAMPLING_ATTEMPTS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxSearch {
    pub n: usize,
    pub samples: usize,
    /// Largest c(f) seen: a lower bound on the maximum over all embeddings.
    pub best_c: usize,
    pub best_fingerprint: String,
    pub best_seed: Option<u64>,
    /// c(f) value -> number of embeddings.
    pub histogram: BTreeMap<usize, usize>,
}

/// Runs the census on `num_embeddings` sampled embeddings.
pub fn max_search(n: usize, num_embeddings: usize, seed: u64) -> Result<MaxSearch, CensusError> {
    check_n(n)?;
    if num_embeddings == 0 {
        return Err(CensusError::EmptySearch);
    }
    let reports: Vec<(u64, CensusReport)> = (0..num_embeddings as u64)
        .into_par_iter()
        .map(|i| {
            let s = embedding_seed(seed, i);
            Ok((s, census(&sample_embedding(n, s)?)?))
        })
        .collect::<Result<_, CensusError>>()?;
    Ok(summarize(n, reports.iter().map(|(s, r)| (Some(*s), r))))
}

/// Histogram and best c(f) over `(seed, report)` pairs; the first report
/// with the largest c(f) is kept as the witness.
pub fn summarize<'a>(n: usize, reports: impl IntoIterator<Item = (Option<u64>, &'a CensusReport)>) -> MaxSearch {
    let mut histogram = BTreeMap::new();
    let mut samples = 0;
    let mut best: Option<(Option<u64>, &CensusReport)> = None;
    for (seed, r) in reports {
        samples += 1;
        *histogram.entry(r.c_f).or_insert(0) += 1;
        if best.is_none_or(|b| r.c_f > b.1.c_f) {
            best = Some((seed, r));
        }
    }
    MaxSearch {
        n,
        samples,
        best_c: best.map_or(0, |b| b.1.c_f),
        best_fingerprint: best.map_or_else(String::new, |b| b.1.fingerprint.clone()),
        best_seed: best.and_then(|b| b.0),
        histogram,
    }
}
