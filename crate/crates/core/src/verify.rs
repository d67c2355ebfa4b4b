//! Runs over instances: orbit censuses, classifier-versus-oracle checks and
//! diameter verification, with flat records for reporting.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::{diam2_by_sumset, distance_profile, eq1_necessary, ConnectionSet, DiameterReport};
use crate::classify::{c5_orbit_size, tensor_rank, OrbitLabel, SubfieldClassifier};
use crate::error::{Error, Result};
use crate::forms::FormKind;
use crate::instance::{compare_partition, group_by_label, Built, Instance, LabeledOrbit};
use crate::oracle::{all_orbits, subfield_pair, OrbitPartition};
use crate::space::VectorSpace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub instance: String,
    pub label: String,
    pub orbit_size: u64,
    /// Whether `-S = S`.
    pub symmetric: bool,
}

fn is_symmetric(space: &VectorSpace, members: &[u32]) -> bool {
    members.iter().all(|&x| members.binary_search(&space.neg(x)).is_ok())
}

pub fn run_classify(inst: &Instance, cap: u64) -> Result<Vec<CensusRow>> {
    let built = inst.build(cap)?;
    let f = built.field();
    Ok(built
        .orbits()?
        .iter()
        .map(|o| CensusRow {
            instance: inst.to_string(),
            label: o.label.render(f),
            orbit_size: o.members.len() as u64,
            symmetric: is_symmetric(&built.group.space, &o.members),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub instance: String,
    /// Number of distinct closed-form labels.
    pub label_classes: usize,
    pub oracle_orbits: usize,
    /// Orbits of the group without its field automorphisms.
    pub linear_orbits: usize,
    pub equal: bool,
    pub disagreements: usize,
    pub first_disagreement: Option<String>,
    /// Closed-form orbit sizes against the oracle, where a formula exists.
    pub sizes_ok: Option<bool>,
    pub note: String,
}

pub fn run_oracle_check(inst: &Instance, cap: u64) -> Result<OracleRecord> {
    let built = inst.build(cap)?;
    let space = &built.group.space;
    let oracle = all_orbits(&built.group);
    let linear = all_orbits(&built.group.linear_part());
    let mut rec = OracleRecord {
        instance: inst.to_string(),
        label_classes: 0,
        oracle_orbits: oracle.count(),
        linear_orbits: linear.count(),
        equal: true,
        disagreements: 0,
        first_disagreement: None,
        sizes_ok: None,
        note: String::new(),
    };
    let mut notes = Vec::new();
    if built.has_closed_form() {
        let labels = built.labels()?;
        let check = compare_partition(&labels, &oracle);
        rec.label_classes = check.label_classes;
        rec.equal = check.equal;
        rec.disagreements = check.disagreements.len();
        rec.first_disagreement = check.disagreements.first().map(|&(a, b)| format!("{a}~{b}"));
    } else {
        // no closed form: check the invariant the predicates rely on
        let invariant: Option<Box<dyn Fn(&[crate::field::Fe]) -> Result<usize>>> = match *inst {
            Instance::SubfieldSp { q0, r, n } => {
                let (f, sub) = subfield_pair(q0, r)?;
                let cls = SubfieldClassifier::new(f, sub, n)?;
                Some(Box::new(move |v| cls.c_value(v)))
            }
            Instance::TensorSp { k, m, .. } => {
                let f = built.group.space.field_arc();
                Some(Box::new(move |v| tensor_rank(v, k, m, &f)))
            }
            _ => None,
        };
        rec.label_classes = oracle.count();
        match invariant {
            Some(inv) => {
                let mut bad = 0;
                for (id, members) in oracle.all_members().iter().enumerate() {
                    let first = inv(&space.vector(members[0]))?;
                    for &x in members {
                        if inv(&space.vector(x))? != first {
                            bad += 1;
                            rec.first_disagreement.get_or_insert_with(|| format!("{}~{x} (orbit {id})", members[0]));
                        }
                    }
                }
                rec.equal = bad == 0;
                rec.disagreements = bad;
                notes.push("oracle only; invariant constant on orbits checked".to_string());
            }
            None => notes.push("oracle only".to_string()),
        }
    }
    if let Instance::Subfield { q0, r, n } = *inst {
        let (sizes_ok, s_note, linear_equal) = check_subfield_counts(&built, &oracle, &linear, q0, r, n)?;
        rec.sizes_ok = Some(sizes_ok);
        rec.equal &= linear_equal;
        notes.push(format!("linear labels {}", if linear_equal { "match" } else { "differ" }));
        notes.push(s_note);
    }
    if rec.linear_orbits != rec.oracle_orbits {
        notes.push(format!("automorphisms fuse {} linear orbits into {}", rec.linear_orbits, rec.oracle_orbits));
    }
    rec.note = notes.join("; ");
    Ok(rec)
}

/// Checks linear labels against the linear oracle, the closed-form linear
/// orbit sizes, and records the ratio `s` of full to linear orbit sizes.
fn check_subfield_counts(
    built: &Built,
    oracle: &OrbitPartition,
    linear: &OrbitPartition,
    q0: u64,
    r: u32,
    n: usize,
) -> Result<(bool, String, bool)> {
    let (f, sub) = subfield_pair(q0, r)?;
    let cls = SubfieldClassifier::new(f, sub, n)?;
    let space = &built.group.space;
    let linear_labels: Vec<Option<OrbitLabel>> = (0..space.size())
        .into_par_iter()
        .map(|i| if i == 0 { Ok(None) } else { cls.linear_label(&space.vector(i)).map(Some) })
        .collect::<Result<_>>()?;
    let linear_equal = compare_partition(&linear_labels, linear).equal;
    let mut ok = true;
    let mut ratios: BTreeMap<usize, BTreeSet<u64>> = BTreeMap::new();
    for (id, &rep) in oracle.reps.iter().enumerate() {
        let a = cls.c_value(&space.vector(rep))?;
        let (lsize, admissible) = c5_orbit_size(a as u32, n as u32, r, q0)?;
        let lin_size = linear.sizes[linear.orbit_of[rep as usize] as usize];
        ok &= lin_size as u128 == lsize;
        let full = oracle.sizes[id];
        if full % lin_size != 0 {
            ok = false;
            continue;
        }
        let s = full / lin_size;
        ok &= admissible.contains(&s);
        ratios.entry(a).or_default().insert(s);
    }
    let note = ratios
        .iter()
        .map(|(a, ss)| format!("c={a}: s={}", ss.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("/")))
        .collect::<Vec<_>>()
        .join(", ");
    Ok((ok, note, linear_equal))
}

/// One orbit of one instance with its verified diameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub instance: String,
    pub label: String,
    pub orbit_size: u64,
    /// `None` when `Cay(V, S)` is disconnected.
    pub diam: Option<u32>,
    /// The classification's claim: `2`, `not 2`, `=k` or `open`.
    pub claim: String,
    pub theorem_row: Option<String>,
    /// Whether the sumset criterion agrees with breadth-first search.
    pub sumset_agrees: bool,
    pub ok: bool,
}

/// Diameter of `Cay(V, S)`: `None` if `S` is not a valid connection set.
fn orbit_diameter(space: &VectorSpace, members: &[u32]) -> Result<(Option<DiameterReport>, bool)> {
    match ConnectionSet::validate(space, members) {
        Ok(cs) => {
            let rep = distance_profile(&cs);
            let agrees = diam2_by_sumset(&cs) == (rep.diameter == 2);
            Ok((Some(rep), agrees))
        }
        Err(Error::NotSpanning | Error::NotSymmetric) => Ok((None, true)),
        Err(e) => Err(e),
    }
}

pub fn run_verify(inst: &Instance, cap: u64) -> Result<Vec<Record>> {
    let built = inst.build(cap)?;
    let orbits = built.orbits()?;
    verify_orbits(&built, &orbits)
}

fn verify_orbits(built: &Built, orbits: &[LabeledOrbit]) -> Result<Vec<Record>> {
    let space = &built.group.space;
    let f = built.field();
    orbits
        .par_iter()
        .map(|o| {
            let rep = space.vector(o.members[0]);
            let pred = built.predict(&o.label, &rep)?;
            let (report, sumset_agrees) = orbit_diameter(space, &o.members)?;
            let diam = report.map(|r| r.diameter);
            let eq1_ok = diam != Some(2) || eq1_necessary(o.members.len() as u128, space.size() as u128);
            Ok(Record {
                instance: built.instance.to_string(),
                label: o.label.render(f),
                orbit_size: o.members.len() as u64,
                diam,
                claim: pred.claim.to_string(),
                theorem_row: pred.row.map(str::to_string),
                sumset_agrees,
                ok: pred.claim.holds(diam) && sumset_agrees && eq1_ok,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterRow {
    pub instance: String,
    pub label: String,
    pub orbit_size: u64,
    pub connected: bool,
    pub diameter: Option<u32>,
    /// Number of vertices at each distance from zero, `/`-separated.
    pub histogram: String,
}

/// Distance profiles of the orbits, restricted to the orbit containing
/// `vector` when given.
pub fn run_diameter(inst: &Instance, cap: u64, vector: Option<u32>) -> Result<Vec<DiameterRow>> {
    let built = inst.build(cap)?;
    let space = &built.group.space;
    let mut orbits = built.orbits()?;
    if let Some(v) = vector {
        if v == 0 || v >= space.size() {
            return Err(Error::InvalidParameters(format!("vector index {v} is zero or out of range")));
        }
        orbits.retain(|o| o.members.binary_search(&v).is_ok());
    }
    let f = built.field();
    orbits
        .par_iter()
        .map(|o| {
            let (report, _) = orbit_diameter(space, &o.members)?;
            Ok(DiameterRow {
                instance: inst.to_string(),
                label: o.label.render(f),
                orbit_size: o.members.len() as u64,
                connected: report.as_ref().is_some_and(|r| r.connected),
                diameter: report.as_ref().map(|r| r.diameter),
                histogram: report.map_or(String::new(), |r| r.histogram.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("/")),
            })
        })
        .collect()
}

/// Verifies diameters of the oracle's orbits directly: labels are the orbit
/// ids, predictions still come from the closed form of each representative.
pub fn run_verify_oracle_orbits(inst: &Instance, cap: u64) -> Result<Vec<Record>> {
    let built = inst.build(cap)?;
    let part = all_orbits(&built.group);
    let labels: Vec<Option<OrbitLabel>> = part.orbit_of.iter().map(|&o| (o != u32::MAX).then_some(OrbitLabel::Orbit(o))).collect();
    let mut orbits = group_by_label(&labels);
    if built.has_closed_form() {
        let space = &built.group.space;
        for o in &mut orbits {
            o.label = built.label(&space.vector(o.members[0]))?;
        }
    }
    verify_orbits(&built, &orbits)
}

/// The classifier-versus-oracle grid.
pub fn partition_grid() -> Vec<Instance> {
    use FormKind::*;
    let mut g = vec![
        Instance::C2Linear { q: 2, m: 1, t: 3 },
        Instance::C2Linear { q: 3, m: 1, t: 2 },
        Instance::C2Linear { q: 2, m: 2, t: 2 },
        Instance::C2Linear { q: 4, m: 1, t: 2 },
        Instance::C2SpCase2 { q: 3, m: 1 },
        Instance::C2SpCase2 { q: 4, m: 1 },
        Instance::C2SpCase2 { q: 3, m: 2 },
        Instance::Tensor { q: 2, k: 2, m: 2, swap: false },
        Instance::Tensor { q: 3, k: 2, m: 2, swap: false },
        Instance::Subfield { q0: 2, r: 2, n: 2 },
        Instance::Subfield { q0: 2, r: 2, n: 3 },
        Instance::Subfield { q0: 3, r: 2, n: 2 },
        Instance::Subfield { q0: 2, r: 3, n: 3 },
        Instance::Unitary { q: 4, n: 2 },
        Instance::Unitary { q: 4, n: 3 },
        Instance::Quadratic { q: 3, n: 2, kind: QuadraticPlus },
        Instance::Quadratic { q: 3, n: 2, kind: QuadraticMinus },
        Instance::Quadratic { q: 3, n: 3, kind: QuadraticOddSquare },
        Instance::Quadratic { q: 3, n: 3, kind: QuadraticOddNonsquare },
        Instance::Quadratic { q: 2, n: 2, kind: QuadraticPlus },
        Instance::Quadratic { q: 2, n: 2, kind: QuadraticMinus },
        Instance::Quadratic { q: 2, n: 4, kind: QuadraticPlus },
        Instance::Quadratic { q: 2, n: 4, kind: QuadraticMinus },
    ];
    g.sort();
    g
}

/// The extraspecial type-4 instances with `t = 1`.
pub fn extraspecial_grid() -> Vec<Instance> {
    [3, 5, 7].into_iter().map(|q| Instance::Extraspecial { q }).collect()
}

/// Default grid for diameter verification: the partition grid, the
/// extraspecial instances and a few extra subfield, symplectic and tensor
/// cases.
pub fn default_grid() -> Vec<Instance> {
    let mut g = partition_grid();
    g.extend(extraspecial_grid());
    g.extend([
        Instance::Subfield { q0: 2, r: 3, n: 2 },
        Instance::C2SpCase1 { q: 2, m: 2, t: 2 },
        Instance::C2SpCase1 { q: 3, m: 2, t: 2 },
        Instance::Tensor { q: 2, k: 2, m: 2, swap: true },
        Instance::SubfieldSp { q0: 2, r: 2, n: 2 },
        Instance::SubfieldSp { q0: 2, r: 3, n: 2 },
    ]);
    g.sort();
    g.dedup();
    g
}

/// `k` instances of `grid` chosen by `seed`, in sorted order.
pub fn sample(grid: &[Instance], k: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Instance> = grid.choose_multiple(&mut rng, k.min(grid.len())).copied().collect();
    out.sort();
    out
}

/// Runs `f` over `grid` in parallel; results keep the grid's order.
pub fn run_grid<T: Send>(grid: &[Instance], f: impl Fn(&Instance) -> Result<T> + Sync) -> Vec<(Instance, Result<T>)> {
    grid.par_iter().map(|i| (*i, f(i))).collect()
}
