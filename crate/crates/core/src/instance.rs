//! Concrete desk-scale instances: a group, a way to label its orbits, and the
//! diameter claim the classification makes for each orbit.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{c5_bound_predicates, window_s};
use crate::classify::{block_count, pairing_label, tensor_rank, OrbitLabel, SubfieldClassifier};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::forms::{ClassicalForm, FormKind, VectorClass};
use crate::oracle::{self, all_orbits, GroupSpec, OrbitPartition};
use crate::space::SPACE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Instance {
    /// `GL(m, q) wr Sym(t)`.
    C2Linear { q: u64, m: usize, t: usize },
    /// Symplectic blocks with a common multiplier, permuted.
    C2SpCase1 { q: u64, m: usize, t: usize },
    /// `GL(m, q).2` on two totally isotropic halves.
    C2SpCase2 { q: u64, m: usize },
    /// `GL(k, q) (x) GL(m, q)`, with the factor swap when `swap`.
    Tensor { q: u64, k: usize, m: usize, swap: bool },
    /// `GSp(k, q) (x) GO(m, q)`.
    TensorSp { q: u64, k: usize, m: usize, kind: FormKind },
    /// `GL(n, q0) o Z_(q-1)`, `q = q0^r`.
    Subfield { q0: u64, r: u32, n: usize },
    /// `GSp(n, q0) o Z_(q-1)`, `q = q0^r`.
    SubfieldSp { q0: u64, r: u32, n: usize },
    /// `Z_(q-1) o Q8` on GF(q)^2.
    Extraspecial { q: u64 },
    Unitary { q: u64, n: usize },
    Quadratic { q: u64, n: usize, kind: FormKind },
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instance::C2Linear { q, m, t } => write!(f, "c2lin q={q} m={m} t={t}"),
            Instance::C2SpCase1 { q, m, t } => write!(f, "c2sp1 q={q} m={m} t={t}"),
            Instance::C2SpCase2 { q, m } => write!(f, "c2sp2 q={q} m={m}"),
            Instance::Tensor { q, k, m, swap: false } => write!(f, "c4 q={q} k={k} m={m}"),
            Instance::Tensor { q, m, .. } => write!(f, "c7 q={q} m={m}"),
            Instance::TensorSp { q, k, m, kind } => write!(f, "c4sp q={q} k={k} m={m} {}", kind_tag(kind)),
            Instance::Subfield { q0, r, n } => write!(f, "c5 q0={q0} r={r} n={n}"),
            Instance::SubfieldSp { q0, r, n } => write!(f, "c5sp q0={q0} r={r} n={n}"),
            Instance::Extraspecial { q } => write!(f, "c6t1 q={q}"),
            Instance::Unitary { q, n } => write!(f, "c8u q={q} n={n}"),
            Instance::Quadratic { q, n, kind } => write!(f, "{} q={q} n={n}", kind_tag(kind)),
        }
    }
}

fn kind_tag(kind: FormKind) -> &'static str {
    match kind {
        FormKind::QuadraticOddSquare => "c8o",
        FormKind::QuadraticOddNonsquare => "c8o(nonsquare)",
        FormKind::QuadraticPlus => "c8o+",
        FormKind::QuadraticMinus => "c8o-",
        FormKind::Unitary => "c8u",
        FormKind::Symplectic => "sp",
    }
}

/// What the classification says about the diameter of `Cay(V, S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    Two,
    NotTwo,
    Exactly(u32),
    /// No claim is made.
    Open,
}

impl Claim {
    /// `diam` is `None` for a disconnected graph.
    pub fn holds(self, diam: Option<u32>) -> bool {
        match self {
            Claim::Two => diam == Some(2),
            Claim::NotTwo => diam != Some(2),
            Claim::Exactly(k) => diam == Some(k),
            Claim::Open => true,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Two => f.write_str("2"),
            Claim::NotTwo => f.write_str("not 2"),
            Claim::Exactly(k) => write!(f, "={k}"),
            Claim::Open => f.write_str("open"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    /// Row of the classification tables (`GL-i` for semilinear groups,
    /// `SP-i` for semisymplectic ones) the orbit falls under, if any.
    pub row: Option<&'static str>,
    pub claim: Claim,
}

impl Prediction {
    fn new(row: Option<&'static str>, claim: Claim) -> Prediction {
        Prediction { row, claim }
    }

    fn two(row: &'static str) -> Prediction {
        Prediction { row: Some(row), claim: Claim::Two }
    }

    fn not_two() -> Prediction {
        Prediction { row: None, claim: Claim::NotTwo }
    }
}

enum Labeler {
    Blocks { m: usize, t: usize },
    Pairing { m: usize },
    Tensor { k: usize, m: usize },
    Subfield(SubfieldClassifier),
    Form(ClassicalForm),
    /// Orbits come from the closure oracle only.
    Oracle,
}

/// An instance with its group and labelling built.
pub struct Built {
    pub instance: Instance,
    pub group: GroupSpec,
    labeler: Labeler,
    /// Subfield data for the symplectic subfield case, whose orbits have no
    /// closed form but whose predicates use `c(v)`.
    subfield: Option<SubfieldClassifier>,
}

/// One orbit of the labelling.
#[derive(Clone, Debug)]
pub struct LabeledOrbit {
    pub label: OrbitLabel,
    pub members: Vec<u32>,
}

fn field(q: u64) -> Result<Arc<Field>> {
    Ok(Arc::new(Field::from_order(q)?))
}

fn check_size(q: u64, n: usize, cap: u64) -> Result<()> {
    let cap = cap.min(SPACE_CAP);
    let size = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > cap {
        return Err(Error::CapExceeded { what: "vector space", size, cap });
    }
    Ok(())
}

impl Instance {
    /// Order of the field the vectors live over.
    pub fn field_order(&self) -> u64 {
        match *self {
            Instance::C2Linear { q, .. }
            | Instance::C2SpCase1 { q, .. }
            | Instance::C2SpCase2 { q, .. }
            | Instance::Tensor { q, .. }
            | Instance::TensorSp { q, .. }
            | Instance::Extraspecial { q }
            | Instance::Unitary { q, .. }
            | Instance::Quadratic { q, .. } => q,
            Instance::Subfield { q0, r, .. } | Instance::SubfieldSp { q0, r, .. } => q0.saturating_pow(r),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Instance::C2Linear { m, t, .. } | Instance::C2SpCase1 { m, t, .. } => m * t,
            Instance::C2SpCase2 { m, .. } => 2 * m,
            Instance::Tensor { k, m, .. } | Instance::TensorSp { k, m, .. } => k * m,
            Instance::Subfield { n, .. } | Instance::SubfieldSp { n, .. } => n,
            Instance::Extraspecial { .. } => 2,
            Instance::Unitary { n, .. } | Instance::Quadratic { n, .. } => n,
        }
    }

    pub fn build(&self, cap: u64) -> Result<Built> {
        check_size(self.field_order(), self.dim(), cap)?;
        let mut subfield = None;
        let (group, labeler) = match *self {
            Instance::C2Linear { q, m, t } => (oracle::generators_c2_linear(m, t, field(q)?)?, Labeler::Blocks { m, t }),
            Instance::C2SpCase1 { q, m, t } => (oracle::generators_c2_sp_case1(m, t, field(q)?)?, Labeler::Blocks { m, t }),
            Instance::C2SpCase2 { q, m } => (oracle::generators_c2_sp_case2(m, field(q)?)?, Labeler::Pairing { m }),
            Instance::Tensor { q, k, m, swap } => (oracle::generators_tensor(k, m, swap, field(q)?)?, Labeler::Tensor { k, m }),
            Instance::TensorSp { q, k, m, kind } => (oracle::generators_tensor_sp(k, m, kind, field(q)?)?, Labeler::Oracle),
            Instance::Subfield { q0, r, n } => {
                let (f, sub) = oracle::subfield_pair(q0, r)?;
                let cls = SubfieldClassifier::new(f.clone(), sub, n)?;
                (oracle::generators_c5(n, f, sub)?, Labeler::Subfield(cls))
            }
            Instance::SubfieldSp { q0, r, n } => {
                let (f, sub) = oracle::subfield_pair(q0, r)?;
                subfield = Some(SubfieldClassifier::new(f.clone(), sub, n)?);
                (oracle::generators_c5_sp(n, f, sub)?, Labeler::Oracle)
            }
            Instance::Extraspecial { q } => (oracle::generators_c6_t1_type4(field(q)?)?, Labeler::Oracle),
            Instance::Unitary { q, n } => {
                let form = ClassicalForm::standard(FormKind::Unitary, n, field(q)?)?;
                (oracle::generators_c8(&form)?, Labeler::Form(form))
            }
            Instance::Quadratic { q, n, kind } => {
                if !kind.is_quadratic() {
                    return Err(Error::IncompatibleForm(format!("{kind:?} is not a quadratic kind")));
                }
                let form = ClassicalForm::standard(kind, n, field(q)?)?;
                (oracle::generators_c8(&form)?, Labeler::Form(form))
            }
        };
        Ok(Built { instance: *self, group, labeler, subfield })
    }
}

impl Built {
    pub fn field(&self) -> &Field {
        self.group.field()
    }

    pub fn has_closed_form(&self) -> bool {
        !matches!(self.labeler, Labeler::Oracle)
    }

    /// Closed-form label of a nonzero vector. Oracle-only instances have none.
    pub fn label(&self, v: &[Fe]) -> Result<OrbitLabel> {
        let f = self.field();
        match &self.labeler {
            Labeler::Blocks { m, t } => Ok(OrbitLabel::Blocks(block_count(v, *m, *t)?)),
            Labeler::Pairing { m } => pairing_label(v, *m, f),
            Labeler::Tensor { k, m } => Ok(OrbitLabel::TensorRank(tensor_rank(v, *k, *m, f)?)),
            Labeler::Subfield(cls) => cls.label(v),
            Labeler::Form(form) => Ok(OrbitLabel::Form(form.vector_class(v)?)),
            Labeler::Oracle => Err(Error::InvalidParameters(format!("{} has no closed-form labels", self.instance))),
        }
    }

    /// Label of every vector index; `None` for the zero vector.
    pub fn labels(&self) -> Result<Vec<Option<OrbitLabel>>> {
        if let Labeler::Oracle = self.labeler {
            let part = all_orbits(&self.group);
            return Ok(part.orbit_of.iter().map(|&o| (o != u32::MAX).then_some(OrbitLabel::Orbit(o))).collect());
        }
        let space = &self.group.space;
        let mut out: Vec<Option<OrbitLabel>> = (1..space.size())
            .into_par_iter()
            .map(|i| self.label(&space.vector(i)).map(Some))
            .collect::<Result<_>>()?;
        out.insert(0, None);
        Ok(out)
    }

    /// Orbits of the labelling in increasing label order.
    pub fn orbits(&self) -> Result<Vec<LabeledOrbit>> {
        Ok(group_by_label(&self.labels()?))
    }

    pub fn predict(&self, label: &OrbitLabel, rep: &[Fe]) -> Result<Prediction> {
        let f = self.field();
        let q = f.order() as u64;
        Ok(match (self.instance, label) {
            (Instance::C2Linear { m, t, .. }, OrbitLabel::Blocks(s)) => {
                if q.pow(m as u32) > 2 {
                    if 2 * s >= t {
                        Prediction::two("GL-1")
                    } else {
                        Prediction::not_two()
                    }
                } else if t == 2 {
                    // GF(2)^2 under the swap: the group is reducible
                    Prediction::new(None, Claim::Open)
                } else {
                    Prediction::not_two()
                }
            }
            (Instance::C2SpCase1 { t, .. }, OrbitLabel::Blocks(s)) => {
                if 2 * s >= t {
                    Prediction::two("SP-1")
                } else {
                    Prediction::not_two()
                }
            }
            (Instance::C2SpCase2 { m, .. }, label) => {
                // the decomposition is only a symplectic one for n >= 4, q odd at n = 4
                if m < 2 || (m == 2 && q % 2 == 0) || q.pow(m as u32) == 2 {
                    Prediction::new(None, Claim::Open)
                } else if *label == OrbitLabel::OneHalf {
                    Prediction::two("SP-1")
                } else {
                    Prediction::two("SP-2")
                }
            }
            (Instance::Tensor { k, m, swap, .. }, OrbitLabel::TensorRank(s)) => {
                if 2 * s >= k.min(m) {
                    Prediction::two(if swap { "GL-6" } else { "GL-2" })
                } else {
                    Prediction::not_two()
                }
            }
            (Instance::TensorSp { k, m, .. }, _) => {
                if 2 * tensor_rank(rep, k, m, f)? < k.min(m) {
                    Prediction::not_two()
                } else {
                    Prediction::new(None, Claim::Open)
                }
            }
            (Instance::Subfield { q0, r, n }, OrbitLabel::Subfield { c, .. }) => predict_subfield(q0, r, n, *c as u32)?,
            (Instance::SubfieldSp { q0, r, n }, _) => {
                let cls = self.subfield.as_ref().expect("built with subfield data");
                let a = cls.c_value(rep)? as u32;
                let s = window_s(a, r, q0)?;
                let v = c5_bound_predicates(n as u64, r as u64, q0, a as u64, s, f.degree() as u64)?;
                if v.sp_fires() {
                    Prediction::not_two()
                } else {
                    Prediction::new(None, Claim::Open)
                }
            }
            (Instance::Extraspecial { .. }, _) => Prediction::two("SP-3"),
            (Instance::Unitary { n, .. }, _) => {
                if n >= 2 {
                    Prediction::two("GL-7")
                } else {
                    Prediction::not_two()
                }
            }
            (Instance::Quadratic { q, n, kind }, OrbitLabel::Form(class)) => predict_quadratic(q, n, kind, *class),
            (inst, label) => {
                return Err(Error::InvalidParameters(format!("label {label} does not belong to {inst}")));
            }
        })
    }
}

/// Claim for the subfield-case orbit with `c(v) = a`.
pub fn predict_subfield(q0: u64, r: u32, n: usize, a: u32) -> Result<Prediction> {
    let n32 = n as u32;
    let small = n32.min(r);
    if a == 1 {
        let row = if r == 2 || n32 == 2 { Some("GL-4") } else { None };
        return Ok(Prediction::new(row, Claim::Exactly(small)));
    }
    if a + 1 >= r {
        let row = if r > 2 && n32 > 2 { Some("GL-3") } else { None };
        return Ok(Prediction::new(row, Claim::Two));
    }
    let s = window_s(a, r, q0)?;
    // the symplectic multiplier is irrelevant to the general-linear verdict
    let v = c5_bound_predicates(n as u64, r as u64, q0, a as u64, s, 1)?;
    Ok(if v.gl_fires() { Prediction::not_two() } else { Prediction::new(None, Claim::Open) })
}

fn predict_quadratic(q: u64, n: usize, kind: FormKind, class: VectorClass) -> Prediction {
    let odd_q = q % 2 == 1;
    match kind {
        FormKind::QuadraticOddSquare | FormKind::QuadraticOddNonsquare => {
            if n == 1 {
                Prediction::not_two()
            } else if n == 3 && q == 3 {
                if class == VectorClass::Singular {
                    Prediction::two("GL-8")
                } else {
                    Prediction::not_two()
                }
            } else {
                Prediction::two("GL-9")
            }
        }
        FormKind::QuadraticPlus if odd_q => Prediction::two("GL-10"),
        FormKind::QuadraticMinus if odd_q => {
            if n > 2 {
                Prediction::two("GL-11")
            } else {
                Prediction::not_two()
            }
        }
        FormKind::QuadraticPlus => {
            if n == 2 && q == 2 {
                if class == VectorClass::Singular {
                    Prediction::two("SP-4")
                } else {
                    Prediction::not_two()
                }
            } else {
                Prediction::two("SP-5")
            }
        }
        _ => {
            if n > 2 {
                Prediction::two("SP-6")
            } else {
                Prediction::not_two()
            }
        }
    }
}

/// Groups vector indices by label; the zero vector (label `None`) is skipped.
pub fn group_by_label(labels: &[Option<OrbitLabel>]) -> Vec<LabeledOrbit> {
    let mut map: BTreeMap<&OrbitLabel, Vec<u32>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(l) = l {
            map.entry(l).or_default().push(i as u32);
        }
    }
    map.into_iter().map(|(label, members)| LabeledOrbit { label: label.clone(), members }).collect()
}

/// Outcome of comparing a labelling with the oracle's orbit partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCheck {
    pub equal: bool,
    pub label_classes: usize,
    pub orbits: usize,
    /// Pairs of vector indices on which the two partitions disagree: same
    /// label but different orbits, or the other way round. At most ten.
    pub disagreements: Vec<(u32, u32)>,
}

pub fn compare_partition(labels: &[Option<OrbitLabel>], oracle: &OrbitPartition) -> PartitionCheck {
    let mut first_of_label: BTreeMap<&OrbitLabel, u32> = BTreeMap::new();
    let mut first_of_orbit: BTreeMap<u32, u32> = BTreeMap::new();
    let mut bad = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let i = i as u32;
        let o = oracle.orbit_of[i as usize];
        let Some(l) = l else { continue };
        let a = *first_of_label.entry(l).or_insert(i);
        if oracle.orbit_of[a as usize] != o {
            bad.push((a, i));
        }
        let b = *first_of_orbit.entry(o).or_insert(i);
        if labels[b as usize].as_ref() != Some(l) {
            bad.push((b, i));
        }
    }
    let equal = bad.is_empty() && first_of_label.len() == oracle.count();
    bad.sort_unstable();
    bad.dedup();
    bad.truncate(10);
    PartitionCheck { equal, label_classes: first_of_label.len(), orbits: oracle.count(), disagreements: bad }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_names() {
        assert_eq!(Instance::C2Linear { q: 3, m: 1, t: 2 }.to_string(), "c2lin q=3 m=1 t=2");
        assert_eq!(Instance::Tensor { q: 2, k: 2, m: 2, swap: true }.to_string(), "c7 q=2 m=2");
        assert_eq!(Instance::Quadratic { q: 3, n: 2, kind: FormKind::QuadraticMinus }.to_string(), "c8o- q=3 n=2");
    }

    #[test]
    fn tensor_census() {
        let b = Instance::Tensor { q: 2, k: 2, m: 2, swap: false }.build(SPACE_CAP).unwrap();
        let sizes: Vec<(String, usize)> = b.orbits().unwrap().iter().map(|o| (o.label.to_string(), o.members.len())).collect();
        assert_eq!(sizes, vec![("Y1".to_string(), 9), ("Y2".to_string(), 6)]);
    }

    #[test]
    fn cap_is_enforced() {
        let err = Instance::Subfield { q0: 2, r: 3, n: 3 }.build(100).err();
        assert!(matches!(err, Some(Error::CapExceeded { .. })));
    }

    #[test]
    fn comparison_reports_pairs() {
        let part = OrbitPartition { orbit_of: vec![u32::MAX, 0, 0, 1], reps: vec![1, 3], sizes: vec![2, 1] };
        let good = vec![None, Some(OrbitLabel::Blocks(1)), Some(OrbitLabel::Blocks(1)), Some(OrbitLabel::Blocks(2))];
        assert!(compare_partition(&good, &part).equal);
        let coarse = vec![None, Some(OrbitLabel::Blocks(1)), Some(OrbitLabel::Blocks(1)), Some(OrbitLabel::Blocks(1))];
        let check = compare_partition(&coarse, &part);
        assert!(!check.equal);
        assert_eq!(check.disagreements, vec![(1, 3)]);
        let fine = vec![None, Some(OrbitLabel::Blocks(1)), Some(OrbitLabel::Blocks(2)), Some(OrbitLabel::Blocks(3))];
        assert_eq!(compare_partition(&fine, &part).disagreements, vec![(1, 2)]);
    }

    #[test]
    fn subfield_predictions() {
        assert_eq!(predict_subfield(2, 3, 3, 1).unwrap().claim, Claim::Exactly(3));
        assert_eq!(predict_subfield(2, 3, 3, 2).unwrap(), Prediction::two("GL-3"));
        assert_eq!(predict_subfield(2, 2, 2, 1).unwrap(), Prediction::new(Some("GL-4"), Claim::Exactly(2)));
        assert_eq!(predict_subfield(2, 5, 5, 2).unwrap().claim, Claim::NotTwo);
        assert_eq!(predict_subfield(2, 5, 5, 3).unwrap().claim, Claim::Open);
    }
}
