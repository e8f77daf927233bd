//! The necessary conditions a bit multigraph satisfies when it comes from a
//! crossword grid.
//!
//! Conditions are checked on the graph as produced by voiding, isolated
//! vertices included: the edge/vertex count and the floor set sizes depend
//! on them.
//!
//! A few clauses admit more than one reading. The primary reading decides
//! the verdict; the others are evaluated too and listed in
//! [`ConditionReport::alternates`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bitgraph::{BitMultigraph, Edge, EdgeLabel, Index, Part};

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConditionId {
    C1_Squareness,
    C2_WordLength,
    C3_Connectivity,
    C4_EdgeVertexCount,
    C5a_ZeroFloorEdges,
    C5b_NonzeroFloorEdges,
    C5c_NoDoubles,
    C5d_BlueAboveRed,
    C5e_PurpleInBetween,
    C5f_MaximalSameLabel,
    C5g_BlueSweep,
    C5h_RedSweep,
    C5i_PurpleSweep,
}

impl ConditionId {
    pub const ALL: [ConditionId; 13] = [
        ConditionId::C1_Squareness,
        ConditionId::C2_WordLength,
        ConditionId::C3_Connectivity,
        ConditionId::C4_EdgeVertexCount,
        ConditionId::C5a_ZeroFloorEdges,
        ConditionId::C5b_NonzeroFloorEdges,
        ConditionId::C5c_NoDoubles,
        ConditionId::C5d_BlueAboveRed,
        ConditionId::C5e_PurpleInBetween,
        ConditionId::C5f_MaximalSameLabel,
        ConditionId::C5g_BlueSweep,
        ConditionId::C5h_RedSweep,
        ConditionId::C5i_PurpleSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionId::C1_Squareness => "C1_Squareness",
            ConditionId::C2_WordLength => "C2_WordLength",
            ConditionId::C3_Connectivity => "C3_Connectivity",
            ConditionId::C4_EdgeVertexCount => "C4_EdgeVertexCount",
            ConditionId::C5a_ZeroFloorEdges => "C5a_ZeroFloorEdges",
            ConditionId::C5b_NonzeroFloorEdges => "C5b_NonzeroFloorEdges",
            ConditionId::C5c_NoDoubles => "C5c_NoDoubles",
            ConditionId::C5d_BlueAboveRed => "C5d_BlueAboveRed",
            ConditionId::C5e_PurpleInBetween => "C5e_PurpleInBetween",
            ConditionId::C5f_MaximalSameLabel => "C5f_MaximalSameLabel",
            ConditionId::C5g_BlueSweep => "C5g_BlueSweep",
            ConditionId::C5h_RedSweep => "C5h_RedSweep",
            ConditionId::C5i_PurpleSweep => "C5i_PurpleSweep",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a failed check points at.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<Part>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub floor: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<(Part, Index)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<Edge>,
    pub detail: String,
}

impl Witness {
    fn new(detail: impl Into<String>) -> Self {
        Witness {
            detail: detail.into(),
            ..Witness::default()
        }
    }

    fn floor(mut self, part: Part, floor: u32) -> Self {
        self.part = Some(part);
        self.floor = Some(floor);
        self
    }

    fn vertex(mut self, part: Part, v: &Index) -> Self {
        self.vertices.push((part, v.clone()));
        self
    }

    fn edge(mut self, e: &Edge) -> Self {
        self.edges.push(e.clone());
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.detail)?;
        if let (Some(p), Some(k)) = (self.part, self.floor) {
            write!(f, "; floor {p}{k}")?;
        }
        for (p, v) in &self.vertices {
            write!(f, "; vertex {p} {v}")?;
        }
        for e in &self.edges {
            write!(f, "; edge {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
    NotApplicable,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }

    fn from_result(r: Result<(), Witness>) -> Self {
        match r {
            Ok(()) => Verdict::Pass,
            Err(w) => Verdict::Fail(w),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("verdict", self.label())?;
        if let Verdict::Fail(w) = self {
            m.serialize_entry("witness", w)?;
        }
        m.end()
    }
}

/// The floors of the opposite part a floor set is *not* adjacent to through
/// one label, in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepGaps {
    pub condition: ConditionId,
    pub part: Part,
    pub floor: u32,
    pub missing: Vec<u32>,
}

/// A non-primary reading of a clause and what it says about this graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternateReading {
    pub condition: ConditionId,
    pub reading: &'static str,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeVertexCount {
    pub edges: usize,
    pub part_size: usize,
    pub sum: usize,
    /// `2n² + 3n + 2`, one more than the triangular number `T(2n+1)`.
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub n: Option<usize>,
    pub verdicts: BTreeMap<ConditionId, Verdict>,
    pub sweep_gaps: Vec<SweepGaps>,
    pub alternates: Vec<AlternateReading>,
    pub edge_vertex_count: Option<EdgeVertexCount>,
}

impl ConditionReport {
    pub fn verdict(&self, c: ConditionId) -> &Verdict {
        &self.verdicts[&c]
    }

    /// Every applicable condition passes.
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|v| !v.failed())
    }

    pub fn failures(&self) -> Vec<ConditionId> {
        self.verdicts
            .iter()
            .filter(|(_, v)| v.failed())
            .map(|(c, _)| *c)
            .collect()
    }

    pub fn alternate(&self, c: ConditionId, reading: &str) -> Option<&Verdict> {
        self.alternates
            .iter()
            .find(|a| a.condition == c && a.reading == reading)
            .map(|a| &a.verdict)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        match self.n {
            Some(n) => out.push_str(&format!("n = {n}\n")),
            None => out.push_str("n = ?\n"),
        }
        for (c, v) in &self.verdicts {
            out.push_str(&format!("{:<24}{:<6}", c.name(), v.label()));
            if let Verdict::Fail(w) = v {
                out.push_str(&w.to_string());
            }
            out.push('\n');
        }
        if let Some(c) = &self.edge_vertex_count {
            out.push_str(&format!(
                "e + k = {} + {} = {} (target {})\n",
                c.edges, c.part_size, c.sum, c.target
            ));
        }
        for a in &self.alternates {
            out.push_str(&format!("alt {} [{}]: {}", a.condition, a.reading, a.verdict.label()));
            if let Verdict::Fail(w) = &a.verdict {
                out.push_str(&format!(" {w}"));
            }
            out.push('\n');
        }
        out.push_str(if self.passed() {
            "overall: pass\n"
        } else {
            "overall: FAIL\n"
        });
        out
    }
}

impl Serialize for ConditionReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Conditions<'a>(&'a BTreeMap<ConditionId, Verdict>);
        impl Serialize for Conditions<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (c, v) in self.0 {
                    m.serialize_entry(c.name(), v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("n", &self.n)?;
        m.serialize_entry("pass", &self.passed())?;
        m.serialize_entry("conditions", &Conditions(&self.verdicts))?;
        m.serialize_entry("edge_vertex_count", &self.edge_vertex_count)?;
        m.serialize_entry("sweep_gaps", &self.sweep_gaps)?;
        m.serialize_entry("alternates", &self.alternates)?;
        m.end()
    }
}

fn floor_of(v: &Index) -> u32 {
    v.int_part()
}

/// Lookup tables shared by the individual checks.
struct Floors<'a> {
    g: &'a BitMultigraph,
    /// Per part, floor value to members in increasing index order.
    members: [BTreeMap<u32, Vec<&'a Index>>; 2],
}

fn slot(p: Part) -> usize {
    match p {
        Part::A => 0,
        Part::B => 1,
    }
}

impl<'a> Floors<'a> {
    fn new(g: &'a BitMultigraph) -> Self {
        let collect = |p: Part| {
            let mut m: BTreeMap<u32, Vec<&Index>> = BTreeMap::new();
            for v in g.part(p) {
                m.entry(floor_of(v)).or_default().push(v);
            }
            m
        };
        Floors {
            g,
            members: [collect(Part::A), collect(Part::B)],
        }
    }

    fn of(&self, p: Part) -> &BTreeMap<u32, Vec<&'a Index>> {
        &self.members[slot(p)]
    }

    fn members(&self, p: Part, k: u32) -> &[&'a Index] {
        self.of(p).get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    fn floor_edges(&self, p: Part, k: u32) -> impl Iterator<Item = &'a Edge> + '_ {
        self.g.edges().iter().filter(move |e| floor_of(e.end(p)) == k)
    }

    /// Opposite-part floors of the `label` edges at `v`.
    fn neighbor_floors(&self, p: Part, v: &Index, label: EdgeLabel) -> BTreeSet<u32> {
        self.g
            .incident(p, v)
            .filter(|e| e.label == label)
            .map(|e| floor_of(e.end(p.opposite())))
            .collect()
    }

    /// Floors of the opposite part holding exactly one vertex, restricted to
    /// floor values in `from..`, and to non-isolated vertices if asked.
    fn singleton_floors(&self, p: Part, from: u32, non_isolated: bool) -> usize {
        self.of(p.opposite())
            .range(from..)
            .filter(|(_, ms)| ms.len() == 1)
            .filter(|(_, ms)| !non_isolated || self.g.degree(p.opposite(), ms[0]) > 0)
            .count()
    }
}

/// Check every condition on `g`.
pub fn check_all(g: &BitMultigraph) -> ConditionReport {
    let floors = Floors::new(g);
    let mut verdicts = BTreeMap::new();
    let mut alternates = Vec::new();
    let mut sweep_gaps = Vec::new();

    let c1 = check_c1(&floors);
    let n = c1.as_ref().ok().copied();
    verdicts.insert(ConditionId::C1_Squareness, Verdict::from_result(c1.map(|_| ())));

    verdicts.insert(ConditionId::C2_WordLength, Verdict::from_result(check_c2(g, false)));
    alternates.push(AlternateReading {
        condition: ConditionId::C2_WordLength,
        reading: "literal_degree",
        verdict: Verdict::from_result(check_c2(g, true)),
    });
    verdicts.insert(ConditionId::C3_Connectivity, Verdict::from_result(check_c3(g)));

    let mut edge_vertex_count = None;
    match n {
        None => {
            for c in &ConditionId::ALL[3..] {
                verdicts.insert(*c, Verdict::NotApplicable);
            }
        }
        Some(n) => {
            let (c4, counts) = check_c4(g, n);
            edge_vertex_count = Some(counts);
            verdicts.insert(ConditionId::C4_EdgeVertexCount, Verdict::from_result(c4));

            verdicts.insert(
                ConditionId::C5a_ZeroFloorEdges,
                Verdict::from_result(check_c5a(&floors, n, false)),
            );
            alternates.push(AlternateReading {
                condition: ConditionId::C5a_ZeroFloorEdges,
                reading: "nonisolated_singletons",
                verdict: Verdict::from_result(check_c5a(&floors, n, true)),
            });

            verdicts.insert(
                ConditionId::C5b_NonzeroFloorEdges,
                Verdict::from_result(check_c5b(&floors, n, SingletonCount::NonzeroFloors)),
            );
            alternates.push(AlternateReading {
                condition: ConditionId::C5b_NonzeroFloorEdges,
                reading: "literal_r_zero",
                verdict: Verdict::from_result(check_c5b(&floors, n, SingletonCount::AllFloors)),
            });
            alternates.push(AlternateReading {
                condition: ConditionId::C5b_NonzeroFloorEdges,
                reading: "nonisolated_singletons",
                verdict: Verdict::from_result(check_c5b(&floors, n, SingletonCount::NonIsolated)),
            });

            verdicts.insert(ConditionId::C5c_NoDoubles, Verdict::from_result(check_c5c(g)));
            verdicts.insert(ConditionId::C5d_BlueAboveRed, Verdict::from_result(check_c5d(&floors)));
            verdicts.insert(ConditionId::C5e_PurpleInBetween, Verdict::from_result(check_c5e(g)));
            verdicts.insert(
                ConditionId::C5f_MaximalSameLabel,
                Verdict::from_result(check_c5f(&floors, n)),
            );

            for (c, label) in [
                (ConditionId::C5g_BlueSweep, EdgeLabel::Plus),
                (ConditionId::C5h_RedSweep, EdgeLabel::Minus),
            ] {
                let mut strict = Ok(());
                let mut loose = Ok(());
                for p in [Part::A, Part::B] {
                    for k in 0..=n as u32 {
                        let s = sweep(&floors, n, p, k, label);
                        if let Some(missing) = s.gaps {
                            sweep_gaps.push(SweepGaps {
                                condition: c,
                                part: p,
                                floor: k,
                                missing,
                            });
                        }
                        strict = strict.and(s.strict);
                        loose = loose.and(s.loose);
                    }
                }
                verdicts.insert(c, Verdict::from_result(strict));
                alternates.push(AlternateReading {
                    condition: c,
                    reading: "beyond_unconstrained",
                    verdict: Verdict::from_result(loose),
                });
            }

            let mut strict = Ok(());
            let mut loose = Ok(());
            for p in [Part::A, Part::B] {
                let s = sweep(&floors, n, p, 0, EdgeLabel::Zero);
                if let Some(missing) = s.gaps {
                    sweep_gaps.push(SweepGaps {
                        condition: ConditionId::C5i_PurpleSweep,
                        part: p,
                        floor: 0,
                        missing,
                    });
                }
                let rest = purple_zero_zero(&floors).and_then(|_| purple_sides(&floors, p));
                strict = strict.and(s.strict).and(rest.clone());
                loose = loose.and(s.loose).and(rest);
            }
            verdicts.insert(ConditionId::C5i_PurpleSweep, Verdict::from_result(strict));
            alternates.push(AlternateReading {
                condition: ConditionId::C5i_PurpleSweep,
                reading: "beyond_unconstrained",
                verdict: Verdict::from_result(loose),
            });
        }
    }

    ConditionReport {
        n,
        verdicts,
        sweep_gaps,
        alternates,
        edge_vertex_count,
    }
}

/// Both parts hold floors `0..=n` and nothing else; returns `n`.
fn check_c1(f: &Floors) -> Result<usize, Witness> {
    for p in [Part::A, Part::B] {
        if f.of(p).is_empty() {
            return Err(Witness::new(format!("part {p} is empty")));
        }
        for (expected, &k) in f.of(p).keys().enumerate() {
            if k as usize != expected {
                return Err(Witness::new(format!("floor {expected} is missing")).floor(p, expected as u32));
            }
        }
    }
    let (a, b) = (f.of(Part::A).len(), f.of(Part::B).len());
    if a != b {
        return Err(Witness::new(format!("part A has {a} floor sets, part B has {b}")));
    }
    Ok(a - 1)
}

fn is_zero_zero(e: &Edge) -> bool {
    floor_of(&e.a) == 0 && floor_of(&e.b) == 0
}

/// Every non-isolated vertex stands for an answer of length at least 3.
///
/// A vertex on the zero-zero edge holds the answer through the center, of
/// which the graph only sees the center and one half: its length is
/// `2·deg − 1`. With `literal` the plain degree is used throughout.
fn check_c2(g: &BitMultigraph, literal: bool) -> Result<(), Witness> {
    for p in [Part::A, Part::B] {
        for v in g.part(p) {
            let deg = g.degree(p, v);
            if deg == 0 {
                continue;
            }
            let through_center = !literal && g.incident(p, v).any(is_zero_zero);
            let length = if through_center { 2 * deg - 1 } else { deg };
            if length < 3 {
                return Err(Witness::new(format!("answer length {length}")).vertex(p, v));
            }
        }
    }
    Ok(())
}

fn check_c3(g: &BitMultigraph) -> Result<(), Witness> {
    let Some(first) = g.edges().first() else {
        return Err(Witness::new("no edges"));
    };
    let mut adjacency: BTreeMap<(Part, &Index), Vec<(Part, &Index)>> = BTreeMap::new();
    for e in g.edges() {
        adjacency.entry((Part::A, &e.a)).or_default().push((Part::B, &e.b));
        adjacency.entry((Part::B, &e.b)).or_default().push((Part::A, &e.a));
    }
    let start = (Part::A, &first.a);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[&v] {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    match adjacency.keys().find(|v| !seen.contains(*v)) {
        None => Ok(()),
        Some(&(p, v)) => Err(Witness::new("not reachable from the first edge")
            .vertex(Part::A, &first.a)
            .vertex(p, v)),
    }
}

fn check_c4(g: &BitMultigraph, n: usize) -> (Result<(), Witness>, EdgeVertexCount) {
    let (ka, kb) = (g.part(Part::A).len(), g.part(Part::B).len());
    let counts = EdgeVertexCount {
        edges: g.edge_count(),
        part_size: ka,
        sum: g.edge_count() + ka,
        target: 2 * n * n + 3 * n + 2,
    };
    let r = if ka != kb {
        Err(Witness::new(format!("|A| = {ka} but |B| = {kb}")))
    } else if counts.sum != counts.target {
        Err(Witness::new(format!(
            "e + k = {} but 2n^2+3n+2 = {}",
            counts.sum, counts.target
        )))
    } else {
        Ok(())
    };
    (r, counts)
}

fn check_c5a(f: &Floors, n: usize, non_isolated: bool) -> Result<(), Witness> {
    for p in [Part::A, Part::B] {
        let l = f.members(p, 0).len() as i64;
        let count = f.floor_edges(p, 0).count() as i64;
        let expected = n as i64 - l + 2;
        if count != expected {
            return Err(Witness::new(format!("{count} incident edges, expected n - l + 2 = {expected}")).floor(p, 0));
        }
        let singles = f.singleton_floors(p, 0, non_isolated) as i64;
        if count < singles {
            return Err(Witness::new(format!(
                "{count} incident edges < {singles} singleton floor sets opposite"
            ))
            .floor(p, 0));
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum SingletonCount {
    /// Floors `r >= 1`: a singleton zero floor contributes one edge, not two.
    NonzeroFloors,
    AllFloors,
    NonIsolated,
}

fn check_c5b(f: &Floors, n: usize, singles: SingletonCount) -> Result<(), Witness> {
    for p in [Part::A, Part::B] {
        for k in 1..=n as u32 {
            let l = f.members(p, k).len() as i64;
            let mut by_label: BTreeMap<EdgeLabel, usize> = BTreeMap::new();
            for e in f.floor_edges(p, k) {
                *by_label.entry(e.label).or_default() += 1;
            }
            for (label, cap) in [(EdgeLabel::Minus, n), (EdgeLabel::Plus, n), (EdgeLabel::Zero, 1)] {
                let have = by_label.get(&label).copied().unwrap_or(0);
                if have > cap {
                    return Err(
                        Witness::new(format!("{have} edges labeled {label}, at most {cap} allowed")).floor(p, k),
                    );
                }
            }
            let count = by_label.values().sum::<usize>() as i64;
            let expected = 2 * n as i64 - l + 2;
            if count != expected {
                return Err(
                    Witness::new(format!("{count} incident edges, expected 2n - l + 2 = {expected}")).floor(p, k),
                );
            }
            let s = match singles {
                SingletonCount::NonzeroFloors => f.singleton_floors(p, 1, false),
                SingletonCount::AllFloors => f.singleton_floors(p, 0, false),
                SingletonCount::NonIsolated => f.singleton_floors(p, 1, true),
            } as i64;
            if count < 2 * s {
                return Err(Witness::new(format!(
                    "{count} incident edges < 2 x {s} singleton floor sets opposite"
                ))
                .floor(p, k));
            }
        }
    }
    Ok(())
}

fn check_c5c(g: &BitMultigraph) -> Result<(), Witness> {
    let mut seen: BTreeMap<(u32, u32, EdgeLabel), &Edge> = BTreeMap::new();
    for e in g.edges() {
        let (fa, fb) = (floor_of(&e.a), floor_of(&e.b));
        let limited = match e.label {
            EdgeLabel::Plus | EdgeLabel::Minus => fa > 0 && fb > 0,
            EdgeLabel::Zero => fa == 0 || fb == 0,
        };
        if !limited {
            continue;
        }
        if let Some(prev) = seen.insert((fa, fb, e.label), e) {
            return Err(
                Witness::new(format!("two {} edges between floors A{fa} and B{fb}", e.label))
                    .edge(prev)
                    .edge(e),
            );
        }
    }
    Ok(())
}

/// For `b` in a nonzero floor and `a1 < a2` (both above 0) in one floor of
/// the other part, both joined to `b`: `{a1,b}` is `-` and `{a2,b}` is `+`.
fn check_c5d(f: &Floors) -> Result<(), Witness> {
    let zero = Index::integer(0);
    for p in [Part::A, Part::B] {
        let q = p.opposite();
        for b in f.g.part(q).iter().filter(|b| floor_of(b) > 0) {
            let mut by_floor: BTreeMap<u32, Vec<&Edge>> = BTreeMap::new();
            for e in f.g.incident(q, b).filter(|e| *e.end(p) > zero) {
                by_floor.entry(floor_of(e.end(p))).or_default().push(e);
            }
            for edges in by_floor.values() {
                for e1 in edges {
                    for e2 in edges {
                        if e1.end(p) < e2.end(p) && (e1.label != EdgeLabel::Minus || e2.label != EdgeLabel::Plus) {
                            return Err(Witness::new("lower vertex must take the - edge, upper the + edge")
                                .vertex(q, b)
                                .edge(e1)
                                .edge(e2));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_c5e(g: &BitMultigraph) -> Result<(), Witness> {
    for p in [Part::A, Part::B] {
        for v in g.part(p) {
            let labels: BTreeSet<EdgeLabel> = g.incident(p, v).map(|e| e.label).collect();
            if labels.contains(&EdgeLabel::Plus)
                && labels.contains(&EdgeLabel::Minus)
                && !labels.contains(&EdgeLabel::Zero)
            {
                return Err(Witness::new("incident to + and - but not 0").vertex(p, v));
            }
        }
    }
    Ok(())
}

fn check_c5f(f: &Floors, n: usize) -> Result<(), Witness> {
    for p in [Part::A, Part::B] {
        for (&k, members) in f.of(p) {
            for (label, target) in [(EdgeLabel::Plus, members.last()), (EdgeLabel::Minus, members.first())] {
                let edges: Vec<&Edge> = f.floor_edges(p, k).filter(|e| e.label == label).collect();
                if edges.is_empty() || edges.len() != n {
                    continue;
                }
                if let Some(e) = edges.iter().find(|e| Some(&e.end(p)) != target) {
                    let which = if label == EdgeLabel::Plus { "maximal" } else { "minimal" };
                    return Err(
                        Witness::new(format!("all {n} {label} edges must sit on the {which} member"))
                            .floor(p, k)
                            .edge(e),
                    );
                }
            }
        }
    }
    Ok(())
}

struct Sweep {
    /// Missing floors, `None` when the floor set has no edge of the label.
    gaps: Option<Vec<u32>>,
    /// Interval clause for every member, with `m_{l+1} = -1` and empty
    /// neighborhoods required past that; plus the no-crossing clause.
    strict: Result<(), Witness>,
    /// Interval clause for members `1..=l` only, plus no-crossing.
    loose: Result<(), Witness>,
}

/// Sweep structure of the `label` edges leaving floor `k` of part `p`.
///
/// Members are taken from the highest index down, except for `-` edges
/// which go from the lowest up. Member `i` must reach exactly the opposite
/// floors strictly between `m_{i-1}` and `m_i`.
fn sweep(f: &Floors, n: usize, p: Part, k: u32, label: EdgeLabel) -> Sweep {
    let reached: BTreeSet<u32> = f
        .floor_edges(p, k)
        .filter(|e| e.label == label)
        .map(|e| floor_of(e.end(p.opposite())))
        .collect();
    if reached.is_empty() {
        return Sweep {
            gaps: None,
            strict: Ok(()),
            loose: Ok(()),
        };
    }
    let missing: Vec<u32> = (0..=n as u32).rev().filter(|x| !reached.contains(x)).collect();
    let mut members: Vec<&Index> = f.members(p, k).to_vec();
    if label != EdgeLabel::Minus {
        members.reverse();
    }
    let l = missing.len();
    // m_0 = infinity, m_{l+1} = -1
    let bound = |i: usize| -> i64 {
        match i {
            0 => i64::MAX,
            i if i <= l => missing[i - 1] as i64,
            _ => -1,
        }
    };

    let mut strict = Ok(());
    let mut loose = Ok(());
    let mut previous: Option<(&Index, BTreeSet<u32>)> = None;
    for (pos, v) in members.iter().enumerate() {
        let i = pos + 1;
        let got = f.neighbor_floors(p, v, label);
        let expected: BTreeSet<u32> = if i <= l + 1 {
            (0..=n as u32)
                .filter(|&x| bound(i - 1) > x as i64 && x as i64 > bound(i))
                .collect()
        } else {
            BTreeSet::new()
        };
        if got != expected {
            let clause = if i <= l { "interval" } else { "beyond" };
            let w = Witness::new(format!(
                "{clause}: member {i} reaches floors {got:?} by {label}, expected {expected:?}"
            ))
            .floor(p, k)
            .vertex(p, v);
            if strict.is_ok() {
                strict = Err(w.clone());
            }
            if i <= l && loose.is_ok() {
                loose = Err(w);
            }
        }
        if !got.is_empty() {
            if let Some((u, before)) = &previous {
                if before.first() <= got.last() {
                    let w = Witness::new(format!(
                        "crossing: {label} edges of consecutive members overlap or cross"
                    ))
                    .floor(p, k)
                    .vertex(p, u)
                    .vertex(p, v);
                    if strict.is_ok() {
                        strict = Err(w.clone());
                    }
                    if loose.is_ok() {
                        loose = Err(w);
                    }
                }
            }
            previous = Some((v, got));
        }
    }
    Sweep {
        gaps: Some(missing),
        strict,
        loose,
    }
}

/// Zero-zero edges join the minimal member of each zero floor.
fn purple_zero_zero(f: &Floors) -> Result<(), Witness> {
    for e in
        f.g.edges()
            .iter()
            .filter(|e| e.label == EdgeLabel::Zero && is_zero_zero(e))
    {
        for p in [Part::A, Part::B] {
            if f.members(p, 0).first() != Some(&e.end(p)) {
                return Err(Witness::new("zero-zero edge must join minimal members")
                    .floor(p, 0)
                    .edge(e));
            }
        }
    }
    Ok(())
}

/// If zero floor of `p` reaches `y` by a 0 edge, members of `y`'s floor above
/// `y` carry no `-` edge and members below carry no `+` edge.
fn purple_sides(f: &Floors, p: Part) -> Result<(), Witness> {
    let q = p.opposite();
    for e in f.floor_edges(p, 0).filter(|e| e.label == EdgeLabel::Zero) {
        let y = e.end(q);
        for w in f.members(q, floor_of(y)) {
            let banned = match (*w).cmp(y) {
                std::cmp::Ordering::Greater => EdgeLabel::Minus,
                std::cmp::Ordering::Less => EdgeLabel::Plus,
                std::cmp::Ordering::Equal => continue,
            };
            if let Some(bad) = f.g.incident(q, w).find(|x| x.label == banned) {
                return Err(Witness::new(format!(
                    "side clause: member {w} of the floor of {y} has a {banned} edge"
                ))
                .floor(q, floor_of(y))
                .edge(e)
                .edge(bad));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{parse_grid, Coord};
    use crate::voiding::{unvoided_graph, void_edge, voided_from_grid};

    fn ix(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn graph(a: &[&str], b: &[&str], edges: &[(&str, &str, EdgeLabel)]) -> BitMultigraph {
        BitMultigraph::new(
            a.iter().map(|s| ix(s)),
            b.iter().map(|s| ix(s)),
            edges.iter().map(|(x, y, l)| Edge::new(ix(x), ix(y), *l)),
        )
        .unwrap()
    }

    #[test]
    fn template_passes_everything() {
        for n in 1..6 {
            let r = check_all(&unvoided_graph(n));
            assert_eq!(r.n, Some(n));
            assert!(r.passed(), "n = {n}\n{}", r.to_table());
            let expected_failures: &[&str] = if n == 1 {
                &["literal_r_zero", "literal_degree"]
            } else {
                &["literal_r_zero"]
            };
            for a in &r.alternates {
                assert!(
                    a.verdict.passed() || expected_failures.contains(&a.reading),
                    "{} {}",
                    a.condition,
                    a.reading
                );
            }
        }
    }

    #[test]
    fn c4_numbers_for_seven_by_seven() {
        let r = check_all(&unvoided_graph(3));
        let c = r.edge_vertex_count.unwrap();
        assert_eq!((c.edges, c.part_size, c.sum, c.target), (25, 4, 29, 29));
        for n in 0..20 {
            let t = 2 * n * n + 3 * n + 2;
            assert_eq!(t, (2 * n + 1) * (2 * n + 2) / 2 + 1);
        }
    }

    #[test]
    fn literal_r_zero_fails_on_template() {
        let r = check_all(&unvoided_graph(2));
        assert!(r
            .alternate(ConditionId::C5b_NonzeroFloorEdges, "literal_r_zero")
            .unwrap()
            .failed());
    }

    #[test]
    fn three_by_three_center_degree() {
        let r = check_all(&unvoided_graph(1));
        assert!(r.verdict(ConditionId::C2_WordLength).passed());
        // the center answer has degree 2 in the folded graph
        assert!(r
            .alternate(ConditionId::C2_WordLength, "literal_degree")
            .unwrap()
            .failed());
    }

    #[test]
    fn missing_floor() {
        let g = graph(&["0", "1", "2"], &["0", "1", "3"], &[("1", "1", EdgeLabel::Plus)]);
        let r = check_all(&g);
        let w = r.verdict(ConditionId::C1_Squareness).witness().unwrap();
        assert_eq!((w.part, w.floor), (Some(Part::B), Some(2)));
        assert_eq!(r.verdict(ConditionId::C4_EdgeVertexCount), &Verdict::NotApplicable);
        assert_eq!(r.verdict(ConditionId::C5i_PurpleSweep), &Verdict::NotApplicable);
    }

    #[test]
    fn short_answer_fails_word_length() {
        let g = parse_grid(".....\n.....\n..#..\n.....\n.....").unwrap();
        let r = check_all(&voided_from_grid(&g).unwrap());
        assert!(r.verdict(ConditionId::C2_WordLength).failed());
    }

    #[test]
    fn disconnected_and_edgeless() {
        let g = graph(
            &["0", "1"],
            &["0", "1"],
            &[("0", "0", EdgeLabel::Zero), ("1", "1", EdgeLabel::Plus)],
        );
        assert!(check_all(&g).verdict(ConditionId::C3_Connectivity).failed());
        let empty = graph(&["0"], &["0"], &[]);
        assert!(check_all(&empty).verdict(ConditionId::C3_Connectivity).failed());
    }

    #[test]
    fn edge_vertex_count_off_by_one() {
        let mut g = unvoided_graph(3);
        let extra = Edge::new(ix("1"), ix("1"), EdgeLabel::Plus);
        g = BitMultigraph::new(
            g.part(Part::A).iter().cloned(),
            g.part(Part::B).iter().cloned(),
            g.edges().iter().cloned().chain([extra]),
        )
        .unwrap();
        let r = check_all(&g);
        assert_eq!(r.edge_vertex_count.as_ref().unwrap().sum, 30);
        assert!(r.verdict(ConditionId::C4_EdgeVertexCount).failed());
        assert!(r.verdict(ConditionId::C5c_NoDoubles).failed());
    }

    #[test]
    fn voiding_keeps_floor_counts() {
        let mut g = unvoided_graph(3);
        for c in [Coord::new(3, 3), Coord::new(2, 0), Coord::new(-1, 2)] {
            let e = g.edge_with_cell(c).unwrap().clone();
            g = void_edge(&g, &e).unwrap();
            let r = check_all(&g);
            for id in [
                ConditionId::C4_EdgeVertexCount,
                ConditionId::C5a_ZeroFloorEdges,
                ConditionId::C5b_NonzeroFloorEdges,
                ConditionId::C5c_NoDoubles,
            ] {
                assert!(r.verdict(id).passed(), "{id} after voiding {c}\n{}", r.to_table());
            }
        }
    }

    #[test]
    fn two_zero_edges_on_nonzero_floor() {
        let g = graph(
            &["0", "1"],
            &["0.0", "0.1", "1"],
            &[("1", "0.0", EdgeLabel::Zero), ("1", "0.1", EdgeLabel::Zero)],
        );
        let w = check_all(&g)
            .verdict(ConditionId::C5b_NonzeroFloorEdges)
            .witness()
            .cloned()
            .unwrap();
        assert!(w.detail.contains("edges labeled 0"));
    }

    #[test]
    fn blue_above_red_swapped() {
        // a1 < a2 in floor 1, both joined to b = 1 with the labels reversed
        let g = graph(
            &["0", "1.0", "1.1"],
            &["0", "1"],
            &[("1.0", "1", EdgeLabel::Plus), ("1.1", "1", EdgeLabel::Minus)],
        );
        let r = check_all(&g);
        let w = r.verdict(ConditionId::C5d_BlueAboveRed).witness().unwrap();
        assert_eq!(w.vertices, vec![(Part::B, ix("1"))]);
        assert_eq!(w.edges.len(), 2);

        let fixed = graph(
            &["0", "1.0", "1.1"],
            &["0", "1"],
            &[("1.0", "1", EdgeLabel::Minus), ("1.1", "1", EdgeLabel::Plus)],
        );
        assert!(check_all(&fixed).verdict(ConditionId::C5d_BlueAboveRed).passed());
    }

    #[test]
    fn purple_in_between() {
        let g = graph(
            &["0", "1", "2"],
            &["0", "1", "2"],
            &[("1", "1", EdgeLabel::Plus), ("1", "2", EdgeLabel::Minus)],
        );
        let w = check_all(&g)
            .verdict(ConditionId::C5e_PurpleInBetween)
            .witness()
            .cloned()
            .unwrap();
        assert_eq!(w.vertices, vec![(Part::A, ix("1"))]);
    }

    #[test]
    fn maximal_same_label() {
        let g = unvoided_graph(2);
        // voiding (-1,2) leaves both + edges of row 2 on its upper member
        let e = g.edge_with_cell(Coord::new(-1, 2)).unwrap().clone();
        let v = void_edge(&g, &e).unwrap();
        assert!(check_all(&v).verdict(ConditionId::C5f_MaximalSameLabel).passed());

        let split = graph(
            &["0", "1", "2.0", "2.1"],
            &["0", "1", "2"],
            &[("2.0", "1", EdgeLabel::Plus), ("2.1", "2", EdgeLabel::Plus)],
        );
        assert!(check_all(&split).verdict(ConditionId::C5f_MaximalSameLabel).failed());
    }

    #[test]
    fn crossing_blue_edges() {
        let g = graph(
            &["0", "1", "2", "3.0", "3.1"],
            &["0", "1", "2", "3"],
            &[("3.0", "3", EdgeLabel::Plus), ("3.1", "1", EdgeLabel::Plus)],
        );
        let r = check_all(&g);
        assert!(r.verdict(ConditionId::C5g_BlueSweep).failed());
        assert!(r.sweep_gaps.iter().any(|s| s.condition == ConditionId::C5g_BlueSweep
            && s.part == Part::A
            && s.floor == 3
            && s.missing == vec![2, 0]));
    }

    #[test]
    fn crossing_red_edges() {
        let g = graph(
            &["0", "1", "2", "3.0", "3.1"],
            &["0", "1", "2", "3"],
            &[("3.0", "1", EdgeLabel::Minus), ("3.1", "3", EdgeLabel::Minus)],
        );
        assert!(check_all(&g).verdict(ConditionId::C5h_RedSweep).failed());
        let ok = graph(
            &["0", "1", "2", "3.0", "3.1"],
            &["0", "1", "2", "3"],
            &[("3.0", "3", EdgeLabel::Minus), ("3.1", "1", EdgeLabel::Minus)],
        );
        assert!(check_all(&ok).verdict(ConditionId::C5h_RedSweep).passed());
    }

    #[test]
    fn zero_zero_edge_on_upper_member() {
        // sweeps hold, but the zero-zero edge sits on the upper member of B0
        let g = graph(
            &["0", "1"],
            &["0.0", "0.1", "1"],
            &[
                ("0", "0.1", EdgeLabel::Zero),
                ("1", "0.1", EdgeLabel::Zero),
                ("0", "1", EdgeLabel::Zero),
            ],
        );
        let r = check_all(&g);
        assert!(r.verdict(ConditionId::C5g_BlueSweep).passed());
        let w = r.verdict(ConditionId::C5i_PurpleSweep).witness().cloned().unwrap();
        assert!(w.detail.contains("minimal"), "{w}");
    }

    #[test]
    fn grid_with_voids_passes() {
        let g = parse_grid("#...#\n.....\n.....\n.....\n#...#").unwrap();
        let r = check_all(&voided_from_grid(&g).unwrap());
        assert!(r.passed(), "{}", r.to_table());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(check_all(&unvoided_graph(1))).unwrap();
        assert_eq!(v["conditions"]["C1_Squareness"]["verdict"], "pass");
        assert_eq!(v["pass"], true);
        assert_eq!(v["n"], 1);
    }

    #[test]
    fn every_valid_five_by_five_passes() {
        let region = crate::grid::fundamental_region(2);
        let mut valid = 0;
        for mask in 0u32..1 << region.len() {
            let voids = region
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .flat_map(|(_, &c)| [c, crate::grid::rotate180(c)]);
            let g = crate::grid::Grid::from_voids(2, voids).unwrap();
            if !crate::grid::is_valid(&g) {
                continue;
            }
            valid += 1;
            let r = check_all(&voided_from_grid(&g).unwrap());
            assert!(r.passed(), "{}\n{}", crate::grid::serialize_grid(&g), r.to_table());
        }
        assert!(valid > 0);
    }
}
