use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{Field, Scalar};

use super::QuiverError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub start: usize,
    pub tail: usize,
}

/// Finite directed graph. Edge `f` runs from `start` to `tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, QuiverError> {
        for e in &edges {
            if e.start >= vertices.len() || e.tail >= vertices.len() {
                return Err(QuiverError::BadEdge(e.name.clone()));
            }
        }
        Ok(Quiver { vertices, edges })
    }

    /// `X --f--> Y`.
    pub fn a2() -> Self {
        Quiver {
            vertices: vec!["X".into(), "Y".into()],
            edges: vec![Edge { name: "f".into(), start: 0, tail: 1 }],
        }
    }

    /// Linear quiver `1 -> 2 -> ... -> n` with edges named `(i,i+1)`.
    pub fn linear(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let edges = (0..n.saturating_sub(1))
            .map(|i| Edge { name: edge_label(i + 1, i + 2), start: i, tail: i + 1 })
            .collect();
        Quiver { vertices, edges }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }
}

fn edge_label(a: usize, b: usize) -> String {
    if a < 10 && b < 10 {
        format!("({a}{b})")
    } else {
        format!("({a},{b})")
    }
}

/// Name of the reversed edge: `(12)` becomes `(21)`, anything else gets a `*`.
fn reversed_name(name: &str) -> String {
    let inner = name.strip_prefix('(').and_then(|s| s.strip_suffix(')'));
    if let Some(inner) = inner {
        if let Some((a, b)) = inner.split_once(',') {
            return format!("({b},{a})");
        }
        let chars: Vec<char> = inner.chars().collect();
        if chars.len() == 2 {
            return format!("({}{})", chars[1], chars[0]);
        }
    }
    format!("{name}*")
}

/// Adds a reversed copy `f*` of every edge `f`. Original edges keep their indices.
pub fn double_quiver(q: &Quiver) -> Quiver {
    let mut edges = q.edges.clone();
    for e in &q.edges {
        edges.push(Edge { name: reversed_name(&e.name), start: e.tail, tail: e.start });
    }
    Quiver { vertices: q.vertices.clone(), edges }
}

/// A path: a lazy path at `start` when `edges` is empty, otherwise edges in travel order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Self {
        Path { start: v, edges: Vec::new() }
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.edges.last().map_or(self.start, |&e| q.edges[e].tail)
    }

    pub fn is_composable(&self, q: &Quiver) -> bool {
        let mut at = self.start;
        for &e in &self.edges {
            if q.edges[e].start != at {
                return false;
            }
            at = q.edges[e].tail;
        }
        true
    }

    /// `self` followed by `other`, if the endpoints match.
    pub fn concat(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.end(q) != other.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path { start: self.start, edges })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.edges.is_empty() {
            return format!("e{}", q.vertices[self.start]);
        }
        self.edges.iter().map(|&e| q.edges[e].name.as_str()).collect::<Vec<_>>().concat()
    }
}

// Degree-lexicographic: shorter paths first, then by start vertex and edge sequence.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.edges.len(), self.start, &self.edges).cmp(&(other.edges.len(), other.start, &other.edges))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear combination of paths in a fixed quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathElement {
    field: Field,
    terms: BTreeMap<Path, Scalar>,
}

impl PathElement {
    pub fn zero(field: Field) -> Self {
        PathElement { field, terms: BTreeMap::new() }
    }

    pub fn path(field: Field, p: Path) -> Self {
        let mut e = Self::zero(field);
        e.terms.insert(p, field.one());
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, p: Path, c: &Scalar) {
        let slot = self.terms.entry(p.clone()).or_insert_with(|| self.field.zero());
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &PathElement) -> PathElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), &(c * s));
        }
        out
    }

    fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Restriction to paths from `a` to `b`.
    pub fn corner(&self, q: &Quiver, a: usize, b: usize) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (p, c) in &self.terms {
            if p.start == a && p.end(q) == b {
                out.add_term(p.clone(), c);
            }
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| if c.is_one() { p.display(q) } else { format!("{c}*{}", p.display(q)) })
            .collect();
        parts.join(" + ")
    }
}

/// Path algebra modulo relations, with elements kept in reduced normal form.
///
/// Each relation rewrites its leading path (largest in degree-lexicographic
/// order) to the remaining terms. No completion is attempted, so general
/// relation sets may reduce non-confluently; for monomial relations and for
/// the preprojective relations of A2 the rewriting is confluent.
#[derive(Clone, Debug)]
pub struct BoundQuiver {
    quiver: Quiver,
    field: Field,
    relations: Vec<PathElement>,
    rules: Vec<(Path, PathElement)>,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, field: Field, relations: Vec<PathElement>) -> Self {
        let mut rules = Vec::new();
        let mut kept = Vec::new();
        for r in relations {
            let Some((lead, c)) = r.leading() else { continue };
            let lead = lead.clone();
            let inv = c.inv().expect("nonzero leading coefficient");
            let mut rest = r.clone();
            rest.terms.remove(&lead);
            rules.push((lead, rest.scale(&-inv)));
            kept.push(r);
        }
        BoundQuiver { quiver, field, relations: kept, rules }
    }

    pub fn free(quiver: Quiver, field: Field) -> Self {
        Self::new(quiver, field, Vec::new())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[PathElement] {
        &self.relations
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &Path> {
        self.rules.iter().map(|r| &r.0)
    }

    pub fn reduce(&self, x: &PathElement) -> PathElement {
        let mut out = PathElement::zero(self.field);
        let mut work: Vec<(Path, Scalar)> = x.terms.iter().map(|(p, c)| (p.clone(), c.clone())).collect();
        while let Some((p, c)) = work.pop() {
            match self.find_rule(&p) {
                None => out.add_term(p, &c),
                Some((k, at)) => {
                    let (lead, rhs) = &self.rules[k];
                    let before = Path { start: p.start, edges: p.edges[..at].to_vec() };
                    let after_start = lead.end(&self.quiver);
                    let after = Path { start: after_start, edges: p.edges[at + lead.edges.len()..].to_vec() };
                    for (q, d) in rhs.terms() {
                        let Some(left) = before.concat(q, &self.quiver) else { continue };
                        let Some(full) = left.concat(&after, &self.quiver) else { continue };
                        work.push((full, &c * d));
                    }
                }
            }
        }
        out
    }

    fn find_rule(&self, p: &Path) -> Option<(usize, usize)> {
        for (k, (lead, _)) in self.rules.iter().enumerate() {
            let n = lead.edges.len();
            if n == 0 {
                if p.edges.is_empty() && p.start == lead.start {
                    return Some((k, 0));
                }
                continue;
            }
            if n > p.edges.len() {
                continue;
            }
            for at in 0..=p.edges.len() - n {
                if p.edges[at..at + n] == lead.edges[..] {
                    return Some((k, at));
                }
            }
        }
        None
    }

    /// Concatenation product reduced to normal form; non-composable pairs give zero.
    pub fn multiply(&self, a: &PathElement, b: &PathElement) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (p, c) in a.terms() {
            for (q, d) in b.terms() {
                if let Some(pq) = p.concat(q, &self.quiver) {
                    out.add_term(pq, &(c * d));
                }
            }
        }
        self.reduce(&out)
    }

    /// Normal-form paths starting at `v`, up to length `max_len`.
    pub fn normal_paths_from(&self, v: usize, max_len: usize) -> Result<Vec<Path>, QuiverError> {
        let mut out = vec![Path::lazy(v)];
        let mut frontier = vec![Path::lazy(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (ei, e) in self.quiver.edges.iter().enumerate() {
                    if e.start != p.end(&self.quiver) {
                        continue;
                    }
                    let mut edges = p.edges.clone();
                    edges.push(ei);
                    let q = Path { start: v, edges };
                    if self.find_rule(&q).is_none() {
                        next.push(q);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
            if frontier.is_empty() {
                return Ok(out);
            }
        }
        Err(QuiverError::InfiniteDimensional)
    }
}

/// `rho = sum over edges f of (f f* - f* f)` in the doubled quiver.
pub fn preprojective_relation(q: &Quiver, field: Field) -> PathElement {
    let n = q.edges().len();
    let mut rho = PathElement::zero(field);
    for i in 0..n {
        let e = &q.edges()[i];
        let ff = Path { start: e.start, edges: vec![i, n + i] };
        let fsf = Path { start: e.tail, edges: vec![n + i, i] };
        rho.add_term(ff, &field.one());
        rho.add_term(fsf, &-field.one());
    }
    rho
}

/// The preprojective algebra: doubled quiver modulo the vertex components of rho.
pub fn preprojective_algebra(q: &Quiver, field: Field) -> BoundQuiver {
    let dq = double_quiver(q);
    let rho = preprojective_relation(q, field);
    let relations = (0..dq.vertices().len()).map(|v| rho.corner(&dq, v, v)).filter(|r| !r.is_zero()).collect();
    BoundQuiver::new(dq, field, relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(start: usize, edges: &[usize]) -> PathElement {
        PathElement::path(Field::Q, Path { start, edges: edges.to_vec() })
    }

    #[test]
    fn doubled_a2_has_two_edges() {
        let d = double_quiver(&Quiver::linear(2));
        assert_eq!(d.vertices().len(), 2);
        let names: Vec<&str> = d.edges().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["(12)", "(21)"]);
    }

    #[test]
    fn doubled_a3_has_four_edges() {
        let d = double_quiver(&Quiver::linear(3));
        assert_eq!((d.vertices().len(), d.edges().len()), (3, 4));
    }

    #[test]
    fn edgeless_quiver() {
        let q = Quiver::new(vec!["a".into()], Vec::new()).unwrap();
        assert_eq!(double_quiver(&q), q);
        assert!(preprojective_relation(&q, Field::Q).is_zero());
    }

    #[test]
    fn pia2_relations_are_the_two_loops() {
        let bq = preprojective_algebra(&Quiver::linear(2), Field::Q);
        let words: Vec<String> = bq.leading_words().map(|w| w.display(bq.quiver())).collect();
        assert_eq!(words, ["(12)(21)", "(21)(12)"]);
    }

    #[test]
    fn a3_middle_relation_is_binomial() {
        let q = Quiver::linear(3);
        let bq = preprojective_algebra(&q, Field::Q);
        assert_eq!(bq.relations().len(), 3);
        let middle = bq.relations().iter().find(|r| r.terms().count() == 2).unwrap();
        assert!(middle.terms().all(|(p, _)| p.start == 1 && p.edges.len() == 2));
    }

    #[test]
    fn multiplication_rules() {
        let bq = preprojective_algebra(&Quiver::linear(2), Field::Q);
        // edge 0 is (12), edge 1 is (21)
        assert!(bq.multiply(&p(0, &[0]), &p(1, &[1])).is_zero());
        assert_eq!(bq.multiply(&p(0, &[]), &p(0, &[0])), p(0, &[0]));
        assert!(bq.multiply(&p(0, &[0]), &p(0, &[0])).is_zero());
    }

    #[test]
    fn pia2_normal_basis() {
        let bq = preprojective_algebra(&Quiver::linear(2), Field::Q);
        let mut all = bq.normal_paths_from(0, 4).unwrap();
        all.extend(bq.normal_paths_from(1, 4).unwrap());
        let names: Vec<String> = all.iter().map(|p| p.display(bq.quiver())).collect();
        assert_eq!(names, ["e1", "(12)", "e2", "(21)"]);
    }

    #[test]
    fn free_loop_is_infinite() {
        let q = Quiver::new(vec!["a".into()], vec![Edge { name: "x".into(), start: 0, tail: 0 }]).unwrap();
        let bq = BoundQuiver::free(q, Field::Q);
        assert_eq!(bq.normal_paths_from(0, 5), Err(QuiverError::InfiniteDimensional));
    }
}
